use kapteyn::{first_kind, second_kind, Rational, Scalar};

#[test]
fn readme_example_compiles_and_roundtrips() -> kapteyn::Result<()> {
    let b = vec![Rational::from_int(0), Rational::from_int(1)];

    let nu = Rational::from_int(1);
    let a = first_kind::taylor_to_kapteyn1(&nu, &b)?;
    let back = first_kind::kapteyn1_to_taylor(&nu, &a)?;
    assert_eq!(back, b);

    let (mu, nu) = (Rational::from_int(0), Rational::from_int(0));
    let (a2, c2) = second_kind::taylor_to_kapteyn2(&mu, &nu, &b)?;
    let b2 = second_kind::kapteyn2_to_taylor(&mu, &nu, &a2, &c2)?;
    assert_eq!(&b2[..b.len()], &b[..]);
    assert!(b2[b.len()..].iter().all(|x| x == &Rational::from_int(0)));
    Ok(())
}
