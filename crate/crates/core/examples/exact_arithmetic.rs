//! Graded polynomial rings over Q, exact division, and the field Q(x).
//!
//! cargo run --example exact_arithmetic

use hyperkirwan::exactalg::{PolyRing, Polynomial, Rational, RationalFunction, UniPoly, VariableTable};

fn main() -> hyperkirwan::Result<()> {
    // c and x in degree 2, a2 in degree 4
    let ring = PolyRing::grevlex(VariableTable::new(&[("c", 2), ("a2", 4), ("x", 2)])?);
    let f = Polynomial::parse(&ring, "(c + x)*(c - x)")?;
    let g = Polynomial::parse(&ring, "1/2*c^2 - a2 + 3*x^2")?;

    println!("f          = {f}");
    println!("f * g      = {}", &f * &g);
    println!("deg(f * g) = {:?}", (&f * &g).degree());
    println!("(f*g) / f  = {}", (&f * &g).exact_div(&f)?);
    assert!(Polynomial::parse(&ring, "c + a2").is_ok_and(|p| !p.is_homogeneous()));

    // a variable of odd degree is rejected
    assert!(VariableTable::new(&[("y", 3)]).is_err());

    // Q(x): numerators and denominators are kept coprime
    let num = UniPoly::new(vec![Rational::from_int(-1), Rational::zero(), Rational::one()]);
    let den = UniPoly::new(vec![Rational::from_int(1), Rational::one()]);
    let r = RationalFunction::new(num, den)?;
    println!("(x^2 - 1)/(x + 1) = {r}");
    let inv = r.inv()?;
    println!("inverse           = {inv}");
    assert!((&r * &inv).is_one());
    Ok(())
}
