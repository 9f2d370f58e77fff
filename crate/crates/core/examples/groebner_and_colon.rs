//! Reduced Groebner bases, membership, intersection, colon ideals and Hilbert
//! series of a graded quotient.
//!
//! cargo run --example groebner_and_colon

use hyperkirwan::exactalg::{PolyRing, Polynomial, VariableTable};
use hyperkirwan::ideal::{Ideal, IdealSpec, QuotientRing};

fn main() -> hyperkirwan::Result<()> {
    let ring = PolyRing::grevlex(VariableTable::uniform(&["u", "v", "x"])?);
    let ideal = Ideal::parse(&ring, &["u*(u - x)", "v^2", "u*v - v*x"])?;

    println!("reduced basis:");
    for g in ideal.groebner()? {
        println!("  {g}");
    }

    let f = Polynomial::parse(&ring, "u^3 - u*x^2")?;
    println!("{f} in I: {}", ideal.contains(&f)?);
    println!("normal form of u^2 v: {}", ideal.normal_form(&Polynomial::parse(&ring, "u^2*v")?)?);

    let other = Ideal::parse(&ring, &["u", "v"])?;
    let meet = ideal.intersect(&other)?;
    println!("I ∩ (u, v) has {} basis elements", meet.groebner()?.len());

    let e = Polynomial::parse(&ring, "u")?;
    let colon = ideal.colon(&e)?;
    println!("(I : u) =");
    for g in colon.groebner()? {
        println!("  {g}");
    }

    let q = QuotientRing::new(ideal.clone());
    let series = q.hilbert_series(10)?;
    println!("Hilbert series of Q[u,v,x]/I: {}", series.display());
    println!("rank over Q(x): {}", q.localized_rank("x")?);

    println!("{}", IdealSpec::from_ideal(&ideal).to_json());
    Ok(())
}
