//! Root data, the classes e, e' and b, and the Kirwan image as a colon ideal
//! for a toy SU(2) quotient. Also the properness weights of a DAG quiver.
//!
//! cargo run --example su2_abelianization

use std::collections::HashMap;

use hyperkirwan::abelianization::{
    class_b, class_e, class_eprime, is_proper, kirwan_image, proper_quiver_weights, verify_second_iso, AbelianSide,
    DagQuiver, KirwanPresentation, RootDatum,
};
use hyperkirwan::exactalg::{PolyRing, Polynomial, VariableTable};
use hyperkirwan::ideal::{Ideal, QuotientRing};

fn main() -> hyperkirwan::Result<()> {
    let su2 = RootDatum::su2();
    let (e, ep, b) = (class_e(&su2), class_eprime(&su2), class_b(&su2));
    println!("e  = {e}\ne' = {ep}\nb  = {b}");
    assert_eq!(&b * &ep, e);

    let su3 = RootDatum::su3();
    println!("SU(3): deg e = {:?}, |W| = {}", class_e(&su3).degree(), su3.weyl_order());

    // abelian side Q[alpha, x]/((alpha^2 - x^2)(alpha^2 - 4x^2)); invariant side in s = alpha^2
    let inv_ring = PolyRing::grevlex(VariableTable::new(&[("s", 4), ("x", 2)])?);
    let invariant = QuotientRing::new(Ideal::parse(&inv_ring, &["(s - x^2)*(s - 4*x^2)"])?);
    let euler = Polynomial::parse(&inv_ring, "s*(x^2 - s)")?;

    let ab_ring = PolyRing::grevlex(VariableTable::new(&[("alpha", 2), ("x", 2)])?);
    let alpha = Polynomial::var(&ab_ring, "alpha")?;
    let involution = HashMap::from([("alpha".to_string(), -&alpha)]);
    let inclusion = HashMap::from([("s".to_string(), alpha.pow(2))]);
    let side = AbelianSide {
        ring: QuotientRing::new(Ideal::parse(&ab_ring, &["(alpha^2 - x^2)*(alpha^2 - 4*x^2)"])?),
        euler_prime: Polynomial::parse(&ab_ring, "alpha*(x^2 - alpha^2)")?,
        involution,
        inclusion,
        b: alpha.clone(),
    };
    let k = KirwanPresentation::new(invariant, euler)?.with_abelian(side)?;
    let image = kirwan_image(&k)?;
    println!("Kirwan image: Q[s,x] / ({})", image.ideal().groebner()?.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "));
    println!("second isomorphism holds: {}", verify_second_iso(&k)?);

    let quiver = DagQuiver::parse("a -> b, a -> c, b -> d, c -> d")?;
    let weights = proper_quiver_weights(&quiver)?;
    for (v, w) in &weights {
        println!("weight of {} = {w}", quiver.vertices()[*v]);
    }
    assert!(is_proper(&quiver, &weights));
    Ok(())
}
