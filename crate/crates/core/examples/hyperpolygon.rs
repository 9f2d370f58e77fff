//! Equivariant and ordinary cohomology of a hyperpolygon space, with a
//! membership certificate for every nonempty short subset.
//!
//! cargo run --release --example hyperpolygon -- 1,2,4,8,16

use hyperkirwan::hyperpolygon::{konno_ring, EdgeLengths, HyperpolygonInstance};

fn main() -> hyperkirwan::Result<()> {
    let xi: EdgeLengths = std::env::args().nth(1).as_deref().unwrap_or("1,1,1,2").parse()?;
    let inst = HyperpolygonInstance::new(xi)?;
    let n = inst.n();
    println!("n = {n}, xi = ({})", inst.lengths());
    println!("short subsets: {}", inst.table().shorts().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "));

    let colon = inst.prop_hp()?;
    println!("(J : e) = D + relations, reduced basis of size {}", colon.ideal().groebner()?.len());

    for s in inst.table().nonempty() {
        let cert = inst.certify_membership(s)?;
        println!("  e·D_{s} certified by {:?} with {} terms", cert.method, cert.combination.len());
    }

    let fibre = inst.mod_x(inst.annihilator()?)?;
    println!("Betti numbers: {:?}", fibre.full_hilbert_series()?.trimmed());
    println!("presentation by monomials: {:?}", konno_ring(n)?.full_hilbert_series()?.trimmed());
    println!("rank over Q(x): {}", colon.localized_rank("x")?);
    Ok(())
}
