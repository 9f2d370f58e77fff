//! The Segre embedding of P^1 x P^1 in P^3: its pullback is an isomorphism
//! after inverting x, but not before.
//!
//! cargo run --example segre

use hyperkirwan::localization::{rationalization_report, Fixture};

fn main() -> hyperkirwan::Result<()> {
    let fixture = Fixture::builtin("segre")?;
    let r = rationalization_report(&fixture, 6)?;
    println!("ranks over Q(x): source {}, target {}", r.source_rank, r.target_rank);
    println!("rank of the pullback on fixed points: {}", r.fixed_point_map_rank);
    println!("global presentations (target, source, map): {:?}", r.global_ranks);
    for (deg, image, dim) in &r.graded {
        println!("degree {deg}: image has rank {image} of {dim}");
    }
    println!("isomorphism over Q(x): {}", r.rationalized_iso);
    println!("surjective before inverting x: {}", r.integral_surjective);
    Ok(())
}
