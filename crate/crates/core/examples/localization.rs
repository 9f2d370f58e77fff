//! Integration over circle-fixed-point data: the projective line with its two
//! fixed points, pushforward from a point, the diagonal class, and weighted
//! projective spaces.
//!
//! cargo run --example localization

use rand::rngs::StdRng;
use rand::SeedableRng;

use hyperkirwan::linalg;
use hyperkirwan::localization::{
    diagonal_basis, hyperplane_class, projective_space, standard_diagonal_decomposition, Fixture,
};

fn main() -> hyperkirwan::Result<()> {
    let fixture = Fixture::builtin("projective-line")?;
    let line = fixture.model("line")?;
    let h = fixture.class("line", "hyperplane")?;

    println!("∫ 1   = {}", line.integrate(&line.one()));
    println!("∫ h   = {}", line.integrate(h));
    println!("∫ h^2 = {}", line.integrate(&line.mul(h, h)));

    let gram = line.gram_matrix(&[line.one(), h.clone()]);
    println!("Gram matrix of (1, h): {gram:?}, det = {}", linalg::determinant(&gram));

    let inclusion = fixture.map("inclusion")?;
    let point = fixture.model("point")?;
    let pushed = inclusion.pushforward(&point.one())?;
    println!("pushforward of 1 from a point = {pushed:?}");
    assert_eq!(&pushed, h);

    let decomposition = standard_diagonal_decomposition(line)?;
    let spans = diagonal_basis(line, &decomposition, &mut StdRng::seed_from_u64(3))?;
    println!("diagonal decomposition spans: {spans}");

    let weights = [0, 1, 1, 3];
    let p3 = projective_space(&weights)?;
    let hp = hyperplane_class(&p3, &weights)?;
    let mut power = p3.one();
    for k in 0..=weights.len() {
        println!("P(0,1,1,3): ∫ h^{k} = {}", p3.integrate(&power));
        power = p3.mul(&power, &hp);
    }
    Ok(())
}
