//! Acceptance suite: one line per criterion, exact arithmetic throughout.
//!
//! Exit status is nonzero when a criterion fails, unless the failing check is
//! listed in `KNOWN_DISCREPANCIES`; a listed check that starts passing is
//! also an error.

mod common;

use std::collections::HashMap;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use common::{brute_colon_dim, brute_contains, build, monomials, ring, RawPoly};
use hyperkirwan::abelianization::{
    certify_annihilator, class_b, class_e, class_eprime, is_proper, proper_quiver_weights, verify_second_iso,
    DagQuiver, RootDatum,
};
use hyperkirwan::cli::{canonical_json, run, Command, RunConfig};
use hyperkirwan::exactalg::{Monomial, MonomialOrder, PolyRing, Polynomial, Rational};
use hyperkirwan::hyperpolygon::{konno_ring, EdgeLengths, HyperpolygonInstance, Subset};
use hyperkirwan::ideal::{verify_groebner, Budget, Ideal, QuotientRing};
use hyperkirwan::linalg;
use hyperkirwan::localization::{
    diagonal_basis, rationalization_report, standard_diagonal_decomposition, CircleCompactModel, Fixture,
};
use hyperkirwan::Error;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Wall-clock ceilings for the end-to-end colon computation.
const TIME_LIMIT_SMALL: Duration = Duration::from_secs(30);
const TIME_LIMIT_N6: Duration = Duration::from_secs(300);
/// All comparisons are exact over Q or Q(x): no numerical tolerance.
const NUMERIC_TOLERANCE: u32 = 0;
const RANDOM_IDEALS: usize = 60;
const RANDOM_LOCALIZATION_CASES: usize = 120;
const RANDOM_QUIVERS: usize = 60;
const MAX_QUIVER_VERTICES: usize = 50;

/// Sub-checks that fail because the printed formula disagrees with the
/// conventions forced by the presentation; see the suite's notes.
const KNOWN_DISCREPANCIES: [&str; 1] = ["2.verbatim-base-case"];

struct Outcome {
    checks: Vec<(String, bool, String)>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checks: Vec::new() }
    }

    fn check(&mut self, id: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push((id.to_string(), ok, detail.into()));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }
}

fn xi_list() -> Vec<EdgeLengths> {
    let mut v: Vec<EdgeLengths> = (3..=6).map(EdgeLengths::powers_of_two).collect();
    v.insert(2, EdgeLengths::from_ints(&[1, 1, 1, 2]).unwrap());
    v
}

struct Instances {
    list: Vec<HyperpolygonInstance>,
}

impl Instances {
    fn new() -> Self {
        Instances { list: xi_list().into_iter().map(|xi| HyperpolygonInstance::with_budget(xi, Budget::default()).unwrap()).collect() }
    }
}

fn label(inst: &HyperpolygonInstance) -> String {
    format!("xi=({})", inst.lengths())
}

fn criterion_1(all: &Instances) -> Outcome {
    let mut o = Outcome::new();
    for inst in &all.list {
        let start = Instant::now();
        let result = inst.prop_hp();
        let elapsed = start.elapsed();
        let limit = if inst.n() <= 5 { TIME_LIMIT_SMALL } else { TIME_LIMIT_N6 };
        let ok = result.is_ok() && elapsed <= limit;
        let detail = match &result {
            Ok(q) => format!("{} basis {} in {:.2}s", label(inst), q.ideal().groebner().unwrap().len(), elapsed.as_secs_f64()),
            Err(e) => format!("{}: {e}", label(inst)),
        };
        o.check(&format!("1.{}", label(inst)), ok, detail);
    }
    o
}

/// The printed base case `e·D_S = 2^{n-3} (x + c_n) ((2x - c_n) C_∅ - c_n C_S)` for `S = {n}`.
fn verbatim_base_case(inst: &HyperpolygonInstance) -> (bool, String) {
    let n = inst.n();
    let s = Subset::from_elements(&[n]);
    let rels = Ideal::new(inst.ring_q(), inst.relations_q()).unwrap();
    let (x, cn) = (inst.x_q(), inst.c_q(n));
    let two = Polynomial::constant(inst.ring_q(), Rational::from_int(2));
    let scale = Polynomial::constant(inst.ring_q(), Rational::from_int(1i64 << (n - 3)));
    let c_empty = inst.gens_c(Subset::EMPTY).unwrap();
    let c_s = inst.gens_c(s).unwrap();
    let printed_empty = &scale * &(&(&x + &cn) * &(&(&two * &x) - &cn));
    let printed_s = -&(&scale * &(&(&x + &cn) * &cn));
    let printed = &(&printed_empty * &c_empty) + &(&printed_s * &c_s);
    let lhs = &inst.euler_e() * &inst.gens_d(s).unwrap();
    let identity = rels.contains(&(&lhs - &printed)).unwrap();

    let cert = inst.certify_membership(s).unwrap();
    let coef = |t: Subset| cert.combination.iter().find(|(u, _)| *u == t).map(|(_, c)| c.clone());
    let same = |a: Option<Polynomial>, b: &Polynomial| a.is_some_and(|a| rels.contains(&(&a - b)).unwrap());
    let matches = same(coef(Subset::EMPTY), &printed_empty) && same(coef(s), &printed_s);
    let ratio_two = rels.contains(&(&lhs - &(&two * &printed))).unwrap();
    (
        identity && matches,
        format!("printed identity holds: {identity}; certificate coefficients match: {matches}; e·D_S equals twice the printed right side: {ratio_two}"),
    )
}

fn criterion_2(all: &Instances) -> Outcome {
    let mut o = Outcome::new();
    let mut checked = 0;
    let mut ok = true;
    let mut methods = HashMap::new();
    for inst in &all.list {
        let j = inst.ideal_j().unwrap();
        let rels = Ideal::new(inst.ring_q(), inst.relations_q()).unwrap();
        let e = inst.euler_e();
        for s in inst.table().nonempty() {
            let cert = inst.certify_membership(s).unwrap();
            let mut sum = Polynomial::zero(inst.ring_q());
            for (t, coef) in &cert.combination {
                ok &= t.is_subset_of(&s) && inst.table().is_short(*t);
                sum = &sum + &(coef * &inst.gens_c(*t).unwrap());
            }
            let target = &e * &inst.gens_d(s).unwrap();
            ok &= rels.contains(&(&sum - &target)).unwrap();
            ok &= j.contains(&target).unwrap();
            *methods.entry(format!("{:?}", cert.method)).or_insert(0) += 1;
            checked += 1;
        }
    }
    o.check("2.certificates", ok, format!("{checked} certificates expand to e·D_S; methods {methods:?}"));
    let base = HyperpolygonInstance::new(EdgeLengths::from_ints(&[1, 1, 1]).unwrap()).unwrap();
    let (verbatim, detail) = verbatim_base_case(&base);
    o.check("2.verbatim-base-case", verbatim, format!("n=3, S={{3}}: {detail}"));
    o
}

/// Weighted exponent vectors of weight `w`.
fn weighted_monomials(weights: &[u32], w: u32) -> Vec<Vec<u16>> {
    if weights.is_empty() {
        return if w == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in 0..=w / weights[0] {
        for mut rest in weighted_monomials(&weights[1..], w - e * weights[0]) {
            rest.insert(0, e as u16);
            out.push(rest);
        }
    }
    out
}

/// Graded dimensions of `ring / gens` for homogeneous `gens`, by row reduction.
fn brute_hilbert(ring: &std::sync::Arc<PolyRing>, gens: &[Polynomial], max_weight: u32) -> Vec<u64> {
    let weights: Vec<u32> = ring.vars.degrees().iter().map(|d| d / 2).collect();
    let gen_weight = |g: &Polynomial| g.degree().map(|d| d / 2);
    (0..=max_weight)
        .map(|w| {
            let basis = weighted_monomials(&weights, w);
            let index: HashMap<&[u16], usize> = basis.iter().enumerate().map(|(k, m)| (m.as_slice(), k)).collect();
            let mut rows = Vec::new();
            for g in gens {
                let Some(gw) = gen_weight(g) else { continue };
                if gw > w {
                    continue;
                }
                for m in weighted_monomials(&weights, w - gw) {
                    let p = g.mul_term(&Monomial::from_exponents(&m), &Rational::one());
                    let mut row = vec![Rational::zero(); basis.len()];
                    for (mm, c) in p.terms() {
                        row[index[mm.exponents()]] = c.clone();
                    }
                    rows.push(row);
                }
            }
            (basis.len() - linalg::rank(&rows)) as u64
        })
        .collect()
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn criterion_3(all: &Instances) -> Outcome {
    let mut o = Outcome::new();
    for inst in &all.list {
        let n = inst.n();
        let fibre = inst.mod_x(inst.annihilator().unwrap()).unwrap().full_hilbert_series().unwrap().trimmed();
        let konno = konno_ring(n).unwrap().full_hilbert_series().unwrap().trimmed();
        // independent: row-reduce D_S, the relations and x, degree by degree
        let mut gens: Vec<Polynomial> = inst.table().nonempty().map(|s| inst.gens_d(s).unwrap()).collect();
        gens.extend(inst.relations_q());
        gens.push(inst.x_q());
        let brute = trim(brute_hilbert(inst.ring_q(), &gens, n as u32));
        let mut ok = fibre == konno && fibre == brute;
        if n == 3 {
            ok &= fibre.iter().sum::<u64>() == 1;
        }
        if n == 4 {
            ok &= brute == vec![1, 4];
        }
        o.check(&format!("3.{}", label(inst)), ok, format!("{}: engine {fibre:?}, konno {konno:?}, row reduction {brute:?}", label(inst)));
    }
    o
}

fn criterion_4(all: &Instances) -> Outcome {
    let mut o = Outcome::new();
    for inst in &all.list {
        let n = inst.n();
        let deg = 2 * (n as u32 - 2);
        let q = inst.relations_mod_x().unwrap();
        let dim = q.graded_basis(deg).unwrap().len();
        let ds: Vec<Polynomial> = inst.table().nonempty().map(|s| inst.gens_d(s).unwrap()).collect();
        let rank = q.rank_of(&ds, deg).unwrap();
        let count = ds.len();
        let mut ok = dim == count && rank == count;
        if inst.lengths().to_string() == "1,1,1,2" {
            ok &= count == 7;
        }
        o.check(&format!("4.{}", label(inst)), ok, format!("{}: degree {deg} dimension {dim}, nonempty shorts {count}, rank of D_S {rank}", label(inst)));
    }
    o
}

fn criterion_5(all: &Instances) -> Outcome {
    let mut o = Outcome::new();
    for inst in &all.list {
        let ann = inst.annihilator().unwrap();
        let ok = certify_annihilator(inst.ideal_j().unwrap(), &inst.euler_e(), ann).unwrap();
        o.check(&format!("5.annihilator.{}", label(inst)), ok, format!("{}: ann(e) certified, {} generators", label(inst), ann.groebner().unwrap().len()));
    }
    for inst in all.list.iter().filter(|i| i.n() == 4 || i.n() == 5) {
        let k = inst.kirwan_presentation().unwrap();
        let ok = verify_second_iso(&k).unwrap();
        o.check(&format!("5.second-iso.{}", label(inst)), ok, format!("{}: invariant and abelian dimensions agree", label(inst)));
    }
    let su2 = RootDatum::su2();
    let (e, ep, b) = (class_e(&su2), class_eprime(&su2), class_b(&su2));
    let ok = &b * &ep == e && e.exact_div(&ep).is_ok_and(|q| q == b);
    o.check("5.su2", ok, format!("e = {e}, e' = {ep}, b = {b}"));
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = StdRng::seed_from_u64(6);
    let fixtures: Vec<Fixture> = Fixture::builtin_names().into_iter().map(|n| Fixture::builtin(n).unwrap()).collect();

    let mut exact = true;
    let mut nondegenerate = true;
    for f in &fixtures {
        for m in f.models.values() {
            for (k, c) in m.components().iter().enumerate() {
                exact &= c.mul(&c.coords(c.euler()).unwrap(), m.inverse_euler(k)) == c.one();
            }
            nondegenerate &= m.is_nondegenerate(&m.standard_basis()).unwrap();
        }
    }
    o.check("6.invert-euler", exact, "inverse times Euler class is 1 on every component");
    o.check("6.nondegenerate", nondegenerate, "standard Gram matrices are invertible on every fixture");

    let pl = &fixtures[0];
    let line = pl.model("line").unwrap();
    let h = pl.class("line", "hyperplane").unwrap();
    let (i1, ih) = (line.integrate(&line.one()), line.integrate(h));
    o.check("6.line-integrals", i1.is_zero() && ih.is_one(), format!("∫1 = {i1}, ∫h = {ih}"));

    let mut cases = 0;
    let mut identities = true;
    while cases < RANDOM_LOCALIZATION_CASES {
        for f in &fixtures {
            for map in f.maps.values() {
                let (a, b, g) = (map.target().sample(&mut rng), map.target().sample(&mut rng), map.source().sample(&mut rng));
                let pushed = map.pushforward(&g).unwrap();
                for basis in map.target().standard_basis() {
                    identities &= map.target().pairing(&pushed, &basis) == map.source().pairing(&g, &map.pullback(&basis));
                }
                identities &= map.pushforward(&map.source().mul(&map.pullback(&a), &g)).unwrap() == map.target().mul(&a, &pushed);
                identities &= map.pullback(&map.target().mul(&a, &b)) == map.source().mul(&map.pullback(&a), &map.pullback(&b));
                cases += 1;
            }
        }
        let product = &fixtures[1];
        let diag = product.map("diagonal").unwrap();
        for outer in [product.map("first").unwrap(), product.map("second").unwrap()] {
            let comp = outer.compose(diag).unwrap();
            let a = comp.source().sample(&mut rng);
            identities &= comp.pushforward(&a).unwrap() == outer.pushforward(&diag.pushforward(&a).unwrap()).unwrap();
            let t = comp.target().sample(&mut rng);
            identities &= comp.pullback(&t) == diag.pullback(&outer.pullback(&t));
            cases += 1;
        }
    }
    o.check("6.adjoint-functorial-projection", identities, format!("{cases} random cases"));

    let flipped_ok = fixtures.iter().flat_map(|f| f.models.values()).all(|m| {
        let flipped = CircleCompactModel::new(m.components().iter().map(|c| c.reversed().unwrap()).collect()).unwrap();
        let a = m.sample(&mut StdRng::seed_from_u64(60));
        m.integrate(&a) == flipped.integrate(&flipped.from_coords(a.parts().to_vec()).unwrap())
    });
    o.check("6.orientation", flipped_ok, "reversing every component leaves integrals unchanged");

    let decomposition = standard_diagonal_decomposition(line).unwrap();
    let spans = diagonal_basis(line, &decomposition, &mut rng).unwrap();
    let mut truncated = decomposition.clone();
    truncated.pop();
    let mismatch = matches!(diagonal_basis(line, &truncated, &mut rng), Err(Error::DiagonalMismatch));
    o.check("6.diagonal-basis", spans && mismatch, format!("line model spans: {spans}; truncated decomposition rejected: {mismatch}"));

    let r = rationalization_report(&fixtures[2], 4).unwrap();
    let degree_two = r.graded.iter().find(|g| g.0 == 2).copied();
    let ok = r.source_rank == 4 && r.target_rank == 4 && r.rationalized_iso && degree_two == Some((2, 2, 3)) && !r.integral_surjective;
    o.check("6.segre", ok, format!("K-ranks {} = {}, degree-2 image rank {:?} of {:?}", r.source_rank, r.target_rank, degree_two.map(|g| g.1), degree_two.map(|g| g.2)));
    o
}

fn criterion_7(all: &Instances) -> Outcome {
    let mut o = Outcome::new();
    for inst in &all.list {
        let bound = inst.series_bound().unwrap();
        let ann = inst.annihilator().unwrap();
        let free = |full: &QuotientRing, fibre: &QuotientRing| {
            full.hilbert_series(bound).unwrap().is_free_extension_of(&fibre.hilbert_series(bound).unwrap(), 2)
        };
        let free_j = free(&inst.quotient_j().unwrap(), &inst.mod_x(inst.ideal_j().unwrap()).unwrap());
        let free_a = free(&QuotientRing::new(ann.clone()), &inst.mod_x(ann).unwrap());
        let rank = QuotientRing::new(ann.clone()).localized_rank("x").unwrap();
        let total = konno_ring(inst.n()).unwrap().total_dimension().unwrap();
        o.check(
            &format!("7.{}", label(inst)),
            free_j && free_a && rank == total,
            format!("{}: free up to degree {bound} (J: {free_j}, colon: {free_a}), Q(x)-rank {rank}, konno total {total}", label(inst)),
        );
    }
    o
}

fn random_raw(rng: &mut StdRng, n: usize, deg: usize) -> RawPoly {
    (0..rng.gen_range(1..=4)).map(|_| ((0..deg).map(|_| rng.gen_range(0..n)).collect(), rng.gen_range(-3..=3))).collect()
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = StdRng::seed_from_u64(8);
    let (mut ideals, mut membership, mut colon, mut bases) = (0, true, true, true);
    while ideals < RANDOM_IDEALS {
        let n = rng.gen_range(1..=3);
        let order = [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::Block(1)][rng.gen_range(0..3)];
        let r = ring(n, order);
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let d = rng.gen_range(1..=4);
                build(&r, &random_raw(&mut rng, n, d))
            })
            .filter(|p| !p.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        ideals += 1;
        let ideal = Ideal::new(&r, gens.clone()).unwrap();
        bases &= verify_groebner(ideal.groebner().unwrap(), &gens).is_ok();
        for _ in 0..3 {
            let d = rng.gen_range(1..=4);
            let f = build(&r, &random_raw(&mut rng, n, d));
            if !f.is_zero() {
                membership &= ideal.contains(&f).unwrap() == brute_contains(&r, &gens, &f);
            }
            let inside = &gens[0] * &build(&r, &random_raw(&mut rng, n, 1));
            if !inside.is_zero() {
                membership &= ideal.contains(&inside).unwrap() && brute_contains(&r, &gens, &inside);
            }
        }
        let d = rng.gen_range(1..=2);
        let f = build(&r, &random_raw(&mut rng, n, d));
        if !f.is_zero() {
            let c = ideal.colon(&f).unwrap();
            bases &= verify_groebner(c.groebner().unwrap(), c.generators()).is_ok();
            let series = QuotientRing::new(c).hilbert_series(8).unwrap();
            for deg in 0..=4 {
                colon &= monomials(n, deg).len() - series.coefficients()[deg] as usize == brute_colon_dim(&r, &gens, &f, deg);
            }
        }
    }
    o.check("8.membership", membership, format!("{ideals} random ideals agree with row reduction"));
    o.check("8.colon", colon, "colon dimensions agree with row reduction in degrees 0..4");
    o.check("8.buchberger", bases, "every computed basis passes the S-polynomial criterion");

    let (mut proper, mut cycles) = (true, true);
    for k in 0..RANDOM_QUIVERS {
        let n = 1 + (k * 7919) % MAX_QUIVER_VERTICES;
        let n = if k == 0 { MAX_QUIVER_VERTICES } else { n };
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let pos = |v: usize| perm.iter().position(|&p| p == v).unwrap();
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (perm[i - 1], perm[i])).collect();
        for _ in 0..2 * n {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b {
                edges.push(if pos(a) < pos(b) { (a, b) } else { (b, a) });
            }
        }
        let q = DagQuiver::from_edges(n, &edges).unwrap();
        proper &= proper_quiver_weights(&q).is_ok_and(|w| is_proper(&q, &w));
        if n >= 2 {
            let lo = rng.gen_range(0..n - 1);
            let hi = rng.gen_range(lo + 1..n);
            edges.push((perm[hi], perm[lo]));
            let q = DagQuiver::from_edges(n, &edges).unwrap();
            cycles &= matches!(proper_quiver_weights(&q), Err(Error::Cycle(_)));
        }
    }
    o.check("8.quiver", proper && cycles, format!("{RANDOM_QUIVERS} random DAGs up to {MAX_QUIVER_VERTICES} vertices proper: {proper}; injected cycles rejected: {cycles}"));
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let golden = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (xi, file) in [("1,1,1", "report_1_1_1.json"), ("1,1,1,2", "report_1_1_1_2.json"), ("1,2,4,8,16", "report_1_2_4_8_16.json")] {
        let config = RunConfig::new(Command::Report).with_xi(xi.parse().unwrap()).with_budget(Budget::default());
        let first = canonical_json(&run(&config).to_value());
        let second = canonical_json(&run(&config).to_value());
        let expected = std::fs::read_to_string(golden.join(file)).unwrap_or_default();
        o.check(&format!("9.golden.{xi}"), first == second && first == expected, format!("xi=({xi}): {} bytes, stable across runs", first.len()));
    }
    let out = Process::new(env!("CARGO_BIN_EXE_hyperkirwan")).args(["shorts", "--xi", "1,1,1,1"]).output().unwrap();
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_default();
    let code = out.status.code();
    let witness = value["failure"]["witness"].clone();
    o.check("9.non-generic", code == Some(3) && witness == serde_json::json!([1, 2]), format!("exit status {code:?}, witness {witness}"));
    o
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let start = Instant::now();
    let all = Instances::new();
    let criteria: Vec<Criterion> = vec![
        ("colon ideal equals D + relations (n = 3..6)", Box::new(|| criterion_1(&all))),
        ("membership certificates", Box::new(|| criterion_2(&all))),
        ("ordinary cohomology matches the monomial presentation", Box::new(|| criterion_3(&all))),
        ("basis count in degree 2(n-2)", Box::new(|| criterion_4(&all))),
        ("annihilator, second isomorphism, SU(2) classes", Box::new(|| criterion_5(&all))),
        ("localization suite", Box::new(criterion_6)),
        ("formality and localized rank", Box::new(|| criterion_7(&all))),
        ("engine oracles", Box::new(criterion_8)),
        ("CLI determinism", Box::new(criterion_9)),
    ];
    println!("acceptance (numeric tolerance {NUMERIC_TOLERANCE}: exact arithmetic)");
    let mut unexpected = Vec::new();
    let mut failed = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let status = if outcome.passed() { "PASS" } else { "FAIL" };
        if !outcome.passed() {
            failed += 1;
        }
        println!("{status} criterion {}: {title} ({:.1}s)", k + 1, t.elapsed().as_secs_f64());
        for (id, ok, detail) in &outcome.checks {
            let known = KNOWN_DISCREPANCIES.contains(&id.as_str());
            let mark = match (ok, known) {
                (true, false) => "ok",
                (false, true) => "known discrepancy",
                (false, false) => "FAILED",
                (true, true) => "UNEXPECTED PASS",
            };
            println!("    [{mark}] {id}: {detail}");
            if ok == &known {
                unexpected.push(id.clone());
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if !unexpected.is_empty() {
        println!("unexpected results: {unexpected:?}");
        std::process::exit(1);
    }
}
