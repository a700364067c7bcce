//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p kleene-mv --test acceptance`.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use kleene_mv::algebra::{self, FiniteKleeneAlgebra};
use kleene_mv::complex::{self, AbstractComplex, WeightedComplex};
use kleene_mv::geom::{self, RationalTriangulation, Q};
use kleene_mv::mvalg::{self, MVScalar};
use kleene_mv::pipeline::{self, FlipSearch, PipelineError};
use kleene_mv::space::{self, KleeneSpace, TermPair};
use kleene_mv::tri::{self, Tri};
use kleene_mv::{seeded_rng, DEFAULT_SEED};
use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {:.2?}, limit {:?}", t, limit))
}

fn k2() -> FiniteKleeneAlgebra {
    let k = algebra::standard_k();
    algebra::product(&k, &k).unwrap()
}

fn b_w() -> FiniteKleeneAlgebra {
    let sub = space::subspace_from_subset(&pipeline::nine_point_w()).unwrap();
    space::dual_e(&sub).unwrap().algebra
}

fn suite() -> Vec<(&'static str, FiniteKleeneAlgebra)> {
    vec![
        ("K", algebra::standard_k()),
        ("2", FiniteKleeneAlgebra::boolean()),
        ("C6", pipeline::chain6()),
        ("K^2", k2()),
        ("K'", pipeline::k_prime()),
        ("F(1)", algebra::free_kleene(1).unwrap().algebra),
    ]
}

fn c1_duality() -> Outcome {
    let start = Instant::now();
    for (name, b) in suite() {
        let d = space::dual_d(&b);
        let e = space::dual_e(&d.space).map_err(|e| format!("{name}: {e}"))?;
        ensure(algebra::is_isomorphic_alg(&e.algebra, &b).is_some(), || format!("E(D({name})) not isomorphic to {name}"))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok("6 algebras".into())
}

fn relation(x: &KleeneSpace, f: impl Fn(usize, usize) -> bool) -> BTreeSet<(usize, usize)> {
    let n = x.len();
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| f(a, b)).collect()
}

fn c2_dual_spaces() -> Outcome {
    let d6 = space::dual_d(&pipeline::chain6()).space;
    ensure(d6.len() == 3, || format!("|D(C6)| = {}", d6.len()))?;
    let leq = relation(&d6, |a, b| d6.leq(a, b));
    ensure(leq.len() == 6, || "D(C6) is not a chain".into())?;
    ensure(d6.marked() == d6.maximal() && d6.maximal().len() == 1, || "M is not the top".into())?;
    ensure(relation(&d6, |a, b| d6.rel(a, b)).len() == 9, || "R not total on D(C6)".into())?;

    let a = space::dual_d(&k2()).space;
    let b = space::dual_d(&pipeline::k_prime()).space;
    let diagonal: BTreeSet<_> = [(0, 0), (1, 1)].into();
    let total: BTreeSet<_> = [(0, 0), (0, 1), (1, 0), (1, 1)].into();
    for (name, x) in [("K^2", &a), ("K'", &b)] {
        ensure(x.len() == 2, || format!("|D({name})| = {}", x.len()))?;
        ensure(relation(x, |p, q| x.leq(p, q)) == diagonal, || format!("D({name}) not an antichain"))?;
        ensure(x.marked().is_empty(), || format!("D({name}) has marked points"))?;
    }
    let ra = relation(&a, |p, q| a.rel(p, q));
    let rb = relation(&b, |p, q| b.rel(p, q));
    ensure(ra == diagonal, || format!("R on D(K^2) is {ra:?}"))?;
    ensure(rb == total, || format!("R on D(K') is {rb:?}"))?;
    ensure(space::is_isomorphic_space(&a, &b).is_none(), || "D(K^2) and D(K') isomorphic".into())?;
    Ok("R(D(K^2)) = diagonal, R(D(K')) = total".into())
}

fn sim(a: Tri, b: Tri) -> bool {
    !matches!((a, b), (Tri::Zero, Tri::One) | (Tri::One, Tri::Zero))
}

fn below(a: Tri, b: Tri) -> bool {
    a == Tri::Half || a == b
}

/// Maps from `{0,1/2,1}ⁿ` to `{0,1/2,1}` preserving `⪯`, `∼` and sending
/// Boolean points to Boolean values, by exhaustive enumeration.
fn brute_force_morphisms(n: usize) -> usize {
    let pts = tri::cube_points(n);
    let le = |p: &[Tri], q: &[Tri]| p.iter().zip(q).all(|(a, b)| below(*a, *b));
    let rel = |p: &[Tri], q: &[Tri]| p.iter().zip(q).all(|(a, b)| sim(*a, *b));
    let boolean = |p: &[Tri]| p.iter().all(|t| *t != Tri::Half);
    let m = pts.len();
    let total = 3usize.pow(m as u32);
    let vals = [Tri::Zero, Tri::Half, Tri::One];
    let mut count = 0;
    for code in 0..total {
        let mut c = code;
        let f: Vec<Tri> = (0..m)
            .map(|_| {
                let v = vals[c % 3];
                c /= 3;
                v
            })
            .collect();
        let ok = (0..m).all(|i| {
            (!boolean(&pts[i]) || f[i] != Tri::Half)
                && (0..m).all(|j| {
                    (!le(&pts[i], &pts[j]) || below(f[i], f[j])) && (!rel(&pts[i], &pts[j]) || sim(f[i], f[j]))
                })
        });
        count += usize::from(ok);
    }
    count
}

/// Frozen from the first run of [`brute_force_morphisms`]`(2)`.
const FREE_KLEENE_2_SIZE: usize = 84;

fn c3_free_sizes() -> Outcome {
    let e = space::dual_e(&space::ktilde()).map_err(|e| e.to_string())?;
    let brute1 = brute_force_morphisms(1);
    ensure(e.algebra.len() == 6 && brute1 == 6, || format!("|E(K~)| = {}, brute force {brute1}", e.algebra.len()))?;
    let f2 = algebra::free_kleene(2).map_err(|e| e.to_string())?.algebra.len();
    let brute2 = brute_force_morphisms(2);
    ensure(brute2 == FREE_KLEENE_2_SIZE, || format!("brute force gives {brute2}, frozen {FREE_KLEENE_2_SIZE}"))?;
    ensure(f2 == FREE_KLEENE_2_SIZE, || format!("|free_kleene(2)| = {f2}"))?;
    Ok(format!("|E(K~)| = 6, |free_kleene(2)| = {f2}"))
}

fn c4_theorem_one() -> Outcome {
    let p = pipeline::free_over(&pipeline::chain6()).map_err(|e| e.to_string())?;
    ensure(p.complex.complex.facets() == [vec![0, 1, 2]], || "C6 complex is not a triangle".into())?;
    ensure(p.complex.weight_multiset() == [1, 2, 2], || format!("weights {:?}", p.complex.weights))?;
    let mut dens = p.realization.weights();
    dens.sort();
    ensure(dens == [BigInt::from(1), BigInt::from(2), BigInt::from(2)], || format!("denominators {dens:?}"))?;
    let a = pipeline::free_over(&k2()).map_err(|e| e.to_string())?.complex;
    let b = pipeline::free_over(&pipeline::k_prime()).map_err(|e| e.to_string())?.complex;
    ensure(a == b, || "K^2 and K' complexes differ".into())?;
    ensure(a.weights == [2, 2] && a.complex.facets() == [vec![0], vec![1]], || format!("K^2 complex {a}"))?;
    Ok("triangle (1,2,2); two weight-2 points".into())
}

fn all_regular(t: &RationalTriangulation) -> Result<(), String> {
    for s in &t.simplices {
        let pts = t.simplex_points(s);
        ensure(geom::minor_gcd(&pts) == BigInt::one(), || format!("simplex {s:?} not regular"))?;
        let h: Vec<Vec<BigInt>> = pts.iter().map(|p| geom::homogeneous(p)).collect();
        let d = geom::det_int(h);
        ensure(d == BigInt::one() || d == -BigInt::one(), || format!("simplex {s:?} has det {d}"))?;
    }
    Ok(())
}

fn c5_kleene_triangulation() -> Outcome {
    let start = Instant::now();
    let s2 = geom::kleene_triangulation(2).map_err(|e| e.to_string())?;
    ensure(s2.f_vector() == [9, 16, 8], || format!("f-vector {:?}", s2.f_vector()))?;
    all_regular(&s2)?;
    ensure(s2.volume() == Q::one(), || format!("area {}", s2.volume()))?;
    ensure(s2.improper_pair().is_none(), || "S2 not proper".into())?;
    let s3 = geom::kleene_triangulation(3).map_err(|e| e.to_string())?;
    all_regular(&s3)?;
    ensure(s3.volume() == Q::one(), || format!("volume {}", s3.volume()))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("S2 f = (9,16,8), S3 has {} regular simplices", s3.simplices.len()))
}

fn c6_u_n() -> Outcome {
    let mut rng = seeded_rng(DEFAULT_SEED);
    let s2 = Arc::new(geom::kleene_triangulation(2).map_err(|e| e.to_string())?);
    let mut checked = 0;
    for _ in 0..20 {
        let term = mvalg::random_kleene_term(&mut rng, 2, 4);
        let table = term.kleene_table(2).ok_or("not a Kleene term")?;
        let f = mvalg::kleene_to_pl(&table, s2.clone()).map_err(|e| e.to_string())?;
        for _ in 0..50 {
            let x = geom::random_point(&mut rng, 2, 12);
            let args: Vec<MVScalar> = x.iter().map(|c| MVScalar::new(c.clone()).unwrap()).collect();
            let direct = mvalg::eval_term(&term, &args).map_err(|e| e.to_string())?;
            let pl = f.eval(&x).map_err(|e| e.to_string())?;
            ensure(direct == pl, || format!("{term} at {}: {direct} vs {pl}", geom::format_point(&x)))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} evaluations agree"))
}

fn random_theta<R: Rng>(rng: &mut R) -> Vec<TermPair> {
    let k = rng.gen_range(1..=2);
    (0..k)
        .map(|_| {
            let l = mvalg::random_kleene_term(rng, 2, 2).kleene_table(2).unwrap();
            let r = mvalg::random_kleene_term(rng, 2, 2).kleene_table(2).unwrap();
            TermPair::new(2, l, r).unwrap()
        })
        .collect()
}

fn c7_sol_m() -> Outcome {
    let mut rng = seeded_rng(DEFAULT_SEED ^ 7);
    let (mut checked, mut inside) = (0, 0);
    for _ in 0..10 {
        let theta = random_theta(&mut rng);
        let samples: Vec<_> = (0..200).map(|_| geom::random_point(&mut rng, 2, 8)).collect();
        let r = mvalg::sol_m_sampled(&theta, 2, &samples).map_err(|e| e.to_string())?;
        ensure(r.discrepancies.is_empty(), || format!("{} mismatches, first {}", r.discrepancies.len(), geom::format_point(&r.discrepancies[0])))?;
        checked += r.checked;
        inside += r.inside;
    }
    Ok(format!("{checked} points, {inside} inside, 0 mismatches"))
}

fn c8_separation() -> Outcome {
    let mut rng = seeded_rng(DEFAULT_SEED ^ 8);
    let pts = tri::cube_points(2);
    for _ in 0..50 {
        let w: Vec<Vec<Tri>> = pts.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let family = space::separating_family(&w, 2).map_err(|e| e.to_string())?;
        let sol: BTreeSet<Vec<Tri>> = space::sol_k(&family, 2).map_err(|e| e.to_string())?.into_iter().collect();
        let expected: BTreeSet<Vec<Tri>> = w.iter().cloned().collect();
        ensure(sol == expected, || format!("W = {w:?}, sol = {sol:?}"))?;
    }
    Ok("50 subsets recovered".into())
}

fn c9_basis_laws() -> Outcome {
    let mut rng = seeded_rng(DEFAULT_SEED ^ 9);
    let mut bases = Vec::new();
    for n in 1..=3 {
        let t = Arc::new(geom::kleene_triangulation(n).map_err(|e| e.to_string())?);
        bases.push((format!("S{n}"), mvalg::schauder_basis(t).map_err(|e| e.to_string())?));
    }
    for (name, b) in suite().into_iter().map(|(n, b)| (n.to_string(), b)).chain([("B_W".to_string(), b_w())]) {
        bases.push((format!("free over {name}"), pipeline::free_over(&b).map_err(|e| e.to_string())?.basis));
    }
    for (name, b) in &bases {
        let t = &b.triangulation;
        for (v, p) in t.vertices.iter().enumerate() {
            ensure(BigInt::from(b.mult[v]) == geom::den(p), || format!("{name}: mult != den at {v}"))?;
        }
        let samples = t.vertices.iter().cloned().chain((0..20).map(|_| geom::random_point_in(&mut rng, t, 6)));
        for x in samples {
            let s = b.partition_sum(&x).map_err(|e| format!("{name}: {e}"))?;
            ensure(s == Q::one(), || format!("{name}: sum {s} at {}", geom::format_point(&x)))?;
        }
    }
    Ok(format!("{} bases", bases.len()))
}

fn c10_stellar() -> Outcome {
    let mut rng = seeded_rng(DEFAULT_SEED ^ 10);
    let mut pairs = 0;
    for n in 1..=2 {
        let t = Arc::new(geom::kleene_triangulation(n).map_err(|e| e.to_string())?);
        let old = mvalg::schauder_basis(t.clone()).map_err(|e| e.to_string())?;
        for r in 0..old.len() {
            for s in r + 1..old.len() {
                if !mvalg::is_starrable(&old, r, s) {
                    continue;
                }
                let new = mvalg::stellar_subdivide(&old, r, s).map_err(|e| e.to_string())?;
                let samples: Vec<_> = (0..50).map(|_| geom::random_point(&mut rng, n, 10)).collect();
                let bad = mvalg::stellar_coherence(&old, &new, r, s, &samples).map_err(|e| e.to_string())?;
                ensure(bad.is_empty(), || format!("S{n} {{{r},{s}}}: {:?}", bad[0]))?;
                ensure(new.triangulation.is_regular(), || format!("S{n} {{{r},{s}}}: not regular"))?;
                ensure(new.triangulation.volume() == t.volume(), || format!("S{n} {{{r},{s}}}: volume changed"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} starrable pairs"))
}

fn c11_theorem_two() -> Outcome {
    let start = Instant::now();
    let mut members = suite();
    members.push(("F(2)", algebra::free_kleene(2).map_err(|e| e.to_string())?.algebra));
    members.push(("B_W", b_w()));
    for (name, b) in &members {
        let p = pipeline::free_over(b).map_err(|e| e.to_string())?;
        ensure(complex::is_kleene_complex(&p.complex).is_ok(), || format!("{name}: not a Kleene complex"))?;
        let r = pipeline::recognize(&p.complex).map_err(|e| format!("{name}: {e}"))?;
        ensure(complex::complex_isomorphic(&r.presentation.complex, &p.complex).is_some(), || format!("{name}: not isomorphic"))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{} algebras", members.len()))
}

fn named(names: &[&str], weights: Vec<u64>, faces: Vec<Vec<usize>>) -> WeightedComplex {
    let c = AbstractComplex::new(names.iter().map(|s| s.to_string()).collect(), faces).unwrap();
    WeightedComplex::new(c, weights).unwrap()
}

fn c12_negative() -> Outcome {
    let cases = [
        ("weight-3 vertex", named(&["a"], vec![3], vec![vec![0]]), 'a'),
        ("hollow triangle", named(&["a", "b", "c"], vec![2, 2, 2], vec![vec![0, 1], vec![1, 2], vec![0, 2]]), 'b'),
        ("adjacent weight-1 pair", named(&["a", "b"], vec![1, 1], vec![vec![0, 1]]), 'c'),
        (
            "5-cycle",
            named(&["a", "b", "c", "d", "e"], vec![2; 5], (0..5).map(|i| vec![i, (i + 1) % 5]).collect()),
            'c',
        ),
    ];
    let mut msgs = Vec::new();
    for (label, wc, cond) in cases {
        match pipeline::recognize(&wc) {
            Err(PipelineError::Rejected(v)) if v.condition() == cond => msgs.push(format!("{label} -> ({cond})")),
            other => return Err(format!("{label}: expected condition ({cond}), got {other:?}")),
        }
    }
    Ok(msgs.join(", "))
}

fn c13_nine_point_search() -> Outcome {
    let start = Instant::now();
    let r = pipeline::demo_section6(pipeline::DEFAULT_FLIP_BUDGET).map_err(|e| e.to_string())?;
    ensure(r.q1.pass, || format!("Q1: {:?}", r.q1))?;
    ensure(r.q2.f_vector == [9, 16, 8], || format!("f-vector {:?}", r.q2.f_vector))?;
    let explored = match &r.q2.search {
        FlipSearch::Found { explored, .. } => *explored,
        other => return Err(format!("search: {other:?}")),
    };
    ensure(r.q2.pass, || format!("Q2: {:?}", r.q2))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("found after {explored} triangulations"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("duality round trip", c1_duality),
        ("dual-space facts", c2_dual_spaces),
        ("free Kleene sizes", c3_free_sizes),
        ("free construction outputs", c4_theorem_one),
        ("Kleene triangulation", c5_kleene_triangulation),
        ("term evaluation vs PL interpolation", c6_u_n),
        ("Sol_M vs |Sigma_Theta|", c7_sol_m),
        ("separating pairs", c8_separation),
        ("basis laws", c9_basis_laws),
        ("stellar coherence", c10_stellar),
        ("recognition round trip", c11_theorem_two),
        ("negative recognition", c12_negative),
        ("nine-point counterexample search", c13_nine_point_search),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
