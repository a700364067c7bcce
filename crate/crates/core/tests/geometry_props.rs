use std::sync::Arc;

use kleene_mv::algebra;
use kleene_mv::complex::{self, Poset};
use kleene_mv::geom::{self, ratio, Q};
use kleene_mv::mvalg::{self, MVScalar, MVTerm};
use kleene_mv::tri::{self, Tri};
use num_traits::Signed;
use proptest::prelude::*;

fn arb_unit() -> impl Strategy<Value = MVScalar> {
    (1i64..=12).prop_flat_map(|d| (0..=d).prop_map(move |n| MVScalar::new(ratio(n, d)).unwrap()))
}

fn arb_point(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(arb_unit().prop_map(MVScalar::into_inner), n)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `|det|` of the homogeneous 3×3 matrix of a triangle given as
/// `(numerator, denominator)` coordinates.
fn homogeneous_det(pts: &[[(i128, i128); 2]; 3]) -> i128 {
    let rows: Vec<[i128; 3]> = pts
        .iter()
        .map(|p| {
            let (x, y) = (p[0], p[1]);
            let gx = gcd(x.0, x.1);
            let gy = gcd(y.0, y.1);
            let (xn, xd) = (x.0 / gx, x.1 / gx);
            let (yn, yd) = (y.0 / gy, y.1 / gy);
            let d = xd / gcd(xd, yd) * yd;
            [xn * (d / xd), yn * (d / yd), d]
        })
        .collect();
    let [a, b, c] = [rows[0], rows[1], rows[2]];
    (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])).abs()
}

fn arb_coord() -> impl Strategy<Value = (i128, i128)> {
    (1i128..=4).prop_flat_map(|d| (0..=d).prop_map(move |n| (n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mv_axioms(x in arb_unit(), y in arb_unit(), z in arb_unit()) {
        prop_assert_eq!(x.oplus(&y).oplus(&z), x.oplus(&y.oplus(&z)));
        prop_assert_eq!(x.oplus(&y), y.oplus(&x));
        prop_assert_eq!(x.oplus(&MVScalar::zero()), x.clone());
        prop_assert_eq!(x.neg().neg(), x.clone());
        prop_assert_eq!(x.oplus(&MVScalar::zero().neg()), MVScalar::one());
        prop_assert_eq!(x.neg().oplus(&y).neg().oplus(&y), y.neg().oplus(&x).neg().oplus(&x));
    }

    #[test]
    fn mv_de_morgan_and_lattice(x in arb_unit(), y in arb_unit()) {
        prop_assert_eq!(x.oplus(&y).neg(), x.neg().odot(&y.neg()));
        prop_assert_eq!(x.meet(&y).neg(), x.neg().join(&y.neg()));
        prop_assert_eq!(x.join(&y).into_inner(), x.value().max(y.value()).clone());
        prop_assert_eq!(x.meet(&y).into_inner(), x.value().min(y.value()).clone());
        let x_kleene = x.meet(&x.neg()).join(&y.join(&y.neg()));
        prop_assert_eq!(x_kleene, y.join(&y.neg()));
    }

    #[test]
    fn regular_simplex_matches_determinant(a in [arb_coord(), arb_coord()], b in [arb_coord(), arb_coord()], c in [arb_coord(), arb_coord()]) {
        let to_q = |p: &[(i128, i128); 2]| p.iter().map(|&(n, d)| ratio(n as i64, d as i64)).collect::<Vec<Q>>();
        let (qa, qb, qc) = (to_q(&a), to_q(&b), to_q(&c));
        let pts: Vec<&[Q]> = vec![&qa, &qb, &qc];
        let det = homogeneous_det(&[a, b, c]);
        prop_assert_eq!(geom::affinely_independent(&pts), det != 0);
        prop_assert_eq!(geom::is_regular_simplex(&pts), det == 1);
    }

    #[test]
    fn kleene_terms_agree_with_interpolation(seed in any::<u64>(), x in arb_point(2)) {
        let mut rng = kleene_mv::seeded_rng(seed);
        let term = mvalg::random_kleene_term(&mut rng, 2, 4);
        let s2 = Arc::new(geom::kleene_triangulation(2).unwrap());
        let f = mvalg::kleene_to_pl(&term.kleene_table(2).unwrap(), s2).unwrap();
        let args: Vec<MVScalar> = x.iter().map(|c| MVScalar::new(c.clone()).unwrap()).collect();
        prop_assert_eq!(mvalg::eval_term(&term, &args).unwrap(), f.eval(&x).unwrap());
    }

    #[test]
    fn u2_is_an_injective_homomorphism(i in 0usize..84, j in 0usize..84, x in arb_point(2)) {
        let free = algebra::free_kleene(2).unwrap();
        let b = &free.algebra;
        let s2 = Arc::new(geom::kleene_triangulation(2).unwrap());
        let u = |k: usize| mvalg::kleene_to_pl(&free.tables[k], s2.clone()).unwrap();
        let (fi, fj) = (u(i).eval(&x).unwrap(), u(j).eval(&x).unwrap());
        prop_assert_eq!(u(b.meet(i, j)).eval(&x).unwrap(), fi.meet(&fj));
        prop_assert_eq!(u(b.join(i, j)).eval(&x).unwrap(), fi.join(&fj));
        prop_assert_eq!(u(b.neg(i)).eval(&x).unwrap(), fi.neg());
        if i != j {
            let differ = s2.vertices.iter().any(|v| u(i).eval(v).unwrap() != u(j).eval(v).unwrap());
            prop_assert!(differ);
        }
    }

    #[test]
    fn located_simplex_system_contains_point(x in arb_point(3)) {
        let s3 = geom::kleene_triangulation(3).unwrap();
        let cube = tri::cube_points(3);
        let loc = s3.locate(&x).unwrap();
        let chain: Vec<Vec<Tri>> = loc.face.iter().map(|&v| cube[v].clone()).collect();
        prop_assert!(geom::simplex_system(&chain).unwrap().contains(&x));
        for s in &s3.simplices {
            let chain: Vec<Vec<Tri>> = s.iter().map(|&v| cube[v].clone()).collect();
            let inside = s3.simplex_points(s);
            let bary = geom::barycentric(&inside, &x);
            let in_hull = bary.is_some_and(|b| b.iter().all(|c| !c.is_negative()));
            prop_assert_eq!(geom::simplex_system(&chain).unwrap().contains(&x), in_hull);
        }
    }

    #[test]
    fn random_points_lie_in_support(seed in any::<u64>()) {
        let mut rng = kleene_mv::seeded_rng(seed);
        let p = kleene_mv::pipeline::free_over(&kleene_mv::pipeline::chain6()).unwrap();
        let x = geom::random_point_in(&mut rng, &p.realization, 5);
        prop_assert!(p.realization.contains(&x));
        prop_assert_eq!(p.basis.partition_sum(&x).unwrap(), Q::from_integer(1.into()));
    }

    #[test]
    fn realization_abstracts_back(bits in prop::collection::vec(any::<bool>(), 10)) {
        let n = 5;
        let mut pairs = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k] {
                    pairs.push((i, j));
                }
                k += 1;
            }
        }
        let p = Poset::from_pairs((0..n).map(|i| format!("p{i}")).collect(), &pairs).unwrap();
        let weights: Vec<u64> = (0..n).map(|i| if p.is_maximal(i) { 1 } else { 2 }).collect();
        let wc = complex::WeightedComplex::new(complex::nerve(&p), weights).unwrap();
        let t = geom::realize(&wc);
        prop_assert!(t.is_regular());
        prop_assert!(t.improper_pair().is_none());
        prop_assert!(complex::complex_isomorphic(&geom::sc_of(&t), &wc).is_some());
    }

    #[test]
    fn term_round_trips_through_text(seed in any::<u64>()) {
        let mut rng = kleene_mv::seeded_rng(seed);
        let t = mvalg::random_kleene_term(&mut rng, 3, 4);
        let back: MVTerm = t.to_string().parse().unwrap();
        prop_assert_eq!(back, t);
    }
}
