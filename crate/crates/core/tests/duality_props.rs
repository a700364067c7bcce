use std::collections::BTreeSet;

use kleene_mv::algebra::{self, FiniteKleeneAlgebra, KleeneHom};
use kleene_mv::complex::{self, AbstractComplex, Poset, WeightedComplex};
use kleene_mv::space::{self, SpaceMorphism};
use kleene_mv::tri::Tri;
use proptest::prelude::*;

fn k2() -> FiniteKleeneAlgebra {
    let k = algebra::standard_k();
    algebra::product(&k, &k).unwrap()
}

fn pool() -> Vec<FiniteKleeneAlgebra> {
    vec![
        algebra::standard_k(),
        FiniteKleeneAlgebra::boolean(),
        FiniteKleeneAlgebra::chain(&["0", "a", "b", "c", "d", "1"]),
        k2(),
        algebra::subalgebra_by_names(&k2(), &["(0,0)", "(0,1/2)", "(1/2,0)", "(1/2,1/2)", "(1/2,1)", "(1,1/2)", "(1,1)"])
            .unwrap(),
        algebra::free_kleene(1).unwrap().algebra,
    ]
}

/// The subalgebra of `a` generated by `gens`, by saturation.
fn generated(a: &FiniteKleeneAlgebra, gens: &[usize]) -> Vec<usize> {
    let mut set: BTreeSet<usize> = gens.iter().copied().chain([a.bot(), a.top()]).collect();
    loop {
        let cur: Vec<usize> = set.iter().copied().collect();
        let before = set.len();
        for &x in &cur {
            set.insert(a.neg(x));
            for &y in &cur {
                set.insert(a.meet(x, y));
                set.insert(a.join(x, y));
            }
        }
        if set.len() == before {
            return set.into_iter().collect();
        }
    }
}

fn tri_of(name: &str) -> Tri {
    Tri::parse(name).unwrap()
}

/// Homomorphism test for maps `K² → K` done on coordinates.
fn oracle_hom_k2_to_k(map: &[usize], k2: &FiniteKleeneAlgebra, k: &FiniteKleeneAlgebra) -> bool {
    let pair = |i: usize| {
        let n = k2.name(i);
        let inner = &n[1..n.len() - 1];
        let (a, b) = inner.split_once(',').unwrap();
        (tri_of(a), tri_of(b))
    };
    let val = |i: usize| tri_of(k.name(map[i]));
    let n = k2.len();
    (0..n).all(|x| {
        let (a, b) = pair(x);
        let negx = (0..n).find(|&z| pair(z) == (a.neg(), b.neg())).unwrap();
        val(negx) == val(x).neg()
            && (0..n).all(|y| {
                let (c, d) = pair(y);
                let m = (0..n).find(|&z| pair(z) == (a.meet(c), b.meet(d))).unwrap();
                let j = (0..n).find(|&z| pair(z) == (a.join(c), b.join(d))).unwrap();
                val(m) == val(x).meet(val(y)) && val(j) == val(x).join(val(y))
            })
    }) && val(k2.bot()) == Tri::Zero
        && val(k2.top()) == Tri::One
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_check_matches_coordinate_oracle(map in prop::collection::vec(0usize..3, 9)) {
        let k = algebra::standard_k();
        let k2 = k2();
        let h = KleeneHom { map: map.clone() };
        prop_assert_eq!(algebra::is_homomorphism(&h, &k2, &k), oracle_hom_k2_to_k(&map, &k2, &k));
        let listed = algebra::hom_enumerate(&k2, &k).contains(&h);
        prop_assert_eq!(listed, algebra::is_homomorphism(&h, &k2, &k));
    }

    #[test]
    fn duality_round_trip_on_generated_subalgebras(
        which in 0usize..6,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..3),
    ) {
        let base = &pool()[which];
        let gens: Vec<usize> = picks.iter().map(|p| p.index(base.len())).collect();
        let sub = algebra::subalgebra(base, &generated(base, &gens)).unwrap();
        prop_assert!(sub.validate().is_ok());
        let d = space::dual_d(&sub);
        prop_assert!(d.space.validate().is_ok());
        let e = space::dual_e(&d.space).unwrap();
        prop_assert!(algebra::is_isomorphic_alg(&e.algebra, &sub).is_some());
        let back = space::dual_d(&e.algebra);
        prop_assert!(space::is_isomorphic_space(&back.space, &d.space).is_some());
    }

    #[test]
    fn d_is_a_contravariant_functor(a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        let p = pool();
        let (a, b, c) = (&p[a], &p[b], &p[c]);
        let (da, db, dc) = (space::dual_d(a), space::dual_d(b), space::dual_d(c));
        for f in algebra::hom_enumerate(a, b) {
            let df = space::d_on_hom(&f, a, b, &da, &db).unwrap();
            prop_assert!(space::is_space_morphism(&df, &db.space, &da.space));
            for g in algebra::hom_enumerate(b, c) {
                let dg = space::d_on_hom(&g, b, c, &db, &dc).unwrap();
                let dgf = space::d_on_hom(&g.compose(&f), a, c, &da, &dc).unwrap();
                prop_assert_eq!(dgf, df.compose(&dg));
            }
        }
        let id = space::d_on_hom(&KleeneHom::identity(a), a, a, &da, &da).unwrap();
        prop_assert_eq!(id, SpaceMorphism::identity(&da.space));
    }

    #[test]
    fn e_is_a_contravariant_functor(a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        let p = pool();
        let (x, y, z) = (space::dual_d(&p[a]).space, space::dual_d(&p[b]).space, space::dual_d(&p[c]).space);
        let (ex, ey, ez) = (space::dual_e(&x).unwrap(), space::dual_e(&y).unwrap(), space::dual_e(&z).unwrap());
        for g in space::morphisms(&x, &y) {
            let eg = space::e_on_morphism(&g, &x, &y, &ex, &ey).unwrap();
            prop_assert!(algebra::is_homomorphism(&eg, &ey.algebra, &ex.algebra));
            for h in space::morphisms(&y, &z) {
                let eh = space::e_on_morphism(&h, &y, &z, &ey, &ez).unwrap();
                let ehg = space::e_on_morphism(&h.compose(&g), &x, &z, &ex, &ez).unwrap();
                prop_assert_eq!(ehg, eg.compose(&eh));
            }
        }
    }
}

fn arb_poset() -> impl Strategy<Value = Poset> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
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
            Poset::from_pairs((0..n).map(|i| format!("p{i}")).collect(), &pairs).unwrap()
        })
    })
}

fn arb_complex(max_n: usize) -> impl Strategy<Value = WeightedComplex> {
    (1usize..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::btree_set(0..n, 1..=n.min(4)), 0..6),
            prop::collection::vec(1u64..=2, n),
        )
            .prop_map(move |(faces, weights)| {
                let faces = faces.into_iter().map(|f| f.into_iter().collect()).collect();
                let c = AbstractComplex::new((0..n).map(|i| format!("v{i}")).collect(), faces).unwrap();
                WeightedComplex::new(c, weights).unwrap()
            })
    })
}

fn facet_set(wc: &WeightedComplex, perm: &[usize]) -> BTreeSet<Vec<usize>> {
    wc.complex
        .facets()
        .iter()
        .map(|f| {
            let mut g: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
            g.sort_unstable();
            g
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn brute_isomorphic(a: &WeightedComplex, b: &WeightedComplex) -> bool {
    let n = a.complex.vertex_count();
    if n != b.complex.vertex_count() {
        return false;
    }
    let target = facet_set(b, &(0..n).collect::<Vec<_>>());
    permutations(n)
        .iter()
        .any(|p| (0..n).all(|v| a.weights[v] == b.weights[p[v]]) && facet_set(a, p) == target)
}

fn is_valid_iso(a: &WeightedComplex, b: &WeightedComplex, map: &[usize]) -> bool {
    let n = b.complex.vertex_count();
    map.len() == a.complex.vertex_count()
        && map.iter().collect::<BTreeSet<_>>().len() == map.len()
        && (0..map.len()).all(|v| a.weights[v] == b.weights[map[v]])
        && facet_set(a, map) == facet_set(b, &(0..n).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn nerve_round_trip(p in arb_poset()) {
        let c = complex::nerve(&p);
        let q = complex::is_order_complex(&c);
        prop_assert!(q.is_some());
        let q = q.unwrap();
        let c2 = complex::nerve(&q);
        prop_assert_eq!(c2.facets(), c.facets());
        prop_assert_eq!(q.maximal_chains().len(), c.facets().len());
    }

    #[test]
    fn isomorphism_matches_brute_force(a in arb_complex(6), b in arb_complex(6)) {
        let found = complex::complex_isomorphic(&a, &b);
        prop_assert_eq!(found.is_some(), brute_isomorphic(&a, &b));
        if let Some(map) = found {
            prop_assert!(is_valid_iso(&a, &b, &map));
        }
    }

    #[test]
    fn isomorphism_finds_relabelings(a in arb_complex(7), seed in any::<u64>()) {
        let n = a.complex.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut weights = vec![0; n];
        for v in 0..n {
            weights[perm[v]] = a.weights[v];
        }
        let faces = a.complex.facets().iter().map(|f| f.iter().map(|&v| perm[v]).collect()).collect();
        let b = WeightedComplex::new(AbstractComplex::new(a.complex.vertices().to_vec(), faces).unwrap(), weights).unwrap();
        let map = complex::complex_isomorphic(&a, &b);
        prop_assert!(map.is_some());
        prop_assert!(is_valid_iso(&a, &b, &map.unwrap()));
    }

    #[test]
    fn kleene_complexes_are_recognized(p in arb_poset(), marks in prop::collection::vec(any::<bool>(), 6)) {
        let weights: Vec<u64> = (0..p.len()).map(|i| if p.is_maximal(i) && marks[i] { 1 } else { 2 }).collect();
        let wc = WeightedComplex::new(complex::nerve(&p), weights).unwrap();
        prop_assert!(complex::is_kleene_complex(&wc).is_ok());
        let r = kleene_mv::pipeline::recognize(&wc).unwrap();
        prop_assert!(complex::complex_isomorphic(&wc, &r.presentation.complex).is_some());
    }
}

#[test]
fn hom_enumeration_matches_oracle_exhaustively() {
    let k = algebra::standard_k();
    let k2 = k2();
    let mut expected = Vec::new();
    for code in 0..3usize.pow(9) {
        let map: Vec<usize> = (0..9).map(|i| code / 3usize.pow(i) % 3).collect();
        if oracle_hom_k2_to_k(&map, &k2, &k) {
            expected.push(KleeneHom { map });
        }
    }
    expected.sort();
    assert_eq!(algebra::hom_enumerate(&k2, &k), expected);
    assert_eq!(expected.len(), 2);
}
