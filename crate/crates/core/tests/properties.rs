use num_complex::Complex;
use proptest::prelude::*;

use qdc_core::double::DoubleContext;
use qdc_core::engine::{Basis, MonomialOperator, SparseOperator};
use qdc_core::grid::PairFunction;
use qdc_core::group::{FiniteGroup, GroupFunction};
use qdc_core::linalg::Matrix;
use qdc_core::quantum_group::QuantumGroupPair;
use qdc_core::twist::{product_direct, weyl_involution, weyl_rep, Twist};

type Cx = Complex<f64>;

const SPECS: [&str; 6] = [
    "trivial",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "product:cyclic:2,cyclic:2",
    "symmetric:3",
];

fn group(spec: &str) -> FiniteGroup {
    FiniteGroup::builtin(spec, 24).unwrap()
}

fn spec() -> impl Strategy<Value = &'static str> {
    prop::sample::select(SPECS.to_vec())
}

fn complex() -> impl Strategy<Value = Cx> {
    (-4i32..=4, -4i32..=4).prop_map(|(a, b)| Cx::new(a as f64 / 2.0, b as f64 / 4.0))
}

fn values(len: usize) -> impl Strategy<Value = Vec<Cx>> {
    prop::collection::vec(complex(), len)
}

fn grid(n: usize) -> impl Strategy<Value = PairFunction<f64>> {
    values(n * n).prop_map(move |v| PairFunction::from_values(n, v).unwrap())
}

fn function(n: usize) -> impl Strategy<Value = GroupFunction<f64>> {
    values(n).prop_map(GroupFunction::new)
}

fn permutation(d: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..d).collect::<Vec<_>>()).prop_shuffle()
}

fn dense(x: &SparseOperator<f64>) -> Matrix<f64> {
    Matrix::from_fn(x.dim(), x.dim(), |r, c| x.get(r, c))
}

fn close(a: &PairFunction<f64>, b: &PairFunction<f64>) -> bool {
    a.max_diff(b) <= 1e-10
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_is_an_antiautomorphism(s in spec(), a in 0usize..6, b in 0usize..6) {
        let g = group(s);
        let (a, b) = (a % g.order(), b % g.order());
        prop_assert_eq!(g.inv(g.inv(a)), a);
        prop_assert_eq!(g.inv(g.mul(a, b)), g.mul(g.inv(b), g.inv(a)));
    }

    #[test]
    fn conjugation_is_a_bijection(s in spec(), z in 0usize..6) {
        let g = group(s);
        let z = z % g.order();
        let mut image: Vec<usize> = g.elements().map(|x| g.conj_by(x, z)).collect();
        image.sort_unstable();
        prop_assert_eq!(image, g.elements().collect::<Vec<_>>());
    }

    #[test]
    fn relabelled_tables_are_isomorphic(s in spec(), perm in permutation(6)) {
        let g = group(s);
        let n = g.order();
        let perm: Vec<usize> = perm.into_iter().filter(|&x| x < n).collect();
        let mut table = vec![vec![0; n]; n];
        for a in g.elements() {
            for b in g.elements() {
                table[perm[a]][perm[b]] = perm[g.mul(a, b)];
            }
        }
        let h = FiniteGroup::from_cayley(&table).unwrap();
        prop_assert_eq!(h.order(), n);
        prop_assert_eq!(h.is_abelian(), g.is_abelian());
        let mut orders_g: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
        let mut orders_h: Vec<usize> = h.elements().map(|x| h.element_order(x)).collect();
        orders_g.sort_unstable();
        orders_h.sort_unstable();
        prop_assert_eq!(orders_g, orders_h);
    }

    #[test]
    fn monomials_compose_like_maps(p in permutation(9), q in permutation(9), r in permutation(9)) {
        let mk = |p: Vec<usize>| MonomialOperator::<f64>::from_image(3, 2, p, None, false).unwrap();
        let (a, b, c) = (mk(p), mk(q), mk(r));
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert!(left.compare(&right).unwrap().equal());
        prop_assert!(a.compose(&a.adjoint()).unwrap().is_identity());
        let v: Vec<Cx> = (0..9).map(|k| Cx::new(k as f64, 1.0)).collect();
        prop_assert_eq!(a.compose(&b).unwrap().apply(&v), a.apply(&b.apply(&v)));
    }

    #[test]
    fn embedding_on_first_leg_is_tensoring_with_identity(p in permutation(4)) {
        let m = MonomialOperator::<f64>::from_image(2, 2, p, None, false).unwrap();
        let embedded = m.embed(&[1, 2], 3).unwrap();
        let tensored = m.tensor(&MonomialOperator::identity(2, 1)).unwrap();
        prop_assert!(embedded.compare(&tensored).unwrap().equal());
    }

    #[test]
    fn sparse_products_match_dense(x in values(16), y in values(16), mask in prop::collection::vec(any::<bool>(), 16)) {
        let mk = |v: &[Cx]| {
            let t: Vec<_> = v.iter().enumerate().filter(|(k, _)| mask[*k]).map(|(k, z)| (k / 4, k % 4, *z)).collect();
            SparseOperator::from_triplets(2, 2, t).unwrap()
        };
        let (a, b) = (mk(&x), mk(&y));
        let sparse = dense(&a.mul(&b).unwrap());
        let oracle = dense(&a).mul(&dense(&b)).unwrap();
        prop_assert!(sparse.max_diff(&oracle, &1e-12).unwrap().0 <= 1e-12);
        prop_assert!(dense(&a.adjoint()).max_diff(&dense(&a).adjoint(), &0.0).unwrap().0 == 0.0);
    }

    #[test]
    fn comultiplication_is_multiplicative((s, f, h) in spec().prop_flat_map(|s| {
        let n = group(s).order();
        (Just(s), function(n), function(n))
    })) {
        let g = group(s);
        let p = QuantumGroupPair::<f64>::new(&g).unwrap();
        let (lf, lh) = (p.left_regular(&f).unwrap(), p.left_regular(&h).unwrap());
        let lhs = p.comultiply(&lf.mul(&lh).unwrap()).unwrap();
        let rhs = p.comultiply(&lf).unwrap().mul(&p.comultiply(&lh).unwrap()).unwrap();
        prop_assert!(lhs.compare(&rhs, &1e-10).unwrap().equal());
        prop_assert_eq!(p.antipode(&f.convolve(&h, &g)), p.antipode(&h).convolve(&p.antipode(&f), &g));
    }

    #[test]
    fn double_comultiplication_is_multiplicative((s, f, h) in spec().prop_flat_map(|s| {
        let n = group(s).order();
        (Just(s), grid(n), grid(n))
    })) {
        let g = group(s);
        let ctx = DoubleContext::<f64>::from_group(&g).unwrap();
        let (x, y) = (ctx.big_pi_grid(&f).unwrap(), ctx.big_pi_grid(&h).unwrap());
        let lhs = ctx.delta_d(&x.mul(&y).unwrap()).unwrap();
        let rhs = ctx.delta_d(&x).unwrap().mul(&ctx.delta_d(&y).unwrap()).unwrap();
        prop_assert!(lhs.compare(&rhs, &1e-10).unwrap().equal());
        let coords = ctx.pi_pi_basis().expand(&lhs, &1e-10);
        prop_assert!(coords.is_ok());
    }

    #[test]
    fn deformed_product_is_associative_and_unital((s, a, b, c) in spec().prop_flat_map(|s| {
        let n = group(s).order();
        (Just(s), grid(n), grid(n), grid(n))
    })) {
        let g = group(s);
        let n = g.order();
        let lhs = product_direct(&g, &product_direct(&g, &a, &b), &c);
        let rhs = product_direct(&g, &a, &product_direct(&g, &b, &c));
        prop_assert!(close(&lhs, &rhs));
        let unit = PairFunction::from_fn(n, |s, _| Cx::new((s == 0) as u8 as f64, 0.0));
        prop_assert!(close(&product_direct(&g, &unit, &a), &a));
        prop_assert!(close(&product_direct(&g, &a, &unit), &a));
    }

    #[test]
    fn involution_reverses_products((s, a, b) in spec().prop_flat_map(|s| {
        let n = group(s).order();
        (Just(s), grid(n), grid(n))
    })) {
        let g = group(s);
        let lhs = weyl_involution(&g, &product_direct(&g, &a, &b));
        let rhs = product_direct(&g, &weyl_involution(&g, &b), &weyl_involution(&g, &a));
        prop_assert!(close(&lhs, &rhs));
        prop_assert!(close(&weyl_involution(&g, &weyl_involution(&g, &a)), &a));
        let (err, _) = weyl_rep(&g, &weyl_involution(&g, &a)).max_diff(&weyl_rep(&g, &a).adjoint(), &1e-12).unwrap();
        prop_assert!(err <= 1e-12);
    }

    #[test]
    fn weyl_rep_is_multiplicative((s, a, b) in spec().prop_flat_map(|s| {
        let n = group(s).order();
        (Just(s), grid(n), grid(n))
    })) {
        let g = group(s);
        let lhs = weyl_rep(&g, &product_direct(&g, &a, &b));
        let rhs = weyl_rep(&g, &a).mul(&weyl_rep(&g, &b)).unwrap();
        prop_assert!(lhs.max_diff(&rhs, &1e-12).unwrap().0 <= 1e-12);
    }

    #[test]
    fn grid_text_roundtrip((s, a) in spec().prop_flat_map(|s| (Just(s), grid(group(s).order())))) {
        let g = group(s);
        let back = PairFunction::<f64>::parse(&a.to_text(), &g).unwrap();
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn three_product_routes_agree((s, a, b) in prop::sample::select(vec!["cyclic:2", "cyclic:3", "product:cyclic:2,cyclic:2"]).prop_flat_map(|s| {
        let n = group(s).order();
        (Just(s), grid(n), grid(n))
    })) {
        let g = group(s);
        let tw = Twist::<f64>::from_group(&g).unwrap();
        let direct = product_direct(&g, &a, &b);
        prop_assert!(close(&direct, &tw.product_functional(&a, &b).unwrap()));
        prop_assert!(close(&direct, &tw.product_fourier(&a, &b).unwrap()));
    }
}
