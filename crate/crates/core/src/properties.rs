//! Property tests across the crate: exact linear algebra laws, then module
//! and stable-category invariants on random modules over the corpus.

use std::sync::Arc;

use crate::bmod::{hom_space, hom_space_direct, lambda_map, rho_map, tensor_h, BModule};
use crate::comod::smash_product;
use crate::corpus::{random_module, random_morphism, truncated_smash, CorpusEntry};
use crate::derived::{ext, ext_by_cochains};
use crate::exactlin::{cokernel, inverse, nullspace, rank, rref, solve};
use crate::hopf::Builtin;
use crate::stable::{is_stably_zero, shift_unit, stable_hom, stable_iso_test};
use crate::{FieldMatrix, Gf2, Gf3, Gf5, Rational, Scalar};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix<F: Scalar>(max: usize) -> impl Strategy<Value = FieldMatrix<F>> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c)
            .prop_map(move |v| FieldMatrix::from_vec(r, c, v.into_iter().map(F::from_i64).collect()))
    })
}

fn same_rows<F: Scalar>(max: usize) -> impl Strategy<Value = (FieldMatrix<F>, FieldMatrix<F>)> {
    (1..=max, 1..=max, 1..=max).prop_flat_map(|(r, c, k)| {
        let m = |a: usize, b: usize| {
            proptest::collection::vec(-3i64..=3, a * b)
                .prop_map(move |v| FieldMatrix::from_vec(a, b, v.into_iter().map(F::from_i64).collect()))
        };
        (m(r, c), m(c, k))
    })
}

fn linear_algebra_laws<F: Scalar>(a: &FieldMatrix<F>) -> Result<(), TestCaseError> {
    let (rows, cols) = a.shape();
    let r = rank(a);
    let ns = nullspace(a);
    prop_assert_eq!(r + ns.cols(), cols);
    prop_assert!(a.matmul(&ns).is_zero());
    prop_assert_eq!(rank(&ns), ns.cols());
    prop_assert_eq!(rank(&a.transpose()), r);

    let once = rref(a);
    prop_assert_eq!(once.rank(), r);
    prop_assert_eq!(&rref(&once.matrix).matrix, &once.matrix);
    prop_assert!(once.pivots.windows(2).all(|w| w[0] < w[1]));

    let ck = cokernel(a);
    prop_assert_eq!(ck.dim, rows - r);
    prop_assert!(ck.projection.matmul(a).is_zero());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_rref_gf5(a in matrix::<Gf5>(6)) {
        linear_algebra_laws(&a)?;
    }

    #[test]
    fn rank_nullity_and_rref_rationals(a in matrix::<Rational>(5)) {
        linear_algebra_laws(&a)?;
    }

    #[test]
    fn solve_returns_a_witness((a, x) in same_rows::<Gf5>(5)) {
        let b = a.matmul(&x);
        let y = solve(&a, &b).unwrap().expect("b lies in the column space");
        prop_assert_eq!(a.matmul(&y), b);
    }

    #[test]
    fn solve_rejects_exactly_the_unreachable(a in matrix::<Gf3>(4), seed in any::<u64>()) {
        prop_assume!(a.rows() > 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = FieldMatrix::from_fn(a.rows(), 1, |_, _| Gf3::sample(&mut rng));
        let aug = FieldMatrix::hstack(a.rows(), &[&a, &b]);
        let reachable = rank(&aug) == rank(&a);
        prop_assert_eq!(solve(&a, &b).unwrap().is_some(), reachable);
    }

    #[test]
    fn kron_rank_is_multiplicative(a in matrix::<Gf5>(3), b in matrix::<Gf5>(3)) {
        let k = a.kron(&b);
        prop_assert_eq!(k.shape(), (a.rows() * b.rows(), a.cols() * b.cols()));
        prop_assert_eq!(rank(&k), rank(&a) * rank(&b));
    }

    #[test]
    fn kron_is_compatible_with_products((a, c) in same_rows::<Gf2>(3), (b, d) in same_rows::<Gf2>(3)) {
        prop_assert_eq!(a.kron(&b).matmul(&c.kron(&d)), a.matmul(&c).kron(&b.matmul(&d)));
    }

    #[test]
    fn inverses_exist_exactly_for_full_rank(a in matrix::<Rational>(4)) {
        prop_assume!(a.is_square());
        match inverse(&a) {
            Some(inv) => {
                prop_assert_eq!(rank(&a), a.rows());
                prop_assert!(a.matmul(&inv).is_identity());
                prop_assert!(inv.matmul(&a).is_identity());
            }
            None => prop_assert!(rank(&a) < a.rows()),
        }
    }
}

fn entry_dual() -> CorpusEntry<Gf2> {
    CorpusEntry::hopf("GF(2)[d]/(d^2)", &Builtin::TruncatedPoly { p: 2 }).unwrap()
}

fn entry_truncated() -> CorpusEntry<Gf3> {
    CorpusEntry::hopf("GF(3)[d]/(d^3)", &Builtin::TruncatedPoly { p: 3 }).unwrap()
}

fn entry_sweedler() -> CorpusEntry<Gf5> {
    CorpusEntry::hopf("H4", &Builtin::Sweedler).unwrap()
}

fn entry_smash() -> CorpusEntry<Gf2> {
    let a = truncated_smash().unwrap();
    let base = smash_product(&a).unwrap();
    let seeds = vec![BModule::regular(base.clone()), BModule::natural(base.clone()).unwrap()];
    CorpusEntry { name: "smash".into(), base, seeds }
}

fn pair<F: Scalar>(entry: &CorpusEntry<F>, seed: u64, max_dim: usize) -> (BModule<F>, BModule<F>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_module(entry, &mut rng, max_dim).unwrap();
    let n = random_module(entry, &mut rng, max_dim).unwrap();
    (m, n)
}

/// Structure maps, hom spaces and the stable category on random modules.
fn module_laws<F: Scalar>(entry: &CorpusEntry<F>, seed: u64) -> Result<(), TestCaseError> {
    let (m, n) = pair(entry, seed, 4);
    let h = m.hopf().clone();
    let mh = tensor_h(&m);
    prop_assert_eq!(mh.dim(), m.dim() * h.dim());
    prop_assert!(mh.verify().passed());

    let (lambda, rho) = (lambda_map(&m), rho_map(&m));
    prop_assert!(lambda.verify().passed());
    prop_assert!(rho.verify().passed());
    // ρλ(x) = ε(Λ)x.
    let eps = h.counit().apply(&h.integral().lambda)[0].clone();
    let rl = rho.compose(&lambda).unwrap();
    prop_assert_eq!(rl.matrix(), &FieldMatrix::identity(m.dim()).scale(&eps));

    // Two independent computations of Hom_B(M, N).
    let fast = hom_space(&m, &n).unwrap();
    let direct = hom_space_direct(&m, &n).unwrap();
    prop_assert_eq!(fast.len(), direct.len());
    let stack = |fs: &[crate::bmod::ModuleMorphism<F>]| {
        let cols: Vec<Vec<F>> = fs.iter().map(|f| f.matrix().to_vec()).collect();
        FieldMatrix::from_columns(m.dim() * n.dim(), &cols)
    };
    let both = FieldMatrix::hstack(m.dim() * n.dim(), &[&stack(&fast), &stack(&direct)]);
    prop_assert_eq!(rank(&both), fast.len());

    let s = stable_hom(&m, &n).unwrap();
    prop_assert!(s.dim() <= fast.len());
    prop_assert!(is_stably_zero(&mh).unwrap().is_some());
    prop_assert_eq!(stable_hom(&m, &mh).unwrap().dim(), 0);
    prop_assert_eq!(stable_hom(&mh, &n).unwrap().dim(), 0);

    // Maps factoring through λ are stably zero.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    let g = random_morphism(&mut rng, &mh, &n).unwrap();
    prop_assert!(s.is_null(&g.compose(&lambda).unwrap()));

    prop_assert!(stable_iso_test(&shift_unit(&m).unwrap()).unwrap());
    Ok(())
}

fn ext_laws<F: Scalar>(entry: &CorpusEntry<F>, seed: u64) -> Result<(), TestCaseError> {
    let (m, n) = pair(entry, seed, 3);
    for i in 1..=2 {
        prop_assert_eq!(ext(&m, &n, i).unwrap().dim, ext_by_cochains(&m, &n, i).unwrap(), "degree {}", i);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn module_laws_dual_numbers(seed in any::<u64>()) {
        module_laws(&entry_dual(), seed)?;
    }

    #[test]
    fn module_laws_truncated_gf3(seed in any::<u64>()) {
        module_laws(&entry_truncated(), seed)?;
    }

    #[test]
    fn module_laws_sweedler(seed in any::<u64>()) {
        module_laws(&entry_sweedler(), seed)?;
    }

    #[test]
    fn module_laws_smash(seed in any::<u64>()) {
        module_laws(&entry_smash(), seed)?;
    }

    #[test]
    fn ext_agrees_with_cochains_dual_numbers(seed in any::<u64>()) {
        ext_laws(&entry_dual(), seed)?;
    }

    #[test]
    fn ext_agrees_with_cochains_sweedler(seed in any::<u64>()) {
        ext_laws(&entry_sweedler(), seed)?;
    }

    #[test]
    fn ext_agrees_with_cochains_smash(seed in any::<u64>()) {
        ext_laws(&entry_smash(), seed)?;
    }
}

#[test]
fn corpus_bases_share_the_smash_hopf_algebra() {
    let e = entry_smash();
    assert!(Arc::ptr_eq(e.base.hopf(), e.seeds[0].hopf()));
}
