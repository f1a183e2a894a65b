use super::*;
use crate::hopf::{builtin, Builtin};
use crate::scalar::Fp;

type F2 = Fp<2>;
type F3 = Fp<3>;
type F5 = Fp<5>;

fn hopf<F: Scalar>(b: Builtin) -> Arc<HopfAlgebra<F>> {
    Arc::new(builtin(&b).unwrap())
}

fn dual() -> Arc<ComoduleAlgebra<F2>> {
    regular_comodule(&hopf(Builtin::TruncatedPoly { p: 2 }))
}

/// The `k[d]/(d²)`-module `k^n` with `d` acting by `dm`.
fn dual_module(base: &Arc<ComoduleAlgebra<F2>>, dm: FieldMatrix<F2>) -> BModule<F2> {
    let n = dm.rows();
    BModule::new(base.clone(), vec![FieldMatrix::identity(n), dm]).unwrap()
}

#[test]
fn module_axioms_are_validated() {
    let b = dual();
    let d = FieldMatrix::<F2>::from_i64_rows(&[&[1, 0], &[0, 0]]);
    assert!(matches!(BModule::new(b.clone(), vec![FieldMatrix::identity(2), d]), Err(crate::Error::Structural(_))));
    assert!(matches!(BModule::new(b, vec![FieldMatrix::identity(2)]), Err(crate::Error::Contract(_))));
}

#[test]
fn tensoring_with_trivial_and_regular() {
    let b = dual();
    let k = BModule::trivial(b.clone()).unwrap();
    let h = BModule::regular(b.clone());
    assert_eq!(tensor_with_hmodule(&h, &k).unwrap(), h);
    assert_eq!(tensor_with_hmodule(&k, &h).unwrap(), h);
    assert!(tensor_h(&h).verify().passed());
}

#[test]
fn lambda_and_rho() {
    let b = dual();
    let k = BModule::trivial(b.clone()).unwrap();
    let l = lambda_map(&k);
    assert_eq!(l.matrix(), &FieldMatrix::from_i64_rows(&[&[0], &[1]]));
    assert!(l.verify().passed());
    assert!(rho_map(&k).compose(&l).unwrap().is_zero());
    let z = BModule::zero(b);
    assert_eq!(lambda_map(&z).matrix().shape(), (0, 0));

    let g3 = regular_comodule(&hopf::<F3>(Builtin::Cyclic { n: 2 }));
    let m = BModule::regular(g3);
    let rl = rho_map(&m).compose(&lambda_map(&m)).unwrap();
    assert_eq!(rl.matrix(), &FieldMatrix::identity(2).scale(&F3::new(2)));

    let t = regular_comodule(&hopf::<F5>(Builtin::Trivial));
    let k = BModule::trivial(t).unwrap();
    assert!(rho_map(&k).matrix().is_identity());
}

/// `Σ S⁻¹(h₁)m ⊗ h₂` evaluated term by term on a basis vector.
fn untwist_oracle<F: Scalar>(m: &BModule<F>, a: usize, j: usize) -> Vec<F> {
    let h = m.hopf();
    let nh = h.dim();
    let mut out = vec![F::zero(); m.dim() * nh];
    let delta = h.comult().column(j);
    for p in 0..nh {
        for q in 0..nh {
            let c = &delta[p * nh + q];
            if c.is_zero() {
                continue;
            }
            let mut x = vec![F::zero(); m.dim()];
            x[a] = F::one();
            let y = m.act_by(&h.antipode_inverse().column(p)).apply(&x);
            for (b, yb) in y.into_iter().enumerate() {
                out[b * nh + q] += c.clone() * yb;
            }
        }
    }
    out
}

#[test]
fn untwist_examples() {
    let b = dual();
    let k = BModule::trivial(b.clone()).unwrap();
    let pair = untwist_right(&k).unwrap();
    assert!(pair.forward.matrix().is_identity() && pair.backward.matrix().is_identity());
    let pair = untwist_left(&k).unwrap();
    assert!(pair.forward.matrix().is_identity() && pair.backward.matrix().is_identity());

    let h = BModule::regular(b);
    let pair = untwist_right(&h).unwrap();
    for a in 0..2 {
        for j in 0..2 {
            assert_eq!(pair.forward.matrix().column(a * 2 + j), untwist_oracle(&h, a, j));
        }
    }
    // φ(d ⊗ d) = d ⊗ d: the S⁻¹(d)·d = d² term vanishes.
    assert_eq!(pair.forward.matrix().column(3), vec![F2::new(0), F2::new(0), F2::new(0), F2::new(1)]);
    assert!(pair.backward.compose(&pair.forward).unwrap().matrix().is_identity());
}

#[test]
fn isomorphisms_over_sweedler() {
    let b = regular_comodule(&hopf::<F5>(Builtin::Sweedler));
    let h = BModule::regular(b.clone());
    let k = BModule::trivial(b).unwrap();
    let sum = direct_sum(&h, &k).unwrap().module;
    for m in [&h, &k, &sum] {
        for pair in [untwist_right(m).unwrap(), untwist_left(m).unwrap(), swap_iso(m).unwrap()] {
            assert!(pair.forward.verify().passed() && pair.backward.verify().passed());
            assert!(pair.forward.compose(&pair.backward).unwrap().matrix().is_identity());
            assert!(pair.backward.compose(&pair.forward).unwrap().matrix().is_identity());
        }
    }
}

#[test]
fn swap_of_trivial_is_plain_swap() {
    let b = regular_comodule(&hopf::<F5>(Builtin::Sweedler));
    let k = BModule::trivial(b).unwrap();
    let pair = swap_iso(&k).unwrap();
    assert!(pair.forward.matrix().is_identity());

    let b = dual();
    let h = BModule::regular(b);
    let pair = swap_iso(&h).unwrap();
    assert!(pair.forward.compose(&pair.backward).unwrap().matrix().is_identity());
}

#[test]
fn hom_space_examples() {
    let b = dual();
    let k = BModule::trivial(b.clone()).unwrap();
    let h = BModule::regular(b.clone());
    assert_eq!(hom_space(&k, &k).unwrap().len(), 1);
    let kh = hom_space(&k, &h).unwrap();
    assert_eq!(kh.len(), 1);
    assert_eq!(kh[0].matrix(), &FieldMatrix::from_i64_rows(&[&[0], &[1]]));
    assert!(hom_space(&h, &BModule::zero(b)).unwrap().is_empty());
    assert_eq!(hom_space(&h, &h).unwrap().len(), 2);
}

fn all_matrices(rows: usize, cols: usize) -> Vec<FieldMatrix<F2>> {
    (0..1u32 << (rows * cols))
        .map(|bits| FieldMatrix::from_fn(rows, cols, |i, j| F2::new((bits >> (i * cols + j)) & 1)))
        .collect()
}

#[test]
fn hom_dimensions_match_enumeration() {
    let b = dual();
    // Every k[d]/(d²)-module of dimension ≤ 2: all D with D² = 0.
    let mut modules = Vec::new();
    for n in 1..=2 {
        for d in all_matrices(n, n) {
            if d.matmul(&d).is_zero() {
                modules.push(dual_module(&b, d));
            }
        }
    }
    for m in &modules {
        for n in &modules {
            let count = all_matrices(n.dim(), m.dim())
                .into_iter()
                .filter(|x| x.matmul(m.action(1)) == n.action(1).matmul(x))
                .count();
            let dim = hom_space(m, n).unwrap().len();
            assert_eq!(1usize << dim, count);
            assert_eq!(hom_space_direct(m, n).unwrap().len(), dim);
        }
    }
}

#[test]
fn hom_space_agrees_with_direct_method_over_smash() {
    use crate::comod::{smash_product, ModuleAlgebra};
    use crate::hopf::Algebra;
    let h = hopf::<F2>(Builtin::TruncatedPoly { p: 2 });
    let alg = Algebra::from_basis_product(2, vec![F2::new(1), F2::new(0)], |i, j| {
        let mut v = vec![F2::new(0); 2];
        if i + j < 2 {
            v[i + j] = F2::new(1);
        }
        v
    })
    .unwrap();
    let act = FieldMatrix::from_i64_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 0]]);
    let a = Arc::new(ModuleAlgebra::new(alg, act, h).unwrap());
    let b = smash_product(&a).unwrap();
    let nat = BModule::natural(b.clone()).unwrap();
    assert!(nat.verify().passed());
    let reg = BModule::regular(b.clone());
    let th = tensor_h(&nat);
    assert!(th.verify().passed());
    for (m, n) in [(&nat, &reg), (&reg, &nat), (&th, &reg), (&reg, &th), (&th, &th), (&nat, &th)] {
        let fast = hom_space(m, n).unwrap();
        assert_eq!(fast.len(), hom_space_direct(m, n).unwrap().len());
        assert!(fast.iter().all(|f| f.verify().passed()));
    }
}

#[test]
fn sub_and_quotient_modules() {
    let b = dual();
    let h = BModule::regular(b.clone());
    let d = FieldMatrix::from_i64_rows(&[&[0], &[1]]);
    let (soc, inc) = submodule(&h, &d).unwrap();
    assert_eq!(soc.dim(), 1);
    assert!(inc.verify().passed());
    let (top, proj) = quotient(&h, &d).unwrap();
    assert_eq!(top, BModule::trivial(b.clone()).unwrap());
    assert!(proj.compose(&inc).unwrap().is_zero());
    let one = FieldMatrix::from_i64_rows(&[&[1], &[0]]);
    assert!(submodule(&h, &one).is_err());
    assert!(quotient(&h, &one).is_err());
    let (gen, _) = generated_submodule(&h, &one).unwrap();
    assert_eq!(gen.dim(), 2);
    let (ker, _) = kernel(&proj).unwrap();
    assert_eq!(ker.dim(), 1);
}

#[test]
fn lambda_is_natural() {
    let b = dual();
    let k = BModule::trivial(b.clone()).unwrap();
    let h = BModule::regular(b);
    for f in hom_space(&k, &h).unwrap().into_iter().chain(hom_space(&h, &k).unwrap()) {
        let lhs = f.tensor_h().compose(&lambda_map(f.source())).unwrap();
        let rhs = lambda_map(f.target()).compose(&f).unwrap();
        assert_eq!(lhs, rhs);
    }
}
