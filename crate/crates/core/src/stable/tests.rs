use super::*;
use crate::bmod::quotient;
use crate::comod::{regular_comodule, smash_product, ComoduleAlgebra, ModuleAlgebra};
use crate::hopf::{builtin, Algebra, Builtin};
use crate::scalar::Fp;
use std::sync::Arc;

type F2 = Fp<2>;
type F3 = Fp<3>;
type F5 = Fp<5>;

fn base<F: Scalar>(b: Builtin) -> Arc<ComoduleAlgebra<F>> {
    regular_comodule(&Arc::new(builtin(&b).unwrap()))
}

fn dual() -> Arc<ComoduleAlgebra<F2>> {
    base(Builtin::TruncatedPoly { p: 2 })
}

/// `k[x]/(x²) # k[d]/(d²)` over GF(2) with `d · x = 1`.
fn smash_example() -> Arc<ComoduleAlgebra<F2>> {
    let h = Arc::new(builtin::<F2>(&Builtin::TruncatedPoly { p: 2 }).unwrap());
    let alg = Algebra::from_basis_product(2, vec![F2::new(1), F2::new(0)], |i, j| {
        let mut v = vec![F2::new(0); 2];
        if i + j < 2 {
            v[i + j] = F2::new(1);
        }
        v
    })
    .unwrap();
    let act = FieldMatrix::from_i64_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 0]]);
    smash_product(&Arc::new(ModuleAlgebra::new(alg, act, h).unwrap())).unwrap()
}

#[test]
fn stable_endomorphisms_over_dual_numbers() {
    let b = dual();
    let k = BModule::trivial(b.clone()).unwrap();
    let h = BModule::regular(b);
    assert_eq!(stable_hom(&k, &k).unwrap().dim(), 1);
    assert_eq!(stable_hom(&h, &h).unwrap().dim(), 0);
    assert_eq!(stable_hom(&h, &k).unwrap().dim(), 0);
    assert!(is_stably_zero(&h).unwrap().is_some());
    assert!(is_stably_zero(&k).unwrap().is_none());
    let w = is_stably_zero(&tensor_h(&k)).unwrap().unwrap();
    assert!(w.compose(&lambda_map(&tensor_h(&k))).unwrap().matrix().is_identity());
}

#[test]
fn semisimple_case_is_stably_trivial() {
    let b = base::<F3>(Builtin::Cyclic { n: 2 });
    let k = BModule::trivial(b.clone()).unwrap();
    let h = BModule::regular(b);
    for m in [&k, &h] {
        assert!(is_e_projective(m).unwrap());
        for n in [&k, &h] {
            assert_eq!(stable_hom(m, n).unwrap().dim(), 0);
        }
    }
}

#[test]
fn shifts_of_trivial_module() {
    let b = dual();
    let k = BModule::trivial(b.clone()).unwrap();
    let plus = shift_plus(&k).unwrap();
    assert_eq!(plus.module, k);
    let minus = shift_minus(&k).unwrap();
    assert_eq!(minus.module, k);
    assert!(stable_iso_test(&shift_unit(&k).unwrap()).unwrap());
    assert!(stable_iso_test(&shift_counit(&k).unwrap()).unwrap());
}

#[test]
fn cone_of_zero_map() {
    let b = dual();
    let k = BModule::trivial(b).unwrap();
    let z = ModuleMorphism::zero(&k, &k);
    let c = cone(&z).unwrap();
    assert_eq!(c.module.dim(), 2);
    assert!(!stable_iso_test(&z).unwrap());
    assert!(stable_iso_test(&ModuleMorphism::identity(&k)).unwrap());
    let (t, _) = cone_triangle(&z).unwrap();
    assert!(t.verify().unwrap().passed());
}

#[test]
fn lambda_sequence_is_a_conflation() {
    for b in [dual(), smash_example()] {
        let m = BModule::regular(b.clone());
        let plus = shift_plus(&m).unwrap();
        let c = is_conflation(&lambda_map(&m), &plus.map).unwrap().expect("conflation");
        assert!(c.verify().unwrap().passed());
        let s = c.section().unwrap();
        assert!(c.g.tensor_h().matrix().matmul(s.matrix()).is_identity());
        let back = Conflation::from_section(&c.f, &c.g, &s).unwrap();
        assert!(back.verify().unwrap().passed());
    }
}

#[test]
fn non_split_sequence_over_dual_numbers() {
    // 0 → k → H → k → 0 over k[d]/(d²), tensored with H = k[d]/(d²): it is
    // a conflation, since every sequence of H-modules splits after ⊗ H.
    let b = dual();
    let h = BModule::regular(b.clone());
    let d = FieldMatrix::from_i64_rows(&[&[0], &[1]]);
    let (_, inc) = submodule(&h, &d).unwrap();
    let (_, proj) = quotient(&h, &d).unwrap();
    let c = is_conflation(&inc, &proj).unwrap().expect("conflation");
    let ct = conflation_to_triangle(&c).unwrap();
    assert!(ct.triangle.verify().unwrap().passed());
    assert!(compare_triangle_routes(&ct).unwrap().passed());
    assert!(!is_null_homotopic(&ct.triangle.h).unwrap());
    // exact but not split in the other direction: wrong dimensions.
    assert!(is_conflation(&inc, &ModuleMorphism::zero(&h, &h)).unwrap().is_none());
}

#[test]
fn non_exact_pairs_and_split_sequences() {
    let b = smash_example();
    let nat = BModule::natural(b.clone()).unwrap();
    let sum = direct_sum(&nat, &nat).unwrap();
    // im f ≠ ker g
    assert!(is_conflation(&sum.inclusions[0], &sum.projections[0]).unwrap().is_none());
    assert!(is_conflation(&sum.inclusions[0], &rho_map(&nat)).is_err());
    let c = is_conflation(&sum.inclusions[0], &sum.projections[1]).unwrap().expect("split sequence");
    let ct = conflation_to_triangle(&c).unwrap();
    assert!(is_null_homotopic(&ct.triangle.h).unwrap());
    assert!(compare_triangle_routes(&ct).unwrap().passed());
}

#[test]
fn shift_dimensions() {
    let b = base::<F5>(Builtin::Trivial);
    let m = BModule::free(b, 3);
    assert!(shift_plus(&m).unwrap().module.is_zero());
    assert!(shift_minus(&m).unwrap().module.is_zero());
    let b = base::<F5>(Builtin::Sweedler);
    let h = BModule::regular(b.clone());
    let k = BModule::trivial(b).unwrap();
    let m = direct_sum(&h, &k).unwrap().module;
    assert_eq!(shift_plus(&m).unwrap().module.dim(), 15);
    assert_eq!(shift_minus(&m).unwrap().module.dim(), 15);
    let z = ModuleMorphism::zero(&k, &h);
    assert_eq!(cone(&z).unwrap().module.dim(), 3 + 4);
    assert!(stable_iso_test(&shift_unit(&k).unwrap()).unwrap());
    assert!(stable_iso_test(&shift_counit(&k).unwrap()).unwrap());
}

#[test]
fn transport_splitting_examples() {
    // H = k: the transported map is the given one.
    let b = base::<F5>(Builtin::Trivial);
    let m = BModule::free(b.clone(), 1);
    let n = BModule::free(b.clone(), 2);
    let sum = direct_sum(&m, &m).unwrap();
    assert_eq!(sum.module, n);
    let f = sum.inclusions[0].clone();
    let g = sum.projections[1].clone();
    let gamma = sum.inclusions[1].matrix().clone();
    let t = transport_splitting(&gamma, &f, &g, SplitDirection::Section).unwrap();
    assert_eq!(t.matrix(), &gamma);
    let beta = sum.projections[0].matrix().clone();
    let t = transport_splitting(&beta, &f, &g, SplitDirection::Retraction).unwrap();
    assert_eq!(t.matrix(), &beta);
    assert!(transport_splitting(&beta, &f, &g, SplitDirection::Section).is_err());
}

#[test]
fn transport_over_sweedler_and_smash() {
    // 0 → k → H → H/k → 0 over Sweedler's algebra: linear splitting of
    // vector spaces transported to a B-linear one.
    let b = base::<F5>(Builtin::Sweedler);
    let h = BModule::regular(b.clone());
    let lam = FieldMatrix::column_vector(b.hopf().integral().lambda.clone());
    let (_, inc) = submodule(&h, &lam).unwrap();
    let (_, proj) = quotient(&h, &lam).unwrap();
    let sec = right_inverse(proj.matrix()).unwrap();
    let t = transport_splitting(&sec, &inc, &proj, SplitDirection::Section).unwrap();
    assert!(t.verify().passed());
    let ret = left_inverse(inc.matrix()).unwrap();
    let t = transport_splitting(&ret, &inc, &proj, SplitDirection::Retraction).unwrap();
    assert!(t.verify().passed());

    // Over the smash product the splitting must be A-linear.
    let b = smash_example();
    let nat = BModule::natural(b.clone()).unwrap();
    let sum = direct_sum(&nat, &nat).unwrap();
    let g = sum.projections[1].clone();
    let f = sum.inclusions[0].clone();
    let t = transport_splitting(sum.inclusions[1].matrix(), &f, &g, SplitDirection::Section).unwrap();
    assert!(t.verify().passed());
    // The cone sequence of λ_A, split over A.
    let lam = lambda_map(&nat);
    let c = cone(&lam).unwrap();
    let (f, g) = (c.inflation.clone(), c.projection.clone());
    let a_section = a_linear_section(&g);
    let t = transport_splitting(&a_section, &f, &g, SplitDirection::Section).unwrap();
    assert!(g.tensor_h().matrix().matmul(t.matrix()).is_identity());
    // A-linear failure: twist the section by a non-A-linear map.
    let mut bad = sum.inclusions[1].matrix().clone();
    bad[(0, 0)] = F2::new(1);
    assert!(matches!(
        transport_splitting(&bad, &f, &g, SplitDirection::Section),
        Err(crate::Error::Contract(_))
    ));
}

/// A section of `g` that commutes with the `A ⊗ 1` action, by brute force
/// over the solution space of the linear constraints.
fn a_linear_section(g: &ModuleMorphism<F2>) -> FieldMatrix<F2> {
    let b = g.source().base().clone();
    let a = b.smash_factor().unwrap().clone();
    let (n, l) = (g.source(), g.target());
    let (dn, dl) = (n.dim(), l.dim());
    // Unknown s (dn × dl), row-major; equations g s = id and s a = a s.
    let mut rows: Vec<Vec<F2>> = Vec::new();
    let mut rhs: Vec<F2> = Vec::new();
    let idx = |i: usize, j: usize| i * dl + j;
    for i in 0..dl {
        for j in 0..dl {
            let mut r = vec![F2::new(0); dn * dl];
            for k in 0..dn {
                r[idx(k, j)] += g.matrix()[(i, k)];
            }
            rows.push(r);
            rhs.push(F2::new((i == j) as u32));
        }
    }
    for e in 0..a.dim() {
        let x = b.embed_module_algebra(&a.algebra().basis_vector(e)).unwrap();
        let (an, al) = (n.act_by(&x), l.act_by(&x));
        for i in 0..dn {
            for j in 0..dl {
                let mut r = vec![F2::new(0); dn * dl];
                for k in 0..dl {
                    r[idx(i, k)] += al[(k, j)];
                }
                for k in 0..dn {
                    r[idx(k, j)] -= an[(i, k)];
                }
                rows.push(r);
                rhs.push(F2::new(0));
            }
        }
    }
    let m = FieldMatrix::from_rows(rows);
    let sol = solve(&m, &FieldMatrix::column_vector(rhs)).unwrap().expect("A-split");
    FieldMatrix::from_vec(dn, dl, sol.to_vec())
}

#[test]
fn bockstein_long_exact_sequence() {
    let b = dual();
    let k = BModule::trivial(b.clone()).unwrap();
    let h = BModule::regular(b);
    let d = FieldMatrix::from_i64_rows(&[&[0], &[1]]);
    let (_, inc) = submodule(&h, &d).unwrap();
    let (_, proj) = quotient(&h, &d).unwrap();
    let c = is_conflation(&inc, &proj).unwrap().unwrap();
    let t = conflation_to_triangle(&c).unwrap().triangle;
    let r = long_exact_check(&t, &k, 5).unwrap();
    assert!(r.report.passed());
    assert_eq!(r.dims, vec![1, 0, 1, 1, 0, 1]);
    assert_eq!(r.ranks, vec![0, 0, 1, 0, 0]);
    let (t, _) = cone_triangle(&ModuleMorphism::identity(&k)).unwrap();
    assert!(long_exact_check(&t, &k, 5).unwrap().report.passed());
}

#[test]
fn long_exact_sequence_for_a_cone() {
    let b = dual();
    let k = BModule::trivial(b.clone()).unwrap();
    let h = BModule::regular(b);
    let (_, inc) = submodule(&h, &FieldMatrix::from_i64_rows(&[&[0], &[1]])).unwrap();
    for f in [ModuleMorphism::zero(&k, &k), inc] {
        let (t, _) = cone_triangle(&f).unwrap();
        for x in [&k, &h] {
            let r = long_exact_check(&t, x, 5).unwrap();
            assert!(r.report.passed(), "{}", r.report);
            assert_eq!(r.dims.len(), 6);
        }
    }
}

#[test]
fn frobenius_lift_and_extend() {
    let b = smash_example();
    let m = BModule::natural(b.clone()).unwrap();
    let (_, c) = syzygy_conflation(&m).unwrap();
    let z = BModule::regular(b.clone());
    let zh = tensor_h(&z);
    for u in hom_space(&zh, c.right()).unwrap() {
        let t = frobenius_lift(&c, &z, &u).unwrap();
        assert_eq!(c.g.compose(&t).unwrap(), u);
    }
    for v in hom_space(c.left(), &zh).unwrap() {
        let e = frobenius_extend(&c, &z, &v).unwrap();
        assert_eq!(e.compose(&c.f).unwrap(), v);
    }
}

fn all_matrices(rows: usize, cols: usize) -> Vec<FieldMatrix<F2>> {
    (0..1u32 << (rows * cols))
        .map(|bits| FieldMatrix::from_fn(rows, cols, |i, j| F2::new((bits >> (i * cols + j)) & 1)))
        .collect()
}

/// Stable hom over k[d]/(d²) counted by brute force: all module maps modulo
/// those that factor as `M → M ⊗ H → N` through an enumerated `g`.
#[test]
fn stable_hom_matches_enumeration() {
    let b = dual();
    let mut modules = Vec::new();
    for n in 1..=2 {
        for d in all_matrices(n, n) {
            if d.matmul(&d).is_zero() {
                modules.push(BModule::new(b.clone(), vec![FieldMatrix::identity(n), d]).unwrap());
            }
        }
    }
    let linear = |m: &BModule<F2>, n: &BModule<F2>, x: &FieldMatrix<F2>| x.matmul(m.action(1)) == n.action(1).matmul(x);
    for m in &modules {
        for n in &modules {
            let homs: Vec<_> = all_matrices(n.dim(), m.dim()).into_iter().filter(|x| linear(m, n, x)).collect();
            let mh = tensor_h(m);
            let lam = lambda_map(m);
            let mut null: Vec<FieldMatrix<F2>> = all_matrices(n.dim(), mh.dim())
                .into_iter()
                .filter(|g| linear(&mh, n, g))
                .map(|g| g.matmul(lam.matrix()))
                .collect();
            null.sort_by(|a, b| a.data().iter().map(|x| x.value()).cmp(b.data().iter().map(|x| x.value())));
            null.dedup();
            assert_eq!(homs.len() % null.len(), 0);
            let quotient_size = homs.len() / null.len();
            let dim = stable_hom(m, n).unwrap().dim();
            assert_eq!(1usize << dim, quotient_size);
        }
    }
}

#[test]
fn stripping_free_summands_preserves_stable_type() {
    type F5 = Fp<5>;
    let b = base::<F5>(Builtin::Sweedler);
    let k = BModule::trivial(b.clone()).unwrap();
    let h = BModule::regular(b.clone());
    let kh = tensor_h(&k);
    for m in [direct_sum(&k, &h).unwrap().module, direct_sum(&h, &kh).unwrap().module, shift_plus(&k).unwrap().module] {
        let stripped = strip_free_summands(&m).unwrap();
        assert_eq!((m.dim() - stripped.dim()) % 4, 0);
        assert_eq!(is_stably_zero(&m).unwrap().is_some(), is_stably_zero(&stripped).unwrap().is_some());
    }
    assert_eq!(strip_free_summands(&direct_sum(&k, &h).unwrap().module).unwrap().dim(), 1);
}

#[test]
fn untwisted_retraction_agrees_with_hom_solve() {
    let b = base::<Fp<3>>(Builtin::TruncatedPoly { p: 3 });
    let h = BModule::regular(b.clone());
    let k = BModule::trivial(b.clone()).unwrap();
    for m in [k.clone(), h.clone(), direct_sum(&k, &h).unwrap().module] {
        let (shift, c) = syzygy_conflation(&m).unwrap();
        let fast = is_conflation(&c.f, &c.g).unwrap().expect("conflation");
        assert!(fast.verify().unwrap().passed());
        assert!(solved_retraction(&shift.map.tensor_h()).unwrap().is_some());
        let lam = lambda_sequence(&m).unwrap();
        assert!(is_conflation(&lam.f, &lam.g).unwrap().unwrap().verify().unwrap().passed());
    }
}
