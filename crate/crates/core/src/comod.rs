//! Right `H`-comodule algebras, left `H`-module algebras and smash products.

use std::sync::Arc;

use crate::error::{contract, structural, Result};
use crate::exactlin::{rank, FieldMatrix};
use crate::hopf::{tensor_algebra_product, Algebra, HopfAlgebra};
use crate::report::VerificationReport;
use crate::scalar::Scalar;

/// An algebra `B` with a coaction `Δ_B : B → B ⊗ H`, stored as a
/// `(dim B · dim H) × dim B` matrix in the lexicographic tensor basis.
#[derive(Clone, Debug)]
pub struct ComoduleAlgebra<F> {
    algebra: Algebra<F>,
    coaction: FieldMatrix<F>,
    hopf: Arc<HopfAlgebra<F>>,
    generators: Vec<usize>,
    smash: Option<Arc<ModuleAlgebra<F>>>,
}

impl<F: Scalar> PartialEq for ComoduleAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.algebra == other.algebra
                && self.coaction == other.coaction
                && (Arc::ptr_eq(&self.hopf, &other.hopf) || self.hopf == other.hopf))
    }
}

impl<F: Scalar> Eq for ComoduleAlgebra<F> {}

impl<F: Scalar> ComoduleAlgebra<F> {
    /// Checks shapes; the axioms are checked by [`verify_comodule_algebra`].
    pub fn new(algebra: Algebra<F>, coaction: FieldMatrix<F>, hopf: Arc<HopfAlgebra<F>>) -> Result<Self> {
        let (b, h) = (algebra.dim(), hopf.dim());
        if coaction.shape() != (b * h, b) {
            return Err(contract!(
                "coaction of a {b}-dimensional algebra over a {h}-dimensional Hopf algebra must be {}×{b}, got {}×{}",
                b * h,
                coaction.rows(),
                coaction.cols()
            ));
        }
        let generators = algebra.generators();
        Ok(ComoduleAlgebra { algebra, coaction, hopf, generators, smash: None })
    }

    /// Like [`ComoduleAlgebra::new`], but fails unless every axiom holds.
    pub fn validated(algebra: Algebra<F>, coaction: FieldMatrix<F>, hopf: Arc<HopfAlgebra<F>>) -> Result<Self> {
        let b = Self::new(algebra, coaction, hopf)?;
        let report = verify_comodule_algebra(&b);
        if !report.passed() {
            return Err(structural!("comodule algebra axioms fail: {}", report.failure_summary()));
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &Algebra<F> {
        &self.algebra
    }

    pub fn coaction(&self) -> &FieldMatrix<F> {
        &self.coaction
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra<F>> {
        &self.hopf
    }

    /// Basis indices generating `B` as an algebra.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// The module algebra `A` when `B = A # H`.
    pub fn smash_factor(&self) -> Option<&Arc<ModuleAlgebra<F>>> {
        self.smash.as_ref()
    }

    /// Whether this is `H` itself with `Δ_B = Δ`.
    pub fn is_regular(&self) -> bool {
        self.algebra == *self.hopf.algebra() && self.coaction == *self.hopf.comult()
    }

    /// Nonzero terms `(k, l, c)` of `Δ_B(b_j) = Σ c b_k ⊗ h_l`.
    pub fn coaction_terms(&self, j: usize) -> Vec<(usize, usize, F)> {
        let h = self.hopf.dim();
        self.coaction
            .column(j)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (idx / h, idx % h, c))
            .collect()
    }

    /// For `B = A # H`, the element `1_A ⊗ h` of `B`.
    pub fn embed_hopf(&self, h: &[F]) -> Option<Vec<F>> {
        let a = self.smash.as_ref()?;
        Some(FieldMatrix::column_vector(a.algebra().unit().to_vec()).kron(&FieldMatrix::column_vector(h.to_vec())).to_vec())
    }

    /// For `B = A # H`, the element `x ⊗ 1_H` of `B`.
    pub fn embed_module_algebra(&self, x: &[F]) -> Option<Vec<F>> {
        self.smash.as_ref()?;
        let unit = self.hopf.algebra().unit().to_vec();
        Some(FieldMatrix::column_vector(x.to_vec()).kron(&FieldMatrix::column_vector(unit)).to_vec())
    }
}

/// `H` as a comodule algebra over itself.
pub fn regular_comodule<F: Scalar>(h: &Arc<HopfAlgebra<F>>) -> Arc<ComoduleAlgebra<F>> {
    let b = ComoduleAlgebra::new(h.algebra().clone(), h.comult().clone(), h.clone())
        .expect("Δ has the shape of a coaction");
    Arc::new(b)
}

/// Checks the comodule algebra axioms as matrix identities.
pub fn verify_comodule_algebra<F: Scalar>(b: &ComoduleAlgebra<F>) -> VerificationReport {
    let h = b.hopf();
    let n = b.dim();
    let ib = FieldMatrix::identity(n);
    let ih = FieldMatrix::identity(h.dim());
    let delta_b = b.coaction();
    let mut report = b.algebra().verify();

    report.compare("coaction_counit", &ib.kron(h.counit()).matmul(delta_b), &ib);
    let lhs = ib.kron(h.comult()).matmul(delta_b);
    let rhs = delta_b.kron(&ih).matmul(delta_b);
    report.compare("coaction_coassociative", &lhs, &rhs);

    let unit_unit = b.algebra().unit_column().kron(&h.algebra().unit_column());
    report.compare("coaction_unital", &delta_b.matmul(&b.algebra().unit_column()), &unit_unit);

    let mut witness = None;
    'outer: for i in 0..n {
        let di = delta_b.column(i);
        for j in 0..n {
            let lhs = delta_b.apply(&b.algebra().basis_product(i, j));
            let rhs = tensor_algebra_product(b.algebra(), h.algebra(), &di, &delta_b.column(j));
            if lhs != rhs {
                witness = Some(i * n + j);
                break 'outer;
            }
        }
    }
    report.push("coaction_multiplicative", witness.is_none(), witness);
    report
}

/// An algebra `A` with a left `H`-action `H ⊗ A → A`, stored as a
/// `dim A × (dim H · dim A)` matrix: column `h * dim A + x` is `e_h · e_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAlgebra<F> {
    algebra: Algebra<F>,
    h_action: FieldMatrix<F>,
    hopf: Arc<HopfAlgebra<F>>,
}

impl<F: Scalar> ModuleAlgebra<F> {
    pub fn new(algebra: Algebra<F>, h_action: FieldMatrix<F>, hopf: Arc<HopfAlgebra<F>>) -> Result<Self> {
        let (a, h) = (algebra.dim(), hopf.dim());
        if h_action.shape() != (a, h * a) {
            return Err(contract!(
                "action of a {h}-dimensional Hopf algebra on a {a}-dimensional algebra must be {a}×{}, got {}×{}",
                h * a,
                h_action.rows(),
                h_action.cols()
            ));
        }
        Ok(ModuleAlgebra { algebra, h_action, hopf })
    }

    /// `A = k` with `h · 1 = ε(h)`.
    pub fn trivial(hopf: Arc<HopfAlgebra<F>>) -> Self {
        let h_action = hopf.counit().clone();
        ModuleAlgebra { algebra: Algebra::ground_field(), h_action, hopf }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &Algebra<F> {
        &self.algebra
    }

    pub fn h_action(&self) -> &FieldMatrix<F> {
        &self.h_action
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra<F>> {
        &self.hopf
    }

    /// The matrix of `x ↦ e_h · x`.
    pub fn action_matrix(&self, h: usize) -> FieldMatrix<F> {
        let a = self.dim();
        self.h_action.block(0, h * a, a, a)
    }

    pub fn act(&self, h: usize, x: &[F]) -> Vec<F> {
        self.action_matrix(h).apply(x)
    }
}

/// Checks that `A` is a left `H`-module and that the action measures the
/// product and fixes the unit up to `ε`.
pub fn verify_module_algebra<F: Scalar>(a: &ModuleAlgebra<F>) -> VerificationReport {
    let h = a.hopf();
    let (na, nh) = (a.dim(), h.dim());
    let mut report = a.algebra().verify();
    let act: Vec<FieldMatrix<F>> = (0..nh).map(|i| a.action_matrix(i)).collect();
    let act_by = |x: &[F]| {
        let mut m = FieldMatrix::zeros(na, na);
        for (i, c) in x.iter().enumerate() {
            m.add_scaled(c, &act[i]);
        }
        m
    };

    report.compare("module_unit", &act_by(h.algebra().unit()), &FieldMatrix::identity(na));

    let mut witness = None;
    'assoc: for i in 0..nh {
        for j in 0..nh {
            let lhs = act_by(&h.algebra().basis_product(i, j));
            if lhs != act[i].matmul(&act[j]) {
                witness = Some(i * nh + j);
                break 'assoc;
            }
        }
    }
    report.push("module_associativity", witness.is_none(), witness);

    // h · (xy) = Σ (h₁ · x)(h₂ · y), witnessed at index (h * dim A + x) * dim A + y.
    let mut witness = None;
    'measure: for hi in 0..nh {
        let terms = h.coproduct_terms(hi);
        for x in 0..na {
            for y in 0..na {
                let lhs = act[hi].apply(&a.algebra().basis_product(x, y));
                let mut rhs = vec![F::zero(); na];
                for (p, q, c) in &terms {
                    let prod = a.algebra().multiply(&act[*p].column(x), &act[*q].column(y));
                    for (r, v) in rhs.iter_mut().zip(prod) {
                        *r += c.clone() * v;
                    }
                }
                if lhs != rhs {
                    witness = Some((hi * na + x) * na + y);
                    break 'measure;
                }
            }
        }
    }
    report.push("measuring", witness.is_none(), witness);

    let unit = a.algebra().unit_column();
    let lhs = FieldMatrix::hstack(na, &act.iter().map(|m| m.matmul(&unit)).collect::<Vec<_>>().iter().collect::<Vec<_>>());
    report.compare("unit_invariant", &lhs, &unit.matmul(h.counit()));
    report
}

/// The smash product `A # H` on `A ⊗ H` (basis `a_i ⊗ h_j` at `i * dim H + j`)
/// with `(x ⊗ h)(y ⊗ k) = Σ x(h₁ · y) ⊗ h₂k` and coaction `id_A ⊗ Δ`.
pub fn smash_product<F: Scalar>(a: &Arc<ModuleAlgebra<F>>) -> Result<Arc<ComoduleAlgebra<F>>> {
    let report = verify_module_algebra(a);
    if !report.passed() {
        return Err(structural!("not a module algebra: {}", report.failure_summary()));
    }
    let hopf = a.hopf().clone();
    let (na, nh) = (a.dim(), hopf.dim());
    let n = na * nh;
    let act: Vec<FieldMatrix<F>> = (0..nh).map(|i| a.action_matrix(i)).collect();
    let unit = FieldMatrix::column_vector(a.algebra().unit().to_vec())
        .kron(&hopf.algebra().unit_column())
        .to_vec();
    let algebra = Algebra::from_basis_product(n, unit, |left, right| {
        let (x, h) = (left / nh, left % nh);
        let (y, k) = (right / nh, right % nh);
        let mut out = vec![F::zero(); n];
        for (p, q, c) in hopf.coproduct_terms(h) {
            let xy = a.algebra().multiply(&a.algebra().basis_vector(x), &act[p].column(y));
            let hk = hopf.algebra().basis_product(q, k);
            for (s, u) in xy.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
                for (t, w) in hk.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
                    out[s * nh + t] += c.clone() * u.clone() * w.clone();
                }
            }
        }
        out
    })?;
    let coaction = FieldMatrix::identity(na).kron(hopf.comult());
    let mut b = ComoduleAlgebra::new(algebra, coaction, hopf)?;
    b.smash = Some(a.clone());
    Ok(Arc::new(b))
}

/// `Δ_B` is injective, since `(id ⊗ ε)Δ_B = id`.
pub fn coaction_is_injective<F: Scalar>(b: &ComoduleAlgebra<F>) -> bool {
    rank(b.coaction()) == b.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{builtin, Builtin};
    use crate::scalar::Fp;

    type F2 = Fp<2>;

    fn dual() -> Arc<HopfAlgebra<F2>> {
        Arc::new(builtin(&Builtin::TruncatedPoly { p: 2 }).unwrap())
    }

    /// `A = k[x]/(x²)` with `d · x = 1`, `d · 1 = 0`.
    fn exterior(h: &Arc<HopfAlgebra<F2>>, dx: [u32; 2], d1: [u32; 2]) -> ModuleAlgebra<F2> {
        let alg = Algebra::from_basis_product(2, vec![F2::new(1), F2::new(0)], |i, j| {
            let mut v = vec![F2::new(0); 2];
            if i + j < 2 {
                v[i + j] = F2::new(1);
            }
            v
        })
        .unwrap();
        // columns: 1·1, 1·x, d·1, d·x
        let act = FieldMatrix::from_columns(
            2,
            &[
                vec![F2::new(1), F2::new(0)],
                vec![F2::new(0), F2::new(1)],
                d1.map(F2::new).to_vec(),
                dx.map(F2::new).to_vec(),
            ],
        );
        ModuleAlgebra::new(alg, act, h.clone()).unwrap()
    }

    #[test]
    fn regular_comodules_verify() {
        let h = dual();
        let b = regular_comodule(&h);
        assert!(verify_comodule_algebra(&b).passed());
        assert!(b.is_regular());
        assert!(coaction_is_injective(&b));
        let t = Arc::new(builtin::<Fp<5>>(&Builtin::Trivial).unwrap());
        assert_eq!(regular_comodule(&t).dim(), 1);
        let s = Arc::new(builtin::<Fp<5>>(&Builtin::Sweedler).unwrap());
        let b = regular_comodule(&s);
        assert_eq!(b.dim(), 4);
        assert!(verify_comodule_algebra(&b).passed());
    }

    #[test]
    fn corrupt_unit_coaction_fails() {
        let h = dual();
        let mut coaction = h.comult().clone();
        coaction[(0, 0)] = F2::new(0);
        coaction[(1, 0)] = F2::new(1);
        let b = ComoduleAlgebra::new(h.algebra().clone(), coaction, h.clone()).unwrap();
        let r = verify_comodule_algebra(&b);
        assert!(!r.check("coaction_unital").unwrap().passed);
        assert!(ComoduleAlgebra::validated(h.algebra().clone(), FieldMatrix::zeros(4, 2), h.clone()).is_err());
        assert!(ComoduleAlgebra::new(h.algebra().clone(), FieldMatrix::zeros(3, 2), h).is_err());
    }

    #[test]
    fn module_algebra_examples() {
        let h = dual();
        assert!(verify_module_algebra(&exterior(&h, [1, 0], [0, 0])).passed());
        assert!(verify_module_algebra(&ModuleAlgebra::trivial(h.clone())).passed());
        let bad = verify_module_algebra(&exterior(&h, [1, 0], [1, 0]));
        assert!(!bad.check("unit_invariant").unwrap().passed);
        assert!(smash_product(&Arc::new(exterior(&h, [1, 0], [1, 0]))).is_err());
    }

    #[test]
    fn smash_product_of_exterior_algebra() {
        let h = dual();
        let b = smash_product(&Arc::new(exterior(&h, [1, 0], [0, 0]))).unwrap();
        assert_eq!(b.dim(), 4);
        assert!(verify_comodule_algebra(&b).passed());
        // basis: 1⊗1, 1⊗d, x⊗1, x⊗d
        let e = |i: usize| b.algebra().basis_vector(i);
        assert_eq!(b.algebra().multiply(&e(2), &e(1)), e(3));
        let mut expected = e(3);
        expected[0] = F2::new(1);
        assert_eq!(b.algebra().multiply(&e(1), &e(2)), expected);
    }

    #[test]
    fn smash_with_ground_field_is_h() {
        let h = dual();
        let b = smash_product(&Arc::new(ModuleAlgebra::trivial(h.clone()))).unwrap();
        assert_eq!(b.algebra(), h.algebra());
        assert_eq!(b.coaction(), h.comult());
    }
}
