//! Finite-dimensional `B`-modules and their morphisms.
//!
//! A module stores one action matrix per basis element of `B`. `H`-modules
//! are modules over [`regular_comodule`], so one type serves both roles.

use std::fmt;
use std::sync::Arc;

use crate::comod::{regular_comodule, ComoduleAlgebra};
use crate::error::{contract, internal, structural, Result};
use crate::exactlin::{
    cokernel, column_space, invariant_closure, inverse, nullspace, right_inverse, rref, solve, FieldMatrix,
    IncrementalSpan,
};
use crate::hopf::HopfAlgebra;
use crate::report::VerificationReport;
use crate::scalar::Scalar;

#[derive(Clone)]
pub struct BModule<F> {
    base: Arc<ComoduleAlgebra<F>>,
    dim: usize,
    action: Arc<Vec<FieldMatrix<F>>>,
}

impl<F: Scalar> fmt::Debug for BModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BModule").field("dim", &self.dim).field("base_dim", &self.base.dim()).finish()
    }
}

impl<F: Scalar> PartialEq for BModule<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && same_base(&self.base, &other.base)
            && (Arc::ptr_eq(&self.action, &other.action) || self.action == other.action)
    }
}

impl<F: Scalar> Eq for BModule<F> {}

pub(crate) fn same_base<F: Scalar>(a: &Arc<ComoduleAlgebra<F>>, b: &Arc<ComoduleAlgebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_same_base<F: Scalar>(a: &BModule<F>, b: &BModule<F>) -> Result<()> {
    if same_base(&a.base, &b.base) {
        Ok(())
    } else {
        Err(contract!("modules live over different algebras"))
    }
}

impl<F: Scalar> BModule<F> {
    /// Validates shapes (contract) and the module axioms (structural).
    pub fn new(base: Arc<ComoduleAlgebra<F>>, action: Vec<FieldMatrix<F>>) -> Result<Self> {
        let m = Self::unverified(base, action)?;
        let report = m.verify();
        if !report.passed() {
            return Err(structural!("module axioms fail: {}", report.failure_summary()));
        }
        Ok(m)
    }

    /// Checks shapes only; [`BModule::verify`] reports on the axioms.
    pub fn unverified(base: Arc<ComoduleAlgebra<F>>, action: Vec<FieldMatrix<F>>) -> Result<Self> {
        if action.len() != base.dim() {
            return Err(contract!("expected {} action matrices, got {}", base.dim(), action.len()));
        }
        let dim = action.first().map_or(0, FieldMatrix::rows);
        if let Some(i) = action.iter().position(|m| m.shape() != (dim, dim)) {
            return Err(contract!("action matrix {i} is not {dim}×{dim}"));
        }
        Ok(Self::from_parts(base, action))
    }

    /// No validation; for constructions that are correct by design.
    pub(crate) fn from_parts(base: Arc<ComoduleAlgebra<F>>, action: Vec<FieldMatrix<F>>) -> Self {
        let dim = action.first().map_or(0, FieldMatrix::rows);
        BModule { base, dim, action: Arc::new(action) }
    }

    pub fn zero(base: Arc<ComoduleAlgebra<F>>) -> Self {
        let action = vec![FieldMatrix::zeros(0, 0); base.dim()];
        Self::from_parts(base, action)
    }

    /// `B` acting on itself by left multiplication.
    pub fn regular(base: Arc<ComoduleAlgebra<F>>) -> Self {
        let action = (0..base.dim()).map(|i| base.algebra().left_mult(i)).collect();
        Self::from_parts(base, action)
    }

    /// The free module `B^r`.
    pub fn free(base: Arc<ComoduleAlgebra<F>>, rank: usize) -> Self {
        let action = (0..base.dim())
            .map(|i| FieldMatrix::identity(rank).kron(&base.algebra().left_mult(i)))
            .collect();
        Self::from_parts(base, action)
    }

    /// `k^dim` with `h` acting by `ε(h)`; only for `B = H`.
    pub fn trivial_action(base: Arc<ComoduleAlgebra<F>>, dim: usize) -> Result<Self> {
        if !base.is_regular() {
            return Err(contract!("the trivial action needs B = H"));
        }
        let eps = base.hopf().counit().clone();
        let action = (0..base.dim()).map(|i| FieldMatrix::identity(dim).scale(&eps[(0, i)])).collect();
        Ok(Self::from_parts(base, action))
    }

    /// The ground field `k` as an `H`-module.
    pub fn trivial(base: Arc<ComoduleAlgebra<F>>) -> Result<Self> {
        Self::trivial_action(base, 1)
    }

    /// For `B = A # H`, the module `A` with `(x ⊗ h) · y = x(h · y)`.
    pub fn natural(base: Arc<ComoduleAlgebra<F>>) -> Result<Self> {
        let Some(a) = base.smash_factor().cloned() else {
            return Err(contract!("the natural module needs a smash product"));
        };
        let nh = base.hopf().dim();
        let action = (0..base.dim())
            .map(|i| a.algebra().left_mult(i / nh).matmul(&a.action_matrix(i % nh)))
            .collect();
        Ok(Self::from_parts(base, action))
    }

    pub fn base(&self) -> &Arc<ComoduleAlgebra<F>> {
        &self.base
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra<F>> {
        self.base.hopf()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// `ρ(b_i)`.
    pub fn action(&self, i: usize) -> &FieldMatrix<F> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[FieldMatrix<F>] {
        &self.action
    }

    /// `ρ(x)` for an arbitrary element `x` of `B`.
    pub fn act_by(&self, x: &[F]) -> FieldMatrix<F> {
        let mut out = FieldMatrix::zeros(self.dim, self.dim);
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out.add_scaled(c, &self.action[i]);
        }
        out
    }

    /// Action matrices of the algebra generators of `B`.
    pub fn generator_actions(&self) -> Vec<&FieldMatrix<F>> {
        self.base.generators().iter().map(|&i| &self.action[i]).collect()
    }

    pub fn verify(&self) -> VerificationReport {
        let alg = self.base.algebra();
        let n = alg.dim();
        let mut report = VerificationReport::new();
        report.compare("action_unit", &self.act_by(alg.unit()), &FieldMatrix::identity(self.dim));
        let mut witness = None;
        'outer: for i in 0..n {
            for j in 0..n {
                if self.action[i].matmul(&self.action[j]) != self.act_by(&alg.basis_product(i, j)) {
                    witness = Some(i * n + j);
                    break 'outer;
                }
            }
        }
        report.push("action_multiplicative", witness.is_none(), witness);
        report
    }

    fn require_hmodule(&self) -> Result<()> {
        if self.base.is_regular() {
            Ok(())
        } else {
            Err(contract!("expected an H-module (a module over H itself)"))
        }
    }
}

/// A `B`-linear map, stored as a `dim target × dim source` matrix.
#[derive(Clone)]
pub struct ModuleMorphism<F> {
    source: BModule<F>,
    target: BModule<F>,
    matrix: FieldMatrix<F>,
}

impl<F: Scalar> fmt::Debug for ModuleMorphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleMorphism")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("matrix", &self.matrix)
            .finish()
    }
}

impl<F: Scalar> PartialEq for ModuleMorphism<F> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.source == other.source && self.target == other.target
    }
}

impl<F: Scalar> Eq for ModuleMorphism<F> {}

impl<F: Scalar> ModuleMorphism<F> {
    /// Validates shape and base (contract) and `B`-linearity (structural).
    /// Linearity is tested on algebra generators of `B`, which suffices.
    pub fn new(source: BModule<F>, target: BModule<F>, matrix: FieldMatrix<F>) -> Result<Self> {
        let f = Self::unverified(source, target, matrix)?;
        if let Some(g) = f.intertwining_failure() {
            return Err(structural!("map is not B-linear (fails on basis element {g})"));
        }
        Ok(f)
    }

    /// Checks shape and base only; [`ModuleMorphism::verify`] reports on
    /// linearity.
    pub fn unverified(source: BModule<F>, target: BModule<F>, matrix: FieldMatrix<F>) -> Result<Self> {
        check_same_base(&source, &target)?;
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(contract!(
                "a map from a {}-dimensional to a {}-dimensional module must be {}×{}, got {}×{}",
                source.dim(),
                target.dim(),
                target.dim(),
                source.dim(),
                matrix.rows(),
                matrix.cols()
            ));
        }
        Ok(ModuleMorphism { source, target, matrix })
    }

    pub(crate) fn from_parts(source: BModule<F>, target: BModule<F>, matrix: FieldMatrix<F>) -> Self {
        debug_assert_eq!(matrix.shape(), (target.dim(), source.dim()));
        ModuleMorphism { source, target, matrix }
    }

    /// Like [`ModuleMorphism::new`] for maps that are linear by construction;
    /// a failure here is a bug.
    pub(crate) fn checked(source: BModule<F>, target: BModule<F>, matrix: FieldMatrix<F>, what: &str) -> Result<Self> {
        Self::new(source, target, matrix).map_err(|e| internal!("{what}: {e}"))
    }

    fn intertwining_failure(&self) -> Option<usize> {
        self.source.base.generators().iter().copied().find(|&g| {
            self.matrix.matmul(self.source.action(g)) != self.target.action(g).matmul(&self.matrix)
        })
    }

    /// Checks `f ρ(b) = ρ(b) f` on every basis element of `B`.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let bad = (0..self.source.base.dim())
            .find(|&b| self.matrix.matmul(self.source.action(b)) != self.target.action(b).matmul(&self.matrix));
        report.push("intertwining", bad.is_none(), bad);
        report
    }

    pub fn identity(m: &BModule<F>) -> Self {
        Self::from_parts(m.clone(), m.clone(), FieldMatrix::identity(m.dim()))
    }

    pub fn zero(source: &BModule<F>, target: &BModule<F>) -> Self {
        Self::from_parts(source.clone(), target.clone(), FieldMatrix::zeros(target.dim(), source.dim()))
    }

    pub fn source(&self) -> &BModule<F> {
        &self.source
    }

    pub fn target(&self) -> &BModule<F> {
        &self.target
    }

    pub fn matrix(&self) -> &FieldMatrix<F> {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMorphism<F>) -> Result<Self> {
        if inner.target != self.source {
            return Err(contract!("composition of non-composable maps"));
        }
        Ok(Self::from_parts(inner.source.clone(), self.target.clone(), self.matrix.matmul(&inner.matrix)))
    }

    fn check_parallel(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(contract!("maps have different sources or targets"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        Ok(Self::from_parts(self.source.clone(), self.target.clone(), &self.matrix + &other.matrix))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        Ok(Self::from_parts(self.source.clone(), self.target.clone(), &self.matrix - &other.matrix))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_parts(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    /// Linear combination `Σ c_i f_i` of parallel maps.
    pub fn combination(source: &BModule<F>, target: &BModule<F>, terms: &[(F, &ModuleMorphism<F>)]) -> Self {
        let mut m = FieldMatrix::zeros(target.dim(), source.dim());
        for (c, f) in terms {
            m.add_scaled(c, &f.matrix);
        }
        Self::from_parts(source.clone(), target.clone(), m)
    }

    /// `f ⊗ id_H : M ⊗ H → N ⊗ H`.
    pub fn tensor_h(&self) -> Self {
        let h = hmodule_regular(self.source.hopf());
        tensor_morphisms(self, &ModuleMorphism::identity(&h)).expect("H is an H-module")
    }
}

/// The regular `H`-module `H`.
pub fn hmodule_regular<F: Scalar>(h: &Arc<HopfAlgebra<F>>) -> BModule<F> {
    BModule::regular(regular_comodule(h))
}

/// `M ⊗ U` with `b · (x ⊗ u) = Σ b₀x ⊗ b₁u` through the coaction.
pub fn tensor_with_hmodule<F: Scalar>(m: &BModule<F>, u: &BModule<F>) -> Result<BModule<F>> {
    u.require_hmodule()?;
    if !(Arc::ptr_eq(m.hopf(), u.hopf()) || m.hopf() == u.hopf()) {
        return Err(contract!("the H-module lives over a different Hopf algebra"));
    }
    let base = m.base.clone();
    let action = (0..base.dim())
        .map(|j| {
            let mut out = FieldMatrix::zeros(m.dim() * u.dim(), m.dim() * u.dim());
            for (k, l, c) in base.coaction_terms(j) {
                out.add_scaled(&c, &m.action(k).kron(u.action(l)));
            }
            out
        })
        .collect();
    Ok(BModule::from_parts(base, action))
}

/// `M ⊗ H`.
pub fn tensor_h<F: Scalar>(m: &BModule<F>) -> BModule<F> {
    tensor_with_hmodule(m, &hmodule_regular(m.hopf())).expect("H is an H-module")
}

/// `f ⊗ g : M ⊗ U → M' ⊗ U'` for a `B`-map `f` and an `H`-map `g`.
pub fn tensor_morphisms<F: Scalar>(f: &ModuleMorphism<F>, g: &ModuleMorphism<F>) -> Result<ModuleMorphism<F>> {
    let source = tensor_with_hmodule(&f.source, &g.source)?;
    let target = tensor_with_hmodule(&f.target, &g.target)?;
    Ok(ModuleMorphism::from_parts(source, target, f.matrix.kron(&g.matrix)))
}

/// `λ_M : M → M ⊗ H`, `x ↦ x ⊗ Λ`.
pub fn lambda_map<F: Scalar>(m: &BModule<F>) -> ModuleMorphism<F> {
    let lambda = FieldMatrix::column_vector(m.hopf().integral().lambda.clone());
    ModuleMorphism::from_parts(m.clone(), tensor_h(m), FieldMatrix::identity(m.dim()).kron(&lambda))
}

/// `ρ_M : M ⊗ H → M`, `x ⊗ h ↦ ε(h)x`.
pub fn rho_map<F: Scalar>(m: &BModule<F>) -> ModuleMorphism<F> {
    ModuleMorphism::from_parts(tensor_h(m), m.clone(), FieldMatrix::identity(m.dim()).kron(m.hopf().counit()))
}

/// `σ_M : M ⊗ H → M ⊗ H ⊗ H`, `x ⊗ h ↦ Σ x ⊗ h₁ ⊗ h₂`. It is `B`-linear and
/// a section of both `ρ_{M ⊗ H}` and `ρ_M ⊗ id_H`.
pub fn comult_section<F: Scalar>(m: &BModule<F>) -> ModuleMorphism<F> {
    let mh = tensor_h(m);
    ModuleMorphism::from_parts(mh.clone(), tensor_h(&mh), FieldMatrix::identity(m.dim()).kron(m.hopf().comult()))
}

/// A pair of mutually inverse isomorphisms.
#[derive(Clone)]
pub struct IsoPair<F> {
    pub forward: ModuleMorphism<F>,
    pub backward: ModuleMorphism<F>,
}

/// `M ⊗ H ≅ M₀ ⊗ H` with `φ(m ⊗ h) = Σ S⁻¹(h₁)m ⊗ h₂` and
/// `ψ(m ⊗ h) = Σ h₁m ⊗ h₂`.
pub fn untwist_right<F: Scalar>(m: &BModule<F>) -> Result<IsoPair<F>> {
    m.require_hmodule()?;
    let h = m.hopf().clone();
    let (nm, nh) = (m.dim(), h.dim());
    let m0 = BModule::trivial_action(m.base.clone(), nm)?;
    let (src, tgt) = (tensor_h(m), tensor_h(&m0));
    let sinv: Vec<FieldMatrix<F>> = (0..nh).map(|p| m.act_by(&h.antipode_inverse().column(p))).collect();
    let mut phi = FieldMatrix::zeros(nm * nh, nm * nh);
    let mut psi = FieldMatrix::zeros(nm * nh, nm * nh);
    for j in 0..nh {
        for (p, q, c) in h.coproduct_terms(j) {
            for a in 0..nm {
                for b in 0..nm {
                    phi[(b * nh + q, a * nh + j)] += c.clone() * sinv[p][(b, a)].clone();
                    psi[(b * nh + q, a * nh + j)] += c.clone() * m.action(p)[(b, a)].clone();
                }
            }
        }
    }
    Ok(IsoPair {
        forward: ModuleMorphism::checked(src.clone(), tgt.clone(), phi, "untwist φ")?,
        backward: ModuleMorphism::checked(tgt, src, psi, "untwist ψ")?,
    })
}

/// `H ⊗ M ≅ H ⊗ M₀` with `φ′(h ⊗ m) = Σ h₁ ⊗ S(h₂)m` and
/// `ψ′(h ⊗ m) = Σ h₁ ⊗ h₂m`.
pub fn untwist_left<F: Scalar>(m: &BModule<F>) -> Result<IsoPair<F>> {
    m.require_hmodule()?;
    let h = m.hopf().clone();
    let (nm, nh) = (m.dim(), h.dim());
    let m0 = BModule::trivial_action(m.base.clone(), nm)?;
    let reg = hmodule_regular(&h);
    let (src, tgt) = (tensor_with_hmodule(&reg, m)?, tensor_with_hmodule(&reg, &m0)?);
    let s: Vec<FieldMatrix<F>> = (0..nh).map(|q| m.act_by(&h.antipode().column(q))).collect();
    let mut phi = FieldMatrix::zeros(nm * nh, nm * nh);
    let mut psi = FieldMatrix::zeros(nm * nh, nm * nh);
    for j in 0..nh {
        for (p, q, c) in h.coproduct_terms(j) {
            for a in 0..nm {
                for b in 0..nm {
                    phi[(p * nm + b, j * nm + a)] += c.clone() * s[q][(b, a)].clone();
                    psi[(p * nm + b, j * nm + a)] += c.clone() * m.action(q)[(b, a)].clone();
                }
            }
        }
    }
    Ok(IsoPair {
        forward: ModuleMorphism::checked(src.clone(), tgt.clone(), phi, "untwist φ′")?,
        backward: ModuleMorphism::checked(tgt, src, psi, "untwist ψ′")?,
    })
}

/// `H ⊗ U ≅ U ⊗ H` with `h ⊗ u ↦ Σ h₁S(h₃)u ⊗ h₂` and inverse
/// `u ⊗ h ↦ Σ h₂ ⊗ h₃S⁻¹(h₁)u`.
pub fn swap_iso<F: Scalar>(u: &BModule<F>) -> Result<IsoPair<F>> {
    u.require_hmodule()?;
    let h = u.hopf().clone();
    let (nu, nh) = (u.dim(), h.dim());
    let reg = hmodule_regular(&h);
    let (hu, uh) = (tensor_with_hmodule(&reg, u)?, tensor_h(u));
    let alg = h.algebra();
    let mut fwd = FieldMatrix::zeros(nu * nh, nu * nh);
    let mut bwd = FieldMatrix::zeros(nu * nh, nu * nh);
    for j in 0..nh {
        for (p, q, r, c) in h.triple_coproduct_terms(j) {
            let f_op = u.act_by(&alg.multiply(&alg.basis_vector(p), &h.antipode().column(r)));
            let b_op = u.act_by(&alg.multiply(&alg.basis_vector(r), &h.antipode_inverse().column(p)));
            for a in 0..nu {
                for b in 0..nu {
                    fwd[(b * nh + q, j * nu + a)] += c.clone() * f_op[(b, a)].clone();
                    bwd[(q * nu + b, a * nh + j)] += c.clone() * b_op[(b, a)].clone();
                }
            }
        }
    }
    Ok(IsoPair {
        forward: ModuleMorphism::checked(hu.clone(), uh.clone(), fwd, "swap")?,
        backward: ModuleMorphism::checked(uh, hu, bwd, "swap inverse")?,
    })
}

/// A finite presentation `B^r → M` by standard basis vectors of `M`.
struct Presentation<F> {
    /// Indices of the standard basis vectors used as generators.
    generators: Vec<usize>,
    /// `π : B^r → M`, column `j * dim B + k` is `ρ(b_k) e_{g_j}`.
    pi: FieldMatrix<F>,
    /// Generators of `ker π` as a `B`-module.
    relations: Vec<Vec<F>>,
    /// Columns of `π` forming a basis of `M`, and the inverse of that block.
    pivots: Vec<usize>,
    pivot_inverse: FieldMatrix<F>,
}

fn presentation<F: Scalar>(m: &BModule<F>) -> Presentation<F> {
    let n = m.dim();
    let base = m.base();
    let nb = base.dim();
    let ops = m.generator_actions();
    let mut span = IncrementalSpan::new(n);
    let mut generators = Vec::new();
    for i in 0..n {
        if span.is_full() {
            break;
        }
        let mut e = vec![F::zero(); n];
        e[i] = F::one();
        if invariant_closure(&mut span, &e, &ops) {
            generators.push(i);
        }
    }
    let r = generators.len();
    let mut pi = FieldMatrix::zeros(n, r * nb);
    for (j, &g) in generators.iter().enumerate() {
        for k in 0..nb {
            for row in 0..n {
                pi[(row, j * nb + k)] = m.action(k)[(row, g)].clone();
            }
        }
    }
    let kernel = nullspace(&pi);
    let free_ops: Vec<FieldMatrix<F>> = base
        .generators()
        .iter()
        .map(|&g| FieldMatrix::identity(r).kron(&base.algebra().left_mult(g)))
        .collect();
    let free_refs: Vec<&FieldMatrix<F>> = free_ops.iter().collect();
    let mut rel_span = IncrementalSpan::new(r * nb);
    let mut relations = Vec::new();
    for c in kernel.columns() {
        if rel_span.dim() == kernel.cols() {
            break;
        }
        if invariant_closure(&mut rel_span, &c, &free_refs) {
            relations.push(c);
        }
    }
    let pivots = rref(&pi).pivots;
    let pivot_inverse = inverse(&pi.select_cols(&pivots)).expect("pivot columns form a basis");
    Presentation { generators, pi, relations, pivots, pivot_inverse }
}

/// A basis of `Hom_B(M, N)`.
///
/// `M` is presented as a quotient of a free module; a map is the choice of
/// images of the generators that kills the relations.
pub fn hom_space<F: Scalar>(m: &BModule<F>, n: &BModule<F>) -> Result<Vec<ModuleMorphism<F>>> {
    check_same_base(m, n)?;
    if m.is_zero() || n.is_zero() {
        return Ok(Vec::new());
    }
    let p = presentation(m);
    let (nb, dn, r) = (m.base().dim(), n.dim(), p.generators.len());
    debug_assert_eq!(p.pi.cols(), r * nb);
    let mut eqs = FieldMatrix::zeros(p.relations.len() * dn, r * dn);
    for (t, c) in p.relations.iter().enumerate() {
        for j in 0..r {
            let mut block = FieldMatrix::zeros(dn, dn);
            for k in 0..nb {
                block.add_scaled(&c[j * nb + k], n.action(k));
            }
            eqs.set_block(t * dn, j * dn, &block);
        }
    }
    let solutions = nullspace(&eqs);
    let mut out = Vec::with_capacity(solutions.cols());
    for v in solutions.columns() {
        let mut images = FieldMatrix::zeros(dn, p.pivots.len());
        for (col, &c) in p.pivots.iter().enumerate() {
            let (j, k) = (c / nb, c % nb);
            let img = n.action(k).apply(&v[j * dn..(j + 1) * dn]);
            for (row, x) in img.into_iter().enumerate() {
                images[(row, col)] = x;
            }
        }
        out.push(ModuleMorphism::from_parts(m.clone(), n.clone(), images.matmul(&p.pivot_inverse)));
    }
    Ok(out)
}

/// `Hom_B(M, N)` by solving `X ρ_M(b) = ρ_N(b) X` directly on all
/// `dim M · dim N` matrix entries. Slower; kept as a cross-check.
pub fn hom_space_direct<F: Scalar>(m: &BModule<F>, n: &BModule<F>) -> Result<Vec<ModuleMorphism<F>>> {
    check_same_base(m, n)?;
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let blocks: Vec<FieldMatrix<F>> = m
        .base()
        .generators()
        .iter()
        .map(|&g| &FieldMatrix::identity(dn).kron(&m.action(g).transpose()) - &n.action(g).kron(&FieldMatrix::identity(dm)))
        .collect();
    let refs: Vec<&FieldMatrix<F>> = blocks.iter().collect();
    let system = if refs.is_empty() { FieldMatrix::zeros(0, dm * dn) } else { FieldMatrix::vstack(dm * dn, &refs) };
    Ok(nullspace(&system)
        .columns()
        .into_iter()
        .map(|v| ModuleMorphism::from_parts(m.clone(), n.clone(), FieldMatrix::from_vec(dn, dm, v)))
        .collect())
}

/// A submodule with its inclusion.
pub fn submodule<F: Scalar>(m: &BModule<F>, spanning: &FieldMatrix<F>) -> Result<(BModule<F>, ModuleMorphism<F>)> {
    if spanning.rows() != m.dim() {
        return Err(contract!("spanning vectors have length {}, module has dimension {}", spanning.rows(), m.dim()));
    }
    let inc = column_space(spanning);
    let s = inc.cols();
    if s == 0 {
        let z = BModule::zero(m.base.clone());
        return Ok((z.clone(), ModuleMorphism::zero(&z, m)));
    }
    let images: Vec<FieldMatrix<F>> = m.actions().iter().map(|a| a.matmul(&inc)).collect();
    let refs: Vec<&FieldMatrix<F>> = images.iter().collect();
    let rhs = FieldMatrix::hstack(m.dim(), &refs);
    let Some(x) = solve(&inc, &rhs)? else {
        return Err(structural!("subspace is not a submodule"));
    };
    let action = (0..m.base.dim()).map(|k| x.block(0, k * s, s, s)).collect();
    let sub = BModule::from_parts(m.base.clone(), action);
    let inclusion = ModuleMorphism::checked(sub.clone(), m.clone(), inc, "submodule inclusion")?;
    Ok((sub, inclusion))
}

/// The submodule generated by the given vectors (as columns).
pub fn generated_submodule<F: Scalar>(m: &BModule<F>, vectors: &FieldMatrix<F>) -> Result<(BModule<F>, ModuleMorphism<F>)> {
    let ops = m.generator_actions();
    let mut span = IncrementalSpan::new(m.dim());
    for v in vectors.columns() {
        invariant_closure(&mut span, &v, &ops);
    }
    submodule(m, &span.basis_matrix())
}

/// The quotient by a submodule (given by spanning columns) with its projection.
pub fn quotient<F: Scalar>(m: &BModule<F>, spanning: &FieldMatrix<F>) -> Result<(BModule<F>, ModuleMorphism<F>)> {
    if spanning.rows() != m.dim() {
        return Err(contract!("spanning vectors have length {}, module has dimension {}", spanning.rows(), m.dim()));
    }
    let proj = cokernel(spanning).projection;
    let c = proj.rows();
    if c == 0 {
        let z = BModule::zero(m.base.clone());
        return Ok((z.clone(), ModuleMorphism::zero(m, &z)));
    }
    let section = right_inverse(&proj).expect("cokernel projection is surjective");
    let mut action = Vec::with_capacity(m.base.dim());
    for a in m.actions() {
        let pa = proj.matmul(a);
        if !pa.matmul(spanning).is_zero() {
            return Err(structural!("subspace is not a submodule"));
        }
        action.push(pa.matmul(&section));
    }
    let q = BModule::from_parts(m.base.clone(), action);
    let projection = ModuleMorphism::checked(m.clone(), q.clone(), proj, "quotient projection")?;
    Ok((q, projection))
}

pub fn kernel<F: Scalar>(f: &ModuleMorphism<F>) -> Result<(BModule<F>, ModuleMorphism<F>)> {
    submodule(&f.source, &nullspace(&f.matrix))
}

pub fn cokernel_module<F: Scalar>(f: &ModuleMorphism<F>) -> Result<(BModule<F>, ModuleMorphism<F>)> {
    quotient(&f.target, &f.matrix)
}

/// `M ⊕ N` with its structure maps.
#[derive(Clone)]
pub struct DirectSum<F> {
    pub module: BModule<F>,
    pub inclusions: [ModuleMorphism<F>; 2],
    pub projections: [ModuleMorphism<F>; 2],
}

pub fn direct_sum<F: Scalar>(m: &BModule<F>, n: &BModule<F>) -> Result<DirectSum<F>> {
    check_same_base(m, n)?;
    let action = m.actions().iter().zip(n.actions()).map(|(a, b)| FieldMatrix::direct_sum(a, b)).collect();
    let s = BModule::from_parts(m.base.clone(), action);
    let (dm, dn) = (m.dim(), n.dim());
    let d = dm + dn;
    let sel = |rows: usize, cols: usize, off_r: usize, off_c: usize| {
        FieldMatrix::from_fn(rows, cols, |i, j| if i + off_r == j + off_c { F::one() } else { F::zero() })
    };
    Ok(DirectSum {
        inclusions: [
            ModuleMorphism::from_parts(m.clone(), s.clone(), sel(d, dm, 0, 0)),
            ModuleMorphism::from_parts(n.clone(), s.clone(), sel(d, dn, 0, dm)),
        ],
        projections: [
            ModuleMorphism::from_parts(s.clone(), m.clone(), sel(dm, d, 0, 0)),
            ModuleMorphism::from_parts(s.clone(), n.clone(), sel(dn, d, dm, 0)),
        ],
        module: s,
    })
}

#[cfg(test)]
mod tests;
