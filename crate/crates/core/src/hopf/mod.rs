//! Finite-dimensional Hopf algebras by structure constants.
//!
//! All structure maps are matrices in the lexicographic tensor basis:
//! `Δ` is `n² × n` (column `j` lists the coefficients of `e_p ⊗ e_q` in
//! `Δ(e_j)` at row `p * n + q`), `ε` is `1 × n`, and `S`, `S⁻¹` are `n × n`.
//! Sweedler sums are evaluated by expanding these matrices; triple sums
//! `h₁ ⊗ h₂ ⊗ h₃` always use `(Δ ⊗ id)Δ`.

mod algebra;
mod builtin;

pub use algebra::{tensor_algebra_product, Algebra};
pub use builtin::{builtin, cyclic_table, Builtin};

use crate::error::{contract, structural, Result};
use crate::exactlin::{inverse, nullspace, FieldMatrix};
use crate::report::VerificationReport;
use crate::scalar::Scalar;

/// Raw Hopf data, not yet known to satisfy the axioms. This is what
/// [`verify_hopf`] inspects; [`HopfAlgebra`] wraps data that passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfStructure<F> {
    pub algebra: Algebra<F>,
    pub comult: FieldMatrix<F>,
    pub counit: FieldMatrix<F>,
    pub antipode: FieldMatrix<F>,
    pub antipode_inverse: FieldMatrix<F>,
}

impl<F: Scalar> HopfStructure<F> {
    /// Assembles the data, computing `S⁻¹`. Fails if `S` is singular.
    pub fn new(
        algebra: Algebra<F>,
        comult: FieldMatrix<F>,
        counit: FieldMatrix<F>,
        antipode: FieldMatrix<F>,
    ) -> Result<Self> {
        let antipode_inverse = antipode_inverse(&antipode)?;
        Ok(HopfStructure { algebra, comult, counit, antipode, antipode_inverse })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.dim();
        let expect = [
            ("comultiplication", &self.comult, (n * n, n)),
            ("counit", &self.counit, (1, n)),
            ("antipode", &self.antipode, (n, n)),
            ("antipode inverse", &self.antipode_inverse, (n, n)),
        ];
        for (name, m, shape) in expect {
            if m.shape() != shape {
                return Err(contract!(
                    "{name} of a {n}-dimensional Hopf algebra must be {}×{}, got {}×{}",
                    shape.0,
                    shape.1,
                    m.rows(),
                    m.cols()
                ));
            }
        }
        Ok(())
    }
}

/// Inverse of the antipode matrix.
pub fn antipode_inverse<F: Scalar>(antipode: &FieldMatrix<F>) -> Result<FieldMatrix<F>> {
    if !antipode.is_square() {
        return Err(contract!("antipode must be square, got {}×{}", antipode.rows(), antipode.cols()));
    }
    inverse(antipode).ok_or_else(|| structural!("antipode is singular, so this is not a Hopf algebra"))
}

/// Runs every Hopf algebra axiom as a named matrix identity.
pub fn verify_hopf<F: Scalar>(h: &HopfStructure<F>) -> Result<VerificationReport> {
    h.check_shapes()?;
    let n = h.dim();
    let a = &h.algebra;
    let id = FieldMatrix::identity(n);
    let mut report = VerificationReport::new();
    a.verify_into(&mut report);

    let delta = &h.comult;
    report.compare("coassociativity", &delta.kron(&id).matmul(delta), &id.kron(delta).matmul(delta));
    report.compare("left_counit", &h.counit.kron(&id).matmul(delta), &id);
    report.compare("right_counit", &id.kron(&h.counit).matmul(delta), &id);

    // Δ(e_i e_j) = Δ(e_i)Δ(e_j), witnessed at input index i * n + j.
    let mut witness = None;
    'outer: for i in 0..n {
        let di = delta.column(i);
        for j in 0..n {
            let lhs = delta.apply(&a.basis_product(i, j));
            let rhs = tensor_algebra_product(a, a, &di, &delta.column(j));
            if lhs != rhs {
                witness = Some(i * n + j);
                break 'outer;
            }
        }
    }
    report.push("comult_multiplicative", witness.is_none(), witness);
    let unit_unit = a.unit_column().kron(&a.unit_column());
    report.compare("comult_unital", &delta.matmul(&a.unit_column()), &unit_unit);

    let counit_lhs = h.counit.matmul(a.mult());
    let counit_rhs = h.counit.kron(&h.counit);
    report.compare("counit_multiplicative", &counit_lhs, &counit_rhs);
    report.compare("counit_unital", &h.counit.matmul(&a.unit_column()), &FieldMatrix::identity(1));

    let unit_counit = a.unit_column().matmul(&h.counit);
    let left = a.mult().matmul(&h.antipode.kron(&id)).matmul(delta);
    let right = a.mult().matmul(&id.kron(&h.antipode)).matmul(delta);
    report.compare("antipode_left", &left, &unit_counit);
    report.compare("antipode_right", &right, &unit_counit);

    let inv_ok = h.antipode.matmul(&h.antipode_inverse).is_identity()
        && h.antipode_inverse.matmul(&h.antipode).is_identity();
    let w = if inv_ok { None } else { crate::report::first_differing_column(&h.antipode.matmul(&h.antipode_inverse), &id).or(Some(0)) };
    report.push("antipode_inverse", inv_ok, w);
    Ok(report)
}

/// A nonzero left integral `Λ`, with `hΛ = ε(h)Λ` for all `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftIntegral<F> {
    pub lambda: Vec<F>,
}

/// Solves `(L_h − ε(h)) Λ = 0` over all basis `h` and normalizes the first
/// nonzero coordinate to `1`.
pub fn left_integral<F: Scalar>(h: &HopfStructure<F>) -> Result<LeftIntegral<F>> {
    h.check_shapes()?;
    let n = h.dim();
    let blocks: Vec<FieldMatrix<F>> = (0..n)
        .map(|i| {
            let mut l = h.algebra.left_mult(i);
            let e = h.counit[(0, i)].clone();
            for k in 0..n {
                l[(k, k)] -= e.clone();
            }
            l
        })
        .collect();
    let refs: Vec<&FieldMatrix<F>> = blocks.iter().collect();
    let system = FieldMatrix::vstack(n, &refs);
    let kernel = nullspace(&system);
    if kernel.cols() != 1 {
        return Err(structural!(
            "space of left integrals has dimension {}, expected 1",
            kernel.cols()
        ));
    }
    let mut lambda = kernel.column(0);
    let lead = lambda.iter().find(|v| !v.is_zero()).cloned().expect("kernel vector is nonzero");
    let inv = lead.inverse().expect("nonzero");
    for v in &mut lambda {
        *v = v.clone() * inv.clone();
    }
    Ok(LeftIntegral { lambda })
}

/// A verified finite-dimensional Hopf algebra with its cached left integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra<F> {
    structure: HopfStructure<F>,
    integral: LeftIntegral<F>,
}

impl<F: Scalar> HopfAlgebra<F> {
    pub fn new(structure: HopfStructure<F>) -> Result<Self> {
        let report = verify_hopf(&structure)?;
        if !report.passed() {
            return Err(structural!("Hopf algebra axioms fail: {}", report.failure_summary()));
        }
        let integral = left_integral(&structure)?;
        Ok(HopfAlgebra { structure, integral })
    }

    pub fn structure(&self) -> &HopfStructure<F> {
        &self.structure
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn algebra(&self) -> &Algebra<F> {
        &self.structure.algebra
    }

    pub fn comult(&self) -> &FieldMatrix<F> {
        &self.structure.comult
    }

    pub fn counit(&self) -> &FieldMatrix<F> {
        &self.structure.counit
    }

    pub fn antipode(&self) -> &FieldMatrix<F> {
        &self.structure.antipode
    }

    pub fn antipode_inverse(&self) -> &FieldMatrix<F> {
        &self.structure.antipode_inverse
    }

    pub fn integral(&self) -> &LeftIntegral<F> {
        &self.integral
    }

    pub fn counit_of(&self, x: &[F]) -> F {
        self.structure.counit.apply(x).pop().expect("counit is 1×n")
    }

    /// Nonzero terms `(p, q, c)` of `Δ(e_j) = Σ c e_p ⊗ e_q`.
    pub fn coproduct_terms(&self, j: usize) -> Vec<(usize, usize, F)> {
        let n = self.dim();
        let col = self.structure.comult.column(j);
        col.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (idx / n, idx % n, c))
            .collect()
    }

    /// Nonzero terms `(p, q, r, c)` of `(Δ ⊗ id)Δ(e_j)`.
    pub fn triple_coproduct_terms(&self, j: usize) -> Vec<(usize, usize, usize, F)> {
        let mut out: Vec<(usize, usize, usize, F)> = Vec::new();
        for (a, r, c) in self.coproduct_terms(j) {
            for (p, q, c2) in self.coproduct_terms(a) {
                let coef = c.clone() * c2;
                match out.iter_mut().find(|t| (t.0, t.1, t.2) == (p, q, r)) {
                    Some(t) => t.3 += coef,
                    None => out.push((p, q, r, coef)),
                }
            }
        }
        out.retain(|t| !t.3.is_zero());
        out
    }

    /// `ε(Λ) ≠ 0`, the Larson–Sweedler criterion for semisimplicity.
    pub fn is_semisimple(&self) -> bool {
        !self.counit_of(&self.integral.lambda).is_zero()
    }
}

pub fn is_semisimple_integral<F: Scalar>(h: &HopfAlgebra<F>) -> bool {
    h.is_semisimple()
}
