use crate::error::{contract, Result};
use crate::exactlin::{rank, FieldMatrix};
use crate::report::VerificationReport;
use crate::scalar::Scalar;

/// A finite-dimensional unital algebra given by structure constants.
///
/// `mult` is `n × n²`: column `i * n + j` holds the coordinates of `e_i e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra<F> {
    dim: usize,
    mult: FieldMatrix<F>,
    unit: Vec<F>,
}

impl<F: Scalar> Algebra<F> {
    /// Checks shapes only; the axioms are checked by [`Algebra::verify`].
    pub fn new(mult: FieldMatrix<F>, unit: Vec<F>) -> Result<Self> {
        let n = unit.len();
        if mult.shape() != (n, n * n) {
            return Err(contract!(
                "multiplication of a {n}-dimensional algebra must be {n}×{}, got {}×{}",
                n * n,
                mult.rows(),
                mult.cols()
            ));
        }
        Ok(Algebra { dim: n, mult, unit })
    }

    /// Builds the structure constants from a product on basis indices.
    pub fn from_basis_product(n: usize, unit: Vec<F>, mut product: impl FnMut(usize, usize) -> Vec<F>) -> Result<Self> {
        let mut mult = FieldMatrix::zeros(n, n * n);
        for i in 0..n {
            for j in 0..n {
                let v = product(i, j);
                if v.len() != n {
                    return Err(contract!("product e_{i} e_{j} has {} coordinates, expected {n}", v.len()));
                }
                for (k, c) in v.into_iter().enumerate() {
                    mult[(k, i * n + j)] = c;
                }
            }
        }
        Self::new(mult, unit)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground_field() -> Self {
        Algebra { dim: 1, mult: FieldMatrix::identity(1), unit: vec![F::one()] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self) -> &FieldMatrix<F> {
        &self.mult
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn unit_column(&self) -> FieldMatrix<F> {
        FieldMatrix::column_vector(self.unit.clone())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        v[i] = F::one();
        v
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<F> {
        self.mult.column(i * self.dim + j)
    }

    pub fn multiply(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim;
        let mut out = vec![F::zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a.clone() * b.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.mult[(k, i * n + j)];
                    if !c.is_zero() {
                        *o += ab.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Left multiplication by `e_i`.
    pub fn left_mult(&self, i: usize) -> FieldMatrix<F> {
        let n = self.dim;
        FieldMatrix::from_fn(n, n, |k, j| self.mult[(k, i * n + j)].clone())
    }

    /// Left multiplication by an arbitrary element.
    pub fn left_mult_by(&self, x: &[F]) -> FieldMatrix<F> {
        let n = self.dim;
        let mut out = FieldMatrix::zeros(n, n);
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out.add_scaled(c, &self.left_mult(i));
        }
        out
    }

    /// Adds the `associativity` and `unit` checks to `report`.
    pub fn verify_into(&self, report: &mut VerificationReport) {
        let n = self.dim;
        let id = FieldMatrix::identity(n);
        let lhs = self.mult.matmul(&self.mult.kron(&id));
        let rhs = self.mult.matmul(&id.kron(&self.mult));
        report.compare("associativity", &lhs, &rhs);
        let u = self.unit_column();
        let left = self.mult.matmul(&u.kron(&id));
        let right = self.mult.matmul(&id.kron(&u));
        report.compare("left_unit", &left, &id);
        report.compare("right_unit", &right, &id);
    }

    pub fn verify(&self) -> VerificationReport {
        let mut r = VerificationReport::new();
        self.verify_into(&mut r);
        r
    }

    /// Basis indices of a set of algebra generators, chosen greedily in basis
    /// order. A linear map between modules intertwines every element as soon
    /// as it intertwines these.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.dim;
        let mut gens: Vec<usize> = Vec::new();
        let mut span: Vec<Vec<F>> = vec![self.unit.clone()];
        let mut current = rank(&FieldMatrix::from_columns(n, &span));
        if current == n {
            return gens;
        }
        for i in 0..n {
            let e = self.basis_vector(i);
            let mut candidate = span.clone();
            candidate.push(e);
            if rank(&FieldMatrix::from_columns(n, &candidate)) == current {
                continue;
            }
            gens.push(i);
            span = self.subalgebra_span(&gens);
            current = span.len();
            if current == n {
                break;
            }
        }
        gens
    }

    /// A basis of the subalgebra generated by the given basis elements.
    fn subalgebra_span(&self, gens: &[usize]) -> Vec<Vec<F>> {
        let n = self.dim;
        let mut basis: Vec<Vec<F>> = vec![self.unit.clone()];
        let mut frontier = basis.clone();
        loop {
            let mut added = Vec::new();
            for v in &frontier {
                for &g in gens {
                    let w = self.multiply(&self.basis_vector(g), v);
                    let mut candidate = basis.clone();
                    candidate.push(w.clone());
                    if rank(&FieldMatrix::from_columns(n, &candidate)) > basis.len() {
                        basis.push(w.clone());
                        added.push(w);
                    }
                }
            }
            if added.is_empty() {
                return basis;
            }
            frontier = added;
        }
    }
}

/// Product in the tensor product algebra `A ⊗ B`:
/// `(a ⊗ b)(a' ⊗ b') = aa' ⊗ bb'`.
pub fn tensor_algebra_product<F: Scalar>(a: &Algebra<F>, b: &Algebra<F>, x: &[F], y: &[F]) -> Vec<F> {
    let (na, nb) = (a.dim(), b.dim());
    let mut out = vec![F::zero(); na * nb];
    for (p, xv) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        let (i, k) = (p / nb, p % nb);
        for (q, yv) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let (j, l) = (q / nb, q % nb);
            let c = xv.clone() * yv.clone();
            let left = a.basis_product(i, j);
            let right = b.basis_product(k, l);
            for (s, lv) in left.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (t, rv) in right.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    out[s * nb + t] += c.clone() * lv.clone() * rv.clone();
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;

    type F2 = Fp<2>;

    fn dual_numbers() -> Algebra<F2> {
        // basis 1, d with d² = 0
        Algebra::from_basis_product(2, vec![F2::new(1), F2::new(0)], |i, j| {
            let mut v = vec![F2::new(0); 2];
            if i + j < 2 {
                v[i + j] = F2::new(1);
            }
            v
        })
        .unwrap()
    }

    #[test]
    fn dual_numbers_are_an_algebra() {
        let a = dual_numbers();
        assert!(a.verify().passed());
        assert_eq!(a.generators(), vec![1]);
        assert_eq!(a.multiply(&[F2::new(0), F2::new(1)], &[F2::new(0), F2::new(1)]), vec![F2::new(0); 2]);
    }

    #[test]
    fn broken_unit_is_reported() {
        let a = Algebra::new(dual_numbers().mult().clone(), vec![F2::new(1), F2::new(1)]).unwrap();
        let r = a.verify();
        assert!(!r.check("left_unit").unwrap().passed);
    }

    #[test]
    fn shape_is_a_contract() {
        assert!(Algebra::<F2>::new(FieldMatrix::zeros(2, 3), vec![F2::new(1), F2::new(0)]).is_err());
    }
}
