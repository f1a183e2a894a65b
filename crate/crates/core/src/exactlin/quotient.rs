use super::elimination::rref;
use super::matrix::FieldMatrix;
use crate::scalar::Scalar;

/// A quotient `V / Z` of subspaces `Z ⊆ V ⊆ k^n`, with canonical coset
/// representatives.
///
/// `Z` is kept as the nonzero rows of its RREF. Every vector of `V` is first
/// reduced to its normal form modulo `Z` (zero at each pivot of `Z`); the
/// representatives are the nonzero RREF rows of the reduced spanning set of `V`.
/// Both choices depend only on the subspaces, not on the spanning sets given.
#[derive(Clone, Debug)]
pub struct QuotientSpace<F> {
    len: usize,
    null_rows: FieldMatrix<F>,
    null_pivots: Vec<usize>,
    reps: FieldMatrix<F>,
    rep_pivots: Vec<usize>,
}

impl<F: Scalar> QuotientSpace<F> {
    /// `ambient` and `null` hold spanning vectors as columns of length `len`.
    /// The caller guarantees `span(null) ⊆ span(ambient)`.
    pub fn new(ambient: &FieldMatrix<F>, null: &FieldMatrix<F>) -> Self {
        assert_eq!(ambient.rows(), null.rows(), "quotient: vector length mismatch");
        let len = ambient.rows();
        let nr = rref(&null.transpose());
        let null_pivots = nr.pivots.clone();
        let null_rows = nr.matrix.select_rows(&(0..null_pivots.len()).collect::<Vec<_>>());
        let mut q = QuotientSpace {
            len,
            null_rows,
            null_pivots,
            reps: FieldMatrix::zeros(0, len),
            rep_pivots: Vec::new(),
        };
        let reduced: Vec<Vec<F>> = ambient.columns().iter().map(|v| q.reduce(v)).collect();
        let reduced = FieldMatrix::from_rows(reduced);
        let reduced = if reduced.rows() == 0 { FieldMatrix::zeros(0, len) } else { reduced };
        let rr = rref(&reduced);
        q.reps = rr.matrix.select_rows(&(0..rr.pivots.len()).collect::<Vec<_>>());
        q.rep_pivots = rr.pivots;
        q
    }

    pub fn dim(&self) -> usize {
        self.rep_pivots.len()
    }

    pub fn null_dim(&self) -> usize {
        self.null_pivots.len()
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    /// Normal form of `v` modulo `Z`.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (k, &p) in self.null_pivots.iter().enumerate() {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, z) in w.iter_mut().zip(self.null_rows.row(k)) {
                if !z.is_zero() {
                    *x -= c.clone() * z.clone();
                }
            }
        }
        w
    }

    pub fn is_null(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    /// Coordinates of the class of `v` in the representative basis, or `None`
    /// when `v` is not in `V`.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let w = self.reduce(v);
        let coords: Vec<F> = self.rep_pivots.iter().map(|&p| w[p].clone()).collect();
        let mut rest = w;
        for (k, c) in coords.iter().enumerate() {
            for (x, r) in rest.iter_mut().zip(self.reps.row(k)) {
                if !r.is_zero() {
                    *x -= c.clone() * r.clone();
                }
            }
        }
        rest.iter().all(F::is_zero).then_some(coords)
    }

    /// Canonical coset representatives, one per quotient dimension.
    pub fn representatives(&self) -> Vec<Vec<F>> {
        (0..self.dim()).map(|k| self.reps.row(k).to_vec()).collect()
    }

    /// RREF basis of `Z`.
    pub fn null_basis(&self) -> Vec<Vec<F>> {
        (0..self.null_dim()).map(|k| self.null_rows.row(k).to_vec()).collect()
    }
}
