use super::matrix::FieldMatrix;
use crate::scalar::Scalar;

/// A subspace of `k^n` grown one vector at a time.
///
/// Stored rows are in semi-echelon form: row `k` is `1` at its pivot and `0`
/// at the pivots of all earlier rows, so membership is a single reduction pass.
#[derive(Clone, Debug)]
pub struct IncrementalSpan<F> {
    len: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
    /// The vectors that were accepted, as given.
    accepted: Vec<Vec<F>>,
}

impl<F: Scalar> IncrementalSpan<F> {
    pub fn new(len: usize) -> Self {
        IncrementalSpan { len, rows: Vec::new(), pivots: Vec::new(), accepted: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.len
    }

    fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.len, "span: vector length mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= c.clone() * r.clone();
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    /// Adds `v`; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inverse().expect("nonzero");
        for x in &mut w {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        self.accepted.push(v.to_vec());
        true
    }

    /// The accepted vectors, a basis of the span.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.accepted
    }

    /// The accepted vectors as the columns of a `len × dim` matrix.
    pub fn basis_matrix(&self) -> FieldMatrix<F> {
        FieldMatrix::from_columns(self.len, &self.accepted)
    }
}

/// Enlarges `span` to the smallest subspace containing it and `seed` that is
/// stable under every matrix in `ops`, assuming `span` was already stable.
/// Returns `false` (and changes nothing) when `seed` was already inside.
pub fn invariant_closure<F: Scalar>(
    span: &mut IncrementalSpan<F>,
    seed: &[F],
    ops: &[&FieldMatrix<F>],
) -> bool {
    if !span.insert(seed) {
        return false;
    }
    let mut frontier = vec![seed.to_vec()];
    while let Some(v) = frontier.pop() {
        for op in ops {
            let w = op.apply(&v);
            if span.insert(&w) {
                frontier.push(w);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;

    type F3 = Fp<3>;

    #[test]
    fn membership_and_basis() {
        let mut s = IncrementalSpan::<F3>::new(3);
        let v = |xs: [u32; 3]| xs.map(F3::new).to_vec();
        assert!(s.insert(&v([1, 2, 0])));
        assert!(s.insert(&v([0, 1, 1])));
        assert!(!s.insert(&v([1, 0, 1])));
        assert!(s.contains(&v([2, 1, 0])));
        assert!(!s.contains(&v([0, 0, 1])));
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis()[0], v([1, 2, 0]));
    }

    #[test]
    fn closure_under_shift() {
        // The shift operator e_i ↦ e_{i+1} on k^3; the closure of e_0 is everything.
        let shift = FieldMatrix::<F3>::from_fn(3, 3, |i, j| if i == j + 1 { F3::new(1) } else { F3::new(0) });
        let mut s = IncrementalSpan::new(3);
        assert!(invariant_closure(&mut s, &[F3::new(0), F3::new(1), F3::new(0)], &[&shift]));
        assert_eq!(s.dim(), 2);
        assert!(invariant_closure(&mut s, &[F3::new(1), F3::new(0), F3::new(0)], &[&shift]));
        assert!(s.is_full());
    }
}
