use super::matrix::FieldMatrix;
use crate::error::{contract, Result};
use crate::scalar::Scalar;

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F> {
    pub matrix: FieldMatrix<F>,
    /// Strictly increasing; `pivots[i]` is the pivot column of row `i`.
    pub pivots: Vec<usize>,
}

impl<F> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss–Jordan elimination restricted to the first `limit` columns; columns
/// beyond `limit` are carried along (augmented part).
fn eliminate<F: Scalar>(m: &mut FieldMatrix<F>, limit: usize) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut data = std::mem::replace(m, FieldMatrix::zeros(0, 0)).into_data();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !data[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = data[r * cols + c].inverse().expect("pivot is nonzero");
        for j in c..cols {
            let v = data[r * cols + j].clone();
            if !v.is_zero() {
                data[r * cols + j] = v * inv.clone();
            }
        }
        let pivot_row: Vec<(usize, F)> =
            (c..cols).filter(|&j| !data[r * cols + j].is_zero()).map(|j| (j, data[r * cols + j].clone())).collect();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c].clone();
            if factor.is_zero() {
                continue;
            }
            for (j, v) in &pivot_row {
                let e = &mut data[i * cols + j];
                *e -= factor.clone() * v.clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    *m = FieldMatrix::from_vec(rows, cols, data);
    pivots
}

pub fn rref<F: Scalar>(m: &FieldMatrix<F>) -> Rref<F> {
    let mut out = m.clone();
    let pivots = eliminate(&mut out, m.cols());
    Rref { matrix: out, pivots }
}

pub fn rank<F: Scalar>(m: &FieldMatrix<F>) -> usize {
    rref(m).rank()
}

/// A basis of the kernel, as the columns of a `cols × (cols − rank)` matrix.
///
/// The basis is the canonical one read off the RREF: the `j`-th column has a
/// `1` in the `j`-th free coordinate and zeros in the other free coordinates.
pub fn nullspace<F: Scalar>(m: &FieldMatrix<F>) -> FieldMatrix<F> {
    let Rref { matrix: r, pivots } = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut out = FieldMatrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        out[(f, k)] = F::one();
        for (row, &p) in pivots.iter().enumerate() {
            let v = &r[(row, f)];
            if !v.is_zero() {
                out[(p, k)] = -v.clone();
            }
        }
    }
    out
}

/// Some `x` with `m · x = rhs`, or `None` when the system is inconsistent.
/// Free variables are set to zero, so the witness is deterministic.
pub fn solve<F: Scalar>(m: &FieldMatrix<F>, rhs: &FieldMatrix<F>) -> Result<Option<FieldMatrix<F>>> {
    if m.rows() != rhs.rows() {
        return Err(contract!("solve: matrix has {} rows but right-hand side has {}", m.rows(), rhs.rows()));
    }
    let n = m.cols();
    let mut aug = FieldMatrix::hstack(m.rows(), &[m, rhs]);
    let pivots = eliminate(&mut aug, n);
    let rank = pivots.len();
    // Rows below the rank have a zero left block; any nonzero on the right is
    // an inconsistency.
    for i in rank..aug.rows() {
        if aug.row(i)[n..].iter().any(|v| !v.is_zero()) {
            return Ok(None);
        }
    }
    let mut x = FieldMatrix::zeros(n, rhs.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..rhs.cols() {
            x[(p, j)] = aug[(i, n + j)].clone();
        }
    }
    Ok(Some(x))
}

/// The cokernel of `m`: a surjection `projection` from the target of `m` with
/// `projection · m = 0` whose kernel is exactly the column span of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel<F> {
    pub projection: FieldMatrix<F>,
    pub dim: usize,
}

pub fn cokernel<F: Scalar>(m: &FieldMatrix<F>) -> Cokernel<F> {
    let projection = nullspace(&m.transpose()).transpose();
    let dim = projection.rows();
    Cokernel { projection, dim }
}

/// Kronecker product realizing `a ⊗ b` in the lexicographic tensor basis.
pub fn tensor_product<F: Scalar>(a: &FieldMatrix<F>, b: &FieldMatrix<F>) -> FieldMatrix<F> {
    a.kron(b)
}

pub fn inverse<F: Scalar>(m: &FieldMatrix<F>) -> Option<FieldMatrix<F>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut aug = FieldMatrix::hstack(n, &[m, &FieldMatrix::identity(n)]);
    let pivots = eliminate(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.block(0, n, n, n))
}

/// A basis of the column space: the columns of `m` at the pivot positions.
pub fn column_space<F: Scalar>(m: &FieldMatrix<F>) -> FieldMatrix<F> {
    let r = rref(m);
    m.select_cols(&r.pivots)
}

/// A right inverse `s` (`m · s = 1`) of a surjective matrix.
pub fn right_inverse<F: Scalar>(m: &FieldMatrix<F>) -> Option<FieldMatrix<F>> {
    solve(m, &FieldMatrix::identity(m.rows())).expect("shapes agree")
}

/// A left inverse `r` (`r · m = 1`) of an injective matrix.
pub fn left_inverse<F: Scalar>(m: &FieldMatrix<F>) -> Option<FieldMatrix<F>> {
    right_inverse(&m.transpose()).map(|s| s.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};
    use num_traits::Zero;

    type F2 = Fp<2>;
    type F5 = Fp<5>;

    #[test]
    fn rref_duplicate_rows() {
        let m = FieldMatrix::<F2>::from_i64_rows(&[&[1, 1], &[1, 1]]);
        let r = rref(&m);
        assert_eq!(r.matrix, FieldMatrix::from_i64_rows(&[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank(), 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_identity() {
        let m = FieldMatrix::<F5>::identity(3);
        let r = rref(&m);
        assert_eq!(r.matrix, m);
        assert_eq!(r.rank(), 3);
    }

    #[test]
    fn rref_gf5_example() {
        // 2·3 = 1 in GF(5): scale row 0 by 3, then clear row 1.
        let m = FieldMatrix::<F5>::from_i64_rows(&[&[2, 4], &[1, 2]]);
        let r = rref(&m);
        assert_eq!(r.matrix, FieldMatrix::from_i64_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&FieldMatrix::<F2>::zeros(2, 2)).cols(), 2);
        assert_eq!(nullspace(&FieldMatrix::<F2>::identity(3)).cols(), 0);

        // Enumerate GF(2)^2 for the kernel of [1 1].
        let m = FieldMatrix::<F2>::from_i64_rows(&[&[1, 1]]);
        let kernel: Vec<Vec<F2>> = (0..4u32)
            .map(|bits| vec![F2::new(bits & 1), F2::new(bits >> 1)])
            .filter(|v| m.apply(v).iter().all(Zero::is_zero) && v.iter().any(|x| !x.is_zero()))
            .collect();
        assert_eq!(kernel, vec![vec![F2::new(1), F2::new(1)]]);
        assert_eq!(nullspace(&m), FieldMatrix::from_i64_rows(&[&[1], &[1]]));
    }

    #[test]
    fn solve_examples() {
        let rhs = FieldMatrix::<F5>::from_i64_rows(&[&[3, 1], &[4, 0]]);
        assert_eq!(solve(&FieldMatrix::identity(2), &rhs).unwrap(), Some(rhs.clone()));

        let z = FieldMatrix::<F5>::from_i64_rows(&[&[0]]);
        let one = FieldMatrix::<F5>::from_i64_rows(&[&[1]]);
        assert_eq!(solve(&z, &one).unwrap(), None);

        let m = FieldMatrix::<F2>::from_i64_rows(&[&[1, 1], &[0, 0]]);
        let b = FieldMatrix::<F2>::from_i64_rows(&[&[1], &[0]]);
        let x = solve(&m, &b).unwrap().unwrap();
        assert_eq!(x, FieldMatrix::from_i64_rows(&[&[1], &[0]]));
        assert_eq!(&m * &x, b);

        assert!(solve(&m, &FieldMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&FieldMatrix::<F2>::identity(3)).dim, 0);

        let z = FieldMatrix::<F2>::zeros(3, 2);
        let c = cokernel(&z);
        assert_eq!(c.dim, 3);
        assert!(c.projection.is_identity());

        let line = FieldMatrix::<F5>::from_i64_rows(&[&[1], &[0]]);
        let c = cokernel(&line);
        assert_eq!(c.dim, 1);
        assert!((&c.projection * &line).is_zero());
        assert_eq!(c.projection, FieldMatrix::from_i64_rows(&[&[0, 1]]));
    }

    #[test]
    fn tensor_product_examples() {
        let i6 = tensor_product(&FieldMatrix::<F2>::identity(2), &FieldMatrix::identity(3));
        assert!(i6.is_identity() && i6.rows() == 6);

        let a = FieldMatrix::<F5>::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(tensor_product(&a, &FieldMatrix::identity(1)), a);

        let n = FieldMatrix::<F2>::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let t = tensor_product(&n, &n);
        let mut expected = FieldMatrix::zeros(4, 4);
        expected[(0, 3)] = F2::new(1);
        assert_eq!(t, expected);
    }

    #[test]
    fn rationals() {
        let m = FieldMatrix::<Rational>::from_i64_rows(&[&[2, 4], &[1, 3]]);
        let inv = inverse(&m).unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(rank(&FieldMatrix::<Rational>::from_i64_rows(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn one_sided_inverses() {
        let inj = FieldMatrix::<F5>::from_i64_rows(&[&[1, 0], &[2, 1], &[3, 4]]);
        let l = left_inverse(&inj).unwrap();
        assert!((&l * &inj).is_identity());
        let s = right_inverse(&inj.transpose()).unwrap();
        assert!((&inj.transpose() * &s).is_identity());
        assert!(left_inverse(&FieldMatrix::<F5>::zeros(2, 1)).is_none());
    }
}
