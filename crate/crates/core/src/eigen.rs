//! Simultaneous diagonalization of commuting matrices.

use crate::error::{Result, YrkError};
use crate::matrix::Mat;
use crate::roots;
use crate::scalar::Scalar;

/// A basis of joint eigenvectors (columns of `basis`) and, for each input
/// matrix, the eigenvalue on each column.
#[derive(Debug, Clone)]
pub struct JointEigen<F: Scalar> {
    pub basis: Mat<F>,
    pub values: Vec<Vec<F>>,
}

/// Restriction of `m` to the invariant subspace spanned by the columns of `s`.
fn restrict<F: Scalar>(m: &Mat<F>, s: &Mat<F>) -> Result<Mat<F>> {
    let ms = m.mul(s);
    let mut st = s.transpose();
    let piv_rows = {
        // Independent rows of `s` are the pivot columns of its transpose.
        st.rref()
    };
    let k = s.cols();
    if piv_rows.len() < k {
        return Err(YrkError::Singular);
    }
    let a = Mat::from_fn(k, k, |i, j| s[(piv_rows[i], j)].clone());
    let b = Mat::from_fn(k, k, |i, j| ms[(piv_rows[i], j)].clone());
    a.solve(&b)
}

/// Diagonalize a family of pairwise commuting matrices. `hints` seed the
/// exact eigenvalue search.
pub fn joint_eigenbasis<F: Scalar>(mats: &[Mat<F>], hints: &[F]) -> Result<JointEigen<F>> {
    let n = mats.first().map_or(0, |m| m.rows());
    let mut spaces: Vec<(Mat<F>, Vec<F>)> = vec![(Mat::identity(n), Vec::new())];
    for m in mats {
        let mut next = Vec::new();
        for (s, vals) in spaces {
            let r = restrict(m, &s)?;
            let scalar = r[(0, 0)].clone();
            let eig = if r.sub(&Mat::identity(r.rows()).scale(&scalar)).is_zero() {
                vec![(scalar, r.rows())]
            } else {
                roots::roots(&r.char_poly(), hints)?
            };
            let mut found = 0;
            for (lambda, mult) in eig {
                let shifted = r.sub(&Mat::identity(r.rows()).scale(&lambda));
                let k = if F::EXACT { shifted.kernel() } else { float_kernel(&shifted, mult) };
                if k.cols() != mult {
                    return Err(YrkError::NotDiagonalizable(format!(
                        "eigenvalue {lambda} has multiplicity {mult} but eigenspace dimension {}",
                        k.cols()
                    )));
                }
                found += mult;
                let mut v = vals.clone();
                v.push(lambda);
                next.push((s.mul(&k), v));
            }
            if found != s.cols() {
                return Err(YrkError::NotDiagonalizable("eigenvalues do not exhaust the space".into()));
            }
        }
        spaces = next;
    }
    let mut cols = Vec::new();
    let mut values: Vec<Vec<F>> = vec![Vec::new(); mats.len()];
    for (s, vals) in &spaces {
        for c in 0..s.cols() {
            cols.push(s.select_cols(&[c]));
            for (k, v) in vals.iter().enumerate() {
                values[k].push(v.clone());
            }
        }
    }
    let basis = if cols.is_empty() { Mat::zeros(n, 0) } else { Mat::hstack(&cols) };
    Ok(JointEigen { basis, values })
}

/// Approximate kernel of dimension `dim` on the float backend: the columns
/// of the rref complement after discarding the `dim` weakest pivots.
fn float_kernel<F: Scalar>(m: &Mat<F>, dim: usize) -> Mat<F> {
    let n = m.cols();
    let scale = m.max_abs().max(1.0);
    // Drop near-zero rows relative to the matrix scale.
    let mut a = m.clone();
    let piv = a.rref();
    let mut rank = piv.len();
    for (r, _) in piv.iter().enumerate().rev() {
        let row_max = a.row(r).iter().map(|x| x.abs()).fold(0.0, f64::max);
        if row_max < 1e-7 * scale {
            rank -= 1;
        }
    }
    let rank = rank.min(n - dim.min(n));
    let piv: Vec<usize> = piv.into_iter().take(rank).collect();
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    let mut out = Mat::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        out[(f, k)] = F::one();
        for (r, &pc) in piv.iter().enumerate() {
            out[(pc, k)] = a[(r, f)].neg_ref();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn m(rows: &[&[i64]]) -> Mat<GaussRat> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| GaussRat::from_i64(x)).collect()).collect())
    }

    #[test]
    fn commuting_pair() {
        // a has a repeated eigenvalue split by b.
        let p = m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 2]]);
        let pinv = p.inverse().unwrap();
        let a = p.mul(&m(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 5]])).mul(&pinv);
        let b = p.mul(&m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 3]])).mul(&pinv);
        let je = joint_eigenbasis(&[a.clone(), b.clone()], &[]).unwrap();
        let q = &je.basis;
        let qinv = q.inverse().unwrap();
        assert!(qinv.mul(&a).mul(q).is_diagonal());
        assert!(qinv.mul(&b).mul(q).is_diagonal());
        for c in 0..3 {
            let col = q.select_cols(&[c]);
            assert_eq!(a.mul(&col), col.scale(&je.values[0][c]));
            assert_eq!(b.mul(&col), col.scale(&je.values[1][c]));
        }
    }

    #[test]
    fn jordan_block_is_rejected() {
        let j = m(&[&[1, 1], &[0, 1]]);
        assert!(matches!(joint_eigenbasis(&[j], &[]), Err(YrkError::NotDiagonalizable(_))));
    }
}
