use crate::scalar::Scalar;

/// Solves the square system `m x = rhs` by Gaussian elimination.
///
/// Exact entries use the first nonzero pivot; if any entry is a double the
/// largest pivot is taken. Returns `None` when the matrix is singular.
pub fn solve_linear(mut m: Vec<Vec<Scalar>>, mut rhs: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let n = rhs.len();
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return None;
    }
    let approx = m.iter().flatten().chain(&rhs).any(|x| !x.is_exact());
    for col in 0..n {
        let candidates = (col..n).filter(|&r| !m[r][col].is_zero());
        let pivot = if approx {
            candidates.max_by(|&a, &b| {
                m[a][col].to_f64().abs().total_cmp(&m[b][col].to_f64().abs())
            })
        } else {
            candidates.min()
        }?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].checked_div(&m[col][col]).ok()?;
            let (upper, lower) = m.split_at_mut(r);
            for (cell, p) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *cell = &*cell - &(&factor * p);
            }
            let sub = &factor * &rhs[col];
            rhs[r] = &rhs[r] - &sub;
        }
    }
    let mut x = vec![Scalar::zero(); n];
    for r in (0..n).rev() {
        let mut acc = rhs[r].clone();
        for c in r + 1..n {
            acc = &acc - &(&m[r][c] * &x[c]);
        }
        x[r] = acc.checked_div(&m[r][r]).ok()?;
    }
    Some(x)
}
