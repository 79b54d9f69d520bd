//! Small dense real Gaussian elimination: rank, kernel bases and particular
//! solutions for the tiny (≤ 6×6) systems that arise from basis validation.
//!
//! Pivots are compared against `threshold · scale`, where `scale` is the
//! largest absolute entry of the input, so the decisions are invariant
//! under uniform scaling of the data.

/// Threshold used for every rank decision in this crate.
pub(crate) const RANK_THRESHOLD: f64 = 1e-9;

/// In-place reduction to reduced row-echelon form with partial pivoting.
/// Returns the pivot columns; only the first `pivot_cols` columns are
/// eligible as pivots (the rest ride along, e.g. an augmented right side).
fn rref(m: &mut [Vec<f64>], pivot_cols: usize, threshold: f64) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let scale = m
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0_f64, |s, x| s.max(x.abs()));
    let eps = threshold * scale;

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols.min(cols) {
        if r >= rows {
            break;
        }
        let (best, best_abs) = (r..rows)
            .map(|i| (i, m[i][c].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if best_abs <= eps {
            continue;
        }
        m.swap(r, best);
        let p = m[r][c];
        for x in m[r].iter_mut() {
            *x /= p;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = row[c];
            if factor != 0.0 {
                for (x, pr) in row.iter_mut().zip(&pivot_row) {
                    *x -= factor * pr;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(mut m: Vec<Vec<f64>>, threshold: f64) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    rref(&mut m, cols, threshold).len()
}

/// Basis of the null space of `m`, one vector per free column.
pub(crate) fn kernel_basis(mut m: Vec<Vec<f64>>, threshold: f64) -> Vec<Vec<f64>> {
    let cols = m.first().map_or(0, |r| r.len());
    let pivots = rref(&mut m, cols, threshold);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0.0; cols];
        v[free] = 1.0;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free];
        }
        basis.push(v);
    }
    basis
}

/// One solution of `m x = rhs` with free variables set to zero, or `None`
/// when the system is inconsistent.
pub(crate) fn solve_particular(
    m: &[Vec<f64>],
    rhs: &[f64],
    threshold: f64,
) -> Option<Vec<f64>> {
    assert_eq!(m.len(), rhs.len());
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<f64>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols, threshold);

    let scale = aug
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0_f64, |s, x| s.max(x.abs()));
    let eps = threshold * scale;
    for (row, r) in aug.iter().enumerate() {
        let coeff_zero = row >= pivots.len();
        if coeff_zero && r[cols].abs() > eps {
            return None;
        }
    }

    let mut x = vec![0.0; cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols];
    }
    Some(x)
}
