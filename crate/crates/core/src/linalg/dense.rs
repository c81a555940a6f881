//! Exact dense elimination over any supported field.

use crate::field::{FieldElement, FieldError, FieldSpec};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<FieldElement>>, ncols: usize) -> Result<Vec<usize>, FieldError> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].inv()?;
        for x in rows[r][c..].iter_mut() {
            if !x.is_zero() {
                *x = x.checked_mul(&inv)?;
            }
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].checked_sub(&f.checked_mul(&pivot_row[j])?)?;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Ok(pivots)
}

/// Canonical kernel basis from the reduced row echelon form: one vector per
/// free column, 1 there and 0 at the other free columns.
pub fn kernel(
    field: &FieldSpec,
    rows: &[Vec<FieldElement>],
    ncols: usize,
) -> Result<(Vec<Vec<FieldElement>>, Vec<usize>), FieldError> {
    let mut work = rows.to_vec();
    let pivots = rref(&mut work, ncols)?;
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[f] = field.one();
        for (k, &c) in pivots.iter().enumerate() {
            v[c] = -work[k][f].clone();
        }
        basis.push(v);
    }
    Ok((basis, pivots))
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn rank_bareiss(rows: &[Vec<FieldElement>], ncols: usize) -> Result<usize, FieldError> {
    let mut a = rows.to_vec();
    let Some(first) = a.first() else { return Ok(0) };
    let mut prev = first.first().map_or_else(|| FieldElement::rational(1, 1), |x| x.field().one());
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(found) = (r..a.len()).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, found);
        let piv = a[r][c].clone();
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..ncols {
                let num = row[j].checked_mul(&piv)?.checked_sub(&f.checked_mul(&pivot_row[j])?)?;
                row[j] = num.checked_div(&prev)?;
            }
            row[c] = piv.field().zero();
        }
        prev = piv;
        r += 1;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<FieldElement>> {
        rows.iter().map(|r| r.iter().map(|&x| FieldElement::rational(x, 1)).collect()).collect()
    }

    #[test]
    fn identity_rank() {
        let id: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| (i == j) as i64).collect()).collect();
        let rows: Vec<&[i64]> = id.iter().map(|r| r.as_slice()).collect();
        assert_eq!(rank_bareiss(&q(&rows), 4).unwrap(), 4);
    }

    #[test]
    fn bareiss_matches_rref() {
        let m = q(&[&[2, 4, 6, 1], &[1, 2, 3, 0], &[3, 6, 9, 1], &[0, 0, 1, 5]]);
        let mut w = m.clone();
        let piv = rref(&mut w, 4).unwrap();
        assert_eq!(piv, vec![0, 2, 3]);
        assert_eq!(rank_bareiss(&m, 4).unwrap(), 3);
        let (k, _) = kernel(&FieldSpec::Rational, &m, 4).unwrap();
        assert_eq!(k, q(&[&[-2, 1, 0, 0]]));
    }

    #[test]
    fn gaussian_rank() {
        let i = FieldSpec::GaussianRational.imaginary_unit().unwrap();
        let one = FieldSpec::GaussianRational.one();
        let m = vec![vec![one.clone(), i.clone()], vec![i.clone(), -one.clone()]];
        assert_eq!(rank_bareiss(&m, 2).unwrap(), 1);
    }
}
