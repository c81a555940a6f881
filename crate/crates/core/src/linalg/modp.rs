//! Row echelon forms over a word-sized prime field.

use crate::field::modular::ModPrime;
use crate::par;

/// Row echelon form of a matrix mod p.
///
/// `rows[k]` has a leading 1 in column `pivots[k]` and zeros to its left;
/// `sources[k]` is the input row it was built from. The rows indexed by
/// `sources` restricted to the columns in `pivots` form a nonsingular minor.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub prime: ModPrime,
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub sources: Vec<usize>,
    pub rows: Vec<Vec<u64>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Dense forward elimination. Pivots are taken column by column, the
    /// first remaining row with a nonzero entry winning; the elimination
    /// of the rows below each pivot runs in parallel.
    pub fn dense(rows: Vec<Vec<u64>>, ncols: usize, prime: ModPrime) -> Self {
        let mut work: Vec<(usize, Vec<u64>)> = rows.into_iter().enumerate().collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == work.len() {
                break;
            }
            let Some(found) = (r..work.len()).find(|&k| work[k].1[c] != 0) else {
                continue;
            };
            work.swap(r, found);
            let inv = prime.inv(work[r].1[c]).expect("nonzero pivot");
            for x in &mut work[r].1[c..] {
                *x = prime.mul(*x, inv);
            }
            let (head, tail) = work.split_at_mut(r + 1);
            let pivot_row = &head[r].1;
            par::for_each_mut(tail, |(_, row)| {
                let f = row[c];
                if f != 0 {
                    let nf = prime.neg(f);
                    for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                        *x = prime.reduce(*x + nf * y);
                    }
                }
            });
            pivots.push(c);
            r += 1;
        }
        work.truncate(r);
        let (sources, rows) = work.into_iter().unzip();
        Self { prime, ncols, pivots, sources, rows }
    }

    /// Echelon form by row insertion, feeding sparse rows in order of
    /// increasing length so that short rows claim pivots first and fill
    /// stays low.
    pub fn sparse(rows: &[Vec<(usize, u64)>], ncols: usize, prime: ModPrime) -> Self {
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&k| (rows[k].len(), k));
        let mut pivot_of: Vec<Option<usize>> = vec![None; ncols];
        let mut basis: Vec<(usize, usize, Vec<u64>)> = Vec::new();
        let mut dense = vec![0u64; ncols];
        for k in order {
            if basis.len() == ncols {
                break;
            }
            dense.iter_mut().for_each(|x| *x = 0);
            let mut first = ncols;
            for &(c, v) in &rows[k] {
                dense[c] = v;
                first = first.min(c);
            }
            let mut lead = None;
            for c in first..ncols {
                let f = dense[c];
                if f == 0 {
                    continue;
                }
                match pivot_of[c] {
                    Some(b) => {
                        let nf = prime.neg(f);
                        let brow = &basis[b].2;
                        for (x, &y) in dense[c..].iter_mut().zip(&brow[c..]) {
                            if y != 0 {
                                *x = prime.reduce(*x + nf * y);
                            }
                        }
                    }
                    None => {
                        lead = Some(c);
                        break;
                    }
                }
            }
            if let Some(c) = lead {
                let inv = prime.inv(dense[c]).expect("nonzero pivot");
                let mut row = vec![0u64; ncols];
                for j in c..ncols {
                    row[j] = prime.mul(dense[j], inv);
                }
                pivot_of[c] = Some(basis.len());
                basis.push((c, k, row));
            }
        }
        basis.sort_by_key(|b| b.0);
        let mut pivots = Vec::with_capacity(basis.len());
        let mut sources = Vec::with_capacity(basis.len());
        let mut out = Vec::with_capacity(basis.len());
        for (c, k, row) in basis {
            pivots.push(c);
            sources.push(k);
            out.push(row);
        }
        Self { prime, ncols, pivots, sources, rows: out }
    }

    /// Solves `R_pp x = R[.., col]` by back substitution, where `R_pp` is the
    /// unit upper triangular block on the pivot columns. With `col` the
    /// appended right-hand side this is the solution vanishing at the free
    /// columns; it equals column `col` of the reduced echelon form.
    pub fn back_substitute(&self, col: usize) -> Vec<u64> {
        let prime = self.prime;
        let r = self.rows.len();
        let mut x = vec![0u64; r];
        for k in (0..r).rev() {
            let row = &self.rows[k];
            let mut acc = row[col];
            for j in k + 1..r {
                let a = row[self.pivots[j]];
                if a != 0 && x[j] != 0 {
                    acc = prime.sub(acc, prime.mul(a, x[j]));
                }
            }
            x[k] = acc;
        }
        x
    }

    /// Canonical kernel basis: one vector per free column `f`, with 1 at `f`,
    /// 0 at the other free columns and the pivot entries fixed by `R v = 0`
    /// (these are `-R[k][f]` of the reduced form). Only the pivot entries
    /// are returned, as `values[j][k]` for the `j`-th free column.
    pub fn kernel_pivot_entries(&self) -> Vec<Vec<u64>> {
        let prime = self.prime;
        let free = self.free_columns();
        par::map(&free, |&f| self.back_substitute(f).into_iter().map(|x| prime.neg(x)).collect())
    }
}

/// Expands pivot entries into full kernel vectors.
pub fn kernel_vectors(e: &Echelon) -> Vec<Vec<u64>> {
    let free = e.free_columns();
    let entries = e.kernel_pivot_entries();
    free.iter()
        .zip(entries)
        .map(|(&f, vals)| {
            let mut v = vec![0u64; e.ncols];
            v[f] = 1;
            for (k, x) in vals.into_iter().enumerate() {
                v[e.pivots[k]] = x;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat_vec(p: &ModPrime, rows: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
        rows.iter()
            .map(|r| r.iter().zip(v).fold(0, |acc, (&a, &b)| p.add(acc, p.mul(a, b))))
            .collect()
    }

    fn to_sparse(rows: &[Vec<u64>]) -> Vec<Vec<(usize, u64)>> {
        rows.iter()
            .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, x)).collect())
            .collect()
    }

    #[test]
    fn small_kernel() {
        let p = ModPrime::new(101);
        let rows = vec![vec![1, 1, 0], vec![2, 2, 0]];
        let e = Echelon::dense(rows.clone(), 3, p);
        assert_eq!(e.pivots, vec![0]);
        let k = kernel_vectors(&e);
        assert_eq!(k, vec![vec![100, 1, 0], vec![0, 0, 1]]);
        let s = Echelon::sparse(&to_sparse(&rows), 3, p);
        assert_eq!(kernel_vectors(&s), k);
    }

    proptest! {
        #[test]
        fn engines_agree(
            rows in proptest::collection::vec(proptest::collection::vec(0u64..5, 7), 1..9)
        ) {
            let p = ModPrime::new(5);
            let d = Echelon::dense(rows.clone(), 7, p);
            let s = Echelon::sparse(&to_sparse(&rows), 7, p);
            prop_assert_eq!(&d.pivots, &s.pivots);
            let kd = kernel_vectors(&d);
            let ks = kernel_vectors(&s);
            prop_assert_eq!(&kd, &ks);
            prop_assert_eq!(kd.len() + d.rank(), 7);
            for v in &kd {
                prop_assert!(mat_vec(&p, &rows, v).iter().all(|&x| x == 0));
            }
        }
    }
}
