//! Degree-bounded ideal membership as a linear system: `f = sum q_i g_i`
//! with each cofactor ranging over the monomials of admissible degree.

use std::collections::BTreeMap;

use crate::field::FieldElement;
use crate::linalg::{self, LinalgConfig, SparseMatrix};
use crate::poly::{monomials_of, monomials_of_degree, Monomial, MultiDegree, Polynomial};

use super::RelationError;

/// Degree of an ideal slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceDegree {
    Total(u32),
    Multi(MultiDegree),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipCertificate {
    pub target: Polynomial,
    pub generators: Vec<Polynomial>,
    pub cofactors: Vec<Polynomial>,
    pub bound: u32,
    pub primes: Vec<u64>,
}

impl MembershipCertificate {
    /// Rechecks `f = sum q_i g_i` exactly, together with the degree bounds.
    pub fn verify(&self) -> bool {
        let mut sum = Polynomial::zero(self.target.ring());
        for (q, g) in self.cofactors.iter().zip(&self.generators) {
            if q.is_zero() {
                continue;
            }
            let (Some(dq), Some(dg)) = (max_degree(q), max_degree(g)) else { return false };
            if dq + dg > self.bound {
                return false;
            }
            sum = &sum + &(q * g);
        }
        self.cofactors.len() == self.generators.len() && sum == self.target
    }
}

fn max_degree(p: &Polynomial) -> Option<u32> {
    p.terms().keys().map(|m| m.degree()).max()
}

/// Columns `m * g_i` of a membership system, tagged by generator.
struct Columns {
    owner: Vec<usize>,
    shifts: Vec<Monomial>,
}

fn columns(gens: &[Polynomial], degree: SliceDegree, exact: bool) -> Result<Columns, RelationError> {
    let mut owner = Vec::new();
    let mut shifts = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let nvars = g.ring().nvars();
        let ms: Vec<Monomial> = match degree {
            SliceDegree::Multi(md) => {
                let Some(gd) = g.multidegree() else { return Err(RelationError::Inhomogeneous(i)) };
                if md.0.iter().zip(gd.0).any(|(&a, b)| a < b) {
                    continue;
                }
                let diff = MultiDegree([0, 1, 2, 3].map(|k| md.0[k] - gd.0[k]));
                monomials_of(diff, g.ring())?
            }
            SliceDegree::Total(d) => {
                let gd = max_degree(g).unwrap_or(0);
                if gd > d {
                    continue;
                }
                if exact {
                    monomials_of_degree(d - gd, nvars)
                } else {
                    (0..=d - gd).flat_map(|k| monomials_of_degree(k, nvars)).collect()
                }
            }
        };
        for m in ms {
            owner.push(i);
            shifts.push(m);
        }
    }
    Ok(Columns { owner, shifts })
}

/// Sparse matrix whose columns are the given polynomials, with rows the
/// monomials occurring in them or in `extra`.
fn assemble(cols: &[Polynomial], extra: &[&Polynomial]) -> Result<(SparseMatrix, BTreeMap<Monomial, usize>), RelationError> {
    let ring = cols.first().map(|p| p.ring()).or_else(|| extra.first().map(|p| p.ring())).expect("nonempty system");
    let mut row_of: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in cols.iter().chain(extra.iter().copied()) {
        for m in p.terms().keys() {
            row_of.entry(m.clone()).or_insert(0);
        }
    }
    for (k, v) in row_of.values_mut().enumerate() {
        *v = k;
    }
    let mut rows: Vec<Vec<(usize, FieldElement)>> = vec![Vec::new(); row_of.len()];
    for (j, p) in cols.iter().enumerate() {
        for (m, c) in p.terms() {
            rows[row_of[m]].push((j, c.clone()));
        }
    }
    let mut mat = SparseMatrix::new(ring.field().clone(), 0, cols.len());
    for r in rows {
        mat.push_row(r)?;
    }
    Ok((mat, row_of))
}

fn check_ring(f: &Polynomial, gens: &[Polynomial]) -> Result<(), RelationError> {
    if gens.iter().any(|g| !g.same_ring(f)) {
        return Err(RelationError::RingMismatch);
    }
    Ok(())
}

/// Basis of the degree-`d` part of the ideal generated by `gens`: a maximal
/// independent subset of the products `g_i * m`.
pub fn ideal_slice(gens: &[Polynomial], d: SliceDegree, cfg: &LinalgConfig) -> Result<Vec<Polynomial>, RelationError> {
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    check_ring(first, gens)?;
    let cols = columns(gens, d, true)?;
    let products: Vec<Polynomial> = cols.owner.iter().zip(&cols.shifts).map(|(&i, m)| gens[i].shift(m)).collect();
    let products: Vec<Polynomial> = match d {
        SliceDegree::Total(deg) => products.into_iter().map(|p| homogeneous_part(&p, deg)).collect(),
        SliceDegree::Multi(_) => products,
    };
    if products.is_empty() {
        return Ok(Vec::new());
    }
    let (mat, _) = assemble(&products, &[])?;
    let cert = linalg::kernel(&mat, cfg)?;
    Ok(cert.pivot_cols.iter().map(|&c| products[c].clone()).collect())
}

fn homogeneous_part(p: &Polynomial, d: u32) -> Polynomial {
    Polynomial::from_terms(p.ring(), p.terms().iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())))
        .expect("same ring")
}

fn homogeneous_setting(f: &Polynomial, gens: &[Polynomial]) -> bool {
    f.is_homogeneous() && gens.iter().all(|g| g.is_homogeneous())
}

/// Cofactor system for `f` (plus optional leading columns) and its solution.
/// Scalar multipliers, cofactors and the primes used.
type SystemSolution = (Vec<FieldElement>, Vec<Polynomial>, Vec<u64>);

fn solve_system(
    f: &Polynomial,
    lead: &[Polynomial],
    gens: &[Polynomial],
    bound: u32,
    cfg: &LinalgConfig,
) -> Result<Option<SystemSolution>, RelationError> {
    check_ring(f, gens)?;
    let fdeg = max_degree(f).unwrap_or(0);
    if fdeg > bound {
        return Err(RelationError::Bound { bound, degree: fdeg });
    }
    // for homogeneous data only the degree of f matters
    let exact = homogeneous_setting(f, gens) && lead.iter().all(|g| g.is_homogeneous()) && !f.is_zero();
    let degree = SliceDegree::Total(if exact { fdeg } else { bound });
    let cols = columns(gens, degree, exact)?;
    let mut polys: Vec<Polynomial> = lead.to_vec();
    polys.extend(cols.owner.iter().zip(&cols.shifts).map(|(&i, m)| gens[i].shift(m)));
    let zero_cofactors = || gens.iter().map(|g| Polynomial::zero(g.ring())).collect::<Vec<_>>();
    if f.is_zero() {
        return Ok(Some((vec![f.ring().field().zero(); lead.len()], zero_cofactors(), Vec::new())));
    }
    if polys.is_empty() {
        return Ok(None);
    }
    let (mat, row_of) = assemble(&polys, &[f])?;
    let mut rhs = vec![f.ring().field().zero(); mat.nrows()];
    for (m, c) in f.terms() {
        rhs[row_of[m]] = c.clone();
    }
    let Some(sol) = linalg::solve(&mat, &rhs, cfg)? else { return Ok(None) };
    let scalars = sol.particular[..lead.len()].to_vec();
    let mut cof_terms: Vec<Vec<(Monomial, FieldElement)>> = vec![Vec::new(); gens.len()];
    for (k, x) in sol.particular[lead.len()..].iter().enumerate() {
        if !x.is_zero() {
            cof_terms[cols.owner[k]].push((cols.shifts[k].clone(), x.clone()));
        }
    }
    let cofactors = cof_terms
        .into_iter()
        .map(|t| Polynomial::from_terms(f.ring(), t))
        .collect::<Result<_, _>>()?;
    Ok(Some((scalars, cofactors, sol.primes)))
}

/// Cofactors with `f = sum q_i g_i` and `deg q_i <= bound - deg g_i`, or
/// `None` when `f` is not in that span. For homogeneous `f` and generators
/// with `bound = deg f` this decides ideal membership.
pub fn membership(
    f: &Polynomial,
    gens: &[Polynomial],
    bound: u32,
    cfg: &LinalgConfig,
) -> Result<Option<MembershipCertificate>, RelationError> {
    let Some((_, cofactors, primes)) = solve_system(f, &[], gens, bound, cfg)? else { return Ok(None) };
    let cert = MembershipCertificate { target: f.clone(), generators: gens.to_vec(), cofactors, bound, primes };
    if !cert.verify() {
        return Err(RelationError::Uncertified("cofactor identity failed".into()));
    }
    Ok(Some(cert))
}

/// Scalar `c` and a certificate that `f - c g` lies in the bounded span of
/// `gens`, if the joint system is solvable.
pub fn proportional_mod_ideal(
    f: &Polynomial,
    g: &Polynomial,
    gens: &[Polynomial],
    bound: u32,
    cfg: &LinalgConfig,
) -> Result<Option<(FieldElement, MembershipCertificate)>, RelationError> {
    if !g.same_ring(f) {
        return Err(RelationError::RingMismatch);
    }
    let Some((scalars, cofactors, primes)) = solve_system(f, std::slice::from_ref(g), gens, bound, cfg)? else {
        return Ok(None);
    };
    let c = scalars[0].clone();
    let target = f - &g.scale(&c);
    let cert = MembershipCertificate { target, generators: gens.to_vec(), cofactors, bound, primes };
    if !cert.verify() {
        return Err(RelationError::Uncertified("cofactor identity failed".into()));
    }
    Ok(Some((c, cert)))
}
