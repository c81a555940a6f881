//! Checks on the decic `f` in `u0..u4`.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::modular::{random_prime, ModPrime};
use crate::field::FieldElement;
use crate::linalg::dense::rank_bareiss;
use crate::linalg::modp::{kernel_vectors, Echelon};
use crate::poly::{monomials_of_degree, parse, Monomial, Polynomial};
use crate::relations::{ideal_slice, membership, proportional_mod_ideal, SliceDegree};
use crate::verify::catalog::{self, SURFACES, TACNODES};
use crate::verify::context::Context;

use super::{list, CheckResult, Rec};

/// `(a^2, b)^2 = (a^4, a^2 b, b^2)`.
fn tacnode_ideal(a: &Polynomial, b: &Polynomial) -> Vec<Polynomial> {
    let a2 = a.pow(2);
    vec![a2.pow(2), &a2 * b, b.pow(2)]
}

pub(super) fn singular(ctx: &Context, rec: &mut Rec) -> CheckResult {
    let f = ctx.f()?;
    let cfg = &ctx.cfg.linalg;
    let mut targets = vec![("f".to_string(), f.clone())];
    for k in 0..5 {
        targets.push((format!("df/du{k}"), f.partial(k)));
    }
    let jobs: Vec<(usize, usize)> = (0..SURFACES.len()).flat_map(|s| (0..targets.len()).map(move |t| (s, t))).collect();
    let results = crate::par::map(&jobs, |&(s, t)| {
        let (_, a, b) = SURFACES[s];
        let (_, p) = &targets[t];
        let bound = p.total_degree().unwrap_or(0);
        membership(p, &[ctx.t(a).clone(), ctx.t(b).clone()], bound, cfg)
    });
    let mut found = vec![0usize; SURFACES.len()];
    let mut primes = Vec::new();
    for (&(s, t), r) in jobs.iter().zip(results) {
        match r? {
            Some(cert) => {
                found[s] += 1;
                primes.extend(cert.primes);
            }
            None => {
                let (name, a, b) = SURFACES[s];
                rec.note(format!("no certificate for {} in ({a}, {b}) of {name}", targets[t].0));
            }
        }
    }
    for (s, (name, a, b)) in SURFACES.iter().enumerate() {
        rec.claim(format!("{name} = {{{a} = {b} = 0}}: f and partials in the ideal"), format!("{}/6", found[s]), "6/6");
    }

    let tac = crate::par::map(&TACNODES, |&(a, b)| membership(f, &tacnode_ideal(ctx.t(a), ctx.t(b)), 10, cfg));
    for ((a, b), r) in TACNODES.iter().zip(tac) {
        rec.claim(format!("f in ({a}^2, {b})^2"), r?.is_some(), true);
    }

    let alternates = [("Q1", ["H0", "Q0"]), ("Q0", ["H0", "Q1"]), ("G1", ["H0", "G0"]), ("G0", ["H0", "G1"])];
    for (p, [a, b]) in alternates {
        let target = ctx.t(p);
        let deg = target.total_degree().unwrap_or(0);
        let cert = membership(target, &[ctx.t(a).clone(), ctx.t(b).clone()], deg, cfg)?;
        rec.claim(format!("{p} in ({a}, {b})"), cert.is_some(), true);
    }

    // {Q1 = H2 = 0}: Q1 at u2 = u3 splits into two planes
    let q1 = ctx.t("Q1").replace_var("u2", &Polynomial::var(&ctx.ring5, 3))?;
    let planes = parse("(u0 + u4 - u3)*(u0 + u4 + u3)", &ctx.ring5)?;
    rec.claim("Q1 at u2 = u3 is (u0 + u4 - u3)(u0 + u4 + u3)", q1 == planes, true);
    primes.sort_unstable();
    primes.dedup();
    rec.derived("membership primes", list(&primes));
    Ok(())
}

fn hessian_rank(hess: &[Vec<Polynomial>], point: &[FieldElement]) -> Result<usize, Box<dyn std::error::Error + Send + Sync>> {
    let rows: Vec<Vec<FieldElement>> =
        hess.iter().map(|r| r.iter().map(|h| h.evaluate(point)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    Ok(rank_bareiss(&rows, 5)?)
}

pub(super) fn hessians(ctx: &Context, rec: &mut Rec) -> CheckResult {
    let f = ctx.f()?;
    let grad: Vec<Polynomial> = (0..5).map(|i| f.partial(i)).collect();
    let hess: Vec<Vec<Polynomial>> = grad.iter().map(|g| (0..5).map(|j| g.partial(j)).collect()).collect();
    let points = catalog::hessian_points();
    let mut ranks = Vec::new();
    let mut expected = Vec::new();
    let mut singular = true;
    let mut invariant = true;
    for hp in &points {
        let r = hessian_rank(&hess, &hp.coords)?;
        ranks.push(r);
        expected.push(hp.expected_rank);
        singular &= f.evaluate(&hp.coords)?.is_zero();
        for g in &grad {
            singular &= g.evaluate(&hp.coords)?.is_zero();
        }
        for lambda in [2, -3] {
            let scaled: Vec<FieldElement> = hp.coords.iter().map(|x| x * &hp.field.from_i64(lambda)).collect();
            invariant &= hessian_rank(&hess, &scaled)? == r;
        }
        rec.derived(format!("rank at {} {}", hp.surface, hp.text), r);
    }
    rec.claim("ranks at S3,0 S3,1 S4 S6 S1 S2,0 S2,1", list(&ranks), list(&expected));
    rec.derived("f and its gradient vanish at every point", singular);
    rec.require(singular, "some test point is not a singular point of f");
    rec.derived("ranks unchanged under rescaling by 2 and -3", invariant);
    rec.require(invariant, "Hessian rank changed under rescaling");
    Ok(())
}

pub(super) fn smooth_point(ctx: &Context, rec: &mut Rec) -> CheckResult {
    let f = ctx.f()?;
    let (k, p) = catalog::smooth_point();
    let t = k.generator().expect("extension");
    let d0 = f.partial(0);
    rec.claim("f(1, t, 3, 1, 0)", f.evaluate(&p)?, "0");
    let v = d0.evaluate(&p)?;
    rec.claim("df/du0 at p is nonzero", !v.is_zero(), true);
    rec.derived("df/du0 at p", &v);
    let conj: Vec<FieldElement> = p.iter().map(|x| x.map_generator(&-&t)).collect::<Result<_, _>>()?;
    rec.derived("f at the conjugate point (t -> -t)", f.evaluate(&conj)?);
    let vc = d0.evaluate(&conj)?;
    rec.derived("df/du0 at the conjugate point is nonzero", !vc.is_zero());
    rec.require(!vc.is_zero() && f.evaluate(&conj)?.is_zero(), "conjugate point is not a smooth point");
    rec.require(v.map_generator(&-&t)? == vc, "conjugation does not commute with evaluation");
    Ok(())
}

pub(super) fn sections(ctx: &Context, rec: &mut Rec) -> CheckResult {
    let f = ctx.f()?;
    let ring = &ctx.ring5;
    let env: HashMap<String, Polynomial> = ctx.table.clone();
    let zero = Polynomial::zero(ring);
    let u3 = Polynomial::var(ring, 3);
    let cases: [(&str, &str, &Polynomial, &str); 3] = [
        ("u0", "u0 = 0", &zero, "(Q0*G0)^2"),
        ("u1", "u1 = 0", &zero, "(Q1*G0)^2"),
        ("u2", "u2 = u3", &u3, "(H3*F0)^2"),
    ];
    for (var, label, image, text) in cases {
        let lhs = f.replace_var(var, image)?;
        let rhs = crate::poly::parse_with(text, ring, &env)?.replace_var(var, image)?;
        match lhs.proportional(&rhs) {
            Some(c) if !c.is_zero() => rec.derived(format!("f / {text} at {label}"), c),
            _ => {
                rec.require(false, format!("f at {label} is not a multiple of {text}"));
            }
        }
    }
    let target = crate::poly::parse_with("H0^2*G1^2*u2*u3", ring, &env)?;
    match proportional_mod_ideal(f, &target, &[ctx.t("Q0").clone()], 10, &ctx.cfg.linalg)? {
        Some((c, cert)) if !c.is_zero() => {
            rec.derived("f / (H0^2*G1^2*u2*u3) mod Q0", c);
            rec.require(cert.verify(), "cofactor identity failed");
        }
        _ => {
            rec.require(false, "f is not a multiple of H0^2*G1^2*u2*u3 modulo Q0");
        }
    }
    rec.note("the planes Pi_2, Pi_3 are read as {u2 = u4 = 0} and {u3 = u4 = 0}");
    Ok(())
}

fn residues(p: &Polynomial, index: &HashMap<Monomial, usize>, n: usize, prime: &ModPrime) -> Option<Vec<u64>> {
    let mut row = vec![0u64; n];
    for (m, c) in p.terms() {
        row[*index.get(m)?] = prime.from_rational(&c.as_rational()?).ok()?;
    }
    Some(row)
}

/// Functionals on degree-`d` forms vanishing on the degree-`d` part of the
/// ideal, computed mod `prime`, with the rank of that part mod `prime`.
fn annihilator(gens: &[Polynomial], d: u32, prime: &ModPrime) -> Option<(Vec<Vec<u64>>, usize)> {
    let monos = monomials_of_degree(d, 5);
    let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.total_degree()?;
        if dg > d {
            continue;
        }
        for m in monomials_of_degree(d - dg, 5) {
            rows.push(residues(&g.shift(&m), &index, monos.len(), prime)?);
        }
    }
    let e = Echelon::dense(rows, monos.len(), *prime);
    Some((kernel_vectors(&e), e.rank()))
}

/// The space of decics whose partials lie in every surface ideal and which
/// lie in the three tacnode ideals.
///
/// Mod `p` the conditions are functionals killing each ideal slice. When
/// the slice has the same rank mod `p` as over `Q`, these functionals span
/// the reduction of the rational ones, so the rank of the stacked system mod
/// `p` is at most its rank over `Q`. A nullity of 1 mod `p` together with the
/// exact certificates for `f` then pins the dimension over `Q` to 1.
pub(super) fn uniqueness(ctx: &Context, rec: &mut Rec) -> CheckResult {
    let f = ctx.f()?;
    let cfg = &ctx.cfg.linalg;
    let m10 = monomials_of_degree(10, 5);
    let m9 = monomials_of_degree(9, 5);
    let index9: HashMap<Monomial, usize> = m9.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
    let index10: HashMap<Monomial, usize> = m10.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();

    let surface_gens: Vec<Vec<Polynomial>> = SURFACES.iter().map(|(_, a, b)| vec![ctx.t(a).clone(), ctx.t(b).clone()]).collect();
    let tac_gens: Vec<Vec<Polynomial>> = TACNODES.iter().map(|(a, b)| tacnode_ideal(ctx.t(a), ctx.t(b))).collect();
    // exact ranks of the slices and exact certificates for f
    let mut exact_ranks = Vec::new();
    let mut f_ok = true;
    for gens in &surface_gens {
        exact_ranks.push(ideal_slice(gens, SliceDegree::Total(9), cfg)?.len());
        for k in 0..5 {
            f_ok &= membership(&f.partial(k), gens, 9, cfg)?.is_some();
        }
    }
    for gens in &tac_gens {
        exact_ranks.push(ideal_slice(gens, SliceDegree::Total(10), cfg)?.len());
        f_ok &= membership(f, gens, 10, cfg)?.is_some();
    }
    rec.claim("f satisfies every condition (exact certificates)", f_ok, true);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6465_6369);
    let mut used: Vec<u64> = Vec::new();
    let mut nullities = Vec::new();
    let mut ranks_agree = true;
    for _ in 0..2 {
        let prime = random_prime(&mut rng, &used);
        used.push(prime.modulus());
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut k = 0;
        for gens in &surface_gens {
            let (lams, rank) = annihilator(gens, 9, &prime).ok_or("non-rational ideal")?;
            ranks_agree &= rank == exact_ranks[k];
            k += 1;
            for i in 0..5 {
                for lam in &lams {
                    // lam(dF/du_i) as a functional on the coefficients of F
                    let row: Vec<u64> = m10
                        .iter()
                        .map(|m| {
                            let e = m.exponents()[i];
                            if e == 0 {
                                return 0;
                            }
                            let mut lower = m.clone();
                            lower.0[i] -= 1;
                            prime.mul(e as u64, lam[index9[&lower]])
                        })
                        .collect();
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        for gens in &tac_gens {
            let (mus, rank) = annihilator(gens, 10, &prime).ok_or("non-rational ideal")?;
            ranks_agree &= rank == exact_ranks[k];
            k += 1;
            rows.extend(mus);
        }
        let fv = residues(f, &index10, m10.len(), &prime).ok_or("f is not rational")?;
        let satisfied = rows.iter().all(|r| r.iter().zip(&fv).fold(0, |acc, (&x, &y)| prime.add(acc, prime.mul(x, y))) == 0);
        rec.require(satisfied, format!("f violates a condition mod {}", prime.modulus()));
        let conditions = rows.len();
        let e = Echelon::dense(rows, m10.len(), prime);
        nullities.push(m10.len() - e.rank());
        rec.derived(format!("conditions mod prime {}", nullities.len()), conditions);
    }
    rec.derived("uniqueness primes", list(&used));
    rec.derived("slice ranks over Q", list(&exact_ranks));
    rec.claim("slice ranks mod p equal the ranks over Q", ranks_agree, true);
    rec.derived("solution dimension mod each prime", list(&nullities));
    let dim = if ranks_agree && f_ok && nullities.contains(&1) { "1".to_string() } else { "undetermined".to_string() };
    rec.claim("dimension of decics singular along the surfaces", dim, 1);
    Ok(())
}
