//! Subcommands. Each one produces a report; the exit code depends only on
//! the statuses in it.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use syzcert::field::{FieldElement, FieldSpec};
use syzcert::linalg::dense::rank_bareiss;
use syzcert::linalg::LinalgConfig;
use syzcert::poly::{monomials_of, parse, MultiDegree, Polynomial, Ring};
use syzcert::relations::{height_bits, membership, relation_space, RelationError, RelationOptions};
use syzcert::symmetry::{apply_action, isotypic_slice, orbits, ActionSpec, GroupElement, ProductPoint};
use syzcert::verify::{self, catalog, golden, CheckRecord, Context, RelationSource, Status, Value, VerificationReport, VerifyConfig};

use crate::input::{read_file, split_names, Input};

/// Usage or input problems; they map to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "syzcert", version, about = "Exact syzygy and singularity certificates")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Primes tried by the multi-modular solvers (at least 2).
    #[arg(long, global = true, default_value_t = 8)]
    pub modular_primes: usize,
    /// Worker threads (at least 1); defaults to all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for prime selection.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Matrices at most this size in both dimensions are solved densely.
    #[arg(long, global = true, default_value_t = 64)]
    pub dense_threshold: usize,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

impl Common {
    pub fn linalg(&self) -> anyhow::Result<LinalgConfig> {
        if self.modular_primes < 2 {
            return Err(usage("--modular-primes must be at least 2"));
        }
        if self.threads == Some(0) {
            return Err(usage("--threads must be at least 1"));
        }
        Ok(LinalgConfig { max_primes: self.modular_primes, dense_threshold: self.dense_threshold, seed: self.seed })
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Relations of one degree among named polynomials.
    Rels {
        #[arg(long)]
        input: String,
        /// Comma-separated names from the input file.
        #[arg(long)]
        names: String,
        #[arg(long)]
        degree: u32,
    },
    /// Degree-bounded ideal membership with an exact certificate.
    Membership {
        #[arg(long)]
        input: String,
        #[arg(long)]
        target: String,
        /// Comma-separated generator names.
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        bound: u32,
    },
    /// A simultaneous eigenspace of named actions in one multidegree.
    Isotypic {
        #[arg(long)]
        input: String,
        /// `<action>=<scalar>`, e.g. `rho1_g=-1`; repeatable.
        #[arg(long = "action", required = true)]
        actions: Vec<String>,
        /// Four comma-separated degrees.
        #[arg(long, default_value = "1,1,1,1")]
        multidegree: String,
        /// Names expected to lie in the eigenspace.
        #[arg(long)]
        names: Option<String>,
    },
    /// Orbits of product points under the group of order 16.
    Orbits {
        /// Input file whose ring fixes the field (default `Q(i)`).
        #[arg(long)]
        input: Option<String>,
        /// `(a:b),(c:d),(e:f),(g:h)`; repeatable.
        #[arg(long = "point")]
        points: Vec<String>,
        /// Built-in point set: base-points, fix-g2, fix-h2 or fix-g2h2.
        #[arg(long)]
        set: Option<String>,
        /// Use the order-32 group including the coordinate swap.
        #[arg(long)]
        extended: bool,
        /// Names evaluated at every point; only points where all vanish are kept.
        #[arg(long)]
        names: Option<String>,
    },
    /// Rank of the Hessian of a named polynomial at a point.
    Hessian {
        #[arg(long)]
        input: String,
        #[arg(long)]
        target: String,
        /// Comma-separated coordinates in ring order.
        #[arg(long)]
        point: String,
    },
    /// The registered checks of the built-in constructions.
    VerifyPaper {
        /// Check id; repeatable.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// All non-optional checks.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        include_optional: bool,
        /// Largest degree swept by the relation check.
        #[arg(long, default_value_t = 10)]
        max_degree: u32,
        /// Read the degree-10 relations from the shipped files instead of
        /// recomputing them.
        #[arg(long)]
        frozen_relations: bool,
        /// Golden values to compare with, instead of the built-in ones.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Merge this run's derived values into a golden file.
        #[arg(long)]
        write_golden: Option<PathBuf>,
    },
}

/// 0 when every check passes, 1 otherwise.
pub fn exit_code(report: &VerificationReport) -> i32 {
    if report.all_pass() {
        0
    } else {
        1
    }
}

pub fn emit_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Human => report.to_human(),
        Format::Machine => report.to_machine(),
    }
}

fn derived(rec: &mut CheckRecord, key: impl Into<String>, value: impl ToString) {
    rec.values.push(Value { key: key.into(), value: value.to_string(), provenance: syzcert::verify::Provenance::Derived, expected: None });
}

fn constant(text: &str, field: &FieldSpec) -> anyhow::Result<FieldElement> {
    let ring = Ring::new(field.clone(), &[])?;
    let p = parse(text, &ring).map_err(|e| usage(format!("bad scalar `{text}`: {e}")))?;
    Ok(p.coefficient(&syzcert::poly::Monomial::one(0)))
}

/// Malformed inputs are usage errors; failed certification is not.
fn relation_error(e: RelationError) -> anyhow::Error {
    match e {
        RelationError::Uncertified(_) | RelationError::Linalg(_) => e.into(),
        other => usage(other.to_string()),
    }
}

fn load(path: &str) -> anyhow::Result<Input> {
    read_file(path).map_err(|e| usage(e.to_string()))
}

fn names(inp: &Input, list: &str) -> anyhow::Result<Vec<Polynomial>> {
    inp.get_list(list).map_err(|e| usage(e.to_string()))
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> anyhow::Result<VerificationReport> {
    let linalg = cli.common.linalg()?;
    let run = || run_command(&cli.command, &linalg);
    match cli.common.threads {
        Some(n) => syzcert::par::with_threads(n, run),
        None => run(),
    }
}

fn run_command(cmd: &Command, linalg: &LinalgConfig) -> anyhow::Result<VerificationReport> {
    let mut report = VerificationReport::default();
    match cmd {
        Command::Rels { input, names: list, degree } => {
            if *degree == 0 {
                return Err(usage("--degree must be at least 1"));
            }
            let inp = load(input)?;
            let polys = names(&inp, list)?;
            let vars: Vec<String> = (0..polys.len()).map(|k| format!("v{k}")).collect();
            let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
            let opts = RelationOptions { linalg: linalg.clone(), ..RelationOptions::default() };
            let space = relation_space(&polys, *degree, &vars, &opts).map_err(relation_error)?;
            let mut rec = CheckRecord::new("rels");
            derived(&mut rec, "inputs", list);
            derived(&mut rec, "degree", degree);
            derived(&mut rec, "dimension", space.dimension());
            derived(&mut rec, "route", format!("{:?}", space.route));
            derived(&mut rec, "columns", space.columns);
            derived(&mut rec, "rank", space.rank);
            for (k, r) in space.basis.iter().enumerate() {
                derived(&mut rec, format!("relation {k} height bits"), height_bits(r));
                derived(&mut rec, format!("relation {k}"), r.to_text());
            }
            report.records.push(rec);
        }
        Command::Membership { input, target, ideal, bound } => {
            let inp = load(input)?;
            let f = inp.get(target).map_err(|e| usage(e.to_string()))?;
            let gens = names(&inp, ideal)?;
            let mut rec = CheckRecord::new("membership");
            derived(&mut rec, "target", target);
            derived(&mut rec, "ideal", ideal);
            derived(&mut rec, "bound", bound);
            match membership(f, &gens, *bound, linalg).map_err(relation_error)? {
                Some(cert) => {
                    derived(&mut rec, "member", true);
                    for (name, q) in split_names(ideal).zip(&cert.cofactors) {
                        derived(&mut rec, format!("cofactor of {name}"), q.to_text());
                    }
                    derived(&mut rec, "certificate verified", cert.verify());
                }
                None => {
                    derived(&mut rec, "member", false);
                    rec.status = Status::Fail;
                    rec.notes.push(format!("{target} is not in the ideal up to degree {bound}"));
                }
            }
            report.records.push(rec);
        }
        Command::Isotypic { input, actions, multidegree, names: list } => {
            let inp = load(input)?;
            let field = inp.ring.field().clone();
            let degs: Vec<u32> = split_names(multidegree).map(str::parse).collect::<Result<_, _>>().map_err(|_| usage("bad --multidegree"))?;
            let degs: [u32; 4] = degs.try_into().map_err(|_| usage("--multidegree needs four entries"))?;
            let md = MultiDegree(degs);
            let mut gens = Vec::new();
            for a in actions {
                let (name, scalar) = a.split_once('=').ok_or_else(|| usage(format!("expected <action>=<scalar>, got `{a}`")))?;
                let spec = ActionSpec::named(name.trim()).map_err(|e| usage(e.to_string()))?;
                gens.push((spec, constant(scalar.trim(), &field)?));
            }
            let slice = isotypic_slice(&inp.ring, &gens, md)?;
            let mut rec = CheckRecord::new("isotypic");
            derived(&mut rec, "multidegree", multidegree);
            derived(&mut rec, "monomials", monomials_of(md, &inp.ring)?.len());
            derived(&mut rec, "dimension", slice.len());
            if let Some(list) = list {
                let members = names(&inp, list)?;
                for (name, p) in split_names(list).zip(members) {
                    let mut inside = p.multidegree() == Some(md);
                    for (spec, c) in &gens {
                        inside &= apply_action(spec, &p)? == p.scale(&field.embed(c)?);
                    }
                    derived(&mut rec, format!("{name} in the eigenspace"), inside);
                    if !inside {
                        rec.status = Status::Fail;
                    }
                }
            }
            report.records.push(rec);
        }
        Command::Orbits { input, points, set, extended, names: list } => {
            let (field, inp) = match input {
                Some(path) => {
                    let inp = load(path)?;
                    (inp.ring.field().clone(), Some(inp))
                }
                None => (FieldSpec::GaussianRational, None),
            };
            let mut pts: Vec<ProductPoint> = match set.as_deref() {
                None => Vec::new(),
                Some("base-points") => catalog::base_points(),
                Some("fix-g2") => catalog::fix_g2(),
                Some("fix-h2") => catalog::fix_h2(),
                Some("fix-g2h2") => catalog::fix_g2h2(),
                Some(other) => return Err(usage(format!("unknown set `{other}`; use base-points, fix-g2, fix-h2 or fix-g2h2"))),
            };
            for t in points {
                pts.push(ProductPoint::parse(t, &field).map_err(|e| usage(e.to_string()))?);
            }
            if pts.is_empty() {
                return Err(usage("give --point or --set"));
            }
            let mut rec = CheckRecord::new("orbits");
            if let Some(list) = list {
                let inp = inp.as_ref().ok_or_else(|| usage("--names needs --input"))?;
                let polys = names(inp, list)?;
                let mut kept = Vec::new();
                for p in pts {
                    let a = p.assignment(&inp.ring)?;
                    let mut zero = true;
                    for q in &polys {
                        zero &= q.evaluate(&a)?.is_zero();
                    }
                    if zero {
                        kept.push(p);
                    }
                }
                derived(&mut rec, format!("points where {list} vanish"), kept.len());
                pts = kept;
            }
            let group = if *extended { GroupElement::all_extended() } else { GroupElement::all() };
            derived(&mut rec, "group order", group.len());
            derived(&mut rec, "points", pts.len());
            match orbits(&pts, &group) {
                Ok(part) => {
                    derived(&mut rec, "orbit sizes", format!("{:?}", part.orbit_sizes()).replace(' ', ""));
                    derived(&mut rec, "free", part.is_free());
                    for (k, o) in part.orbits.iter().enumerate() {
                        derived(&mut rec, format!("orbit {k} representative"), &pts[o[0]]);
                    }
                }
                Err(e) => {
                    rec.status = Status::Fail;
                    rec.error = Some(e.to_string());
                }
            }
            report.records.push(rec);
        }
        Command::Hessian { input, target, point } => {
            let inp = load(input)?;
            let f = inp.get(target).map_err(|e| usage(e.to_string()))?;
            let field = inp.ring.field().clone();
            let coords: Vec<FieldElement> = split_names(point).map(|t| constant(t, &field)).collect::<Result<_, _>>()?;
            if coords.len() != inp.ring.nvars() {
                return Err(usage(format!("--point needs {} coordinates", inp.ring.nvars())));
            }
            let n = inp.ring.nvars();
            let grad: Vec<Polynomial> = (0..n).map(|i| f.partial(i)).collect();
            let mut rows = Vec::new();
            for g in &grad {
                rows.push((0..n).map(|j| g.partial(j).evaluate(&coords)).collect::<Result<Vec<_>, _>>()?);
            }
            let mut rec = CheckRecord::new("hessian");
            derived(&mut rec, "target", target);
            derived(&mut rec, "point", point);
            derived(&mut rec, "value", f.evaluate(&coords)?);
            let singular = grad.iter().map(|g| g.evaluate(&coords)).collect::<Result<Vec<_>, _>>()?.iter().all(FieldElement::is_zero);
            derived(&mut rec, "gradient vanishes", singular);
            derived(&mut rec, "rank", rank_bareiss(&rows, n)?);
            report.records.push(rec);
        }
        Command::VerifyPaper { checks, all, include_optional, max_degree, frozen_relations, golden: golden_path, write_golden } => {
            if *max_degree == 0 {
                return Err(usage("--max-degree must be at least 1"));
            }
            let mut ids: Vec<&str> = checks.iter().map(String::as_str).collect();
            if *all {
                ids.extend(verify::default_ids(*include_optional));
            } else if *include_optional {
                ids.extend(verify::REGISTRY.iter().filter(|c| c.optional).map(|c| c.id));
            }
            if ids.is_empty() {
                return Err(usage(format!("select checks with --check or --all; valid checks: {}", verify::check_ids().join(", "))));
            }
            let golden_values = match golden_path {
                Some(p) => golden::parse(&std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?)
                    .map_err(|e| usage(format!("{}: {e}", p.display())))?,
                None => golden::builtin(),
            };
            let cfg = VerifyConfig {
                linalg: linalg.clone(),
                max_degree: *max_degree,
                relation_source: if *frozen_relations { RelationSource::Golden } else { RelationSource::Compute },
            };
            let ctx = Context::new(cfg);
            report = verify::run(&ctx, &ids, &golden_values).map_err(|e| usage(e.to_string()))?;
            if let Some(path) = write_golden {
                let mut g = match std::fs::read_to_string(path) {
                    Ok(text) => golden::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?,
                    Err(_) => golden::GoldenValues::new(),
                };
                golden::update(&mut g, &report);
                std::fs::write(path, golden::render(&g))?;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, status: Status) -> CheckRecord {
        let mut r = CheckRecord::new(id);
        r.status = status;
        r
    }

    #[test]
    fn empty_report_is_header_only() {
        let report = VerificationReport::default();
        assert_eq!(emit_report(&report, Format::Human).lines().count(), 1);
        let back = VerificationReport::from_machine(&emit_report(&report, Format::Machine)).unwrap();
        assert_eq!(back, report);
        assert_eq!(exit_code(&report), 0);
    }

    #[test]
    fn exit_code_follows_statuses() {
        let mut report = VerificationReport::default();
        report.records.push(record("a", Status::Pass));
        report.records.push(record("b", Status::Skipped));
        assert_eq!(exit_code(&report), 0);
        report.records.push(record("c", Status::Fail));
        assert_eq!(exit_code(&report), 1);
        report.timings_ms.insert("c".into(), 5);
        assert_eq!(exit_code(&report), 1);
    }

    #[test]
    fn prime_budget_and_threads_are_validated() {
        let cli = Cli::try_parse_from(["syzcert", "--modular-primes", "1", "verify-paper", "--all"]).unwrap();
        assert!(execute(&cli).unwrap_err().downcast_ref::<UsageError>().is_some());
        let cli = Cli::try_parse_from(["syzcert", "--threads", "0", "verify-paper", "--all"]).unwrap();
        assert!(execute(&cli).unwrap_err().downcast_ref::<UsageError>().is_some());
    }
}
