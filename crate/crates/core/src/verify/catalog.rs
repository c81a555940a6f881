//! Built-in constants: the rings, the named polynomials and the point lists
//! the checks run on. Everything is given as text in the expression grammar
//! and parsed on demand.

use std::collections::HashMap;
use std::sync::Arc;

use crate::field::{FieldElement, FieldSpec};
use crate::poly::{parse_with, MultiDegree, PolyError, Polynomial, Ring};
use crate::symmetry::{ActionError, ProductPoint};

pub const SOURCE_VARS: [&str; 8] = ["x10", "x11", "x20", "x21", "x30", "x31", "x40", "x41"];
pub const PAIRS: [(&str, &str); 4] = [("x10", "x11"), ("x20", "x21"), ("x30", "x31"), ("x40", "x41")];
pub const TARGET_VARS: [&str; 6] = ["u0", "u1", "u2", "u3", "u4", "u5"];

/// Sign of the product term in `U5`: `Minus` as displayed in the list of
/// quadrics, `Plus` as in the relation script.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum U5Variant {
    Minus,
    Plus,
}

impl U5Variant {
    pub const BOTH: [U5Variant; 2] = [U5Variant::Minus, U5Variant::Plus];

    pub fn name(self) -> &'static str {
        match self {
            U5Variant::Minus => "U5 with -1/2*prod",
            U5Variant::Plus => "U5 with +1/2*prod",
        }
    }
}

pub fn source_ring(field: FieldSpec) -> Arc<Ring> {
    Ring::graded(field, &SOURCE_VARS, PAIRS).expect("valid source ring")
}

/// `u0..u5` over `Q`.
pub fn target_ring6() -> Arc<Ring> {
    Ring::new(FieldSpec::Rational, &TARGET_VARS).expect("valid ring")
}

/// `u0..u4` over `Q`.
pub fn target_ring5() -> Arc<Ring> {
    Ring::new(FieldSpec::Rational, &TARGET_VARS[..5]).expect("valid ring")
}

const F1: &str = "(x20*x30 - x21*x31)*(x11*x40 + x10*x41) - i*(x20*x31 - x21*x30)*(x10*x40 + x11*x41)";
const F2: &str = "(x20*x30 - x21*x31)*(x11*x40 + x10*x41) + i*(x20*x31 - x21*x30)*(x10*x40 + x11*x41)";

const QUADRICS: [(&str, &str); 5] = [
    (
        "U0",
        "x20*x21*x30*x31*(x10^2 + x11^2)*(x40^2 + x41^2) - x10*x11*x40*x41*(x20^2 + x21^2)*(x30^2 + x31^2)",
    ),
    (
        "U1",
        "x10*x11*x30*x31*(x20^2 + x21^2)*(x40^2 + x41^2) + x20*x21*x40*x41*(x10^2 + x11^2)*(x30^2 + x31^2)",
    ),
    ("U2", "(x10^2*x20^2 + x11^2*x21^2)*(x30^2*x40^2 + x31^2*x41^2)"),
    ("U3", "(x11^2*x20^2 + x10^2*x21^2)*(x31^2*x40^2 + x30^2*x41^2)"),
    ("U4", "4*x10*x11*x20*x21*x30*x31*x40*x41"),
];

const PRODUCT: &str = "(x10^2 + x11^2)*(x20^2 + x21^2)*(x30^2 + x31^2)*(x40^2 + x41^2)";

/// The table of building blocks in `u0..u4`, in dependency order.
pub const TABLE: [(&str, &str); 12] = [
    ("H0", "u0"),
    ("H1", "u1"),
    ("H2", "u2 - u3"),
    ("H3", "-2*u0 + u2 + u3 - 2*u4"),
    ("H4", "u2 + u3 + 2*u4"),
    ("Q0", "u4^2 - u2*u3"),
    ("Q1", "(u0 + u4)^2 - u2*u3"),
    ("G0", "H1^2*H3 + (Q0 - 2*H0*u4)*H4 + 2*H0*Q0"),
    ("G0alt", "(H0^2 + H1^2)*H3 + 2*H4*Q0 + (2*H0 - H4)*Q1"),
    ("G1", "H1^2*H3 + Q1*H4"),
    ("F0", "H4*G1 + 4*(3*u3 + u4)*H0*H1^2 - 2*H0^2*H4^2 - H0*H4^3"),
    (
        "f",
        "Q1^2*((H0^2 + Q1)^2 + Q1*(4*H1^2 - (H3 - H4)*(4*H0 + 3*H4))) \
         + Q1*G1*(2*(Q0 - Q1)*(6*H1^2*H2 - 2*H3*H4^2 + 3*H4^3 - 6*H4*Q0) \
         + 4*Q0*H0^3 + 4*Q1*(4*H0*H1^2 + H0*Q0 + 3*H4*Q0) - 12*H4*Q1^2 \
         + F0*(H3 - H4) + 2*G0*(H4*(H3 - H4) + 2*(Q0 - Q1 - H1^2))) \
         + 4*G1^2*(H0^2*Q0^2)",
    ),
];

/// The displayed expression for `f` split into its three summands: the
/// `Q1^2` block, the `Q1*G1` block and the `G1^2` block.
pub const F_BLOCKS: [(&str, &str); 3] = [
    ("Q1^2 block", "Q1^2*((H0^2 + Q1)^2 + Q1*(4*H1^2 - (H3 - H4)*(4*H0 + 3*H4)))"),
    (
        "Q1*G1 block",
        "Q1*G1*(2*(Q0 - Q1)*(6*H1^2*H2 - 2*H3*H4^2 + 3*H4^3 - 6*H4*Q0) \
         + 4*Q0*H0^3 + 4*Q1*(4*H0*H1^2 + H0*Q0 + 3*H4*Q0) - 12*H4*Q1^2 \
         + F0*(H3 - H4) + 2*G0*(H4*(H3 - H4) + 2*(Q0 - Q1 - H1^2)))",
    ),
    ("G1^2 block", "4*G1^2*(H0^2*Q0^2)"),
];

/// A component of `{U4 = 0, Uj = 0}`: coordinates set to zero, plus an
/// optional quadric factor (by source text) that must also vanish.
#[derive(Clone, Copy, Debug)]
pub struct Component {
    pub zeros: &'static [&'static str],
    pub quadric: Option<&'static str>,
}

const fn comp(zeros: &'static [&'static str], quadric: Option<&'static str>) -> Component {
    Component { zeros, quadric }
}

const Q12_U2: &str = "x10^2*x20^2 + x11^2*x21^2";
const Q34_U2: &str = "x30^2*x40^2 + x31^2*x41^2";
const Q12_U3: &str = "x11^2*x20^2 + x10^2*x21^2";
const Q34_U3: &str = "x31^2*x40^2 + x30^2*x41^2";

/// Displayed factors of `U2` and `U3`.
pub const U2_FACTORS: [&str; 2] = [Q12_U2, Q34_U2];
pub const U3_FACTORS: [&str; 2] = [Q12_U3, Q34_U3];
pub const U4_PRODUCT: &str = "4*x10*x11*x20*x21*x30*x31*x40*x41";

/// The twelve components of `{U4 = U2 = 0}`.
pub const COMPONENTS_U2: [Component; 12] = [
    comp(&["x10", "x21"], None),
    comp(&["x11", "x20"], None),
    comp(&["x30", "x41"], None),
    comp(&["x31", "x40"], None),
    comp(&["x10"], Some(Q34_U2)),
    comp(&["x11"], Some(Q34_U2)),
    comp(&["x20"], Some(Q34_U2)),
    comp(&["x21"], Some(Q34_U2)),
    comp(&["x30"], Some(Q12_U2)),
    comp(&["x31"], Some(Q12_U2)),
    comp(&["x40"], Some(Q12_U2)),
    comp(&["x41"], Some(Q12_U2)),
];

/// The twelve components of `{U4 = U3 = 0}`.
pub const COMPONENTS_U3: [Component; 12] = [
    comp(&["x10", "x20"], None),
    comp(&["x11", "x21"], None),
    comp(&["x30", "x40"], None),
    comp(&["x31", "x41"], None),
    comp(&["x10"], Some(Q34_U3)),
    comp(&["x11"], Some(Q34_U3)),
    comp(&["x20"], Some(Q34_U3)),
    comp(&["x21"], Some(Q34_U3)),
    comp(&["x30"], Some(Q12_U3)),
    comp(&["x31"], Some(Q12_U3)),
    comp(&["x40"], Some(Q12_U3)),
    comp(&["x41"], Some(Q12_U3)),
];

/// Named polynomials on the source side.
pub struct SourceConstants {
    pub ring: Arc<Ring>,
    pub f1: Polynomial,
    pub f2: Polynomial,
    /// `U0..U4`.
    pub u: Vec<Polynomial>,
    pub u5_minus: Polynomial,
    pub u5_plus: Polynomial,
}

impl SourceConstants {
    /// Constants over `Q(i)`. `F1` and `F2` always live over `Q(i)`.
    pub fn new() -> Self {
        Self::over(FieldSpec::GaussianRational).expect("catalog parses")
    }

    pub fn over(field: FieldSpec) -> Result<Self, PolyError> {
        let ring = source_ring(field.clone());
        let qi = source_ring(FieldSpec::GaussianRational);
        let empty = HashMap::new();
        let f1 = parse_with(F1, &qi, &empty)?;
        let f2 = parse_with(F2, &qi, &empty)?;
        let mut env = HashMap::new();
        let mut u = Vec::new();
        for (name, text) in QUADRICS {
            let p = parse_with(text, &ring, &env)?;
            env.insert(name.to_string(), p.clone());
            u.push(p);
        }
        let u5_minus = parse_with(&format!("U0 + 1/2*U2 + 1/2*U3 + U4 - 1/2*{PRODUCT}"), &ring, &env)?;
        let u5_plus = parse_with(&format!("U0 + 1/2*U2 + 1/2*U3 + U4 + 1/2*{PRODUCT}"), &ring, &env)?;
        Ok(SourceConstants { ring, f1, f2, u, u5_minus, u5_plus })
    }

    pub fn u5(&self, v: U5Variant) -> &Polynomial {
        match v {
            U5Variant::Minus => &self.u5_minus,
            U5Variant::Plus => &self.u5_plus,
        }
    }

    /// `U0..U5` with the chosen `U5`.
    pub fn all_u(&self, v: U5Variant) -> Vec<Polynomial> {
        let mut out = self.u.clone();
        out.push(self.u5(v).clone());
        out
    }

    /// Expected multidegree of each constant.
    pub fn multidegrees() -> [(&'static str, MultiDegree); 3] {
        [("F1", MultiDegree::uniform(1)), ("F2", MultiDegree::uniform(1)), ("U", MultiDegree::uniform(2))]
    }
}

impl Default for SourceConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// The table polynomials in `u0..u4`, keyed by name.
pub fn table(ring: &Arc<Ring>) -> Result<HashMap<String, Polynomial>, PolyError> {
    let mut env = HashMap::new();
    for (name, text) in TABLE {
        let p = parse_with(text, ring, &env)?;
        env.insert(name.to_string(), p);
    }
    Ok(env)
}

/// Bindings for `use paper-constants` in input files.
pub fn bindings(ring: &Arc<Ring>) -> Result<HashMap<String, Polynomial>, PolyError> {
    let mut env = HashMap::new();
    if ring.grading().is_some() {
        let src = SourceConstants::over(ring.field().clone())?;
        let all = [("U0", 0), ("U1", 1), ("U2", 2), ("U3", 3), ("U4", 4)];
        for (name, k) in all {
            env.insert(name.to_string(), src.u[k].to_ring(ring)?);
        }
        env.insert("U5".into(), src.u5_minus.to_ring(ring)?);
        env.insert("U5minus".into(), src.u5_minus.to_ring(ring)?);
        env.insert("U5plus".into(), src.u5_plus.to_ring(ring)?);
        if let Ok(f1) = src.f1.to_ring(ring) {
            env.insert("F1".into(), f1);
        }
        if let Ok(f2) = src.f2.to_ring(ring) {
            env.insert("F2".into(), f2);
        }
    }
    if ["u0", "u1", "u2", "u3", "u4"].iter().all(|v| ring.var_index(v).is_some()) {
        for (name, text) in TABLE {
            let p = parse_with(text, ring, &env)?;
            env.insert(name.to_string(), p);
        }
    }
    Ok(env)
}

fn pts(field: &FieldSpec, list: &[[[i64; 2]; 4]]) -> Vec<ProductPoint> {
    list.iter().map(|p| ProductPoint::from_ints(field, *p).expect("nonzero pairs")).collect()
}

/// All points whose four factors are drawn from `choices`.
fn grid(choices: &[[FieldElement; 2]]) -> Vec<ProductPoint> {
    let mut out = Vec::new();
    for a in choices {
        for b in choices {
            for c in choices {
                for d in choices {
                    out.push(ProductPoint::new([a.clone(), b.clone(), c.clone(), d.clone()]).expect("nonzero"));
                }
            }
        }
    }
    out
}

fn pair(x: FieldElement, y: FieldElement) -> [FieldElement; 2] {
    [x, y]
}

fn qi_consts() -> (FieldElement, FieldElement, FieldElement) {
    let f = FieldSpec::GaussianRational;
    (f.zero(), f.one(), f.imaginary_unit().unwrap())
}

/// Coordinates in `{(0:1), (1:0)}`.
pub fn fix_g2() -> Vec<ProductPoint> {
    let (z, o, _) = qi_consts();
    grid(&[pair(z.clone(), o.clone()), pair(o, z)])
}

/// Coordinates in `{(1:1), (1:-1)}`.
pub fn fix_h2() -> Vec<ProductPoint> {
    let (_, o, _) = qi_consts();
    grid(&[pair(o.clone(), o.clone()), pair(o.clone(), -o)])
}

/// Coordinates in `{(1:i), (1:-i)}`.
pub fn fix_g2h2() -> Vec<ProductPoint> {
    let (_, o, i) = qi_consts();
    grid(&[pair(o.clone(), i.clone()), pair(o, -i)])
}

/// The 64 base points.
pub fn base_points() -> Vec<ProductPoint> {
    let (z, o, i) = qi_consts();
    let axes = [pair(z.clone(), o.clone()), pair(o.clone(), z)];
    let reals = [pair(o.clone(), o.clone()), pair(o.clone(), -o.clone())];
    let imags = [pair(o.clone(), i.clone()), pair(o, -i)];
    let mut out = Vec::new();
    let mut push = |a: &[[FieldElement; 2]; 2], b: &[[FieldElement; 2]; 2], c: &[[FieldElement; 2]; 2], d: &[[FieldElement; 2]; 2]| {
        for p in a {
            for q in b {
                for r in c {
                    for s in d {
                        out.push(ProductPoint::new([p.clone(), q.clone(), r.clone(), s.clone()]).expect("nonzero"));
                    }
                }
            }
        }
    };
    push(&axes, &axes, &reals, &imags);
    push(&axes, &axes, &imags, &reals);
    push(&reals, &imags, &axes, &axes);
    push(&imags, &reals, &axes, &axes);
    out
}

/// The two displayed representatives of the base-point orbits on `F1 = 0`.
pub fn orbit_representatives() -> Vec<ProductPoint> {
    let f = FieldSpec::GaussianRational;
    ["(0:1),(0:1),(1:-i),(1:1)", "(0:1),(1:0),(1:-i),(1:-1)"]
        .iter()
        .map(|t| ProductPoint::parse(t, &f).expect("valid point"))
        .collect()
}

/// Point where the differential of the map given by `U0..U5` is examined.
pub fn jacobian_point() -> ProductPoint {
    pts(&FieldSpec::Rational, &[[[1, 1], [1, 0], [1, -1], [1, 2]]]).remove(0)
}

/// One Hessian test point in `P^4`.
pub struct HessianPoint {
    pub surface: &'static str,
    pub text: &'static str,
    pub expected_rank: usize,
    pub field: FieldSpec,
    pub coords: Vec<FieldElement>,
}

/// The seven Hessian test points, in the order `S3,0, S3,1, S4, S6, S1,
/// S2,0, S2,1`.
pub fn hessian_points() -> Vec<HessianPoint> {
    let q = FieldSpec::Rational;
    let ints = |v: [i64; 5]| v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
    let sqrt5 = FieldSpec::extension_from_ints("t", &[-5, 0, 1]).expect("valid modulus");
    let t = sqrt5.generator().unwrap();
    let inv_sqrt5 = t.checked_div(&sqrt5.from_i64(5)).unwrap();
    let root5 = vec![sqrt5.from_i64(2), inv_sqrt5, sqrt5.from_i64(-2), sqrt5.from_i64(-2), sqrt5.from_i64(1)];
    let mk = |surface, text, expected_rank, coords: Vec<FieldElement>| HessianPoint {
        surface,
        text,
        expected_rank,
        field: coords[0].field(),
        coords,
    };
    vec![
        mk("S3,0", "(0:1:1:-1:0)", 2, ints([0, 1, 1, -1, 0])),
        mk("S3,1", "(3:0:0:4:4)", 2, ints([3, 0, 0, 4, 4])),
        mk("S4", "(2:1/sqrt5:-2:-2:1)", 2, root5),
        mk("S6", "(1:-1:1:0:0)", 2, ints([1, -1, 1, 0, 0])),
        mk("S1", "(1:1:5:5:4)", 1, ints([1, 1, 5, 5, 4])),
        mk("S2,0", "(0:1:4:1:-2)", 1, ints([0, 1, 4, 1, -2])),
        mk("S2,1", "(1:0:4:1:1)", 1, ints([1, 0, 4, 1, 1])),
    ]
}

/// Field `Q[t]/(11t^4 - 68t^2 + 108)` and the point `(1:t:3:1:0)`.
pub fn smooth_point() -> (FieldSpec, Vec<FieldElement>) {
    let k = FieldSpec::extension_from_ints("t", &[108, 0, -68, 0, 11]).expect("valid modulus");
    let t = k.generator().unwrap();
    let coords = vec![k.from_i64(1), t, k.from_i64(3), k.from_i64(1), k.from_i64(0)];
    (k, coords)
}

/// The seven surfaces with their defining pairs, by table name.
pub const SURFACES: [(&str, &str, &str); 7] = [
    ("S1", "H2", "H3"),
    ("S2,0", "H0", "Q0"),
    ("S2,1", "H1", "Q1"),
    ("S3,0", "H0", "G0"),
    ("S3,1", "H1", "G0"),
    ("S4", "H2", "F0"),
    ("S6", "Q0", "G1"),
];

/// Ideals `(a^2, b)^2` that `f` belongs to.
pub const TACNODES: [(&str, &str); 3] = [("H2", "H3"), ("H0", "Q1"), ("H1", "Q1")];

pub fn parse_points(texts: &[&str], field: &FieldSpec) -> Result<Vec<ProductPoint>, ActionError> {
    texts.iter().map(|t| ProductPoint::parse(t, field)).collect()
}
