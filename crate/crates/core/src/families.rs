//! Named tree families, their closed-form Steklov spectra and explicit
//! eigenfunctions.
//!
//! Every generator records where each named vertex landed (see [`Layout`]);
//! arm vertices are listed from the junction outwards, so `arm[i - 1]` is the
//! vertex at distance `i` from the junction.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use libm::sqrt;
use num_rational::Ratio;
use thiserror::Error;

use crate::graph::{GraphError, Tree};
use crate::spectral::EigenpairClaim;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family kind `{0}`")]
    UnknownKind(String),
    #[error("malformed family string `{0}`")]
    Malformed(String),
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters {
        family: &'static str,
        reason: &'static str,
    },
    #[error("rooted shape has depth {depth}, more than r = {r}")]
    ShapeTooDeep { depth: usize, r: usize },
    #[error("rooted shape parent list is not in parent-before-child order")]
    MalformedShape,
    #[error("no lower-bound construction for b = {b}, n = {n}")]
    NoConstruction { b: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A named family member with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyDescriptor {
    /// Path on `n` vertices.
    Path { n: usize },
    /// `b` paths glued at one end: one of length `r + 1`, the rest of length `r`.
    AlmostFork { b: usize, r: usize },
    /// `b1` arms of length `r` at one end of an edge and `b2` at the other.
    Crab { b1: usize, b2: usize, r: usize },
    /// Path of length `d - 2` with `p` pendants at one end and `q` at the other.
    Barbell { p: usize, q: usize, d: usize },
    /// Arms of length `r` and `r + 1` plus `b - 2` arms of length `c`, glued at one vertex.
    AlmostSeesaw { r: usize, b: usize, c: usize },
    /// `P_{2r+1}` with `pendants` extra edges at its midpoint.
    EvenRuler { r: usize, pendants: usize },
}

fn invalid(family: &'static str, reason: &'static str) -> FamilyError {
    FamilyError::InvalidParameters { family, reason }
}

impl FamilyDescriptor {
    pub fn validate(&self) -> Result<(), FamilyError> {
        match *self {
            Self::Path { n } if n < 2 => Err(invalid("path", "n must be at least 2")),
            Self::AlmostFork { b, r } if b < 2 || r < 1 => {
                Err(invalid("almost fork", "need b >= 2 and r >= 1"))
            }
            Self::Crab { b1, b2, r } if b1 < 1 || b2 < 1 || r < 1 => {
                Err(invalid("crab", "need b1, b2, r >= 1"))
            }
            Self::Barbell { p, q, d } if p < 1 || q < 1 || d < 2 => {
                Err(invalid("barbell", "need p, q >= 1 and D >= 2"))
            }
            Self::AlmostSeesaw { r, b, c } => {
                if r < 1 || b < 2 {
                    Err(invalid("almost seesaw", "need r >= 1 and b >= 2"))
                } else if c > r {
                    Err(invalid("almost seesaw", "need c <= r"))
                } else if b >= 3 && c == 0 {
                    Err(invalid("almost seesaw", "b >= 3 needs c >= 1"))
                } else {
                    Ok(())
                }
            }
            Self::EvenRuler { r, .. } if r < 1 => Err(invalid("ruler", "need r >= 1")),
            _ => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Self::Path { n } => n,
            Self::AlmostFork { b, r } => b * r + 2,
            Self::Crab { b1, b2, r } => (b1 + b2) * r + 2,
            Self::Barbell { p, q, d } => p + q + d - 1,
            Self::AlmostSeesaw { r, b, c } => 2 * r + 2 + (b - 2) * c,
            Self::EvenRuler { r, pendants } => 2 * r + 1 + pendants,
        }
    }

    pub fn leaf_count(&self) -> usize {
        match *self {
            Self::Path { .. } => 2,
            Self::AlmostFork { b, .. } | Self::AlmostSeesaw { b, .. } => b,
            Self::Crab { b1, b2, .. } => b1 + b2,
            Self::Barbell { p, q, .. } => p + q,
            Self::EvenRuler { pendants, .. } => pendants + 2,
        }
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Path { n } => write!(f, "path:{n}"),
            Self::AlmostFork { b, r } => write!(f, "af:{b},{r}"),
            Self::Crab { b1, b2, r } => write!(f, "cg:{b1},{b2},{r}"),
            Self::Barbell { p, q, d } => write!(f, "barbell:{p},{q},{d}"),
            Self::AlmostSeesaw { r, b, c } => write!(f, "as:{r},{b},{c}"),
            Self::EvenRuler { r, pendants } => write!(f, "ruler:{r},{pendants}"),
        }
    }
}

impl FromStr for FamilyDescriptor {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || FamilyError::Malformed(s.to_string());
        let (kind, args) = s.trim().split_once(':').ok_or_else(malformed)?;
        let args: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| malformed())?;
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(malformed())
            }
        };
        let descriptor = match kind.trim().to_ascii_lowercase().as_str() {
            "path" => {
                arity(1)?;
                Self::Path { n: args[0] }
            }
            "af" => {
                arity(2)?;
                Self::AlmostFork {
                    b: args[0],
                    r: args[1],
                }
            }
            "cg" => {
                arity(3)?;
                Self::Crab {
                    b1: args[0],
                    b2: args[1],
                    r: args[2],
                }
            }
            "barbell" => {
                arity(3)?;
                Self::Barbell {
                    p: args[0],
                    q: args[1],
                    d: args[2],
                }
            }
            "as" => {
                arity(3)?;
                Self::AlmostSeesaw {
                    r: args[0],
                    b: args[1],
                    c: args[2],
                }
            }
            "ruler" => {
                arity(2)?;
                Self::EvenRuler {
                    r: args[0],
                    pendants: args[1],
                }
            }
            other => return Err(FamilyError::UnknownKind(other.to_string())),
        };
        descriptor.validate()?;
        Ok(descriptor)
    }
}

/// Where each named vertex of a family member sits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Layout {
    /// `spine[i]` is `v_i`.
    Path { spine: Vec<usize> },
    /// `arms[0]` is the long arm `u_{1,*}`; `arms[l - 1]` is `u_{l,*}`.
    AlmostFork {
        junction: usize,
        arms: Vec<Vec<usize>>,
    },
    /// Junctions `u_0 ~ v_0` with arms `u_{l,*}` and `v_{l,*}`.
    Crab {
        u0: usize,
        v0: usize,
        u_arms: Vec<Vec<usize>>,
        v_arms: Vec<Vec<usize>>,
    },
    /// Pendants `u_1..u_p` hang off `w_1`, pendants `v_1..v_q` off
    /// `w_{D-1}`; `w` lists the `D - 1` path vertices including both junctions.
    Barbell {
        u: Vec<usize>,
        w: Vec<usize>,
        v: Vec<usize>,
    },
    /// Junction `o_0` with arms `u` (length r), `v` (length r + 1) and
    /// `w_arms` (each of length c).
    AlmostSeesaw {
        junction: usize,
        u: Vec<usize>,
        v: Vec<usize>,
        w_arms: Vec<Vec<usize>>,
        c: usize,
    },
    /// `spine` is `v_0..v_{2r}`; `attached` are the vertices glued at `v_r`,
    /// and `pendant_only` says whether they are all single edges.
    EvenAttainer {
        spine: Vec<usize>,
        attached: Vec<usize>,
        pendant_only: bool,
    },
}

/// A generated family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyTree {
    pub tree: Tree,
    pub layout: Layout,
}

#[derive(Default)]
struct Builder {
    order: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.order += 1;
        self.order - 1
    }

    /// Appends a path of `len` new vertices hanging from `start`.
    fn arm(&mut self, start: usize, len: usize) -> Vec<usize> {
        let mut arm = Vec::with_capacity(len);
        let mut prev = start;
        for _ in 0..len {
            let x = self.vertex();
            self.edges.push((prev, x));
            arm.push(x);
            prev = x;
        }
        arm
    }

    fn finish(self, layout: Layout) -> Result<FamilyTree, FamilyError> {
        let tree = Tree::with_order(self.order, &self.edges)?;
        Ok(FamilyTree { tree, layout })
    }
}

/// Generates the family member with the labeling documented on [`Layout`].
pub fn make_family(descriptor: &FamilyDescriptor) -> Result<FamilyTree, FamilyError> {
    descriptor.validate()?;
    let mut g = Builder::default();
    match *descriptor {
        FamilyDescriptor::Path { n } => {
            let start = g.vertex();
            let mut spine = vec![start];
            spine.extend(g.arm(start, n - 1));
            g.finish(Layout::Path { spine })
        }
        FamilyDescriptor::AlmostFork { b, r } => {
            let junction = g.vertex();
            let mut arms = vec![g.arm(junction, r + 1)];
            for _ in 1..b {
                arms.push(g.arm(junction, r));
            }
            g.finish(Layout::AlmostFork { junction, arms })
        }
        FamilyDescriptor::Crab { b1, b2, r } => {
            let u0 = g.vertex();
            let v0 = g.vertex();
            g.edges.push((u0, v0));
            let u_arms = (0..b1).map(|_| g.arm(u0, r)).collect();
            let v_arms = (0..b2).map(|_| g.arm(v0, r)).collect();
            g.finish(Layout::Crab {
                u0,
                v0,
                u_arms,
                v_arms,
            })
        }
        FamilyDescriptor::Barbell { p, q, d } => {
            let first = g.vertex();
            let mut w = vec![first];
            w.extend(g.arm(first, d - 2));
            let last = *w.last().unwrap();
            let u = (0..p).map(|_| g.arm(first, 1)[0]).collect();
            let v = (0..q).map(|_| g.arm(last, 1)[0]).collect();
            g.finish(Layout::Barbell { u, w, v })
        }
        FamilyDescriptor::AlmostSeesaw { r, b, c } => {
            let junction = g.vertex();
            let u = g.arm(junction, r);
            let v = g.arm(junction, r + 1);
            let w_arms = (2..b).map(|_| g.arm(junction, c)).collect();
            g.finish(Layout::AlmostSeesaw {
                junction,
                u,
                v,
                w_arms,
                c,
            })
        }
        FamilyDescriptor::EvenRuler { r, pendants } => {
            even_attainer(r, &RootedShape::pendants(pendants))
        }
    }
}

/// A rooted tree to be glued at the midpoint of a path. Vertex 0 is the
/// root; non-root vertex `j + 1` has parent `parents[j] <= j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RootedShape {
    parents: Vec<usize>,
}

impl RootedShape {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn pendants(count: usize) -> Self {
        Self {
            parents: vec![0; count],
        }
    }

    /// A single path of `len` edges hanging from the root.
    pub fn path(len: usize) -> Self {
        Self {
            parents: (0..len).collect(),
        }
    }

    /// Paths of the given lengths, all hanging from the root.
    pub fn arms(lengths: &[usize]) -> Self {
        let mut parents = Vec::new();
        for &len in lengths {
            let mut prev = 0;
            for _ in 0..len {
                parents.push(prev);
                prev = parents.len();
            }
        }
        Self { parents }
    }

    pub fn from_parents(parents: Vec<usize>) -> Result<Self, FamilyError> {
        if parents.iter().enumerate().any(|(j, &p)| p > j) {
            return Err(FamilyError::MalformedShape);
        }
        Ok(Self { parents })
    }

    /// Number of non-root vertices.
    pub fn size(&self) -> usize {
        self.parents.len()
    }

    pub fn depth(&self) -> usize {
        let mut depth = vec![0usize; self.parents.len() + 1];
        for (j, &p) in self.parents.iter().enumerate() {
            depth[j + 1] = depth[p] + 1;
        }
        depth.into_iter().max().unwrap_or(0)
    }
}

/// `P_{2r+1}` with `shape` glued at its midpoint by the shape's root.
pub fn even_attainer(r: usize, shape: &RootedShape) -> Result<FamilyTree, FamilyError> {
    if r < 1 {
        return Err(invalid("even attainer", "need r >= 1"));
    }
    let depth = shape.depth();
    if depth > r {
        return Err(FamilyError::ShapeTooDeep { depth, r });
    }
    let mut g = Builder::default();
    let start = g.vertex();
    let mut spine = vec![start];
    spine.extend(g.arm(start, 2 * r));
    let mut ids = vec![spine[r]];
    for &p in &shape.parents {
        let x = g.vertex();
        g.edges.push((ids[p], x));
        ids.push(x);
    }
    let pendant_only = shape.parents.iter().all(|&p| p == 0);
    g.finish(Layout::EvenAttainer {
        spine,
        attached: ids[1..].to_vec(),
        pendant_only,
    })
}

/// A tree with `b` leaves and `n` vertices realizing the lower bound on the
/// maximal first nontrivial eigenvalue: `AF(b, r)` when `n = br + 2`,
/// otherwise `P_{2r+1}` with `b - 2` arms of length at most `r` at the
/// midpoint, for the smallest admissible `r`. Arms are filled to length `r`
/// from the first arm on.
pub fn lower_bound_construction(b: usize, n: usize) -> Result<FamilyTree, FamilyError> {
    if b < 3 {
        return Err(FamilyError::NoConstruction { b, n });
    }
    if n >= b + 2 && (n - 2) % b == 0 {
        return make_family(&FamilyDescriptor::AlmostFork { b, r: (n - 2) / b });
    }
    let r = (n.saturating_sub(1)).div_ceil(b).max(1);
    if n < 2 * r + b - 1 || n > b * r + 1 {
        return Err(FamilyError::NoConstruction { b, n });
    }
    let mut remaining = n - 2 * r - 1;
    let mut lengths = Vec::with_capacity(b - 2);
    for j in 0..b - 2 {
        let still_needed = b - 3 - j;
        let len = r.min(remaining - still_needed);
        lengths.push(len);
        remaining -= len;
    }
    even_attainer(r, &RootedShape::arms(&lengths))
}

/// The radicand shared by `C^±`, `α^±` and `β^±`.
pub fn seesaw_radicand(r: usize, b: usize, c: usize) -> i64 {
    let (r, b, c) = (r as i64, b as i64, c as i64);
    b * b - 2 * b + 4 * c * c - 8 * c * r - 4 * c + 4 * r * r + 4 * r + 1
}

/// `C^-(r, b, c)` (`plus = false`) or `C^+(r, b, c)` (`plus = true`).
pub fn seesaw_root(r: usize, b: usize, c: usize, plus: bool) -> f64 {
    let root = sqrt(seesaw_radicand(r, b, c) as f64);
    let (ri, bi, ci) = (r as i64, b as i64, c as i64);
    let linear = (2 * bi * ri + bi + 2 * ci - 2 * ri - 1) as f64;
    let denom = (2 * (bi * ri * ri + bi * ri + 2 * ci * ri + ci - 2 * ri * ri - 2 * ri)) as f64;
    if plus {
        (linear + root) / denom
    } else {
        (linear - root) / denom
    }
}

/// `α^±` scaling the length-`r` arm.
pub fn seesaw_alpha(r: usize, b: usize, c: usize, plus: bool) -> f64 {
    let root = sqrt(seesaw_radicand(r, b, c) as f64);
    let rest = -(b as f64) - 2.0 * c as f64 + 2.0 * r as f64 + 3.0;
    0.5 * (if plus { root } else { -root } + rest)
}

/// `β^±` scaling the length-`(r + 1)` arm.
pub fn seesaw_beta(r: usize, b: usize, c: usize, plus: bool) -> f64 {
    let root = sqrt(seesaw_radicand(r, b, c) as f64);
    let rest = -(b as f64) + 2.0 * c as f64 - 2.0 * r as f64 + 1.0;
    0.5 * (if plus { root } else { -root } + rest)
}

/// An exact rational, or one of the two irrational seesaw roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormValue {
    Rational(Rational),
    SeesawMinus { r: usize, b: usize, c: usize },
    SeesawPlus { r: usize, b: usize, c: usize },
}

impl ClosedFormValue {
    pub fn to_f64(&self) -> f64 {
        match *self {
            Self::Rational(q) => *q.numer() as f64 / *q.denom() as f64,
            Self::SeesawMinus { r, b, c } => seesaw_root(r, b, c, false),
            Self::SeesawPlus { r, b, c } => seesaw_root(r, b, c, true),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match *self {
            Self::Rational(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for ClosedFormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Self::SeesawMinus { r, b, c } => write!(f, "C-({r},{b},{c})"),
            Self::SeesawPlus { r, b, c } => write!(f, "C+({r},{b},{c})"),
        }
    }
}

/// Closed-form eigenvalue multiset, listed as (value, multiplicity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormSpectrum {
    entries: Vec<(ClosedFormValue, usize)>,
}

impl ClosedFormSpectrum {
    fn from_entries(entries: Vec<(ClosedFormValue, usize)>) -> Self {
        Self {
            entries: entries.into_iter().filter(|&(_, m)| m > 0).collect(),
        }
    }

    pub fn entries(&self) -> &[(ClosedFormValue, usize)] {
        &self.entries
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    /// Every eigenvalue with repetition, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self
            .entries
            .iter()
            .flat_map(|&(v, m)| core::iter::repeat_n(v.to_f64(), m))
            .collect();
        values.sort_by(f64::total_cmp);
        values
    }

    /// The `k`-th smallest value as an exact closed form, counting from 1.
    pub fn sigma(&self, k: usize) -> Option<ClosedFormValue> {
        let mut sorted: Vec<(ClosedFormValue, usize)> = self.entries.clone();
        sorted.sort_by(|a, b| a.0.to_f64().total_cmp(&b.0.to_f64()));
        let mut seen = 0;
        for (v, m) in sorted {
            seen += m;
            if k >= 1 && k <= seen {
                return Some(v);
            }
        }
        None
    }
}

fn ratio(n: usize, d: usize) -> ClosedFormValue {
    ClosedFormValue::Rational(Rational::new(n as i64, d as i64))
}

pub fn predicted_spectrum(
    descriptor: &FamilyDescriptor,
) -> Result<ClosedFormSpectrum, FamilyError> {
    descriptor.validate()?;
    let zero = (ratio(0, 1), 1);
    let entries = match *descriptor {
        FamilyDescriptor::Path { n } => vec![zero, (ratio(2, n - 1), 1)],
        FamilyDescriptor::AlmostFork { b, r } => {
            vec![zero, (ratio(b, b * (r + 1) - 1), 1), (ratio(1, r), b - 2)]
        }
        FamilyDescriptor::Crab { b1, b2, r } => vec![
            zero,
            (ratio(b1 + b2, b1 * b2 + r * (b1 + b2)), 1),
            (ratio(1, r), b1 + b2 - 2),
        ],
        FamilyDescriptor::Barbell { p, q, d } => vec![
            zero,
            (ratio(p + q, (d - 2) * p * q + p + q), 1),
            (ratio(1, 1), p + q - 2),
        ],
        FamilyDescriptor::AlmostSeesaw { r, b: 2, .. } => {
            vec![zero, (ratio(2, 2 * r + 1), 1)]
        }
        FamilyDescriptor::AlmostSeesaw { r, b, c } => vec![
            zero,
            (ClosedFormValue::SeesawMinus { r, b, c }, 1),
            (ClosedFormValue::SeesawPlus { r, b, c }, 1),
            (ratio(1, c), b - 3),
        ],
        FamilyDescriptor::EvenRuler { r, pendants: 0 } => vec![zero, (ratio(1, r), 1)],
        // The midpoint-symmetric mode: spine ends at 1, pendants at -2/k.
        FamilyDescriptor::EvenRuler { r, pendants: k } => vec![
            zero,
            (ratio(1, r), 1),
            (ratio(k + 2, k * r + 2), 1),
            (ratio(1, 1), k - 1),
        ],
    };
    Ok(ClosedFormSpectrum::from_entries(entries))
}

/// Explicit eigenfunctions for a family member, `ξ_1` first.
pub fn predicted_eigenfunctions(
    descriptor: &FamilyDescriptor,
) -> Result<Vec<EigenpairClaim>, FamilyError> {
    Ok(make_family(descriptor)?.eigenfunctions())
}

impl FamilyTree {
    pub fn order(&self) -> usize {
        self.tree.order()
    }

    /// The eigenfunctions the layout admits in closed form. The first entry
    /// is always the constant function.
    pub fn eigenfunctions(&self) -> Vec<EigenpairClaim> {
        let n = self.order();
        let mut claims = vec![EigenpairClaim::new("xi_1", 0.0, vec![1.0; n])];
        let blank = || vec![0.0; n];
        match &self.layout {
            Layout::Path { spine } => {
                let sigma = 2.0 / (n as f64 - 1.0);
                let mut f = blank();
                for (i, &x) in spine.iter().enumerate() {
                    f[x] = 1.0 - i as f64 * sigma;
                }
                claims.push(EigenpairClaim::new("xi_2", sigma, f));
            }
            Layout::AlmostFork { junction, arms } => {
                let b = arms.len();
                let r = arms[1].len();
                let bf = b as f64;
                let sigma2 = bf / (bf * (r as f64 + 1.0) - 1.0);
                let mut f = blank();
                f[*junction] = (bf - 1.0) / bf * sigma2;
                for (i, &x) in (1..).zip(&arms[0]) {
                    f[x] = -(bf - 1.0) * (1.0 - (r as f64 + 1.0 - i as f64) * sigma2);
                }
                for arm in &arms[1..] {
                    for (i, &x) in (1..).zip(arm) {
                        f[x] = 1.0 - (r as f64 - i as f64) * sigma2;
                    }
                }
                claims.push(EigenpairClaim::new("xi_2", sigma2, f));
                for m in 3..=b {
                    claims.push(arm_pair(n, &format!("xi_{m}"), &arms[m - 2], &arms[m - 1]));
                }
            }
            Layout::Crab {
                u0,
                v0,
                u_arms,
                v_arms,
            } => {
                let (b1, b2) = (u_arms.len() as f64, v_arms.len() as f64);
                let r = u_arms[0].len() as f64;
                let sigma2 = (b1 + b2) / (b1 * b2 + r * (b1 + b2));
                let mut f = blank();
                f[*u0] = b2 * (1.0 - r * sigma2);
                f[*v0] = -b1 * (1.0 - r * sigma2);
                for arm in u_arms {
                    for (i, &x) in (1..).zip(arm) {
                        f[x] = b2 * (1.0 - (r - i as f64) * sigma2);
                    }
                }
                for arm in v_arms {
                    for (i, &x) in (1..).zip(arm) {
                        f[x] = -b1 * (1.0 - (r - i as f64) * sigma2);
                    }
                }
                claims.push(EigenpairClaim::new("xi_2", sigma2, f));
                let mut m = 3;
                for arms in [u_arms, v_arms] {
                    for pair in arms.windows(2) {
                        claims.push(arm_pair(n, &format!("xi_{m}"), &pair[0], &pair[1]));
                        m += 1;
                    }
                }
            }
            Layout::Barbell { u, w, v } => {
                let (p, q) = (u.len() as f64, v.len() as f64);
                let d = w.len() as f64 + 1.0;
                let denom = (d - 2.0) * p * q + p + q;
                let sigma2 = (p + q) / denom;

                // As printed: u -> 1, v -> -1, rising linear interpolant on w.
                let mut printed = blank();
                for &x in u {
                    printed[x] = 1.0;
                }
                for (i, &x) in (1..).zip(w) {
                    printed[x] = 1.0 - sigma2 + (i as f64 - 1.0) * 2.0 * p * q / denom;
                }
                for &x in v {
                    printed[x] = -1.0;
                }
                claims.push(EigenpairClaim::new("f_2", sigma2, printed).advisory());

                // Balanced flux: u -> 1, v -> -p/q, slope p*sigma per path edge.
                let mut balanced = blank();
                for &x in u {
                    balanced[x] = 1.0;
                }
                for (i, &x) in (1..).zip(w) {
                    balanced[x] = 1.0 - sigma2 - (i as f64 - 1.0) * p * sigma2;
                }
                for &x in v {
                    balanced[x] = -p / q;
                }
                claims.push(EigenpairClaim::new("f_2 (balanced)", sigma2, balanced));

                for (m, &x) in (2..).zip(&u[1..]) {
                    let mut f = blank();
                    f[u[0]] = 1.0;
                    f[x] = -1.0;
                    claims.push(EigenpairClaim::new(format!("f_{m}"), 1.0, f));
                }
                for (m, &x) in (2..).zip(&v[1..]) {
                    let mut f = blank();
                    f[v[0]] = 1.0;
                    f[x] = -1.0;
                    claims.push(EigenpairClaim::new(format!("f_{}", u.len() + m), 1.0, f));
                }
            }
            Layout::AlmostSeesaw {
                junction,
                u,
                v,
                w_arms,
                c,
            } => {
                let (r, c) = (u.len(), *c);
                let b = w_arms.len() + 2;
                let seesaw = |plus: bool| {
                    let sigma = if b == 2 {
                        2.0 / (2.0 * r as f64 + 1.0)
                    } else {
                        seesaw_root(r, b, c, plus)
                    };
                    // xi_2 pairs alpha+ with beta-, xi_3 pairs alpha- with beta+.
                    let alpha = seesaw_alpha(r, b, c, !plus);
                    let beta = seesaw_beta(r, b, c, plus);
                    let mut f = blank();
                    f[*junction] = 1.0 - c as f64 * sigma;
                    for (i, &x) in (1..).zip(u) {
                        f[x] = alpha * (1.0 - (r as f64 - i as f64) * sigma);
                    }
                    for (i, &x) in (1..).zip(v) {
                        f[x] = beta * (1.0 - (r as f64 + 1.0 - i as f64) * sigma);
                    }
                    for arm in w_arms {
                        for (i, &x) in (1..).zip(arm) {
                            f[x] = 1.0 - (c as f64 - i as f64) * sigma;
                        }
                    }
                    (sigma, f)
                };
                let (s2, f2) = seesaw(false);
                claims.push(EigenpairClaim::new("xi_2", s2, f2));
                if b >= 3 {
                    let (s3, f3) = seesaw(true);
                    claims.push(EigenpairClaim::new("xi_3", s3, f3));
                }
                for (m, pair) in (4..).zip(w_arms.windows(2)) {
                    claims.push(arm_pair(n, &format!("xi_{m}"), &pair[0], &pair[1]));
                }
            }
            Layout::EvenAttainer {
                spine,
                attached,
                pendant_only,
            } => {
                let r = (spine.len() - 1) / 2;
                let sigma2 = 1.0 / r as f64;
                let mut f = blank();
                for (i, &x) in spine.iter().enumerate() {
                    f[x] = 1.0 - i as f64 * sigma2;
                }
                claims.push(EigenpairClaim::new("xi_2", sigma2, f));
                if *pendant_only && !attached.is_empty() {
                    let k = attached.len() as f64;
                    let sigma = (k + 2.0) / (k * r as f64 + 2.0);
                    let mut f = blank();
                    for (i, &x) in spine.iter().enumerate() {
                        let from_end = i.min(2 * r - i) as f64;
                        f[x] = 1.0 - from_end * sigma;
                    }
                    for &x in attached {
                        f[x] = -2.0 / k;
                    }
                    claims.push(EigenpairClaim::new("symmetric", sigma, f));
                    for (m, &x) in (1..).zip(&attached[1..]) {
                        let mut f = blank();
                        f[attached[0]] = 1.0;
                        f[x] = -1.0;
                        claims.push(EigenpairClaim::new(format!("pendant_{m}"), 1.0, f));
                    }
                }
            }
        }
        claims
    }
}

/// Antisymmetric mode on two equal arms with eigenvalue `1 / len`: linear
/// from `±1` at the leaves to 0 at the shared junction.
fn arm_pair(n: usize, label: &str, first: &[usize], second: &[usize]) -> EigenpairClaim {
    let len = first.len() as f64;
    let sigma = 1.0 / len;
    let mut f = vec![0.0; n];
    for (i, (&x, &y)) in (1..).zip(first.iter().zip(second)) {
        f[x] = 1.0 - (len - i as f64) * sigma;
        f[y] = -1.0 + (len - i as f64) * sigma;
    }
    EigenpairClaim::new(label, sigma, f)
}
