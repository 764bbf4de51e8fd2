//! Finite generalized metric spaces, canonical carriers and finitely
//! presented forward Cauchy nets.
//!
//! A [`FiniteSpace`] is an ordered list of labelled points with an exact
//! distance matrix; only `d(x,x) = 0` and the triangle law are imposed,
//! so distances may be asymmetric or infinite. The canonical carriers
//! are `[0,∞]` under the Lawvere metric `d_L`, its opposite `d_R`, and
//! finite powers of either with the coordinatewise sup metric.
//!
//! Nets are represented by two descriptor families: eventually cyclic
//! nets over a finite space, and closed-form sequences (constant,
//! geometric, affine) over a canonical carrier. These are the decidable
//! fragments on which forward Cauchyness and Yoneda limits are computed
//! exactly.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::costs::{ExtValue, Rat};
use crate::mutation;

/// Errors raised when building or querying spaces and nets.
#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("distance matrix is {got} rows for {want} points")]
    DimensionMismatch { want: usize, got: usize },
    #[error("row {row} has {got} entries for {want} points")]
    RowMismatch { row: usize, want: usize, got: usize },
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown point {0:?}")]
    UnknownLabel(String),
    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("metric axioms fail: {0}")]
    NotAMetric(MetricReport),
    #[error("product of an empty list of spaces")]
    EmptyProduct,
    #[error("net cycle must be nonempty")]
    EmptyCycle,
    #[error("descriptor does not match its carrier: {0}")]
    CarrierMismatch(String),
    #[error("invalid sequence form: {0}")]
    BadSequence(String),
    #[error("net is not forward Cauchy")]
    NotForwardCauchy,
    #[error("the relation is not a preorder: {0}")]
    NotAPreorder(String),
}

/// Outcome of [`FiniteSpace::check_metric_axioms`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MetricReport {
    /// Points `x` with `d(x,x) ≠ 0`.
    pub nonzero_diagonal: Vec<usize>,
    /// Triples `(x, y, z)` with `d(x,z) > d(x,y) + d(y,z)`.
    pub triangle_violations: Vec<(usize, usize, usize)>,
}

impl MetricReport {
    pub fn ok(&self) -> bool {
        self.nonzero_diagonal.is_empty() && self.triangle_violations.is_empty()
    }
}

impl fmt::Display for MetricReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        write!(
            f,
            "{} nonzero diagonal entries, {} triangle violations",
            self.nonzero_diagonal.len(),
            self.triangle_violations.len()
        )?;
        if let Some((x, y, z)) = self.triangle_violations.first() {
            write!(f, " (first witness {x},{y},{z})")?;
        }
        Ok(())
    }
}

/// A finite generalized metric space.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    dist: Vec<ExtValue>, // row major, n*n
}

impl FiniteSpace {
    /// Builds a space from labels and a square matrix. Dimensions and
    /// label distinctness are enforced; the metric axioms are not, so
    /// that [`FiniteSpace::check_metric_axioms`] can report violations.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<ExtValue>>) -> Result<Self, SpaceError> {
        let n = labels.len();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(SpaceError::DuplicateLabel(l.clone()));
            }
        }
        if rows.len() != n {
            return Err(SpaceError::DimensionMismatch {
                want: n,
                got: rows.len(),
            });
        }
        let mut dist = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(SpaceError::RowMismatch {
                    row: i,
                    want: n,
                    got: row.len(),
                });
            }
            dist.extend(row);
        }
        Ok(FiniteSpace { labels, dist })
    }

    /// Like [`FiniteSpace::new`] but additionally requires the metric
    /// axioms to hold.
    pub fn metric(labels: Vec<String>, rows: Vec<Vec<ExtValue>>) -> Result<Self, SpaceError> {
        let s = FiniteSpace::new(labels, rows)?;
        let report = s.check_metric_axioms();
        if report.ok() {
            Ok(s)
        } else {
            Err(SpaceError::NotAMetric(report))
        }
    }

    /// The image of a preorder under `ω`: distance `0` inside the
    /// relation, `∞` outside. The relation must be reflexive and
    /// transitive so the result is a metric.
    pub fn from_order(labels: Vec<String>, leq: &[Vec<bool>]) -> Result<Self, SpaceError> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(SpaceError::DimensionMismatch {
                want: n,
                got: leq.len(),
            });
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(SpaceError::NotAPreorder(format!("{x} ≤ {x} fails")));
            }
            for y in 0..n {
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(SpaceError::NotAPreorder(format!(
                            "{x} ≤ {y} ≤ {z} but not {x} ≤ {z}"
                        )));
                    }
                }
            }
        }
        let rows = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        if leq[x][y] {
                            ExtValue::zero()
                        } else {
                            ExtValue::Infinity
                        }
                    })
                    .collect()
            })
            .collect();
        FiniteSpace::new(labels, rows)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn d(&self, x: usize, y: usize) -> &ExtValue {
        &self.dist[x * self.len() + y]
    }

    pub fn rows(&self) -> Vec<Vec<ExtValue>> {
        (0..self.len())
            .map(|x| (0..self.len()).map(|y| self.d(x, y).clone()).collect())
            .collect()
    }

    /// Checks `d(x,x) = 0` and `d(x,z) ≤ d(x,y) + d(y,z)` exhaustively,
    /// listing every witness.
    pub fn check_metric_axioms(&self) -> MetricReport {
        let n = self.len();
        let mut report = MetricReport::default();
        for x in 0..n {
            if !self.d(x, x).is_zero() {
                report.nonzero_diagonal.push(x);
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if *self.d(x, z) > self.d(x, y) + self.d(y, z) {
                        report.triangle_violations.push((x, y, z));
                    }
                }
            }
        }
        report
    }

    /// The opposite space, `d^op(x,y) = d(y,x)`.
    pub fn opposite(&self) -> FiniteSpace {
        let n = self.len();
        let rows = (0..n)
            .map(|x| (0..n).map(|y| self.d(y, x).clone()).collect())
            .collect();
        FiniteSpace::new(self.labels.clone(), rows).expect("transpose keeps dimensions")
    }

    /// The specialization order `x ≤ y ⟺ d(x,y) = 0` as a boolean
    /// matrix. Transitivity follows from the triangle law on metric
    /// inputs and is asserted.
    pub fn specialization_order(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|x| (0..n).map(|y| self.d(x, y).is_zero()).collect())
            .collect();
        debug_assert!(
            (0..n).all(|x| (0..n)
                .all(|y| (0..n).all(|z| !(leq[x][y] && leq[y][z]) || leq[x][z]))),
            "specialization order of a metric must be transitive"
        );
        leq
    }

    /// Mutual-zero-distance equivalence classes, each sorted, listed by
    /// least member. Every forward Cauchy cycle lives inside one class.
    pub fn zero_clusters(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut clusters = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let members: Vec<usize> = (0..n)
                .filter(|&y| self.d(x, y).is_zero() && self.d(y, x).is_zero())
                .collect();
            for &m in &members {
                seen[m] = true;
            }
            clusters.push(members);
        }
        clusters
    }

    /// The cluster of `x` as a sorted vector.
    pub fn cluster_of(&self, x: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&y| self.d(x, y).is_zero() && self.d(y, x).is_zero())
            .collect()
    }

    /// Distinct finite positive values occurring in the matrix, sorted.
    pub fn positive_finite_entries(&self) -> Vec<ExtValue> {
        let mut vals: Vec<ExtValue> = self
            .dist
            .iter()
            .filter(|v| v.is_finite() && !v.is_zero())
            .cloned()
            .collect();
        vals.sort();
        vals.dedup();
        vals
    }
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FiniteSpace {:?}", self.labels)?;
        for x in 0..self.len() {
            let row: Vec<String> = (0..self.len()).map(|y| self.d(x, y).to_string()).collect();
            writeln!(f, "  {}: [{}]", self.label(x), row.join(", "))?;
        }
        Ok(())
    }
}

/// Product with the coordinatewise sup metric. Point labels are the
/// parenthesised tuples of the factor labels.
pub fn product(factors: &[&FiniteSpace]) -> Result<FiniteSpace, SpaceError> {
    if factors.is_empty() {
        return Err(SpaceError::EmptyProduct);
    }
    let sizes: Vec<usize> = factors.iter().map(|s| s.len()).collect();
    let total: usize = sizes.iter().product();
    let index_tuple = |mut flat: usize| -> Vec<usize> {
        let mut t = vec![0; sizes.len()];
        for k in (0..sizes.len()).rev() {
            t[k] = flat % sizes[k];
            flat /= sizes[k];
        }
        t
    };
    let labels: Vec<String> = (0..total)
        .map(|flat| {
            let t = index_tuple(flat);
            let parts: Vec<&str> = t.iter().zip(factors).map(|(&i, s)| s.label(i)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let mut rows = Vec::with_capacity(total);
    for xf in 0..total {
        let xt = index_tuple(xf);
        let mut row = Vec::with_capacity(total);
        for yf in 0..total {
            let yt = index_tuple(yf);
            let mut sup = ExtValue::zero();
            for (k, s) in factors.iter().enumerate() {
                let d = s.d(xt[k], yt[k]);
                if *d > sup {
                    sup = d.clone();
                }
            }
            row.push(sup);
        }
        rows.push(row);
    }
    FiniteSpace::new(labels, rows)
}

/// The n-fold power of a space under the sup metric.
pub fn power(space: &FiniteSpace, n: usize) -> Result<FiniteSpace, SpaceError> {
    let factors: Vec<&FiniteSpace> = std::iter::repeat_n(space, n).collect();
    product(&factors)
}

/// One of the canonical carriers built on `[0, ∞]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalSpace {
    /// `([0,∞], d_L)`.
    DL,
    /// `([0,∞], d_R)`.
    DR,
    /// `([0,∞], d_L)^n` with the sup metric.
    PowerDL(usize),
    /// `([0,∞], d_R)^n` with the sup metric.
    PowerDR(usize),
}

impl CanonicalSpace {
    /// Parses the names used in files: `DL`, `DR`, `DL^n`, `DR^n`.
    pub fn parse(name: &str) -> Option<CanonicalSpace> {
        match name {
            "DL" => Some(CanonicalSpace::DL),
            "DR" => Some(CanonicalSpace::DR),
            _ => {
                let (base, pow) = name.split_once('^')?;
                let n: usize = pow.parse().ok()?;
                if n == 0 {
                    return None;
                }
                match base {
                    "DL" => Some(CanonicalSpace::PowerDL(n)),
                    "DR" => Some(CanonicalSpace::PowerDR(n)),
                    _ => None,
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            CanonicalSpace::DL => "DL".into(),
            CanonicalSpace::DR => "DR".into(),
            CanonicalSpace::PowerDL(n) => format!("DL^{n}"),
            CanonicalSpace::PowerDR(n) => format!("DR^{n}"),
        }
    }

    /// Number of coordinates.
    pub fn arity(&self) -> usize {
        match self {
            CanonicalSpace::DL | CanonicalSpace::DR => 1,
            CanonicalSpace::PowerDL(n) | CanonicalSpace::PowerDR(n) => *n,
        }
    }

    /// Whether the base carrier is `d_R` (otherwise `d_L`).
    pub fn base_is_dr(&self) -> bool {
        matches!(self, CanonicalSpace::DR | CanonicalSpace::PowerDR(_))
    }

    fn base_dist(&self, x: &ExtValue, y: &ExtValue) -> ExtValue {
        if self.base_is_dr() {
            crate::costs::d_r(x, y)
        } else {
            crate::costs::d_l(x, y)
        }
    }

    /// Sup metric on tuples of the right arity.
    pub fn dist(&self, x: &[ExtValue], y: &[ExtValue]) -> Result<ExtValue, SpaceError> {
        if x.len() != self.arity() || y.len() != self.arity() {
            return Err(SpaceError::CarrierMismatch(format!(
                "{} expects {}-tuples",
                self.name(),
                self.arity()
            )));
        }
        let mut sup = ExtValue::zero();
        for (a, b) in x.iter().zip(y) {
            let d = self.base_dist(a, b);
            if d > sup {
                sup = d;
            }
        }
        Ok(sup)
    }
}

/// Eventually cyclic net over a finite space: runs `prefix` once, then
/// repeats `cycle` forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteNet {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl FiniteNet {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>) -> Result<Self, SpaceError> {
        if cycle.is_empty() {
            return Err(SpaceError::EmptyCycle);
        }
        Ok(FiniteNet { prefix, cycle })
    }

    pub fn constant(x: usize) -> FiniteNet {
        FiniteNet {
            prefix: Vec::new(),
            cycle: vec![x],
        }
    }

    /// The net value at index `n`.
    pub fn at(&self, n: usize) -> usize {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.cycle[(n - self.prefix.len()) % self.cycle.len()]
        }
    }

    fn max_index(&self, space: &FiniteSpace) -> Result<(), SpaceError> {
        for &i in self.prefix.iter().chain(&self.cycle) {
            if i >= space.len() {
                return Err(SpaceError::IndexOutOfRange {
                    index: i,
                    len: space.len(),
                });
            }
        }
        Ok(())
    }
}

/// Closed-form sequence in one `[0,∞]` coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqForm {
    /// `x_n = v` for all `n`; `v` may be `∞`.
    Constant(ExtValue),
    /// `x_n = limit + scale·ratioⁿ` when `above`, else
    /// `x_n = limit − scale·ratioⁿ`, with `0 < ratio < 1`.
    Geometric {
        limit: Rat,
        above: bool,
        scale: Rat,
        ratio: Rat,
    },
    /// `x_n = base + slope·n`; diverges to `∞` for positive slope.
    Linear { base: Rat, slope: Rat },
}

fn rat_pow(r: &Rat, n: usize) -> Rat {
    let mut acc = Rat::new(1u32.into(), 1u32.into());
    for _ in 0..n {
        acc *= r;
    }
    acc
}

impl SeqForm {
    pub fn validate(&self) -> Result<(), SpaceError> {
        match self {
            SeqForm::Constant(_) => Ok(()),
            SeqForm::Geometric {
                limit,
                above,
                scale,
                ratio,
            } => {
                let one = Rat::new(1u32.into(), 1u32.into());
                if ratio.is_zero() || *ratio >= one {
                    return Err(SpaceError::BadSequence(
                        "geometric ratio must satisfy 0 < q < 1".into(),
                    ));
                }
                if !*above && scale > limit {
                    return Err(SpaceError::BadSequence(
                        "ascending form needs scale ≤ limit to stay in [0,∞]".into(),
                    ));
                }
                Ok(())
            }
            SeqForm::Linear { .. } => Ok(()),
        }
    }

    /// The term `x_n`, exactly.
    pub fn at(&self, n: usize) -> ExtValue {
        match self {
            SeqForm::Constant(v) => v.clone(),
            SeqForm::Geometric {
                limit,
                above,
                scale,
                ratio,
            } => {
                let step = scale * &rat_pow(ratio, n);
                if *above {
                    ExtValue::Finite(limit + &step)
                } else {
                    ExtValue::Finite(limit - &step)
                }
            }
            SeqForm::Linear { base, slope } => {
                ExtValue::Finite(base + &(slope * &Rat::from_integer((n as u64).into())))
            }
        }
    }

    /// The usual limit of the sequence in `[0, ∞]`.
    pub fn usual_limit(&self) -> ExtValue {
        match self {
            SeqForm::Constant(v) => v.clone(),
            SeqForm::Geometric { limit, .. } => ExtValue::Finite(limit.clone()),
            SeqForm::Linear { base, slope } => {
                if slope.is_zero() {
                    ExtValue::Finite(base.clone())
                } else {
                    ExtValue::Infinity
                }
            }
        }
    }

    /// Whether the sequence is eventually nonincreasing in the usual
    /// order of `[0,∞]`.
    fn descending(&self) -> bool {
        match self {
            SeqForm::Constant(_) => true,
            SeqForm::Geometric { above, .. } => *above,
            SeqForm::Linear { slope, .. } => slope.is_zero(),
        }
    }
}

/// A finitely presented forward Cauchy net candidate.
#[derive(Debug, Clone)]
pub enum NetDescriptor {
    Finite {
        space: Arc<FiniteSpace>,
        net: FiniteNet,
    },
    Canonical {
        space: CanonicalSpace,
        coords: Vec<SeqForm>,
    },
}

/// Yoneda limits of a net: the set of limit points over a finite space,
/// or the limit tuple in a canonical carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum YonedaLimits {
    Points(Vec<usize>),
    Value(Vec<ExtValue>),
}

impl NetDescriptor {
    pub fn validate(&self) -> Result<(), SpaceError> {
        match self {
            NetDescriptor::Finite { space, net } => {
                if net.cycle.is_empty() {
                    return Err(SpaceError::EmptyCycle);
                }
                net.max_index(space)
            }
            NetDescriptor::Canonical { space, coords } => {
                if coords.len() != space.arity() {
                    return Err(SpaceError::CarrierMismatch(format!(
                        "{} expects {} coordinate forms, got {}",
                        space.name(),
                        space.arity(),
                        coords.len()
                    )));
                }
                for c in coords {
                    c.validate()?;
                }
                Ok(())
            }
        }
    }
}

/// Decides `inf_i sup_{k≥j≥i} d(x_j, x_k) = 0`.
///
/// Over a finite space the eventually cyclic presentation reduces this
/// to "every ordered pair of cycle points is at distance 0": the tail
/// visits each cycle point infinitely often, so for every window start
/// the inner sup is the maximum over all ordered cycle pairs. Over a
/// canonical carrier the decision reads off the closed form: in `d_R`
/// every catalogue sequence is forward Cauchy, in `d_L` exactly the
/// eventually nonincreasing-or-convergent ones are, which excludes the
/// divergent affine form.
pub fn is_forward_cauchy(net: &NetDescriptor) -> Result<bool, SpaceError> {
    net.validate()?;
    match net {
        NetDescriptor::Finite { space, net } => Ok(cycle_is_cauchy(space, &net.cycle)),
        NetDescriptor::Canonical { space, coords } => Ok(coords.iter().all(|c| {
            if space.base_is_dr() {
                true
            } else {
                // In d_L a forward Cauchy net is eventually constant ∞
                // or usual-Cauchy; the divergent affine form is neither.
                c.descending() || c.usual_limit().is_finite()
            }
        })),
    }
}

pub(crate) fn cycle_is_cauchy(space: &FiniteSpace, cycle: &[usize]) -> bool {
    cycle
        .iter()
        .all(|&u| cycle.iter().all(|&v| space.d(u, v).is_zero()))
}

/// Yoneda limits of a forward Cauchy net.
///
/// Over a finite space the limit set is `{x : d(x,y) = d(c,y) for all
/// y}` for any cycle point `c`; it always contains `c`. Over a
/// canonical carrier the usual limit is a Yoneda limit, computed
/// coordinatewise on powers.
pub fn yoneda_limits(net: &NetDescriptor) -> Result<YonedaLimits, SpaceError> {
    if !is_forward_cauchy(net)? {
        return Err(SpaceError::NotForwardCauchy);
    }
    match net {
        NetDescriptor::Finite { space, net } => {
            let c = net.cycle[0];
            let n = space.len();
            let pts = (0..n)
                .filter(|&x| (0..n).all(|y| space.d(x, y) == space.d(c, y)))
                .collect();
            Ok(YonedaLimits::Points(pts))
        }
        NetDescriptor::Canonical { coords, .. } => Ok(YonedaLimits::Value(
            coords.iter().map(|c| c.usual_limit()).collect(),
        )),
    }
}

/// Shortest-path (triangle) closure: `d'(x,y)` is the least path cost
/// from `x` to `y`. Leaves metrics unchanged and repairs arbitrary
/// nonnegative matrices to the triangle law.
pub fn triangle_closure(space: &FiniteSpace) -> FiniteSpace {
    if mutation::triangle_repair_skipped() {
        return space.clone();
    }
    let n = space.len();
    let mut rows = space.rows();
    for x in 0..n {
        rows[x][x] = ExtValue::zero();
    }
    for k in 0..n {
        for x in 0..n {
            for y in 0..n {
                let via = &rows[x][k] + &rows[k][y];
                if via < rows[x][y] {
                    rows[x][y] = via;
                }
            }
        }
    }
    FiniteSpace::new(space.labels().to_vec(), rows).expect("closure keeps dimensions")
}

/// Small ready-made spaces used by the test suite and the docs.
pub mod fixtures {
    use super::*;

    /// `W = {a,b,c}` with `d(a,b)=1, d(a,c)=2, d(b,a)=3/2, d(b,c)=1,
    /// d(c,a)=1/2, d(c,b)=3/2`.
    pub fn space_w() -> FiniteSpace {
        let v = |s: &str| s.parse::<ExtValue>().unwrap();
        FiniteSpace::metric(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![v("0"), v("1"), v("2")],
                vec![v("3/2"), v("0"), v("1")],
                vec![v("1/2"), v("3/2"), v("0")],
            ],
        )
        .unwrap()
    }

    /// Two points at mutual distance `∞`.
    pub fn discrete_two() -> FiniteSpace {
        FiniteSpace::metric(
            vec!["u".into(), "v".into()],
            vec![
                vec![ExtValue::zero(), ExtValue::Infinity],
                vec![ExtValue::Infinity, ExtValue::zero()],
            ],
        )
        .unwrap()
    }

    /// Two points at mutual distance `0`.
    pub fn glued_two() -> FiniteSpace {
        FiniteSpace::metric(
            vec!["u".into(), "v".into()],
            vec![
                vec![ExtValue::zero(), ExtValue::zero()],
                vec![ExtValue::zero(), ExtValue::zero()],
            ],
        )
        .unwrap()
    }

    /// `u ≤ v` as a 0/∞ metric.
    pub fn arrow_two() -> FiniteSpace {
        FiniteSpace::metric(
            vec!["u".into(), "v".into()],
            vec![
                vec![ExtValue::zero(), ExtValue::zero()],
                vec![ExtValue::Infinity, ExtValue::zero()],
            ],
        )
        .unwrap()
    }
}
