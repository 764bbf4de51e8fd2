//! Approach-distance tables on finite carriers.
//!
//! An [`ApproachTable`] materializes a point–set distance
//! `δ : X × 2^X → [0,∞]` in full, with subsets as bitmasks; the
//! practical bound is 12 points. On top of it live the axiom checker,
//! the Alexandroff distance `Γ(d)(x,A) = inf_{a∈A} d(x,a)`, the Scott
//! distance computed by its defining sup over Scott weights, regular
//! functions, the topological coreflection and the specialization
//! metric.
//!
//! On a finite space the Scott distance must coincide with the
//! Alexandroff distance (finite spaces are Smyth completable), so
//! [`scott_distance_finite`] evaluates the defining sup over a witness
//! family of Scott weights and then asserts that equality; a mismatch
//! is reported as a hard error rather than papered over.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::costs::ExtValue;
use crate::spaces::{FiniteSpace, SpaceError};
use crate::weights::{is_scott_weight, WeightFn};

/// Subsets of a carrier with at most [`MAX_TABLE_POINTS`] points are
/// bitmasks, bit `i` = point `i`.
pub type Subset = u32;

/// Materialized tables keep `|X| · 2^|X|` exact entries; beyond 12
/// points that stops being practical.
pub const MAX_TABLE_POINTS: usize = 12;

/// Full witness-family scans in the Scott distance cost `O(n·4ⁿ)`; we
/// run them up to this size and fall back to the dominant witnesses
/// (still asserting the collapse) above it.
const SCOTT_FULL_SCAN_LIMIT: usize = 9;

#[derive(Debug, Error)]
pub enum ApproachError {
    #[error("{0} points exceed the {MAX_TABLE_POINTS}-point bound for materialized tables")]
    TooManyPoints(usize),
    #[error("table has {got} entries, expected {want}")]
    PartialTable { want: usize, got: usize },
    #[error("space error: {0}")]
    Space(#[from] SpaceError),
    #[error(
        "Scott distance disagrees with the Alexandroff distance at x={x}, A={a:#b}: \
         sup over Scott weights gives {got}, Alexandroff gives {want}"
    )]
    ScottMismatch {
        x: usize,
        a: Subset,
        got: ExtValue,
        want: ExtValue,
    },
    #[error("closure operator is not additive at A={a:#b}, B={b:#b}")]
    ClosureNotAdditive { a: Subset, b: Subset },
    #[error("closure operator is not idempotent at A={a:#b}")]
    ClosureNotIdempotent { a: Subset },
    #[error("closure operator is not extensive at A={a:#b}")]
    ClosureNotExtensive { a: Subset },
    #[error("specialization of the table violates the metric axioms")]
    SpecializationNotMetric,
    #[error("closed sets do not form a topology: {0}")]
    NotATopology(String),
    #[error("map assigns {got} points, expected {want}")]
    PartialMap { want: usize, got: usize },
}

/// Iterates the members of a subset mask.
pub fn members(mask: Subset, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |i| mask & (1 << i) != 0)
}

/// A total point–set distance table.
#[derive(Clone, PartialEq, Eq)]
pub struct ApproachTable {
    labels: Vec<String>,
    entries: Vec<ExtValue>, // index: x * 2^n + mask
}

impl ApproachTable {
    pub fn from_fn(
        labels: Vec<String>,
        delta: impl Fn(usize, Subset) -> ExtValue,
    ) -> Result<Self, ApproachError> {
        let n = labels.len();
        if n > MAX_TABLE_POINTS {
            return Err(ApproachError::TooManyPoints(n));
        }
        let subsets = 1usize << n;
        let mut entries = Vec::with_capacity(n * subsets);
        for x in 0..n {
            for mask in 0..subsets {
                entries.push(delta(x, mask as Subset));
            }
        }
        Ok(ApproachTable { labels, entries })
    }

    pub fn from_entries(
        labels: Vec<String>,
        entries: Vec<ExtValue>,
    ) -> Result<Self, ApproachError> {
        let n = labels.len();
        if n > MAX_TABLE_POINTS {
            return Err(ApproachError::TooManyPoints(n));
        }
        let want = n << n;
        if entries.len() != want {
            return Err(ApproachError::PartialTable {
                want,
                got: entries.len(),
            });
        }
        Ok(ApproachTable { labels, entries })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn subsets(&self) -> usize {
        1usize << self.n()
    }

    pub fn full_mask(&self) -> Subset {
        (self.subsets() - 1) as Subset
    }

    pub fn delta(&self, x: usize, a: Subset) -> &ExtValue {
        &self.entries[(x << self.n()) + a as usize]
    }
}

// Full tables are dumped via the io module; Debug stays terse.
impl fmt::Debug for ApproachTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ApproachTable({} points, {} entries)",
            self.n(),
            self.entries.len()
        )
    }
}

/// One broken axiom instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `δ(x, {x}) ≠ 0`.
    A1 { x: usize },
    /// `δ(x, ∅) ≠ ∞`.
    A2 { x: usize },
    /// `δ(x, A∪B) ≠ min(δ(x,A), δ(x,B))`.
    A3 { x: usize, a: Subset, b: Subset },
    /// `δ(x,A) > δ(x,B) + sup_{b∈B} δ(b,A)`.
    A4 { x: usize, a: Subset, b: Subset },
}

/// Outcome of [`check_approach_axioms`]; stores the first witnesses and
/// counts the rest.
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub witnesses: Vec<AxiomViolation>,
    pub total_violations: usize,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.total_violations == 0
    }

    fn record(&mut self, v: AxiomViolation) {
        if self.witnesses.len() < 64 {
            self.witnesses.push(v);
        }
        self.total_violations += 1;
    }
}

/// Exhaustive exact check of (A1)–(A4).
///
/// (A1) and (A2) are direct. For (A3) and (A4) the literal loops over
/// all pairs of subsets run up to 7 points; beyond that the equivalent
/// singleton forms are used: on a finite carrier (A3) for all pairs is
/// equivalent to `δ(x,A) = min_{a∈A} δ(x,{a})`, and given (A3), (A4)
/// for all `B` follows from its instances at singleton `B`.
pub fn check_approach_axioms(t: &ApproachTable) -> AxiomReport {
    let n = t.n();
    let subsets = t.subsets();
    let mut report = AxiomReport::default();

    for x in 0..n {
        if !t.delta(x, 1 << x).is_zero() {
            report.record(AxiomViolation::A1 { x });
        }
        if *t.delta(x, 0) != ExtValue::Infinity {
            report.record(AxiomViolation::A2 { x });
        }
    }

    if n <= 7 {
        for x in 0..n {
            for a in 0..subsets as Subset {
                for b in 0..subsets as Subset {
                    let min = std::cmp::min(t.delta(x, a), t.delta(x, b));
                    if t.delta(x, a | b) != min {
                        report.record(AxiomViolation::A3 { x, a, b });
                    }
                    let mut reach = ExtValue::zero();
                    for bb in members(b, n) {
                        if t.delta(bb, a) > &reach {
                            reach = t.delta(bb, a).clone();
                        }
                    }
                    if *t.delta(x, a) > t.delta(x, b) + &reach {
                        report.record(AxiomViolation::A4 { x, a, b });
                    }
                }
            }
        }
    } else {
        for x in 0..n {
            for a in 1..subsets as Subset {
                let min = members(a, n)
                    .map(|p| t.delta(x, 1 << p))
                    .min()
                    .expect("a is nonempty");
                if t.delta(x, a) != min {
                    report.record(AxiomViolation::A3 { x, a, b: 0 });
                }
            }
            for b in 0..n {
                for a in 0..subsets as Subset {
                    if *t.delta(x, a) > t.delta(x, 1 << b) + t.delta(b, a) {
                        report.record(AxiomViolation::A4 {
                            x,
                            a,
                            b: 1 << b,
                        });
                    }
                }
            }
        }
    }
    report
}

/// The Alexandroff distance `Γ(d)(x,A) = inf_{a∈A} d(x,a)`, `∞` on the
/// empty set.
pub fn alexandroff(space: &FiniteSpace) -> Result<ApproachTable, ApproachError> {
    let n = space.len();
    ApproachTable::from_fn(space.labels().to_vec(), |x, mask| {
        let mut inf = ExtValue::Infinity;
        for a in members(mask, n) {
            if space.d(x, a) < &inf {
                inf = space.d(x, a).clone();
            }
        }
        inf
    })
}

/// The Scott distance of a finite space, evaluated by its definition
/// `σ(x,A) = sup{φ(x) : φ Scott weight, φ|_A = 0}`.
///
/// The sup ranges over the witness family `{Γ(d)(−,B) : B ⊆ X}`
/// together with the representable weights; every member is verified to
/// be a Scott weight. Because finite spaces are Smyth completable the
/// result must equal the Alexandroff table; a discrepancy surfaces an
/// implementation bug and is returned as [`ApproachError::ScottMismatch`].
pub fn scott_distance_finite(space: &Arc<FiniteSpace>) -> Result<ApproachTable, ApproachError> {
    let n = space.len();
    if n > MAX_TABLE_POINTS {
        return Err(ApproachError::TooManyPoints(n));
    }
    let gamma = alexandroff(space)?;
    let subsets = gamma.subsets();

    // Vanishing masks: which points each witness sends to zero.
    let gamma_zero: Vec<Subset> = (0..subsets)
        .map(|b| {
            let mut mask = 0;
            for a in 0..n {
                if gamma.delta(a, b as Subset).is_zero() {
                    mask |= 1 << a;
                }
            }
            mask
        })
        .collect();
    let repr_zero: Vec<Subset> = (0..n)
        .map(|z| {
            let mut mask = 0;
            for a in 0..n {
                if space.d(a, z).is_zero() {
                    mask |= 1 << a;
                }
            }
            mask
        })
        .collect();

    let full_scan = n <= SCOTT_FULL_SCAN_LIMIT;
    if full_scan {
        // Each witness is a Scott weight; everything else downstream
        // relies on it, so verify rather than assume.
        for b in 0..subsets {
            let values: Vec<ExtValue> =
                (0..n).map(|x| gamma.delta(x, b as Subset).clone()).collect();
            let w = WeightFn::new(space.clone(), values).map_err(|_| {
                ApproachError::ScottMismatch {
                    x: 0,
                    a: b as Subset,
                    got: ExtValue::Infinity,
                    want: ExtValue::Infinity,
                }
            })?;
            if !is_scott_weight(&w) {
                return Err(ApproachError::ScottMismatch {
                    x: 0,
                    a: b as Subset,
                    got: ExtValue::Infinity,
                    want: ExtValue::Infinity,
                });
            }
        }
    }

    let mut entries = Vec::with_capacity(n << n);
    for x in 0..n {
        for a in 0..subsets {
            let a = a as Subset;
            let mut sup = ExtValue::zero();
            if full_scan {
                for b in 0..subsets {
                    if a & !gamma_zero[b] == 0 {
                        let v = gamma.delta(x, b as Subset);
                        if v > &sup {
                            sup = v.clone();
                        }
                    }
                }
            } else if a & !gamma_zero[a as usize] == 0 {
                let v = gamma.delta(x, a);
                if v > &sup {
                    sup = v.clone();
                }
            }
            for z in 0..n {
                if a & !repr_zero[z] == 0 {
                    let v = space.d(x, z);
                    if v > &sup {
                        sup = v.clone();
                    }
                }
            }
            let want = gamma.delta(x, a);
            if sup != *want {
                return Err(ApproachError::ScottMismatch {
                    x,
                    a,
                    got: sup,
                    want: want.clone(),
                });
            }
            entries.push(sup);
        }
    }
    ApproachTable::from_entries(space.labels().to_vec(), entries)
}

/// Streaming Scott-distance entry for carriers too large to
/// materialize. Same witness evaluation and Smyth-collapse assertion as
/// [`scott_distance_finite`], restricted to the dominant witnesses.
pub(crate) fn scott_entry_streamed(
    space: &FiniteSpace,
    x: usize,
    a_members: &[usize],
) -> Result<ExtValue, ApproachError> {
    let n = space.len();
    let gamma_xa = |x: usize| -> ExtValue {
        let mut inf = ExtValue::Infinity;
        for &a in a_members {
            if space.d(x, a) < &inf {
                inf = space.d(x, a).clone();
            }
        }
        inf
    };
    // Γ(−,A) vanishes on A; representables y(z) qualify when A lies in
    // the zero set of d(−,z).
    let mut sup = gamma_xa(x);
    for z in 0..n {
        if a_members.iter().all(|&a| space.d(a, z).is_zero()) && space.d(x, z) > &sup {
            sup = space.d(x, z).clone();
        }
    }
    let want = gamma_xa(x);
    if sup != want {
        let mut mask = 0;
        for &a in a_members {
            if a < 32 {
                mask |= 1 << a;
            }
        }
        return Err(ApproachError::ScottMismatch {
            x,
            a: mask,
            got: sup,
            want,
        });
    }
    Ok(sup)
}

/// Checks that `values` is a regular function of the table:
/// `δ(x,A) ≥ φ(x) ⊖ sup φ(A)` for all `x` and nonempty `A`. The empty
/// set is vacuous since `δ(x,∅) = ∞` dominates any right-hand side.
pub fn is_regular_function(t: &ApproachTable, values: &[ExtValue]) -> bool {
    let n = t.n();
    assert_eq!(values.len(), n, "one value per point");
    for x in 0..n {
        for a in 1..t.subsets() as Subset {
            let mut sup = ExtValue::zero();
            for m in members(a, n) {
                if values[m] > sup {
                    sup = values[m].clone();
                }
            }
            if *t.delta(x, a) < values[x].tminus(&sup) {
                return false;
            }
        }
    }
    true
}

/// A finite topology presented by its closed sets.
#[derive(Clone, PartialEq, Eq)]
pub struct TopologySpec {
    labels: Vec<String>,
    closed: BTreeSet<Subset>,
}

impl TopologySpec {
    pub fn new(labels: Vec<String>, closed: BTreeSet<Subset>) -> Result<Self, ApproachError> {
        let n = labels.len();
        if n > MAX_TABLE_POINTS {
            return Err(ApproachError::TooManyPoints(n));
        }
        let full = ((1usize << n) - 1) as Subset;
        if !closed.contains(&0) {
            return Err(ApproachError::NotATopology("∅ is not closed".into()));
        }
        if !closed.contains(&full) {
            return Err(ApproachError::NotATopology(
                "the whole carrier is not closed".into(),
            ));
        }
        for &a in &closed {
            if a & !full != 0 {
                return Err(ApproachError::NotATopology(format!(
                    "{a:#b} is not a subset of the carrier"
                )));
            }
            for &b in &closed {
                if !closed.contains(&(a | b)) {
                    return Err(ApproachError::NotATopology(format!(
                        "not closed under union at {a:#b}, {b:#b}"
                    )));
                }
                if !closed.contains(&(a & b)) {
                    return Err(ApproachError::NotATopology(format!(
                        "not closed under intersection at {a:#b}, {b:#b}"
                    )));
                }
            }
        }
        Ok(TopologySpec { labels, closed })
    }

    /// The discrete topology.
    pub fn discrete(labels: Vec<String>) -> TopologySpec {
        let n = labels.len();
        let closed = (0..(1usize << n)).map(|m| m as Subset).collect();
        TopologySpec { labels, closed }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn closed_sets(&self) -> &BTreeSet<Subset> {
        &self.closed
    }

    pub fn is_closed(&self, mask: Subset) -> bool {
        self.closed.contains(&mask)
    }

    /// Smallest closed superset.
    pub fn closure(&self, mask: Subset) -> Subset {
        self.closed
            .iter()
            .copied()
            .filter(|c| mask & !c == 0)
            .fold(((1u32 << self.n()) - 1) as Subset, |acc, c| acc & c)
    }

    /// Open sets, as complements of the closed ones.
    pub fn open_sets(&self) -> BTreeSet<Subset> {
        let full = ((1usize << self.n()) - 1) as Subset;
        self.closed.iter().map(|c| full & !c).collect()
    }
}

impl fmt::Debug for TopologySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self
            .closed
            .iter()
            .map(|&m| {
                let names: Vec<&str> = members(m, self.n()).map(|i| self.labels[i].as_str()).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        write!(f, "TopologySpec closed = [{}]", sets.join(" "))
    }
}

/// The topological coreflection: closure `cl(A) = {x : δ(x,A) = 0}`,
/// closed sets its fixed points. Additivity and idempotence are
/// verified; they can only fail on tables that break the axioms.
pub fn coreflection(t: &ApproachTable) -> Result<TopologySpec, ApproachError> {
    let n = t.n();
    let subsets = t.subsets();
    let cl: Vec<Subset> = (0..subsets)
        .map(|a| {
            let mut mask = 0;
            for x in 0..n {
                if t.delta(x, a as Subset).is_zero() {
                    mask |= 1 << x;
                }
            }
            mask
        })
        .collect();
    if cl[0] != 0 {
        return Err(ApproachError::ClosureNotAdditive { a: 0, b: 0 });
    }
    for a in 0..subsets {
        if a as Subset & !cl[a] != 0 {
            return Err(ApproachError::ClosureNotExtensive { a: a as Subset });
        }
        if cl[cl[a] as usize] != cl[a] {
            return Err(ApproachError::ClosureNotIdempotent { a: a as Subset });
        }
        for b in 0..subsets {
            if cl[a | b] != cl[a] | cl[b] {
                return Err(ApproachError::ClosureNotAdditive {
                    a: a as Subset,
                    b: b as Subset,
                });
            }
        }
    }
    let closed: BTreeSet<Subset> = (0..subsets)
        .filter(|&a| cl[a] == a as Subset)
        .map(|a| a as Subset)
        .collect();
    TopologySpec::new(t.labels.clone(), closed)
}

/// The specialization metric `Ω(δ)(x,y) = δ(x,{y})`; fails on tables
/// whose singleton columns break the metric axioms.
pub fn specialization(t: &ApproachTable) -> Result<FiniteSpace, ApproachError> {
    let n = t.n();
    let rows: Vec<Vec<ExtValue>> = (0..n)
        .map(|x| (0..n).map(|y| t.delta(x, 1 << y).clone()).collect())
        .collect();
    FiniteSpace::metric(t.labels.clone(), rows)
        .map_err(|_| ApproachError::SpecializationNotMetric)
}

/// Outcome of [`is_contraction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContractionReport {
    Contraction,
    NotContraction { x: usize, a: Subset },
}

/// Checks `δ_X(x,A) ≥ δ_Y(f(x), f(A))` exhaustively.
pub fn is_contraction(
    map: &[usize],
    s: &ApproachTable,
    t: &ApproachTable,
) -> Result<ContractionReport, ApproachError> {
    let n = s.n();
    if map.len() != n {
        return Err(ApproachError::PartialMap {
            want: n,
            got: map.len(),
        });
    }
    for &i in map {
        if i >= t.n() {
            return Err(ApproachError::PartialMap {
                want: n,
                got: map.len(),
            });
        }
    }
    for x in 0..n {
        for a in 0..s.subsets() as Subset {
            let mut image = 0;
            for m in members(a, n) {
                image |= 1 << map[m];
            }
            if s.delta(x, a) < t.delta(map[x], image) {
                return Ok(ContractionReport::NotContraction { x, a });
            }
        }
    }
    Ok(ContractionReport::Contraction)
}

/// The approach table `ω(T)`: distance `0` inside the closure, `∞`
/// outside.
pub fn embed_topology(topology: &TopologySpec) -> Result<ApproachTable, ApproachError> {
    ApproachTable::from_fn(topology.labels().to_vec(), |x, a| {
        if topology.closure(a) & (1 << x) != 0 {
            ExtValue::zero()
        } else {
            ExtValue::Infinity
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::fixtures::*;

    fn v(s: &str) -> ExtValue {
        s.parse().unwrap()
    }

    fn w() -> Arc<FiniteSpace> {
        Arc::new(space_w())
    }

    fn mask_of(space: &FiniteSpace, labels: &[&str]) -> Subset {
        let mut m = 0;
        for l in labels {
            m |= 1 << space.index_of(l).unwrap();
        }
        m
    }

    #[test]
    fn alexandroff_examples() {
        let w = w();
        let t = alexandroff(&w).unwrap();
        assert_eq!(*t.delta(0, mask_of(&w, &["b", "c"])), v("1"));
        for x in 0..3 {
            assert_eq!(*t.delta(x, 0), ExtValue::Infinity);
            assert!(t.delta(x, 1 << x).is_zero());
        }
        assert!(check_approach_axioms(&t).ok());
    }

    #[test]
    fn axiom_violations_are_witnessed() {
        let w = w();
        let t = alexandroff(&w).unwrap();

        let mut broken = t.clone();
        broken.entries[0b001] = v("1"); // δ(a,{a}) = 1
        let report = check_approach_axioms(&broken);
        assert!(report
            .witnesses
            .iter()
            .any(|viol| matches!(viol, AxiomViolation::A1 { x: 0 })));

        let mut broken = t.clone();
        broken.entries[1 << 3] = v("0"); // δ(b,∅) = 0
        let report = check_approach_axioms(&broken);
        assert!(report
            .witnesses
            .iter()
            .any(|viol| matches!(viol, AxiomViolation::A2 { x: 1 })));
    }

    #[test]
    fn scott_collapses_to_alexandroff() {
        let w = w();
        let sigma = scott_distance_finite(&w).unwrap();
        let gamma = alexandroff(&w).unwrap();
        assert_eq!(sigma, gamma);
        assert_eq!(*sigma.delta(0, mask_of(&w, &["b", "c"])), v("1"));
        // σ(x,{y}) = d(x,y).
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(sigma.delta(x, 1 << y), w.d(x, y));
            }
            assert_eq!(*sigma.delta(x, 0), ExtValue::Infinity);
        }
    }

    #[test]
    fn regular_function_examples() {
        let w = w();
        let t = alexandroff(&w).unwrap();
        // δ(−,A) is regular for every A.
        for a in 0..t.subsets() as Subset {
            let col: Vec<ExtValue> = (0..3).map(|x| t.delta(x, a).clone()).collect();
            assert!(is_regular_function(&t, &col));
        }
        // Constants are regular.
        assert!(is_regular_function(&t, &[v("7/3"), v("7/3"), v("7/3")]));
        // Weights are regular for the Alexandroff table.
        let yb: Vec<ExtValue> = (0..3).map(|x| w.d(x, 1).clone()).collect();
        assert!(is_regular_function(&t, &yb));
        // A non-weight is rejected.
        assert!(!is_regular_function(&t, &[v("0"), v("2"), v("1")]));
    }

    #[test]
    fn coreflection_of_w_is_discrete() {
        let w = w();
        let t = alexandroff(&w).unwrap();
        let top = coreflection(&t).unwrap();
        assert_eq!(top.closed_sets().len(), 8);
    }

    #[test]
    fn coreflection_round_trips_topologies() {
        // T on {p,q}: closed sets ∅, {p}, {p,q}.
        let labels = vec!["p".to_string(), "q".to_string()];
        let closed: BTreeSet<Subset> = [0b00, 0b01, 0b11].into_iter().collect();
        let t = TopologySpec::new(labels, closed).unwrap();
        let table = embed_topology(&t).unwrap();
        assert!(check_approach_axioms(&table).ok());
        assert_eq!(coreflection(&table).unwrap(), t);

        // Alexandroff topology of a poset via Γ ∘ ω.
        let poset = vec![vec![true, true], vec![false, true]]; // u ≤ v
        let om = FiniteSpace::from_order(vec!["u".into(), "v".into()], &poset).unwrap();
        let top = coreflection(&alexandroff(&om).unwrap()).unwrap();
        // Closed sets are the lower sets: ∅, {u}, {u,v}.
        let expect: BTreeSet<Subset> = [0b00, 0b01, 0b11].into_iter().collect();
        assert_eq!(*top.closed_sets(), expect);
    }

    #[test]
    fn specialization_examples() {
        let w = w();
        assert_eq!(specialization(&alexandroff(&w).unwrap()).unwrap(), *w);
        assert_eq!(specialization(&scott_distance_finite(&w).unwrap()).unwrap(), *w);

        let labels = vec!["p".to_string(), "q".to_string()];
        let closed: BTreeSet<Subset> = [0b00, 0b01, 0b11].into_iter().collect();
        let t = TopologySpec::new(labels, closed).unwrap();
        let sp = specialization(&embed_topology(&t).unwrap()).unwrap();
        // q's closure contains p... closure({q}) = {p,q}? No: {q} is not
        // closed, its closure is {p,q}, so δ(p,{q}) = 0, i.e. p ≤ q.
        assert!(sp.d(0, 1).is_zero());
        assert_eq!(*sp.d(1, 0), ExtValue::Infinity);
    }

    #[test]
    fn contraction_examples() {
        let w = w();
        let t = alexandroff(&w).unwrap();
        assert_eq!(
            is_contraction(&[0, 1, 2], &t, &t).unwrap(),
            ContractionReport::Contraction
        );

        // Collapsing b and c onto a is not a contraction for Γ(W).
        let collapse = [0usize, 0, 0];
        let one = Arc::new(
            FiniteSpace::metric(vec!["a".into()], vec![vec![ExtValue::zero()]]).unwrap(),
        );
        let tt = alexandroff(&one).unwrap();
        assert_eq!(
            is_contraction(&collapse, &t, &tt).unwrap(),
            ContractionReport::Contraction
        );
        // A genuinely order-breaking map gets a witness: map W to the
        // arrow u ≤ v sending a ↦ v, b ↦ u; δ_X(a,{b}) = 1 but the image
        // distance δ(v,{u}) = ∞.
        let arrow = Arc::new(arrow_two());
        let ta = alexandroff(&arrow).unwrap();
        match is_contraction(&[1, 0, 0], &t, &ta).unwrap() {
            ContractionReport::NotContraction { .. } => {}
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn embed_topology_examples() {
        let labels = vec!["p".to_string(), "q".to_string()];
        let discrete = TopologySpec::discrete(labels.clone());
        let table = embed_topology(&discrete).unwrap();
        for x in 0..2 {
            for a in 1..4 {
                let expect = if a & (1 << x) != 0 {
                    ExtValue::zero()
                } else {
                    ExtValue::Infinity
                };
                assert_eq!(*table.delta(x, a), expect);
            }
        }

        let indiscrete =
            TopologySpec::new(labels, [0b00, 0b11].into_iter().collect()).unwrap();
        let table = embed_topology(&indiscrete).unwrap();
        for x in 0..2 {
            for a in 1..4 {
                assert!(table.delta(x, a).is_zero());
            }
        }
    }

    #[test]
    fn gamma_omega_adjunction_unit_and_counit() {
        let w = w();
        let t = alexandroff(&w).unwrap();
        // Unit: Ω(Γ(X)) = X, checked in specialization_examples. Counit:
        // Γ(Ω(δ)) ≥ δ pointwise.
        let sp = specialization(&t).unwrap();
        let back = alexandroff(&sp).unwrap();
        for x in 0..3 {
            for a in 0..t.subsets() as Subset {
                assert!(back.delta(x, a) >= t.delta(x, a));
            }
        }
    }
}
