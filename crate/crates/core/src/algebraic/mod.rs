//! Compact elements and the explicit Scott distance on algebraic
//! carriers.
//!
//! On an algebraic space the Scott distance is determined by the
//! compact basis through
//! `σ(x,A) = sup_{b∈B} (inf_{a∈A} d(b,a) ⊖ d(b,x))`. This module
//! evaluates that formula exactly on finite carriers (where every point
//! is compact) and on `([0,∞], d_R)` and `([0,∞], d_L)`: the summand is
//! piecewise linear in `b` with breakpoints at `A ∪ {x}`, so evaluating
//! at the breakpoints plus one probe beyond the largest (with a tail
//! slope analysis) gives the exact supremum. A grid schedule without
//! the breakpoint analysis is kept for certified-interval queries; it
//! reports a bound it cannot certify rather than silently truncating.

pub mod expr;
pub mod gn;

pub use expr::{colimit_dl, colimit_dr, WeightExpr};

use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::approach::{scott_entry_streamed, ApproachError, Subset};
use crate::costs::{ExtValue, Rat};
use crate::spaces::{power, CanonicalSpace, FiniteNet, FiniteSpace, NetDescriptor, SpaceError};
use crate::weights::{is_scott_weight, is_weight, WeightFn};

#[derive(Debug, Error)]
pub enum AlgebraicError {
    #[error("unknown point index {index} in a space of {len} points")]
    UnknownPoint { index: usize, len: usize },
    #[error("point does not live in the carrier: {0}")]
    CarrierMismatch(String),
    #[error("basis schedule does not fit the carrier: {0}")]
    BadBasis(String),
    #[error("the declared bottom does not satisfy d(⊥,x) = 0 for all x")]
    BadBottom,
    #[error("the carrier has no bottom element")]
    NoBottom,
    #[error("epsilon must be positive")]
    NonpositiveEps,
    #[error("power exponent must be between 1 and 3, got {0}")]
    BadExponent(usize),
    #[error("product carrier would have {0} points; the check supports at most 16")]
    ProductTooLarge(usize),
    #[error("enumerator cannot certify the bound: {0}")]
    CannotCertify(String),
    #[error("descriptor does not denote a weight of ([0,∞], {0})")]
    NotAWeightOf(String),
    #[error(transparent)]
    Approach(#[from] ApproachError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A point of an algebraic carrier: an index into a finite space or a
/// value of `[0,∞]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgPoint {
    Point(usize),
    Value(ExtValue),
}

/// Carrier of an [`AlgebraicSpec`].
#[derive(Debug, Clone)]
pub enum AlgCarrier {
    Finite(Arc<FiniteSpace>),
    DR,
    DL,
}

/// Compact-basis enumerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisSchedule {
    /// Every point (finite carriers).
    AllPoints,
    /// A declared subset of the points (finite carriers); used to probe
    /// deficient bases.
    Points(Vec<usize>),
    /// The rational grid `b_k = k·step` (canonical carriers).
    Grid { step: Rat },
}

/// An algebraic space presentation: carrier, compact-basis enumerator
/// and optional bottom element.
#[derive(Debug, Clone)]
pub struct AlgebraicSpec {
    pub carrier: AlgCarrier,
    pub basis: BasisSchedule,
    pub bottom: Option<AlgPoint>,
}

impl AlgebraicSpec {
    pub fn finite(space: Arc<FiniteSpace>) -> AlgebraicSpec {
        AlgebraicSpec {
            carrier: AlgCarrier::Finite(space),
            basis: BasisSchedule::AllPoints,
            bottom: None,
        }
    }

    pub fn dr() -> AlgebraicSpec {
        AlgebraicSpec {
            carrier: AlgCarrier::DR,
            basis: BasisSchedule::Grid {
                step: Rat::new(1u32.into(), 2u32.into()),
            },
            bottom: Some(AlgPoint::Value(ExtValue::zero())),
        }
    }

    pub fn dl() -> AlgebraicSpec {
        AlgebraicSpec {
            carrier: AlgCarrier::DL,
            basis: BasisSchedule::Grid {
                step: Rat::new(1u32.into(), 2u32.into()),
            },
            bottom: Some(AlgPoint::Value(ExtValue::Infinity)),
        }
    }

    /// Checks that every enumerated basis element is compact and that
    /// the declared bottom satisfies `d(⊥,x) = 0` for all `x`.
    pub fn validate(&self) -> Result<(), AlgebraicError> {
        match (&self.carrier, &self.basis) {
            (AlgCarrier::Finite(space), BasisSchedule::AllPoints) => {
                for b in 0..space.len() {
                    if !is_compact_finite(space, b)? {
                        return Err(AlgebraicError::BadBasis(format!(
                            "point {b} is not compact"
                        )));
                    }
                }
            }
            (AlgCarrier::Finite(space), BasisSchedule::Points(pts)) => {
                for &b in pts {
                    if b >= space.len() {
                        return Err(AlgebraicError::UnknownPoint {
                            index: b,
                            len: space.len(),
                        });
                    }
                    if !is_compact_finite(space, b)? {
                        return Err(AlgebraicError::BadBasis(format!(
                            "point {b} is not compact"
                        )));
                    }
                }
            }
            (AlgCarrier::Finite(_), BasisSchedule::Grid { .. }) => {
                return Err(AlgebraicError::BadBasis(
                    "finite carriers enumerate points, not a grid".into(),
                ));
            }
            (AlgCarrier::DR | AlgCarrier::DL, BasisSchedule::Grid { step }) => {
                if step.is_zero() {
                    return Err(AlgebraicError::BadBasis("grid step must be positive".into()));
                }
                // Grid elements are finite rationals: compact in d_R
                // (everything except ∞) and in d_L (everything).
            }
            (AlgCarrier::DR | AlgCarrier::DL, _) => {
                return Err(AlgebraicError::BadBasis(
                    "canonical carriers need a grid schedule".into(),
                ));
            }
        }
        if let Some(bottom) = &self.bottom {
            let ok = match (&self.carrier, bottom) {
                (AlgCarrier::Finite(space), AlgPoint::Point(b)) => {
                    *b < space.len() && (0..space.len()).all(|x| space.d(*b, x).is_zero())
                }
                (AlgCarrier::DR, AlgPoint::Value(v)) => v.is_zero(),
                (AlgCarrier::DL, AlgPoint::Value(v)) => *v == ExtValue::Infinity,
                _ => false,
            };
            if !ok {
                return Err(AlgebraicError::BadBottom);
            }
        }
        Ok(())
    }
}

/// Compactness of a point of a finite space: `d(a,−)` preserves the
/// Yoneda limits of the eventually cyclic nets. Cycle points share
/// their distance rows, so on a finite space every point is compact;
/// the quantification is still executed literally over the cluster
/// cycles.
pub fn is_compact_finite(space: &Arc<FiniteSpace>, a: usize) -> Result<bool, AlgebraicError> {
    if a >= space.len() {
        return Err(AlgebraicError::UnknownPoint {
            index: a,
            len: space.len(),
        });
    }
    for cluster in space.zero_clusters() {
        let net = NetDescriptor::Finite {
            space: space.clone(),
            net: FiniteNet::new(Vec::new(), cluster.clone()).expect("clusters are nonempty"),
        };
        let limits = match crate::spaces::yoneda_limits(&net)? {
            crate::spaces::YonedaLimits::Points(p) => p,
            _ => unreachable!("finite net"),
        };
        // Tail value of d(a, x_j) is d(a, c) for any cycle point c.
        let tail = space.d(a, cluster[0]);
        for x in limits {
            if space.d(a, x) != tail {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Compactness in the canonical carriers: everything is compact in
/// `d_L`; everything except `∞` is compact in `d_R`; in a finite power
/// a tuple is compact iff every coordinate is (the finitely many
/// coordinates make the near-bottom condition automatic).
pub fn compact_catalogue(
    space: &CanonicalSpace,
    point: &[ExtValue],
) -> Result<bool, AlgebraicError> {
    if point.len() != space.arity() {
        return Err(AlgebraicError::CarrierMismatch(format!(
            "{} expects {}-tuples, got {}",
            space.name(),
            space.arity(),
            point.len()
        )));
    }
    Ok(if space.base_is_dr() {
        point.iter().all(|v| v.is_finite())
    } else {
        true
    })
}

/// A certified enclosure of a Scott-distance value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueInterval {
    pub lo: ExtValue,
    pub hi: ExtValue,
}

impl ValueInterval {
    pub fn exact(v: ExtValue) -> ValueInterval {
        ValueInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &ExtValue) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn width(&self) -> ExtValue {
        self.hi.tminus(&self.lo)
    }
}

fn carrier_dist(carrier: &AlgCarrier, x: &ExtValue, y: &ExtValue) -> ExtValue {
    match carrier {
        AlgCarrier::DR => crate::costs::d_r(x, y),
        AlgCarrier::DL => crate::costs::d_l(x, y),
        AlgCarrier::Finite(_) => unreachable!("finite carriers use index distances"),
    }
}

/// The summand `g(b) = inf_{a∈A} d(b,a) ⊖ d(b,x)` of the basis
/// formula, at a finite basis element `b`.
fn basis_summand(
    carrier: &AlgCarrier,
    b: &ExtValue,
    x: &ExtValue,
    a: &[ExtValue],
) -> ExtValue {
    let mut inf = ExtValue::Infinity;
    for aa in a {
        let d = carrier_dist(carrier, b, aa);
        if d < inf {
            inf = d;
        }
    }
    inf.tminus(&carrier_dist(carrier, b, x))
}

/// Evaluates `σ(x,A) = sup_b (inf_{a∈A} d(b,a) ⊖ d(b,x))`.
///
/// Finite carriers enumerate their basis totally, so `lo = hi` and
/// `eps` is ignored; `σ(x,∅) = ∞` by the empty-set axiom. On `d_R` and
/// `d_L`, `use_breakpoints = true` evaluates the piecewise linear
/// summand at its breakpoints (plus one probe beyond the largest, with
/// the tail slope made explicit), which is exact. With the breakpoint
/// optimization disabled the basis grid `b_k = k·step` is enumerated up
/// to just past `x` and `max A` with `step ≤ eps`; the summand is
/// 1-Lipschitz, so the enclosure `[lo, lo + step/2]` is sound.
pub fn scott_distance_algebraic(
    spec: &AlgebraicSpec,
    x: &AlgPoint,
    a: &[AlgPoint],
    eps: &ExtValue,
    use_breakpoints: bool,
) -> Result<ValueInterval, AlgebraicError> {
    spec.validate()?;
    match &spec.carrier {
        AlgCarrier::Finite(space) => {
            let xi = match x {
                AlgPoint::Point(i) if *i < space.len() => *i,
                AlgPoint::Point(i) => {
                    return Err(AlgebraicError::UnknownPoint {
                        index: *i,
                        len: space.len(),
                    })
                }
                AlgPoint::Value(_) => {
                    return Err(AlgebraicError::CarrierMismatch(
                        "finite carriers index points".into(),
                    ))
                }
            };
            let mut members = Vec::new();
            for p in a {
                match p {
                    AlgPoint::Point(i) if *i < space.len() => members.push(*i),
                    AlgPoint::Point(i) => {
                        return Err(AlgebraicError::UnknownPoint {
                            index: *i,
                            len: space.len(),
                        })
                    }
                    AlgPoint::Value(_) => {
                        return Err(AlgebraicError::CarrierMismatch(
                            "finite carriers index points".into(),
                        ))
                    }
                }
            }
            if members.is_empty() {
                return Ok(ValueInterval::exact(ExtValue::Infinity));
            }
            let basis: Vec<usize> = match &spec.basis {
                BasisSchedule::AllPoints => (0..space.len()).collect(),
                BasisSchedule::Points(pts) => pts.clone(),
                BasisSchedule::Grid { .. } => unreachable!("validated"),
            };
            let mut sup = ExtValue::zero();
            for b in basis {
                let mut inf = ExtValue::Infinity;
                for &aa in &members {
                    if space.d(b, aa) < &inf {
                        inf = space.d(b, aa).clone();
                    }
                }
                let g = inf.tminus(space.d(b, xi));
                if g > sup {
                    sup = g;
                }
            }
            Ok(ValueInterval::exact(sup))
        }
        AlgCarrier::DR | AlgCarrier::DL => {
            let xv = match x {
                AlgPoint::Value(v) => v.clone(),
                AlgPoint::Point(_) => {
                    return Err(AlgebraicError::CarrierMismatch(
                        "canonical carriers take values".into(),
                    ))
                }
            };
            let mut avs = Vec::new();
            for p in a {
                match p {
                    AlgPoint::Value(v) => avs.push(v.clone()),
                    AlgPoint::Point(_) => {
                        return Err(AlgebraicError::CarrierMismatch(
                            "canonical carriers take values".into(),
                        ))
                    }
                }
            }
            if avs.is_empty() {
                return Ok(ValueInterval::exact(ExtValue::Infinity));
            }
            if use_breakpoints {
                scott_canonical_breakpoints(spec, &xv, &avs)
            } else {
                scott_canonical_grid(spec, &xv, &avs, eps)
            }
        }
    }
}

/// Finite breakpoints `{0} ∪ (A ∪ {x}) ∩ [0,∞)` plus one probe past the
/// largest.
fn finite_breakpoints(x: &ExtValue, a: &[ExtValue]) -> Vec<Rat> {
    let mut pts: Vec<Rat> = vec![Rat::zero()];
    for v in a.iter().chain([x]) {
        if let Some(r) = v.as_rat() {
            pts.push(r.clone());
        }
    }
    pts.sort();
    pts.dedup();
    let beyond = pts.last().expect("contains 0") + &Rat::from_integer(1u32.into());
    pts.push(beyond);
    pts
}

/// Tail slope of the summand beyond every finite breakpoint: positive
/// exactly in the `d_R` case with `x = ∞` and no `∞` in `A`, where the
/// sup is `∞`.
fn tail_unbounded(carrier: &AlgCarrier, x: &ExtValue, a: &[ExtValue]) -> bool {
    matches!(carrier, AlgCarrier::DR)
        && !x.is_finite()
        && a.iter().all(|v| v.is_finite())
}

fn scott_canonical_breakpoints(
    spec: &AlgebraicSpec,
    x: &ExtValue,
    a: &[ExtValue],
) -> Result<ValueInterval, AlgebraicError> {
    if tail_unbounded(&spec.carrier, x, a) {
        return Ok(ValueInterval::exact(ExtValue::Infinity));
    }
    let mut sup = ExtValue::zero();
    for b in finite_breakpoints(x, a) {
        let g = basis_summand(&spec.carrier, &ExtValue::from_rat(b), x, a);
        if g > sup {
            sup = g;
        }
    }
    Ok(ValueInterval::exact(sup))
}

fn scott_canonical_grid(
    spec: &AlgebraicSpec,
    x: &ExtValue,
    a: &[ExtValue],
    eps: &ExtValue,
) -> Result<ValueInterval, AlgebraicError> {
    let eps = match eps {
        ExtValue::Finite(r) if !r.is_zero() => r.clone(),
        ExtValue::Infinity => Rat::new(1u32.into(), 2u32.into()),
        _ => return Err(AlgebraicError::NonpositiveEps),
    };
    if tail_unbounded(&spec.carrier, x, a) {
        return Err(AlgebraicError::CannotCertify(
            "the summand grows without bound beyond every finite grid".into(),
        ));
    }
    let base_step = match &spec.basis {
        BasisSchedule::Grid { step } => step.clone(),
        _ => unreachable!("validated"),
    };
    let step = std::cmp::min(base_step, eps);
    let horizon = finite_breakpoints(x, a)
        .last()
        .expect("nonempty")
        .clone();
    // k up to horizon/step, then one step beyond all breakpoints; past
    // that the summand is constant (the unbounded case was excluded).
    let steps = (&horizon / &step).ceil() + Rat::from_integer(1u32.into());
    let steps: u64 = steps
        .to_integer()
        .try_into()
        .map_err(|_| AlgebraicError::CannotCertify("grid too fine for the horizon".into()))?;
    let lo = grid_sup_integer(&spec.carrier, x, a, &step, steps)
        .unwrap_or_else(|| grid_sup_bignum(&spec.carrier, x, a, &step, steps));
    // 1-Lipschitz summand: between grid points the sup exceeds the
    // endpoint maximum by at most step/2.
    let hi = &lo + &ExtValue::from_rat(&step / &Rat::from_integer(2u32.into()));
    Ok(ValueInterval { lo, hi })
}

fn grid_sup_bignum(
    carrier: &AlgCarrier,
    x: &ExtValue,
    a: &[ExtValue],
    step: &Rat,
    steps: u64,
) -> ExtValue {
    let mut lo = ExtValue::zero();
    for k in 0..=steps {
        let b = step * &Rat::from_integer(k.into());
        let g = basis_summand(carrier, &ExtValue::from_rat(b), x, a);
        if g > lo {
            lo = g;
        }
    }
    lo
}

/// Dedicated enumeration loop over small common-denominator rationals:
/// the `∞` cases make the summand constant and are resolved up front,
/// and the remaining all-finite sweep runs in scaled `u128` arithmetic.
/// Returns `None` when the values do not fit, in which case the caller
/// falls back to big-rational arithmetic.
fn grid_sup_integer(
    carrier: &AlgCarrier,
    x: &ExtValue,
    a: &[ExtValue],
    step: &Rat,
    steps: u64,
) -> Option<ExtValue> {
    // Resolve the ∞ corners: in d_R an ∞ member of A pins the inner inf
    // to 0; in d_L an ∞ x pins the subtrahend to ∞, and an all-∞ A pins
    // the inner inf to ∞.
    let (inner, outer) = match carrier {
        AlgCarrier::DR => {
            if a.iter().any(|v| !v.is_finite()) {
                return Some(ExtValue::zero()); // g ≡ 0
            }
            let x = match x {
                ExtValue::Finite(r) => r,
                // x = ∞ with all-finite A is the unbounded tail, already
                // rejected before any grid sweep.
                ExtValue::Infinity => unreachable!("unbounded case excluded"),
            };
            let a_max = a
                .iter()
                .filter_map(|v| v.as_rat())
                .max()
                .expect("nonempty all-finite");
            // g(b) = (b ⊖ a_max) ⊖ (b ⊖ x)
            (a_max.clone(), x.clone())
        }
        AlgCarrier::DL => {
            if !x.is_finite() {
                return Some(ExtValue::zero()); // g ≡ (… ⊖ ∞) = 0
            }
            let finite_min = a.iter().filter_map(|v| v.as_rat()).min();
            let Some(m) = finite_min else {
                return Some(ExtValue::Infinity); // inner inf ≡ ∞, subtrahend finite
            };
            let x = x.as_rat().expect("checked");
            // g(b) = (m ⊖ b) ⊖ (x ⊖ b)
            (m.clone(), x.clone())
        }
        AlgCarrier::Finite(_) => unreachable!("finite carriers enumerate points"),
    };

    // Scale everything to the common denominator of step, inner and
    // outer.
    let denom = lcm_biguint(
        step.denom(),
        &lcm_biguint(inner.denom(), outer.denom()),
    );
    let scale = |r: &Rat| -> Option<u128> {
        let scaled = r.numer() * &(&denom / r.denom());
        u128::try_from(&scaled).ok()
    };
    let step_s = scale(step)?;
    let inner_s = scale(&inner)?;
    let outer_s = scale(&outer)?;
    // b_k = k·step_s stays within u128 for the whole sweep.
    (steps as u128).checked_mul(step_s)?;

    let mut best: u128 = 0;
    for k in 0..=(steps as u128) {
        let b = k * step_s;
        let g = match carrier {
            AlgCarrier::DR => b.saturating_sub(inner_s).saturating_sub(b.saturating_sub(outer_s)),
            AlgCarrier::DL => inner_s.saturating_sub(b).saturating_sub(outer_s.saturating_sub(b)),
            AlgCarrier::Finite(_) => unreachable!(),
        };
        if g > best {
            best = g;
        }
    }
    Some(ExtValue::from_rat(Rat::new(
        num_bigint::BigUint::from(best),
        denom,
    )))
}

fn lcm_biguint(a: &num_bigint::BigUint, b: &num_bigint::BigUint) -> num_bigint::BigUint {
    use num_integer::Integer;
    a.lcm(b)
}

/// `δ_ℙ(x, A) = x ⊖ sup A` for nonempty `A`, `∞` otherwise.
pub fn delta_p(x: &ExtValue, a: &[ExtValue]) -> ExtValue {
    match a.iter().max() {
        None => ExtValue::Infinity,
        Some(sup) => x.tminus(sup),
    }
}

/// Report of [`subbasis_check`].
#[derive(Debug, Clone, Default)]
pub struct SubbasisReport {
    pub generators_checked: usize,
    pub reconstructions_checked: usize,
    pub failures: Vec<String>,
}

impl SubbasisReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// On a finite carrier, verifies that the family
/// `{r ⊖ d(b,−) : b ∈ basis, r ∈ grid}` consists of Scott weights that
/// are regular for the Scott table, and that every `σ(−,A)` is
/// reconstructed from the basis by the sup formula.
pub fn subbasis_check(spec: &AlgebraicSpec) -> Result<SubbasisReport, AlgebraicError> {
    spec.validate()?;
    let space = match &spec.carrier {
        AlgCarrier::Finite(space) => space.clone(),
        _ => {
            return Err(AlgebraicError::BadBasis(
                "the subbasis check runs on finite carriers".into(),
            ))
        }
    };
    let basis: Vec<usize> = match &spec.basis {
        BasisSchedule::AllPoints => (0..space.len()).collect(),
        BasisSchedule::Points(pts) => pts.clone(),
        BasisSchedule::Grid { .. } => unreachable!("validated"),
    };
    let sigma = crate::approach::scott_distance_finite(&space)?;
    let mut report = SubbasisReport::default();

    let mut radii: Vec<ExtValue> = vec![ExtValue::zero(), ExtValue::Infinity];
    let entries = space.positive_finite_entries();
    radii.extend(entries.iter().cloned());
    for e in &entries {
        for f in &entries {
            radii.push(e + f);
        }
    }
    radii.sort();
    radii.dedup();

    for &b in &basis {
        for r in &radii {
            let values: Vec<ExtValue> =
                (0..space.len()).map(|y| r.tminus(space.d(b, y))).collect();
            report.generators_checked += 1;
            if !is_weight(&space, &values).expect("sized") {
                report
                    .failures
                    .push(format!("generator ({b}, {r}) is not a weight"));
                continue;
            }
            let w = WeightFn::new(space.clone(), values.clone()).expect("checked");
            if !is_scott_weight(&w) {
                report
                    .failures
                    .push(format!("generator ({b}, {r}) is not a Scott weight"));
            }
            if !crate::approach::is_regular_function(&sigma, &values) {
                report
                    .failures
                    .push(format!("generator ({b}, {r}) is not regular for σ"));
            }
        }
    }

    let n = space.len();
    for x in 0..n {
        for mask in 1..(1u32 << n) {
            let members: Vec<usize> =
                (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let mut sup = ExtValue::zero();
            for &b in &basis {
                let mut inf = ExtValue::Infinity;
                for &aa in &members {
                    if space.d(b, aa) < &inf {
                        inf = space.d(b, aa).clone();
                    }
                }
                let g = inf.tminus(space.d(b, x));
                if g > sup {
                    sup = g;
                }
            }
            report.reconstructions_checked += 1;
            if sup != *sigma.delta(x, mask as Subset) {
                report.failures.push(format!(
                    "σ({x}, {mask:#b}) = {} is not reconstructed (got {sup})",
                    sigma.delta(x, mask as Subset)
                ));
            }
        }
    }
    Ok(report)
}

/// Report of [`power_sigma_check`].
#[derive(Debug, Clone, Default)]
pub struct PowerSigmaReport {
    pub entries_checked: usize,
    pub first_mismatch: Option<String>,
}

impl PowerSigmaReport {
    pub fn ok(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Verifies `Σ(Xⁿ) = (ΣX)ⁿ` tablewise for a pointed finite space.
///
/// The left side is the Scott distance of the product space, streamed
/// entry by entry. The right side is the product of approach tables
/// computed through the product subbasis
/// `{δ(−,B) ∘ p_i}`: a minimal generated regular function vanishing on
/// `A` picks, for each `a ∈ A`, one translated subbasis element, and
/// since the choices are independent the sup collapses to
/// `δ_prod(x,A) = min_{a∈A} max_i T(x_i, a_i)` with
/// `T(u,v) = max_B (δ(u,B) ⊖ δ(v,B))` swept over the whole subbasis.
pub fn power_sigma_check(
    space: &Arc<FiniteSpace>,
    n: usize,
) -> Result<PowerSigmaReport, AlgebraicError> {
    if n == 0 || n > 3 {
        return Err(AlgebraicError::BadExponent(n));
    }
    let len = space.len();
    let has_bottom = (0..len).any(|b| (0..len).all(|x| space.d(b, x).is_zero()));
    if !has_bottom {
        return Err(AlgebraicError::NoBottom);
    }
    let total = len.pow(n as u32);
    if total > 16 {
        return Err(AlgebraicError::ProductTooLarge(total));
    }

    let sigma_x = crate::approach::scott_distance_finite(space)?;
    // T(u,v) = max over subbasis sets B of δ(u,B) ⊖ δ(v,B).
    let mut t = vec![vec![ExtValue::zero(); len]; len];
    for u in 0..len {
        for v in 0..len {
            let mut sup = ExtValue::zero();
            for b in 0..sigma_x.subsets() as Subset {
                let g = sigma_x.delta(u, b).tminus(sigma_x.delta(v, b));
                if g > sup {
                    sup = g;
                }
            }
            t[u][v] = sup;
        }
    }

    let prod = Arc::new(power(space, n)?);
    let tuple_of = |flat: usize| -> Vec<usize> {
        let mut digits = vec![0usize; n];
        let mut rest = flat;
        for k in (0..n).rev() {
            digits[k] = rest % len;
            rest /= len;
        }
        digits
    };

    let mut report = PowerSigmaReport::default();
    for x in 0..total {
        let xt = tuple_of(x);
        for mask in 0..(1u32 << total) {
            let members: Vec<usize> =
                (0..total).filter(|i| mask & (1 << i) != 0).collect();
            // Left: Scott distance of the product space.
            let lhs = if members.is_empty() {
                ExtValue::Infinity
            } else {
                scott_entry_streamed(&prod, x, &members)?
            };
            // Right: product table from the subbasis.
            let rhs = if members.is_empty() {
                ExtValue::Infinity
            } else {
                let mut inf = ExtValue::Infinity;
                for &a in &members {
                    let at = tuple_of(a);
                    let mut coord_sup = ExtValue::zero();
                    for k in 0..n {
                        if t[xt[k]][at[k]] > coord_sup {
                            coord_sup = t[xt[k]][at[k]].clone();
                        }
                    }
                    if coord_sup < inf {
                        inf = coord_sup;
                    }
                }
                inf
            };
            report.entries_checked += 1;
            if lhs != rhs && report.first_mismatch.is_none() {
                report.first_mismatch = Some(format!(
                    "x={} A={:#b}: Σ(Xⁿ) gives {lhs}, (ΣX)ⁿ gives {rhs}",
                    prod.label(x),
                    mask
                ));
            }
        }
    }
    Ok(report)
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

    #[test]
    fn every_point_of_a_finite_space_is_compact() {
        let w = w();
        for a in 0..3 {
            assert!(is_compact_finite(&w, a).unwrap());
        }
        let poset = Arc::new(arrow_two());
        for a in 0..2 {
            assert!(is_compact_finite(&poset, a).unwrap());
        }
        let one = Arc::new(
            FiniteSpace::metric(vec!["x".into()], vec![vec![ExtValue::zero()]]).unwrap(),
        );
        assert!(is_compact_finite(&one, 0).unwrap());
    }

    /// Brute-force compactness over all cycles up to length 3:
    /// `d(a, x) = tail of d(a, x_j)` for every forward Cauchy cycle and
    /// every Yoneda limit `x`.
    #[test]
    fn compactness_oracle_over_short_cycles() {
        let spaces = [space_w(), discrete_two(), glued_two(), arrow_two()];
        for space in spaces {
            let space = Arc::new(space);
            let n = space.len();
            let mut cycles: Vec<Vec<usize>> = Vec::new();
            for a in 0..n {
                cycles.push(vec![a]);
                for b in 0..n {
                    cycles.push(vec![a, b]);
                    for c in 0..n {
                        cycles.push(vec![a, b, c]);
                    }
                }
            }
            for a in 0..n {
                let mut oracle = true;
                for cycle in &cycles {
                    if !crate::spaces::cycle_is_cauchy(&space, cycle) {
                        continue;
                    }
                    let net = NetDescriptor::Finite {
                        space: space.clone(),
                        net: FiniteNet::new(vec![], cycle.clone()).unwrap(),
                    };
                    let limits = match crate::spaces::yoneda_limits(&net).unwrap() {
                        crate::spaces::YonedaLimits::Points(p) => p,
                        _ => unreachable!(),
                    };
                    let tail = space.d(a, cycle[0]);
                    if limits.iter().any(|&x| space.d(a, x) != tail) {
                        oracle = false;
                    }
                }
                assert_eq!(is_compact_finite(&space, a).unwrap(), oracle);
            }
        }
    }

    #[test]
    fn compactness_in_canonical_carriers() {
        assert!(compact_catalogue(&CanonicalSpace::DR, &[v("5")]).unwrap());
        assert!(!compact_catalogue(&CanonicalSpace::DR, &[ExtValue::Infinity]).unwrap());
        assert!(compact_catalogue(&CanonicalSpace::DL, &[ExtValue::Infinity]).unwrap());
        assert!(
            compact_catalogue(&CanonicalSpace::PowerDR(2), &[v("1"), v("2")]).unwrap()
        );
        assert!(
            !compact_catalogue(&CanonicalSpace::PowerDR(2), &[v("1"), ExtValue::Infinity])
                .unwrap()
        );
        assert!(compact_catalogue(&CanonicalSpace::DR, &[]).is_err());
    }

    #[test]
    fn sigma_dr_examples() {
        let spec = AlgebraicSpec::dr();
        let q = |x: &str, a: &[&str]| {
            let a: Vec<AlgPoint> = a.iter().map(|s| AlgPoint::Value(v(s))).collect();
            scott_distance_algebraic(
                &spec,
                &AlgPoint::Value(v(x)),
                &a,
                &ExtValue::rational(1, 1024),
                true,
            )
            .unwrap()
        };
        let five = q("5", &["1", "3"]);
        assert!(five.is_exact());
        assert_eq!(five.lo, v("2"));

        let two = q("2", &["3"]);
        assert!(two.is_exact());
        assert_eq!(two.lo, v("0"));

        // σ(x, ∅) = ∞.
        let empty = scott_distance_algebraic(
            &spec,
            &AlgPoint::Value(v("5")),
            &[],
            &ExtValue::one(),
            true,
        )
        .unwrap();
        assert_eq!(empty.lo, ExtValue::Infinity);

        // x = ∞ against a finite set: the sup is unbounded, hence ∞,
        // matching δ_ℙ(∞, A) = ∞ ⊖ max A = ∞.
        let inf = scott_distance_algebraic(
            &spec,
            &AlgPoint::Value(ExtValue::Infinity),
            &[AlgPoint::Value(v("3"))],
            &ExtValue::one(),
            true,
        )
        .unwrap();
        assert_eq!(inf.lo, ExtValue::Infinity);
    }

    #[test]
    fn sigma_dr_matches_delta_p_on_grid_mode() {
        let spec = AlgebraicSpec::dr();
        let xs = ["0", "1/2", "2", "7/3", "5"];
        let sets: &[&[&str]] = &[&["1"], &["1", "3"], &["1/3", "7/2"], &["0"]];
        for x in xs {
            for a in sets {
                let ap: Vec<AlgPoint> = a.iter().map(|s| AlgPoint::Value(v(s))).collect();
                let avs: Vec<ExtValue> = a.iter().map(|s| v(s)).collect();
                let expect = delta_p(&v(x), &avs);
                let exact = scott_distance_algebraic(
                    &spec,
                    &AlgPoint::Value(v(x)),
                    &ap,
                    &ExtValue::one(),
                    true,
                )
                .unwrap();
                assert!(exact.is_exact());
                assert_eq!(exact.lo, expect);

                let coarse = scott_distance_algebraic(
                    &spec,
                    &AlgPoint::Value(v(x)),
                    &ap,
                    &ExtValue::rational(1, 1024),
                    false,
                )
                .unwrap();
                assert!(coarse.contains(&expect), "{x} {a:?}");
                let fine = scott_distance_algebraic(
                    &spec,
                    &AlgPoint::Value(v(x)),
                    &ap,
                    &ExtValue::rational(1, 1 << 20),
                    false,
                )
                .unwrap();
                assert!(fine.contains(&expect));
                assert!(fine.width() <= coarse.width());
            }
        }
    }

    #[test]
    fn sigma_dl_matches_alexandroff() {
        // d_L is Smyth complete, so σ = Γ: σ(x,A) = inf_a d_L(x,a) =
        // (min A) ⊖ x.
        let spec = AlgebraicSpec::dl();
        let cases = [("0", &["2", "3"][..], "2"), ("1", &["2"][..], "1"), (
            "4",
            &["2", "3"][..],
            "0",
        )];
        for (x, a, expect) in cases {
            let ap: Vec<AlgPoint> = a.iter().map(|s| AlgPoint::Value(v(s))).collect();
            let got = scott_distance_algebraic(
                &spec,
                &AlgPoint::Value(v(x)),
                &ap,
                &ExtValue::one(),
                true,
            )
            .unwrap();
            assert!(got.is_exact());
            assert_eq!(got.lo, v(expect), "σ_DL({x}, {a:?})");
        }
    }

    #[test]
    fn basis_formula_on_a_finite_space_equals_the_alexandroff_value() {
        let w = w();
        let spec = AlgebraicSpec::finite(w.clone());
        let gamma = crate::approach::alexandroff(&w).unwrap();
        for x in 0..3 {
            for mask in 0..8u32 {
                let members: Vec<AlgPoint> = (0..3)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(AlgPoint::Point)
                    .collect();
                let got = scott_distance_algebraic(
                    &spec,
                    &AlgPoint::Point(x),
                    &members,
                    &ExtValue::one(),
                    true,
                )
                .unwrap();
                assert!(got.is_exact());
                assert_eq!(got.lo, *gamma.delta(x, mask));
            }
        }
    }

    #[test]
    fn delta_p_examples() {
        assert_eq!(delta_p(&v("5"), &[v("1"), v("2")]), v("3"));
        assert_eq!(delta_p(&v("5"), &[]), ExtValue::Infinity);
        assert_eq!(delta_p(&v("2"), &[v("3")]), v("0"));
        assert_eq!(delta_p(&ExtValue::Infinity, &[ExtValue::Infinity]), v("0"));
    }

    #[test]
    fn subbasis_check_passes_with_the_full_basis() {
        let report = subbasis_check(&AlgebraicSpec::finite(w())).unwrap();
        assert!(report.ok(), "{:?}", report.failures);
        assert!(report.generators_checked > 0);
    }

    #[test]
    fn dropped_basis_point_breaks_reconstruction() {
        // Keep only points that cannot see c's neighborhood scale.
        let spec = AlgebraicSpec {
            carrier: AlgCarrier::Finite(w()),
            basis: BasisSchedule::Points(vec![0, 1]),
            bottom: None,
        };
        let report = subbasis_check(&spec).unwrap();
        assert!(!report.ok());
        assert!(report.failures.iter().any(|f| f.contains("reconstructed")));
    }

    #[test]
    fn power_sigma_on_pointed_spaces() {
        // A two-point pointed space.
        let two = Arc::new(
            FiniteSpace::metric(
                vec!["bot".into(), "t".into()],
                vec![
                    vec![v("0"), v("0")],
                    vec![v("1"), v("0")],
                ],
            )
            .unwrap(),
        );
        let report = power_sigma_check(&two, 2).unwrap();
        assert!(report.ok(), "{:?}", report.first_mismatch);

        // n = 1 is the trivial equality.
        let report = power_sigma_check(&two, 1).unwrap();
        assert!(report.ok());

        // W has no bottom.
        assert!(matches!(
            power_sigma_check(&w(), 2),
            Err(AlgebraicError::NoBottom)
        ));
    }

    #[test]
    fn power_sigma_on_w_with_a_bottom() {
        let mut labels = vec!["bot".to_string()];
        labels.extend(space_w().labels().iter().cloned());
        let wd = space_w();
        let mut rows = vec![vec![v("0"); 4]];
        for x in 0..3 {
            let mut row = vec![ExtValue::Infinity];
            for y in 0..3 {
                row.push(wd.d(x, y).clone());
            }
            rows.push(row);
        }
        let pointed = Arc::new(FiniteSpace::metric(labels, rows).unwrap());
        let report = power_sigma_check(&pointed, 2).unwrap();
        assert!(report.ok(), "{:?}", report.first_mismatch);
        assert_eq!(report.entries_checked, 16 * 65536);
    }
}
