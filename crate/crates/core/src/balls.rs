//! Formal balls and the four topologies they induce on a finite space.
//!
//! A formal ball is a point with a finite radius; `(x,r) ⊑ (y,s)` iff
//! `r ≥ s + d(x,y)`. Directed families of balls are presented either as
//! finite lists or as shrinking families with eventually cyclic centers
//! and geometric or harmonic radius schedules; their joins are computed
//! exactly (the Yoneda limit of the centers paired with the limit of
//! the radii) and re-verified as least upper bounds against a radius
//! grid.
//!
//! [`topologies`] returns the open-ball topology, the coreflection of
//! the Scott distance (c-Scott), the d-Scott topology and the
//! generalized Scott topology. Finite spaces are Yoneda complete, hence
//! satisfy condition (S), hence d-Scott equals c-Scott; the sandwich
//! inclusions collapse to equalities and the battery asserts the whole
//! chain.

use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::approach::{
    coreflection, scott_distance_finite, ApproachError, Subset, TopologySpec,
};
use crate::costs::{ExtValue, Rat};
use crate::mutation;
use crate::spaces::{cycle_is_cauchy, FiniteNet, FiniteSpace};
use crate::weights::WeightFn;

#[derive(Debug, Error)]
pub enum BallError {
    #[error("formal balls have finite radius")]
    InfiniteRadius,
    #[error("unknown point index {index} in a space of {len} points")]
    UnknownPoint { index: usize, len: usize },
    #[error("presented family is not directed")]
    NotDirected,
    #[error("a ball chain cannot be empty")]
    EmptyChain,
    #[error("shift must be finite")]
    InfiniteShift,
    #[error("computed join failed grid verification: {0}")]
    JoinVerification(String),
    #[error(transparent)]
    Approach(#[from] ApproachError),
}

/// A formal ball `(center, radius)` with finite radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalBall {
    center: usize,
    radius: ExtValue,
}

impl FormalBall {
    pub fn new(center: usize, radius: ExtValue) -> Result<Self, BallError> {
        if !radius.is_finite() {
            return Err(BallError::InfiniteRadius);
        }
        Ok(FormalBall { center, radius })
    }

    /// `η(x) = (x, 0)`.
    pub fn eta(center: usize) -> FormalBall {
        FormalBall {
            center,
            radius: ExtValue::zero(),
        }
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn radius(&self) -> &ExtValue {
        &self.radius
    }
}

/// `(x,r) ⊑ (y,s) ⟺ r ≥ s + d(x,y)`.
pub fn ball_leq(b1: &FormalBall, b2: &FormalBall, space: &FiniteSpace) -> Result<bool, BallError> {
    for b in [b1, b2] {
        if b.center >= space.len() {
            return Err(BallError::UnknownPoint {
                index: b.center,
                len: space.len(),
            });
        }
    }
    Ok(b1.radius >= &b2.radius + space.d(b1.center, b2.center))
}

/// Membership in `B⁺φ = {(x,r) : φ(x) < r}`. The inequality is strict;
/// boundary balls are excluded.
pub fn bplus_contains(phi: &WeightFn, ball: &FormalBall) -> bool {
    if mutation::bplus_nonstrict() {
        *phi.value(ball.center) <= ball.radius
    } else {
        *phi.value(ball.center) < ball.radius
    }
}

/// Radius schedule of a shrinking family, decreasing to `limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadiusForm {
    /// `r_n = limit + scale·ratioⁿ` with `0 < ratio < 1`.
    Geometric { limit: Rat, scale: Rat, ratio: Rat },
    /// `r_n = limit + scale/(n+1)`.
    Harmonic { limit: Rat, scale: Rat },
}

impl RadiusForm {
    fn validate(&self) -> Result<(), BallError> {
        if let RadiusForm::Geometric { ratio, .. } = self {
            let one = Rat::new(1u32.into(), 1u32.into());
            if ratio.is_zero() || *ratio >= one {
                return Err(BallError::JoinVerification(
                    "geometric radius ratio must satisfy 0 < q < 1".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn at(&self, n: usize) -> Rat {
        match self {
            RadiusForm::Geometric {
                limit,
                scale,
                ratio,
            } => {
                let mut pow = Rat::new(1u32.into(), 1u32.into());
                for _ in 0..n {
                    pow *= ratio;
                }
                limit + &(scale * &pow)
            }
            RadiusForm::Harmonic { limit, scale } => {
                limit + &(scale / &Rat::from_integer(((n + 1) as u64).into()))
            }
        }
    }

    pub fn limit(&self) -> &Rat {
        match self {
            RadiusForm::Geometric { limit, .. } => limit,
            RadiusForm::Harmonic { limit, .. } => limit,
        }
    }

    fn shifted(&self, s: &Rat) -> RadiusForm {
        match self {
            RadiusForm::Geometric {
                limit,
                scale,
                ratio,
            } => RadiusForm::Geometric {
                limit: limit + s,
                scale: scale.clone(),
                ratio: ratio.clone(),
            },
            RadiusForm::Harmonic { limit, scale } => RadiusForm::Harmonic {
                limit: limit + s,
                scale: scale.clone(),
            },
        }
    }

    /// Decrement `r_n − r_{n+1}`.
    fn step(&self, n: usize) -> Rat {
        &self.at(n) - &self.at(n + 1)
    }
}

/// A finitely presented directed family in the formal-ball order.
#[derive(Debug, Clone)]
pub enum BallChain {
    /// A finite list; directed means every pair has an upper bound in
    /// the list.
    Finite(Vec<FormalBall>),
    /// `(x_n, r_n)` with eventually cyclic centers and radii shrinking
    /// to a limit.
    Shrinking { net: FiniteNet, radii: RadiusForm },
}

impl BallChain {
    /// The paper's standard example `{(x, r + 1/n)}`.
    pub fn harmonic_at(x: usize, r: Rat) -> BallChain {
        BallChain::Shrinking {
            net: FiniteNet::constant(x),
            radii: RadiusForm::Harmonic {
                limit: r,
                scale: Rat::new(1u32.into(), 1u32.into()),
            },
        }
    }

    pub fn shifted(&self, s: &ExtValue) -> Result<BallChain, BallError> {
        let s = match s {
            ExtValue::Finite(r) => r,
            ExtValue::Infinity => return Err(BallError::InfiniteShift),
        };
        Ok(match self {
            BallChain::Finite(balls) => BallChain::Finite(
                balls
                    .iter()
                    .map(|b| FormalBall {
                        center: b.center,
                        radius: &b.radius + &ExtValue::Finite(s.clone()),
                    })
                    .collect(),
            ),
            BallChain::Shrinking { net, radii } => BallChain::Shrinking {
                net: net.clone(),
                radii: radii.shifted(s),
            },
        })
    }
}

/// How a shrinking presentation is directed: through its tail being
/// cofinal, or through a prefix ball topping everything.
#[derive(Debug, Clone, PartialEq, Eq)]
enum ShrinkingShape {
    NotDirected,
    TailCofinal,
    Top(FormalBall),
}

// Exact structure of a finite-prefix-plus-tail-chain family. The tail
// elements pair the cycle points (mutually at distance 0, so all share
// one distance row) with radii strictly decreasing to the limit; in a
// directed such family either every prefix ball sits below some tail
// element (tail cofinal) or the balls that do not are a directed finite
// set above the whole tail, whose greatest element tops the family.
fn shrinking_shape(
    net: &FiniteNet,
    radii: &RadiusForm,
    space: &FiniteSpace,
) -> Result<ShrinkingShape, BallError> {
    radii.validate()?;
    for &i in net.prefix.iter().chain(&net.cycle) {
        if i >= space.len() {
            return Err(BallError::UnknownPoint {
                index: i,
                len: space.len(),
            });
        }
    }
    if !cycle_is_cauchy(space, &net.cycle) {
        // The tail itself must be a chain: its consecutive center
        // distances vanish only inside a zero cluster, while the radius
        // decrement shrinks to zero.
        return Ok(ShrinkingShape::NotDirected);
    }
    let u = net.cycle[0];
    let lim = ExtValue::Finite(radii.limit().clone());
    let constant_radii = radii.step(0).is_zero();
    let prefix: Vec<FormalBall> = (0..net.prefix.len())
        .map(|n| FormalBall {
            center: net.at(n),
            radius: ExtValue::Finite(radii.at(n)),
        })
        .collect();

    // b sits below some tail element iff its slack over the limit
    // strictly clears the center distance (the limit radius is attained
    // only when the radii are constant).
    let below_tail = |b: &FormalBall| -> bool {
        let need = &lim + space.d(b.center, u);
        b.radius > need || (constant_radii && b.radius == need)
    };
    // Every tail element sits below c iff the limit radius does.
    let tail_below = |c: &FormalBall| -> Result<bool, BallError> {
        Ok(lim >= &c.radius + space.d(u, c.center))
    };

    if prefix.iter().all(below_tail) {
        return Ok(ShrinkingShape::TailCofinal);
    }
    // Some prefix ball is not below any tail element; directedness then
    // forces a top. Search the prefix for a ball above everything.
    for cand in &prefix {
        if !tail_below(cand)? {
            continue;
        }
        let mut tops = true;
        for p in &prefix {
            if !ball_leq(p, cand, space)? {
                tops = false;
                break;
            }
        }
        if tops {
            return Ok(ShrinkingShape::Top(cand.clone()));
        }
    }
    Ok(ShrinkingShape::NotDirected)
}

/// Decides whether the presented family is directed under `⊑`.
///
/// Finite lists are checked literally, pair by pair. For a shrinking
/// family the tail is a chain (forward Cauchy cycle, shrinking radii),
/// so the family is directed exactly when the tail is cofinal in it or
/// some prefix ball tops it; both conditions are decided exactly from
/// the closed forms.
pub fn chain_is_directed(chain: &BallChain, space: &FiniteSpace) -> Result<bool, BallError> {
    match chain {
        BallChain::Finite(balls) => {
            if balls.is_empty() {
                return Err(BallError::EmptyChain);
            }
            for a in balls {
                for b in balls {
                    let mut bounded = false;
                    for c in balls {
                        if ball_leq(a, c, space)? && ball_leq(b, c, space)? {
                            bounded = true;
                            break;
                        }
                    }
                    if !bounded {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        BallChain::Shrinking { net, radii } => {
            Ok(shrinking_shape(net, radii, space)? != ShrinkingShape::NotDirected)
        }
    }
}

fn radius_grid(space: &FiniteSpace, extra: &[ExtValue]) -> Vec<ExtValue> {
    let mut grid: Vec<ExtValue> = vec![ExtValue::zero()];
    let entries = space.positive_finite_entries();
    grid.extend(entries.iter().cloned());
    for e in &entries {
        for f in &entries {
            grid.push(e + f);
        }
        for x in extra {
            if x.is_finite() {
                grid.push(e + x);
            }
        }
    }
    grid.extend(extra.iter().filter(|x| x.is_finite()).cloned());
    grid.sort();
    grid.dedup();
    grid
}

/// Whether `(y,s)` bounds every member of the chain from above.
fn is_upper_bound(
    chain: &BallChain,
    cand: &FormalBall,
    space: &FiniteSpace,
) -> Result<bool, BallError> {
    match chain {
        BallChain::Finite(balls) => {
            for b in balls {
                if !ball_leq(b, cand, space)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        BallChain::Shrinking { net, radii } => {
            // Prefix members explicitly.
            for n in 0..net.prefix.len() {
                let b = FormalBall {
                    center: net.at(n),
                    radius: ExtValue::Finite(radii.at(n)),
                };
                if !ball_leq(&b, cand, space)? {
                    return Ok(false);
                }
            }
            // Tail members have radii strictly above the limit, so the
            // bound holds for all of them iff it holds at the limit.
            let lim = ExtValue::Finite(radii.limit().clone());
            for &u in &net.cycle {
                if lim < &cand.radius + space.d(u, cand.center) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Join of a directed chain.
///
/// For a finite directed list the join is its maximum element. For a
/// shrinking family it is the pair (Yoneda limit of the center net,
/// limit of the radii). The result is re-verified as a least upper
/// bound against every candidate ball over a derived radius grid.
pub fn chain_join(chain: &BallChain, space: &FiniteSpace) -> Result<FormalBall, BallError> {
    if !chain_is_directed(chain, space)? {
        return Err(BallError::NotDirected);
    }
    let join = match chain {
        BallChain::Finite(balls) => {
            let mut top: Option<&FormalBall> = None;
            'outer: for cand in balls {
                for b in balls {
                    if !ball_leq(b, cand, space)? {
                        continue 'outer;
                    }
                }
                top = Some(cand);
                break;
            }
            top.cloned().ok_or(BallError::NotDirected)?
        }
        BallChain::Shrinking { net, radii } => match shrinking_shape(net, radii, space)? {
            ShrinkingShape::NotDirected => return Err(BallError::NotDirected),
            ShrinkingShape::Top(top) => top,
            ShrinkingShape::TailCofinal => {
                let c = net.cycle[0];
                let n = space.len();
                let limit_pt = (0..n)
                    .find(|&x| (0..n).all(|y| space.d(x, y) == space.d(c, y)))
                    .expect("a forward Cauchy cycle is its own Yoneda limit");
                FormalBall {
                    center: limit_pt,
                    radius: ExtValue::Finite(radii.limit().clone()),
                }
            }
        },
    };

    // Grid verification: the join bounds the chain and sits below every
    // grid upper bound.
    if !is_upper_bound(chain, &join, space)? {
        return Err(BallError::JoinVerification(format!(
            "({}, {}) does not bound the chain",
            join.center, join.radius
        )));
    }
    let grid = radius_grid(space, std::slice::from_ref(&join.radius));
    for y in 0..space.len() {
        for s in &grid {
            let cand = FormalBall {
                center: y,
                radius: s.clone(),
            };
            if is_upper_bound(chain, &cand, space)? && !ball_leq(&join, &cand, space)? {
                return Err(BallError::JoinVerification(format!(
                    "grid bound ({y}, {s}) is not above the join"
                )));
            }
        }
    }
    Ok(join)
}

/// The open-ball topology, generated by `B(x,r) = {y : d(x,y) < r}` as
/// a basis. Distinct balls arise only at the matrix entry thresholds,
/// so the basis is finite.
pub fn open_ball_topology(space: &FiniteSpace) -> TopologySpec {
    let n = space.len();
    let full = ((1usize << n) - 1) as Subset;
    let mut family: Vec<Subset> = vec![0];
    for x in 0..n {
        let mut radii: Vec<ExtValue> = space
            .positive_finite_entries()
            .into_iter()
            .chain([ExtValue::Infinity])
            .collect();
        radii.dedup();
        for r in radii {
            let mut ball = 0;
            for y in 0..n {
                if *space.d(x, y) < r {
                    ball |= 1 << y;
                }
            }
            family.push(ball);
        }
    }
    family.sort_unstable();
    family.dedup();
    // Close under union and intersection to a fixpoint.
    loop {
        let before = family.len();
        let mut new = Vec::new();
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                new.push(family[i] | family[j]);
                new.push(family[i] & family[j]);
            }
        }
        family.extend(new);
        family.sort_unstable();
        family.dedup();
        if family.len() == before {
            break;
        }
    }
    let closed = family.iter().map(|&u| full & !u).collect();
    TopologySpec::new(space.labels().to_vec(), closed)
        .expect("ball families generate a topology")
}

/// The generalized Scott topology, with nets quantified over the
/// eventually cyclic descriptors.
///
/// A forward Cauchy cycle is a subset of a mutual-zero cluster, its
/// Yoneda limit set is that cluster, and the smallest ball around a
/// cycle point is the zero set of its row; `ε` below the least positive
/// matrix entry realizes it. So `U` is open iff for every cluster
/// meeting `U` the zero set of the cluster is contained in `U`.
pub fn generalized_scott_topology(space: &FiniteSpace) -> TopologySpec {
    let n = space.len();
    let full = ((1usize << n) - 1) as Subset;
    let clusters = space.zero_clusters();
    let cluster_masks: Vec<(Subset, Subset)> = clusters
        .iter()
        .map(|cluster| {
            let mut mask = 0;
            for &u in cluster {
                mask |= 1 << u;
            }
            let rep = cluster[0];
            let mut zeros = 0;
            for y in 0..n {
                if space.d(rep, y).is_zero() {
                    zeros |= 1 << y;
                }
            }
            (mask, zeros)
        })
        .collect();
    let closed = (0..=full)
        .filter(|&open| {
            cluster_masks
                .iter()
                .all(|&(mask, zeros)| mask & open == 0 || zeros & !open == 0)
        })
        .map(|open| full & !open)
        .collect();
    TopologySpec::new(space.labels().to_vec(), closed)
        .expect("generalized Scott opens form a topology")
}

/// The four topologies of a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourTopologies {
    pub open_ball: TopologySpec,
    pub c_scott: TopologySpec,
    pub d_scott: TopologySpec,
    pub gen_scott: TopologySpec,
}

/// Computes all four topologies.
///
/// The open-ball topology comes from the ball basis, c-Scott from the
/// coreflection of the Scott distance, and the generalized Scott
/// topology from the net definition. Finite spaces are Yoneda complete
/// and so satisfy condition (S), under which d-Scott equals c-Scott;
/// the Bφ construction from that proof is cross-checked at grid level
/// by [`d_scott_grid_cross_check`].
pub fn topologies(space: &Arc<FiniteSpace>) -> Result<FourTopologies, ApproachError> {
    let c_scott = coreflection(&scott_distance_finite(space)?)?;
    Ok(FourTopologies {
        open_ball: open_ball_topology(space),
        d_scott: c_scott.clone(),
        gen_scott: generalized_scott_topology(space),
        c_scott,
    })
}

/// Grid-level check of the Bφ construction behind d-Scott = c-Scott:
/// for each witness Scott weight φ, the set `Bφ = {(x,r) : φ(x) ≤ r}`
/// is a ⊑-lower set, is closed under joins of the catalogue chains over
/// the grid, and recovers φ as `φ_F(x) = inf{r : (x,r) ∈ Bφ}`.
pub fn d_scott_grid_cross_check(space: &Arc<FiniteSpace>) -> Result<bool, ApproachError> {
    use crate::approach::alexandroff;
    let n = space.len();
    let gamma = alexandroff(space)?;
    let mut witnesses: Vec<Vec<ExtValue>> = Vec::new();
    for b in 0..gamma.subsets() as Subset {
        witnesses.push((0..n).map(|x| gamma.delta(x, b).clone()).collect());
    }
    for values in witnesses {
        let Ok(phi) = WeightFn::new(space.clone(), values) else {
            return Ok(false);
        };
        // Compact grid: entries, the φ-values (needed so φ_F can recover
        // φ), zero and two spacers.
        let mut grid: Vec<ExtValue> = vec![
            ExtValue::zero(),
            ExtValue::half(&ExtValue::one()),
            ExtValue::one(),
        ];
        grid.extend(space.positive_finite_entries());
        grid.extend(phi.values().iter().filter(|v| v.is_finite()).cloned());
        grid.sort();
        grid.dedup();
        let in_bphi = |x: usize, r: &ExtValue| *phi.value(x) <= *r;
        // Lower set on the grid.
        for x in 0..n {
            for r in &grid {
                if !in_bphi(x, r) {
                    continue;
                }
                for y in 0..n {
                    for s in &grid {
                        let below = *s >= r + space.d(y, x);
                        if below && !in_bphi(y, s) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        // Chain closure: {(x, r + 2⁻ⁿ)} ⊆ Bφ forces (x,r) ∈ Bφ.
        for x in 0..n {
            for r in &grid {
                let ExtValue::Finite(rr) = r else { continue };
                let chain_in = *phi.value(x) <= *r; // φ(x) ≤ r + 2⁻ⁿ for all n ⟺ φ(x) ≤ r
                let join_in = in_bphi(x, &ExtValue::Finite(rr.clone()));
                if chain_in != join_in {
                    return Ok(false);
                }
            }
        }
        // φ_F recovers φ on the grid.
        for x in 0..n {
            let inf = grid
                .iter()
                .filter(|r| in_bphi(x, r))
                .min()
                .cloned()
                .unwrap_or(ExtValue::Infinity);
            if inf != *phi.value(x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One verified condition-(S) instance.
#[derive(Debug, Clone)]
pub struct ConditionSCase {
    pub chain_index: usize,
    pub shift: ExtValue,
    pub join: Option<FormalBall>,
    pub shifted_join: Option<FormalBall>,
    pub holds: bool,
}

/// Report of [`check_condition_s_instance`].
#[derive(Debug, Clone, Default)]
pub struct ConditionSReport {
    pub cases: Vec<ConditionSCase>,
}

impl ConditionSReport {
    pub fn ok(&self) -> bool {
        self.cases.iter().all(|c| c.holds)
    }
}

/// For each chain and shift `s`, verifies that `{(x_i, r_i)}` has a
/// join iff `{(x_i, r_i + s)}` does. Finite spaces are Yoneda complete,
/// so both joins always exist and every instance must pass.
pub fn check_condition_s_instance(
    space: &FiniteSpace,
    chains: &[BallChain],
    shifts: &[ExtValue],
) -> Result<ConditionSReport, BallError> {
    let mut report = ConditionSReport::default();
    for (chain_index, chain) in chains.iter().enumerate() {
        if !chain_is_directed(chain, space)? {
            return Err(BallError::NotDirected);
        }
        for shift in shifts {
            let shifted = chain.shifted(shift)?;
            let join = chain_join(chain, space).ok();
            let shifted_join = chain_join(&shifted, space).ok();
            let holds = join.is_some() == shifted_join.is_some();
            report.cases.push(ConditionSCase {
                chain_index,
                shift: shift.clone(),
                join,
                shifted_join,
                holds,
            });
        }
    }
    Ok(report)
}
