//! The case study on the unit interval where the c-Scott and d-Scott
//! topologies differ.
//!
//! The carrier is `[0,1]` (rational points) with the case-defined
//! metric `d(x,y) = |x−y|` for `x,y ≠ 0`, `d(x,0) = 0`, and
//! `d(0,y) = 1` for `y > 0`. The formal-ball chain
//! `{(1/2ⁿ, 1/2ⁿ)}` is directed with join `(0,0)`, which forces every
//! ⊑-lower, directed-join-closed set containing `η((0,1])` to contain
//! `η(0)`: the interval `(0,1]` is not d-Scott closed. Yet the weight
//! `φ(0) = 1, φ(x) = 0` for `x > 0` preserves the Yoneda limits of the
//! space's forward Cauchy nets, so `φ⁻¹(0) = (0,1]` is c-Scott closed.
//! All checks run exactly on dyadic rationals.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::costs::{ExtValue, Rat};

/// Points of the carrier: exact rationals in `[0, 1]`.
pub type GnPoint = Rat;

/// The case-defined metric.
pub fn dist(x: &GnPoint, y: &GnPoint) -> ExtValue {
    if y.is_zero() {
        ExtValue::zero()
    } else if x.is_zero() {
        ExtValue::one()
    } else if x >= y {
        ExtValue::from_rat(x - y)
    } else {
        ExtValue::from_rat(y - x)
    }
}

/// The separating weight: `φ(0) = 1`, `φ(x) = 0` for `x > 0`.
pub fn separating_weight(x: &GnPoint) -> ExtValue {
    if x.is_zero() {
        ExtValue::one()
    } else {
        ExtValue::zero()
    }
}

/// Finitely presented forward Cauchy net candidates in the carrier,
/// following the space's own classification: nets with a Yoneda limit
/// are eventually constant `0` or converge in the usual sense to a
/// nonzero limit; usual convergence to `0` (without being eventually
/// `0`) admits no Yoneda limit.
#[derive(Debug, Clone)]
pub enum GnSeq {
    /// Arbitrary finite prefix, then constantly `value`.
    EventuallyConstant { prefix: Vec<GnPoint>, value: GnPoint },
    /// `x_n = limit ± scale·(1/2)ⁿ`, kept inside `[0,1]`.
    Geometric {
        limit: GnPoint,
        above: bool,
        scale: GnPoint,
    },
}

impl GnSeq {
    pub fn at(&self, n: usize) -> GnPoint {
        match self {
            GnSeq::EventuallyConstant { prefix, value } => {
                prefix.get(n).unwrap_or(value).clone()
            }
            GnSeq::Geometric {
                limit,
                above,
                scale,
            } => {
                let mut step = scale.clone();
                for _ in 0..n {
                    step /= Rat::from_integer(2u32.into());
                }
                if *above {
                    limit + &step
                } else {
                    limit - &step
                }
            }
        }
    }

    pub fn usual_limit(&self) -> GnPoint {
        match self {
            GnSeq::EventuallyConstant { value, .. } => value.clone(),
            GnSeq::Geometric { limit, .. } => limit.clone(),
        }
    }

    /// Whether the tail is literally constant (as opposed to merely
    /// convergent).
    fn eventually_constant(&self) -> bool {
        match self {
            GnSeq::EventuallyConstant { .. } => true,
            GnSeq::Geometric { scale, .. } => scale.is_zero(),
        }
    }

    /// The Yoneda limit per the classification, if any.
    pub fn yoneda_limit(&self) -> Option<GnPoint> {
        let l = self.usual_limit();
        if l.is_zero() && !self.eventually_constant() {
            None
        } else {
            Some(l)
        }
    }
}

/// Verifies over a sample grid that the classification's limit is the
/// unique Yoneda limit: `d(x,y) = lim_j d(x_j, y)` for all grid `y`
/// holds at `x` = the classified limit and at no other grid point.
fn yoneda_limit_verified_on_grid(seq: &GnSeq, grid: &[GnPoint]) -> bool {
    // Tail value of d(x_j, y): for an eventually constant net it is
    // d(value, y); for a convergent net with limit L it is |L−y| for
    // y ≠ 0 (the terms are eventually nonzero) and 0 for y = 0.
    let tail = |y: &GnPoint| -> ExtValue {
        match seq {
            GnSeq::EventuallyConstant { value, .. } => dist(value, y),
            GnSeq::Geometric { limit, .. } => {
                if seq.eventually_constant() {
                    dist(limit, y)
                } else if y.is_zero() {
                    ExtValue::zero()
                } else if limit >= y {
                    ExtValue::from_rat(limit - y)
                } else {
                    ExtValue::from_rat(y - limit)
                }
            }
        }
    };
    let classified = seq.yoneda_limit();
    for x in grid {
        let is_limit = grid.iter().all(|y| dist(x, y) == tail(y));
        match &classified {
            Some(l) => {
                if (x == l) != is_limit {
                    return false;
                }
            }
            None => {
                if is_limit {
                    return false;
                }
            }
        }
    }
    true
}

fn dyadic(k: u64, n: u32) -> Rat {
    Rat::new(k.into(), (1u64 << n).into())
}

fn pow_half(n: u32) -> Rat {
    Rat::new(1u32.into(), (1u64 << n).into())
}

/// The dyadic sample grid `{0} ∪ {k/2ⁿ : k odd-ish, n ≤ depth}`
/// truncated to `[0,1]`; includes `0` and `1`.
pub fn dyadic_grid(depth: u32) -> Vec<GnPoint> {
    let mut grid: Vec<GnPoint> = vec![Rat::zero(), Rat::one()];
    for n in 1..=depth {
        // Powers 1/2ⁿ always present; fill the rest at coarse depths so
        // the grid stays small but covers the interval densely.
        grid.push(pow_half(n));
        if n <= 6 {
            for k in 1..(1u64 << n) {
                grid.push(dyadic(k, n));
            }
        }
    }
    grid.sort();
    grid.dedup();
    grid
}

/// Report of the case study; every field must come back `true`.
#[derive(Debug, Clone, Default)]
pub struct GnReport {
    /// Case-defined `d` satisfies the metric axioms on sampled triples.
    pub metric_ok: bool,
    /// `{(1/2ⁿ, 1/2ⁿ)}` is directed and joins exactly at `(0,0)`.
    pub chain_ok: bool,
    /// `φ` is a weight and a Scott weight for the classified nets.
    pub weight_ok: bool,
    pub scott_weight_ok: bool,
    /// `φ⁻¹(0)` is `(0,1]` on the grid (c-Scott closed), while the
    /// chain forces `(0,0)` into any d-Scott closed superset of
    /// `η((0,1])`: the two topologies differ.
    pub separation_ok: bool,
    pub detail: Vec<String>,
}

impl GnReport {
    pub fn ok(&self) -> bool {
        self.metric_ok
            && self.chain_ok
            && self.weight_ok
            && self.scott_weight_ok
            && self.separation_ok
    }
}

/// `(x,r) ⊑ (y,s)` in the formal balls of the carrier.
fn ball_leq(x: &GnPoint, r: &Rat, y: &GnPoint, s: &Rat) -> bool {
    ExtValue::from_rat(r.clone()) >= &ExtValue::from_rat(s.clone()) + &dist(x, y)
}

/// Decides whether `(y,s)` bounds the whole chain `{(1/2ⁿ,1/2ⁿ)}_{n≥1}`
/// from above, exactly. For `y > 0` the condition
/// `1/2ⁿ ≥ s + |1/2ⁿ − y|` fails once `2/2ⁿ < s + y`; for `y = 0` it
/// reads `1/2ⁿ ≥ s` for all `n`, i.e. `s = 0`.
fn chain_upper_bound(y: &GnPoint, s: &Rat) -> bool {
    if y.is_zero() {
        s.is_zero()
    } else {
        false
    }
}

/// Runs the full case study on the dyadic grid of the given depth
/// (the acceptance setting is depth 12) with `samples` random triples
/// for the metric check.
pub fn case_study(depth: u32, samples: usize) -> GnReport {
    let mut report = GnReport::default();
    let grid = dyadic_grid(depth);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e67_5370);

    // (i) metric axioms: d(x,x) = 0 exhaustively on the grid, the
    // triangle law exhaustively on a coarse subgrid and on sampled
    // triples from the full grid.
    report.metric_ok = (|| {
        for x in &grid {
            if !dist(x, x).is_zero() {
                return false;
            }
        }
        let coarse = dyadic_grid(4);
        for x in &coarse {
            for y in &coarse {
                for z in &coarse {
                    if dist(x, z) > &dist(x, y) + &dist(y, z) {
                        return false;
                    }
                }
            }
        }
        for _ in 0..samples {
            let x = grid[rng.gen_range(0..grid.len())].clone();
            let y = grid[rng.gen_range(0..grid.len())].clone();
            let z = grid[rng.gen_range(0..grid.len())].clone();
            if dist(&x, &z) > &dist(&x, &y) + &dist(&y, &z) {
                return false;
            }
        }
        true
    })();
    if !report.metric_ok {
        report.detail.push("metric axioms failed".into());
    }

    // (ii) the chain is directed (consecutive ⊑ holds with equality:
    // both sides are 1/2ⁿ⁺¹) and joins at (0,0): it is an upper bound,
    // and no other grid ball bounds the chain.
    report.chain_ok = (|| {
        for n in 1..=(depth as usize + 4) {
            let (x, r) = (pow_half(n as u32), pow_half(n as u32));
            let (x2, r2) = (pow_half(n as u32 + 1), pow_half(n as u32 + 1));
            if !ball_leq(&x, &r, &x2, &r2) {
                return false;
            }
            // (0,0) bounds every member.
            if !ball_leq(&x, &r, &Rat::zero(), &Rat::zero()) {
                return false;
            }
        }
        // Least: no other grid candidate is an upper bound. The
        // decision is exact; the grid sweep just witnesses it.
        let mut radii: Vec<Rat> = grid.clone();
        radii.push(Rat::from_integer(2u32.into()));
        for y in &grid {
            for s in &radii {
                let is_ub = chain_upper_bound(y, s);
                if is_ub && !(y.is_zero() && s.is_zero()) {
                    return false;
                }
                // Cross-check the symbolic decision against explicit
                // members far down the chain.
                if !is_ub {
                    let mut witnessed = false;
                    for n in 1..=(2 * depth + 6) {
                        if !ball_leq(&pow_half(n), &pow_half(n), y, s) {
                            witnessed = true;
                            break;
                        }
                    }
                    if !witnessed {
                        return false;
                    }
                }
            }
        }
        true
    })();
    if !report.chain_ok {
        report.detail.push("ball chain join is not (0,0)".into());
    }

    // (iii) φ is a weight: φ(x) ≤ φ(y) + d(x,y) over the grid (the only
    // tight case is x = 0 where φ(0) = 1 = d(0,y)); and a Scott weight
    // against the classified forward Cauchy nets.
    report.weight_ok = grid.iter().all(|x| {
        grid.iter()
            .all(|y| separating_weight(x) <= &separating_weight(y) + &dist(x, y))
    });
    if !report.weight_ok {
        report.detail.push("φ is not a weight".into());
    }

    let mut nets: Vec<GnSeq> = vec![
        GnSeq::EventuallyConstant {
            prefix: vec![Rat::one(), dyadic(1, 2)],
            value: Rat::zero(),
        },
        GnSeq::EventuallyConstant {
            prefix: vec![],
            value: Rat::zero(),
        },
        // Convergence to 0 without being eventually 0: no Yoneda limit.
        GnSeq::Geometric {
            limit: Rat::zero(),
            above: true,
            scale: dyadic(1, 1),
        },
    ];
    for _ in 0..24 {
        let l = grid[rng.gen_range(0..grid.len())].clone();
        let constant = GnSeq::EventuallyConstant {
            prefix: vec![grid[rng.gen_range(0..grid.len())].clone()],
            value: l.clone(),
        };
        nets.push(constant);
        if !l.is_zero() {
            // Keep terms inside [0,1] and away from the 0 singularity.
            let scale_up = (&Rat::one() - &l).min(l.clone());
            nets.push(GnSeq::Geometric {
                limit: l.clone(),
                above: true,
                scale: &scale_up / &Rat::from_integer(2u32.into()),
            });
            nets.push(GnSeq::Geometric {
                limit: l.clone(),
                above: false,
                scale: &l / &Rat::from_integer(2u32.into()),
            });
        }
    }

    report.scott_weight_ok = (|| {
        let check_grid = dyadic_grid(depth.min(8));
        for net in &nets {
            if !yoneda_limit_verified_on_grid(net, &check_grid) {
                return false;
            }
            let Some(limit) = net.yoneda_limit() else {
                continue; // vacuous for nets without a Yoneda limit
            };
            // inf_i sup_{j≥i} φ(x_j): the tail of φ along the net. For
            // an eventually constant net it is φ(value); for a
            // convergent net with nonzero limit the terms are
            // eventually nonzero, so the tail is 0.
            let tail = match net {
                GnSeq::EventuallyConstant { value, .. } => separating_weight(value),
                GnSeq::Geometric { .. } => {
                    if net.eventually_constant() {
                        separating_weight(&net.usual_limit())
                    } else {
                        ExtValue::zero()
                    }
                }
            };
            if tail < separating_weight(&limit) {
                return false;
            }
        }
        true
    })();
    if !report.scott_weight_ok {
        report
            .detail
            .push("φ fails the Scott condition on a classified net".into());
    }

    // (iv) φ⁻¹(0) is exactly (0,1] on the grid, so (0,1] is c-Scott
    // closed; the chain elements sit below η of points of (0,1] and
    // join at (0,0) = η(0), so every ⊑-lower directed-join-closed set
    // containing η((0,1]) contains η(0): (0,1] is not d-Scott closed.
    let chain_ok = report.chain_ok;
    report.separation_ok = (|| {
        for x in &grid {
            let in_zero_set = separating_weight(x).is_zero();
            if in_zero_set != !x.is_zero() {
                return false;
            }
        }
        for n in 1..=(depth as usize + 4) {
            let xn = pow_half(n as u32);
            // (1/2ⁿ, 1/2ⁿ) ⊑ η(1/2ⁿ) with 1/2ⁿ ∈ (0,1].
            if !ball_leq(&xn, &xn, &xn, &Rat::zero()) {
                return false;
            }
        }
        chain_ok // the join (0,0) = η(0) was established above
    })();
    if !report.separation_ok {
        report.detail.push("c/d separation failed".into());
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: u64, q: u64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    #[test]
    fn metric_cases() {
        assert_eq!(dist(&r(1, 2), &r(1, 4)), ExtValue::rational(1, 4));
        assert_eq!(dist(&r(1, 2), &Rat::zero()), ExtValue::zero());
        assert_eq!(dist(&Rat::zero(), &r(1, 2)), ExtValue::one());
        assert_eq!(dist(&Rat::zero(), &Rat::zero()), ExtValue::zero());
    }

    #[test]
    fn chain_joins_at_origin() {
        let report = case_study(6, 200);
        assert!(report.chain_ok, "{:?}", report.detail);
    }

    #[test]
    fn full_case_study_shallow() {
        let report = case_study(8, 500);
        assert!(report.ok(), "{:?}", report.detail);
    }

    #[test]
    fn convergent_to_zero_has_no_yoneda_limit() {
        let seq = GnSeq::Geometric {
            limit: Rat::zero(),
            above: true,
            scale: r(1, 2),
        };
        assert_eq!(seq.yoneda_limit(), None);
        assert!(yoneda_limit_verified_on_grid(&seq, &dyadic_grid(6)));
    }
}
