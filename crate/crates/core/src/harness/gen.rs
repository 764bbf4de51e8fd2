//! Seeded instance generators.
//!
//! Raw draws come from the configured value grid; spaces are repaired
//! to the triangle law by shortest-path relaxation and weights by the
//! min-plus closure, so every generated instance passes its own
//! validity check by construction.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::approach::{Subset, TopologySpec};
use crate::balls::{BallChain, FormalBall, RadiusForm};
use crate::costs::{ExtValue, Rat};
use crate::spaces::{triangle_closure, FiniteNet, FiniteSpace};
use crate::weights::{CoweightFn, PointMap, WeightFn};

use super::TrialConfig;

/// Draws from the space grid `{k/q : 0 ≤ k ≤ 32, q ∈ {1,2,3,4}} ∪ {∞}`.
pub fn gen_value(config: &TrialConfig, rng: &mut ChaCha8Rng) -> ExtValue {
    if rng.gen_ratio(1, 8) {
        return ExtValue::Infinity;
    }
    let q = config.grid_denominators[rng.gen_range(0..config.grid_denominators.len())];
    let k = rng.gen_range(0..=config.grid_max_numerator);
    ExtValue::rational(k, q)
}

/// A valid space: raw grid matrix with zero diagonal, then triangle
/// repair.
pub fn gen_space(config: &TrialConfig, rng: &mut ChaCha8Rng) -> Arc<FiniteSpace> {
    let n = rng.gen_range(1..=config.max_points);
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let rows: Vec<Vec<ExtValue>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    if x == y {
                        ExtValue::zero()
                    } else {
                        gen_value(config, rng)
                    }
                })
                .collect()
        })
        .collect();
    let raw = FiniteSpace::new(labels, rows).expect("square by construction");
    Arc::new(triangle_closure(&raw))
}

fn gen_weight_value(rng: &mut ChaCha8Rng) -> ExtValue {
    // {k/q : 0 ≤ k ≤ 8q, q ∈ {1,2,3,4}} ∪ {∞}
    if rng.gen_ratio(1, 8) {
        return ExtValue::Infinity;
    }
    let q = rng.gen_range(1..=4u64);
    let k = rng.gen_range(0..=8 * q);
    ExtValue::rational(k, q)
}

/// A weight: raw grid values repaired by `φ′(x) = min_y (φ(y) + d(x,y))`.
pub fn gen_weight(space: &Arc<FiniteSpace>, rng: &mut ChaCha8Rng) -> WeightFn {
    let n = space.len();
    let raw: Vec<ExtValue> = (0..n).map(|_| gen_weight_value(rng)).collect();
    let repaired: Vec<ExtValue> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| &raw[y] + space.d(x, y))
                .min()
                .expect("nonempty space")
        })
        .collect();
    WeightFn::new(space.clone(), repaired).expect("min-plus closure is a weight")
}

/// A coweight, repaired by `ψ′(y) = min_x (ψ(x) + d(x,y))`.
pub fn gen_coweight(space: &Arc<FiniteSpace>, rng: &mut ChaCha8Rng) -> CoweightFn {
    let n = space.len();
    let raw: Vec<ExtValue> = (0..n).map(|_| gen_weight_value(rng)).collect();
    let repaired: Vec<ExtValue> = (0..n)
        .map(|y| {
            (0..n)
                .map(|x| &raw[x] + space.d(x, y))
                .min()
                .expect("nonempty space")
        })
        .collect();
    CoweightFn::new(space.clone(), repaired).expect("min-plus closure is a coweight")
}

/// A uniformly random point assignment (not necessarily non-expansive).
pub fn gen_map(
    source: &Arc<FiniteSpace>,
    target: &Arc<FiniteSpace>,
    rng: &mut ChaCha8Rng,
) -> PointMap {
    let map: Vec<usize> = (0..source.len())
        .map(|_| rng.gen_range(0..target.len()))
        .collect();
    PointMap::new(source.clone(), target.clone(), map).expect("total by construction")
}

/// A non-expansive map: random candidates filtered, with a constant map
/// (always non-expansive) as the fallback.
pub fn gen_nonexpansive_map(
    source: &Arc<FiniteSpace>,
    target: &Arc<FiniteSpace>,
    rng: &mut ChaCha8Rng,
) -> PointMap {
    for _ in 0..8 {
        let candidate = gen_map(source, target, rng);
        if candidate.is_nonexpansive() {
            return candidate;
        }
    }
    let constant = vec![rng.gen_range(0..target.len()); source.len()];
    PointMap::new(source.clone(), target.clone(), constant).expect("total by construction")
}

/// A forward Cauchy eventually cyclic net: the cycle is sampled inside
/// one mutual-zero cluster, the prefix is arbitrary.
pub fn gen_cauchy_net(space: &Arc<FiniteSpace>, rng: &mut ChaCha8Rng) -> FiniteNet {
    let clusters = space.zero_clusters();
    let cluster = &clusters[rng.gen_range(0..clusters.len())];
    let cycle_len = rng.gen_range(1..=cluster.len().min(3));
    let cycle: Vec<usize> = (0..cycle_len)
        .map(|_| cluster[rng.gen_range(0..cluster.len())])
        .collect();
    let prefix_len = rng.gen_range(0..=2usize);
    let prefix: Vec<usize> = (0..prefix_len)
        .map(|_| rng.gen_range(0..space.len()))
        .collect();
    FiniteNet::new(prefix, cycle).expect("cycle nonempty")
}

/// A random finite topology: random generators closed under union and
/// intersection.
pub fn gen_topology(config: &TrialConfig, rng: &mut ChaCha8Rng) -> TopologySpec {
    let n = rng.gen_range(1..=config.max_points.min(5));
    let labels: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    let full = ((1usize << n) - 1) as Subset;
    let mut closed: BTreeSet<Subset> = [0, full].into_iter().collect();
    for _ in 0..rng.gen_range(0..=n + 1) {
        closed.insert(rng.gen_range(0..=full));
    }
    loop {
        let mut extra = BTreeSet::new();
        for &a in &closed {
            for &b in &closed {
                extra.insert(a | b);
                extra.insert(a & b);
            }
        }
        let before = closed.len();
        closed.extend(extra);
        if closed.len() == before {
            break;
        }
    }
    TopologySpec::new(labels, closed).expect("closed by construction")
}

/// A directed ball chain: either a nested finite list built by walking
/// down radii, or a shrinking family over a cluster cycle.
pub fn gen_chain(space: &Arc<FiniteSpace>, rng: &mut ChaCha8Rng) -> BallChain {
    if rng.gen_bool(0.5) {
        let mut balls = Vec::new();
        let mut center = rng.gen_range(0..space.len());
        let mut radius = ExtValue::int(rng.gen_range(4..10));
        balls.push(FormalBall::new(center, radius.clone()).expect("finite"));
        for _ in 0..rng.gen_range(0..3usize) {
            let next = rng.gen_range(0..space.len());
            let d = space.d(center, next).clone();
            let slack = radius.tminus(&d);
            if !slack.is_finite() || slack.is_zero() {
                break;
            }
            let next_radius = slack.half();
            balls.push(FormalBall::new(next, next_radius.clone()).expect("finite"));
            center = next;
            radius = next_radius;
        }
        BallChain::Finite(balls)
    } else {
        let net = gen_cauchy_net(space, rng);
        let limit = Rat::new(rng.gen_range(0..4u64).into(), rng.gen_range(1..3u64).into());
        // A prefix ball stays below the tail when its radius clears the
        // limit by strictly more than its distance to the cycle; scale
        // the schedule so the generated prefix (if any) does.
        let mut prefix = net.prefix.clone();
        prefix.truncate(1);
        let mut scale = Rat::new(1u32.into(), 1u32.into());
        if let Some(&p) = prefix.first() {
            match space.d(p, net.cycle[0]) {
                crate::costs::ExtValue::Finite(d) => {
                    scale = &(d + &Rat::new(1u32.into(), 1u32.into()))
                        * &Rat::new(2u32.into(), 1u32.into());
                }
                crate::costs::ExtValue::Infinity => prefix.clear(),
            }
        }
        let net = FiniteNet::new(prefix, net.cycle).expect("nonempty");
        if rng.gen_bool(0.5) {
            BallChain::Shrinking {
                net,
                radii: RadiusForm::Geometric {
                    limit,
                    scale,
                    ratio: Rat::new(1u32.into(), 2u32.into()),
                },
            }
        } else {
            BallChain::Shrinking {
                net,
                radii: RadiusForm::Harmonic { limit, scale },
            }
        }
    }
}

/// A finite shift value for condition-(S) instances.
pub fn gen_shift(rng: &mut ChaCha8Rng) -> ExtValue {
    ExtValue::rational(rng.gen_range(0..=6), rng.gen_range(1..=3))
}
