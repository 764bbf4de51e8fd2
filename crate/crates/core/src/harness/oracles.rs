//! Independent reference evaluators for the flatness criterion.
//!
//! Both oracles work from the definitions, not from the pair criterion
//! implemented in [`crate::weights::is_flat`], so the battery can catch
//! a bug in either side.

use rand_chacha::ChaCha8Rng;

use crate::balls::{bplus_contains, FormalBall};
use crate::costs::ExtValue;
use crate::weights::{tensor, CoweightFn, WeightFn};

use super::gen::gen_coweight;

/// Definitional flatness: `inf φ = 0` and the tensor distributes over
/// binary maxima of coweights.
///
/// The coweight pairs are the ones that matter: for each point pair
/// `(x,y)` the translates `ψ₁ = s + d(x,−)`, `ψ₂ = r + d(y,−)` with
/// `r = φ(x) + ε`, `s = φ(y) + ε` witness any directedness failure when
/// `ε` is at most the failure gap
/// `min_z max((φ(z)+d(x,z)) ⊖ φ(x), (φ(z)+d(y,z)) ⊖ φ(y))`, which is
/// computed exactly per pair. A few random grid coweights are thrown in
/// for coverage.
pub fn flat_oracle_tensor_max(phi: &WeightFn, rng: &mut ChaCha8Rng) -> bool {
    let space = phi.space();
    let n = space.len();
    if !(0..n).any(|z| phi.value(z).is_zero()) {
        return false;
    }

    let mut pairs: Vec<(CoweightFn, CoweightFn)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !phi.value(x).is_finite() || !phi.value(y).is_finite() {
                continue;
            }
            let gap = (0..n)
                .map(|z| {
                    let ex = (phi.value(z) + space.d(x, z)).tminus(phi.value(x));
                    let ey = (phi.value(z) + space.d(y, z)).tminus(phi.value(y));
                    std::cmp::max(ex, ey)
                })
                .min()
                .expect("nonempty space");
            let eps = std::cmp::min(gap.clone(), ExtValue::one());
            let eps = if eps.is_zero() { ExtValue::half(&ExtValue::one()) } else { eps };
            let r = phi.value(x) + &eps;
            let s = phi.value(y) + &eps;
            let psi1: Vec<ExtValue> = (0..n).map(|z| &s + space.d(x, z)).collect();
            let psi2: Vec<ExtValue> = (0..n).map(|z| &r + space.d(y, z)).collect();
            pairs.push((
                CoweightFn::new(space.clone(), psi1).expect("translated row is a coweight"),
                CoweightFn::new(space.clone(), psi2).expect("translated row is a coweight"),
            ));
        }
    }
    for _ in 0..4 {
        pairs.push((gen_coweight(space, rng), gen_coweight(space, rng)));
    }

    for (psi1, psi2) in pairs {
        let joined: Vec<ExtValue> = (0..n)
            .map(|z| std::cmp::max(psi1.value(z).clone(), psi2.value(z).clone()))
            .collect();
        let joined = CoweightFn::new(space.clone(), joined).expect("max of coweights");
        let lhs = tensor(phi, &joined).expect("same space");
        let rhs = std::cmp::max(
            tensor(phi, &psi1).expect("same space"),
            tensor(phi, &psi2).expect("same space"),
        );
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Formal-ball flatness: `B⁺φ` is nonempty at every grid radius (so
/// `inf φ = 0`) and directed over grid ball pairs, with the optimal
/// upper-bound radius `min(r ⊖ d(x,z), s ⊖ d(y,z))` tested through
/// [`bplus_contains`].
pub fn flat_oracle_bplus(phi: &WeightFn) -> bool {
    let space = phi.space();
    let n = space.len();

    // Radius grid: the finite φ-values and their small bumps, matrix
    // entries, and the failure gaps of each pair. Exactness of the
    // oracle needs the radii r = φ(x) + gap to be present; the lone
    // spacer 1 keeps the grid nonempty for all-∞ weights.
    let mut grid: Vec<ExtValue> = vec![ExtValue::one()];
    grid.extend(space.positive_finite_entries());
    for x in 0..n {
        if let v @ ExtValue::Finite(_) = phi.value(x) {
            if !v.is_zero() {
                grid.push(v.clone());
            }
            grid.push(v + &ExtValue::one());
            grid.push(v + &ExtValue::half(&ExtValue::one()));
            for y in 0..n {
                if !phi.value(y).is_finite() {
                    continue;
                }
                let gap = (0..n)
                    .map(|z| {
                        let ex = (phi.value(z) + space.d(x, z)).tminus(phi.value(x));
                        let ey = (phi.value(z) + space.d(y, z)).tminus(phi.value(y));
                        std::cmp::max(ex, ey)
                    })
                    .min()
                    .expect("nonempty space");
                let eps = std::cmp::min(gap, ExtValue::one());
                if !eps.is_zero() {
                    grid.push(phi.value(x) + &eps);
                }
            }
        }
    }
    grid.retain(|r| r.is_finite() && !r.is_zero());
    grid.sort();
    grid.dedup();

    // inf φ = 0, read as: some strict ball exists at every radius.
    for r in &grid {
        let hit = (0..n).any(|x| {
            bplus_contains(phi, &FormalBall::new(x, r.clone()).expect("finite"))
        });
        if !hit {
            return false;
        }
    }

    // Directedness over grid pairs.
    let mut balls = Vec::new();
    for x in 0..n {
        for r in &grid {
            let b = FormalBall::new(x, r.clone()).expect("finite");
            if bplus_contains(phi, &b) {
                balls.push(b);
            }
        }
    }
    for b1 in &balls {
        for b2 in &balls {
            let found = (0..n).any(|z| {
                let slack1 = b1.radius().tminus(space.d(b1.center(), z));
                let slack2 = b2.radius().tminus(space.d(b2.center(), z));
                if space.d(b1.center(), z) > b1.radius()
                    || space.d(b2.center(), z) > b2.radius()
                {
                    return false;
                }
                let t = std::cmp::min(slack1, slack2);
                bplus_contains(phi, &FormalBall::new(z, t).expect("finite"))
            });
            if !found {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::fixtures::*;
    use crate::spaces::FiniteSpace;
    use crate::weights::{is_flat, yoneda_embed};
    use rand::SeedableRng;
    use std::sync::Arc;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn oracles_agree_on_known_cases() {
        let w = Arc::new(space_w());
        let flat = yoneda_embed(&w, 1).unwrap();
        assert!(is_flat(&flat));
        assert!(flat_oracle_tensor_max(&flat, &mut rng()));
        assert!(flat_oracle_bplus(&flat));

        let discrete = Arc::new(discrete_two());
        let zero = WeightFn::new(discrete, vec![ExtValue::zero(), ExtValue::zero()]).unwrap();
        assert!(!is_flat(&zero));
        assert!(!flat_oracle_tensor_max(&zero, &mut rng()));
        assert!(!flat_oracle_bplus(&zero));
    }

    /// Exhaustive agreement over grid-valued weights on small spaces.
    #[test]
    fn oracles_agree_exhaustively_on_small_spaces() {
        let spaces = [glued_two(), arrow_two(), discrete_two()];
        let grid: Vec<ExtValue> = ["0", "1/2", "1", "2", "inf"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for space in spaces {
            let space = Arc::new(space);
            for a in &grid {
                for b in &grid {
                    let values = vec![a.clone(), b.clone()];
                    if !crate::weights::is_weight(&space, &values).unwrap() {
                        continue;
                    }
                    let phi = WeightFn::new(space.clone(), values).unwrap();
                    let direct = is_flat(&phi);
                    assert_eq!(direct, flat_oracle_tensor_max(&phi, &mut rng()), "{phi:?}");
                    assert_eq!(direct, flat_oracle_bplus(&phi), "{phi:?}");
                }
            }
        }
    }

    /// Three-point spaces with a denominator-2 grid, exhaustively.
    #[test]
    fn oracles_agree_on_three_point_grid_weights() {
        let w = Arc::new(space_w());
        let glued3 = Arc::new(
            FiniteSpace::metric(
                vec!["x".into(), "y".into(), "z".into()],
                vec![
                    vec![ExtValue::zero(), ExtValue::zero(), ExtValue::one()],
                    vec![ExtValue::zero(), ExtValue::zero(), ExtValue::one()],
                    vec![ExtValue::one(), ExtValue::one(), ExtValue::zero()],
                ],
            )
            .unwrap(),
        );
        let grid: Vec<ExtValue> = ["0", "1/2", "1", "3/2", "inf"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for space in [w, glued3] {
            for a in &grid {
                for b in &grid {
                    for c in &grid {
                        let values = vec![a.clone(), b.clone(), c.clone()];
                        if !crate::weights::is_weight(&space, &values).unwrap() {
                            continue;
                        }
                        let phi = WeightFn::new(space.clone(), values).unwrap();
                        let direct = is_flat(&phi);
                        assert_eq!(
                            direct,
                            flat_oracle_tensor_max(&phi, &mut rng()),
                            "{phi:?}"
                        );
                        assert_eq!(direct, flat_oracle_bplus(&phi), "{phi:?}");
                    }
                }
            }
        }
    }
}
