//! The weight calculus over finite spaces.
//!
//! A weight of `(X,d)` is a non-expansive map into `([0,∞], d_R)`,
//! i.e. `φ(x) ≤ φ(y) + d(x,y)` for all `x, y`; a coweight maps
//! non-expansively into `([0,∞], d_L)`. Weight space carries the sup
//! metric `d̄(φ,ψ) = sup_x d_L(φ(x), ψ(x))`, under which the Yoneda
//! embedding `y(x) = d(−,x)` is isometric.
//!
//! On a finite space every flat weight is representable: the pair
//! criterion implemented by [`is_flat`] chains across the finitely many
//! points to a single witness `z` with `φ = d(−,z)`. That observation
//! drives [`enumerate_flat_weights`] (one representable per
//! mutual-zero-distance cluster) and hence [`is_scott_weight`]; it is an
//! implementation lemma, so the harness cross-checks [`is_flat`] against
//! definitional oracles rather than assuming it.

use std::sync::Arc;

use thiserror::Error;

use crate::costs::{d_l, ExtValue};
use crate::spaces::{
    cycle_is_cauchy, is_forward_cauchy, yoneda_limits, FiniteNet, FiniteSpace, NetDescriptor,
    YonedaLimits,
};

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("value table has {got} entries for {want} points")]
    MissingPoint { want: usize, got: usize },
    #[error("the values do not satisfy the weight inequality at ({x}, {y})")]
    NotAWeight { x: usize, y: usize },
    #[error("the values do not satisfy the coweight inequality at ({x}, {y})")]
    NotACoweight { x: usize, y: usize },
    #[error("operands live on different spaces")]
    SpaceMismatch,
    #[error("unknown point index {index} in a space of {len} points")]
    UnknownPoint { index: usize, len: usize },
    #[error("map must assign every source point, got {got} of {want}")]
    PartialMap { want: usize, got: usize },
    #[error("map is not non-expansive at ({x}, {y})")]
    NotNonExpansive { x: usize, y: usize },
    #[error("net is not forward Cauchy")]
    NotForwardCauchy,
}

/// Checks the weight inequality `φ(x) ≤ φ(y) + d(x,y)` pairwise.
pub fn is_weight(space: &FiniteSpace, values: &[ExtValue]) -> Result<bool, WeightError> {
    Ok(weight_violation(space, values)?.is_none())
}

/// Checks the coweight inequality `ψ(y) ≤ ψ(x) + d(x,y)` pairwise.
pub fn is_coweight(space: &FiniteSpace, values: &[ExtValue]) -> Result<bool, WeightError> {
    Ok(coweight_violation(space, values)?.is_none())
}

fn check_len(space: &FiniteSpace, values: &[ExtValue]) -> Result<(), WeightError> {
    if values.len() != space.len() {
        Err(WeightError::MissingPoint {
            want: space.len(),
            got: values.len(),
        })
    } else {
        Ok(())
    }
}

fn weight_violation(
    space: &FiniteSpace,
    values: &[ExtValue],
) -> Result<Option<(usize, usize)>, WeightError> {
    check_len(space, values)?;
    for x in 0..space.len() {
        for y in 0..space.len() {
            if values[x] > &values[y] + space.d(x, y) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

fn coweight_violation(
    space: &FiniteSpace,
    values: &[ExtValue],
) -> Result<Option<(usize, usize)>, WeightError> {
    check_len(space, values)?;
    for x in 0..space.len() {
        for y in 0..space.len() {
            if values[y] > &values[x] + space.d(x, y) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// A validated weight `φ` of a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFn {
    space: Arc<FiniteSpace>,
    values: Vec<ExtValue>,
}

/// A validated coweight `ψ` of a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoweightFn {
    space: Arc<FiniteSpace>,
    values: Vec<ExtValue>,
}

impl WeightFn {
    pub fn new(space: Arc<FiniteSpace>, values: Vec<ExtValue>) -> Result<Self, WeightError> {
        match weight_violation(&space, &values)? {
            Some((x, y)) => Err(WeightError::NotAWeight { x, y }),
            None => Ok(WeightFn { space, values }),
        }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn values(&self) -> &[ExtValue] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &ExtValue {
        &self.values[x]
    }
}

impl CoweightFn {
    pub fn new(space: Arc<FiniteSpace>, values: Vec<ExtValue>) -> Result<Self, WeightError> {
        match coweight_violation(&space, &values)? {
            Some((x, y)) => Err(WeightError::NotACoweight { x, y }),
            None => Ok(CoweightFn { space, values }),
        }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn values(&self) -> &[ExtValue] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &ExtValue {
        &self.values[x]
    }
}

fn same_space(a: &Arc<FiniteSpace>, b: &Arc<FiniteSpace>) -> Result<(), WeightError> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(WeightError::SpaceMismatch)
    }
}

/// The sup metric on weight space:
/// `d̄(φ,ψ) = sup_x d_L(φ(x), ψ(x)) = inf{r : ψ ≤ φ + r}`.
pub fn bar_distance(phi: &WeightFn, psi: &WeightFn) -> Result<ExtValue, WeightError> {
    same_space(&phi.space, &psi.space)?;
    let mut sup = ExtValue::zero();
    for x in 0..phi.space.len() {
        let d = d_l(phi.value(x), psi.value(x));
        if d > sup {
            sup = d;
        }
    }
    Ok(sup)
}

/// The representable weight `y(x) = d(−, x)`.
pub fn yoneda_embed(space: &Arc<FiniteSpace>, x: usize) -> Result<WeightFn, WeightError> {
    if x >= space.len() {
        return Err(WeightError::UnknownPoint {
            index: x,
            len: space.len(),
        });
    }
    let values = (0..space.len()).map(|y| space.d(y, x).clone()).collect();
    WeightFn::new(space.clone(), values)
}

/// Tensor product `φ ⊗ ψ = inf_x (φ(x) + ψ(x))`; `∞` on the empty
/// space.
pub fn tensor(phi: &WeightFn, psi: &CoweightFn) -> Result<ExtValue, WeightError> {
    same_space(&phi.space, &psi.space)?;
    let mut inf = ExtValue::Infinity;
    for x in 0..phi.space.len() {
        let s = phi.value(x) + psi.value(x);
        if s < inf {
            inf = s;
        }
    }
    Ok(inf)
}

/// Decides flatness by the finite pair criterion: `φ` attains `0` and
/// for every pair `x, y` a single `z` satisfies both
/// `φ(z) + d(x,z) ≤ φ(x)` and `φ(z) + d(y,z) ≤ φ(y)`.
///
/// On a finite space this is equivalent to directedness of `B⁺φ`
/// together with `inf φ = 0`: the slack of the pair condition bounds a
/// common strict ball, and conversely a pigeonhole over the finitely
/// many points extracts the pair witness from directedness. The harness
/// cross-checks the criterion against the definitional tensor-max
/// oracle and a formal-ball oracle.
pub fn is_flat(phi: &WeightFn) -> bool {
    let n = phi.space.len();
    if !(0..n).any(|z| phi.value(z).is_zero()) {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            let found = (0..n).any(|z| {
                phi.value(z) + phi.space.d(x, z) <= *phi.value(x)
                    && phi.value(z) + phi.space.d(y, z) <= *phi.value(y)
            });
            if !found {
                return false;
            }
        }
    }
    true
}

/// The residual coweight `ψ₀(y) = sup_x (d(x,y) ⊖ φ(x))`: the least
/// function satisfying `φ(x) + ψ(y) ≥ d(x,y)`, and always a coweight.
pub fn residual_coweight(phi: &WeightFn) -> CoweightFn {
    let n = phi.space.len();
    let values: Vec<ExtValue> = (0..n)
        .map(|y| {
            let mut sup = ExtValue::zero();
            for x in 0..n {
                let t = phi.space.d(x, y).tminus(phi.value(x));
                if t > sup {
                    sup = t;
                }
            }
            sup
        })
        .collect();
    CoweightFn::new(phi.space.clone(), values)
        .expect("the residual of a weight is always a coweight")
}

/// Searches for a coweight `ψ` with `φ ⊗ ψ = 0` and
/// `φ(x) + ψ(y) ≥ d(x,y)`.
///
/// The residual coweight is the least candidate satisfying the second
/// condition, and `φ ⊗ −` is monotone, so it succeeds iff any coweight
/// does; failure is therefore certified by the residual alone. Unit
/// tests additionally certify failures against an exhaustive grid
/// search on small spaces.
pub fn cauchy_witness(phi: &WeightFn) -> Option<CoweightFn> {
    let psi = residual_coweight(phi);
    if tensor(phi, &psi).expect("same space").is_zero() {
        Some(psi)
    } else {
        None
    }
}

/// Whether `φ` is a Cauchy weight.
pub fn is_cauchy(phi: &WeightFn) -> bool {
    cauchy_witness(phi).is_some()
}

/// Colimits of `φ`: the points `a` with `d̄(φ, y(y)) = d(a,y)` for all
/// `y`. May be empty.
pub fn colimits(phi: &WeightFn) -> Vec<usize> {
    let n = phi.space.len();
    // d̄(φ, y(y)) = sup_x (d(x,y) ⊖ φ(x)) is the residual coweight.
    let target = residual_coweight(phi);
    (0..n)
        .filter(|&a| (0..n).all(|y| phi.space.d(a, y) == target.value(y)))
        .collect()
}

/// The weight `φ = inf_i sup_{j≥i} d(−, x_j)` generated by a forward
/// Cauchy eventually cyclic net. All cycle points are at mutual
/// distance zero, so the tail sup is constant and `φ = d(−, c)` for any
/// cycle point `c`.
pub fn net_weight(space: &Arc<FiniteSpace>, net: &FiniteNet) -> Result<WeightFn, WeightError> {
    let descriptor = NetDescriptor::Finite {
        space: space.clone(),
        net: net.clone(),
    };
    match is_forward_cauchy(&descriptor) {
        Ok(true) => {}
        _ => return Err(WeightError::NotForwardCauchy),
    }
    yoneda_embed(space, net.cycle[0])
}

/// One flat weight per mutual-zero cluster. On a finite space these are
/// exactly the net weights of forward Cauchy eventually cyclic nets up
/// to pointwise equality.
pub fn enumerate_flat_weights(space: &Arc<FiniteSpace>) -> Vec<WeightFn> {
    space
        .zero_clusters()
        .iter()
        .map(|cluster| yoneda_embed(space, cluster[0]).expect("cluster members are points"))
        .collect()
}

/// Decides whether `φ` preserves Yoneda limits, quantifying over the
/// flat weights of the space: `d̄(ψ, φ) ≥ φ(x)` for every flat `ψ` and
/// every colimit `x` of `ψ`.
pub fn is_scott_weight(phi: &WeightFn) -> bool {
    for psi in enumerate_flat_weights(&phi.space) {
        let d = bar_distance(&psi, phi).expect("same space");
        for x in colimits(&psi) {
            if d < *phi.value(x) {
                return false;
            }
        }
    }
    true
}

/// A total map between the points of two finite spaces.
#[derive(Debug, Clone)]
pub struct PointMap {
    source: Arc<FiniteSpace>,
    target: Arc<FiniteSpace>,
    map: Vec<usize>,
}

impl PointMap {
    pub fn new(
        source: Arc<FiniteSpace>,
        target: Arc<FiniteSpace>,
        map: Vec<usize>,
    ) -> Result<Self, WeightError> {
        if map.len() != source.len() {
            return Err(WeightError::PartialMap {
                want: source.len(),
                got: map.len(),
            });
        }
        for &i in &map {
            if i >= target.len() {
                return Err(WeightError::UnknownPoint {
                    index: i,
                    len: target.len(),
                });
            }
        }
        Ok(PointMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(space: &Arc<FiniteSpace>) -> PointMap {
        PointMap {
            source: space.clone(),
            target: space.clone(),
            map: (0..space.len()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<FiniteSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSpace> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.map
    }

    /// First pair violating `d_X(x,y) ≥ d_Y(f(x), f(y))`, if any.
    pub fn expansion_witness(&self) -> Option<(usize, usize)> {
        let n = self.source.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.source.d(x, y) < self.target.d(self.map[x], self.map[y]))
    }

    pub fn is_nonexpansive(&self) -> bool {
        self.expansion_witness().is_none()
    }

    /// Whether the map preserves Yoneda limits of the descriptor
    /// catalogue (and is non-expansive). Limit sets are quantified over
    /// the eventually cyclic nets, which on finite spaces reduce to the
    /// mutual-zero clusters.
    pub fn is_yoneda_continuous(&self) -> bool {
        if !self.is_nonexpansive() {
            return false;
        }
        for cluster in self.source.zero_clusters() {
            let net = NetDescriptor::Finite {
                space: self.source.clone(),
                net: FiniteNet::new(Vec::new(), cluster.clone()).expect("clusters are nonempty"),
            };
            debug_assert!(cycle_is_cauchy(&self.source, &cluster));
            let limits = match yoneda_limits(&net) {
                Ok(YonedaLimits::Points(p)) => p,
                _ => return false,
            };
            let image_net = NetDescriptor::Finite {
                space: self.target.clone(),
                net: FiniteNet::new(Vec::new(), cluster.iter().map(|&u| self.map[u]).collect())
                    .expect("nonempty"),
            };
            let image_limits = match yoneda_limits(&image_net) {
                Ok(YonedaLimits::Points(p)) => p,
                _ => return false,
            };
            if limits.iter().any(|&x| !image_limits.contains(&self.map[x])) {
                return false;
            }
        }
        true
    }
}

/// Left Kan extension of `φ` along `f`:
/// `f̄(φ)(y) = inf_x (φ(x) + d_Y(y, f(x)))`.
pub fn kan_extend(f: &PointMap, phi: &WeightFn) -> Result<WeightFn, WeightError> {
    same_space(&f.source, &phi.space)?;
    let values: Vec<ExtValue> = (0..f.target.len())
        .map(|y| {
            let mut inf = ExtValue::Infinity;
            for x in 0..f.source.len() {
                let t = phi.value(x) + f.target.d(y, f.map[x]);
                if t < inf {
                    inf = t;
                }
            }
            inf
        })
        .collect();
    WeightFn::new(f.target.clone(), values)
}

/// Precomposition `ξ ∘ f`, a weight of the source.
pub fn precompose(f: &PointMap, xi: &WeightFn) -> Result<WeightFn, WeightError> {
    same_space(&f.target, &xi.space)?;
    let values = f.map.iter().map(|&y| xi.value(y).clone()).collect();
    WeightFn::new(f.source.clone(), values)
}

/// Precomposition of a coweight.
pub fn precompose_coweight(f: &PointMap, psi: &CoweightFn) -> Result<CoweightFn, WeightError> {
    same_space(&f.target, &psi.space)?;
    let values = f.map.iter().map(|&y| psi.value(y).clone()).collect();
    CoweightFn::new(f.source.clone(), values)
}

/// Outcome of [`check_adjunction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdjunctionReport {
    Adjoint,
    /// `d_Y(f(x), y) ≠ d_X(x, g(y))` at this pair.
    NotAdjoint { x: usize, y: usize },
}

/// Checks `d_Y(f(x), y) = d_X(x, g(y))` for all `x, y`; both maps must
/// be non-expansive.
pub fn check_adjunction(f: &PointMap, g: &PointMap) -> Result<AdjunctionReport, WeightError> {
    same_space(&f.target, &g.source)?;
    same_space(&g.target, &f.source)?;
    if let Some((x, y)) = f.expansion_witness() {
        return Err(WeightError::NotNonExpansive { x, y });
    }
    if let Some((x, y)) = g.expansion_witness() {
        return Err(WeightError::NotNonExpansive { x, y });
    }
    for x in 0..f.source.len() {
        for y in 0..g.source.len() {
            if f.target.d(f.map[x], y) != f.source.d(x, g.map[y]) {
                return Ok(AdjunctionReport::NotAdjoint { x, y });
            }
        }
    }
    Ok(AdjunctionReport::Adjoint)
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

    fn vals(space: &Arc<FiniteSpace>, xs: &[&str]) -> Vec<ExtValue> {
        assert_eq!(space.len(), xs.len());
        xs.iter().map(|s| v(s)).collect()
    }

    #[test]
    fn weight_predicate_examples() {
        let w = w();
        // d(−, b) is a weight.
        assert!(is_weight(&w, &vals(&w, &["1", "0", "3/2"])).unwrap());
        // φ(b) = 2 > φ(a) + d(b,a) = 3/2.
        assert!(!is_weight(&w, &vals(&w, &["0", "2", "1"])).unwrap());
        // The constant-zero map is both.
        let zero = vals(&w, &["0", "0", "0"]);
        assert!(is_weight(&w, &zero).unwrap());
        assert!(is_coweight(&w, &zero).unwrap());
    }

    #[test]
    fn bar_distance_and_yoneda_lemma() {
        let w = w();
        let ya = yoneda_embed(&w, 0).unwrap();
        let yb = yoneda_embed(&w, 1).unwrap();
        assert_eq!(bar_distance(&ya, &yb).unwrap(), v("1"));
        assert_eq!(bar_distance(&ya, &ya).unwrap(), v("0"));

        // d̄(y(x), φ) = φ(x) for every x and weight φ.
        let phi = WeightFn::new(w.clone(), vals(&w, &["1/2", "1/4", "1"])).unwrap();
        for x in 0..3 {
            let yx = yoneda_embed(&w, x).unwrap();
            assert_eq!(bar_distance(&yx, &phi).unwrap(), *phi.value(x));
        }

        // y is isometric.
        for x in 0..3 {
            for y in 0..3 {
                let d = bar_distance(
                    &yoneda_embed(&w, x).unwrap(),
                    &yoneda_embed(&w, y).unwrap(),
                )
                .unwrap();
                assert_eq!(d, *w.d(x, y));
            }
        }
    }

    #[test]
    fn yoneda_embed_values() {
        let w = w();
        let yb = yoneda_embed(&w, 1).unwrap();
        assert_eq!(yb.values(), &[v("1"), v("0"), v("3/2")][..]);

        let one = Arc::new(
            FiniteSpace::metric(vec!["x".into()], vec![vec![ExtValue::zero()]]).unwrap(),
        );
        assert_eq!(yoneda_embed(&one, 0).unwrap().values(), &[v("0")][..]);
        assert!(yoneda_embed(&w, 5).is_err());
    }

    #[test]
    fn tensor_examples() {
        let w = w();
        let yb = yoneda_embed(&w, 1).unwrap();
        let from_b = CoweightFn::new(
            w.clone(),
            (0..3).map(|x| w.d(1, x).clone()).collect(),
        )
        .unwrap();
        assert_eq!(tensor(&yb, &from_b).unwrap(), v("0"));

        let from_a = CoweightFn::new(
            w.clone(),
            (0..3).map(|x| w.d(0, x).clone()).collect(),
        )
        .unwrap();
        assert_eq!(tensor(&yb, &from_a).unwrap(), v("1"));

        let all_inf = CoweightFn::new(w.clone(), vec![ExtValue::Infinity; 3]).unwrap();
        assert_eq!(tensor(&yb, &all_inf).unwrap(), ExtValue::Infinity);
    }

    #[test]
    fn flatness_examples() {
        let w = w();
        assert!(is_flat(&yoneda_embed(&w, 1).unwrap()));

        let discrete = Arc::new(discrete_two());
        let zero = WeightFn::new(discrete.clone(), vec![v("0"), v("0")]).unwrap();
        assert!(!is_flat(&zero));

        let glued = Arc::new(glued_two());
        let zero = WeightFn::new(glued.clone(), vec![v("0"), v("0")]).unwrap();
        assert!(is_flat(&zero));
    }

    #[test]
    fn cauchy_examples() {
        let w = w();
        let yb = yoneda_embed(&w, 1).unwrap();
        let witness = cauchy_witness(&yb).expect("representable weights are Cauchy");
        // The canonical witness for y(b) is d(b, −).
        assert_eq!(
            witness.values(),
            &[v("3/2"), v("0"), v("1")][..],
        );

        let discrete = Arc::new(discrete_two());
        let zero = WeightFn::new(discrete.clone(), vec![v("0"), v("0")]).unwrap();
        assert!(!is_cauchy(&zero));

        let one = Arc::new(
            FiniteSpace::metric(vec!["x".into()], vec![vec![ExtValue::zero()]]).unwrap(),
        );
        let zero = WeightFn::new(one, vec![v("0")]).unwrap();
        assert!(is_cauchy(&zero));
    }

    /// Exhaustive certification of Cauchy failures on tiny spaces: no
    /// coweight over the derived value grid satisfies both conditions.
    #[test]
    fn cauchy_failure_certified_by_grid_search() {
        let spaces = [discrete_two(), arrow_two()];
        for space in spaces {
            let space = Arc::new(space);
            let zero = WeightFn::new(space.clone(), vec![v("0"); 2]).unwrap();
            let expected = is_cauchy(&zero);

            let mut grid: Vec<ExtValue> = vec![v("0"), ExtValue::Infinity];
            for e in space.positive_finite_entries() {
                grid.push(e.clone());
                for f in space.positive_finite_entries() {
                    grid.push(&e + &f);
                    grid.push(e.tminus(&f));
                }
            }
            grid.sort();
            grid.dedup();

            let mut found = false;
            for a in &grid {
                for b in &grid {
                    let values = vec![a.clone(), b.clone()];
                    if !is_coweight(&space, &values).unwrap() {
                        continue;
                    }
                    let psi = CoweightFn::new(space.clone(), values).unwrap();
                    let cond1 = tensor(&zero, &psi).unwrap().is_zero();
                    let cond2 = (0..2).all(|x| {
                        (0..2).all(|y| &(zero.value(x) + psi.value(y)) >= space.d(x, y))
                    });
                    if cond1 && cond2 {
                        found = true;
                    }
                }
            }
            assert_eq!(found, expected, "residual certificate disagrees with grid");
        }
    }

    #[test]
    fn colimit_examples() {
        let w = w();
        assert_eq!(colimits(&yoneda_embed(&w, 1).unwrap()), vec![1]);

        let discrete = Arc::new(discrete_two());
        let zero = WeightFn::new(discrete, vec![v("0"), v("0")]).unwrap();
        assert!(colimits(&zero).is_empty());

        let glued = Arc::new(glued_two());
        let phi = WeightFn::new(glued, vec![v("1/3"), v("1/3")]).unwrap();
        assert_eq!(colimits(&phi), vec![0, 1]);
    }

    #[test]
    fn net_weight_examples() {
        let w = w();
        let constant_b = FiniteNet::constant(1);
        let nw = net_weight(&w, &constant_b).unwrap();
        assert_eq!(nw, yoneda_embed(&w, 1).unwrap());

        let cycle_c = FiniteNet::new(vec![0], vec![2]).unwrap();
        let nw = net_weight(&w, &cycle_c).unwrap();
        assert_eq!(nw, yoneda_embed(&w, 2).unwrap());
        assert!(is_flat(&nw));
        assert_eq!(colimits(&nw), vec![2]);

        let bad = FiniteNet::new(vec![], vec![0, 1]).unwrap();
        assert!(net_weight(&w, &bad).is_err());
    }

    #[test]
    fn scott_weight_examples() {
        let w = w();
        for x in 0..3 {
            assert!(is_scott_weight(&yoneda_embed(&w, x).unwrap()));
        }
        // On a finite space every weight is a Scott weight; min of two
        // Scott weights included.
        let phi = WeightFn::new(w.clone(), vec![v("1/2"), v("1/4"), v("1")]).unwrap();
        assert!(is_scott_weight(&phi));
        let min: Vec<ExtValue> = (0..3)
            .map(|x| {
                std::cmp::min(
                    yoneda_embed(&w, 0).unwrap().value(x).clone(),
                    yoneda_embed(&w, 1).unwrap().value(x).clone(),
                )
            })
            .collect();
        let min = WeightFn::new(w.clone(), min).unwrap();
        assert!(is_scott_weight(&min));
    }

    #[test]
    fn kan_extension_examples() {
        let discrete = Arc::new(discrete_two());
        let w = w();
        let f = PointMap::new(discrete.clone(), w.clone(), vec![0, 1]).unwrap();
        let zero = WeightFn::new(discrete.clone(), vec![v("0"), v("0")]).unwrap();
        let ext = kan_extend(&f, &zero).unwrap();
        // f̄(0)(c) = min(d(c,a), d(c,b)) = 1/2.
        assert_eq!(*ext.value(2), v("1/2"));

        let id = PointMap::identity(&w);
        let phi = WeightFn::new(w.clone(), vec![v("1/2"), v("1/4"), v("1")]).unwrap();
        assert_eq!(kan_extend(&id, &phi).unwrap(), phi);

        // f̄(y(x)) = y(f(x)).
        for x in 0..2 {
            let yx = yoneda_embed(&discrete, x).unwrap();
            assert_eq!(
                kan_extend(&f, &yx).unwrap(),
                yoneda_embed(&w, f.apply(x)).unwrap()
            );
        }

        // Flatness is preserved.
        assert!(is_flat(&kan_extend(&f, &yoneda_embed(&discrete, 1).unwrap()).unwrap()));
    }

    #[test]
    fn adjunction_examples() {
        let w = w();
        let id = PointMap::identity(&w);
        assert_eq!(check_adjunction(&id, &id).unwrap(), AdjunctionReport::Adjoint);

        // Galois connection between two 2-chains, as 0/∞ metrics:
        // f = identity labels, g collapses. Between ω-images the
        // adjunction equation is exactly order adjointness.
        let chain = Arc::new(arrow_two()); // u ≤ v
        let two = Arc::new(glued_two()); // indiscrete pair
        let f = PointMap::new(chain.clone(), two.clone(), vec![0, 1]).unwrap();
        let g = PointMap::new(two.clone(), chain.clone(), vec![0, 0]).unwrap();
        // d_two(f(x), y) = 0 always; d_chain(x, g(y)) = d(x, u).
        // d(v, u) = ∞ breaks the equation, witnessed at (v, _).
        match check_adjunction(&f, &g).unwrap() {
            AdjunctionReport::NotAdjoint { x, .. } => assert_eq!(x, 1),
            other => panic!("expected a witness, got {other:?}"),
        }
        // The true right adjoint of f sends everything to v.
        let g = PointMap::new(two, chain, vec![1, 1]).unwrap();
        assert_eq!(check_adjunction(&f, &g).unwrap(), AdjunctionReport::Adjoint);
    }

    #[test]
    fn cauchy_weights_with_colimits_are_representable() {
        use crate::harness::gen::{gen_space, gen_weight};
        use rand::SeedableRng;
        let config = crate::harness::TrialConfig::new(23, 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..300 {
            let space = gen_space(&config, &mut rng);
            let phi = gen_weight(&space, &mut rng);
            if !is_cauchy(&phi) {
                continue;
            }
            let cs = colimits(&phi);
            if cs.is_empty() {
                continue;
            }
            assert!(
                cs.iter().any(|&z| yoneda_embed(&space, z).unwrap() == phi),
                "Cauchy weight with a colimit must be representable: {phi:?}"
            );
        }
    }

    #[test]
    fn tensor_kan_compatibility() {
        // f̄(φ) ⊗ ψ = φ ⊗ (ψ ∘ f) on a hand-picked instance.
        let discrete = Arc::new(discrete_two());
        let w = w();
        let f = PointMap::new(discrete.clone(), w.clone(), vec![2, 1]).unwrap();
        let phi = WeightFn::new(discrete.clone(), vec![v("1"), v("1/2")]).unwrap();
        let psi = CoweightFn::new(w.clone(), (0..3).map(|x| w.d(0, x).clone()).collect()).unwrap();
        let lhs = tensor(&kan_extend(&f, &phi).unwrap(), &psi).unwrap();
        let rhs = tensor(&phi, &precompose_coweight(&f, &psi).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
