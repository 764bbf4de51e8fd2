//! Symbolic weights on `[0, ∞]` and their exact colimits.
//!
//! A [`WeightExpr`] is drawn from a fixed catalogue: representables
//! `d_L(−,c)` and `d_R(−,c)`, constants, and max/min/`+r`/`⊖r`
//! combinations. Every such expression denotes a continuous piecewise
//! affine function on `[0,∞)` with slopes in `{−1,0,1}` plus a separate
//! value at `∞`, so the colimit formulas
//! `colim_L φ = inf_x (φ(x) + x)` and `colim_R ψ = sup_x (x ⊖ ψ(x))`
//! are evaluated symbolically and exactly, with no minimization over a
//! continuum.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::costs::ExtValue;

use super::AlgebraicError;

/// Signed exact rational used internally by the piecewise engine.
type SRat = Ratio<BigInt>;

fn to_signed(r: &crate::costs::Rat) -> SRat {
    SRat::new(
        BigInt::from(r.numer().clone()),
        BigInt::from(r.denom().clone()),
    )
}

fn to_ext(r: &SRat) -> ExtValue {
    assert!(!r.is_negative(), "piecewise values stay nonnegative");
    ExtValue::from_rat(crate::costs::Rat::new(
        r.numer().magnitude().clone(),
        r.denom().magnitude().clone(),
    ))
}

/// One affine piece on `[start, next start)`; the last piece extends to
/// `∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Seg {
    start: SRat,
    value: SRat, // value at `start`
    slope: i8,   // −1, 0 or 1
}

impl Seg {
    fn eval(&self, x: &SRat) -> SRat {
        let dx = x - &self.start;
        match self.slope {
            0 => self.value.clone(),
            1 => &self.value + &dx,
            -1 => &self.value - &dx,
            _ => unreachable!("slopes stay in {{−1,0,1}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Body {
    /// Identically `∞` on `[0, ∞)`.
    AllInf,
    /// Continuous piecewise affine, finite on `[0, ∞)`.
    Segments(Vec<Seg>),
}

/// A catalogue function `[0,∞] → [0,∞]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Piecewise {
    body: Body,
    at_inf: ExtValue,
}

fn zero_srat() -> SRat {
    SRat::zero()
}

impl Piecewise {
    fn constant(v: &ExtValue) -> Piecewise {
        match v {
            ExtValue::Infinity => Piecewise {
                body: Body::AllInf,
                at_inf: ExtValue::Infinity,
            },
            ExtValue::Finite(r) => Piecewise {
                body: Body::Segments(vec![Seg {
                    start: zero_srat(),
                    value: to_signed(r),
                    slope: 0,
                }]),
                at_inf: v.clone(),
            },
        }
    }

    /// `x ↦ d_L(x, c) = c ⊖ x`.
    fn dist_l(c: &ExtValue) -> Piecewise {
        match c {
            ExtValue::Infinity => Piecewise {
                body: Body::AllInf,
                at_inf: ExtValue::zero(), // ∞ ⊖ ∞ = 0
            },
            ExtValue::Finite(r) => {
                let c = to_signed(r);
                let segs = if c.is_zero() {
                    vec![Seg {
                        start: zero_srat(),
                        value: zero_srat(),
                        slope: 0,
                    }]
                } else {
                    vec![
                        Seg {
                            start: zero_srat(),
                            value: c.clone(),
                            slope: -1,
                        },
                        Seg {
                            start: c,
                            value: zero_srat(),
                            slope: 0,
                        },
                    ]
                };
                Piecewise {
                    body: Body::Segments(segs),
                    at_inf: ExtValue::zero(),
                }
            }
        }
    }

    /// `x ↦ d_R(x, c) = x ⊖ c`.
    fn dist_r(c: &ExtValue) -> Piecewise {
        match c {
            ExtValue::Infinity => Piecewise {
                // x ⊖ ∞ = 0 on finite x, and ∞ ⊖ ∞ = 0.
                body: Body::Segments(vec![Seg {
                    start: zero_srat(),
                    value: zero_srat(),
                    slope: 0,
                }]),
                at_inf: ExtValue::zero(),
            },
            ExtValue::Finite(r) => {
                let c = to_signed(r);
                let segs = if c.is_zero() {
                    vec![Seg {
                        start: zero_srat(),
                        value: zero_srat(),
                        slope: 1,
                    }]
                } else {
                    vec![
                        Seg {
                            start: zero_srat(),
                            value: zero_srat(),
                            slope: 0,
                        },
                        Seg {
                            start: c,
                            value: zero_srat(),
                            slope: 1,
                        },
                    ]
                };
                Piecewise {
                    body: Body::Segments(segs),
                    at_inf: ExtValue::Infinity,
                }
            }
        }
    }

    fn plus_const(&self, r: &ExtValue) -> Piecewise {
        match (&self.body, r) {
            (_, ExtValue::Infinity) | (Body::AllInf, _) => Piecewise {
                body: Body::AllInf,
                at_inf: ExtValue::Infinity,
            },
            (Body::Segments(segs), ExtValue::Finite(r)) => {
                let rr = to_signed(r);
                Piecewise {
                    body: Body::Segments(
                        segs.iter()
                            .map(|s| Seg {
                                start: s.start.clone(),
                                value: &s.value + &rr,
                                slope: s.slope,
                            })
                            .collect(),
                    ),
                    at_inf: &self.at_inf + &ExtValue::Finite(r.clone()),
                }
            }
        }
    }

    fn tminus_const(&self, r: &ExtValue) -> Piecewise {
        let at_inf = self.at_inf.tminus(r);
        match (&self.body, r) {
            (_, ExtValue::Infinity) => Piecewise {
                body: Body::Segments(vec![Seg {
                    start: zero_srat(),
                    value: zero_srat(),
                    slope: 0,
                }]),
                at_inf,
            },
            (Body::AllInf, ExtValue::Finite(_)) => Piecewise {
                body: Body::AllInf,
                at_inf,
            },
            (Body::Segments(segs), ExtValue::Finite(r)) => {
                let rr = to_signed(r);
                let shifted: Vec<Seg> = segs
                    .iter()
                    .map(|s| Seg {
                        start: s.start.clone(),
                        value: &s.value - &rr,
                        slope: s.slope,
                    })
                    .collect();
                // Clamp at zero, splitting where pieces cross it.
                let mut out = Vec::new();
                for (k, s) in shifted.iter().enumerate() {
                    let end = shifted.get(k + 1).map(|t| t.start.clone());
                    clamp_piece(s, end.as_ref(), &mut out);
                }
                Piecewise {
                    body: Body::Segments(normalize(out)),
                    at_inf,
                }
            }
        }
    }

    fn combine(&self, other: &Piecewise, take_max: bool) -> Piecewise {
        let at_inf = if take_max {
            std::cmp::max(self.at_inf.clone(), other.at_inf.clone())
        } else {
            std::cmp::min(self.at_inf.clone(), other.at_inf.clone())
        };
        match (&self.body, &other.body) {
            (Body::AllInf, Body::AllInf) => Piecewise {
                body: Body::AllInf,
                at_inf,
            },
            (Body::AllInf, Body::Segments(_)) => Piecewise {
                body: if take_max {
                    Body::AllInf
                } else {
                    other.body.clone()
                },
                at_inf,
            },
            (Body::Segments(_), Body::AllInf) => Piecewise {
                body: if take_max {
                    Body::AllInf
                } else {
                    self.body.clone()
                },
                at_inf,
            },
            (Body::Segments(f), Body::Segments(g)) => {
                let mut starts: Vec<SRat> = f
                    .iter()
                    .map(|s| s.start.clone())
                    .chain(g.iter().map(|s| s.start.clone()))
                    .collect();
                starts.sort();
                starts.dedup();
                // Insert crossings of the two affines inside each cell.
                let mut cuts = Vec::new();
                for (k, a) in starts.iter().enumerate() {
                    let end = starts.get(k + 1).cloned();
                    let fa = eval_segs(f, a).1;
                    let ga = eval_segs(g, a).1;
                    let sf = slope_at(f, a);
                    let sg = slope_at(g, a);
                    if sf != sg {
                        let num = &ga - &fa;
                        let den = SRat::from_integer(BigInt::from(sf - sg));
                        let x = a + &(num / den);
                        let inside = x > *a && end.as_ref().is_none_or(|e| x < *e);
                        if inside {
                            cuts.push(x);
                        }
                    }
                }
                starts.extend(cuts);
                starts.sort();
                starts.dedup();
                let mut out = Vec::new();
                for a in &starts {
                    let (fv, fs) = (eval_segs(f, a).1, slope_at(f, a));
                    let (gv, gs) = (eval_segs(g, a).1, slope_at(g, a));
                    let f_wins = match fv.cmp(&gv) {
                        std::cmp::Ordering::Less => !take_max,
                        std::cmp::Ordering::Greater => take_max,
                        std::cmp::Ordering::Equal => {
                            if take_max {
                                fs >= gs
                            } else {
                                fs <= gs
                            }
                        }
                    };
                    let (value, slope) = if f_wins { (fv, fs) } else { (gv, gs) };
                    out.push(Seg {
                        start: a.clone(),
                        value,
                        slope,
                    });
                }
                Piecewise {
                    body: Body::Segments(normalize(out)),
                    at_inf,
                }
            }
        }
    }

    /// Value at an arbitrary point of `[0, ∞]`.
    pub(crate) fn eval(&self, x: &ExtValue) -> ExtValue {
        match x {
            ExtValue::Infinity => self.at_inf.clone(),
            ExtValue::Finite(r) => match &self.body {
                Body::AllInf => ExtValue::Infinity,
                Body::Segments(segs) => {
                    let xs = to_signed(r);
                    to_ext(&eval_segs(segs, &xs).1)
                }
            },
        }
    }

    /// Slope set of the finite part; empty for the all-`∞` body.
    fn slopes(&self) -> Vec<i8> {
        match &self.body {
            Body::AllInf => Vec::new(),
            Body::Segments(segs) => segs.iter().map(|s| s.slope).collect(),
        }
    }

    /// Least value of the finite part together with where the tail
    /// sits; `None` for the all-`∞` body.
    fn finite_inf(&self) -> Option<ExtValue> {
        match &self.body {
            Body::AllInf => None,
            Body::Segments(segs) => {
                // Per-piece minima sit at piece endpoints, which by
                // continuity are the start values; a descending final
                // piece would go negative and cannot arise.
                assert!(segs.last().expect("nonempty").slope >= 0);
                let mut best = segs[0].value.clone();
                for s in segs {
                    if s.value < best {
                        best = s.value.clone();
                    }
                }
                Some(to_ext(&best))
            }
        }
    }

    fn finite_sup(&self) -> ExtValue {
        match &self.body {
            Body::AllInf => ExtValue::Infinity,
            Body::Segments(segs) => {
                let last = segs.last().expect("nonempty");
                if last.slope > 0 {
                    return ExtValue::Infinity;
                }
                let mut best = segs[0].value.clone();
                for s in segs {
                    if s.value > best {
                        best = s.value.clone();
                    }
                }
                to_ext(&best)
            }
        }
    }
}

fn eval_segs(segs: &[Seg], x: &SRat) -> (usize, SRat) {
    let mut idx = 0;
    for (k, s) in segs.iter().enumerate() {
        if s.start <= *x {
            idx = k;
        } else {
            break;
        }
    }
    (idx, segs[idx].eval(x))
}

fn slope_at(segs: &[Seg], x: &SRat) -> i8 {
    segs[eval_segs(segs, x).0].slope
}

// Replaces a possibly negative affine piece on `[start, end)` by
// `max(piece, 0)`, splitting at the zero crossing when it lies inside.
fn clamp_piece(s: &Seg, end: Option<&SRat>, out: &mut Vec<Seg>) {
    let flat_zero = |start: SRat| Seg {
        start,
        value: zero_srat(),
        slope: 0,
    };
    match s.slope {
        0 => out.push(if s.value.is_negative() {
            flat_zero(s.start.clone())
        } else {
            s.clone()
        }),
        1 => {
            if !s.value.is_negative() {
                out.push(s.clone());
            } else {
                let cross = &s.start - &s.value; // value < 0, so this is start + |value|
                out.push(flat_zero(s.start.clone()));
                if end.is_none_or(|e| cross < *e) {
                    out.push(Seg {
                        start: cross,
                        value: zero_srat(),
                        slope: 1,
                    });
                }
            }
        }
        -1 => {
            if s.value.is_negative() || s.value.is_zero() {
                out.push(flat_zero(s.start.clone()));
            } else {
                let cross = &s.start + &s.value;
                let crosses_inside = end.is_none_or(|e| cross < *e);
                if crosses_inside {
                    out.push(s.clone());
                    out.push(flat_zero(cross));
                } else {
                    out.push(s.clone());
                }
            }
        }
        _ => unreachable!(),
    }
}

fn normalize(mut segs: Vec<Seg>) -> Vec<Seg> {
    segs.sort_by(|a, b| a.start.cmp(&b.start));
    segs.dedup_by(|b, a| a.start == b.start);
    let mut out: Vec<Seg> = Vec::with_capacity(segs.len());
    for s in segs {
        if let Some(prev) = out.last() {
            if prev.slope == s.slope && prev.eval(&s.start) == s.value {
                continue; // same affine piece continues
            }
            debug_assert!(
                prev.eval(&s.start) == s.value,
                "piecewise bodies stay continuous"
            );
        }
        out.push(s);
    }
    out
}

/// A symbolic weight descriptor over `[0, ∞]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightExpr {
    /// `x ↦ d_L(x, c) = c ⊖ x`, the representable weight of `d_L` at `c`.
    DistL(ExtValue),
    /// `x ↦ d_R(x, c) = x ⊖ c`, the representable weight of `d_R` at `c`.
    DistR(ExtValue),
    Const(ExtValue),
    Max(Box<WeightExpr>, Box<WeightExpr>),
    Min(Box<WeightExpr>, Box<WeightExpr>),
    Plus(Box<WeightExpr>, ExtValue),
    TMinus(Box<WeightExpr>, ExtValue),
}

impl WeightExpr {
    pub(crate) fn to_piecewise(&self) -> Piecewise {
        match self {
            WeightExpr::DistL(c) => Piecewise::dist_l(c),
            WeightExpr::DistR(c) => Piecewise::dist_r(c),
            WeightExpr::Const(v) => Piecewise::constant(v),
            WeightExpr::Max(a, b) => a.to_piecewise().combine(&b.to_piecewise(), true),
            WeightExpr::Min(a, b) => a.to_piecewise().combine(&b.to_piecewise(), false),
            WeightExpr::Plus(a, r) => a.to_piecewise().plus_const(r),
            WeightExpr::TMinus(a, r) => a.to_piecewise().tminus_const(r),
        }
    }

    /// Evaluates the denoted function.
    pub fn eval(&self, x: &ExtValue) -> ExtValue {
        self.to_piecewise().eval(x)
    }
}

/// Validates that the expression denotes a weight of `([0,∞], d_L)`:
/// nonincreasing with unit drop rate, with `φ(∞)` below the whole
/// finite part.
fn check_dl_weight(p: &Piecewise) -> Result<(), AlgebraicError> {
    if p.slopes().iter().any(|&s| s > 0) {
        return Err(AlgebraicError::NotAWeightOf("d_L".into()));
    }
    let inf_bound = p.finite_inf().unwrap_or(ExtValue::Infinity);
    if p.at_inf > inf_bound {
        return Err(AlgebraicError::NotAWeightOf("d_L".into()));
    }
    Ok(())
}

/// Validates that the expression denotes a weight of `([0,∞], d_R)`:
/// nondecreasing with unit rise rate, with `φ(∞)` above the whole
/// finite part.
fn check_dr_weight(p: &Piecewise) -> Result<(), AlgebraicError> {
    if p.slopes().iter().any(|&s| s < 0) {
        return Err(AlgebraicError::NotAWeightOf("d_R".into()));
    }
    if p.at_inf < p.finite_sup() {
        return Err(AlgebraicError::NotAWeightOf("d_R".into()));
    }
    Ok(())
}

/// `colim φ = inf_{x∈[0,∞]} (φ(x) + x)` for a weight `φ` of
/// `([0,∞], d_L)`, evaluated exactly.
pub fn colimit_dl(expr: &WeightExpr) -> Result<ExtValue, AlgebraicError> {
    let p = expr.to_piecewise();
    check_dl_weight(&p)?;
    // φ(x) + x has slope ≥ 0 on every piece, so segment infima sit at
    // segment starts; the value at ∞ is ∞ and never competes.
    match &p.body {
        Body::AllInf => Ok(ExtValue::Infinity),
        Body::Segments(segs) => {
            let mut best = ExtValue::Infinity;
            for s in segs {
                let cand = to_ext(&(&s.value + &s.start));
                if cand < best {
                    best = cand;
                }
            }
            Ok(best)
        }
    }
}

/// `colim ψ = sup_{x∈[0,∞]} (x ⊖ ψ(x))` for a weight `ψ` of
/// `([0,∞], d_R)`, evaluated exactly.
pub fn colimit_dr(expr: &WeightExpr) -> Result<ExtValue, AlgebraicError> {
    let p = expr.to_piecewise();
    check_dr_weight(&p)?;
    let inf_term = ExtValue::Infinity.tminus(&p.at_inf);
    match &p.body {
        Body::AllInf => Ok(inf_term), // x ⊖ ∞ = 0 on the finite part
        Body::Segments(segs) => {
            // x − ψ(x) is nondecreasing (slopes of ψ are ≤ 1), so the
            // finite-part sup is the tail limit.
            let last = segs.last().expect("nonempty");
            let finite_sup = if last.slope < 1 {
                ExtValue::Infinity
            } else {
                to_ext(&(&last.start - &last.value))
            };
            Ok(std::cmp::max(finite_sup, inf_term))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> ExtValue {
        s.parse().unwrap()
    }

    #[test]
    fn representable_colimits_are_yoneda() {
        assert_eq!(colimit_dl(&WeightExpr::DistL(v("5"))).unwrap(), v("5"));
        assert_eq!(colimit_dr(&WeightExpr::DistR(v("5"))).unwrap(), v("5"));
        assert_eq!(
            colimit_dl(&WeightExpr::DistL(ExtValue::Infinity)).unwrap(),
            ExtValue::Infinity
        );
        assert_eq!(
            colimit_dr(&WeightExpr::DistR(ExtValue::Infinity)).unwrap(),
            ExtValue::Infinity
        );
    }

    #[test]
    fn shifted_representable() {
        let phi = WeightExpr::Plus(Box::new(WeightExpr::DistL(v("5"))), v("2"));
        assert_eq!(colimit_dl(&phi).unwrap(), v("7"));
    }

    #[test]
    fn constant_weights() {
        assert_eq!(colimit_dl(&WeightExpr::Const(v("3"))).unwrap(), v("3"));
        // sup_x (x ⊖ 3) = ∞.
        assert_eq!(
            colimit_dr(&WeightExpr::Const(v("3"))).unwrap(),
            ExtValue::Infinity
        );
    }

    #[test]
    fn min_max_and_truncation() {
        // min(d_L(−,2), d_L(−,5)) = d_L(−,2); colim = 2.
        let phi = WeightExpr::Min(
            Box::new(WeightExpr::DistL(v("2"))),
            Box::new(WeightExpr::DistL(v("5"))),
        );
        assert_eq!(colimit_dl(&phi).unwrap(), v("2"));

        // max(d_R(−,3), d_R(−,1)) = d_R(−,1); colim = 1.
        let psi = WeightExpr::Max(
            Box::new(WeightExpr::DistR(v("3"))),
            Box::new(WeightExpr::DistR(v("1"))),
        );
        assert_eq!(colimit_dr(&psi).unwrap(), v("1"));

        // (d_L(−,5) ⊖ 2) = d_L(−,3); colim = 3.
        let phi = WeightExpr::TMinus(Box::new(WeightExpr::DistL(v("5"))), v("2"));
        assert_eq!(colimit_dl(&phi).unwrap(), v("3"));
        for x in ["0", "1", "3", "4", "7/2", "10"] {
            assert_eq!(phi.eval(&v(x)), WeightExpr::DistL(v("3")).eval(&v(x)));
        }
    }

    #[test]
    fn wrong_carrier_is_rejected() {
        assert!(colimit_dl(&WeightExpr::DistR(v("1"))).is_err());
        assert!(colimit_dr(&WeightExpr::DistL(v("1"))).is_err());
    }

    #[test]
    fn evaluation_matches_direct_arithmetic() {
        let exprs = [
            WeightExpr::DistL(v("7/3")),
            WeightExpr::DistR(v("1/2")),
            WeightExpr::Max(
                Box::new(WeightExpr::DistR(v("2"))),
                Box::new(WeightExpr::Const(v("1/3"))),
            ),
            WeightExpr::TMinus(
                Box::new(WeightExpr::Plus(Box::new(WeightExpr::DistR(v("1"))), v("1/2"))),
                v("3/4"),
            ),
        ];
        let xs = ["0", "1/3", "1/2", "1", "2", "7/3", "5", "inf"];
        for e in &exprs {
            for x in xs {
                let x = v(x);
                let direct = direct_eval(e, &x);
                assert_eq!(e.eval(&x), direct, "at {x} in {e:?}");
            }
        }
    }

    fn direct_eval(e: &WeightExpr, x: &ExtValue) -> ExtValue {
        match e {
            WeightExpr::DistL(c) => c.tminus(x),
            WeightExpr::DistR(c) => x.tminus(c),
            WeightExpr::Const(v) => v.clone(),
            WeightExpr::Max(a, b) => std::cmp::max(direct_eval(a, x), direct_eval(b, x)),
            WeightExpr::Min(a, b) => std::cmp::min(direct_eval(a, x), direct_eval(b, x)),
            WeightExpr::Plus(a, r) => &direct_eval(a, x) + r,
            WeightExpr::TMinus(a, r) => direct_eval(a, x).tminus(r),
        }
    }
}
