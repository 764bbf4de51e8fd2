//! Text formats for spaces, nets, weights, tables, topologies and
//! chains.
//!
//! Everything is JSON with [`ExtValue`]s encoded as the strings `"n"`,
//! `"p/q"` or `"inf"`. Parse failures carry the offending field so CLI
//! users can find the bad cell.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::approach::{members, ApproachTable, Subset, TopologySpec};
use crate::balls::{BallChain, FormalBall, RadiusForm};
use crate::costs::{ExtValue, Rat};
use crate::spaces::{CanonicalSpace, FiniteNet, FiniteSpace, SeqForm};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn invalid(context: impl Into<String>, message: impl ToString) -> IoError {
    IoError::Invalid {
        context: context.into(),
        message: message.to_string(),
    }
}

fn parse_value(s: &str, context: impl Into<String>) -> Result<ExtValue, IoError> {
    s.parse().map_err(|e| invalid(context, e))
}

fn parse_rat(s: &str, context: impl Into<String> + Clone) -> Result<Rat, IoError> {
    match parse_value(s, context.clone())? {
        ExtValue::Finite(r) => Ok(r),
        ExtValue::Infinity => Err(invalid(context, "must be finite")),
    }
}

/// Space file: `{"points": [labels...], "d": [[row-major values]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    pub d: Vec<Vec<String>>,
}

impl SpaceDoc {
    pub fn from_space(space: &FiniteSpace) -> SpaceDoc {
        SpaceDoc {
            points: space.labels().to_vec(),
            d: space
                .rows()
                .into_iter()
                .map(|row| row.into_iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }

    pub fn to_space(&self) -> Result<FiniteSpace, IoError> {
        let mut rows = Vec::with_capacity(self.d.len());
        for (i, row) in self.d.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, cell) in row.iter().enumerate() {
                out.push(parse_value(cell, format!("d[{i}][{j}]"))?);
            }
            rows.push(out);
        }
        FiniteSpace::new(self.points.clone(), rows).map_err(|e| invalid("space", e))
    }
}

pub fn parse_space(text: &str) -> Result<Arc<FiniteSpace>, IoError> {
    let doc: SpaceDoc = serde_json::from_str(text)?;
    Ok(Arc::new(doc.to_space()?))
}

pub fn space_json(space: &FiniteSpace) -> serde_json::Value {
    serde_json::to_value(SpaceDoc::from_space(space)).expect("plain data")
}

/// Net descriptor file: either an eventually cyclic presentation
/// `{"prefix": [...], "cycle": [...]}` over a finite space, or a closed
/// form `{"form": "geometric"|"linear"|"constant", ...}` per
/// coordinate of a canonical carrier.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NetDoc {
    Cyclic {
        prefix: Vec<String>,
        cycle: Vec<String>,
    },
    ClosedForm(SeqDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum SeqDoc {
    Constant {
        value: String,
    },
    Geometric {
        limit: String,
        above: bool,
        scale: String,
        ratio: String,
    },
    Linear {
        base: String,
        slope: String,
    },
}

impl SeqDoc {
    pub fn to_seq(&self) -> Result<SeqForm, IoError> {
        let seq = match self {
            SeqDoc::Constant { value } => SeqForm::Constant(parse_value(value, "value")?),
            SeqDoc::Geometric {
                limit,
                above,
                scale,
                ratio,
            } => SeqForm::Geometric {
                limit: parse_rat(limit, "limit")?,
                above: *above,
                scale: parse_rat(scale, "scale")?,
                ratio: parse_rat(ratio, "ratio")?,
            },
            SeqDoc::Linear { base, slope } => SeqForm::Linear {
                base: parse_rat(base, "base")?,
                slope: parse_rat(slope, "slope")?,
            },
        };
        seq.validate().map_err(|e| invalid("sequence", e))?;
        Ok(seq)
    }

    pub fn from_seq(seq: &SeqForm) -> SeqDoc {
        match seq {
            SeqForm::Constant(v) => SeqDoc::Constant {
                value: v.to_string(),
            },
            SeqForm::Geometric {
                limit,
                above,
                scale,
                ratio,
            } => SeqDoc::Geometric {
                limit: ExtValue::from_rat(limit.clone()).to_string(),
                above: *above,
                scale: ExtValue::from_rat(scale.clone()).to_string(),
                ratio: ExtValue::from_rat(ratio.clone()).to_string(),
            },
            SeqForm::Linear { base, slope } => SeqDoc::Linear {
                base: ExtValue::from_rat(base.clone()).to_string(),
                slope: ExtValue::from_rat(slope.clone()).to_string(),
            },
        }
    }
}

pub fn finite_net_from_doc(
    doc: &NetDoc,
    space: &FiniteSpace,
) -> Result<FiniteNet, IoError> {
    match doc {
        NetDoc::Cyclic { prefix, cycle } => {
            let resolve = |labels: &[String], what: &str| -> Result<Vec<usize>, IoError> {
                labels
                    .iter()
                    .map(|l| {
                        space
                            .index_of(l)
                            .ok_or_else(|| invalid(what, format!("unknown point {l:?}")))
                    })
                    .collect()
            };
            FiniteNet::new(resolve(prefix, "prefix")?, resolve(cycle, "cycle")?)
                .map_err(|e| invalid("net", e))
        }
        NetDoc::ClosedForm(_) => Err(invalid(
            "net",
            "closed forms live in canonical carriers, not finite spaces",
        )),
    }
}

pub fn finite_net_json(space: &FiniteSpace, net: &FiniteNet) -> serde_json::Value {
    let label = |ix: &usize| space.label(*ix).to_string();
    serde_json::json!({
        "prefix": net.prefix.iter().map(label).collect::<Vec<_>>(),
        "cycle": net.cycle.iter().map(label).collect::<Vec<_>>(),
    })
}

/// Weight file: `{"space": <name or inline space>, "values":
/// {point: value}}`. The space field is optional when the space comes
/// from elsewhere (the CLI passes it separately).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceRef>,
    pub values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Name(String),
    Inline(SpaceDoc),
}

impl WeightDoc {
    pub fn values_on(&self, space: &FiniteSpace) -> Result<Vec<ExtValue>, IoError> {
        if let Some(SpaceRef::Inline(doc)) = &self.space {
            if doc.to_space()? != *space {
                return Err(invalid("weight", "inline space disagrees with the carrier"));
            }
        }
        let mut out = Vec::with_capacity(space.len());
        for label in space.labels() {
            let cell = self.values.get(label).ok_or_else(|| {
                invalid("values", format!("missing value for point {label:?}"))
            })?;
            out.push(parse_value(cell, format!("values.{label}"))?);
        }
        for key in self.values.keys() {
            if space.index_of(key).is_none() {
                return Err(invalid("values", format!("unknown point {key:?}")));
            }
        }
        Ok(out)
    }

    pub fn from_values(space: &FiniteSpace, values: &[ExtValue]) -> WeightDoc {
        WeightDoc {
            space: None,
            values: space
                .labels()
                .iter()
                .cloned()
                .zip(values.iter().map(|v| v.to_string()))
                .collect(),
        }
    }
}

pub fn weight_json(space: &FiniteSpace, values: &[ExtValue]) -> serde_json::Value {
    serde_json::to_value(WeightDoc::from_values(space, values)).expect("plain data")
}

fn subset_key(space_labels: &[String], mask: Subset) -> String {
    let names: Vec<&str> = members(mask, space_labels.len())
        .map(|i| space_labels[i].as_str())
        .collect();
    format!("{{{}}}", names.join(","))
}

/// Approach-table file: `{"points": [...], "delta": {"x|{a,b}":
/// value}}`; the empty set is written `{}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableDoc {
    pub points: Vec<String>,
    pub delta: BTreeMap<String, String>,
}

impl TableDoc {
    pub fn from_table(t: &ApproachTable) -> TableDoc {
        let mut delta = BTreeMap::new();
        for x in 0..t.n() {
            for mask in 0..t.subsets() as Subset {
                let key = format!("{}|{}", t.labels()[x], subset_key(t.labels(), mask));
                delta.insert(key, t.delta(x, mask).to_string());
            }
        }
        TableDoc {
            points: t.labels().to_vec(),
            delta,
        }
    }

    pub fn to_table(&self) -> Result<ApproachTable, IoError> {
        let n = self.points.len();
        let labels = self.points.clone();
        let index_of = |l: &str| labels.iter().position(|p| p == l);
        let mut entries = vec![None; n << n];
        for (key, cell) in &self.delta {
            let (point, subset) = key
                .split_once('|')
                .ok_or_else(|| invalid("delta", format!("key {key:?} lacks a '|'")))?;
            let x = index_of(point)
                .ok_or_else(|| invalid("delta", format!("unknown point {point:?}")))?;
            let inner = subset
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| invalid("delta", format!("subset {subset:?} lacks braces")))?;
            let mut mask: Subset = 0;
            if !inner.is_empty() {
                for part in inner.split(',') {
                    let i = index_of(part)
                        .ok_or_else(|| invalid("delta", format!("unknown point {part:?}")))?;
                    mask |= 1 << i;
                }
            }
            entries[(x << n) + mask as usize] =
                Some(parse_value(cell, format!("delta.{key}"))?);
        }
        let mut out = Vec::with_capacity(entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            match e {
                Some(v) => out.push(v),
                None => {
                    return Err(invalid(
                        "delta",
                        format!("missing entry #{i}; the table must be total"),
                    ))
                }
            }
        }
        ApproachTable::from_entries(labels, out).map_err(|e| invalid("table", e))
    }
}

/// Topology file: `{"points": [...], "closed": [["a","b"], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopologyDoc {
    pub points: Vec<String>,
    pub closed: Vec<Vec<String>>,
}

impl TopologyDoc {
    pub fn from_topology(t: &TopologySpec) -> TopologyDoc {
        TopologyDoc {
            points: t.labels().to_vec(),
            closed: t
                .closed_sets()
                .iter()
                .map(|&mask| {
                    members(mask, t.n())
                        .map(|i| t.labels()[i].clone())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_topology(&self) -> Result<TopologySpec, IoError> {
        let mut closed = std::collections::BTreeSet::new();
        for (i, set) in self.closed.iter().enumerate() {
            let mut mask: Subset = 0;
            for label in set {
                let ix = self
                    .points
                    .iter()
                    .position(|p| p == label)
                    .ok_or_else(|| invalid(format!("closed[{i}]"), format!("unknown point {label:?}")))?;
                mask |= 1 << ix;
            }
            closed.insert(mask);
        }
        TopologySpec::new(self.points.clone(), closed).map_err(|e| invalid("topology", e))
    }
}

pub fn topology_json(t: &TopologySpec) -> serde_json::Value {
    serde_json::to_value(TopologyDoc::from_topology(t)).expect("plain data")
}

/// Ball-chain file: either `{"balls": [{"center": "a", "radius":
/// "1"}]}` or `{"centers": <net doc>, "radii": {"form": "geometric"|
/// "harmonic", ...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChainDoc {
    Finite {
        balls: Vec<BallDoc>,
    },
    Shrinking {
        centers: NetDoc,
        radii: RadiusDoc,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BallDoc {
    pub center: String,
    pub radius: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum RadiusDoc {
    Geometric {
        limit: String,
        scale: String,
        ratio: String,
    },
    Harmonic {
        limit: String,
        scale: String,
    },
}

impl ChainDoc {
    pub fn to_chain(&self, space: &FiniteSpace) -> Result<BallChain, IoError> {
        match self {
            ChainDoc::Finite { balls } => {
                let mut out = Vec::with_capacity(balls.len());
                for (i, b) in balls.iter().enumerate() {
                    let center = space.index_of(&b.center).ok_or_else(|| {
                        invalid(format!("balls[{i}]"), format!("unknown point {:?}", b.center))
                    })?;
                    let radius = parse_value(&b.radius, format!("balls[{i}].radius"))?;
                    out.push(
                        FormalBall::new(center, radius)
                            .map_err(|e| invalid(format!("balls[{i}]"), e))?,
                    );
                }
                Ok(BallChain::Finite(out))
            }
            ChainDoc::Shrinking { centers, radii } => {
                let net = finite_net_from_doc(centers, space)?;
                let radii = match radii {
                    RadiusDoc::Geometric {
                        limit,
                        scale,
                        ratio,
                    } => RadiusForm::Geometric {
                        limit: parse_rat(limit, "radii.limit")?,
                        scale: parse_rat(scale, "radii.scale")?,
                        ratio: parse_rat(ratio, "radii.ratio")?,
                    },
                    RadiusDoc::Harmonic { limit, scale } => RadiusForm::Harmonic {
                        limit: parse_rat(limit, "radii.limit")?,
                        scale: parse_rat(scale, "radii.scale")?,
                    },
                };
                Ok(BallChain::Shrinking { net, radii })
            }
        }
    }
}

/// Resolves a `--space` argument: a canonical name (`DL`, `DR`,
/// `DR^n`, `DL^n`) or a path handled by the caller.
pub fn canonical_by_name(name: &str) -> Option<CanonicalSpace> {
    CanonicalSpace::parse(name)
}

/// Algebraic-space file: `{"carrier": "DR"|"DL"|<inline space>,
/// "basis": "grid(step)"|"all-points"|"points(a,b)", "bottom": point?}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraicSpecDoc {
    pub carrier: CarrierRef,
    pub basis: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bottom: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CarrierRef {
    Name(String),
    Inline(SpaceDoc),
}

impl AlgebraicSpecDoc {
    pub fn to_spec(&self) -> Result<crate::algebraic::AlgebraicSpec, IoError> {
        use crate::algebraic::{AlgCarrier, AlgPoint, AlgebraicSpec, BasisSchedule};
        let carrier = match &self.carrier {
            CarrierRef::Name(name) => match name.as_str() {
                "DR" => AlgCarrier::DR,
                "DL" => AlgCarrier::DL,
                other => {
                    return Err(invalid(
                        "carrier",
                        format!("expected DR, DL or an inline space, got {other:?}"),
                    ))
                }
            },
            CarrierRef::Inline(doc) => AlgCarrier::Finite(Arc::new(doc.to_space()?)),
        };
        let basis = {
            let text = self.basis.trim();
            if text == "all-points" {
                BasisSchedule::AllPoints
            } else if let Some(inner) = text
                .strip_prefix("grid(")
                .and_then(|s| s.strip_suffix(')'))
            {
                BasisSchedule::Grid {
                    step: parse_rat(inner, "basis step")?,
                }
            } else if let Some(inner) = text
                .strip_prefix("points(")
                .and_then(|s| s.strip_suffix(')'))
            {
                let space = match &carrier {
                    AlgCarrier::Finite(space) => space,
                    _ => {
                        return Err(invalid(
                            "basis",
                            "point lists require a finite carrier",
                        ))
                    }
                };
                let pts = inner
                    .split(',')
                    .map(|l| {
                        space
                            .index_of(l.trim())
                            .ok_or_else(|| invalid("basis", format!("unknown point {l:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                BasisSchedule::Points(pts)
            } else {
                return Err(invalid(
                    "basis",
                    "expected all-points, grid(step) or points(a,b)",
                ));
            }
        };
        let bottom = match &self.bottom {
            None => None,
            Some(label) => Some(match &carrier {
                AlgCarrier::Finite(space) => AlgPoint::Point(
                    space
                        .index_of(label)
                        .ok_or_else(|| invalid("bottom", format!("unknown point {label:?}")))?,
                ),
                _ => AlgPoint::Value(parse_value(label, "bottom")?),
            }),
        };
        let spec = AlgebraicSpec {
            carrier,
            basis,
            bottom,
        };
        spec.validate().map_err(|e| invalid("spec", e))?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approach::alexandroff;
    use crate::spaces::fixtures::space_w;

    #[test]
    fn space_round_trip() {
        let w = space_w();
        let json = serde_json::to_string(&SpaceDoc::from_space(&w)).unwrap();
        let back = parse_space(&json).unwrap();
        assert_eq!(*back, w);
    }

    #[test]
    fn bad_cells_carry_their_locus() {
        let text = r#"{"points": ["a","b"], "d": [["0","1.5"],["1","0"]]}"#;
        let err = parse_space(text).unwrap_err();
        assert!(err.to_string().contains("d[0][1]"), "{err}");
    }

    #[test]
    fn weight_doc_round_trip() {
        let w = space_w();
        let values = vec![
            "1".parse().unwrap(),
            "0".parse().unwrap(),
            "3/2".parse().unwrap(),
        ];
        let doc = WeightDoc::from_values(&w, &values);
        assert_eq!(doc.values_on(&w).unwrap(), values);

        let mut missing = doc.clone();
        missing.values.remove("b");
        assert!(missing.values_on(&w).is_err());
    }

    #[test]
    fn table_doc_round_trip() {
        let w = space_w();
        let t = alexandroff(&w).unwrap();
        let doc = TableDoc::from_table(&t);
        assert!(doc.delta.contains_key("a|{}"));
        assert!(doc.delta.contains_key("a|{b,c}"));
        let back = doc.to_table().unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn net_doc_resolves_labels() {
        let w = space_w();
        let doc = NetDoc::Cyclic {
            prefix: vec!["a".into()],
            cycle: vec!["b".into()],
        };
        let net = finite_net_from_doc(&doc, &w).unwrap();
        assert_eq!(net.prefix, vec![0]);
        assert_eq!(net.cycle, vec![1]);

        let doc = NetDoc::Cyclic {
            prefix: vec![],
            cycle: vec!["z".into()],
        };
        assert!(finite_net_from_doc(&doc, &w).is_err());
    }

    #[test]
    fn algebraic_spec_docs_parse() {
        use crate::algebraic::{AlgCarrier, BasisSchedule};
        let doc: AlgebraicSpecDoc = serde_json::from_str(
            r#"{"carrier": "DR", "basis": "grid(1/2)", "bottom": "0"}"#,
        )
        .unwrap();
        let spec = doc.to_spec().unwrap();
        assert!(matches!(spec.carrier, AlgCarrier::DR));
        assert!(matches!(spec.basis, BasisSchedule::Grid { .. }));

        let doc: AlgebraicSpecDoc = serde_json::from_str(
            r#"{"carrier": {"points": ["a","b"],
                            "d": [["0","1"],["1","0"]]},
                "basis": "points(a,b)"}"#,
        )
        .unwrap();
        let spec = doc.to_spec().unwrap();
        assert!(matches!(spec.basis, BasisSchedule::Points(ref p) if p == &[0, 1]));

        let bad: AlgebraicSpecDoc =
            serde_json::from_str(r#"{"carrier": "DR", "basis": "fib"}"#).unwrap();
        assert!(bad.to_spec().is_err());
    }

    #[test]
    fn chain_docs_parse_both_presentations() {
        let w = space_w();
        let finite: ChainDoc = serde_json::from_str(
            r#"{"balls": [{"center": "b", "radius": "1"}, {"center": "a", "radius": "2"}]}"#,
        )
        .unwrap();
        match finite.to_chain(&w).unwrap() {
            crate::balls::BallChain::Finite(balls) => assert_eq!(balls.len(), 2),
            other => panic!("expected a finite chain, got {other:?}"),
        }

        let shrinking: ChainDoc = serde_json::from_str(
            r#"{"centers": {"prefix": [], "cycle": ["c"]},
                "radii": {"form": "harmonic", "limit": "1/2", "scale": "1"}}"#,
        )
        .unwrap();
        let chain = shrinking.to_chain(&w).unwrap();
        let join = crate::balls::chain_join(&chain, &w).unwrap();
        assert_eq!(join.center(), 2);
        assert_eq!(*join.radius(), "1/2".parse().unwrap());

        let bad: ChainDoc = serde_json::from_str(
            r#"{"balls": [{"center": "z", "radius": "1"}]}"#,
        )
        .unwrap();
        assert!(bad.to_chain(&w).is_err());
    }

    #[test]
    fn topology_doc_round_trip() {
        let labels = vec!["p".to_string(), "q".to_string()];
        let closed = [0b00u32, 0b01, 0b11].into_iter().collect();
        let t = TopologySpec::new(labels, closed).unwrap();
        let doc = TopologyDoc::from_topology(&t);
        assert_eq!(doc.to_topology().unwrap(), t);
    }
}
