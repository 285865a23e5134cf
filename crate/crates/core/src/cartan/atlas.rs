//! Transition functions between local trivializations and the cocycle condition.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{ChartBox, Field, GroupKind, GroupMap};

pub const COCYCLE_TOLERANCE: f64 = 1e-10;
const OVERLAP_SAMPLES: usize = 40;

/// Charts and transition maps t_UV on their overlaps.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionAtlas {
    pub charts: Vec<ChartBox>,
    pub n: usize,
    pub kind: GroupKind,
    pub transitions: Vec<Transition>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub map: GroupMap,
}

/// Outcome of a cocycle check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CocycleReport {
    pub max_deviation: f64,
    pub passed: bool,
    pub triples_checked: usize,
    pub witness: Option<CocycleWitness>,
    pub notices: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CocycleWitness {
    pub charts: [String; 3],
    pub point: Vec<f64>,
    pub deviation: f64,
}

impl TransitionAtlas {
    pub fn new(charts: Vec<ChartBox>, n: usize, kind: GroupKind, transitions: Vec<Transition>) -> Result<Self> {
        for c in &charts {
            c.validate()?;
        }
        for t in &transitions {
            if t.from >= charts.len() || t.to >= charts.len() {
                return Err(Error::InvalidInput(format!("transition {}→{} names a missing chart", t.from, t.to)));
            }
            if t.map.n() != n || t.map.kind() != kind {
                return Err(Error::InvalidInput("transition group differs from the atlas group".into()));
            }
            if t.map.dim() != charts[t.from].dim() {
                return Err(Error::DimensionMismatch { expected: charts[t.from].dim(), found: t.map.dim() });
            }
        }
        Ok(TransitionAtlas { charts, n, kind, transitions })
    }

    pub fn single(chart: ChartBox, n: usize, kind: GroupKind) -> Self {
        TransitionAtlas { charts: vec![chart], n, kind, transitions: Vec::new() }
    }

    /// t_UV, with t_UU the identity when not stored.
    pub fn transition(&self, from: usize, to: usize) -> Option<GroupMap> {
        if let Some(t) = self.transitions.iter().find(|t| t.from == from && t.to == to) {
            return Some(t.map.clone());
        }
        (from == to).then(|| GroupMap::identity(self.charts[from].dim(), self.n, self.kind))
    }

    fn table(&self) -> BTreeMap<(usize, usize), GroupMap> {
        let mut out = BTreeMap::new();
        for a in 0..self.charts.len() {
            for b in 0..self.charts.len() {
                if let Some(t) = self.transition(a, b) {
                    out.insert((a, b), t);
                }
            }
        }
        out
    }

    /// max over triple overlaps of ‖t_UW(x) − t_UV(x) t_VW(x)‖_max.
    pub fn cocycle_check(&self, seed: u64) -> Result<CocycleReport> {
        let table = self.table();
        let k = self.charts.len();
        let mut report = CocycleReport {
            max_deviation: 0.0,
            passed: true,
            triples_checked: 0,
            witness: None,
            notices: Vec::new(),
        };
        for u in 0..k {
            for v in 0..k {
                for w in 0..k {
                    let overlap = self.charts[u]
                        .intersect(&self.charts[v])
                        .and_then(|c| c.intersect(&self.charts[w]));
                    let Some(overlap) = overlap else {
                        if u < v && v < w {
                            report.notices.push(format!(
                                "empty overlap {}∩{}∩{} skipped",
                                self.charts[u].label, self.charts[v].label, self.charts[w].label
                            ));
                        }
                        continue;
                    };
                    let (Some(uv), Some(vw), Some(uw)) =
                        (table.get(&(u, v)), table.get(&(v, w)), table.get(&(u, w)))
                    else {
                        report.notices.push(format!(
                            "missing transition among {}, {}, {}",
                            self.charts[u].label, self.charts[v].label, self.charts[w].label
                        ));
                        report.passed = false;
                        continue;
                    };
                    let seed_here = seed ^ ((u * 131 + v * 17 + w) as u64);
                    let pts = overlap.sample_points(OVERLAP_SAMPLES, seed_here);
                    let composed = uv.compose(vw)?;
                    let (dev, at) = uw.max_deviation(&composed, &pts)?;
                    report.triples_checked += 1;
                    if dev > report.max_deviation || report.witness.is_none() && dev > COCYCLE_TOLERANCE {
                        report.max_deviation = report.max_deviation.max(dev);
                        if dev > COCYCLE_TOLERANCE {
                            report.witness = Some(CocycleWitness {
                                charts: [
                                    self.charts[u].label.clone(),
                                    self.charts[v].label.clone(),
                                    self.charts[w].label.clone(),
                                ],
                                point: at,
                                deviation: dev,
                            });
                        }
                    }
                }
            }
        }
        report.passed &= report.max_deviation <= COCYCLE_TOLERANCE;
        Ok(report)
    }
}

/// t'_UV = g_U⁻¹ t_UV g_V for local gauges s'_U = s_U g_U.
pub fn gauge_equivalent_transitions(atlas: &TransitionAtlas, gauges: &[GroupMap]) -> Result<TransitionAtlas> {
    if gauges.len() != atlas.charts.len() {
        return Err(Error::DimensionMismatch { expected: atlas.charts.len(), found: gauges.len() });
    }
    let transitions = atlas
        .transitions
        .iter()
        .map(|t| {
            let map = gauges[t.from].inverse().compose(&t.map)?.compose(&gauges[t.to])?;
            Ok(Transition { from: t.from, to: t.to, map })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TransitionAtlas { transitions, ..atlas.clone() })
}

/// Two overlapping boxes in R² glued by a polynomial A(2)-valued transition and its inverse.
pub fn two_chart_fixture() -> TransitionAtlas {
    let charts = vec![
        ChartBox::new("U", vec![0.0, 0.0], vec![0.7, 1.0]).expect("valid box"),
        ChartBox::new("V", vec![0.3, 0.0], vec![1.0, 1.0]).expect("valid box"),
    ];
    let t = fixture_transition();
    let transitions = vec![Transition { from: 0, to: 1, map: t.clone() }, Transition { from: 1, to: 0, map: t.inverse() }];
    TransitionAtlas::new(charts, 2, GroupKind::Aff, transitions).expect("consistent fixture")
}

/// The two-chart fixture with t_VU perturbed by a small x-dependent translation.
pub fn corrupted_two_chart_fixture() -> TransitionAtlas {
    let mut atlas = two_chart_fixture();
    let shift = GroupMap::translation(2, vec![Field::coordinate(2, 0).scale(1e-3), Field::zero()]);
    atlas.transitions[1].map = atlas.transitions[1].map.compose(&shift).expect("same shape");
    atlas
}

fn fixture_transition() -> GroupMap {
    let x = |i| Field::coordinate(2, i);
    let one = Field::constant(1.0);
    let a = vec![&one + &x(0).scale(0.3), x(1).scale(0.2), x(0).scale(-0.1), &one + &(&x(0) * &x(1)).scale(0.4)];
    GroupMap::new(2, 2, GroupKind::Aff, a, vec![x(1).scale(0.5), Field::constant(-0.2)]).expect("shapes match")
}
