//! Sections sampled on a quadrature grid, with boundary-vanishing perturbation directions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quadrature::QuadratureRule;
use crate::cartan::{FrameField, SpinConnectionField};
use crate::error::{Error, Result};
use crate::forms::algebra;
use crate::forms::field::Evaluator;
use crate::forms::{ChartBox, Field, GroupMap, Jet, Polynomial};
use crate::lagrangian::{AmSection, LagrangianKind, LmSection};
use crate::lie::{lorentz_basis, Signature};

/// Frames whose determinant falls below this at a node are rejected.
pub const MIN_FRAME_DET: f64 = 1e-10;

/// The field component a perturbation moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PerturbationTarget {
    /// e^row_col.
    FrameEntry { row: usize, col: usize },
    /// Coefficient of the Lorentz generator `generator` in ω_direction.
    LorentzComponent { generator: usize, direction: usize },
    /// ω^row_{col direction}, generally leaving the Lorentz algebra.
    SpinEntry { row: usize, col: usize, direction: usize },
    /// v^index.
    OriginEntry { index: usize },
    /// v^row_col.
    OriginJetEntry { row: usize, col: usize },
}

/// A named direction δ = profile · (unit change of the target), profile vanishing on ∂chart.
#[derive(Debug, Clone)]
pub struct Perturbation {
    pub name: String,
    pub target: PerturbationTarget,
    pub profile: Polynomial,
}

/// Field data of a sampled section.
#[derive(Debug, Clone)]
pub enum SectionFields {
    /// A frame and a spin connection; the jet is ∂e − eω.
    Holonomic { frame: FrameField, spin: SpinConnectionField },
    /// A frame together with explicit (v, ejet, vjet).
    Jet { frame: FrameField, v: Vec<Field>, ejet: Vec<Field>, vjet: Vec<Field> },
}

#[derive(Debug, Clone)]
pub struct GridSection {
    chart: ChartBox,
    resolution: usize,
    sig: Signature,
    fields: SectionFields,
    perturbations: Vec<Perturbation>,
}

impl GridSection {
    pub fn holonomic(frame: FrameField, spin: SpinConnectionField, sig: Signature, resolution: usize) -> Result<Self> {
        let chart = frame.chart().clone();
        if spin.chart() != &chart {
            return Err(Error::InvalidChart("frame and spin connection live on different charts".into()));
        }
        GridSection::build(chart, resolution, sig, SectionFields::Holonomic { frame, spin })
    }

    pub fn from_jets(
        frame: FrameField,
        v: Vec<Field>,
        ejet: Vec<Field>,
        vjet: Vec<Field>,
        sig: Signature,
        resolution: usize,
    ) -> Result<Self> {
        let m = frame.dim();
        for (what, got, want) in [("v", v.len(), m), ("ejet", ejet.len(), m * m * m), ("vjet", vjet.len(), m * m)] {
            if got != want {
                return Err(Error::InvalidInput(format!("{what} has {got} entries, expected {want}")));
            }
        }
        let chart = frame.chart().clone();
        GridSection::build(chart, resolution, sig, SectionFields::Jet { frame, v, ejet, vjet })
    }

    fn build(chart: ChartBox, resolution: usize, sig: Signature, fields: SectionFields) -> Result<Self> {
        sig.require_dim(chart.dim())?;
        let q = QuadratureRule::new(resolution)?;
        let s = GridSection { chart, resolution, sig, fields, perturbations: Vec::new() };
        let frame = s.frame();
        for (x, _) in q.nodes(&s.chart) {
            let det = frame.matrix_at(&x).determinant();
            if !(det.abs() > MIN_FRAME_DET) {
                return Err(Error::DegenerateFrame { point: x, reason: format!("det e = {det:e} at a grid node") });
            }
        }
        Ok(s)
    }

    pub fn chart(&self) -> &ChartBox {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn fields(&self) -> &SectionFields {
        &self.fields
    }

    pub fn frame(&self) -> &FrameField {
        match &self.fields {
            SectionFields::Holonomic { frame, .. } | SectionFields::Jet { frame, .. } => frame,
        }
    }

    pub fn perturbations(&self) -> &[Perturbation] {
        &self.perturbations
    }

    pub fn quadrature(&self) -> QuadratureRule {
        QuadratureRule::new(self.resolution).expect("resolution validated on construction")
    }

    /// Adds δ = Π_μ (x^μ − lo^μ)(hi^μ − x^μ) · shape along `target`.
    pub fn add_perturbation(&mut self, name: impl Into<String>, target: PerturbationTarget, shape: &Polynomial) -> Result<()> {
        let name = name.into();
        let m = self.dim();
        shape.check_nvars(m)?;
        if self.perturbations.iter().any(|p| p.name == name) {
            return Err(Error::InvalidInput(format!("duplicate perturbation `{name}`")));
        }
        let holonomic = matches!(self.fields, SectionFields::Holonomic { .. });
        let k = m * (m - 1) / 2;
        let ok = match target {
            PerturbationTarget::FrameEntry { row, col } => row < m && col < m,
            PerturbationTarget::LorentzComponent { generator, direction } => holonomic && generator < k && direction < m,
            PerturbationTarget::SpinEntry { row, col, direction } => holonomic && row < m && col < m && direction < m,
            PerturbationTarget::OriginEntry { index } => !holonomic && index < m,
            PerturbationTarget::OriginJetEntry { row, col } => !holonomic && row < m && col < m,
        };
        if !ok {
            return Err(Error::InvalidInput(format!("target {target:?} does not fit this section")));
        }
        let profile = Polynomial::box_bump(&self.chart.lo, &self.chart.hi).mul(shape);
        self.perturbations.push(Perturbation { name, target, profile });
        Ok(())
    }

    /// Every frame entry and every Lorentz component, each with profile bump·(1 + x^k/2).
    pub fn add_default_perturbations(&mut self) -> Result<()> {
        let m = self.dim();
        let shape = |k: usize| Polynomial::constant(m, 1.0).add(&Polynomial::variable(m, k % m).scale(0.5));
        for row in 0..m {
            for col in 0..m {
                self.add_perturbation(format!("e[{row}][{col}]"), PerturbationTarget::FrameEntry { row, col }, &shape(row + col))?;
            }
        }
        if matches!(self.fields, SectionFields::Holonomic { .. }) {
            for generator in 0..m * (m - 1) / 2 {
                for direction in 0..m {
                    self.add_perturbation(
                        format!("omega_k[{generator}][{direction}]"),
                        PerturbationTarget::LorentzComponent { generator, direction },
                        &shape(generator + direction + 1),
                    )?;
                }
            }
        }
        Ok(())
    }

    pub fn perturbation_index(&self, name: &str) -> Result<usize> {
        self.perturbations
            .iter()
            .position(|p| p.name == name)
            .ok_or_else(|| Error::UnknownDirection(name.to_string()))
    }

    /// Rejects directions that leave the constraint locus of the problem.
    pub fn check_admissible(&self, kind: LagrangianKind, name: &str) -> Result<usize> {
        let k = self.perturbation_index(name)?;
        let reason = match (&self.fields, self.perturbations[k].target) {
            (_, PerturbationTarget::SpinEntry { .. }) => Some("breaks the Lorentz condition on ω"),
            (SectionFields::Jet { .. }, PerturbationTarget::FrameEntry { .. }) => {
                Some("moves e without its jet, leaving the metric jet locus")
            }
            (_, PerturbationTarget::OriginEntry { .. } | PerturbationTarget::OriginJetEntry { .. })
                if kind != LagrangianKind::Palatini =>
            {
                Some("leaves the image of j")
            }
            _ => None,
        };
        match reason {
            Some(r) => Err(Error::InadmissibleDirection { name: name.to_string(), reason: r.to_string() }),
            None => Ok(k),
        }
    }

    /// L² norm of a perturbation profile over the chart.
    pub fn profile_norm(&self, k: usize, q: &QuadratureRule) -> f64 {
        let p = &self.perturbations[k].profile;
        q.integrate(&self.chart, |x| p.eval(x).powi(2)).sqrt()
    }

    fn slots(&self, target: PerturbationTarget) -> Vec<(usize, f64)> {
        let m = self.dim();
        let mm = m * m;
        match target {
            PerturbationTarget::FrameEntry { row, col } => vec![(row * m + col, 1.0)],
            PerturbationTarget::LorentzComponent { generator, direction } => {
                let g = &lorentz_basis(&self.sig)[generator];
                let mut out = Vec::new();
                for i in 0..m {
                    for j in 0..m {
                        if g.0[(i, j)] != 0.0 {
                            out.push((mm + (i * m + j) * m + direction, g.0[(i, j)]));
                        }
                    }
                }
                out
            }
            PerturbationTarget::SpinEntry { row, col, direction } => vec![(mm + (row * m + col) * m + direction, 1.0)],
            PerturbationTarget::OriginEntry { index } => vec![(mm + index, 1.0)],
            PerturbationTarget::OriginJetEntry { row, col } => vec![(mm + m + m * m * m + row * m + col, 1.0)],
        }
    }

    fn base_fields(&self) -> Vec<Field> {
        match &self.fields {
            SectionFields::Holonomic { frame, spin } => {
                frame.entries().iter().chain(spin.entries()).cloned().collect()
            }
            SectionFields::Jet { frame, v, ejet, vjet } => {
                frame.entries().iter().chain(v).chain(ejet).chain(vjet).cloned().collect()
            }
        }
    }

    /// Jets of every field and perturbation profile at the nodes of `q`.
    pub fn prepare(&self, q: &QuadratureRule, order: usize) -> Result<Prepared<'_>> {
        q.validate()?;
        let base = self.base_fields();
        let profiles: Vec<Field> = self.perturbations.iter().map(|p| Field::poly(p.profile.clone())).collect();
        let slots = self.perturbations.iter().map(|p| self.slots(p.target)).collect();
        let nodes = q
            .nodes(&self.chart)
            .into_par_iter()
            .map(|(x, weight)| {
                let mut ev = Evaluator::new(&x, order);
                let base = base.iter().map(|f| ev.eval(f)).collect();
                let profiles = profiles.iter().map(|f| ev.eval(f)).collect();
                NodeJets { x, weight, base, profiles, gauge: None }
            })
            .collect();
        Ok(Prepared { section: self, nodes, slots })
    }
}

/// Field jets at one quadrature node.
#[derive(Debug, Clone)]
pub struct NodeJets {
    pub x: Vec<f64>,
    pub weight: f64,
    base: Vec<Jet>,
    profiles: Vec<Jet>,
    gauge: Option<(Vec<Jet>, Vec<Jet>)>,
}

/// A section with jets precomputed on a quadrature grid.
#[derive(Debug, Clone)]
pub struct Prepared<'a> {
    section: &'a GridSection,
    nodes: Vec<NodeJets>,
    slots: Vec<Vec<(usize, f64)>>,
}

impl<'a> Prepared<'a> {
    pub fn section(&self) -> &GridSection {
        self.section
    }

    pub fn nodes(&self) -> &[NodeJets] {
        &self.nodes
    }

    /// Attaches jets of a gauge map so that sections are taken as s·g.
    pub fn with_gauge(mut self, g: &GroupMap, order: usize) -> Result<Self> {
        if g.dim() != self.section.dim() || g.n() != self.section.dim() {
            return Err(Error::DimensionMismatch { expected: self.section.dim(), found: g.n() });
        }
        self.nodes.par_iter_mut().for_each(|n| {
            let (a, xi) = g.jets(&n.x, order);
            n.gauge = Some((a, xi));
        });
        Ok(self)
    }

    /// The affine jet section at a node, displaced by Σ ε_k δ_k.
    pub fn am_section(&self, node: &NodeJets, shifts: &[(usize, f64)]) -> Result<AmSection<Jet>> {
        let s = self.section;
        let m = s.dim();
        let mut f = node.base.clone();
        for &(k, eps) in shifts {
            for &(slot, c) in &self.slots[k] {
                f[slot] = f[slot].clone() + node.profiles[k].scale(eps * c);
            }
        }
        let mm = m * m;
        let det = algebra::determinant(&f[..mm], m).value();
        if !(det.abs() > MIN_FRAME_DET) {
            return Err(Error::DegenerateFrame { point: node.x.clone(), reason: format!("det e = {det:e}") });
        }
        let am = match s.fields {
            SectionFields::Holonomic { .. } => {
                let rest = f.split_off(mm);
                LmSection::holonomic(m, f, &rest)?.through_j()
            }
            SectionFields::Jet { .. } => {
                let e = f[..mm].to_vec();
                let v = f[mm..mm + m].to_vec();
                let ejet = f[mm + m..mm + m + m * mm].to_vec();
                let vjet = f[mm + m + m * mm..].to_vec();
                AmSection::new(m, e, v, ejet, vjet)?
            }
        };
        match &node.gauge {
            Some((a, xi)) => am.act(a, xi),
            None => Ok(am),
        }
    }

    /// Σ_nodes w · f(section at node), summed in node order.
    pub fn integrate(
        &self,
        shifts: &[(usize, f64)],
        f: impl Fn(&AmSection<Jet>) -> Result<f64> + Sync,
    ) -> Result<f64> {
        let vals: Vec<f64> = self
            .nodes
            .par_iter()
            .map(|n| Ok(n.weight * f(&self.am_section(n, shifts)?)?))
            .collect::<Result<_>>()?;
        Ok(vals.iter().sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat() -> GridSection {
        let chart = ChartBox::unit(3);
        GridSection::holonomic(FrameField::identity(chart.clone()), SpinConnectionField::zero(chart), Signature::default(), 4)
            .unwrap()
    }

    #[test]
    fn profiles_vanish_on_the_boundary() {
        let mut s = flat();
        s.add_default_perturbations().unwrap();
        assert_eq!(s.perturbations().len(), 18);
        for p in s.perturbations() {
            for face in [[0.0, 0.3, 0.7], [1.0, 0.3, 0.7], [0.2, 0.0, 0.5], [0.2, 1.0, 0.5], [0.9, 0.4, 0.0], [0.9, 0.4, 1.0]] {
                assert!(p.profile.eval(&face).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn directions_are_checked() {
        let mut s = flat();
        s.add_perturbation("raw", PerturbationTarget::SpinEntry { row: 0, col: 0, direction: 1 }, &Polynomial::constant(3, 1.0))
            .unwrap();
        assert!(matches!(s.check_admissible(LagrangianKind::Palatini, "raw"), Err(Error::InadmissibleDirection { .. })));
        assert!(matches!(s.check_admissible(LagrangianKind::CsDef, "missing"), Err(Error::UnknownDirection(_))));
        assert!(s
            .add_perturbation("v", PerturbationTarget::OriginEntry { index: 0 }, &Polynomial::constant(3, 1.0))
            .is_err());
    }

    #[test]
    fn degenerate_frames_are_rejected() {
        let chart = ChartBox::unit(3);
        let x = Field::coordinate(3, 0);
        let one = Field::constant(1.0);
        let z = Field::zero();
        let e = vec![&x - &Field::constant(0.5), z.clone(), z.clone(), z.clone(), one.clone(), z.clone(), z.clone(), z, one];
        assert!(FrameField::new(chart.clone(), e.clone()).is_err() || {
            let f = FrameField::new(chart.clone(), e).unwrap();
            GridSection::holonomic(f, SpinConnectionField::zero(chart), Signature::default(), 5).is_err()
        });
    }
}
