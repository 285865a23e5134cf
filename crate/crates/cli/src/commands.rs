//! Subcommand implementations. Each returns either a report or serialized Cartan data.

use cartan_forge::cartan::{extend_cartan, reduce_cartan, CartanLocalData, MetricField, REDUCE_TOLERANCE};
use cartan_forge::forms::Evaluator;
use cartan_forge::harness::{
    correspondence_test, gauge_shift_test, CorrespondenceTolerances, GaugeShiftTolerances, Verdict,
};
use cartan_forge::lagrangian::{cs_lagrangian, cs_local, cs_reduced, palatini_lagrangian, LmSection};
use cartan_forge::{Error, Result};

use crate::config::{Algebra, RunConfig, Suite};
use crate::fields::{self, Geometry};
use crate::report::{Check, IntegrandRow, Report};
use crate::suites;

pub enum Outcome {
    Report(Report),
    /// Serialized Cartan data.
    Data(String),
}

pub struct Context<'a> {
    pub cfg: &'a RunConfig,
    pub cli_seed: Option<u64>,
}

impl Context<'_> {
    fn seed(&self) -> u64 {
        self.cfg.seed(self.cli_seed)
    }

    fn geometry(&self) -> Result<Geometry> {
        fields::geometry(self.cfg, self.cli_seed)
    }
}

pub fn check_identities(cx: &Context) -> Result<Outcome> {
    let cfg = cx.cfg;
    let seed = cx.seed();
    let tol = &cfg.tolerances;
    let geometry = match cfg.suites().iter().any(|s| matches!(s, Suite::Cartan | Suite::Lagrangian)) {
        true => Some(cx.geometry()?),
        false => None,
    };
    let mut checks = Vec::new();
    for suite in cfg.suites() {
        let g = geometry.as_ref();
        checks.extend(match suite {
            Suite::Lie => suites::lie(seed, tol.identity)?,
            Suite::Forms => suites::forms(seed, &cfg.signature, tol.form)?,
            Suite::Cartan => suites::cartan(cfg, g.expect("built above"), seed)?,
            Suite::Lagrangian => suites::lagrangian(cfg, g.expect("built above"), seed)?,
        });
    }
    Ok(Outcome::Report(Report::new("check-identities", seed, checks)))
}

fn integrand_table(cfg: &RunConfig, g: &Geometry, seed: u64) -> Result<Vec<IntegrandRow>> {
    let sig = &cfg.signature;
    let lm = LmSection::from_fields(&g.frame, &g.spin)?;
    cfg.chart()
        .sample_points(cfg.integrand_samples, seed)
        .into_iter()
        .map(|x| {
            let lj = lm.eval_with(&mut Evaluator::new(&x, 2));
            let am = lj.through_j();
            Ok(IntegrandRow {
                cs_def: cs_lagrangian(&am, sig)?.density().value(),
                cs_reduced: cs_reduced(&am, sig)?.density().value(),
                cs_local: cs_local(&am, sig)?.density().value(),
                palatini: palatini_lagrangian(&lj, sig)?.density().value(),
                point: x,
            })
        })
        .collect()
}

pub fn correspondence(cx: &Context) -> Result<Outcome> {
    let cfg = cx.cfg;
    let tol = &cfg.tolerances;
    let g = cx.geometry()?;
    let s = fields::grid_section(cfg, &g)?;
    let tolerances =
        CorrespondenceTolerances { action: tol.action, variation_relative: tol.variation_relative, constraint: tol.constraint };
    let r = correspondence_test(&s, &s.quadrature(), tolerances, Some(cx.seed()))?;
    let mut checks =
        vec![Check::new("correspondence.action", "S_CS = S_PG", r.action_deviation, tol.action)];
    for v in &r.variations {
        checks.push(
            Check::new(
                "correspondence.variation",
                format!("dS_CS = dS_PG along {}", v.name),
                v.relative_deviation,
                tol.variation_relative,
            )
            .with_passed(v.agree),
        );
    }
    let mut report = Report::new("correspondence", cx.seed(), checks);
    report.verdict = r.verdict;
    report.notes = r.notes.clone();
    report.integrand = integrand_table(cfg, &g, cx.seed())?;
    report.details = Some(serde_json::to_value(&r).expect("reports serialize"));
    Ok(Outcome::Report(report))
}

pub fn gauge_shift(cx: &Context) -> Result<Outcome> {
    let cfg = cx.cfg;
    let tol = &cfg.tolerances;
    let g = cx.geometry()?;
    let s = fields::grid_section(cfg, &g)?;
    let gauge = fields::gauge(cfg, cx.cli_seed)?;
    let tolerances =
        GaugeShiftTolerances { pointwise: tol.form, closedness: tol.form, variation_relative: tol.variation_relative };
    let r = gauge_shift_test(&s, &gauge, &s.quadrature(), tolerances)?;
    let mut checks = vec![
        Check::new("gauge.pointwise_shift", "gauge shift relation for s.g", r.pointwise_max, tol.form)
            .with_witness(r.witness.clone()),
        Check::new("gauge.wz_closedness", "d<g*lambda ^ [g*lambda ^ g*lambda]> = 0", r.closedness_max, tol.form),
    ];
    for v in r.variations.iter().flatten() {
        checks.push(
            Check::new(
                "gauge.variation_invariance",
                format!("dS_CS(s.g) = dS_CS(s) along {}", v.name),
                v.relative_deviation,
                tol.variation_relative,
            )
            .with_passed(v.agree),
        );
    }
    let mut report = Report::new("gauge-shift", cx.seed(), checks);
    report.verdict = r.verdict;
    report.notes = r.notes.clone();
    Ok(Outcome::Report(report))
}

pub fn transgression_check(cx: &Context) -> Result<Outcome> {
    let cfg = cx.cfg;
    let setup = &cfg.transgression;
    let residual = suites::transgression_residual(setup, &cfg.signature, cx.seed())?;
    let algebra = match setup.algebra {
        Algebra::Affine => "a(3)",
        Algebra::Lorentz => "Lorentz-plus-translation",
    };
    let check = Check::new(
        "forms.transgression",
        format!("d(Tq(A)) = <F^F> for {algebra}-valued 1-forms on R^4 ({} forms x {} points)", setup.forms, setup.points),
        residual,
        cfg.tolerances.form,
    );
    Ok(Outcome::Report(Report::new("transgression-check", cx.seed(), vec![check])))
}

fn input_data(cx: &Context, g: &Geometry) -> Result<CartanLocalData> {
    match &cx.cfg.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
        }
        None => fields::cartan_data(g),
    }
}

fn serialize_data(d: &CartanLocalData) -> Result<String> {
    let mut s = serde_json::to_string_pretty(d).map_err(|e| {
        Error::InvalidInput(format!("{e}; generated data is polynomial only for constant frames (frame_degree 0)"))
    })?;
    s.push('\n');
    Ok(s)
}

pub fn extend(cx: &Context) -> Result<Outcome> {
    let g = cx.geometry()?;
    let data = input_data(cx, &g)?;
    Ok(Outcome::Data(serialize_data(extend_cartan(&data).data())?))
}

pub fn reduce(cx: &Context) -> Result<Outcome> {
    let cfg = cx.cfg;
    let g = cx.geometry()?;
    let data = input_data(cx, &g)?;
    if data.dim() != g.frame.dim() {
        return Err(Error::DimensionMismatch { expected: g.frame.dim(), found: data.dim() });
    }
    let zeta = MetricField::from_frame(&g.frame, &cfg.signature);
    match reduce_cartan(&extend_cartan(&data), &zeta, &cfg.signature, REDUCE_TOLERANCE) {
        Ok(red) => Ok(Outcome::Data(serialize_data(red.data())?)),
        Err(Error::NotReducible { residual, witness }) => {
            let check = Check::new("cartan.reducibility", "Gamma is metric for the frame's metric", residual, REDUCE_TOLERANCE)
                .with_witness(witness);
            let mut report = Report::new("reduce", cx.seed(), vec![check]);
            report.verdict = Verdict::Fail;
            Ok(Outcome::Report(report))
        }
        Err(e) => Err(e),
    }
}
