//! Identity suites run by `check-identities`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cartan_forge::cartan::atlas::COCYCLE_TOLERANCE;
use cartan_forge::cartan::{
    canonical_connection_am, canonical_connection_lm, corrupted_two_chart_fixture, extend_cartan, holonomic_jet,
    j_map, jet_metricity_residual, lorentz_condition_residual, max_abs_over, metricity_residual, reduce_cartan,
    solder_at, two_chart_fixture, vielbein_to_christoffel, JetPointLM, MetricField, TangentIncrement,
    REDUCE_TOLERANCE,
};
use cartan_forge::forms::form::max_value_deviation;
use cartan_forge::forms::random::random_form;
use cartan_forge::forms::{curvature, ChartBox, Evaluator, Field, Pairing, ValueSpace, ValuedForm};
use cartan_forge::lagrangian::{
    chern_form, constraint_residuals, cs_exact_term, cs_lagrangian, cs_local, cs_reduced, palatini_lagrangian,
    transgression, LmSection, ProblemKind,
};
use cartan_forge::lie::{adjoint_aff, adjoint_gl, gl_pairing, AffAlgElement, AffElement, GlElement, Signature};
use cartan_forge::{Error, Result};

use crate::config::{Algebra, AtlasFixture, RunConfig, TransgressionConfig};
use crate::fields::Geometry;
use crate::report::Check;

const SAMPLES: usize = 20;
const POINTS: usize = 8;
/// Residuals at or above this count as clearly nonzero in the metricity equivalence.
const CLEARLY_NONZERO: f64 = 1e-4;

fn uniform(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn near_identity(rng: &mut ChaCha8Rng, m: usize) -> DMatrix<f64> {
    DMatrix::identity(m, m) + DMatrix::from_vec(m, m, uniform(rng, m * m)) * 0.4
}

fn aff_element(rng: &mut ChaCha8Rng) -> Result<AffElement> {
    AffElement::new(GlElement(near_identity(rng, 3)), DVector::from_vec(uniform(rng, 3)))
}

fn alg_element(rng: &mut ChaCha8Rng) -> Result<AffAlgElement> {
    AffAlgElement::new(GlElement(DMatrix::from_vec(3, 3, uniform(rng, 9))), DVector::from_vec(uniform(rng, 3)))
}

pub fn lie(seed: u64, tol: f64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut hom, mut jacobi, mut inv): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..SAMPLES {
        let (g, h, x) = (aff_element(&mut rng)?, aff_element(&mut rng)?, alg_element(&mut rng)?);
        let lhs = adjoint_aff(&g.compose(&h), &x)?;
        let rhs = adjoint_aff(&g, &adjoint_aff(&h, &x)?)?;
        hom = hom.max(lhs.sub(&rhs).max_abs());
        let (y, z) = (alg_element(&mut rng)?, alg_element(&mut rng)?);
        let j = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        jacobi = jacobi.max(j.max_abs());
        let a = GlElement(DMatrix::from_vec(3, 3, uniform(&mut rng, 9)));
        let b = GlElement(DMatrix::from_vec(3, 3, uniform(&mut rng, 9)));
        let k = GlElement(near_identity(&mut rng, 3));
        inv = inv.max((gl_pairing(&adjoint_gl(&k, &a)?, &adjoint_gl(&k, &b)?) - gl_pairing(&a, &b)).abs());
    }
    Ok(vec![
        Check::new("lie.adjoint_homomorphism", "Ad(gh) = Ad(g) Ad(h) on A(3)", hom, tol),
        Check::new("lie.jacobi", "Jacobi identity on a(3)", jacobi, tol),
        Check::new("lie.trace_pairing_invariance", "tr(Ad(k)X Ad(k)Y) = tr(XY) for k in GL(3)", inv, tol),
    ])
}

/// The Lorentz-plus-translation part of an 𝔞(3)-valued form: k = (b − η b^T η)/2.
pub fn lorentz_part(a: &ValuedForm<Field>, sig: &Signature) -> ValuedForm<Field> {
    a.map_values(ValueSpace::Aff(3), |v| {
        let mut out = v.to_vec();
        for i in 0..3 {
            for j in 0..3 {
                let eta = sig.eta(i) * sig.eta(j);
                out[i * 3 + j] = (&v[i * 3 + j] - &v[j * 3 + i].scale(eta)).scale(0.5);
            }
        }
        out
    })
}

/// max over forms and points of |d(Tq(A)) − ⟨F∧F⟩| for random 1-forms on a 4-chart.
pub fn transgression_residual(setup: &TransgressionConfig, sig: &Signature, seed: u64) -> Result<f64> {
    let chart = ChartBox::unit(4);
    let pairing = Pairing::Affine(sig.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for k in 0..setup.forms {
        let mut a = random_form(&mut rng, 4, 1, ValueSpace::Aff(3), setup.degree, 1.0);
        if setup.algebra == Algebra::Lorentz {
            a = lorentz_part(&a, sig);
        }
        for x in chart.sample_points(setup.points, seed.wrapping_add(k as u64)) {
            let aj = a.eval(&x, 2);
            let lhs = transgression(&aj, &pairing)?.exterior_derivative();
            worst = worst.max(max_value_deviation(&lhs, &chern_form(&aj, &pairing)?));
        }
    }
    Ok(worst)
}

pub fn forms(seed: u64, sig: &Signature, tol: f64) -> Result<Vec<Check>> {
    let chart = ChartBox::unit(4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut dd, mut bianchi): (f64, f64) = (0.0, 0.0);
    for k in 0..5 {
        let a = random_form(&mut rng, 4, 1, ValueSpace::Aff(3), 2, 1.0);
        for x in chart.sample_points(POINTS, seed.wrapping_add(k)) {
            let aj = a.eval(&x, 2);
            dd = dd.max(aj.exterior_derivative().exterior_derivative().max_abs_value());
            let f = curvature(&aj)?;
            bianchi = bianchi.max(f.exterior_derivative().add(&aj.wedge_bracket(&f)?).max_abs_value());
        }
    }
    let setup = TransgressionConfig { algebra: Algebra::Lorentz, ..TransgressionConfig::default() };
    let trans = transgression_residual(&setup, sig, seed)?;
    Ok(vec![
        Check::new("forms.d_squared", "d(dA) = 0 for a(3)-valued 1-forms on R^4", dd, tol),
        Check::new("forms.bianchi", "dF + [A^F] = 0", bianchi, tol),
        Check::new("forms.transgression_lorentz", "d(Tq(A)) = <F^F> for Lorentz-plus-translation forms", trans, tol),
    ])
}

fn values(f: &[Field], x: &[f64]) -> Vec<f64> {
    let mut ev = Evaluator::new(x, 0);
    f.iter().map(|c| ev.eval(c).value()).collect()
}

pub fn cartan(cfg: &RunConfig, g: &Geometry, seed: u64) -> Result<Vec<Check>> {
    let tol = cfg.tolerances.identity;
    let sig = &cfg.signature;
    let chart = cfg.chart();
    let m = chart.dim();
    let pts = chart.sample_points(POINTS, seed);
    let mut checks = Vec::new();

    let ejet = holonomic_jet(&g.frame, &g.spin);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut natural: f64 = 0.0;
    for x in &pts {
        let e = values(g.frame.entries(), x);
        let lm = JetPointLM::new(x.clone(), e.clone(), values(&ejet, x))?;
        let dx = DVector::from_vec(uniform(&mut rng, m));
        let de = DMatrix::from_vec(m, m, uniform(&mut rng, m * m));
        let pulled = canonical_connection_am(&j_map(&lm)?)?
            .apply(&TangentIncrement { dx: dx.clone(), de: de.clone(), dv: DVector::zeros(m) });
        let lin = canonical_connection_lm(&lm)?.apply(&dx, &de);
        natural = natural.max((&pulled.b.0 - &lin.0).amax()).max((&pulled.zeta - &solder_at(&e, &dx)?).amax());
    }
    checks.push(Check::new("cartan.canonical_connection_naturality", "j*theta_AM = (theta_LM, phi)", natural, tol));

    let gamma = vielbein_to_christoffel(&g.frame, &g.spin)?;
    let r = [
        max_abs_over(&lorentz_condition_residual(&g.spin, sig)?, &pts).0,
        max_abs_over(&metricity_residual(&g.frame, &gamma, sig)?, &pts).0,
        max_abs_over(&jet_metricity_residual(&g.frame, &ejet, sig)?, &pts).0,
    ];
    let metric = r.iter().all(|v| *v <= tol);
    let consistent = metric || r.iter().all(|v| *v >= CLEARLY_NONZERO);
    checks.push(
        Check::new(
            "cartan.metricity_equivalence",
            format!("Lorentz condition, metricity of Gamma and jet metricity agree: {:.3e} {:.3e} {:.3e}", r[0], r[1], r[2]),
            if metric { r.iter().cloned().fold(0.0, f64::max) } else { r.iter().cloned().fold(f64::INFINITY, f64::min) },
            if metric { tol } else { CLEARLY_NONZERO },
        )
        .with_passed(consistent),
    );

    let data = crate::fields::cartan_data(g)?;
    let zeta = MetricField::from_frame(&g.frame, sig);
    let reduced = reduce_cartan(&extend_cartan(&data), &zeta, sig, REDUCE_TOLERANCE);
    checks.push(match (metric, reduced) {
        (true, Ok(red)) => {
            Check::new("cartan.extension_round_trip", "reduce(extend(A)) = A", red.data().max_deviation(&data, &pts), tol)
        }
        (true, Err(e)) => Check::new("cartan.extension_round_trip", format!("reduce(extend(A)) = A: {e}"), f64::INFINITY, tol),
        (false, Err(Error::NotReducible { residual, witness })) => Check::new(
            "cartan.extension_round_trip",
            "non-metric data is not reducible",
            residual,
            REDUCE_TOLERANCE,
        )
        .with_witness(witness)
        .with_passed(residual > 0.0),
        (false, r) => Check::new(
            "cartan.extension_round_trip",
            format!("non-metric data is not reducible: {}", r.map(|_| "accepted".to_string()).unwrap_or_else(|e| e.to_string())),
            0.0,
            REDUCE_TOLERANCE,
        )
        .with_passed(false),
    });

    let atlas = match cfg.atlas {
        AtlasFixture::TwoChart => two_chart_fixture(),
        AtlasFixture::CorruptedTwoChart => corrupted_two_chart_fixture(),
    };
    let report = atlas.cocycle_check(seed)?;
    let mut c = Check::new(
        "cartan.cocycle_compatibility",
        "t_UW = t_UV t_VW on triple overlaps",
        report.max_deviation,
        COCYCLE_TOLERANCE,
    )
    .with_passed(report.passed);
    if let Some(w) = report.witness {
        c.identity = format!("{} (charts {})", c.identity, w.charts.join("/"));
        c = c.with_witness(w.point);
    }
    checks.push(c);
    Ok(checks)
}

pub fn lagrangian(cfg: &RunConfig, g: &Geometry, seed: u64) -> Result<Vec<Check>> {
    let tol = cfg.tolerances.identity;
    let sig = &cfg.signature;
    let lm = LmSection::from_fields(&g.frame, &g.spin)?;
    let (mut admissible, mut red_local, mut local_pg, mut def_red, mut split): (f64, f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, 0.0, 0.0);
    for x in cfg.chart().sample_points(POINTS, seed) {
        let lj = lm.eval_with(&mut Evaluator::new(&x, 2));
        let am = lj.through_j();
        admissible = admissible.max(constraint_residuals(&am, ProblemKind::CsAdmissible, sig, None)?.max_residual());
        let def = cs_lagrangian(&am, sig)?.density().value();
        let red = cs_reduced(&am, sig)?.density().value();
        let loc = cs_local(&am, sig)?.density().value();
        let pg = palatini_lagrangian(&lj, sig)?.density().value();
        let exact = cs_exact_term(&am, sig)?.top_coefficient().value();
        red_local = red_local.max((red - loc).abs());
        local_pg = local_pg.max((loc - pg).abs());
        def_red = def_red.max((def - red).abs());
        split = split.max((def - 2.0 * red + exact).abs());
    }
    Ok(vec![
        Check::new("lagrangian.admissibility", "sections through j are admissible", admissible, tol),
        Check::new("lagrangian.reduced_equals_local", "cs_reduced = cs_local", red_local, tol),
        Check::new("lagrangian.local_equals_palatini", "cs_local = Palatini density", local_pg, tol),
        Check::new("lagrangian.definition_equals_reduced", "cs_def = cs_reduced", def_red, tol),
        Check::new("lagrangian.exact_split", "cs_def = 2 cs_reduced - d<omega^phi>", split, tol),
    ])
}
