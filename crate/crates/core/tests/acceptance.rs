//! Acceptance suite: one line per criterion, plus supplementary lines marked `+`.
//!
//! Exit status is zero unless `--strict` is passed, in which case any failing numbered
//! criterion makes the run exit with status 1.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cartan_forge::cartan::{
    canonical_connection_am, canonical_connection_lm, corrupted_two_chart_fixture, extend_cartan,
    holonomic_jet, jet_metricity_residual, j_map, lorentz_condition_residual, max_abs_over,
    metricity_residual, random_affine_gauge, random_frame, random_gl_spin, random_lorentz_gauge,
    random_lorentz_spin, random_metric_configuration, reduce_cartan, solder_at, transversality_check,
    two_chart_fixture, vielbein_to_christoffel, CartanLocalData, FrameField, JetPointLM, MetricField,
    SpinConnectionField, TangentIncrement, REDUCE_TOLERANCE,
};
use cartan_forge::error::Error;
use cartan_forge::forms::form::max_value_deviation;
use cartan_forge::forms::random::random_form;
use cartan_forge::forms::{ChartBox, Evaluator, Field, Pairing, ValueSpace, ValuedForm};
use cartan_forge::harness::{
    correspondence_test, el_residual, gauge_shift_test, wz_closedness, CorrespondenceTolerances,
    GaugeShiftTolerances, GridSection, Verdict,
};
use cartan_forge::lagrangian::{
    chern_form, constraint_residuals, cs_exact_term, cs_lagrangian, cs_local, cs_reduced, transgression,
    LagrangianKind, LmSection, ProblemKind,
};
use cartan_forge::lie::{adjoint_aff, adjoint_gl, gl_pairing, AffAlgElement, AffElement, GlElement, Signature};

struct Line {
    id: String,
    title: &'static str,
    passed: bool,
    detail: String,
    secs: f64,
}

fn timed(id: &str, title: &'static str, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (passed, detail) = f();
    Line { id: id.to_string(), title, passed, detail, secs: t.elapsed().as_secs_f64() }
}

fn chart3() -> ChartBox {
    ChartBox::unit(3)
}

fn sig() -> Signature {
    Signature::default()
}

fn metric_section(seed: u64) -> LmSection<Field> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = random_frame(&mut rng, &chart3(), 3, 0.4).unwrap();
    let w = random_lorentz_spin(&mut rng, &chart3(), &sig(), 3, 0.8).unwrap();
    LmSection::from_fields(&e, &w).unwrap()
}

fn metric_grid(seed: u64, order: usize) -> GridSection {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = random_frame(&mut rng, &chart3(), 3, 0.4).unwrap();
    let w = random_lorentz_spin(&mut rng, &chart3(), &sig(), 3, 0.8).unwrap();
    let mut s = GridSection::holonomic(e, w, sig(), order).unwrap();
    s.add_default_perturbations().unwrap();
    s
}

fn flat_grid(order: usize) -> GridSection {
    let mut s =
        GridSection::holonomic(FrameField::identity(chart3()), SpinConnectionField::zero(chart3()), sig(), order)
            .unwrap();
    s.add_default_perturbations().unwrap();
    s
}

/// Replaces the matrix part of an 𝔞(3)-valued form by its Lorentz part.
fn lorentz_part(a: &ValuedForm<Field>, sig: &Signature) -> ValuedForm<Field> {
    let eta: Vec<f64> = (0..3).map(|i| sig.eta(i)).collect();
    a.map_values(ValueSpace::Aff(3), |v| {
        let mut out = v.to_vec();
        for i in 0..3 {
            for j in 0..3 {
                out[i * 3 + j] = (&v[i * 3 + j] - &v[j * 3 + i].scale(eta[i] * eta[j])).scale(0.5);
            }
        }
        out
    })
}

fn transgression_residual(forms: impl Fn(&mut ChaCha8Rng) -> ValuedForm<Field>) -> f64 {
    let chart = ChartBox::unit(4);
    let pairing = Pairing::Affine(sig());
    let mut worst: f64 = 0.0;
    for seed in 0..25 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let a = forms(&mut rng);
        for x in chart.sample_points(50, seed) {
            let aj = a.eval(&x, 2);
            let dtq = transgression(&aj, &pairing).unwrap().exterior_derivative();
            let ff = chern_form(&aj, &pairing).unwrap();
            worst = worst.max(max_value_deviation(&dtq, &ff));
        }
    }
    worst
}

fn criterion_1() -> Line {
    timed("1", "transgression identity d(Tq) = <F^F> on a(3)-valued 1-forms, m=4", || {
        let t = Instant::now();
        let worst = transgression_residual(|rng| random_form(rng, 4, 1, ValueSpace::Aff(3), 2, 1.0));
        let secs = t.elapsed().as_secs_f64();
        (worst <= 1e-8 && secs < 30.0, format!("max residual {worst:.3e} (tol 1e-8), 25 forms x 50 points, {secs:.1} s"))
    })
}

fn criterion_1_lorentz() -> Line {
    timed("1+", "same identity for forms valued in the Lorentz-by-translations subalgebra", || {
        let s = sig();
        let worst = transgression_residual(|rng| lorentz_part(&random_form(rng, 4, 1, ValueSpace::Aff(3), 2, 1.0), &s));
        (worst <= 1e-8, format!("max residual {worst:.3e} (tol 1e-8)"))
    })
}

fn criterion_2() -> Line {
    timed("2", "three-way Chern-Simons Lagrangian equality on admissible sections", || {
        let t = Instant::now();
        let s = sig();
        let (mut dev_def, mut dev_local, mut admissible): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for seed in 0..50 {
            let lm = metric_section(2000 + seed);
            for x in chart3().sample_points(8, seed) {
                let am = lm.eval_with(&mut Evaluator::new(&x, 2)).through_j();
                admissible = admissible.max(
                    constraint_residuals(&am, ProblemKind::CsAdmissible, &s, None).unwrap().max_residual(),
                );
                let def = cs_lagrangian(&am, &s).unwrap().density().value();
                let red = cs_reduced(&am, &s).unwrap().density().value();
                let loc = cs_local(&am, &s).unwrap().density().value();
                dev_def = dev_def.max((def - red).abs()).max((def - loc).abs());
                dev_local = dev_local.max((red - loc).abs());
            }
        }
        let secs = t.elapsed().as_secs_f64();
        (
            dev_def <= 1e-10 && dev_local <= 1e-10 && admissible <= 1e-10 && secs < 30.0,
            format!(
                "max |cs_def - other| {dev_def:.3e}, max |cs_reduced - cs_local| {dev_local:.3e} (tol 1e-10), \
                 admissibility residual {admissible:.1e}, 50 sections x 8 points, {secs:.1} s"
            ),
        )
    })
}

fn criterion_2_split() -> Line {
    timed("2+", "cs_def = 2 cs_reduced - d<omega^phi> on the same sections", || {
        let s = sig();
        let mut worst: f64 = 0.0;
        for seed in 0..50 {
            let lm = metric_section(2000 + seed);
            for x in chart3().sample_points(8, seed) {
                let am = lm.eval_with(&mut Evaluator::new(&x, 2)).through_j();
                let def = cs_lagrangian(&am, &s).unwrap().density().value();
                let red = cs_reduced(&am, &s).unwrap().density().value();
                let exact = cs_exact_term(&am, &s).unwrap().top_coefficient().value();
                worst = worst.max((def - 2.0 * red + exact).abs());
            }
        }
        (worst <= 1e-10, format!("max residual {worst:.3e} (tol 1e-10)"))
    })
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-scale..scale)).collect()
}

fn near_identity(rng: &mut ChaCha8Rng, m: usize, scale: f64) -> DMatrix<f64> {
    DMatrix::identity(m, m) + DMatrix::from_vec(m, m, random_vec(rng, m * m, scale))
}

fn criterion_3() -> Line {
    timed("3", "canonical-connection naturality j*theta_AM - theta_LM - phi = 0", || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut worst: f64 = 0.0;
        for _ in 0..200 {
            let m = 3;
            let e = near_identity(&mut rng, m, 0.4);
            let e_rows: Vec<f64> = (0..m * m).map(|k| e[(k / m, k % m)]).collect();
            let lm = JetPointLM::new(random_vec(&mut rng, m, 1.0), e_rows.clone(), random_vec(&mut rng, 27, 1.0)).unwrap();
            let am = j_map(&lm).unwrap();
            let dx = DVector::from_vec(random_vec(&mut rng, m, 1.0));
            let de = DMatrix::from_vec(m, m, random_vec(&mut rng, m * m, 1.0));
            let pulled = canonical_connection_am(&am)
                .unwrap()
                .apply(&TangentIncrement { dx: dx.clone(), de: de.clone(), dv: DVector::zeros(m) });
            let lin = canonical_connection_lm(&lm).unwrap().apply(&dx, &de);
            let solder = solder_at(&e_rows, &dx).unwrap();
            worst = worst.max((&pulled.b.0 - &lin.0).amax()).max((&pulled.zeta - &solder).amax());
        }
        (worst <= 1e-12, format!("max residual {worst:.3e} (tol 1e-12), 200 jet points"))
    })
}

fn criterion_4() -> Line {
    timed("4", "metricity equivalence: Lorentz condition, metricity of Gamma, jet-level metricity", || {
        let chart = chart3();
        let s = sig();
        let pts = chart.sample_points(20, 4);
        let mut bad = Vec::new();
        let (mut small, mut large): (f64, f64) = (0.0, f64::INFINITY);
        for seed in 0..40u64 {
            let metric = seed < 20;
            let mut rng = ChaCha8Rng::seed_from_u64(4000 + seed);
            let e = random_frame(&mut rng, &chart, 3, 0.4).unwrap();
            let w = if metric {
                random_lorentz_spin(&mut rng, &chart, &s, 3, 0.8).unwrap()
            } else {
                random_gl_spin(&mut rng, &chart, 3, 0.8).unwrap()
            };
            let gamma = vielbein_to_christoffel(&e, &w).unwrap();
            let r = [
                max_abs_over(&lorentz_condition_residual(&w, &s).unwrap(), &pts).0,
                max_abs_over(&metricity_residual(&e, &gamma, &s).unwrap(), &pts).0,
                max_abs_over(&jet_metricity_residual(&e, &holonomic_jet(&e, &w), &s).unwrap(), &pts).0,
            ];
            let all_small = r.iter().all(|v| *v <= 1e-10);
            let all_large = r.iter().all(|v| *v >= 1e-4);
            if metric {
                small = small.max(r.iter().cloned().fold(0.0, f64::max));
            } else {
                large = large.min(r.iter().cloned().fold(f64::INFINITY, f64::min));
            }
            if !(all_small && metric || all_large && !metric) {
                bad.push(seed);
            }
        }
        (
            bad.is_empty(),
            format!(
                "20 metric configurations max residual {small:.2e}, 20 non-metric min residual {large:.2e}, \
                 inconsistent seeds {bad:?}"
            ),
        )
    })
}

fn criterion_5() -> Line {
    timed("5", "extension/reduction round trip and rejection of non-metric data", || {
        let chart = chart3();
        let s = sig();
        let pts = chart.sample_points(20, 5);
        let mut worst: f64 = 0.0;
        let mut failures = Vec::new();
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(5000 + seed);
            let cfg = random_metric_configuration(&mut rng, &chart, &s, 3, 0.3).unwrap();
            let zeta = MetricField::from_frame(&cfg.frame, &s);
            match reduce_cartan(&extend_cartan(&cfg.data), &zeta, &s, REDUCE_TOLERANCE) {
                Ok(red) => worst = worst.max(red.data().max_deviation(&cfg.data, &pts)),
                Err(e) => failures.push(format!("seed {seed}: {e}")),
            }
        }
        let mut min_rejected = f64::INFINITY;
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(5500 + seed);
            let frame = random_frame(&mut rng, &chart, 3, 0.3).unwrap();
            let spin = random_gl_spin(&mut rng, &chart, 3, 0.5).unwrap();
            let gamma = vielbein_to_christoffel(&frame, &spin).unwrap();
            let data = CartanLocalData::new(chart.clone(), gamma, vec![Field::zero(); 9]).unwrap();
            let zeta = MetricField::from_frame(&frame, &s);
            match reduce_cartan(&extend_cartan(&data), &zeta, &s, REDUCE_TOLERANCE) {
                Err(Error::NotReducible { residual, .. }) if residual > 0.0 => min_rejected = min_rejected.min(residual),
                _ => failures.push(format!("non-metric seed {seed} was not rejected")),
            }
        }
        (
            worst <= 1e-12 && failures.is_empty(),
            format!(
                "round-trip deviation {worst:.3e} (tol 1e-12) on 20 configurations, \
                 10/10 non-metric rejected with residual >= {min_rejected:.2e}; problems {failures:?}"
            ),
        )
    })
}

fn criterion_6() -> Line {
    timed("6", "gauge shift identity for A(3)-valued gauges", || {
        let s = sig();
        let (mut pointwise, mut closed, mut closed4): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for seed in 0..10 {
            let section = metric_grid(6000 + seed, 4);
            let mut rng = ChaCha8Rng::seed_from_u64(6500 + seed);
            let g = random_affine_gauge(&mut rng, &chart3(), 3, 2, 0.5).unwrap();
            let r = gauge_shift_test(&section, &g, &section.quadrature(), GaugeShiftTolerances::default()).unwrap();
            pointwise = pointwise.max(r.pointwise_max);
            closed = closed.max(r.closedness_max);
            let chart4 = ChartBox::unit(4);
            let g4 = random_affine_gauge(&mut rng, &chart4, 3, 2, 0.5).unwrap();
            closed4 = closed4.max(wz_closedness(&g4, &chart4.sample_points(10, seed), &s).unwrap());
        }
        (
            pointwise <= 1e-8 && closed <= 1e-8,
            format!(
                "max pointwise residual {pointwise:.3e} (tol 1e-8), WZ closedness on the 3-chart {closed:.1e}, \
                 on R^4 charts {closed4:.3e}; 10 pairs"
            ),
        )
    })
}

fn criterion_6_lorentz() -> Line {
    timed("6+", "gauge shift for Lorentz-by-translation gauges trivial on the boundary", || {
        let s = sig();
        let (mut pointwise, mut closed4, mut variation): (f64, f64, f64) = (0.0, 0.0, 0.0);
        let mut verdicts = Vec::new();
        for seed in 0..10 {
            let section = metric_grid(6000 + seed, 6);
            let mut rng = ChaCha8Rng::seed_from_u64(6700 + seed);
            let g = random_lorentz_gauge(&mut rng, &chart3(), &s, 2, 0.8, true).unwrap();
            let r = gauge_shift_test(&section, &g, &section.quadrature(), GaugeShiftTolerances::default()).unwrap();
            pointwise = pointwise.max(r.pointwise_max);
            if let Some(v) = &r.variations {
                variation = v.iter().map(|m| m.relative_deviation).fold(variation, f64::max);
            }
            verdicts.push(r.verdict);
            let chart4 = ChartBox::unit(4);
            let g4 = random_lorentz_gauge(&mut rng, &chart4, &s, 2, 0.8, false).unwrap();
            closed4 = closed4.max(wz_closedness(&g4, &chart4.sample_points(10, seed), &s).unwrap());
        }
        (
            verdicts.iter().all(|v| *v == Verdict::Pass) && closed4 <= 1e-8,
            format!(
                "max pointwise residual {pointwise:.3e}, max relative variation change {variation:.2e}, \
                 WZ closedness on R^4 {closed4:.3e}; 10 pairs"
            ),
        )
    })
}

fn criterion_7() -> (Line, Line) {
    let t = Instant::now();
    let mut action: f64 = 0.0;
    let mut variation: f64 = 0.0;
    let mut split_action: f64 = 0.0;
    let mut split_variation: f64 = 0.0;
    let s = sig();
    for seed in 0..20 {
        let section = metric_grid(7000 + seed, 6);
        let q = section.quadrature();
        let r = correspondence_test(&section, &q, CorrespondenceTolerances::default(), Some(seed)).unwrap();
        action = action.max(r.action_deviation);
        for m in &r.variations {
            variation = variation.max(m.relative_deviation);
        }
        let p = section.prepare(&q, 2).unwrap();
        let exact = p.integrate(&[], |am| Ok(cs_exact_term(am, &s)?.top_coefficient().value())).unwrap();
        split_action = split_action.max((r.chern_simons.action - 2.0 * r.palatini.action + exact).abs());
    }
    let flat = flat_grid(6);
    let fq = flat.quadrature();
    let el_pg = el_residual(LagrangianKind::Palatini, &flat, &fq).unwrap().residual;
    let el_cs = el_residual(LagrangianKind::CsDef, &flat, &fq).unwrap().residual;
    let secs = t.elapsed().as_secs_f64();
    let t_split = Instant::now();
    for seed in 0..3 {
        let section = metric_grid(7000 + seed, 8);
        let r = correspondence_test(&section, &section.quadrature(), CorrespondenceTolerances::default(), Some(seed))
            .unwrap();
        for m in &r.variations {
            let scale = m.left.abs().max(2.0 * m.right.abs()).max(f64::MIN_POSITIVE);
            split_variation = split_variation.max((m.left - 2.0 * m.right).abs() / scale);
        }
    }
    let main = Line {
        id: "7".into(),
        title: "extremal correspondence: S_CS = S_PG and matched first variations agree",
        passed: action <= 1e-8 && variation <= 1e-6 && el_pg <= 1e-8 && el_cs <= 1e-8 && secs < 120.0,
        detail: format!(
            "max |S_CS - S_PG| {action:.3e} (tol 1e-8), max relative variation deviation {variation:.3e} (tol 1e-6), \
             flat EL residual palatini {el_pg:.1e} / cs {el_cs:.1e} (tol 1e-8), 20 configurations, {secs:.1} s"
        ),
        secs,
    };
    let split = Line {
        id: "7+".into(),
        title: "S_CS = 2 S_PG - integral of d<omega^phi>, and dS_CS = 2 dS_PG",
        passed: split_action <= 1e-8 && split_variation <= 1e-6,
        detail: format!("max action residual {split_action:.3e} (tol 1e-8), max relative variation residual {split_variation:.3e} (tol 1e-6)"),
        secs: t_split.elapsed().as_secs_f64(),
    };
    (main, split)
}

/// Rank by Gaussian elimination with partial pivoting, relative to the largest entry.
fn rank_by_elimination(rows: &[Vec<f64>], n: usize) -> usize {
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let scale = a.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let tol = 1e-9 * scale;
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..a.len()).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())) else { break };
        if a[p][col].abs() <= tol {
            continue;
        }
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            let f = a[r][col] / a[rank][col];
            for c in col..n {
                a[r][c] -= f * a[rank][c];
            }
        }
        rank += 1;
    }
    rank
}

fn criterion_8() -> Line {
    timed("8", "transversality test agrees with a row-reduction rank oracle", || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut disagreements = 0;
        let mut degenerate = 0;
        let mut transverse = 0;
        for _ in 0..1000 {
            let n = rng.gen_range(2..=12);
            let k1 = rng.gen_range(1..n);
            let k2 = rng.gen_range(1..=(n - k1 + 1).min(n));
            let v1: Vec<Vec<f64>> = (0..k1).map(|_| random_vec(&mut rng, n, 1.0)).collect();
            let mut v2: Vec<Vec<f64>> = (0..k2).map(|_| random_vec(&mut rng, n, 1.0)).collect();
            if rng.gen_bool(0.4) {
                let c: Vec<f64> = random_vec(&mut rng, k1, 1.0);
                let last = v2.len() - 1;
                v2[last] = (0..n).map(|j| (0..k1).map(|i| c[i] * v1[i][j]).sum()).collect();
            }
            let got = transversality_check(&v1, &v2, n).transverse;
            let stacked: Vec<Vec<f64>> = v1.iter().chain(&v2).cloned().collect();
            let expect = k1 + k2 <= n && rank_by_elimination(&stacked, n) == k1 + k2;
            if got != expect {
                disagreements += 1;
            }
            if expect {
                transverse += 1;
            } else {
                degenerate += 1;
            }
        }
        (
            disagreements == 0,
            format!("{disagreements} disagreements over 1000 pairs ({transverse} transverse, {degenerate} not), n <= 12"),
        )
    })
}

fn random_gl(rng: &mut ChaCha8Rng) -> GlElement {
    GlElement(near_identity(rng, 3, 0.5))
}

fn random_aff(rng: &mut ChaCha8Rng) -> AffElement {
    AffElement::new(random_gl(rng), DVector::from_vec(random_vec(rng, 3, 1.0))).unwrap()
}

fn random_alg(rng: &mut ChaCha8Rng) -> AffAlgElement {
    AffAlgElement::new(
        GlElement(DMatrix::from_vec(3, 3, random_vec(rng, 9, 1.0))),
        DVector::from_vec(random_vec(rng, 3, 1.0)),
    )
    .unwrap()
}

fn criterion_9() -> Line {
    timed("9", "Lie layer: Ad homomorphism, Jacobi identity, trace-pairing invariance", || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (mut hom, mut jacobi, mut inv): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for _ in 0..100 {
            let (g1, g2, x) = (random_aff(&mut rng), random_aff(&mut rng), random_alg(&mut rng));
            let lhs = adjoint_aff(&g1.compose(&g2), &x).unwrap();
            let rhs = adjoint_aff(&g1, &adjoint_aff(&g2, &x).unwrap()).unwrap();
            hom = hom.max(lhs.sub(&rhs).max_abs());
        }
        for _ in 0..100 {
            let (x, y, z) = (random_alg(&mut rng), random_alg(&mut rng), random_alg(&mut rng));
            let j = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
            jacobi = jacobi.max(j.max_abs());
        }
        for _ in 0..100 {
            let g = random_gl(&mut rng);
            let a = GlElement(DMatrix::from_vec(3, 3, random_vec(&mut rng, 9, 1.0)));
            let b = GlElement(DMatrix::from_vec(3, 3, random_vec(&mut rng, 9, 1.0)));
            let moved = gl_pairing(&adjoint_gl(&g, &a).unwrap(), &adjoint_gl(&g, &b).unwrap());
            inv = inv.max((moved - gl_pairing(&a, &b)).abs());
        }
        (
            hom <= 1e-10 && jacobi <= 1e-10 && inv <= 1e-10,
            format!("Ad homomorphism {hom:.2e}, Jacobi {jacobi:.2e}, pairing invariance {inv:.2e} (tol 1e-10), 100 samples each"),
        )
    })
}

fn criterion_10() -> Line {
    timed("10", "cocycle check on the two-chart fixture and its corruption", || {
        let good = two_chart_fixture().cocycle_check(10).unwrap();
        let bad = corrupted_two_chart_fixture().cocycle_check(10).unwrap();
        let atlas = corrupted_two_chart_fixture();
        let located = bad.witness.as_ref().is_some_and(|w| {
            atlas.charts.iter().filter(|c| c.contains(&w.point)).count() >= 2 && w.deviation > 0.0
        });
        let witness = bad.witness.as_ref().map(|w| format!("{:?} at {:?}", w.charts, w.point)).unwrap_or_default();
        (
            good.passed && !bad.passed && located,
            format!(
                "fixture deviation {:.2e}; corrupted deviation {:.2e}, witness {witness}",
                good.max_deviation, bad.max_deviation
            ),
        )
    })
}

fn main() {
    let strict = std::env::args().any(|a| a == "--strict");
    let t = Instant::now();
    let mut lines = vec![criterion_1(), criterion_1_lorentz(), criterion_2(), criterion_2_split(), criterion_3()];
    lines.extend([criterion_4(), criterion_5(), criterion_6(), criterion_6_lorentz()]);
    let (seven, seven_split) = criterion_7();
    lines.extend([seven, seven_split, criterion_8(), criterion_9(), criterion_10()]);
    let mut failed = Vec::new();
    for l in &lines {
        let status = if l.passed { "PASS" } else { "FAIL" };
        println!("{status} [{:>3}] {} :: {} ({:.1} s)", l.id, l.title, l.detail, l.secs);
        if !l.passed && !l.id.ends_with('+') {
            failed.push(l.id.clone());
        }
    }
    let numbered = lines.iter().filter(|l| !l.id.ends_with('+')).count();
    println!(
        "acceptance: {}/{numbered} criteria passed; failing: {failed:?}; total {:.1} s",
        numbered - failed.len(),
        t.elapsed().as_secs_f64()
    );
    if strict && !failed.is_empty() {
        std::process::exit(1);
    }
}
