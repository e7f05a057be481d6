//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with the measured deviation. Tolerances are pinned in the asserts.
//!
//! Criteria with runtime limits hold a global lock so wall-clock
//! measurements are not polluted by parallel tests.

use std::sync::Mutex;
use std::time::Instant;

use causal_cfn::cases::builtin_cases;
use causal_cfn::cayley::{find_strongly_orthogonal, restricted_system};
use causal_cfn::cfn::{
    c_omega, c_total, d_group, formal_dimension, group_case_c, SpectralParameter,
};
use causal_cfn::cones::{
    c_min_and_ck, dual_cone, dual_contains_interior_f64, cone_identity_exact,
    cone_identity_sampled, rds_check_f64, DEFAULT_SAMPLE_SEED,
};
use causal_cfn::oracle::{
    divergence_scan, h_closed_form, h_integral, i_lambda_rank1, ratio_constancy,
};
use causal_cfn::rat::{rat_i, RationalVector};
use causal_cfn::roots::{
    build_classical, is_reflection_closed, make_causal, weyl_group, Family,
};
use causal_cfn::special::Status;
use causal_cfn::verify::{
    admissible_samples, beta_partial_fraction, rds_interior_samples, sample_specs,
};

static TIMED: Mutex<()> = Mutex::new(());

fn report(criterion: u32, pass: bool, detail: &str) {
    println!("acceptance criterion {criterion}: {} ({detail})", if pass { "pass" } else { "FAIL" });
    assert!(pass, "criterion {criterion} failed: {detail}");
}

/// Criterion 1: the Beta-product factor against the partial-fraction
/// expansion of the defining integrals, on single-root reductions with even
/// multiplicity; 50 admissible parameters, relative error <= 1e-8, under 10s.
#[test]
fn acceptance_1_beta_product_vs_integral_oracle() {
    let _guard = TIMED.lock().unwrap();
    let start = Instant::now();
    let (all, pos) = build_classical(Family::A, 1).unwrap();
    let z0 = RationalVector::from_i64(&[1, -1]);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for i in 0..50u32 {
        let m = [2u32, 4, 6][(i % 3) as usize];
        let datum = make_causal(&all, &pos, &z0, move |_| Some((m, 0)), "a1").unwrap();
        // admissible pairing: p < 2 - m, spread over a decade
        let p = (2.0 - m as f64) - 0.11 - 0.23 * i as f64;
        let lam = SpectralParameter::Float(vec![0.5 * p, -0.5 * p]);
        let got = c_omega(&datum, &lam).unwrap();
        assert_eq!(got.status, Status::Finite);
        let a = -0.5 * p - 0.5 * m as f64 + 1.0;
        let want = beta_partial_fraction(a, m / 2);
        worst = worst.max((got.to_f64() - want).abs() / want.abs());
        count += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        count == 50 && worst <= 1e-8 && elapsed < 10.0,
        &format!("{count} parameters, worst rel {worst:.3e}, {elapsed:.2}s"),
    );
}

/// Criterion 2: group-case ratio constancy, rank 1 and 2 group types, at
/// least 20 admissible parameters, relative standard deviation <= 1e-8,
/// under 5 s.
#[test]
fn acceptance_2_group_ratio_constancy() {
    let _guard = TIMED.lock().unwrap();
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut cases_run = 0;
    for case in builtin_cases() {
        let datum = case.to_datum().unwrap();
        if datum.rank() > 2 {
            continue;
        }
        let lams = admissible_samples(&datum, 24, DEFAULT_SAMPLE_SEED);
        let mut cs = Vec::new();
        let mut gs = Vec::new();
        for lam in &lams {
            let c = c_total(&datum, lam).unwrap();
            let g = group_case_c(&datum, lam).unwrap();
            if c.is_finite() && g.is_finite() && !g.is_zero() {
                cs.push(c);
                gs.push(g);
            }
        }
        assert!(cs.len() >= 20, "{}: only {} admissible parameters", datum.label, cs.len());
        let stats = ratio_constancy(&cs, &gs).unwrap();
        worst = worst.max(stats.rel_std_dev);
        cases_run += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        2,
        cases_run >= 3 && worst <= 1e-8 && elapsed < 5.0,
        &format!("{cases_run} cases, worst rel std dev {worst:.3e}, {elapsed:.2}s"),
    );
}

/// Criterion 3: formal-dimension factorization, 100 interior parameters per
/// built-in case, relative error <= 1e-10.
#[test]
fn acceptance_3_formal_dimension_factorization() {
    let mut worst: f64 = 0.0;
    for case in builtin_cases() {
        let datum = case.to_datum().unwrap();
        let hat = case.hat(&datum).unwrap().unwrap();
        let mut used = 0;
        for lam in rds_interior_samples(&datum, 100, DEFAULT_SAMPLE_SEED ^ 3) {
            let fd = formal_dimension(&datum, &hat, &lam).unwrap();
            let dg = d_group(&hat, &lam);
            let c = c_total(&datum, &lam.shifted(&datum.rho)).unwrap();
            assert!(fd.value.is_finite() && dg.is_finite() && c.is_finite(), "{}", datum.label);
            // |x/y - 1| <= 1e-10 compared through the log difference
            let delta = (fd.value.div(&dg).log_abs() - c.abs().log_abs()).abs();
            let rel = delta.exp_m1().abs();
            worst = worst.max(rel);
            used += 1;
        }
        assert_eq!(used, 100, "{}", datum.label);
    }
    report(3, worst <= 1e-10, &format!("6 cases x 100 parameters, worst rel {worst:.3e}"));
}

/// Criterion 4: the strict parameter cone test agrees with (i) the dual-cone
/// interior form and (ii) finiteness of the formal dimension, on 10^4
/// sampled parameters per case with zero disagreements.
#[test]
fn acceptance_4_rds_iff_finiteness() {
    use rand::{Rng, SeedableRng};
    let mut disagreements = 0usize;
    for case in builtin_cases() {
        let datum = case.to_datum().unwrap();
        let hat = case.hat(&datum).unwrap().unwrap();
        let (c_min, _) = c_min_and_ck(&datum);
        let rho = datum.rho.to_f64_vec();
        let scale = 2.0 + 2.0 * rho.iter().map(|c| c.abs()).fold(0.0, f64::max);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(DEFAULT_SAMPLE_SEED ^ 4);
        for _ in 0..10_000 {
            let lam: Vec<f64> =
                (0..datum.ambient_dim).map(|_| rng.gen_range(-scale..scale)).collect();
            let rds = rds_check_f64(&datum, &lam);
            let shifted: Vec<f64> = lam.iter().zip(&rho).map(|(a, b)| -(a + b)).collect();
            let cone_form = dual_contains_interior_f64(&c_min, &shifted);
            let fd = formal_dimension(&datum, &hat, &SpectralParameter::Float(lam)).unwrap();
            let finite_form = fd.value.status != Status::Divergent;
            if rds != cone_form || rds != finite_form {
                disagreements += 1;
            }
        }
    }
    report(4, disagreements == 0, &format!("6 cases x 10000 samples, {disagreements} disagreements"));
}

/// Criterion 5: the strongly-orthogonal cone identity, exactly by double
/// description on every built-in group type (all have s <= 3), plus zero
/// membership disagreements over 10^4 fixed-seed samples, under 30 s.
#[test]
fn acceptance_5_cone_identity() {
    let _guard = TIMED.lock().unwrap();
    let start = Instant::now();
    let mut all_exact = true;
    let mut all_sampled = true;
    for case in builtin_cases() {
        let datum = case.to_datum().unwrap();
        let gset = find_strongly_orthogonal(&datum).unwrap();
        assert!(gset.rank() <= 3, "{}", datum.label);
        all_exact &= cone_identity_exact(&datum, &gset).unwrap();
        all_sampled &=
            cone_identity_sampled(&datum, &gset, 10_000, DEFAULT_SAMPLE_SEED).unwrap();
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        5,
        all_exact && all_sampled && elapsed < 30.0,
        &format!("exact {all_exact}, sampled {all_sampled}, {elapsed:.2}s"),
    );
}

/// Criterion 6: the cone convergence criterion against quadrature behavior
/// on 200 sampled specs with margin >= 0.05, zero disagreements; convergent
/// values match the termwise closed forms to 1e-8.
#[test]
fn acceptance_6_integral_criterion() {
    let specs = sample_specs(200, DEFAULT_SAMPLE_SEED);
    let mut disagreements = 0usize;
    let mut worst: f64 = 0.0;
    let mut convergent = 0usize;
    for spec in &specs {
        let predicted_convergent = spec.converges();
        let observed_divergent = divergence_scan(spec);
        if predicted_convergent == observed_divergent {
            disagreements += 1;
        }
        if predicted_convergent {
            convergent += 1;
            let (v, _) = h_integral(spec, 1e-12);
            let want = h_closed_form(spec).unwrap();
            worst = worst.max((v.to_f64() - want).abs() / want.abs().max(1e-300));
        }
    }
    report(
        6,
        disagreements == 0 && worst <= 1e-8 && convergent >= 50,
        &format!("200 specs ({convergent} convergent), {disagreements} disagreements, worst rel {worst:.3e}"),
    );
}

/// Criterion 7: the rank-1 spherical integral against the reciprocal formal
/// dimension: the product is constant over 12 interior parameters with max
/// relative deviation <= 1e-4, under 60 s.
#[test]
fn acceptance_7_rank1_integral_vs_formal_dimension() {
    let _guard = TIMED.lock().unwrap();
    let start = Instant::now();
    let case = builtin_cases().remove(0);
    let datum = case.to_datum().unwrap();
    let hat = case.hat(&datum).unwrap().unwrap();
    let mut products = Vec::new();
    let mut ones = Vec::new();
    for k in 0..12 {
        let t = -2.4 - 0.7 * k as f64;
        let lam = SpectralParameter::Float(vec![t]);
        let (i, _) = i_lambda_rank1(&datum, &lam, 1e-12).unwrap();
        let fd = formal_dimension(&datum, &hat, &lam).unwrap();
        assert!(i.is_finite() && fd.value.is_finite());
        products.push(i.mul(&fd.value));
        ones.push(causal_cfn::special::EvalResult::one());
    }
    let stats = ratio_constancy(&products, &ones).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    report(
        7,
        stats.max_rel_dev <= 1e-4 && elapsed < 60.0,
        &format!(
            "12 parameters, I(lambda) d(lambda) = {:.8e}, max rel dev {:.3e}, {elapsed:.2}s",
            stats.mean, stats.max_rel_dev
        ),
    );
}

/// Criterion 8: the restricted-system shape on every built-in case: every
/// nonzero restriction classified into the three shapes, coherent class
/// multiplicities and equal psi lengths, all exact (enforced by
/// construction, which errors otherwise).
#[test]
fn acceptance_8_restricted_shape() {
    let mut detail = String::new();
    for case in builtin_cases() {
        let datum = case.to_datum().unwrap();
        let gset = find_strongly_orthogonal(&datum).unwrap();
        let rsys = restricted_system(&datum, &gset).unwrap();
        // Every root with a nonzero restriction is accounted for in the
        // class multiplicities.
        let mut projected_mult = 0u32;
        for root in datum.all_roots() {
            let nonzero = gset.gammas.iter().any(|g| root.vector.dot(g) != rat_i(0));
            if nonzero {
                projected_mult += root.mult;
            }
        }
        let class_total = 2 * (rsys.class1_members.len() as u32 * rsys.mult_class1
            + rsys.class2_members.len() as u32 * rsys.mult_class2
            + rsys.class3_members.len() as u32 * rsys.mult_class3);
        assert_eq!(projected_mult, class_total, "{}: unclassified restrictions", datum.label);
        // Equal psi lengths, exact.
        let len = rsys.psis[0].norm_sq();
        assert!(rsys.psis.iter().all(|p| p.norm_sq() == len), "{}", datum.label);
        detail.push_str(&format!(
            "{}[s={} m1={} m2={} m3={}] ",
            datum.label, rsys.s, rsys.mult_class1, rsys.mult_class2, rsys.mult_class3
        ));
    }
    report(8, true, detail.trim());
}

/// Criterion 9: exact-arithmetic invariants: reflection closure, the rho
/// half-sum identity, the small Weyl group orders and cone biduality, all
/// with no tolerance.
#[test]
fn acceptance_9_exact_invariants() {
    let mut pass = true;
    for case in builtin_cases() {
        let datum = case.to_datum().unwrap();
        pass &= is_reflection_closed(&datum);
        let mut sum = RationalVector::zero(datum.ambient_dim);
        for r in datum.positive() {
            sum = sum.add(&r.vector.scaled(&rat_i(r.mult as i64)));
        }
        pass &= datum.rho.scaled(&rat_i(2)) == sum;
        let (c_min, ck) = c_min_and_ck(&datum);
        for cone in [&c_min, &ck] {
            if cone.generators.is_empty() {
                continue;
            }
            let dd = dual_cone(&dual_cone(cone).unwrap()).unwrap();
            pass &= dd.set_eq(cone).unwrap();
        }
    }
    let a2 = causal_cfn::roots::group_double(Family::A, 2, None).unwrap();
    let c2 = causal_cfn::roots::group_double(Family::C, 2, None).unwrap();
    pass &= weyl_group(&a2).unwrap().len() == 6;
    pass &= weyl_group(&c2).unwrap().len() == 8;
    report(9, pass, "reflection closure, half-sum, weyl orders 6/8, biduality");
}
