//! Independent numerical verification: adaptive quadrature of exponential
//! integrals over cones against the cone convergence criterion and termwise
//! closed forms, the polar Jacobian, and the rank-1 spherical-integral
//! oracle whose reciprocal tracks the formal dimension.

use crate::cayley::{find_strongly_orthogonal, restricted_system, RestrictedSystem};
use crate::cfn::SpectralParameter;
use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_2d};
use crate::special::EvalResult;
use crate::roots::CausalRootDatum;

/// Exponential integral specification over an open cone `W`:
/// `int_W e^{lam(x)} prod sinh(alpha_j(x))^{p_j} prod cosh(beta_j(x))^{q_j}`.
///
/// All `alpha_j`, `beta_j` must be nonzero and nonnegative on `W`.
#[derive(Clone, Debug)]
pub struct HSpec {
    pub dim: usize,
    pub lam: Vec<f64>,
    pub sinh_terms: Vec<(Vec<f64>, u32)>,
    pub cosh_terms: Vec<(Vec<f64>, u32)>,
    /// Generators of `W`: one ray in dimension 1, two independent rays in
    /// dimension 2.
    pub cone: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// log sinh(t) for t >= 0, stable for large t (`-inf` at zero).
fn ln_sinh(t: f64) -> f64 {
    if t < 1.0 {
        t.sinh().ln()
    } else {
        t - std::f64::consts::LN_2 + (-(-(2.0 * t)).exp()).ln_1p()
    }
}

/// log cosh(t), stable for large t.
fn ln_cosh(t: f64) -> f64 {
    let t = t.abs();
    if t < 1.0 {
        t.cosh().ln()
    } else {
        t - std::f64::consts::LN_2 + (-(2.0 * t)).exp().ln_1p()
    }
}

impl HSpec {
    pub fn new(
        dim: usize,
        lam: Vec<f64>,
        sinh_terms: Vec<(Vec<f64>, u32)>,
        cosh_terms: Vec<(Vec<f64>, u32)>,
        cone: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(Error::OracleUnsupported(format!("dimension {dim} (desk scale is <= 2)")));
        }
        if lam.len() != dim || cone.len() != dim || cone.iter().any(|g| g.len() != dim) {
            return Err(Error::DimMismatch { expected: dim, got: lam.len() });
        }
        if dim == 2 {
            let det = cone[0][0] * cone[1][1] - cone[0][1] * cone[1][0];
            if det.abs() < 1e-12 {
                return Err(Error::OracleUnsupported("cone generators are dependent".into()));
            }
        }
        for (v, _) in sinh_terms.iter().chain(&cosh_terms) {
            if norm(v) == 0.0 {
                return Err(Error::OracleUnsupported("zero exponent functional".into()));
            }
            for g in &cone {
                if dot(v, g) < 0.0 {
                    return Err(Error::OracleUnsupported(
                        "exponent functional negative on the cone".into(),
                    ));
                }
            }
        }
        Ok(HSpec { dim, lam, sinh_terms, cosh_terms, cone })
    }

    /// The shifted functional `lam + sum p_j alpha_j + sum q_j beta_j` whose
    /// position against `-int W*` decides convergence.
    pub fn shifted_functional(&self) -> Vec<f64> {
        let mut mu = self.lam.clone();
        for (v, p) in &self.sinh_terms {
            for (m, c) in mu.iter_mut().zip(v) {
                *m += *p as f64 * c;
            }
        }
        for (v, q) in &self.cosh_terms {
            for (m, c) in mu.iter_mut().zip(v) {
                *m += *q as f64 * c;
            }
        }
        mu
    }

    /// Signed criterion margin: positive means convergent with that much
    /// room, negative means the criterion fails by that much. Measured
    /// against unit cone generators.
    pub fn criterion_margin(&self) -> f64 {
        let mu = self.shifted_functional();
        self.cone
            .iter()
            .map(|g| -dot(&mu, g) / norm(g))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn converges(&self) -> bool {
        self.criterion_margin() > 0.0
    }

    /// The integrand, evaluated through its logarithm so that slowly
    /// decaying products survive far beyond the f64 underflow range of the
    /// bare exponential factor.
    fn integrand(&self, x: &[f64]) -> f64 {
        let mut log = dot(&self.lam, x);
        for (a, p) in &self.sinh_terms {
            log += *p as f64 * ln_sinh(dot(a, x));
        }
        for (b, q) in &self.cosh_terms {
            log += *q as f64 * ln_cosh(dot(b, x));
        }
        log.exp()
    }
}

/// Quadrature of the spec over its cone, gated by the convergence criterion:
/// divergent specs are reported without integrating. Returns the value and
/// the accumulated error estimate.
pub fn h_integral(spec: &HSpec, abs_tol: f64) -> (EvalResult, f64) {
    let margin = spec.criterion_margin();
    if margin <= 0.0 {
        return (EvalResult::divergent(), 0.0);
    }
    // Truncation radius from the exponential envelope: the integrand is
    // bounded by exp(mu(x)) <= exp(-margin |x|), so the tail beyond R is
    // below exp(-margin R) / margin times a small geometric constant.
    let radius = |delta: f64, scale: f64| -> f64 {
        ((26.0 + scale.max(1.0).ln() - delta.ln()) / delta).max(10.0)
    };
    match spec.dim {
        1 => {
            let g = &spec.cone[0];
            let gn = norm(g);
            let ghat: Vec<f64> = g.iter().map(|c| c / gn).collect();
            let r = radius(margin, 1.0);
            let f = |t: f64| spec.integrand(&[t * ghat[0]]);
            let (v, e) = integrate(&f, 0.0, r, abs_tol, 0.0);
            (EvalResult::finite(v), e)
        }
        2 => {
            let (g1, g2) = (&spec.cone[0], &spec.cone[1]);
            let det = (g1[0] * g2[1] - g1[1] * g2[0]).abs();
            let mu = spec.shifted_functional();
            let du = -dot(&mu, g1);
            let dv = -dot(&mu, g2);
            let ru = radius(du, det / dv.min(1.0));
            let rv = radius(dv, det / du.min(1.0));
            let f = |u: f64, v: f64| {
                let x = [u * g1[0] + v * g2[0], u * g1[1] + v * g2[1]];
                spec.integrand(&x) * det
            };
            let (v, e) = integrate_2d(&f, ru, rv, abs_tol);
            (EvalResult::finite(v), e)
        }
        _ => unreachable!("validated at construction"),
    }
}

/// Termwise closed form: expand the sinh/cosh powers into exponentials and
/// integrate each exponential over the cone exactly.
///
/// Valid exactly when the convergence criterion holds; `None` otherwise.
pub fn h_closed_form(spec: &HSpec) -> Option<f64> {
    if !spec.converges() {
        return None;
    }
    // terms: (coefficient, exponent functional)
    let mut terms: Vec<(f64, Vec<f64>)> = vec![(1.0, spec.lam.clone())];
    let expand = |terms: &mut Vec<(f64, Vec<f64>)>, v: &[f64], n: u32, odd_signs: bool| {
        let mut next = Vec::with_capacity(terms.len() * (n as usize + 1));
        for (c, e) in terms.iter() {
            for k in 0..=n {
                let mut binom = 1.0;
                for i in 0..k {
                    binom = binom * (n - i) as f64 / (i + 1) as f64;
                }
                let sign = if odd_signs && (n - k) % 2 == 1 { -1.0 } else { 1.0 };
                let coef = c * sign * binom / 2f64.powi(n as i32);
                let mut exp = e.clone();
                for (t, vc) in exp.iter_mut().zip(v) {
                    *t += (2.0 * k as f64 - n as f64) * vc;
                }
                next.push((coef, exp));
            }
        }
        *terms = next;
    };
    for (v, p) in &spec.sinh_terms {
        expand(&mut terms, v, *p, true);
    }
    for (v, q) in &spec.cosh_terms {
        expand(&mut terms, v, *q, false);
    }
    let mut total = 0.0;
    match spec.dim {
        1 => {
            let g = &spec.cone[0];
            let gn = norm(g);
            for (c, e) in &terms {
                let s = dot(e, g) / gn;
                debug_assert!(s < 0.0);
                total += c * (-1.0 / s);
            }
        }
        2 => {
            let (g1, g2) = (&spec.cone[0], &spec.cone[1]);
            let det = (g1[0] * g2[1] - g1[1] * g2[0]).abs();
            for (c, e) in &terms {
                let su = dot(e, g1);
                let sv = dot(e, g2);
                debug_assert!(su < 0.0 && sv < 0.0);
                total += c * det / (su * sv);
            }
        }
        _ => unreachable!(),
    }
    Some(total)
}

/// Growth scan for divergence: truncated estimates at doubling radii of the
/// nonnegative integrand; the spec is reported divergent when the values
/// blow past 1e12 (they grow exponentially in the radius when the criterion
/// fails), convergent when they stay bounded through the largest radius.
pub fn divergence_scan(spec: &HSpec) -> bool {
    let mut r = 20.0;
    for _ in 0..8 {
        let v = truncated_value(spec, r);
        if !v.is_finite() || v.abs() > 1e12 {
            return true;
        }
        r *= 2.0;
    }
    false
}

fn truncated_value(spec: &HSpec, r: f64) -> f64 {
    match spec.dim {
        1 => {
            let g = &spec.cone[0];
            let gn = norm(g);
            let ghat: Vec<f64> = g.iter().map(|c| c / gn).collect();
            let f = |t: f64| spec.integrand(&[t * ghat[0]]);
            crate::quad::midpoint(&f, 0.0, r, 2048)
        }
        2 => {
            let (g1, g2) = (&spec.cone[0], &spec.cone[1]);
            let det = (g1[0] * g2[1] - g1[1] * g2[0]).abs();
            let f = |u: f64, v: f64| {
                let x = [u * g1[0] + v * g2[0], u * g1[1] + v * g2[1]];
                spec.integrand(&x) * det
            };
            crate::quad::midpoint_2d(&f, r, r, 96)
        }
        _ => unreachable!(),
    }
}

/// Polar-coordinates Jacobian at the chamber point `X = sum x_j X_j`:
/// `prod cosh(phi(X))^{m+} sinh(phi(X))^{m-}` over the positive restricted
/// roots.
pub fn jacobian_j(rsys: &RestrictedSystem, x: &[f64]) -> Result<f64> {
    for k in 0..x.len() {
        let next_ok = k + 1 >= x.len() || x[k] >= x[k + 1] - 1e-12;
        if x[k] < -1e-12 || !next_ok {
            return Err(Error::InvalidDatum(format!(
                "point {x:?} outside the closed chamber"
            )));
        }
    }
    let mut j = 1.0;
    for (v, mp, mm) in rsys.sigma_plus_values(x)? {
        j *= v.cosh().powi(mp as i32) * v.sinh().powi(mm as i32);
    }
    Ok(j)
}

/// Upper bound check value `exp(sum m_phi phi(X))` for the Jacobian.
pub fn jacobian_envelope(rsys: &RestrictedSystem, x: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for (v, mp, mm) in rsys.sigma_plus_values(x)? {
        s += (mp + mm) as f64 * v;
    }
    Ok(s.exp())
}

/// Componentwise `log cosh(2 x_j) / 2`, the abelian part of the polar
/// decomposition in the dual-basis coordinates.
pub fn mu_log(rsys: &RestrictedSystem, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != rsys.s {
        return Err(Error::DimMismatch { expected: rsys.s, got: x.len() });
    }
    Ok(x.iter().map(|&t| 0.5 * (2.0 * t).cosh().ln()).collect())
}

/// The rank-1 spherical integral `int_0^inf cosh(2x)^{lam(H_1)} J(x) dx`.
///
/// Supported for rank-1 group-type data without compact roots, where the
/// spherical function degenerates and the integrand is explicit. Divergent
/// exactly when the parameter misses the strict cone.
pub fn i_lambda_rank1(
    datum: &CausalRootDatum,
    lam: &SpectralParameter,
    abs_tol: f64,
) -> Result<(EvalResult, f64)> {
    if !datum.group_type {
        return Err(Error::OracleUnsupported("datum is not group type".into()));
    }
    if datum.compact_positive().next().is_some() {
        return Err(Error::OracleUnsupported("compact roots present".into()));
    }
    let gset = find_strongly_orthogonal(datum)?;
    if gset.rank() != 1 {
        return Err(Error::OracleUnsupported(format!("rank {} > 1", gset.rank())));
    }
    let rsys = restricted_system(datum, &gset)?;
    let lh = lam.pair(&gset.h_basis[0]);
    // Envelope exponent: 2 lam(H_1) + 2 m(class2) + m(class3).
    let sigma = 2.0 * lh + 2.0 * rsys.mult_class2 as f64 + rsys.mult_class3 as f64;
    if sigma >= 0.0 {
        return Ok((EvalResult::divergent(), 0.0));
    }
    let delta = -sigma;
    let r = ((26.0 + (-lh) * std::f64::consts::LN_2 - delta.ln()) / delta).max(10.0);
    let values = move |x: f64| rsys.sigma_plus_values(&[x]).expect("rank matches");
    let f = move |x: f64| {
        let mut log = lh * ln_cosh(2.0 * x);
        for (v, mp, mm) in values(x) {
            log += mp as f64 * ln_cosh(v) + mm as f64 * ln_sinh(v);
        }
        log.exp()
    };
    let (v, e) = integrate(&f, 0.0, r, abs_tol, 0.0);
    Ok((EvalResult::finite(v), e))
}

/// Statistics of the pointwise ratios `a_i / b_i`.
#[derive(Clone, Copy, Debug)]
pub struct RatioStats {
    pub mean: f64,
    pub rel_std_dev: f64,
    pub max_rel_dev: f64,
}

/// Normalization-insensitive comparison: mean, relative standard deviation
/// and maximum relative deviation of the pointwise ratios. All inputs must
/// be finite and nonzero on the denominator side, with >= 3 entries.
pub fn ratio_constancy(a: &[EvalResult], b: &[EvalResult]) -> Result<RatioStats> {
    if a.len() != b.len() || a.len() < 3 {
        return Err(Error::BadRatioInput(format!("lengths {} and {}", a.len(), b.len())));
    }
    let mut ratios = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        if !x.is_finite() || !y.is_finite() || y.is_zero() {
            return Err(Error::BadRatioInput("non-finite or zero entry".into()));
        }
        let r = if x.is_zero() {
            0.0
        } else {
            x.sign() * y.sign() * (x.log_abs() - y.log_abs()).exp()
        };
        ratios.push(r);
    }
    let n = ratios.len() as f64;
    let mean = ratios.iter().sum::<f64>() / n;
    let var = ratios.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / n;
    let scale = mean.abs().max(1e-300);
    Ok(RatioStats {
        mean,
        rel_std_dev: var.sqrt() / scale,
        max_rel_dev: ratios.iter().map(|r| (r - mean).abs()).fold(0.0, f64::max) / scale,
    })
}
