//! Closed-form evaluators: the Beta-product factor `c_omega`, the
//! Gindikin-Karpelevic factor `c_zero`, their product `c`, Weyl dimension,
//! the group formal dimension `d^G` and the formal dimension
//! `d(lambda) = d^G(lambda) * c(lambda + rho)`.
//!
//! Public evaluators gate on the convergence domain of the defining integral
//! and report `divergent` outside it; `formal_dimension` instead continues
//! the closed forms meromorphically and resolves pole/zero collisions with a
//! short ray limit.

use num::{Signed, ToPrimitive, Zero};

use crate::cones;
use crate::error::{Error, Result};
use crate::rat::{rat, RationalVector};
use crate::roots::{coroot, CausalRootDatum, RootKind};
use crate::special::{beta, gamma_eval, EvalResult, Status};

/// A real spectral parameter: a functional on the ambient space, held either
/// in exact rational or in float coordinates.
#[derive(Clone, Debug)]
pub enum SpectralParameter {
    Exact(RationalVector),
    Float(Vec<f64>),
}

impl SpectralParameter {
    pub fn dim(&self) -> usize {
        match self {
            SpectralParameter::Exact(v) => v.dim(),
            SpectralParameter::Float(v) => v.len(),
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        match self {
            SpectralParameter::Exact(v) => v.to_f64_vec(),
            SpectralParameter::Float(v) => v.clone(),
        }
    }

    /// Pairing with an exact vector, in floats.
    pub fn pair(&self, v: &RationalVector) -> f64 {
        match self {
            SpectralParameter::Exact(l) => l.dot(v).to_f64().unwrap_or(f64::NAN),
            SpectralParameter::Float(l) => v.dot_f64(l),
        }
    }

    /// `self + v`, staying exact when possible.
    pub fn shifted(&self, v: &RationalVector) -> SpectralParameter {
        match self {
            SpectralParameter::Exact(l) => SpectralParameter::Exact(l.add(v)),
            SpectralParameter::Float(l) => {
                let fv = v.to_f64_vec();
                SpectralParameter::Float(l.iter().zip(fv).map(|(a, b)| a + b).collect())
            }
        }
    }

    /// `self + t * u` in float coordinates.
    pub fn shifted_f64(&self, u: &[f64], t: f64) -> SpectralParameter {
        let l = self.to_f64_vec();
        SpectralParameter::Float(l.iter().zip(u).map(|(a, b)| a + t * b).collect())
    }

    fn check_dim(&self, datum: &CausalRootDatum) -> Result<()> {
        if self.dim() != datum.ambient_dim {
            return Err(Error::DimMismatch { expected: datum.ambient_dim, got: self.dim() });
        }
        Ok(())
    }
}

/// Where a parameter sits relative to the strict discrete-series cone.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RdsPosition {
    Interior,
    Boundary,
    Violated,
}

/// Classify `lambda` against the strict inequalities `<lambda + rho, alpha> < 0`.
pub fn rds_position(datum: &CausalRootDatum, lam: &SpectralParameter) -> RdsPosition {
    let mut boundary = false;
    match lam {
        SpectralParameter::Exact(l) => {
            let shifted = l.add(&datum.rho);
            for r in datum.noncompact_positive() {
                let p = shifted.dot(&r.vector);
                if p.is_positive() {
                    return RdsPosition::Violated;
                }
                if p.is_zero() {
                    boundary = true;
                }
            }
        }
        SpectralParameter::Float(l) => {
            let rho = datum.rho.to_f64_vec();
            let shifted: Vec<f64> = l.iter().zip(rho).map(|(a, b)| a + b).collect();
            for r in datum.noncompact_positive() {
                let p = r.vector.dot_f64(&shifted);
                if p > 0.0 {
                    return RdsPosition::Violated;
                }
                if p == 0.0 {
                    boundary = true;
                }
            }
        }
    }
    if boundary {
        RdsPosition::Boundary
    } else {
        RdsPosition::Interior
    }
}

/// Beta product over the noncompact positive roots, no domain gate.
fn c_omega_product(datum: &CausalRootDatum, lam: &SpectralParameter) -> EvalResult {
    let mut prod = EvalResult::one();
    for r in datum.noncompact_positive() {
        let cr = coroot(&r.vector).expect("nonzero root");
        let p = lam.pair(&cr);
        let m = r.mult as f64;
        prod = prod.mul(&beta(-0.5 * p - 0.5 * m + 1.0, 0.5 * m));
    }
    prod
}

/// The bounded-domain factor: divergent outside its tube domain, otherwise
/// the product of Euler Beta values over the noncompact positive roots.
pub fn c_omega(datum: &CausalRootDatum, lam: &SpectralParameter) -> Result<EvalResult> {
    lam.check_dim(datum)?;
    if !cones::e_omega_check(datum, &lam.to_f64_vec()) {
        return Ok(EvalResult::divergent());
    }
    Ok(c_omega_product(datum, lam))
}

/// Gindikin-Karpelevic product over the indivisible compact positive roots,
/// no domain gate. The normalization constant is fixed to 1.
fn c_zero_product(datum: &CausalRootDatum, lam: &SpectralParameter) -> EvalResult {
    let mut prod = EvalResult::one();
    let ln2 = std::f64::consts::LN_2;
    for r in datum.compact_positive() {
        if !datum.is_indivisible(&r.vector) {
            continue;
        }
        let cr = coroot(&r.vector).expect("nonzero root");
        let t = 0.5 * lam.pair(&cr);
        let m = r.mult as f64;
        let m2 = r.mult_double as f64;
        let factor = EvalResult::from_sign_log(1.0, -2.0 * t * ln2)
            .mul(&gamma_eval(2.0 * t))
            .div(&gamma_eval(t + 0.25 * m + 0.5))
            .div(&gamma_eval(t + 0.25 * m + 0.5 * m2));
        prod = prod.mul(&factor);
    }
    prod
}

/// The Riemannian factor: 1 when there are no compact roots, divergent
/// outside the interior of the compact dual cone, otherwise the
/// Gindikin-Karpelevic product.
pub fn c_zero(datum: &CausalRootDatum, lam: &SpectralParameter) -> Result<EvalResult> {
    lam.check_dim(datum)?;
    if datum.compact_positive().next().is_none() {
        return Ok(EvalResult::one());
    }
    if !cones::e_zero_check(datum, &lam.to_f64_vec()) {
        return Ok(EvalResult::divergent());
    }
    Ok(c_zero_product(datum, lam))
}

/// Full c-function `c = c_zero * c_omega`; divergent iff either factor is.
pub fn c_total(datum: &CausalRootDatum, lam: &SpectralParameter) -> Result<EvalResult> {
    Ok(c_zero(datum, lam)?.mul(&c_omega(datum, lam)?))
}

/// Meromorphic continuation of the product, ignoring the integral domains.
pub fn c_total_continued(datum: &CausalRootDatum, lam: &SpectralParameter) -> EvalResult {
    c_zero_product(datum, lam).mul(&c_omega_product(datum, lam))
}

/// A positive system for the full Cartan subalgebra, with repetition counts.
///
/// For group-type data this is the causal root set itself with each root
/// counted by its (doubled) multiplicity, and the half-sum equals the
/// datum's rho.
#[derive(Clone, Debug)]
pub struct HatSystem {
    pub positive: Vec<(RationalVector, RootKind, u32)>,
    pub rho_hat: RationalVector,
}

impl HatSystem {
    pub fn new(dim: usize, positive: Vec<(RationalVector, RootKind, u32)>) -> Self {
        let mut rho_hat = RationalVector::zero(dim);
        for (v, _, count) in &positive {
            rho_hat = rho_hat.add(&v.scaled(&rat(*count as i64, 2)));
        }
        HatSystem { positive, rho_hat }
    }

    /// The hat system attached to a group-type datum: each restricted root
    /// counted with its multiplicity.
    pub fn group_hat(datum: &CausalRootDatum) -> Result<HatSystem> {
        if !datum.group_type {
            return Err(Error::InvalidDatum(
                "hat system is only derivable for group-type data".into(),
            ));
        }
        let positive =
            datum.positive().iter().map(|r| (r.vector.clone(), r.kind, r.mult)).collect();
        Ok(HatSystem::new(datum.ambient_dim, positive))
    }
}

/// Weyl dimension for the compact part of the hat system:
/// product of `<lambda + rho_k, alpha> / <rho_k, alpha>` over the compact
/// positive roots. Requires `lambda` dominant for that system.
pub fn weyl_dim(hat: &HatSystem, lam: &SpectralParameter) -> Result<EvalResult> {
    let dim = hat.rho_hat.dim();
    let compact: Vec<&(RationalVector, RootKind, u32)> =
        hat.positive.iter().filter(|(_, k, _)| *k == RootKind::Compact).collect();
    let mut rho_k = RationalVector::zero(dim);
    for (v, _, count) in &compact {
        rho_k = rho_k.add(&v.scaled(&rat(*count as i64, 2)));
    }
    for (v, _, _) in &compact {
        let cr = coroot(v).expect("nonzero root");
        if lam.pair(&cr) < 0.0 {
            return Err(Error::NotDominant);
        }
    }
    let mut num = EvalResult::one();
    let mut den = EvalResult::one();
    for (v, _, count) in &compact {
        let a = lam.pair(v) + rho_k.dot(v).to_f64().unwrap_or(f64::NAN);
        let b = rho_k.dot(v).to_f64().unwrap_or(f64::NAN);
        for _ in 0..*count {
            num = num.mul(&EvalResult::finite(a));
            den = den.mul(&EvalResult::finite(b));
        }
    }
    Ok(num.div(&den))
}

/// Signed Harish-Chandra product `prod <lambda + rho_hat, alpha> / prod
/// <rho_hat, alpha>` over the whole hat system, without the domain gate.
pub fn d_group_signed(hat: &HatSystem, lam: &SpectralParameter) -> EvalResult {
    let mut num = EvalResult::one();
    let mut den = EvalResult::one();
    let rho_f = hat.rho_hat.to_f64_vec();
    for (v, _, count) in &hat.positive {
        let a = lam.pair(v) + v.dot_f64(&rho_f);
        let b = v.dot_f64(&rho_f);
        for _ in 0..*count {
            num = num.mul(&EvalResult::finite(a));
            den = den.mul(&EvalResult::finite(b));
        }
    }
    num.div(&den)
}

/// Formal dimension of the holomorphic discrete series on the group itself:
/// the absolute value of the Harish-Chandra product, divergent when the
/// condition `<lambda + rho_hat, alpha> < 0` fails strictly on a noncompact
/// root (on the wall itself the product vanishes).
pub fn d_group(hat: &HatSystem, lam: &SpectralParameter) -> EvalResult {
    for (v, kind, _) in &hat.positive {
        if *kind == RootKind::Noncompact {
            let p = lam.pair(v) + lam_rho_pair(hat, v);
            if p > 0.0 {
                return EvalResult::divergent();
            }
        }
    }
    d_group_signed(hat, lam).abs()
}

fn lam_rho_pair(hat: &HatSystem, v: &RationalVector) -> f64 {
    v.dot_f64(&hat.rho_hat.to_f64_vec())
}

/// Ray-limit evidence attached to a formal dimension evaluated at a
/// pole/zero collision point.
#[derive(Clone, Debug)]
pub struct EpsTrace {
    /// Unit direction of the offset ray (the negative noncompact half-sum).
    pub direction: Vec<f64>,
    /// `(epsilon, signed value)` samples along the ray.
    pub samples: Vec<(f64, f64)>,
    pub extrapolated: f64,
}

/// Formal dimension together with the signed product and, when a ray limit
/// was needed, its trace.
#[derive(Clone, Debug)]
pub struct FormalDim {
    pub value: EvalResult,
    pub signed: EvalResult,
    pub eps_trace: Option<EpsTrace>,
}

impl FormalDim {
    fn divergent() -> Self {
        FormalDim {
            value: EvalResult::divergent(),
            signed: EvalResult::divergent(),
            eps_trace: None,
        }
    }
}

const EPS_LADDER: [f64; 3] = [1e-4, 1e-5, 1e-6];

fn signed_product_at(
    datum: &CausalRootDatum,
    hat: &HatSystem,
    lam: &SpectralParameter,
) -> EvalResult {
    let shifted = lam.shifted(&datum.rho);
    d_group_signed(hat, lam).mul(&c_total_continued(datum, &shifted))
}

/// Formal dimension `d(lambda) = d^G(lambda) * c(lambda + rho)`.
///
/// Outside the strict parameter cone the result is divergent. Inside, the
/// meromorphic continuations of the two factors are multiplied in log scale;
/// if the point sits on a pole/zero collision (or exactly on the cone wall)
/// the value is resolved by evaluating along `lambda + eps * u` with `u`
/// the direction of the negative noncompact half-sum and extrapolating
/// `eps -> 0`, with the sample trace reported.
pub fn formal_dimension(
    datum: &CausalRootDatum,
    hat: &HatSystem,
    lam: &SpectralParameter,
) -> Result<FormalDim> {
    lam.check_dim(datum)?;
    match rds_position(datum, lam) {
        RdsPosition::Violated => Ok(FormalDim::divergent()),
        RdsPosition::Interior => {
            let p = signed_product_at(datum, hat, lam);
            match p.status {
                Status::Finite => {
                    Ok(FormalDim { value: p.abs(), signed: p, eps_trace: None })
                }
                _ => Ok(eps_ray_limit(datum, hat, lam)),
            }
        }
        RdsPosition::Boundary => Ok(eps_ray_limit(datum, hat, lam)),
    }
}

fn eps_ray_limit(datum: &CausalRootDatum, hat: &HatSystem, lam: &SpectralParameter) -> FormalDim {
    let rho_n = datum.rho_n.to_f64_vec();
    let norm = rho_n.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u: Vec<f64> = rho_n.iter().map(|x| -x / norm).collect();
    let mut samples = Vec::new();
    for &eps in &EPS_LADDER {
        let shifted = lam.shifted_f64(&u, eps);
        let p = signed_product_at(datum, hat, &shifted);
        if !p.is_finite() {
            return FormalDim {
                value: EvalResult::pole(),
                signed: EvalResult::pole(),
                eps_trace: Some(EpsTrace { direction: u, samples, extrapolated: f64::NAN }),
            };
        }
        samples.push((eps, p.sign() * p.log_abs().exp()));
    }
    let (v1, v2, v3) = (samples[0].1, samples[1].1, samples[2].1);
    let trace = |extrapolated: f64| EpsTrace {
        direction: u.clone(),
        samples: samples.clone(),
        extrapolated,
    };
    // Growth by roughly 1/eps: a pole of the continued product.
    if v2.abs() > 5.0 * v1.abs() && v3.abs() > 5.0 * v2.abs() {
        return FormalDim {
            value: EvalResult::pole(),
            signed: EvalResult::pole(),
            eps_trace: Some(trace(f64::NAN)),
        };
    }
    // Decay toward zero.
    if v3.abs() < 0.2 * v2.abs() && v2.abs() < 0.2 * v1.abs() {
        return FormalDim {
            value: EvalResult::zero(),
            signed: EvalResult::zero(),
            eps_trace: Some(trace(0.0)),
        };
    }
    // Aitken extrapolation of the three samples.
    let denom = (v3 - v2) - (v2 - v1);
    let extrapolated = if denom == 0.0 { v3 } else { v3 - (v3 - v2) * (v3 - v2) / denom };
    let signed = EvalResult::finite(extrapolated);
    FormalDim { value: signed.abs(), signed, eps_trace: Some(trace(extrapolated)) }
}

/// Group-case closed form `1 / prod <lambda, alpha>` over the positive
/// system, up to the measure constant (fixed to 1). A zero pairing is a pole.
pub fn group_case_c(datum: &CausalRootDatum, lam: &SpectralParameter) -> Result<EvalResult> {
    if !datum.group_type {
        return Err(Error::InvalidDatum("group-case closed form needs a group-type datum".into()));
    }
    lam.check_dim(datum)?;
    let mut prod = EvalResult::one();
    for r in datum.positive() {
        prod = prod.mul(&EvalResult::finite(lam.pair(&r.vector)));
    }
    Ok(prod.recip())
}

/// The scalar relating the spherical character to the spherical function:
/// the reciprocal of `c(lambda + rho)`. Errors when the defining integral
/// for `c` diverges there.
pub fn spherical_factor(datum: &CausalRootDatum, lam: &SpectralParameter) -> Result<EvalResult> {
    let shifted = lam.shifted(&datum.rho);
    let c = c_total(datum, &shifted)?;
    if c.status == Status::Divergent {
        return Err(Error::OutsideDomain);
    }
    Ok(c.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;
    use crate::roots::{build_classical, group_double, make_causal, Family};

    fn assert_rel(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol * b.abs().max(1e-300), "{a} vs {b}");
    }

    fn a1_with_mult(m: u32) -> CausalRootDatum {
        let (all, pos) = build_classical(Family::A, 1).unwrap();
        let z0 = RationalVector::from_i64(&[1, -1]);
        make_causal(&all, &pos, &z0, move |_| Some((m, 0)), "a1").unwrap()
    }

    /// lambda with a prescribed coroot pairing on the single A_1 root.
    fn a1_lambda(pairing: f64) -> SpectralParameter {
        // coroot = e1 - e2; lambda = (p/2, -p/2)
        SpectralParameter::Float(vec![0.5 * pairing, -0.5 * pairing])
    }

    #[test]
    fn c_omega_single_root_values() {
        // m = 1, lambda(coroot) = -1: B(1, 1/2) = 2
        let d = a1_with_mult(1);
        let v = c_omega(&d, &a1_lambda(-1.0)).unwrap();
        assert_rel(v.to_f64(), 2.0, 1e-13);
        // m = 2, lambda(coroot) = -4: B(2, 1) = 1/2
        let d = a1_with_mult(2);
        let v = c_omega(&d, &a1_lambda(-4.0)).unwrap();
        assert_rel(v.to_f64(), 0.5, 1e-13);
        // m = 1, lambda(coroot) = 1.5 >= 2 - m: divergent
        let d = a1_with_mult(1);
        let v = c_omega(&d, &a1_lambda(1.5)).unwrap();
        assert_eq!(v.status, Status::Divergent);
    }

    #[test]
    fn c_zero_trivial_and_divergent() {
        let d = group_double(Family::C, 1, None).unwrap();
        let lam = SpectralParameter::Float(vec![-3.0]);
        let v = c_zero(&d, &lam).unwrap();
        assert_eq!(v.to_f64(), 1.0);

        let d2 = group_double(Family::C, 2, None).unwrap();
        // compact coroot e1 - e2; pairing <= 0 diverges
        let lam = SpectralParameter::Float(vec![-3.0, -3.0]);
        assert_eq!(c_zero(&d2, &lam).unwrap().status, Status::Divergent);
        let lam = SpectralParameter::Float(vec![-3.0, -5.0]);
        assert!(c_zero(&d2, &lam).unwrap().is_finite());
    }

    #[test]
    fn c_zero_wall_blowup_is_simple_pole() {
        // Along a ray approaching the wall <lambda, coroot> -> 0+, the
        // product times the vanishing pairing stays bounded.
        let d = group_double(Family::C, 2, None).unwrap();
        let mut prev = None;
        for &eps in &[1e-2, 1e-3, 1e-4, 1e-5] {
            let lam = SpectralParameter::Float(vec![-3.0, -3.0 - eps]);
            let c0 = c_zero(&d, &lam).unwrap();
            // t = <lambda, (e1-e2)>/2 = eps/2
            let scaled = c0.to_f64() * (0.5 * eps);
            if let Some(p) = prev {
                assert_rel(scaled, p, 2e-2);
            }
            prev = Some(scaled);
        }
    }

    #[test]
    fn c_total_is_product() {
        let d = group_double(Family::C, 2, None).unwrap();
        let lam = SpectralParameter::Float(vec![-4.0, -6.0]);
        let c0 = c_zero(&d, &lam).unwrap();
        let co = c_omega(&d, &lam).unwrap();
        let c = c_total(&d, &lam).unwrap();
        assert_rel(c.log_abs(), c0.log_abs() + co.log_abs(), 1e-14);
        // lambda in the bounded-domain tube but not the Riemannian one
        let lam = SpectralParameter::Float(vec![-6.0, -4.0]);
        assert!(c_omega(&d, &lam).unwrap().is_finite());
        assert_eq!(c_total(&d, &lam).unwrap().status, Status::Divergent);
    }

    #[test]
    fn group_case_closed_form_matches() {
        // Cor-style cross-check: c(lambda) * prod <lambda, alpha> constant.
        let d = group_double(Family::C, 2, None).unwrap();
        let mut consts = Vec::new();
        for k in 1..=8 {
            let lam = SpectralParameter::Float(vec![-1.0 - 0.7 * k as f64, -2.5 - 0.9 * k as f64]);
            let c = c_total(&d, &lam).unwrap();
            let g = group_case_c(&d, &lam).unwrap();
            assert!(c.is_finite(), "k = {k}");
            consts.push(c.div(&g).to_f64());
        }
        for w in consts.windows(2) {
            assert_rel(w[0], w[1], 1e-10);
        }
    }

    #[test]
    fn group_case_c_pole_on_zero_pairing() {
        let d = group_double(Family::C, 1, None).unwrap();
        let lam = SpectralParameter::Float(vec![0.0]);
        assert_eq!(group_case_c(&d, &lam).unwrap().status, Status::Pole);
        let lam = SpectralParameter::Float(vec![-1.0]);
        // <lambda, 2e1> = -2 -> c = -1/2
        assert_rel(group_case_c(&d, &lam).unwrap().to_f64(), -0.5, 1e-14);
    }

    #[test]
    fn weyl_dim_values() {
        // Single compact root with <lambda, coroot> = n gives n + 1.
        let a2 = build_classical(Family::A, 1).unwrap();
        let alpha = a2.1[0].clone();
        let hat = HatSystem::new(2, vec![(alpha.clone(), RootKind::Compact, 1)]);
        for n in 0..5 {
            let lam = SpectralParameter::Exact(alpha.scaled(&rat(n, 2)));
            assert_rel(weyl_dim(&hat, &lam).unwrap().to_f64(), (n + 1) as f64, 1e-13);
        }
        // A_2 compact system at the first fundamental weight: dimension 3.
        let (_, pos) = build_classical(Family::A, 2).unwrap();
        let hat = HatSystem::new(
            3,
            pos.iter().map(|v| (v.clone(), RootKind::Compact, 1)).collect(),
        );
        let omega1 = RationalVector::new(vec![rat(2, 3), rat(-1, 3), rat(-1, 3)]);
        let lam = SpectralParameter::Exact(omega1);
        assert_rel(weyl_dim(&hat, &lam).unwrap().to_f64(), 3.0, 1e-13);
        // Zero weight: dimension 1; non-dominant weight: error.
        let lam0 = SpectralParameter::Exact(RationalVector::zero(3));
        assert_rel(weyl_dim(&hat, &lam0).unwrap().to_f64(), 1.0, 1e-13);
        let bad = SpectralParameter::Exact(pos[0].neg());
        assert!(matches!(weyl_dim(&hat, &bad), Err(Error::NotDominant)));
    }

    #[test]
    fn d_group_values() {
        // Single noncompact root, <rho, a> = 1, <lambda + rho, a> = -3 -> 3.
        let alpha = RationalVector::from_i64(&[1, -1]);
        let hat = HatSystem::new(2, vec![(alpha.clone(), RootKind::Noncompact, 1)]);
        // rho_hat = alpha/2, <rho, alpha> = 1; want <lambda + rho, alpha> = -3
        let lam = SpectralParameter::Exact(alpha.scaled(&rat(-2, 1)));
        assert_rel(d_group(&hat, &lam).to_f64(), 3.0, 1e-13);
        // On the wall the product vanishes.
        let lam = SpectralParameter::Exact(alpha.scaled(&rat(-1, 2)));
        assert!(d_group(&hat, &lam).is_zero());
        // Violating the condition: divergent.
        let lam = SpectralParameter::Exact(RationalVector::zero(2));
        assert_eq!(d_group(&hat, &lam).status, Status::Divergent);
    }

    #[test]
    fn formal_dimension_rank1_closed_form() {
        // For the rank-1 group case, d(lambda) = |t + 2| / 2 where t is the
        // coroot pairing; derived by composing the two closed forms.
        let d = group_double(Family::C, 1, None).unwrap();
        let hat = HatSystem::group_hat(&d).unwrap();
        for t in [-3.0, -4.5, -10.0] {
            let lam = SpectralParameter::Float(vec![t]);
            let fd = formal_dimension(&d, &hat, &lam).unwrap();
            assert!(fd.eps_trace.is_none());
            assert_rel(fd.value.to_f64(), (t + 2.0).abs() / 2.0, 1e-12);
            // factorization identity
            let dg = d_group(&hat, &lam);
            let c = c_total(&d, &lam.shifted(&d.rho)).unwrap();
            assert_rel(fd.value.div(&dg).log_abs(), c.log_abs(), 1e-12);
        }
    }

    #[test]
    fn formal_dimension_outside_is_divergent() {
        let d = group_double(Family::C, 1, None).unwrap();
        let hat = HatSystem::group_hat(&d).unwrap();
        let lam = SpectralParameter::Float(vec![0.0]);
        let fd = formal_dimension(&d, &hat, &lam).unwrap();
        assert_eq!(fd.value.status, Status::Divergent);
    }

    #[test]
    fn formal_dimension_boundary_ray_limit() {
        // lambda = -rho sits on the wall; the ray limit resolves it to 0.
        let d = group_double(Family::C, 1, None).unwrap();
        let hat = HatSystem::group_hat(&d).unwrap();
        let lam = SpectralParameter::Exact(d.rho.neg());
        let fd = formal_dimension(&d, &hat, &lam).unwrap();
        let trace = fd.eps_trace.expect("ray limit evidence");
        assert!(fd.value.is_zero(), "value {:?}", fd.value);
        assert_eq!(trace.samples.len(), 3);
    }

    #[test]
    fn spherical_factor_reciprocal() {
        let d = group_double(Family::C, 1, None).unwrap();
        let lam = SpectralParameter::Float(vec![-4.0]);
        let c = c_total(&d, &lam.shifted(&d.rho)).unwrap();
        let s = spherical_factor(&d, &lam).unwrap();
        assert_rel(s.to_f64() * c.to_f64(), 1.0, 1e-13);
        // consistency with d / d^G
        let hat = HatSystem::group_hat(&d).unwrap();
        let fd = formal_dimension(&d, &hat, &lam).unwrap();
        let dg = d_group(&hat, &lam);
        assert_rel(fd.value.div(&dg).mul(&s).to_f64().abs(), 1.0, 1e-12);
        // outside the tube: error
        let lam = SpectralParameter::Float(vec![3.0]);
        assert!(matches!(spherical_factor(&d, &lam), Err(Error::OutsideDomain)));
    }

    #[test]
    fn rds_position_classification() {
        let d = group_double(Family::C, 1, None).unwrap();
        assert_eq!(
            rds_position(&d, &SpectralParameter::Float(vec![-3.0])),
            RdsPosition::Interior
        );
        assert_eq!(
            rds_position(&d, &SpectralParameter::Exact(d.rho.neg())),
            RdsPosition::Boundary
        );
        assert_eq!(
            rds_position(&d, &SpectralParameter::Float(vec![0.0])),
            RdsPosition::Violated
        );
    }

    #[test]
    fn exact_rational_lambda_paths() {
        let d = group_double(Family::C, 2, None).unwrap();
        let lam = SpectralParameter::Exact(RationalVector::from_i64(&[-5, -7]));
        assert!(c_total(&d, &lam).unwrap().is_finite());
        assert_eq!(rds_position(&d, &lam), RdsPosition::Interior);
        let _ = rat_i(0);
    }
}
