use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{adaptive_simpson, DegreeConfiguration, MomentSummary};
use crate::error::{Error, Result};

const PSI_TOLERANCE: f64 = 1e-10;

/// Which limiting regime of the initial infective degree a finite
/// configuration is treated as.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    NuZero,
    NuFinite,
    NuInfinite,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::NuZero => "nu_zero",
            Regime::NuFinite => "nu_finite",
            Regime::NuInfinite => "nu_infinite",
        })
    }
}

/// Cut-offs on `nu_proxy = X_I0 / (n_S alpha²)` separating the regimes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeThresholds {
    pub nu_zero_below: f64,
    pub nu_infinite_above: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self { nu_zero_below: 0.01, nu_infinite_above: 100.0 }
    }
}

impl RegimeThresholds {
    pub fn classify(&self, nu: f64) -> Regime {
        if nu < self.nu_zero_below {
            Regime::NuZero
        } else if nu > self.nu_infinite_above {
            Regime::NuInfinite
        } else {
            Regime::NuFinite
        }
    }
}

/// Basic reproductive ratio `pi · Σ (k−1) k n_{S,k} / Σ k n_k`.
pub fn compute_r0(config: &DegreeConfiguration) -> Result<f64> {
    let total = config.total_degree();
    if total == 0 {
        return Err(Error::ZeroTotalDegree);
    }
    let excess: f64 = config.susceptible.iter().map(|(&k, &c)| k as f64 * (k as f64 - 1.0) * c as f64).sum();
    Ok(config.pi() * excess / total as f64)
}

/// Distance from criticality
/// `−(1 + rho/beta) Σ k n_k / n_S + Σ k (k−1) n_{S,k} / n_S`.
pub fn compute_alpha(config: &DegreeConfiguration) -> Result<f64> {
    let n_s = config.n_s();
    if n_s == 0 {
        return Err(Error::NoSusceptibles);
    }
    let n_s = n_s as f64;
    let excess: f64 = config.susceptible.iter().map(|(&k, &c)| k as f64 * (k as f64 - 1.0) * c as f64).sum();
    let total = config.total_degree() as f64;
    Ok(-(1.0 + config.rho / config.beta) * total / n_s + excess / n_s)
}

/// Criticality measures and limiting constants of a supercritical configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub r0: f64,
    pub alpha: f64,
    /// Time scale of the infective-degree trajectory: `alpha`, or
    /// `sqrt(X_I0 / n)` in the `NuInfinite` regime.
    pub alpha_bar: f64,
    /// Finite-n proxy `X_I0 / (n_S alpha²)`.
    pub nu: f64,
    pub pi: f64,
    /// Positive root of the limiting scaled infective-degree curve `f`.
    pub xi: f64,
    pub sigma2: f64,
    pub kappa: f64,
    pub regime: Regime,
    pub moments: MomentSummary,
    pub n: u64,
    pub n_s: u64,
    pub x_i0: u64,
}

impl CriticalityReport {
    /// The limiting scaled free-infective-degree curve `f(t)` of this regime;
    /// `NuZero` takes `nu = 0`.
    pub fn f(&self, t: f64) -> f64 {
        let l3 = self.moments.lambda3;
        match self.regime {
            Regime::NuInfinite => 1.0 - 0.5 * l3 * t * t,
            Regime::NuZero => t - 0.5 * l3 * t * t,
            Regime::NuFinite => self.nu + t - 0.5 * l3 * t * t,
        }
    }
}

pub fn compute_criticality(config: &DegreeConfiguration, thresholds: &RegimeThresholds) -> Result<CriticalityReport> {
    let moments = config.moments()?;
    let r0 = compute_r0(config)?;
    let alpha = compute_alpha(config)?;
    if !(alpha > 0.0) {
        return Err(Error::Subcritical { alpha });
    }
    let (l, l2, l3) = (moments.lambda, moments.lambda2, moments.lambda3);
    if l2 == 0.0 || l3 == 0.0 {
        return Err(Error::DegenerateMoments { lambda2: l2, lambda3: l3 });
    }
    let n_s = config.n_s();
    let n = config.n();
    let x_i0 = config.x_i0();
    let nu = x_i0 as f64 / (n_s as f64 * alpha * alpha);
    let regime = thresholds.classify(nu);
    let (alpha_bar, xi) = match regime {
        Regime::NuInfinite => ((x_i0 as f64 / n as f64).sqrt(), (2.0 / l3).sqrt()),
        Regime::NuZero => (alpha, 2.0 / l3),
        Regime::NuFinite => (alpha, (1.0 + (1.0 + 2.0 * nu * l3).sqrt()) / l3),
    };
    let sigma2 = 2.0 * l * l3 / (l2 * (l2 + l));
    let recovered_degree = config.x_r0() as f64 / n_s as f64;
    let kappa = (l2 + l + recovered_degree) / (l2 * l3);
    Ok(CriticalityReport {
        r0,
        alpha,
        alpha_bar,
        nu,
        pi: config.pi(),
        xi,
        sigma2,
        kappa,
        regime,
        moments,
        n,
        n_s,
        x_i0,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinalSizePrediction {
    /// Predicted number of initially susceptible vertices ever infected in a
    /// large outbreak.
    pub predicted_size: f64,
    /// Size-biased susceptible degree law `k p_k / lambda`.
    pub predicted_degree_profile: BTreeMap<u32, f64>,
}

pub fn predict_final_size(report: &CriticalityReport, config: &DegreeConfiguration) -> Result<FinalSizePrediction> {
    if !(report.alpha > 0.0) {
        return Err(Error::Subcritical { alpha: report.alpha });
    }
    let m = &report.moments;
    let n_s = report.n_s as f64;
    let predicted_size = match report.regime {
        Regime::NuZero => 2.0 * m.lambda / m.lambda3 * n_s * report.alpha,
        Regime::NuFinite => m.lambda * report.xi * n_s * report.alpha,
        Regime::NuInfinite => {
            std::f64::consts::SQRT_2 * m.lambda * (n_s * report.x_i0 as f64).sqrt() / m.lambda3.sqrt()
        }
    };
    let predicted_degree_profile = config
        .susceptible
        .iter()
        .map(|(&k, &c)| (k, k as f64 * (c as f64 / n_s) / m.lambda))
        .collect();
    Ok(FinalSizePrediction { predicted_size, predicted_degree_profile })
}

/// Probability that the outbreak stays small, `exp(−kappa alpha X_I0)`, or
/// with `corrected` the version that accounts for seeds carrying a large share
/// of the initial infective degree.
pub fn predict_small_outbreak_probability(
    report: &CriticalityReport,
    config: &DegreeConfiguration,
    corrected: bool,
) -> Result<f64> {
    if report.regime == Regime::NuInfinite {
        return Err(Error::RegimeMismatch(report.regime.to_string()));
    }
    let mut exponent = -report.kappa * report.alpha * report.x_i0 as f64;
    if corrected {
        for (&k, &c) in &config.infective {
            exponent += c as f64 * psi_n(k, report, config)?;
        }
    }
    Ok(exponent.exp().clamp(0.0, 1.0))
}

/// `log ∫₀¹ exp(k alpha kappa / pi · (x^{beta/rho} − rho/(beta+rho))) dx`,
/// zero when `rho = 0` or `k = 0`.
pub fn psi_n(k: u32, report: &CriticalityReport, config: &DegreeConfiguration) -> Result<f64> {
    let (beta, rho) = (config.beta, config.rho);
    if rho == 0.0 || k == 0 {
        return Ok(0.0);
    }
    let scale = k as f64 * report.alpha * report.kappa / report.pi;
    let shift = rho / (beta + rho);
    // beta/rho in log space: it explodes as rho → 0.
    let ratio = if rho < 1e-6 * beta { (beta.ln() - rho.ln()).exp() } else { beta / rho };
    // With x = u^m and m ratio ≥ 1 the integrand has no infinite slope at 0.
    let m = if ratio < 1.0 { (1.0 / ratio).ceil() } else { 1.0 };
    let power = m * ratio;
    // x^{beta/rho} peaks at x = 1, so factor out exp(scale (1 − shift)) and
    // integrate a function bounded by m.
    let peak = scale * (1.0 - shift);
    let integrand = |u: f64| {
        if u <= 0.0 {
            return if m == 1.0 { (-scale).exp() } else { 0.0 };
        }
        let lu = u.ln();
        m * ((m - 1.0) * lu).exp() * (scale * ((power * lu).exp() - 1.0)).exp()
    };
    let integral = adaptive_simpson(integrand, 0.0, 1.0, PSI_TOLERANCE)?;
    // Jensen: the full integral is at least exp(0) = 1.
    Ok((peak + integral.ln()).max(0.0))
}

/// Flat summary of every closed-form prediction for one configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictionReport {
    pub r0: f64,
    pub alpha: f64,
    pub alpha_bar: f64,
    pub nu_proxy: f64,
    pub regime: Regime,
    pub xi: f64,
    pub sigma2: f64,
    pub kappa: f64,
    pub predicted_size: f64,
    pub p_small: Option<f64>,
    pub p_small_corrected: Option<f64>,
}

impl PredictionReport {
    pub fn build(config: &DegreeConfiguration, thresholds: &RegimeThresholds) -> Result<Self> {
        let report = compute_criticality(config, thresholds)?;
        let size = predict_final_size(&report, config)?;
        let (p_small, p_small_corrected) = if report.regime == Regime::NuInfinite {
            (None, None)
        } else {
            (
                Some(predict_small_outbreak_probability(&report, config, false)?),
                Some(predict_small_outbreak_probability(&report, config, true)?),
            )
        };
        Ok(Self {
            r0: report.r0,
            alpha: report.alpha,
            alpha_bar: report.alpha_bar,
            nu_proxy: report.nu,
            regime: report.regime,
            xi: report.xi,
            sigma2: report.sigma2,
            kappa: report.kappa,
            predicted_size: size.predicted_size,
            p_small,
            p_small_corrected,
        })
    }
}
