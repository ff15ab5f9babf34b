use serde::{Deserialize, Serialize};

use super::{compute_alpha, DegreeConfiguration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticStatus {
    Pass,
    Warn,
    Fail,
}

/// One finite-n proxy for a regularity assumption on the degree sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    /// Assumption label, e.g. `D4`.
    pub assumption: String,
    pub quantity: String,
    pub value: f64,
    pub status: DiagnosticStatus,
    pub note: String,
}

fn diag(assumption: &str, quantity: &str, value: f64, status: DiagnosticStatus, note: impl Into<String>) -> Diagnostic {
    Diagnostic { assumption: assumption.into(), quantity: quantity.into(), value, status, note: note.into() }
}

/// Finite-n proxies for the regularity assumptions. Never errors; hard
/// violations are reported as `Fail`, proxies that merely look unlike the
/// asymptotic regime as `Warn`.
pub fn validate_assumptions(config: &DegreeConfiguration) -> Vec<Diagnostic> {
    use DiagnosticStatus::*;
    let mut out = Vec::new();
    let n = config.n() as f64;
    let n_s_count = config.n_s();
    let n_s = n_s_count as f64;
    let cube_root_n = n.cbrt();

    // D2: third moment of the susceptible degree.
    let third = if n_s_count > 0 {
        config.susceptible.iter().map(|(&k, &c)| (k as f64).powi(3) * c as f64).sum::<f64>() / n_s
    } else {
        f64::NAN
    };
    out.push(if n_s_count == 0 {
        diag("D2", "sum k^3 n_Sk / n_S", third, Fail, "no susceptible vertices")
    } else if third > cube_root_n {
        diag("D2", "sum k^3 n_Sk / n_S", third, Warn, "third moment comparable to n^(1/3)")
    } else {
        diag("D2", "sum k^3 n_Sk / n_S", third, Pass, "")
    });

    // D3: second moment of the degree of a random vertex.
    let second = config.degree_counts().iter().map(|(&k, &c)| (k as f64).powi(2) * c as f64).sum::<f64>() / n;
    out.push(if second > cube_root_n {
        diag("D3", "sum k^2 n_k / n", second, Warn, "second moment comparable to n^(1/3)")
    } else {
        diag("D3", "sum k^2 n_k / n", second, Pass, "")
    });

    // D4: alpha > 0, alpha small, n_S alpha^3 large.
    match compute_alpha(config) {
        Ok(alpha) if alpha > 0.0 => {
            out.push(if alpha >= 0.5 {
                diag("D4", "alpha", alpha, Warn, "alpha is not small; far from criticality")
            } else {
                diag("D4", "alpha", alpha, Pass, "")
            });
            let scale = n_s * alpha.powi(3);
            out.push(if scale < 1.0 {
                diag("D4", "n_S alpha^3", scale, Warn, "inside the critical window")
            } else {
                diag("D4", "n_S alpha^3", scale, Pass, "")
            });
        }
        Ok(alpha) => out.push(diag("D4", "alpha", alpha, Fail, "alpha <= 0: not supercritical")),
        Err(_) => out.push(diag("D4", "alpha", f64::NAN, Fail, "alpha undefined without susceptibles")),
    }

    // D5: initial infective degree o(n), no dominant seed when nu > 0.
    let x_i0 = config.x_i0() as f64;
    let frac = x_i0 / n;
    out.push(if frac > 0.1 {
        diag("D5", "X_I0 / n", frac, Warn, "initial infective degree is not small against n")
    } else {
        diag("D5", "X_I0 / n", frac, Pass, "")
    });
    if x_i0 > 0.0 {
        let share = config.d_i_max() as f64 / x_i0;
        let nu = compute_alpha(config)
            .ok()
            .filter(|a| *a > 0.0)
            .map(|a| x_i0 / (n_s * a * a))
            .unwrap_or(0.0);
        out.push(if nu >= 0.01 && share > 0.1 {
            diag("D5", "d_Imax / X_I0", share, Warn, "one seed carries a large share of X_I0 while nu > 0")
        } else {
            diag("D5", "d_Imax / X_I0", share, Pass, "")
        });
    }

    // D6: p0 + p1 + p2 < 1.
    if n_s_count > 0 {
        let low: u64 = config.susceptible.range(..=2).map(|(_, &c)| c).sum();
        let p = low as f64 / n_s;
        out.push(if p >= 1.0 {
            diag("D6", "p0 + p1 + p2", p, Fail, "no susceptible vertex has degree >= 3")
        } else {
            diag("D6", "p0 + p1 + p2", p, Pass, "")
        });
    } else {
        out.push(diag("D6", "p0 + p1 + p2", f64::NAN, Fail, "no susceptible vertices"));
    }

    // D7: n_S / n bounded away from 0.
    let ratio = n_s / n;
    out.push(if n_s_count == 0 {
        diag("D7", "n_S / n", ratio, Fail, "no susceptible vertices")
    } else if ratio < 0.1 {
        diag("D7", "n_S / n", ratio, Warn, "few susceptibles")
    } else {
        diag("D7", "n_S / n", ratio, Pass, "")
    });

    // Maximum susceptible degree o(n_S^(1/3)).
    if n_s_count > 0 {
        let r = config.d_s_max() as f64 / n_s.cbrt();
        out.push(if r >= 1.0 {
            diag("D2", "d_Smax / n_S^(1/3)", r, Warn, "maximum susceptible degree is not o(n_S^(1/3))")
        } else {
            diag("D2", "d_Smax / n_S^(1/3)", r, Pass, "")
        });
    }
    out
}
