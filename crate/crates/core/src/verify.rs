//! Self-check suites: each named check compares a closed form against an
//! independent computation and reports the worst residual seen.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    coherent_info_amp, coherent_info_thermal, gap_qu1_ql, optimize_penalty, p_lower_displaced,
    penalty, q_u1, q_u2, q_u3, q_u4, ud_closed_form, unconstrained_limit, BoundKind, PenaltyParams,
};
use crate::channels::{
    degrading_dilation, degrading_simulation_check, epsilon_degradable, kappa, noisy_tms_state,
    stinespring_output, PhaseInsensitiveChannel,
};
use crate::error::{Error, Result};
use crate::gaussian_core::{g_nats, tms_state, two_mode_fidelity, GaussianState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Gaussian states, fidelity and channel constructions.
    Core,
    Bounds,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "core" => Ok(Self::Core),
            "bounds" => Ok(Self::Bounds),
            "all" => Ok(Self::All),
            _ => Err(Error::Domain(format!(
                "unknown suite '{s}' (core, bounds, all)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random points per sampled check.
    pub samples: usize,
    /// Relative error injected into κ where the checks use it. Zero in
    /// normal runs; nonzero only to confirm the suite notices.
    pub kappa_perturbation: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            samples: 200,
            kappa_perturbation: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub worst: f64,
    pub tol: f64,
    pub passed: bool,
    /// Set when the check could not be evaluated at all.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status}  {} max residual < {:e}  (worst {:.3e})",
            self.name, self.tol, self.worst
        )?;
        if let Some(e) = &self.error {
            write!(f, "  error: {e}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn check(name: &'static str, tol: f64, worst: Result<f64>) -> CheckResult {
    match worst {
        Ok(w) => CheckResult {
            name,
            worst: w,
            tol,
            passed: w < tol,
            error: None,
        },
        Err(e) => CheckResult {
            name,
            worst: f64::NAN,
            tol,
            passed: false,
            error: Some(e.to_string()),
        },
    }
}

struct Ctx {
    rng: ChaCha8Rng,
    opts: VerifyOptions,
}

impl Ctx {
    fn unif(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..=hi)
    }
}

fn max_over<F>(n: usize, mut f: F) -> Result<f64>
where
    F: FnMut() -> Result<f64>,
{
    let mut worst = 0f64;
    for _ in 0..n {
        let v = f()?;
        // NaN must not be swallowed by max.
        if v.is_nan() {
            return Ok(f64::INFINITY);
        }
        worst = worst.max(v);
    }
    Ok(worst)
}

fn entropy_difference(ch: &PhaseInsensitiveChannel, ns: f64) -> Result<f64> {
    let out = stinespring_output(ch, &tms_state(ns)?)?;
    Ok(out.reduce(&[1])?.entropy()? - out.reduce(&[0, 1])?.entropy()?)
}

fn conditional_entropy(ch: &PhaseInsensitiveChannel, input: &GaussianState) -> Result<f64> {
    let d = degrading_dilation(ch, input)?;
    let joint = d
        .state
        .reduce(&[d.g(), d.e1_prime(), d.e2_prime()])?
        .entropy()?;
    Ok(joint - d.state.reduce(&[d.e1_prime(), d.e2_prime()])?.entropy()?)
}

fn core_checks(cx: &mut Ctx) -> Vec<CheckResult> {
    let n = cx.opts.samples;
    let mut out = Vec::new();

    out.push(check(
        "g_series_continuity",
        1e-15,
        max_over(20, || {
            let x = 10f64.powf(cx.unif(-12.0, -6.0));
            Ok((g_nats(x)? - (x.ln_1p() + x * (1.0 / x).ln_1p())).abs())
        }),
    ));

    out.push(check(
        "tms_purity",
        1e-10,
        max_over(n, || {
            let spec = tms_state(cx.unif(0.0, 50.0))?.symplectic_eigenvalues()?;
            Ok(spec
                .nus
                .iter()
                .map(|nu| (nu - 1.0).abs())
                .fold(0.0, f64::max))
        }),
    ));

    let kp = cx.opts.kappa_perturbation;
    out.push(check(
        "fidelity_identity",
        1e-10,
        max_over(n, || {
            let (eta, nb) = (cx.unif(0.5, 1.0), cx.unif(0.0, 3.0));
            let f = two_mode_fidelity(&tms_state(nb)?, &noisy_tms_state(eta, nb)?)?;
            Ok((f - eta * eta / (kappa(eta, nb) * (1.0 + kp))).abs())
        }),
    ));

    out.push(check(
        "eps_vs_fidelity",
        1e-10,
        max_over(n, || {
            let (eta, nb) = (cx.unif(0.5, 1.0), cx.unif(0.0, 3.0));
            let f = two_mode_fidelity(&tms_state(nb)?, &noisy_tms_state(eta, nb)?)?;
            let eps = epsilon_degradable(&PhaseInsensitiveChannel::thermal(eta, nb)?)?.epsilon;
            Ok((eps - (1.0 - f).max(0.0).sqrt()).abs())
        }),
    ));

    out.push(check(
        "deg_vs_sim_cov",
        1e-10,
        max_over(n, || {
            let (a, b) = (cx.unif(0.2, 10.0), cx.unif(0.2, 10.0));
            let c = cx.unif(-0.99, 0.99) * (a * b).sqrt();
            let q = DMatrix::from_row_slice(2, 2, &[a, c, c, b]);
            let (x, y) = degrading_simulation_check(cx.unif(0.5, 1.0), cx.unif(0.0, 5.0), &q)?;
            Ok((x - y).amax())
        }),
    ));

    out
}

fn bounds_checks(cx: &mut Ctx) -> Vec<CheckResult> {
    let n = cx.opts.samples;
    let mut out = Vec::new();

    out.push(check(
        "ql_vs_entropy",
        1e-9,
        max_over(n, || {
            let (eta, nb, ns) = (cx.unif(0.01, 1.0), cx.unif(0.0, 5.0), cx.unif(0.0, 50.0));
            let ch = PhaseInsensitiveChannel::thermal(eta, nb)?;
            Ok((coherent_info_thermal(eta, nb, ns)? - entropy_difference(&ch, ns)?).abs())
        }),
    ));

    out.push(check(
        "ql_amp_vs_entropy",
        1e-9,
        max_over(n, || {
            let (g, nb, ns) = (cx.unif(1.0, 3.0), cx.unif(0.0, 5.0), cx.unif(0.0, 50.0));
            let ch = PhaseInsensitiveChannel::amplifier(g, nb)?;
            Ok((coherent_info_amp(g, nb, ns)? - entropy_difference(&ch, ns)?).abs())
        }),
    ));

    out.push(check(
        "ud_vs_conditional_entropy",
        1e-9,
        max_over(n, || {
            let (eta, nb, ns) = (cx.unif(0.5, 1.0), cx.unif(0.0, 3.0), cx.unif(0.0, 20.0));
            let ch = PhaseInsensitiveChannel::thermal(eta, nb)?;
            Ok(
                (ud_closed_form(&ch, ns)?
                    - conditional_entropy(&ch, &GaussianState::thermal(ns)?)?)
                .abs(),
            )
        }),
    ));

    // Residual is how far the gap leaves [0, 1/ln 2].
    out.push(check(
        "gap_law",
        1e-9,
        max_over(n * 10, || {
            let gap = gap_qu1_ql(cx.unif(0.5, 1.0), cx.unif(0.0, 5.0), cx.unif(0.0, 100.0))?;
            Ok((-gap).max(gap - 1.0 / LN_2).max(0.0))
        }),
    ));

    out.push(check(
        "lower_below_upper",
        1e-9,
        max_over(n, || {
            let (eta, nb, ns) = (cx.unif(0.5, 1.0), cx.unif(0.0, 5.0), cx.unif(0.0, 100.0));
            let ch = PhaseInsensitiveChannel::thermal(eta, nb)?;
            let ql = coherent_info_thermal(eta, nb, ns)?;
            let mut upper = q_u1(&ch, ns)?
                .raw_bits
                .min(q_u2(&ch, ns, None)?.raw_bits)
                .min(q_u3(&ch, ns, None)?.raw_bits);
            if eta > (1.0 - eta) * nb {
                upper = upper.min(q_u4(&ch, ns)?.value_bits);
            }
            Ok((ql - upper).max(0.0))
        }),
    ));

    out.push(check(
        "pl_at_least_ql",
        1e-12,
        max_over(n / 4, || {
            let (eta, nb, ns) = (cx.unif(0.01, 1.0), cx.unif(0.0, 3.0), cx.unif(0.0, 20.0));
            let pl = p_lower_displaced(eta, nb, ns)?.raw_bits;
            Ok((coherent_info_thermal(eta, nb, ns)? - pl).max(0.0))
        }),
    ));

    out.push(check(
        "optimizer_vs_grid",
        1e-6,
        max_over(10, || {
            let (eps, w, k) = (
                cx.unif(0.01, 0.9),
                cx.unif(0.0, 100.0),
                cx.rng.random_range(1..=4u32),
            );
            let opt = optimize_penalty(eps, w, k, None)?.nats / LN_2;
            let grid = (1..=20_000)
                .map(|i| eps + (1.0 - eps) * f64::from(i) / 20_000.0)
                .map(|ep| {
                    penalty(&PenaltyParams {
                        epsilon: eps,
                        epsilon_prime: ep,
                        w_prime: w,
                        k,
                    })
                })
                .fold(f64::INFINITY, f64::min);
            Ok((opt - grid).max(0.0))
        }),
    ));

    out.push(check(
        "qu1_unconstrained_limit",
        1e-3,
        max_over(n / 4, || {
            let ch = PhaseInsensitiveChannel::thermal(cx.unif(0.5, 0.999), cx.unif(0.0, 5.0))?;
            let lim = unconstrained_limit(&ch, BoundKind::QU1)?.raw_bits;
            Ok((q_u1(&ch, 1e6)?.raw_bits - lim).abs())
        }),
    ));

    out
}

/// Runs `suite` and collects every check, failing or not.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Report {
    let mut cx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        opts: *opts,
    };
    let mut checks = Vec::new();
    if matches!(suite, Suite::Core | Suite::All) {
        checks.extend(core_checks(&mut cx));
    }
    if matches!(suite, Suite::Bounds | Suite::All) {
        checks.extend(bounds_checks(&mut cx));
    }
    Report { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyOptions {
        VerifyOptions {
            samples: 20,
            ..Default::default()
        }
    }

    #[test]
    fn all_suites_pass() {
        let r = run_suite(Suite::All, &quick());
        assert!(r.passed(), "{r}");
        assert!(r
            .to_string()
            .contains("deg_vs_sim_cov max residual < 1e-10"));
    }

    #[test]
    fn kappa_mutation_is_caught() {
        let opts = VerifyOptions {
            kappa_perturbation: 1e-6,
            ..quick()
        };
        let r = run_suite(Suite::Core, &opts);
        assert!(!r.passed());
        assert!(!r.get("fidelity_identity").unwrap().passed);
        assert!(r.get("deg_vs_sim_cov").unwrap().passed);
    }

    #[test]
    fn suite_names() {
        assert_eq!("ALL".parse::<Suite>().unwrap(), Suite::All);
        assert!("fast".parse::<Suite>().is_err());
    }
}
