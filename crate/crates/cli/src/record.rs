use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use seifert_wrt::wrt::InvariantResult;

/// One evaluated `(manifold, r)` pair as written by `swrt tau`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub manifold: String,
    pub r: usize,
    pub t: i64,
    pub nu: u32,
    pub b_plus: usize,
    pub b_minus: usize,
    /// Power-basis coordinates of `xi`, as `"a/b"` strings (`"a"` when `b = 1`).
    pub xi_coeffs: Vec<String>,
    pub tau_re: f64,
    pub tau_im: f64,
    pub xi_integral: bool,
    pub theta_integral: bool,
    /// Only the cross-checks that were requested.
    pub checks: BTreeMap<String, bool>,
}

impl OutputRecord {
    pub fn new(manifold: String, res: &InvariantResult) -> Self {
        OutputRecord {
            manifold,
            r: res.r,
            t: res.t,
            nu: res.nu,
            b_plus: res.b_plus,
            b_minus: res.b_minus,
            xi_coeffs: res.xi_exact.coeffs().iter().map(|c| c.to_string()).collect(),
            tau_re: clean(res.tau.re),
            tau_im: clean(res.tau.im),
            xi_integral: res.xi_is_integral,
            theta_integral: res.theta_is_integral,
            checks: BTreeMap::new(),
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.values().all(|&v| v)
    }

    pub fn to_text(&self) -> String {
        let checks: Vec<String> =
            self.checks.iter().map(|(k, v)| format!("{k}={}", if *v { "ok" } else { "FAIL" })).collect();
        let mut line = format!(
            "{} r={} t={} nu={} b+={} b-={} tau'={:.12}{:+.12}i xi_integral={} theta_integral={}",
            self.manifold,
            self.r,
            self.t,
            self.nu,
            self.b_plus,
            self.b_minus,
            self.tau_re,
            self.tau_im,
            self.xi_integral,
            self.theta_integral
        );
        if !checks.is_empty() {
            line.push(' ');
            line.push_str(&checks.join(" "));
        }
        line
    }

    pub fn to_csv_row(&self) -> CsvRow {
        CsvRow {
            manifold: self.manifold.clone(),
            r: self.r,
            t: self.t,
            nu: self.nu,
            b_plus: self.b_plus,
            b_minus: self.b_minus,
            xi_coeffs: self.xi_coeffs.join(" "),
            tau_re: self.tau_re,
            tau_im: self.tau_im,
            xi_integral: self.xi_integral,
            theta_integral: self.theta_integral,
            checks: self.checks.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CsvRow {
    pub manifold: String,
    pub r: usize,
    pub t: i64,
    pub nu: u32,
    pub b_plus: usize,
    pub b_minus: usize,
    pub xi_coeffs: String,
    pub tau_re: f64,
    pub tau_im: f64,
    pub xi_integral: bool,
    pub theta_integral: bool,
    pub checks: String,
}

// exact zeros print as 0 rather than -0
fn clean(x: f64) -> f64 {
    if x.is_zero() {
        0.0
    } else {
        x
    }
}
