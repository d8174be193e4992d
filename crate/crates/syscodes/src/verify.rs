//! The `verify` suites: congruence traces, metric area bounds, and the
//! dense and CSS oracles.

use std::fmt;

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use syscodes_core::hyperbolic::{metric_area_bounds, MinTraceReport};
use syscodes_core::pauli::MAX_DENSE_QUBITS;

use crate::parallel;
use crate::random::{random_css, random_stabilizer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub passed: bool,
    pub text: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOutcome {
    pub lines: Vec<CheckLine>,
    /// Lines that are reported but do not decide the outcome.
    pub info: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    fn check(&mut self, passed: bool, text: String) {
        self.lines.push(CheckLine { passed, text });
    }
}

/// The default grid: `p ∈ {3, 7, 11}`, `N ∈ 2..=6`, `B = 2N²`.
pub fn fuchsian_grid() -> Vec<(i64, i64, i64)> {
    let mut grid = Vec::new();
    for p in [3, 7, 11] {
        for n in 2..=6 {
            grid.push((p, n, 2 * n * n));
        }
    }
    grid
}

pub fn fuchsian(
    pool: &rayon::ThreadPool,
    grid: &[(i64, i64, i64)],
) -> Result<(SuiteOutcome, Vec<MinTraceReport>), String> {
    let mut out = SuiteOutcome::default();
    let mut reports = Vec::with_capacity(grid.len());
    for &(p, n, b) in grid {
        let r = parallel::min_trace(pool, p, n, b).map_err(|e| e.to_string())?;
        out.check(r.satisfied, r.to_string());
        reports.push(r);
    }
    Ok((out, reports))
}

/// Parses `0.5`, `1/2` or `3` into a rational.
pub fn parse_ratio(s: &str) -> Result<Ratio<i64>, String> {
    let bad = || format!("cannot read {s:?} as a rational number");
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let den: i64 = b.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(a.trim().parse().map_err(|_| bad())?, den));
    }
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    if whole.trim_start_matches('-').is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if frac.len() > 12 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let scale = 10i64.pow(frac.len() as u32);
    let negative = whole.starts_with('-');
    let w: i64 = if whole.is_empty() || whole == "-" {
        0
    } else {
        whole.parse().map_err(|_| bad())?
    };
    let f: i64 = if frac.is_empty() {
        0
    } else {
        frac.parse().map_err(|_| bad())?
    };
    let num = w * scale + if negative { -f } else { f };
    Ok(Ratio::new(num, scale))
}

pub fn metric(eta: Ratio<i64>) -> Result<SuiteOutcome, String> {
    let r = metric_area_bounds(eta).map_err(|e| e.to_string())?;
    let mut out = SuiteOutcome::default();
    for c in &r.area_checks {
        out.check(c.verdict.holds(), c.to_string());
    }
    out.check(r.coefficient_check.verdict.holds(), r.coefficient_check.to_string());
    let mut grid_ok = true;
    for k in 2..=40 {
        let g = metric_area_bounds(Ratio::new(k, 4)).map_err(|e| e.to_string())?;
        grid_ok &= g.coefficient_check.verdict.holds();
    }
    out.check(
        grid_ok,
        format!(
            "{}: coefficient max <= 4/81 for eta = 1/2, 3/4, ..., 10",
            if grid_ok { "pass" } else { "FAIL" }
        ),
    );
    out.info.push(format!(
        "info: pi/(486*eta) at eta={} is {:.6}; 1/150 is {:.6}",
        r.eta, r.sigma2_for_eta_check.lhs, r.sigma2_for_eta_check.rhs
    ));
    out.info.push(format!(
        "info: sqrt3/4 + 3(area_sigma1 + area_sigma2) at eta={} is {:.6}",
        r.eta, r.total_for_eta
    ));
    Ok(out)
}

pub fn oracle(n: usize, trials: usize, seed: u64) -> Result<SuiteOutcome, String> {
    if n == 0 || n > MAX_DENSE_QUBITS {
        return Err(format!("oracle suite needs 1 <= n <= {MAX_DENSE_QUBITS}, got {n}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::default();

    let mut mismatches = 0;
    for _ in 0..trials {
        let s = random_stabilizer(&mut rng, n);
        let l = s.generators().len();
        let dim = s.dense_fixed_dim().map_err(|e| e.to_string())?;
        if dim != 1 << (n - l) {
            mismatches += 1;
        }
    }
    out.check(
        mismatches == 0,
        format!(
            "{}: fixed-space dimension 2^(n-l) on {trials} random groups, n={n}, seed={seed} ({mismatches} mismatches)",
            if mismatches == 0 { "pass" } else { "FAIL" }
        ),
    );

    let css_n = n.max(2);
    let mut disagreements = 0;
    for _ in 0..trials {
        let c = random_css(&mut rng, css_n);
        let css = c.distance(css_n).map_err(|e| e.to_string())?.d;
        let symplectic = c.stabilizer().distance(css_n).map_err(|e| e.to_string())?.d;
        if css != symplectic {
            disagreements += 1;
        }
    }
    out.check(
        disagreements == 0,
        format!(
            "{}: CSS and symplectic distances agree on {trials} random CSS codes, n={css_n} ({disagreements} disagreements)",
            if disagreements == 0 { "pass" } else { "FAIL" }
        ),
    );
    Ok(out)
}
