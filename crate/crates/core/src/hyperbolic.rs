//! Upper half-plane distances, translation lengths, principal congruence
//! elements of the quaternionic lattice, and the triangle area bounds.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex;
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperbolicError {
    #[error("point {0} is not in the upper half-plane")]
    NotInUpperHalfPlane(String),
    #[error("trace {0} <= 2 is not hyperbolic")]
    NotHyperbolic(f64),
    #[error("p = {0} must be a prime congruent to 3 mod 4")]
    InvalidPrime(i64),
    #[error("modulus N = {0} must be at least 2")]
    InvalidModulus(i64),
    #[error("coefficient bound B = {0} must be at least 1")]
    InvalidBound(i64),
    #[error("eta = {0} must be at least 1/2")]
    EtaTooSmall(Ratio<i64>),
}

/// `d(z, w) = arccosh(1 + |z − w|² / (2 Im z Im w))`, evaluated as
/// `2 asinh(|z − w| / (2 √(Im z Im w)))` to keep precision for nearby points.
pub fn hyperbolic_distance(z: Complex<f64>, w: Complex<f64>) -> Result<f64, HyperbolicError> {
    for p in [z, w] {
        if p.im.is_nan() || p.im <= 0.0 {
            return Err(HyperbolicError::NotInUpperHalfPlane(format!("{p}")));
        }
    }
    let chord = libm::hypot(z.re - w.re, z.im - w.im);
    Ok(2.0 * libm::asinh(chord / (2.0 * libm::sqrt(z.im * w.im))))
}

/// `cosh d(z, w)` in exact rational arithmetic.
pub fn cosh_distance_rational(z: Complex<Ratio<i64>>, w: Complex<Ratio<i64>>) -> Result<Ratio<i64>, HyperbolicError> {
    let zero = Ratio::from_integer(0);
    for p in [z, w] {
        if p.im <= zero {
            return Err(HyperbolicError::NotInUpperHalfPlane(format!("{}+{}i", p.re, p.im)));
        }
    }
    let dr = z.re - w.re;
    let di = z.im - w.im;
    Ok(Ratio::from_integer(1) + (dr * dr + di * di) / (Ratio::from_integer(2) * z.im * w.im))
}

/// `L = 2 arccosh(t / 2)` for a hyperbolic trace `t > 2`.
pub fn translation_length(trace: f64) -> Result<f64, HyperbolicError> {
    if trace.is_nan() || trace <= 2.0 {
        return Err(HyperbolicError::NotHyperbolic(trace));
    }
    Ok(2.0 * libm::acosh(trace / 2.0))
}

/// The larger eigenvalue `λ` of a diagonal element with trace `λ + 1/λ = t`.
pub fn diagonal_eigenvalue(trace: f64) -> Result<f64, HyperbolicError> {
    if trace.is_nan() || trace <= 2.0 {
        return Err(HyperbolicError::NotHyperbolic(trace));
    }
    Ok((trace + libm::sqrt((trace - 2.0) * (trace + 2.0))) / 2.0)
}

/// An element `[[1 + N(a + b√p), N(−c + d√p)], [N(c + d√p), 1 + N(a − b√p)]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CongruenceElement {
    pub p: i64,
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    /// `|2 + 2aN|`.
    pub trace: i128,
    /// `(1 + Na)² − pN²b² + N²c² − pN²d²`.
    pub norm: i128,
}

impl CongruenceElement {
    pub fn new(p: i64, n: i64, a: i64, b: i64, c: i64, d: i64) -> Self {
        let (p128, n128) = (p as i128, n as i128);
        let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
        let n2 = n128 * n128;
        let head = 1 + n128 * a;
        let norm = head * head - p128 * n2 * b * b + n2 * c * c - p128 * n2 * d * d;
        Self {
            p,
            n,
            a: a as i64,
            b: b as i64,
            c: c as i64,
            d: d as i64,
            trace: (2 + 2 * a * n128).abs(),
            norm,
        }
    }

    /// `±1` in SL₂, hence the identity of the projective group.
    pub fn is_projective_identity(&self) -> bool {
        let head = 1 + self.n as i128 * self.a as i128;
        self.b == 0 && self.c == 0 && self.d == 0 && (head == 1 || head == -1)
    }
}

fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// Rejects `p` that is not a prime `≡ 3 (mod 4)`, `N < 2`, or `B < 1`.
pub fn check_inputs(p: i64, n: i64, bound: i64) -> Result<(), HyperbolicError> {
    if !is_prime(p) || p % 4 != 3 {
        return Err(HyperbolicError::InvalidPrime(p));
    }
    if n < 2 {
        return Err(HyperbolicError::InvalidModulus(n));
    }
    if bound < 1 {
        return Err(HyperbolicError::InvalidBound(bound));
    }
    Ok(())
}

fn isqrt(x: i128) -> Option<i128> {
    if x < 0 {
        return None;
    }
    let mut r = libm::sqrt(x as f64) as i128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    (r * r == x).then_some(r)
}

/// Elements with the given `a` and `|b|, |c|, |d| ≤ bound`, ordered by
/// `(b, c, d)`. Inputs are not validated.
pub fn enumerate_slice(p: i64, n: i64, bound: i64, a: i64) -> Vec<CongruenceElement> {
    let (p128, n128) = (p as i128, n as i128);
    let n2 = n128 * n128;
    let head = 1 + n128 * a as i128;
    let mut out = Vec::new();
    for b in -bound..=bound {
        for c in -bound..=bound {
            // pN²d² = (1 + Na)² − pN²b² + N²c² − 1
            let rest = head * head - p128 * n2 * (b as i128).pow(2) + n2 * (c as i128).pow(2) - 1;
            let step = p128 * n2;
            if rest < 0 || rest % step != 0 {
                continue;
            }
            let Some(d) = isqrt(rest / step) else { continue };
            if d > bound as i128 {
                continue;
            }
            let d = d as i64;
            if d == 0 {
                out.push(CongruenceElement::new(p, n, a, b, c, 0));
            } else {
                out.push(CongruenceElement::new(p, n, a, b, c, -d));
                out.push(CongruenceElement::new(p, n, a, b, c, d));
            }
        }
    }
    out
}

/// All quadruples with `|a|, |b|, |c|, |d| ≤ bound` whose norm is 1, ordered
/// by `(a, b, c, d)`.
pub fn enumerate_congruence_elements(p: i64, n: i64, bound: i64) -> Result<Vec<CongruenceElement>, HyperbolicError> {
    check_inputs(p, n, bound)?;
    Ok((-bound..=bound).flat_map(|a| enumerate_slice(p, n, bound, a)).collect())
}

/// Minimum trace over the enumerated box. Only elements inside the box are
/// seen, so `satisfied` says nothing about the rest of the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinTraceReport {
    pub p: i64,
    pub n: i64,
    pub bound: i64,
    /// Elements found, including lifts of the identity.
    pub count: usize,
    pub nontrivial: usize,
    pub min_nontrivial_trace: Option<i128>,
    pub witness: Option<CongruenceElement>,
    /// `N² − 2`.
    pub trace_bound: i128,
    pub satisfied: bool,
    /// No nontrivial element in the box.
    pub vacuous: bool,
}

impl MinTraceReport {
    pub const CSV_HEADER: &'static str = "p,N,B,count,min_trace,bound,satisfied";

    pub fn from_elements(p: i64, n: i64, bound: i64, elements: &[CongruenceElement]) -> Self {
        let mut witness: Option<CongruenceElement> = None;
        let mut nontrivial = 0;
        for e in elements.iter().filter(|e| !e.is_projective_identity()) {
            nontrivial += 1;
            if witness.is_none_or(|w| e.trace < w.trace) {
                witness = Some(*e);
            }
        }
        let trace_bound = (n as i128) * (n as i128) - 2;
        let min = witness.map(|w| w.trace);
        Self {
            p,
            n,
            bound,
            count: elements.len(),
            nontrivial,
            min_nontrivial_trace: min,
            witness,
            trace_bound,
            satisfied: min.is_none_or(|m| m >= trace_bound),
            vacuous: min.is_none(),
        }
    }

    pub fn csv_row(&self) -> String {
        let min = self
            .min_nontrivial_trace
            .map_or(String::from("none"), |m| format!("{m}"));
        format!(
            "{},{},{},{},{},{},{}",
            self.p, self.n, self.bound, self.count, min, self.trace_bound, self.satisfied
        )
    }
}

impl core::fmt::Display for MinTraceReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let verdict = if self.satisfied { "pass" } else { "FAIL" };
        match self.min_nontrivial_trace {
            Some(m) => write!(
                f,
                "{verdict}: p={} N={} B={} (bounded-box) min nontrivial trace {m} >= {}: {} ({} of {} elements nontrivial)",
                self.p, self.n, self.bound, self.trace_bound, self.satisfied, self.nontrivial, self.count
            ),
            None => write!(
                f,
                "{verdict}: p={} N={} B={} (bounded-box) no nontrivial element, bound {} holds vacuously",
                self.p, self.n, self.bound, self.trace_bound
            ),
        }
    }
}

/// Enumerates the box and checks `Tr ≥ N² − 2` for every element that is
/// not `±I`.
pub fn min_trace_verify(p: i64, n: i64, bound: i64) -> Result<MinTraceReport, HyperbolicError> {
    let elements = enumerate_congruence_elements(p, n, bound)?;
    Ok(MinTraceReport::from_elements(p, n, bound, &elements))
}

/// Rational enclosure `PI_LOW < π < PI_HIGH`.
pub const PI_LOW: (i128, i128) = (314_159_265_358_979, 100_000_000_000_000);
pub const PI_HIGH: (i128, i128) = (314_159_265_358_980, 100_000_000_000_000);

/// Outcome of a comparison that is decided from an enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub verdict: Verdict,
}

impl core::fmt::Display for Comparison {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let tag = match self.verdict {
            Verdict::Holds => "pass",
            Verdict::Fails => "FAIL",
            Verdict::Undecided => "UNDECIDED",
        };
        write!(f, "{tag}: {} ({:.6} vs {:.6})", self.label, self.lhs, self.rhs)
    }
}

type Q = Ratio<i128>;

fn q(num: i128, den: i128) -> Q {
    Ratio::new(num, den)
}

fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Decides `c·π < r` for rationals `c > 0`, `r`.
fn pi_multiple_less_than(c: Q, r: Q) -> Verdict {
    if c * q(PI_HIGH.0, PI_HIGH.1) < r {
        Verdict::Holds
    } else if c * q(PI_LOW.0, PI_LOW.1) >= r {
        Verdict::Fails
    } else {
        Verdict::Undecided
    }
}

/// Decides `√3/4 + s < r`, exactly, by squaring.
fn sqrt3_quarter_plus_less_than(s: Q, r: Q) -> Verdict {
    let gap = r - s;
    if gap <= q(0, 1) {
        return Verdict::Fails;
    }
    // √3/4 < gap  ⇔  3 < 16 gap²
    if q(3, 1) < q(16, 1) * gap * gap {
        Verdict::Holds
    } else {
        Verdict::Fails
    }
}

/// Areas of the corner sectors of a smoothed triangle for a given `η`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricBoundReport {
    pub eta: Ratio<i64>,
    /// `2π / (12 · 18² · η³)`.
    pub area_sigma1: f64,
    /// Bound from `dV ≤ (2/9) dr dφ`: `π / (486 η)`.
    pub area_sigma2: f64,
    /// `π / 486`, the value quoted for the outer sector.
    pub area_sigma2_quoted: f64,
    /// `√3/4 + 3(1/150 + 1/77)`.
    pub total_triangle_area: f64,
    /// `√3/4 + 3(area_sigma1 + area_sigma2)` for this `η`.
    pub total_for_eta: f64,
    /// Maximum of the metric coefficient over `[1/(18η), 1/(12η)]`.
    pub coefficient_max: Ratio<i128>,
    /// Inner sector, quoted outer sector, and triangle total.
    pub area_checks: Vec<Comparison>,
    /// `coefficient_max ≤ 4/81`, exact.
    pub coefficient_check: Comparison,
    /// `π / (486 η) < 1/150` for this `η`.
    pub sigma2_for_eta_check: Comparison,
}

impl MetricBoundReport {
    /// The area checks and the coefficient check.
    pub fn all_pass(&self) -> bool {
        self.area_checks.iter().all(|c| c.verdict.holds()) && self.coefficient_check.verdict.holds()
    }
}

/// The coefficient `((9η² − 4)/(36η³)) r + (2 − 3η²)/(216η⁴)` of `dφ²`.
pub fn metric_coefficient(eta: Ratio<i128>, r: Ratio<i128>) -> Ratio<i128> {
    let e2 = eta * eta;
    (q(9, 1) * e2 - q(4, 1)) / (q(36, 1) * e2 * eta) * r + (q(2, 1) - q(3, 1) * e2) / (q(216, 1) * e2 * e2)
}

pub fn metric_area_bounds(eta: Ratio<i64>) -> Result<MetricBoundReport, HyperbolicError> {
    if eta < Ratio::new(1, 2) {
        return Err(HyperbolicError::EtaTooSmall(eta));
    }
    let e = q(*eta.numer() as i128, *eta.denom() as i128);
    let e3 = e * e * e;

    // area_sigma1 = c1 · π with c1 = 2 / (12 · 18² · η³)
    let c1 = q(2, 12 * 18 * 18) / e3;
    // area_sigma2 = c2 · π with c2 = (1/(12η) − 1/(18η)) · (1/6) · 2 · (2/9)
    let width = q(1, 12) / e - q(1, 18) / e;
    let c2 = width * q(1, 3) * q(2, 9);
    let c2_quoted = q(1, 486);
    let pi = core::f64::consts::PI;
    let sqrt3_quarter = libm::sqrt(3.0) / 4.0;

    // Linear in r, so the maximum sits at an endpoint.
    let coefficient_max = metric_coefficient(e, q(1, 18) / e).max(metric_coefficient(e, q(1, 12) / e));

    let corners = q(1, 150) + q(1, 77);
    let area_checks = alloc::vec![
        Comparison {
            label: format!("2pi/(12*18^2*eta^3) < 1/77 at eta={eta}"),
            lhs: to_f64(c1) * pi,
            rhs: 1.0 / 77.0,
            verdict: pi_multiple_less_than(c1, q(1, 77)),
        },
        Comparison {
            label: String::from("pi/486 < 1/150"),
            lhs: pi / 486.0,
            rhs: 1.0 / 150.0,
            verdict: pi_multiple_less_than(c2_quoted, q(1, 150)),
        },
        Comparison {
            label: String::from("sqrt3/4 + 3(1/150 + 1/77) < 1/2"),
            lhs: sqrt3_quarter + 3.0 * to_f64(corners),
            rhs: 0.5,
            verdict: sqrt3_quarter_plus_less_than(q(3, 1) * corners, q(1, 2)),
        },
    ];
    let coefficient_check = Comparison {
        label: format!("coefficient max {coefficient_max} <= 4/81"),
        lhs: to_f64(coefficient_max),
        rhs: 4.0 / 81.0,
        verdict: if coefficient_max <= q(4, 81) {
            Verdict::Holds
        } else {
            Verdict::Fails
        },
    };
    let sigma2_for_eta_check = Comparison {
        label: format!("pi/(486*eta) < 1/150 at eta={eta}"),
        lhs: to_f64(c2) * pi,
        rhs: 1.0 / 150.0,
        verdict: pi_multiple_less_than(c2, q(1, 150)),
    };
    Ok(MetricBoundReport {
        eta,
        area_sigma1: to_f64(c1) * pi,
        area_sigma2: to_f64(c2) * pi,
        area_sigma2_quoted: pi / 486.0,
        total_triangle_area: sqrt3_quarter + 3.0 * to_f64(corners),
        total_for_eta: sqrt3_quarter + 3.0 * to_f64(c1 + c2) * pi,
        coefficient_max,
        area_checks,
        coefficient_check,
        sigma2_for_eta_check,
    })
}
