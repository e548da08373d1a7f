//! Numerical evaluation of the model's limiting constants and exact
//! finite-size expectations.
//!
//! All factorial and binomial weights are evaluated through log-gamma
//! tables with one exponentiation per term, and series are accumulated in
//! compensated (Kahan) summation. Each evaluator reports a certified
//! truncation bound: mu uses the geometric term-ratio d e^(1-d); nu
//! majorizes its double-indexed terms by a Stirling envelope whose rate is
//! maximized in closed form over the inner split, and reports honestly
//! when that rate reaches 1 (near d = 1 with lambda < 1 the convergence of
//! the series is an open problem, and the evaluator does not pretend
//! otherwise).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A series evaluation together with its certified truncation error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    /// Upper bound on the omitted tail; infinite when no bound could be
    /// certified.
    pub tail_bound: f64,
    /// tail_bound <= requested tolerance
    pub converged: bool,
}

const MAX_TERMS: usize = 100_000;

/// Compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

/// Growing table of ln k! values, Kahan-accumulated.
struct LnFactorials {
    table: Vec<f64>,
    acc: Kahan,
}

impl LnFactorials {
    fn new() -> Self {
        Self {
            table: vec![0.0],
            acc: Kahan::default(),
        }
    }

    fn get(&mut self, n: usize) -> f64 {
        while self.table.len() <= n {
            let k = self.table.len();
            self.acc.add((k as f64).ln());
            self.table.push(self.acc.value());
        }
        self.table[n]
    }

    /// ln C(n, k); negative infinity when k > n.
    fn ln_binom(&mut self, n: usize, k: usize) -> f64 {
        if k > n {
            return f64::NEG_INFINITY;
        }
        self.get(n) - self.get(k) - self.get(n - k)
    }
}

/// x * ln(y) with the convention that a zero coefficient contributes
/// nothing even when y = 0.
fn xlny(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

/// Genus density constant of the supercritical binomial random graph:
/// mu(d) = 1/2 - 1/d + (1/d^2) sum_k (d e^-d)^k k^(k-2) / k!.
pub fn mu(d: f64, tol: f64) -> Result<SeriesResult> {
    if d <= 0.0 {
        return Err(Error::Config(format!("mu needs d > 0, got {d}")));
    }
    if tol <= 0.0 {
        return Err(Error::Config("tolerance must be positive".into()));
    }
    let x = d * (-d).exp();
    let ratio = d * (1.0 - d).exp(); // sup of term ratios
    let ln_x = x.ln();
    let mut lf = LnFactorials::new();
    let mut sum = Kahan::default();
    let mut tail = f64::INFINITY;
    let mut k = 0usize;
    while k < MAX_TERMS {
        k += 1;
        let ln_term = (k as f64 - 2.0) * (k as f64).ln() + k as f64 * ln_x - lf.get(k);
        let term = ln_term.exp();
        sum.add(term);
        if ratio < 1.0 - 1e-12 {
            tail = term * ratio / (1.0 - ratio);
            if tail <= tol * d * d {
                break;
            }
        }
    }
    let value = 0.5 - 1.0 / d + sum.value() / (d * d);
    let tail_bound = tail / (d * d);
    Ok(SeriesResult {
        value,
        terms_used: k,
        tail_bound,
        converged: tail_bound <= tol,
    })
}

/// Shared state for the nu summand
/// (d/sqrt(L)) e^(-d/sqrt(L)) raised to k, times
/// sum_{r+s=k} r^(s-1) s^(r-1) / (r! s!) * L^r * e^(-d(L-1)s/sqrt(L)).
struct NuSeries {
    ln_xi: f64,
    ln_lambda: f64,
    /// -d(lambda-1)/sqrt(lambda), non-negative for lambda <= 1
    theta: f64,
    lf: LnFactorials,
    /// ln i for i = 0.. (entry 0 unused)
    ln_table: Vec<f64>,
}

impl NuSeries {
    fn new(d: f64, lambda: f64) -> Self {
        let ds = d / lambda.sqrt();
        Self {
            ln_xi: ds.ln() - ds,
            ln_lambda: lambda.ln(),
            theta: -d * (lambda - 1.0) / lambda.sqrt(),
            lf: LnFactorials::new(),
            ln_table: vec![0.0],
        }
    }

    /// The k-th term (all inner (r, s) splits), non-negative. The xi^k
    /// factor is folded into every inner exponent; the combined logs stay
    /// bounded even where e^(theta s) alone would overflow.
    fn term(&mut self, k: usize) -> f64 {
        self.lf.get(k);
        while self.ln_table.len() <= k {
            let i = self.ln_table.len();
            self.ln_table.push((i as f64).ln());
        }
        let mut inner = Kahan::default();
        let base = k as f64 * self.ln_xi;
        // interior splits r, s >= 1; the only nonzero boundary terms are
        // (1, 0) and (0, 1) at k = 1, handled below
        for r in 1..k {
            let s = k - r;
            let ln_t =
                base + (s as f64 - 1.0) * self.ln_table[r] + (r as f64 - 1.0) * self.ln_table[s]
                    - self.lf.table[r]
                    - self.lf.table[s]
                    + r as f64 * self.ln_lambda
                    + s as f64 * self.theta;
            inner.add(ln_t.exp());
        }
        if k == 1 {
            // (1, 0) contributes lambda, (0, 1) contributes e^theta, both
            // through the 0^0 = 1 convention
            inner.add((self.ln_xi + self.ln_lambda).exp());
            inner.add((self.ln_xi + self.theta).exp());
        }
        inner.value()
    }

    /// Certified envelope rate: every term is bounded by
    /// 2.36 k^(-3/2) rate^k, obtained from Stirling lower bounds on the
    /// factorials and maximizing the resulting concave exponent over the
    /// inner split fraction.
    fn envelope_rate(&self) -> f64 {
        let g = |a: f64| {
            (1.0 - 2.0 * a) * (a / (1.0 - a)).ln() + a * self.ln_lambda + self.theta * (1.0 - a)
        };
        // ternary search on a concave function
        let mut lo = 1e-12;
        let mut hi = 1.0 - 1e-12;
        for _ in 0..300 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if g(m1) < g(m2) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        let m = g(0.5 * (lo + hi)) + 1e-9;
        (self.ln_xi + 1.0 + m).exp()
    }
}

/// Envelope tail: sum_{k > cap} 2.36 k^(-3/2) rate^k.
fn nu_tail(rate: f64, after: usize) -> f64 {
    if rate >= 1.0 {
        return f64::INFINITY;
    }
    let k1 = after as f64 + 1.0;
    2.36 * k1.powf(-1.5) * rate.powf(k1) / (1.0 - rate)
}

fn check_nu_domain(d: f64, lambda: f64, tol: f64) -> Result<()> {
    if d <= 0.0 {
        return Err(Error::Config(format!("nu needs d > 0, got {d}")));
    }
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::Config(format!(
            "nu needs lambda in (0, 1], got {lambda}"
        )));
    }
    if tol <= 0.0 {
        return Err(Error::Config("tolerance must be positive".into()));
    }
    Ok(())
}

/// Work budget for the nu loop; the k-th term costs k inner evaluations,
/// so this caps runtime when the envelope rate sits at or above 1.
const NU_WORK_BUDGET: usize = 50_000_000;

/// Limiting density of small balanced tree components per N1 vertex.
pub fn nu(d: f64, lambda: f64, tol: f64) -> Result<SeriesResult> {
    check_nu_domain(d, lambda, tol)?;
    let mut series = NuSeries::new(d, lambda);
    let rate = series.envelope_rate();
    let scale = 1.0 / (d * lambda.sqrt());
    let mut sum = Kahan::default();
    let mut k = 0usize;
    let mut tail = f64::INFINITY;
    let mut work = 0usize;
    while k < MAX_TERMS {
        k += 1;
        work += k + 1;
        sum.add(series.term(k));
        tail = nu_tail(rate, k);
        if tail <= tol / scale || work > NU_WORK_BUDGET {
            break;
        }
    }
    let value = scale * sum.value();
    let tail_bound = tail * scale;
    Ok(SeriesResult {
        value,
        terms_used: k,
        tail_bound,
        converged: tail_bound <= tol,
    })
}

/// Finite-n truncation of the nu series: the sum runs to
/// floor((ln n1)^3) only.
pub fn zeta(d: f64, n1: usize, lambda: f64) -> Result<f64> {
    check_nu_domain(d, lambda, 1.0)?;
    if n1 < 2 {
        return Err(Error::Config("zeta needs n1 >= 2".into()));
    }
    let kmax = (n1 as f64).ln().powi(3).floor() as usize;
    let mut series = NuSeries::new(d, lambda);
    let mut sum = Kahan::default();
    for k in 1..=kmax {
        sum.add(series.term(k));
    }
    Ok(sum.value() / (d * lambda.sqrt()))
}

/// Genus density constant of the balanced bipartite model:
/// gamma(d, lambda) = 1/2 - (lambda+1)/(2 d sqrt(lambda))
///                    + nu(d, lambda) sqrt(lambda) / (2d).
pub fn gamma_const(d: f64, lambda: f64, tol: f64) -> Result<SeriesResult> {
    check_nu_domain(d, lambda, tol)?;
    let spread = lambda.sqrt() / (2.0 * d);
    let nu_res = nu(d, lambda, tol / spread)?;
    let value = 0.5 - (lambda + 1.0) / (2.0 * d * lambda.sqrt()) + nu_res.value * spread;
    let tail_bound = nu_res.tail_bound * spread;
    Ok(SeriesResult {
        value,
        terms_used: nu_res.terms_used,
        tail_bound,
        converged: tail_bound <= tol,
    })
}

/// Closed form of nu in the subcritical extension, 1 + (1 - d sqrt(L)) / L.
/// Valid for d sqrt(lambda) <= 1; used as an independent oracle.
pub fn nu_closed_form_subcritical(d: f64, lambda: f64) -> f64 {
    1.0 + (1.0 - d * lambda.sqrt()) / lambda
}

/// Exact expected number of tree components on at most kmax vertices in
/// G(n1, n2, p):
/// sum_{k=1}^{kmax} sum_{r+s=k} C(n1,r) C(n2,s) r^(s-1) s^(r-1)
///   p^(k-1) (1-p)^(r(n2-s) + s(n1-r) + rs - k + 1).
pub fn expected_tree_components_exact(n1: usize, n2: usize, p: f64, kmax: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityRange(p));
    }
    if kmax == 0 {
        return Err(Error::Config("kmax must be at least 1".into()));
    }
    let kmax = kmax.min(n1 + n2);
    let mut lf = LnFactorials::new();
    let mut sum = Kahan::default();
    for k in 1..=kmax {
        for r in 0..=k.min(n1) {
            let s = k - r;
            if s > n2 {
                continue;
            }
            let boundary = r * (n2 - s) + s * (n1 - r) + r * s + 1 - k;
            let ln_t = lf.ln_binom(n1, r)
                + lf.ln_binom(n2, s)
                + xlny(s as f64 - 1.0, r as f64)
                + xlny(r as f64 - 1.0, s as f64)
                + xlny(k as f64 - 1.0, p)
                + xlny(boundary as f64, 1.0 - p);
            let t = ln_t.exp();
            if t > 0.0 {
                sum.add(t);
            }
        }
    }
    Ok(sum.value())
}

/// Number of spanning trees of the complete bipartite graph K_{a,b}:
/// a^(b-1) b^(a-1).
pub fn spanning_tree_count(a: u64, b: u64) -> Result<u128> {
    if a == 0 || b == 0 {
        return Err(Error::Config("spanning_tree_count needs a, b >= 1".into()));
    }
    let pow = |base: u64, exp: u64| -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..exp {
            acc = acc.checked_mul(base as u128)?;
        }
        Some(acc)
    };
    let fail = || Error::Overflow {
        what: format!("spanning tree count of K_{{{a},{b}}}"),
    };
    let x = pow(a, b - 1).ok_or_else(fail)?;
    let y = pow(b, a - 1).ok_or_else(fail)?;
    x.checked_mul(y).ok_or_else(fail)
}
