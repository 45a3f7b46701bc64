//! Closed-walk series for the log-complexity of a regular graph's complement:
//!
//! `ln t(Ḡ) = ln(n^-2 (n-d)^n) + sum_{k>=2} (-1)^(k-1) w_k / (k (n-d)^k)`.
//!
//! Terms are formed exactly as rationals. [`evaluate_series`] reports them in
//! `f64`; [`identify_complexity`] keeps the partial sums exact and encloses
//! `exp` of them in outward-rounded intervals to recover the integer count.

use num::{BigInt, BigRational, BigUint, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{closed_walk_counts, ClosedWalks, WalkTable};
use crate::graph::Graph;
use crate::interval::Interval;

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesEvaluation {
    pub n: usize,
    pub d: usize,
    /// `ln(n^-2 (n-d)^n)`.
    pub base: f64,
    /// `a_2..=a_K`.
    pub terms: Vec<f64>,
    /// `partials[0]` is the base alone; `partials[j]` adds terms through `k = j + 1`.
    pub partials: Vec<f64>,
    /// Worst-case absolute floating-point error of the last partial sum.
    pub rounding_bound: f64,
    pub walks: WalkTable,
}

impl SeriesEvaluation {
    pub fn max_k(&self) -> usize {
        self.terms.len() + 1
    }

    /// `a_k` for `2 <= k <= max_k`.
    pub fn term(&self, k: usize) -> f64 {
        self.terms[k - 2]
    }

    pub fn last_partial(&self) -> f64 {
        *self.partials.last().expect("partials always hold the base term")
    }
}

fn exact_term(n: usize, d: usize, w_k: &BigUint, k: usize) -> BigRational {
    let denom = BigInt::from(k) * num::pow(BigInt::from(n - d), k);
    let magnitude = BigRational::new(BigInt::from(w_k.clone()), denom);
    if k % 2 == 1 {
        magnitude
    } else {
        -magnitude
    }
}

/// `(-1)^(k-1) w_k / (k (n-d)^k)` rounded once to `f64`.
pub fn series_term(n: usize, d: usize, w_k: &BigUint, k: usize) -> Result<f64> {
    if d >= n {
        return Err(Error::Domain(format!("degree {d} must be below n = {n}")));
    }
    if k < 2 {
        return Err(Error::InvalidParameter("series terms start at k = 2".into()));
    }
    Ok(exact_term(n, d, w_k, k).to_f64().unwrap_or(f64::NAN))
}

/// Degree of `g` after checking it lies in the absolute-convergence domain.
fn convergent_degree(g: &Graph) -> Result<usize> {
    g.require_undirected("series evaluation")?;
    let d = g.regular_degree().degree.ok_or(Error::RegularityRequired)?;
    let n = g.order();
    if 2 * d >= n {
        return Err(Error::ConvergenceDomain { n, d });
    }
    Ok(d)
}

fn ln_base(n: usize, d: usize) -> f64 {
    n as f64 * ((n - d) as f64).ln() - 2.0 * (n as f64).ln()
}

pub fn evaluate_series(g: &Graph, max_k: usize) -> Result<SeriesEvaluation> {
    let d = convergent_degree(g)?;
    let n = g.order();
    let walks = closed_walk_counts(g, max_k.max(1))?;
    let base = ln_base(n, d);

    let mut exact_sum = BigRational::zero();
    let mut terms = Vec::new();
    let mut partials = vec![base];
    for k in 2..=max_k {
        let term = exact_term(n, d, walks.get(k), k);
        terms.push(term.to_f64().unwrap_or(f64::NAN));
        exact_sum += term;
        partials.push(base + exact_sum.to_f64().unwrap_or(f64::NAN));
    }

    // One rounding for each logarithm, each product and the final sum, plus
    // one for the exact tail sum's conversion.
    let eps = f64::EPSILON;
    let ln_error = eps
        * (2.0 * n as f64 * ((n - d) as f64).ln().abs() + 3.0 * (n as f64).ln());
    let last = *partials.last().unwrap();
    let rounding_bound = ln_error + eps * (last.abs() + exact_sum.to_f64().unwrap_or(0.0).abs());

    Ok(SeriesEvaluation {
        n,
        d,
        base,
        terms,
        partials,
        rounding_bound,
        walks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentifyOptions {
    /// Starting working precision of the enclosure, in bits.
    pub initial_bits: u32,
    /// Precision ceiling; exceeding it yields [`Error::PrecisionExhausted`].
    pub max_bits: u32,
    /// Largest walk length consulted before giving up.
    pub max_terms: usize,
}

impl Default for IdentifyOptions {
    fn default() -> Self {
        IdentifyOptions {
            initial_bits: 64,
            max_bits: 1 << 14,
            max_terms: 5000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Identification {
    pub value: BigUint,
    /// Largest `k` whose term was summed.
    pub terms_used: usize,
    /// Width of the final enclosure of `t(Ḡ)`.
    pub bracket_width: f64,
    pub precision_bits: u32,
}

/// Rigorous bound on `|sum_{k > last} a_k|`.
///
/// Every adjacency eigenvalue satisfies `|λ| <= d`, so for even `e <= last`
/// and `k > e`, `sum_i |λ_i|^k <= d^(k-e) w_e`. Summing the geometric series
/// in `ρ = d / (n-d) < 1` gives `w_e ρ^(last+1-e) / ((n-d)^e (last+1) (1-ρ))`.
fn tail_bound(n: usize, d: usize, w_even: &BigUint, even: usize, last: usize) -> BigRational {
    let c = BigInt::from(n - d);
    let rho = BigRational::new(BigInt::from(d), c.clone());
    if rho.is_zero() {
        return BigRational::zero();
    }
    let numer = BigRational::from_integer(BigInt::from(w_even.clone()))
        * num::pow(rho.clone(), last + 1 - even);
    let denom = BigRational::from_integer(num::pow(c, even) * BigInt::from(last + 1))
        * (BigRational::one() - rho);
    numer / denom
}

pub fn identify_complexity(g: &Graph) -> Result<BigUint> {
    identify_complexity_with(g, &IdentifyOptions::default()).map(|id| id.value)
}

/// Sums terms until `base * exp(partial)` stops moving by more than 1/2 for
/// two consecutive `k` and the enclosure of `t(Ḡ)` holds exactly one integer.
/// The enclosure combines the exact partial sum, a rigorous tail bound and
/// outward rounding; precision doubles whenever rounding alone keeps two
/// integers inside.
pub fn identify_complexity_with(g: &Graph, opts: &IdentifyOptions) -> Result<Identification> {
    let d = convergent_degree(g)?;
    let n = g.order();
    let c = BigInt::from(n - d);
    let base = BigRational::new(num::pow(c, n), BigInt::from(n * n));
    let base_f64 = (ln_base(n, d)).exp();

    let mut walks = ClosedWalks::new(g)?;
    walks.next(); // w_1 = 0
    let mut bits = opts.initial_bits.max(2);
    let mut sum = BigRational::zero();
    let mut sum_f64 = 0.0f64;
    let mut last_even = BigUint::zero();
    let mut quiet_steps = 0;

    for k in 2..=opts.max_terms {
        let w_k = walks.next().expect("walk iterator is unbounded");
        let term = exact_term(n, d, &w_k, k);
        let term_f64 = term.to_f64().unwrap_or(0.0);
        let step = base_f64 * sum_f64.exp() * term_f64.exp_m1().abs();
        quiet_steps = if step < 0.5 { quiet_steps + 1 } else { 0 };
        sum += term;
        sum_f64 = sum.to_f64().unwrap_or(f64::NAN);
        if k % 2 == 0 {
            last_even = w_k;
        }
        if quiet_steps < 2 {
            continue;
        }
        let even = k - k % 2;
        let tail = tail_bound(n, d, &last_even, even, k);
        let tail_f64 = tail.to_f64().unwrap_or(f64::INFINITY);
        loop {
            let enclosure = Interval::hull(&(&sum - &tail), &(&sum + &tail), bits)
                .exp()
                .scale_positive(&base);
            match enclosure.integer_range() {
                Some((first, last)) if first == last => {
                    return Ok(Identification {
                        value: first.to_biguint().expect("spanning-tree counts are nonnegative"),
                        terms_used: k,
                        bracket_width: enclosure.width(),
                        precision_bits: bits,
                    });
                }
                _ => {}
            }
            // Width attributable to the truncated tail alone.
            let tail_width = base_f64 * sum_f64.exp() * 2.0 * tail_f64.sinh();
            if tail_width >= 0.25 {
                break;
            }
            bits = bits.saturating_mul(2);
            if bits > opts.max_bits {
                return Err(Error::PrecisionExhausted {
                    bits: opts.max_bits,
                    terms: k,
                });
            }
        }
    }
    Err(Error::PrecisionExhausted {
        bits,
        terms: opts.max_terms,
    })
}
