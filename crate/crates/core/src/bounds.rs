//! Closed-form lower and upper bounds on spanning-tree counts of regular
//! graphs and their complements.
//!
//! Traces and walk counts enter exactly; the formulas themselves are
//! evaluated in `f64`, except the bipartite pair, which is enclosed and
//! rounded outward. Each report carries the bound on both the log scale
//! and the linear scale.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, BigUint, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{closed_walk_counts, laplacian_traces, to_f64, WalkTable};
use crate::graph::Graph;
use crate::interval::Interval;

/// Working precision of the outward-rounded upper bound.
const UPPER_BITS: u32 = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    Prop1,
    Thm2,
    Prop2,
    Thm3Lower,
    Thm3Upper,
}

/// Which count a report bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundTarget {
    /// `t(G)` of a graph with the stated order and degree.
    Graph,
    /// `t(Ḡ)` for the input graph `G`.
    Complement,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Param {
    Int(u64),
    Real(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: BoundName,
    pub target: BoundTarget,
    pub log_value: Option<f64>,
    pub linear_value: Option<f64>,
    pub preconditions_ok: bool,
    pub reason: String,
    pub parameters: BTreeMap<&'static str, Param>,
}

impl BoundReport {
    fn new(name: BoundName, target: BoundTarget) -> Self {
        BoundReport {
            name,
            target,
            log_value: None,
            linear_value: None,
            preconditions_ok: false,
            reason: String::new(),
            parameters: BTreeMap::new(),
        }
    }

    fn int(mut self, key: &'static str, value: usize) -> Self {
        self.parameters.insert(key, Param::Int(value as u64));
        self
    }

    fn count(mut self, key: &'static str, value: &BigUint) -> Self {
        let param = match u64::try_from(value) {
            Ok(v) => Param::Int(v),
            Err(_) => Param::Real(to_f64(value)),
        };
        self.parameters.insert(key, param);
        self
    }

    fn real(mut self, key: &'static str, value: f64) -> Self {
        self.parameters.insert(key, Param::Real(value));
        self
    }

    fn rejected(mut self, reason: impl Into<String>) -> Self {
        self.reason = reason.into();
        self
    }

    /// `linear` is computed as a product of factors so that degenerate cases
    /// (every correction equal to one) come out exact.
    fn valued(mut self, log: f64, linear: f64) -> Self {
        self.preconditions_ok = true;
        self.reason = "ok".into();
        self.log_value = Some(log);
        self.linear_value = Some(if linear.is_finite() { linear } else { log.exp() });
        self
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.parameters.get(key).map(|p| match *p {
            Param::Int(i) => i as f64,
            Param::Real(x) => x,
        })
    }
}

/// Rounds to `digits` significant decimal digits.
pub fn round_significant(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits - 1 - magnitude);
    (x * factor).round() / factor
}

fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
        .to_f64()
        .unwrap_or(f64::NAN)
}

fn pow_n(n: usize, e: usize) -> f64 {
    (n as f64).powi(e as i32)
}

/// Lower bound on `t(G)` for any graph of order `n`, regular of degree `d`,
/// valid when `(n-1-d)(n-d) < n`.
pub fn prop1_lower(n: usize, d: usize) -> BoundReport {
    let report = BoundReport::new(BoundName::Prop1, BoundTarget::Graph)
        .int("n", n)
        .int("d", d);
    if n < 2 || d >= n {
        return report.rejected("need n >= 2 and d < n");
    }
    let product = (n - 1 - d) * (n - d);
    if product >= n {
        return report.rejected("(n-1-d)(n-d) >= n");
    }
    let y = (product as f64 / n as f64).sqrt();
    let correction = -((n - 1 - d) as f64) + y;
    let log = (n - 2) as f64 * (n as f64).ln() + (1.0 - y).ln() + correction;
    let linear = pow_n(n, n - 2) * (1.0 - y) * correction.exp();
    report.real("y", y).valued(log, linear)
}

/// Lower bound on `t(Ḡ)` from exact traces of `L^1..L^m` of the regular
/// graph `g`, valid when `tr(L^m) < n^m`.
pub fn thm2_lower(g: &Graph, m: usize) -> Result<BoundReport> {
    if m < 2 {
        return Err(Error::InvalidParameter("thm2 needs m >= 2".into()));
    }
    let traces = laplacian_traces(g, m)?;
    let n = g.order();
    let d = traces.degree();
    let report = BoundReport::new(BoundName::Thm2, BoundTarget::Complement)
        .int("n", n)
        .int("d", d)
        .int("m", m);
    let n_pow_m = num::pow(BigUint::from(n), m);
    let tr_m = traces.get(m);
    if tr_m >= &n_pow_m {
        return Ok(report.rejected("tr(L^m) >= n^m"));
    }
    let y = to_f64(tr_m).powf(1.0 / m as f64) / n as f64;
    let correction: f64 = (1..m)
        .map(|k| {
            let scaled = ratio(traces.get(k), &num::pow(BigUint::from(n), k));
            (scaled - y.powi(k as i32)) / k as f64
        })
        .sum();
    let log = (n - 2) as f64 * (n as f64).ln() + (1.0 - y).ln() - correction;
    let linear = pow_n(n, n - 2) * (1.0 - y) * (-correction).exp();
    Ok(report.real("y", y).valued(log, linear))
}

/// `s` from `n^3 s^3 = twice_cube / 2`; `None` when the cube is negative.
fn cube_root_over_n(twice_cube: &BigInt, n: usize) -> Option<f64> {
    if twice_cube < &BigInt::zero() {
        return None;
    }
    let cube = twice_cube.to_f64()? / 2.0;
    Some(cube.cbrt() / n as f64)
}

fn binom3(n: usize) -> BigInt {
    BigInt::from(n) * BigInt::from(n as i64 - 1) * BigInt::from(n as i64 - 2) / 6
}

/// Lower bound on `t(G)` for `G` of order `n`, regular of degree `d`, with
/// `delta` triangles; valid when `0 <= s < 1`.
pub fn prop2_lower(n: usize, d: usize, delta: &BigUint) -> BoundReport {
    let report = BoundReport::new(BoundName::Prop2, BoundTarget::Graph)
        .int("n", n)
        .int("d", d)
        .count("delta", delta);
    if n < 3 || d >= n {
        return report.rejected("need n >= 3 and d < n");
    }
    let (nb, db) = (BigInt::from(n), BigInt::from(d));
    let dc = &nb - 1 - &db;
    // Twice the right-hand side keeps n d (n-1-d) / 2 integral.
    let twice_cube = BigInt::from(2) * &nb * &dc * &dc * (&nb + 2 - &db)
        - BigInt::from(12) * (binom3(n) - BigInt::from(delta.clone()))
        + BigInt::from(6) * &nb * &db * &dc;
    let Some(s) = cube_root_over_n(&twice_cube, n) else {
        return report.rejected("n^3 s^3 is negative");
    };
    let report = report.real("s", s).real("s_7sig", round_significant(s, 7));
    if s >= 1.0 {
        return report.rejected("s >= 1");
    }
    let (nf, dcf) = (n as f64, (n - 1 - d) as f64);
    let correction = s - dcf + s * s / 2.0 - ((n - d) * (n - d - 1)) as f64 / (2.0 * nf);
    let log = (n - 2) as f64 * nf.ln() + (1.0 - s).ln() + correction;
    let linear = pow_n(n, n - 2) * (1.0 - s) * correction.exp();
    report.valued(log, linear)
}

/// The same triangle bound stated for `t(Ḡ)` from the order, degree and
/// triangle count of `G` itself, with `n^3 s^3 = n d^3 + 3 n d^2 - 6 delta`.
pub fn complement_triangle_lower(n: usize, d: usize, delta: &BigUint) -> BoundReport {
    let report = BoundReport::new(BoundName::Prop2, BoundTarget::Complement)
        .int("n", n)
        .int("d", d)
        .count("delta", delta);
    if n < 3 || d >= n {
        return report.rejected("need n >= 3 and d < n");
    }
    let (nb, db) = (BigInt::from(n), BigInt::from(d));
    let twice_cube = BigInt::from(2)
        * (&nb * &db * &db * &db + BigInt::from(3) * &nb * &db * &db
            - BigInt::from(6) * BigInt::from(delta.clone()));
    let Some(s) = cube_root_over_n(&twice_cube, n) else {
        return report.rejected("n^3 s^3 is negative");
    };
    let report = report.real("s", s).real("s_7sig", round_significant(s, 7));
    if s >= 1.0 {
        return report.rejected("s >= 1");
    }
    let nf = n as f64;
    let correction = s - d as f64 + s * s / 2.0 - (d * (d + 1)) as f64 / (2.0 * nf);
    let log = (n - 2) as f64 * nf.ln() + (1.0 - s).ln() + correction;
    let linear = pow_n(n, n - 2) * (1.0 - s) * correction.exp();
    report.valued(log, linear)
}

/// Lower `a(n,d,m)` and upper `b(n,d,k)` bounds on `t(Ḡ)` for a regular
/// bipartite `g`, from exact even closed-walk counts.
pub fn thm3_bounds(g: &Graph, m: usize, k: usize) -> Result<(BoundReport, BoundReport)> {
    g.require_undirected("thm3_bounds")?;
    if m == 0 || k == 0 {
        return Err(Error::InvalidParameter("thm3 needs m >= 1 and k >= 1".into()));
    }
    let d = g.regular_degree().degree.ok_or(Error::RegularityRequired)?;
    if !g.is_bipartite() {
        return Err(Error::BipartiteRequired);
    }
    let n = g.order();
    let walks = closed_walk_counts(g, 2 * m.max(k))?;
    let c = n - d;
    let c_big = BigUint::from(c);
    let w_even = |s: usize| walks.get(2 * s);
    let scaled = |s: usize| ratio(w_even(s), &num::pow(c_big.clone(), 2 * s));

    let base_log = n as f64 * (c as f64).ln() - 2.0 * (n as f64).ln();
    let base = BigRational::new(BigInt::from(num::pow(c_big.clone(), n)), BigInt::from(n * n));
    let base_linear = base.to_f64().unwrap_or(f64::INFINITY);

    let upper = {
        let exact_sum: BigRational = (1..=k)
            .map(|s| {
                BigRational::new(
                    BigInt::from(w_even(s).clone()),
                    BigInt::from(num::pow(c_big.clone(), 2 * s)) * BigInt::from(2 * s),
                )
            })
            .sum();
        let sum = exact_sum.to_f64().unwrap_or(f64::NAN);
        // Rounded upward: b(n,d,k) tends to t(Ḡ) itself, so a nearest-rounded
        // value can land below the integer it bounds.
        let linear = if exact_sum.is_zero() {
            Interval::from_rational(&base, UPPER_BITS).upper_bound_f64()
        } else {
            Interval::from_rational(&-exact_sum, UPPER_BITS)
                .exp()
                .scale_positive(&base)
                .upper_bound_f64()
        };
        BoundReport::new(BoundName::Thm3Upper, BoundTarget::Complement)
            .int("n", n)
            .int("d", d)
            .int("k", k)
            .valued(base_log - sum, linear)
    };

    let lower = BoundReport::new(BoundName::Thm3Lower, BoundTarget::Complement)
        .int("n", n)
        .int("d", d)
        .int("m", m);
    let lower = if w_even(m) >= &num::pow(c_big.clone(), 2 * m) {
        let y = to_f64(w_even(m)).powf(1.0 / (2 * m) as f64) / c as f64;
        lower.real("y", y).rejected("y >= 1")
    } else {
        let y = to_f64(w_even(m)).powf(1.0 / (2 * m) as f64) / c as f64;
        let correction: f64 = (1..m)
            .map(|s| (scaled(s) - y.powi(2 * s as i32)) / (2 * s) as f64)
            .sum();
        let root = (1.0 - y * y).sqrt();
        let linear = thm3_lower_linear(&base, &walks, &c_big, m)
            .unwrap_or(base_linear * root * (-correction).exp());
        lower
            .real("y", y)
            .valued(base_log + root.ln() - correction, linear)
    };
    Ok((lower, upper))
}

/// `a(n,d,m)` rounded down. It is evaluated at a rational `ŷ >= y`, which
/// only lowers it since the bound decreases in `y`.
fn thm3_lower_linear(base: &BigRational, walks: &WalkTable, c: &BigUint, m: usize) -> Option<f64> {
    let bits = UPPER_BITS as usize;
    let two_m = 2 * m;
    let shifted = walks.get(two_m) << (two_m * bits);
    let c_pow = num::pow(c.clone(), two_m);
    let mut root = (&shifted / &c_pow).nth_root(two_m as u32);
    if num::pow(root.clone(), two_m) * &c_pow != shifted {
        root += 1u32;
    }
    let y_hat = BigRational::new(root.into(), BigInt::one() << bits);
    if y_hat >= BigRational::one() {
        return None;
    }
    let y2 = &y_hat * &y_hat;
    let correction: BigRational = (1..m)
        .map(|s| {
            let w = BigRational::new(
                walks.get(2 * s).clone().into(),
                num::pow(c.clone(), 2 * s).into(),
            );
            (w - num::pow(y2.clone(), s)) / BigInt::from(2 * s)
        })
        .sum();
    let gap = BigRational::one() - &y2;
    let sqrt_lo = ((gap.numer() << (2 * bits)) / gap.denom()).sqrt();
    if sqrt_lo.is_zero() {
        return Some(0.0);
    }
    let factor = base * BigRational::new(sqrt_lo, BigInt::one() << bits);
    let value = if correction.is_zero() {
        Interval::from_rational(&factor, UPPER_BITS).lower_bound_f64()
    } else {
        Interval::from_rational(&-correction, UPPER_BITS)
            .exp()
            .scale_positive(&factor)
            .lower_bound_f64()
    };
    Some(value.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{named_graph, petersen};
    use crate::exact::{spanning_tree_count, triangle_count};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn prop1_examples() {
        let r = prop1_lower(10, 9);
        assert!(r.preconditions_ok);
        assert_eq!(r.linear_value, Some(1e8));

        let r = prop1_lower(10, 6);
        assert!(!r.preconditions_ok);
        assert_eq!(r.reason, "(n-1-d)(n-d) >= n");
        assert_eq!(r.log_value, None);
        assert_eq!(r.linear_value, None);

        // 8-regular on 10 vertices is the complement of a perfect matching.
        let r = prop1_lower(10, 8);
        let value = r.linear_value.unwrap();
        assert!(close(value, 3.18e7, 0.01e7), "{value}");
        let matching = Graph::new(10, (0..5).map(|i| (2 * i, 2 * i + 1))).unwrap();
        let exact = spanning_tree_count(&matching.complement().unwrap()).unwrap();
        assert_eq!(exact, BigUint::from(32_768_000u32));
        assert!(value <= 32_768_000.0);
    }

    #[test]
    fn thm2_examples() {
        let h = named_graph("paper-h").unwrap();
        let r = thm2_lower(&h, 3).unwrap();
        assert!(close(r.log_value.unwrap(), 14.31436, 1e-4));
        assert!(close(r.linear_value.unwrap().round(), 1_646_819.0, 2.0));

        let r = thm2_lower(&Graph::empty(7).unwrap(), 2).unwrap();
        assert_eq!(r.linear_value, Some(7f64.powi(5)));

        let r = thm2_lower(&petersen(), 2).unwrap();
        assert!(!r.preconditions_ok);

        let r = thm2_lower(&petersen(), 3).unwrap();
        assert!(r.preconditions_ok);
        assert!(r.linear_value.unwrap() <= 2_048_000.0);

        assert!(matches!(thm2_lower(&petersen(), 1), Err(Error::InvalidParameter(_))));
        assert_eq!(thm2_lower(&Graph::star(5).unwrap(), 2), Err(Error::RegularityRequired));
    }

    #[test]
    fn prop2_examples() {
        let r = prop2_lower(10, 6, &BigUint::from(27u8));
        assert!(close(r.param("s").unwrap(), 0.8051748, 1e-6));
        assert_eq!(r.param("s_7sig"), Some(0.8051748));
        assert!(close(r.log_value.unwrap(), 14.31436, 1e-4));
        assert!(close(r.linear_value.unwrap().round(), 1_646_819.0, 2.0));
        assert!(r.linear_value.unwrap() < 2_080_524.0);

        for n in 3..12usize {
            let r = prop2_lower(n, n - 1, &BigUint::from(n * (n - 1) * (n - 2) / 6));
            assert_eq!(r.param("s"), Some(0.0));
            assert_eq!(r.linear_value, Some((n as f64).powi(n as i32 - 2)));
        }

        let r = prop2_lower(10, 6, &BigUint::from(30u8));
        assert!(close(r.param("s").unwrap(), 540f64.cbrt() / 10.0, 1e-12));
        assert!(close(r.param("s").unwrap(), 0.81433, 1e-5));
        assert!(r.linear_value.unwrap() <= 2_048_000.0);
    }

    #[test]
    fn prop2_rejects_out_of_range() {
        // Sparse graphs push s past 1.
        let r = prop2_lower(10, 2, &BigUint::zero());
        assert!(!r.preconditions_ok);
        assert_eq!(r.reason, "s >= 1");
        // An impossible triangle count inflates s as well.
        let r = prop2_lower(10, 9, &BigUint::from(1000u32));
        assert!(!r.preconditions_ok);
        assert_eq!(r.reason, "s >= 1");
        assert!(!prop2_lower(10, 10, &BigUint::zero()).preconditions_ok);
    }

    #[test]
    fn complement_form_matches_prop2() {
        for g in [petersen(), named_graph("paper-h").unwrap(), named_graph("paper-bipartite").unwrap()] {
            let n = g.order();
            let d = g.regular_degree().degree.unwrap();
            let delta = triangle_count(&g).unwrap();
            let c = g.complement().unwrap();
            let dc = c.regular_degree().degree.unwrap();
            let delta_c = triangle_count(&c).unwrap();
            let direct = complement_triangle_lower(n, d, &delta);
            let via = prop2_lower(n, dc, &delta_c);
            assert!(close(direct.param("s").unwrap(), via.param("s").unwrap(), 1e-12));
            assert!(close(direct.log_value.unwrap(), via.log_value.unwrap(), 1e-10));
        }
    }

    #[test]
    fn thm3_example_table() {
        let g = named_graph("paper-bipartite").unwrap();
        let expected = [
            (2_029_504.0, 2_039_113.0),
            (2_033_738.0, 2_034_698.0),
            (2_033_985.0, 2_034_111.0),
            (2_034_007.0, 2_034_025.0),
            (2_034_010.0, 2_034_012.0),
        ];
        for (j, (a, b)) in (2..=6).zip(expected) {
            let (lo, hi) = thm3_bounds(&g, j, j).unwrap();
            let lo = lo.linear_value.unwrap();
            let hi = hi.linear_value.unwrap();
            assert!(close(lo.round(), a, 2.0), "a at {j}: {lo}");
            assert!(close(hi.round(), b, 2.0), "b at {j}: {hi}");
        }
    }

    #[test]
    fn thm3_degenerate_cases() {
        let (lo, hi) = thm3_bounds(&Graph::empty(8).unwrap(), 3, 4).unwrap();
        assert_eq!(lo.linear_value, Some(8f64.powi(6)));
        assert_eq!(hi.linear_value, Some(8f64.powi(6)));

        let k55 = Graph::complete_bipartite(5, 5).unwrap();
        let (lo, hi) = thm3_bounds(&k55, 1, 1).unwrap();
        assert!(!lo.preconditions_ok);
        assert!(close(lo.param("y").unwrap(), 50f64.sqrt() / 5.0, 1e-12));
        let expected = 5f64.powi(10) / 100.0 * (-1f64).exp();
        assert!(close(hi.linear_value.unwrap(), expected, 1e-6));
        assert!(spanning_tree_count(&k55.complement().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn thm3_errors() {
        assert_eq!(thm3_bounds(&petersen(), 2, 2), Err(Error::BipartiteRequired));
        assert_eq!(thm3_bounds(&Graph::path(4).unwrap(), 2, 2), Err(Error::RegularityRequired));
        assert!(matches!(
            thm3_bounds(&Graph::cycle(6).unwrap(), 0, 2),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn upper_bound_is_monotone() {
        let g = named_graph("paper-bipartite").unwrap();
        let values: Vec<f64> = (1..=12)
            .map(|k| thm3_bounds(&g, 1, k).unwrap().1.log_value.unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn linear_matches_log() {
        let g = named_graph("paper-bipartite").unwrap();
        let mut reports = vec![prop1_lower(10, 8), prop2_lower(10, 6, &BigUint::from(27u8))];
        reports.push(thm2_lower(&named_graph("paper-h").unwrap(), 4).unwrap());
        let (a, b) = thm3_bounds(&g, 4, 4).unwrap();
        reports.extend([a, b]);
        for r in reports {
            let (log, lin) = (r.log_value.unwrap(), r.linear_value.unwrap());
            assert!((lin.ln() - log).abs() < 1e-12, "{:?}", r.name);
        }
    }

    #[test]
    fn rounding_to_seven_digits() {
        assert_eq!(round_significant(0.805174806, 7), 0.8051748);
        assert_eq!(round_significant(14.314357, 7), 14.31436);
        assert_eq!(round_significant(0.0, 7), 0.0);
    }
}
