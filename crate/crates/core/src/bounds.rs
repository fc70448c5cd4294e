//! Exact evaluation of the extremal bounds and comparison against measured
//! counts.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::cliques::count_kr;
use crate::constructions::count_kr_turan_closed;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{int, pow, ratio, serde_bigint, serde_pq, Rational};
use crate::setsystem::IntersectionSpec;

/// Outcome of comparing a measured count with a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    /// The hypothesis of the bound fails, or the count lies outside the
    /// range where the bound is claimed.
    NotApplicable,
    /// No measured count was supplied.
    Unmeasured,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::NotApplicable => "not-applicable",
            Verdict::Unmeasured => "unmeasured",
        })
    }
}

/// Whether the hypothesis attached to a bound is satisfied. `Unknown` is for
/// bounds whose threshold is not explicit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precondition {
    Met,
    Unmet,
    Unknown,
}

impl Precondition {
    pub fn from_bool(met: bool) -> Self {
        if met {
            Precondition::Met
        } else {
            Precondition::Unmet
        }
    }

    pub fn as_option(self) -> Option<bool> {
        match self {
            Precondition::Met => Some(true),
            Precondition::Unmet => Some(false),
            Precondition::Unknown => None,
        }
    }
}

impl Serialize for Precondition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_option().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub name: String,
    #[serde(serialize_with = "serde_pq::serialize")]
    pub value: Rational,
    #[serde(serialize_with = "serde_bigint::serialize")]
    pub measured: Option<BigInt>,
    pub verdict: Verdict,
    pub precondition_met: Precondition,
    pub precondition_note: String,
}

impl BoundReport {
    /// Builds a report whose verdict follows from `measured <= value` and
    /// the precondition.
    pub fn compare(
        name: impl Into<String>,
        value: Rational,
        measured: Option<BigInt>,
        precondition: Precondition,
        note: impl Into<String>,
    ) -> Self {
        let mut note = note.into();
        let verdict = match &measured {
            None => Verdict::Unmeasured,
            Some(m) => {
                let within = int(m.clone()) <= value;
                match (precondition, within) {
                    (Precondition::Met, true) | (Precondition::Unknown, true) => Verdict::Holds,
                    (Precondition::Met, false) => Verdict::Violated,
                    (Precondition::Unmet, within) => {
                        note.push_str(if within {
                            "; measured count is within the value anyway"
                        } else {
                            "; measured count exceeds the value, outside the proven range"
                        });
                        Verdict::NotApplicable
                    }
                    (Precondition::Unknown, false) => {
                        note.push_str("; measured count exceeds the value, outside the proven range");
                        Verdict::NotApplicable
                    }
                }
            }
        };
        BoundReport {
            name: name.into(),
            value,
            measured,
            verdict,
            precondition_met: precondition,
            precondition_note: note,
        }
    }

    /// A report for an input that fails the hypothesis outright.
    pub fn not_applicable(name: impl Into<String>, value: Rational, note: impl Into<String>) -> Self {
        BoundReport {
            name: name.into(),
            value,
            measured: None,
            verdict: Verdict::NotApplicable,
            precondition_met: Precondition::Unmet,
            precondition_note: note.into(),
        }
    }

    /// Anything but a violation.
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Violated
    }
}

fn check_n_at_least_r(n: usize, r: usize) -> Result<()> {
    if n < r {
        return Err(Error::invalid(format!("n = {n} must be at least r = {r}")));
    }
    Ok(())
}

fn big_pow(base: usize, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

fn binomial_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `∏_{ℓ∈L} (n − ℓ)/(r − ℓ)`.
pub fn def_bound(n: usize, spec: &IntersectionSpec) -> Result<Rational> {
    let r = spec.r();
    check_n_at_least_r(n, r)?;
    Ok(spec
        .values()
        .into_iter()
        .map(|l| ratio(n - l, r - l))
        .fold(Rational::one(), |acc, f| acc * f))
}

/// `n ≥ 2^r · r³`.
pub fn def_precondition(n: usize, r: usize) -> bool {
    BigInt::from(n) >= big_pow(2, r) * big_pow(r, 3)
}

pub fn def_report(n: usize, spec: &IntersectionSpec, measured: Option<BigInt>) -> Result<BoundReport> {
    let value = def_bound(n, spec)?;
    let r = spec.r();
    Ok(BoundReport::compare(
        "def",
        value,
        measured,
        Precondition::from_bool(def_precondition(n, r)),
        format!("requires n >= 2^r * r^3 = {}", big_pow(2, r) * big_pow(r, 3)),
    ))
}

/// `C(n − t, r − t)`.
pub fn ekr_bound(n: usize, r: usize, t: usize) -> Result<BigInt> {
    if t == 0 || t >= r {
        return Err(Error::invalid(format!("need r > t >= 1, got r = {r}, t = {t}")));
    }
    check_n_at_least_r(n, r)?;
    Ok(binomial_big(n - t, r - t))
}

/// The threshold on `n` is not explicit, so the precondition is unknown.
pub fn ekr_report(n: usize, r: usize, t: usize, measured: Option<BigInt>) -> Result<BoundReport> {
    let value = int(ekr_bound(n, r, t)?);
    Ok(BoundReport::compare(
        "ekr",
        value,
        measured,
        Precondition::Unknown,
        "holds for n >= n0(r, t) with n0 unspecified",
    ))
}

/// `(1 − 1/(3r)) · ∏_{ℓ∈L} (n − ℓ)/(r − ℓ)` for `2 ≤ |L| ≤ r − 1`.
pub fn def_turan_bound(n: usize, spec: &IntersectionSpec) -> Result<Rational> {
    let r = spec.r();
    if spec.len() < 2 || spec.len() + 1 > r {
        return Err(Error::invalid(format!(
            "|L| = {} must lie in [2, r - 1] = [2, {}]",
            spec.len(),
            r.saturating_sub(1)
        )));
    }
    Ok(def_bound(n, spec)? * (Rational::one() - ratio(1, 3 * r)))
}

/// `n ≥ (2r)^{r+1}`.
pub fn def_turan_precondition(n: usize, r: usize) -> bool {
    BigInt::from(n) >= big_pow(2 * r, r + 1)
}

pub fn def_turan_report(
    n: usize,
    spec: &IntersectionSpec,
    measured: Option<BigInt>,
) -> Result<BoundReport> {
    let value = def_turan_bound(n, spec)?;
    let r = spec.r();
    Ok(BoundReport::compare(
        "def-turan",
        value,
        measured,
        Precondition::from_bool(def_turan_precondition(n, r)),
        format!("requires n >= (2r)^(r+1) = {}", big_pow(2 * r, r + 1)),
    ))
}

fn check_two_set(n: usize, r: usize, l1: usize, l2: usize) -> Result<()> {
    if !(l1 < l2 && l2 < r) {
        return Err(Error::invalid(format!(
            "need 0 <= l1 < l2 <= r - 1, got l1 = {l1}, l2 = {l2}, r = {r}"
        )));
    }
    check_n_at_least_r(n, r)
}

/// `(1 − (ℓ2 − ℓ1)/(2(r − ℓ1))) · (n − ℓ1)² / ((r − ℓ1)(r − ℓ2))`.
pub fn two_set_bound(n: usize, r: usize, l1: usize, l2: usize) -> Result<Rational> {
    check_two_set(n, r, l1, l2)?;
    let lead = Rational::one() - ratio(l2 - l1, 2 * (r - l1));
    Ok(lead * ratio((n - l1) * (n - l1), (r - l1) * (r - l2)))
}

/// The weaker form `(1 − 1/(3r)) · (n − ℓ1)(n − ℓ2) / ((r − ℓ1)(r − ℓ2))`.
pub fn two_set_chain_bound(n: usize, r: usize, l1: usize, l2: usize) -> Result<Rational> {
    check_two_set(n, r, l1, l2)?;
    let lead = Rational::one() - ratio(1, 3 * r);
    Ok(lead * ratio(BigInt::from(n - l1) * (n - l2), (r - l1) * (r - l2)))
}

/// `n ≥ 5r⁴`.
pub fn two_set_precondition(n: usize, r: usize) -> bool {
    BigInt::from(n) >= BigInt::from(5) * big_pow(r, 4)
}

pub fn two_set_report(
    n: usize,
    r: usize,
    l1: usize,
    l2: usize,
    measured: Option<BigInt>,
) -> Result<BoundReport> {
    let value = two_set_bound(n, r, l1, l2)?;
    Ok(BoundReport::compare(
        "two-set",
        value,
        measured,
        Precondition::from_bool(two_set_precondition(n, r)),
        format!("requires n >= 5r^4 = {}", BigInt::from(5) * big_pow(r, 4)),
    ))
}

fn check_l_r(ell: usize, r: usize) -> Result<()> {
    if !(ell >= r && r >= 2) {
        return Err(Error::invalid(format!("need l >= r >= 2, got l = {ell}, r = {r}")));
    }
    Ok(())
}

/// `N(K_r, g)² ≤ C(ℓ, r)² · (|E| / C(ℓ, 2))^r` for `K_{ℓ+1}`-free `g`.
///
/// The report's value and measured count are both squared.
pub fn fisher_ryan_check(g: &Graph, ell: usize, r: usize) -> Result<BoundReport> {
    check_l_r(ell, r)?;
    let density = ratio(g.edge_count(), binomial_big(ell, 2));
    let c = int(binomial_big(ell, r));
    let value = &c * &c * pow(&density, r);
    if count_kr(g, ell + 1)? > 0 {
        return Ok(BoundReport::not_applicable(
            "fisher-ryan-squared",
            value,
            format!("graph contains K_{}", ell + 1),
        ));
    }
    let count = BigInt::from(count_kr(g, r)?);
    Ok(BoundReport::compare(
        "fisher-ryan-squared",
        value,
        Some(&count * &count),
        Precondition::Met,
        format!("graph is K_{}-free; both sides squared", ell + 1),
    ))
}

/// `N(K_r, g) ≤ N(K_r, T(n, ℓ))` for `K_{ℓ+1}`-free `g`.
pub fn erdos_check(g: &Graph, ell: usize, r: usize) -> Result<BoundReport> {
    if ell == 0 || r == 0 {
        return Err(Error::invalid(format!("need l >= 1 and r >= 1, got l = {ell}, r = {r}")));
    }
    let value = int(count_kr_turan_closed(g.n(), ell, r)?);
    if count_kr(g, ell + 1)? > 0 {
        return Ok(BoundReport::not_applicable(
            "erdos",
            value,
            format!("graph contains K_{}", ell + 1),
        ));
    }
    Ok(BoundReport::compare(
        "erdos",
        value,
        Some(BigInt::from(count_kr(g, r)?)),
        Precondition::Met,
        format!("graph is K_{}-free", ell + 1),
    ))
}

/// Evaluates both sides of `(1 + x)^r ≤ 1 + rx / (1 − (r − 1)x)` for
/// `r ≥ 2` and `−1 ≤ x < 1/(r − 1)`.
pub fn fact_inequality(r: usize, x: &Rational) -> Result<bool> {
    if r < 2 {
        return Err(Error::invalid(format!("need r >= 2, got {r}")));
    }
    if *x < int(-1) || *x >= ratio(1, r - 1) {
        return Err(Error::invalid(format!(
            "x = {} outside [-1, 1/{})",
            crate::rational::to_pq(x),
            r - 1
        )));
    }
    let lhs = pow(&(Rational::one() + x), r);
    let rhs = Rational::one() + int(r) * x / (Rational::one() - int(r - 1) * x);
    Ok(lhs <= rhs)
}

/// Both forms of the edge-removal bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalBound {
    /// `2C(ℓ,2)(n/ℓ)² m / (r C(ℓ,r)(n/ℓ)^r + (r − 2)m)`.
    #[serde(serialize_with = "serde_pq::serialize")]
    pub value: Rational,
    /// `2C(ℓ,2) m / (r C(ℓ,r)(n/ℓ)^{r−2})`.
    #[serde(serialize_with = "serde_pq::serialize")]
    pub simple: Rational,
}

impl RemovalBound {
    pub fn chain_holds(&self) -> bool {
        self.value <= self.simple
    }
}

pub fn furedi_removal_bound(n: usize, ell: usize, r: usize, m: &Rational) -> Result<RemovalBound> {
    check_l_r(ell, r)?;
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if *m < Rational::zero() {
        return Err(Error::invalid("m must be non-negative"));
    }
    let part = ratio(n, ell);
    let c2 = int(binomial_big(ell, 2));
    let cr = int(binomial_big(ell, r));
    let rr = int(r);
    let value = int(2) * &c2 * pow(&part, 2) * m
        / (&rr * &cr * pow(&part, r) + int(r - 2) * m);
    let simple = int(2) * &c2 * m / (&rr * &cr * pow(&part, r - 2));
    Ok(RemovalBound { value, simple })
}

/// `(ℓ2 − ℓ1) | (ℓ3 − ℓ2) | … | (ℓs − ℓ_{s−1}) | (r − ℓs)`.
pub fn divisibility_chain(spec: &IntersectionSpec) -> Result<bool> {
    let v = spec.values();
    if v.len() < 2 {
        return Err(Error::invalid("the divisibility chain needs |L| >= 2"));
    }
    let mut gaps: Vec<usize> = v.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.push(spec.r() - v[v.len() - 1]);
    Ok(gaps.windows(2).all(|w| w[1] % w[0] == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::turan_graph;

    fn spec(r: usize, l: &[usize]) -> IntersectionSpec {
        IntersectionSpec::new(r, l.iter().copied()).unwrap()
    }

    #[test]
    fn def_examples() {
        assert_eq!(def_bound(9, &spec(3, &[0, 1])).unwrap(), int(12));
        assert_eq!(def_bound(12, &spec(4, &[1, 2, 3])).unwrap(), int(165));
        assert_eq!(def_bound(10, &spec(3, &[0])).unwrap(), ratio(10, 3));
        assert!(def_bound(2, &spec(3, &[0])).is_err());
        assert!(def_precondition(2usize.pow(3) * 27, 3));
        assert!(!def_precondition(215, 3));
    }

    #[test]
    fn ekr_examples() {
        assert_eq!(ekr_bound(10, 3, 1).unwrap(), BigInt::from(36));
        assert_eq!(ekr_bound(8, 4, 2).unwrap(), BigInt::from(15));
        assert_eq!(ekr_bound(11, 4, 3).unwrap(), BigInt::from(8));
        assert!(ekr_bound(10, 3, 3).is_err());
        assert!(ekr_bound(10, 3, 0).is_err());
    }

    #[test]
    fn ekr_is_def_on_t_intersecting() {
        for r in 2..=8 {
            for t in 1..r {
                let s = IntersectionSpec::t_intersecting(r, t).unwrap();
                for n in r..=100 {
                    assert_eq!(int(ekr_bound(n, r, t).unwrap()), def_bound(n, &s).unwrap());
                }
            }
        }
    }

    #[test]
    fn def_turan_examples() {
        assert_eq!(def_turan_bound(9, &spec(3, &[0, 1])).unwrap(), ratio(32, 3));
        assert_eq!(def_turan_bound(100, &spec(4, &[0, 2])).unwrap(), ratio(13475, 12));
        assert!(def_turan_bound(9, &spec(3, &[0])).is_err());
        assert!(def_turan_bound(9, &spec(3, &[0, 1, 2])).is_err());
        let s = spec(5, &[1, 3]);
        assert_eq!(
            def_turan_bound(40, &s).unwrap() / def_bound(40, &s).unwrap(),
            ratio(14, 15)
        );
        assert!(def_turan_precondition(6usize.pow(4), 3));
        assert!(!def_turan_precondition(6usize.pow(4) - 1, 3));
    }

    #[test]
    fn two_set_examples() {
        assert_eq!(two_set_bound(405, 3, 0, 1).unwrap(), ratio(273375, 12));
        assert!(two_set_precondition(405, 3));
        assert!(!two_set_precondition(404, 3));
        assert!(two_set_bound(405, 3, 1, 1).is_err());
        assert!(two_set_bound(405, 3, 1, 3).is_err());
        for r in 2..=6 {
            for l1 in 0..r {
                for l2 in l1 + 1..r {
                    let lead = Rational::one() - ratio(l2 - l1, 2 * (r - l1));
                    assert!(lead > ratio(1, 2));
                }
            }
        }
    }

    #[test]
    fn two_set_chain_above_threshold() {
        for r in 2usize..=5 {
            let n0 = 5 * r.pow(4);
            for n in [n0, n0 + 1, n0 + 17, 2 * n0, 10 * n0] {
                for l1 in 0..r {
                    for l2 in l1 + 1..r {
                        assert!(
                            two_set_bound(n, r, l1, l2).unwrap()
                                <= two_set_chain_bound(n, r, l1, l2).unwrap(),
                            "n = {n}, r = {r}, l = ({l1}, {l2})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fisher_ryan_on_turan_graphs() {
        for ell in 2..=4 {
            for n in 1..=12 {
                let g = turan_graph(n, ell).unwrap();
                for r in 2..=ell {
                    let rep = fisher_ryan_check(&g, ell, r).unwrap();
                    assert_eq!(rep.verdict, Verdict::Holds);
                    let equal = int(rep.measured.clone().unwrap()) == rep.value;
                    // Equality also holds trivially for the edgeless T(1, ℓ).
                    let expect = r == 2 || n % ell == 0 || n == 1;
                    assert_eq!(equal, expect, "T({n},{ell}), r = {r}");
                }
            }
        }
        let empty = fisher_ryan_check(&Graph::empty(5), 3, 3).unwrap();
        assert_eq!(empty.value, int(0));
        assert_eq!(empty.verdict, Verdict::Holds);
        let k4 = fisher_ryan_check(&Graph::complete(4), 2, 2).unwrap();
        assert_eq!(k4.verdict, Verdict::NotApplicable);
        assert!(fisher_ryan_check(&k4_graph(), 2, 3).is_err());
    }

    fn k4_graph() -> Graph {
        Graph::complete(4)
    }

    #[test]
    fn erdos_examples() {
        let rep = erdos_check(&turan_graph(7, 3).unwrap(), 3, 3).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
        assert_eq!(rep.value, int(12));
        assert_eq!(erdos_check(&Graph::complete(4), 2, 2).unwrap().verdict, Verdict::NotApplicable);
    }

    #[test]
    fn fact_examples() {
        assert!(fact_inequality(3, &int(0)).unwrap());
        for r in 2..=9 {
            assert!(fact_inequality(r, &int(-1)).unwrap());
            assert!(fact_inequality(r, &(ratio(1, r - 1) - ratio(1, 1000))).unwrap());
            assert!(fact_inequality(r, &ratio(1, r - 1)).is_err());
        }
        assert!(fact_inequality(3, &ratio(-3, 2)).is_err());
        assert!(fact_inequality(1, &int(0)).is_err());
    }

    #[test]
    fn fact_at_minus_one_is_tight() {
        // Left side 0; right side 1 - r/r = 0.
        let r = 4;
        let x = int(-1);
        let rhs = Rational::one() + int(r) * &x / (Rational::one() - int(r - 1) * &x);
        assert_eq!(rhs, int(0));
    }

    #[test]
    fn removal_examples() {
        let b = furedi_removal_bound(12, 3, 3, &int(2)).unwrap();
        assert_eq!(b.value, ratio(96, 97));
        assert_eq!(b.simple, int(1));
        assert!(b.chain_holds());
        let zero = furedi_removal_bound(10, 4, 2, &int(0)).unwrap();
        assert_eq!((zero.value, zero.simple), (int(0), int(0)));
        assert!(furedi_removal_bound(10, 2, 3, &int(1)).is_err());
        assert!(furedi_removal_bound(0, 3, 3, &int(1)).is_err());
    }

    #[test]
    fn divisibility_examples() {
        assert!(divisibility_chain(&spec(7, &[1, 3, 5])).unwrap());
        assert!(!divisibility_chain(&spec(6, &[0, 1, 3])).unwrap());
        assert!(divisibility_chain(&IntersectionSpec::t_intersecting(6, 2).unwrap()).unwrap());
        assert!(divisibility_chain(&spec(6, &[2])).is_err());
    }

    #[test]
    fn report_verdicts() {
        let s = spec(3, &[0, 1]);
        let ok = def_report(9, &s, Some(BigInt::from(12))).unwrap();
        assert_eq!((ok.verdict, ok.precondition_met), (Verdict::NotApplicable, Precondition::Unmet));
        let big = def_report(216, &s, Some(BigInt::from(1))).unwrap();
        assert_eq!(big.verdict, Verdict::Holds);
        let bad = def_report(216, &s, Some(BigInt::from(1_000_000))).unwrap();
        assert_eq!(bad.verdict, Verdict::Violated);
        assert_eq!(def_report(9, &s, None).unwrap().verdict, Verdict::Unmeasured);
        let e = ekr_report(10, 3, 1, Some(BigInt::from(40))).unwrap();
        assert_eq!((e.verdict, e.precondition_met), (Verdict::NotApplicable, Precondition::Unknown));
        let json = serde_json::to_value(&ok).unwrap();
        assert_eq!(json["value"], "12/1");
        assert_eq!(json["precondition_met"], false);
        assert_eq!(json["measured"], 12);
        assert_eq!(json["verdict"], "not-applicable");
        assert!(serde_json::to_value(&e).unwrap()["precondition_met"].is_null());
    }
}
