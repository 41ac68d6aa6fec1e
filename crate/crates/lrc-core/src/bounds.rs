//! Upper bounds on the parameters of locally repairable codes, and the
//! classical distance/dimension estimators they are built from.
//!
//! # Estimators
//!
//! `d_opt_upper(n, k, q)` bounds the best minimum distance of any [n, k]
//! linear code over GF(q); `k_opt_upper(n, d, q)` bounds the best dimension
//! at a required distance. Two modes:
//!
//! - **closed form**: the least of the Singleton bound `n - k + 1`, the
//!   Plotkin-style bound `floor(n q^(k-1) (q-1) / (q^k - 1))`, and the
//!   largest d admitted by the Griesmer inequality
//!   `sum_{i<k} ceil(d / q^i) <= n`;
//! - **exhaustive**: scan all systematic generator matrices `[I | A]` (every
//!   linear code is column-permutation equivalent to a systematic one, and
//!   distance is invariant under such permutations), capped at 2^24
//!   candidate matrices.
//!
//! # Locality bounds
//!
//! - [`singleton_like`]: `d <= n - k - ceil(k/r) + 2` for all-symbol
//!   locality r;
//! - [`general_bound`]: `d <= min_t d_opt_upper(n - t(r+1), k - tr)` over
//!   `t = 1 ..= ceil(k/r) - 1`, which is field-size aware and never looser
//!   than the Singleton-like bound at the same estimator;
//! - [`cm_bound_k`]: `k <= min_t [ tr + k_opt_upper(n - t(r+1), d) ]`, the
//!   dimension form used to certify distance optimality over a fixed field;
//! - [`availability_bound`]: `d <= n - k - ceil((s(k-1)+1)/(s(r-1)+1)) + 2`
//!   when every symbol has s disjoint repair groups of size at most r (the
//!   s = 1 case coincides with the Singleton-like bound).

use core::fmt;

use alloc::vec::Vec;

use crate::code::enumerate_span;
use crate::gf::{factor_prime_power, Field};

/// Cap on candidate matrices in exhaustive estimator mode.
pub const EXHAUSTIVE_CANDIDATE_CAP: u64 = 1 << 24;

/// Errors from bound computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundsError {
    /// Parameters outside the bound's domain.
    Domain(&'static str),
    /// The bound minimizes over an empty range (e.g. k <= r leaves no
    /// shortening steps).
    EmptyRange(&'static str),
    /// Exhaustive mode would exceed its candidate budget.
    CapExceeded { required: u128, cap: u64 },
    /// q is not a prime power (exhaustive mode needs the actual field).
    NotPrimePower(u64),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::Domain(what) => write!(f, "parameters out of domain: {what}"),
            BoundsError::EmptyRange(what) => write!(f, "bound ranges over no cases: {what}"),
            BoundsError::CapExceeded { required, cap } => {
                write!(f, "exhaustive estimation needs {required} candidates, over the cap {cap}")
            }
            BoundsError::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
        }
    }
}

impl core::error::Error for BoundsError {}

/// How `d_opt_upper` / `k_opt_upper` estimate classical code parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorMode {
    /// min(Singleton, Plotkin, Griesmer); fast, valid for every size.
    ClosedForm,
    /// Exact optimum by scanning all systematic generator matrices; only
    /// for very small parameters (capped at [`EXHAUSTIVE_CANDIDATE_CAP`]).
    Exhaustive,
}

fn ceil_div(a: u128, b: u128) -> u128 {
    a.div_ceil(b)
}

/// `d <= n - k - ceil(k/r) + 2` for an [n, k] code of all-symbol locality r.
pub fn singleton_like(n: usize, k: usize, r: usize) -> Result<i64, BoundsError> {
    if r == 0 {
        return Err(BoundsError::Domain("r must be at least 1"));
    }
    if k == 0 || k >= n {
        return Err(BoundsError::Domain("need 1 <= k < n"));
    }
    let ceil_kr = ceil_div(k as u128, r as u128) as i64;
    Ok((n as i64) - (k as i64) - ceil_kr + 2)
}

/// Rate window `k (r+1) <= n r`: necessary for all-symbol locality r.
pub fn rate_ok(n: usize, k: usize, r: usize) -> bool {
    (k as u128) * (r as u128 + 1) <= (n as u128) * (r as u128)
}

/// Plotkin-style average-weight bound on d for an [n, k] code over GF(q):
/// `floor(n q^(k-1) (q-1) / (q^k - 1))`.
///
/// When q^k overflows u128 the asymptotic form `floor(n (q-1) / q) + 1` is
/// returned; it is provably no smaller than the exact floor, hence still an
/// upper bound (the difference term is below 1 at such sizes).
fn plotkin_max_d(n: usize, k: usize, q: u64) -> u128 {
    let n = n as u128;
    let q = q as u128;
    match q.checked_pow(k as u32) {
        Some(qk) if qk > 1 => {
            let num = n * (qk / q) * (q - 1);
            num / (qk - 1)
        }
        _ => n * (q - 1) / q + 1,
    }
}

/// Largest d satisfying the Griesmer inequality
/// `sum_{i=0}^{k-1} ceil(d / q^i) <= n`.
fn griesmer_max_d(n: usize, k: usize, q: u64) -> u128 {
    let n = n as u128;
    let q = q as u128;
    let mut best = 0u128;
    let mut d = 1u128;
    loop {
        let mut sum = 0u128;
        for i in 0..k as u32 {
            let qi = q.checked_pow(i).unwrap_or(u128::MAX);
            sum += ceil_div(d, qi);
            if sum > n {
                break;
            }
        }
        if sum > n {
            return best;
        }
        best = d;
        d += 1;
        // d never needs to exceed the Singleton value n - k + 1.
        if d > n {
            return best;
        }
    }
}

/// Upper bound on the best minimum distance of an [n, k] linear code over
/// GF(q). Requires 1 <= k <= n. In exhaustive mode, q must be an actual
/// prime power and the scan must fit the candidate cap.
pub fn d_opt_upper(n: usize, k: usize, q: u64, mode: EstimatorMode) -> Result<usize, BoundsError> {
    if k == 0 || k > n {
        return Err(BoundsError::Domain("need 1 <= k <= n"));
    }
    if q < 2 {
        return Err(BoundsError::Domain("need q >= 2"));
    }
    match mode {
        EstimatorMode::ClosedForm => {
            let singleton = (n - k + 1) as u128;
            let plotkin = plotkin_max_d(n, k, q);
            let griesmer = griesmer_max_d(n, k, q);
            Ok(singleton.min(plotkin).min(griesmer) as usize)
        }
        EstimatorMode::Exhaustive => d_opt_exhaustive(n, k, q),
    }
}

/// Exact best distance over all [n, k] codes: scan systematic generators.
fn d_opt_exhaustive(n: usize, k: usize, q: u64) -> Result<usize, BoundsError> {
    let (p, m) = factor_prime_power(q).ok_or(BoundsError::NotPrimePower(q))?;
    let field = Field::new(p, m).map_err(|_| BoundsError::NotPrimePower(q))?;
    if k == n {
        return Ok(1);
    }
    let free = k * (n - k);
    let candidates = (q as u128)
        .checked_pow(free as u32)
        .ok_or(BoundsError::CapExceeded { required: u128::MAX, cap: EXHAUSTIVE_CANDIDATE_CAP })?;
    let words = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let work = candidates.saturating_mul(words);
    if work > EXHAUSTIVE_CANDIDATE_CAP as u128 {
        return Err(BoundsError::CapExceeded { required: work, cap: EXHAUSTIVE_CANDIDATE_CAP });
    }
    // Generator [I | A]; iterate every A via an odometer over its entries.
    let mut a = alloc::vec![0u64; free];
    let mut best = 0usize;
    loop {
        // Assemble the generator rows for this A.
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(k);
        for r in 0..k {
            let mut row = alloc::vec![0u64; n];
            row[r] = 1;
            row[k..n].copy_from_slice(&a[r * (n - k)..(r + 1) * (n - k)]);
            rows.push(row);
        }
        let row_refs: Vec<&[u64]> = rows.iter().map(|r| r.as_slice()).collect();
        let mut min_w = usize::MAX;
        enumerate_span(&field, &row_refs, |_, w| {
            if w < min_w {
                min_w = w;
            }
        });
        if min_w != usize::MAX && min_w > best {
            best = min_w;
        }
        // Advance A.
        let mut i = 0;
        while i < free && a[i] == q - 1 {
            a[i] = 0;
            i += 1;
        }
        if i == free {
            break;
        }
        a[i] += 1;
    }
    Ok(best)
}

/// Upper bound on the best dimension of a length-n code over GF(q) with
/// minimum distance at least d: the largest k with `d_opt_upper >= d`,
/// or 0 when even k = 1 fails.
pub fn k_opt_upper(n: usize, d: usize, q: u64, mode: EstimatorMode) -> Result<usize, BoundsError> {
    if n == 0 || d == 0 {
        return Err(BoundsError::Domain("need n >= 1 and d >= 1"));
    }
    for k in (1..=n).rev() {
        if d_opt_upper(n, k, q, mode)? >= d {
            return Ok(k);
        }
    }
    Ok(0)
}

/// Field-size-aware distance bound for locality r:
/// `d <= min_t d_opt_upper(n - t(r+1), k - tr, q)` over
/// `t = 1 ..= ceil(k/r) - 1`. Returns the bound value and the smallest
/// minimizing t. Steps where the shortened code would have k' > n' are
/// skipped; requires k > r for a nonempty range.
pub fn general_bound(
    n: usize,
    k: usize,
    r: usize,
    q: u64,
    mode: EstimatorMode,
) -> Result<(usize, usize), BoundsError> {
    if r == 0 {
        return Err(BoundsError::Domain("r must be at least 1"));
    }
    if k == 0 || k >= n {
        return Err(BoundsError::Domain("need 1 <= k < n"));
    }
    if k <= r {
        return Err(BoundsError::EmptyRange("k <= r leaves no shortening steps"));
    }
    let t_max = (ceil_div(k as u128, r as u128) - 1) as usize;
    let mut best: Option<(usize, usize)> = None;
    for t in 1..=t_max {
        let cut = t * (r + 1);
        if cut >= n {
            continue;
        }
        let np = n - cut;
        let kp = k - t * r;
        if kp > np {
            continue;
        }
        let val = d_opt_upper(np, kp, q, mode)?;
        if best.is_none_or(|(bv, _)| val < bv) {
            best = Some((val, t));
        }
    }
    best.ok_or(BoundsError::EmptyRange("every shortening step is out of range"))
}

/// Field-size-aware dimension bound for locality r at distance d:
/// `k <= min_t [ tr + k_opt_upper(n - t(r+1), d, q) ]` over
/// `t = 1 ..= ceil(k_hint/r) - 1`, where `k_hint` is the dimension the code
/// claims. Returns the bound value and the smallest minimizing t.
pub fn cm_bound_k(
    n: usize,
    d: usize,
    r: usize,
    q: u64,
    k_hint: usize,
    mode: EstimatorMode,
) -> Result<(usize, usize), BoundsError> {
    if r == 0 {
        return Err(BoundsError::Domain("r must be at least 1"));
    }
    if d == 0 || k_hint == 0 {
        return Err(BoundsError::Domain("need d >= 1 and k_hint >= 1"));
    }
    if k_hint <= r {
        return Err(BoundsError::EmptyRange("k_hint <= r leaves no shortening steps"));
    }
    let t_max = (ceil_div(k_hint as u128, r as u128) - 1) as usize;
    let mut best: Option<(usize, usize)> = None;
    for t in 1..=t_max {
        let cut = t * (r + 1);
        if cut >= n {
            continue;
        }
        let np = n - cut;
        let val = t * r + k_opt_upper(np, d, q, mode)?;
        if best.is_none_or(|(bv, _)| val < bv) {
            best = Some((val, t));
        }
    }
    best.ok_or(BoundsError::EmptyRange("every shortening step is out of range"))
}

/// Distance bound when every symbol has s disjoint repair groups of size at
/// most r: `d <= n - k - ceil((s(k-1)+1)/(s(r-1)+1)) + 2`.
///
/// With s = 1 this is exactly the Singleton-like bound. For s >= 2 it is
/// reported as informational alongside the verified bounds.
pub fn availability_bound(n: usize, k: usize, r: usize, s: usize) -> Result<i64, BoundsError> {
    if r == 0 || s == 0 {
        return Err(BoundsError::Domain("need r >= 1 and s >= 1"));
    }
    if k == 0 || k >= n {
        return Err(BoundsError::Domain("need 1 <= k < n"));
    }
    let s = s as u128;
    let num = s * (k as u128 - 1) + 1;
    let den = s * (r as u128 - 1) + 1;
    let ceil = ceil_div(num, den) as i64;
    Ok((n as i64) - (k as i64) - ceil + 2)
}

/// One evaluated shortening bound: the value and the minimizing t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShorteningBound {
    pub value: usize,
    pub t: usize,
}

/// The dimension bound entry of a [`BoundReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionBound {
    pub value: usize,
    pub t: usize,
    /// The distance the bound was evaluated at.
    pub d_used: usize,
}

/// The availability entry of a [`BoundReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AvailabilityBound {
    pub s: usize,
    pub value: i64,
}

/// All bounds for one parameter set, evaluated with the closed-form
/// estimator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub q: u64,
    pub singleton_like: i64,
    pub rate_ok: bool,
    /// Field-size-aware distance bound; None when k <= r (empty range).
    pub general: Option<ShorteningBound>,
    /// Dimension bound at `d_used`; None when k <= r.
    pub dimension: Option<DimensionBound>,
    /// Present when an availability level s was requested.
    pub availability: Option<AvailabilityBound>,
}

/// Evaluate every applicable bound for [n, k] over GF(q) at locality r.
///
/// `d_for_dimension` fixes the distance used by the dimension bound; when
/// absent, the general bound's value is used (the strongest distance the
/// parameters could still reach). `s` adds an availability entry.
pub fn bound_report(
    n: usize,
    k: usize,
    r: usize,
    q: u64,
    d_for_dimension: Option<usize>,
    s: Option<usize>,
) -> Result<BoundReport, BoundsError> {
    let singleton = singleton_like(n, k, r)?;
    let general = if k > r {
        Some(general_bound(n, k, r, q, EstimatorMode::ClosedForm).map(|(value, t)| ShorteningBound { value, t })?)
    } else {
        None
    };
    let dimension = match (k > r, d_for_dimension.or(general.map(|g| g.value))) {
        (true, Some(d)) if d >= 1 => Some(
            cm_bound_k(n, d, r, q, k, EstimatorMode::ClosedForm)
                .map(|(value, t)| DimensionBound { value, t, d_used: d })?,
        ),
        _ => None,
    };
    let availability = match s {
        Some(s) => Some(AvailabilityBound { s, value: availability_bound(n, k, r, s)? }),
        None => None,
    };
    Ok(BoundReport {
        n,
        k,
        r,
        q,
        singleton_like: singleton,
        rate_ok: rate_ok(n, k, r),
        general,
        dimension,
        availability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_like_pinned_values() {
        let cases = [
            (8, 4, 3, 4i64),
            (10, 5, 4, 5),
            (6, 2, 2, 5),
            (12, 3, 3, 10),
            (9, 4, 2, 5),
            (7, 4, 3, 3),
            (8, 5, 3, 3),
            (7, 3, 2, 4),
            (4, 2, 3, 3),
        ];
        for (n, k, r, want) in cases {
            assert_eq!(singleton_like(n, k, r).unwrap(), want, "({n},{k},{r})");
        }
        assert!(singleton_like(5, 0, 2).is_err());
        assert!(singleton_like(5, 5, 2).is_err());
        assert!(singleton_like(5, 2, 0).is_err());
    }

    #[test]
    fn rate_window() {
        assert!(rate_ok(8, 4, 3));
        assert!(rate_ok(3, 1, 1));
        assert!(!rate_ok(8, 7, 3));
        assert!(!rate_ok(4, 3, 1));
    }

    #[test]
    fn d_opt_closed_form_pinned_values() {
        let cases = [(4, 1, 2, 4usize), (7, 3, 2, 4), (7, 4, 2, 3), (4, 4, 2, 1), (4, 2, 2, 2)];
        for (n, k, q, want) in cases {
            assert_eq!(d_opt_upper(n, k, q, EstimatorMode::ClosedForm).unwrap(), want, "({n},{k},{q})");
        }
    }

    #[test]
    fn d_opt_exhaustive_matches_closed_form_here() {
        // At these sizes the closed form is tight, so the exact scan agrees.
        for (n, k, q) in [(7, 3, 2), (7, 4, 2), (4, 2, 2), (4, 1, 2), (5, 2, 3)] {
            let cf = d_opt_upper(n, k, q, EstimatorMode::ClosedForm).unwrap();
            let ex = d_opt_upper(n, k, q, EstimatorMode::Exhaustive).unwrap();
            assert_eq!(cf, ex, "({n},{k},{q})");
        }
    }

    #[test]
    fn exhaustive_is_never_above_closed_form() {
        for n in 2..6usize {
            for k in 1..n {
                for q in [2u64, 3] {
                    let cf = d_opt_upper(n, k, q, EstimatorMode::ClosedForm).unwrap();
                    let ex = d_opt_upper(n, k, q, EstimatorMode::Exhaustive).unwrap();
                    assert!(ex <= cf, "exhaustive {ex} > closed form {cf} at ({n},{k},{q})");
                }
            }
        }
    }

    #[test]
    fn exhaustive_cap_is_enforced() {
        assert!(matches!(
            d_opt_upper(12, 6, 2, EstimatorMode::Exhaustive).unwrap_err(),
            BoundsError::CapExceeded { .. }
        ));
        assert_eq!(d_opt_upper(5, 2, 6, EstimatorMode::Exhaustive).unwrap_err(), BoundsError::NotPrimePower(6));
    }

    #[test]
    fn k_opt_pinned_values() {
        assert_eq!(k_opt_upper(4, 4, 2, EstimatorMode::ClosedForm).unwrap(), 1);
        assert_eq!(k_opt_upper(4, 4, 2, EstimatorMode::Exhaustive).unwrap(), 1);
        assert_eq!(k_opt_upper(7, 4, 2, EstimatorMode::ClosedForm).unwrap(), 3);
        assert_eq!(k_opt_upper(7, 4, 2, EstimatorMode::Exhaustive).unwrap(), 3);
        // No dimension can reach distance above n.
        assert_eq!(k_opt_upper(4, 5, 2, EstimatorMode::ClosedForm).unwrap(), 0);
    }

    #[test]
    fn general_bound_pinned_values() {
        let cases = [
            (7, 3, 2, 2u64, (4usize, 1usize)),
            (8, 4, 3, 5, (4, 1)),
            (15, 4, 2, 2, (8, 1)),
            (10, 5, 4, 23, (5, 1)),
        ];
        for (n, k, r, q, want) in cases {
            assert_eq!(
                general_bound(n, k, r, q, EstimatorMode::ClosedForm).unwrap(),
                want,
                "({n},{k},{r},{q})"
            );
        }
        // Exhaustive estimator agrees on the binary simplex-scale case.
        assert_eq!(general_bound(7, 3, 2, 2, EstimatorMode::Exhaustive).unwrap(), (4, 1));
    }

    #[test]
    fn general_bound_requires_k_above_r() {
        assert_eq!(
            general_bound(6, 2, 2, 4, EstimatorMode::ClosedForm).unwrap_err(),
            BoundsError::EmptyRange("k <= r leaves no shortening steps")
        );
    }

    #[test]
    fn general_bound_never_looser_than_singleton_like() {
        // The t = ceil(k/r) - 1 step of the shortening bound evaluates a
        // Singleton term that collapses to the Singleton-like bound; the
        // minimum over t can only improve on it.
        for n in 4..12usize {
            for k in 2..n - 1 {
                for r in 1..k {
                    if !rate_ok(n, k, r) {
                        continue;
                    }
                    let sl = singleton_like(n, k, r).unwrap();
                    match general_bound(n, k, r, 2, EstimatorMode::ClosedForm) {
                        Ok((g, _)) => assert!(
                            (g as i64) <= sl,
                            "general {g} > singleton-like {sl} at ({n},{k},{r})"
                        ),
                        Err(BoundsError::EmptyRange(_)) => {}
                        Err(e) => panic!("unexpected error {e} at ({n},{k},{r})"),
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_bound_pinned_values() {
        assert_eq!(cm_bound_k(7, 4, 2, 2, 3, EstimatorMode::ClosedForm).unwrap(), (3, 1));
        assert_eq!(cm_bound_k(16, 6, 2, 2, 8, EstimatorMode::ClosedForm).unwrap(), (6, 2));
        assert!(matches!(
            cm_bound_k(7, 4, 2, 2, 2, EstimatorMode::ClosedForm).unwrap_err(),
            BoundsError::EmptyRange(_)
        ));
    }

    #[test]
    fn availability_pinned_and_reduces_to_singleton_like() {
        assert_eq!(availability_bound(12, 6, 3, 2).unwrap(), 5);
        assert_eq!(availability_bound(8, 4, 3, 3).unwrap(), 4);
        for n in 3..10usize {
            for k in 1..n {
                for r in 1..=k.max(1) {
                    assert_eq!(
                        availability_bound(n, k, r, 1).unwrap(),
                        singleton_like(n, k, r).unwrap(),
                        "({n},{k},{r})"
                    );
                }
            }
        }
    }

    #[test]
    fn report_assembles_all_entries() {
        let rep = bound_report(10, 5, 4, 23, None, Some(2)).unwrap();
        assert_eq!(rep.singleton_like, 5);
        assert!(rep.rate_ok);
        assert_eq!(rep.general, Some(ShorteningBound { value: 5, t: 1 }));
        let dim = rep.dimension.unwrap();
        assert_eq!(dim.d_used, 5);
        assert_eq!(rep.availability, Some(AvailabilityBound { s: 2, value: availability_bound(10, 5, 4, 2).unwrap() }));
        // k <= r: shortening entries are absent rather than erroneous.
        let rep2 = bound_report(6, 2, 2, 4, None, None).unwrap();
        assert_eq!(rep2.general, None);
        assert_eq!(rep2.dimension, None);
        assert_eq!(rep2.singleton_like, 5);
        // Explicit d for the dimension bound.
        let rep3 = bound_report(7, 3, 2, 2, Some(4), None).unwrap();
        assert_eq!(rep3.dimension, Some(DimensionBound { value: 3, t: 1, d_used: 4 }));
    }

    #[test]
    fn plotkin_overflow_fallback_leaves_other_terms_in_charge() {
        // q^k overflows u128 here, so the Plotkin term falls back to its
        // (weaker) asymptotic form; Singleton and Griesmer still pin the
        // result to n - k + 1 = 101.
        let d = d_opt_upper(1000, 900, 1021, EstimatorMode::ClosedForm).unwrap();
        assert_eq!(d, 101);
    }
}
