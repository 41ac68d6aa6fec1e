//! Exhaustive verification of a code's locality, distance, and optimality.
//!
//! [`verify`] computes the exact minimum distance and the exact per-symbol
//! locality profile of a code, compares the distance against the
//! locality-aware Singleton-style bound, and declares the code optimal when
//! it meets the bound with every symbol's locality within the target. For
//! optimal codes with locality strictly below the dimension it additionally
//! checks the structural conditions any such code must satisfy, working on a
//! locality-revealing characterization of the parity-check matrix.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bounds::singleton_like;
use crate::characterize::{characterize_with_profile, CharacterizedPcm};
use crate::code::{CodeError, Distance, EnumerationCaps, LinearCode, LocalityProfile};

/// Cap on the number of locality-row subsets enumerated by the structural
/// check in the case where the locality does not divide the dimension.
pub const SUBSET_CHECK_CAP: u64 = 1 << 20;

/// Errors raised by [`verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    /// The locality target r must be at least 1.
    BadLocalityTarget,
    /// Distance or locality computation failed (for example, a cap).
    Code(CodeError),
}

impl core::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            VerifyError::BadLocalityTarget => write!(f, "locality target must be at least 1"),
            VerifyError::Code(e) => write!(f, "analysis failed: {e}"),
        }
    }
}

impl core::error::Error for VerifyError {}

impl From<CodeError> for VerifyError {
    fn from(e: CodeError) -> Self {
        VerifyError::Code(e)
    }
}

/// Which structural-condition case applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NecessaryCase {
    /// Locality divides the dimension: group rows must tile the coordinates.
    RDividesK,
    /// Locality does not divide the dimension: every small bundle of
    /// locality rows must cover enough coordinates.
    RNotDividesK,
    /// The conditions only bind optimal codes with r < k; everything else
    /// skips them.
    NotApplicable,
}

/// Result of the structural conditions that optimality forces on the
/// locality rows of a characterized parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecessaryReport {
    pub case: NecessaryCase,
    /// `Some(true)` when every condition held, `Some(false)` when one was
    /// violated, `None` when not applicable or truncated by the subset cap.
    pub ok: Option<bool>,
    /// Human-readable descriptions of each violation found.
    pub violations: Vec<String>,
    /// Present when the check was skipped or truncated.
    pub note: Option<&'static str>,
}

impl NecessaryReport {
    fn not_applicable(note: &'static str) -> Self {
        NecessaryReport {
            case: NecessaryCase::NotApplicable,
            ok: None,
            violations: Vec::new(),
            note: Some(note),
        }
    }
}

/// Everything [`verify`] establishes about one code.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub n: usize,
    pub k: usize,
    /// The locality target the code was verified against.
    pub r: usize,
    /// Field size.
    pub q: u64,
    /// Exact minimum distance with witness and route.
    pub distance: Distance,
    /// Exact per-symbol locality with witnesses and route.
    pub locality: LocalityProfile,
    /// The locality-aware Singleton-style distance limit for (n, k, r).
    pub singleton_like: i64,
    /// Parity-check matrix has full row rank (re-checked here).
    pub full_rank: bool,
    /// Every symbol's locality is at most r.
    pub locality_ok: bool,
    /// `locality_ok` and the distance meets `singleton_like` exactly.
    pub optimal: bool,
    /// Structural conditions, checked only for optimal codes with r < k.
    pub necessary: NecessaryReport,
}

/// Verify a code against a locality target: exact distance, exact locality
/// profile, optimality versus the Singleton-style bound, and (for optimal
/// codes with r < k) the structural conditions on its locality rows.
pub fn verify(
    code: &LinearCode,
    r: usize,
    caps: &EnumerationCaps,
) -> Result<VerifyReport, VerifyError> {
    if r == 0 {
        return Err(VerifyError::BadLocalityTarget);
    }
    let (n, k, q) = (code.n(), code.k(), code.field().size());
    let distance = code.min_distance(caps)?;
    let locality = code.locality_profile(caps)?;
    // LinearCode guarantees 1 <= k < n, and r >= 1 was checked above, so the
    // bound is always defined.
    let singleton = singleton_like(n, k, r).expect("valid (n, k, r)");
    let full_rank = code.pcm().rank() == code.pcm().rows();
    let locality_ok = locality.within(r);
    let optimal = locality_ok && distance.value as i64 == singleton;

    let necessary = if !optimal {
        NecessaryReport::not_applicable("code is not optimal for this locality target")
    } else if r >= k {
        NecessaryReport::not_applicable("conditions only bind when r < k")
    } else {
        let cpcm = characterize_with_profile(code, r, &locality)?;
        check_necessary_conditions(&cpcm, n, k, r)
    };

    Ok(VerifyReport {
        n,
        k,
        r,
        q,
        distance,
        locality,
        singleton_like: singleton,
        full_rank,
        locality_ok,
        optimal,
        necessary,
    })
}

/// Check the structural conditions optimality forces on the locality rows.
///
/// With r dividing k, the locality rows of an optimal code must each touch
/// exactly r + 1 coordinates, be pairwise disjoint, and (consequently) tile
/// all n coordinates, which also forces r + 1 to divide n. When r does not
/// divide k, every bundle of ceil(k/r) locality rows must together cover at
/// least k + ceil(k/r) coordinates. The caller is responsible for only
/// invoking this on codes where the conditions bind (optimal, r < k).
pub fn check_necessary_conditions(
    cpcm: &CharacterizedPcm,
    n: usize,
    k: usize,
    r: usize,
) -> NecessaryReport {
    let mut violations = Vec::new();
    let h1 = &cpcm.h1;
    if k.is_multiple_of(r) {
        if !n.is_multiple_of(r + 1) {
            violations.push(format!(
                "group size {} does not divide the length {n}",
                r + 1
            ));
        }
        let mut seen = alloc::vec![false; n];
        for i in 0..h1.rows() {
            let support: Vec<usize> =
                (0..n).filter(|&j| h1.get(i, j) != 0).collect();
            if support.len() != r + 1 {
                violations.push(format!(
                    "locality row {i} touches {} coordinates instead of {}",
                    support.len(),
                    r + 1
                ));
            }
            for &j in &support {
                if seen[j] {
                    violations.push(format!(
                        "locality rows overlap at coordinate {j}"
                    ));
                } else {
                    seen[j] = true;
                }
            }
        }
        NecessaryReport {
            case: NecessaryCase::RDividesK,
            ok: Some(violations.is_empty()),
            violations,
            note: None,
        }
    } else {
        let t = k.div_ceil(r);
        let l = h1.rows();
        let need = k + t;
        if t > l {
            return NecessaryReport {
                case: NecessaryCase::RNotDividesK,
                ok: Some(false),
                violations: alloc::vec![format!(
                    "only {l} locality rows, fewer than the {t} the condition bundles"
                )],
                note: None,
            };
        }
        let total: u64 = binomial_capped(l, t, SUBSET_CHECK_CAP);
        if total > SUBSET_CHECK_CAP {
            return NecessaryReport {
                case: NecessaryCase::RNotDividesK,
                ok: None,
                violations: Vec::new(),
                note: Some("too many locality-row bundles to enumerate"),
            };
        }
        let supports: Vec<Vec<usize>> = (0..l)
            .map(|i| (0..n).filter(|&j| h1.get(i, j) != 0).collect())
            .collect();
        let mut subset: Vec<usize> = (0..t).collect();
        loop {
            let mut union = alloc::vec![false; n];
            let mut covered = 0usize;
            for &i in &subset {
                for &j in &supports[i] {
                    if !union[j] {
                        union[j] = true;
                        covered += 1;
                    }
                }
            }
            if covered < need {
                violations.push(format!(
                    "locality rows {subset:?} cover only {covered} coordinates, \
                     below the required {need}"
                ));
            }
            if !crate::matrix::advance_combination(&mut subset, l) {
                break;
            }
        }
        NecessaryReport {
            case: NecessaryCase::RNotDividesK,
            ok: Some(violations.is_empty()),
            violations,
            note: None,
        }
    }
}

/// Binomial coefficient C(l, t), saturating once it exceeds `cap`.
fn binomial_capped(l: usize, t: usize, cap: u64) -> u64 {
    let t = t.min(l - t);
    let mut acc: u64 = 1;
    for i in 0..t {
        acc = match acc.checked_mul((l - i) as u64) {
            Some(v) => v / (i as u64 + 1),
            None => return cap + 1,
        };
        if acc > cap {
            return cap + 1;
        }
    }
    acc
}
