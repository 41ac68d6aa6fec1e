//! Rewriting a parity-check matrix into locality rows plus completion rows.
//!
//! For a code whose every symbol has locality at most r, the parity-check
//! matrix can be presented (up to row operations) as a stack of
//!
//! - **H1**: `l` dual words of weight at most r + 1 whose supports jointly
//!   cover all n coordinates (each row is a local repair equation), and
//! - **H2**: `n - k - l` further rows completing the rank.
//!
//! The construction here is deterministic:
//!
//! 1. compute the exact locality profile with lexicographic witnesses;
//! 2. greedily pick rows: repeatedly take the smallest uncovered coordinate
//!    j and add the profile witness for j (a lightest dual word covering j,
//!    lexicographically smallest among those), recording the coverage union
//!    after each step;
//! 3. complete with the rows of the RREF of the original matrix, in order,
//!    keeping each row that grows the rank, until the rank reaches n - k.
//!
//! Every H1 row covers at least one new coordinate, so the rows are
//! independent and `l <= n - k` always holds; together with the row-weight
//! cap this pins l into the window `k/r <= n/(r+1) <= l <= n - k`.

use alloc::vec;
use alloc::vec::Vec;

use crate::code::{CodeError, EnumerationCaps, LinearCode, LocalityProfile};
use crate::matrix::GfMatrix;

/// A parity-check matrix split into covering locality rows and completion
/// rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizedPcm {
    /// Locality rows: weight <= r + 1 each, supports cover all coordinates.
    pub h1: GfMatrix,
    /// Completion rows (possibly zero rows): together with `h1` they span
    /// the full dual space of the code.
    pub h2: GfMatrix,
    /// Coverage trace: entry i is the sorted union of the supports of the
    /// first i + 1 locality rows. Strictly growing; the last entry is 0..n.
    pub coverage: Vec<Vec<usize>>,
}

impl CharacterizedPcm {
    /// Number of locality rows.
    pub fn l(&self) -> usize {
        self.h1.rows()
    }

    /// The full rewritten parity-check matrix (H1 stacked over H2).
    pub fn stacked(&self) -> GfMatrix {
        self.h1.stack(&self.h2).expect("same field and width")
    }
}

/// Does l lie in the window `k/r <= n/(r+1) <= l <= n - k`?
///
/// All comparisons are exact (cross-multiplied), no rounding.
pub fn l_window_ok(n: usize, k: usize, r: usize, l: usize) -> bool {
    let n = n as u128;
    let k = k as u128;
    let r = r as u128;
    let l = l as u128;
    k * (r + 1) <= n * r && n <= l * (r + 1) && l <= n - k
}

/// Characterize a code with locality target r, computing the locality
/// profile first. Fails with [`CodeError::LocalityExceedsTarget`] when some
/// symbol has locality above r.
pub fn characterize(
    code: &LinearCode,
    r: usize,
    caps: &EnumerationCaps,
) -> Result<CharacterizedPcm, CodeError> {
    let profile = code.locality_profile(caps)?;
    characterize_with_profile(code, r, &profile)
}

/// Characterize a code from an already-computed locality profile.
pub fn characterize_with_profile(
    code: &LinearCode,
    r: usize,
    profile: &LocalityProfile,
) -> Result<CharacterizedPcm, CodeError> {
    let n = code.n();
    if !profile.within(r) {
        return Err(CodeError::LocalityExceedsTarget {
            target: r,
            actual: profile.all_symbol(),
        });
    }
    let field = code.field().clone();

    // Greedy cover by per-symbol witnesses.
    let mut covered = vec![false; n];
    let mut h1_rows: Vec<Vec<u64>> = Vec::new();
    let mut coverage: Vec<Vec<usize>> = Vec::new();
    while let Some(j) = covered.iter().position(|&c| !c) {
        let row = profile.witness_for(j);
        debug_assert_ne!(row[j], 0, "witness covers its symbol");
        for (i, &v) in row.iter().enumerate() {
            if v != 0 {
                covered[i] = true;
            }
        }
        h1_rows.push(row.to_vec());
        coverage.push((0..n).filter(|&i| covered[i]).collect());
    }
    let h1 = GfMatrix::from_rows(&field, &h1_rows)?;

    // Complete the rank with RREF rows of the original matrix.
    let target_rank = n - code.k();
    let rred = code.pcm().rref();
    let mut stack = h1.clone();
    let mut h2_rows: Vec<Vec<u64>> = Vec::new();
    let mut rank = stack.rank();
    for i in 0..rred.rows() {
        if rank == target_rank {
            break;
        }
        let row = rred.row(i);
        if row.iter().all(|&x| x == 0) {
            continue;
        }
        let candidate = stack.stack(&GfMatrix::from_rows(&field, &[row.to_vec()])?)?;
        let new_rank = candidate.rank();
        if new_rank > rank {
            stack = candidate;
            rank = new_rank;
            h2_rows.push(row.to_vec());
        }
    }
    assert_eq!(rank, target_rank, "RREF rows always complete the dual space");
    let h2 = if h2_rows.is_empty() {
        GfMatrix::zeros(&field, 0, n)
    } else {
        GfMatrix::from_rows(&field, &h2_rows)?
    };
    Ok(CharacterizedPcm { h1, h2, coverage })
}
