//! Linear codes presented by full-rank parity-check matrices, with exact
//! minimum distance and exact per-symbol locality.
//!
//! # Distance
//!
//! The minimum distance equals the smallest number of linearly dependent
//! parity-check columns, and every minimum-weight codeword exhibits such a
//! dependence on its support. Two exhaustive routes are provided:
//!
//! - **codeword enumeration**: scan all q^k - 1 nonzero codewords; the
//!   witness is the lexicographically smallest minimum-weight codeword
//!   (comparing canonical encodings position by position);
//! - **column search**: scan column subsets of the parity-check matrix in
//!   ascending size, subsets of equal size in lexicographic order; the
//!   witness is the first dependent subset with its combination
//!   coefficients.
//!
//! Both routes return the same distance value; witnesses may differ and the
//! taken route is recorded in the result.
//!
//! # Locality
//!
//! Symbol i has locality c exactly when some word of the dual code has
//! weight c + 1 and a nonzero entry at position i (the repair equation reads
//! symbol i from the other c positions of the word's support). The profile
//! is computed either by enumerating the q^(n-k) - 1 nonzero dual words
//! (witness: lexicographically smallest among the lightest words covering
//! each symbol) or, when that is infeasible, by a per-symbol search over
//! generator column subsets.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gf::Field;
use crate::matrix::{ColumnDependence, DependenceWitness, GfMatrix, MatrixError};

/// Budgets for exhaustive scans. Exceeding a budget is an explicit error,
/// never a silent approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCaps {
    /// Most words (codewords or dual words) an enumeration may visit.
    pub max_words: u64,
    /// Most column subsets a search may examine.
    pub max_subsets: u64,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps { max_words: 1 << 26, max_subsets: 1 << 26 }
    }
}

/// Errors from code construction and analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    /// Parity-check or generator shape is unusable (needs 0 < rows < cols).
    BadShape { rows: usize, cols: usize },
    /// The supplied matrix does not have full row rank.
    NotFullRank { rank: usize, rows: usize },
    /// Every available exact route exceeds its enumeration budget.
    CapExceeded { required: u128, cap: u64, what: &'static str },
    /// No dual word has a nonzero entry at this position, so the symbol
    /// cannot be repaired from others and has no locality.
    UncoveredSymbol { index: usize },
    /// A locality target was not met (reported with the exact profile max).
    LocalityExceedsTarget { target: usize, actual: usize },
    /// An underlying matrix operation failed.
    Matrix(MatrixError),
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::BadShape { rows, cols } => {
                write!(f, "unusable matrix shape {rows}x{cols} (need 0 < rows < cols)")
            }
            CodeError::NotFullRank { rank, rows } => {
                write!(f, "matrix has rank {rank}, expected full row rank {rows}")
            }
            CodeError::CapExceeded { required, cap, what } => {
                write!(f, "{what} needs {required} steps, over the budget of {cap}")
            }
            CodeError::UncoveredSymbol { index } => {
                write!(f, "symbol {index} is covered by no dual word and has no locality")
            }
            CodeError::LocalityExceedsTarget { target, actual } => {
                write!(f, "locality target {target} not met: some symbol has locality {actual}")
            }
            CodeError::Matrix(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CodeError {}

impl From<MatrixError> for CodeError {
    fn from(e: MatrixError) -> Self {
        CodeError::Matrix(e)
    }
}

/// Which exhaustive route produced a distance result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceRoute {
    CodewordEnumeration,
    ColumnSearch,
}

/// Exact minimum distance with a checkable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distance {
    pub value: usize,
    /// A minimum-size dependence among parity-check columns; equivalently
    /// the support and entries of a minimum-weight codeword.
    pub witness: DependenceWitness,
    pub route: DistanceRoute,
}

/// Which exhaustive route produced a locality result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalityRoute {
    DualEnumeration,
    ColumnSearch,
}

/// Locality of one symbol with its repair equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolWitness {
    /// Number of other symbols needed to repair this one.
    pub locality: usize,
    /// A dual word of weight `locality + 1`, nonzero at the symbol.
    pub witness: Vec<u64>,
    pub route: LocalityRoute,
}

/// Exact per-symbol locality for every coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityProfile {
    /// locality of symbol i at index i.
    pub per_symbol: Vec<usize>,
    /// witness dual word for symbol i at index i (length n, nonzero at i).
    pub witnesses: Vec<Vec<u64>>,
    pub route: LocalityRoute,
}

impl LocalityProfile {
    /// The all-symbol locality: the largest per-symbol locality.
    pub fn all_symbol(&self) -> usize {
        *self.per_symbol.iter().max().expect("profile is never empty")
    }

    /// Does every symbol have locality at most r?
    pub fn within(&self, r: usize) -> bool {
        self.per_symbol.iter().all(|&c| c <= r)
    }

    /// The repair equation for symbol i.
    pub fn witness_for(&self, i: usize) -> &[u64] {
        &self.witnesses[i]
    }
}

/// An [n, k] linear code over GF(q), presented by a full-rank parity-check
/// matrix with n - k rows and n columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    n: usize,
    k: usize,
    pcm: GfMatrix,
}

impl LinearCode {
    /// Adopt a parity-check matrix. It must have full row rank and strictly
    /// fewer rows than columns.
    pub fn from_pcm(pcm: GfMatrix) -> Result<Self, CodeError> {
        let rows = pcm.rows();
        let cols = pcm.cols();
        if rows == 0 || rows >= cols {
            return Err(CodeError::BadShape { rows, cols });
        }
        let rank = pcm.rank();
        if rank != rows {
            return Err(CodeError::NotFullRank { rank, rows });
        }
        Ok(LinearCode { field: pcm.field().clone(), n: cols, k: cols - rows, pcm })
    }

    /// Define the code as the row space of a full-rank generator matrix;
    /// the parity-check matrix is its canonical kernel basis.
    pub fn from_generator(gen: GfMatrix) -> Result<Self, CodeError> {
        let rows = gen.rows();
        let cols = gen.cols();
        if rows == 0 || rows >= cols {
            return Err(CodeError::BadShape { rows, cols });
        }
        let rank = gen.rank();
        if rank != rows {
            return Err(CodeError::NotFullRank { rank, rows });
        }
        let pcm = gen.kernel_basis();
        LinearCode::from_pcm(pcm)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Block length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The parity-check matrix.
    pub fn pcm(&self) -> &GfMatrix {
        &self.pcm
    }

    /// Canonical generator matrix: the kernel basis of the parity-check
    /// matrix.
    pub fn generator(&self) -> GfMatrix {
        self.pcm.kernel_basis()
    }

    /// Number of nonzero codewords, if it fits in u128.
    fn word_count(&self, dim: usize) -> Option<u128> {
        (self.field.size() as u128).checked_pow(dim as u32).map(|c| c - 1)
    }

    // -- distance -----------------------------------------------------------

    /// Exact minimum distance, choosing a route automatically: codeword
    /// enumeration when k <= n - k and the codeword count fits the budget,
    /// otherwise column search (falling back to enumeration if the column
    /// search budget is exceeded but enumeration is feasible).
    pub fn min_distance(&self, caps: &EnumerationCaps) -> Result<Distance, CodeError> {
        let enum_feasible =
            self.word_count(self.k).is_some_and(|c| c <= caps.max_words as u128);
        if self.k <= self.n - self.k && enum_feasible {
            return self.min_distance_by_enumeration(caps.max_words);
        }
        match self.min_distance_by_column_search(caps.max_subsets) {
            Err(CodeError::Matrix(MatrixError::SearchCapExceeded { .. })) if enum_feasible => {
                self.min_distance_by_enumeration(caps.max_words)
            }
            Err(CodeError::Matrix(MatrixError::SearchCapExceeded { tested, cap })) => {
                Err(CodeError::CapExceeded {
                    required: tested as u128,
                    cap,
                    what: "minimum distance (all routes)",
                })
            }
            other => other,
        }
    }

    /// Exact minimum distance by scanning all nonzero codewords.
    pub fn min_distance_by_enumeration(&self, max_words: u64) -> Result<Distance, CodeError> {
        let required = self.word_count(self.k).unwrap_or(u128::MAX);
        if required > max_words as u128 {
            return Err(CodeError::CapExceeded {
                required,
                cap: max_words,
                what: "codeword enumeration",
            });
        }
        let gen = self.generator();
        let rows: Vec<&[u64]> = (0..gen.rows()).map(|r| gen.row(r)).collect();
        let mut best: Option<(usize, Vec<u64>)> = None;
        enumerate_span(&self.field, &rows, |vec, weight| {
            debug_assert!(weight > 0, "generator rows are independent");
            match &mut best {
                Some((bw, bv)) => {
                    if weight < *bw || (weight == *bw && vec < bv.as_slice()) {
                        *bw = weight;
                        bv.copy_from_slice(vec);
                    }
                }
                None => best = Some((weight, vec.to_vec())),
            }
        });
        let (value, word) = best.expect("k >= 1 gives at least one nonzero codeword");
        Ok(Distance { value, witness: support_witness(&word), route: DistanceRoute::CodewordEnumeration })
    }

    /// Exact minimum distance as the smallest dependent column set of the
    /// parity-check matrix.
    pub fn min_distance_by_column_search(&self, max_subsets: u64) -> Result<Distance, CodeError> {
        match self.pcm.min_dependent_columns(self.n, max_subsets)? {
            ColumnDependence::Dependent(witness) => Ok(Distance {
                value: witness.len(),
                witness,
                route: DistanceRoute::ColumnSearch,
            }),
            ColumnDependence::IndependentUpTo(_) => {
                unreachable!("k >= 1 forces a dependence among all n columns")
            }
        }
    }

    // -- locality -----------------------------------------------------------

    /// Exact locality of every symbol, choosing a route automatically: dual
    /// enumeration when the dual word count fits the budget, otherwise a
    /// per-symbol generator column search.
    pub fn locality_profile(&self, caps: &EnumerationCaps) -> Result<LocalityProfile, CodeError> {
        let dual_feasible =
            self.word_count(self.n - self.k).is_some_and(|c| c <= caps.max_words as u128);
        if dual_feasible {
            self.locality_profile_by_dual_enumeration(caps.max_words)
        } else {
            self.locality_profile_by_column_search(caps.max_subsets)
        }
    }

    /// Locality profile by scanning all nonzero dual words.
    pub fn locality_profile_by_dual_enumeration(
        &self,
        max_words: u64,
    ) -> Result<LocalityProfile, CodeError> {
        let required = self.word_count(self.n - self.k).unwrap_or(u128::MAX);
        if required > max_words as u128 {
            return Err(CodeError::CapExceeded {
                required,
                cap: max_words,
                what: "dual word enumeration",
            });
        }
        let rows: Vec<&[u64]> = (0..self.pcm.rows()).map(|r| self.pcm.row(r)).collect();
        let mut best: Vec<Option<(usize, Vec<u64>)>> = vec![None; self.n];
        enumerate_span(&self.field, &rows, |vec, weight| {
            for (i, &v) in vec.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                match &mut best[i] {
                    Some((bw, bv)) => {
                        if weight < *bw || (weight == *bw && vec < bv.as_slice()) {
                            *bw = weight;
                            bv.copy_from_slice(vec);
                        }
                    }
                    slot => *slot = Some((weight, vec.to_vec())),
                }
            }
        });
        let mut per_symbol = Vec::with_capacity(self.n);
        let mut witnesses = Vec::with_capacity(self.n);
        for (i, slot) in best.into_iter().enumerate() {
            let (w, v) = slot.ok_or(CodeError::UncoveredSymbol { index: i })?;
            per_symbol.push(w - 1);
            witnesses.push(v);
        }
        Ok(LocalityProfile { per_symbol, witnesses, route: LocalityRoute::DualEnumeration })
    }

    /// Locality profile by per-symbol search over generator column subsets.
    /// `max_subsets` budgets the whole profile (all symbols together).
    pub fn locality_profile_by_column_search(
        &self,
        max_subsets: u64,
    ) -> Result<LocalityProfile, CodeError> {
        let gen = self.generator();
        let mut budget = max_subsets;
        let mut per_symbol = Vec::with_capacity(self.n);
        let mut witnesses = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let (locality, witness, used) = self.symbol_locality_in(&gen, i, budget)?;
            budget -= used;
            per_symbol.push(locality);
            witnesses.push(witness);
        }
        Ok(LocalityProfile { per_symbol, witnesses, route: LocalityRoute::ColumnSearch })
    }

    /// Exact locality of one symbol, with the same route choice as
    /// [`LinearCode::locality_profile`].
    pub fn symbol_locality(&self, i: usize, caps: &EnumerationCaps) -> Result<SymbolWitness, CodeError> {
        assert!(i < self.n, "symbol index {i} out of range");
        let dual_feasible =
            self.word_count(self.n - self.k).is_some_and(|c| c <= caps.max_words as u128);
        if dual_feasible {
            let profile = self.locality_profile_by_dual_enumeration(caps.max_words)?;
            Ok(SymbolWitness {
                locality: profile.per_symbol[i],
                witness: profile.witnesses[i].clone(),
                route: LocalityRoute::DualEnumeration,
            })
        } else {
            let gen = self.generator();
            let (locality, witness, _) = self.symbol_locality_in(&gen, i, caps.max_subsets)?;
            Ok(SymbolWitness { locality, witness, route: LocalityRoute::ColumnSearch })
        }
    }

    /// Column-search locality for symbol i: find the smallest set of
    /// generator columns containing i that admits a dependence with a
    /// nonzero coefficient at i. Scans sizes ascending, subsets of the
    /// remaining columns in lexicographic order. Returns (locality, dual
    /// word, subsets examined).
    fn symbol_locality_in(
        &self,
        gen: &GfMatrix,
        i: usize,
        max_subsets: u64,
    ) -> Result<(usize, Vec<u64>, u64), CodeError> {
        let n = self.n;
        let mut tested = 0u64;
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        for delta in 1..=n {
            // Subsets of size delta containing i: choose delta - 1 others.
            let picks = delta - 1;
            if picks > others.len() {
                break;
            }
            let mut choice: Vec<usize> = (0..picks).collect();
            loop {
                tested += 1;
                if tested > max_subsets {
                    return Err(CodeError::CapExceeded {
                        required: tested as u128,
                        cap: max_subsets,
                        what: "locality column search",
                    });
                }
                let mut subset: Vec<usize> = choice.iter().map(|&x| others[x]).collect();
                subset.push(i);
                subset.sort_unstable();
                if let Some(word) = self.dual_word_on(gen, &subset, i) {
                    return Ok((delta - 1, word, tested));
                }
                if !crate::matrix::advance_combination(&mut choice, others.len()) {
                    break;
                }
            }
        }
        Err(CodeError::UncoveredSymbol { index: i })
    }

    /// A dual word supported inside `subset` with entry 1 at position i, if
    /// one exists: solve the generator columns against zero with the extra
    /// normalization row picking coordinate i.
    fn dual_word_on(&self, gen: &GfMatrix, subset: &[usize], i: usize) -> Option<Vec<u64>> {
        let sub = gen.select_columns(subset);
        let local_i = subset.iter().position(|&c| c == i).expect("subset contains i");
        let mut pick = GfMatrix::zeros(&self.field, 1, subset.len());
        pick.set(0, local_i, 1);
        let system = sub.stack(&pick).expect("same field and width");
        let mut rhs = vec![0u64; gen.rows() + 1];
        rhs[gen.rows()] = 1;
        match system.solve(&rhs) {
            Ok(x) => {
                let mut word = vec![0u64; self.n];
                for (&c, &v) in subset.iter().zip(&x) {
                    word[c] = v;
                }
                Some(word)
            }
            Err(MatrixError::Inconsistent) => None,
            Err(e) => unreachable!("well-shaped solve cannot fail structurally: {e}"),
        }
    }

    /// Is the vector a codeword (annihilated by the parity-check matrix)?
    pub fn contains(&self, word: &[u64]) -> Result<bool, CodeError> {
        let syndrome = self.pcm.mul_col_vec(word)?;
        Ok(syndrome.iter().all(|&x| x == 0))
    }

    /// Is the vector in the dual code (a combination of parity-check rows)?
    pub fn dual_contains(&self, word: &[u64]) -> Result<bool, CodeError> {
        if word.len() != self.n {
            return Err(CodeError::Matrix(MatrixError::ShapeMismatch {
                expected: self.n,
                got: word.len(),
            }));
        }
        let stacked = self.pcm.stack(&GfMatrix::from_rows(&self.field, &[word.to_vec()])?)?;
        Ok(stacked.rank() == self.pcm.rows())
    }
}

/// The support/value witness of a nonzero vector.
fn support_witness(word: &[u64]) -> DependenceWitness {
    let columns: Vec<usize> = word.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i).collect();
    let coefficients: Vec<u64> = word.iter().copied().filter(|&v| v != 0).collect();
    DependenceWitness { columns, coefficients }
}

/// Visit every nonzero vector in the row span of `rows`, passing the vector
/// and its Hamming weight. The scan maintains the combination incrementally:
/// coefficients run through all tuples over the field via an odometer whose
/// least significant digit moves fastest, and each digit step adds
/// `(next - current) * row` on the row's support only.
pub(crate) fn enumerate_span(field: &Field, rows: &[&[u64]], mut visit: impl FnMut(&[u64], usize)) {
    let l = rows.len();
    if l == 0 {
        return;
    }
    let n = rows[0].len();
    let s = field.size();
    let supports: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, _)| j).collect())
        .collect();
    let mut digits = vec![0u64; l];
    let mut vec_buf = vec![0u64; n];
    let mut weight = 0usize;
    loop {
        // Advance the odometer by one step, updating the combination.
        let mut r = 0;
        while r < l && digits[r] == s - 1 {
            // Wrap this digit to zero: add (0 - (s-1)) * row.
            let diff = field.neg(s - 1);
            apply_row_delta(field, rows[r], &supports[r], diff, &mut vec_buf, &mut weight);
            digits[r] = 0;
            r += 1;
        }
        if r == l {
            break; // odometer wrapped around completely
        }
        let cur = digits[r];
        let diff = field.sub(cur + 1, cur);
        apply_row_delta(field, rows[r], &supports[r], diff, &mut vec_buf, &mut weight);
        digits[r] = cur + 1;
        visit(&vec_buf, weight);
    }
}

#[inline]
fn apply_row_delta(
    field: &Field,
    row: &[u64],
    support: &[usize],
    diff: u64,
    vec_buf: &mut [u64],
    weight: &mut usize,
) {
    if diff == 0 {
        return;
    }
    for &j in support {
        let add = field.mul(diff, row[j]);
        let old = vec_buf[j];
        let new = field.add(old, add);
        if old == 0 && new != 0 {
            *weight += 1;
        } else if old != 0 && new == 0 {
            *weight -= 1;
        }
        vec_buf[j] = new;
    }
}
