//! Single-erasure repair driven by locality witnesses, plus a seeded
//! simulation harness measuring how many symbols each repair reads.
//!
//! A symbol's locality witness is a dual word that is nonzero on the symbol;
//! zeroing its contribution against the received word solves for the erased
//! value from the other symbols in the witness's support. The number of
//! symbols read is the witness weight minus one — exactly the locality the
//! profile proved — versus a baseline of k reads for re-decoding the whole
//! word from scratch.

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::code::{LinearCode, LocalityProfile};
use crate::gf::GfError;

/// Errors raised by encoding, repair, or simulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepairError {
    /// Input has the wrong number of entries.
    WrongLength { expected: usize, got: usize },
    /// An entry is not a valid field-element encoding.
    SymbolOutOfRange { index: usize },
    /// Repair handles exactly one erased position.
    ErasureCountMismatch { found: usize },
    /// Witness arithmetic failed (never expected for valid witnesses).
    Gf(GfError),
}

impl core::fmt::Display for RepairError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RepairError::WrongLength { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            RepairError::SymbolOutOfRange { index } => {
                write!(f, "entry {index} is not a field element")
            }
            RepairError::ErasureCountMismatch { found } => {
                write!(f, "expected exactly 1 erased position, found {found}")
            }
            RepairError::Gf(e) => write!(f, "field error: {e}"),
        }
    }
}

impl core::error::Error for RepairError {}

impl From<GfError> for RepairError {
    fn from(e: GfError) -> Self {
        RepairError::Gf(e)
    }
}

/// Encode a k-symbol message into an n-symbol codeword using the code's
/// systematic-free generator (message times generator matrix).
pub fn encode(code: &LinearCode, message: &[u64]) -> Result<Vec<u64>, RepairError> {
    let k = code.k();
    if message.len() != k {
        return Err(RepairError::WrongLength { expected: k, got: message.len() });
    }
    let field = code.field();
    if let Some(index) = message.iter().position(|&m| m >= field.size()) {
        return Err(RepairError::SymbolOutOfRange { index });
    }
    let gen = code.generator();
    let n = code.n();
    let mut word = alloc::vec![0u64; n];
    for (i, &m) in message.iter().enumerate() {
        if m == 0 {
            continue;
        }
        for (slot, &g) in word.iter_mut().zip(gen.row(i)) {
            if g != 0 {
                *slot = field.add(*slot, field.mul(m, g));
            }
        }
    }
    Ok(word)
}

/// One completed repair: which symbol was rebuilt, which positions were
/// read, and the recovered value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairTrace {
    /// The erased position.
    pub symbol: usize,
    /// Positions read to rebuild it, ascending. Their count is the symbol's
    /// locality.
    pub reads: Vec<usize>,
    /// The recovered value.
    pub value: u64,
}

/// Rebuild the single erased position of `received` from the erased
/// symbol's locality witness. `received` holds one `None` (the erasure) and
/// the surviving symbols otherwise.
pub fn repair_single(
    code: &LinearCode,
    received: &[Option<u64>],
    profile: &LocalityProfile,
) -> Result<RepairTrace, RepairError> {
    let n = code.n();
    if received.len() != n {
        return Err(RepairError::WrongLength { expected: n, got: received.len() });
    }
    let field = code.field();
    let erased: Vec<usize> = (0..n).filter(|&j| received[j].is_none()).collect();
    if erased.len() != 1 {
        return Err(RepairError::ErasureCountMismatch { found: erased.len() });
    }
    let symbol = erased[0];
    for (j, r) in received.iter().enumerate() {
        if let Some(v) = r {
            if *v >= field.size() {
                return Err(RepairError::SymbolOutOfRange { index: j });
            }
        }
    }
    // The witness w is a dual word with w[symbol] != 0, so
    // sum_j w[j] c[j] = 0 solves for c[symbol].
    let w = profile.witness_for(symbol);
    let mut acc = 0u64;
    let mut reads = Vec::new();
    for (j, &wj) in w.iter().enumerate() {
        if j == symbol || wj == 0 {
            continue;
        }
        let cj = received[j].expect("only `symbol` is erased");
        reads.push(j);
        acc = field.add(acc, field.mul(wj, cj));
    }
    let value = field.mul(field.neg(acc), field.inv(w[symbol])?);
    Ok(RepairTrace { symbol, reads, value })
}

/// Aggregate results of a repair simulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimMetrics {
    /// Trials run.
    pub trials: u64,
    /// Trials whose repaired value matched the original codeword.
    pub successes: u64,
    /// Symbols read across all repairs.
    pub total_reads: u64,
    /// Reads a full re-decode would need per repair (the dimension k).
    pub baseline_reads: u64,
    /// The seed the run used (replays are bit-identical).
    pub seed: u64,
}

impl SimMetrics {
    /// Fraction of trials that recovered the exact erased value.
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        self.successes as f64 / self.trials as f64
    }

    /// Average symbols read per repair.
    pub fn mean_reads(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        self.total_reads as f64 / self.trials as f64
    }
}

/// Run `trials` seeded single-erasure repairs: each trial encodes a uniform
/// random message, erases a uniform random position, repairs it through the
/// locality profile, and compares against the ground truth.
pub fn simulate(
    code: &LinearCode,
    profile: &LocalityProfile,
    trials: u64,
    seed: u64,
) -> Result<SimMetrics, RepairError> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let (n, k, q) = (code.n(), code.k(), code.field().size());
    let mut successes = 0u64;
    let mut total_reads = 0u64;
    let mut message = alloc::vec![0u64; k];
    for _ in 0..trials {
        for m in message.iter_mut() {
            *m = rng.random_range(0..q);
        }
        let word = encode(code, &message)?;
        let erase_at = rng.random_range(0..n as u64) as usize;
        let mut received: Vec<Option<u64>> =
            word.iter().map(|&c| Some(c)).collect();
        received[erase_at] = None;
        let trace = repair_single(code, &received, profile)?;
        if trace.value == word[erase_at] {
            successes += 1;
        }
        total_reads += trace.reads.len() as u64;
    }
    Ok(SimMetrics {
        trials,
        successes,
        total_reads,
        baseline_reads: k as u64,
        seed,
    })
}
