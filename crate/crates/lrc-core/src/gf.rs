//! Arithmetic in finite fields GF(p^m) with canonical integer encodings.
//!
//! # Element encoding
//!
//! An element of GF(p^m) is a residue polynomial of degree < m over GF(p).
//! Its canonical encoding is the integer whose base-p digits are the
//! polynomial's coefficients with the **least significant digit holding the
//! constant term**: `a_0 + a_1 x + ... + a_{m-1} x^{m-1}` encodes as
//! `a_0 + a_1 p + ... + a_{m-1} p^{m-1}`. Encodings therefore range over
//! `0..p^m`, `0` is the additive identity and `1` the multiplicative one.
//!
//! # Modulus convention
//!
//! A field is constructed from a monic irreducible modulus polynomial of
//! degree m. When none is supplied, [`Field::new`] picks the canonical
//! modulus: the monic irreducible polynomial of degree m whose non-leading
//! part `(c_0, c_1, ..., c_{m-1})` has the smallest integer encoding
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. For GF(16) this selects
//! x^4 + x + 1 (encoding 19 including the leading term).
//!
//! # Limits
//!
//! Field sizes are capped at 2^20 so that exhaustive element scans (modulus
//! search, subfield extraction, inverses) stay cheap at desk scale.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest supported field size p^m.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Largest supported extension degree (2^20 = p^m with p >= 2 gives m <= 20).
pub const MAX_DEGREE: usize = 20;

/// Errors from field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfError {
    /// The requested characteristic is not a prime number.
    NotPrime(u64),
    /// p^m exceeds [`MAX_FIELD_SIZE`] (or overflows), or m == 0.
    UnsupportedSize { p: u64, m: usize },
    /// A supplied modulus is malformed or not irreducible.
    BadModulus(&'static str),
    /// The requested subfield order is not p^t with t dividing m.
    NoSuchSubfield { base: u64 },
    /// Multiplicative inverse of zero requested.
    ZeroInverse,
    /// An element encoding lies outside 0..p^m.
    ElementOutOfRange { index: u64, size: u64 },
    /// Operands belong to different fields.
    FieldMismatch,
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::NotPrime(p) => write!(f, "{p} is not prime"),
            GfError::UnsupportedSize { p, m } => {
                write!(f, "field size {p}^{m} is zero or exceeds {MAX_FIELD_SIZE}")
            }
            GfError::BadModulus(why) => write!(f, "invalid modulus: {why}"),
            GfError::NoSuchSubfield { base } => {
                write!(f, "{base} is not the order of a subfield of this field")
            }
            GfError::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            GfError::ElementOutOfRange { index, size } => {
                write!(f, "element encoding {index} out of range for field of size {size}")
            }
            GfError::FieldMismatch => write!(f, "operands belong to different fields"),
        }
    }
}

impl core::error::Error for GfError {}

/// Immutable description of one concrete field.
#[derive(Debug)]
struct FieldSpec {
    p: u64,
    m: usize,
    size: u64,
    /// Monic modulus of degree m: `modulus[i]` is the coefficient of x^i,
    /// length m+1, `modulus[m] == 1`. For m == 1 this is `[0, 1]` (x).
    modulus: Vec<u64>,
    /// For p == 2: the modulus as a bitmask (bit i = coefficient of x^i),
    /// used by the carryless-multiply fast path.
    mod_mask: u64,
}

/// A finite field GF(p^m). Cheap to clone (shared internals).
///
/// Two `Field` values compare equal when they have the same characteristic,
/// degree, and modulus polynomial.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; mod={})", self.0.p, self.0.m, self.modulus_encoding())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.m)
        }
    }
}

// ---------------------------------------------------------------------------
// GF(p) polynomial helpers (coefficient vectors, index 0 = constant term).
// ---------------------------------------------------------------------------

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Degree of a coefficient vector, or None for the zero polynomial.
fn poly_degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo monic `b` over GF(p). `b` must be monic.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = poly_degree(b).expect("modulus must be nonzero");
    let mut r: Vec<u64> = a.to_vec();
    while let Some(dr) = poly_degree(&r) {
        if dr < db {
            break;
        }
        let lead = r[dr];
        let shift = dr - db;
        for i in 0..=db {
            let sub = (lead * b[i]) % p;
            r[shift + i] = (r[shift + i] + p * p - sub) % p;
        }
    }
    r.truncate(db);
    r.resize(db, 0);
    r
}

/// Decode a nonnegative integer into base-p digits (constant term first).
fn encoding_to_poly(mut e: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while e > 0 {
        out.push(e % p);
        e /= p;
    }
    out
}

/// Is the monic polynomial `f` (degree >= 1, over GF(p)) irreducible?
/// Trial division by all monic polynomials of degree 1..=deg(f)/2.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = match poly_degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if deg == 1 {
        return true;
    }
    // Constant term zero => divisible by x.
    if f[0] == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        // Enumerate monic divisor candidates of degree d: low part encodings.
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut cand = encoding_to_poly(low, p);
            cand.resize(d, 0);
            cand.push(1); // monic leading coefficient
            let r = poly_rem(f, &cand, p);
            if poly_degree(&r).is_none() {
                return false;
            }
        }
    }
    true
}

/// Canonical modulus for GF(p^m): the monic irreducible of degree m whose
/// non-leading coefficient vector has the smallest integer encoding.
fn minimal_modulus(p: u64, m: usize) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = p.checked_pow(m as u32).expect("size checked by caller");
    for low in 0..count {
        let mut cand = encoding_to_poly(low, p);
        cand.resize(m, 0);
        cand.push(1);
        if poly_is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

// ---------------------------------------------------------------------------
// Field construction and raw-encoding arithmetic.
// ---------------------------------------------------------------------------

impl Field {
    /// GF(p^m) with the canonical (smallest-encoding) irreducible modulus.
    pub fn new(p: u64, m: usize) -> Result<Field, GfError> {
        Self::validate_size(p, m)?;
        Ok(Self::from_spec(p, m, minimal_modulus(p, m)))
    }

    /// GF(p^m) with an explicit monic irreducible modulus (length m+1,
    /// coefficient of x^i at index i). For m == 1 the modulus must be `[0, 1]`.
    pub fn with_modulus(p: u64, m: usize, modulus: &[u64]) -> Result<Field, GfError> {
        Self::validate_size(p, m)?;
        if modulus.len() != m + 1 {
            return Err(GfError::BadModulus("length must be degree + 1"));
        }
        if modulus[m] != 1 {
            return Err(GfError::BadModulus("must be monic"));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(GfError::BadModulus("coefficients must lie in 0..p"));
        }
        if m == 1 {
            if modulus[0] != 0 {
                return Err(GfError::BadModulus("degree-1 modulus must be x"));
            }
        } else if !poly_is_irreducible(modulus, p) {
            return Err(GfError::BadModulus("not irreducible over GF(p)"));
        }
        Ok(Self::from_spec(p, m, modulus.to_vec()))
    }

    /// GF(q) for a prime power q, canonical modulus.
    pub fn of_order(q: u64) -> Result<Field, GfError> {
        let (p, m) = factor_prime_power(q).ok_or(GfError::NotPrime(q))?;
        Field::new(p, m)
    }

    fn validate_size(p: u64, m: usize) -> Result<(), GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 || m > MAX_DEGREE {
            return Err(GfError::UnsupportedSize { p, m });
        }
        match p.checked_pow(m as u32) {
            Some(s) if s <= MAX_FIELD_SIZE => Ok(()),
            _ => Err(GfError::UnsupportedSize { p, m }),
        }
    }

    fn from_spec(p: u64, m: usize, modulus: Vec<u64>) -> Field {
        let size = p.pow(m as u32);
        let mod_mask = if p == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };
        Field(Arc::new(FieldSpec { p, m, size, modulus, mod_mask }))
    }

    /// Field characteristic p.
    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Extension degree m over the prime field.
    #[inline]
    pub fn degree(&self) -> usize {
        self.0.m
    }

    /// Number of elements p^m.
    #[inline]
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Modulus coefficients, constant term first, length `degree() + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Integer encoding of the modulus polynomial itself (base-p digits),
    /// e.g. 19 for x^4 + x + 1 over GF(2).
    pub fn modulus_encoding(&self) -> u64 {
        let p = self.0.p;
        self.0.modulus.iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }

    /// The element with the given canonical encoding.
    ///
    /// Panics if `index >= size()`; use [`Field::checked_elt`] for fallible
    /// conversion of untrusted input.
    pub fn elt(&self, index: u64) -> Felt {
        assert!(
            index < self.0.size,
            "element encoding {index} out of range for field of size {}",
            self.0.size
        );
        Felt { field: self.clone(), index }
    }

    /// Fallible version of [`Field::elt`].
    pub fn checked_elt(&self, index: u64) -> Result<Felt, GfError> {
        if index < self.0.size {
            Ok(Felt { field: self.clone(), index })
        } else {
            Err(GfError::ElementOutOfRange { index, size: self.0.size })
        }
    }

    /// The additive identity.
    pub fn zero(&self) -> Felt {
        self.elt(0)
    }

    /// The multiplicative identity.
    pub fn one(&self) -> Felt {
        self.elt(1)
    }

    /// Element from residue-polynomial coefficients (constant term first).
    /// Coefficients are reduced mod p; at most `degree()` may be supplied.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Felt, GfError> {
        if coeffs.len() > self.0.m {
            return Err(GfError::ElementOutOfRange {
                index: u64::MAX,
                size: self.0.size,
            });
        }
        let p = self.0.p;
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            idx = idx * p + (c % p);
        }
        Ok(Felt { field: self.clone(), index: idx })
    }

    /// Iterate over all element encodings, 0..size.
    pub fn encodings(&self) -> impl Iterator<Item = u64> {
        0..self.0.size
    }

    // -- raw arithmetic on encodings ---------------------------------------

    #[inline]
    fn decode_into(&self, mut e: u64, out: &mut [u64; MAX_DEGREE]) {
        let p = self.0.p;
        for slot in out.iter_mut().take(self.0.m) {
            *slot = e % p;
            e /= p;
        }
    }

    #[inline]
    fn encode_digits(&self, digits: &[u64; MAX_DEGREE]) -> u64 {
        let p = self.0.p;
        let mut idx = 0u64;
        for i in (0..self.0.m).rev() {
            idx = idx * p + digits[i];
        }
        idx
    }

    /// Sum of two encodings.
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.0.size && b < self.0.size);
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.m == 1 {
            return (a + b) % p;
        }
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        self.decode_into(a, &mut da);
        self.decode_into(b, &mut db);
        for i in 0..self.0.m {
            da[i] = (da[i] + db[i]) % p;
        }
        self.encode_digits(&da)
    }

    /// Additive inverse of an encoding.
    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(a < self.0.size);
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.m == 1 {
            return (p - a) % p;
        }
        let mut da = [0u64; MAX_DEGREE];
        self.decode_into(a, &mut da);
        for d in da.iter_mut().take(self.0.m) {
            *d = (p - *d) % p;
        }
        self.encode_digits(&da)
    }

    /// Difference of two encodings.
    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if self.0.p == 2 {
            return a ^ b;
        }
        self.add(a, self.neg(b))
    }

    /// Product of two encodings.
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.0.size && b < self.0.size);
        let p = self.0.p;
        if self.0.m == 1 {
            return (a * b) % p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        if a == 1 {
            return b;
        }
        if b == 1 {
            return a;
        }
        if p == 2 {
            // Carryless multiply on bitmask encodings, then reduce by the
            // modulus bitmask. Degrees stay below 2m-1 <= 39, well within u64.
            let m = self.0.m;
            let mut acc = 0u64;
            let mut x = a;
            let mut y = b;
            while y != 0 {
                if y & 1 == 1 {
                    acc ^= x;
                }
                x <<= 1;
                y >>= 1;
            }
            for deg in (m..=2 * m - 2).rev() {
                if (acc >> deg) & 1 == 1 {
                    acc ^= self.0.mod_mask << (deg - m);
                }
            }
            return acc;
        }
        let m = self.0.m;
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        self.decode_into(a, &mut da);
        self.decode_into(b, &mut db);
        // Schoolbook product, degree up to 2m-2.
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                if db[j] == 0 {
                    continue;
                }
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        // Reduce by the monic modulus, highest degree first.
        let md = &self.0.modulus;
        for deg in (m..=2 * m - 2).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            prod[deg] = 0;
            let shift = deg - m;
            for i in 0..m {
                if md[i] == 0 {
                    continue;
                }
                let sub = (lead * md[i]) % p;
                prod[shift + i] = (prod[shift + i] + p * p - sub) % p;
            }
        }
        let mut digits = [0u64; MAX_DEGREE];
        digits[..m].copy_from_slice(&prod[..m]);
        self.encode_digits(&digits)
    }

    /// `a` raised to the (nonnegative) power `e`.
    pub fn pow(&self, a: u64, mut e: u128) -> u64 {
        debug_assert!(a < self.0.size);
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        // The multiplicative group has order size-1.
        e %= (self.0.size - 1) as u128;
        if e == 0 {
            return 1;
        }
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of an encoding.
    pub fn inv(&self, a: u64) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        Ok(self.pow(a, (self.0.size - 2) as u128))
    }

    /// Degree t such that `base == p^t` and t divides m, i.e. GF(base) is a
    /// subfield of this field.
    pub fn subfield_degree(&self, base: u64) -> Result<usize, GfError> {
        let (bp, bt) = factor_prime_power(base).ok_or(GfError::NoSuchSubfield { base })?;
        if bp != self.0.p || !self.0.m.is_multiple_of(bt) {
            return Err(GfError::NoSuchSubfield { base });
        }
        Ok(bt)
    }

    /// Frobenius power with respect to the subfield of order `base = p^t`:
    /// `a ↦ a^(base^i)`, computed as `t*i` successive p-th powers.
    pub fn frobenius(&self, a: u64, base: u64, i: u32) -> Result<u64, GfError> {
        let t = self.subfield_degree(base)?;
        let rounds = (t as u64 * i as u64) % self.0.m as u64; // x^(p^m) = x
        let mut acc = a;
        for _ in 0..rounds {
            acc = self.pow(acc, self.0.p as u128);
        }
        Ok(acc)
    }

    /// Encodings of the elements of the subfield of order `base`, ascending.
    ///
    /// The subfield is the fixed set of `x ↦ x^base`.
    pub fn subfield_elements(&self, base: u64) -> Result<Vec<u64>, GfError> {
        self.subfield_degree(base)?;
        let mut out = Vec::with_capacity(base as usize);
        for e in self.encodings() {
            if self.frobenius(e, base, 1)? == e {
                out.push(e);
            }
        }
        debug_assert_eq!(out.len() as u64, base);
        Ok(out)
    }
}

/// Factor q as p^t for prime p, if possible.
pub fn factor_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    // Find the smallest prime factor by trial division.
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > q {
        p = q; // q itself is prime
    }
    let mut rest = q;
    let mut t = 0usize;
    while rest.is_multiple_of(p) {
        rest /= p;
        t += 1;
    }
    if rest == 1 {
        Some((p, t))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Felt: a field element bound to its field.
// ---------------------------------------------------------------------------

/// An element of a specific [`Field`].
///
/// Arithmetic operators panic when operands belong to different fields;
/// construction APIs validate encodings up front.
#[derive(Clone)]
pub struct Felt {
    field: Field,
    index: u64,
}

impl Felt {
    /// The field this element belongs to.
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Canonical integer encoding in 0..field.size().
    #[inline]
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Residue-polynomial coefficients, constant term first, length m.
    pub fn coeffs(&self) -> Vec<u64> {
        let mut digits = [0u64; MAX_DEGREE];
        self.field.decode_into(self.index, &mut digits);
        digits[..self.field.0.m].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Felt, GfError> {
        Ok(Felt { field: self.field.clone(), index: self.field.inv(self.index)? })
    }

    /// Power with a nonnegative exponent.
    pub fn pow(&self, e: u128) -> Felt {
        Felt { field: self.field.clone(), index: self.field.pow(self.index, e) }
    }

    /// Frobenius power `self^(base^i)` for a subfield order `base`.
    pub fn frobenius(&self, base: u64, i: u32) -> Result<Felt, GfError> {
        Ok(Felt { field: self.field.clone(), index: self.field.frobenius(self.index, base, i)? })
    }
}

impl PartialEq for Felt {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.field == other.field
    }
}

impl Eq for Felt {}

impl fmt::Debug for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{:?}", self.index, self.field)
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index)
    }
}

fn check_same_field(a: &Felt, b: &Felt) {
    assert!(a.field == b.field, "field element operands belong to different fields");
}

impl core::ops::Add for &Felt {
    type Output = Felt;
    fn add(self, rhs: &Felt) -> Felt {
        check_same_field(self, rhs);
        Felt { field: self.field.clone(), index: self.field.add(self.index, rhs.index) }
    }
}

impl core::ops::Sub for &Felt {
    type Output = Felt;
    fn sub(self, rhs: &Felt) -> Felt {
        check_same_field(self, rhs);
        Felt { field: self.field.clone(), index: self.field.sub(self.index, rhs.index) }
    }
}

impl core::ops::Mul for &Felt {
    type Output = Felt;
    fn mul(self, rhs: &Felt) -> Felt {
        check_same_field(self, rhs);
        Felt { field: self.field.clone(), index: self.field.mul(self.index, rhs.index) }
    }
}

impl core::ops::Neg for &Felt {
    type Output = Felt;
    fn neg(self) -> Felt {
        Felt { field: self.field.clone(), index: self.field.neg(self.index) }
    }
}

// ---------------------------------------------------------------------------
// Linear independence over a subfield, and Moore determinants.
// ---------------------------------------------------------------------------

/// Rank over GF(p) of a list of GF(p)-coefficient vectors (each length m).
fn rank_over_prime_field(rows: &mut [Vec<u64>], p: u64, m: usize) -> usize {
    let mut rank = 0usize;
    for col in 0..m {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        // Normalize pivot row to leading 1 via modular inverse in GF(p).
        let inv = mod_inverse(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = (*x * inv) % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    let sub = (factor * pv) % p;
                    *x = (*x + p * p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc * base) % p;
        }
        base = (base * base) % p;
        e >>= 1;
    }
    acc
}

/// Are the given elements linearly independent over the subfield GF(base)?
///
/// All elements must belong to the same field GF(p^m), and `base = p^t` with
/// t | m. The test expands each element against a GF(p)-basis of GF(base):
/// {β_i} is GF(base)-independent iff the products {s_j · β_i} over all
/// subfield basis elements s_j are GF(p)-independent.
pub fn linearly_independent_over(elems: &[Felt], base: u64) -> Result<bool, GfError> {
    if elems.is_empty() {
        return Ok(true);
    }
    let field = elems[0].field().clone();
    if elems.iter().any(|e| *e.field() != field) {
        return Err(GfError::FieldMismatch);
    }
    let t = field.subfield_degree(base)?;
    let m = field.degree();
    let p = field.characteristic();
    if elems.len() > m / t {
        // More elements than the GF(base)-dimension of the field.
        return Ok(false);
    }
    // GF(p)-basis of the subfield: independent subset of its elements.
    let sub = field.subfield_elements(base)?;
    let mut sub_basis: Vec<u64> = Vec::with_capacity(t);
    let mut probe: Vec<Vec<u64>> = Vec::new();
    for &s in sub.iter().skip(1) {
        let digits = field.elt(s).coeffs();
        probe.push(digits);
        let mut copy = probe.clone();
        if rank_over_prime_field(&mut copy, p, m) == probe.len() {
            sub_basis.push(s);
        } else {
            probe.pop();
        }
        if sub_basis.len() == t {
            break;
        }
    }
    debug_assert_eq!(sub_basis.len(), t);
    // Expand products s_j * β_i as GF(p) vectors and take the rank.
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(elems.len() * t);
    for b in elems {
        for &s in &sub_basis {
            rows.push(field.elt(field.mul(s, b.index())).coeffs());
        }
    }
    let want = rows.len();
    Ok(rank_over_prime_field(&mut rows, p, m) == want)
}

/// Determinant of the Moore-style matrix `M[i][j] = elems[i]^(base^j)` for
/// i, j in 0..elems.len(), computed by Gaussian elimination.
///
/// The determinant is nonzero exactly when the elements are linearly
/// independent over GF(base).
pub fn moore_determinant(elems: &[Felt], base: u64) -> Result<Felt, GfError> {
    if elems.is_empty() {
        return Err(GfError::FieldMismatch);
    }
    let field = elems[0].field().clone();
    if elems.iter().any(|e| *e.field() != field) {
        return Err(GfError::FieldMismatch);
    }
    field.subfield_degree(base)?;
    let n = elems.len();
    let mut m: Vec<Vec<u64>> = Vec::with_capacity(n);
    for e in elems {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(field.frobenius(e.index(), base, j as u32)?);
        }
        m.push(row);
    }
    // Gaussian elimination tracking the determinant.
    let mut det = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
            return Ok(field.zero());
        };
        if pivot != col {
            m.swap(pivot, col);
            det = field.neg(det);
        }
        let pv = m[col][col];
        det = field.mul(det, pv);
        let inv = field.inv(pv)?;
        for x in m[col][col..n].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[col].clone();
        for row in m[col + 1..n].iter_mut() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (x, &pv) in row[col..n].iter_mut().zip(&pivot_row[col..n]) {
                *x = field.sub(*x, field.mul(factor, pv));
            }
        }
    }
    Ok(field.elt(det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    // -- in-test oracle: independent modulus search by exhaustive scan -----

    /// Naive irreducibility: a monic degree-m polynomial over GF(p) is
    /// irreducible iff no product of two lower-degree monic polynomials
    /// equals it. Checked here by evaluating divisibility against every
    /// monic polynomial of smaller degree (independent of the production
    /// trial-division code path's early exits).
    fn oracle_minimal_modulus(p: u64, m: usize) -> Vec<u64> {
        if m == 1 {
            return vec![0, 1];
        }
        'cand: for low in 0..p.pow(m as u32) {
            let mut f = encoding_to_poly(low, p);
            f.resize(m, 0);
            f.push(1);
            for d in 1..m {
                for dl in 0..p.pow(d as u32) {
                    let mut g = encoding_to_poly(dl, p);
                    g.resize(d, 0);
                    g.push(1);
                    if poly_degree(&poly_rem(&f, &g, p)).is_none() {
                        continue 'cand;
                    }
                }
            }
            return f;
        }
        unreachable!()
    }

    fn enc_of(poly: &[u64], p: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    #[test]
    fn canonical_modulus_encodings() {
        // (p, m, expected encoding of the full modulus polynomial)
        let cases = [
            (2, 1, 2u64),  // x
            (2, 2, 7),     // x^2+x+1
            (2, 3, 11),    // x^3+x+1
            (2, 4, 19),    // x^4+x+1
            (2, 6, 67),    // x^6+x+1
            (2, 9, 515),   // x^9+x+1
            (3, 2, 10),    // x^2+1
            (3, 4, 86),    // x^4+x+2? -> 86 = 81+3+2
            (5, 1, 5),     // x
            (5, 2, 27),    // x^2+2
            (7, 1, 7),
            (23, 1, 23),
        ];
        for (p, m, enc) in cases {
            let f = Field::new(p, m).unwrap();
            assert_eq!(f.modulus_encoding(), enc, "GF({p}^{m})");
            assert_eq!(enc_of(&oracle_minimal_modulus(p, m), p), enc, "oracle GF({p}^{m})");
        }
    }

    #[test]
    fn gf16_uses_x4_plus_x_plus_1() {
        let f = Field::new(2, 4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn known_products_and_sums() {
        let f16 = Field::new(2, 4).unwrap();
        // (x^3) * (x) = x^4 = x + 1 -> encoding 3.
        assert_eq!(f16.mul(8, 2), 3);
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.add(3, 4), 2);
        assert_eq!(f5.mul(3, 4), 2);
        assert_eq!(f5.neg(2), 3);
    }

    #[test]
    fn frobenius_squares_over_prime_subfield() {
        let f16 = Field::new(2, 4).unwrap();
        // x^(2^2) = x^4 = x + 1 -> 3.
        assert_eq!(f16.frobenius(2, 2, 2).unwrap(), 3);
        // Frobenius with i=degree is the identity.
        for e in f16.encodings() {
            assert_eq!(f16.frobenius(e, 2, 4).unwrap(), e);
        }
    }

    #[test]
    fn field_axioms_small_fields_exhaustive() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let f = Field::new(p, m).unwrap();
            let n = f.size();
            for a in 0..n {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    let ai = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, ai), 1, "inverse in GF({p}^{m}) of {a}");
                }
                for b in 0..n {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..n {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity in GF({p}^{m})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_fixes_subfield() {
        for (p, m, base) in [(2u64, 4usize, 4u64), (3, 4, 9), (2, 6, 8)] {
            let f = Field::new(p, m).unwrap();
            for a in (0..f.size()).step_by(3) {
                for b in (0..f.size()).step_by(5) {
                    let fa = f.frobenius(a, base, 1).unwrap();
                    let fb = f.frobenius(b, base, 1).unwrap();
                    let fab = f.frobenius(f.add(a, b), base, 1).unwrap();
                    assert_eq!(fab, f.add(fa, fb));
                }
            }
            for &s in &f.subfield_elements(base).unwrap() {
                assert_eq!(f.frobenius(s, base, 1).unwrap(), s);
            }
        }
    }

    #[test]
    fn subfield_gf4_in_gf16() {
        let f16 = Field::new(2, 4).unwrap();
        assert_eq!(f16.subfield_elements(4).unwrap(), vec![0, 1, 6, 7]);
    }

    #[test]
    fn independence_depends_on_base_field() {
        let f16 = Field::new(2, 4).unwrap();
        // ω = encoding 6 lies in GF(4): {1, ω} is GF(2)-independent but
        // GF(4)-dependent.
        let elems = [f16.one(), f16.elt(6)];
        assert!(linearly_independent_over(&elems, 2).unwrap());
        assert!(!linearly_independent_over(&elems, 4).unwrap());
    }

    #[test]
    fn polynomial_basis_is_independent_moore_det_one() {
        // {1, x} over GF(2) inside GF(4): Moore determinant 1.
        let f4 = Field::new(2, 2).unwrap();
        let basis = [f4.one(), f4.elt(2)];
        assert_eq!(moore_determinant(&basis, 2).unwrap().index(), 1);
        assert!(linearly_independent_over(&basis, 2).unwrap());
        // {1, x, x^2, x^3} over GF(2) inside GF(16): Moore determinant 1.
        let f16 = Field::new(2, 4).unwrap();
        let basis: Vec<Felt> = [1u64, 2, 4, 8].iter().map(|&e| f16.elt(e)).collect();
        assert_eq!(moore_determinant(&basis, 2).unwrap().index(), 1);
        assert!(linearly_independent_over(&basis, 2).unwrap());
    }

    #[test]
    fn moore_determinant_detects_dependence() {
        let f16 = Field::new(2, 4).unwrap();
        // {1, ω} with ω in GF(4): dependent over GF(4) -> det 0; independent
        // over GF(2) -> det nonzero.
        let elems = [f16.one(), f16.elt(6)];
        assert!(moore_determinant(&elems, 4).unwrap().is_zero());
        assert!(!moore_determinant(&elems, 2).unwrap().is_zero());
    }

    #[test]
    fn moore_determinant_iff_independent_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0x4d4f4f52);
        for (p, m, base, count) in [(2u64, 4usize, 2u64, 2usize), (2, 4, 4, 2), (3, 4, 3, 3), (3, 4, 9, 2)] {
            let f = Field::new(p, m).unwrap();
            for _ in 0..150 {
                let elems: Vec<Felt> =
                    (0..count).map(|_| f.elt(rng.random_range(0..f.size()))).collect();
                let indep = linearly_independent_over(&elems, base).unwrap();
                let det = moore_determinant(&elems, base).unwrap();
                assert_eq!(indep, !det.is_zero(), "p={p} m={m} base={base} {elems:?}");
            }
        }
    }

    #[test]
    fn vandermonde_product_formula_prime_field() {
        // Over a prime field, a 4x4 matrix with rows (1, a, a^2, a^3) has
        // determinant prod_{i<j} (a_j - a_i). For a = (0, 1, 8, 9) over
        // GF(23) this is 7.
        let f = Field::new(23, 1).unwrap();
        let alphas = [0u64, 1, 8, 9];
        let mut det = 1u64;
        for i in 0..4 {
            for j in i + 1..4 {
                det = f.mul(det, f.sub(alphas[j], alphas[i]));
            }
        }
        assert_eq!(det, 7);
    }

    #[test]
    fn moore_matches_product_formula() {
        // Product formula for the Moore determinant with respect to GF(base):
        // det = prod over all nonzero "last rows": beta_1 * prod_{j=1}^{n-1}
        //       prod_{c in GF(base)^j} (beta_{j+1} - sum_i c_i beta_i).
        let f = Field::new(2, 4).unwrap();
        let base = 4u64;
        let sub = f.subfield_elements(base).unwrap();
        for elems_enc in [[2u64, 3], [5, 9], [1, 6], [7, 11]] {
            let elems: Vec<Felt> = elems_enc.iter().map(|&e| f.elt(e)).collect();
            let mut expect = elems[0].index();
            for &c in &sub {
                let combo = f.mul(c, elems[0].index());
                expect = f.mul(expect, f.sub(elems[1].index(), combo));
            }
            let got = moore_determinant(&elems, base).unwrap().index();
            assert_eq!(got, expect, "elems {elems_enc:?}");
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = Field::new(3, 4).unwrap();
        for a in (0..f.size()).step_by(7) {
            let mut acc = 1u64;
            for e in 0..12u32 {
                assert_eq!(f.pow(a, e as u128), acc);
                acc = f.mul(acc, a);
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(6, 1).unwrap_err(), GfError::NotPrime(6));
        assert!(matches!(Field::new(2, 0).unwrap_err(), GfError::UnsupportedSize { .. }));
        assert!(matches!(Field::new(2, 21).unwrap_err(), GfError::UnsupportedSize { .. }));
        // x^2 + 1 is reducible over GF(2) ((x+1)^2).
        assert!(matches!(
            Field::with_modulus(2, 2, &[1, 0, 1]).unwrap_err(),
            GfError::BadModulus(_)
        ));
        // Non-monic.
        assert!(matches!(
            Field::with_modulus(3, 2, &[1, 0, 2]).unwrap_err(),
            GfError::BadModulus(_)
        ));
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.inv(0).unwrap_err(), GfError::ZeroInverse);
        assert!(f.checked_elt(4).is_err());
        assert!(f.subfield_degree(8).is_err());
        assert!(Field::new(2, 4).unwrap().subfield_degree(8).is_err()); // 8 = 2^3, 3 does not divide 4
    }

    #[test]
    fn with_modulus_accepts_alternate_irreducible() {
        // x^4 + x^3 + 1 (encoding 25) is also irreducible over GF(2).
        let f = Field::with_modulus(2, 4, &[1, 0, 0, 1, 1]).unwrap();
        assert_eq!(f.modulus_encoding(), 25);
        // Same arithmetic laws hold; x^4 = x^3 + 1 -> 8*2 = 9.
        assert_eq!(f.mul(8, 2), 9);
        // Distinct from the canonical field.
        assert_ne!(f, Field::new(2, 4).unwrap());
    }

    #[test]
    fn felt_ops_and_coeffs() {
        let f = Field::new(2, 4).unwrap();
        let a = f.elt(8);
        let b = f.elt(2);
        assert_eq!((&a * &b).index(), 3);
        assert_eq!((&a + &b).index(), 10);
        assert_eq!((&a - &b).index(), 10);
        assert_eq!((-&a).index(), 8);
        assert_eq!(a.coeffs(), vec![0, 0, 0, 1]);
        assert_eq!(f.from_coeffs(&[0, 0, 0, 1]).unwrap(), a);
        assert_eq!(a.pow(2).index(), f.mul(8, 8));
        assert_eq!(a.inv().unwrap().index(), f.inv(8).unwrap());
    }

    #[test]
    fn of_order_factors_prime_powers() {
        assert_eq!(Field::of_order(16).unwrap(), Field::new(2, 4).unwrap());
        assert_eq!(Field::of_order(23).unwrap(), Field::new(23, 1).unwrap());
        assert!(Field::of_order(12).is_err());
        assert_eq!(factor_prime_power(81), Some((3, 4)));
        assert_eq!(factor_prime_power(1), None);
        assert_eq!(factor_prime_power(12), None);
    }

    proptest::proptest! {
        #[test]
        fn prop_field_laws_gf16(a in 0u64..16, b in 0u64..16, c in 0u64..16) {
            let f = Field::new(2, 4).unwrap();
            proptest::prop_assert_eq!(f.add(a, b), f.add(b, a));
            proptest::prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            proptest::prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            proptest::prop_assert_eq!(f.sub(f.add(a, b), b), a);
            if b != 0 {
                let bi = f.inv(b).unwrap();
                proptest::prop_assert_eq!(f.mul(f.mul(a, b), bi), a);
            }
        }

        #[test]
        fn prop_frobenius_multiplicative_gf81(a in 0u64..81, b in 0u64..81) {
            let f = Field::new(3, 4).unwrap();
            let fr = |x| f.frobenius(x, 9, 1).unwrap();
            proptest::prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
            proptest::prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        }
    }
}
