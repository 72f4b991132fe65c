//! Basic words `d_i` and `ω_i` of a residue class `(p, r)`.
//!
//! `d_0 = 1(-1)0^{p-2}` and `d_i = σ^q(d_{i-1})`; since `σ` has order `p`
//! only `r = q mod p` matters. The basic words are the running sums
//! `ω_i = d_0 + ... + d_i`. Everything here depends on `(p, r)` alone.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::words::{TernaryWord, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("p must be an odd prime (got {0})")]
    PNotOddPrime(i64),
    #[error("q must be an odd prime (got {0})")]
    QNotOddPrime(i64),
    #[error("p must be less than q (got p = {p}, q = {q})")]
    NotIncreasing { p: i64, q: i64 },
    #[error("q must not be divisible by p")]
    DivisibleByP,
    #[error("r must lie in [1, p-1] (got p = {p}, r = {r})")]
    ResidueOutOfRange { p: i64, r: i64 },
    #[error("index {index} out of range [0, {max}]")]
    IndexOutOfRange { index: usize, max: usize },
}

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
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

fn odd_prime(n: i64) -> Option<usize> {
    (n >= 3 && is_prime(n as u64)).then_some(n as usize)
}

/// Inverse of `a` modulo `m` for coprime `a`, `m`.
fn mod_inverse(a: usize, m: usize) -> usize {
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i64) as usize
}

/// A validated residue class `(p, r)`: `p` an odd prime, `1 <= r <= p - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    p: usize,
    r: usize,
    u_plus: usize,
}

impl ResidueClass {
    pub fn new(p: i64, r: i64) -> Result<Self, PairError> {
        let p = odd_prime(p).ok_or(PairError::PNotOddPrime(p))?;
        if r < 1 || r as usize >= p {
            return Err(PairError::ResidueOutOfRange { p: p as i64, r });
        }
        let r = r as usize;
        Ok(Self {
            p,
            r,
            u_plus: mod_inverse(r, p),
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// The unique `u+` in `[1, p-1]` with `u+ q ≡ 1 (mod p)`.
    pub fn u_plus(&self) -> usize {
        self.u_plus
    }

    /// `u- = p - u+`, so that `u- q ≡ -1 (mod p)`.
    pub fn u_minus(&self) -> usize {
        self.p - self.u_plus
    }

    fn check_index(&self, index: usize) -> Result<(), PairError> {
        if index >= self.p {
            return Err(PairError::IndexOutOfRange {
                index,
                max: self.p - 1,
            });
        }
        Ok(())
    }

    /// `d_i` from its letters: `+1` where `j + i r ≡ 0` and `-1` where
    /// `j + i r ≡ 1 (mod p)`.
    pub fn d_word(&self, i: usize) -> Result<TernaryWord, PairError> {
        self.check_index(i)?;
        let shift = i * self.r % self.p;
        let letters = (0..self.p)
            .map(|j| match (j + shift) % self.p {
                0 => 1,
                1 => -1,
                _ => 0,
            })
            .collect();
        Ok(TernaryWord::from_letters_unchecked(letters))
    }

    /// `I+(j)`: the unique `i` with `d_i[j] = 1`, namely `-u+ j mod p`.
    pub fn index_plus(&self, j: usize) -> Result<usize, PairError> {
        self.check_index(j)?;
        Ok((self.p - self.u_plus * j % self.p) % self.p)
    }

    /// `I-(j)`: the unique `i` with `d_i[j] = -1`, namely `u+ (1 - j) mod p`.
    pub fn index_minus(&self, j: usize) -> Result<usize, PairError> {
        self.check_index(j)?;
        let one_minus_j = (1 + self.p - j) % self.p;
        Ok(self.u_plus * one_minus_j % self.p)
    }

    /// `ω_i[j]` without building the family: 1 when `I+(j) <= i < I-(j)`,
    /// -1 when `I-(j) <= i < I+(j)`, 0 otherwise.
    pub fn omega_letter(&self, i: usize, j: usize) -> Result<i8, PairError> {
        self.check_index(i)?;
        let plus = self.index_plus(j)?;
        let minus = self.index_minus(j)?;
        Ok(if plus <= i && i < minus {
            1
        } else if minus <= i && i < plus {
            -1
        } else {
            0
        })
    }

    /// `S(i, j) = ω_i[0] + ... + ω_i[j]`, through the indicator form
    /// `1_A - 1_B` with `A = {I+(j) <= i}` and `B = {u+ <= i}`.
    pub fn s_map(&self, i: usize, j: usize) -> Result<i64, PairError> {
        self.check_index(i)?;
        let in_a = self.index_plus(j)? <= i;
        let in_b = self.u_plus <= i;
        Ok(in_a as i64 - in_b as i64)
    }

    /// Builds all `d_i` and `ω_i` for this class.
    pub fn family(&self) -> BasicWordFamily {
        BasicWordFamily::new(*self)
    }
}

/// The `p` words `d_0 .. d_{p-1}` and `ω_0 .. ω_{p-1}` of a residue class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicWordFamily {
    class: ResidueClass,
    ds: Vec<TernaryWord>,
    omegas: Vec<TernaryWord>,
}

impl BasicWordFamily {
    pub fn new(class: ResidueClass) -> Self {
        let p = class.p;
        let mut d0 = vec![0i8; p];
        d0[0] = 1;
        d0[1] = -1;
        let d0 = TernaryWord::from_letters_unchecked(d0);

        let mut ds = Vec::with_capacity(p);
        let mut omegas = Vec::with_capacity(p);
        ds.push(d0.clone());
        omegas.push(d0);
        for i in 1..p {
            let d = ds[i - 1]
                .rotate_left(class.r)
                .expect("basic words are nonempty");
            let omega = match omegas[i - 1].add(&d) {
                Ok(omega) => omega,
                Err(WordError::OutOfAlphabet { position, value }) => panic!(
                    "ω_{i} left the alphabet at position {position} (value {value}) \
                     for p = {p}, r = {}",
                    class.r
                ),
                Err(e) => panic!("ω_{i}: {e}"),
            };
            ds.push(d);
            omegas.push(omega);
        }
        Self { class, ds, omegas }
    }

    pub fn class(&self) -> ResidueClass {
        self.class
    }

    pub fn p(&self) -> usize {
        self.class.p
    }

    pub fn ds(&self) -> &[TernaryWord] {
        &self.ds
    }

    pub fn omegas(&self) -> &[TernaryWord] {
        &self.omegas
    }

    pub fn d(&self, i: usize) -> &TernaryWord {
        &self.ds[i]
    }

    pub fn omega(&self, i: usize) -> &TernaryWord {
        &self.omegas[i]
    }
}

/// A bounded `(p, r) -> family` cache shared between threads.
///
/// Published families are immutable. When the cache is full an arbitrary
/// entry is evicted.
pub struct FamilyCache {
    capacity: usize,
    entries: Mutex<HashMap<ResidueClass, Arc<BasicWordFamily>>>,
}

impl FamilyCache {
    pub fn new(capacity: usize) -> Self {
        Self {
            capacity: capacity.max(1),
            entries: Mutex::new(HashMap::new()),
        }
    }

    pub fn get(&self, class: ResidueClass) -> Arc<BasicWordFamily> {
        if let Some(family) = self.entries.lock().unwrap().get(&class) {
            return Arc::clone(family);
        }
        // Build outside the lock; a concurrent builder may win the insert.
        let family = Arc::new(BasicWordFamily::new(class));
        let mut entries = self.entries.lock().unwrap();
        if let Some(existing) = entries.get(&class) {
            return Arc::clone(existing);
        }
        if entries.len() >= self.capacity {
            let victim = *entries.keys().next().unwrap();
            entries.remove(&victim);
        }
        entries.insert(class, Arc::clone(&family));
        family
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Process-wide family cache.
pub fn cached_family(class: ResidueClass) -> Arc<BasicWordFamily> {
    static CACHE: OnceLock<FamilyCache> = OnceLock::new();
    CACHE.get_or_init(|| FamilyCache::new(512)).get(class)
}

/// A validated prime pair `3 <= p < q` with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePair {
    p: usize,
    q: usize,
    class: ResidueClass,
}

impl PrimePair {
    pub fn new(p: i64, q: i64) -> Result<Self, PairError> {
        let p_ok = odd_prime(p).ok_or(PairError::PNotOddPrime(p))?;
        let q_ok = odd_prime(q).ok_or(PairError::QNotOddPrime(q))?;
        if p_ok >= q_ok {
            return Err(PairError::NotIncreasing { p, q });
        }
        let r = q_ok % p_ok;
        if r == 0 {
            return Err(PairError::DivisibleByP);
        }
        Ok(Self {
            p: p_ok,
            q: q_ok,
            class: ResidueClass::new(p, r as i64)?,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// `q mod p`.
    pub fn r(&self) -> usize {
        self.class.r
    }

    /// `⌊q/p⌋`.
    pub fn quotient(&self) -> usize {
        self.q / self.p
    }

    /// `m = (p-1)(q-1)`, the degree of `Φ_pq`.
    pub fn m(&self) -> usize {
        (self.p - 1) * (self.q - 1)
    }

    pub fn u_plus(&self) -> usize {
        self.class.u_plus()
    }

    pub fn u_minus(&self) -> usize {
        self.class.u_minus()
    }

    pub fn residue_class(&self) -> ResidueClass {
        self.class
    }
}

/// Sign pattern of the nonzero letters of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alternation {
    /// Consecutive nonzero letters always have opposite signs.
    pub alternates: bool,
    pub first_sign: i8,
    pub last_sign: i8,
}

pub fn alternation_report(u: &TernaryWord) -> Result<Alternation, WordError> {
    let mut nonzero = u.letters().iter().copied().filter(|&l| l != 0);
    let first_sign = nonzero.next().ok_or(WordError::NoNonzeroLetters)?;
    let mut alternates = true;
    let mut last_sign = first_sign;
    for l in nonzero {
        if l == last_sign {
            alternates = false;
        }
        last_sign = l;
    }
    Ok(Alternation {
        alternates,
        first_sign,
        last_sign,
    })
}
