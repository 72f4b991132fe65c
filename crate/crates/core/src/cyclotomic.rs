//! The cyclotomic word `a_pq` and its gap structure.
//!
//! `a_pq = ω_0^{q/p} ω_1^{q/p} ... ω_{p-3}^{q/p} ω_{p-2}^{(q-p+2)/p}`, where
//! `u^{k/p}` is the length-`k` prefix of `u u u ...`. Position `j` of the
//! word holds the coefficient of `X^j` in `Φ_pq`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::basicwords::{cached_family, PrimePair};
use crate::words::{GapRun, TernaryWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("special form inapplicable: needs r = 1 or r = p - 1 (p = {p}, r = {r})")]
    SpecialFormInapplicable { p: usize, r: usize },
    #[error("half word needs p >= 5 (got p = {p})")]
    HalfWordNeedsLargerP { p: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicWord {
    pair: PrimePair,
    word: TernaryWord,
}

impl CyclotomicWord {
    pub fn pair(&self) -> PrimePair {
        self.pair
    }

    pub fn word(&self) -> &TernaryWord {
        &self.word
    }

    pub fn into_word(self) -> TernaryWord {
        self.word
    }

    /// The letter at position `m/2`.
    pub fn middle_letter(&self) -> i8 {
        self.word.letters()[self.pair.m() / 2]
    }

    /// Names of the structural invariants this word violates; empty when
    /// the length, reciprocity, first letter, middle letter and letter sum
    /// are as expected.
    pub fn invariant_violations(&self) -> Vec<&'static str> {
        let letters = self.word.letters();
        let mut violations = Vec::new();
        if letters.len() != self.pair.m() + 1 {
            violations.push("length");
            return violations;
        }
        if letters.iter().ne(letters.iter().rev()) {
            violations.push("palindrome");
        }
        if letters[0] != 1 {
            violations.push("first letter");
        }
        if self.middle_letter() == 0 {
            violations.push("middle letter");
        }
        if self.word.letter_sum() != 1 {
            violations.push("letter sum");
        }
        violations
    }
}

/// Assembles `a_pq` from the basic words of `(p, q mod p)`.
pub fn build_word(pair: &PrimePair) -> CyclotomicWord {
    let (p, q) = (pair.p(), pair.q());
    let family = cached_family(pair.residue_class());
    let mut letters = Vec::with_capacity(pair.m() + 1);
    for i in 0..p - 2 {
        family.omega(i).write_fractional_power(q, &mut letters);
    }
    family
        .omega(p - 2)
        .write_fractional_power(q - p + 2, &mut letters);
    debug_assert_eq!(letters.len(), pair.m() + 1);
    CyclotomicWord {
        pair: *pair,
        word: TernaryWord::from_letters_unchecked(letters),
    }
}

/// The block `v_i` of the closed forms for `r = 1` and `r = p - 1`.
pub fn special_block(p: usize, r: usize, i: usize) -> Option<TernaryWord> {
    let mut letters = vec![0i8; p];
    if r == 1 {
        // 0^i (-1) 0^{p-i-2} 1
        letters[i] = -1;
        letters[p - 1] = 1;
    } else if r == p - 1 {
        // 0^{p-i-2} 1 0^i (-1)
        letters[p - i - 2] = 1;
        letters[p - 1] = -1;
    } else {
        return None;
    }
    Some(TernaryWord::from_letters_unchecked(letters))
}

/// `a_pq` from the closed forms for `q ≡ ±1 (mod p)`:
/// `1 v_0^k ... v_{p-2}^k` when `r = 1` and
/// `1(-1) v_0^k v_1^{k+1} ... v_{p-3}^{k+1} v_{p-2}^k 1` when `r = p - 1`,
/// with `k = ⌊q/p⌋`.
pub fn build_word_special(pair: &PrimePair) -> Result<CyclotomicWord, CyclotomicError> {
    let (p, r, k) = (pair.p(), pair.r(), pair.quotient());
    if r != 1 && r != p - 1 {
        return Err(CyclotomicError::SpecialFormInapplicable { p, r });
    }
    let mut letters = Vec::with_capacity(pair.m() + 1);
    if r == 1 {
        letters.push(1);
        for i in 0..=p - 2 {
            let v = special_block(p, r, i).unwrap();
            letters.extend_from_slice(v.power(k).letters());
        }
    } else {
        letters.extend_from_slice(&[1, -1]);
        for i in 0..=p - 2 {
            let v = special_block(p, r, i).unwrap();
            let reps = if i == 0 || i == p - 2 { k } else { k + 1 };
            letters.extend_from_slice(v.power(reps).letters());
        }
        letters.push(1);
    }
    Ok(CyclotomicWord {
        pair: *pair,
        word: TernaryWord::from_letters_unchecked(letters),
    })
}

/// `c_pq = ω_0^{q/p} ... ω_{(p-5)/2}^{q/p} ω_{(p-3)/2}^{(q-(p-1)/2)/p}`,
/// the first `m/2` letters of `a_pq`.
pub fn half_word(pair: &PrimePair) -> Result<TernaryWord, CyclotomicError> {
    let (p, q) = (pair.p(), pair.q());
    if p < 5 {
        return Err(CyclotomicError::HalfWordNeedsLargerP { p });
    }
    let family = cached_family(pair.residue_class());
    let last = (p - 3) / 2;
    let mut letters = Vec::with_capacity(pair.m() / 2);
    for i in 0..last {
        family.omega(i).write_fractional_power(q, &mut letters);
    }
    family
        .omega(last)
        .write_fractional_power(q - (p - 1) / 2, &mut letters);
    Ok(TernaryWord::from_letters_unchecked(letters))
}

/// Per-length gap counts and gap positions of `a_pq`.
///
/// Gaps are zero-run length + 1 over the runs between nonzero letters, so
/// every key of `counts` is at least 2. Positions are the indices of the
/// first zero of each run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapProfile {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub g1: usize,
    pub g2: Option<usize>,
    pub counts: BTreeMap<usize, usize>,
    pub g1_positions: Vec<usize>,
    pub g2_positions: Vec<usize>,
    #[serde(skip)]
    runs: Vec<GapRun>,
    #[serde(skip)]
    word_len: usize,
}

impl GapProfile {
    pub fn from_word(pair: &PrimePair, word: &TernaryWord) -> Self {
        let runs: Vec<GapRun> = word.interior_gapblocks().collect();
        let mut counts = BTreeMap::new();
        for run in &runs {
            *counts.entry(run.gap()).or_insert(0) += 1;
        }
        let g1 = counts.keys().next_back().copied().unwrap_or(0);
        let g2 = counts.keys().rev().nth(1).copied();
        let positions = |gap: Option<usize>| -> Vec<usize> {
            runs.iter()
                .filter(|run| Some(run.gap()) == gap)
                .map(|run| run.start)
                .collect()
        };
        Self {
            p: pair.p(),
            q: pair.q(),
            r: pair.r(),
            g1,
            g2,
            g1_positions: positions(Some(g1)),
            g2_positions: positions(g2),
            counts,
            runs,
            word_len: word.len(),
        }
    }

    pub fn count(&self, gap: usize) -> usize {
        self.counts.get(&gap).copied().unwrap_or(0)
    }

    pub fn runs(&self) -> &[GapRun] {
        &self.runs
    }

    /// Runs of the given gap whose zeros all lie in `[lo, hi]`.
    pub fn count_in_window(&self, gap: usize, lo: usize, hi: usize) -> usize {
        self.runs
            .iter()
            .filter(|run| run.gap() == gap && run.start >= lo && run.last() <= hi)
            .count()
    }

    /// Runs of the given gap containing both position `b` and `b + 1`.
    pub fn count_straddling(&self, gap: usize, b: usize) -> usize {
        self.runs
            .iter()
            .filter(|run| run.gap() == gap && run.start <= b && run.last() > b)
            .count()
    }

    /// Whether the runs are invariant under `j -> len - 1 - j`.
    pub fn is_mirror_symmetric(&self) -> bool {
        let n = self.word_len;
        self.runs
            .iter()
            .rev()
            .map(|run| GapRun {
                start: n - 1 - run.last(),
                zeros: run.zeros,
            })
            .eq(self.runs.iter().copied())
    }
}

pub fn gap_profile(pair: &PrimePair) -> GapProfile {
    GapProfile::from_word(pair, build_word(pair).word())
}

/// The closed-form claims checked by [`verify_theorems`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// `r = 1`: exactly `2⌊q/p⌋` gaps of each length in `[2, p-1]`.
    CountsResidueOne,
    /// `r = p-1`: `2⌊q/p⌋` gaps of length `p-1`, `2⌊q/p⌋+2` of each length in `[2, p-2]`.
    CountsResidueMinusOne,
    /// `p >= 5`: `g2 = max{r-1, p-r-1}` with at least `2⌊q/p⌋` occurrences.
    SecondGap,
    /// `r = 1`: the closed form agrees with the basic-word construction.
    ClosedFormResidueOne,
    /// `r = p-1`: the closed form agrees with the basic-word construction.
    ClosedFormResidueMinusOne,
    /// `g1 = p-1`, `⌊q/p⌋` occurrences in each of the first and last `q` positions.
    FirstGapLocation,
    /// `p >= 5`, `r ∈ [2, p-2]`: at least `⌊q/p⌋` second gaps in `[q, 2q-1]`
    /// and in its mirror.
    SecondGapLocation,
}

impl Claim {
    pub const ALL: [Claim; 7] = [
        Claim::CountsResidueOne,
        Claim::CountsResidueMinusOne,
        Claim::SecondGap,
        Claim::ClosedFormResidueOne,
        Claim::ClosedFormResidueMinusOne,
        Claim::FirstGapLocation,
        Claim::SecondGapLocation,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Claim::CountsResidueOne => "1.1(1)",
            Claim::CountsResidueMinusOne => "1.1(2)",
            Claim::SecondGap => "1.2",
            Claim::ClosedFormResidueOne => "2.4(1)",
            Claim::ClosedFormResidueMinusOne => "2.4(2)",
            Claim::FirstGapLocation => "2.5(1)",
            Claim::SecondGapLocation => "2.5(2)",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for Claim {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub claim: Claim,
    pub applicable: bool,
    pub holds: bool,
    /// For an inapplicable claim, the hypothesis the pair fails.
    pub hypothesis: Option<String>,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub claims: Vec<ClaimRecord>,
}

impl TheoremReport {
    /// True when every applicable claim holds.
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| !c.applicable || c.holds)
    }

    /// Applicable claims that fail.
    pub fn failures(&self) -> Vec<Claim> {
        self.claims
            .iter()
            .filter(|c| c.applicable && !c.holds)
            .map(|c| c.claim)
            .collect()
    }

    pub fn record(&self, claim: Claim) -> &ClaimRecord {
        self.claims.iter().find(|c| c.claim == claim).unwrap()
    }
}

fn skipped(claim: Claim, hypothesis: String) -> ClaimRecord {
    ClaimRecord {
        claim,
        applicable: false,
        holds: false,
        hypothesis: Some(hypothesis),
        details: String::new(),
    }
}

fn checked(claim: Claim, holds: bool, details: String) -> ClaimRecord {
    ClaimRecord {
        claim,
        applicable: true,
        holds,
        hypothesis: None,
        details,
    }
}

fn format_counts(counts: &BTreeMap<usize, usize>) -> String {
    let body: Vec<String> = counts.iter().map(|(g, c)| format!("{g}:{c}")).collect();
    format!("{{{}}}", body.join(", "))
}

/// Checks every closed-form claim that applies to `pair`. Failures are
/// reported, never raised.
pub fn verify_theorems(pair: &PrimePair) -> TheoremReport {
    let word = build_word(pair);
    let profile = GapProfile::from_word(pair, word.word());
    verify_with(pair, &word, &profile)
}

/// [`verify_theorems`] on an already built word and profile.
pub fn verify_with(pair: &PrimePair, word: &CyclotomicWord, profile: &GapProfile) -> TheoremReport {
    let (p, q, r, k, m) = (pair.p(), pair.q(), pair.r(), pair.quotient(), pair.m());
    let mut claims = Vec::with_capacity(Claim::ALL.len());

    // 1.1(1)
    if r == 1 {
        let expected: BTreeMap<usize, usize> = (2..p).map(|i| (i, 2 * k)).collect();
        claims.push(checked(
            Claim::CountsResidueOne,
            profile.counts == expected,
            format!(
                "expected counts {} observed {}",
                format_counts(&expected),
                format_counts(&profile.counts)
            ),
        ));
    } else {
        claims.push(skipped(
            Claim::CountsResidueOne,
            format!("requires r = 1 (r = {r})"),
        ));
    }

    // 1.1(2)
    if r == p - 1 {
        let expected: BTreeMap<usize, usize> = (2..p)
            .map(|i| (i, if i == p - 1 { 2 * k } else { 2 * k + 2 }))
            .collect();
        claims.push(checked(
            Claim::CountsResidueMinusOne,
            profile.counts == expected,
            format!(
                "expected counts {} observed {}",
                format_counts(&expected),
                format_counts(&profile.counts)
            ),
        ));
    } else {
        claims.push(skipped(
            Claim::CountsResidueMinusOne,
            format!("requires r = p - 1 (r = {r})"),
        ));
    }

    let expected_g2 = (r - 1).max(p - r - 1);

    // 1.2
    if p >= 5 {
        let count = profile.g2.map_or(0, |g2| profile.count(g2));
        claims.push(checked(
            Claim::SecondGap,
            profile.g2 == Some(expected_g2) && count >= 2 * k,
            format!(
                "expected g2 = {expected_g2} with count >= {} observed g2 = {:?} with count {count}",
                2 * k,
                profile.g2
            ),
        ));
    } else {
        claims.push(skipped(
            Claim::SecondGap,
            format!("requires p >= 5 (p = {p})"),
        ));
    }

    // 2.4(1) and 2.4(2)
    for (claim, applies, hypothesis) in [
        (Claim::ClosedFormResidueOne, r == 1, "r = 1"),
        (Claim::ClosedFormResidueMinusOne, r == p - 1, "r = p - 1"),
    ] {
        if applies {
            let special = build_word_special(pair).expect("residue checked above");
            let mismatch = special
                .word()
                .letters()
                .iter()
                .zip(word.word().letters())
                .position(|(a, b)| a != b);
            let same_len = special.word().len() == word.word().len();
            let holds = same_len && mismatch.is_none();
            let details = match (same_len, mismatch) {
                (false, _) => format!("length {} vs {}", special.word().len(), word.word().len()),
                (true, Some(j)) => format!("first mismatch at position {j}"),
                (true, None) => format!("{} letters agree", word.word().len()),
            };
            claims.push(checked(claim, holds, details));
        } else {
            claims.push(skipped(claim, format!("requires {hypothesis} (r = {r})")));
        }
    }

    // 2.5(1)
    {
        let g1 = p - 1;
        let head = profile.count_in_window(g1, 0, q - 1);
        let tail = profile.count_in_window(g1, m - q + 1, m);
        let straddle = profile.count_straddling(g1, q - 1) + profile.count_straddling(g1, m - q);
        let holds = profile.g1 == g1
            && profile.count(g1) == 2 * k
            && head == k
            && tail == k
            && straddle == 0;
        claims.push(checked(
            Claim::FirstGapLocation,
            holds,
            format!(
                "expected g1 = {g1} x{} ({k} in [0, {}], {k} in [{}, {m}]) observed g1 = {} x{} \
                 ({head} in head, {tail} in tail, {straddle} straddling)",
                2 * k,
                q - 1,
                m - q + 1,
                profile.g1,
                profile.count(profile.g1)
            ),
        ));
    }

    // 2.5(2)
    if p >= 5 && (2..=p - 2).contains(&r) {
        let head = profile.count_in_window(expected_g2, q, 2 * q - 1);
        let mirror = profile.count_in_window(expected_g2, m - 2 * q + 1, m - q);
        let literal = profile.count_in_window(expected_g2, m - 2 * q - 1, m - q);
        let holds = profile.g2 == Some(expected_g2) && head >= k && mirror >= k;
        claims.push(checked(
            Claim::SecondGapLocation,
            holds,
            format!(
                "expected g2 = {expected_g2} at least {k} times in [{q}, {}] and in [{}, {}]; \
                 observed {head} and {mirror} ({literal} in [{}, {}])",
                2 * q - 1,
                m - 2 * q + 1,
                m - q,
                m - 2 * q - 1,
                m - q
            ),
        ));
    } else {
        claims.push(skipped(
            Claim::SecondGapLocation,
            format!("requires p >= 5 and 2 <= r <= p - 2 (p = {p}, r = {r})"),
        ));
    }

    TheoremReport { p, q, r, claims }
}
