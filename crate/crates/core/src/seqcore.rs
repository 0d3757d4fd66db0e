//! Sequence representation, the `(a, b)` symmetry group, canonical forms and
//! run decomposition.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sign::neg_one_pow;

/// A finite sequence over `{-1, +1}`.
///
/// Entries are addressed 1-based through [`BinarySequence::get`]; the slice
/// returned by [`BinarySequence::entries`] is the usual 0-based view.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    entries: Vec<i8>,
}

impl BinarySequence {
    /// Builds a sequence from explicit `±1` entries.
    pub fn from_signs(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(pos) = entries.iter().position(|&x| x != 1 && x != -1) {
            return Err(Error::InvalidArgument(format!(
                "entry {} is {}, expected -1 or +1",
                pos + 1,
                entries[pos]
            )));
        }
        Ok(Self { entries })
    }

    /// Builds a sequence from booleans, `true` meaning `+1`.
    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        let entries: Vec<i8> = bits.into_iter().map(|b| if b { 1 } else { -1 }).collect();
        Self::from_signs(entries)
    }

    /// Unpacks the low `n` bits of `word`; bit `k - 1` set means `A(k) = +1`.
    pub fn from_word(word: u64, n: usize) -> Result<Self> {
        if n > 64 {
            return Err(Error::InvalidArgument(format!("word length {n} exceeds 64")));
        }
        Self::from_bools((0..n).map(|i| word >> i & 1 == 1))
    }

    /// Parses a `+`/`-` or `1`/`0` string. One alphabet per string.
    pub fn parse(text: &str) -> Result<Self> {
        #[derive(PartialEq, Clone, Copy)]
        enum Alphabet {
            Signs,
            Digits,
        }
        let mut alphabet = None;
        let mut entries = Vec::with_capacity(text.len());
        for (i, c) in text.chars().enumerate() {
            let position = i + 1;
            let (alpha, value) = match c {
                '+' => (Alphabet::Signs, 1),
                '-' | '\u{2212}' => (Alphabet::Signs, -1),
                '1' => (Alphabet::Digits, 1),
                '0' => (Alphabet::Digits, -1),
                found => return Err(Error::IllegalChar { position, found }),
            };
            match alphabet {
                None => alphabet = Some(alpha),
                Some(a) if a != alpha => {
                    return Err(Error::MixedAlphabet { position, found: c });
                }
                _ => {}
            }
            entries.push(value);
        }
        Self::from_signs(entries)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; kept for API symmetry with `len`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `A(k)` for `1 <= k <= n`.
    ///
    /// Panics when `k` is out of range.
    #[inline]
    pub fn get(&self, k: usize) -> i8 {
        assert!(k >= 1 && k <= self.len(), "index {k} outside 1..={}", self.len());
        self.entries[k - 1]
    }

    /// `A(k)` as `i64`, or `None` outside `1..=n`. Accepts signed indices so
    /// formulas like `A(v - k)` can be evaluated without underflow checks.
    #[inline]
    pub fn try_get(&self, k: i64) -> Option<i64> {
        if k >= 1 && (k as usize) <= self.len() {
            Some(self.entries[k as usize - 1] as i64)
        } else {
            None
        }
    }

    #[inline]
    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Packs the sequence into little-endian 64-bit words, `+1` as a set bit.
    pub fn packed(&self) -> Vec<u64> {
        let mut words = vec![0u64; self.len().div_ceil(64)];
        for (i, &x) in self.entries.iter().enumerate() {
            if x == 1 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        words
    }

    /// The `(a, b)` transform: entry `k` becomes `A(k) * (-1)^(a + b k)`.
    pub fn transform(&self, t: TransformParams) -> Self {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, &x)| x * neg_one_pow(t.a as i64 + t.b as i64 * (i as i64 + 1)) as i8)
            .collect();
        Self { entries }
    }

    /// Returns the unique transform image with `A(1) = A(2) = +1` and the
    /// transform that produced it.
    pub fn canonicalize(&self) -> Result<(Self, TransformParams)> {
        if self.len() < 2 {
            return Err(Error::TooShort { what: "canonicalize", n: self.len(), min: 2 });
        }
        // B(2) = A(2) (-1)^a, so `a` alone fixes entry 2; then B(1) = A(1) (-1)^(a+b).
        let a = self.entries[1] == -1;
        let b = (self.entries[0] as i64 * neg_one_pow(a as i64)) == -1;
        let t = TransformParams { a, b };
        Ok((self.transform(t), t))
    }

    /// True when `A(1) = A(2) = +1`.
    pub fn is_canonical(&self) -> bool {
        self.len() >= 2 && self.entries[0] == 1 && self.entries[1] == 1
    }

    /// Entry `k` of the result is `A(n - k + 1)`.
    pub fn reverse(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        Self { entries }
    }

    /// Same sequence with entry `k` negated.
    pub fn flip(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.entries[k - 1] = -out.entries[k - 1];
        out
    }

    pub fn runs(&self) -> RunProfile {
        RunProfile::of(self)
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.entries {
            f.write_str(if x == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for BinarySequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Lexicographic on the `+`/`-` text form (`+` sorts first), then by length.
impl Ord for BinarySequence {
    fn cmp(&self, other: &Self) -> Ordering {
        // +1 before -1 is reversed numeric order.
        other
            .entries
            .iter()
            .zip(&self.entries)
            .map(|(a, b)| a.cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or_else(|| self.len().cmp(&other.len()))
    }
}

impl PartialOrd for BinarySequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Parameters `(a, b)` of the transform `A(k) -> A(k) (-1)^(a + b k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct TransformParams {
    #[serde(serialize_with = "bit")]
    pub a: bool,
    #[serde(serialize_with = "bit")]
    pub b: bool,
}

fn bit<S: Serializer>(x: &bool, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u8(*x as u8)
}

impl TransformParams {
    pub const IDENTITY: Self = Self { a: false, b: false };

    /// The four group elements.
    pub const ALL: [Self; 4] = [
        Self { a: false, b: false },
        Self { a: true, b: false },
        Self { a: false, b: true },
        Self { a: true, b: true },
    ];

    pub fn new(a: u8, b: u8) -> Self {
        Self { a: a & 1 == 1, b: b & 1 == 1 }
    }
}

impl fmt::Display for TransformParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={})", self.a as u8, self.b as u8)
    }
}

/// Run decomposition `0 = s_0 < s_1 < ... < s_m = n`.
///
/// Entries `s_j + 1 ..= s_{j+1}` all equal `(-1)^j A(1)`. When `s_1 > 1` and
/// some boundary is not a multiple of `s_1`, `e` is the smallest such index.
/// The first-block length `p` and prefix length `q` used informally elsewhere
/// are `s_1` and `s_e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunProfile {
    pub boundaries: Vec<usize>,
    pub run_count: usize,
    pub e: Option<usize>,
    pub s_e: Option<usize>,
    pub v: Option<usize>,
}

impl RunProfile {
    pub fn of(seq: &BinarySequence) -> Self {
        let a = seq.entries();
        let mut boundaries = vec![0];
        boundaries.extend((1..a.len()).filter(|&i| a[i] != a[i - 1]));
        boundaries.push(a.len());
        Self::from_boundaries(boundaries)
    }

    fn from_boundaries(boundaries: Vec<usize>) -> Self {
        let run_count = boundaries.len() - 1;
        let s1 = boundaries[1];
        let e = if s1 > 1 {
            (1..boundaries.len()).find(|&j| !boundaries[j].is_multiple_of(s1))
        } else {
            None
        };
        let s_e = e.map(|j| boundaries[j]);
        let v = s_e.map(|se| s1 + se);
        Self { boundaries, run_count, e, s_e, v }
    }

    /// `s_j`.
    #[inline]
    pub fn s(&self, j: usize) -> usize {
        self.boundaries[j]
    }

    #[inline]
    pub fn s1(&self) -> usize {
        self.boundaries[1]
    }

    #[inline]
    pub fn len(&self) -> usize {
        *self.boundaries.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn run_lengths(&self) -> Vec<usize> {
        self.boundaries.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Rebuilds the sequence from the boundaries and the sign of `A(1)`.
    pub fn reconstruct(&self, first: i8) -> BinarySequence {
        let mut entries = Vec::with_capacity(self.len());
        let mut sign = first;
        for len in self.run_lengths() {
            entries.extend(std::iter::repeat_n(sign, len));
            sign = -sign;
        }
        BinarySequence { entries }
    }
}
