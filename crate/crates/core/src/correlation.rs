//! Aperiodic and periodic autocorrelation, peak sidelobe level and merit
//! factor.
//!
//! Two aperiodic routes are provided: [`acf_reference`] is the direct double
//! loop and [`acf`] works on packed words, counting disagreements with
//! XOR + popcount and using `C(u) = (n - u) - 2 * disagreements(u)`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::seqcore::BinarySequence;

/// `C(0), ..., C(n-1)` together with the derived figures of merit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrelationProfile {
    pub n: usize,
    #[serde(rename = "c")]
    pub values: Vec<i64>,
    /// `max |C(u)|` over `0 < u < n`; `None` for `n = 1`.
    pub psl: Option<u64>,
    /// `n^2 / (2 sum C(u)^2)`; `None` when the sidelobe energy is zero.
    pub merit_factor: Option<MeritFactor>,
}

/// Exact reduced fraction `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeritFactor {
    pub num: u64,
    pub den: u64,
}

impl MeritFactor {
    pub fn new(num: u64, den: u64) -> Self {
        let g = num.gcd(&den).max(1);
        Self { num: num / g, den: den / g }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::fmt::Display for MeritFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl CorrelationProfile {
    pub fn from_values(values: Vec<i64>) -> Self {
        let n = values.len();
        let psl = (n >= 2).then(|| values[1..].iter().map(|c| c.unsigned_abs()).max().unwrap());
        let energy: u64 = values[1..].iter().map(|c| (c * c) as u64).sum();
        let merit_factor = (energy > 0).then(|| MeritFactor::new((n * n) as u64, 2 * energy));
        Self { n, values, psl, merit_factor }
    }

    /// `C(u)`.
    #[inline]
    pub fn c(&self, u: usize) -> i64 {
        self.values[u]
    }

    /// Sum of squared nontrivial correlations.
    pub fn sidelobe_energy(&self) -> u64 {
        self.values[1..].iter().map(|c| (c * c) as u64).sum()
    }
}

/// Full profile computed on the packed route.
pub fn acf(seq: &BinarySequence) -> CorrelationProfile {
    CorrelationProfile::from_values(acf_packed(seq))
}

/// `C(u) = sum_{k=1}^{n-u} A(k) A(k+u)` by direct summation.
pub fn acf_reference(seq: &BinarySequence) -> Vec<i64> {
    let a = seq.entries();
    let n = a.len();
    (0..n)
        .map(|u| (0..n - u).map(|i| a[i] as i64 * a[i + u] as i64).sum())
        .collect()
}

/// Word-packed XOR + popcount route for every shift.
pub fn acf_packed(seq: &BinarySequence) -> Vec<i64> {
    let words = seq.packed();
    let n = seq.len();
    (0..n).map(|u| packed_shift(&words, n, u)).collect()
}

/// 64 bits of `words` starting at bit `offset`; bits past the end read as 0.
#[inline]
fn window(words: &[u64], offset: usize) -> u64 {
    let (w, r) = (offset / 64, offset % 64);
    let lo = words.get(w).copied().unwrap_or(0) >> r;
    if r == 0 {
        lo
    } else {
        lo | words.get(w + 1).copied().unwrap_or(0) << (64 - r)
    }
}

#[inline]
fn packed_shift(words: &[u64], n: usize, u: usize) -> i64 {
    let len = n - u;
    let mut disagreements = 0u64;
    let mut i = 0;
    while i < len {
        let mut diff = window(words, i) ^ window(words, i + u);
        let rem = len - i;
        if rem < 64 {
            diff &= (1u64 << rem) - 1;
        }
        disagreements += diff.count_ones() as u64;
        i += 64;
    }
    len as i64 - 2 * disagreements as i64
}

/// `C(u)` for a sequence of length `n <= 64` held in the low bits of `word`.
#[inline]
pub fn word_shift(word: u64, n: usize, u: usize) -> i64 {
    let len = n - u;
    let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
    let d = ((word ^ (word >> u)) & mask).count_ones() as i64;
    len as i64 - 2 * d
}

/// `max |C(u)|` for a word-packed sequence, stopping as soon as the running
/// maximum exceeds `cap`. Returns a value `> cap` in that case.
#[inline]
pub fn word_psl_capped(word: u64, n: usize, cap: u64) -> u64 {
    let mut best = 0;
    for u in 1..n {
        let c = word_shift(word, n, u).unsigned_abs();
        if c > best {
            best = c;
            if best > cap {
                break;
            }
        }
    }
    best
}

/// `sum_{k=1}^{n} A(k) A(k+u)` with the second index reduced modulo `n`.
pub fn periodic_acf(seq: &BinarySequence) -> Vec<i64> {
    let a = seq.entries();
    let n = a.len();
    (0..n)
        .map(|u| {
            let head: i64 = (0..n - u).map(|i| a[i] as i64 * a[i + u] as i64).sum();
            let wrap: i64 = (n - u..n).map(|i| a[i] as i64 * a[i + u - n] as i64).sum();
            head + wrap
        })
        .collect()
}

/// Peak sidelobe level. Requires `n >= 2`.
pub fn psl(seq: &BinarySequence) -> Result<u64> {
    if seq.len() < 2 {
        return Err(Error::TooShort { what: "psl", n: seq.len(), min: 2 });
    }
    Ok(acf(seq).psl.expect("n >= 2"))
}

/// `prod_{k=1}^{n-u} A(k) A(k+u)` by direct multiplication.
pub fn shift_product(seq: &BinarySequence, u: usize) -> i64 {
    let a = seq.entries();
    (0..a.len() - u).map(|i| a[i] as i64 * a[i + u] as i64).product()
}
