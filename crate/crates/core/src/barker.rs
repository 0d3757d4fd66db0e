//! The Barker predicate and the identities every odd-length Barker sequence
//! satisfies.
//!
//! Identity checks never enforce the Barker premise. They evaluate the
//! identity on whatever sequence they are given, so the search pruner and the
//! property tests can use the raw predicate.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::correlation::{acf, shift_product, CorrelationProfile};
use crate::error::{Error, Result};
use crate::seqcore::BinarySequence;
use crate::sign::neg_one_pow;

/// True iff every nontrivial `|C(u)|` is at most 1. Requires `n >= 2`.
pub fn is_barker(seq: &BinarySequence) -> Result<bool> {
    if seq.len() < 2 {
        return Err(Error::TooShort { what: "is_barker", n: seq.len(), min: 2 });
    }
    Ok(acf(seq).psl.unwrap() <= 1)
}

/// Outcome of one check in a [`LemmaReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable(String),
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }

    pub fn na(reason: impl Into<String>) -> Self {
        Self::NotApplicable(reason.into())
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Self::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Self::Fail)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Pass => f.write_str("pass"),
            Self::Fail => f.write_str("fail"),
            Self::NotApplicable(reason) => write!(f, "n/a: {reason}"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Congruence of one nontrivial correlation: `C(u) = 0 (mod 4)` for odd `u`,
/// `C(u) = n (mod 4)` for even `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftCongruence {
    pub u: usize,
    pub c: i64,
    pub expected_residue: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    /// Why the premise (odd length, Barker) fails, if it does. The shifts are
    /// evaluated regardless.
    pub not_applicable: Option<String>,
    pub shifts: Vec<ShiftCongruence>,
}

impl CongruenceReport {
    pub fn all_hold(&self) -> bool {
        self.shifts.iter().all(|s| s.holds)
    }
}

pub fn check_congruences(seq: &BinarySequence) -> CongruenceReport {
    congruences_from(seq, &acf(seq))
}

fn congruences_from(seq: &BinarySequence, profile: &CorrelationProfile) -> CongruenceReport {
    let n = seq.len();
    let not_applicable = if n.is_multiple_of(2) {
        Some("even length".to_string())
    } else if n < 2 || profile.psl.unwrap() > 1 {
        Some("not a Barker sequence".to_string())
    } else {
        None
    };
    let shifts = (1..n)
        .map(|u| {
            let c = profile.c(u);
            let expected_residue = if u % 2 == 1 { 0 } else { (n % 4) as i64 };
            ShiftCongruence { u, c, expected_residue, holds: c.rem_euclid(4) == expected_residue }
        })
        .collect();
    CongruenceReport { not_applicable, shifts }
}

/// `A(k) A(n-k+1) = (-1)^((n+1)/2 + k)` for all `1 <= k <= n`.
pub fn check_skew_symmetry(seq: &BinarySequence) -> Result<bool> {
    let n = seq.len();
    if n.is_multiple_of(2) {
        return Err(Error::EvenLength { what: "skew symmetry", n });
    }
    let half = (n as i64 + 1) / 2;
    Ok((1..=n).all(|k| {
        (seq.get(k) * seq.get(n - k + 1)) as i64 == neg_one_pow(half + k as i64)
    }))
}

/// First `k` violating the skew-symmetry relation, if any.
pub fn skew_symmetry_violation(seq: &BinarySequence) -> Result<Option<usize>> {
    let n = seq.len();
    if n.is_multiple_of(2) {
        return Err(Error::EvenLength { what: "skew symmetry", n });
    }
    let half = (n as i64 + 1) / 2;
    Ok((1..=n).find(|&k| {
        (seq.get(k) * seq.get(n - k + 1)) as i64 != neg_one_pow(half + k as i64)
    }))
}

/// `A(k) A(k+1) = A(2k) A(2k+1)` for `1 <= k <= (n-3)/2`.
pub fn check_doubling(seq: &BinarySequence) -> Result<bool> {
    let n = seq.len();
    if n.is_multiple_of(2) {
        return Err(Error::EvenLength { what: "doubling identity", n });
    }
    if n < 3 {
        return Err(Error::TooShort { what: "doubling identity", n, min: 3 });
    }
    Ok((1..=(n - 3) / 2).all(|k| seq.get(k) * seq.get(k + 1) == seq.get(2 * k) * seq.get(2 * k + 1)))
}

/// `prod_{k=1}^{n-u} A(k) A(k+u) = (-1)^((n-u-C(u))/2)` for every shift.
/// Holds for every binary sequence.
pub fn check_product_identity(seq: &BinarySequence) -> bool {
    product_identity_from(seq, &acf(seq))
}

fn product_identity_from(seq: &BinarySequence, profile: &CorrelationProfile) -> bool {
    let n = seq.len() as i64;
    (0..seq.len()).all(|u| {
        let exponent = (n - u as i64 - profile.c(u)) / 2;
        shift_product(seq, u) == neg_one_pow(exponent)
    })
}

/// Every check above applied to one sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub barker: Verdict,
    pub c1_zero: Verdict,
    pub congruences_ok: Verdict,
    /// Shifts whose congruence fails; empty when all hold or not evaluated.
    pub congruence_failures: Vec<usize>,
    pub skew_symmetric: Verdict,
    pub doubling_ok: Verdict,
    pub product_identity_ok: Verdict,
    /// Check name to reason, for every check reported as not applicable.
    pub not_applicable: BTreeMap<String, String>,
}

impl LemmaReport {
    /// A Barker sequence of odd length must pass every odd-length check.
    pub fn premise_holds(&self) -> bool {
        self.barker.is_pass() && self.n % 2 == 1
    }

    /// False only when the premise holds and some implied check fails.
    pub fn consistent(&self) -> bool {
        !self.premise_holds()
            || [&self.c1_zero, &self.congruences_ok, &self.skew_symmetric, &self.doubling_ok]
                .iter()
                .all(|v| v.is_pass())
    }

    /// `(name, verdict)` pairs in display order.
    pub fn checks(&self) -> [(&'static str, &Verdict); 6] {
        [
            ("barker", &self.barker),
            ("c1_zero", &self.c1_zero),
            ("congruences_ok", &self.congruences_ok),
            ("skew_symmetric", &self.skew_symmetric),
            ("doubling_ok", &self.doubling_ok),
            ("product_identity_ok", &self.product_identity_ok),
        ]
    }
}

pub fn full_report(seq: &BinarySequence) -> LemmaReport {
    let n = seq.len();
    let profile = acf(seq);
    let odd = n % 2 == 1;

    let barker = match profile.psl {
        Some(p) => Verdict::from_bool(p <= 1),
        None => Verdict::na("length < 2"),
    };
    let c1_zero = if n < 2 {
        Verdict::na("length < 2")
    } else if !odd {
        Verdict::na("even length")
    } else {
        Verdict::from_bool(profile.c(1) == 0)
    };

    let congruences = congruences_from(seq, &profile);
    let (congruences_ok, congruence_failures) = if odd {
        let failures: Vec<usize> =
            congruences.shifts.iter().filter(|s| !s.holds).map(|s| s.u).collect();
        (Verdict::from_bool(failures.is_empty()), failures)
    } else {
        (Verdict::na("even length"), Vec::new())
    };

    let skew_symmetric = match check_skew_symmetry(seq) {
        Ok(ok) => Verdict::from_bool(ok),
        Err(_) => Verdict::na("even length"),
    };
    let doubling_ok = match check_doubling(seq) {
        Ok(ok) => Verdict::from_bool(ok),
        Err(Error::EvenLength { .. }) => Verdict::na("even length"),
        Err(_) => Verdict::na("length < 3"),
    };
    let product_identity_ok = Verdict::from_bool(product_identity_from(seq, &profile));

    let mut report = LemmaReport {
        n,
        barker,
        c1_zero,
        congruences_ok,
        congruence_failures,
        skew_symmetric,
        doubling_ok,
        product_identity_ok,
        not_applicable: BTreeMap::new(),
    };
    report.not_applicable = report
        .checks()
        .iter()
        .filter_map(|(name, v)| match v {
            Verdict::NotApplicable(r) => Some((name.to_string(), r.clone())),
            _ => None,
        })
        .collect();
    report
}
