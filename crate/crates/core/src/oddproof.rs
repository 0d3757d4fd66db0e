//! Run-structure bounds for odd Barker sequences and the endgame that limits
//! their length to 13.
//!
//! Write `s_1` for the first run length, `e` for the first run index with
//! `s_1 ∤ s_e` and `v = s_1 + s_e`. Every odd Barker sequence of length
//! `n > 5` with `A(1) = A(2) = +1` satisfies
//!
//! * `s_1`, `s_e` odd and `n >= 2 s_e - 3` ([`lemma2_check`]);
//! * `n <= s_1 + s_e + 1`, because otherwise the difference
//!   `C(n-v+1) - C(n-v-1)` equals `±(8(-1)^e - 2A(v) + 2A(v+1))`, whose
//!   magnitude is at least 4 ([`lemma3_breakdown`]).
//!
//! The two bounds leave three run patterns, settled by [`classify_case`].
//! [`theorem_scan`] cross-checks the resulting table against exhaustive
//! search.

use serde::Serialize;

use crate::barker::{check_skew_symmetry, full_report, LemmaReport, Verdict};
use crate::catalogue;
use crate::correlation::acf;
use crate::error::{Error, Result};
use crate::search::{search_barker, SearchOptions, Strategy};
use crate::seqcore::BinarySequence;
use crate::sign::neg_one_pow;

// ---------------------------------------------------------------------------
// parity and lower bound

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma2Check {
    pub n: usize,
    pub s1: usize,
    pub s_e: Option<usize>,
    pub s1_odd: Verdict,
    pub se_odd: Verdict,
    /// `n >= 2 s_e - 3`.
    pub length_bound: Verdict,
    /// Why the premise (odd `n > 5`, `s_1 > 1`, `e` defined) fails. The
    /// conjuncts are still evaluated where they make sense.
    pub not_applicable: Option<String>,
}

impl Lemma2Check {
    pub fn holds(&self) -> bool {
        self.s1_odd.is_pass() && self.se_odd.is_pass() && self.length_bound.is_pass()
    }
}

pub fn lemma2_check(seq: &BinarySequence) -> Lemma2Check {
    let n = seq.len();
    let runs = seq.runs();
    let s1 = runs.s1();
    let not_applicable = if n.is_multiple_of(2) {
        Some("even length".to_string())
    } else if n <= 5 {
        Some("length <= 5".to_string())
    } else if s1 == 1 {
        Some("s_1 = 1".to_string())
    } else if runs.e.is_none() {
        Some("e undefined".to_string())
    } else {
        None
    };
    let (se_odd, length_bound) = match runs.s_e {
        Some(se) => (Verdict::from_bool(se % 2 == 1), Verdict::from_bool(n + 3 >= 2 * se)),
        None => (Verdict::na("e undefined"), Verdict::na("e undefined")),
    };
    Lemma2Check {
        n,
        s1,
        s_e: runs.s_e,
        s1_odd: Verdict::from_bool(s1 % 2 == 1),
        se_odd,
        length_bound,
        not_applicable,
    }
}

// ---------------------------------------------------------------------------
// telescoping difference identity

/// Every quantity entering the identity
/// `(-1)^((n+1)/2) (C(n-v+1) - C(n-v-1)) = sum_j (-1)^j S_j + R - A(v) + A(v+1)`
/// and its evaluation `8(-1)^e - 2A(v) + 2A(v+1)`.
///
/// `s_terms` and `r_term` are the defining sums. `s_telescoped` is the
/// collapsed two-term form of each `S_j`; `s_shortcut` and `r_shortcut` are
/// the values the run structure predicts. Value fields are `None` when
/// `n < v + 1`, where the shifts leave `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma3Breakdown {
    pub n: usize,
    pub e: usize,
    pub s1: usize,
    pub s_e: usize,
    pub v: usize,
    /// `C(n-v+1) - C(n-v-1)` from the correlation profile.
    pub delta: Option<i64>,
    /// `(-1)^((n+1)/2) * delta` (odd `n` only).
    pub lhs: Option<i64>,
    pub s_terms: Vec<i64>,
    pub s_telescoped: Vec<i64>,
    pub s_shortcut: Vec<i64>,
    pub r_term: Option<i64>,
    pub r_shortcut: i64,
    /// `sum_j (-1)^j S_j + R - A(v) + A(v+1)` from the defining sums.
    pub rhs: Option<i64>,
    /// `(-1)^((n+1)/2) (8(-1)^e - 2A(v) + 2A(v+1))` (odd `n` only).
    pub closed_form: Option<i64>,
    pub applicable: bool,
    /// Premises that fail; empty iff `applicable`.
    pub reasons: Vec<String>,
}

impl Lemma3Breakdown {
    /// Invariants that fail on an applicable instance. Always empty for
    /// inapplicable ones.
    pub fn violations(&self) -> Vec<String> {
        if !self.applicable {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut check = |ok: bool, what: &str| {
            if !ok {
                out.push(what.to_string());
            }
        };
        let delta = self.delta.unwrap();
        check(Some(delta) == self.closed_form, "delta = closed form");
        check(delta.abs() >= 4, "|delta| >= 4");
        check(self.lhs == self.rhs, "difference identity");
        check(self.r_term == Some(self.r_shortcut), "R = 2(-1)^e");
        check(self.s_terms == self.s_telescoped, "S_j telescoping");
        check(self.s_terms == self.s_shortcut, "S_j evaluations");
        out
    }
}

/// `U_k = (-1)^k (A(v-k) - A(v-k+1))`, the telescoping potential with
/// `sum_{k=a+1}^{b} (-1)^k (A(v-k) - A(v-k+2)) = U_b - U_a`.
pub fn telescoping_potential(seq: &BinarySequence, v: i64, k: i64) -> Option<i64> {
    Some(neg_one_pow(k) * (seq.try_get(v - k)? - seq.try_get(v - k + 1)?))
}

/// `sum_{k=lo+1}^{hi} (-1)^k (A(v-k) - A(v-k+2))` by direct summation.
pub fn telescoping_sum(seq: &BinarySequence, v: i64, lo: i64, hi: i64) -> Option<i64> {
    (lo + 1..=hi)
        .map(|k| Some(neg_one_pow(k) * (seq.try_get(v - k)? - seq.try_get(v - k + 2)?)))
        .sum()
}

pub fn lemma3_breakdown(seq: &BinarySequence) -> Result<Lemma3Breakdown> {
    let n = seq.len();
    let runs = seq.runs();
    let e = runs.e.ok_or_else(|| Error::NotApplicable("e undefined".into()))?;
    let s1 = runs.s1();
    let se = runs.s(e);
    let v = s1 + se;

    let mut reasons = Vec::new();
    if n.is_multiple_of(2) {
        reasons.push("even length".to_string());
    } else if !check_skew_symmetry(seq)? {
        reasons.push("not skew-symmetric".to_string());
    }
    if s1.is_multiple_of(2) {
        reasons.push("s_1 even".to_string());
    }
    if se.is_multiple_of(2) {
        reasons.push("s_e even".to_string());
    }
    if seq.get(1) != 1 {
        reasons.push("A(1) = -1".to_string());
    }
    if n < v + 3 {
        reasons.push(format!("n = {n} < v + 3 = {}", v + 3));
    }

    let sign_e = neg_one_pow(e as i64);
    let mut out = Lemma3Breakdown {
        n,
        e,
        s1,
        s_e: se,
        v,
        delta: None,
        lhs: None,
        s_terms: Vec::new(),
        s_telescoped: Vec::new(),
        s_shortcut: Vec::new(),
        r_term: None,
        r_shortcut: 2 * sign_e,
        rhs: None,
        closed_form: None,
        applicable: reasons.is_empty(),
        reasons,
    };
    if n < v + 1 {
        return Ok(out);
    }

    let a = |k: i64| seq.try_get(k).expect("index within 1..=n");
    let vi = v as i64;
    let (av, av1) = (a(vi), a(vi + 1));
    let c = acf(seq).values;
    let delta = c[n - v + 1] - c[n - v - 1];
    out.delta = Some(delta);
    if n % 2 == 1 {
        let sign_n = neg_one_pow((n as i64 + 1) / 2);
        out.lhs = Some(sign_n * delta);
        out.closed_form = Some(sign_n * (8 * sign_e - 2 * av + 2 * av1));
    }

    for j in 0..e {
        let (lo, hi) = (runs.s(j) as i64, runs.s(j + 1) as i64);
        out.s_terms.push(telescoping_sum(seq, vi, lo, hi).expect("indices in range"));
        out.s_telescoped.push(
            telescoping_potential(seq, vi, hi).unwrap() - telescoping_potential(seq, vi, lo).unwrap(),
        );
        let shortcut = match j {
            0 => 2 * sign_e - av + av1,
            1 if e == 2 => -4,
            1 => -2 * sign_e,
            j if j == e - 1 => -2,
            _ => 0,
        };
        out.s_shortcut.push(shortcut);
    }

    let r: i64 = (se as i64 + 1..vi)
        .map(|k| neg_one_pow(k) * a(k) * (a(vi - k) - a(vi - k + 2)))
        .sum();
    out.r_term = Some(r);

    let alternating: i64 = out.s_terms.iter().enumerate().map(|(j, s)| neg_one_pow(j as i64) * s).sum();
    out.rhs = Some(alternating + r - av + av1);
    Ok(out)
}

// ---------------------------------------------------------------------------
// bounds chain

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsChain {
    pub n: usize,
    pub s1: usize,
    pub s_e: usize,
    /// `2 s_e - 3 <= n`.
    pub lower_ok: bool,
    /// `n <= s_1 + s_e + 1`.
    pub upper_ok: bool,
    /// `s_e - s_1`; at most 4 whenever both bounds hold.
    pub gap: i64,
}

impl BoundsChain {
    pub fn holds(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

pub fn bounds_chain(seq: &BinarySequence) -> Result<BoundsChain> {
    let runs = seq.runs();
    let se = runs.s_e.ok_or_else(|| Error::NotApplicable("e undefined".into()))?;
    let n = seq.len();
    let s1 = runs.s1();
    Ok(BoundsChain {
        n,
        s1,
        s_e: se,
        lower_ok: n + 3 >= 2 * se,
        upper_ok: n <= s1 + se + 1,
        gap: se as i64 - s1 as i64,
    })
}

// ---------------------------------------------------------------------------
// case table

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseId {
    /// `e = 3`: `(s_1, s_2, s_3) = (3, 6, 7)`, `n = 11`.
    Case1,
    /// `e = 2`, `s_2 = s_1 + 2`, `n = 2 s_1 + 1`: `s_1 = 3`, `n = 7`.
    Case2a,
    /// `e = 2`, `s_2 = s_1 + 2`, `n = 2 s_1 + 3`, `s_1 = 5`: `n = 13`.
    Case2b,
    /// `e = 2`, `(s_1, s_2) = (3, 5)`, `n = 9`: skew symmetry forces
    /// `A(6) = A(7) = 1` while the doubling identity forces `A(6) A(7) = -1`.
    #[serde(rename = "case2_reject9")]
    Case2Reject9,
    /// `n = 2 s_1 + 1` with `s_1 != 3`.
    #[serde(rename = "case2_reject_short")]
    Case2RejectShort,
    /// `n = 2 s_1 + 3` with `s_1 > 5`.
    #[serde(rename = "case2_reject_long")]
    Case2RejectLong,
    /// `e = 2`, `s_2 = s_1 + 4`: needs `n >= 2 s_1 + 7` but the corridor
    /// gives `n = 2 s_1 + 5`.
    Case3Reject,
    /// Premises or bounds corridor violated.
    OutOfScope,
}

impl CaseId {
    pub fn accepted(self) -> bool {
        matches!(self, Self::Case1 | Self::Case2a | Self::Case2b)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Case1 => "case1",
            Self::Case2a => "case2a",
            Self::Case2b => "case2b",
            Self::Case2Reject9 => "case2_reject9",
            Self::Case2RejectShort => "case2_reject_short",
            Self::Case2RejectLong => "case2_reject_long",
            Self::Case3Reject => "case3_reject",
            Self::OutOfScope => "out_of_scope",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseVerdict {
    pub case_id: CaseId,
    /// Length under consideration; `None` when no length is admissible.
    pub n: Option<usize>,
    pub s1: usize,
    pub e: usize,
    pub s_e: usize,
    /// Known boundary prefix `s_0, ..., s_e`.
    pub profile: Vec<usize>,
    pub witness: Option<BinarySequence>,
    /// The violated condition, for rejections and out-of-scope inputs.
    pub violated: Option<String>,
}

impl CaseVerdict {
    fn new(case_id: CaseId, n: Option<usize>, s1: usize, e: usize, se: usize) -> Self {
        let profile = if case_id == CaseId::Case1 { vec![0, 3, 6, 7] } else { vec![0, s1, se] };
        Self { case_id, n, s1, e, s_e: se, profile, witness: None, violated: None }
    }

    fn reject(case_id: CaseId, n: Option<usize>, s1: usize, e: usize, se: usize, why: &str) -> Self {
        Self { violated: Some(why.to_string()), ..Self::new(case_id, n, s1, e, se) }
    }

    fn accept(case_id: CaseId, n: usize, s1: usize, e: usize, se: usize, witness: BinarySequence) -> Self {
        Self { witness: Some(witness), ..Self::new(case_id, Some(n), s1, e, se) }
    }
}

/// Premises on `(s_1, e, s_e)` alone.
fn premise_violation(s1: usize, e: usize, se: usize) -> Option<String> {
    if s1 < 3 || s1.is_multiple_of(2) {
        Some(format!("s_1 = {s1} must be odd and >= 3"))
    } else if se.is_multiple_of(2) {
        Some(format!("s_e = {se} must be odd"))
    } else if se.is_multiple_of(s1) {
        Some(format!("s_1 = {s1} divides s_e = {se}"))
    } else if e < 2 {
        Some(format!("e = {e} must be >= 2"))
    } else if se <= (e - 1) * s1 {
        Some(format!("s_e = {se} must exceed s_(e-1) >= (e-1) s_1 = {}", (e - 1) * s1))
    } else {
        None
    }
}

/// Admissible lengths `2 s_e - 3 <= n <= s_1 + s_e + 1`, odd.
fn corridor(s1: usize, se: usize) -> impl Iterator<Item = usize> {
    let lo = (2 * se).saturating_sub(3).max(1);
    (lo..=s1 + se + 1).filter(|n| n % 2 == 1)
}

/// The verdict for one run pattern at one length.
pub fn classify_at(s1: usize, e: usize, se: usize, n: usize) -> CaseVerdict {
    use CaseId::*;
    if let Some(why) = premise_violation(s1, e, se) {
        return CaseVerdict::reject(OutOfScope, Some(n), s1, e, se, &why);
    }
    if n.is_multiple_of(2) || !(2 * se <= n + 3 && n <= s1 + se + 1) {
        return CaseVerdict::reject(
            OutOfScope,
            Some(n),
            s1,
            e,
            se,
            &format!("n = {n} outside odd corridor [2s_e-3, s_1+s_e+1] = [{}, {}]", (2 * se).saturating_sub(3), s1 + se + 1),
        );
    }
    // Inside the corridor s_e <= s_1 + 4, and s_e > (e-1) s_1 leaves e = 2
    // or the single pattern (3, 6, 7) for e = 3.
    match (e, se - s1) {
        (3, _) if (s1, se, n) == (3, 7, 11) => CaseVerdict::accept(Case1, n, s1, e, se, catalogue::a11()),
        (2, 2) if n == 2 * s1 + 1 => {
            if s1 == 3 {
                CaseVerdict::accept(Case2a, n, s1, e, se, catalogue::a7())
            } else {
                CaseVerdict::reject(Case2RejectShort, Some(n), s1, e, se, "A(n-2) = A(n-3) forces s_1 = 3")
            }
        }
        (2, 2) => match s1 {
            3 => CaseVerdict::reject(
                Case2Reject9,
                Some(n),
                s1,
                e,
                se,
                "skew symmetry gives A(6) = A(7) = 1, doubling gives A(6) A(7) = -1",
            ),
            5 => CaseVerdict::accept(Case2b, n, s1, e, se, catalogue::a13()),
            _ => CaseVerdict::reject(Case2RejectLong, Some(n), s1, e, se, "A(n-4) = A(n-5) forces s_1 in {3, 5}"),
        },
        (2, 4) => CaseVerdict::reject(
            Case3Reject,
            Some(n),
            s1,
            e,
            se,
            &format!("n >= 2 s_2 - 1 = {} contradicts n = 2 s_1 + 5 = {n}", 2 * se - 1),
        ),
        _ => CaseVerdict::reject(OutOfScope, Some(n), s1, e, se, "no admissible run pattern"),
    }
}

/// Every verdict for the run pattern `(s_1, e, s_e)`, one per admissible
/// length. A single out-of-scope verdict when nothing is admissible.
pub fn classify_case(s1: usize, e: usize, se: usize) -> Vec<CaseVerdict> {
    if let Some(why) = premise_violation(s1, e, se) {
        return vec![CaseVerdict::reject(CaseId::OutOfScope, None, s1, e, se, &why)];
    }
    let verdicts: Vec<CaseVerdict> = corridor(s1, se).map(|n| classify_at(s1, e, se, n)).collect();
    if verdicts.is_empty() {
        return vec![CaseVerdict::reject(CaseId::OutOfScope, None, s1, e, se, "empty bounds corridor")];
    }
    verdicts
}

/// Run patterns `(s_1, e, s_e)` whose corridor contains `n`, with their
/// verdicts at `n`.
pub fn case_table_at(n: usize) -> Vec<CaseVerdict> {
    let mut out = Vec::new();
    for s1 in (3..=n).step_by(2) {
        for se in (s1 + 2..=n).step_by(2) {
            for e in 2..=se / s1 + 1 {
                if premise_violation(s1, e, se).is_some() {
                    continue;
                }
                let v = classify_at(s1, e, se, n);
                if v.case_id != CaseId::OutOfScope {
                    out.push(v);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// scan

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessAudit {
    pub witness: BinarySequence,
    pub lemmas: LemmaReport,
    pub lemma2: Lemma2Check,
    pub bounds: Option<BoundsChain>,
    pub lemma3: Option<Lemma3Breakdown>,
}

impl WitnessAudit {
    pub fn of(witness: &BinarySequence) -> Self {
        Self {
            witness: witness.clone(),
            lemmas: full_report(witness),
            lemma2: lemma2_check(witness),
            bounds: bounds_chain(witness).ok(),
            lemma3: lemma3_breakdown(witness).ok(),
        }
    }

    /// Every check implied for an odd Barker sequence of length `> 5` passes.
    pub fn consistent(&self) -> bool {
        let lemma2_ok = self.lemma2.not_applicable.is_some() || self.lemma2.holds();
        let bounds_ok = self.lemma2.not_applicable.is_some() || self.bounds.as_ref().is_some_and(|b| b.holds());
        let lemma3_ok = self.lemma3.as_ref().is_none_or(|b| !b.applicable);
        self.lemmas.consistent() && lemma2_ok && bounds_ok && lemma3_ok
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub barker_count: usize,
    pub witnesses: Vec<BinarySequence>,
    /// `"base"` for `n <= 5`, `"case_table"` otherwise.
    pub classifier_source: &'static str,
    /// Witnesses the case table (or the base list) predicts.
    pub predicted: Vec<BinarySequence>,
    /// Non-out-of-scope case verdicts at this length.
    pub verdicts: Vec<CaseVerdict>,
    pub agree: bool,
    pub audits: Vec<WitnessAudit>,
    pub nodes_visited: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremScan {
    pub n_max: usize,
    pub rows: Vec<ScanRow>,
    pub barker_lengths: Vec<usize>,
    pub all_agree: bool,
}

impl TheoremScan {
    /// `n,barker_count,witnesses,classifier_agrees`; witnesses joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,barker_count,witnesses,classifier_agrees\n");
        for r in &self.rows {
            let w: Vec<String> = r.witnesses.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!("{},{},{},{}\n", r.n, r.barker_count, w.join(";"), r.agree));
        }
        out
    }
}

/// For each odd `3 <= n <= n_max`, exhaustive skew search next to the case
/// table's prediction.
pub fn theorem_scan(n_max: usize, opts: &SearchOptions) -> Result<TheoremScan> {
    if n_max < 3 || n_max.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("n_max = {n_max} must be odd and >= 3")));
    }
    let search_opts = SearchOptions { strategy: Strategy::Skew, canonical: true, dedup_reversal: false, ..opts.clone() };
    let mut rows = Vec::new();
    for n in (3..=n_max).step_by(2) {
        let out = search_barker(n, &search_opts)?;
        let (classifier_source, verdicts, mut predicted) = if n <= 5 {
            ("base", Vec::new(), catalogue::of_length(n))
        } else {
            let verdicts = case_table_at(n);
            let predicted = verdicts.iter().filter_map(|v| v.witness.clone()).collect();
            ("case_table", verdicts, predicted)
        };
        predicted.sort();
        let audits = out.found.iter().map(WitnessAudit::of).collect();
        rows.push(ScanRow {
            n,
            barker_count: out.found.len(),
            agree: predicted == out.found,
            witnesses: out.found,
            classifier_source,
            predicted,
            verdicts,
            audits,
            nodes_visited: out.nodes_visited,
        });
    }
    let barker_lengths = rows.iter().filter(|r| r.barker_count > 0).map(|r| r.n).collect();
    let all_agree = rows.iter().all(|r| r.agree);
    Ok(TheoremScan { n_max, rows, barker_lengths, all_agree })
}
