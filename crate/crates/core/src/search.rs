//! Exhaustive and pruned search for Barker and minimum-PSL sequences.
//!
//! Every search is split at a fixed depth into independent subtasks. The task
//! list depends only on `n` and the options, never on the worker count, so
//! witnesses and node counters are identical for one worker or many.
//! Witnesses are canonical (`A(1) = A(2) = +1`) unless
//! [`SearchOptions::canonical`] is turned off, and always sorted.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::barker::is_barker;
use crate::catalogue;
use crate::correlation::word_psl_capped;
use crate::error::{Error, Result};
use crate::seqcore::BinarySequence;

/// Largest length the `full` strategy accepts without an override.
pub const FULL_MAX_N: usize = 28;
/// Largest length the `pruned` strategy accepts without an override.
pub const PRUNED_MAX_N: usize = 32;
/// Largest length the `skew` strategy accepts without an override.
pub const SKEW_MAX_N: usize = 45;
/// Default sample budget for [`search_min_psl`].
pub const DEFAULT_SAMPLE_BUDGET: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 0x5eed_ba4c;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Depth-first over every completion, Barker test at the leaves.
    Full,
    /// Two-ended depth-first with correlation feasibility cuts.
    Pruned,
    /// Odd lengths only: enumerate the first half, force the rest by skew
    /// symmetry, then filter.
    Skew,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            "pruned" => Ok(Self::Pruned),
            "skew" => Ok(Self::Skew),
            other => Err(Error::InvalidArgument(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Barker,
    MinPsl,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub strategy: Strategy,
    pub workers: usize,
    /// Fix `A(1) = A(2) = +1` at the root. Off counts raw sequences.
    pub canonical: bool,
    /// Additionally identify a witness with the canonical form of its
    /// reversal, keeping the smaller.
    pub dedup_reversal: bool,
    /// Number of free branchings resolved before subtasks are handed out.
    pub split_depth: usize,
    /// Lift the per-strategy length guard rails.
    pub allow_large: bool,
    /// Refuse searches whose worst-case candidate count exceeds this.
    pub max_nodes: Option<u64>,
    /// Samples (or exhaustive candidates) allowed for min-PSL search.
    pub sample_budget: u64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::Pruned,
            workers: 1,
            canonical: true,
            dedup_reversal: false,
            split_depth: 8,
            allow_large: false,
            max_nodes: None,
            sample_budget: DEFAULT_SAMPLE_BUDGET,
            seed: DEFAULT_SEED,
        }
    }
}

impl SearchOptions {
    pub fn with_strategy(strategy: Strategy) -> Self {
        Self { strategy, ..Self::default() }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

/// Result of one search at one length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub n: usize,
    pub mode: SearchMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<Strategy>,
    pub found: Vec<BinarySequence>,
    pub best_psl: Option<u64>,
    /// True when the whole (canonical) space was covered.
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psl_bound: Option<PslBound>,
    pub nodes_visited: u64,
    pub nodes_pruned: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Comparison of a PSL against `sqrt(2 n ln(2 n))`, made on squares:
/// `psl^2 <= floor(2 n ln(2 n))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PslBound {
    pub bound: f64,
    pub bound_sq_floor: u64,
    pub within: bool,
}

impl PslBound {
    pub fn evaluate(n: usize, psl: u64) -> Self {
        let x = 2.0 * n as f64 * (2.0 * n as f64).ln();
        let bound_sq_floor = x.floor() as u64;
        Self { bound: x.sqrt(), bound_sq_floor, within: psl * psl <= bound_sq_floor }
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Counters {
    visited: u64,
    pruned: u64,
}

impl std::ops::AddAssign for Counters {
    fn add_assign(&mut self, rhs: Self) {
        self.visited += rhs.visited;
        self.pruned += rhs.pruned;
    }
}

fn run_tasks<T, R, F>(workers: usize, tasks: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    if workers <= 1 {
        return tasks.into_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| tasks.into_par_iter().map(&f).collect()),
        Err(_) => tasks.into_iter().map(f).collect(),
    }
}

fn check_budget(opts: &SearchOptions, log2_space: usize) -> Result<()> {
    if let Some(max) = opts.max_nodes {
        if log2_space >= 64 || (1u64 << log2_space) > max {
            return Err(Error::GuardRail(format!(
                "worst-case space 2^{log2_space} exceeds node budget {max}"
            )));
        }
    }
    Ok(())
}

/// Finds every Barker sequence of length `n` (canonical unless disabled).
pub fn search_barker(n: usize, opts: &SearchOptions) -> Result<SearchOutcome> {
    if n < 2 {
        return Err(Error::TooShort { what: "search", n, min: 2 });
    }
    let fixed = if opts.canonical { 2 } else { 0 };
    let start = Instant::now();
    let (mut found, counters) = match opts.strategy {
        Strategy::Full => {
            if n > FULL_MAX_N && !opts.allow_large {
                return Err(Error::GuardRail(format!(
                    "full search limited to n <= {FULL_MAX_N}, got {n}"
                )));
            }
            if n > 64 {
                return Err(Error::InvalidArgument("full search supports n <= 64".into()));
            }
            check_budget(opts, n - fixed)?;
            full_search(n, opts)
        }
        Strategy::Pruned => {
            if n > PRUNED_MAX_N && !opts.allow_large {
                return Err(Error::GuardRail(format!(
                    "pruned search limited to n <= {PRUNED_MAX_N}, got {n}"
                )));
            }
            check_budget(opts, n - fixed)?;
            pruned_search(n, opts)
        }
        Strategy::Skew => {
            if n.is_multiple_of(2) {
                return Err(Error::EvenLength { what: "skew search", n });
            }
            if n > SKEW_MAX_N && !opts.allow_large {
                return Err(Error::GuardRail(format!(
                    "skew search limited to n <= {SKEW_MAX_N}, got {n}"
                )));
            }
            check_budget(opts, n.div_ceil(2) - fixed.min(n.div_ceil(2)))?;
            skew_search(n, opts)
        }
    };
    if opts.dedup_reversal {
        found = dedup_under_reversal(found);
    }
    found.sort();
    found.dedup();
    Ok(SearchOutcome {
        n,
        mode: SearchMode::Barker,
        strategy: Some(opts.strategy),
        best_psl: if found.is_empty() { None } else { Some(1) },
        found,
        exhaustive: true,
        psl_bound: None,
        nodes_visited: counters.visited,
        nodes_pruned: counters.pruned,
        wall_time: start.elapsed(),
    })
}

fn dedup_under_reversal(found: Vec<BinarySequence>) -> Vec<BinarySequence> {
    found
        .into_iter()
        .map(|a| {
            let r = if a.is_canonical() {
                a.reverse().canonicalize().expect("n >= 2").0
            } else {
                a.reverse()
            };
            a.min(r)
        })
        .collect()
}

fn word_to_seq(word: u64, n: usize) -> BinarySequence {
    BinarySequence::from_word(word, n).expect("n <= 64")
}

// ---------------------------------------------------------------------------
// full

fn full_search(n: usize, opts: &SearchOptions) -> (Vec<BinarySequence>, Counters) {
    let first_free = if opts.canonical { 2 } else { 0 };
    let base: u64 = if opts.canonical { 0b11 } else { 0 };
    let free = n - first_free;
    let d = opts.split_depth.min(free);
    // Prefix levels: 2 + 4 + ... + 2^d placements.
    let prefix_nodes = (1u64 << (d + 1)) - 2;
    let tasks: Vec<u64> = (0..1u64 << d).map(|p| base | p << first_free).collect();
    let results = run_tasks(opts.workers, tasks, |word| {
        let mut found = Vec::new();
        let mut c = Counters::default();
        full_dfs(word, first_free + d, n, &mut c, &mut found);
        (found, c)
    });
    merge(results, Counters { visited: prefix_nodes, pruned: 0 })
}

fn full_dfs(word: u64, placed: usize, n: usize, c: &mut Counters, out: &mut Vec<BinarySequence>) {
    if placed == n {
        if word_psl_capped(word, n, 1) <= 1 {
            out.push(word_to_seq(word, n));
        }
        return;
    }
    for bit in [1u64, 0] {
        c.visited += 1;
        full_dfs(word | bit << placed, placed + 1, n, c, out);
    }
}

fn merge(
    results: Vec<(Vec<BinarySequence>, Counters)>,
    mut counters: Counters,
) -> (Vec<BinarySequence>, Counters) {
    let mut found = Vec::new();
    for (f, c) in results {
        found.extend(f);
        counters += c;
    }
    (found, counters)
}

// ---------------------------------------------------------------------------
// pruned

/// Partial assignment placed in the order 1, n, 2, n-1, ...
#[derive(Clone)]
struct Partial {
    n: usize,
    /// 1-based; 0 marks an unset entry.
    a: Vec<i8>,
    /// Sum of determined products `A(k) A(k+u)`.
    partial: Vec<i64>,
    /// Number of determined products at shift `u`.
    determined: Vec<usize>,
}

impl Partial {
    fn new(n: usize) -> Self {
        Self { n, a: vec![0; n + 1], partial: vec![0; n], determined: vec![0; n] }
    }

    /// Sets `A(p) = x` and reports whether every touched shift can still end
    /// with `|C(u)| <= 1`.
    fn place(&mut self, p: usize, x: i8) -> bool {
        self.a[p] = x;
        let n = self.n;
        let mut feasible = true;
        for u in 1..n {
            let mut touched = false;
            if p > u && self.a[p - u] != 0 {
                self.partial[u] += (x * self.a[p - u]) as i64;
                self.determined[u] += 1;
                touched = true;
            }
            if p + u <= n && self.a[p + u] != 0 {
                self.partial[u] += (x * self.a[p + u]) as i64;
                self.determined[u] += 1;
                touched = true;
            }
            if touched {
                let remaining = (n - u - self.determined[u]) as i64;
                if self.partial[u].abs() - remaining > 1 {
                    feasible = false;
                }
            }
        }
        feasible
    }

    fn unplace(&mut self, p: usize) {
        let x = self.a[p];
        let n = self.n;
        for u in 1..n {
            if p > u && self.a[p - u] != 0 {
                self.partial[u] -= (x * self.a[p - u]) as i64;
                self.determined[u] -= 1;
            }
            if p + u <= n && self.a[p + u] != 0 {
                self.partial[u] -= (x * self.a[p + u]) as i64;
                self.determined[u] -= 1;
            }
        }
        self.a[p] = 0;
    }

    fn to_seq(&self) -> BinarySequence {
        BinarySequence::from_signs(self.a[1..].to_vec()).expect("complete assignment")
    }
}

fn two_ended_order(n: usize) -> Vec<usize> {
    let (mut lo, mut hi) = (1, n);
    let mut order = Vec::with_capacity(n);
    while lo <= hi {
        order.push(lo);
        if lo != hi {
            order.push(hi);
        }
        lo += 1;
        hi -= 1;
    }
    order
}

struct PrunedPlan {
    order: Vec<usize>,
    /// Forced values (canonical root); 0 means free.
    forced: Vec<i8>,
}

impl PrunedPlan {
    fn explore<F: FnMut(&Partial)>(
        &self,
        state: &mut Partial,
        step: usize,
        stop: usize,
        c: &mut Counters,
        leaf: &mut F,
    ) {
        if step == stop {
            leaf(state);
            return;
        }
        let p = self.order[step];
        let choices: &[i8] = match self.forced[p] {
            1 => &[1],
            -1 => &[-1],
            _ => &[1, -1],
        };
        for &x in choices {
            c.visited += 1;
            if state.place(p, x) {
                self.explore(state, step + 1, stop, c, leaf);
            } else {
                c.pruned += 1;
            }
            state.unplace(p);
        }
    }

    /// Step index after which `depth` free branchings have happened.
    fn split_step(&self, depth: usize) -> usize {
        let mut free = 0;
        for (i, &p) in self.order.iter().enumerate() {
            if free == depth {
                return i;
            }
            if self.forced[p] == 0 {
                free += 1;
            }
        }
        self.order.len()
    }
}

fn pruned_search(n: usize, opts: &SearchOptions) -> (Vec<BinarySequence>, Counters) {
    let mut forced = vec![0i8; n + 1];
    if opts.canonical {
        forced[1] = 1;
        forced[2] = 1;
    }
    let plan = PrunedPlan { order: two_ended_order(n), forced };
    let split = plan.split_step(opts.split_depth);

    let mut root = Partial::new(n);
    let mut head = Counters::default();
    let mut tasks = Vec::new();
    plan.explore(&mut root, 0, split, &mut head, &mut |s| tasks.push(s.clone()));

    let total = plan.order.len();
    let results = run_tasks(opts.workers, tasks, |mut state| {
        let mut found = Vec::new();
        let mut c = Counters::default();
        plan.explore(&mut state, split, total, &mut c, &mut |s| {
            let seq = s.to_seq();
            if is_barker(&seq).unwrap_or(false) {
                found.push(seq);
            }
        });
        (found, c)
    });
    merge(results, head)
}

// ---------------------------------------------------------------------------
// skew

/// Builds the sequence whose first `(n+1)/2` entries come from `half` (bit
/// `k-1` for `A(k)`) and whose tail satisfies
/// `A(n-k+1) = A(k) (-1)^((n+1)/2 + k)`.
pub fn skew_completion_word(half: u64, n: usize) -> u64 {
    let m = n.div_ceil(2);
    let mut word = half & ((1u64 << m) - 1);
    for k in 1..=m {
        let ak = half >> (k - 1) & 1;
        let flip = ((m + k) & 1) as u64;
        let tail = ak ^ flip;
        word |= tail << (n - k);
    }
    word
}

fn skew_completion_seq(half: &[i8], n: usize) -> BinarySequence {
    let m = n.div_ceil(2);
    let mut a = vec![0i8; n];
    a[..m].copy_from_slice(&half[..m]);
    for k in 1..=m {
        let sign = if (m + k).is_multiple_of(2) { 1 } else { -1 };
        a[n - k] = half[k - 1] * sign;
    }
    BinarySequence::from_signs(a).expect("complete")
}

fn skew_search(n: usize, opts: &SearchOptions) -> (Vec<BinarySequence>, Counters) {
    let m = n.div_ceil(2);
    let first_free = if opts.canonical { 2.min(m) } else { 0 };
    let free = m - first_free;
    let d = opts.split_depth.min(free);
    let low_bits = free - d;
    let base: u64 = if opts.canonical { (1u64 << first_free) - 1 } else { 0 };
    let tasks: Vec<u64> = (0..1u64 << d).collect();
    let results = run_tasks(opts.workers, tasks, |hi| {
        let mut found = Vec::new();
        let mut c = Counters::default();
        for lo in 0..1u64 << low_bits {
            let half = base | (hi << low_bits | lo) << first_free;
            c.visited += 1;
            if n <= 64 {
                let word = skew_completion_word(half, n);
                if word_psl_capped(word, n, 1) <= 1 {
                    found.push(word_to_seq(word, n));
                }
            } else {
                let signs: Vec<i8> =
                    (0..m).map(|i| if half >> i & 1 == 1 { 1 } else { -1 }).collect();
                let seq = skew_completion_seq(&signs, n);
                if is_barker(&seq).unwrap_or(false) {
                    found.push(seq);
                }
            }
        }
        (found, c)
    });
    merge(results, Counters::default())
}

// ---------------------------------------------------------------------------
// min PSL

/// Minimum peak sidelobe level at length `n`.
///
/// Exhaustive over the canonical space when `2^(n-2)` fits in
/// `opts.sample_budget`, otherwise uniform random sampling of canonical
/// sequences with `opts.sample_budget` draws. The sampled result is an upper
/// bound only.
pub fn search_min_psl(n: usize, opts: &SearchOptions) -> Result<SearchOutcome> {
    if n < 2 {
        return Err(Error::TooShort { what: "min-psl search", n, min: 2 });
    }
    if n > 64 {
        return Err(Error::InvalidArgument("min-psl search supports n <= 64".into()));
    }
    let start = Instant::now();
    let free = n - 2;
    let exhaustive = free < 63 && (1u64 << free) <= opts.sample_budget;
    let (best, found, visited) = if exhaustive {
        min_psl_exhaustive(n, opts)
    } else {
        min_psl_sampled(n, opts)
    };
    Ok(SearchOutcome {
        n,
        mode: SearchMode::MinPsl,
        strategy: None,
        found,
        best_psl: Some(best),
        exhaustive,
        psl_bound: Some(PslBound::evaluate(n, best)),
        nodes_visited: visited,
        nodes_pruned: 0,
        wall_time: start.elapsed(),
    })
}

fn min_psl_exhaustive(n: usize, opts: &SearchOptions) -> (u64, Vec<BinarySequence>, u64) {
    let free = n - 2;
    let d = opts.split_depth.min(free);
    let low_bits = free - d;
    let tasks: Vec<u64> = (0..1u64 << d).collect();
    let results = run_tasks(opts.workers, tasks, |hi| {
        let mut best = u64::MAX;
        let mut words = Vec::new();
        for lo in 0..1u64 << low_bits {
            let word = 0b11 | (hi << low_bits | lo) << 2;
            let p = word_psl_capped(word, n, best);
            if p < best {
                best = p;
                words.clear();
            }
            if p == best {
                words.push(word);
            }
        }
        (best, words, 1u64 << low_bits)
    });
    let best = results.iter().map(|r| r.0).min().unwrap();
    let mut found: Vec<BinarySequence> = results
        .iter()
        .filter(|r| r.0 == best)
        .flat_map(|r| r.1.iter().map(|&w| word_to_seq(w, n)))
        .collect();
    found.sort();
    let visited = results.iter().map(|r| r.2).sum();
    (best, found, visited)
}

const SAMPLE_CHUNKS: u64 = 64;

fn min_psl_sampled(n: usize, opts: &SearchOptions) -> (u64, Vec<BinarySequence>, u64) {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let per_chunk = opts.sample_budget.div_ceil(SAMPLE_CHUNKS);
    let tasks: Vec<u64> = (0..SAMPLE_CHUNKS).collect();
    let results = run_tasks(opts.workers, tasks, |chunk| {
        let start = chunk * per_chunk;
        let count = per_chunk.min(opts.sample_budget.saturating_sub(start));
        let mut rng = ChaCha8Rng::seed_from_u64(
            opts.seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ chunk << 32,
        );
        let mut best = u64::MAX;
        let mut best_word = 0;
        for _ in 0..count {
            let word = (rng.gen::<u64>() & mask) | 0b11;
            let p = word_psl_capped(word, n, best);
            if p < best || (p == best && word_to_seq(word, n) < word_to_seq(best_word, n)) {
                best = p;
                best_word = word;
            }
        }
        (best, best_word, count)
    });
    let best = results.iter().map(|r| r.0).min().unwrap();
    let witness = results
        .iter()
        .filter(|r| r.0 == best)
        .map(|r| word_to_seq(r.1, n))
        .min()
        .unwrap();
    let visited = results.iter().map(|r| r.2).sum();
    (best, vec![witness], visited)
}

// ---------------------------------------------------------------------------
// range verification

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeRow {
    pub n: usize,
    pub count: usize,
    pub expected: usize,
    pub matches: bool,
    pub witnesses: Vec<BinarySequence>,
    pub nodes_visited: u64,
    pub nodes_pruned: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeSummary {
    pub strategy: Strategy,
    pub rows: Vec<RangeRow>,
    /// Every count equals the catalogue for `n <= 13` and zero above.
    pub consistent: bool,
}

/// Barker counts for every length in `n_lo..=n_hi` (odd lengths only when
/// `odd_only`, using the skew strategy; otherwise the pruned strategy).
pub fn verify_range(
    n_lo: usize,
    n_hi: usize,
    odd_only: bool,
    opts: &SearchOptions,
) -> Result<RangeSummary> {
    if n_lo < 2 || n_lo > n_hi {
        return Err(Error::InvalidArgument(format!("bad range {n_lo}..={n_hi}")));
    }
    let (strategy, limit) =
        if odd_only { (Strategy::Skew, SKEW_MAX_N) } else { (Strategy::Pruned, FULL_MAX_N) };
    if n_hi > limit && !opts.allow_large {
        return Err(Error::GuardRail(format!(
            "range verification limited to n <= {limit} in this mode, got {n_hi}"
        )));
    }
    let search_opts = SearchOptions { strategy, allow_large: true, ..opts.clone() };
    let mut rows = Vec::new();
    for n in (n_lo..=n_hi).filter(|n| !odd_only || n % 2 == 1) {
        let out = search_barker(n, &search_opts)?;
        let known = catalogue::of_length(n);
        let (expected, exact) = match (opts.canonical, opts.dedup_reversal) {
            (true, false) => (known.len(), out.found == known),
            (true, true) => (out.found.len(), !known.is_empty() == !out.found.is_empty()),
            (false, _) => (4 * known.len(), true),
        };
        let matches = exact && out.found.len() == expected;
        rows.push(RangeRow {
            n,
            count: out.found.len(),
            expected,
            matches,
            witnesses: out.found,
            nodes_visited: out.nodes_visited,
            nodes_pruned: out.nodes_pruned,
        });
    }
    let consistent = rows.iter().all(|r| r.matches);
    Ok(RangeSummary { strategy, rows, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barker::check_skew_symmetry;

    fn strings(v: &[BinarySequence]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn length_four_every_strategy() {
        for strategy in [Strategy::Full, Strategy::Pruned] {
            let out = search_barker(4, &SearchOptions::with_strategy(strategy)).unwrap();
            assert_eq!(strings(&out.found), ["+++-", "++-+"]);
        }
        assert!(search_barker(4, &SearchOptions::with_strategy(Strategy::Skew)).is_err());
    }

    #[test]
    fn thirteen_and_fifteen_skew() {
        let opts = SearchOptions::with_strategy(Strategy::Skew);
        assert_eq!(search_barker(13, &opts).unwrap().found, vec![catalogue::a13()]);
        let out = search_barker(15, &opts).unwrap();
        assert!(out.found.is_empty());
        assert_eq!(out.nodes_visited, 1 << 6);
    }

    #[test]
    fn skew_completion_matches_identity() {
        for n in [3usize, 5, 7, 9, 11] {
            let m = n.div_ceil(2);
            for half in 0..1u64 << m {
                let w = skew_completion_word(half, n);
                let seq = BinarySequence::from_word(w, n).unwrap();
                assert_eq!(check_skew_symmetry(&seq), Ok(true));
                let signs: Vec<i8> =
                    (0..m).map(|i| if half >> i & 1 == 1 { 1 } else { -1 }).collect();
                assert_eq!(skew_completion_seq(&signs, n), seq);
            }
        }
    }

    #[test]
    fn guard_rails() {
        let full = SearchOptions::with_strategy(Strategy::Full);
        assert!(matches!(search_barker(29, &full), Err(Error::GuardRail(_))));
        let skew = SearchOptions::with_strategy(Strategy::Skew);
        assert!(matches!(search_barker(47, &skew), Err(Error::GuardRail(_))));
        let budget = SearchOptions { max_nodes: Some(1000), ..SearchOptions::default() };
        assert!(matches!(search_barker(20, &budget), Err(Error::GuardRail(_))));
        assert!(search_barker(1, &full).is_err());
    }

    #[test]
    fn strategies_agree_to_twenty() {
        for n in 2..=20 {
            let full = search_barker(n, &SearchOptions::with_strategy(Strategy::Full)).unwrap();
            let pruned = search_barker(n, &SearchOptions::with_strategy(Strategy::Pruned)).unwrap();
            assert_eq!(full.found, pruned.found, "n = {n}");
            assert_eq!(full.found, catalogue::of_length(n), "n = {n}");
            if n % 2 == 1 {
                let skew = search_barker(n, &SearchOptions::with_strategy(Strategy::Skew)).unwrap();
                assert_eq!(full.found, skew.found, "n = {n}");
            }
        }
    }

    #[test]
    fn raw_counts_are_four_times_canonical() {
        for strategy in [Strategy::Full, Strategy::Pruned, Strategy::Skew] {
            for n in 2..=13 {
                if strategy == Strategy::Skew && n % 2 == 0 {
                    continue;
                }
                let canon = search_barker(n, &SearchOptions::with_strategy(strategy)).unwrap();
                let raw = SearchOptions { canonical: false, ..SearchOptions::with_strategy(strategy) };
                let raw = search_barker(n, &raw).unwrap();
                assert_eq!(raw.found.len(), 4 * canon.found.len(), "{strategy:?} n = {n}");
            }
        }
    }

    #[test]
    fn counters_are_deterministic_and_worker_independent() {
        for strategy in [Strategy::Full, Strategy::Pruned, Strategy::Skew] {
            let n = 19;
            let one = search_barker(n, &SearchOptions::with_strategy(strategy)).unwrap();
            let again = search_barker(n, &SearchOptions::with_strategy(strategy)).unwrap();
            let four = search_barker(n, &SearchOptions::with_strategy(strategy).workers(4)).unwrap();
            assert_eq!(one.nodes_visited, again.nodes_visited);
            assert_eq!(one.nodes_visited, four.nodes_visited);
            assert_eq!(one.nodes_pruned, four.nodes_pruned);
            assert_eq!(one.found, four.found);
        }
    }

    #[test]
    fn pruning_cuts_nodes() {
        let full = search_barker(18, &SearchOptions::with_strategy(Strategy::Full)).unwrap();
        let pruned = search_barker(18, &SearchOptions::with_strategy(Strategy::Pruned)).unwrap();
        assert!(pruned.nodes_pruned > 0);
        assert!(pruned.nodes_visited * 10 < full.nodes_visited);
    }

    #[test]
    fn reversal_dedup_merges_a4_pair() {
        // reverse(A4) = [-+++], canonical form [++-+] = A4'.
        let opts = SearchOptions { dedup_reversal: true, ..SearchOptions::default() };
        let out = search_barker(4, &opts).unwrap();
        assert_eq!(strings(&out.found), ["+++-"]);
    }

    #[test]
    fn min_psl_examples() {
        let opts = SearchOptions::default();
        let six = search_min_psl(6, &opts).unwrap();
        assert!(six.exhaustive);
        assert_eq!(six.best_psl, Some(2));
        let thirteen = search_min_psl(13, &opts).unwrap();
        assert_eq!(thirteen.best_psl, Some(1));
        assert_eq!(thirteen.found, vec![catalogue::a13()]);
        assert_eq!(search_min_psl(2, &opts).unwrap().best_psl, Some(1));
    }

    #[test]
    fn sampled_min_psl_is_reproducible() {
        let opts = SearchOptions { sample_budget: 5_000, ..SearchOptions::default() };
        let a = search_min_psl(40, &opts).unwrap();
        let b = search_min_psl(40, &opts.clone().workers(3)).unwrap();
        assert!(!a.exhaustive);
        assert_eq!(a, SearchOutcome { wall_time: a.wall_time, ..b });
        assert_eq!(a.nodes_visited, 5_000);
    }

    #[test]
    fn psl_bound_rule() {
        // 2 * 10 * ln 20 = 59.91..., floor 59.
        let b = PslBound::evaluate(10, 7);
        assert_eq!(b.bound_sq_floor, 59);
        assert!(b.within);
        assert!(!PslBound::evaluate(10, 8).within);
    }

    #[test]
    fn verify_range_small() {
        let s = verify_range(2, 13, false, &SearchOptions::default()).unwrap();
        let counts: Vec<usize> = s.rows.iter().map(|r| r.count).collect();
        assert_eq!(counts, [1, 1, 2, 1, 0, 1, 0, 0, 0, 1, 0, 1]);
        assert!(s.consistent);
        assert!(verify_range(2, 29, false, &SearchOptions::default()).is_err());
        assert!(verify_range(15, 47, true, &SearchOptions::default()).is_err());
    }
}
