//! Test-only generators and oracles.
#![allow(dead_code)]

use rand::Rng;

/// A skew-symmetric sequence with a prescribed run prefix, built directly as
/// `±1` entries.
#[derive(Debug, Clone)]
pub struct Structured {
    pub entries: Vec<i8>,
    pub s1: usize,
    pub e: usize,
    pub s_e: usize,
}

impl Structured {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn v(&self) -> usize {
        self.s1 + self.s_e
    }

    /// `A(k)`, 1-based.
    pub fn a(&self, k: usize) -> i64 {
        self.entries[k - 1] as i64
    }
}

/// Direct `C(u)` from raw entries.
pub fn c(entries: &[i8], u: usize) -> i64 {
    (0..entries.len() - u).map(|i| entries[i] as i64 * entries[i + u] as i64).sum()
}

fn pow(x: usize) -> i64 {
    if x.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Draws an odd `n` from `lengths`, then run lengths with `s_1 >= 3` odd,
/// `s_1 | s_j` for `j < e`, `s_e` odd and not a multiple of `s_1`, and
/// `n >= max(s_1 + s_e + 3, 2 s_e + 1)` so the prefix and the start of run
/// `e + 1` lie in the free half. `A(1) = +1`; positions after `s_e + 1` up to
/// `(n+1)/2` are uniform; the tail follows `A(n-k+1) = A(k) (-1)^((n+1)/2+k)`.
pub fn structured<R: Rng>(rng: &mut R, lengths: &[usize]) -> Structured {
    loop {
        let n = lengths[rng.gen_range(0..lengths.len())];
        assert!(n % 2 == 1);
        let s1 = 2 * rng.gen_range(1..=4) + 1;
        let e = rng.gen_range(2..=4);
        let mut runs = vec![s1];
        for _ in 2..e {
            runs.push(s1 * rng.gen_range(1..=2));
        }
        let last = rng.gen_range(1..2 * s1);
        if last % s1 == 0 {
            continue;
        }
        runs.push(last);
        let s_e: usize = runs.iter().sum();
        if s_e.is_multiple_of(2) || n < s1 + s_e + 3 || n < 2 * s_e + 1 {
            continue;
        }
        let m = n.div_ceil(2);
        let mut half = Vec::with_capacity(m);
        let mut sign = 1i8;
        for len in &runs {
            half.extend(std::iter::repeat_n(sign, *len));
            sign = -sign;
        }
        half.push(sign);
        while half.len() < m {
            half.push(if rng.gen_bool(0.5) { 1 } else { -1 });
        }
        let mut entries = vec![0i8; n];
        entries[..m].copy_from_slice(&half);
        for k in 1..=m {
            entries[n - k] = half[k - 1] * pow(m + k) as i8;
        }
        return Structured { entries, s1, e, s_e };
    }
}

/// `(delta, closed form)` from raw entries:
/// `C(n-v+1) - C(n-v-1)` and `(-1)^((n+1)/2) (8(-1)^e - 2A(v) + 2A(v+1))`.
pub fn lemma3_oracle(s: &Structured) -> (i64, i64) {
    let n = s.n();
    let v = s.v();
    let delta = c(&s.entries, n - v + 1) - c(&s.entries, n - v - 1);
    let closed = pow(n.div_ceil(2)) * (8 * pow(s.e) - 2 * s.a(v) + 2 * s.a(v + 1));
    (delta, closed)
}
