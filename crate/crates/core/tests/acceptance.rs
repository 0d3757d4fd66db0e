//! Acceptance gate. Runs every criterion, prints one line each and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use barker_core::barker::{check_congruences, check_doubling, check_skew_symmetry, is_barker};
use barker_core::catalogue;
use barker_core::correlation::{acf, acf_packed, acf_reference, periodic_acf, shift_product};
use barker_core::oddproof::{classify_at, classify_case, lemma3_breakdown, theorem_scan, CaseId};
use barker_core::search::{search_barker, search_min_psl, verify_range, PslBound};
use barker_core::{BinarySequence, SearchOptions, Strategy, TransformParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

/// Odd skew-search results shared by criteria 2 and 7.
struct OddScan {
    zero_lengths: Vec<(usize, usize)>,
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let summary = verify_range(2, 13, false, &SearchOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let counts: Vec<usize> = summary.rows.iter().map(|r| r.count).collect();
    ensure(counts == [1, 1, 2, 1, 0, 1, 0, 0, 0, 1, 0, 1], || format!("counts {counts:?}"))?;
    let found: Vec<String> =
        summary.rows.iter().flat_map(|r| r.witnesses.iter().map(|w| w.to_string())).collect();
    let listed: Vec<String> = catalogue::CANONICAL.iter().map(|(_, s)| s.to_string()).collect();
    ensure(found == listed, || format!("witnesses {found:?} != {listed:?}"))?;
    within(elapsed, Duration::from_secs(5), "catalogue reproduction")?;
    Ok(format!("counts n=2..13 {counts:?}, 8 witnesses match, {elapsed:.2?}"))
}

fn criterion_2(scan: &mut Option<OddScan>) -> Outcome {
    let start = Instant::now();
    let opts = SearchOptions::with_strategy(Strategy::Skew);
    let mut zero_lengths = Vec::new();
    let mut max_space = 0;
    for n in (15..=45).step_by(2) {
        let out = search_barker(n, &opts).map_err(|e| e.to_string())?;
        ensure(out.found.is_empty(), || format!("n={n}: found {:?}", out.found))?;
        ensure(out.nodes_visited <= 1 << 21, || format!("n={n}: space {}", out.nodes_visited))?;
        max_space = max_space.max(out.nodes_visited);
        zero_lengths.push((n, out.found.len()));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300), "odd skew search")?;
    *scan = Some(OddScan { zero_lengths });
    Ok(format!("0 Barker sequences for odd 15..=45, max space {max_space}, {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let opts = SearchOptions::with_strategy(Strategy::Pruned);
    let mut nodes = 0;
    for n in 14..=24 {
        let out = search_barker(n, &opts).map_err(|e| e.to_string())?;
        ensure(out.found.is_empty(), || format!("n={n}: found {:?}", out.found))?;
        nodes += out.nodes_visited;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120), "even pruned search")?;
    Ok(format!("0 Barker sequences for 14..=24, {nodes} nodes, {elapsed:.2?}"))
}

fn criterion_4() -> Outcome {
    for name in catalogue::ODD {
        let a = catalogue::by_name(name).unwrap();
        ensure(check_skew_symmetry(&a) == Ok(true), || format!("{name}: skew symmetry"))?;
        ensure(check_doubling(&a) == Ok(true), || format!("{name}: doubling"))?;
        let cong = check_congruences(&a);
        ensure(cong.not_applicable.is_none() && cong.all_hold(), || format!("{name}: congruences"))?;
        ensure(acf(&a).c(1) == 0, || format!("{name}: C(1) != 0"))?;
    }
    Ok("A3 A5 A7 A11 A13 pass skew symmetry, doubling, congruences, C(1)=0".into())
}

fn pow(x: i64) -> i64 {
    if x.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn identities(a: &BinarySequence) -> Result<(), String> {
    let n = a.len();
    let c = acf_reference(a);
    ensure(acf_packed(a) == c, || format!("{a}: packed != reference"))?;
    let p = periodic_acf(a);
    for u in 0..n {
        let e = (n as i64 - u as i64 - c[u]) / 2;
        ensure(shift_product(a, u) == pow(e), || format!("{a}: product identity at u={u}"))?;
        if u > 0 {
            ensure(p[u] == c[u] + c[n - u], || format!("{a}: periodic identity at u={u}"))?;
        }
    }
    let psl = acf(a).psl;
    for t in TransformParams::ALL {
        let ct = acf_packed(&a.transform(t));
        for u in 0..n {
            let sign = if t.b { pow(u as i64) } else { 1 };
            ensure(ct[u] == sign * c[u], || format!("{a}: covariance {t} at u={u}"))?;
        }
        ensure(acf(&a.transform(t)).psl == psl, || format!("{a}: psl not invariant under {t}"))?;
    }
    ensure(acf_packed(&a.reverse()) == c, || format!("{a}: reversal"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut exhaustive = 0u64;
    for n in 1..=14usize {
        for w in 0..1u64 << n {
            identities(&BinarySequence::from_word(w, n).unwrap())?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let random = 100_000;
    for _ in 0..random {
        let n = rng.gen_range(15..=512);
        let a = BinarySequence::from_bools((0..n).map(|_| rng.gen_bool(0.5))).unwrap();
        identities(&a)?;
    }
    Ok(format!(
        "{exhaustive} exhaustive (n<=14) + {random} random (15..=512): all identities exact, {:.2?}",
        start.elapsed()
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let lengths: Vec<usize> = (13..=41).step_by(2).collect();
    let instances = 2000;
    let mut covered = BTreeSet::new();
    for _ in 0..instances {
        let s = common::structured(&mut rng, &lengths);
        let (delta, closed) = common::lemma3_oracle(&s);
        ensure(delta == closed && delta.abs() >= 4, || format!("oracle: {:?}", s.entries))?;
        let seq = BinarySequence::from_signs(s.entries.clone()).unwrap();
        let b = lemma3_breakdown(&seq).map_err(|e| e.to_string())?;
        ensure(b.applicable, || format!("{seq}: not applicable {:?}", b.reasons))?;
        ensure(b.delta == Some(delta) && b.closed_form == Some(closed), || format!("{seq}: library mismatch"))?;
        ensure(b.violations().is_empty(), || format!("{seq}: {:?}", b.violations()))?;
        ensure(is_barker(&seq) == Ok(false), || format!("{seq}: Barker despite |delta| >= 4"))?;
        covered.insert(s.n());
    }
    Ok(format!("{instances} instances over n in {covered:?}: delta = closed form, |delta| >= 4, 0 violations"))
}

fn criterion_7(scan: &Option<OddScan>) -> Outcome {
    let v = classify_case(3, 3, 7);
    ensure(v.len() == 1 && v[0].case_id == CaseId::Case1 && v[0].n == Some(11), || format!("{v:?}"))?;
    let v = classify_at(3, 2, 5, 7);
    ensure(v.case_id == CaseId::Case2a && v.witness == Some(catalogue::a7()), || format!("{v:?}"))?;
    let v: Vec<_> = classify_case(5, 2, 7).into_iter().filter(|x| x.case_id.accepted()).collect();
    ensure(v.len() == 1 && v[0].case_id == CaseId::Case2b && v[0].n == Some(13), || format!("{v:?}"))?;
    let v = classify_at(3, 2, 5, 9);
    ensure(v.case_id == CaseId::Case2Reject9, || format!("{v:?}"))?;
    for s1 in (3..=41).step_by(2) {
        let v = classify_case(s1, 2, s1 + 4);
        ensure(v.iter().all(|x| x.case_id == CaseId::Case3Reject), || format!("s1={s1}: {v:?}"))?;
    }

    let result = theorem_scan(45, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(result.all_agree, || "classifier and search disagree".into())?;
    ensure(result.barker_lengths == [3, 5, 7, 11, 13], || format!("{:?}", result.barker_lengths))?;
    let Some(scan) = scan else {
        return Err("criterion 2 did not produce a scan".into());
    };
    for (n, count) in &scan.zero_lengths {
        let row = result.rows.iter().find(|r| r.n == *n).ok_or(format!("n={n} missing"))?;
        ensure(row.barker_count == *count, || format!("n={n}: scan {} vs search {count}", row.barker_count))?;
    }
    ensure(
        result.rows.iter().flat_map(|r| &r.audits).all(|a| a.consistent()),
        || "witness audit failed".into(),
    )?;
    Ok("case table reproduced; theorem_scan(45) = {3,5,7,11,13}, agrees with criterion 2".into())
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let opts = SearchOptions { sample_budget: 1_000_000, ..SearchOptions::default() };
    let mut misses = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    for n in 2..=64 {
        let out = search_min_psl(n, &opts).map_err(|e| e.to_string())?;
        let psl = out.best_psl.unwrap();
        let bound = PslBound::evaluate(n, psl);
        worst_ratio = worst_ratio.max(psl as f64 / bound.bound);
        if !bound.within {
            misses.push(n);
        }
    }
    if !misses.is_empty() {
        eprintln!("warning: sampled PSL above sqrt(2n ln 2n) at n = {misses:?}");
    }
    Ok(format!(
        "informational: {} of 63 lengths within sqrt(2n ln 2n), max psl/bound {worst_ratio:.3}, {:.2?}",
        63 - misses.len(),
        start.elapsed()
    ))
}

fn main() {
    let mut scan = None;
    let results: Vec<(&str, Outcome)> = vec![
        ("1 catalogue reproduction", criterion_1()),
        ("2 odd lengths 15..=45 (skew)", criterion_2(&mut scan)),
        ("3 even lengths 14..=24 (pruned)", criterion_3()),
        ("4 odd-length identity suite on catalogue", criterion_4()),
        ("5 universal identities", criterion_5()),
        ("6 difference closed form", criterion_6()),
        ("7 case classifier and scan", criterion_7(&scan)),
        ("8 PSL bound (informational)", criterion_8()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
