//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use blockcheck_cli::commands::{load_table, verify_report};
use blockcheck_cli::report::{lookup, render};
use blockcheck_cli::{census_command, parse_group_file, VerifyFlags};
use blockcheck_core::blocktheory::{block_distribution, block_orthogonality_check, block_summary, brauer_correspondence, Block};
use blockcheck_core::chartable::{dixon_schneider, CharacterTable};
use blockcheck_core::permgroup::{
    are_conjugate_in, conjugating_element, normalizer, real_elements_under, sylow_subgroup,
};
use blockcheck_core::realconj::{
    check_bclass, check_nonvanishing, check_perm_lemma, check_restriction_rank, sylow_conjugates, BlockReport,
    ConjectureVerdict, VerificationReport,
};
use blockcheck_core::DEFAULT_MAX_ORDER;
use serde_json::{json, Value};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn group_path(name: &str) -> PathBuf {
    corpus_dir().join(format!("{name}.grp"))
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(actual: T, expected: T, what: &str) -> Result<(), String> {
    ensure(actual == expected, format!("{what}: expected {expected:?}, got {actual:?}"))
}

/// Parses, builds the table and verifies, timing the whole pipeline.
fn run_verify(name: &str, p: u64, force: bool) -> Result<(VerificationReport, CharacterTable, Duration), String> {
    let start = Instant::now();
    let (file, table) = load_table(&group_path(name), DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
    let flags = VerifyFlags { prime: p, force_odd_prime: force, expect_violation: false, max_n: None, max_order: DEFAULT_MAX_ORDER };
    let report = verify_report(&file, table.clone(), &flags).map_err(|e| e.to_string())?;
    Ok((report, table, start.elapsed()))
}

fn no_failed_checks(r: &VerificationReport) -> Result<(), String> {
    let failed: Vec<String> = r.failed_checks().map(|c| format!("{} ({})", c.id, c.details)).collect();
    ensure(failed.is_empty(), format!("failed checks: {failed:?}"))
}

fn verdict<'a>(b: &'a BlockReport, id: &str) -> Result<&'a ConjectureVerdict, String> {
    b.conjectures.iter().find(|v| v.id == id).ok_or_else(|| format!("no verdict {id}"))
}

fn principal(r: &VerificationReport) -> Result<&BlockReport, String> {
    r.blocks.iter().find(|b| b.summary.is_principal).ok_or_else(|| "no principal block".to_string())
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(
        elapsed < Duration::from_secs(limit_secs),
        format!("took {:.2}s, limit {limit_secs}s", elapsed.as_secs_f64()),
    )
}

fn criterion1() -> Outcome {
    let (r, table, elapsed) = run_verify("sg24_4", 2, false)?;
    eq(r.blocks.len(), 2, "number of 2-blocks")?;
    let b = r.blocks.iter().find(|b| !b.summary.is_principal).ok_or("no nonprincipal block")?;
    ensure(b.summary.is_real, "nonprincipal block is not real")?;
    eq(serde_json::to_value(&b.summary.defect_group).unwrap(), json!({"abelian_invariants": ["4"]}), "defect group")?;
    let blocks = block_distribution(&table, 2).map_err(|e| e.to_string())?;
    let d = &blocks[b.index.parse::<usize>().map_err(|e| e.to_string())?].defect_group;
    ensure(d.is_normal_in(&table.group), "defect group is not normal")?;
    eq(b.k_rv.as_str(), "4", "k_rv(B)")?;
    eq(b.d_real_in_d.as_deref(), Some("2"), "D-real elements of D")?;
    let c1 = verdict(b, "C1")?;
    ensure(c1.holds && !c1.vacuous, "C1 does not hold")?;
    ensure(b.k_rv.parse::<usize>().unwrap() > 2, "D-version of C1 unexpectedly holds")?;
    let all_real = (0..table.len()).all(|c| table.is_real_character(c));
    ensure(all_real && r.real_classes == r.classes, "some irreducible character is not real")?;
    no_failed_checks(&r)?;
    within(elapsed, 1)?;
    Ok(format!(
        "2 blocks, D = C4 normal, k_rv = 4, D-real = 2 < 4 ≤ N-real = {}, all {} characters real, {:.3}s",
        c1.rhs,
        table.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion2() -> Outcome {
    let (r, table, elapsed) = run_verify("sg96_185", 2, false)?;
    let b = principal(&r)?;
    eq(b.k_rv.as_str(), "14", "principal k_rv")?;
    let g = &table.group;
    let s = sylow_subgroup(g, 2).map_err(|e| e.to_string())?;
    eq(s.size(), 32, "Sylow order")?;
    let st = dixon_schneider(&s).map_err(|e| e.to_string())?;
    let s_real = (0..st.len()).filter(|&c| st.is_real_character(c)).count();
    eq((st.len(), s_real), (14, 12), "Sylow table (irreducibles, real)")?;
    eq((b.defect_group_k.as_str(), b.defect_group_k_rv.as_str()), ("14", "12"), "reported Sylow counts")?;
    let n = normalizer(g, &s).map_err(|e| e.to_string())?;
    eq(n.size(), 32, "|N_G(S)|")?;
    let g_real = real_elements_under(g, &s).map_err(|e| e.to_string())?.count;
    let own_real = real_elements_under(&s, &s).map_err(|e| e.to_string())?.count;
    eq((g_real, own_real), (32, 28), "(G-real, S-real) elements of S")?;
    eq((b.g_real_in_d.as_deref(), b.d_real_in_d.as_deref()), (Some("32"), Some("28")), "reported reality counts")?;

    let w = r.sylow_reality_witness.as_ref().ok_or("no Sylow reality witness reported")?;
    eq(w.element_order.as_str(), "4", "witness order")?;
    // Independent confirmation over all Sylow subgroups.
    let sylows = sylow_conjugates(g, 2).map_err(|e| e.to_string())?;
    let mut found = None;
    'search: for x in s.elements().map_err(|e| e.to_string())?.elements() {
        if x.order() != 4 {
            continue;
        }
        let containing: Vec<_> = sylows.iter().filter(|t| t.contains(x)).collect();
        let mut real_in = None;
        let mut not_real_in = None;
        for (i, t) in containing.iter().enumerate() {
            if are_conjugate_in(t, x, &x.inverse()).map_err(|e| e.to_string())? {
                real_in.get_or_insert(i);
            } else {
                not_real_in.get_or_insert(i);
            }
        }
        if real_in.is_some() && not_real_in.is_some() {
            found = Some(x.to_string());
            break 'search;
        }
    }
    let x = found.ok_or("no order-4 element whose reality depends on the Sylow subgroup")?;
    no_failed_checks(&r)?;
    within(elapsed, 5)?;
    Ok(format!(
        "k_rv = 14, Sylow table 14/12, self-normalizing, 32 G-real / 28 S-real, {} Sylows, order-4 witness {} (independently {x}), {:.3}s",
        sylows.len(),
        w.element,
        elapsed.as_secs_f64()
    ))
}

fn cli_status(args: &[&str]) -> Result<i32, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_blockcheck")).args(args).output().map_err(|e| e.to_string())?;
    out.status.code().ok_or_else(|| "terminated by signal".to_string())
}

fn criterion3() -> Outcome {
    let (r, _, elapsed) = run_verify("m11", 11, true)?;
    let b = principal(&r)?;
    eq(b.summary.defect_group_order.as_str(), "11", "|D|")?;
    eq(b.k_rv.as_str(), "3", "k_rv(B)")?;
    eq(b.g_real_in_d.as_deref(), Some("1"), "G-real elements of D")?;
    let c0 = verdict(b, "C0")?;
    ensure(!c0.holds && !c0.vacuous && c0.witness.is_some(), "C0 violation with witness not reported")?;
    let corr = b.correspondent.as_ref().ok_or("no Brauer correspondent")?;
    eq(corr.k_rv.as_str(), "1", "k_rv(b)")?;
    no_failed_checks(&r)?;
    within(elapsed, 60)?;
    let file = group_path("m11");
    let file = file.to_str().unwrap();
    let expected = cli_status(&["verify", "-p", "11", "--force-odd-prime", "--expect-violation", file])?;
    let unexpected = cli_status(&["verify", "-p", "11", "--force-odd-prime", file])?;
    eq((expected, unexpected), (0, 1), "verify exit status (with, without --expect-violation)")?;
    Ok(format!(
        "|D| = 11, k_rv = 3 > 1 G-real element (C0 {} > {}), k_rv(b) = 1, CLI exit 0/1, {:.3}s",
        c0.lhs,
        c0.rhs,
        elapsed.as_secs_f64()
    ))
}

fn criterion4() -> Outcome {
    let (r, _, elapsed) = run_verify("m11", 2, false)?;
    let b = principal(&r)?;
    eq(b.k_rv.as_str(), "6", "principal k_rv")?;
    let corr = b.correspondent.as_ref().ok_or("no Brauer correspondent")?;
    eq(corr.k_rv.as_str(), "5", "correspondent k_rv")?;
    ensure(r.violations().next().is_none(), "unexpected violation")?;
    no_failed_checks(&r)?;
    Ok(format!("k_rv(B0) = 6, k_rv(b0) = 5 in N_G(D) of order {}, {:.3}s", b.normalizer_order, elapsed.as_secs_f64()))
}

fn criterion5() -> Outcome {
    let (r, _, elapsed) = run_verify("sg288_375", 2, false)?;
    let cyclic: Vec<&BlockReport> = r
        .blocks
        .iter()
        .filter(|b| {
            !b.summary.is_principal
                && b.summary.is_real
                && serde_json::to_value(&b.summary.defect_group).unwrap() == json!({"abelian_invariants": ["8"]})
        })
        .collect();
    eq(cyclic.len(), 1, "real nonprincipal blocks with defect group C8")?;
    let b = cyclic[0];
    eq((b.g_real_in_d.as_deref(), b.n_real_in_d.as_deref()), (Some("4"), Some("2")), "(G-real, N-real) elements of D")?;
    let same = b.theorems.iter().find(|c| c.id == "samenumber").ok_or("no samenumber check")?;
    ensure(same.holds, format!("samenumber fails: {}", same.details))?;
    ensure(r.violations().next().is_none(), "unexpected violation")?;
    no_failed_checks(&r)?;
    within(elapsed, 30)?;
    Ok(format!("block {}: 4 G-real, 2 N-real, {}, {:.3}s", b.index, same.details, elapsed.as_secs_f64()))
}

fn manifest_path() -> PathBuf {
    corpus_dir().join("manifest.json")
}

static FIRST_CENSUS: OnceLock<String> = OnceLock::new();

fn first_census() -> Result<&'static String, String> {
    if let Some(s) = FIRST_CENSUS.get() {
        return Ok(s);
    }
    let (v, _) = census_command(&manifest_path(), DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
    Ok(FIRST_CENSUS.get_or_init(|| render(&v)))
}

fn criterion6() -> Outcome {
    let v: Value = serde_json::from_str(first_census()?).map_err(|e| e.to_string())?;
    let s = |k: &str| lookup(&v, &format!("summary.{k}")).and_then(Value::as_str).unwrap_or("?").to_string();
    eq(s("unexpected"), "0".into(), "unexpected entries")?;
    eq(s("errors"), "0".into(), "errors")?;
    eq(s("conjecture_violations"), "0".into(), "violations on real 2-blocks")?;
    eq(s("failed_theorem_checks"), "0".into(), "failed theorem checks")?;
    eq(s("c2_equalities"), s("two_group_or_abelian_at_2"), "C2 equalities among 2-groups and abelian groups")?;

    let entries = v["entries"].as_array().ok_or("no entries")?;
    let mut at_two: Vec<&str> = entries.iter().filter(|e| e["prime"] == json!("2")).filter_map(|e| e["file"].as_str()).collect();
    at_two.sort_unstable();
    let mut files: Vec<String> = std::fs::read_dir(corpus_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter(|n| n.ends_with(".grp"))
        .collect();
    files.sort_unstable();
    eq(at_two, files.iter().map(String::as_str).collect(), "corpus files covered at p = 2")?;

    // Every real 2-block of positive defect carries all four verdicts, none failing.
    let mut real_blocks = 0;
    for e in entries.iter().filter(|e| e["prime"] == json!("2")) {
        for b in e["report"]["blocks"].as_array().into_iter().flatten() {
            if b["summary"]["is_real"] != json!(true) || b["summary"]["defect"] == json!("0") {
                continue;
            }
            real_blocks += 1;
            for id in ["C0", "C1", "C2", "C3(0)"] {
                let ok = lookup(b, &format!("conjectures.{id}.holds"));
                if ok != Some(&json!(true)) {
                    return Err(format!("{} block {}: {id} is {ok:?}", e["group"], b["index"]));
                }
            }
        }
    }
    Ok(format!(
        "{} groups at p = 2, {real_blocks} real 2-blocks of positive defect, 0 violations, C2 equality in {}/{} 2-groups and abelian groups",
        files.len(),
        s("c2_equalities"),
        s("two_group_or_abelian_at_2")
    ))
}

#[derive(Default)]
struct PropertyTally {
    pairs: usize,
    blocks: usize,
    correspondences: usize,
    orthogonality_pairs: usize,
    failures: Vec<String>,
}

impl PropertyTally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn property_suite(name: &str, table: &CharacterTable, p: u64, tally: &mut PropertyTally) -> Result<(), String> {
    let err = |e: blockcheck_core::Error| format!("{name} p={p}: {e}");
    let g = &table.group;
    let blocks = block_distribution(table, p).map_err(err)?;
    tally.pairs += 1;
    tally.blocks += blocks.len();

    let mut seen = vec![false; table.len()];
    for b in &blocks {
        for &c in &b.character_indices {
            tally.check(!seen[c], || format!("{name} p={p}: character {c} in two blocks"));
            seen[c] = true;
        }
    }
    let total: usize = blocks.iter().map(Block::len).sum();
    tally.check(total == table.len() && seen.iter().all(|&s| s), || {
        format!("{name} p={p}: block sizes sum to {total}, k(G) = {}", table.len())
    });

    let p_classes: Vec<usize> = (0..table.classes.len())
        .filter(|&c| is_power_of(table.classes.element_orders[c], p))
        .collect();
    let mut corresponded: Vec<&Block> = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let d = &b.defect_group;
        tally.check(d.size() == p.pow(b.defect), || format!("{name} p={p} block {i}: |D| = {} ≠ p^{}", d.size(), b.defect));
        block_summary(b).map_err(err)?;

        let bclass = check_bclass(table, b, d).map_err(err)?;
        tally.check(bclass.holds, || format!("{name} p={p} block {i}: bclass: {}", bclass.details));
        let nonvanishing = check_nonvanishing(table, b, d).map_err(err)?;
        tally.check(nonvanishing.holds, || format!("{name} p={p} block {i}: {}", nonvanishing.details));
        let (rank, lower) = check_restriction_rank(table, b, d).map_err(err)?;
        tally.check(rank.holds, || format!("{name} p={p} block {i}: restriction rank: {}", rank.details));
        tally.check(lower.holds, || format!("{name} p={p} block {i}: {}", lower.details));

        for (ai, &x) in p_classes.iter().enumerate() {
            for &y in &p_classes[ai + 1..] {
                let xr = &table.classes.representatives[x];
                let yr = &table.classes.representatives[y];
                let ok = block_orthogonality_check(table, b, xr, yr).map_err(err)?;
                tally.orthogonality_pairs += 1;
                tally.check(ok, || format!("{name} p={p} block {i}: orthogonality fails at classes {x}, {y}"));
            }
        }

        // First main theorem, once per conjugacy class of defect groups.
        let mut known = false;
        for c in &corresponded {
            if c.defect == b.defect && conjugating_element(g, &c.defect_group, d).map_err(err)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            let corr = brauer_correspondence(table, &blocks, d, p, DEFAULT_MAX_ORDER).map_err(err)?;
            tally.check(!corr.pairs.is_empty(), || format!("{name} p={p} block {i}: no correspondent"));
            tally.correspondences += 1;
            corresponded.push(b);
        }
    }
    Ok(())
}

fn criterion7() -> Outcome {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| Some(e.ok()?.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    let mut tally = PropertyTally::default();
    for path in &paths {
        let file = parse_group_file(path).map_err(|e| e.to_string())?;
        let name = file.name.as_str();
        let table = dixon_schneider(&file.group).map_err(|e| format!("{name}: {e}"))?;
        let defects = table.verify().map_err(|e| format!("{name}: {e}"))?;
        tally.check(defects.is_empty(), || format!("{name}: table defects {defects:?}"));
        let sum_sq: u64 = table.degrees.iter().map(|d| d * d).sum();
        tally.check(sum_sq == table.group_order(), || format!("{name}: Σ deg² = {sum_sq}"));
        let lemma = check_perm_lemma(&[(name.to_string(), &table)]);
        tally.check(lemma.holds, || lemma.details.clone());
        for p in [2, 3, 5] {
            property_suite(name, &table, p, &mut tally)?;
        }
    }
    if !tally.failures.is_empty() {
        let n = tally.failures.len();
        let shown: Vec<&str> = tally.failures.iter().take(5).map(String::as_str).collect();
        return Err(format!("{n} property failures, first: {}", shown.join("; ")));
    }
    Ok(format!(
        "{} groups × 3 primes = {} pairs, {} blocks, {} correspondences, {} orthogonality pairs",
        paths.len(),
        tally.pairs,
        tally.blocks,
        tally.correspondences,
        tally.orthogonality_pairs
    ))
}

fn criterion8() -> Outcome {
    let first = first_census()?;
    let (v, _) = census_command(&manifest_path(), DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
    let second = render(&v);
    ensure(first.as_bytes() == second.as_bytes(), "two in-process census reports differ")?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("census.json");
    let status = cli_status(&["census", manifest_path().to_str().unwrap(), "-o", out.to_str().unwrap()])?;
    eq(status, 0, "census exit status")?;
    let third = std::fs::read(&out).map_err(|e| e.to_string())?;
    ensure(third == first.as_bytes(), "the CLI census report differs from the in-process one")?;
    Ok(format!("3 runs, {} bytes each, identical", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "sg24_4 at p=2", criterion1),
        (2, "sg96_185 at p=2", criterion2),
        (3, "M11 at p=11, forced", criterion3),
        (4, "M11 at p=2", criterion4),
        (5, "sg288_375 at p=2", criterion5),
        (6, "census at p=2", criterion6),
        (7, "property suites at p=2,3,5", criterion7),
        (8, "census determinism", criterion8),
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (n, title, f) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n} PASS [{title}] {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} FAIL [{title}] {why} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {} failed", failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
