mod common;

use std::time::Instant;

use blockcheck_core::realconj::{verify_group, BlockReport, BlockStatus, VerificationReport, VerifyOptions};

fn run(name: &str, p: u64, force: bool) -> VerificationReport {
    let g = common::load(name);
    let opts = VerifyOptions { force_odd_prime: force, ..VerifyOptions::default() };
    let t = Instant::now();
    let r = verify_group(name, &g, p, &opts).expect("verification");
    eprintln!("{name} p={p}: {:?}", t.elapsed());
    r
}

fn verdict<'a>(b: &'a BlockReport, id: &str) -> &'a blockcheck_core::realconj::ConjectureVerdict {
    b.conjectures.iter().find(|v| v.id == id).unwrap_or_else(|| panic!("verdict {id}"))
}

fn principal(r: &VerificationReport) -> &BlockReport {
    r.blocks.iter().find(|b| b.summary.is_principal).expect("principal block")
}

#[test]
fn c3_q8_blocks() {
    let r = run("sg24_4", 2, false);
    assert_eq!(r.blocks.len(), 2);
    let b = r.blocks.iter().find(|b| !b.summary.is_principal).unwrap();
    assert!(b.summary.is_real);
    assert_eq!(b.summary.defect_group_order, "4");
    assert_eq!(b.k_rv, "4");
    assert_eq!(b.d_real_in_d.as_deref(), Some("2"));
    assert!(verdict(b, "C1").holds);
    assert_eq!(r.real_classes, r.classes);
    assert_eq!(r.violations().count(), 0);
    assert_eq!(r.failed_checks().count(), 0, "{:?}", r.failed_checks().collect::<Vec<_>>());
}

#[test]
fn m11_at_eleven_violates_c0() {
    let r = run("m11", 11, true);
    let b = principal(&r);
    assert_eq!(b.summary.defect_group_order, "11");
    assert_eq!(b.k_rv, "3");
    assert_eq!(b.g_real_in_d.as_deref(), Some("1"));
    let c0 = verdict(b, "C0");
    assert!(!c0.holds && !c0.vacuous);
    assert!(c0.witness.is_some());
    assert_eq!(b.correspondent.as_ref().unwrap().k_rv, "1");
    assert_eq!(r.failed_checks().count(), 0, "{:?}", r.failed_checks().collect::<Vec<_>>());

    let unforced = run("m11", 11, false);
    assert!(unforced.blocks.iter().all(|b| b.status == BlockStatus::Skipped));
    assert_eq!(unforced.violations().count(), 0);
}

#[test]
fn m11_at_two() {
    let r = run("m11", 2, false);
    let b = principal(&r);
    assert_eq!(b.k_rv, "6");
    assert_eq!(b.correspondent.as_ref().unwrap().k_rv, "5");
    assert_eq!(r.violations().count(), 0);
    assert_eq!(r.failed_checks().count(), 0, "{:?}", r.failed_checks().collect::<Vec<_>>());
}

#[test]
fn sg96_185_principal_block() {
    let r = run("sg96_185", 2, false);
    let b = principal(&r);
    assert_eq!(b.k_rv, "14");
    assert_eq!(b.defect_group_k, "14");
    assert_eq!(b.defect_group_k_rv, "12");
    assert_eq!(b.normalizer_order, b.summary.defect_group_order);
    assert_eq!(b.g_real_in_d.as_deref(), Some("32"));
    assert_eq!(b.d_real_in_d.as_deref(), Some("28"));
    let w = r.sylow_reality_witness.as_ref().expect("witness");
    eprintln!("{w:?}");
    assert_eq!(r.violations().count(), 0);
    assert_eq!(r.failed_checks().count(), 0, "{:?}", r.failed_checks().collect::<Vec<_>>());
}

#[test]
fn sg288_375_cyclic_block() {
    let r = run("sg288_375", 2, false);
    let cyclic: Vec<&BlockReport> = r
        .blocks
        .iter()
        .filter(|b| {
            !b.summary.is_principal && b.summary.is_real && b.summary.defect_group_order == "8" && {
                let s = serde_json::to_value(&b.summary.defect_group).unwrap();
                s["abelian_invariants"] == serde_json::json!(["8"])
            }
        })
        .collect();
    assert_eq!(cyclic.len(), 1);
    let b = cyclic[0];
    assert_eq!(b.g_real_in_d.as_deref(), Some("4"));
    assert_eq!(b.n_real_in_d.as_deref(), Some("2"));
    let same = b.theorems.iter().find(|c| c.id == "samenumber").expect("samenumber");
    assert!(same.holds);
    assert_eq!(r.violations().count(), 0);
    assert_eq!(r.failed_checks().count(), 0, "{:?}", r.failed_checks().collect::<Vec<_>>());
}
