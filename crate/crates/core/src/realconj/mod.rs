//! Checks of the real versions of the k(B), Olsson and Eaton conjectures,
//! the theorems on B-classes, and the per-group verification report.

mod conjectures;
mod structure;
mod theorems;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use conjectures::{
    check_conjectures, krv_counts, real_elements_in_quotient, ConjectureData, ConjectureVerdict, KrvCounts,
    QuotientReality, Witness,
};
pub use structure::{
    is_nilpotent, sylow_conjugates, sylow_reality_witness, theorem61_hypotheses, SylowRealityWitness, Theorem61Flags,
};
pub use theorems::{
    check_b_real_rational, check_bclass, check_central_defect_equality, check_nonvanishing, check_perm_lemma,
    check_restriction_rank, check_samenumber, classes_meeting, restriction_rank, TheoremCheck,
};

use crate::blocktheory::{
    block_distribution_with, block_summary, brauer_correspondence, Block, BlockSummary, BrauerCorrespondence,
    ReductionContext,
};
use crate::chartable::{dixon_schneider_with_limit, CharacterTable};
use crate::permgroup::{
    abelian_invariants, derived_subgroup, normalizer, real_elements_under, sylow_subgroup, PermGroup,
};
use crate::{Error, Result, DEFAULT_MAX_ORDER};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Evaluate the conjectures at odd primes too.
    pub force_odd_prime: bool,
    /// Largest `n` for C3(n).
    pub max_n: Option<usize>,
    pub max_order: u64,
    /// Seed for the random conjugate of each defect group.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { force_odd_prime: false, max_n: None, max_order: DEFAULT_MAX_ORDER, seed: 0 }
    }
}

/// Whether a block's conjecture verdicts were evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockStatus {
    Checked,
    /// Defect zero: the verdicts are trivially true.
    Vacuous,
    Skipped,
}

/// The Brauer correspondent `b` of a block in `N_G(D)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondentSummary {
    pub normalizer_order: String,
    pub k: String,
    pub k_rv: String,
    pub characters: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub index: String,
    pub summary: BlockSummary,
    pub k_rv: String,
    pub k_rv_by_height: Vec<String>,
    pub status: BlockStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    pub defect_group_generators: Vec<String>,
    pub defect_group_k: String,
    pub defect_group_k_rv: String,
    pub normalizer_order: String,
    /// Elements of `D` real in `G`, in `N_G(D)` and in `D`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_real_in_d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_real_in_d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_real_in_d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correspondent: Option<CorrespondentSummary>,
    pub conjectures: Vec<ConjectureVerdict>,
    pub theorems: Vec<TheoremCheck>,
}

impl BlockReport {
    /// Conjecture verdicts that failed and are not vacuous.
    pub fn violations(&self) -> impl Iterator<Item = &ConjectureVerdict> {
        self.conjectures.iter().filter(|v| !v.holds && !v.vacuous)
    }
}

/// The map `Z[ζ_e] → GF(p)[x]/(g)` used for the central characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionSummary {
    pub exponent: String,
    pub p_prime_exponent: String,
    pub field_degree: String,
    /// Coefficients of `g`, constant term first; `ζ_{e'} ↦ x`.
    pub modulus: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub order: String,
    pub degree: String,
    pub prime: String,
    pub forced_odd_prime: bool,
    pub classes: String,
    pub real_classes: String,
    pub reduction: ReductionSummary,
    pub blocks: Vec<BlockReport>,
    pub group_checks: Vec<TheoremCheck>,
    pub theorem61: Theorem61Flags,
    pub nilpotent: bool,
    pub abelian: bool,
    pub sylow_order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sylow_reality_witness: Option<SylowRealityWitness>,
}

impl VerificationReport {
    pub fn violations(&self) -> impl Iterator<Item = (&BlockReport, &ConjectureVerdict)> {
        self.blocks.iter().flat_map(|b| b.violations().map(move |v| (b, v)))
    }

    /// Theorem checks that failed, at block or group level.
    pub fn failed_checks(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.blocks.iter().flat_map(|b| b.theorems.iter()).chain(&self.group_checks).filter(|c| !c.holds)
    }
}

fn table_of(g: &PermGroup, max_order: u64) -> Result<Arc<CharacterTable>> {
    Ok(Arc::new(dixon_schneider_with_limit(g, max_order)?))
}

fn real_character_count(t: &CharacterTable) -> usize {
    (0..t.len()).filter(|&c| t.is_real_character(c)).count()
}

/// Full pipeline for one group at one prime.
pub fn verify_group(name: &str, g: &PermGroup, p: u64, options: &VerifyOptions) -> Result<VerificationReport> {
    if !crate::ffield::is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    let table = table_of(g, options.max_order)?;
    let defects = table.verify()?;
    if !defects.is_empty() {
        return Err(Error::internal("character_table", format!("table failed its checks: {defects:?}")));
    }
    verify_with_table(name, &table, p, options)
}

/// As [`verify_group`], for a table that is already known to be correct.
pub fn verify_with_table(name: &str, table: &Arc<CharacterTable>, p: u64, options: &VerifyOptions) -> Result<VerificationReport> {
    let g = &table.group;
    let ctx = ReductionContext::new(p, table.exponent)?;
    let blocks = block_distribution_with(table, &ctx)?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ g.size().rotate_left(17) ^ p);
    let in_scope = p == 2 || options.force_odd_prime;

    let mut correspondences: Vec<BrauerCorrespondence> = Vec::new();
    let mut reports = Vec::with_capacity(blocks.len());
    for (bi, block) in blocks.iter().enumerate() {
        let d = &block.defect_group;
        let n = normalizer(g, d)?;
        let d_table = table_of(d, options.max_order)?;
        let krv = krv_counts(block, table);
        let mut theorems = vec![check_bclass(table, block, d)?];
        let (real, rational) = check_b_real_rational(table, block, d)?;
        theorems.extend([real, rational, check_nonvanishing(table, block, d)?]);
        let (rank, lower) = check_restriction_rank(table, block, d)?;
        theorems.extend([rank, lower]);
        if let Some(c) = check_central_defect_equality(table, block, d, &d_table)? {
            theorems.push(c);
        }
        let mut perm_tables: Vec<(String, Arc<CharacterTable>)> = vec![("D".into(), d_table.clone())];

        let skip_reason = if !in_scope {
            Some(format!("the conjectures concern p = 2; p = {p} needs --force-odd-prime"))
        } else if !block.is_real {
            Some("block is not real".to_string())
        } else {
            None
        };
        let status = match (&skip_reason, block.defect) {
            (Some(_), _) => BlockStatus::Skipped,
            (None, 0) => BlockStatus::Vacuous,
            (None, _) => BlockStatus::Checked,
        };

        let mut report = BlockReport {
            index: bi.to_string(),
            summary: block_summary(block)?,
            k_rv: krv.total.to_string(),
            k_rv_by_height: krv.by_height.iter().map(usize::to_string).collect(),
            status,
            skip_reason: skip_reason.clone(),
            defect_group_generators: d.generators().iter().map(ToString::to_string).collect(),
            defect_group_k: d_table.len().to_string(),
            defect_group_k_rv: real_character_count(&d_table).to_string(),
            normalizer_order: n.size().to_string(),
            g_real_in_d: None,
            n_real_in_d: None,
            d_real_in_d: None,
            correspondent: None,
            conjectures: Vec::new(),
            theorems: Vec::new(),
        };

        if skip_reason.is_none() {
            let data = check_conjectures(table, block, d, &n, options.max_n)?;
            report.g_real_in_d = Some(data.g_real_in_d.to_string());
            report.n_real_in_d = Some(data.n_real_in_d.to_string());
            report.d_real_in_d = Some(data.d_real_in_d.to_string());
            for q in &data.quotients {
                perm_tables.push((format!("N_G(D)/K, |N_G(D)/K| = {}", q.size()), table_of(q, options.max_order)?));
            }
            theorems.push(conjugate_invariance(table, block, &data, options.max_n, &mut rng)?);
            report.conjectures = data.verdicts;

            if block.defect > 0 {
                if !correspondences.iter().any(|c| c.pairs.iter().any(|&(_, b)| b == bi)) {
                    correspondences.push(brauer_correspondence(table, &blocks, d, p, options.max_order)?);
                }
                let corr = correspondences
                    .iter()
                    .find(|c| c.pairs.iter().any(|&(_, b)| b == bi))
                    .expect("just computed");
                let b = corr.correspondent_of(bi).expect("block is paired");
                let krv_b = krv_counts(b, &corr.normalizer_table);
                report.correspondent = Some(CorrespondentSummary {
                    normalizer_order: corr.normalizer.size().to_string(),
                    k: b.len().to_string(),
                    k_rv: krv_b.total.to_string(),
                    characters: b.character_indices.iter().map(usize::to_string).collect(),
                });
                perm_tables.push(("N_G(D)".into(), corr.normalizer_table.clone()));
                if p == 2 && block.is_real && abelian_invariants(d)?.is_some_and(|inv| inv.len() <= 1) {
                    theorems.push(check_samenumber(krv.total, krv_b.total));
                }
            }
        }
        let named: Vec<(String, &CharacterTable)> = perm_tables.iter().map(|(s, t)| (s.clone(), &**t)).collect();
        theorems.push(check_perm_lemma(&named));
        report.theorems = theorems;
        reports.push(report);
    }

    let theorem61 = theorem61_hypotheses(g)?;
    let nilpotent = is_nilpotent(g)?;
    let mut group_checks = vec![check_perm_lemma(&[("G".to_string(), &**table)])];
    group_checks.push(TheoremCheck::new(
        "theorem61_consistency",
        theorem61.consistent,
        format!(
            "|R(G)| = {}; (a) {}, (b) {}, (c) {}",
            theorem61.real_core_order,
            theorem61.derived_subgroup_2_nilpotent,
            theorem61.o_2prime_2_2prime_is_g,
            theorem61.solvable_abelian_sylow2
        ),
    ));
    if p == 2 {
        if let Some(c) = principal_when_real_core_odd(&theorem61, &blocks, &reports) {
            group_checks.push(c);
        }
        if nilpotent {
            group_checks.push(nilpotent_equality(table, &blocks, &reports, options.max_order)?);
        }
    }
    let real_classes = table.classes.real_class_indices().len();
    Ok(VerificationReport {
        group: name.to_string(),
        order: g.size().to_string(),
        degree: g.degree().to_string(),
        prime: p.to_string(),
        forced_odd_prime: options.force_odd_prime && p != 2,
        classes: table.len().to_string(),
        real_classes: real_classes.to_string(),
        reduction: ReductionSummary {
            exponent: ctx.exponent.to_string(),
            p_prime_exponent: ctx.p_prime_exponent.to_string(),
            field_degree: ctx.field.degree().to_string(),
            modulus: ctx.field.modulus().iter().map(u64::to_string).collect(),
        },
        blocks: reports,
        group_checks,
        theorem61,
        nilpotent,
        abelian: g.is_abelian(),
        sylow_order: sylow_subgroup(g, p)?.size().to_string(),
        sylow_reality_witness: sylow_reality_witness(g, p)?,
    })
}

/// Recomputes C0–C2 for a random `G`-conjugate of `D` and compares counts.
fn conjugate_invariance(
    table: &CharacterTable,
    block: &Block,
    data: &ConjectureData,
    max_n: Option<usize>,
    rng: &mut ChaCha8Rng,
) -> Result<TheoremCheck> {
    let g = &table.group;
    let x = g.random_element(rng);
    let d = block.defect_group.conjugate_by(&x);
    let n = normalizer(g, &d)?;
    let g_real = real_elements_under(g, &d)?.count;
    let n_real = real_elements_under(&n, &d)?.count;
    let c2 = real_elements_in_quotient(&n, &d, &derived_subgroup(&d))?.count;
    let again = check_conjectures(table, block, &d, &n, max_n)?;
    let strip = |v: &[ConjectureVerdict]| v.iter().map(|c| (c.id.clone(), c.lhs.clone(), c.rhs.clone())).collect::<Vec<_>>();
    let c2_before = data.verdicts.iter().find(|v| v.id == "C2").map(|v| v.rhs.clone());
    let holds = g_real == data.g_real_in_d
        && n_real == data.n_real_in_d
        && c2_before == Some(c2.to_string())
        && strip(&again.verdicts) == strip(&data.verdicts);
    Ok(TheoremCheck::new(
        "conjugate_invariance",
        holds,
        format!("D conjugated by {x}: {g_real} G-real, {n_real} N_G(D)-real, {c2} real in D/D'"),
    ))
}

/// When `|R(G)|` is odd the principal 2-block satisfies C3 for every `n`,
/// and also the version of C1 with `N_G(D)` replaced by `D`.
fn principal_when_real_core_odd(flags: &Theorem61Flags, blocks: &[Block], reports: &[BlockReport]) -> Option<TheoremCheck> {
    if !flags.real_core_odd {
        return None;
    }
    let i = blocks.iter().position(|b| b.is_principal)?;
    let r = &reports[i];
    let c3_ok = r.conjectures.iter().filter(|v| v.id.starts_with("C3")).all(|v| v.holds);
    let d_real: usize = r.d_real_in_d.as_deref()?.parse().ok()?;
    let krv: usize = r.k_rv.parse().ok()?;
    Some(TheoremCheck::new(
        "odd_real_core_principal",
        c3_ok && krv <= d_real,
        format!("|R(G)| odd: C3 holds for all n: {c3_ok}; k_rv(B_0) = {krv} ≤ {d_real} D-real elements"),
    ))
}

/// For nilpotent `G` at `p = 2`: the principal block is the only real block
/// of maximal defect, its real characters match those of the Sylow
/// 2-subgroup height by height, and for 2-groups and abelian groups C2 is an
/// equality.
fn nilpotent_equality(table: &CharacterTable, blocks: &[Block], reports: &[BlockReport], max_order: u64) -> Result<TheoremCheck> {
    let g = &table.group;
    let max_defect = blocks.iter().map(|b| b.defect).max().unwrap_or(0);
    let top_real: Vec<usize> = (0..blocks.len()).filter(|&i| blocks[i].is_real && blocks[i].defect == max_defect).collect();
    let principal = blocks.iter().position(|b| b.is_principal).expect("principal block exists");
    let unique = top_real == [principal];
    let s = sylow_subgroup(g, 2)?;
    let s_table = table_of(&s, max_order)?;
    let mut s_heights: Vec<usize> = Vec::new();
    for c in (0..s_table.len()).filter(|&c| s_table.is_real_character(c)) {
        let h = s_table.degrees[c].trailing_zeros() as usize;
        if s_heights.len() <= h {
            s_heights.resize(h + 1, 0);
        }
        s_heights[h] += 1;
    }
    let b0_heights = krv_counts(&blocks[principal], table).by_height;
    let heights_match = trim_zeros(&b0_heights) == trim_zeros(&s_heights);
    let c2_equal = if g.size().is_power_of_two() || g.is_abelian() {
        let c2 = reports[principal].conjectures.iter().find(|v| v.id == "C2");
        Some(c2.is_some_and(|v| v.lhs == v.rhs))
    } else {
        None
    };
    let holds = unique && heights_match && c2_equal.unwrap_or(true);
    Ok(TheoremCheck::new(
        "nilpotent_equality",
        holds,
        format!(
            "unique real block of maximal defect: {unique}; k_i,rv(B_0) = {b0_heights:?}, k_i,rv(S) = {s_heights:?}; C2 equality: {}",
            c2_equal.map_or("not applicable".to_string(), |b| b.to_string())
        ),
    ))
}

fn trim_zeros(v: &[usize]) -> &[usize] {
    let end = v.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    &v[..end]
}
