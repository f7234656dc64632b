use std::collections::BTreeSet;

use serde::Serialize;

use crate::blocktheory::Block;
use crate::chartable::CharacterTable;
use crate::permgroup::{
    derived_length, derived_subgroup_chain, quotient_group, real_elements_under, PermGroup, Permutation,
};
use crate::{Error, Result};

/// `k_rv(B)` and its refinement by height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrvCounts {
    pub total: usize,
    /// `by_height[i] = k_{i,rv}(B)`; one entry per height up to the largest.
    pub by_height: Vec<usize>,
    pub real_characters: Vec<usize>,
}

pub fn krv_counts(block: &Block, table: &CharacterTable) -> KrvCounts {
    let max_h = block.heights.values().copied().max().unwrap_or(0) as usize;
    let mut by_height = vec![0; max_h + 1];
    let mut real_characters = Vec::new();
    for (&chi, &h) in &block.heights {
        if table.is_real_character(chi) {
            by_height[h as usize] += 1;
            real_characters.push(chi);
        }
    }
    KrvCounts { total: real_characters.len(), by_height, real_characters }
}

/// Data kept when a verdict fails so that the counterexample can be audited.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Indices of the counted real-valued characters of `B`.
    pub real_characters: Vec<String>,
    /// The counted real elements in cycle notation; for quotients, one
    /// preimage in `D` per real coset.
    pub real_elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureVerdict {
    /// `C0`, `C1`, `C2` or `C3(n)`.
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    /// Set for defect-zero blocks, where the statement is trivially true.
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Real elements of `D/K` under the image of `N`, for `K ⊴ N` and `K ≤ D ≤ N`.
pub struct QuotientReality {
    pub count: usize,
    /// One preimage in `D` of each real element.
    pub representatives: Vec<Permutation>,
    /// `N/K` when `K ≠ 1`.
    pub quotient: Option<PermGroup>,
}

pub fn real_elements_in_quotient(n: &PermGroup, d: &PermGroup, k: &PermGroup) -> Result<QuotientReality> {
    if k.is_trivial() {
        let re = real_elements_under(n, d)?;
        return Ok(QuotientReality { count: re.count, representatives: re.elements, quotient: None });
    }
    let q = quotient_group(n, k).map_err(|e| match e {
        Error::Capacity { detail, .. } => Error::capacity("quotient", detail),
        other => other,
    })?;
    let qd = q.image_of(d)?;
    let re = real_elements_under(&q.group, &qd)?;
    let real: BTreeSet<Permutation> = re.elements.into_iter().collect();
    let mut seen = BTreeSet::new();
    let mut representatives = Vec::new();
    for x in d.elements()?.elements() {
        let img = q.image(x)?;
        if real.contains(&img) && seen.insert(img) {
            representatives.push(x.clone());
        }
    }
    if representatives.len() != re.count {
        return Err(Error::internal("quotient", "real cosets do not match their preimages"));
    }
    Ok(QuotientReality { count: re.count, representatives, quotient: Some(q.group) })
}

/// Everything the conjecture checks computed for one block.
pub struct ConjectureData {
    pub verdicts: Vec<ConjectureVerdict>,
    pub krv: KrvCounts,
    pub g_real_in_d: usize,
    pub n_real_in_d: usize,
    /// `D`-real elements of `D`, recorded for the variant of C1 with `N_G(D)`
    /// replaced by `D`; no verdict is derived from it.
    pub d_real_in_d: usize,
    /// The quotients `N_G(D)/D^{(n+1)}` that were built.
    pub quotients: Vec<PermGroup>,
}

fn verdict(id: String, lhs: usize, rhs: usize, vacuous: bool, chars: &[usize], elements: &[Permutation]) -> ConjectureVerdict {
    let holds = lhs <= rhs;
    let witness = (!holds).then(|| Witness {
        real_characters: chars.iter().map(usize::to_string).collect(),
        real_elements: elements.iter().map(Permutation::to_string).collect(),
    });
    ConjectureVerdict { id, lhs: lhs.to_string(), rhs: rhs.to_string(), holds, vacuous, witness }
}

/// Evaluates C0–C3 for `B` with defect group `D` and `N = N_G(D)`.
///
/// C3(n) runs for `n = 0 … n_top`, where `n_top` is the first `n` with
/// `D^{(n+1)} = 1` that also covers every height of `B`; `max_n` caps it.
pub fn check_conjectures(
    table: &CharacterTable,
    block: &Block,
    d: &PermGroup,
    n: &PermGroup,
    max_n: Option<usize>,
) -> Result<ConjectureData> {
    let g = &table.group;
    let krv = krv_counts(block, table);
    let vacuous = d.is_trivial();
    let real_chars_up_to = |h: usize| -> Vec<usize> {
        krv.real_characters.iter().copied().filter(|c| block.heights[c] as usize <= h).collect()
    };

    let g_real = real_elements_under(g, d)?;
    let n_real = real_elements_under(n, d)?;
    let d_real = real_elements_under(d, d)?;

    let mut verdicts = vec![
        verdict("C0".into(), krv.total, g_real.count, vacuous, &krv.real_characters, &g_real.elements),
        verdict("C1".into(), krv.total, n_real.count, vacuous, &krv.real_characters, &n_real.elements),
    ];

    let dl = derived_length(d).ok_or_else(|| Error::internal("conjectures", "defect group is not solvable"))?;
    let max_height = krv.by_height.len() - 1;
    let n_top = dl.saturating_sub(1).max(max_height);
    let n_last = max_n.map_or(n_top, |m| m.min(n_top));
    let chain = derived_subgroup_chain(d, n_top + 1);
    let term = |i: usize| -> PermGroup {
        chain.get(i).map(|e| e.subgroup.clone()).unwrap_or_else(|| PermGroup::trivial(d.degree()))
    };

    let mut quotients = Vec::new();
    let mut c3 = Vec::new();
    for step in 0..=n_last {
        let k = term(step + 1);
        let qr = real_elements_in_quotient(n, d, &k)?;
        let chars = real_chars_up_to(step);
        c3.push(verdict(format!("C3({step})"), chars.len(), qr.count, vacuous, &chars, &qr.representatives));
        if let Some(q) = qr.quotient {
            quotients.push(q);
        }
    }

    // C2 through its own quotient by D', asserted equal to C3(0).
    let d_prime = crate::permgroup::derived_subgroup(d);
    let c2_real = real_elements_in_quotient(n, d, &d_prime)?;
    let chars0 = real_chars_up_to(0);
    let c2 = verdict("C2".into(), chars0.len(), c2_real.count, vacuous, &chars0, &c2_real.representatives);
    if (c2.lhs.as_str(), c2.rhs.as_str()) != (c3[0].lhs.as_str(), c3[0].rhs.as_str()) {
        return Err(Error::internal("conjectures", "C2 differs from C3(0)"));
    }
    if c3.windows(2).any(|w| w[0].lhs.parse::<usize>().ok() > w[1].lhs.parse::<usize>().ok()) {
        return Err(Error::internal("conjectures", "C3 left-hand sides are not monotone"));
    }
    if n_last == n_top {
        let top = c3.last().expect("n range is nonempty");
        if top.lhs != krv.total.to_string() || top.rhs != n_real.count.to_string() {
            return Err(Error::internal("conjectures", "C3 at the top of the derived series differs from C1"));
        }
    }
    verdicts.push(c2);
    verdicts.extend(c3);
    Ok(ConjectureData {
        verdicts,
        g_real_in_d: g_real.count,
        n_real_in_d: n_real.count,
        d_real_in_d: d_real.count,
        krv,
        quotients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocktheory::block_distribution;
    use crate::chartable::dixon_schneider;
    use crate::permgroup::normalizer;
    use crate::permgroup::testgroups::*;

    #[test]
    fn two_group_has_equality_in_c2() {
        let g = dihedral8();
        let t = dixon_schneider(&g).unwrap();
        let blocks = block_distribution(&t, 2).unwrap();
        assert_eq!(blocks.len(), 1);
        let b = &blocks[0];
        let k = krv_counts(b, &t);
        assert_eq!((k.total, k.by_height.clone()), (5, vec![4, 1]));
        let n = normalizer(&g, &b.defect_group).unwrap();
        let data = check_conjectures(&t, b, &b.defect_group, &n, None).unwrap();
        let ids: Vec<&str> = data.verdicts.iter().map(|v| v.id.as_str()).collect();
        assert_eq!(ids, ["C0", "C1", "C2", "C3(0)", "C3(1)"]);
        let c2 = &data.verdicts[2];
        assert_eq!((c2.lhs.as_str(), c2.rhs.as_str()), ("4", "4"));
        assert!(data.verdicts.iter().all(|v| v.holds && !v.vacuous && v.witness.is_none()));
        assert_eq!(data.quotients.len(), 1);
    }

    #[test]
    fn capped_range() {
        let g = quaternion();
        let t = dixon_schneider(&g).unwrap();
        let b = &block_distribution(&t, 2).unwrap()[0];
        let data = check_conjectures(&t, b, &b.defect_group, &g, Some(0)).unwrap();
        assert_eq!(data.verdicts.last().unwrap().id, "C3(0)");
        assert_eq!(data.d_real_in_d, 8);
    }

    #[test]
    fn defect_zero_is_vacuous() {
        let g = symmetric(3);
        let t = dixon_schneider(&g).unwrap();
        let blocks = block_distribution(&t, 2).unwrap();
        let b = blocks.iter().find(|b| b.defect == 0).unwrap();
        let data = check_conjectures(&t, b, &b.defect_group, &g, None).unwrap();
        assert!(data.verdicts.iter().all(|v| v.vacuous && v.holds));
        assert_eq!((data.krv.total, data.g_real_in_d), (1, 1));
    }
}
