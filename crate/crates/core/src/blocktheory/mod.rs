//! `p`-blocks: central characters reduced modulo a prime over `p`, defects,
//! heights and defect groups, and the Brauer correspondence with `N_G(D)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::chartable::{dixon_schneider_with_limit, CharacterTable};
use crate::cyclo::Cyclotomic;
use crate::ffield::{cyclotomic_factors, inv_mod, is_prime, ExtField, FElem};
use crate::permgroup::{
    abelian_invariants, centralizer, conjugating_element, derived_length, normalizer,
    sylow_subgroup, PermGroup, Permutation,
};
use crate::{Error, Result};

/// The ring map `Z[ζ_e] → GF(p^f)`, `ζ_e ↦ β` with `β` of order `e'`, the
/// `p'`-part of `e`. The field is `GF(p)[x]/(g)` for the first irreducible
/// factor `g` of `Φ_{e'}` mod `p`, and `β` is the class of `x`. Values at
/// order `o | e` use `ζ_o = ζ_e^{e/o}`.
#[derive(Clone, Debug)]
pub struct ReductionContext {
    pub p: u64,
    pub exponent: u64,
    pub p_prime_exponent: u64,
    pub field: ExtField,
    pub beta: FElem,
    powers: Vec<FElem>,
}

impl ReductionContext {
    pub fn new(p: u64, exponent: u64) -> Result<ReductionContext> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        let mut e_prime = exponent;
        while e_prime.is_multiple_of(p) {
            e_prime /= p;
        }
        let factor = cyclotomic_factors(p, e_prime)?.swap_remove(0);
        let field = ExtField::with_modulus(p, factor)?;
        let beta = field.generator();
        let mut powers = Vec::with_capacity(e_prime as usize);
        let mut x = field.one();
        for _ in 0..e_prime {
            powers.push(x.clone());
            x = field.mul(&x, &beta);
        }
        Ok(ReductionContext { p, exponent, p_prime_exponent: e_prime, field, beta, powers })
    }

    /// Image of a `p`-integral cyclotomic number.
    pub fn reduce(&self, c: &Cyclotomic) -> Result<FElem> {
        let o = c.order() as u64;
        if !self.exponent.is_multiple_of(o) {
            return Err(Error::internal("reduction", format!("order {o} does not divide {}", self.exponent)));
        }
        let step = self.exponent / o;
        let p = self.p;
        let pb = BigInt::from(p);
        let mut acc = self.field.zero();
        for (i, coef) in c.coeffs().iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let num = coef.numer().mod_floor(&pb).to_u64().expect("residue");
            let den = coef.denom().mod_floor(&pb).to_u64().expect("residue");
            let den_inv = inv_mod(den, p).ok_or_else(|| {
                Error::internal("reduction", format!("{c} has a denominator divisible by {p}"))
            })?;
            let scalar = crate::ffield::mul_mod(num, den_inv, p);
            let root = &self.powers[((step * i as u64) % self.p_prime_exponent) as usize];
            acc = self.field.add(&acc, &self.field.scale(root, scalar));
        }
        Ok(acc)
    }
}

/// `λ_χ(Ĉ_j)`, the central character reduced into `GF(p^f)`, per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharacterModP {
    pub p: u64,
    pub field_degree: u32,
    pub values: Vec<FElem>,
}

/// `ω_χ(Ĉ_j) = |C_j| χ(x_j) / χ(1)`, checked to be an algebraic integer.
pub fn central_character(table: &CharacterTable, chi: usize) -> Result<Vec<Cyclotomic>> {
    let d = table.degrees[chi];
    (0..table.classes.len())
        .map(|j| {
            let r = BigRational::new(BigInt::from(table.classes.sizes[j]), BigInt::from(d));
            let w = table.values[chi][j].scale(&r);
            if !w.is_integral() {
                return Err(Error::internal(
                    "central_character",
                    format!("ω at class {j} of character {chi} is not an algebraic integer: {w}"),
                ));
            }
            Ok(w)
        })
        .collect()
}

#[derive(Clone)]
pub struct Block {
    pub p: u64,
    /// Sorted row indices into the character table.
    pub character_indices: Vec<usize>,
    pub defect: u32,
    pub defect_group: PermGroup,
    /// The `p`-regular class whose centralizer provided the defect group.
    pub defect_class: usize,
    pub central_character: CentralCharacterModP,
    pub is_principal: bool,
    pub is_real: bool,
    pub heights: BTreeMap<usize, u32>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.character_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.character_indices.is_empty()
    }

    pub fn contains(&self, chi: usize) -> bool {
        self.character_indices.binary_search(&chi).is_ok()
    }

    /// Characters grouped by height: entry `i` counts those of height `i`.
    pub fn height_histogram(&self) -> Vec<usize> {
        let max = self.heights.values().copied().max().unwrap_or(0) as usize;
        let mut hist = vec![0; max + 1];
        for &h in self.heights.values() {
            hist[h as usize] += 1;
        }
        hist
    }
}

pub(crate) fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) && n > 0 {
        n /= p;
        v += 1;
    }
    v
}

/// The `p`-blocks of the group of `table`, principal block first and the
/// rest ordered by smallest character index.
pub fn block_distribution(table: &CharacterTable, p: u64) -> Result<Vec<Block>> {
    let ctx = ReductionContext::new(p, table.exponent)?;
    block_distribution_with(table, &ctx)
}

/// As [`block_distribution`], reducing through a given context whose
/// exponent must be a multiple of the table's.
pub fn block_distribution_with(table: &CharacterTable, ctx: &ReductionContext) -> Result<Vec<Block>> {
    let p = ctx.p;
    if !ctx.exponent.is_multiple_of(table.exponent) {
        return Err(Error::input("reduction context does not cover the table's exponent"));
    }
    let lambdas: Vec<Vec<FElem>> = (0..table.len())
        .map(|chi| central_character(table, chi)?.iter().map(|w| ctx.reduce(w)).collect())
        .collect::<Result<_>>()?;
    let mut groups: Vec<(Vec<FElem>, Vec<usize>)> = Vec::new();
    for (chi, lambda) in lambdas.into_iter().enumerate() {
        match groups.iter_mut().find(|(l, _)| *l == lambda) {
            Some((_, members)) => members.push(chi),
            None => groups.push((lambda, vec![chi])),
        }
    }
    let order = table.group_order();
    let vp_g = valuation(order, p);
    let conj: Vec<usize> = (0..table.len()).map(|c| table.conjugate_character(c)).collect();
    let mut blocks = Vec::with_capacity(groups.len());
    for (lambda, members) in groups {
        let min_v = members.iter().map(|&c| valuation(table.degrees[c], p)).min().expect("nonempty");
        let defect = vp_g - min_v;
        let heights: BTreeMap<usize, u32> =
            members.iter().map(|&c| (c, valuation(table.degrees[c], p) - min_v)).collect();
        let (defect_class, defect_group) = defect_group_of(table, p, defect, &lambda, &ctx.field)?;
        let is_real = members.iter().all(|c| members.contains(&conj[*c]));
        blocks.push(Block {
            p,
            is_principal: members.contains(&0),
            character_indices: members,
            defect,
            defect_group,
            defect_class,
            central_character: CentralCharacterModP { p, field_degree: ctx.field.degree(), values: lambda },
            is_real,
            heights,
        });
    }
    Ok(blocks)
}

/// First `p`-regular class `K` (by index) with `λ_B(K̂) ≠ 0` and
/// `v_p|C_G(x)| = d`; a Sylow `p`-subgroup of `C_G(x)` is a defect group.
fn defect_group_of(
    table: &CharacterTable,
    p: u64,
    defect: u32,
    lambda: &[FElem],
    field: &ExtField,
) -> Result<(usize, PermGroup)> {
    let cc = &table.classes;
    let j = (0..cc.len())
        .find(|&j| {
            !cc.element_orders[j].is_multiple_of(p)
                && !field.is_zero(&lambda[j])
                && valuation(cc.centralizer_order(j), p) == defect
        })
        .ok_or_else(|| Error::internal("defect_group", "no defect class found"))?;
    let c = centralizer(&table.group, &cc.representatives[j])?;
    let d = sylow_subgroup(&c, p)?;
    if d.size() != p.pow(defect) {
        return Err(Error::internal("defect_group", "defect group has the wrong order"));
    }
    Ok((j, d))
}

/// `Σ_{χ∈B} χ(x) conj χ(y)`, exactly.
pub fn block_orthogonality_sum(table: &CharacterTable, block: &Block, x: usize, y: usize) -> Cyclotomic {
    block
        .character_indices
        .iter()
        .map(|&chi| &table.values[chi][x] * &table.values[chi][y].conjugate())
        .sum()
}

/// For `p`-elements `x`, `y` that are not `G`-conjugate the block sum
/// vanishes; conjugate pairs are accepted without computation.
pub fn block_orthogonality_check(table: &CharacterTable, block: &Block, x: &Permutation, y: &Permutation) -> Result<bool> {
    let (cx, cy) = match (table.classes.class_of(x), table.classes.class_of(y)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::input("block_orthogonality_check: element outside the group")),
    };
    let p = block.p;
    let is_p_elt = |c: usize| {
        let o = table.classes.element_orders[c];
        crate::permgroup::prime_divisors(o).iter().all(|&q| q == p)
    };
    if !is_p_elt(cx) || !is_p_elt(cy) {
        return Err(Error::input("block_orthogonality_check: arguments must be p-elements"));
    }
    if cx == cy {
        return Ok(true);
    }
    Ok(block_orthogonality_sum(table, block, cx, cy).is_zero())
}

/// Whether the defect group `d` of `block` is `G`-conjugate to `target`.
pub fn has_defect_group(group: &PermGroup, block: &Block, target: &PermGroup) -> Result<bool> {
    Ok(conjugating_element(group, &block.defect_group, target)?.is_some())
}

/// The blocks of `N = N_G(D)` with defect group `D`, each paired with its
/// Brauer correspondent in `G`.
#[derive(Clone)]
pub struct BrauerCorrespondence {
    pub normalizer: PermGroup,
    pub normalizer_table: Arc<CharacterTable>,
    pub normalizer_blocks: Vec<Block>,
    /// `(index into normalizer_blocks, index into the blocks of G)`.
    pub pairs: Vec<(usize, usize)>,
}

impl BrauerCorrespondence {
    /// The correspondent in `N_G(D)` of a block of `G`.
    pub fn correspondent_of(&self, g_block: usize) -> Option<&Block> {
        self.pairs.iter().find(|(_, b)| *b == g_block).map(|(n, _)| &self.normalizer_blocks[*n])
    }
}

pub fn brauer_correspondence(
    table: &CharacterTable,
    g_blocks: &[Block],
    d: &PermGroup,
    p: u64,
    max_order: u64,
) -> Result<BrauerCorrespondence> {
    let group = &table.group;
    if !d.is_subgroup_of(group) || p.pow(valuation(d.size(), p)) != d.size() {
        return Err(Error::input("brauer_correspondence: D must be a p-subgroup of G"));
    }
    let n = normalizer(group, d)?;
    let n_table = if n.order() == group.order() {
        Arc::new(table.clone())
    } else {
        Arc::new(dixon_schneider_with_limit(&n, max_order)?)
    };
    let ctx = ReductionContext::new(p, table.exponent)?;
    let n_blocks = block_distribution_with(&n_table, &ctx)?;
    let log_d = valuation(d.size(), p);

    // G-class of every N-class.
    let fusion: Vec<usize> = n_table
        .classes
        .representatives
        .iter()
        .map(|y| table.classes.class_of(y).expect("N ≤ G"))
        .collect();
    let mut pairs = Vec::new();
    for (bi, b) in n_blocks.iter().enumerate() {
        if b.defect != log_d {
            continue;
        }
        let field = &ctx.field;
        let mut induced = vec![field.zero(); table.classes.len()];
        for (l, &k) in fusion.iter().enumerate() {
            induced[k] = field.add(&induced[k], &b.central_character.values[l]);
        }
        let matches: Vec<usize> = g_blocks
            .iter()
            .enumerate()
            .filter(|(_, big)| big.central_character.values == induced)
            .map(|(i, _)| i)
            .collect();
        if matches.len() != 1 {
            return Err(Error::internal(
                "brauer_correspondence",
                format!("induced central character matches {} blocks", matches.len()),
            ));
        }
        pairs.push((bi, matches[0]));
    }
    // First main theorem: b ↦ b^G is a bijection onto Bl(G|D).
    let mut targets: Vec<usize> = pairs.iter().map(|&(_, b)| b).collect();
    targets.sort_unstable();
    targets.dedup();
    let mut with_d = Vec::new();
    for (i, blk) in g_blocks.iter().enumerate() {
        if blk.defect == log_d && has_defect_group(group, blk, d)? {
            with_d.push(i);
        }
    }
    if targets.len() != pairs.len() || targets != with_d {
        return Err(Error::internal("brauer_correspondence", "first main theorem bijection failed"));
    }
    Ok(BrauerCorrespondence { normalizer: n, normalizer_table: n_table, normalizer_blocks: n_blocks, pairs })
}

/// Structure of a defect group as reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum DefectGroupShape {
    Abelian { abelian_invariants: Vec<String> },
    Nonabelian { order: String, derived_length: String },
}

/// One block as it appears in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSummary {
    pub p: String,
    pub k: String,
    pub defect: String,
    pub defect_group_order: String,
    pub defect_group: DefectGroupShape,
    pub is_principal: bool,
    pub is_real: bool,
    /// Entry `i` is the number of characters of height `i`.
    pub heights: Vec<String>,
    pub characters: Vec<String>,
}

pub fn block_summary(block: &Block) -> Result<BlockSummary> {
    let d = &block.defect_group;
    let shape = match abelian_invariants(d)? {
        Some(inv) => DefectGroupShape::Abelian { abelian_invariants: inv.iter().map(u64::to_string).collect() },
        None => DefectGroupShape::Nonabelian {
            order: d.order().to_string(),
            derived_length: derived_length(d).expect("p-groups are solvable").to_string(),
        },
    };
    Ok(BlockSummary {
        p: block.p.to_string(),
        k: block.len().to_string(),
        defect: block.defect.to_string(),
        defect_group_order: d.order().to_string(),
        defect_group: shape,
        is_principal: block.is_principal,
        is_real: block.is_real,
        heights: block.height_histogram().iter().map(usize::to_string).collect(),
        characters: block.character_indices.iter().map(usize::to_string).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::dixon_schneider;
    use crate::permgroup::testgroups::*;

    #[test]
    fn coprime_prime_gives_defect_zero_singletons() {
        let t = dixon_schneider(&symmetric(3)).unwrap();
        let b = block_distribution(&t, 5).unwrap();
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|x| x.defect == 0 && x.len() == 1 && x.defect_group.is_trivial()));
    }

    #[test]
    fn s4_at_two() {
        let t = dixon_schneider(&symmetric(4)).unwrap();
        let blocks = block_distribution(&t, 2).unwrap();
        assert_eq!(blocks.len(), 1);
        let b = &blocks[0];
        assert!(b.is_principal && b.is_real);
        assert_eq!(b.defect, 3);
        assert_eq!(b.defect_group.size(), 8);
        let by_degree: Vec<(u64, u32)> = b.heights.iter().map(|(&c, &h)| (t.degrees[c], h)).collect();
        assert_eq!(by_degree, vec![(1, 0), (1, 0), (2, 1), (3, 0), (3, 0)]);
    }

    #[test]
    fn s4_at_three() {
        let t = dixon_schneider(&symmetric(4)).unwrap();
        let blocks = block_distribution(&t, 3).unwrap();
        let mut sizes: Vec<usize> = blocks.iter().map(Block::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 3]);
        assert_eq!(blocks.iter().map(Block::len).sum::<usize>(), t.len());
    }

    #[test]
    fn s4_block_orthogonality() {
        let g = symmetric(4);
        let t = dixon_schneider(&g).unwrap();
        let blocks = block_distribution(&t, 2).unwrap();
        let x = perm(4, &[&[0, 1], &[2, 3]]);
        let y = perm(4, &[&[0, 1, 2, 3]]);
        for b in &blocks {
            assert!(block_orthogonality_check(&t, b, &x, &y).unwrap());
        }
        let three = perm(4, &[&[0, 1, 2]]);
        assert!(block_orthogonality_check(&t, &blocks[0], &x, &three).is_err());
    }

    #[test]
    fn m11_correspondence_at_eleven() {
        let g = m11();
        let t = dixon_schneider(&g).unwrap();
        let blocks = block_distribution(&t, 11).unwrap();
        let principal = &blocks[0];
        assert!(principal.is_principal);
        assert_eq!(principal.defect_group.size(), 11);
        let corr = brauer_correspondence(&t, &blocks, &principal.defect_group, 11, 20_000).unwrap();
        assert_eq!(corr.normalizer.size(), 55);
        let b = corr.correspondent_of(0).unwrap();
        let real = b
            .character_indices
            .iter()
            .filter(|&&c| corr.normalizer_table.is_real_character(c))
            .count();
        assert_eq!(real, 1);
    }

    #[test]
    fn summaries() {
        let t = dixon_schneider(&quaternion()).unwrap();
        let blocks = block_distribution(&t, 2).unwrap();
        let s = block_summary(&blocks[0]).unwrap();
        assert_eq!(s.k, "5");
        assert_eq!(
            s.defect_group,
            DefectGroupShape::Nonabelian { order: "8".into(), derived_length: "2".into() }
        );
        assert_eq!(s.heights, vec!["4", "1"]);
    }
}
