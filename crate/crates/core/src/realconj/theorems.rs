use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::blocktheory::Block;
use crate::chartable::CharacterTable;
use crate::cyclo::Cyclotomic;
use crate::ffield::{is_prime, linalg, pow_mod, prime_factors};
use super::krv_counts;
use crate::permgroup::{are_conjugate_in, center, PermGroup, Permutation};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub id: String,
    pub holds: bool,
    pub details: String,
}

impl TheoremCheck {
    pub(crate) fn new(id: &str, holds: bool, details: impl Into<String>) -> TheoremCheck {
        TheoremCheck { id: id.to_string(), holds, details: details.into() }
    }
}

/// The G-classes of `table` that meet `D`, each with the elements of `D` it
/// contains, in class order.
pub fn classes_meeting(table: &CharacterTable, d: &PermGroup) -> Result<BTreeMap<usize, Vec<Permutation>>> {
    let mut out: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
    for x in d.elements()?.elements() {
        let c = table
            .classes
            .class_of(x)
            .ok_or_else(|| crate::Error::input("defect group is not contained in G"))?;
        out.entry(c).or_default().push(x.clone());
    }
    Ok(out)
}

/// B-classes of `D` (equal values on every `χ ∈ Irr(B)`) against G-fusion.
///
/// G-fusion is taken from `are_conjugate_in`, independently of the class
/// machinery behind the table; each element of `D` is compared with the
/// first element of `D` in its class and with the first element of every
/// other class.
pub fn check_bclass(table: &CharacterTable, block: &Block, d: &PermGroup) -> Result<TheoremCheck> {
    let g = &table.group;
    let meeting = classes_meeting(table, d)?;
    let leaders: Vec<&Permutation> = meeting.values().map(|xs| &xs[0]).collect();
    let mut fusion_ok = true;
    for (i, xs) in meeting.values().enumerate() {
        for x in xs {
            fusion_ok &= are_conjugate_in(g, leaders[i], x)?;
        }
        for (j, y) in leaders.iter().enumerate() {
            if j != i && are_conjugate_in(g, leaders[i], y)? {
                fusion_ok = false;
            }
        }
    }
    let columns: Vec<Vec<&Cyclotomic>> = meeting
        .keys()
        .map(|&c| block.character_indices.iter().map(|&chi| &table.values[chi][c]).collect())
        .collect();
    let mut b_classes: Vec<&Vec<&Cyclotomic>> = Vec::new();
    for col in &columns {
        if !b_classes.contains(&col) {
            b_classes.push(col);
        }
    }
    let holds = fusion_ok && b_classes.len() == meeting.len();
    Ok(TheoremCheck::new(
        "bclass",
        holds,
        format!("{} G-classes meet D, {} B-classes", meeting.len(), b_classes.len()),
    ))
}

/// `x ∈ D` is B-real ⇔ Irr(G)-real ⇔ real in G, and the same for rationality
/// with x ~ x^k (k coprime to |x|) as the fusion oracle.
pub fn check_b_real_rational(table: &CharacterTable, block: &Block, d: &PermGroup) -> Result<(TheoremCheck, TheoremCheck)> {
    let g = &table.group;
    let all_chars: Vec<usize> = (0..table.len()).collect();
    let on = |chars: &[usize], c: usize, pred: fn(&Cyclotomic) -> bool| chars.iter().all(|&chi| pred(&table.values[chi][c]));
    let (mut real_ok, mut rat_ok) = (true, true);
    let (mut n_real, mut n_rat) = (0usize, 0usize);
    for (&c, xs) in &classes_meeting(table, d)? {
        let b_real = on(&block.character_indices, c, Cyclotomic::is_real);
        let irr_real = on(&all_chars, c, Cyclotomic::is_real);
        for x in xs {
            let g_real = are_conjugate_in(g, x, &x.inverse())?;
            real_ok &= b_real == irr_real && irr_real == g_real;
            n_real += usize::from(g_real);
        }
        let b_rat = on(&block.character_indices, c, Cyclotomic::is_rational);
        let irr_rat = on(&all_chars, c, Cyclotomic::is_rational);
        let x = &xs[0];
        let o = x.order();
        let fused = (1..=o)
            .filter(|k| k.gcd(&o) == 1)
            .all(|k| table.classes.class_of(&x.pow(k as i64)) == Some(c));
        rat_ok &= b_rat == irr_rat && irr_rat == fused;
        n_rat += if fused { xs.len() } else { 0 };
    }
    Ok((
        TheoremCheck::new("b_real", real_ok, format!("{n_real} elements of D are real in G")),
        TheoremCheck::new("b_rational", rat_ok, format!("{n_rat} elements of D are rational in G")),
    ))
}

pub fn check_nonvanishing(table: &CharacterTable, block: &Block, d: &PermGroup) -> Result<TheoremCheck> {
    let meeting = classes_meeting(table, d)?;
    let vanishing: Vec<usize> = meeting
        .keys()
        .copied()
        .filter(|&c| block.character_indices.iter().all(|&chi| table.values[chi][c].is_zero()))
        .collect();
    let details = if vanishing.is_empty() {
        format!("some χ ∈ Irr(B) is nonzero on each of the {} classes meeting D", meeting.len())
    } else {
        format!("all of Irr(B) vanishes on classes {vanishing:?}")
    };
    Ok(TheoremCheck::new("nonvanishing", vanishing.is_empty(), details))
}

/// Rank of `(χ(x_i))` over `Q(ζ_e)` for `χ ∈ Irr(B)` and `x_i` running over
/// the G-classes meeting `D`, plus that number `t`.
///
/// Reduction modulo a prime above a split prime can only lower the rank of a
/// matrix of algebraic integers, so full rank modulo that prime proves full
/// rank; otherwise the rank is computed by exact elimination.
pub fn restriction_rank(table: &CharacterTable, block: &Block, d: &PermGroup) -> Result<(usize, usize)> {
    let cols: Vec<usize> = classes_meeting(table, d)?.into_keys().collect();
    let t = cols.len();
    let rows: Vec<Vec<Cyclotomic>> = block
        .character_indices
        .iter()
        .map(|&chi| cols.iter().map(|&c| table.values[chi][c].clone()).collect())
        .collect();
    let e = table.exponent;
    let mut q = e * ((1 << 20) / e + 1) + 1;
    while !is_prime(q) {
        q += e;
    }
    let factors = prime_factors(e);
    let z = (2..q)
        .map(|a| pow_mod(a, (q - 1) / e, q))
        .find(|&z| factors.iter().all(|&f| pow_mod(z, e / f, q) != 1))
        .expect("GF(q) contains primitive e-th roots");
    let reduced: Option<Vec<Vec<u64>>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.reduce_mod(q, pow_mod(z, e / v.order() as u64, q)))
                .collect::<Option<Vec<u64>>>()
        })
        .collect();
    if let Some(mut m) = reduced {
        if linalg::rref(&mut m, q).len() == t {
            return Ok((t, t));
        }
    }
    Ok((exact_rank(rows), t))
}

fn exact_rank(mut m: Vec<Vec<Cyclotomic>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].inverse().expect("nonzero pivot");
        let pivot_row: Vec<Cyclotomic> = m[rank].iter().map(|v| v * &inv).collect();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * y);
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

pub fn check_restriction_rank(table: &CharacterTable, block: &Block, d: &PermGroup) -> Result<(TheoremCheck, TheoremCheck)> {
    let (rank, t) = restriction_rank(table, block, d)?;
    let k = block.len();
    Ok((
        TheoremCheck::new("restriction_rank", rank == t, format!("rank {rank}, {t} G-classes meet D")),
        TheoremCheck::new("kB_lower_bound", k >= t, format!("k(B) = {k} ≥ |Cl_G(D)| = {t}")),
    ))
}

/// Brauer's permutation lemma: real classes and real characters agree in
/// number, for every named table.
pub fn check_perm_lemma(tables: &[(String, &CharacterTable)]) -> TheoremCheck {
    let mut holds = true;
    let parts: Vec<String> = tables
        .iter()
        .map(|(name, t)| {
            let chars = (0..t.len()).filter(|&c| t.is_real_character(c)).count();
            let classes = t.classes.real_class_indices().len();
            holds &= chars == classes;
            format!("{name}: {chars} real characters, {classes} real classes")
        })
        .collect();
    TheoremCheck::new("perm_lemma", holds, parts.join("; "))
}

/// For a real 2-block with `G = D·C_G(D)` (in particular `D ≤ Z(G)`): the
/// real characters of `B` and of `D` agree in number, height by height.
/// `None` when the hypothesis fails.
pub fn check_central_defect_equality(table: &CharacterTable, block: &Block, d: &PermGroup, d_table: &CharacterTable) -> Result<Option<TheoremCheck>> {
    let g = &table.group;
    if block.p != 2 || !block.is_real {
        return Ok(None);
    }
    let c_order = g.elements()?.elements().iter().filter(|x| d.generators().iter().all(|y| x.commutes_with(y))).count() as u64;
    let z = center(d)?;
    if d.size() * c_order / z.size() != g.size() {
        return Ok(None);
    }
    let b_heights = krv_counts(block, table).by_height;
    let mut d_heights = vec![0usize; 1];
    for chi in (0..d_table.len()).filter(|&chi| d_table.is_real_character(chi)) {
        let h = d_table.degrees[chi].trailing_zeros() as usize;
        if d_heights.len() <= h {
            d_heights.resize(h + 1, 0);
        }
        d_heights[h] += 1;
    }
    let trim = |v: &[usize]| v.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    let holds = b_heights[..trim(&b_heights)] == d_heights[..trim(&d_heights)];
    let central = if c_order == g.size() { "D ≤ Z(G)" } else { "G = D·C_G(D)" };
    Ok(Some(TheoremCheck::new(
        "central_defect_equality",
        holds,
        format!("{central}: k_i,rv(B) = {b_heights:?}, k_i,rv(D) = {d_heights:?}"),
    )))
}

/// For a real 2-block with cyclic defect group: `k_rv(B) = k_rv(b)` with `b`
/// the Brauer correspondent in `N_G(D)`.
pub fn check_samenumber(krv_b: usize, krv_correspondent: usize) -> TheoremCheck {
    TheoremCheck::new(
        "samenumber",
        krv_b == krv_correspondent,
        format!("k_rv(B) = {krv_b}, k_rv(b) = {krv_correspondent}"),
    )
}
