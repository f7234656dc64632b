use std::collections::BTreeSet;

use serde::Serialize;

use crate::permgroup::{
    derived_subgroup, is_solvable, prime_divisors, real_core, real_elements_under, structural_cores,
    sylow_subgroup, PermGroup, Permutation,
};
use crate::Result;

/// `|R(G)|` and the three sufficient conditions for its oddness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem61Flags {
    pub real_core_order: String,
    pub real_core_odd: bool,
    /// (a) `G'` has a normal 2-complement.
    pub derived_subgroup_2_nilpotent: bool,
    /// (b) `O_{2',2,2'}(G) = G`.
    pub o_2prime_2_2prime_is_g: bool,
    /// (c) `G` solvable with abelian Sylow 2-subgroups.
    pub solvable_abelian_sylow2: bool,
    /// (b) ⇔ `|R(G)|` odd, (a) ⇒ `|R(G)|` odd and (c) ⇒ (b).
    pub consistent: bool,
}

pub fn theorem61_hypotheses(g: &PermGroup) -> Result<Theorem61Flags> {
    let r = real_core(g)?;
    let odd = r.size() % 2 == 1;
    let gp = derived_subgroup(g);
    let gp_cores = structural_cores(&gp, 2)?;
    let two_part = gp.size() / odd_part(gp.size());
    let a = gp.size() / gp_cores.p_prime.size() == two_part;
    let b = structural_cores(g, 2)?.p_prime_p_p_prime.size() == g.size();
    let c = is_solvable(g) && sylow_subgroup(g, 2)?.is_abelian();
    Ok(Theorem61Flags {
        real_core_order: r.size().to_string(),
        real_core_odd: odd,
        derived_subgroup_2_nilpotent: a,
        o_2prime_2_2prime_is_g: b,
        solvable_abelian_sylow2: c,
        consistent: (b == odd) && (!a || odd) && (!c || b),
    })
}

fn odd_part(mut n: u64) -> u64 {
    while n.is_multiple_of(2) {
        n /= 2;
    }
    n
}

/// Every Sylow subgroup is normal.
pub fn is_nilpotent(g: &PermGroup) -> Result<bool> {
    for p in prime_divisors(g.size()) {
        if !sylow_subgroup(g, p)?.is_normal_in(g) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An element lying in two Sylow `p`-subgroups, real in the first and not
/// in the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowRealityWitness {
    pub element: String,
    pub element_order: String,
    pub real_in: Vec<String>,
    pub not_real_in: Vec<String>,
    pub sylow_count: String,
}

/// The Sylow `p`-subgroups of `G` as conjugates of `sylow_subgroup`, in the
/// order their conjugating elements are first met.
pub fn sylow_conjugates(g: &PermGroup, p: u64) -> Result<Vec<PermGroup>> {
    let s = sylow_subgroup(g, p)?;
    let s_elements = s.elements()?;
    let mut seen: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    let mut out = Vec::new();
    for x in g.elements()?.elements() {
        let mut key: Vec<Permutation> = s_elements.elements().iter().map(|y| y.conjugate_by(x)).collect();
        key.sort_unstable();
        if seen.insert(key) {
            out.push(s.conjugate_by(x));
        }
    }
    Ok(out)
}

/// Searches the Sylow `p`-subgroups for an element whose reality depends on
/// the Sylow subgroup it is viewed in; the smallest such element wins.
pub fn sylow_reality_witness(g: &PermGroup, p: u64) -> Result<Option<SylowRealityWitness>> {
    let sylows = sylow_conjugates(g, p)?;
    let mut tagged: Vec<(BTreeSet<Permutation>, BTreeSet<Permutation>)> = Vec::with_capacity(sylows.len());
    for s in &sylows {
        let members: BTreeSet<Permutation> = s.elements()?.elements().iter().cloned().collect();
        let real: BTreeSet<Permutation> = real_elements_under(s, s)?.elements.into_iter().collect();
        tagged.push((members, real));
    }
    let mut candidates: BTreeSet<&Permutation> = BTreeSet::new();
    for (_, real) in &tagged {
        candidates.extend(real.iter().filter(|x| tagged.iter().any(|(m, r)| m.contains(*x) && !r.contains(*x))));
    }
    let Some(&x) = candidates.iter().next() else { return Ok(None) };
    let gens = |s: &PermGroup| s.generators().iter().map(Permutation::to_string).collect::<Vec<_>>();
    let yes = tagged.iter().position(|(m, r)| m.contains(x) && r.contains(x)).expect("candidate is real somewhere");
    let no = tagged.iter().position(|(m, r)| m.contains(x) && !r.contains(x)).expect("candidate is not real somewhere");
    Ok(Some(SylowRealityWitness {
        element: x.to_string(),
        element_order: x.order().to_string(),
        real_in: gens(&sylows[yes]),
        not_real_in: gens(&sylows[no]),
        sylow_count: sylows.len().to_string(),
    }))
}
