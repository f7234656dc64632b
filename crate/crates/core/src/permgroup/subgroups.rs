use super::{conjugacy_classes, PermGroup, Permutation};
use crate::{Error, Result};

/// Which characteristic subgroup a chain entry is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainLabel {
    Derived(usize),
    PPrimeCore,
    PPrimePCore,
    PPrimePPPrimeCore,
    RealCore,
    Sylow(u64),
    Center,
}

#[derive(Clone, Debug)]
pub struct SubgroupChainEntry {
    pub subgroup: PermGroup,
    pub label: ChainLabel,
}

/// `{g ∈ G : gx = xg}`.
pub fn centralizer(group: &PermGroup, x: &Permutation) -> Result<PermGroup> {
    if !group.contains(x) {
        return Err(Error::input(format!("{x} is not an element of the group")));
    }
    let elements = group.elements()?;
    let commuting = elements.elements().iter().filter(|g| g.commutes_with(x));
    Ok(PermGroup::from_closed_subset(group.degree(), commuting))
}

pub fn center(group: &PermGroup) -> Result<PermGroup> {
    let elements = group.elements()?;
    let central = elements
        .elements()
        .iter()
        .filter(|g| group.generators().iter().all(|s| s.commutes_with(g)));
    Ok(PermGroup::from_closed_subset(group.degree(), central))
}

/// `{g ∈ G : H^g = H}` by a pass over the elements of `G`, skipping those
/// already in the part of the normalizer found so far.
pub fn normalizer(group: &PermGroup, sub: &PermGroup) -> Result<PermGroup> {
    if !sub.is_subgroup_of(group) {
        return Err(Error::input("normalizer: H is not a subgroup of G"));
    }
    let elements = group.elements()?;
    let mut norm = sub.clone();
    for g in elements.elements() {
        if norm.contains(g) {
            continue;
        }
        if sub.generators().iter().all(|h| sub.contains(&h.conjugate_by(g))) {
            norm = norm.with_generator(g.clone());
            if norm.order() == group.order() {
                break;
            }
        }
    }
    Ok(norm)
}

/// A Sylow `p`-subgroup, grown one factor of `p` at a time inside successive
/// normalizers. Deterministic: the smallest admissible element is taken.
pub fn sylow_subgroup(group: &PermGroup, p: u64) -> Result<PermGroup> {
    let target = p_part(group.size(), p);
    let mut sylow = PermGroup::trivial(group.degree());
    // Fast path for p-groups.
    if target == group.size() {
        return Ok(group.clone());
    }
    while sylow.size() < target {
        let norm = normalizer(group, &sylow)?;
        let elements = norm.elements()?;
        let next = elements
            .elements()
            .iter()
            .find(|g| !sylow.contains(g) && sylow.contains(&g.pow(p as i64)))
            .cloned()
            .ok_or_else(|| Error::internal("sylow_subgroup", "no p-element in N(P)/P"))?;
        sylow = sylow.with_generator(next);
    }
    if sylow.size() != target {
        return Err(Error::internal("sylow_subgroup", "order overshoot"));
    }
    Ok(sylow)
}

/// `p`-part of `n`.
pub(crate) fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

/// The smallest normal subgroup of `group` containing `gens`.
pub fn normal_closure(group: &PermGroup, gens: &[Permutation]) -> PermGroup {
    let mut closure = group.subgroup(gens.to_vec());
    loop {
        let mut grew = false;
        let current: Vec<Permutation> = closure.generators().to_vec();
        for a in &current {
            for s in group.generators() {
                let c = a.conjugate_by(s);
                if !closure.contains(&c) {
                    closure = closure.with_generator(c);
                    grew = true;
                }
            }
        }
        if !grew {
            return closure;
        }
    }
}

pub fn derived_subgroup(group: &PermGroup) -> PermGroup {
    let gens = group.generators();
    let mut commutators = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = Permutation::commutator(a, b);
            if !c.is_identity() {
                commutators.push(c);
            }
        }
    }
    normal_closure(group, &commutators)
}

/// `H ⊇ H' ⊇ H'' ⊇ …`, at most `n_max` steps, stopping once the series is
/// stable. The first entry is `H` itself (`Derived(0)`).
pub fn derived_subgroup_chain(group: &PermGroup, n_max: usize) -> Vec<SubgroupChainEntry> {
    let mut chain =
        vec![SubgroupChainEntry { subgroup: group.clone(), label: ChainLabel::Derived(0) }];
    for n in 1..=n_max {
        let prev = &chain.last().expect("nonempty").subgroup;
        let next = derived_subgroup(prev);
        let stable = next.order() == prev.order();
        if stable {
            break;
        }
        chain.push(SubgroupChainEntry { subgroup: next, label: ChainLabel::Derived(n) });
        if chain.last().expect("nonempty").subgroup.is_trivial() {
            break;
        }
    }
    chain
}

pub fn is_solvable(group: &PermGroup) -> bool {
    let mut current = group.clone();
    loop {
        if current.is_trivial() {
            return true;
        }
        let next = derived_subgroup(&current);
        if next.order() == current.order() {
            return false;
        }
        current = next;
    }
}

/// `O_{p'}(G) ≤ O_{p',p}(G) ≤ O_{p',p,p'}(G)`.
#[derive(Clone, Debug)]
pub struct StructuralCores {
    pub p_prime: PermGroup,
    pub p_prime_p: PermGroup,
    pub p_prime_p_p_prime: PermGroup,
}

pub fn structural_cores(group: &PermGroup, p: u64) -> Result<StructuralCores> {
    let is_p_power = |n: u64| p_part(n, p) == n;
    let is_p_prime = |n: u64| !n.is_multiple_of(p);
    let trivial = PermGroup::trivial(group.degree());
    let p_prime = normal_extension(group, &trivial, is_p_prime)?;
    let p_prime_p = normal_extension(group, &p_prime, is_p_power)?;
    let p_prime_p_p_prime = normal_extension(group, &p_prime_p, is_p_prime)?;
    Ok(StructuralCores { p_prime, p_prime_p, p_prime_p_p_prime })
}

/// The largest normal subgroup `M ⊇ L` whose index `|M : L|` satisfies
/// `accept`, where `accept` describes a class of π-numbers. `L` must be
/// normal in `group`.
///
/// `M/L = O_π(G/L)` is the product of the normal closures `⟨L, x^G⟩` whose
/// index over `L` is a π-number, one test per conjugacy class.
fn normal_extension(
    group: &PermGroup,
    lower: &PermGroup,
    accept: impl Fn(u64) -> bool,
) -> Result<PermGroup> {
    let classes = conjugacy_classes(group)?;
    let mut acc = lower.clone();
    for rep in &classes.representatives {
        if acc.contains(rep) {
            continue;
        }
        let mut gens = lower.generators().to_vec();
        gens.push(rep.clone());
        let closure = normal_closure(group, &gens);
        if accept(closure.size() / lower.size()) {
            let mut gens = acc.generators().to_vec();
            gens.push(rep.clone());
            acc = normal_closure(group, &gens);
        }
    }
    if !accept(acc.size() / lower.size()) {
        return Err(Error::internal("structural_cores", "product left the π-class"));
    }
    Ok(acc)
}

/// The subgroup generated by the real elements of odd order.
pub fn real_core(group: &PermGroup) -> Result<PermGroup> {
    let classes = conjugacy_classes(group)?;
    let gens: Vec<Permutation> = (0..classes.len())
        .filter(|&i| classes.element_orders[i] % 2 == 1 && classes.inverse_map[i] == i)
        .map(|i| classes.representatives[i].clone())
        .filter(|g| !g.is_identity())
        .collect();
    Ok(normal_closure(group, &gens))
}

/// Some `g ∈ G` with `A^g = B`, searched over coset representatives of
/// `N_G(A)` in element order.
pub fn conjugating_element(group: &PermGroup, a: &PermGroup, b: &PermGroup) -> Result<Option<Permutation>> {
    if !a.is_subgroup_of(group) || !b.is_subgroup_of(group) {
        return Err(Error::input("conjugating_element: subgroups must lie in G"));
    }
    if a.order() != b.order() {
        return Ok(None);
    }
    let norm = normalizer(group, a)?;
    let elements = group.elements()?;
    let mut seen_cosets: Vec<Permutation> = Vec::new();
    for g in elements.elements() {
        // g and ng give the same conjugate of A
        if seen_cosets.iter().any(|h| norm.contains(&g.compose(&h.inverse()))) {
            continue;
        }
        if a.generators().iter().all(|x| b.contains(&x.conjugate_by(g))) {
            return Ok(Some(g.clone()));
        }
        seen_cosets.push(g.clone());
        if seen_cosets.len() as u64 * norm.size() >= group.size() {
            break;
        }
    }
    Ok(None)
}

/// Invariants `[q_1^{a_1}, …]` of an abelian group, grouped by prime and in
/// ascending order within each prime; `None` for nonabelian groups.
pub fn abelian_invariants(group: &PermGroup) -> Result<Option<Vec<u64>>> {
    if !group.is_abelian() {
        return Ok(None);
    }
    let elements = group.elements()?;
    let orders: Vec<u64> = elements.elements().iter().map(Permutation::order).collect();
    let mut out = Vec::new();
    for q in super::prime_divisors(group.size()) {
        // n[i] = log_q #{x : x^{q^i} = 1}
        let mut logs = vec![0u32];
        let mut qi = 1u64;
        loop {
            qi *= q;
            let count = orders.iter().filter(|&&o| qi.is_multiple_of(o) && p_part(o, q) == o).count() as u64;
            let mut log = 0;
            let mut c = count;
            while c > 1 {
                c /= q;
                log += 1;
            }
            if log == *logs.last().expect("nonempty") {
                break;
            }
            logs.push(log);
        }
        // cyclic factors of order ≥ q^i number logs[i] − logs[i−1]
        // non-increasing in i
        let ge: Vec<u32> = (1..logs.len()).map(|i| logs[i] - logs[i - 1]).collect();
        let mut factors = Vec::new();
        for i in 0..ge.len() {
            let next = ge.get(i + 1).copied().unwrap_or(0);
            for _ in 0..(ge[i] - next) {
                factors.push(q.pow(i as u32 + 1));
            }
        }
        factors.sort_unstable();
        out.extend(factors);
    }
    Ok(Some(out))
}

/// Length of the derived series down to the trivial group, `None` if the
/// group is not solvable.
pub fn derived_length(group: &PermGroup) -> Option<usize> {
    let mut current = group.clone();
    let mut n = 0;
    while !current.is_trivial() {
        let next = derived_subgroup(&current);
        if next.order() == current.order() {
            return None;
        }
        current = next;
        n += 1;
    }
    Some(n)
}
