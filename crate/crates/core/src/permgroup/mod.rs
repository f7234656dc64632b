//! Finite permutation groups: base and strong generating sets, element
//! enumeration, conjugacy classes, subgroup constructions and quotients.

mod classes;
mod perm;
mod quotient;
mod reality;
mod schreier;
mod subgroups;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustc_hash::FxBuildHasher;

pub use classes::{conjugacy_classes, ConjugacyClasses};
pub(crate) use classes::prime_divisors;
pub use perm::Permutation;
pub use quotient::{quotient_group, Quotient};
pub use reality::{are_conjugate_in, real_elements_under, RealElements};
pub use subgroups::{
    abelian_invariants, centralizer, center, conjugating_element, derived_length, derived_subgroup, derived_subgroup_chain, is_solvable, normal_closure,
    normalizer, real_core, structural_cores, sylow_subgroup, ChainLabel, StructuralCores,
    SubgroupChainEntry,
};

use schreier::StabChain;

use crate::{Error, Result};

/// All elements of a group in ascending lexicographic order of their image
/// arrays, with a reverse index.
pub struct ElementIndex {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32, FxBuildHasher>,
}

impl ElementIndex {
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn position(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A permutation group given by generators, carrying a verified base and
/// strong generating set.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Arc<StabChain>,
    order: BigUint,
    elements: OnceLock<Arc<ElementIndex>>,
}

/// Runs Schreier–Sims on `generators`. All generators must share one degree.
pub fn schreier_sims(generators: &[Permutation]) -> Result<PermGroup> {
    let first = generators
        .first()
        .ok_or_else(|| Error::input("empty generator list"))?;
    let degree = first.degree();
    if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::input(format!(
            "inconsistent degrees: {} and {}",
            degree,
            bad.degree()
        )));
    }
    Ok(PermGroup::from_generators(degree, generators.to_vec()))
}

impl PermGroup {
    /// Builds the group generated by `generators` on `degree` points.
    /// Identity generators are dropped; duplicates are kept out.
    pub(crate) fn from_generators(degree: usize, generators: Vec<Permutation>) -> PermGroup {
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            debug_assert_eq!(g.degree(), degree);
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let chain = StabChain::build(degree, &gens);
        let order = chain.order();
        PermGroup { degree, generators: gens, chain: Arc::new(chain), order, elements: OnceLock::new() }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_generators(degree, Vec::new())
    }

    /// The subgroup generated by `gens` (not checked against `self`).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> PermGroup {
        PermGroup::from_generators(self.degree, gens)
    }

    pub(crate) fn with_generator(&self, g: Permutation) -> PermGroup {
        let mut gens = self.generators.clone();
        gens.push(g);
        PermGroup::from_generators(self.degree, gens)
    }

    /// The subgroup generated by an element list that is known to be closed.
    pub(crate) fn from_closed_subset<'a>(
        degree: usize,
        elements: impl IntoIterator<Item = &'a Permutation>,
    ) -> PermGroup {
        let mut group = PermGroup::trivial(degree);
        for g in elements {
            if !group.contains(g) {
                group = group.with_generator(g.clone());
            }
        }
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain.strong_generators()
    }

    /// Lengths of the fundamental orbits of the stabilizer chain.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.chain.orbit_lengths()
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The order as a machine integer, saturating at `u64::MAX`.
    pub fn size(&self) -> u64 {
        self.order.to_u64().unwrap_or(u64::MAX)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Same element set (equal order and mutual containment of generators).
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other)
            && other
                .generators
                .iter()
                .all(|s| self.generators.iter().all(|h| self.contains(&h.conjugate_by(s))))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// `H^g = g⁻¹ H g`.
    pub fn conjugate_by(&self, g: &Permutation) -> PermGroup {
        self.subgroup(self.generators.iter().map(|h| h.conjugate_by(g)).collect())
    }

    pub fn exponent(&self) -> Result<u64> {
        use num_integer::Integer;
        Ok(self
            .elements()?
            .elements()
            .iter()
            .fold(1u64, |acc, g| acc.lcm(&g.order())))
    }

    /// Enumerates the group, caching the sorted element list. Fails with a
    /// capacity error above [`crate::DEFAULT_MAX_ORDER`] times 50.
    pub fn elements(&self) -> Result<Arc<ElementIndex>> {
        if let Some(idx) = self.elements.get() {
            return Ok(idx.clone());
        }
        const HARD_LIMIT: u64 = crate::DEFAULT_MAX_ORDER * 50;
        if self.size() > HARD_LIMIT {
            return Err(Error::capacity(
                "element enumeration",
                format!("group order {} exceeds {HARD_LIMIT}", self.order),
            ));
        }
        let mut elements = self.chain.enumerate(self.degree);
        elements.sort_unstable();
        let mut index = HashMap::with_capacity_and_hasher(elements.len(), FxBuildHasher);
        for (i, g) in elements.iter().enumerate() {
            index.insert(g.clone(), i as u32);
        }
        let idx = Arc::new(ElementIndex { elements, index });
        Ok(self.elements.get_or_init(|| idx).clone())
    }

    /// A uniformly random element, drawn from the stabilizer chain.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(self.degree, rng)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, gens [", self.degree, self.order)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}
