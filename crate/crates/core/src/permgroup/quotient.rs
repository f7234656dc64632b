use std::sync::Arc;

use super::{ElementIndex, PermGroup, Permutation};
use crate::{Error, Result};

/// Largest index accepted for the regular representation of `G/N`.
pub const MAX_QUOTIENT_INDEX: u64 = 10_000;

/// `G/N` as a permutation group together with the natural epimorphism.
#[derive(Clone)]
pub struct Quotient {
    pub group: PermGroup,
    kind: QuotientKind,
}

#[derive(Clone)]
enum QuotientKind {
    /// `N = 1`; the epimorphism is the identity.
    Identity,
    /// Regular action of `G/N` on the cosets of `N`.
    Regular {
        parent: Arc<ElementIndex>,
        coset_of: Vec<u32>,
        representatives: Vec<Permutation>,
    },
}

impl Quotient {
    /// Image of `g ∈ G`.
    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        match &self.kind {
            QuotientKind::Identity => {
                if !self.group.contains(g) {
                    return Err(Error::input("quotient: element not in G"));
                }
                Ok(g.clone())
            }
            QuotientKind::Regular { parent, coset_of, representatives } => {
                if parent.position(g).is_none() {
                    return Err(Error::input("quotient: element not in G"));
                }
                let images = representatives
                    .iter()
                    .map(|r| {
                        let rg = r.compose(g);
                        coset_of[parent.position(&rg).expect("product stays in G")]
                    })
                    .collect();
                Ok(Permutation::from_images_unchecked(images))
            }
        }
    }

    /// Image of a subgroup of `G`.
    pub fn image_of(&self, sub: &PermGroup) -> Result<PermGroup> {
        let gens = sub.generators().iter().map(|g| self.image(g)).collect::<Result<Vec<_>>>()?;
        Ok(PermGroup::from_generators(self.group.degree(), gens))
    }

    pub fn index(&self) -> u64 {
        self.group.size()
    }
}

/// Builds `G/N` for `N ⊴ G`. The trivial kernel returns `G` itself with the
/// identity map; otherwise `G/N` acts regularly on the cosets of `N`.
pub fn quotient_group(group: &PermGroup, normal: &PermGroup) -> Result<Quotient> {
    if !normal.is_normal_in(group) {
        return Err(Error::input("quotient_group: N is not normal in G"));
    }
    if normal.is_trivial() {
        return Ok(Quotient { group: group.clone(), kind: QuotientKind::Identity });
    }
    let index = group.size() / normal.size();
    if index > MAX_QUOTIENT_INDEX {
        return Err(Error::capacity(
            "quotient_group",
            format!("index {index} exceeds {MAX_QUOTIENT_INDEX}"),
        ));
    }
    let parent = group.elements()?;
    let kernel = normal.elements()?;
    const UNSEEN: u32 = u32::MAX;
    let mut coset_of = vec![UNSEEN; parent.len()];
    let mut representatives = Vec::with_capacity(index as usize);
    for (i, g) in parent.elements().iter().enumerate() {
        if coset_of[i] != UNSEEN {
            continue;
        }
        let id = representatives.len() as u32;
        for n in kernel.elements() {
            let ng = n.compose(g);
            coset_of[parent.position(&ng).expect("coset inside G")] = id;
        }
        representatives.push(g.clone());
    }
    debug_assert_eq!(representatives.len() as u64, index);
    let act = |g: &Permutation| -> Permutation {
        let images = representatives
            .iter()
            .map(|r| coset_of[parent.position(&r.compose(g)).expect("product stays in G")])
            .collect();
        Permutation::from_images_unchecked(images)
    };
    let gens: Vec<Permutation> = group.generators().iter().map(act).collect();
    let q = PermGroup::from_generators(index as usize, gens);
    if q.size() != index {
        return Err(Error::internal("quotient_group", "regular action has the wrong order"));
    }
    Ok(Quotient { group: q, kind: QuotientKind::Regular { parent, coset_of, representatives } })
}
