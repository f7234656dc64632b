use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use super::{ElementIndex, PermGroup, Permutation};
use crate::Result;

/// The conjugacy classes of a group.
///
/// Classes are sorted by (element order, class size, smallest element); the
/// representative of a class is its lexicographically smallest element, so
/// the identity class always comes first.
#[derive(Clone)]
pub struct ConjugacyClasses {
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    /// Class of `g` ↦ class of `g⁻¹`.
    pub inverse_map: Vec<usize>,
    /// For every prime `q` dividing the exponent, class of `g` ↦ class of `g^q`.
    pub power_maps: BTreeMap<u64, Vec<usize>>,
    group_order: u64,
    members: Vec<Vec<u32>>,
    class_of: Vec<u32>,
    elements: Arc<ElementIndex>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Class index of `g`, or `None` when `g` is not in the group.
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.elements.position(g).map(|i| self.class_of[i] as usize)
    }

    pub fn class_of_index(&self, element_index: usize) -> usize {
        self.class_of[element_index] as usize
    }

    /// Members of class `i`, as permutations.
    pub fn members(&self, i: usize) -> impl Iterator<Item = &Permutation> + '_ {
        self.members[i].iter().map(move |&e| &self.elements.elements()[e as usize])
    }

    pub fn element_index(&self) -> &ElementIndex {
        &self.elements
    }

    pub fn centralizer_order(&self, i: usize) -> u64 {
        self.group_order / self.sizes[i]
    }

    /// Class of `rep_i^k`.
    pub fn power_class(&self, i: usize, k: i64) -> usize {
        let g = self.representatives[i].pow(k);
        self.class_of(&g).expect("power of a group element lies in the group")
    }

    pub fn exponent(&self) -> u64 {
        use num_integer::Integer;
        self.element_orders.iter().fold(1u64, |acc, &o| acc.lcm(&o))
    }

    pub fn real_class_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.inverse_map[i] == i).collect()
    }
}

/// Computes the conjugacy classes by orbit enumeration under conjugation by
/// the generators.
pub fn conjugacy_classes(group: &PermGroup) -> Result<ConjugacyClasses> {
    let elements = group.elements()?;
    let n = elements.len();
    let gens = group.generators();
    const UNSEEN: u32 = u32::MAX;
    let mut class_of = vec![UNSEEN; n];
    let mut raw: Vec<Vec<u32>> = Vec::new();
    for start in 0..n {
        if class_of[start] != UNSEEN {
            continue;
        }
        let id = raw.len() as u32;
        class_of[start] = id;
        let mut members = vec![start as u32];
        let mut head = 0;
        while head < members.len() {
            let x = &elements.elements()[members[head] as usize];
            head += 1;
            for s in gens {
                let y = x.conjugate_by(s);
                let yi = elements.position(&y).expect("conjugate stays in the group");
                if class_of[yi] == UNSEEN {
                    class_of[yi] = id;
                    members.push(yi as u32);
                }
            }
        }
        members.sort_unstable();
        raw.push(members);
    }

    // Sort by (order, size, smallest element). `raw` is already ordered by
    // smallest element since starts were visited in ascending order.
    let orders: Vec<u64> = raw.iter().map(|m| elements.elements()[m[0] as usize].order()).collect();
    let mut perm: Vec<usize> = (0..raw.len()).collect();
    perm.sort_by(|&a, &b| match orders[a].cmp(&orders[b]) {
        Ordering::Equal => match raw[a].len().cmp(&raw[b].len()) {
            Ordering::Equal => a.cmp(&b),
            o => o,
        },
        o => o,
    });
    let mut new_id = vec![0u32; raw.len()];
    for (new, &old) in perm.iter().enumerate() {
        new_id[old] = new as u32;
    }
    for c in class_of.iter_mut() {
        *c = new_id[*c as usize];
    }
    let members: Vec<Vec<u32>> = perm.iter().map(|&old| std::mem::take(&mut raw[old])).collect();
    let representatives: Vec<Permutation> =
        members.iter().map(|m| elements.elements()[m[0] as usize].clone()).collect();
    let sizes: Vec<u64> = members.iter().map(|m| m.len() as u64).collect();
    let element_orders: Vec<u64> = perm.iter().map(|&old| orders[old]).collect();

    let lookup = |g: &Permutation| -> usize {
        class_of[elements.position(g).expect("element of the group")] as usize
    };
    let inverse_map: Vec<usize> = representatives.iter().map(|r| lookup(&r.inverse())).collect();

    let exponent = {
        use num_integer::Integer;
        element_orders.iter().fold(1u64, |acc, &o| acc.lcm(&o))
    };
    let mut power_maps = BTreeMap::new();
    for q in prime_divisors(exponent) {
        let map: Vec<usize> = representatives.iter().map(|r| lookup(&r.pow(q as i64))).collect();
        power_maps.insert(q, map);
    }

    Ok(ConjugacyClasses {
        representatives,
        sizes,
        element_orders,
        inverse_map,
        power_maps,
        group_order: n as u64,
        members,
        class_of,
        elements,
    })
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
