use std::collections::HashMap;

use rustc_hash::FxBuildHasher;

use super::{PermGroup, Permutation};
use crate::{Error, Result};

/// Whether some `h ∈ H` has `x^h = y`. `x` and `y` need not lie in `H`.
pub fn are_conjugate_in(h: &PermGroup, x: &Permutation, y: &Permutation) -> Result<bool> {
    if x.degree() != h.degree() || y.degree() != h.degree() {
        return Err(Error::input("are_conjugate_in: degree mismatch"));
    }
    if x == y {
        return Ok(true);
    }
    if x.order() != y.order() {
        return Ok(false);
    }
    Ok(conjugation_orbit(h, x).contains_key(y))
}

/// Orbit of `x` under conjugation by `H`, as a set.
fn conjugation_orbit(h: &PermGroup, x: &Permutation) -> HashMap<Permutation, (), FxBuildHasher> {
    let mut seen = HashMap::with_hasher(FxBuildHasher);
    seen.insert(x.clone(), ());
    let mut queue = vec![x.clone()];
    let mut head = 0;
    while head < queue.len() {
        let a = queue[head].clone();
        head += 1;
        for s in h.generators() {
            let b = a.conjugate_by(s);
            if !seen.contains_key(&b) {
                seen.insert(b.clone(), ());
                queue.push(b);
            }
        }
    }
    seen
}

/// The `H`-real elements of `X`.
#[derive(Clone, Debug)]
pub struct RealElements {
    pub count: usize,
    pub elements: Vec<Permutation>,
}

/// Counts `x ∈ X` that are conjugate to `x⁻¹` by an element of `H`.
///
/// Orbits under `H` are computed once and shared between the elements they
/// contain.
pub fn real_elements_under(h: &PermGroup, x_group: &PermGroup) -> Result<RealElements> {
    if h.degree() != x_group.degree() {
        return Err(Error::input("real_elements_under: degree mismatch"));
    }
    let elements = x_group.elements()?;
    let mut orbit_of: HashMap<Permutation, usize, FxBuildHasher> = HashMap::with_hasher(FxBuildHasher);
    let mut next_orbit = 0usize;
    let mut real = Vec::new();
    for x in elements.elements() {
        let ox = match orbit_of.get(x) {
            Some(&o) => o,
            None => {
                let orbit = conjugation_orbit(h, x);
                let id = next_orbit;
                next_orbit += 1;
                for (y, _) in orbit {
                    orbit_of.insert(y, id);
                }
                id
            }
        };
        let inv = x.inverse();
        let is_real = match orbit_of.get(&inv) {
            Some(&o) => o == ox,
            None => false,
        };
        if is_real {
            real.push(x.clone());
        }
    }
    Ok(RealElements { count: real.len(), elements: real })
}

#[cfg(test)]
mod tests {
    use super::super::testgroups::*;
    use super::*;

    #[test]
    fn conjugacy_examples() {
        let q8 = quaternion();
        let g = &q8.generators()[0];
        assert!(are_conjugate_in(&q8, g, g).unwrap());
        assert!(are_conjugate_in(&q8, g, &g.inverse()).unwrap());
        let c5 = cyclic(5);
        let x = &c5.generators()[0];
        assert!(!are_conjugate_in(&c5, x, &x.inverse()).unwrap());
        assert!(are_conjugate_in(&c5, x, &perm(4, &[&[0, 1]])).is_err());
    }

    #[test]
    fn elementary_abelian_is_all_real() {
        let v = klein_four();
        let h = PermGroup::trivial(4);
        assert_eq!(real_elements_under(&h, &v).unwrap().count, 4);
    }

    #[test]
    fn monotone_in_acting_group() {
        let s4 = symmetric(4);
        let a4 = alternating(4);
        let in_a4 = real_elements_under(&a4, &a4).unwrap();
        let in_s4 = real_elements_under(&s4, &a4).unwrap();
        assert!(in_a4.count <= in_s4.count);
        for x in &in_a4.elements {
            assert!(in_s4.elements.contains(x));
        }
        assert_eq!(in_a4.count, 4);
        assert_eq!(in_s4.count, 12);
    }
}
