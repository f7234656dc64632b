use num_bigint::BigUint;

use super::Permutation;

/// One level of a stabilizer chain: the stabilizer of the earlier base
/// points, acting on the orbit of `point`.
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[β]` maps `point` to `β`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: usize, degree: usize, gens: Vec<Permutation>) -> Level {
        let mut level = Level { point, gens, orbit: Vec::new(), transversal: Vec::new() };
        level.recompute_orbit(degree);
        level
    }

    fn recompute_orbit(&mut self, degree: usize) {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[self.point] = Some(Permutation::identity(degree));
        let mut orbit = vec![self.point];
        let mut head = 0;
        while head < orbit.len() {
            let beta = orbit[head];
            head += 1;
            for s in &self.gens {
                let gamma = s.image(beta);
                if transversal[gamma].is_none() {
                    let u = transversal[beta].as_ref().expect("orbit point").compose(s);
                    transversal[gamma] = Some(u);
                    orbit.push(gamma);
                }
            }
        }
        self.orbit = orbit;
        self.transversal = transversal;
    }
}

/// A base and strong generating set built by the deterministic
/// Schreier–Sims algorithm.
pub(crate) struct StabChain {
    levels: Vec<Level>,
}

impl StabChain {
    pub(crate) fn build(degree: usize, gens: &[Permutation]) -> StabChain {
        let mut chain = StabChain { levels: Vec::new() };
        if gens.is_empty() {
            return chain;
        }
        // Initial base: extend until no generator fixes every base point.
        let mut base: Vec<usize> = Vec::new();
        for g in gens {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved_point().expect("non-identity generator"));
            }
        }
        for (i, &b) in base.iter().enumerate() {
            let level_gens: Vec<Permutation> = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.image(c) == c))
                .cloned()
                .collect();
            chain.levels.push(Level::new(b, degree, level_gens));
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            match chain.find_failing_schreier_generator(li) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        let point = h.first_moved_point().expect("non-identity residue");
                        chain.levels.push(Level::new(point, degree, Vec::new()));
                    }
                    for l in li + 1..=j {
                        chain.levels[l].gens.push(h.clone());
                        chain.levels[l].recompute_orbit(degree);
                    }
                    i = j as isize;
                }
            }
        }
        chain
    }

    /// Looks for a Schreier generator of level `li` that does not sift
    /// through the levels below it; returns the residue and the level where
    /// sifting stopped.
    fn find_failing_schreier_generator(&self, li: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[li];
        for &beta in &level.orbit {
            let u_beta = level.transversal[beta].as_ref().expect("orbit point");
            for s in &level.gens {
                let gamma = s.image(beta);
                let u_gamma = level.transversal[gamma].as_ref().expect("orbit point");
                let us = u_beta.compose(s);
                if &us == u_gamma {
                    continue;
                }
                let y = us.compose(&u_gamma.inverse());
                let (h, j) = self.strip(y, li + 1);
                if j < self.levels.len() || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// Sifts `g` through levels `start..`; returns the residue and the first
    /// level at which the base image was outside the fundamental orbit
    /// (`levels.len()` if sifting completed).
    fn strip(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.image(level.point);
            match &level.transversal[beta] {
                None => return (g, l),
                Some(u) => g = g.compose(&u.inverse()),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        let mut g = g.clone();
        for level in &self.levels {
            let beta = g.image(level.point);
            match &level.transversal[beta] {
                None => return false,
                Some(u) => g = g.compose(&u.inverse()),
            }
        }
        g.is_identity()
    }

    pub(crate) fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub(crate) fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub(crate) fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub(crate) fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Every element as a product `u_{k-1} ⋯ u_0` of transversal elements.
    pub(crate) fn enumerate(&self, degree: usize) -> Vec<Permutation> {
        let mut current = vec![Permutation::identity(degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(current.len() * level.orbit.len());
            for g in &current {
                for &beta in &level.orbit {
                    let u = level.transversal[beta].as_ref().expect("orbit point");
                    next.push(g.compose(u));
                }
            }
            current = next;
        }
        current
    }

    pub(crate) fn random_element<R: rand::Rng>(&self, degree: usize, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(degree);
        for level in self.levels.iter().rev() {
            let beta = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.compose(level.transversal[beta].as_ref().expect("orbit point"));
        }
        g
    }
}
