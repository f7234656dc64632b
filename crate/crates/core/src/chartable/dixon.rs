//! Dixon–Schneider: simultaneous eigenvectors of the class matrices over a
//! prime field `GF(q)` with `q ≡ 1 (mod e)`, lifted to cyclotomic values.

use crate::cyclo::Cyclotomic;
use crate::ffield::{inv_mod, is_prime, linalg, mul_mod, pow_mod, primitive_root};
use crate::permgroup::ConjugacyClasses;
use crate::{Error, Result};

/// How many classes the dense structure-constant tensor may index.
pub const MAX_CLASSES: usize = 400;

/// `a_{ijk} = #{(u, v) ∈ C_i × C_j : uv = z_k}` for all class triples.
#[derive(Clone)]
pub struct StructureConstants {
    r: usize,
    data: Vec<u32>,
}

impl StructureConstants {
    pub fn compute(classes: &ConjugacyClasses) -> Result<StructureConstants> {
        let r = classes.len();
        if r > MAX_CLASSES {
            return Err(Error::capacity(
                "structure_constants",
                format!("{r} classes exceed the limit of {MAX_CLASSES}"),
            ));
        }
        let index = classes.element_index();
        let elements = index.elements();
        let inverses: Vec<_> = elements.iter().map(|x| x.inverse()).collect();
        let mut data = vec![0u32; r * r * r];
        for k in 0..r {
            let z = &classes.representatives[k];
            for (xi, xinv) in inverses.iter().enumerate() {
                let i = classes.class_of_index(xi);
                let y = xinv.compose(z);
                let j = classes.class_of(&y).expect("product in group");
                data[(i * r + j) * r + k] += 1;
            }
        }
        Ok(StructureConstants { r, data })
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.data[(i * self.r + j) * self.r + k] as u64
    }

    pub fn len(&self) -> usize {
        self.r
    }

    pub fn is_empty(&self) -> bool {
        self.r == 0
    }
}

/// A single structure constant, counted directly.
pub fn class_structure_constants(
    classes: &ConjugacyClasses,
    i: usize,
    j: usize,
    k: usize,
) -> Result<u64> {
    let r = classes.len();
    if i >= r || j >= r || k >= r {
        return Err(Error::input(format!("class index out of range (k(G) = {r})")));
    }
    let z = &classes.representatives[k];
    let count = classes
        .members(i)
        .filter(|u| classes.class_of(&u.inverse().compose(z)) == Some(j))
        .count();
    Ok(count as u64)
}

/// Smallest prime `q ≡ 1 (mod e)` with `q² > 4|G|`.
pub fn dixon_prime(exponent: u64, group_order: u64) -> u64 {
    let mut q = exponent + 1;
    loop {
        if is_prime(q) && (q as u128) * (q as u128) > 4 * group_order as u128 {
            return q;
        }
        q += exponent;
    }
}

/// Output of the modular phase: `GF(q)` data the exact table is lifted from.
#[derive(Clone, Debug)]
pub struct ModularTable {
    pub prime: u64,
    /// Image of `ζ_e` in `GF(q)`.
    pub zeta: u64,
    pub degrees: Vec<u64>,
    /// `χ_i(x_j) mod q`, unordered rows.
    pub values: Vec<Vec<u64>>,
}

pub(crate) fn modular_table(
    classes: &ConjugacyClasses,
    constants: &StructureConstants,
    exponent: u64,
) -> Result<ModularTable> {
    let r = classes.len();
    let order = classes.group_order();
    let q = dixon_prime(exponent, order);
    let zeta = pow_mod(primitive_root(q), (q - 1) / exponent, q);

    // Common eigenspaces as RREF row bases.
    let identity: Vec<Vec<u64>> =
        (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m: Vec<Vec<u64>> = (0..r)
            .map(|row| (0..r).map(|col| constants.get(row, j, col) % q).collect())
            .collect();
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
            } else {
                next.extend(split(&space, &m, q)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::internal("dixon_schneider", "class matrices did not separate characters"));
    }

    let mut degrees = Vec::with_capacity(r);
    let mut values = Vec::with_capacity(r);
    let dmax = (order as f64).sqrt() as u64 + 1;
    for space in spaces {
        let w = &space[0];
        let w0 = inv_mod(w[0], q)
            .ok_or_else(|| Error::internal("dixon_schneider", "eigenvector vanishes at the identity"))?;
        let w: Vec<u64> = w.iter().map(|&x| mul_mod(x, w0, q)).collect();
        let mut s = 0u64;
        for i in 0..r {
            let t = mul_mod(w[i], w[classes.inverse_map[i]], q);
            let inv_size = inv_mod(classes.sizes[i] % q, q).expect("q does not divide |G|");
            s = (s + mul_mod(t, inv_size, q)) % q;
        }
        let inv_s = inv_mod(s, q)
            .ok_or_else(|| Error::internal("dixon_schneider", "degenerate norm of eigenvector"))?;
        let d2 = mul_mod(order % q, inv_s, q);
        let d = (1..=dmax)
            .find(|&d| d * d <= order && (d * d) % q == d2 && order.is_multiple_of(d))
            .ok_or_else(|| Error::internal("dixon_schneider", "no admissible character degree"))?;
        let row: Vec<u64> = (0..r)
            .map(|i| {
                let inv_size = inv_mod(classes.sizes[i] % q, q).expect("q does not divide |G|");
                mul_mod(mul_mod(w[i], d % q, q), inv_size, q)
            })
            .collect();
        degrees.push(d);
        values.push(row);
    }
    Ok(ModularTable { prime: q, zeta, degrees, values })
}

/// Splits the invariant subspace with RREF basis `space` into eigenspaces
/// of `m` (acting on column vectors).
fn split(space: &[Vec<u64>], m: &[Vec<u64>], q: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let dim = space.len();
    let pivots: Vec<usize> =
        space.iter().map(|b| b.iter().position(|&x| x != 0).expect("nonzero basis")).collect();
    // M b_r = Σ_s R[r][s] b_s; coefficients read off at pivot columns.
    let restricted: Vec<Vec<u64>> = space
        .iter()
        .map(|b| {
            let image = linalg::mat_vec(m, b, q);
            pivots.iter().map(|&p| image[p]).collect()
        })
        .collect();
    let transposed: Vec<Vec<u64>> =
        (0..dim).map(|s| (0..dim).map(|r| restricted[r][s]).collect()).collect();
    let eigenvalues = linalg::roots(&linalg::charpoly(&transposed, q), q);
    let mut parts = Vec::new();
    let mut total = 0;
    for lambda in eigenvalues {
        let shifted: Vec<Vec<u64>> = transposed
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { (x + q - lambda) % q } else { x })
                    .collect()
            })
            .collect();
        let coords = linalg::nullspace(&shifted, q);
        total += coords.len();
        let mut basis: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                let mut v = vec![0u64; space[0].len()];
                for (coef, b) in c.iter().zip(space) {
                    if *coef != 0 {
                        for (x, &y) in v.iter_mut().zip(b) {
                            *x = (*x + mul_mod(*coef, y, q)) % q;
                        }
                    }
                }
                v
            })
            .collect();
        linalg::rref(&mut basis, q);
        parts.push(basis);
    }
    if total != dim {
        return Err(Error::internal("dixon_schneider", "class matrix is not diagonalizable over GF(q)"));
    }
    Ok(parts)
}

/// `χ` at every class from its residues, using `power[i][l]` = class of
/// `x_i^l`. Eigenvalue multiplicities of `ρ(x_i)` come from a discrete
/// Fourier sum over the powers of `x_i`.
pub(crate) fn lift_row(
    classes: &ConjugacyClasses,
    power: &[Vec<usize>],
    modular: &ModularTable,
    exponent: u64,
    row: usize,
) -> Result<Vec<Cyclotomic>> {
    let q = modular.prime;
    let d = modular.degrees[row];
    let residues = &modular.values[row];
    let mut out = Vec::with_capacity(classes.len());
    for (i, powers) in power.iter().enumerate() {
        let o = classes.element_orders[i];
        let zo = pow_mod(modular.zeta, exponent / o, q);
        let zo_inv = inv_mod(zo, q).expect("root of unity is invertible");
        let o_inv = inv_mod(o % q, q).expect("q does not divide |G|");
        let mut mult = vec![0i64; o as usize];
        for (k, mk) in mult.iter_mut().enumerate() {
            let step = pow_mod(zo_inv, k as u64, q);
            let mut acc = 0u64;
            let mut zpow = 1u64;
            for &cls in powers.iter() {
                acc = (acc + mul_mod(residues[cls], zpow, q)) % q;
                zpow = mul_mod(zpow, step, q);
            }
            let m = mul_mod(acc, o_inv, q);
            if m > d {
                return Err(Error::internal(
                    "dixon_schneider",
                    format!("eigenvalue multiplicity {m} exceeds degree {d}"),
                ));
            }
            *mk = m as i64;
        }
        if mult.iter().sum::<i64>() != d as i64 {
            return Err(Error::internal("dixon_schneider", "multiplicities do not sum to the degree"));
        }
        out.push(Cyclotomic::from_root_multiplicities(o as u32, &mult));
    }
    Ok(out)
}
