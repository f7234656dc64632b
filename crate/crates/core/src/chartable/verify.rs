//! Exact orthogonality checks.
//!
//! Each sum `S` is an algebraic integer in `Z[ζ_n]` whose conjugates are
//! bounded in absolute value by `B`. For a prime `Q ≡ 1 (mod n)` with
//! `Q > B + |c|`, `S = c` holds iff `S − c` vanishes at every prime above `Q`,
//! i.e. under every map `ζ_n ↦ z^k`, `gcd(k, n) = 1`, into `GF(Q)`: a
//! nonzero multiple of `Q` has norm divisible by `Q^{φ(n)}` and so some
//! conjugate of absolute value at least `Q`.

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{CharacterTable, TableDefect};
use crate::ffield::{is_prime, mul_mod, pow_mod, prime_factors};

struct Evaluator {
    q: u64,
    /// `ev[χ][j][t]` is `χ(x_j)` under `ζ_{o_j} ↦ w_j^t`, `w_j` of order `o_j`.
    ev: Vec<Vec<Vec<u64>>>,
}

fn evaluation_prime(exponent: u64, bound: u128) -> u64 {
    let mut q = exponent * ((bound / exponent as u128) as u64 + 1) + 1;
    while !is_prime(q) {
        q += exponent;
    }
    q
}

/// An element of order exactly `n` in `GF(q)^×`.
fn root_of_order(n: u64, q: u64) -> u64 {
    let factors = prime_factors(n);
    (2..q)
        .map(|a| pow_mod(a, (q - 1) / n, q))
        .find(|&z| factors.iter().all(|&p| pow_mod(z, n / p, q) != 1))
        .expect("GF(q) contains primitive n-th roots of unity")
}

impl Evaluator {
    fn new(t: &CharacterTable) -> Evaluator {
        let order = t.group_order() as u128;
        let q = evaluation_prime(t.exponent, order * order + order);
        let z = root_of_order(t.exponent, q);
        let ev = t
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let o = t.classes.element_orders[j];
                        let step = pow_mod(z, t.exponent / v.order() as u64, q);
                        let residues: Vec<u64> = v
                            .coeffs()
                            .iter()
                            .map(|c| {
                                let c = c.to_integer().to_i64().expect("integral value");
                                c.rem_euclid(q as i64) as u64
                            })
                            .collect();
                        (0..o)
                            .map(|k| {
                                let root = pow_mod(step, k, q);
                                let mut acc = 0u64;
                                let mut p = 1u64;
                                for &c in &residues {
                                    acc = (acc + mul_mod(c, p, q)) % q;
                                    p = mul_mod(p, root, q);
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Evaluator { q, ev }
    }
}

/// Representatives of `(Z/n)^×`; `{0}` for `n = 1`.
fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|k| k.gcd(&n) == 1).collect()
}

pub(super) fn orthogonality(t: &CharacterTable) -> Vec<TableDefect> {
    let mut defects = Vec::new();
    if t.values.iter().flatten().any(|v| !v.is_integral()) {
        defects.push(TableDefect::NonIntegral);
        return defects;
    }
    let ev = Evaluator::new(t);
    let q = ev.q;
    let r = t.classes.len();
    let orders = &t.classes.element_orders;
    let mut distinct: Vec<u64> = orders.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let slot: Vec<usize> = orders.iter().map(|o| distinct.binary_search(o).expect("present")).collect();
    let e_units = units(t.exponent);

    // χ(x⁻¹) = conj χ(x); both sides live in Z[ζ_o] with conjugates
    // bounded by χ(1).
    for chi in 0..t.len() {
        for (j, &o) in orders.iter().enumerate().take(r) {
            let inv = t.classes.inverse_map[j];
            let (x, y) = (&ev.ev[chi][inv], &ev.ev[chi][j]);
            if !units(o).into_iter().all(|k| x[k as usize] == y[((o - k) % o) as usize]) {
                defects.push(TableDefect::InverseClass(chi, j));
            }
        }
    }

    // Rows: the class sum for each column order is accumulated separately at
    // every residue, then combined at each unit mod e.
    for a in 0..t.len() {
        for b in a..t.len() {
            let mut partial: Vec<Vec<u64>> = distinct.iter().map(|&o| vec![0u64; o as usize]).collect();
            for j in 0..r {
                let o = orders[j] as usize;
                let size = t.classes.sizes[j] % q;
                let acc = &mut partial[slot[j]];
                let (x, y) = (&ev.ev[a][j], &ev.ev[b][j]);
                for k in 0..o {
                    let prod = mul_mod(x[k], y[(o - k) % o], q);
                    acc[k] = (acc[k] + mul_mod(prod, size, q)) % q;
                }
            }
            let expect = if a == b { t.group_order() % q } else { 0 };
            let ok = e_units.iter().all(|&k| {
                let s = distinct
                    .iter()
                    .zip(&partial)
                    .fold(0u64, |acc, (&o, p)| (acc + p[(k % o) as usize]) % q);
                s == expect
            });
            if !ok {
                defects.push(TableDefect::RowOrthogonality(a, b));
            }
        }
    }

    // Columns, in Z[ζ_L] with L = lcm(o_j, o_m).
    for j in 0..r {
        for m in j..r {
            let (oj, om) = (orders[j], orders[m]);
            let l = oj.lcm(&om);
            let expect = if j == m { t.classes.centralizer_order(j) % q } else { 0 };
            let ok = units(l).into_iter().all(|k| {
                let kj = (k % oj) as usize;
                let km = ((l - k) % om) as usize;
                let s = (0..t.len()).fold(0u64, |acc, chi| {
                    (acc + mul_mod(ev.ev[chi][j][kj], ev.ev[chi][m][km], q)) % q
                });
                s == expect
            });
            if !ok {
                defects.push(TableDefect::ColumnOrthogonality(j, m));
            }
        }
    }
    defects
}
