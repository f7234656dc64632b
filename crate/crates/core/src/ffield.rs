//! Prime fields, their extensions and dense linear algebra over `GF(q)`.

use crate::{Error, Result};

/// `a·b mod q` for reduced `a, b`.
#[inline]
pub fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    if q <= u32::MAX as u64 {
        a * b % q
    } else {
        ((a as u128 * b as u128) % q as u128) as u64
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `q`, `None` if `gcd(a, q) ≠ 1`.
pub fn inv_mod(a: u64, q: u64) -> Option<u64> {
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(q as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // Miller–Rabin, deterministic for 64-bit inputs with these bases.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn prime_factors(n: u64) -> Vec<u64> {
    crate::permgroup::prime_divisors(n)
}

/// Smallest generator of `GF(q)^×`.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let factors = prime_factors(q - 1);
    (2..q)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (q - 1) / f, q) != 1))
        .expect("prime fields have primitive roots")
}

/// Smallest `f ≥ 1` with `p^f ≡ 1 (mod n)`; `n` coprime to `p`.
pub fn multiplicative_order(p: u64, n: u64) -> u32 {
    if n == 1 {
        return 1;
    }
    let mut x = p % n;
    let mut f = 1;
    while x != 1 {
        x = mul_mod(x, p, n);
        f += 1;
    }
    f
}

/// Polynomials over `GF(p)`, lowest degree first, no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let inv_lead = inv_mod(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = mul_mod(*r.last().expect("nonempty"), inv_lead, p);
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mul_mod(c, mi, p)) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k) mod m`.
fn frobenius_power(m: &[u64], p: u64, k: u32) -> Poly {
    let mut x: Poly = poly_rem(&[0, 1], m, p);
    for _ in 0..k {
        x = poly_powmod(&x, p as u128, m, p);
    }
    x
}

fn poly_powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = poly_rem(&[1], m, p);
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Rabin's test for a monic polynomial of degree `f`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let f = (m.len() - 1) as u32;
    let x: Poly = vec![0, 1];
    if poly_sub(&frobenius_power(m, p, f), &poly_rem(&x, m, p), p) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_factors(f as u64) {
        let h = poly_sub(&frobenius_power(m, p, f / r as u32), &x, p);
        let g = poly_gcd(m, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn make_monic(a: Poly, p: u64) -> Poly {
    let a = trim(a);
    match a.last() {
        Some(&lead) if lead != 1 => {
            let inv = inv_mod(lead, p).expect("nonzero leading coefficient");
            a.into_iter().map(|c| mul_mod(c, inv, p)).collect()
        }
        _ => a,
    }
}

fn poly_div(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    if r.len() <= dm {
        return Vec::new();
    }
    let inv_lead = inv_mod(m[dm], p).expect("nonzero leading coefficient");
    let mut quot = vec![0u64; r.len() - dm];
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = mul_mod(*r.last().expect("nonempty"), inv_lead, p);
        quot[shift] = c;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mul_mod(c, mi, p)) % p;
        }
        r = trim(r);
    }
    quot
}

/// The irreducible factors of `Φ_n` over `GF(p)`, `p ∤ n`, sorted by
/// coefficient vector. All have degree `ord_n(p)`.
pub fn cyclotomic_factors(p: u64, n: u64) -> Result<Vec<Vec<u64>>> {
    use rand::{Rng, SeedableRng};
    if n.is_multiple_of(p) {
        return Err(Error::input(format!("{p} divides {n}")));
    }
    let phi: Poly = crate::cyclo::cyclotomic_polynomial(n as u32)
        .into_iter()
        .map(|c| c.rem_euclid(p as i64) as u64)
        .collect();
    let f = multiplicative_order(p, n) as usize;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n ^ (p << 32));
    let mut pending = vec![phi];
    let mut done = Vec::new();
    while let Some(g) = pending.pop() {
        let deg = g.len() - 1;
        if deg == f {
            done.push(g);
            continue;
        }
        // Cantor–Zassenhaus equal-degree splitting.
        loop {
            let a: Poly = trim((0..deg).map(|_| rng.gen_range(0..p)).collect());
            if a.len() < 2 {
                continue;
            }
            let h = if p == 2 {
                // absolute trace Σ a^{2^i}, i < f
                let mut t = poly_rem(&a, &g, p);
                let mut s = t.clone();
                for _ in 1..f {
                    t = poly_mulmod(&t, &t, &g, p);
                    s = poly_sub(&s, &poly_sub(&[], &t, p), p);
                }
                s
            } else {
                // a^{(p^f − 1)/2} = (a · a^p ⋯ a^{p^{f−1}})^{(p−1)/2}
                let mut t = poly_rem(&a, &g, p);
                let mut norm = t.clone();
                for _ in 1..f {
                    t = poly_powmod(&t, p as u128, &g, p);
                    norm = poly_mulmod(&norm, &t, &g, p);
                }
                poly_sub(&poly_powmod(&norm, ((p - 1) / 2) as u128, &g, p), &[1], p)
            };
            let d = make_monic(poly_gcd(&g, &h, p), p);
            if d.len() > 1 && d.len() < g.len() {
                let rest = make_monic(poly_div(&g, &d, p), p);
                pending.push(d);
                pending.push(rest);
                break;
            }
        }
    }
    done.sort();
    Ok(done)
}

/// `GF(p^f)` as `GF(p)[x]/(m)` for the first monic irreducible `m` of degree
/// `f` in lexicographic order of coefficients.
#[derive(Clone, Debug)]
pub struct ExtField {
    p: u64,
    f: u32,
    modulus: Poly,
}

/// Elements of an [`ExtField`], coefficient vectors of length `f`.
pub type FElem = Vec<u64>;

impl ExtField {
    pub fn new(p: u64, f: u32) -> Result<ExtField> {
        if !is_prime(p) || f == 0 {
            return Err(Error::input(format!("GF({p}^{f}) is not a field")));
        }
        let size = (p as u128).checked_pow(f).filter(|&s| s < (1u128 << 100));
        if size.is_none() {
            return Err(Error::capacity("ffield", format!("GF({p}^{f}) too large")));
        }
        if f == 1 {
            return Ok(ExtField { p, f, modulus: vec![0, 1] });
        }
        let mut tail = vec![0u64; f as usize];
        loop {
            let mut m = tail.clone();
            m.push(1);
            if m[0] != 0 && is_irreducible(&m, p) {
                return Ok(ExtField { p, f, modulus: m });
            }
            // next coefficient vector in lexicographic order (highest digit last)
            let mut i = 0;
            loop {
                if i == f as usize {
                    return Err(Error::internal("ffield", "no irreducible polynomial found"));
                }
                tail[i] += 1;
                if tail[i] < p {
                    break;
                }
                tail[i] = 0;
                i += 1;
            }
        }
    }

    /// Coefficients of the defining polynomial, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `GF(p)[x]/(m)` for a monic irreducible `m`; the class of `x` is
    /// [`ExtField::generator`].
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<ExtField> {
        let modulus = trim(modulus);
        if !is_prime(p) || modulus.len() < 2 || modulus.last() != Some(&1) || !is_irreducible(&modulus, p) {
            return Err(Error::input("modulus must be monic irreducible over a prime field"));
        }
        let f = (modulus.len() - 1) as u32;
        Ok(ExtField { p, f, modulus })
    }

    /// The class of `x`.
    pub fn generator(&self) -> FElem {
        self.pad(poly_rem(&[0, 1], &self.modulus, self.p))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.f)
    }

    pub fn zero(&self) -> FElem {
        vec![0; self.f as usize]
    }

    pub fn one(&self) -> FElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FElem {
        let mut v = self.zero();
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }

    fn pad(&self, mut a: Poly) -> FElem {
        a.resize(self.f as usize, 0);
        a
    }

    pub fn add(&self, a: &FElem, b: &FElem) -> FElem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &FElem, b: &FElem) -> FElem {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    pub fn scale(&self, a: &FElem, c: u64) -> FElem {
        a.iter().map(|&x| mul_mod(x, c % self.p, self.p)).collect()
    }

    pub fn mul(&self, a: &FElem, b: &FElem) -> FElem {
        if self.f == 1 {
            // modulus x − r: elements are constants
            return vec![mul_mod(a[0], b[0], self.p)];
        }
        self.pad(poly_mulmod(&trim(a.clone()), &trim(b.clone()), &self.modulus, self.p))
    }

    pub fn pow(&self, a: &FElem, mut e: u128) -> FElem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &FElem) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// The first element (in enumeration order) of multiplicative order
    /// exactly `n`; `n` must divide `p^f − 1`.
    pub fn element_of_order(&self, n: u64) -> Result<FElem> {
        let size = self.size();
        if n == 0 || !(size - 1).is_multiple_of(n as u128) {
            return Err(Error::input(format!("{n} does not divide |GF({}^{})^×|", self.p, self.f)));
        }
        let cofactor = (size - 1) / n as u128;
        let factors = prime_factors(n);
        let mut idx: u128 = 1;
        while idx < size {
            let mut v = self.zero();
            let mut t = idx;
            for c in v.iter_mut() {
                *c = (t % self.p as u128) as u64;
                t /= self.p as u128;
            }
            let g = self.pow(&v, cofactor);
            if factors.iter().all(|&r| self.pow(&g, (n / r) as u128) != self.one()) {
                return Ok(g);
            }
            idx += 1;
        }
        Err(Error::internal("ffield", "no element of the requested order"))
    }
}

/// Dense matrices over `GF(q)`, row-major.
pub mod linalg {
    use super::{inv_mod, mul_mod};

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(m: &mut [Vec<u64>], q: u64) -> Vec<usize> {
        let rows = m.len();
        if rows == 0 {
            return Vec::new();
        }
        let cols = m[0].len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, pr);
            let inv = inv_mod(m[r][c], q).expect("prime modulus");
            for x in m[r].iter_mut() {
                *x = mul_mod(*x, inv, q);
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + q - mul_mod(f, y, q)) % q;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of `{v : M v = 0}` (columns as vectors).
    pub fn nullspace(m: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
        let cols = m.first().map_or(0, |r| r.len());
        let mut a = m.to_vec();
        let pivots = rref(&mut a, q);
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (q - a[r][f]) % q;
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI − A)`, lowest degree first, via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(a: &[Vec<u64>], q: u64) -> Vec<u64> {
        let n = a.len();
        let mut h: Vec<Vec<u64>> = a.to_vec();
        for c in 0..n.saturating_sub(2) {
            let Some(pr) = (c + 1..n).find(|&i| h[i][c] != 0) else { continue };
            if pr != c + 1 {
                h.swap(pr, c + 1);
                for row in h.iter_mut() {
                    row.swap(pr, c + 1);
                }
            }
            let inv = inv_mod(h[c + 1][c], q).expect("prime modulus");
            for i in c + 2..n {
                if h[i][c] == 0 {
                    continue;
                }
                let f = mul_mod(h[i][c], inv, q);
                // row_i −= f row_{c+1}; col_{c+1} += f col_i
                let (top, rest) = h.split_at_mut(i);
                for (x, &y) in rest[0].iter_mut().zip(&top[c + 1]) {
                    let t = mul_mod(f, y, q);
                    *x = (*x + q - t) % q;
                }
                for row in h.iter_mut() {
                    let t = mul_mod(f, row[i], q);
                    row[c + 1] = (row[c + 1] + t) % q;
                }
            }
        }
        // p_k(x) = (x − h_kk) p_{k−1} − Σ_{i<k} h_ik (Π_{j=i+1}^{k} h_{j,j−1}) p_{i−1}
        let mut ps: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            let prev = &ps[k];
            let mut next = vec![0u64; k + 2];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = (next[i + 1] + c) % q;
                next[i] = (next[i] + q - mul_mod(h[k][k], c, q)) % q;
            }
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = mul_mod(prod, h[i + 1][i], q);
                let coef = mul_mod(h[i][k], prod, q);
                if coef != 0 {
                    for (j, &c) in ps[i].iter().enumerate() {
                        next[j] = (next[j] + q - mul_mod(coef, c, q)) % q;
                    }
                }
            }
            ps.push(next);
        }
        ps.pop().expect("nonempty")
    }

    /// Distinct roots in `GF(q)` of a polynomial, by scanning the field.
    pub fn roots(poly: &[u64], q: u64) -> Vec<u64> {
        (0..q)
            .filter(|&x| {
                let mut acc = 0u64;
                for &c in poly.iter().rev() {
                    acc = (mul_mod(acc, x, q) + c) % q;
                }
                acc == 0
            })
            .collect()
    }

    pub fn mat_vec(m: &[Vec<u64>], v: &[u64], q: u64) -> Vec<u64> {
        m.iter()
            .map(|row| row.iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + mul_mod(a, b, q)) % q))
            .collect()
    }
}
