//! Exact arithmetic in cyclotomic fields `Q(ζ_e)`.
//!
//! An element is a rational coefficient vector over the power basis
//! `1, ζ_e, …, ζ_e^{φ(e)−1}` of `Q[x]/(Φ_e)`, `ζ_e = e^{2πi/e}`. Binary
//! operations embed both operands at the lcm of their orders. Values that
//! turn out rational are stored at order 1.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ffield::mul_mod;
use crate::{Error, Result};

/// Reduction data for one order `e`.
pub(crate) struct Basis {
    pub(crate) phi: usize,
    /// `x^m mod Φ_e` for `m = 0..e`, as integer vectors of length `φ(e)`.
    pub(crate) powers: Vec<Vec<i64>>,
}

pub(crate) fn basis(order: u32) -> Arc<Basis> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Basis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("basis cache").get(&order) {
        return b.clone();
    }
    let b = Arc::new(build_basis(order));
    cache.lock().expect("basis cache").insert(order, b.clone());
    b
}

/// `Φ_e` as integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(e: u32) -> Vec<i64> {
    // x^e − 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in 1..e {
        if e.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    debug_assert!(lead == 1);
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for j in 0..=dn {
            rem[i + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

fn build_basis(order: u32) -> Basis {
    let poly = cyclotomic_polynomial(order);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x and reduce with x^φ = −Σ poly[i] x^i
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * poly[i];
            }
        }
    }
    Basis { phi, powers }
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// An exact element of `Q(ζ_e)`.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Cyclotomic::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Cyclotomic { order: 1, coeffs: vec![BigRational::from_integer(n.into())] }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![r] }
    }

    /// `ζ_e^k`.
    pub fn root_of_unity(e: u32, k: i64) -> Self {
        let mut m = vec![0i64; e as usize];
        m[k.rem_euclid(e as i64) as usize] = 1;
        Cyclotomic::from_root_multiplicities(e, &m)
    }

    /// `Σ_k m[k] ζ_e^k` for integer multiplicities indexed `0..e`.
    pub fn from_root_multiplicities(e: u32, m: &[i64]) -> Self {
        assert!(e >= 1 && m.len() == e as usize);
        let b = basis(e);
        let mut acc = vec![0i64; b.phi];
        for (k, &mk) in m.iter().enumerate() {
            if mk != 0 {
                for (a, &p) in acc.iter_mut().zip(&b.powers[k]) {
                    *a += mk * p;
                }
            }
        }
        Cyclotomic {
            order: e,
            coeffs: acc.into_iter().map(|c| BigRational::from_integer(c.into())).collect(),
        }
        .normalized()
    }

    /// Builds an element from power-basis coefficients at order `e`; the
    /// vector must have length `φ(e)`.
    pub fn from_coeffs(e: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if e == 0 || coeffs.len() != euler_phi(e) as usize {
            return Err(Error::input(format!("expected {} coefficients for order {e}", euler_phi(e))));
        }
        Ok(Cyclotomic { order: e, coeffs }.normalized())
    }

    /// Builds an element from integer power-basis coefficients at order `e`.
    pub fn from_integer_coeffs(e: u32, coeffs: &[i64]) -> Result<Self> {
        Cyclotomic::from_coeffs(
            e,
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        )
    }

    /// Integer coefficients at order `e`, a multiple of the order; `None`
    /// unless the element is an algebraic integer with small coefficients.
    pub fn integer_coeffs_at(&self, e: u32) -> Option<Vec<i64>> {
        self.embed(e)
            .coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn normalized(mut self) -> Self {
        if self.order != 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
            self.coeffs.truncate(1);
            self.order = 1;
        }
        self
    }

    /// The same element written at order `target`, a multiple of `order`.
    pub fn embed(&self, target: u32) -> Cyclotomic {
        assert!(target.is_multiple_of(self.order), "embedding order must be a multiple");
        if target == self.order {
            return self.clone();
        }
        let b = basis(target);
        let step = (target / self.order) as usize;
        let mut out = vec![BigRational::zero(); b.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&b.powers[(j * step) % target as usize]) {
                if p != 0 {
                    *o += c * BigRational::from_integer(p.into());
                }
            }
        }
        Cyclotomic { order: target, coeffs: out }
    }

    fn common(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let e = self.order.lcm(&other.order);
        (self.embed(e), other.embed(e))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Image under `σ_k : ζ_e ↦ ζ_e^k`; requires `gcd(k, e) = 1`.
    pub fn galois_image(&self, k: i64) -> Result<Cyclotomic> {
        let e = self.order as i64;
        if k.gcd(&e) != 1 {
            return Err(Error::input(format!("galois_image: gcd({k}, {e}) ≠ 1")));
        }
        Ok(self.galois_unchecked(k))
    }

    fn galois_unchecked(&self, k: i64) -> Cyclotomic {
        let e = self.order;
        if e == 1 {
            return self.clone();
        }
        let b = basis(e);
        let mut out = vec![BigRational::zero(); b.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = (j as i64 * k).rem_euclid(e as i64) as usize;
            for (o, &p) in out.iter_mut().zip(&b.powers[m]) {
                if p != 0 {
                    *o += c * BigRational::from_integer(p.into());
                }
            }
        }
        Cyclotomic { order: e, coeffs: out }
    }

    /// Complex conjugate, `ζ_e ↦ ζ_e^{−1}`.
    pub fn conjugate(&self) -> Cyclotomic {
        self.galois_unchecked(-1)
    }

    pub fn is_real(&self) -> bool {
        self.is_rational() || *self == self.conjugate()
    }

    /// Fixed by every `σ_k` with `gcd(k, e) = 1`; checked on the full Galois
    /// group rather than through the power-basis shortcut.
    pub fn is_galois_fixed(&self) -> bool {
        let e = self.order as i64;
        (1..e.max(2)).filter(|k| k.gcd(&e) == 1).all(|k| self.galois_unchecked(k) == *self)
    }

    pub fn scale(&self, r: &BigRational) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
            .normalized()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Cyclotomic::from_rational(r.recip()));
        }
        // Solve (multiplication by self) · c = 1 over Q.
        let e = self.order;
        let n = self.coeffs.len();
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        for j in 0..n {
            let xj = Cyclotomic::root_of_unity(e, j as i64).embed(e);
            cols.push((self * &xj).embed(e).coeffs);
        }
        // augmented matrix rows
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot = m[col].clone();
                    for (x, p) in m[r][col..].iter_mut().zip(&pivot[col..]) {
                        *x -= p * &f;
                    }
                }
            }
        }
        let coeffs = m.into_iter().map(|row| row[n].clone()).collect();
        Some(Cyclotomic { order: e, coeffs }.normalized())
    }

    /// Image under the ring map `Z[ζ_e] → GF(q)` sending `ζ_e` to `zeta`.
    /// `None` if a denominator is divisible by `q`.
    pub fn reduce_mod(&self, q: u64, zeta: u64) -> Option<u64> {
        let mut acc: u64 = 0;
        let mut zpow: u64 = 1;
        let qb = BigInt::from(q);
        for c in &self.coeffs {
            if !c.is_zero() {
                let num = c.numer().mod_floor(&qb).to_u64().expect("residue fits");
                let den = c.denom().mod_floor(&qb).to_u64().expect("residue fits");
                if den == 0 {
                    return None;
                }
                let v = mul_mod(num, crate::ffield::inv_mod(den, q)?, q);
                acc = (acc + mul_mod(v, zpow, q)) % q;
            }
            zpow = mul_mod(zpow, zeta, q);
        }
        Some(acc)
    }

    /// Whether this is an algebraic integer; the power basis is an integral
    /// basis of `Z[ζ_e]`, so this is integrality of every coefficient.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Total order used for deterministic sorting: coefficient vectors
    /// compared lexicographically at the common order.
    pub fn canonical_cmp(&self, other: &Cyclotomic) -> Ordering {
        if self.order == other.order {
            return self.coeffs.cmp(&other.coeffs);
        }
        let (a, b) = self.common(other);
        a.coeffs.cmp(&b.coeffs)
    }

    /// Floating approximation, for diagnostics only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            re += v * (theta * j as f64).cos();
            im += v * (theta * j as f64).sin();
        }
        (re, im)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        a.normalized()
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if let Some(r) = self.to_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.to_rational() {
            return self.scale(&r);
        }
        let (a, b) = self.common(rhs);
        let e = a.order;
        let bs = basis(e);
        let phi = bs.phi;
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigRational> = prod[..phi].to_vec();
        for (m, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&bs.powers[m % e as usize]) {
                if p != 0 {
                    *o += c * BigRational::from_integer(p.into());
                }
            }
        }
        Cyclotomic { order: e, coeffs: out }.normalized()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for Cyclotomic {
    /// Sum of terms `c*E(e)^k`, with `E(e) = ζ_e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if wrote {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            if k == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "E({})", self.order)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(e: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(e, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(1320), 320);
    }

    #[test]
    fn basic_identities() {
        assert!((&z(4, 1) + &z(4, 3)).is_zero());
        assert_eq!(&z(3, 1) * &z(3, 2), Cyclotomic::one());
        // (ζ5 + ζ5^4)(ζ5^2 + ζ5^3) = ζ5^3 + ζ5^4 + ζ5 + ζ5^2 = −1
        let a = &z(5, 1) + &z(5, 4);
        let b = &z(5, 2) + &z(5, 3);
        assert_eq!(&a * &b, Cyclotomic::from_integer(-1));
        // golden ratio: a = 2cos(2π/5) satisfies a² + a − 1 = 0
        let lhs = &(&(&a * &a) + &a) - &Cyclotomic::one();
        assert!(lhs.is_zero());
    }

    #[test]
    fn conjugation() {
        let r = Cyclotomic::from_rational(BigRational::new(7.into(), 3.into()));
        assert_eq!(r.conjugate(), r);
        assert_eq!(z(3, 1).conjugate(), z(3, 2));
        let s = &z(8, 1) + &z(8, 7);
        assert_eq!(s.conjugate(), s);
        assert!(s.is_real() && !s.is_rational());
    }

    #[test]
    fn predicates() {
        let a = &z(5, 1) + &z(5, 4);
        assert!(a.is_real());
        assert!(!a.is_rational());
        assert!(!a.is_galois_fixed());
        let r = Cyclotomic::from_rational(BigRational::new(7.into(), 3.into()));
        assert!(r.is_real() && r.is_rational() && r.is_galois_fixed());
        assert!(!z(7, 1).is_real());
        assert!(z(6, 1).galois_image(3).is_err());
        assert_eq!(z(7, 1).galois_image(3).unwrap(), z(7, 3));
    }

    #[test]
    fn mixed_orders() {
        // ζ4 · ζ3 = ζ12^7
        assert_eq!(&z(4, 1) * &z(3, 1), z(12, 7));
        // −1 = ζ2
        assert_eq!(z(2, 1), Cyclotomic::from_integer(-1));
        assert_eq!(z(6, 2), z(3, 1));
    }

    #[test]
    fn inverses() {
        let a = &Cyclotomic::from_integer(2) + &z(7, 3);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Cyclotomic::one());
        assert!(Cyclotomic::zero().inverse().is_none());
    }

    #[test]
    fn display_format() {
        assert_eq!(Cyclotomic::zero().to_string(), "0");
        assert_eq!(Cyclotomic::from_integer(-3).to_string(), "-3");
        let v = &(&z(5, 2) + &z(5, 2)) - &z(5, 1);
        assert_eq!(v.to_string(), "-E(5)+2*E(5)^2");
        // ζ3² = −1 − ζ3
        assert_eq!(z(3, 2).to_string(), "-1-E(3)");
    }

    #[test]
    fn reduction_mod_prime() {
        // q = 13, ζ3 ↦ 3 (3³ = 27 ≡ 1)
        assert_eq!(z(3, 1).reduce_mod(13, 3), Some(3));
        assert_eq!(z(3, 2).reduce_mod(13, 3), Some(9));
        let half = Cyclotomic::from_rational(BigRational::new(1.into(), 2.into()));
        assert_eq!(half.reduce_mod(13, 3), Some(7));
        assert_eq!(half.reduce_mod(2, 1), None);
    }
}
