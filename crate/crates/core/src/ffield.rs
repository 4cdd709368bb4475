//! Exact arithmetic in F_p and F_{p^k}.
//!
//! A [`FieldTower`] fixes the prime, the extension degree and a defining
//! modulus, and carries exp/log tables for a primitive element. Elements are
//! encoded as integers `sum c_i p^i` over their residue-polynomial
//! coefficients; [`FFElement`] pairs such a code with its tower so that mixing
//! elements of different fields is caught instead of silently coerced.
//!
//! Tables make every field operation O(1), which is what the group-order
//! computations need. The price is a hard cap on the field size
//! ([`MAX_FIELD_ORDER`]).

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::is_prime;
use crate::poly;

/// Largest field the tables are built for.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("F_{p}^{k} has more than {max} elements", max = MAX_FIELD_ORDER)]
    TooLarge { p: u64, k: u32 },
    #[error("modulus is not a monic irreducible polynomial of degree >= 1")]
    BadModulus,
    #[error("operands belong to different fields ({left} vs {right})")]
    TowerMismatch { left: String, right: String },
    #[error("zero has no inverse or multiplicative order")]
    Zero,
    #[error("{d} does not divide the extension degree {k}")]
    NotDivisor { d: u32, k: u32 },
    #[error("root of unity order {l} must be an odd prime different from p = {p}")]
    BadRootOrder { l: u64, p: u64 },
    #[error("tower has degree {got}, expected {expected}")]
    WrongDegree { got: u32, expected: u32 },
    #[error("element does not lie in the requested subfield")]
    NotInSubfield,
    #[error("coefficient list has length {got}, expected {expected}")]
    BadCoefficients { got: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, FieldError>;

struct TowerData {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < q - 1`.
    exp: Vec<u32>,
    /// Discrete log base g; `log[0]` is unused.
    log: Vec<u32>,
}

/// The field F_{p^k} = F_p[x]/(modulus), immutable once built.
#[derive(Clone)]
pub struct FieldTower(Arc<TowerData>);

/// Lexicographically first monic irreducible polynomial of degree `k` over F_p.
///
/// Candidates are ordered by the tuple `(c_{k-1}, ..., c_0)` of their
/// non-leading coefficients. The result lists coefficients constant term
/// first, leading 1 included.
pub fn find_irreducible(p: u64, k: u32) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if k == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let count = p
        .checked_pow(k)
        .filter(|&c| c <= MAX_FIELD_ORDER)
        .ok_or(FieldError::TooLarge { p, k })?;
    for code in 0..count {
        let mut f = digits(code, p, k as usize);
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut code: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

impl FieldTower {
    /// F_{p^k} with the deterministic modulus from [`find_irreducible`].
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let modulus = find_irreducible(p, k)?;
        Self::with_modulus(p, &modulus)
    }

    /// F_p[x]/(modulus); `modulus` is monic, constant term first.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        poly::trim(&mut m);
        let k = match poly::degree(&m) {
            Some(d) if d >= 1 && m[d] == 1 => d as u32,
            _ => return Err(FieldError::BadModulus),
        };
        if !poly::is_irreducible(&m, p) {
            return Err(FieldError::BadModulus);
        }
        let order = p
            .checked_pow(k)
            .filter(|&c| c <= MAX_FIELD_ORDER)
            .ok_or(FieldError::TooLarge { p, k })?;

        let generator = find_generator(p, &m, order);
        let units = (order - 1) as usize;
        let mut exp = Vec::with_capacity(units);
        let mut log = vec![u32::MAX; order as usize];
        let mut cur: Vec<u64> = vec![1];
        for i in 0..units {
            let code = encode(&cur, p);
            exp.push(code as u32);
            log[code as usize] = i as u32;
            cur = poly::mul_mod(&cur, &generator, &m, p);
        }
        Ok(FieldTower(Arc::new(TowerData {
            p: p as u32,
            k,
            order: order as u32,
            modulus: m.iter().map(|&c| c as u32).collect(),
            exp,
            log,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    /// Extension degree k over F_p.
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    /// Number of elements q = p^k.
    pub fn order(&self) -> u64 {
        self.0.order as u64
    }

    pub fn modulus(&self) -> Vec<u64> {
        self.0.modulus.iter().map(|&c| c as u64).collect()
    }

    pub fn zero(&self) -> FFElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FFElement {
        self.wrap(1)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FFElement {
        self.wrap(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element with the given residue-polynomial coefficients (constant first).
    pub fn element(&self, coeffs: &[u64]) -> Result<FFElement> {
        if coeffs.len() > self.0.k as usize {
            return Err(FieldError::BadCoefficients {
                got: coeffs.len(),
                expected: self.0.k as usize,
            });
        }
        let reduced: Vec<u64> = coeffs.iter().map(|c| c % self.p()).collect();
        Ok(self.wrap(encode(&reduced, self.p()) as u32))
    }

    /// The primitive element behind the log tables.
    pub fn generator(&self) -> FFElement {
        self.wrap(self.0.exp.get(1).copied().unwrap_or(1))
    }

    /// All elements, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FFElement> + '_ {
        (0..self.0.order).map(move |c| self.wrap(c))
    }

    pub fn same_field(&self, other: &FieldTower) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }

    pub(crate) fn check_same(&self, other: &FieldTower) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(FieldError::TowerMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub(crate) fn wrap(&self, code: u32) -> FFElement {
        debug_assert!(code < self.0.order);
        FFElement {
            tower: self.clone(),
            code,
        }
    }

    // Raw arithmetic on element codes. Matrix code works at this level to
    // avoid carrying a tower handle per entry.

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        let d = &*self.0;
        if d.k == 1 {
            let s = a + b;
            return if s >= d.p { s - d.p } else { s };
        }
        if d.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..d.k {
            let s = (a % d.p + b % d.p) % d.p;
            out += s * place;
            place *= d.p;
            a /= d.p;
            b /= d.p;
        }
        out
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        let d = &*self.0;
        if d.p == 2 {
            return a;
        }
        if d.k == 1 {
            return if a == 0 { 0 } else { d.p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..d.k {
            let c = a % d.p;
            out += ((d.p - c) % d.p) * place;
            place *= d.p;
            a /= d.p;
        }
        out
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &*self.0;
        let units = d.order - 1;
        let s = d.log[a as usize] as u64 + d.log[b as usize] as u64;
        d.exp[(s % units as u64) as usize]
    }

    /// Inverse of a nonzero code.
    #[inline]
    pub(crate) fn inv_raw(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let d = &*self.0;
        let units = d.order - 1;
        let l = d.log[a as usize];
        d.exp[((units - l) % units) as usize]
    }

    pub(crate) fn pow_raw(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let d = &*self.0;
        let units = (d.order - 1) as u128;
        let idx = (d.log[a as usize] as u128 * (e as u128 % units)) % units;
        d.exp[idx as usize]
    }

    /// Discrete log of a nonzero code base [`FieldTower::generator`].
    pub(crate) fn log_raw(&self, a: u32) -> u64 {
        debug_assert!(a != 0);
        self.0.log[a as usize] as u64
    }

    pub(crate) fn exp_raw(&self, i: u64) -> u32 {
        let units = self.order() - 1;
        self.0.exp[(i % units) as usize]
    }

    /// `a^(p^j)`.
    pub(crate) fn frob_raw(&self, a: u32, j: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let units = self.order() - 1;
        let e = poly::pow_mod(self.p(), j as u64, units.max(1));
        self.pow_raw(a, if units == 1 { 1 } else { e })
    }

    pub(crate) fn coeffs_raw(&self, code: u32) -> Vec<u64> {
        digits(code as u64, self.p(), self.0.k as usize)
    }
}

fn encode(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// First element (in encoding order) whose powers exhaust F_q^x.
fn find_generator(p: u64, modulus: &[u64], order: u64) -> Vec<u64> {
    let units = order - 1;
    let prime_factors = crate::arith::prime_factors(units);
    let k = poly::degree(modulus).unwrap();
    for code in 1..order {
        let cand = digits(code, p, k);
        let is_gen = prime_factors.iter().all(|&f| {
            let r = poly::pow_poly_mod(&cand, units / f, modulus, p);
            r != [1]
        });
        if is_gen {
            let mut c = cand;
            poly::trim(&mut c);
            return c;
        }
    }
    unreachable!("F_q^x is cyclic")
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.k)
        }
    }
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {:?}", self, self.0.modulus)
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for FieldTower {}

/// Field metadata as it appears in serialized output.
#[derive(Debug, Clone, Serialize)]
pub struct TowerInfo {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u64>,
}

impl FieldTower {
    pub fn info(&self) -> TowerInfo {
        TowerInfo {
            p: self.p(),
            k: self.degree(),
            modulus: self.modulus(),
        }
    }
}

/// An element of a [`FieldTower`].
#[derive(Clone)]
pub struct FFElement {
    tower: FieldTower,
    code: u32,
}

impl FFElement {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    /// Residue-polynomial coefficients, constant term first, length k.
    pub fn coeffs(&self) -> Vec<u64> {
        self.tower.coeffs_raw(self.code)
    }

    pub(crate) fn code(&self) -> u32 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    pub fn try_add(&self, rhs: &FFElement) -> Result<FFElement> {
        self.tower.check_same(&rhs.tower)?;
        Ok(self.tower.wrap(self.tower.add_raw(self.code, rhs.code)))
    }

    pub fn try_sub(&self, rhs: &FFElement) -> Result<FFElement> {
        self.tower.check_same(&rhs.tower)?;
        Ok(self.tower.wrap(self.tower.sub_raw(self.code, rhs.code)))
    }

    pub fn try_mul(&self, rhs: &FFElement) -> Result<FFElement> {
        self.tower.check_same(&rhs.tower)?;
        Ok(self.tower.wrap(self.tower.mul_raw(self.code, rhs.code)))
    }

    pub fn try_div(&self, rhs: &FFElement) -> Result<FFElement> {
        self.try_mul(&rhs.inv()?)
    }

    pub fn inv(&self) -> Result<FFElement> {
        if self.is_zero() {
            return Err(FieldError::Zero);
        }
        Ok(self.tower.wrap(self.tower.inv_raw(self.code)))
    }

    pub fn pow(&self, e: u64) -> FFElement {
        self.tower.wrap(self.tower.pow_raw(self.code, e))
    }

    /// `x^(p^j)`.
    pub fn frobenius(&self, j: u32) -> FFElement {
        self.tower.wrap(self.tower.frob_raw(self.code, j))
    }

    /// Least m >= 1 with x^m = 1.
    pub fn mult_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(FieldError::Zero);
        }
        let units = self.tower.order() - 1;
        let l = self.tower.log_raw(self.code);
        // gcd(0, units) = units covers x = 1.
        Ok(units / num_integer::gcd(l, units))
    }

    /// Degree of the minimal polynomial over F_p: the length of the
    /// Frobenius orbit.
    pub fn degree_over_prime_field(&self) -> u32 {
        (1..=self.tower.degree())
            .find(|&j| self.frobenius(j) == *self)
            .expect("Frobenius^k is the identity")
    }

    /// Whether x lies in the subfield F_{p^d}, i.e. is fixed by Frobenius^d.
    pub fn in_subfield(&self, d: u32) -> bool {
        d > 0 && self.tower.degree() % d == 0 && self.frobenius(d) == *self
    }

    /// Norm to F_{p^d}: product of the conjugates `x^(p^(d j))`, j < k/d.
    /// The result stays in this tower, inside the fixed field of Frobenius^d.
    pub fn norm_to_subfield(&self, d: u32) -> Result<FFElement> {
        let k = self.tower.degree();
        if d == 0 || k % d != 0 {
            return Err(FieldError::NotDivisor { d, k });
        }
        let t = &self.tower;
        let code = (0..k / d).fold(1u32, |acc, j| t.mul_raw(acc, t.frob_raw(self.code, d * j)));
        Ok(t.wrap(code))
    }

    /// Trace to F_{p^d}: sum of the same conjugates.
    pub fn trace_to_subfield(&self, d: u32) -> Result<FFElement> {
        let k = self.tower.degree();
        if d == 0 || k % d != 0 {
            return Err(FieldError::NotDivisor { d, k });
        }
        let t = &self.tower;
        let code = (0..k / d).fold(0u32, |acc, j| t.add_raw(acc, t.frob_raw(self.code, d * j)));
        Ok(t.wrap(code))
    }
}

impl PartialEq for FFElement {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.tower.same_field(&other.tower)
    }
}

impl Eq for FFElement {}

impl Hash for FFElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tower.0.p.hash(state);
        self.tower.0.modulus.hash(state);
        self.code.hash(state);
    }
}

impl fmt::Debug for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {}", self.coeffs(), self.tower)
    }
}

impl fmt::Display for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        if c.len() == 1 {
            return write!(f, "{}", c[0]);
        }
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| match (i, v) {
                (0, v) => v.to_string(),
                (1, 1) => "x".to_string(),
                (1, v) => format!("{v}x"),
                (i, 1) => format!("x^{i}"),
                (i, v) => format!("{v}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Serialize for FFElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

// Operator sugar. Mixing towers here is a programming error and panics; use
// the `try_*` methods where operands come from different sources.
macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&FFElement> for &FFElement {
            type Output = FFElement;
            fn $method(self, rhs: &FFElement) -> FFElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<FFElement> for FFElement {
            type Output = FFElement;
            fn $method(self, rhs: FFElement) -> FFElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &FFElement {
    type Output = FFElement;
    fn neg(self) -> FFElement {
        self.tower.wrap(self.tower.neg_raw(self.code))
    }
}

impl Neg for FFElement {
    type Output = FFElement;
    fn neg(self) -> FFElement {
        -&self
    }
}

/// Multiplicative order of p modulo l (l prime, p not divisible by l).
fn order_mod(p: u64, l: u64) -> u64 {
    let mut acc = p % l;
    let mut e = 1;
    while acc != 1 {
        acc = acc * (p % l) % l;
        e += 1;
    }
    e
}

/// A primitive l-th root of unity in F_{p^e}, e = ord(p mod l).
///
/// Returns `g^((q-1)/l)` for the tower's primitive element g, so the choice is
/// deterministic per tower.
pub fn primitive_lth_root(l: u64, tower: &FieldTower) -> Result<FFElement> {
    let p = tower.p();
    if l == 2 || !is_prime(l) || l == p {
        return Err(FieldError::BadRootOrder { l, p });
    }
    let e = order_mod(p, l) as u32;
    if tower.degree() != e {
        return Err(FieldError::WrongDegree {
            got: tower.degree(),
            expected: e,
        });
    }
    let zeta = tower.generator().pow((tower.order() - 1) / l);
    debug_assert_eq!(zeta.degree_over_prime_field(), e);
    Ok(zeta)
}

/// Solve λ·λ^q = ν in F_{q^2} for ν ∈ F_q^x.
///
/// `nu` may live in `big` itself (then it must be fixed by Frobenius^(k/2)) or
/// in any tower of degree k/2 over the same prime, which is embedded first.
pub fn solve_norm_equation(nu: &FFElement, big: &FieldTower) -> Result<FFElement> {
    let k = big.degree();
    if k % 2 != 0 {
        return Err(FieldError::NotDivisor { d: 2, k });
    }
    let half = k / 2;
    let nu_big = if nu.tower().same_field(big) {
        if !nu.in_subfield(half) {
            return Err(FieldError::NotInSubfield);
        }
        nu.clone()
    } else {
        SubfieldEmbedding::new(nu.tower(), big)?.embed(nu)?
    };
    if nu_big.is_zero() {
        return Err(FieldError::Zero);
    }
    // F_q^x = <g^(q+1)> inside F_{q^2}^x, so log ν is a multiple of q+1.
    let q = crate::arith::checked_pow(big.p(), half).expect("field order fits in u64");
    let l = big.log_raw(nu_big.code());
    debug_assert_eq!(l % (q + 1), 0);
    Ok(big.wrap(big.exp_raw(l / (q + 1))))
}

/// The embedding F_{p^d} -> F_{p^k} sending the subfield's defining root to
/// the first root of its modulus inside the big field.
#[derive(Clone)]
pub struct SubfieldEmbedding {
    small: FieldTower,
    big: FieldTower,
    images: Vec<u32>,
    preimages: HashMap<u32, u32>,
}

impl SubfieldEmbedding {
    pub fn new(small: &FieldTower, big: &FieldTower) -> Result<Self> {
        if small.p() != big.p() {
            return Err(FieldError::TowerMismatch {
                left: small.to_string(),
                right: big.to_string(),
            });
        }
        let (d, k) = (small.degree(), big.degree());
        if k % d != 0 {
            return Err(FieldError::NotDivisor { d, k });
        }
        let m = small.modulus();
        let root = (0..big.0.order)
            .find(|&a| {
                // Horner evaluation of the small modulus at a.
                let v = m.iter().rev().fold(0u32, |acc, &c| {
                    big.add_raw(big.mul_raw(acc, a), c as u32)
                });
                v == 0
            })
            .expect("an irreducible of degree d | k splits in F_{p^k}");
        let mut images = Vec::with_capacity(small.order() as usize);
        let mut preimages = HashMap::with_capacity(small.order() as usize);
        for code in 0..small.0.order {
            let img = small
                .coeffs_raw(code)
                .iter()
                .rev()
                .fold(0u32, |acc, &c| big.add_raw(big.mul_raw(acc, root), c as u32));
            images.push(img);
            preimages.insert(img, code);
        }
        Ok(SubfieldEmbedding {
            small: small.clone(),
            big: big.clone(),
            images,
            preimages,
        })
    }

    pub fn embed(&self, x: &FFElement) -> Result<FFElement> {
        self.small.check_same(x.tower())?;
        Ok(self.big.wrap(self.images[x.code() as usize]))
    }

    /// Inverse of [`SubfieldEmbedding::embed`] on its image.
    pub fn restrict(&self, x: &FFElement) -> Result<FFElement> {
        self.big.check_same(x.tower())?;
        self.preimages
            .get(&x.code())
            .map(|&c| self.small.wrap(c))
            .ok_or(FieldError::NotInSubfield)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute-force irreducibility: no monic factor of degree 1..=deg/2.
    fn irreducible_by_trial_division(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        for d in 1..=n / 2 {
            for code in 0..p.pow(d as u32) {
                let mut g = digits(code, p, d);
                g.push(1);
                if poly::rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn irreducible_degree_one_is_x() {
        assert_eq!(find_irreducible(2, 1).unwrap(), vec![0, 1]);
    }

    #[test]
    fn irreducible_quadratic_over_f2() {
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn irreducible_cubic_over_f7() {
        let f = find_irreducible(7, 3).unwrap();
        assert_eq!(f.len(), 4);
        assert!((0..7).all(|x| poly::eval(&f, x, 7) != 0));
        // gcd(x^343 - x, f) = f
        let x343 = poly::frobenius_power(&[0, 1], 3, &f, 7);
        let diff = poly::sub(&x343, &[0, 1], 7);
        assert!(diff.is_empty(), "x^343 = x mod f");
        assert!(irreducible_by_trial_division(&f, 7));
    }

    #[test]
    fn irreducible_search_is_lexicographically_first() {
        for (p, k) in [(2, 3), (3, 2), (3, 3), (5, 2), (2, 4)] {
            let f = find_irreducible(p, k).unwrap();
            assert!(irreducible_by_trial_division(&f, p));
            let first = (0..p.pow(k))
                .map(|c| {
                    let mut g = digits(c, p, k as usize);
                    g.push(1);
                    g
                })
                .find(|g| irreducible_by_trial_division(g, p))
                .unwrap();
            assert_eq!(f, first, "p={p} k={k}");
        }
    }

    #[test]
    fn rejects_non_prime() {
        assert_eq!(find_irreducible(6, 2), Err(FieldError::NotPrime(6)));
        assert!(FieldTower::new(9, 1).is_err());
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert_eq!(
            FieldTower::with_modulus(2, &[1, 0, 1]).unwrap_err(),
            FieldError::BadModulus
        );
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let t = FieldTower::new(7, 3).unwrap();
        for n in 0..7 {
            let x = t.from_int(n);
            for j in 0..4 {
                assert_eq!(x.frobenius(j), x);
            }
        }
    }

    #[test]
    fn frobenius_in_f4_squares() {
        let t = FieldTower::new(2, 2).unwrap();
        let w = t.element(&[0, 1]).unwrap();
        assert_eq!(w.frobenius(1), &w * &w);
        assert_eq!(w.frobenius(1), &w + &t.one());
    }

    #[test]
    fn frobenius_orbit_closes() {
        let t = FieldTower::new(3, 4).unwrap();
        for x in t.elements() {
            assert_eq!(x.frobenius(1).frobenius(3), x);
        }
    }

    #[test]
    fn mult_order_examples() {
        let f4 = FieldTower::new(2, 2).unwrap();
        assert_eq!(f4.one().mult_order().unwrap(), 1);
        assert_eq!(f4.element(&[0, 1]).unwrap().mult_order().unwrap(), 3);
        assert_eq!(f4.zero().mult_order(), Err(FieldError::Zero));

        let f49 = FieldTower::new(7, 2).unwrap();
        let brute = |x: &FFElement| (1..=48u64).find(|&m| x.pow(m).is_one()).unwrap();
        let g = f49.generator();
        assert_eq!(brute(&g), 48);
        assert_eq!(g.mult_order().unwrap(), 48);
        for x in f49.elements().skip(1) {
            assert_eq!(x.mult_order().unwrap(), brute(&x));
        }
    }

    #[test]
    fn lth_root_in_f4() {
        let t = FieldTower::new(2, 2).unwrap();
        let w = primitive_lth_root(3, &t).unwrap();
        assert!((&(&w * &w) + &w + t.one()).is_zero());
    }

    #[test]
    fn lth_root_in_f7() {
        let t = FieldTower::new(7, 1).unwrap();
        let w = primitive_lth_root(3, &t).unwrap();
        // roots of x^2 + x + 1 mod 7
        let roots: Vec<u64> = (0..7).filter(|&x| (x * x + x + 1) % 7 == 0).collect();
        assert_eq!(roots, vec![2, 4]);
        assert!(roots.contains(&w.coeffs()[0]));
    }

    #[test]
    fn lth_root_in_f361() {
        let t = FieldTower::new(19, 2).unwrap();
        let z = primitive_lth_root(5, &t).unwrap();
        assert!(z.pow(5).is_one() && !z.is_one());
        // Φ_5 splits into quadratics mod 19: ζ is not in F_19.
        assert_eq!(z.degree_over_prime_field(), 2);
    }

    #[test]
    fn lth_root_rejects_bad_input() {
        let t = FieldTower::new(3, 1).unwrap();
        assert!(matches!(primitive_lth_root(3, &t), Err(FieldError::BadRootOrder { .. })));
        let f7 = FieldTower::new(7, 2).unwrap();
        assert_eq!(
            primitive_lth_root(3, &f7).unwrap_err(),
            FieldError::WrongDegree { got: 2, expected: 1 }
        );
    }

    #[test]
    fn norm_equation_examples() {
        let f4 = FieldTower::new(2, 2).unwrap();
        let one = FieldTower::new(2, 1).unwrap().one();
        let lam = solve_norm_equation(&one, &f4).unwrap();
        assert!((&lam * &lam.frobenius(1)).is_one());
        // every unit of F_4 has λ^3 = 1
        for x in f4.elements().skip(1) {
            assert!(x.pow(3).is_one());
        }

        let f3 = FieldTower::new(3, 1).unwrap();
        let f9 = FieldTower::new(3, 2).unwrap();
        let two = f3.from_int(2);
        let lam = solve_norm_equation(&two, &f9).unwrap();
        let emb = SubfieldEmbedding::new(&f3, &f9).unwrap();
        assert_eq!(lam.pow(4), emb.embed(&two).unwrap());
        let brute: Vec<_> = f9.elements().filter(|x| x.pow(4) == f9.from_int(2)).collect();
        assert!(brute.contains(&lam));

        assert_eq!(solve_norm_equation(&f3.zero(), &f9), Err(FieldError::Zero));
    }

    #[test]
    fn norm_to_subfield_examples() {
        let f4 = FieldTower::new(2, 2).unwrap();
        for x in f4.elements().skip(1) {
            assert!(x.norm_to_subfield(1).unwrap().is_one());
            assert_eq!(x.norm_to_subfield(2).unwrap(), x);
        }
        let f49 = FieldTower::new(7, 2).unwrap();
        for x in f49.elements() {
            let n = x.norm_to_subfield(1).unwrap();
            assert_eq!(n, x.pow(8));
            assert_eq!(n.pow(7), n);
        }
        assert_eq!(
            f49.one().norm_to_subfield(3),
            Err(FieldError::NotDivisor { d: 3, k: 2 })
        );
    }

    #[test]
    fn cross_tower_arithmetic_is_an_error() {
        let a = FieldTower::new(3, 2).unwrap().one();
        let b = FieldTower::new(3, 1).unwrap().one();
        assert!(matches!(a.try_add(&b), Err(FieldError::TowerMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(FieldError::TowerMismatch { .. })));
    }

    #[test]
    fn towers_with_equal_modulus_are_the_same_field() {
        let a = FieldTower::new(5, 2).unwrap();
        let b = FieldTower::new(5, 2).unwrap();
        assert!(a.generator().try_add(&b.one()).is_ok());
    }

    #[test]
    fn subfield_embedding_is_a_homomorphism() {
        let small = FieldTower::new(2, 2).unwrap();
        let big = FieldTower::new(2, 4).unwrap();
        let e = SubfieldEmbedding::new(&small, &big).unwrap();
        for x in small.elements() {
            for y in small.elements() {
                assert_eq!(e.embed(&(&x * &y)).unwrap(), &e.embed(&x).unwrap() * &e.embed(&y).unwrap());
                assert_eq!(e.embed(&(&x + &y)).unwrap(), &e.embed(&x).unwrap() + &e.embed(&y).unwrap());
            }
            let img = e.embed(&x).unwrap();
            assert!(img.in_subfield(2));
            assert_eq!(e.restrict(&img).unwrap(), x);
        }
    }

    #[test]
    fn too_large_field_is_rejected() {
        assert!(matches!(FieldTower::new(2, 21), Err(FieldError::TooLarge { .. })));
    }

    fn tower_strategy() -> impl Strategy<Value = FieldTower> {
        prop_oneof![
            Just((2u64, 1u32)),
            Just((2, 5)),
            Just((3, 3)),
            Just((5, 2)),
            Just((7, 3)),
            Just((13, 2)),
            Just((2, 10)),
            Just((31, 1)),
        ]
        .prop_map(|(p, k)| FieldTower::new(p, k).unwrap())
    }

    fn with_elements() -> impl Strategy<Value = (FieldTower, u32, u32, u32)> {
        tower_strategy().prop_flat_map(|t| {
            let q = t.order() as u32;
            (Just(t), 0..q, 0..q, 0..q)
        })
    }

    proptest! {
        #[test]
        fn field_axioms((t, a, b, c) in with_elements()) {
            let (x, y, z) = (t.wrap(a), t.wrap(b), t.wrap(c));
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert!((&x + &(-&x)).is_zero());
            prop_assert_eq!(&(&x - &y) + &y, x.clone());
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn frobenius_is_a_ring_map((t, a, b, _c) in with_elements()) {
            let (x, y) = (t.wrap(a), t.wrap(b));
            prop_assert_eq!((&x + &y).frobenius(1), &x.frobenius(1) + &y.frobenius(1));
            prop_assert_eq!((&x * &y).frobenius(1), &x.frobenius(1) * &y.frobenius(1));
            prop_assert_eq!(x.frobenius(1), x.pow(t.p()));
        }

        #[test]
        fn norm_equation_always_solves((p, k) in prop_oneof![Just((2u64, 2u32)), Just((3, 2)), Just((5, 4)), Just((7, 2)), Just((2, 6))], seed in any::<u32>()) {
            let big = FieldTower::new(p, k).unwrap();
            let half = k / 2;
            let units: Vec<FFElement> = big.elements().filter(|x| !x.is_zero() && x.in_subfield(half)).collect();
            let nu = &units[seed as usize % units.len()];
            let lam = solve_norm_equation(nu, &big).unwrap();
            prop_assert_eq!(&lam * &lam.frobenius(half), nu.clone());
        }
    }
}
