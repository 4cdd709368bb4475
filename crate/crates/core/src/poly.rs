//! Dense polynomials over a prime field, coefficients stored constant term first.
//!
//! Only what modulus search and irreducibility testing need.

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(f: &mut Poly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

/// Degree, with the zero polynomial reported as `None`.
pub(crate) fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse.
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

pub(crate) fn sub(f: &[u64], g: &[u64], p: u64) -> Poly {
    let n = f.len().max(g.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            (a + p - b) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(f: &[u64], g: &[u64], p: u64) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `f` modulo a nonzero `g`.
pub(crate) fn rem(f: &[u64], g: &[u64], p: u64) -> Poly {
    let dg = degree(g).expect("division by zero polynomial");
    let lead_inv = inv_mod(g[dg], p);
    let mut r: Poly = f.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = r[dr] * lead_inv % p;
        let shift = dr - dg;
        for (i, &b) in g.iter().enumerate().take(dg + 1) {
            r[i + shift] = (r[i + shift] + p - c * b % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(f: &[u64], g: &[u64], m: &[u64], p: u64) -> Poly {
    rem(&mul(f, g, p), m, p)
}

/// Monic gcd.
pub(crate) fn gcd(f: &[u64], g: &[u64], p: u64) -> Poly {
    let mut a: Poly = f.to_vec();
    let mut b: Poly = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(d) = degree(&a) {
        let inv = inv_mod(a[d], p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

#[cfg(test)]
/// `base^(p^times)` modulo `m`, by repeated p-th powering.
pub(crate) fn frobenius_power(base: &[u64], times: u32, m: &[u64], p: u64) -> Poly {
    let mut acc = rem(base, m, p);
    for _ in 0..times {
        acc = pow_poly_mod(&acc, p, m, p);
    }
    acc
}

pub(crate) fn pow_poly_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

/// Ben-Or test: a degree-k polynomial is irreducible iff it shares no factor
/// with `x^(p^i) - x` for `1 <= i <= k/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(k) = degree(f) else {
        return false;
    };
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut xp = rem(&x, f, p);
    for _ in 1..=k / 2 {
        xp = pow_poly_mod(&xp, p, f, p);
        let diff = sub(&xp, &x, p);
        let g = gcd(f, &diff, p);
        if degree(&g).unwrap_or(0) > 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
pub(crate) fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}
