//! Orders of the finite classical groups, by product formula.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{GroupError, Result};
use crate::arith::is_prime;

/// Classical families. For the unitary ones `q` is the size of the fixed
/// field; matrices live over F_{q^2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupFamily {
    Gl,
    Sl,
    /// `{A in GL(m, q) : det A in mu_l}`
    SlL(u64),
    Gu,
    Su,
    /// `{A in GU(m, q) : det A in mu_l}`
    SlU(u64),
    Psl,
    Psu,
    Pgl,
    Pgu,
    Pu,
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupFamily::Gl => "GL",
            GroupFamily::Sl => "SL",
            GroupFamily::SlL(_) => "SlL",
            GroupFamily::Gu => "GU",
            GroupFamily::Su => "SU",
            GroupFamily::SlU(_) => "SlU",
            GroupFamily::Psl => "PSL",
            GroupFamily::Psu => "PSU",
            GroupFamily::Pgl => "PGL",
            GroupFamily::Pgu => "PGU",
            GroupFamily::Pu => "PU",
        };
        f.write_str(s)
    }
}

fn gl(m: u32, q: &BigUint) -> BigUint {
    let qm = q.pow(m);
    (0..m).map(|i| &qm - q.pow(i)).product()
}

fn gu(m: u32, q: &BigUint) -> BigUint {
    let mut acc = q.pow(m * (m - 1) / 2);
    for i in 1..=m {
        let qi = q.pow(i);
        acc *= if i % 2 == 0 { qi - 1u32 } else { qi + 1u32 };
    }
    acc
}

/// `|mu_l ∩ C_n|` for a cyclic group of order n: l if l | n, else 1.
fn mu_l_part(l: u64, n: &BigUint) -> BigUint {
    if (n % l).is_zero() {
        BigUint::from(l)
    } else {
        BigUint::one()
    }
}

pub fn group_order(family: GroupFamily, m: u32, q: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(GroupError::BadParameters(format!("degree must be positive, got {m}")));
    }
    if q < 2 || crate::arith::prime_factors(q).len() != 1 {
        return Err(GroupError::BadParameters(format!("{q} is not a prime power")));
    }
    if let GroupFamily::SlL(l) | GroupFamily::SlU(l) = family {
        if !is_prime(l) {
            return Err(GroupError::BadParameters(format!("l = {l} is not prime")));
        }
    }
    let qb = BigUint::from(q);
    let qm1 = &qb - 1u32;
    let qp1 = &qb + 1u32;
    let mb = BigUint::from(m);
    let out = match family {
        GroupFamily::Gl => gl(m, &qb),
        GroupFamily::Sl | GroupFamily::Pgl => gl(m, &qb) / &qm1,
        GroupFamily::SlL(l) => gl(m, &qb) / &qm1 * mu_l_part(l, &qm1),
        GroupFamily::Psl => gl(m, &qb) / &qm1 / mb.gcd(&qm1),
        GroupFamily::Gu => gu(m, &qb),
        GroupFamily::Su | GroupFamily::Pgu | GroupFamily::Pu => gu(m, &qb) / &qp1,
        GroupFamily::SlU(l) => gu(m, &qb) / &qp1 * mu_l_part(l, &qp1),
        GroupFamily::Psu => gu(m, &qb) / &qp1 / mb.gcd(&qp1),
    };
    Ok(out)
}
