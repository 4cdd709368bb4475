//! Combinatorial invariants of cyclic degree-l covers of the line.
//!
//! A cover is described by its branch exponents `y^l = prod (x - a_i)^{k_i}`;
//! branch points are indices, never coordinates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, ArithError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("branch point {index} not actually ramified (exponent {exponent} = 0 mod {l})")]
    Unramified { index: usize, exponent: u64, l: u64 },
    #[error("need at least 2 branch points, got {0}")]
    TooFewBranchPoints(u64),
    #[error("orbits must be disjoint (seed {0} repeats an earlier coset)")]
    OverlappingOrbits(u64),
    #[error("seed {0} is not a unit mod l")]
    NotAUnit(u64),
}

pub type Result<T> = std::result::Result<T, CoverError>;

/// Genus of a cyclic cover of prime degree l, totally ramified over R points:
/// `2g = (l-1)(R-2)`.
pub fn genus(l: u64, branch_count: u64) -> Result<u64> {
    if l == 2 || !arith::is_prime(l) {
        return Err(ArithError::NotOddPrime(l).into());
    }
    if branch_count < 2 {
        return Err(CoverError::TooFewBranchPoints(branch_count));
    }
    Ok((l - 1) * (branch_count - 2) / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSpec {
    pub l: u64,
    /// Exponents at the finite branch points, as residues mod l.
    pub exponents: Vec<u64>,
    /// Auxiliary prime for the dimension count.
    pub p: u64,
}

impl CoverSpec {
    pub fn new(l: u64, exponents: Vec<u64>, p: u64) -> Self {
        CoverSpec { l, exponents, p }
    }

    /// Exponent at infinity, `-sum k_i mod l`.
    pub fn infinity_exponent(&self) -> u64 {
        let s: u64 = self.exponents.iter().map(|k| k % self.l).sum();
        (self.l - s % self.l) % self.l
    }

    /// Total branch count, infinity included when it ramifies.
    pub fn branch_count(&self) -> u64 {
        self.exponents.len() as u64 + u64::from(self.infinity_exponent() != 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub l: u64,
    pub p: u64,
    pub finite_exponents: Vec<u64>,
    pub infinity_exponent: u64,
    pub branch_count: u64,
    pub genus: u64,
    /// dim over F_q of H^1 reduced at a prime above p.
    pub dimension: u64,
    /// q = p^field_exponent.
    pub field_exponent: u64,
}

pub fn validate_cover(spec: &CoverSpec) -> Result<CoverReport> {
    let l = spec.l;
    let e = arith::ord_mod(spec.p, l)?;
    for (index, &k) in spec.exponents.iter().enumerate() {
        if k % l == 0 {
            return Err(CoverError::Unramified { index, exponent: k, l });
        }
    }
    let branch_count = spec.branch_count();
    let g = genus(l, branch_count)?;
    Ok(CoverReport {
        l,
        p: spec.p,
        finite_exponents: spec.exponents.iter().map(|k| k % l).collect(),
        infinity_exponent: spec.infinity_exponent(),
        branch_count,
        genus: g,
        dimension: branch_count - 2,
        field_exponent: e,
    })
}

/// Returns `(dimension, e)`: H^1 mod a prime above p is an (R-2)-dimensional
/// space over F_{p^e}, e = ord(p mod l).
pub fn fq_dimension(spec: &CoverSpec) -> Result<(u64, u64)> {
    let r = validate_cover(spec)?;
    Ok((r.dimension, r.field_exponent))
}

/// Branch points arranged in full orbits of Gal(Q(zeta_l)/E), E of index mu,
/// with the descent character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitConfig {
    pub l: u64,
    pub mu: u64,
    pub subgroup: Vec<u64>,
    /// Each orbit as the list of units indexing its points.
    pub orbits: Vec<Vec<u64>>,
    /// Character value u^{-1} mod l at the point indexed by u, orbit by orbit.
    pub character: Vec<Vec<u64>>,
}

impl OrbitConfig {
    pub fn branch_count(&self) -> u64 {
        self.orbits.iter().map(|o| o.len() as u64).sum()
    }

    pub fn character_sum(&self) -> u64 {
        self.character.iter().flatten().sum::<u64>() % self.l
    }

    /// The cover with these branch exponents; all finite, so infinity is
    /// unramified when the character sums to 0.
    pub fn cover_spec(&self, p: u64) -> CoverSpec {
        CoverSpec::new(self.l, self.character.iter().flatten().copied().collect(), p)
    }
}

fn inverse_mod(a: u64, l: u64) -> u64 {
    crate::poly::pow_mod(a, l - 2, l)
}

/// The order-mu subgroup of (Z/l)^x, sorted.
pub fn unit_subgroup(l: u64, mu: u64) -> Result<Vec<u64>> {
    if l == 2 || !arith::is_prime(l) {
        return Err(ArithError::NotOddPrime(l).into());
    }
    if mu == 0 || (l - 1) % mu != 0 {
        return Err(ArithError::NotDivisor { mu, l }.into());
    }
    let mut h: Vec<u64> = (1..l).filter(|&x| crate::poly::pow_mod(x, mu, l) == 1).collect();
    h.sort_unstable();
    Ok(h)
}

pub fn orbit_character(l: u64, mu: u64, seeds: &[u64]) -> Result<OrbitConfig> {
    let subgroup = unit_subgroup(l, mu)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut orbits = Vec::new();
    let mut character = Vec::new();
    for &seed in seeds {
        if seed % l == 0 {
            return Err(CoverError::NotAUnit(seed));
        }
        let orbit: Vec<u64> = subgroup.iter().map(|h| seed % l * h % l).collect();
        if orbit.iter().any(|u| seen.contains(u)) {
            return Err(CoverError::OverlappingOrbits(seed));
        }
        seen.extend(orbit.iter().copied());
        character.push(orbit.iter().map(|&u| inverse_mod(u, l)).collect());
        orbits.push(orbit);
    }
    let config = OrbitConfig {
        l,
        mu,
        subgroup,
        orbits,
        character,
    };
    debug_assert!(config.orbits.iter().all(|o| o.len() as u64 == mu));
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Euler characteristic: 2 - 2g = l (2 - R) + R for total ramification.
    fn genus_by_euler(l: i64, r: i64) -> i64 {
        let chi = l * (2 - r) + r;
        (2 - chi) / 2
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(3, 3), Ok(1));
        assert_eq!(genus(11, 2), Ok(0));
        assert_eq!(genus(7, 6), Ok(12));
        assert_eq!(genus_by_euler(7, 6), 12);
        assert_eq!(genus(3, 1), Err(CoverError::TooFewBranchPoints(1)));
    }

    #[test]
    fn dimension_examples() {
        let s = CoverSpec::new(3, vec![1, 1, 1, 1], 2);
        assert_eq!(s.infinity_exponent(), 2);
        assert_eq!(s.branch_count(), 5);
        assert_eq!(fq_dimension(&s), Ok((3, 2)));

        let s = CoverSpec::new(3, vec![1, 1, 1], 7);
        assert_eq!(s.infinity_exponent(), 0);
        assert_eq!(fq_dimension(&s), Ok((1, 1)));

        let s = CoverSpec::new(5, vec![1, 1, 1], 19);
        assert_eq!(s.branch_count(), 4);
        assert_eq!(fq_dimension(&s), Ok((2, 2)));
    }

    #[test]
    fn validate_examples() {
        let r = validate_cover(&CoverSpec::new(3, vec![1, 1, 1, 1], 2)).unwrap();
        assert_eq!(r.branch_count, 5);
        let r = validate_cover(&CoverSpec::new(3, vec![1, 2], 2)).unwrap();
        assert_eq!((r.branch_count, r.genus), (2, 0));
        assert_eq!(
            validate_cover(&CoverSpec::new(3, vec![3], 2)),
            Err(CoverError::Unramified { index: 0, exponent: 3, l: 3 })
        );
    }

    #[test]
    fn orbit_examples() {
        let c = orbit_character(5, 4, &[1]).unwrap();
        assert_eq!(c.orbits[0], vec![1, 2, 3, 4]);
        assert_eq!(c.character[0], vec![1, 3, 2, 4]);
        assert_eq!(c.character_sum(), 0);

        let c = orbit_character(7, 2, &[1]).unwrap();
        assert_eq!(c.subgroup, vec![1, 6]);
        assert_eq!(c.character[0], vec![1, 6]);

        let c = orbit_character(7, 3, &[1]).unwrap();
        assert_eq!(c.subgroup, vec![1, 2, 4]);
        assert_eq!(c.character[0], vec![1, 4, 2]);
        assert_eq!(c.character_sum(), 0);

        assert_eq!(orbit_character(7, 3, &[1, 2]), Err(CoverError::OverlappingOrbits(2)));
    }

    #[test]
    fn single_orbit_character_sums_vanish() {
        for l in arith::primes_up_to(31).into_iter().filter(|&l| l > 2) {
            for mu in (2..l).filter(|m| (l - 1) % m == 0) {
                let h = unit_subgroup(l, mu).unwrap();
                let cosets: Vec<u64> = (1..l)
                    .filter(|&a| {
                        let min = h.iter().map(|x| a * x % l).min().unwrap();
                        min == a
                    })
                    .collect();
                for a in cosets {
                    let c = orbit_character(l, mu, &[a]).unwrap();
                    assert_eq!(c.character_sum(), 0, "l={l} mu={mu} seed={a}");
                }
            }
        }
    }

    #[test]
    fn orbit_configs_match_main_congruence() {
        // d orbits of size mu give R = d mu branch points with infinity unramified,
        // so the dimension d mu - 2 is -2 mod mu.
        for (l, mu) in [(5, 2), (5, 4), (7, 2), (7, 3), (7, 6), (13, 4)] {
            let h = unit_subgroup(l, mu).unwrap();
            let reps: Vec<u64> = (1..l)
                .filter(|&a| h.iter().map(|x| a * x % l).min().unwrap() == a)
                .collect();
            for d in 1..=reps.len() {
                let c = orbit_character(l, mu, &reps[..d]).unwrap();
                let spec = c.cover_spec(2);
                assert_eq!(spec.infinity_exponent(), 0);
                let (dim, _) = fq_dimension(&spec).unwrap();
                assert_eq!(dim, d as u64 * mu - 2);
                assert_eq!((dim + 2) % mu, 0);
            }
        }
    }

    proptest! {
        #[test]
        fn genus_agrees_with_euler(li in 0usize..6, r in 2u64..40) {
            let l = [3u64, 5, 7, 11, 13, 17][li];
            let g = genus(l, r).unwrap();
            prop_assert_eq!(g as i64, genus_by_euler(l as i64, r as i64));
            prop_assert_eq!(2 * g, (l - 1) * (r - 2));
        }

        #[test]
        fn dimension_is_permutation_invariant(
            exps in proptest::collection::vec(1u64..7, 2..9),
            shift in 0usize..8,
        ) {
            let mut rotated = exps.clone();
            rotated.rotate_left(shift % exps.len());
            rotated.reverse();
            let a = fq_dimension(&CoverSpec::new(7, exps, 2));
            let b = fq_dimension(&CoverSpec::new(7, rotated, 2));
            prop_assert_eq!(a, b);
        }
    }
}
