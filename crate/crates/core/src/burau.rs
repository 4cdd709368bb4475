//! Reduced Burau representation of the braid group specialized at a root of
//! unity over a finite field.
//!
//! Convention (acting on column vectors), for `1 < i < r-1`:
//!
//! ```text
//! σ_1     ↦ [[-t, 1], [0, 1]]            ⊕ I_{r-3}
//! σ_i     ↦ I_{i-2} ⊕ [[1, 0, 0], [t, -t, 1], [0, 0, 1]] ⊕ I_{r-i-2}
//! σ_{r-1} ↦ I_{r-3} ⊕ [[1, 0], [t, -t]]
//! ```
//!
//! so `det ρ(σ_i) = -t`. The braid relations, determinants and invariant form
//! are checked, not assumed.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, ArithError};
use crate::ffield::{primitive_lth_root, FFElement, FieldError, FieldTower};
use crate::matrix::{nullspace, MatrixError, MatrixFq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BurauError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("need at least 3 strands, got {0}")]
    TooFewStrands(usize),
    #[error("t must have odd prime multiplicative order, found {0}")]
    BadParameter(u64),
    #[error("degenerate specialization: {l} divides {r}; use quotient_rep")]
    Degenerate { l: u64, r: usize },
    #[error("{l} does not divide {r}; no quotient needed")]
    NotDegenerate { l: u64, r: usize },
    #[error("common invariant line has dimension {0}, expected 1")]
    InvariantLine(usize),
    #[error("representation check failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, BurauError>;

/// A braid word: `i` stands for σ_i, `-i` for σ_i^{-1} (1-based).
pub type BraidWord = Vec<i32>;

/// Standard generators of the pure braid group,
/// `A_ij = (σ_{j-1} ⋯ σ_{i+1}) σ_i² (σ_{j-1} ⋯ σ_{i+1})^{-1}`.
pub fn pure_braid_words(r: usize) -> BTreeMap<(usize, usize), BraidWord> {
    let mut out = BTreeMap::new();
    for i in 1..r {
        for j in i + 1..=r {
            let prefix: Vec<i32> = (i + 1..j).rev().map(|k| k as i32).collect();
            let mut w = prefix.clone();
            w.extend([i as i32, i as i32]);
            w.extend(prefix.iter().rev().map(|&k| -k));
            out.insert((i, j), w);
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct BurauRep {
    /// Number of strands.
    pub r: usize,
    pub l: u64,
    pub p: u64,
    /// The matrices live over F_{p^e}.
    pub e: u32,
    pub t: FFElement,
    /// `gen_images[i - 1] = ρ(σ_i)`.
    pub gen_images: Vec<MatrixFq>,
    pub pure_gen_images: BTreeMap<(usize, usize), MatrixFq>,
    /// True when this is the (r-2)-dimensional quotient used for l | r.
    pub quotient: bool,
}

fn raw_burau(r: usize, t: &FFElement) -> Vec<MatrixFq> {
    let tower = t.tower();
    let n = r - 1;
    let neg_t = -t;
    (1..r)
        .map(|i| {
            let mut m = MatrixFq::identity(tower, n);
            let k = i - 1; // row/col of the -t entry
            m.set(k, k, &neg_t).unwrap();
            if k > 0 {
                m.set(k, k - 1, t).unwrap();
            }
            if k + 1 < n {
                m.set(k, k + 1, &tower.one()).unwrap();
            }
            m
        })
        .collect()
}

fn root_order(t: &FFElement) -> Result<u64> {
    let l = t.mult_order()?;
    if l == 2 || !arith::is_prime(l) {
        return Err(BurauError::BadParameter(l));
    }
    Ok(l)
}

impl BurauRep {
    pub fn dim(&self) -> usize {
        self.gen_images.first().map_or(0, MatrixFq::dim)
    }

    pub fn tower(&self) -> &FieldTower {
        self.t.tower()
    }

    /// ρ(w), multiplying left to right.
    pub fn evaluate(&self, word: &[i32]) -> Result<MatrixFq> {
        let mut acc = MatrixFq::identity(self.tower(), self.dim());
        for &letter in word {
            let idx = letter.unsigned_abs() as usize;
            if idx == 0 || idx > self.gen_images.len() {
                return Err(BurauError::Invariant(format!("letter {letter} out of range")));
            }
            let g = &self.gen_images[idx - 1];
            let m = if letter > 0 { g.clone() } else { g.inverse()? };
            acc = acc.mul_unchecked(&m);
        }
        Ok(acc)
    }

    pub fn pure_images(&self) -> Vec<MatrixFq> {
        self.pure_gen_images.values().cloned().collect()
    }

    /// Braid relations, invertibility and determinant conditions.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(BurauError::Invariant(msg));
        let g = &self.gen_images;
        for (i, a) in g.iter().enumerate() {
            if a.det().is_zero() {
                return fail(format!("σ_{} is singular", i + 1));
            }
            let d = a.det();
            if d != -&self.t {
                return fail(format!("det σ_{} = {d}, expected -t", i + 1));
            }
        }
        for i in 0..g.len() {
            if i + 1 < g.len() {
                let lhs = g[i].mul_unchecked(&g[i + 1]).mul_unchecked(&g[i]);
                let rhs = g[i + 1].mul_unchecked(&g[i]).mul_unchecked(&g[i + 1]);
                if lhs != rhs {
                    return fail(format!("σ_{0}σ_{1}σ_{0} != σ_{1}σ_{0}σ_{1}", i + 1, i + 2));
                }
            }
            for j in i + 2..g.len() {
                if g[i].mul_unchecked(&g[j]) != g[j].mul_unchecked(&g[i]) {
                    return fail(format!("σ_{} and σ_{} do not commute", i + 1, j + 1));
                }
            }
        }
        for (&(i, j), m) in &self.pure_gen_images {
            if !m.det().pow(self.l).is_one() {
                return fail(format!("det A_{i}{j} is not an l-th root of unity"));
            }
        }
        Ok(())
    }
}

fn assemble(r: usize, l: u64, t: &FFElement, gen_images: Vec<MatrixFq>, quotient: bool) -> Result<BurauRep> {
    let mut rep = BurauRep {
        r,
        l,
        p: t.tower().p(),
        e: t.tower().degree(),
        t: t.clone(),
        gen_images,
        pure_gen_images: BTreeMap::new(),
        quotient,
    };
    for (key, word) in pure_braid_words(r) {
        let m = rep.evaluate(&word)?;
        rep.pure_gen_images.insert(key, m);
    }
    rep.check_invariants()?;
    Ok(rep)
}

/// The (r-1)-dimensional reduced Burau representation at `t`.
///
/// `t` must have odd prime order l with l ∤ r; otherwise the representation
/// is reducible and [`quotient_rep`] applies.
pub fn reduced_burau(r: usize, t: &FFElement) -> Result<BurauRep> {
    if r < 3 {
        return Err(BurauError::TooFewStrands(r));
    }
    let l = root_order(t)?;
    if r as u64 % l == 0 {
        return Err(BurauError::Degenerate { l, r });
    }
    assemble(r, l, t, raw_burau(r, t), false)
}

/// For l | r: the action on the quotient of the reduced Burau space by its
/// unique invariant line, of dimension r - 2.
pub fn quotient_rep(r: usize, t: &FFElement) -> Result<BurauRep> {
    if r < 3 {
        return Err(BurauError::TooFewStrands(r));
    }
    let l = root_order(t)?;
    if r as u64 % l != 0 {
        return Err(BurauError::NotDegenerate { l, r });
    }
    let tower = t.tower();
    let gens = raw_burau(r, t);
    let n = r - 1;

    // Common eigenvectors A w = λ w; σ_i are conjugate so λ is shared.
    let mut lines: Vec<Vec<u32>> = Vec::new();
    for lambda in tower.elements().skip(1) {
        let mut system = Vec::with_capacity(gens.len() * n * n);
        for g in &gens {
            for i in 0..n {
                for j in 0..n {
                    let mut v = g.raw()[i * n + j];
                    if i == j {
                        v = tower.sub_raw(v, lambda.code());
                    }
                    system.push(v);
                }
            }
        }
        lines.extend(nullspace(tower, gens.len() * n, n, &system));
    }
    if lines.len() != 1 {
        return Err(BurauError::InvariantLine(lines.len()));
    }
    let w = &lines[0];

    // Basis (w, e_j for j != pivot); quotient action is the lower-right block
    // of P^{-1} A P.
    let pivot = w.iter().position(|&x| x != 0).unwrap();
    let mut p_data = vec![0u32; n * n];
    for i in 0..n {
        p_data[i * n] = w[i];
    }
    for (col, j) in (0..n).filter(|&j| j != pivot).enumerate() {
        p_data[j * n + col + 1] = 1;
    }
    let p_mat = MatrixFq::from_raw(tower, n, p_data);
    let p_inv = p_mat.inverse()?;
    let quotient_gens = gens
        .iter()
        .map(|g| {
            let b = p_inv.mul_unchecked(g).mul_unchecked(&p_mat);
            let m = n - 1;
            let data = (1..n)
                .flat_map(|i| (1..n).map(move |j| (i, j)))
                .map(|(i, j)| b.raw()[i * n + j])
                .collect();
            MatrixFq::from_raw(tower, m, data)
        })
        .collect();
    assemble(r, l, t, quotient_gens, true)
}

/// The monodromy representation for the equal-exponent cover with `r` finite
/// branch points: Burau over F_{p^e}, e = ord(p mod l), at the tower's
/// primitive l-th root; quotient form when l | r.
pub fn cover_rep(l: u64, p: u64, r: usize) -> Result<BurauRep> {
    let e = arith::ord_mod(p, l)?;
    let tower = FieldTower::new(p, e as u32)?;
    let t = primitive_lth_root(l, &tower)?;
    if r as u64 % l == 0 {
        quotient_rep(r, &t)
    } else {
        reduced_burau(r, &t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4_omega() -> FFElement {
        let t = FieldTower::new(2, 2).unwrap();
        primitive_lth_root(3, &t).unwrap()
    }

    #[test]
    fn braid_relation_r3() {
        let rep = reduced_burau(4, &f4_omega()).unwrap();
        assert_eq!(rep.dim(), 3);
        let t = FieldTower::new(7, 1).unwrap();
        let z = primitive_lth_root(3, &t).unwrap();
        let rep = reduced_burau(5, &z).unwrap();
        let g = &rep.gen_images;
        assert_eq!(
            g[0].mul_unchecked(&g[1]).mul_unchecked(&g[0]),
            g[1].mul_unchecked(&g[0]).mul_unchecked(&g[1])
        );
        let t = FieldTower::new(11, 1).unwrap();
        let z = primitive_lth_root(5, &t).unwrap();
        let rep = reduced_burau(3, &z).unwrap();
        assert_eq!(rep.dim(), 2);
        let g = &rep.gen_images;
        assert_eq!(
            g[0].mul_unchecked(&g[1]).mul_unchecked(&g[0]),
            g[1].mul_unchecked(&g[0]).mul_unchecked(&g[1])
        );
    }

    #[test]
    fn far_commutation_r4_f4() {
        let rep = reduced_burau(4, &f4_omega()).unwrap();
        let g = &rep.gen_images;
        assert_eq!(g.len(), 3);
        assert_eq!(g[0].mul_unchecked(&g[2]), g[2].mul_unchecked(&g[0]));
    }

    #[test]
    fn determinant_is_minus_t() {
        let tower = FieldTower::new(7, 1).unwrap();
        let t = primitive_lth_root(3, &tower).unwrap();
        let rep = reduced_burau(4, &t).unwrap();
        for g in &rep.gen_images {
            // Expansion of the convention's matrix: the only non-identity
            // diagonal entry is -t and the matrix is triangular up to one
            // off-diagonal pair whose product is 0 on the same row/col.
            assert_eq!(g.det(), -&t);
        }
    }

    #[test]
    fn pure_words() {
        let w = pure_braid_words(2);
        assert_eq!(w.len(), 1);
        assert_eq!(w[&(1, 2)], vec![1, 1]);
        let w = pure_braid_words(3);
        assert_eq!(w[&(1, 3)], vec![2, 1, 1, -2]);
        let w = pure_braid_words(4);
        assert_eq!(w.len(), 6);
        assert!(w.values().all(|word| word.len() % 2 == 0));
        assert_eq!(w[&(1, 4)], vec![3, 2, 1, 1, -2, -3]);
    }

    /// Pure braid words induce the identity permutation of the strands.
    #[test]
    fn pure_words_are_pure() {
        for r in 2..8 {
            for word in pure_braid_words(r).values() {
                let mut perm: Vec<usize> = (0..r).collect();
                for &letter in word {
                    let i = letter.unsigned_abs() as usize;
                    perm.swap(i - 1, i);
                }
                assert_eq!(perm, (0..r).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn pure_determinants_generate_mu_l() {
        for (l, p, r) in [(3u64, 2u64, 4usize), (3, 7, 5), (5, 11, 4), (7, 2, 5)] {
            let rep = cover_rep(l, p, r).unwrap();
            let t2 = rep.t.pow(2);
            let mut dets: Vec<FFElement> = Vec::new();
            for m in rep.pure_gen_images.values() {
                let d = m.det();
                assert!(d.pow(l).is_one());
                dets.push(d);
            }
            assert!(dets.contains(&t2));
            // t^2 generates mu_l because l is odd
            assert_eq!(t2.mult_order().unwrap(), l);
        }
    }

    #[test]
    fn degenerate_specialization_is_rejected() {
        assert_eq!(
            reduced_burau(3, &f4_omega()).unwrap_err(),
            BurauError::Degenerate { l: 3, r: 3 }
        );
        assert!(matches!(quotient_rep(4, &f4_omega()), Err(BurauError::NotDegenerate { .. })));
    }

    #[test]
    fn quotient_l3_r3_is_scalar_mu3() {
        let rep = quotient_rep(3, &f4_omega()).unwrap();
        assert_eq!(rep.dim(), 1);
        for m in rep.pure_gen_images.values() {
            let c = m.as_scalar().unwrap();
            assert!(c.pow(3).is_one());
        }
    }

    #[test]
    fn quotient_dimensions() {
        let f4 = FieldTower::new(2, 2).unwrap();
        let w = primitive_lth_root(3, &f4).unwrap();
        assert_eq!(quotient_rep(6, &w).unwrap().dim(), 4);
        let f16 = FieldTower::new(2, 4).unwrap();
        let z = primitive_lth_root(5, &f16).unwrap();
        assert_eq!(quotient_rep(5, &z).unwrap().dim(), 3);
        let f11 = FieldTower::new(11, 1).unwrap();
        let z = primitive_lth_root(5, &f11).unwrap();
        assert_eq!(quotient_rep(10, &z).unwrap().dim(), 8);
    }

    #[test]
    fn pure_images_match_words() {
        let rep = cover_rep(5, 11, 5).unwrap();
        for (key, word) in pure_braid_words(5) {
            assert_eq!(rep.evaluate(&word).unwrap(), rep.pure_gen_images[&key]);
        }
        // A_12 = σ_1^2
        let s1 = &rep.gen_images[0];
        assert_eq!(rep.pure_gen_images[&(1, 2)], s1.mul_unchecked(s1));
    }
}
