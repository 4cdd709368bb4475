//! Group orders from generators: breadth-first closure for small groups,
//! Schreier–Sims on vectors for large ones.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GroupError, Result};
use crate::matrix::MatrixFq;

pub const DEFAULT_BFS_CAP: u64 = 2_000_000;

fn check_gens(gens: &[MatrixFq]) -> Result<()> {
    let first = gens.first().ok_or(GroupError::NoGenerators)?;
    for g in gens {
        first.tower().check_same(g.tower())?;
        if g.dim() != first.dim() {
            return Err(GroupError::BadParameters(format!(
                "generator dimensions {} and {} differ",
                first.dim(),
                g.dim()
            )));
        }
        if g.det().is_zero() {
            return Err(GroupError::BadParameters("singular generator".into()));
        }
    }
    Ok(())
}

/// Size of the group generated by `gens`, by closure from the identity.
/// Stops with [`GroupError::CapExceeded`] once more than `cap` elements are
/// found.
pub fn bfs_enumerate(gens: &[MatrixFq], cap: u64) -> Result<u64> {
    check_gens(gens)?;
    let id = MatrixFq::identity(gens[0].tower(), gens[0].dim());
    let mut seen: HashSet<Box<[u8]>> = HashSet::new();
    seen.insert(id.key());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = x.mul_unchecked(g);
                if seen.insert(y.key()) {
                    if seen.len() as u64 > cap {
                        return Err(GroupError::CapExceeded { partial: seen.len() as u64 });
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.len() as u64)
}

/// Bounds on the stabilizer chain.
#[derive(Debug, Clone, Copy)]
pub struct ChainLimits {
    pub max_orbit: usize,
    pub max_strong_gens: usize,
    pub seed: u64,
}

impl Default for ChainLimits {
    fn default() -> Self {
        ChainLimits {
            max_orbit: 4_000_000,
            max_strong_gens: 2_000,
            seed: 0x5eed,
        }
    }
}

struct Level {
    base: Vec<u32>,
    gens: Vec<MatrixFq>,
    /// point -> (u, u^{-1}) with base * u = point
    orbit: HashMap<Vec<u32>, (MatrixFq, MatrixFq)>,
}

struct Chain {
    identity: MatrixFq,
    levels: Vec<Level>,
    limits: ChainLimits,
    strong: usize,
}

impl Chain {
    fn rebuild_orbit(&mut self, i: usize) -> Result<()> {
        let level = &mut self.levels[i];
        let id = self.identity.clone();
        let mut orbit = HashMap::new();
        orbit.insert(level.base.clone(), (id.clone(), id));
        let mut queue = vec![level.base.clone()];
        while let Some(x) = queue.pop() {
            let u = orbit[&x].0.clone();
            for g in &level.gens {
                let y = g.apply_row(&x);
                if !orbit.contains_key(&y) {
                    let uy = u.mul_unchecked(g);
                    let inv = uy.inverse()?;
                    orbit.insert(y.clone(), (uy, inv));
                    if orbit.len() > self.limits.max_orbit {
                        return Err(GroupError::ChainIncomplete(format!(
                            "orbit at level {i} exceeds {} points",
                            self.limits.max_orbit
                        )));
                    }
                    queue.push(y);
                }
            }
        }
        level.orbit = orbit;
        Ok(())
    }

    /// Strip `g` through levels `from..`; returns the residue and the level
    /// where it stopped (`levels.len()` if it went all the way).
    fn sift(&self, mut g: MatrixFq, from: usize) -> (MatrixFq, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let y = g.apply_row(&level.base);
            match level.orbit.get(&y) {
                Some((_, inv)) => g = g.mul_unchecked(inv),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    /// Add a non-identity residue that fixes the first `depth` base points.
    fn add(&mut self, h: MatrixFq, depth: usize) -> Result<()> {
        self.strong += 1;
        if self.strong > self.limits.max_strong_gens {
            return Err(GroupError::ChainIncomplete(format!(
                "more than {} strong generators",
                self.limits.max_strong_gens
            )));
        }
        if depth == self.levels.len() {
            // New base point: the first standard basis vector h moves.
            let n = h.dim();
            let base = (0..n)
                .map(|k| {
                    let mut v = vec![0u32; n];
                    v[k] = 1;
                    v
                })
                .find(|v| h.apply_row(v) != *v)
                .expect("non-identity matrix moves a basis vector");
            self.levels.push(Level {
                base,
                gens: Vec::new(),
                orbit: HashMap::new(),
            });
        }
        for j in 0..=depth {
            self.levels[j].gens.push(h.clone());
        }
        for j in 0..=depth {
            self.rebuild_orbit(j)?;
        }
        Ok(())
    }

    fn sift_and_add(&mut self, g: MatrixFq, from: usize) -> Result<bool> {
        let (h, depth) = self.sift(g, from);
        if depth == self.levels.len() && h.is_identity() {
            return Ok(false);
        }
        self.add(h, depth)?;
        Ok(true)
    }

    /// Sims' test: every Schreier generator of every level sifts through the
    /// levels below it.
    fn verify(&mut self) -> Result<()> {
        'restart: loop {
            for i in (0..self.levels.len()).rev() {
                let points: Vec<Vec<u32>> = self.levels[i].orbit.keys().cloned().collect();
                let gens = self.levels[i].gens.clone();
                for x in &points {
                    let u = self.levels[i].orbit[x].0.clone();
                    for s in &gens {
                        let us = u.mul_unchecked(s);
                        let y = s.apply_row(x);
                        let inv = &self.levels[i].orbit[&y].1;
                        let schreier = us.mul_unchecked(inv);
                        if self.sift_and_add(schreier, i + 1)? {
                            continue 'restart;
                        }
                    }
                }
            }
            return Ok(());
        }
    }

    fn order(&self) -> BigUint {
        self.levels.iter().map(|l| BigUint::from(l.orbit.len())).product()
    }
}

/// Group order via a stabilizer chain on row vectors, using standard basis
/// vectors as base points (so the action is faithful).
///
/// A seeded random phase builds most of the chain; a deterministic Schreier
/// generator check then certifies it.
pub fn schreier_sims_order(gens: &[MatrixFq]) -> Result<BigUint> {
    schreier_sims_with(gens, ChainLimits::default())
}

pub fn schreier_sims_with(gens: &[MatrixFq], limits: ChainLimits) -> Result<BigUint> {
    check_gens(gens)?;
    let identity = MatrixFq::identity(gens[0].tower(), gens[0].dim());
    let mut chain = Chain {
        identity: identity.clone(),
        levels: Vec::new(),
        limits,
        strong: 0,
    };
    for g in gens {
        chain.sift_and_add(g.clone(), 0)?;
    }
    if chain.levels.is_empty() {
        return Ok(BigUint::from(1u32));
    }

    // Product replacement.
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    let mut slots: Vec<MatrixFq> = gens.iter().cycle().take(gens.len().max(10)).cloned().collect();
    let mut acc = identity;
    let step = |rng: &mut ChaCha8Rng, slots: &mut Vec<MatrixFq>, acc: &mut MatrixFq| {
        let n = slots.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        slots[i] = if rng.gen_bool(0.5) {
            slots[i].mul_unchecked(&slots[j])
        } else {
            slots[j].mul_unchecked(&slots[i])
        };
        *acc = acc.mul_unchecked(&slots[i]);
        acc.clone()
    };
    for _ in 0..60 {
        step(&mut rng, &mut slots, &mut acc);
    }
    let mut quiet = 0;
    while quiet < 40 {
        let g = step(&mut rng, &mut slots, &mut acc);
        if chain.sift_and_add(g, 0)? {
            quiet = 0;
        } else {
            quiet += 1;
        }
    }

    chain.verify()?;
    Ok(chain.order())
}
