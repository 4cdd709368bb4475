//! The acceptance checks, shared by `selftest` and the acceptance test target.
//!
//! Each check recomputes its expectation independently of the engine it
//! exercises and reports every mismatch as a failure string. Failure strings
//! are stable so that the two recorded discrepancies can be recognised.

use std::fmt;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use cyclocover::arith::{self, Family};
use cyclocover::burau::cover_rep;
use cyclocover::covering;
use cyclocover::formsolve::{form_solution_space, invariant_form, InvariantForm, SesquiForm};
use cyclocover::matgroup::{
    bfs_enumerate, group_order, psu_class, schreier_sims_order, verify_image, GroupError, GroupFamily, Method,
    DEFAULT_BFS_CAP,
};
use cyclocover::{FieldTower, MatrixFq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Mutation {
    #[default]
    None,
    /// Classical order formulas return twice the true value.
    OrderFormula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    /// Reduced parameter ranges; used by `selftest`.
    Smoke,
    /// The ranges and limits stated by the criteria.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Failed, but only on the recorded discrepancies.
    KnownDiscrepancy,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::KnownDiscrepancy => "known-discrepancy",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub status: Status,
    pub cases: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub limit: Duration,
}

impl CheckOutcome {
    /// One-line summary, with timing (not used by `selftest`).
    pub fn line(&self) -> String {
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{verdict} criterion {:>2} {:<28} cases={:<5} {:.3}s (limit {}s)",
            self.id,
            self.name,
            self.cases,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        );
        if !self.failures.is_empty() {
            s.push_str(&format!(" failures: {}", self.failures.join("; ")));
        }
        s
    }
}

/// Failures whose analysis is recorded; everything else is a regression.
pub const KNOWN_DISCREPANCIES: &[&str] = &[
    "bullet 5 (l=3, p=7, n=2): got PSL(2, 7), stated PSU(2, 7)",
    "-1 class (q=3, m=2): trivial, stated nontrivial",
    "-1 class (q=3, m=6): trivial, stated nontrivial",
    "-1 class (q=7, m=2): trivial, stated nontrivial",
    "-1 class (q=7, m=4): trivial, stated nontrivial",
    "-1 class (q=7, m=6): trivial, stated nontrivial",
];

struct Ctx {
    scale: Scale,
    mutation: Mutation,
    cases: usize,
    failures: Vec<String>,
}

impl Ctx {
    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.cases += 1;
        self.failures.push(msg);
    }

    fn order_formula(&self, fam: GroupFamily, m: u32, q: u64) -> Result<BigUint, String> {
        let n = group_order(fam, m, q).map_err(|e| e.to_string())?;
        Ok(match self.mutation {
            Mutation::None => n,
            Mutation::OrderFormula => n * 2u32,
        })
    }
}

type CheckFn = fn(&mut Ctx);

const CHECKS: &[(u32, &str, u64, CheckFn)] = &[
    (1, "corollary conformance", 1, corollary_conformance),
    (2, "remark conformance", 1, remark_conformance),
    (3, "riemann-hurwitz", 1, riemann_hurwitz),
    (4, "2-adic lemma", 10, two_adic_lemma),
    (5, "unitary flagship", 5, unitary_flagship),
    (6, "linear flagship", 60, linear_flagship),
    (7, "odd-char unitary", 60, odd_char_unitary),
    (8, "dichotomy sweep", 300, dichotomy_sweep),
    (9, "class bookkeeping", 1, class_bookkeeping),
    (10, "oracle agreement", 30, oracle_agreement),
];

pub fn criterion_ids() -> impl Iterator<Item = u32> {
    CHECKS.iter().map(|c| c.0)
}

/// Run one criterion. At full scale an overrun of the time limit is a failure.
pub fn run_check(id: u32, scale: Scale, mutation: Mutation) -> CheckOutcome {
    let &(id, name, limit, f) = CHECKS.iter().find(|c| c.0 == id).expect("known criterion id");
    let mut ctx = Ctx {
        scale,
        mutation,
        cases: 0,
        failures: Vec::new(),
    };
    let start = Instant::now();
    f(&mut ctx);
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit);
    if scale == Scale::Full && elapsed > limit {
        ctx.failures.push(format!("runtime {:.3}s exceeds {}s", elapsed.as_secs_f64(), limit.as_secs()));
    }
    let status = if ctx.failures.is_empty() {
        Status::Pass
    } else if ctx.failures.iter().all(|f| KNOWN_DISCREPANCIES.contains(&f.as_str())) {
        Status::KnownDiscrepancy
    } else {
        Status::Fail
    };
    CheckOutcome {
        id,
        name,
        status,
        cases: ctx.cases,
        failures: ctx.failures,
        elapsed,
        limit,
    }
}

pub fn selftest(mutation: Mutation) -> Vec<CheckOutcome> {
    criterion_ids().map(|id| run_check(id, Scale::Smoke, mutation)).collect()
}

fn corollary_conformance(ctx: &mut Ctx) {
    // (bullet, l, p, n, stated family, stated degree, stated q = p^exp)
    const BULLETS: &[(u32, u64, u64, u64, Family, u64, u64)] = &[
        (1, 3, 7, 2, Family::Psl, 2, 1),
        (2, 5, 19, 1, Family::Psl, 2, 2),
        (3, 5, 11, 1, Family::Psl, 2, 1),
        (4, 5, 19, 1, Family::Psl, 2, 2),
        (5, 3, 7, 2, Family::Psu, 2, 1),
        (6, 7, 13, 1, Family::Psu, 4, 1),
        (7, 7, 5, 1, Family::Psu, 4, 3),
        (8, 5, 3, 1, Family::Psu, 2, 2),
    ];
    for &(b, l, p, n, family, degree, exp) in BULLETS {
        let stated = format!("{family}({degree}, {})", arith::FieldSize { p, exp });
        match arith::realization_verdict(l, p, n) {
            Ok(v) => ctx.expect(v.family == family && v.degree == degree && v.q == arith::FieldSize { p, exp }, || {
                format!("bullet {b} (l={l}, p={p}, n={n}): got {}, stated {stated}", v.label())
            }),
            Err(e) => ctx.fail(format!("bullet {b}: {e}")),
        }
    }
}

fn remark_conformance(ctx: &mut Ctx) {
    // (l, p, unitary, q exponent) per congruence class, smallest odd prime.
    const CLASSES: &[(u64, u64, bool, u64)] = &[
        (3, 5, true, 1),
        (3, 7, false, 1),
        (5, 3, true, 2),
        (5, 11, false, 1),
        (5, 19, false, 2),
        (7, 13, true, 1),
        (7, 3, true, 3),
        (7, 29, false, 1),
    ];
    // (l, mu, field name as written for that l)
    const FIELDS: &[(u64, u64, &str)] = &[
        (3, 2, "Q"),
        (3, 1, "Q(ω)"),
        (5, 4, "Q"),
        (5, 2, "Q(√5)"),
        (5, 1, "Q(ζ_5)"),
        (7, 6, "Q"),
        (7, 3, "Q(√−7)"),
        (7, 2, "Q(cos 2π/7)"),
        (7, 1, "Q(ζ_7)"),
    ];
    for &(l, p, unitary, exp) in CLASSES {
        for &(_, mu, name) in FIELDS.iter().filter(|f| f.0 == l) {
            // smallest n >= 2 with n = -2 mod mu
            let n = (2..).find(|n| (n + 2) % mu == 0).unwrap();
            let family = if unitary { Family::BetweenPguPsu } else { Family::BetweenPglPsl };
            match arith::theorem_main_verdict(l, mu, p, n) {
                Ok(v) => ctx.expect(
                    v.family == family && v.q == arith::FieldSize { p, exp } && v.base_field.name == name && v.degree == n,
                    || {
                        format!(
                            "l={l} p={p} mu={mu} n={n}: got {} over {}, stated {family} q={p}^{exp} over {name}",
                            v.label(),
                            v.base_field.name
                        )
                    },
                ),
                Err(e) => ctx.fail(format!("l={l} p={p} mu={mu}: {e}")),
            }
        }
    }
}

fn riemann_hurwitz(ctx: &mut Ctx) {
    ctx.expect(covering::genus(3, 3).ok() == Some(1), || "g(3, 3) != 1".into());
    for l in (3..=13u64).step_by(2) {
        for r in 2..=20u64 {
            // chi(X) = l * chi(P^1 minus R points) + R
            let chi = l as i64 * (2 - r as i64) + r as i64;
            let g = (2 - chi) / 2;
            match covering::genus(l, r) {
                Ok(got) => ctx.expect(got as i64 == g, || format!("genus({l}, {r}) = {got}, Euler gives {g}")),
                // composite odd l: the engine may reject, the formula is the same
                Err(_) if !arith::is_prime(l) => {}
                Err(e) => ctx.fail(format!("genus({l}, {r}): {e}")),
            }
        }
    }
}

fn two_adic_lemma(ctx: &mut Ctx) {
    let bound = match ctx.scale {
        Scale::Smoke => 1_000,
        Scale::Full => 10_000,
    };
    for p in arith::primes_up_to(bound - 1).into_iter().filter(|&p| p != 2) {
        for half in [1u32, 3, 5, 7, 9] {
            let e = 2 * half as u64;
            let direct = ((p as u128).pow(half) + 1).trailing_zeros();
            let base = (p + 1).trailing_zeros();
            match arith::check_v2_lemma(p, e) {
                Ok(r) => ctx.expect(r.holds && r.r == base as u64 && r.v2_q_plus_1 == direct as u64 && direct == base, || {
                    format!("p={p} e={e}: v2(q+1)={direct}, v2(p+1)={base}")
                }),
                Err(err) => ctx.fail(format!("p={p} e={e}: {err}")),
            }
        }
    }
}

fn unitary_flagship(ctx: &mut Ctx) {
    let formula = ctx.order_formula(GroupFamily::SlU(3), 3, 2);
    ctx.expect(formula.as_ref().ok() == Some(&BigUint::from(648u32)), || {
        format!("|SlU(3, 2)| formula gives {formula:?}, expected 648")
    });
    let report = match verify_image(3, 2, 4, DEFAULT_BFS_CAP) {
        Ok(r) => r,
        Err(e) => return ctx.fail(format!("verify_image(3, 2, 4): {e}")),
    };
    ctx.expect(report.method == Method::Bfs, || format!("method {:?}, expected BFS", report.method));
    ctx.expect(report.order == BigUint::from(648u32), || format!("order {}, expected 648", report.order));
    ctx.expect(formula.ok() == Some(report.order.clone()), || "order differs from |SlU(3, 2)|".into());
    ctx.expect(report.membership_ok, || "a generator is outside SlU(3, 2)".into());
    let rep = cover_rep(3, 2, 4).expect("built by verify_image");
    let gens = rep.pure_images();
    ctx.expect(gens.iter().all(|g| g.det().pow(3).is_one()), || "a pure braid determinant is outside mu_3".into());
    let dim = form_solution_space(&gens, 1).map(|s| s.len());
    ctx.expect(dim == Ok(1), || format!("Hermitian solution space {dim:?}, expected 1"));
    match invariant_form(&rep) {
        Ok(InvariantForm::Unitary(f)) => ctx.expect(f.nondegenerate, || "invariant form is degenerate".into()),
        other => ctx.fail(format!("invariant_form: {other:?}")),
    }
}

fn linear_flagship(ctx: &mut Ctx) {
    let formula = ctx.order_formula(GroupFamily::SlL(3), 3, 7);
    let stated = BigUint::from(16_892_064u32);
    let sl = group_order(GroupFamily::Sl, 3, 7).unwrap_or_default();
    ctx.expect(stated == sl * 3u32, || "3 |SL(3, 7)| != 16892064".into());
    ctx.expect(formula.as_ref().ok() == Some(&stated), || format!("|SlL(3, 7)| formula gives {formula:?}"));
    let report = match verify_image(3, 7, 4, DEFAULT_BFS_CAP) {
        Ok(r) => r,
        Err(e) => return ctx.fail(format!("verify_image(3, 7, 4): {e}")),
    };
    ctx.expect(report.method == Method::SchreierSims, || format!("method {:?}", report.method));
    ctx.expect(report.order == stated, || format!("order {}, expected {stated}", report.order));
    ctx.expect(formula.ok() == Some(report.order.clone()), || "order differs from |SlL(3, 7)|".into());
    ctx.expect(report.membership_ok, || "membership_sll failed".into());
    ctx.expect(report.forms.iter().all(|f| f.dimension == 0), || format!("form dimensions {:?}", report.forms));
    let rep = cover_rep(3, 7, 4).expect("built by verify_image");
    let dim = form_solution_space(&rep.pure_images(), 0).map(|s| s.len());
    ctx.expect(dim == Ok(0), || format!("bilinear solution space {dim:?}, expected 0"));
}

fn odd_char_unitary(ctx: &mut Ctx) {
    let formula = ctx.order_formula(GroupFamily::SlU(3), 3, 5);
    let stated = BigUint::from(1_134_000u32);
    let su = group_order(GroupFamily::Su, 3, 5).unwrap_or_default();
    ctx.expect(stated == su * 3u32, || "3 |SU(3, 5)| != 1134000".into());
    ctx.expect(formula.as_ref().ok() == Some(&stated), || format!("|SlU(3, 5)| formula gives {formula:?}"));
    // Smoke scale certifies the same order by Schreier-Sims instead of BFS.
    let cap = match ctx.scale {
        Scale::Smoke => 0,
        Scale::Full => DEFAULT_BFS_CAP,
    };
    match verify_image(3, 5, 4, cap) {
        Ok(report) => {
            ctx.expect(report.order == stated, || format!("order {}, expected {stated}", report.order));
            ctx.expect(formula.ok() == Some(report.order.clone()), || "order differs from |SlU(3, 5)|".into());
            ctx.expect(report.membership_ok, || "a generator is outside SlU(3, 5)".into());
        }
        Err(e) => ctx.fail(format!("verify_image(3, 5, 4): {e}")),
    }
}

fn dichotomy_sweep(ctx: &mut Ctx) {
    let (p_max, rs): (u64, &[usize]) = match ctx.scale {
        Scale::Smoke => (7, &[4]),
        Scale::Full => (13, &[4, 5, 6]),
    };
    for l in [3u64, 5, 7] {
        for p in arith::primes_up_to(p_max).into_iter().filter(|&p| p != l) {
            let e = arith::ord_mod(p, l).expect("p != l");
            let odd_index = ((l - 1) / e) % 2 == 1;
            for &r in rs.iter().filter(|&&r| r as u64 % l != 0) {
                let rep = match cover_rep(l, p, r) {
                    Ok(rep) => rep,
                    Err(err) => {
                        ctx.fail(format!("cover_rep({l}, {p}, {r}): {err}"));
                        continue;
                    }
                };
                let gens = rep.pure_images();
                let mut involutions = vec![0];
                if e % 2 == 0 {
                    involutions.push((e / 2) as u32);
                }
                let mut dims = Vec::new();
                for j in involutions {
                    match form_solution_space(&gens, j) {
                        Ok(s) => dims.push((j, s.len())),
                        Err(err) => ctx.fail(format!("l={l} p={p} r={r} j={j}: {err}")),
                    }
                }
                let exists = dims.iter().any(|&(_, d)| d > 0);
                ctx.expect(exists == odd_index, || {
                    format!("l={l} p={p} r={r}: form dims {dims:?}, (l-1)/e = {}", (l - 1) / e)
                });
            }
        }
    }
}

fn class_bookkeeping(ctx: &mut Ctx) {
    for (p, k) in [(3u64, 2u32), (5, 2), (7, 2), (3, 4)] {
        let tower = FieldTower::new(p, k).expect("small field");
        let q = p.pow(k / 2);
        for m in [2usize, 4, 6] {
            let form = SesquiForm::standard_hermitian(&tower, m).expect("even degree");
            let diag_first = |x| {
                let mut d = vec![tower.one(); m];
                d[0] = x;
                MatrixFq::diagonal(&tower, &d).expect("square")
            };
            // xi in mu_l for odd primes l | q+1 (so diag(xi, 1, ...) is unitary), l not dividing m
            for l in arith::prime_factors(q + 1).into_iter().filter(|&l| l != 2 && m as u64 % l != 0) {
                for xi in tower.elements().skip(1).filter(|x| x.pow(l).is_one() && !x.is_one()) {
                    match psu_class(&diag_first(xi.clone()), &form) {
                        Ok(c) => ctx.expect(c.is_trivial(), || format!("xi class (q={q}, m={m}, l={l}): nontrivial")),
                        Err(e) => ctx.fail(format!("xi class (q={q}, m={m}): {e}")),
                    }
                }
            }
            match psu_class(&diag_first(tower.from_int(-1)), &form) {
                Ok(c) => ctx.expect(!c.is_trivial(), || format!("-1 class (q={q}, m={m}): trivial, stated nontrivial")),
                Err(e) => ctx.fail(format!("-1 class (q={q}, m={m}): {e}")),
            }
        }
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, tower: &FieldTower, dim: usize) -> MatrixFq {
    let elems: Vec<_> = tower.elements().collect();
    loop {
        let rows: Vec<Vec<_>> = (0..dim)
            .map(|_| (0..dim).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect())
            .collect();
        let m = MatrixFq::from_rows(tower, &rows).expect("square");
        if !m.det().is_zero() {
            return m;
        }
    }
}

fn oracle_agreement(ctx: &mut Ctx) {
    const FIELDS: &[(u64, u32)] = &[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 3)];
    const BOUND: u64 = 100_000;
    let wanted = match ctx.scale {
        Scale::Smoke => 5,
        Scale::Full => 20,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xc10c);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < wanted && attempts < 1_000 {
        attempts += 1;
        let (p, k) = FIELDS[rng.gen_range(0..FIELDS.len())];
        let tower = FieldTower::new(p, k).expect("small field");
        let dim = rng.gen_range(2..=3);
        let ngens = rng.gen_range(1..=2);
        let gens: Vec<_> = (0..ngens).map(|_| random_invertible(&mut rng, &tower, dim)).collect();
        let bfs = match bfs_enumerate(&gens, BOUND) {
            Ok(n) => n,
            Err(GroupError::CapExceeded { .. }) => continue,
            Err(e) => {
                ctx.fail(format!("bfs over F_{p}^{k}: {e}"));
                continue;
            }
        };
        accepted += 1;
        match schreier_sims_order(&gens) {
            Ok(ss) => ctx.expect(ss == BigUint::from(bfs), || {
                format!("set {accepted} over F_{p}^{k}, dim {dim}: BFS {bfs}, Schreier-Sims {ss}")
            }),
            Err(e) => ctx.fail(format!("set {accepted}: {e}")),
        }
    }
    ctx.expect(accepted == wanted, || format!("only {accepted} of {wanted} sets within the bound"));
}
