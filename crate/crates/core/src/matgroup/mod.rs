//! Identify the group generated by the monodromy matrices, plus the
//! classical-group bookkeeping around it.

mod classes;
mod orders;
mod search;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

pub use classes::{
    membership_sll, membership_slu, norm_solutions, pgu_normalize, pgu_normalize_with, psl_class, psu_class,
    DetClass,
};
pub use orders::{group_order, GroupFamily};
pub use search::{bfs_enumerate, schreier_sims_order, schreier_sims_with, ChainLimits, DEFAULT_BFS_CAP};

use crate::arith::ArithError;
use crate::burau::{cover_rep, BurauError};
use crate::ffield::FieldError;
use crate::formsolve::{form_solution_space, invariant_form, is_unitary_case, FormError, InvariantForm};
use crate::matrix::MatrixError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Burau(#[from] BurauError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("no generators given")]
    NoGenerators,
    #[error("closure exceeded the cap ({partial} elements found)")]
    CapExceeded { partial: u64 },
    #[error("stabilizer chain incomplete: {0}")]
    ChainIncomplete(String),
    #[error("matrix is not unitary for the given form")]
    NotUnitary,
    #[error("matrix is not a similitude of the given form")]
    NotSimilitude,
    #[error("{0}")]
    BadParameters(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "BFS")]
    Bfs,
    SchreierSims,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Unitary,
    Linear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bracket {
    /// |SU(m, q)| or |SL(m, q)|
    #[serde(serialize_with = "crate::decimal")]
    pub lower: BigUint,
    /// |SlU(m, q)| or |SlL(m, q)|
    #[serde(serialize_with = "crate::decimal")]
    pub upper: BigUint,
    pub lower_divides_order: bool,
    pub order_divides_upper: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormDimension {
    pub involution: u32,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub l: u64,
    pub p: u64,
    /// Finite branch points (strands).
    pub r: usize,
    pub e: u32,
    pub dimension: usize,
    pub quotient: bool,
    pub case: Case,
    /// Fixed-field size in the unitary case.
    pub q: u64,
    pub method: Method,
    #[serde(serialize_with = "crate::decimal")]
    pub order: BigUint,
    pub target: String,
    pub bracket: Bracket,
    pub membership_ok: bool,
    /// Pure braid determinants generate all of mu_l.
    pub det_mu_l_full: bool,
    /// Invariant-form solution dimensions per involution tried.
    pub forms: Vec<FormDimension>,
    /// `None` when no target applies (dimension below 2).
    pub equals_expected: Option<bool>,
    pub flags: Vec<String>,
}

/// Build the monodromy representation for (l, p, r), compute the order of the
/// pure braid image and compare it with SlU/SlL.
///
/// Uses BFS when the target order is at most `cap`, Schreier–Sims otherwise
/// (or when BFS overflows because membership failed).
pub fn verify_image(l: u64, p: u64, r: usize, cap: u64) -> Result<GroupReport> {
    let rep = cover_rep(l, p, r)?;
    let gens = rep.pure_images();
    let m = rep.dim();
    let e = rep.e;
    let unitary = is_unitary_case(l, e);
    let case = if unitary { Case::Unitary } else { Case::Linear };
    let q = if unitary { p.pow(e / 2) } else { p.pow(e) };
    let mut flags = Vec::new();

    let branch_points = if rep.quotient { r } else { r + 1 };
    if (branch_points as u64) < l {
        flags.push(format!(
            "{branch_points} branch points < l = {l}: outside the image theorem's n >= l hypothesis"
        ));
    }
    if rep.quotient {
        flags.push(format!("l | r: quotient representation of dimension {m}"));
    }

    let mut forms = Vec::new();
    let membership_ok = if unitary {
        let form = match invariant_form(&rep)? {
            InvariantForm::Unitary(f) => f,
            InvariantForm::NoForm { .. } => unreachable!("unitary case returns a form"),
        };
        forms.push(FormDimension {
            involution: form.involution,
            dimension: 1,
        });
        let mut ok = true;
        for g in &gens {
            ok &= membership_slu(g, l, &form)?;
        }
        ok
    } else {
        let mut involutions = vec![0];
        if e % 2 == 0 {
            involutions.push(e / 2);
        }
        for j in involutions {
            let dimension = form_solution_space(&gens, j)?.len();
            if dimension != 0 {
                flags.push(format!("linear case but an invariant form exists for j = {j}"));
            }
            forms.push(FormDimension { involution: j, dimension });
        }
        gens.iter().all(|g| membership_sll(g, l))
    };

    let dets: Vec<_> = gens.iter().map(|g| g.det()).collect();
    let det_mu_l_full = dets.iter().any(|d| d.mult_order().ok() == Some(l));

    let (lower_family, upper_family) = if unitary {
        (GroupFamily::Su, GroupFamily::SlU(l))
    } else {
        (GroupFamily::Sl, GroupFamily::SlL(l))
    };
    let dim32 = m as u32;
    let lower = group_order(lower_family, dim32, q)?;
    let upper = group_order(upper_family, dim32, q)?;

    let (method, order) = if upper <= BigUint::from(cap) {
        match bfs_enumerate(&gens, cap) {
            Ok(n) => (Method::Bfs, BigUint::from(n)),
            Err(GroupError::CapExceeded { .. }) => (Method::SchreierSims, schreier_sims_order(&gens)?),
            Err(err) => return Err(err),
        }
    } else {
        (Method::SchreierSims, schreier_sims_order(&gens)?)
    };

    let bracket = Bracket {
        lower_divides_order: (&order % &lower).is_zero(),
        order_divides_upper: (&upper % &order).is_zero(),
        lower,
        upper: upper.clone(),
    };
    let equals_expected = (m >= 2).then(|| order == upper);
    if m < 2 {
        flags.push("dimension below 2: no classical target".into());
    }

    Ok(GroupReport {
        l,
        p,
        r,
        e,
        dimension: m,
        quotient: rep.quotient,
        case,
        q,
        method,
        order,
        target: format!("{upper_family}({m}, {q})"),
        bracket,
        membership_ok,
        det_mu_l_full,
        forms,
        equals_expected,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_flagship() {
        let rep = verify_image(3, 2, 4, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(rep.method, Method::Bfs);
        assert_eq!(rep.order, BigUint::from(648u32));
        assert_eq!(rep.equals_expected, Some(true));
        assert!(rep.membership_ok);
        assert!(rep.det_mu_l_full);
        assert_eq!(rep.target, "SlU(3, 2)");
    }

    #[test]
    fn degenerate_scalar_image() {
        let rep = verify_image(3, 2, 3, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(rep.dimension, 1);
        assert!(rep.quotient);
        assert_eq!(rep.equals_expected, None);
        assert_eq!(rep.order, BigUint::from(3u32));
    }

    #[test]
    fn forcing_schreier_sims_agrees() {
        let a = verify_image(3, 2, 4, DEFAULT_BFS_CAP).unwrap();
        let b = verify_image(3, 2, 4, 10).unwrap();
        assert_eq!(b.method, Method::SchreierSims);
        assert_eq!(a.order, b.order);
    }
}
