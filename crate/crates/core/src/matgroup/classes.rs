//! Membership in SlL/SlU, similitude normalization and the determinant
//! classes that decide whether a matrix lands in PSL/PSU.

use num_integer::Integer;
use serde::Serialize;

use super::{GroupError, Result};
use crate::ffield::{solve_norm_equation, FFElement};
use crate::formsolve::{check_unitary, multiplier, SesquiForm};
use crate::matrix::MatrixFq;

/// `det A in mu_l`.
pub fn membership_sll(a: &MatrixFq, l: u64) -> bool {
    a.det().pow(l).is_one()
}

/// `A^* J A = J` and `det A in mu_l`.
pub fn membership_slu(a: &MatrixFq, l: u64, form: &SesquiForm) -> Result<bool> {
    Ok(membership_sll(a, l) && check_unitary(a, form)?)
}

fn half_degree(form: &SesquiForm) -> Result<u32> {
    let k = form.tower().degree();
    if k % 2 != 0 || form.involution != k / 2 {
        return Err(GroupError::BadParameters(format!(
            "form involution {} is not x -> x^q on a degree-{k} field",
            form.involution
        )));
    }
    Ok(k / 2)
}

/// `lambda^{-1} A`, for the given solution of `lambda lambda^q = nu`.
pub fn pgu_normalize_with(a: &MatrixFq, lambda: &FFElement, form: &SesquiForm) -> Result<MatrixFq> {
    let half = half_degree(form)?;
    let nu = multiplier(a, form)?.ok_or(GroupError::NotSimilitude)?;
    let norm = lambda * &lambda.frobenius(half);
    if norm != nu {
        return Err(GroupError::BadParameters(format!("lambda has norm {norm}, multiplier is {nu}")));
    }
    Ok(a.scale(&lambda.inv()?)?)
}

/// Rescale a similitude with multiplier `nu` to an isometry.
pub fn pgu_normalize(a: &MatrixFq, nu: &FFElement, form: &SesquiForm) -> Result<MatrixFq> {
    half_degree(form)?;
    if nu.is_zero() {
        return Err(GroupError::BadParameters("multiplier is zero".into()));
    }
    let actual = multiplier(a, form)?.ok_or(GroupError::NotSimilitude)?;
    if actual != *nu {
        return Err(GroupError::BadParameters(format!("multiplier is {actual}, not {nu}")));
    }
    let lambda = solve_norm_equation(nu, form.tower())?;
    pgu_normalize_with(a, &lambda, form)
}

/// All `lambda` with `lambda lambda^q = nu`: one solution times mu_{q+1}.
pub fn norm_solutions(nu: &FFElement, form: &SesquiForm) -> Result<Vec<FFElement>> {
    let half = half_degree(form)?;
    let tower = form.tower();
    let base = solve_norm_equation(nu, tower)?;
    let sols: Vec<FFElement> = tower
        .elements()
        .skip(1)
        .filter(|z| (z * &z.frobenius(half)).is_one())
        .map(|z| &base * &z)
        .collect();
    Ok(sols)
}

/// A determinant class in a cyclic group modulo its `modulus`-th powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DetClass {
    pub index: u64,
    pub modulus: u64,
}

impl DetClass {
    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }
}

/// Class of `det A` in `mu_{q+1} / mu_{q+1}^{gcd(m, q+1)}`, m = dim A.
pub fn psu_class(a: &MatrixFq, form: &SesquiForm) -> Result<DetClass> {
    let half = half_degree(form)?;
    if !check_unitary(a, form)? {
        return Err(GroupError::NotUnitary);
    }
    let tower = form.tower();
    let q = tower.p().pow(half);
    let d = a.det();
    // mu_{q+1} = <g^(q-1)>.
    let log = tower.log_raw(d.code());
    debug_assert_eq!(log % (q - 1), 0);
    let index = log / (q - 1);
    let modulus = (a.dim() as u64).gcd(&(q + 1));
    Ok(DetClass {
        index: index % modulus,
        modulus,
    })
}

/// Class of `det A` in `F_q^x / (F_q^x)^{gcd(m, q-1)}`, F_q the matrix field.
pub fn psl_class(a: &MatrixFq) -> Result<DetClass> {
    let d = a.det();
    if d.is_zero() {
        return Err(GroupError::BadParameters("singular matrix".into()));
    }
    let tower = a.tower();
    let q = tower.order();
    let modulus = (a.dim() as u64).gcd(&(q - 1));
    Ok(DetClass {
        index: tower.log_raw(d.code()) % modulus,
        modulus,
    })
}
