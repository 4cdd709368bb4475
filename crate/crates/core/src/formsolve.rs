//! Invariant sesquilinear forms of a matrix representation, found as the
//! kernel of `J -> g^* J g - J` over all generators `g`.

use serde::Serialize;
use thiserror::Error;

use crate::burau::BurauRep;
use crate::ffield::{FFElement, FieldError, FieldTower};
use crate::matrix::{nullspace, MatrixError, MatrixFq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("no generators given")]
    NoGenerators,
    #[error("involution x -> x^(p^{j}) needs 2j = 0 mod {e}")]
    BadInvolution { j: u32, e: u32 },
    #[error("invariant forms for j = {involution}: solution space has dimension {dimension}, expected {expected}")]
    UnexpectedDimension { involution: u32, dimension: usize, expected: usize },
    #[error("invariant form is degenerate")]
    Degenerate,
}

pub type Result<T> = std::result::Result<T, FormError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SesquiForm {
    pub gram: MatrixFq,
    /// Conjugation is `x -> x^(p^involution)`; 0 means bilinear.
    pub involution: u32,
    pub nondegenerate: bool,
    /// `gram^* = symmetry * gram`.
    pub symmetry: FFElement,
}

impl SesquiForm {
    /// The identity Gram matrix with conjugation `x -> x^(p^(k/2))`, k the
    /// tower degree.
    pub fn standard_hermitian(tower: &FieldTower, dim: usize) -> Result<Self> {
        let k = tower.degree();
        if k % 2 != 0 {
            return Err(FormError::BadInvolution { j: k / 2, e: k });
        }
        Ok(SesquiForm {
            gram: MatrixFq::identity(tower, dim),
            involution: k / 2,
            nondegenerate: true,
            symmetry: tower.one(),
        })
    }

    /// Rescale the Gram matrix, recomputing the symmetry scalar.
    pub fn scaled(&self, c: &FFElement) -> Result<Self> {
        if c.is_zero() {
            return Err(FormError::Degenerate);
        }
        from_gram(self.gram.scale(c)?, self.involution)
    }

    pub fn tower(&self) -> &FieldTower {
        self.gram.tower()
    }
}

fn check_involution(tower: &FieldTower, j: u32) -> Result<()> {
    let e = tower.degree();
    if (2 * j) % e != 0 {
        return Err(FormError::BadInvolution { j, e });
    }
    Ok(())
}

/// Basis of `{J : g^* J g = J for all g}`, conjugation `x -> x^(p^j)`.
pub fn form_solution_space(gens: &[MatrixFq], j: u32) -> Result<Vec<MatrixFq>> {
    let first = gens.first().ok_or(FormError::NoGenerators)?;
    let tower = first.tower().clone();
    check_involution(&tower, j)?;
    let n = first.dim();
    let nn = n * n;
    let mut system = Vec::with_capacity(gens.len() * nn * nn);
    for g in gens {
        tower.check_same(g.tower())?;
        if g.dim() != n {
            return Err(MatrixError::Dimension(n, g.dim()).into());
        }
        let conj = g.frobenius(j);
        let (gc, gr) = (conj.raw(), g.raw());
        // (g^* J g)_{ab} = sum_{c,d} conj(g_ca) J_cd g_db
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut v = tower.mul_raw(gc[c * n + a], gr[d * n + b]);
                        if (a, b) == (c, d) {
                            v = tower.sub_raw(v, 1);
                        }
                        system.push(v);
                    }
                }
            }
        }
    }
    Ok(nullspace(&tower, gens.len() * nn, nn, &system)
        .into_iter()
        .map(|x| MatrixFq::from_raw(&tower, n, x))
        .collect())
}

fn from_gram(gram: MatrixFq, j: u32) -> Result<SesquiForm> {
    let tower = gram.tower().clone();
    let pos = gram.raw().iter().position(|&x| x != 0).ok_or(FormError::Degenerate)?;
    let star = gram.conj_transpose(j);
    let c = tower.wrap(tower.mul_raw(star.raw()[pos], tower.inv_raw(gram.raw()[pos])));
    let symmetric = gram.scale(&c)? == star;
    if !symmetric {
        return Err(FormError::Degenerate);
    }
    Ok(SesquiForm {
        nondegenerate: !gram.det().is_zero(),
        gram,
        involution: j,
        symmetry: c,
    })
}

/// Gram matrix scaled so its first nonzero entry (row-major) is 1.
fn normalized(gram: &MatrixFq) -> Result<MatrixFq> {
    let t = gram.tower();
    let lead = gram.raw().iter().find(|&&x| x != 0).ok_or(FormError::Degenerate)?;
    Ok(gram.scale(&t.wrap(t.inv_raw(*lead)))?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantForm {
    Unitary(SesquiForm),
    /// Linear case: no invariant form for any of the listed involutions.
    NoForm { involutions: Vec<u32> },
}

/// Whether the representation should preserve a Hermitian form:
/// e even and (l-1)/e odd.
pub fn is_unitary_case(l: u64, e: u32) -> bool {
    e % 2 == 0 && ((l - 1) / u64::from(e)) % 2 == 1
}

/// The invariant form of the pure braid image, or its absence.
///
/// Unitary case: the space is required to be exactly 1-dimensional with a
/// nondegenerate solution. Linear case: required to be 0 for j = 0 and, when
/// e is even, j = e/2. Any other dimension is an error.
pub fn invariant_form(rep: &BurauRep) -> Result<InvariantForm> {
    let gens = rep.pure_images();
    if is_unitary_case(rep.l, rep.e) {
        let j = rep.e / 2;
        let space = form_solution_space(&gens, j)?;
        if space.len() != 1 {
            return Err(FormError::UnexpectedDimension { involution: j, dimension: space.len(), expected: 1 });
        }
        let form = from_gram(normalized(&space[0])?, j)?;
        if !form.nondegenerate {
            return Err(FormError::Degenerate);
        }
        return Ok(InvariantForm::Unitary(form));
    }
    let mut involutions = vec![0];
    if rep.e % 2 == 0 {
        involutions.push(rep.e / 2);
    }
    for &j in &involutions {
        let dim = form_solution_space(&gens, j)?.len();
        if dim != 0 {
            return Err(FormError::UnexpectedDimension { involution: j, dimension: dim, expected: 0 });
        }
    }
    Ok(InvariantForm::NoForm { involutions })
}

/// `A^* J A = J`.
pub fn check_unitary(a: &MatrixFq, form: &SesquiForm) -> Result<bool> {
    Ok(multiplier(a, form)?.is_some_and(|nu| nu.is_one()))
}

/// `Some(nu)` when `A^* J A = nu J`.
pub fn multiplier(a: &MatrixFq, form: &SesquiForm) -> Result<Option<FFElement>> {
    let j = &form.gram;
    if a.dim() != j.dim() {
        return Err(MatrixError::Dimension(j.dim(), a.dim()).into());
    }
    let lhs = a.conj_transpose(form.involution).try_mul(j)?.try_mul(a)?;
    let t = j.tower();
    let pos = j.raw().iter().position(|&x| x != 0).ok_or(FormError::Degenerate)?;
    let nu = t.wrap(t.mul_raw(lhs.raw()[pos], t.inv_raw(j.raw()[pos])));
    Ok((j.scale(&nu)? == lhs).then_some(nu))
}
