//! Operator algebra on tensor powers of `ℂ[G]`.
//!
//! Basis tuples of `H^{⊗m}` are flattened with leg 1 most significant (see
//! [`encode`]). A [`MonomialOperator`] maps each basis vector to a scaled
//! basis vector and may be antilinear; a [`SparseOperator`] is an ordinary
//! coordinate-list matrix. [`LegWord`] evaluates products of embedded
//! monomials lazily so that identities on five or six legs never need the
//! full index map of every factor.

mod basis;
mod functional;
mod legs;
mod monomial;
mod sparse;
mod word;

pub use basis::{Basis, OperatorBasis, TensorBasis};
pub use functional::Functional;
pub use legs::{decode, dim, encode, pair_legs, LegMap};
pub use monomial::MonomialOperator;
pub use sparse::SparseOperator;
pub use word::LegWord;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// First matrix entry on which two operators disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryWitness {
    pub row: Vec<usize>,
    pub col: Vec<usize>,
    pub left: Complex<f64>,
    pub right: Complex<f64>,
}

/// Outcome of an operator comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    /// Largest entrywise modulus of the difference.
    pub max_error: f64,
    /// First entry (in row-major order) exceeding the tolerance.
    pub witness: Option<EntryWitness>,
}

impl Comparison {
    pub fn equal(&self) -> bool {
        self.witness.is_none()
    }

    pub(crate) fn exact(witness: Option<EntryWitness>) -> Self {
        let max_error = witness
            .as_ref()
            .map(|w| (w.left - w.right).norm())
            .unwrap_or(0.0);
        Self { max_error, witness }
    }
}

/// Either operator representation, for code that accepts both.
#[derive(Clone, Debug)]
pub enum Operator<T> {
    Monomial(MonomialOperator<T>),
    Sparse(SparseOperator<T>),
}

impl<T: Real> From<MonomialOperator<T>> for Operator<T> {
    fn from(m: MonomialOperator<T>) -> Self {
        Operator::Monomial(m)
    }
}

impl<T: Real> From<SparseOperator<T>> for Operator<T> {
    fn from(s: SparseOperator<T>) -> Self {
        Operator::Sparse(s)
    }
}

impl<T: Real> Operator<T> {
    pub fn legs(&self) -> usize {
        match self {
            Operator::Monomial(m) => m.legs(),
            Operator::Sparse(s) => s.legs(),
        }
    }

    pub fn is_antilinear(&self) -> bool {
        matches!(self, Operator::Monomial(m) if m.is_antilinear())
    }

    pub fn to_sparse(&self) -> Result<SparseOperator<T>> {
        match self {
            Operator::Monomial(m) => m.to_sparse(),
            Operator::Sparse(s) => Ok(s.clone()),
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.legs() != other.legs() {
            return Err(Error::LegMismatch {
                left: self.legs(),
                right: other.legs(),
            });
        }
        Ok(match (self, other) {
            (Operator::Monomial(a), Operator::Monomial(b)) => Operator::Monomial(a.compose(b)?),
            (Operator::Monomial(a), Operator::Sparse(b)) => {
                Operator::Sparse(b.left_mul_monomial(a)?)
            }
            (Operator::Sparse(a), Operator::Monomial(b)) => {
                Operator::Sparse(a.right_mul_monomial(b)?)
            }
            (Operator::Sparse(a), Operator::Sparse(b)) => Operator::Sparse(a.mul(b)?),
        })
    }

    pub fn adjoint(&self) -> Self {
        match self {
            Operator::Monomial(m) => Operator::Monomial(m.adjoint()),
            Operator::Sparse(s) => Operator::Sparse(s.adjoint()),
        }
    }

    /// Monomial pairs are compared exactly; anything involving a sparse
    /// operand is compared entrywise against `tol`.
    pub fn compare(&self, other: &Self, tol: &T) -> Result<Comparison> {
        if self.legs() != other.legs() {
            return Err(Error::LegMismatch {
                left: self.legs(),
                right: other.legs(),
            });
        }
        match (self, other) {
            (Operator::Monomial(a), Operator::Monomial(b)) => a.compare(b),
            _ => self.to_sparse()?.compare(&other.to_sparse()?, tol),
        }
    }
}

/// Convenience wrapper over [`Operator::compare`] returning only equality
/// and the witness.
pub fn op_equal<T: Real>(
    a: &Operator<T>,
    b: &Operator<T>,
    tol: &T,
) -> Result<(bool, Option<EntryWitness>)> {
    let c = a.compare(b, tol)?;
    Ok((c.equal(), c.witness))
}

/// Partial contraction of `x` by `omega` on the legs `positions`.
pub fn slice<T: Real>(
    omega: &Functional<T>,
    positions: &[usize],
    x: &Operator<T>,
) -> Result<SparseOperator<T>> {
    x.to_sparse()?.slice(omega, positions)
}

pub(crate) fn witness_at<T: Real>(
    n: usize,
    legs: usize,
    row: usize,
    col: usize,
    left: &C<T>,
    right: &C<T>,
) -> EntryWitness {
    EntryWitness {
        row: decode(n, legs, row),
        col: decode(n, legs, col),
        left: crate::scalar::to_c64(left),
        right: crate::scalar::to_c64(right),
    }
}
