use crate::engine::SparseOperator;
use crate::error::{Error, Result};
use crate::scalar::{zero, Real, C};

/// Linear functional `ω(X) = trace(ρ X)` given by a density `ρ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional<T> {
    density: SparseOperator<T>,
}

impl<T: Real> Functional<T> {
    pub fn from_density(density: SparseOperator<T>) -> Result<Self> {
        Ok(Self { density })
    }

    /// Vector functional `ω_{ξ,η}(X) = ⟨Xξ, η⟩`.
    pub fn vector(n: usize, legs: usize, xi: &[C<T>], eta: &[C<T>]) -> Result<Self> {
        if xi.len() != eta.len() || xi.len() != crate::engine::dim(n, legs) {
            return Err(Error::ShapeMismatch("vector functional".into()));
        }
        let mut t = Vec::new();
        for (c, x) in xi.iter().enumerate() {
            for (r, y) in eta.iter().enumerate() {
                t.push((c, r, x.clone() * y.conj()));
            }
        }
        Ok(Self {
            density: SparseOperator::from_triplets(n, legs, t)?,
        })
    }

    pub fn legs(&self) -> usize {
        self.density.legs()
    }

    pub fn density(&self) -> &SparseOperator<T> {
        &self.density
    }

    pub fn eval(&self, x: &SparseOperator<T>) -> Result<C<T>> {
        if x.legs() != self.legs() {
            return Err(Error::LegMismatch {
                left: self.legs(),
                right: x.legs(),
            });
        }
        let rho = &self.density;
        let sum = if x.nnz() <= rho.nnz() {
            x.entries()
                .iter()
                .fold(zero(), |acc, (r, c, v)| acc + rho.get(*c, *r) * v.clone())
        } else {
            rho.entries()
                .iter()
                .fold(zero(), |acc, (c, r, p)| acc + x.get(*r, *c) * p.clone())
        };
        Ok(sum)
    }

    /// `(self ⊗ other)(X ⊗ Y) = self(X) other(Y)`
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            density: self.density.tensor(&other.density)?,
        })
    }

    pub fn scale(&self, c: &C<T>) -> Self {
        Self {
            density: self.density.scale(c),
        }
    }
}
