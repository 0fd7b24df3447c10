use std::collections::HashMap;
use std::sync::Arc;

use crate::engine::legs::dim;
use crate::engine::SparseOperator;
use crate::error::{Error, Result};
use crate::scalar::{is_zero, zero, Real, C};

/// A basis of operators whose supports are pairwise disjoint, so that each
/// matrix position belongs to at most one basis element.
pub trait Basis<T: Real>: Send + Sync {
    fn name(&self) -> &'static str;
    fn len(&self) -> usize;
    fn legs(&self) -> usize;
    fn n(&self) -> usize;
    /// Basis element owning position `(row, col)` and its entry there.
    fn owner(&self, row: usize, col: usize) -> Option<(usize, C<T>)>;
    fn element(&self, i: usize) -> SparseOperator<T>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Σ_i coeffs[i] · element(i)`
    fn combine(&self, coeffs: &[C<T>]) -> Result<SparseOperator<T>> {
        let mut t = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            if is_zero(c) {
                continue;
            }
            for (r, col, v) in self.element(i).entries() {
                t.push((*r, *col, v.clone() * c.clone()));
            }
        }
        SparseOperator::from_triplets(self.n(), self.legs(), t)
    }

    /// Coordinates of `x`; fails with the residual when `x` is not in the
    /// span within `tol`.
    fn expand(&self, x: &SparseOperator<T>, tol: &T) -> Result<Vec<C<T>>> {
        if x.legs() != self.legs() {
            return Err(Error::LegMismatch {
                left: self.legs(),
                right: x.legs(),
            });
        }
        let mut coeffs = vec![zero(); self.len()];
        let mut set = vec![false; self.len()];
        let mut orphan = 0.0f64;
        for (r, c, v) in x.entries() {
            match self.owner(*r, *c) {
                Some((i, b)) if !set[i] => {
                    coeffs[i] = v.clone() / b;
                    set[i] = true;
                }
                Some(_) => {}
                None => orphan = orphan.max(crate::scalar::modulus(v)),
            }
        }
        let rebuilt = self.combine(&coeffs)?;
        let residual = x.compare(&rebuilt, tol)?;
        if !residual.equal() {
            return Err(Error::NotInAlgebra {
                algebra: self.name(),
                residual: residual.max_error.max(orphan),
            });
        }
        Ok(coeffs)
    }
}

/// Explicitly stored basis with a position-ownership table.
#[derive(Clone, Debug)]
pub struct OperatorBasis<T> {
    name: &'static str,
    n: usize,
    legs: usize,
    elements: Vec<SparseOperator<T>>,
    owner: HashMap<(usize, usize), (usize, C<T>)>,
}

impl<T: Real> OperatorBasis<T> {
    pub fn new(name: &'static str, elements: Vec<SparseOperator<T>>) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::ShapeMismatch(format!("empty basis {name}")))?;
        let (n, legs) = (first.n(), first.legs());
        let mut owner = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if e.legs() != legs || e.nnz() == 0 {
                return Err(Error::ShapeMismatch(format!("basis {name} element {i}")));
            }
            for (r, c, v) in e.entries() {
                if owner.insert((*r, *c), (i, v.clone())).is_some() {
                    return Err(Error::ShapeMismatch(format!(
                        "basis {name}: supports overlap at ({r}, {c})"
                    )));
                }
            }
        }
        Ok(Self {
            name,
            n,
            legs,
            elements,
            owner,
        })
    }

    pub fn elements(&self) -> &[SparseOperator<T>] {
        &self.elements
    }
}

impl<T: Real> Basis<T> for OperatorBasis<T> {
    fn name(&self) -> &'static str {
        self.name
    }

    fn len(&self) -> usize {
        self.elements.len()
    }

    fn legs(&self) -> usize {
        self.legs
    }

    fn n(&self) -> usize {
        self.n
    }

    fn owner(&self, row: usize, col: usize) -> Option<(usize, C<T>)> {
        self.owner.get(&(row, col)).cloned()
    }

    fn element(&self, i: usize) -> SparseOperator<T> {
        self.elements[i].clone()
    }
}

/// Products `a_i ⊗ b_j`, indexed `i · |b| + j`, resolved without storing
/// the products.
#[derive(Clone, Debug)]
pub struct TensorBasis<T> {
    name: &'static str,
    a: Arc<OperatorBasis<T>>,
    b: Arc<OperatorBasis<T>>,
    dim_b: usize,
}

impl<T: Real> TensorBasis<T> {
    pub fn new(name: &'static str, a: Arc<OperatorBasis<T>>, b: Arc<OperatorBasis<T>>) -> Self {
        let dim_b = dim(b.n(), b.legs());
        Self { name, a, b, dim_b }
    }

    pub fn left(&self) -> &OperatorBasis<T> {
        &self.a
    }

    pub fn right(&self) -> &OperatorBasis<T> {
        &self.b
    }
}

impl<T: Real> Basis<T> for TensorBasis<T> {
    fn name(&self) -> &'static str {
        self.name
    }

    fn len(&self) -> usize {
        self.a.len() * self.b.len()
    }

    fn legs(&self) -> usize {
        self.a.legs() + self.b.legs()
    }

    fn n(&self) -> usize {
        self.a.n()
    }

    fn owner(&self, row: usize, col: usize) -> Option<(usize, C<T>)> {
        let (i, x) = self.a.owner(row / self.dim_b, col / self.dim_b)?;
        let (j, y) = self.b.owner(row % self.dim_b, col % self.dim_b)?;
        Some((i * self.b.len() + j, x * y))
    }

    fn element(&self, k: usize) -> SparseOperator<T> {
        let (i, j) = (k / self.b.len(), k % self.b.len());
        self.a.elements[i]
            .tensor(&self.b.elements[j])
            .expect("factors share the group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    fn units() -> OperatorBasis<f64> {
        let e = |r, c| {
            SparseOperator::from_triplets(2, 1, vec![(r, c, Complex::new(1.0, 0.0))]).unwrap()
        };
        OperatorBasis::new("diag", vec![e(0, 0), e(1, 1)]).unwrap()
    }

    #[test]
    fn expands_in_span() {
        let b = units();
        let x = SparseOperator::diagonal(2, 1, &[Complex::new(2.0, 0.0), Complex::new(0.0, 3.0)])
            .unwrap();
        let c = b.expand(&x, &1e-12).unwrap();
        assert_eq!(c, vec![Complex::new(2.0, 0.0), Complex::new(0.0, 3.0)]);
    }

    #[test]
    fn rejects_outside_span() {
        let b = units();
        let x = SparseOperator::from_triplets(2, 1, vec![(0, 1, Complex::new(1.0, 0.0))]).unwrap();
        match b.expand(&x, &1e-12) {
            Err(Error::NotInAlgebra { residual, .. }) => assert_eq!(residual, 1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn overlapping_supports_refused() {
        let e = SparseOperator::<f64>::identity(2, 1);
        assert!(OperatorBasis::new("dup", vec![e.clone(), e]).is_err());
    }

    #[test]
    fn tensor_basis_roundtrip() {
        let b = Arc::new(units());
        let t = TensorBasis::new("diag2", b.clone(), b);
        let coeffs: Vec<Complex<f64>> = (0..4).map(|k| Complex::new(k as f64 + 1.0, 0.0)).collect();
        let x = t.combine(&coeffs).unwrap();
        assert_eq!(t.expand(&x, &1e-12).unwrap(), coeffs);
    }
}
