use std::sync::Arc;

use rayon::prelude::*;

use crate::engine::legs::{dim, LegMap};
use crate::engine::{witness_at, Comparison, MonomialOperator};
use crate::error::{Error, Result};
use crate::scalar::{one, zero, Real, C};

/// A product `A₁ A₂ ⋯ A_k` of monomials placed on chosen legs, evaluated
/// one basis tuple at a time.
///
/// Factors are listed left to right as written; application runs right to
/// left. Nothing of size `n^legs` is ever allocated unless
/// [`LegWord::materialize`] is called.
#[derive(Clone, Debug)]
pub struct LegWord<T> {
    n: usize,
    legs: usize,
    factors: Vec<(Arc<MonomialOperator<T>>, LegMap)>,
}

impl<T: Real> LegWord<T> {
    pub fn new(n: usize, legs: usize) -> Self {
        Self {
            n,
            legs,
            factors: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    /// Appends `op` on `positions` (1-based) at the right end of the word.
    pub fn then(mut self, op: &Arc<MonomialOperator<T>>, positions: &[usize]) -> Result<Self> {
        if op.legs() != positions.len() || op.n() != self.n {
            return Err(Error::BadLegSpec(format!(
                "{} positions for a {}-leg operator",
                positions.len(),
                op.legs()
            )));
        }
        if op.is_antilinear() && positions.len() != self.legs {
            return Err(Error::Antilinear("embedding next to identity legs"));
        }
        let map = LegMap::new(self.n, positions, self.legs)?;
        self.factors.push((Arc::clone(op), map));
        Ok(self)
    }

    pub fn is_antilinear(&self) -> bool {
        self.factors
            .iter()
            .filter(|(op, _)| op.is_antilinear())
            .count()
            % 2
            == 1
    }

    /// Image index and phase of basis tuple `j`.
    #[inline]
    pub fn apply_index(&self, j: usize) -> (usize, C<T>) {
        let mut idx = j;
        let mut phase: Option<C<T>> = None;
        for (op, map) in self.factors.iter().rev() {
            let inner = map.inner(idx);
            if op.has_phases() || phase.is_some() {
                let p = phase.take().unwrap_or_else(one);
                let p = if op.is_antilinear() { p.conj() } else { p };
                phase = Some(p * op.phase(inner));
            }
            idx = map.substitute(idx, op.image(inner));
        }
        (idx, phase.unwrap_or_else(one))
    }

    pub fn materialize(&self) -> Result<MonomialOperator<T>> {
        let d = dim(self.n, self.legs);
        let pairs: Vec<(usize, C<T>)> = (0..d)
            .into_par_iter()
            .map(|j| self.apply_index(j))
            .collect();
        let phased = self.factors.iter().any(|(op, _)| op.has_phases());
        let (image, phases): (Vec<usize>, Vec<C<T>>) = pairs.into_iter().unzip();
        MonomialOperator::from_image(
            self.n,
            self.legs,
            image,
            phased.then_some(phases),
            self.is_antilinear(),
        )
    }

    /// Exact comparison over all `n^legs` basis tuples; the witness is the
    /// lowest input tuple on which the words differ.
    pub fn compare(&self, other: &Self) -> Result<Comparison> {
        if self.legs != other.legs || self.n != other.n {
            return Err(Error::LegMismatch {
                left: self.legs,
                right: other.legs,
            });
        }
        if self.is_antilinear() != other.is_antilinear() {
            return Err(Error::Antilinear(
                "comparing a linear with an antilinear word",
            ));
        }
        let d = dim(self.n, self.legs);
        let bad = (0..d).into_par_iter().find_first(|&j| {
            let (a, pa) = self.apply_index(j);
            let (b, pb) = other.apply_index(j);
            a != b || pa != pb
        });
        Ok(Comparison::exact(bad.map(|j| {
            let (a, pa) = self.apply_index(j);
            let (b, pb) = other.apply_index(j);
            let right = if a == b { pb } else { zero() };
            witness_at(self.n, self.legs, a, j, &pa, &right)
        })))
    }

    /// Applies a linear word to a coefficient vector.
    pub fn apply(&self, v: &[C<T>]) -> Result<Vec<C<T>>> {
        if self.is_antilinear() {
            return Err(Error::Antilinear("vector application of a word"));
        }
        let mut out = vec![zero(); v.len()];
        for (j, x) in v.iter().enumerate() {
            let (i, p) = self.apply_index(j);
            out[i] = x.clone() * p;
        }
        Ok(out)
    }
}
