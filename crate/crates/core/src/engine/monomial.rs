use std::fmt;

use crate::engine::legs::{decode, dim, encode, LegMap};
use crate::engine::{witness_at, Comparison, SparseOperator};
use crate::error::{Error, Result};
use crate::scalar::{one, zero, Real, C};

/// A scaled permutation of basis tuples: `M δ_j = c_j δ_{π(j)}`, extended
/// linearly or, when `antilinear` is set, antilinearly.
#[derive(Clone, PartialEq)]
pub struct MonomialOperator<T> {
    n: usize,
    legs: usize,
    image: Vec<usize>,
    preimage: Vec<usize>,
    phases: Option<Vec<C<T>>>,
    antilinear: bool,
}

impl<T> fmt::Debug for MonomialOperator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonomialOperator")
            .field("n", &self.n)
            .field("legs", &self.legs)
            .field("antilinear", &self.antilinear)
            .field("phased", &self.phases.is_some())
            .finish()
    }
}

impl<T: Real> MonomialOperator<T> {
    /// Builds from an explicit index map, verifying that it is a bijection
    /// and that every phase is unimodular.
    pub fn from_image(
        n: usize,
        legs: usize,
        image: Vec<usize>,
        phases: Option<Vec<C<T>>>,
        antilinear: bool,
    ) -> Result<Self> {
        let d = dim(n, legs);
        if image.len() != d {
            return Err(Error::ShapeMismatch(format!(
                "index map has {} entries, expected {d}",
                image.len()
            )));
        }
        let mut preimage = vec![usize::MAX; d];
        for (j, &i) in image.iter().enumerate() {
            if i >= d {
                return Err(Error::ShapeMismatch(format!("image {i} out of range")));
            }
            if preimage[i] != usize::MAX {
                return Err(Error::ShapeMismatch(format!(
                    "index map is not a bijection: {:?} is hit twice",
                    decode(n, legs, i)
                )));
            }
            preimage[i] = j;
        }
        if let Some(p) = &phases {
            if p.len() != d {
                return Err(Error::ShapeMismatch("phase vector length".into()));
            }
            if let Some(j) = p.iter().position(|c| {
                let m = c.norm_sqr().to_f64().unwrap_or(f64::NAN);
                m.is_nan() || (m - 1.0).abs() > 1e-12
            }) {
                return Err(Error::ShapeMismatch(format!(
                    "phase at {:?} is not unimodular",
                    decode(n, legs, j)
                )));
            }
        }
        Ok(Self {
            n,
            legs,
            image,
            preimage,
            phases,
            antilinear,
        })
    }

    /// Builds from a map on tuples: `δ_x ↦ δ_{f(x)}`.
    pub fn from_tuple_map(
        n: usize,
        legs: usize,
        f: impl Fn(&[usize]) -> Vec<usize>,
    ) -> Result<Self> {
        let image = (0..dim(n, legs))
            .map(|j| encode(n, &f(&decode(n, legs, j))))
            .collect();
        Self::from_image(n, legs, image, None, false)
    }

    pub fn identity(n: usize, legs: usize) -> Self {
        let image: Vec<usize> = (0..dim(n, legs)).collect();
        Self {
            n,
            legs,
            preimage: image.clone(),
            image,
            phases: None,
            antilinear: false,
        }
    }

    /// Swaps legs `i` and `j` of an `m`-leg space.
    pub fn flip(n: usize, i: usize, j: usize, m: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > m || j > m {
            return Err(Error::BadLegSpec(format!("flip({i},{j}) on {m} legs")));
        }
        Self::from_tuple_map(n, m, |t| {
            let mut t = t.to_vec();
            t.swap(i - 1, j - 1);
            t
        })
    }

    /// Antilinear operator `δ_j ↦ δ_{π(j)}` with coefficients conjugated.
    pub fn antilinear_from_tuple_map(
        n: usize,
        legs: usize,
        f: impl Fn(&[usize]) -> Vec<usize>,
    ) -> Result<Self> {
        let mut m = Self::from_tuple_map(n, legs, f)?;
        m.antilinear = true;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn dim(&self) -> usize {
        self.image.len()
    }

    pub fn is_antilinear(&self) -> bool {
        self.antilinear
    }

    pub fn has_phases(&self) -> bool {
        self.phases.is_some()
    }

    #[inline]
    pub fn image(&self, j: usize) -> usize {
        self.image[j]
    }

    #[inline]
    pub fn preimage(&self, i: usize) -> usize {
        self.preimage[i]
    }

    #[inline]
    pub fn phase(&self, j: usize) -> C<T> {
        match &self.phases {
            Some(p) => p[j].clone(),
            None => one(),
        }
    }

    /// Same operator with the phase at input tuple `j` replaced.
    pub fn with_phase(&self, j: usize, c: C<T>) -> Result<Self> {
        let mut phases = self
            .phases
            .clone()
            .unwrap_or_else(|| vec![one(); self.dim()]);
        phases[j] = c;
        Self::from_image(
            self.n,
            self.legs,
            self.image.clone(),
            Some(phases),
            self.antilinear,
        )
    }

    fn check_legs(&self, other: &Self) -> Result<()> {
        if self.legs != other.legs || self.n != other.n {
            return Err(Error::LegMismatch {
                left: self.legs,
                right: other.legs,
            });
        }
        Ok(())
    }

    /// `self ∘ other`. Antilinearity combines by parity; the phases of
    /// `other` are conjugated when `self` is antilinear.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_legs(other)?;
        let image: Vec<usize> = other.image.iter().map(|&k| self.image[k]).collect();
        let phases = if self.phases.is_none() && other.phases.is_none() {
            None
        } else {
            Some(
                (0..self.dim())
                    .map(|j| {
                        let inner = other.phase(j);
                        let inner = if self.antilinear { inner.conj() } else { inner };
                        inner * self.phase(other.image[j])
                    })
                    .collect(),
            )
        };
        let preimage = {
            let mut p = vec![0; image.len()];
            for (j, &i) in image.iter().enumerate() {
                p[i] = j;
            }
            p
        };
        Ok(Self {
            n: self.n,
            legs: self.legs,
            image,
            preimage,
            phases,
            antilinear: self.antilinear ^ other.antilinear,
        })
    }

    /// Inverse map with conjugated phases (linear case) or the inverse itself
    /// (antiunitary case); both are the Hilbert-space adjoint.
    pub fn adjoint(&self) -> Self {
        let phases = self.phases.as_ref().map(|p| {
            let mut q = vec![zero(); p.len()];
            for (j, c) in p.iter().enumerate() {
                q[self.image[j]] = if self.antilinear { c.clone() } else { c.conj() };
            }
            q
        });
        Self {
            n: self.n,
            legs: self.legs,
            image: self.preimage.clone(),
            preimage: self.image.clone(),
            phases,
            antilinear: self.antilinear,
        }
    }

    /// `self ⊗ other`; both factors must share linearity.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.antilinear != other.antilinear {
            return Err(Error::Antilinear(
                "tensor of a linear and an antilinear operator",
            ));
        }
        if self.n != other.n {
            return Err(Error::ShapeMismatch(
                "tensor across different groups".into(),
            ));
        }
        let db = other.dim();
        let mut image = Vec::with_capacity(self.dim() * db);
        for a in 0..self.dim() {
            for b in 0..db {
                image.push(self.image[a] * db + other.image[b]);
            }
        }
        let phases = if self.phases.is_none() && other.phases.is_none() {
            None
        } else {
            let mut p = Vec::with_capacity(image.len());
            for a in 0..self.dim() {
                for b in 0..db {
                    p.push(self.phase(a) * other.phase(b));
                }
            }
            Some(p)
        };
        Self::from_image(
            self.n,
            self.legs + other.legs,
            image,
            phases,
            self.antilinear,
        )
    }

    /// Leg-notation embedding: `self` on `positions` (1-based), identity on
    /// the other legs of a `total`-leg space.
    pub fn embed(&self, positions: &[usize], total: usize) -> Result<Self> {
        if positions.len() != self.legs {
            return Err(Error::BadLegSpec(format!(
                "{} positions for a {}-leg operator",
                positions.len(),
                self.legs
            )));
        }
        if self.antilinear && positions.len() != total {
            return Err(Error::Antilinear("embedding next to identity legs"));
        }
        let map = LegMap::new(self.n, positions, total)?;
        let d = dim(self.n, total);
        let mut image = Vec::with_capacity(d);
        let mut phases = self.phases.as_ref().map(|_| Vec::with_capacity(d));
        for j in 0..d {
            let inner = map.inner(j);
            image.push(map.substitute(j, self.image[inner]));
            if let Some(p) = phases.as_mut() {
                p.push(self.phase(inner));
            }
        }
        Self::from_image(self.n, total, image, phases, self.antilinear)
    }

    /// Applies to a coefficient vector.
    pub fn apply(&self, v: &[C<T>]) -> Vec<C<T>> {
        let mut out = vec![zero(); v.len()];
        for (j, x) in v.iter().enumerate() {
            let x = if self.antilinear { x.conj() } else { x.clone() };
            out[self.image[j]] = x * self.phase(j);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        !self.antilinear
            && self.image.iter().enumerate().all(|(j, &i)| i == j)
            && (0..self.dim()).all(|j| self.phase(j) == one())
    }

    pub fn to_sparse(&self) -> Result<SparseOperator<T>> {
        if self.antilinear {
            return Err(Error::Antilinear("sparse matrices are linear"));
        }
        SparseOperator::from_triplets(
            self.n,
            self.legs,
            (0..self.dim()).map(|j| (self.image[j], j, self.phase(j))),
        )
    }

    /// Exact comparison of index maps, phases and linearity.
    pub fn compare(&self, other: &Self) -> Result<Comparison> {
        self.check_legs(other)?;
        if self.antilinear != other.antilinear {
            return Err(Error::Antilinear(
                "comparing a linear with an antilinear operator",
            ));
        }
        let bad = (0..self.dim())
            .find(|&j| self.image[j] != other.image[j] || self.phase(j) != other.phase(j));
        Ok(Comparison::exact(bad.map(|j| {
            let right = if self.image[j] == other.image[j] {
                other.phase(j)
            } else {
                zero()
            };
            witness_at(self.n, self.legs, self.image[j], j, &self.phase(j), &right)
        })))
    }
}
