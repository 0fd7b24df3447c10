use std::cmp::Ordering;

use crate::engine::legs::{dim, LegMap};
use crate::engine::{witness_at, Comparison, Functional, LegWord, MonomialOperator};
use crate::error::{Error, Result};
use crate::scalar::{is_zero, modulus, one, within, zero, Real, C};

/// Coordinate-list matrix on `H^{⊗legs}`, sorted by `(row, col)` with no
/// stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator<T> {
    n: usize,
    legs: usize,
    entries: Vec<(usize, usize, C<T>)>,
}

impl<T: Real> SparseOperator<T> {
    /// Sums duplicate coordinates and drops exact zeros.
    pub fn from_triplets(
        n: usize,
        legs: usize,
        triplets: impl IntoIterator<Item = (usize, usize, C<T>)>,
    ) -> Result<Self> {
        let d = dim(n, legs);
        let mut raw: Vec<(usize, usize, C<T>)> = triplets.into_iter().collect();
        if let Some(&(r, c, _)) = raw.iter().find(|(r, c, _)| *r >= d || *c >= d) {
            return Err(Error::ShapeMismatch(format!(
                "entry ({r}, {c}) outside a {d}-dimensional space"
            )));
        }
        raw.sort_unstable_by_key(|e| (e.0, e.1));
        let mut entries: Vec<(usize, usize, C<T>)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = last.2.clone() + v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| !is_zero(&e.2));
        Ok(Self { n, legs, entries })
    }

    pub fn zero(n: usize, legs: usize) -> Self {
        Self {
            n,
            legs,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize, legs: usize) -> Self {
        Self {
            n,
            legs,
            entries: (0..dim(n, legs)).map(|i| (i, i, one())).collect(),
        }
    }

    /// Diagonal operator with the given diagonal.
    pub fn diagonal(n: usize, legs: usize, diag: &[C<T>]) -> Result<Self> {
        Self::from_triplets(
            n,
            legs,
            diag.iter().enumerate().map(|(i, v)| (i, i, v.clone())),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn dim(&self) -> usize {
        dim(self.n, self.legs)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, C<T>)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C<T> {
        match self
            .entries
            .binary_search_by(|e| (e.0, e.1).cmp(&(row, col)))
        {
            Ok(k) => self.entries[k].2.clone(),
            Err(_) => zero(),
        }
    }

    fn row_range(&self, row: usize) -> std::ops::Range<usize> {
        let lo = self.entries.partition_point(|e| e.0 < row);
        let hi = self.entries.partition_point(|e| e.0 <= row);
        lo..hi
    }

    /// Drops entries of modulus at most `floor`.
    pub fn pruned(&self, floor: &T) -> Self {
        Self {
            n: self.n,
            legs: self.legs,
            entries: self
                .entries
                .iter()
                .filter(|e| !within(&e.2, floor))
                .cloned()
                .collect(),
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.legs != other.legs || self.n != other.n {
            return Err(Error::LegMismatch {
                left: self.legs,
                right: other.legs,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Self::from_triplets(
            self.n,
            self.legs,
            self.entries.iter().chain(&other.entries).cloned(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-one::<T>()))
    }

    pub fn scale(&self, c: &C<T>) -> Self {
        Self::from_triplets(
            self.n,
            self.legs,
            self.entries
                .iter()
                .map(|(r, col, v)| (*r, *col, v.clone() * c.clone())),
        )
        .expect("same shape")
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = Vec::new();
        for (r, k, a) in &self.entries {
            for (_, c, b) in &other.entries[other.row_range(*k)] {
                out.push((*r, *c, a.clone() * b.clone()));
            }
        }
        Self::from_triplets(self.n, self.legs, out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_triplets(
            self.n,
            self.legs,
            self.entries.iter().map(|(r, c, v)| (*c, *r, v.conj())),
        )
        .expect("same shape")
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(
                "tensor across different groups".into(),
            ));
        }
        let db = other.dim();
        let mut out = Vec::with_capacity(self.nnz() * other.nnz());
        for (ra, ca, a) in &self.entries {
            for (rb, cb, b) in &other.entries {
                out.push((ra * db + rb, ca * db + cb, a.clone() * b.clone()));
            }
        }
        Self::from_triplets(self.n, self.legs + other.legs, out)
    }

    /// Leg-notation embedding on `positions` of a `total`-leg space.
    pub fn embed(&self, positions: &[usize], total: usize) -> Result<Self> {
        if positions.len() != self.legs {
            return Err(Error::BadLegSpec(format!(
                "{} positions for a {}-leg operator",
                positions.len(),
                self.legs
            )));
        }
        let map = LegMap::new(self.n, positions, total)?;
        let bases = map.bases();
        let mut out = Vec::with_capacity(self.nnz() * bases.len());
        for base in &bases {
            for (r, c, v) in &self.entries {
                out.push((base + map.offset(*r), base + map.offset(*c), v.clone()));
            }
        }
        Self::from_triplets(self.n, total, out)
    }

    /// `M · self`
    pub fn left_mul_monomial(&self, m: &MonomialOperator<T>) -> Result<Self> {
        self.monomial_shape(m)?;
        Self::from_triplets(
            self.n,
            self.legs,
            self.entries
                .iter()
                .map(|(r, c, v)| (m.image(*r), *c, v.clone() * m.phase(*r))),
        )
    }

    /// `self · M`
    pub fn right_mul_monomial(&self, m: &MonomialOperator<T>) -> Result<Self> {
        self.monomial_shape(m)?;
        Self::from_triplets(
            self.n,
            self.legs,
            self.entries.iter().map(|(r, c, v)| {
                let j = m.preimage(*c);
                (*r, j, v.clone() * m.phase(j))
            }),
        )
    }

    fn monomial_shape(&self, m: &MonomialOperator<T>) -> Result<()> {
        if m.legs() != self.legs || m.n() != self.n {
            return Err(Error::LegMismatch {
                left: m.legs(),
                right: self.legs,
            });
        }
        if m.is_antilinear() {
            return Err(Error::Antilinear("product with a sparse operator"));
        }
        Ok(())
    }

    /// `M · self · M*`, also defined for antiunitary `M`.
    pub fn conjugate(&self, m: &MonomialOperator<T>) -> Result<Self> {
        if m.legs() != self.legs || m.n() != self.n {
            return Err(Error::LegMismatch {
                left: m.legs(),
                right: self.legs,
            });
        }
        let anti = m.is_antilinear();
        Self::from_triplets(
            self.n,
            self.legs,
            self.entries.iter().map(|(r, c, v)| {
                let v = if anti { v.conj() } else { v.clone() };
                (
                    m.image(*r),
                    m.image(*c),
                    v * m.phase(*r) * m.phase(*c).conj(),
                )
            }),
        )
    }

    /// `W · self · W*` for a lazily evaluated word.
    pub fn conjugate_word(&self, w: &LegWord<T>) -> Result<Self> {
        if w.legs() != self.legs || w.n() != self.n {
            return Err(Error::LegMismatch {
                left: w.legs(),
                right: self.legs,
            });
        }
        Self::from_triplets(
            self.n,
            self.legs,
            self.entries.iter().map(|(r, c, v)| {
                let (ri, rp) = w.apply_index(*r);
                let (ci, cp) = w.apply_index(*c);
                (ri, ci, v.clone() * rp * cp.conj())
            }),
        )
    }

    /// `W · self` for a lazily evaluated word.
    pub fn left_mul_word(&self, w: &LegWord<T>) -> Result<Self> {
        if w.legs() != self.legs {
            return Err(Error::LegMismatch {
                left: w.legs(),
                right: self.legs,
            });
        }
        Self::from_triplets(
            self.n,
            self.legs,
            self.entries.iter().map(|(r, c, v)| {
                let (ri, rp) = w.apply_index(*r);
                (ri, *c, v.clone() * rp)
            }),
        )
    }

    pub fn trace(&self) -> C<T> {
        self.entries
            .iter()
            .filter(|e| e.0 == e.1)
            .fold(zero(), |acc, e| acc + e.2.clone())
    }

    pub fn apply(&self, v: &[C<T>]) -> Vec<C<T>> {
        let mut out = vec![zero(); v.len()];
        for (r, c, x) in &self.entries {
            out[*r] = out[*r].clone() + x.clone() * v[*c].clone();
        }
        out
    }

    /// Applies `self` placed on `positions` of a `total`-leg space without
    /// materializing the embedding.
    pub fn apply_embedded(
        &self,
        positions: &[usize],
        total: usize,
        v: &[C<T>],
    ) -> Result<Vec<C<T>>> {
        let map = LegMap::new(self.n, positions, total)?;
        if map.inner_legs() != self.legs || v.len() != dim(self.n, total) {
            return Err(Error::BadLegSpec("embedded application shape".into()));
        }
        let mut out = vec![zero(); v.len()];
        for base in map.bases() {
            for (r, c, x) in &self.entries {
                let (ri, ci) = (base + map.offset(*r), base + map.offset(*c));
                out[ri] = out[ri].clone() + x.clone() * v[ci].clone();
            }
        }
        Ok(out)
    }

    /// Partial contraction: `omega` on `positions`, identity on the rest.
    /// The result acts on the remaining legs in their original order.
    pub fn slice(&self, omega: &Functional<T>, positions: &[usize]) -> Result<Self> {
        if omega.legs() != positions.len() {
            return Err(Error::LegMismatch {
                left: omega.legs(),
                right: positions.len(),
            });
        }
        let map = LegMap::new(self.n, positions, self.legs)?;
        let rho = omega.density();
        let out = self.entries.iter().filter_map(|(r, c, v)| {
            let w = rho.get(map.inner(*c), map.inner(*r));
            (!is_zero(&w)).then(|| (map.outer(*r), map.outer(*c), v.clone() * w))
        });
        Self::from_triplets(self.n, self.legs - positions.len(), out)
    }

    /// Entrywise comparison; the witness is the first entry in row-major
    /// order whose difference exceeds `tol`.
    pub fn compare(&self, other: &Self, tol: &T) -> Result<Comparison> {
        self.check_shape(other)?;
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut max_error = 0.0f64;
        let mut witness = None;
        let z = zero::<T>();
        while i < a.len() || j < b.len() {
            let order = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => (x.0, x.1).cmp(&(y.0, y.1)),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            let (r, c, lv, rv) = match order {
                Ordering::Less => {
                    i += 1;
                    (a[i - 1].0, a[i - 1].1, &a[i - 1].2, &z)
                }
                Ordering::Greater => {
                    j += 1;
                    (b[j - 1].0, b[j - 1].1, &z, &b[j - 1].2)
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (a[i - 1].0, a[i - 1].1, &a[i - 1].2, &b[j - 1].2)
                }
            };
            let diff = lv.clone() - rv.clone();
            max_error = max_error.max(modulus(&diff));
            if witness.is_none() && !within(&diff, tol) {
                witness = Some(witness_at(self.n, self.legs, r, c, lv, rv));
            }
        }
        Ok(Comparison { max_error, witness })
    }
}
