//! The quantum double `D(G)` and its dual `N ⊗ N̂`.
//!
//! Four-leg operators are read as two pair-legs `(1,2)` and `(3,4)`; six-leg
//! operators as `(1,2)`, `(3,4)`, `(5,6)`. The algebra `N_D` is spanned by
//! `Π(δ_p ⊗ δ_g)`, indexed `p·n + g`, and the dual double by `L_a ⊗ μ_b`,
//! indexed `a·n + b`. In both cases a coordinate vector is the same thing
//! as a [`PairFunction`].
//!
//! Closed forms on basis vectors:
//!
//! | operator | `δ_(a,b)` or `δ_(a,b,c,d)` goes to |
//! |---|---|
//! | `Z` | `δ_(b⁻¹ab, b)` |
//! | `T` | `δ_(ab, b)` |
//! | `W_m` | `δ_(bc⁻¹b⁻¹a, b, bcb⁻¹, bd)` |
//! | `W_D` | `δ_(d⁻¹ad, d⁻¹b, ac, d)` |
//! | `R` | `δ_(a, b, aca⁻¹, ad)` |

use std::sync::Arc;

use crate::engine::{
    pair_legs, Basis, Comparison, LegWord, MonomialOperator, OperatorBasis, SparseOperator,
    TensorBasis,
};
use crate::error::{Error, Result};
use crate::grid::PairFunction;
use crate::group::{FiniteGroup, GroupFunction};
use crate::quantum_group::{inner, QuantumGroupPair};
use crate::scalar::{is_zero, one, zero, Real, C};

type Mono<T> = Arc<MonomialOperator<T>>;

/// Left and right sides of an identity evaluated on one vector.
pub type VectorPair<T> = (Vec<C<T>>, Vec<C<T>>);

/// A pair of words expected to be equal, with a short formula.
#[derive(Clone, Debug)]
pub struct WordIdentity<T> {
    pub name: &'static str,
    pub formula: &'static str,
    pub lhs: LegWord<T>,
    pub rhs: LegWord<T>,
}

impl<T: Real> WordIdentity<T> {
    pub fn check(&self) -> Result<Comparison> {
        self.lhs.compare(&self.rhs)
    }
}

#[derive(Clone, Debug)]
pub struct DoubleContext<T> {
    pair: QuantumGroupPair<T>,
    z: Mono<T>,
    t: Mono<T>,
    w_m: Mono<T>,
    w_d: Mono<T>,
    r: Mono<T>,
    pair_flip: Mono<T>,
    pi_basis: Arc<OperatorBasis<T>>,
    lm_basis: Arc<OperatorBasis<T>>,
    pi_pi: TensorBasis<T>,
    pi_lm: TensorBasis<T>,
}

/// Pentagon on pair-legs of width `k`: `X₁₂X₁₃X₂₃ = X₂₃X₁₂`.
pub fn pentagon_blocks<T: Real>(x: &Mono<T>, k: usize) -> Result<Comparison> {
    let block = |i: usize| (k * (i - 1) + 1..=k * i).collect::<Vec<_>>();
    let at = |i: usize, j: usize| [block(i), block(j)].concat();
    let n = x.n();
    let lhs = LegWord::new(n, 3 * k)
        .then(x, &at(1, 2))?
        .then(x, &at(1, 3))?
        .then(x, &at(2, 3))?;
    let rhs = LegWord::new(n, 3 * k)
        .then(x, &at(2, 3))?
        .then(x, &at(1, 2))?;
    lhs.compare(&rhs)
}

impl<T: Real> DoubleContext<T> {
    pub fn new(pair: QuantumGroupPair<T>) -> Result<Self> {
        let g = pair.group().clone();
        let n = g.order();
        let ctx = {
            let (w, w_hat) = (pair.w(), pair.w_hat());
            let jj = pair.j_hat().compose(pair.j())?;
            let jj_rev = pair.j().compose(pair.j_hat())?;
            let outer = jj.tensor(&jj)?;
            let inner_r = jj.tensor(&jj_rev)?;
            let t = outer.compose(&w.adjoint())?.compose(&inner_r)?;
            let z = w.compose(&t)?;
            let z = Arc::new(z);
            let z_star = Arc::new(z.adjoint());
            let w_m = LegWord::new(n, 4)
                .then(w, &[1, 3])?
                .then(&z_star, &[3, 4])?
                .then(w_hat, &[2, 4])?
                .then(&z, &[3, 4])?
                .materialize()?;
            let w_d = LegWord::new(n, 4)
                .then(&z_star, &[1, 2])?
                .then(w, &[2, 4])?
                .then(&z, &[1, 2])?
                .then(w_hat, &[1, 3])?
                .materialize()?;
            let r = LegWord::new(n, 4)
                .then(&z_star, &[3, 4])?
                .then(w_hat, &[1, 4])?
                .then(&z, &[3, 4])?
                .materialize()?;
            let pair_flip = MonomialOperator::flip(n, 1, 3, 4)?
                .compose(&MonomialOperator::flip(n, 2, 4, 4)?)?;

            let pi_basis = Arc::new(OperatorBasis::new(
                "crossed-product",
                (0..n * n)
                    .map(|k| pi_delta(&g, k / n, k % n))
                    .collect::<Result<_>>()?,
            )?);
            let lm_basis = Arc::new(OperatorBasis::new(
                "left-regular ⊗ multiplication",
                (0..n * n)
                    .map(|k| pair.lmu_basis().element(k))
                    .collect::<Vec<_>>(),
            )?);
            Self {
                z,
                t: Arc::new(t),
                w_m: Arc::new(w_m),
                w_d: Arc::new(w_d),
                r: Arc::new(r),
                pair_flip: Arc::new(pair_flip),
                pi_pi: TensorBasis::new(
                    "crossed-product ⊗ crossed-product",
                    pi_basis.clone(),
                    pi_basis.clone(),
                ),
                pi_lm: TensorBasis::new(
                    "crossed-product ⊗ dual double",
                    pi_basis.clone(),
                    lm_basis.clone(),
                ),
                pi_basis,
                lm_basis,
                pair,
            }
        };
        for (name, check) in ctx.construction_checks()? {
            if let Some(w) = check.witness {
                return Err(Error::IdentityViolation {
                    name: name.to_string(),
                    witness: format!("row {:?} col {:?}", w.row, w.col),
                });
            }
        }
        Ok(ctx)
    }

    pub fn from_group(group: &FiniteGroup) -> Result<Self> {
        Self::new(QuantumGroupPair::new(group)?)
    }

    /// Compositional operators against their closed forms, and `W_D`
    /// against the flipped `W_m*`.
    pub fn construction_checks(&self) -> Result<Vec<(&'static str, Comparison)>> {
        let g = self.group();
        let n = g.order();
        let z = MonomialOperator::from_tuple_map(n, 2, |x| vec![g.conj_by(x[0], x[1]), x[1]])?;
        let w_m = MonomialOperator::from_tuple_map(n, 4, |x| {
            let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
            let bcb = g.mul(g.mul(b, c), g.inv(b));
            vec![g.mul(g.inv(bcb), a), b, bcb, g.mul(b, d)]
        })?;
        let w_d = MonomialOperator::from_tuple_map(n, 4, |x| {
            let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
            vec![g.conj_by(a, d), g.mul(g.inv(d), b), g.mul(a, c), d]
        })?;
        let flipped = self
            .pair_flip
            .compose(&self.w_m.adjoint())?
            .compose(&self.pair_flip)?;
        Ok(vec![
            ("Z closed form", self.z.compare(&z)?),
            ("W_m closed form", self.w_m.compare(&w_m)?),
            ("W_D closed form", self.w_d.compare(&w_d)?),
            ("W_D = Σ₁₃Σ₂₄W_m*Σ₂₄Σ₁₃", self.w_d.compare(&flipped)?),
        ])
    }

    pub fn pair(&self) -> &QuantumGroupPair<T> {
        &self.pair
    }

    pub fn group(&self) -> &FiniteGroup {
        self.pair.group()
    }

    pub fn n(&self) -> usize {
        self.pair.n()
    }

    pub fn tol(&self) -> &T {
        self.pair.tol()
    }

    pub fn z(&self) -> &Mono<T> {
        &self.z
    }

    /// `T = (ĴJ⊗ĴJ)W*(ĴJ⊗JĴ)`, with `Z = WT`.
    pub fn t(&self) -> &Mono<T> {
        &self.t
    }

    pub fn w_m(&self) -> &Mono<T> {
        &self.w_m
    }

    pub fn w_d(&self) -> &Mono<T> {
        &self.w_d
    }

    /// `R = Z₃₄*Ŵ₁₄Z₃₄`
    pub fn r(&self) -> &Mono<T> {
        &self.r
    }

    /// `Σ₁₃Σ₂₄`
    pub fn pair_flip(&self) -> &Mono<T> {
        &self.pair_flip
    }

    pub fn pi_basis(&self) -> &Arc<OperatorBasis<T>> {
        &self.pi_basis
    }

    pub fn lm_basis(&self) -> &Arc<OperatorBasis<T>> {
        &self.lm_basis
    }

    pub fn pi_pi_basis(&self) -> &TensorBasis<T> {
        &self.pi_pi
    }

    pub fn pi_lm_basis(&self) -> &TensorBasis<T> {
        &self.pi_lm
    }

    /// `π(f) = Z*(1⊗L_f)Z`
    pub fn pi(&self, f: &GroupFunction<T>) -> Result<SparseOperator<T>> {
        self.pair
            .left_regular(f)?
            .embed(&[2], 2)?
            .conjugate(&self.z.adjoint())
    }

    /// `π′(k) = μ_k ⊗ 1`
    pub fn pi_prime(&self, k: &GroupFunction<T>) -> Result<SparseOperator<T>> {
        self.pair.multiplication(k)?.embed(&[1], 2)
    }

    /// `Π(μ_k ⊗ L_f) = π′(k)π(f)`
    pub fn big_pi(&self, k: &GroupFunction<T>, f: &GroupFunction<T>) -> Result<SparseOperator<T>> {
        self.pi_prime(k)?.mul(&self.pi(f)?)
    }

    /// `Π` extended linearly: `Σ K(p, g) Π(δ_p ⊗ δ_g)`.
    pub fn big_pi_grid(&self, k: &PairFunction<T>) -> Result<SparseOperator<T>> {
        self.pi_basis.combine(k.values())
    }

    /// Crossed-product coordinates of `x`.
    pub fn pi_coords(&self, x: &SparseOperator<T>) -> Result<PairFunction<T>> {
        PairFunction::from_values(self.n(), self.pi_basis.expand(x, self.tol())?)
    }

    /// `Σ A(a, b) L_a ⊗ μ_b`
    pub fn dual_element(&self, a: &PairFunction<T>) -> Result<SparseOperator<T>> {
        self.lm_basis.combine(a.values())
    }

    pub fn dual_coords(&self, y: &SparseOperator<T>) -> Result<PairFunction<T>> {
        PairFunction::from_values(self.n(), self.lm_basis.expand(y, self.tol())?)
    }

    /// `Δ_D(x) = W_D*(1⊗1⊗x)W_D`
    pub fn delta_d(&self, x: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        self.pi_coords(x)?;
        self.delta_d_unchecked(x)
    }

    pub(crate) fn delta_d_unchecked(&self, x: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        x.embed(&[3, 4], 4)?.conjugate(&self.w_d.adjoint())
    }

    /// `Δ_D^cop(x) = Σ₁₃Σ₂₄ Δ_D(x) Σ₁₃Σ₂₄`
    pub fn delta_d_cop(&self, x: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        self.delta_d(x)?.conjugate(&self.pair_flip)
    }

    /// `(Δ_D ⊗ id)(Y) = W_D*₁₂₃₄ Y₃₄₅₆ W_D₁₂₃₄` on a 4-leg `Y`.
    pub fn delta_d_left(&self, y: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        y.embed(&[3, 4, 5, 6], 6)?
            .conjugate(&self.w_d.adjoint().embed(&[1, 2, 3, 4], 6)?)
    }

    /// `(id ⊗ Δ_D)(Y) = W_D*₃₄₅₆ Y₁₂₅₆ W_D₃₄₅₆` on a 4-leg `Y`.
    pub fn delta_d_right(&self, y: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        y.embed(&[1, 2, 5, 6], 6)?
            .conjugate(&self.w_d.adjoint().embed(&[3, 4, 5, 6], 6)?)
    }

    /// `(Δ_D⊗id)(Y)v` and `(id⊗Δ_D)(Y)v` for a 4-leg `Y`, each optionally
    /// multiplied on the left by `twist` on the pair-legs that were split.
    /// No 6-leg matrix is formed.
    pub fn iterated_coproducts_on_vector(
        &self,
        y: &SparseOperator<T>,
        twist: Option<&Mono<T>>,
        v: &[C<T>],
    ) -> Result<VectorPair<T>> {
        let n = self.n();
        let w_ds = Arc::new(self.w_d.adjoint());
        let side = |outer: &[usize], inner: &[usize]| -> Result<Vec<C<T>>> {
            let u = LegWord::new(n, 6).then(&self.w_d, outer)?.apply(v)?;
            let u = y.apply_embedded(inner, 6, &u)?;
            let mut word = LegWord::new(n, 6);
            if let Some(r) = twist {
                word = word.then(r, outer)?;
            }
            word.then(&w_ds, outer)?.apply(&u)
        };
        Ok((
            side(&[1, 2, 3, 4], &[3, 4, 5, 6])?,
            side(&[3, 4, 5, 6], &[1, 2, 5, 6])?,
        ))
    }

    /// `Δ_D(Π(δ_p⊗δ_g)) = Σ_{st=p} Π(δ_s⊗δ_g) ⊗ Π(δ_t⊗δ_g)`
    pub fn delta_d_closed_form(&self, p: usize, g: usize) -> Result<SparseOperator<T>> {
        let grp = self.group();
        let n = self.n();
        let mut coeffs = vec![zero(); n.pow(4)];
        for s in grp.elements() {
            let t = grp.mul(grp.inv(s), p);
            coeffs[(s * n + g) * n * n + t * n + g] = one();
        }
        self.pi_pi.combine(&coeffs)
    }

    /// `φ_D(Π(k⊗f)) = φ̂(k)φ(f)`, on crossed-product coordinates.
    pub fn haar_d(&self, k: &PairFunction<T>) -> C<T> {
        let e = self.group().identity();
        self.group()
            .elements()
            .fold(zero(), |acc, p| acc + k.at(p, e))
    }

    /// `φ̂_D(a⊗b) = φ(a)ψ̂(b)`, on dual-double coordinates.
    pub fn haar_d_dual(&self, a: &PairFunction<T>) -> C<T> {
        let g = self.group();
        let e = g.identity();
        g.elements().fold(zero(), |acc, t| acc + a.at(e, g.inv(t)))
    }

    pub fn haar_d_op(&self, x: &SparseOperator<T>) -> Result<C<T>> {
        Ok(self.haar_d(&self.pi_coords(x)?))
    }

    /// Largest deviation from `(id⊗φ_D)Δ_D(x) = φ_D(x)1` over the
    /// crossed-product delta basis.
    pub fn left_invariance_error(&self) -> Result<f64> {
        let n = self.n();
        let unit = SparseOperator::identity(n, 2);
        let mut worst = 0.0f64;
        for (k, x) in self.pi_basis.elements().iter().enumerate() {
            let c = self.pi_pi.expand(&self.delta_d_unchecked(x)?, self.tol())?;
            let e = self.group().identity();
            let mut left = vec![zero(); n * n];
            for (i, v) in c.iter().enumerate() {
                let (l, r) = (i / (n * n), i % (n * n));
                if r % n == e {
                    left[l] = left[l].clone() + v.clone();
                }
            }
            let lhs = self.pi_basis.combine(&left)?;
            let phi = self.haar_d(&PairFunction::delta(n, k / n, k % n));
            worst = worst.max(lhs.compare(&unit.scale(&phi), self.tol())?.max_error);
        }
        Ok(worst)
    }

    /// Largest deviation of `⟨Λ_D(x), Λ_D(y)⟩ = φ_D(y*x)` over the
    /// crossed-product delta basis, with `Λ_D(Π(k⊗f)) = k⊗f`.
    pub fn gns_contract_error(&self) -> Result<f64> {
        let n = self.n();
        let mut worst = 0.0f64;
        for (i, x) in self.pi_basis.elements().iter().enumerate() {
            for (j, y) in self.pi_basis.elements().iter().enumerate() {
                let lx = PairFunction::<T>::delta(n, i / n, i % n);
                let ly = PairFunction::<T>::delta(n, j / n, j % n);
                let lhs = inner(lx.values(), ly.values());
                let rhs = self.haar_d_op(&y.adjoint().mul(x)?)?;
                worst = worst.max(crate::scalar::modulus(&(lhs - rhs)));
            }
        }
        Ok(worst)
    }

    /// `⟨A | K⟩ = Σ_{s,t} A(t⁻¹st, t⁻¹) K(s, t)`
    pub fn pair_double(&self, a: &PairFunction<T>, k: &PairFunction<T>) -> C<T> {
        let g = self.group();
        let mut acc = zero();
        for s in g.elements() {
            for t in g.elements() {
                acc = acc + a.at(g.conj_by(s, t), g.inv(t)) * k.at(s, t);
            }
        }
        acc
    }

    /// `(φ_D ⊗ φ̂_D)[(Π(K)⊗1⊗1) W_D* (1⊗1⊗X_A)]`
    pub fn pair_double_weights(&self, a: &PairFunction<T>, k: &PairFunction<T>) -> Result<C<T>> {
        let n = self.n();
        let e = self.group().identity();
        let x = self
            .dual_element(a)?
            .embed(&[3, 4], 4)?
            .left_mul_monomial(&self.w_d.adjoint())?;
        let y = self.big_pi_grid(k)?.embed(&[1, 2], 4)?.mul(&x)?;
        let c = self.pi_lm.expand(&y, self.tol())?;
        let mut acc = zero();
        for p in 0..n {
            for b in 0..n {
                acc = acc + c[(p * n + e) * n * n + e * n + b].clone();
            }
        }
        Ok(acc)
    }

    /// `F_D(x) = (φ_D ⊗ id)(W_D(x⊗1⊗1))`, returned in dual-double coordinates.
    pub fn fourier_d(&self, x: &SparseOperator<T>) -> Result<PairFunction<T>> {
        self.pi_coords(x)?;
        let n = self.n();
        let e = self.group().identity();
        let y = x.embed(&[1, 2], 4)?.left_mul_monomial(&self.w_d)?;
        let c = self.pi_lm.expand(&y, self.tol())?;
        Ok(PairFunction::from_fn(n, |a, b| {
            (0..n).fold(zero(), |acc, p| {
                acc + c[(p * n + e) * n * n + a * n + b].clone()
            })
        }))
    }

    /// `F_D⁻¹(y) = (id ⊗ φ̂_D)(W_D*(1⊗1⊗y))`, in crossed-product coordinates.
    pub fn fourier_d_inv(&self, y: &SparseOperator<T>) -> Result<PairFunction<T>> {
        self.dual_coords(y)?;
        let n = self.n();
        let e = self.group().identity();
        let x = y
            .embed(&[3, 4], 4)?
            .left_mul_monomial(&self.w_d.adjoint())?;
        let c = self.pi_lm.expand(&x, self.tol())?;
        Ok(PairFunction::from_fn(n, |p, g| {
            (0..n).fold(zero(), |acc, b| {
                acc + c[(p * n + g) * n * n + e * n + b].clone()
            })
        }))
    }

    /// Structural identities among `Z`, `W`, `Ŵ` on four and five legs.
    pub fn structural_identities(&self) -> Result<Vec<WordIdentity<T>>> {
        let n = self.n();
        let (w, wh, z) = (self.pair.w(), self.pair.w_hat(), &self.z);
        let zs = Arc::new(z.adjoint());
        let ident_w = WordIdentity {
            name: "structural-w",
            formula: "Z₃₄Z₁₂*W₂₄Z₁₂Ŵ₁₃ = Ŵ₁₃Z₁₂*W₂₄Z₁₂Z₃₄",
            lhs: LegWord::new(n, 4)
                .then(z, &[3, 4])?
                .then(&zs, &[1, 2])?
                .then(w, &[2, 4])?
                .then(z, &[1, 2])?
                .then(wh, &[1, 3])?,
            rhs: LegWord::new(n, 4)
                .then(wh, &[1, 3])?
                .then(&zs, &[1, 2])?
                .then(w, &[2, 4])?
                .then(z, &[1, 2])?
                .then(z, &[3, 4])?,
        };
        let ident_r1 = WordIdentity {
            name: "structural-r-1",
            formula: "Z₁₂*W₄₅W₂₅Z₁₂Ŵ₁₄ = Ŵ₁₄Z₁₂*W₂₅W₄₅Z₁₂",
            lhs: LegWord::new(n, 5)
                .then(&zs, &[1, 2])?
                .then(w, &[4, 5])?
                .then(w, &[2, 5])?
                .then(z, &[1, 2])?
                .then(wh, &[1, 4])?,
            rhs: LegWord::new(n, 5)
                .then(wh, &[1, 4])?
                .then(&zs, &[1, 2])?
                .then(w, &[2, 5])?
                .then(w, &[4, 5])?
                .then(z, &[1, 2])?,
        };
        let ident_r2 = WordIdentity {
            name: "structural-r-2",
            formula: "Ŵ₃₅Ŵ₁₅Z₃₄*Ŵ₁₄Z₃₄ = Z₃₄*Ŵ₁₄Z₃₄Ŵ₁₅Ŵ₃₅",
            lhs: LegWord::new(n, 5)
                .then(wh, &[3, 5])?
                .then(wh, &[1, 5])?
                .then(&zs, &[3, 4])?
                .then(wh, &[1, 4])?
                .then(z, &[3, 4])?,
            rhs: LegWord::new(n, 5)
                .then(&zs, &[3, 4])?
                .then(wh, &[1, 4])?
                .then(z, &[3, 4])?
                .then(wh, &[1, 5])?
                .then(wh, &[3, 5])?,
        };
        Ok(vec![ident_w, ident_r1, ident_r2])
    }

    /// `(Δ̂_D ⊗ id)(W_m) = W_m,₁₃ W_m,₂₃` written out on six legs.
    pub fn w_m_regular_rep(&self) -> Result<WordIdentity<T>> {
        let n = self.n();
        let (w, wh, z) = (self.pair.w(), self.pair.w_hat(), &self.z);
        let zs = Arc::new(z.adjoint());
        let r_at = |word: LegWord<T>, leg: usize| -> Result<LegWord<T>> {
            word.then(&zs, &[5, 6])?
                .then(wh, &[leg, 6])?
                .then(z, &[5, 6])
        };
        let lhs = LegWord::new(n, 6)
            .then(z, &[3, 2])?
            .then(w, &[1, 5])?
            .then(w, &[3, 5])?;
        let lhs = r_at(r_at(lhs, 2)?, 4)?.then(&zs, &[3, 2])?;
        let rhs = r_at(LegWord::new(n, 6).then(w, &[1, 5])?, 2)?.then(w, &[3, 5])?;
        let rhs = r_at(rhs, 4)?;
        Ok(WordIdentity {
            name: "w-m-regular-representation",
            formula: "(Δ̂_D⊗id)(W_m) = W_m,₁₃W_m,₂₃",
            lhs,
            rhs,
        })
    }

    /// Largest deviation from `T(L_a ⊗ μ_b) = (L_a ⊗ μ_b)T` over delta bases.
    pub fn t_commutant_error(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for x in self.lm_basis.elements() {
            let c = x.conjugate(&self.t)?.compare(x, self.tol())?;
            worst = worst.max(c.max_error);
        }
        Ok(worst)
    }
}

/// `Π(δ_p ⊗ δ_g) δ_(u,v) = [gug⁻¹ = p] δ_(p, gv)`
pub fn pi_delta<T: Real>(g: &FiniteGroup, p: usize, h: usize) -> Result<SparseOperator<T>> {
    let n = g.order();
    let u = g.conj_by(p, h);
    SparseOperator::from_triplets(
        n,
        2,
        g.elements()
            .map(|v| (p * n + g.mul(h, v), u * n + v, one())),
    )
}

/// Convolution in `C(G) ⋊ G` under conjugation:
/// `(F₁ ∗ F₂)(s, g) = Σ_h F₁(s, h) F₂(h⁻¹sh, h⁻¹g)`.
pub fn crossed_product_convolution<T: Real>(
    g: &FiniteGroup,
    f1: &PairFunction<T>,
    f2: &PairFunction<T>,
) -> PairFunction<T> {
    PairFunction::from_fn(g.order(), |s, x| {
        g.elements().fold(zero(), |acc, h| {
            let a = f1.at(s, h);
            if is_zero(&a) {
                return acc;
            }
            acc + a * f2.at(g.conj_by(s, h), g.mul(g.inv(h), x))
        })
    })
}

/// The pair-legs `(i, j)` of a 6-leg space as single legs.
pub fn pairs(i: usize, j: usize) -> Vec<usize> {
    pair_legs(&[i, j])
}
