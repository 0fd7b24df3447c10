//! The dual pair `C*(G)`, `C(G)`: multiplicative unitaries, comultiplications,
//! antipodes, Haar weights, GNS maps, the Fourier transform, the pairing
//! and the predual algebra.
//!
//! `L_a` acts by left convolution, `(L_a ξ)(t) = Σ_z a(z) ξ(z⁻¹t)`, and `μ_b`
//! by multiplication. The multiplicative unitary is `(Wξ)(s,t) = ξ(ts,t)`,
//! so on basis vectors `W δ_{(u,v)} = δ_{(v⁻¹u, v)}`.

use std::sync::Arc;

use rand::Rng;

use crate::engine::{
    Basis, Comparison, Functional, LegWord, MonomialOperator, OperatorBasis, SparseOperator,
    TensorBasis,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupFunction};
use crate::scalar::{from_f64, zero, Real, C};

type Mono<T> = Arc<MonomialOperator<T>>;

#[derive(Clone, Debug)]
pub struct QuantumGroupPair<T> {
    group: FiniteGroup,
    tol: T,
    w: Mono<T>,
    w_hat: Mono<T>,
    v: Mono<T>,
    w_g: Mono<T>,
    sigma: Mono<T>,
    j: Mono<T>,
    j_hat: Mono<T>,
    l_basis: Arc<OperatorBasis<T>>,
    mu_basis: Arc<OperatorBasis<T>>,
    lmu_basis: TensorBasis<T>,
    ll_basis: TensorBasis<T>,
    mumu_basis: TensorBasis<T>,
}

/// Pentagon word pair `X₁₂X₁₃X₂₃` and `X₂₃X₁₂` on three legs.
pub fn pentagon<T: Real>(x: &Mono<T>) -> Result<Comparison> {
    let n = x.n();
    let lhs = LegWord::new(n, 3)
        .then(x, &[1, 2])?
        .then(x, &[1, 3])?
        .then(x, &[2, 3])?;
    let rhs = LegWord::new(n, 3).then(x, &[2, 3])?.then(x, &[1, 2])?;
    lhs.compare(&rhs)
}

impl<T: Real> QuantumGroupPair<T> {
    /// Builds all structure maps with the default tolerance `1e-10`.
    /// Exact scalars should use [`Self::with_tolerance`] with zero instead.
    pub fn new(group: &FiniteGroup) -> Result<Self> {
        Self::with_tolerance(group, T::from_f64(1e-10).unwrap_or_else(T::zero))
    }

    pub fn with_tolerance(group: &FiniteGroup, tol: T) -> Result<Self> {
        let g = group;
        let n = g.order();
        let w = MonomialOperator::from_tuple_map(n, 2, |x| vec![g.mul(g.inv(x[1]), x[0]), x[1]])?;
        let w_g = MonomialOperator::from_tuple_map(n, 2, |x| vec![x[0], g.mul(x[0], x[1])])?;
        let sigma = MonomialOperator::flip(n, 1, 2, 2)?;
        let j = MonomialOperator::antilinear_from_tuple_map(n, 1, |x| vec![g.inv(x[0])])?;
        let j_hat = MonomialOperator::antilinear_from_tuple_map(n, 1, |x| vec![x[0]])?;
        let w_hat = sigma.compose(&w.adjoint())?.compose(&sigma)?;
        let jj = j_hat.tensor(&j_hat)?;
        let v = jj.compose(&w_hat)?.compose(&jj)?;

        let l_basis = OperatorBasis::new(
            "left-regular",
            g.elements()
                .map(|z| left_regular(g, &GroupFunction::delta(n, z)))
                .collect::<Result<_>>()?,
        )?;
        let mu_basis = OperatorBasis::new(
            "multiplication",
            g.elements()
                .map(|z| multiplication(g, &GroupFunction::delta(n, z)))
                .collect::<Result<_>>()?,
        )?;
        let (l_basis, mu_basis) = (Arc::new(l_basis), Arc::new(mu_basis));
        let pair = Self {
            group: g.clone(),
            tol,
            w: Arc::new(w),
            w_hat: Arc::new(w_hat),
            v: Arc::new(v),
            w_g: Arc::new(w_g),
            sigma: Arc::new(sigma),
            j: Arc::new(j),
            j_hat: Arc::new(j_hat),
            lmu_basis: TensorBasis::new(
                "left-regular ⊗ multiplication",
                l_basis.clone(),
                mu_basis.clone(),
            ),
            ll_basis: TensorBasis::new(
                "left-regular ⊗ left-regular",
                l_basis.clone(),
                l_basis.clone(),
            ),
            mumu_basis: TensorBasis::new(
                "multiplication ⊗ multiplication",
                mu_basis.clone(),
                mu_basis.clone(),
            ),
            l_basis,
            mu_basis,
        };
        for (name, check) in pair.structure_checks()? {
            if let Some(w) = check.witness {
                return Err(Error::IdentityViolation {
                    name: name.to_string(),
                    witness: format!("row {:?} col {:?}", w.row, w.col),
                });
            }
        }
        Ok(pair)
    }

    /// The defining operator identities, each as an exact comparison.
    pub fn structure_checks(&self) -> Result<Vec<(&'static str, Comparison)>> {
        let sws = |x: &MonomialOperator<T>| -> Result<MonomialOperator<T>> {
            self.sigma.compose(&x.adjoint())?.compose(&self.sigma)
        };
        let jhat_j = self.j_hat.tensor(&self.j)?;
        Ok(vec![
            ("pentagon W", pentagon(&self.w)?),
            ("pentagon W-hat", pentagon(&self.w_hat)?),
            ("pentagon V", pentagon(&self.v)?),
            ("pentagon W_G", pentagon(&self.w_g)?),
            ("W-hat = ΣW*Σ", self.w_hat.compare(&sws(&self.w)?)?),
            ("W = ΣW_G*Σ", self.w.compare(&sws(&self.w_g)?)?),
            (
                "W* = (Ĵ⊗J)W(Ĵ⊗J)",
                self.w
                    .adjoint()
                    .compare(&jhat_j.compose(&self.w)?.compose(&jhat_j)?)?,
            ),
            (
                "ĴJ = JĴ",
                self.j_hat
                    .compose(&self.j)?
                    .compare(&self.j.compose(&self.j_hat)?)?,
            ),
        ])
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.group.order()
    }

    pub fn tol(&self) -> &T {
        &self.tol
    }

    pub fn w(&self) -> &Mono<T> {
        &self.w
    }

    pub fn w_hat(&self) -> &Mono<T> {
        &self.w_hat
    }

    pub fn v(&self) -> &Mono<T> {
        &self.v
    }

    pub fn w_g(&self) -> &Mono<T> {
        &self.w_g
    }

    pub fn sigma(&self) -> &Mono<T> {
        &self.sigma
    }

    pub fn j(&self) -> &Mono<T> {
        &self.j
    }

    pub fn j_hat(&self) -> &Mono<T> {
        &self.j_hat
    }

    pub fn l_basis(&self) -> &Arc<OperatorBasis<T>> {
        &self.l_basis
    }

    pub fn mu_basis(&self) -> &Arc<OperatorBasis<T>> {
        &self.mu_basis
    }

    /// Basis `L_{δ_g} ⊗ μ_{δ_h}` of `N ⊗ N̂`, indexed `g·n + h`.
    pub fn lmu_basis(&self) -> &TensorBasis<T> {
        &self.lmu_basis
    }

    pub fn ll_basis(&self) -> &TensorBasis<T> {
        &self.ll_basis
    }

    pub fn mumu_basis(&self) -> &TensorBasis<T> {
        &self.mumu_basis
    }

    pub fn left_regular(&self, a: &GroupFunction<T>) -> Result<SparseOperator<T>> {
        left_regular(&self.group, a)
    }

    pub fn multiplication(&self, b: &GroupFunction<T>) -> Result<SparseOperator<T>> {
        multiplication(&self.group, b)
    }

    /// Coordinates of an element of `span{L_g}`.
    pub fn l_coords(&self, x: &SparseOperator<T>) -> Result<GroupFunction<T>> {
        Ok(GroupFunction::new(self.l_basis.expand(x, &self.tol)?))
    }

    /// Coordinates of an element of `span{μ_g}`.
    pub fn mu_coords(&self, y: &SparseOperator<T>) -> Result<GroupFunction<T>> {
        Ok(GroupFunction::new(self.mu_basis.expand(y, &self.tol)?))
    }

    /// `Δ(x) = W*(1⊗x)W` for `x` in the left-regular algebra.
    pub fn comultiply(&self, x: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        self.l_coords(x)?;
        x.embed(&[2], 2)?.conjugate(&self.w.adjoint())
    }

    /// `Δ̂(y) = ΣW(y⊗1)W*Σ` for `y` in the multiplication algebra.
    pub fn comultiply_dual(&self, y: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        self.mu_coords(y)?;
        y.embed(&[1], 2)?.conjugate(&self.sigma.compose(&self.w)?)
    }

    /// Co-opposite: conjugation by the flip.
    pub fn flip(&self, x: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        x.conjugate(&self.sigma)
    }

    /// `S(a)(t) = ∇(t⁻¹) a(t⁻¹)`
    pub fn antipode(&self, a: &GroupFunction<T>) -> GroupFunction<T> {
        let nabla = self.group.modular_function::<T>();
        let g = &self.group;
        GroupFunction::new(
            g.elements()
                .map(|t| nabla.at(g.inv(t)) * a.at(g.inv(t)))
                .collect(),
        )
    }

    /// `Ŝ(b)(t) = b(t⁻¹)`
    pub fn antipode_dual(&self, b: &GroupFunction<T>) -> GroupFunction<T> {
        b.reflect(&self.group)
    }

    /// `S` on operators of the left-regular algebra, by coordinates.
    pub fn antipode_op(&self, x: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        let a = self.l_coords(x)?;
        self.left_regular(&self.antipode(&a))
    }

    /// Unitary antipode `R(x) = Ĵ x* Ĵ`.
    pub fn unitary_antipode(&self, x: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        x.adjoint().conjugate(&self.j_hat)
    }

    /// Dual unitary antipode `R̂(y) = J y* J`.
    pub fn unitary_antipode_dual(&self, y: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        y.adjoint().conjugate(&self.j)
    }

    /// `φ(a) = a(e)`
    pub fn phi(&self, a: &GroupFunction<T>) -> C<T> {
        a.at(self.group.identity())
    }

    /// `ψ(a) = φ(S(a))`
    pub fn psi(&self, a: &GroupFunction<T>) -> C<T> {
        self.phi(&self.antipode(a))
    }

    /// `φ̂(b) = Σ_t b(t)` (counting measure)
    pub fn phi_hat(&self, b: &GroupFunction<T>) -> C<T> {
        b.sum()
    }

    /// `ψ̂(b) = φ̂(Ŝ(b))`
    pub fn psi_hat(&self, b: &GroupFunction<T>) -> C<T> {
        self.phi_hat(&self.antipode_dual(b))
    }

    pub fn phi_op(&self, x: &SparseOperator<T>) -> Result<C<T>> {
        Ok(self.phi(&self.l_coords(x)?))
    }

    pub fn psi_op(&self, x: &SparseOperator<T>) -> Result<C<T>> {
        Ok(self.psi(&self.l_coords(x)?))
    }

    pub fn phi_hat_op(&self, y: &SparseOperator<T>) -> Result<C<T>> {
        Ok(self.phi_hat(&self.mu_coords(y)?))
    }

    pub fn psi_hat_op(&self, y: &SparseOperator<T>) -> Result<C<T>> {
        Ok(self.psi_hat(&self.mu_coords(y)?))
    }

    /// `Λ(L_a) = a`
    pub fn gns(&self, x: &SparseOperator<T>) -> Result<Vec<C<T>>> {
        Ok(self.l_coords(x)?.values)
    }

    /// `Λ̂(μ_b) = b`
    pub fn gns_dual(&self, y: &SparseOperator<T>) -> Result<Vec<C<T>>> {
        Ok(self.mu_coords(y)?.values)
    }

    /// Largest violation of `⟨Λ(x),Λ(y)⟩ = φ(y*x)` over the delta basis.
    pub fn gns_contract_error(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for x in self.l_basis.elements() {
            for y in self.l_basis.elements() {
                let lhs = inner(&self.gns(x)?, &self.gns(y)?);
                let rhs = self.phi_op(&y.adjoint().mul(x)?)?;
                worst = worst.max(crate::scalar::modulus(&(lhs - rhs)));
            }
        }
        Ok(worst)
    }

    /// Function-level transform `F(L_a) = μ_a`.
    pub fn fourier_fn(&self, a: &GroupFunction<T>) -> GroupFunction<T> {
        a.clone()
    }

    /// Function-level inverse `F⁻¹(μ_b) = L_b`.
    pub fn fourier_inv_fn(&self, b: &GroupFunction<T>) -> GroupFunction<T> {
        b.clone()
    }

    /// `F(x) = (φ⊗id)(W(x⊗1))`, evaluated by expanding in `L ⊗ μ`.
    pub fn fourier_op(&self, x: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        self.l_coords(x)?;
        let y = x.embed(&[1], 2)?.left_mul_monomial(&self.w)?;
        let c = self.lmu_basis.expand(&y, &self.tol)?;
        let n = self.n();
        let e = self.group.identity();
        // φ(L_g) = [g = e]
        let b = GroupFunction::new((0..n).map(|h| c[e * n + h].clone()).collect());
        self.multiplication(&b)
    }

    /// `F⁻¹(y) = (id⊗φ̂)(W*(1⊗y))`, evaluated by expanding in `L ⊗ μ`.
    pub fn fourier_inv_op(&self, y: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        self.mu_coords(y)?;
        let x = y.embed(&[2], 2)?.left_mul_monomial(&self.w.adjoint())?;
        let c = self.lmu_basis.expand(&x, &self.tol)?;
        let n = self.n();
        // φ̂(μ_h) = 1
        let a = GroupFunction::new(
            (0..n)
                .map(|g| (0..n).fold(zero(), |acc, h| acc + c[g * n + h].clone()))
                .collect(),
        );
        self.left_regular(&a)
    }

    /// `⟨μ_b | L_a⟩ = Σ_t a(t) b(t⁻¹)`
    pub fn pair(&self, b: &GroupFunction<T>, a: &GroupFunction<T>) -> C<T> {
        let g = &self.group;
        g.elements()
            .fold(zero(), |acc, t| acc + a.at(t) * b.at(g.inv(t)))
    }

    /// `(ω⊗θ)(W)` with `b = (ω⊗id)(W)` and `a = (id⊗θ)(W)`.
    pub fn pair_unitary(&self, b: &GroupFunction<T>, a: &GroupFunction<T>) -> Result<C<T>> {
        let omega = self.functional_for_dual(b)?;
        let theta = self.functional_for_primal(a)?;
        omega.tensor(&theta)?.eval(&self.w.to_sparse()?)
    }

    /// `φ(a F⁻¹(b))` at operator level.
    pub fn pair_phi(&self, b: &GroupFunction<T>, a: &GroupFunction<T>) -> Result<C<T>> {
        let la = self.left_regular(a)?;
        let fb = self.fourier_inv_op(&self.multiplication(b)?)?;
        self.phi_op(&la.mul(&fb)?)
    }

    /// `φ̂(F(a*)* b)` at operator level.
    pub fn pair_phi_hat(&self, b: &GroupFunction<T>, a: &GroupFunction<T>) -> Result<C<T>> {
        let a_star = self.left_regular(a)?.adjoint();
        let f = self.fourier_op(&a_star)?.adjoint();
        self.phi_hat_op(&f.mul(&self.multiplication(b)?)?)
    }

    /// Pairing of `μ⊗μ`-span against `L⊗L`-span, factorwise.
    pub fn pair2(&self, y: &SparseOperator<T>, x: &SparseOperator<T>) -> Result<C<T>> {
        let cy = self.mumu_basis.expand(y, &self.tol)?;
        let cx = self.ll_basis.expand(x, &self.tol)?;
        let g = &self.group;
        let n = self.n();
        // ⟨μ_{δ_b} | L_{δ_a}⟩ = [b = a⁻¹]
        let mut acc = zero();
        for a1 in 0..n {
            for a2 in 0..n {
                let b = cy[g.inv(a1) * n + g.inv(a2)].clone();
                acc = acc + b * cx[a1 * n + a2].clone();
            }
        }
        Ok(acc)
    }

    /// Functional on `B(H)` with `(ω⊗id)(W) = μ_b`.
    pub fn functional_for_dual(&self, b: &GroupFunction<T>) -> Result<Functional<T>> {
        let e = self.group.identity();
        Functional::from_density(SparseOperator::from_triplets(
            self.n(),
            1,
            self.group.elements().map(|g| (g, e, b.at(g))),
        )?)
    }

    /// Functional with `(id⊗θ)(W) = L_a`.
    pub fn functional_for_primal(&self, a: &GroupFunction<T>) -> Result<Functional<T>> {
        let g = &self.group;
        Functional::from_density(SparseOperator::from_triplets(
            self.n(),
            1,
            g.elements().map(|q| (q, q, a.at(g.inv(q)))),
        )?)
    }

    /// `λ(ω) = (ω⊗id)(W)`
    pub fn lambda(&self, omega: &Functional<T>) -> Result<SparseOperator<T>> {
        self.w.to_sparse()?.slice(omega, &[1])
    }

    /// `(id⊗ω)(W)`
    pub fn rho(&self, omega: &Functional<T>) -> Result<SparseOperator<T>> {
        self.w.to_sparse()?.slice(omega, &[2])
    }

    /// The functional on the left-regular algebra taking the values
    /// `values[g]` on `L_{δ_g}`, as a density supported on row `e`.
    pub fn functional_from_values(&self, values: &[C<T>]) -> Result<Functional<T>> {
        let e = self.group.identity();
        Functional::from_density(SparseOperator::from_triplets(
            self.n(),
            1,
            values.iter().enumerate().map(|(g, v)| (e, g, v.clone())),
        )?)
    }

    /// `(ω∗ω′)(x) = (ω⊗ω′)(Δx)` on the left-regular algebra.
    pub fn predual_product(
        &self,
        omega: &Functional<T>,
        omega2: &Functional<T>,
    ) -> Result<Functional<T>> {
        let both = omega.tensor(omega2)?;
        let values = self
            .l_basis
            .elements()
            .iter()
            .map(|l| both.eval(&self.comultiply(l)?))
            .collect::<Result<Vec<_>>>()?;
        self.functional_from_values(&values)
    }

    /// `ω♯(x) = conj(ω(S(x)*))` on the left-regular algebra.
    pub fn predual_sharp(&self, omega: &Functional<T>) -> Result<Functional<T>> {
        let values = self
            .l_basis
            .elements()
            .iter()
            .map(|l| Ok(omega.eval(&self.antipode_op(l)?.adjoint())?.conj()))
            .collect::<Result<Vec<_>>>()?;
        self.functional_from_values(&values)
    }

    /// A functional with a dense density of uniformly random entries.
    pub fn random_functional(&self, rng: &mut impl Rng) -> Result<Functional<T>> {
        let n = self.n();
        let mut t = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                t.push((
                    r,
                    c,
                    from_f64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                ));
            }
        }
        Functional::from_density(SparseOperator::from_triplets(n, 1, t)?)
    }
}

pub(crate) fn inner<T: Real>(x: &[C<T>], y: &[C<T>]) -> C<T> {
    x.iter()
        .zip(y)
        .fold(zero(), |acc, (a, b)| acc + a.clone() * b.conj())
}

/// `L_a`: entries `L_a[zh, h] = a(z)`.
pub fn left_regular<T: Real>(g: &FiniteGroup, a: &GroupFunction<T>) -> Result<SparseOperator<T>> {
    let mut t = Vec::with_capacity(g.order() * g.order());
    for z in g.elements() {
        for h in g.elements() {
            t.push((g.mul(z, h), h, a.at(z)));
        }
    }
    SparseOperator::from_triplets(g.order(), 1, t)
}

/// `μ_b`: diagonal with `b(t)`.
pub fn multiplication<T: Real>(g: &FiniteGroup, b: &GroupFunction<T>) -> Result<SparseOperator<T>> {
    SparseOperator::diagonal(g.order(), 1, &b.values)
}
