//! The R-matrix of the double, the twisted comultiplication `x ↦ RΔ_D(x)`,
//! the deformed product on `C(G × G)` and the Weyl algebra.
//!
//! A grid `F(s, t)` stands for `Σ F(s, t) L_{δ_s} ⊗ μ_{δ_t}` in the dual
//! double. The deformed product is
//! `(F ×_R F′)(s, t) = Σ_z F(z, t) F′(z⁻¹s, z⁻¹t)`
//! and is computed here three ways: directly, through the predual algebra of
//! the double, and through the double's Fourier transform.

use std::sync::Arc;

use rand::Rng;

use crate::double::DoubleContext;
use crate::engine::{Basis, Comparison, Functional, LegWord, MonomialOperator, SparseOperator};
use crate::error::{Error, Result};
use crate::grid::PairFunction;
use crate::group::{FiniteGroup, GroupFunction};
use crate::linalg::Matrix;
use crate::scalar::{from_f64, is_zero, modulus, zero, Real, C};

type Mono<T> = Arc<MonomialOperator<T>>;

/// The R-matrix together with the double it twists.
#[derive(Clone, Debug)]
pub struct RMatrix<T> {
    ctx: Arc<DoubleContext<T>>,
    op: Mono<T>,
}

/// Outcome of the search for `x` with `RΔ_D(x*) ≠ (RΔ_D(x))*`.
#[derive(Clone, Debug)]
pub enum StarPreservation {
    /// First crossed-product basis index `p·n + g` where the two sides differ.
    Witness { index: usize, max_error: f64 },
    /// Every basis element is preserved; holds when `R² = 1` and `Δ_D` is
    /// cocommutative.
    Preserved {
        r_involutive: bool,
        cocommutative: bool,
    },
}

impl<T: Real> RMatrix<T> {
    pub fn new(ctx: Arc<DoubleContext<T>>) -> Result<Self> {
        let op = Arc::clone(ctx.r());
        let r = Self { ctx, op };
        let unitary = r.op.adjoint().compose(&r.op)?;
        if !unitary.is_identity() {
            return Err(Error::IdentityViolation {
                name: "R*R = 1".into(),
                witness: String::new(),
            });
        }
        r.pi_pi_coords()?;
        Ok(r)
    }

    /// Replaces the operator, keeping the double. Used to build deliberately
    /// broken R-matrices.
    pub fn with_operator(&self, op: MonomialOperator<T>) -> Self {
        Self {
            ctx: Arc::clone(&self.ctx),
            op: Arc::new(op),
        }
    }

    pub fn ctx(&self) -> &Arc<DoubleContext<T>> {
        &self.ctx
    }

    pub fn op(&self) -> &Mono<T> {
        &self.op
    }

    /// Coordinates of `R` in the crossed-product ⊗ crossed-product basis.
    pub fn pi_pi_coords(&self) -> Result<Vec<C<T>>> {
        self.ctx
            .pi_pi_basis()
            .expand(&self.op.to_sparse()?, self.ctx.tol())
    }

    pub fn unitarity(&self) -> Result<Comparison> {
        let n = self.ctx.n();
        self.op
            .adjoint()
            .compose(&self.op)?
            .compare(&MonomialOperator::identity(n, 4))
    }

    /// `(Δ_D⊗id)(R) = R₁₃R₂₃` on pair-legs.
    pub fn hexagon_left(&self) -> Result<Comparison> {
        let n = self.ctx.n();
        let w_d = self.ctx.w_d();
        let w_ds = Arc::new(w_d.adjoint());
        let lhs = LegWord::new(n, 6)
            .then(&w_ds, &[1, 2, 3, 4])?
            .then(&self.op, &[3, 4, 5, 6])?
            .then(w_d, &[1, 2, 3, 4])?;
        let rhs = LegWord::new(n, 6)
            .then(&self.op, &[1, 2, 5, 6])?
            .then(&self.op, &[3, 4, 5, 6])?;
        lhs.compare(&rhs)
    }

    /// `(id⊗Δ_D)(R) = R₁₃R₁₂` on pair-legs.
    pub fn hexagon_right(&self) -> Result<Comparison> {
        let n = self.ctx.n();
        let w_d = self.ctx.w_d();
        let w_ds = Arc::new(w_d.adjoint());
        let lhs = LegWord::new(n, 6)
            .then(&w_ds, &[3, 4, 5, 6])?
            .then(&self.op, &[1, 2, 5, 6])?
            .then(w_d, &[3, 4, 5, 6])?;
        let rhs = LegWord::new(n, 6)
            .then(&self.op, &[1, 2, 5, 6])?
            .then(&self.op, &[1, 2, 3, 4])?;
        lhs.compare(&rhs)
    }

    /// `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂` on pair-legs.
    pub fn qybe(&self) -> Result<Comparison> {
        let n = self.ctx.n();
        let r = &self.op;
        let lhs = LegWord::new(n, 6)
            .then(r, &[1, 2, 3, 4])?
            .then(r, &[1, 2, 5, 6])?
            .then(r, &[3, 4, 5, 6])?;
        let rhs = LegWord::new(n, 6)
            .then(r, &[3, 4, 5, 6])?
            .then(r, &[1, 2, 5, 6])?
            .then(r, &[1, 2, 3, 4])?;
        lhs.compare(&rhs)
    }

    /// `RΔ_D(x)R* = Δ_D^cop(x)` for one `x`.
    pub fn intertwines(&self, x: &SparseOperator<T>) -> Result<Comparison> {
        let lhs = self.ctx.delta_d(x)?.conjugate(&self.op)?;
        lhs.compare(&self.ctx.delta_d_cop(x)?, self.ctx.tol())
    }

    /// `RΔ_D(x)`
    pub fn twisted_comultiply(&self, x: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        self.ctx.delta_d(x)?.left_mul_monomial(&self.op)
    }

    /// `(RΔ_D ⊗ id)(Y) = R₁₂·(Δ_D⊗id)(Y)` on pair-legs.
    pub fn twisted_left(&self, y: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        let r = self.op.embed(&[1, 2, 3, 4], 6)?;
        self.ctx.delta_d_left(y)?.left_mul_monomial(&r)
    }

    /// `(id ⊗ RΔ_D)(Y) = R₂₃·(id⊗Δ_D)(Y)` on pair-legs.
    pub fn twisted_right(&self, y: &SparseOperator<T>) -> Result<SparseOperator<T>> {
        let r = self.op.embed(&[3, 4, 5, 6], 6)?;
        self.ctx.delta_d_right(y)?.left_mul_monomial(&r)
    }

    /// Both iterated twisted comultiplications of `x`, compared entrywise.
    pub fn coassociativity(&self, x: &SparseOperator<T>) -> Result<Comparison> {
        let y = self.twisted_comultiply(x)?;
        self.twisted_left(&y)?
            .compare(&self.twisted_right(&y)?, self.ctx.tol())
    }

    /// Both iterated twisted comultiplications of `x` applied to `v`,
    /// without forming any 6-leg matrix. Returns the largest entry error.
    pub fn coassociativity_on_vector(&self, x: &SparseOperator<T>, v: &[C<T>]) -> Result<f64> {
        let y = self.twisted_comultiply(x)?;
        let (lhs, rhs) = self
            .ctx
            .iterated_coproducts_on_vector(&y, Some(&self.op), v)?;
        Ok(max_gap(&lhs, &rhs))
    }

    /// Looks for `x` in the crossed-product delta basis with
    /// `RΔ_D(x*) ≠ RΔ_D(x)*`.
    pub fn star_preservation(&self) -> Result<StarPreservation> {
        let ctx = &self.ctx;
        for (index, x) in ctx.pi_basis().elements().iter().enumerate() {
            let lhs = self.twisted_comultiply(&x.adjoint())?;
            let rhs = self.twisted_comultiply(x)?.adjoint();
            let c = lhs.compare(&rhs, ctx.tol())?;
            if !c.equal() {
                return Ok(StarPreservation::Witness {
                    index,
                    max_error: c.max_error,
                });
            }
        }
        let n = ctx.n();
        let r_involutive = self
            .op
            .compose(&self.op)?
            .compare(&MonomialOperator::identity(n, 4))?
            .equal();
        let mut cocommutative = true;
        for x in ctx.pi_basis().elements() {
            if !ctx
                .delta_d(x)?
                .compare(&ctx.delta_d_cop(x)?, ctx.tol())?
                .equal()
            {
                cocommutative = false;
                break;
            }
        }
        Ok(StarPreservation::Preserved {
            r_involutive,
            cocommutative,
        })
    }
}

/// The deformed product by its three constructions, plus the Weyl picture.
#[derive(Clone, Debug)]
pub struct Twist<T> {
    r: RMatrix<T>,
    /// `W_D = Σ C[(a,b),(p,g)] Π(δ_p⊗δ_g) ⊗ L_{δ_a}⊗μ_{δ_b}`
    c: Matrix<T>,
    /// `RΔ_D(Π(δ_p⊗δ_g))`, by basis index.
    twisted_basis: Vec<SparseOperator<T>>,
    /// `F_D(Π(δ_p⊗δ_g))`, by basis index.
    fourier_basis: Vec<PairFunction<T>>,
    /// Nonzero coordinates `(i, j, c)` of each `RΔ_D(Π_k)` in the
    /// crossed-product ⊗ crossed-product basis.
    structure: Vec<Vec<(usize, usize, C<T>)>>,
    c_inv: Matrix<T>,
}

impl<T: Real> Twist<T> {
    pub fn new(r: RMatrix<T>) -> Result<Self> {
        let ctx = Arc::clone(r.ctx());
        let n = ctx.n();
        let m = n * n;
        let coeffs = ctx
            .pi_lm_basis()
            .expand(&ctx.w_d().to_sparse()?, ctx.tol())?;
        let c = Matrix::from_fn(m, m, |ab, pg| coeffs[pg * m + ab].clone());
        let twisted_basis: Vec<SparseOperator<T>> = ctx
            .pi_basis()
            .elements()
            .iter()
            .map(|x| r.twisted_comultiply(x))
            .collect::<Result<_>>()?;
        let fourier_basis = ctx
            .pi_basis()
            .elements()
            .iter()
            .map(|x| ctx.fourier_d(x))
            .collect::<Result<_>>()?;
        let structure = twisted_basis
            .iter()
            .map(|y| {
                let coeffs = ctx.pi_pi_basis().expand(y, ctx.tol())?;
                Ok(coeffs
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !is_zero(v))
                    .map(|(k, v)| (k / m, k % m, v))
                    .collect())
            })
            .collect::<Result<_>>()?;
        let c_inv = c.inverse(ctx.tol())?;
        Ok(Self {
            r,
            c,
            twisted_basis,
            fourier_basis,
            structure,
            c_inv,
        })
    }

    pub fn from_group(group: &FiniteGroup) -> Result<Self> {
        let ctx = Arc::new(DoubleContext::from_group(group)?);
        Self::new(RMatrix::new(ctx)?)
    }

    pub fn r(&self) -> &RMatrix<T> {
        &self.r
    }

    pub fn ctx(&self) -> &Arc<DoubleContext<T>> {
        self.r.ctx()
    }

    pub fn group(&self) -> &FiniteGroup {
        self.ctx().group()
    }

    fn n(&self) -> usize {
        self.ctx().n()
    }

    fn tol(&self) -> &T {
        self.ctx().tol()
    }

    /// The matrix taking crossed-product values of `ω` to the coordinates of
    /// `(ω ⊗ id)(W_D)`.
    pub fn slice_matrix(&self) -> &Matrix<T> {
        &self.c
    }

    /// `(ω ⊗ id)(W_D)` in dual-double coordinates.
    pub fn slice_w_d(&self, omega: &Functional<T>) -> Result<PairFunction<T>> {
        let values = self
            .ctx()
            .pi_basis()
            .elements()
            .iter()
            .map(|x| omega.eval(x))
            .collect::<Result<Vec<_>>>()?;
        PairFunction::from_values(self.n(), self.c.mul_vec(&values)?)
    }

    /// The functional with `(ω_F ⊗ id)(W_D) = Σ F(a,b) L_a⊗μ_b`, as a density
    /// supported on one entry of each crossed-product basis element.
    pub fn functional_for(&self, f: &PairFunction<T>) -> Result<Functional<T>> {
        let v = self.c.solve(f.values(), self.tol())?;
        self.functional_from_values(&v)
    }

    fn functional_from_values(&self, v: &[C<T>]) -> Result<Functional<T>> {
        let ctx = self.ctx();
        let mut t = Vec::with_capacity(v.len());
        for (x, val) in ctx.pi_basis().elements().iter().zip(v) {
            let (r, c, e) = &x.entries()[0];
            t.push((*c, *r, val.clone() / e.clone()));
        }
        Functional::from_density(SparseOperator::from_triplets(self.n(), 2, t)?)
    }

    /// `(ω ∗_R ω′)(x) = (ω⊗ω′)(RΔ_D(x))`
    pub fn star_r(&self, omega: &Functional<T>, omega2: &Functional<T>) -> Result<Functional<T>> {
        let both = omega.tensor(omega2)?;
        let v = self
            .twisted_basis
            .iter()
            .map(|y| both.eval(y))
            .collect::<Result<Vec<_>>>()?;
        self.functional_from_values(&v)
    }

    /// Deformed product via the predual algebra of the double.
    pub fn product_functional(
        &self,
        f: &PairFunction<T>,
        f2: &PairFunction<T>,
    ) -> Result<PairFunction<T>> {
        let w = self.functional_for(f)?;
        let w2 = self.functional_for(f2)?;
        self.slice_w_d(&self.star_r(&w, &w2)?)
    }

    /// `∗_R` on crossed-product values, through the structure constants of
    /// `RΔ_D`.
    pub fn star_r_values(&self, v: &[C<T>], v2: &[C<T>]) -> Vec<C<T>> {
        self.structure
            .iter()
            .map(|terms| {
                terms.iter().fold(zero(), |acc, (i, j, c)| {
                    acc + c.clone() * v[*i].clone() * v2[*j].clone()
                })
            })
            .collect()
    }

    /// Values of `ω` on the crossed-product basis.
    pub fn values_of(&self, omega: &Functional<T>) -> Result<Vec<C<T>>> {
        self.ctx()
            .pi_basis()
            .elements()
            .iter()
            .map(|x| omega.eval(x))
            .collect()
    }

    /// `Q(ω)`: left `∗_R`-multiplication by `ω` on dual-double coordinates.
    pub fn q(&self, omega: &Functional<T>) -> Result<Matrix<T>> {
        let v = self.values_of(omega)?;
        self.q_from_values(&v)
    }

    fn q_from_values(&self, v: &[C<T>]) -> Result<Matrix<T>> {
        let m = self.n() * self.n();
        let cols = (0..m)
            .map(|j| {
                self.c
                    .mul_vec(&self.star_r_values(v, &self.c_inv.column(j)))
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(&cols)
    }

    /// Deformed product through `F_D⁻¹`, the R-matrix and `F_D`, followed by
    /// convolution on the first leg and pointwise product on the second.
    pub fn product_fourier(
        &self,
        f: &PairFunction<T>,
        f2: &PairFunction<T>,
    ) -> Result<PairFunction<T>> {
        let ctx = self.ctx();
        let n = self.n();
        let g = self.group();
        let x = ctx.big_pi_grid(&ctx.fourier_d_inv(&ctx.dual_element(f)?)?)?;
        let x2 = ctx.big_pi_grid(&ctx.fourier_d_inv(&ctx.dual_element(f2)?)?)?;
        let y = x.tensor(&x2)?.left_mul_monomial(self.r.op())?;
        let c = ctx.pi_pi_basis().expand(&y, self.tol())?;
        let m = n * n;
        let mut out = PairFunction::zeros(n);
        for (k, coeff) in c.iter().enumerate() {
            if is_zero(coeff) {
                continue;
            }
            let (gi, gj) = (&self.fourier_basis[k / m], &self.fourier_basis[k % m]);
            for (ab, u) in gi.values().iter().enumerate() {
                if is_zero(u) {
                    continue;
                }
                for (ab2, u2) in gj.values().iter().enumerate() {
                    let (a, t, a2, t2) = (ab / n, ab % n, ab2 / n, ab2 % n);
                    if t != t2 || is_zero(u2) {
                        continue;
                    }
                    let s = g.mul(a2, a);
                    let v = out.at(s, t) + coeff.clone() * u.clone() * u2.clone();
                    out.set(s, t, v);
                }
            }
        }
        Ok(out)
    }

    /// Largest deviation from `Q(ω)Q(ω′) = Q(ω ∗_R ω′)`.
    pub fn q_homomorphism_error(
        &self,
        omega: &Functional<T>,
        omega2: &Functional<T>,
    ) -> Result<f64> {
        let lhs = self.q(omega)?.mul(&self.q(omega2)?)?;
        let rhs = self.q(&self.star_r(omega, omega2)?)?;
        Ok(lhs.max_diff(&rhs, self.tol())?.0)
    }

    /// Dimension of `span{Q(ω_F)}` over the delta grids.
    pub fn q_span_rank(&self) -> Result<usize> {
        let m = self.n() * self.n();
        let cols = (0..m)
            .map(|j| {
                let q = self.q_from_values(&self.c_inv.column(j))?;
                Ok((0..m * m).map(|k| q.get(k / m, k % m)).collect())
            })
            .collect::<Result<Vec<Vec<C<T>>>>>()?;
        Ok(Matrix::from_columns(&cols)?.rank(self.tol()))
    }

    /// A functional on `N_D` with random values on the crossed-product basis.
    pub fn random_functional(&self, rng: &mut impl Rng) -> Result<Functional<T>> {
        let m = self.n() * self.n();
        let v: Vec<C<T>> = (0..m)
            .map(|_| from_f64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        self.functional_from_values(&v)
    }
}

pub(crate) fn max_gap<T: Real>(a: &[C<T>], b: &[C<T>]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| modulus(&(x.clone() - y.clone())))
        .fold(0.0, f64::max)
}

/// `(F ×_R F′)(s, t) = Σ_z F(z, t) F′(z⁻¹s, z⁻¹t)`
pub fn product_direct<T: Real>(
    g: &FiniteGroup,
    f: &PairFunction<T>,
    f2: &PairFunction<T>,
) -> PairFunction<T> {
    PairFunction::from_fn(g.order(), |s, t| {
        g.elements().fold(zero(), |acc, z| {
            let a = f.at(z, t);
            if is_zero(&a) {
                return acc;
            }
            let zi = g.inv(z);
            acc + a * f2.at(g.mul(zi, s), g.mul(zi, t))
        })
    })
}

/// The product before twisting: convolution in the first variable,
/// pointwise in the second, `Σ_z F(z, t) F′(z⁻¹s, t)`.
pub fn product_undeformed<T: Real>(
    g: &FiniteGroup,
    f: &PairFunction<T>,
    f2: &PairFunction<T>,
) -> PairFunction<T> {
    PairFunction::from_fn(g.order(), |s, t| {
        g.elements().fold(zero(), |acc, z| {
            acc + f.at(z, t) * f2.at(g.mul(g.inv(z), s), t)
        })
    })
}

/// `F*(s, t) = ∇(s⁻¹) conj F(s⁻¹, s⁻¹t)`
pub fn weyl_involution<T: Real>(g: &FiniteGroup, f: &PairFunction<T>) -> PairFunction<T> {
    let nabla = g.modular_function::<T>();
    PairFunction::from_fn(g.order(), |s, t| {
        let si = g.inv(s);
        nabla.at(si) * f.at(si, g.mul(si, t)).conj()
    })
}

/// `K[t, u] = F(tu⁻¹, t)`: the action `(Kξ)(t) = Σ_z F(z, t) ξ(z⁻¹t)`.
pub fn weyl_rep<T: Real>(g: &FiniteGroup, f: &PairFunction<T>) -> Matrix<T> {
    Matrix::from_fn(g.order(), g.order(), |t, u| f.at(g.mul(t, g.inv(u)), t))
}

/// `Σ F(p, q) (1⊗μ_{δ_q}) Δ(L_{δ_p})`
pub fn generator_picture<T: Real>(
    g: &FiniteGroup,
    f: &PairFunction<T>,
) -> Result<SparseOperator<T>> {
    let n = g.order();
    let mut t = Vec::new();
    for p in g.elements() {
        for q in g.elements() {
            let v = f.at(p, q);
            if is_zero(&v) {
                continue;
            }
            // Δ(L_p)δ(u, w) = δ(pu, pw), kept when pw = q
            let w = g.mul(g.inv(p), q);
            for u in g.elements() {
                t.push((g.mul(p, u) * n + q, u * n + w, v.clone()));
            }
        }
    }
    SparseOperator::from_triplets(n, 2, t)
}

/// `(1⊗μ_b)Δ(L_a)` for single functions.
pub fn generator_picture_elementary<T: Real>(
    g: &FiniteGroup,
    a: &GroupFunction<T>,
    b: &GroupFunction<T>,
) -> Result<SparseOperator<T>> {
    generator_picture(g, &PairFunction::elementary(a, b))
}
