//! Verification suites. Each suite runs a fixed list of checks on one group
//! and returns a [`SuiteReport`]; randomized checks draw from a generator
//! seeded by the run seed and the check's position.

use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::double::{crossed_product_convolution, pentagon_blocks, pi_delta, DoubleContext};
use crate::engine::{Basis, Comparison, Functional, MonomialOperator, SparseOperator};
use crate::error::{Error, Result};
use crate::grid::{format_complex, PairFunction};
use crate::group::{FiniteGroup, GroupFunction};
use crate::linalg::Matrix;
use crate::quantum_group::{pentagon, QuantumGroupPair};
use crate::report::{Check, CheckMode, GroupInfo, Report, Status, SuiteReport, Witness};
use crate::twist::{
    generator_picture, product_direct, weyl_involution, weyl_rep, RMatrix, StarPreservation, Twist,
};

type Cx = Complex<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Base,
    Double,
    Rmatrix,
    Twist,
    Weyl,
    Fourier,
    Pairing,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Base,
        Suite::Double,
        Suite::Rmatrix,
        Suite::Twist,
        Suite::Weyl,
        Suite::Fourier,
        Suite::Pairing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Base => "base",
            Suite::Double => "double",
            Suite::Rmatrix => "rmatrix",
            Suite::Twist => "twist",
            Suite::Weyl => "weyl",
            Suite::Fourier => "fourier",
            Suite::Pairing => "pairing",
        }
    }

    /// Largest group order the suite accepts without an override.
    pub fn cap(self) -> usize {
        match self {
            Suite::Base | Suite::Weyl => 24,
            Suite::Fourier => 16,
            Suite::Pairing | Suite::Double => 12,
            Suite::Rmatrix | Suite::Twist => 8,
        }
    }

    /// Parses a comma-separated list; `all` expands to every suite.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                for s in Suite::ALL {
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
            } else {
                let s = part.parse()?;
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        if out.is_empty() {
            return Err(Error::Parse("no suites selected".into()));
        }
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub tol: f64,
    pub timing: bool,
    /// Raises every suite cap to this order.
    pub cap_override: Option<usize>,
    /// Replace `R` by a copy with one sign flipped.
    pub mis_signed_r: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            seed: 0,
            tol: 1e-10,
            timing: true,
            cap_override: None,
            mis_signed_r: false,
        }
    }
}

impl Options {
    /// Effective cap for `suite` after any override.
    pub fn cap(&self, suite: Suite) -> usize {
        self.cap_override
            .map_or(suite.cap(), |c| c.max(suite.cap()))
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    /// The stricter of the run tolerance and `bound`.
    fn at_most(&self, bound: f64) -> f64 {
        self.tol.min(bound)
    }
}

/// Result of one check body.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub max_error: f64,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl Outcome {
    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Accumulates the worst error and the first failure of a family of
/// comparisons.
#[derive(Debug, Default)]
struct Acc {
    out: Outcome,
    tol: f64,
}

impl Acc {
    fn new(tol: f64) -> Self {
        Self {
            out: Outcome::default(),
            tol,
        }
    }

    fn cmp(&mut self, label: impl FnOnce() -> String, c: &Comparison) {
        self.out.max_error = self.out.max_error.max(c.max_error);
        if self.out.witness.is_none() {
            if let Some(w) = &c.witness {
                let mut w = Witness::from_entry(w);
                w.description = format!("{}: {}", label(), w.description);
                self.out.witness = Some(w);
            }
        }
    }

    fn err(&mut self, err: f64, witness: impl FnOnce() -> Witness) {
        self.out.max_error = self.out.max_error.max(err);
        if self.out.witness.is_none() && (err.is_nan() || err > self.tol) {
            self.out.witness = Some(witness());
        }
    }

    fn value(&mut self, tuple: &[usize], label: &str, left: Cx, right: Cx) {
        let err = (left - right).norm();
        self.err(err, || Witness {
            tuple: tuple.to_vec(),
            values: vec![format_complex(&left), format_complex(&right)],
            description: label.to_string(),
        });
    }

    fn fail(&mut self, description: impl Into<String>) {
        if self.out.witness.is_none() {
            self.out.witness = Some(Witness::message(description));
        }
    }

    fn done(self) -> Outcome {
        self.out
    }
}

struct Runner<'a> {
    opts: &'a Options,
    checks: Vec<Check>,
}

impl<'a> Runner<'a> {
    fn new(opts: &'a Options) -> Self {
        Self {
            opts,
            checks: Vec::new(),
        }
    }

    fn run(
        &mut self,
        name: &str,
        anchor: &str,
        mode: CheckMode,
        tolerance: f64,
        body: impl FnOnce() -> Result<Outcome>,
    ) {
        let start = Instant::now();
        let result = body();
        let elapsed_ms = if self.opts.timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        };
        let check = match result {
            Ok(o) => Check {
                identity_name: name.into(),
                paper_anchor: anchor.into(),
                status: Status::from_bool(o.witness.is_none() && o.max_error <= tolerance),
                witness: o.witness.or_else(|| {
                    (o.max_error > tolerance)
                        .then(|| Witness::message(format!("max error {:e}", o.max_error)))
                }),
                elapsed_ms,
                tolerance,
                check_mode: mode,
                max_error: o.max_error,
                note: o.note,
            },
            Err(e) => Check {
                identity_name: name.into(),
                paper_anchor: anchor.into(),
                status: Status::Fail,
                witness: Some(Witness::message(e.to_string())),
                elapsed_ms,
                tolerance,
                check_mode: mode,
                max_error: f64::INFINITY,
                note: None,
            },
        };
        self.checks.push(check);
    }

    /// A check that is a single exact comparison.
    fn exact(&mut self, name: &str, anchor: &str, body: impl FnOnce() -> Result<Comparison>) {
        self.run(name, anchor, CheckMode::Exact, 0.0, || {
            let c = body()?;
            let mut acc = Acc::new(0.0);
            acc.cmp(|| name.to_string(), &c);
            Ok(acc.done())
        });
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        SuiteReport::new(suite.name(), self.checks)
    }
}

/// Runs `suites` on `group` and collects one report.
pub fn verify(group: &FiniteGroup, suites: &[Suite], opts: &Options) -> Result<Report> {
    for &s in suites {
        let cap = opts.cap(s);
        if group.order() > cap {
            return Err(Error::SizeLimit {
                what: format!("suite {}", s.name()),
                order: group.order(),
                cap,
            });
        }
    }
    let mut out = Vec::with_capacity(suites.len());
    let mut ctx: Option<Arc<DoubleContext<f64>>> = None;
    let mut twist: Option<Arc<Twist<f64>>> = None;
    for &s in suites {
        let needs_ctx = !matches!(s, Suite::Base | Suite::Weyl);
        if needs_ctx && ctx.is_none() {
            ctx = Some(Arc::new(DoubleContext::new(
                QuantumGroupPair::with_tolerance(group, opts.tol)?,
            )?));
        }
        if matches!(s, Suite::Rmatrix | Suite::Twist) && twist.is_none() {
            let c = Arc::clone(ctx.as_ref().expect("context built above"));
            twist = Some(Arc::new(Twist::new(RMatrix::new(c)?)?));
        }
        let report = match s {
            Suite::Base => base(group, opts)?,
            Suite::Double => double(ctx.as_ref().expect("context"), opts),
            Suite::Rmatrix => rmatrix(twist.as_ref().expect("twist"), opts),
            Suite::Twist => twist_suite(twist.as_ref().expect("twist"), opts),
            Suite::Weyl => weyl(group, opts),
            Suite::Fourier => fourier(ctx.as_ref().expect("context"), opts),
            Suite::Pairing => pairing(ctx.as_ref().expect("context"), opts),
        };
        out.push(report);
    }
    Ok(Report::new(
        GroupInfo {
            label: group.name().to_string(),
            order: group.order(),
        },
        opts.seed,
        opts.tol,
        out,
    ))
}

/// The report for a Cayley table that failed validation.
pub fn group_failure_report(label: &str, err: &Error, opts: &Options) -> Report {
    let (tuple, description) = match err {
        Error::AxiomViolation { kind, witness } => (
            witness.to_vec(),
            format!("{kind} axiom fails at {witness:?}"),
        ),
        other => (Vec::new(), other.to_string()),
    };
    let check = Check {
        identity_name: "cayley-axioms".into(),
        paper_anchor: "closure, identity, inverses, (ab)c = a(bc)".into(),
        status: Status::Fail,
        witness: Some(Witness {
            tuple,
            values: Vec::new(),
            description,
        }),
        elapsed_ms: 0,
        tolerance: 0.0,
        check_mode: CheckMode::Exact,
        max_error: f64::INFINITY,
        note: None,
    };
    Report::new(
        GroupInfo {
            label: label.to_string(),
            order: 0,
        },
        opts.seed,
        opts.tol,
        vec![SuiteReport::new("group", vec![check])],
    )
}

fn delta(n: usize, g: usize) -> GroupFunction<f64> {
    GroupFunction::delta(n, g)
}

fn pair_delta(n: usize, k: usize) -> PairFunction<f64> {
    PairFunction::delta(n, k / n, k % n)
}

fn kebab(name: &str) -> String {
    let mut s = String::new();
    for ch in name.chars() {
        if ch.is_ascii_alphanumeric() {
            s.push(ch.to_ascii_lowercase());
        } else if !s.ends_with('-') && !s.is_empty() {
            s.push('-');
        }
    }
    s.trim_end_matches('-').to_string()
}

fn rand_grid(n: usize, rng: &mut impl Rng) -> PairFunction<f64> {
    PairFunction::random(n, rng)
}

fn random_vec(rng: &mut impl Rng, len: usize) -> Vec<Cx> {
    (0..len)
        .map(|_| Cx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn base(group: &FiniteGroup, opts: &Options) -> Result<SuiteReport> {
    let p = QuantumGroupPair::<f64>::with_tolerance(group, opts.tol)?;
    let n = p.n();
    let tol = opts.tol;
    let mut r = Runner::new(opts);

    for (name, anchor, op) in [
        ("pentagon-w", "W₁₂W₁₃W₂₃ = W₂₃W₁₂", p.w()),
        ("pentagon-w-hat", "Ŵ₁₂Ŵ₁₃Ŵ₂₃ = Ŵ₂₃Ŵ₁₂", p.w_hat()),
        ("pentagon-v", "V₁₂V₁₃V₂₃ = V₂₃V₁₂", p.v()),
        ("pentagon-w-g", "W_G,₁₂W_G,₁₃W_G,₂₃ = W_G,₂₃W_G,₁₂", p.w_g()),
    ] {
        r.exact(name, anchor, || pentagon(op));
    }
    for (name, c) in p.structure_checks()?.into_iter().skip(4) {
        r.exact(&kebab(name), name, || Ok(c));
    }
    r.exact(
        "monomials-unitary",
        "X*X = 1 for W, Ŵ, V, W_G, J, Ĵ",
        || {
            for op in [p.w(), p.w_hat(), p.v(), p.w_g(), p.j(), p.j_hat()] {
                let c = op
                    .adjoint()
                    .compose(op)?
                    .compare(&MonomialOperator::identity(n, op.legs()))?;
                if !c.equal() {
                    return Ok(c);
                }
            }
            Ok(Comparison {
                max_error: 0.0,
                witness: None,
            })
        },
    );

    r.run(
        "comultiplication-closed-forms",
        "Δ(L_a)ξ(s,t) = Σ_z a(z)ξ(z⁻¹s,z⁻¹t); Δ̂(b)(s,t) = b(st)",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            for a in group.elements() {
                let dl = p.comultiply(&p.left_regular(&delta(n, a))?)?;
                let expect = p
                    .left_regular(&delta(n, a))?
                    .tensor(&p.left_regular(&delta(n, a))?)?;
                acc.cmp(|| format!("Δ(L_δ{a})"), &dl.compare(&expect, &0.0)?);
                let db = p.comultiply_dual(&p.multiplication(&delta(n, a))?)?;
                let diag: Vec<Cx> = (0..n * n)
                    .map(|k| Cx::new((group.mul(k / n, k % n) == a) as u8 as f64, 0.0))
                    .collect();
                acc.cmp(
                    || format!("Δ̂(δ{a})"),
                    &db.compare(&SparseOperator::diagonal(n, 2, &diag)?, &0.0)?,
                );
            }
            Ok(acc.done())
        },
    );

    r.run(
        "coassociativity-delta",
        "(Δ⊗id)Δ = (id⊗Δ)Δ",
        CheckMode::Exact,
        0.0,
        || {
            let w12 = p.w().adjoint().embed(&[1, 2], 3)?;
            let w23 = p.w().adjoint().embed(&[2, 3], 3)?;
            let mut acc = Acc::new(0.0);
            for (a, l) in p.l_basis().elements().iter().enumerate() {
                let y = p.comultiply(l)?;
                let lhs = y.embed(&[2, 3], 3)?.conjugate(&w12)?;
                let rhs = y.embed(&[1, 3], 3)?.conjugate(&w23)?;
                acc.cmp(|| format!("L_δ{a}"), &lhs.compare(&rhs, &0.0)?);
            }
            Ok(acc.done())
        },
    );

    r.run(
        "coassociativity-delta-hat",
        "(Δ̂⊗id)Δ̂ = (id⊗Δ̂)Δ̂",
        CheckMode::Exact,
        0.0,
        || {
            let m = p.sigma().compose(p.w())?;
            let m12 = m.embed(&[1, 2], 3)?;
            let m23 = m.embed(&[2, 3], 3)?;
            let mut acc = Acc::new(0.0);
            for (b, mu) in p.mu_basis().elements().iter().enumerate() {
                let y = p.comultiply_dual(mu)?;
                let lhs = y.embed(&[1, 3], 3)?.conjugate(&m12)?;
                let rhs = y.embed(&[1, 2], 3)?.conjugate(&m23)?;
                acc.cmp(|| format!("μ_δ{b}"), &lhs.compare(&rhs, &0.0)?);
            }
            Ok(acc.done())
        },
    );

    r.run(
        "antipode-characterization",
        "S((id⊗ω)(W)) = (id⊗ω)(W*)",
        CheckMode::Float,
        tol,
        || {
            let w = p.w().to_sparse()?;
            let ws = w.adjoint();
            let mut acc = Acc::new(tol);
            let basis = |i: usize| -> Vec<Cx> {
                (0..n)
                    .map(|k| Cx::new((k == i) as u8 as f64, 0.0))
                    .collect()
            };
            for i in 0..n {
                for j in 0..n {
                    let omega = Functional::vector(n, 1, &basis(i), &basis(j))?;
                    let lhs = p.antipode_op(&w.slice(&omega, &[2])?)?;
                    let rhs = ws.slice(&omega, &[2])?;
                    acc.cmp(|| format!("ω = ω(δ{i}, δ{j})"), &lhs.compare(&rhs, &tol)?);
                }
            }
            Ok(acc.done())
        },
    );

    r.run(
        "antipode-involutive",
        "S² = id, Ŝ² = id",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            for g in group.elements() {
                let d = delta(n, g);
                if p.antipode(&p.antipode(&d)) != d || p.antipode_dual(&p.antipode_dual(&d)) != d {
                    acc.fail(format!("δ{g}"));
                }
            }
            Ok(acc.done())
        },
    );

    r.run(
        "unitary-antipode",
        "L_S(a) = Ĵ L_a* Ĵ; (R⊗R)Δ = Δ^cop R",
        CheckMode::Exact,
        0.0,
        || {
            let jj = p.j_hat().tensor(p.j_hat())?;
            let mut acc = Acc::new(0.0);
            for (a, l) in p.l_basis().elements().iter().enumerate() {
                let ra = p.unitary_antipode(l)?;
                acc.cmp(
                    || format!("R(L_δ{a})"),
                    &p.antipode_op(l)?.compare(&ra, &0.0)?,
                );
                let lhs = p.comultiply(l)?.adjoint().conjugate(&jj)?;
                let rhs = p.flip(&p.comultiply(&ra)?)?;
                acc.cmp(|| format!("(R⊗R)Δ(L_δ{a})"), &lhs.compare(&rhs, &0.0)?);
            }
            Ok(acc.done())
        },
    );

    let strict = opts.at_most(1e-12);
    r.run(
        "haar-left-invariance",
        "(id⊗φ)Δ(x) = φ(x)1",
        CheckMode::Float,
        strict,
        || {
            let mut acc = Acc::new(strict);
            let e = group.identity();
            for (a, l) in p.l_basis().elements().iter().enumerate() {
                let c = p.ll_basis().expand(&p.comultiply(l)?, &tol)?;
                let coeffs: Vec<Cx> = (0..n).map(|i| c[i * n + e]).collect();
                let lhs = p.l_basis().combine(&coeffs)?;
                let rhs = SparseOperator::identity(n, 1).scale(&p.phi_op(l)?);
                acc.cmp(|| format!("L_δ{a}"), &lhs.compare(&rhs, &strict)?);
            }
            Ok(acc.done())
        },
    );
    r.run(
        "haar-right-invariance",
        "(ψ⊗id)Δ(x) = ψ(x)1",
        CheckMode::Float,
        strict,
        || {
            let mut acc = Acc::new(strict);
            for (a, l) in p.l_basis().elements().iter().enumerate() {
                let c = p.ll_basis().expand(&p.comultiply(l)?, &tol)?;
                let coeffs: Vec<Cx> = (0..n)
                    .map(|j| (0..n).map(|i| c[i * n + j] * p.psi(&delta(n, i))).sum())
                    .collect();
                let lhs = p.l_basis().combine(&coeffs)?;
                let rhs = SparseOperator::identity(n, 1).scale(&p.psi_op(l)?);
                acc.cmp(|| format!("L_δ{a}"), &lhs.compare(&rhs, &strict)?);
            }
            Ok(acc.done())
        },
    );
    r.run(
        "gns-contract",
        "⟨Λ(x),Λ(y)⟩ = φ(y*x); ⟨Λ̂(x),Λ̂(y)⟩ = φ̂(y*x)",
        CheckMode::Float,
        strict,
        || {
            let mut acc = Acc::new(strict);
            acc.err(p.gns_contract_error()?, || {
                Witness::message("left-regular delta basis")
            });
            for (i, x) in p.mu_basis().elements().iter().enumerate() {
                for (j, y) in p.mu_basis().elements().iter().enumerate() {
                    let lhs = crate::quantum_group::inner(&p.gns_dual(x)?, &p.gns_dual(y)?);
                    let rhs = p.phi_hat_op(&y.adjoint().mul(x)?)?;
                    acc.value(&[i, j], "multiplication delta pair", lhs, rhs);
                }
            }
            Ok(acc.done())
        },
    );

    r.run(
        "algebra-spans",
        "span(id⊗ω)(W) = span L_a; span(ω⊗id)(W) = span μ_b; both of dimension |G|",
        CheckMode::Float,
        tol,
        || {
            let w = p.w().to_sparse()?;
            let mut acc = Acc::new(tol);
            let basis = |i: usize| -> Vec<Cx> {
                (0..n)
                    .map(|k| Cx::new((k == i) as u8 as f64, 0.0))
                    .collect()
            };
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for i in 0..n {
                for j in 0..n {
                    let omega = Functional::vector(n, 1, &basis(i), &basis(j))?;
                    left.push(p.l_basis().expand(&w.slice(&omega, &[2])?, &tol)?);
                    right.push(p.mu_basis().expand(&w.slice(&omega, &[1])?, &tol)?);
                }
            }
            for (label, cols) in [("left-regular", left), ("multiplication", right)] {
                let rank = Matrix::from_columns(&cols)?.rank(&tol);
                if rank != n {
                    acc.fail(format!("{label} span has rank {rank}, expected {n}"));
                }
            }
            Ok(acc.done())
        },
    );

    r.run(
        "predual-product",
        "λ(ω∗ω′) = λ(ω)λ(ω′)",
        CheckMode::Randomized,
        tol,
        || {
            let mut rng = opts.rng(1);
            let mut acc = Acc::new(tol);
            for k in 0..10 {
                let w = p.random_functional(&mut rng)?;
                let w2 = p.random_functional(&mut rng)?;
                let lhs = p.lambda(&p.predual_product(&w, &w2)?)?;
                let rhs = p.lambda(&w)?.mul(&p.lambda(&w2)?)?;
                acc.cmp(|| format!("sample {k}"), &lhs.compare(&rhs, &tol)?);
            }
            Ok(acc.done().note("10 seeded random densities"))
        },
    );
    r.run(
        "predual-sharp",
        "λ(ω♯) = λ(ω)*",
        CheckMode::Randomized,
        tol,
        || {
            let mut rng = opts.rng(2);
            let mut acc = Acc::new(tol);
            for k in 0..10 {
                let w = p.random_functional(&mut rng)?;
                let lhs = p.lambda(&p.predual_sharp(&w)?)?;
                let rhs = p.lambda(&w)?.adjoint();
                acc.cmp(|| format!("sample {k}"), &lhs.compare(&rhs, &tol)?);
            }
            Ok(acc.done().note("10 seeded random densities"))
        },
    );
    r.run(
        "modular-function",
        "∇ ≡ 1",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            let nabla = group.modular_function::<f64>();
            for g in group.elements() {
                acc.value(&[g], "∇(g)", nabla.at(g), Cx::new(1.0, 0.0));
            }
            Ok(acc.done())
        },
    );
    Ok(r.finish(Suite::Base))
}

fn double(ctx: &DoubleContext<f64>, opts: &Options) -> SuiteReport {
    let g = ctx.group();
    let n = ctx.n();
    let tol = opts.tol;
    let mut r = Runner::new(opts);
    let p = ctx.pair();

    match ctx.construction_checks() {
        Ok(list) => {
            for (name, c) in list {
                r.exact(&kebab(name), name, || Ok(c));
            }
        }
        Err(e) => r.run(
            "construction",
            "closed forms",
            CheckMode::Exact,
            0.0,
            || Err(e),
        ),
    }
    r.exact(
        "z-equals-w-t",
        "Z = WT, T = (ĴJ⊗ĴJ)W*(ĴJ⊗JĴ)",
        || ctx.z().compare(&p.w().compose(ctx.t())?),
    );
    r.exact(
        "pentagon-w-m",
        "W_m,₁₂W_m,₁₃W_m,₂₃ = W_m,₂₃W_m,₁₂",
        || pentagon_blocks(ctx.w_m(), 2),
    );
    r.exact(
        "pentagon-w-d",
        "W_D,₁₂W_D,₁₃W_D,₂₃ = W_D,₂₃W_D,₁₂",
        || pentagon_blocks(ctx.w_d(), 2),
    );
    match ctx.structural_identities() {
        Ok(ids) => {
            for id in ids {
                r.exact(id.name, id.formula, || id.check());
            }
        }
        Err(e) => r.run("structural-identities", "", CheckMode::Exact, 0.0, || {
            Err(e)
        }),
    }
    match ctx.w_m_regular_rep() {
        Ok(id) => r.exact(id.name, id.formula, || id.check()),
        Err(e) => r.run(
            "w-m-regular-representation",
            "",
            CheckMode::Exact,
            0.0,
            || Err(e),
        ),
    }
    r.run(
        "t-commutant",
        "T(L_a⊗μ_b) = (L_a⊗μ_b)T",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            acc.err(ctx.t_commutant_error()?, || {
                Witness::message("some L_a⊗μ_b")
            });
            Ok(acc.done())
        },
    );

    r.run(
        "crossed-product-closed-form",
        "Π(μ_k⊗L_f) = (μ_k⊗1)Z*(1⊗L_f)Z; (Πξ)(s,t) = Σ_z k(s)f(z)ξ(z⁻¹sz,z⁻¹t)",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            for q in g.elements() {
                for h in g.elements() {
                    let x = ctx.big_pi(&delta(n, q), &delta(n, h))?;
                    let y = pi_delta(g, q, h)?;
                    acc.cmp(|| format!("Π(δ{q}⊗δ{h})"), &x.compare(&y, &0.0)?);
                }
            }
            Ok(acc.done())
        },
    );
    r.run(
        "pi-homomorphisms",
        "π(f)π(f′) = π(f⋆f′); π′(k)π′(k′) = π′(kk′)",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            for a in g.elements() {
                for b in g.elements() {
                    let (da, db) = (delta(n, a), delta(n, b));
                    let lhs = ctx.pi(&da)?.mul(&ctx.pi(&db)?)?;
                    acc.cmp(
                        || format!("π(δ{a})π(δ{b})"),
                        &lhs.compare(&ctx.pi(&da.convolve(&db, g))?, &0.0)?,
                    );
                    let lhs = ctx.pi_prime(&da)?.mul(&ctx.pi_prime(&db)?)?;
                    acc.cmp(
                        || format!("π′(δ{a})π′(δ{b})"),
                        &lhs.compare(&ctx.pi_prime(&da.pointwise(&db))?, &0.0)?,
                    );
                }
            }
            Ok(acc.done())
        },
    );
    r.run(
        "crossed-product-structure-constants",
        "Π(F₁)Π(F₂) = Π(F₁∗F₂), (F₁∗F₂)(s,g) = Σ_h F₁(s,h)F₂(h⁻¹sh,h⁻¹g)",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            let basis = ctx.pi_basis().elements();
            for i in 0..n * n {
                for j in 0..n * n {
                    let lhs = ctx.pi_coords(&basis[i].mul(&basis[j])?)?;
                    let rhs = crossed_product_convolution(g, &pair_delta(n, i), &pair_delta(n, j));
                    if let Some((s, t)) = lhs.first_diff(&rhs, 0.0) {
                        acc.value(
                            &[i, j, s, t],
                            "structure constant",
                            lhs.at(s, t),
                            rhs.at(s, t),
                        );
                    }
                }
            }
            Ok(acc.done())
        },
    );
    r.run(
        "crossed-product-dimension",
        "dim span Π(δ_p⊗δ_g) = |G|²",
        CheckMode::Float,
        tol,
        || {
            let basis = ctx.pi_basis().elements();
            let m = n * n;
            let gram = Matrix::from_fn(m, m, |i, j| {
                basis[i]
                    .adjoint()
                    .mul(&basis[j])
                    .map(|x| x.trace())
                    .unwrap_or_default()
            });
            let rank = gram.rank(&tol);
            let mut acc = Acc::new(tol);
            if rank != m {
                acc.fail(format!("Gram rank {rank}, expected {m}"));
            }
            Ok(acc.done().note("rank of the trace Gram matrix"))
        },
    );

    r.run(
        "delta-d-closed-form",
        "Δ_D(Π(δ_p⊗δ_g)) = Σ_{st=p} Π(δ_s⊗δ_g)⊗Π(δ_t⊗δ_g)",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            for (k, x) in ctx.pi_basis().elements().iter().enumerate() {
                let lhs = ctx.delta_d(x)?;
                acc.cmp(
                    || format!("Π basis {k}"),
                    &lhs.compare(&ctx.delta_d_closed_form(k / n, k % n)?, &0.0)?,
                );
            }
            Ok(acc.done())
        },
    );
    r.run(
        "delta-d-coalgebra-maps",
        "Δ_D∘π = (π⊗π)∘Δ; Δ_D∘π′ = (π′⊗π′)∘Δ̂; Δ_D(Π(k⊗f)) = (π′⊗π′)(Δ̂k)·(π⊗π)(Δf)",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            let pis: Vec<_> = g
                .elements()
                .map(|a| ctx.pi(&delta(n, a)))
                .collect::<Result<_>>()?;
            let primes: Vec<_> = g
                .elements()
                .map(|a| ctx.pi_prime(&delta(n, a)))
                .collect::<Result<_>>()?;
            let lift = |y: &SparseOperator<f64>,
                        basis: &dyn Basis<f64>,
                        images: &[SparseOperator<f64>]|
             -> Result<SparseOperator<f64>> {
                let c = basis.expand(y, &tol)?;
                let mut out = SparseOperator::zero(n, 4);
                for (k, v) in c.iter().enumerate() {
                    if *v != Cx::new(0.0, 0.0) {
                        out = out.add(&images[k / n].tensor(&images[k % n])?.scale(v))?;
                    }
                }
                Ok(out)
            };
            let mut df = Vec::new();
            let mut dk = Vec::new();
            for a in g.elements() {
                let lhs = ctx.delta_d(&pis[a])?;
                let rhs = lift(
                    &p.comultiply(&p.left_regular(&delta(n, a))?)?,
                    p.ll_basis(),
                    &pis,
                )?;
                acc.cmp(|| format!("π(δ{a})"), &lhs.compare(&rhs, &0.0)?);
                df.push(rhs);
                let lhs = ctx.delta_d(&primes[a])?;
                let rhs = lift(
                    &p.comultiply_dual(&p.multiplication(&delta(n, a))?)?,
                    p.mumu_basis(),
                    &primes,
                )?;
                acc.cmp(|| format!("π′(δ{a})"), &lhs.compare(&rhs, &0.0)?);
                dk.push(rhs);
            }
            for (k, x) in ctx.pi_basis().elements().iter().enumerate() {
                let rhs = dk[k / n].mul(&df[k % n])?;
                acc.cmp(
                    || format!("Π basis {k}"),
                    &ctx.delta_d(x)?.compare(&rhs, &0.0)?,
                );
            }
            Ok(acc.done())
        },
    );
    if n <= 6 {
        r.run(
            "delta-d-coassociativity",
            "(Δ_D⊗id)Δ_D = (id⊗Δ_D)Δ_D",
            CheckMode::Exact,
            0.0,
            || {
                let mut acc = Acc::new(0.0);
                for (k, x) in ctx.pi_basis().elements().iter().enumerate() {
                    let y = ctx.delta_d(x)?;
                    let c = ctx
                        .delta_d_left(&y)?
                        .compare(&ctx.delta_d_right(&y)?, &0.0)?;
                    acc.cmp(|| format!("Π basis {k}"), &c);
                }
                Ok(acc.done())
            },
        );
    } else {
        r.run(
            "delta-d-coassociativity",
            "(Δ_D⊗id)Δ_D = (id⊗Δ_D)Δ_D",
            CheckMode::Randomized,
            tol,
            || {
                let mut rng = opts.rng(3);
                let mut acc = Acc::new(tol);
                for k in 0..16 {
                    let x = ctx.big_pi_grid(&rand_grid(n, &mut rng))?;
                    let v = random_vec(&mut rng, n.pow(6));
                    let (lhs, rhs) =
                        ctx.iterated_coproducts_on_vector(&ctx.delta_d(&x)?, None, &v)?;
                    let err = crate::twist::max_gap(&lhs, &rhs);
                    acc.err(err, || Witness::message(format!("random sample {k}")));
                }
                Ok(acc.done().note("16 seeded random elements and vectors"))
            },
        );
    }
    let strict = opts.at_most(1e-12);
    r.run(
        "haar-d-left-invariance",
        "(id⊗φ_D)Δ_D(x) = φ_D(x)1",
        CheckMode::Float,
        strict,
        || {
            let mut acc = Acc::new(strict);
            acc.err(ctx.left_invariance_error()?, || {
                Witness::message("crossed-product delta basis")
            });
            Ok(acc.done())
        },
    );
    r.run(
        "gns-d-contract",
        "⟨Λ_D(x),Λ_D(y)⟩ = φ_D(y*x)",
        CheckMode::Float,
        strict,
        || {
            let mut acc = Acc::new(strict);
            acc.err(ctx.gns_contract_error()?, || {
                Witness::message("crossed-product delta basis")
            });
            Ok(acc.done())
        },
    );
    r.finish(Suite::Double)
}

fn fourier(ctx: &DoubleContext<f64>, opts: &Options) -> SuiteReport {
    let p = ctx.pair();
    let g = ctx.group();
    let n = ctx.n();
    let mut r = Runner::new(opts);

    r.run(
        "fourier-inversion-function",
        "F⁻¹(F(a)) = a; F(F⁻¹(b)) = b",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            for a in g.elements() {
                let d = delta(n, a);
                if p.fourier_inv_fn(&p.fourier_fn(&d)) != d
                    || p.fourier_fn(&p.fourier_inv_fn(&d)) != d
                {
                    acc.fail(format!("δ{a}"));
                }
            }
            Ok(acc.done())
        },
    );
    r.run(
        "fourier-inversion-operator",
        "F⁻¹F = id on L_a; FF⁻¹ = id on μ_b",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            for a in g.elements() {
                let l = p.left_regular(&delta(n, a))?;
                acc.cmp(
                    || format!("L_δ{a}"),
                    &p.fourier_inv_op(&p.fourier_op(&l)?)?.compare(&l, &0.0)?,
                );
                let m = p.multiplication(&delta(n, a))?;
                acc.cmp(
                    || format!("μ_δ{a}"),
                    &p.fourier_op(&p.fourier_inv_op(&m)?)?.compare(&m, &0.0)?,
                );
            }
            Ok(acc.done())
        },
    );
    r.run(
        "fourier-levels-agree",
        "(φ⊗id)(W(L_a⊗1)) = μ_a; (id⊗φ̂)(W*(1⊗μ_b)) = L_b",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            for a in g.elements() {
                let d = delta(n, a);
                let op = p.fourier_op(&p.left_regular(&d)?)?;
                acc.cmp(
                    || format!("F(L_δ{a})"),
                    &op.compare(&p.multiplication(&p.fourier_fn(&d))?, &0.0)?,
                );
                let op = p.fourier_inv_op(&p.multiplication(&d)?)?;
                acc.cmp(
                    || format!("F⁻¹(μ_δ{a})"),
                    &op.compare(&p.left_regular(&p.fourier_inv_fn(&d))?, &0.0)?,
                );
            }
            Ok(acc.done())
        },
    );
    let strict = opts.at_most(1e-12);
    r.run(
        "fourier-dft",
        "F(L_χk)(g^h) = e^{2πihk/n} = DFT[-h mod n, k]",
        CheckMode::Float,
        strict,
        || {
            let mut acc = Acc::new(strict);
            let Some(gen) = g.elements().find(|&x| g.element_order(x) == n) else {
                return Ok(acc.done().note("group is not cyclic; nothing to compare"));
            };
            let mut power = vec![g.identity(); n];
            for h in 1..n {
                power[h] = g.mul(gen, power[h - 1]);
            }
            let m = operator_fourier_in_characters(p, &power)?;
            for h in 0..n {
                for k in 0..n {
                    let dft = Cx::from_polar(
                        1.0,
                        -2.0 * std::f64::consts::PI * ((((n - h) % n) * k) as f64) / n as f64,
                    );
                    acc.value(&[h, k], "character-basis matrix vs DFT", m.get(h, k), dft);
                }
            }
            Ok(acc.done().note(format!(
                "rows indexed by powers of element {gen}; row h of F is row -h mod n of the DFT"
            )))
        },
    );
    r.run(
        "fourier-double-identity",
        "F_D⁻¹(L_a⊗μ_b) = Π(μ_a⊗L_b)",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            for (k, y) in ctx.lm_basis().elements().iter().enumerate() {
                let x = ctx.fourier_d_inv(y)?;
                let expect = pair_delta(n, k);
                if let Some((s, t)) = x.first_diff(&expect, 0.0) {
                    acc.value(&[k, s, t], "F_D⁻¹ coordinates", x.at(s, t), expect.at(s, t));
                }
            }
            Ok(acc.done())
        },
    );
    r.run(
        "fourier-double-inversion",
        "F_D F_D⁻¹ = id; F_D⁻¹ F_D = id",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            for k in 0..n * n {
                let d = pair_delta(n, k);
                let back =
                    ctx.fourier_d(&ctx.big_pi_grid(&ctx.fourier_d_inv(&ctx.dual_element(&d)?)?)?)?;
                if let Some((s, t)) = back.first_diff(&d, 0.0) {
                    acc.value(&[k, s, t], "F_D F_D⁻¹", back.at(s, t), d.at(s, t));
                }
                let back =
                    ctx.fourier_d_inv(&ctx.dual_element(&ctx.fourier_d(&ctx.big_pi_grid(&d)?)?)?)?;
                if let Some((s, t)) = back.first_diff(&d, 0.0) {
                    acc.value(&[k, s, t], "F_D⁻¹ F_D", back.at(s, t), d.at(s, t));
                }
            }
            Ok(acc.done())
        },
    );
    r.finish(Suite::Fourier)
}

/// `M[h, k]`: the value at `power[h]` of `F(L_{χ_k})`, with
/// `χ_k(power[j]) = e^{2πijk/n}`, computed at operator level.
pub fn operator_fourier_in_characters(
    p: &QuantumGroupPair<f64>,
    power: &[usize],
) -> Result<Matrix<f64>> {
    let n = power.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut chi = GroupFunction::zeros(n);
        for (j, &x) in power.iter().enumerate() {
            chi.values[x] = Cx::from_polar(
                1.0,
                2.0 * std::f64::consts::PI * ((j * k) % n) as f64 / n as f64,
            );
        }
        let y = p.fourier_op(&p.left_regular(&chi)?)?;
        let b = p.mu_coords(&y)?;
        cols.push(power.iter().map(|&x| b.at(x)).collect());
    }
    Matrix::from_columns(&cols)
}

fn pairing(ctx: &DoubleContext<f64>, opts: &Options) -> SuiteReport {
    let p = ctx.pair();
    let g = ctx.group();
    let n = ctx.n();
    let tol = opts.tol;
    let strict = opts.at_most(1e-12);
    let mut r = Runner::new(opts);

    type Form = fn(&QuantumGroupPair<f64>, &GroupFunction<f64>, &GroupFunction<f64>) -> Result<Cx>;
    let forms: [(&str, &str, Form); 3] = [
        (
            "pairing-unitary-form",
            "⟨μ_b|L_a⟩ = (ω⊗θ)(W)",
            |p, b, a| p.pair_unitary(b, a),
        ),
        (
            "pairing-weight-phi",
            "⟨μ_b|L_a⟩ = φ(L_a F⁻¹(μ_b))",
            |p, b, a| p.pair_phi(b, a),
        ),
        (
            "pairing-weight-phi-hat",
            "⟨μ_b|L_a⟩ = φ̂(F(L_a*)*μ_b)",
            |p, b, a| p.pair_phi_hat(b, a),
        ),
    ];
    for (name, anchor, form) in forms {
        r.run(name, anchor, CheckMode::Float, strict, || {
            let mut acc = Acc::new(strict);
            for b in g.elements() {
                for a in g.elements() {
                    let (db, da) = (delta(n, b), delta(n, a));
                    acc.value(&[b, a], "⟨μ_δb|L_δa⟩", p.pair(&db, &da), form(p, &db, &da)?);
                }
            }
            Ok(acc.done())
        });
    }

    let ls: Vec<SparseOperator<f64>> = p.l_basis().elements().to_vec();
    let mus: Vec<SparseOperator<f64>> = p.mu_basis().elements().to_vec();
    r.run(
        "pairing-property-1",
        "⟨b₁b₂|a⟩ = ⟨b₁⊗b₂|Δ(a)⟩",
        CheckMode::Float,
        tol,
        || {
            let mut acc = Acc::new(tol);
            for a in g.elements() {
                let da = p.comultiply(&ls[a])?;
                for b1 in g.elements() {
                    for b2 in g.elements() {
                        let lhs = p.pair(&delta(n, b1).pointwise(&delta(n, b2)), &delta(n, a));
                        let rhs = p.pair2(&mus[b1].tensor(&mus[b2])?, &da)?;
                        acc.value(&[b1, b2, a], "b₁, b₂, a", lhs, rhs);
                    }
                }
            }
            Ok(acc.done())
        },
    );
    r.run(
        "pairing-property-2",
        "⟨b|a₁a₂⟩ = ⟨Δ̂^cop(b)|a₁⊗a₂⟩",
        CheckMode::Float,
        tol,
        || {
            let mut acc = Acc::new(tol);
            for b in g.elements() {
                let db = p.flip(&p.comultiply_dual(&mus[b])?)?;
                for a1 in g.elements() {
                    for a2 in g.elements() {
                        let lhs = p.pair(&delta(n, b), &delta(n, a1).convolve(&delta(n, a2), g));
                        let rhs = p.pair2(&db, &ls[a1].tensor(&ls[a2])?)?;
                        acc.value(&[b, a1, a2], "b, a₁, a₂", lhs, rhs);
                    }
                }
            }
            Ok(acc.done())
        },
    );
    r.run(
        "pairing-property-3",
        "⟨b|S(a)⟩ = ⟨Ŝ⁻¹(b)|a⟩",
        CheckMode::Float,
        tol,
        || {
            let mut acc = Acc::new(tol);
            for b in g.elements() {
                for a in g.elements() {
                    let (db, da) = (delta(n, b), delta(n, a));
                    // Ŝ is an involution, so Ŝ⁻¹ = Ŝ
                    acc.value(
                        &[b, a],
                        "b, a",
                        p.pair(&db, &p.antipode(&da)),
                        p.pair(&p.antipode_dual(&db), &da),
                    );
                }
            }
            Ok(acc.done())
        },
    );

    let exhaustive = n <= 6;
    r.run(
        "double-pairing-paths",
        "Σ_{s,t} A(t⁻¹st,t⁻¹)K(s,t) = (φ_D⊗φ̂_D)[(Π(K)⊗1⊗1)W_D*(1⊗1⊗X_A)]",
        if exhaustive {
            CheckMode::Float
        } else {
            CheckMode::Randomized
        },
        tol,
        || {
            let mut acc = Acc::new(tol);
            if exhaustive {
                for i in 0..n * n {
                    for j in 0..n * n {
                        let (a, k) = (pair_delta(n, i), pair_delta(n, j));
                        acc.value(
                            &[i, j],
                            "dual-double delta, crossed-product delta",
                            ctx.pair_double(&a, &k),
                            ctx.pair_double_weights(&a, &k)?,
                        );
                    }
                }
                Ok(acc.done())
            } else {
                let mut rng = opts.rng(4);
                for s in 0..4 {
                    let a = rand_grid(n, &mut rng);
                    let k = rand_grid(n, &mut rng);
                    acc.value(
                        &[s],
                        "random grid pair",
                        ctx.pair_double(&a, &k),
                        ctx.pair_double_weights(&a, &k)?,
                    );
                }
                Ok(acc.done().note("4 seeded random grid pairs"))
            }
        },
    );
    r.finish(Suite::Pairing)
}

/// An R-matrix with the sign of one basis image flipped.
pub fn mis_signed(r: &RMatrix<f64>) -> Result<RMatrix<f64>> {
    let j = usize::from(r.ctx().n() > 1);
    Ok(r.with_operator(r.op().with_phase(j, Cx::new(-1.0, 0.0))?))
}

/// The checks of the rmatrix suite for a given R-matrix.
pub fn rmatrix_checks(rm: &RMatrix<f64>, opts: &Options) -> Vec<Check> {
    let ctx = rm.ctx();
    let g = ctx.group();
    let n = ctx.n();
    let tol = opts.tol;
    let mut r = Runner::new(opts);
    r.exact("r-unitary", "R*R = 1", || rm.unitarity());
    r.exact(
        "r-closed-form",
        "R = Z₃₄*Ŵ₁₄Z₃₄: δ(a,b,c,d) ↦ δ(a,b,aca⁻¹,ad)",
        || {
            let closed = MonomialOperator::from_tuple_map(n, 4, |x| {
                vec![
                    x[0],
                    x[1],
                    g.mul(g.mul(x[0], x[2]), g.inv(x[0])),
                    g.mul(x[0], x[3]),
                ]
            })?;
            rm.op().compare(&closed)
        },
    );
    r.run(
        "r-in-double-tensor-square",
        "R ∈ span Π(δ⊗δ) ⊗ Π(δ⊗δ)",
        CheckMode::Float,
        tol,
        || {
            rm.pi_pi_coords()?;
            Ok(Outcome::default())
        },
    );
    r.exact("hexagon-left", "(Δ_D⊗id)(R) = R₁₃R₂₃", || {
        rm.hexagon_left()
    });
    r.exact("hexagon-right", "(id⊗Δ_D)(R) = R₁₃R₁₂", || {
        rm.hexagon_right()
    });
    r.run(
        "r-intertwines-cop",
        "RΔ_D(x)R* = Δ_D^cop(x)",
        CheckMode::Float,
        tol,
        || {
            let mut acc = Acc::new(tol);
            for (k, x) in ctx.pi_basis().elements().iter().enumerate() {
                acc.cmp(|| format!("Π basis {k}"), &rm.intertwines(x)?);
            }
            Ok(acc.done())
        },
    );
    r.exact("qybe", "R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂", || rm.qybe());
    if n <= 4 {
        r.run(
            "twisted-coassociativity",
            "(RΔ_D⊗id)RΔ_D = (id⊗RΔ_D)RΔ_D",
            CheckMode::Exact,
            0.0,
            || {
                let mut acc = Acc::new(0.0);
                for (k, x) in ctx.pi_basis().elements().iter().enumerate() {
                    let y = rm.twisted_comultiply(x)?;
                    acc.cmp(
                        || format!("Π basis {k}"),
                        &rm.twisted_left(&y)?.compare(&rm.twisted_right(&y)?, &0.0)?,
                    );
                }
                Ok(acc.done())
            },
        );
    } else {
        r.run(
            "twisted-coassociativity",
            "(RΔ_D⊗id)RΔ_D = (id⊗RΔ_D)RΔ_D",
            CheckMode::Randomized,
            tol,
            || {
                let mut rng = opts.rng(5);
                let mut acc = Acc::new(tol);
                for k in 0..64 {
                    let x = ctx.big_pi_grid(&rand_grid(n, &mut rng))?;
                    let v = random_vec(&mut rng, n.pow(6));
                    let err = rm.coassociativity_on_vector(&x, &v)?;
                    acc.err(err, || Witness::message(format!("random sample {k}")));
                }
                Ok(acc.done().note("64 seeded random elements and vectors"))
            },
        );
    }
    r.run(
        "twisted-unit",
        "RΔ_D(1) = R",
        CheckMode::Exact,
        0.0,
        || {
            let one = SparseOperator::identity(n, 2);
            let c = rm
                .twisted_comultiply(&one)?
                .compare(&rm.op().to_sparse()?, &0.0)?;
            let mut acc = Acc::new(0.0);
            acc.cmp(|| "RΔ_D(1)".into(), &c);
            let trivial = rm.op().is_identity();
            Ok(acc.done().note(if trivial {
                "R = 1 here, so the twisted coproduct is unital"
            } else {
                "R ≠ 1, so the twisted coproduct is not unital"
            }))
        },
    );
    r.run(
        "twisted-not-star-preserving",
        "RΔ_D(x*) ≠ RΔ_D(x)* for some x",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            let note = match rm.star_preservation()? {
                StarPreservation::Witness { index, max_error } => {
                    format!("witness x = Π basis {index}, discrepancy {max_error:e}")
                }
                StarPreservation::Preserved { r_involutive: true, cocommutative: true } => {
                    "no witness exists: R² = 1 and Δ_D is cocommutative (elementary abelian 2-group or trivial)".into()
                }
                StarPreservation::Preserved { r_involutive, cocommutative } => {
                    acc.fail(format!(
                        "preserved on every basis element, but R² = 1 is {r_involutive} and cocommutativity is {cocommutative}"
                    ));
                    String::new()
                }
            };
            Ok(acc.done().note(note))
        },
    );
    r.checks
}

fn rmatrix(tw: &Twist<f64>, opts: &Options) -> SuiteReport {
    let rm = if opts.mis_signed_r {
        match mis_signed(tw.r()) {
            Ok(r) => r,
            Err(e) => {
                let mut r = Runner::new(opts);
                r.run("mis-signed-r", "", CheckMode::Exact, 0.0, || Err(e));
                return r.finish(Suite::Rmatrix);
            }
        }
    } else {
        tw.r().clone()
    };
    let mut checks = rmatrix_checks(&rm, opts);
    if !opts.mis_signed_r {
        let mut r = Runner::new(opts);
        r.run(
            "mis-signed-r-detected",
            "a sign-flipped R fails a hexagon identity or QYBE",
            CheckMode::Exact,
            0.0,
            || {
                let bad = mis_signed(tw.r())?;
                let found = [bad.hexagon_left()?, bad.hexagon_right()?, bad.qybe()?]
                    .into_iter()
                    .zip(["hexagon-left", "hexagon-right", "qybe"])
                    .find_map(|(c, name)| c.witness.map(|w| (name, w)));
                let mut acc = Acc::new(0.0);
                match found {
                    Some((name, w)) => {
                        return Ok(acc
                            .done()
                            .note(format!("{name} fails at row {:?} col {:?}", w.row, w.col)));
                    }
                    None => acc.fail("sign-flipped R passed every identity"),
                }
                Ok(acc.done())
            },
        );
        checks.extend(r.checks);
    }
    SuiteReport::new(Suite::Rmatrix.name(), checks)
}

fn twist_suite(tw: &Twist<f64>, opts: &Options) -> SuiteReport {
    let g = tw.group();
    let n = g.order();
    let tol = opts.tol;
    let mut r = Runner::new(opts);

    let exhaustive = n <= 4;
    let start = Instant::now();
    type Sample = (
        String,
        PairFunction<f64>,
        PairFunction<f64>,
        PairFunction<f64>,
    );
    let samples: Result<Vec<Sample>> = {
        let mut pairs = Vec::new();
        if exhaustive {
            for i in 0..n * n {
                for j in 0..n * n {
                    pairs.push((
                        format!("delta pair ({i}, {j})"),
                        pair_delta(n, i),
                        pair_delta(n, j),
                    ));
                }
            }
        }
        let mut rng = opts.rng(6);
        for k in 0..200 {
            pairs.push((
                format!("random pair {k}"),
                rand_grid(n, &mut rng),
                rand_grid(n, &mut rng),
            ));
        }
        pairs
            .into_iter()
            .map(|(label, f, f2)| {
                Ok((
                    label,
                    product_direct(g, &f, &f2),
                    tw.product_functional(&f, &f2)?,
                    tw.product_fourier(&f, &f2)?,
                ))
            })
            .collect()
    };
    let shared_ms = start.elapsed().as_millis() as u64;
    let note = if exhaustive {
        "all delta pairs and 200 seeded random pairs"
    } else {
        "200 seeded random pairs"
    };
    for (name, anchor, a, b) in [
        (
            "product-direct-vs-functional",
            "Σ_z F(z,t)F′(z⁻¹s,z⁻¹t) = (ω_F ∗_R ω_F′ ⊗ id)(W_D)",
            1usize,
            2usize,
        ),
        (
            "product-direct-vs-fourier",
            "Σ_z F(z,t)F′(z⁻¹s,z⁻¹t) = (m⊗m)(F_D⊗F_D)(R[F_D⁻¹F ⊗ F_D⁻¹F′])",
            1,
            3,
        ),
        (
            "product-functional-vs-fourier",
            "(ω_F ∗_R ω_F′ ⊗ id)(W_D) = (m⊗m)(F_D⊗F_D)(R[F_D⁻¹F ⊗ F_D⁻¹F′])",
            2,
            3,
        ),
    ] {
        r.run(
            name,
            anchor,
            if exhaustive {
                CheckMode::Float
            } else {
                CheckMode::Randomized
            },
            tol,
            || {
                let list = samples.as_ref().map_err(|e| Error::Parse(e.to_string()))?;
                let mut acc = Acc::new(tol);
                for (label, d, f, o) in list {
                    let pick = |i: usize| match i {
                        1 => d,
                        2 => f,
                        _ => o,
                    };
                    let (x, y) = (pick(a), pick(b));
                    let err = x.max_diff(y);
                    acc.err(err, || {
                        let (s, t) = x.first_diff(y, tol).unwrap_or((0, 0));
                        Witness {
                            tuple: vec![s, t],
                            values: vec![format_complex(&x.at(s, t)), format_complex(&y.at(s, t))],
                            description: label.clone(),
                        }
                    });
                }
                Ok(acc.done().note(note))
            },
        );
    }
    if opts.timing {
        if let Some(c) = r.checks.first_mut() {
            c.elapsed_ms += shared_ms;
        }
    }

    r.run(
        "product-associative",
        "(F×F′)×F″ = F×(F′×F″)",
        CheckMode::Randomized,
        tol,
        || {
            let mut rng = opts.rng(7);
            let mut acc = Acc::new(tol);
            for k in 0..50 {
                let (a, b, c) = (
                    rand_grid(n, &mut rng),
                    rand_grid(n, &mut rng),
                    rand_grid(n, &mut rng),
                );
                let lhs = product_direct(g, &product_direct(g, &a, &b), &c);
                let rhs = product_direct(g, &a, &product_direct(g, &b, &c));
                acc.err(lhs.max_diff(&rhs), || {
                    Witness::message(format!("random triple {k}"))
                });
            }
            Ok(acc.done().note("50 seeded random triples"))
        },
    );
    r.run(
        "q-homomorphism",
        "Q(ω)Q(ω′) = Q(ω ∗_R ω′)",
        CheckMode::Randomized,
        tol,
        || {
            let mut rng = opts.rng(8);
            let mut acc = Acc::new(tol);
            for k in 0..3 {
                let w = tw.random_functional(&mut rng)?;
                let w2 = tw.random_functional(&mut rng)?;
                acc.err(tw.q_homomorphism_error(&w, &w2)?, || {
                    Witness::message(format!("random pair {k}"))
                });
            }
            Ok(acc.done().note("3 seeded random functional pairs"))
        },
    );
    r.run(
        "q-span-dimension",
        "dim span Q(ω) = |G|²",
        CheckMode::Float,
        tol,
        || {
            let rank = tw.q_span_rank()?;
            let mut acc = Acc::new(tol);
            if rank != n * n {
                acc.fail(format!("rank {rank}, expected {}", n * n));
            }
            Ok(acc.done())
        },
    );
    r.finish(Suite::Twist)
}

fn weyl(g: &FiniteGroup, opts: &Options) -> SuiteReport {
    let n = g.order();
    let tol = opts.tol;
    let strict = opts.at_most(1e-12);
    let exhaustive = n <= 12;
    let mut r = Runner::new(opts);

    r.run(
        "weyl-matrix-units",
        "δ_(g,t₀) ↦ E_{t₀, g⁻¹t₀}; bijective onto matrix units, so rank |G|²",
        CheckMode::Exact,
        0.0,
        || {
            let mut acc = Acc::new(0.0);
            let mut hit = vec![false; n * n];
            for k in 0..n * n {
                let (x, t0) = (k / n, k % n);
                let m = weyl_rep(g, &pair_delta(n, k));
                let u0 = g.mul(g.inv(x), t0);
                for t in 0..n {
                    for u in 0..n {
                        let want = Cx::new(((t, u) == (t0, u0)) as u8 as f64, 0.0);
                        if m.get(t, u) != want {
                            acc.value(&[x, t0, t, u], "matrix entry", m.get(t, u), want);
                        }
                    }
                }
                hit[t0 * n + u0] = true;
            }
            let rank = hit.iter().filter(|h| **h).count();
            if rank != n * n {
                acc.fail(format!("images span rank {rank}, expected {}", n * n));
            }
            Ok(acc.done())
        },
    );
    let pairs = |salt: u64| -> Vec<(String, PairFunction<f64>, PairFunction<f64>)> {
        let mut out = Vec::new();
        if exhaustive {
            for i in 0..n * n {
                for j in 0..n * n {
                    out.push((
                        format!("delta pair ({i}, {j})"),
                        pair_delta(n, i),
                        pair_delta(n, j),
                    ));
                }
            }
        }
        let mut rng = opts.rng(salt);
        for k in 0..50 {
            out.push((
                format!("random pair {k}"),
                rand_grid(n, &mut rng),
                rand_grid(n, &mut rng),
            ));
        }
        out
    };
    let note = if exhaustive {
        "all delta pairs and 50 seeded random pairs"
    } else {
        "50 seeded random pairs"
    };
    r.run(
        "weyl-multiplicative",
        "π(F ×_R F′) = π(F)π(F′)",
        CheckMode::Float,
        strict,
        || {
            let mut acc = Acc::new(strict);
            for (label, f, f2) in pairs(9) {
                let lhs = weyl_rep(g, &product_direct(g, &f, &f2));
                let rhs = weyl_rep(g, &f).mul(&weyl_rep(g, &f2))?;
                let (err, at) = lhs.max_diff(&rhs, &strict)?;
                acc.err(err, || {
                    let (t, u) = at.unwrap_or((0, 0));
                    Witness {
                        tuple: vec![t, u],
                        values: vec![
                            format_complex(&lhs.get(t, u)),
                            format_complex(&rhs.get(t, u)),
                        ],
                        description: label.clone(),
                    }
                });
            }
            Ok(acc.done().note(note))
        },
    );
    r.run(
        "weyl-star-preserving",
        "π(F*) = π(F)†",
        CheckMode::Float,
        strict,
        || {
            let mut acc = Acc::new(strict);
            let mut rng = opts.rng(10);
            let mut grids: Vec<(String, PairFunction<f64>)> = (0..n * n)
                .map(|k| (format!("delta {k}"), pair_delta(n, k)))
                .collect();
            grids.extend((0..50).map(|k| (format!("random grid {k}"), rand_grid(n, &mut rng))));
            for (label, f) in grids {
                let lhs = weyl_rep(g, &weyl_involution(g, &f));
                let rhs = weyl_rep(g, &f).adjoint();
                let (err, _) = lhs.max_diff(&rhs, &strict)?;
                acc.err(err, || Witness::message(label.clone()));
            }
            Ok(acc.done())
        },
    );
    r.run(
        "involution-involutive",
        "(F*)* = F",
        CheckMode::Randomized,
        strict,
        || {
            let mut acc = Acc::new(strict);
            let mut rng = opts.rng(11);
            for k in 0..50 {
                let f = rand_grid(n, &mut rng);
                acc.err(
                    weyl_involution(g, &weyl_involution(g, &f)).max_diff(&f),
                    || Witness::message(format!("random grid {k}")),
                );
            }
            Ok(acc.done())
        },
    );
    r.run(
        "involution-anti-multiplicative",
        "(F ×_R F′)* = F′* ×_R F*",
        CheckMode::Randomized,
        tol,
        || {
            let mut acc = Acc::new(tol);
            let mut rng = opts.rng(12);
            for k in 0..50 {
                let (f, f2) = (rand_grid(n, &mut rng), rand_grid(n, &mut rng));
                let lhs = weyl_involution(g, &product_direct(g, &f, &f2));
                let rhs = product_direct(g, &weyl_involution(g, &f2), &weyl_involution(g, &f));
                acc.err(lhs.max_diff(&rhs), || {
                    Witness::message(format!("random pair {k}"))
                });
            }
            Ok(acc.done().note("50 seeded random pairs"))
        },
    );
    r.run(
        "generator-picture",
        "Φ(δ_p⊗δ_q) = (1⊗μ_q)Δ(L_p); dim span = |G|²",
        CheckMode::Exact,
        0.0,
        || {
            let pair = QuantumGroupPair::<f64>::with_tolerance(g, tol)?;
            let mut acc = Acc::new(0.0);
            let mut images = Vec::with_capacity(n * n);
            for k in 0..n * n {
                let (a, b) = (k / n, k % n);
                let phi = generator_picture(g, &pair_delta(n, k))?;
                let direct = pair
                    .multiplication(&delta(n, b))?
                    .embed(&[2], 2)?
                    .mul(&pair.comultiply(&pair.left_regular(&delta(n, a))?)?)?;
                acc.cmp(|| format!("δ{a}⊗δ{b}"), &phi.compare(&direct, &0.0)?);
                images.push(phi);
            }
            match crate::engine::OperatorBasis::new("generator picture", images) {
                Ok(b) if b.len() == n * n => {}
                _ => acc.fail("images do not have disjoint nonempty supports"),
            }
            Ok(acc
                .done()
                .note("images have disjoint nonempty supports, hence rank |G|²"))
        },
    );
    r.run(
        "generator-intertwines",
        "Φ(F ×_R F′) = Φ(F)Φ(F′)",
        CheckMode::Float,
        tol,
        || {
            let mut acc = Acc::new(tol);
            for (label, f, f2) in pairs(13) {
                let lhs = generator_picture(g, &product_direct(g, &f, &f2))?;
                let rhs = generator_picture(g, &f)?.mul(&generator_picture(g, &f2)?)?;
                acc.cmp(|| label.clone(), &lhs.compare(&rhs, &tol)?);
            }
            Ok(acc.done().note(note))
        },
    );
    r.finish(Suite::Weyl)
}

/// Runs every suite whose cap admits the group.
pub fn verify_all(group: &FiniteGroup, opts: &Options) -> Result<Report> {
    let fitting: Vec<Suite> = Suite::ALL
        .into_iter()
        .filter(|s| group.order() <= opts.cap(*s))
        .collect();
    verify(group, &fitting, opts)
}
