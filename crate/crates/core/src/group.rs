//! Finite groups given by validated Cayley tables.
//!
//! Element `0` is always the identity. Every Hilbert space in the crate is
//! `ℂ[G]^{⊗m}` with basis tuples indexed by these element indices, so this
//! module is the single source of element numbering.
//!
//! Built-in enumerations (all deterministic):
//!
//! - `cyclic:n`: element `k` is `k mod n`.
//! - `dihedral:n` (order `2n`): index `k + n·f` is `r^k s^f`, with
//!   `s r s = r^{-1}`.
//! - `symmetric:n` (order `n!`): permutations of `{1..n}` in lexicographic
//!   order of their one-line notation; the product `στ` applies `τ` first.
//! - `quaternion8`: `1, -1, i, -i, j, -j, k, -k` in that order.
//! - `product:A,B`: index `a·|B| + b` is the pair `(a, b)`. The spec string
//!   is split at its first comma, so only the right factor may itself be a
//!   product.
//! - `trivial`: the one-element group.

use std::fmt;
use std::path::Path;

use crate::error::{Axiom, Error, Result};
use crate::scalar::{one, zero, Real, C};

/// Default cap on the order of groups accepted by [`FiniteGroup::builtin`].
pub const DEFAULT_MAX_ORDER: usize = 24;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    name: String,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and builds the group.
    ///
    /// If the identity is not element `0`, elements `0` and the identity are
    /// swapped so that the result follows the crate-wide convention.
    pub fn from_cayley(table: &[Vec<usize>]) -> Result<Self> {
        Self::from_cayley_named(table, "cayley", None)
    }

    fn from_cayley_named(
        table: &[Vec<usize>],
        name: &str,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::AxiomViolation {
                kind: Axiom::Shape,
                witness: [0, 0, 0],
            });
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::AxiomViolation {
                    kind: Axiom::Shape,
                    witness: [a, row.len(), n],
                });
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(Error::AxiomViolation {
                        kind: Axiom::Closure,
                        witness: [a, b, c],
                    });
                }
            }
        }

        let is_identity = |e: usize| (0..n).all(|g| table[e][g] == g && table[g][e] == g);
        let Some(e) = (0..n).find(|&e| is_identity(e)) else {
            // report the first failure of candidate 0
            let g = (0..n)
                .find(|&g| table[0][g] != g || table[g][0] != g)
                .unwrap_or(0);
            return Err(Error::AxiomViolation {
                kind: Axiom::Identity,
                witness: [0, g, table[0][g]],
            });
        };

        // relabel so the identity sits at index 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut flat = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }

        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            let cands: Vec<usize> = (0..n)
                .filter(|&h| flat[g * n + h] == 0 && flat[h * n + g] == 0)
                .collect();
            if cands.len() != 1 {
                return Err(Error::AxiomViolation {
                    kind: Axiom::Inverse,
                    witness: [relabel(g), cands.len(), 0],
                });
            }
            inverse[g] = cands[0];
        }

        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    let bc = flat[b * n + c];
                    if flat[ab * n + c] != flat[a * n + bc] {
                        return Err(Error::AxiomViolation {
                            kind: Axiom::Associativity,
                            witness: [relabel(a), relabel(b), relabel(c)],
                        });
                    }
                }
            }
        }

        let labels = match labels {
            Some(l) if e == 0 => l,
            Some(mut l) => {
                l.swap(0, e);
                l
            }
            None => (0..n).map(|g| relabel(g).to_string()).collect(),
        };

        Ok(Self {
            order: n,
            table: flat,
            inverse,
            name: name.to_string(),
            labels,
        })
    }

    /// Parses the text Cayley format: first non-comment line is `n`, then
    /// `n` rows of `n` whitespace-separated indices. `#` starts a comment.
    pub fn parse_cayley(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty Cayley file".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("order line: {e}")))?;
        let mut table = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::Parse(format!("row {}: `{t}`: {e}", i + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        if table.len() != n {
            return Err(Error::Parse(format!(
                "expected {n} table rows, found {}",
                table.len()
            )));
        }
        Self::from_cayley(&table)
    }

    pub fn from_cayley_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        let mut g = Self::parse_cayley(&text)?;
        g.name = path.as_ref().display().to_string();
        Ok(g)
    }

    /// Builds a named group, refusing orders above `max_order`.
    pub fn builtin(spec: &str, max_order: usize) -> Result<Self> {
        let spec = spec.trim();
        let (kind, arg) = match spec.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (spec, None),
        };
        let limit = |order: usize| {
            if order > max_order {
                Err(Error::SizeLimit {
                    what: format!("group {spec}"),
                    order,
                    cap: max_order,
                })
            } else {
                Ok(())
            }
        };
        let parse_n = |a: Option<&str>| -> Result<usize> {
            a.and_then(|s| s.trim().parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::UnknownSpec(spec.to_string()))
        };
        let group = match kind {
            "trivial" if arg.is_none() => cyclic(1),
            "cyclic" => {
                let n = parse_n(arg)?;
                limit(n)?;
                cyclic(n)
            }
            "dihedral" => {
                let n = parse_n(arg)?;
                limit(2 * n)?;
                dihedral(n)
            }
            "symmetric" => {
                let n = parse_n(arg)?;
                let order = (1..=n)
                    .try_fold(1usize, |acc, k| acc.checked_mul(k))
                    .unwrap_or(usize::MAX);
                limit(order)?;
                symmetric(n)
            }
            "quaternion8" if arg.is_none() => {
                limit(8)?;
                quaternion8()
            }
            "product" => {
                let (left, right) = arg
                    .and_then(|a| a.split_once(','))
                    .ok_or_else(|| Error::UnknownSpec(spec.to_string()))?;
                let a = Self::builtin(left, max_order)?;
                let b = Self::builtin(right, max_order)?;
                limit(a.order * b.order)?;
                direct_product(&a, &b)
            }
            _ => return Err(Error::UnknownSpec(spec.to_string())),
        };
        let mut group = group?;
        group.name = spec.to_string();
        Ok(group)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `z⁻¹ s z`
    #[inline]
    pub fn conj_by(&self, s: usize, z: usize) -> usize {
        self.mul(self.mul(self.inv(z), s), z)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Serializes to the text Cayley format accepted by [`Self::parse_cayley`].
    pub fn to_cayley_text(&self) -> String {
        let mut out = format!("# {}\n{}\n", self.name, self.order);
        for row in self.table.chunks(self.order) {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// The modular function. Finite groups are unimodular, so it is constant
    /// `1`; it is still threaded through the formulas that mention it.
    pub fn modular_function<T: Real>(&self) -> GroupFunction<T> {
        GroupFunction::constant(self.order, one())
    }
}

fn from_mul(
    n: usize,
    labels: Vec<String>,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<FiniteGroup> {
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| mul(a, b)).collect())
        .collect();
    FiniteGroup::from_cayley_named(&table, "", Some(labels))
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    from_mul(n, (0..n).map(|k| k.to_string()).collect(), |a, b| {
        (a + b) % n
    })
}

fn dihedral(n: usize) -> Result<FiniteGroup> {
    let labels = (0..2 * n)
        .map(|i| {
            let (k, f) = (i % n, i / n);
            if f == 0 {
                format!("r{k}")
            } else {
                format!("r{k}s")
            }
        })
        .collect();
    from_mul(2 * n, labels, |x, y| {
        let (a, f) = (x % n, x / n);
        let (b, g) = (y % n, y / n);
        // r^a s^f r^b s^g = r^{a ± b} s^{f+g}
        let k = if f == 0 { (a + b) % n } else { (a + n - b) % n };
        k + n * ((f + g) % 2)
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

fn symmetric(n: usize) -> Result<FiniteGroup> {
    let perms = permutations(n);
    let index: std::collections::HashMap<Vec<usize>, usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let labels = perms.iter().map(|p| cycle_label(p)).collect();
    from_mul(perms.len(), labels, |a, b| {
        let (s, t) = (&perms[a], &perms[b]);
        let st: Vec<usize> = (0..n).map(|i| s[t[i]]).collect();
        index[&st]
    })
}

fn quaternion8() -> Result<FiniteGroup> {
    // unit u ∈ {1,i,j,k} as 0..4, sign bit; index = 2u + sign
    const UNIT_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    from_mul(8, labels, |x, y| {
        let (u, su) = (x / 2, x % 2);
        let (v, sv) = (y / 2, y % 2);
        let (w, sw) = UNIT_MUL[u][v];
        2 * w + (su + sv + sw) % 2
    })
}

fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let nb = b.order;
    let labels = (0..a.order * nb)
        .map(|i| format!("({},{})", a.label(i / nb), b.label(i % nb)))
        .collect();
    from_mul(a.order * nb, labels, |x, y| {
        a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
    })
}

/// A complex function on the group, stored as a value per element.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFunction<T> {
    pub values: Vec<C<T>>,
}

impl<T: Real> GroupFunction<T> {
    pub fn new(values: Vec<C<T>>) -> Self {
        Self { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self::constant(n, zero())
    }

    pub fn constant(n: usize, c: C<T>) -> Self {
        Self { values: vec![c; n] }
    }

    pub fn delta(n: usize, g: usize) -> Self {
        let mut f = Self::zeros(n);
        f.values[g] = one();
        f
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn at(&self, g: usize) -> C<T> {
        self.values[g].clone()
    }

    pub fn map(&self, f: impl Fn(&C<T>) -> C<T>) -> Self {
        Self {
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn pointwise(&self, other: &Self) -> Self {
        Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() * b.clone())
                .collect(),
        }
    }

    /// `t ↦ self(t⁻¹)`
    pub fn reflect(&self, g: &FiniteGroup) -> Self {
        Self {
            values: g.elements().map(|t| self.at(g.inv(t))).collect(),
        }
    }

    /// Convolution `(a ⋆ b)(t) = Σ_z a(z) b(z⁻¹t)`.
    pub fn convolve(&self, other: &Self, g: &FiniteGroup) -> Self {
        let mut out = Self::zeros(g.order());
        for z in g.elements() {
            for u in g.elements() {
                out.values[g.mul(z, u)] =
                    out.values[g.mul(z, u)].clone() + self.at(z) * other.at(u);
            }
        }
        out
    }

    /// Group-algebra involution `a*(z) = conj(a(z⁻¹))`.
    pub fn star(&self, g: &FiniteGroup) -> Self {
        self.reflect(g).conj()
    }

    pub fn sum(&self) -> C<T> {
        self.values.iter().fold(zero(), |acc, v| acc + v.clone())
    }
}
