//! Functions on `G × G` and the plain-text complex grid format.
//!
//! A grid is written one row per first index, entries separated by
//! whitespace, each entry in the form `re±im i` (for example `1+0i`,
//! `-0.5-2i`). Bare reals (`3`) and bare imaginaries (`2i`) are accepted on
//! input. Lines may also be separated by `;` so that grids fit on a command
//! line.

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupFunction};
use crate::scalar::{from_f64, modulus, one, to_c64, zero, Real, C};

/// A complex function `F(s, t)` on `G × G`, stored row-major in `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairFunction<T> {
    n: usize,
    values: Vec<C<T>>,
}

impl<T: Real> PairFunction<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            values: vec![zero(); n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        Self {
            n,
            values: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn from_values(n: usize, values: Vec<C<T>>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a {n}x{n} grid",
                values.len()
            )));
        }
        Ok(Self { n, values })
    }

    pub fn delta(n: usize, s: usize, t: usize) -> Self {
        let mut f = Self::zeros(n);
        f.values[s * n + t] = one();
        f
    }

    /// `(s, t) ↦ a(s) b(t)`
    pub fn elementary(a: &GroupFunction<T>, b: &GroupFunction<T>) -> Self {
        let n = a.len();
        Self::from_fn(n, |s, t| a.at(s) * b.at(t))
    }

    /// Entries with real and imaginary parts uniform in `[-1, 1)`.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        Self::from_fn(n, |_, _| {
            from_f64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, s: usize, t: usize) -> C<T> {
        self.values[s * self.n + t].clone()
    }

    #[inline]
    pub fn set(&mut self, s: usize, t: usize, v: C<T>) {
        self.values[s * self.n + t] = v;
    }

    pub fn values(&self) -> &[C<T>] {
        &self.values
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.n, |s, t| self.at(s, t) + other.at(s, t))
    }

    pub fn scale(&self, c: &C<T>) -> Self {
        Self::from_fn(self.n, |s, t| self.at(s, t) * c.clone())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| modulus(&(a.clone() - b.clone())))
            .fold(0.0, f64::max)
    }

    /// First `(s, t)` whose difference exceeds `tol`.
    pub fn first_diff(&self, other: &Self, tol: f64) -> Option<(usize, usize)> {
        (0..self.n * self.n)
            .find(|&k| modulus(&(self.values[k].clone() - other.values[k].clone())) > tol)
            .map(|k| (k / self.n, k % self.n))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|t| format_complex(&self.at(s, t)))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str, group: &FiniteGroup) -> Result<Self> {
        let rows = parse_rows(text)?;
        let n = group.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!(
                "expected a {n}x{n} grid, found {} rows",
                rows.len()
            )));
        }
        Ok(Self {
            n,
            values: rows
                .into_iter()
                .flatten()
                .map(|z| from_f64(z.re, z.im))
                .collect(),
        })
    }
}

/// Parses a single row of `n` entries as a function on the group.
pub fn parse_group_function<T: Real>(text: &str, group: &FiniteGroup) -> Result<GroupFunction<T>> {
    let rows = parse_rows(text)?;
    let flat: Vec<Complex<f64>> = rows.into_iter().flatten().collect();
    if flat.len() != group.order() {
        return Err(Error::ShapeMismatch(format!(
            "expected {} values, found {}",
            group.order(),
            flat.len()
        )));
    }
    Ok(GroupFunction::new(
        flat.into_iter().map(|z| from_f64(z.re, z.im)).collect(),
    ))
}

pub fn format_group_function<T: Real>(f: &GroupFunction<T>) -> String {
    let row: Vec<String> = f.values.iter().map(format_complex).collect();
    row.join(" ") + "\n"
}

/// Rows of a square matrix in grid format.
pub fn format_matrix<T: Real>(m: &crate::linalg::Matrix<T>) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|c| format_complex(&m.get(r, c)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_rows(text: &str) -> Result<Vec<Vec<Complex<f64>>>> {
    text.split(['\n', ';'])
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().map(parse_complex).collect())
        .collect()
}

/// Parses `re±im i`, `re`, or `im i`.
pub fn parse_complex(token: &str) -> Result<Complex<f64>> {
    let bad = || Error::Parse(format!("bad complex entry `{token}`"));
    let t = token.trim();
    let Some(body) = t.strip_suffix('i') else {
        return t
            .parse::<f64>()
            .map(|re| Complex::new(re, 0.0))
            .map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        s => s,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.trim_start_matches('+').parse().map_err(|_| bad())?;
    Ok(Complex::new(re, im))
}

pub fn format_complex<T: Real>(z: &C<T>) -> String {
    let z = to_c64(z);
    // no negative zeros in output
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_roundtrip() {
        for s in ["1+0i", "-0.5-2i", "0+1i", "1e-3+2.5e-7i", "-3-1e-5i"] {
            let z = parse_complex(s).unwrap();
            assert_eq!(parse_complex(&format_complex::<f64>(&z)).unwrap(), z);
        }
        assert_eq!(parse_complex("2i").unwrap(), Complex::new(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex::new(0.0, -1.0));
        assert_eq!(parse_complex("4").unwrap(), Complex::new(4.0, 0.0));
        assert_eq!(format_complex::<f64>(&Complex::new(-0.0, -0.0)), "0+0i");
        assert!(parse_complex("1+zi").is_err());
    }

    #[test]
    fn grid_roundtrip() {
        let g = FiniteGroup::builtin("cyclic:2", 24).unwrap();
        let f = PairFunction::<f64>::parse("1+0i 0+2i; -1-1i 0", &g).unwrap();
        assert_eq!(f.at(0, 1), Complex::new(0.0, 2.0));
        assert_eq!(PairFunction::parse(&f.to_text(), &g).unwrap(), f);
        assert!(PairFunction::<f64>::parse("1 2 3", &g).is_err());
    }
}
