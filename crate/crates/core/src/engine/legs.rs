use crate::error::{Error, Result};

/// Number of basis tuples of `legs` copies of an `n`-dimensional space.
pub fn dim(n: usize, legs: usize) -> usize {
    n.pow(legs as u32)
}

/// Mixed-radix encoding with leg 1 most significant.
pub fn encode(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn decode(n: usize, legs: usize, mut index: usize) -> Vec<usize> {
    let mut out = vec![0; legs];
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

/// Placement of a `k`-leg object on chosen legs of an `m`-leg space.
///
/// Positions are 1-based as in leg notation and may come in any order:
/// `X_{31}` places the first leg of `X` on leg 3.
#[derive(Clone, Debug)]
pub struct LegMap {
    n: usize,
    total: usize,
    positions: Vec<usize>,
    rest: Vec<usize>,
    offsets: Vec<usize>,
    strides: Vec<usize>,
}

impl LegMap {
    pub fn new(n: usize, positions: &[usize], total: usize) -> Result<Self> {
        let mut seen = vec![false; total];
        for &p in positions {
            if p == 0 || p > total {
                return Err(Error::BadLegSpec(format!("leg {p} outside 1..={total}")));
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::BadLegSpec(format!("leg {p} repeated")));
            }
        }
        let strides: Vec<usize> = (0..total).map(|i| dim(n, total - 1 - i)).collect();
        let positions: Vec<usize> = positions.iter().map(|p| p - 1).collect();
        let rest = (0..total).filter(|&i| !seen[i]).collect();
        let k = positions.len();
        let offsets = (0..dim(n, k))
            .map(|sub| {
                let t = decode(n, k, sub);
                t.iter().zip(&positions).map(|(x, &p)| x * strides[p]).sum()
            })
            .collect();
        Ok(Self {
            n,
            total,
            positions,
            rest,
            offsets,
            strides,
        })
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn inner_legs(&self) -> usize {
        self.positions.len()
    }

    /// Index of the tuple restricted to the placed legs, in placement order.
    #[inline]
    pub fn inner(&self, index: usize) -> usize {
        self.positions.iter().fold(0, |acc, &p| {
            acc * self.n + (index / self.strides[p]) % self.n
        })
    }

    /// Index of the tuple restricted to the remaining legs, in leg order.
    #[inline]
    pub fn outer(&self, index: usize) -> usize {
        self.rest.iter().fold(0, |acc, &p| {
            acc * self.n + (index / self.strides[p]) % self.n
        })
    }

    /// Contribution of the placed legs to a full index.
    #[inline]
    pub fn offset(&self, inner: usize) -> usize {
        self.offsets[inner]
    }

    /// Replaces the placed legs of `index` by `inner`.
    #[inline]
    pub fn substitute(&self, index: usize, inner: usize) -> usize {
        index - self.offsets[self.inner(index)] + self.offsets[inner]
    }

    /// Full indices with the placed legs set to zero, one per outer tuple,
    /// in increasing outer order.
    pub fn bases(&self) -> Vec<usize> {
        let r = self.rest.len();
        (0..dim(self.n, r))
            .map(|o| {
                let t = decode(self.n, r, o);
                t.iter()
                    .zip(&self.rest)
                    .map(|(x, &p)| x * self.strides[p])
                    .sum()
            })
            .collect()
    }
}

/// Single legs `2i-1, 2i` for each pair-leg `i`.
pub fn pair_legs(pairs: &[usize]) -> Vec<usize> {
    pairs.iter().flat_map(|&p| [2 * p - 1, 2 * p]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_roundtrip() {
        for i in 0..81 {
            assert_eq!(encode(3, &decode(3, 4, i)), i);
        }
        assert_eq!(decode(2, 3, 6), vec![1, 1, 0]);
    }

    #[test]
    fn inner_and_outer_split() {
        let map = LegMap::new(3, &[3, 1], 4).unwrap();
        let idx = encode(3, &[2, 0, 1, 2]);
        assert_eq!(map.inner(idx), encode(3, &[1, 2]));
        assert_eq!(map.outer(idx), encode(3, &[0, 2]));
        let moved = map.substitute(idx, encode(3, &[0, 1]));
        assert_eq!(decode(3, 4, moved), vec![1, 0, 0, 2]);
    }

    #[test]
    fn rejects_bad_positions() {
        assert!(LegMap::new(2, &[1, 1], 3).is_err());
        assert!(LegMap::new(2, &[0], 3).is_err());
        assert!(LegMap::new(2, &[4], 3).is_err());
    }

    #[test]
    fn pair_leg_expansion() {
        assert_eq!(pair_legs(&[1, 3]), vec![1, 2, 5, 6]);
    }
}
