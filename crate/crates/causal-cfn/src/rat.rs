//! Exact rational vectors and the small amount of exact linear algebra the
//! root-system and cone modules need.
//!
//! All root, weight and cone data is held in a fixed orthonormal basis
//! `e_1..e_n`; the inner product is the standard dot product.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::error::Error;

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational p/q.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parse a rational from a `"p/q"` or `"p"` string.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    Rat::from_str(s.trim()).map_err(|_| Error::Parse(format!("invalid rational `{s}`")))
}

/// Exact coordinate vector in the Euclidean model.
///
/// The dimension is fixed at construction; mixed-dimension arithmetic is a
/// bug and panics rather than silently broadcasting.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalVector {
    coords: Vec<Rat>,
}

impl RationalVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        RationalVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        RationalVector { coords: vec![Rat::zero(); dim] }
    }

    /// Standard basis vector `e_i` (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[i] = Rat::one();
        v
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RationalVector { coords: coords.iter().map(|&c| rat_i(c)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch: {} vs {}", self.dim(), other.dim());
    }

    pub fn dot(&self, other: &Self) -> Rat {
        self.check_dim(other);
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_dim(other);
        RationalVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_dim(other);
        RationalVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        RationalVector { coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scaled(&self, s: &Rat) -> Self {
        RationalVector { coords: self.coords.iter().map(|a| a * s).collect() }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Dot product against a float vector.
    pub fn dot_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(self.dim(), x.len(), "dimension mismatch");
        self.coords
            .iter()
            .zip(x)
            .map(|(a, b)| a.to_f64().unwrap_or(f64::NAN) * b)
            .sum()
    }

    /// Scale to the primitive integer vector on the same ray (positive multiple).
    ///
    /// Used to put cone generators in a canonical form so that sets of rays can
    /// be compared and deduplicated exactly.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in &self.coords {
            lcm = num::integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> =
            self.coords.iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
        let mut gcd = BigInt::zero();
        for n in &ints {
            gcd = num::integer::gcd(gcd, n.clone());
        }
        RationalVector {
            coords: ints.into_iter().map(|n| Rat::from_integer(n / gcd.clone())).collect(),
        }
    }

    /// Lexicographic comparison of the coordinate sequences.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Exact square matrix, stored as rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMatrix {
    rows: Vec<Vec<Rat>>,
}

impl RatMatrix {
    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        RatMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reflection `s_v(x) = x - <x, v^> v` in the hyperplane orthogonal to `v`.
    pub fn reflection(v: &RationalVector) -> Self {
        let dim = v.dim();
        let nsq = v.norm_sq();
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let delta = if i == j { Rat::one() } else { Rat::zero() };
                        delta - rat_i(2) * v.get(i) * v.get(j) / nsq.clone()
                    })
                    .collect()
            })
            .collect();
        RatMatrix { rows }
    }

    pub fn apply(&self, x: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), x.dim(), "dimension mismatch");
        RationalVector::new(
            self.rows
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(x.coords())
                        .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim();
        assert_eq!(n, other.dim(), "dimension mismatch");
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Rat::zero(), |acc, k| {
                            acc + &self.rows[i][k] * &other.rows[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        RatMatrix { rows }
    }
}

/// Basis of the solution space of `<r, x> = 0` for all given rows.
pub fn nullspace(rows: &[RationalVector], dim: usize) -> Vec<RationalVector> {
    let mut mat: Vec<Vec<Rat>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        if let Some(p) = (row..mat.len()).find(|&r| !mat[r][col].is_zero()) {
            mat.swap(row, p);
            let inv = mat[row][col].recip();
            for c in col..dim {
                mat[row][c] = &mat[row][c] * &inv;
            }
            for r in 0..mat.len() {
                if r != row && !mat[r][col].is_zero() {
                    let factor = mat[r][col].clone();
                    for c in col..dim {
                        let delta = &factor * &mat[row][c];
                        mat[r][c] = &mat[r][c] - delta;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
    }
    let free_cols: Vec<usize> = (0..dim).filter(|c| !pivot_cols.contains(c)).collect();
    free_cols
        .into_iter()
        .map(|fc| {
            let mut v = vec![Rat::zero(); dim];
            v[fc] = Rat::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -mat[r][fc].clone();
            }
            RationalVector::new(v)
        })
        .collect()
}

/// Solve `sum_i t_i b_i = x` for the coefficients `t` when the `b_i` are
/// linearly independent. Returns `None` when `x` is outside their span.
pub fn solve_in_span(basis: &[RationalVector], x: &RationalVector) -> Option<Vec<Rat>> {
    let dim = x.dim();
    let k = basis.len();
    // Augmented system [B | x] in column form, eliminated by rows.
    let mut mat: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b.get(i).clone()).collect();
            row.push(x.get(i).clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        if let Some(p) = (row..dim).find(|&r| !mat[r][col].is_zero()) {
            mat.swap(row, p);
            let inv = mat[row][col].recip();
            for c in col..=k {
                mat[row][c] = &mat[row][c] * &inv;
            }
            for r in 0..dim {
                if r != row && !mat[r][col].is_zero() {
                    let factor = mat[r][col].clone();
                    for c in col..=k {
                        let delta = &factor * &mat[row][c];
                        mat[r][c] = &mat[r][c] - delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        } else {
            return None; // dependent basis
        }
    }
    // Remaining rows must be consistent.
    for r in row..dim {
        if !mat[r][k].is_zero() {
            return None;
        }
    }
    let mut t = vec![Rat::zero(); k];
    for (r, &col) in pivots.iter().enumerate() {
        t[col] = mat[r][k].clone();
    }
    Some(t)
}
