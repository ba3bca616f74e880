//! Coefficient fields and exact matrix rank.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Gf2,
    /// A prime below 2^31.
    Prime(u64),
    Rational,
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Ok(Field::Gf2);
        }
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Gf2 => 2,
            Field::Prime(p) => p,
            Field::Rational => 0,
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Gf2 => write!(f, "gf2"),
            Field::Prime(p) => write!(f, "gf{p}"),
            Field::Rational => write!(f, "q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `gf2`, `gf<p>` for a prime `p`, and `q` or `rational`.
    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "qq" || t == "rational" || t == "rationals" {
            return Ok(Field::Rational);
        }
        let p = t
            .strip_prefix("gf")
            .and_then(|d| d.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown field `{s}`")))?;
        Field::prime(p)
    }
}

/// A matrix with entries in {-1, 0, 1}, stored as sparse rows.
pub(crate) struct SignedMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<(usize, i8)>>,
}

impl SignedMatrix {
    pub fn rank(&self, field: Field) -> usize {
        if self.rows.is_empty() || self.cols == 0 {
            return 0;
        }
        match field {
            Field::Gf2 => self.rank_gf2(),
            Field::Prime(p) => self.rank_mod(p),
            Field::Rational => self.rank_rational(),
        }
    }

    fn rank_gf2(&self) -> usize {
        let words = self.cols.div_ceil(64);
        let mut m: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![0u64; words];
                for &(c, _) in r {
                    row[c / 64] ^= 1 << (c % 64);
                }
                row
            })
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..m.len()).find(|&i| m[i][w] & bit != 0) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = std::mem::take(&mut m[rank]);
            for row in m.iter_mut().skip(rank + 1) {
                if row[w] & bit != 0 {
                    for (a, b) in row[w..].iter_mut().zip(&pivot[w..]) {
                        *a ^= b;
                    }
                }
            }
            m[rank] = pivot;
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }

    fn rank_mod(&self, p: u64) -> usize {
        let mut m: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![0u64; self.cols];
                for &(c, s) in r {
                    row[c] = if s > 0 { 1 } else { p - 1 };
                }
                row
            })
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = mod_pow(m[rank][c], p - 2, p);
            for x in m[rank][c..].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot = std::mem::take(&mut m[rank]);
            for row in m.iter_mut().skip(rank + 1) {
                let f = row[c];
                if f != 0 {
                    for (a, &b) in row[c..].iter_mut().zip(&pivot[c..]) {
                        *a = (*a + (p - f) * b) % p;
                    }
                }
            }
            m[rank] = pivot;
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }

    /// Integer elimination on unit pivots while they last, then fraction-free
    /// (Bareiss) elimination over big integers on whatever remains.
    fn rank_rational(&self) -> usize {
        let mut m: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.cols];
                for &(c, s) in r {
                    row[c] = s as i64;
                }
                row
            })
            .collect();
        let mut rank = 0;
        loop {
            m.retain(|row| row.iter().any(|&x| x != 0));
            if m.is_empty() {
                return rank;
            }
            let unit = m.iter().enumerate().find_map(|(i, row)| row.iter().position(|x| x.abs() == 1).map(|c| (i, c)));
            let Some((pi, c)) = unit else {
                return rank + bareiss_rank(&m);
            };
            let pivot = m.swap_remove(pi);
            let a = pivot[c];
            let mut overflow = false;
            for row in m.iter_mut() {
                let f = row[c];
                if f == 0 {
                    continue;
                }
                // row -= (f / a) * pivot, with a = ±1.
                let k = f * a;
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    match k.checked_mul(y).and_then(|t| x.checked_sub(t)) {
                        Some(v) => *x = v,
                        None => overflow = true,
                    }
                }
            }
            if overflow {
                let mut rest = m;
                rest.push(pivot);
                return rank + bareiss_rank(&rest);
            }
            rank += 1;
        }
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for i in rank + 1..m.len() {
            for j in c + 1..cols {
                let v = (&m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(cols: usize, rows: &[&[i8]]) -> SignedMatrix {
        SignedMatrix {
            cols,
            rows: rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, x)).collect())
                .collect(),
        }
    }

    #[test]
    fn parse_fields() {
        assert_eq!("gf2".parse::<Field>().unwrap(), Field::Gf2);
        assert_eq!("GF32003".parse::<Field>().unwrap(), Field::Prime(32003));
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rational);
        assert!("gf4".parse::<Field>().is_err());
        assert!("real".parse::<Field>().is_err());
        assert_eq!(Field::Prime(3).to_string(), "gf3");
    }

    #[test]
    fn characteristic_matters() {
        // Rows (1,1,0), (0,1,1), (1,0,1): determinant 2.
        let m = mat(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(m.rank(Field::Gf2), 2);
        assert_eq!(m.rank(Field::Prime(3)), 3);
        assert_eq!(m.rank(Field::Rational), 3);
        let s = mat(3, &[&[1, -1, 0], &[0, 1, -1], &[1, 0, -1]]);
        assert_eq!(s.rank(Field::Gf2), 2);
        assert_eq!(s.rank(Field::Prime(5)), 2);
        assert_eq!(s.rank(Field::Rational), 2);
    }

    #[test]
    fn bareiss_agrees_on_non_unit_matrices() {
        let rows = vec![vec![2, 4, 6], vec![4, 8, 12], vec![3, 5, 7]];
        assert_eq!(bareiss_rank(&rows), 2);
        let rows = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(bareiss_rank(&rows), 2);
    }
}
