//! Dense linear algebra over a [`FiniteField`]: echelon forms, rank,
//! determinant and inverse by Gaussian elimination.

use crate::error::{Error, Result};
use crate::gf::{FiniteField, Fq};

pub type Row = Vec<Fq>;

/// Reduced row-echelon form of `rows` with the zero rows dropped.
///
/// Pivots are 1 and the result is the unique canonical basis of the row space.
pub fn rref(field: &FiniteField, rows: &[Row]) -> Vec<Row> {
    let mut m: Vec<Row> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        for v in m[rank].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = field.neg(row[col]);
            for (v, &p) in row.iter_mut().zip(&pivot_row) {
                *v = field.add(*v, field.mul(factor, p));
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    m
}

pub fn rank(field: &FiniteField, rows: &[Row]) -> usize {
    rref(field, rows).len()
}

/// Determinant of a square matrix.
pub fn det(field: &FiniteField, rows: &[Row]) -> Fq {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut acc = Fq::ONE;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Fq::ZERO;
        };
        if pivot != col {
            m.swap(pivot, col);
            acc = field.neg(acc);
        }
        let p = m[col][col];
        acc = field.mul(acc, p);
        let inv = field.inv(p).expect("pivot is nonzero");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = field.neg(field.mul(m[r][col], inv));
            let (top, bottom) = m.split_at_mut(r);
            for (dst, &src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst = field.add(*dst, field.mul(factor, src));
            }
        }
    }
    acc
}

/// Inverse of a square matrix by Gauss-Jordan elimination.
pub fn inverse(field: &FiniteField, rows: &[Row]) -> Result<Vec<Row>> {
    let n = rows.len();
    let aug: Vec<Row> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Fq::ONE } else { Fq::ZERO }));
            row
        })
        .collect();
    let red = rref(field, &aug);
    if red.len() < n || (0..n).any(|i| red[i][i] != Fq::ONE) {
        return Err(Error::Singular);
    }
    Ok(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(field: &FiniteField, a: &[Row], b: &[Row]) -> Vec<Row> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).fold(Fq::ZERO, |acc, (&x, brow)| {
                        field.add(acc, field.mul(x, brow[j]))
                    })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(field: &FiniteField, rows: &[&[i64]]) -> Vec<Row> {
        rows.iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect()
    }

    #[test]
    fn rref_is_canonical() {
        let f = FiniteField::new(3, 1).unwrap();
        let a = m(&f, &[&[2, 1, 0], &[1, 2, 0], &[0, 0, 1]]);
        // rows 0 and 1 are dependent: 2*(1,2,0) = (2,1,0)
        let r = rref(&f, &a);
        assert_eq!(r, m(&f, &[&[1, 2, 0], &[0, 0, 1]]));
        let b = m(&f, &[&[0, 0, 2], &[1, 2, 1]]);
        assert_eq!(rref(&f, &b), r);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let f = FiniteField::new(5, 1).unwrap();
        let a = m(&f, &[&[1, 2, 3], &[0, 4, 1], &[2, 0, 3]]);
        // 1*(12-0) - 2*(0-2) + 3*(0-8) = 12 + 4 - 24 = -8 = 2 mod 5
        assert_eq!(det(&f, &a), f.from_int(-8));
        let sing = m(&f, &[&[1, 2], &[2, 4]]);
        assert_eq!(det(&f, &sing), Fq::ZERO);
        assert_eq!(inverse(&f, &sing).unwrap_err(), Error::Singular);
    }

    #[test]
    fn inverse_round_trips() {
        let f = FiniteField::new(2, 2).unwrap();
        let a = vec![
            vec![Fq::from_index_unchecked(2), Fq::ONE],
            vec![Fq::ONE, Fq::ZERO],
        ];
        let inv = inverse(&f, &a).unwrap();
        let id = mat_mul(&f, &a, &inv);
        assert_eq!(id, vec![vec![Fq::ONE, Fq::ZERO], vec![Fq::ZERO, Fq::ONE]]);
    }
}
