use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntegerMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(d: &[BigInt]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    /// Row-style Hermite normal form of the lattice spanned by the rows.
    ///
    /// The result is upper echelon with positive pivots, entries above each
    /// pivot reduced into `[0, pivot)`, and zero rows removed.
    pub fn hermite_normal_form(&self) -> Self {
        let mut m = self.clone();
        let mut pivot_row = 0;
        let mut pivot_cols = Vec::new();
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // gcd-eliminate column entries below pivot_row into pivot_row
            loop {
                let nonzero: Vec<usize> = (pivot_row..m.rows)
                    .filter(|&i| !m[(i, col)].is_zero())
                    .collect();
                if nonzero.is_empty() {
                    break;
                }
                let min = *nonzero.iter().min_by_key(|&&i| m[(i, col)].abs()).unwrap();
                m.swap_rows(pivot_row, min);
                let mut done = true;
                for i in pivot_row + 1..m.rows {
                    if m[(i, col)].is_zero() {
                        continue;
                    }
                    let k = m[(i, col)].div_floor(&m[(pivot_row, col)]);
                    m.add_row_multiple(i, pivot_row, &-k);
                    if !m[(i, col)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if m[(pivot_row, col)].is_zero() {
                continue;
            }
            if m[(pivot_row, col)].is_negative() {
                m.negate_row(pivot_row);
            }
            let p = m[(pivot_row, col)].clone();
            for i in 0..pivot_row {
                let k = m[(i, col)].div_floor(&p);
                m.add_row_multiple(i, pivot_row, &-k);
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        let rank = pivot_row;
        IntegerMatrix {
            rows: rank,
            cols: m.cols,
            entries: m.entries[..rank * m.cols].to_vec(),
        }
    }

    /// Smith normal form: returns the diagonal matrix and the nonzero
    /// elementary divisors `d1 | d2 | ...`.
    pub fn smith_normal_form(&self) -> (Self, Vec<BigInt>) {
        let mut m = self.clone();
        let r = m.rows.min(m.cols);
        for t in 0..r {
            // find a nonzero entry of minimal absolute value in the submatrix
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..m.rows {
                    for j in t..m.cols {
                        if m[(i, j)].is_zero() {
                            continue;
                        }
                        if best.is_none_or(|(bi, bj)| m[(i, j)].abs() < m[(bi, bj)].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else {
                    break;
                };
                m.swap_rows(t, bi);
                m.swap_cols(t, bj);
                let p = m[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..m.rows {
                    let k = m[(i, t)].div_floor(&p);
                    m.add_row_multiple(i, t, &-k);
                    if !m[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..m.cols {
                    let k = m[(t, j)].div_floor(&p);
                    m.add_col_multiple(j, t, &-k);
                    if !m[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // enforce divisibility of the rest of the block by the pivot
                let bad = (t + 1..m.rows)
                    .flat_map(|i| (t + 1..m.cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[(i, j)].is_multiple_of(&p));
                match bad {
                    Some((i, _)) => m.add_row_multiple(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if m[(t, t)].is_negative() {
                m.negate_row(t);
            }
        }
        let divisors = (0..r)
            .map(|i| m[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect();
        (m, divisors)
    }

    /// Index of the row lattice inside `Z^n` for a full-rank square matrix,
    /// i.e. the product of the elementary divisors. `None` when singular.
    pub fn lattice_index(&self) -> Option<BigInt> {
        let (_, d) = self.smith_normal_form();
        (d.len() == self.cols && self.rows >= self.cols)
            .then(|| d.iter().fold(BigInt::one(), |acc, x| acc * x))
    }

    /// Whether `v` lies in the lattice spanned by the rows of `self`.
    pub fn lattice_contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.cols);
        let h = self.hermite_normal_form();
        let mut rest = v.to_vec();
        let mut row = 0;
        for col in 0..h.cols {
            if row < h.rows && !h[(row, col)].is_zero() {
                let (k, rem) = rest[col].div_rem(&h[(row, col)]);
                if !rem.is_zero() {
                    return false;
                }
                for j in col..h.cols {
                    rest[j] -= &k * &h[(row, j)];
                }
                row += 1;
            } else if !rest[col].is_zero() {
                return false;
            }
        }
        true
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(rows)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_forms() {
        let id = IntegerMatrix::identity(3);
        assert_eq!(id.hermite_normal_form(), id);
        let (_, d) = id.smith_normal_form();
        assert_eq!(d, ints(&[1, 1, 1]));
    }

    #[test]
    fn diagonal_two_six() {
        let (_, d) = m(&[&[2, 0], &[0, 6]]).smith_normal_form();
        assert_eq!(d, ints(&[2, 6]));
        assert_eq!(
            m(&[&[2, 0], &[0, 6]]).lattice_index(),
            Some(BigInt::from(12))
        );
        // diag(4, 6) is not in Smith form: divisors 2 | 12
        let (_, d) = m(&[&[4, 0], &[0, 6]]).smith_normal_form();
        assert_eq!(d, ints(&[2, 12]));
    }

    #[test]
    fn already_reduced_hnf() {
        let a = m(&[&[1, 1], &[0, 3]]);
        assert_eq!(a.hermite_normal_form(), a);
        assert_eq!(a.lattice_index(), Some(BigInt::from(3)));
        assert_eq!(a.determinant(), BigInt::from(3));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let a = m(&[&[2, 5], &[4, 1], &[0, 9]]);
        let h = a.hermite_normal_form();
        assert_eq!(h.rows(), 2);
        assert!(h[(0, 0)] > BigInt::zero() && h[(1, 1)] > BigInt::zero());
        assert!(h[(0, 1)] >= BigInt::zero() && h[(0, 1)] < h[(1, 1)]);
        assert!(a.lattice_contains(h.row(1)));
    }

    #[test]
    fn bareiss_determinant() {
        let a = m(&[&[0, 2, 1], &[3, 1, 4], &[1, 5, 9]]);
        // cofactor expansion: 0*(9-20) - 2*(27-4) + 1*(15-1) = -46 + 14
        assert_eq!(a.determinant(), BigInt::from(-32));
    }

    #[test]
    fn membership() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert!(a.lattice_contains(&ints(&[4, 9])));
        assert!(!a.lattice_contains(&ints(&[1, 0])));
    }
}
