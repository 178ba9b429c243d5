//! Row reduction and derived linear algebra. Vectors are rows; the left
//! kernel of `M` is `{x : xM = 0}`.

use super::matrix::{first_bit, get_bit, words_for, xor_into, BitMatrix};
use crate::error::{Error, Result};

/// Rows in semi-echelon form, built one vector at a time: every row is
/// zero at the pivots of the rows inserted before it, so one ordered pass
/// reduces any vector.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut [u64]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if get_bit(v, p) {
                xor_into(v, row);
            }
        }
    }

    /// Reduces and inserts; returns whether the span grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        match first_bit(&v) {
            Some(p) => {
                self.rows.push(v);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn to_matrix(&self) -> BitMatrix {
        BitMatrix::from_packed_rows(self.cols, self.rows.iter().map(Vec::as_slice))
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace::from_rows(&self.to_matrix())
    }
}

/// Reduced row echelon form: nonzero rows only, with pivot columns.
pub fn rref(m: &BitMatrix) -> (BitMatrix, Vec<usize>) {
    let mut a = m.clone();
    let pivots = eliminate(&mut a, m.cols());
    let rank = pivots.len();
    (a.select_rows(&(0..rank).collect::<Vec<_>>()), pivots)
}

/// In-place Gauss-Jordan on the first `upto` columns; pivot rows end up
/// first. Returns the pivot columns.
fn eliminate(a: &mut BitMatrix, upto: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..upto {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| a.get(i, c)) else { continue };
        a.swap_rows(r, p);
        for i in 0..a.rows() {
            if i != r && a.get(i, c) {
                a.xor_rows(i, r);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &BitMatrix) -> usize {
    // forward elimination is enough for the rank
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| a.get(i, c)) else { continue };
        a.swap_rows(r, p);
        for i in r + 1..a.rows() {
            if a.get(i, c) {
                a.xor_rows(i, r);
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{x : xM = 0}` in reduced echelon form.
pub fn nullspace(m: &BitMatrix) -> BitMatrix {
    right_nullspace(&m.transpose())
}

/// Basis of `{x : M x^T = 0}` in reduced echelon form.
pub fn right_nullspace(m: &BitMatrix) -> BitMatrix {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut out = BitMatrix::zeros(free.len(), n);
    for (k, &f) in free.iter().enumerate() {
        out.set(k, f, true);
        for (i, &p) in pivots.iter().enumerate() {
            if r.get(i, f) {
                out.set(k, p, true);
            }
        }
    }
    rref(&out).0
}

/// Some `x` with `xA = b`, if one exists.
pub fn solve(a: &BitMatrix, b: &[u64]) -> Result<Option<Vec<u64>>> {
    if b.len() != words_for(a.cols()) {
        return Err(Error::ShapeMismatch(format!("rhs has {} words for {} columns", b.len(), a.cols())));
    }
    let n = a.rows();
    let mut aug = BitMatrix::zeros(n, a.cols() + n);
    for i in 0..n {
        for c in 0..a.cols() {
            if a.get(i, c) {
                aug.set(i, c, true);
            }
        }
        aug.set(i, a.cols() + i, true);
    }
    let pivots = eliminate(&mut aug, a.cols());
    let mut rhs = BitMatrix::zeros(1, a.cols() + n);
    for c in 0..a.cols() {
        if get_bit(b, c) {
            rhs.set(0, c, true);
        }
    }
    let mut v = rhs.row(0).to_vec();
    for (i, &p) in pivots.iter().enumerate() {
        if get_bit(&v, p) {
            xor_into(&mut v, aug.row(i));
        }
    }
    if (0..a.cols()).any(|c| get_bit(&v, c)) {
        return Ok(None);
    }
    let mut x = BitMatrix::zeros(1, n);
    for i in 0..n {
        if get_bit(&v, a.cols() + i) {
            x.set(0, i, true);
        }
    }
    Ok(Some(x.row(0).to_vec()))
}

pub fn inverse(m: &BitMatrix) -> Result<BitMatrix> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!("inverse of {}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut aug = BitMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for c in 0..n {
            if m.get(i, c) {
                aug.set(i, c, true);
            }
        }
        aug.set(i, n + i, true);
    }
    let pivots = eliminate(&mut aug, n);
    if pivots.len() != n {
        return Err(Error::ShapeMismatch("singular matrix has no inverse".into()));
    }
    Ok(aug.select_cols(&(n..2 * n).collect::<Vec<_>>()))
}

/// A subspace of `GF(2)^n` held by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_rows(m: &BitMatrix) -> Self {
        let (basis, pivots) = rref(m);
        Subspace { basis, pivots }
    }

    pub fn zero(n: usize) -> Self {
        Subspace { basis: BitMatrix::zeros(0, n), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Subspace { basis: BitMatrix::identity(n), pivots: (0..n).collect() }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &mut [u64]) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if get_bit(v, p) {
                xor_into(v, self.basis.row(i));
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of rows of `m` (assumed inside the subspace).
    pub fn coords(&self, m: &BitMatrix) -> BitMatrix {
        m.select_cols(&self.pivots)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut ech = Echelon::new(self.ambient());
        for m in [&self.basis, &other.basis] {
            for i in 0..m.rows() {
                ech.insert(m.row(i).to_vec());
            }
        }
        ech.into_subspace()
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let n = self.ambient();
        let stacked =
            BitMatrix::from_packed_rows(n, (0..self.dim()).map(|i| self.basis.row(i)).chain((0..other.dim()).map(|i| other.basis.row(i))));
        let ker = nullspace(&stacked);
        let left = ker.select_cols(&(0..self.dim()).collect::<Vec<_>>());
        Subspace::from_rows(&left.mul(&self.basis).expect("shapes agree"))
    }

    /// `{x : x . y = 0 for all y in self}`.
    pub fn annihilator(&self) -> Subspace {
        Subspace::from_rows(&right_nullspace(&self.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        let v: Vec<Vec<u8>> = rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect();
        BitMatrix::from_rows(&v).unwrap()
    }

    #[test]
    fn rank_and_nullspace_examples() {
        assert_eq!(rank(&BitMatrix::identity(4)), 4);
        assert_eq!(nullspace(&BitMatrix::zeros(5, 5)).rows(), 5);
        let a = m(&["110", "011", "101"]);
        assert_eq!(rank(&a), 2);
        let k = nullspace(&a);
        assert_eq!(k, m(&["111"]));
        assert!(k.mul(&a).unwrap().is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&["110", "011", "001"]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let b = m(&["101"]);
        let x = solve(&a, b.row(0)).unwrap().unwrap();
        let xm = BitMatrix::from_packed_rows(3, [x.as_slice()]);
        assert_eq!(xm.mul(&a).unwrap(), b);
        let sing = m(&["110", "110", "001"]);
        assert!(solve(&sing, m(&["010"]).row(0)).unwrap().is_none());
        assert!(inverse(&sing).is_err());
    }

    #[test]
    fn subspace_operations() {
        let u = Subspace::from_rows(&m(&["1100", "0010"]));
        let w = Subspace::from_rows(&m(&["1110", "0001"]));
        assert_eq!(u.intersection(&w).dim(), 1);
        assert_eq!(u.sum(&w).dim(), 3);
        let ann = u.annihilator();
        assert_eq!(ann.dim(), 2);
        assert!(ann.basis().mul(&u.basis().transpose()).unwrap().is_zero());
    }
}
