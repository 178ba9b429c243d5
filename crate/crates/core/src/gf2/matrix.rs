use std::fmt;

use crate::error::{Error, Result};

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD)
}

#[inline]
pub(crate) fn get_bit(row: &[u64], c: usize) -> bool {
    (row[c / WORD] >> (c % WORD)) & 1 == 1
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// Index of the lowest set bit, if any.
#[inline]
pub(crate) fn first_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
}

/// Dense matrix over GF(2), row-major, 64 columns per word. Bits past
/// `cols` in the last word of each row are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Rows given as 0/1 entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            for (j, &b) in r.iter().enumerate() {
                if b & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    /// Rebuilds a matrix from packed words; pad bits must be clear.
    pub fn from_payload(rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        let stride = words_for(cols);
        if data.len() != rows * stride {
            return Err(Error::Format(format!("payload has {} words, expected {}", data.len(), rows * stride)));
        }
        let m = BitMatrix { rows, cols, stride, data };
        if cols % WORD != 0 && rows > 0 {
            let mask = !0u64 << (cols % WORD);
            if (0..rows).any(|i| m.row(i)[stride - 1] & mask != 0) {
                return Err(Error::Format("nonzero pad bits".into()));
            }
        }
        Ok(m)
    }

    /// Stacks row vectors of length `cols` (packed).
    pub fn from_packed_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a [u64]>) -> Self {
        let stride = words_for(cols);
        let mut data = Vec::new();
        let mut n = 0;
        for r in rows {
            debug_assert_eq!(r.len(), stride);
            data.extend_from_slice(r);
            n += 1;
        }
        BitMatrix { rows: n, cols, stride, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn payload(&self) -> &[u64] {
        &self.data
    }

    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        get_bit(self.row(r), c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= 1 << (c % WORD);
        } else {
            *w &= !(1 << (c % WORD));
        }
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_bits(&self, r: usize) -> Vec<u8> {
        (0..self.cols).map(|c| self.get(r, c) as u8).collect()
    }

    /// `rows[dst] ^= rows[src]`.
    pub fn xor_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            self.row_mut(dst).fill(0);
            return;
        }
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        xor_into(a, b);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.stride {
                self.data.swap(a * self.stride + k, b * self.stride + k);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows) && self.is_square()
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.shape_error("add", other));
        }
        let mut out = self.clone();
        xor_into(&mut out.data, &other.data);
        Ok(out)
    }

    pub fn add_identity(&self) -> BitMatrix {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let b = out.get(i, i);
            out.set(i, i, !b);
        }
        out
    }

    fn shape_error(&self, op: &str, other: &BitMatrix) -> Error {
        Error::ShapeMismatch(format!("{op}: {}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols))
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.stride];
        for (wi, &w) in v.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let r = wi * WORD + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                xor_into(&mut out, self.row(r));
            }
        }
        out
    }

    /// Product using 8-bit Gray-code tables over the rows of `other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(self.shape_error("mul", other));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let s = other.stride;
        let mut table = vec![0u64; 256 * s];
        for block in (0..other.rows).step_by(8) {
            let width = (other.rows - block).min(8);
            for mask in 1usize..(1 << width) {
                let low = mask.trailing_zeros() as usize;
                let prev = mask & (mask - 1);
                let (head, tail) = table.split_at_mut(mask * s);
                let dst = &mut tail[..s];
                dst.copy_from_slice(&head[prev * s..prev * s + s]);
                xor_into(dst, other.row(block + low));
            }
            let (wi, shift) = (block / WORD, block % WORD);
            for r in 0..self.rows {
                let byte = ((self.row(r)[wi] >> shift) & 0xff) as usize & ((1 << width) - 1);
                if byte != 0 {
                    let src = &table[byte * s..byte * s + s];
                    xor_into(out.row_mut(r), src);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for (wi, &w) in self.row(r).iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let c = wi * WORD + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = BitMatrix::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in (0..self.cols).filter(|&j| self.get(i, j)) {
                for k in 0..r2 {
                    let dst_row = i * r2 + k;
                    for l in (0..c2).filter(|&l| other.get(k, l)) {
                        out.set(dst_row, j * c2 + l, true);
                    }
                }
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in (0..self.cols).filter(|&j| self.get(i, j)) {
                out.set(i, j, true);
            }
        }
        for i in 0..other.rows {
            for j in (0..other.cols).filter(|&j| other.get(i, j)) {
                out.set(self.rows + i, self.cols + j, true);
            }
        }
        out
    }

    /// Columns listed in `cols`, in that order.
    pub fn select_cols(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            let row = self.row(r);
            for (j, &c) in cols.iter().enumerate() {
                if get_bit(row, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        BitMatrix::from_packed_rows(self.cols, rows.iter().map(|&r| self.row(r)))
    }

    pub fn pow(&self, mut e: u64) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("pow of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = BitMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Lexicographic comparison key used for canonical choices.
    pub fn cmp_payload(&self, other: &BitMatrix) -> std::cmp::Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(64) {
            let s: String = (0..self.cols.min(128)).map(|c| if self.get(r, c) { '1' } else { '.' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_mul(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let v = (0..a.cols()).fold(false, |acc, k| acc ^ (a.get(i, k) & b.get(k, j)));
                out.set(i, j, v);
            }
        }
        out
    }

    fn pseudo(rows: usize, cols: usize, mut state: u64) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                m.set(i, j, state >> 63 == 1);
            }
        }
        m
    }

    #[test]
    fn table_product_matches_naive() {
        for (r, k, c) in [(1, 1, 1), (3, 70, 5), (65, 130, 67), (17, 9, 200)] {
            let a = pseudo(r, k, 1 + r as u64);
            let b = pseudo(k, c, 7 + c as u64);
            assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
        }
    }

    #[test]
    fn transpose_and_kron() {
        let a = pseudo(5, 70, 3);
        assert_eq!(a.transpose().transpose(), a);
        let i2 = BitMatrix::identity(2);
        let k = i2.kron(&a);
        assert_eq!((k.rows(), k.cols()), (10, 140));
        assert_eq!(k.select_rows(&[0, 1, 2, 3, 4]).select_cols(&(0..70).collect::<Vec<_>>()), a);
    }

    #[test]
    fn payload_round_trip_and_pad_check() {
        let a = pseudo(3, 70, 9);
        let b = BitMatrix::from_payload(3, 70, a.payload().to_vec()).unwrap();
        assert_eq!(a, b);
        let mut bad = a.payload().to_vec();
        bad[1] |= 1 << 63;
        assert!(BitMatrix::from_payload(3, 70, bad).is_err());
    }

    #[test]
    fn shape_errors() {
        let a = BitMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&a), Err(Error::ShapeMismatch(_))));
        assert!(matches!(a.add(&BitMatrix::zeros(3, 2)), Err(Error::ShapeMismatch(_))));
    }
}
