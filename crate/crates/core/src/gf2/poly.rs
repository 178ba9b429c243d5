//! Polynomials over GF(2), packed 64 coefficients per word (bit `i` is the
//! coefficient of `x^i`).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::echelon::Echelon;
use super::matrix::{first_bit, get_bit, xor_into, BitMatrix, WORD};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    words: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { words: vec![1] }
    }

    pub fn x() -> Self {
        Poly { words: vec![2] }
    }

    pub fn monomial(k: usize) -> Self {
        let mut p = Poly { words: vec![0; k / WORD + 1] };
        p.words[k / WORD] = 1 << (k % WORD);
        p
    }

    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let mut words = vec![0u64; coeffs.len().div_ceil(WORD)];
        for (i, &c) in coeffs.iter().enumerate() {
            if c & 1 == 1 {
                words[i / WORD] |= 1 << (i % WORD);
            }
        }
        Poly::from_words(words)
    }

    pub(crate) fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Poly { words }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        i / WORD < self.words.len() && get_bit(&self.words, i)
    }

    pub fn coeffs(&self) -> Vec<u8> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.coeff(i) as u8).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.words.len() >= other.words.len() { (self, other) } else { (other, self) };
        let mut w = long.words.clone();
        xor_into(&mut w, &short.words);
        Poly::from_words(w)
    }

    fn shifted_xor(acc: &mut Vec<u64>, src: &[u64], shift: usize) {
        let (ws, bs) = (shift / WORD, shift % WORD);
        let need = src.len() + ws + 1;
        if acc.len() < need {
            acc.resize(need, 0);
        }
        for (i, &w) in src.iter().enumerate() {
            acc[i + ws] ^= w << bs;
            if bs != 0 {
                acc[i + ws + 1] ^= w >> (WORD - bs);
            }
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut acc = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let i = wi * WORD + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Poly::shifted_xor(&mut acc, &other.words, i);
            }
        }
        Poly::from_words(acc)
    }

    /// `(q, r)` with `self = q * d + r`; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.words.clone();
        let mut q = Vec::new();
        loop {
            let rp = Poly::from_words(r.clone());
            let Some(rd) = rp.degree() else { break };
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            Poly::shifted_xor(&mut r, &d.words, shift);
            if q.len() <= shift / WORD {
                q.resize(shift / WORD + 1, 0);
            }
            q[shift / WORD] ^= 1 << (shift % WORD);
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (Poly::from_words(q), Poly::from_words(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn mulmod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval(&self, a: &BitMatrix) -> BitMatrix {
        let n = a.rows();
        let Some(d) = self.degree() else { return BitMatrix::zeros(n, n) };
        let mut acc = BitMatrix::identity(n);
        for i in (0..d).rev() {
            acc = acc.mul(a).expect("square");
            if self.coeff(i) {
                acc = acc.add_identity();
            }
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else { return write!(f, "0") };
        let terms: Vec<String> = (0..=d)
            .rev()
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Characteristic polynomial, as the product of the relation polynomials of
/// successive cyclic (Krylov) quotients.
pub fn charpoly(a: &BitMatrix) -> Poly {
    let n = a.rows();
    let mut ech = Echelon::new(n);
    let mut result = Poly::one();
    let mut start = 0;
    while ech.dim() < n {
        let unit_at = |i: usize| {
            let mut u = vec![0u64; a.stride()];
            u[i / WORD] |= 1 << (i % WORD);
            u
        };
        while ech.contains(&unit_at(start)) {
            start += 1;
        }
        let unit = unit_at(start);
        // rows of the current block, each with the polynomial producing it
        let mut block: Vec<(Vec<u64>, usize, Vec<u64>)> = Vec::new();
        let mut v = unit;
        let mut k = 0;
        loop {
            let mut w = v.clone();
            let mut tag = Poly::monomial(k).words;
            ech.reduce(&mut w);
            for (row, p, rtag) in &block {
                if get_bit(&w, *p) {
                    xor_into(&mut w, row);
                    if tag.len() < rtag.len() {
                        tag.resize(rtag.len(), 0);
                    }
                    xor_into(&mut tag, rtag);
                }
            }
            match first_bit(&w) {
                Some(p) => {
                    block.push((w, p, tag));
                    v = a.vec_mul(&v);
                    k += 1;
                }
                None => {
                    result = result.mul(&Poly::from_words(tag));
                    break;
                }
            }
        }
        for (row, _, _) in block {
            ech.insert(row);
        }
    }
    result
}

/// Distinct irreducible factors, sorted by degree then coefficients.
pub fn irreducible_factors(f: &Poly) -> Vec<Poly> {
    factors_up_to(f, usize::MAX, true)
}

/// Distinct irreducible factors of degree at most `max_degree`, sorted.
pub fn small_irreducible_factors(f: &Poly, max_degree: usize) -> Vec<Poly> {
    factors_up_to(f, max_degree, false)
}

fn factors_up_to(f: &Poly, max_degree: usize, keep_rest: bool) -> Vec<Poly> {
    let mut out = Vec::new();
    let Some(mut deg) = f.degree() else { return out };
    let mut g = f.clone();
    let mut h = Poly::x();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut k = 0;
    while deg >= 2 * (k + 1) && k < max_degree {
        k += 1;
        h = h.mulmod(&h, &g);
        let d = g.gcd(&h.add(&Poly::x()));
        if d.degree().unwrap_or(0) > 0 {
            split_equal_degree(&d, k, &mut rng, &mut out);
            loop {
                let c = g.gcd(&d);
                if c.is_one() {
                    break;
                }
                g = g.divrem(&c).0;
            }
            deg = g.degree().unwrap_or(0);
            h = h.rem(&g);
        }
    }
    if deg > 0 && (keep_rest || deg <= max_degree) && (keep_rest || deg < 2 * (k + 1)) {
        out.push(g);
    }
    out.sort_by(|a, b| (a.degree(), a).cmp(&(b.degree(), b)));
    out
}

/// Splits a product of distinct irreducibles of degree `k` (trace map).
fn split_equal_degree(f: &Poly, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let d = f.degree().expect("nonzero");
    if d == k {
        out.push(f.clone());
        return;
    }
    loop {
        let words: Vec<u64> = (0..d.div_ceil(WORD)).map(|_| rng.random()).collect();
        let a = Poly::from_words(words).rem(f);
        let mut t = a.clone();
        let mut sq = a;
        for _ in 1..k {
            sq = sq.mulmod(&sq, f);
            t = t.add(&sq);
        }
        let g = f.gcd(&t);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < d {
            split_equal_degree(&g, k, rng, out);
            split_equal_degree(&f.divrem(&g).0, k, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        // lowest degree first
        Poly::from_coeffs(&s.bytes().map(|b| b - b'0').collect::<Vec<_>>())
    }

    #[test]
    fn arithmetic() {
        let a = p("11"); // 1+x
        assert_eq!(a.mul(&a), p("101"));
        let (q, r) = p("1001").divrem(&a); // x^3+1 = (x+1)(x^2+x+1)
        assert_eq!(q, p("111"));
        assert!(r.is_zero());
        assert_eq!(p("1001").gcd(&p("101")), a);
        assert_eq!(p("1101").degree(), Some(3));
        assert_eq!(format!("{}", p("1101")), "x^3+x+1");
    }

    #[test]
    fn factor_small() {
        // x^4 + x = x (x+1) (x^2+x+1)
        let f = p("01001");
        assert_eq!(irreducible_factors(&f), vec![p("01"), p("11"), p("111")]);
        // (x^2+x+1)^3 (x^3+x+1)
        let f = p("111").mul(&p("111")).mul(&p("111")).mul(&p("1101"));
        assert_eq!(irreducible_factors(&f), vec![p("111"), p("1101")]);
        // product of both cubics and two quartics
        let f = p("1101").mul(&p("1011")).mul(&p("11001")).mul(&p("10011"));
        assert_eq!(irreducible_factors(&f), vec![p("1101"), p("1011"), p("11001"), p("10011")]);
        assert_eq!(small_irreducible_factors(&f, 3), vec![p("1101"), p("1011")]);
        assert_eq!(small_irreducible_factors(&p("1101").mul(&p("11")), 3), vec![p("11"), p("1101")]);
    }

    #[test]
    fn charpoly_of_companion_and_identity() {
        assert_eq!(charpoly(&BitMatrix::identity(3)), p("11").mul(&p("11")).mul(&p("11")));
        // companion matrix of x^3+x+1 (rows: e0->e1, e1->e2, e2->e0+e1)
        let c = BitMatrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]).unwrap();
        let cp = charpoly(&c);
        assert_eq!(cp, p("1101"));
        assert!(cp.eval(&c).is_zero());
    }
}
