//! Norton-criterion meataxe. Random algebra elements come from a seeded,
//! replayable word stream; every verdict is backed by explicit spin-ups.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::echelon::{inverse, nullspace, Subspace};
use super::matrix::BitMatrix;
use super::poly::{charpoly, small_irreducible_factors, Poly};
use super::rep::Rep;
use super::spin::{hom_basis, spin_script, spin_with, Source};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 200;

/// Factors of larger degree are not evaluated.
const MAX_FACTOR_DEGREE: usize = 32;
/// Irreducible factors tried per algebra element.
const FACTORS_PER_ELEMENT: usize = 3;

/// A replayable algebra element: the pool starts as the algebra
/// generators; each step appends the product of two pool members; the
/// element is the sum of the pool members listed in `terms`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraWord {
    pub products: Vec<(usize, usize)>,
    pub terms: Vec<usize>,
}

impl AlgebraWord {
    pub fn eval(&self, rep: &Rep) -> BitMatrix {
        let mut pool: Vec<BitMatrix> = rep.algebra_gens().into_iter().cloned().collect();
        if pool.is_empty() {
            pool.push(BitMatrix::identity(rep.degree()));
        }
        for &(i, j) in &self.products {
            let p = pool[i].mul(&pool[j]).expect("square");
            pool.push(p);
        }
        let mut acc = BitMatrix::zeros(rep.degree(), rep.degree());
        for &t in &self.terms {
            acc = acc.add(&pool[t]).expect("square");
        }
        acc
    }
}

/// The stream of algebra elements for a seed: element `k` uses `k + 1`
/// products.
struct WordStream {
    rng: ChaCha8Rng,
    pool: Vec<BitMatrix>,
    products: Vec<(usize, usize)>,
}

impl WordStream {
    fn new(rep: &Rep, seed: u64) -> Self {
        let mut pool: Vec<BitMatrix> = rep.algebra_gens().into_iter().cloned().collect();
        if pool.is_empty() {
            pool.push(BitMatrix::identity(rep.degree()));
        }
        WordStream { rng: ChaCha8Rng::seed_from_u64(seed), pool, products: Vec::new() }
    }

    fn next(&mut self) -> (AlgebraWord, BitMatrix) {
        let n = self.pool.len();
        let (i, j) = (self.rng.random_range(0..n), self.rng.random_range(0..n));
        let p = self.pool[i].mul(&self.pool[j]).expect("square");
        self.pool.push(p);
        self.products.push((i, j));
        let mut terms: Vec<usize> = (0..self.pool.len()).filter(|_| self.rng.random_bool(0.5)).collect();
        if terms.is_empty() {
            terms.push(self.pool.len() - 1);
        }
        let d = self.pool[0].rows();
        let mut acc = BitMatrix::zeros(d, d);
        for &t in &terms {
            acc = acc.add(&self.pool[t]).expect("square");
        }
        (AlgebraWord { products: self.products.clone(), terms }, acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NortonCertificate {
    pub degree: usize,
    pub seed: u64,
    /// Index of the algebra element in the word stream.
    pub attempt: usize,
    pub word: AlgebraWord,
    pub factor: Poly,
    pub kernel_dim: usize,
    /// Dimension spun from a kernel vector.
    pub spin_dim: usize,
    /// Dimension spun from a kernel vector of the transpose, when tried.
    pub transpose_spin_dim: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Irreducible(NortonCertificate),
    /// A proper nonzero invariant subspace.
    Reducible(Subspace, NortonCertificate),
}

impl Verdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Verdict::Irreducible(_))
    }

    pub fn certificate(&self) -> &NortonCertificate {
        match self {
            Verdict::Irreducible(c) | Verdict::Reducible(_, c) => c,
        }
    }
}

fn trivial_certificate(rep: &Rep, seed: u64) -> NortonCertificate {
    NortonCertificate {
        degree: rep.degree(),
        seed,
        attempt: 0,
        word: AlgebraWord { products: Vec::new(), terms: Vec::new() },
        factor: Poly::x(),
        kernel_dim: rep.degree(),
        spin_dim: rep.degree(),
        transpose_spin_dim: None,
    }
}

/// Decides irreducibility over GF(2) (over GF(4) for modules carrying `J`),
/// returning a proper submodule when there is one.
pub fn find_submodule(rep: &Rep, seed: u64, budget: usize) -> Result<Verdict> {
    let d = rep.degree();
    if d == 1 || (rep.is_gf4() && d == 2) {
        return Ok(Verdict::Irreducible(trivial_certificate(rep, seed)));
    }
    let gens = rep.algebra_gens();
    let transposed: Vec<BitMatrix> = gens.iter().map(|g| g.transpose()).collect();
    let transposed_refs: Vec<&BitMatrix> = transposed.iter().collect();
    let mut stream = WordStream::new(rep, seed);
    for attempt in 0..budget {
        let (word, a) = stream.next();
        let cp = charpoly(&a);
        let factors: Vec<Poly> = small_irreducible_factors(&cp, MAX_FACTOR_DEGREE).into_iter().take(FACTORS_PER_ELEMENT).collect();
        for p in factors {
            let n = p.eval(&a);
            let kernel = nullspace(&n);
            let deg = p.degree().expect("nonconstant");
            let v = kernel.select_rows(&[0]);
            let u = spin_with(&v, &gens);
            let mut cert = NortonCertificate {
                degree: d,
                seed,
                attempt,
                word: word.clone(),
                factor: p.clone(),
                kernel_dim: kernel.rows(),
                spin_dim: u.dim(),
                transpose_spin_dim: None,
            };
            if u.dim() < d {
                return Ok(Verdict::Reducible(u, cert));
            }
            if kernel.rows() != deg {
                continue;
            }
            let kt = nullspace(&n.transpose());
            let w = spin_with(&kt.select_rows(&[0]), &transposed_refs);
            cert.transpose_spin_dim = Some(w.dim());
            if w.dim() < d {
                return Ok(Verdict::Reducible(w.annihilator(), cert));
            }
            return Ok(Verdict::Irreducible(cert));
        }
    }
    Err(Error::Uncertified { degree: d, budget })
}

pub fn is_irreducible(rep: &Rep, seed: u64) -> Result<(bool, NortonCertificate)> {
    let v = find_submodule(rep, seed, DEFAULT_BUDGET)?;
    Ok((v.is_irreducible(), v.certificate().clone()))
}

/// Composition factors over the field of definition, bottom of each
/// submodule first.
pub fn chop(rep: &Rep, seed: u64) -> Result<Vec<Rep>> {
    let mut out = Vec::new();
    chop_into(rep, seed, &mut out)?;
    Ok(out)
}

fn chop_into(rep: &Rep, seed: u64, out: &mut Vec<Rep>) -> Result<()> {
    match find_submodule(rep, seed, DEFAULT_BUDGET)? {
        Verdict::Irreducible(_) => out.push(rep.clone().clear_label()),
        Verdict::Reducible(space, _) => {
            let next = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(1);
            chop_into(&rep.submodule(&space), next, out)?;
            chop_into(&rep.quotient(&space), next ^ 0x5555, out)?;
        }
    }
    Ok(())
}

/// Splits an irreducible whose endomorphism field is GF(4) into its two
/// Galois-conjugate GF(4)-constituents; a module that is already absolutely
/// irreducible comes back alone.
pub fn split_over_gf4(rep: &Rep) -> Result<Vec<Rep>> {
    let basis = hom_basis(rep, rep, 1)?;
    let base = if rep.is_gf4() { 2 } else { 1 };
    if basis.len() == base {
        return Ok(vec![rep.clone()]);
    }
    if rep.is_gf4() || basis.len() != 2 {
        return Err(Error::SplittingFieldTooLarge(basis.len()));
    }
    let id = BitMatrix::identity(rep.degree());
    let mut thetas: Vec<BitMatrix> = [basis[0].clone(), basis[1].clone(), basis[0].add(&basis[1])?]
        .into_iter()
        .filter(|m| *m != id && !m.is_zero())
        .collect();
    thetas.sort_by(|a, b| a.cmp_payload(b));
    thetas
        .into_iter()
        .map(|theta| Rep::with_omega(rep.tag().clone(), rep.gens().to_vec(), theta))
        .collect()
}

/// Composition factors over an algebraic closure (realised over GF(2) or
/// GF(4)).
pub fn absolute_factors(rep: &Rep, seed: u64) -> Result<Vec<Rep>> {
    let mut out = Vec::new();
    for f in chop(rep, seed)? {
        out.extend(split_over_gf4(&f)?);
    }
    Ok(out)
}

/// Irreducible over GF(2) (GF(4) with `J`) with scalar endomorphisms only.
pub fn is_absolutely_irreducible(rep: &Rep, seed: u64) -> Result<bool> {
    if !is_irreducible(rep, seed)?.0 {
        return Ok(false);
    }
    let base = if rep.is_gf4() { 2 } else { 1 };
    Ok(hom_basis(rep, rep, 1)?.len() == base)
}

/// Standard-basis isomorphism test for irreducible modules. Returns an
/// invertible `M` with `G_a M = M G_b` for all algebra generators.
pub fn iso_map(a: &Rep, b: &Rep, seed: u64) -> Result<Option<BitMatrix>> {
    let (a, b) = match (a.is_gf4(), b.is_gf4()) {
        (true, false) => (a.clone(), b.extend_to_gf4()),
        (false, true) => (a.extend_to_gf4(), b.clone()),
        _ => (a.clone(), b.clone()),
    };
    if a.tag() != b.tag() {
        return Err(Error::ShapeMismatch(format!("iso between {} and {} modules", a.tag(), b.tag())));
    }
    for r in [&a, &b] {
        if !find_submodule(r, seed, DEFAULT_BUDGET)?.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
    }
    iso_map_irreducible(&a, &b, seed)
}

/// As [`iso_map`], trusting the caller that both inputs are irreducible
/// over the same field.
pub fn iso_map_irreducible(a: &Rep, b: &Rep, seed: u64) -> Result<Option<BitMatrix>> {
    let (a, b) = match (a.is_gf4(), b.is_gf4()) {
        (true, false) => (a.clone(), b.extend_to_gf4()),
        (false, true) => (a.extend_to_gf4(), b.clone()),
        _ => (a.clone(), b.clone()),
    };
    if a.tag() != b.tag() {
        return Err(Error::ShapeMismatch(format!("iso between {} and {} modules", a.tag(), b.tag())));
    }
    if a.degree() != b.degree() {
        return Ok(None);
    }
    let d = a.degree();
    let ga = a.algebra_gens();
    let gb = b.algebra_gens();

    // a kernel of small dimension keeps the search over seeds short
    let mut stream = WordStream::new(&a, seed ^ 0x150);
    let mut found = None;
    for _ in 0..DEFAULT_BUDGET {
        let (word, m) = stream.next();
        let cp = charpoly(&m);
        for p in small_irreducible_factors(&cp, 8) {
            let n = p.eval(&m);
            let k = nullspace(&n);
            if k.rows() == p.degree().expect("nonconstant") {
                found = Some((word.clone(), p, k));
                break;
            }
        }
        if found.is_some() {
            break;
        }
    }
    let Some((word, p, ka)) = found else {
        return Err(Error::Uncertified { degree: d, budget: DEFAULT_BUDGET });
    };
    let kb = nullspace(&p.eval(&word.eval(&b)));
    if kb.rows() != ka.rows() {
        return Ok(None);
    }
    let script = spin_script(&[ka.row(0).to_vec()], &ga, d);
    let basis_a = BitMatrix::from_packed_rows(d, script.basis.iter().map(Vec::as_slice));
    let inv_a = inverse(&basis_a)?;
    let e = kb.rows();
    for mask in 1u64..(1 << e) {
        let mut w = vec![0u64; kb.stride()];
        for i in (0..e).filter(|i| mask >> i & 1 == 1) {
            super::matrix::xor_into(&mut w, kb.row(i));
        }
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(d);
        for src in &script.sources {
            let v = match *src {
                Source::Seed(_) => w.clone(),
                Source::Image { parent, gen } => gb[gen].vec_mul(&rows[parent]),
            };
            rows.push(v);
        }
        let basis_b = BitMatrix::from_packed_rows(d, rows.iter().map(Vec::as_slice));
        let m = inv_a.mul(&basis_b)?;
        let ok = ga.iter().zip(&gb).all(|(x, y)| x.mul(&m).expect("square") == m.mul(y).expect("square"));
        if ok && inverse(&m).is_ok() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

pub fn iso(a: &Rep, b: &Rep, seed: u64) -> Result<bool> {
    Ok(iso_map(a, b, seed)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::rep::GroupTag;
    use crate::perm::sym_generators;

    fn natural(n: usize) -> Rep {
        let gens = sym_generators(n)
            .iter()
            .map(|p| {
                let mut m = BitMatrix::zeros(n, n);
                for (x, &y) in p.0.iter().enumerate() {
                    m.set(x, y, true);
                }
                m
            })
            .collect();
        Rep::new(GroupTag::Sym(n), n, gens).unwrap()
    }

    #[test]
    fn natural_module_factors() {
        // odd n: trivial + (n-1)-dim irreducible
        let f = chop(&natural(5), 1).unwrap();
        let mut dims: Vec<usize> = f.iter().map(Rep::degree).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 4]);
        // even n: 1, n-2, 1
        let f = chop(&natural(6), 1).unwrap();
        let mut dims: Vec<usize> = f.iter().map(Rep::degree).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 4]);
    }

    #[test]
    fn trivial_is_irreducible() {
        let t = Rep::trivial(GroupTag::Sym(4));
        assert!(is_irreducible(&t, 1).unwrap().0);
        assert_eq!(chop(&t, 1).unwrap().len(), 1);
    }

    #[test]
    fn iso_detects_conjugate_bases() {
        let f = chop(&natural(5), 1).unwrap();
        let four = f.into_iter().find(|r| r.degree() == 4).unwrap();
        // change of basis by an upper unitriangular matrix
        let mut p = BitMatrix::identity(4);
        p.set(0, 1, true);
        p.set(1, 3, true);
        let pi = inverse(&p).unwrap();
        let gens = four.gens().iter().map(|g| pi.mul(g).unwrap().mul(&p).unwrap()).collect();
        let other = Rep::new(GroupTag::Sym(5), 4, gens).unwrap();
        let m = iso_map(&four, &other, 7).unwrap().unwrap();
        for (x, y) in four.gens().iter().zip(other.gens()) {
            assert_eq!(x.mul(&m).unwrap(), m.mul(y).unwrap());
        }
        assert!(iso(&four, &four.dual().unwrap(), 3).is_ok());
    }

    #[test]
    fn reducible_input_is_rejected_by_iso() {
        let v = natural(5);
        assert!(matches!(iso(&v, &v, 1), Err(Error::NotIrreducible)));
    }
}
