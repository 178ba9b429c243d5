//! Spinning vectors under the generators, and homomorphism spaces built on
//! top of recorded spin scripts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::echelon::{inverse, right_nullspace, Echelon, Subspace};
use super::matrix::{first_bit, get_bit, words_for, xor_into, BitMatrix};
use super::rep::Rep;
use crate::error::{Error, Result};

/// An invariant subspace of a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleBasis {
    pub space: Subspace,
}

impl SubmoduleBasis {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &BitMatrix {
        self.space.basis()
    }

    pub fn is_proper(&self) -> bool {
        self.space.dim() > 0 && self.space.dim() < self.space.ambient()
    }
}

/// Smallest subspace containing the rows of `vectors` and closed under
/// the algebra generators.
pub fn spin_up(vectors: &BitMatrix, rep: &Rep) -> Result<SubmoduleBasis> {
    if vectors.cols() != rep.degree() {
        return Err(Error::ShapeMismatch(format!("vectors of length {} for degree {}", vectors.cols(), rep.degree())));
    }
    let gens = rep.algebra_gens();
    Ok(SubmoduleBasis { space: spin_with(vectors, &gens) })
}

pub(crate) fn spin_with(vectors: &BitMatrix, gens: &[&BitMatrix]) -> Subspace {
    let n = vectors.cols();
    let mut ech = Echelon::new(n);
    let mut queue: Vec<Vec<u64>> = Vec::new();
    for i in 0..vectors.rows() {
        let v = vectors.row(i).to_vec();
        if ech.insert(v.clone()) {
            queue.push(v);
        }
    }
    let mut head = 0;
    while head < queue.len() && ech.dim() < n {
        let v = queue[head].clone();
        head += 1;
        for g in gens {
            let w = g.vec_mul(&v);
            if ech.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    ech.into_subspace()
}

/// Where a spun basis vector came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Seed(usize),
    Image { parent: usize, gen: usize },
}

/// A basis obtained by spinning seeds, with the recipe that produced each
/// vector and every linear relation met on the way.
#[derive(Clone, Debug)]
pub struct SpinScript {
    pub sources: Vec<Source>,
    pub basis: Vec<Vec<u64>>,
    /// `(j, g, coefficients)`: `basis[j] * gen[g]` equals the sum of the
    /// basis vectors flagged in `coefficients`.
    pub relations: Vec<(usize, usize, Vec<u64>)>,
}

/// Spins `seeds` recording sources and relations. Seeds already in the span
/// are skipped.
pub fn spin_script(seeds: &[Vec<u64>], gens: &[&BitMatrix], n: usize) -> SpinScript {
    let mut rows: Vec<(Vec<u64>, usize, Vec<u64>)> = Vec::new();
    let mut sources = Vec::new();
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut relations = Vec::new();
    let tag_words = words_for(n);

    // reduce against the tracked rows; returns the residue and its tag
    let reduce = |rows: &Vec<(Vec<u64>, usize, Vec<u64>)>, v: &[u64]| {
        let mut w = v.to_vec();
        let mut tag = vec![0u64; tag_words];
        for (row, p, rtag) in rows {
            if get_bit(&w, *p) {
                xor_into(&mut w, row);
                xor_into(&mut tag, rtag);
            }
        }
        (w, tag)
    };
    let push = |rows: &mut Vec<(Vec<u64>, usize, Vec<u64>)>, basis: &mut Vec<Vec<u64>>, raw: Vec<u64>, w: Vec<u64>, mut tag: Vec<u64>, p: usize| {
        let k = basis.len();
        tag[k / 64] ^= 1 << (k % 64);
        basis.push(raw);
        rows.push((w, p, tag));
    };

    for (s, seed) in seeds.iter().enumerate() {
        let (w, tag) = reduce(&rows, seed);
        if let Some(p) = first_bit(&w) {
            push(&mut rows, &mut basis, seed.clone(), w, tag, p);
            sources.push(Source::Seed(s));
            let mut head = basis.len() - 1;
            while head < basis.len() {
                for (g, m) in gens.iter().enumerate() {
                    let img = m.vec_mul(&basis[head]);
                    let (w, tag) = reduce(&rows, &img);
                    match first_bit(&w) {
                        Some(p) => {
                            push(&mut rows, &mut basis, img, w, tag, p);
                            sources.push(Source::Image { parent: head, gen: g });
                        }
                        None => relations.push((head, g, tag)),
                    }
                }
                head += 1;
            }
        }
    }
    SpinScript { sources, basis, relations }
}

/// Basis of `Hom(V, W)` as matrices `H` with `x -> xH`, commuting with the
/// algebra generators (group generators and, for GF(4)-modules, `J`).
pub fn hom_basis(v: &Rep, w: &Rep, seed: u64) -> Result<Vec<BitMatrix>> {
    let (v, w) = match (v.is_gf4(), w.is_gf4()) {
        (true, false) => (v.clone(), w.extend_to_gf4()),
        (false, true) => (v.extend_to_gf4(), w.clone()),
        _ => (v.clone(), w.clone()),
    };
    if v.tag() != w.tag() {
        return Err(Error::ShapeMismatch(format!("hom between {} and {} modules", v.tag(), w.tag())));
    }
    let (dv, dw) = (v.degree(), w.degree());
    let gv = v.algebra_gens();
    let gw = w.algebra_gens();

    // seeds: random vectors until they generate V
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seeds: Vec<Vec<u64>> = Vec::new();
    let mut span = Subspace::zero(dv);
    while span.dim() < dv {
        let mut x: Vec<u64> = (0..words_for(dv)).map(|_| rng.random()).collect();
        if dv % 64 != 0 {
            let last = x.len() - 1;
            x[last] &= (1u64 << (dv % 64)) - 1;
        }
        if span.contains(&x) {
            continue;
        }
        seeds.push(x);
        let m = BitMatrix::from_packed_rows(dv, seeds.iter().map(Vec::as_slice));
        span = spin_with(&m, &gv);
    }
    let script = spin_script(&seeds, &gv, dv);
    let m = seeds.len();
    let unknowns = m * dw;

    // phi(basis[j]) as a linear function of the seed images
    let mut images: Vec<BitMatrix> = Vec::with_capacity(dv);
    for src in &script.sources {
        let img = match *src {
            Source::Seed(s) => {
                let mut e = BitMatrix::zeros(unknowns, dw);
                for i in 0..dw {
                    e.set(s * dw + i, i, true);
                }
                e
            }
            Source::Image { parent, gen } => images[parent].mul(gw[gen])?,
        };
        images.push(img);
    }

    let mut constraints = Echelon::new(unknowns);
    for (j, g, coeffs) in &script.relations {
        let mut c = images[*j].mul(gw[*g])?;
        for (l, img) in images.iter().enumerate() {
            if get_bit(coeffs, l) {
                c = c.add(img)?;
            }
        }
        let ct = c.transpose();
        for i in 0..ct.rows() {
            constraints.insert(ct.row(i).to_vec());
            if constraints.dim() == unknowns {
                return Ok(Vec::new());
            }
        }
    }
    let solutions = right_nullspace(&constraints.to_matrix());
    let b = BitMatrix::from_packed_rows(dv, script.basis.iter().map(Vec::as_slice));
    let b_inv = inverse(&b)?;
    let mut out = Vec::with_capacity(solutions.rows());
    for k in 0..solutions.rows() {
        let y = solutions.row(k);
        let rows: Vec<Vec<u64>> = images.iter().map(|img| img.vec_mul(y)).collect();
        let ym = BitMatrix::from_packed_rows(dw, rows.iter().map(Vec::as_slice));
        out.push(b_inv.mul(&ym)?);
    }
    Ok(out)
}

pub fn hom_dim(v: &Rep, w: &Rep) -> Result<usize> {
    Ok(hom_basis(v, w, 0x686f6d)?.len())
}

/// Dimension over GF(2) of the commutant of the algebra generators.
pub fn endo_dim(rep: &Rep) -> Result<usize> {
    hom_dim(rep, rep)
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

    fn vec_of(bits: &[u8]) -> BitMatrix {
        BitMatrix::from_rows(&[bits.to_vec()]).unwrap()
    }

    #[test]
    fn spin_examples() {
        let v = natural(5);
        assert_eq!(spin_up(&vec_of(&[1, 1, 1, 1, 1]), &v).unwrap().dim(), 1);
        assert_eq!(spin_up(&vec_of(&[1, 1, 0, 0, 0]), &v).unwrap().dim(), 4);
        assert_eq!(spin_up(&vec_of(&[0, 0, 0, 0, 0]), &v).unwrap().dim(), 0);
        assert_eq!(spin_up(&vec_of(&[1, 0, 0, 0, 0]), &v).unwrap().dim(), 5);
        assert!(spin_up(&vec_of(&[1, 0]), &v).is_err());
    }

    #[test]
    fn script_relations_hold() {
        let v = natural(4);
        let gens = v.algebra_gens();
        let script = spin_script(&[vec_of(&[1, 1, 0, 0]).row(0).to_vec()], &gens, 4);
        assert_eq!(script.basis.len(), 3);
        for (j, g, coeffs) in &script.relations {
            let lhs = gens[*g].vec_mul(&script.basis[*j]);
            let mut rhs = vec![0u64; 1];
            for (l, b) in script.basis.iter().enumerate() {
                if get_bit(coeffs, l) {
                    xor_into(&mut rhs, b);
                }
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn natural_module_endomorphisms() {
        // End of the permutation module of S_n on points: identity and all-ones
        let v = natural(5);
        let basis = hom_basis(&v, &v, 3).unwrap();
        assert_eq!(basis.len(), 2);
        for h in &basis {
            for g in v.gens() {
                assert_eq!(g.mul(h).unwrap(), h.mul(g).unwrap());
            }
        }
        let triv = Rep::trivial(GroupTag::Sym(5));
        assert_eq!(hom_dim(&v, &triv).unwrap(), 1);
        assert_eq!(hom_dim(&triv, &v).unwrap(), 1);
    }
}
