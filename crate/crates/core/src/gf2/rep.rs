//! Matrix representations over GF(2), optionally carrying a GF(4)
//! structure: an operator `J` with `J^2 + J + 1 = 0` commuting with the
//! generators, through which the space is a GF(4)-vector space (the 2x2
//! block embedding of GF(4) in GF(2)).

use std::fmt;

use serde::{Deserialize, Serialize};

use super::echelon::{inverse, nullspace, Subspace};
use super::matrix::BitMatrix;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::{alt_generator_words, alt_word, young_generator_indices, Perm};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupTag {
    Sym(usize),
    Alt(usize),
    Young(Vec<usize>),
}

impl GroupTag {
    pub fn generator_count(&self) -> usize {
        match self {
            GroupTag::Sym(n) => n.saturating_sub(1),
            GroupTag::Alt(n) => alt_generator_words(*n).len(),
            GroupTag::Young(c) => young_generator_indices(c).len(),
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Sym(n) => write!(f, "S{n}"),
            GroupTag::Alt(n) => write!(f, "A{n}"),
            GroupTag::Young(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "S({})", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RepLabel {
    pub partition: Partition,
    pub sign: Option<Sign>,
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            None => write!(f, "{}", self.partition),
            Some(Sign::Plus) => write!(f, "{}+", self.partition),
            Some(Sign::Minus) => write!(f, "{}-", self.partition),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    degree: usize,
    gens: Vec<BitMatrix>,
    tag: GroupTag,
    label: Option<RepLabel>,
    omega: Option<BitMatrix>,
}

impl Rep {
    /// `degree` matters only when the group has no generators.
    pub fn new(tag: GroupTag, degree: usize, gens: Vec<BitMatrix>) -> Result<Self> {
        Self::build(tag, degree, gens, None)
    }

    /// A GF(4)-representation; `omega` is multiplication by a primitive
    /// cube root of unity.
    pub fn with_omega(tag: GroupTag, gens: Vec<BitMatrix>, omega: BitMatrix) -> Result<Self> {
        let degree = omega.rows();
        Self::build(tag, degree, gens, Some(omega))
    }

    fn build(tag: GroupTag, degree: usize, gens: Vec<BitMatrix>, omega: Option<BitMatrix>) -> Result<Self> {
        if gens.len() != tag.generator_count() {
            return Err(Error::ShapeMismatch(format!("{tag} needs {} generators, got {}", tag.generator_count(), gens.len())));
        }
        let degree = gens.first().map_or(degree, BitMatrix::rows);
        if degree == 0 {
            return Err(Error::DegreeZero);
        }
        for g in gens.iter().chain(omega.iter()) {
            if g.rows() != degree || g.cols() != degree {
                return Err(Error::ShapeMismatch(format!("generator is {}x{}, degree {degree}", g.rows(), g.cols())));
            }
        }
        if let Some(j) = &omega {
            let jj = j.mul(j)?.add(j)?.add_identity();
            if !jj.is_zero() {
                return Err(Error::ShapeMismatch("omega does not satisfy J^2+J+1 = 0".into()));
            }
            for g in &gens {
                if g.mul(j)? != j.mul(g)? {
                    return Err(Error::ShapeMismatch("omega does not commute with the generators".into()));
                }
            }
        }
        Ok(Rep { degree, gens, tag, label: None, omega })
    }

    /// Rep with no generators check; for internal subquotients whose shape
    /// is correct by construction.
    pub(crate) fn from_parts(tag: GroupTag, gens: Vec<BitMatrix>, omega: Option<BitMatrix>, degree: usize) -> Self {
        Rep { degree, gens, tag, label: None, omega }
    }

    pub fn trivial(tag: GroupTag) -> Self {
        let k = tag.generator_count();
        Rep { degree: 1, gens: vec![BitMatrix::identity(1); k], tag, label: None, omega: None }
    }

    pub fn with_label(mut self, label: RepLabel) -> Self {
        self.label = Some(label);
        self
    }

    pub fn clear_label(mut self) -> Self {
        self.label = None;
        self
    }

    /// Dimension over GF(2).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension over the field of definition (GF(2) or GF(4)).
    pub fn field_dim(&self) -> usize {
        if self.omega.is_some() {
            self.degree / 2
        } else {
            self.degree
        }
    }

    pub fn gens(&self) -> &[BitMatrix] {
        &self.gens
    }

    pub fn tag(&self) -> &GroupTag {
        &self.tag
    }

    pub fn label(&self) -> Option<&RepLabel> {
        self.label.as_ref()
    }

    pub fn omega(&self) -> Option<&BitMatrix> {
        self.omega.as_ref()
    }

    pub fn is_gf4(&self) -> bool {
        self.omega.is_some()
    }

    /// Generators of the enveloping algebra: the group generators and, for
    /// GF(4)-representations, `J`.
    pub fn algebra_gens(&self) -> Vec<&BitMatrix> {
        self.gens.iter().chain(self.omega.iter()).collect()
    }

    pub fn is_valid(&self) -> bool {
        self.gens.iter().all(|g| inverse(g).is_ok())
    }

    /// `V (x) GF(4)` as a GF(4)-representation on `V + V`.
    pub fn extend_to_gf4(&self) -> Rep {
        if self.omega.is_some() {
            return self.clone();
        }
        let d = self.degree;
        let gens = self.gens.iter().map(|g| g.direct_sum(g)).collect();
        let mut j = BitMatrix::zeros(2 * d, 2 * d);
        for i in 0..d {
            j.set(i, d + i, true);
            j.set(d + i, i, true);
            j.set(d + i, d + i, true);
        }
        Rep { degree: 2 * d, gens, tag: self.tag.clone(), label: self.label.clone(), omega: Some(j) }
    }

    /// Tensor product over the common field of definition.
    pub fn tensor(&self, other: &Rep) -> Result<Rep> {
        if self.tag != other.tag {
            return Err(Error::ShapeMismatch(format!("tensor of {} and {} modules", self.tag, other.tag)));
        }
        let gens: Vec<BitMatrix> = self.gens.iter().zip(&other.gens).map(|(a, b)| a.kron(b)).collect();
        let (da, db) = (self.degree, other.degree);
        let ia = BitMatrix::identity(da);
        let ib = BitMatrix::identity(db);
        match (&self.omega, &other.omega) {
            (None, None) => Ok(Rep::from_parts(self.tag.clone(), gens, None, da * db)),
            (Some(j), None) => Ok(Rep::from_parts(self.tag.clone(), gens, Some(j.kron(&ib)), da * db)),
            (None, Some(j)) => Ok(Rep::from_parts(self.tag.clone(), gens, Some(ia.kron(j)), da * db)),
            (Some(ja), Some(jb)) => {
                // V (x)_{GF(4)} W is where both omegas agree
                let left = ja.kron(&ib);
                let diff = left.add(&ia.kron(jb))?;
                let space = Subspace::from_rows(&nullspace(&diff));
                let gens = gens.iter().map(|g| restrict_action(&space, g)).collect();
                let omega = restrict_action(&space, &left);
                Ok(Rep::from_parts(self.tag.clone(), gens, Some(omega), space.dim()))
            }
        }
    }

    /// Contragredient: inverse transposes.
    pub fn dual(&self) -> Result<Rep> {
        let gens = self.gens.iter().map(|g| inverse(g).map(|i| i.transpose())).collect::<Result<Vec<_>>>()?;
        let omega = self.omega.as_ref().map(BitMatrix::transpose);
        Ok(Rep::from_parts(self.tag.clone(), gens, omega, self.degree))
    }

    /// Restriction to a subgroup whose generators are words (products of
    /// generator indices, left to right) in the current generators.
    pub fn restrict(&self, words: &[Vec<usize>], tag: GroupTag) -> Result<Rep> {
        let gens = words
            .iter()
            .map(|w| self.eval_word(w))
            .collect::<Result<Vec<_>>>()?;
        Self::build(tag, self.degree, gens, self.omega.clone())
    }

    fn eval_word(&self, w: &[usize]) -> Result<BitMatrix> {
        let mut acc = BitMatrix::identity(self.degree);
        for &i in w {
            let g = self
                .gens
                .get(i)
                .ok_or(Error::IndexOutOfRange { index: i, len: self.gens.len() })?;
            acc = acc.mul(g)?;
        }
        Ok(acc)
    }

    /// The twist `V^sigma` on which `g` acts as `sigma g sigma^{-1}` does
    /// on `V`, for symmetric and alternating groups.
    pub fn conjugate_rep(&self, sigma: &Perm) -> Result<Rep> {
        let n = sigma.degree();
        let gens = match &self.tag {
            GroupTag::Sym(m) if *m == n => (0..n - 1)
                .map(|i| {
                    let c = sigma.compose(&Perm::coxeter(n, i)).compose(&sigma.inverse());
                    self.eval_word(&c.coxeter_word())
                })
                .collect::<Result<Vec<_>>>()?,
            GroupTag::Alt(m) if *m == n => {
                let squares: Vec<BitMatrix> = self.gens.iter().map(|g| g.mul(g)).collect::<Result<_>>()?;
                alt_generator_words(n)
                    .iter()
                    .map(|w| {
                        let x = crate::perm::eval_word(n, w);
                        let c = sigma.compose(&x).compose(&sigma.inverse());
                        let word = alt_word(&c).expect("conjugate of an even permutation is even");
                        let mut acc = BitMatrix::identity(self.degree);
                        for (g, inv) in word {
                            // generator 0 has order 3, the rest are involutions
                            let m = if inv && g == 0 { &squares[0] } else { &self.gens[g] };
                            acc = acc.mul(m)?;
                        }
                        Ok(acc)
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            other => return Err(Error::ShapeMismatch(format!("cannot twist a {other} module by a permutation of {n}"))),
        };
        Ok(Rep::from_parts(self.tag.clone(), gens, self.omega.clone(), self.degree))
    }

    /// Action on an invariant subspace.
    pub fn submodule(&self, space: &Subspace) -> Rep {
        let gens = self.gens.iter().map(|g| restrict_action(space, g)).collect();
        let omega = self.omega.as_ref().map(|j| restrict_action(space, j));
        Rep::from_parts(self.tag.clone(), gens, omega, space.dim())
    }

    /// Action on `V / space`, in the coordinates of the non-pivot columns.
    pub fn quotient(&self, space: &Subspace) -> Rep {
        let gens = self.gens.iter().map(|g| quotient_action(space, g)).collect();
        let omega = self.omega.as_ref().map(|j| quotient_action(space, j));
        Rep::from_parts(self.tag.clone(), gens, omega, self.degree - space.dim())
    }

    pub fn is_invariant(&self, space: &Subspace) -> bool {
        self.algebra_gens().iter().all(|g| {
            let img = space.basis().mul(g).expect("square");
            (0..img.rows()).all(|i| space.contains(img.row(i)))
        })
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        if self.tag != other.tag || self.omega.is_some() != other.omega.is_some() {
            return Err(Error::ShapeMismatch("direct sum of unlike modules".into()));
        }
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.direct_sum(b)).collect();
        let omega = match (&self.omega, &other.omega) {
            (Some(a), Some(b)) => Some(a.direct_sum(b)),
            _ => None,
        };
        Ok(Rep::from_parts(self.tag.clone(), gens, omega, self.degree + other.degree))
    }
}

pub(crate) fn restrict_action(space: &Subspace, g: &BitMatrix) -> BitMatrix {
    space.coords(&space.basis().mul(g).expect("square"))
}

fn quotient_action(space: &Subspace, g: &BitMatrix) -> BitMatrix {
    let n = g.rows();
    let mut is_pivot = vec![false; n];
    for &p in space.pivots() {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut rows = g.select_rows(&free);
    for i in 0..rows.rows() {
        space.reduce(rows.row_mut(i));
    }
    rows.select_cols(&free)
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn generator_count_is_checked() {
        assert!(Rep::new(GroupTag::Sym(3), 2, vec![BitMatrix::identity(2)]).is_err());
        let bare = Rep::new(GroupTag::Young(vec![1, 1]), 3, Vec::new()).unwrap();
        assert_eq!(bare.degree(), 3);
        assert_eq!(Rep::trivial(GroupTag::Alt(5)).gens().len(), 3);
        assert_eq!(GroupTag::Alt(2).generator_count(), 0);
    }

    #[test]
    fn subquotients_of_the_natural_module() {
        let v = natural(4);
        let ones = Subspace::from_rows(&BitMatrix::from_rows(&[vec![1, 1, 1, 1]]).unwrap());
        assert!(v.is_invariant(&ones));
        let sub = v.submodule(&ones);
        assert!(sub.gens().iter().all(|g| g.is_identity()));
        let q = v.quotient(&ones);
        assert_eq!(q.degree(), 3);
        for (a, b) in q.gens().iter().zip(q.gens().iter().skip(1)) {
            // braid relation survives in the quotient
            let lhs = a.mul(b).unwrap().mul(a).unwrap();
            let rhs = b.mul(a).unwrap().mul(b).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gf4_extension_and_tensor_degrees() {
        let v = natural(3);
        let e = v.extend_to_gf4();
        assert_eq!((e.degree(), e.field_dim()), (6, 3));
        assert_eq!(v.tensor(&e).unwrap().field_dim(), 9);
        let t = e.tensor(&e).unwrap();
        assert_eq!((t.degree(), t.field_dim()), (18, 9));
        let j = t.omega().unwrap();
        assert!(j.mul(j).unwrap().add(j).unwrap().add_identity().is_zero());
    }

    #[test]
    fn dual_twice_and_twist_by_identity() {
        let v = natural(5);
        assert_eq!(v.dual().unwrap().dual().unwrap(), v);
        assert_eq!(v.conjugate_rep(&Perm::identity(5)).unwrap().gens(), v.gens());
        let a = v.restrict(&alt_generator_words(5), GroupTag::Alt(5)).unwrap();
        let t = a.conjugate_rep(&Perm::identity(5)).unwrap();
        assert_eq!(t.gens(), a.gens());
    }
}
