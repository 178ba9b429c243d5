//! Permutation, Specht and simple modules of symmetric groups over GF(2),
//! their restrictions to alternating and Young subgroups, and labelling of
//! composition factors against a library of simple modules.
//!
//! `D^lambda` is the quotient of the Specht module by its radical for the
//! tabloid form, computed from the Gram matrix of the standard
//! polytabloids. Its generators are those of `S_n` in Coxeter order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::echelon::{inverse, rref};
use crate::gf2::io;
use crate::gf2::meataxe::{absolute_factors, iso_map_irreducible};
use crate::gf2::rep::{GroupTag, Rep, RepLabel, Sign};
use crate::gf2::spin::SubmoduleBasis;
use crate::gf2::{BitMatrix, Subspace};
use crate::partition::{benson_split, content, enumerate, FamilyKind, Partition, PartitionFamily};
use crate::perm::{alt_generator_words, young_generator_indices, Perm};

/// Row-equivalence classes of tableaux of a given shape. A tabloid is
/// stored as the row index of each point.
#[derive(Clone, Debug)]
pub struct TabloidSpace {
    shape: Partition,
    tabloids: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl TabloidSpace {
    pub fn new(shape: &Partition) -> Self {
        let mut tabloids = Vec::new();
        let mut room: Vec<usize> = shape.parts().to_vec();
        let mut cur = Vec::with_capacity(shape.n());
        fill_tabloids(shape.n(), &mut room, &mut cur, &mut tabloids);
        let index = tabloids.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        TabloidSpace { shape: shape.clone(), tabloids, index }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.tabloids.len()
    }

    /// Row of each point for the tabloid at `position`.
    pub fn tabloid(&self, position: usize) -> &[u8] {
        &self.tabloids[position]
    }

    pub fn position(&self, rows: &[u8]) -> Option<usize> {
        self.index.get(rows).copied()
    }

    /// Position of the image of each tabloid under `g` (point `x` moves to
    /// `g(x)`).
    pub fn action(&self, g: &Perm) -> Vec<usize> {
        let mut img = vec![0u8; self.shape.n()];
        self.tabloids
            .iter()
            .map(|t| {
                for (x, &r) in t.iter().enumerate() {
                    img[g.0[x]] = r;
                }
                self.index[&img]
            })
            .collect()
    }

    /// Permutation matrices of the Coxeter generators.
    pub fn generator_matrices(&self) -> Vec<BitMatrix> {
        let n = self.shape.n();
        (0..n.saturating_sub(1))
            .map(|i| {
                let act = self.action(&Perm::coxeter(n, i));
                let mut m = BitMatrix::zeros(self.dim(), self.dim());
                for (s, &t) in act.iter().enumerate() {
                    m.set(s, t, true);
                }
                m
            })
            .collect()
    }
}

fn fill_tabloids(n: usize, room: &mut [usize], cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for r in 0..room.len() {
        if room[r] > 0 {
            room[r] -= 1;
            cur.push(r as u8);
            fill_tabloids(n, room, cur, out);
            cur.pop();
            room[r] += 1;
        }
    }
}

/// The permutation module `M^lambda` on tabloids.
pub fn perm_module(n: usize, lambda: &Partition) -> Result<Rep> {
    if lambda.n() != n {
        return Err(Error::BadShape(format!("{lambda} is not a partition of {n}")));
    }
    let space = TabloidSpace::new(lambda);
    Rep::new(GroupTag::Sym(n), space.dim(), space.generator_matrices())
}

/// Standard tableaux of shape `lambda`, each given as the row of every
/// entry `0..n`.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Vec<u8>> {
    fn go(parts: &[usize], filled: &mut Vec<usize>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == parts.iter().sum::<usize>() {
            out.push(cur.clone());
            return;
        }
        for r in 0..parts.len() {
            if filled[r] < parts[r] && (r == 0 || filled[r - 1] > filled[r]) {
                filled[r] += 1;
                cur.push(r as u8);
                go(parts, filled, cur, out);
                cur.pop();
                filled[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(lambda.parts(), &mut vec![0; lambda.h()], &mut Vec::new(), &mut out);
    out
}

/// Polytabloid vectors of the standard tableaux, one per row (the column
/// signs vanish mod 2).
pub fn standard_polytabloids(space: &TabloidSpace) -> BitMatrix {
    let lambda = space.shape();
    let tableaux = standard_tableaux(lambda);
    let mut m = BitMatrix::zeros(tableaux.len(), space.dim());
    for (k, rows) in tableaux.iter().enumerate() {
        // entries of each column, top to bottom
        let mut columns: Vec<Vec<usize>> = vec![Vec::new(); lambda.part(1)];
        let mut filled = vec![0usize; lambda.h()];
        for (x, &r) in rows.iter().enumerate() {
            columns[filled[r as usize]].push(x);
            filled[r as usize] += 1;
        }
        let mut tabloid = rows.clone();
        for choice in columns.iter().map(|c| (0..c.len()).permutations(c.len())).multi_cartesian_product() {
            for (col, perm) in columns.iter().zip(&choice) {
                for (j, &x) in col.iter().enumerate() {
                    tabloid[x] = perm[j] as u8;
                }
            }
            let t = space.position(&tabloid).expect("column permutations keep the shape");
            m.set(k, t, true);
        }
    }
    m
}

/// The Specht module `S^lambda` inside `M^lambda`.
pub fn specht(lambda: &Partition) -> SubmoduleBasis {
    let space = TabloidSpace::new(lambda);
    SubmoduleBasis { space: Subspace::from_rows(&standard_polytabloids(&space)) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Split {
    NonSplit,
    SplitPlus,
    SplitMinus,
}

#[derive(Clone, Debug)]
pub struct LabeledIrreducible {
    pub label: RepLabel,
    pub rep: Rep,
    pub split: Split,
}

impl LabeledIrreducible {
    pub fn field_dim(&self) -> usize {
        self.rep.field_dim()
    }
}

fn columns_permuted(m: &BitMatrix, act: &[usize]) -> BitMatrix {
    let mut out = BitMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for (s, &t) in act.iter().enumerate() {
            if m.get(i, s) {
                out.set(i, t, true);
            }
        }
    }
    out
}

/// `D^lambda = S^lambda / (S^lambda ∩ S^lambda⊥)` for 2-regular `lambda`.
pub fn irreducible_head(lambda: &Partition) -> Result<LabeledIrreducible> {
    lambda.require_two_regular()?;
    let n = lambda.n();
    let label = RepLabel { partition: lambda.clone(), sign: None };
    if n <= 1 {
        let rep = Rep::trivial(GroupTag::Sym(n)).with_label(label.clone());
        return Ok(LabeledIrreducible { label, rep, split: Split::NonSplit });
    }
    let space = TabloidSpace::new(lambda);
    let e = standard_polytabloids(&space);
    let (_, piv) = rref(&e);
    let inv = inverse(&e.select_cols(&piv))?;

    // the image of x in S is the row <x, e_j>_j; these rows span rowspace(G)
    let gram = e.mul(&e.transpose())?;
    let (y, q) = rref(&gram);
    let y = y.select_rows(&(0..q.len()).collect::<Vec<_>>());

    let gens = (0..n - 1)
        .map(|i| {
            let act = space.action(&Perm::coxeter(n, i));
            // coordinates of e_j s_i in the polytabloid basis
            let a = columns_permuted(&e, &act).select_cols(&piv).mul(&inv)?;
            Ok(y.mul(&a.transpose())?.select_cols(&q))
        })
        .collect::<Result<Vec<_>>>()?;
    let rep = Rep::new(GroupTag::Sym(n), q.len(), gens)?.with_label(label.clone());
    Ok(LabeledIrreducible { label, rep, split: Split::NonSplit })
}

fn cache_name(tag: &str, lambda: &Partition, extra: &str) -> String {
    let parts: Vec<String> = lambda.parts().iter().map(|p| p.to_string()).collect();
    format!("{tag}_{}{extra}.rep", parts.join("."))
}

fn load_cached(path: &Path, tag: &GroupTag, label: &RepLabel) -> Option<Rep> {
    let rep = io::load(path).ok()?;
    (rep.tag() == tag && rep.label() == Some(label) && rep.is_valid()).then_some(rep)
}

/// `D^lambda`, read from or written to `cache` when given.
pub fn irreducible_head_cached(lambda: &Partition, cache: Option<&Path>) -> Result<LabeledIrreducible> {
    let Some(dir) = cache else { return irreducible_head(lambda) };
    lambda.require_two_regular()?;
    let label = RepLabel { partition: lambda.clone(), sign: None };
    let path = dir.join(cache_name(&format!("S{}", lambda.n()), lambda, ""));
    if let Some(rep) = load_cached(&path, &GroupTag::Sym(lambda.n()), &label) {
        return Ok(LabeledIrreducible { label, rep, split: Split::NonSplit });
    }
    let d = irreducible_head(lambda)?;
    std::fs::create_dir_all(dir)?;
    io::save(&path, &d.rep)?;
    Ok(d)
}

fn two_regular(n: usize) -> Vec<Partition> {
    let mut v = enumerate(PartitionFamily::new(FamilyKind::TwoRegular, n));
    v.sort();
    v
}

/// The simple `S_n`-modules, keyed by label.
pub fn all_irreducibles(n: usize) -> Result<BTreeMap<Partition, LabeledIrreducible>> {
    all_irreducibles_cached(n, None)
}

pub fn all_irreducibles_cached(n: usize, cache: Option<&Path>) -> Result<BTreeMap<Partition, LabeledIrreducible>> {
    two_regular(n).into_iter().map(|l| Ok((l.clone(), irreducible_head_cached(&l, cache)?))).collect()
}

/// `D^lambda` restricted to `A_n`.
pub fn restrict_to_alt(d: &Rep, n: usize) -> Result<Rep> {
    d.restrict(&alt_generator_words(n), GroupTag::Alt(n))
}

/// Absolutely irreducible constituents of `D^lambda` restricted to `A_n`,
/// without the splitting cross-check.
pub fn alt_constituents(d: &Rep, n: usize, seed: u64) -> Result<Vec<Rep>> {
    absolute_factors(&restrict_to_alt(d, n)?, seed)
}

/// The simple `A_n`-modules `E^lambda` and `E^lambda_±`, in label order.
///
/// `+` is the first of the two constituents produced by the seeded chop
/// (over GF(4): the one whose `J` has the smaller payload); the two are
/// swapped by conjugation with an odd permutation.
pub fn alt_irreducibles(n: usize, seed: u64) -> Result<Vec<LabeledIrreducible>> {
    alt_irreducibles_cached(n, seed, None)
}

pub fn alt_irreducibles_cached(n: usize, seed: u64, cache: Option<&Path>) -> Result<Vec<LabeledIrreducible>> {
    let mut out = Vec::new();
    for lambda in two_regular(n) {
        out.extend(alt_irreducibles_of(&lambda, seed, cache)?);
    }
    Ok(out)
}

fn alt_irreducibles_of(lambda: &Partition, seed: u64, cache: Option<&Path>) -> Result<Vec<LabeledIrreducible>> {
    let n = lambda.n();
    let tag = GroupTag::Alt(n);
    let labels = |split: bool| -> Vec<(RepLabel, Split)> {
        if split {
            vec![
                (RepLabel { partition: lambda.clone(), sign: Some(Sign::Plus) }, Split::SplitPlus),
                (RepLabel { partition: lambda.clone(), sign: Some(Sign::Minus) }, Split::SplitMinus),
            ]
        } else {
            vec![(RepLabel { partition: lambda.clone(), sign: None }, Split::NonSplit)]
        }
    };
    let expected = benson_split(lambda)?;
    let seed_tag = format!("_s{seed}");
    if let Some(dir) = cache {
        let cached: Option<Vec<LabeledIrreducible>> = labels(expected)
            .into_iter()
            .map(|(label, split)| {
                let suffix = format!("{seed_tag}{}", match split {
                    Split::NonSplit => "",
                    Split::SplitPlus => "+",
                    Split::SplitMinus => "-",
                });
                let rep = load_cached(&dir.join(cache_name(&format!("A{n}"), lambda, &suffix)), &tag, &label)?;
                Some(LabeledIrreducible { label, rep, split })
            })
            .collect();
        if let Some(c) = cached {
            return Ok(c);
        }
    }

    let d = irreducible_head_cached(lambda, cache)?;
    let factors = alt_constituents(&d.rep, n, seed)?;
    let split = match factors.len() {
        1 => false,
        2 => true,
        k => return Err(Error::CrossCheck(format!("restriction of D^{lambda} to A{n} has {k} constituents"))),
    };
    if split != expected {
        return Err(Error::CrossCheck(format!("D^{lambda} restricted to A{n}: splitting {split}, criterion {expected}")));
    }
    if split && factors.iter().any(|f| 2 * f.field_dim() != d.rep.field_dim()) {
        return Err(Error::CrossCheck(format!("unequal halves for D^{lambda} restricted to A{n}")));
    }
    let out: Vec<LabeledIrreducible> = labels(split)
        .into_iter()
        .zip(factors)
        .map(|((label, split), rep)| LabeledIrreducible { rep: rep.with_label(label.clone()), label, split })
        .collect();
    if let Some(dir) = cache {
        for e in &out {
            let suffix = format!("{seed_tag}{}", match e.split {
                Split::NonSplit => "",
                Split::SplitPlus => "+",
                Split::SplitMinus => "-",
            });
            io::save(&dir.join(cache_name(&format!("A{n}"), lambda, &suffix)), &e.rep)?;
        }
    }
    Ok(out)
}

/// Composition multiplicities by label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorMultiset(pub BTreeMap<RepLabel, usize>);

impl Serialize for FactorMultiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(l, c)| (l.to_string(), c)))
    }
}

impl FactorMultiset {
    pub fn get(&self, label: &RepLabel) -> usize {
        self.0.get(label).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (RepLabel, usize)>) -> Self {
        let mut m = BTreeMap::new();
        for (l, c) in counts {
            if c > 0 {
                *m.entry(l).or_insert(0) += c;
            }
        }
        FactorMultiset(m)
    }
}

impl fmt::Display for FactorMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|(l, c)| format!("D{l}:{c}")).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Absolutely irreducible composition factors of `rep`, each matched by an
/// explicit isomorphism to a library member. Candidates are tried in
/// ascending `(dimension, label)` order.
pub fn comp_factors<'a>(rep: &Rep, library: impl IntoIterator<Item = &'a LabeledIrreducible>, seed: u64) -> Result<FactorMultiset> {
    let mut lib: Vec<&LabeledIrreducible> = library.into_iter().collect();
    lib.sort_by(|a, b| (a.field_dim(), &a.label).cmp(&(b.field_dim(), &b.label)));
    let mut counts: BTreeMap<RepLabel, usize> = BTreeMap::new();
    for (k, f) in absolute_factors(rep, seed)?.iter().enumerate() {
        let mut hit = None;
        for cand in lib.iter().filter(|c| c.field_dim() == f.field_dim() && c.rep.tag() == f.tag()) {
            if iso_map_irreducible(f, &cand.rep, seed.wrapping_add(k as u64))?.is_some() {
                hit = Some(cand.label.clone());
                break;
            }
        }
        let label = hit.ok_or(Error::UnmatchedFactor { dim: f.field_dim() })?;
        *counts.entry(label).or_insert(0) += 1;
    }
    Ok(FactorMultiset(counts))
}

/// Restriction of `D^lambda` to `S_{n-1}` split into blocks by residue of
/// the removed node.
#[derive(Clone, Debug, Serialize)]
pub struct BranchingData {
    pub lambda: Partition,
    /// Composition factors of `e_i D^lambda`, keyed by `i`.
    pub blocks: BTreeMap<usize, FactorMultiset>,
}

impl BranchingData {
    pub fn multiplicity(&self, i: usize, mu: &Partition) -> usize {
        let label = RepLabel { partition: mu.clone(), sign: None };
        self.blocks.get(&i).map_or(0, |b| b.get(&label))
    }
}

/// `D^lambda` restricted to `S_{n-1}`.
pub fn restrict_to_previous(d: &Rep, n: usize) -> Result<Rep> {
    if n < 2 {
        return Err(Error::BadShape("no smaller symmetric group".into()));
    }
    let words: Vec<Vec<usize>> = (0..n - 2).map(|i| vec![i]).collect();
    d.restrict(&words, GroupTag::Sym(n - 1))
}

pub fn branching_data(
    lambda: &Partition,
    d: &Rep,
    previous: &BTreeMap<Partition, LabeledIrreducible>,
    seed: u64,
) -> Result<BranchingData> {
    let n = lambda.n();
    let res = restrict_to_previous(d, n)?;
    let factors = comp_factors(&res, previous.values(), seed)?;
    let cl = content(lambda, 2);
    let mut blocks: BTreeMap<usize, FactorMultiset> = BTreeMap::new();
    for (label, count) in factors.0 {
        let cm = content(&label.partition, 2);
        let diff: Vec<isize> = cl.iter().zip(&cm).map(|(&a, &b)| a as isize - b as isize).collect();
        let i = match diff.as_slice() {
            [1, 0] => 0,
            [0, 1] => 1,
            _ => return Err(Error::CrossCheck(format!("D^{} is not in a block adjacent to D^{lambda}", label.partition))),
        };
        blocks.entry(i).or_default().0.insert(label, count);
    }
    Ok(BranchingData { lambda: lambda.clone(), blocks })
}

/// Restriction of an `S_n`-module to the Young subgroup of `composition`.
pub fn young_restrict(rep: &Rep, composition: &[usize]) -> Result<Rep> {
    let n: usize = composition.iter().sum();
    if composition.contains(&0) || rep.tag() != &GroupTag::Sym(n) {
        return Err(Error::BadComposition(composition.to_vec()));
    }
    let words: Vec<Vec<usize>> = young_generator_indices(composition).into_iter().map(|i| vec![i]).collect();
    rep.restrict(&words, GroupTag::Young(composition.to_vec()))
}
