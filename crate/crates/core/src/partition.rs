//! Partitions and the structural maps on them used throughout the crate:
//! partition families, the Benson splitting criterion, doubles,
//! 2-regularisation, 2-cores and residue contents.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Trailing zeros are never stored; [`Partition::part`] returns 0 past the
/// last part.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    /// Builds a partition, dropping zero parts. Errors if the non-zero
    /// parts are not weakly decreasing or a zero sits between positive parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(parts));
        }
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n], n }
        }
    }

    /// `p(mu)`: reorders an arbitrary multiset of parts into a partition.
    pub fn sort_to_partition(multiset: &[usize]) -> Self {
        let mut parts: Vec<usize> = multiset.iter().copied().filter(|&x| x > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|lambda|`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of non-zero parts, `h(lambda)`.
    pub fn h(&self) -> usize {
        self.parts.len()
    }

    /// Number of non-zero even parts, `h_2(lambda)`.
    pub fn h2(&self) -> usize {
        self.parts.iter().filter(|&&x| x % 2 == 0).count()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `j`-th part (1-indexed); 0 for `j > h(lambda)`.
    pub fn part(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.parts.get(j - 1).copied().unwrap_or(0)
    }

    /// No part is repeated `p` or more times.
    pub fn is_p_regular(&self, p: usize) -> bool {
        let mut run = 0;
        for (i, &x) in self.parts.iter().enumerate() {
            run = if i > 0 && self.parts[i - 1] == x { run + 1 } else { 1 };
            if run >= p {
                return false;
            }
        }
        true
    }

    /// Distinct parts.
    pub fn is_two_regular(&self) -> bool {
        self.is_p_regular(2)
    }

    pub fn all_parts_odd(&self) -> bool {
        self.parts.iter().all(|x| x % 2 == 1)
    }

    pub fn require_two_regular(&self) -> Result<()> {
        if self.is_two_regular() {
            Ok(())
        } else {
            Err(Error::Not2Regular(self.clone()))
        }
    }

    /// Dominance order: equal weight and every partial sum of `self` is at
    /// least the corresponding partial sum of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.n != other.n {
            return false;
        }
        let len = self.h().max(other.h());
        let (mut a, mut b) = (0, 0);
        for k in 1..=len {
            a += self.part(k);
            b += other.part(k);
            if a < b {
                return false;
            }
        }
        true
    }

    /// `lambda-hat_j`: the partition with its `j`-th part removed.
    pub fn remove_part(&self, j: usize) -> Result<Partition> {
        if j == 0 || j > self.h() {
            return Err(Error::IndexOutOfRange { index: j, len: self.h() });
        }
        let mut parts = self.parts.clone();
        parts.remove(j - 1);
        Ok(Partition::sort_to_partition(&parts))
    }

    /// `p(lambda, extra...)`.
    pub fn with_parts(&self, extra: &[usize]) -> Partition {
        let mut all = self.parts.clone();
        all.extend_from_slice(extra);
        Partition::sort_to_partition(&all)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1);
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&x| x >= c).count())
            .collect();
        Partition::new(parts).expect("conjugate of a partition is a partition")
    }

    /// Cells `(row, col)`, both 1-indexed, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |c| (r + 1, c)))
    }

    /// Rows `r` whose last cell `(r, lambda_r)` can be removed.
    pub fn removable_rows(&self) -> Vec<usize> {
        (1..=self.h())
            .filter(|&r| self.part(r) > self.part(r + 1))
            .collect()
    }

    /// Rows `r` where the cell `(r, lambda_r + 1)` can be added (includes
    /// the new row `h + 1`).
    pub fn addable_rows(&self) -> Vec<usize> {
        (1..=self.h() + 1)
            .filter(|&r| r == 1 || self.part(r - 1) > self.part(r))
            .collect()
    }

    /// Removes the last cell of row `r` (caller checks removability).
    pub fn remove_cell(&self, r: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts[r - 1] -= 1;
        Partition::new(parts).expect("removable cell keeps the shape a partition")
    }

    /// Adds a cell at the end of row `r` (caller checks addability).
    pub fn add_cell(&self, r: usize) -> Partition {
        let mut parts = self.parts.clone();
        if r > parts.len() {
            parts.push(1);
        } else {
            parts[r - 1] += 1;
        }
        Partition::new(parts).expect("addable cell keeps the shape a partition")
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn hook_dimension(&self) -> u128 {
        let conj = self.conjugate();
        let mut num: u128 = (1..=self.n as u128).product();
        let mut den: u128 = 1;
        for (r, c) in self.cells() {
            let hook = (self.part(r) - c) + (conj.part(c) - r) + 1;
            den *= hook as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        num / den
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(3,2,1)`, `3,2,1`, `3 2 1` and `()`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let x = tok
                .parse::<usize>()
                .map_err(|_| Error::BadShape(format!("cannot parse partition {s:?}")))?;
            parts.push(x);
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// The partition families used as index sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    All,
    TwoRegular,
    OddParts,
    OddDistinct,
    BensonSplit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionFamily {
    pub kind: FamilyKind,
    pub n: usize,
}

impl PartitionFamily {
    pub fn new(kind: FamilyKind, n: usize) -> Self {
        PartitionFamily { kind, n }
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        if lambda.n() != self.n {
            return false;
        }
        match self.kind {
            FamilyKind::All => true,
            FamilyKind::TwoRegular => lambda.is_two_regular(),
            FamilyKind::OddParts => lambda.all_parts_odd(),
            FamilyKind::OddDistinct => lambda.all_parts_odd() && lambda.is_two_regular(),
            FamilyKind::BensonSplit => lambda.is_two_regular() && benson_split_unchecked(lambda),
        }
    }
}

/// All members of the family, in descending lexicographic order.
pub fn enumerate(family: PartitionFamily) -> Vec<Partition> {
    let (odd, distinct) = match family.kind {
        FamilyKind::All => (false, false),
        FamilyKind::TwoRegular | FamilyKind::BensonSplit => (false, true),
        FamilyKind::OddParts => (true, false),
        FamilyKind::OddDistinct => (true, true),
    };
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen_parts(family.n, family.n, odd, distinct, &mut cur, &mut out);
    if family.kind == FamilyKind::BensonSplit {
        out.retain(benson_split_unchecked);
    }
    out
}

fn gen_parts(
    rest: usize,
    max: usize,
    odd: bool,
    distinct: bool,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if rest == 0 {
        out.push(Partition::sort_to_partition(cur));
        return;
    }
    for x in (1..=max.min(rest)).rev() {
        if odd && x % 2 == 0 {
            continue;
        }
        cur.push(x);
        let next_max = if distinct { x - 1 } else { x };
        gen_parts(rest - x, next_max, odd, distinct, cur, out);
        cur.pop();
    }
}

/// Benson's criterion: `D^lambda` restricted to `A_n` splits.
pub fn benson_split(lambda: &Partition) -> Result<bool> {
    lambda.require_two_regular()?;
    Ok(benson_split_unchecked(lambda))
}

fn benson_split_unchecked(lambda: &Partition) -> bool {
    let mut k = 1;
    while 2 * k - 1 <= lambda.h() {
        let a = lambda.part(2 * k - 1);
        let b = lambda.part(2 * k);
        if a - b > 2 || (a + b) % 4 == 2 {
            return false;
        }
        k += 1;
    }
    true
}

/// The raw double: concatenation of `(ceil((x+1)/2), floor((x-1)/2))` over
/// the parts, with trailing zeros dropped. Not always a partition.
pub fn dbl(lambda: &Partition) -> Vec<usize> {
    let mut seq: Vec<usize> = lambda
        .parts()
        .iter()
        .flat_map(|&x| [x.div_ceil(2) + usize::from(x % 2 == 0), (x - 1) / 2])
        .collect();
    while seq.last() == Some(&0) {
        seq.pop();
    }
    seq
}

/// `dbl(lambda)` as a partition, if it is one.
pub fn dbl_partition(lambda: &Partition) -> Result<Partition> {
    Partition::new(dbl(lambda))
}

/// Concatenation of `(ceil(x/2), floor(x/2))` over the parts, trailing
/// zeros dropped.
pub fn dblb(lambda: &Partition) -> Vec<usize> {
    let mut seq: Vec<usize> = lambda
        .parts()
        .iter()
        .flat_map(|&x| [x.div_ceil(2), x / 2])
        .collect();
    while seq.last() == Some(&0) {
        seq.pop();
    }
    seq
}

/// The basic spin label `beta_n = dbl((n))`.
pub fn beta(n: usize) -> Partition {
    assert!(n >= 1, "beta(n) needs n >= 1");
    dbl_partition(&Partition::row(n)).expect("dbl of a one-row partition is a partition")
}

/// Recovers `mu` with `dbl(mu) = nu`, if `nu` is a double.
pub fn undouble(nu: &Partition) -> Option<Partition> {
    let mut mu = Vec::new();
    for pair in nu.parts().chunks(2) {
        let a = pair[0];
        let b = pair.get(1).copied().unwrap_or(0);
        if a < b || a - b == 0 || a - b > 2 {
            return None;
        }
        mu.push(a + b);
    }
    let mu = Partition::new(mu).ok()?;
    (dbl(&mu) == nu.parts()).then_some(mu)
}

pub fn is_double(nu: &Partition) -> bool {
    undouble(nu).is_some()
}

/// James' 2-regularisation: every node slides to the top of its
/// anti-diagonal ladder `{(r - t, c + t)}`.
pub fn regularize(lambda: &Partition) -> Partition {
    // ladder index r + c (1-indexed rows and columns)
    let max_ladder = lambda.h() + lambda.part(1) + 1;
    let mut count = vec![0usize; max_ladder + 1];
    for (r, c) in lambda.cells() {
        count[r + c] += 1;
    }
    let mut rows: Vec<usize> = Vec::new();
    for (ladder, &k) in count.iter().enumerate() {
        for r in 1..=k {
            let c = ladder - r;
            if rows.len() < r {
                rows.resize(r, 0);
            }
            rows[r - 1] = rows[r - 1].max(c);
        }
    }
    Partition::new(rows).expect("regularisation of a partition is a partition")
}

/// The 2-core, read off the two-runner abacus of first-column hook lengths.
pub fn two_core(lambda: &Partition) -> Partition {
    let h = lambda.h();
    let betas = (1..=h).map(|i| lambda.part(i) + (h - i));
    let (mut even, mut odd) = (0, 0);
    for b in betas {
        if b % 2 == 0 {
            even += 1;
        } else {
            odd += 1;
        }
    }
    let mut core: Vec<usize> = (0..even).map(|k| 2 * k).chain((0..odd).map(|k| 2 * k + 1)).collect();
    core.sort_unstable_by(|a, b| b.cmp(a));
    let parts = core.iter().enumerate().map(|(i, &b)| b - (h - 1 - i)).collect();
    Partition::new(parts).expect("bead positions give a partition")
}

/// Residue of the node `(row, col)`: `col - row mod p`.
pub fn residue(row: usize, col: usize, p: usize) -> usize {
    (col + p * row - row) % p
}

/// Number of nodes of each residue `0..p`.
pub fn content(lambda: &Partition, p: usize) -> Vec<usize> {
    let mut out = vec![0; p];
    for (r, c) in lambda.cells() {
        out[residue(r, c, p)] += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn enumerate_small_families() {
        let two = enumerate(PartitionFamily::new(FamilyKind::TwoRegular, 5));
        assert_eq!(two, vec![part("5"), part("4,1"), part("3,2")]);
        assert_eq!(enumerate(PartitionFamily::new(FamilyKind::OddDistinct, 5)), vec![part("5")]);
        assert_eq!(enumerate(PartitionFamily::new(FamilyKind::BensonSplit, 5)), vec![part("3,2")]);
        assert_eq!(enumerate(PartitionFamily::new(FamilyKind::All, 0)), vec![Partition::empty()]);
        assert_eq!(enumerate(PartitionFamily::new(FamilyKind::All, 6)).len(), 11);
    }

    #[test]
    fn benson_examples() {
        assert!(benson_split(&part("3,2")).unwrap());
        assert!(!benson_split(&part("4,2")).unwrap());
        assert!(!benson_split(&part("5")).unwrap());
        assert!(matches!(benson_split(&part("2,2")), Err(Error::Not2Regular(_))));
    }

    #[test]
    fn doubles() {
        assert_eq!(beta(5), part("3,2"));
        assert_eq!(beta(6), part("4,2"));
        assert_eq!(beta(1), part("1"));
        assert_eq!(beta(2), part("2"));
        assert_eq!(dbl(&part("6,1")), vec![4, 2, 1]);
        assert_eq!(dbl(&part("2,1")), vec![2, 0, 1]);
        assert!(dbl_partition(&part("2,1")).is_err());
        assert_eq!(dblb(&part("5")), vec![3, 2]);
        assert_eq!(dblb(&part("3,1")), vec![2, 1, 1]);
        assert_eq!(undouble(&part("4,2,1")), Some(part("6,1")));
        assert!(is_double(&part("3,2")));
        assert!(!is_double(&part("4,1")));
    }

    #[test]
    fn regularisation() {
        assert_eq!(regularize(&part("2,2")), part("3,1"));
        assert_eq!(regularize(&part("3,2")), part("3,2"));
        // content forces (3): S^(1,1,1) is the trivial module mod 2
        assert_eq!(regularize(&part("1,1,1")), part("3"));
        assert_eq!(regularize(&part("1,1")), part("2"));
    }

    #[test]
    fn cores_and_content() {
        assert_eq!(two_core(&part("3,2")), part("1"));
        assert_eq!(two_core(&part("2,1")), part("2,1"));
        assert_eq!(two_core(&part("2,2")), Partition::empty());
        assert_eq!(content(&part("3,2"), 2), vec![3, 2]);
    }

    #[test]
    fn accessors() {
        assert_eq!(part("4,3,2").h2(), 2);
        assert!(part("4,1").dominates(&part("3,2")));
        assert!(!part("3,2").dominates(&part("4,1")));
        assert_eq!(Partition::sort_to_partition(&[3, 2, 5]), part("5,3,2"));
        assert_eq!(part("5,3,2").remove_part(2).unwrap(), part("5,2"));
        assert!(matches!(part("5").remove_part(2), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(part("3,2").part(7), 0);
        assert_eq!(part("3,2").hook_dimension(), 5);
        assert_eq!(part("4,3,2").hook_dimension(), 168);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), part("2,1"));
    }
}
