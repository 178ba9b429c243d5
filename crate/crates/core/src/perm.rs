//! Permutations of `{0, .., n-1}` acting on the right: `compose(a, b)` is
//! "first `a`, then `b`", matching products of row-convention matrices.
//!
//! Fixed generating words: `S_n` uses the Coxeter generators
//! `s_1, .., s_{n-1}` (index `i-1`), `A_n` uses `s_1 s_2` followed by
//! `s_1 s_k` for `3 <= k <= n-1`.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// The Coxeter generator `s_{i+1}` swapping `i` and `i+1`.
    pub fn coxeter(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(i, i + 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn compose(&self, then: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| then.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Perm(inv)
    }

    pub fn inversions(&self) -> usize {
        let p = &self.0;
        (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
    }

    pub fn is_even(&self) -> bool {
        self.inversions() % 2 == 0
    }

    /// Indices `i` (for `s_{i+1}`) with `self = s_{i_1} s_{i_2} ...`.
    pub fn coxeter_word(&self) -> Vec<usize> {
        let mut p = self.clone();
        let n = p.degree();
        let mut word = Vec::new();
        while let Some(i) = (0..n.saturating_sub(1)).find(|&i| p.0[i] > p.0[i + 1]) {
            // s_i then p shortens p; undoing it afterwards restores p
            p = Perm::coxeter(n, i).compose(&p);
            word.push(i);
        }
        word
    }
}

pub fn sym_generators(n: usize) -> Vec<Perm> {
    (0..n.saturating_sub(1)).map(|i| Perm::coxeter(n, i)).collect()
}

/// Generator words for `A_n` as sequences of Coxeter indices.
pub fn alt_generator_words(n: usize) -> Vec<Vec<usize>> {
    if n < 3 {
        return Vec::new();
    }
    let mut words = vec![vec![0, 1]];
    words.extend((3..n).map(|k| vec![0, k - 1]));
    words
}

pub fn eval_word(n: usize, word: &[usize]) -> Perm {
    word.iter().fold(Perm::identity(n), |acc, &i| acc.compose(&Perm::coxeter(n, i)))
}

/// An even permutation as a word in the `A_n` generators: pairs of Coxeter
/// letters `s_a s_b = (s_1 s_a)^{-1} (s_1 s_b)`. Entries are
/// `(generator index, inverse?)`.
pub fn alt_word(p: &Perm) -> Option<Vec<(usize, bool)>> {
    let word = p.coxeter_word();
    if word.len() % 2 == 1 {
        return None;
    }
    // s_1 s_a for a = 1 is trivial, a = 2 is generator 0, a >= 3 is a-2
    let letter = |a: usize| -> Option<usize> {
        match a {
            0 => None,
            1 => Some(0),
            _ => Some(a - 1),
        }
    };
    let mut out = Vec::new();
    for pair in word.chunks(2) {
        if let Some(g) = letter(pair[0]) {
            out.push((g, true));
        }
        if let Some(g) = letter(pair[1]) {
            out.push((g, false));
        }
    }
    Some(out)
}

/// Generators of the Young subgroup of a composition: the Coxeter
/// generators that do not cross a cut.
pub fn young_generator_indices(composition: &[usize]) -> Vec<usize> {
    let n: usize = composition.iter().sum();
    let mut cuts = Vec::new();
    let mut acc = 0;
    for &c in composition {
        acc += c;
        cuts.push(acc);
    }
    (0..n.saturating_sub(1)).filter(|&i| !cuts.contains(&(i + 1))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coxeter_words_evaluate_back() {
        let p = Perm(vec![3, 0, 4, 1, 2]);
        let w = p.coxeter_word();
        assert_eq!(w.len(), p.inversions());
        assert_eq!(eval_word(5, &w), p);
    }

    #[test]
    fn alt_words_evaluate_back() {
        let n = 6;
        let gens: Vec<Perm> = alt_generator_words(n).iter().map(|w| eval_word(n, w)).collect();
        assert_eq!(gens.len(), 4);
        let p = Perm(vec![2, 0, 1, 5, 3, 4]);
        assert!(p.is_even());
        let w = alt_word(&p).unwrap();
        let mut acc = Perm::identity(n);
        for (g, inv) in w {
            let x = if inv { gens[g].inverse() } else { gens[g].clone() };
            acc = acc.compose(&x);
        }
        assert_eq!(acc, p);
        assert!(alt_word(&Perm::coxeter(n, 2)).is_none());
    }

    #[test]
    fn young_generators() {
        assert_eq!(young_generator_indices(&[3, 2]), vec![0, 1, 3]);
        assert_eq!(young_generator_indices(&[1, 1, 1]), Vec::<usize>::new());
    }
}
