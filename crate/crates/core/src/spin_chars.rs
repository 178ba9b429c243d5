//! Spin character combinatorics in characteristic 2.
//!
//! Values of the reduced spin characters `zeta^lambda` on odd-part classes
//! `alpha` are sums over bar paths: chains of strict partitions that absorb
//! the parts of `alpha` one at a time, each path contributing
//! `+-2^floor(a/2)`. The sign-free data (parity, a 2-adic lower bound) only
//! needs the path statistics; the signed value additionally needs a leg
//! length sign per step, see [`path_sign`].

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{
    benson_split, dbl_partition, enumerate, is_double, FamilyKind, Partition, PartitionFamily,
};

/// How one step of a bar path absorbs the next part `r` of `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    /// A new part equal to `r`.
    NewPart,
    /// Two new parts `x > y` with `x + y = r`.
    TwoParts(usize, usize),
    /// Part number `j` (1-indexed, before the step) grows by `r`.
    GrowPart(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarPath {
    /// `lambda^0 = (), ..., lambda^k = lambda`.
    pub chain: Vec<Partition>,
    pub steps: Vec<Step>,
    /// Number of steps that are not [`Step::NewPart`].
    pub a: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpinValue {
    /// Exact value; `None` when only the sign-free data was requested.
    pub value: Option<i64>,
    pub parity: u8,
    /// Lower bound on the 2-adic valuation; `None` when there are no paths
    /// (the value is 0).
    pub valuation_lb: Option<u32>,
}

fn check_inputs(lambda: &Partition, alpha: &Partition) -> Result<()> {
    if lambda.n() != alpha.n() {
        return Err(Error::WeightMismatch { lambda: lambda.n(), alpha: alpha.n() });
    }
    if !lambda.is_two_regular() {
        return Err(Error::BadFamily(format!("{lambda} is not 2-regular")));
    }
    if !alpha.all_parts_odd() {
        return Err(Error::BadFamily(format!("{alpha} has an even part")));
    }
    Ok(())
}

/// All bar paths from `()` to `lambda` absorbing the parts of `alpha` in
/// order, depth first.
pub fn enumerate_paths(lambda: &Partition, alpha: &Partition) -> Result<Vec<BarPath>> {
    check_inputs(lambda, alpha)?;
    let mut out = Vec::new();
    let mut chain = vec![Partition::empty()];
    let mut steps = Vec::new();
    extend_paths(lambda, alpha.parts(), &mut chain, &mut steps, &mut out);
    Ok(out)
}

fn extend_paths(
    target: &Partition,
    alpha: &[usize],
    chain: &mut Vec<Partition>,
    steps: &mut Vec<Step>,
    out: &mut Vec<BarPath>,
) {
    let cur = chain.last().expect("chain starts at the empty partition").clone();
    let j = steps.len();
    if j == alpha.len() {
        if &cur == target {
            let a = steps.iter().filter(|s| !matches!(s, Step::NewPart)).count();
            out.push(BarPath { chain: chain.clone(), steps: steps.clone(), a });
        }
        return;
    }
    for (step, next) in successors(&cur, alpha[j]) {
        // parts never shrink or vanish along a path
        if next.h() > target.h() || next.part(1) > target.part(1) {
            continue;
        }
        chain.push(next);
        steps.push(step);
        extend_paths(target, alpha, chain, steps, out);
        steps.pop();
        chain.pop();
    }
}

fn successors(mu: &Partition, r: usize) -> Vec<(Step, Partition)> {
    let parts = mu.parts();
    let has = |x: usize| parts.contains(&x);
    let mut out = Vec::new();
    if !has(r) {
        out.push((Step::NewPart, mu.with_parts(&[r])));
    }
    for y in 1..r.div_ceil(2) {
        let x = r - y;
        if x != y && !has(x) && !has(y) {
            out.push((Step::TwoParts(x, y), mu.with_parts(&[x, y])));
        }
    }
    for (idx, &p) in parts.iter().enumerate() {
        if !has(p + r) {
            let mut grown = parts.to_vec();
            grown[idx] += r;
            out.push((Step::GrowPart(idx + 1), Partition::sort_to_partition(&grown)));
        }
    }
    out
}

/// `(-1)^L` summed over the steps, where `L` is the leg length of the bar
/// added: parts below a new part `r`; parts strictly between `y` and `x`
/// plus `y` for a pair; parts jumped over by a growing part.
pub fn path_sign(path: &BarPath) -> i64 {
    let mut legs = 0usize;
    for (before, (step, after)) in path.chain.iter().zip(path.steps.iter().zip(&path.chain[1..])) {
        let r = after.n() - before.n();
        let between = |lo: usize, hi: usize| before.parts().iter().filter(|&&q| lo < q && q < hi).count();
        legs += match *step {
            Step::NewPart => between(0, r),
            Step::TwoParts(x, y) => between(y, x) + y,
            Step::GrowPart(j) => {
                let p = before.part(j);
                between(p, p + r)
            }
        };
    }
    if legs % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `zeta^lambda_alpha mod 2`: the paths with `a <= 1` are the odd terms.
pub fn zeta_parity(lambda: &Partition, alpha: &Partition) -> Result<u8> {
    let paths = enumerate_paths(lambda, alpha)?;
    Ok((paths.iter().filter(|p| p.a <= 1).count() % 2) as u8)
}

/// `min_P floor(a(P)/2)`; `None` if there is no path.
pub fn zeta_valuation_lb(lambda: &Partition, alpha: &Partition) -> Result<Option<u32>> {
    let paths = enumerate_paths(lambda, alpha)?;
    Ok(paths.iter().map(|p| (p.a / 2) as u32).min())
}

/// The exact value `zeta^lambda_alpha`.
pub fn spin_char(lambda: &Partition, alpha: &Partition) -> Result<i64> {
    let paths = enumerate_paths(lambda, alpha)?;
    Ok(paths.iter().map(|p| path_sign(p) << (p.a / 2)).sum())
}

pub fn spin_value(lambda: &Partition, alpha: &Partition, signed: bool) -> Result<SpinValue> {
    let paths = enumerate_paths(lambda, alpha)?;
    let parity = (paths.iter().filter(|p| p.a <= 1).count() % 2) as u8;
    let valuation_lb = paths.iter().map(|p| (p.a / 2) as u32).min();
    let value = signed.then(|| paths.iter().map(|p| path_sign(p) << (p.a / 2)).sum());
    Ok(SpinValue { value, parity, valuation_lb })
}

/// Degree of the spin character: `2^floor((n-h)/2) n!/prod(lambda_i!)
/// prod_{i<j} (lambda_i - lambda_j)/(lambda_i + lambda_j)`.
pub fn spin_degree(lambda: &Partition) -> Result<u128> {
    lambda.require_two_regular()?;
    let parts = lambda.parts();
    let mut num: u128 = (1..=lambda.n() as u128).product();
    let mut den: u128 = 1;
    for &x in parts {
        den *= (1..=x as u128).product::<u128>();
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            num *= (parts[i] - parts[j]) as u128;
            den *= (parts[i] + parts[j]) as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    assert_eq!(num % den, 0, "shifted tableau count is an integer");
    Ok((num / den) << ((lambda.n() - lambda.h()) / 2))
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Number of composition factors `D^{dblb(lambda)^R}` in the reduction of
/// the spin module `S(lambda)`.
pub fn spin_principal_multiplicity(lambda: &Partition) -> Result<u64> {
    lambda.require_two_regular()?;
    Ok(1 << (lambda.h2() / 2))
}

/// The three shapes of the odd-value lemma for spin characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LemmaCase {
    /// `lambda` has odd distinct parts.
    OddDistinct(Partition),
    /// `p(lambda, 2c)` with `lambda` odd distinct, `c >= 3` odd.
    ExtraEvenPart { lambda: Partition, c: usize },
    /// `(2c, 2d)` with `c > d >= 1` odd.
    TwoEvenParts { c: usize, d: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaPrediction {
    /// Predicted `2 does not divide zeta`, read literally.
    pub odd: bool,
    /// The literal extra-even-part reading also lists classes where a new
    /// part coincides with a part of `lambda` (other than the pair `c,c`);
    /// those values are even. This field drops them.
    pub odd_refined: bool,
    /// Two-even-parts case only: `alpha` is outside the set where
    /// `4 does not divide zeta` is allowed, so `4 | zeta` is predicted.
    pub four_divides: Option<bool>,
    /// Two-even-parts case only: `alpha = (c,c,d,d)`, where `4` is
    /// predicted not to divide `zeta`.
    pub four_not_divides: Option<bool>,
}

impl LemmaCase {
    /// The label `lambda` whose character the prediction is about.
    pub fn label(&self) -> Partition {
        match self {
            LemmaCase::OddDistinct(lambda) => lambda.clone(),
            LemmaCase::ExtraEvenPart { lambda, c } => lambda.with_parts(&[2 * c]),
            LemmaCase::TwoEvenParts { c, d } => Partition::sort_to_partition(&[2 * c, 2 * d]),
        }
    }

    fn validate(&self) -> Result<()> {
        let odd_distinct = |l: &Partition| l.all_parts_odd() && l.is_two_regular();
        match self {
            LemmaCase::OddDistinct(lambda) if odd_distinct(lambda) => Ok(()),
            LemmaCase::ExtraEvenPart { lambda, c } if odd_distinct(lambda) && c % 2 == 1 && *c >= 3 => Ok(()),
            LemmaCase::TwoEvenParts { c, d } if c % 2 == 1 && d % 2 == 1 && c > d && *d >= 1 => Ok(()),
            other => Err(Error::CaseShapeMismatch(format!("{other:?}"))),
        }
    }
}

/// The literal characterisations of when `zeta^label_alpha` is odd (and, in
/// the two-even-parts case, not divisible by 4).
pub fn lemma_prediction(case: &LemmaCase, alpha: &Partition) -> Result<LemmaPrediction> {
    case.validate()?;
    let label = case.label();
    if alpha.n() != label.n() || !alpha.all_parts_odd() {
        return Err(Error::CaseShapeMismatch(format!("class {alpha} for label {label}")));
    }
    let pred = match case {
        LemmaCase::OddDistinct(lambda) => LemmaPrediction {
            odd: alpha == lambda,
            odd_refined: alpha == lambda,
            four_divides: None,
            four_not_divides: None,
        },
        LemmaCase::ExtraEvenPart { lambda, c } => {
            let c = *c;
            let has = |x: usize| lambda.parts().contains(&x);
            // (matches, matches without a collision)
            let grown = (1..=lambda.h()).map(|j| {
                let hat = lambda.remove_part(j).expect("j is in range");
                let g = lambda.part(j) + 2 * c;
                let hit = &hat.with_parts(&[g]) == alpha;
                (hit, hit && !hat.parts().contains(&g))
            });
            let split = (1..=c).step_by(2).map(|e| {
                let hit = &lambda.with_parts(&[2 * c - e, e]) == alpha;
                (hit, hit && (e == c || !(has(e) || has(2 * c - e))))
            });
            let (odd, odd_refined) =
                grown.chain(split).fold((false, false), |(a, b), (x, y)| (a || x, b || y));
            LemmaPrediction { odd, odd_refined, four_divides: None, four_not_divides: None }
        }
        LemmaCase::TwoEvenParts { c, d } => {
            let (c, d) = (*c, *d);
            let two_row = (1..2 * c + 2 * d)
                .step_by(2)
                .any(|e| &Partition::sort_to_partition(&[2 * c + 2 * d - e, e]) == alpha);
            let four_row = (1..2 * c).step_by(2).any(|e| {
                (1..2 * d)
                    .step_by(2)
                    .any(|f| &Partition::sort_to_partition(&[2 * c - e, e, 2 * d - f, f]) == alpha)
            });
            let witness = alpha == &Partition::sort_to_partition(&[c, c, d, d]);
            LemmaPrediction {
                odd: false,
                odd_refined: false,
                four_divides: Some(!(two_row || four_row)),
                four_not_divides: Some(witness),
            }
        }
    };
    Ok(pred)
}

/// Every lemma case whose label has weight `n`.
pub fn lemma_cases(n: usize) -> Vec<LemmaCase> {
    let mut out: Vec<LemmaCase> = enumerate(PartitionFamily::new(FamilyKind::OddDistinct, n))
        .into_iter()
        .map(LemmaCase::OddDistinct)
        .collect();
    for c in (3..).step_by(2).take_while(|c| 2 * c <= n) {
        for lambda in enumerate(PartitionFamily::new(FamilyKind::OddDistinct, n - 2 * c)) {
            out.push(LemmaCase::ExtraEvenPart { lambda, c });
        }
    }
    if n % 2 == 0 {
        for d in (1..).step_by(2).take_while(|d| 4 * d < n) {
            let rest = n - 2 * d;
            if rest % 2 == 0 && (rest / 2) % 2 == 1 && rest / 2 > d {
                out.push(LemmaCase::TwoEvenParts { c: rest / 2, d });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicSpinTable {
    pub n: usize,
    /// `|psi^{beta_n}_alpha|` for every odd-parts class `alpha`.
    pub magnitudes: Vec<(Partition, u64)>,
    /// Whether `D^{beta_n}` splits on restriction to `A_n`.
    pub split: bool,
    /// Split classes on which the two `A_n` constituents differ.
    pub difference_classes: Vec<Partition>,
}

pub fn basic_spin_tables(n: usize) -> BasicSpinTable {
    let magnitudes = enumerate(PartitionFamily::new(FamilyKind::OddParts, n))
        .into_iter()
        .map(|alpha| {
            let m = 1u64 << ((alpha.h() - 1) / 2);
            (alpha, m)
        })
        .collect();
    let split = n % 4 != 2;
    let difference_classes = match n % 4 {
        1 | 3 => vec![Partition::row(n)],
        0 => enumerate(PartitionFamily::new(FamilyKind::OddDistinct, n))
            .into_iter()
            .filter(|a| a.h() == 2)
            .collect(),
        _ => Vec::new(),
    };
    BasicSpinTable { n, magnitudes, split, difference_classes }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateCase {
    pub description: String,
    pub nu: Vec<Partition>,
    pub max_lambda_parts: usize,
    pub lambda: Vec<Partition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateFilter {
    pub n: usize,
    pub cases: Vec<CandidateCase>,
    /// Surviving `(lambda, nu)` pairs over all cases, after excluding a
    /// double `nu` for a double `lambda`.
    pub pairs: Vec<(Partition, Partition)>,
    pub empty: bool,
}

fn non_split(nu: &Partition) -> bool {
    nu.is_two_regular() && !benson_split(nu).expect("checked 2-regular")
}

fn two_row_family(n: usize, max_b: usize) -> BTreeSet<Partition> {
    let mut nus = BTreeSet::new();
    for b in 1..=max_b {
        let two_row = Partition::sort_to_partition(&[n - b, b]);
        if non_split(&two_row) {
            nus.insert(two_row.clone());
        }
        if let Ok(d) = dbl_partition(&two_row) {
            if non_split(&d) {
                nus.insert(d);
            }
        }
    }
    nus
}

/// Shapes `(lambda, nu)` that survive the character-level reduction for an
/// irreducible product `E^lambda (x) E^{beta_n}_+- = E^nu` (`n >= 5`).
pub fn candidate_filters(n: usize) -> CandidateFilter {
    let two_regular = enumerate(PartitionFamily::new(FamilyKind::TwoRegular, n));
    let lambdas_up_to = |h: usize| -> Vec<Partition> {
        two_regular
            .iter()
            .filter(|l| l.h() <= h && **l != Partition::row(n))
            .cloned()
            .collect()
    };
    let mut cases = Vec::new();
    match n % 4 {
        1 | 3 => {
            let nu = two_row_family(n, (n - 1) / 2);
            cases.push(CandidateCase {
                description: "nu = (n-b,b) or dbl(n-b,b), h(lambda) <= 4".into(),
                nu: nu.into_iter().collect(),
                max_lambda_parts: 4,
                lambda: lambdas_up_to(4),
            });
        }
        0 => {
            let nu = two_row_family(n, (n / 2).saturating_sub(2));
            cases.push(CandidateCase {
                description: "nu = (n-b,b) or dbl(n-b,b) with b <= n/2-2, h(lambda) <= 4".into(),
                nu: nu.into_iter().collect(),
                max_lambda_parts: 4,
                lambda: lambdas_up_to(4),
            });
            let mut nu: BTreeSet<Partition> =
                two_regular.iter().filter(|v| v.h() <= 4 && non_split(v)).cloned().collect();
            for c in (1..n).step_by(2) {
                for d in (1..n).step_by(2) {
                    if c % 4 != d % 4 || c + d >= n {
                        continue;
                    }
                    let label = Partition::sort_to_partition(&[n - c - d, c, d]);
                    if !label.is_two_regular() {
                        continue;
                    }
                    if let Ok(doubled) = dbl_partition(&label) {
                        if non_split(&doubled) {
                            nu.insert(doubled);
                        }
                    }
                }
            }
            cases.push(CandidateCase {
                description: "h(nu) <= 4 or nu = dbl(p(n-c-d,c,d)) with c = d = +-1 mod 4, h(lambda) <= 6".into(),
                nu: nu.into_iter().collect(),
                max_lambda_parts: 6,
                lambda: lambdas_up_to(6),
            });
        }
        _ => {}
    }

    let mut pairs = BTreeSet::new();
    for case in &cases {
        for lambda in &case.lambda {
            for nu in &case.nu {
                if is_double(lambda) && is_double(nu) {
                    continue;
                }
                pairs.insert((lambda.clone(), nu.clone()));
            }
        }
    }
    let pairs: Vec<_> = pairs.into_iter().collect();
    let empty = pairs.is_empty();
    CandidateFilter { n, cases, pairs, empty }
}
