//! Residue combinatorics: `i`-signatures, normal and conormal nodes, the
//! crystal operators and JS-partitions, for an arbitrary prime `p`.
//!
//! Signature convention: the addable and removable `i`-nodes are read top
//! to bottom, and every addable node immediately followed by a removable
//! node cancels with it, repeatedly. Surviving removable nodes are normal
//! (the lowest one is good), surviving addable nodes are conormal (the
//! highest one is cogood). The module-theoretic branching checks in
//! `verify` pin this convention.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{residue, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub fn residue(&self, p: usize) -> usize {
        residue(self.row, self.col, p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    Addable,
    Removable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureData {
    pub residue: usize,
    /// All addable/removable `i`-nodes, top to bottom.
    pub nodes: Vec<(Node, NodeKind)>,
    /// What survives cancellation, top to bottom: removables then addables.
    pub reduced: Vec<(Node, NodeKind)>,
    /// Top to bottom.
    pub normal: Vec<Node>,
    /// Top to bottom.
    pub conormal: Vec<Node>,
}

impl SignatureData {
    pub fn eps(&self) -> usize {
        self.normal.len()
    }

    pub fn phi(&self) -> usize {
        self.conormal.len()
    }

    /// Lowest normal node.
    pub fn good(&self) -> Option<Node> {
        self.normal.last().copied()
    }

    /// Highest conormal node.
    pub fn cogood(&self) -> Option<Node> {
        self.conormal.first().copied()
    }
}

pub fn signature(lambda: &Partition, i: usize, p: usize) -> SignatureData {
    let mut nodes = Vec::new();
    for r in 1..=lambda.h() + 1 {
        let len = lambda.part(r);
        // the removable and addable node of one row differ in residue
        if r <= lambda.h() && len > lambda.part(r + 1) {
            let node = Node { row: r, col: len };
            if node.residue(p) == i {
                nodes.push((node, NodeKind::Removable));
            }
        }
        if r == 1 || lambda.part(r - 1) > len {
            let node = Node { row: r, col: len + 1 };
            if node.residue(p) == i {
                nodes.push((node, NodeKind::Addable));
            }
        }
    }

    let mut stack: Vec<(Node, NodeKind)> = Vec::with_capacity(nodes.len());
    for &entry in &nodes {
        if entry.1 == NodeKind::Removable && matches!(stack.last(), Some((_, NodeKind::Addable))) {
            stack.pop();
        } else {
            stack.push(entry);
        }
    }
    let normal = stack
        .iter()
        .filter(|(_, k)| *k == NodeKind::Removable)
        .map(|(n, _)| *n)
        .collect();
    let conormal = stack
        .iter()
        .filter(|(_, k)| *k == NodeKind::Addable)
        .map(|(n, _)| *n)
        .collect();
    SignatureData { residue: i, nodes, reduced: stack, normal, conormal }
}

fn require_regular(lambda: &Partition, p: usize) -> Result<()> {
    if lambda.is_p_regular(p) {
        Ok(())
    } else {
        Err(Error::NotPRegular { partition: lambda.clone(), p })
    }
}

pub fn eps(lambda: &Partition, i: usize, p: usize) -> Result<usize> {
    require_regular(lambda, p)?;
    Ok(signature(lambda, i, p).eps())
}

pub fn phi(lambda: &Partition, i: usize, p: usize) -> Result<usize> {
    require_regular(lambda, p)?;
    Ok(signature(lambda, i, p).phi())
}

/// `sum_i eps_i(lambda)`: number of normal nodes.
pub fn total_eps(lambda: &Partition, p: usize) -> Result<usize> {
    require_regular(lambda, p)?;
    Ok((0..p).map(|i| signature(lambda, i, p).eps()).sum())
}

/// `e~_i^r lambda`; `None` when `r > eps_i(lambda)`.
pub fn e_tilde(lambda: &Partition, i: usize, r: usize, p: usize) -> Result<Option<Partition>> {
    require_regular(lambda, p)?;
    let mut cur = lambda.clone();
    for _ in 0..r {
        match signature(&cur, i, p).good() {
            Some(node) => cur = cur.remove_cell(node.row),
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// `f~_i^r lambda`; `None` when `r > phi_i(lambda)`.
pub fn f_tilde(lambda: &Partition, i: usize, r: usize, p: usize) -> Result<Option<Partition>> {
    require_regular(lambda, p)?;
    let mut cur = lambda.clone();
    for _ in 0..r {
        match signature(&cur, i, p).cogood() {
            Some(node) => cur = cur.add_cell(node.row),
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// Exactly one normal node overall.
pub fn is_js(lambda: &Partition, p: usize) -> Result<bool> {
    Ok(total_eps(lambda, p)? == 1)
}

/// Normal nodes of every residue, top to bottom within a residue.
pub fn normal_nodes(lambda: &Partition, p: usize) -> Vec<(usize, Node)> {
    (0..p)
        .flat_map(|i| signature(lambda, i, p).normal.into_iter().map(move |n| (i, n)))
        .collect()
}

/// Top removable node `A` and second-bottom addable node `B`; the label
/// `(lambda \ A) u B` of the tensor product with the natural module.
pub fn top_removed_second_bottom_added(lambda: &Partition) -> Option<Partition> {
    let top = *lambda.removable_rows().first()?;
    let addable = lambda.addable_rows();
    if addable.len() < 2 {
        return None;
    }
    let row = addable[addable.len() - 2];
    if row == top {
        // B sits right of A: the node set is not a diagram
        return None;
    }
    let mut parts = lambda.parts().to_vec();
    parts[top - 1] -= 1;
    if row > parts.len() {
        parts.push(1);
    } else {
        parts[row - 1] += 1;
    }
    Partition::new(parts).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate, FamilyKind, PartitionFamily};

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn signature_examples() {
        let sig = signature(&part("2,1"), 1, 2);
        assert_eq!(sig.normal, vec![Node { row: 1, col: 2 }, Node { row: 2, col: 1 }]);
        assert_eq!(sig.eps(), 2);
        assert_eq!(sig.good(), Some(Node { row: 2, col: 1 }));

        let sig = signature(&part("3,1"), 1, 2);
        assert_eq!((sig.eps(), sig.phi()), (0, 0));
        assert_eq!(sig.nodes.len(), 2);

        for n in 1..8 {
            let row = Partition::row(n);
            assert_eq!(normal_nodes(&row, 2).len(), 1);
            assert!(is_js(&row, 2).unwrap());
        }
    }

    #[test]
    fn operator_examples() {
        assert_eq!(e_tilde(&part("2,1"), 1, 1, 2).unwrap(), Some(part("2")));
        assert_eq!(f_tilde(&part("2,1"), 0, 1, 2).unwrap(), Some(part("3,1")));
        assert_eq!(e_tilde(&part("2,1"), 1, 3, 2).unwrap(), None);
        assert_eq!(e_tilde(&part("2,1"), 0, 1, 2).unwrap(), None);
        assert!(matches!(e_tilde(&part("1,1"), 0, 1, 2), Err(Error::NotPRegular { .. })));
    }

    #[test]
    fn js_examples() {
        assert!(!is_js(&part("3,2"), 2).unwrap());
        assert_eq!(eps(&part("3,2"), 0, 2).unwrap(), 2);
        assert!(!is_js(&part("2,1"), 2).unwrap());
        assert!(!is_js(&part("4,3"), 2).unwrap());
        assert!(is_js(&part("3,1"), 2).unwrap());
    }

    #[test]
    fn operators_are_mutually_inverse() {
        for n in 1..=10 {
            for lambda in enumerate(PartitionFamily::new(FamilyKind::TwoRegular, n)) {
                for i in 0..2 {
                    if let Some(mu) = e_tilde(&lambda, i, 1, 2).unwrap() {
                        assert!(mu.is_two_regular());
                        assert_eq!(f_tilde(&mu, i, 1, 2).unwrap(), Some(lambda.clone()));
                    }
                    if let Some(mu) = f_tilde(&lambda, i, 1, 2).unwrap() {
                        assert!(mu.is_two_regular());
                        assert_eq!(e_tilde(&mu, i, 1, 2).unwrap(), Some(lambda.clone()));
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_word_shape() {
        for n in 0..=10 {
            for lambda in enumerate(PartitionFamily::new(FamilyKind::All, n)) {
                let mut net = 0isize;
                for i in 0..2 {
                    let sig = signature(&lambda, i, 2);
                    let first_addable = sig
                        .reduced
                        .iter()
                        .position(|(_, k)| *k == NodeKind::Addable)
                        .unwrap_or(sig.reduced.len());
                    assert!(sig.reduced[first_addable..].iter().all(|(_, k)| *k == NodeKind::Addable));
                    let add = sig.nodes.iter().filter(|(_, k)| *k == NodeKind::Addable).count();
                    let rem = sig.nodes.len() - add;
                    assert_eq!(sig.eps() as isize - rem as isize, sig.phi() as isize - add as isize);
                    net += add as isize - rem as isize;
                }
                assert_eq!(net, 1);
            }
        }
    }

    #[test]
    fn natural_module_label() {
        // (3,1): A = (1,3), addable rows 1,2,3 so B = (2,2)
        assert_eq!(top_removed_second_bottom_added(&part("3,1")), Some(part("2,2")));
        assert_eq!(top_removed_second_bottom_added(&part("4")), None);
    }
}
