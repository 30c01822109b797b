use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A finite poset stored as a dense order matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset<N> {
    nodes: Vec<N>,
    /// `leq[i][j]` iff `nodes[i] ≤ nodes[j]`.
    leq: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isomorphism {
    /// `mapping[i]` is the image in the second poset of node `i` of the first.
    Iso(Vec<usize>),
    /// The first invariant found that tells the two apart.
    NotIso(String),
}

impl Isomorphism {
    pub fn is_iso(&self) -> bool {
        matches!(self, Isomorphism::Iso(_))
    }
}

impl<N> FinitePoset<N> {
    /// Builds the poset and checks the order axioms exhaustively.
    pub fn new(nodes: Vec<N>, leq: impl Fn(&N, &N) -> bool) -> Result<Self> {
        let m: Vec<Vec<bool>> = nodes
            .iter()
            .map(|a| nodes.iter().map(|b| leq(a, b)).collect())
            .collect();
        Self::from_matrix(nodes, m)
    }

    pub fn from_matrix(nodes: Vec<N>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = nodes.len();
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::Validation(format!("order is not reflexive at node {i}")));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::Validation(format!("order is not antisymmetric at nodes {i}, {j}")));
                }
                if !leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j][k] && !leq[i][k] {
                        return Err(Error::Validation(format!("order is not transitive at nodes {i}, {j}, {k}")));
                    }
                }
            }
        }
        Ok(FinitePoset { nodes, leq })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[N] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &N {
        &self.nodes[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    /// Cover pairs `(lower, upper)` in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|i| self.leq[i][t]))
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|i| self.leq[b][i]))
    }

    /// Least upper bound, found by search.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.len()).filter(|&k| self.leq[i][k] && self.leq[j][k]).collect();
        uppers.iter().copied().find(|&u| uppers.iter().all(|&v| self.leq[u][v]))
    }

    /// Greatest lower bound, found by search.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lowers: Vec<usize> = (0..self.len()).filter(|&k| self.leq[k][i] && self.leq[k][j]).collect();
        lowers.iter().copied().find(|&l| lowers.iter().all(|&v| self.leq[v][l]))
    }

    /// Checks that all meets and joins exist and satisfy absorption.
    pub fn check_lattice(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let (Some(m), Some(jn)) = (self.meet(i, j), self.join(i, j)) else {
                    return Err(Error::Validation(format!("nodes {i} and {j} lack a meet or join")));
                };
                if self.join(i, m) != Some(i) || self.meet(i, jn) != Some(i) {
                    return Err(Error::Validation(format!("absorption fails at nodes {i}, {j}")));
                }
            }
        }
        Ok(())
    }

    /// A triple violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`, if any.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let left = self.join(y, z).and_then(|yz| self.meet(x, yz));
                    let right = match (self.meet(x, y), self.meet(x, z)) {
                        (Some(a), Some(b)) => self.join(a, b),
                        _ => None,
                    };
                    if left != right {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Length of the longest chain ending at each node.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (0..n).filter(|&j| self.leq[j][i]).count());
        let mut h = vec![0; n];
        for &i in &order {
            h[i] = (0..n).filter(|&j| self.lt(j, i)).map(|j| h[j] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Length of the longest chain starting at each node and going up.
    pub fn depths(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (0..n).filter(|&j| self.leq[i][j]).count());
        let mut d = vec![0; n];
        for &i in &order {
            d[i] = (0..n).filter(|&j| self.lt(i, j)).map(|j| d[j] + 1).max().unwrap_or(0);
        }
        d
    }

    /// `(height, covers below, covers above)` for each node.
    fn fingerprints(&self) -> Vec<(usize, usize, usize)> {
        let h = self.heights();
        let covers = self.covers();
        (0..self.len())
            .map(|i| {
                let down = covers.iter().filter(|c| c.1 == i).count();
                let up = covers.iter().filter(|c| c.0 == i).count();
                (h[i], down, up)
            })
            .collect()
    }

    pub fn map<M>(&self, f: impl Fn(&N) -> M) -> FinitePoset<M> {
        FinitePoset {
            nodes: self.nodes.iter().map(f).collect(),
            leq: self.leq.clone(),
        }
    }

    /// Order isomorphism by backtracking over nodes grouped by fingerprint.
    pub fn isomorphic<M>(&self, other: &FinitePoset<M>) -> Isomorphism {
        if self.len() != other.len() {
            return Isomorphism::NotIso(format!("sizes differ: {} vs {}", self.len(), other.len()));
        }
        let (c1, c2) = (self.covers().len(), other.covers().len());
        if c1 != c2 {
            return Isomorphism::NotIso(format!("cover counts differ: {c1} vs {c2}"));
        }
        let f1 = self.fingerprints();
        let f2 = other.fingerprints();
        let histogram = |f: &[(usize, usize, usize)]| {
            let mut m = BTreeMap::new();
            for x in f {
                *m.entry(*x).or_insert(0usize) += 1;
            }
            m
        };
        let (h1, h2) = (histogram(&f1), histogram(&f2));
        if h1 != h2 {
            let diff = h1
                .iter()
                .find(|(k, v)| h2.get(k) != Some(v))
                .map(|(k, _)| *k)
                .or_else(|| h2.keys().find(|k| !h1.contains_key(k)).copied())
                .expect("histograms differ");
            return Isomorphism::NotIso(format!(
                "(height, lower covers, upper covers) = {:?} occurs {} vs {} times",
                diff,
                h1.get(&diff).copied().unwrap_or(0),
                h2.get(&diff).copied().unwrap_or(0)
            ));
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (f1[i], i));
        let mut mapping = vec![usize::MAX; self.len()];
        let mut used = vec![false; self.len()];
        if self.extend(other, &order, 0, &f1, &f2, &mut mapping, &mut used) {
            Isomorphism::Iso(mapping)
        } else {
            Isomorphism::NotIso("no order-preserving bijection between fingerprint classes".into())
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend<M>(
        &self,
        other: &FinitePoset<M>,
        order: &[usize],
        pos: usize,
        f1: &[(usize, usize, usize)],
        f2: &[(usize, usize, usize)],
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let i = order[pos];
        for j in 0..other.len() {
            if used[j] || f1[i] != f2[j] {
                continue;
            }
            let consistent = order[..pos].iter().all(|&k| {
                let mk = mapping[k];
                self.leq[i][k] == other.leq[j][mk] && self.leq[k][i] == other.leq[mk][j]
            });
            if !consistent {
                continue;
            }
            mapping[i] = j;
            used[j] = true;
            if self.extend(other, order, pos + 1, f1, f2, mapping, used) {
                return true;
            }
            used[j] = false;
            mapping[i] = usize::MAX;
        }
        false
    }

    /// The same nodes with the order reversed.
    pub fn dual(&self) -> FinitePoset<N>
    where
        N: Clone,
    {
        let n = self.len();
        FinitePoset {
            nodes: self.nodes.clone(),
            leq: (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect(),
        }
    }
}

impl<N: fmt::Display> FinitePoset<N> {
    /// Display order: by distance from the top (longest upward chain), then label.
    pub fn display_order(&self) -> Vec<usize> {
        let d = self.depths();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            d[a].cmp(&d[b])
                .then_with(|| self.nodes[a].to_string().cmp(&self.nodes[b].to_string()))
                .then(a.cmp(&b))
        });
        order
    }

    /// Adjacency form: nodes in display order and cover edges from upper to lower.
    pub fn to_json_value(&self) -> Value {
        let order = self.display_order();
        let mut position = vec![0; self.len()];
        for (p, &i) in order.iter().enumerate() {
            position[i] = p;
        }
        let nodes: Vec<Value> = order
            .iter()
            .enumerate()
            .map(|(p, &i)| json!({"id": p, "label": self.nodes[i].to_string()}))
            .collect();
        let mut edges: Vec<(usize, usize)> = self
            .covers()
            .into_iter()
            .map(|(lo, hi)| (position[hi], position[lo]))
            .collect();
        edges.sort();
        json!({
            "nodes": nodes,
            "covers": edges.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

pub fn chain(n: usize) -> FinitePoset<String> {
    FinitePoset::new((0..n).map(|i| i.to_string()).collect(), |a, b| {
        a.parse::<usize>().unwrap() <= b.parse::<usize>().unwrap()
    })
    .expect("chain order")
}

pub fn antichain(n: usize) -> FinitePoset<String> {
    FinitePoset::new((0..n).map(|i| i.to_string()).collect(), |a, b| a == b).expect("antichain order")
}

/// `P ∘ Q`: compare first in `P` strictly, then in `Q`.
pub fn lex_product<A: fmt::Display, B: fmt::Display>(p: &FinitePoset<A>, q: &FinitePoset<B>) -> FinitePoset<String> {
    let mut nodes = Vec::new();
    let mut idx = Vec::new();
    for i in 0..p.len() {
        for j in 0..q.len() {
            nodes.push(format!("({},{})", p.nodes[i], q.nodes[j]));
            idx.push((i, j));
        }
    }
    let leq = idx
        .iter()
        .map(|&(a, b)| idx.iter().map(|&(c, d)| p.lt(a, c) || (a == c && q.leq(b, d))).collect())
        .collect();
    FinitePoset::from_matrix(nodes, leq).expect("lexicographic order")
}

/// Stacks the parts, each one entirely above the previous.
pub fn ordinal_sum<N: fmt::Display>(parts: &[&FinitePoset<N>]) -> FinitePoset<String> {
    let mut nodes = Vec::new();
    let mut idx = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        for i in 0..p.len() {
            nodes.push(p.nodes[i].to_string());
            idx.push((k, i));
        }
    }
    let leq = idx
        .iter()
        .map(|&(k, i)| {
            idx.iter()
                .map(|&(l, j)| k < l || (k == l && parts[k].leq(i, j)))
                .collect()
        })
        .collect();
    FinitePoset::from_matrix(nodes, leq).expect("ordinal sum order")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FinitePoset<String> {
        ordinal_sum(&[&chain(1), &antichain(2), &chain(1)])
    }

    #[test]
    fn constructions() {
        let p = lex_product(&chain(2), &antichain(3));
        assert_eq!(p.len(), 6);
        assert_eq!(p.covers().len(), 9);
        assert!(p.dual().dual() == p);
        let s = ordinal_sum(&[&chain(1), &chain(2), &chain(1)]);
        assert!(s.isomorphic(&chain(4)).is_iso());
        assert_eq!(chain(3).covers().len(), 2);
    }

    #[test]
    fn isomorphism() {
        assert!(matches!(chain(3).isomorphic(&diamond()), Isomorphism::NotIso(w) if w.contains("sizes")));
        assert!(!chain(4).isomorphic(&diamond()).is_iso());
        let relabeled = diamond().map(|s| format!("x{s}"));
        assert!(diamond().isomorphic(&relabeled).is_iso());
        assert!(diamond().dual().isomorphic(&diamond()).is_iso());
    }

    #[test]
    fn lattice_checks() {
        diamond().check_lattice().unwrap();
        assert!(antichain(2).check_lattice().is_err());
        assert!(diamond().distributivity_witness().is_none());
        let m3 = ordinal_sum(&[&chain(1), &antichain(3), &chain(1)]);
        assert!(m3.distributivity_witness().is_some());
    }

    #[test]
    fn rejects_non_orders() {
        let r = FinitePoset::new(vec![0, 1], |a, b| a != b || a == b && *a == 0);
        assert!(r.is_err());
    }
}
