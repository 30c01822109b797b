use std::collections::BTreeSet;
use std::sync::Arc;

use super::poset::FinitePoset;
use super::subspace::{all_subspaces, Subspace};
use crate::error::{Error, Result};
use crate::fields::ExtensionPair;

/// Nodes of the ideal lattice of `K + XF[[X]]`: the whole ring, the glued
/// levels `(n, W) = W·Xⁿ + X^{n+1}F[[X]]`, and the zero ideal.
///
/// `(n, F)` is `⟨Xⁿ⟩_V`; a zero space at level `n` is `(n+1, F)`, so `space`
/// is never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealNode {
    Top,
    Level { n: u32, space: Subspace },
    Zero,
}

impl IdealNode {
    /// Level node with the gluing rule applied.
    pub fn level(ext: &ExtensionPair, n: u32, space: Subspace) -> IdealNode {
        if space.is_zero() {
            IdealNode::Level {
                n: n + 1,
                space: Subspace::full(ext),
            }
        } else {
            IdealNode::Level { n, space }
        }
    }

    /// `⟨Xⁿ⟩_V`.
    pub fn power(ext: &ExtensionPair, n: u32) -> IdealNode {
        IdealNode::Level {
            n,
            space: Subspace::full(ext),
        }
    }

    pub fn level_number(&self) -> Option<u32> {
        match self {
            IdealNode::Level { n, .. } => Some(*n),
            _ => None,
        }
    }

    /// `R`, `<X^n>_V`, `(n,<w>)` or `<0>`.
    pub fn label(&self, ext: &ExtensionPair) -> String {
        match self {
            IdealNode::Top => "R".into(),
            IdealNode::Zero => "<0>".into(),
            IdealNode::Level { n, space } if space.is_full() => {
                if *n == 1 {
                    "<X>_V".into()
                } else {
                    format!("<X^{n}>_V")
                }
            }
            IdealNode::Level { n, space } => format!("({n},{})", space.label(ext)),
        }
    }
}

/// Inclusion of glued nodes: lower level index means larger ideal.
pub fn node_leq(ext: &ExtensionPair, x: &IdealNode, y: &IdealNode) -> Result<bool> {
    Ok(match (x, y) {
        (IdealNode::Zero, _) | (_, IdealNode::Top) => true,
        (_, IdealNode::Zero) | (IdealNode::Top, _) => false,
        (IdealNode::Level { n, space: w }, IdealNode::Level { n: m, space: u }) => {
            n > m || (n == m && u.contains(w, ext)?)
        }
    })
}

/// Meet and join computed from the level rule, with no truncation.
pub fn meet_join(ext: &ExtensionPair, x: &IdealNode, y: &IdealNode) -> Result<(IdealNode, IdealNode)> {
    Ok(match (x, y) {
        (IdealNode::Top, o) | (o, IdealNode::Top) => (o.clone(), IdealNode::Top),
        (IdealNode::Zero, o) | (o, IdealNode::Zero) => (IdealNode::Zero, o.clone()),
        (IdealNode::Level { n, space: w }, IdealNode::Level { n: m, space: u }) => {
            if n == m {
                let meet = IdealNode::level(ext, *n, w.intersection(u, ext)?);
                let join = IdealNode::level(ext, *n, w.sum(u, ext)?);
                (meet, join)
            } else if n < m {
                (y.clone(), x.clone())
            } else {
                (x.clone(), y.clone())
            }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Ideals of the quotient by `X^τ`: everything at level `≥ τ` is the zero ideal.
    Quotient(u32),
    /// A window into the full lattice: nodes beyond the depth are dropped.
    Window(u32),
}

/// A finite piece of the ideal lattice together with its extension.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    ext: Arc<ExtensionPair>,
    truncation: Truncation,
    poset: FinitePoset<IdealNode>,
}

impl IdealLattice {
    fn build(ext: Arc<ExtensionPair>, truncation: Truncation, nodes: Vec<IdealNode>) -> Result<Self> {
        let e = ext.clone();
        let m: Vec<Vec<bool>> = nodes
            .iter()
            .map(|a| nodes.iter().map(|b| node_leq(&e, a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let poset = FinitePoset::from_matrix(nodes, m)?;
        Ok(IdealLattice { ext, truncation, poset })
    }

    pub fn ext(&self) -> &Arc<ExtensionPair> {
        &self.ext
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn poset(&self) -> &FinitePoset<IdealNode> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn index_of(&self, node: &IdealNode) -> Option<usize> {
        self.poset.nodes().iter().position(|n| n == node)
    }

    /// The same poset with display labels.
    pub fn labeled(&self) -> FinitePoset<String> {
        self.poset.map(|n| n.label(&self.ext))
    }

    fn truncate(&self, node: IdealNode) -> Option<IdealNode> {
        match (&node, self.truncation) {
            (IdealNode::Level { n, .. }, Truncation::Quotient(t)) if *n >= t => Some(IdealNode::Zero),
            (IdealNode::Level { n, .. }, Truncation::Window(d)) if *n > d => None,
            _ => Some(node),
        }
    }

    /// Meet and join of two nodes of this lattice.
    pub fn meet_join(&self, x: &IdealNode, y: &IdealNode) -> Result<(IdealNode, IdealNode)> {
        for v in [x, y] {
            if self.index_of(v).is_none() {
                return Err(Error::NodeMismatch(format!("{} is not a node of this lattice", v.label(&self.ext))));
            }
        }
        let (m, j) = meet_join(&self.ext, x, y)?;
        let m = self
            .truncate(m)
            .ok_or_else(|| Error::NodeMismatch("meet lies below the window".into()))?;
        let j = self.truncate(j).expect("joins never leave the window");
        Ok((m, j))
    }
}

/// `1 ⊕ (levels 1..τ-1 of AG(F,K), glued) ⊕ 1` for a finite extension.
pub fn predicted_ideal_lattice(ext: Arc<ExtensionPair>, tau: u32) -> Result<IdealLattice> {
    if tau == 0 {
        return Err(Error::Validation("depth must be at least 1".into()));
    }
    let spaces = all_subspaces(&ext)?;
    let mut nodes = vec![IdealNode::Top];
    for n in 1..tau {
        for w in &spaces {
            nodes.push(IdealNode::Level {
                n,
                space: w.clone(),
            });
        }
    }
    nodes.push(IdealNode::Zero);
    IdealLattice::build(ext, Truncation::Quotient(tau), nodes)
}

/// Largest number of nodes a generated sublattice may reach.
pub const SUBLATTICE_CAP: usize = 10_000;

/// Closure of `generators` under meet and join, keeping levels up to `depth`.
pub fn sublattice_generated(ext: Arc<ExtensionPair>, generators: &[IdealNode], depth: u32) -> Result<IdealLattice> {
    let mut found: BTreeSet<IdealNode> = BTreeSet::new();
    for g in generators {
        if let IdealNode::Level { n, space } = g {
            if *n > depth {
                return Err(Error::DepthExceeded { level: *n, depth });
            }
            if *n == 0 || space.ambient() != ext.degree() || space.is_zero() {
                return Err(Error::NodeMismatch(format!("{} is not a level node over {}", g.label(&ext), ext.literal())));
            }
        }
        found.insert(g.clone());
    }
    loop {
        let current: Vec<IdealNode> = found.iter().cloned().collect();
        let before = found.len();
        for (i, x) in current.iter().enumerate() {
            for y in &current[i + 1..] {
                let (m, j) = meet_join(&ext, x, y)?;
                for v in [m, j] {
                    if v.level_number().is_none_or(|n| n <= depth) {
                        found.insert(v);
                    }
                }
            }
        }
        if found.len() > SUBLATTICE_CAP {
            return Err(Error::TooLarge {
                size: found.len() as u128,
                bound: SUBLATTICE_CAP as u128,
            });
        }
        if found.len() == before {
            break;
        }
    }
    IdealLattice::build(ext, Truncation::Window(depth), found.into_iter().collect())
}
