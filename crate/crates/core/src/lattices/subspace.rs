use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fields::linalg::{self, FieldOps};
use crate::fields::{ExtensionPair, FieldElement};

/// A `K`-subspace of `F`, stored as reduced echelon rows of coordinates over `K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<FieldElement>>,
}

impl Subspace {
    /// Span of coordinate vectors.
    pub fn span(ext: &ExtensionPair, vectors: &[Vec<FieldElement>]) -> Subspace {
        let ambient = ext.degree();
        let (rows, _) = linalg::rref(ext.small(), vectors);
        Subspace { ambient, rows }
    }

    /// `K`-span of elements of `F`.
    pub fn span_elements(ext: &ExtensionPair, elems: &[FieldElement]) -> Subspace {
        let coords: Vec<Vec<FieldElement>> = elems.iter().map(|x| ext.coordinates(x)).collect();
        Self::span(ext, &coords)
    }

    pub fn full(ext: &ExtensionPair) -> Subspace {
        let k = ext.small();
        let n = ext.degree();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect())
            .collect();
        Subspace { ambient: n, rows }
    }

    pub fn zero(ext: &ExtensionPair) -> Subspace {
        Subspace {
            ambient: ext.degree(),
            rows: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::NodeMismatch(format!(
                "subspaces of dimension {} and {} spaces",
                self.ambient, other.ambient
            )))
        }
    }

    pub fn sum(&self, other: &Subspace, ext: &ExtensionPair) -> Result<Subspace> {
        self.same_ambient(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Subspace::span(ext, &rows))
    }

    /// Intersection by the Zassenhaus construction.
    pub fn intersection(&self, other: &Subspace, ext: &ExtensionPair) -> Result<Subspace> {
        self.same_ambient(other)?;
        let k = ext.small();
        let n = self.ambient;
        let mut block: Vec<Vec<FieldElement>> = self
            .rows
            .iter()
            .map(|r| r.iter().chain(r.iter()).cloned().collect())
            .collect();
        block.extend(
            other
                .rows
                .iter()
                .map(|r| r.iter().cloned().chain((0..n).map(|_| k.zero())).collect()),
        );
        let (red, _) = linalg::rref(k, &block);
        let rows: Vec<Vec<FieldElement>> = red
            .into_iter()
            .filter(|r| r[..n].iter().all(|x| k.is_zero(x)))
            .map(|r| r[n..].to_vec())
            .collect();
        Ok(Subspace::span(ext, &rows))
    }

    pub fn contains(&self, other: &Subspace, ext: &ExtensionPair) -> Result<bool> {
        Ok(self.sum(other, ext)?.dimension() == self.dimension())
    }

    /// Basis rows as elements of `F`.
    pub fn basis_elements(&self, ext: &ExtensionPair) -> Vec<FieldElement> {
        self.rows.iter().map(|r| ext.combine(r)).collect()
    }

    /// `<b1,b2,...>` with the echelon basis written as elements of `F`.
    pub fn label(&self, ext: &ExtensionPair) -> String {
        let f = ext.large();
        let parts: Vec<String> = self.basis_elements(ext).iter().map(|x| f.format(x)).collect();
        format!("<{}>", parts.join(","))
    }
}

/// All nonzero `K`-subspaces of `F` for a finite `K`, sorted by dimension then echelon form.
pub fn all_subspaces(ext: &ExtensionPair) -> Result<Vec<Subspace>> {
    if !ext.small().is_finite() {
        return Err(Error::InfiniteLattice(format!(
            "{} has infinitely many subspaces",
            ext.literal()
        )));
    }
    let k_elems = ext.small().elements()?;
    let n = ext.degree();
    let k = ext.small();
    // every coordinate vector, then closure of lines under sums
    let mut vectors: Vec<Vec<FieldElement>> = vec![Vec::new()];
    for _ in 0..n {
        vectors = vectors
            .into_iter()
            .flat_map(|v| {
                k_elems.iter().map(move |c| {
                    let mut w = v.clone();
                    w.push(c.clone());
                    w
                })
            })
            .collect();
    }
    let mut found: BTreeSet<Subspace> = vectors
        .iter()
        .filter(|v| v.iter().any(|x| !k.is_zero(x)))
        .map(|v| Subspace::span(ext, std::slice::from_ref(v)))
        .collect();
    let lines: Vec<Subspace> = found.iter().cloned().collect();
    loop {
        let current: Vec<Subspace> = found.iter().cloned().collect();
        let before = found.len();
        for s in &current {
            for l in &lines {
                found.insert(s.sum(l, ext)?);
            }
        }
        if found.len() == before {
            break;
        }
    }
    let mut out: Vec<Subspace> = found.into_iter().collect();
    out.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then_with(|| a.cmp(b)));
    Ok(out)
}
