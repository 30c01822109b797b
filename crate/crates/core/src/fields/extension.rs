use super::linalg::{self, FieldOps};
use super::{FieldDescriptor, FieldElement, FieldKind, Scalar};
use crate::error::{Error, Result};

/// A field extension `K ⊆ F` together with a `K`-basis of `F`.
///
/// Both fields share the same base (a prime field or the rationals), so `F`
/// is a base-vector space of dimension `deg F` and `K` sits inside it as the
/// base-span of the powers of the embedded generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionPair {
    small: FieldDescriptor,
    large: FieldDescriptor,
    embedding: FieldElement,
    /// Powers `e^0 .. e^(deg K - 1)` of the embedded generator.
    generator_powers: Vec<FieldElement>,
    basis: Vec<FieldElement>,
    /// Inverse of the base matrix whose columns are `e^i * b_j` (column `j * deg K + i`).
    coordinate_map: Vec<Vec<Scalar>>,
}

impl ExtensionPair {
    pub fn new(small: FieldDescriptor, large: FieldDescriptor) -> Result<Self> {
        if small.base() != large.base() {
            return Err(Error::NotAnExtension(format!(
                "{small} and {large} have different characteristic"
            )));
        }
        let m = small.degree();
        let n = large.degree();
        let embedding = if small == large {
            large.generator()
        } else if m == 1 {
            large.zero()
        } else if small.kind() == FieldKind::NumberField {
            return Err(Error::NotAnExtension(
                "number fields are only supported over q".into(),
            ));
        } else if n % m != 0 {
            return Err(Error::NotAnExtension(format!(
                "degree {m} does not divide degree {n}"
            )));
        } else {
            Self::smallest_root(&small, &large)?
        };

        let mut generator_powers = vec![large.one()];
        for i in 1..m {
            generator_powers.push(large.mul(&generator_powers[i - 1], &embedding));
        }

        let base = large.base().clone();
        let mut basis = Vec::new();
        let mut columns: Vec<Vec<Scalar>> = Vec::new();
        let gen = large.generator();
        let mut candidate = large.one();
        for _ in 0..n {
            let block: Vec<Vec<Scalar>> = generator_powers
                .iter()
                .map(|e| large.mul(e, &candidate).coeffs().to_vec())
                .collect();
            let mut trial = columns.clone();
            trial.extend(block.iter().cloned());
            if linalg::rank(&base, &trial) == trial.len() {
                columns = trial;
                basis.push(candidate.clone());
            }
            if columns.len() == n {
                break;
            }
            candidate = large.mul(&candidate, &gen);
        }
        debug_assert_eq!(columns.len(), n);
        // columns were collected as rows; transpose into the coordinate matrix
        let matrix: Vec<Vec<Scalar>> = (0..n)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        let coordinate_map = linalg::invert(&base, &matrix)
            .ok_or_else(|| Error::NotAnExtension("basis construction failed".into()))?;

        Ok(ExtensionPair {
            small,
            large,
            embedding,
            generator_powers,
            basis,
            coordinate_map,
        })
    }

    fn smallest_root(small: &FieldDescriptor, large: &FieldDescriptor) -> Result<FieldElement> {
        let modulus = small.modulus();
        for x in large.elements()? {
            let mut acc = large.zero();
            for c in modulus.iter().rev() {
                acc = large.add(&large.mul(&acc, &x), &large.from_base_coeffs(vec![c.clone()]));
            }
            if large.is_zero(&acc) {
                return Ok(x);
            }
        }
        Err(Error::NotAnExtension(format!("{small} does not embed in {large}")))
    }

    /// The subfield `K`.
    pub fn small(&self) -> &FieldDescriptor {
        &self.small
    }

    /// The field `F`.
    pub fn large(&self) -> &FieldDescriptor {
        &self.large
    }

    pub fn embedding(&self) -> &FieldElement {
        &self.embedding
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// `[F : K]`.
    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.degree() == 1
    }

    /// Image of a `K`-element in `F`.
    pub fn embed(&self, k: &FieldElement) -> FieldElement {
        let f = &self.large;
        k.coeffs()
            .iter()
            .zip(&self.generator_powers)
            .fold(f.zero(), |acc, (c, e)| {
                f.add(&acc, &f.mul(&f.from_base_coeffs(vec![c.clone()]), e))
            })
    }

    /// Coordinates of `x` with respect to [`basis`](Self::basis), as `K`-elements.
    pub fn coordinates(&self, x: &FieldElement) -> Vec<FieldElement> {
        let m = self.small.degree();
        let flat = linalg::mat_vec(self.large.base(), &self.coordinate_map, x.coeffs());
        flat.chunks(m)
            .map(|chunk| self.small.from_base_coeffs(chunk.to_vec()))
            .collect()
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn combine(&self, coords: &[FieldElement]) -> FieldElement {
        let f = &self.large;
        coords
            .iter()
            .zip(&self.basis)
            .fold(f.zero(), |acc, (c, b)| f.add(&acc, &f.mul(&self.embed(c), b)))
    }

    /// Whether `x ∈ F` lies in the embedded copy of `K`.
    pub fn contains(&self, x: &FieldElement) -> bool {
        self.coordinates(x)[1..].iter().all(|c| self.small.is_zero(c))
    }

    /// The `K`-element whose image is `x`, when `x ∈ K`.
    pub fn restrict(&self, x: &FieldElement) -> Option<FieldElement> {
        let coords = self.coordinates(x);
        coords[1..]
            .iter()
            .all(|c| self.small.is_zero(c))
            .then(|| coords[0].clone())
    }

    /// Whether `xK♯ = yK♯` for nonzero `x`, `y`.
    pub fn same_coset(&self, x: &FieldElement, y: &FieldElement) -> bool {
        match self.large.inv(y) {
            Some(yi) => self.contains(&self.large.mul(x, &yi)),
            None => false,
        }
    }

    /// Embedded elements of a finite `K`.
    pub fn small_elements(&self) -> Result<Vec<FieldElement>> {
        let mut out: Vec<FieldElement> = self.small.elements()?.iter().map(|k| self.embed(k)).collect();
        out.sort();
        Ok(out)
    }

    /// One representative per coset of `F♯/K♯`: the least element of each coset.
    pub fn coset_representatives(&self) -> Result<Vec<FieldElement>> {
        let f = &self.large;
        let units: Vec<FieldElement> = self
            .small_elements()?
            .into_iter()
            .filter(|k| !f.is_zero(k))
            .collect();
        let mut reps: Vec<FieldElement> = Vec::new();
        for x in f.nonzero_elements()? {
            let least = units.iter().map(|k| f.mul(&x, k)).min().expect("K has units");
            if least == x {
                reps.push(x);
            }
        }
        Ok(reps)
    }

    /// Literal form `F/K`.
    pub fn literal(&self) -> String {
        format!("{}/{}", self.large.literal(), self.small.literal())
    }
}
