use super::FiniteGroup;
use crate::error::{Error, Result};

/// A homomorphism between two finite groups, stored as its full image table.
#[derive(Clone, Debug)]
pub struct GroupHom {
    domain: FiniteGroup,
    codomain: FiniteGroup,
    image: Vec<usize>,
}

impl GroupHom {
    /// Builds the map and verifies it on all pairs of domain elements.
    pub fn new(domain: &FiniteGroup, codomain: &FiniteGroup, image: Vec<usize>) -> Result<Self> {
        let h = Self::new_unchecked(domain, codomain, image)?;
        if !h.is_homomorphism() {
            return Err(Error::Invalid("map does not respect multiplication".into()));
        }
        Ok(h)
    }

    /// Only checks the shape of the table.
    pub fn new_unchecked(
        domain: &FiniteGroup,
        codomain: &FiniteGroup,
        image: Vec<usize>,
    ) -> Result<Self> {
        if image.len() != domain.order() || image.iter().any(|&y| y >= codomain.order()) {
            return Err(Error::DimensionMismatch(format!(
                "image table of length {} for domain of order {}",
                image.len(),
                domain.order()
            )));
        }
        Ok(GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            image,
        })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            image: (0..g.order()).collect(),
        }
    }

    pub fn domain(&self) -> &FiniteGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroup {
        &self.codomain
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.image
    }

    pub fn is_homomorphism(&self) -> bool {
        let (d, c) = (&self.domain, &self.codomain);
        (0..d.order()).all(|x| {
            (0..d.order()).all(|y| self.image[d.mul(x, y)] == c.mul(self.image[x], self.image[y]))
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.codomain != other.domain {
            return Err(Error::DimensionMismatch("maps are not composable".into()));
        }
        Ok(GroupHom {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            image: self.image.iter().map(|&y| other.image[y]).collect(),
        })
    }

    pub fn kernel_order(&self) -> usize {
        self.image.iter().filter(|&&y| y == 0).count()
    }
}
