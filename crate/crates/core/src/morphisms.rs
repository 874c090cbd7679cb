//! Homomorphisms between free groups, given by generator images.

use crate::error::{Error, Result};
use crate::stallings::SubgroupGraph;
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Word>,
}

impl Homomorphism {
    pub fn new(domain: Alphabet, codomain: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::AlphabetMismatch(format!(
                "{} images for {} domain generators",
                images.len(),
                domain.len()
            )));
        }
        for w in &images {
            codomain.check(w)?;
        }
        Ok(Homomorphism {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        Homomorphism {
            domain: alphabet.clone(),
            codomain: alphabet.clone(),
            images: alphabet.generators(),
        }
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    /// Substitutes images and reduces. Panics if `w` uses a generator
    /// outside the domain; see [`Homomorphism::checked_apply`].
    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Word::identity();
        for l in w.letters() {
            let image = &self.images[l.gen()];
            if l.is_inverse() {
                out.append(&image.inverse());
            } else {
                out.append(image);
            }
        }
        out
    }

    pub fn checked_apply(&self, w: &Word) -> Result<Word> {
        self.domain.check(w)?;
        Ok(self.apply(w))
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &Homomorphism, inner: &Homomorphism) -> Result<Homomorphism> {
        if inner.codomain != outer.domain {
            return Err(Error::AlphabetMismatch(
                "codomain of the inner map is not the domain of the outer map".into(),
            ));
        }
        Ok(Homomorphism {
            domain: inner.domain.clone(),
            codomain: outer.codomain.clone(),
            images: inner.images.iter().map(|w| outer.apply(w)).collect(),
        })
    }

    /// The image subgroup, folded from the generator images.
    pub fn image(&self) -> SubgroupGraph {
        SubgroupGraph::fold(&self.codomain, &self.images)
    }

    /// The image of a subgroup of the domain.
    pub fn image_of(&self, g: &SubgroupGraph) -> SubgroupGraph {
        let words: Vec<Word> = g.basis().words.iter().map(|w| self.apply(w)).collect();
        SubgroupGraph::fold(&self.codomain, &words)
    }

    /// Free groups are Hopfian, so the map is injective exactly when its
    /// image has rank equal to the number of domain generators.
    pub fn is_injective(&self) -> bool {
        self.image().rank() == self.domain.len()
    }

    /// `self` restricted to `k`, as a map out of a fresh free group on the
    /// basis of `k`, together with that basis (in domain words).
    pub fn restrict(&self, k: &SubgroupGraph) -> Result<(Homomorphism, Vec<Word>)> {
        if k.alphabet() != &self.domain {
            return Err(Error::AlphabetMismatch(
                "subgroup is not over the domain".into(),
            ));
        }
        let basis = k.basis().words.clone();
        let restricted = Homomorphism {
            domain: Alphabet::fresh(basis.len()),
            codomain: self.codomain.clone(),
            images: basis.iter().map(|w| self.apply(w)).collect(),
        };
        Ok((restricted, basis))
    }

    /// Substitution of a basis: the map from a fresh free group on
    /// `basis.len()` generators sending generator `i` to `basis[i]`.
    pub fn from_basis(target: &Alphabet, basis: &[Word]) -> Homomorphism {
        Homomorphism {
            domain: Alphabet::fresh(basis.len()),
            codomain: target.clone(),
            images: basis.to_vec(),
        }
    }
}

/// A finite list of pairwise distinct maps sharing domain and codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSet {
    maps: Vec<Homomorphism>,
}

impl MapSet {
    pub fn new(maps: Vec<Homomorphism>) -> Result<Self> {
        if maps.len() < 2 {
            return Err(Error::InvalidMapSet("need at least two maps".into()));
        }
        let first = &maps[0];
        for f in &maps[1..] {
            if f.domain != first.domain || f.codomain != first.codomain {
                return Err(Error::InvalidMapSet(
                    "maps do not share domain and codomain".into(),
                ));
            }
        }
        for i in 0..maps.len() {
            for j in i + 1..maps.len() {
                if maps[i].images == maps[j].images {
                    return Err(Error::InvalidMapSet(format!(
                        "maps {} and {} have identical images",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(MapSet { maps })
    }

    pub fn maps(&self) -> &[Homomorphism] {
        &self.maps
    }

    pub fn domain(&self) -> &Alphabet {
        &self.maps[0].domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.maps[0].codomain
    }

    /// Whether all maps agree on `w`.
    pub fn equalises(&self, w: &Word) -> bool {
        let first = self.maps[0].apply(w);
        self.maps[1..].iter().all(|f| f.apply(w) == first)
    }
}
