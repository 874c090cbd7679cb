//! Checks that a pair of maps is induced from another pair.

use crate::error::{Error, Result};
use crate::morphisms::Homomorphism;

/// Whether `(g, h)` is induced from `(g2, h2)` along injective maps
/// `iota: F(Σ) → F(Σ')` and `tau: F(Δ) → F(Δ')`, meaning the squares
/// `g2∘iota = tau∘g` and `h2∘iota = tau∘h` commute.
///
/// Fails with `AlphabetMismatch` when the alphabets do not line up and with
/// `HypothesisNotVerified` when `iota` or `tau` is not injective.
pub fn verify_induced_pair(
    iota: &Homomorphism,
    tau: &Homomorphism,
    g: &Homomorphism,
    h: &Homomorphism,
    g2: &Homomorphism,
    h2: &Homomorphism,
) -> Result<bool> {
    let lined_up = g.domain() == h.domain()
        && g.codomain() == h.codomain()
        && g2.domain() == h2.domain()
        && g2.codomain() == h2.codomain()
        && iota.domain() == g.domain()
        && iota.codomain() == g2.domain()
        && tau.domain() == g.codomain()
        && tau.codomain() == g2.codomain();
    if !lined_up {
        return Err(Error::AlphabetMismatch(
            "expected iota: F(Σ) → F(Σ'), tau: F(Δ) → F(Δ'), g, h: F(Σ) → F(Δ), g', h': F(Σ') → F(Δ')".into(),
        ));
    }
    if !iota.is_injective() {
        return Err(Error::HypothesisNotVerified("iota is not injective".into()));
    }
    if !tau.is_injective() {
        return Err(Error::HypothesisNotVerified("tau is not injective".into()));
    }
    Ok(Homomorphism::compose(g2, iota)? == Homomorphism::compose(tau, g)?
        && Homomorphism::compose(h2, iota)? == Homomorphism::compose(tau, h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::fixtures::induced_pair_data;
    use crate::words::Word;

    #[test]
    fn known_pair_is_induced() {
        let d = induced_pair_data();
        assert!(verify_induced_pair(&d.iota, &d.tau, &d.g, &d.h, &d.g2, &d.h2).unwrap());
    }

    #[test]
    fn perturbed_pair_is_not_induced() {
        let d = induced_pair_data();
        let mut images = d.g2.images().to_vec();
        images[1] = Word::generator(1);
        let g2 = Homomorphism::new(d.g2.domain().clone(), d.g2.codomain().clone(), images).unwrap();
        assert!(!verify_induced_pair(&d.iota, &d.tau, &d.g, &d.h, &g2, &d.h2).unwrap());
    }

    #[test]
    fn hypotheses_are_checked() {
        let d = induced_pair_data();
        let mut images = d.iota.images().to_vec();
        images[2] = Word::identity();
        let iota = Homomorphism::new(d.iota.domain().clone(), d.iota.codomain().clone(), images).unwrap();
        assert!(matches!(
            verify_induced_pair(&iota, &d.tau, &d.g, &d.h, &d.g2, &d.h2),
            Err(Error::HypothesisNotVerified(_))
        ));
        assert!(matches!(
            verify_induced_pair(&d.tau, &d.iota, &d.g, &d.h, &d.g2, &d.h2),
            Err(Error::AlphabetMismatch(_))
        ));
    }
}
