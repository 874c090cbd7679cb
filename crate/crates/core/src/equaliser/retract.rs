//! The stable-domain pipeline under retract hypotheses.
//!
//! When `im g` and `im h` are retracts of `J = ⟨im g ∪ im h⟩`, each strict
//! step of the stable-domain chain lowers the rank, so the chain stabilizes
//! within `|Σ|` steps; the same holds for the stable image of `φ`. The
//! hypotheses are supplied as explicit retraction maps and verified here.

use super::{check_pair, finish, injective_pipeline, EqualiserReport, Mode, Outcome, Provenance, SolveOptions};
use crate::error::{Error, Result};
use crate::morphisms::Homomorphism;
use crate::stallings::SubgroupGraph;

/// Whether `rho` maps the whole of `F(Δ)` into `h` and fixes `h` pointwise.
pub fn verify_retraction(rho: &Homomorphism, h: &SubgroupGraph) -> Result<bool> {
    verify_retraction_within(rho, &SubgroupGraph::whole(h.alphabet()), h)
}

/// Whether `rho` maps `ambient` into `h` and fixes `h` pointwise, i.e.
/// restricts to a retraction of `ambient` onto `h`.
pub fn verify_retraction_within(
    rho: &Homomorphism,
    ambient: &SubgroupGraph,
    h: &SubgroupGraph,
) -> Result<bool> {
    if !rho.is_endomorphism() || rho.domain() != h.alphabet() || ambient.alphabet() != h.alphabet() {
        return Err(Error::AlphabetMismatch(
            "retraction, ambient group and subgroup must share one alphabet".into(),
        ));
    }
    let maps_into = ambient.basis().words.iter().all(|w| h.member(&rho.apply(w)));
    let fixes = h.basis().words.iter().all(|w| rho.apply(w) == *w);
    Ok(maps_into && fixes)
}

pub(crate) fn retract_outcome(
    g: &Homomorphism,
    h: &Homomorphism,
    rho_g: &Homomorphism,
    rho_h: &Homomorphism,
    opts: &SolveOptions,
) -> Result<Outcome> {
    check_pair(g, h)?;
    if !g.is_injective() || !h.is_injective() {
        return Err(Error::HypothesisNotVerified(
            "both maps must be injective".into(),
        ));
    }
    let mut generators = g.images().to_vec();
    generators.extend_from_slice(h.images());
    let join = SubgroupGraph::fold(g.codomain(), &generators);
    for (rho, image, name) in [(rho_g, g.image(), "first"), (rho_h, h.image(), "second")] {
        if rho.domain() != g.codomain() || rho.codomain() != g.codomain() {
            return Err(Error::HypothesisNotVerified(format!(
                "retraction for the {name} map is not an endomorphism of the codomain"
            )));
        }
        if !verify_retraction_within(rho, &join, &image)? {
            return Err(Error::HypothesisNotVerified(format!(
                "supplied map is not a retraction of the join onto the image of the {name} map"
            )));
        }
    }
    if g == h {
        return Ok(Outcome {
            exact: true,
            words: g.domain().generators(),
            path: vec![Provenance::RetractPipeline, Provenance::IdenticalMaps],
            radius: None,
            rank_bound: None,
        });
    }
    Ok(injective_pipeline(g, h, opts, Mode::Retract)?.within(Provenance::RetractPipeline))
}

/// Computes `Eq(g, h)` for injective `g, h` whose images are retracts of
/// their join, given retractions `rho_g`, `rho_h` of the codomain.
pub fn solve_retract_pipeline(
    g: &Homomorphism,
    h: &Homomorphism,
    rho_g: &Homomorphism,
    rho_h: &Homomorphism,
    opts: &SolveOptions,
) -> Result<EqualiserReport> {
    let outcome = retract_outcome(g, h, rho_g, rho_h, opts)?;
    finish(&[g.clone(), h.clone()], outcome)
}
