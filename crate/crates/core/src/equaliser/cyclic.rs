//! Pairs where one map is injective and the other has cyclic image.

use super::{check_pair, finish, EqualiserReport, Outcome, Provenance};
use crate::error::{Error, Result};
use crate::morphisms::Homomorphism;

/// `Eq(g, h) ≤ C = g⁻¹(im h)`, which is cyclic. If `C = ⟨w⟩` then an
/// equalised `wⁿ` gives `g(w)ⁿ = h(w)ⁿ`, and since roots are unique in free
/// groups, `g(w) = h(w)` or `n = 0`.
pub(crate) fn cyclic_outcome(g: &Homomorphism, h: &Homomorphism) -> Result<Outcome> {
    let c = h.image().preimage(g)?;
    let words = match c.basis().words.as_slice() {
        [] => Vec::new(),
        [w] if g.apply(w) == h.apply(w) => vec![w.clone()],
        [_] => Vec::new(),
        _ => {
            return Err(Error::InternalContradiction(
                "preimage of a cyclic subgroup under an injective map is not cyclic".into(),
            ))
        }
    };
    Ok(Outcome {
        exact: true,
        words,
        path: vec![Provenance::CyclicImage, Provenance::UniqueRoots],
        radius: None,
        rank_bound: Some(1),
    })
}

/// Exact solver for an injective `g` and an `h` whose image has rank at
/// most one.
pub fn solve_cyclic_case(g: &Homomorphism, h: &Homomorphism) -> Result<EqualiserReport> {
    check_pair(g, h)?;
    if !g.is_injective() {
        return Err(Error::WrongSolver("the first map is not injective".into()));
    }
    if h.image().rank() > 1 {
        return Err(Error::WrongSolver(
            "the second map does not have cyclic or trivial image".into(),
        ));
    }
    finish(&[g.clone(), h.clone()], cyclic_outcome(g, h)?)
}
