//! Equalisers of sets of maps out of a free group of rank two.
//!
//! With at least two distinct maps `F(a, b) → F(Δ)`:
//! * all injective: `Eq(S)` has rank at most two;
//! * some but not all injective: `Eq(S)` is cyclic or trivial;
//! * none injective: every map has cyclic image, so `[a, b]` lies in every
//!   kernel and `Eq(S)` is a non-trivial normal subgroup of infinite index,
//!   hence not finitely generated.

use super::cyclic::cyclic_outcome;
use super::set::intersect_outcomes;
use super::{check_sound, finish, pair_outcome, EqualiserReport, Outcome, Provenance, SolveOptions, Verdict};
use crate::error::{Error, Result};
use crate::morphisms::MapSet;
use crate::words::Word;

pub fn classify_rank2(set: &MapSet, opts: &SolveOptions) -> Result<EqualiserReport> {
    if set.domain().len() != 2 {
        return Err(Error::WrongSolver(format!(
            "domain has rank {}, not two",
            set.domain().len()
        )));
    }
    let maps = set.maps();
    let injective: Vec<bool> = maps.iter().map(|f| f.is_injective()).collect();

    if injective.iter().all(|&b| b) {
        let outcomes = maps[1..]
            .iter()
            .map(|f| pair_outcome(&maps[0], f, opts))
            .collect::<Result<Vec<_>>>()?;
        let combined = intersect_outcomes(set.domain(), outcomes)?
            .within(Provenance::RankTwoClassifier)
            .bounded(Some(2));
        return finish(maps, combined);
    }

    if let Some(d) = injective.iter().position(|&b| b) {
        let g = &maps[d];
        let other = injective.iter().position(|&b| !b).unwrap();
        let pair = cyclic_outcome(g, &maps[other])?;
        let words = match pair.words.first() {
            Some(w) if set.equalises(w) => vec![w.clone()],
            _ => Vec::new(),
        };
        let outcome = Outcome {
            exact: true,
            words,
            path: pair.path,
            radius: None,
            rank_bound: Some(1),
        };
        return finish(maps, outcome.within(Provenance::RankTwoClassifier));
    }

    let witness = Word::commutator(&Word::generator(0), &Word::generator(1));
    check_sound(maps, std::slice::from_ref(&witness))?;
    Ok(EqualiserReport {
        verdict: Verdict::NotFinitelyGenerated,
        basis: Vec::new(),
        witnesses: vec![witness],
        provenance: vec![Provenance::RankTwoClassifier, Provenance::CommutatorWitness],
        radius: None,
        rank_bound: None,
    })
}
