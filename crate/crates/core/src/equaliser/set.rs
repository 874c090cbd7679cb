//! Equalisers of finite sets of maps: `Eq(S)` is the intersection of the
//! pairwise equalisers with one distinguished map.

use super::retract::retract_outcome;
use super::{classify_rank2, equaliser_ball, finish, pair_outcome, EqualiserReport, Outcome, Provenance, SolveOptions};
use crate::error::{Error, Result};
use crate::morphisms::{Homomorphism, MapSet};
use crate::stallings::SubgroupGraph;
use crate::words::Alphabet;

/// Intersects pairwise outcomes. The result is exact only if every input is.
pub(crate) fn intersect_outcomes(domain: &Alphabet, outcomes: Vec<Outcome>) -> Result<Outcome> {
    let mut iter = outcomes.into_iter();
    let first = iter.next().expect("at least one outcome");
    let rest: Vec<Outcome> = iter.collect();
    if rest.is_empty() {
        return Ok(first);
    }
    let mut graph = SubgroupGraph::fold(domain, &first.words);
    let mut exact = first.exact;
    let mut radius = first.radius;
    let mut path = vec![Provenance::SetIntersection];
    path.extend(first.path);
    for o in rest {
        graph = graph.intersect(&SubgroupGraph::fold(domain, &o.words))?;
        exact &= o.exact;
        radius = radius.max(o.radius);
        for p in o.path {
            if !path.contains(&p) {
                path.push(p);
            }
        }
    }
    Ok(Outcome {
        exact,
        words: graph.basis().words.clone(),
        path,
        radius,
        rank_bound: None,
    })
}

/// Solves `Eq(S)`. `retractions[i]`, when present, supplies retractions
/// `(ρ₀, ρᵢ₊₁)` for the pair formed by the first map and map `i + 1`,
/// routing that pair through the retract pipeline.
pub fn solve_set(
    set: &MapSet,
    retractions: &[Option<(Homomorphism, Homomorphism)>],
    opts: &SolveOptions,
) -> Result<EqualiserReport> {
    let maps = set.maps();
    let hinted = retractions.iter().any(Option::is_some);
    if !retractions.is_empty() && retractions.len() != maps.len() - 1 {
        return Err(Error::InvalidMapSet(format!(
            "{} retraction hints for {} pairs",
            retractions.len(),
            maps.len() - 1
        )));
    }
    if !hinted && set.domain().len() == 2 {
        return classify_rank2(set, opts);
    }
    let distinguished = if hinted {
        Some(0)
    } else {
        maps.iter().position(Homomorphism::is_injective)
    };
    let Some(d) = distinguished else {
        let words = equaliser_ball(maps, opts.radius);
        let words = SubgroupGraph::fold(set.domain(), &words).basis().words.clone();
        let outcome = Outcome {
            exact: false,
            words,
            path: vec![Provenance::BoundedEnumeration],
            radius: Some(opts.radius),
            rank_bound: None,
        };
        return finish(maps, outcome);
    };
    let mut outcomes = Vec::new();
    for (i, f) in maps.iter().enumerate() {
        if i == d {
            continue;
        }
        let hint = if hinted { retractions[i - 1].as_ref() } else { None };
        outcomes.push(match hint {
            Some((rho_0, rho_i)) => retract_outcome(&maps[d], f, rho_0, rho_i, opts)?,
            None => pair_outcome(&maps[d], f, opts)?,
        });
    }
    let mut combined = intersect_outcomes(set.domain(), outcomes)?;
    if maps.len() > 2 {
        combined.rank_bound = None;
    }
    finish(maps, combined)
}
