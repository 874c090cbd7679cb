//! Equalisers `Eq(g, h) = {x : g(x) = h(x)}` and their set versions.
//!
//! Exact answers come from solvers that carry their own completeness
//! argument: letter-for-letter maps, the cyclic-image solver (unique roots),
//! and the stable-domain pipeline when `φ` restricted to its stable image is
//! the identity or a signed letter permutation. Everything else is a sound
//! candidate: every reported word is checked to be equalised, but the
//! reported subgroup may be smaller than the true equaliser.

mod cyclic;
mod rank2;
mod retract;
mod set;

pub use cyclic::solve_cyclic_case;
pub use rank2::classify_rank2;
pub use retract::{solve_retract_pipeline, verify_retraction, verify_retraction_within};
pub use set::solve_set;

use crate::error::{Error, Result};
use crate::morphisms::Homomorphism;
use crate::stable_domain::{acts_as_automorphism, build_phi, sd_iterate, stable_image};
use crate::stallings::SubgroupGraph;
use crate::words::{Alphabet, Letter, Word};

pub const DEFAULT_RADIUS: usize = 8;

/// Cap on distinct stable-domain iterates used inside the solvers when no
/// termination bound is known. Chains such as `⟨x, y^(2^i)⟩` grow
/// exponentially, so this stays small.
pub const DEFAULT_SOLVER_MAX_ITER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub radius: usize,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            radius: DEFAULT_RADIUS,
            max_iter: DEFAULT_SOLVER_MAX_ITER,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ExactBasis,
    SoundCandidate,
    NotFinitelyGenerated,
    Trivial,
    WholeGroup,
}

impl Verdict {
    pub fn code(self) -> &'static str {
        match self {
            Verdict::ExactBasis => "exact-basis",
            Verdict::SoundCandidate => "sound-candidate",
            Verdict::NotFinitelyGenerated => "not-finitely-generated",
            Verdict::Trivial => "trivial",
            Verdict::WholeGroup => "whole-group",
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Verdict::ExactBasis | Verdict::Trivial | Verdict::WholeGroup)
    }
}

/// One step of the route a report took, outermost first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    RankTwoClassifier,
    RetractPipeline,
    SetIntersection,
    IdenticalMaps,
    LetterwiseMaps,
    CyclicImage,
    UniqueRoots,
    CommutatorWitness,
    EqualImages,
    StableDomain,
    StableImageIdentity,
    StableImageLetterwise,
    FixedPointSearch,
    BoundedEnumeration,
}

impl Provenance {
    pub fn code(self) -> &'static str {
        match self {
            Provenance::RankTwoClassifier => "rank-two-classifier",
            Provenance::RetractPipeline => "retract-pipeline",
            Provenance::SetIntersection => "set-intersection",
            Provenance::IdenticalMaps => "identical-maps",
            Provenance::LetterwiseMaps => "letterwise-maps",
            Provenance::CyclicImage => "cyclic-image",
            Provenance::UniqueRoots => "unique-roots",
            Provenance::CommutatorWitness => "commutator-witness",
            Provenance::EqualImages => "equal-images",
            Provenance::StableDomain => "stable-domain",
            Provenance::StableImageIdentity => "stable-image-identity",
            Provenance::StableImageLetterwise => "stable-image-letterwise",
            Provenance::FixedPointSearch => "bounded-fixed-point-search",
            Provenance::BoundedEnumeration => "bounded-enumeration",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualiserReport {
    pub verdict: Verdict,
    /// Canonical basis of the reported subgroup (empty for trivial and
    /// not-finitely-generated verdicts).
    pub basis: Vec<Word>,
    pub witnesses: Vec<Word>,
    pub provenance: Vec<Provenance>,
    /// Enumeration radius, when a bounded search contributed.
    pub radius: Option<usize>,
    /// Proven upper bound on the rank of the true equaliser, when one
    /// applies; checked against the reported basis before emission.
    pub rank_bound: Option<usize>,
}

impl EqualiserReport {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The reported subgroup as a graph over `domain`.
    pub fn subgroup(&self, domain: &Alphabet) -> SubgroupGraph {
        SubgroupGraph::fold(domain, &self.basis)
    }
}

/// An intermediate result before normalisation and the soundness gate.
#[derive(Debug, Clone)]
pub(crate) struct Outcome {
    pub exact: bool,
    pub words: Vec<Word>,
    pub path: Vec<Provenance>,
    pub radius: Option<usize>,
    pub rank_bound: Option<usize>,
}

impl Outcome {
    fn exact(words: Vec<Word>, path: Vec<Provenance>) -> Self {
        Outcome {
            exact: true,
            words,
            path,
            radius: None,
            rank_bound: None,
        }
    }

    fn within(mut self, outer: Provenance) -> Self {
        self.path.insert(0, outer);
        self
    }

    fn bounded(mut self, bound: Option<usize>) -> Self {
        self.rank_bound = match (self.rank_bound, bound) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Normalises an outcome to a canonical basis and runs the soundness and
/// rank gates against every map in `maps`.
pub(crate) fn finish(maps: &[Homomorphism], outcome: Outcome) -> Result<EqualiserReport> {
    let domain = maps[0].domain();
    let graph = SubgroupGraph::fold(domain, &outcome.words);
    let basis = graph.basis().words.clone();
    check_sound(maps, &basis)?;
    if let Some(bound) = outcome.rank_bound {
        if basis.len() > bound {
            return Err(Error::InternalContradiction(format!(
                "equaliser rank {} exceeds the proven bound {bound}",
                basis.len()
            )));
        }
    }
    let verdict = if !outcome.exact {
        Verdict::SoundCandidate
    } else if basis.is_empty() {
        Verdict::Trivial
    } else if graph == SubgroupGraph::whole(domain) {
        Verdict::WholeGroup
    } else {
        Verdict::ExactBasis
    };
    Ok(EqualiserReport {
        verdict,
        basis,
        witnesses: Vec::new(),
        provenance: outcome.path,
        radius: outcome.radius,
        rank_bound: outcome.rank_bound,
    })
}

pub(crate) fn check_sound(maps: &[Homomorphism], words: &[Word]) -> Result<()> {
    for w in words {
        let first = maps[0].apply(w);
        if maps[1..].iter().any(|f| f.apply(w) != first) {
            return Err(Error::SoundnessViolation(format!(
                "reported word {w:?} is not equalised"
            )));
        }
    }
    Ok(())
}

pub(crate) fn check_pair(g: &Homomorphism, h: &Homomorphism) -> Result<()> {
    if g.domain() != h.domain() || g.codomain() != h.codomain() {
        return Err(Error::AlphabetMismatch(
            "maps do not share domain and codomain".into(),
        ));
    }
    Ok(())
}

/// Reduced words of length at most `radius` on which all `maps` agree, in
/// length-lexicographic order.
pub fn equaliser_ball(maps: &[Homomorphism], radius: usize) -> Vec<Word> {
    let rank = maps[0].domain().len();
    let letter_images: Vec<Vec<Word>> = maps
        .iter()
        .map(|f| {
            (0..2 * rank)
                .map(|slot| f.apply(&Word::reduce([Letter::from_slot(slot)])))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    // Depth-first over reduced words, carrying the image under every map.
    let mut stack: Vec<(Word, Vec<Word>)> = vec![(Word::identity(), vec![Word::identity(); maps.len()])];
    while let Some((w, images)) = stack.pop() {
        if images.iter().all(|x| *x == images[0]) {
            out.push(w.clone());
        }
        if w.len() == radius {
            continue;
        }
        for slot in (0..2 * rank).rev() {
            let l = Letter::from_slot(slot);
            if w.last() == Some(l.inverse()) {
                continue;
            }
            let mut next = w.clone();
            next.push(l);
            let next_images = images
                .iter()
                .zip(&letter_images)
                .map(|(x, li)| x.concat(&li[slot]))
                .collect();
            stack.push((next, next_images));
        }
    }
    out.sort();
    out
}

/// Exactly the reduced words `w` with `|w| ≤ radius` and `g(w) = h(w)`, in
/// length-lexicographic order.
pub fn enumerate_equaliser(g: &Homomorphism, h: &Homomorphism, radius: usize) -> Result<Vec<Word>> {
    check_pair(g, h)?;
    Ok(equaliser_ball(&[g.clone(), h.clone()], radius))
}

/// The subgroup generated by the fixed points of `phi` of length at most
/// `radius`. Every member is fixed; completeness is not claimed.
pub fn fixed_points_bounded(phi: &Homomorphism, radius: usize) -> Result<SubgroupGraph> {
    if !phi.is_endomorphism() {
        return Err(Error::AlphabetMismatch("not an endomorphism".into()));
    }
    let id = Homomorphism::identity(phi.domain());
    let words = equaliser_ball(&[phi.clone(), id], radius);
    Ok(SubgroupGraph::fold(phi.domain(), &words))
}

/// When both maps send each generator to a single letter, with distinct
/// generators going to distinct letters, images of reduced words stay
/// reduced letter for letter. The equaliser is then generated by the
/// generators on which the maps agree. `None` if the maps are not of this
/// shape.
pub(crate) fn letterwise_equaliser(g: &Homomorphism, h: &Homomorphism) -> Option<Vec<Word>> {
    fn letter_map(f: &Homomorphism) -> Option<Vec<Letter>> {
        let mut seen = vec![false; f.codomain().len()];
        f.images()
            .iter()
            .map(|w| match w.letters() {
                [l] if !std::mem::replace(&mut seen[l.gen()], true) => Some(*l),
                _ => None,
            })
            .collect()
    }
    let (lg, lh) = (letter_map(g)?, letter_map(h)?);
    Some(
        (0..g.domain().len())
            .filter(|&i| lg[i] == lh[i])
            .map(Word::generator)
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// No termination guarantee: caps lead to candidates.
    General,
    /// Retract hypotheses verified: caps are proven bounds and a miss is a bug.
    Retract,
}

/// `Fix(phi)` for an injective endomorphism, over `phi`'s own alphabet,
/// when one of the exact routes applies; `None` otherwise.
pub(crate) fn solve_fixed(phi: &Homomorphism, opts: &SolveOptions, mode: Mode) -> Result<Option<Outcome>> {
    let cap = match mode {
        Mode::General => opts.max_iter,
        Mode::Retract => phi.domain().len() + 1,
    };
    let trace = stable_image(phi, cap)?;
    let Some(stable) = trace.sd else {
        if mode == Mode::Retract {
            return Err(Error::InternalContradiction(format!(
                "stable image did not stabilize within {cap} iterates under retract hypotheses"
            )));
        }
        return Ok(None);
    };
    match acts_as_automorphism(phi, &stable) {
        Ok(true) => {}
        Ok(false) | Err(Error::NotInvariant) if mode == Mode::General => return Ok(None),
        Ok(false) | Err(Error::NotInvariant) => {
            return Err(Error::InternalContradiction(
                "endomorphism does not act as an automorphism on its stable image".into(),
            ))
        }
        Err(e) => return Err(e),
    }
    // psi is phi restricted to its stable image, over the stable image's basis.
    let (psi, basis) = build_phi(phi, &Homomorphism::identity(phi.domain()), &stable)?;
    let translate = Homomorphism::from_basis(phi.domain(), &basis.words);
    if psi == Homomorphism::identity(psi.domain()) {
        return Ok(Some(Outcome::exact(basis.words, vec![Provenance::StableImageIdentity])));
    }
    if let Some(gens) = letterwise_equaliser(&psi, &Homomorphism::identity(psi.domain())) {
        let words = gens.iter().map(|w| translate.apply(w)).collect();
        return Ok(Some(Outcome::exact(words, vec![Provenance::StableImageLetterwise])));
    }
    Ok(None)
}

/// Number of reduced words of length at most `radius` over `rank`
/// generators, saturating.
fn ball_size(rank: usize, radius: usize) -> u128 {
    let mut total: u128 = 1;
    let mut sphere: u128 = 2 * rank as u128;
    for _ in 0..radius {
        total = total.saturating_add(sphere);
        sphere = sphere.saturating_mul((2 * rank as u128).saturating_sub(1));
    }
    total
}

fn enumeration_outcome(maps: &[Homomorphism], radius: usize) -> Outcome {
    let words = equaliser_ball(maps, radius);
    let words = SubgroupGraph::fold(maps[0].domain(), &words).basis().words.clone();
    Outcome {
        exact: false,
        words,
        path: vec![Provenance::BoundedEnumeration],
        radius: Some(radius),
        rank_bound: None,
    }
}

/// The stable-domain route for a pair of injective maps.
pub(crate) fn injective_pipeline(
    g: &Homomorphism,
    h: &Homomorphism,
    opts: &SolveOptions,
    mode: Mode,
) -> Result<Outcome> {
    let sigma = g.domain().len();
    let equal_images = g.image() == h.image();
    let (first, second, sd, step) = if equal_images {
        (g, h, SubgroupGraph::whole(g.domain()), Provenance::EqualImages)
    } else {
        let cap = match mode {
            Mode::General => opts.max_iter,
            Mode::Retract => sigma + 1,
        };
        let forward = sd_iterate(g, h, cap)?;
        if let Some(sd) = forward.sd {
            (g, h, sd, Provenance::StableDomain)
        } else if mode == Mode::Retract {
            return Err(Error::InternalContradiction(format!(
                "stable domain did not stabilize within {cap} iterates under retract hypotheses"
            )));
        } else if let Some(sd) = sd_iterate(h, g, cap)?.sd {
            // Eq(g, h) = Eq(h, g) also lies in SD(h, g).
            (h, g, sd, Provenance::StableDomain)
        } else {
            return Ok(enumeration_outcome(&[g.clone(), h.clone()], opts.radius));
        }
    };
    let sd_rank = sd.rank();
    let (phi, basis) = build_phi(first, second, &sd)?;
    let translate = Homomorphism::from_basis(g.domain(), &basis.words);
    let fixed = match solve_fixed(&phi, opts, mode)? {
        Some(fixed) => fixed,
        // Searching over the stable domain's basis is only worthwhile
        // while that ball is no larger than the ball in the domain.
        None if ball_size(sd_rank, opts.radius) <= ball_size(sigma, opts.radius) => Outcome {
            exact: false,
            words: fixed_points_bounded(&phi, opts.radius)?.basis().words.clone(),
            path: vec![Provenance::FixedPointSearch],
            radius: Some(opts.radius),
            rank_bound: None,
        },
        None => {
            let mut outcome = enumeration_outcome(&[g.clone(), h.clone()], opts.radius);
            outcome.path.insert(0, step);
            outcome.rank_bound = Some(sd_rank);
            return Ok(outcome);
        }
    };
    let words = fixed.words.iter().map(|w| translate.apply(w)).collect();
    let mut path = vec![step];
    path.extend(fixed.path);
    // rk Eq ≤ rk SD; with retract hypotheses and distinct images, rk Eq < |Σ|.
    let mut bound = sd_rank;
    if mode == Mode::Retract && !equal_images {
        bound = bound.min(sigma.saturating_sub(1));
    }
    Ok(Outcome {
        exact: fixed.exact,
        words,
        path,
        radius: fixed.radius,
        rank_bound: Some(bound),
    })
}

/// Best available solver for a single pair, without rank-two dispatch.
pub(crate) fn pair_outcome(g: &Homomorphism, h: &Homomorphism, opts: &SolveOptions) -> Result<Outcome> {
    check_pair(g, h)?;
    if g == h {
        return Ok(Outcome::exact(g.domain().generators(), vec![Provenance::IdenticalMaps]));
    }
    if let Some(words) = letterwise_equaliser(g, h) {
        return Ok(Outcome::exact(words, vec![Provenance::LetterwiseMaps]));
    }
    let (gi, hi) = (g.is_injective(), h.is_injective());
    if gi && h.image().rank() <= 1 {
        return cyclic::cyclic_outcome(g, h);
    }
    if hi && g.image().rank() <= 1 {
        return cyclic::cyclic_outcome(h, g);
    }
    if gi && hi {
        return injective_pipeline(g, h, opts, Mode::General);
    }
    Ok(enumeration_outcome(&[g.clone(), h.clone()], opts.radius))
}

/// Solves `Eq(g, h)` with the best applicable solver: the rank-two
/// classifier on two-generator domains, the stable-domain pipeline for
/// injective pairs, the cyclic solver when one image is cyclic, and bounded
/// enumeration otherwise.
pub fn solve_pair(g: &Homomorphism, h: &Homomorphism, opts: &SolveOptions) -> Result<EqualiserReport> {
    check_pair(g, h)?;
    if g == h {
        return finish(
            &[g.clone(), h.clone()],
            Outcome::exact(g.domain().generators(), vec![Provenance::IdenticalMaps]),
        );
    }
    if g.domain().len() == 2 {
        let set = crate::morphisms::MapSet::new(vec![g.clone(), h.clone()])?;
        return classify_rank2(&set, opts);
    }
    finish(&[g.clone(), h.clone()], pair_outcome(g, h, opts)?)
}
