//! Trial functions for the registered campaigns.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::random;
use super::{TrialConfig, TrialFailure, TrialResult};
use crate::equaliser::{
    classify_rank2, equaliser_ball, fixed_points_bounded, solve_pair, solve_retract_pipeline,
    EqualiserReport, Provenance, SolveOptions, Verdict,
};
use crate::morphisms::{Homomorphism, MapSet};
use crate::stable_domain::{build_phi, sd_iterate, SdStatus};
use crate::stallings::SubgroupGraph;
use crate::syntax::format_word;
use crate::words::{Alphabet, Word};

macro_rules! ensure {
    ($cond:expr, $instance:expr, $($detail:tt)+) => {
        if !$cond {
            return Err(TrialFailure {
                instance: $instance.to_string(),
                detail: format!($($detail)+),
            });
        }
    };
}

/// Unwraps a library result, turning an error into a trial failure.
macro_rules! attempt {
    ($e:expr, $instance:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                return Err(TrialFailure {
                    instance: $instance.to_string(),
                    detail: format!("unexpected error: {err}"),
                })
            }
        }
    };
}

fn words(al: &Alphabet, ws: &[Word]) -> String {
    let items: Vec<String> = ws.iter().map(|w| format_word(al, w)).collect();
    format!("[{}]", items.join(", "))
}

fn hom(f: &Homomorphism) -> String {
    let items: Vec<String> = f
        .domain()
        .symbols()
        .iter()
        .zip(f.images())
        .map(|(s, w)| format!("{s}->{}", format_word(f.codomain(), w)))
        .collect();
    format!("{{{}}}", items.join(", "))
}

fn opts(cfg: &TrialConfig) -> SolveOptions {
    SolveOptions {
        radius: cfg.radius,
        max_iter: cfg.max_iter,
    }
}

/// Checks a report against the bounded oracle: basis and witness words are
/// equalised by every map; an exact verdict agrees with the enumerated ball;
/// a candidate's ball lies inside the enumerated ball.
fn check_report(
    maps: &[Homomorphism],
    report: &EqualiserReport,
    radius: usize,
    instance: &str,
) -> TrialResult {
    let set_agrees = |w: &Word| {
        let first = maps[0].apply(w);
        maps[1..].iter().all(|f| f.apply(w) == first)
    };
    for w in report.basis.iter().chain(&report.witnesses) {
        ensure!(set_agrees(w), instance, "soundness: {w:?} is not equalised");
    }
    if let Some(bound) = report.rank_bound {
        ensure!(report.rank() <= bound, instance, "rank {} above bound {bound}", report.rank());
    }
    if report.verdict == Verdict::NotFinitelyGenerated {
        return Ok(());
    }
    let domain = maps[0].domain();
    let reported = report.subgroup(domain);
    let ball: HashSet<Word> = equaliser_ball(maps, radius).into_iter().collect();
    for w in Word::ball(domain.len(), radius) {
        let in_report = reported.member(&w);
        if report.verdict.is_exact() {
            ensure!(
                in_report == ball.contains(&w),
                instance,
                "exact verdict disagrees with enumeration on {w:?} (reported member: {in_report})"
            );
        } else {
            ensure!(
                !in_report || ball.contains(&w),
                instance,
                "candidate contains {w:?}, which is not equalised"
            );
        }
    }
    Ok(())
}

pub(super) fn fold_confluence(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> TrialResult {
    let rank = rng.gen_range(2..=cfg.max_rank);
    let al = random::alphabet(rank);
    let count = rng.gen_range(1..=4);
    let gens: Vec<Word> = (0..count).map(|_| random::word(rng, rank, 8)).collect();
    let instance = format!("generators {}", words(&al, &gens));
    let reference = SubgroupGraph::fold(&al, &gens);
    let mut shuffled = gens.clone();
    shuffled.shuffle(rng);
    let mut order = ChaCha8Rng::seed_from_u64(rng.gen());
    let random_order = SubgroupGraph::fold_with(&al, &shuffled, &mut |n: usize| order.gen_range(0..n));
    let fifo = SubgroupGraph::fold_with(&al, &gens, &mut |_: usize| 0);
    ensure!(random_order == reference, instance, "random fold order changed the graph");
    ensure!(fifo == reference, instance, "first-in fold order changed the graph");
    ensure!(random_order.to_dot() == reference.to_dot(), instance, "canonical numbering differs");
    let again = SubgroupGraph::fold(&al, &reference.basis().words);
    ensure!(again == reference, instance, "basis does not regenerate the graph");
    ensure!(
        reference.rank() == reference.basis().words.len(),
        instance,
        "basis size differs from rank"
    );
    Ok(())
}

/// Elements of length at most `radius` found as products of at most
/// `factors` basis elements and inverses.
fn brute_force_members(basis: &[Word], factors: usize, radius: usize) -> HashSet<Word> {
    let longest = basis.iter().map(Word::len).max().unwrap_or(0);
    let mut found = HashSet::from([Word::identity()]);
    let mut seen = HashSet::from([Word::identity()]);
    let mut layer = vec![Word::identity()];
    let steps: Vec<Word> = basis.iter().flat_map(|b| [b.clone(), b.inverse()]).collect();
    for depth in 1..=factors {
        let budget = radius + (factors - depth) * longest;
        let mut next = Vec::new();
        for p in &layer {
            for s in &steps {
                let q = p.concat(s);
                if q.len() <= budget && seen.insert(q.clone()) {
                    if q.len() <= radius {
                        found.insert(q.clone());
                    }
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    found
}

pub(super) fn membership_oracle(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> TrialResult {
    let rank = rng.gen_range(2..=cfg.max_rank);
    let al = random::alphabet(rank);
    let g = random::subgroup(rng, &al, cfg.max_word_len);
    let instance = format!("subgroup generated by {}", words(&al, g.generators()));
    let radius = 6;
    let brute = brute_force_members(&g.basis().words, 8, radius);
    let gens = g.generators();
    for w in Word::ball(rank, radius) {
        let member = g.member(&w);
        ensure!(
            member || !brute.contains(&w),
            instance,
            "{} is a product of basis elements but is rejected",
            format_word(&al, &w)
        );
        match g.express(&w) {
            Ok(expr) => {
                ensure!(member, instance, "express succeeded for a non-member");
                let substituted = Homomorphism::from_basis(&al, gens).apply(&expr);
                ensure!(
                    substituted == w,
                    instance,
                    "certificate for {} evaluates to {}",
                    format_word(&al, &w),
                    format_word(&al, &substituted)
                );
            }
            Err(_) => ensure!(!member, instance, "member without certificate"),
        }
    }
    Ok(())
}

pub(super) fn intersection_membership(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> TrialResult {
    let rank = rng.gen_range(2..=cfg.max_rank);
    let al = random::alphabet(rank);
    let g = random::subgroup(rng, &al, cfg.max_word_len);
    let h = random::subgroup(rng, &al, cfg.max_word_len);
    let instance = format!(
        "G = {}, H = {}",
        words(&al, g.generators()),
        words(&al, h.generators())
    );
    let meet = attempt!(g.intersect(&h), instance);
    for w in Word::ball(rank, 6) {
        ensure!(
            meet.member(&w) == (g.member(&w) && h.member(&w)),
            instance,
            "membership of {} in the intersection is wrong",
            format_word(&al, &w)
        );
    }
    ensure!(
        attempt!(g.includes(&meet), instance) && attempt!(h.includes(&meet), instance),
        instance,
        "intersection is not contained in both factors"
    );
    Ok(())
}

fn reduced_rank(g: &SubgroupGraph) -> usize {
    g.rank().saturating_sub(1)
}

pub(super) fn hanna_neumann(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> TrialResult {
    let rank = rng.gen_range(2..=cfg.max_rank);
    let al = random::alphabet(rank);
    let g = random::subgroup(rng, &al, cfg.max_word_len);
    let h = random::subgroup(rng, &al, cfg.max_word_len);
    let instance = format!(
        "G = {}, H = {}",
        words(&al, g.generators()),
        words(&al, h.generators())
    );
    let meet = attempt!(g.intersect(&h), instance);
    ensure!(
        reduced_rank(&meet) <= reduced_rank(&g) * reduced_rank(&h),
        instance,
        "reduced ranks: intersection {}, factors {} and {}",
        reduced_rank(&meet),
        reduced_rank(&g),
        reduced_rank(&h)
    );
    Ok(())
}

pub(super) fn inertness_rank2(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> TrialResult {
    let rank = rng.gen_range(2..=cfg.max_rank);
    let al = random::alphabet(rank);
    let mut h = SubgroupGraph::trivial(&al);
    while h.rank() != 2 {
        let pair = [
            random::nontrivial_word(rng, rank, cfg.max_word_len),
            random::nontrivial_word(rng, rank, cfg.max_word_len),
        ];
        h = SubgroupGraph::fold(&al, &pair);
    }
    let k = random::subgroup(rng, &al, cfg.max_word_len);
    let instance = format!(
        "H = {}, K = {}",
        words(&al, h.generators()),
        words(&al, k.generators())
    );
    let meet = attempt!(h.intersect(&k), instance);
    ensure!(
        meet.rank() <= k.rank(),
        instance,
        "rank(H ∩ K) = {} exceeds rank(K) = {}",
        meet.rank(),
        k.rank()
    );
    Ok(())
}

fn distinct_set(maps: Vec<Homomorphism>) -> Option<MapSet> {
    MapSet::new(maps).ok()
}

pub(super) fn rank_two_trichotomy(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> TrialResult {
    let domain = random::domain_alphabet(2);
    let codomain = random::alphabet(rng.gen_range(2..=cfg.max_rank));
    let kind = rng.gen_range(0..3);
    let size = if rng.gen_bool(0.25) { 3 } else { 2 };
    let len = cfg.max_word_len;
    let set = loop {
        let maps: Vec<Homomorphism> = (0..size)
            .map(|i| match kind {
                0 => random::injective_hom(rng, &domain, &codomain, len),
                1 if i == 0 => random::injective_hom(rng, &domain, &codomain, len),
                1 if i == 1 => random::non_injective_hom(rng, &domain, &codomain, len),
                1 if rng.gen_bool(0.5) => random::injective_hom(rng, &domain, &codomain, len),
                _ => random::non_injective_hom(rng, &domain, &codomain, len),
            })
            .collect();
        if let Some(set) = distinct_set(maps) {
            break set;
        }
    };
    let maps = set.maps();
    let instance = maps.iter().map(hom).collect::<Vec<_>>().join(" / ");
    let report = attempt!(classify_rank2(&set, &opts(cfg)), instance);
    check_report(maps, &report, cfg.radius, &instance)?;
    let ball = equaliser_ball(maps, cfg.radius);
    let folded = SubgroupGraph::fold(&domain, &ball);
    match kind {
        0 => {
            ensure!(folded.rank() <= 2, instance, "all-injective ball has rank {}", folded.rank());
            ensure!(report.rank() <= 2, instance, "all-injective report has rank {}", report.rank());
        }
        1 => {
            ensure!(folded.rank() <= 1, instance, "mixed ball has rank {}", folded.rank());
            ensure!(report.verdict.is_exact(), instance, "mixed case must be exact");
            ensure!(report.rank() <= 1, instance, "mixed report has rank {}", report.rank());
        }
        _ => {
            ensure!(
                report.verdict == Verdict::NotFinitelyGenerated,
                instance,
                "none-injective verdict is {}",
                report.verdict.code()
            );
            let c = Word::commutator(&Word::generator(0), &Word::generator(1));
            ensure!(set.equalises(&c), instance, "commutator witness is not equalised");
            ensure!(report.witnesses == [c], instance, "witness is not the commutator");
        }
    }
    Ok(())
}

pub(super) fn restriction_identity(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> TrialResult {
    let sigma = rng.gen_range(2..=cfg.max_rank.min(3));
    let domain = random::domain_alphabet(sigma);
    let codomain = random::alphabet(rng.gen_range(2..=cfg.max_rank));
    let g = random::hom(rng, &domain, &codomain, cfg.max_word_len);
    let h = if rng.gen_bool(0.5) {
        // Agree on all but one generator, so the equaliser is not trivial.
        let mut images = g.images().to_vec();
        let k = rng.gen_range(0..sigma);
        images[k] = random::word(rng, codomain.len(), cfg.max_word_len);
        Homomorphism::new(domain.clone(), codomain.clone(), images).unwrap()
    } else {
        random::hom(rng, &domain, &codomain, cfg.max_word_len)
    };
    let k = if rng.gen_bool(0.2) {
        SubgroupGraph::whole(&domain)
    } else {
        random::subgroup(rng, &domain, cfg.max_word_len)
    };
    let instance = format!("g = {}, h = {}, K = {}", hom(&g), hom(&h), words(&domain, k.generators()));
    let radius = cfg.radius;
    let mut left: Vec<Word> = equaliser_ball(&[g.clone(), h.clone()], radius)
        .into_iter()
        .filter(|w| k.member(w))
        .collect();
    left.sort();
    let (gk, basis) = attempt!(g.restrict(&k), instance);
    let (hk, _) = attempt!(h.restrict(&k), instance);
    let translate = Homomorphism::from_basis(&domain, &basis);
    // A word of length r in K crosses at most r non-tree edges of K's
    // graph, so its basis expression has length at most r.
    let mut right: Vec<Word> = equaliser_ball(&[gk, hk], radius)
        .iter()
        .map(|w| translate.apply(w))
        .filter(|w| w.len() <= radius)
        .collect();
    right.sort();
    right.dedup();
    ensure!(
        left == right,
        instance,
        "Eq ∩ K has {} words of length ≤ {radius}, the restricted equaliser gives {}",
        left.len(),
        right.len()
    );
    Ok(())
}

/// A pair of injective maps out of a rank-two domain, from a mix of pools.
fn injective_pair(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> (Homomorphism, Homomorphism) {
    let domain = random::domain_alphabet(2);
    match rng.gen_range(0..3) {
        0 => {
            let twist = rng.gen_range(0..=2);
            let inst = random::retract_instance(rng, 2, 1, twist);
            (inst.g, inst.h)
        }
        1 => {
            let codomain = random::alphabet(rng.gen_range(2..=cfg.max_rank));
            let g = random::injective_hom(rng, &domain, &codomain, cfg.max_word_len);
            let mut images = g.images().to_vec();
            let k = rng.gen_range(0..2);
            images[k] = random::nontrivial_word(rng, codomain.len(), cfg.max_word_len);
            let h = Homomorphism::new(domain.clone(), codomain.clone(), images).unwrap();
            if h.is_injective() {
                (g, h)
            } else {
                let h = random::injective_hom(rng, &domain, &codomain, cfg.max_word_len);
                (g, h)
            }
        }
        _ => {
            let codomain = random::alphabet(rng.gen_range(2..=cfg.max_rank));
            let g = random::injective_hom(rng, &domain, &codomain, cfg.max_word_len);
            let h = random::injective_hom(rng, &domain, &codomain, cfg.max_word_len);
            (g, h)
        }
    }
}

pub(super) fn sd_invariants(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> TrialResult {
    let (g, h) = injective_pair(rng, cfg);
    let instance = format!("g = {}, h = {}", hom(&g), hom(&h));
    let sigma = g.domain().len();
    let trace = attempt!(sd_iterate(&g, &h, cfg.max_iter), instance);
    ensure!(
        !matches!(trace.status, SdStatus::Unsupported(_)),
        instance,
        "injective first map reported unsupported"
    );
    let im_g = g.image();
    let radius = cfg.radius.min(6);
    let eq_ball = equaliser_ball(&[g.clone(), h.clone()], radius);
    for (i, it) in trace.iterates.iter().enumerate() {
        ensure!(it.rank() <= sigma, instance, "iterate {i} has rank {} > {sigma}", it.rank());
        for w in &eq_ball {
            ensure!(it.member(w), instance, "equalised {w:?} missing from iterate {i}");
        }
        if let Some(next) = trace.iterates.get(i + 1) {
            ensure!(attempt!(it.includes(next), instance), instance, "iterate {} not nested in {i}", i + 1);
            let lhs = g.image_of(next);
            let rhs = attempt!(im_g.intersect(&h.image_of(it)), instance);
            ensure!(lhs == rhs, instance, "g(H_{}) differs from im(g) ∩ h(H_{i})", i + 1);
        }
    }
    if let Some(sd) = &trace.sd {
        let g_sd = g.image_of(sd);
        let h_sd = h.image_of(sd);
        ensure!(attempt!(h_sd.includes(&g_sd), instance), instance, "g(SD) is not inside h(SD)");
        let folded = SubgroupGraph::fold(g.domain(), &eq_ball);
        ensure!(
            folded.rank() <= sd.rank(),
            instance,
            "equaliser ball rank {} exceeds rank(SD) = {}",
            folded.rank(),
            sd.rank()
        );
        let (phi, basis) = attempt!(build_phi(&g, &h, sd), instance);
        let translate = Homomorphism::from_basis(g.domain(), &basis.words);
        for (x, image) in basis.words.iter().zip(phi.images()) {
            ensure!(
                h.apply(&translate.apply(image)) == g.apply(x),
                instance,
                "h∘φ differs from g on basis element {x:?}"
            );
        }
    }
    Ok(())
}

pub(super) fn retract_stabilization(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> TrialResult {
    let sigma = if cfg.max_rank >= 3 && rng.gen_bool(0.3) { 3 } else { 2 };
    let twist = rng.gen_range(0..=2);
    let inst = random::retract_instance(rng, sigma, 1, twist);
    let (g, h) = (&inst.g, &inst.h);
    let instance = format!(
        "g = {}, h = {}, rho_g = {}, rho_h = {}",
        hom(g),
        hom(h),
        hom(&inst.rho_g),
        hom(&inst.rho_h)
    );
    let trace = attempt!(sd_iterate(g, h, sigma + 1), instance);
    let SdStatus::Stabilized(i) = trace.status else {
        return Err(TrialFailure {
            instance,
            detail: format!("no stabilization within {} iterates: {:?}", sigma + 1, trace.status),
        });
    };
    ensure!(i <= sigma, instance, "stabilized at {i} > {sigma}");
    let radius = cfg.radius.min(6);
    let options = SolveOptions {
        radius,
        max_iter: cfg.max_iter,
    };
    let report = attempt!(
        solve_retract_pipeline(g, h, &inst.rho_g, &inst.rho_h, &options),
        instance
    );
    let maps = [g.clone(), h.clone()];
    check_report(&maps, &report, radius, &instance)?;
    if g.image() != h.image() {
        ensure!(report.rank() < sigma, instance, "rank {} is not below {sigma}", report.rank());
    }
    if report.provenance.contains(&Provenance::FixedPointSearch) {
        let sd = trace.sd.as_ref().unwrap();
        let (phi, basis) = attempt!(build_phi(g, h, sd), instance);
        let fixed = attempt!(fixed_points_bounded(&phi, radius), instance);
        let translate = Homomorphism::from_basis(g.domain(), &basis.words);
        let words: Vec<Word> = fixed.basis().words.iter().map(|w| translate.apply(w)).collect();
        ensure!(
            SubgroupGraph::fold(g.domain(), &words) == report.subgroup(g.domain()),
            instance,
            "candidate differs from the translated fixed points of φ"
        );
    }
    Ok(())
}

pub(super) fn equaliser_oracle(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> TrialResult {
    let sigma = rng.gen_range(2..=cfg.max_rank.min(3));
    let domain = random::domain_alphabet(sigma);
    let codomain = random::alphabet(rng.gen_range(2..=cfg.max_rank));
    let len = cfg.max_word_len;
    let pick = |rng: &mut ChaCha8Rng| match rng.gen_range(0..3) {
        0 if domain.len() <= codomain.len() => random::injective_hom(rng, &domain, &codomain, len),
        1 => random::non_injective_hom(rng, &domain, &codomain, len),
        _ => random::hom(rng, &domain, &codomain, len),
    };
    let g = pick(rng);
    let h = if rng.gen_bool(0.3) {
        let mut images = g.images().to_vec();
        let k = rng.gen_range(0..sigma);
        images[k] = random::word(rng, codomain.len(), len);
        Homomorphism::new(domain.clone(), codomain.clone(), images).unwrap()
    } else {
        pick(rng)
    };
    let instance = format!("g = {}, h = {}", hom(&g), hom(&h));
    let radius = cfg.radius.min(6);
    let options = SolveOptions {
        radius,
        max_iter: cfg.max_iter,
    };
    let report = attempt!(solve_pair(&g, &h, &options), instance);
    check_report(&[g, h], &report, radius, &instance)
}
