//! Stable domains.
//!
//! For maps `g, h: F(Σ) → F(Δ)` with `g` injective, the chain
//! `H_0 = F(Σ)`, `H_{i+1} = g⁻¹(g(H_i) ∩ h(H_i))` is weakly decreasing. Once
//! two consecutive terms agree the chain is constant, and that term is the
//! stable domain `SD(g, h)`: the largest subgroup `K` with `g(K) ≤ h(K)`
//! (for injective `h`). On it, `φ = h⁻¹∘g` is an endomorphism whose fixed
//! subgroup is the equaliser of `g` and `h`.

use crate::error::{Error, Result};
use crate::morphisms::Homomorphism;
use crate::stallings::{Basis, SubgroupGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SdStatus {
    /// `H_i = H_{i+1}` for the recorded `i`.
    Stabilized(usize),
    /// The cap on distinct iterates was reached without stabilizing.
    CapReached(usize),
    /// An iterate's graph grew past the vertex budget; the oversized
    /// iterate is not recorded.
    SizeLimit { vertices: usize },
    Unsupported(String),
}

impl SdStatus {
    pub fn code(&self) -> &'static str {
        match self {
            SdStatus::Stabilized(_) => "stabilized",
            SdStatus::CapReached(_) => "cap-reached",
            SdStatus::SizeLimit { .. } => "size-limit",
            SdStatus::Unsupported(_) => "unsupported",
        }
    }
}

/// Largest iterate graph, in vertices, that [`sd_iterate`] will carry
/// forward. Chains that never stabilize can grow geometrically.
pub const VERTEX_BUDGET: usize = 4096;

#[derive(Debug, Clone)]
pub struct SdTrace {
    pub g: Homomorphism,
    pub h: Homomorphism,
    /// `H_0, H_1, …`; on stabilization at `i` this ends with `H_i, H_{i+1}`.
    pub iterates: Vec<SubgroupGraph>,
    pub status: SdStatus,
    pub sd: Option<SubgroupGraph>,
}

impl SdTrace {
    pub fn ranks(&self) -> Vec<usize> {
        self.iterates.iter().map(SubgroupGraph::rank).collect()
    }
}

fn check_pair(g: &Homomorphism, h: &Homomorphism) -> Result<()> {
    if g.domain() != h.domain() || g.codomain() != h.codomain() {
        return Err(Error::AlphabetMismatch(
            "maps do not share domain and codomain".into(),
        ));
    }
    Ok(())
}

/// One step of the chain: `g⁻¹(g(H) ∩ h(H))`. Requires `g` injective.
pub fn next_iterate(g: &Homomorphism, h: &Homomorphism, current: &SubgroupGraph) -> Result<SubgroupGraph> {
    let meet = g.image_of(current).intersect(&h.image_of(current))?;
    meet.preimage(g)
}

/// Iterates the chain until two consecutive terms agree, until `max_iter`
/// distinct terms have been produced, or until a term exceeds
/// [`VERTEX_BUDGET`].
pub fn sd_iterate(g: &Homomorphism, h: &Homomorphism, max_iter: usize) -> Result<SdTrace> {
    sd_iterate_within(g, h, max_iter, VERTEX_BUDGET)
}

/// As [`sd_iterate`] with an explicit vertex budget.
pub fn sd_iterate_within(
    g: &Homomorphism,
    h: &Homomorphism,
    max_iter: usize,
    vertex_budget: usize,
) -> Result<SdTrace> {
    check_pair(g, h)?;
    let mut trace = SdTrace {
        g: g.clone(),
        h: h.clone(),
        iterates: vec![SubgroupGraph::whole(g.domain())],
        status: SdStatus::CapReached(max_iter),
        sd: None,
    };
    if !g.is_injective() {
        trace.status = SdStatus::Unsupported(
            "the first map is not injective; preimages under it are not finitely generated".into(),
        );
        return Ok(trace);
    }
    loop {
        let current = trace.iterates.last().unwrap();
        let next = next_iterate(g, h, current)?;
        if &next == current {
            let i = trace.iterates.len() - 1;
            trace.sd = Some(next.clone());
            trace.iterates.push(next);
            trace.status = SdStatus::Stabilized(i);
            return Ok(trace);
        }
        if trace.iterates.len() >= max_iter {
            return Ok(trace);
        }
        if next.vertex_count() > vertex_budget {
            trace.status = SdStatus::SizeLimit {
                vertices: next.vertex_count(),
            };
            return Ok(trace);
        }
        trace.iterates.push(next);
    }
}

/// `φ = h⁻¹∘g` on `sd`, as an endomorphism of the free group on the basis
/// of `sd`, together with that basis.
pub fn build_phi(g: &Homomorphism, h: &Homomorphism, sd: &SubgroupGraph) -> Result<(Homomorphism, Basis)> {
    check_pair(g, h)?;
    if sd.alphabet() != g.domain() {
        return Err(Error::AlphabetMismatch(
            "subgroup is not over the domain".into(),
        ));
    }
    if !h.is_injective() {
        return Err(Error::Unsupported(
            "the second map is not injective, so h⁻¹∘g is not well defined".into(),
        ));
    }
    let basis = sd.basis().clone();
    let h_images: Vec<_> = basis.words.iter().map(|w| h.apply(w)).collect();
    let h_sd = SubgroupGraph::fold(h.codomain(), &h_images);
    let images = basis
        .words
        .iter()
        .map(|x| {
            h_sd.express(&g.apply(x)).map_err(|_| {
                Error::InvalidStableDomain("g(SD) is not contained in h(SD)".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let fresh = crate::words::Alphabet::fresh(basis.words.len());
    let phi = Homomorphism::new(fresh.clone(), fresh, images)?;
    Ok((phi, basis))
}

/// `φ^∞ = SD(id, φ)` for an injective endomorphism.
pub fn stable_image(phi: &Homomorphism, max_iter: usize) -> Result<SdTrace> {
    if !phi.is_endomorphism() {
        return Err(Error::AlphabetMismatch("not an endomorphism".into()));
    }
    let id = Homomorphism::identity(phi.domain());
    if !phi.is_injective() {
        return Ok(SdTrace {
            g: id,
            h: phi.clone(),
            iterates: vec![SubgroupGraph::whole(phi.domain())],
            status: SdStatus::Unsupported("endomorphism is not injective".into()),
            sd: None,
        });
    }
    sd_iterate(&id, phi, max_iter)
}

/// Whether an injective endomorphism maps the invariant subgroup `g` onto
/// itself.
pub fn acts_as_automorphism(phi: &Homomorphism, g: &SubgroupGraph) -> Result<bool> {
    if !phi.is_endomorphism() || g.alphabet() != phi.domain() {
        return Err(Error::AlphabetMismatch(
            "subgroup and endomorphism do not share an alphabet".into(),
        ));
    }
    let image = phi.image_of(g);
    if !g.includes(&image)? {
        return Err(Error::NotInvariant);
    }
    Ok(image == *g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetryReport {
    Conclusive {
        sd_equal: bool,
        phi_gh_automorphism: bool,
        phi_hg_automorphism: bool,
        /// `sd_equal ⟺ (both φ are automorphisms)`; false would indicate a bug.
        biconditional_holds: bool,
    },
    Inconclusive(String),
}

/// Compares `SD(g, h)` with `SD(h, g)` and checks that they agree exactly
/// when both `φ_(g,h)` and `φ_(h,g)` are automorphisms of their domains.
pub fn sd_symmetry_check(g: &Homomorphism, h: &Homomorphism, max_iter: usize) -> Result<SymmetryReport> {
    check_pair(g, h)?;
    if !g.is_injective() || !h.is_injective() {
        return Ok(SymmetryReport::Inconclusive(
            "both maps must be injective".into(),
        ));
    }
    let forward = sd_iterate(g, h, max_iter)?;
    let backward = sd_iterate(h, g, max_iter)?;
    let (Some(sd_gh), Some(sd_hg)) = (forward.sd, backward.sd) else {
        return Ok(SymmetryReport::Inconclusive(format!(
            "a stable domain did not stabilize within {max_iter} iterates"
        )));
    };
    let automorphism = |a: &Homomorphism, b: &Homomorphism, sd: &SubgroupGraph| -> Result<bool> {
        let (phi, _) = build_phi(a, b, sd)?;
        acts_as_automorphism(&phi, &SubgroupGraph::whole(phi.domain()))
    };
    let sd_equal = sd_gh == sd_hg;
    let phi_gh_automorphism = automorphism(g, h, &sd_gh)?;
    let phi_hg_automorphism = automorphism(h, g, &sd_hg)?;
    Ok(SymmetryReport::Conclusive {
        sd_equal,
        phi_gh_automorphism,
        phi_hg_automorphism,
        biconditional_holds: sd_equal == (phi_gh_automorphism && phi_hg_automorphism),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{format_word, parse_word};
    use crate::words::{Alphabet, Word};

    fn hom(dom: &[&str], cod: &[&str], images: &[&str]) -> Homomorphism {
        let d = Alphabet::new(dom.iter().copied()).unwrap();
        let c = Alphabet::new(cod.iter().copied()).unwrap();
        let images = images.iter().map(|s| parse_word(&c, s).unwrap()).collect();
        Homomorphism::new(d, c, images).unwrap()
    }

    fn fold(al: &Alphabet, gens: &[&str]) -> SubgroupGraph {
        let words: Vec<Word> = gens.iter().map(|s| parse_word(al, s).unwrap()).collect();
        SubgroupGraph::fold(al, &words)
    }

    fn names(al: &Alphabet, words: &[Word]) -> Vec<String> {
        words.iter().map(|w| format_word(al, w)).collect()
    }

    #[test]
    fn free_factor_pair_stabilizes_at_one() {
        let g = hom(&["x", "y"], &["a", "b", "c"], &["a", "b"]);
        let h = hom(&["x", "y"], &["a", "b", "c"], &["a", "c"]);
        let t = sd_iterate(&g, &h, 20).unwrap();
        assert_eq!(t.status, SdStatus::Stabilized(1));
        let sd = t.sd.unwrap();
        assert_eq!(sd, fold(g.domain(), &["x"]));
        assert_eq!(t.iterates[1], sd);
        assert_eq!(t.iterates[2], sd);
    }

    #[test]
    fn doubling_pair_never_stabilizes() {
        let g = hom(&["x", "y"], &["a", "b"], &["aa", "b"]);
        let h = hom(&["x", "y"], &["a", "b"], &["a", "bb"]);
        let t = sd_iterate(&g, &h, 6).unwrap();
        assert_eq!(t.status, SdStatus::CapReached(6));
        assert_eq!(t.ranks(), vec![2; 6]);
        assert!(t.sd.is_none());
        let x = parse_word(g.domain(), "x").unwrap();
        let y = parse_word(g.domain(), "y").unwrap();
        for (i, it) in t.iterates.iter().enumerate() {
            let reference = SubgroupGraph::fold(g.domain(), &[x.clone(), y.pow(1 << i)]);
            assert_eq!(*it, reference, "iterate {i}");
            assert!(it.member(&x));
        }
        assert!(!t.iterates[1].member(&y));
    }

    #[test]
    fn equal_maps_stabilize_immediately() {
        let g = hom(&["x", "y"], &["a", "b"], &["ab", "bbA"]);
        let t = sd_iterate(&g, &g, 20).unwrap();
        assert_eq!(t.status, SdStatus::Stabilized(0));
        assert_eq!(t.sd.unwrap(), SubgroupGraph::whole(g.domain()));
    }

    #[test]
    fn non_injective_first_map_is_unsupported() {
        let g = hom(&["x", "y"], &["a", "b"], &["ab", "1"]);
        let h = hom(&["x", "y"], &["a", "b"], &["aa", "bb"]);
        let t = sd_iterate(&g, &h, 20).unwrap();
        assert!(matches!(t.status, SdStatus::Unsupported(_)));
        assert!(t.sd.is_none());
    }

    #[test]
    fn phi_examples() {
        let g = hom(&["x", "y"], &["a", "b", "c"], &["a", "b"]);
        let h = hom(&["x", "y"], &["a", "b", "c"], &["a", "c"]);
        let sd = sd_iterate(&g, &h, 20).unwrap().sd.unwrap();
        let (phi, basis) = build_phi(&g, &h, &sd).unwrap();
        assert_eq!(phi, Homomorphism::identity(&Alphabet::fresh(1)));
        assert_eq!(names(g.domain(), &basis.words), ["x"]);

        let (phi, _) = build_phi(&g, &g, &SubgroupGraph::whole(g.domain())).unwrap();
        assert_eq!(phi, Homomorphism::identity(&Alphabet::fresh(2)));

        let g = hom(&["a", "b"], &["x", "y"], &["xy", "y"]);
        let h = hom(&["a", "b"], &["x", "y"], &["x", "y"]);
        let (phi, basis) = build_phi(&g, &h, &SubgroupGraph::whole(g.domain())).unwrap();
        assert_eq!(names(g.domain(), &basis.words), ["a", "b"]);
        assert_eq!(names(&Alphabet::new(["a", "b"]).unwrap(), phi.images()), ["ab", "b"]);
        let translate = Homomorphism::from_basis(g.domain(), &basis.words);
        for (x, img) in basis.words.iter().zip(phi.images()) {
            assert_eq!(h.apply(&translate.apply(img)), g.apply(x));
        }
    }

    #[test]
    fn phi_requires_containment() {
        let g = hom(&["x", "y"], &["a", "b"], &["aa", "b"]);
        let h = hom(&["x", "y"], &["a", "b"], &["a", "bb"]);
        assert!(matches!(
            build_phi(&g, &h, &SubgroupGraph::whole(g.domain())),
            Err(Error::InvalidStableDomain(_))
        ));
    }

    #[test]
    fn stable_image_examples() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let id = Homomorphism::identity(&ab);
        let t = stable_image(&id, 20).unwrap();
        assert_eq!(t.status, SdStatus::Stabilized(0));
        let phi = hom(&["a", "b"], &["a", "b"], &["ab", "b"]);
        let t = stable_image(&phi, 20).unwrap();
        assert_eq!(t.sd.unwrap(), SubgroupGraph::whole(&ab));
        let x = Alphabet::new(["x"]).unwrap();
        let t = stable_image(&Homomorphism::identity(&x), 20).unwrap();
        assert_eq!(t.sd.unwrap(), SubgroupGraph::whole(&x));
    }

    #[test]
    fn automorphism_examples() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let whole = SubgroupGraph::whole(&ab);
        let g = fold(&ab, &["aab", "bA"]);
        assert!(acts_as_automorphism(&Homomorphism::identity(&ab), &g).unwrap());
        assert!(acts_as_automorphism(&hom(&["a", "b"], &["a", "b"], &["ab", "b"]), &whole).unwrap());
        assert!(!acts_as_automorphism(&hom(&["a", "b"], &["a", "b"], &["aa", "b"]), &whole).unwrap());
        assert_eq!(
            acts_as_automorphism(&hom(&["a", "b"], &["a", "b"], &["a", "bb"]), &fold(&ab, &["ab"])),
            Err(Error::NotInvariant)
        );
    }

    #[test]
    fn symmetry_examples() {
        let g = hom(&["x", "y"], &["a", "b", "c"], &["a", "b"]);
        let h = hom(&["x", "y"], &["a", "b", "c"], &["a", "c"]);
        let expect = SymmetryReport::Conclusive {
            sd_equal: true,
            phi_gh_automorphism: true,
            phi_hg_automorphism: true,
            biconditional_holds: true,
        };
        assert_eq!(sd_symmetry_check(&g, &h, 20).unwrap(), expect);
        assert_eq!(sd_symmetry_check(&g, &g, 20).unwrap(), expect);

        let g = hom(&["x", "y"], &["a", "b"], &["aa", "b"]);
        let h = hom(&["x", "y"], &["a", "b"], &["a", "bb"]);
        assert!(matches!(
            sd_symmetry_check(&g, &h, 6).unwrap(),
            SymmetryReport::Inconclusive(_)
        ));
    }
}
