//! Small worked instances with known answers, shared by tests, the
//! acceptance suite and the command-line examples.

use crate::morphisms::Homomorphism;
use crate::syntax::parse_word;
use crate::words::Alphabet;

fn alphabet(symbols: &[&str]) -> Alphabet {
    Alphabet::new(symbols.iter().copied()).expect("fixture alphabets are valid")
}

/// Builds a map from symbol lists and images written in the codomain's
/// word syntax.
pub fn hom(domain: &[&str], codomain: &[&str], images: &[&str]) -> Homomorphism {
    let d = alphabet(domain);
    let c = alphabet(codomain);
    let images = images
        .iter()
        .map(|s| parse_word(&c, s).expect("fixture words parse"))
        .collect();
    Homomorphism::new(d, c, images).expect("fixture maps are well formed")
}

fn ab_xy(images: &[&str]) -> Homomorphism {
    hom(&["a", "b"], &["x", "y"], images)
}

/// A pair of maps `F(a, b) → F(x, y)` with the sorted basis of its equaliser.
#[derive(Debug, Clone)]
pub struct KnownPair {
    pub g: Homomorphism,
    pub h: Homomorphism,
    pub basis: &'static [&'static str],
}

/// Five pairs out of a rank-two free group: swapped generators (trivial),
/// an inverted generator (`⟨a⟩`), a transvection against the identity
/// (`⟨aba⁻¹, b⟩`), a map with a cyclic image (trivial) and a map killing
/// one generator (`⟨a⟩`, whose image under either map is `⟨x⟩`).
pub fn rank_two_pairs() -> Vec<KnownPair> {
    let id = ab_xy(&["x", "y"]);
    vec![
        KnownPair { g: id.clone(), h: ab_xy(&["y", "x"]), basis: &[] },
        KnownPair { g: id.clone(), h: ab_xy(&["x", "Y"]), basis: &["a"] },
        KnownPair { g: ab_xy(&["xy", "y"]), h: id.clone(), basis: &["abA", "b"] },
        KnownPair { g: id.clone(), h: ab_xy(&["y", "1"]), basis: &[] },
        KnownPair { g: id, h: ab_xy(&["x", "1"]), basis: &["a"] },
    ]
}

/// Two embeddings of `F(x, y)` onto the free factors `⟨a, b⟩` and `⟨a, c⟩`
/// of `F(a, b, c)`, with their retractions. The equaliser is `⟨x⟩`.
#[derive(Debug, Clone)]
pub struct RetractPair {
    pub g: Homomorphism,
    pub h: Homomorphism,
    pub rho_g: Homomorphism,
    pub rho_h: Homomorphism,
}

pub fn free_factor_pair() -> RetractPair {
    let abc = ["a", "b", "c"];
    RetractPair {
        g: hom(&["x", "y"], &abc, &["a", "b"]),
        h: hom(&["x", "y"], &abc, &["a", "c"]),
        rho_g: hom(&abc, &abc, &["a", "b", "1"]),
        rho_h: hom(&abc, &abc, &["a", "1", "c"]),
    }
}

/// `x ↦ a², y ↦ b` against `x ↦ a, y ↦ b²`: both injective, and the
/// stable domain iterates `⟨x, y^(2^i)⟩` never stabilize.
pub fn doubling_pair() -> (Homomorphism, Homomorphism) {
    (
        hom(&["x", "y"], &["a", "b"], &["aa", "b"]),
        hom(&["x", "y"], &["a", "b"], &["a", "bb"]),
    )
}

/// `x ↦ ab, y ↦ 1` against `x ↦ a², y ↦ b²`: the first map has a kernel,
/// so the stable domain iteration does not apply.
pub fn kernel_pair() -> (Homomorphism, Homomorphism) {
    (
        hom(&["x", "y"], &["a", "b"], &["ab", "1"]),
        hom(&["x", "y"], &["a", "b"], &["aa", "bb"]),
    )
}

/// A pair `g, h: F(x, y, z) → F(a, b)` induced from `g', h': F(x', y') →
/// F(a, b)` along `ι: x ↦ x'², y ↦ y'², z ↦ x'y'` and the identity of
/// `F(a, b)`.
#[derive(Debug, Clone)]
pub struct InducedPair {
    pub iota: Homomorphism,
    pub tau: Homomorphism,
    pub g: Homomorphism,
    pub h: Homomorphism,
    pub g2: Homomorphism,
    pub h2: Homomorphism,
}

pub fn induced_pair_data() -> InducedPair {
    let xyz = ["x", "y", "z"];
    let primed = ["x'", "y'"];
    let ab = ["a", "b"];
    InducedPair {
        iota: hom(&xyz, &primed, &["x'^2", "y'^2", "x' y'"]),
        tau: hom(&ab, &ab, &["a", "b"]),
        g: hom(&xyz, &ab, &["aaaa", "Abba", "aba"]),
        h: hom(&xyz, &ab, &["bb", "aaaaaa", "baaa"]),
        g2: hom(&primed, &ab, &["aa", "Aba"]),
        h2: hom(&primed, &ab, &["b", "aaa"]),
    }
}
