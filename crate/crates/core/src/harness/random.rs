//! Seeded random instances: words, subgroups, maps and retract pairs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::morphisms::Homomorphism;
use crate::stallings::SubgroupGraph;
use crate::words::{Alphabet, Letter, Word};

/// A reduced word over `rank` generators whose length is uniform in
/// `0..=max_len`.
pub fn word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    word_of_len(rng, rank, len)
}

/// A reduced word of length uniform in `1..=max_len` (`max_len ≥ 1`).
pub fn nontrivial_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len.max(1));
    word_of_len(rng, rank, len)
}

pub fn word_of_len(rng: &mut impl Rng, rank: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::from_slot(rng.gen_range(0..2 * rank));
        if letters.last() != Some(&l.inverse()) {
            letters.push(l);
        }
    }
    Word::reduce(letters)
}

/// `a, b, c, …` for small ranks, `x1, x2, …` beyond 26.
pub fn alphabet(rank: usize) -> Alphabet {
    if rank <= 26 {
        Alphabet::new((0..rank).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    } else {
        Alphabet::new((1..=rank).map(|i| format!("x{i}"))).unwrap()
    }
}

/// Domain alphabets use letters from the end of the alphabet so that
/// instance descriptions keep domain and codomain apart.
pub fn domain_alphabet(rank: usize) -> Alphabet {
    let names = ["x", "y", "z", "w", "v", "u"];
    if rank <= names.len() {
        Alphabet::new(names[..rank].iter().copied()).unwrap()
    } else {
        Alphabet::new((1..=rank).map(|i| format!("s{i}"))).unwrap()
    }
}

/// The subgroup generated by one to three random non-trivial words.
pub fn subgroup(rng: &mut impl Rng, alphabet: &Alphabet, max_len: usize) -> SubgroupGraph {
    let count = rng.gen_range(1..=3);
    let words: Vec<Word> = (0..count)
        .map(|_| nontrivial_word(rng, alphabet.len(), max_len))
        .collect();
    SubgroupGraph::fold(alphabet, &words)
}

pub fn hom(rng: &mut impl Rng, domain: &Alphabet, codomain: &Alphabet, max_len: usize) -> Homomorphism {
    let images = (0..domain.len())
        .map(|_| word(rng, codomain.len(), max_len))
        .collect();
    Homomorphism::new(domain.clone(), codomain.clone(), images).unwrap()
}

/// An injective map, by rejection; falls back to a letter embedding
/// twisted by a random automorphism if rejection keeps failing.
pub fn injective_hom(rng: &mut impl Rng, domain: &Alphabet, codomain: &Alphabet, max_len: usize) -> Homomorphism {
    assert!(domain.len() <= codomain.len(), "no injective map to a smaller rank");
    for _ in 0..64 {
        let f = hom(rng, domain, codomain, max_len);
        if f.is_injective() {
            return f;
        }
    }
    let mut slots: Vec<usize> = (0..codomain.len()).collect();
    slots.shuffle(rng);
    let images = slots[..domain.len()].iter().map(|&i| Word::generator(i)).collect();
    let embed = Homomorphism::new(domain.clone(), codomain.clone(), images).unwrap();
    let (alpha, _) = automorphism(rng, codomain, 2);
    Homomorphism::compose(&alpha, &embed).unwrap()
}

/// A map that is not injective: either all images are powers of one root,
/// or one image is trivial.
pub fn non_injective_hom(rng: &mut impl Rng, domain: &Alphabet, codomain: &Alphabet, max_len: usize) -> Homomorphism {
    let images: Vec<Word> = if domain.len() >= 2 && rng.gen_bool(0.5) {
        let root = nontrivial_word(rng, codomain.len(), max_len.div_ceil(2));
        (0..domain.len())
            .map(|_| root.pow(rng.gen_range(-2..=2)))
            .collect()
    } else {
        let mut images: Vec<Word> = (0..domain.len())
            .map(|_| word(rng, codomain.len(), max_len))
            .collect();
        let k = rng.gen_range(0..domain.len());
        images[k] = Word::identity();
        images
    };
    let f = Homomorphism::new(domain.clone(), codomain.clone(), images).unwrap();
    debug_assert!(!f.is_injective());
    f
}

/// A random product of `steps` elementary Nielsen automorphisms, with its
/// inverse.
pub fn automorphism(rng: &mut impl Rng, alphabet: &Alphabet, steps: usize) -> (Homomorphism, Homomorphism) {
    let n = alphabet.len();
    let mut alpha = Homomorphism::identity(alphabet);
    let mut inverse = Homomorphism::identity(alphabet);
    for _ in 0..steps {
        let (e, e_inv) = elementary(rng, alphabet);
        alpha = Homomorphism::compose(&alpha, &e).unwrap();
        inverse = Homomorphism::compose(&e_inv, &inverse).unwrap();
    }
    debug_assert!(n == 0 || Homomorphism::compose(&alpha, &inverse).unwrap() == Homomorphism::identity(alphabet));
    (alpha, inverse)
}

fn elementary(rng: &mut impl Rng, alphabet: &Alphabet) -> (Homomorphism, Homomorphism) {
    let n = alphabet.len();
    let mut images = alphabet.generators();
    let mut inverse = alphabet.generators();
    let i = rng.gen_range(0..n);
    if n == 1 || rng.gen_bool(0.2) {
        images[i] = images[i].inverse();
        inverse[i] = inverse[i].inverse();
    } else {
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let t = Word::generator(j).pow(if rng.gen_bool(0.5) { 1 } else { -1 });
        let (xi, ti) = (Word::generator(i), t.inverse());
        if rng.gen_bool(0.5) {
            images[i] = xi.concat(&t);
            inverse[i] = xi.concat(&ti);
        } else {
            images[i] = t.concat(&xi);
            inverse[i] = ti.concat(&xi);
        }
    }
    (
        Homomorphism::new(alphabet.clone(), alphabet.clone(), images).unwrap(),
        Homomorphism::new(alphabet.clone(), alphabet.clone(), inverse).unwrap(),
    )
}

/// Two injective maps whose images are free factors of the codomain,
/// with retractions of the codomain onto each image.
#[derive(Debug, Clone)]
pub struct RetractInstance {
    pub g: Homomorphism,
    pub h: Homomorphism,
    pub rho_g: Homomorphism,
    pub rho_h: Homomorphism,
}

/// Images are `α(F(A))` and `α(F(B))` for random generator subsets `A`,
/// `B` of size `|Σ|` and a random automorphism `α` of `F(Δ)`, where
/// `|Δ| = |Σ| + extra`. The retraction onto `α(F(A))` is `α∘π_A∘α⁻¹`,
/// with `π_A` killing the generators outside `A`.
pub fn retract_instance(rng: &mut impl Rng, sigma: usize, extra: usize, twist: usize) -> RetractInstance {
    let domain = domain_alphabet(sigma);
    let codomain = alphabet(sigma + extra);
    let (alpha, alpha_inv) = automorphism(rng, &codomain, twist);
    let mut side = || {
        let mut slots: Vec<usize> = (0..codomain.len()).collect();
        slots.shuffle(rng);
        let chosen = &slots[..sigma];
        let steps = rng.gen_range(0..=2);
        let (beta, _) = automorphism(rng, &domain, steps);
        let embed = Homomorphism::new(
            domain.clone(),
            codomain.clone(),
            chosen.iter().map(|&i| Word::generator(i)).collect(),
        )
        .unwrap();
        let f = Homomorphism::compose(&alpha, &Homomorphism::compose(&embed, &beta).unwrap()).unwrap();
        let project = Homomorphism::new(
            codomain.clone(),
            codomain.clone(),
            (0..codomain.len())
                .map(|i| {
                    if chosen.contains(&i) {
                        Word::generator(i)
                    } else {
                        Word::identity()
                    }
                })
                .collect(),
        )
        .unwrap();
        let rho = Homomorphism::compose(&alpha, &Homomorphism::compose(&project, &alpha_inv).unwrap()).unwrap();
        (f, rho)
    };
    let (g, rho_g) = side();
    let (h, rho_h) = side();
    RetractInstance { g, h, rho_g, rho_h }
}
