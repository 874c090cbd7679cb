//! Alphabets and freely reduced words.
//!
//! A [`Word`] is a flat sequence of signed generator indices that is kept
//! freely reduced at all times, so two words are equal as group elements
//! exactly when they are structurally equal. Words do not carry their
//! alphabet; the structures that hold words ([`crate::Homomorphism`],
//! [`crate::SubgroupGraph`]) own the alphabet and check indices against it.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered list of distinct generator names.
///
/// The position of a symbol is its generator index. Cloning is cheap.
#[derive(Clone)]
pub struct Alphabet {
    symbols: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidAlphabet(format!("symbol {i} is empty")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Self {
            symbols: symbols.into(),
        })
    }

    /// `k` fresh generators `u1, …, uk`, used for free groups on a
    /// computed basis.
    pub fn fresh(k: usize) -> Self {
        Self::new((1..=k).map(|i| format!("u{i}"))).expect("fresh names are distinct")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, gen: usize) -> &str {
        &self.symbols[gen]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    /// True when every symbol is a single lowercase ASCII letter, so words
    /// can be written compactly (`abA` for a·b·a⁻¹).
    pub fn is_compact(&self) -> bool {
        self.symbols
            .iter()
            .all(|s| s.len() == 1 && s.as_bytes()[0].is_ascii_lowercase())
    }

    /// The single-letter words, one per generator.
    pub fn generators(&self) -> Vec<Word> {
        (0..self.len()).map(Word::generator).collect()
    }

    /// Checks that every letter of `w` names a generator of this alphabet.
    pub fn check(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g >= self.len() => Err(Error::AlphabetMismatch(format!(
                "word uses generator index {g} but the alphabet has {} symbols",
                self.len()
            ))),
            _ => Ok(()),
        }
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.symbols, &other.symbols) || self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.symbols.iter()).finish()
    }
}

/// A generator or the inverse of a generator.
///
/// Letters order as `x0 < x0⁻¹ < x1 < x1⁻¹ < …`; this is the order used for
/// length-lexicographic enumeration and for canonical graph traversal.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    gen: u32,
    inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Self {
            gen: u32::try_from(gen).expect("generator index fits in u32"),
            inverse,
        }
    }

    pub fn pos(gen: usize) -> Self {
        Self::new(gen, false)
    }

    pub fn neg(gen: usize) -> Self {
        Self::new(gen, true)
    }

    /// Inverse of [`Letter::slot`].
    pub fn from_slot(slot: usize) -> Self {
        Self::new(slot / 2, slot % 2 == 1)
    }

    pub fn gen(self) -> usize {
        self.gen as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inverse(self) -> Self {
        Self {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Dense index `2·gen + inverse`, in letter order.
    pub fn slot(self) -> usize {
        2 * self.gen as usize + usize::from(self.inverse)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "x{}^-1", self.gen)
        } else {
            write!(f, "x{}", self.gen)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(gen: usize) -> Self {
        Self {
            letters: vec![Letter::pos(gen)],
        }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            push_reducing(&mut letters, l);
        }
        Self { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same as [`Word::is_identity`].
    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen()).max()
    }

    /// The reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.reserve(other.len());
        for &l in &other.letters {
            push_reducing(&mut letters, l);
        }
        Word { letters }
    }

    /// Multiplies `other` onto the right of `self` in place.
    pub fn append(&mut self, other: &Word) {
        for &l in &other.letters {
            push_reducing(&mut self.letters, l);
        }
    }

    pub fn push(&mut self, l: Letter) {
        push_reducing(&mut self.letters, l);
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &Word) -> Word {
        self.concat(other).concat(&self.inverse())
    }

    /// The commutator `u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Splits `self` as `conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        let conjugator = Word {
            letters: self.letters[..k].to_vec(),
        };
        let core = Word {
            letters: self.letters[k..n - k].to_vec(),
        };
        (core, conjugator)
    }

    /// The primitive root and exponent: `self = root^exponent` with `root`
    /// not a proper power. The identity maps to `(identity, 0)`.
    pub fn primitive_root(&self) -> (Word, u64) {
        if self.is_identity() {
            return (Word::identity(), 0);
        }
        let (core, conjugator) = self.cyclic_reduce();
        let n = core.len();
        let period = (1..=n)
            .find(|&d| n % d == 0 && (d..n).all(|i| core.letters[i] == core.letters[i - d]))
            .expect("n is always a period");
        let root_core = Word {
            letters: core.letters[..period].to_vec(),
        };
        (conjugator.conjugate(&root_core), (n / period) as u64)
    }

    /// All reduced words over `rank` generators of length at most `radius`,
    /// in length-lexicographic order.
    pub fn ball(rank: usize, radius: usize) -> Vec<Word> {
        let mut out = vec![Word::identity()];
        let mut layer = vec![Word::identity()];
        for _ in 0..radius {
            let mut next = Vec::with_capacity(layer.len() * 2 * rank.saturating_sub(1).max(1));
            for w in &layer {
                for slot in 0..2 * rank {
                    let l = Letter::from_slot(slot);
                    if w.last() == Some(l.inverse()) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.letters.push(l);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

fn push_reducing(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last() == Some(&l.inverse()) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word::reduce(iter)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Length-lexicographic (shortlex) order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: Letter = Letter {
        gen: 0,
        inverse: false,
    };
    const AI: Letter = Letter {
        gen: 0,
        inverse: true,
    };
    const B: Letter = Letter {
        gen: 1,
        inverse: false,
    };
    const BI: Letter = Letter {
        gen: 1,
        inverse: true,
    };

    fn w(ls: &[Letter]) -> Word {
        Word::reduce(ls.iter().copied())
    }

    #[test]
    fn reduce_cancels() {
        assert_eq!(w(&[A, AI, B]), w(&[B]));
        assert!(w(&[]).is_identity());
        assert_eq!(w(&[A, B, BI, A]).letters(), &[A, A]);
    }

    #[test]
    fn concat_and_inverse() {
        assert_eq!(w(&[A, B]).concat(&w(&[BI, A])).letters(), &[A, A]);
        assert_eq!(w(&[A, B]).concat(&Word::identity()), w(&[A, B]));
        assert_eq!(w(&[A, B]).concat(&w(&[B, A])).letters(), &[A, B, B, A]);
        assert_eq!(w(&[A, B]).inverse().letters(), &[BI, AI]);
        assert!(Word::identity().inverse().is_identity());
        assert_eq!(w(&[AI, B]).inverse().letters(), &[BI, A]);
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, c) = w(&[A, B, AI]).cyclic_reduce();
        assert_eq!((core, c), (w(&[B]), w(&[A])));
        let (core, c) = w(&[A, B]).cyclic_reduce();
        assert_eq!((core, c), (w(&[A, B]), Word::identity()));
        // a⁻¹ b a b⁻¹ a: the core must be cyclically reduced, so stripping
        // continues past b a b⁻¹ down to a.
        let x = w(&[AI, B, A, BI, A]);
        let (core, c) = x.cyclic_reduce();
        assert_eq!(core, w(&[A]));
        assert_eq!(c, w(&[AI, B]));
        assert_eq!(c.conjugate(&core), x);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(w(&[A; 6]).primitive_root(), (w(&[A]), 6));
        assert_eq!(w(&[A, B, A, B, A, B]).primitive_root(), (w(&[A, B]), 3));
        assert_eq!(Word::identity().primitive_root(), (Word::identity(), 0));
        // conjugated power: b (a a) b⁻¹
        let x = w(&[B, A, A, BI]);
        assert_eq!(x.primitive_root(), (w(&[B, A, BI]), 2));
        assert_eq!(w(&[AI, AI]).primitive_root(), (w(&[AI]), 2));
    }

    #[test]
    fn ball_sizes_and_order() {
        // 1 + 4 + 12 + 36 reduced words of length ≤ 3 in F(a, b)
        let ball = Word::ball(2, 3);
        assert_eq!(ball.len(), 53);
        assert!(ball.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(Word::ball(0, 4), vec![Word::identity()]);
    }

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["a", ""]).is_err());
        let al = Alphabet::new(["a", "b"]).unwrap();
        assert!(al.is_compact());
        assert!(!Alphabet::fresh(2).is_compact());
        assert!(al.check(&w(&[B])).is_ok());
        assert!(al.check(&Word::generator(2)).is_err());
    }
}
