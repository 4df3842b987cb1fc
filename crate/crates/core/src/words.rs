//! Semigroup words and identities, including the `u = 0` shorthand.
//!
//! Letters are positive integers from a countable alphabet. The textual
//! DSL (see [`crate::parse`]) exposes 26 single-character letters with
//! display order `x y z t a b c ... s u v w`, so letter 1 prints as `x`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::perm::Permutation;

/// Display alphabet: `x, y, z, t` first, then the remaining letters.
pub const DISPLAY_LETTERS: [char; 26] = [
    'x', 'y', 'z', 't', 'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'k', 'l', 'm', 'n',
    'o', 'p', 'q', 'r', 's', 'u', 'v', 'w',
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    EmptyWord,
    LetterOutOfRange { letter: u32, max: usize },
    NotAZeroIdentity,
    BoundsTooSmall { needed: usize, max_len: usize },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::EmptyWord => write!(f, "semigroup words must be nonempty"),
            WordError::LetterOutOfRange { letter, max } => {
                write!(f, "letter x{letter} out of range (max {max})")
            }
            WordError::NotAZeroIdentity => write!(f, "identity is not of the form u = 0"),
            WordError::BoundsTooSmall { needed, max_len } => {
                write!(f, "target side has length {needed} but max_len is {max_len}")
            }
        }
    }
}

impl core::error::Error for WordError {}

/// A nonempty word over positive letter indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u32>,
}

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self, WordError> {
        if letters.is_empty() {
            return Err(WordError::EmptyWord);
        }
        assert!(letters.iter().all(|&l| l > 0), "letters are 1-based");
        Ok(Word { letters })
    }

    /// The linear word `x1 x2 ... xn`.
    pub fn linear(n: usize) -> Self {
        assert!(n > 0);
        Word {
            letters: (1..=n as u32).collect(),
        }
    }

    /// Single letter.
    pub fn letter(l: u32) -> Self {
        Word::new(alloc::vec![l]).unwrap()
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    #[allow(clippy::len_without_is_empty)] // words are nonempty by invariant
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Set of letters occurring in the word.
    pub fn content(&self) -> BTreeSet<u32> {
        self.letters.iter().copied().collect()
    }

    /// Every letter occurs at most once.
    pub fn is_linear(&self) -> bool {
        self.content().len() == self.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Applies the substitution `x_i -> x_{i pi}` induced by a permutation.
    /// Every letter must lie within the permutation's degree.
    pub fn apply_perm(&self, pi: &Permutation) -> Result<Word, WordError> {
        let n = pi.degree();
        let letters = self
            .letters
            .iter()
            .map(|&l| {
                if l as usize > n {
                    Err(WordError::LetterOutOfRange { letter: l, max: n })
                } else {
                    Ok(pi.apply(l as usize - 1) as u32 + 1)
                }
            })
            .collect::<Result<Vec<u32>, WordError>>()?;
        Ok(Word { letters })
    }

    /// Renames letters to `1, 2, ...` in order of first occurrence,
    /// continuing a partially built renaming.
    fn rename_into(&self, map: &mut BTreeMap<u32, u32>) -> Word {
        let letters = self
            .letters
            .iter()
            .map(|&l| {
                let next = map.len() as u32 + 1;
                *map.entry(l).or_insert(next)
            })
            .collect();
        Word { letters }
    }
}

/// Global deterministic word order: by length, then lexicographically.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_word(self))
    }
}

/// Right-hand side of an identity: a word, or the `0` marker.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityRhs {
    Word(Word),
    Zero,
}

/// A semigroup identity `u = v` or `u = 0`. The zero marker only ever
/// appears on the right-hand side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Identity {
    lhs: Word,
    rhs: IdentityRhs,
}

impl Identity {
    pub fn between(lhs: Word, rhs: Word) -> Self {
        Identity {
            lhs,
            rhs: IdentityRhs::Word(rhs),
        }
    }

    pub fn zero(u: Word) -> Self {
        Identity {
            lhs: u,
            rhs: IdentityRhs::Zero,
        }
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &IdentityRhs {
        &self.rhs
    }

    pub fn rhs_word(&self) -> Option<&Word> {
        match &self.rhs {
            IdentityRhs::Word(w) => Some(w),
            IdentityRhs::Zero => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.rhs, IdentityRhs::Zero)
    }

    /// Letters occurring on either side.
    pub fn content(&self) -> BTreeSet<u32> {
        let mut c = self.lhs.content();
        if let IdentityRhs::Word(w) = &self.rhs {
            c.extend(w.content());
        }
        c
    }

    /// The permutational identity `p_n[pi]`:
    /// `x1 x2 ... xn = x_{1 pi} x_{2 pi} ... x_{n pi}`.
    pub fn permutational(pi: &Permutation) -> Self {
        let n = pi.degree();
        let lhs = Word::linear(n);
        let rhs = lhs.apply_perm(pi).unwrap();
        Identity::between(lhs, rhs)
    }

    /// Recognizes a permutational identity up to renaming of letters and
    /// returns its nontrivial permutation, if any.
    pub fn permutational_form(&self) -> Option<Permutation> {
        let rhs = self.rhs_word()?;
        let n = self.lhs.len();
        if rhs.len() != n || !self.lhs.is_linear() || !rhs.is_linear() {
            return None;
        }
        if self.lhs.content() != rhs.content() {
            return None;
        }
        // Rename so the left side reads x1 x2 ... xn; then position i of
        // the right side holds the letter with index i*pi.
        let mut map = BTreeMap::new();
        let _ = self.lhs.rename_into(&mut map);
        let renamed_rhs = rhs.rename_into(&mut map);
        let images: Vec<usize> = renamed_rhs
            .letters()
            .iter()
            .map(|&l| l as usize - 1)
            .collect();
        let pi = Permutation::from_images(images).ok()?;
        if pi.is_identity() {
            None
        } else {
            Some(pi)
        }
    }

    /// Expands `u = 0` into the defining pair `x u = u`, `u x = u` with a
    /// fresh letter `x`.
    pub fn expand_zero(&self) -> Result<[Identity; 2], WordError> {
        if !self.is_zero() {
            return Err(WordError::NotAZeroIdentity);
        }
        let content = self.lhs.content();
        let fresh = (1..).find(|l| !content.contains(l)).unwrap();
        let x = Word::letter(fresh);
        Ok([
            Identity::between(x.concat(&self.lhs), self.lhs.clone()),
            Identity::between(self.lhs.concat(&x), self.lhs.clone()),
        ])
    }

    /// Canonical representative under letter renaming: letters are renamed
    /// to `1, 2, ...` in order of first occurrence across `lhs` then `rhs`.
    pub fn canonical(&self) -> Identity {
        let mut map = BTreeMap::new();
        let lhs = self.lhs.rename_into(&mut map);
        let rhs = match &self.rhs {
            IdentityRhs::Word(w) => IdentityRhs::Word(w.rename_into(&mut map)),
            IdentityRhs::Zero => IdentityRhs::Zero,
        };
        Identity { lhs, rhs }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_identity(self))
    }
}

/// A finite list of identities, deduplicated under letter renaming while
/// preserving first-occurrence order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityBasis {
    identities: Vec<Identity>,
}

impl IdentityBasis {
    pub fn new(identities: Vec<Identity>) -> Self {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for id in identities {
            let canon = id.canonical();
            if seen.insert(canon.clone()) {
                out.push(canon);
            }
        }
        IdentityBasis { identities: out }
    }

    pub fn empty() -> Self {
        IdentityBasis {
            identities: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.identities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.identities.is_empty()
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }

    pub fn get(&self, i: usize) -> Option<&Identity> {
        self.identities.get(i)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Identity> {
        self.identities.iter()
    }

    /// Replaces every `u = 0` identity by its two expanded components, in
    /// place in the listing order. Word-word identities are kept as they
    /// are. Derivation search runs on the expanded basis, and chain axiom
    /// indices refer to it.
    pub fn expand_zeros(&self) -> IdentityBasis {
        let mut out = Vec::new();
        for id in &self.identities {
            if id.is_zero() {
                let [a, b] = id.expand_zero().unwrap();
                out.push(a);
                out.push(b);
            } else {
                out.push(id.clone());
            }
        }
        IdentityBasis::new(out)
    }

    pub fn has_zero_identities(&self) -> bool {
        self.identities.iter().any(Identity::is_zero)
    }
}

impl fmt::Display for IdentityBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, id) in self.identities.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{id}")?;
        }
        Ok(())
    }
}

/// All words of length `n` over fewer than `n` letters, one canonical
/// representative per renaming class (restricted-growth strings).
pub fn nonlinear_shapes(n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    fn rec(n: usize, max_used: u32, current: &mut Vec<u32>, out: &mut Vec<Word>) {
        if current.len() == n {
            if (max_used as usize) < n {
                out.push(Word::new(current.clone()).unwrap());
            }
            return;
        }
        for l in 1..=max_used + 1 {
            current.push(l);
            rec(n, max_used.max(l), current, out);
            current.pop();
        }
    }
    rec(n, 0, &mut current, &mut out);
    out
}
