//! Bounded equational deduction for semigroup identities.
//!
//! One derivation step rewrites `a s(p) b` into `a s(q) b` for a basis
//! identity `p = q` (applied in either direction), a substitution `s` and
//! possibly empty contexts `a`, `b`. [`derives`] searches breadth-first for
//! a shortest chain between the two sides of a target identity, over words
//! of bounded length; a `None` result is a bounded non-result, not a
//! disproof.
//!
//! Zero identities never enter the search: the basis is expanded via
//! [`IdentityBasis::expand_zeros`] (chain axiom indices refer to the
//! expanded basis) and `u = 0` targets are searched through both of their
//! expanded components.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::words::{Identity, IdentityBasis, Word, WordError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Pattern is the axiom's left side, replacement its right side.
    Lr,
    /// Pattern is the axiom's right side, replacement its left side.
    Rl,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Lr => "LR",
            Direction::Rl => "RL",
        })
    }
}

/// Justification for one rewrite step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    /// Index into the expanded basis.
    pub axiom: usize,
    pub direction: Direction,
    /// Total on the letters of both sides of the axiom.
    pub substitution: BTreeMap<u32, Word>,
    /// Possibly empty letter sequences around the rewritten segment.
    pub left_ctx: Vec<u32>,
    pub right_ctx: Vec<u32>,
}

/// A chain `u = u0, u1, ..., uk = v` with one justification per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationChain {
    pub words: Vec<Word>,
    pub steps: Vec<DerivationStep>,
}

impl DerivationChain {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    /// The same chain read backwards, deriving the reversed identity.
    pub fn reversed(&self) -> DerivationChain {
        let words: Vec<Word> = self.words.iter().rev().cloned().collect();
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| DerivationStep {
                axiom: s.axiom,
                direction: match s.direction {
                    Direction::Lr => Direction::Rl,
                    Direction::Rl => Direction::Lr,
                },
                substitution: s.substitution.clone(),
                left_ctx: s.left_ctx.clone(),
                right_ctx: s.right_ctx.clone(),
            })
            .collect();
        DerivationChain { words, steps }
    }
}

/// Search bounds: maximum intermediate word length and maximum number of
/// steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeriveBounds {
    pub max_len: usize,
    pub max_steps: usize,
}

/// Result of a successful search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    /// Chain for a word-word target.
    Chain(DerivationChain),
    /// Chains for both expanded components of a `u = 0` target:
    /// `x u = u` and `u x = u`.
    Zero {
        absorb_left: DerivationChain,
        absorb_right: DerivationChain,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainValidationError {
    EmptyChain,
    LengthMismatch { words: usize, steps: usize },
    AxiomOutOfRange { step: usize, axiom: usize },
    ZeroAxiom { step: usize, axiom: usize },
    IncompleteSubstitution { step: usize, letter: u32 },
    WordMismatch { step: usize },
}

impl fmt::Display for ChainValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainValidationError::EmptyChain => write!(f, "chain has no words"),
            ChainValidationError::LengthMismatch { words, steps } => {
                write!(f, "{words} words do not fit {steps} steps")
            }
            ChainValidationError::AxiomOutOfRange { step, axiom } => {
                write!(f, "step {step}: axiom index {axiom} out of range")
            }
            ChainValidationError::ZeroAxiom { step, axiom } => {
                write!(f, "step {step}: axiom {axiom} is a zero identity (expand first)")
            }
            ChainValidationError::IncompleteSubstitution { step, letter } => {
                write!(f, "step {step}: substitution misses letter {letter}")
            }
            ChainValidationError::WordMismatch { step } => {
                write!(f, "step {step}: words do not match the recorded rewrite")
            }
        }
    }
}

impl core::error::Error for ChainValidationError {}

fn substitute(word: &Word, subst: &BTreeMap<u32, Word>) -> Result<Word, u32> {
    let mut letters = Vec::new();
    for &l in word.letters() {
        match subst.get(&l) {
            Some(w) => letters.extend_from_slice(w.letters()),
            None => return Err(l),
        }
    }
    Ok(Word::new(letters).unwrap())
}

/// Independent step-by-step checker: re-validates every step of a chain
/// against the (zero-free) basis using only word construction and
/// comparison.
pub fn validate_chain(
    basis: &IdentityBasis,
    chain: &DerivationChain,
) -> Result<(), ChainValidationError> {
    if chain.words.is_empty() {
        return Err(ChainValidationError::EmptyChain);
    }
    if chain.words.len() != chain.steps.len() + 1 {
        return Err(ChainValidationError::LengthMismatch {
            words: chain.words.len(),
            steps: chain.steps.len(),
        });
    }
    for (i, step) in chain.steps.iter().enumerate() {
        let Some(axiom) = basis.get(step.axiom) else {
            return Err(ChainValidationError::AxiomOutOfRange {
                step: i,
                axiom: step.axiom,
            });
        };
        let Some(rhs) = axiom.rhs_word() else {
            return Err(ChainValidationError::ZeroAxiom {
                step: i,
                axiom: step.axiom,
            });
        };
        let (pattern, replacement) = match step.direction {
            Direction::Lr => (axiom.lhs(), rhs),
            Direction::Rl => (rhs, axiom.lhs()),
        };
        let instantiate = |w: &Word| {
            substitute(w, &step.substitution).map_err(|letter| {
                ChainValidationError::IncompleteSubstitution { step: i, letter }
            })
        };
        let before = instantiate(pattern)?;
        let after = instantiate(replacement)?;
        let wrap = |core: &Word| {
            let mut letters = step.left_ctx.clone();
            letters.extend_from_slice(core.letters());
            letters.extend_from_slice(&step.right_ctx);
            Word::new(letters).unwrap()
        };
        if wrap(&before) != chain.words[i] || wrap(&after) != chain.words[i + 1] {
            return Err(ChainValidationError::WordMismatch { step: i });
        }
    }
    Ok(())
}

/// Searches for a bounded derivation of `target` from `basis`.
///
/// Returns the shortest chain under the deterministic tie-break (BFS level
/// order, then word order); `Ok(None)` means no chain exists within the
/// bounds.
pub fn derives(
    basis: &IdentityBasis,
    target: &Identity,
    bounds: DeriveBounds,
) -> Result<Option<Derivation>, WordError> {
    let expanded = basis.expand_zeros();
    match target.rhs_word() {
        Some(goal) => {
            check_bounds(&[target.lhs(), goal], bounds.max_len)?;
            Ok(search(&expanded, target.lhs(), goal, bounds).map(Derivation::Chain))
        }
        None => {
            let [left, right] = target.expand_zero().unwrap();
            check_bounds(&[left.lhs(), left.rhs_word().unwrap()], bounds.max_len)?;
            let absorb_left = search(&expanded, left.lhs(), left.rhs_word().unwrap(), bounds);
            let absorb_right = search(&expanded, right.lhs(), right.rhs_word().unwrap(), bounds);
            Ok(match (absorb_left, absorb_right) {
                (Some(absorb_left), Some(absorb_right)) => Some(Derivation::Zero {
                    absorb_left,
                    absorb_right,
                }),
                _ => None,
            })
        }
    }
}

fn check_bounds(sides: &[&Word], max_len: usize) -> Result<(), WordError> {
    for side in sides {
        if side.len() > max_len {
            return Err(WordError::BoundsTooSmall {
                needed: side.len(),
                max_len,
            });
        }
    }
    Ok(())
}

/// The search alphabet: the letters of both endpoint words, padded with the
/// smallest fresh letters up to `max_len` distinct letters, so substituted
/// images can introduce material not present in the target.
fn search_alphabet(start: &Word, goal: &Word, max_len: usize) -> Vec<u32> {
    let mut letters: BTreeSet<u32> = start.content();
    letters.extend(goal.content());
    let mut fresh = 1u32;
    while letters.len() < max_len {
        if !letters.contains(&fresh) {
            letters.insert(fresh);
        }
        fresh += 1;
    }
    letters.into_iter().collect()
}

struct Search<'a> {
    basis: &'a IdentityBasis,
    bounds: DeriveBounds,
    alphabet: Vec<u32>,
    words: Vec<Word>,
    ids: BTreeMap<Word, usize>,
    parent: Vec<Option<(usize, DerivationStep)>>,
}

fn search(
    basis: &IdentityBasis,
    start: &Word,
    goal: &Word,
    bounds: DeriveBounds,
) -> Option<DerivationChain> {
    if start == goal {
        return Some(DerivationChain {
            words: vec![start.clone()],
            steps: Vec::new(),
        });
    }
    let mut s = Search {
        basis,
        bounds,
        alphabet: search_alphabet(start, goal, bounds.max_len),
        words: Vec::new(),
        ids: BTreeMap::new(),
        parent: Vec::new(),
    };
    let start_id = s.intern(start.clone());
    s.parent.push(None);
    debug_assert_eq!(start_id, 0);

    let mut frontier = vec![start_id];
    for _level in 0..bounds.max_steps {
        // Deterministic expansion: nodes of a level in word order.
        frontier.sort_by(|&a, &b| s.words[a].cmp(&s.words[b]));
        let mut next = Vec::new();
        for &node in &frontier {
            let neighbors = s.neighbors(node);
            for (word, step) in neighbors {
                if s.ids.contains_key(&word) {
                    continue;
                }
                let id = s.intern(word.clone());
                s.parent.push(Some((node, step)));
                if &word == goal {
                    return Some(s.rebuild(id));
                }
                next.push(id);
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    None
}

impl<'a> Search<'a> {
    fn intern(&mut self, w: Word) -> usize {
        let id = self.words.len();
        self.ids.insert(w.clone(), id);
        self.words.push(w);
        id
    }

    fn rebuild(&self, goal_id: usize) -> DerivationChain {
        let mut words = Vec::new();
        let mut steps = Vec::new();
        let mut at = goal_id;
        words.push(self.words[at].clone());
        while let Some((prev, step)) = &self.parent[at] {
            steps.push(step.clone());
            at = *prev;
            words.push(self.words[at].clone());
        }
        words.reverse();
        steps.reverse();
        DerivationChain { words, steps }
    }

    /// All one-step rewrites of a word, in deterministic order: axiom
    /// index, direction, span position, then substitution enumeration
    /// order.
    fn neighbors(&self, node: usize) -> Vec<(Word, DerivationStep)> {
        let w = self.words[node].clone();
        let mut out = Vec::new();
        for (axiom, id) in self.basis.iter().enumerate() {
            let rhs = id
                .rhs_word()
                .expect("search basis must be zero-free (expand first)");
            for direction in [Direction::Lr, Direction::Rl] {
                let (pattern, replacement) = match direction {
                    Direction::Lr => (id.lhs(), rhs),
                    Direction::Rl => (rhs, id.lhs()),
                };
                for from in 0..w.len() {
                    for to in from + 1..=w.len() {
                        self.rewrites_at(
                            &w,
                            from,
                            to,
                            pattern,
                            replacement,
                            axiom,
                            direction,
                            &mut out,
                        );
                    }
                }
            }
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn rewrites_at(
        &self,
        w: &Word,
        from: usize,
        to: usize,
        pattern: &Word,
        replacement: &Word,
        axiom: usize,
        direction: Direction,
        out: &mut Vec<(Word, DerivationStep)>,
    ) {
        let segment = &w.letters()[from..to];
        let mut matches = Vec::new();
        match_pattern(pattern.letters(), segment, &mut BTreeMap::new(), &mut matches);
        if matches.is_empty() {
            return;
        }
        let ctx_len = w.len() - segment.len();
        for base_subst in matches {
            // Letters of the replacement side not bound by the pattern can
            // take any word over the alphabet that keeps the result within
            // max_len.
            let mut unbound: Vec<u32> = replacement
                .content()
                .into_iter()
                .filter(|l| !base_subst.contains_key(l))
                .collect();
            unbound.sort_unstable();
            let occurrences: Vec<usize> = unbound
                .iter()
                .map(|l| replacement.letters().iter().filter(|&&x| x == *l).count())
                .collect();
            let bound_len: usize = replacement
                .letters()
                .iter()
                .filter_map(|l| base_subst.get(l).map(Word::len))
                .sum();
            let budget = match self.bounds.max_len.checked_sub(ctx_len + bound_len) {
                Some(b) => b,
                None => continue,
            };
            self.assign_unbound(
                &unbound,
                &occurrences,
                0,
                budget,
                base_subst,
                &mut |subst| {
                    let core = substitute(replacement, subst).expect("substitution is total");
                    let mut letters = Vec::with_capacity(ctx_len + core.len());
                    letters.extend_from_slice(&w.letters()[..from]);
                    letters.extend_from_slice(core.letters());
                    letters.extend_from_slice(&w.letters()[to..]);
                    debug_assert!(letters.len() <= self.bounds.max_len);
                    let step = DerivationStep {
                        axiom,
                        direction,
                        substitution: subst.clone(),
                        left_ctx: w.letters()[..from].to_vec(),
                        right_ctx: w.letters()[to..].to_vec(),
                    };
                    out.push((Word::new(letters).unwrap(), step));
                },
            );
        }
    }

    /// Enumerates assignments for the unbound replacement letters, words in
    /// (length, lex) order, pruned by the remaining length budget.
    fn assign_unbound(
        &self,
        letters: &[u32],
        occurrences: &[usize],
        idx: usize,
        budget: usize,
        mut subst: BTreeMap<u32, Word>,
        emit: &mut dyn FnMut(&BTreeMap<u32, Word>),
    ) {
        if idx == letters.len() {
            emit(&subst);
            return;
        }
        let occ = occurrences[idx];
        // Remaining letters need at least one symbol per occurrence.
        let reserve: usize = occurrences[idx + 1..].iter().sum();
        let Some(room) = budget.checked_sub(reserve) else {
            return;
        };
        let max_image = room / occ;
        for len in 1..=max_image {
            let mut image = vec![0usize; len];
            'words: loop {
                let word = Word::new(image.iter().map(|&i| self.alphabet[i]).collect()).unwrap();
                subst.insert(letters[idx], word);
                self.assign_unbound(
                    letters,
                    occurrences,
                    idx + 1,
                    budget - occ * len,
                    subst.clone(),
                    emit,
                );
                // Odometer over the alphabet.
                let mut pos = len;
                loop {
                    if pos == 0 {
                        break 'words;
                    }
                    pos -= 1;
                    if image[pos] + 1 < self.alphabet.len() {
                        image[pos] += 1;
                        for x in image[pos + 1..].iter_mut() {
                            *x = 0;
                        }
                        break;
                    }
                    image[pos] = 0;
                }
            }
            subst.remove(&letters[idx]);
        }
    }
}

/// Backtracking matcher: all substitutions `s` with `s(pattern) == segment`.
fn match_pattern(
    pattern: &[u32],
    segment: &[u32],
    partial: &mut BTreeMap<u32, Word>,
    out: &mut Vec<BTreeMap<u32, Word>>,
) {
    if pattern.is_empty() {
        if segment.is_empty() {
            out.push(partial.clone());
        }
        return;
    }
    let letter = pattern[0];
    if let Some(bound) = partial.get(&letter).cloned() {
        if segment.starts_with(bound.letters()) {
            match_pattern(&pattern[1..], &segment[bound.len()..], partial, out);
        }
        return;
    }
    // Each remaining pattern position needs at least one symbol.
    let remaining = pattern.len() - 1;
    if segment.len() <= remaining {
        return;
    }
    let max_take = segment.len() - remaining;
    for take in 1..=max_take {
        partial.insert(letter, Word::new(segment[..take].to_vec()).unwrap());
        match_pattern(&pattern[1..], &segment[take..], partial, out);
        partial.remove(&letter);
    }
}
