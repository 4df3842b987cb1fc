//! Finitely presented nilpotent semigroup varieties.
//!
//! A [`NilPresentation`] is a finite identity basis together with a
//! nilpotency bound `d`; the identity `x1 x2 ... x_{d+1} = 0` is always
//! adjoined, so every word longer than `d` is zero. The relatively free
//! object on `k` generators is finite and is computed as a congruence
//! fixpoint over the words of length at most `d`: every substitution
//! instance of every basis identity is merged (instances overflowing `d`
//! merge into zero), and the relation is closed under left and right
//! multiplication by a generator until stable.
//!
//! Joins and meets of such varieties are computed inside the sublattice of
//! varieties satisfying the ambient nilpotence identity: the meet is
//! presented by the union of the bases, and the join is handled through
//! free objects, as the intersection of the two congruences on the common
//! bounded word set. Nothing here claims anything about the lattice of all
//! semigroup varieties beyond this relativization.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::model::FiniteSemigroup;
use crate::parse::{self, SyntaxError};
use crate::perm::{PermGroup, Permutation};
use crate::words::{nonlinear_shapes, Identity, IdentityBasis, IdentityRhs, Word};

/// Exhaustive associativity checking of free-object tables is skipped
/// above this order (the quotient construction guarantees it).
const ASSOC_CHECK_LIMIT: usize = 350;
/// Sanity cap on the bounded word universe.
const MAX_UNIVERSE: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NilError {
    InvalidBound,
    DegreeTooSmall { degree: usize },
    DegreeMismatch,
    GroupWitnessInvalid(Vec<GroupWitnessFailure>),
    Syntax(SyntaxError),
    MissingBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupWitnessFailure {
    JoinsDiffer,
    MeetsDiffer,
    GroupsEqual,
}

impl fmt::Display for NilError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilError::InvalidBound => write!(f, "nil bound must be at least 1"),
            NilError::DegreeTooSmall { degree } => {
                write!(f, "degree {degree} too small (need at least 2)")
            }
            NilError::DegreeMismatch => write!(f, "groups must share one degree"),
            NilError::GroupWitnessInvalid(reasons) => {
                write!(f, "subgroup-level witness preconditions failed:")?;
                for r in reasons {
                    let what = match r {
                        GroupWitnessFailure::JoinsDiffer => " joins differ",
                        GroupWitnessFailure::MeetsDiffer => " meets differ",
                        GroupWitnessFailure::GroupsEqual => " X1 equals X2",
                    };
                    f.write_str(what)?;
                }
                Ok(())
            }
            NilError::Syntax(e) => write!(f, "{e}"),
            NilError::MissingBound => write!(f, "presentation lacks a nil_bound header"),
        }
    }
}

impl core::error::Error for NilError {}

impl From<SyntaxError> for NilError {
    fn from(e: SyntaxError) -> Self {
        NilError::Syntax(e)
    }
}

/// A finite identity basis under a nilpotency bound `d`. Identities with a
/// side longer than `d` are normalized away at construction (such a side
/// is zero, so `u = v` becomes `u = 0`, and identities with both sides
/// overlong are dropped as instances of the ambient nilpotence identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilPresentation {
    basis: IdentityBasis,
    nil_bound: usize,
}

impl NilPresentation {
    pub fn new(basis: IdentityBasis, nil_bound: usize) -> Result<Self, NilError> {
        if nil_bound == 0 {
            return Err(NilError::InvalidBound);
        }
        let mut normalized = Vec::new();
        for id in basis.iter() {
            let long_lhs = id.lhs().len() > nil_bound;
            match id.rhs() {
                IdentityRhs::Zero => {
                    if !long_lhs {
                        normalized.push(id.clone());
                    }
                }
                IdentityRhs::Word(v) => {
                    let long_rhs = v.len() > nil_bound;
                    match (long_lhs, long_rhs) {
                        (false, false) => normalized.push(id.clone()),
                        (false, true) => normalized.push(Identity::zero(id.lhs().clone())),
                        (true, false) => normalized.push(Identity::zero(v.clone())),
                        (true, true) => {}
                    }
                }
            }
        }
        Ok(NilPresentation {
            basis: IdentityBasis::new(normalized),
            nil_bound,
        })
    }

    /// Parses DSL text with a mandatory `nil_bound: d` header line.
    pub fn parse(src: &str) -> Result<Self, NilError> {
        let (bound, basis) = parse::parse_presentation_source(src)?;
        let bound = bound.ok_or(NilError::MissingBound)?;
        NilPresentation::new(basis, bound)
    }

    pub fn basis(&self) -> &IdentityBasis {
        &self.basis
    }

    pub fn nil_bound(&self) -> usize {
        self.nil_bound
    }

    /// The same variety presented at a coarser bound `d >= nil_bound`,
    /// keeping the original nilpotence identity as an explicit axiom.
    pub fn raise_to_bound(&self, d: usize) -> NilPresentation {
        assert!(d >= self.nil_bound);
        if d == self.nil_bound {
            return self.clone();
        }
        let mut ids: Vec<Identity> = self.basis.identities().to_vec();
        ids.push(Identity::zero(Word::linear(self.nil_bound + 1)));
        NilPresentation::new(IdentityBasis::new(ids), d).unwrap()
    }

    fn free_object_at(&self, rank: usize, bound: usize) -> FreeNilObject {
        if bound == self.nil_bound {
            build_free_object(&self.basis, rank, bound)
        } else {
            build_free_object(self.raise_to_bound(bound).basis(), rank, bound)
        }
    }

    /// The relatively free object of the presented variety on `rank`
    /// generators.
    pub fn free_object(&self, rank: usize) -> FreeNilObject {
        self.free_object_at(rank, self.nil_bound)
    }

    pub fn satisfies(&self, id: &Identity) -> bool {
        NilVariety::Presented(self.clone()).satisfies(id)
    }

    pub fn perm_group(&self, n: usize) -> PermGroupOutcome {
        NilVariety::Presented(self.clone()).perm_group(n)
    }
}

impl fmt::Display for NilPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nil_bound: {}; {}", self.nil_bound, self.basis)
    }
}

/// The words of length `1..=bound` over `rank` letters, indexed in
/// (length, lexicographic) order; index `word_count` is the formal zero.
struct Universe {
    rank: usize,
    bound: usize,
    offsets: Vec<usize>,
    count: usize,
}

impl Universe {
    fn new(rank: usize, bound: usize) -> Universe {
        assert!(rank >= 1, "rank must be positive");
        let mut offsets = vec![0usize; bound + 2];
        let mut count = 0usize;
        let mut pow = 1usize;
        for offset in offsets.iter_mut().skip(1).take(bound) {
            *offset = count;
            pow = pow
                .checked_mul(rank)
                .filter(|_| count <= MAX_UNIVERSE)
                .expect("free-object universe too large");
            count += pow;
        }
        offsets[bound + 1] = count;
        assert!(count <= MAX_UNIVERSE, "free-object universe too large");
        Universe {
            rank,
            bound,
            offsets,
            count,
        }
    }

    fn zero(&self) -> usize {
        self.count
    }

    /// Id of a word over the generator alphabet, or the zero node when it
    /// is longer than the bound.
    fn id_of(&self, letters: &[u32]) -> usize {
        let len = letters.len();
        if len > self.bound {
            return self.zero();
        }
        let mut acc = 0usize;
        for &l in letters {
            debug_assert!(l >= 1 && l as usize <= self.rank);
            acc = acc * self.rank + (l as usize - 1);
        }
        self.offsets[len] + acc
    }

    fn word_of(&self, mut id: usize) -> Word {
        let len = (1..=self.bound)
            .find(|&l| id < self.offsets[l + 1])
            .expect("word id out of range");
        id -= self.offsets[len];
        let mut letters = vec![0u32; len];
        for slot in letters.iter_mut().rev() {
            *slot = (id % self.rank) as u32 + 1;
            id /= self.rank;
        }
        Word::new(letters).unwrap()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            false
        } else {
            // Smaller root wins, so class representatives stay minimal.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
            true
        }
    }
}

/// A finite relatively free nilpotent semigroup: congruence classes of
/// bounded words plus a distinguished zero sink, with a total
/// multiplication table. The zero class is always the last index and
/// class names are least word representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeNilObject {
    rank: usize,
    nil_bound: usize,
    word_class: Vec<usize>,
    class_reps: Vec<Option<Word>>,
    zero_class: usize,
    mult: Vec<usize>,
}

impl FreeNilObject {
    fn from_keys<K: Ord>(universe: &Universe, keys: &[K], zero_key: &K) -> FreeNilObject {
        assert_eq!(keys.len(), universe.count);
        // Classes in order of least word representative; zero last.
        let mut class_of_key: BTreeMap<&K, usize> = BTreeMap::new();
        let mut class_reps: Vec<Option<Word>> = Vec::new();
        let mut word_class = vec![0usize; universe.count];
        for (id, key) in keys.iter().enumerate() {
            if key == zero_key {
                continue;
            }
            let next = class_reps.len();
            let class = *class_of_key.entry(key).or_insert_with(|| {
                class_reps.push(Some(universe.word_of(id)));
                next
            });
            word_class[id] = class;
        }
        let zero_class = class_reps.len();
        class_reps.push(None);
        for (id, key) in keys.iter().enumerate() {
            if key == zero_key {
                word_class[id] = zero_class;
            }
        }

        let order = class_reps.len();
        let mut mult = vec![zero_class; order * order];
        for a in 0..order {
            for b in 0..order {
                if let (Some(u), Some(v)) = (&class_reps[a], &class_reps[b]) {
                    if u.len() + v.len() <= universe.bound {
                        let joined = u.concat(v);
                        mult[a * order + b] = word_class[universe.id_of(joined.letters())];
                    }
                }
            }
        }
        let obj = FreeNilObject {
            rank: universe.rank,
            nil_bound: universe.bound,
            word_class,
            class_reps,
            zero_class,
            mult,
        };
        obj.validate(universe);
        obj
    }

    /// The congruence and table must agree on every in-bound product; the
    /// table must be associative with an absorbing zero.
    fn validate(&self, universe: &Universe) {
        for a in 0..universe.count {
            let u = universe.word_of(a);
            for lb in 1..=universe.bound.saturating_sub(u.len()) {
                for b in universe.offsets[lb]..universe.offsets[lb + 1] {
                    let v = universe.word_of(b);
                    let direct = self.word_class[universe.id_of(u.concat(&v).letters())];
                    let via_table = self.mult(self.word_class[a], self.word_class[b]);
                    assert_eq!(direct, via_table, "congruence not multiplicative");
                }
            }
        }
        let m = self.order();
        for c in 0..m {
            assert_eq!(self.mult(c, self.zero_class), self.zero_class);
            assert_eq!(self.mult(self.zero_class, c), self.zero_class);
        }
        if m <= ASSOC_CHECK_LIMIT {
            for a in 0..m {
                for b in 0..m {
                    let ab = self.mult(a, b);
                    for c in 0..m {
                        assert_eq!(
                            self.mult(ab, c),
                            self.mult(a, self.mult(b, c)),
                            "free object multiplication not associative"
                        );
                    }
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nil_bound(&self) -> usize {
        self.nil_bound
    }

    /// Number of congruence classes, including the zero class.
    pub fn order(&self) -> usize {
        self.class_reps.len()
    }

    pub fn zero_class(&self) -> usize {
        self.zero_class
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b]
    }

    /// Class of a word over the generator alphabet; words longer than the
    /// bound land in the zero class. Panics on letters beyond the rank.
    pub fn class_of(&self, w: &Word) -> usize {
        assert!(
            w.letters().iter().all(|&l| l as usize <= self.rank),
            "word uses letters beyond the object's rank"
        );
        if w.len() > self.nil_bound {
            return self.zero_class;
        }
        let universe = Universe::new(self.rank, self.nil_bound);
        self.word_class[universe.id_of(w.letters())]
    }

    /// Least word representative; `None` for the zero class.
    pub fn class_rep(&self, class: usize) -> Option<&Word> {
        self.class_reps[class].as_ref()
    }

    pub fn class_name(&self, class: usize) -> String {
        match &self.class_reps[class] {
            Some(w) => parse::format_word(w),
            None => String::from("0"),
        }
    }

    /// The object as a plain Cayley-table semigroup, class names as labels.
    pub fn as_semigroup(&self) -> FiniteSemigroup {
        let m = self.order();
        let table: Vec<Vec<usize>> = (0..m)
            .map(|a| (0..m).map(|b| self.mult(a, b)).collect())
            .collect();
        let labels: Vec<String> = (0..m).map(|c| self.class_name(c)).collect();
        FiniteSemigroup::from_table_with_labels(&table, labels)
            .expect("free object table is associative")
    }
}

/// Fixpoint construction of the free object of a (normalized) basis.
fn build_free_object(basis: &IdentityBasis, rank: usize, bound: usize) -> FreeNilObject {
    let universe = Universe::new(rank, bound);
    let zero = universe.zero();
    let mut uf = UnionFind::new(universe.count + 1);

    for id in basis.iter() {
        merge_instances(&universe, &mut uf, id);
    }

    // Close under left/right multiplication by a generator: whenever two
    // words share a class, their one-letter extensions must as well.
    loop {
        let mut changed = false;
        let zero_root = uf.find(zero);
        // Least word per root, words ascending.
        let mut rep: BTreeMap<usize, usize> = BTreeMap::new();
        for w in 0..universe.count {
            let r = uf.find(w);
            rep.entry(r).or_insert(w);
        }
        for w in 0..universe.count {
            let r = uf.find(w);
            let w_word = universe.word_of(w);
            for g in 1..=rank as u32 {
                let left = extend(&universe, g, &w_word, true);
                let right = extend(&universe, g, &w_word, false);
                if r == zero_root {
                    changed |= uf.union(left, zero);
                    changed |= uf.union(right, zero);
                } else {
                    let rw = rep[&r];
                    if rw != w {
                        let r_word = universe.word_of(rw);
                        changed |= uf.union(left, extend(&universe, g, &r_word, true));
                        changed |= uf.union(right, extend(&universe, g, &r_word, false));
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let keys: Vec<usize> = (0..universe.count).map(|w| uf.find(w)).collect();
    let zero_key = uf.find(zero);
    FreeNilObject::from_keys(&universe, &keys, &zero_key)
}

fn extend(universe: &Universe, g: u32, w: &Word, left: bool) -> usize {
    if w.len() + 1 > universe.bound {
        return universe.zero();
    }
    let mut letters = Vec::with_capacity(w.len() + 1);
    if left {
        letters.push(g);
        letters.extend_from_slice(w.letters());
    } else {
        letters.extend_from_slice(w.letters());
        letters.push(g);
    }
    universe.id_of(&letters)
}

/// Merges every substitution instance of one identity. Letters range over
/// all words of the universe; instances with a side overflowing the bound
/// merge that side into zero, and instances overflowing on both sides are
/// skipped (both are zero already).
fn merge_instances(universe: &Universe, uf: &mut UnionFind, id: &Identity) {
    let letters: Vec<u32> = id.content().into_iter().collect();
    let count_in = |w: &Word, l: u32| w.letters().iter().filter(|&&x| x == l).count();
    let lhs_counts: Vec<usize> = letters.iter().map(|&l| count_in(id.lhs(), l)).collect();
    let rhs_counts: Vec<usize> = letters
        .iter()
        .map(|&l| id.rhs_word().map_or(0, |v| count_in(v, l)))
        .collect();

    let mut images: Vec<Word> = Vec::with_capacity(letters.len());
    assign_instances(
        universe,
        uf,
        id,
        &letters,
        &lhs_counts,
        &rhs_counts,
        &mut images,
        0,
        0,
    );
}

#[allow(clippy::too_many_arguments)]
fn assign_instances(
    universe: &Universe,
    uf: &mut UnionFind,
    id: &Identity,
    letters: &[u32],
    lhs_counts: &[usize],
    rhs_counts: &[usize],
    images: &mut Vec<Word>,
    lhs_len: usize,
    rhs_len: usize,
) {
    let idx = images.len();
    if idx == letters.len() {
        let sigma = |w: &Word| -> usize {
            let mut letters_out: Vec<u32> = Vec::new();
            for &l in w.letters() {
                let slot = letters.iter().position(|&x| x == l).unwrap();
                letters_out.extend_from_slice(images[slot].letters());
            }
            universe.id_of(&letters_out)
        };
        let a = sigma(id.lhs());
        let b = match id.rhs_word() {
            Some(v) => sigma(v),
            None => universe.zero(),
        };
        uf.union(a, b);
        return;
    }
    // Minimum achievable side lengths given one symbol per unassigned
    // occurrence; prune when both sides already overflow.
    let min_rest_lhs: usize = lhs_counts[idx..].iter().sum();
    let min_rest_rhs: usize = rhs_counts[idx..].iter().sum();
    let zero_rhs = id.rhs_word().is_none();
    for len in 1..=universe.bound {
        let new_lhs = lhs_len + lhs_counts[idx] * len;
        let new_rhs = rhs_len + rhs_counts[idx] * len;
        let lhs_over = new_lhs + (min_rest_lhs - lhs_counts[idx]) > universe.bound;
        let rhs_over = zero_rhs || new_rhs + (min_rest_rhs - rhs_counts[idx]) > universe.bound;
        if lhs_over && rhs_over {
            continue;
        }
        for wid in universe.offsets[len]..universe.offsets[len + 1] {
            images.push(universe.word_of(wid));
            assign_instances(
                universe, uf, id, letters, lhs_counts, rhs_counts, images, new_lhs, new_rhs,
            );
            images.pop();
        }
    }
}

/// A nilpotent variety given either by a presentation or as a join of two
/// varieties. Joins have no finite basis here; their free objects are
/// computed as the intersection of the component congruences on the common
/// bounded word set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NilVariety {
    Presented(NilPresentation),
    Join(Box<NilVariety>, Box<NilVariety>),
}

/// The permutation group of a variety at length `n`, flagged when the
/// variety satisfies `x1 ... xn = 0` (in which case the group is all of
/// `S_n` for the degenerate reason).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroupOutcome {
    pub group: PermGroup,
    pub nilpotence_case: bool,
}

impl NilVariety {
    pub fn nil_bound(&self) -> usize {
        match self {
            NilVariety::Presented(p) => p.nil_bound(),
            NilVariety::Join(a, b) => a.nil_bound().max(b.nil_bound()),
        }
    }

    fn free_object_at(&self, rank: usize, bound: usize) -> FreeNilObject {
        match self {
            NilVariety::Presented(p) => p.free_object_at(rank, bound),
            NilVariety::Join(a, b) => {
                let left = a.free_object_at(rank, bound);
                let right = b.free_object_at(rank, bound);
                let universe = Universe::new(rank, bound);
                let keys: Vec<(usize, usize)> = (0..universe.count)
                    .map(|w| (left.word_class[w], right.word_class[w]))
                    .collect();
                let zero_key = (left.zero_class, right.zero_class);
                FreeNilObject::from_keys(&universe, &keys, &zero_key)
            }
        }
    }

    pub fn free_object(&self, rank: usize) -> FreeNilObject {
        self.free_object_at(rank, self.nil_bound())
    }

    /// Whether the identity holds in the variety, decided in the free
    /// object of rank `|con(lhs) + con(rhs)|`.
    pub fn satisfies(&self, id: &Identity) -> bool {
        let letters: Vec<u32> = id.content().into_iter().collect();
        let rename: BTreeMap<u32, u32> = letters
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as u32 + 1))
            .collect();
        let renamed =
            |w: &Word| Word::new(w.letters().iter().map(|l| rename[l]).collect()).unwrap();
        let obj = self.free_object(letters.len());
        let lhs = obj.class_of(&renamed(id.lhs()));
        let rhs = match id.rhs_word() {
            Some(v) => obj.class_of(&renamed(v)),
            None => obj.zero_class(),
        };
        lhs == rhs
    }

    /// All permutations `pi` of `S_n` whose length-`n` permutational
    /// identity holds in the variety. The result is asserted to be a
    /// subgroup rather than assumed.
    pub fn perm_group(&self, n: usize) -> PermGroupOutcome {
        let obj = self.free_object(n);
        let base_word = Word::linear(n);
        let base = obj.class_of(&base_word);
        let perms: Vec<Permutation> = PermGroup::symmetric(n)
            .elements()
            .iter()
            .filter(|pi| obj.class_of(&base_word.apply_perm(pi).unwrap()) == base)
            .cloned()
            .collect();
        let group =
            PermGroup::from_elements(n, perms).expect("Perm_n of a variety must be a subgroup");
        PermGroupOutcome {
            nilpotence_case: base == obj.zero_class(),
            group,
        }
    }
}

/// Join of two presented varieties (theory intersection), as a handle
/// whose free objects are computed by congruence intersection.
pub fn variety_join(p1: &NilPresentation, p2: &NilPresentation) -> NilVariety {
    NilVariety::Join(
        Box::new(NilVariety::Presented(p1.clone())),
        Box::new(NilVariety::Presented(p2.clone())),
    )
}

/// Meet of two presented varieties: presented by the union of the bases
/// at the coarser bound, with the finer nilpotence identity kept as an
/// explicit axiom.
pub fn variety_meet(p1: &NilPresentation, p2: &NilPresentation) -> NilPresentation {
    let d = p1.nil_bound().max(p2.nil_bound());
    let mut ids: Vec<Identity> = Vec::new();
    for p in [p1, p2] {
        ids.extend(p.basis().identities().iter().cloned());
        if p.nil_bound() < d {
            ids.push(Identity::zero(Word::linear(p.nil_bound() + 1)));
        }
    }
    NilPresentation::new(IdentityBasis::new(ids), d).unwrap()
}

/// Outcome of comparing two varieties within the common bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyComparison {
    Equal,
    /// The least identity (in the deterministic word order) holding in
    /// exactly one of the two varieties.
    Distinct { witness: Identity },
}

/// Decides equality of two varieties by comparing free objects of rank
/// `d` at the common bound `d` classwise; on failure reports the least
/// distinguishing identity.
pub fn compare_varieties(v1: &NilVariety, v2: &NilVariety) -> VarietyComparison {
    let d = v1.nil_bound().max(v2.nil_bound());
    let o1 = v1.free_object_at(d, d);
    let o2 = v2.free_object_at(d, d);
    let universe = Universe::new(d, d);
    let eq = |o: &FreeNilObject, a: usize, b: usize| {
        // b == count denotes the zero node.
        let cb = if b == universe.count {
            o.zero_class
        } else {
            o.word_class[b]
        };
        o.word_class[a] == cb
    };
    for a in 0..universe.count {
        for b in a + 1..=universe.count {
            if eq(&o1, a, b) != eq(&o2, a, b) {
                let u = universe.word_of(a);
                let witness = if b == universe.count {
                    Identity::zero(u)
                } else {
                    Identity::between(u, universe.word_of(b))
                };
                return VarietyComparison::Distinct { witness };
            }
        }
    }
    VarietyComparison::Equal
}

pub fn varieties_equal(v1: &NilVariety, v2: &NilVariety) -> bool {
    matches!(compare_varieties(v1, v2), VarietyComparison::Equal)
}

/// The variety `X_G` of a subgroup `G` of `S_n`: nil bound `n`, all words
/// of length `n` in fewer than `n` letters set to zero, and the length-`n`
/// permutational identity of every nontrivial element of `G`.
pub fn build_x_variety(g: &PermGroup) -> Result<NilPresentation, NilError> {
    let n = g.degree();
    if n < 2 {
        return Err(NilError::DegreeTooSmall { degree: n });
    }
    let mut ids: Vec<Identity> = nonlinear_shapes(n).into_iter().map(Identity::zero).collect();
    for pi in g.elements() {
        if !pi.is_identity() {
            ids.push(Identity::permutational(pi));
        }
    }
    NilPresentation::new(IdentityBasis::new(ids), n)
}

/// Subject of a certificate within a [`VarietyReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertSubject {
    Joins,
    Meets,
    XVarieties,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The two theories agree classwise at the common bound.
    EqualTheory { subject: CertSubject },
    /// An identity holding in exactly one side.
    Distinguishing {
        subject: CertSubject,
        identity: Identity,
        holds_in_first: bool,
    },
}

/// Verdict of the variety-level cancellability-failure reproduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyReport {
    pub joins_equal: bool,
    pub meets_equal: bool,
    pub x1_ne_x2: bool,
    pub certificates: Vec<Certificate>,
}

impl VarietyReport {
    /// All three verdicts in place: the subgroup-level witness transfers
    /// to the variety level.
    pub fn reproduces_witness(&self) -> bool {
        self.joins_equal && self.meets_equal && self.x1_ne_x2
    }
}

/// Given subgroups `V`, `X1`, `X2` of one `S_n` with `V v X1 = V v X2`,
/// `V ^ X1 = V ^ X2` and `X1 != X2` (checked), builds the varieties `X_V`,
/// `X_{X1}`, `X_{X2}` and reports whether the joins agree, the meets
/// agree, and the X varieties differ.
pub fn counterexample_suite(
    v: &PermGroup,
    x1: &PermGroup,
    x2: &PermGroup,
) -> Result<VarietyReport, NilError> {
    let n = v.degree();
    if x1.degree() != n || x2.degree() != n {
        return Err(NilError::DegreeMismatch);
    }
    let mut failures = Vec::new();
    if v.join(x1).unwrap() != v.join(x2).unwrap() {
        failures.push(GroupWitnessFailure::JoinsDiffer);
    }
    if v.intersection(x1).unwrap() != v.intersection(x2).unwrap() {
        failures.push(GroupWitnessFailure::MeetsDiffer);
    }
    if x1 == x2 {
        failures.push(GroupWitnessFailure::GroupsEqual);
    }
    if !failures.is_empty() {
        return Err(NilError::GroupWitnessInvalid(failures));
    }

    let xv = build_x_variety(v)?;
    let xx1 = build_x_variety(x1)?;
    let xx2 = build_x_variety(x2)?;

    let join1 = variety_join(&xv, &xx1);
    let join2 = variety_join(&xv, &xx2);
    let meet1 = NilVariety::Presented(variety_meet(&xv, &xx1));
    let meet2 = NilVariety::Presented(variety_meet(&xv, &xx2));
    let v1 = NilVariety::Presented(xx1.clone());
    let v2 = NilVariety::Presented(xx2.clone());

    let mut certificates = Vec::new();
    let mut check = |subject: CertSubject, a: &NilVariety, b: &NilVariety| -> bool {
        match compare_varieties(a, b) {
            VarietyComparison::Equal => {
                certificates.push(Certificate::EqualTheory { subject });
                true
            }
            VarietyComparison::Distinct { witness } => {
                let holds_in_first = a.satisfies(&witness);
                certificates.push(Certificate::Distinguishing {
                    subject,
                    identity: witness,
                    holds_in_first,
                });
                false
            }
        }
    };
    let joins_equal = check(CertSubject::Joins, &join1, &join2);
    let meets_equal = check(CertSubject::Meets, &meet1, &meet2);
    let x1_ne_x2 = !check(CertSubject::XVarieties, &v1, &v2);
    Ok(VarietyReport {
        joins_equal,
        meets_equal,
        x1_ne_x2,
        certificates,
    })
}

fn parse_system(lines: &[&str]) -> Vec<Identity> {
    lines
        .iter()
        .map(|s| parse::parse_identity(s).unwrap())
        .collect()
}

/// Whether the presentation satisfies `xyz = yxz = xzy` and `x^2 y = 0`,
/// the conditions singling out the qualifying nil component.
pub fn theorem_variety_check(pres: &NilPresentation) -> bool {
    parse_system(&["xyz = yxz", "xyz = xzy", "x^2y = 0"])
        .iter()
        .all(|id| pres.satisfies(id))
}

/// The four identity systems whose varieties are modular elements among
/// varieties with a length-3 permutational identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModPermut3System {
    I,
    II,
    III,
    IV,
}

impl ModPermut3System {
    pub fn identities(self) -> Vec<Identity> {
        match self {
            ModPermut3System::I => parse_system(&["xyz = zyx", "x^2y = 0"]),
            ModPermut3System::II => parse_system(&["xyz = yzx", "x^2y = 0"]),
            ModPermut3System::III => parse_system(&["xyz = yxz", "xyzt = xzty", "xy^2 = 0"]),
            ModPermut3System::IV => parse_system(&["xyz = xzy", "xyzt = yzxt", "x^2y = 0"]),
        }
    }
}

impl fmt::Display for ModPermut3System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModPermut3System::I => "(i)",
            ModPermut3System::II => "(ii)",
            ModPermut3System::III => "(iii)",
            ModPermut3System::IV => "(iv)",
        })
    }
}

/// The first of the four systems all of whose identities the presentation
/// satisfies, if any.
pub fn mod_permut3_check(pres: &NilPresentation) -> Option<ModPermut3System> {
    [
        ModPermut3System::I,
        ModPermut3System::II,
        ModPermut3System::III,
        ModPermut3System::IV,
    ]
    .into_iter()
    .find(|sys| sys.identities().iter().all(|id| pres.satisfies(id)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_basis, parse_identity};
    use crate::perm::NamedSubgroup;

    fn pres(basis: &str, d: usize) -> NilPresentation {
        NilPresentation::new(parse_basis(basis).unwrap(), d).unwrap()
    }

    /// The nil component of the classification: xyz = yxz = xzy, x^2y = 0.
    fn theorem_n() -> NilPresentation {
        pres("xyz = yxz = xzy; x^2y = 0", 3)
    }

    #[test]
    fn zero_multiplication_free_object() {
        let p = pres("xy = 0", 1);
        let obj = p.free_object(3);
        assert_eq!(obj.order(), 4);
        assert_eq!(obj.zero_class(), 3);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(obj.mult(a, b), obj.zero_class());
            }
        }
    }

    #[test]
    fn null_presentation_has_rank_plus_one_classes() {
        for k in 1..=4 {
            let p = pres("", 1);
            assert_eq!(p.free_object(k).order(), k + 1);
        }
    }

    #[test]
    fn theorem_variety_free_object_has_14_classes() {
        let obj = theorem_n().free_object(3);
        assert_eq!(obj.order(), 14);
        // One class holding all six linear length-3 words.
        let linear = obj.class_of(&Word::linear(3));
        assert_ne!(linear, obj.zero_class());
        for pi in PermGroup::symmetric(3).elements() {
            let w = Word::linear(3).apply_perm(pi).unwrap();
            assert_eq!(obj.class_of(&w), linear);
        }
        // Non-linear length-3 words are zero, including x^3.
        for shape in crate::words::nonlinear_shapes(3) {
            assert_eq!(obj.class_of(&shape), obj.zero_class());
        }
        // The nine length-2 words fall in nine distinct classes.
        let mut classes = alloc::collections::BTreeSet::new();
        for a in 1..=3u32 {
            for b in 1..=3u32 {
                classes.insert(obj.class_of(&Word::new(vec![a, b]).unwrap()));
            }
        }
        assert_eq!(classes.len(), 9);
    }

    #[test]
    fn x_variety_of_trivial_group_has_19_classes() {
        let g = PermGroup::trivial(3);
        let p = build_x_variety(&g).unwrap();
        // Basis: the four length-3 shapes on fewer than 3 letters.
        assert_eq!(p.basis().len(), 4);
        let obj = p.free_object(3);
        assert_eq!(obj.order(), 19);
    }

    #[test]
    fn x_variety_basis_of_t12() {
        let g = PermGroup::named(3, NamedSubgroup::Transposition(1, 2)).unwrap();
        let p = build_x_variety(&g).unwrap();
        assert_eq!(p.basis().len(), 5);
        assert!(p.satisfies(&parse_identity("xyz = yxz").unwrap()));
        assert!(!p.satisfies(&parse_identity("xyz = xzy").unwrap()));
        assert!(build_x_variety(&PermGroup::trivial(1)).is_err());
    }

    #[test]
    fn satisfies_examples_for_theorem_variety() {
        let p = theorem_n();
        assert!(p.satisfies(&parse_identity("xyz = zyx").unwrap()));
        assert!(p.satisfies(&parse_identity("xyx = 0").unwrap()));
        assert!(p.satisfies(&parse_identity("yx^2 = 0").unwrap()));
        assert!(!p.satisfies(&parse_identity("x^2 = 0").unwrap()));
        assert!(!p.satisfies(&parse_identity("xy = yx").unwrap()));
    }

    #[test]
    fn perm_group_of_theorem_variety_is_s3() {
        let out = theorem_n().perm_group(3);
        assert_eq!(out.group, PermGroup::symmetric(3));
        assert!(!out.nilpotence_case);
    }

    #[test]
    fn perm_group_of_system_i_is_t13() {
        let p = pres("xyz = zyx; x^2y = 0", 3);
        let out = p.perm_group(3);
        assert_eq!(
            out.group,
            PermGroup::named(3, NamedSubgroup::Transposition(1, 3)).unwrap()
        );
        assert!(!out.nilpotence_case);
    }

    #[test]
    fn nilpotence_case_flagged() {
        let p = pres("", 2);
        let out = p.perm_group(3);
        assert_eq!(out.group, PermGroup::symmetric(3));
        assert!(out.nilpotence_case);
    }

    #[test]
    fn long_sides_normalize_to_zero_form() {
        // xy = xyzt at bound 3: the right side is overlong, so this is
        // xy = 0.
        let p = pres("xy = xyzt", 3);
        assert_eq!(p.basis().len(), 1);
        assert!(p.basis().get(0).unwrap().is_zero());
        // Both sides overlong: dropped entirely.
        let p = pres("xyzt = tzyx", 3);
        assert!(p.basis().is_empty());
        assert!(NilPresentation::new(parse_basis("xy = yx").unwrap(), 0).is_err());
    }

    #[test]
    fn eq7_is_derivable_so_presentations_coincide() {
        let with_eq7 = pres("xyz = yxz = xzy; x^2y = 0; xyx = 0; yx^2 = 0", 3);
        assert!(varieties_equal(
            &NilVariety::Presented(theorem_n()),
            &NilVariety::Presented(with_eq7)
        ));
    }

    #[test]
    fn distinguishing_identity_between_x_t12_and_x_t23() {
        let t12 = PermGroup::named(3, NamedSubgroup::Transposition(1, 2)).unwrap();
        let t23 = PermGroup::named(3, NamedSubgroup::Transposition(2, 3)).unwrap();
        let x12 = build_x_variety(&t12).unwrap();
        let x23 = build_x_variety(&t23).unwrap();
        match compare_varieties(
            &NilVariety::Presented(x12.clone()),
            &NilVariety::Presented(x23.clone()),
        ) {
            VarietyComparison::Distinct { witness } => {
                // Least in the deterministic order: xyz = xzy, the
                // permutational identity of (2 3).
                assert_eq!(witness, parse_identity("xyz = xzy").unwrap());
                assert_ne!(x12.satisfies(&witness), x23.satisfies(&witness));
            }
            VarietyComparison::Equal => panic!("X_T12 and X_T23 must differ"),
        }
    }

    #[test]
    fn join_and_meet_of_x_varieties_invert_the_subgroup_ops() {
        let t12 = PermGroup::named(3, NamedSubgroup::Transposition(1, 2)).unwrap();
        let t23 = PermGroup::named(3, NamedSubgroup::Transposition(2, 3)).unwrap();
        let x12 = build_x_variety(&t12).unwrap();
        let x23 = build_x_variety(&t23).unwrap();
        // Meet of the varieties recovers the join of the groups.
        let meet = variety_meet(&x12, &x23);
        assert_eq!(meet.perm_group(3).group, PermGroup::symmetric(3));
        // Join of the varieties recovers the intersection of the groups.
        let join = variety_join(&x12, &x23);
        assert_eq!(join.perm_group(3).group, PermGroup::trivial(3));
    }

    #[test]
    fn join_is_idempotent() {
        let p = theorem_n();
        let join = variety_join(&p, &p);
        assert!(varieties_equal(&join, &NilVariety::Presented(p)));
    }

    #[test]
    fn basis_order_does_not_matter() {
        let a = pres("xyz = yxz = xzy; x^2y = 0", 3);
        let b = pres("x^2y = 0; xyz = xzy; xyz = yxz", 3);
        assert!(varieties_equal(
            &NilVariety::Presented(a),
            &NilVariety::Presented(b)
        ));
    }

    #[test]
    fn counterexample_triple_t13_t12_t23() {
        let g = |i, j| PermGroup::named(3, NamedSubgroup::Transposition(i, j)).unwrap();
        let report = counterexample_suite(&g(1, 3), &g(1, 2), &g(2, 3)).unwrap();
        assert!(report.joins_equal);
        assert!(report.meets_equal);
        assert!(report.x1_ne_x2);
        assert!(report.reproduces_witness());
        assert_eq!(report.certificates.len(), 3);
    }

    #[test]
    fn counterexample_rejects_bad_triples() {
        let g = |i, j| PermGroup::named(3, NamedSubgroup::Transposition(i, j)).unwrap();
        let s3 = PermGroup::symmetric(3);
        // V = S3 forces V ^ X1 = X1 != X2 = V ^ X2.
        match counterexample_suite(&s3, &g(1, 2), &g(2, 3)) {
            Err(NilError::GroupWitnessInvalid(reasons)) => {
                assert_eq!(reasons, vec![GroupWitnessFailure::MeetsDiffer]);
            }
            other => panic!("expected witness-invalid, got {other:?}"),
        }
        match counterexample_suite(&g(1, 3), &g(1, 2), &g(1, 2)) {
            Err(NilError::GroupWitnessInvalid(reasons)) => {
                assert!(reasons.contains(&GroupWitnessFailure::GroupsEqual));
            }
            other => panic!("expected witness-invalid, got {other:?}"),
        }
    }

    #[test]
    fn theorem_and_mod_permut3_classifiers() {
        assert!(theorem_variety_check(&theorem_n()));
        assert!(!theorem_variety_check(&pres("xyz = zyx; x^2y = 0", 3)));
        // Degenerate: everything of length 2 or more is zero.
        assert!(theorem_variety_check(&pres("xy = 0", 1)));

        assert_eq!(
            mod_permut3_check(&pres("xyz = zyx; x^2y = 0", 3)),
            Some(ModPermut3System::I)
        );
        assert_eq!(mod_permut3_check(&theorem_n()), Some(ModPermut3System::I));
        assert_eq!(mod_permut3_check(&pres("x^2y = 0", 3)), None);
        assert_eq!(
            mod_permut3_check(&pres("xyz = yzx; x^2y = 0", 3)),
            Some(ModPermut3System::II)
        );
    }

    #[test]
    fn presentation_parsing_with_header() {
        let p = NilPresentation::parse("nil_bound: 3\nxyz = zyx\nx^2y = 0").unwrap();
        assert_eq!(p.nil_bound(), 3);
        assert_eq!(p.basis().len(), 2);
        assert!(matches!(
            NilPresentation::parse("xyz = zyx"),
            Err(NilError::MissingBound)
        ));
        assert!(matches!(
            NilPresentation::parse("nil_bound: 3\nxyz ="),
            Err(NilError::Syntax(_))
        ));
    }

    #[test]
    fn free_object_as_semigroup_round_trips() {
        let obj = theorem_n().free_object(3);
        let s = obj.as_semigroup();
        assert_eq!(s.order(), obj.order());
        assert_eq!(s.label(obj.zero_class()), Some("0"));
    }
}
