//! Explicit finite lattices with materialized join/meet tables, plus the
//! element predicates used throughout the toolkit: modularity,
//! cancellability (with witnesses), complements, and witness shrinking.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Above this size the O(n^3) associativity sweep at construction is
/// skipped; the tables are least-upper-bound/greatest-lower-bound tables of
/// a verified partial order, for which associativity holds by construction.
const ASSOC_CHECK_LIMIT: usize = 320;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// The cover relation contains a directed cycle.
    CyclicCovers,
    /// Some pair of elements has no unique least upper bound or greatest
    /// lower bound; `(a, b)` is the offending pair.
    NotALattice { a: usize, b: usize, missing: Bound },
    IndexOutOfRange { index: usize, size: usize },
    /// A precondition of `shrink_witness` failed.
    PreconditionViolated(&'static str),
    /// No shrunken witness exists. Modularity of the element guarantees
    /// existence, so this indicates a bug in the caller or this crate.
    NoSuchElement,
    /// Label vector length does not match the element count.
    LabelCountMismatch { labels: usize, size: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Join,
    Meet,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::CyclicCovers => write!(f, "cover relation contains a cycle"),
            LatticeError::NotALattice { a, b, missing } => {
                let kind = match missing {
                    Bound::Join => "least upper bound",
                    Bound::Meet => "greatest lower bound",
                };
                write!(f, "not a lattice: pair ({a}, {b}) has no unique {kind}")
            }
            LatticeError::IndexOutOfRange { index, size } => {
                write!(f, "element index {index} out of range for size {size}")
            }
            LatticeError::PreconditionViolated(what) => {
                write!(f, "precondition violated: {what}")
            }
            LatticeError::NoSuchElement => {
                write!(f, "no shrunken witness exists (internal invariant broken)")
            }
            LatticeError::LabelCountMismatch { labels, size } => {
                write!(f, "{labels} labels supplied for {size} elements")
            }
        }
    }
}

impl core::error::Error for LatticeError {}

/// Which special-element predicate to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialKind {
    Modular,
    Cancellable,
}

/// Witness that an element is not cancellable: a pair `y != z` with
/// `x v y = x v z` and `x ^ y = x ^ z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessPair {
    pub y: usize,
    pub z: usize,
    pub kind: WitnessKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    CancellabilityFailure,
}

/// A finite lattice stored as a full order relation plus total join and
/// meet tables. Immutable after construction; construction validates the
/// lattice axioms and fails fast on anything that is not a genuine lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    size: usize,
    leq: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
    labels: Option<Vec<String>>,
}

impl FiniteLattice {
    /// Builds a lattice from its cover relation: `(a, b)` means `a` is
    /// covered by `b`. The order is the reflexive-transitive closure of the
    /// covers; join and meet tables are computed and every pair is checked
    /// for a unique least upper bound and greatest lower bound.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::NotALattice {
                a: 0,
                b: 0,
                missing: Bound::Join,
            });
        }
        for &(a, b) in covers {
            for idx in [a, b] {
                if idx >= n {
                    return Err(LatticeError::IndexOutOfRange { index: idx, size: n });
                }
            }
            if a == b {
                return Err(LatticeError::CyclicCovers);
            }
        }

        // Reflexive-transitive closure; cycles surface as a <= b <= a with
        // a != b, which antisymmetry rejects below.
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in covers {
            leq[a * n + b] = true;
        }
        // Floyd-Warshall style closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a * n + b] && leq[b * n + a] {
                    return Err(LatticeError::CyclicCovers);
                }
            }
        }
        Self::from_order(n, leq)
    }

    /// Builds a lattice from a full `<=` relation (row-major, `leq[a*n+b]`
    /// meaning `a <= b`). The relation must be a partial order in which
    /// every pair has a unique least upper bound and greatest lower bound.
    pub fn from_order(n: usize, leq: Vec<bool>) -> Result<Self, LatticeError> {
        assert_eq!(leq.len(), n * n, "order relation has wrong shape");
        assert!(n > 0, "empty lattice");
        // Partial-order axioms.
        for a in 0..n {
            assert!(leq[a * n + a], "order not reflexive at {a}");
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a * n + b] && leq[b * n + a] {
                    return Err(LatticeError::CyclicCovers);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if leq[a * n + b] {
                    for c in 0..n {
                        if leq[b * n + c] {
                            assert!(leq[a * n + c], "order not transitive at {a},{b},{c}");
                        }
                    }
                }
            }
        }

        // Bitset rows of up-sets and down-sets speed up the bound scans.
        let w = n.div_ceil(64);
        let mut up = vec![0u64; n * w];
        let mut down = vec![0u64; n * w];
        for a in 0..n {
            for b in 0..n {
                if leq[a * n + b] {
                    up[a * w + b / 64] |= 1 << (b % 64);
                    down[b * w + a / 64] |= 1 << (a % 64);
                }
            }
        }
        let subset = |x: &[u64], y: &[u64]| x.iter().zip(y).all(|(p, q)| p & !q == 0);

        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        let mut common = vec![0u64; w];
        for a in 0..n {
            for b in a..n {
                // Least upper bound: the candidate whose up-set contains all
                // common upper bounds.
                for (i, c) in common.iter_mut().enumerate() {
                    *c = up[a * w + i] & up[b * w + i];
                }
                let mut lub = None;
                for c in iter_bits(&common, n) {
                    if subset(&common, &up[c * w..c * w + w]) {
                        lub = Some(c);
                        break;
                    }
                }
                let Some(j) = lub else {
                    return Err(LatticeError::NotALattice {
                        a,
                        b,
                        missing: Bound::Join,
                    });
                };
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;

                for (i, c) in common.iter_mut().enumerate() {
                    *c = down[a * w + i] & down[b * w + i];
                }
                let mut glb = None;
                for c in iter_bits(&common, n) {
                    if subset(&common, &down[c * w..c * w + w]) {
                        glb = Some(c);
                        break;
                    }
                }
                let Some(m) = glb else {
                    return Err(LatticeError::NotALattice {
                        a,
                        b,
                        missing: Bound::Meet,
                    });
                };
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
            }
        }

        let mut lat = FiniteLattice {
            size: n,
            leq,
            join,
            meet,
            bottom: 0,
            top: 0,
            labels: None,
        };
        lat.bottom = (0..n).fold(0, |acc, x| lat.meet(acc, x));
        lat.top = (0..n).fold(0, |acc, x| lat.join(acc, x));
        for x in 0..n {
            assert!(lat.leq(lat.bottom, x) && lat.leq(x, lat.top));
        }
        lat.validate_tables();
        Ok(lat)
    }

    /// Exhaustive checks of the algebraic laws the tables must satisfy.
    /// Commutativity, idempotence and absorption are O(n^2); the O(n^3)
    /// associativity sweep is capped at `ASSOC_CHECK_LIMIT`.
    fn validate_tables(&self) {
        let n = self.size;
        for a in 0..n {
            assert_eq!(self.join(a, a), a, "join not idempotent");
            assert_eq!(self.meet(a, a), a, "meet not idempotent");
            for b in 0..n {
                assert_eq!(self.join(a, b), self.join(b, a), "join not commutative");
                assert_eq!(self.meet(a, b), self.meet(b, a), "meet not commutative");
                assert_eq!(self.join(a, self.meet(a, b)), a, "absorption failed");
                assert_eq!(self.meet(a, self.join(a, b)), a, "absorption failed");
                // Compatibility of the tables with the order.
                assert_eq!(self.leq(a, b), self.join(a, b) == b);
                assert_eq!(self.leq(a, b), self.meet(a, b) == a);
            }
        }
        if n <= ASSOC_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(
                            self.join(self.join(a, b), c),
                            self.join(a, self.join(b, c)),
                            "join not associative"
                        );
                        assert_eq!(
                            self.meet(self.meet(a, b), c),
                            self.meet(a, self.meet(b, c)),
                            "meet not associative"
                        );
                    }
                }
            }
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn incomparable(&self, a: usize, b: usize) -> bool {
        !self.leq(a, b) && !self.leq(b, a)
    }

    /// Attaches display labels, one per element.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LatticeError> {
        if labels.len() != self.size {
            return Err(LatticeError::LabelCountMismatch {
                labels: labels.len(),
                size: self.size,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[x].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The cover relation (transitive reduction of the order): `(a, b)`
    /// with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = (0..n)
                    .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Length of a longest chain from bottom to top, counted in covers.
    pub fn height(&self) -> usize {
        let n = self.size;
        let covers = self.covers();
        // Longest path in the (acyclic) cover digraph, by rank propagation.
        let mut rank = vec![0usize; n];
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in &covers {
                if rank[a] + 1 > rank[b] {
                    rank[b] = rank[a] + 1;
                    changed = true;
                }
            }
        }
        rank.into_iter().max().unwrap_or(0)
    }

    fn check_index(&self, x: usize) -> Result<(), LatticeError> {
        if x >= self.size {
            Err(LatticeError::IndexOutOfRange {
                index: x,
                size: self.size,
            })
        } else {
            Ok(())
        }
    }

    /// Modular element test: for all `y <= z`,
    /// `(x v y) ^ z = (x ^ z) v y`.
    pub fn is_modular_element(&self, x: usize) -> Result<bool, LatticeError> {
        self.check_index(x)?;
        for y in 0..self.size {
            for z in 0..self.size {
                if self.leq(y, z) && self.meet(self.join(x, y), z) != self.join(self.meet(x, z), y)
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// First violation of the modular-element law for `x`, as a pair
    /// `(y, z)` with `y <= z`, scanning in index order.
    pub fn modular_violation(&self, x: usize) -> Result<Option<(usize, usize)>, LatticeError> {
        self.check_index(x)?;
        for y in 0..self.size {
            for z in 0..self.size {
                if self.leq(y, z) && self.meet(self.join(x, y), z) != self.join(self.meet(x, z), y)
                {
                    return Ok(Some((y, z)));
                }
            }
        }
        Ok(None)
    }

    /// Cancellable element test: `x v y = x v z` and `x ^ y = x ^ z`
    /// jointly force `y = z`.
    pub fn is_cancellable_element(&self, x: usize) -> Result<bool, LatticeError> {
        Ok(self.cancellable_witness(x)?.is_none())
    }

    /// The lexicographically least witness pair `(y, z)` refuting
    /// cancellability of `x`, if any.
    pub fn cancellable_witness(&self, x: usize) -> Result<Option<WitnessPair>, LatticeError> {
        self.check_index(x)?;
        for y in 0..self.size {
            for z in 0..self.size {
                if y != z
                    && self.join(x, y) == self.join(x, z)
                    && self.meet(x, y) == self.meet(x, z)
                {
                    return Ok(Some(WitnessPair {
                        y,
                        z,
                        kind: WitnessKind::CancellabilityFailure,
                    }));
                }
            }
        }
        Ok(None)
    }

    /// All elements satisfying the given predicate, in ascending index
    /// order.
    pub fn special_elements(&self, kind: SpecialKind) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| match kind {
                SpecialKind::Modular => self.is_modular_element(x).unwrap(),
                SpecialKind::Cancellable => self.is_cancellable_element(x).unwrap(),
            })
            .collect()
    }

    /// Given a modular but non-cancellable `x` and a witness pair `(y, z)`,
    /// finds the least `x' <= x` with `x' v y = x' v z`, `x' ^ y = x' ^ z`
    /// and `y v z = x' v y`.
    pub fn shrink_witness(&self, x: usize, y: usize, z: usize) -> Result<usize, LatticeError> {
        self.check_index(x)?;
        self.check_index(y)?;
        self.check_index(z)?;
        if !self.is_modular_element(x)? {
            return Err(LatticeError::PreconditionViolated("x is not modular"));
        }
        if y == z || self.join(x, y) != self.join(x, z) || self.meet(x, y) != self.meet(x, z) {
            return Err(LatticeError::PreconditionViolated(
                "(y, z) is not a cancellability witness for x",
            ));
        }
        let yz = self.join(y, z);
        for cand in 0..self.size {
            if self.leq(cand, x)
                && self.join(cand, y) == self.join(cand, z)
                && self.meet(cand, y) == self.meet(cand, z)
                && self.join(cand, y) == yz
            {
                // Re-check the posted equations before handing the witness out.
                assert!(self.leq(cand, x));
                assert_eq!(self.join(cand, y), self.join(cand, z));
                assert_eq!(self.meet(cand, y), self.meet(cand, z));
                assert_eq!(self.join(y, z), self.join(cand, y));
                return Ok(cand);
            }
        }
        Err(LatticeError::NoSuchElement)
    }

    /// All complements of `x`: elements `c` with `x v c = top` and
    /// `x ^ c = bottom`, ascending.
    pub fn complements(&self, x: usize) -> Vec<usize> {
        assert!(x < self.size, "element index out of range");
        (0..self.size)
            .filter(|&c| self.join(x, c) == self.top && self.meet(x, c) == self.bottom)
            .collect()
    }
}

fn iter_bits<'a>(words: &'a [u64], n: usize) -> impl Iterator<Item = usize> + 'a {
    (0..n).filter(move |&i| words[i / 64] >> (i % 64) & 1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pentagon N5: 0 < a < c < 1 and b incomparable to a, c.
    /// Indices: 0=bottom, 1=a, 2=b, 3=c, 4=top.
    pub(crate) fn pentagon() -> FiniteLattice {
        FiniteLattice::from_covers(5, &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)]).unwrap()
    }

    /// Diamond M3: bottom, three atoms, top.
    fn diamond_m3() -> FiniteLattice {
        FiniteLattice::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    fn chain(n: usize) -> FiniteLattice {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        FiniteLattice::from_covers(n, &covers).unwrap()
    }

    #[test]
    fn one_point_lattice() {
        let l = FiniteLattice::from_covers(1, &[]).unwrap();
        assert_eq!(l.size(), 1);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 0);
        assert_eq!(l.height(), 0);
    }

    #[test]
    fn missing_upper_bound_is_rejected() {
        let err = FiniteLattice::from_covers(3, &[(0, 1), (0, 2)]).unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotALattice {
                a: 1,
                b: 2,
                missing: Bound::Join
            }
        );
    }

    #[test]
    fn cyclic_covers_rejected() {
        let err = FiniteLattice::from_covers(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert_eq!(err, LatticeError::CyclicCovers);
        let err = FiniteLattice::from_covers(2, &[(0, 0)]).unwrap_err();
        assert_eq!(err, LatticeError::CyclicCovers);
    }

    #[test]
    fn cover_index_out_of_range() {
        let err = FiniteLattice::from_covers(2, &[(0, 5)]).unwrap_err();
        assert_eq!(err, LatticeError::IndexOutOfRange { index: 5, size: 2 });
    }

    #[test]
    fn fig1_shape_lattice_has_height_two() {
        // Bottom under four middles, four middles under top.
        let covers = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 5),
            (2, 5),
            (3, 5),
            (4, 5),
        ];
        let l = FiniteLattice::from_covers(6, &covers).unwrap();
        assert_eq!(l.height(), 2);
        assert_eq!(l.covers().len(), 8);
    }

    #[test]
    fn pentagon_modularity() {
        let l = pentagon();
        assert!(!l.is_modular_element(2).unwrap(), "b must not be modular");
        assert!(l.is_modular_element(1).unwrap(), "a must be modular");
        assert_eq!(l.special_elements(SpecialKind::Modular), vec![0, 1, 3, 4]);
        // The violating pair for b is (a, c).
        assert_eq!(l.modular_violation(2).unwrap(), Some((1, 3)));
    }

    #[test]
    fn chain_elements_are_cancellable_and_modular() {
        let l = chain(4);
        for x in 0..4 {
            assert!(l.is_modular_element(x).unwrap());
            assert!(l.is_cancellable_element(x).unwrap());
        }
        assert_eq!(l.special_elements(SpecialKind::Cancellable), vec![0, 1, 2, 3]);
    }

    #[test]
    fn diamond_atoms_not_cancellable() {
        let l = diamond_m3();
        for atom in 1..=3 {
            let w = l.cancellable_witness(atom).unwrap().unwrap();
            assert_eq!(w.kind, WitnessKind::CancellabilityFailure);
            assert_ne!(w.y, w.z);
            assert_ne!(w.y, atom);
            assert_ne!(w.z, atom);
        }
        // Witness for atom 1 is the least pair (2, 3).
        let w = l.cancellable_witness(1).unwrap().unwrap();
        assert_eq!((w.y, w.z), (2, 3));
        assert!(l.is_cancellable_element(0).unwrap());
        assert!(l.is_cancellable_element(4).unwrap());
    }

    #[test]
    fn shrink_witness_on_diamond() {
        let l = diamond_m3();
        assert_eq!(l.shrink_witness(1, 2, 3).unwrap(), 1);
    }

    #[test]
    fn shrink_witness_ignores_extra_bottom() {
        // M3 with a new bottom below the old one; indices shift by the
        // construction: 0 = new bottom, 1 = old bottom, 2..=4 atoms, 5 top.
        let covers = [(0, 1), (1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)];
        let l = FiniteLattice::from_covers(6, &covers).unwrap();
        assert_eq!(l.shrink_witness(2, 3, 4).unwrap(), 2);
    }

    #[test]
    fn shrink_witness_preconditions() {
        let l = diamond_m3();
        // (y, z) not a witness: join(1, 0) = 1 != join(1, 2).
        assert_eq!(
            l.shrink_witness(1, 0, 2).unwrap_err(),
            LatticeError::PreconditionViolated("(y, z) is not a cancellability witness for x")
        );
        let p = pentagon();
        assert_eq!(
            p.shrink_witness(2, 1, 3).unwrap_err(),
            LatticeError::PreconditionViolated("x is not modular")
        );
    }

    #[test]
    fn complements_of_top_is_bottom() {
        let l = diamond_m3();
        assert_eq!(l.complements(4), vec![0]);
        assert_eq!(l.complements(1), vec![2, 3]);
        let c = chain(3);
        assert_eq!(c.complements(2), vec![0]);
        assert_eq!(c.complements(1), Vec::<usize>::new());
    }

    #[test]
    fn out_of_range_errors() {
        let l = chain(2);
        assert!(matches!(
            l.is_modular_element(7),
            Err(LatticeError::IndexOutOfRange { index: 7, size: 2 })
        ));
        assert!(matches!(
            l.cancellable_witness(2),
            Err(LatticeError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn labels_round_trip() {
        use alloc::string::ToString;
        let l = chain(2)
            .with_labels(vec!["bot".to_string(), "top".to_string()])
            .unwrap();
        assert_eq!(l.label(0), Some("bot"));
        assert_eq!(l.label(1), Some("top"));
        assert!(chain(2).with_labels(vec!["x".to_string()]).is_err());
    }
}
