//! Permutations on `{1..n}` and element-enumerated permutation groups.
//!
//! The composition convention is left-to-right throughout: `i (pq) = (i p) q`.
//! Points are 0-based internally and 1-based in cycle notation.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    DegreeMismatch { left: usize, right: usize },
    DegreeTooLarge { degree: usize, max: usize },
    NotABijection,
    BadIndices(&'static str),
    BadCycleNotation(String),
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::DegreeMismatch { left, right } => {
                write!(f, "degree mismatch: {left} vs {right}")
            }
            PermError::DegreeTooLarge { degree, max } => {
                write!(f, "degree {degree} exceeds supported maximum {max}")
            }
            PermError::NotABijection => write!(f, "image sequence is not a bijection"),
            PermError::BadIndices(what) => write!(f, "bad indices: {what}"),
            PermError::BadCycleNotation(s) => write!(f, "bad cycle notation: {s}"),
        }
    }
}

impl core::error::Error for PermError {}

/// A permutation of `{1..n}`, stored as the image sequence of the 0-based
/// points. Ordering is lexicographic on images, which fixes the canonical
/// order used everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From 0-based images; validates bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotABijection);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4)`; `()` is the
    /// identity. Fixed points may be omitted.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(PermError::BadCycleNotation(String::from(s)));
        }
        while !rest.is_empty() {
            let Some(start) = rest.strip_prefix('(') else {
                return Err(PermError::BadCycleNotation(String::from(s)));
            };
            let Some(close) = start.find(')') else {
                return Err(PermError::BadCycleNotation(String::from(s)));
            };
            let body = &start[..close];
            rest = start[close + 1..].trim_start();
            let mut cycle = Vec::new();
            for tok in body.split_whitespace() {
                let p: usize = tok
                    .parse()
                    .map_err(|_| PermError::BadCycleNotation(String::from(s)))?;
                if p == 0 || p > n {
                    return Err(PermError::BadCycleNotation(String::from(s)));
                }
                cycle.push(p - 1);
            }
            if cycle.len() == 1 {
                return Err(PermError::BadCycleNotation(String::from(s)));
            }
            for &p in &cycle {
                if moved[p] {
                    return Err(PermError::BadCycleNotation(String::from(s)));
                }
                moved[p] = true;
            }
            for i in 0..cycle.len() {
                images[cycle[i]] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Left-to-right composition: `i (self * other) = (i self) other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_even(&self) -> bool {
        // Parity from the cycle type.
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Cycle notation, 1-based, cycles sorted by least moved point,
    /// fixed points omitted; the identity prints as `()`.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&format!("{}", p + 1));
                p = self.images[p];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

/// Tags for the conventionally named subgroups of small symmetric
/// groups. Point arguments are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedSubgroup {
    Trivial,
    Symmetric,
    Alternating,
    /// Stabilizer of one point.
    Stab(usize),
    /// Generated by the transposition `(i j)`.
    Transposition(usize, usize),
    /// Generated by the 3-cycle `(i j k)`.
    Cycle3(usize, usize, usize),
    /// Generated by the 4-cycle `(i j k l)`.
    Cycle4(usize, usize, usize, usize),
    /// Generated by the disjoint transpositions `(i j)` and `(k l)`;
    /// degree 4 only.
    DisjointPair(usize, usize, usize, usize),
    /// The Klein four-group `{e, (12)(34), (13)(24), (14)(23)}`;
    /// degree 4 only.
    KleinFour,
}

/// An element-enumerated subgroup of some symmetric group. Elements are
/// kept sorted in the canonical (lexicographic-images) order; the set is
/// validated to contain the identity and be closed under composition and
/// inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(n: usize) -> Self {
        PermGroup {
            degree: n,
            elements: vec![Permutation::identity(n)],
        }
    }

    /// The full symmetric group, elements in canonical order.
    pub fn symmetric(n: usize) -> Self {
        let mut elements = Vec::new();
        let mut current = vec![0usize; n];
        fn rec(n: usize, pos: usize, used: &mut u32, current: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if pos == n {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for img in 0..n {
                if *used >> img & 1 == 0 {
                    *used |= 1 << img;
                    current[pos] = img;
                    rec(n, pos + 1, used, current, out);
                    *used &= !(1 << img);
                }
            }
        }
        let mut used = 0u32;
        rec(n, 0, &mut used, &mut current, &mut elements);
        PermGroup {
            degree: n,
            elements,
        }
    }

    pub fn alternating(n: usize) -> Self {
        let elements = Self::symmetric(n)
            .elements
            .into_iter()
            .filter(Permutation::is_even)
            .collect();
        PermGroup {
            degree: n,
            elements,
        }
    }

    /// Least subgroup containing the generators (closure enumeration).
    pub fn generate(n: usize, gens: &[Permutation]) -> Result<Self, PermError> {
        for g in gens {
            if g.degree() != n {
                return Err(PermError::DegreeMismatch {
                    left: n,
                    right: g.degree(),
                });
            }
        }
        let mut elements: BTreeSet<Permutation> = BTreeSet::new();
        elements.insert(Permutation::identity(n));
        let mut queue: Vec<Permutation> = gens.to_vec();
        while let Some(p) = queue.pop() {
            if elements.contains(&p) {
                continue;
            }
            elements.insert(p.clone());
            queue.push(p.inverse());
            for q in &elements {
                queue.push(p.compose(q).unwrap());
                queue.push(q.compose(&p).unwrap());
            }
        }
        Ok(PermGroup {
            degree: n,
            elements: elements.into_iter().collect(),
        })
    }

    /// Builds a group from an element list that is already closed;
    /// asserts the group axioms.
    pub fn from_elements(n: usize, elements: Vec<Permutation>) -> Result<Self, PermError> {
        let set: BTreeSet<Permutation> = elements.into_iter().collect();
        for p in &set {
            if p.degree() != n {
                return Err(PermError::DegreeMismatch {
                    left: n,
                    right: p.degree(),
                });
            }
        }
        let group = PermGroup {
            degree: n,
            elements: set.into_iter().collect(),
        };
        if !group.contains(&Permutation::identity(n)) {
            return Err(PermError::BadIndices("element set lacks the identity"));
        }
        for p in &group.elements {
            if !group.contains(&p.inverse()) {
                return Err(PermError::BadIndices("element set not closed under inverse"));
            }
            for q in &group.elements {
                if !group.contains(&p.compose(q).unwrap()) {
                    return Err(PermError::BadIndices(
                        "element set not closed under composition",
                    ));
                }
            }
        }
        Ok(group)
    }

    /// Builds a named subgroup from its tag.
    pub fn named(n: usize, tag: NamedSubgroup) -> Result<Self, PermError> {
        let check = |points: &[usize]| -> Result<(), PermError> {
            let mut seen = BTreeSet::new();
            for &p in points {
                if p == 0 || p > n {
                    return Err(PermError::BadIndices("point out of range"));
                }
                if !seen.insert(p) {
                    return Err(PermError::BadIndices("points must be distinct"));
                }
            }
            Ok(())
        };
        let cycle = |points: &[usize]| -> Permutation {
            let mut images: Vec<usize> = (0..n).collect();
            for w in 0..points.len() {
                images[points[w] - 1] = points[(w + 1) % points.len()] - 1;
            }
            Permutation { images }
        };
        match tag {
            NamedSubgroup::Trivial => Ok(Self::trivial(n)),
            NamedSubgroup::Symmetric => Ok(Self::symmetric(n)),
            NamedSubgroup::Alternating => Ok(Self::alternating(n)),
            NamedSubgroup::Stab(i) => {
                check(&[i])?;
                let elements = Self::symmetric(n)
                    .elements
                    .into_iter()
                    .filter(|p| p.apply(i - 1) == i - 1)
                    .collect();
                Ok(PermGroup {
                    degree: n,
                    elements,
                })
            }
            NamedSubgroup::Transposition(i, j) => {
                check(&[i, j])?;
                Self::generate(n, &[cycle(&[i, j])])
            }
            NamedSubgroup::Cycle3(i, j, k) => {
                check(&[i, j, k])?;
                Self::generate(n, &[cycle(&[i, j, k])])
            }
            NamedSubgroup::Cycle4(i, j, k, l) => {
                check(&[i, j, k, l])?;
                Self::generate(n, &[cycle(&[i, j, k, l])])
            }
            NamedSubgroup::DisjointPair(i, j, k, l) => {
                if n != 4 {
                    return Err(PermError::BadIndices(
                        "disjoint-transposition pairs are defined for degree 4 only",
                    ));
                }
                check(&[i, j, k, l])?;
                Self::generate(n, &[cycle(&[i, j]), cycle(&[k, l])])
            }
            NamedSubgroup::KleinFour => {
                if n != 4 {
                    return Err(PermError::BadIndices(
                        "the Klein four-group is defined for degree 4 only",
                    ));
                }
                Self::generate(n, &[cycle(&[1, 2]).compose(&cycle(&[3, 4])).unwrap(),
                                    cycle(&[1, 3]).compose(&cycle(&[2, 4])).unwrap()])
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    /// Intersection of two subgroups of the same symmetric group.
    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup, PermError> {
        if self.degree != other.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let elements = self
            .elements
            .iter()
            .filter(|p| other.contains(p))
            .cloned()
            .collect();
        Ok(PermGroup {
            degree: self.degree,
            elements,
        })
    }

    /// The subgroup generated by the union of two subgroups.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup, PermError> {
        if self.degree != other.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let gens: Vec<Permutation> = self
            .elements
            .iter()
            .chain(other.elements.iter())
            .cloned()
            .collect();
        Self::generate(self.degree, &gens)
    }

    /// Sorted list of cycle strings, the serialization format for groups.
    pub fn cycle_strings(&self) -> Vec<String> {
        self.elements.iter().map(Permutation::cycle_string).collect()
    }
}

impl PartialOrd for PermGroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PermGroup {
    /// Canonical subgroup order: by order, then by the sorted element list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.elements.len().cmp(&other.elements.len()))
            .then_with(|| self.elements.cmp(&other.elements))
    }
}
