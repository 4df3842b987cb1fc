//! Concrete finite semigroups given by Cayley tables, used as an
//! independent model-theoretic oracle for identity satisfaction.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::words::{Identity, Word};

/// Exhaustive assignment checking refuses to run beyond this many
/// evaluations; the module is an oracle and must never sample.
const MAX_EVALUATIONS: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    EmptyTable,
    NotSquare { row: usize, expected: usize, got: usize },
    EntryOutOfRange { row: usize, col: usize, value: usize },
    /// Associativity fails at `(a b) c != a (b c)`.
    NotAssociative { a: usize, b: usize, c: usize },
    SizeExceeded { required: u128, limit: u128 },
    ZeroNotSupported,
    LabelCountMismatch,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::EmptyTable => write!(f, "semigroup table must be nonempty"),
            ModelError::NotSquare { row, expected, got } => {
                write!(f, "row {row} has {got} entries, expected {expected}")
            }
            ModelError::EntryOutOfRange { row, col, value } => {
                write!(f, "entry ({row}, {col}) = {value} out of range")
            }
            ModelError::NotAssociative { a, b, c } => {
                write!(f, "not associative at triple ({a}, {b}, {c})")
            }
            ModelError::SizeExceeded { required, limit } => {
                write!(f, "{required} evaluations exceed the exhaustive-check limit {limit}")
            }
            ModelError::ZeroNotSupported => {
                write!(f, "zero identities are not supported by this check")
            }
            ModelError::LabelCountMismatch => write!(f, "label count does not match order"),
        }
    }
}

impl core::error::Error for ModelError {}

/// A finite semigroup as a validated multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteSemigroup {
    /// Validates shape, entry range and associativity (reporting the first
    /// failing triple).
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, ModelError> {
        let m = table.len();
        if m == 0 {
            return Err(ModelError::EmptyTable);
        }
        let mut flat = Vec::with_capacity(m * m);
        for (r, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(ModelError::NotSquare {
                    row: r,
                    expected: m,
                    got: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= m {
                    return Err(ModelError::EntryOutOfRange { row: r, col: c, value: v });
                }
                flat.push(v);
            }
        }
        let s = FiniteSemigroup {
            order: m,
            table: flat,
            labels: None,
        };
        for a in 0..m {
            for b in 0..m {
                let ab = s.product(a, b);
                for c in 0..m {
                    if s.product(ab, c) != s.product(a, s.product(b, c)) {
                        return Err(ModelError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn from_table_with_labels(
        table: &[Vec<usize>],
        labels: Vec<String>,
    ) -> Result<Self, ModelError> {
        let mut s = Self::from_table(table)?;
        if labels.len() != s.order {
            return Err(ModelError::LabelCountMismatch);
        }
        s.labels = Some(labels);
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[x].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.product(a, b)).collect())
            .collect()
    }

    fn eval(&self, w: &Word, assignment: &[usize]) -> usize {
        let mut letters = w.letters().iter();
        let first = *letters.next().unwrap();
        let mut acc = assignment[first as usize - 1];
        for &l in letters {
            acc = self.product(acc, assignment[l as usize - 1]);
        }
        acc
    }

    /// Whether the identity holds under every assignment of letters to
    /// elements. A `u = 0` identity is checked through its expanded pair
    /// `x u = u`, `u x = u`.
    pub fn satisfies_identity(&self, id: &Identity) -> Result<bool, ModelError> {
        let Some(rhs) = id.rhs_word() else {
            let [left, right] = id.expand_zero().unwrap();
            return Ok(self.satisfies_identity(&left)? && self.satisfies_identity(&right)?);
        };
        // Letters are renamed to a compact range for the assignment table.
        let letters: Vec<u32> = id.content().into_iter().collect();
        let renumber = |w: &Word| -> Word {
            Word::new(
                w.letters()
                    .iter()
                    .map(|l| letters.iter().position(|x| x == l).unwrap() as u32 + 1)
                    .collect(),
            )
            .unwrap()
        };
        let lhs = renumber(id.lhs());
        let rhs = renumber(rhs);
        let k = letters.len() as u32;

        let required = (self.order as u128).checked_pow(k).ok_or(ModelError::SizeExceeded {
            required: u128::MAX,
            limit: MAX_EVALUATIONS,
        })?;
        if required > MAX_EVALUATIONS {
            return Err(ModelError::SizeExceeded {
                required,
                limit: MAX_EVALUATIONS,
            });
        }

        let mut assignment = vec![0usize; k as usize];
        loop {
            if self.eval(&lhs, &assignment) != self.eval(&rhs, &assignment) {
                return Ok(false);
            }
            // Odometer over assignments.
            let mut pos = k as usize;
            loop {
                if pos == 0 {
                    return Ok(true);
                }
                pos -= 1;
                if assignment[pos] + 1 < self.order {
                    assignment[pos] += 1;
                    for slot in assignment[pos + 1..].iter_mut() {
                        *slot = 0;
                    }
                    break;
                }
                assignment[pos] = 0;
            }
        }
    }

    /// The element absorbing on both sides, if any.
    pub fn absorbing_zero(&self) -> Option<usize> {
        (0..self.order)
            .find(|&z| (0..self.order).all(|x| self.product(z, x) == z && self.product(x, z) == z))
    }

    /// Least `n` such that every product of `n` elements equals a single
    /// absorbing zero, if the semigroup has one and is nilpotent.
    pub fn nilpotency_degree(&self) -> Option<usize> {
        let zero = self.absorbing_zero()?;
        // Products of length n, shrinking as n grows.
        let mut current: BTreeSet<usize> = (0..self.order).collect();
        let mut n = 1;
        loop {
            if current.len() == 1 && current.contains(&zero) {
                return Some(n);
            }
            let next: BTreeSet<usize> = current
                .iter()
                .flat_map(|&p| (0..self.order).map(move |x| (p, x)))
                .map(|(p, x)| self.product(p, x))
                .collect();
            if next == current {
                return None;
            }
            current = next;
            n += 1;
        }
    }
}

/// The two-element meet-semilattice `{0, 1}` under multiplication = min.
pub fn semilattice_sl() -> FiniteSemigroup {
    FiniteSemigroup::from_table_with_labels(
        &[vec![0, 0], vec![0, 1]],
        vec![String::from("0"), String::from("1")],
    )
    .unwrap()
}

/// The order-`m` semigroup in which every product equals element 0.
pub fn null_semigroup(m: usize) -> FiniteSemigroup {
    assert!(m >= 1, "null semigroup needs at least one element");
    let table: Vec<Vec<usize>> = (0..m).map(|_| vec![0; m]).collect();
    FiniteSemigroup::from_table(&table).unwrap()
}

/// Oracle for the equational theory of semilattices: `u = v` holds in all
/// semilattices iff both sides use the same set of letters.
pub fn sl_identity_check(id: &Identity) -> Result<bool, ModelError> {
    let Some(rhs) = id.rhs_word() else {
        return Err(ModelError::ZeroNotSupported);
    };
    Ok(id.lhs().content() == rhs.content())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_identity;

    fn id(s: &str) -> Identity {
        parse_identity(s).unwrap()
    }

    #[test]
    fn meet_semilattice_is_valid() {
        let s = semilattice_sl();
        assert_eq!(s.order(), 2);
        assert!(s.satisfies_identity(&id("xy = yx")).unwrap());
        assert!(s.satisfies_identity(&id("x^2 = x")).unwrap());
        assert!(s.satisfies_identity(&id("xyz = zyx")).unwrap());
    }

    #[test]
    fn non_associative_table_rejected() {
        // ab = b, ba = a, aa = b, bb = a.
        let err = FiniteSemigroup::from_table(&[vec![1, 1], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, ModelError::NotAssociative { .. }));
    }

    #[test]
    fn malformed_tables_rejected() {
        assert!(matches!(
            FiniteSemigroup::from_table(&[]),
            Err(ModelError::EmptyTable)
        ));
        assert!(matches!(
            FiniteSemigroup::from_table(&[vec![0, 0], vec![0]]),
            Err(ModelError::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            FiniteSemigroup::from_table(&[vec![5]]),
            Err(ModelError::EntryOutOfRange { .. })
        ));
    }

    #[test]
    fn null_semigroup_is_valid_and_nilpotent() {
        let s = null_semigroup(3);
        assert_eq!(s.order(), 3);
        assert!(s.satisfies_identity(&id("xy = 0")).unwrap());
        assert_eq!(s.nilpotency_degree(), Some(2));
        assert_eq!(null_semigroup(5).nilpotency_degree(), Some(2));
        // The one-element semigroup is nilpotent of degree 1.
        assert_eq!(null_semigroup(1).nilpotency_degree(), Some(1));
    }

    #[test]
    fn left_zero_semigroup_is_not_commutative() {
        // xy = x for all x, y.
        let s = FiniteSemigroup::from_table(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert!(!s.satisfies_identity(&id("xy = yx")).unwrap());
    }

    #[test]
    fn semilattice_has_no_nilpotency_degree() {
        assert_eq!(semilattice_sl().nilpotency_degree(), None);
        // Left-zero semigroup has no absorbing zero at all.
        let s = FiniteSemigroup::from_table(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(s.nilpotency_degree(), None);
    }

    #[test]
    fn sl_check_is_content_comparison() {
        assert!(sl_identity_check(&id("xy = yx")).unwrap());
        assert!(!sl_identity_check(&id("xy = x")).unwrap());
        assert!(sl_identity_check(&id("xyz = yxz")).unwrap());
        assert!(matches!(
            sl_identity_check(&id("xy = 0")),
            Err(ModelError::ZeroNotSupported)
        ));
    }

    #[test]
    fn size_cap_is_enforced() {
        // 30 letters over a 3-element semigroup exceeds the cap; the
        // oracle refuses instead of sampling.
        let s = null_semigroup(3);
        let long = Word::new((1..=30u32).collect()).unwrap();
        let target = Identity::between(long.clone(), long);
        assert!(matches!(
            s.satisfies_identity(&target),
            Err(ModelError::SizeExceeded { .. })
        ));
    }
}
