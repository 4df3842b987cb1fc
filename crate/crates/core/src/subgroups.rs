//! Exhaustive subgroup enumeration for small symmetric groups and the
//! construction of `Sub(S_n)` as a [`FiniteLattice`].
//!
//! Enumeration is brute force: all cyclic subgroups first, then iterative
//! extension of each known subgroup by one new generator, deduplicating by
//! element set. Degrees up to 5 are supported directly; degree 6 (1455
//! subgroups) only through the explicit `_large` entry points.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::FiniteLattice;
use crate::perm::{PermError, PermGroup, Permutation};

/// Hard cap for the plain entry points.
pub const MAX_DEGREE: usize = 5;
/// Cap for the opt-in `_large` entry points.
pub const MAX_DEGREE_LARGE: usize = 6;

/// The subgroup lattice of `S_n` together with the subgroup at each
/// lattice index. Order in the lattice is containment; joins are generated
/// subgroups and meets are intersections (verified at construction).
#[derive(Debug, Clone)]
pub struct SubgroupLatticeResult {
    pub lattice: FiniteLattice,
    pub groups: Vec<PermGroup>,
}

/// Multiplication table of `S_n` over canonically indexed elements, the
/// substrate for mask-based subgroup closures.
struct Ambient {
    n: usize,
    elems: Vec<Permutation>,
    mult: Vec<u16>,
    words: usize,
}

type Mask = Vec<u64>;

impl Ambient {
    fn new(n: usize) -> Self {
        let sym = PermGroup::symmetric(n);
        let elems: Vec<Permutation> = sym.elements().to_vec();
        let m = elems.len();
        let index = |p: &Permutation| elems.binary_search(p).unwrap() as u16;
        let mut mult = vec![0u16; m * m];
        for (a, pa) in elems.iter().enumerate() {
            for (b, pb) in elems.iter().enumerate() {
                mult[a * m + b] = index(&pa.compose(pb).unwrap());
            }
        }
        Ambient {
            n,
            elems,
            mult,
            words: m.div_ceil(64),
        }
    }

    fn order(&self) -> usize {
        self.elems.len()
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mult[a as usize * self.order() + b as usize]
    }

    fn identity_index(&self) -> u16 {
        self.elems
            .binary_search(&Permutation::identity(self.n))
            .unwrap() as u16
    }

    /// Closure of a seed under products. In a finite group this is the
    /// generated subgroup (inverses arise as powers).
    fn closure(&self, seed: &[u16]) -> Mask {
        let mut mask = vec![0u64; self.words];
        let mut members: Vec<u16> = Vec::new();
        let add = |mask: &mut Mask, members: &mut Vec<u16>, x: u16| {
            let (w, b) = (x as usize / 64, x as usize % 64);
            if mask[w] >> b & 1 == 0 {
                mask[w] |= 1 << b;
                members.push(x);
            }
        };
        add(&mut mask, &mut members, self.identity_index());
        for &s in seed {
            add(&mut mask, &mut members, s);
        }
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for j in 0..=i {
                let b = members[j];
                let p = self.mul(a, b);
                add(&mut mask, &mut members, p);
                let q = self.mul(b, a);
                add(&mut mask, &mut members, q);
            }
            i += 1;
        }
        mask
    }

    fn members(&self, mask: &Mask) -> Vec<u16> {
        (0..self.order() as u16)
            .filter(|&x| mask[x as usize / 64] >> (x as usize % 64) & 1 == 1)
            .collect()
    }

    fn group(&self, mask: &Mask) -> PermGroup {
        let elements: Vec<Permutation> = self
            .members(mask)
            .into_iter()
            .map(|x| self.elems[x as usize].clone())
            .collect();
        PermGroup::from_elements(self.n, elements).expect("closure produced a non-group")
    }

    /// Every subgroup mask, in no particular order.
    fn all_subgroup_masks(&self) -> Vec<Mask> {
        let mut seen: BTreeSet<Mask> = BTreeSet::new();
        let mut queue: Vec<Mask> = Vec::new();
        let trivial = self.closure(&[]);
        seen.insert(trivial.clone());
        queue.push(trivial);
        for g in 0..self.order() as u16 {
            let cyc = self.closure(&[g]);
            if seen.insert(cyc.clone()) {
                queue.push(cyc);
            }
        }
        let mut i = 0;
        while i < queue.len() {
            let base = queue[i].clone();
            let base_members = self.members(&base);
            // Extending by g and by any element of the coset H*g gives the
            // same subgroup, so each coset is tried once.
            let mut covered = base.clone();
            for g in 0..self.order() as u16 {
                let (w, b) = (g as usize / 64, g as usize % 64);
                if covered[w] >> b & 1 == 1 {
                    continue;
                }
                let mut seed = base_members.clone();
                seed.push(g);
                let ext = self.closure(&seed);
                if seen.insert(ext.clone()) {
                    queue.push(ext);
                }
                for &a in &base_members {
                    let c = self.mul(a, g);
                    covered[c as usize / 64] |= 1 << (c as usize % 64);
                }
            }
            i += 1;
        }
        seen.into_iter().collect()
    }
}

fn check_degree(n: usize, max: usize) -> Result<(), PermError> {
    if n == 0 {
        return Err(PermError::BadIndices("degree must be positive"));
    }
    if n > max {
        return Err(PermError::DegreeTooLarge { degree: n, max });
    }
    Ok(())
}

fn enumerate(n: usize) -> Vec<PermGroup> {
    let ambient = Ambient::new(n);
    let mut groups: Vec<PermGroup> = ambient
        .all_subgroup_masks()
        .iter()
        .map(|m| ambient.group(m))
        .collect();
    groups.sort();
    groups
}

/// Every subgroup of `S_n`, each exactly once, in the canonical order
/// (by order, then by sorted element list). Degrees up to 5.
pub fn all_subgroups(n: usize) -> Result<Vec<PermGroup>, PermError> {
    check_degree(n, MAX_DEGREE)?;
    Ok(enumerate(n))
}

/// As [`all_subgroups`] but additionally allowing degree 6.
pub fn all_subgroups_large(n: usize) -> Result<Vec<PermGroup>, PermError> {
    check_degree(n, MAX_DEGREE_LARGE)?;
    Ok(enumerate(n))
}

fn lattice_of(n: usize) -> Result<SubgroupLatticeResult, PermError> {
    let ambient = Ambient::new(n);
    let mut masks = ambient.all_subgroup_masks();
    // Canonical subgroup order: (order, element index list); since element
    // indices follow the canonical permutation order, comparing member
    // lists matches comparing element lists.
    masks.sort_by_key(|m| {
        let members = ambient.members(m);
        (members.len(), members)
    });
    let count = masks.len();

    let subset = |a: &Mask, b: &Mask| a.iter().zip(b).all(|(x, y)| x & !y == 0);
    let mut leq = vec![false; count * count];
    for (i, a) in masks.iter().enumerate() {
        for (j, b) in masks.iter().enumerate() {
            leq[i * count + j] = subset(a, b);
        }
    }
    let lattice = FiniteLattice::from_order(count, leq).expect("containment is a lattice");

    // Joins must be generated subgroups and meets intersections. Meets
    // are cheap and checked for every pair; join closures are checked for
    // every pair up to degree 5 and on a deterministic stride at degree 6.
    let join_stride = if count <= 200 { 1 } else { 37 };
    for i in 0..count {
        for j in 0..count {
            let meet_mask = &masks[lattice.meet(i, j)];
            let inter: Mask = masks[i]
                .iter()
                .zip(&masks[j])
                .map(|(x, y)| x & y)
                .collect();
            assert_eq!(*meet_mask, inter, "meet table disagrees with intersection");
            if (i * count + j).is_multiple_of(join_stride) {
                let join_mask = &masks[lattice.join(i, j)];
                let mut seed = ambient.members(&masks[i]);
                seed.extend(ambient.members(&masks[j]));
                assert_eq!(
                    *join_mask,
                    ambient.closure(&seed),
                    "join table disagrees with generated subgroup"
                );
            }
        }
    }

    let groups: Vec<PermGroup> = masks.iter().map(|m| ambient.group(m)).collect();
    let labels: Vec<String> = groups.iter().map(canonical_label).collect();
    Ok(SubgroupLatticeResult {
        lattice: lattice.with_labels(labels).unwrap(),
        groups,
    })
}

/// The full subgroup lattice of `S_n` with containment order, generated
/// joins, intersection meets, and conventional labels. Degrees up to 5.
pub fn subgroup_lattice(n: usize) -> Result<SubgroupLatticeResult, PermError> {
    check_degree(n, MAX_DEGREE)?;
    lattice_of(n)
}

/// As [`subgroup_lattice`] but additionally allowing degree 6.
pub fn subgroup_lattice_large(n: usize) -> Result<SubgroupLatticeResult, PermError> {
    check_degree(n, MAX_DEGREE_LARGE)?;
    lattice_of(n)
}

/// True iff `g` is proper in `S_n` and no subgroup lies strictly between.
pub fn is_maximal_subgroup(g: &PermGroup) -> Result<bool, PermError> {
    let n = g.degree();
    check_degree(n, MAX_DEGREE)?;
    let full: usize = (1..=n).product();
    if g.order() == full {
        return Ok(false);
    }
    for h in all_subgroups(n)? {
        if h.order() > g.order() && h.order() < full && g.is_subgroup_of(&h) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn moved_points(p: &Permutation) -> Vec<usize> {
    (0..p.degree()).filter(|&i| p.apply(i) != i).collect()
}

/// Display label for a subgroup: the conventional name where one applies
/// (`T`, `S4`, `T12`, `C123`, `C1234`, `P12,34`, `V4`, `A4`, `Stab4(1)`),
/// otherwise a generator-based `<...>` form chosen greedily over the
/// canonical element order.
pub fn canonical_label(g: &PermGroup) -> String {
    let n = g.degree();
    let full: usize = (1..=n).product();
    if g.order() == 1 {
        return String::from("T");
    }
    if g.order() == full {
        return format!("S{n}");
    }
    if g.order() == 2 {
        let t = &g.elements()[1];
        let moved = moved_points(t);
        if moved.len() == 2 {
            return format!("T{}{}", moved[0] + 1, moved[1] + 1);
        }
    }
    // Cyclic groups generated by a single 3- or 4-cycle, labeled by the
    // lexicographically least generating cycle.
    for (order, len) in [(3usize, 3usize), (4, 4)] {
        if g.order() != order {
            continue;
        }
        let mut best: Option<Vec<usize>> = None;
        for p in g.elements() {
            let moved = moved_points(p);
            if moved.len() != len {
                continue;
            }
            // The cycle through the least moved point.
            let mut cyc = vec![moved[0]];
            let mut q = p.apply(moved[0]);
            while q != moved[0] {
                cyc.push(q);
                q = p.apply(q);
            }
            if cyc.len() == len && best.as_ref().is_none_or(|b| cyc < *b) {
                best = Some(cyc);
            }
        }
        // A group of order 3 or 4 containing a full cycle is that cycle's
        // group.
        if let Some(cyc) = best {
            let digits: String = cyc.iter().map(|p| format!("{}", p + 1)).collect();
            return format!("C{digits}");
        }
    }
    if n == 4 && g.order() == 4 {
        let mut transpositions: Vec<Vec<usize>> = g
            .elements()
            .iter()
            .filter_map(|p| {
                let moved = moved_points(p);
                (moved.len() == 2).then_some(moved)
            })
            .collect();
        transpositions.sort();
        if transpositions.len() == 2 {
            let (a, b) = (&transpositions[0], &transpositions[1]);
            return format!(
                "P{}{},{}{}",
                a[0] + 1,
                a[1] + 1,
                b[0] + 1,
                b[1] + 1
            );
        }
        if g.elements()
            .iter()
            .skip(1)
            .all(|p| moved_points(p).len() == 4)
        {
            return String::from("V4");
        }
    }
    if g.order() == full / 2 && g.elements().iter().all(Permutation::is_even) {
        return format!("A{n}");
    }
    if g.order() == full / n {
        for point in 0..n {
            if g.elements().iter().all(|p| p.apply(point) == point) {
                return format!("Stab{n}({})", point + 1);
            }
        }
    }
    // Greedy generating set over the canonical element order.
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(n);
    while current != *g {
        let next = g
            .elements()
            .iter()
            .find(|p| !current.contains(p))
            .expect("generation stalled")
            .clone();
        gens.push(next);
        current = PermGroup::generate(n, &gens).unwrap();
    }
    let parts: Vec<String> = gens.iter().map(Permutation::cycle_string).collect();
    format!("<{}>", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::NamedSubgroup;

    #[test]
    fn sub_s1_and_s2() {
        assert_eq!(all_subgroups(1).unwrap().len(), 1);
        let s2 = all_subgroups(2).unwrap();
        assert_eq!(s2.len(), 2);
        let lat = subgroup_lattice(2).unwrap();
        assert_eq!(lat.lattice.height(), 1);
        assert_eq!(lat.lattice.label(0), Some("T"));
        assert_eq!(lat.lattice.label(1), Some("S2"));
    }

    #[test]
    fn sub_s3_has_six_subgroups() {
        let subs = all_subgroups(3).unwrap();
        assert_eq!(subs.len(), 6);
        let orders: Vec<usize> = subs.iter().map(PermGroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn sub_s3_lattice_matches_known_structure() {
        let result = subgroup_lattice(3).unwrap();
        let lat = &result.lattice;
        assert_eq!(lat.size(), 6);
        assert_eq!(lat.height(), 2);
        let labels: Vec<&str> = (0..6).map(|i| lat.label(i).unwrap()).collect();
        assert_eq!(labels, vec!["T", "T23", "T12", "T13", "C123", "S3"]);
        // The four middles are pairwise incomparable.
        for a in 1..=4 {
            for b in 1..=4 {
                if a != b {
                    assert!(lat.incomparable(a, b));
                }
            }
        }
    }

    #[test]
    fn sub_s4_count_and_profile() {
        let subs = all_subgroups(4).unwrap();
        assert_eq!(subs.len(), 30);
        let mut profile = alloc::collections::BTreeMap::new();
        for g in &subs {
            *profile.entry(g.order()).or_insert(0usize) += 1;
        }
        let expected: alloc::collections::BTreeMap<usize, usize> =
            [(1, 1), (2, 9), (3, 4), (4, 7), (6, 4), (8, 3), (12, 1), (24, 1)]
                .into_iter()
                .collect();
        assert_eq!(profile, expected);
    }

    #[test]
    fn lagrange_holds_for_all_enumerated_subgroups() {
        for n in 1..=4 {
            let full: usize = (1..=n).product();
            for g in all_subgroups(n).unwrap() {
                assert_eq!(full % g.order(), 0);
            }
        }
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(
            all_subgroups(6),
            Err(PermError::DegreeTooLarge { degree: 6, max: 5 })
        ));
        assert!(all_subgroups(0).is_err());
        assert!(matches!(
            all_subgroups_large(7),
            Err(PermError::DegreeTooLarge { degree: 7, max: 6 })
        ));
    }

    #[test]
    fn maximal_subgroups_of_s4() {
        let stab = PermGroup::named(4, NamedSubgroup::Stab(1)).unwrap();
        assert!(is_maximal_subgroup(&stab).unwrap());
        let a4 = PermGroup::named(4, NamedSubgroup::Alternating).unwrap();
        assert!(is_maximal_subgroup(&a4).unwrap());
        let v4 = PermGroup::named(4, NamedSubgroup::KleinFour).unwrap();
        assert!(!is_maximal_subgroup(&v4).unwrap());
        let s4 = PermGroup::symmetric(4);
        assert!(!is_maximal_subgroup(&s4).unwrap());
    }

    #[test]
    fn labels_for_named_s4_subgroups() {
        let cases = [
            (NamedSubgroup::Trivial, "T"),
            (NamedSubgroup::Symmetric, "S4"),
            (NamedSubgroup::Alternating, "A4"),
            (NamedSubgroup::KleinFour, "V4"),
            (NamedSubgroup::Stab(2), "Stab4(2)"),
            (NamedSubgroup::Transposition(1, 3), "T13"),
            (NamedSubgroup::Cycle3(2, 3, 4), "C234"),
            (NamedSubgroup::Cycle4(1, 2, 4, 3), "C1243"),
            (NamedSubgroup::DisjointPair(1, 3, 2, 4), "P13,24"),
        ];
        for (tag, expected) in cases {
            let g = PermGroup::named(4, tag).unwrap();
            assert_eq!(canonical_label(&g), expected, "{tag:?}");
        }
        // The order-2 group generated by a double transposition is not a
        // T group and falls back to the generator form.
        let dp = PermGroup::generate(
            4,
            &[Permutation::parse_cycles(4, "(1 2)(3 4)").unwrap()],
        )
        .unwrap();
        assert_eq!(canonical_label(&dp), "<(1 2)(3 4)>");
    }

    #[test]
    fn witness_pair_for_t12_in_sub_s3() {
        let result = subgroup_lattice(3).unwrap();
        let lat = &result.lattice;
        let idx = |l: &str| (0..6).find(|&i| lat.label(i) == Some(l)).unwrap();
        let w = lat.cancellable_witness(idx("T12")).unwrap().unwrap();
        // The least witness pair is {T23, T13}: joins are S3, meets are T.
        assert_eq!((w.y, w.z), (idx("T23"), idx("T13")));
        assert_eq!(lat.join(idx("T12"), w.y), lat.top());
        assert_eq!(lat.meet(idx("T12"), w.y), lat.bottom());
    }

    #[test]
    fn s3_join_meet_agree_with_group_ops() {
        let result = subgroup_lattice(3).unwrap();
        let lat = &result.lattice;
        for i in 0..lat.size() {
            for j in 0..lat.size() {
                let join = result.groups[i].join(&result.groups[j]).unwrap();
                assert_eq!(join, result.groups[lat.join(i, j)]);
                let meet = result.groups[i].intersection(&result.groups[j]).unwrap();
                assert_eq!(meet, result.groups[lat.meet(i, j)]);
            }
        }
    }
}
