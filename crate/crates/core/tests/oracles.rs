//! Independent oracles cross-checking the enumerators and the variety
//! machinery: subgroup recounts by bounded-subset generation, the
//! semilattice content oracle, and the order reversal between subgroup
//! operations and X-variety operations.

use std::collections::BTreeSet;

use varlat_core::model::sl_identity_check;
use varlat_core::nil::{self, NilVariety};
use varlat_core::perm::{PermGroup, Permutation};
use varlat_core::subgroups::{all_subgroups, subgroup_lattice};
use varlat_core::words::{Identity, Word};

/// Recounts the subgroups of S_n by generating from every element subset
/// of size at most two, fully independently of the extension-based
/// enumerator: its own multiplication table and a plain product-closure
/// over index masks.
fn subgroups_by_pair_generation(n: usize) -> BTreeSet<Vec<u16>> {
    let sym = PermGroup::symmetric(n);
    let elems: Vec<&Permutation> = sym.elements().iter().collect();
    let m = elems.len();
    let index =
        |p: &Permutation| elems.binary_search_by(|q| (*q).cmp(p)).unwrap() as u16;
    let mut mult = vec![0u16; m * m];
    for a in 0..m {
        for b in 0..m {
            mult[a * m + b] = index(&elems[a].compose(elems[b]).unwrap());
        }
    }
    let identity = index(&Permutation::identity(n));

    let closure = |seed: &[u16]| -> Vec<u16> {
        let mut mask = vec![false; m];
        let mut members: Vec<u16> = Vec::new();
        let add = |mask: &mut Vec<bool>, members: &mut Vec<u16>, x: u16| {
            if !mask[x as usize] {
                mask[x as usize] = true;
                members.push(x);
            }
        };
        add(&mut mask, &mut members, identity);
        for &s in seed {
            add(&mut mask, &mut members, s);
        }
        let mut i = 0;
        while i < members.len() {
            for j in 0..=i {
                let (a, b) = (members[i], members[j]);
                add(&mut mask, &mut members, mult[a as usize * m + b as usize]);
                add(&mut mask, &mut members, mult[b as usize * m + a as usize]);
            }
            i += 1;
        }
        members.sort_unstable();
        members
    };

    let mut found: BTreeSet<Vec<u16>> = BTreeSet::new();
    found.insert(closure(&[]));
    for a in 0..m as u16 {
        found.insert(closure(&[a]));
        for b in a + 1..m as u16 {
            found.insert(closure(&[a, b]));
        }
    }
    found
}

#[test]
fn s5_has_156_subgroups_by_two_independent_enumerations() {
    let by_pairs = subgroups_by_pair_generation(5);
    assert_eq!(by_pairs.len(), 156);

    let enumerated = all_subgroups(5).unwrap();
    assert_eq!(enumerated.len(), 156);

    // The two enumerations agree element-set by element-set.
    let sym = PermGroup::symmetric(5);
    let as_indices = |g: &PermGroup| -> Vec<u16> {
        g.elements()
            .iter()
            .map(|p| sym.elements().binary_search(p).unwrap() as u16)
            .collect()
    };
    let from_enumerator: BTreeSet<Vec<u16>> = enumerated.iter().map(as_indices).collect();
    assert_eq!(from_enumerator, by_pairs);
}

#[test]
fn small_degrees_need_no_generating_triples() {
    // At degrees 3 and 4 every subgroup is generated by at most two
    // elements: adding triples discovers nothing new.
    for n in [3usize, 4] {
        let pairs = subgroups_by_pair_generation(n);
        let enumerated = all_subgroups(n).unwrap();
        assert_eq!(pairs.len(), enumerated.len());
    }
}

#[test]
fn lagrange_at_degree_5() {
    for g in all_subgroups(5).unwrap() {
        assert_eq!(120 % g.order(), 0);
    }
}

#[test]
fn subgroup_lattice_laws_exhaustive_at_degree_4() {
    let result = subgroup_lattice(4).unwrap();
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

#[test]
fn permutational_form_round_trip_is_exhaustive_to_degree_4() {
    for n in 2..=4 {
        for pi in PermGroup::symmetric(n).elements() {
            let id = Identity::permutational(pi);
            match id.permutational_form() {
                Some(found) => assert_eq!(&found, pi),
                None => assert!(pi.is_identity()),
            }
        }
    }
}

/// The semilattice component never cuts down a permutational identity:
/// {pi : SL and N both satisfy p3[pi]} equals Perm_3(N).
#[test]
fn joining_the_semilattice_variety_preserves_perm_groups() {
    use varlat_core::parse::parse_basis;
    let fixtures = [
        ("xyz = yxz = xzy; x^2y = 0", 3usize),
        ("xyz = zyx; x^2y = 0", 3),
        ("xyz = yzx; x^2y = 0", 3),
        ("", 2),
    ];
    for (basis, bound) in fixtures {
        let pres =
            nil::NilPresentation::new(parse_basis(basis).unwrap(), bound).unwrap();
        let plain = pres.perm_group(3).group;
        let with_sl: Vec<Permutation> = PermGroup::symmetric(3)
            .elements()
            .iter()
            .filter(|pi| {
                let id = Identity::permutational(pi);
                let sl_ok = pi.is_identity() || sl_identity_check(&id).unwrap();
                sl_ok && pres.satisfies(&id)
            })
            .cloned()
            .collect();
        assert_eq!(PermGroup::from_elements(3, with_sl).unwrap(), plain);
    }
}

/// Building X varieties reverses the subgroup order: G included in H means
/// every identity of X_G holds in X_H... and the variety of X_H sits
/// inside the variety of X_G; joins and meets swap accordingly.
#[test]
fn x_construction_is_antitone_on_sub_s3() {
    let result = subgroup_lattice(3).unwrap();
    let varieties: Vec<_> = result
        .groups
        .iter()
        .map(|g| nil::build_x_variety(g).unwrap())
        .collect();

    for (i, g) in result.groups.iter().enumerate() {
        for (j, h) in result.groups.iter().enumerate() {
            if !g.is_subgroup_of(h) {
                continue;
            }
            // Basis inclusion up to canonical renaming.
            let basis_h: BTreeSet<_> = varieties[j].basis().identities().iter().collect();
            assert!(varieties[i]
                .basis()
                .identities()
                .iter()
                .all(|id| basis_h.contains(id)));
            // Theory inclusion: identified in X_G implies identified in X_H,
            // and zero in X_G implies zero in X_H.
            let obj_g = varieties[i].free_object(3);
            let obj_h = varieties[j].free_object(3);
            let universe: Vec<Word> = all_words(3, 3);
            for u in &universe {
                if obj_g.class_of(u) == obj_g.zero_class() {
                    assert_eq!(obj_h.class_of(u), obj_h.zero_class());
                }
                for v in &universe {
                    if obj_g.class_of(u) == obj_g.class_of(v) {
                        assert_eq!(obj_h.class_of(u), obj_h.class_of(v));
                    }
                }
            }
        }
    }
}

/// Perm_3 reverses joins and meets of X varieties across all pairs from
/// Sub(S3).
#[test]
fn perm_group_swaps_joins_and_meets_over_sub_s3() {
    let result = subgroup_lattice(3).unwrap();
    for g in &result.groups {
        for h in &result.groups {
            let xg = nil::build_x_variety(g).unwrap();
            let xh = nil::build_x_variety(h).unwrap();
            let join = nil::variety_join(&xg, &xh);
            assert_eq!(join.perm_group(3).group, g.intersection(h).unwrap());
            let meet = nil::variety_meet(&xg, &xh);
            assert_eq!(meet.perm_group(3).group, g.join(h).unwrap());
        }
    }
}

/// Every basis identity holds in the free object under every assignment
/// of letters to classes (exhaustive for objects of order <= 25).
#[test]
fn basis_identities_hold_under_every_class_assignment() {
    use varlat_core::parse::parse_basis;
    let fixtures = [
        ("xyz = yxz = xzy; x^2y = 0", 3usize, 3usize),
        ("xyz = zyx; x^2y = 0", 3, 3),
        ("xy = 0", 1, 3),
        ("", 2, 2),
    ];
    for (basis_src, bound, rank) in fixtures {
        let pres =
            nil::NilPresentation::new(parse_basis(basis_src).unwrap(), bound).unwrap();
        let obj = pres.free_object(rank);
        assert!(obj.order() <= 25, "fixture meant to stay exhaustively checkable");
        let model = obj.as_semigroup();
        for id in pres.basis().iter() {
            assert!(
                model.satisfies_identity(id).unwrap(),
                "basis identity {id} must hold in the free object of {basis_src}"
            );
        }
        // The ambient nilpotence identity holds as well.
        let nilpotence = Identity::zero(Word::linear(bound + 1));
        assert!(model.satisfies_identity(&nilpotence).unwrap());
    }
}

/// Whatever the bounded search derives from a presentation's basis must
/// hold in the presented variety (and in particular agree with the
/// free-object decision procedure).
#[test]
fn derived_identities_hold_in_the_presented_variety() {
    use varlat_core::derive::{derives, DeriveBounds};
    use varlat_core::parse::{parse_basis, parse_identity};

    let fixtures = [
        ("xyz = yxz = xzy; x^2y = 0", 3usize),
        ("xyz = zyx; x^2y = 0", 3),
        ("xyz = yzx; x^2y = 0", 3),
    ];
    let targets = [
        "xyz = zyx", "xyz = yzx", "xyz = xzy", "xyz = yxz", "xyx = 0", "yx^2 = 0", "x^3 = 0",
        "xy = yx", "x^2 = 0", "xyz = 0",
    ];
    let bounds = DeriveBounds {
        max_len: 4,
        max_steps: 6,
    };
    let mut found = 0usize;
    for (basis_src, bound) in fixtures {
        let basis = parse_basis(basis_src).unwrap();
        let pres = nil::NilPresentation::new(basis.clone(), bound).unwrap();
        for target_src in targets {
            let target = parse_identity(target_src).unwrap();
            if derives(&basis, &target, bounds).unwrap().is_some() {
                found += 1;
                assert!(
                    pres.satisfies(&target),
                    "derived {target_src} must hold in the variety of {basis_src}"
                );
            }
        }
    }
    assert!(found >= 8, "expected a number of derivable fixtures, got {found}");
}

/// Perm recovery across every subgroup of S3 and a named sample at
/// degree 4, with equality of varieties as a consistency check.
#[test]
fn x_varieties_of_distinct_subgroups_differ() {
    let subs = all_subgroups(3).unwrap();
    for (i, g) in subs.iter().enumerate() {
        for (j, h) in subs.iter().enumerate() {
            let equal = nil::varieties_equal(
                &NilVariety::Presented(nil::build_x_variety(g).unwrap()),
                &NilVariety::Presented(nil::build_x_variety(h).unwrap()),
            );
            assert_eq!(equal, i == j);
        }
    }
}

fn all_words(rank: u32, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u32>> = (1..=rank).map(|l| vec![l]).collect();
    while let Some(w) = stack.pop() {
        if w.len() < max_len {
            for l in 1..=rank {
                let mut next = w.clone();
                next.push(l);
                stack.push(next);
            }
        }
        out.push(Word::new(w).unwrap());
    }
    out.sort();
    out
}
