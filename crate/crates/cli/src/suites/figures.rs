//! Structure of the subgroup lattices of S3 and S4: counts, height,
//! incomparable middles, order profile, the position of the Klein
//! four-group, and maximality of the stabilizers and A4.

use std::collections::{BTreeMap, BTreeSet};

use varlat_core::perm::NamedSubgroup;
use varlat_core::subgroups::{self, is_maximal_subgroup};
use varlat_core::PermGroup;

use crate::dot::lattice_to_dot;
use crate::json::LatticeJson;
use crate::report::{Check, Coverage};

pub fn run(cov: &mut Coverage) -> Vec<Check> {
    let mut checks = Vec::new();

    cov.mark("perm.all_subgroups");
    let subs3 = subgroups::all_subgroups(3).unwrap();
    cov.mark("perm.subgroup_lattice");
    let s3 = subgroups::subgroup_lattice(3).unwrap();
    let lat3 = &s3.lattice;

    let json3 = serde_json::to_string_pretty(&LatticeJson::from_lattice(lat3)).unwrap();
    checks.push(
        Check::new(
            "sub-s3.count",
            subs3.len() == 6 && lat3.size() == 6,
            format!("{} subgroups of S3", subs3.len()),
        )
        .with_cert("sub_s3.json", json3),
    );
    checks.push(
        Check::new("sub-s3.height", lat3.height() == 2, format!("height {}", lat3.height()))
            .with_cert("sub_s3.dot", lattice_to_dot(lat3, "sub_s3")),
    );

    let middles: Vec<usize> = (0..lat3.size())
        .filter(|&i| i != lat3.bottom() && i != lat3.top())
        .collect();
    let incomparable = middles.iter().all(|&a| {
        middles
            .iter()
            .all(|&b| a == b || lat3.incomparable(a, b))
    });
    let middle_labels: BTreeSet<&str> = middles.iter().map(|&i| lat3.label(i).unwrap()).collect();
    let expected: BTreeSet<&str> = ["T12", "T13", "T23", "C123"].into_iter().collect();
    checks.push(Check::new(
        "sub-s3.middles",
        middles.len() == 4 && incomparable && middle_labels == expected,
        format!("middles {:?}", middle_labels),
    ));
    checks.push(Check::new(
        "sub-s3.bounds",
        lat3.label(lat3.bottom()) == Some("T") && lat3.label(lat3.top()) == Some("S3"),
        "bottom T, top S3",
    ));

    let s4 = subgroups::subgroup_lattice(4).unwrap();
    let lat4 = &s4.lattice;
    let json4 = serde_json::to_string_pretty(&LatticeJson::from_lattice(lat4)).unwrap();
    checks.push(
        Check::new(
            "sub-s4.count",
            lat4.size() == 30,
            format!("{} subgroups of S4", lat4.size()),
        )
        .with_cert("sub_s4.json", json4),
    );

    let mut profile: BTreeMap<usize, usize> = BTreeMap::new();
    for g in &s4.groups {
        *profile.entry(g.order()).or_insert(0) += 1;
    }
    let expected_profile: BTreeMap<usize, usize> =
        [(1, 1), (2, 9), (3, 4), (4, 7), (6, 4), (8, 3), (12, 1), (24, 1)]
            .into_iter()
            .collect();
    checks.push(Check::new(
        "sub-s4.order-profile",
        profile == expected_profile,
        format!(
            "orders {}",
            profile
                .iter()
                .map(|(o, c)| format!("{o}x{c}"))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    ));

    // By rank level the orders group as 1 | 2,3 | 4,6 | 8,12 | 24.
    let row = |orders: &[usize]| -> usize {
        s4.groups
            .iter()
            .filter(|g| orders.contains(&g.order()))
            .count()
    };
    let rows = [row(&[1]), row(&[2, 3]), row(&[4, 6]), row(&[8, 12]), row(&[24])];
    checks.push(Check::new(
        "sub-s4.levels",
        rows == [1, 13, 11, 4, 1],
        format!("level counts {rows:?}"),
    ));

    cov.mark("perm.named");
    let find = |g: &PermGroup| s4.groups.iter().position(|h| h == g).unwrap();
    let v4 = find(&PermGroup::named(4, NamedSubgroup::KleinFour).unwrap());
    let a4 = find(&PermGroup::named(4, NamedSubgroup::Alternating).unwrap());
    let order8: Vec<usize> = (0..lat4.size()).filter(|&i| s4.groups[i].order() == 8).collect();
    let v4_below = lat4.leq(v4, a4) && order8.iter().all(|&i| lat4.leq(v4, i));
    checks.push(Check::new(
        "sub-s4.v4-below-a4-and-sylows",
        v4_below && order8.len() == 3,
        "V4 lies below A4 and the three order-8 subgroups",
    ));

    cov.mark("perm.is_maximal_subgroup");
    let stabs_maximal = (1..=4).all(|i| {
        let stab = PermGroup::named(4, NamedSubgroup::Stab(i)).unwrap();
        is_maximal_subgroup(&stab).unwrap()
    });
    checks.push(Check::new(
        "sub-s4.stabilizers-maximal",
        stabs_maximal,
        "Stab4(i) maximal for i = 1..4",
    ));
    checks.push(Check::new(
        "sub-s4.a4-maximal",
        is_maximal_subgroup(&s4.groups[a4]).unwrap(),
        "A4 maximal in S4",
    ));

    // Join/meet tables re-verified against the group operations on a
    // deterministic sample of pairs.
    cov.mark("perm.generate");
    let mut sampled_ok = true;
    let mut sampled = 0usize;
    for i in (0..lat4.size()).step_by(3) {
        for j in (0..lat4.size()).step_by(4) {
            let union: Vec<_> = s4.groups[i]
                .elements()
                .iter()
                .chain(s4.groups[j].elements())
                .cloned()
                .collect();
            let join = PermGroup::generate(4, &union).unwrap();
            let meet = s4.groups[i].intersection(&s4.groups[j]).unwrap();
            sampled_ok &= join == s4.groups[lat4.join(i, j)];
            sampled_ok &= meet == s4.groups[lat4.meet(i, j)];
            sampled += 1;
        }
    }
    checks.push(Check::new(
        "sub-s4.join-meet-laws",
        sampled_ok,
        format!("{sampled} sampled pairs: join = generated subgroup, meet = intersection"),
    ));

    checks
}
