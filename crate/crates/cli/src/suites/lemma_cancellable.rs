//! Cancellable elements of Sub(S_n): exactly the trivial subgroup and the
//! whole group, for n = 3, 4, 5; plus witness shrinking and the
//! complement counts that pin down the failures elsewhere.

use varlat_core::perm::NamedSubgroup;
use varlat_core::subgroups;
use varlat_core::{PermGroup, SpecialKind};

use crate::report::{Check, Coverage};

pub fn run(cov: &mut Coverage) -> Vec<Check> {
    let mut checks = Vec::new();

    for n in [3usize, 4, 5] {
        let result = subgroups::subgroup_lattice(n).unwrap();
        let lat = &result.lattice;
        cov.mark("lattice.special_elements");
        let cancellable = lat.special_elements(SpecialKind::Cancellable);
        let labels: Vec<&str> = cancellable.iter().map(|&i| lat.label(i).unwrap()).collect();
        let expected = ["T".to_string(), format!("S{n}")];
        checks.push(Check::new(
            &format!("lemma.cancellable-s{n}"),
            labels == expected.iter().map(String::as_str).collect::<Vec<_>>(),
            format!("cancellable elements of Sub(S{n}): {labels:?}"),
        ));

        // Every other element admits a witness pair.
        cov.mark("lattice.is_cancellable_element");
        cov.mark("lattice.cancellable_witness");
        let all_witnessed = (0..lat.size()).all(|x| {
            let is_c = lat.is_cancellable_element(x).unwrap();
            let w = lat.cancellable_witness(x).unwrap();
            is_c == w.is_none() && (cancellable.contains(&x) == is_c)
        });
        checks.push(Check::new(
            &format!("lemma.witnesses-s{n}"),
            all_witnessed,
            "witness pairs found for every non-cancellable subgroup",
        ));
    }

    // Witness shrinking in Sub(S3): T13 is modular, not cancellable, and
    // shrinks its own witness.
    let s3 = subgroups::subgroup_lattice(3).unwrap();
    let lat = &s3.lattice;
    let idx = |label: &str| {
        (0..lat.size())
            .find(|&i| lat.label(i) == Some(label))
            .unwrap()
    };
    let (t13, t12, t23) = (idx("T13"), idx("T12"), idx("T23"));
    cov.mark("lattice.is_modular_element");
    let modular = lat.is_modular_element(t13).unwrap();
    cov.mark("lattice.shrink_witness");
    let shrunk = lat.shrink_witness(t13, t12, t23);
    checks.push(Check::new(
        "lemma.shrink-witness",
        modular && shrunk == Ok(t13),
        format!("shrink_witness(T13, T12, T23) = {shrunk:?} (T13 itself)"),
    ));

    // Multiple complements certify the failures: the three T_{ij}
    // complement C123 in Sub(S3); all six T_{ij} complement A4 in Sub(S4).
    cov.mark("lattice.complements");
    let comps: Vec<&str> = lat
        .complements(idx("C123"))
        .iter()
        .map(|&i| lat.label(i).unwrap())
        .collect();
    let c123_ok = comps.len() == 3 && comps.iter().all(|l| l.starts_with('T') && l.len() == 3);
    checks.push(Check::new(
        "lemma.complements-c123",
        c123_ok,
        format!("complements of C123: {comps:?}"),
    ));

    let s4 = subgroups::subgroup_lattice(4).unwrap();
    let a4 = PermGroup::named(4, NamedSubgroup::Alternating).unwrap();
    let a4_idx = s4.groups.iter().position(|g| *g == a4).unwrap();
    let comps: Vec<&str> = s4
        .lattice
        .complements(a4_idx)
        .iter()
        .map(|&i| s4.lattice.label(i).unwrap())
        .collect();
    let a4_ok = comps.len() == 6 && comps.iter().all(|l| l.starts_with('T') && l.len() == 3);
    checks.push(Check::new(
        "lemma.complements-a4",
        a4_ok,
        format!("complements of A4: {comps:?}"),
    ));

    checks
}
