//! Variety-level reproduction of the cancellability failures: for triples
//! of subgroups of S3 witnessing non-cancellability, the X construction
//! yields varieties with equal joins, equal meets, and distinct middles.

use varlat_core::nil::{
    self, compare_varieties, Certificate, GroupWitnessFailure, NilError, NilVariety,
    VarietyComparison,
};
use varlat_core::parse::{format_identity, parse_basis, parse_identity};
use varlat_core::perm::NamedSubgroup;
use varlat_core::{NilPresentation, PermGroup};

use crate::report::{Check, Coverage};

fn t(i: usize, j: usize) -> PermGroup {
    PermGroup::named(3, NamedSubgroup::Transposition(i, j)).unwrap()
}

fn c123() -> PermGroup {
    PermGroup::named(3, NamedSubgroup::Cycle3(1, 2, 3)).unwrap()
}

pub fn run(cov: &mut Coverage) -> Vec<Check> {
    let mut checks = Vec::new();

    let triples = [
        ("t13-t12-t23", t(1, 3), t(1, 2), t(2, 3)),
        ("c123-t12-t13", c123(), t(1, 2), t(1, 3)),
        ("t12-t13-t23", t(1, 2), t(1, 3), t(2, 3)),
    ];
    cov.mark("nil.counterexample_suite");
    for (name, v, x1, x2) in &triples {
        let report = nil::counterexample_suite(v, x1, x2).unwrap();
        let cert_lines: Vec<String> = report
            .certificates
            .iter()
            .map(|c| match c {
                Certificate::EqualTheory { subject } => format!("{subject:?}: equal theories"),
                Certificate::Distinguishing {
                    subject,
                    identity,
                    holds_in_first,
                } => format!(
                    "{subject:?}: distinguished by {} (holds in {})",
                    format_identity(identity),
                    if *holds_in_first { "the first" } else { "the second" },
                ),
            })
            .collect();
        checks.push(
            Check::new(
                &format!("cx.triple-{name}"),
                report.reproduces_witness(),
                format!(
                    "joins equal: {}, meets equal: {}, X1 != X2: {}",
                    report.joins_equal, report.meets_equal, report.x1_ne_x2
                ),
            )
            .with_cert(format!("counterexample_{name}.txt"), cert_lines.join("\n") + "\n"),
        );
    }

    // A triple failing the subgroup-level preconditions is rejected with
    // the offending condition named.
    let invalid = nil::counterexample_suite(&PermGroup::symmetric(3), &t(1, 2), &t(2, 3));
    let rejected = matches!(
        invalid,
        Err(NilError::GroupWitnessInvalid(ref reasons))
            if reasons == &[GroupWitnessFailure::MeetsDiffer]
    );
    checks.push(Check::new(
        "cx.invalid-triple-rejected",
        rejected,
        "V = S3 makes the meets differ upstairs, so the suite refuses",
    ));

    // Perm_3 of the first two modular systems: T13 and C123.
    let sys_i = NilPresentation::new(parse_basis("xyz = zyx; x^2y = 0").unwrap(), 3).unwrap();
    let sys_ii = NilPresentation::new(parse_basis("xyz = yzx; x^2y = 0").unwrap(), 3).unwrap();
    let perm_i = sys_i.perm_group(3).group;
    let perm_ii = sys_ii.perm_group(3).group;
    checks.push(Check::new(
        "cx.system-perm-groups",
        perm_i == t(1, 3) && perm_ii == c123(),
        "Perm_3(system (i)) = T13 and Perm_3(system (ii)) = C123",
    ));

    // Join and meet of X varieties invert the subgroup operations.
    cov.mark("nil.variety_join");
    cov.mark("nil.variety_meet");
    let x12 = nil::build_x_variety(&t(1, 2)).unwrap();
    let x23 = nil::build_x_variety(&t(2, 3)).unwrap();
    let meet = nil::variety_meet(&x12, &x23);
    let join = nil::variety_join(&x12, &x23);
    checks.push(Check::new(
        "cx.join-meet-recovery",
        meet.perm_group(3).group == PermGroup::symmetric(3)
            && join.perm_group(3).group == PermGroup::trivial(3),
        "Perm_3(meet) = T12 v T23 = S3 and Perm_3(join) = T12 ^ T23 = T",
    ));

    // The distinguishing identity between X_T12 and X_T23 re-validates:
    // it holds in exactly one of the two.
    cov.mark("nil.varieties_equal");
    let v12 = NilVariety::Presented(x12.clone());
    let v23 = NilVariety::Presented(x23.clone());
    let distinct = !nil::varieties_equal(&v12, &v23);
    let witness_ok = match compare_varieties(&v12, &v23) {
        VarietyComparison::Distinct { witness } => {
            let expected = parse_identity("xyz = xzy").unwrap();
            witness == expected && x12.satisfies(&witness) != x23.satisfies(&witness)
        }
        VarietyComparison::Equal => false,
    };
    checks.push(Check::new(
        "cx.distinguishing-identity",
        distinct && witness_ok,
        "X_T12 and X_T23 distinguished by xyz = xzy, holding in exactly one",
    ));

    checks
}
