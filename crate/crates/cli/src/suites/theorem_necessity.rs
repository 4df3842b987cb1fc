//! The necessity-side machinery: modular subgroups sit above the Klein
//! four-group (degree 4) and the alternating group (degree 5), the X
//! construction recovers its source subgroup through Perm_n, free-object
//! sizes match hand enumeration, and the two membership classifiers agree
//! with their defining systems.

use varlat_core::nil::{self, NilPresentation};
use varlat_core::parse::parse_basis;
use varlat_core::perm::NamedSubgroup;
use varlat_core::subgroups;
use varlat_core::words::nonlinear_shapes;
use varlat_core::{Identity, PermGroup, SpecialKind};

use crate::json::CayleyJson;
use crate::report::{Check, Coverage};

fn pres(basis: &str, d: usize) -> NilPresentation {
    NilPresentation::new(parse_basis(basis).unwrap(), d).unwrap()
}

pub fn run(cov: &mut Coverage) -> Vec<Check> {
    let mut checks = Vec::new();
    cov.mark("words.parse_basis");

    // Modular elements of Sub(S4) contain V4; of Sub(S5) contain A5.
    for (n, core_tag, core_name) in [
        (4usize, NamedSubgroup::KleinFour, "V4"),
        (5, NamedSubgroup::Alternating, "A5"),
    ] {
        let result = subgroups::subgroup_lattice(n).unwrap();
        let lat = &result.lattice;
        let core = PermGroup::named(n, core_tag).unwrap();
        let modular = lat.special_elements(SpecialKind::Modular);
        let ok = modular.iter().all(|&i| {
            let g = &result.groups[i];
            g.order() == 1 || g.order() == result.groups[lat.top()].order() || core.is_subgroup_of(g)
        });
        let labels: Vec<&str> = modular.iter().map(|&i| lat.label(i).unwrap()).collect();
        checks.push(Check::new(
            &format!("necessity.modular-s{n}-contains-{}", core_name.to_lowercase()),
            ok,
            format!("modular elements of Sub(S{n}): {labels:?}, nontrivial proper ones contain {core_name}"),
        ));
    }

    // Perm recovery: perm_group(X_G, n) = G.
    cov.mark("nil.build_x_variety");
    cov.mark("nil.perm_group");
    let s3 = subgroups::all_subgroups(3).unwrap();
    let recovered_s3 = s3.iter().all(|g| {
        let x = nil::build_x_variety(g).unwrap();
        let out = x.perm_group(3);
        out.group == *g && !out.nilpotence_case
    });
    checks.push(Check::new(
        "necessity.perm-recovery-s3",
        recovered_s3,
        format!("Perm_3(X_G) = G for all {} subgroups of S3", s3.len()),
    ));

    let named4 = [
        NamedSubgroup::Trivial,
        NamedSubgroup::KleinFour,
        NamedSubgroup::Alternating,
        NamedSubgroup::Symmetric,
        NamedSubgroup::Stab(1),
    ];
    let recovered_s4 = named4.iter().all(|&tag| {
        let g = PermGroup::named(4, tag).unwrap();
        let x = nil::build_x_variety(&g).unwrap();
        x.perm_group(4).group == g
    });
    checks.push(Check::new(
        "necessity.perm-recovery-s4",
        recovered_s4,
        "Perm_4(X_G) = G for G in {T, V4, A4, S4, Stab4(1)}",
    ));

    // Free-object sizes against hand-enumerated normal forms.
    cov.mark("nil.free_nil_object");
    let theorem = pres("xyz = yxz = xzy; x^2y = 0", 3);
    let obj = theorem.free_object(3);
    checks.push(
        Check::new(
            "necessity.free-object-14",
            obj.order() == 14,
            format!("free object of the qualifying nil component on 3 generators: {} classes", obj.order()),
        )
        .with_cert(
            "free_nil_14.json",
            serde_json::to_string_pretty(&CayleyJson::from_free_object(&obj)).unwrap(),
        ),
    );
    let x_t = nil::build_x_variety(&PermGroup::trivial(3)).unwrap();
    let obj_t = x_t.free_object(3);
    checks.push(Check::new(
        "necessity.free-object-19",
        obj_t.order() == 19,
        format!("free object of X_T on 3 generators: {} classes", obj_t.order()),
    ));
    let null_ok = (1..=4).all(|k| pres("", 1).free_object(k).order() == k + 1);
    checks.push(Check::new(
        "necessity.free-object-null",
        null_ok,
        "null presentation at bound 1: k+1 classes on k generators",
    ));

    // Membership classifiers.
    cov.mark("nil.theorem_variety_check");
    let theorem_ok = nil::theorem_variety_check(&theorem)
        && !nil::theorem_variety_check(&pres("xyz = zyx; x^2y = 0", 3))
        && nil::theorem_variety_check(&pres("xy = 0", 1));
    checks.push(Check::new(
        "necessity.theorem-check",
        theorem_ok,
        "xyz = yxz = xzy with x^2y = 0 qualifies; system (i) alone does not; the bound-1 variety trivially does",
    ));

    cov.mark("nil.mod_permut3_check");
    use varlat_core::nil::ModPermut3System as Sys;
    let classifier_ok = nil::mod_permut3_check(&pres("xyz = zyx; x^2y = 0", 3)) == Some(Sys::I)
        && nil::mod_permut3_check(&theorem) == Some(Sys::I)
        && nil::mod_permut3_check(&pres("x^2y = 0", 3)).is_none()
        && nil::mod_permut3_check(&pres("xyz = yzx; x^2y = 0", 3)) == Some(Sys::II)
        && nil::mod_permut3_check(&pres("xyz = yxz; xyzt = xzty; xy^2 = 0", 4)) == Some(Sys::III)
        && nil::mod_permut3_check(&pres("xyz = xzy; xyzt = yzxt; x^2y = 0", 4)) == Some(Sys::IV);
    checks.push(Check::new(
        "necessity.mod-permut3-classifier",
        classifier_ok,
        "systems (i)-(iv) classified, underdetermined basis rejected",
    ));

    // Non-linear words of full length vanish once every length-3
    // permutational identity plus x^2y = 0 holds.
    cov.mark("nil.satisfies");
    let nonlinear_zero = nonlinear_shapes(3)
        .into_iter()
        .all(|w| theorem.satisfies(&Identity::zero(w)));
    checks.push(Check::new(
        "necessity.nonlinear-zero",
        nonlinear_zero,
        "every length-3 word on fewer than 3 letters is 0 in the qualifying variety",
    ));

    // Consistency with the modularity transfer: Perm_3 of each fixture
    // variety is a modular element of Sub(S3).
    let s3_lat = subgroups::subgroup_lattice(3).unwrap();
    let fixtures = [theorem.clone(), pres("xyz = zyx; x^2y = 0", 3), pres("xyz = yzx; x^2y = 0", 3)];
    let consistent = fixtures.iter().all(|p| {
        let g = p.perm_group(3).group;
        let idx = s3_lat.groups.iter().position(|h| *h == g).unwrap();
        s3_lat.lattice.is_modular_element(idx).unwrap()
    });
    checks.push(Check::new(
        "necessity.perm-groups-modular",
        consistent,
        "Perm_3 of each fixture presentation is a modular element of Sub(S3)",
    ));

    checks
}
