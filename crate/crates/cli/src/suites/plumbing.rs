//! Plumbing checks run only by `verify all`: format round trips, the
//! small word/permutation/model operations the main suites do not touch
//! directly, and one end-to-end run of each CLI command.

use std::fs;

use varlat_core::model::{null_semigroup, semilattice_sl, FiniteSemigroup, ModelError};
use varlat_core::parse::{format_basis, parse_basis, parse_identity, parse_word};
use varlat_core::perm::Permutation;
use varlat_core::words::Identity;
use varlat_core::{FiniteLattice, NilPresentation, SpecialKind};

use crate::commands::{cmd_derive, cmd_perm, cmd_special, cmd_subgroups, LatticeFormat, SpecialSource};
use crate::json::LatticeJson;
use crate::report::{Check, Coverage};

fn pentagon_json() -> String {
    serde_json::to_string(&LatticeJson {
        elements: vec!["0".into(), "a".into(), "b".into(), "c".into(), "1".into()],
        covers: vec![(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)],
    })
    .unwrap()
}

pub fn run(cov: &mut Coverage) -> Vec<Check> {
    let mut checks = Vec::new();

    // Lattice construction from covers plus the JSON and DOT codecs.
    cov.mark("lattice.from_covers");
    let pentagon = FiniteLattice::from_covers(5, &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)]).unwrap();
    let json = LatticeJson::from_lattice(&pentagon);
    let back = json.to_lattice().unwrap();
    let rejects = FiniteLattice::from_covers(3, &[(0, 1), (0, 2)]).is_err();
    checks.push(Check::new(
        "plumb.lattice-codecs",
        back.size() == 5
            && pentagon.special_elements(SpecialKind::Modular) == vec![0, 1, 3, 4]
            && crate::dot::lattice_to_dot(&pentagon, "n5").contains("n0 -> n1")
            && rejects,
        "pentagon round-trips through JSON, renders to DOT, and a boundless poset is rejected",
    ));

    // Composition convention and the basic group operations.
    cov.mark("perm.compose");
    cov.mark("perm.inverse");
    cov.mark("perm.identity");
    let swap12 = Permutation::parse_cycles(3, "(1 2)").unwrap();
    let swap13 = Permutation::parse_cycles(3, "(1 3)").unwrap();
    let left_to_right = swap12.compose(&swap13).unwrap()
        == Permutation::parse_cycles(3, "(1 2 3)").unwrap();
    let inv_ok = Permutation::parse_cycles(3, "(1 2 3)").unwrap().inverse()
        == Permutation::parse_cycles(3, "(1 3 2)").unwrap();
    let id_ok = swap12.compose(&swap12).unwrap() == Permutation::identity(3);
    checks.push(Check::new(
        "plumb.permutation-ops",
        left_to_right && inv_ok && id_ok,
        "(1 2)(1 3) = (1 2 3) under the left-to-right convention",
    ));

    // Word measurements, the permutation action, zero expansion, and
    // format stability.
    cov.mark("words.length");
    cov.mark("words.content");
    cov.mark("words.is_linear");
    cov.mark("words.apply_perm");
    cov.mark("words.permutational_form");
    cov.mark("words.expand_zero");
    cov.mark("words.format_basis");
    let xyz = parse_word("xyz").unwrap();
    let xxy = parse_word("x^2y").unwrap();
    let measures = xyz.len() == 3
        && xyz.is_linear()
        && xxy.len() == 3
        && !xxy.is_linear()
        && xxy.content().len() == 2;
    let rot = Permutation::parse_cycles(3, "(1 2 3)").unwrap();
    let action = xxy.apply_perm(&rot).unwrap() == parse_word("y^2z").unwrap();
    let perm_form = parse_identity("xyz = zyx")
        .unwrap()
        .permutational_form()
        .map(|p| p.cycle_string())
        == Some("(1 3)".to_string());
    let [left, right] = Identity::zero(xxy.clone()).expand_zero().unwrap();
    let expansion = left == Identity::between(parse_word("zx^2y").unwrap(), xxy.clone())
        && right == Identity::between(parse_word("x^2yz").unwrap(), xxy.clone());
    let basis = parse_basis("xyz = yxz = xzy; x^2y = 0").unwrap();
    let stable = parse_basis(&format_basis(&basis)).unwrap() == basis;
    checks.push(Check::new(
        "plumb.word-ops",
        measures && action && perm_form && expansion && stable,
        "length/content/linearity, the letter action, zero expansion and format round-trip",
    ));

    // Model oracle: table validation, the canonical models, and agreement
    // with the presentation-level decision procedure.
    cov.mark("model.from_table");
    cov.mark("model.satisfies_identity");
    cov.mark("model.semilattice_sl");
    cov.mark("model.null_semigroup");
    cov.mark("model.nilpotency_degree");
    let bad = FiniteSemigroup::from_table(&[vec![1, 1], vec![0, 0]]);
    let table_validation = matches!(bad, Err(ModelError::NotAssociative { .. }));
    let sl = semilattice_sl();
    let sl_laws = sl.satisfies_identity(&parse_identity("xy = yx").unwrap()).unwrap()
        && sl.satisfies_identity(&parse_identity("x^2 = x").unwrap()).unwrap();
    let null_ok = null_semigroup(5).nilpotency_degree() == Some(2);
    let theorem = NilPresentation::new(parse_basis("xyz = yxz = xzy; x^2y = 0").unwrap(), 3).unwrap();
    let model = theorem.free_object(3).as_semigroup();
    let agree = |src: &str| {
        let id = parse_identity(src).unwrap();
        theorem.satisfies(&id) == model.satisfies_identity(&id).unwrap()
    };
    let oracle_agreement = agree("x^2y = 0") && agree("x^2 = 0") && agree("xyz = zyx") && agree("xy = yx");
    let degree = model.nilpotency_degree() == Some(4);
    checks.push(Check::new(
        "plumb.model-oracle",
        table_validation && sl_laws && null_ok && oracle_agreement && degree,
        "Cayley validation, semilattice laws, null nilpotency 2, free-object degree 4, oracle agreement",
    ));

    // One end-to-end run of each CLI command.
    checks.push(cli_round_trip(cov));

    checks
}

fn cli_round_trip(cov: &mut Coverage) -> Check {
    cov.mark("cli.subgroups");
    cov.mark("cli.special");
    cov.mark("cli.derive");
    cov.mark("cli.perm");

    let dir = std::env::temp_dir().join(format!("varlat-plumbing-{}", std::process::id()));
    if fs::create_dir_all(&dir).is_err() {
        return Check::new("plumb.cli-commands", false, "cannot create scratch directory");
    }
    let run = || -> Result<(bool, String), crate::CliError> {
        let sub = cmd_subgroups(3, Some(LatticeFormat::Json), None, false)?;
        let parsed: LatticeJson = serde_json::from_str(&sub.stdout)
            .map_err(|e| crate::CliError::Usage(e.to_string()))?;
        let sub_ok = parsed.elements.len() == 6 && sub.ok;

        let pentagon_path = dir.join("pentagon.json");
        fs::write(&pentagon_path, pentagon_json())
            .map_err(|e| crate::CliError::Usage(e.to_string()))?;
        let special = cmd_special(
            SpecialSource::LatticeFile(&pentagon_path),
            SpecialKind::Modular,
            true,
            false,
        )?;
        let special_ok = special.stdout.starts_with("4 of 5 elements are modular:")
            && special.stdout.contains("b fails at y = a <= z = c");

        let basis_path = dir.join("swaps.eq");
        fs::write(&basis_path, "xyz = yxz\nxyz = xzy\n")
            .map_err(|e| crate::CliError::Usage(e.to_string()))?;
        let derive = cmd_derive(&basis_path, "xyz = zyx", Some(3), Some(4), None)?;
        let derive_ok = derive.ok && derive.stdout.contains("chain found");

        let pres_path = dir.join("system_i.eq");
        fs::write(&pres_path, "nil_bound: 3\nxyz = zyx\nx^2y = 0\n")
            .map_err(|e| crate::CliError::Usage(e.to_string()))?;
        let perm = cmd_perm(&pres_path, None, 3)?;
        let perm_ok = perm.stdout.contains("Perm_3 = {(), (1 3)}") && perm.stdout.contains("= T13");

        Ok((
            sub_ok && special_ok && derive_ok && perm_ok,
            format!(
                "subgroups: {sub_ok}, special: {special_ok}, derive: {derive_ok}, perm: {perm_ok}"
            ),
        ))
    };
    let result = run();
    let _ = fs::remove_dir_all(&dir);
    match result {
        Ok((pass, detail)) => Check::new("plumb.cli-commands", pass, detail),
        Err(e) => Check::new("plumb.cli-commands", false, e.to_string()),
    }
}
