//! Machine-readable verification reports (JSON lines plus a summary
//! footer) and the operation-coverage registry enforced by `verify all`.

use serde::Serialize;
use std::collections::BTreeSet;

/// One verified claim. `cert` carries an optional certificate artifact
/// (relative filename and contents) written out when a report directory
/// is requested.
#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub detail: String,
    pub cert: Option<Cert>,
}

#[derive(Debug, Clone)]
pub struct Cert {
    pub filename: String,
    pub contents: String,
}

impl Check {
    pub fn new(id: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            id: id.to_string(),
            pass,
            detail: detail.into(),
            cert: None,
        }
    }

    pub fn with_cert(mut self, filename: impl Into<String>, contents: impl Into<String>) -> Self {
        self.cert = Some(Cert {
            filename: filename.into(),
            contents: contents.into(),
        });
        self
    }
}

#[derive(Serialize)]
struct CheckLine<'a> {
    claim: &'a str,
    pass: bool,
    detail: &'a str,
    cert: Option<&'a str>,
}

/// Renders one check as a JSON line; `cert_written` controls whether the
/// certificate path appears (it is null when no report directory exists).
pub fn render_line(check: &Check, cert_written: bool) -> String {
    let line = CheckLine {
        claim: &check.id,
        pass: check.pass,
        detail: &check.detail,
        cert: match (&check.cert, cert_written) {
            (Some(c), true) => Some(c.filename.as_str()),
            _ => None,
        },
    };
    serde_json::to_string(&line).expect("report line serializes")
}

/// Every public operation of every module, by `module.op` name. The
/// `verify all` run must exercise each one at least once.
pub const ALL_OPS: &[&str] = &[
    "lattice.from_covers",
    "lattice.is_modular_element",
    "lattice.is_cancellable_element",
    "lattice.cancellable_witness",
    "lattice.special_elements",
    "lattice.shrink_witness",
    "lattice.complements",
    "perm.compose",
    "perm.inverse",
    "perm.identity",
    "perm.generate",
    "perm.all_subgroups",
    "perm.subgroup_lattice",
    "perm.named",
    "perm.is_maximal_subgroup",
    "words.length",
    "words.content",
    "words.is_linear",
    "words.apply_perm",
    "words.permutational_form",
    "words.expand_zero",
    "words.parse_basis",
    "words.format_basis",
    "derive.derives",
    "derive.validate_chain",
    "nil.free_nil_object",
    "nil.satisfies",
    "nil.perm_group",
    "nil.build_x_variety",
    "nil.variety_join",
    "nil.variety_meet",
    "nil.varieties_equal",
    "nil.counterexample_suite",
    "nil.theorem_variety_check",
    "nil.mod_permut3_check",
    "model.from_table",
    "model.satisfies_identity",
    "model.semilattice_sl",
    "model.null_semigroup",
    "model.sl_identity_check",
    "model.nilpotency_degree",
    "cli.subgroups",
    "cli.special",
    "cli.derive",
    "cli.perm",
    "cli.verify",
];

/// Records which operations a verification run has exercised.
#[derive(Debug, Default, Clone)]
pub struct Coverage {
    seen: BTreeSet<&'static str>,
}

impl Coverage {
    pub fn new() -> Self {
        Coverage::default()
    }

    pub fn mark(&mut self, op: &'static str) {
        debug_assert!(ALL_OPS.contains(&op), "unknown op {op}");
        self.seen.insert(op);
    }

    pub fn merge(&mut self, other: Coverage) {
        self.seen.extend(other.seen);
    }

    pub fn missing(&self) -> Vec<&'static str> {
        ALL_OPS
            .iter()
            .copied()
            .filter(|op| !self.seen.contains(op))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_rendering_is_stable() {
        let check = Check::new("sub-s3.count", true, "6 subgroups");
        assert_eq!(
            render_line(&check, false),
            r#"{"claim":"sub-s3.count","pass":true,"detail":"6 subgroups","cert":null}"#
        );
        let with_cert = check.with_cert("sub_s3.json", "{}");
        assert_eq!(
            render_line(&with_cert, true),
            r#"{"claim":"sub-s3.count","pass":true,"detail":"6 subgroups","cert":"sub_s3.json"}"#
        );
    }

    #[test]
    fn coverage_tracks_missing_ops() {
        let mut cov = Coverage::new();
        assert_eq!(cov.missing().len(), ALL_OPS.len());
        cov.mark("lattice.from_covers");
        assert_eq!(cov.missing().len(), ALL_OPS.len() - 1);
        let mut other = Coverage::new();
        for op in ALL_OPS {
            other.mark(op);
        }
        cov.merge(other);
        assert!(cov.missing().is_empty());
    }
}
