//! The five `varlat` commands as plain functions returning their stdout,
//! so that integration tests and the plumbing checks can drive them
//! without spawning processes. Timing never goes into `stdout`: identical
//! inputs must produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use varlat_core::derive::{derives, Derivation, DerivationChain, DeriveBounds};
use varlat_core::nil::PermGroupOutcome;
use varlat_core::parse::{format_identity, parse_identity, parse_presentation_source};
use varlat_core::subgroups::{self, canonical_label};
use varlat_core::words::IdentityRhs;
use varlat_core::{FiniteLattice, NilPresentation, SpecialKind};

use crate::dot::lattice_to_dot;
use crate::json::{ChainJson, LatticeJson};
use crate::report::Coverage;
use crate::suites;

/// Usage and parse problems exit with code 2; everything else is a
/// verification outcome carried in [`CmdOutput`].
#[derive(Debug)]
pub enum CliError {
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Deterministic stdout plus the pass/fail verdict (`ok = false` exits 1).
#[derive(Debug)]
pub struct CmdOutput {
    pub stdout: String,
    pub ok: bool,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput { stdout, ok: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeFormat {
    Json,
    Dot,
}

fn write_or_print(payload: String, out: Option<&Path>, summary: String) -> Result<CmdOutput, CliError> {
    match out {
        Some(path) => {
            fs::write(path, payload).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(CmdOutput::ok(format!("{summary}wrote {}\n", path.display())))
        }
        None => Ok(CmdOutput::ok(payload)),
    }
}

/// `varlat subgroups --n N [--format json|dot] [--out PATH] [--allow-large]`
pub fn cmd_subgroups(
    n: usize,
    format: Option<LatticeFormat>,
    out: Option<&Path>,
    allow_large: bool,
) -> Result<CmdOutput, CliError> {
    let result = if allow_large {
        subgroups::subgroup_lattice_large(n)
    } else {
        subgroups::subgroup_lattice(n)
    }
    .map_err(|e| usage(e.to_string()))?;
    let lat = &result.lattice;

    let mut profile: BTreeMap<usize, usize> = BTreeMap::new();
    for g in &result.groups {
        *profile.entry(g.order()).or_insert(0) += 1;
    }
    let profile_line = profile
        .iter()
        .map(|(o, c)| format!("{o}x{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    let summary = format!(
        "Sub(S{n}): {} subgroups\norder profile: {profile_line}\nheight: {}\n",
        lat.size(),
        lat.height()
    );

    match format {
        None => Ok(CmdOutput::ok(summary)),
        Some(LatticeFormat::Json) => {
            let payload = serde_json::to_string_pretty(&LatticeJson::from_lattice(lat)).unwrap() + "\n";
            write_or_print(payload, out, summary)
        }
        Some(LatticeFormat::Dot) => {
            let payload = lattice_to_dot(lat, &format!("sub_s{n}"));
            write_or_print(payload, out, summary)
        }
    }
}

/// Where `varlat special` finds its lattice.
pub enum SpecialSource<'a> {
    LatticeFile(&'a Path),
    Subgroups(usize),
}

/// `varlat special (--lattice FILE | --subgroups N) --kind ... [--witness]`
pub fn cmd_special(
    source: SpecialSource<'_>,
    kind: SpecialKind,
    witness: bool,
    allow_large: bool,
) -> Result<CmdOutput, CliError> {
    let lat: FiniteLattice = match source {
        SpecialSource::LatticeFile(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let json: LatticeJson = serde_json::from_str(&text)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            json.to_lattice()
                .map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        SpecialSource::Subgroups(n) => {
            if allow_large {
                subgroups::subgroup_lattice_large(n)
            } else {
                subgroups::subgroup_lattice(n)
            }
            .map_err(|e| usage(e.to_string()))?
            .lattice
        }
    };

    let kind_name = match kind {
        SpecialKind::Modular => "modular",
        SpecialKind::Cancellable => "cancellable",
    };
    let special = lat.special_elements(kind);
    let name = |i: usize| {
        lat.label(i)
            .map(str::to_string)
            .unwrap_or_else(|| format!("e{i}"))
    };
    let mut out = format!(
        "{} of {} elements are {kind_name}:\n",
        special.len(),
        lat.size()
    );
    for &i in &special {
        out.push_str(&format!("  {}\n", name(i)));
    }
    if witness {
        for x in 0..lat.size() {
            if special.contains(&x) {
                continue;
            }
            match kind {
                SpecialKind::Cancellable => {
                    let w = lat.cancellable_witness(x).unwrap().unwrap();
                    out.push_str(&format!(
                        "  {} fails: join and meet cannot tell {} from {}\n",
                        name(x),
                        name(w.y),
                        name(w.z)
                    ));
                }
                SpecialKind::Modular => {
                    let (y, z) = lat.modular_violation(x).unwrap().unwrap();
                    out.push_str(&format!(
                        "  {} fails at y = {} <= z = {}\n",
                        name(x),
                        name(y),
                        name(z)
                    ));
                }
            }
        }
    }
    Ok(CmdOutput::ok(out))
}

fn render_chain(chain: &DerivationChain, basis_len: usize) -> String {
    let mut out = String::new();
    for (i, w) in chain.words.iter().enumerate() {
        if i == 0 {
            out.push_str(&format!("  {}\n", varlat_core::parse::format_word(w)));
        } else {
            let step = &chain.steps[i - 1];
            debug_assert!(step.axiom < basis_len);
            out.push_str(&format!(
                "  = {}   [axiom {} {}]\n",
                varlat_core::parse::format_word(w),
                step.axiom,
                step.direction
            ));
        }
    }
    out
}

/// `varlat derive --basis FILE --target "u = v" [--max-len L] [--max-steps S]`
///
/// Exit code 0 only when a chain is found; the chain JSON goes to `--out`.
pub fn cmd_derive(
    basis_path: &Path,
    target: &str,
    max_len: Option<usize>,
    max_steps: Option<usize>,
    json_out: Option<&Path>,
) -> Result<CmdOutput, CliError> {
    let text = fs::read_to_string(basis_path)
        .map_err(|e| usage(format!("cannot read {}: {e}", basis_path.display())))?;
    let basis = varlat_core::parse::parse_basis(&text)
        .map_err(|e| usage(format!("{}: {e}", basis_path.display())))?;
    let target = parse_identity(target).map_err(|e| usage(format!("target: {e}")))?;

    let needed = match target.rhs() {
        IdentityRhs::Word(v) => target.lhs().len().max(v.len()),
        IdentityRhs::Zero => target.lhs().len() + 1,
    };
    let bounds = DeriveBounds {
        max_len: max_len.unwrap_or(needed + 2),
        max_steps: max_steps.unwrap_or(12),
    };
    let expanded = basis.expand_zeros();
    let outcome = derives(&basis, &target, bounds).map_err(|e| usage(e.to_string()))?;

    let mut out = String::new();
    out.push_str(&format!(
        "target: {}\naxioms (zero identities expanded):\n",
        format_identity(&target)
    ));
    for (i, id) in expanded.iter().enumerate() {
        out.push_str(&format!("  {i}: {}\n", format_identity(id)));
    }
    match outcome {
        Some(Derivation::Chain(chain)) => {
            out.push_str(&format!("chain found ({} steps):\n", chain.step_count()));
            out.push_str(&render_chain(&chain, expanded.len()));
            if let Some(path) = json_out {
                let payload =
                    serde_json::to_string_pretty(&ChainJson::from_chain(&chain)).unwrap() + "\n";
                fs::write(path, payload)
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                out.push_str(&format!("wrote {}\n", path.display()));
            }
            Ok(CmdOutput::ok(out))
        }
        Some(Derivation::Zero {
            absorb_left,
            absorb_right,
        }) => {
            out.push_str(&format!(
                "zero target: both absorption components derived\nleft component ({} steps):\n",
                absorb_left.step_count()
            ));
            out.push_str(&render_chain(&absorb_left, expanded.len()));
            out.push_str(&format!(
                "right component ({} steps):\n",
                absorb_right.step_count()
            ));
            out.push_str(&render_chain(&absorb_right, expanded.len()));
            if let Some(path) = json_out {
                let payload = serde_json::to_string_pretty(&serde_json::json!({
                    "absorb_left": ChainJson::from_chain(&absorb_left),
                    "absorb_right": ChainJson::from_chain(&absorb_right),
                }))
                .unwrap()
                    + "\n";
                fs::write(path, payload)
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                out.push_str(&format!("wrote {}\n", path.display()));
            }
            Ok(CmdOutput::ok(out))
        }
        None => {
            out.push_str(&format!(
                "no chain within bounds (max_len {}, max_steps {})\n",
                bounds.max_len, bounds.max_steps
            ));
            Ok(CmdOutput { stdout: out, ok: false })
        }
    }
}

/// `varlat perm --basis FILE [--nil-bound D] --n N`
pub fn cmd_perm(
    basis_path: &Path,
    nil_bound: Option<usize>,
    n: usize,
) -> Result<CmdOutput, CliError> {
    if n == 0 || n > subgroups::MAX_DEGREE {
        return Err(usage(format!(
            "--n must be between 1 and {}",
            subgroups::MAX_DEGREE
        )));
    }
    let text = fs::read_to_string(basis_path)
        .map_err(|e| usage(format!("cannot read {}: {e}", basis_path.display())))?;
    let (header_bound, basis) =
        parse_presentation_source(&text).map_err(|e| usage(format!("{}: {e}", basis_path.display())))?;
    let bound = nil_bound
        .or(header_bound)
        .ok_or_else(|| usage("no nil bound: pass --nil-bound or add a `nil_bound: d` header"))?;
    // Keeps the bounded word universe at desk scale.
    if bound > 8 {
        return Err(usage("nil bound capped at 8"));
    }
    let pres = NilPresentation::new(basis, bound).map_err(|e| usage(e.to_string()))?;

    let PermGroupOutcome {
        group,
        nilpotence_case,
    } = pres.perm_group(n);
    let mut out = format!(
        "Perm_{n} = {{{}}}\norder {} = {}\n",
        group.cycle_strings().join(", "),
        group.order(),
        canonical_label(&group)
    );
    if nilpotence_case {
        out.push_str("nilpotence case: the variety satisfies x1...x_n = 0, so every length-n permutational identity holds\n");
    }
    Ok(CmdOutput::ok(out))
}

/// `varlat verify SUITE [--out DIR]`
pub fn cmd_verify(suite: &str, out_dir: Option<&Path>) -> Result<CmdOutput, CliError> {
    let mut cov = Coverage::new();
    let checks = suites::run_suite(suite, &mut cov).ok_or_else(|| {
        usage(format!(
            "unknown suite {suite:?}; expected one of {}",
            suites::SUITES.join(", ")
        ))
    })?;

    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)
            .map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    let mut out = String::new();
    let mut passed = 0usize;
    for check in &checks {
        let mut cert_written = false;
        if let (Some(dir), Some(cert)) = (out_dir, &check.cert) {
            let path = dir.join(&cert.filename);
            fs::write(&path, &cert.contents)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            cert_written = true;
        }
        out.push_str(&crate::report::render_line(check, cert_written));
        out.push('\n');
        if check.pass {
            passed += 1;
        }
    }
    if let Some(dir) = out_dir {
        let report_path = dir.join(format!("{suite}.jsonl"));
        fs::write(&report_path, &out)
            .map_err(|e| usage(format!("cannot write {}: {e}", report_path.display())))?;
    }
    out.push_str(&format!("# suite {suite}: {passed}/{} checks passed\n", checks.len()));
    Ok(CmdOutput {
        stdout: out,
        ok: passed == checks.len(),
    })
}
