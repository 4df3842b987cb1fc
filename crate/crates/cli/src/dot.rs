//! DOT export of a finite lattice: one node per element labeled by name,
//! one edge per cover, ranked bottom-to-top.

use varlat_core::FiniteLattice;

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn lattice_to_dot(l: &FiniteLattice, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {name} {{\n"));
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=plaintext];\n");
    for i in 0..l.size() {
        let label = l
            .label(i)
            .map(str::to_string)
            .unwrap_or_else(|| format!("e{i}"));
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", escape(&label)));
    }
    for (a, b) in l.covers() {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_for_sub_s3() {
        let lat = varlat_core::subgroups::subgroup_lattice(3).unwrap().lattice;
        let dot = lattice_to_dot(&lat, "sub_s3");
        assert!(dot.starts_with("digraph sub_s3 {"));
        assert!(dot.contains("rankdir=BT"));
        assert!(dot.contains("n0 [label=\"T\"]"));
        assert!(dot.contains("n5 [label=\"S3\"]"));
        // Eight covers: four up from T, four up to S3.
        assert_eq!(dot.matches(" -> ").count(), 8);
    }

    #[test]
    fn labels_are_escaped() {
        let lat = varlat_core::FiniteLattice::from_covers(2, &[(0, 1)])
            .unwrap()
            .with_labels(vec!["a\"b".into(), "top".into()])
            .unwrap();
        let dot = lattice_to_dot(&lat, "g");
        assert!(dot.contains("a\\\"b"));
    }
}
