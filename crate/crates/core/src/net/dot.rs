use std::fmt::Write;

use super::text::print_names;
use super::{LinkLabel, Net};

/// Graphviz rendering. Daimons are boxes, connectives triangles and cuts
/// diamonds; conclusions are annotated with their index.
pub fn to_dot(net: &Net) -> String {
    let names = print_names(net);
    let mut out = String::from("digraph net {\n  rankdir=TB;\n");
    for p in net.positions() {
        let _ = writeln!(out, "  p{} [shape=plaintext, label=\"{}\"];", p.0, escape(&names[&p]));
    }
    for link in net.links() {
        let shape = match link.label() {
            LinkLabel::Daimon => "box",
            LinkLabel::Tensor | LinkLabel::Par => "triangle",
            LinkLabel::Cut => "diamond",
        };
        let _ = writeln!(
            out,
            "  l{} [shape={}, label=\"{}\"];",
            link.id().0,
            shape,
            link.label().symbol()
        );
        for (i, p) in link.sources().iter().enumerate() {
            let _ = writeln!(out, "  p{} -> l{} [label=\"{}\"];", p.0, link.id().0, i + 1);
        }
        for (j, p) in link.targets().iter().enumerate() {
            let _ = writeln!(out, "  l{} -> p{} [label=\"{}\"];", link.id().0, p.0, j + 1);
        }
    }
    for (i, p) in net.arrangement().iter().enumerate() {
        let _ = writeln!(
            out,
            "  c{i} [shape=none, label=\"[{}]\"];\n  p{} -> c{i} [style=dotted];",
            i + 1,
            p.0
        );
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::parse_net;

    #[test]
    fn dot_mentions_every_link() {
        let n = parse_net("dai a b\npar a b -> c\nconclusions: c").unwrap();
        let d = to_dot(&n);
        assert!(d.starts_with("digraph"));
        assert!(d.contains("⅋"));
        assert!(d.contains("⨯"));
        assert_eq!(d.matches("->").count(), 6);
    }
}
