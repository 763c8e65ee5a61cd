//! Line-oriented text format for nets.
//!
//! ```text
//! # comment
//! dai a b          # daimon with targets a, b (also: ⨯)
//! par a b -> c     # also: ⅋
//! tensor c d -> e  # also: ⊗
//! cut e f
//! conclusions: c g
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;
use std::sync::Arc;

use thiserror::Error;

use super::{Hypergraph, Link, LinkId, LinkLabel, Net, NetError, Pos};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid net: {source}")]
    Invalid {
        #[source]
        source: NetError,
    },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn keyword(tok: &str) -> Option<LinkLabel> {
    match tok {
        "dai" | "daimon" | "⨯" => Some(LinkLabel::Daimon),
        "tensor" | "⊗" => Some(LinkLabel::Tensor),
        "par" | "⅋" => Some(LinkLabel::Par),
        "cut" => Some(LinkLabel::Cut),
        _ => None,
    }
}

fn valid_name(tok: &str) -> bool {
    !tok.is_empty()
        && tok != "->"
        && !tok.contains([':', '#', '<', '>', ',', '(', ')'])
        && keyword(tok).is_none()
}

pub fn parse_net(input: &str) -> Result<Net, ParseError> {
    let mut ids: HashMap<String, Pos> = HashMap::new();
    let mut names: BTreeMap<Pos, Arc<str>> = BTreeMap::new();
    let mut links: Vec<Link> = Vec::new();
    let mut conclusions: Option<Vec<Pos>> = None;
    let mut intern = |tok: &str, line: usize, names: &mut BTreeMap<Pos, Arc<str>>| {
        if !valid_name(tok) {
            return Err(syntax(line, format!("invalid position name {tok:?}")));
        }
        let next = Pos(ids.len() as u32);
        let p = *ids.entry(tok.to_string()).or_insert(next);
        names.entry(p).or_insert_with(|| Arc::from(tok));
        Ok(p)
    };

    for (i, raw) in input.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix("conclusions") {
            let rest = rest
                .trim_start()
                .strip_prefix(':')
                .ok_or_else(|| syntax(line, "expected ':' after 'conclusions'"))?;
            if conclusions.is_some() {
                return Err(syntax(line, "conclusions given twice"));
            }
            let ps = rest
                .split_whitespace()
                .map(|t| intern(t, line, &mut names))
                .collect::<Result<Vec<_>, _>>()?;
            conclusions = Some(ps);
            continue;
        }
        let mut toks = text.split_whitespace();
        let head = toks.next().expect("non-empty line");
        let label = keyword(head).ok_or_else(|| syntax(line, format!("unknown link {head:?}")))?;
        let rest: Vec<&str> = toks.collect();
        let (srcs, tgts): (Vec<&str>, Vec<&str>) = match label {
            LinkLabel::Daimon => {
                let body: Vec<&str> = rest
                    .iter()
                    .map(|t| t.trim_matches(|c| c == '<' || c == '>' || c == ','))
                    .filter(|t| !t.is_empty())
                    .collect();
                (vec![], body)
            }
            LinkLabel::Cut => {
                if rest.len() != 2 {
                    return Err(syntax(line, "cut takes exactly two positions"));
                }
                (rest, vec![])
            }
            LinkLabel::Tensor | LinkLabel::Par => {
                if rest.len() != 4 || rest[2] != "->" {
                    return Err(syntax(
                        line,
                        format!("expected '{} a b -> c'", label.keyword()),
                    ));
                }
                (rest[..2].to_vec(), vec![rest[3]])
            }
        };
        let sources = srcs
            .iter()
            .map(|t| intern(t, line, &mut names))
            .collect::<Result<Vec<_>, _>>()?;
        let targets = tgts
            .iter()
            .map(|t| intern(t, line, &mut names))
            .collect::<Result<Vec<_>, _>>()?;
        let id = LinkId(links.len() as u32);
        let link = Link::new(id, label, sources, targets).map_err(|e| match e {
            NetError::Loop(_) => syntax(line, "a position occurs twice in one link"),
            other => ParseError::Invalid { source: other },
        })?;
        links.push(link);
    }
    let conclusions = conclusions.ok_or_else(|| syntax(0, "missing 'conclusions:' line"))?;
    let mut body = Hypergraph::empty();
    body.positions = ids.values().copied().collect();
    body.links = links;
    body.names = names;
    Net::new(body, conclusions).map_err(|source| ParseError::Invalid { source })
}

/// Names for printing: stored names, made unique, with generated names for
/// unnamed positions.
pub(crate) fn print_names(net: &Net) -> HashMap<Pos, String> {
    let mut taken: BTreeSet<String> = BTreeSet::new();
    let mut out = HashMap::new();
    let positions = net.positions();
    for p in &positions {
        if let Some(n) = net.name(*p).filter(|n| valid_name(n)) {
            let mut n = n.to_string();
            while taken.contains(&n) {
                n.push('\'');
            }
            taken.insert(n.clone());
            out.insert(*p, n);
        }
    }
    for p in &positions {
        if !out.contains_key(p) {
            let mut n = format!("_{}", p.0);
            while taken.contains(&n) {
                n.push('\'');
            }
            taken.insert(n.clone());
            out.insert(*p, n);
        }
    }
    out
}

pub(crate) fn print_net(net: &Net) -> String {
    let names = print_names(net);
    let mut out = String::new();
    for link in net.links() {
        out.push_str(link.label().keyword());
        for p in link.sources() {
            let _ = write!(out, " {}", names[p]);
        }
        match link.label() {
            LinkLabel::Tensor | LinkLabel::Par => {
                let _ = write!(out, " -> {}", names[&link.targets()[0]]);
            }
            LinkLabel::Daimon => {
                for p in link.targets() {
                    let _ = write!(out, " {}", names[p]);
                }
            }
            LinkLabel::Cut => {}
        }
        out.push('\n');
    }
    out.push_str("conclusions:");
    for p in net.arrangement() {
        let _ = write!(out, " {}", names[p]);
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{canonical_key, CanonMode};

    #[test]
    fn parse_and_print_round_trip() {
        let src = "dai a b\npar a b -> c\ndai d e\ncut c d\nconclusions: e\n";
        let n = parse_net(src).unwrap();
        assert_eq!(n.to_string(), src);
        let again = parse_net(&n.to_string()).unwrap();
        assert_eq!(
            canonical_key(&n, CanonMode::Exact),
            canonical_key(&again, CanonMode::Exact)
        );
    }

    #[test]
    fn unicode_keywords_and_comments() {
        let n = parse_net("# identity\n⨯ <a, b>\n⅋ a b -> c  # par\nconclusions: c").unwrap();
        assert_eq!(n.count(LinkLabel::Par), 1);
        assert_eq!(n.links()[0].targets().len(), 2);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        assert_eq!(
            parse_net("dai a\nfoo a\nconclusions: a"),
            Err(ParseError::Syntax {
                line: 2,
                message: "unknown link \"foo\"".into()
            })
        );
        assert!(matches!(
            parse_net("dai a b\npar a b c\nconclusions: c"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(parse_net("dai a"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_net("dai a\ncut a a\nconclusions:"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn printer_invents_names_for_unnamed_positions() {
        let n = Net::daimon(2).parallel(&Net::daimon(1));
        let text = n.to_string();
        let back = parse_net(&text).unwrap();
        assert_eq!(back.arity(), 3);
    }
}
