//! Interpretation bases given by finite sets of one-conclusion nets.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::net::{canonical_key, parse_net, CanonMode, LinkLabel, Net};
use crate::rewrite::{orthogonal, SearchConfig};

#[derive(Debug, Error)]
pub enum BasisError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("basis file is not valid JSON: {0}")]
    Json(String),
    #[error("net {path}: {message}")]
    Net { path: String, message: String },
    #[error("net {path} has {arity} conclusions, bases need exactly one")]
    Arity { path: String, arity: usize },
    #[error("literal {literal}: generator {generator} and opponent {opponent} are not orthogonal")]
    Inconsistent {
        literal: String,
        generator: usize,
        opponent: usize,
    },
    #[error("literal {literal}: orthogonality of generator {generator} and opponent {opponent} is undecided within budget")]
    Undecided {
        literal: String,
        generator: usize,
        opponent: usize,
    },
}

/// Generators of a literal's type and opponents, nets standing for members
/// of its orthogonal.
#[derive(Clone, Debug, Default)]
pub struct LiteralEntry {
    pub generators: Vec<Net>,
    pub opponents: Vec<Net>,
}

/// A literal: a variable name and its polarity.
pub type Literal = (String, bool);

fn literal_text(l: &Literal) -> String {
    if l.1 {
        l.0.clone()
    } else {
        format!("{}^", l.0)
    }
}

/// A finite interpretation basis. Literals without an explicit entry use
/// the default entry of their polarity.
#[derive(Clone, Debug)]
pub struct Basis {
    pub name: String,
    pub positive: LiteralEntry,
    pub negative: LiteralEntry,
    pub literals: BTreeMap<Literal, LiteralEntry>,
}

fn key(n: &Net) -> crate::net::CanonKey {
    canonical_key(n, CanonMode::Exact)
}

fn root_label(n: &Net) -> Option<LinkLabel> {
    let c = *n.arrangement().first()?;
    n.links().iter().find(|l| l.targets().contains(&c)).map(|l| l.label())
}

impl Basis {
    pub fn entry(&self, name: &str, positive: bool) -> &LiteralEntry {
        self.literals
            .get(&(name.to_string(), positive))
            .unwrap_or(if positive { &self.positive } else { &self.negative })
    }

    /// Opponents of a literal: its own opponents together with the
    /// generators of its dual, without repetitions.
    pub fn literal_opponents(&self, name: &str, positive: bool) -> Vec<Net> {
        let mut seen = BTreeSet::new();
        self.entry(name, positive)
            .opponents
            .iter()
            .chain(&self.entry(name, !positive).generators)
            .filter(|n| seen.insert(key(n)))
            .cloned()
            .collect()
    }

    fn entries(&self) -> Vec<(String, &LiteralEntry)> {
        let mut out = vec![("*".to_string(), &self.positive), ("*^".to_string(), &self.negative)];
        out.extend(self.literals.iter().map(|(l, e)| (literal_text(l), e)));
        out
    }

    /// Every entry has the unary daimon among its generators.
    pub fn is_approximable(&self) -> bool {
        let one = key(&Net::daimon(1));
        self.entries()
            .iter()
            .all(|(_, e)| e.generators.iter().any(|g| key(g) == one))
    }

    /// Every literal has a par-rooted and a tensor-rooted opponent.
    pub fn is_daimon_basis(&self) -> bool {
        let mut lits: Vec<(String, bool)> = vec![(String::new(), true), (String::new(), false)];
        lits.extend(self.literals.keys().flat_map(|(n, _)| [(n.clone(), true), (n.clone(), false)]));
        lits.iter().all(|(n, pol)| {
            let ops = self.literal_opponents(n, *pol);
            let has = |want| ops.iter().any(|o| root_label(o) == Some(want));
            has(LinkLabel::Par) && has(LinkLabel::Tensor)
        })
    }

    /// Checks that every generator is orthogonal to every opponent of the
    /// same literal.
    pub fn check_consistency(&self, cfg: &SearchConfig) -> Result<(), BasisError> {
        for (literal, e) in self.entries() {
            for (gi, g) in e.generators.iter().enumerate() {
                for (oi, o) in e.opponents.iter().enumerate() {
                    match orthogonal(g, o, cfg).decided() {
                        Some(true) => {}
                        Some(false) => {
                            return Err(BasisError::Inconsistent {
                                literal,
                                generator: gi,
                                opponent: oi,
                            })
                        }
                        None => {
                            return Err(BasisError::Undecided {
                                literal,
                                generator: gi,
                                opponent: oi,
                            })
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Reads a basis file. Net files are resolved relative to its directory.
    pub fn load(path: &Path) -> Result<Basis, BasisError> {
        let text = std::fs::read_to_string(path).map_err(|e| BasisError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let dir = path.parent().unwrap_or(Path::new("."));
        Basis::from_json(&text, |f| {
            let p = dir.join(f);
            std::fs::read_to_string(&p).map_err(|e| BasisError::Io {
                path: p.display().to_string(),
                message: e.to_string(),
            })
        })
    }

    /// Parses a basis description; `read` returns the text of a net file.
    ///
    /// ```json
    /// { "name": "b",
    ///   "default":      { "generators": ["one.net"], "opponents": ["t.net"] },
    ///   "default_dual": { "generators": ["one.net"], "opponents": ["t.net"] },
    ///   "literals": { "X^": { "generators": [], "opponents": ["p.net"] } } }
    /// ```
    pub fn from_json(
        text: &str,
        read: impl Fn(&str) -> Result<String, BasisError>,
    ) -> Result<Basis, BasisError> {
        #[derive(Deserialize, Default)]
        #[serde(deny_unknown_fields)]
        struct EntryFile {
            #[serde(default)]
            generators: Vec<String>,
            #[serde(default)]
            opponents: Vec<String>,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct BasisFile {
            #[serde(default)]
            name: String,
            #[serde(default)]
            default: EntryFile,
            #[serde(default)]
            default_dual: EntryFile,
            #[serde(default)]
            literals: BTreeMap<String, EntryFile>,
        }
        let file: BasisFile = serde_json::from_str(text).map_err(|e| BasisError::Json(e.to_string()))?;
        let load = |f: &String| -> Result<Net, BasisError> {
            let n = parse_net(&read(f)?).map_err(|e| BasisError::Net {
                path: f.clone(),
                message: e.to_string(),
            })?;
            if n.arity() != 1 {
                return Err(BasisError::Arity {
                    path: f.clone(),
                    arity: n.arity(),
                });
            }
            Ok(n)
        };
        let entry = |e: &EntryFile| -> Result<LiteralEntry, BasisError> {
            Ok(LiteralEntry {
                generators: e.generators.iter().map(load).collect::<Result<_, _>>()?,
                opponents: e.opponents.iter().map(load).collect::<Result<_, _>>()?,
            })
        };
        let mut literals = BTreeMap::new();
        for (lit, e) in &file.literals {
            let lit = lit.trim();
            let l = match lit.strip_suffix('^') {
                Some(v) => (v.trim().to_string(), false),
                None => (lit.to_string(), true),
            };
            literals.insert(l, entry(e)?);
        }
        Ok(Basis {
            name: file.name,
            positive: entry(&file.default)?,
            negative: entry(&file.default_dual)?,
            literals,
        })
    }
}

fn net(src: &str) -> Net {
    parse_net(src).expect("built-in net")
}

/// The unary daimon.
pub fn daimon_one() -> Net {
    net("dai a\nconclusions: a")
}

/// Tensor over two unary daimons.
pub fn tensor_of_daimons() -> Net {
    net("dai a\ndai b\ntensor a b -> c\nconclusions: c")
}

/// Par over one binary daimon.
pub fn par_of_daimon() -> Net {
    net("dai a b\npar a b -> c\nconclusions: c")
}

/// Par over two unary daimons, the disconnected net.
pub fn par_of_daimons() -> Net {
    net("dai a\ndai b\npar a b -> c\nconclusions: c")
}

/// Tensor over one binary daimon.
pub fn tensor_of_daimon() -> Net {
    net("dai a b\ntensor a b -> c\nconclusions: c")
}

/// Every literal is generated by the unary daimon and tested against the
/// three nets orthogonal to it.
pub fn basis_one() -> Basis {
    let e = LiteralEntry {
        generators: vec![daimon_one()],
        opponents: vec![daimon_one(), tensor_of_daimons(), par_of_daimon()],
    };
    Basis {
        name: "one".into(),
        positive: e.clone(),
        negative: e,
        literals: BTreeMap::new(),
    }
}

/// The basis built on the disconnected par net, every variable positive.
pub fn basis_par() -> Basis {
    basis_par_with(&BTreeSet::new())
}

/// The basis built on the disconnected par net. A positive variable is
/// interpreted as the orthogonal of that net and its dual contains it;
/// variables in `flipped` are interpreted the other way round.
pub fn basis_par_with(flipped: &BTreeSet<String>) -> Basis {
    let pos = LiteralEntry {
        generators: vec![tensor_of_daimon()],
        opponents: vec![par_of_daimons()],
    };
    let neg = LiteralEntry {
        generators: vec![par_of_daimons()],
        opponents: vec![tensor_of_daimon()],
    };
    let mut literals = BTreeMap::new();
    for v in flipped {
        literals.insert((v.clone(), true), neg.clone());
        literals.insert((v.clone(), false), pos.clone());
    }
    let mut name = "par".to_string();
    if !flipped.is_empty() {
        name += &format!("[-{}]", flipped.iter().cloned().collect::<Vec<_>>().join(","));
    }
    Basis {
        name,
        positive: pos,
        negative: neg,
        literals,
    }
}
