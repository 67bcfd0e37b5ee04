//! Line-oriented graph files.
//!
//! ```text
//! n m d F        F is U (undirected) or D (directed)
//! u v            m lines, 0-based; for D the tail comes first
//! IDS            optional
//! v id           n lines
//! ```
//!
//! Reading recognises circulants and double circulants, so a generated graph
//! survives a round trip with its family tag. A labelling is read back with
//! ID bound `max(n^3, max_id)`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::generators::{make_circulant, make_double_circulant};
use crate::graph::{Labelling, Orientation, RegularGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphData {
    Undirected(RegularGraph),
    Directed(Orientation),
}

impl GraphData {
    pub fn graph(&self) -> &RegularGraph {
        match self {
            GraphData::Undirected(g) => g,
            GraphData::Directed(o) => o.graph(),
        }
    }

    pub fn orientation(&self) -> Option<&Orientation> {
        match self {
            GraphData::Directed(o) => Some(o),
            GraphData::Undirected(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub data: GraphData,
    pub labelling: Option<Labelling>,
}

impl GraphFile {
    pub fn undirected(g: RegularGraph) -> Self {
        GraphFile {
            data: GraphData::Undirected(g),
            labelling: None,
        }
    }

    pub fn directed(o: Orientation) -> Self {
        GraphFile {
            data: GraphData::Directed(o),
            labelling: None,
        }
    }

    pub fn with_labelling(mut self, lab: Labelling) -> Self {
        self.labelling = Some(lab);
        self
    }
}

pub fn write_graph_file(file: &GraphFile) -> String {
    let g = file.data.graph();
    let (flag, pairs) = match &file.data {
        GraphData::Undirected(g) => ('U', g.edges()),
        GraphData::Directed(o) => ('D', o.arcs()),
    };
    let mut out = String::new();
    writeln!(out, "{} {} {} {flag}", g.n(), g.m(), g.degree()).unwrap();
    for (u, v) in pairs {
        writeln!(out, "{u} {v}").unwrap();
    }
    if let Some(lab) = &file.labelling {
        out.push_str("IDS\n");
        for (v, id) in lab.ids().iter().enumerate() {
            writeln!(out, "{v} {id}").unwrap();
        }
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-blank line with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        self.inner
            .by_ref()
            .map(|(i, l)| (i + 1, l.trim()))
            .find(|(_, l)| !l.is_empty())
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next().ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unexpected end of file, expected {what}"),
        })
    }
}

fn field<T: FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} {tok:?}"),
    })
}

fn pair(line: usize, text: &str, a: &str, b: &str) -> Result<(usize, u64)> {
    let mut toks = text.split_whitespace();
    let x = field(line, toks.next(), a)?;
    let y = field(line, toks.next(), b)?;
    if toks.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: "trailing tokens".into(),
        });
    }
    Ok((x, y))
}

/// Replaces `g` by the generated family member it equals, if any.
fn recognise_family(g: RegularGraph) -> RegularGraph {
    let (n, d) = (g.n(), g.degree());
    let candidate = if d % 2 == 0 {
        make_circulant(n, d).ok()
    } else if n % 2 == 0 {
        make_double_circulant(n / 2, d).ok()
    } else {
        None
    };
    match candidate {
        Some(c) if c.edges() == g.edges() => c,
        _ => g,
    }
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (hl, header) = lines.expect("header")?;
    let mut toks = header.split_whitespace();
    let n: usize = field(hl, toks.next(), "vertex count")?;
    let m: usize = field(hl, toks.next(), "edge count")?;
    let d: usize = field(hl, toks.next(), "degree")?;
    let directed = match toks.next() {
        Some("U") => false,
        Some("D") => true,
        other => {
            return Err(Error::Parse {
                line: hl,
                msg: format!("graph kind must be U or D, got {other:?}"),
            })
        }
    };
    let mut pairs = Vec::with_capacity(m);
    for _ in 0..m {
        let (l, text) = lines.expect("edge line")?;
        let (u, v) = pair(l, text, "endpoint", "endpoint")?;
        pairs.push((u, v as usize));
    }
    let graph = RegularGraph::from_edges(n, &pairs)?;
    if !graph.validate_regular(d) {
        return Err(Error::Parse {
            line: hl,
            msg: format!("edges do not form a {d}-regular graph"),
        });
    }
    let graph = recognise_family(graph);
    let data = if directed {
        GraphData::Directed(Orientation::from_arcs(graph, &pairs)?)
    } else {
        GraphData::Undirected(graph)
    };

    let labelling = match lines.next() {
        None => None,
        Some((_, "IDS")) => {
            let mut ids = vec![None; n];
            for _ in 0..n {
                let (l, text) = lines.expect("ID line")?;
                let (v, id) = pair(l, text, "vertex", "ID")?;
                if v >= n || ids[v].is_some() {
                    return Err(Error::Parse {
                        line: l,
                        msg: format!("vertex {v} out of range or repeated"),
                    });
                }
                ids[v] = Some(id);
            }
            let ids: Vec<u64> = ids
                .into_iter()
                .map(|id| id.expect("n distinct vertices"))
                .collect();
            let bound = Labelling::default_bound(n).max(ids.iter().copied().max().unwrap_or(1));
            Some(Labelling::with_bound(ids, bound)?)
        }
        Some((l, other)) => {
            return Err(Error::Parse {
                line: l,
                msg: format!("expected IDS section or end of file, got {other:?}"),
            })
        }
    };
    if let Some((l, _)) = lines.next() {
        return Err(Error::Parse {
            line: l,
            msg: "trailing content".into(),
        });
    }
    Ok(GraphFile { data, labelling })
}
