//! Text formats: `.fatg` documents, reversal scripts, DOT trees and the JSON
//! summary.
//!
//! ```text
//! fatgraph 1
//! n 1
//! sigma (1 3)(2)
//! omega + + +
//! ```
//!
//! An optional `gamma` line gives an explicit boundary in cycle notation.
//! `#` starts a comment anywhere on a line.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{BlockEntity, Decomposition, NestingTree, NodeId, NodeKind};
use crate::model::{Fatgraph, ModelError, Sector, Sign};
use crate::perm;
use crate::planner::{self, PlanError};
use crate::reversal::{Reversal, ReversalKind};

pub const FORMAT_VERSION: u32 = 1;
pub const MAX_RIBBONS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Plan(#[from] PlanError),
}

impl IoError {
    pub fn is_internal(&self) -> bool {
        match self {
            IoError::Syntax { .. } => false,
            IoError::Model(e) => e.is_internal(),
            IoError::Plan(e) => e.is_internal(),
        }
    }
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> IoError {
    IoError::Syntax { line, col, message: message.into() }
}

/// Whitespace-separated tokens with their 1-based columns, comment stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (k, c) in body.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &body[s..k]));
                start = None;
            }
            (false, None) => start = Some(k),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out
}

fn number(line: usize, col: usize, tok: &str) -> Result<usize, IoError> {
    tok.parse().map_err(|_| syntax(line, col, format!("expected a non-negative integer, found {tok:?}")))
}

/// Parses "(1 3)(2)"-style cycles from the text after the directive.
fn cycles(line: usize, text: &str, offset: usize) -> Result<Vec<Vec<Sector>>, IoError> {
    let mut out = Vec::new();
    let mut current: Option<Vec<Sector>> = None;
    let mut digits = String::new();
    let mut digits_col = 0;
    let flush = |digits: &mut String, current: &mut Option<Vec<Sector>>, col: usize| -> Result<(), IoError> {
        if !digits.is_empty() {
            let x = number(line, col, digits)?;
            current.as_mut().expect("inside a cycle").push(x);
            digits.clear();
        }
        Ok(())
    };
    for (k, c) in text.char_indices() {
        let col = offset + k;
        match c {
            '(' if current.is_none() => current = Some(Vec::new()),
            ')' if current.is_some() => {
                flush(&mut digits, &mut current, digits_col)?;
                let cyc = current.take().expect("open");
                if cyc.is_empty() {
                    return Err(syntax(line, col, "empty cycle"));
                }
                out.push(cyc);
            }
            '0'..='9' if current.is_some() => {
                if digits.is_empty() {
                    digits_col = col;
                }
                digits.push(c);
            }
            c if c.is_whitespace() => flush(&mut digits, &mut current, digits_col)?,
            _ => return Err(syntax(line, col, format!("unexpected {c:?} in cycle notation"))),
        }
    }
    if current.is_some() {
        return Err(syntax(line, offset + text.len(), "unclosed cycle"));
    }
    Ok(out)
}

fn signs(line: usize, toks: &[(usize, &str)]) -> Result<Vec<Sign>, IoError> {
    let mut out = Vec::new();
    for &(col, tok) in toks {
        for (k, c) in tok.chars().enumerate() {
            out.push(match c {
                '+' => Sign::Plus,
                '-' => Sign::Minus,
                _ => return Err(syntax(line, col + k, format!("expected '+' or '-', found {c:?}"))),
            });
        }
    }
    Ok(out)
}

/// Parses and validates a `.fatg` document.
pub fn parse_fatg(text: &str) -> Result<Fatgraph, IoError> {
    let mut version = None;
    let mut n: Option<usize> = None;
    let mut sigma: Option<(usize, Vec<Vec<Sector>>)> = None;
    let mut omega: Option<(usize, Vec<Sign>)> = None;
    let mut gamma: Option<(usize, Vec<Vec<Sector>>)> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw);
        let Some(&(col, directive)) = toks.first() else {
            continue;
        };
        if version.is_none() && directive != "fatgraph" {
            return Err(syntax(line, col, "document must start with \"fatgraph 1\""));
        }
        let rest_col = col + directive.len();
        let rest = raw.split('#').next().unwrap_or("").get(rest_col - 1..).unwrap_or("");
        let duplicate = || syntax(line, col, format!("duplicate {directive} line"));
        match directive {
            "fatgraph" => {
                if version.is_some() {
                    return Err(duplicate());
                }
                let &(c, v) = toks.get(1).ok_or_else(|| syntax(line, rest_col, "missing format version"))?;
                let v = number(line, c, v)?;
                if v != FORMAT_VERSION as usize {
                    return Err(syntax(line, c, format!("unsupported format version {v}")));
                }
                if let Some(&(c, _)) = toks.get(2) {
                    return Err(syntax(line, c, "trailing tokens"));
                }
                version = Some(v);
            }
            "n" => {
                if n.is_some() {
                    return Err(duplicate());
                }
                let &(c, v) = toks.get(1).ok_or_else(|| syntax(line, rest_col, "missing ribbon count"))?;
                if let Some(&(c, _)) = toks.get(2) {
                    return Err(syntax(line, c, "trailing tokens"));
                }
                let v = number(line, c, v)?;
                if v > MAX_RIBBONS {
                    return Err(syntax(line, c, format!("at most {MAX_RIBBONS} ribbons are supported")));
                }
                n = Some(v);
            }
            "sigma" if sigma.is_some() => return Err(duplicate()),
            "sigma" => sigma = Some((line, cycles(line, rest, rest_col)?)),
            "omega" if omega.is_some() => return Err(duplicate()),
            "omega" => omega = Some((line, signs(line, &toks[1..])?)),
            "gamma" if gamma.is_some() => return Err(duplicate()),
            "gamma" => gamma = Some((line, cycles(line, rest, rest_col)?)),
            other => return Err(syntax(line, col, format!("unknown directive {other:?}"))),
        }
    }
    let missing = |what: &str| syntax(last_line.max(1), 1, format!("missing {what} line"));
    if version.is_none() {
        return Err(missing("fatgraph"));
    }
    let n = n.ok_or_else(|| missing("n"))?;
    let (sigma_line, sigma) = sigma.ok_or_else(|| missing("sigma"))?;
    let (_, omega) = omega.ok_or_else(|| missing("omega"))?;
    let n_sec = 2 * n + 1;
    let sigma = perm::from_cycles(n_sec, &sigma)
        .map_err(|x| syntax(sigma_line, 1, format!("sigma: label {x} repeated or outside 1..={n_sec}")))?;
    match gamma {
        None => Ok(Fatgraph::new(n, sigma, omega)?),
        Some((gl, g)) => {
            let gamma = perm::from_cycles(n_sec, &g)
                .map_err(|x| syntax(gl, 1, format!("gamma: label {x} repeated or outside 1..={n_sec}")))?;
            Ok(Fatgraph::with_boundary(n, sigma, omega, gamma)?)
        }
    }
}

pub fn emit_fatg(f: &Fatgraph) -> String {
    let mut s = format!("fatgraph {FORMAT_VERSION}\nn {}\nsigma {}\nomega", f.n(), perm::cycle_string(f.sigma_map()));
    for w in f.omega_map() {
        s.push(' ');
        s.push(w.as_char());
    }
    s.push('\n');
    if let Some(g) = f.explicit_boundary() {
        let _ = writeln!(s, "gamma {}", perm::cycle_string(g));
    }
    s
}

/// Script lines `glue i j`, `slice i j` or `halfflip i j`.
pub fn parse_script(text: &str) -> Result<Vec<Reversal>, IoError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        let Some(&(col, word)) = toks.first() else {
            continue;
        };
        let kind = ReversalKind::from_keyword(word).ok_or_else(|| {
            syntax(line, col, format!("unknown directive {word:?}; expected glue, slice or halfflip"))
        })?;
        if toks.len() != 3 {
            return Err(syntax(line, col, format!("{word} takes exactly two sectors")));
        }
        let i = number(line, toks[1].0, toks[1].1)?;
        let j = number(line, toks[2].0, toks[2].1)?;
        if i == j {
            return Err(syntax(line, toks[2].0, "sectors must differ"));
        }
        out.push(Reversal { i: i.min(j), j: i.max(j), kind });
    }
    Ok(out)
}

pub fn emit_script(steps: &[Reversal]) -> String {
    steps.iter().map(|r| format!("{r}\n")).collect()
}

fn dot(tree: &NestingTree, name: &str, label: impl Fn(usize) -> String) -> String {
    let mut s = format!("graph {name} {{\n  node [fontname=\"Helvetica\"];\n");
    for (k, node) in tree.nodes.iter().enumerate() {
        let iv = node.interval;
        let _ = match node.kind {
            NodeKind::Black(e) => writeln!(
                s,
                "  n{k} [label=\"{}\", shape=circle, style=filled, fillcolor=black, fontcolor=white];",
                label(e)
            ),
            NodeKind::Root | NodeKind::Gap { .. } => {
                writeln!(s, "  n{k} [label=\"[{},{}]\", shape=circle];", iv.start, iv.end)
            }
        };
    }
    for (k, node) in tree.nodes.iter().enumerate() {
        for c in &node.children {
            let _ = writeln!(s, "  n{k} -- n{};", c.0);
        }
    }
    s.push_str("}\n");
    s
}

pub fn component_tree_dot(d: &Decomposition) -> String {
    dot(&d.component_tree, "components", |e| {
        let c = &d.components[e];
        let tag = if c.trivial {
            " (trivial)"
        } else if c.orientable {
            ""
        } else {
            " (m)"
        };
        format!("C{}{tag}", e + 1)
    })
}

pub fn block_tree_dot(d: &Decomposition) -> String {
    dot(&d.block_tree, "blocks", |e| match d.block_entities[e] {
        BlockEntity::Block(b) => {
            let o = if d.blocks[b.0].orientable { "" } else { " (m)" };
            let ex = if d.s_blocks.contains(&b) {
                " S"
            } else if d.e_blocks.contains(&b) {
                " E"
            } else {
                ""
            };
            format!("B{}{o}{ex}", b.0 + 1)
        }
        BlockEntity::Trivial(c) => format!("C{} (trivial)", c.0 + 1),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Info {
    pub n: usize,
    pub v: usize,
    pub e: usize,
    pub b: usize,
    pub genus: usize,
    pub orientable: bool,
    pub components: usize,
    pub trivial_components: usize,
    pub blocks: usize,
    pub orientable_blocks: usize,
    pub e_blocks: usize,
    pub s_blocks: usize,
    pub distance: usize,
}

pub fn info(f: &Fatgraph) -> Result<Info, IoError> {
    let d = f.decompose().map_err(PlanError::from)?;
    Ok(Info {
        n: f.n(),
        v: f.vertex_count(),
        e: f.n(),
        b: f.boundary_count(),
        genus: f.euler_genus(),
        orientable: f.is_orientable(),
        components: d.components.len(),
        trivial_components: d.trivial_count(),
        blocks: d.blocks.len(),
        orientable_blocks: d.orientable_blocks().len(),
        e_blocks: d.h(),
        s_blocks: d.s_blocks.len(),
        distance: planner::r_distance(f)?,
    })
}

pub fn info_json(f: &Fatgraph) -> Result<String, IoError> {
    Ok(serde_json::to_string_pretty(&info(f)?).expect("plain data serializes"))
}

/// Sectors attached to each node, for listings.
pub fn attached_sectors(tree: &NestingTree, node: NodeId) -> Vec<Sector> {
    (1..tree.attachment.len()).filter(|&s| tree.attachment(s) == node).collect()
}
