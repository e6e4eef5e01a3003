//! Ground truth: exhaustive search distance, an orientability test that does
//! not look at ribbon directions, enumeration, random instances and the
//! property battery.

mod enumerate;
mod properties;
mod random;
pub mod synth;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::decomposition::DecompositionError;
use crate::model::{CanonicalKey, Fatgraph, ModelError, Twist};
use crate::reversal::{self, Reversal, ReversalError};

pub use enumerate::{enumerate_fatgraphs, MAX_ENUMERATION_RIBBONS};
pub use properties::{check_m_ribbon_slicing, check_properties, Contract, ContractResult, PropertyReport};
pub use random::{random_fatgraph, random_tree, random_walk, tree_from_word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search exceeded {0} states")]
    StateBound(usize),
    #[error("enumeration is limited to 1..={max} ribbons (got {0})", max = MAX_ENUMERATION_RIBBONS)]
    EnumerationGuard(usize),
    #[error("genus {genus} is out of reach with {n} ribbons")]
    GenusOutOfReach { n: usize, genus: usize },
    #[error("no gluing available")]
    NoGluing,
    #[error("ribbon twist is ambiguous; orientability oracle cannot decide")]
    AmbiguousTwist,
    #[error("too many vertices ({0}) for exhaustive flip search")]
    TooManyVertices(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Reversal(#[from] ReversalError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

impl OracleError {
    pub fn is_internal(&self) -> bool {
        match self {
            OracleError::Model(e) => e.is_internal(),
            OracleError::Reversal(e) => e.is_internal(),
            OracleError::Decomposition(e) => e.is_internal(),
            OracleError::AmbiguousTwist => true,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StateSpaceReport {
    #[serde(skip)]
    pub start: CanonicalKey,
    pub explored: usize,
    pub distance: usize,
    /// Replayable from the start fatgraph itself.
    pub path: Vec<Reversal>,
    pub layers: Vec<usize>,
}

pub const DEFAULT_STATE_BOUND: usize = 2_000_000;

/// Breadth-first search over legal reversals to the nearest plane tree.
pub fn bfs_distance(f: &Fatgraph, state_bound: usize) -> Result<StateSpaceReport, OracleError> {
    f.require_unicellular()?;
    let start = f.canonical_form();
    if f.euler_genus() == 0 {
        return Ok(StateSpaceReport { start, explored: 1, distance: 0, path: Vec::new(), layers: vec![1] });
    }
    let mut states: Vec<Fatgraph> = vec![f.clone()];
    let mut parent: Vec<Option<(usize, Reversal)>> = vec![None];
    let mut seen: HashMap<CanonicalKey, usize> = HashMap::new();
    seen.insert(start.clone(), 0);
    let mut frontier = vec![0usize];
    let mut layers = vec![1usize];
    loop {
        let expanded: Vec<Vec<(CanonicalKey, Fatgraph, Reversal)>> = frontier
            .par_iter()
            .map(|&s| {
                reversal::legal_reversals(&states[s])
                    .into_iter()
                    .map(|r| {
                        let g = reversal::apply(&states[s], r)?;
                        Ok((g.canonical_form(), g, r))
                    })
                    .collect::<Result<Vec<_>, ReversalError>>()
            })
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for (&s, children) in frontier.iter().zip(expanded) {
            for (key, g, r) in children {
                if seen.contains_key(&key) {
                    continue;
                }
                let id = states.len();
                seen.insert(key, id);
                let done = g.euler_genus() == 0;
                states.push(g);
                parent.push(Some((s, r)));
                if done {
                    let mut path = Vec::new();
                    let mut cur = id;
                    while let Some((p, r)) = parent[cur] {
                        path.push(r);
                        cur = p;
                    }
                    path.reverse();
                    layers.push(next.len() + 1);
                    return Ok(StateSpaceReport { start, explored: states.len(), distance: path.len(), path, layers });
                }
                next.push(id);
                if states.len() > state_bound {
                    return Err(OracleError::StateBound(state_bound));
                }
            }
        }
        if next.is_empty() {
            unreachable!("every fatgraph reaches a plane tree by slicings");
        }
        layers.push(next.len());
        frontier = next;
    }
}

/// Orientable iff some set of non-root vertex flips leaves every ribbon untwisted.
pub fn orientability_oracle(f: &Fatgraph) -> Result<bool, OracleError> {
    f.require_unicellular()?;
    let flippable: Vec<_> = f.vertices().iter().filter(|c| !c.contains(&1)).map(|c| c[0]).collect();
    if flippable.len() > 20 {
        return Err(OracleError::TooManyVertices(flippable.len() + 1));
    }
    for mask in 0u32..(1 << flippable.len()) {
        let mut g = f.clone();
        for (b, &v) in flippable.iter().enumerate() {
            if mask >> b & 1 == 1 {
                g = g.flip_vertex(crate::model::VertexId(v))?;
            }
        }
        if g.ribbons().iter().any(|r| r.twist == Twist::Ambiguous) {
            return Err(OracleError::AmbiguousTwist);
        }
        if g.ribbons().iter().all(|r| r.twist == Twist::Untwisted) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exact distances for every class with `n` ribbons, by one breadth-first
/// search seeded with all plane trees. Valid because every reversal undoes
/// itself, so the move graph is undirected.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    pub n: usize,
    pub distance: HashMap<CanonicalKey, usize>,
    pub layers: Vec<usize>,
}

impl DistanceTable {
    pub fn get(&self, f: &Fatgraph) -> Option<usize> {
        self.distance.get(&f.canonical_form()).copied()
    }
}

pub fn distance_table(n: usize, state_bound: usize) -> Result<DistanceTable, OracleError> {
    let mut distance = HashMap::new();
    let mut frontier: Vec<Fatgraph> = Vec::new();
    for word in dyck_words(n) {
        let t = tree_from_word(&word);
        if distance.insert(t.canonical_form(), 0).is_none() {
            frontier.push(t);
        }
    }
    let mut layers = vec![frontier.len()];
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let children: Vec<Vec<Fatgraph>> = frontier
            .par_iter()
            .map(|f| {
                reversal::legal_reversals(f).into_iter().map(|r| reversal::apply(f, r)).collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for g in children.into_iter().flatten() {
            let key = g.canonical_form();
            if distance.contains_key(&key) {
                continue;
            }
            if g.euler_genus() == 0 {
                return Err(ModelError::Inconsistent(format!("plane tree {g:?} missing from the seeds")).into());
            }
            distance.insert(key, depth);
            next.push(g);
            if distance.len() > state_bound {
                return Err(OracleError::StateBound(state_bound));
            }
        }
        if !next.is_empty() {
            layers.push(next.len());
        }
        frontier = next;
    }
    Ok(DistanceTable { n, distance, layers })
}

/// All balanced ±1 words of length 2n.
fn dyck_words(n: usize) -> Vec<Vec<i32>> {
    fn go(open: usize, close: usize, n: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == 2 * n {
            out.push(cur.clone());
            return;
        }
        if open < n {
            cur.push(1);
            go(open + 1, close, n, cur, out);
            cur.pop();
        }
        if close < open {
            cur.push(-1);
            go(open, close + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, n, &mut Vec::new(), &mut out);
    out
}
