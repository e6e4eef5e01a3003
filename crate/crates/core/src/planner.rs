//! Distance formula and an optimal reversal script.
//!
//! Orientable blocks are eliminated first (half-flips and gluings), then the
//! remaining block-non-orientable fatgraph is sliced down one genus at a time.
//! Every step carries a certificate (expected genus and exposed-block count)
//! that is checked against a full recomputation before the step is accepted.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{BlockId, ComponentId, Decomposition, DecompositionError, NodeId};
use crate::model::{Fatgraph, ModelError, RibbonId, Sector};
use crate::reversal::{self, Reversal, ReversalError, ReversalKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanError {
    #[error("{0}")]
    Precondition(String),
    #[error("certificate violated: {0}")]
    Certificate(String),
    #[error("step {step} ({reversal}) is illegal: {source}")]
    IllegalStep { step: usize, reversal: Reversal, source: ReversalError },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Reversal(#[from] ReversalError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

impl PlanError {
    pub fn is_internal(&self) -> bool {
        match self {
            PlanError::Precondition(_) => false,
            PlanError::Certificate(_) => true,
            PlanError::IllegalStep { source, .. } => source.is_internal(),
            PlanError::Model(e) => e.is_internal(),
            PlanError::Reversal(e) => e.is_internal(),
            PlanError::Decomposition(e) => e.is_internal(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Slice the z-maximizing m-ribbon; no orientable component is left.
    MRibbon,
    /// Same choice while orientable components remain, none m-adjacent.
    GuardedMRibbon,
    /// Slice an orientable component into an m-adjacent non-orientable one.
    PacMan,
    /// Half-flip the only orientable block.
    LoneHalfFlip,
    /// Half-flip a non-super exposed block (odd count).
    HalfFlip,
    /// Glue a pair of exposed blocks.
    PairGlue,
    /// Glue a super-block into the others (odd count, all super).
    SuperGlue,
}

impl Rule {
    pub fn keyword(self) -> &'static str {
        match self {
            Rule::MRibbon => "m-ribbon",
            Rule::GuardedMRibbon => "guarded-m-ribbon",
            Rule::PacMan => "pac-man",
            Rule::LoneHalfFlip => "lone-half-flip",
            Rule::HalfFlip => "half-flip",
            Rule::PairGlue => "pair-glue",
            Rule::SuperGlue => "super-glue",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub reversal: Reversal,
    pub rule: Rule,
    pub expected_genus: usize,
    pub expected_h: usize,
    /// Index of the accepted candidate; 0 is the preferred choice.
    pub candidate: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Plan {
    pub steps: Vec<Step>,
    pub distance: usize,
    /// Times the fixed pairing of exposed blocks had to be recomputed.
    pub repairings: usize,
}

impl Plan {
    pub fn reversals(&self) -> Vec<Reversal> {
        self.steps.iter().map(|s| s.reversal).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

pub fn formula_distance(g: usize, h: usize, all_super: bool) -> usize {
    if h != 1 && h % 2 == 1 && all_super {
        g + h + 1
    } else {
        g + h
    }
}

pub fn r_distance(f: &Fatgraph) -> Result<usize, PlanError> {
    let d = f.decompose()?;
    Ok(formula_distance(f.euler_genus(), d.h(), d.all_super()))
}

fn z_score(f: &Fatgraph, r: RibbonId, within: &[RibbonId]) -> usize {
    within.iter().filter(|&&x| x != r).filter(|&&x| f.ribbon(x).is_mono() != f.crossing(r, x)).count()
}

/// m-ribbons of `component` ordered by z (bi-directional crossers plus
/// mono-directional non-crossers), largest first, ties by origin.
pub fn ranked_m_ribbons(f: &Fatgraph, component: &[RibbonId]) -> Vec<RibbonId> {
    let mut out: Vec<(usize, Sector, RibbonId)> = component
        .iter()
        .filter(|&&r| f.ribbon(r).is_mono())
        .map(|&r| (z_score(f, r, component), f.ribbon(r).origin, r))
        .collect();
    out.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    out.into_iter().map(|x| x.2).collect()
}

/// The m-ribbon whose slicing splits an irreducible non-orientable fatgraph
/// into non-orientable and trivial components.
pub fn slicing_ribbon(f: &Fatgraph) -> Result<RibbonId, PlanError> {
    let d = f.decompose()?;
    let nontrivial: Vec<_> = d.components.iter().filter(|c| !c.trivial).collect();
    if nontrivial.len() != 1 || nontrivial[0].ribbons.len() != f.n() {
        return Err(PlanError::Precondition("fatgraph is not irreducible".into()));
    }
    ranked_m_ribbons(f, &nontrivial[0].ribbons)
        .first()
        .copied()
        .ok_or_else(|| PlanError::Precondition("fatgraph is orientable".into()))
}

struct Expect {
    genus: usize,
    h: usize,
    block_non_orientable: bool,
}

fn certify(f: &Fatgraph, r: Reversal, e: &Expect) -> Option<Fatgraph> {
    let g = reversal::apply(f, r).ok()?;
    let d = g.decompose().ok()?;
    let ok = g.euler_genus() == e.genus && d.h() == e.h && (!e.block_non_orientable || d.is_block_non_orientable());
    ok.then_some(g)
}

fn accept(
    f: &Fatgraph,
    candidates: impl IntoIterator<Item = Reversal>,
    rule: Rule,
    e: Expect,
) -> Result<(Step, Fatgraph), PlanError> {
    let mut seen = BTreeSet::new();
    for r in candidates {
        if !seen.insert(r) {
            continue;
        }
        if let Some(g) = certify(f, r, &e) {
            let step = Step { reversal: r, rule, expected_genus: e.genus, expected_h: e.h, candidate: seen.len() - 1 };
            return Ok((step, g));
        }
    }
    Err(PlanError::Certificate(format!(
        "no {} candidate reaches genus {} with {} exposed blocks ({} tried) from {f:?}",
        rule.keyword(),
        e.genus,
        e.h,
        seen.len()
    )))
}

fn with_kind(f: &Fatgraph, i: Sector, j: Sector, kind: ReversalKind) -> Option<Reversal> {
    let r = reversal::reversal(f, i, j).ok()?;
    (r.kind == kind).then_some(r)
}

/// Sectors of the component's trace not attached to `gap`.
fn trace_without(d: &Decomposition, c: ComponentId, gap: NodeId) -> Vec<Sector> {
    d.component_tree.trace_sectors(c.0).into_iter().filter(|&s| d.attachment(s) != gap).collect()
}

fn pacman_candidates(f: &Fatgraph, d: &Decomposition) -> Vec<Reversal> {
    let mut out = Vec::new();
    let mut order: Vec<&crate::decomposition::Component> = d.components.iter().filter(|c| !c.trivial).collect();
    order.sort_by_key(|c| c.trace_start());
    for c1 in order.iter().filter(|c| c.orientable) {
        for c2 in order.iter().filter(|c| !c.orientable) {
            if d.adjacency(f, c1.id, c2.id) != crate::decomposition::Adjacency::MAdjacent {
                continue;
            }
            let w = d.shared_white(c1.id, c2.id).expect("adjacent");
            let v = d.white_vertex(w).expect("white");
            let at_v = |c| trace_without(d, c, w).into_iter().filter(|&s| f.vertex_of(s) == v).collect::<Vec<_>>();
            let (s1, s2) = (at_v(c1.id), at_v(c2.id));
            for &i1 in &s1 {
                for &i2 in s2.iter().filter(|&&s| f.omega(s) != f.omega(i1)) {
                    out.extend(with_kind(f, i1, i2, ReversalKind::Slicing));
                }
            }
        }
    }
    out
}

fn m_ribbon_candidates(f: &Fatgraph, d: &Decomposition) -> Vec<Reversal> {
    let mut comps: Vec<_> = d.components.iter().filter(|c| !c.orientable).collect();
    comps.sort_by_key(|c| c.trace_start());
    comps
        .iter()
        .flat_map(|c| ranked_m_ribbons(f, &c.ribbons))
        .filter_map(|r| reversal::m_ribbon_slicing(f, r).ok())
        .collect()
}

/// One genus-reducing slicing of a block-non-orientable fatgraph that keeps
/// it block-non-orientable.
pub fn pacman_step(f: &Fatgraph) -> Result<(Step, Fatgraph), PlanError> {
    let d = f.decompose()?;
    if !d.is_block_non_orientable() {
        return Err(PlanError::Precondition("an orientable block is present".into()));
    }
    let g = f.euler_genus();
    if g == 0 {
        return Err(PlanError::Precondition("genus is already 0".into()));
    }
    let expect = || Expect { genus: g - 1, h: 0, block_non_orientable: true };
    let merges = pacman_candidates(f, &d);
    if !merges.is_empty() {
        return accept(f, merges, Rule::PacMan, expect());
    }
    let any_orientable = d.components.iter().any(|c| !c.trivial && c.orientable);
    let rule = if any_orientable { Rule::GuardedMRibbon } else { Rule::MRibbon };
    accept(f, m_ribbon_candidates(f, &d), rule, expect())
}

/// Half-flips on b-ribbons of `block`: component by trace start, ribbon by origin.
fn half_flip_candidates(f: &Fatgraph, d: &Decomposition, block: BlockId) -> Vec<Reversal> {
    let mut comps: Vec<ComponentId> = d.block(block).components.clone();
    comps.sort_by_key(|&c| d.component(c).trace_start());
    let mut out = Vec::new();
    for c in comps {
        let mut ribbons: Vec<_> =
            d.component(c).ribbons.iter().map(|&r| f.ribbon(r)).filter(|r| !r.is_mono()).collect();
        ribbons.sort_by_key(|r| r.origin);
        out.extend(ribbons.iter().filter_map(|r| with_kind(f, r.origin, r.terminus, ReversalKind::HalfFlipping)));
    }
    out
}

/// Gluings joining block `a` to the block-tree nodes in `target`: the
/// preferred choice first (smallest trace sectors away from the connecting
/// gaps), then all other gluings by path length.
fn glue_candidates(f: &Fatgraph, d: &Decomposition, a: BlockId, target: &[NodeId]) -> Vec<Reversal> {
    let t = &d.block_tree;
    let ct = &d.component_tree;
    let mut out = Vec::new();
    let mut comps_a = d.block(a).components.clone();
    comps_a.sort_by_key(|&c| d.component(c).trace_start());
    for &x in target {
        if let Some(b) = d.block_at(x) {
            let mut comps_b = d.block(b).components.clone();
            comps_b.sort_by_key(|&c| d.component(c).trace_start());
            for &c1 in &comps_a {
                for &c2 in &comps_b {
                    let p = ct.path(d.component_node(c1), d.component_node(c2));
                    if p.len() < 3 {
                        continue;
                    }
                    let i = trace_without(d, c1, p[1]);
                    let j = trace_without(d, c2, p[p.len() - 2]);
                    if let (Some(&i), Some(&j)) = (i.first(), j.first()) {
                        out.extend(with_kind(f, i, j, ReversalKind::Gluing));
                    }
                }
            }
        }
    }
    let a_node = d.block_node(a);
    let near_a = |s: Sector| {
        let x = t.attachment(s);
        x == a_node || t.adjacent(x, a_node)
    };
    let mut rest: Vec<(usize, Reversal)> = Vec::new();
    for i in (1..=2 * f.n()).filter(|&s| near_a(s)) {
        for j in 1..=2 * f.n() {
            let x = t.attachment(j);
            if !target.contains(&x) {
                continue;
            }
            if let Some(r) = with_kind(f, i, j, ReversalKind::Gluing) {
                rest.push((t.path(t.attachment(i), x).len(), r));
            }
        }
    }
    rest.sort();
    out.extend(rest.into_iter().map(|x| x.1));
    out
}

/// Pairs the 2k exposed blocks (in trace order) j with j + k; falls back to
/// an exhaustive search if some orientable block is left uncovered. The flag
/// reports the fallback.
pub fn pair_e_blocks(d: &Decomposition) -> Result<(Vec<(BlockId, BlockId)>, bool), PlanError> {
    let e = &d.e_blocks;
    if e.is_empty() || e.len() % 2 == 1 {
        return Err(PlanError::Precondition(format!(
            "need an even, positive number of exposed blocks (got {})",
            e.len()
        )));
    }
    let k = e.len() / 2;
    let covers_all = |pairs: &[(BlockId, BlockId)]| {
        let mut covered = BTreeSet::new();
        for &(a, b) in pairs {
            covered.extend(d.covered_blocks(&d.block_tree.path(d.block_node(a), d.block_node(b))));
        }
        d.orientable_blocks().iter().all(|b| covered.contains(b))
    };
    let fixed: Vec<_> = (0..k).map(|j| (e[j], e[j + k])).collect();
    if covers_all(&fixed) {
        return Ok((fixed, false));
    }
    fn matchings(rest: &[BlockId], acc: &mut Vec<(BlockId, BlockId)>, out: &mut Vec<Vec<(BlockId, BlockId)>>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        for p in 0..tail.len() {
            let mut remaining = tail.to_vec();
            let partner = remaining.remove(p);
            acc.push((first, partner));
            matchings(&remaining, acc, out);
            acc.pop();
        }
    }
    let mut all = Vec::new();
    matchings(e, &mut Vec::new(), &mut all);
    all.into_iter()
        .find(|m| covers_all(m))
        .map(|m| (m, true))
        .ok_or_else(|| PlanError::Certificate("no pairing of exposed blocks covers every orientable block".into()))
}

fn representative(d: &Decomposition, b: BlockId) -> RibbonId {
    d.component(d.block(b).components[0]).ribbons[0]
}

fn block_of_ribbon(d: &Decomposition, r: RibbonId) -> Option<BlockId> {
    d.block_of[d.component_of[r.0].0]
}

/// Pairing of exposed blocks carried across steps by representative ribbons.
#[derive(Clone, Debug, Default)]
pub struct Pairing {
    pairs: Vec<(RibbonId, RibbonId)>,
    pub repairings: usize,
}

impl Pairing {
    fn current(&self, d: &Decomposition) -> Option<(BlockId, BlockId)> {
        let (a, b) = *self.pairs.first()?;
        let (ba, bb) = (block_of_ribbon(d, a)?, block_of_ribbon(d, b)?);
        (ba != bb && d.e_blocks.contains(&ba) && d.e_blocks.contains(&bb)).then_some((ba, bb))
    }

    fn advance(&mut self, before: &Fatgraph, r: Reversal, after: &Fatgraph) {
        if self.pairs.is_empty() {
            return;
        }
        self.pairs.remove(0);
        match reversal::ribbon_map(before, r, after) {
            Some(map) => {
                for p in &mut self.pairs {
                    *p = (map[p.0 .0], map[p.1 .0]);
                }
            }
            None => self.pairs.clear(),
        }
    }
}

/// One step removing orientable blocks.
pub fn block_phase_step(f: &Fatgraph, pairing: &mut Pairing) -> Result<(Step, Fatgraph), PlanError> {
    let d = f.decompose()?;
    let h = d.h();
    if h == 0 {
        return Err(PlanError::Precondition("no orientable block".into()));
    }
    let g = f.euler_genus();
    if h == 1 {
        let b = d.e_blocks[0];
        let e = Expect { genus: g, h: 0, block_non_orientable: true };
        return accept(f, half_flip_candidates(f, &d, b), Rule::LoneHalfFlip, e);
    }
    if h % 2 == 1 && !d.all_super() {
        let cands: Vec<Reversal> = d
            .e_blocks
            .iter()
            .filter(|b| !d.s_blocks.contains(b))
            .flat_map(|&b| half_flip_candidates(f, &d, b))
            .collect();
        return accept(f, cands, Rule::HalfFlip, Expect { genus: g, h: h - 1, block_non_orientable: false });
    }
    if h % 2 == 1 {
        let first = *d.s_blocks.iter().min_by_key(|b| d.block(**b).trace_start()).expect("all super");
        let others: Vec<NodeId> = d.e_blocks.iter().filter(|&&b| b != first).map(|&b| d.block_node(b)).collect();
        let mut span: BTreeSet<NodeId> = BTreeSet::new();
        for x in 0..others.len() {
            for y in x..others.len() {
                span.extend(d.block_tree.path(others[x], others[y]));
            }
        }
        let from = d.block_node(first);
        let mut span: Vec<NodeId> = span.into_iter().collect();
        span.sort_by_key(|&x| d.block_tree.path(from, x).len());
        let cands = glue_candidates(f, &d, first, &span);
        return accept(f, cands, Rule::SuperGlue, Expect { genus: g + 1, h: h - 1, block_non_orientable: false });
    }
    let e = || Expect { genus: g + 1, h: h - 2, block_non_orientable: h == 2 };
    let pair = match pairing.current(&d) {
        Some(p) => p,
        None => {
            if !pairing.pairs.is_empty() {
                pairing.repairings += 1;
            }
            let (pairs, _) = pair_e_blocks(&d)?;
            pairing.pairs = pairs.iter().map(|&(a, b)| (representative(&d, a), representative(&d, b))).collect();
            pairs[0]
        }
    };
    let preferred = glue_candidates(f, &d, pair.0, &[d.block_node(pair.1)]);
    match accept(f, preferred, Rule::PairGlue, e()) {
        Ok((step, g2)) => {
            pairing.advance(f, step.reversal, &g2);
            Ok((step, g2))
        }
        Err(_) => {
            // The fixed pairing went stale; any pair of exposed blocks will do.
            pairing.repairings += 1;
            pairing.pairs.clear();
            let mut cands = Vec::new();
            for (x, &a) in d.e_blocks.iter().enumerate() {
                for &b in &d.e_blocks[x + 1..] {
                    cands.extend(glue_candidates(f, &d, a, &[d.block_node(b)]));
                }
            }
            accept(f, cands, Rule::PairGlue, e())
        }
    }
}

/// An optimal script to a plane tree, certified step by step.
pub fn plan(f: &Fatgraph) -> Result<Plan, PlanError> {
    f.require_unicellular()?;
    let distance = r_distance(f)?;
    let mut steps = Vec::new();
    let mut state = f.clone();
    let mut pairing = Pairing::default();
    while state.euler_genus() > 0 || !state.decompose()?.is_block_non_orientable() {
        let (step, next) = if state.decompose()?.is_block_non_orientable() {
            pacman_step(&state)?
        } else {
            block_phase_step(&state, &mut pairing)?
        };
        let left = r_distance(&next)?;
        if left + steps.len() + 1 != distance {
            return Err(PlanError::Certificate(format!(
                "after {} the formula predicts {left} more steps, expected {}",
                step.reversal,
                distance - steps.len() - 1
            )));
        }
        steps.push(step);
        state = next;
    }
    if steps.len() != distance {
        return Err(PlanError::Certificate(format!("plan has {} steps, formula says {distance}", steps.len())));
    }
    Ok(Plan { steps, distance, repairings: pairing.repairings })
}

#[derive(Clone, Debug, Serialize)]
pub struct StateSummary {
    pub genus: usize,
    pub orientable: bool,
    pub h: usize,
}

#[derive(Clone, Debug)]
pub struct Execution {
    pub result: Fatgraph,
    /// Summary of the start state followed by one per step.
    pub trace: Vec<StateSummary>,
}

fn summarize(f: &Fatgraph) -> Result<StateSummary, PlanError> {
    Ok(StateSummary { genus: f.euler_genus(), orientable: f.is_orientable(), h: f.decompose()?.h() })
}

/// Applies a script step by step, failing on the first illegal step.
pub fn execute(f: &Fatgraph, steps: &[Reversal]) -> Result<Execution, PlanError> {
    let mut state = f.clone();
    let mut trace = vec![summarize(&state)?];
    for (k, &r) in steps.iter().enumerate() {
        state =
            reversal::apply(&state, r).map_err(|source| PlanError::IllegalStep { step: k + 1, reversal: r, source })?;
        trace.push(summarize(&state)?);
    }
    Ok(Execution { result: state, trace })
}

/// Executes a plan and checks each step's certificate.
pub fn execute_plan(f: &Fatgraph, p: &Plan) -> Result<Execution, PlanError> {
    let ex = execute(f, &p.reversals())?;
    for (k, (s, st)) in p.steps.iter().zip(&ex.trace[1..]).enumerate() {
        if s.expected_genus != st.genus || s.expected_h != st.h {
            return Err(PlanError::Certificate(format!(
                "step {} expected genus {} and {} exposed blocks, got {} and {}",
                k + 1,
                s.expected_genus,
                s.expected_h,
                st.genus,
                st.h
            )));
        }
    }
    Ok(ex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn formula_branches() {
        assert_eq!(formula_distance(12, 3, false), 15);
        assert_eq!(formula_distance(0, 0, false), 0);
        assert_eq!(formula_distance(3, 3, true), 7);
        assert_eq!(formula_distance(3, 1, true), 4);
        assert_eq!(formula_distance(3, 2, true), 5);
    }

    #[test]
    fn fixture_distances() {
        let want = [("T1", 0), ("P1", 1), ("T2", 0), ("X2", 1), ("Y2", 0), ("O2", 3)];
        for (name, d) in want {
            let f = fixtures::all_unicellular().into_iter().find(|x| x.0 == name).unwrap().1;
            assert_eq!(r_distance(&f).unwrap(), d, "{name}");
        }
    }

    #[test]
    fn x2_plan_is_one_slice() {
        let p = plan(&fixtures::x2()).unwrap();
        assert_eq!(p.reversals(), vec![Reversal { i: 2, j: 4, kind: ReversalKind::Slicing }]);
        assert_eq!(p.steps[0].rule, Rule::MRibbon);
        let ex = execute_plan(&fixtures::x2(), &p).unwrap();
        assert_eq!(ex.result.canonical_form(), fixtures::y2().canonical_form());
    }

    #[test]
    fn o2_plan() {
        let p = plan(&fixtures::o2()).unwrap();
        let kinds: Vec<_> = p.steps.iter().map(|s| s.reversal.kind).collect();
        assert_eq!(kinds, vec![ReversalKind::HalfFlipping, ReversalKind::Slicing, ReversalKind::Slicing]);
        assert_eq!(p.steps[0].reversal, Reversal { i: 1, j: 4, kind: ReversalKind::HalfFlipping });
        assert_eq!(p.steps[0].rule, Rule::LoneHalfFlip);
    }

    #[test]
    fn slicing_ribbon_tie_breaks_by_origin() {
        let f = fixtures::x2();
        let r = slicing_ribbon(&f).unwrap();
        assert_eq!(f.ribbon(r).origin, 1);
        assert!(slicing_ribbon(&fixtures::t2()).is_err());
        assert!(matches!(slicing_ribbon(&fixtures::o2()), Err(PlanError::Precondition(_))));
    }

    #[test]
    fn p1_mirror_slice() {
        let (step, g) = pacman_step(&fixtures::p1()).unwrap();
        assert_eq!((step.reversal.i, step.reversal.j), (1, 2));
        assert_eq!(g.canonical_form(), fixtures::t1().canonical_form());
    }

    #[test]
    fn preconditions() {
        assert!(matches!(pacman_step(&fixtures::t1()), Err(PlanError::Precondition(_))));
        assert!(matches!(pacman_step(&fixtures::o2()), Err(PlanError::Precondition(_))));
        assert!(matches!(block_phase_step(&fixtures::x2(), &mut Pairing::default()), Err(PlanError::Precondition(_))));
        assert!(plan(&fixtures::t1()).unwrap().is_empty());
        let ex = execute(&fixtures::p1(), &[]).unwrap();
        assert_eq!(ex.result, fixtures::p1());
    }
}
