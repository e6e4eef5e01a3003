use std::collections::BTreeSet;

use serde::Serialize;

use crate::decomposition::Decomposition;
use crate::model::{Fatgraph, RibbonId, Sector};
use crate::reversal::{self, Reversal, ReversalKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Contract {
    /// The result is unicellular with the reversed boundary in old labels.
    Boundary,
    GenusDelta,
    Involution,
    RibbonBijection,
    /// Direction status changes exactly for ribbons meeting [i, j].
    Direction,
    /// Crossing changes exactly for pairs both meeting [i, j].
    Crossing,
    /// Crossing changes exactly for pairs both crossing the sliced m-ribbon.
    MRibbonCrossing,
    MRibbonTrivial,
    ComponentPersistence,
    ComponentMerge,
    BlockPersistence,
    BlockMerge,
    /// g + h drops by at most one.
    DistanceDrop,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContractResult {
    pub contract: Contract,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub reversal: Reversal,
    pub results: Vec<ContractResult>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> Vec<&ContractResult> {
        self.results.iter().filter(|r| !r.passed).collect()
    }

    fn record(&mut self, contract: Contract, failure: Option<String>) {
        self.results.push(ContractResult { contract, passed: failure.is_none(), detail: failure });
    }
}

fn meets(origin: Sector, terminus: Sector, i: Sector, j: Sector) -> bool {
    (origin < i && i < terminus && terminus <= j) || (i <= origin && origin < j && j < terminus)
}

fn mapped(set: &[RibbonId], map: &[RibbonId]) -> BTreeSet<RibbonId> {
    set.iter().map(|r| map[r.0]).collect()
}

fn component_sets(d: &Decomposition) -> Vec<(BTreeSet<RibbonId>, bool)> {
    d.components.iter().map(|c| (c.ribbons.iter().copied().collect(), c.orientable)).collect()
}

fn block_ribbons(d: &Decomposition, b: usize) -> BTreeSet<RibbonId> {
    d.blocks[b].components.iter().flat_map(|c| d.components[c.0].ribbons.iter().copied()).collect()
}

/// Applies `r` to `f` and checks every reversal contract by recomputation.
pub fn check_properties(f: &Fatgraph, r: Reversal) -> Result<PropertyReport, crate::oracle::OracleError> {
    let after = reversal::apply(f, r)?;
    let mut rep = PropertyReport { reversal: r, results: Vec::new() };
    let (i, j) = (r.i, r.j);
    let n_sec = f.sector_count();

    // Old-label rotation system against the explicitly reversed boundary.
    let (sigma, omega, _) = reversal::unnormalized(f, i, j)?;
    let order: Vec<Sector> = (1..=i).chain((i + 1..j).rev()).chain(j..=n_sec).collect();
    let mut gamma = vec![0; n_sec];
    for w in 0..n_sec {
        gamma[order[w] - 1] = order[(w + 1) % n_sec];
    }
    let boundary = match Fatgraph::with_boundary(f.n(), sigma, omega, gamma) {
        Ok(g) if g.is_unicellular() => None,
        Ok(g) => Some(format!("{} boundary components", g.boundary_count())),
        Err(e) => Some(e.to_string()),
    };
    rep.record(Contract::Boundary, boundary);

    let dg = after.euler_genus() as i64 - f.euler_genus() as i64;
    rep.record(Contract::GenusDelta, (dg != r.kind.genus_delta()).then(|| format!("genus changed by {dg}")));

    let back = reversal::reversal(&after, i, j).and_then(|b| reversal::apply(&after, b));
    rep.record(
        Contract::Involution,
        match back {
            Ok(g) if g.canonical_form() == f.canonical_form() => None,
            Ok(g) => Some(format!("second application gave {g:?}")),
            Err(e) => Some(e.to_string()),
        },
    );

    let map = match reversal::ribbon_map(f, r, &after) {
        Some(m) if m.iter().collect::<BTreeSet<_>>().len() == f.n() => m,
        _ => {
            rep.record(Contract::RibbonBijection, Some("sides of a ribbon land on different ribbons".into()));
            return Ok(rep);
        }
    };
    rep.record(Contract::RibbonBijection, None);

    let ribbons = f.ribbons();
    let hit: Vec<bool> = ribbons.iter().map(|rb| meets(rb.origin, rb.terminus, i, j)).collect();
    let bad: Vec<usize> = ribbons
        .iter()
        .filter(|rb| (rb.direction != after.ribbon(map[rb.id.0]).direction) != hit[rb.id.0])
        .map(|rb| rb.id.0)
        .collect();
    rep.record(Contract::Direction, (!bad.is_empty()).then(|| format!("ribbons {bad:?}")));

    let mut bad = Vec::new();
    for a in 0..f.n() {
        for b in a + 1..f.n() {
            let changed = f.crossing(RibbonId(a), RibbonId(b)) != after.crossing(map[a], map[b]);
            if changed != (hit[a] && hit[b]) {
                bad.push((a, b));
            }
        }
    }
    rep.record(Contract::Crossing, (!bad.is_empty()).then(|| format!("pairs {bad:?}")));

    let d0 = f.decompose()?;
    let d1 = after.decompose()?;
    let comps1 = component_sets(&d1);
    let on_path = d0.tree_path(i, j);
    let mut bad = Vec::new();
    for c in &d0.components {
        if on_path.contains(&c.id) {
            continue;
        }
        let image = mapped(&c.ribbons, &map);
        if !comps1.iter().any(|(s, o)| *s == image && *o == c.orientable) {
            bad.push(c.id.0);
        }
    }
    rep.record(Contract::ComponentPersistence, (!bad.is_empty()).then(|| format!("components {bad:?} off the path")));
    if on_path.len() >= 2 {
        let merged: BTreeSet<RibbonId> =
            on_path.iter().flat_map(|c| d0.components[c.0].ribbons.iter().map(|r| map[r.0])).collect();
        let ok = comps1.iter().any(|(s, _)| *s == merged);
        rep.record(Contract::ComponentMerge, (!ok).then(|| format!("path {on_path:?} did not merge")));
    }

    let q = d0.block_path(i, j);
    let covered = d0.covered_blocks(&q);
    let blocks1: Vec<(BTreeSet<RibbonId>, bool)> =
        (0..d1.blocks.len()).map(|b| (block_ribbons(&d1, b), d1.blocks[b].orientable)).collect();
    let mut bad = Vec::new();
    for b in &d0.blocks {
        if covered.contains(&b.id) {
            continue;
        }
        let image: BTreeSet<RibbonId> = block_ribbons(&d0, b.id.0).iter().map(|r| map[r.0]).collect();
        if !blocks1.iter().any(|(s, o)| *s == image && *o == b.orientable) {
            bad.push(b.id.0);
        }
    }
    rep.record(Contract::BlockPersistence, (!bad.is_empty()).then(|| format!("blocks {bad:?} not covered")));
    if on_path.len() >= 2 {
        let mut merged: BTreeSet<RibbonId> = BTreeSet::new();
        for b in &covered {
            merged.extend(block_ribbons(&d0, b.0).iter().map(|r| map[r.0]));
        }
        for c in d0.trivial_on(&q) {
            merged.extend(d0.components[c.0].ribbons.iter().map(|r| map[r.0]));
        }
        let ok = merged.is_empty() || blocks1.iter().any(|(s, _)| *s == merged);
        rep.record(Contract::BlockMerge, (!ok).then(|| format!("covered blocks {covered:?} did not merge")));
    }

    let before = (f.euler_genus() + d0.h()) as i64;
    let now = (after.euler_genus() + d1.h()) as i64;
    rep.record(Contract::DistanceDrop, (before - now > 1).then(|| format!("g + h went from {before} to {now}")));
    Ok(rep)
}

/// Slices the m-ribbon `e` and checks the crossing-change rule and that `e`
/// ends up alone in a trivial component.
pub fn check_m_ribbon_slicing(f: &Fatgraph, e: RibbonId) -> Result<PropertyReport, crate::oracle::OracleError> {
    let r = reversal::m_ribbon_slicing(f, e)?;
    debug_assert_eq!(r.kind, ReversalKind::Slicing);
    let after = reversal::apply(f, r)?;
    let mut rep = PropertyReport { reversal: r, results: Vec::new() };
    let Some(map) = reversal::ribbon_map(f, r, &after) else {
        rep.record(Contract::RibbonBijection, Some("sides of a ribbon land on different ribbons".into()));
        return Ok(rep);
    };
    let mut bad = Vec::new();
    for a in (0..f.n()).filter(|&a| a != e.0) {
        for b in (a + 1..f.n()).filter(|&b| b != e.0) {
            let changed = f.crossing(RibbonId(a), RibbonId(b)) != after.crossing(map[a], map[b]);
            let both = f.crossing(RibbonId(a), e) && f.crossing(RibbonId(b), e);
            if changed != both {
                bad.push((a, b));
            }
        }
    }
    rep.record(Contract::MRibbonCrossing, (!bad.is_empty()).then(|| format!("pairs {bad:?}")));
    let d1 = after.decompose()?;
    let c = &d1.components[d1.component_of[map[e.0].0].0];
    rep.record(
        Contract::MRibbonTrivial,
        (!c.trivial).then(|| format!("sliced ribbon lies in component of {} ribbons", c.ribbons.len())),
    );
    Ok(rep)
}
