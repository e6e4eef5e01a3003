//! Components, traces and gaps, the component tree, blocks and the block
//! tree, attachment, paths, coverage, adjacency, E-blocks and S-blocks.

use std::collections::BTreeSet;

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

use crate::model::{Fatgraph, ModelError, RibbonId, Sector, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ComponentId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BlockId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NodeId(pub usize);

/// Closed boundary interval [start, end].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Interval {
    pub start: Sector,
    pub end: Sector,
}

impl Interval {
    pub fn contains(&self, other: &Interval) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("traces of {0} and {1} interleave")]
    Interleaved(String, String),
    #[error("sector {0} is attached to {1} tree vertices")]
    Attachment(Sector, usize),
    #[error("E-block criteria disagree: coverage gives {coverage:?}, leaf test gives {leaf:?}")]
    ExposedMismatch { coverage: Vec<usize>, leaf: Vec<usize> },
    #[error("genus {total} differs from the sum {sum} over components")]
    Additivity { total: usize, sum: usize },
}

impl DecompositionError {
    pub fn is_internal(&self) -> bool {
        match self {
            DecompositionError::Model(m) => m.is_internal(),
            _ => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    Root,
    Gap { owner: usize, index: usize },
    Black(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct Node {
    pub kind: NodeKind,
    /// Root: [1, 2n+1]; gap: the gap; black: the span of the trace.
    pub interval: Interval,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub depth: usize,
}

impl Node {
    pub fn is_white(&self) -> bool {
        !matches!(self.kind, NodeKind::Black(_))
    }
}

/// Rooted bicolored tree of step-owning entities (black) and their gaps
/// (white), ordered by nesting of boundary intervals.
#[derive(Clone, Debug, Serialize)]
pub struct NestingTree {
    pub nodes: Vec<Node>,
    pub black: Vec<NodeId>,
    pub traces: Vec<Vec<Interval>>,
    pub gaps: Vec<Vec<Interval>>,
    /// Vertex each sector is attached to, at index s (index 0 unused).
    pub attachment: Vec<NodeId>,
}

fn runs(steps: &[Sector]) -> Vec<Interval> {
    let mut out: Vec<Interval> = Vec::new();
    for &s in steps {
        match out.last_mut() {
            Some(iv) if iv.end == s => iv.end = s + 1,
            _ => out.push(Interval { start: s, end: s + 1 }),
        }
    }
    out
}

impl NestingTree {
    /// `owner_of_step[k - 1]` is the entity owning the boundary step out of k.
    pub fn build(
        n_sec: usize,
        owner_of_step: &[usize],
        entities: usize,
        name: impl Fn(usize) -> String,
    ) -> Result<Self, DecompositionError> {
        let mut steps = vec![Vec::new(); entities];
        for (k, &e) in owner_of_step.iter().enumerate() {
            steps[e].push(k + 1);
        }
        let traces: Vec<Vec<Interval>> = steps.iter().map(|s| runs(s)).collect();
        let gaps: Vec<Vec<Interval>> = traces
            .iter()
            .map(|t| t.windows(2).map(|w| Interval { start: w[0].end, end: w[1].start }).collect())
            .collect();
        let spans: Vec<Interval> =
            traces.iter().map(|t| Interval { start: t[0].start, end: t[t.len() - 1].end }).collect();
        for a in 0..entities {
            for b in a + 1..entities {
                let (sa, sb) = (spans[a], spans[b]);
                let subsequent = sa.end <= sb.start || sb.end <= sa.start;
                let nested = gaps[a].iter().any(|g| g.contains(&sb)) || gaps[b].iter().any(|g| g.contains(&sa));
                if !subsequent && !nested {
                    return Err(DecompositionError::Interleaved(name(a), name(b)));
                }
            }
        }
        let mut nodes = vec![Node {
            kind: NodeKind::Root,
            interval: Interval { start: 1, end: n_sec },
            parent: None,
            children: Vec::new(),
            depth: 0,
        }];
        let mut black = Vec::with_capacity(entities);
        let mut gap_node: Vec<Vec<NodeId>> = Vec::with_capacity(entities);
        for e in 0..entities {
            black.push(NodeId(nodes.len()));
            nodes.push(Node {
                kind: NodeKind::Black(e),
                interval: spans[e],
                parent: None,
                children: Vec::new(),
                depth: 0,
            });
            let mut ids = Vec::new();
            for (index, g) in gaps[e].iter().enumerate() {
                ids.push(NodeId(nodes.len()));
                nodes.push(Node {
                    kind: NodeKind::Gap { owner: e, index },
                    interval: *g,
                    parent: Some(black[e]),
                    children: Vec::new(),
                    depth: 0,
                });
            }
            gap_node.push(ids);
        }
        for e in 0..entities {
            let mut best: Option<(usize, NodeId)> = None;
            for (o, gs) in gaps.iter().enumerate() {
                if o == e {
                    continue;
                }
                for (gi, g) in gs.iter().enumerate() {
                    if g.contains(&spans[e]) && best.is_none_or(|(len, _)| g.len() < len) {
                        best = Some((g.len(), gap_node[o][gi]));
                    }
                }
            }
            let parent = best.map_or(NodeId(0), |(_, id)| id);
            nodes[black[e].0].parent = Some(parent);
        }
        for id in 1..nodes.len() {
            let p = nodes[id].parent.expect("non-root node has a parent");
            nodes[p.0].children.push(NodeId(id));
        }
        for id in 0..nodes.len() {
            let mut ch = std::mem::take(&mut nodes[id].children);
            ch.sort_by_key(|c| nodes[c.0].interval);
            nodes[id].children = ch;
        }
        // Depths in BFS order from the root.
        let mut order = vec![NodeId(0)];
        let mut k = 0;
        while k < order.len() {
            let id = order[k];
            let d = nodes[id.0].depth;
            for c in nodes[id.0].children.clone() {
                nodes[c.0].depth = d + 1;
                order.push(c);
            }
            k += 1;
        }

        let mut attachment = vec![NodeId(usize::MAX); n_sec + 1];
        let mut hits = vec![0usize; n_sec + 1];
        for s in 2..n_sec {
            let (a, b) = (owner_of_step[s - 2], owner_of_step[s - 1]);
            if a == b {
                attachment[s] = black[a];
                hits[s] += 1;
            }
        }
        for (id, node) in nodes.iter().enumerate() {
            if !node.is_white() {
                continue;
            }
            let mut ends = vec![node.interval.start];
            ends.extend(node.children.iter().map(|c| nodes[c.0].interval.end));
            for s in ends {
                if attachment[s] != NodeId(id) {
                    attachment[s] = NodeId(id);
                    hits[s] += 1;
                }
            }
        }
        for s in 1..=n_sec {
            if hits[s] != 1 {
                return Err(DecompositionError::Attachment(s, hits[s]));
            }
        }
        Ok(NestingTree { nodes, black, traces, gaps, attachment })
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn attachment(&self, s: Sector) -> NodeId {
        self.attachment[s]
    }

    pub fn entity(&self, id: NodeId) -> Option<usize> {
        match self.nodes[id.0].kind {
            NodeKind::Black(e) => Some(e),
            _ => None,
        }
    }

    /// Vertices on the unique path from `a` to `b`, both included.
    pub fn path(&self, a: NodeId, b: NodeId) -> Vec<NodeId> {
        let (mut x, mut y) = (a, b);
        let mut left = Vec::new();
        let mut right = Vec::new();
        while self.nodes[x.0].depth > self.nodes[y.0].depth {
            left.push(x);
            x = self.nodes[x.0].parent.expect("deeper node has a parent");
        }
        while self.nodes[y.0].depth > self.nodes[x.0].depth {
            right.push(y);
            y = self.nodes[y.0].parent.expect("deeper node has a parent");
        }
        while x != y {
            left.push(x);
            right.push(y);
            x = self.nodes[x.0].parent.expect("distinct nodes below the root");
            y = self.nodes[y.0].parent.expect("distinct nodes below the root");
        }
        left.push(x);
        left.extend(right.into_iter().rev());
        left
    }

    pub fn adjacent(&self, a: NodeId, b: NodeId) -> bool {
        self.nodes[a.0].parent == Some(b) || self.nodes[b.0].parent == Some(a)
    }

    pub fn neighbours(&self, a: NodeId) -> Vec<NodeId> {
        let mut v: Vec<NodeId> = self.nodes[a.0].parent.into_iter().collect();
        v.extend(self.nodes[a.0].children.iter().copied());
        v
    }

    /// Black node `b` lies on `path` or next to a white vertex on it.
    pub fn covers(&self, path: &[NodeId], b: NodeId) -> bool {
        path.iter().any(|&q| q == b || (self.nodes[q.0].is_white() && self.adjacent(q, b)))
    }

    /// Sectors of the trace of entity `e`.
    pub fn trace_sectors(&self, e: usize) -> Vec<Sector> {
        self.traces[e].iter().flat_map(|iv| iv.start..=iv.end).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub id: ComponentId,
    pub ribbons: Vec<RibbonId>,
    pub trace: Vec<Interval>,
    pub gaps: Vec<Interval>,
    pub trivial: bool,
    pub orientable: bool,
    pub genus: usize,
}

impl Component {
    pub fn trace_start(&self) -> Sector {
        self.trace[0].start
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub id: BlockId,
    pub components: Vec<ComponentId>,
    pub orientable: bool,
    pub trace: Vec<Interval>,
    pub gaps: Vec<Interval>,
}

impl Block {
    pub fn trace_start(&self) -> Sector {
        self.trace[0].start
    }
}

/// Black vertices of the block tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockEntity {
    Block(BlockId),
    Trivial(ComponentId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Adjacency {
    NotAdjacent,
    Adjacent,
    MAdjacent,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub components: Vec<Component>,
    /// Component of each ribbon.
    pub component_of: Vec<ComponentId>,
    pub component_tree: NestingTree,
    pub blocks: Vec<Block>,
    /// Block of each component; `None` for trivial components.
    pub block_of: Vec<Option<BlockId>>,
    pub block_entities: Vec<BlockEntity>,
    pub block_tree: NestingTree,
    pub e_blocks: Vec<BlockId>,
    pub s_blocks: Vec<BlockId>,
    /// Vertex (σ-cycle) of each white vertex of the component tree.
    white_vertex: Vec<Option<VertexId>>,
    mono_sectors: Vec<Vec<Sector>>,
}

impl Decomposition {
    pub fn compute(f: &Fatgraph) -> Result<Self, DecompositionError> {
        f.require_unicellular()?;
        let n = f.n();
        let n_sec = f.sector_count();
        let mut uf = UnionFind::<usize>::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if f.crossing(RibbonId(a), RibbonId(b)) {
                    uf.union(a, b);
                }
            }
        }
        let labels = uf.into_labeling();
        // Order classes by their first boundary step.
        let mut class_order: Vec<usize> = Vec::new();
        for k in 1..n_sec {
            let c = labels[f.step_owner(k).0];
            if !class_order.contains(&c) {
                class_order.push(c);
            }
        }
        let mut component_of = vec![ComponentId(0); n];
        for r in 0..n {
            let pos = class_order.iter().position(|&c| c == labels[r]).expect("every ribbon owns steps");
            component_of[r] = ComponentId(pos);
        }
        let owner_of_step: Vec<usize> = (1..n_sec).map(|k| component_of[f.step_owner(k).0].0).collect();
        let component_tree = NestingTree::build(n_sec, &owner_of_step, class_order.len(), |e| format!("C{}", e + 1))?;

        let mut components = Vec::with_capacity(class_order.len());
        for c in 0..class_order.len() {
            let ribbons: Vec<RibbonId> = (0..n).filter(|&r| component_of[r].0 == c).map(RibbonId).collect();
            let orientable = ribbons.iter().all(|&r| !f.ribbon(r).is_mono());
            let trivial = ribbons.len() == 1 && orientable;
            let genus = if trivial { 0 } else { f.induced_fatgraph(&ribbons)?.euler_genus() };
            components.push(Component {
                id: ComponentId(c),
                ribbons,
                trace: component_tree.traces[c].clone(),
                gaps: component_tree.gaps[c].clone(),
                trivial,
                orientable,
                genus,
            });
        }
        let sum: usize = components.iter().map(|c| c.genus).sum();
        if sum != f.euler_genus() {
            return Err(DecompositionError::Additivity { total: f.euler_genus(), sum });
        }

        // Blocks: non-trivial components connected through white vertices.
        let nc = components.len();
        let mut buf = UnionFind::<usize>::new(nc);
        for node in &component_tree.nodes {
            if !node.is_white() {
                continue;
            }
            let mut around: Vec<usize> = node
                .children
                .iter()
                .chain(node.parent.iter())
                .filter_map(|&id| component_tree.entity(id))
                .filter(|&c| !components[c].trivial)
                .collect();
            around.sort_unstable();
            for w in around.windows(2) {
                buf.union(w[0], w[1]);
            }
        }
        let blabels = buf.into_labeling();
        let mut block_order: Vec<usize> = Vec::new();
        for c in 0..nc {
            if !components[c].trivial && !block_order.contains(&blabels[c]) {
                block_order.push(blabels[c]);
            }
        }
        let block_of: Vec<Option<BlockId>> = (0..nc)
            .map(|c| {
                (!components[c].trivial)
                    .then(|| BlockId(block_order.iter().position(|&b| b == blabels[c]).expect("labeled")))
            })
            .collect();
        let mut block_entities: Vec<BlockEntity> = Vec::new();
        let mut entity_of_component = vec![0usize; nc];
        // Entities ordered by first step, like components.
        for k in 1..n_sec {
            let c = owner_of_step[k - 1];
            let ent = match block_of[c] {
                Some(b) => BlockEntity::Block(b),
                None => BlockEntity::Trivial(ComponentId(c)),
            };
            if !block_entities.contains(&ent) {
                block_entities.push(ent);
            }
        }
        for c in 0..nc {
            let ent = match block_of[c] {
                Some(b) => BlockEntity::Block(b),
                None => BlockEntity::Trivial(ComponentId(c)),
            };
            entity_of_component[c] = block_entities.iter().position(|&e| e == ent).expect("entity listed");
        }
        let block_owner: Vec<usize> = owner_of_step.iter().map(|&c| entity_of_component[c]).collect();
        let block_tree =
            NestingTree::build(n_sec, &block_owner, block_entities.len(), |e| format!("{:?}", block_entities[e]))?;
        let mut blocks: Vec<Block> = (0..block_order.len())
            .map(|b| Block {
                id: BlockId(b),
                components: Vec::new(),
                orientable: true,
                trace: Vec::new(),
                gaps: Vec::new(),
            })
            .collect();
        for c in 0..nc {
            if let Some(b) = block_of[c] {
                blocks[b.0].components.push(ComponentId(c));
                blocks[b.0].orientable &= components[c].orientable;
            }
        }
        for (e, ent) in block_entities.iter().enumerate() {
            if let BlockEntity::Block(b) = ent {
                blocks[b.0].trace = block_tree.traces[e].clone();
                blocks[b.0].gaps = block_tree.gaps[e].clone();
            }
        }

        let white_vertex =
            component_tree.nodes.iter().map(|node| node.is_white().then(|| f.vertex_of(node.interval.start))).collect();
        let mono_sectors = components
            .iter()
            .map(|c| {
                let mut v: Vec<Sector> =
                    c.ribbons.iter().filter(|&&r| f.ribbon(r).is_mono()).flat_map(|&r| f.ribbon(r).sectors()).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();

        let mut d = Decomposition {
            components,
            component_of,
            component_tree,
            blocks,
            block_of,
            block_entities,
            block_tree,
            e_blocks: Vec::new(),
            s_blocks: Vec::new(),
            white_vertex,
            mono_sectors,
        };
        let orientable: Vec<bool> = d.blocks.iter().map(|b| b.orientable).collect();
        d.e_blocks = d.exposed(&orientable);
        d.check_leaf_criterion(&orientable)?;
        let h = d.e_blocks.len();
        d.s_blocks = d
            .e_blocks
            .iter()
            .copied()
            .filter(|&b| {
                let mut o = orientable.clone();
                o[b.0] = false;
                d.exposed(&o).len() == h
            })
            .collect();
        Ok(d)
    }

    pub fn component(&self, c: ComponentId) -> &Component {
        &self.components[c.0]
    }

    pub fn block(&self, b: BlockId) -> &Block {
        &self.blocks[b.0]
    }

    pub fn component_node(&self, c: ComponentId) -> NodeId {
        self.component_tree.black[c.0]
    }

    pub fn block_node(&self, b: BlockId) -> NodeId {
        let e = self.block_entities.iter().position(|&x| x == BlockEntity::Block(b)).expect("every block is an entity");
        self.block_tree.black[e]
    }

    pub fn block_at(&self, node: NodeId) -> Option<BlockId> {
        match self.block_tree.entity(node).map(|e| self.block_entities[e]) {
            Some(BlockEntity::Block(b)) => Some(b),
            _ => None,
        }
    }

    pub fn h(&self) -> usize {
        self.e_blocks.len()
    }

    pub fn all_super(&self) -> bool {
        !self.e_blocks.is_empty() && self.s_blocks.len() == self.e_blocks.len()
    }

    pub fn orientable_blocks(&self) -> Vec<BlockId> {
        self.blocks.iter().filter(|b| b.orientable).map(|b| b.id).collect()
    }

    pub fn is_block_non_orientable(&self) -> bool {
        self.blocks.iter().all(|b| !b.orientable)
    }

    pub fn trivial_count(&self) -> usize {
        self.components.iter().filter(|c| c.trivial).count()
    }

    pub fn attachment(&self, s: Sector) -> NodeId {
        self.component_tree.attachment(s)
    }

    /// Components on the component-tree path between the vertices `i` and `j` are attached to.
    pub fn tree_path(&self, i: Sector, j: Sector) -> Vec<ComponentId> {
        let t = &self.component_tree;
        t.path(t.attachment(i), t.attachment(j)).into_iter().filter_map(|id| t.entity(id).map(ComponentId)).collect()
    }

    /// Block-tree path between the vertices `i` and `j` are attached to.
    pub fn block_path(&self, i: Sector, j: Sector) -> Vec<NodeId> {
        let t = &self.block_tree;
        t.path(t.attachment(i), t.attachment(j))
    }

    pub fn covered_blocks(&self, path: &[NodeId]) -> Vec<BlockId> {
        self.blocks.iter().filter(|b| self.block_tree.covers(path, self.block_node(b.id))).map(|b| b.id).collect()
    }

    /// Trivial components lying on a block-tree path.
    pub fn trivial_on(&self, path: &[NodeId]) -> Vec<ComponentId> {
        path.iter()
            .filter_map(|&id| match self.block_tree.entity(id).map(|e| self.block_entities[e]) {
                Some(BlockEntity::Trivial(c)) => Some(c),
                _ => None,
            })
            .collect()
    }

    /// Orientable blocks not covered by any path joining two other orientable blocks.
    pub fn exposed(&self, orientable: &[bool]) -> Vec<BlockId> {
        let nodes: Vec<(BlockId, NodeId)> = (0..self.blocks.len())
            .filter(|&b| orientable[b])
            .map(|b| (BlockId(b), self.block_node(BlockId(b))))
            .collect();
        let paths: Vec<(usize, usize, Vec<NodeId>)> = (0..nodes.len())
            .flat_map(|x| (x + 1..nodes.len()).map(move |y| (x, y)))
            .map(|(x, y)| (x, y, self.block_tree.path(nodes[x].1, nodes[y].1)))
            .collect();
        let mut out: Vec<BlockId> = nodes
            .iter()
            .enumerate()
            .filter(|&(k, &(_, node))| {
                !paths.iter().any(|(x, y, p)| *x != k && *y != k && self.block_tree.covers(p, node))
            })
            .map(|(_, &(b, _))| b)
            .collect();
        out.sort_by_key(|&b| self.blocks[b.0].trace_start());
        out
    }

    /// Leaves of the minimal subtree spanning all orientable blocks whose
    /// neighbouring gap has degree two there.
    pub fn exposed_by_leaves(&self, orientable: &[bool]) -> Vec<BlockId> {
        let t = &self.block_tree;
        let nodes: Vec<(BlockId, NodeId)> = (0..self.blocks.len())
            .filter(|&b| orientable[b])
            .map(|b| (BlockId(b), self.block_node(BlockId(b))))
            .collect();
        let mut span: BTreeSet<NodeId> = BTreeSet::new();
        for x in 0..nodes.len() {
            for y in x + 1..nodes.len() {
                span.extend(t.path(nodes[x].1, nodes[y].1));
            }
        }
        let degree = |v: NodeId| t.neighbours(v).into_iter().filter(|u| span.contains(u)).count();
        let mut out: Vec<BlockId> = nodes
            .iter()
            .filter(|&&(_, v)| {
                let nb: Vec<NodeId> = t.neighbours(v).into_iter().filter(|u| span.contains(u)).collect();
                nb.len() == 1 && degree(nb[0]) == 2
            })
            .map(|&(b, _)| b)
            .collect();
        out.sort_by_key(|&b| self.blocks[b.0].trace_start());
        out
    }

    fn check_leaf_criterion(&self, orientable: &[bool]) -> Result<(), DecompositionError> {
        if orientable.iter().filter(|&&o| o).count() < 2 {
            return Ok(());
        }
        let a = self.exposed(orientable);
        let b = self.exposed_by_leaves(orientable);
        if a != b {
            return Err(DecompositionError::ExposedMismatch {
                coverage: a.iter().map(|x| x.0).collect(),
                leaf: b.iter().map(|x| x.0).collect(),
            });
        }
        Ok(())
    }

    /// White vertex between two components at tree distance two.
    pub fn shared_white(&self, a: ComponentId, b: ComponentId) -> Option<NodeId> {
        let t = &self.component_tree;
        let (na, nb) = (self.component_node(a), self.component_node(b));
        let (pa, pb) = (t.node(na).parent, t.node(nb).parent);
        if a != b && pa.is_some() && pa == pb {
            return pa;
        }
        if let Some(p) = pb {
            if t.node(p).parent == Some(na) {
                return Some(p);
            }
        }
        if let Some(p) = pa {
            if t.node(p).parent == Some(nb) {
                return Some(p);
            }
        }
        None
    }

    /// The σ-cycle a white vertex of the component tree hangs at.
    pub fn white_vertex(&self, w: NodeId) -> Option<VertexId> {
        self.white_vertex[w.0]
    }

    pub fn adjacency(&self, f: &Fatgraph, a: ComponentId, b: ComponentId) -> Adjacency {
        let Some(w) = self.shared_white(a, b) else {
            return Adjacency::NotAdjacent;
        };
        let v = self.white_vertex[w.0].expect("white vertex");
        let touches = |c: ComponentId| self.mono_sectors[c.0].iter().any(|&s| f.vertex_of(s) == v);
        if touches(a) || touches(b) {
            Adjacency::MAdjacent
        } else {
            Adjacency::Adjacent
        }
    }
}
