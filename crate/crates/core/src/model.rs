//! Rooted fatgraphs: sectors, vertices, the ribbon matching, genus, flips,
//! canonical forms and crossings.

use std::fmt;
use std::ops::Neg;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::Decomposition;
use crate::perm;

/// Sector labels run from 1 to 2n+1.
pub type Sector = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RibbonId(pub usize);

/// Identified by the smallest sector on the vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub Sector);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Twist {
    Untwisted,
    Twisted,
    Ambiguous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Mono,
    Bi,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ribbon {
    pub id: RibbonId,
    pub wedge_a: (Sector, Sector),
    pub wedge_b: (Sector, Sector),
    pub twist: Twist,
    pub direction: Direction,
    pub origin: Sector,
    pub terminus: Sector,
    /// Sources of the two boundary steps k -> k+1 running along the sides of the ribbon.
    pub steps: [Sector; 2],
}

impl Ribbon {
    pub fn is_mono(&self) -> bool {
        self.direction == Direction::Mono
    }

    pub fn sectors(&self) -> [Sector; 4] {
        [self.wedge_a.0, self.wedge_a.1, self.wedge_b.0, self.wedge_b.1]
    }

    pub fn has_sector(&self, s: Sector) -> bool {
        self.sectors().contains(&s)
    }

    pub fn distinct_sectors(&self) -> Vec<Sector> {
        let mut v = self.sectors().to_vec();
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    ZeroRibbons,
    Length { field: &'static str, expected: usize, found: usize },
    OutOfRange { field: &'static str, label: Sector },
    NotBijective { field: &'static str, label: Sector },
    RootSigma { found: Sector },
    RootGamma { found: Sector },
    RootOrientation,
    UnmatchedWedge { wedge: (Sector, Sector) },
    NoPerfectMatching,
    AmbiguousMatching { wedges: Vec<(Sector, Sector)> },
    StepConflict { sector: Sector },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroRibbons => write!(f, "at least one ribbon is required"),
            Violation::Length { field, expected, found } => {
                write!(f, "{field} has {found} entries, expected {expected} (2n+1)")
            }
            Violation::OutOfRange { field, label } => write!(f, "{field}: label {label} out of range"),
            Violation::NotBijective { field, label } => {
                write!(f, "{field} is not a bijection: label {label} is hit twice")
            }
            Violation::RootSigma { found } => write!(f, "sigma(2n+1) = {found}, expected 1"),
            Violation::RootGamma { found } => write!(f, "gamma(2n+1) = {found}, expected 1"),
            Violation::RootOrientation => write!(f, "omega(1) differs from omega(2n+1)"),
            Violation::UnmatchedWedge { wedge } => {
                write!(f, "wedge ({}, {}) has no admissible partner", wedge.0, wedge.1)
            }
            Violation::NoPerfectMatching => write!(f, "wedges admit no perfect matching"),
            Violation::AmbiguousMatching { wedges } => {
                write!(f, "wedges admit several perfect matchings; ambiguous at")?;
                for (x, y) in wedges {
                    write!(f, " ({x}, {y})")?;
                }
                Ok(())
            }
            Violation::StepConflict { sector } => {
                write!(f, "boundary step out of sector {sector} is not covered by exactly one ribbon side")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    /// `partner[x - 1]` for each wedge x in 1..=2n.
    pub partner: Vec<Option<Sector>>,
    /// (x, y, twist) per matched ribbon, x < y.
    pub cases: Vec<(Sector, Sector, Twist)>,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("invalid fatgraph: {0}")]
    Invalid(ValidationReport),
    #[error("fatgraph is not unicellular ({0} boundary components)")]
    NotUnicellular(usize),
    #[error("no vertex has smallest sector {0}")]
    UnknownVertex(Sector),
    #[error("the root vertex cannot be flipped")]
    RootVertexFlip,
    #[error("ribbon set is not a component")]
    NotAComponent,
    #[error("unknown ribbon {0}")]
    UnknownRibbon(usize),
    #[error("induced fatgraph is inconsistent: {0}")]
    Inconsistent(String),
}

impl ModelError {
    pub fn is_internal(&self) -> bool {
        matches!(self, ModelError::Inconsistent(_))
    }
}

struct Frame<'a> {
    sigma: &'a [Sector],
    omega: &'a [Sign],
    gamma: &'a [Sector],
    gamma_inv: &'a [Sector],
    sigma_inv: &'a [Sector],
}

impl Frame<'_> {
    fn s(&self, k: Sector) -> Sector {
        self.sigma[k - 1]
    }
    fn si(&self, k: Sector) -> Sector {
        self.sigma_inv[k - 1]
    }
    fn w(&self, k: Sector) -> Sign {
        self.omega[k - 1]
    }
    fn g(&self, k: Sector) -> Sector {
        self.gamma[k - 1]
    }
    fn gi(&self, k: Sector) -> Sector {
        self.gamma_inv[k - 1]
    }

    // A boundary step leaving a sector with sign + exits through the half-edge
    // after it in the vertex order; with sign - through the one before it.
    fn untwisted(&self, x: Sector, y: Sector) -> bool {
        let (sx, sy) = (self.s(x), self.s(y));
        self.w(x) == self.w(sy)
            && self.w(sx) == self.w(y)
            && if self.w(x).is_plus() { self.g(x) == sy } else { self.g(sy) == x }
            && if self.w(y).is_plus() { self.g(y) == sx } else { self.g(sx) == y }
    }

    fn twisted(&self, x: Sector, y: Sector) -> bool {
        let (sx, sy) = (self.s(x), self.s(y));
        self.w(x) == -self.w(y)
            && self.w(sx) == -self.w(sy)
            && if self.w(x).is_plus() { self.g(x) == y } else { self.g(y) == x }
            && if self.w(sy).is_plus() { self.g(sx) == sy } else { self.g(sy) == sx }
    }

    fn candidates(&self, x: Sector) -> [Sector; 2] {
        let c1 = if self.w(x).is_plus() { self.si(self.g(x)) } else { self.si(self.gi(x)) };
        let c2 = if self.w(x).is_plus() { self.g(x) } else { self.gi(x) };
        [c1, c2]
    }

    fn twist(&self, x: Sector, y: Sector) -> Option<Twist> {
        match (self.untwisted(x, y), self.twisted(x, y)) {
            (true, true) => Some(Twist::Ambiguous),
            (true, false) => Some(Twist::Untwisted),
            (false, true) => Some(Twist::Twisted),
            (false, false) => None,
        }
    }

    /// Source sectors of the two boundary steps along the sides of ribbon (x, y).
    fn side_steps(&self, x: Sector, y: Sector, twist: Twist) -> [Sector; 2] {
        let (sx, sy) = (self.s(x), self.s(y));
        match twist {
            Twist::Untwisted | Twist::Ambiguous => {
                [if self.w(x).is_plus() { x } else { sy }, if self.w(y).is_plus() { y } else { sx }]
            }
            Twist::Twisted => [if self.w(x).is_plus() { x } else { y }, if self.w(sy).is_plus() { sx } else { sy }],
        }
    }
}

fn check_perm(field: &'static str, p: &[Sector], len: usize, out: &mut Vec<Violation>) -> bool {
    if p.len() != len {
        out.push(Violation::Length { field, expected: len, found: p.len() });
        return false;
    }
    let mut seen = vec![false; len + 1];
    let mut ok = true;
    for &v in p {
        if v == 0 || v > len {
            out.push(Violation::OutOfRange { field, label: v });
            ok = false;
        } else if seen[v] {
            out.push(Violation::NotBijective { field, label: v });
            ok = false;
        } else {
            seen[v] = true;
        }
    }
    ok
}

fn count_matchings(adj: &[Vec<Sector>], matched: &mut [Option<Sector>], found: &mut Vec<Vec<Option<Sector>>>) {
    if found.len() >= 2 {
        return;
    }
    // Branch on the unmatched wedge with the fewest free options.
    let mut best: Option<(usize, usize)> = None;
    for x in 1..matched.len() {
        if matched[x].is_some() {
            continue;
        }
        let free = adj[x].iter().filter(|&&y| matched[y].is_none()).count();
        if best.is_none_or(|(_, b)| free < b) {
            best = Some((x, free));
        }
    }
    let Some((x, _)) = best else {
        found.push(matched.to_vec());
        return;
    };
    for &y in &adj[x] {
        if matched[y].is_none() {
            matched[x] = Some(y);
            matched[y] = Some(x);
            count_matchings(adj, matched, found);
            matched[x] = None;
            matched[y] = None;
        }
    }
}

/// Checks every defining constraint of a rooted fatgraph. `gamma` defaults to
/// the standard boundary cycle (1 2 ... 2n+1).
pub fn validate(n: usize, sigma: &[Sector], omega: &[Sign], gamma: Option<&[Sector]>) -> ValidationReport {
    let n_sec = 2 * n + 1;
    let mut violations = Vec::new();
    let fail = |violations: Vec<Violation>| ValidationReport {
        ok: false,
        partner: vec![None; 2 * n],
        cases: Vec::new(),
        violations,
    };
    if n == 0 {
        violations.push(Violation::ZeroRibbons);
        return fail(violations);
    }
    let standard: Vec<Sector> = (1..=n_sec).map(|k| k % n_sec + 1).collect();
    let gamma = gamma.unwrap_or(&standard);
    let mut shapes_ok = check_perm("sigma", sigma, n_sec, &mut violations);
    shapes_ok &= check_perm("gamma", gamma, n_sec, &mut violations);
    if omega.len() != n_sec {
        violations.push(Violation::Length { field: "omega", expected: n_sec, found: omega.len() });
        shapes_ok = false;
    }
    if !shapes_ok {
        return fail(violations);
    }
    if sigma[n_sec - 1] != 1 {
        violations.push(Violation::RootSigma { found: sigma[n_sec - 1] });
    }
    if gamma[n_sec - 1] != 1 {
        violations.push(Violation::RootGamma { found: gamma[n_sec - 1] });
    }
    if omega[0] != omega[n_sec - 1] {
        violations.push(Violation::RootOrientation);
    }
    let sigma_inv = perm::inverse(sigma);
    let gamma_inv = perm::inverse(gamma);
    let fr = Frame { sigma, omega, gamma, gamma_inv: &gamma_inv, sigma_inv: &sigma_inv };

    let wedges = 2 * n;
    let mut adj: Vec<Vec<Sector>> = vec![Vec::new(); wedges + 1];
    for x in 1..=wedges {
        for y in fr.candidates(x) {
            if y != x && y != n_sec && !adj[x].contains(&y) && fr.twist(x, y).is_some() {
                adj[x].push(y);
            }
        }
    }
    // Admissibility is symmetric; make the lists agree in case a candidate
    // was only derived from one side.
    for x in 1..=wedges {
        for k in 0..adj[x].len() {
            let y = adj[x][k];
            if !adj[y].contains(&x) {
                adj[y].push(x);
            }
        }
    }
    for x in 1..=wedges {
        adj[x].sort_unstable();
        if adj[x].is_empty() {
            violations.push(Violation::UnmatchedWedge { wedge: (x, fr.s(x)) });
        }
    }
    if !violations.is_empty() {
        return fail(violations);
    }
    let mut matched = vec![None; wedges + 1];
    let mut found = Vec::new();
    count_matchings(&adj, &mut matched, &mut found);
    match found.len() {
        0 => {
            violations.push(Violation::NoPerfectMatching);
            return fail(violations);
        }
        1 => {}
        _ => {
            let wedges = (1..=wedges).filter(|&x| found[0][x] != found[1][x]).map(|x| (x, fr.s(x))).collect();
            violations.push(Violation::AmbiguousMatching { wedges });
            return fail(violations);
        }
    }
    let matching = &found[0];
    let mut cases = Vec::with_capacity(n);
    let mut step_hits = vec![0usize; n_sec + 1];
    for x in 1..=wedges {
        let y = matching[x].expect("perfect matching");
        if x < y {
            let twist = fr.twist(x, y).expect("admissible pair");
            for s in fr.side_steps(x, y, twist) {
                step_hits[s] += 1;
            }
            cases.push((x, y, twist));
        }
    }
    for (s, &hits) in step_hits.iter().enumerate().take(n_sec).skip(1) {
        if hits != 1 {
            violations.push(Violation::StepConflict { sector: s });
        }
    }
    if step_hits[n_sec] != 0 {
        violations.push(Violation::StepConflict { sector: n_sec });
    }
    let partner = matching[1..].to_vec();
    ValidationReport { ok: violations.is_empty(), partner, cases, violations }
}

/// Canonical, byte-comparable key of a fatgraph up to non-root vertex flips.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone)]
pub struct Fatgraph {
    n: usize,
    sigma: Vec<Sector>,
    omega: Vec<Sign>,
    gamma: Option<Vec<Sector>>,
    ribbons: Vec<Ribbon>,
    /// Ribbon owning the boundary step out of sector k, at index k - 1 (k = 1..2n).
    step_owner: Vec<RibbonId>,
    wedge_owner: Vec<RibbonId>,
    vertices: Vec<Vec<Sector>>,
    vertex_index: Vec<usize>,
    decomposition: OnceLock<Arc<Decomposition>>,
}

impl PartialEq for Fatgraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sigma == other.sigma && self.omega == other.omega && self.gamma == other.gamma
    }
}

impl Eq for Fatgraph {}

impl std::hash::Hash for Fatgraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.sigma.hash(state);
        self.omega.hash(state);
        self.gamma.hash(state);
    }
}

impl fmt::Debug for Fatgraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fatgraph(n={}, sigma={}, omega=", self.n, perm::cycle_string(&self.sigma))?;
        for s in &self.omega {
            write!(f, "{}", s.as_char())?;
        }
        if let Some(g) = &self.gamma {
            write!(f, ", gamma={}", perm::cycle_string(g))?;
        }
        write!(f, ")")
    }
}

impl Fatgraph {
    /// `sigma[k - 1]` is σ(k) and `omega[k - 1]` is ω(k). The boundary is the standard cycle.
    pub fn new(n: usize, sigma: Vec<Sector>, omega: Vec<Sign>) -> Result<Self, ModelError> {
        Self::build(n, sigma, omega, None)
    }

    /// Fatgraph with an explicit boundary permutation; only unicellular
    /// operations reject the result later.
    pub fn with_boundary(
        n: usize,
        sigma: Vec<Sector>,
        omega: Vec<Sign>,
        gamma: Vec<Sector>,
    ) -> Result<Self, ModelError> {
        let standard = gamma.iter().enumerate().all(|(k, &g)| g == (k + 1) % gamma.len() + 1);
        Self::build(n, sigma, omega, if standard { None } else { Some(gamma) })
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<Sector>], omega: Vec<Sign>) -> Result<Self, ModelError> {
        let sigma = perm::from_cycles(2 * n + 1, cycles).map_err(|label| {
            ModelError::Invalid(ValidationReport {
                ok: false,
                partner: vec![None; 2 * n],
                cases: Vec::new(),
                violations: vec![Violation::NotBijective { field: "sigma", label }],
            })
        })?;
        Self::new(n, sigma, omega)
    }

    fn build(n: usize, sigma: Vec<Sector>, omega: Vec<Sign>, gamma: Option<Vec<Sector>>) -> Result<Self, ModelError> {
        let report = validate(n, &sigma, &omega, gamma.as_deref());
        if !report.ok {
            return Err(ModelError::Invalid(report));
        }
        let n_sec = 2 * n + 1;
        let standard: Vec<Sector> = (1..=n_sec).map(|k| k % n_sec + 1).collect();
        let gam = gamma.as_deref().unwrap_or(&standard);
        let sigma_inv = perm::inverse(&sigma);
        let gamma_inv = perm::inverse(gam);
        let fr = Frame { sigma: &sigma, omega: &omega, gamma: gam, gamma_inv: &gamma_inv, sigma_inv: &sigma_inv };

        let mut ribbons = Vec::with_capacity(n);
        let mut step_owner = vec![RibbonId(usize::MAX); 2 * n];
        let mut wedge_owner = vec![RibbonId(usize::MAX); 2 * n];
        // Boundary order: position of each sector along γ starting from 1.
        let mut pos = vec![0usize; n_sec + 1];
        let mut k = 1;
        for p in 0..n_sec {
            pos[k] = p;
            k = gam[k - 1];
            if k == 1 {
                break;
            }
        }
        for (idx, &(x, y, twist)) in report.cases.iter().enumerate() {
            let id = RibbonId(idx);
            let (sx, sy) = (sigma[x - 1], sigma[y - 1]);
            let mut steps = fr.side_steps(x, y, twist);
            steps.sort_unstable();
            for s in steps {
                step_owner[s - 1] = id;
            }
            wedge_owner[x - 1] = id;
            wedge_owner[y - 1] = id;
            let mono_a = omega[x - 1] != omega[sx - 1];
            let mono_b = omega[y - 1] != omega[sy - 1];
            debug_assert_eq!(mono_a, mono_b, "wedges of one ribbon disagree on direction");
            let four = [x, sx, y, sy];
            let origin = *four.iter().min_by_key(|&&s| pos[s]).expect("four sectors");
            let terminus = *four.iter().max_by_key(|&&s| pos[s]).expect("four sectors");
            ribbons.push(Ribbon {
                id,
                wedge_a: (x, sx),
                wedge_b: (y, sy),
                twist,
                direction: if mono_a { Direction::Mono } else { Direction::Bi },
                origin,
                terminus,
                steps,
            });
        }
        let vertices = perm::cycles(&sigma);
        let mut vertex_index = vec![0usize; n_sec + 1];
        for (vi, cyc) in vertices.iter().enumerate() {
            for &s in cyc {
                vertex_index[s] = vi;
            }
        }
        Ok(Fatgraph {
            n,
            sigma,
            omega,
            gamma,
            ribbons,
            step_owner,
            wedge_owner,
            vertices,
            vertex_index,
            decomposition: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 2n + 1.
    pub fn sector_count(&self) -> usize {
        2 * self.n + 1
    }

    pub fn root(&self) -> Sector {
        self.sector_count()
    }

    pub fn sigma(&self, k: Sector) -> Sector {
        self.sigma[k - 1]
    }

    pub fn sigma_inv(&self, k: Sector) -> Sector {
        let v = &self.vertices[self.vertex_index[k]];
        let p = v.iter().position(|&s| s == k).expect("sector on its vertex");
        v[(p + v.len() - 1) % v.len()]
    }

    pub fn omega(&self, k: Sector) -> Sign {
        self.omega[k - 1]
    }

    pub fn sigma_map(&self) -> &[Sector] {
        &self.sigma
    }

    pub fn omega_map(&self) -> &[Sign] {
        &self.omega
    }

    pub fn explicit_boundary(&self) -> Option<&[Sector]> {
        self.gamma.as_deref()
    }

    pub fn gamma(&self, k: Sector) -> Sector {
        match &self.gamma {
            Some(g) => g[k - 1],
            None => k % self.sector_count() + 1,
        }
    }

    pub fn gamma_inv(&self, k: Sector) -> Sector {
        match &self.gamma {
            Some(g) => g.iter().position(|&x| x == k).expect("permutation") + 1,
            None => {
                if k == 1 {
                    self.sector_count()
                } else {
                    k - 1
                }
            }
        }
    }

    pub fn ribbons(&self) -> &[Ribbon] {
        &self.ribbons
    }

    pub fn ribbon(&self, id: RibbonId) -> &Ribbon {
        &self.ribbons[id.0]
    }

    /// Ribbon whose side carries the boundary step out of sector `k` (1 ≤ k ≤ 2n).
    pub fn step_owner(&self, k: Sector) -> RibbonId {
        self.step_owner[k - 1]
    }

    /// σ-cycles, each written from its smallest sector, sorted by that sector.
    pub fn vertices(&self) -> &[Vec<Sector>] {
        &self.vertices
    }

    pub fn vertex_of(&self, s: Sector) -> VertexId {
        VertexId(self.vertices[self.vertex_index[s]][0])
    }

    pub fn same_vertex(&self, a: Sector, b: Sector) -> bool {
        self.vertex_index[a] == self.vertex_index[b]
    }

    pub fn vertex(&self, v: VertexId) -> Option<&[Sector]> {
        self.vertices.iter().find(|c| c[0] == v.0).map(Vec::as_slice)
    }

    pub fn root_vertex(&self) -> VertexId {
        self.vertex_of(1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn boundary_count(&self) -> usize {
        match &self.gamma {
            Some(g) => perm::cycles(g).len(),
            None => 1,
        }
    }

    pub fn is_unicellular(&self) -> bool {
        self.boundary_count() == 1
    }

    pub fn require_unicellular(&self) -> Result<(), ModelError> {
        match self.boundary_count() {
            1 => Ok(()),
            b => Err(ModelError::NotUnicellular(b)),
        }
    }

    pub fn euler_genus(&self) -> usize {
        let chi = self.vertex_count() as i64 - self.n as i64 + self.boundary_count() as i64;
        let g = 2 - chi;
        assert!(g >= 0, "negative Euler genus on a validated fatgraph");
        g as usize
    }

    pub fn is_orientable(&self) -> bool {
        self.ribbons.iter().all(|r| !r.is_mono())
    }

    /// Reverses the cyclic order of a non-root vertex and negates ω on it.
    pub fn flip_vertex(&self, v: VertexId) -> Result<Fatgraph, ModelError> {
        let cyc = self.vertex(v).ok_or(ModelError::UnknownVertex(v.0))?;
        if cyc.contains(&1) {
            return Err(ModelError::RootVertexFlip);
        }
        let (mut sigma, mut omega) = (self.sigma.clone(), self.omega.clone());
        flip_raw(&mut sigma, &mut omega, cyc);
        let out = Self::build(self.n, sigma, omega, self.gamma.clone());
        Ok(out.expect("vertex flips preserve validity"))
    }

    fn canonical_parts(&self) -> (Vec<Sector>, Vec<Sign>) {
        let (mut sigma, mut omega) = (self.sigma.clone(), self.omega.clone());
        for cyc in &self.vertices {
            if cyc.contains(&1) {
                continue;
            }
            let as_is: Vec<(Sector, Sign)> = cyc.iter().map(|&s| (s, self.omega[s - 1])).collect();
            let mut flipped = vec![(cyc[0], -self.omega[cyc[0] - 1])];
            flipped.extend(cyc[1..].iter().rev().map(|&s| (s, -self.omega[s - 1])));
            let key = |v: &[(Sector, Sign)]| {
                (v.iter().map(|p| p.0).collect::<Vec<_>>(), v.iter().map(|p| p.1).collect::<Vec<_>>())
            };
            if key(&flipped) < key(&as_is) {
                flip_raw(&mut sigma, &mut omega, cyc);
            }
        }
        (sigma, omega)
    }

    pub fn canonical_form(&self) -> CanonicalKey {
        let (sigma, omega) = self.canonical_parts();
        let mut bytes = Vec::with_capacity(2 + 3 * sigma.len());
        bytes.extend_from_slice(&(self.n as u16).to_be_bytes());
        for (s, w) in sigma.iter().zip(&omega) {
            bytes.extend_from_slice(&(*s as u16).to_be_bytes());
            bytes.push(if w.is_plus() { 1 } else { 0 });
        }
        CanonicalKey(bytes)
    }

    pub fn canonical_representative(&self) -> Fatgraph {
        let (sigma, omega) = self.canonical_parts();
        if sigma == self.sigma && omega == self.omega {
            return self.clone();
        }
        Self::build(self.n, sigma, omega, self.gamma.clone()).expect("vertex flips preserve validity")
    }

    pub fn crossing(&self, a: RibbonId, b: RibbonId) -> bool {
        crossing_pair(&self.ribbons[a.0], &self.ribbons[b.0])
    }

    /// Cached decomposition into components and blocks.
    pub fn decompose(&self) -> Result<Arc<Decomposition>, crate::decomposition::DecompositionError> {
        if let Some(d) = self.decomposition.get() {
            return Ok(Arc::clone(d));
        }
        let d = Arc::new(Decomposition::compute(self)?);
        Ok(Arc::clone(self.decomposition.get_or_init(|| d)))
    }

    /// The fatgraph made of the given component's ribbons alone, re-rooted at
    /// the first sector of the component in boundary order.
    pub fn induced_fatgraph(&self, component: &[RibbonId]) -> Result<Fatgraph, ModelError> {
        self.require_unicellular()?;
        let mut members = component.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() || members.iter().any(|r| r.0 >= self.n) {
            return Err(ModelError::NotAComponent);
        }
        let in_c = {
            let mut v = vec![false; self.n];
            for r in &members {
                v[r.0] = true;
            }
            v
        };
        // A component is closed under crossing and connected by it.
        for a in 0..self.n {
            for &b in &members {
                if !in_c[a] && self.crossing(RibbonId(a), b) {
                    return Err(ModelError::NotAComponent);
                }
            }
        }
        {
            let mut reach = vec![members[0]];
            let mut seen = vec![false; self.n];
            seen[members[0].0] = true;
            while let Some(r) = reach.pop() {
                for &b in &members {
                    if !seen[b.0] && self.crossing(r, b) {
                        seen[b.0] = true;
                        reach.push(b);
                    }
                }
            }
            if members.iter().any(|r| !seen[r.0]) {
                return Err(ModelError::NotAComponent);
            }
        }
        let n_sec = self.sector_count();
        let m = members.len();
        let steps: Vec<Sector> = (1..n_sec).filter(|&k| in_c[self.step_owner(k).0]).collect();
        debug_assert_eq!(steps.len(), 2 * m);
        let inconsistent = |what: &str| ModelError::Inconsistent(what.to_string());

        // New labels: departure of step t gets t (1-based), arrival of the
        // last step gets 2m + 1.
        let mut label = vec![0usize; n_sec + 1];
        let assign = |s: Sector, l: usize, label: &mut Vec<usize>| -> Result<(), ModelError> {
            if label[s] != 0 && label[s] != l {
                return Err(inconsistent("sector mapped to two corners"));
            }
            label[s] = l;
            Ok(())
        };
        for (t, &s) in steps.iter().enumerate() {
            assign(s, t + 1, &mut label)?;
            let arrival = self.gamma(s);
            let l = if t + 1 == steps.len() { 2 * m + 1 } else { t + 2 };
            assign(arrival, l, &mut label)?;
        }
        // Merged corners: runs of σ-consecutive sectors between kept half-edges.
        let kept = |x: Sector| x != n_sec && in_c[self.half_edge_owner(x).0];
        let mut corners: Vec<(Sector, Sector)> = Vec::new(); // (first, last) in σ-order
        for x in 1..n_sec {
            if !kept(x) {
                continue;
            }
            let first = self.sigma(x);
            let mut k = first;
            while !kept(k) {
                k = self.sigma(k);
            }
            corners.push((first, k));
        }
        let top = 2 * m + 1;
        let corner_label = |&(first, last): &(Sector, Sector)| -> Result<usize, ModelError> {
            let (mut a, mut b) = (label[first], label[last]);
            // The wrap-around corner carries both 1 and 2m+1; it stays 1 until re-rooted.
            if a == top {
                a = 1;
            }
            if b == top {
                b = 1;
            }
            if a == 0 || a != b {
                return Err(inconsistent("corner labels disagree"));
            }
            if self.omega(first) != self.omega(last) {
                return Err(inconsistent("merged corner with mixed orientation"));
            }
            Ok(a)
        };
        let mut sigma = vec![0usize; top];
        let mut omega = vec![Sign::Plus; top];
        for c in &corners {
            let l = corner_label(c)?;
            let next_first = self.sigma(c.1);
            let next = corners.iter().find(|d| d.0 == next_first).ok_or_else(|| inconsistent("dangling corner"))?;
            sigma[l - 1] = corner_label(next)?;
            omega[l - 1] = self.omega(c.0);
        }
        if sigma[..top - 1].contains(&0) {
            return Err(inconsistent("corner count mismatch"));
        }
        let mut sigma: Vec<Sector> = sigma[..top - 1].to_vec();
        let mut omega: Vec<Sign> = omega[..top - 1].to_vec();
        if !omega[0].is_plus() {
            let root_cycle = perm::cycle_of(&sigma, 1);
            flip_raw(&mut sigma, &mut omega, &root_cycle);
        }
        // Bisect corner 1: the new root sector sits right before 1 in σ-order.
        let pred = perm::inverse(&sigma)[0];
        sigma.push(1);
        omega.push(omega[0]);
        if pred == 1 {
            sigma[0] = top;
        } else {
            sigma[pred - 1] = top;
        }
        Fatgraph::new(m, sigma, omega).map_err(|e| ModelError::Inconsistent(format!("induced fatgraph invalid: {e}")))
    }

    /// Ribbon containing the half-edge between corners x and σ(x), x ≠ 2n+1.
    pub fn half_edge_owner(&self, x: Sector) -> RibbonId {
        self.wedge_owner[x - 1]
    }

    pub fn is_plane_tree(&self) -> bool {
        self.euler_genus() == 0
    }
}

pub fn crossing_pair(a: &Ribbon, b: &Ribbon) -> bool {
    (a.origin < b.origin && b.origin < a.terminus && a.terminus < b.terminus)
        || (b.origin < a.origin && a.origin < b.terminus && b.terminus < a.terminus)
}

/// Reverses a σ-cycle in place and negates ω on its sectors.
pub(crate) fn flip_raw(sigma: &mut [Sector], omega: &mut [Sign], cyc: &[Sector]) {
    let len = cyc.len();
    for (p, &s) in cyc.iter().enumerate() {
        sigma[s - 1] = cyc[(p + len - 1) % len];
        omega[s - 1] = -omega[s - 1];
    }
}
