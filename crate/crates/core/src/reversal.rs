//! Gluing, slicing and half-flipping along a pair of sectors, with the
//! boundary relabeling that keeps γ the standard cycle.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{flip_raw, Fatgraph, ModelError, RibbonId, Sector, Sign};
use crate::perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ReversalKind {
    Gluing,
    Slicing,
    HalfFlipping,
}

impl ReversalKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ReversalKind::Gluing => "glue",
            ReversalKind::Slicing => "slice",
            ReversalKind::HalfFlipping => "halfflip",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "glue" => Some(ReversalKind::Gluing),
            "slice" => Some(ReversalKind::Slicing),
            "halfflip" => Some(ReversalKind::HalfFlipping),
            _ => None,
        }
    }

    pub fn genus_delta(self) -> i64 {
        match self {
            ReversalKind::Gluing => 1,
            ReversalKind::Slicing => -1,
            ReversalKind::HalfFlipping => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Reversal {
    pub i: Sector,
    pub j: Sector,
    pub kind: ReversalKind,
}

impl fmt::Display for Reversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.kind.keyword(), self.i, self.j)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReversalError {
    #[error("sectors must differ (got {0} twice)")]
    SameSector(Sector),
    #[error("sector pair ({i}, {j}) out of range 1..={max}")]
    OutOfRange { i: Sector, j: Sector, max: Sector },
    #[error("({i}, {j}) is a {actual:?}, not a {expected:?}")]
    KindMismatch { i: Sector, j: Sector, expected: ReversalKind, actual: ReversalKind },
    #[error("ribbon {0} is bi-directional")]
    NotMono(usize),
    #[error("ribbon {0} has fewer than three distinct sectors")]
    Degenerate(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("reversal produced an invalid fatgraph: {0}")]
    Inconsistent(String),
}

impl ReversalError {
    pub fn is_internal(&self) -> bool {
        match self {
            ReversalError::Inconsistent(_) => true,
            ReversalError::Model(m) => m.is_internal(),
            _ => false,
        }
    }
}

fn ordered(f: &Fatgraph, i: Sector, j: Sector) -> Result<(Sector, Sector), ReversalError> {
    f.require_unicellular()?;
    if i == j {
        return Err(ReversalError::SameSector(i));
    }
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let max = 2 * f.n();
    if i == 0 || j > max {
        return Err(ReversalError::OutOfRange { i, j, max });
    }
    Ok((i, j))
}

pub fn classify(f: &Fatgraph, i: Sector, j: Sector) -> Result<ReversalKind, ReversalError> {
    let (i, j) = ordered(f, i, j)?;
    Ok(kind_of(f, i, j))
}

fn kind_of(f: &Fatgraph, i: Sector, j: Sector) -> ReversalKind {
    if !f.same_vertex(i, j) {
        ReversalKind::Gluing
    } else if f.omega(i) == f.omega(j) {
        ReversalKind::HalfFlipping
    } else {
        ReversalKind::Slicing
    }
}

pub fn reversal(f: &Fatgraph, i: Sector, j: Sector) -> Result<Reversal, ReversalError> {
    let (i, j) = ordered(f, i, j)?;
    Ok(Reversal { i, j, kind: kind_of(f, i, j) })
}

/// The rotation system before boundary relabeling: in these labels the
/// boundary reads 1..i, j-1..i+1, j..2n+1.
pub fn unnormalized(
    f: &Fatgraph,
    i: Sector,
    j: Sector,
) -> Result<(Vec<Sector>, Vec<Sign>, ReversalKind), ReversalError> {
    let (i, j) = ordered(f, i, j)?;
    let kind = kind_of(f, i, j);
    let mut sigma = f.sigma_map().to_vec();
    let mut omega = f.omega_map().to_vec();
    let n_sec = f.sector_count();
    match kind {
        ReversalKind::Gluing | ReversalKind::Slicing => {
            if kind == ReversalKind::Gluing && omega[i - 1] == omega[j - 1] {
                let target = if f.same_vertex(j, 1) { i } else { j };
                let cyc = perm::cycle_of(&sigma, target);
                flip_raw(&mut sigma, &mut omega, &cyc);
            }
            if omega[i - 1].is_plus() {
                let (si, sj) = (sigma[i - 1], sigma[j - 1]);
                sigma[i - 1] = sj;
                sigma[j - 1] = si;
            } else {
                let inv = perm::inverse(&sigma);
                let (pi, pj) = (inv[i - 1], inv[j - 1]);
                sigma[pi - 1] = j;
                sigma[pj - 1] = i;
            }
            for k in i + 1..j {
                omega[k - 1] = -omega[k - 1];
            }
        }
        ReversalKind::HalfFlipping => {
            let cyc = perm::cycle_of(&sigma, i);
            let pj = cyc.iter().position(|&x| x == j).expect("same vertex");
            let between = &cyc[1..pj];
            let after = &cyc[pj + 1..];
            let mut negate = vec![false; n_sec + 1];
            let mut new_cycle = vec![i];
            if omega[i - 1].is_plus() {
                new_cycle.extend(between.iter().rev());
                new_cycle.push(j);
                new_cycle.extend(after);
                for &x in between {
                    negate[x] = true;
                }
            } else {
                new_cycle.extend(between);
                new_cycle.push(j);
                new_cycle.extend(after.iter().rev());
                for &x in after {
                    negate[x] = true;
                }
            }
            for k in i + 1..j {
                negate[k] = !negate[k];
            }
            for (p, &x) in new_cycle.iter().enumerate() {
                sigma[x - 1] = new_cycle[(p + 1) % new_cycle.len()];
            }
            for k in 1..=n_sec {
                if negate[k] {
                    omega[k - 1] = -omega[k - 1];
                }
            }
            if sigma[n_sec - 1] != 1 {
                // The reflected half carried the root split; flip the root vertex back.
                let cyc = perm::cycle_of(&sigma, 1);
                flip_raw(&mut sigma, &mut omega, &cyc);
            }
        }
    }
    Ok((sigma, omega, kind))
}

/// Boundary relabeling ρ: k ↦ i + j − k inside (i, j), identity elsewhere.
pub fn rho(i: Sector, j: Sector, k: Sector) -> Sector {
    if i < k && k < j {
        i + j - k
    } else {
        k
    }
}

/// Where the boundary step out of sector k lands after an (i, j)-reversal.
pub fn step_image(i: Sector, j: Sector, k: Sector) -> Sector {
    if i <= k && k < j {
        i + j - 1 - k
    } else {
        k
    }
}

pub fn apply(f: &Fatgraph, r: Reversal) -> Result<Fatgraph, ReversalError> {
    let (i, j) = ordered(f, r.i, r.j)?;
    let actual = kind_of(f, i, j);
    if actual != r.kind {
        return Err(ReversalError::KindMismatch { i, j, expected: r.kind, actual });
    }
    let (sigma, omega, _) = unnormalized(f, i, j)?;
    let n_sec = f.sector_count();
    let mut new_sigma = vec![0; n_sec];
    let mut new_omega = vec![Sign::Plus; n_sec];
    for k in 1..=n_sec {
        new_sigma[rho(i, j, k) - 1] = rho(i, j, sigma[k - 1]);
        new_omega[rho(i, j, k) - 1] = omega[k - 1];
    }
    Fatgraph::new(f.n(), new_sigma, new_omega).map_err(|e| ReversalError::Inconsistent(format!("{r}: {e}")))
}

pub fn glue(f: &Fatgraph, i: Sector, j: Sector) -> Result<Fatgraph, ReversalError> {
    apply(f, Reversal { i: i.min(j), j: i.max(j), kind: ReversalKind::Gluing })
}

pub fn slice(f: &Fatgraph, i: Sector, j: Sector) -> Result<Fatgraph, ReversalError> {
    apply(f, Reversal { i: i.min(j), j: i.max(j), kind: ReversalKind::Slicing })
}

pub fn half_flip(f: &Fatgraph, i: Sector, j: Sector) -> Result<Fatgraph, ReversalError> {
    apply(f, Reversal { i: i.min(j), j: i.max(j), kind: ReversalKind::HalfFlipping })
}

/// The slicing that detaches an m-ribbon: (γ(r^L), r^R), or (r^L, γ⁻¹(r^R))
/// when r^R is the root sector.
pub fn m_ribbon_slicing(f: &Fatgraph, r: RibbonId) -> Result<Reversal, ReversalError> {
    f.require_unicellular()?;
    if r.0 >= f.n() {
        return Err(ModelError::UnknownRibbon(r.0).into());
    }
    let rb = f.ribbon(r);
    if !rb.is_mono() {
        return Err(ReversalError::NotMono(r.0));
    }
    if rb.distinct_sectors().len() < 3 {
        return Err(ReversalError::Degenerate(r.0));
    }
    let (i, j) =
        if rb.terminus == f.root() { (rb.origin, f.gamma_inv(rb.terminus)) } else { (f.gamma(rb.origin), rb.terminus) };
    let rev = reversal(f, i, j)?;
    if rev.kind != ReversalKind::Slicing {
        return Err(ReversalError::Inconsistent(format!("m-ribbon {} pair ({i}, {j}) is a {:?}", r.0, rev.kind)));
    }
    Ok(rev)
}

pub fn slice_m_ribbon(f: &Fatgraph, r: RibbonId) -> Result<Fatgraph, ReversalError> {
    apply(f, m_ribbon_slicing(f, r)?)
}

/// All pairs 1 ≤ i < j ≤ 2n in ascending order.
pub fn legal_reversals(f: &Fatgraph) -> Vec<Reversal> {
    let top = 2 * f.n();
    let mut out = Vec::with_capacity(top * (top - 1) / 2);
    for i in 1..=top {
        for j in i + 1..=top {
            out.push(Reversal { i, j, kind: kind_of(f, i, j) });
        }
    }
    out
}

/// Natural bijection of ribbons across a reversal, via the boundary steps
/// each ribbon's sides carry. `None` if the two sides of a ribbon disagree.
pub fn ribbon_map(before: &Fatgraph, r: Reversal, after: &Fatgraph) -> Option<Vec<RibbonId>> {
    before
        .ribbons()
        .iter()
        .map(|rb| {
            let a = after.step_owner(step_image(r.i, r.j, rb.steps[0]));
            let b = after.step_owner(step_image(r.i, r.j, rb.steps[1]));
            (a == b).then_some(a)
        })
        .collect()
}
