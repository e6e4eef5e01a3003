//! Small helpers for permutations stored as 1-based label maps (`p[k - 1]` is p(k)).

use crate::model::Sector;

pub fn inverse(p: &[Sector]) -> Vec<Sector> {
    let mut inv = vec![0; p.len()];
    for (k, &v) in p.iter().enumerate() {
        inv[v - 1] = k + 1;
    }
    inv
}

/// Cycles written from their smallest element, sorted by it.
pub fn cycles(p: &[Sector]) -> Vec<Vec<Sector>> {
    let mut seen = vec![false; p.len() + 1];
    let mut out = Vec::new();
    for start in 1..=p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            cyc.push(k);
            k = p[k - 1];
        }
        out.push(cyc);
    }
    out
}

pub fn cycle_of(p: &[Sector], start: Sector) -> Vec<Sector> {
    let mut cyc = vec![start];
    let mut k = p[start - 1];
    while k != start {
        cyc.push(k);
        k = p[k - 1];
    }
    cyc
}

/// Builds a permutation of 1..=len from cycles; omitted labels are fixed.
/// Returns the first repeated or out-of-range label on failure.
pub fn from_cycles(len: usize, cycles: &[Vec<Sector>]) -> Result<Vec<Sector>, Sector> {
    let mut p: Vec<Sector> = (1..=len).collect();
    let mut seen = vec![false; len + 1];
    for cyc in cycles {
        for (k, &x) in cyc.iter().enumerate() {
            if x == 0 || x > len || seen[x] {
                return Err(x);
            }
            seen[x] = true;
            p[x - 1] = cyc[(k + 1) % cyc.len()];
        }
    }
    Ok(p)
}

pub fn cycle_string(p: &[Sector]) -> String {
    let mut s = String::new();
    for cyc in cycles(p) {
        s.push('(');
        for (k, x) in cyc.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            s.push_str(&x.to_string());
        }
        s.push(')');
    }
    s
}
