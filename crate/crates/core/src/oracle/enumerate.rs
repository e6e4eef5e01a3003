use std::collections::BTreeMap;

use crate::model::{validate, CanonicalKey, Fatgraph, Sector, Sign};

use super::OracleError;

pub const MAX_ENUMERATION_RIBBONS: usize = 4;

/// Advances to the next permutation in lexicographic order.
fn next_permutation(v: &mut [Sector]) -> bool {
    let Some(k) = (0..v.len().saturating_sub(1)).rev().find(|&k| v[k] < v[k + 1]) else {
        return false;
    };
    let l = (k + 1..v.len()).rev().find(|&l| v[k] < v[l]).expect("successor exists");
    v.swap(k, l);
    v[k + 1..].reverse();
    true
}

/// Every valid unicellular fatgraph with `n` ribbons, one per canonical class,
/// in key order.
pub fn enumerate_fatgraphs(n: usize) -> Result<Vec<Fatgraph>, OracleError> {
    if n == 0 || n > MAX_ENUMERATION_RIBBONS {
        return Err(OracleError::EnumerationGuard(n));
    }
    let n_sec = 2 * n + 1;
    let mut classes: BTreeMap<CanonicalKey, Fatgraph> = BTreeMap::new();
    let mut images: Vec<Sector> = (2..=n_sec).collect();
    let mut sigma = vec![0; n_sec];
    let mut omega = vec![Sign::Plus; n_sec];
    loop {
        sigma[..n_sec - 1].copy_from_slice(&images);
        sigma[n_sec - 1] = 1;
        for bits in 0u32..(1 << (n_sec - 1)) {
            for k in 0..n_sec - 1 {
                omega[k] = if bits >> k & 1 == 0 { Sign::Plus } else { Sign::Minus };
            }
            omega[n_sec - 1] = omega[0];
            if validate(n, &sigma, &omega, None).ok {
                let f = Fatgraph::new(n, sigma.clone(), omega.clone()).expect("validated");
                classes.entry(f.canonical_form()).or_insert_with(|| f.canonical_representative());
            }
        }
        if !next_permutation(&mut images) {
            break;
        }
    }
    Ok(classes.into_values().collect())
}
