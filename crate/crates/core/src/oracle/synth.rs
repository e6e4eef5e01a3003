//! Composition of fatgraphs: inserting one into a corner of another.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Fatgraph, Sector, Sign};

/// Inserts `b` into corner `k` of `a` (1 ≤ k ≤ 2n_a + 1): `b`'s boundary is
/// spliced in right after sector k and its root vertex merged with k's vertex.
/// Panics if k is a negative sector of the root vertex (see [`insertable`]).
pub fn insert(a: &Fatgraph, k: Sector, b: &Fatgraph) -> Fatgraph {
    let a = if a.omega(k).is_plus() {
        a.clone()
    } else {
        a.flip_vertex(a.vertex_of(k)).expect("a negative corner is never on the root vertex")
    };
    let (na, nb) = (a.sector_count(), b.sector_count());
    let n_sec = na + nb - 1;
    // a's sector x > k shifts by nb - 1; b's sector y maps to k + y - 1; b's root
    // sector nb and the second half of corner k merge into k + nb - 1.
    let from_a = |x: Sector| if x <= k { x } else { x + nb - 1 };
    let from_b = |y: Sector| k + y - 1;
    let mut sigma = vec![0; n_sec];
    let mut omega = vec![Sign::Plus; n_sec];
    let second = k + nb - 1;
    for x in 1..=na {
        let image = if x == k { second } else { from_a(x) };
        let target = a.sigma(x);
        sigma[image - 1] = from_a(target);
        omega[image - 1] = a.omega(x);
    }
    // b's sector 1 is the first half of corner k; its root sector nb is the second.
    for y in 1..nb {
        sigma[from_b(y) - 1] = from_b(b.sigma(y));
        omega[from_b(y) - 1] = b.omega(y);
    }
    Fatgraph::new(a.n() + b.n(), sigma, omega).expect("corner insertion preserves validity")
}

/// Corners [`insert`] accepts: positive ones, and any corner off the root vertex.
pub fn insertable(a: &Fatgraph) -> Vec<Sector> {
    (1..=a.sector_count()).filter(|&k| a.omega(k).is_plus() || !a.same_vertex(k, 1)).collect()
}

/// `a` followed by `b` at the root corner.
pub fn concat(a: &Fatgraph, b: &Fatgraph) -> Fatgraph {
    insert(a, a.sector_count(), b)
}

/// `b` hung inside a new trivial ribbon.
pub fn wrap(b: &Fatgraph) -> Fatgraph {
    insert(&crate::fixtures::t1(), 2, b)
}

/// Irreducible fatgraphs with 1..=3 ribbons, the pieces of [`random_composite`].
pub fn irreducible_pieces() -> Vec<Fatgraph> {
    (1..=3)
        .flat_map(|n| super::enumerate_fatgraphs(n).expect("within the guard"))
        .filter(|f| {
            let d = f.decompose().expect("enumerated fatgraphs decompose");
            d.components.len() == 1 && !d.components[0].trivial
        })
        .collect()
}

/// Random nesting of `parts` irreducible pieces, each wrapped in a trivial
/// ribbon with probability one half. Exercises many-block configurations that
/// random gluing rarely reaches.
pub fn random_composite(parts: usize, pieces: &[Fatgraph], seed: u64) -> Fatgraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| {
        let p = pieces.choose(rng).expect("pieces").clone();
        if rng.gen_bool(0.5) {
            wrap(&p)
        } else {
            p
        }
    };
    let mut f = pick(&mut rng);
    for _ in 1..parts {
        let p = pick(&mut rng);
        let k = *insertable(&f).choose(&mut rng).expect("the root corner is positive");
        f = insert(&f, k, &p);
    }
    f
}
