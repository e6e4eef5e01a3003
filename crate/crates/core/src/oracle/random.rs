use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Fatgraph, Sector, Sign};
use crate::reversal::{self, ReversalKind};

use super::OracleError;

/// A random plane tree with `n` edges from a random Dyck word (cycle lemma).
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Fatgraph {
    let mut word: Vec<i32> = std::iter::repeat_n(1, n).chain(std::iter::repeat_n(-1, n + 1)).collect();
    word.shuffle(rng);
    let mut sum = 0;
    let mut min = (0, 0usize);
    for (k, &x) in word.iter().enumerate() {
        sum += x;
        if sum < min.0 {
            min = (sum, k + 1);
        }
    }
    let len = word.len();
    word.rotate_left(min.1 % len);
    word.pop();
    tree_from_word(&word)
}

/// Plane tree whose contour walk follows `word` (+1 away from the root, -1 back).
pub fn tree_from_word(word: &[i32]) -> Fatgraph {
    let n = word.len() / 2;
    let mut corners: Vec<Vec<Sector>> = vec![vec![1]];
    let mut stack = vec![0usize];
    for (k, &x) in word.iter().enumerate() {
        if x > 0 {
            corners.push(Vec::new());
            stack.push(corners.len() - 1);
        } else {
            stack.pop();
        }
        let v = *stack.last().expect("balanced word");
        corners[v].push(k + 2);
    }
    Fatgraph::from_cycles(n, &corners, vec![Sign::Plus; 2 * n + 1]).expect("contour walk of a plane tree")
}

/// Random plane tree followed by `genus` random gluings.
pub fn random_fatgraph(n: usize, genus: usize, seed: u64) -> Result<Fatgraph, OracleError> {
    if n == 0 || genus > n {
        return Err(OracleError::GenusOutOfReach { n, genus });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = random_tree(n, &mut rng);
    for _ in 0..genus {
        let gluings: Vec<_> =
            reversal::legal_reversals(&f).into_iter().filter(|r| r.kind == ReversalKind::Gluing).collect();
        let r = gluings.choose(&mut rng).ok_or(OracleError::NoGluing)?;
        f = reversal::apply(&f, *r)?;
    }
    Ok(f)
}

/// A random walk of `steps` legal reversals from a random fatgraph; reaches
/// states gluings alone do not.
pub fn random_walk(n: usize, steps: usize, seed: u64) -> Result<Fatgraph, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = random_tree(n, &mut rng);
    for _ in 0..steps {
        let moves = reversal::legal_reversals(&f);
        let r = moves.choose(&mut rng).expect("n >= 1 gives at least one move");
        f = reversal::apply(&f, *r)?;
    }
    Ok(f)
}
