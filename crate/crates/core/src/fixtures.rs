//! Small named fatgraphs used across tests, benches and documentation.

use crate::model::{Fatgraph, Sign};

fn signs(s: &str) -> Vec<Sign> {
    s.chars().map(|c| if c == '+' { Sign::Plus } else { Sign::Minus }).collect()
}

fn build(n: usize, cycles: &[&[usize]], omega: &str) -> Fatgraph {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Fatgraph::from_cycles(n, &cycles, signs(omega)).expect("fixture is valid")
}

/// One edge: σ = (1 3)(2).
pub fn t1() -> Fatgraph {
    build(1, &[&[1, 3], &[2]], "+++")
}

/// The twisted loop: σ = (1 2 3), ω = (+,−,+).
pub fn p1() -> Fatgraph {
    build(1, &[&[1, 2, 3]], "+-+")
}

/// A path of two edges: σ = (1 5)(2 4)(3).
pub fn t2() -> Fatgraph {
    build(2, &[&[1, 5], &[2, 4], &[3]], "+++++")
}

/// glue(T2, 1, 3): σ = (1 3 5)(2 4), ω = (+,−,−,+,+).
pub fn x2() -> Fatgraph {
    build(2, &[&[1, 3, 5], &[2, 4]], "+--++")
}

/// slice(X2, 2, 4): σ = (1 3 5)(2)(4), ω = (+,−,+,+,+).
pub fn y2() -> Fatgraph {
    build(2, &[&[1, 3, 5], &[2], &[4]], "+-+++")
}

/// Two crossing b-ribbons on one vertex: σ = (1 4 3 2 5).
pub fn o2() -> Fatgraph {
    build(2, &[&[1, 4, 3, 2, 5]], "+++++")
}

/// Two-boundary fixture with an explicit boundary permutation.
pub fn f2b() -> Fatgraph {
    let sigma = crate::perm::from_cycles(7, &[vec![1, 5, 3, 7], vec![2, 4, 6]]).expect("permutation");
    let gamma = crate::perm::from_cycles(7, &[vec![1, 2, 3, 4, 7], vec![5, 6]]).expect("permutation");
    Fatgraph::with_boundary(3, sigma, signs("++--+++"), gamma).expect("fixture is valid")
}

pub fn all_unicellular() -> Vec<(&'static str, Fatgraph)> {
    vec![("T1", t1()), ("P1", p1()), ("T2", t2()), ("X2", x2()), ("Y2", y2()), ("O2", o2())]
}
