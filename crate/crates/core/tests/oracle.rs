use std::collections::BTreeMap;

use fatgraph::fixtures::{o2, p1, t2, x2};
use fatgraph::oracle::{
    bfs_distance, distance_table, enumerate_fatgraphs, orientability_oracle, random_fatgraph, random_walk,
    tree_from_word, OracleError, DEFAULT_STATE_BOUND,
};
use fatgraph::planner::r_distance;
use fatgraph::reversal::apply;

struct Golden {
    classes: usize,
    layers: Vec<usize>,
}

fn golden() -> BTreeMap<usize, Golden> {
    let text = include_str!("golden/distance_histogram.txt");
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(lines.next(), Some("version 1"));
    lines
        .map(|l| {
            let t: Vec<&str> = l.split_whitespace().collect();
            assert_eq!((t[0], t[2], t[4]), ("n", "classes", "distance"));
            let layers = t[5..].iter().map(|x| x.parse().unwrap()).collect();
            (t[1].parse().unwrap(), Golden { classes: t[3].parse().unwrap(), layers })
        })
        .collect()
}

#[test]
fn search_on_fixtures() {
    for (f, d) in [(t2(), 0), (p1(), 1), (x2(), 1), (o2(), 3)] {
        let rep = bfs_distance(&f, DEFAULT_STATE_BOUND).unwrap();
        assert_eq!(rep.distance, d);
        assert_eq!(rep.path.len(), d);
        let mut g = f.clone();
        for &r in &rep.path {
            g = apply(&g, r).unwrap();
        }
        assert_eq!(g.euler_genus(), 0);
    }
    assert_eq!(bfs_distance(&o2(), 3).unwrap_err(), OracleError::StateBound(3));
}

#[test]
fn orientability_oracle_matches() {
    assert!(orientability_oracle(&o2()).unwrap());
    assert!(!orientability_oracle(&x2()).unwrap());
}

#[test]
fn enumeration_guard() {
    assert_eq!(enumerate_fatgraphs(0).unwrap_err(), OracleError::EnumerationGuard(0));
    assert_eq!(enumerate_fatgraphs(9).unwrap_err(), OracleError::EnumerationGuard(9));
}

#[test]
fn small_histograms_match_golden() {
    let golden = golden();
    for n in 1..=3 {
        let all = enumerate_fatgraphs(n).unwrap();
        assert_eq!(all.len(), golden[&n].classes);
        let mut hist = vec![0; golden[&n].layers.len()];
        for f in &all {
            hist[bfs_distance(f, DEFAULT_STATE_BOUND).unwrap().distance] += 1;
        }
        assert_eq!(hist, golden[&n].layers, "n = {n}");
        let table = distance_table(n, DEFAULT_STATE_BOUND).unwrap();
        assert_eq!(table.distance.len(), golden[&n].classes);
        assert_eq!(table.layers, golden[&n].layers);
    }
}

#[test]
fn four_ribbon_table_matches_golden() {
    let g = &golden()[&4];
    let table = distance_table(4, DEFAULT_STATE_BOUND).unwrap();
    assert_eq!((table.distance.len(), &table.layers), (g.classes, &g.layers));
}

#[test]
#[ignore = "enumerates 1680 classes; about 10 s"]
fn four_ribbon_enumeration_matches_golden() {
    let all = enumerate_fatgraphs(4).unwrap();
    let table = distance_table(4, DEFAULT_STATE_BOUND).unwrap();
    assert_eq!(all.len(), golden()[&4].classes);
    assert!(all.iter().all(|f| table.get(f).is_some()));
}

#[test]
#[ignore = "explores 30240 classes; about 10 s"]
fn five_ribbon_table_matches_golden() {
    let g = &golden()[&5];
    let table = distance_table(5, 10 * DEFAULT_STATE_BOUND).unwrap();
    assert_eq!((table.distance.len(), &table.layers), (g.classes, &g.layers));
}

#[test]
fn generators() {
    assert!(tree_from_word(&[1, 1, -1, -1]).is_plane_tree());
    for seed in 0..20 {
        let f = random_fatgraph(6, 3, seed).unwrap();
        assert_eq!((f.n(), f.euler_genus()), (6, 3));
        assert_eq!(random_fatgraph(6, 3, seed).unwrap().canonical_form(), f.canonical_form());
        let w = random_walk(6, 5, seed).unwrap();
        assert!(w.euler_genus() <= 5);
    }
    assert!(matches!(random_fatgraph(2, 5, 0), Err(OracleError::GenusOutOfReach { .. })));
}

#[test]
fn table_agrees_with_single_source_search() {
    let table = distance_table(4, DEFAULT_STATE_BOUND).unwrap();
    for seed in 0..30 {
        let f = random_fatgraph(4, seed as usize % 5, seed).unwrap();
        let d = table.get(&f).unwrap();
        assert_eq!(bfs_distance(&f, DEFAULT_STATE_BOUND).unwrap().distance, d);
        assert_eq!(r_distance(&f).unwrap(), d);
    }
}
