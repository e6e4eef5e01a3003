use fatgraph::decomposition::Adjacency;
use fatgraph::fixtures::{o2, p1, t2, x2};
use fatgraph::oracle::enumerate_fatgraphs;
use fatgraph::oracle::synth::{concat, insert, irreducible_pieces, random_composite, wrap};
use fatgraph::{ComponentId, Fatgraph};

fn load(name: &str) -> Fatgraph {
    let path = format!("{}/fixtures/{name}.fatg", env!("CARGO_MANIFEST_DIR"));
    fatgraph::io::parse_fatg(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn trees_have_only_trivial_components() {
    let d = t2().decompose().unwrap();
    assert_eq!(d.components.len(), 2);
    assert!(d.components.iter().all(|c| c.trivial && c.genus == 0));
    assert!(d.blocks.is_empty());
    assert_eq!(d.h(), 0);
}

#[test]
fn single_component_fixtures() {
    for (f, orientable, h) in [(p1(), false, 0), (x2(), false, 0), (o2(), true, 1)] {
        let d = f.decompose().unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].orientable, orientable);
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.h(), h);
        assert!(!d.all_super());
    }
}

#[test]
fn pair_of_blocks() {
    let f = load("pair");
    let d = f.decompose().unwrap();
    assert_eq!(d.components.len(), 4);
    assert_eq!(d.trivial_count(), 2);
    assert_eq!(d.blocks.len(), 2);
    assert_eq!(d.h(), 2);
    assert!(d.s_blocks.is_empty());
    assert_eq!(d.components[1].trace[0].to_string(), "[2,6]");
    assert_eq!(d.components[0].gaps[0].to_string(), "[2,6]");
}

#[test]
fn star_blocks_are_all_super() {
    let f = load("star");
    let d = f.decompose().unwrap();
    assert_eq!(f.euler_genus(), 12);
    assert_eq!(d.blocks.len(), 6);
    assert_eq!(d.orientable_blocks().len(), 6);
    assert_eq!(d.h(), 3);
    assert!(d.all_super());

    let d3 = load("triple").decompose().unwrap();
    assert_eq!(d3.h(), 3);
    assert!(d3.s_blocks.is_empty());
}

#[test]
fn nested_orientable_block_is_hidden() {
    // An orientable block sitting between two others on a block-tree path is not exposed.
    let w = || wrap(&o2());
    let f = concat(&concat(&w(), &wrap(&insert(&o2(), 3, &w()))), &w());
    let d = f.decompose().unwrap();
    assert_eq!(d.orientable_blocks().len(), 4);
    assert_eq!(d.h(), 3);
}

#[test]
fn adjacency_through_shared_gap() {
    // A non-orientable piece nested directly in a gap of O2.
    let f = insert(&o2(), 2, &p1());
    let d = f.decompose().unwrap();
    let nontrivial: Vec<ComponentId> = d.components.iter().filter(|c| !c.trivial).map(|c| c.id).collect();
    assert_eq!(nontrivial.len(), 2);
    assert_ne!(d.adjacency(&f, nontrivial[0], nontrivial[1]), Adjacency::NotAdjacent);
}

#[test]
fn genus_is_additive_over_components() {
    for n in 1..=3 {
        for f in enumerate_fatgraphs(n).unwrap() {
            let d = f.decompose().unwrap();
            assert_eq!(d.components.iter().map(|c| c.genus).sum::<usize>(), f.euler_genus());
            let ribbons: usize = d.components.iter().map(|c| c.ribbons.len()).sum();
            assert_eq!(ribbons, n);
            // h = 0 exactly when every block is non-orientable; one orientable block is always exposed.
            assert_eq!(d.h() == 0, d.is_block_non_orientable());
            if d.orientable_blocks().len() == 1 {
                assert_eq!(d.h(), 1);
            }
            assert!(d.s_blocks.iter().all(|b| d.e_blocks.contains(b)));
        }
    }
}

#[test]
fn composites_decompose_consistently() {
    let pieces = irreducible_pieces();
    assert_eq!(pieces.len(), 37);
    for seed in 0..200 {
        let f = random_composite(2 + seed as usize % 4, &pieces, seed);
        let d = f.decompose().unwrap();
        assert_eq!(d.components.iter().map(|c| c.genus).sum::<usize>(), f.euler_genus());
        for c in &d.components {
            assert_eq!(f.induced_fatgraph(&c.ribbons).unwrap().euler_genus(), c.genus);
        }
    }
}
