use fatgraph::fixtures::{o2, p1, t1, t2, x2, y2};
use fatgraph::oracle::enumerate_fatgraphs;
use fatgraph::reversal::{self, apply, glue, half_flip, legal_reversals, rho, slice, step_image, ReversalError};
use fatgraph::{Fatgraph, ReversalKind};

fn same(a: &Fatgraph, b: &Fatgraph) -> bool {
    a.canonical_form() == b.canonical_form()
}

#[test]
fn named_transitions() {
    assert!(same(&glue(&t2(), 1, 3).unwrap(), &x2()));
    assert!(same(&slice(&x2(), 2, 4).unwrap(), &y2()));
    assert!(same(&slice(&p1(), 1, 2).unwrap(), &t1()));
    assert!(same(&glue(&t1(), 1, 2).unwrap(), &p1()));
}

#[test]
fn classify_fixtures() {
    assert_eq!(reversal::classify(&t2(), 1, 3).unwrap(), ReversalKind::Gluing);
    assert_eq!(reversal::classify(&x2(), 2, 4).unwrap(), ReversalKind::Slicing);
    assert_eq!(reversal::classify(&o2(), 1, 4).unwrap(), ReversalKind::HalfFlipping);
    // Argument order does not matter.
    assert_eq!(reversal::reversal(&x2(), 4, 2).unwrap(), reversal::reversal(&x2(), 2, 4).unwrap());
}

#[test]
fn wrong_kind_and_range_are_rejected() {
    assert!(matches!(slice(&t2(), 1, 3), Err(ReversalError::KindMismatch { .. })));
    assert!(matches!(half_flip(&x2(), 2, 4), Err(ReversalError::KindMismatch { .. })));
    assert!(matches!(glue(&t2(), 2, 2), Err(ReversalError::SameSector(2))));
    // Sector 2n+1 would cut the root wedge.
    assert!(matches!(reversal::reversal(&o2(), 1, 5), Err(ReversalError::OutOfRange { .. })));
    assert!(matches!(reversal::reversal(&o2(), 0, 3), Err(ReversalError::OutOfRange { .. })));
}

#[test]
fn relabeling_maps() {
    assert_eq!((1..=7).map(|k| rho(2, 5, k)).collect::<Vec<_>>(), vec![1, 2, 4, 3, 5, 6, 7]);
    // Steps k -> k+1 inside [i, j) run backwards after the reversal.
    assert_eq!((1..=6).map(|k| step_image(2, 5, k)).collect::<Vec<_>>(), vec![1, 4, 3, 2, 5, 6]);
}

#[test]
fn m_ribbon_slicing_requires_mono() {
    let f = o2();
    assert!(matches!(reversal::m_ribbon_slicing(&f, fatgraph::RibbonId(0)), Err(ReversalError::NotMono(_))));
    let r = reversal::m_ribbon_slicing(&x2(), fatgraph::RibbonId(1)).unwrap();
    assert_eq!(r.kind, ReversalKind::Slicing);
}

#[test]
fn every_reversal_is_a_valid_involution() {
    for n in 1..=3 {
        for f in enumerate_fatgraphs(n).unwrap() {
            let legal = legal_reversals(&f);
            assert_eq!(legal.len(), n * (2 * n - 1), "all sector pairs in [1, 2n] are legal");
            for r in legal {
                let g = apply(&f, r).unwrap();
                assert!(g.is_unicellular());
                assert_eq!(g.euler_genus() as i64, f.euler_genus() as i64 + r.kind.genus_delta());
                let back = reversal::reversal(&g, r.i, r.j).unwrap();
                assert_eq!(
                    back.kind,
                    match r.kind {
                        ReversalKind::Gluing => ReversalKind::Slicing,
                        ReversalKind::Slicing => ReversalKind::Gluing,
                        ReversalKind::HalfFlipping => ReversalKind::HalfFlipping,
                    }
                );
                assert!(same(&apply(&g, back).unwrap(), &f), "{f:?} {r}");
            }
        }
    }
}

#[test]
fn ribbon_map_is_a_bijection() {
    for f in enumerate_fatgraphs(3).unwrap() {
        for r in legal_reversals(&f) {
            let g = apply(&f, r).unwrap();
            let mut m = reversal::ribbon_map(&f, r, &g).expect("ribbons map to ribbons");
            m.sort();
            m.dedup();
            assert_eq!(m.len(), f.n());
        }
    }
}
