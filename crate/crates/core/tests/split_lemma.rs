//! Splitting a connector cut vertex of the complement: the clutter side
//! reduces by simplicial subedge deletions, and chordality is preserved.

use clutterlab::clutter::{complement_connected_clutter, find_elimination_order, SearchOutcome, Strategy};
use clutterlab::families::{assemble_co_chordal_cactus, random_cactus_decomposition, SkeletonShape};
use clutterlab::VertexSet;

#[test]
fn connector_splitting_preserves_chordality() {
    let mut cases = 0;
    for shape in SkeletonShape::ALL {
        for seed in 0..6u64 {
            let d = random_cactus_decomposition(shape, 11, seed).unwrap();
            let (g, filled) = assemble_co_chordal_cactus(&d, seed).unwrap();
            let gbar = g.complement();
            for x in filled.connectors().iter() {
                if !gbar.is_cut_vertex(x).unwrap() {
                    continue;
                }
                let sides = gbar.components_within(gbar.vertices().without(x));
                let parts = filled.splitting_parts(&gbar, x);
                let split = gbar.split_vertex(x, &parts).unwrap();
                assert_eq!(split.n(), g.n() - 1 + parts.len());
                for r in 2..=3 {
                    let h0 = complement_connected_clutter(&g, r).unwrap();
                    // Edges through x that reach two sides of the cut.
                    let mut subs: Vec<VertexSet> = h0
                        .edges()
                        .iter()
                        .filter(|e| e.contains(x) && sides.iter().filter(|s| s.intersects(e.without(x))).count() >= 2)
                        .map(|e| e.without(x))
                        .collect();
                    subs.sort_by(|a, b| a.lex_cmp(*b));
                    subs.dedup();
                    let mut cur = h0.clone();
                    for &s in &subs {
                        assert!(cur.is_simplicial_maximal(s).unwrap(), "{} seed={seed} x={x} r={r} sub={s}", shape.name());
                        cur = cur.delete_subedge(s).unwrap();
                    }
                    let reduced = find_elimination_order(&cur, Strategy::Backtracking, 10_000_000).0;
                    let hs = complement_connected_clutter(&split.complement(), r).unwrap();
                    let other = find_elimination_order(&hs, Strategy::Backtracking, 10_000_000).0;
                    assert!(matches!(reduced, SearchOutcome::Found(_)), "{} seed={seed} x={x} r={r}", shape.name());
                    assert!(matches!(other, SearchOutcome::Found(_)), "{} seed={seed} x={x} r={r}", shape.name());
                    cases += 1;
                }
            }
        }
    }
    assert!(cases > 50, "only {cases} connector cut vertices exercised");
}
