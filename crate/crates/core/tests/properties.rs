//! Pipeline invariants over random instances.

use proptest::prelude::*;

use onevis::embedding::{embedding_stats, validate_embedding};
use onevis::generators::{gen_random_1planar, gen_random_plane, gen_xq};
use onevis::io::{layout_from_json, layout_to_json};
use onevis::layout::{EdgeSegment, VertexBar, VisibilityLayout};
use onevis::pipeline::{layout_blocks, one_visibility};
use onevis::verify::{naive_intersections, sweep_intersections, verify_layout};
use onevis::EdgeKind;

fn bars_and_edges() -> impl Strategy<Value = VisibilityLayout> {
    let bar = (0i64..12, 0i64..30, 0i64..8).prop_map(|(y, x, w)| (y, x, x + w));
    let edge = (0i64..30, 0i64..12, 0i64..6).prop_map(|(x, y, h)| (x, y, y + h));
    (prop::collection::vec(bar, 0..40), prop::collection::vec(edge, 0..40)).prop_map(|(bs, es)| VisibilityLayout {
        vertices: bs.into_iter().enumerate().map(|(id, (y, x_lo, x_hi))| VertexBar { id, y, x_lo, x_hi }).collect(),
        edges: es
            .into_iter()
            .enumerate()
            .map(|(id, (x, y_lo, y_hi))| EdgeSegment { id, u: 0, v: 0, x, y_lo, y_hi, hidden: false })
            .collect(),
        crossings: Vec::new(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_instances_verify_within_bound(n in 4usize..120, seed in any::<u64>()) {
        let emb = gen_random_1planar(n, seed).unwrap();
        prop_assert!(validate_embedding(&emb).is_valid());
        let (l, r) = one_visibility(&emb).unwrap();
        let v = verify_layout(&l, &emb.graph);
        prop_assert!(v.pass, "{:?}", v.violations);
        prop_assert_eq!(l.crossings.len(), emb.crossings.len());
        prop_assert_eq!(l.visible_edge_count(), emb.graph.count_kind(EdgeKind::Original));
        if n >= 5 {
            prop_assert_eq!(r.within_bound, Some(true));
        }
    }

    #[test]
    fn augmentation_meets_face_bounds(n in 4usize..80, seed in any::<u64>()) {
        let emb = gen_random_1planar(n, seed).unwrap();
        let aug = onevis::augmentation::planar_maximal_augment(&emb).unwrap();
        let s = embedding_stats(&aug).unwrap();
        prop_assert!(s.planar_maximal_bounds, "{:?}", s);
        prop_assert!(aug.graph.count_kind(EdgeKind::Original) == emb.graph.m());
    }

    #[test]
    fn plane_inputs_draw_without_crossings(n in 4usize..150, seed in any::<u64>()) {
        let emb = gen_random_plane(n, seed).unwrap();
        prop_assert_eq!(emb.graph.m(), 3 * n - 6);
        let (l, r) = one_visibility(&emb).unwrap();
        prop_assert!(l.crossings.is_empty());
        prop_assert!(r.width / 4 <= 2 * n as i64 - 5);
        prop_assert!(verify_layout(&l, &emb.graph).pass);
    }

    #[test]
    fn composed_blocks_verify(n in 4usize..60, seed in any::<u64>()) {
        let emb = gen_random_1planar(n, seed).unwrap();
        let (l, _) = layout_blocks(&emb).unwrap();
        prop_assert!(verify_layout(&l, &emb.graph).pass);
    }

    #[test]
    fn layouts_are_deterministic(n in 4usize..80, seed in any::<u64>()) {
        let a = layout_to_json(&one_visibility(&gen_random_1planar(n, seed).unwrap()).unwrap().0).unwrap();
        let b = layout_to_json(&one_visibility(&gen_random_1planar(n, seed).unwrap()).unwrap().0).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(layout_to_json(&layout_from_json(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn sweep_equals_naive(l in bars_and_edges()) {
        prop_assert_eq!(sweep_intersections(&l), naive_intersections(&l));
    }
}

#[test]
fn xq_widths_grow_linearly() {
    for rim in (6..=40).step_by(2) {
        let (l, r) = one_visibility(&gen_xq(rim).unwrap()).unwrap();
        let n = (rim + 2) as i64;
        assert!(r.width <= 8 * n - 20 && r.height <= n - 1, "rim {rim}: {}x{}", r.width, r.height);
        assert_eq!(l.crossings.len(), rim);
    }
}
