use proptest::prelude::*;
use quiverlink::document::QuiverDocument;
use quiverlink::{DimVector, Quiver, TwoCyclePointer, VertexPairPointer};

/// A quiver on 2..=4 vertices with a two-cycle `c, d` and up to 4 further arrows.
pub fn with_two_cycle() -> impl Strategy<Value = (Quiver, TwoCyclePointer)> {
    (2usize..=4)
        .prop_flat_map(|n| {
            (
                Just(n),
                0..n,
                1..n,
                prop::collection::vec((0..n, 0..n), 0..=4),
            )
        })
        .prop_map(|(n, v0, off, extra)| {
            let v1 = (v0 + off) % n;
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let mut q = Quiver::from_parts("p", &names, Vec::new()).unwrap();
            q.add_arrow_by_index("c", v0, v1).unwrap();
            q.add_arrow_by_index("d", v1, v0).unwrap();
            for (i, (s, t)) in extra.into_iter().enumerate() {
                q.add_arrow_by_index(&format!("a{i}"), s, t).unwrap();
            }
            let tc = TwoCyclePointer::from_labels(&q, "c", "d").unwrap();
            (q, tc)
        })
}

pub fn with_pair() -> impl Strategy<Value = (Quiver, VertexPairPointer)> {
    (2usize..=4)
        .prop_flat_map(|n| {
            (
                Just(n),
                0..n,
                1..n,
                prop::collection::vec((0..n, 0..n), 0..=6),
            )
        })
        .prop_map(|(n, v0, off, arrows)| {
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let mut q = Quiver::from_parts("p", &names, Vec::new()).unwrap();
            for (i, (s, t)) in arrows.into_iter().enumerate() {
                q.add_arrow_by_index(&format!("a{i}"), s, t).unwrap();
            }
            (
                q,
                VertexPairPointer {
                    v0,
                    v1: (v0 + off) % n,
                },
            )
        })
}

/// Symmetric quivers: each unordered pair gets 0..=2 arrows in both directions.
pub fn symmetric() -> impl Strategy<Value = Quiver> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(0usize..=2, n * (n + 1) / 2)))
        .prop_map(|(n, mult)| {
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let mut q = Quiver::from_parts("s", &names, Vec::new()).unwrap();
            let mut k = 0;
            let mut label = 0;
            for i in 0..n {
                for j in i..n {
                    for _ in 0..mult[k] {
                        q.add_arrow_by_index(&format!("a{label}"), i, j).unwrap();
                        label += 1;
                        if i != j {
                            q.add_arrow_by_index(&format!("a{label}"), j, i).unwrap();
                            label += 1;
                        }
                    }
                    k += 1;
                }
            }
            q
        })
}

pub fn dims(n: usize, max: u32) -> impl Strategy<Value = DimVector> {
    prop::collection::vec(0..=max, n).prop_map(DimVector)
}

/// Quiver with a two-cycle plus two dimension vectors on its unlinking.
pub fn with_unlinked_dims() -> impl Strategy<Value = (Quiver, TwoCyclePointer, DimVector, DimVector)>
{
    with_two_cycle().prop_flat_map(|(q, tc)| {
        let n = q.vertex_count() + 1;
        (Just(q), Just(tc), dims(n, 4), dims(n, 4))
    })
}

pub fn document() -> impl Strategy<Value = QuiverDocument> {
    let ident = "[A-Za-z0-9_^.*]{1,6}";
    (ident, prop::collection::btree_set(ident, 2..=5))
        .prop_flat_map(|(name, vs)| {
            let vs: Vec<String> = vs.into_iter().collect();
            let n = vs.len();
            (
                Just(name),
                Just(vs),
                prop::collection::vec((0..n, 0..n), 0..=8),
                prop::collection::vec((0..n, 1..n), 0..=2),
            )
        })
        .prop_map(|(name, vs, arrows, pairs)| {
            let mut q = Quiver::from_parts(&name, &vs, Vec::new()).unwrap();
            for (i, (a, b)) in arrows.into_iter().enumerate() {
                q.add_arrow_by_index(&format!("x{i}"), a, b).unwrap();
            }
            let n = vs.len();
            let mut doc = QuiverDocument::new(q);
            for (i, (v0, off)) in pairs.into_iter().enumerate() {
                let v1 = (v0 + off) % n;
                let c = doc
                    .quiver
                    .add_arrow_by_index(&format!("c{i}"), v0, v1)
                    .unwrap();
                let d = doc
                    .quiver
                    .add_arrow_by_index(&format!("d{i}"), v1, v0)
                    .unwrap();
                doc.twocycles
                    .push((format!("t{i}"), TwoCyclePointer { c, d, v0, v1 }));
                doc.pairs
                    .push((format!("p{i}"), VertexPairPointer { v0, v1 }));
            }
            doc
        })
}
