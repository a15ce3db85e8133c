#![allow(dead_code)]

pub mod strategies;

use quiverlink::{Quiver, TwoCyclePointer, VertexPairPointer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_0fc0_ffee;

pub fn quiver(name: &str, vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
    Quiver::from_parts(
        name,
        vs,
        arrows
            .iter()
            .map(|(l, s, t)| (l.to_string(), s.to_string(), t.to_string())),
    )
    .unwrap()
}

/// `{0, 1}` with a loop at 0 and the two-cycle `c, d`.
pub fn intro() -> Quiver {
    quiver(
        "intro",
        &["0", "1"],
        &[("a", "0", "0"), ("c", "0", "1"), ("d", "1", "0")],
    )
}

/// `{0, 1}` with a single loop at 0.
pub fn loop_at_zero() -> Quiver {
    quiver("loop", &["0", "1"], &[("a", "0", "0")])
}

/// `loop_at_zero` with the two-cycle `c: 0 -> 1`, `d: 1 -> 0` added.
pub fn loop_at_zero_t() -> Quiver {
    quiver(
        "loop_T",
        &["0", "1"],
        &[("a", "0", "0"), ("c", "0", "1"), ("d", "1", "0")],
    )
}

pub fn bare_pair() -> Quiver {
    quiver("bare", &["0", "1"], &[])
}

pub fn two_cycle() -> Quiver {
    quiver("cycle", &["0", "1"], &[("c", "0", "1"), ("d", "1", "0")])
}

/// A quiver on at most 4 vertices with at most 6 arrows, containing the
/// two-cycle `c, d`; returns it with that cycle.
pub fn random_with_two_cycle(rng: &mut ChaCha8Rng, index: usize) -> (Quiver, TwoCyclePointer) {
    let n = rng.gen_range(2..=4usize);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let v0 = rng.gen_range(0..n);
    let v1 = (v0 + rng.gen_range(1..n)) % n;
    let mut q = Quiver::from_parts(&format!("rand{index}"), &names, Vec::new()).unwrap();
    q.add_arrow_by_index("c", v0, v1).unwrap();
    q.add_arrow_by_index("d", v1, v0).unwrap();
    for i in 0..rng.gen_range(0..=4usize) {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        q.add_arrow_by_index(&format!("a{i}"), s, t).unwrap();
    }
    let tc = TwoCyclePointer::from_labels(&q, "c", "d").unwrap();
    (q, tc)
}

/// A random quiver on at most 4 vertices and at most 6 arrows with a random
/// vertex pair.
pub fn random_with_pair(rng: &mut ChaCha8Rng, index: usize) -> (Quiver, VertexPairPointer) {
    let n = rng.gen_range(2..=4usize);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut q = Quiver::from_parts(&format!("pair{index}"), &names, Vec::new()).unwrap();
    for i in 0..rng.gen_range(0..=6usize) {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        q.add_arrow_by_index(&format!("a{i}"), s, t).unwrap();
    }
    let v0 = rng.gen_range(0..n);
    let v1 = (v0 + rng.gen_range(1..n)) % n;
    (q, VertexPairPointer { v0, v1 })
}

/// A random symmetric quiver on at most 3 vertices and at most 6 arrows.
pub fn random_symmetric(rng: &mut ChaCha8Rng, index: usize) -> Quiver {
    let n = rng.gen_range(1..=3usize);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut q = Quiver::from_parts(&format!("sym{index}"), &names, Vec::new()).unwrap();
    let mut budget = 6usize;
    let mut label = 0;
    for i in 0..n {
        for j in i..n {
            let cost = if i == j { 1 } else { 2 };
            let m = rng.gen_range(0..=2usize).min(budget / cost);
            for _ in 0..m {
                q.add_arrow_by_index(&format!("a{label}"), i, j).unwrap();
                label += 1;
                if i != j {
                    q.add_arrow_by_index(&format!("a{label}"), j, i).unwrap();
                    label += 1;
                }
            }
            budget -= m * cost;
        }
    }
    q
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

pub fn two_cycle_corpus(count: usize) -> Vec<(Quiver, TwoCyclePointer)> {
    let mut r = rng(1);
    let mut out = vec![
        (
            intro(),
            TwoCyclePointer::from_labels(&intro(), "c", "d").unwrap(),
        ),
        (
            loop_at_zero_t(),
            TwoCyclePointer::from_labels(&loop_at_zero_t(), "c", "d").unwrap(),
        ),
        (
            two_cycle(),
            TwoCyclePointer::from_labels(&two_cycle(), "c", "d").unwrap(),
        ),
    ];
    out.extend((0..count).map(|i| random_with_two_cycle(&mut r, i)));
    out
}

pub fn pair_corpus(count: usize) -> Vec<(Quiver, VertexPairPointer)> {
    let mut r = rng(2);
    let p = VertexPairPointer { v0: 0, v1: 1 };
    let mut out = vec![(loop_at_zero(), p), (bare_pair(), p), (intro(), p)];
    out.extend((0..count).map(|i| random_with_pair(&mut r, i)));
    out
}

pub fn symmetric_corpus(count: usize) -> Vec<Quiver> {
    let mut r = rng(3);
    let mut out = vec![
        quiver("point", &["0"], &[]),
        quiver("jordan", &["0"], &[("a", "0", "0")]),
        two_cycle(),
        bare_pair(),
    ];
    out.extend((0..count).map(|i| random_symmetric(&mut r, i)));
    out
}
