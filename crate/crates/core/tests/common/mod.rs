//! Helpers shared by the integration tests: seeded couplings, brute-force
//! graph predicates and a few fixed graphs.
#![allow(dead_code)]

use freefermion::graph::WeightedGraph;
use freefermion::Rational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Magnitudes in [0.3, 1.5) with random signs.
pub fn couplings(rng: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    (0..count)
        .map(|_| {
            let v: f64 = rng.gen_range(0.3..1.5);
            if rng.gen_bool(0.5) { -v } else { v }
        })
        .collect()
}

/// Small random fractions `p/q`, both signs.
pub fn rational_couplings(rng: &mut ChaCha8Rng, count: usize) -> Vec<Rational> {
    (0..count)
        .map(|_| {
            let p: i64 = rng.gen_range(1..20);
            let q: i64 = rng.gen_range(1..12);
            let s = if rng.gen_bool(0.5) { -1 } else { 1 };
            Rational::new((s * p).into(), q.into())
        })
        .collect()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> WeightedGraph<f64> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    WeightedGraph::unweighted(n, &edges).unwrap()
}

/// Every labelled graph on `n` vertices, one per edge mask.
pub fn all_graphs(n: usize) -> impl Iterator<Item = WeightedGraph<f64>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        WeightedGraph::unweighted(n, &edges).unwrap()
    })
}

fn induced_edges(g: &WeightedGraph<f64>, vs: &[usize]) -> usize {
    let mut e = 0;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if g.has_edge(vs[i], vs[j]) {
                e += 1;
            }
        }
    }
    e
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Is `vs`, in this order, an induced cycle?
pub fn is_induced_cycle(g: &WeightedGraph<f64>, vs: &[usize]) -> bool {
    let l = vs.len();
    l >= 3 && induced_edges(g, vs) == l && (0..l).all(|i| g.has_edge(vs[i], vs[(i + 1) % l]))
}

pub fn is_claw(g: &WeightedGraph<f64>, center: usize, leaves: [usize; 3]) -> bool {
    leaves.iter().all(|&l| g.has_edge(center, l)) && induced_edges(g, &leaves) == 0
}

/// Any 4-set inducing a star.
pub fn naive_has_claw(g: &WeightedGraph<f64>) -> bool {
    let n = g.order();
    (0u32..1 << n).filter(|m| m.count_ones() == 4).any(|m| {
        let vs = members(m, n);
        induced_edges(g, &vs) == 3 && vs.iter().any(|&c| vs.iter().filter(|&&v| v != c).all(|&v| g.has_edge(c, v)))
    })
}

/// Any even vertex set of size at least 4 inducing a connected 2-regular graph.
pub fn naive_has_even_hole(g: &WeightedGraph<f64>) -> bool {
    let n = g.order();
    (0u32..1 << n).filter(|m| m.count_ones() >= 4 && m.count_ones() % 2 == 0).any(|m| {
        let vs = members(m, n);
        let two_regular = vs.iter().all(|&v| vs.iter().filter(|&&w| g.has_edge(v, w)).count() == 2);
        two_regular && connected(g, &vs)
    })
}

fn connected(g: &WeightedGraph<f64>, vs: &[usize]) -> bool {
    let mut seen = vec![vs[0]];
    let mut stack = vec![vs[0]];
    while let Some(v) = stack.pop() {
        for &w in vs {
            if g.has_edge(v, w) && !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen.len() == vs.len()
}

/// The nine forbidden induced subgraphs of line graphs, labelled as frozen
/// from an independent catalog: (order, edges, has twins, even-hole and claw free).
pub fn forbidden_line_graph_subgraphs() -> Vec<(usize, Vec<(usize, usize)>, bool, bool)> {
    vec![
        (4, vec![(0, 3), (1, 3), (2, 3)], true, false),
        (5, vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 4)], true, false),
        (5, vec![(0, 1), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], true, true),
        (6, vec![(0, 1), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (4, 5)], false, true),
        (6, vec![(0, 1), (0, 4), (0, 5), (1, 2), (1, 5), (2, 3), (2, 5), (3, 4)], false, true),
        (6, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 5), (2, 3), (2, 5), (4, 5)], false, true),
        (6, vec![(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)], false, true),
        (6, vec![(0, 1), (0, 4), (0, 5), (1, 2), (1, 5), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)], false, true),
        (6, vec![(0, 1), (0, 2), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (2, 5), (3, 4), (3, 5), (4, 5)], false, true),
    ]
}
