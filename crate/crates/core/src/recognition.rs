//! Structural tests on frustration graphs: claws, even holes, simplicial
//! cliques and twins.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};
use crate::scalar::Scalar;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A vertex with three pairwise non-adjacent neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claw {
    pub center: usize,
    pub leaves: [usize; 3],
}

pub fn find_claw<T: Scalar>(g: &WeightedGraph<T>) -> Option<Claw> {
    for v in 0..g.order() {
        let nb: Vec<usize> = g.neighbors(v).collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let mut rest = g.adjacency(v).clone();
                rest.difference_with(&g.closed_neighborhood(a));
                rest.difference_with(&g.closed_neighborhood(b));
                if let Some(c) = rest.minimum() {
                    return Some(Claw { center: v, leaves: [a, b, c] });
                }
            }
        }
    }
    None
}

struct HoleSearch<'a, T> {
    g: &'a WeightedGraph<T>,
    budget: u64,
    steps: u64,
}

impl<T: Scalar> HoleSearch<'_, T> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::Undecided { budget: self.budget });
        }
        Ok(())
    }

    /// Whether some vertex of `targets` is reachable from `from` inside `allowed`.
    fn reaches(&self, from: usize, allowed: &VertexSet, targets: &VertexSet) -> bool {
        let mut seen = VertexSet::with_capacity(self.g.order());
        seen.insert(from);
        let mut frontier = vec![from];
        while let Some(v) = frontier.pop() {
            for u in self.g.neighbors(v) {
                if targets.contains(u) {
                    return true;
                }
                if allowed.contains(u) && !seen.contains(u) {
                    seen.insert(u);
                    frontier.push(u);
                }
            }
        }
        false
    }

    /// Extends the induced path `path`, which starts at its smallest vertex.
    /// `blocked` holds the closed neighbourhoods of every path vertex except
    /// the first and the last, plus everything below the start.
    fn extend(&mut self, path: &mut Vec<usize>, blocked: &VertexSet) -> Result<Option<Vec<usize>>> {
        self.tick()?;
        let s = path[0];
        let last = *path.last().unwrap();
        let start_nb = self.g.adjacency(s);
        let mut cand = self.g.adjacency(last).clone();
        cand.difference_with(blocked);
        cand.set(s, false);
        for w in cand.ones().collect::<Vec<_>>() {
            if path.len() >= 2 && start_nb.contains(w) {
                // closing the cycle through w
                if path.len() >= 3 && path.len() % 2 == 1 {
                    let mut hole = path.clone();
                    hole.push(w);
                    return Ok(Some(hole));
                }
                continue;
            }
            let mut next_blocked = blocked.clone();
            if path.len() >= 2 {
                next_blocked.union_with(&self.g.closed_neighborhood(last));
            } else {
                next_blocked.insert(last);
            }
            // w must still be able to get back next to the start
            let mut allowed = self.g.all();
            allowed.difference_with(&next_blocked);
            allowed.difference_with(start_nb);
            allowed.set(s, false);
            let mut targets = start_nb.clone();
            targets.difference_with(&next_blocked);
            targets.set(w, false);
            if path.len() >= 2 && !self.reaches(w, &allowed, &targets) {
                continue;
            }
            path.push(w);
            if let Some(h) = self.extend(path, &next_blocked)? {
                return Ok(Some(h));
            }
            path.pop();
        }
        Ok(None)
    }
}

/// Searches for an induced cycle of even length at least four. Returns the
/// cycle in order, or `Undecided` once `budget` extension steps are spent.
pub fn find_even_hole<T: Scalar>(g: &WeightedGraph<T>, budget: u64) -> Result<Option<Vec<usize>>> {
    let mut search = HoleSearch { g, budget, steps: 0 };
    for s in 0..g.order() {
        let mut below = g.empty_set();
        below.insert_range(..s);
        let mut path = vec![s];
        if let Some(h) = search.extend(&mut path, &below)? {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Calls `f` on every nonempty clique. Stops with `Undecided` past `budget` cliques.
pub fn for_each_clique<T: Scalar>(
    g: &WeightedGraph<T>,
    budget: u64,
    mut f: impl FnMut(&[usize]),
) -> Result<()> {
    fn rec<T: Scalar>(
        g: &WeightedGraph<T>,
        current: &mut Vec<usize>,
        cand: &VertexSet,
        count: &mut u64,
        budget: u64,
        f: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        for v in cand.ones() {
            *count += 1;
            if *count > budget {
                return Err(Error::Undecided { budget });
            }
            current.push(v);
            f(current);
            let mut next = cand.clone();
            next.intersect_with(g.adjacency(v));
            next.remove_range(..v + 1);
            rec(g, current, &next, count, budget, f)?;
            current.pop();
        }
        Ok(())
    }
    let mut count = 0;
    rec(g, &mut Vec::new(), &g.all(), &mut count, budget, &mut f)
}

/// Maximal cliques, each sorted, in lexicographic order.
pub fn maximal_cliques<T: Scalar>(g: &WeightedGraph<T>) -> Vec<Vec<usize>> {
    fn bk<T: Scalar>(g: &WeightedGraph<T>, r: &mut Vec<usize>, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<Vec<usize>>) {
        if p.is_clear() && x.is_clear() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| p.intersection_count(g.adjacency(u)))
            .unwrap();
        let mut todo = p.clone();
        todo.difference_with(g.adjacency(pivot));
        for v in todo.ones() {
            let mut np = p.clone();
            np.intersect_with(g.adjacency(v));
            let mut nx = x.clone();
            nx.intersect_with(g.adjacency(v));
            r.push(v);
            bk(g, r, np, nx, out);
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    bk(g, &mut Vec::new(), g.all(), g.empty_set(), &mut out);
    out.sort();
    out
}

/// A clique `K` is simplicial when every `v` in `K` has its neighbours outside `K` pairwise adjacent.
pub fn is_simplicial_clique<T: Scalar>(g: &WeightedGraph<T>, k: &VertexSet) -> bool {
    g.is_clique(k)
        && k.ones().all(|v| {
            let mut out = g.adjacency(v).clone();
            out.difference_with(k);
            g.is_clique(&out)
        })
}

/// Every nonempty simplicial clique, sorted by size then lexicographically.
pub fn find_simplicial_cliques<T: Scalar>(g: &WeightedGraph<T>, budget: u64) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_clique(g, budget, |c| {
        let set = crate::graph::vertex_set(g.order(), c.iter().copied());
        if is_simplicial_clique(g, &set) {
            out.push(c.to_vec());
        }
    })?;
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Non-adjacent pairs with equal open neighbourhoods.
pub fn twins<T: Scalar>(g: &WeightedGraph<T>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..g.order() {
        for b in a + 1..g.order() {
            if g.adjacency(a) == g.adjacency(b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Adjacent pairs with equal closed neighbourhoods.
pub fn closed_twins<T: Scalar>(g: &WeightedGraph<T>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..g.order() {
        for b in a + 1..g.order() {
            if g.has_edge(a, b) && g.closed_neighborhood(a) == g.closed_neighborhood(b) {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub order: usize,
    pub edges: usize,
    pub claw: Option<Claw>,
    pub even_hole: Option<Vec<usize>>,
    /// Even-hole free and claw free.
    pub free: bool,
    pub simplicial_cliques: Vec<Vec<usize>>,
    pub twins: Vec<(usize, usize)>,
    pub closed_twins: Vec<(usize, usize)>,
}

impl StructureReport {
    /// Short reason why the graph is not free, if it is not.
    pub fn obstruction(&self) -> Option<String> {
        if let Some(c) = &self.claw {
            return Some(format!("claw centered at {} with leaves {:?}", c.center, c.leaves));
        }
        self.even_hole.as_ref().map(|h| format!("even hole {h:?}"))
    }
}

pub fn classify<T: Scalar>(g: &WeightedGraph<T>, budget: u64) -> Result<StructureReport> {
    let claw = find_claw(g);
    let even_hole = find_even_hole(g, budget)?;
    let free = claw.is_none() && even_hole.is_none();
    let simplicial_cliques = find_simplicial_cliques(g, budget)?;
    Ok(StructureReport {
        order: g.order(),
        edges: g.edge_count(),
        claw,
        even_hole,
        free,
        simplicial_cliques,
        twins: twins(g),
        closed_twins: closed_twins(g),
    })
}
