//! Minimum-weight left-saturating bipartite matching.
//!
//! Successive shortest augmenting paths with Dijkstra on reduced costs keeps
//! a dual `(u, v)` with `u_l + v_r <= w(l, r)`, `v_r <= 0`, and `v_r = 0` on
//! every right vertex that is still free. Any left-saturating matching that
//! uses only tight edges and covers every right vertex with `v_r < 0` is then
//! optimal, which is what the canonicalisation pass relies on.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use super::bipartite::{BipartiteGraph, Matching};
use super::GraphError;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Dist(f64, usize);

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Minimum-weight matching saturating every left vertex.
///
/// Among optimal matchings the result is canonical: walking left vertices in
/// increasing order, each one gets the partner with the smallest
/// `(edge weight, right id)` that still admits an optimal completion.
pub fn min_weight_perfect_matching(b: &BipartiteGraph) -> Result<Matching, GraphError> {
    let (nl, nr) = (b.left_count(), b.right_count());
    if nl > nr {
        return Err(GraphError::LeftLargerThanRight {
            left: nl,
            right: nr,
        });
    }
    let adj = b.left_adjacency();
    let max_w = b.edges().map(|(_, w)| w).fold(1.0f64, f64::max);
    let tol = 1e-9 * max_w;

    let mut u = vec![0.0f64; nl];
    let mut v = vec![0.0f64; nr];
    let mut mate_l: Vec<Option<usize>> = vec![None; nl];
    let mut mate_r: Vec<Option<usize>> = vec![None; nr];

    let mut dist = vec![f64::INFINITY; nr];
    let mut done = vec![false; nr];
    let mut via = vec![usize::MAX; nr];
    let mut touched: Vec<usize> = Vec::new();
    let mut finalized: Vec<usize> = Vec::new();

    for s in 0..nl {
        for &r in &touched {
            dist[r] = f64::INFINITY;
            done[r] = false;
        }
        touched.clear();
        finalized.clear();
        let mut heap = BinaryHeap::new();

        let relax = |i: usize,
                     base: f64,
                     u: &[f64],
                     v: &[f64],
                     dist: &mut [f64],
                     via: &mut [usize],
                     done: &[bool],
                     touched: &mut Vec<usize>,
                     heap: &mut BinaryHeap<Reverse<Dist>>| {
            for &(r, w) in &adj[i] {
                if done[r] {
                    continue;
                }
                let reduced = (w - u[i] - v[r]).max(0.0);
                let nd = base + reduced;
                if nd < dist[r] {
                    if dist[r] == f64::INFINITY {
                        touched.push(r);
                    }
                    dist[r] = nd;
                    via[r] = i;
                    heap.push(Reverse(Dist(nd, r)));
                }
            }
        };

        relax(
            s,
            0.0,
            &u,
            &v,
            &mut dist,
            &mut via,
            &done,
            &mut touched,
            &mut heap,
        );
        let mut sink = None;
        while let Some(Reverse(Dist(d, r))) = heap.pop() {
            if done[r] || d > dist[r] {
                continue;
            }
            done[r] = true;
            finalized.push(r);
            match mate_r[r] {
                None => {
                    sink = Some((r, d));
                    break;
                }
                Some(i) => relax(
                    i,
                    d,
                    &u,
                    &v,
                    &mut dist,
                    &mut via,
                    &done,
                    &mut touched,
                    &mut heap,
                ),
            }
        }
        let (sink, total) = sink.ok_or(GraphError::NoPerfectMatching)?;

        for &r in &finalized {
            let delta = total - dist[r];
            v[r] -= delta;
            if let Some(i) = mate_r[r] {
                u[i] += delta;
            }
        }
        u[s] += total;

        let mut r = sink;
        loop {
            let i = via[r];
            let next = mate_l[i];
            mate_l[i] = Some(r);
            mate_r[r] = Some(i);
            if i == s {
                break;
            }
            r = next.expect("augmenting path broke at an unmatched left vertex");
        }
    }

    canonicalize(&adj, &u, &v, tol, &mut mate_l, &mut mate_r);
    Ok(Matching::from_mates(b, &mate_l))
}

/// Moves each left vertex, in order, to its most preferred tight partner
/// reachable by an alternating cycle or path that keeps optimality.
fn canonicalize(
    adj: &[Vec<(usize, f64)>],
    u: &[f64],
    v: &[f64],
    tol: f64,
    mate_l: &mut [Option<usize>],
    mate_r: &mut [Option<usize>],
) {
    let nl = adj.len();
    let nr = v.len();
    let is_tight = |l: usize, r: usize, w: f64| w - u[l] - v[r] <= tol;

    let mut tight: Vec<Vec<(usize, f64)>> = Vec::with_capacity(nl);
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); nr];
    for (l, row) in adj.iter().enumerate() {
        let mut t: Vec<(usize, f64)> = row
            .iter()
            .copied()
            .filter(|&(r, w)| is_tight(l, r, w))
            .collect();
        for &(r, _) in &t {
            rev[r].push(l);
        }
        t.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        tight.push(t);
    }

    let mut fixed = vec![false; nl];
    let mut absorbable = vec![false; nr];
    let mut move_to = vec![usize::MAX; nr];
    let mut marked: Vec<usize> = Vec::new();

    for l in 0..nl {
        let cur = mate_l[l].expect("left vertex left unmatched");
        if tight[l].first().map(|&(r, _)| r) == Some(cur) {
            fixed[l] = true;
            continue;
        }

        for &x in &marked {
            absorbable[x] = false;
            move_to[x] = usize::MAX;
        }
        marked.clear();
        let mut queue = VecDeque::new();
        absorbable[cur] = true;
        marked.push(cur);
        queue.push_back(cur);
        if v[cur] >= -tol {
            for r in 0..nr {
                if mate_r[r].is_none() {
                    absorbable[r] = true;
                    marked.push(r);
                    queue.push_back(r);
                }
            }
        }
        while let Some(y) = queue.pop_front() {
            for &owner in &rev[y] {
                if owner == l || fixed[owner] {
                    continue;
                }
                let x = mate_l[owner].expect("left vertex left unmatched");
                if x == y || absorbable[x] {
                    continue;
                }
                absorbable[x] = true;
                move_to[x] = y;
                marked.push(x);
                queue.push_back(x);
            }
        }

        let target = tight[l]
            .iter()
            .map(|&(r, _)| r)
            .find(|&r| absorbable[r])
            .unwrap_or(cur);
        if target != cur {
            mate_r[cur] = None;
            let (mut taker, mut take) = (l, target);
            loop {
                let prev = mate_r[take];
                mate_r[take] = Some(taker);
                mate_l[taker] = Some(take);
                match prev {
                    None => break,
                    Some(o) => {
                        taker = o;
                        take = move_to[take];
                    }
                }
            }
        }
        fixed[l] = true;
    }
}
