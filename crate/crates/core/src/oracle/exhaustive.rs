use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use thiserror::Error;

use crate::designer::CostModel;
use crate::model::{CompositeInstance, InterconnectionEdge, ModelError};

/// Which part of structural controllability a link set must achieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Predicate {
    /// Accessibility and no dilation.
    #[default]
    Full,
    /// No dilation only.
    MatchingOnly,
    /// Accessibility only.
    AccessibilityOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    /// Refuse instances with more candidate links than this.
    pub max_candidates: usize,
    pub cost_model: CostModel,
    /// Answer the decision question "is there a solution of cost at most
    /// this?" and stop enumerating once costs pass it.
    pub budget: Option<f64>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_candidates: 24,
            cost_model: CostModel::Cardinality,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{candidates} candidate links exceed the cap of {cap}")]
    TooLarge { candidates: usize, cap: usize },
    #[error("no set of admissible links satisfies the predicate")]
    Infeasible,
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// `None` when a budget was given and no solution fits within it.
    pub optimum_cost: Option<f64>,
    /// An optimal link set, sorted; empty when `optimum_cost` is `None`.
    pub optimum_edges: Vec<InterconnectionEdge>,
    /// Number of subsets tested.
    pub explored: u64,
    pub budget: Option<f64>,
    /// With a budget: whether a solution within it exists.
    pub answer: Option<bool>,
}

pub fn exact_min_interconnections(
    inst: &CompositeInstance,
    cfg: &OracleConfig,
) -> Result<OracleResult, OracleError> {
    exact_min(inst, Predicate::Full, cfg)
}

pub fn exact_min_for_matching(
    inst: &CompositeInstance,
    cfg: &OracleConfig,
) -> Result<OracleResult, OracleError> {
    exact_min(inst, Predicate::MatchingOnly, cfg)
}

pub fn exact_min_for_accessibility(
    inst: &CompositeInstance,
    cfg: &OracleConfig,
) -> Result<OracleResult, OracleError> {
    exact_min(inst, Predicate::AccessibilityOnly, cfg)
}

/// Cheapest subset of the candidate links satisfying `predicate`. Among
/// equal-cost subsets the lexicographically first (by candidate order) wins.
pub fn exact_min(
    inst: &CompositeInstance,
    predicate: Predicate,
    cfg: &OracleConfig,
) -> Result<OracleResult, OracleError> {
    let candidates = inst.candidate_edges();
    let count = candidates.len();
    if count > cfg.max_candidates {
        return Err(OracleError::TooLarge {
            candidates: count,
            cap: cfg.max_candidates,
        });
    }
    let mut tester = Tester::new(inst, &candidates);
    let all: Vec<usize> = (0..count).collect();
    if !tester.satisfies(&all, predicate) {
        return Err(OracleError::Infeasible);
    }

    let cost_of = |i: usize| match cfg.cost_model {
        CostModel::Cardinality => 1.0,
        CostModel::Weighted => inst.edge_cost(&candidates[i]),
    };
    let over = |c: f64| cfg.budget.is_some_and(|b| c > b + 1e-9 * b.abs().max(1.0));

    let mut explored = 0u64;
    let found = match cfg.cost_model {
        CostModel::Cardinality => {
            let mut found = None;
            'sizes: for size in 0..=count {
                if over(size as f64) {
                    break;
                }
                let mut comb: Vec<usize> = (0..size).collect();
                loop {
                    explored += 1;
                    if tester.satisfies(&comb, predicate) {
                        found = Some((size as f64, comb));
                        break 'sizes;
                    }
                    if !next_combination(&mut comb, count) {
                        break;
                    }
                }
            }
            found
        }
        CostModel::Weighted => {
            let mut order: Vec<usize> = (0..count).collect();
            order.sort_by(|&a, &b| cost_of(a).total_cmp(&cost_of(b)).then(a.cmp(&b)));
            best_first(
                &order,
                &cost_of,
                |subset| {
                    explored += 1;
                    tester.satisfies(subset, predicate)
                },
                &over,
            )
        }
    };

    Ok(match found {
        Some((cost, idx)) => {
            let mut edges: Vec<InterconnectionEdge> = idx.iter().map(|&i| candidates[i]).collect();
            edges.sort_unstable();
            OracleResult {
                optimum_cost: Some(cost),
                optimum_edges: edges,
                explored,
                budget: cfg.budget,
                answer: cfg.budget.map(|_| true),
            }
        }
        None => OracleResult {
            optimum_cost: None,
            optimum_edges: Vec::new(),
            explored,
            budget: cfg.budget,
            answer: cfg.budget.map(|_| false),
        },
    })
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    cost: f64,
    /// Positions in the cost-sorted order, increasing.
    picks: Vec<usize>,
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cost
            .total_cmp(&other.cost)
            .then_with(|| self.picks.cmp(&other.picks))
    }
}

/// Visits subsets in nondecreasing total cost. Each subset of sorted
/// positions has two successors: append the next position, or bump the last
/// one. Every nonempty subset is reached exactly once.
fn best_first<C, T, O>(
    order: &[usize],
    cost_of: &C,
    mut test: T,
    over: &O,
) -> Option<(f64, Vec<usize>)>
where
    C: Fn(usize) -> f64,
    T: FnMut(&[usize]) -> bool,
    O: Fn(f64) -> bool,
{
    if test(&[]) {
        return Some((0.0, Vec::new()));
    }
    let n = order.len();
    if n == 0 {
        return None;
    }
    let mut heap = BinaryHeap::new();
    heap.push(Reverse(Entry {
        cost: cost_of(order[0]),
        picks: vec![0],
    }));
    let mut subset = Vec::new();
    while let Some(Reverse(e)) = heap.pop() {
        if over(e.cost) {
            return None;
        }
        subset.clear();
        subset.extend(e.picks.iter().map(|&p| order[p]));
        if test(&subset) {
            let mut idx = subset.clone();
            idx.sort_unstable();
            return Some((e.cost, idx));
        }
        let last = *e.picks.last().expect("nonempty");
        if last + 1 < n {
            let total = |picks: &[usize]| picks.iter().map(|&p| cost_of(order[p])).sum();
            let mut ext = e.picks.clone();
            ext.push(last + 1);
            heap.push(Reverse(Entry {
                cost: total(&ext),
                picks: ext,
            }));
            let mut rep = e.picks;
            *rep.last_mut().expect("nonempty") = last + 1;
            heap.push(Reverse(Entry {
                cost: total(&rep),
                picks: rep,
            }));
        }
    }
    None
}

/// Checks link subsets against the composite pattern.
struct Tester {
    n: usize,
    /// Columns of each state row before any link is added: states `0..n`,
    /// inputs `n..`.
    base_rows: Vec<Vec<usize>>,
    /// Successors over states `0..n` and inputs `n..`.
    base_succ: Vec<Vec<usize>>,
    /// Column owners of a maximum matching of the unlinked pattern.
    base_owner: Vec<Option<usize>>,
    base_unmatched: Vec<usize>,
    inputs: Vec<usize>,
    links: Vec<(usize, usize)>,
    seen: Vec<bool>,
    stack: Vec<usize>,
    owner: Vec<Option<usize>>,
    visited: Vec<bool>,
}

impl Tester {
    fn new(inst: &CompositeInstance, candidates: &[InterconnectionEdge]) -> Self {
        let n = inst.state_count();
        let m = inst.input_count();
        let mut base_rows = vec![Vec::new(); n];
        let mut base_succ = vec![Vec::new(); n + m];
        for (i, s) in inst.subsystems().iter().enumerate() {
            let so = inst.state_offset(i);
            let io = inst.input_offset(i);
            for (p, q) in s.a_pattern().nonzeros() {
                base_rows[so + p].push(so + q);
                base_succ[so + q].push(so + p);
            }
            for (p, q) in s.b_pattern().nonzeros() {
                base_rows[so + p].push(n + io + q);
                base_succ[n + io + q].push(so + p);
            }
        }
        let links = candidates
            .iter()
            .map(|e| (inst.global_state(e.src), inst.global_state(e.dst)))
            .collect();
        let mut base_owner = vec![None; n + m];
        let mut base_unmatched = Vec::new();
        let mut visited = vec![false; n + m];
        for r in 0..n {
            visited.iter_mut().for_each(|v| *v = false);
            if !kuhn(r, &base_rows, &[], &[], &mut base_owner, &mut visited) {
                base_unmatched.push(r);
            }
        }
        Tester {
            n,
            base_rows,
            base_succ,
            base_owner,
            base_unmatched,
            inputs: (n..n + m).collect(),
            links,
            seen: vec![false; n + m],
            stack: Vec::new(),
            owner: Vec::new(),
            visited,
        }
    }

    fn satisfies(&mut self, subset: &[usize], predicate: Predicate) -> bool {
        let need_access = predicate != Predicate::MatchingOnly;
        let need_match = predicate != Predicate::AccessibilityOnly;
        (!need_match || self.perfect(subset)) && (!need_access || self.accessible(subset))
    }

    fn accessible(&mut self, subset: &[usize]) -> bool {
        self.seen.iter_mut().for_each(|s| *s = false);
        self.stack.clear();
        for &u in &self.inputs {
            self.seen[u] = true;
            self.stack.push(u);
        }
        let mut reached = 0;
        while let Some(x) = self.stack.pop() {
            if x < self.n {
                reached += 1;
            }
            for &y in &self.base_succ[x] {
                if !self.seen[y] {
                    self.seen[y] = true;
                    self.stack.push(y);
                }
            }
            for &k in subset {
                let (src, dst) = self.links[k];
                if src == x && !self.seen[dst] {
                    self.seen[dst] = true;
                    self.stack.push(dst);
                }
            }
        }
        reached == self.n
    }

    /// Augments the precomputed base matching with the extra link columns;
    /// the result is maximum, so every row is covered iff a perfect
    /// matching exists.
    fn perfect(&mut self, subset: &[usize]) -> bool {
        if self.base_unmatched.len() > subset.len() {
            return false;
        }
        self.owner.clone_from(&self.base_owner);
        for &r in &self.base_unmatched {
            self.visited.iter_mut().for_each(|v| *v = false);
            if !kuhn(
                r,
                &self.base_rows,
                subset,
                &self.links,
                &mut self.owner,
                &mut self.visited,
            ) {
                return false;
            }
        }
        true
    }
}

fn kuhn(
    r: usize,
    rows: &[Vec<usize>],
    subset: &[usize],
    links: &[(usize, usize)],
    owner: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    let extra = subset
        .iter()
        .map(|&k| links[k])
        .filter(|&(_, dst)| dst == r)
        .map(|(src, _)| src);
    for c in rows[r].iter().copied().chain(extra) {
        if visited[c] {
            continue;
        }
        visited[c] = true;
        let free = match owner[c] {
            None => true,
            Some(o) => kuhn(o, rows, subset, links, owner, visited),
        };
        if free {
            owner[c] = Some(r);
            return true;
        }
    }
    false
}
