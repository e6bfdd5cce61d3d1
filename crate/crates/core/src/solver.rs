//! Exact minimum mixed dominating sets for small `P(n,k)`.
//!
//! [`solve_exact`] is a branch-and-bound over the element universe: the
//! lowest uncovered element must be dominated by one of the (at most 7)
//! members of its closed neighbourhood, so the search branches on those in
//! id order, forbidding earlier siblings in later branches. A node is cut
//! when `|chosen| + ⌈uncovered/7⌉` cannot beat the incumbent.
//!
//! [`solve_exhaustive`] enumerates subsets by size and serves as an oracle
//! for tiny instances.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::constructions::best_construction;
use crate::domination::greedy_complete;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
    /// Only sets strictly smaller than `hint + 1` are searched for first.
    pub upper_bound_hint: Option<usize>,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            max_nodes: u64::MAX,
            max_time: Duration::from_secs(600),
            upper_bound_hint: None,
        }
    }
}

impl SolveBudget {
    pub fn with_time(max_time: Duration) -> Self {
        SolveBudget {
            max_time,
            ..Default::default()
        }
    }

    pub fn with_nodes(max_nodes: u64) -> Self {
        SolveBudget {
            max_nodes,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalResult {
    /// `γ_md` when `proved`, otherwise the best size found.
    pub optimum: usize,
    pub witness: ElementSet,
    pub proved: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Coverage masks, `words` u64s per element.
struct Masks {
    universe: usize,
    words: usize,
    masks: Vec<u64>,
    full: Vec<u64>,
}

impl Masks {
    fn new(graph: &Graph) -> Self {
        let universe = graph.universe();
        let words = universe.div_ceil(64);
        let mut masks = vec![0u64; universe * words];
        for id in 0..universe {
            for &x in graph.neighborhood_ids(id) {
                masks[id * words + x / 64] |= 1 << (x % 64);
            }
        }
        let full = ElementSet::full(universe).words().to_vec();
        Masks {
            universe,
            words,
            masks,
            full,
        }
    }

    fn of(&self, id: usize) -> &[u64] {
        &self.masks[id * self.words..(id + 1) * self.words]
    }
}

fn count(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

fn first_clear(words: &[u64], full: &[u64]) -> Option<usize> {
    words
        .iter()
        .zip(full)
        .enumerate()
        .find(|(_, (w, f))| *w != *f)
        .map(|(i, (w, f))| i * 64 + (!w & f).trailing_zeros() as usize)
}

fn bit(words: &[u64], id: usize) -> bool {
    words[id / 64] & (1 << (id % 64)) != 0
}

/// A subtree root: chosen prefix plus coverage and forbidden masks.
struct Task {
    chosen: Vec<usize>,
    covered: Vec<u64>,
    forbidden: Vec<u64>,
}

struct Shared {
    best: AtomicUsize,
    nodes: AtomicU64,
    aborted: AtomicBool,
    max_nodes: u64,
    deadline: Instant,
}

impl Shared {
    fn charge(&self, batch: u64) -> bool {
        let total = self.nodes.fetch_add(batch, Ordering::Relaxed) + batch;
        if total >= self.max_nodes || Instant::now() >= self.deadline {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

struct Worker<'a> {
    graph: &'a Graph,
    masks: &'a Masks,
    shared: &'a Shared,
    // per-depth coverage and forbidden buffers
    covered: Vec<u64>,
    forbidden: Vec<u64>,
    chosen: Vec<usize>,
    best: usize,
    witness: Option<Vec<usize>>,
    pending: u64,
}

const BATCH: u64 = 1024;

impl<'a> Worker<'a> {
    fn new(graph: &'a Graph, masks: &'a Masks, shared: &'a Shared, best: usize) -> Self {
        let depth = best + 2;
        Worker {
            graph,
            masks,
            shared,
            covered: vec![0; depth * masks.words],
            forbidden: vec![0; depth * masks.words],
            chosen: Vec::with_capacity(depth),
            best,
            witness: None,
            pending: 0,
        }
    }

    fn run(&mut self, task: &Task) {
        let w = self.masks.words;
        let d = task.chosen.len();
        self.chosen.clear();
        self.chosen.extend_from_slice(&task.chosen);
        self.covered[d * w..(d + 1) * w].copy_from_slice(&task.covered);
        self.forbidden[d * w..(d + 1) * w].copy_from_slice(&task.forbidden);
        self.search(d);
        self.shared.nodes.fetch_add(self.pending, Ordering::Relaxed);
        self.pending = 0;
    }

    fn search(&mut self, depth: usize) {
        if self.shared.aborted.load(Ordering::Relaxed) {
            return;
        }
        self.pending += 1;
        if self.pending == BATCH {
            self.pending = 0;
            if !self.shared.charge(BATCH) {
                return;
            }
        }
        let w = self.masks.words;
        let here = depth * w..(depth + 1) * w;
        let uncovered = self.masks.universe - count(&self.covered[here.clone()]);
        let size = self.chosen.len();
        if uncovered == 0 {
            if size < self.best {
                self.best = size;
                self.witness = Some(self.chosen.clone());
                self.shared.best.fetch_min(size, Ordering::Relaxed);
            }
            return;
        }
        let bound = size + uncovered.div_ceil(7);
        if bound >= self.best || bound > self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        let target = first_clear(&self.covered[here.clone()], &self.masks.full)
            .expect("uncovered element exists");
        let next = (depth + 1) * w..(depth + 2) * w;
        for &c in self.graph.neighborhood_ids(target) {
            if bit(&self.forbidden[here.clone()], c) {
                continue;
            }
            let mask = self.masks.of(c);
            for (i, m) in mask.iter().enumerate() {
                self.covered[next.start + i] = self.covered[here.start + i] | m;
                self.forbidden[next.start + i] = self.forbidden[here.start + i];
            }
            self.chosen.push(c);
            self.search(depth + 1);
            self.chosen.pop();
            self.forbidden[here.start + c / 64] |= 1 << (c % 64);
        }
    }
}

/// Expands the search tree breadth-first-in-DFS-order down to `depth`,
/// keeping the frontier in the order a sequential search would visit it.
fn frontier(graph: &Graph, masks: &Masks, root: Task, depth: usize, best: usize) -> Vec<Task> {
    let mut level = vec![root];
    for _ in 0..depth {
        let mut next = Vec::new();
        for task in level {
            let uncovered = masks.universe - count(&task.covered);
            if uncovered == 0 {
                next.push(task);
                continue;
            }
            if task.chosen.len() + uncovered.div_ceil(7) >= best {
                continue;
            }
            let target = first_clear(&task.covered, &masks.full).expect("uncovered");
            let mut forbidden = task.forbidden.clone();
            for &c in graph.neighborhood_ids(target) {
                if bit(&forbidden, c) {
                    continue;
                }
                let mut chosen = task.chosen.clone();
                chosen.push(c);
                let covered = task
                    .covered
                    .iter()
                    .zip(masks.of(c))
                    .map(|(a, b)| a | b)
                    .collect();
                next.push(Task {
                    chosen,
                    covered,
                    forbidden: forbidden.clone(),
                });
                forbidden[c / 64] |= 1 << (c % 64);
            }
        }
        level = next;
    }
    level
}

struct SearchOutcome {
    best: Option<Vec<usize>>,
    completed: bool,
    nodes: u64,
}

/// Looks for a dominating set with fewer than `bound` elements.
fn search_below(
    graph: &Graph,
    masks: &Masks,
    covered: &[u64],
    bound: usize,
    budget: &SolveBudget,
    start: Instant,
) -> SearchOutcome {
    let shared = Shared {
        best: AtomicUsize::new(bound),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        max_nodes: budget.max_nodes,
        deadline: start + budget.max_time,
    };
    let root = Task {
        chosen: Vec::new(),
        covered: covered.to_vec(),
        forbidden: vec![0; masks.words],
    };
    let tasks = frontier(graph, masks, root, 2, bound);
    let results: Vec<(usize, Option<Vec<usize>>)> = tasks
        .par_iter()
        .map(|task| {
            let mut worker = Worker::new(graph, masks, &shared, bound);
            worker.run(task);
            (worker.best, worker.witness)
        })
        .collect();
    // lowest task index among the smallest sizes keeps the witness
    // independent of thread scheduling
    let best = results
        .into_iter()
        .filter_map(|(size, w)| w.map(|w| (size, w)))
        .min_by_key(|(size, _)| *size)
        .map(|(_, w)| w);
    SearchOutcome {
        best,
        completed: !shared.aborted.load(Ordering::Relaxed),
        nodes: shared.nodes.load(Ordering::Relaxed),
    }
}

/// Exact `γ_md(P(n,k))` by branch-and-bound.
///
/// The incumbent is the smaller of the pattern construction (when one
/// applies) and a greedy set. On budget exhaustion `proved` is false and
/// `optimum` is the best size found.
pub fn solve_exact(graph: &Graph, budget: SolveBudget) -> OptimalResult {
    let start = Instant::now();
    let masks = Masks::new(graph);
    let greedy = greedy_complete(graph, &graph.empty_set());
    let mut incumbent = greedy;
    if let Some(c) = best_construction(graph.n(), graph.k()) {
        if c.set.len() <= incumbent.len() {
            incumbent = c.set;
        }
    }

    let mut nodes = 0;
    let mut bound = incumbent.len();
    if let Some(h) = budget.upper_bound_hint {
        bound = bound.min(h + 1);
    }
    let empty = vec![0u64; masks.words];
    let mut outcome = search_below(graph, &masks, &empty, bound, &budget, start);
    nodes += outcome.nodes;
    if outcome.completed && outcome.best.is_none() && bound < incumbent.len() {
        // the hint was too optimistic; retry against the incumbent
        outcome = search_below(graph, &masks, &empty, incumbent.len(), &budget, start);
        nodes += outcome.nodes;
    }

    let witness = match outcome.best {
        Some(ids) => ElementSet::from_ids(graph.universe(), ids),
        None => incumbent,
    };
    OptimalResult {
        optimum: witness.len(),
        witness,
        proved: outcome.completed,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    }
}

/// Smallest set of additions that turns `partial` into a dominating set.
///
/// Returns `(additions, proved)`; when the budget runs out the additions
/// are the best found, falling back to the greedy completion.
pub fn min_completion(
    graph: &Graph,
    partial: &ElementSet,
    budget: SolveBudget,
) -> (ElementSet, bool) {
    let start = Instant::now();
    let masks = Masks::new(graph);
    let mut covered = vec![0u64; masks.words];
    for id in partial.iter() {
        for (c, m) in covered.iter_mut().zip(masks.of(id)) {
            *c |= m;
        }
    }
    let mut greedy = greedy_complete(graph, partial);
    greedy.difference_with(partial);
    let outcome = search_below(graph, &masks, &covered, greedy.len(), &budget, start);
    let added = match outcome.best {
        Some(ids) => ElementSet::from_ids(graph.universe(), ids),
        None => greedy,
    };
    (added, outcome.completed)
}

/// Tries all subsets by increasing size; the witness is the
/// lexicographically smallest optimal set of ids.
pub fn solve_exhaustive(graph: &Graph, max_size: usize) -> Result<OptimalResult> {
    let start = Instant::now();
    let masks = Masks::new(graph);
    let universe = graph.universe();
    let mut nodes = 0u64;
    for size in 0..=max_size.min(universe) {
        let mut picks = Vec::with_capacity(size);
        let empty = vec![0u64; masks.words];
        if first_combination(&masks, &empty, 0, size, &mut picks, &mut nodes) {
            return Ok(OptimalResult {
                optimum: size,
                witness: ElementSet::from_ids(universe, picks),
                proved: true,
                nodes_explored: nodes,
                elapsed: start.elapsed(),
            });
        }
    }
    Err(Error::NoSolutionWithin(max_size))
}

fn first_combination(
    masks: &Masks,
    covered: &[u64],
    from: usize,
    left: usize,
    picks: &mut Vec<usize>,
    nodes: &mut u64,
) -> bool {
    *nodes += 1;
    if left == 0 {
        return covered == masks.full.as_slice();
    }
    for c in from..=masks.universe - left {
        let next: Vec<u64> = covered
            .iter()
            .zip(masks.of(c))
            .map(|(a, b)| a | b)
            .collect();
        picks.push(c);
        if first_combination(masks, &next, c + 1, left - 1, picks, nodes) {
            return true;
        }
        picks.pop();
    }
    false
}
