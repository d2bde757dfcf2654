//! Shift of finite type presentations: edge alphabets, essential trimming,
//! irreducibility, higher-block recoding and enumeration of periodic points.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// An edge `(from, to, index)` with `index < A(from, to)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub index: usize,
}

impl Edge {
    pub fn new(from: usize, to: usize, index: usize) -> Self {
        Edge { from, to, index }
    }

    /// The unique edge between two states of a 0-1 presentation.
    pub fn simple(from: usize, to: usize) -> Self {
        Edge { from, to, index: 0 }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.from, self.to, self.index)
    }
}

/// Essential presentation of an SFT by a nonnegative integer matrix.
///
/// Every state has a follower and a predecessor. The empty presentation is
/// allowed and presents the empty shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftPresentation {
    matrix: IntMatrix,
    mult: Vec<usize>,
    origin: Vec<usize>,
}

impl SftPresentation {
    /// Wraps a matrix that is already essential.
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let p = Self::unchecked(matrix)?;
        for i in 0..p.dim() {
            let out = (0..p.dim()).any(|j| p.multiplicity(i, j) > 0);
            let inc = (0..p.dim()).any(|j| p.multiplicity(j, i) > 0);
            if !(out && inc) {
                return Err(Error::NotEssential { state: i });
            }
        }
        Ok(p)
    }

    fn unchecked(matrix: IntMatrix) -> Result<Self> {
        let n = matrix.dim();
        let mut mult = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                mult.push(matrix.small(i, j).ok_or(Error::EntryTooLarge { row: i, col: j })?);
            }
        }
        Ok(SftPresentation { matrix, mult, origin: (0..n).collect() })
    }

    pub fn empty() -> Self {
        SftPresentation { matrix: IntMatrix::zeros(0), mult: Vec::new(), origin: Vec::new() }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }

    /// For each state, its index in the matrix this presentation was trimmed from.
    pub fn origin(&self) -> &[usize] {
        &self.origin
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        self.mult[i * self.dim() + j]
    }

    pub fn is_zero_one(&self) -> bool {
        self.mult.iter().all(|&m| m <= 1)
    }

    pub fn require_zero_one(&self) -> Result<()> {
        match self.matrix.first_non_zero_one() {
            Some((row, col)) => Err(Error::NotZeroOne { row, col }),
            None => Ok(()),
        }
    }

    pub fn has_edge(&self, e: &Edge) -> bool {
        e.from < self.dim() && e.to < self.dim() && e.index < self.multiplicity(e.from, e.to)
    }

    /// The edge alphabet in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.dim()).flat_map(|i| self.out_edges(i)).collect()
    }

    pub fn out_edges(&self, i: usize) -> Vec<Edge> {
        let n = self.dim();
        (0..n).flat_map(|j| (0..self.multiplicity(i, j)).map(move |c| Edge::new(i, j, c))).collect()
    }

    pub fn in_edges(&self, j: usize) -> Vec<Edge> {
        let n = self.dim();
        (0..n).flat_map(|i| (0..self.multiplicity(i, j)).map(move |c| Edge::new(i, j, c))).collect()
    }

    pub fn followers(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.multiplicity(i, j) > 0).collect()
    }

    pub fn predecessors(&self, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.multiplicity(i, j) > 0).collect()
    }

    pub fn transpose(&self) -> SftPresentation {
        let mut t = Self::unchecked(self.matrix.transpose()).expect("same entries");
        t.origin = self.origin.clone();
        t
    }

    /// States reachable from `start` by nonempty or empty paths.
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.dim()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(i) = queue.pop_front() {
            for j in self.followers(i) {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen
    }

    /// Shortest state sequence `from, ..., to` along edges (just `[from]` when equal).
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.dim()];
        let mut queue = VecDeque::from([from]);
        parent[from] = from;
        while let Some(i) = queue.pop_front() {
            if i == to {
                let mut path = vec![to];
                let mut k = to;
                while k != from {
                    k = parent[k];
                    path.push(k);
                }
                path.reverse();
                return Some(path);
            }
            for j in self.followers(i) {
                if parent[j] == usize::MAX {
                    parent[j] = i;
                    queue.push_back(j);
                }
            }
        }
        None
    }
}

/// Iteratively removes states with no outgoing or no incoming edge.
pub fn trim_essential(matrix: &IntMatrix) -> Result<SftPresentation> {
    let n = matrix.dim();
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for i in 0..n {
            if !alive[i] {
                continue;
            }
            let out = (0..n).any(|j| alive[j] && !matrix.get(i, j).is_zero());
            let inc = (0..n).any(|j| alive[j] && !matrix.get(j, i).is_zero());
            if !(out && inc) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let mut p = SftPresentation::unchecked(matrix.principal_submatrix(&keep))?;
    p.origin = keep;
    Ok(p)
}

/// True iff the underlying digraph is strongly connected.
pub fn is_irreducible(p: &SftPresentation) -> Result<bool> {
    if p.is_empty() {
        return Err(Error::EmptyPresentation);
    }
    let forward = p.reachable_from(0);
    let backward = p.transpose().reachable_from(0);
    Ok(forward.iter().chain(&backward).all(|&b| b))
}

/// The `n`-block presentation of a 0-1 presentation. New states are the
/// `n`-blocks of states in lexicographic order; the returned dictionary maps
/// each new state to its block.
pub fn higher_block(p: &SftPresentation, n: usize) -> Result<(SftPresentation, Vec<Vec<usize>>)> {
    assert!(n >= 2, "higher_block needs n >= 2");
    p.require_zero_one()?;
    let mut blocks: Vec<Vec<usize>> = (0..p.dim()).map(|i| vec![i]).collect();
    for _ in 1..n {
        blocks = blocks
            .into_iter()
            .flat_map(|b| {
                let last = *b.last().expect("nonempty block");
                p.followers(last).into_iter().map(move |j| {
                    let mut nb = b.clone();
                    nb.push(j);
                    nb
                })
            })
            .collect();
    }
    let index: BTreeMap<&[usize], usize> = blocks.iter().enumerate().map(|(k, b)| (b.as_slice(), k)).collect();
    let m = blocks.len();
    let mut rows = vec![vec![0u32; m]; m];
    for (k, b) in blocks.iter().enumerate() {
        let prefix = &b[1..];
        for j in p.followers(b[n - 1]) {
            let mut nb = prefix.to_vec();
            nb.push(j);
            rows[k][index[nb.as_slice()]] = 1;
        }
    }
    let mut matrix = IntMatrix::new(rows)?;
    if let Some(labels) = p.matrix().labels() {
        let named =
            blocks.iter().map(|b| b.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(".")).collect();
        matrix = matrix.with_labels(named)?;
    }
    // Blocks of an essential presentation extend both ways, so no trimming is needed.
    let hp = if p.is_empty() { SftPresentation::empty() } else { SftPresentation::new(matrix)? };
    Ok((hp, blocks))
}

/// A finite nonempty sequence of composable edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<Edge>);

impl Path {
    pub fn new(edges: Vec<Edge>) -> Option<Self> {
        if edges.is_empty() || edges.windows(2).any(|w| w[0].to != w[1].from) {
            return None;
        }
        Some(Path(edges))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Initial states of the edges followed by the terminal state of the last one.
    pub fn states(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.0.iter().map(|e| e.from).collect();
        s.push(self.0.last().expect("nonempty").to);
        s
    }
}

/// A closed path, read as the window `x[0..n)` of the periodic point it
/// generates. Distinct starting phases are distinct periodic points; use
/// [`CycleWord::canonical_rotation`] to compare up to the shift.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleWord(Vec<Edge>);

impl CycleWord {
    pub fn new(edges: Vec<Edge>) -> Option<Self> {
        let path = Path::new(edges)?;
        let e = path.edges();
        if e[e.len() - 1].to != e[0].from {
            return None;
        }
        Some(CycleWord(path.0))
    }

    /// Closed walk through the given states in a 0-1 presentation, returning
    /// to the first state at the end.
    pub fn from_states(states: &[usize]) -> Option<Self> {
        let n = states.len();
        Self::new((0..n).map(|k| Edge::simple(states[k], states[(k + 1) % n])).collect())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Initial states of the edges (the state sequence of one period).
    pub fn states(&self) -> Vec<usize> {
        self.0.iter().map(|e| e.from).collect()
    }

    pub fn rotated(&self, k: usize) -> CycleWord {
        let mut e = self.0.clone();
        let len = e.len();
        e.rotate_left(k % len);
        CycleWord(e)
    }

    pub fn canonical_rotation(&self) -> CycleWord {
        (0..self.len()).map(|k| self.rotated(k)).min().expect("nonempty cycle")
    }

    pub fn is_cycle_of(&self, p: &SftPresentation) -> bool {
        self.0.iter().all(|e| p.has_edge(e))
    }
}

/// All closed paths of exactly `length` edges, one per periodic point of
/// period dividing `length`, in lexicographic order of edge sequences.
/// Fails once more than `cap` cycles have been produced.
pub fn enumerate_cycles(p: &SftPresentation, length: usize, cap: usize) -> Result<Vec<CycleWord>> {
    assert!(length >= 1, "cycle length must be positive");
    let mut out = Vec::new();
    let out_edges: Vec<Vec<Edge>> = (0..p.dim()).map(|i| p.out_edges(i)).collect();
    let mut stack: Vec<Edge> = Vec::with_capacity(length);
    for start in 0..p.dim() {
        extend_cycles(&out_edges, start, length, cap, &mut stack, &mut out)?;
    }
    Ok(out)
}

fn extend_cycles(
    out_edges: &[Vec<Edge>],
    start: usize,
    length: usize,
    cap: usize,
    stack: &mut Vec<Edge>,
    out: &mut Vec<CycleWord>,
) -> Result<()> {
    let here = stack.last().map_or(start, |e| e.to);
    if stack.len() == length {
        if here == start {
            if out.len() == cap {
                return Err(Error::CapExceeded { cap });
            }
            out.push(CycleWord(stack.clone()));
        }
        return Ok(());
    }
    for &e in &out_edges[here] {
        stack.push(e);
        extend_cycles(out_edges, start, length, cap, stack, out)?;
        stack.pop();
    }
    Ok(())
}
