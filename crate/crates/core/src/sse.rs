//! Strong shift equivalence certificates, state splittings that carry a
//! permutation action along, transport of certificates to reduced shifts,
//! and commuting squares of right-resolving factor maps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::action::{group_from_generators, validate_action, PermGroup, Permutation, PermutationAction};
use crate::error::{Error, Result};
use crate::matrix::{mat_mul, IntMatrix, RectMatrix};
use crate::reduce::{build_eta, right_reduce, OneBlockCode};
use crate::sft::{Edge, SftPresentation};

/// A pair `(r, s)` with `r·s = a` and `s·r = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementarySse {
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub r: RectMatrix,
    pub s: RectMatrix,
}

impl ElementarySse {
    /// Builds and verifies a certificate.
    pub fn new(a: IntMatrix, b: IntMatrix, r: RectMatrix, s: RectMatrix) -> Result<Self> {
        let e = ElementarySse { a, b, r, s };
        if verify_elementary_sse(&e)? {
            Ok(e)
        } else {
            Err(Error::SseFailed("r·s = a and s·r = b do not both hold".into()))
        }
    }

    /// `(a, I)`, certifying `a ~ a`.
    pub fn reflexive(a: &IntMatrix) -> Self {
        let n = a.dim();
        ElementarySse { a: a.clone(), b: a.clone(), r: a.to_rect(), s: RectMatrix::identity(n) }
    }

    /// `(s, r)`, certifying `b ~ a`.
    pub fn reversed(&self) -> Self {
        ElementarySse { a: self.b.clone(), b: self.a.clone(), r: self.s.clone(), s: self.r.clone() }
    }
}

/// True iff both products hold exactly. Shapes must be compatible.
pub fn verify_elementary_sse(e: &ElementarySse) -> Result<bool> {
    let (n, m) = (e.a.dim(), e.b.dim());
    if (e.r.nrows(), e.r.ncols()) != (n, m) || (e.s.nrows(), e.s.ncols()) != (m, n) {
        return Err(Error::DimensionMismatch(format!(
            "r is {}x{} and s is {}x{} for a {n}x{n} and b {m}x{m}",
            e.r.nrows(),
            e.r.ncols(),
            e.s.nrows(),
            e.s.ncols()
        )));
    }
    if e.r.is_signed() || e.s.is_signed() {
        return Ok(false);
    }
    let rs = mat_mul(&e.r, &e.s)?;
    let sr = mat_mul(&e.s, &e.r)?;
    Ok(rs.rows() == e.a.rows() && sr.rows() == e.b.rows())
}

/// A chain `a = A_0 ~ A_1 ~ ... ~ A_m = b` of elementary equivalences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SseChain {
    steps: Vec<ElementarySse>,
}

impl SseChain {
    pub fn new(steps: Vec<ElementarySse>) -> Result<Self> {
        for (k, w) in steps.windows(2).enumerate() {
            if !w[0].b.same_entries(&w[1].a) {
                return Err(Error::SseFailed(format!("steps {k} and {} do not share an endpoint", k + 1)));
            }
        }
        Ok(SseChain { steps })
    }

    pub fn steps(&self) -> &[ElementarySse] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn source(&self) -> Option<&IntMatrix> {
        self.steps.first().map(|e| &e.a)
    }

    pub fn target(&self) -> Option<&IntMatrix> {
        self.steps.last().map(|e| &e.b)
    }

    /// Every step verifies and consecutive endpoints agree.
    pub fn verify(&self) -> Result<bool> {
        for e in &self.steps {
            if !verify_elementary_sse(e)? {
                return Ok(false);
            }
        }
        Ok(self.steps.windows(2).all(|w| w[0].b.same_entries(&w[1].a)))
    }
}

/// The 2-block conjugacy `X_a -> X_b` of a 0-1 certificate and its inverse,
/// on state sequences. `forward[(i, j)]` is the unique `k` with
/// `r(i,k) = s(k,j) = 1`; `backward[(k, l)]` is the unique `i` with
/// `s(k,i) = r(i,l) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedConjugacy {
    pub forward: BTreeMap<(usize, usize), usize>,
    pub backward: BTreeMap<(usize, usize), usize>,
    a: SftMatrixShape,
    b: SftMatrixShape,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct SftMatrixShape {
    followers: Vec<Vec<usize>>,
}

impl SftMatrixShape {
    fn of(m: &IntMatrix) -> Self {
        let n = m.dim();
        SftMatrixShape { followers: (0..n).map(|i| (0..n).filter(|&j| !m.get(i, j).is_zero()).collect()).collect() }
    }

    fn paths(&self, len: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
        let mut paths: Vec<Vec<usize>> = (0..self.followers.len()).map(|i| vec![i]).collect();
        for _ in 1..len {
            let mut next = Vec::new();
            for p in &paths {
                for &j in &self.followers[*p.last().expect("nonempty")] {
                    if next.len() == cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    let mut q = p.clone();
                    q.push(j);
                    next.push(q);
                }
            }
            paths = next;
        }
        Ok(paths)
    }
}

impl InducedConjugacy {
    /// Image of an `a`-path of `L` states: a `b`-path of `L - 1` states.
    pub fn apply_forward(&self, states: &[usize]) -> Option<Vec<usize>> {
        states.windows(2).map(|w| self.forward.get(&(w[0], w[1])).copied()).collect()
    }

    /// Image of a `b`-path of `L` states: an `a`-path of `L - 1` states.
    pub fn apply_backward(&self, states: &[usize]) -> Option<Vec<usize>> {
        states.windows(2).map(|w| self.backward.get(&(w[0], w[1])).copied()).collect()
    }

    /// On every path of `3..=max_len` states in either shift, going there and
    /// back drops one state from each end and changes nothing else.
    pub fn check_paths(&self, max_len: usize, cap: usize) -> Result<bool> {
        for len in 3..=max_len {
            for p in self.a.paths(len, cap)? {
                let there = self.apply_forward(&p);
                let back = there.as_deref().and_then(|q| self.apply_backward(q));
                if back.as_deref() != Some(&p[1..len - 1]) {
                    return Ok(false);
                }
            }
            for q in self.b.paths(len, cap)? {
                let there = self.apply_backward(&q);
                let back = there.as_deref().and_then(|p| self.apply_forward(p));
                if back.as_deref() != Some(&q[1..len - 1]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The canonical conjugacy of a certificate whose four matrices are 0-1.
pub fn induced_conjugacy(e: &ElementarySse) -> Result<InducedConjugacy> {
    for (name, m) in [("r", &e.r), ("s", &e.s)] {
        if !m.is_zero_one() {
            return Err(Error::SseFailed(format!("{name} is not 0-1")));
        }
    }
    let (n, m) = (e.a.dim(), e.b.dim());
    if (e.r.nrows(), e.r.ncols(), e.s.nrows(), e.s.ncols()) != (n, m, m, n) {
        verify_elementary_sse(e)?;
    }
    let one = BigInt::one();
    let mut forward = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let ks: Vec<usize> = (0..m).filter(|&k| *e.r.get(i, k) == one && *e.s.get(k, j) == one).collect();
            match ks.len() {
                0 => {}
                1 => {
                    forward.insert((i, j), ks[0]);
                }
                count => return Err(Error::NotUniqueState { i, j, count }),
            }
        }
    }
    let mut backward = BTreeMap::new();
    for k in 0..m {
        for l in 0..m {
            let is: Vec<usize> = (0..n).filter(|&i| *e.s.get(k, i) == one && *e.r.get(i, l) == one).collect();
            match is.len() {
                0 => {}
                1 => {
                    backward.insert((k, l), is[0]);
                }
                count => return Err(Error::NotUniqueState { i: k, j: l, count }),
            }
        }
    }
    if !e.a.is_zero_one() || !e.b.is_zero_one() || !verify_elementary_sse(e)? {
        return Err(Error::SseFailed("certificate does not verify".into()));
    }
    Ok(InducedConjugacy { forward, backward, a: SftMatrixShape::of(&e.a), b: SftMatrixShape::of(&e.b) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Out,
    In,
}

/// For each state, a partition of its followers (out-splitting) or of its
/// predecessors (in-splitting). In a 0-1 presentation these name the edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitData {
    pub direction: Direction,
    pub partitions: Vec<Vec<Vec<usize>>>,
}

impl SplitData {
    /// One block per state.
    pub fn trivial(p: &SftPresentation, direction: Direction) -> Self {
        let partitions = (0..p.dim()).map(|i| vec![neighbours(p, direction, i)]).collect();
        SplitData { direction, partitions }
    }

    /// One block per edge.
    pub fn singletons(p: &SftPresentation, direction: Direction) -> Self {
        let partitions =
            (0..p.dim()).map(|i| neighbours(p, direction, i).into_iter().map(|j| vec![j]).collect()).collect();
        SplitData { direction, partitions }
    }

    /// Checks coverage and disjointness against `p` and sorts members and
    /// blocks (blocks by least member).
    pub fn normalized(&self, p: &SftPresentation) -> Result<SplitData> {
        if self.partitions.len() != p.dim() {
            return Err(Error::InvalidSplit(format!("{} partitions for {} states", self.partitions.len(), p.dim())));
        }
        let mut partitions = Vec::with_capacity(p.dim());
        for (i, blocks) in self.partitions.iter().enumerate() {
            let mut blocks: Vec<Vec<usize>> = blocks
                .iter()
                .map(|b| {
                    let mut b = b.clone();
                    b.sort_unstable();
                    b
                })
                .collect();
            if blocks.iter().any(|b| b.is_empty()) {
                return Err(Error::InvalidSplit(format!("state {i} has an empty block")));
            }
            blocks.sort();
            let mut all: Vec<usize> = blocks.concat();
            all.sort_unstable();
            if all != neighbours(p, self.direction, i) {
                return Err(Error::InvalidSplit(format!(
                    "blocks at state {i} are not a partition of its {} edges",
                    if self.direction == Direction::Out { "outgoing" } else { "incoming" }
                )));
            }
            partitions.push(blocks);
        }
        Ok(SplitData { direction: self.direction, partitions })
    }
}

fn neighbours(p: &SftPresentation, direction: Direction, i: usize) -> Vec<usize> {
    match direction {
        Direction::Out => p.followers(i),
        Direction::In => p.predecessors(i),
    }
}

/// A split presentation with its transported action. `parent[s]` is the
/// state that new state `s` came from and `block[s]` its block; element `k`
/// of the new group acts as element `k` of the old one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub action: PermutationAction,
    pub certificate: ElementarySse,
    pub parent: Vec<usize>,
    pub block: Vec<Vec<usize>>,
    pub direction: Direction,
}

pub fn out_split(a: &PermutationAction, d: &SplitData) -> Result<SplitResult> {
    if d.direction != Direction::Out {
        return Err(Error::InvalidSplit("out_split needs out-partitions".into()));
    }
    state_split(a, d)
}

pub fn in_split(a: &PermutationAction, d: &SplitData) -> Result<SplitResult> {
    if d.direction != Direction::In {
        return Err(Error::InvalidSplit("in_split needs in-partitions".into()));
    }
    state_split(a, d)
}

fn state_split(a: &PermutationAction, d: &SplitData) -> Result<SplitResult> {
    let p = a.presentation();
    p.require_zero_one()?;
    let d = d.normalized(p)?;
    let mut parent = Vec::new();
    let mut block = Vec::new();
    let mut index: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    for (i, blocks) in d.partitions.iter().enumerate() {
        for b in blocks {
            index.insert((i, b.clone()), parent.len());
            parent.push(i);
            block.push(b.clone());
        }
    }
    let m = parent.len();
    let n = p.dim();
    // (i, b) -> (j, b') is an edge iff j ∈ b (out) or i ∈ b' (in).
    let mut rows = vec![vec![0u32; m]; m];
    for s in 0..m {
        for t in 0..m {
            let linked = match d.direction {
                Direction::Out => block[s].binary_search(&parent[t]).is_ok(),
                Direction::In => block[t].binary_search(&parent[s]).is_ok(),
            };
            rows[s][t] = u32::from(linked);
        }
    }
    let mut matrix = IntMatrix::new(rows)?;
    if let Some(labels) = p.matrix().labels() {
        let named = (0..m)
            .map(|s| {
                let members: Vec<&str> = block[s].iter().map(|&j| labels[j].as_str()).collect();
                format!("{}[{}]", labels[parent[s]], members.join(","))
            })
            .collect();
        matrix = matrix.with_labels(named)?;
    }
    let split = SftPresentation::new(matrix)?;

    let mut r = RectMatrix::zeros(n, m);
    let mut s_mat = RectMatrix::zeros(m, n);
    for s in 0..m {
        match d.direction {
            Direction::Out => {
                r.set(parent[s], s, BigInt::one());
                for &j in &block[s] {
                    s_mat.set(s, j, BigInt::one());
                }
            }
            Direction::In => {
                for &i in &block[s] {
                    r.set(i, s, BigInt::one());
                }
                s_mat.set(s, parent[s], BigInt::one());
            }
        }
    }
    let certificate = ElementarySse::new(p.matrix().clone(), split.matrix().clone(), r, s_mat)?;

    let group = a.group();
    let mut elements = Vec::with_capacity(group.order());
    for (k, g) in group.elements().iter().enumerate() {
        let mut images = Vec::with_capacity(m);
        for s in 0..m {
            let mut moved: Vec<usize> = block[s].iter().map(|&j| g.apply(j)).collect();
            moved.sort_unstable();
            let target = index
                .get(&(g.apply(parent[s]), moved))
                .ok_or(Error::IncompatibleSplit { element: k, state: parent[s] })?;
            images.push(*target);
        }
        elements.push(Permutation::from_images(images)?);
    }
    let new_group = PermGroup::from_elements(m, elements)?;
    let action = validate_action(&split, &new_group)?;
    Ok(SplitResult { action, certificate, parent, block, direction: d.direction })
}

/// The amalgamation map from the split shift back to the original one,
/// sending each edge `(s, t)` to `(parent[s], parent[t])`. It is
/// right-resolving for in-splittings and left-resolving for out-splittings.
pub fn amalgamation_code(original: &PermutationAction, split: &SplitResult) -> Result<OneBlockCode> {
    OneBlockCode::from_state_map(split.action.presentation(), original.presentation(), &split.parent)
}

/// The `n`-block recoding of an action as `n - 1` successive out-splittings
/// into singletons. The final presentation has the same state order as
/// [`crate::sft::higher_block`].
pub fn action_higher_block(a: &PermutationAction, n: usize) -> Result<(Vec<SplitResult>, SseChain)> {
    assert!(n >= 2, "higher block recoding needs n >= 2");
    let mut steps = Vec::new();
    let mut current = a.clone();
    for _ in 1..n {
        let d = SplitData::singletons(current.presentation(), Direction::Out);
        let s = out_split(&current, &d)?;
        current = s.action.clone();
        steps.push(s);
    }
    let chain = SseChain::new(steps.iter().map(|s| s.certificate.clone()).collect())?;
    Ok((steps, chain))
}

/// How elements of the group acting on one side correspond to elements
/// acting on the other: each pair `(g, h)` is one element of a common group
/// acting as `g` on the first presentation and as `h` on the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPairing {
    pairs: Vec<(usize, usize)>,
}

impl GroupPairing {
    /// Element `k` acts as `k` on both sides (the situation after a split).
    pub fn identity(first: &PermGroup, second: &PermGroup) -> Result<Self> {
        if first.order() != second.order() {
            return Err(Error::DimensionMismatch(format!(
                "groups of orders {} and {} cannot be paired elementwise",
                first.order(),
                second.order()
            )));
        }
        Ok(GroupPairing { pairs: (0..first.order()).map(|k| (k, k)).collect() })
    }

    /// The group generated by the pairs `generators[t] = (g_t, h_t)`, acting
    /// on the disjoint union of the two state sets.
    pub fn from_generators(
        first: &PermGroup,
        second: &PermGroup,
        generators: &[(usize, usize)],
        limit: usize,
    ) -> Result<Self> {
        let (n, m) = (first.degree(), second.degree());
        let mut joint = Vec::with_capacity(generators.len());
        for &(g, h) in generators {
            if g >= first.order() || h >= second.order() {
                return Err(Error::DimensionMismatch(format!("generator pair ({g}, {h}) out of range")));
            }
            let mut images: Vec<usize> = first.element(g).images().to_vec();
            images.extend(second.element(h).images().iter().map(|&x| x + n));
            joint.push(Permutation::from_images(images)?);
        }
        let group = group_from_generators(n + m, &joint, limit)?;
        let mut pairs = Vec::with_capacity(group.order());
        for p in group.elements() {
            let left = Permutation::from_images(p.images()[..n].to_vec())?;
            let right = Permutation::from_images(p.images()[n..].iter().map(|&x| x - n).collect())?;
            let g = first.index_of(&left).expect("closure stays in the first group");
            let h = second.index_of(&right).expect("closure stays in the second group");
            pairs.push((g, h));
        }
        Ok(GroupPairing { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

/// Checks `r·P_ψ(h) = P_φ(g)·r` and `s·P_φ(g) = P_ψ(h)·s` for every pair,
/// in the equivalent form `r(gi, hk) = r(i, k)` and `s(hk, gi) = s(k, i)`.
pub fn check_intertwining(
    e: &ElementarySse,
    phi: &PermutationAction,
    psi: &PermutationAction,
    pairing: &GroupPairing,
) -> Result<()> {
    let (n, m) = (e.a.dim(), e.b.dim());
    if phi.dim() != n || psi.dim() != m {
        return Err(Error::DimensionMismatch("actions do not match the certificate".into()));
    }
    for (t, &(g, h)) in pairing.pairs().iter().enumerate() {
        let (pg, ph) = (phi.group().element(g), psi.group().element(h));
        for i in 0..n {
            for k in 0..m {
                if e.r.get(pg.apply(i), ph.apply(k)) != e.r.get(i, k) {
                    return Err(Error::IntertwiningFailed { element: t, law: "R·P_psi(g) = P_phi(g)·R".into() });
                }
                if e.s.get(ph.apply(k), pg.apply(i)) != e.s.get(k, i) {
                    return Err(Error::IntertwiningFailed { element: t, law: "S·P_phi(g) = P_psi(g)·S".into() });
                }
            }
        }
    }
    Ok(())
}

/// Transports an intertwining certificate between `(a, φ)` and `(b, ψ)` to
/// the certificate `(U_φ R V_ψ, U_ψ S V_φ)` between the right reduced shifts.
pub fn lemma35_transport(
    e: &ElementarySse,
    phi: &PermutationAction,
    psi: &PermutationAction,
    pairing: &GroupPairing,
) -> Result<ElementarySse> {
    if !verify_elementary_sse(e)? {
        return Err(Error::SseFailed("input certificate does not verify".into()));
    }
    if !e.a.same_entries(phi.matrix()) || !e.b.same_entries(psi.matrix()) {
        return Err(Error::DimensionMismatch("certificate endpoints differ from the acted-on matrices".into()));
    }
    check_intertwining(e, phi, psi, pairing)?;
    let rp = right_reduce(phi)?;
    let rq = right_reduce(psi)?;
    let r = mat_mul(&mat_mul(&rp.u, &e.r)?, &rq.v)?;
    let s = mat_mul(&mat_mul(&rq.u, &e.s)?, &rp.v)?;
    ElementarySse::new(rp.matrix, rq.matrix, r, s)
}

/// Transports every step of a chain of splittings starting at `a`.
pub fn transport_splits(a: &PermutationAction, splits: &[SplitResult]) -> Result<SseChain> {
    let mut current = a.clone();
    let mut steps = Vec::with_capacity(splits.len());
    for s in splits {
        let pairing = GroupPairing::identity(current.group(), s.action.group())?;
        steps.push(lemma35_transport(&s.certificate, &current, &s.action, &pairing)?);
        current = s.action.clone();
    }
    SseChain::new(steps)
}

/// `θ₂∘η = η̄∘θ₁` with `θ₁: X_A -> X_φ`, `θ₂: X_B -> X_ψ` and
/// `η̄: X_φ -> X_ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionFactorSquare {
    pub eta: OneBlockCode,
    pub eta_bar: OneBlockCode,
    pub theta1: OneBlockCode,
    pub theta2: OneBlockCode,
}

impl ActionFactorSquare {
    /// Commutativity on every 2-block of `X_A`; both composites send each
    /// 2-block to a 2-block.
    pub fn commutes(&self) -> bool {
        let p = self.eta.source();
        for e in p.edges() {
            for f in p.out_edges(e.to) {
                let left = [self.theta2.apply(&self.eta.apply(&e)), self.theta2.apply(&self.eta.apply(&f))];
                let right = [self.eta_bar.apply(&self.theta1.apply(&e)), self.eta_bar.apply(&self.theta1.apply(&f))];
                if left != right || left[0].to != left[1].from {
                    return false;
                }
            }
        }
        true
    }

    pub fn all_right_resolving(&self) -> bool {
        [&self.eta, &self.eta_bar, &self.theta1, &self.theta2].iter().all(|c| c.is_right_resolving())
    }
}

/// Completes a right-resolving factor map of actions `η: (A, φ) -> (B, ψ)` to
/// a commuting square over the right reduced shifts.
///
/// `θ₂` ranks the edges from each orbit representative `s` of `B` into an
/// orbit `O` by the `φ`-orbits reached by their lifts (then by target), and
/// carries that ranking to `hs` by `h`. `η̄` sends the `c`-th edge `Gi -> Gj`
/// (canonical numbering of [`build_eta`]) to the image under `θ₂∘η` of the
/// `c`-th edge from the representative `i` into `Gj`, and `θ₁` is the unique
/// map with `η̄∘θ₁ = θ₂∘η`.
pub fn theorem38_square(
    eta: &OneBlockCode,
    phi: &PermutationAction,
    psi: &PermutationAction,
    pairing: &GroupPairing,
) -> Result<ActionFactorSquare> {
    if eta.source() != phi.presentation() || eta.target() != psi.presentation() {
        return Err(Error::InvalidCode("code endpoints differ from the acted-on presentations".into()));
    }
    if let Some((first, second)) = eta.right_resolving_witness() {
        return Err(Error::NotRightResolving { first, second });
    }
    for (t, &(g, h)) in pairing.pairs().iter().enumerate() {
        for e in eta.source().edges() {
            if eta.apply(&phi.act_edge(g, &e)) != psi.act_edge(h, &eta.apply(&e)) {
                return Err(Error::NotIntertwining { element: t, edge: e });
            }
        }
    }
    let canonical = build_eta(phi)?;
    let theta2 = lift_ranked_eta(eta, &canonical, psi)?;
    let rp = right_reduce(phi)?;
    let mut bar = BTreeMap::new();
    for orbit in &rp.orbits {
        for e in phi.presentation().out_edges(orbit[0]) {
            bar.insert(canonical.apply(&e), theta2.apply(&eta.apply(&e)));
        }
    }
    let eta_bar = OneBlockCode::new(canonical.target().clone(), theta2.target().clone(), bar)?;
    let mut inverse: BTreeMap<(usize, Edge), Edge> = BTreeMap::new();
    for (x, y) in eta_bar.map() {
        inverse.insert((x.from, *y), *x);
    }
    let mut lift = BTreeMap::new();
    for e in phi.presentation().edges() {
        let from = canonical.state_map()[e.from];
        let y = theta2.apply(&eta.apply(&e));
        match inverse.get(&(from, y)) {
            Some(x) if x.to == canonical.state_map()[e.to] => lift.insert(e, *x),
            _ => return Err(Error::NoCommutingLift(e)),
        };
    }
    let theta1 = OneBlockCode::new(phi.presentation().clone(), canonical.target().clone(), lift)?;
    let square = ActionFactorSquare { eta: eta.clone(), eta_bar, theta1, theta2 };
    if !square.all_right_resolving() {
        let (first, second) = [&square.eta_bar, &square.theta1, &square.theta2]
            .iter()
            .find_map(|c| c.right_resolving_witness())
            .expect("some map failed");
        return Err(Error::NotRightResolving { first, second });
    }
    if !square.commutes() {
        return Err(Error::SseFailed("square does not commute".into()));
    }
    Ok(square)
}

/// The factor map `X_B -> X_ψ` used as `θ₂` in [`theorem38_square`].
fn lift_ranked_eta(eta: &OneBlockCode, canonical: &OneBlockCode, psi: &PermutationAction) -> Result<OneBlockCode> {
    let reduced = right_reduce(psi)?;
    let target = SftPresentation::new(reduced.matrix.clone())?;
    let q = psi.presentation();
    let mut orbit_of = vec![0; q.dim()];
    for (o, members) in reduced.orbits.iter().enumerate() {
        for &k in members {
            orbit_of[k] = o;
        }
    }
    let source = eta.source();
    let mut preimages: Vec<Vec<usize>> = vec![Vec::new(); q.dim()];
    for (i, &s) in eta.state_map().iter().enumerate() {
        preimages[s].push(i);
    }
    let mut map = BTreeMap::new();
    for members in &reduced.orbits {
        let s0 = members[0];
        // Key of an edge f from s0: the φ-orbit reached by its lift from
        // each preimage of s0 (usize::MAX where there is none).
        let key = |f: &Edge| -> Vec<usize> {
            preimages[s0]
                .iter()
                .map(|&i| {
                    source
                        .out_edges(i)
                        .into_iter()
                        .find(|e| eta.apply(e) == *f)
                        .map_or(usize::MAX, |e| canonical.state_map()[e.to])
                })
                .collect()
        };
        let mut ranked: Vec<(usize, Vec<usize>, Edge)> =
            q.out_edges(s0).into_iter().map(|f| (orbit_of[f.to], key(&f), f)).collect();
        ranked.sort();
        let mut rank: BTreeMap<usize, usize> = BTreeMap::new();
        let mut at_rep = BTreeMap::new();
        for (o, _, f) in ranked {
            let c = rank.entry(o).or_insert(0);
            at_rep.insert(f, Edge::new(orbit_of[s0], o, *c));
            *c += 1;
        }
        for &s in members {
            let h = (0..psi.group().order())
                .find(|&h| psi.act_state(h, s0) == s)
                .expect("orbit members are images of the representative");
            let back = psi.group().inverse(h);
            for f in q.out_edges(s) {
                map.insert(f, at_rep[&psi.act_edge(back, &f)]);
            }
        }
    }
    OneBlockCode::new(q.clone(), target, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::char_poly_reciprocal;
    use crate::sft::higher_block;
    use crate::snf::bowen_franks;

    fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::new(rows).unwrap()
    }

    fn r(rows: Vec<Vec<i64>>) -> RectMatrix {
        RectMatrix::new(rows).unwrap()
    }

    #[test]
    fn verify_examples() {
        let a = m(vec![vec![1, 1], vec![1, 0]]);
        assert!(verify_elementary_sse(&ElementarySse::reflexive(&a)).unwrap());
        let e = ElementarySse {
            a: m(vec![vec![2]]),
            b: m(vec![vec![1, 1], vec![1, 1]]),
            r: r(vec![vec![1, 1]]),
            s: r(vec![vec![1], vec![1]]),
        };
        assert!(verify_elementary_sse(&e).unwrap());
        let e = ElementarySse {
            a: m(vec![vec![1]]),
            b: m(vec![vec![1, 1], vec![0, 0]]),
            r: r(vec![vec![1, 1]]),
            s: r(vec![vec![1], vec![0]]),
        };
        assert!(verify_elementary_sse(&e).unwrap());
        let bad =
            ElementarySse { a: m(vec![vec![1]]), b: m(vec![vec![1]]), r: r(vec![vec![1, 1]]), s: r(vec![vec![1]]) };
        assert!(matches!(verify_elementary_sse(&bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn golden_mean_out_split() {
        let a = fixtures::golden_mean_trivial();
        let d = SplitData { direction: Direction::Out, partitions: vec![vec![vec![0], vec![1]], vec![vec![0]]] };
        let s = out_split(&a, &d).unwrap();
        assert!(s.action.matrix().same_entries(&m(vec![vec![1, 1, 0], vec![0, 0, 1], vec![1, 1, 0]])));
        assert_eq!(s.parent, vec![0, 0, 1]);
        let c = induced_conjugacy(&s.certificate).unwrap();
        assert_eq!(c.forward.len(), 3);
        assert!(c.check_paths(8, 100_000).unwrap());
    }

    #[test]
    fn golden_mean_in_split() {
        let a = fixtures::golden_mean_trivial();
        let d = SplitData { direction: Direction::In, partitions: vec![vec![vec![0], vec![1]], vec![vec![0]]] };
        let s = in_split(&a, &d).unwrap();
        assert!(s.action.matrix().same_entries(&m(vec![vec![1, 0, 1], vec![1, 0, 1], vec![0, 1, 0]])));
        assert!(induced_conjugacy(&s.certificate).unwrap().check_paths(8, 100_000).unwrap());
    }

    #[test]
    fn trivial_split_is_identity_shaped() {
        for dir in [Direction::Out, Direction::In] {
            let a = fixtures::z4_six_state();
            let s = state_split(&a, &SplitData::trivial(a.presentation(), dir)).unwrap();
            assert!(s.action.matrix().same_entries(a.matrix()));
            let unit = if dir == Direction::Out { &s.certificate.r } else { &s.certificate.s };
            assert_eq!(unit.rows(), RectMatrix::identity(6).rows());
        }
    }

    #[test]
    fn swap_split_transports_action() {
        let a = fixtures::full_two_shift_swap();
        let d = SplitData::singletons(a.presentation(), Direction::Out);
        let s = out_split(&a, &d).unwrap();
        assert_eq!(s.action.dim(), 4);
        assert_eq!(s.action.group().element(1).images(), &[3, 2, 1, 0]);
        let t = lemma35_transport(
            &s.certificate,
            &a,
            &s.action,
            &GroupPairing::identity(a.group(), s.action.group()).unwrap(),
        )
        .unwrap();
        assert!(t.a.same_entries(&m(vec![vec![2]])));
        assert!(t.b.same_entries(&m(vec![vec![1, 1], vec![1, 1]])));
    }

    #[test]
    fn incompatible_split_rejected() {
        let a = fixtures::full_two_shift_swap();
        let d = SplitData { direction: Direction::Out, partitions: vec![vec![vec![0], vec![1]], vec![vec![0, 1]]] };
        assert!(matches!(out_split(&a, &d), Err(Error::IncompatibleSplit { element: 1, .. })));
    }

    #[test]
    fn uniqueness_failure() {
        let e = ElementarySse {
            a: m(vec![vec![2]]),
            b: m(vec![vec![1, 1], vec![1, 1]]),
            r: r(vec![vec![1, 1]]),
            s: r(vec![vec![1], vec![1]]),
        };
        assert!(matches!(induced_conjugacy(&e), Err(Error::NotUniqueState { count: 2, .. })));
    }

    #[test]
    fn identity_conjugacy() {
        let a = m(vec![vec![1, 1], vec![1, 0]]);
        let e = ElementarySse { a: a.clone(), b: a.clone(), r: RectMatrix::identity(2), s: a.to_rect() };
        let c = induced_conjugacy(&e).unwrap();
        assert_eq!(c.apply_forward(&[0, 1, 0, 0]), Some(vec![0, 1, 0]));
        assert!(c.check_paths(8, 100_000).unwrap());
    }

    #[test]
    fn transport_reflexive() {
        let a = fixtures::z4_six_state();
        let e = ElementarySse::reflexive(a.matrix());
        let pairing = GroupPairing::identity(a.group(), a.group()).unwrap();
        let t = lemma35_transport(&e, &a, &a, &pairing).unwrap();
        let rp = right_reduce(&a).unwrap();
        assert_eq!(t.r.rows(), rp.matrix.rows());
        assert_eq!(t.s.rows(), RectMatrix::identity(2).rows());
    }

    #[test]
    fn transport_trivial_groups_returns_input() {
        let a = fixtures::golden_mean_trivial();
        let d = SplitData { direction: Direction::Out, partitions: vec![vec![vec![0], vec![1]], vec![vec![0]]] };
        let s = out_split(&a, &d).unwrap();
        let pairing = GroupPairing::identity(a.group(), s.action.group()).unwrap();
        let t = lemma35_transport(&s.certificate, &a, &s.action, &pairing).unwrap();
        assert_eq!(t.r, s.certificate.r);
        assert_eq!(t.s, s.certificate.s);
    }

    #[test]
    fn intertwining_failure_reported() {
        // The swap on one side paired with the identity on the other.
        let b = fixtures::three_state_swap();
        let e = ElementarySse::reflexive(b.matrix());
        let pairing = GroupPairing::from_generators(b.group(), b.group(), &[(1, 0)], 16).unwrap();
        assert!(matches!(lemma35_transport(&e, &b, &b, &pairing), Err(Error::IntertwiningFailed { .. })));
    }

    #[test]
    fn higher_block_via_splits_matches() {
        for (name, a) in fixtures::all() {
            for n in 2..=3 {
                let (steps, chain) = action_higher_block(&a, n).unwrap();
                let last = &steps.last().unwrap().action;
                let (hb, _) = higher_block(a.presentation(), n).unwrap();
                assert!(last.matrix().same_entries(hb.matrix()), "{name} n={n}");
                assert!(chain.verify().unwrap());
                let t = transport_splits(&a, &steps).unwrap();
                assert!(t.verify().unwrap());
                let (x, y) = (t.source().unwrap(), t.target().unwrap());
                assert_eq!(char_poly_reciprocal(x), char_poly_reciprocal(y), "{name}");
                assert_eq!(bowen_franks(x), bowen_franks(y), "{name}");
            }
        }
    }

    #[test]
    fn square_for_identity() {
        for (name, a) in fixtures::all() {
            let id = OneBlockCode::identity(a.presentation());
            let pairing = GroupPairing::identity(a.group(), a.group()).unwrap();
            let sq = theorem38_square(&id, &a, &a, &pairing).unwrap();
            assert!(sq.commutes(), "{name}");
            assert_eq!(sq.theta1, sq.theta2);
            for (x, y) in sq.eta_bar.map() {
                assert_eq!(x, y, "{name}");
            }
        }
    }

    #[test]
    fn square_for_in_split_amalgamation() {
        for (name, a) in fixtures::all() {
            let d = SplitData::singletons(a.presentation(), Direction::In);
            let s = in_split(&a, &d).unwrap();
            let code = amalgamation_code(&a, &s).unwrap();
            assert!(code.is_right_resolving(), "{name}");
            let pairing = GroupPairing::identity(s.action.group(), a.group()).unwrap();
            let sq = theorem38_square(&code, &s.action, &a, &pairing).unwrap();
            assert!(sq.commutes() && sq.all_right_resolving(), "{name}");
        }
    }

    #[test]
    fn out_split_amalgamation_is_left_resolving_only() {
        let a = fixtures::full_two_shift_swap();
        let s = out_split(&a, &SplitData::singletons(a.presentation(), Direction::Out)).unwrap();
        let code = amalgamation_code(&a, &s).unwrap();
        assert!(code.left_resolving_witness().is_none());
        assert!(code.right_resolving_witness().is_some());
    }

    #[test]
    fn square_rejects_state_identification() {
        let a = fixtures::z4_six_state();
        let b = fixtures::z4_five_state();
        let code =
            OneBlockCode::from_state_map(a.presentation(), b.presentation(), &fixtures::z4_identification_states())
                .unwrap();
        let pairing = GroupPairing::identity(a.group(), b.group()).unwrap();
        match theorem38_square(&code, &a, &b, &pairing) {
            Err(Error::NotRightResolving { first, second }) => {
                assert_eq!((first, second), (Edge::simple(2, 0), Edge::simple(2, 1)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
