//! Left and right reduced shifts of a permutation action, their selector
//! matrices, and one-block codes including the right-resolving factor map
//! onto the right reduced shift.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::action::{group_orbits, PermGroup, PermutationAction};
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RectMatrix};
use crate::sft::{Edge, SftPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A reduced shift together with the selectors `U` (orbits × states, picking
/// the least member of each orbit) and `V` (states × orbits, orbit membership).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedShift {
    pub side: Side,
    pub matrix: IntMatrix,
    pub orbits: Vec<Vec<usize>>,
    pub u: RectMatrix,
    pub v: RectMatrix,
}

impl ReducedShift {
    pub fn representative(&self, orbit: usize) -> usize {
        self.orbits[orbit][0]
    }
}

/// Reduces any nonnegative matrix invariant under `group`
/// (`A(gi, gj) = A(i, j)`), parallel edges included.
pub fn reduce_matrix(matrix: &IntMatrix, group: &PermGroup, side: Side) -> Result<ReducedShift> {
    let n = matrix.dim();
    if group.degree() != n {
        return Err(Error::DimensionMismatch(format!("group of degree {} acting on {n} states", group.degree())));
    }
    for (k, p) in group.elements().iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                if matrix.get(p.apply(i), p.apply(j)) != matrix.get(i, j) {
                    return Err(Error::InvarianceViolated { element: k, i, j });
                }
            }
        }
    }
    let (orbits, orbit_of) = group_orbits(group);
    let m = orbits.len();
    let mut rows = vec![vec![BigInt::default(); m]; m];
    for (a, oa) in orbits.iter().enumerate() {
        for (b, ob) in orbits.iter().enumerate() {
            let entry = |x: usize| -> BigInt {
                match side {
                    Side::Right => ob.iter().map(|&k| matrix.get(x, k)).sum(),
                    Side::Left => oa.iter().map(|&k| matrix.get(k, x)).sum(),
                }
            };
            // Right side sums over the column orbit from each row member;
            // left side sums over the row orbit into each column member.
            let members = if side == Side::Right { oa } else { ob };
            let value = entry(members[0]);
            if members.iter().any(|&x| entry(x) != value) {
                return Err(Error::RepresentativeDependence { from: a, to: b });
            }
            rows[a][b] = value;
        }
    }
    let labels: Vec<String> = orbits
        .iter()
        .map(|o| match matrix.labels() {
            Some(ls) => ls[o[0]].clone(),
            None => format!("G{}", o[0] + 1),
        })
        .collect();
    let reduced = IntMatrix::new(rows)?.with_labels(labels)?;
    let mut u = RectMatrix::zeros(m, n);
    let mut v = RectMatrix::zeros(n, m);
    for (a, o) in orbits.iter().enumerate() {
        u.set(a, o[0], BigInt::one());
    }
    for (i, &a) in orbit_of.iter().enumerate() {
        v.set(i, a, BigInt::one());
    }
    Ok(ReducedShift { side, matrix: reduced, orbits, u, v })
}

/// `A_φ(Gi, Gj) = Σ_{k ∈ Gj} A(i, k)`, checked for every member `i` of `Gi`.
pub fn right_reduce(a: &PermutationAction) -> Result<ReducedShift> {
    reduce_matrix(a.matrix(), a.group(), Side::Right)
}

/// `_φA(Gi, Gj) = Σ_{k ∈ Gi} A(k, j)`, checked for every member `j` of `Gj`.
pub fn left_reduce(a: &PermutationAction) -> Result<ReducedShift> {
    reduce_matrix(a.matrix(), a.group(), Side::Left)
}

/// The left reduction of the transposed action is the transpose of the right
/// reduction.
pub fn transpose_duality_check(a: &PermutationAction) -> Result<bool> {
    let left_of_transpose = left_reduce(&a.transpose())?;
    let right = right_reduce(a)?;
    Ok(left_of_transpose.matrix.same_entries(&right.matrix.transpose()))
}

/// A one-block code between edge shifts: a total map on edges that is
/// compatible with a map on states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneBlockCode {
    source: SftPresentation,
    target: SftPresentation,
    map: BTreeMap<Edge, Edge>,
    state_map: Vec<usize>,
}

impl OneBlockCode {
    pub fn new(source: SftPresentation, target: SftPresentation, map: BTreeMap<Edge, Edge>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCode(m));
        for e in source.edges() {
            match map.get(&e) {
                None => return bad(format!("source edge {e} has no image")),
                Some(f) if !target.has_edge(f) => return bad(format!("image {f} of {e} is not a target edge")),
                _ => {}
            }
        }
        if map.len() != source.edges().len() {
            return bad("map has keys outside the source edge alphabet".into());
        }
        let mut state_map = vec![usize::MAX; source.dim()];
        for (e, f) in &map {
            for (s, t) in [(e.from, f.from), (e.to, f.to)] {
                if state_map[s] == usize::MAX {
                    state_map[s] = t;
                } else if state_map[s] != t {
                    return bad(format!("edge {e} breaks the state map at source state {s}"));
                }
            }
        }
        if state_map.contains(&usize::MAX) {
            return bad("a source state carries no edges".into());
        }
        Ok(OneBlockCode { source, target, map, state_map })
    }

    pub fn identity(p: &SftPresentation) -> Self {
        let map = p.edges().into_iter().map(|e| (e, e)).collect();
        OneBlockCode::new(p.clone(), p.clone(), map).expect("identity code")
    }

    /// Edge map of a 0-1 target induced by a map on states.
    pub fn from_state_map(source: &SftPresentation, target: &SftPresentation, states: &[usize]) -> Result<Self> {
        if states.len() != source.dim() {
            return Err(Error::InvalidCode(format!(
                "state map has {} entries for {} source states",
                states.len(),
                source.dim()
            )));
        }
        target.require_zero_one()?;
        let map = source.edges().into_iter().map(|e| (e, Edge::simple(states[e.from], states[e.to]))).collect();
        OneBlockCode::new(source.clone(), target.clone(), map)
    }

    pub fn source(&self) -> &SftPresentation {
        &self.source
    }

    pub fn target(&self) -> &SftPresentation {
        &self.target
    }

    pub fn map(&self) -> &BTreeMap<Edge, Edge> {
        &self.map
    }

    pub fn state_map(&self) -> &[usize] {
        &self.state_map
    }

    pub fn apply(&self, e: &Edge) -> Edge {
        self.map[e]
    }

    /// Two edges with a common initial state and the same image, if any.
    pub fn right_resolving_witness(&self) -> Option<(Edge, Edge)> {
        (0..self.source.dim()).find_map(|i| first_collision(&self.source.out_edges(i), &self.map))
    }

    /// Two edges with a common terminal state and the same image, if any.
    pub fn left_resolving_witness(&self) -> Option<(Edge, Edge)> {
        (0..self.source.dim()).find_map(|j| first_collision(&self.source.in_edges(j), &self.map))
    }

    pub fn is_right_resolving(&self) -> bool {
        self.right_resolving_witness().is_none()
    }

    /// Every target edge is the image of some source edge.
    pub fn is_onto_edges(&self) -> bool {
        let hit: std::collections::BTreeSet<&Edge> = self.map.values().collect();
        self.target.edges().iter().all(|f| hit.contains(f))
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &OneBlockCode) -> Result<OneBlockCode> {
        if then.source != self.target {
            return Err(Error::InvalidCode("codes do not compose".into()));
        }
        let map = self.map.iter().map(|(e, f)| (*e, then.apply(f))).collect();
        OneBlockCode::new(self.source.clone(), then.target.clone(), map)
    }

    /// Image of a path given as an edge sequence.
    pub fn apply_path(&self, path: &[Edge]) -> Vec<Edge> {
        path.iter().map(|e| self.apply(e)).collect()
    }
}

fn first_collision(edges: &[Edge], map: &BTreeMap<Edge, Edge>) -> Option<(Edge, Edge)> {
    let mut seen: BTreeMap<Edge, Edge> = BTreeMap::new();
    for e in edges {
        if let Some(&first) = seen.get(&map[e]) {
            return Some((first, *e));
        }
        seen.insert(map[e], *e);
    }
    None
}

/// The right-resolving factor map from the action's shift onto its right
/// reduced shift. For a state `i` and orbit `Gj`, the edges `(i, k)` with
/// `k ∈ Gj` are taken in increasing order of `k` and sent to the parallel
/// edges `Gi -> Gj` with indices `0, 1, 2, ...`.
pub fn build_eta(a: &PermutationAction) -> Result<OneBlockCode> {
    let reduced = right_reduce(a)?;
    let target = SftPresentation::new(reduced.matrix.clone())?;
    let mut orbit_of = vec![0; a.dim()];
    for (o, members) in reduced.orbits.iter().enumerate() {
        for &k in members {
            orbit_of[k] = o;
        }
    }
    let p = a.presentation();
    let mut map = BTreeMap::new();
    for i in 0..p.dim() {
        let mut rank: BTreeMap<usize, usize> = BTreeMap::new();
        for e in p.out_edges(i) {
            let o = orbit_of[e.to];
            let c = rank.entry(o).or_insert(0);
            map.insert(e, Edge::new(orbit_of[i], o, *c));
            *c += 1;
        }
    }
    OneBlockCode::new(p.clone(), target, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{group_from_generators, validate_action, PermGroup, Permutation};
    use crate::fixtures;
    use crate::matrix::mat_mul;

    fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::new(rows).unwrap()
    }

    #[test]
    fn right_reductions() {
        let r = right_reduce(&fixtures::s3_conjugation_full_shift()).unwrap();
        assert!(r.matrix.same_entries(&m(vec![vec![1, 3, 2], vec![1, 3, 2], vec![1, 3, 2]])));
        assert_eq!(r.matrix.labels().unwrap(), &["()", "(2 3)", "(1 2 3)"]);
        let r = right_reduce(&fixtures::z4_six_state()).unwrap();
        assert!(r.matrix.same_entries(&m(vec![vec![1, 2], vec![2, 1]])));
        assert_eq!(r.matrix.labels().unwrap(), &["G1", "G3"]);
        let gm = fixtures::golden_mean_trivial();
        assert!(right_reduce(&gm).unwrap().matrix.same_entries(gm.matrix()));
    }

    #[test]
    fn left_reductions() {
        let l = left_reduce(&fixtures::z4_six_state()).unwrap();
        assert!(l.matrix.same_entries(&m(vec![vec![1, 1], vec![4, 1]])));
        let l = left_reduce(&fixtures::reducible_swap()).unwrap();
        assert!(l.matrix.same_entries(&m(vec![vec![1, 2], vec![0, 1]])));
        let gm = fixtures::golden_mean_trivial();
        assert!(left_reduce(&gm).unwrap().matrix.same_entries(gm.matrix()));
    }

    #[test]
    fn selectors_recover_right_reduction() {
        for (name, a) in fixtures::all() {
            let r = right_reduce(&a).unwrap();
            let uav = mat_mul(&mat_mul(&r.u, &a.matrix().to_rect()).unwrap(), &r.v).unwrap();
            assert_eq!(uav.to_square().unwrap().rows(), r.matrix.rows(), "{name}");
            let uv = mat_mul(&r.u, &r.v).unwrap();
            assert_eq!(uv, RectMatrix::identity(r.orbits.len()), "{name}");
        }
    }

    #[test]
    fn duality() {
        for (name, a) in fixtures::all() {
            assert!(transpose_duality_check(&a).unwrap(), "{name}");
        }
    }

    #[test]
    fn weighted_reduction_checks_invariance() {
        let g = group_from_generators(2, &[Permutation::parse_cycles("(1 2)", 2).unwrap()], 4).unwrap();
        let err = reduce_matrix(&m(vec![vec![2, 1], vec![0, 2]]), &g, Side::Right).unwrap_err();
        assert!(matches!(err, Error::InvarianceViolated { .. }));
        let ok = reduce_matrix(&m(vec![vec![2, 1], vec![1, 2]]), &g, Side::Right).unwrap();
        assert!(ok.matrix.same_entries(&m(vec![vec![3]])));
    }

    #[test]
    fn eta_on_swapped_full_shift() {
        let eta = build_eta(&fixtures::full_two_shift_swap()).unwrap();
        assert!(eta.target().matrix().same_entries(&m(vec![vec![2]])));
        assert_eq!(eta.apply(&Edge::simple(0, 0)), Edge::new(0, 0, 0));
        assert_eq!(eta.apply(&Edge::simple(0, 1)), Edge::new(0, 0, 1));
        assert!(eta.is_right_resolving());
        assert!(eta.is_onto_edges());
    }

    #[test]
    fn eta_on_three_state_swap() {
        let a = fixtures::three_state_swap();
        let eta = build_eta(&a).unwrap();
        assert!(eta.target().matrix().same_entries(&m(vec![vec![1, 2], vec![1, 1]])));
        assert!(eta.is_right_resolving());
        assert!(eta.is_onto_edges());
        // The two edges 1 -> 2 and 1 -> 3 become the parallel edges b and c.
        assert_eq!(eta.apply(&Edge::simple(0, 1)), Edge::new(0, 1, 0));
        assert_eq!(eta.apply(&Edge::simple(0, 2)), Edge::new(0, 1, 1));
    }

    #[test]
    fn eta_trivial_group_is_identity_shaped() {
        let p = SftPresentation::new(m(vec![vec![1, 1, 0], vec![0, 0, 1], vec![1, 1, 0]])).unwrap();
        let a = validate_action(&p, &PermGroup::trivial(3)).unwrap();
        let eta = build_eta(&a).unwrap();
        for e in p.edges() {
            assert_eq!(eta.apply(&e), e);
        }
    }

    #[test]
    fn code_validation() {
        let p = SftPresentation::new(m(vec![vec![1, 1], vec![1, 1]])).unwrap();
        let q = SftPresentation::new(m(vec![vec![2]])).unwrap();
        let mut map: BTreeMap<Edge, Edge> = p.edges().into_iter().map(|e| (e, Edge::new(0, 0, 0))).collect();
        assert!(OneBlockCode::new(p.clone(), q.clone(), map.clone()).is_ok());
        map.insert(Edge::simple(0, 0), Edge::new(0, 0, 5));
        assert!(OneBlockCode::new(p.clone(), q.clone(), map.clone()).is_err());
        map.remove(&Edge::simple(0, 0));
        assert!(OneBlockCode::new(p, q, map).is_err());
    }

    #[test]
    fn state_identification_is_not_right_resolving() {
        let a = fixtures::z4_six_state();
        let b = fixtures::z4_five_state();
        let code =
            OneBlockCode::from_state_map(a.presentation(), b.presentation(), &fixtures::z4_identification_states())
                .unwrap();
        assert_eq!(code.right_resolving_witness(), Some((Edge::simple(2, 0), Edge::simple(2, 1))));
        assert!(code.is_onto_edges());
    }
}
