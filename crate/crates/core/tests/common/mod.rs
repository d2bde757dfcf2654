//! Random permutation actions and action-compatible splittings.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sftgroup::action::{
    group_from_generators, orbit_structure, validate_action, PermGroup, Permutation, PermutationAction,
};
use sftgroup::matrix::IntMatrix;
use sftgroup::sft::{is_irreducible, trim_essential, SftPresentation};
use sftgroup::sse::{Direction, SplitData};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// A random group of order at most `max_order` acting on `n` points.
pub fn random_group(rng: &mut ChaCha8Rng, n: usize, max_order: usize) -> PermGroup {
    loop {
        let count = rng.gen_range(0..=2);
        let gens: Vec<Permutation> = (0..count).map(|_| random_permutation(rng, n)).collect();
        if let Ok(g) = group_from_generators(n, &gens, max_order) {
            return g;
        }
    }
}

/// A random 0-1 matrix invariant under `group`: a union of orbitals.
fn invariant_matrix(rng: &mut ChaCha8Rng, group: &PermGroup, density: f64) -> Vec<Vec<u32>> {
    let n = group.degree();
    let mut rows = vec![vec![0u32; n]; n];
    let mut seen = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if !seen.insert((i, j)) {
                continue;
            }
            let on = rng.gen_bool(density);
            for p in group.elements() {
                let (a, b) = (p.apply(i), p.apply(j));
                seen.insert((a, b));
                rows[a][b] = u32::from(on);
            }
        }
    }
    rows
}

/// Restricts a group to the states kept by trimming (an invariant set).
fn restrict(group: &PermGroup, origin: &[usize]) -> PermGroup {
    let mut index = vec![usize::MAX; group.degree()];
    for (k, &o) in origin.iter().enumerate() {
        index[o] = k;
    }
    let gens: Vec<Permutation> = group
        .elements()
        .iter()
        .map(|p| Permutation::from_images(origin.iter().map(|&o| index[p.apply(o)]).collect()).unwrap())
        .collect();
    group_from_generators(origin.len(), &gens, group.order()).unwrap()
}

/// A random valid action on an essential presentation with at most
/// `max_states` states and group order at most `max_order`.
pub fn random_action(rng: &mut ChaCha8Rng, max_states: usize, max_order: usize) -> PermutationAction {
    loop {
        let n = rng.gen_range(1..=max_states);
        let group = random_group(rng, n, max_order);
        let density = rng.gen_range(0.3..0.8);
        let rows = invariant_matrix(rng, &group, density);
        let p = trim_essential(&IntMatrix::new(rows).unwrap()).unwrap();
        if p.is_empty() {
            continue;
        }
        let g = restrict(&group, p.origin());
        let p = SftPresentation::new(p.matrix().clone()).unwrap();
        return validate_action(&p, &g).unwrap();
    }
}

pub fn random_irreducible_action(rng: &mut ChaCha8Rng, max_states: usize, max_order: usize) -> PermutationAction {
    loop {
        let a = random_action(rng, max_states, max_order);
        if is_irreducible(a.presentation()).unwrap() {
            return a;
        }
    }
}

/// A random partition of `items`.
fn random_partition(rng: &mut ChaCha8Rng, items: &[usize]) -> Vec<Vec<usize>> {
    let k = rng.gen_range(1..=items.len());
    let mut blocks = vec![Vec::new(); k];
    for &x in items {
        blocks[rng.gen_range(0..k)].push(x);
    }
    blocks.retain(|b| !b.is_empty());
    blocks
}

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        let r = find(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

/// A random split that every group element respects: a partition at each
/// orbit representative, coarsened until its stabilizer permutes the
/// blocks, then carried to the other orbit members.
pub fn random_compatible_split(rng: &mut ChaCha8Rng, a: &PermutationAction, direction: Direction) -> SplitData {
    let p = a.presentation();
    let n = a.dim();
    let os = orbit_structure(a);
    let neighbours = |i: usize| match direction {
        Direction::Out => p.followers(i),
        Direction::In => p.predecessors(i),
    };
    let mut partitions = vec![Vec::new(); n];
    for orbit in &os.orbits {
        let rep = orbit[0];
        let blocks = random_partition(rng, &neighbours(rep));
        let mut parent: Vec<usize> = (0..n).collect();
        for &s in os.stabilizers[rep].elements() {
            for b in &blocks {
                let moved: Vec<usize> = b.iter().map(|&x| a.act_state(s, x)).collect();
                for w in moved.windows(2) {
                    let (x, y) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                    parent[x] = y;
                }
            }
        }
        let mut coarse: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in neighbours(rep) {
            let r = find(&mut parent, x);
            coarse.entry(r).or_default().push(x);
        }
        let coarse: Vec<Vec<usize>> = coarse.into_values().collect();
        for &i in orbit {
            let g = (0..a.group().order()).find(|&g| a.act_state(g, rep) == i).unwrap();
            partitions[i] = coarse.iter().map(|b| b.iter().map(|&x| a.act_state(g, x)).collect()).collect();
        }
    }
    SplitData { direction, partitions }
}
