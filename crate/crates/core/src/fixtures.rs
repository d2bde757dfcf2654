//! Worked examples used throughout the tests, the acceptance suite and the CLI.
//!
//! State indices are 0-based here; comments give the 1-based names.

use crate::action::{group_from_generators, validate_action, PermGroup, Permutation, PermutationAction};
use crate::matrix::IntMatrix;
use crate::repshift::FiniteGroupTable;
use crate::sft::SftPresentation;

fn action(rows: Vec<Vec<u32>>, gens: &[&str]) -> PermutationAction {
    let p = SftPresentation::new(IntMatrix::new(rows).expect("fixture matrix")).expect("essential");
    let n = p.dim();
    let gens: Vec<Permutation> =
        gens.iter().map(|g| Permutation::parse_cycles(g, n).expect("fixture permutation")).collect();
    let group = group_from_generators(n, &gens, 1 << 16).expect("fixture group");
    validate_action(&p, &group).expect("fixture action")
}

/// The full shift on the six elements of S3 with S3 acting by conjugation
/// `v -> g^-1 v g`. States are the elements of S3 in the order of
/// [`FiniteGroupTable::symmetric`], so the orbits come out as
/// `[()], [transpositions], [3-cycles]`.
pub fn s3_conjugation_full_shift() -> PermutationAction {
    let s3 = FiniteGroupTable::symmetric(3);
    let n = s3.order();
    let matrix =
        IntMatrix::new(vec![vec![1u32; n]; n]).and_then(|m| m.with_labels(s3.names().to_vec())).expect("full shift");
    let p = SftPresentation::new(matrix).expect("essential");
    let states: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let group = s3.conjugation_on_tuples(&states).expect("conjugation permutes the elements");
    validate_action(&p, &group).expect("conjugation preserves the full shift")
}

/// `[[1,1,1],[1,1,0],[1,0,1]]` with the swap of states 2 and 3.
pub fn three_state_swap() -> PermutationAction {
    action(vec![vec![1, 1, 1], vec![1, 1, 0], vec![1, 0, 1]], &["(2 3)"])
}

/// The six-state matrix with `Z/4` generated by `(1 2)(3 4 5 6)`.
pub fn z4_six_state() -> PermutationAction {
    action(
        vec![
            vec![1, 0, 1, 0, 1, 0],
            vec![0, 1, 0, 1, 0, 1],
            vec![1, 1, 1, 0, 0, 0],
            vec![1, 1, 0, 1, 0, 0],
            vec![1, 1, 0, 0, 1, 0],
            vec![1, 1, 0, 0, 0, 1],
        ],
        &["(1 2)(3 4 5 6)"],
    )
}

/// The five-state factor of [`z4_six_state`] obtained by identifying its
/// first two states, with `Z/4` generated by `(2 3 4 5)`.
pub fn z4_five_state() -> PermutationAction {
    action(
        vec![vec![1, 1, 1, 1, 1], vec![1, 1, 0, 0, 0], vec![1, 0, 1, 0, 0], vec![1, 0, 0, 1, 0], vec![1, 0, 0, 0, 1]],
        &["(2 3 4 5)"],
    )
}

/// State map of the identification `z4_six_state -> z4_five_state`.
pub fn z4_identification_states() -> Vec<usize> {
    vec![0, 0, 1, 2, 3, 4]
}

/// Reducible example `[[1,0,1],[0,1,1],[0,0,1]]` with the swap `(1 2)`.
pub fn reducible_swap() -> PermutationAction {
    action(vec![vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 1]], &["(1 2)"])
}

/// Full 2-shift with the symbol swap.
pub fn full_two_shift_swap() -> PermutationAction {
    action(vec![vec![1, 1], vec![1, 1]], &["(1 2)"])
}

/// The golden mean shift with the trivial group.
pub fn golden_mean_trivial() -> PermutationAction {
    let p = SftPresentation::new(IntMatrix::new(vec![vec![1, 1], vec![1, 0]]).expect("matrix")).expect("essential");
    validate_action(&p, &PermGroup::trivial(2)).expect("trivial action")
}

/// Every named fixture, for sweeps.
pub fn all() -> Vec<(&'static str, PermutationAction)> {
    vec![
        ("s3-conjugation", s3_conjugation_full_shift()),
        ("three-state-swap", three_state_swap()),
        ("z4-six-state", z4_six_state()),
        ("z4-five-state", z4_five_state()),
        ("reducible-swap", reducible_swap()),
        ("full-two-shift-swap", full_two_shift_swap()),
        ("golden-mean", golden_mean_trivial()),
    ]
}
