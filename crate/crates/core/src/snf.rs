//! Smith normal form and Bowen-Franks groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{IntMatrix, RectMatrix};

/// A finitely generated abelian group `Z/d_1 + ... + Z/d_k + Z^r` with
/// `d_1 | d_2 | ... | d_k` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroupInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroupInvariants {
    pub fn is_valid(&self) -> bool {
        let two = BigInt::from(2);
        self.torsion.iter().all(|d| *d >= two) && self.torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Invariant factors and free rank of the cokernel of `m` (viewed as a map
/// `Z^cols -> Z^rows`). Pivots are chosen by minimal absolute value.
#[allow(clippy::needless_range_loop)]
pub fn smith_normal_form(m: &RectMatrix) -> AbelianGroupInvariants {
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut a = m.rows();
    let mut diag = Vec::new();
    for t in 0..nr.min(nc) {
        while let Some((pi, pj)) = min_abs_entry(&a, t) {
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &p;
                for j in t..nc {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &p;
                for i in t..nr {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Row and column are clear; the pivot must divide the rest.
            let offender = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !(&a[i][j] % &p).is_zero()));
            match offender {
                Some(i) => {
                    for j in t..nc {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_zero() {
            break;
        }
        diag.push(a[t][t].abs());
    }
    let rank = diag.len();
    let torsion: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_one()).collect();
    debug_assert!(torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    AbelianGroupInvariants { torsion, free_rank: nr - rank }
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|b| ax < b.2) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// The Bowen-Franks group `Z^n / (I - A) Z^n`.
pub fn bowen_franks(a: &IntMatrix) -> AbelianGroupInvariants {
    let i_minus_a = RectMatrix::identity(a.dim()).sub(&a.to_rect()).expect("same shape");
    smith_normal_form(&i_minus_a)
}
