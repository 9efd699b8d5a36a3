//! Brute-force referee: enumerates every Wick contraction as a bijection
//! from out-slots to in-slots and counts the connected ones.
//!
//! Nodes are the `m` vertices (two out-slots and two in-slots each), `N`
//! sources (one out-slot each) and `N` sinks (one in-slot each). A
//! contraction is connected when the multigraph with an edge
//! `owner(o) -- owner(sigma(o))` for every out-slot `o` has one component.
//! The raw connected count is divided by `N!`, which is the normalization of
//! the `x^N / N!` expansion of the connected generating function.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::exact::{factorial, ExactInt};
use crate::{Error, Result};

/// Default enumeration budget, in permutations.
pub const DEFAULT_BUDGET: u64 = 4_000_000;

/// Out-slot and in-slot ownership for order `m` with `N` external pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotModel {
    pub m: u32,
    pub legs: u32,
    pub out_owner: Vec<u8>,
    pub in_owner: Vec<u8>,
}

impl SlotModel {
    pub fn new(m: u32, legs: u32) -> Result<Self> {
        let nodes = m + 2 * legs;
        if nodes > 64 {
            return Err(Error::InvalidArgument(format!(
                "slot model supports at most 64 nodes, got {nodes}"
            )));
        }
        let mut out_owner = Vec::new();
        let mut in_owner = Vec::new();
        for v in 0..m as u8 {
            out_owner.extend([v, v]);
            in_owner.extend([v, v]);
        }
        for j in 0..legs as u8 {
            out_owner.push(m as u8 + j);
            in_owner.push((m + legs) as u8 + j);
        }
        Ok(SlotModel {
            m,
            legs,
            out_owner,
            in_owner,
        })
    }

    pub fn slots(&self) -> usize {
        self.out_owner.len()
    }

    pub fn nodes(&self) -> usize {
        (self.m + 2 * self.legs) as usize
    }

    /// Whether the contraction `sigma` (out-slot `i` to in-slot `sigma[i]`)
    /// gives a connected diagram.
    pub fn is_connected(&self, sigma: &[u8]) -> bool {
        let nodes = self.nodes();
        let mut parent = [0u8; 64];
        for (i, p) in parent.iter_mut().enumerate().take(nodes) {
            *p = i as u8;
        }
        fn find(parent: &mut [u8; 64], mut x: u8) -> u8 {
            while parent[x as usize] != x {
                let up = parent[parent[x as usize] as usize];
                parent[x as usize] = up;
                x = up;
            }
            x
        }
        let mut components = nodes;
        for (o, &i) in sigma.iter().enumerate() {
            let a = find(&mut parent, self.out_owner[o]);
            let b = find(&mut parent, self.in_owner[i as usize]);
            if a != b {
                parent[a as usize] = b;
                components -= 1;
            }
        }
        components == 1
    }
}

fn check_budget(slots: usize, budget: u64) -> Result<()> {
    let required = factorial(slots as u64);
    if required > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            required: required.to_string(),
            budget,
        });
    }
    Ok(())
}

// lexicographic successor; false after the last permutation
fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Counts (total, connected) over all bijections, split by the image of the
/// first out-slot so the halves can run on separate workers.
fn tally(model: &SlotModel) -> (u64, u64) {
    let k = model.slots();
    if k == 0 {
        // the empty contraction; connected only when there is nothing to connect
        return (1, u64::from(model.nodes() <= 1));
    }
    (0..k as u8)
        .into_par_iter()
        .map(|first| {
            let mut rest: Vec<u8> = (0..k as u8).filter(|&v| v != first).collect();
            let mut sigma = vec![first; k];
            let (mut total, mut connected) = (0u64, 0u64);
            loop {
                sigma[1..].copy_from_slice(&rest);
                total += 1;
                if model.is_connected(&sigma) {
                    connected += 1;
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            (total, connected)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

/// Connected contractions of order `m` with `N` external pairs, divided by
/// `N!`. For `N = 0, m = 0` returns 1 without enumerating.
pub fn brute_force_connected(m: u32, legs: u32, budget: u64) -> Result<ExactInt> {
    if m == 0 && legs == 0 {
        return Ok(BigInt::one());
    }
    let model = SlotModel::new(m, legs)?;
    brute_force_connected_with(&model, budget)
}

/// Same as [`brute_force_connected`] for an explicit (possibly relabeled) slot model.
pub fn brute_force_connected_with(model: &SlotModel, budget: u64) -> Result<ExactInt> {
    check_budget(model.slots(), budget)?;
    let (_, connected) = tally(model);
    let raw = BigInt::from(connected);
    let norm = factorial(u64::from(model.legs));
    if !(&raw % &norm).is_zero() {
        return Err(Error::NonInteger(format!("{raw}/{norm}")));
    }
    Ok(raw / norm)
}

/// Number of enumerated bijections; equals `(2m+N)!`.
pub fn brute_force_total(m: u32, legs: u32, budget: u64) -> Result<ExactInt> {
    let model = SlotModel::new(m, legs)?;
    check_budget(model.slots(), budget)?;
    Ok(BigInt::from(tally(&model).0))
}

/// Whether `(2m+N)!` fits in `budget`.
pub fn within_budget(m: u32, legs: u32, budget: u64) -> bool {
    factorial(u64::from(2 * m + legs))
        .to_u64()
        .is_some_and(|v| v <= budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactInt {
        BigInt::from(v)
    }

    #[test]
    fn small_connected_counts() {
        assert_eq!(brute_force_connected(0, 1, DEFAULT_BUDGET).unwrap(), int(1));
        assert_eq!(brute_force_connected(0, 2, DEFAULT_BUDGET).unwrap(), int(0));
        assert_eq!(brute_force_connected(2, 0, DEFAULT_BUDGET).unwrap(), int(20));
        assert_eq!(brute_force_connected(1, 2, DEFAULT_BUDGET).unwrap(), int(2));
        assert_eq!(brute_force_connected(1, 1, DEFAULT_BUDGET).unwrap(), int(4));
        assert_eq!(brute_force_connected(0, 0, DEFAULT_BUDGET).unwrap(), int(1));
    }

    #[test]
    fn totals() {
        assert_eq!(brute_force_total(1, 1, DEFAULT_BUDGET).unwrap(), int(6));
        assert_eq!(brute_force_total(2, 3, DEFAULT_BUDGET).unwrap(), int(5040));
        assert_eq!(brute_force_total(0, 0, DEFAULT_BUDGET).unwrap(), int(1));
    }

    #[test]
    fn budget_refusal() {
        let err = brute_force_connected(3, 0, 100).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required: "720".into(),
                budget: 100
            }
        );
        assert!(within_budget(3, 0, 720));
        assert!(!within_budget(3, 0, 719));
    }

    #[test]
    fn slot_relabeling_does_not_change_counts() {
        let base = SlotModel::new(2, 1).unwrap();
        let expected = brute_force_connected_with(&base, DEFAULT_BUDGET).unwrap();
        let mut shuffled = base.clone();
        shuffled.out_owner.reverse();
        shuffled.in_owner.rotate_left(2);
        assert_eq!(brute_force_connected_with(&shuffled, DEFAULT_BUDGET).unwrap(), expected);
    }

    #[test]
    fn permutation_successor() {
        let mut p = vec![0u8, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }
}
