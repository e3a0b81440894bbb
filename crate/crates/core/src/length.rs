//! Minimal number of squares summing to an element.
//!
//! Any representation `t = sum omega_i^2` has every `omega_i^2 ⪯ t`, so the
//! squares below the target are a complete candidate set. After subtracting
//! one square, the candidates for the residue are those of the parent that
//! still fit below the residue. Search is iterative deepening on the number
//! of squares; residues proven unreachable within a budget are memoised.

use std::collections::HashMap;

use num::{BigInt, Integer};
use serde::{Deserialize, Serialize};

use crate::element::OrderElement;
use crate::error::{Error, Result};
use crate::squares::{squares_below_bruteforce, SquareCandidate, SquareRecord};

/// Default cap on the number of squares tried.
pub const DEFAULT_MAX_M: usize = 7;

const MEMO_CAPACITY: usize = 1 << 20;

/// Squares summing to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub target: OrderElement,
    pub parts: Vec<SquareCandidate>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Recomputes every square from its root and checks the sum and the order.
    pub fn is_valid(&self) -> bool {
        let mut sum = OrderElement::zero(self.target.field());
        for p in &self.parts {
            let sq = p.root.square();
            if sq != p.square || !self.target.totally_geq(&sq) {
                return false;
            }
            sum = &sum + &sq;
        }
        sum == self.target
    }

    pub fn records(&self) -> Vec<SquareRecord> {
        self.parts.iter().map(SquareRecord::from).collect()
    }
}

/// Result of a length query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthResult {
    pub length: usize,
    pub witness: Decomposition,
}

/// Serializable view of a [`LengthResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthRecord {
    pub target: String,
    pub length: usize,
    pub witness: Vec<SquareRecord>,
}

impl From<&LengthResult> for LengthRecord {
    fn from(r: &LengthResult) -> Self {
        Self {
            target: r.witness.target.coord_string(),
            length: r.length,
            witness: r.witness.records(),
        }
    }
}

struct Solver {
    /// Decreasing trace.
    candidates: Vec<SquareCandidate>,
    traces: Vec<BigInt>,
    /// Residue -> largest budget known to be insufficient.
    failed: HashMap<OrderElement, usize>,
}

impl Solver {
    fn new(mut candidates: Vec<SquareCandidate>) -> Self {
        candidates.sort_by(|p, q| q.square.trace().cmp(&p.square.trace()).then_with(|| p.cmp(q)));
        let traces = candidates.iter().map(|c| c.square.trace()).collect();
        Self {
            candidates,
            traces,
            failed: HashMap::new(),
        }
    }

    fn fits(&self, residue: &OrderElement, parent: &[usize]) -> Vec<usize> {
        parent
            .iter()
            .copied()
            .filter(|&i| residue.totally_geq(&self.candidates[i].square))
            .collect()
    }

    fn search(&mut self, residue: &OrderElement, allowed: &[usize], budget: usize) -> Option<Vec<usize>> {
        if residue.is_zero() {
            return Some(Vec::new());
        }
        if budget == 0 || allowed.is_empty() {
            return None;
        }
        if self.failed.get(residue).is_some_and(|&b| b >= budget) {
            return None;
        }
        // each part contributes at most the largest remaining trace
        let max_trace = allowed.iter().map(|&i| &self.traces[i]).max().expect("nonempty");
        if residue.trace() > max_trace * BigInt::from(budget) {
            self.mark_failed(residue, budget);
            return None;
        }
        for &i in allowed {
            let next = residue - &self.candidates[i].square;
            let next_allowed = self.fits(&next, allowed);
            if let Some(mut parts) = self.search(&next, &next_allowed, budget - 1) {
                parts.push(i);
                return Some(parts);
            }
        }
        self.mark_failed(residue, budget);
        None
    }

    fn mark_failed(&mut self, residue: &OrderElement, budget: usize) {
        if self.failed.len() >= MEMO_CAPACITY {
            self.failed.clear();
        }
        let entry = self.failed.entry(residue.clone()).or_insert(0);
        *entry = (*entry).max(budget);
    }
}

/// Least `m <= max_m` with `target` a sum of `m` squares drawn from
/// `candidates`, with a witness. The candidate list must contain every
/// square that may appear; `None` if no representation exists within `max_m`.
pub fn length_with_candidates(
    target: &OrderElement,
    candidates: Vec<SquareCandidate>,
    max_m: usize,
) -> Option<LengthResult> {
    let mut solver = Solver::new(candidates);
    let all: Vec<usize> = (0..solver.candidates.len()).collect();
    let allowed = solver.fits(target, &all);
    for m in 0..=max_m {
        if let Some(idx) = solver.search(target, &allowed, m) {
            let parts = idx.into_iter().rev().map(|i| solver.candidates[i].clone()).collect();
            let witness = Decomposition {
                target: target.clone(),
                parts,
            };
            debug_assert!(witness.is_valid());
            return Some(LengthResult { length: m, witness });
        }
    }
    None
}

/// Exact Pythagoras length of a single element, if at most `max_m`.
pub fn pythagoras_length(target: &OrderElement, max_m: usize) -> Result<Option<LengthResult>> {
    if !target.is_zero() && !target.is_totally_positive() {
        return Err(Error::NotTotallyPositive(target.to_string()));
    }
    let candidates = squares_below_bruteforce(target)?;
    Ok(length_with_candidates(target, candidates, max_m))
}

/// Membership in the set of sums of squares. A nonzero square has trace at
/// least 3, so no representation uses more than `trace / 3` parts.
pub fn is_sum_of_squares(target: &OrderElement) -> bool {
    if target.is_zero() {
        return true;
    }
    if !target.is_totally_positive() {
        return false;
    }
    let cap = target.trace().div_ceil(&BigInt::from(3));
    let cap: usize = cap.try_into().unwrap_or(usize::MAX);
    matches!(pythagoras_length(target, cap), Ok(Some(_)))
}
