//! All squares `omega^2` totally below a target, found two independent ways.
//!
//! The brute-force route bounds every conjugate of `omega` by the square root
//! of the matching conjugate of the target and enumerates the resulting box.
//! The structured route only looks at signed unit multiples of indecomposables
//! and sums of those with equal signature.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::element::{OrderElement, Signature};
use crate::error::{Error, Result};
use crate::indecomposable::{indecomposables_below, SignedIndecomposable};
use crate::interval::sqrt_upper;
use crate::lattice;

/// A root `omega` (first nonzero coordinate positive) and its square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareCandidate {
    pub root: OrderElement,
    pub square: OrderElement,
}

impl SquareCandidate {
    pub fn new(root: &OrderElement) -> Self {
        let root = root.canonical_sign();
        let square = root.square();
        Self { root, square }
    }
}

impl PartialOrd for SquareCandidate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SquareCandidate {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.square.cmp(&other.square).then_with(|| self.root.cmp(&other.root))
    }
}

/// Coordinates of a square, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareRecord {
    pub root: String,
    pub square: String,
}

impl From<&SquareCandidate> for SquareRecord {
    fn from(c: &SquareCandidate) -> Self {
        Self {
            root: c.root.coord_string(),
            square: c.square.coord_string(),
        }
    }
}

fn check_target(target: &OrderElement) -> Result<()> {
    if target.is_zero() || target.is_totally_positive() {
        Ok(())
    } else {
        Err(Error::NotTotallyPositive(target.to_string()))
    }
}

/// Every nonzero `omega^2 ⪯ target`, one canonical root per square, sorted.
pub fn squares_below_bruteforce(target: &OrderElement) -> Result<Vec<SquareCandidate>> {
    check_target(target)?;
    if target.is_zero() {
        return Ok(Vec::new());
    }
    let bounds = target.embeddings().map(|e| sqrt_upper(e.hi(), 24));
    let boxed = lattice::elements_in_conjugate_box(target.field(), &lattice::symmetric_bounds(bounds));
    let mut out: Vec<SquareCandidate> = boxed
        .into_par_iter()
        .filter(|w| !w.is_zero() && *w == w.canonical_sign())
        .filter_map(|w| {
            let sq = w.square();
            target.totally_geq(&sq).then_some(SquareCandidate { root: w, square: sq })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Intermediate results of the structured enumeration.
#[derive(Clone, Debug)]
pub struct StructuredSquares {
    /// Signed indecomposables `beta` with `beta^2 ⪯ target` (both signs).
    pub indecomposables: Vec<SignedIndecomposable>,
    /// Per signature, the sums of at least two indecomposables of that
    /// signature whose square is still below the target.
    pub sums: BTreeMap<Signature, BTreeSet<OrderElement>>,
    pub squares: Vec<SquareCandidate>,
}

impl StructuredSquares {
    /// Squares of indecomposables that are units.
    pub fn unit_squares(&self) -> BTreeSet<OrderElement> {
        self.indecomposables
            .iter()
            .filter(|b| b.element.is_unit())
            .map(|b| b.square.clone())
            .collect()
    }

    /// Squares of indecomposables that are not units.
    pub fn non_unit_squares(&self) -> BTreeSet<OrderElement> {
        self.indecomposables
            .iter()
            .filter(|b| !b.element.is_unit())
            .map(|b| b.square.clone())
            .collect()
    }

    /// Squares of decomposable roots.
    pub fn sum_squares(&self) -> BTreeSet<OrderElement> {
        self.sums.values().flatten().map(OrderElement::square).collect()
    }
}

/// Closure of `generators` under addition, keeping only sums whose square is
/// below `target`. Same-signature summands multiply to totally positive
/// elements, so every partial sum of an admissible sum is admissible.
fn admissible_sums(target: &OrderElement, generators: &BTreeSet<OrderElement>) -> BTreeSet<OrderElement> {
    let mut sums = BTreeSet::new();
    let mut frontier: Vec<OrderElement> = generators.iter().cloned().collect();
    while let Some(current) = frontier.pop() {
        for g in generators {
            let s = &current + g;
            if sums.contains(&s) || generators.contains(&s) {
                continue;
            }
            if target.totally_geq(&s.square()) {
                sums.insert(s.clone());
                frontier.push(s);
            }
        }
    }
    sums
}

pub fn structured_squares(target: &OrderElement, exp_box: u32) -> Result<StructuredSquares> {
    check_target(target)?;
    if target.is_zero() {
        return Ok(StructuredSquares {
            indecomposables: Vec::new(),
            sums: BTreeMap::new(),
            squares: Vec::new(),
        });
    }
    let indecomposables = indecomposables_below(target, exp_box);
    let mut by_sig: BTreeMap<Signature, BTreeSet<OrderElement>> = BTreeMap::new();
    for b in &indecomposables {
        by_sig.entry(b.signature).or_default().insert(b.element.clone());
    }
    let sums: BTreeMap<Signature, BTreeSet<OrderElement>> = by_sig
        .iter()
        .map(|(sig, gens)| (*sig, admissible_sums(target, gens)))
        .collect();

    let mut seen = BTreeSet::new();
    let mut squares: Vec<SquareCandidate> = indecomposables
        .iter()
        .map(|b| &b.element)
        .chain(sums.values().flatten())
        .map(SquareCandidate::new)
        .filter(|c| seen.insert(c.square.clone()))
        .collect();
    squares.sort();
    Ok(StructuredSquares {
        indecomposables,
        sums,
        squares,
    })
}

/// Squares below the target assembled from totally positive units,
/// squares of signed indecomposables and squares of their same-signature sums.
pub fn squares_below_structured(target: &OrderElement, exp_box: u32) -> Result<Vec<SquareCandidate>> {
    Ok(structured_squares(target, exp_box)?.squares)
}
