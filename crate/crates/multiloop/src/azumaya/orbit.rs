//! Certified GL_n(ℤ)-orbit comparison of Brauer matrices.
//!
//! Invariants go first: the ordered list of normal-form block orders is a
//! congruence invariant, and for n = 2 the action is B ↦ det(g)·B so the
//! sign-canonical block decides completely.  When invariants agree but the
//! normal forms differ, a breadth-first search over words in the standard
//! generators of GL_n(ℤ) (transvections, swaps, a sign flip) looks for a
//! transporting word within a node budget; exhaustion returns `Unknown`
//! rather than guessing.

use super::intmat::IntMatrix;
use super::{skew_normal_form, unimodular_act, BrauerMatrix, QmodZ};
use crate::{Error, Result};
use std::collections::{HashMap, VecDeque};

/// Outcome of an orbit comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitVerdict {
    /// A verified witness g with g·a·gᵀ = b.
    Equivalent(IntMatrix),
    /// A named invariant separating the two classes.
    Distinct(String),
    /// The search budget ran out with invariants equal.
    Unknown,
}

/// One elementary generator of GL_n(ℤ).
#[derive(Debug, Clone, Copy)]
enum Generator {
    /// row a += λ·row b, λ = ±1
    Transvect(usize, usize, i64),
    Swap(usize, usize),
    Flip(usize),
}

impl Generator {
    fn all(n: usize) -> Vec<Generator> {
        let mut gens = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    gens.push(Generator::Transvect(a, b, 1));
                    gens.push(Generator::Transvect(a, b, -1));
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                gens.push(Generator::Swap(a, b));
            }
        }
        for a in 0..n {
            gens.push(Generator::Flip(a));
        }
        gens
    }

    fn apply(&self, b: &BrauerMatrix) -> BrauerMatrix {
        let mut out = b.clone();
        match *self {
            Generator::Transvect(r, s, lambda) => out.transvect(r, s, lambda),
            Generator::Swap(r, s) => out.swap(r, s),
            Generator::Flip(r) => out.negate_coord(r),
        }
        out
    }

    fn matrix(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(n);
        match *self {
            Generator::Transvect(r, s, lambda) => m.row_add(r, s, lambda),
            Generator::Swap(r, s) => m.row_swap(r, s),
            Generator::Flip(r) => m.row_negate(r),
        }
        m
    }
}

/// Decides whether two skew matrices lie in the same GL_n(ℤ)-orbit.
///
/// `budget` caps the number of matrices the search may visit.  An
/// `Equivalent` verdict always carries an exactly verified witness; a
/// `Distinct` verdict names the separating invariant.
pub fn orbit_equivalent(a: &BrauerMatrix, b: &BrauerMatrix, budget: usize) -> Result<OrbitVerdict> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch);
    }
    let n = a.n();
    let (nf_a, w_a) = skew_normal_form(a);
    let (nf_b, w_b) = skew_normal_form(b);
    if nf_a.ord_list() != nf_b.ord_list() {
        return Ok(OrbitVerdict::Distinct(format!(
            "block order lists differ: {:?} vs {:?}",
            nf_a.ord_list(),
            nf_b.ord_list()
        )));
    }
    if nf_a == nf_b {
        // b = (w_b⁻¹·w_a)·a·(w_b⁻¹·w_a)ᵀ
        let g = w_b.inverse_unimodular()?.mul(&w_a)?;
        let verified = unimodular_act(&g, a)? == *b;
        debug_assert!(verified, "normal-form witness must transport exactly");
        if verified {
            return Ok(OrbitVerdict::Equivalent(g));
        }
    }
    if n == 2 {
        // the 2×2 action is B ↦ det(g)·B and the normal form is already
        // sign-canonical, so differing blocks are conclusive
        return Ok(OrbitVerdict::Distinct(format!(
            "2x2 sign-canonical blocks differ: {:?} vs {:?}",
            nf_a.blocks, nf_b.blocks
        )));
    }
    // invariants agree but the normal forms differ: search words in the
    // generators from nf_a towards nf_b
    let start = nf_a.to_matrix();
    let target = nf_b.to_matrix();
    let gens = Generator::all(n);
    let mut parents: HashMap<Vec<QmodZ>, (Vec<QmodZ>, usize)> = HashMap::new();
    let mut queue = VecDeque::new();
    let start_key = start.state_key();
    queue.push_back(start.clone());
    let mut visited = 1usize;
    let mut found = false;
    while let Some(state) = queue.pop_front() {
        if state.state_key() == target.state_key() {
            found = true;
            break;
        }
        if visited >= budget {
            break;
        }
        let key = state.state_key();
        for (gi, gen) in gens.iter().enumerate() {
            let next = gen.apply(&state);
            let next_key = next.state_key();
            if next_key == key || parents.contains_key(&next_key) || next_key == start_key {
                continue;
            }
            parents.insert(next_key, (key.clone(), gi));
            visited += 1;
            queue.push_back(next);
            if visited >= budget {
                break;
            }
        }
    }
    if !found && !parents.contains_key(&target.state_key()) {
        return Ok(OrbitVerdict::Unknown);
    }
    // reconstruct the word transporting nf_a to nf_b
    let mut word = Vec::new();
    let mut cursor = target.state_key();
    while cursor != start_key {
        let (prev, gi) = parents
            .get(&cursor)
            .expect("every reached state has a parent")
            .clone();
        word.push(gi);
        cursor = prev;
    }
    let mut chain = IntMatrix::identity(n);
    for gi in word.into_iter().rev() {
        chain = gens[gi].matrix(n).mul(&chain)?;
    }
    // overall: b = w_b⁻¹ · chain · w_a acting on a
    let g = w_b.inverse_unimodular()?.mul(&chain)?.mul(&w_a)?;
    if unimodular_act(&g, a)? == *b {
        Ok(OrbitVerdict::Equivalent(g))
    } else {
        Ok(OrbitVerdict::Unknown)
    }
}
