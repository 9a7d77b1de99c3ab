//! The m-reduction step and its iterated and set-level forms.

use rayon::prelude::*;

use crate::diagram::{Diagram, DiagramSet};

/// Result of reducing a diagram; failure is a value, not an error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ReductionOutcome {
    Reduced(Diagram),
    NotReducible,
}

impl ReductionOutcome {
    pub fn into_option(self) -> Option<Diagram> {
        match self {
            ReductionOutcome::Reduced(d) => Some(d),
            ReductionOutcome::NotReducible => None,
        }
    }

    pub fn is_reduced(&self) -> bool {
        matches!(self, ReductionOutcome::Reduced(_))
    }
}

impl From<Option<Diagram>> for ReductionOutcome {
    fn from(d: Option<Diagram>) -> Self {
        d.map_or(ReductionOutcome::NotReducible, ReductionOutcome::Reduced)
    }
}

/// One m-reduction step.
///
/// Walks the last `m` layers from the top down. A layer below `m` gives up
/// all of its cells; any other layer gives up the largest amount in
/// `{1..m}` not taken yet. The step succeeds iff every amount in `{1..m}`
/// was taken exactly once.
pub fn reduce(m: u32, d: &Diagram) -> ReductionOutcome {
    reduce_layers(m, d.layers()).map(Diagram::new).into()
}

pub(crate) fn reduce_layers(m: u32, a: &[u32]) -> Option<Vec<u32>> {
    let k = a.len();
    let mm = m as usize;
    if m == 0 || k < mm || mm > 63 {
        return None;
    }
    let full: u64 = ((1u64 << mm) - 1) << 1;
    let mut used: u64 = 0;
    let mut zero_taken = false;
    let mut b = a.to_vec();
    for j in (k - mm..k).rev() {
        let r = if a[j] < m {
            a[j]
        } else {
            // largest of {1..m} not yet in `used`
            let free = full & !used;
            if free == 0 {
                0
            } else {
                63 - free.leading_zeros()
            }
        };
        b[j] = a[j] - r;
        if r == 0 {
            zero_taken = true;
        } else {
            used |= 1u64 << r;
        }
    }
    (used == full && !zero_taken).then_some(b)
}

/// `red_m` applied `k` times; fails if any step fails.
pub fn sequence_reduce(m: u32, k: u32, d: &Diagram) -> ReductionOutcome {
    let mut current = d.layers().to_vec();
    for _ in 0..k {
        match reduce_layers(m, &current) {
            Some(mut next) => {
                while next.last() == Some(&0) {
                    next.pop();
                }
                current = next;
            }
            None => return ReductionOutcome::NotReducible,
        }
    }
    ReductionOutcome::Reduced(Diagram::new(current))
}

/// Reduces until the result is no longer m-reducible.
pub fn top_reduce(m: u32, d: &Diagram) -> Diagram {
    top_reduce_counted(m, d).0
}

/// Like [`top_reduce`], also returning the number of `reduce` calls made.
pub fn top_reduce_counted(m: u32, d: &Diagram) -> (Diagram, usize) {
    let mut current = d.clone();
    let mut calls = 0;
    loop {
        calls += 1;
        match reduce(m, &current) {
            ReductionOutcome::Reduced(next) => current = next,
            ReductionOutcome::NotReducible => return (current, calls),
        }
    }
}

/// Images of the members that survive `k` reductions.
pub fn red_set(m: u32, k: u32, set: &DiagramSet) -> DiagramSet {
    set.to_vec()
        .par_iter()
        .filter_map(|d| sequence_reduce(m, k, d).into_option())
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Members whose `k`-fold reduction fails or falls outside `target`.
pub fn redout_set(m: u32, k: u32, set: &DiagramSet, target: &DiagramSet) -> DiagramSet {
    set.to_vec()
        .par_iter()
        .filter(|d| match sequence_reduce(m, k, d) {
            ReductionOutcome::Reduced(g) => !target.contains(&g),
            ReductionOutcome::NotReducible => true,
        })
        .cloned()
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}
