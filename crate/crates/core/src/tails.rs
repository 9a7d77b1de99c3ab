//! Enumeration of admissible tails.
//!
//! Every routine here returns the enumerated set together with an entry
//! count (the work performed), which the batch logs report as
//! `N entries used, M tails found.`

use std::collections::{HashSet, VecDeque};

use crate::diagram::{Diagram, DiagramSet, SymbolicDiagram};
use crate::error::{Error, Result};
use crate::reduction::{reduce, reduce_layers, top_reduce_counted, ReductionOutcome};

/// An enumerated set of tails with the amount of work spent finding it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailsRun {
    pub tails: DiagramSet,
    /// `reduce` calls for h-tails/ltails/atails, processed worklist items
    /// for the symbolic enumeration.
    pub entries: usize,
}

/// Follows the orbit of `seed` under `D -> top_reduce(diag(h) + D)`,
/// adding to `collected` until the orbit re-enters it.
fn follow_orbit(
    m: u32,
    h: u32,
    seed: &Diagram,
    collected: &mut DiagramSet,
    entries: &mut usize,
) -> Result<()> {
    if seed.leng() >= m as usize {
        return Err(Error::Enum {
            m,
            diagram: seed.clone(),
        });
    }
    let head = Diagram::new(vec![h]);
    let mut current = seed.clone();
    loop {
        collected.insert(current.clone());
        let (next, calls) = top_reduce_counted(m, &(&head + &current));
        *entries += calls;
        if next.leng() >= m as usize {
            return Err(Error::Enum { m, diagram: next });
        }
        if collected.contains(&next) {
            return Ok(());
        }
        current = next;
    }
}

fn check_heights(m: u32, h: u32) -> Result<()> {
    if m < 2 || h <= m {
        return Err(Error::UnsupportedParameter(format!(
            "need m >= 2 and h > m, got m = {m}, h = {h}"
        )));
    }
    Ok(())
}

/// All admissible h-`seed`-tails for multiplicity `m`.
pub fn h_tails(m: u32, h: u32, seed: &Diagram) -> Result<TailsRun> {
    check_heights(m, h)?;
    let mut tails = DiagramSet::new();
    let mut entries = 0;
    follow_orbit(m, h, seed, &mut tails, &mut entries)?;
    Ok(TailsRun { tails, entries })
}

/// Union of [`h_tails`] over `seeds`.
///
/// Orbits share one collected set: the collected set is closed under the
/// orbit map, so an orbit that meets it contributes nothing further.
pub fn ltails(m: u32, h: u32, seeds: &DiagramSet) -> Result<TailsRun> {
    check_heights(m, h)?;
    let mut tails = DiagramSet::new();
    let mut entries = 0;
    for seed in seeds {
        if !tails.contains(seed) {
            follow_orbit(m, h, seed, &mut tails, &mut entries)?;
        }
    }
    Ok(TailsRun { tails, entries })
}

/// `top_reduce(diag([h]^n) + D)` for every `D` in `set`.
pub fn atails(m: u32, h: u32, n: u32, set: &DiagramSet) -> Result<TailsRun> {
    check_heights(m, h)?;
    if n == 0 {
        return Err(Error::UnsupportedParameter("atails needs n > 0".into()));
    }
    let block = Diagram::constant(h, n as usize);
    let mut tails = DiagramSet::new();
    let mut entries = 0;
    for d in set {
        let (g, calls) = top_reduce_counted(m, &(&block + d));
        entries += calls;
        if g.leng() >= m as usize {
            return Err(Error::Enum { m, diagram: g });
        }
        tails.insert(g);
    }
    Ok(TailsRun { tails, entries })
}

/// Calls `f` with every non-increasing tuple `bound >= c_1 >= ... >= c_k >= 0`.
fn for_each_nonincreasing(k: usize, bound: u32, f: &mut impl FnMut(&[u32])) {
    fn go(buf: &mut Vec<u32>, k: usize, bound: u32, f: &mut impl FnMut(&[u32])) {
        if buf.len() == k {
            f(buf);
            return;
        }
        for c in (0..=bound).rev() {
            buf.push(c);
            go(buf, k, c, f);
            buf.pop();
        }
    }
    go(&mut Vec::with_capacity(k), k, bound, f);
}

/// All symbolic reductions of `w = diag(a_1, ..., a_m, [x]^k)`.
///
/// The unknown layers are replaced by every non-increasing tuple bounded by
/// `min(m + 1, a_m)`; each successful reduction is cut back to `m` layers
/// with one `x` per surviving positive layer beyond them.
pub fn symb_reduce(m: u32, w: &SymbolicDiagram) -> Result<Vec<SymbolicDiagram>> {
    if w.is_concrete() {
        let d = Diagram::new(w.prefix().to_vec());
        return Ok(match reduce(m, &d) {
            ReductionOutcome::Reduced(r) => vec![r.into()],
            ReductionOutcome::NotReducible => Vec::new(),
        });
    }
    let mu = m as usize;
    let k = w.xcount() as usize;
    if w.prefix().len() != mu || k >= mu {
        return Err(Error::UnsupportedParameter(format!(
            "symbolic reduction needs exactly {m} concrete layers and fewer than {m} unknowns, got {w}"
        )));
    }
    let a_m = w.prefix()[mu - 1];
    let bound = a_m.min(m + 1);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut layers = w.prefix().to_vec();
    for_each_nonincreasing(k, bound, &mut |cs| {
        layers.truncate(mu);
        layers.extend_from_slice(cs);
        while layers.last() == Some(&0) {
            layers.pop();
        }
        if let Some(mut reduced) = reduce_layers(m, &layers) {
            while reduced.last() == Some(&0) {
                reduced.pop();
            }
            let result = if reduced.len() > mu {
                let extra = reduced[mu..].iter().filter(|&&a| a > 0).count() as u32;
                reduced.truncate(mu);
                SymbolicDiagram::new(reduced, extra)
            } else {
                Diagram::new(reduced).into()
            };
            if seen.insert(result.clone()) {
                out.push(result);
            }
        }
    });
    Ok(out)
}

/// All admissible `diag(a_1, ..., a_m)`-tails.
pub fn tails_enum(m: u32, d: &Diagram) -> Result<TailsRun> {
    if d.len() != m as usize {
        return Err(Error::UnsupportedParameter(format!(
            "tails needs a diagram with exactly {m} layers, got {d:?}"
        )));
    }
    tails_from(m, &SymbolicDiagram::new(d.layers().to_vec(), m - 1))
}

/// Worklist closure of [`symb_reduce`] from an arbitrary symbolic start;
/// collects every concrete result shorter than `m`.
pub fn tails_from(m: u32, start: &SymbolicDiagram) -> Result<TailsRun> {
    if m < 2 {
        return Err(Error::UnsupportedParameter(format!("need m >= 2, got {m}")));
    }
    let mut tails = DiagramSet::new();
    let mut seen: HashSet<SymbolicDiagram> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    let mut entries = 0;
    while let Some(w) = queue.pop_front() {
        entries += 1;
        for r in symb_reduce(m, &w)? {
            if r.size() >= w.size() {
                return Err(Error::NoDescent { from: w, to: r });
            }
            if r.leng() < m as usize {
                if let Some(d) = r.clone().into_diagram() {
                    tails.insert(d);
                }
            }
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    Ok(TailsRun { tails, entries })
}
