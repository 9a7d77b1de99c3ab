//! Generators of the diagram families whose non-speciality is checked.
//!
//! Every family has the shape `{ L' + mid + R : L in left, R in right }`,
//! where `L'` is `rev(L)` for the `bign` families and `L` otherwise
//! (`left = {∅}` for the one-sided families).

use crate::diagram::{Diagram, DiagramSet};
use crate::error::{Error, Result};
use crate::tails::{atails, h_tails, ltails, tails_enum};

/// A generated family together with the pieces it was glued from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub set: DiagramSet,
    pub left: DiagramSet,
    pub mid: Diagram,
    pub right: DiagramSet,
    pub reverse_left: bool,
    /// Number of glued `(L, R)` pairs; exceeds `set.len()` when two pairs
    /// glue to the same diagram.
    pub pairs: usize,
    /// Cardinality of the left set after each construction step.
    pub left_steps: Vec<usize>,
}

impl Family {
    fn glued(
        left: DiagramSet,
        mid: Diagram,
        right: DiagramSet,
        reverse_left: bool,
        left_steps: Vec<usize>,
    ) -> Self {
        let set = glue(&left, &mid, &right, reverse_left);
        Family {
            set,
            pairs: left.len() * right.len(),
            left,
            mid,
            right,
            reverse_left,
            left_steps,
        }
    }
}

/// `diag(start, start + step, ..., start + (count - 1) step)`.
pub fn base_diagram(start: u32, step: u32, count: u32) -> Diagram {
    Diagram::arithmetic(start, step, count as usize)
}

/// `{ L' + mid + R }` over the cross product, `L' = rev(L)` when requested.
pub fn glue(left: &DiagramSet, mid: &Diagram, right: &DiagramSet, reverse_left: bool) -> DiagramSet {
    let mut out = DiagramSet::new();
    for l in left {
        let head = if reverse_left { l.rev() } else { l.clone() };
        let head = &head + mid;
        for r in right {
            out.insert(&head + r);
        }
    }
    out
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::UnsupportedParameter(what.to_string()))
    }
}

/// Left sets of the `bign` families: h-tails at `m + 1`, then for every
/// `j` in `m+2..=last_j` the pair atails/ltails at `j`, then ltails at `top`.
fn left_tails(m: u32, n_big: u32, last_j: u32, top: u32) -> Result<(DiagramSet, Vec<usize>)> {
    let mut left = h_tails(m, m + 1, &Diagram::empty())?.tails;
    let mut steps = vec![left.len()];
    for j in m + 2..=last_j {
        left = atails(m, j, n_big, &left)?.tails;
        steps.push(left.len());
        left = ltails(m, j, &left)?.tails;
        steps.push(left.len());
    }
    left = ltails(m, top, &left)?.tails;
    steps.push(left.len());
    Ok((left, steps))
}

/// The family for multiplicities `m >= 4`, long diagrams `N >= m`.
pub fn set_bign(m: u32, n_big: u32) -> Result<Family> {
    require(m >= 4 && n_big >= m, "setbign needs m >= 4 and N >= m")?;
    let (left, steps) = left_tails(m, n_big, 2 * m - 3, 2 * m - 2)?;
    let right = tails_enum(m, &Diagram::constant(2 * m - 1, m as usize))?.tails;
    let mid = Diagram::constant(2 * m - 2, n_big as usize);
    Ok(Family::glued(left, mid, right, true, steps))
}

/// The family for `m` in `{2, 3}`.
pub fn set_bign23(m: u32, n_big: u32) -> Result<Family> {
    require(
        (2..=3).contains(&m) && n_big >= m,
        "setbign23 needs m in {2,3} and N >= m",
    )?;
    let mut left = h_tails(m, m + 1, &Diagram::empty())?.tails;
    let mut steps = vec![left.len()];
    left = ltails(m, m + 2, &left)?.tails;
    steps.push(left.len());
    let right = tails_enum(m, &Diagram::constant(m + 3, m as usize))?.tails;
    let mid = Diagram::constant(m + 2, n_big as usize);
    Ok(Family::glued(left, mid, right, true, steps))
}

/// The family with middle block `[b]^N`, `b >= m + 2`.
pub fn set_bignb(m: u32, n_big: u32, b: u32) -> Result<Family> {
    require(
        m >= 2 && n_big >= m && b >= m + 2,
        "setbignb needs m >= 2, N >= m, b >= m+2",
    )?;
    let (left, steps) = left_tails(m, n_big, b - 1, b)?;
    let right = h_tails(m, b + 1, &Diagram::empty())?.tails;
    let mid = Diagram::constant(b, n_big as usize);
    Ok(Family::glued(left, mid, right, true, steps))
}

/// Blocks `G = diag([m+1]^n, ..., [B]^n, B+1)` split as `K + H` with
/// `H = cutr(G, m)`.
pub fn nb_blocks(m: u32, n: u32, b_big: u32) -> (Diagram, Diagram, Diagram) {
    let g = &Diagram::blocks(m + 1, b_big, n as usize) + &Diagram::new(vec![b_big + 1]);
    let h = g.cutr(m as usize);
    let k = g.cut((n * (b_big - m) + 1 - m) as usize);
    (g, h, k)
}

pub fn set_nb(m: u32, n: u32, b_big: u32) -> Result<Family> {
    require(
        m >= 2 && n >= 2 && b_big + 1 >= 2 * m,
        "setnb needs m >= 2, n >= 2, B >= 2m-1",
    )?;
    let (_, h, k) = nb_blocks(m, n, b_big);
    let right = tails_enum(m, &h)?.tails;
    Ok(Family::glued(
        DiagramSet::with_empty(),
        k,
        right,
        false,
        Vec::new(),
    ))
}

/// Prefix `diag([m+1]^n, ..., [b]^n, [b+1]^(A+1))`.
pub fn nba_prefix(m: u32, n: u32, b: u32, a_big: u32) -> Diagram {
    &Diagram::blocks(m + 1, b, n as usize) + &Diagram::constant(b + 1, a_big as usize + 1)
}

pub fn set_nba(m: u32, n: u32, b: u32, a_big: u32) -> Result<Family> {
    require(m >= 2 && n >= 2 && b > m, "setnba needs m >= 2, n >= 2, b >= m+1")?;
    let right = h_tails(m, b + 1, &Diagram::empty())?.tails;
    let mid = nba_prefix(m, n, b, a_big);
    Ok(Family::glued(
        DiagramSet::with_empty(),
        mid,
        right,
        false,
        Vec::new(),
    ))
}

pub fn set_pb(m: u32, b_big: u32) -> Result<Family> {
    require(m >= 2 && b_big + 3 >= 3 * m, "setpb needs m >= 2, B >= 3(m-1)")?;
    let start = Diagram::arithmetic(b_big + 2 - m, 1, m as usize);
    let right = tails_enum(m, &start)?.tails;
    let mid = Diagram::arithmetic(1, 1, (b_big + 1 - m) as usize);
    Ok(Family::glued(
        DiagramSet::with_empty(),
        mid,
        right,
        false,
        Vec::new(),
    ))
}

pub fn set_pba(m: u32, b: u32, a_big: u32) -> Result<Family> {
    require(
        m >= 2 && b >= m && a_big >= b,
        "setpba needs m >= 2, b >= m, A >= b",
    )?;
    let right = h_tails(m, b + 1, &Diagram::empty())?.tails;
    let mid = Diagram::constant(b + 1, a_big as usize + 1);
    Ok(Family::glued(
        DiagramSet::with_empty(),
        mid,
        right,
        false,
        Vec::new(),
    ))
}
