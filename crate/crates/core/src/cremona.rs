//! Detection of (-1)-speciality through Cremona transformations.

use std::fmt;

use crate::error::{Error, Result};

/// A plane system `L(d; m_1, ..., m_r)`, kept with multiplicities sorted
/// non-increasingly and zeros removed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanarSystem {
    degree: i64,
    multiplicities: Vec<i64>,
}

impl PlanarSystem {
    /// Normalizes: negative multiplicities are clamped to zero, zeros are
    /// dropped and the rest sorted non-increasingly.
    pub fn new(degree: i64, multiplicities: Vec<i64>) -> Self {
        let mut multiplicities: Vec<i64> = multiplicities.into_iter().filter(|&m| m > 0).collect();
        multiplicities.sort_unstable_by(|a, b| b.cmp(a));
        PlanarSystem {
            degree,
            multiplicities,
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.multiplicities
    }

    /// The `j`-th largest multiplicity (1-based), zero past the end.
    pub fn mult(&self, j: usize) -> i64 {
        self.multiplicities.get(j - 1).copied().unwrap_or(0)
    }

    /// `d(d+3)/2 - sum m_i(m_i+1)/2`.
    pub fn vdim(&self) -> i64 {
        let d = self.degree;
        d * (d + 3) / 2 - self.multiplicities.iter().map(|m| m * (m + 1) / 2).sum::<i64>()
    }

    /// `max(-1, vdim)`, and `-1` for negative degree.
    pub fn edim(&self) -> i64 {
        if self.degree < 0 {
            -1
        } else {
            self.vdim().max(-1)
        }
    }

    fn excess2(&self) -> i64 {
        self.degree - self.mult(1) - self.mult(2)
    }

    fn excess3(&self) -> i64 {
        self.excess2() - self.mult(3)
    }
}

impl fmt::Display for PlanarSystem {
    /// `L(74;66,8^9,6^15)`, with `L(0;—)` when there are no points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({};", self.degree)?;
        if self.multiplicities.is_empty() {
            return f.write_str("—)");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.multiplicities.len() {
            let m = self.multiplicities[i];
            let run = self.multiplicities[i..].iter().take_while(|&&x| x == m).count();
            if !first {
                f.write_str(",")?;
            }
            if run > 1 {
                write!(f, "{m}^{run}")?;
            } else {
                write!(f, "{m}")?;
            }
            first = false;
            i += run;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for PlanarSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `L(d; m_1, ..., m_r) -> L(d-1; m_1-1, m_2-1, m_3, ..., m_r)`.
pub fn take_line(l: &PlanarSystem) -> PlanarSystem {
    let mut mults = l.multiplicities.clone();
    mults.resize(mults.len().max(2), 0);
    mults[0] -= 1;
    mults[1] -= 1;
    PlanarSystem::new(l.degree - 1, mults)
}

/// The quadratic transformation based at the three largest points:
/// `k = d - m_1 - m_2 - m_3` is added to the degree and to those points.
pub fn cremona_step(l: &PlanarSystem) -> PlanarSystem {
    let k = l.excess3();
    let mut mults = l.multiplicities.clone();
    mults.resize(mults.len().max(3), 0);
    for m in &mut mults[..3] {
        *m += k;
    }
    PlanarSystem::new(l.degree + k, mults)
}

pub fn sort_system(l: &PlanarSystem) -> PlanarSystem {
    PlanarSystem::new(l.degree, l.multiplicities.clone())
}

/// Applies take-line and Cremona steps until `d >= m_1 + m_2 + m_3`.
///
/// A system of negative degree is empty and is returned as is.
pub fn reduce_system(l: &PlanarSystem) -> Result<PlanarSystem> {
    let cap = 10 * (l.degree.max(0) as u64 + l.multiplicities.len() as u64 + 10);
    let mut current = sort_system(l);
    let mut steps = 0u64;
    while current.excess3() < 0 && current.degree >= 0 {
        if steps >= cap {
            return Err(Error::IterationCap {
                system: l.to_string(),
                cap,
            });
        }
        current = if current.excess2() < 0 {
            take_line(&current)
        } else {
            cremona_step(&current)
        };
        steps += 1;
    }
    Ok(current)
}

/// Parameters of `L_n(a, b; m^r)` on the Hirzebruch surface `F_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HirzebruchQuery {
    pub m: u32,
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub r: u32,
}

impl HirzebruchQuery {
    /// `(a+1)(b+1) + n b(b+1)/2 - 1 - r m(m+1)/2`.
    pub fn vdim(&self) -> i64 {
        let (m, n, a, b, r) = (
            i64::from(self.m),
            i64::from(self.n),
            i64::from(self.a),
            i64::from(self.b),
            i64::from(self.r),
        );
        (a + 1) * (b + 1) + n * b * (b + 1) / 2 - 1 - r * m * (m + 1) / 2
    }

    pub fn edim(&self) -> i64 {
        self.vdim().max(-1)
    }

    /// The plane system for shift `t`:
    /// `L((n+1)b + a - t; nb + a, m^r, (b-t)^(n+1))`.
    pub fn planar_system(&self, t: u32) -> PlanarSystem {
        let (m, n, a, b) = (
            i64::from(self.m),
            i64::from(self.n),
            i64::from(self.a),
            i64::from(self.b),
        );
        let t = i64::from(t);
        let mut mults = vec![n * b + a];
        mults.extend(std::iter::repeat_n(m, self.r as usize));
        mults.extend(std::iter::repeat_n(b - t, self.n as usize + 1));
        PlanarSystem::new((n + 1) * b + a - t, mults)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpecVerdict {
    MinusOneSpecial,
    Error,
}

/// One tried shift: the starting plane system and where reduction ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecStep {
    pub t: u32,
    pub start: PlanarSystem,
    pub end: PlanarSystem,
    pub edim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecReport {
    pub query: HirzebruchQuery,
    pub verdict: SpecVerdict,
    /// Expected dimension of the Hirzebruch system.
    pub expected: i64,
    pub steps: Vec<SpecStep>,
}

/// Tries `t = 0, ..., b` and reports (-1)-speciality at the first shift whose
/// reduced plane system has expected dimension above that of the query.
pub fn spec_check(q: HirzebruchQuery) -> Result<SpecReport> {
    let expected = q.edim();
    let mut steps = Vec::new();
    for t in 0..=q.b {
        let start = q.planar_system(t);
        let end = reduce_system(&start)?;
        let edim = end.edim();
        steps.push(SpecStep { t, start, end, edim });
        if edim > expected {
            return Ok(SpecReport {
                query: q,
                verdict: SpecVerdict::MinusOneSpecial,
                expected,
                steps,
            });
        }
    }
    Ok(SpecReport {
        query: q,
        verdict: SpecVerdict::Error,
        expected,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sys(d: i64, blocks: &[(i64, usize)]) -> PlanarSystem {
        let mut mults = Vec::new();
        for &(m, count) in blocks {
            mults.extend(std::iter::repeat_n(m, count));
        }
        PlanarSystem::new(d, mults)
    }

    #[test]
    fn expected_dimensions() {
        assert_eq!(sys(8, &[(2, 15)]).edim(), -1);
        assert_eq!(sys(0, &[]).edim(), 0);
        assert_eq!(sys(74, &[(66, 1), (6, 15), (8, 9)]).edim(), -1);
        assert_eq!(sys(-2, &[]).edim(), -1);
    }

    #[test]
    fn take_line_steps() {
        let l = sys(9, &[(6, 2), (2, 1), (1, 13)]);
        assert_eq!(take_line(&l), sys(8, &[(5, 2), (2, 1), (1, 13)]));
        let three = take_line(&take_line(&take_line(&l)));
        assert_eq!(three, sys(6, &[(3, 2), (2, 1), (1, 13)]));
        assert_eq!(take_line(&sys(1, &[(1, 2)])), sys(0, &[]));
        assert_eq!(take_line(&sys(1, &[(1, 2)])).to_string(), "L(0;—)");
    }

    #[test]
    fn cremona_steps() {
        let l = sys(42, &[(34, 1), (8, 1), (6, 15)]);
        // one block of six drops to zero, leaving 6^14
        assert_eq!(cremona_step(&l), sys(36, &[(28, 1), (6, 14), (2, 1)]));
        let l = sys(6, &[(3, 2), (2, 1), (1, 13)]);
        assert_eq!(cremona_step(&l), sys(4, &[(1, 15)]));
        let fixed = sys(9, &[(3, 3)]);
        assert_eq!(cremona_step(&fixed), fixed);
    }

    #[test]
    fn sorting() {
        let l = PlanarSystem::new(74, [vec![66], vec![6; 15], vec![8; 9]].concat());
        assert_eq!(l.multiplicities()[..10], [66, 8, 8, 8, 8, 8, 8, 8, 8, 8]);
        assert_eq!(l.to_string(), "L(74;66,8^9,6^15)");
        assert_eq!(sort_system(&l), l);
        assert_eq!(PlanarSystem::new(3, vec![0, 2, 0, 1]).multiplicities(), &[2, 1]);
    }

    #[test]
    fn reductions() {
        let l = sys(74, &[(66, 1), (6, 15), (8, 9)]);
        assert_eq!(reduce_system(&l).unwrap(), sys(8, &[(2, 15)]));
        let l = sys(72, &[(66, 1), (6, 24)]);
        assert_eq!(reduce_system(&l).unwrap(), sys(0, &[]));
        let done = sys(10, &[(3, 3)]);
        assert_eq!(reduce_system(&done).unwrap(), done);
    }

    #[test]
    fn spec_example() {
        let q = HirzebruchQuery {
            m: 6,
            n: 8,
            a: 2,
            b: 8,
            r: 15,
        };
        assert_eq!(q.edim(), -1);
        let report = spec_check(q).unwrap();
        assert_eq!(report.verdict, SpecVerdict::MinusOneSpecial);
        assert_eq!(report.steps.len(), 3);
        assert_eq!(report.steps[0].end, sys(8, &[(2, 15)]));
        assert_eq!(report.steps[1].end, sys(4, &[(1, 15)]));
        assert_eq!(report.steps[2].end, sys(0, &[]));
        assert_eq!(
            report.steps.iter().map(|s| s.edim).collect::<Vec<_>>(),
            [-1, -1, 0]
        );
    }

    #[test]
    fn exhausted_shifts_give_error() {
        let q = HirzebruchQuery {
            m: 2,
            n: 0,
            a: 2,
            b: 2,
            r: 1,
        };
        assert_eq!(q.edim(), 5);
        let report = spec_check(q).unwrap();
        assert_eq!(report.verdict, SpecVerdict::Error);
        assert_eq!(report.steps.iter().map(|s| s.edim).collect::<Vec<_>>(), [5, 2, 0]);

        // fibres through a double point: bidegree (3, 0) is special
        let q = HirzebruchQuery {
            m: 2,
            n: 0,
            a: 3,
            b: 0,
            r: 1,
        };
        assert_eq!(spec_check(q).unwrap().verdict, SpecVerdict::MinusOneSpecial);
    }

    fn system() -> impl Strategy<Value = PlanarSystem> {
        (0i64..40, prop::collection::vec(0i64..15, 0..8)).prop_map(|(d, m)| PlanarSystem::new(d, m))
    }

    proptest! {
        #[test]
        fn cremona_keeps_vdim(l in system()) {
            // clamping can only matter when a multiplicity turns negative
            let k = l.degree() - l.mult(1) - l.mult(2) - l.mult(3);
            prop_assume!((1..=3).all(|j| l.mult(j) + k >= 0));
            prop_assert_eq!(cremona_step(&l).vdim(), l.vdim());
        }

        #[test]
        fn guarded_take_line_never_lowers_vdim(l in system()) {
            prop_assume!(l.degree() - l.mult(1) - l.mult(2) < 0);
            prop_assume!(l.mult(2) >= 1);
            prop_assert!(take_line(&l).vdim() >= l.vdim());
        }

        #[test]
        fn reduction_ends_reduced(l in system()) {
            let end = reduce_system(&l).unwrap();
            prop_assert!(end.degree() < 0 || end.degree() - end.mult(1) - end.mult(2) - end.mult(3) >= 0);
        }

        #[test]
        fn sorting_is_idempotent(l in system()) {
            prop_assert_eq!(sort_system(&sort_system(&l)), sort_system(&l));
        }
    }
}
