//! Randomized non-speciality certification.
//!
//! The system `L(D; m^r)` consists of polynomials supported on the cells of
//! `D` vanishing to order `m` at `r` general points. Specializing the points
//! to random points of `F_p^2` and finding an interpolation matrix of maximal
//! rank proves the general system non-special. A rank deficit proves nothing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::diagram::{Diagram, DiagramSet};
use crate::error::{Error, Result};
use crate::field::{Matrix, PrimeField};
use crate::reduction::sequence_reduce;

/// Tries per diagram in the reduction phases of [`ch`].
pub const PHASE_TRIES: u32 = 6;
/// Tries per diagram in the closing check of [`ch`] and in [`finalnba`].
pub const FINAL_TRIES: u32 = 16;

/// Field and master seed shared by all randomized checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CheckConfig {
    pub field: PrimeField,
    pub seed: u64,
}

impl CheckConfig {
    pub fn new(prime: u64, seed: u64) -> Result<Self> {
        Ok(CheckConfig {
            field: PrimeField::new(prime)?,
            seed,
        })
    }
}

/// A point of `F_p^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: u64,
    pub y: u64,
}

/// One vanishing condition: the derivative `d^(dx+dy) / dx^dx dy^dy` at a
/// point (0-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConditionIndex {
    pub point: usize,
    pub dx: u32,
    pub dy: u32,
}

/// `m(m+1)/2`, the number of conditions imposed by one point of multiplicity `m`.
pub fn conditions_per_point(m: u32) -> u64 {
    u64::from(m) * u64::from(m + 1) / 2
}

/// Exponent pairs `(alpha, beta)` of the monomials of `D`, ordered by total
/// degree and then by decreasing `alpha`.
pub fn monomials(d: &Diagram) -> Vec<(u32, u32)> {
    let mut cells: Vec<(u32, u32)> = d
        .layers()
        .iter()
        .enumerate()
        .flat_map(|(j, &a)| (0..a).map(move |i| (j as u32, i)))
        .collect();
    cells.sort_by_key(|&(a, b)| (a + b, std::cmp::Reverse(a)));
    cells
}

/// Conditions for `r` points: point-major, then by total order, then by
/// decreasing `dx`.
pub fn conditions(m: u32, r: usize) -> Vec<ConditionIndex> {
    let mut out = Vec::with_capacity(r * conditions_per_point(m) as usize);
    for point in 0..r {
        for total in 0..m {
            for dx in (0..=total).rev() {
                out.push(ConditionIndex {
                    point,
                    dx,
                    dy: total - dx,
                });
            }
        }
    }
    out
}

/// Interpolation matrix of `L(D; m p_1, ..., m p_r)` with its row and
/// column labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProblem {
    pub monomials: Vec<(u32, u32)>,
    pub conditions: Vec<ConditionIndex>,
    pub matrix: Matrix,
}

impl RankProblem {
    pub fn rank(&self, field: &PrimeField) -> usize {
        self.matrix.rank(field)
    }

    /// Whether the rank reaches `min(rows, cols)`.
    pub fn has_full_rank(&self, field: &PrimeField) -> bool {
        let target = self.matrix.rows().min(self.matrix.cols());
        self.matrix.rank_up_to(field, target) == target
    }
}

/// Builds the interpolation matrix. Rows are monomials, columns conditions;
/// the entry is the derivative of the monomial evaluated at the point.
pub fn i_matrix(d: &Diagram, m: u32, r: usize, points: &[Point], field: &PrimeField) -> Result<RankProblem> {
    if points.len() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: points.len(),
        });
    }
    let monomials = monomials(d);
    let conditions = conditions(m, r);
    let max_alpha = d.len();
    let max_beta = d.layers().iter().copied().max().unwrap_or(0) as usize;
    let max_exp = max_alpha.max(max_beta);

    // falling[e][k] = e (e-1) ... (e-k+1) mod p
    let falling: Vec<Vec<u64>> = (0..=max_exp)
        .map(|e| {
            let mut row = Vec::with_capacity(m as usize);
            let mut acc = field.from_u64(1);
            for k in 0..m as usize {
                row.push(acc);
                acc = if k < e {
                    field.mul(acc, field.from_u64((e - k) as u64))
                } else {
                    0
                };
            }
            row
        })
        .collect();
    let powers = |v: u64, n: usize| {
        let mut out = Vec::with_capacity(n + 1);
        let mut acc = field.from_u64(1);
        for _ in 0..=n {
            out.push(acc);
            acc = field.mul(acc, v);
        }
        out
    };
    let point_powers: Vec<(Vec<u64>, Vec<u64>)> = points
        .iter()
        .map(|p| {
            (
                powers(field.reduce(p.x), max_alpha),
                powers(field.reduce(p.y), max_beta),
            )
        })
        .collect();

    let mut matrix = Matrix::zeros(monomials.len(), conditions.len());
    for (i, &(alpha, beta)) in monomials.iter().enumerate() {
        for (j, c) in conditions.iter().enumerate() {
            if c.dx > alpha || c.dy > beta {
                continue;
            }
            let (xs, ys) = &point_powers[c.point];
            let coeff = field.mul(
                falling[alpha as usize][c.dx as usize],
                falling[beta as usize][c.dy as usize],
            );
            let value = field.mul(
                coeff,
                field.mul(xs[(alpha - c.dx) as usize], ys[(beta - c.dy) as usize]),
            );
            matrix.set(i, j, value);
        }
    }
    Ok(RankProblem {
        monomials,
        conditions,
        matrix,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NsVerdict {
    NonSpecial,
    NotDecided,
}

impl NsVerdict {
    pub fn is_non_special(self) -> bool {
        self == NsVerdict::NonSpecial
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChVerdict {
    Ok,
    NotDecided,
}

/// Deterministic RNG for one trial, keyed by every input that identifies it.
fn trial_rng(seed: u64, d: &Diagram, m: u32, r: u64, trial: u32) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(m.to_le_bytes());
    hasher.update(r.to_le_bytes());
    hasher.update(trial.to_le_bytes());
    hasher.update((d.len() as u64).to_le_bytes());
    for &a in d.layers() {
        hasher.update(a.to_le_bytes());
    }
    ChaCha8Rng::from_seed(hasher.finalize().into())
}

/// `r` pairwise distinct uniform points of `F_p^2`.
pub fn random_points(rng: &mut impl Rng, field: &PrimeField, r: usize) -> Vec<Point> {
    let p = field.modulus();
    let mut out: Vec<Point> = Vec::with_capacity(r);
    while out.len() < r {
        let candidate = Point {
            x: rng.gen_range(0..p),
            y: rng.gen_range(0..p),
        };
        if !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

/// Up to `tries` random specializations of `L(D; m^r)`; `NonSpecial` as soon
/// as one interpolation matrix has maximal rank.
pub fn ns(m: u32, r: u64, d: &Diagram, tries: u32, cfg: &CheckConfig) -> NsVerdict {
    let rows = d.size();
    let cols = r * conditions_per_point(m);
    if rows.min(cols) == 0 {
        return NsVerdict::NonSpecial;
    }
    for trial in 0..tries {
        let mut rng = trial_rng(cfg.seed, d, m, r, trial);
        let points = random_points(&mut rng, &cfg.field, r as usize);
        let problem =
            i_matrix(d, m, r as usize, &points, &cfg.field).expect("point count matches by construction");
        if problem.has_full_rank(&cfg.field) {
            return NsVerdict::NonSpecial;
        }
    }
    NsVerdict::NotDecided
}

/// `floor(#D / (m(m+1)/2))`.
pub fn base_point_count(m: u32, d: &Diagram) -> u64 {
    d.size() / conditions_per_point(m)
}

/// Verdicts for one diagram of a [`check_set`] run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub diagram: Diagram,
    pub r: u64,
    pub at_r: NsVerdict,
    /// Only tried when `at_r` is `NonSpecial`.
    pub at_r_plus_one: Option<NsVerdict>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.at_r.is_non_special() && self.at_r_plus_one == Some(NsVerdict::NonSpecial)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub records: Vec<CheckRecord>,
    pub kept: DiagramSet,
}

impl CheckReport {
    pub fn special_count(&self) -> usize {
        self.records.len() - self.kept.len()
    }
}

fn check_one(m: u32, d: &Diagram, tries: u32, cfg: &CheckConfig) -> CheckRecord {
    let r = base_point_count(m, d);
    let at_r = ns(m, r, d, tries, cfg);
    let at_r_plus_one = at_r.is_non_special().then(|| ns(m, r + 1, d, tries, cfg));
    CheckRecord {
        diagram: d.clone(),
        r,
        at_r,
        at_r_plus_one,
    }
}

/// Checks `L(D; m^r)` and `L(D; m^(r+1))` for every member, with
/// `r = floor(#D / (m(m+1)/2))`; returns per-diagram records in set order.
pub fn check_set_report(m: u32, set: &DiagramSet, tries: u32, cfg: &CheckConfig) -> CheckReport {
    let records: Vec<CheckRecord> = set
        .to_vec()
        .par_iter()
        .map(|d| check_one(m, d, tries, cfg))
        .collect();
    let kept = records
        .iter()
        .filter(|rec| rec.passed())
        .map(|rec| rec.diagram.clone())
        .collect();
    CheckReport { records, kept }
}

/// The members whose systems pass both checks.
pub fn check_set(m: u32, set: &DiagramSet, tries: u32, cfg: &CheckConfig) -> DiagramSet {
    check_set_report(m, set, tries, cfg).kept
}

/// Counts for one reduction phase of [`ch`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseReport {
    pub reductions: u32,
    pub input: usize,
    /// Members that can be reduced `reductions` times.
    pub reducible: usize,
    /// Distinct reduced diagrams.
    pub reduced: usize,
    /// Reduced diagrams that passed the check.
    pub verified: usize,
    pub not_reducible: usize,
    /// Reducible members whose reduction failed the check.
    pub reducing_to_unverified: usize,
    pub survivors: usize,
}

impl PhaseReport {
    pub fn unverified(&self) -> usize {
        self.reduced - self.verified
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChReport {
    pub verdict: ChVerdict,
    pub u_phase: Option<PhaseReport>,
    pub v_phase: Option<PhaseReport>,
    pub final_check: CheckReport,
}

/// Reduces, checks the reduced diagrams, and keeps members that are not
/// covered by a verified reduction.
fn reduction_phase(m: u32, k: u32, set: &DiagramSet, cfg: &CheckConfig) -> (DiagramSet, PhaseReport) {
    let members = set.to_vec();
    let images: Vec<Option<Diagram>> = members
        .par_iter()
        .map(|d| sequence_reduce(m, k, d).into_option())
        .collect();
    let reduced: DiagramSet = images.iter().flatten().cloned().collect();
    let verified = check_set(m, &reduced, PHASE_TRIES, cfg);
    let mut survivors = DiagramSet::new();
    let mut report = PhaseReport {
        reductions: k,
        input: members.len(),
        reduced: reduced.len(),
        verified: verified.len(),
        ..PhaseReport::default()
    };
    for (d, image) in members.into_iter().zip(images) {
        match image {
            Some(g) => {
                report.reducible += 1;
                if !verified.contains(&g) {
                    report.reducing_to_unverified += 1;
                    survivors.insert(d);
                }
            }
            None => {
                report.not_reducible += 1;
                survivors.insert(d);
            }
        }
    }
    report.survivors = survivors.len();
    (survivors, report)
}

/// Certifies all of `L(D; m^r)`, `D` in `set`, `r >= 1`: optional `u`-fold
/// reduction phase, optional `v`-fold phase on the reversed survivors, then
/// a closing check of whatever is left.
pub fn ch(m: u32, set: &DiagramSet, u: u32, v: u32, cfg: &CheckConfig) -> ChReport {
    let mut current = set.clone();
    let mut u_phase = None;
    let mut v_phase = None;
    if u > 0 {
        let (rest, report) = reduction_phase(m, u, &current, cfg);
        current = rest;
        u_phase = Some(report);
    }
    if v > 0 {
        current = current.rev();
        let (rest, report) = reduction_phase(m, v, &current, cfg);
        current = rest;
        v_phase = Some(report);
    }
    let final_check = check_set_report(m, &current, FINAL_TRIES, cfg);
    let verdict = if final_check.kept.len() == current.len() {
        ChVerdict::Ok
    } else {
        ChVerdict::NotDecided
    };
    ChReport {
        verdict,
        u_phase,
        v_phase,
        final_check,
    }
}

/// The diagram of `L_n(a, b)`: `diag([a+1]^(b+1))` for `n = 0`, otherwise
/// `diag([1]^n, ..., [b]^n, [b+1]^(a+1))`.
pub fn hirzebruch_diagram(n: u32, a: u32, b: u32) -> Result<Diagram> {
    match n {
        0 => Ok(Diagram::constant(a + 1, b as usize + 1)),
        1 => Err(Error::UnsupportedParameter("n = 1 is not supported".into())),
        _ => Ok(&Diagram::blocks(1, b, n as usize) + &Diagram::constant(b + 1, a as usize + 1)),
    }
}

/// Candidate special values of `r` for `L_n(a, b; m^r)`: scans down from
/// `r0 = floor(#D / (m(m+1)/2))` and up from `r0 + 1`, each direction
/// stopping at its first certified value.
pub fn finalnba(m: u32, n: u32, a: u32, b: u32, cfg: &CheckConfig) -> Result<Vec<u64>> {
    let d = hirzebruch_diagram(n, a, b)?;
    let r0 = base_point_count(m, &d);
    let mut special = Vec::new();
    let mut r = r0;
    loop {
        let verdict = ns(m, r, &d, FINAL_TRIES, cfg);
        if verdict.is_non_special() {
            break;
        }
        special.push(r);
        if r == 0 {
            break;
        }
        r -= 1;
    }
    // With #D general points, vanishing alone kills every monomial, so a
    // scan past #D + 1 means something is wrong rather than special.
    let cap = d.size() + 1;
    let mut r = r0 + 1;
    loop {
        if r > cap {
            return Err(Error::UnsupportedParameter(format!(
                "upward scan for {d:?} passed r = {cap} without a certificate"
            )));
        }
        let verdict = ns(m, r, &d, FINAL_TRIES, cfg);
        if verdict.is_non_special() {
            break;
        }
        special.push(r);
        r += 1;
    }
    special.sort_unstable();
    Ok(special)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(layers: &[u32]) -> Diagram {
        Diagram::new(layers.to_vec())
    }

    #[test]
    fn monomial_order() {
        assert_eq!(
            monomials(&d(&[3, 2, 1])),
            vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
        );
        assert!(monomials(&Diagram::empty()).is_empty());
        assert_eq!(monomials(&d(&[1, 1])), vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn condition_order() {
        let c: Vec<_> = conditions(2, 2).iter().map(|c| (c.point, c.dx, c.dy)).collect();
        assert_eq!(
            c,
            vec![(0, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 0), (1, 1, 0), (1, 0, 1)]
        );
        assert_eq!(conditions(3, 4).len(), 24);
    }

    #[test]
    fn constant_evaluation() {
        let f = PrimeField::default();
        let p = i_matrix(&d(&[1]), 1, 1, &[Point { x: 5, y: 9 }], &f).unwrap();
        assert_eq!(p.matrix, Matrix::from_rows(&f, &[vec![1]]));
    }

    #[test]
    fn dimension_mismatch() {
        let f = PrimeField::default();
        assert!(matches!(
            i_matrix(&d(&[2]), 2, 2, &[Point { x: 1, y: 1 }], &f),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn falling_factorials_vanish_past_the_exponent() {
        let f = PrimeField::new(101).unwrap();
        let pts = [Point { x: 3, y: 4 }, Point { x: 7, y: 2 }];
        let prob = i_matrix(&d(&[4, 3, 2, 1]), 3, 2, &pts, &f).unwrap();
        for (i, &(alpha, beta)) in prob.monomials.iter().enumerate() {
            for (j, c) in prob.conditions.iter().enumerate() {
                if c.dx > alpha || c.dy > beta {
                    assert_eq!(prob.matrix.get(i, j), 0);
                }
            }
        }
    }

    #[test]
    fn vacuous_systems_are_non_special() {
        let cfg = CheckConfig::default();
        assert_eq!(ns(3, 0, &d(&[4, 4]), 1, &cfg), NsVerdict::NonSpecial);
        assert_eq!(ns(3, 2, &Diagram::empty(), 1, &cfg), NsVerdict::NonSpecial);
    }

    #[test]
    fn three_points_on_a_conic_support() {
        let cfg = CheckConfig::default();
        // three simple points impose independent conditions on 1, x, y
        assert_eq!(ns(1, 3, &d(&[2, 1]), 6, &cfg), NsVerdict::NonSpecial);
        let f = PrimeField::default();
        let collinear = [Point { x: 0, y: 0 }, Point { x: 1, y: 1 }, Point { x: 2, y: 2 }];
        let prob = i_matrix(&d(&[2, 1]), 1, 3, &collinear, &f).unwrap();
        assert_eq!(prob.rank(&f), 2);
    }

    #[test]
    fn known_special_system_is_never_certified() {
        let cfg = CheckConfig::default();
        for seed in 0..20 {
            let cfg = CheckConfig { seed, ..cfg };
            assert_eq!(ns(2, 2, &d(&[3, 2, 1]), 16, &cfg), NsVerdict::NotDecided);
        }
    }

    #[test]
    fn more_tries_never_lose_a_certificate() {
        let cfg = CheckConfig::new(101, 3).unwrap();
        let dg = d(&[4, 4, 3]);
        for t in 1..6 {
            if ns(2, 5, &dg, t, &cfg).is_non_special() {
                assert!(ns(2, 5, &dg, t + 3, &cfg).is_non_special());
            }
        }
    }

    #[test]
    fn check_keeps_non_special_members() {
        let cfg = CheckConfig::default();
        let set: DiagramSet = [d(&[3, 2, 1]), d(&[4, 4, 4]), Diagram::empty()]
            .into_iter()
            .collect();
        let report = check_set_report(2, &set, 6, &cfg);
        assert_eq!(report.records.len(), 3);
        assert!(!report.kept.contains(&d(&[3, 2, 1])));
        assert!(report.kept.contains(&d(&[4, 4, 4])));
        assert!(report.kept.contains(&Diagram::empty()));
        assert!(check_set(2, &DiagramSet::new(), 6, &cfg).is_empty());
    }

    #[test]
    fn hirzebruch_diagrams() {
        assert_eq!(hirzebruch_diagram(0, 5, 4).unwrap(), Diagram::constant(6, 5));
        assert_eq!(hirzebruch_diagram(2, 0, 2).unwrap(), d(&[1, 1, 2, 2, 3]));
        assert!(hirzebruch_diagram(1, 2, 2).is_err());
        assert!(finalnba(3, 1, 5, 4, &CheckConfig::default()).is_err());
    }

    #[test]
    fn finalnba_example() {
        assert_eq!(finalnba(3, 0, 5, 4, &CheckConfig::default()).unwrap(), vec![5]);
    }
}
