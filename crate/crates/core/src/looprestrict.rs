//! Restriction of the torus algebra to the loop subalgebra `J^a_m = J^a(m·e)`
//! along a fixed lattice direction `e`.
//!
//! Under the MF bracket the extension term vanishes identically on the loop
//! subalgebra (`ε^{μνρ} e_μ e_ν = 0`). Under the Kassel bracket it survives
//! only at `m + n = 0`, as a multiple of the central element
//! `K_e = e_μ S^μ(0)`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::currentalg::{bracket, CurrentElement, CurrentError, Flavor, GenSymbol, Momentum};
use crate::exactnum::GaussianRational;
use crate::liealg::MatrixLieAlgebra;
use crate::sampling;

type G = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RestrictError {
    #[error("loop direction must be a nonzero vector")]
    ZeroDirection,
    #[error("mode {mode} times direction {direction} overflows")]
    Overflow { mode: i64, direction: Momentum },
    #[error(transparent)]
    Current(#[from] CurrentError),
    #[error("bracket produced J at momentum {found}, expected {expected}")]
    OffLoop { found: Momentum, expected: Momentum },
}

/// A nonzero lattice direction. Not required to be primitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Direction(Momentum);

impl Direction {
    pub fn new(e: Momentum) -> Result<Self, RestrictError> {
        if e.is_zero() {
            Err(RestrictError::ZeroDirection)
        } else {
            Ok(Direction(e))
        }
    }

    pub fn vector(&self) -> Momentum {
        self.0
    }

    pub fn mode(&self, m: i64) -> Result<Momentum, RestrictError> {
        self.0.checked_scale(m).ok_or(RestrictError::Overflow {
            mode: m,
            direction: self.0,
        })
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `J^a_m = J^a(m·e)`.
pub fn embed(a: usize, m: i64, e: &Direction) -> Result<CurrentElement, RestrictError> {
    Ok(CurrentElement::j(a, e.mode(m)?))
}

/// `K_e = e_μ S^μ(0)`.
pub fn central_element(e: &Direction) -> CurrentElement {
    e.vector()
        .0
        .iter()
        .enumerate()
        .map(|(mu, &c)| (GenSymbol::S { mu, m: Momentum::ZERO }, G::from_int(c)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedBracketReport {
    /// Loop mode `m + n` of the J-sector.
    pub loop_mode: i64,
    /// Color index `c` to coefficient, at loop mode `m + n`.
    pub loop_part: BTreeMap<usize, G>,
    /// Everything outside the J-sector (A, S and Unit content).
    pub extension_part: CurrentElement,
    pub matches_loop_algebra: bool,
}

/// Bracket two loop generators and split the result into the loop-algebra
/// part and the extension part.
#[allow(clippy::too_many_arguments)]
pub fn restricted_bracket(
    a: usize,
    b: usize,
    m: i64,
    n: i64,
    e: &Direction,
    flavor: &Flavor,
    alg: &MatrixLieAlgebra,
) -> Result<RestrictedBracketReport, RestrictError> {
    let x = embed(a, m, e)?;
    let y = embed(b, n, e)?;
    let loop_mode = m.checked_add(n).ok_or(RestrictError::Overflow {
        mode: m,
        direction: e.vector(),
    })?;
    let expected = e.mode(loop_mode)?;
    let full = bracket(&x, &y, flavor, alg)?;
    let mut loop_part = BTreeMap::new();
    let mut extension_part = CurrentElement::zero();
    for (sym, c) in full.terms() {
        match *sym {
            GenSymbol::J { a: c_idx, m: p } => {
                if p != expected {
                    return Err(RestrictError::OffLoop { found: p, expected });
                }
                loop_part.insert(c_idx, c.clone());
            }
            _ => extension_part.add_term(*sym, c.clone()),
        }
    }
    let matches_loop_algebra = extension_part.is_zero();
    Ok(RestrictedBracketReport {
        loop_mode,
        loop_part,
        extension_part,
        matches_loop_algebra,
    })
}

/// The extension part predicted in closed form:
/// zero for Plain and MF, `k κ^{ab} m δ_{m+n,0} K_e` for Kassel(k).
pub fn expected_extension(
    a: usize,
    b: usize,
    m: i64,
    n: i64,
    e: &Direction,
    flavor: &Flavor,
    alg: &MatrixLieAlgebra,
) -> CurrentElement {
    match flavor {
        Flavor::Kassel(k) if m.checked_add(n) == Some(0) => {
            let coeff = alg.kappa_entry(a, b).scale(k) * G::from_int(m);
            central_element(e).scale(&coeff)
        }
        _ => CurrentElement::zero(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanWitness {
    pub e: [i64; 3],
    pub a: String,
    pub b: String,
    pub m: i64,
    pub n: i64,
    pub expected: String,
    pub got: String,
    pub loop_part_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub flavor: String,
    pub algebra: String,
    pub trials: u64,
    pub bound: i64,
    pub seed: u64,
    pub violations: u64,
    pub witness: Option<ScanWitness>,
}

/// Checks one `(e, a, b, m, n)` sample: the loop part must equal `f^{ab}_c`
/// and the extension part its closed form.
pub fn check_sample(
    a: usize,
    b: usize,
    m: i64,
    n: i64,
    e: &Direction,
    flavor: &Flavor,
    alg: &MatrixLieAlgebra,
) -> Result<Option<ScanWitness>, RestrictError> {
    let report = restricted_bracket(a, b, m, n, e, flavor, alg)?;
    let expected = expected_extension(a, b, m, n, e, flavor, alg);
    let loop_expected: BTreeMap<usize, G> = alg.bracket_terms(a, b).iter().cloned().collect();
    let loop_part_ok = report.loop_part == loop_expected;
    if loop_part_ok && report.extension_part == expected {
        return Ok(None);
    }
    let expected = expected.display_with(alg).to_string();
    let got = report.extension_part.display_with(alg).to_string();
    Ok(Some(ScanWitness {
        e: e.vector().0,
        a: alg.label(a).to_string(),
        b: alg.label(b).to_string(),
        m,
        n,
        expected,
        got,
        loop_part_ok,
    }))
}

/// Random `(e, a, b, m, n)` samples with all components in `[-bound, bound]`
/// (`e ≠ 0`). Every fourth sample forces `n = -m` so the Kassel central term
/// is exercised regularly.
pub fn cocycle_scan(
    flavor: &Flavor,
    alg: &MatrixLieAlgebra,
    trials: u64,
    bound: i64,
    seed: u64,
) -> Result<ScanReport, RestrictError> {
    let bound = bound.max(1);
    let results: Vec<Option<ScanWitness>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = sampling::trial_rng(seed, t);
            let e = Direction::new(sampling::nonzero_momentum(&mut rng, bound))?;
            let a = rng.random_range(0..alg.dim());
            let b = rng.random_range(0..alg.dim());
            let m = rng.random_range(-bound..=bound);
            let n = if t % 4 == 3 { -m } else { rng.random_range(-bound..=bound) };
            check_sample(a, b, m, n, &e, flavor, alg)
        })
        .collect::<Result<_, _>>()?;
    Ok(summarize(flavor, alg, trials, bound, seed, results))
}

/// Exhaustive scan: every `e ∈ [-e_bound, e_bound]³ \ {0}`, every basis pair,
/// every `m, n ∈ [-mode_bound, mode_bound]`. `trials` counts samples.
pub fn cocycle_grid(
    flavor: &Flavor,
    alg: &MatrixLieAlgebra,
    e_bound: i64,
    mode_bound: i64,
) -> Result<ScanReport, RestrictError> {
    let r = -e_bound..=e_bound;
    let mut dirs = Vec::new();
    for x in r.clone() {
        for y in r.clone() {
            for z in r.clone() {
                if (x, y, z) != (0, 0, 0) {
                    dirs.push(Direction::new(Momentum::new(x, y, z))?);
                }
            }
        }
    }
    let dim = alg.dim();
    let per_dir: Vec<Vec<Option<ScanWitness>>> = dirs
        .par_iter()
        .map(|e| {
            let mut out = Vec::new();
            for a in 0..dim {
                for b in 0..dim {
                    for m in -mode_bound..=mode_bound {
                        for n in -mode_bound..=mode_bound {
                            out.push(check_sample(a, b, m, n, e, flavor, alg)?);
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_, RestrictError>>()?;
    let results: Vec<Option<ScanWitness>> = per_dir.into_iter().flatten().collect();
    let trials = results.len() as u64;
    Ok(summarize(flavor, alg, trials, mode_bound, 0, results))
}

fn summarize(
    flavor: &Flavor,
    alg: &MatrixLieAlgebra,
    trials: u64,
    bound: i64,
    seed: u64,
    results: Vec<Option<ScanWitness>>,
) -> ScanReport {
    let violations = results.iter().filter(|w| w.is_some()).count() as u64;
    ScanReport {
        flavor: flavor.to_string(),
        algebra: alg.name().to_string(),
        trials,
        bound,
        seed,
        violations,
        witness: results.into_iter().flatten().next(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::liealg::{sl3, su2};

    fn dir(x: i64, y: i64, z: i64) -> Direction {
        Direction::new(Momentum::new(x, y, z)).unwrap()
    }

    #[test]
    fn embed_examples() {
        assert_eq!(embed(1, 2, &dir(1, 2, 3)).unwrap(), CurrentElement::j(1, Momentum::new(2, 4, 6)));
        assert_eq!(embed(3, 0, &dir(0, 1, 0)).unwrap(), CurrentElement::j(3, Momentum::ZERO));
        assert_eq!(embed(2, -1, &dir(1, 0, 0)).unwrap(), CurrentElement::j(2, Momentum::new(-1, 0, 0)));
        assert_eq!(Direction::new(Momentum::ZERO), Err(RestrictError::ZeroDirection));
        assert!(matches!(embed(0, i64::MAX, &dir(2, 0, 0)), Err(RestrictError::Overflow { .. })));
    }

    #[test]
    fn mf_restriction_vanishes() {
        let sl = sl3();
        let (h1, h2) = (sl.index_of("H1").unwrap(), sl.index_of("H2").unwrap());
        let r = restricted_bracket(h1, h2, 2, 5, &dir(1, 2, 3), &Flavor::MF, &sl).unwrap();
        assert!(r.loop_part.is_empty());
        assert!(r.extension_part.is_zero());
        assert!(r.matches_loop_algebra);
        assert_eq!(r.loop_mode, 7);
    }

    #[test]
    fn kassel_restriction_examples() {
        let su = su2();
        let k = Flavor::Kassel(rat(1, 1).unwrap());
        let r = restricted_bracket(0, 0, 3, -3, &dir(1, 0, 0), &k, &su).unwrap();
        let expected = CurrentElement::term(
            GenSymbol::S { mu: 0, m: Momentum::ZERO },
            G::real(rat(-3, 2).unwrap()),
        );
        assert_eq!(r.extension_part, expected);
        assert!(!r.matches_loop_algebra);
        assert_eq!(expected_extension(0, 0, 3, -3, &dir(1, 0, 0), &k, &su), expected);

        let r = restricted_bracket(0, 0, 3, 2, &dir(1, 0, 0), &k, &su).unwrap();
        assert!(r.extension_part.is_zero());
    }

    #[test]
    fn scans_report_no_violations() {
        let sl = sl3();
        let su = su2();
        assert_eq!(cocycle_scan(&Flavor::MF, &sl, 100, 10, 42).unwrap().violations, 0);
        let k1 = Flavor::Kassel(rat(1, 1).unwrap());
        assert_eq!(cocycle_scan(&k1, &su, 100, 10, 42).unwrap().violations, 0);
        assert_eq!(cocycle_scan(&Flavor::Plain, &sl, 10, 10, 3).unwrap().violations, 0);
    }

    #[test]
    fn check_sample_accepts_closed_forms() {
        // Kassel bracket checked against the MF prediction (zero) must fail.
        let su = su2();
        let k1 = Flavor::Kassel(rat(1, 1).unwrap());
        let w = check_sample(0, 0, 2, -2, &dir(0, 1, 0), &k1, &su).unwrap();
        assert!(w.is_none());
        let bad = su.corrupted();
        let w = check_sample(0, 1, 1, 1, &dir(1, 0, 0), &Flavor::Plain, &bad).unwrap();
        // corrupted algebra still closes on itself: loop part = its own f
        assert!(w.is_none());
    }

    #[test]
    fn central_element_scales_with_direction() {
        let e = dir(1, -2, 3);
        for t in [-3i64, -1, 2, 5] {
            let te = Direction::new(e.vector().checked_scale(t).unwrap()).unwrap();
            assert_eq!(central_element(&te), central_element(&e).scale(&G::from_int(t)));
        }
    }
}
