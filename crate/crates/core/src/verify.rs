//! Randomized Jacobi and antisymmetry checks for the current-algebra brackets.

use rayon::prelude::*;
use serde::Serialize;

use crate::currentalg::{bracket, jacobi_defect, CurrentElement, CurrentError, Flavor, GenSymbol};
use crate::liealg::MatrixLieAlgebra;
use crate::sampling;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiWitness {
    pub trial: u64,
    pub kind: &'static str,
    pub x: String,
    pub y: String,
    pub z: Option<String>,
    pub defect: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub algebra: String,
    pub flavor: String,
    pub trials: u64,
    pub max_momentum: i64,
    pub seed: u64,
    pub violations: u64,
    /// Trials where at least one of `x, y, z` involved an `A` or `S` symbol.
    pub trials_with_extension_symbols: u64,
    pub witness: Option<JacobiWitness>,
}

struct Outcome {
    violation: Option<JacobiWitness>,
    extension_symbols: bool,
}

fn run_trial(
    alg: &MatrixLieAlgebra,
    flavor: &Flavor,
    max_momentum: i64,
    seed: u64,
    trial: u64,
) -> Result<Outcome, CurrentError> {
    let mut rng = sampling::trial_rng(seed, trial);
    let dim = alg.dim();
    let x = sampling::element(&mut rng, dim, max_momentum, flavor);
    let y = sampling::element(&mut rng, dim, max_momentum, flavor);
    let z = sampling::element(&mut rng, dim, max_momentum, flavor);
    let extension_symbols = [&x, &y, &z]
        .iter()
        .any(|e| e.terms().any(|(s, _)| matches!(s, GenSymbol::A { .. } | GenSymbol::S { .. })));
    let show = |e: &CurrentElement| e.display_with(alg).to_string();

    let anti = bracket(&x, &y, flavor, alg)?.plus(&bracket(&y, &x, flavor, alg)?);
    if !anti.is_zero() {
        return Ok(Outcome {
            violation: Some(JacobiWitness {
                trial,
                kind: "antisymmetry",
                x: show(&x),
                y: show(&y),
                z: None,
                defect: show(&anti),
            }),
            extension_symbols,
        });
    }
    let defect = jacobi_defect(&x, &y, &z, flavor, alg)?;
    let violation = (!defect.is_zero()).then(|| JacobiWitness {
        trial,
        kind: "jacobi",
        x: show(&x),
        y: show(&y),
        z: Some(show(&z)),
        defect: show(&defect),
    });
    Ok(Outcome {
        violation,
        extension_symbols,
    })
}

/// Runs `trials` random triples, each checked for antisymmetry of `[x, y]`
/// and for the Jacobi identity. The witness is the lowest-numbered failing
/// trial, independent of scheduling.
pub fn verify_jacobi(
    alg: &MatrixLieAlgebra,
    flavor: &Flavor,
    trials: u64,
    max_momentum: i64,
    seed: u64,
) -> Result<JacobiReport, CurrentError> {
    let outcomes: Vec<Outcome> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(alg, flavor, max_momentum, seed, t))
        .collect::<Result<_, _>>()?;
    let violations = outcomes.iter().filter(|o| o.violation.is_some()).count() as u64;
    let trials_with_extension_symbols = outcomes.iter().filter(|o| o.extension_symbols).count() as u64;
    let witness = outcomes.into_iter().find_map(|o| o.violation);
    Ok(JacobiReport {
        algebra: alg.name().to_string(),
        flavor: flavor.to_string(),
        trials,
        max_momentum,
        seed,
        violations,
        trials_with_extension_symbols,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::liealg::{sl3, su2};

    #[test]
    fn su2_all_flavors_clean() {
        let su = su2();
        for flavor in [Flavor::Plain, Flavor::MF, Flavor::Kassel(rat(-2, 1).unwrap())] {
            let r = verify_jacobi(&su, &flavor, 60, 3, 7).unwrap();
            assert_eq!(r.violations, 0, "{flavor}: {:?}", r.witness);
        }
    }

    #[test]
    fn corruption_is_caught() {
        let bad = sl3().corrupted();
        let r = verify_jacobi(&bad, &Flavor::Plain, 50, 3, 42).unwrap();
        assert!(r.violations > 0);
        assert!(r.witness.is_some());
        let bad = su2().corrupted();
        let r = verify_jacobi(&bad, &Flavor::Plain, 50, 3, 42).unwrap();
        assert!(r.violations > 0);
    }

    #[test]
    fn report_is_deterministic() {
        let sl = sl3();
        let a = verify_jacobi(&sl, &Flavor::MF, 20, 3, 99).unwrap();
        let b = verify_jacobi(&sl, &Flavor::MF, 20, 3, 99).unwrap();
        assert_eq!(a, b);
        assert!(a.trials_with_extension_symbols > 0);
    }
}
