//! Highest-weight modules of affine `sl(2)` and their contravariant
//! (Shapovalov) form.
//!
//! Relations at level `k`:
//!
//! ```text
//! [E_m, F_n] = H_{m+n} + m k δ_{m+n,0}
//! [H_m, E_n] = 2 E_{m+n}      [H_m, F_n] = -2 F_{m+n}
//! [H_m, H_n] = 2 m k δ_{m+n,0}
//! ```
//!
//! The highest-weight vector `v` is killed by all positive modes and by
//! `E_0`, with `H_0 v = h v`. The Verma module is spanned by ordered
//! monomials in `E_{-n}, H_{-n}, F_{-n}` (`n ≥ 1`) and `F_0`. The form uses
//! the compact conjugation `E_n† = F_{-n}`, `H_n† = H_{-n}` and `⟨v, v⟩ = 1`.
//! Null vectors are kept (no quotient is taken).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::Rational;
use crate::linalg::{self, Inertia};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("grade {grade} exceeds the configured maximum {max}")]
    GradeLimit { grade: u32, max: u32 },
}

/// Level `k` and `H_0`-eigenvalue `h` (`h = 2j` for spin `j`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AffineWeight {
    pub k: Rational,
    pub h: Rational,
}

impl AffineWeight {
    pub fn new(k: Rational, h: Rational) -> Self {
        AffineWeight { k, h }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    E,
    H,
    F,
}

/// `X_n` for a letter `X`. Field order makes the derived `Ord` the canonical
/// PBW order: deeper modes first, ties broken `E < H < F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeOp {
    pub mode: i64,
    pub letter: Letter,
}

impl ModeOp {
    pub fn new(letter: Letter, mode: i64) -> Self {
        ModeOp { mode, letter }
    }

    /// Creation operators of the Verma module.
    pub fn is_lowering(&self) -> bool {
        self.mode < 0 || (self.mode == 0 && self.letter == Letter::F)
    }

    pub fn dagger(&self) -> ModeOp {
        let letter = match self.letter {
            Letter::E => Letter::F,
            Letter::H => Letter::H,
            Letter::F => Letter::E,
        };
        ModeOp::new(letter, -self.mode)
    }

    /// Shift of the `H_0` eigenvalue.
    pub fn charge(&self) -> i64 {
        match self.letter {
            Letter::E => 2,
            Letter::H => 0,
            Letter::F => -2,
        }
    }
}

impl fmt::Display for ModeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.letter, self.mode)
    }
}

/// `[x, y] = coeff · op + central`, with the central element evaluated at
/// level `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeCommutator {
    pub term: Option<(Rational, ModeOp)>,
    pub central: Rational,
}

pub fn mode_commutator(x: ModeOp, y: ModeOp, k: &Rational) -> ModeCommutator {
    use Letter::*;
    let (m, n) = (x.mode, y.mode);
    let p = m + n;
    let delta = |coeff: i64| {
        if p == 0 {
            Rational::from_int(coeff) * k
        } else {
            Rational::zero()
        }
    };
    let term = |c: i64, l: Letter| Some((Rational::from_int(c), ModeOp::new(l, p)));
    let (term, central) = match (x.letter, y.letter) {
        (E, F) => (term(1, H), delta(m)),
        (F, E) => (term(-1, H), delta(-n)),
        (H, E) => (term(2, E), Rational::zero()),
        (E, H) => (term(-2, E), Rational::zero()),
        (H, F) => (term(-2, F), Rational::zero()),
        (F, H) => (term(2, F), Rational::zero()),
        (H, H) => (None, delta(2 * m)),
        (E, E) | (F, F) => (None, Rational::zero()),
    };
    ModeCommutator { term, central }
}

/// Canonically ordered product of creation operators applied to `v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PBWMonomial(Vec<ModeOp>);

impl PBWMonomial {
    pub fn vacuum() -> Self {
        PBWMonomial(Vec::new())
    }

    /// Sorts the letters; all must be creation operators.
    pub fn new(mut letters: Vec<ModeOp>) -> Self {
        assert!(letters.iter().all(ModeOp::is_lowering), "not a creation operator");
        letters.sort();
        PBWMonomial(letters)
    }

    pub fn letters(&self) -> &[ModeOp] {
        &self.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn grade(&self) -> u32 {
        self.0.iter().map(|op| (-op.mode) as u32).sum()
    }

    pub fn charge(&self) -> i64 {
        self.0.iter().map(ModeOp::charge).sum()
    }

    pub fn f0_count(&self) -> u32 {
        self.0.iter().filter(|op| op.mode == 0).count() as u32
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for op in &self.0 {
            write!(f, "{op}")?;
        }
        Ok(())
    }
}

pub type ModuleVector = BTreeMap<PBWMonomial, Rational>;

fn add_into(acc: &mut ModuleVector, mono: PBWMonomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(mono.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        acc.remove(&mono);
    }
}

/// Verma module at a fixed weight, with a memo of operator actions.
pub struct VermaModule {
    weight: AffineWeight,
    memo: HashMap<(ModeOp, PBWMonomial), ModuleVector>,
}

impl VermaModule {
    pub fn new(weight: AffineWeight) -> Self {
        VermaModule {
            weight,
            memo: HashMap::new(),
        }
    }

    pub fn weight(&self) -> &AffineWeight {
        &self.weight
    }

    /// `op · (mono v)` in the PBW basis.
    pub fn act(&mut self, op: ModeOp, mono: &PBWMonomial) -> ModuleVector {
        if let Some(v) = self.memo.get(&(op, mono.clone())) {
            return v.clone();
        }
        let out = self.act_uncached(op, mono);
        self.memo.insert((op, mono.clone()), out.clone());
        out
    }

    fn act_uncached(&mut self, op: ModeOp, mono: &PBWMonomial) -> ModuleVector {
        let mut out = ModuleVector::new();
        let Some((&first, rest)) = mono.0.split_first() else {
            if op.is_lowering() {
                out.insert(PBWMonomial(vec![op]), Rational::one());
            } else if op == ModeOp::new(Letter::H, 0) && !self.weight.h.is_zero() {
                out.insert(PBWMonomial::vacuum(), self.weight.h.clone());
            }
            return out;
        };
        if op.is_lowering() && op <= first {
            let mut letters = Vec::with_capacity(mono.0.len() + 1);
            letters.push(op);
            letters.extend_from_slice(&mono.0);
            out.insert(PBWMonomial(letters), Rational::one());
            return out;
        }
        // op·first·rest = first·(op·rest) + [op, first]·rest
        let rest = PBWMonomial(rest.to_vec());
        for (u, c) in self.act(op, &rest) {
            for (w, d) in self.act(first, &u) {
                add_into(&mut out, w, &c * &d);
            }
        }
        let comm = mode_commutator(op, first, &self.weight.k);
        if let Some((c, x)) = comm.term {
            for (w, d) in self.act(x, &rest) {
                add_into(&mut out, w, &c * &d);
            }
        }
        add_into(&mut out, rest, comm.central);
        out
    }

    /// `⟨x v, y v⟩`, read off as the vacuum coefficient of `x† y v`.
    pub fn pair(&mut self, x: &PBWMonomial, y: &PBWMonomial) -> Rational {
        if x.grade() != y.grade() || x.charge() != y.charge() {
            return Rational::zero();
        }
        let mut vec = ModuleVector::new();
        vec.insert(y.clone(), Rational::one());
        for op in &x.0 {
            let dag = op.dagger();
            let mut next = ModuleVector::new();
            for (u, c) in vec {
                for (w, d) in self.act(dag, &u) {
                    add_into(&mut next, w, &c * &d);
                }
            }
            vec = next;
            if vec.is_empty() {
                return Rational::zero();
            }
        }
        vec.remove(&PBWMonomial::vacuum()).unwrap_or_default()
    }
}

/// One-shot `⟨x v, y v⟩`.
pub fn shapovalov_pair(x: &PBWMonomial, y: &PBWMonomial, w: &AffineWeight) -> Rational {
    VermaModule::new(w.clone()).pair(x, y)
}

/// Enumeration limits. `max_f0` caps the number of `F_0` letters, which is
/// otherwise unbounded at every grade.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModuleLimits {
    pub max_grade: u32,
    pub max_f0: u32,
}

impl Default for ModuleLimits {
    fn default() -> Self {
        ModuleLimits {
            max_grade: 4,
            max_f0: 3,
        }
    }
}

/// All canonical monomials of the given grade (any charge), in generation
/// order.
pub fn pbw_grade(grade: u32, limits: &ModuleLimits) -> Result<Vec<PBWMonomial>, AffineError> {
    if grade > limits.max_grade {
        return Err(AffineError::GradeLimit {
            grade,
            max: limits.max_grade,
        });
    }
    let mut alphabet = Vec::new();
    for mode in -(grade as i64)..0 {
        for letter in [Letter::E, Letter::H, Letter::F] {
            alphabet.push(ModeOp::new(letter, mode));
        }
    }
    alphabet.push(ModeOp::new(Letter::F, 0));

    fn rec(
        alphabet: &[ModeOp],
        start: usize,
        remaining: u32,
        f0_left: u32,
        cur: &mut Vec<ModeOp>,
        out: &mut Vec<PBWMonomial>,
    ) {
        if remaining == 0 {
            out.push(PBWMonomial(cur.clone()));
        }
        for (i, &op) in alphabet.iter().enumerate().skip(start) {
            let depth = (-op.mode) as u32;
            if op.mode == 0 {
                if f0_left == 0 || remaining != 0 {
                    continue;
                }
                cur.push(op);
                rec(alphabet, i, 0, f0_left - 1, cur, out);
                cur.pop();
            } else if depth <= remaining {
                cur.push(op);
                rec(alphabet, i, remaining - depth, f0_left, cur, out);
                cur.pop();
            }
        }
    }

    let mut out = Vec::new();
    rec(&alphabet, 0, grade, limits.max_f0, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Monomials of one grade and charge.
pub fn pbw_basis(grade: u32, charge: i64, limits: &ModuleLimits) -> Result<Vec<PBWMonomial>, AffineError> {
    Ok(pbw_grade(grade, limits)?
        .into_iter()
        .filter(|m| m.charge() == charge)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramReport {
    pub grade: u32,
    pub charge: i64,
    pub basis: Vec<PBWMonomial>,
    pub matrix: Vec<Vec<Rational>>,
    pub inertia: Inertia,
    pub null_basis: Vec<Vec<Rational>>,
    /// `(vector, norm)` with negative norm, when `inertia.negative > 0`.
    pub negative_witness: Option<(Vec<Rational>, Rational)>,
}

impl GramReport {
    pub fn is_all_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Rational::is_zero)
    }
}

fn block_report(module: &mut VermaModule, grade: u32, charge: i64, basis: Vec<PBWMonomial>) -> GramReport {
    let n = basis.len();
    let mut matrix = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = module.pair(&basis[i], &basis[j]);
            matrix[j][i] = v.clone();
            matrix[i][j] = v;
        }
    }
    let congruence = linalg::congruence(&matrix).expect("Gram matrix is symmetric");
    let null_basis = linalg::kernel(&matrix);
    // Prefer a single basis vector with negative norm; fall back to the
    // congruence vector.
    let negative_witness = if congruence.inertia.negative == 0 {
        None
    } else if let Some(i) = (0..n).find(|&i| matrix[i][i].is_negative()) {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        Some((v, matrix[i][i].clone()))
    } else {
        congruence.negative_vectors.first().cloned()
    };
    GramReport {
        grade,
        charge,
        basis,
        matrix,
        inertia: congruence.inertia,
        null_basis,
        negative_witness,
    }
}

/// Gram blocks of one grade, one per charge, ordered by descending charge.
pub fn gram_with(module: &mut VermaModule, grade: u32, limits: &ModuleLimits) -> Result<Vec<GramReport>, AffineError> {
    let mut by_charge: BTreeMap<i64, Vec<PBWMonomial>> = BTreeMap::new();
    for m in pbw_grade(grade, limits)? {
        by_charge.entry(m.charge()).or_default().push(m);
    }
    Ok(by_charge
        .into_iter()
        .rev()
        .map(|(charge, basis)| block_report(module, grade, charge, basis))
        .collect())
}

pub fn gram(grade: u32, w: &AffineWeight, limits: &ModuleLimits) -> Result<Vec<GramReport>, AffineError> {
    gram_with(&mut VermaModule::new(w.clone()), grade, limits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NonUnitary,
    CandidateUnitary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessTerm {
    pub monomial: String,
    pub coeff: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormWitness {
    pub grade: u32,
    pub vector: Vec<WitnessTerm>,
    pub norm: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub k: Rational,
    pub h: Rational,
    pub max_grade: u32,
    pub verdict: Verdict,
    pub witness: Option<NormWitness>,
    pub all_null: bool,
    /// Grades at which some block has a nontrivial kernel.
    pub null_grades: Vec<u32>,
}

/// Verdict for one weight through `max_grade`.
pub fn scan_weight(w: &AffineWeight, max_grade: u32, limits: &ModuleLimits) -> Result<ScanRow, AffineError> {
    if max_grade > limits.max_grade {
        return Err(AffineError::GradeLimit {
            grade: max_grade,
            max: limits.max_grade,
        });
    }
    let mut module = VermaModule::new(w.clone());
    let mut witness = None;
    let mut all_null = true;
    let mut null_grades = Vec::new();
    for grade in 0..=max_grade {
        let blocks = gram_with(&mut module, grade, limits)?;
        if blocks.iter().any(|b| b.inertia.zero > 0) {
            null_grades.push(grade);
        }
        for b in &blocks {
            let nonvacuum_nonzero = b.basis.iter().enumerate().any(|(i, mi)| {
                !mi.is_vacuum() && b.matrix[i].iter().any(|x| !x.is_zero())
            });
            if nonvacuum_nonzero {
                all_null = false;
            }
        }
        if witness.is_none() {
            witness = blocks.iter().find_map(|b| {
                b.negative_witness.as_ref().map(|(v, norm)| NormWitness {
                    grade,
                    vector: b
                        .basis
                        .iter()
                        .zip(v)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(m, c)| WitnessTerm {
                            monomial: m.to_string(),
                            coeff: c.clone(),
                        })
                        .collect(),
                    norm: norm.clone(),
                })
            });
        }
    }
    let verdict = if witness.is_some() {
        Verdict::NonUnitary
    } else {
        Verdict::CandidateUnitary
    };
    Ok(ScanRow {
        k: w.k.clone(),
        h: w.h.clone(),
        max_grade,
        verdict,
        witness,
        all_null,
        null_grades,
    })
}

/// Every `(k, h)` pair, levels outermost.
pub fn unitarity_scan(
    levels: &[Rational],
    weights: &[Rational],
    max_grade: u32,
    limits: &ModuleLimits,
) -> Result<Vec<ScanRow>, AffineError> {
    use rayon::prelude::*;
    let pairs: Vec<AffineWeight> = levels
        .iter()
        .flat_map(|k| weights.iter().map(move |h| AffineWeight::new(k.clone(), h.clone())))
        .collect();
    pairs
        .par_iter()
        .map(|w| scan_weight(w, max_grade, limits))
        .collect()
}
