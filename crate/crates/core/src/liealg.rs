//! Finite-dimensional matrix Lie algebras and their invariant tensors.
//!
//! For a basis `T^a` of `n×n` matrices over `Q(i)` we compute
//!
//! * structure constants `[T^a, T^b] = f^{ab}_c T^c`,
//! * the trace metric `κ^{ab} = tr(T^a T^b)`,
//! * the symmetric cubic tensor `d^{abc} = tr({T^a, T^b} T^c)`,
//!
//! and check closure, antisymmetry, Jacobi, symmetry and ad-invariance
//! exactly before handing the algebra out.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{GaussianRational, Rational};
use crate::linalg::{self, Inertia, LinalgError};

type G = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("basis is empty")]
    EmptyBasis,
    #[error("basis matrix {index} is {rows}x{cols}, expected {n}x{n}")]
    BadShape {
        index: usize,
        rows: usize,
        cols: usize,
        n: usize,
    },
    #[error("basis element {index} is linearly dependent on the preceding elements")]
    LinearlyDependent { index: usize },
    #[error("commutator [T{a}, T{b}] is not in the span of the basis")]
    NotClosed { a: usize, b: usize },
    #[error("identity violated: {identity} at indices {indices:?}")]
    InvariantViolated {
        identity: &'static str,
        indices: Vec<usize>,
    },
    #[error("index {index} out of range for algebra of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("tensor has dimension {got}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} labels given for {1} basis elements")]
    LabelCount(usize, usize),
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("unknown algebra {0:?} (built-ins: su2, sl3)")]
    UnknownAlgebra(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("algebra file: {context}: {reason}")]
    Parse { context: String, reason: String },
}

/// Dense square matrix over `Q(i)`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<G>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![G::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<G>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(SquareMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer-entry convenience constructor.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| G::from_int(x)).collect())
                .collect(),
        )
        .expect("square integer matrix")
    }

    /// `E_{ij}` with a single 1 at row `i`, column `j` (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = SquareMatrix::zeros(n);
        m.data[i * n + j] = G::one();
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &G {
        &self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[G] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<G>> {
        self.data.chunks(self.n).map(<[G]>::to_vec).collect()
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        let n = self.n;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SquareMatrix) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &SquareMatrix) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &G) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn commutator(&self, other: &SquareMatrix) -> SquareMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &SquareMatrix) -> SquareMatrix {
        self.mul(other).add(&other.mul(self))
    }

    pub fn trace(&self) -> G {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &SquareMatrix) -> G {
        let n = self.n;
        let mut acc = G::zero();
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                let b = other.get(k, i);
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
        }
        acc
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n)).finish()
    }
}

/// Dense 3-index tensor over `Q(i)`, indexed `[a][b][c]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor3 {
    dim: usize,
    data: Vec<G>,
}

impl Tensor3 {
    pub fn zeros(dim: usize) -> Self {
        Tensor3 {
            dim,
            data: vec![G::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &G {
        &self.data[(a * self.dim + b) * self.dim + c]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, value: G) {
        let d = self.dim;
        self.data[(a * d + b) * d + c] = value;
    }

    /// Writes `value` at all six permutations of `(a, b, c)`.
    pub fn set_symmetric(&mut self, a: usize, b: usize, c: usize, value: G) {
        for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            self.set(x, y, z, value.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(G::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }
}

/// A validated matrix Lie algebra with its invariant tensors.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    name: String,
    rep_size: usize,
    labels: Vec<String>,
    basis: Vec<SquareMatrix>,
    /// `structure[a][b]` lists the nonzero `(c, f^{ab}_c)`.
    structure: Vec<Vec<Vec<(usize, G)>>>,
    kappa: Vec<Vec<G>>,
    d_tensor: Tensor3,
}

/// Build an algebra with default labels `T1..Td`.
pub fn build_algebra(name: &str, basis: Vec<SquareMatrix>) -> Result<MatrixLieAlgebra, AlgebraError> {
    let labels = (1..=basis.len()).map(|i| format!("T{i}")).collect();
    build_algebra_with_labels(name, basis, labels)
}

pub fn build_algebra_with_labels(
    name: &str,
    basis: Vec<SquareMatrix>,
    labels: Vec<String>,
) -> Result<MatrixLieAlgebra, AlgebraError> {
    let dim = basis.len();
    if dim == 0 {
        return Err(AlgebraError::EmptyBasis);
    }
    if labels.len() != dim {
        return Err(AlgebraError::LabelCount(labels.len(), dim));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(AlgebraError::DuplicateLabel(l.clone()));
        }
    }
    let n = basis[0].size();
    for (index, m) in basis.iter().enumerate() {
        if m.size() != n || m.entries().len() != n * n {
            return Err(AlgebraError::BadShape {
                index,
                rows: m.size(),
                cols: m.entries().len() / m.size().max(1),
                n,
            });
        }
    }

    // Independence: the first element that does not raise the rank is dependent.
    let vectors: Vec<Vec<G>> = basis.iter().map(|m| m.entries().to_vec()).collect();
    for index in 0..dim {
        if linalg::rank(&vectors[..=index]) != index + 1 {
            return Err(AlgebraError::LinearlyDependent { index });
        }
    }

    let mut structure = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            if a == b {
                continue;
            }
            if b < a {
                // antisymmetry; f^{ab} = -f^{ba}, verified below anyway
                structure[a][b] = structure[b][a]
                    .iter()
                    .map(|(c, v): &(usize, G)| (*c, -v))
                    .collect();
                continue;
            }
            let comm = basis[a].commutator(&basis[b]);
            let coeffs = linalg::solve_in_span(&vectors, comm.entries())
                .ok_or(AlgebraError::NotClosed { a, b })?;
            structure[a][b] = coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
    }

    let kappa: Vec<Vec<G>> = (0..dim)
        .map(|a| (0..dim).map(|b| basis[a].trace_product(&basis[b])).collect())
        .collect();

    let mut d_tensor = Tensor3::zeros(dim);
    for a in 0..dim {
        for b in a..dim {
            let anti = basis[a].anticommutator(&basis[b]);
            for c in b..dim {
                let v = anti.trace_product(&basis[c]);
                d_tensor.set_symmetric(a, b, c, v);
            }
        }
    }

    let alg = MatrixLieAlgebra {
        name: name.to_string(),
        rep_size: n,
        labels,
        basis,
        structure,
        kappa,
        d_tensor,
    };
    alg.verify()?;
    Ok(alg)
}

impl MatrixLieAlgebra {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rep_size(&self) -> usize {
        self.rep_size
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn basis(&self) -> &[SquareMatrix] {
        &self.basis
    }

    /// Resolve a basis label, or failing that a 0-based index.
    pub fn index_of(&self, label: &str) -> Result<usize, AlgebraError> {
        if let Some(i) = self.labels.iter().position(|l| l == label) {
            return Ok(i);
        }
        match label.parse::<usize>() {
            Ok(i) if i < self.dim() => Ok(i),
            _ => Err(AlgebraError::UnknownLabel(label.to_string())),
        }
    }

    pub fn check_index(&self, index: usize) -> Result<(), AlgebraError> {
        if index < self.dim() {
            Ok(())
        } else {
            Err(AlgebraError::IndexOutOfRange {
                index,
                dim: self.dim(),
            })
        }
    }

    /// Nonzero `(c, f^{ab}_c)` pairs.
    pub fn bracket_terms(&self, a: usize, b: usize) -> &[(usize, G)] {
        &self.structure[a][b]
    }

    pub fn f(&self, a: usize, b: usize, c: usize) -> G {
        self.structure[a][b]
            .iter()
            .find(|(i, _)| *i == c)
            .map(|(_, v)| v.clone())
            .unwrap_or_default()
    }

    pub fn kappa(&self) -> &[Vec<G>] {
        &self.kappa
    }

    pub fn kappa_entry(&self, a: usize, b: usize) -> &G {
        &self.kappa[a][b]
    }

    pub fn d_tensor_full(&self) -> &Tensor3 {
        &self.d_tensor
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().flatten().all(Vec::is_empty)
    }

    /// Inertia of κ when it is real (always the case for the built-ins).
    pub fn kappa_inertia(&self) -> Option<Inertia> {
        let real: Option<Vec<Vec<Rational>>> = self
            .kappa
            .iter()
            .map(|row| row.iter().map(|x| x.is_real().then(|| x.re.clone())).collect())
            .collect();
        real.and_then(|m| linalg::inertia(&m).ok())
    }

    pub fn kappa_is_degenerate(&self) -> bool {
        linalg::rank(&self.kappa) < self.dim()
    }

    /// Non-fatal observations about the algebra.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.is_abelian() {
            w.push("algebra is abelian: all structure constants vanish".to_string());
        }
        if self.kappa_is_degenerate() {
            w.push("trace form kappa is degenerate".to_string());
        }
        w
    }

    fn verify(&self) -> Result<(), AlgebraError> {
        let dim = self.dim();
        let fail = |identity, indices: Vec<usize>| AlgebraError::InvariantViolated { identity, indices };
        let f = |a, b, c| self.f(a, b, c);
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    if f(a, b, c) != -f(b, a, c) {
                        return Err(fail("antisymmetry of f", vec![a, b, c]));
                    }
                }
            }
        }
        // Jacobi: f^{ab}_d f^{dc}_e + f^{bc}_d f^{da}_e + f^{ca}_d f^{db}_e = 0
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let mut acc = vec![G::zero(); dim];
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for (d, fxy) in self.bracket_terms(x, y) {
                            for (e, fdz) in self.bracket_terms(*d, z) {
                                acc[*e] += fxy * fdz;
                            }
                        }
                    }
                    if let Some(e) = acc.iter().position(|v| !v.is_zero()) {
                        return Err(fail("Jacobi identity", vec![a, b, c, e]));
                    }
                }
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                if self.kappa[a][b] != self.kappa[b][a] {
                    return Err(fail("symmetry of kappa", vec![a, b]));
                }
            }
        }
        let d = &self.d_tensor;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let v = d.get(a, b, c);
                    if v != d.get(b, a, c) || v != d.get(a, c, b) {
                        return Err(fail("total symmetry of d", vec![a, b, c]));
                    }
                }
            }
        }
        // ad-invariance of kappa: f^{xa}_e κ^{eb} + f^{xb}_e κ^{ae} = 0
        for x in 0..dim {
            for a in 0..dim {
                for b in 0..dim {
                    let mut acc = G::zero();
                    for (e, v) in self.bracket_terms(x, a) {
                        acc += v * &self.kappa[*e][b];
                    }
                    for (e, v) in self.bracket_terms(x, b) {
                        acc += v * &self.kappa[a][*e];
                    }
                    if !acc.is_zero() {
                        return Err(fail("ad-invariance of kappa", vec![x, a, b]));
                    }
                }
            }
        }
        for x in 0..dim {
            for a in 0..dim {
                for b in a..dim {
                    for c in b..dim {
                        if !self.invariance_defect_unchecked(d, x, a, b, c).is_zero() {
                            return Err(fail("ad-invariance of d", vec![x, a, b, c]));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn invariance_defect_unchecked(&self, t: &Tensor3, x: usize, a: usize, b: usize, c: usize) -> G {
        let mut acc = G::zero();
        for (e, v) in self.bracket_terms(x, a) {
            acc += v * t.get(*e, b, c);
        }
        for (e, v) in self.bracket_terms(x, b) {
            acc += v * t.get(a, *e, c);
        }
        for (e, v) in self.bracket_terms(x, c) {
            acc += v * t.get(a, b, *e);
        }
        acc
    }

    /// Copy with one structure constant shifted while keeping
    /// antisymmetry; the result generally fails Jacobi. Only for exercising
    /// violation reporting.
    #[doc(hidden)]
    pub fn corrupted(&self) -> MatrixLieAlgebra {
        let mut out = self.clone();
        if self.dim() >= 2 {
            let bump = |terms: &mut Vec<(usize, G)>, delta: G| {
                match terms.iter_mut().find(|(c, _)| *c == 0) {
                    Some((_, v)) => *v += delta,
                    None => terms.insert(0, (0, delta)),
                }
                terms.retain(|(_, v)| !v.is_zero());
            };
            bump(&mut out.structure[0][1], G::one());
            bump(&mut out.structure[1][0], -G::one());
            out.name = format!("{}-corrupted", self.name);
        }
        out
    }
}

/// `tr({T^a, T^b} T^c)`.
pub fn d_tensor(alg: &MatrixLieAlgebra, a: usize, b: usize, c: usize) -> Result<G, AlgebraError> {
    for i in [a, b, c] {
        alg.check_index(i)?;
    }
    Ok(alg.d_tensor.get(a, b, c).clone())
}

/// `f^{xa}_e X^{ebc} + f^{xb}_e X^{aec} + f^{xc}_e X^{abe}`; vanishes for
/// every ad-invariant `X`.
pub fn invariance_defect(
    alg: &MatrixLieAlgebra,
    tensor: &Tensor3,
    x: usize,
    a: usize,
    b: usize,
    c: usize,
) -> Result<G, AlgebraError> {
    if tensor.dim() != alg.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: alg.dim(),
            got: tensor.dim(),
        });
    }
    for i in [x, a, b, c] {
        alg.check_index(i)?;
    }
    Ok(alg.invariance_defect_unchecked(tensor, x, a, b, c))
}

/// su(2) in the compact basis `T^a = -(i/2) σ^a`, labels `T1, T2, T3`.
pub fn su2() -> MatrixLieAlgebra {
    let h = Rational::from_int(1) / Rational::from_int(2);
    let z = G::zero();
    let c = |re: Rational, im: Rational| G::new(re, im);
    let zero = Rational::zero;
    // -(i/2)σ1 = [[0, -i/2], [-i/2, 0]]
    let t1 = vec![
        vec![z.clone(), c(zero(), -&h)],
        vec![c(zero(), -&h), z.clone()],
    ];
    // -(i/2)σ2 = -(i/2)[[0, -i], [i, 0]] = [[0, -1/2], [1/2, 0]]
    let t2 = vec![
        vec![z.clone(), c(-&h, zero())],
        vec![c(h.clone(), zero()), z.clone()],
    ];
    // -(i/2)σ3 = [[-i/2, 0], [0, i/2]]
    let t3 = vec![
        vec![c(zero(), -&h), z.clone()],
        vec![z, c(zero(), h.clone())],
    ];
    let basis = [t1, t2, t3]
        .into_iter()
        .map(|m| SquareMatrix::from_rows(m).expect("2x2"))
        .collect();
    build_algebra_with_labels("su2", basis, vec!["T1".into(), "T2".into(), "T3".into()])
        .expect("su2 basis is valid")
}

pub const SL3_LABELS: [&str; 8] = ["E12", "E21", "E13", "E31", "E23", "E32", "H1", "H2"];

/// sl(3) in the elementary-matrix basis, labels as in [`SL3_LABELS`].
pub fn sl3() -> MatrixLieAlgebra {
    let e = |i: usize, j: usize| SquareMatrix::unit(3, i - 1, j - 1);
    let basis = vec![
        e(1, 2),
        e(2, 1),
        e(1, 3),
        e(3, 1),
        e(2, 3),
        e(3, 2),
        e(1, 1).sub(&e(2, 2)),
        e(2, 2).sub(&e(3, 3)),
    ];
    build_algebra_with_labels("sl3", basis, SL3_LABELS.iter().map(|s| s.to_string()).collect())
        .expect("sl3 basis is valid")
}

pub fn builtin(name: &str) -> Option<MatrixLieAlgebra> {
    match name {
        "su2" => Some(su2()),
        "sl3" => Some(sl3()),
        _ => None,
    }
}

/// On-disk algebra definition. Entries are `["re", "im"]` rational strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub rep_size: usize,
    pub basis: Vec<Vec<Vec<[String; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &MatrixLieAlgebra) -> Self {
        AlgebraFile {
            name: alg.name().to_string(),
            rep_size: alg.rep_size(),
            basis: alg
                .basis()
                .iter()
                .map(|m| {
                    m.rows()
                        .into_iter()
                        .map(|r| r.iter().map(|x| [x.re.to_string(), x.im.to_string()]).collect())
                        .collect()
                })
                .collect(),
            labels: Some(alg.labels().to_vec()),
        }
    }

    pub fn into_algebra(self) -> Result<MatrixLieAlgebra, AlgebraError> {
        let n = self.rep_size;
        if n == 0 {
            return Err(AlgebraError::Parse {
                context: "rep_size".into(),
                reason: "must be positive".into(),
            });
        }
        let mut basis = Vec::with_capacity(self.basis.len());
        for (a, m) in self.basis.iter().enumerate() {
            if m.len() != n {
                return Err(AlgebraError::Parse {
                    context: format!("basis[{a}]"),
                    reason: format!("has {} rows, rep_size is {n}", m.len()),
                });
            }
            let mut rows = Vec::with_capacity(n);
            for (i, row) in m.iter().enumerate() {
                if row.len() != n {
                    return Err(AlgebraError::Parse {
                        context: format!("basis[{a}][{i}]"),
                        reason: format!("ragged row: {} entries, expected {n}", row.len()),
                    });
                }
                let mut parsed = Vec::with_capacity(n);
                for (j, [re, im]) in row.iter().enumerate() {
                    let part = |s: &str, which: &str| {
                        s.parse::<Rational>().map_err(|e| AlgebraError::Parse {
                            context: format!("basis[{a}][{i}][{j}].{which}"),
                            reason: e.to_string(),
                        })
                    };
                    parsed.push(G::new(part(re, "re")?, part(im, "im")?));
                }
                rows.push(parsed);
            }
            basis.push(SquareMatrix::from_rows(rows).expect("validated shape"));
        }
        match self.labels {
            Some(labels) => build_algebra_with_labels(&self.name, basis, labels),
            None => build_algebra(&self.name, basis),
        }
    }
}

pub fn parse_algebra_json(text: &str) -> Result<MatrixLieAlgebra, AlgebraError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let reason = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(r, _)| r).to_string();
        AlgebraError::Parse { context: format!("line {}, column {}", e.line(), e.column()), reason }
    })?;
    file.into_algebra()
}

/// Built-in name or path to an algebra JSON file.
pub fn load_algebra(source: &str) -> Result<MatrixLieAlgebra, AlgebraError> {
    if let Some(alg) = builtin(source) {
        return Ok(alg);
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(AlgebraError::UnknownAlgebra(source.to_string()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| AlgebraError::Io {
        path: source.to_string(),
        reason: e.to_string(),
    })?;
    parse_algebra_json(&text)
}

impl From<LinalgError> for AlgebraError {
    fn from(e: LinalgError) -> Self {
        AlgebraError::Parse {
            context: "linear algebra".into(),
            reason: e.to_string(),
        }
    }
}
