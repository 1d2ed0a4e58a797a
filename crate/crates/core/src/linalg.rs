//! Exact dense linear algebra over `Q` and `Q(i)`: row reduction, kernels,
//! linear solves and Sylvester inertia by symmetric congruence.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{GaussianRational, Rational};

/// The handful of field operations row reduction needs.
pub trait Field:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Caller guarantees `self != 0`.
    fn inverse(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn inverse(&self) -> Self {
        self.recip().expect("pivot is nonzero")
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn inverse(&self) -> Self {
        self.inv().expect("pivot is nonzero")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not symmetric: entry ({row}, {col}) differs from its transpose")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix is not square or rows are ragged")]
    Shape,
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(rows: &mut [Vec<F>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inverse();
        for x in rows[r].iter_mut() {
            *x = x.clone() * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - factor.clone() * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : M x = 0}`, one vector per free column.
pub fn kernel<F: Field>(rows: &[Vec<F>]) -> Vec<Vec<F>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); ncols];
            v[fc] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][fc].clone();
            }
            v
        })
        .collect()
}

/// Solve `sum_j x_j columns[j] = target`. Returns `None` when the target is
/// outside the span. Columns must be linearly independent for the solution
/// to be unique; the first solution in echelon form is returned otherwise.
pub fn solve_in_span<F: Field>(columns: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let n = target.len();
    let d = columns.len();
    let mut aug: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row: Vec<F> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&d) {
        return None;
    }
    let mut x = vec![F::zero(); d];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][d].clone();
    }
    Some(x)
}

/// Sylvester inertia `(n₊, n₀, n₋)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Inertia {
    pub fn new(positive: usize, zero: usize, negative: usize) -> Self {
        Inertia { positive, zero, negative }
    }

    pub fn size(&self) -> usize {
        self.positive + self.zero + self.negative
    }
}

/// Result of symmetric congruence elimination: `C M Cᵀ` is block diagonal
/// with 1×1 blocks and hyperbolic 2×2 blocks `[[0, b], [b, 0]]`.
#[derive(Debug, Clone)]
pub struct Congruence {
    pub inertia: Inertia,
    /// Vectors `x` with `xᵀ M x < 0`, one per negative direction, each with
    /// its norm. Exact and deterministic.
    pub negative_vectors: Vec<(Vec<Rational>, Rational)>,
}

fn check_symmetric(m: &[Vec<Rational>]) -> Result<(), LinalgError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(LinalgError::Shape);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if m[i][j] != m[j][i] {
                return Err(LinalgError::NotSymmetric { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Symmetric elimination over `Q`.
///
/// Nonzero diagonal pivots are taken first (lowest index). When every
/// remaining diagonal entry vanishes but an off-diagonal `b` survives, the
/// pair is split off as a hyperbolic block contributing `(1, 0, 1)`. The
/// transformation is tracked so negative directions come with explicit
/// vectors in the original coordinates.
pub fn congruence(m: &[Vec<Rational>]) -> Result<Congruence, LinalgError> {
    check_symmetric(m)?;
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    // rows of the accumulated transform C
    let mut c: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = vec![Rational::zero(); n];
            row[i] = Rational::one();
            row
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pos = 0;
    let mut neg = 0;
    let mut negative_vectors = Vec::new();

    // Eliminate index p from every other active index using pivot a[p][p].
    fn eliminate(a: &mut [Vec<Rational>], c: &mut [Vec<Rational>], active: &[usize], p: usize) {
        let piv = a[p][p].clone();
        for &i in active {
            if i == p || a[i][p].is_zero() {
                continue;
            }
            let factor = a[i][p].checked_div(&piv).expect("nonzero pivot");
            // row_i -= factor * row_p, col_i -= factor * col_p
            let row_p = a[p].clone();
            for (x, y) in a[i].iter_mut().zip(&row_p) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
            for row in a.iter_mut() {
                let y = row[p].clone();
                if !y.is_zero() {
                    row[i] -= &factor * &y;
                }
            }
            let cp = c[p].clone();
            for (x, y) in c[i].iter_mut().zip(&cp) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
    }

    while !active.is_empty() {
        if let Some(&p) = active.iter().find(|&&i| !a[i][i].is_zero()) {
            eliminate(&mut a, &mut c, &active, p);
            let d = a[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
                negative_vectors.push((c[p].clone(), d));
            }
            active.retain(|&i| i != p);
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(ii, &i)| {
            active[ii + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            break;
        };
        // Replace row/col i by i + j: new diagonal 2·a[i][j] ≠ 0, the block
        // [[0,b],[b,0]] becomes [[2b,b],[b,0]] and splits as one 1×1 pivot
        // plus a complementary pivot of opposite sign.
        let row_j = a[j].clone();
        for (x, y) in a[i].iter_mut().zip(&row_j) {
            *x += y;
        }
        for row in a.iter_mut() {
            let y = row[j].clone();
            row[i] += &y;
        }
        let cj = c[j].clone();
        for (x, y) in c[i].iter_mut().zip(&cj) {
            *x += y;
        }
        eliminate(&mut a, &mut c, &active, i);
        active.retain(|&x| x != i);
        eliminate(&mut a, &mut c, &active, j);
        active.retain(|&x| x != j);
        // One positive, one negative direction.
        let (di, dj) = (a[i][i].clone(), a[j][j].clone());
        debug_assert!(di.signum() * dj.signum() == -1);
        pos += 1;
        neg += 1;
        if di.is_negative() {
            negative_vectors.push((c[i].clone(), di));
        } else {
            negative_vectors.push((c[j].clone(), dj));
        }
    }
    let zero = n - pos - neg;
    Ok(Congruence {
        inertia: Inertia::new(pos, zero, neg),
        negative_vectors,
    })
}

pub fn inertia(m: &[Vec<Rational>]) -> Result<Inertia, LinalgError> {
    congruence(m).map(|c| c.inertia)
}

/// `xᵀ M y` over `Q`.
pub fn bilinear(m: &[Vec<Rational>], x: &[Rational], y: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() && !m[i][j].is_zero() {
                acc += xi * &(&m[i][j] * yj);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    fn q(p: i64) -> Rational {
        Rational::from_int(p)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(
            inertia(&mat(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, -2]])).unwrap(),
            Inertia::new(1, 1, 1)
        );
        assert_eq!(
            inertia(&mat(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]])).unwrap(),
            Inertia::new(0, 3, 0)
        );
        let hyper = mat(&[&[0, 1], &[1, 0]]);
        let c = congruence(&hyper).unwrap();
        assert_eq!(c.inertia, Inertia::new(1, 0, 1));
        let (v, norm) = &c.negative_vectors[0];
        assert!(norm.is_negative());
        assert_eq!(&bilinear(&hyper, v, v), norm);
    }

    #[test]
    fn inertia_rejects_asymmetric() {
        let m = mat(&[&[1, 2], &[3, 4]]);
        assert_eq!(inertia(&m), Err(LinalgError::NotSymmetric { row: 0, col: 1 }));
        assert_eq!(inertia(&mat(&[&[1, 2]])), Err(LinalgError::Shape));
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(inertia(&[]).unwrap(), Inertia::new(0, 0, 0));
        assert!(kernel::<Rational>(&[]).is_empty());
    }

    #[test]
    fn kernel_and_solve() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let s: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
        let cols = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        assert_eq!(
            solve_in_span(&cols, &[q(2), q(3), q(5)]),
            Some(vec![q(2), q(3)])
        );
        assert_eq!(solve_in_span(&cols, &[q(2), q(3), q(4)]), None);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn nested_zero_pivots() {
        // all diagonals zero, several hyperbolic pairs coupled together
        let m = mat(&[
            &[0, 1, 2, 0],
            &[1, 0, 0, 3],
            &[2, 0, 0, 1],
            &[0, 3, 1, 0],
        ]);
        let c = congruence(&m).unwrap();
        assert_eq!(c.inertia.size(), 4);
        for (v, n) in &c.negative_vectors {
            assert_eq!(&bilinear(&m, v, v), n);
        }
        assert_eq!(c.inertia.zero, kernel(&m).len());
    }

    fn sym_matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec((-3i64..=3, 1i64..=3), n * (n + 1) / 2).prop_map(move |e| {
                let mut m = vec![vec![Rational::zero(); n]; n];
                let mut it = e.into_iter();
                for i in 0..n {
                    for j in i..n {
                        let (p, d) = it.next().unwrap();
                        // sparse-ish: keep many zero diagonals to hit hyperbolic blocks
                        let v = if i == j && p % 2 != 0 { Rational::zero() } else { rat(p, d).unwrap() };
                        m[i][j] = v.clone();
                        m[j][i] = v;
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn inertia_is_consistent(m in sym_matrix()) {
            let c = congruence(&m).unwrap();
            let n = m.len();
            prop_assert_eq!(c.inertia.size(), n);
            // nullity equals n₀
            prop_assert_eq!(c.inertia.zero, kernel(&m).len());
            prop_assert_eq!(c.negative_vectors.len(), c.inertia.negative);
            for (v, norm) in &c.negative_vectors {
                prop_assert!(norm.is_negative());
                prop_assert_eq!(&bilinear(&m, v, v), norm);
            }
            // congruence invariance: -M swaps n₊ and n₋
            let neg: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
            let ci = inertia(&neg).unwrap();
            prop_assert_eq!(ci.positive, c.inertia.negative);
            prop_assert_eq!(ci.negative, c.inertia.positive);
        }
    }
}
