//! Exact-arithmetic workbench for extended current algebras on the
//! three-torus.
//!
//! * [`exactnum`]: rationals and Gaussian rationals.
//! * [`liealg`]: matrix Lie algebras with `f`, `κ` and `d` tensors.
//! * [`currentalg`]: the `Z³`-graded current algebra with its plain,
//!   Mickelsson-Faddeev and Kassel brackets.
//! * [`looprestrict`]: restriction to loop subalgebras along a direction.
//! * [`affine`]: Gram matrices of affine `sl(2)` highest-weight modules.

pub mod exactnum;
pub mod linalg;
pub mod liealg;

pub use exactnum::{g_inv, g_mul, rat, ExactError, GaussianRational, Rational};
pub use liealg::{build_algebra, d_tensor, invariance_defect, MatrixLieAlgebra};
pub mod currentalg;
pub use currentalg::{bracket, canonicalize, jacobi_defect, CurrentElement, Flavor, GenSymbol, Momentum};
pub mod sampling;
pub mod verify;
pub mod looprestrict;
pub mod affine;
