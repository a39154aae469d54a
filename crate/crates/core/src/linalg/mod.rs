//! Exact-shape linear algebra: 2×2/4×4 complex operators, 3-vectors and
//! 3×3 real matrices, symmetric eigendecomposition and the signed SVD.

mod complex;
mod eigen;
mod real;
mod sum;
mod svd;

pub use complex::{kron, CMat, CMat2, CMat4, CScalar};
pub use eigen::{eig_sym3, EigenSym3};
pub use real::{charpoly3, cubic_discriminant, discriminant3, RMat3, RVec3};
pub use sum::exact_sum;
pub use svd::{fix_signs, orthogonal_svd3, signed_svd3, SignedSVD3};
