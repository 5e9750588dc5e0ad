//! Exact integer linear algebra.

mod abelian;
mod cokernel;
mod snf;
mod sparse;

pub use abelian::{
    abelian_from_relations, abelian_hom_kernel, subgroup_structure, AbelianStructure,
};
pub use cokernel::Cokernel;
pub use snf::{
    determinant, identity, left_kernel, mat_mul, smith_normal_form, snf_dense, DenseMatrix, Snf,
};
pub use sparse::SparseIntMatrix;
