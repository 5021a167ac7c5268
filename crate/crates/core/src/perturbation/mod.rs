//! First-order response of Steklov eigenvalues to boundary deformations.

mod classify;
mod emp;
mod field;

pub use classify::{
    subdifferential_and_classify, Classification, ClassifyOptions, CriticalityKind, Subdifferential,
};
pub use emp::{
    boundary_factor, cancellation_coefficients, emp_matrix, emp_matrix_any_basis,
    emp_matrix_closed_2d, emp_trace_formula, EmpMatrix,
};
pub use field::DeformationField;
