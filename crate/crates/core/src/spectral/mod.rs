//! The matrices `M_n`, their eigenvectors, `f_n` and `g_{d,n}`, the λ = 2
//! generalized eigenvectors and the vectors `q_n` over 𝔽_p.

pub mod basis;
pub mod lambda;
pub mod qn;

pub use basis::{
    a_block, an_eigenvector, build_mn, check_phi_to_mat, eigen_poly, even_part, gen_eigen_lambda2, mn_eigenvector,
    mn_poly_matrix, verify_an_eigen, BnBasis, GenEigenSet,
};
pub use lambda::{
    all_classes, class_order, fn_poly, g_dn_check, g_dn_chebyshev, g_dn_poly, gfn_bound, gfn_prediction, lambda_classes,
    n_d, prime_power, printed_m, GdnCheck, LambdaClass, LambdaClasses,
};
pub use qn::{
    centbinom_sides, derive_ef_coefficients, local_determinants, qn_closed_form, qn_direct, qn_direct_symbolic, qn_formula,
    qn_published, y_vectors, KappaMode, LocalDeterminants, QnVector, YVectors,
};
