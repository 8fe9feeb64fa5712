//! Exact construction and verification of real and complex orthogonal
//! designs: square RODs from Hurwitz-Radon index maps, rate-1 RODs, rate-½
//! scaled CODs of low delay and their zero-free forms, plus the delay and
//! rate bounds they are measured against.
//!
//! All arithmetic is exact over `Z[√2][1/2]`; there are no tolerances.
//!
//! ```
//! use odesign::{build_rh, verify, Family};
//!
//! let rh9 = build_rh(9, Family::R).unwrap();
//! assert_eq!(rh9.delay(), 16);
//! assert!(verify(&rh9.matrix).ok);
//! ```

pub mod bounds;
pub mod cli;
pub mod cod;
pub mod coeff;
pub mod design;
pub mod error;
pub mod grid;
pub mod io;
pub mod maps;
pub mod rate1;
pub mod square;
pub mod verify;

pub use bounds::{
    check_n9_minimality, comparison_table, delay_lower_bound, hopf_stiefel, hopf_stiefel_oracle,
    max_rate, BoundRow,
};
pub use cod::{
    block_identity_checks, build_rh, build_tjc, post_multiply, post_multiply_design, zero_stats,
    CodBlocks, CodConstruction, PostMultiplier, ScaledCod,
};
pub use coeff::Coefficient;
pub use design::{parse_token_rows, DesignMatrix, Entry, Kind, Lambda, Literal};
pub use error::{Error, Result};
pub use maps::{check_odd_condition, check_phi2_parity, chi_family, gamma, nu, psi, rho, Family, MapPair, OddMode};
pub use rate1::{build_rate1, build_rate1_for, relate_w_what, Rate1Rod, Rate1Variant};
pub use square::{
    build_square, build_square_from_maps, build_square_recursive, compare_designs, compare_grids, Comparison,
};
pub use verify::{check_rod_structure, gram, verify, SymbolicBilinear, VerificationReport};
