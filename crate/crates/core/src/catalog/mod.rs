//! Concrete lattices and isometries: the rank-16 overlattice `L` of
//! `A₄(−2)⊕⁴` with its order-5 and order-2 isometries, the Nikulin lattice,
//! `M_{D₅}`, and the claim suite that certifies their properties.

mod claims;
mod construct;

pub use claims::{dih10_certificate, repro_all, verify_e_basis, ClaimResult, Fault, TAGS};
pub use construct::{
    build_l, build_l_with, build_md5, build_nikulin, gamma_matrix, h_block, std_gram, u2_cubed,
    LConstruction, NamedConstruction, StdFamily,
};
