//! Exact linear algebra, partition pairs, canonical modules and degeneration
//! checks for varieties of nilpotent pairs linked by an intertwiner.

pub mod echelon;
pub mod error;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod pairs;
pub mod partition;
pub mod polyhom;
pub mod sweep;

pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, PrimeField, Rationals, DEFAULT_PRIME};
pub use matrix::Matrix;
pub use pairs::{canonical_decomposition, classify_pair, is_indecomposable_pair, CanonicalDecomposition, PairType, PartitionPair};
pub use partition::{enumerate_partitions, hom_dim_lambda, jordan_type, maximal_partition, Partition};
pub use polyhom::PolyHom;
pub use module::{
    are_isomorphic, build_canonical_module, direct_sum, dual, end_dim, ext1_dim, hom_basis, hom_dim,
    is_gorenstein_projective, is_indecomposable_module, isomorphism_search, sample_stratum, stratum_of, AModule,
    HomSpace, IsoOutcome, IsoSearch, ModuleJson,
};
pub use geometry::{
    build_def_ind_dual_sequence, build_def_ind_sequence, check_def_strata, check_def_strata_dual,
    check_dense_orbit_identity, classify_component_candidates, component_sum_test, hom_order_check, orbit_dim,
    stratum_dim, verify_irreducibility, DegenerationEdge, IrreducibilityCertificate, Mechanism, StratumReport,
    VerifyConfig,
};
