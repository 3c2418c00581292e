// SPDX-License-Identifier: Apache-2.0

//! Overlattices, isometry extension, the `σ^⊥` embedding and hyperbolic
//! plane certificates.

mod glue;
mod hyperbolic;
mod sigma_perp;

pub use glue::{extend_isometry, overlattice_from_glue, GlueData};
pub(crate) use hyperbolic::complete_to_u;
pub use hyperbolic::{
    u_summand_certificate, un_summand_certificate, CertificateSearch, HyperbolicCertificate,
    Obstruction, SummandMode,
};
pub use sigma_perp::{
    canonical_sigma_perp_embedding, EmbeddingCheck, EmbeddingModel, SigmaPerpEmbedding, MUKAI_EXPR,
    SIGMA_PERP_EXPR,
};
