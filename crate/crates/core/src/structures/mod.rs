//! Sekiya quadruples, `(B, b, a)`-transformations, generalised contact
//! metrics, coKähler checks, Čech data, products and circle T-duality.

mod cech;
mod endo;
mod metric;
mod product;
mod sekiya;
mod tduality;
mod transform;

pub use cech::{cocycle_printed_order, derived_overlap, gauge_difference, validate_cech, CechDatum};
pub use endo::{gen_coords, gen_from_coords, Bundle, FrameEndo};
pub use metric::{
    check_cokahler, check_einstein_pairing, check_metric, encode_einstein, metric_endomorphism, metric_subspaces, pair_length,
    validate_metric, GenContactMetric,
};
pub use sekiya::{
    assemble_jinv, assemble_jinv_unchecked, check_jinv, check_pair_matches_jinv, pair_to_jinv_frame, check_sekiya_transform, deformed_lambda, disassemble_jinv, eigen_sections, sample_with_lambda,
    transform_sekiya, transform_sekiya_literal, validate_sekiya, SekiyaQuadruple,
};
pub use transform::{
    compose_transforms, transform_mixed_pair, transform_mixed_pair_literal, transform_section, transform_twists, BbaTransform,
};
pub use tduality::{
    check_admissible, check_dual_conjugation, check_t_duality, dualize_metric, dualize_quadruple, dualize_section, dualize_transform, duality_endo,
    t_dualize_circle, CircleData,
};
pub use product::lift_product;
