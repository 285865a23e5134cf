//! Local Cartan connection data, jet-space canonical connections and the coordinate maps
//! between linear and affine frames.

pub mod atlas;
pub mod extension;
pub mod frame;
pub mod jets;
pub mod local_data;
pub mod principal;
pub mod samples;
pub mod transversality;
pub mod vielbein;

pub use atlas::{
    corrupted_two_chart_fixture, gauge_equivalent_transitions, two_chart_fixture, CocycleReport, Transition, TransitionAtlas};
pub use extension::{extend_cartan, jet_distance, reduce_cartan, ExtendedCartan, ReducedCartan, REDUCE_TOLERANCE};
pub use frame::{idx3, FrameField, MetricField, SpinConnectionField};
pub use jets::{
    canonical_connection_am, canonical_connection_lm, induced_translation, j_map, jet_projection_cam,
    jet_to_christoffel, kappa_map, solder_at, ConnectionCoords, JetPointAM, JetPointLM, TangentIncrement,
};
pub use local_data::{CartanLocalData, Structure};
pub use principal::{affine_frame_compose, connection_form_at, extend_to_principal, AffineFrame};
pub use transversality::{transversality_check, Transversality};
pub use vielbein::{
    christoffel_to_spin, holonomic_jet, jet_metricity_residual, lorentz_condition_residual, max_abs_over,
    metricity_residual, vielbein_to_christoffel,
};
pub use samples::{
    random_affine_gauge, random_lorentz_gauge,
    random_frame, random_gl_spin, random_lorentz_spin, random_metric_configuration, random_translation,
    MetricConfiguration,
};
