//! Named definitional computations the corpus must contain.

/// Labels of `#eq` directives that must be present and pass.
pub const REQUIRED_EQS: &[&str] = &[
    "restriction_component",
    "op_involution",
    "total_op_involution",
    "cov_display_component",
    "ctrv_display_component",
    "cov_upgrade_vertices",
    "ctrv_upgrade_vertices",
    "cov_upgrade_edges",
    "ctrv_upgrade_edges",
    "cov_upgrade_rx",
    "ctrv_upgrade_rx",
    "display_of_total_opposite",
    "tr_cov_total_is_coprod",
    "cov_poly_vertices",
    "cov_poly_edges",
    "cov_poly_rx",
    "ctrv_poly_vertices",
    "ctrv_poly_edges",
    "ctrv_poly_rx",
    "gph_vertices",
    "gph_edges",
    "gph_rx",
    "rx_gph_vertices",
    "rx_gph_edges",
    "rx_gph_rx",
    "dgph_vertices",
    "dgph_edges",
    "dgph_rx",
    "drx_gph_over_vertices",
    "drx_gph_over_edges",
    "drx_gph_over_rx",
    "drx_gph_vertices",
    "drx_gph_edges",
    "drx_gph_rx",
    "rx_gph_fam_vertices",
    "rx_gph_fam_edges",
    "rx_gph_fam_rx",
    "cov_lens_over_vertices",
    "cov_lens_over_rx",
    "display_underlying_components",
    "display_underlying_push",
    "display_underlying_push_rx",
    "extrusion_left_push",
    "extrusion_left_push_rx",
    "extrusion_right_push",
    "extrusion_right_push_rx",
];
