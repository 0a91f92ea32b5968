//! Built-in channel domains used by the examples, tests and the sweep.

use super::{BoundaryFunction, ChannelDomain, Profile, DEFAULT_RESOLUTION};

/// Rectangle frame: a unit-square channel between a flat-bottomed lid on
/// `[-1, 2]` and a flat-topped trough on `[0, 1]`. `γ = 1`.
pub fn symmetric_frame() -> ChannelDomain {
    let g1 = BoundaryFunction::from_samples(vec![[-1.0, 1.0], [-0.96875, 2.0], [1.96875, 2.0], [2.0, 1.0]]).unwrap();
    let f1 = BoundaryFunction::constant(1.0, -1.0, 2.0).unwrap();
    let f2 = BoundaryFunction::constant(0.0, 0.0, 1.0).unwrap();
    let g2 = BoundaryFunction::from_samples(vec![[0.0, 0.0], [0.03125, -1.0], [0.96875, -1.0], [1.0, 0.0]]).unwrap();
    ChannelDomain::new(g1, f1, f2, g2).unwrap()
}

/// Channel under the bump `f₁ = 1 + 0.3 sin(πx)` on `[-0.5, 1.5]`, capped by
/// a circular lens; the lower piece is a half disc on `[0, 1]`.
pub fn nonsymmetric_lens() -> ChannelDomain {
    let bump = Profile::Sine { offset: 1.0, amplitude: 0.3, frequency: std::f64::consts::PI, phase: 0.0 };
    let f1 = BoundaryFunction::builtin(bump, -0.5, 1.5, DEFAULT_RESOLUTION).unwrap();
    // Both ends of the bump sit at the same height; the lens is centred there
    // so the graphs close up exactly.
    let y0 = f1.first()[1];
    debug_assert_eq!(y0, f1.last()[1]);
    let g1 = BoundaryFunction::semicircle([0.5, y0], 1.0, true).unwrap();
    let f2 = BoundaryFunction::constant(0.0, 0.0, 1.0).unwrap();
    let g2 = BoundaryFunction::semicircle([0.5, 0.0], 0.5, false).unwrap();
    ChannelDomain::new(g1, f1, f2, g2).unwrap()
}

/// Tilted strip: `f₁ = 1 + x/2`, `f₂ = x/4`, so the gap `1 + x/4` varies and
/// `γ = 4 ln(5/4)`.
pub fn tilted_strip() -> ChannelDomain {
    let g1 = BoundaryFunction::polynomial(vec![2.0, 1.0, -0.5], -1.0, 2.0).unwrap();
    let f1 = BoundaryFunction::polynomial(vec![1.0, 0.5], -1.0, 2.0).unwrap();
    let f2 = BoundaryFunction::polynomial(vec![0.0, 0.25], 0.0, 1.0).unwrap();
    let g2 = BoundaryFunction::polynomial(vec![0.0, -0.25, 0.5], 0.0, 1.0).unwrap();
    ChannelDomain::new(g1, f1, f2, g2).unwrap()
}

/// Fixture by short name (`f1`, `f2`, `f3` or the long names).
pub fn by_name(name: &str) -> Option<ChannelDomain> {
    match name {
        "f1" | "symmetric_frame" => Some(symmetric_frame()),
        "f2" | "nonsymmetric_lens" => Some(nonsymmetric_lens()),
        "f3" | "tilted_strip" => Some(tilted_strip()),
        _ => None,
    }
}

/// All fixtures with their names, in a fixed order.
pub fn all() -> Vec<(&'static str, ChannelDomain)> {
    vec![
        ("symmetric_frame", symmetric_frame()),
        ("nonsymmetric_lens", nonsymmetric_lens()),
        ("tilted_strip", tilted_strip()),
    ]
}

/// Whether the fixture is mirror-symmetric about the vertical through the
/// channel's midpoint.
pub fn is_symmetric(name: &str) -> bool {
    matches!(name, "f1" | "symmetric_frame")
}
