//! Built-in initial configurations.

/// A named initial configuration: P(0), Q(0), and a default coupling.
#[derive(Clone, Copy, Debug)]
pub struct Preset {
    pub p0: [f64; 3],
    pub q0: [f64; 3],
    pub g: f64,
}

/// Looks up a preset by name.
///
/// `fig3` is the configuration with the constant total redundancy of -3.82;
/// `eq16` is the alternative receiving vector with total +1.0031. Both
/// default to coupling 0.2, overridable with `--g`.
pub fn lookup(name: &str) -> Option<Preset> {
    match name {
        "fig3" => Some(Preset {
            p0: [0.4, 1.4, 0.7],
            q0: [2.1, 1.1, 0.9],
            g: 0.2,
        }),
        "eq16" => Some(Preset {
            p0: [0.4, 1.4, 0.7],
            q0: [0.2, 0.87, 0.9],
            g: 0.2,
        }),
        _ => None,
    }
}

pub const PRESET_NAMES: &[&str] = &["fig3", "eq16"];
