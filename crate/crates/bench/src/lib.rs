//! Parameter points shared by the criterion benches.

/// (η, N_B, N_S) points spanning low/high noise and low/high energy.
pub const THERMAL_POINTS: [(f64, f64, f64); 4] = [
    (0.75, 0.01, 1.0),
    (0.75, 0.5, 10.0),
    (0.99, 0.05, 5.0),
    (0.99, 0.5, 100.0),
];
