//! Argument grids shared by the criterion benches.

use derivgamma_core::ComplexScalar;

/// Points with fast, moderate and slow series convergence.
pub fn digamma_grid() -> Vec<(&'static str, ComplexScalar)> {
    vec![
        ("terminating_z7", ComplexScalar::new(7.0, 0.0)),
        ("reduced_z25.5", ComplexScalar::new(25.5, 0.0)),
        ("z3.7", ComplexScalar::new(3.7, 0.0)),
        ("z2+1i", ComplexScalar::new(2.0, 1.0)),
        ("slow_z0.5", ComplexScalar::new(0.5, 0.0)),
    ]
}

pub fn polygamma_grid() -> Vec<(&'static str, ComplexScalar, usize)> {
    vec![
        ("l1_z2.5", ComplexScalar::new(2.5, 0.0), 1),
        ("l2_z3.7", ComplexScalar::new(3.7, 0.0), 2),
        ("l3_z5.2", ComplexScalar::new(5.2, 0.0), 3),
    ]
}
