//! Fixture instances shared by the benchmarks.

use qbps_core::{DimVec, Quiver};

/// `(name, quiver, dimension vector)` triples at desk scale.
pub fn fixtures() -> Vec<(&'static str, Quiver, DimVec)> {
    vec![
        ("three-loop d=2", Quiver::loops(3), DimVec(vec![2])),
        ("three-loop d=3", Quiver::loops(3), DimVec(vec![3])),
        ("tripled A2 d=(2,1)", Quiver::a2().triple(), DimVec(vec![2, 1])),
        ("four-loop d=3", Quiver::loops(2).double(), DimVec(vec![3])),
    ]
}
