//! Shared fixtures for the unit tests.

use crate::graph::{PartialLinearSpace, SimpleGraph};

/// The Fano plane: 7 points, 7 lines of 3 points.
pub fn fano() -> PartialLinearSpace {
    let points: Vec<String> = (1..=7).map(|i| format!("p{i}")).collect();
    let lines = [
        [1, 2, 3],
        [1, 4, 5],
        [1, 6, 7],
        [2, 4, 6],
        [2, 5, 7],
        [3, 4, 7],
        [3, 5, 6],
    ];
    PartialLinearSpace::new(
        points,
        lines
            .iter()
            .map(|l| l.iter().map(|i| format!("p{i}")).collect())
            .collect(),
    )
    .unwrap()
}

/// The complete graph on 4 vertices.
pub fn k4() -> SimpleGraph {
    let mut g = SimpleGraph::new((0..4).map(|i| format!("v{i}")).collect()).unwrap();
    for i in 0..4 {
        for j in i + 1..4 {
            g.add_edge(i, j).unwrap();
        }
    }
    g
}
