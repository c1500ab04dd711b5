//! Shared fixtures for the benchmark targets.

use graphax_core::field::FieldCtx;
use graphax_core::graph::{incidence_graph, LabeledDigraph, PartialLinearSpace};

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

pub fn gq22() -> PartialLinearSpace {
    let mut points = Vec::new();
    for i in 1..=6u8 {
        for j in i + 1..=6 {
            points.push(format!("{i}{j}"));
        }
    }
    let all: Vec<(u8, u8)> = (1..=6)
        .flat_map(|i| (i + 1..=6).map(move |j| (i, j)))
        .collect();
    let mut lines = Vec::new();
    for &(a, b) in &all {
        for &(c, d) in &all {
            if (a, b) < (c, d) && a != c && a != d && b != c && b != d {
                let mut rest = vec![1u8, 2, 3, 4, 5, 6];
                rest.retain(|&x| x != a && x != b && x != c && x != d);
                let third = (rest[0], rest[1]);
                if (c, d) < third {
                    lines.push(vec![
                        format!("{a}{b}"),
                        format!("{c}{d}"),
                        format!("{}{}", third.0, third.1),
                    ]);
                }
            }
        }
    }
    PartialLinearSpace::new(points, lines).unwrap()
}

pub fn heawood(alpha: i64, beta: i64) -> LabeledDigraph {
    let f7 = FieldCtx::prime(7).unwrap();
    incidence_graph(&fano(), &f7.from_integer(alpha), &f7.from_integer(beta)).unwrap()
}
