//! Fixtures and independent oracles shared by the integration suites.
#![allow(dead_code)]

use graphax_core::field::FieldCtx;
use graphax_core::graph::{incidence_graph, LabeledDigraph, PartialLinearSpace, SimpleGraph};

pub fn f5() -> FieldCtx {
    FieldCtx::prime(5).unwrap()
}

pub fn f7() -> FieldCtx {
    FieldCtx::prime(7).unwrap()
}

/// The Fano plane: 7 points, 7 three-point lines, 3 lines per point.
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

/// The Heawood graph as a labeled incidence digraph over F_7.
pub fn heawood(alpha: i64, beta: i64) -> LabeledDigraph {
    let a = f7().from_integer(alpha);
    let b = f7().from_integer(beta);
    incidence_graph(&fano(), &a, &b).unwrap()
}

/// The generalized quadrangle of order (2,2): points are the 15 pairs from
/// {1..6}, lines are the 15 partitions of {1..6} into three pairs. Its
/// incidence graph is the Tutte-Coxeter graph (30 vertices, girth 8).
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

/// The complete graph on 4 vertices as an incidence input.
pub fn k4() -> SimpleGraph {
    let mut g = SimpleGraph::new((0..4).map(|i| format!("v{i}")).collect()).unwrap();
    for i in 0..4 {
        for j in i + 1..4 {
            g.add_edge(i, j).unwrap();
        }
    }
    g
}

/// Three vertices over F_5: ideal subgraph {y1, y2} joined by 1/2 = 3,
/// external x attached by 2 (into Y) and 4 (out of Y).
pub fn ideal_subgraph_example() -> LabeledDigraph {
    let ctx = f5();
    let c = |n: i64| ctx.from_integer(n);
    LabeledDigraph::new(
        ctx,
        vec!["x".into(), "y1".into(), "y2".into()],
        vec![
            ("y1".to_string(), "y2".to_string(), c(3)),
            ("y2".to_string(), "y1".to_string(), c(3)),
            ("x".to_string(), "y1".to_string(), c(2)),
            ("x".to_string(), "y2".to_string(), c(2)),
            ("y1".to_string(), "x".to_string(), c(4)),
            ("y2".to_string(), "x".to_string(), c(4)),
        ],
    )
    .unwrap()
}

/// Independent automorphism-counting oracle: plain backtracking over images
/// in vertex order with adjacency and label consistency, no refinement.
pub fn naive_aut_order(g: &LabeledDigraph) -> u128 {
    fn extend(g: &LabeledDigraph, images: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut u128) {
        let v = images.len();
        if v == g.vertex_count() {
            *count += 1;
            return;
        }
        'candidate: for c in 0..g.vertex_count() {
            if used[c] {
                continue;
            }
            for (u, &iu) in images.iter().enumerate() {
                if g.label(v, u) != g.label(c, iu) || g.label(u, v) != g.label(iu, c) {
                    continue 'candidate;
                }
            }
            images.push(c);
            used[c] = true;
            extend(g, images, used, count);
            images.pop();
            used[c] = false;
        }
    }
    let mut count = 0;
    extend(
        g,
        &mut Vec::new(),
        &mut vec![false; g.vertex_count()],
        &mut count,
    );
    count
}

/// A random symmetric labeled digraph: every undirected edge appears with
/// probability `density`, each direction labeled independently from `labels`.
pub fn random_symmetric_graph(
    rng: &mut impl rand::Rng,
    ctx: FieldCtx,
    n: usize,
    density: f64,
    labels: &[i64],
) -> LabeledDigraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                let a = labels[rng.gen_range(0..labels.len())];
                let b = labels[rng.gen_range(0..labels.len())];
                edges.push((u, v, ctx.from_integer(a)));
                edges.push((v, u, ctx.from_integer(b)));
            }
        }
    }
    LabeledDigraph::from_indexed_edges(ctx, (0..n).map(|i| format!("v{i}")).collect(), edges)
        .unwrap()
}

/// Like `random_symmetric_graph` but resamples until weakly connected.
pub fn random_connected_symmetric_graph(
    rng: &mut impl rand::Rng,
    ctx: FieldCtx,
    n: usize,
    density: f64,
    labels: &[i64],
) -> LabeledDigraph {
    loop {
        let g = random_symmetric_graph(rng, ctx, n, density, labels);
        if g.is_weakly_connected() {
            return g;
        }
    }
}

/// All connected undirected edge-subsets of the complete graph on `n` labeled
/// vertices, as lists of vertex pairs.
pub fn connected_shapes(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut shapes = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        // connectivity over all n vertices
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            if parent[v] != v {
                let r = find(parent, parent[v]);
                parent[v] = r;
            }
            parent[v]
        }
        for &(u, v) in &edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        let root = find(&mut parent, 0);
        if (0..n).all(|v| find(&mut parent, v) == root) {
            shapes.push(edges);
        }
    }
    shapes
}

/// Builds the symmetric graph with the given per-edge direction labels.
pub fn labeled_shape(
    ctx: FieldCtx,
    n: usize,
    edges: &[(usize, usize)],
    labels: &[(i64, i64)],
) -> LabeledDigraph {
    let mut directed = Vec::new();
    for (&(u, v), &(a, b)) in edges.iter().zip(labels) {
        directed.push((u, v, ctx.from_integer(a)));
        directed.push((v, u, ctx.from_integer(b)));
    }
    LabeledDigraph::from_indexed_edges(ctx, (0..n).map(|i| format!("v{i}")).collect(), directed)
        .unwrap()
}
