//! Fusion laws of graph type and their verification.
//!
//! For an axis `x` with no incident label 1, the algebra decomposes into the
//! eigenspaces of the adjoint map; products of eigenvectors land in sums of
//! eigenspaces. The graph-type law on an eigenvalue set `F` (always containing
//! 1, and 0 unless every pair of vertices is adjacent) allows
//! `1*b = {b}`, `a*a = {1,a}`, `a*b = {1,a,b}`, `a*0 = {1,a,0}`, `0*0 = {0}`.
//! The checker computes, per axis and eigenvalue pair, the exact minimal set
//! of eigenvalues whose spaces contain all products, and compares it with the
//! law cell by cell.
//!
//! (Jordan-type and Monster-type laws from the axial-algebra literature are
//! intentionally out of scope; only the graph-type family is modeled.)

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, GraphAlgebra, Side};
use crate::field::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("axis {axis:?} is not semisimple on that side: incident label 1")]
    NotSemisimple { axis: String },
    #[error("axis {axis:?} has eigenvalue {value} outside the law")]
    SpectrumOutsideLaw { axis: String, value: String },
    #[error("law must contain 1")]
    LawMissingOne,
    #[error("graph is not complete, so the law must contain 0")]
    LawMissingZero,
    #[error("law values must lie in one field")]
    MixedFields,
    #[error("algebra error: {0}")]
    Algebra(String),
}

impl From<AlgebraError> for FusionError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::NotSemisimple { axis } => FusionError::NotSemisimple { axis },
            other => FusionError::Algebra(other.to_string()),
        }
    }
}

/// A graph-type fusion law on an eigenvalue set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionLaw {
    values: Vec<Scalar>,
    cells: BTreeMap<(Scalar, Scalar), BTreeSet<Scalar>>,
}

impl FusionLaw {
    /// The graph-type law on `values`, which must contain 1.
    pub fn graph_type(values: &BTreeSet<Scalar>) -> Result<FusionLaw, FusionError> {
        let mut iter = values.iter();
        let Some(first) = iter.next() else {
            return Err(FusionError::LawMissingOne);
        };
        let field = first.field();
        if iter.any(|v| v.field() != field) {
            return Err(FusionError::MixedFields);
        }
        let one = field.one();
        let zero = field.zero();
        if !values.contains(&one) {
            return Err(FusionError::LawMissingOne);
        }
        // canonical order: 1, then the other nonzero values, then 0
        let mut ordered = vec![one.clone()];
        ordered.extend(
            values
                .iter()
                .filter(|v| !v.is_one() && !v.is_zero())
                .cloned(),
        );
        if values.contains(&zero) {
            ordered.push(zero.clone());
        }
        let mut cells = BTreeMap::new();
        for a in &ordered {
            for b in &ordered {
                let cell: BTreeSet<Scalar> = if a.is_one() {
                    BTreeSet::from([b.clone()])
                } else if b.is_one() {
                    BTreeSet::from([a.clone()])
                } else if a.is_zero() && b.is_zero() {
                    BTreeSet::from([zero.clone()])
                } else if a.is_zero() {
                    BTreeSet::from([one.clone(), b.clone(), zero.clone()])
                } else if b.is_zero() {
                    BTreeSet::from([one.clone(), a.clone(), zero.clone()])
                } else if a == b {
                    BTreeSet::from([one.clone(), a.clone()])
                } else {
                    BTreeSet::from([one.clone(), a.clone(), b.clone()])
                };
                cells.insert((a.clone(), b.clone()), cell);
            }
        }
        Ok(FusionLaw {
            values: ordered,
            cells,
        })
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn contains(&self, v: &Scalar) -> bool {
        self.values.contains(v)
    }

    pub fn contains_zero(&self) -> bool {
        self.values.iter().any(|v| v.is_zero())
    }

    pub fn allowed(&self, lambda: &Scalar, mu: &Scalar) -> Option<&BTreeSet<Scalar>> {
        self.cells.get(&(lambda.clone(), mu.clone()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<serde_json::Value> = self
            .cells
            .iter()
            .map(|((a, b), set)| {
                serde_json::json!({
                    "lambda": a.to_string(),
                    "mu": b.to_string(),
                    "allowed": set.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "values": self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "cells": cells,
        })
    }
}

/// The spectrum of the adjoint of a vertex axis: 1, the incident labels on
/// that side, and 0 exactly when some vertex is not adjacent on that side.
pub fn axis_spectrum(
    a: &GraphAlgebra,
    x: usize,
    side: Side,
) -> Result<BTreeSet<Scalar>, FusionError> {
    let ctx = a.field();
    let neighbors = a.side_neighbors(x, side);
    if neighbors.iter().any(|(_, l)| l.is_one()) {
        return Err(FusionError::NotSemisimple {
            axis: a.graph().vertex_name(x).to_string(),
        });
    }
    let mut spectrum = BTreeSet::from([ctx.one()]);
    for (_, l) in &neighbors {
        spectrum.insert((*l).clone());
    }
    if neighbors.len() < a.dim() - 1 {
        spectrum.insert(ctx.zero());
    }
    Ok(spectrum)
}

/// Observed products for one eigenvalue pair at one axis.
#[derive(Debug, Clone, Serialize)]
pub struct FusionCell {
    pub lambda: String,
    pub mu: String,
    pub observed: Vec<String>,
    pub allowed: Vec<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxisFusion {
    pub axis: String,
    pub spectrum: Vec<String>,
    pub eigenspace_dims: Vec<(String, usize)>,
    pub cells: Vec<FusionCell>,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FusionViolation {
    pub axis: String,
    pub lambda: String,
    pub mu: String,
    pub forbidden: Vec<String>,
}

/// Result of checking the law on a set of axes, one side at a time.
#[derive(Debug, Clone, Serialize)]
pub struct FusionReport {
    pub side: Side,
    pub law_values: Vec<String>,
    pub per_axis: Vec<AxisFusion>,
    pub law_satisfied: bool,
    pub violations: Vec<FusionViolation>,
}

/// Extracts eigen-coordinates of sparse elements against the canonical axis
/// decomposition without dense solves: the eigenbasis is the axis itself, one
/// two-term vector per side-neighbor, and the non-neighbors.
struct AxisFrame {
    x: usize,
    /// side-neighbor -> its incident label
    label_of: BTreeMap<usize, Scalar>,
}

impl AxisFrame {
    fn new(a: &GraphAlgebra, x: usize, side: Side) -> Self {
        let label_of = a
            .side_neighbors(x, side)
            .into_iter()
            .map(|(y, l)| (y, l.clone()))
            .collect();
        AxisFrame { x, label_of }
    }

    /// Adds to `out` every eigenvalue whose component of `w` is nonzero.
    fn collect_blocks(
        &self,
        w: &AlgebraElement,
        ctx: crate::field::FieldCtx,
        out: &mut BTreeSet<Scalar>,
    ) {
        let one = ctx.one();
        let mut x_coord = w.coeff(self.x).cloned().unwrap_or_else(|| ctx.zero());
        for (v, c) in w.iter() {
            if v == self.x {
                continue;
            }
            match self.label_of.get(&v) {
                Some(alpha) => {
                    out.insert(alpha.clone());
                    // w contains t * (alpha*x + (alpha-1)*v) with t = c/(alpha-1)
                    let t = c
                        .div(&alpha.sub(&one).expect("same field"))
                        .expect("label != 1");
                    x_coord = x_coord
                        .sub(&t.mul(alpha).expect("same field"))
                        .expect("same field");
                }
                None => {
                    out.insert(ctx.zero());
                }
            }
        }
        if !x_coord.is_zero() {
            out.insert(one);
        }
    }
}

/// The effective allowed set for one cell on one side.
///
/// Multiplying an eigenvector by the axis itself is exactly diagonal on the
/// side that matches the adjoint operator (`x*u` for the left law, `u*x` for
/// the right), but on the opposite side it can leak a 1-component: for an
/// edge labeled `a` out and `a'` in, `(a x + (a-1)y) x` carries the
/// x-coefficient `a - a'`, which vanishes exactly when the two labels agree.
/// The law table stays symmetric; the per-side comparison admits that leak in
/// the one affected cell, so commutative labelings are checked against the
/// table verbatim.
fn effective_allowed(
    law: &FusionLaw,
    side: Side,
    lambda: &Scalar,
    mu: &Scalar,
    ctx: crate::field::FieldCtx,
) -> BTreeSet<Scalar> {
    let mut allowed = law
        .allowed(lambda, mu)
        .expect("spectrum inside law")
        .clone();
    let opposite_axis_factor = match side {
        Side::Left => mu.is_one() && !lambda.is_one(),
        Side::Right => lambda.is_one() && !mu.is_one(),
    };
    if opposite_axis_factor {
        allowed.insert(ctx.one());
    }
    allowed
}

/// Verifies the fusion law on the given axes for one side. Products of
/// eigenbasis vectors are evaluated exactly; products of two distinct
/// non-adjacent basis vertices are zero by the product rule and are skipped
/// rather than enumerated.
pub fn check_fusion(
    a: &GraphAlgebra,
    axes: &[usize],
    law: &FusionLaw,
    side: Side,
) -> Result<FusionReport, FusionError> {
    let ctx = a.field();
    if !a.graph().is_complete() && !law.contains_zero() {
        return Err(FusionError::LawMissingZero);
    }
    let mut per_axis = Vec::new();
    let mut violations = Vec::new();
    for &x in axes {
        let spectrum = axis_spectrum(a, x, side)?;
        for v in &spectrum {
            if !law.contains(v) {
                return Err(FusionError::SpectrumOutsideLaw {
                    axis: a.graph().vertex_name(x).to_string(),
                    value: v.to_string(),
                });
            }
        }
        let decomposition = a.axis_eigenspaces(x, side)?;
        let frame = AxisFrame::new(a, x, side);
        let mut cells = Vec::new();
        let mut axis_ok = true;
        for (lambda, left_vectors) in &decomposition.parts {
            for (mu, right_vectors) in &decomposition.parts {
                let mut observed = BTreeSet::new();
                if lambda.is_zero() && mu.is_zero() {
                    // diagonal: z*z = z stays in the zero block
                    if !left_vectors.is_empty() {
                        observed.insert(ctx.zero());
                    }
                    // off-diagonal products vanish unless the pair is an edge
                    let zero_set: BTreeSet<usize> =
                        left_vectors.iter().map(|v| v.support()[0]).collect();
                    for (t, h, _) in a.graph().edges() {
                        if zero_set.contains(&t) && zero_set.contains(&h) {
                            let prod = a.basis_product(t, h);
                            frame.collect_blocks(&prod, ctx, &mut observed);
                        }
                    }
                } else {
                    for u in left_vectors {
                        for v in right_vectors {
                            let prod = a.multiply(u, v)?;
                            if !prod.is_zero() {
                                frame.collect_blocks(&prod, ctx, &mut observed);
                            }
                        }
                    }
                }
                let allowed = effective_allowed(law, side, lambda, mu, ctx);
                let forbidden: Vec<String> = observed
                    .difference(&allowed)
                    .map(|v| v.to_string())
                    .collect();
                let ok = forbidden.is_empty();
                if !ok {
                    axis_ok = false;
                    violations.push(FusionViolation {
                        axis: a.graph().vertex_name(x).to_string(),
                        lambda: lambda.to_string(),
                        mu: mu.to_string(),
                        forbidden,
                    });
                }
                cells.push(FusionCell {
                    lambda: lambda.to_string(),
                    mu: mu.to_string(),
                    observed: observed.iter().map(|v| v.to_string()).collect(),
                    allowed: allowed.iter().map(|v| v.to_string()).collect(),
                    ok,
                });
            }
        }
        per_axis.push(AxisFusion {
            axis: a.graph().vertex_name(x).to_string(),
            spectrum: spectrum.iter().map(|v| v.to_string()).collect(),
            eigenspace_dims: decomposition
                .parts
                .iter()
                .map(|(l, vs)| (l.to_string(), vs.len()))
                .collect(),
            cells,
            ok: axis_ok,
        });
    }
    let law_satisfied = violations.is_empty();
    Ok(FusionReport {
        side,
        law_values: law.values().iter().map(|v| v.to_string()).collect(),
        per_axis,
        law_satisfied,
        violations,
    })
}

/// Convenience: the graph-type law on 0, 1, and every label of the graph
/// (0 omitted when the graph is complete).
pub fn natural_law(a: &GraphAlgebra) -> Result<FusionLaw, FusionError> {
    let ctx = a.field();
    let mut values: BTreeSet<Scalar> = a.graph().label_set().into_iter().collect();
    values.insert(ctx.one());
    if !a.graph().is_complete() {
        values.insert(ctx.zero());
    }
    FusionLaw::graph_type(&values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::graph::{complete_graph, incidence_graph, LabeledDigraph};

    fn f7() -> FieldCtx {
        FieldCtx::prime(7).unwrap()
    }

    fn heawood(alpha: i64, beta: i64) -> GraphAlgebra {
        let a = f7().from_integer(alpha);
        let b = f7().from_integer(beta);
        GraphAlgebra::new(incidence_graph(&crate::testutil::fano(), &a, &b).unwrap())
    }

    #[test]
    fn law_cells_match_the_table() {
        let ctx = f7();
        let values: BTreeSet<Scalar> = [0, 1, 3, 5].iter().map(|&v| ctx.from_integer(v)).collect();
        let law = FusionLaw::graph_type(&values).unwrap();
        let s = |vals: &[i64]| -> BTreeSet<Scalar> {
            vals.iter().map(|&v| ctx.from_integer(v)).collect()
        };
        let c = |a: i64, b: i64| {
            law.allowed(&ctx.from_integer(a), &ctx.from_integer(b))
                .unwrap()
        };
        assert_eq!(*c(1, 1), s(&[1]));
        assert_eq!(*c(1, 3), s(&[3]));
        assert_eq!(*c(1, 0), s(&[0]));
        assert_eq!(*c(3, 3), s(&[1, 3]));
        assert_eq!(*c(3, 5), s(&[1, 3, 5]));
        assert_eq!(*c(3, 0), s(&[1, 3, 0]));
        assert_eq!(*c(0, 0), s(&[0]));
        assert_eq!(*c(5, 3), *c(3, 5));
    }

    #[test]
    fn law_requires_one() {
        let ctx = f7();
        let values: BTreeSet<Scalar> = [ctx.zero(), ctx.from_integer(3)].into_iter().collect();
        assert!(matches!(
            FusionLaw::graph_type(&values),
            Err(FusionError::LawMissingOne)
        ));
    }

    #[test]
    fn heawood_axis_spectrum() {
        let a = heawood(3, 3);
        let x = a.graph().vertex_index("p1").unwrap();
        let spec = axis_spectrum(&a, x, Side::Left).unwrap();
        let expected: BTreeSet<Scalar> = [0, 1, 3].iter().map(|&v| f7().from_integer(v)).collect();
        assert_eq!(spec, expected);
    }

    #[test]
    fn complete_graph_spectrum_has_no_zero() {
        let ctx = f7();
        let g = complete_graph(3, &ctx.from_integer(4), ctx).unwrap();
        let a = GraphAlgebra::new(g);
        let spec = axis_spectrum(&a, 0, Side::Left).unwrap();
        let expected: BTreeSet<Scalar> = [1, 4].iter().map(|&v| ctx.from_integer(v)).collect();
        assert_eq!(spec, expected);
    }

    #[test]
    fn two_vertex_edge_spectrum() {
        let ctx = f7();
        let c = |n: i64| ctx.from_integer(n);
        let g = LabeledDigraph::new(
            ctx,
            vec!["x".into(), "y".into()],
            vec![
                ("x".to_string(), "y".to_string(), c(4)),
                ("y".to_string(), "x".to_string(), c(4)),
            ],
        )
        .unwrap();
        let a = GraphAlgebra::new(g);
        let spec = axis_spectrum(&a, 0, Side::Left).unwrap();
        assert_eq!(spec, [1, 4].iter().map(|&v| c(v)).collect::<BTreeSet<_>>());
    }

    #[test]
    fn label_one_rejected() {
        let ctx = f7();
        let g = LabeledDigraph::new(
            ctx,
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                ("x".to_string(), "y".to_string(), ctx.one()),
                ("y".to_string(), "x".to_string(), ctx.from_integer(2)),
                ("y".to_string(), "z".to_string(), ctx.from_integer(2)),
                ("z".to_string(), "y".to_string(), ctx.from_integer(2)),
            ],
        )
        .unwrap();
        let a = GraphAlgebra::new(g);
        assert!(matches!(
            axis_spectrum(&a, 0, Side::Left),
            Err(FusionError::NotSemisimple { .. })
        ));
    }

    #[test]
    fn heawood_commutative_law_holds() {
        let a = heawood(3, 3);
        let law = natural_law(&a).unwrap();
        let axes: Vec<usize> = (0..a.dim()).collect();
        for side in [Side::Left, Side::Right] {
            let report = check_fusion(&a, &axes, &law, side).unwrap();
            assert!(report.law_satisfied, "violations: {:?}", report.violations);
        }
    }

    #[test]
    fn heawood_noncommutative_law_holds_both_sides() {
        let a = heawood(3, 5);
        let law = natural_law(&a).unwrap();
        let axes: Vec<usize> = (0..a.dim()).collect();
        for side in [Side::Left, Side::Right] {
            let report = check_fusion(&a, &axes, &law, side).unwrap();
            assert!(report.law_satisfied, "violations: {:?}", report.violations);
        }
    }

    #[test]
    fn two_vertex_alpha_cell_is_contained() {
        let ctx = FieldCtx::prime(5).unwrap();
        let c = |n: i64| ctx.from_integer(n);
        let g = LabeledDigraph::new(
            ctx,
            vec!["x".into(), "y".into()],
            vec![
                ("x".to_string(), "y".to_string(), c(2)),
                ("y".to_string(), "x".to_string(), c(2)),
            ],
        )
        .unwrap();
        let a = GraphAlgebra::new(g);
        let law = natural_law(&a).unwrap();
        let report = check_fusion(&a, &[0], &law, Side::Left).unwrap();
        assert!(report.law_satisfied);
        let cell = report.per_axis[0]
            .cells
            .iter()
            .find(|cell| cell.lambda == "2" && cell.mu == "2")
            .unwrap();
        for v in &cell.observed {
            assert!(v == "1" || v == "2");
        }
    }

    #[test]
    fn missing_zero_in_law_is_flagged() {
        let a = heawood(3, 3);
        let ctx = f7();
        let values: BTreeSet<Scalar> = [ctx.one(), ctx.from_integer(3)].into_iter().collect();
        let law = FusionLaw::graph_type(&values).unwrap();
        assert!(matches!(
            check_fusion(&a, &[0], &law, Side::Left),
            Err(FusionError::LawMissingZero)
        ));
    }

    #[test]
    fn spectrum_outside_law_is_flagged() {
        let a = heawood(3, 5);
        let ctx = f7();
        // law without 5, but the right side of a point axis sees label 5
        let values: BTreeSet<Scalar> = [0, 1, 3].iter().map(|&v| ctx.from_integer(v)).collect();
        let law = FusionLaw::graph_type(&values).unwrap();
        let x = a.graph().vertex_index("p1").unwrap();
        assert!(matches!(
            check_fusion(&a, &[x], &law, Side::Right),
            Err(FusionError::SpectrumOutsideLaw { .. })
        ));
    }
}
