//! The algebra of a labeled digraph: the vector space on the vertex basis with
//! the bilinear product determined by `x*x = x`, `x*y = a(x+y)` on an edge
//! labeled `a`, and `x*y = 0` otherwise.
//!
//! Elements are sparse maps from basis index to nonzero scalar; adjoint maps
//! are dense exact matrices with lazily memoized rank.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldCtx, Scalar};
use crate::graph::LabeledDigraph;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element uses a field different from the algebra's")]
    FieldMismatch,
    #[error("adjoint of axis {axis:?} is not semisimple: incident label 1")]
    NotSemisimple { axis: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("bad element: {0}")]
    BadElement(String),
}

/// Which adjoint map of an element is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A sparse algebra element: vertex index -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct AlgebraElement {
    coeffs: BTreeMap<usize, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn unit(vertex: usize, ctx: FieldCtx) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vertex, ctx.one());
        AlgebraElement { coeffs }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (usize, Scalar)>>(entries: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (v, c) in entries {
            if !c.is_zero() {
                coeffs.insert(v, c);
            }
        }
        AlgebraElement { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, vertex: usize) -> Option<&Scalar> {
        self.coeffs.get(&vertex)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(&v, c)| (v, c))
    }

    /// The support: vertices with nonzero coefficient, in index order.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    fn add_assign(&mut self, vertex: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        match self.coeffs.remove(&vertex) {
            None => {
                self.coeffs.insert(vertex, value.clone());
            }
            Some(old) => {
                let new = old.add(value).expect("same field");
                if !new.is_zero() {
                    self.coeffs.insert(vertex, new);
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (v, c) in other.iter() {
            out.add_assign(v, c);
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|(&v, c)| (v, c.neg())).collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> AlgebraElement {
        if factor.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&v, c)| (v, c.mul(factor).expect("same field")))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize, ctx: FieldCtx) -> Vec<Scalar> {
        let mut out = vec![ctx.zero(); dim];
        for (v, c) in self.iter() {
            out[v] = c.clone();
        }
        out
    }

    pub fn from_dense(dense: &[Scalar]) -> AlgebraElement {
        AlgebraElement::from_coeffs(dense.iter().enumerate().map(|(v, c)| (v, c.clone())))
    }
}

/// The graph algebra: a labeled digraph together with its fixed basis order.
#[derive(Debug, Clone)]
pub struct GraphAlgebra {
    graph: LabeledDigraph,
}

impl GraphAlgebra {
    pub fn new(graph: LabeledDigraph) -> Self {
        GraphAlgebra { graph }
    }

    pub fn graph(&self) -> &LabeledDigraph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn field(&self) -> FieldCtx {
        self.graph.field()
    }

    /// The opposite algebra, built on the reversed graph.
    pub fn opposite(&self) -> GraphAlgebra {
        GraphAlgebra::new(self.graph.reversed())
    }

    fn check_element(&self, a: &AlgebraElement) -> Result<(), AlgebraError> {
        for (v, c) in a.iter() {
            if v >= self.dim() {
                return Err(AlgebraError::BadElement(format!(
                    "vertex index {v} out of range"
                )));
            }
            if c.field() != self.field() {
                return Err(AlgebraError::FieldMismatch);
            }
        }
        Ok(())
    }

    /// Product of two basis vertices, as a sparse element.
    pub fn basis_product(&self, x: usize, y: usize) -> AlgebraElement {
        if x == y {
            return AlgebraElement::unit(x, self.field());
        }
        match self.graph.label(x, y) {
            None => AlgebraElement::zero(),
            Some(alpha) => AlgebraElement::from_coeffs([(x, alpha.clone()), (y, alpha.clone())]),
        }
    }

    /// The bilinear product.
    pub fn multiply(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut out = AlgebraElement::zero();
        for (x, ca) in a.iter() {
            for (y, cb) in b.iter() {
                let c = ca.mul(cb).expect("same field");
                if x == y {
                    out.add_assign(x, &c);
                } else if let Some(alpha) = self.graph.label(x, y) {
                    let t = c.mul(alpha).expect("same field");
                    out.add_assign(x, &t);
                    out.add_assign(y, &t);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of the left or right adjoint of `a` in the vertex basis.
    pub fn adjoint(&self, a: &AlgebraElement, side: Side) -> AdjointMatrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for j in 0..n {
            let basis = AlgebraElement::unit(j, self.field());
            let image = match side {
                Side::Left => self.multiply(a, &basis),
                Side::Right => self.multiply(&basis, a),
            }
            .expect("element validated");
            for (i, c) in image.iter() {
                m.set(i, j, c.clone());
            }
        }
        AdjointMatrix {
            side,
            base: a.clone(),
            matrix: m,
            rank: OnceLock::new(),
        }
    }

    pub fn is_idempotent(&self, a: &AlgebraElement) -> Result<bool, AlgebraError> {
        Ok(self.multiply(a, a)? == *a)
    }

    /// An idempotent whose 1-eigenspace for both adjoints is exactly its span.
    pub fn is_primitive_axis(&self, a: &AlgebraElement) -> Result<bool, AlgebraError> {
        if a.is_zero() || !self.is_idempotent(a)? {
            return Ok(false);
        }
        for side in [Side::Left, Side::Right] {
            let adj = self.adjoint(a, side);
            let shifted = adj.matrix().minus_scalar_identity(&self.field().one());
            // a itself is in the kernel; primitivity means nothing else is
            if shifted.nullspace().len() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Labels on edges incident to `x` on the given side (out-edges for the
    /// left adjoint, in-edges for the right), grouped with their neighbors.
    pub(crate) fn side_neighbors(&self, x: usize, side: Side) -> Vec<(usize, &Scalar)> {
        match side {
            Side::Left => self
                .graph
                .out_neighbors(x)
                .iter()
                .map(|&y| (y, self.graph.label(x, y).expect("edge")))
                .collect(),
            Side::Right => self
                .graph
                .in_neighbors(x)
                .iter()
                .map(|&y| (y, self.graph.label(y, x).expect("edge")))
                .collect(),
        }
    }

    /// Eigenspace decomposition of the adjoint of a vertex axis.
    ///
    /// Requires that no incident label on the given side equals 1. Returns the
    /// canonically ordered decomposition: eigenvalue 1 first (spanned by the
    /// axis), then one space per incident label in canonical scalar order
    /// (spanned by `a*x + (a-1)*y` over the neighbors `y` with label `a`),
    /// then 0 (spanned by the non-neighbors), omitted when every other vertex
    /// is adjacent. The dimensions always sum to the dimension of the algebra.
    pub fn axis_eigenspaces(
        &self,
        x: usize,
        side: Side,
    ) -> Result<AxisDecomposition, AlgebraError> {
        let ctx = self.field();
        let neighbors = self.side_neighbors(x, side);
        if neighbors.iter().any(|(_, l)| l.is_one()) {
            return Err(AlgebraError::NotSemisimple {
                axis: self.graph.vertex_name(x).to_string(),
            });
        }
        let mut by_label: BTreeMap<Scalar, Vec<usize>> = BTreeMap::new();
        for (y, l) in &neighbors {
            by_label.entry((*l).clone()).or_default().push(*y);
        }
        let mut parts: Vec<(Scalar, Vec<AlgebraElement>)> =
            vec![(ctx.one(), vec![AlgebraElement::unit(x, ctx)])];
        for (alpha, ys) in by_label.iter() {
            let am1 = alpha.sub(&ctx.one()).expect("same field");
            let vectors = ys
                .iter()
                .map(|&y| AlgebraElement::from_coeffs([(x, alpha.clone()), (y, am1.clone())]))
                .collect();
            parts.push((alpha.clone(), vectors));
        }
        let neighbor_set: std::collections::BTreeSet<usize> =
            neighbors.iter().map(|(y, _)| *y).collect();
        let zero_vectors: Vec<AlgebraElement> = (0..self.dim())
            .filter(|&z| z != x && !neighbor_set.contains(&z))
            .map(|z| AlgebraElement::unit(z, ctx))
            .collect();
        if !zero_vectors.is_empty() {
            parts.push((ctx.zero(), zero_vectors));
        }
        let total: usize = parts.iter().map(|(_, vs)| vs.len()).sum();
        assert_eq!(total, self.dim(), "eigenspace dimensions must sum to dim A");
        Ok(AxisDecomposition {
            axis: x,
            side,
            parts,
        })
    }

    /// Element serialization as a JSON object of vertex name -> scalar string.
    pub fn element_to_json(&self, a: &AlgebraElement) -> serde_json::Value {
        let map: BTreeMap<String, String> = a
            .iter()
            .map(|(v, c)| (self.graph.vertex_name(v).to_string(), c.to_string()))
            .collect();
        serde_json::to_value(map).expect("serializable")
    }

    pub fn element_from_json(
        &self,
        value: &serde_json::Value,
    ) -> Result<AlgebraElement, AlgebraError> {
        let obj = value
            .as_object()
            .ok_or_else(|| AlgebraError::BadElement("expected a JSON object".into()))?;
        let mut entries = Vec::new();
        for (name, text) in obj {
            let v = self
                .graph
                .vertex_index(name)
                .ok_or_else(|| AlgebraError::UnknownVertex(name.clone()))?;
            let text = text
                .as_str()
                .ok_or_else(|| AlgebraError::BadElement("scalar must be a string".into()))?;
            let c = self
                .field()
                .parse(text)
                .map_err(|e| AlgebraError::BadElement(e.to_string()))?;
            entries.push((v, c));
        }
        Ok(AlgebraElement::from_coeffs(entries))
    }

    /// Renders an element as a readable linear combination.
    pub fn element_to_string(&self, a: &AlgebraElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.iter()
            .map(|(v, c)| format!("{}*{}", c, self.graph.vertex_name(v)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A dense adjoint matrix with lazily computed, memoized rank.
#[derive(Debug)]
pub struct AdjointMatrix {
    side: Side,
    base: AlgebraElement,
    matrix: Matrix,
    rank: OnceLock<usize>,
}

impl AdjointMatrix {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn base(&self) -> &AlgebraElement {
        &self.base
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        *self.rank.get_or_init(|| self.matrix.rank())
    }
}

/// One side's eigenspace decomposition for a vertex axis, in canonical order.
#[derive(Debug, Clone)]
pub struct AxisDecomposition {
    pub axis: usize,
    pub side: Side,
    pub parts: Vec<(Scalar, Vec<AlgebraElement>)>,
}

impl AxisDecomposition {
    pub fn eigenvalues(&self) -> Vec<Scalar> {
        self.parts.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn dimension_of(&self, lambda: &Scalar) -> usize {
        self.parts
            .iter()
            .find(|(l, _)| l == lambda)
            .map_or(0, |(_, vs)| vs.len())
    }
}
