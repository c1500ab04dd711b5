//! Automorphism groups of labeled digraphs and the idempotent searches that
//! tie them to the algebra.
//!
//! The search engine is iterative color refinement (labels and directions in
//! both coordinates) with individualization backtracking: the orbit of the
//! first vertex of the first smallest non-singleton color class is computed by
//! looking for one automorphism per candidate image, and its stabilizer by
//! recursion. Correctness never depends on the refinement being strong; every
//! candidate bijection is verified edge-by-edge before being accepted.
//!
//! Idempotent enumeration over small prime fields runs as a data-parallel
//! sweep over coefficient vectors with `u64` arithmetic; results are sorted
//! canonically, so they do not depend on the worker count.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num::BigUint;
use num::One;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraElement, GraphAlgebra, Side};
use crate::field::{inv_mod, FieldCtx, Scalar};
use crate::graph::{Extent, LabeledDigraph, PartialLinearSpace};
use crate::perm::{Perm, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("enumeration would visit {needed} candidates, over the cap {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },
    #[error("idempotent enumeration requires a finite field")]
    InfiniteField,
}

// ---------------------------------------------------------------------------
// automorphism search

struct SearchCtx<'g> {
    g: &'g LabeledDigraph,
    n: usize,
    out_edges: Vec<Vec<(u32, usize)>>,
    in_edges: Vec<Vec<(u32, usize)>>,
    fresh: u32,
}

type Coloring = Vec<u32>;

impl<'g> SearchCtx<'g> {
    fn new(g: &'g LabeledDigraph) -> Self {
        let n = g.vertex_count();
        let labels = g.label_set();
        let label_id: BTreeMap<&Scalar, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l, i as u32))
            .collect();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (t, h, l) in g.edges() {
            let id = label_id[l];
            out_edges[t].push((id, h));
            in_edges[h].push((id, t));
        }
        // colors never exceed 2n distinct values across a lockstep pair
        SearchCtx {
            g,
            n,
            out_edges,
            in_edges,
            fresh: 2 * n as u32 + 1,
        }
    }

    /// Refines one or two colorings to stability. With two colorings the key
    /// table is shared, so equal colors mean equal refinement behavior; the
    /// return value is false when the color histograms diverge (then no
    /// color-preserving bijection can exist).
    fn refine(&self, colorings: &mut [Coloring]) -> bool {
        let mut class_counts: Vec<usize> = colorings.iter().map(|_| 0).collect();
        loop {
            type Key = (u32, Vec<(u8, u32, u32)>);
            let keyed: Vec<Vec<Key>> = colorings
                .iter()
                .map(|col| {
                    (0..self.n)
                        .map(|v| {
                            let mut sig: Vec<(u8, u32, u32)> = self.out_edges[v]
                                .iter()
                                .map(|&(l, w)| (0u8, l, col[w]))
                                .chain(self.in_edges[v].iter().map(|&(l, w)| (1u8, l, col[w])))
                                .collect();
                            sig.sort_unstable();
                            (col[v], sig)
                        })
                        .collect()
                })
                .collect();
            let mut table: Vec<&Key> = keyed.iter().flatten().collect();
            table.sort_unstable();
            table.dedup();
            for (col, keys) in colorings.iter_mut().zip(&keyed) {
                for (v, key) in keys.iter().enumerate() {
                    col[v] = table.binary_search(&key).expect("key present") as u32;
                }
            }
            if colorings.len() == 2 {
                let mut h0 = vec![0usize; table.len()];
                let mut h1 = vec![0usize; table.len()];
                for &c in colorings[0].iter() {
                    h0[c as usize] += 1;
                }
                for &c in colorings[1].iter() {
                    h1[c as usize] += 1;
                }
                if h0 != h1 {
                    return false;
                }
            }
            let new_counts: Vec<usize> = colorings
                .iter()
                .map(|col| {
                    let mut distinct: Vec<u32> = col.clone();
                    distinct.sort_unstable();
                    distinct.dedup();
                    distinct.len()
                })
                .collect();
            if new_counts == class_counts {
                return true;
            }
            class_counts = new_counts;
        }
    }

    /// First smallest non-singleton class, members in vertex order.
    fn target_cell(&self, col: &Coloring) -> Option<Vec<usize>> {
        let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (v, &color) in col.iter().enumerate() {
            classes.entry(color).or_default().push(v);
        }
        classes
            .into_values()
            .filter(|members| members.len() >= 2)
            .min_by_key(|members| (members.len(), members[0]))
    }

    fn is_automorphism(&self, p: &Perm) -> bool {
        self.g
            .edges()
            .all(|(t, h, l)| self.g.label(p.apply(t), p.apply(h)) == Some(l))
    }

    /// One color-respecting automorphism carrying the coloring `a` onto `b`,
    /// if any; complete backtracking over candidate images.
    fn find_iso(&self, a: Coloring, b: Coloring) -> Option<Perm> {
        let mut pair = [a, b];
        if !self.refine(&mut pair) {
            return None;
        }
        let [a, b] = pair;
        match self.target_cell(&a) {
            None => {
                let mut by_color: HashMap<u32, usize> = HashMap::with_capacity(self.n);
                for (v, &c) in b.iter().enumerate() {
                    by_color.insert(c, v);
                }
                let images: Vec<usize> = (0..self.n).map(|v| by_color[&a[v]]).collect();
                let p = Perm::from_images(images)?;
                self.is_automorphism(&p).then_some(p)
            }
            Some(cell) => {
                let v = cell[0];
                let color = a[v];
                for u in (0..self.n).filter(|&u| b[u] == color) {
                    let mut a2 = a.clone();
                    let mut b2 = b.clone();
                    a2[v] = self.fresh;
                    b2[u] = self.fresh;
                    if let Some(p) = self.find_iso(a2, b2) {
                        return Some(p);
                    }
                }
                None
            }
        }
    }

    /// Generators and order of the coloring-preserving automorphism group by
    /// orbit-stabilizer recursion. `col` must already be refined.
    fn search(&self, col: &Coloring, gens: &mut Vec<Perm>) -> BigUint {
        let Some(cell) = self.target_cell(col) else {
            return BigUint::one(); // discrete coloring: identity only
        };
        let v = cell[0];
        let mut solo = [col.clone()];
        solo[0][v] = self.fresh;
        self.refine(&mut solo);
        let [stab_col] = solo;
        let stabilizer_order = self.search(&stab_col, gens);
        let mut orbit_size = 1usize;
        for &c in &cell[1..] {
            let mut a = col.clone();
            let mut b = col.clone();
            a[v] = self.fresh;
            b[c] = self.fresh;
            if let Some(p) = self.find_iso(a, b) {
                gens.push(p);
                orbit_size += 1;
            }
        }
        stabilizer_order * BigUint::from(orbit_size)
    }
}

/// The full label- and direction-preserving automorphism group, with a
/// stabilizer chain for exact order and membership. Deterministic for a fixed
/// vertex order.
pub fn automorphism_group(g: &LabeledDigraph) -> PermGroup {
    let n = g.vertex_count();
    if n == 0 {
        return PermGroup::trivial(0);
    }
    let ctx = SearchCtx::new(g);
    let mut solo = [vec![0u32; n]];
    ctx.refine(&mut solo);
    let [coloring] = solo;
    let mut gens = Vec::new();
    let order = ctx.search(&coloring, &mut gens);
    let group = PermGroup::from_generators(n, gens);
    assert_eq!(
        group.order(),
        order,
        "chain order must match the search count"
    );
    group
}

/// Exact order via the stabilizer chain.
pub fn group_order(group: &PermGroup) -> BigUint {
    group.order()
}

/// Applies a vertex permutation to an element coefficient-wise.
pub fn permute_element(e: &AlgebraElement, p: &Perm) -> AlgebraElement {
    AlgebraElement::from_coeffs(e.iter().map(|(v, c)| (p.apply(v), c.clone())))
}

/// Whether the linear extension of the vertex permutation respects the
/// product; checked on all basis pairs, which suffices by bilinearity.
pub fn is_algebra_automorphism(a: &GraphAlgebra, p: &Perm) -> bool {
    let n = a.dim();
    if p.degree() != n {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let mapped = permute_element(&a.basis_product(i, j), p);
            if mapped != a.basis_product(p.apply(i), p.apply(j)) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// theorem hypothesis checks

/// Which recovery criterion a graph satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TheoremTag {
    /// Symmetric, labels off {0,1}, finite girth, and the degree bounds
    /// `2 < k_min <= g-3`, `k_max <= min(2(k_min-1), g-3)`.
    DegreeGirth,
    /// Incidence graph of a connected graph with min degree 3, or of a
    /// connected partial linear space with 3-point lines and at least 4 lines
    /// per point; labels off {0,1}.
    Incidence,
    /// Incidence graph of a connected graph with min degree 3, all labels 1
    /// over the two-element field.
    BinaryIncidence,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionCheck {
    pub name: &'static str,
    pub holds: bool,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    pub symmetric: bool,
    pub weakly_connected: bool,
    pub girth: Extent,
    pub k_min: Extent,
    pub k_max: Extent,
    pub labels_avoid_zero_one: bool,
    pub all_labels_one_over_f2: bool,
    pub checks: Vec<CriterionCheck>,
    pub applicable: Vec<TheoremTag>,
}

fn check_item(details: &mut Vec<String>, ok: &mut bool, name: &str, value: bool) -> bool {
    details.push(format!("{name}: {}", if value { "yes" } else { "no" }));
    *ok &= value;
    value
}

/// Whether `g` is structurally the directed incidence graph of `pls`:
/// the points are vertices, the remaining vertices each border exactly one
/// line's worth of points in both directions, and the line multiset matches.
fn is_incidence_of(g: &LabeledDigraph, pls: &PartialLinearSpace) -> bool {
    let n = g.vertex_count();
    let mut point_of: Vec<Option<usize>> = vec![None; n];
    for (pi, name) in pls.points().iter().enumerate() {
        match g.vertex_index(name) {
            Some(v) => point_of[v] = Some(pi),
            None => return false,
        }
    }
    if pls.point_count() + pls.line_count() != n {
        return false;
    }
    // every edge joins a point and a non-point, in both directions
    for (t, h, _) in g.edges() {
        if point_of[t].is_some() == point_of[h].is_some() {
            return false;
        }
        if !g.has_edge(h, t) {
            return false;
        }
    }
    let mut seen_lines: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if point_of[v].is_some() {
            continue;
        }
        let mut members: Vec<usize> = Vec::new();
        for &w in g.underlying_neighbors(v) {
            match point_of[w] {
                Some(pi) => members.push(pi),
                None => return false,
            }
        }
        members.sort_unstable();
        seen_lines.push(members);
    }
    let mut expected: Vec<Vec<usize>> = pls.lines().to_vec();
    expected.sort();
    seen_lines.sort();
    expected == seen_lines
}

/// Evaluates, exactly, which automorphism-recovery criteria hold for `g`,
/// optionally knowing the incidence structure it was built from.
pub fn check_theorem_hypotheses(
    g: &LabeledDigraph,
    origin: Option<&PartialLinearSpace>,
) -> HypothesisReport {
    let profile = g.profile();
    let labels = g.label_set();
    let labels_avoid_zero_one = !labels.iter().any(|l| l.is_zero() || l.is_one());
    let all_labels_one_over_f2 = g.field() == FieldCtx::Prime { p: 2 }
        && !labels.is_empty()
        && labels.iter().all(|l| l.is_one());

    let mut checks = Vec::new();
    let mut applicable = Vec::new();

    // degree-girth criterion
    {
        let mut details = Vec::new();
        let mut ok = true;
        check_item(&mut details, &mut ok, "symmetric", profile.is_symmetric);
        check_item(
            &mut details,
            &mut ok,
            "weakly connected",
            profile.weakly_connected,
        );
        check_item(
            &mut details,
            &mut ok,
            "labels avoid 0 and 1",
            labels_avoid_zero_one,
        );
        let g_fin = profile.girth.finite();
        check_item(&mut details, &mut ok, "finite girth", g_fin.is_some());
        if let (Some(girth), Extent::Finite(k_min), Extent::Finite(k_max)) =
            (g_fin, profile.k_min, profile.k_max)
        {
            check_item(
                &mut details,
                &mut ok,
                &format!("2 < k_min = {k_min}"),
                2 < k_min,
            );
            check_item(
                &mut details,
                &mut ok,
                &format!("k_min = {k_min} <= girth - 3 = {}", girth.saturating_sub(3)),
                k_min <= girth.saturating_sub(3),
            );
            check_item(
                &mut details,
                &mut ok,
                &format!(
                    "k_max = {k_max} <= 2(k_min - 1) = {}",
                    2 * k_min.saturating_sub(1)
                ),
                k_max <= 2 * k_min.saturating_sub(1),
            );
            check_item(
                &mut details,
                &mut ok,
                &format!("k_max = {k_max} <= girth - 3 = {}", girth.saturating_sub(3)),
                k_max <= girth.saturating_sub(3),
            );
        } else {
            ok = false;
        }
        if ok {
            applicable.push(TheoremTag::DegreeGirth);
        }
        checks.push(CriterionCheck {
            name: "degree-girth",
            holds: ok,
            details,
        });
    }

    // incidence criterion
    {
        let mut details = Vec::new();
        let mut ok = true;
        match origin {
            None => {
                details.push("no incidence structure supplied".into());
                ok = false;
            }
            Some(pls) => {
                check_item(
                    &mut details,
                    &mut ok,
                    "matches the incidence structure",
                    is_incidence_of(g, pls),
                );
                check_item(
                    &mut details,
                    &mut ok,
                    "structure connected",
                    pls.is_connected(),
                );
                check_item(
                    &mut details,
                    &mut ok,
                    "labels avoid 0 and 1",
                    labels_avoid_zero_one,
                );
                let degrees = pls.point_degrees();
                let graph_case = pls.all_lines_of_size(2) && degrees.iter().all(|&d| d >= 3);
                let pls_case = pls.all_lines_of_size(3) && degrees.iter().all(|&d| d >= 4);
                details.push(format!(
                    "graph case (2-point lines, degrees >= 3): {graph_case}; \
                     3-point-line case (>= 4 lines per point): {pls_case}"
                ));
                ok &= graph_case || pls_case;
            }
        }
        if ok {
            applicable.push(TheoremTag::Incidence);
        }
        checks.push(CriterionCheck {
            name: "incidence",
            holds: ok,
            details,
        });
    }

    // binary incidence criterion
    {
        let mut details = Vec::new();
        let mut ok = true;
        match origin {
            None => {
                details.push("no incidence structure supplied".into());
                ok = false;
            }
            Some(pls) => {
                check_item(
                    &mut details,
                    &mut ok,
                    "matches the incidence structure",
                    is_incidence_of(g, pls),
                );
                check_item(
                    &mut details,
                    &mut ok,
                    "structure connected",
                    pls.is_connected(),
                );
                check_item(
                    &mut details,
                    &mut ok,
                    "graph case with degrees >= 3",
                    pls.all_lines_of_size(2) && pls.point_degrees().iter().all(|&d| d >= 3),
                );
                check_item(
                    &mut details,
                    &mut ok,
                    "all labels 1 over the two-element field",
                    all_labels_one_over_f2,
                );
            }
        }
        if ok {
            applicable.push(TheoremTag::BinaryIncidence);
        }
        checks.push(CriterionCheck {
            name: "binary-incidence",
            holds: ok,
            details,
        });
    }

    HypothesisReport {
        symmetric: profile.is_symmetric,
        weakly_connected: profile.weakly_connected,
        girth: profile.girth,
        k_min: profile.k_min,
        k_max: profile.k_max,
        labels_avoid_zero_one,
        all_labels_one_over_f2,
        checks,
        applicable,
    }
}

// ---------------------------------------------------------------------------
// idempotent enumeration over prime fields

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// All `p^dim` coefficient vectors.
    Exhaustive,
    /// All vectors with support of size at most `k`.
    SupportBounded(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationBudget {
    pub mode: EnumerationMode,
    pub cap: u64,
}

impl EnumerationBudget {
    pub const DEFAULT_CAP: u64 = 1 << 24;

    pub fn exhaustive() -> Self {
        EnumerationBudget {
            mode: EnumerationMode::Exhaustive,
            cap: Self::DEFAULT_CAP,
        }
    }

    pub fn support_bounded(k: usize) -> Self {
        EnumerationBudget {
            mode: EnumerationMode::SupportBounded(k),
            cap: Self::DEFAULT_CAP,
        }
    }
}

/// Dense structure constants of a prime-field graph algebra, for the sweeps.
struct FpAlgebra {
    p: u64,
    dim: usize,
    edges: Vec<(usize, usize, u64)>,
    out: Vec<Vec<(usize, u64)>>,
}

impl FpAlgebra {
    fn new(a: &GraphAlgebra) -> Option<Self> {
        let p = match a.field() {
            FieldCtx::Prime { p } => p,
            FieldCtx::Rationals => return None,
        };
        let dim = a.dim();
        let mut edges = Vec::new();
        let mut out = vec![Vec::new(); dim];
        for (t, h, l) in a.graph().edges() {
            let Scalar::Fp { val, .. } = l else {
                unreachable!("prime field")
            };
            edges.push((t, h, *val));
            out[t].push((h, *val));
        }
        Some(FpAlgebra { p, dim, edges, out })
    }

    fn square_equals_self(&self, coeffs: &[u64], scratch: &mut [u64]) -> bool {
        let p = self.p;
        scratch.fill(0);
        for i in 0..self.dim {
            let ci = coeffs[i];
            if ci == 0 {
                continue;
            }
            scratch[i] = (scratch[i] + ci * ci) % p;
            for &(j, lab) in &self.out[i] {
                let cj = coeffs[j];
                if cj != 0 {
                    let t = ci * cj % p * lab % p;
                    scratch[i] = (scratch[i] + t) % p;
                    scratch[j] = (scratch[j] + t) % p;
                }
            }
        }
        scratch == coeffs
    }

    /// Row-major matrix of the left or right adjoint of `coeffs`.
    fn adjoint(&self, coeffs: &[u64], side: Side) -> Vec<u64> {
        let (p, dim) = (self.p, self.dim);
        let mut m = vec![0u64; dim * dim];
        for j in 0..dim {
            m[j * dim + j] = coeffs[j];
        }
        for &(i, j, lab) in &self.edges {
            // x_i * x_j = lab (x_i + x_j); for L_a the column is a * x_j,
            // for R_a it is x_i * a
            match side {
                Side::Left => {
                    let t = coeffs[i] * lab % p;
                    if t != 0 {
                        m[i * dim + j] = (m[i * dim + j] + t) % p;
                        m[j * dim + j] = (m[j * dim + j] + t) % p;
                    }
                }
                Side::Right => {
                    let t = coeffs[j] * lab % p;
                    if t != 0 {
                        m[j * dim + i] = (m[j * dim + i] + t) % p;
                        m[i * dim + i] = (m[i * dim + i] + t) % p;
                    }
                }
            }
        }
        m
    }

    /// Rank by elimination mod p, giving up once `cap` is exceeded.
    fn rank_bounded(&self, mut m: Vec<u64>, cap: usize) -> usize {
        let (p, n) = (self.p, self.dim);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            if row == n {
                break;
            }
            let Some(pivot) = (row..n).find(|&r| m[r * n + col] != 0) else {
                continue;
            };
            if pivot != row {
                for c in col..n {
                    m.swap(row * n + c, pivot * n + c);
                }
            }
            let inv = inv_mod(m[row * n + col], p);
            for c in col..n {
                m[row * n + c] = m[row * n + c] * inv % p;
            }
            for r in row + 1..n {
                let f = m[r * n + col];
                if f != 0 {
                    for c in col..n {
                        let sub = f * m[row * n + c] % p;
                        m[r * n + c] = (m[r * n + c] + p - sub) % p;
                    }
                }
            }
            rank += 1;
            row += 1;
            if rank > cap {
                return rank;
            }
        }
        rank
    }

    /// Dimension of the 1-eigenspace of the adjoint.
    fn one_eigenspace_dim(&self, coeffs: &[u64], side: Side) -> usize {
        let mut m = self.adjoint(coeffs, side);
        for i in 0..self.dim {
            m[i * self.dim + i] = (m[i * self.dim + i] + self.p - 1) % self.p;
        }
        self.dim - self.rank_bounded(m, self.dim)
    }

    fn to_element(&self, coeffs: &[u64], ctx: FieldCtx) -> AlgebraElement {
        AlgebraElement::from_coeffs(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(v, &c)| (v, ctx.from_integer(c as i64))),
        )
    }
}

fn exhaustive_sweep(fp: &FpAlgebra, cap: u64) -> Result<Vec<Vec<u64>>, AutError> {
    let total = (fp.p as u128)
        .checked_pow(fp.dim as u32)
        .filter(|&t| t <= cap as u128)
        .ok_or(AutError::BudgetExceeded {
            needed: (fp.p as u128)
                .checked_pow(fp.dim as u32)
                .unwrap_or(u128::MAX),
            cap,
        })?;
    let chunk: u128 = 1 << 14;
    let chunks = total.div_ceil(chunk);
    let hits: Vec<Vec<Vec<u64>>> = (0..chunks as u64)
        .into_par_iter()
        .map(|ci| {
            let start = ci as u128 * chunk;
            let end = (start + chunk).min(total);
            let mut coeffs = decode_base_p(start, fp.p, fp.dim);
            let mut scratch = vec![0u64; fp.dim];
            let mut found = Vec::new();
            let mut idx = start;
            while idx < end {
                if fp.square_equals_self(&coeffs, &mut scratch) {
                    found.push(coeffs.clone());
                }
                idx += 1;
                increment_base_p(&mut coeffs, fp.p);
            }
            found
        })
        .collect();
    Ok(hits.into_iter().flatten().collect())
}

fn decode_base_p(mut idx: u128, p: u64, dim: usize) -> Vec<u64> {
    let mut coeffs = vec![0u64; dim];
    for digit in coeffs.iter_mut() {
        *digit = (idx % p as u128) as u64;
        idx /= p as u128;
    }
    coeffs
}

fn increment_base_p(coeffs: &mut [u64], p: u64) {
    for digit in coeffs.iter_mut() {
        *digit += 1;
        if *digit < p {
            return;
        }
        *digit = 0;
    }
}

fn support_bounded_sweep(fp: &FpAlgebra, k: usize, cap: u64) -> Result<Vec<Vec<u64>>, AutError> {
    let needed = (fp.p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(AutError::BudgetExceeded { needed, cap });
    }
    let mut found = vec![vec![0u64; fp.dim]]; // the zero vector
    let mut scratch = vec![0u64; fp.dim];
    let mut support = Vec::new();
    sweep_supports(fp, k.min(fp.dim), 0, &mut support, &mut scratch, &mut found);
    Ok(found)
}

fn sweep_supports(
    fp: &FpAlgebra,
    k: usize,
    from: usize,
    support: &mut Vec<usize>,
    scratch: &mut [u64],
    found: &mut Vec<Vec<u64>>,
) {
    for v in from..fp.dim {
        support.push(v);
        // all assignments of nonzero coefficients to this support
        let mut values = vec![1u64; support.len()];
        loop {
            let mut coeffs = vec![0u64; fp.dim];
            for (s, &val) in support.iter().zip(&values) {
                coeffs[*s] = val;
            }
            if fp.square_equals_self(&coeffs, scratch) {
                found.push(coeffs);
            }
            // odometer over 1..p per coordinate
            let mut pos = 0;
            loop {
                if pos == values.len() {
                    break;
                }
                values[pos] += 1;
                if values[pos] < fp.p {
                    break;
                }
                values[pos] = 1;
                pos += 1;
            }
            if pos == values.len() {
                break;
            }
        }
        if support.len() < k {
            sweep_supports(fp, k, v + 1, support, scratch, found);
        }
        support.pop();
    }
}

/// All idempotents of a finite-field graph algebra within the budget, sorted
/// canonically. Exhaustive mode requires `p^dim <= cap`; support-bounded mode
/// requires `p^k <= cap`.
pub fn enumerate_idempotents(
    a: &GraphAlgebra,
    budget: &EnumerationBudget,
) -> Result<Vec<AlgebraElement>, AutError> {
    let fp = FpAlgebra::new(a).ok_or(AutError::InfiniteField)?;
    let raw = match budget.mode {
        EnumerationMode::Exhaustive => exhaustive_sweep(&fp, budget.cap)?,
        EnumerationMode::SupportBounded(k) => support_bounded_sweep(&fp, k, budget.cap)?,
    };
    let mut out: Vec<AlgebraElement> = raw.iter().map(|c| fp.to_element(c, a.field())).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

// ---------------------------------------------------------------------------
// axis recovery

/// Outcome of sweeping all idempotents and filtering by the rank bound used
/// in the recovery arguments: when a criterion applies, every survivor must
/// be a basis vertex; anything else is exotic.
#[derive(Debug, Clone)]
pub struct AxisRecoveryReport {
    pub hypothesis: HypothesisReport,
    pub theorem_applies: bool,
    pub search_mode: String,
    pub rank_bound: Option<usize>,
    pub primitivity_filter: bool,
    pub idempotent_count: usize,
    pub survivors: Vec<AlgebraElement>,
    pub exotic: Vec<AlgebraElement>,
}

impl AxisRecoveryReport {
    pub fn to_json(&self, a: &GraphAlgebra) -> serde_json::Value {
        serde_json::json!({
            "hypothesis": self.hypothesis,
            "theorem_applies": self.theorem_applies,
            "search_mode": self.search_mode,
            "rank_bound": self.rank_bound,
            "primitivity_filter": self.primitivity_filter,
            "idempotent_count": self.idempotent_count,
            "survivor_count": self.survivors.len(),
            "survivors": self.survivors.iter().map(|e| a.element_to_json(e)).collect::<Vec<_>>(),
            "exotic": self.exotic.iter().map(|e| a.element_to_json(e)).collect::<Vec<_>>(),
        })
    }
}

/// Adjoint ranks and eigenvalue-1 nullities of both sides.
fn fingerprint(fp: &FpAlgebra, coeffs: &[u64]) -> (usize, usize, usize, usize) {
    (
        fp.rank_bounded(fp.adjoint(coeffs, Side::Left), fp.dim),
        fp.rank_bounded(fp.adjoint(coeffs, Side::Right), fp.dim),
        fp.one_eigenspace_dim(coeffs, Side::Left),
        fp.one_eigenspace_dim(coeffs, Side::Right),
    )
}

/// Enumerates idempotents and keeps the nonzero ones whose adjoint ranks are
/// at most `1 + k_max` on both sides, plus primitivity when the labels avoid
/// 0 and 1 (in the all-ones binary regime vertices are not primitive, so the
/// filter there matches a vertex's full adjoint fingerprint instead). When
/// one of the recovery criteria applies, the survivors are asserted to be
/// exactly basis vertices; violations are reported as exotic.
pub fn verify_axes_recoverable(
    a: &GraphAlgebra,
    origin: Option<&PartialLinearSpace>,
    budget: &EnumerationBudget,
) -> Result<AxisRecoveryReport, AutError> {
    let hypothesis = check_theorem_hypotheses(a.graph(), origin);
    let theorem_applies = !hypothesis.applicable.is_empty();
    if !theorem_applies {
        return Ok(AxisRecoveryReport {
            hypothesis,
            theorem_applies,
            search_mode: "not-run".into(),
            rank_bound: None,
            primitivity_filter: false,
            idempotent_count: 0,
            survivors: Vec::new(),
            exotic: Vec::new(),
        });
    }
    let fp = FpAlgebra::new(a).ok_or(AutError::InfiniteField)?;
    let raw = match budget.mode {
        EnumerationMode::Exhaustive => exhaustive_sweep(&fp, budget.cap)?,
        EnumerationMode::SupportBounded(k) => support_bounded_sweep(&fp, k, budget.cap)?,
    };
    let k_max = match hypothesis.k_max {
        Extent::Finite(k) => k as usize,
        Extent::Infinity => unreachable!("finite graph"),
    };
    let bound = 1 + k_max;
    // with all labels 1 over F_2 the adjoints are not semisimple, so the
    // eigenspace-based primitivity filter only applies in the other regimes;
    // there the filter instead matches the full adjoint fingerprint (ranks
    // and eigenvalue-1 nullities) of some vertex, which is exactly the data
    // an algebra automorphism transports from a vertex to its image
    let primitivity_filter = hypothesis.labels_avoid_zero_one;
    let vertex_fingerprints: std::collections::BTreeSet<(usize, usize, usize, usize)> =
        if primitivity_filter {
            std::collections::BTreeSet::new()
        } else {
            (0..fp.dim)
                .map(|x| {
                    let mut coeffs = vec![0u64; fp.dim];
                    coeffs[x] = 1;
                    fingerprint(&fp, &coeffs)
                })
                .collect()
        };
    let mut survivors = Vec::new();
    for coeffs in &raw {
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        if fp.rank_bounded(fp.adjoint(coeffs, Side::Left), bound) > bound {
            continue;
        }
        if fp.rank_bounded(fp.adjoint(coeffs, Side::Right), bound) > bound {
            continue;
        }
        if primitivity_filter {
            if fp.one_eigenspace_dim(coeffs, Side::Left) != 1
                || fp.one_eigenspace_dim(coeffs, Side::Right) != 1
            {
                continue;
            }
        } else if !vertex_fingerprints.contains(&fingerprint(&fp, coeffs)) {
            continue;
        }
        survivors.push(fp.to_element(coeffs, a.field()));
    }
    survivors.sort();
    let exotic: Vec<AlgebraElement> = survivors
        .iter()
        .filter(|e| !(e.support_size() == 1 && e.iter().next().unwrap().1.is_one()))
        .cloned()
        .collect();
    let search_mode = match budget.mode {
        EnumerationMode::Exhaustive => "exhaustive".to_string(),
        EnumerationMode::SupportBounded(k) => format!("support-bounded({k})"),
    };
    Ok(AxisRecoveryReport {
        hypothesis,
        theorem_applies,
        search_mode,
        rank_bound: Some(bound),
        primitivity_filter,
        idempotent_count: raw.len(),
        survivors,
        exotic,
    })
}

// ---------------------------------------------------------------------------
// rank / support analysis

#[derive(Debug, Clone, Serialize)]
pub struct TreeStats {
    pub size: usize,
    pub leaves: usize,
    pub diameter: usize,
    /// Underlying degrees (in the whole graph) of the leaves.
    pub leaf_degrees: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub applicable: bool,
    pub holds: Option<bool>,
    pub detail: String,
}

/// What the support of an element looks like versus the ranks of its adjoints.
#[derive(Debug, Clone, Serialize)]
pub struct RankSupportAnalysis {
    pub support: Vec<String>,
    pub component_count: usize,
    pub is_forest: bool,
    pub trees: Vec<TreeStats>,
    pub is_idempotent: bool,
    pub is_primitive: bool,
    pub rank_left: usize,
    pub rank_right: usize,
    pub checks: Vec<LemmaCheck>,
}

struct SupportGraph {
    vertices: Vec<usize>,
    adj: Vec<Vec<usize>>, // indices into `vertices`
    components: Vec<Vec<usize>>,
    edge_count: usize,
}

impl SupportGraph {
    fn new(g: &LabeledDigraph, support: &[usize]) -> Self {
        let pos: HashMap<usize, usize> = support.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); support.len()];
        let mut edge_count = 0;
        for (i, &v) in support.iter().enumerate() {
            for &w in g.underlying_neighbors(v) {
                if let Some(&j) = pos.get(&w) {
                    adj[i].push(j);
                    if i < j {
                        edge_count += 1;
                    }
                }
            }
        }
        let mut seen = vec![false; support.len()];
        let mut components = Vec::new();
        for start in 0..support.len() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        SupportGraph {
            vertices: support.to_vec(),
            adj,
            components,
            edge_count,
        }
    }

    fn is_forest(&self) -> bool {
        // acyclic iff every component has size-1 edges; equivalently overall
        self.edge_count + self.components.len() == self.vertices.len()
    }

    fn component_edges(&self, comp: &[usize]) -> usize {
        comp.iter()
            .map(|&u| self.adj[u].iter().filter(|&&w| comp.contains(&w)).count())
            .sum::<usize>()
            / 2
    }

    fn bfs_dist(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(dist[u].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn tree_stats(&self, g: &LabeledDigraph, comp: &[usize]) -> TreeStats {
        let leaves: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&u| self.adj[u].iter().filter(|w| comp.contains(w)).count() <= 1)
            .collect();
        let diameter = if comp.len() == 1 {
            0
        } else {
            let d0 = self.bfs_dist(comp[0]);
            let far = *comp.iter().max_by_key(|&&u| d0[u].unwrap_or(0)).unwrap();
            let d1 = self.bfs_dist(far);
            comp.iter().filter_map(|&u| d1[u]).max().unwrap_or(0)
        };
        TreeStats {
            size: comp.len(),
            leaves: leaves.len(),
            diameter,
            leaf_degrees: leaves
                .iter()
                .map(|&u| g.underlying_neighbors(self.vertices[u]).len())
                .collect(),
        }
    }
}

/// Computes support shape data, adjoint ranks, and evaluates each applicable
/// rank inequality.
///
/// The connectivity check for primitive idempotents is on the underlying
/// undirected support (connectivity of the induced subgraph), which is what
/// the rank arguments actually use.
pub fn rank_support_analysis(a: &GraphAlgebra, element: &AlgebraElement) -> RankSupportAnalysis {
    let g = a.graph();
    let support = element.support();
    let sg = SupportGraph::new(g, &support);
    let is_forest = sg.is_forest();
    let rank_left = a.adjoint(element, Side::Left).rank();
    let rank_right = a.adjoint(element, Side::Right).rank();
    let is_idempotent = a.is_idempotent(element).unwrap_or(false);
    let is_primitive = is_idempotent && a.is_primitive_axis(element).unwrap_or(false);
    let girth = g.girth();
    let trees: Vec<TreeStats> = if is_forest {
        sg.components.iter().map(|c| sg.tree_stats(g, c)).collect()
    } else {
        sg.components
            .iter()
            .filter(|c| sg.component_edges(c) + 1 == c.len())
            .map(|c| sg.tree_stats(g, c))
            .collect()
    };
    let mut checks = Vec::new();

    // an idempotent's support has at most rank-many components
    {
        let applicable = is_idempotent && !support.is_empty();
        let holds = applicable
            .then_some(sg.components.len() <= rank_left && sg.components.len() <= rank_right);
        checks.push(LemmaCheck {
            name: "idempotent-component-bound",
            applicable,
            holds,
            detail: format!(
                "components = {}, rank_left = {rank_left}, rank_right = {rank_right}",
                sg.components.len()
            ),
        });
    }

    // a primitive idempotent has connected support
    {
        let applicable = is_primitive;
        let holds = applicable.then_some(sg.components.len() == 1);
        checks.push(LemmaCheck {
            name: "primitive-support-connected",
            applicable,
            holds,
            detail: format!("underlying components = {}", sg.components.len()),
        });
    }

    // rank at most girth-3 forces a forest, with the per-tree lower bound
    {
        let applicable = match girth {
            Extent::Finite(girth) => {
                let threshold = girth.saturating_sub(3) as usize;
                rank_left <= threshold || rank_right <= threshold
            }
            Extent::Infinity => false,
        };
        let holds = applicable.then(|| {
            if !is_forest {
                return false;
            }
            let total: usize = trees.iter().map(|t| t.size - t.leaves + 1).sum();
            let threshold = girth.finite().unwrap().saturating_sub(3) as usize;
            let mut ok = true;
            if rank_left <= threshold {
                ok &= total <= rank_left;
            }
            if rank_right <= threshold {
                ok &= total <= rank_right;
            }
            ok
        });
        checks.push(LemmaCheck {
            name: "low-rank-forest",
            applicable,
            holds,
            detail: format!("is_forest = {is_forest}, girth = {girth}"),
        });
    }

    // single-tree idempotent with small diameter: leaf-degree lower bound
    {
        let single_tree = is_forest && sg.components.len() == 1 && !support.is_empty();
        let applicable = is_idempotent
            && single_tree
            && match girth {
                Extent::Finite(girth) => trees[0].diameter as u64 <= girth.saturating_sub(3),
                Extent::Infinity => true,
            };
        let holds = applicable.then(|| {
            let t = &trees[0];
            let bound = t.size - t.leaves
                + 1
                + t.leaf_degrees
                    .iter()
                    .map(|d| d.saturating_sub(1))
                    .sum::<usize>();
            rank_left >= bound && rank_right >= bound
        });
        let detail = if single_tree {
            let t = &trees[0];
            format!(
                "n = {}, leaves = {}, diameter = {}",
                t.size, t.leaves, t.diameter
            )
        } else {
            "support is not a single tree".into()
        };
        checks.push(LemmaCheck {
            name: "tree-leaf-rank-bound",
            applicable,
            holds,
            detail,
        });
    }

    // single-tree idempotent with diameter exactly girth-2 (>= 4)
    {
        let single_tree = is_forest && sg.components.len() == 1 && !support.is_empty();
        let applicable = is_idempotent
            && single_tree
            && matches!(girth, Extent::Finite(girth)
                if trees[0].diameter as u64 == girth.saturating_sub(2) && trees[0].diameter >= 4);
        let holds = applicable.then(|| {
            let comp = &sg.components[0];
            let d = trees[0].diameter;
            let mut required = 0usize;
            for &leaf in comp {
                if sg.adj[leaf].len() > 1 {
                    continue;
                }
                let dist = sg.bfs_dist(leaf);
                for &other in comp {
                    if sg.adj[other].len() <= 1 && dist[other] == Some(d) {
                        let da = g.underlying_neighbors(sg.vertices[leaf]).len();
                        let db = g.underlying_neighbors(sg.vertices[other]).len();
                        required = required.max(d + da + db - 4);
                    }
                }
            }
            rank_left >= required && rank_right >= required
        });
        checks.push(LemmaCheck {
            name: "long-tree-rank-bound",
            applicable,
            holds,
            detail: format!("girth = {girth}"),
        });
    }

    RankSupportAnalysis {
        support: support
            .iter()
            .map(|&v| g.vertex_name(v).to_string())
            .collect(),
        component_count: sg.components.len(),
        is_forest,
        trees,
        is_idempotent,
        is_primitive,
        rank_left,
        rank_right,
        checks,
    }
}
