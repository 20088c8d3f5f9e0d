//! ℤ²-periodic weighted graphs: data model, built-in Archimedean tilings,
//! symmetry predicates and the graph/weight file formats.
//!
//! A [`PeriodicGraph`] stores a finite fundamental domain together with edge
//! classes carrying ℤ² translation offsets. An edge class `(tail, head, β)`
//! represents the orbit of edges `v_tail(c) ~ v_head(c + β)` over all cells
//! `c`; each undirected class is stored exactly once in a canonical
//! orientation (`tail < head`, or `tail == head` with lexicographically
//! positive offset — the reversed direction is implied with negated offset).
//!
//! Weights live in a [`WeightAssignment`], one strictly positive value per
//! weight class. The per-vertex cyclic order of incident edges (needed by the
//! monomericity predicate) is explicit data, not derived at load time.

mod builtins;

pub use builtins::Tiling;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative tolerance for the constant-vertex-weight test.
pub const VERTEX_WEIGHT_REL_TOL: f64 = 1e-12;

/// ℤ² translation applied to the head vertex of an edge class.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeOffset {
    pub b1: i32,
    pub b2: i32,
}

impl LatticeOffset {
    pub const ZERO: LatticeOffset = LatticeOffset { b1: 0, b2: 0 };

    pub fn new(b1: i32, b2: i32) -> Self {
        Self { b1, b2 }
    }

    pub fn negated(self) -> Self {
        Self { b1: -self.b1, b2: -self.b2 }
    }

    fn lex_positive(self) -> bool {
        self.b1 > 0 || (self.b1 == 0 && self.b2 > 0)
    }
}

impl fmt::Display for LatticeOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.b1, self.b2)
    }
}

/// One undirected periodic edge class in canonical orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeClass {
    pub tail: usize,
    pub head: usize,
    pub offset: LatticeOffset,
    /// Index into [`PeriodicGraph::weight_classes`].
    pub class: usize,
}

/// Plot-only planar embedding: per-vertex coordinates and lattice basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    pub coords: Vec<[f64; 2]>,
    pub omega1: [f64; 2],
    pub omega2: [f64; 2],
}

impl Embedding {
    /// Position of vertex `v` translated by `offset` cells.
    pub fn position(&self, v: usize, offset: LatticeOffset) -> [f64; 2] {
        let b1 = offset.b1 as f64;
        let b2 = offset.b2 as f64;
        [
            self.coords[v][0] + b1 * self.omega1[0] + b2 * self.omega2[0],
            self.coords[v][1] + b1 * self.omega1[1] + b2 * self.omega2[1],
        ]
    }
}

/// A ℤ²-periodic graph given by its fundamental domain.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicGraph {
    name: String,
    n_vertices: usize,
    edges: Vec<EdgeClass>,
    weight_classes: Vec<String>,
    cyclic_order: Vec<Vec<usize>>,
    embedding: Option<Embedding>,
}

impl PeriodicGraph {
    /// Build and validate a graph from labeled edges.
    ///
    /// Edges may arrive in any orientation and order; they are canonicalized
    /// and sorted, and `cyclic_order` (edge indices relative to the *given*
    /// edge order) is remapped accordingly. Weight-class labels are collected
    /// in sorted order.
    pub fn new(
        name: impl Into<String>,
        n_vertices: usize,
        labeled_edges: Vec<(usize, usize, LatticeOffset, String)>,
        cyclic_order: Vec<Vec<usize>>,
        embedding: Option<Embedding>,
    ) -> Result<Self> {
        let name = name.into();
        if n_vertices == 0 {
            return Err(Error::InvalidArgument("graph must have at least one vertex".into()));
        }
        if let Some(e) = &embedding {
            if e.coords.len() != n_vertices {
                return Err(Error::InvalidArgument(format!(
                    "embedding has {} coordinates for {} vertices",
                    e.coords.len(),
                    n_vertices
                )));
            }
        }

        // canonical orientation
        let mut canonical: Vec<(usize, usize, LatticeOffset, String)> = Vec::with_capacity(labeled_edges.len());
        for (tail, head, offset, label) in labeled_edges {
            if tail >= n_vertices {
                return Err(Error::VertexIndexOutOfRange { index: tail, n_vertices });
            }
            if head >= n_vertices {
                return Err(Error::VertexIndexOutOfRange { index: head, n_vertices });
            }
            if tail == head && offset == LatticeOffset::ZERO {
                return Err(Error::InvalidArgument(format!(
                    "edge at vertex {tail} with zero offset connects a vertex to itself"
                )));
            }
            let flip = tail > head || (tail == head && !offset.lex_positive());
            if flip {
                canonical.push((head, tail, offset.negated(), label));
            } else {
                canonical.push((tail, head, offset, label));
            }
        }

        // sort canonically, remember the permutation for cyclic_order remapping
        let mut order: Vec<usize> = (0..canonical.len()).collect();
        order.sort_by_key(|&i| {
            let (t, h, o, _) = &canonical[i];
            (*t, *h, o.b1, o.b2)
        });
        let mut new_index = vec![0usize; canonical.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let sorted: Vec<(usize, usize, LatticeOffset, String)> =
            order.iter().map(|&i| canonical[i].clone()).collect();

        for w in sorted.windows(2) {
            if (w[0].0, w[0].1, w[0].2) == (w[1].0, w[1].1, w[1].2) {
                return Err(Error::DuplicateEdge {
                    tail: w[0].0,
                    head: w[0].1,
                    b1: w[0].2.b1,
                    b2: w[0].2.b2,
                });
            }
        }

        let mut weight_classes: Vec<String> = sorted.iter().map(|e| e.3.clone()).collect();
        weight_classes.sort();
        weight_classes.dedup();

        let edges: Vec<EdgeClass> = sorted
            .iter()
            .map(|(t, h, o, label)| EdgeClass {
                tail: *t,
                head: *h,
                offset: *o,
                class: weight_classes.binary_search(label).expect("label just collected"),
            })
            .collect();

        // every vertex must be covered
        let mut degree = vec![0usize; n_vertices];
        for e in &edges {
            degree[e.tail] += 1;
            degree[e.head] += 1;
        }
        if let Some(v) = degree.iter().position(|&d| d == 0) {
            return Err(Error::IsolatedVertex(v));
        }

        // remap and validate cyclic order
        if cyclic_order.len() != n_vertices {
            return Err(Error::BadCyclicOrder { vertex: cyclic_order.len().min(n_vertices) });
        }
        let mut remapped: Vec<Vec<usize>> = Vec::with_capacity(n_vertices);
        for (v, list) in cyclic_order.into_iter().enumerate() {
            let mapped: Vec<usize> = list
                .into_iter()
                .map(|i| {
                    if i < new_index.len() {
                        Ok(new_index[i])
                    } else {
                        Err(Error::BadCyclicOrder { vertex: v })
                    }
                })
                .collect::<Result<_>>()?;
            remapped.push(mapped);
        }
        let graph = Self {
            name,
            n_vertices,
            edges,
            weight_classes,
            cyclic_order: remapped,
            embedding,
        };
        for v in 0..n_vertices {
            if !graph.cyclic_order_consistent(v) {
                return Err(Error::BadCyclicOrder { vertex: v });
            }
        }
        Ok(graph)
    }

    /// cyclic_order[v] must list exactly the incidences of v (a class with
    /// tail == head appears twice, once per direction).
    fn cyclic_order_consistent(&self, v: usize) -> bool {
        let mut expected: Vec<usize> = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.tail == v {
                expected.push(i);
            }
            if e.head == v {
                expected.push(i);
            }
        }
        let mut got = self.cyclic_order[v].clone();
        expected.sort_unstable();
        got.sort_unstable();
        expected == got
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[EdgeClass] {
        &self.edges
    }

    pub fn weight_classes(&self) -> &[String] {
        &self.weight_classes
    }

    pub fn class_label(&self, class: usize) -> &str {
        &self.weight_classes[class]
    }

    pub fn cyclic_order(&self) -> &[Vec<usize>] {
        &self.cyclic_order
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    /// Number of edge-ends at `v` (self-connecting classes count twice).
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.tail == v) as usize + (e.head == v) as usize)
            .sum()
    }

    /// μ(v) = sum of weights over the edges incident to `v`, in edge-class
    /// index order (fixed summation order, so the value is reproducible).
    pub fn vertex_weight(&self, w: &WeightAssignment, v: usize) -> Result<f64> {
        if v >= self.n_vertices {
            return Err(Error::VertexIndexOutOfRange { index: v, n_vertices: self.n_vertices });
        }
        w.check_alignment(self)?;
        let mut sum = 0.0;
        for e in &self.edges {
            if e.tail == v {
                sum += w.values[e.class];
            }
            if e.head == v {
                sum += w.values[e.class];
            }
        }
        Ok(sum)
    }

    /// Returns μ when every vertex weight agrees with μ(v₀) within relative
    /// tolerance 1e-12, and `None` otherwise.
    pub fn constant_vertex_weight(&self, w: &WeightAssignment) -> Result<Option<f64>> {
        let mu0 = self.vertex_weight(w, 0)?;
        for v in 1..self.n_vertices {
            let mu = self.vertex_weight(w, v)?;
            if (mu - mu0).abs() > VERTEX_WEIGHT_REL_TOL * mu0.abs() {
                return Ok(None);
            }
        }
        Ok(Some(mu0))
    }

    /// True when the cyclic weight sequences around all vertices coincide up
    /// to cyclic rotation. Rotations only; reflections do not count.
    pub fn is_monomeric(&self, w: &WeightAssignment) -> Result<bool> {
        w.check_alignment(self)?;
        if self.cyclic_order.iter().any(|l| l.is_empty()) {
            return Err(Error::BadCyclicOrder {
                vertex: self.cyclic_order.iter().position(|l| l.is_empty()).unwrap(),
            });
        }
        let seq = |v: usize| -> Vec<f64> {
            self.cyclic_order[v].iter().map(|&e| w.values[self.edges[e].class]).collect()
        };
        let reference = seq(0);
        let scale: f64 = reference.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
        let tol = 1e-12 * scale;
        for v in 1..self.n_vertices {
            let s = seq(v);
            if s.len() != reference.len() {
                return Ok(false);
            }
            let d = s.len();
            let matches_rotation = (0..d).any(|shift| {
                (0..d).all(|i| (s[(i + shift) % d] - reference[i]).abs() <= tol)
            });
            if !matches_rotation {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Affine parametrization of `{γ > 0 : all vertex weights equal μ}`.
    pub fn constant_weight_parametrization(&self, mu: f64) -> Result<WeightSolutionSpace> {
        if !mu.is_finite() || mu <= 0.0 {
            return Err(Error::InvalidArgument(format!("vertex weight must be positive, got {mu}")));
        }
        let m = self.n_vertices;
        let n = self.weight_classes.len();
        let mut a = DMatrix::<f64>::zeros(m, n);
        for e in &self.edges {
            a[(e.tail, e.class)] += 1.0;
            a[(e.head, e.class)] += 1.0;
        }
        let b = DVector::from_element(m, mu);

        // particular solution by least squares
        let svd = a.clone().svd(true, true);
        let sigma_max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
        let particular = svd
            .solve(&b, sigma_max * 1e-12)
            .map_err(|_| Error::InconsistentConstraints { residual: f64::NAN })?;
        let residual = (&a * &particular - &b).amax();
        if residual > 1e-9 * mu {
            return Err(Error::InconsistentConstraints { residual });
        }

        // nullspace from the spectral decomposition of AᵀA
        let ata = a.transpose() * &a;
        let se = nalgebra::SymmetricEigen::new(ata);
        let lambda_max = se.eigenvalues.iter().cloned().fold(0.0f64, f64::max).max(1e-300);
        let mut basis = Vec::new();
        // genuine nullspace eigenvalues of AᵀA come out at ~ε·λmax, far below
        // the smallest nonzero eigenvalue of these small integer matrices
        for (i, &lambda) in se.eigenvalues.iter().enumerate() {
            if lambda <= 1e-10 * lambda_max {
                basis.push(se.eigenvectors.column(i).iter().copied().collect::<Vec<f64>>());
            }
        }
        // deterministic order and sign
        basis.sort_by(|x, y| {
            x.iter().map(|v| ordered_float(*v)).collect::<Vec<_>>().cmp(
                &y.iter().map(|v| ordered_float(*v)).collect::<Vec<_>>(),
            )
        });
        for vec in &mut basis {
            if let Some(first) = vec.iter().find(|x| x.abs() > 1e-9) {
                if *first < 0.0 {
                    vec.iter_mut().for_each(|x| *x = -*x);
                }
            }
        }

        Ok(WeightSolutionSpace {
            labels: self.weight_classes.clone(),
            mu,
            particular: particular.iter().copied().collect(),
            basis,
        })
    }
}

fn ordered_float(x: f64) -> i64 {
    // total order adequate for deterministic sorting of basis vectors
    (x * 1e12).round() as i64
}

/// Strictly positive edge weights, one per weight class of a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightAssignment {
    values: Vec<f64>,
}

impl WeightAssignment {
    pub fn from_values(graph: &PeriodicGraph, values: Vec<f64>) -> Result<Self> {
        if values.len() != graph.weight_classes().len() {
            return Err(Error::InvalidArgument(format!(
                "{} weights given for {} classes",
                values.len(),
                graph.weight_classes().len()
            )));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::NonPositiveWeight {
                    class: graph.class_label(i).to_string(),
                    value: v,
                });
            }
        }
        Ok(Self { values })
    }

    pub fn from_map(graph: &PeriodicGraph, map: &BTreeMap<String, f64>) -> Result<Self> {
        for label in map.keys() {
            if !graph.weight_classes().contains(label) {
                return Err(Error::UnexpectedWeightClass(label.clone()));
            }
        }
        let values = graph
            .weight_classes()
            .iter()
            .map(|label| map.get(label).copied().ok_or_else(|| Error::MissingWeightClass(label.clone())))
            .collect::<Result<Vec<f64>>>()?;
        Self::from_values(graph, values)
    }

    pub fn uniform(graph: &PeriodicGraph, value: f64) -> Result<Self> {
        Self::from_values(graph, vec![value; graph.weight_classes().len()])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, class: usize) -> f64 {
        self.values[class]
    }

    pub fn to_map(&self, graph: &PeriodicGraph) -> BTreeMap<String, f64> {
        graph
            .weight_classes()
            .iter()
            .cloned()
            .zip(self.values.iter().copied())
            .collect()
    }

    fn check_alignment(&self, graph: &PeriodicGraph) -> Result<()> {
        if self.values.len() != graph.weight_classes().len() {
            return Err(Error::InvalidArgument(format!(
                "weight assignment has {} values for {} classes",
                self.values.len(),
                graph.weight_classes().len()
            )));
        }
        Ok(())
    }
}

/// Breathing weights on the Kagome built-in: α on the down-triangle classes
/// (γ₂, γ₄, γ₆) and β on the up-triangle classes (γ₁, γ₃, γ₅); the vertex
/// weight is 2(α + β).
pub fn kagome_breathing_weights(graph: &PeriodicGraph, alpha: f64, beta: f64) -> Result<WeightAssignment> {
    WeightAssignment::from_values(graph, vec![beta, alpha, beta, alpha, beta, alpha])
}

/// Monomeric weights on the Super-Kagome built-in: α on the six triangle
/// classes (γ₁…γ₆) and β on the dodecagon bridges (γ₇, γ₈, γ₉); the vertex
/// weight is 2α + β.
pub fn super_kagome_monomeric_weights(graph: &PeriodicGraph, alpha: f64, beta: f64) -> Result<WeightAssignment> {
    WeightAssignment::from_values(graph, vec![alpha, alpha, alpha, alpha, alpha, alpha, beta, beta, beta])
}

/// Expand reduced Super-Kagome weights (γ₁, γ₂, γ₃, γ₇, γ₈, γ₉) to the full
/// nine classes using the constant-vertex-weight identities γ₄ = γ₁,
/// γ₅ = γ₂, γ₆ = γ₃.
pub fn super_kagome_weights_from_reduced(graph: &PeriodicGraph, reduced: [f64; 6]) -> Result<WeightAssignment> {
    let [g1, g2, g3, g7, g8, g9] = reduced;
    WeightAssignment::from_values(graph, vec![g1, g2, g3, g1, g2, g3, g7, g8, g9])
}

/// Affine description of the constant-vertex-weight solution set
/// `{γ : Σ_{e ∋ v} γ_e = μ for all v}`, with positivity handled by
/// rejection sampling.
#[derive(Clone, Debug)]
pub struct WeightSolutionSpace {
    pub labels: Vec<String>,
    pub mu: f64,
    pub particular: Vec<f64>,
    /// Orthonormal basis of the homogeneous solution space.
    pub basis: Vec<Vec<f64>>,
}

impl WeightSolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// particular + Σ cᵢ · basisᵢ (no positivity check).
    pub fn point(&self, coefficients: &[f64]) -> Vec<f64> {
        assert_eq!(coefficients.len(), self.basis.len());
        let mut out = self.particular.clone();
        for (c, b) in coefficients.iter().zip(&self.basis) {
            for (o, v) in out.iter_mut().zip(b) {
                *o += c * v;
            }
        }
        out
    }

    /// Rejection-sample a strictly positive point. Coefficients are drawn
    /// uniformly from [−spread, spread]; points with any weight below
    /// `1e-6·μ` are rejected.
    pub fn sample_positive(&self, rng: &mut impl rand::Rng, spread: f64, max_tries: usize) -> Option<Vec<f64>> {
        let floor = 1e-6 * self.mu;
        for _ in 0..max_tries {
            let coeffs: Vec<f64> = (0..self.basis.len())
                .map(|_| rng.random_range(-spread..spread))
                .collect();
            let point = self.point(&coeffs);
            if point.iter().all(|&x| x > floor) {
                return Some(point);
            }
        }
        None
    }

    /// Largest violation of the vertex-weight equations at `point`.
    pub fn residual(&self, graph: &PeriodicGraph, point: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for v in 0..graph.n_vertices() {
            let mut sum = 0.0;
            for e in graph.edges() {
                if e.tail == v {
                    sum += point[e.class];
                }
                if e.head == v {
                    sum += point[e.class];
                }
            }
            worst = worst.max((sum - self.mu).abs());
        }
        worst
    }
}

/// Look up a built-in tiling by name (`kagome`, `super_kagome`, `square`,
/// `triangular`, `hexagonal`, `3344`, `33434`, `488`, `3464`, `4612`, `3336`).
pub fn builtin(name: &str) -> Result<PeriodicGraph> {
    Tiling::from_name(name).map(|t| t.build())
}

// ---------------------------------------------------------------------------
// file format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GraphFile {
    name: String,
    vertices: usize,
    edges: Vec<EdgeFile>,
    cyclic_order: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    embedding: Option<Embedding>,
}

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    tail: usize,
    head: usize,
    offset: [i32; 2],
    class: String,
}

/// Serialize a graph to canonical JSON (edges in canonical orientation and
/// canonical sort order).
pub fn graph_to_json(graph: &PeriodicGraph) -> String {
    let file = GraphFile {
        name: graph.name().to_string(),
        vertices: graph.n_vertices(),
        edges: graph
            .edges()
            .iter()
            .map(|e| EdgeFile {
                tail: e.tail,
                head: e.head,
                offset: [e.offset.b1, e.offset.b2],
                class: graph.class_label(e.class).to_string(),
            })
            .collect(),
        cyclic_order: graph.cyclic_order().to_vec(),
        embedding: graph.embedding().cloned(),
    };
    serde_json::to_string_pretty(&file).expect("graph serialization cannot fail")
}

pub fn graph_from_json(text: &str) -> Result<PeriodicGraph> {
    let file: GraphFile = serde_json::from_str(text)?;
    let edges = file
        .edges
        .into_iter()
        .map(|e| (e.tail, e.head, LatticeOffset::new(e.offset[0], e.offset[1]), e.class))
        .collect();
    PeriodicGraph::new(file.name, file.vertices, edges, file.cyclic_order, file.embedding)
}

pub fn save_graph(graph: &PeriodicGraph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, graph_to_json(graph))?;
    Ok(())
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<PeriodicGraph> {
    let text = std::fs::read_to_string(path)?;
    graph_from_json(&text)
}

/// Weight files are a single JSON object mapping class label → positive value.
pub fn weights_to_json(graph: &PeriodicGraph, weights: &WeightAssignment) -> String {
    serde_json::to_string_pretty(&weights.to_map(graph)).expect("weight serialization cannot fail")
}

pub fn weights_from_json(graph: &PeriodicGraph, text: &str) -> Result<WeightAssignment> {
    let map: BTreeMap<String, f64> = serde_json::from_str(text)?;
    WeightAssignment::from_map(graph, &map)
}

pub fn save_weights(graph: &PeriodicGraph, weights: &WeightAssignment, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, weights_to_json(graph, weights))?;
    Ok(())
}

pub fn load_weights(graph: &PeriodicGraph, path: impl AsRef<Path>) -> Result<WeightAssignment> {
    let text = std::fs::read_to_string(path)?;
    weights_from_json(graph, &text)
}
