//! The eleven Archimedean tilings as built-in periodic graphs.
//!
//! Every tiling is built from its standard unit-edge planar embedding: the
//! fundamental-domain coordinates plus the two lattice vectors determine the
//! edge classes (all vertex pairs at distance 1, offsets in {−1, 0, 1}²) and
//! the counterclockwise cyclic order of edges around each vertex.
//!
//! For the Kagome and Super-Kagome lattices the edge classes and their
//! weight-class labels γ₁…γ₆ / γ₁…γ₉ are pinned explicitly so the Floquet
//! matrices come out entry-for-entry in the standard form; the remaining nine
//! tilings get automatically enumerated edges with generated labels and are
//! checked by degree regularity.

use super::{Embedding, LatticeOffset, PeriodicGraph};
use crate::{Error, Result};

const SQRT3: f64 = 1.732050807568877293527446341505872367_f64;

/// The eleven Archimedean (vertex-transitive, edge-to-edge) tilings.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tiling {
    /// (4⁴)
    Square,
    /// (3⁶)
    Triangular,
    /// (6³)
    Hexagonal,
    /// (3.6)², one flat band for monomeric weights
    Kagome,
    /// (3.12²), two flat bands for monomeric weights
    SuperKagome,
    /// (3³.4²)
    ElongatedTriangular,
    /// (3².4.3.4)
    SnubSquare,
    /// (4.8²)
    TruncatedSquare,
    /// (3.4.6.4)
    Rhombitrihexagonal,
    /// (4.6.12)
    TruncatedTrihexagonal,
    /// (3⁴.6)
    SnubTrihexagonal,
}

impl Tiling {
    pub const ALL: [Tiling; 11] = [
        Tiling::Square,
        Tiling::Triangular,
        Tiling::Hexagonal,
        Tiling::Kagome,
        Tiling::SuperKagome,
        Tiling::ElongatedTriangular,
        Tiling::SnubSquare,
        Tiling::TruncatedSquare,
        Tiling::Rhombitrihexagonal,
        Tiling::TruncatedTrihexagonal,
        Tiling::SnubTrihexagonal,
    ];

    /// The nine tilings without flat bands (every built-in except Kagome and
    /// Super-Kagome).
    pub const WITHOUT_FLAT_BANDS: [Tiling; 9] = [
        Tiling::Square,
        Tiling::Triangular,
        Tiling::Hexagonal,
        Tiling::ElongatedTriangular,
        Tiling::SnubSquare,
        Tiling::TruncatedSquare,
        Tiling::Rhombitrihexagonal,
        Tiling::TruncatedTrihexagonal,
        Tiling::SnubTrihexagonal,
    ];

    pub fn from_name(name: &str) -> Result<Tiling> {
        let normalized = name.trim().to_ascii_lowercase().replace('-', "_");
        let t = match normalized.as_str() {
            "kagome" => Tiling::Kagome,
            "super_kagome" | "superkagome" => Tiling::SuperKagome,
            "square" | "44" => Tiling::Square,
            "triangular" | "36" => Tiling::Triangular,
            "hexagonal" | "63" => Tiling::Hexagonal,
            "3344" | "elongated_triangular" => Tiling::ElongatedTriangular,
            "33434" | "snub_square" => Tiling::SnubSquare,
            "488" | "truncated_square" => Tiling::TruncatedSquare,
            "3464" | "rhombitrihexagonal" => Tiling::Rhombitrihexagonal,
            "4612" | "truncated_trihexagonal" => Tiling::TruncatedTrihexagonal,
            "3336" | "snub_trihexagonal" => Tiling::SnubTrihexagonal,
            _ => return Err(Error::UnknownLattice(name.to_string())),
        };
        Ok(t)
    }

    pub fn name(self) -> &'static str {
        match self {
            Tiling::Square => "square",
            Tiling::Triangular => "triangular",
            Tiling::Hexagonal => "hexagonal",
            Tiling::Kagome => "kagome",
            Tiling::SuperKagome => "super_kagome",
            Tiling::ElongatedTriangular => "3344",
            Tiling::SnubSquare => "33434",
            Tiling::TruncatedSquare => "488",
            Tiling::Rhombitrihexagonal => "3464",
            Tiling::TruncatedTrihexagonal => "4612",
            Tiling::SnubTrihexagonal => "3336",
        }
    }

    /// Common vertex degree of the tiling.
    pub fn degree(self) -> usize {
        match self {
            Tiling::Square | Tiling::Kagome | Tiling::Rhombitrihexagonal => 4,
            Tiling::Triangular => 6,
            Tiling::Hexagonal | Tiling::SuperKagome | Tiling::TruncatedSquare | Tiling::TruncatedTrihexagonal => 3,
            Tiling::ElongatedTriangular | Tiling::SnubSquare | Tiling::SnubTrihexagonal => 5,
        }
    }

    /// The two lattices whose weighted Laplacians can carry flat bands.
    pub fn has_flat_band_weights(self) -> bool {
        matches!(self, Tiling::Kagome | Tiling::SuperKagome)
    }

    pub fn build(self) -> PeriodicGraph {
        match self {
            Tiling::Kagome => kagome(),
            Tiling::SuperKagome => super_kagome(),
            Tiling::Square => auto(
                self.name(),
                vec![[0.0, 0.0]],
                [1.0, 0.0],
                [0.0, 1.0],
            ),
            Tiling::Triangular => auto(
                self.name(),
                vec![[0.0, 0.0]],
                [1.0, 0.0],
                [0.5, SQRT3 / 2.0],
            ),
            Tiling::Hexagonal => auto(
                self.name(),
                vec![[0.0, 0.0], [0.0, 1.0]],
                [SQRT3, 0.0],
                [SQRT3 / 2.0, 1.5],
            ),
            Tiling::ElongatedTriangular => auto(
                self.name(),
                vec![[0.0, 0.0], [0.0, 1.0]],
                [1.0, 0.0],
                [0.5, 1.0 + SQRT3 / 2.0],
            ),
            Tiling::SnubSquare => {
                let r = 0.5f64.sqrt();
                let a = (1.0 + SQRT3) * r;
                let coords = (0..4)
                    .map(|k| {
                        let phi = (60.0 + 90.0 * k as f64).to_radians();
                        [r * phi.cos(), r * phi.sin()]
                    })
                    .collect();
                auto(self.name(), coords, [a, 0.0], [0.0, a])
            }
            Tiling::TruncatedSquare => {
                let s = 0.5f64.sqrt();
                let a = 1.0 + 2.0f64.sqrt();
                auto(
                    self.name(),
                    vec![[s, 0.0], [0.0, s], [-s, 0.0], [0.0, -s]],
                    [a, 0.0],
                    [0.0, a],
                )
            }
            Tiling::Rhombitrihexagonal => {
                let a = 1.0 + SQRT3;
                let coords = (0..6)
                    .map(|k| {
                        let phi = (60.0 * k as f64).to_radians();
                        [phi.cos(), phi.sin()]
                    })
                    .collect();
                auto(self.name(), coords, [a * SQRT3 / 2.0, a * 0.5], [0.0, a])
            }
            Tiling::TruncatedTrihexagonal => {
                let r = 0.5 / (15.0f64).to_radians().sin();
                let a = 3.0 + SQRT3;
                let coords = (0..12)
                    .map(|k| {
                        let phi = (15.0 + 30.0 * k as f64).to_radians();
                        [r * phi.cos(), r * phi.sin()]
                    })
                    .collect();
                auto(self.name(), coords, [a, 0.0], [a * 0.5, a * SQRT3 / 2.0])
            }
            Tiling::SnubTrihexagonal => {
                // triangular lattice with every seventh site removed; the
                // removed sites form the √7 sublattice spanned by 2t₁+t₂ and
                // −t₁+3t₂ and sit at the hexagon centers
                let t = |p: f64, q: f64| [p + 0.5 * q, q * SQRT3 / 2.0];
                let coords = vec![t(1.0, 0.0), t(2.0, 0.0), t(0.0, 1.0), t(1.0, 1.0), t(0.0, 2.0), t(1.0, 2.0)];
                auto(self.name(), coords, t(2.0, 1.0), t(-1.0, 3.0))
            }
        }
    }
}

/// Kagome lattice, fundamental domain of three vertices around a hexagon.
///
/// Weight classes follow the standard picture: γ₂, γ₄, γ₆ sit on
/// downward-pointing triangles and γ₁, γ₃, γ₅ on upward-pointing ones, so
/// the Floquet matrix has entries (1,2) = γ₃ + e^{iθ₁}γ₆,
/// (1,3) = e^{iθ₁}γ₄ + e^{iθ₂}γ₁ and (2,3) = γ₂ + e^{iθ₂}γ₅.
fn kagome() -> PeriodicGraph {
    let coords = vec![[0.5, SQRT3 / 2.0], [-0.5, SQRT3 / 2.0], [-1.0, 0.0]];
    let omega1 = [2.0, 0.0];
    let omega2 = [1.0, SQRT3];
    let edges = vec![
        (0, 1, LatticeOffset::new(0, 0), "g3".to_string()),
        (0, 1, LatticeOffset::new(1, 0), "g6".to_string()),
        (0, 2, LatticeOffset::new(0, 1), "g1".to_string()),
        (0, 2, LatticeOffset::new(1, 0), "g4".to_string()),
        (1, 2, LatticeOffset::new(0, 0), "g2".to_string()),
        (1, 2, LatticeOffset::new(0, 1), "g5".to_string()),
    ];
    from_edges_and_embedding("kagome", 3, edges, coords, omega1, omega2)
}

/// Super-Kagome lattice (3.12²), six vertices forming an up and a down
/// triangle joined by the γ₇ bridge; γ₈ and γ₉ bridge into neighboring cells.
///
/// The basis vector ω₂ is taken pointing down-right (the negative of the
/// habitual drawing) so that the two phase-carrying bridges enter the Floquet
/// matrix as e^{−iθ₂}γ₉ and e^{iθ₁}γ₈; with this choice the mixed phase terms
/// of the characteristic polynomial combine to cos(θ₁ + θ₂) and the
/// closed-form dispersion holds pointwise in θ, not only as a band union.
fn super_kagome() -> PeriodicGraph {
    let y = 1.0 + SQRT3 / 2.0;
    let coords = vec![
        [-0.5, y],
        [0.5, y],
        [0.0, 1.0],
        [0.0, 0.0],
        [0.5, -SQRT3 / 2.0],
        [-0.5, -SQRT3 / 2.0],
    ];
    let omega1 = [1.0 + SQRT3 / 2.0, 1.5 + SQRT3];
    let omega2 = [1.0 + SQRT3 / 2.0, -(1.5 + SQRT3)];
    let edges = vec![
        (0, 1, LatticeOffset::new(0, 0), "g4".to_string()),
        (0, 2, LatticeOffset::new(0, 0), "g6".to_string()),
        (0, 4, LatticeOffset::new(0, -1), "g9".to_string()),
        (1, 2, LatticeOffset::new(0, 0), "g5".to_string()),
        (1, 5, LatticeOffset::new(1, 0), "g8".to_string()),
        (2, 3, LatticeOffset::new(0, 0), "g7".to_string()),
        (3, 4, LatticeOffset::new(0, 0), "g3".to_string()),
        (3, 5, LatticeOffset::new(0, 0), "g2".to_string()),
        (4, 5, LatticeOffset::new(0, 0), "g1".to_string()),
    ];
    from_edges_and_embedding("super_kagome", 6, edges, coords, omega1, omega2)
}

/// Enumerate the unit-distance edge classes of an embedding and build the
/// graph with generated labels.
fn auto(name: &str, coords: Vec<[f64; 2]>, omega1: [f64; 2], omega2: [f64; 2]) -> PeriodicGraph {
    let raw = unit_distance_edges(&coords, omega1, omega2);
    let width = if raw.len() > 9 { 2 } else { 1 };
    let edges: Vec<(usize, usize, LatticeOffset, String)> = raw
        .into_iter()
        .enumerate()
        .map(|(i, (t, h, o))| (t, h, o, format!("g{:0width$}", i + 1)))
        .collect();
    from_edges_and_embedding(name, coords.len(), edges, coords, omega1, omega2)
}

fn from_edges_and_embedding(
    name: &str,
    n_vertices: usize,
    edges: Vec<(usize, usize, LatticeOffset, String)>,
    coords: Vec<[f64; 2]>,
    omega1: [f64; 2],
    omega2: [f64; 2],
) -> PeriodicGraph {
    let embedding = Embedding { coords, omega1, omega2 };
    // canonical sort must happen before cyclic order is derived so the
    // indices line up with the stored edge order
    let mut sorted = edges;
    sorted.sort_by_key(|(t, h, o, _)| (*t, *h, o.b1, o.b2));
    let cyclic = cyclic_order_from_embedding(n_vertices, &sorted, &embedding);
    PeriodicGraph::new(name, n_vertices, sorted, cyclic, Some(embedding))
        .expect("built-in tiling data is consistent")
}

/// All canonical (tail ≤ head) vertex pairs at distance 1, offsets in
/// {−1, 0, 1}². Sorted canonically.
fn unit_distance_edges(
    coords: &[[f64; 2]],
    omega1: [f64; 2],
    omega2: [f64; 2],
) -> Vec<(usize, usize, LatticeOffset)> {
    let n = coords.len();
    let mut out = Vec::new();
    for tail in 0..n {
        for head in tail..n {
            for b1 in -1..=1 {
                for b2 in -1..=1 {
                    let offset = LatticeOffset::new(b1, b2);
                    if tail == head && !offset.lex_positive() {
                        continue;
                    }
                    let dx = coords[head][0] + b1 as f64 * omega1[0] + b2 as f64 * omega2[0] - coords[tail][0];
                    let dy = coords[head][1] + b1 as f64 * omega1[1] + b2 as f64 * omega2[1] - coords[tail][1];
                    if (dx.hypot(dy) - 1.0).abs() < 1e-6 {
                        out.push((tail, head, offset));
                    }
                }
            }
        }
    }
    out.sort_by_key(|(t, h, o)| (*t, *h, o.b1, o.b2));
    out
}

/// Counterclockwise order of edge incidences around each vertex, derived
/// from the embedding. A self-connecting class appears once per direction.
fn cyclic_order_from_embedding(
    n_vertices: usize,
    edges: &[(usize, usize, LatticeOffset, String)],
    embedding: &Embedding,
) -> Vec<Vec<usize>> {
    let mut order = Vec::with_capacity(n_vertices);
    for v in 0..n_vertices {
        let mut incident: Vec<(f64, usize)> = Vec::new();
        for (i, (tail, head, offset, _)) in edges.iter().enumerate() {
            if *tail == v {
                let p = embedding.position(*head, *offset);
                let base = embedding.coords[v];
                incident.push(((p[1] - base[1]).atan2(p[0] - base[0]), i));
            }
            if *head == v {
                let p = embedding.position(*tail, offset.negated());
                let base = embedding.coords[v];
                incident.push(((p[1] - base[1]).atan2(p[0] - base[0]), i));
            }
        }
        incident.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        order.push(incident.into_iter().map(|(_, i)| i).collect());
    }
    order
}
