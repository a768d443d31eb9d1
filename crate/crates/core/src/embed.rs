//! The universal embedding of a graph inverse semigroup into a polycyclic
//! monoid, its closed form, the generator-product route it is checked
//! against, and the brute-force verification sweep.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::expr::format_element;
use crate::gis::{self, GisElement, GisGenerator};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::poly::{self, PolyElement, Word};
use crate::report::CheckStatus;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("vertex injection is not injective (index {0} repeats)")]
    VertexIndexRepeats(u32),
    #[error("edge injection is not injective (index {0} repeats)")]
    EdgeIndexRepeats(u32),
    #[error("assigned index {index} is not below the arity {arity}")]
    IndexOutOfRange { index: u32, arity: u32 },
    #[error("expected {expected} vertex indices and {expected_edges} edge indices")]
    WrongLengths {
        expected: usize,
        expected_edges: usize,
    },
}

/// Injections of vertices and edges into generator indices, with the
/// target arity.
#[derive(Debug, Clone)]
pub struct EmbeddingSpec {
    vertex_index: Vec<u32>,
    edge_index: Vec<u32>,
    arity: u32,
}

impl EmbeddingSpec {
    /// The canonical choice: vertices take `0..|E0|` in enumeration order,
    /// edges take `|E0|..|E0|+|E1|`, and the arity is their sum. The two
    /// ranges are disjoint, which makes images decodable.
    pub fn canonical(g: &Graph) -> EmbeddingSpec {
        let nv = g.vertex_count() as u32;
        EmbeddingSpec {
            vertex_index: (0..nv).collect(),
            edge_index: (0..g.edge_count() as u32).map(|j| nv + j).collect(),
            arity: nv + g.edge_count() as u32,
        }
    }

    /// Builds a spec from explicit injections, validating injectivity and
    /// the arity bound.
    pub fn new(
        g: &Graph,
        vertex_index: Vec<u32>,
        edge_index: Vec<u32>,
        arity: u32,
    ) -> Result<EmbeddingSpec, EmbedError> {
        if vertex_index.len() != g.vertex_count() || edge_index.len() != g.edge_count() {
            return Err(EmbedError::WrongLengths {
                expected: g.vertex_count(),
                expected_edges: g.edge_count(),
            });
        }
        for &idx in vertex_index.iter().chain(edge_index.iter()) {
            if idx >= arity {
                return Err(EmbedError::IndexOutOfRange { index: idx, arity });
            }
        }
        let mut seen = HashMap::new();
        for (i, &idx) in vertex_index.iter().enumerate() {
            if seen.insert(idx, i).is_some() {
                return Err(EmbedError::VertexIndexRepeats(idx));
            }
        }
        let mut seen = HashMap::new();
        for (j, &idx) in edge_index.iter().enumerate() {
            if seen.insert(idx, j).is_some() {
                return Err(EmbedError::EdgeIndexRepeats(idx));
            }
        }
        Ok(EmbeddingSpec {
            vertex_index,
            edge_index,
            arity,
        })
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn vertex_index(&self, v: VertexId) -> u32 {
        self.vertex_index[v.index()]
    }

    pub fn edge_index(&self, e: EdgeId) -> u32 {
        self.edge_index[e.index()]
    }

    fn decode_vertex(&self, idx: u32) -> Option<VertexId> {
        self.vertex_index
            .iter()
            .position(|&i| i == idx)
            .map(|i| VertexId(i as u32))
    }

    fn decode_edge(&self, idx: u32) -> Option<EdgeId> {
        self.edge_index
            .iter()
            .position(|&i| i == idx)
            .map(|j| EdgeId(j as u32))
    }
}

/// Image of a single generator: a vertex `a` maps to `g(a) g(a)^-1`, an
/// edge `e` to `g(s(e)) h(e) g(r(e))^-1`, and `e^-1` to the inverse pair.
pub fn embed_generator(g: &Graph, spec: &EmbeddingSpec, gen: GisGenerator) -> PolyElement {
    match gen {
        GisGenerator::Vertex(a) => {
            let idx = spec.vertex_index(a);
            PolyElement::pair(vec![idx], vec![idx])
        }
        GisGenerator::Edge(e) => PolyElement::pair(
            vec![spec.vertex_index(g.src(e)), spec.edge_index(e)],
            vec![spec.vertex_index(g.dst(e))],
        ),
        GisGenerator::EdgeInverse(e) => {
            poly::invert(&embed_generator(g, spec, GisGenerator::Edge(e)))
        }
    }
}

/// The word a path maps to: the source's vertex index followed by the edge
/// indices, so `|word| = |path| + 1`.
pub fn path_word(g: &Graph, spec: &EmbeddingSpec, p: &Path) -> Word {
    debug_assert!(g.is_valid_path(p));
    let mut w = Vec::with_capacity(p.len() + 1);
    w.push(spec.vertex_index(p.start()));
    w.extend(p.edges().iter().map(|&e| spec.edge_index(e)));
    w
}

/// Closed form of the embedding: `u v^-1` maps to the pair of path words.
pub fn embed_element(g: &Graph, spec: &EmbeddingSpec, x: &GisElement) -> PolyElement {
    match x {
        GisElement::Zero => PolyElement::Zero,
        GisElement::NonZero { u, v } => {
            PolyElement::pair(path_word(g, spec, u), path_word(g, spec, v))
        }
    }
}

/// The generator-product route: multiply the images of `u`'s edges and the
/// inverses of `v`'s edges in the polycyclic monoid. Two vertex paths give
/// the image of the common vertex. Serves as the independent cross-check
/// of the closed form.
pub fn embed_element_via_generators(
    g: &Graph,
    spec: &EmbeddingSpec,
    x: &GisElement,
) -> PolyElement {
    let GisElement::NonZero { u, v } = x else {
        return PolyElement::Zero;
    };
    let mut factors: Vec<PolyElement> = Vec::with_capacity(u.len() + v.len());
    factors.extend(
        u.edges()
            .iter()
            .map(|&e| embed_generator(g, spec, GisGenerator::Edge(e))),
    );
    factors.extend(
        v.edges()
            .iter()
            .rev()
            .map(|&e| embed_generator(g, spec, GisGenerator::EdgeInverse(e))),
    );
    if factors.is_empty() {
        // u = v is a vertex path.
        return embed_generator(g, spec, GisGenerator::Vertex(u.start()));
    }
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = poly::multiply(&acc, f);
    }
    acc
}

/// Recovers the path a word decodes to, if any: the first letter must be a
/// vertex index and the rest a composable chain of edge indices.
pub fn decode_word(g: &Graph, spec: &EmbeddingSpec, w: &[u32]) -> Option<Path> {
    let (&first, rest) = w.split_first()?;
    let start = spec.decode_vertex(first)?;
    let mut at = start;
    let mut edges = Vec::with_capacity(rest.len());
    for &idx in rest {
        let e = spec.decode_edge(idx)?;
        if g.src(e) != at {
            return None;
        }
        at = g.dst(e);
        edges.push(e);
    }
    Some(if edges.is_empty() {
        Path::vertex(start)
    } else {
        g.path_from_edges(&edges).expect("decoded chain composes")
    })
}

/// Composite embedding into P_2: the closed form followed by the
/// prefix-code substitution.
pub fn embed_element_p2(g: &Graph, spec: &EmbeddingSpec, x: &GisElement) -> PolyElement {
    poly::embed_into_p2(&embed_element(g, spec, x))
}

/// Tallies of the product-formula branches hit by the multiplicativity
/// sweep.
#[derive(Debug, Clone, Copy, Default, Serialize, PartialEq, Eq)]
pub struct CaseHistogram {
    #[serde(rename = "1")]
    pub case1: u64,
    #[serde(rename = "2")]
    pub case2: u64,
    #[serde(rename = "3")]
    pub case3: u64,
    #[serde(rename = "4")]
    pub case4: u64,
}

impl CaseHistogram {
    fn add(&mut self, case: Option<u8>) {
        match case {
            Some(1) => self.case1 += 1,
            Some(2) => self.case2 += 1,
            Some(3) => self.case3 += 1,
            Some(4) => self.case4 += 1,
            _ => {}
        }
    }

    fn merge(mut self, other: CaseHistogram) -> CaseHistogram {
        self.case1 += other.case1;
        self.case2 += other.case2;
        self.case3 += other.case3;
        self.case4 += other.case4;
        self
    }

    pub fn all_hit(&self) -> bool {
        self.case1 > 0 && self.case2 > 0 && self.case3 > 0 && self.case4 > 0
    }
}

/// Outcome of the exhaustive embedding verification at a truncation bound.
#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingReport {
    pub graph: String,
    pub arity: u32,
    pub bound: usize,
    pub pairs_checked: u64,
    pub case_histogram: CaseHistogram,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "embedding of {} into the polycyclic monoid of arity {} \
             (finite stand-in: an index inclusion carries it into any larger arity)\n",
            self.graph, self.arity
        );
        out.push_str(&format!(
            "bound {}: {} ordered pairs checked; product cases 1/2/3/4 hit \
             {}/{}/{}/{} times\n",
            self.bound,
            self.pairs_checked,
            self.case_histogram.case1,
            self.case_histogram.case2,
            self.case_histogram.case3,
            self.case_histogram.case4,
        ));
        match &self.counterexample {
            None => out.push_str("status: pass\n"),
            Some(w) => out.push_str(&format!("status: FAIL [{w}]\n")),
        }
        out
    }
}

/// Checks, over all elements with path lengths at most `bound`:
/// non-zero elements keep non-zero images, the map is injective, it
/// commutes with inversion, the closed form equals the generator-product
/// route pointwise, and it is multiplicative on every ordered pair. The
/// first counterexample found is reported verbatim.
pub fn verify_embedding(
    g: &Graph,
    spec: &EmbeddingSpec,
    label: &str,
    bound: usize,
) -> EmbeddingReport {
    let elems = gis::enumerate_elements(g, bound);
    let images: Vec<PolyElement> = elems.iter().map(|x| embed_element(g, spec, x)).collect();

    let mut counterexample: Option<String> = None;
    let mut note = |c: Option<String>| {
        if counterexample.is_none() {
            counterexample = c;
        }
    };

    for (x, fx) in elems.iter().zip(&images) {
        if !x.is_zero() && fx.is_zero() {
            note(Some(format!("x = {} has zero image", format_element(g, x))));
        }
        if embed_element_via_generators(g, spec, x) != *fx {
            note(Some(format!(
                "closed form and generator product differ at x = {}",
                format_element(g, x)
            )));
        }
        if embed_element(g, spec, &gis::invert(x)) != poly::invert(fx) {
            note(Some(format!(
                "image of the inverse differs at x = {}",
                format_element(g, x)
            )));
        }
    }

    let mut seen: HashMap<&PolyElement, usize> = HashMap::new();
    for (i, fx) in images.iter().enumerate() {
        if let Some(&j) = seen.get(fx) {
            note(Some(format!(
                "not injective: {} and {} share the image {}",
                format_element(g, &elems[j]),
                format_element(g, &elems[i]),
                poly::format_element(fx)
            )));
        } else {
            seen.insert(fx, i);
        }
    }

    // Multiplicativity over all ordered pairs, tallying the formula branch
    // of every non-zero pair.
    let (histogram, first_bad) = (0..elems.len())
        .into_par_iter()
        .map(|i| {
            let mut hist = CaseHistogram::default();
            let mut bad: Option<(usize, usize)> = None;
            for j in 0..elems.len() {
                let product = gis::multiply(&elems[i], &elems[j]);
                hist.add(gis::multiplication_case(&elems[i], &elems[j]));
                if embed_element(g, spec, &product) != poly::multiply(&images[i], &images[j])
                    && bad.is_none()
                {
                    bad = Some((i, j));
                }
            }
            (hist, bad)
        })
        .reduce(
            || (CaseHistogram::default(), None),
            |(h1, b1), (h2, b2)| (h1.merge(h2), b1.or(b2)),
        );
    if let Some((i, j)) = first_bad {
        note(Some(format!(
            "not multiplicative at x = {}, y = {}: F(x)F(y) = {} but F(xy) = {}",
            format_element(g, &elems[i]),
            format_element(g, &elems[j]),
            poly::format_element(&poly::multiply(&images[i], &images[j])),
            poly::format_element(&embed_element(
                g,
                spec,
                &gis::multiply(&elems[i], &elems[j])
            )),
        )));
    }

    let status = if counterexample.is_none() {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    EmbeddingReport {
        graph: label.to_string(),
        arity: spec.arity(),
        bound,
        pairs_checked: (elems.len() * elems.len()) as u64,
        case_histogram: histogram,
        status,
        counterexample,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;

    fn g1() -> Graph {
        Graph::new(
            ["v1".to_string(), "v2".to_string()],
            [
                ("e".to_string(), "v1".to_string(), "v2".to_string()),
                ("f".to_string(), "v1".to_string(), "v2".to_string()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn canonical_spec_assignment() {
        let g = g1();
        let spec = EmbeddingSpec::canonical(&g);
        assert_eq!(spec.arity(), 4);
        assert_eq!(spec.vertex_index(g.vertex("v1").unwrap()), 0);
        assert_eq!(spec.vertex_index(g.vertex("v2").unwrap()), 1);
        assert_eq!(spec.edge_index(g.edge("e").unwrap()), 2);
        assert_eq!(spec.edge_index(g.edge("f").unwrap()), 3);

        let lonely = Graph::new(["v".to_string()], []).unwrap();
        assert_eq!(EmbeddingSpec::canonical(&lonely).arity(), 1);
        assert_eq!(EmbeddingSpec::canonical(&Graph::rose(2)).arity(), 3);
    }

    #[test]
    fn spec_validation() {
        let g = g1();
        assert!(matches!(
            EmbeddingSpec::new(&g, vec![0, 0], vec![1, 2], 4),
            Err(EmbedError::VertexIndexRepeats(0))
        ));
        assert!(matches!(
            EmbeddingSpec::new(&g, vec![0, 1], vec![2, 9], 4),
            Err(EmbedError::IndexOutOfRange { index: 9, .. })
        ));
        assert!(EmbeddingSpec::new(&g, vec![3, 1], vec![2, 0], 4).is_ok());
    }

    #[test]
    fn generator_images() {
        let g = g1();
        let spec = EmbeddingSpec::canonical(&g);
        let v1 = g.vertex("v1").unwrap();
        let e = g.edge("e").unwrap();
        assert_eq!(
            embed_generator(&g, &spec, GisGenerator::Vertex(v1)),
            PolyElement::pair(vec![0], vec![0])
        );
        assert_eq!(
            embed_generator(&g, &spec, GisGenerator::Edge(e)),
            PolyElement::pair(vec![0, 2], vec![1])
        );
        assert_eq!(
            embed_generator(&g, &spec, GisGenerator::EdgeInverse(e)),
            PolyElement::pair(vec![1], vec![0, 2])
        );
    }

    #[test]
    fn closed_form_examples() {
        let g = g1();
        let spec = EmbeddingSpec::canonical(&g);
        let ef = parse_element(&g, "e f^-1").unwrap();
        assert_eq!(
            embed_element(&g, &spec, &ef),
            PolyElement::pair(vec![0, 2], vec![0, 3])
        );
        assert_eq!(
            embed_element(&g, &spec, &parse_element(&g, "v2").unwrap()),
            PolyElement::pair(vec![1], vec![1])
        );
        assert_eq!(
            embed_element(&g, &spec, &parse_element(&g, "e").unwrap()),
            PolyElement::pair(vec![0, 2], vec![1])
        );
    }

    #[test]
    fn generator_product_route_agrees() {
        let g = g1();
        let spec = EmbeddingSpec::canonical(&g);
        for x in gis::enumerate_elements(&g, 3) {
            assert_eq!(
                embed_element(&g, &spec, &x),
                embed_element_via_generators(&g, &spec, &x),
                "at {}",
                format_element(&g, &x)
            );
        }
        let ee = parse_element(&g, "e e^-1").unwrap();
        assert_eq!(
            embed_element_via_generators(&g, &spec, &ee),
            PolyElement::pair(vec![0, 2], vec![0, 2])
        );
        assert_eq!(
            embed_element_via_generators(&g, &spec, &GisElement::Zero),
            PolyElement::Zero
        );
    }

    #[test]
    fn word_length_law_and_decoding() {
        let g = g1();
        let spec = EmbeddingSpec::canonical(&g);
        for p in g.enumerate_paths(3) {
            let w = path_word(&g, &spec, &p);
            assert_eq!(w.len(), p.len() + 1);
            assert_eq!(decode_word(&g, &spec, &w), Some(p));
        }
        // Words that decode to nothing.
        assert_eq!(decode_word(&g, &spec, &[2]), None); // edge index first
        assert_eq!(decode_word(&g, &spec, &[1, 2]), None); // e does not leave v2
        assert_eq!(decode_word(&g, &spec, &[]), None);
    }

    #[test]
    fn verification_passes_on_small_graphs() {
        // The ladder is truncated to six vertices (three rungs).
        for (label, g) in [
            ("g1", g1()),
            ("ladder:3", Graph::ladder(3)),
            ("rose:2", Graph::rose(2)),
        ] {
            let spec = EmbeddingSpec::canonical(&g);
            let report = verify_embedding(&g, &spec, label, 2);
            assert!(report.passed(), "{}", report.render_text());
        }
    }

    #[test]
    fn composite_p2_examples() {
        let g = g1();
        let spec = EmbeddingSpec::canonical(&g);
        assert_eq!(
            embed_element_p2(&g, &spec, &GisElement::Zero),
            PolyElement::Zero
        );
        // v1 maps to ([0],[0]) and q_0 = p_0 keeps it fixed.
        let v1 = parse_element(&g, "v1").unwrap();
        assert_eq!(
            embed_element_p2(&g, &spec, &v1),
            PolyElement::pair(vec![0], vec![0])
        );
    }

    #[test]
    fn preserves_phi() {
        let g = g1();
        let spec = EmbeddingSpec::canonical(&g);
        for x in gis::enumerate_elements(&g, 3) {
            let fx = embed_element(&g, &spec, &x);
            assert_eq!(
                embed_element(&g, &spec, &gis::phi(&x)),
                poly::multiply(&fx, &poly::invert(&fx))
            );
        }
    }
}
