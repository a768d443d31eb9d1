//! Elements of the graph inverse semigroup G(E) in normal form, their
//! multiplication, inversion, and idempotent structure.
//!
//! Every non-zero element is a pair of paths `(u, v)` with equal range,
//! denoting `u v^-1`; the pair itself is the unique normal form, so element
//! equality is structural. Zero is an explicit absorbing variant.

use thiserror::Error;

use crate::graph::{EdgeId, Graph, Path, VertexId};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GisError {
    #[error("paths have different ranges")]
    RangeMismatch,
    #[error("path is not valid in this graph")]
    InvalidPath,
}

/// A graph inverse semigroup element in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GisElement {
    Zero,
    /// The pair `(u, v)` denotes `u v^-1`; invariant: `range(u) = range(v)`.
    NonZero {
        u: Path,
        v: Path,
    },
}

impl GisElement {
    /// Builds `u v^-1`, validating both paths and the common range.
    pub fn pair(g: &Graph, u: Path, v: Path) -> Result<GisElement, GisError> {
        if !g.is_valid_path(&u) || !g.is_valid_path(&v) {
            return Err(GisError::InvalidPath);
        }
        if g.range(&u) != g.range(&v) {
            return Err(GisError::RangeMismatch);
        }
        Ok(GisElement::NonZero { u, v })
    }

    /// The idempotent `a a^-1` at a vertex `a`.
    pub fn vertex(v: VertexId) -> GisElement {
        GisElement::NonZero {
            u: Path::vertex(v),
            v: Path::vertex(v),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GisElement::Zero)
    }
}

/// A generator of G(E): a vertex, an edge, or a formal edge inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GisGenerator {
    Vertex(VertexId),
    Edge(EdgeId),
    EdgeInverse(EdgeId),
}

/// Is `q = p k`? Returns the leftover edge slice `k` without allocating.
fn tail_after<'a>(p: &Path, q: &'a Path) -> Option<&'a [EdgeId]> {
    if q.start() == p.start() && q.edges().starts_with(p.edges()) {
        Some(&q.edges()[p.len()..])
    } else {
        None
    }
}

fn extend(p: &Path, tail: &[EdgeId]) -> Path {
    let mut edges = Vec::with_capacity(p.len() + tail.len());
    edges.extend_from_slice(p.edges());
    edges.extend_from_slice(tail);
    Path::from_parts(p.start(), edges)
}

/// An unmaterialized product: the surviving paths plus the borrowed
/// leftover that lands on one of them. Lets sweeps compare products
/// without allocating.
pub(crate) enum ProductParts<'a> {
    Zero,
    /// `(u ++ tail) v^-1`.
    OnLeft {
        u: &'a Path,
        tail: &'a [EdgeId],
        v: &'a Path,
    },
    /// `u (v ++ tail)^-1`.
    OnRight {
        u: &'a Path,
        v: &'a Path,
        tail: &'a [EdgeId],
    },
}

pub(crate) fn multiply_parts<'a>(x: &'a GisElement, y: &'a GisElement) -> ProductParts<'a> {
    let (GisElement::NonZero { u: a, v: b }, GisElement::NonZero { u: c, v: d }) = (x, y) else {
        return ProductParts::Zero;
    };
    if let Some(tail) = tail_after(b, c) {
        ProductParts::OnLeft { u: a, tail, v: d }
    } else if let Some(tail) = tail_after(c, b) {
        ProductParts::OnRight { u: a, v: d, tail }
    } else {
        ProductParts::Zero
    }
}

/// The normal-form product `(a b^-1)(c d^-1)`.
///
/// If `c = b c1` the product is `(a c1) d^-1`; if `b = c b1` it is
/// `a (d b1)^-1`; otherwise it is zero. Zero absorbs. The `b = c` case is
/// the first branch with an empty leftover.
pub fn multiply(x: &GisElement, y: &GisElement) -> GisElement {
    match multiply_parts(x, y) {
        ProductParts::Zero => GisElement::Zero,
        ProductParts::OnLeft { u, tail, v } => GisElement::NonZero {
            u: extend(u, tail),
            v: v.clone(),
        },
        ProductParts::OnRight { u, v, tail } => GisElement::NonZero {
            u: u.clone(),
            v: extend(v, tail),
        },
    }
}

/// Which branch of the product formula a pair of non-zero factors falls
/// into: 1 (`c = b c1`, `c1` non-empty), 2 (`b = c b1`, `b1` non-empty),
/// 3 (`b = c`), or 4 (zero product). `None` when a factor is zero.
pub fn multiplication_case(x: &GisElement, y: &GisElement) -> Option<u8> {
    let (GisElement::NonZero { v: b, .. }, GisElement::NonZero { u: c, .. }) = (x, y) else {
        return None;
    };
    if b == c {
        Some(3)
    } else if tail_after(b, c).is_some() {
        Some(1)
    } else if tail_after(c, b).is_some() {
        Some(2)
    } else {
        Some(4)
    }
}

/// `(u v^-1)^-1 = v u^-1`; zero is self-inverse.
pub fn invert(x: &GisElement) -> GisElement {
    match x {
        GisElement::Zero => GisElement::Zero,
        GisElement::NonZero { u, v } => GisElement::NonZero {
            u: v.clone(),
            v: u.clone(),
        },
    }
}

/// The normal form of a single generator.
pub fn generator_element(g: &Graph, gen: GisGenerator) -> GisElement {
    match gen {
        GisGenerator::Vertex(a) => GisElement::vertex(a),
        GisGenerator::Edge(e) => GisElement::NonZero {
            u: Path::from_parts(g.src(e), vec![e]),
            v: Path::vertex(g.dst(e)),
        },
        GisGenerator::EdgeInverse(e) => GisElement::NonZero {
            u: Path::vertex(g.dst(e)),
            v: Path::from_parts(g.src(e), vec![e]),
        },
    }
}

/// Left fold of the product over the generator images of a non-empty word.
pub fn reduce_word(g: &Graph, word: &[GisGenerator]) -> GisElement {
    assert!(!word.is_empty(), "generator word must be non-empty");
    let mut acc = generator_element(g, word[0]);
    for &gen in &word[1..] {
        acc = multiply(&acc, &generator_element(g, gen));
    }
    acc
}

/// The idempotents of G(E) are exactly zero and the `u u^-1`.
pub fn is_idempotent(x: &GisElement) -> bool {
    match x {
        GisElement::Zero => true,
        GisElement::NonZero { u, v } => u == v,
    }
}

/// `phi(x) = x x^-1`.
pub fn phi(x: &GisElement) -> GisElement {
    match x {
        GisElement::Zero => GisElement::Zero,
        GisElement::NonZero { u, .. } => GisElement::NonZero {
            u: u.clone(),
            v: u.clone(),
        },
    }
}

/// `psi(x) = x^-1 x`.
pub fn psi(x: &GisElement) -> GisElement {
    match x {
        GisElement::Zero => GisElement::Zero,
        GisElement::NonZero { v, .. } => GisElement::NonZero {
            u: v.clone(),
            v: v.clone(),
        },
    }
}

/// The pair `(phi(x), psi(x))`, injective on G(E).
pub fn h_pair(x: &GisElement) -> (GisElement, GisElement) {
    (phi(x), psi(x))
}

pub fn element_valid(g: &Graph, x: &GisElement) -> bool {
    match x {
        GisElement::Zero => true,
        GisElement::NonZero { u, v } => {
            g.is_valid_path(u) && g.is_valid_path(v) && g.range(u) == g.range(v)
        }
    }
}

/// Zero followed by every `(u, v)` pair of equal-range paths with
/// `|u|, |v| <= max_len`, in enumeration order of the paths.
pub fn enumerate_elements(g: &Graph, max_len: usize) -> Vec<GisElement> {
    let paths = g.enumerate_paths(max_len);
    let ranges: Vec<VertexId> = paths.iter().map(|p| g.range(p)).collect();
    let mut out = vec![GisElement::Zero];
    for (i, u) in paths.iter().enumerate() {
        for (j, v) in paths.iter().enumerate() {
            if ranges[i] == ranges[j] {
                out.push(GisElement::NonZero {
                    u: u.clone(),
                    v: v.clone(),
                });
            }
        }
    }
    out
}
