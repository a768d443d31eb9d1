//! Filter-generated topologies on G(E).
//!
//! A free filter on the path set induces a topology in which every
//! non-zero element is isolated and the sets
//! `U_F(0) = {a b^-1 : a, b in F} + {0}` form a neighborhood base at zero.
//! This module decides neighborhood membership, constructs the continuity
//! witness sets for translation and for the product at zero, computes
//! largest extension-closed subsets, and checks the coarsest-topology and
//! topological-embedding identities — everything exhaustively at a
//! truncation bound.
//!
//! Filters are represented by bases plus a truncation window; a set counts
//! as belonging to a filter when it contains a base set within the window.
//! "Ideal" throughout means extension-closed: a set of paths closed under
//! appending edges.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::embed::{self, EmbeddingSpec};
use crate::expr::format_element;
use crate::gis::{self, GisElement};
use crate::graph::{Graph, Path};
use crate::poly::{self, Word};
use crate::report::{CheckResult, TopologyReport};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("paths have different ranges")]
    RangeMismatch,
    #[error("zero has no translation witness")]
    ZeroElement,
    #[error("no ideal base set found within the truncation window")]
    NoIdealBase,
    #[error("truncation {trunc} does not exceed n+1 = {}", n + 1)]
    TruncationTooSmall { trunc: usize, n: usize },
}

/// A decidable set of paths: a structural base minus a finite set.
///
/// Every set the witness constructions produce has this shape, so
/// membership stays exact rather than window-approximated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathSet {
    /// All of Path(E).
    All,
    /// `U_n = {u : |u| > n}`.
    LongerThan(usize),
    /// The vertex set, as length-zero paths.
    Vertices,
    /// Set difference with a finite path set.
    Minus(Box<PathSet>, BTreeSet<Path>),
}

impl PathSet {
    pub fn cofinite(excluded: impl IntoIterator<Item = Path>) -> PathSet {
        PathSet::All.minus(excluded)
    }

    pub fn minus(self, extra: impl IntoIterator<Item = Path>) -> PathSet {
        match self {
            PathSet::Minus(base, mut set) => {
                set.extend(extra);
                PathSet::Minus(base, set)
            }
            base => {
                let set: BTreeSet<Path> = extra.into_iter().collect();
                if set.is_empty() {
                    base
                } else {
                    PathSet::Minus(Box::new(base), set)
                }
            }
        }
    }

    pub fn contains(&self, p: &Path) -> bool {
        match self {
            PathSet::All => true,
            PathSet::LongerThan(n) => p.len() > *n,
            PathSet::Vertices => p.is_empty(),
            PathSet::Minus(base, excluded) => base.contains(p) && !excluded.contains(p),
        }
    }

    pub fn describe(&self, g: &Graph) -> String {
        match self {
            PathSet::All => "Path".to_string(),
            PathSet::LongerThan(n) => format!("U_{n}"),
            PathSet::Vertices => "E0".to_string(),
            PathSet::Minus(base, excluded) => {
                let listed = excluded
                    .iter()
                    .map(|p| g.format_path(p))
                    .collect::<Vec<_>>()
                    .join(", ");
                format!("{} \\ {{{listed}}}", base.describe(g))
            }
        }
    }

    /// Flattens any `Minus` nesting into the structural base and the
    /// union of the excluded sets.
    fn decompose(&self) -> (&PathSet, BTreeSet<Path>) {
        match self {
            PathSet::Minus(base, excluded) => {
                let (root, mut rest) = base.decompose();
                rest.extend(excluded.iter().cloned());
                (root, rest)
            }
            base => (base, BTreeSet::new()),
        }
    }
}

/// Membership in the basic neighborhood of zero: zero always belongs, and
/// `u v^-1` belongs exactly when both paths lie in the base set.
pub fn nbhd_contains(f: &PathSet, x: &GisElement) -> bool {
    match x {
        GisElement::Zero => true,
        GisElement::NonZero { u, v } => f.contains(u) && f.contains(v),
    }
}

/// A description of a filter base on Path(E).
#[derive(Debug, Clone)]
pub enum FilterSpec {
    /// The length filter: base sets `U_n`; `n` designates the one under
    /// test.
    Length { n: usize },
    /// The cofinite filter; `excluded` designates the base set
    /// `Path \ excluded`.
    Cofinite { excluded: BTreeSet<Path> },
    /// An explicitly listed base, valid up to the truncation the caller
    /// works at. The first listed set is the designated one.
    Explicit { sets: Vec<PathSet> },
}

impl FilterSpec {
    /// The designated base set the checks run against.
    pub fn base_set(&self) -> PathSet {
        match self {
            FilterSpec::Length { n } => PathSet::LongerThan(*n),
            FilterSpec::Cofinite { excluded } => PathSet::cofinite(excluded.iter().cloned()),
            FilterSpec::Explicit { sets } => sets
                .first()
                .cloned()
                .expect("an explicit base lists at least one set"),
        }
    }

    pub fn describe(&self, g: &Graph) -> String {
        match self {
            FilterSpec::Length { n } => format!("length filter (base U_{n})"),
            FilterSpec::Cofinite { excluded } => {
                format!(
                    "cofinite filter (base {})",
                    PathSet::cofinite(excluded.iter().cloned()).describe(g)
                )
            }
            FilterSpec::Explicit { sets } => format!(
                "explicit base ({} sets, designated {})",
                sets.len(),
                self.base_set().describe(g)
            ),
        }
    }

    /// Does the filter contain `s`, judged within the window of paths of
    /// length at most `trunc`? Exact for the length and cofinite filters;
    /// for an explicit base this is the window-local test.
    fn contains_set(&self, g: &Graph, s: &PathSet, trunc: usize) -> bool {
        match self {
            FilterSpec::Length { .. } => {
                // s must contain some U_m. True exactly when s is a
                // length-or-larger base minus finitely many paths.
                let (base, _) = s.decompose();
                matches!(base, PathSet::All | PathSet::LongerThan(_))
            }
            FilterSpec::Cofinite { .. } => {
                let (base, _) = s.decompose();
                matches!(base, PathSet::All)
            }
            FilterSpec::Explicit { sets } => {
                let window = g.enumerate_paths(trunc);
                sets.iter()
                    .any(|b| window.iter().all(|p| !b.contains(p) || s.contains(p)))
            }
        }
    }
}

/// All prefixes of the given paths, the paths themselves included.
pub fn prefix_closure(g: &Graph, paths: &BTreeSet<Path>) -> BTreeSet<Path> {
    paths.iter().flat_map(|p| g.prefixes(p)).collect()
}

/// True when every member of `s` shorter than `trunc` keeps all its
/// one-edge extensions inside `s`.
pub fn is_ideal(g: &Graph, s: &PathSet, trunc: usize) -> bool {
    assert!(trunc >= 1);
    for u in g.enumerate_paths(trunc - 1) {
        if !s.contains(&u) {
            continue;
        }
        for &e in g.out_edges(g.range(&u)) {
            let mut edges = u.edges().to_vec();
            edges.push(e);
            if !s.contains(&Path::from_parts(u.start(), edges)) {
                return false;
            }
        }
    }
    true
}

/// The largest extension-closed subset of `s`: a path stays exactly when
/// none of its extensions (itself included) was excluded. For a cofinite
/// set this is the complement of the prefix closure of the excluded set.
pub fn largest_ideal_inside(g: &Graph, s: &PathSet) -> PathSet {
    match s {
        PathSet::All | PathSet::LongerThan(_) => s.clone(),
        PathSet::Vertices => {
            // A vertex with an outgoing edge has an extension outside any
            // vertex-only set.
            let blocked: Vec<Path> = g
                .vertices()
                .filter(|&v| !g.out_edges(v).is_empty())
                .map(Path::vertex)
                .collect();
            PathSet::Vertices.minus(blocked)
        }
        PathSet::Minus(base, excluded) => {
            let closure = prefix_closure(g, excluded);
            largest_ideal_inside(g, base).minus(closure)
        }
    }
}

/// Paths of length at most `max_len` starting at `v`.
fn paths_from(g: &Graph, v: crate::graph::VertexId, max_len: usize) -> Vec<Path> {
    let mut all = vec![Path::vertex(v)];
    let mut level = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &level {
            for &e in g.out_edges(g.range(p)) {
                let mut edges = p.edges().to_vec();
                edges.push(e);
                next.push(Path::from_parts(p.start(), edges));
            }
        }
        all.extend(next.iter().cloned());
        level = next;
        if level.is_empty() {
            break;
        }
    }
    all
}

/// The candidate continuations `k` (composable at the common range of
/// `test` and `build`) for which `test k` can fall outside `f`. Outside
/// this finite set, `test k` is guaranteed to stay in `f` whenever
/// `build k` lies in `f`.
fn escape_candidates(g: &Graph, f: &PathSet, test: &Path, build: &Path) -> Vec<Path> {
    let (base, excluded) = f.decompose();
    let mut candidates = Vec::new();
    for c in &excluded {
        if let Some(k) = g.strip_prefix(test, c) {
            candidates.push(k);
        }
    }
    match base {
        PathSet::All => {}
        PathSet::LongerThan(n) => {
            if test.len() <= *n {
                candidates.extend(paths_from(g, g.range(test), n - test.len()));
            }
        }
        PathSet::Vertices => {
            if build.is_empty() {
                candidates.push(Path::vertex(g.range(build)));
            }
        }
        PathSet::Minus(..) => unreachable!("decompose removes all Minus layers"),
    }
    candidates
}

/// `build`-side witness set: `f` minus the prefixes of `build` and minus
/// `{build k : test k escapes f}`.
fn translation_witness(g: &Graph, f: &PathSet, build: &Path, test: &Path) -> PathSet {
    debug_assert_eq!(g.range(build), g.range(test));
    let mut removal: BTreeSet<Path> = g.prefixes(build).into_iter().collect();
    for k in escape_candidates(g, f, test, build) {
        let tk = g.concat(test, &k).expect("k starts at the common range");
        let bk = g.concat(build, &k).expect("k starts at the common range");
        if !f.contains(&tk) && f.contains(&bk) {
            removal.insert(bk);
        }
    }
    f.clone().minus(removal)
}

fn sweep_translation(
    g: &Graph,
    x: &GisElement,
    witness_set: &PathSet,
    f: &PathSet,
    bound: usize,
    on_left: bool,
) -> CheckResult {
    let name = format!(
        "{}_translation(x = {})",
        if on_left { "left" } else { "right" },
        format_element(g, x)
    );
    let mut cases = 0;
    let mut witness = None;
    for y in gis::enumerate_elements(g, bound) {
        if !nbhd_contains(witness_set, &y) {
            continue;
        }
        cases += 1;
        let product = if on_left {
            gis::multiply(&y, x)
        } else {
            gis::multiply(x, &y)
        };
        if !nbhd_contains(f, &product) {
            witness = Some(format!(
                "y = {} lies in the witness neighborhood but the product {} escapes U_F(0)",
                format_element(g, &y),
                format_element(g, &product)
            ));
            break;
        }
    }
    CheckResult::from_witness(name, witness, cases)
}

/// Builds `H` with `x U_H(0)` contained in `U_F(0)` and sweeps the
/// containment over all elements at `bound`.
pub fn witness_right_translation(
    g: &Graph,
    x: &GisElement,
    f: &PathSet,
    bound: usize,
) -> Result<(PathSet, CheckResult), TopologyError> {
    let GisElement::NonZero { u: a, v: b } = x else {
        return Err(TopologyError::ZeroElement);
    };
    let h = translation_witness(g, f, b, a);
    let check = sweep_translation(g, x, &h, f, bound, false);
    Ok((h, check))
}

/// Mirror image: builds `G` with `U_G(0) x` contained in `U_F(0)`.
pub fn witness_left_translation(
    g: &Graph,
    x: &GisElement,
    f: &PathSet,
    bound: usize,
) -> Result<(PathSet, CheckResult), TopologyError> {
    let GisElement::NonZero { u: a, v: b } = x else {
        return Err(TopologyError::ZeroElement);
    };
    let witness_set = translation_witness(g, f, a, b);
    let check = sweep_translation(g, x, &witness_set, f, bound, true);
    Ok((witness_set, check))
}

/// Finds an ideal `T` in the filter inside the designated base set and
/// sweeps `U_T(0) U_T(0)` inside `U_T(0)` inside `U_F(0)`.
///
/// The largest extension-closed subset is the canonical candidate: some
/// ideal of the filter sits inside `F` exactly when the largest one
/// belongs to the filter.
pub fn witness_product(
    g: &Graph,
    filter: &FilterSpec,
    trunc: usize,
    bound: usize,
) -> Result<(PathSet, Vec<CheckResult>), TopologyError> {
    let f = filter.base_set();
    let t = largest_ideal_inside(g, &f);
    if !filter.contains_set(g, &t, trunc) {
        return Err(TopologyError::NoIdealBase);
    }

    let mut checks = Vec::new();
    checks.push(CheckResult::from_witness(
        format!("ideal({})", t.describe(g)),
        if is_ideal(g, &t, trunc) {
            None
        } else {
            Some("a one-edge extension escapes".to_string())
        },
        1,
    ));

    let elems = gis::enumerate_elements(g, bound);
    let members: Vec<&GisElement> = elems.iter().filter(|x| nbhd_contains(&t, x)).collect();
    let mut witness = None;
    'outer: for x in &members {
        for y in &members {
            let product = gis::multiply(x, y);
            if !nbhd_contains(&t, &product) {
                witness = Some(format!(
                    "x = {}, y = {} in U_T(0) but x y = {} escapes U_T(0)",
                    format_element(g, x),
                    format_element(g, y),
                    format_element(g, &product)
                ));
                break 'outer;
            }
        }
    }
    checks.push(CheckResult::from_witness(
        "product(U_T * U_T inside U_T)",
        witness,
        (members.len() * members.len()) as u64,
    ));

    let mut witness = None;
    for x in &elems {
        if nbhd_contains(&t, x) && !nbhd_contains(&f, x) {
            witness = Some(format!(
                "{} in U_T(0) but not in U_F(0)",
                format_element(g, x)
            ));
            break;
        }
    }
    checks.push(CheckResult::from_witness(
        "containment(U_T inside U_F)",
        witness,
        elems.len() as u64,
    ));

    Ok((t, checks))
}

/// Condition (i) of a topological filter: removing
/// `{b k : a k outside F}` from the designated base set must leave a set
/// of the filter.
pub fn check_condition_i(
    g: &Graph,
    filter: &FilterSpec,
    a: &Path,
    b: &Path,
    trunc: usize,
) -> Result<CheckResult, TopologyError> {
    if g.range(a) != g.range(b) {
        return Err(TopologyError::RangeMismatch);
    }
    let f = filter.base_set();
    let mut removal = BTreeSet::new();
    for k in escape_candidates(g, &f, a, b) {
        let ak = g.concat(a, &k).expect("k starts at the common range");
        let bk = g.concat(b, &k).expect("k starts at the common range");
        if !f.contains(&ak) && f.contains(&bk) {
            removal.insert(bk);
        }
    }
    let removed = removal.len() as u64;
    let f1 = f.minus(removal);

    let name = format!(
        "condition_i(a = {}, b = {})",
        g.format_path(a),
        g.format_path(b)
    );
    let witness = match filter {
        // F1 = U_n minus finitely many paths always contains a deeper
        // length base set; assert it within the window.
        FilterSpec::Length { n } => g
            .enumerate_paths(trunc)
            .iter()
            .find(|p| p.len() > n + b.len() && !f1.contains(p))
            .map(|p| format!("{} escapes F1 despite |p| > n + |b|", g.format_path(p))),
        // The removed set is finite, so F1 stays cofinite.
        FilterSpec::Cofinite { .. } => None,
        FilterSpec::Explicit { .. } => {
            if filter.contains_set(g, &f1, trunc) {
                None
            } else {
                Some("F1 contains no listed base set within the window".to_string())
            }
        }
    };
    Ok(CheckResult::from_witness(name, witness, removed.max(1)))
}

/// Condition (ii): the filter contains every cofinite set. Window-locally:
/// each path in the window is omitted by some base set.
pub fn check_condition_ii(g: &Graph, filter: &FilterSpec, trunc: usize) -> CheckResult {
    let window = g.enumerate_paths(trunc);
    let witness = match filter {
        // U_{|p|} omits p.
        FilterSpec::Length { .. } => None,
        FilterSpec::Cofinite { .. } => None,
        FilterSpec::Explicit { sets } => window
            .iter()
            .find(|p| sets.iter().all(|b| b.contains(p)))
            .map(|p| {
                format!(
                    "every listed base set contains {}, so the cofinite set omitting it \
                     is not refined",
                    g.format_path(p)
                )
            }),
    };
    CheckResult::from_witness("condition_ii", witness, window.len() as u64)
}

/// Condition (iii): the filter has an ideal base, witnessed inside the
/// designated base set.
pub fn check_condition_iii(
    g: &Graph,
    filter: &FilterSpec,
    trunc: usize,
    bound: usize,
) -> CheckResult {
    match witness_product(g, filter, trunc, bound) {
        Ok((t, checks)) => CheckResult::from_witness(
            format!("condition_iii(T = {})", t.describe(g)),
            checks
                .iter()
                .find(|c| !c.passed())
                .and_then(|c| c.witness.clone()),
            checks.iter().map(|c| c.cases).sum(),
        ),
        Err(e) => CheckResult::fail("condition_iii", e.to_string(), 1),
    }
}

/// The coarsest-topology identity: `U_F(0)` equals the joint preimage of
/// `H = {u u^-1 : u in F} + {0}` under `phi` and `psi`, checked as set
/// equality over all elements at `bound`.
pub fn coarsest_identity_check(g: &Graph, excluded: &BTreeSet<Path>, bound: usize) -> CheckResult {
    let f = PathSet::cofinite(excluded.iter().cloned());
    let name = format!("coarsest_identity(F = {})", f.describe(g));

    // Materialize H from the window paths.
    let mut h: HashSet<GisElement> = g
        .enumerate_paths(bound)
        .into_iter()
        .filter(|p| f.contains(p))
        .map(|p| GisElement::NonZero { u: p.clone(), v: p })
        .collect();
    h.insert(GisElement::Zero);

    let elems = gis::enumerate_elements(g, bound);
    let cases = elems.len() as u64;
    let witness = elems.into_iter().find_map(|x| {
        let via_nbhd = nbhd_contains(&f, &x);
        let via_preimages = h.contains(&gis::phi(&x)) && h.contains(&gis::psi(&x));
        (via_nbhd != via_preimages).then(|| {
            format!(
                "{}: U_F(0) membership {} but phi/psi route gives {}",
                format_element(g, &x),
                via_nbhd,
                via_preimages
            )
        })
    });
    CheckResult::from_witness(name, witness, cases)
}

/// The level-shift identity of the embedding: `x` lies in `U_n(0)` exactly
/// when its image clears level `n + 1`, reflecting the one-letter growth
/// of path words.
pub fn main1_identity_check(
    g: &Graph,
    spec: &EmbeddingSpec,
    n: usize,
    trunc: usize,
) -> Result<CheckResult, TopologyError> {
    if trunc <= n + 1 {
        return Err(TopologyError::TruncationTooSmall { trunc, n });
    }
    let elems = gis::enumerate_elements(g, trunc);
    let cases = elems.len() as u64;
    let witness = elems.into_iter().find_map(|x| {
        let in_un = match &x {
            GisElement::Zero => true,
            GisElement::NonZero { u, v } => u.len().min(v.len()) > n,
        };
        let image_side = match poly::min_word_length(&embed::embed_element(g, spec, &x)) {
            None => true,
            Some(m) => m > n + 1,
        };
        (in_un != image_side).then(|| {
            format!(
                "{}: U_{}(0) membership {} but the image side gives {}",
                format_element(g, &x),
                n,
                in_un,
                image_side
            )
        })
    });
    Ok(CheckResult::from_witness(
        format!("main1_identity(n = {n})"),
        witness,
        cases,
    ))
}

/// Which direction of the topological-embedding argument to witness, with
/// the finite excluded set on the relevant side.
#[derive(Debug, Clone)]
pub enum Main2Witness {
    /// Excluded words of a cofinite base set on the polycyclic side.
    Continuity { excluded_words: BTreeSet<Word> },
    /// Excluded paths of a cofinite base set on the graph side.
    Openness { excluded_paths: BTreeSet<Path> },
}

/// Continuity: builds `H = {a : the word of a avoids the excluded words}`
/// and checks that images of `U_H(0)` stay in `U_F(0)`. Openness: builds
/// the word set `G` from the images of the excluded paths and checks
/// `U_G(0)` meets the image only inside the image of `U_H(0)`.
pub fn main2_witness(
    g: &Graph,
    spec: &EmbeddingSpec,
    data: &Main2Witness,
    trunc: usize,
) -> CheckResult {
    let elems = gis::enumerate_elements(g, trunc);
    match data {
        Main2Witness::Continuity { excluded_words } => {
            // A path is excluded from H exactly when its word is excluded.
            let excluded_paths: Vec<Path> = excluded_words
                .iter()
                .filter_map(|w| embed::decode_word(g, spec, w))
                .collect();
            let h = PathSet::cofinite(excluded_paths);
            let cases = elems.len() as u64;
            let witness = elems.into_iter().find_map(|x| {
                if !nbhd_contains(&h, &x) {
                    return None;
                }
                let in_uf = match embed::embed_element(g, spec, &x) {
                    poly::PolyElement::Zero => true,
                    poly::PolyElement::NonZero { x: xs, y: ys } => {
                        !excluded_words.contains(&xs) && !excluded_words.contains(&ys)
                    }
                };
                (!in_uf).then(|| {
                    format!(
                        "{} lies in U_H(0) but its image escapes U_F(0)",
                        format_element(g, &x)
                    )
                })
            });
            CheckResult::from_witness(
                format!("main2_continuity({} excluded words)", excluded_words.len()),
                witness,
                cases,
            )
        }
        Main2Witness::Openness { excluded_paths } => {
            // Images u_i v_i^-1 of the excluded paths, taken as elements.
            let mut excluded_words: BTreeSet<Word> = BTreeSet::new();
            for p in excluded_paths {
                let as_element = GisElement::NonZero {
                    u: p.clone(),
                    v: Path::vertex(g.range(p)),
                };
                if let poly::PolyElement::NonZero { x, y } =
                    embed::embed_element(g, spec, &as_element)
                {
                    excluded_words.insert(x);
                    excluded_words.insert(y);
                }
            }
            let h = PathSet::cofinite(excluded_paths.iter().cloned());
            let cases = elems.len() as u64;
            let witness = elems.into_iter().find_map(|x| {
                let in_ug = match embed::embed_element(g, spec, &x) {
                    poly::PolyElement::Zero => true,
                    poly::PolyElement::NonZero { x: xs, y: ys } => {
                        !excluded_words.contains(&xs) && !excluded_words.contains(&ys)
                    }
                };
                (in_ug && !nbhd_contains(&h, &x)).then(|| {
                    format!(
                        "the image of {} lies in U_G(0) yet the element escapes U_H(0)",
                        format_element(g, &x)
                    )
                })
            });
            CheckResult::from_witness(
                format!("main2_openness({} excluded paths)", excluded_paths.len()),
                witness,
                cases,
            )
        }
    }
}

/// All subsets of `pool` of size at most `max_size`, by size then
/// lexicographically on indices.
pub(crate) fn subsets_up_to<T: Clone>(pool: &[T], max_size: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for idx in &level {
            let from = idx.last().map_or(0, |&i| i + 1);
            for i in from..pool.len() {
                let mut idx2 = idx.clone();
                idx2.push(i);
                next.push(idx2);
            }
        }
        out.extend(
            next.iter()
                .map(|idx| idx.iter().map(|&i| pool[i].clone()).collect::<Vec<T>>()),
        );
        level = next;
        if level.is_empty() {
            break;
        }
    }
    out
}

/// Reproduces the truncated-ladder counterexample: for vertex-set base
/// neighborhoods, translations by any element land in `{0}` and products
/// are fixed, yet no vertex-only base set contains an ideal of the filter
/// — the largest extension-closed subset loses every odd vertex.
pub fn ladder_example_suite(rungs: u32, max_excluded: usize) -> TopologyReport {
    let g = Graph::ladder(rungs);
    // Path lengths are at most one, so bound 1 enumerates all of G(E).
    let elems = gis::enumerate_elements(&g, 1);
    let vertex_paths: Vec<Path> = g.vertices().map(Path::vertex).collect();
    let odd_vertices: Vec<Path> = g
        .vertices()
        .filter(|&v| g.vertex_name(v).parse::<u32>().unwrap() % 2 == 1)
        .map(Path::vertex)
        .collect();
    let mut checks = Vec::new();

    // a b^-1 U_F(0) lands in {0} for F = E0 \ {s(b)}, and mirrored.
    for on_left in [false, true] {
        let mut cases = 0u64;
        let mut witness = None;
        'sweep: for x in &elems {
            let GisElement::NonZero { u: a, v: b } = x else {
                continue;
            };
            let anchor = if on_left { a } else { b };
            let f = PathSet::Vertices.minus([Path::vertex(anchor.start())]);
            for y in &elems {
                if !nbhd_contains(&f, y) {
                    continue;
                }
                cases += 1;
                let product = if on_left {
                    gis::multiply(y, x)
                } else {
                    gis::multiply(x, y)
                };
                if !product.is_zero() {
                    witness = Some(format!(
                        "x = {}, y = {} in U_F(0), product {} is not zero",
                        format_element(&g, x),
                        format_element(&g, y),
                        format_element(&g, &product)
                    ));
                    break 'sweep;
                }
            }
        }
        let name = if on_left {
            "left_translations_into_zero"
        } else {
            "right_translations_into_zero"
        };
        checks.push(CheckResult::from_witness(name, witness, cases));
    }

    let subsets = subsets_up_to(&vertex_paths, max_excluded);

    // U_F(0) U_F(0) = U_F(0) for every vertex-only base set in range.
    {
        let mut cases = 0u64;
        let mut witness = None;
        for s in &subsets {
            let f = PathSet::Vertices.minus(s.iter().cloned());
            let members: HashSet<&GisElement> =
                elems.iter().filter(|x| nbhd_contains(&f, x)).collect();
            let products: HashSet<GisElement> = members
                .iter()
                .flat_map(|x| members.iter().map(|y| gis::multiply(x, y)))
                .collect();
            cases += 1;
            let same =
                products.len() == members.len() && products.iter().all(|p| members.contains(p));
            if !same && witness.is_none() {
                witness = Some(format!(
                    "U_F(0) U_F(0) differs from U_F(0) at F = {}",
                    f.describe(&g)
                ));
            }
        }
        checks.push(CheckResult::from_witness(
            "products_fixed(U_F * U_F = U_F)",
            witness,
            cases,
        ));
    }

    // The largest ideal inside any vertex-only base set drops exactly the
    // odd vertices (plus whatever the set already excluded), so it
    // refines no listed base set.
    {
        let mut cases = 0u64;
        let mut witness = None;
        for s in &subsets {
            let f = PathSet::Vertices.minus(s.iter().cloned());
            let ideal = largest_ideal_inside(&g, &f);
            cases += 1;
            if witness.is_some() {
                continue;
            }
            if let Some(p) = odd_vertices.iter().find(|p| ideal.contains(p)) {
                witness = Some(format!(
                    "odd vertex {} survives in the largest ideal inside {}",
                    g.format_path(p),
                    f.describe(&g)
                ));
            } else if let Some(p) = vertex_paths
                .iter()
                .filter(|p| !odd_vertices.contains(p) && !s.contains(p))
                .find(|p| !ideal.contains(p))
            {
                witness = Some(format!(
                    "even vertex {} was dropped from the largest ideal inside {}",
                    g.format_path(p),
                    f.describe(&g)
                ));
            }
        }
        checks.push(CheckResult::from_witness(
            "largest_ideal_excludes_odd_vertices",
            witness,
            cases,
        ));
    }

    // witness_product must report the missing ideal base.
    {
        let sets: Vec<PathSet> = subsets
            .iter()
            .map(|s| PathSet::Vertices.minus(s.iter().cloned()))
            .collect();
        let outcome = witness_product(&g, &FilterSpec::Explicit { sets }, 2, 1);
        let witness = match outcome {
            Err(TopologyError::NoIdealBase) => None,
            Err(e) => Some(format!("unexpected error: {e}")),
            Ok(_) => Some("an ideal base set was found".to_string()),
        };
        checks.push(CheckResult::from_witness(
            "no_ideal_base_reported",
            witness,
            1,
        ));
    }

    TopologyReport::new(
        format!("ladder:{rungs} filter (base: vertex sets missing at most {max_excluded})"),
        1,
        checks,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn neighborhood_membership() {
        let rose = Graph::rose(2);
        let u2 = PathSet::LongerThan(2);
        for x in gis::enumerate_elements(&rose, 4) {
            let expected = match &x {
                GisElement::Zero => true,
                GisElement::NonZero { u, v } => u.len() > 2 && v.len() > 2,
            };
            assert_eq!(nbhd_contains(&u2, &x), expected);
        }
        assert!(nbhd_contains(
            &PathSet::Minus(Box::new(PathSet::All), BTreeSet::new()),
            &GisElement::Zero
        ));
    }

    #[test]
    fn inversion_symmetry_of_neighborhoods() {
        let g = g1();
        let paths = g.enumerate_paths(2);
        let f = PathSet::cofinite([paths[0].clone(), paths[2].clone()]);
        for x in gis::enumerate_elements(&g, 3) {
            assert_eq!(nbhd_contains(&f, &x), nbhd_contains(&f, &gis::invert(&x)));
        }
    }

    #[test]
    fn ideals_by_definition() {
        let g = g1();
        assert!(is_ideal(&g, &PathSet::LongerThan(0), 5));
        assert!(is_ideal(&g, &PathSet::LongerThan(3), 5));
        // Complement of a prefix-closed set is extension-closed.
        let v1 = Path::vertex(g.vertex("v1").unwrap());
        let closed = PathSet::cofinite([v1]);
        assert!(is_ideal(&g, &closed, 5));

        // Excluding an extension of a member breaks the property.
        let ladder = Graph::ladder(3);
        let rung = ladder.path("1", &["e1"]).unwrap();
        let broken = PathSet::cofinite([rung]);
        assert!(!is_ideal(&ladder, &broken, 6));
    }

    /// Brute-force largest extension-closed subset, valid on graphs whose
    /// path set is finite and fully enumerated by `all_len`.
    fn brute_force_ideal(g: &Graph, s: &PathSet, all_len: usize) -> BTreeSet<Path> {
        let mut members: BTreeSet<Path> = g
            .enumerate_paths(all_len)
            .into_iter()
            .filter(|p| s.contains(p))
            .collect();
        loop {
            let bad: Vec<Path> = members
                .iter()
                .filter(|u| {
                    g.out_edges(g.range(u)).iter().any(|&e| {
                        let mut edges = u.edges().to_vec();
                        edges.push(e);
                        !members.contains(&Path::from_parts(u.start(), edges))
                    })
                })
                .cloned()
                .collect();
            if bad.is_empty() {
                return members;
            }
            for p in bad {
                members.remove(&p);
            }
        }
    }

    #[test]
    fn largest_ideal_examples() {
        let g = g1();
        // Nothing excluded: everything stays.
        let all = largest_ideal_inside(&g, &PathSet::All);
        assert_eq!(all, PathSet::All);

        // Excluding the e-path also evicts its prefix v1.
        let e_path = g.path("v1", &["e"]).unwrap();
        let ideal = largest_ideal_inside(&g, &PathSet::cofinite([e_path.clone()]));
        let v1 = Path::vertex(g.vertex("v1").unwrap());
        for p in g.enumerate_paths(1) {
            let expected = p != e_path && p != v1;
            assert_eq!(ideal.contains(&p), expected, "{}", g.format_path(&p));
        }

        // Agreement with the brute-force computation on finite path sets.
        for s in [
            PathSet::cofinite([e_path.clone()]),
            PathSet::cofinite([v1.clone()]),
            PathSet::Vertices,
            PathSet::Vertices.minus([v1]),
        ] {
            let exact = largest_ideal_inside(&g, &s);
            let brute = brute_force_ideal(&g, &s, 1);
            for p in g.enumerate_paths(1) {
                assert_eq!(exact.contains(&p), brute.contains(&p));
            }
        }
    }

    #[test]
    fn largest_ideal_on_the_ladder() {
        let g = Graph::ladder(3);
        // Excluding one even vertex evicts exactly that vertex: it has no
        // extensions and is nobody's proper extension.
        let even = Path::vertex(g.vertex("2").unwrap());
        let ideal = largest_ideal_inside(&g, &PathSet::cofinite([even.clone()]));
        let brute = brute_force_ideal(&g, &PathSet::cofinite([even.clone()]), 1);
        for p in g.enumerate_paths(1) {
            assert_eq!(ideal.contains(&p), brute.contains(&p));
            assert_eq!(ideal.contains(&p), p != even);
        }

        // Excluding a rung evicts the rung and its source vertex.
        let rung = g.path("1", &["e1"]).unwrap();
        let ideal = largest_ideal_inside(&g, &PathSet::cofinite([rung.clone()]));
        let brute = brute_force_ideal(&g, &PathSet::cofinite([rung.clone()]), 1);
        let odd = Path::vertex(g.vertex("1").unwrap());
        for p in g.enumerate_paths(1) {
            assert_eq!(ideal.contains(&p), brute.contains(&p));
            assert_eq!(ideal.contains(&p), p != rung && p != odd);
        }

        // Inside a vertex-only set the odd vertices always fall out.
        let ideal = largest_ideal_inside(&g, &PathSet::Vertices);
        for v in g.vertices() {
            let number: u32 = g.vertex_name(v).parse().unwrap();
            assert_eq!(ideal.contains(&Path::vertex(v)), number.is_multiple_of(2));
        }
    }

    /// Window reference for the translation witness: `p` survives iff it
    /// lies in `f`, is no prefix of `build`, and is not `build k` with
    /// `test k` outside `f`.
    fn witness_member_reference(
        g: &Graph,
        f: &PathSet,
        build: &Path,
        test: &Path,
        p: &Path,
    ) -> bool {
        if !f.contains(p) || g.prefixes(build).contains(p) {
            return false;
        }
        match g.strip_prefix(build, p) {
            Some(k) => f.contains(&g.concat(test, &k).expect("common range")),
            None => true,
        }
    }

    #[test]
    fn translation_witnesses_match_the_window_reference() {
        for g in [g1(), Graph::rose(2), Graph::ladder(3)] {
            let window = g.enumerate_paths(4);
            let pool = g.enumerate_paths(2);
            let long_path = window.iter().rev().find(|p| p.len() >= 2);
            let mut sets = vec![
                PathSet::All,
                PathSet::LongerThan(1),
                PathSet::LongerThan(3),
                PathSet::Vertices,
                PathSet::cofinite([pool[0].clone()]),
                PathSet::cofinite(pool.iter().take(3).cloned()),
                PathSet::Vertices.minus([pool[0].clone()]),
            ];
            if let Some(p) = long_path {
                sets.push(PathSet::LongerThan(1).minus([p.clone()]));
            }
            for f in &sets {
                for x in gis::enumerate_elements(&g, 2) {
                    let GisElement::NonZero { u: a, v: b } = &x else {
                        continue;
                    };
                    let (h, check) = witness_right_translation(&g, &x, f, 2).unwrap();
                    assert!(check.passed(), "{:?}", check.witness);
                    for p in &window {
                        assert_eq!(
                            h.contains(p),
                            witness_member_reference(&g, f, b, a, p),
                            "right witness for x = {} under F = {} at {}",
                            format_element(&g, &x),
                            f.describe(&g),
                            g.format_path(p)
                        );
                    }
                    let (w, check) = witness_left_translation(&g, &x, f, 2).unwrap();
                    assert!(check.passed(), "{:?}", check.witness);
                    for p in &window {
                        assert_eq!(
                            w.contains(p),
                            witness_member_reference(&g, f, a, b, p),
                            "left witness for x = {} under F = {}",
                            format_element(&g, &x),
                            f.describe(&g)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn largest_ideal_matches_the_continuation_reference() {
        // A path stays in the largest extension-closed subset exactly
        // when every continuation up to one step beyond the longest
        // excluded path stays inside the set.
        for g in [g1(), Graph::rose(2), Graph::ladder(3)] {
            let window = g.enumerate_paths(3);
            let pool = g.enumerate_paths(2);
            let sets = vec![
                PathSet::All,
                PathSet::LongerThan(1),
                PathSet::Vertices,
                PathSet::cofinite([pool[0].clone()]),
                PathSet::cofinite(pool.iter().take(4).cloned()),
                PathSet::Vertices.minus([pool[0].clone()]),
                PathSet::LongerThan(0).minus(pool.iter().rev().take(2).cloned()),
            ];
            for s in &sets {
                let (_, excluded) = s.decompose();
                let horizon = excluded.iter().map(Path::len).max().unwrap_or(0) + 1;
                let ideal = largest_ideal_inside(&g, s);
                for p in &window {
                    let expected = paths_from(&g, g.range(p), horizon)
                        .iter()
                        .all(|k| s.contains(&g.concat(p, k).expect("continuation composes")));
                    assert_eq!(
                        ideal.contains(p),
                        expected,
                        "largest ideal inside {} at {}",
                        s.describe(&g),
                        g.format_path(p)
                    );
                }
            }
        }
    }

    #[test]
    fn right_translation_witnesses() {
        let g = g1();
        let ee = GisElement::pair(
            &g,
            g.path("v1", &["e"]).unwrap(),
            g.path("v1", &["e"]).unwrap(),
        )
        .unwrap();
        let (h, check) = witness_right_translation(&g, &ee, &PathSet::LongerThan(2), 4).unwrap();
        assert!(check.passed(), "{:?}", check.witness);
        // H keeps clear of the prefixes of b.
        assert!(!h.contains(&g.path("v1", &["e"]).unwrap()));

        // F = everything: only the prefixes of b are removed.
        let (h, check) = witness_right_translation(&g, &ee, &PathSet::All, 3).unwrap();
        assert!(check.passed());
        let v1 = Path::vertex(g.vertex("v1").unwrap());
        assert!(!h.contains(&v1));
        assert!(!h.contains(&g.path("v1", &["e"]).unwrap()));
        assert!(h.contains(&g.path("v1", &["f"]).unwrap()));

        assert!(matches!(
            witness_right_translation(&g, &GisElement::Zero, &PathSet::All, 2),
            Err(TopologyError::ZeroElement)
        ));
    }

    #[test]
    fn left_translation_witnesses() {
        let ladder = Graph::ladder(3);
        let spec_paths = ladder.enumerate_paths(1);
        let f = PathSet::cofinite([spec_paths[0].clone()]);
        for x in gis::enumerate_elements(&ladder, 1) {
            if x.is_zero() {
                continue;
            }
            let (_, check) = witness_left_translation(&ladder, &x, &f, 2).unwrap();
            assert!(check.passed(), "{:?}", check.witness);
        }
        // Idempotents under a length base set.
        let rose = Graph::rose(2);
        for x in gis::enumerate_elements(&rose, 2) {
            if !gis::is_idempotent(&x) || x.is_zero() {
                continue;
            }
            let (_, check) =
                witness_left_translation(&rose, &x, &PathSet::LongerThan(1), 3).unwrap();
            assert!(check.passed(), "{:?}", check.witness);
        }
    }

    #[test]
    fn product_witness_for_the_two_canonical_filters() {
        let g = g1();
        let (t, checks) = witness_product(&g, &FilterSpec::Length { n: 1 }, 4, 3).unwrap();
        assert_eq!(t, PathSet::LongerThan(1));
        assert!(checks.iter().all(CheckResult::passed));

        let v1 = Path::vertex(g.vertex("v1").unwrap());
        let filter = FilterSpec::Cofinite {
            excluded: [v1.clone()].into_iter().collect(),
        };
        let (t, checks) = witness_product(&g, &filter, 4, 3).unwrap();
        assert!(checks.iter().all(CheckResult::passed));
        assert!(!t.contains(&v1));
    }

    #[test]
    fn ladder_filter_has_no_ideal_base() {
        let g = Graph::ladder(3);
        // Base: vertex sets missing at most one vertex.
        let mut sets = vec![PathSet::Vertices];
        for v in g.vertices() {
            sets.push(PathSet::Vertices.minus([Path::vertex(v)]));
        }
        let filter = FilterSpec::Explicit { sets };
        assert_eq!(
            witness_product(&g, &filter, 3, 2).err(),
            Some(TopologyError::NoIdealBase)
        );
    }

    #[test]
    fn condition_i_examples() {
        let g = g1();
        let e_path = g.path("v1", &["e"]).unwrap();
        let f_path = g.path("v1", &["f"]).unwrap();

        // Cofinite filter: the removed set is computed exactly.
        let filter = FilterSpec::Cofinite {
            excluded: [e_path.clone(), f_path.clone()].into_iter().collect(),
        };
        let check = check_condition_i(&g, &filter, &e_path, &f_path, 4).unwrap();
        assert!(check.passed());

        // a = b removes nothing.
        let filter = FilterSpec::Length { n: 2 };
        let check = check_condition_i(&g, &filter, &e_path, &e_path, 4).unwrap();
        assert!(check.passed());

        // Nothing excluded.
        let filter = FilterSpec::Cofinite {
            excluded: BTreeSet::new(),
        };
        let check = check_condition_i(&g, &filter, &e_path, &f_path, 4).unwrap();
        assert!(check.passed());

        // Mismatched ranges are a precondition violation.
        let v1 = Path::vertex(g.vertex("v1").unwrap());
        assert!(matches!(
            check_condition_i(&g, &filter, &v1, &e_path, 4),
            Err(TopologyError::RangeMismatch)
        ));
    }

    #[test]
    fn ladder_filter_satisfies_the_first_two_conditions() {
        // The vertex-set filter on the ladder fails only the ideal-base
        // condition; removal sets stay finite and the family refines
        // every cofinite set within the window.
        let g = Graph::ladder(3);
        let mut sets = vec![PathSet::Vertices];
        for v in g.vertices() {
            sets.push(PathSet::Vertices.minus([Path::vertex(v)]));
        }
        let filter = FilterSpec::Explicit { sets };

        let paths = g.enumerate_paths(1);
        for a in &paths {
            for b in &paths {
                if g.range(a) != g.range(b) {
                    continue;
                }
                let check = check_condition_i(&g, &filter, a, b, 3).unwrap();
                assert!(
                    check.passed(),
                    "condition (i) at a = {}, b = {}: {:?}",
                    g.format_path(a),
                    g.format_path(b),
                    check.witness
                );
            }
        }
        assert!(check_condition_ii(&g, &filter, 1).passed());
        let third = check_condition_iii(&g, &filter, 3, 1);
        assert!(!third.passed());
        assert!(third.witness.as_deref().unwrap().contains("no ideal base"));
    }

    #[test]
    fn condition_ii_fails_without_refinement() {
        // A base consisting of the full path set never omits anything,
        // so the cofinite sets are not refined.
        let g = g1();
        let filter = FilterSpec::Explicit {
            sets: vec![PathSet::All],
        };
        let check = check_condition_ii(&g, &filter, 2);
        assert!(!check.passed());
    }

    #[test]
    fn coarsest_identity_on_small_graphs() {
        let g = g1();
        let e_path = g.path("v1", &["e"]).unwrap();
        let check = coarsest_identity_check(&g, &[e_path].into_iter().collect(), 3);
        assert!(check.passed(), "{:?}", check.witness);

        let check = coarsest_identity_check(&g, &BTreeSet::new(), 3);
        assert!(check.passed());

        let ladder = Graph::ladder(3);
        let excluded: BTreeSet<Path> = ladder.vertices().take(2).map(Path::vertex).collect();
        let check = coarsest_identity_check(&ladder, &excluded, 2);
        assert!(check.passed());
    }

    #[test]
    fn main1_identity_on_g1_and_rose() {
        let g = g1();
        let spec = EmbeddingSpec::canonical(&g);
        let check = main1_identity_check(&g, &spec, 0, 3).unwrap();
        assert!(check.passed(), "{:?}", check.witness);
        // n = trunc - 1 leaves only zero on both sides.
        let check = main1_identity_check(&g, &spec, 2, 4).unwrap();
        assert!(check.passed());

        let rose = Graph::rose(2);
        let spec = EmbeddingSpec::canonical(&rose);
        let check = main1_identity_check(&rose, &spec, 1, 4).unwrap();
        assert!(check.passed(), "{:?}", check.witness);

        assert!(matches!(
            main1_identity_check(&rose, &spec, 3, 4),
            Err(TopologyError::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn main2_witnesses_hold() {
        let g = g1();
        let spec = EmbeddingSpec::canonical(&g);

        let words: BTreeSet<Word> = [vec![0, 2], vec![1]].into_iter().collect();
        let check = main2_witness(
            &g,
            &spec,
            &Main2Witness::Continuity {
                excluded_words: words,
            },
            3,
        );
        assert!(check.passed(), "{:?}", check.witness);

        let v1 = Path::vertex(g.vertex("v1").unwrap());
        let check = main2_witness(
            &g,
            &spec,
            &Main2Witness::Openness {
                excluded_paths: [v1].into_iter().collect(),
            },
            3,
        );
        assert!(check.passed(), "{:?}", check.witness);

        // Empty exclusions: both containments are trivial.
        let check = main2_witness(
            &g,
            &spec,
            &Main2Witness::Continuity {
                excluded_words: BTreeSet::new(),
            },
            3,
        );
        assert!(check.passed());
        let check = main2_witness(
            &g,
            &spec,
            &Main2Witness::Openness {
                excluded_paths: BTreeSet::new(),
            },
            3,
        );
        assert!(check.passed());
    }
}
