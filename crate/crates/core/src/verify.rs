//! Batch verification suites: inverse-semigroup axioms, the embedding
//! sweep, the composite embedding into two generators, the rewriting
//! engine, and the topology checks. Each suite returns a structured
//! report; sweeps parallelize over element indices.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::embed::{self, EmbeddingReport, EmbeddingSpec};
use crate::expr::format_element;
use crate::gis::{self, GisElement};
use crate::graph::{Graph, Path};
use crate::poly::{self, PolyElement, PolyLetter, Strategy, Word};
use crate::report::{CheckResult, SuiteReport, TopologyReport};
use crate::topology::{
    self, check_condition_i, check_condition_ii, check_condition_iii, coarsest_identity_check,
    main1_identity_check, main2_witness, nbhd_contains, subsets_up_to, witness_left_translation,
    witness_right_translation, FilterSpec, Main2Witness, PathSet,
};

fn merge_checks(name: impl Into<String>, results: Vec<CheckResult>) -> CheckResult {
    let mut cases = 0;
    let mut witness = None;
    for r in results {
        cases += r.cases;
        if witness.is_none() && r.witness.is_some() {
            witness = r.witness.map(|w| format!("{}: {}", r.name, w));
        }
    }
    CheckResult::from_witness(name, witness, cases)
}

/// The inverse-semigroup axiom battery over all elements with path lengths
/// at most `bound` (inverse candidates range up to `2 * bound`).
pub fn axioms_suite(g: &Graph, label: &str, bound: usize) -> SuiteReport {
    let elems = gis::enumerate_elements(g, bound);
    let n = elems.len();
    let mut checks = Vec::new();

    // Associativity on all triples; right factors are cached.
    {
        let yz: Vec<GisElement> = (0..n * n)
            .into_par_iter()
            .map(|jk| gis::multiply(&elems[jk / n], &elems[jk % n]))
            .collect();
        let bad = (0..n).into_par_iter().find_map_first(|i| {
            for j in 0..n {
                let xy = gis::multiply(&elems[i], &elems[j]);
                for k in 0..n {
                    if gis::multiply(&xy, &elems[k]) != gis::multiply(&elems[i], &yz[j * n + k]) {
                        return Some((i, j, k));
                    }
                }
            }
            None
        });
        checks.push(CheckResult::from_witness(
            "associativity",
            bad.map(|(i, j, k)| {
                format!(
                    "x = {}, y = {}, z = {}",
                    format_element(g, &elems[i]),
                    format_element(g, &elems[j]),
                    format_element(g, &elems[k])
                )
            }),
            (n * n * n) as u64,
        ));
    }

    // x x^-1 x = x and x^-1 x x^-1 = x^-1.
    {
        let bad = elems.par_iter().find_map_first(|x| {
            let inv = gis::invert(x);
            let first = gis::multiply(&gis::multiply(x, &inv), x) == *x;
            let second = gis::multiply(&gis::multiply(&inv, x), &inv) == inv;
            (!(first && second)).then(|| format_element(g, x))
        });
        checks.push(CheckResult::from_witness(
            "inverse_axioms",
            bad.map(|x| format!("x = {x}")),
            n as u64,
        ));
    }

    // The inverse is unique among elements at twice the bound.
    {
        let candidates = gis::enumerate_elements(g, 2 * bound);
        let bad = elems.par_iter().find_map_first(|x| {
            let inv = gis::invert(x);
            for y in &candidates {
                if *y == inv {
                    continue;
                }
                if gis::multiply(&gis::multiply(x, y), x) == *x
                    && gis::multiply(&gis::multiply(y, x), y) == *y
                {
                    return Some(format!(
                        "x = {} also has the inverse {}",
                        format_element(g, x),
                        format_element(g, y)
                    ));
                }
            }
            None
        });
        checks.push(CheckResult::from_witness(
            "uniqueness_of_inverse",
            bad,
            (n * candidates.len()) as u64,
        ));
    }

    // (x y)^-1 = y^-1 x^-1.
    {
        let bad = (0..n).into_par_iter().find_map_first(|i| {
            for j in 0..n {
                if gis::invert(&gis::multiply(&elems[i], &elems[j]))
                    != gis::multiply(&gis::invert(&elems[j]), &gis::invert(&elems[i]))
                {
                    return Some(format!(
                        "x = {}, y = {}",
                        format_element(g, &elems[i]),
                        format_element(g, &elems[j])
                    ));
                }
            }
            None
        });
        checks.push(CheckResult::from_witness(
            "anti_homomorphism",
            bad,
            (n * n) as u64,
        ));
    }

    // Idempotents commute.
    {
        let idempotents: Vec<&GisElement> =
            elems.iter().filter(|x| gis::is_idempotent(x)).collect();
        let mut witness = None;
        'outer: for x in &idempotents {
            for y in &idempotents {
                if gis::multiply(x, y) != gis::multiply(y, x) {
                    witness = Some(format!(
                        "e = {}, f = {}",
                        format_element(g, x),
                        format_element(g, y)
                    ));
                    break 'outer;
                }
            }
        }
        checks.push(CheckResult::from_witness(
            "idempotents_commute",
            witness,
            (idempotents.len() * idempotents.len()) as u64,
        ));
    }

    // (phi, psi) separates elements.
    {
        let mut seen = HashSet::new();
        let mut witness = None;
        for x in &elems {
            if !seen.insert(gis::h_pair(x)) && witness.is_none() {
                witness = Some(format!("h pair collision at {}", format_element(g, x)));
            }
        }
        checks.push(CheckResult::from_witness(
            "h_pair_injective",
            witness,
            n as u64,
        ));
    }

    SuiteReport::new("axioms", Some(label.to_string()), Some(bound), checks)
}

fn letter_words(arity: u32, max_len: usize) -> Vec<Vec<PolyLetter>> {
    let alphabet: Vec<PolyLetter> = (0..arity)
        .map(PolyLetter::Pos)
        .chain((0..arity).map(PolyLetter::Neg))
        .collect();
    let mut all: Vec<Vec<PolyLetter>> = vec![Vec::new()];
    let mut level = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for &l in &alphabet {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

/// Bicyclic normal form `q^a p^b` with `p q = 1`; the reference product
/// uses the max-based formula, an algebraic route independent of the
/// prefix comparison in `poly::multiply`.
fn bicyclic_product(lhs: (u64, u64), rhs: (u64, u64)) -> (u64, u64) {
    let ((a, b), (c, d)) = (lhs, rhs);
    let t = b.max(c);
    (a + t - b, d + t - c)
}

fn path_matches_word(p: &Path, tail: &[crate::graph::EdgeId], w: &[u32], wtail: &[u32]) -> bool {
    p.len() + tail.len() == w.len() + wtail.len()
        && p.edges()
            .iter()
            .chain(tail.iter())
            .map(|e| e.index() as u32)
            .eq(w.iter().chain(wtail.iter()).copied())
}

/// Allocation-free comparison of the two product routes on a rose graph,
/// where edge index `i` is identified with generator index `i`.
fn rose_products_agree(x: &GisElement, y: &GisElement, px: &PolyElement, py: &PolyElement) -> bool {
    use crate::gis::ProductParts as G;
    use crate::poly::ProductParts as P;
    static EMPTY: [u32; 0] = [];
    match (gis::multiply_parts(x, y), poly::multiply_parts(px, py)) {
        (G::Zero, P::Zero) => true,
        (G::OnLeft { u, tail, v }, P::OnLeft { x, tail: wt, y }) => {
            path_matches_word(u, tail, x, wt) && path_matches_word(v, &[], y, &EMPTY)
        }
        (G::OnRight { u, v, tail }, P::OnRight { x, y, tail: wt }) => {
            path_matches_word(u, &[], x, &EMPTY) && path_matches_word(v, tail, y, wt)
        }
        _ => false,
    }
}

/// `reduce(w1 ++ w2) = reduce(w1) * reduce(w2)` over all pairs of
/// two-generator letter words of length at most `max_len`.
pub fn reduction_homomorphism_check(max_len: usize) -> CheckResult {
    let words = letter_words(2, max_len);
    let reduced: Vec<PolyElement> = words.iter().map(|w| poly::reduce(w)).collect();
    let n = words.len();
    let bad = (0..n)
        .into_par_iter()
        .map_init(Vec::new, |scratch: &mut Vec<PolyLetter>, i| {
            for j in 0..n {
                scratch.clear();
                scratch.extend_from_slice(&words[i]);
                scratch.extend_from_slice(&words[j]);
                if poly::reduce(scratch) != poly::multiply(&reduced[i], &reduced[j]) {
                    return Some((i, j));
                }
            }
            None
        })
        .find_map_first(|r| r);
    CheckResult::from_witness(
        "reduction_homomorphism",
        bad.map(|(i, j)| {
            format!(
                "w1 = [{}], w2 = [{}]",
                poly::format_letters(&words[i]),
                poly::format_letters(&words[j])
            )
        }),
        (n * n) as u64,
    )
}

/// Leftmost- and rightmost-innermost strategies agree on seeded random
/// two-generator words.
pub fn strategy_confluence_check(seed: u64, samples: usize, max_len: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness = None;
    for _ in 0..samples {
        let len = rng.random_range(0..=max_len);
        let word: Vec<PolyLetter> = (0..len)
            .map(|_| {
                let index = rng.random_range(0..2u32);
                if rng.random_bool(0.5) {
                    PolyLetter::Pos(index)
                } else {
                    PolyLetter::Neg(index)
                }
            })
            .collect();
        let left = poly::reduce_with(&word, Strategy::LeftmostInnermost);
        let right = poly::reduce_with(&word, Strategy::RightmostInnermost);
        if left != right && witness.is_none() {
            witness = Some(format!(
                "strategies disagree on [{}]",
                poly::format_letters(&word)
            ));
        }
    }
    CheckResult::from_witness("strategy_confluence", witness, samples as u64)
}

/// One generator: reduced words never collapse and multiply like the
/// bicyclic monoid with an adjoined zero.
pub fn bicyclic_reference_check(max_len: usize) -> CheckResult {
    let words = letter_words(1, max_len);
    let mut elements: BTreeSet<PolyElement> = BTreeSet::new();
    let mut witness = None;
    for w in &words {
        let r = poly::reduce(w);
        if r.is_zero() {
            witness = Some(format!(
                "one-generator word [{}] reduced to zero",
                poly::format_letters(w)
            ));
        } else {
            elements.insert(r);
        }
    }
    let mut cases = words.len() as u64;
    for a in &elements {
        for b in &elements {
            cases += 1;
            let (PolyElement::NonZero { x: ax, y: ay }, PolyElement::NonZero { x: bx, y: by }) =
                (a, b)
            else {
                unreachable!()
            };
            let expected = bicyclic_product(
                (ax.len() as u64, ay.len() as u64),
                (bx.len() as u64, by.len() as u64),
            );
            let got = poly::multiply(a, b);
            let matches = match &got {
                PolyElement::Zero => false,
                PolyElement::NonZero { x, y } => (x.len() as u64, y.len() as u64) == expected,
            };
            if !matches && witness.is_none() {
                witness = Some(format!(
                    "{} * {} = {} but the bicyclic form expects {:?}",
                    poly::format_element(a),
                    poly::format_element(b),
                    poly::format_element(&got),
                    expected
                ));
            }
        }
    }
    CheckResult::from_witness("bicyclic_reference", witness, cases)
}

/// The two normal-form calculi agree on the rose graph with the given
/// number of loops, over all elements at `word_len`.
pub fn rose_agreement_check(loops: u32, word_len: usize) -> CheckResult {
    let g = Graph::rose(loops);
    let elems = gis::enumerate_elements(&g, word_len);
    let images: Vec<PolyElement> = elems
        .iter()
        .map(|x| match x {
            GisElement::Zero => PolyElement::Zero,
            GisElement::NonZero { u, v } => PolyElement::pair(
                u.edges().iter().map(|e| e.index() as u32).collect(),
                v.edges().iter().map(|e| e.index() as u32).collect(),
            ),
        })
        .collect();
    // Sanity: the translation is a bijection onto the word pairs.
    {
        let as_set: HashSet<&PolyElement> = images.iter().collect();
        let direct = poly::enumerate_elements(loops, word_len);
        assert_eq!(as_set.len(), images.len());
        assert_eq!(direct.len(), images.len());
        assert!(direct.iter().all(|e| as_set.contains(e)));
    }
    let n = elems.len();
    let bad = (0..n).into_par_iter().find_map_first(|i| {
        for j in 0..n {
            if !rose_products_agree(&elems[i], &elems[j], &images[i], &images[j]) {
                return Some((i, j));
            }
        }
        None
    });
    CheckResult::from_witness(
        format!("rose_agreement(loops = {loops})"),
        bad.map(|(i, j)| {
            format!(
                "x = {}, y = {}",
                format_element(&g, &elems[i]),
                format_element(&g, &elems[j])
            )
        }),
        (n * n) as u64,
    )
}

/// Rewriting soundness: the reduction homomorphism law, seeded strategy
/// independence, the bicyclic reference for one generator, and agreement
/// of the two product calculi on rose graphs.
pub fn rewriting_suite(seed: u64, samples: usize, random_max_len: usize) -> SuiteReport {
    let mut checks = vec![
        reduction_homomorphism_check(6),
        strategy_confluence_check(seed, samples, random_max_len),
        bicyclic_reference_check(6),
    ];
    for loops in [1, 2, 3] {
        checks.push(rose_agreement_check(loops, 4));
    }
    SuiteReport::new("rewriting", None, None, checks)
}

/// The composite embedding into two generators: injectivity and
/// multiplicativity at `bound`, plus the prefix-code relations for indices
/// up to `code_index_max`.
pub fn p2_suite(g: &Graph, label: &str, bound: usize, code_index_max: u32) -> SuiteReport {
    let spec = EmbeddingSpec::canonical(g);
    let elems = gis::enumerate_elements(g, bound);
    let images: Vec<PolyElement> = elems
        .iter()
        .map(|x| embed::embed_element_p2(g, &spec, x))
        .collect();
    let mut checks = Vec::new();

    {
        let mut seen: HashSet<&PolyElement> = HashSet::new();
        let mut witness = None;
        for (x, fx) in elems.iter().zip(&images) {
            if !seen.insert(fx) && witness.is_none() {
                witness = Some(format!("image collision at {}", format_element(g, x)));
            }
            if !x.is_zero() && fx.is_zero() && witness.is_none() {
                witness = Some(format!("zero image at {}", format_element(g, x)));
            }
        }
        checks.push(CheckResult::from_witness(
            "composite_injective",
            witness,
            elems.len() as u64,
        ));
    }

    {
        let n = elems.len();
        let bad = (0..n).into_par_iter().find_map_first(|i| {
            for j in 0..n {
                let product = gis::multiply(&elems[i], &elems[j]);
                if embed::embed_element_p2(g, &spec, &product)
                    != poly::multiply(&images[i], &images[j])
                {
                    return Some(format!(
                        "x = {}, y = {}",
                        format_element(g, &elems[i]),
                        format_element(g, &elems[j])
                    ));
                }
            }
            None
        });
        checks.push(CheckResult::from_witness(
            "composite_multiplicative",
            bad,
            (n * n) as u64,
        ));
    }

    {
        let mut witness = None;
        let mut cases = 0u64;
        for i in 0..=code_index_max {
            for j in 0..=code_index_max {
                cases += 1;
                let mut letters: Vec<PolyLetter> = Vec::new();
                letters.push(PolyLetter::Neg(0));
                letters.extend(std::iter::repeat_n(PolyLetter::Neg(1), i as usize));
                letters.extend(std::iter::repeat_n(PolyLetter::Pos(1), j as usize));
                letters.push(PolyLetter::Pos(0));
                let reduced = poly::reduce(&letters);
                let expected = if i == j {
                    PolyElement::one()
                } else {
                    PolyElement::Zero
                };
                if reduced != expected && witness.is_none() {
                    witness = Some(format!(
                        "q_{i}^-1 q_{j} reduced to {}",
                        poly::format_element(&reduced)
                    ));
                }
            }
        }
        checks.push(CheckResult::from_witness(
            "prefix_code_relations",
            witness,
            cases,
        ));
    }

    SuiteReport::new("p2", Some(label.to_string()), Some(bound), checks)
}

/// Knobs for the topology battery. The defaults match the documented
/// desk-scale configuration.
#[derive(Debug, Clone)]
pub struct TopologyConfig {
    pub length_ns: Vec<usize>,
    pub cofinite_max_excluded: usize,
    pub trunc: usize,
    pub bound: usize,
    pub coarsest_filters: usize,
    pub coarsest_bound: usize,
    pub main1_ns: Vec<usize>,
    pub main1_trunc: usize,
    pub main2_max_excluded: usize,
    pub main2_trunc: usize,
}

impl Default for TopologyConfig {
    fn default() -> Self {
        TopologyConfig {
            length_ns: vec![0, 1, 2],
            cofinite_max_excluded: 3,
            trunc: 5,
            bound: 2,
            coarsest_filters: 20,
            coarsest_bound: 3,
            main1_ns: vec![0, 1, 2],
            main1_trunc: 4,
            main2_max_excluded: 2,
            main2_trunc: 3,
        }
    }
}

fn filter_battery(g: &Graph, filter: &FilterSpec, trunc: usize, bound: usize) -> Vec<CheckResult> {
    let f = filter.base_set();
    let elems = gis::enumerate_elements(g, bound);
    let mut checks = Vec::new();

    // Condition (i) over all window pairs with a common range.
    {
        let paths = g.enumerate_paths(bound);
        let mut results = Vec::new();
        for a in &paths {
            for b in &paths {
                if g.range(a) == g.range(b) {
                    results.push(check_condition_i(g, filter, a, b, trunc).expect("ranges match"));
                }
            }
        }
        checks.push(merge_checks("condition_i", results));
    }
    checks.push(check_condition_ii(g, filter, trunc));
    checks.push(check_condition_iii(g, filter, trunc, bound));

    // Translation witnesses for every non-zero element.
    let mut right = Vec::new();
    let mut left = Vec::new();
    for x in &elems {
        if x.is_zero() {
            continue;
        }
        right.push(
            witness_right_translation(g, x, &f, bound)
                .expect("non-zero element")
                .1,
        );
        left.push(
            witness_left_translation(g, x, &f, bound)
                .expect("non-zero element")
                .1,
        );
    }
    checks.push(merge_checks("right_translations", right));
    checks.push(merge_checks("left_translations", left));

    // U_F(0) is symmetric under inversion.
    {
        let mut witness = None;
        for x in &elems {
            if nbhd_contains(&f, x) != nbhd_contains(&f, &gis::invert(x)) {
                witness = Some(format_element(g, x));
                break;
            }
        }
        checks.push(CheckResult::from_witness(
            "inversion_symmetry",
            witness,
            elems.len() as u64,
        ));
    }

    checks
}

/// The full topology battery: the two canonical filters, Hausdorff
/// separation, the coarsest-topology identity, and the two
/// topological-embedding identities.
pub fn topology_suite(g: &Graph, label: &str, cfg: &TopologyConfig) -> Vec<TopologyReport> {
    let spec = EmbeddingSpec::canonical(g);
    let mut reports = Vec::new();

    for &n in &cfg.length_ns {
        let filter = FilterSpec::Length { n };
        reports.push(TopologyReport::new(
            format!("{label}: {}", filter.describe(g)),
            cfg.trunc,
            filter_battery(g, &filter, cfg.trunc, cfg.bound),
        ));
    }

    {
        let pool = g.enumerate_paths(cfg.bound);
        let subsets = subsets_up_to(&pool, cfg.cofinite_max_excluded);
        let mut batches: Vec<Vec<CheckResult>> = Vec::new();
        for excluded in &subsets {
            let filter = FilterSpec::Cofinite {
                excluded: excluded.iter().cloned().collect(),
            };
            batches.push(filter_battery(g, &filter, cfg.trunc, cfg.bound));
        }
        // Merge column-wise so each named check is reported once.
        let names: Vec<String> = batches[0].iter().map(|c| c.name.clone()).collect();
        let mut merged = Vec::new();
        for (col, name) in names.iter().enumerate() {
            merged.push(merge_checks(
                name.clone(),
                batches.iter().map(|b| b[col].clone()).collect(),
            ));
        }
        reports.push(TopologyReport::new(
            format!(
                "{label}: cofinite filter (excluded sets of size <= {} from {} paths)",
                cfg.cofinite_max_excluded,
                pool.len()
            ),
            cfg.trunc,
            merged,
        ));
    }

    // Hausdorff separation: the cofinite set omitting u and v expels
    // u v^-1 from its neighborhood.
    {
        let elems = gis::enumerate_elements(g, cfg.bound);
        let mut witness = None;
        let mut cases = 0u64;
        for x in &elems {
            let GisElement::NonZero { u, v } = x else {
                continue;
            };
            cases += 1;
            let f = PathSet::cofinite([u.clone(), v.clone()]);
            if nbhd_contains(&f, x) {
                witness = Some(format!(
                    "{} survives in U_F(0) for F omitting its paths",
                    format_element(g, x)
                ));
                break;
            }
        }
        reports.push(TopologyReport::new(
            format!("{label}: hausdorff separation"),
            cfg.bound,
            vec![CheckResult::from_witness("separation", witness, cases)],
        ));
    }

    // Coarsest-topology identity over deterministically enumerated
    // cofinite base sets.
    {
        let pool = g.enumerate_paths(cfg.coarsest_bound);
        let mut results = Vec::new();
        for excluded in subsets_up_to(&pool, pool.len()) {
            if results.len() >= cfg.coarsest_filters {
                break;
            }
            results.push(coarsest_identity_check(
                g,
                &excluded.into_iter().collect(),
                cfg.coarsest_bound,
            ));
        }
        let count = results.len();
        reports.push(TopologyReport::new(
            format!("{label}: coarsest-topology identity ({count} cofinite base sets)"),
            cfg.coarsest_bound,
            vec![merge_checks("coarsest_identity", results)],
        ));
    }

    // Level-shift identity of the embedding.
    {
        let mut results = Vec::new();
        for &n in &cfg.main1_ns {
            results.push(
                main1_identity_check(g, &spec, n, cfg.main1_trunc)
                    .expect("truncation exceeds n + 1"),
            );
        }
        reports.push(TopologyReport::new(
            format!("{label}: embedding level shift"),
            cfg.main1_trunc,
            vec![merge_checks("main1_identity", results)],
        ));
    }

    // Topological-embedding witnesses on both sides.
    {
        let paths = g.enumerate_paths(cfg.bound);
        let mut word_pool: Vec<Word> = paths
            .iter()
            .map(|p| embed::path_word(g, &spec, p))
            .collect();
        // A few undecodable words: edge-first and out-of-range letters.
        word_pool.push(vec![spec.arity().saturating_sub(1)]);
        word_pool.push(vec![spec.arity()]);
        let mut results = Vec::new();
        for excluded in subsets_up_to(&word_pool, cfg.main2_max_excluded) {
            results.push(main2_witness(
                g,
                &spec,
                &Main2Witness::Continuity {
                    excluded_words: excluded.into_iter().collect(),
                },
                cfg.main2_trunc,
            ));
        }
        let continuity = merge_checks("main2_continuity", results);

        let mut results = Vec::new();
        for excluded in subsets_up_to(&paths, cfg.main2_max_excluded) {
            results.push(main2_witness(
                g,
                &spec,
                &Main2Witness::Openness {
                    excluded_paths: excluded.into_iter().collect(),
                },
                cfg.main2_trunc,
            ));
        }
        let openness = merge_checks("main2_openness", results);
        reports.push(TopologyReport::new(
            format!(
                "{label}: topological-embedding witnesses (excluded sets of size <= {})",
                cfg.main2_max_excluded
            ),
            cfg.main2_trunc,
            vec![continuity, openness],
        ));
    }

    reports
}

pub use topology::ladder_example_suite;

/// One report of any suite kind, for aggregated output.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Report {
    Suite(SuiteReport),
    Embedding(EmbeddingReport),
    Topology(TopologyReport),
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Suite(r) => r.passed(),
            Report::Embedding(r) => r.passed(),
            Report::Topology(r) => r.passed(),
        }
    }

    pub fn render_text(&self) -> String {
        match self {
            Report::Suite(r) => r.render_text(),
            Report::Embedding(r) => r.render_text(),
            Report::Topology(r) => r.render_text(),
        }
    }
}

/// Everything at once on one graph: axioms, the embedding sweep, the P_2
/// composite, rewriting soundness, and the topology battery. When `rungs`
/// is given, the ladder counterexample suite is appended.
pub fn verify_all(
    g: &Graph,
    label: &str,
    bound: usize,
    trunc: usize,
    seed: u64,
    rungs: Option<u32>,
) -> Vec<Report> {
    let spec = EmbeddingSpec::canonical(g);
    let mut reports = vec![
        Report::Suite(axioms_suite(g, label, bound)),
        Report::Embedding(embed::verify_embedding(g, &spec, label, bound)),
        Report::Suite(p2_suite(g, label, bound.min(2), 8)),
        Report::Suite(rewriting_suite(seed, 10_000, 12)),
    ];
    let cfg = TopologyConfig {
        trunc,
        ..TopologyConfig::default()
    };
    reports.extend(
        topology_suite(g, label, &cfg)
            .into_iter()
            .map(Report::Topology),
    );
    if let Some(rungs) = rungs {
        reports.push(Report::Topology(ladder_example_suite(rungs, 2)));
    }
    reports
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
    fn axioms_pass_on_g1() {
        let report = axioms_suite(&g1(), "g1", 2);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn rewriting_passes_quickly() {
        // Small sample; the acceptance suite runs the documented sizes.
        let report = rewriting_suite(7, 500, 8);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn p2_passes_on_g1() {
        let report = p2_suite(&g1(), "g1", 2, 4);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn topology_passes_on_g1() {
        let cfg = TopologyConfig {
            cofinite_max_excluded: 2,
            coarsest_filters: 8,
            ..TopologyConfig::default()
        };
        for report in topology_suite(&g1(), "g1", &cfg) {
            assert!(report.passed(), "{}", report.render_text());
        }
    }

    #[test]
    fn ladder_suite_passes() {
        let report = ladder_example_suite(3, 1);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn subset_enumeration_counts() {
        let pool: Vec<u32> = (0..12).collect();
        assert_eq!(subsets_up_to(&pool, 3).len(), 1 + 12 + 66 + 220);
        assert_eq!(subsets_up_to(&pool, 0).len(), 1);
    }
}
