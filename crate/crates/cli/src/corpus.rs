//! The bundled corpus: inputs and frozen expected outputs for every worked
//! construction, executed as one pass/fail table.

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use fiberprod::cover::BranchedCover;
use fiberprod::dessin::{dessin_fiber_product, Dessin};
use fiberprod::fiber::{
    components_pairwise_isomorphic, decompose, jacobian_report, FiberDecomposition,
    JacobianOutcome,
};
use fiberprod::perm::{group_order_bounded, GroupOrder};

use crate::cover_file::parse_cover_file;
use crate::expr::parse_map_file;

pub const MANIFEST: &str = include_str!("../corpus/manifest.toml");

const FILES: &[(&str, &str)] = &[
    ("z3.cover", include_str!("../corpus/z3.cover")),
    ("klein.cover", include_str!("../corpus/klein.cover")),
    ("deg2_01.cover", include_str!("../corpus/deg2_01.cover")),
    (
        "deg2_lambda_mu.cover",
        include_str!("../corpus/deg2_lambda_mu.cover"),
    ),
    ("cyclic4.cover", include_str!("../corpus/cyclic4.cover")),
    ("cyclic6.cover", include_str!("../corpus/cyclic6.cover")),
    ("cyclic9.cover", include_str!("../corpus/cyclic9.cover")),
    ("cyclic12.cover", include_str!("../corpus/cyclic12.cover")),
    ("cyclic18.cover", include_str!("../corpus/cyclic18.cover")),
    ("gonal6_1_4.cover", include_str!("../corpus/gonal6_1_4.cover")),
    ("z7_1_2_4.cover", include_str!("../corpus/z7_1_2_4.cover")),
    ("fermat3.cover", include_str!("../corpus/fermat3.cover")),
    ("fermat4.cover", include_str!("../corpus/fermat4.cover")),
    ("genus2_z2.cover", include_str!("../corpus/genus2_z2.cover")),
    ("beta1.map", include_str!("../corpus/beta1.map")),
    ("beta2_plane.map", include_str!("../corpus/beta2_plane.map")),
    (
        "beta2_literal.map",
        include_str!("../corpus/beta2_literal.map"),
    ),
    ("quartic.map", include_str!("../corpus/quartic.map")),
    ("power6.map", include_str!("../corpus/power6.map")),
    ("deg2poly.map", include_str!("../corpus/deg2poly.map")),
];

pub fn corpus_file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus manifest is invalid: {0}")]
    Manifest(#[from] toml::de::Error),
}

#[derive(Debug, Deserialize)]
struct Manifest {
    case: Vec<Case>,
}

#[derive(Debug, Deserialize)]
struct Case {
    name: String,
    kind: String,
    input1: CaseInput,
    input2: Option<CaseInput>,
    #[allow(dead_code)]
    note: String,
    expect: CaseExpect,
}

#[derive(Debug, Deserialize)]
struct CaseInput {
    cover: Option<String>,
    map: Option<String>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CaseExpect {
    components: Option<usize>,
    orbit_sizes: Option<Vec<usize>>,
    genera: Option<Vec<usize>>,
    d_pairs: Option<Vec<[usize; 2]>>,
    connected: Option<bool>,
    bound: Option<usize>,
    bound_attained: Option<bool>,
    cond1: Option<bool>,
    cond2: Option<bool>,
    pairwise_isomorphic: Option<bool>,
    component_regular: Option<bool>,
    component_orders: Option<Vec<u64>>,
    singular: Option<SingularExpectTable>,
    dessin_count: Option<usize>,
    dessin_genera: Option<Vec<usize>>,
    valences: Option<Vec<ValenceExpect>>,
    branch_types: Option<Vec<BranchTypeExpect>>,
    map_genus: Option<usize>,
    map_degree: Option<usize>,
    dim_p: Option<usize>,
    g_component: Option<usize>,
    not_applicable: Option<String>,
}

#[derive(Debug, Deserialize)]
struct SingularExpectTable {
    points: Vec<SingularExpect>,
}

#[derive(Debug, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
struct SingularExpect {
    label: String,
    n1: usize,
    n2: usize,
    cones: usize,
}

#[derive(Debug, Deserialize)]
struct ValenceExpect {
    blacks: Vec<usize>,
    whites: Vec<usize>,
    faces: Vec<usize>,
}

#[derive(Debug, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
struct BranchTypeExpect {
    label: String,
    cycle_type: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CorpusOutcome {
    pub name: String,
    pub mismatches: Vec<String>,
}

impl CorpusOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn check<T: PartialEq + std::fmt::Debug>(
    mismatches: &mut Vec<String>,
    field: &str,
    expected: &Option<T>,
    actual: &T,
) {
    if let Some(expected) = expected {
        if expected != actual {
            mismatches.push(format!("{field}: expected {expected:?}, got {actual:?}"));
        }
    }
}

fn resolve_cover(input: &CaseInput) -> Result<BranchedCover, String> {
    if let Some(name) = &input.cover {
        let text = corpus_file(name).ok_or_else(|| format!("missing corpus file {name}"))?;
        parse_cover_file(text).map_err(|e| format!("{name}: {e}"))
    } else if let Some(name) = &input.map {
        let text = corpus_file(name).ok_or_else(|| format!("missing corpus file {name}"))?;
        let map = parse_map_file(text).map_err(|e| format!("{name}: {e}"))?;
        map.monodromy().map_err(|e| format!("{name}: {e}"))
    } else {
        Err("case input names neither a cover nor a map".into())
    }
}

fn check_fiber(case: &Case, dec: &FiberDecomposition, mismatches: &mut Vec<String>) {
    let e = &case.expect;
    check(mismatches, "components", &e.components, &dec.components.len());
    check(mismatches, "orbit_sizes", &e.orbit_sizes, &dec.orbit_sizes());
    check(mismatches, "genera", &e.genera, &dec.genera());
    if e.d_pairs.is_some() {
        let mut actual: Vec<[usize; 2]> =
            dec.components.iter().map(|c| [c.d1, c.d2]).collect();
        actual.sort_unstable();
        let mut expected = e.d_pairs.clone().unwrap();
        expected.sort_unstable();
        check(mismatches, "d_pairs", &Some(expected), &actual);
    }
    check(mismatches, "connected", &e.connected, &dec.connected);
    check(mismatches, "bound", &e.bound, &dec.bound);
    check(
        mismatches,
        "bound_attained",
        &e.bound_attained,
        &(dec.components.len() == dec.bound),
    );
    check(mismatches, "cond1", &e.cond1, &dec.criteria.cond1);
    check(mismatches, "cond2", &e.cond2, &dec.criteria.cond2);
    if e.pairwise_isomorphic.is_some() {
        let iso = components_pairwise_isomorphic(dec);
        check(
            mismatches,
            "pairwise_isomorphic",
            &e.pairwise_isomorphic,
            &iso.all_isomorphic,
        );
    }
    if e.component_regular.is_some() {
        let actual = dec.components.iter().all(|c| c.cover.is_regular());
        check(mismatches, "component_regular", &e.component_regular, &actual);
    }
    if e.component_orders.is_some() {
        let mut actual: Vec<u64> = dec
            .components
            .iter()
            .map(|c| {
                match group_order_bounded(&c.cover.generators(), c.orbit.len(), 1_000_000)
                    .expect("component generators share one degree")
                {
                    GroupOrder::Exact(order) => order,
                    GroupOrder::ExceedsCap => u64::MAX,
                }
            })
            .collect();
        actual.sort_unstable();
        check(mismatches, "component_orders", &e.component_orders, &actual);
    }
    if let Some(expected) = &e.singular {
        let mut actual: Vec<SingularExpect> = dec
            .singular_points
            .iter()
            .map(|sp| SingularExpect {
                label: sp.label.to_string(),
                n1: sp.n1,
                n2: sp.n2,
                cones: sp.cone_count,
            })
            .collect();
        actual.sort();
        let mut wanted: Vec<&SingularExpect> = expected.points.iter().collect();
        wanted.sort();
        let actual_refs: Vec<&SingularExpect> = actual.iter().collect();
        if wanted != actual_refs {
            mismatches.push(format!(
                "singular points: expected {wanted:?}, got {actual_refs:?}"
            ));
        }
    }
}

fn run_case(case: &Case) -> CorpusOutcome {
    let mut mismatches = Vec::new();
    match case.kind.as_str() {
        "fiber" => match (resolve_cover(&case.input1), case.input2.as_ref()) {
            (Ok(c1), Some(input2)) => match resolve_cover(input2) {
                Ok(c2) => match decompose(&c1, &c2) {
                    Ok(dec) => check_fiber(case, &dec, &mut mismatches),
                    Err(e) => mismatches.push(format!("decompose failed: {e}")),
                },
                Err(e) => mismatches.push(e),
            },
            (Err(e), _) => mismatches.push(e),
            (_, None) => mismatches.push("fiber case needs input2".into()),
        },
        "dessin" => match (resolve_cover(&case.input1), case.input2.as_ref()) {
            (Ok(c1), Some(input2)) => match resolve_cover(input2) {
                Ok(c2) => match (Dessin::from_cover(&c1), Dessin::from_cover(&c2)) {
                    (Ok(d1), Ok(d2)) => match dessin_fiber_product(&d1, &d2) {
                        Ok(parts) => {
                            let e = &case.expect;
                            check(&mut mismatches, "dessin_count", &e.dessin_count, &parts.len());
                            if e.dessin_genera.is_some() {
                                let mut genera: Vec<usize> = parts
                                    .iter()
                                    .map(|d| d.euler_genus().expect("valid dessin"))
                                    .collect();
                                genera.sort_unstable();
                                check(&mut mismatches, "dessin_genera", &e.dessin_genera, &genera);
                            }
                            if let Some(valences) = &e.valences {
                                if valences.len() != parts.len() {
                                    mismatches.push(format!(
                                        "valences: expected {} entries, got {} dessins",
                                        valences.len(),
                                        parts.len()
                                    ));
                                } else {
                                    for (k, (want, dessin)) in
                                        valences.iter().zip(&parts).enumerate()
                                    {
                                        let v = dessin.valence();
                                        if v.blacks != want.blacks
                                            || v.whites != want.whites
                                            || v.faces != want.faces
                                        {
                                            mismatches.push(format!(
                                                "valence of dessin {k}: expected ({:?}; {:?}; {:?}), got ({:?}; {:?}; {:?})",
                                                want.blacks, want.whites, want.faces,
                                                v.blacks, v.whites, v.faces
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                        Err(e) => mismatches.push(format!("dessin product failed: {e}")),
                    },
                    (Err(e), _) | (_, Err(e)) => {
                        mismatches.push(format!("not a dessin: {e}"))
                    }
                },
                Err(e) => mismatches.push(e),
            },
            (Err(e), _) => mismatches.push(e),
            (_, None) => mismatches.push("dessin case needs input2".into()),
        },
        "map" => {
            let name = match &case.input1.map {
                Some(name) => name.clone(),
                None => {
                    mismatches.push("map case needs a map input".into());
                    return CorpusOutcome {
                        name: case.name.clone(),
                        mismatches,
                    };
                }
            };
            let text = match corpus_file(&name) {
                Some(t) => t,
                None => {
                    mismatches.push(format!("missing corpus file {name}"));
                    return CorpusOutcome {
                        name: case.name.clone(),
                        mismatches,
                    };
                }
            };
            match parse_map_file(text) {
                Ok(map) => {
                    let e = &case.expect;
                    check(&mut mismatches, "map_degree", &e.map_degree, &map.degree());
                    match map.monodromy() {
                        Ok(cover) => {
                            check(
                                &mut mismatches,
                                "map_genus",
                                &e.map_genus,
                                &cover.genus().expect("validated cover"),
                            );
                            if let Some(expected) = &e.branch_types {
                                let mut actual: Vec<BranchTypeExpect> = cover
                                    .branch_points()
                                    .iter()
                                    .map(|bp| BranchTypeExpect {
                                        label: bp.label.to_string(),
                                        cycle_type: bp.monodromy.cycle_type().lengths().to_vec(),
                                    })
                                    .collect();
                                actual.sort();
                                let mut wanted: Vec<&BranchTypeExpect> =
                                    expected.iter().collect();
                                wanted.sort();
                                let actual_refs: Vec<&BranchTypeExpect> = actual.iter().collect();
                                if wanted != actual_refs {
                                    mismatches.push(format!(
                                        "branch types: expected {wanted:?}, got {actual_refs:?}"
                                    ));
                                }
                            }
                        }
                        Err(e) => mismatches.push(format!("monodromy failed: {e}")),
                    }
                }
                Err(e) => mismatches.push(format!("{name}: {e}")),
            }
        }
        "jacobian" => match (resolve_cover(&case.input1), case.input2.as_ref()) {
            (Ok(c1), Some(input2)) => match resolve_cover(input2) {
                Ok(c2) => match decompose(&c1, &c2) {
                    Ok(dec) => match jacobian_report(&c1, &c2, &dec) {
                        Ok(JacobianOutcome::Applicable(r)) => {
                            let e = &case.expect;
                            check(&mut mismatches, "dim_p", &e.dim_p, &r.dim_p);
                            check(&mut mismatches, "g_component", &e.g_component, &r.g_component);
                            if let Some(h) = &e.not_applicable {
                                mismatches.push(format!(
                                    "expected not-applicable({h}), got an applicable report"
                                ));
                            }
                        }
                        Ok(JacobianOutcome::NotApplicable(h)) => {
                            let actual = h.to_string();
                            check(
                                &mut mismatches,
                                "not_applicable",
                                &case.expect.not_applicable,
                                &actual,
                            );
                            if case.expect.dim_p.is_some() {
                                mismatches
                                    .push(format!("expected a report, got not-applicable({h})"));
                            }
                        }
                        Err(e) => mismatches.push(format!("jacobian failed: {e}")),
                    },
                    Err(e) => mismatches.push(format!("decompose failed: {e}")),
                },
                Err(e) => mismatches.push(e),
            },
            (Err(e), _) => mismatches.push(e),
            (_, None) => mismatches.push("jacobian case needs input2".into()),
        },
        other => mismatches.push(format!("unknown case kind {other:?}")),
    }
    CorpusOutcome {
        name: case.name.clone(),
        mismatches,
    }
}

/// Runs every corpus case (concurrently; output order is the manifest order)
/// and returns one outcome per case.
pub fn run_corpus() -> Result<Vec<CorpusOutcome>, CorpusError> {
    let manifest: Manifest = toml::from_str(MANIFEST)?;
    Ok(manifest.case.par_iter().map(run_case).collect())
}

/// Renders the pass/fail table `corpus run` prints.
pub fn format_outcomes(outcomes: &[CorpusOutcome]) -> String {
    let width = outcomes
        .iter()
        .map(|o| o.name.len())
        .max()
        .unwrap_or(4)
        .max(4);
    let mut out = String::new();
    out.push_str(&format!("{:<width$}  status\n", "case"));
    for outcome in outcomes {
        let status = if outcome.passed() { "ok" } else { "MISMATCH" };
        out.push_str(&format!("{:<width$}  {status}\n", outcome.name));
        for m in &outcome.mismatches {
            out.push_str(&format!("{:<width$}    {m}\n", ""));
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    out.push_str(&format!(
        "{} cases, {} passed, {} failed\n",
        outcomes.len(),
        outcomes.len() - failed,
        failed
    ));
    out
}
