//! Decomposition reports: a stable diff-friendly text rendering and a
//! canonical JSON form that round-trips every field.

use serde::{Deserialize, Serialize};

use fiberprod::cover::BranchedCover;
use fiberprod::fiber::{
    components_pairwise_isomorphic, jacobian_report, FiberDecomposition, FiberError,
    JacobianOutcome,
};

pub const REPORT_FORMAT: &str = "fiberprod.decomposition";
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub format: String,
    pub version: u32,
    pub inputs: Vec<CoverSummary>,
    pub aligned_branch_set: Vec<String>,
    pub bound: usize,
    pub connected: bool,
    pub criteria: CriteriaSection,
    pub components: Vec<ComponentSection>,
    pub singular_points: Vec<SingularSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isomorphism: Option<IsomorphismSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobian: Option<JacobianSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSummary {
    pub degree: usize,
    pub base_genus: usize,
    pub genus: usize,
    pub regular: bool,
    pub branch: Vec<BranchSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSummary {
    pub label: String,
    pub cycle_type: Vec<usize>,
    pub padding: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaSection {
    pub cond1: bool,
    pub cond2: bool,
    pub a_values: Vec<AValue>,
    pub predicted_irreducible: bool,
    pub actual_component_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AValue {
    pub label: String,
    pub a1: u64,
    pub a2: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSection {
    pub id: usize,
    pub orbit_size: usize,
    pub d1: usize,
    pub d2: usize,
    pub genus: usize,
    pub branch_cycle_types: Vec<BranchSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularSection {
    pub label: String,
    pub n1: usize,
    pub n2: usize,
    pub cone_count: usize,
    pub disc_like: bool,
    /// Component id of each cone, in cone order.
    pub cone_components: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphismSection {
    pub all_isomorphic: bool,
    pub witnesses: Vec<WitnessSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_pair: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSection {
    pub from: usize,
    pub to: usize,
    /// Conjugator in cycle notation.
    pub conjugator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianSection {
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_hypothesis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_component: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_base: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_cover1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_cover2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_p: Option<usize>,
    pub isogeny: String,
}

fn cover_summary(cover: &BranchedCover) -> CoverSummary {
    CoverSummary {
        degree: cover.degree(),
        base_genus: cover.base_genus(),
        genus: cover.genus().expect("validated cover has a genus"),
        regular: cover.is_regular(),
        branch: cover
            .branch_points()
            .iter()
            .map(|bp| BranchSummary {
                label: bp.label.to_string(),
                cycle_type: bp.monodromy.cycle_type().lengths().to_vec(),
                padding: bp.padding,
            })
            .collect(),
    }
}

/// Options for the optional report sections.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    pub isomorphism: bool,
    pub jacobian: bool,
}

pub fn build_report(
    c1: &BranchedCover,
    c2: &BranchedCover,
    dec: &FiberDecomposition,
    options: ReportOptions,
) -> Result<DecompositionReport, FiberError> {
    let (a1, _) = dec.aligned();
    let isomorphism = options.isomorphism.then(|| {
        let iso = components_pairwise_isomorphic(dec);
        IsomorphismSection {
            all_isomorphic: iso.all_isomorphic,
            witnesses: iso
                .witnesses
                .iter()
                .map(|w| WitnessSection {
                    from: w.from,
                    to: w.to,
                    conjugator: w.conjugator.to_string(),
                })
                .collect(),
            failed_pair: iso.failed,
        }
    });
    let jacobian = if options.jacobian {
        let isogeny = "J(C) x J(S0) ~ J(S1) x J(S2) x P".to_string();
        Some(match jacobian_report(c1, c2, dec)? {
            JacobianOutcome::Applicable(r) => JacobianSection {
                applicable: true,
                failed_hypothesis: None,
                g_component: Some(r.g_component),
                g_base: Some(r.g_base),
                g_cover1: Some(r.g_cover1),
                g_cover2: Some(r.g_cover2),
                dim_p: Some(r.dim_p),
                isogeny,
            },
            JacobianOutcome::NotApplicable(h) => JacobianSection {
                applicable: false,
                failed_hypothesis: Some(h.to_string()),
                g_component: None,
                g_base: None,
                g_cover1: None,
                g_cover2: None,
                dim_p: None,
                isogeny,
            },
        })
    } else {
        None
    };

    Ok(DecompositionReport {
        format: REPORT_FORMAT.to_string(),
        version: REPORT_VERSION,
        inputs: vec![cover_summary(c1), cover_summary(c2)],
        aligned_branch_set: a1
            .branch_points()
            .iter()
            .map(|bp| bp.label.to_string())
            .collect(),
        bound: dec.bound,
        connected: dec.connected,
        criteria: CriteriaSection {
            cond1: dec.criteria.cond1,
            cond2: dec.criteria.cond2,
            a_values: dec
                .criteria
                .a_values
                .iter()
                .map(|(label, a1, a2)| AValue {
                    label: label.to_string(),
                    a1: *a1,
                    a2: *a2,
                })
                .collect(),
            predicted_irreducible: dec.criteria.predicted_irreducible,
            actual_component_count: dec.criteria.actual_component_count,
        },
        components: dec
            .components
            .iter()
            .enumerate()
            .map(|(id, c)| ComponentSection {
                id,
                orbit_size: c.orbit.len(),
                d1: c.d1,
                d2: c.d2,
                genus: c.genus,
                branch_cycle_types: c
                    .cover
                    .branch_points()
                    .iter()
                    .map(|bp| BranchSummary {
                        label: bp.label.to_string(),
                        cycle_type: bp.monodromy.cycle_type().lengths().to_vec(),
                        padding: bp.padding,
                    })
                    .collect(),
            })
            .collect(),
        singular_points: dec
            .singular_points
            .iter()
            .map(|sp| SingularSection {
                label: sp.label.to_string(),
                n1: sp.n1,
                n2: sp.n2,
                cone_count: sp.cone_count,
                disc_like: sp.disc_like(),
                cone_components: sp.cones.iter().map(|c| c.component).collect(),
            })
            .collect(),
        isomorphism,
        jacobian,
    })
}

fn format_type(lengths: &[usize]) -> String {
    let inner: Vec<String> = lengths.iter().map(ToString::to_string).collect();
    format!("({})", inner.join(","))
}

/// Stable, diff-friendly text rendering.
pub fn emit_text(report: &DecompositionReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    push(&mut out, "fiber product decomposition".to_string());
    for (k, input) in report.inputs.iter().enumerate() {
        push(
            &mut out,
            format!(
                "input {}: degree {}, base genus {}, genus {}, regular {}",
                k + 1,
                input.degree,
                input.base_genus,
                input.genus,
                input.regular
            ),
        );
        for b in &input.branch {
            push(
                &mut out,
                format!(
                    "  branch {}: {}{}",
                    b.label,
                    format_type(&b.cycle_type),
                    if b.padding { " pad" } else { "" }
                ),
            );
        }
    }
    push(
        &mut out,
        format!(
            "aligned branch set: [{}]",
            report.aligned_branch_set.join(", ")
        ),
    );
    push(&mut out, format!("bound: {}", report.bound));
    push(
        &mut out,
        format!(
            "criteria: cond1 {} cond2 {} predicted_irreducible {} actual {}",
            report.criteria.cond1,
            report.criteria.cond2,
            report.criteria.predicted_irreducible,
            report.criteria.actual_component_count
        ),
    );
    for a in &report.criteria.a_values {
        push(
            &mut out,
            format!("  a[{}]: ({}, {})", a.label, a.a1, a.a2),
        );
    }
    push(&mut out, format!("components: {}", report.components.len()));
    for c in &report.components {
        push(
            &mut out,
            format!(
                "component {}: orbit size: {}, d1: {}, d2: {}, genus: {}",
                c.id, c.orbit_size, c.d1, c.d2, c.genus
            ),
        );
        for b in &c.branch_cycle_types {
            push(
                &mut out,
                format!(
                    "  over {}: {}{}",
                    b.label,
                    format_type(&b.cycle_type),
                    if b.padding { " pad" } else { "" }
                ),
            );
        }
    }
    if report.singular_points.is_empty() {
        push(&mut out, "singular_points: []".to_string());
    } else {
        push(
            &mut out,
            format!("singular_points: {}", report.singular_points.len()),
        );
        for sp in &report.singular_points {
            let cones: Vec<String> = sp.cone_components.iter().map(ToString::to_string).collect();
            push(
                &mut out,
                format!(
                    "  at {}: orders ({}, {}), cone_count {}{}, components [{}]",
                    sp.label,
                    sp.n1,
                    sp.n2,
                    sp.cone_count,
                    if sp.disc_like { " (disc-like)" } else { "" },
                    cones.join(", ")
                ),
            );
        }
    }
    push(&mut out, format!("connected: {}", report.connected));
    if let Some(iso) = &report.isomorphism {
        push(
            &mut out,
            format!("components pairwise isomorphic: {}", iso.all_isomorphic),
        );
        for w in &iso.witnesses {
            push(
                &mut out,
                format!("  conjugator {} -> {}: {}", w.from, w.to, w.conjugator),
            );
        }
        if let Some((a, b)) = iso.failed_pair {
            push(&mut out, format!("  non-isomorphic pair: ({a}, {b})"));
        }
    }
    if let Some(jac) = &report.jacobian {
        if jac.applicable {
            push(
                &mut out,
                format!(
                    "jacobian: {} with g_C {} g0 {} g1 {} g2 {} dim_P {}",
                    jac.isogeny,
                    jac.g_component.unwrap(),
                    jac.g_base.unwrap(),
                    jac.g_cover1.unwrap(),
                    jac.g_cover2.unwrap(),
                    jac.dim_p.unwrap()
                ),
            );
        } else {
            push(
                &mut out,
                format!(
                    "jacobian: not applicable ({})",
                    jac.failed_hypothesis.as_deref().unwrap_or("unknown")
                ),
            );
        }
    }
    out
}

/// Canonical JSON: fixed field order, two-space indentation, trailing
/// newline; byte-identical across runs for equal reports.
pub fn emit_json(report: &DecompositionReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

pub fn parse_json(text: &str) -> Result<DecompositionReport, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fiberprod::fiber::decompose;
    use fiberprod::label::BranchLabel as L;

    fn z3() -> BranchedCover {
        BranchedCover::over_sphere(
            3,
            &[
                (L::integer(0), "(1 2 3)"),
                (L::integer(1), "(1 2 3)"),
                (L::Infinity, "(1 2 3)"),
            ],
        )
        .unwrap()
    }

    fn klein() -> BranchedCover {
        BranchedCover::over_sphere(
            4,
            &[
                (L::integer(0), "(1 2)(3 4)"),
                (L::integer(1), "(1 3)(2 4)"),
                (L::Infinity, "(1 4)(2 3)"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn text_report_contains_expected_lines() {
        let (c1, c2) = (z3(), klein());
        let dec = decompose(&c1, &c2).unwrap();
        let report = build_report(&c1, &c2, &dec, ReportOptions::default()).unwrap();
        let text = emit_text(&report);
        assert!(text.contains("components: 1"));
        assert!(text.contains("genus: 4"));
        assert!(!text.contains("singular_points: []"));
    }

    #[test]
    fn empty_singular_catalog_renders_as_empty_list() {
        let c1 = BranchedCover::over_sphere(2, &[(L::integer(0), "(1 2)"), (L::integer(1), "(1 2)")])
            .unwrap();
        let c2 = BranchedCover::over_sphere(
            2,
            &[(L::named("lambda"), "(1 2)"), (L::named("mu"), "(1 2)")],
        )
        .unwrap();
        let dec = decompose(&c1, &c2).unwrap();
        let report = build_report(&c1, &c2, &dec, ReportOptions::default()).unwrap();
        assert!(emit_text(&report).contains("singular_points: []"));
    }

    #[test]
    fn json_round_trips_all_fields() {
        let (c1, c2) = (z3(), klein());
        let dec = decompose(&c1, &c2).unwrap();
        let options = ReportOptions {
            isomorphism: true,
            jacobian: true,
        };
        let report = build_report(&c1, &c2, &dec, options).unwrap();
        let json = emit_json(&report);
        let parsed = parse_json(&json).unwrap();
        assert_eq!(parsed, report);
        // Canonical: emitting again is byte-identical.
        assert_eq!(emit_json(&parsed), json);
    }
}
