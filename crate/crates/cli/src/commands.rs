use std::fmt::Write as _;

use bierkr::exactgeom::{format_rational, PointConfiguration};
use bierkr::metricgraph::{
    geodesic_metric, kr_generators, kr_generators_graph, tree_cross_polytope_check,
    validate_metric, vertex_facet_family, FiniteMetric, KrLabel,
};
use bierkr::realization::{
    fan_check, perm_equivalence, star_volume, verify_kr_bier, verify_q_alpha, GaleConfiguration,
    QAlphaOptions,
};
use bierkr::report::VerificationReport;
use bierkr::sampling::Sampler;
use bierkr::simplicial::{
    alexander_dual, bier_facets, family_to_json, BierFace, FVector, SimplicialComplex,
};
use bierkr::threshold::{
    is_generic, short_sets, threshold_complex, threshold_warning, GenericityReport, Permutation,
    Quota,
};
use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{self, err, InputError};
use crate::{BatchKind, Cli, Command, Format};

pub struct Output {
    pub json: Value,
    pub text: String,
    pub status: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            status: 0,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                serde_json::to_string_pretty(&self.json).expect("values serialize") + "\n"
            }
            Format::Text if self.text.ends_with('\n') => self.text.clone(),
            Format::Text => format!("{}\n", self.text),
        }
    }
}

fn complex_text(k: &SimplicialComplex) -> String {
    let facets: Vec<String> = k.facets().iter().map(ToString::to_string).collect();
    format!(
        "n = {}\nfacets: {}",
        k.ground_size(),
        if facets.is_empty() {
            "(none)".into()
        } else {
            facets.join(" ")
        }
    )
}

fn bier_text(faces: &[BierFace]) -> String {
    faces
        .iter()
        .map(|f| {
            let vs: Vec<String> = f.vertices().iter().map(ToString::to_string).collect();
            format!("{{{}}}", vs.join(","))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn report_output(r: VerificationReport) -> Output {
    let mut text = String::new();
    let _ = writeln!(text, "theorem         {}", r.theorem);
    let _ = writeln!(
        text,
        "verdict         {}",
        if r.passed() { "pass" } else { "fail" }
    );
    let _ = writeln!(text, "matched facets  {}", r.matched_facets);
    let _ = writeln!(text, "instance        {}", r.instance);
    if let Some(c) = &r.certificate {
        let _ = writeln!(text, "certificate     {c}");
    }
    let status = if r.passed() { 0 } else { 1 };
    Output {
        json: to_value(&r),
        text,
        status,
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn generators_json(g: &PointConfiguration<KrLabel>) -> Value {
    json!(g
        .iter()
        .map(|(l, p)| json!({"label": l.to_string(), "point": p}))
        .collect::<Vec<_>>())
}

fn kr_output(
    generators: &PointConfiguration<KrLabel>,
    non_geodesic: Option<&[(usize, usize)]>,
) -> Result<Output, InputError> {
    let facets = vertex_facet_family(generators).map_err(|e| err("--graph", e))?;
    let facet_labels: Vec<Vec<String>> = facets
        .iter()
        .map(|f| f.iter().map(ToString::to_string).collect())
        .collect();
    let mut out = json!({"generators": generators_json(generators), "facets": facet_labels});
    let mut text = format!("{} generators, {} facets\n", generators.len(), facets.len());
    for (l, p) in generators.iter() {
        let _ = writeln!(text, "  {l:<8} {p}");
    }
    if let Some(dropped) = non_geodesic {
        let pairs: Vec<[usize; 2]> = dropped.iter().map(|&(a, b)| [a + 1, b + 1]).collect();
        for [a, b] in &pairs {
            let _ = writeln!(text, "dropped non-geodesic edge {{{a},{b}}}");
        }
        out["non_geodesic"] = json!(pairs);
    }
    for f in &facet_labels {
        let _ = writeln!(text, "facet {}", f.join(" "));
    }
    Ok(Output::ok(out, text))
}

pub fn run(cli: &Cli) -> Result<Output, InputError> {
    match &cli.command {
        Command::Dual(args) => {
            let k = input::complex(args)?;
            let d = alexander_dual(&k).map_err(|e| err("--facets", e))?;
            Ok(Output::ok(to_value(&d.to_json()), complex_text(&d)))
        }
        Command::Bier(args) => {
            let k = input::complex(args)?;
            let faces = bier_facets(&k).map_err(|e| err("--facets", e))?;
            let text = format!("{} facets\n{}", faces.len(), bier_text(&faces));
            Ok(Output::ok(to_value(&family_to_json(&faces)), text))
        }
        Command::Fvector(args) => {
            let k = input::complex(args)?;
            let fk = FVector::of_complex(&k);
            let fb = FVector::of_bier(&bier_facets(&k).map_err(|e| err("--facets", e))?);
            let text = format!("complex  {:?}\nbier     {:?}", fk.0, fb.0);
            Ok(Output::ok(json!({"complex": fk.0, "bier": fb.0}), text))
        }
        Command::Threshold { weights, quota } => {
            let l = input::weights(weights)?;
            let nu = Quota::parse(quota).map_err(|e| err("--quota", e))?;
            let k = threshold_complex(&l, &nu).map_err(|e| err("--weights", e))?;
            let mut out = to_value(&k.to_json());
            let mut text = complex_text(&k);
            if threshold_warning(&l, &nu).is_some() {
                out["warning"] =
                    json!("quota is at most the smallest weight; only the empty set is a face");
                text.push_str("\nwarning: quota is at most the smallest weight");
            }
            Ok(Output::ok(out, text))
        }
        Command::Short(args) => {
            let k = short_sets(&input::weights(args)?).map_err(|e| err("--weights", e))?;
            Ok(Output::ok(to_value(&k.to_json()), complex_text(&k)))
        }
        Command::Generic { weights, quota } => {
            let l = input::weights(weights)?;
            let nu = Quota::parse(quota).map_err(|e| err("--quota", e))?;
            match is_generic(&l, &nu).map_err(|e| err("--weights", e))? {
                GenericityReport::Generic => Ok(Output::ok(
                    json!({"generic": true, "violation": null}),
                    "generic".into(),
                )),
                GenericityReport::Violation(s) => Ok(Output {
                    json: json!({"generic": false, "violation": s.to_labels()}),
                    text: format!("not generic: mu({s}) = {nu}"),
                    status: 1,
                }),
            }
        }
        Command::Metric { graph, matrix } => {
            if let Some(text) = matrix {
                let rows = input::matrix("--matrix", text)?;
                let d = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|s| input::rational("--matrix", s))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                return Ok(match validate_metric(&d) {
                    Ok(()) => Output::ok(
                        json!({"valid": true, "violation": null}),
                        "valid metric".into(),
                    ),
                    Err(v) => Output {
                        json: json!({"valid": false, "violation": v.to_string()}),
                        text: format!("not a metric: {v}"),
                        status: 1,
                    },
                });
            }
            let g = input::graph(graph)?;
            let m = geodesic_metric(&g).map_err(|e| err("--graph", e))?;
            let rows = m.to_json();
            let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
            let text = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| format!("{s:>width$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::ok(json!({"matrix": rows}), text))
        }
        Command::Kr { graph, matrix } => {
            if let Some(text) = matrix {
                let m = FiniteMetric::from_json(&input::matrix("--matrix", text)?)
                    .map_err(|e| err("--matrix", e))?;
                let g = kr_generators(&m).map_err(|e| err("--matrix", e))?;
                return kr_output(&g, None);
            }
            let g = kr_generators_graph(&input::graph(graph)?).map_err(|e| err("--graph", e))?;
            kr_output(&g.generators, Some(&g.non_geodesic))
        }
        Command::VerifyKrBier(args) => {
            let l = input::weights(args)?;
            Ok(report_output(
                verify_kr_bier(&l).map_err(|e| err("--weights", e))?,
            ))
        }
        Command::VerifyQalpha {
            weights,
            alpha,
            circuit,
            nudge,
        } => {
            let l = input::weights(weights)?;
            let alpha = input::rational("--alpha", alpha)?;
            let circuit = match circuit {
                Some(text) => Some(
                    GaleConfiguration::from_json(&input::matrix("--circuit", text)?)
                        .map_err(|e| err("--circuit", e))?,
                ),
                None => None,
            };
            let options = QAlphaOptions {
                circuit,
                nudge: *nudge,
            };
            Ok(report_output(
                verify_q_alpha(&l, &alpha, &options).map_err(|e| err("--weights", e))?,
            ))
        }
        Command::FanCheck(args) => {
            let k = input::complex(args)?;
            Ok(report_output(
                fan_check(&k).map_err(|e| err("--facets", e))?,
            ))
        }
        Command::StarVolume(args) => {
            let k = input::complex(args)?;
            let v = star_volume(&k).map_err(|e| err("--facets", e))?;
            Ok(Output::ok(
                json!({"volume": format_rational(&v)}),
                format!("volume {}", format_rational(&v)),
            ))
        }
        Command::TreeCheck(args) => {
            let t = input::graph(args)?;
            Ok(report_output(
                tree_cross_polytope_check(&t).map_err(|e| err("--graph", e))?,
            ))
        }
        Command::PermCheck { weights, sigma } => {
            let l = input::weights(weights)?;
            let sigma = Permutation::parse(sigma).map_err(|e| err("--sigma", e))?;
            Ok(report_output(
                perm_equivalence(&l, &sigma).map_err(|e| err("--weights", e))?,
            ))
        }
        Command::Batch {
            seed,
            kind,
            count,
            n,
            alpha,
            denominator,
        } => batch(*seed, *kind, *count, *n, alpha, *denominator),
    }
}

enum Instance {
    Weights(bierkr::threshold::WeightVector),
    Pair(bierkr::threshold::WeightVector, Permutation),
    Complex(SimplicialComplex),
    Tree(bierkr::metricgraph::WeightedGraph),
}

fn batch(
    seed: u64,
    kind: BatchKind,
    count: usize,
    n: usize,
    alpha: &str,
    denominator: i64,
) -> Result<Output, InputError> {
    input::check_size("--n", n)?;
    if denominator <= 0 {
        return Err(err("--denominator", "must be positive"));
    }
    let min_n = match kind {
        BatchKind::Fan | BatchKind::Tree => 2,
        BatchKind::KrBier | BatchKind::Qalpha | BatchKind::Perm => 3,
    };
    if n < min_n {
        return Err(err(
            "--n",
            format!("must be at least {min_n} for this kind"),
        ));
    }
    let alpha = input::rational("--alpha", alpha)?;
    let beta = alpha.recip();
    let nu = Quota::from_beta(&beta).map_err(|e| err("--alpha", e))?;

    // instances are drawn sequentially so they depend only on the seed
    let mut s = Sampler::with_denominator(seed, denominator);
    let instances: Vec<Instance> = (0..count)
        .map(|_| match kind {
            BatchKind::KrBier => Instance::Weights(s.generic_short_weights(n, &[Quota::half()])),
            BatchKind::Qalpha => {
                Instance::Weights(s.generic_short_weights(n, &[nu.clone(), nu.complement()]))
            }
            BatchKind::Perm => {
                let l = s.generic_short_weights(n, &[Quota::half()]);
                Instance::Pair(l, s.permutation(n))
            }
            BatchKind::Fan => Instance::Complex(s.proper_complex(n)),
            BatchKind::Tree => Instance::Tree(s.tree(n)),
        })
        .collect();

    let reports: Vec<Result<VerificationReport, String>> = instances
        .par_iter()
        .map(|inst| match inst {
            Instance::Weights(l) if kind == BatchKind::KrBier => {
                verify_kr_bier(l).map_err(|e| e.to_string())
            }
            Instance::Weights(l) => {
                verify_q_alpha(l, &alpha, &QAlphaOptions::default()).map_err(|e| e.to_string())
            }
            Instance::Pair(l, sigma) => perm_equivalence(l, sigma).map_err(|e| e.to_string()),
            Instance::Complex(k) => fan_check(k).map_err(|e| e.to_string()),
            Instance::Tree(t) => tree_cross_polytope_check(t).map_err(|e| e.to_string()),
        })
        .collect();
    let reports = reports
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| err("batch", format!("instance {i}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;

    let passed = reports.iter().filter(|r| r.passed()).count();
    let mut text = String::new();
    for (i, r) in reports.iter().enumerate() {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(
            text,
            "{i:>5}  {verdict}  matched {:>4}  {}",
            r.matched_facets, r.instance
        );
    }
    let _ = writeln!(text, "{passed} of {} passed", reports.len());
    let json = json!({
        "seed": seed,
        "kind": kind.to_possible_value().expect("no skipped variants").get_name(),
        "n": n,
        "count": count,
        "passed": passed,
        "reports": reports,
    });
    Ok(Output {
        json,
        text,
        status: if passed == reports.len() { 0 } else { 1 },
    })
}
