//! One function per CLI subcommand. All outputs are deterministic and
//! begin with a header stating the verification bound.

use crate::output::{header, CliError};
use linknet::doc::{document_from_window, AnyNet, NetDocument};
use linknet::linalg::{Field, FieldSpec, PrimeField, Rationals};
use linknet::lp::{
    charts, enumerate_points, hilbert_table, jacobian_rank, lp_equations,
    smooth_rank_threshold, stratify, stratum_param_count, LPPoint,
};
use linknet::net::{CheckReport, NetPresentation, WindowNet};
use linknet::simple::{classify_z2, render_dot_with};
use linknet::smoothing::{
    construct_monomial_smoothing, degeneration_evidence, specialize,
};
use linknet::zquiver::{hull as hull_of, shadow as shadow_in, Polygon, Vertex};
use serde_json::json;
use std::collections::BTreeSet;
use std::path::Path;
use std::process::ExitCode;

fn load(path: &Path) -> Result<NetDocument, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(NetDocument::from_json(&text)?)
}

/// A parsed net with its generator data, uniform over the field.
struct Ctx<K: Field> {
    net: WindowNet<K>,
    /// Hull vertices (sorted) when the document is a presentation.
    hull: Vec<Vertex>,
    radius: usize,
    mode: &'static str,
    field_name: String,
}

fn expand_in<K: Field>(
    pres: &NetPresentation<K>,
    radius: Option<usize>,
) -> Result<Ctx<K>, CliError> {
    let radius = radius.unwrap_or(pres.n + 2);
    let net = pres.expand(radius)?;
    let mut hull = pres.hull.clone();
    hull.sort();
    let field_name = pres.field.name();
    Ok(Ctx {
        net,
        hull,
        radius,
        mode: "hull",
        field_name,
    })
}

fn window_ctx<K: Field>(net: WindowNet<K>) -> Ctx<K> {
    let radius = net.window().radius();
    let field_name = net.field().name();
    Ctx {
        net,
        hull: Vec::new(),
        radius,
        mode: "window",
        field_name,
    }
}

/// The general-linked check is only meaningful over Q(t); other fields
/// report it as unsupported.
trait GeneralLinked {
    fn general_linked_report(&self) -> CheckReport;
}

impl GeneralLinked for Ctx<linknet::linalg::RatFns> {
    fn general_linked_report(&self) -> CheckReport {
        linknet::smoothing::check_general_linked(&self.net)
    }
}

impl GeneralLinked for Ctx<Rationals> {
    fn general_linked_report(&self) -> CheckReport {
        unsupported_general_linked()
    }
}

impl GeneralLinked for Ctx<PrimeField> {
    fn general_linked_report(&self) -> CheckReport {
        unsupported_general_linked()
    }
}

fn unsupported_general_linked() -> CheckReport {
    CheckReport {
        check: "general_linked",
        passed: false,
        bound: "not applicable".to_string(),
        violations: vec!["general-linked applies to Q(t) documents only".to_string()],
    }
}

impl<K: Field> Ctx<K> {
    fn header(&self) -> String {
        header(
            &self.field_name,
            self.net.n(),
            self.mode,
            self.radius,
            self.net.window().len(),
        )
    }

    fn require_hull(&self) -> Result<&[Vertex], CliError> {
        if self.hull.is_empty() {
            Err(CliError::Unsupported(
                "this command needs a hull-mode document (generator data)".to_string(),
            ))
        } else {
            Ok(&self.hull)
        }
    }
}

/// Run the same body against the typed net, whatever the field. The
/// body is expanded once per variant so it can be generic over the
/// field type.
macro_rules! with_ctx {
    ($doc:expr, $radius:expr, |$ctx:ident: $t:ty| $body:block) => {{
        match $doc.parse()? {
            AnyNet::QHull(p) => {
                let $ctx = expand_in(&p, $radius)?;
                $body
            }
            AnyNet::FpHull(p) => {
                let $ctx = expand_in(&p, $radius)?;
                $body
            }
            AnyNet::QtHull(p) => {
                let $ctx = expand_in(&p, $radius)?;
                $body
            }
            AnyNet::QWindow(w) => {
                let $ctx = window_ctx(w);
                $body
            }
            AnyNet::FpWindow(w) => {
                let $ctx = window_ctx(w);
                $body
            }
            AnyNet::QtWindow(w) => {
                let $ctx = window_ctx(w);
                $body
            }
        }
    }};
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

pub fn validate(
    path: &Path,
    radius: Option<usize>,
    finiteness_bound: Option<usize>,
    checks: Option<&str>,
    json_out: bool,
) -> Result<ExitCode, CliError> {
    let requested: Vec<&str> = match checks {
        Some(list) => list.split(',').map(|s| s.trim()).collect(),
        None => vec!["weakly-linked", "linked", "exact", "pure", "locally-finite"],
    };
    for name in &requested {
        if !matches!(
            *name,
            "weakly-linked" | "linked" | "exact" | "pure" | "locally-finite" | "general-linked"
        ) {
            return Err(CliError::Unsupported(format!("unknown check {name:?}")));
        }
    }
    let doc = load(path)?;
    with_ctx!(doc, radius, |ctx: Ctx<_>| {
        // Paths longer than the window's admissible diameter must wrap
        // a circuit, so that is the sensible default bound.
        let bound = finiteness_bound.unwrap_or_else(|| ctx.net.admissible_diameter());
        let reports: Vec<_> = requested
            .iter()
            .map(|name| match *name {
                "weakly-linked" => ctx.net.check_weakly_linked(),
                "linked" => ctx.net.check_linked(),
                "exact" => ctx.net.check_exact(),
                "pure" => ctx.net.check_pure(),
                "general-linked" => ctx.general_linked_report(),
                _ => ctx.net.check_locally_finite(bound),
            })
            .collect();
        let all_pass = reports.iter().all(|r| r.passed);
        if json_out {
            let payload = json!({
                "header": ctx.header(),
                "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
                "passed": all_pass,
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        } else {
            println!("{}", ctx.header());
            for r in &reports {
                print_report(r);
            }
            println!("overall: {}", if all_pass { "pass" } else { "FAIL" });
        }
        Ok(if all_pass {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(crate::EXIT_CHECK_FAILED)
        })
    })
}

fn report_json(r: &CheckReport) -> serde_json::Value {
    json!({
        "check": r.check,
        "passed": r.passed,
        "bound": r.bound,
        "violations": r.violations,
    })
}

fn print_report(r: &CheckReport) {
    println!(
        "{:>16}: {} ({})",
        r.check,
        if r.passed { "pass" } else { "FAIL" },
        r.bound
    );
    for v in &r.violations {
        println!("{:>16}  witness: {}", "", v);
    }
}

// ---------------------------------------------------------------------------
// min-gens / classify2
// ---------------------------------------------------------------------------

pub fn min_gens(path: &Path, radius: Option<usize>, json_out: bool) -> Result<ExitCode, CliError> {
    let doc = load(path)?;
    with_ctx!(doc, radius, |ctx: Ctx<_>| {
        let gens = ctx.net.minimal_one_generators()?;
        if json_out {
            let payload = json!({
                "header": ctx.header(),
                "minimal_generators": gens.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        } else {
            println!("{}", ctx.header());
            println!(
                "minimal 1-generating set ({}): {}",
                gens.len(),
                gens.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            );
        }
        Ok(ExitCode::SUCCESS)
    })
}

pub fn classify2(path: &Path, radius: Option<usize>, json_out: bool) -> Result<ExitCode, CliError> {
    let doc = load(path)?;
    with_ctx!(doc, radius, |ctx: Ctx<_>| {
        let t = classify_z2(&ctx.net)?;
        if json_out {
            let payload = json!({
                "header": ctx.header(),
                "type": t.tag.to_string(),
                "generators": t.generators.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        } else {
            println!("{}", ctx.header());
            println!(
                "type {} with generators {}",
                t.tag,
                t.generators
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
        Ok(ExitCode::SUCCESS)
    })
}

// ---------------------------------------------------------------------------
// hull / shadow
// ---------------------------------------------------------------------------

fn vertex_set_of(path: &Path) -> Result<(BTreeSet<Vertex>, usize), CliError> {
    let text = std::fs::read_to_string(path)?;
    // A bare JSON array of coordinate tuples is accepted too.
    if let Ok(raw) = serde_json::from_str::<Vec<Vec<i64>>>(&text) {
        if raw.is_empty() {
            return Err(CliError::Unsupported("empty vertex list".to_string()));
        }
        let n = raw[0].len() - 1;
        return Ok((raw.iter().map(|c| Vertex::normalize(c)).collect(), n));
    }
    let doc = NetDocument::from_json(&text)?;
    let n = doc.n;
    let block = doc.hull.as_ref().ok_or_else(|| {
        CliError::Unsupported("hull command needs a hull-mode document or a vertex array".into())
    })?;
    Ok((
        block.vertices.iter().map(|c| Vertex::normalize(c)).collect(),
        n,
    ))
}

pub fn hull(path: &Path, json_out: bool) -> Result<ExitCode, CliError> {
    let (verts, n) = vertex_set_of(path)?;
    let p = hull_of(&verts);
    if json_out {
        let payload = json!({
            "n": n,
            "input": verts.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
            "hull": p.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!("# linknet | n={n} | hull of {} vertices", verts.len());
        println!(
            "P(H) ({}): {}",
            p.len(),
            p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        );
    }
    Ok(ExitCode::SUCCESS)
}

pub fn shadow(path: &Path, vertex: &str, json_out: bool) -> Result<ExitCode, CliError> {
    let (verts, n) = vertex_set_of(path)?;
    let coords: Result<Vec<i64>, _> = vertex.split(',').map(|c| c.trim().parse()).collect();
    let coords = coords.map_err(|_| {
        CliError::Unsupported(format!("cannot parse vertex {vertex:?} as coordinates"))
    })?;
    if coords.len() != n + 1 {
        return Err(CliError::Unsupported(format!(
            "vertex has {} coordinates, expected {}",
            coords.len(),
            n + 1
        )));
    }
    let v = Vertex::normalize(&coords);
    let w = shadow_in(&v, &verts).map_err(|e| CliError::Check(e.to_string()))?;
    if json_out {
        let payload = json!({
            "n": n,
            "vertex": v.coords().to_vec(),
            "shadow": w.coords().to_vec(),
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!("# linknet | n={n} | shadow in a hull of {} vertices", verts.len());
        println!("shadow of {v} is {w}");
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// render
// ---------------------------------------------------------------------------

pub fn render(
    path: &Path,
    out: Option<&Path>,
    radius: Option<usize>,
) -> Result<ExitCode, CliError> {
    let doc = load(path)?;
    with_ctx!(doc, radius, |ctx: Ctx<_>| {
        let highlight: BTreeSet<Vertex> = match ctx.net.minimal_one_generators() {
            Ok(gens) => gens,
            Err(_) => ctx.hull.iter().cloned().collect(),
        };
        let dot = render_dot_with(&ctx.net, &highlight);
        match out {
            Some(p) => std::fs::write(p, dot)?,
            None => print!("{dot}"),
        }
        Ok(ExitCode::SUCCESS)
    })
}

// ---------------------------------------------------------------------------
// lp subcommands
// ---------------------------------------------------------------------------

pub fn lp_eqs(path: &Path, radius: Option<usize>, json_out: bool) -> Result<ExitCode, CliError> {
    let doc = load(path)?;
    with_ctx!(doc, radius, |ctx: Ctx<_>| {
        let h = ctx.require_hull()?;
        let sys = lp_equations(&ctx.net, h)?;
        let field = ctx.net.field().clone();
        if json_out {
            let eqs: Vec<_> = sys
                .equations
                .iter()
                .map(|eq| {
                    json!({
                        "block_v": eq.v,
                        "block_w": eq.w,
                        "coeffs": eq.coeffs.entries().iter().map(|e| field.format(e)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let payload = json!({
                "header": ctx.header(),
                "hull": h.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
                "dims": sys.dims,
                "equations": eqs,
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        } else {
            println!("{}", ctx.header());
            println!(
                "blocks: {}",
                h.iter()
                    .zip(&sys.dims)
                    .map(|(v, d)| format!("{v}:P^{}", d - 1))
                    .collect::<Vec<_>>()
                    .join(" x ")
            );
            println!("equations ({}):", sys.equations.len());
            for eq in &sys.equations {
                println!("  {}", format_equation(&field, eq, h));
            }
        }
        Ok(ExitCode::SUCCESS)
    })
}

fn format_equation<K: Field>(
    field: &K,
    eq: &linknet::lp::MinorEquation<K>,
    h: &[Vertex],
) -> String {
    let mut terms = Vec::new();
    for g in 0..eq.coeffs.rows() {
        for d in 0..eq.coeffs.cols() {
            let c = eq.coeffs.at(g, d);
            if field.is_zero(c) {
                continue;
            }
            let coeff = field.format(c);
            let prefix = match coeff.as_str() {
                "1" => String::new(),
                "-1" => "-".to_string(),
                other => format!("{other}*"),
            };
            terms.push(format!("{prefix}s{}[{}]*s{}[{}]", eq.v, g, eq.w, d));
        }
    }
    let _ = h;
    format!("{} = 0", terms.join(" + ").replace("+ -", "- "))
}

fn fp_ctx(ctx_result: AnyNet, radius: Option<usize>) -> Result<Ctx<PrimeField>, CliError> {
    match ctx_result {
        AnyNet::FpHull(p) => expand_in(&p, radius),
        AnyNet::FpWindow(w) => Ok(window_ctx(w)),
        _ => Err(CliError::Unsupported(
            "point enumeration needs a prime-field document".to_string(),
        )),
    }
}

pub fn lp_count(
    path: &Path,
    radius: Option<usize>,
    budget: u128,
    json_out: bool,
) -> Result<ExitCode, CliError> {
    let doc = load(path)?;
    let ctx = fp_ctx(doc.parse()?, radius)?;
    let h = ctx.require_hull()?;
    let points = enumerate_points(&ctx.net, h, budget)?;
    if json_out {
        let payload = json!({
            "header": ctx.header(),
            "q": ctx.net.field().modulus(),
            "count": points.len(),
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!("{}", ctx.header());
        println!(
            "|LP(F_{})| = {}",
            ctx.net.field().modulus(),
            points.len()
        );
    }
    Ok(ExitCode::SUCCESS)
}

pub fn lp_strata(
    path: &Path,
    radius: Option<usize>,
    budget: u128,
    json_out: bool,
) -> Result<ExitCode, CliError> {
    let doc = load(path)?;
    let ctx = fp_ctx(doc.parse()?, radius)?;
    let h = ctx.require_hull()?;
    let points = enumerate_points(&ctx.net, h, budget)?;
    let strata = stratify(&ctx.net, h, &points)?;
    if json_out {
        let rows: Vec<_> = strata
            .iter()
            .map(|(key, pts)| {
                json!({
                    "polygon": key.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
                    "points": pts.len(),
                })
            })
            .collect();
        let payload = json!({
            "header": ctx.header(),
            "total": points.len(),
            "strata": rows,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!("{}", ctx.header());
        println!("total points: {}", points.len());
        for (key, pts) in &strata {
            let name = key.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
            println!("  stratum {{{name}}}: {} points", pts.len());
        }
        for v in h {
            let c = stratum_param_count(&ctx.net, v, h)?;
            println!("  open stratum at {v}: {c} points (parameter count)");
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn lp_charts(path: &Path, radius: Option<usize>, json_out: bool) -> Result<ExitCode, CliError> {
    let doc = load(path)?;
    with_ctx!(doc, radius, |ctx: Ctx<_>| {
        let h = ctx.require_hull()?;
        let delta = Polygon::from_slice(h)
            .map_err(|e| CliError::Check(format!("hull is not a polygon: {e}")))?;
        let atlas = charts(&ctx.net, &delta)?;
        let field = ctx.net.field().clone();
        if json_out {
            let charts_json: Vec<_> = atlas
                .charts
                .iter()
                .map(|c| {
                    json!({
                        "unit_coords": c.unit_coords,
                        "equations": c.equations.len(),
                    })
                })
                .collect();
            let payload = json!({
                "header": ctx.header(),
                "positions": atlas.positions.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
                "multiplicities": atlas.multiplicities,
                "cycle_diagonals": atlas
                    .cycle_diagonals
                    .iter()
                    .map(|d| d.iter().map(|e| field.format(e)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "charts": charts_json,
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        } else {
            println!("{}", ctx.header());
            println!(
                "padded cycle: {}",
                atlas
                    .positions
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" -> ")
            );
            println!("multiplicities: {:?}", atlas.multiplicities);
            for (i, d) in atlas.cycle_diagonals.iter().enumerate() {
                println!(
                    "M_{i} = diag({})",
                    d.iter().map(|e| field.format(e)).collect::<Vec<_>>().join(",")
                );
            }
            println!("charts ({}):", atlas.charts.len());
            for (i, c) in atlas.charts.iter().enumerate() {
                println!(
                    "  chart {i}: units {:?}, {} equations",
                    c.unit_coords,
                    c.equations.len()
                );
            }
        }
        Ok(ExitCode::SUCCESS)
    })
}

pub fn lp_jacobian(
    path: &Path,
    radius: Option<usize>,
    budget: u128,
    json_out: bool,
) -> Result<ExitCode, CliError> {
    let doc = load(path)?;
    let ctx = fp_ctx(doc.parse()?, radius)?;
    let h = ctx.require_hull()?;
    let sys = lp_equations(&ctx.net, h)?;
    let points = enumerate_points(&ctx.net, h, budget)?;
    let r = ctx.net.dim_at(&h[0]);
    let threshold = smooth_rank_threshold(&sys, r);
    let mut smooth = 0usize;
    let mut singular = 0usize;
    let mut rows = Vec::new();
    for p in &points {
        let rank = jacobian_rank(&sys, p)?;
        let is_smooth = rank == threshold;
        if is_smooth {
            smooth += 1;
        } else {
            singular += 1;
        }
        rows.push((format_point(ctx.net.field(), p), rank, is_smooth));
    }
    if json_out {
        let payload = json!({
            "header": ctx.header(),
            "threshold": threshold,
            "smooth": smooth,
            "singular": singular,
            "points": rows.iter().map(|(p, rank, s)| json!({
                "point": p, "rank": rank, "smooth": s,
            })).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!("{}", ctx.header());
        println!("smooth rank threshold: {threshold}");
        for (p, rank, s) in &rows {
            println!("  {p}: rank {rank} -> {}", if *s { "smooth" } else { "singular" });
        }
        println!("smooth: {smooth}, singular: {singular}");
    }
    Ok(ExitCode::SUCCESS)
}

fn format_point<K: Field>(field: &K, p: &LPPoint<K>) -> String {
    p.coords
        .iter()
        .map(|block| {
            format!(
                "[{}]",
                block.iter().map(|e| field.format(e)).collect::<Vec<_>>().join(":")
            )
        })
        .collect::<Vec<_>>()
        .join("x")
}

pub fn lp_hilbert(
    path: &Path,
    bound: usize,
    radius: Option<usize>,
    budget: usize,
    csv: bool,
) -> Result<ExitCode, CliError> {
    let doc = load(path)?;
    with_ctx!(doc, radius, |ctx: Ctx<_>| {
        let h = ctx.require_hull()?;
        let sys = lp_equations(&ctx.net, h)?;
        let table = hilbert_table(&sys, bound, budget)?;
        if csv {
            let cols = h
                .iter()
                .map(|v| format!("d{}", v.to_string().replace(['(', ')', ','], "_")))
                .collect::<Vec<_>>()
                .join(",");
            println!("{cols},dimension");
            for (d, dim) in &table.entries {
                let ds = d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                println!("{ds},{dim}");
            }
        } else {
            println!("{}", ctx.header());
            println!("multigraded Hilbert table up to total degree {bound}:");
            for (d, dim) in &table.entries {
                println!("  d = {:?}: {}", d, dim);
            }
        }
        Ok(ExitCode::SUCCESS)
    })
}

// ---------------------------------------------------------------------------
// smooth subcommands
// ---------------------------------------------------------------------------

fn q_hull_ctx(parsed: AnyNet, radius: Option<usize>) -> Result<Ctx<Rationals>, CliError> {
    match parsed {
        AnyNet::QHull(p) => expand_in(&p, radius),
        _ => Err(CliError::Unsupported(
            "smoothing needs a rational hull-mode document".to_string(),
        )),
    }
}

pub fn smooth_build(
    path: &Path,
    out: Option<&Path>,
    radius: Option<usize>,
) -> Result<ExitCode, CliError> {
    let doc = load(path)?;
    let ctx = q_hull_ctx(doc.parse()?, radius)?;
    let delta = Polygon::from_slice(&ctx.hull)
        .map_err(|e| CliError::Check(format!("hull is not a polygon: {e}")))?;
    let (qt_net, report) = construct_monomial_smoothing(&ctx.net, &delta)?;
    let qt_doc = document_from_window(&qt_net, FieldSpec::RationalFunctionsT);
    let text = qt_doc.to_json();
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    eprintln!(
        "smoothing built: generic_ok={} special_matches={} circuits_vanish={}",
        report.generic_ok, report.special_matches, report.circuits_vanish_at_zero
    );
    Ok(ExitCode::SUCCESS)
}

pub fn smooth_check(
    path: &Path,
    radius: Option<usize>,
    json_out: bool,
) -> Result<ExitCode, CliError> {
    let doc = load(path)?;
    let ctx = q_hull_ctx(doc.parse()?, radius)?;
    let delta = Polygon::from_slice(&ctx.hull)
        .map_err(|e| CliError::Check(format!("hull is not a polygon: {e}")))?;
    let (qt_net, report) = construct_monomial_smoothing(&ctx.net, &delta)?;
    let special = specialize(&qt_net)?;
    let special_weakly = special.check_weakly_linked().passed;
    if json_out {
        let payload = json!({
            "header": ctx.header(),
            "generic_ok": report.generic_ok,
            "special_matches": report.special_matches,
            "circuits_vanish_at_zero": report.circuits_vanish_at_zero,
            "specialization_weakly_linked": special_weakly,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!("{}", ctx.header());
        println!("generic side is a general linked net: {}", report.generic_ok);
        println!("specialization matches the input (adapted basis): {}", report.special_matches);
        println!("minimal circuits vanish at t=0: {}", report.circuits_vanish_at_zero);
        println!("specialization is weakly linked: {special_weakly}");
    }
    Ok(ExitCode::SUCCESS)
}

pub fn smooth_degeneration(
    path: &Path,
    bound: usize,
    radius: Option<usize>,
    budget: usize,
    csv: bool,
) -> Result<ExitCode, CliError> {
    let doc = load(path)?;
    let ctx = q_hull_ctx(doc.parse()?, radius)?;
    let delta = Polygon::from_slice(&ctx.hull)
        .map_err(|e| CliError::Check(format!("hull is not a polygon: {e}")))?;
    // The smoothing must exist before degeneration evidence is emitted.
    let _ = construct_monomial_smoothing(&ctx.net, &delta)?;
    let rows = degeneration_evidence(&ctx.net, &ctx.hull, bound, budget)?;
    if csv {
        println!("multidegree,lp_dimension,diagonal_dimension,equal");
        for row in &rows {
            let d = row
                .multidegree
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            println!(
                "{d},{},{},{}",
                row.lp_dimension, row.diagonal_dimension, row.equal
            );
        }
    } else {
        println!("{}", ctx.header());
        println!("{:<16} {:>6} {:>10} {:>6}", "multidegree", "LP", "diagonal", "equal");
        for row in &rows {
            println!(
                "{:<16} {:>6} {:>10} {:>6}",
                format!("{:?}", row.multidegree),
                row.lp_dimension,
                row.diagonal_dimension,
                row.equal
            );
        }
        let all = rows.iter().all(|r| r.equal);
        println!("tables agree on every multidegree: {all}");
    }
    Ok(ExitCode::SUCCESS)
}

