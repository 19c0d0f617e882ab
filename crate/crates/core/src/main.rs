use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use wellpoint::cat::{find_left_adjoint, EnumLimits, FiniteCategory, Functor};
use wellpoint::comparison::{check_proposition_equivalence, comparison_functors};
use wellpoint::dsl::{self, Diagnostic, Item, SpecFile, Workspace};
use wellpoint::ind::IndObject;
use wellpoint::localise::{
    check_well_pointed, hom_formula_agreement, idempotence_check, localisation_category, reflection_unit_check, verify_localisation_universal,
    WellPointedEndo,
};
use wellpoint::orbit::{orbit_hom, orbit_well_pointing};
use wellpoint::spectra::{spectrify, theta_embedding, Spectrum};
use wellpoint::stabilise::{eventual_image_duality_check, stabilisation_category, DEFAULT_WINDOW};
use wellpoint::{Error, SCHEMA_VERSION};

/// Finite enriched categories: localisation, spectra and stabilisation of
/// well-pointed endofunctors.
#[derive(Parser)]
#[command(name = "wellpoint", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// A `.cat` file or a JSON document.
    file: PathBuf,
    /// Endofunctor to use when the file declares several.
    #[arg(long)]
    endo: Option<String>,
    /// Pointing `id => Ω` to use when the file declares several.
    #[arg(long)]
    point: Option<String>,
    /// Write a Graphviz rendering of the computed category here.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Single-line JSON.
    #[arg(long)]
    compact: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every declaration in the file.
    Check(Common),
    /// Build the localisation `L_Ω C` and check its certificates.
    Localise(Common),
    /// Spectrify the spectra of the file, or `Θ(X)` for every object.
    Spectrify {
        #[command(flatten)]
        common: Common,
        /// Only this declared spectrum.
        #[arg(long)]
        spectrum: Option<String>,
    },
    /// Build the stabilisation on a degree window.
    Stabilise {
        #[command(flatten)]
        common: Common,
        /// Degree window `[-W, W]` (default 3, or `option window`).
        #[arg(long)]
        window: Option<i64>,
    },
    /// Graded homs of the orbit category and its well-pointing.
    Orbit {
        #[command(flatten)]
        common: Common,
        /// Highest grade listed (default 4, or `option grade`).
        #[arg(long)]
        grade: Option<usize>,
    },
    /// Comparison functors, coreflections and the equivalence verdict.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Degree window `[-W, W]` (default 3, or `option window`).
        #[arg(long)]
        window: Option<i64>,
    },
    /// Brute-force checks of universal properties.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Search for a left adjoint of Ω.
    Adjoint(Common),
}

#[derive(Subcommand)]
enum Verify {
    /// Every θ-inverting functor into a target factors through Ω^∞,
    /// uniquely up to isomorphism.
    Universal {
        #[command(flatten)]
        common: Common,
        /// File whose categories are the targets.
        #[arg(long)]
        target: PathBuf,
        /// Skip targets with more objects.
        #[arg(long)]
        max_objects: Option<usize>,
        /// Skip targets with more morphisms.
        #[arg(long)]
        max_morphisms: Option<usize>,
    },
}

enum Failure {
    /// The input is well formed but not well pointed.
    Check(String),
    Usage(String),
    Diagnostics(PathBuf, Vec<Diagnostic>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Outcome {
    passed: bool,
    report: Value,
    computed: Vec<Arc<FiniteCategory>>,
}

fn load(path: &Path) -> Result<(SpecFile, Workspace), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    let spec = if is_json {
        let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Diagnostics(path.into(), vec![json_diag(&e)]))?;
        let doc = value.get("document").cloned().unwrap_or(value);
        dsl::from_json(&doc.to_string()).map_err(|d| Failure::Diagnostics(path.into(), vec![d]))?
    } else {
        dsl::parse(&text).map_err(|d| Failure::Diagnostics(path.into(), vec![d]))?
    };
    let ws = dsl::build(&spec).map_err(|d| Failure::Diagnostics(path.into(), d))?;
    Ok((spec, ws))
}

fn json_diag(e: &serde_json::Error) -> Diagnostic {
    Diagnostic::new(dsl::Code::E001, dsl::Span { line: e.line(), col: e.column() }, e.to_string())
}

fn well_pointed(ws: &Workspace, c: &Common) -> Result<WellPointedEndo, Failure> {
    ws.well_pointed(c.endo.as_deref(), c.point.as_deref()).map_err(|e| match e {
        Error::Precondition(m) if m.starts_with("θΩ") => Failure::Check(m),
        e => e.into(),
    })
}

fn ind_json(x: &IndObject) -> Value {
    let names: Vec<&str> = x.objects.iter().map(|&o| x.cat.object_name(o)).collect();
    let transitions: Vec<String> = x.transitions.iter().map(|t| x.cat.describe(t)).collect();
    json!({ "objects": names, "transitions": transitions, "preperiod": x.preperiod })
}

fn category_json(c: &FiniteCategory) -> Value {
    json!({
        "name": c.name(),
        "enrichment": c.enrichment(),
        "objects": c.objects().map(|o| c.object_name(o)).collect::<Vec<_>>(),
        "morphisms": (0..c.morphism_count()).map(|m| c.morphism(m).label.clone()).collect::<Vec<_>>(),
    })
}

fn functor_json(f: &Functor) -> Value {
    let objects: serde_json::Map<String, Value> =
        f.src.objects().map(|o| (f.src.object_name(o).to_string(), json!(f.dst.object_name(f.obj(o))))).collect();
    Value::Object(objects)
}

fn check(ws: &Workspace) -> Outcome {
    let categories: Vec<Value> = ws
        .categories
        .iter()
        .map(|(n, c)| json!({ "name": n, "objects": c.object_count(), "morphisms": c.morphism_count(), "violations": c.validate().violations }))
        .collect();
    let functors: Vec<Value> = ws.functors.iter().map(|(n, f)| json!({ "name": n, "violations": f.validate().violations })).collect();
    let mut passed = true;
    let nats: Vec<Value> = ws
        .nats
        .iter()
        .map(|(n, t)| {
            let naturality = t.validate().violations;
            let pointing = t.source.on_objects == (0..t.source.src.object_count()).collect::<Vec<_>>() && t.target.is_endo();
            let wp = if pointing { check_well_pointed(&t.target, t).ok() } else { None };
            passed &= naturality.is_empty() && wp.as_ref().is_none_or(|w| w.well_pointed);
            json!({ "name": n, "violations": naturality, "well_pointed": wp })
        })
        .collect();
    let spectra: Vec<Value> = ws
        .spectra
        .iter()
        .map(|(n, s)| json!({ "name": n, "levels": s.levels.len(), "preperiod": s.preperiod, "omega_spectrum": s.is_omega_spectrum() }))
        .collect();
    Outcome { passed, report: json!({ "categories": categories, "functors": functors, "nats": nats, "spectra": spectra }), computed: Vec::new() }
}

fn localise(ws: &Workspace, c: &Common) -> Result<Outcome, Failure> {
    let wp = well_pointed(ws, c)?;
    let l = localisation_category(&wp)?;
    let cat = wp.category();
    let mut hom_formula = true;
    for x in cat.objects() {
        for y in cat.objects() {
            hom_formula &= hom_formula_agreement(&wp, x, y)?;
        }
    }
    let inverts_theta = l.inverts_theta(&wp)?;
    let reflection = reflection_unit_check(&wp, &l)?;
    let idempotent = idempotence_check(&wp, &l)?;
    let skeleton = Arc::new(l.skeleton(&wp));
    let report = json!({
        "category": category_json(&skeleton),
        "localisation": category_json(&l.category),
        "omega_infinity": functor_json(&l.omega_infinity),
        "inverts_theta": inverts_theta,
        "hom_formula": hom_formula,
        "reflection_unit": reflection,
        "idempotent": idempotent,
    });
    Ok(Outcome { passed: inverts_theta && hom_formula && reflection && idempotent, report, computed: vec![skeleton, l.category.clone()] })
}

fn spectrify_cmd(ws: &Workspace, c: &Common, only: Option<&str>) -> Result<Outcome, Failure> {
    let mut suite: Vec<(String, Spectrum)> = match only {
        Some(n) => vec![(n.to_string(), ws.spectrum(n).cloned().ok_or_else(|| Failure::Usage(format!("no spectrum named `{n}`")))?)],
        None => ws.spectra.clone(),
    };
    if suite.is_empty() {
        let wp = well_pointed(ws, c)?;
        for x in wp.category().objects() {
            suite.push((format!("Θ({})", wp.category().object_name(x)), theta_embedding(&wp, x)?));
        }
    }
    let mut passed = true;
    let mut out = Vec::new();
    for (n, s) in &suite {
        let sp = spectrify(s)?;
        let omega = sp.is_omega_spectrum()?;
        passed &= omega;
        out.push(json!({
            "name": n,
            "preperiod": sp.preperiod,
            "levels": sp.levels.iter().map(ind_json).collect::<Vec<_>>(),
            "omega_spectrum": omega,
        }));
    }
    Ok(Outcome { passed, report: json!({ "spectra": out }), computed: Vec::new() })
}

fn window(ws: &Workspace, flag: Option<i64>) -> i64 {
    flag.or(ws.options.window.map(|w| w as i64)).unwrap_or(DEFAULT_WINDOW)
}

fn stabilise(ws: &Workspace, c: &Common, w: Option<i64>) -> Result<Outcome, Failure> {
    let omega = ws.endofunctor(c.endo.as_deref())?;
    let s = stabilisation_category(&omega, window(ws, w))?;
    let auto = s.autoequivalence_report()?;
    let report = json!({
        "window": s.window,
        "category": category_json(&s.category),
        "autoequivalence": auto,
    });
    Ok(Outcome { passed: auto.passes(), report, computed: vec![s.category.clone()] })
}

fn orbit(ws: &Workspace, c: &Common, grade: Option<usize>) -> Result<Outcome, Failure> {
    let f = ws.endofunctor(c.endo.as_deref())?;
    let grade = grade.or(ws.options.grade.map(|g| g as usize)).unwrap_or(4);
    let w = orbit_well_pointing(&f, grade)?;
    let cat = &f.src;
    let mut homs = Vec::new();
    for x in cat.objects() {
        for y in cat.objects() {
            let h = orbit_hom(&f, x, y, grade)?;
            homs.push(json!({ "src": cat.object_name(x), "dst": cat.object_name(y), "sizes": h.sizes(), "orbit": h.orbit }));
        }
    }
    let report = json!({ "grade": grade, "homs": homs, "certificate": w.certificate });
    Ok(Outcome { passed: w.certificate.passes(), report, computed: Vec::new() })
}

fn compare(ws: &Workspace, c: &Common, w: Option<i64>) -> Result<Outcome, Failure> {
    let wp = well_pointed(ws, c)?;
    let cmp = comparison_functors(&wp, window(ws, w))?;
    let certificate = cmp.certificate(&wp)?;
    let proposition = check_proposition_equivalence(&cmp);
    let duality = match eventual_image_duality_check(&wp.omega) {
        Ok(d) => Some(d),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let report = json!({
        "verdict": proposition.verdict(),
        "proposition": proposition,
        "certificate": certificate,
        "eventual_image_duality": duality,
        "stabilisation": category_json(&cmp.stabilisation.category),
        "spectra": category_json(&cmp.spectra.category),
        "phi": functor_json(&cmp.phi),
        "psi": functor_json(&cmp.psi),
    });
    let passed = certificate.passes() && proposition.verdict();
    Ok(Outcome { passed, report, computed: vec![cmp.stabilisation.category.clone(), cmp.spectra.category.clone()] })
}

fn universal(ws: &Workspace, c: &Common, target: &Path, max_objects: Option<usize>, max_morphisms: Option<usize>) -> Result<Outcome, Failure> {
    let wp = well_pointed(ws, c)?;
    let (_, targets) = load(target)?;
    let mut limits = EnumLimits::from_env();
    if let Some(n) = max_objects.or(targets.options.max_objects.map(|n| n as usize)) {
        limits.max_objects = n;
    }
    if let Some(n) = max_morphisms.or(targets.options.max_morphisms.map(|n| n as usize)) {
        limits.max_morphisms = n;
    }
    let mut passed = true;
    let mut out = Vec::new();
    for (n, d) in &targets.categories {
        if d.object_count() > limits.max_objects || d.morphism_count() > limits.max_morphisms {
            out.push(json!({ "target": n, "skipped": "exceeds --max-objects or --max-morphisms" }));
            continue;
        }
        let r = verify_localisation_universal(&wp, d, &limits)?;
        passed &= r.holds;
        out.push(json!({ "target": n, "report": r }));
    }
    Ok(Outcome { passed, report: json!({ "targets": out }), computed: Vec::new() })
}

fn adjoint(ws: &Workspace, c: &Common) -> Result<Outcome, Failure> {
    let omega = ws.endofunctor(c.endo.as_deref())?;
    let cat = &omega.src;
    let Some(adj) = find_left_adjoint(&omega)? else {
        return Ok(Outcome { passed: false, report: json!({ "exists": false }), computed: Vec::new() });
    };
    let triangles = adj.verify(&omega);
    let report = json!({
        "exists": true,
        "sigma": functor_json(&adj.sigma),
        "unit": adj.unit.iter().map(|u| cat.describe(u)).collect::<Vec<_>>(),
        "counit": adj.counit.iter().map(|u| cat.describe(u)).collect::<Vec<_>>(),
        "triangles": triangles,
    });
    Ok(Outcome { passed: triangles.passes(), report, computed: Vec::new() })
}

fn run(cli: Cli) -> Result<(Common, &'static str, Workspace, Outcome), Failure> {
    let (common, name) = match &cli.command {
        Command::Check(c) => (c.clone(), "check"),
        Command::Localise(c) => (c.clone(), "localise"),
        Command::Spectrify { common, .. } => (common.clone(), "spectrify"),
        Command::Stabilise { common, .. } => (common.clone(), "stabilise"),
        Command::Orbit { common, .. } => (common.clone(), "orbit"),
        Command::Compare { common, .. } => (common.clone(), "compare"),
        Command::Verify { what: Verify::Universal { common, .. } } => (common.clone(), "verify universal"),
        Command::Adjoint(c) => (c.clone(), "adjoint"),
    };
    let (_, ws) = load(&common.file)?;
    let outcome = match &cli.command {
        Command::Check(_) => check(&ws),
        Command::Localise(c) => localise(&ws, c)?,
        Command::Spectrify { common, spectrum } => spectrify_cmd(&ws, common, spectrum.as_deref())?,
        Command::Stabilise { common, window } => stabilise(&ws, common, *window)?,
        Command::Orbit { common, grade } => orbit(&ws, common, *grade)?,
        Command::Compare { common, window } => compare(&ws, common, *window)?,
        Command::Verify { what: Verify::Universal { common, target, max_objects, max_morphisms } } => {
            universal(&ws, common, target, *max_objects, *max_morphisms)?
        }
        Command::Adjoint(c) => adjoint(&ws, c)?,
    };
    Ok((common, name, ws, outcome))
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let _ = e.print();
        std::process::exit(if e.use_stderr() { 2 } else { 0 });
    });
    match run(cli) {
        Ok((common, name, ws, outcome)) => {
            let mut document = dsl::elaborate(&ws);
            for c in &outcome.computed {
                document.items.push(Item::Category(dsl::category_decl(c)));
            }
            if let Some(path) = &common.dot {
                let cat = outcome.computed.first().or(ws.categories.first().map(|(_, c)| c));
                let text = cat.map(|c| dsl::dot(c)).unwrap_or_else(|| "digraph {}\n".into());
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            let doc: Value = serde_json::to_value(dsl::Document::from_spec(&document)).expect("document serialises");
            let out = json!({
                "schema_version": SCHEMA_VERSION,
                "command": name,
                "file": common.file.display().to_string(),
                "passed": outcome.passed,
                "report": outcome.report,
                "document": doc,
            });
            let text = if common.compact { out.to_string() } else { serde_json::to_string_pretty(&out).expect("json") };
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(std::io::stdout(), "{}", json!({ "schema_version": SCHEMA_VERSION, "passed": false, "error": msg }));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Diagnostics(path, ds)) => {
            for d in ds {
                eprintln!("{}:{d}", path.display());
            }
            ExitCode::from(2)
        }
    }
}
