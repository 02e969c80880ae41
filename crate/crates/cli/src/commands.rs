use std::path::Path;
use std::time::Instant;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use framelab_core::construct::{
    failing_frame_from_pair, generic_full_spark_with, p3_family, verify_projections_full_spark,
    FullSparkOptions,
};
use framelab_core::frames::frame_bounds_with;
use framelab_core::perturb::{
    density_experiment, density_sweep, verify_l1_l3, verify_p1, DensityReport, ExperimentConfig,
};
use framelab_core::spark::{complement_property_with, does_phase_retrieval_with};
use framelab_core::wpr::{
    ambiguity_pairs_with, classify_pair, decide_wpr_with, pair_is_related, project_frame,
    projected_pr_equivalence_with,
};
use framelab_core::{
    example, example_registry, is_full_spark, sphere_distance, AmbiguityPair, Decision, Error,
    ExactFrame, Outcome, Subspace, Tolerance, WprConfig,
};

use crate::args::{Cli, Command, ConstructKind, ExamplesAction, ExperimentKind, GlobalOpts, Property};
use crate::frame_file::{parse_coords, parse_vector, parse_vectors, read_frame, write_frame_file, FrameFile, LoadedFrame};
use crate::report::{self, classification_json, classification_text, one_based, pair_json, vector_text};
use crate::{CliError, Output, EXIT_NO, EXIT_YES};

const DEFAULT_DENSITY_TRIALS: usize = 200;
const DEFAULT_HARNESS_TRIALS: usize = 1000;
const DEFAULT_EPSILON: f64 = 0.05;

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze { frame } => analyze(g, frame),
        Command::Decide { property, frame } => decide(g, *property, frame),
        Command::Witness { frame } => witness(g, frame),
        Command::Classify { frame, x, y } => classify(frame.as_deref(), x, y),
        Command::Project { frame, coords } => project(g, frame, coords.as_deref()),
        Command::Construct {
            kind,
            m,
            n,
            orthonormal_tail,
            x,
            y,
            output,
        } => construct(g, *kind, *m, *n, *orthonormal_tail, x.as_deref(), y.as_deref(), output.as_deref()),
        Command::Examples { action } => examples(action),
        Command::Experiment { kind, frame, n, sweep } => experiment(g, *kind, frame.as_deref(), *n, *sweep),
        Command::Distance { x, y } => distance(g, x, y),
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

struct Input {
    frame: LoadedFrame,
    exact: ExactFrame,
    info: Value,
}

fn load(path: &Path) -> Result<Input, CliError> {
    let (frame, bytes) = read_frame(path)?;
    let exact = frame.exact()?;
    let info = json!({
        "path": path.display().to_string(),
        "sha256": hex(&Sha256::digest(&bytes)),
        "backend": frame.backend().as_str(),
        "n": frame.dim(),
        "m": frame.len(),
    });
    Ok(Input { frame, exact, info })
}

fn header(input: &Input) -> String {
    format!(
        "frame: {} vectors in R^{} ({})",
        input.frame.len(),
        input.frame.dim(),
        input.frame.backend().as_str()
    )
}

fn timed<T>(out: &mut Output, label: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let value = f();
    out.timings.push((label.to_string(), start.elapsed().as_secs_f64() * 1e3));
    value
}

fn push_decision(out: &mut Output, check: &str, d: &Decision, frame: &ExactFrame) -> Result<(), CliError> {
    let (value, text) = report::decision(check, d, frame)?;
    out.results.push(value);
    out.text.extend(text);
    Ok(())
}

fn wpr_config(g: &GlobalOpts) -> WprConfig {
    WprConfig {
        enumeration_cap: g.cap,
    }
}

/// Runs `property` on `frame`; full spark needs at least `n` vectors.
fn run_property(g: &GlobalOpts, property: Property, frame: &ExactFrame) -> Result<Decision, CliError> {
    Ok(match property {
        Property::Spark => is_full_spark(frame)?,
        Property::Pr => does_phase_retrieval_with(frame, g.cap)?,
        Property::Wpr => decide_wpr_with(frame, &wpr_config(g))?,
    })
}

fn check_name(property: Property) -> &'static str {
    match property {
        Property::Spark => "full-spark",
        Property::Pr => "phase-retrieval",
        Property::Wpr => "weak-phase-retrieval",
    }
}

fn frame_value(frame: &ExactFrame) -> Value {
    serde_json::to_value(FrameFile::from_exact(frame)).expect("frame files serialize")
}

fn frame_text(frame: &ExactFrame) -> Vec<String> {
    frame
        .vectors()
        .iter()
        .enumerate()
        .map(|(i, v)| format!("  f{} = {}", i + 1, vector_text(v)))
        .collect()
}

fn analyze(g: &GlobalOpts, path: &Path) -> Result<Output, CliError> {
    let input = load(path)?;
    let f = &input.exact;
    let mut out = Output {
        input: Some(input.info.clone()),
        ..Output::default()
    };
    out.text.push(header(&input));
    let bounds = frame_bounds_with(&input.frame.float(), Tolerance(g.tolerance));
    let rank = f.rank();
    out.text.push(format!("rank: {rank}"));
    out.text.push(format!(
        "frame bounds: [{:.6}, {:.6}]{}",
        bounds.lower,
        bounds.upper,
        if bounds.parseval {
            " parseval"
        } else if bounds.tight {
            " tight"
        } else {
            ""
        }
    ));
    if f.len() >= f.dim() {
        let d = timed(&mut out, "full-spark", || is_full_spark(f))?;
        push_decision(&mut out, "full-spark", &d, f)?;
    } else {
        out.text.push("full-spark: not applicable (fewer than n vectors)".into());
    }
    let d = timed(&mut out, "complement-property", || complement_property_with(f, g.cap))?;
    push_decision(&mut out, "complement-property", &d, f)?;
    let d = timed(&mut out, "phase-retrieval", || does_phase_retrieval_with(f, g.cap))?;
    push_decision(&mut out, "phase-retrieval", &d, f)?;
    let d = timed(&mut out, "weak-phase-retrieval", || decide_wpr_with(f, &wpr_config(g)))?;
    push_decision(&mut out, "weak-phase-retrieval", &d, f)?;
    out.data.insert("rank".into(), json!(rank));
    out.data.insert(
        "frame_bounds".into(),
        json!({
            "lower": bounds.lower,
            "upper": bounds.upper,
            "tight": bounds.tight,
            "parseval": bounds.parseval,
        }),
    );
    Ok(out)
}

fn decide(g: &GlobalOpts, property: Property, path: &Path) -> Result<Output, CliError> {
    let input = load(path)?;
    let mut out = Output {
        input: Some(input.info.clone()),
        ..Output::default()
    };
    out.text.push(header(&input));
    let d = timed(&mut out, check_name(property), || run_property(g, property, &input.exact))?;
    push_decision(&mut out, check_name(property), &d, &input.exact)?;
    out.code = if d.outcome == Outcome::Yes { EXIT_YES } else { EXIT_NO };
    Ok(out)
}

fn witness(g: &GlobalOpts, path: &Path) -> Result<Output, CliError> {
    let input = load(path)?;
    let f = &input.exact;
    let mut out = Output {
        input: Some(input.info.clone()),
        ..Output::default()
    };
    out.text.push(header(&input));
    let d = decide_wpr_with(f, &wpr_config(g))?;
    push_decision(&mut out, "weak-phase-retrieval", &d, f)?;
    let d = does_phase_retrieval_with(f, g.cap)?;
    push_decision(&mut out, "phase-retrieval", &d, f)?;
    let pairs = timed(&mut out, "ambiguity-pairs", || ambiguity_pairs_with(f, &wpr_config(g)))?;
    out.text.push(format!("ambiguity pairs from line complements: {}", pairs.len()));
    let mut values = Vec::with_capacity(pairs.len());
    for p in &pairs {
        if !p.verify(f) {
            return Err(CliError::Verification("ambiguity pair magnitudes differ".into()));
        }
        let related = pair_is_related(p);
        out.text.push(format!(
            "  {} , {}  flips {}  {}",
            vector_text(&p.x),
            vector_text(&p.y),
            one_based(&p.partition),
            if related { "related" } else { "NOT related" }
        ));
        values.push(pair_json(p));
    }
    out.data.insert("ambiguity_pairs".into(), Value::from(values));
    Ok(out)
}

fn classify(frame: Option<&Path>, x: &str, y: &str) -> Result<Output, CliError> {
    let (xv, yv) = (parse_vector(x)?, parse_vector(y)?);
    if xv.len() != yv.len() {
        return Err(Error::LengthMismatch {
            expected: xv.len(),
            found: yv.len(),
        }
        .into());
    }
    let mut out = Output::default();
    let c = classify_pair(&xv, &yv)?;
    out.text.push(format!("x = {}", vector_text(&xv)));
    out.text.push(format!("y = {}", vector_text(&yv)));
    out.text.extend(classification_text(&c));
    out.data.insert("x".into(), report::vector_json(&xv));
    out.data.insert("y".into(), report::vector_json(&yv));
    out.data.insert("classification".into(), classification_json(&c));
    out.data.insert("reproduces".into(), json!(c.reproduces(&xv, &yv)));
    if let Some(path) = frame {
        let input = load(path)?;
        if input.exact.dim() != xv.len() {
            return Err(Error::LengthMismatch {
                expected: input.exact.dim(),
                found: xv.len(),
            }
            .into());
        }
        out.input = Some(input.info.clone());
        let pair = AmbiguityPair::new(&input.exact, xv.clone(), yv.clone());
        let same = pair.is_some();
        out.text.push(format!(
            "same measurement magnitudes under the frame: {}",
            if same { "yes" } else { "no" }
        ));
        out.data.insert("same_magnitudes".into(), json!(same));
        out.data.insert(
            "pair".into(),
            pair.as_ref().map_or(Value::Null, pair_json),
        );
    }
    Ok(out)
}

fn project(g: &GlobalOpts, path: &Path, coords: Option<&str>) -> Result<Output, CliError> {
    let input = load(path)?;
    let f = &input.exact;
    let mut out = Output {
        input: Some(input.info.clone()),
        ..Output::default()
    };
    out.text.push(header(&input));
    match coords {
        Some(list) => {
            let coords = parse_coords(list)?;
            let p = project_frame(f, &coords)?;
            out.text.push(format!("projection onto coordinates {}", one_based(&coords)));
            out.text.extend(frame_text(&p));
            if p.len() >= p.dim() {
                let d = is_full_spark(&p)?;
                push_decision(&mut out, "full-spark", &d, &p)?;
            }
            let d = does_phase_retrieval_with(&p, g.cap)?;
            push_decision(&mut out, "phase-retrieval", &d, &p)?;
            let d = decide_wpr_with(&p, &wpr_config(g))?;
            push_decision(&mut out, "weak-phase-retrieval", &d, &p)?;
            out.data.insert("coords".into(), json!(coords));
            out.data.insert("frame".into(), frame_value(&p));
        }
        None => {
            let r = timed(&mut out, "projections", || projected_pr_equivalence_with(f, g.cap))?;
            let yes_no = |b: bool| if b { "yes" } else { "no" };
            out.text.push(format!("no shared zero in a bad partition: {}", yes_no(r.no_shared_zero)));
            if let Some(z) = &r.shared_zero {
                out.text.push(format!(
                    "  partition side {} shares a zero at coordinate {}",
                    one_based(&z.subset),
                    z.coordinate + 1
                ));
            }
            out.text.push(format!("every hyperplane projection does PR: {}", yes_no(r.hyperplane_projections)));
            if let Some(c) = &r.failing_hyperplane {
                out.text.push(format!("  fails on coordinates {}", one_based(c)));
            }
            out.text.push(format!("every proper projection does PR: {}", yes_no(r.proper_projections)));
            if let Some(c) = &r.failing_proper {
                out.text.push(format!("  fails on coordinates {}", one_based(c)));
            }
            out.text.push(format!("conditions agree: {}", yes_no(r.agree)));
            out.text.push(format!("unit-norm frame: {}", yes_no(r.unit_norm)));
            out.data.insert("no_shared_zero".into(), json!(r.no_shared_zero));
            out.data.insert(
                "shared_zero".into(),
                r.shared_zero
                    .as_ref()
                    .map_or(Value::Null, |z| json!({"subset": z.subset, "coordinate": z.coordinate})),
            );
            out.data.insert("hyperplane_projections".into(), json!(r.hyperplane_projections));
            out.data.insert("failing_hyperplane".into(), json!(r.failing_hyperplane));
            out.data.insert("proper_projections".into(), json!(r.proper_projections));
            out.data.insert("failing_proper".into(), json!(r.failing_proper));
            out.data.insert("agree".into(), json!(r.agree));
            out.data.insert("unit_norm".into(), json!(r.unit_norm));
        }
    }
    Ok(out)
}

fn required<T: Copy>(v: Option<T>, flag: &str, kind: ConstructKind) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Format(format!("construct {} needs --{flag}", kind.as_str())))
}

#[allow(clippy::too_many_arguments)]
fn construct(
    g: &GlobalOpts,
    kind: ConstructKind,
    m: Option<usize>,
    n: Option<usize>,
    orthonormal_tail: bool,
    x: Option<&str>,
    y: Option<&str>,
    output: Option<&Path>,
) -> Result<Output, CliError> {
    let mut out = Output::default();
    let (frame, check) = match kind {
        ConstructKind::P3 => {
            let (m, n) = (required(m, "m", kind)?, required(n, "n", kind)?);
            (timed(&mut out, "construct", || p3_family(m, n, g.seed))?, Property::Spark)
        }
        ConstructKind::Fullspark => {
            let (m, n) = (required(m, "m", kind)?, required(n, "n", kind)?);
            let opts = FullSparkOptions { orthonormal_tail };
            (
                timed(&mut out, "construct", || generic_full_spark_with(m, n, g.seed, opts))?,
                Property::Spark,
            )
        }
        ConstructKind::Failing => {
            let xv = parse_vector(required(x, "x", kind)?)?;
            let yv = parse_vector(required(y, "y", kind)?)?;
            (
                timed(&mut out, "construct", || failing_frame_from_pair(&xv, &yv, g.seed))?,
                Property::Wpr,
            )
        }
    };
    out.text.push(format!("{} vectors in R^{}", frame.len(), frame.dim()));
    out.text.extend(frame_text(&frame));
    if frame.len() >= frame.dim() {
        let d = run_property(g, check, &frame)?;
        push_decision(&mut out, check_name(check), &d, &frame)?;
    }
    if kind == ConstructKind::P3 {
        let ok = verify_projections_full_spark(&frame);
        if !ok {
            return Err(CliError::Verification("a coordinate projection is not full spark".into()));
        }
        out.text.push("every coordinate projection is full spark: yes".into());
        out.data.insert("projections_full_spark".into(), json!(ok));
    }
    out.data.insert("frame".into(), frame_value(&frame));
    if let Some(path) = output {
        write_frame_file(path, &FrameFile::from_exact(&frame))?;
        out.text.push(format!("wrote {}", path.display()));
        out.data.insert("output".into(), json!(path.display().to_string()));
    }
    Ok(out)
}

fn outcome_value(o: Option<Outcome>) -> Value {
    o.map_or(Value::Null, |o| json!(o.to_string()))
}

fn examples(action: &ExamplesAction) -> Result<Output, CliError> {
    let mut out = Output::default();
    match action {
        ExamplesAction::List => {
            let mut list = Vec::new();
            for e in example_registry() {
                out.text.push(format!(
                    "{:<22} {}x{}  wpr {}  {}",
                    e.name,
                    e.frame.len(),
                    e.frame.dim(),
                    e.expected.wpr,
                    e.description
                ));
                list.push(json!({
                    "name": e.name,
                    "description": e.description,
                    "m": e.frame.len(),
                    "n": e.frame.dim(),
                }));
            }
            out.data.insert("examples".into(), Value::from(list));
        }
        ExamplesAction::Get { name, output } => {
            let e = example(name).ok_or_else(|| {
                let names: Vec<_> = example_registry().iter().map(|e| e.name).collect();
                CliError::Format(format!("unknown example {name:?}; known: {}", names.join(", ")))
            })?;
            out.text.push(format!("{}: {}", e.name, e.description));
            out.text.extend(frame_text(&e.frame));
            out.data.insert("name".into(), json!(e.name));
            out.data.insert("description".into(), json!(e.description));
            out.data.insert("frame".into(), frame_value(&e.frame));
            out.data.insert(
                "expected".into(),
                json!({
                    "wpr": e.expected.wpr.to_string(),
                    "pr": outcome_value(e.expected.pr),
                    "full_spark": outcome_value(e.expected.full_spark),
                }),
            );
            if let Some(path) = output {
                write_frame_file(path, &FrameFile::from_exact(&e.frame))?;
                out.text.push(format!("wrote {}", path.display()));
            }
        }
    }
    Ok(out)
}

fn density_json(r: &DensityReport) -> Value {
    json!({
        "epsilon": r.epsilon,
        "trials": r.trials,
        "seed": r.seed,
        "input_len": r.input_len,
        "base_outcome": r.base_outcome.to_string(),
        "failing": r.failing,
        "undecided": r.undecided,
        "fraction_failing": r.fraction_failing(),
    })
}

fn density_text(r: &DensityReport) -> String {
    format!(
        "epsilon {:.6e}: {}/{} perturbed frames fail WPR ({} undecided)",
        r.epsilon, r.failing, r.trials, r.undecided
    )
}

fn experiment(
    g: &GlobalOpts,
    kind: ExperimentKind,
    frame: Option<&Path>,
    n: usize,
    sweep: Option<usize>,
) -> Result<Output, CliError> {
    let mut out = Output::default();
    match kind {
        ExperimentKind::Density => {
            let path = frame.ok_or_else(|| CliError::Format("experiment density needs a frame file".into()))?;
            let input = load(path)?;
            out.input = Some(input.info.clone());
            out.text.push(header(&input));
            let base = input.frame.float();
            let cfg = ExperimentConfig::new(
                g.epsilon.unwrap_or(DEFAULT_EPSILON),
                g.trials.unwrap_or(DEFAULT_DENSITY_TRIALS),
                g.seed,
            )?;
            match sweep {
                Some(steps) => {
                    let s = timed(&mut out, "density", || density_sweep(&base, &cfg, steps))?;
                    out.text.extend(s.steps.iter().map(density_text));
                    out.text.push(match s.threshold {
                        Some(t) => format!("every trial failed from epsilon {t:.6e}"),
                        None => "no budget in the sweep made every trial fail".into(),
                    });
                    out.data.insert("steps".into(), Value::from(s.steps.iter().map(density_json).collect::<Vec<_>>()));
                    out.data.insert("threshold".into(), json!(s.threshold));
                }
                None => {
                    let r = timed(&mut out, "density", || density_experiment(&base, &cfg))?;
                    out.text.push(density_text(&r));
                    out.data = density_json(&r).as_object().cloned().unwrap_or_default();
                }
            }
        }
        ExperimentKind::P1 => {
            let trials = g.trials.unwrap_or(DEFAULT_HARNESS_TRIALS);
            let r = timed(&mut out, "p1", || verify_p1(n, trials, g.seed))?;
            out.text.push(format!(
                "hyperplane distance bound in R^{}: {} violations in {} trials, max ratio {:.6}, min margin {:.3e}",
                r.dim, r.violations, r.trials, r.max_ratio, r.min_margin
            ));
            out.data = json!({
                "dim": r.dim,
                "trials": r.trials,
                "seed": r.seed,
                "violations": r.violations,
                "max_ratio": r.max_ratio,
                "min_margin": r.min_margin,
            })
            .as_object()
            .cloned()
            .unwrap_or_default();
        }
        ExperimentKind::L1l3 => {
            let trials = g.trials.unwrap_or(DEFAULT_HARNESS_TRIALS);
            let r = timed(&mut out, "l1l3", || verify_l1_l3(n, trials, g.seed))?;
            out.text.push(format!("basis perturbation bounds in R^{}, {} trials:", r.dim, r.trials));
            out.text.push(format!("  subspace distance violations: {} (max ratio {:.6})", r.l1_violations, r.max_l1_ratio));
            out.text.push(format!("  equivalence violations: {}", r.equivalence_violations));
            out.text.push(format!(
                "  unconditional constant violations: {} (max ratio {:.6}); weaker bound: {}",
                r.unconditional_violations, r.max_unconditional_ratio, r.proved_unconditional_violations
            ));
            out.data = json!({
                "dim": r.dim,
                "trials": r.trials,
                "seed": r.seed,
                "l1_violations": r.l1_violations,
                "equivalence_violations": r.equivalence_violations,
                "unconditional_violations": r.unconditional_violations,
                "proved_unconditional_violations": r.proved_unconditional_violations,
                "max_l1_ratio": r.max_l1_ratio,
                "max_unconditional_ratio": r.max_unconditional_ratio,
                "violations": r.violations(),
            })
            .as_object()
            .cloned()
            .unwrap_or_default();
        }
    }
    Ok(out)
}

fn distance(g: &GlobalOpts, x: &str, y: &str) -> Result<Output, CliError> {
    let tol = Tolerance(g.tolerance);
    let to_f64 = |s: &str| -> Result<Vec<_>, CliError> { Ok(parse_vectors(s)?.iter().map(|v| v.to_f64()).collect()) };
    let (xs, ys) = (to_f64(x)?, to_f64(y)?);
    let (sx, sy) = (Subspace::span(&xs, tol)?, Subspace::span(&ys, tol)?);
    if sx.ambient_dim() != sy.ambient_dim() {
        return Err(Error::LengthMismatch {
            expected: sx.ambient_dim(),
            found: sy.ambient_dim(),
        }
        .into());
    }
    let d = sphere_distance(&sx, &sy)?;
    let mut out = Output::default();
    out.text.push(format!(
        "dim X = {}, dim Y = {} in R^{}: distance {d:.12}",
        sx.dim(),
        sy.dim(),
        sx.ambient_dim()
    ));
    let mut data = Map::new();
    data.insert("ambient_dim".into(), json!(sx.ambient_dim()));
    data.insert("dim_x".into(), json!(sx.dim()));
    data.insert("dim_y".into(), json!(sy.dim()));
    data.insert("distance".into(), json!(d));
    out.data = data;
    Ok(out)
}
