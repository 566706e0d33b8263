use std::fmt::Write as _;
use std::path::Path;

use axiom_suite::{check_all_with, CheckConfig, CheckOutcome};
use instance_lab::{
    fit_resolver, identified_spec, induce, mutate, regime_spec, witnesses_replay, GeneratorSpec,
    Instance, MutationOp, Regime,
};
use relation_model::{parse_relation, PreferenceRelation};
use rep_builder::{fit, verify, Agreement, FitConfig, Representation};
use serde_json::{json, Value};

use crate::config::{Command, Format, GenerateArgs, RoundtripArgs, RunConfig};
use crate::Failure;

/// What a command prints and its exit code (0 or 1).
pub struct Output {
    pub code: u8,
    pub body: String,
}

pub fn run(cfg: &RunConfig) -> Result<Output, Failure> {
    match &cfg.command {
        Command::Check => cmd_check(cfg),
        Command::Fit => cmd_fit(cfg),
        Command::Verify { representation } => cmd_verify(cfg, representation),
        Command::Generate(args) => cmd_generate(cfg, args),
        Command::Roundtrip(args) => cmd_roundtrip(cfg, args),
    }
}

pub fn emit(cfg: &RunConfig, body: &str) -> Result<(), Failure> {
    match &cfg.output {
        Some(p) => {
            std::fs::write(p, body).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn fit_config(cfg: &RunConfig) -> FitConfig {
    FitConfig {
        delta: cfg.delta,
        tol: cfg.tol,
        budget: cfg.budget,
    }
}

fn check_config(cfg: &RunConfig) -> CheckConfig {
    CheckConfig {
        budget: cfg.budget,
        ..CheckConfig::default()
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Loads a relation file, or the relation inside a generated bundle.
fn load_relation(path: &Path) -> Result<PreferenceRelation, Failure> {
    let text = read(path)?;
    let bundled = serde_json::from_str::<Value>(&text)
        .ok()
        .and_then(|v| v.get("relation").map(Value::to_string));
    parse_relation(bundled.as_deref().unwrap_or(&text))
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn json_body(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn check_json(rel: &PreferenceRelation, out: &CheckOutcome) -> Value {
    json!({
        "violation": out.has_violation(),
        "reports": out.reports.iter().map(|r| r.to_json(rel.space())).collect::<Vec<_>>(),
    })
}

fn check_text(rel: &PreferenceRelation, out: &CheckOutcome) -> String {
    let mut s = String::new();
    for r in &out.reports {
        let status = serde_json::to_value(r.status).expect("status serializes");
        let _ = write!(s, "{:<8}{}", r.axiom.name(), status.as_str().unwrap_or("?"));
        if let Some(w) = &r.witness {
            let _ = write!(s, "  {}", w.items(rel.space()).join(" "));
        }
        if let Some(n) = &r.note {
            let _ = write!(s, "  ({n})");
        }
        s.push('\n');
    }
    s
}

fn check(cfg: &RunConfig, rel: &PreferenceRelation) -> CheckOutcome {
    let resolver = fit_resolver(&fit_config(cfg));
    check_all_with(rel, &check_config(cfg), Some(&resolver))
}

pub fn cmd_check(cfg: &RunConfig) -> Result<Output, Failure> {
    let rel = load_relation(cfg.input()?)?;
    let out = check(cfg, &rel);
    let body = match cfg.format {
        Format::Json => json_body(&check_json(&rel, &out)),
        Format::Text => check_text(&rel, &out),
    };
    Ok(Output {
        code: out.has_violation() as u8,
        body,
    })
}

pub fn cmd_fit(cfg: &RunConfig) -> Result<Output, Failure> {
    let rel = load_relation(cfg.input()?)?;
    let (code, v) = match fit(&rel, &fit_config(cfg)) {
        Ok(f) => (0, f.to_json()),
        Err(d) => (1, json!({ "diagnosis": d })),
    };
    let body = match cfg.format {
        Format::Json => json_body(&v),
        Format::Text => fit_text(&v),
    };
    Ok(Output { code, body })
}

fn fit_text(v: &Value) -> String {
    if let Some(d) = v.get("diagnosis") {
        return format!("fit failed at {}: {}\n", d["stage"], d["message"]);
    }
    let mut s = String::new();
    for key in ["path", "nu", "k", "lambda", "case", "agreement", "f1", "f2"] {
        let _ = writeln!(s, "{key}: {}", v[key]);
    }
    s
}

fn agreement_json(a: &Agreement, rep: &Representation) -> Value {
    json!({
        "agreement": a.percent(),
        "pairs": a.pairs,
        "agreeing": a.agreeing,
        "first_disagreement": a.first_disagreement,
        "nu": {"1": rep.nu1, "2": rep.nu2},
        "case": rep.case(),
    })
}

pub fn cmd_verify(cfg: &RunConfig, representation: &Path) -> Result<Output, Failure> {
    let rel = load_relation(cfg.input()?)?;
    let text = read(representation)?;
    let bad =
        |e: &dyn std::fmt::Display| Failure::usage(format!("{}: {e}", representation.display()));
    let v: Value = serde_json::from_str(&text).map_err(|e| bad(&e))?;
    let rep = Representation::from_json(&v)
        .and_then(|r| r.aligned_to(rel.space()))
        .map_err(|e| bad(&e))?;
    let a = verify(&rel, &rep, cfg.tol);
    let v = agreement_json(&a, &rep);
    let body = match cfg.format {
        Format::Json => json_body(&v),
        Format::Text => format!(
            "agreement: {}% ({}/{} pairs)\ncase: {}\nfirst disagreement: {}\n",
            v["agreement"], a.agreeing, a.pairs, v["case"], v["first_disagreement"]
        ),
    };
    Ok(Output {
        code: (!a.is_exact()) as u8,
        body,
    })
}

fn generator_spec(cfg: &RunConfig, args: &GenerateArgs) -> GeneratorSpec {
    let drawn = regime_spec(args.regime, args.grid, cfg.seed);
    let (nu1, nu2) = match (args.nu1, args.nu2) {
        (Some(a), Some(b)) => (a, b),
        _ => (drawn.nu1, drawn.nu2),
    };
    GeneratorSpec {
        nu1,
        nu2,
        value_mode: args.mode.into(),
        offset: args.offset,
        ..drawn
    }
}

pub fn cmd_generate(cfg: &RunConfig, args: &GenerateArgs) -> Result<Output, Failure> {
    let spec = generator_spec(cfg, args);
    let inst = induce(&spec).map_err(|e| Failure::usage(e.to_string()))?;
    Ok(Output {
        code: 0,
        body: json_body(&inst.to_json()),
    })
}

/// Weight error above which a recovered capacity counts as wrong.
const NU_TOL: f64 = 1e-6;

fn roundtrip_instance(args: &RoundtripArgs, seed: u64) -> Result<Instance, Failure> {
    let square = args.grid.0 == args.grid.1;
    let spec = if args.regime == Regime::Interactive && !args.uniform && square {
        identified_spec(args.grid.0, seed)
    } else {
        regime_spec(args.regime, args.grid, seed)
    };
    induce(&spec).map_err(|e| Failure::usage(e.to_string()))
}

/// One seed of the round trip; `Err` names the failing stage.
fn roundtrip_one(cfg: &RunConfig, args: &RoundtripArgs, inst: &Instance) -> Result<Value, String> {
    let rel = &inst.relation;
    let out = check(cfg, rel);
    if let Some(r) = out.reports.iter().find(|r| r.is_violation()) {
        return Err(format!(
            "check: {} violated on an induced relation",
            r.axiom.name()
        ));
    }
    let f = fit(rel, &fit_config(cfg)).map_err(|d| format!("fit: {d}"))?;
    let rep = &f.representation;
    let a = verify(rel, rep, cfg.tol);
    if !a.is_exact() {
        return Err(format!("verify: agreement {}%", a.percent()));
    }
    let (n1, n2) = inst.nu();
    let err = (rep.nu1 - n1).abs().max((rep.nu2 - n2).abs());
    let nu_checked = matches!(args.regime, Regime::Interactive | Regime::Min | Regime::Max);
    if nu_checked && err > NU_TOL {
        return Err(format!(
            "nu: recovered ({}, {}), generated ({n1}, {n2})",
            rep.nu1, rep.nu2
        ));
    }
    Ok(json!({ "path": f.path, "nu_error": err, "case": rep.case() }))
}

/// A mutant passes when the checks flag it with replayable witnesses, or
/// when it refits exactly.
fn mutant_one(cfg: &RunConfig, inst: &Instance, seed: u64) -> Result<Value, String> {
    let op = MutationOp::ALL[(seed % 3) as usize];
    let Ok((rel, m)) = mutate(&inst.relation, op, seed)
        .or_else(|_| mutate(&inst.relation, MutationOp::FlipStrict, seed))
    else {
        return Ok(json!({ "outcome": "no edit site" }));
    };
    let out = check(cfg, &rel);
    if out.has_violation() {
        if !witnesses_replay(&rel, &out) {
            return Err("check: a witness does not replay".into());
        }
        return Ok(json!({ "op": m.op, "outcome": "flagged" }));
    }
    match fit(&rel, &fit_config(cfg)) {
        Ok(f) if verify(&rel, &f.representation, cfg.tol).is_exact() => {
            Ok(json!({ "op": m.op, "outcome": "refit" }))
        }
        _ => Err("silent mismatch: the mutant passes every check but does not refit".into()),
    }
}

pub fn cmd_roundtrip(cfg: &RunConfig, args: &RoundtripArgs) -> Result<Output, Failure> {
    let mut runs = Vec::new();
    let mut failed = 0;
    for seed in cfg.seed..cfg.seed.saturating_add(args.count) {
        let inst = roundtrip_instance(args, seed)?;
        let res = if args.mutate {
            mutant_one(cfg, &inst, seed)
        } else {
            roundtrip_one(cfg, args, &inst)
        };
        let mut entry = json!({ "seed": seed, "nu": [inst.spec.nu1, inst.spec.nu2] });
        match res {
            Ok(v) => entry["result"] = v,
            Err(e) => {
                failed += 1;
                entry["failure"] = json!(e);
            }
        }
        runs.push(entry);
    }
    let v = json!({
        "regime": args.regime.name(),
        "grid": [args.grid.0, args.grid.1],
        "mutate": args.mutate,
        "runs": runs.len(),
        "failed": failed,
        "details": runs,
    });
    let body = match cfg.format {
        Format::Json => json_body(&v),
        Format::Text => {
            let mut s = format!(
                "{} runs, {} failed ({} regime, {}x{})\n",
                runs.len(),
                failed,
                args.regime.name(),
                args.grid.0,
                args.grid.1
            );
            for r in runs.iter().filter(|r| r.get("failure").is_some()) {
                let _ = writeln!(s, "seed {}: {}", r["seed"], r["failure"]);
            }
            s
        }
    };
    Ok(Output {
        code: (failed > 0) as u8,
        body,
    })
}
