use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use dtwo::bialgebroid::{axiom_audit, RightBialgebroid, TeeContext};
use dtwo::galois::{
    balanced_audit, canonical_coaction, coaction, coinvariants, comodule_algebra_audit, d2_iff_corollary_audit,
    galois_map, kappa, main_theorem_audit,
};
use dtwo::io::ExtensionSpec;
use dtwo::quasibase::{left_d2_quasibase, right_d2_quasibase};
use dtwo::{action, catalog, Error, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Analyze,
    D2,
    Bialgebroid,
    Galois,
    Audit,
    GenExample,
}

/// Exact depth-two, bialgebroid and Galois audits of algebra extensions.
#[derive(Parser, Debug)]
#[command(name = "dtwo", version)]
struct Cli {
    /// What to run; may also be given with --command.
    #[arg(value_enum)]
    cmd: Option<Command>,
    /// Input file, inline JSON or catalog name; for gen-example, the example name.
    target: Option<String>,
    #[arg(long, value_enum)]
    command: Option<Command>,
    /// Input file, inline JSON or catalog name.
    #[arg(long)]
    input: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Override the field: Q or Fp:p.
    #[arg(long, value_parser = parse_field)]
    field: Option<Field>,
    /// Write the result here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Input(String),
    Inconsistent(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

fn load_spec(source: &str) -> Result<ExtensionSpec, Failure> {
    let trimmed = source.trim_start();
    if trimmed.starts_with('{') {
        return Ok(ExtensionSpec::parse(trimmed)?);
    }
    match std::fs::read_to_string(source) {
        Ok(text) => Ok(ExtensionSpec::parse(&text)?),
        Err(e) => catalog::example(source).map_err(|_| Failure::Input(format!("cannot read {source}: {e}"))),
    }
}

fn analyze(spec: &ExtensionSpec, field: Option<Field>) -> Result<Value, Failure> {
    let ext = spec.build(field)?;
    let ctx = TeeContext::new(&ext)?;
    let powers = ctx.powers();
    Ok(json!({
        "name": spec.name(),
        "field": ext.field().to_string(),
        "dim_A": ext.a().dim(),
        "dim_B": ext.b().dim(),
        "dim_R": ctx.r_dim(),
        "dim_T": ctx.t_dim(),
        "dim_AxA": powers.dim(2),
        "right_d2": right_d2_quasibase(powers)?.is_some(),
        "left_d2": left_d2_quasibase(powers)?.is_some(),
        "balanced": balanced_audit(&ext)?.balanced,
    }))
}

fn d2(spec: &ExtensionSpec, field: Option<Field>) -> Result<Value, Failure> {
    let ext = spec.build(field)?;
    let ctx = TeeContext::new(&ext)?;
    let right = right_d2_quasibase(ctx.powers())?;
    let left = left_d2_quasibase(ctx.powers())?;
    let cor = d2_iff_corollary_audit(&ext)?;
    let v = json!({
        "right_d2": right.is_some(),
        "left_d2": left.is_some(),
        "right_quasibase_size": right.as_ref().map(|q| q.len()),
        "left_quasibase_size": left.as_ref().map(|q| q.len()),
        "corollary": cor,
    });
    if cor.agree {
        Ok(v)
    } else {
        Err(Failure::Inconsistent(v))
    }
}

fn bialgebroid(spec: &ExtensionSpec, field: Option<Field>) -> Result<Value, Failure> {
    let ext = spec.build(field)?;
    let ctx = Arc::new(TeeContext::new(&ext)?);
    let base = json!({
        "dim_T": ctx.t_dim(),
        "dim_R": ctx.r_dim(),
        "dim_TxT": ctx.tt().dim(),
    });
    let bgd = match RightBialgebroid::canonical(Arc::clone(&ctx)) {
        Ok(b) => b,
        Err(e) => {
            let mut v = base;
            v["buildable"] = json!(false);
            v["reason"] = json!(e.to_string());
            return Ok(v);
        }
    };
    let axioms = axiom_audit(&bgd);
    let anchor = action::anchor(&bgd)?;
    let routes = match right_d2_quasibase(ctx.powers())? {
        Some(q) => Some(RightBialgebroid::from_quasibase(Arc::clone(&ctx), &q)?.coproduct == bgd.coproduct),
        None => None,
    };
    let mut v = base;
    v["buildable"] = json!(true);
    v["axioms"] = serde_json::to_value(&axioms).expect("report");
    v["anchor"] = serde_json::to_value(&anchor.checks).expect("report");
    v["quasibase_coproduct_agrees"] = json!(routes);
    if routes == Some(false) {
        return Err(Failure::Inconsistent(v));
    }
    Ok(v)
}

fn galois(spec: &ExtensionSpec, field: Option<Field>) -> Result<Value, Failure> {
    let ext = spec.build(field)?;
    let ctx = Arc::new(TeeContext::new(&ext)?);
    let rqb = right_d2_quasibase(ctx.powers())?;
    let k = kappa(&ctx)?;
    let (delta, bijective) = match &rqb {
        Some(q) => (Some(coaction(&ctx, q)?), galois_map(&ctx, q)?.bijective),
        None => {
            let d = canonical_coaction(&ctx, &k);
            let b = d.is_some();
            (d, b)
        }
    };
    let mut v = json!({
        "right_d2": rqb.is_some(),
        "balanced": balanced_audit(&ext)?.balanced,
        "galois_bijective": bijective,
    });
    if let Some(d) = delta {
        v["coinvariants"] = serde_json::to_value(coinvariants(&ctx, &d)).expect("report");
        if let Ok(bgd) = RightBialgebroid::canonical(Arc::clone(&ctx)) {
            v["comodule_conditions"] = serde_json::to_value(comodule_algebra_audit(&bgd, &d)).expect("report");
        }
    }
    Ok(v)
}

fn audit(spec: &ExtensionSpec, field: Option<Field>) -> Result<Value, Failure> {
    let ext = spec.build(field)?;
    let rep = main_theorem_audit(&ext)?;
    let v = serde_json::to_value(&rep).expect("report");
    if rep.consistent() {
        Ok(v)
    } else {
        Err(Failure::Inconsistent(v))
    }
}

/// `key: value` lines, nested keys joined with dots.
fn to_text(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                to_text(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                let name = x.get("name").and_then(Value::as_str).map_or_else(|| i.to_string(), str::to_string);
                let mut rest = x.clone();
                if let Some(obj) = rest.as_object_mut() {
                    obj.remove("name");
                }
                to_text(&format!("{prefix}.{name}"), &rest, out);
            }
        }
        other => {
            let shown = match other {
                Value::String(s) => s.clone(),
                x => x.to_string(),
            };
            out.push_str(&format!("{prefix}: {shown}\n"));
        }
    }
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(v: &Value, as_json: bool) -> String {
    if as_json {
        let mut s = serde_json::to_string_pretty(v).expect("json");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        to_text("", v, &mut s);
        s
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let command = match (cli.cmd, cli.command) {
        (Some(a), Some(b)) if a != b => return Err(Failure::Input("conflicting commands".into())),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Failure::Input("no command given".into())),
    };
    if command == Command::GenExample {
        let name = cli.target.or(cli.input).ok_or_else(|| Failure::Input("gen-example needs a name".into()))?;
        let spec = catalog::example(&name)?;
        let spec = match cli.field {
            Some(f) => ExtensionSpec::from_extension(spec.name(), &spec.build(Some(f))?),
            None => spec,
        };
        let mut text = spec.to_json();
        text.push('\n');
        return emit(&text, &cli.output);
    }
    let source = match (cli.target, cli.input) {
        (Some(_), Some(_)) => return Err(Failure::Input("give the input once".into())),
        (Some(s), None) | (None, Some(s)) => s,
        (None, None) => return Err(Failure::Input("no input given".into())),
    };
    let spec = load_spec(&source)?;
    let result = match command {
        Command::Analyze => analyze(&spec, cli.field),
        Command::D2 => d2(&spec, cli.field),
        Command::Bialgebroid => bialgebroid(&spec, cli.field),
        Command::Galois => galois(&spec, cli.field),
        Command::Audit => audit(&spec, cli.field),
        Command::GenExample => unreachable!(),
    };
    match result {
        Ok(v) => emit(&render(&v, cli.json), &cli.output),
        Err(Failure::Inconsistent(v)) => {
            emit(&render(&v, cli.json), &cli.output)?;
            Err(Failure::Inconsistent(v))
        }
        Err(e) => Err(e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Inconsistent(_)) => {
            eprintln!("FAILURE: internal consistency check disagrees");
            ExitCode::from(2)
        }
    }
}
