//! `morita`: check objects in a JSON workspace, decide Morita equivalence of
//! cells and build standard examples.
//!
//! Exit codes: 0 pass, 1 mathematical failure, 2 input or usage error.

mod builtins;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use morita_core::bgdkit::{check_bialgebroid, sweedler_bialgebroid};
use morita_core::examples::{
    apply_drinfeld_twist, azumaya_inverse_cell, build_azumaya_cell, build_bicharacter_twist, build_blowup,
    sqm_base_change, BaseChangeData,
};
use morita_core::moritakit::{check_one_cell, compose_bgd, endomorphism_bialgebroid, morita_verdict};
use morita_core::{Alg, Bialgebroid, Error, Field, Report, Workspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "morita", version, about = "Exact checks for bialgebroids and their Morita equivalences")]
struct Cli {
    /// Workspace file.
    #[arg(long, global = true, default_value = "workspace.json")]
    workspace: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Field for a new workspace: Q or GF:p.
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the axiom checker for a named object.
    Check { name: String },
    /// Decide whether a cell is a monoidal Morita equivalence.
    Morita {
        cell: String,
        /// Also write the certificate to this file.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Build an example and merge it into the workspace.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
        /// Prefix for the names of the new objects.
        #[arg(long, default_value = "")]
        prefix: String,
    },
    /// Compose cells `P: B → A` and `Q: C → B` into `P ⊗_B Q`.
    Compose {
        p: String,
        q: String,
        #[arg(long)]
        name: String,
    },
    /// Check the endomorphism bialgebroid of a cell.
    Endo { cell: String },
    /// Check every object in the workspace.
    Report,
}

#[derive(Subcommand, Debug)]
enum BuildKind {
    /// `E(R)`, named `E`.
    Sweedler {
        #[arg(long)]
        algebra: String,
    },
    /// The cell `R: E(R) → E(k)` as `P`, and its inverse `Q` for matrix algebras.
    Azumaya {
        #[arg(long)]
        algebra: String,
    },
    /// `A = Mat_n(B)` over `Diag_n` and the cell `P = B^n`.
    Blowup {
        #[arg(long)]
        bialgebra: String,
        #[arg(long)]
        n: usize,
    },
    /// A bicharacter twist `J` of `k[G]`, the twisted `Btw` and the cell `P`.
    Twist {
        #[arg(long)]
        group: String,
        /// Exponent of −1, e.g. "ad" for χ((a,b),(c,d)) = (−1)^{ad}.
        #[arg(long)]
        bichar: String,
    },
    /// `A = Q⊙B⊙P` with cells `X` and `Y`.
    Basechange {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        b: String,
    },
    /// The endomorphism bialgebroid `E` of a cell and the cell `EP` over it.
    Endo {
        #[arg(long)]
        cell: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Precondition(_) | Error::IllDefined(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn field_arg(cli: &Cli) -> Result<Option<Field>, Failure> {
    cli.field.as_deref().map(|s| s.parse::<Field>()).transpose().map_err(Failure::from)
}

fn load(cli: &Cli) -> Result<Workspace, Failure> {
    let ws = Workspace::load(&cli.workspace)?;
    if let Some(f) = field_arg(cli)? {
        if f != ws.field {
            return Err(usage(format!("workspace is over {}, not {f}", ws.field)));
        }
    }
    Ok(ws)
}

fn load_or_new(cli: &Cli) -> Result<Workspace, Failure> {
    if cli.workspace.exists() {
        load(cli)
    } else {
        Ok(Workspace::new(field_arg(cli)?.unwrap_or(Field::Rationals)))
    }
}

/// Writes to stdout; a closed pipe is not an error for a report printer.
fn print(format: Format, value: &Value, text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value).expect("JSON values serialize")),
        Format::Text => write!(out, "{text}"),
    };
}

fn emit_report(format: Format, r: &Report) -> u8 {
    print(format, &r.to_json(), &r.to_text());
    u8::from(!r.pass())
}

fn algebra(ws: &mut Workspace, name: &str) -> Result<Alg, Failure> {
    if let Some(a) = ws.algebras.get(name) {
        return Ok(a.clone());
    }
    let a = Arc::new(builtins::algebra(ws.field, name).ok_or_else(|| usage(format!("unknown algebra {name:?}")))??);
    ws.add_algebra(name, a.clone())?;
    Ok(a)
}

fn bialgebra(ws: &mut Workspace, name: &str) -> Result<Arc<Bialgebroid>, Failure> {
    if let Some(b) = ws.bialgebroids.get(name) {
        return Ok(b.clone());
    }
    let b = Arc::new(builtins::bialgebra(ws.field, name).ok_or_else(|| usage(format!("unknown bialgebra {name:?}")))??);
    ws.add_bialgebroid(name, b.clone())?;
    Ok(b)
}

fn build(ws: &mut Workspace, kind: &BuildKind, prefix: &str) -> Result<Vec<String>, Failure> {
    let name = |s: &str| format!("{prefix}{s}");
    let mut added = Vec::new();
    match kind {
        BuildKind::Sweedler { algebra: a } => {
            let r = algebra(ws, a)?;
            ws.add_bialgebroid(&name("E"), Arc::new(sweedler_bialgebroid(&r)?))?;
            added.push(name("E"));
        }
        BuildKind::Azumaya { algebra: a } => {
            let r = algebra(ws, a)?;
            ws.add_one_cell(&name("P"), Arc::new(build_azumaya_cell(&r)?))?;
            added.push(name("P"));
            if let Ok(q) = azumaya_inverse_cell(&r) {
                ws.add_one_cell(&name("Q"), Arc::new(q))?;
                added.push(name("Q"));
            }
        }
        BuildKind::Blowup { bialgebra: b, n } => {
            let b = bialgebra(ws, b)?;
            let bl = build_blowup(b, *n)?;
            ws.add_bialgebroid(&name("A"), bl.a)?;
            ws.add_one_cell(&name("P"), Arc::new(bl.cell))?;
            added.extend([name("A"), name("P")]);
        }
        BuildKind::Twist { group, bichar } => {
            let table = builtins::group_table(group).ok_or_else(|| usage(format!("unknown group {group:?}")))?;
            if table.len() != 4 || builtins::group_table("Z2xZ2").as_ref() != Some(&table) {
                return Err(usage("bicharacter expressions are defined on Z2xZ2"));
            }
            let chi = builtins::klein_bicharacter(ws.field, bichar)?;
            let t = build_bicharacter_twist(ws.field, &table, &chi)?;
            let tw = apply_drinfeld_twist(&t)?;
            ws.add_bialgebroid(&name("B"), t.bialgebroid.clone())?;
            ws.add_twist(&name("J"), t)?;
            ws.add_bialgebroid(&name("Btw"), tw.bialgebroid)?;
            ws.add_one_cell(&name("P"), Arc::new(tw.cell))?;
            added.extend([name("B"), name("J"), name("Btw"), name("P")]);
        }
        BuildKind::Basechange { p, q, b } => {
            let d = BaseChangeData {
                p: ws.one_cell(p)?.as_ref().clone(),
                q: ws.one_cell(q)?.as_ref().clone(),
                b: bialgebra(ws, b)?,
            };
            let bc = sqm_base_change(&d)?;
            ws.add_bialgebroid(&name("A"), bc.a)?;
            ws.add_one_cell(&name("X"), Arc::new(bc.x))?;
            ws.add_one_cell(&name("Y"), Arc::new(bc.y))?;
            added.extend([name("A"), name("X"), name("Y")]);
        }
        BuildKind::Endo { cell } => {
            let p = ws.one_cell(cell)?.clone();
            let e = endomorphism_bialgebroid(&p)?;
            let ep = e.cell(&p)?;
            ws.add_bialgebroid(&name("E"), e.bialgebroid.clone())?;
            ws.add_one_cell(&name("EP"), Arc::new(ep))?;
            added.extend([name("E"), name("EP")]);
        }
    }
    Ok(added)
}

fn save(ws: &Workspace, path: &Path) -> Result<(), Failure> {
    ws.save(path).map_err(|e| usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Check { name } => {
            let ws = load(cli)?;
            let r = ws.lookup(name)?.check()?;
            Ok(emit_report(cli.format, &r))
        }
        Command::Morita { cell, certificate } => {
            let ws = load(cli)?;
            let v = morita_verdict(ws.one_cell(cell)?)?;
            let out = json!({
                "cell": cell,
                "equivalent": v.equivalent,
                "first_failure": v.first_failure,
                "report": v.report.to_json(),
                "certificate": v.certificate,
            });
            let mut text = v.report.to_text();
            text.push_str(&match v.first_failure {
                None => "verdict: equivalent\n".to_string(),
                Some(id) => format!("verdict: not equivalent (first failure {id})\n"),
            });
            if let (Some(path), Some(cert)) = (certificate, &v.certificate) {
                let body = serde_json::to_string_pretty(cert).expect("JSON values serialize") + "\n";
                std::fs::write(path, body).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
            print(cli.format, &out, &text);
            Ok(u8::from(!v.equivalent))
        }
        Command::Build { kind, prefix } => {
            let mut ws = load_or_new(cli)?;
            let added = build(&mut ws, kind, prefix)?;
            save(&ws, &cli.workspace)?;
            let text: String = added.iter().map(|n| format!("added {n}\n")).collect();
            print(cli.format, &json!({ "added": added }), &text);
            Ok(0)
        }
        Command::Compose { p, q, name } => {
            let mut ws = load(cli)?;
            let pq = compose_bgd(ws.one_cell(p)?, ws.one_cell(q)?)?;
            ws.add_one_cell(name, Arc::new(pq))?;
            save(&ws, &cli.workspace)?;
            print(cli.format, &json!({ "added": [name] }), &format!("added {name}\n"));
            Ok(0)
        }
        Command::Endo { cell } => {
            let ws = load(cli)?;
            let p = ws.one_cell(cell)?;
            let e = endomorphism_bialgebroid(p)?;
            let mut r = Report::new(format!("endomorphisms of {cell}"));
            r.absorb(&check_bialgebroid(&e.bialgebroid));
            r.absorb(&check_one_cell(&e.cell(p)?));
            r.note("dim_e", e.bialgebroid.dim());
            r.note("dim_t", e.bialgebroid.base.dim());
            Ok(emit_report(cli.format, &r))
        }
        Command::Report => {
            let ws = load(cli)?;
            let mut all = serde_json::Map::new();
            let mut text = String::new();
            let mut ok = true;
            for name in ws.names() {
                let r = ws.lookup(name)?.check()?;
                ok &= r.pass();
                text.push_str(&format!("== {name}\n{}", r.to_text()));
                all.insert(name.to_string(), r.to_json());
            }
            print(cli.format, &Value::Object(all), &text);
            Ok(u8::from(!ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
