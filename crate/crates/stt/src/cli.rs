//! Command-line interface.
//!
//! Exit codes: 0 for success (including "yes, it is a subtype"), 1 for a
//! checked negative (not a subtype, program rejected), 2 for operational
//! errors (bad syntax, missing files).

use std::collections::HashMap;
use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::eval::{self, Env};
use crate::syntax::ast::{Decl, TypeExpr};
use crate::syntax::{parse_decls, parse_expr, parse_type};
use crate::types::{Config, Engine};
use crate::typing::{self, TypeEnv};

#[derive(Parser)]
#[command(
    name = "stt",
    about = "Set-theoretic types: semantic subtyping and a small checked language"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    engine: EngineFlags,
}

#[derive(Args)]
struct EngineFlags {
    /// Disable memoization of emptiness results across queries.
    #[arg(long, global = true)]
    no_memo: bool,
    /// Disable the single-arrow shortcut in the arrow emptiness loop.
    #[arg(long, global = true)]
    no_strict_subset_opt: bool,
    /// Enable the early cutoff heuristic in the arrow emptiness loop.
    #[arg(long, global = true)]
    early_cutoff: bool,
}

impl EngineFlags {
    fn engine(&self) -> Engine {
        Engine::new(Config {
            memo: !self.no_memo,
            strict_subset_opt: !self.no_strict_subset_opt,
            early_cutoff: self.early_cutoff,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the first type is a subtype of the second.
    Subtype {
        left: String,
        right: String,
        /// Print a separating value when the answer is no.
        #[arg(long)]
        witness: bool,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
        /// File of `type` declarations the two types may refer to.
        #[arg(long)]
        decls: Option<std::path::PathBuf>,
    },
    /// Type-check a program file and print the type of each binding.
    Check {
        file: std::path::PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Type-check and then run a program file, printing each binding's value.
    Run {
        file: std::path::PathBuf,
        #[arg(long)]
        json: bool,
        /// Skip type checking (runtime errors become possible).
        #[arg(long)]
        unchecked: bool,
    },
    /// Infer the type of a single expression.
    Type {
        expr: String,
        #[arg(long)]
        json: bool,
        /// File of declarations providing named types and bindings.
        #[arg(long)]
        decls: Option<std::path::PathBuf>,
    },
    /// Interactive session (`:help` for directives).
    Repl,
}

pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn read_file(p: &std::path::Path) -> Result<String, String> {
    std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))
}

fn load_decl_file(
    eng: &mut Engine,
    path: &Option<std::path::PathBuf>,
) -> Result<(Vec<Decl>, HashMap<String, TypeExpr>), String> {
    let mut tymap = HashMap::new();
    let mut decls = Vec::new();
    if let Some(p) = path {
        let src = read_file(p)?;
        decls = parse_decls(&src).map_err(|e| e.to_string())?;
        let tydecls: Vec<(String, TypeExpr)> = decls
            .iter()
            .filter_map(|d| match d {
                Decl::Type(n, t) => Some((n.clone(), t.clone())),
                _ => None,
            })
            .collect();
        for (n, t) in &tydecls {
            tymap.insert(n.clone(), t.clone());
        }
        eng.load_decls(&tydecls);
    }
    Ok((decls, tymap))
}

fn run(cli: Cli) -> Result<i32, String> {
    let mut eng = cli.engine.engine();
    match cli.command {
        Command::Subtype {
            left,
            right,
            witness,
            json,
            decls,
        } => {
            let (_, tymap) = load_decl_file(&mut eng, &decls)?;
            let lt = parse_type(&left, &tymap).map_err(|e| e.to_string())?;
            let rt = parse_type(&right, &tymap).map_err(|e| e.to_string())?;
            let (l, r) = (eng.norm(&lt), eng.norm(&rt));
            let yes = eng.is_subtype(l, r);
            let w = if !yes && (witness || json) {
                let diff = eng.diff(l, r);
                eng.sample(diff).map(|w| w.to_string())
            } else {
                None
            };
            if json {
                println!(
                    "{}",
                    json!({"subtype": yes, "witness": w})
                );
            } else if yes {
                println!("yes");
            } else {
                match (witness, w) {
                    (true, Some(w)) => println!("no: {w} separates them"),
                    _ => println!("no"),
                }
            }
            Ok(if yes { 0 } else { 1 })
        }
        Command::Check { file, json } => {
            let src = read_file(&file)?;
            let decls = parse_decls(&src).map_err(|e| e.to_string())?;
            match typing::check_program(&mut eng, &decls) {
                Ok(binds) => {
                    if json {
                        let items: Vec<_> = binds
                            .iter()
                            .map(|(n, t)| json!({"name": n, "type": eng.render(*t)}))
                            .collect();
                        println!("{}", json!({"ok": true, "bindings": items}));
                    } else {
                        for (n, t) in &binds {
                            println!("{n} : {}", eng.render(*t));
                        }
                    }
                    Ok(0)
                }
                Err((name, err)) => {
                    if json {
                        println!(
                            "{}",
                            json!({"ok": false, "binding": name, "error": err.to_string()})
                        );
                    } else {
                        eprintln!("type error in `{name}`: {err}");
                    }
                    Ok(1)
                }
            }
        }
        Command::Run {
            file,
            json,
            unchecked,
        } => {
            let src = read_file(&file)?;
            let decls = parse_decls(&src).map_err(|e| e.to_string())?;
            if !unchecked {
                if let Err((name, err)) = typing::check_program(&mut eng, &decls) {
                    eprintln!("type error in `{name}`: {err}");
                    return Ok(1);
                }
            }
            match eval::run_program(&mut eng, &decls) {
                Ok(binds) => {
                    if json {
                        let items: Vec<_> = binds
                            .iter()
                            .map(|(n, v)| json!({"name": n, "value": v.to_string()}))
                            .collect();
                        println!("{}", json!({"ok": true, "bindings": items}));
                    } else {
                        for (n, v) in &binds {
                            println!("{n} = {v}");
                        }
                    }
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("runtime error: {e}");
                    Ok(1)
                }
            }
        }
        Command::Type { expr, json, decls } => {
            let (ds, tymap) = load_decl_file(&mut eng, &decls)?;
            let mut env = TypeEnv::new();
            if !ds.is_empty() {
                match typing::check_program(&mut eng, &ds) {
                    Ok(binds) => {
                        for (n, t) in binds {
                            env.insert(n, t);
                        }
                    }
                    Err((name, err)) => {
                        eprintln!("type error in `{name}`: {err}");
                        return Ok(1);
                    }
                }
            }
            let e = parse_expr(&expr, &tymap).map_err(|e| e.to_string())?;
            match typing::type_of(&mut eng, &env, &e) {
                Ok(t) => {
                    if json {
                        println!("{}", json!({"ok": true, "type": eng.render(t)}));
                    } else {
                        println!("{}", eng.render(t));
                    }
                    Ok(0)
                }
                Err(err) => {
                    if json {
                        println!("{}", json!({"ok": false, "error": err.to_string()}));
                    } else {
                        eprintln!("type error: {err}");
                    }
                    Ok(1)
                }
            }
        }
        Command::Repl => repl(&mut eng),
    }
}

fn repl(eng: &mut Engine) -> Result<i32, String> {
    let stdin = std::io::stdin();
    let mut tymap: HashMap<String, TypeExpr> = HashMap::new();
    let mut tenv = TypeEnv::new();
    let mut venv = Env::new();
    println!("stt repl — :help for directives, :quit to leave");
    loop {
        print!("> ");
        std::io::stdout().flush().ok();
        let mut line = String::new();
        if stdin.lock().read_line(&mut line).map_err(|e| e.to_string())? == 0 {
            return Ok(0);
        }
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix(':') {
            let (cmd, arg) = match rest.split_once(' ') {
                Some((c, a)) => (c, a.trim()),
                None => (rest, ""),
            };
            match cmd {
                "quit" | "q" => return Ok(0),
                "help" => {
                    println!(":subtype S <= T   decide a subtyping judgement");
                    println!(":empty T          is T uninhabited?");
                    println!(":sample T         print a value of T, if any");
                    println!(":quit             leave");
                    println!("anything else: a declaration or an expression");
                }
                "subtype" => match arg.split_once("<=") {
                    Some((l, r)) => {
                        let res = (|| -> Result<bool, String> {
                            let lt = parse_type(l.trim(), &tymap).map_err(|e| e.to_string())?;
                            let rt = parse_type(r.trim(), &tymap).map_err(|e| e.to_string())?;
                            let (li, ri) = (eng.norm(&lt), eng.norm(&rt));
                            Ok(eng.is_subtype(li, ri))
                        })();
                        match res {
                            Ok(true) => println!("yes"),
                            Ok(false) => println!("no"),
                            Err(e) => println!("error: {e}"),
                        }
                    }
                    None => println!("usage: :subtype S <= T"),
                },
                "empty" | "sample" => {
                    match parse_type(arg, &tymap).map_err(|e| e.to_string()) {
                        Ok(t) => {
                            let id = eng.norm(&t);
                            if cmd == "empty" {
                                println!("{}", eng.is_empty(id));
                            } else {
                                match eng.sample(id) {
                                    Some(w) => println!("{w}"),
                                    None => println!("empty type, no value"),
                                }
                            }
                        }
                        Err(e) => println!("error: {e}"),
                    }
                }
                other => println!("unknown directive :{other}"),
            }
            continue;
        }
        // Declarations extend the session; expressions are checked and run.
        if line.starts_with("type ") || line.starts_with("let ") || line.starts_with("multi ") {
            match parse_decls(line) {
                Ok(decls) => {
                    for d in &decls {
                        if let Decl::Type(n, t) = d {
                            tymap.insert(n.clone(), t.clone());
                        }
                    }
                    match typing::check_program_in(eng, &decls, tenv.clone()) {
                        Ok(binds) => {
                            for (n, t) in &binds {
                                // Session bindings accumulate.
                                tenv.insert(n.clone(), *t);
                                println!("{n} : {}", eng.render(*t));
                            }
                            match eval::run_program_in(eng, &decls, venv.clone()) {
                                Ok(vals) => {
                                    for (n, v) in vals {
                                        venv.insert(n, v);
                                    }
                                }
                                Err(e) => println!("runtime error: {e}"),
                            }
                        }
                        Err((name, err)) => println!("type error in `{name}`: {err}"),
                    }
                }
                Err(e) => println!("error: {e}"),
            }
            continue;
        }
        match parse_expr(line, &tymap) {
            Ok(e) => match typing::type_of(eng, &tenv, &e) {
                Ok(t) => match eval::eval(eng, &venv, &e) {
                    Ok(v) => println!("{v} : {}", eng.render(t)),
                    Err(err) => println!("runtime error: {err}"),
                },
                Err(err) => println!("type error: {err}"),
            },
            Err(e) => println!("error: {e}"),
        }
    }
}
