//! Command-line front end: `stratkos <command> FILE ...`.

pub mod files;

use crate::algebra::{
    associated_graded, is_directed, opposite, quadratic_report, radical_reduction, Algebra,
};
use crate::allorders::{
    classify_tensor, cokernel_closure_check, enumerate_orders, is_ss_all_linear_orders, j_module,
};
use crate::eicat::{
    category_algebra, ei_theorem_checks, free_ei_cover, has_ufp, is_gradable, regular_objects,
    unfactorizable_morphisms, EICategory,
};
use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::homological::{ext_dims, is_quasi_koszul, koszul_module_report, DEFAULT_BOUND};
use crate::repmod::{
    degree_zero_module, is_self_injective, projective, regular, simple, splitting_property_status,
    syzygy, Module,
};
use crate::stratification::{
    gamma_of_standards, is_properly_stratified, standard_modules, stratification_report,
    LinearOrder,
};
use clap::{Parser, Subcommand, ValueEnum};
use files::{load_algebra, load_ei, AlgebraSpecFile};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(
    name = "stratkos",
    version,
    about = "Koszulity and stratification checks for graded quiver algebras"
)]
struct Cli {
    /// print the report as JSON
    #[arg(long, global = true)]
    json: bool,
    /// add wall-clock time to the report
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Koszul,
    Quasikoszul,
    Stratified,
    Proper,
    CokerClosed,
    Quadratic,
    Directed,
    Tensor,
    Selfinjective,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an algebra and print its basis data
    Build { file: PathBuf },
    /// Run one check; exit code 1 when it fails
    Check {
        kind: CheckKind,
        file: PathBuf,
        /// module selector: P:x, S:x, D:x, A, A0, J, rad:SEL, syz:SEL, optional [k] shift
        #[arg(short = 'm', long = "module")]
        module: Option<String>,
        #[arg(short = 'n', long)]
        bound: Option<usize>,
        /// linear order, greatest first: y,x,z
        #[arg(long)]
        order: Option<String>,
    },
    /// Linear orders for which the standard modules are filtered as required
    Orders { file: PathBuf },
    /// Dimensions of Ext^i(FROM, TO)
    Ext {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(short = 'n', long)]
        bound: Option<usize>,
        #[arg(long)]
        order: Option<String>,
    },
    /// Ext*(Δ, Δ) for an order
    Gamma {
        file: PathBuf,
        #[arg(long)]
        order: String,
        #[arg(short = 'n', long)]
        bound: Option<usize>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Quotient by the ideal generated by the radical of A_0
    Reduce {
        file: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Associated graded algebra for the filtration by powers of J
    Graded {
        file: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Analyse a finite EI category
    Ei {
        file: PathBuf,
        /// characteristic of the prime field (0 for Q)
        #[arg(long = "char")]
        characteristic: u64,
        #[arg(short = 'n', long)]
        bound: Option<usize>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

/// Resolution bound: flag, then STRATKOS_BOUND, then the default.
fn bound(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("STRATKOS_BOUND")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(DEFAULT_BOUND)
}

pub struct Outcome {
    pub report: Value,
    /// Some(verdict) for checks
    pub passed: Option<bool>,
}

pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(mut out) => {
            if cli.timing {
                out.report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            if cli.json {
                write_out(&serde_json::to_string_pretty(&out.report).expect("serializable"));
            } else {
                write_out(text_report(&out.report).trim_end());
            }
            match out.passed {
                Some(false) => 1,
                _ => 0,
            }
        }
        Err(e) => {
            if cli.json {
                write_out(&serde_json::to_string_pretty(&error_json(&e)).expect("serializable"));
            }
            eprintln!("error: {e}");
            2
        }
    }
}

fn error_json(e: &Error) -> Value {
    match e {
        Error::Parse { line, token, msg } => {
            json!({"error": {"kind": "parse", "line": line, "token": token, "message": msg}})
        }
        other => json!({"error": {"kind": "failure", "message": other.to_string()}}),
    }
}

// A closed pipe downstream is not an error worth reporting.
fn write_out(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}").and_then(|_| out.flush());
}

fn text_report(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&p, x, out);
                }
            }
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

fn file_str(p: &Path) -> String {
    p.display().to_string()
}

fn arc(a: Algebra) -> Arc<Algebra> {
    Arc::new(a)
}

fn parse_order(a: &Algebra, text: Option<&str>) -> Result<Option<LinearOrder>> {
    text.map(|t| LinearOrder::parse(t, &a.vertices)).transpose()
}

fn require_order(a: &Algebra, text: Option<&str>) -> Result<LinearOrder> {
    parse_order(a, text)?.ok_or_else(|| Error::Invalid("--order is required".into()))
}

/// Resolves a module selector against an algebra.
pub fn select_module(a: &Arc<Algebra>, sel: &str, order: Option<&LinearOrder>) -> Result<Module> {
    let sel = sel.trim();
    let (body, shift) = match sel.strip_suffix(']').and_then(|s| s.rsplit_once('[')) {
        Some((b, k)) => {
            let k: i32 = k.trim().parse().map_err(|_| Error::Parse {
                line: 0,
                token: sel.into(),
                msg: "bad shift".into(),
            })?;
            (b, k)
        }
        None => (sel, 0),
    };
    let vertex = |name: &str| {
        a.vertex_index(name).ok_or_else(|| Error::Parse {
            line: 0,
            token: name.into(),
            msg: "unknown vertex".into(),
        })
    };
    let m = if let Some(rest) = body.strip_prefix("rad:") {
        select_module(a, rest, order)?.radical()
    } else if let Some(rest) = body.strip_prefix("syz:") {
        syzygy(&select_module(a, rest, order)?)?
    } else if let Some(v) = body.strip_prefix("P:") {
        projective(a, vertex(v)?, 0)
    } else if let Some(v) = body.strip_prefix("S:") {
        simple(a, vertex(v)?, 0)
    } else if let Some(v) = body.strip_prefix("D:") {
        let o = order.ok_or_else(|| Error::Invalid("D:x needs --order".into()))?;
        standard_modules(a, o)?.deltas[vertex(v)?].clone()
    } else {
        match body {
            "A" => regular(a),
            "A0" => degree_zero_module(a),
            "J" => j_module(a)?,
            _ => {
                return Err(Error::Parse {
                    line: 0,
                    token: body.into(),
                    msg: "unknown module selector".into(),
                })
            }
        }
    };
    Ok(m.shift(shift))
}

fn dims_json(m: &Module) -> Value {
    json!({
        "dim": m.dim(),
        "vertex_dims": m.vertex_dims(),
        "graded_dims": m.graded_dims().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
    })
}

fn names(a: &Algebra, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| a.vertices[v].clone()).collect()
}

fn emit(path: Option<&PathBuf>, a: &Algebra) -> Result<Value> {
    match path {
        Some(p) => {
            std::fs::write(p, AlgebraSpecFile::from_algebra(a).to_json() + "\n")
                .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            Ok(json!(file_str(p)))
        }
        None => Ok(Value::Null),
    }
}

fn algebra_summary(a: &Algebra) -> Value {
    let nv = a.num_vertices();
    let blocks: Vec<Vec<usize>> = (0..nv)
        .map(|t| (0..nv).map(|s| a.block_dim(s, t)).collect())
        .collect();
    let proj: Vec<usize> = (0..nv)
        .map(|l| (0..nv).map(|t| a.block_dim(l, t)).sum())
        .collect();
    json!({
        "name": a.name,
        "field": a.field.to_string(),
        "dim": a.dim(),
        "vertices": a.vertices,
        "graded_dims": a.graded_dims(),
        "projective_dims": proj,
        "block_dims": blocks,
        "basis": a.basis.iter().map(|b| json!({
            "label": b.label, "source": a.vertices[b.source], "target": a.vertices[b.target], "degree": b.degree
        })).collect::<Vec<_>>(),
    })
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Build { file } => {
            let a = load_algebra(file)?;
            let assoc = a.check_associativity();
            let directed = is_directed(&a);
            let report = json!({
                "command": "build",
                "file": file_str(file),
                "result": {
                    "algebra": algebra_summary(&a),
                    "associative": assoc.is_none(),
                    "idempotents_ok": a.check_idempotents(),
                    "directed_order": directed.map(|o| LinearOrder::from_least(o).to_arg(&a.vertices)),
                },
            });
            Ok(Outcome {
                report,
                passed: None,
            })
        }
        Command::Check {
            kind,
            file,
            module,
            bound: b,
            order,
        } => {
            let n = bound(*b);
            let a = arc(load_algebra(file)?);
            let (passed, result, witness) =
                run_check(*kind, &a, module.as_deref(), n, order.as_deref())?;
            let report = json!({
                "command": "check",
                "file": file_str(file),
                "query": {"check": format!("{kind:?}").to_lowercase(), "module": module, "order": order, "bound": n},
                "result": result,
                "passed": passed,
                "witness": witness,
            });
            Ok(Outcome {
                report,
                passed: Some(passed),
            })
        }
        Command::Orders { file } => {
            let a = arc(load_algebra(file)?);
            let set = enumerate_orders(&a)?;
            let report = json!({
                "command": "orders",
                "file": file_str(file),
                "result": {
                    "count": set.orders.len(),
                    "orders": set.orders.iter().map(|o| o.display(&a.vertices)).collect::<Vec<_>>(),
                    "order_args": set.orders.iter().map(|o| o.to_arg(&a.vertices)).collect::<Vec<_>>(),
                    "dead_prefixes": set.dead.iter().map(|p| names(&a, p).join(",")).collect::<Vec<_>>(),
                    "diagnostics": set.diagnostics,
                    "steps": set.trace.iter().map(|s| json!({
                        "prefix": names(&a, &s.prefix).join(","),
                        "candidates": names(&a, &s.candidates),
                        "maximal": names(&a, &s.maximal),
                    })).collect::<Vec<_>>(),
                },
            });
            Ok(Outcome {
                report,
                passed: None,
            })
        }
        Command::Ext {
            file,
            from,
            to,
            bound: b,
            order,
        } => {
            let n = bound(*b);
            let a = arc(load_algebra(file)?);
            let o = parse_order(&a, order.as_deref())?;
            let m = select_module(&a, from, o.as_ref())?;
            let t = select_module(&a, to, o.as_ref())?;
            let e = ext_dims(&m, &t, n)?;
            let graded: Vec<Value> = e
                .graded_dims
                .iter()
                .map(|g| Value::Object(g.iter().map(|(k, v)| (k.to_string(), json!(v))).collect()))
                .collect();
            let report = json!({
                "command": "ext",
                "file": file_str(file),
                "query": {"from": from, "to": to, "bound": n, "order": order},
                "result": {"dims": e.dims, "graded_dims": graded, "resolution_terminated": e.res.terminated},
            });
            Ok(Outcome {
                report,
                passed: None,
            })
        }
        Command::Gamma {
            file,
            order,
            bound: b,
            emit: out,
        } => {
            let n = bound(*b);
            let a = arc(load_algebra(file)?);
            let o = LinearOrder::parse(order, &a.vertices)?;
            let g = gamma_of_standards(&a, &o, n)?;
            let ga = &g.gamma.algebra;
            let report = json!({
                "command": "gamma",
                "file": file_str(file),
                "query": {"order": order, "bound": n},
                "result": {
                    "algebra": algebra_summary(ga),
                    "vanishing_holds": g.vanishing_holds,
                    "directed": g.directed,
                    "emitted": emit(out.as_ref(), ga)?,
                },
            });
            Ok(Outcome {
                report,
                passed: None,
            })
        }
        Command::Reduce { file, emit: out } => {
            let a = load_algebra(file)?;
            let r = radical_reduction(&a);
            let report = json!({
                "command": "reduce",
                "file": file_str(file),
                "result": {
                    "ideal_dim": r.ideal.dim(),
                    "algebra": algebra_summary(&r.algebra),
                    "emitted": emit(out.as_ref(), &r.algebra)?,
                },
            });
            Ok(Outcome {
                report,
                passed: None,
            })
        }
        Command::Graded { file, emit: out } => {
            let a = load_algebra(file)?;
            let g = associated_graded(&a)?;
            let report = json!({
                "command": "graded",
                "file": file_str(file),
                "result": {"algebra": algebra_summary(&g), "emitted": emit(out.as_ref(), &g)?},
            });
            Ok(Outcome {
                report,
                passed: None,
            })
        }
        Command::Ei {
            file,
            characteristic,
            bound: b,
            emit: out,
        } => {
            let n = bound(*b);
            let c = load_ei(file)?;
            let field = if *characteristic == 0 {
                Field::Rationals
            } else {
                Field::gf(*characteristic).map_err(Error::Invalid)?
            };
            let result = ei_report(&c, field, n, out.as_ref())?;
            let report = json!({
                "command": "ei",
                "file": file_str(file),
                "query": {"char": characteristic, "bound": n},
                "result": result,
            });
            Ok(Outcome {
                report,
                passed: None,
            })
        }
    }
}

fn ei_report(c: &EICategory, field: Field, n: usize, out: Option<&PathBuf>) -> Result<Value> {
    let label = |f: usize| c.morphisms[f].label.clone();
    let ufp = has_ufp(c);
    let grading = is_gradable(c);
    let reg = regular_objects(c, field.characteristic());
    let cover = free_ei_cover(c)?;
    let checks = ei_theorem_checks(c, field, n)?;
    let alg = category_algebra(c, field)?;
    let objs = |v: &[bool]| {
        (0..c.objects.len())
            .filter(|&x| v[x])
            .map(|x| c.objects[x].clone())
            .collect::<Vec<_>>()
    };
    Ok(json!({
        "objects": c.objects,
        "morphisms": c.len(),
        "unfactorizable": unfactorizable_morphisms(c).into_iter().map(label).collect::<Vec<_>>(),
        "ufp": ufp.ufp,
        "ufp_witness": ufp.witness.map(|(f, d1, d2)| json!({
            "morphism": label(f),
            "first": d1.into_iter().map(label).collect::<Vec<_>>(),
            "second": d2.into_iter().map(label).collect::<Vec<_>>(),
        })),
        "gradable": grading.gradable,
        "left_regular": objs(&reg.left),
        "right_regular": objs(&reg.right),
        "cover": {
            "morphisms": cover.cover.len(),
            "full": cover.full,
            "kernel_dim": cover.kernel_dim(),
            "kernel": cover.kernel.iter().map(|&(x, y)| format!("{} - {}", cover.cover.morphisms[x].label, cover.cover.morphisms[y].label)).collect::<Vec<_>>(),
        },
        "theorems": {
            "free": checks.free,
            "gradable": checks.gradable,
            "pd_at_most_one": checks.pd_at_most_one,
            "pd_finite_within_bound": checks.pd_finite_within_bound,
            "koszul": checks.koszul,
            "stratified": checks.stratified,
            "stratified_by_stabilizers": checks.stratified_by_stabilizers,
            "quasi_koszul": checks.quasi_koszul,
            "regular_hypothesis": checks.regular_hypothesis,
            "ext2_vanishes": checks.ext2_vanishes,
            "counterexample_object": checks.counterexample_object.map(|x| c.objects[x].clone()),
            "consistent": checks.consistent,
        },
        "algebra": algebra_summary(&alg),
        "emitted": emit(out, &alg)?,
    }))
}

fn run_check(
    kind: CheckKind,
    a: &Arc<Algebra>,
    module: Option<&str>,
    n: usize,
    order: Option<&str>,
) -> Result<(bool, Value, Value)> {
    let o = parse_order(a, order)?;
    let target = |default: &str| select_module(a, module.unwrap_or(default), o.as_ref());
    Ok(match kind {
        CheckKind::Koszul => {
            let m = target("A0")?;
            let r = koszul_module_report(&m, n)?;
            let w = r
                .failing_stage
                .map(|s| json!({"stage": s, "shifts": r.shifts[s]}));
            (
                r.koszul,
                json!({"koszul": r.koszul, "bound": n, "unconditional": r.unconditional, "shifts": r.shifts}),
                json!(w),
            )
        }
        CheckKind::Quasikoszul => {
            let m = target("A0")?;
            let q = is_quasi_koszul(&m, n)?;
            (
                q,
                json!({"quasi_koszul": q, "bound": n, "unconditional": false}),
                Value::Null,
            )
        }
        CheckKind::Stratified => match o {
            Some(o) => {
                let r = stratification_report(a, &o)?;
                let failing: Vec<String> = (0..a.num_vertices())
                    .filter(|&l| r.filtrations[l].filtration().is_none())
                    .map(|l| a.vertices[l].clone())
                    .collect();
                let w = if failing.is_empty() {
                    Value::Null
                } else {
                    json!({"unfiltered_projectives": failing})
                };
                (
                    r.stratified,
                    json!({"stratified": r.stratified, "standard_dims": r.system.delta_dims()}),
                    w,
                )
            }
            None => {
                let v = is_ss_all_linear_orders(a)?;
                let w = v
                    .trace_witness
                    .map(|(l, m)| json!({"trace_of": a.vertices[l], "in": a.vertices[m]}));
                (
                    v.holds(),
                    json!({
                        "all_orders": v.holds(),
                        "directed": v.directed,
                        "j_projective": v.j_projective,
                        "via_traces": v.via_traces,
                        "via_brute_force": v.via_brute_force,
                        "routes_agree": v.agree,
                    }),
                    json!(w),
                )
            }
        },
        CheckKind::Proper => match o {
            Some(o) => {
                let p = is_properly_stratified(a, &o)?;
                (p, json!({"properly_stratified": p}), Value::Null)
            }
            None => {
                let left = is_ss_all_linear_orders(a)?.holds();
                let right = is_ss_all_linear_orders(&arc(opposite(a)))?.holds();
                (
                    left && right,
                    json!({"all_orders": left && right, "left": left, "right": right}),
                    Value::Null,
                )
            }
        },
        CheckKind::CokerClosed => {
            let o = require_order(a, order)?;
            let r = cokernel_closure_check(a, &o)?;
            let w = r.witness.as_ref().map(|w| {
                json!({
                    "lambda": a.vertices[w.lambda],
                    "source": w.source.as_str(),
                    "target": a.vertices.iter().zip(&w.multiplicities).filter(|(_, &c)| c > 0)
                        .map(|(v, c)| json!({"projective": v, "copies": c})).collect::<Vec<_>>(),
                    "cokernel": dims_json(&w.cokernel),
                })
            });
            (
                r.closed,
                json!({"closed": r.closed, "monomorphisms_tested": r.monomorphisms_tested}),
                json!(w),
            )
        }
        CheckKind::Quadratic => {
            let r = quadratic_report(a);
            (
                r.quadratic,
                json!({"quadratic": r.quadratic, "kernel_dims": r.kernel_dims}),
                json!(r
                    .failing_degree
                    .map(|d| json!({"degree": d}))
                    .or(r.not_generated_at.map(|d| json!({"not_generated_at": d})))),
            )
        }
        CheckKind::Directed => {
            let d = is_directed(a);
            let ord = d.map(|v| LinearOrder::from_least(v).to_arg(&a.vertices));
            (
                ord.is_some(),
                json!({"directed": ord.is_some(), "order": ord}),
                Value::Null,
            )
        }
        CheckKind::Tensor => {
            let t = classify_tensor(a)?;
            let ok = t.recognition.is_tensor;
            (
                ok,
                json!({
                    "tensor": ok,
                    "class": t.class.as_str(),
                    "graded_dim": t.graded.dim(),
                    "left_projective": t.left_projective,
                    "right_projective": t.right_projective,
                    "dims": t.recognition.dims,
                }),
                json!(t.recognition.failing_degree.map(|d| json!({"degree": d}))),
            )
        }
        CheckKind::Selfinjective => {
            let (a0, _) = a.degree_zero_part();
            let s = is_self_injective(&a0)?;
            (
                s,
                json!({"self_injective": s, "splitting": format!("{:?}", splitting_property_status(&a0))}),
                Value::Null,
            )
        }
    })
}
