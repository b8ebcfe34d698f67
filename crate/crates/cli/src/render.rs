use std::fmt::Write as _;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use stable_pairs::exactalg::QPoly;
use stable_pairs::pairclasses::Wall;
use stable_pairs::wallcross::{AlphaBound, ComputationTrace, SheafAssembly, TraceStep, Weight};

use crate::Target;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Latex,
}

pub fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

pub fn walls_plain(d: i64, chi: i64, walls: &[Wall]) -> String {
    if walls.is_empty() {
        return format!("(d,chi) = ({d},{chi}): no walls");
    }
    let mut out = format!("(d,chi) = ({d},{chi})\nalpha\ttype\n");
    for w in walls {
        for t in &w.types {
            let _ = writeln!(out, "{}\t{t}", w.alpha);
        }
    }
    out.pop();
    out
}

fn alpha_latex(w: &Wall) -> String {
    if w.alpha.is_integer() {
        w.alpha.to_latex()
    } else {
        format!("${}$", w.alpha.to_latex())
    }
}

/// Two-column `tabular` with one row per splitting type.
pub fn walls_latex(d: i64, chi: i64, walls: &[Wall]) -> String {
    let mut out = String::from("\\begin{tabular}{|l|p{6cm}|}\n\\hline\n");
    let _ = writeln!(out, "\\multicolumn{{2}}{{|l|}}{{$(d,\\chi)=({d},{chi})$}} \\\\\n\\hline");
    out.push_str("$\\alpha$\n&\n$\\Lambda_1:=(1,P(F_1))\\oplus \\Lambda_2:=(0,P(F_2))$\\\\\n\\hline\n");
    for w in walls {
        for t in &w.types {
            let _ = writeln!(out, "{}&\n${}$\\\\\n\\hline", alpha_latex(w), t.to_latex());
        }
    }
    out.push_str("\\end{tabular}");
    out
}

fn power_plain(k: usize) -> String {
    format!("q^{k}")
}

fn power_latex(k: usize) -> String {
    if k < 10 {
        format!("q^{k}")
    } else {
        format!("q^{{{k}}}")
    }
}

/// `(cofactor) * (1 - q^k)/(1 - q)` when such a factor divides exactly.
pub fn factored_plain(p: &QPoly) -> String {
    match p.factor_projective() {
        Some((k, cof)) if cof == QPoly::one() => format!("(1 - {})/(1 - q)", power_plain(k)),
        Some((k, cof)) => format!("({cof}) * (1 - {})/(1 - q)", power_plain(k)),
        None => p.to_string(),
    }
}

pub fn factored_latex(p: &QPoly) -> String {
    let frac = |k| format!("\\frac{{1-{}}}{{1-q}}", power_latex(k));
    match p.factor_projective() {
        Some((k, cof)) if cof == QPoly::one() => frac(k),
        Some((k, cof)) => format!("({})\\cdot {}", cof.to_latex(), frac(k)),
        None => p.to_latex(),
    }
}

pub fn factored_json(p: &QPoly) -> Value {
    match p.factor_projective() {
        Some((k, cof)) => json!({ "k": k, "cofactor": cof }),
        None => Value::Null,
    }
}

pub fn poincare_plain(name: &str, p: &QPoly) -> String {
    let mut out = format!("P({name}) = {}", factored_plain(p));
    if p.factor_projective().is_some() {
        let _ = write!(out, "\n        = {p}");
    }
    let _ = write!(out, "\nchi({name}) = {}", p.eval_at_one());
    out
}

fn space_latex(d: i64, chi: i64, target: &Target) -> String {
    match target {
        Target::Sheaf => format!("\\mathbf{{M}}({d},{chi})"),
        Target::Alpha(AlphaBound::ZeroPlus) => format!("\\mathbf{{M}}^{{0^+}}({d},{chi})"),
        Target::Alpha(AlphaBound::Infinity) => format!("\\mathbf{{M}}^{{\\infty}}({d},{chi})"),
        Target::Alpha(AlphaBound::At(a)) => format!("\\mathbf{{M}}^{{{}}}({d},{chi})", a.to_latex()),
    }
}

pub fn poincare_latex(d: i64, chi: i64, target: &Target, p: &QPoly) -> String {
    format!("$$P({})={}$$", space_latex(d, chi, target), factored_latex(p))
}

pub fn euler_value(format: Format, name: &str, n: &BigInt) -> String {
    match format {
        Format::Latex => format!("$\\chi({name})={n}$"),
        _ => n.to_string(),
    }
}

fn push_steps_plain<W: Weight>(out: &mut String, trace: &ComputationTrace<W>, indent: &str) {
    let t = &trace.target;
    let _ = writeln!(out, "{indent}M^alpha({},{}) for alpha = {} [{}]", t.d, t.chi, t.alpha, t.mode);
    let _ = writeln!(
        out,
        "{indent}  start {} (dim {}): {}",
        trace.start.label, trace.start.dim, trace.start.value
    );
    for step in &trace.steps {
        match step {
            TraceStep::WallStep(s) => {
                let _ = writeln!(
                    out,
                    "{indent}  alpha = {}: {}; P^{} -> P^{}; factors {} | {}; term {}",
                    s.wall.alpha, s.wall.types[0], s.fiber_before, s.fiber_after, s.factor1, s.factor2, s.term
                );
            }
            TraceStep::StrataStep(s) => {
                let _ = writeln!(out, "{indent}  alpha = {}: {} types, stratified", s.wall.alpha, s.wall.types.len());
                for st in &s.strata {
                    let sign = if st.name.sign() < 0 { "-" } else { "+" };
                    let monomials: Vec<String> = st
                        .monomials
                        .iter()
                        .map(|m| {
                            m.iter().map(|f| format!("{}={}", f.label, f.value)).collect::<Vec<_>>().join(" * ")
                        })
                        .collect();
                    let _ = writeln!(out, "{indent}    {sign} {}: {}", st.name, st.value);
                    for m in monomials {
                        let _ = writeln!(out, "{indent}        {m}");
                    }
                }
                let _ = writeln!(out, "{indent}    term {}", s.term);
            }
        }
    }
    let _ = writeln!(out, "{indent}  result {}", trace.result);
    if !trace.verified {
        let _ = writeln!(out, "{indent}  (unverified degree)");
    }
}

pub fn trace_plain<W: Weight>(trace: &ComputationTrace<W>) -> String {
    let mut out = String::new();
    push_steps_plain(&mut out, trace, "");
    out.pop();
    out
}

pub fn assembly_plain<W: Weight>(asm: &SheafAssembly<W>) -> String {
    let mut out = format!("M({},{}) = M^0+({},1) - q M^0+({},-1)\n", asm.d, asm.chi, asm.d, asm.d);
    push_steps_plain(&mut out, &asm.plus, "  ");
    match &asm.minus {
        Some(t) => push_steps_plain(&mut out, t, "  "),
        None => {
            let _ = writeln!(out, "  M^0+({},-1) is empty", asm.d);
        }
    }
    let _ = write!(out, "  result {}", asm.result);
    out
}

fn push_steps_latex<W: Weight>(out: &mut String, trace: &ComputationTrace<W>) {
    let t = &trace.target;
    out.push_str("\\begin{tabular}{|l|l|l|}\n\\hline\n");
    let _ = writeln!(out, "\\multicolumn{{3}}{{|l|}}{{$(d,\\chi)=({},{})$}} \\\\\n\\hline", t.d, t.chi);
    let _ = writeln!(out, "$\\infty$ & ${}$ & ${}$\\\\\n\\hline", trace.start.label, trace.start.value.latex());
    for step in &trace.steps {
        let w = step.wall();
        let types: Vec<String> = w.types.iter().map(|t| t.to_latex()).collect();
        let _ = writeln!(
            out,
            "${}$ & ${}$ & ${}$\\\\\n\\hline",
            w.alpha.to_latex(),
            types.join(",\\ "),
            step.term().latex()
        );
    }
    let target = match &t.alpha {
        AlphaBound::ZeroPlus => "0^+".to_string(),
        AlphaBound::Infinity => "\\infty".to_string(),
        AlphaBound::At(a) => a.to_latex(),
    };
    let _ = writeln!(out, "${target}$ & & ${}$\\\\\n\\hline", trace.result.latex());
    out.push_str("\\end{tabular}");
}

pub fn trace_latex<W: Weight>(trace: &ComputationTrace<W>) -> String {
    let mut out = String::new();
    push_steps_latex(&mut out, trace);
    out
}

pub fn assembly_latex<W: Weight>(asm: &SheafAssembly<W>) -> String {
    let mut out = String::new();
    push_steps_latex(&mut out, &asm.plus);
    if let Some(t) = &asm.minus {
        out.push('\n');
        push_steps_latex(&mut out, t);
    }
    out
}
