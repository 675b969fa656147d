//! Command line front end. Every verb produces a [`Report`]: a list of text
//! lines and a JSON document carrying the same data, both deterministic.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::{rngs::StdRng, SeedableRng};
use serde_json::{json, Value};

use crate::cone::Cone;
use crate::cup::{
    cup_closed_form, cup_setup, seed_from_t, special_degree_cup, versal_quadratics, DeformationParam, SpecialCup,
    SpecialDegree,
};
use crate::degree_complex::{DegreeComplex, SpanConfig, T2Class};
use crate::error::{Error, Result};
use crate::gersten2::verify_surface_zero;
use crate::input::{load_cone, parse_degree, parse_ints};
use crate::lattice::{fmt_q, fmt_qvec, parse_q, Q};
use crate::oracle::{run_identity, Identity};
use crate::pipeline::{pipeline_cup, PipelineTrace};

#[derive(Debug, Parser)]
#[command(name = "toric-deform", version, about = "Deformation invariants of affine toric varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension and basis of T^1 in a degree.
    T1 {
        #[arg(long)]
        cone: String,
        #[arg(long, default_value = "Rstar")]
        deg: String,
    },
    /// Dimension and basis of T^2 in a degree.
    T2 {
        #[arg(long)]
        cone: String,
        #[arg(long, default_value = "2Rstar")]
        deg: String,
    },
    /// Cup product of two deformation parameters in degree -R*.
    Cup {
        #[arg(long)]
        cone: String,
        /// Comma separated rationals t_1,...,t_N.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 10)]
        window: i64,
        /// Include the full pipeline trace.
        #[arg(long)]
        trace: bool,
    },
    /// Quadratic equations of the versal base space.
    Versal {
        #[arg(long)]
        cone: String,
    },
    /// Cup product in the degrees q R* - p s_j, edges numbered from 1.
    CupSpecial {
        #[arg(long)]
        cone: String,
        /// `j,p,q`
        #[arg(long)]
        deg1: String,
        #[arg(long)]
        deg2: String,
        #[arg(long, default_value_t = 10)]
        window: i64,
        #[arg(long)]
        trace: bool,
    },
    /// Property check of an algebraic identity on random instances.
    OracleVerify {
        #[arg(long)]
        cone: String,
        /// dd-zero, sle-C, hj, bracket-cases, hodge, bracket-support or all.
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = 8)]
        height: i64,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certificate that the Gerstenhaber product of A_n vanishes.
    Gerstenhaber {
        #[arg(long)]
        an: i64,
        #[arg(long, default_value_t = 12)]
        height: i64,
    },
}

/// Output of a verb. `code` is the process exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub lines: Vec<String>,
    pub json: Value,
    pub code: i32,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.lines.join("\n");
                s.push('\n');
                s
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }

    fn error(e: &Error) -> Self {
        Report {
            lines: vec![format!("error: {e}")],
            json: json!({ "error": e.to_string(), "exit_code": e.exit_code() }),
            code: e.exit_code(),
        }
    }
}

/// Runs a parsed command. Errors become reports with the matching exit code.
pub fn run(command: &Command) -> Report {
    let cfg = SpanConfig::default();
    let out = match command {
        Command::T1 { cone, deg } => degree_report(cone, deg, 1, &cfg),
        Command::T2 { cone, deg } => degree_report(cone, deg, 2, &cfg),
        Command::Cup { cone, t, s, window, trace } => cup_report(cone, t, s, *window, *trace, &cfg),
        Command::Versal { cone } => versal_report(cone),
        Command::CupSpecial { cone, deg1, deg2, window, trace } => {
            special_report(cone, deg1, deg2, *window, *trace, &cfg)
        }
        Command::OracleVerify { cone, identity, height, instances, seed } => {
            oracle_report(cone, identity, *height, *instances, *seed, &cfg)
        }
        Command::Gerstenhaber { an, height } => gerstenhaber_report(*an, *height),
    };
    out.unwrap_or_else(|e| Report::error(&e))
}

fn check_height(h: i64) -> Result<()> {
    if h < 1 {
        return Err(Error::Input(format!("height must be at least 1, got {h}")));
    }
    Ok(())
}

fn cone_json(source: &str, cone: &Cone) -> Value {
    json!({
        "source": source,
        "rank": cone.rank(),
        "rays": cone.rays().iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
    })
}

fn degree_report(source: &str, deg: &str, p: usize, cfg: &SpanConfig) -> Result<Report> {
    let cone = load_cone(source)?;
    let r = parse_degree(&cone, deg)?;
    let complex = DegreeComplex::new(&cone, &r, cfg)?;
    let rep = complex.report();
    let (dim, basis) = if p == 1 { (rep.t1, &rep.t1_basis) } else { (rep.t2, &rep.t2_basis) };
    let mut lines = vec![format!("cone: {source}"), format!("degree: {r}"), format!("t{p} = {dim}")];
    for (face, d) in &rep.span_dims {
        lines.push(format!("  dim span K_{face} = {d}"));
    }
    for (i, v) in basis.iter().enumerate() {
        lines.push(format!("  basis[{i}] = [{}]", v.join(", ")));
    }
    let json = json!({
        "verb": format!("t{p}"),
        "cone": cone_json(source, &cone),
        "degree": r.0,
        "dim": dim,
        "basis": basis,
        "spans": rep.span_dims,
        "t0": rep.t0,
        "t1": rep.t1,
        "t2": rep.t2,
    });
    Ok(Report { lines, json, code: 0 })
}

fn parse_rationals(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(|x| parse_q(x.trim())).collect()
}

fn class_json(c: &T2Class) -> Value {
    json!({
        "residue": fmt_qvec(&c.residue),
        "zero": c.is_zero(),
        "preimage": c.certificate.as_ref().map(|b| fmt_qvec(b)),
    })
}

fn verdict(zero: bool) -> &'static str {
    if zero {
        "zero"
    } else {
        "nonzero"
    }
}

fn trace_json(t: &PipelineTrace) -> Value {
    let table = |m: &std::collections::BTreeMap<crate::lattice::MVector, Q>| -> Value {
        m.iter().map(|(k, v)| (k.to_string(), Value::String(fmt_q(v)))).collect::<serde_json::Map<_, _>>().into()
    };
    json!({
        "r": t.r.0,
        "s": t.s.0,
        "window": t.window,
        "explicit_f": t.explicit_f,
        "rays": t.rays.iter().map(|ray| json!({
            "points": ray.points,
            "free_values": ray.free_values,
            "exceptional_forward": ray.exceptional_forward.iter().map(|m| m.0.clone()).collect::<Vec<_>>(),
            "exceptional_backward": ray.exceptional_backward.iter().map(|m| m.0.clone()).collect::<Vec<_>>(),
            "defect_pairs": ray.defect_pairs,
            "h": table(&ray.h),
            "f": table(&ray.f),
            "g": table(&ray.g),
        })).collect::<Vec<_>>(),
        "delta_g": t.delta_g.iter().map(|(f, v)| json!({ "face": f.label(), "value": fmt_qvec(v) })).collect::<Vec<_>>(),
        "cochain": fmt_qvec(&t.cochain),
    })
}

fn trace_lines(t: &PipelineTrace, lines: &mut Vec<String>) {
    lines.push(format!("trace: R = {}, S = {}, window = {}, explicit F = {}", t.r, t.s, t.window, t.explicit_f));
    for (j, ray) in t.rays.iter().enumerate() {
        lines.push(format!(
            "  ray {}: {} points, {} free values, exceptional {}+{}, {} defect pairs",
            j + 1,
            ray.points,
            ray.free_values,
            ray.exceptional_forward.len(),
            ray.exceptional_backward.len(),
            ray.defect_pairs
        ));
    }
    for (f, v) in &t.delta_g {
        lines.push(format!("  dG at {} = [{}]", f.label(), fmt_qvec(v).join(", ")));
    }
}

fn cup_report(source: &str, t: &str, s: &str, window: i64, trace: bool, cfg: &SpanConfig) -> Result<Report> {
    check_height(window)?;
    let cone = load_cone(source)?;
    let (v, model) = cup_setup(&cone, cfg)?;
    let t = DeformationParam::new(&v, parse_rationals(t)?)?;
    let s = DeformationParam::new(&v, parse_rationals(s)?)?;
    let closed = cup_closed_form(&cone, &model, &t, &s)?;
    let rs = cone.gorenstein_degree().expect("checked by cup_setup").clone();
    let xi = seed_from_t(&cone, &t, &rs)?;
    let mu = seed_from_t(&cone, &s, &rs)?;
    let (piped, tr) = pipeline_cup(&cone, &xi, &mu, window, cfg)?;
    let negated: Vec<Q> = closed.residue.iter().map(|x| -x).collect();
    if piped.residue != negated {
        return Err(Error::IdentityViolation(format!(
            "pipeline residue [{}] differs from the closed form [{}] up to sign",
            fmt_qvec(&piped.residue).join(", "),
            fmt_qvec(&closed.residue).join(", ")
        )));
    }
    let mut lines = vec![
        format!("cone: {source}"),
        format!("t = [{}]", fmt_qvec(&t.t).join(", ")),
        format!("s = [{}]", fmt_qvec(&s.t).join(", ")),
        format!("closed form residue = [{}]", fmt_qvec(&closed.residue).join(", ")),
        format!("pipeline residue = [{}]", fmt_qvec(&piped.residue).join(", ")),
        "pipeline check: agrees with the closed form (opposite sign convention)".into(),
        format!("cup = {}", verdict(closed.is_zero())),
    ];
    if let Some(b) = &closed.certificate {
        lines.push(format!("preimage = [{}]", fmt_qvec(b).join(", ")));
    }
    if trace {
        trace_lines(&tr, &mut lines);
    }
    let mut json = json!({
        "verb": "cup",
        "cone": cone_json(source, &cone),
        "t": fmt_qvec(&t.t),
        "s": fmt_qvec(&s.t),
        "closed_form": class_json(&closed),
        "pipeline": class_json(&piped),
        "zero": closed.is_zero(),
    });
    if trace {
        json["trace"] = trace_json(&tr);
    }
    Ok(Report { lines, json, code: 0 })
}

fn versal_report(source: &str) -> Result<Report> {
    let cone = load_cone(source)?;
    let (case, forms) = versal_quadratics(&cone)?;
    let v = crate::cup::v_space(&cone)?;
    let case_name = serde_json::to_value(case).expect("enum serializes");
    let mut lines = vec![
        format!("cone: {source}"),
        format!("dim V = {}", v.dim()),
        format!("case: {}", case_name.as_str().unwrap_or_default()),
        format!("quadrics = {}", forms.len()),
    ];
    lines.extend(forms.iter().map(|f| format!("  {}", f.display())));
    let json = json!({
        "verb": "versal",
        "cone": cone_json(source, &cone),
        "dim_v": v.dim(),
        "case": case_name,
        "quadrics": forms.iter().map(|f| json!({ "display": f.display(), "coefficients": f.coefficients })).collect::<Vec<_>>(),
    });
    Ok(Report { lines, json, code: 0 })
}

fn special_degree(s: &str) -> Result<SpecialDegree> {
    let v = parse_ints(s)?;
    if v.len() != 3 {
        return Err(Error::Input(format!("expected j,p,q, got `{s}`")));
    }
    if v[0] < 1 {
        return Err(Error::Input(format!("edge indices start at 1, got {}", v[0])));
    }
    Ok(SpecialDegree { j: (v[0] - 1) as usize, p: v[1], q: v[2] })
}

fn special_report(source: &str, d1: &str, d2: &str, window: i64, trace: bool, cfg: &SpanConfig) -> Result<Report> {
    check_height(window)?;
    let cone = load_cone(source)?;
    let (a, b) = (special_degree(d1)?, special_degree(d2)?);
    let (r1, r2) = (a.degree(&cone)?, b.degree(&cone)?);
    let res = special_degree_cup(&cone, a, b, window, cfg)?;
    let mut lines = vec![format!("cone: {source}"), format!("R1 = {r1}"), format!("R2 = {r2}")];
    let mut json = json!({
        "verb": "cup-special",
        "cone": cone_json(source, &cone),
        "r1": r1.0,
        "r2": r2.0,
        "zero": res.is_zero(),
    });
    match &res {
        SpecialCup::CertifiedZero { degree, reason } => {
            let reason = serde_json::to_value(reason).expect("enum serializes");
            lines.push(format!("R1 + R2 = {degree}"));
            lines.push(format!("cup = zero (certified: {})", reason.as_str().unwrap_or_default()));
            json["degree"] = json!(degree.0);
            json["reason"] = reason;
        }
        SpecialCup::Computed { degree, t1_dims, class, trace: tr } => {
            lines.push(format!("R1 + R2 = {degree}"));
            lines.push(format!("t1 dims = ({}, {})", t1_dims.0, t1_dims.1));
            lines.push(format!("residue = [{}]", fmt_qvec(&class.residue).join(", ")));
            lines.push(format!("cup = {}", verdict(class.is_zero())));
            json["degree"] = json!(degree.0);
            json["t1_dims"] = json!([t1_dims.0, t1_dims.1]);
            json["class"] = class_json(class);
            if trace {
                trace_lines(tr, &mut lines);
                json["trace"] = trace_json(tr);
            }
        }
    }
    Ok(Report { lines, json, code: 0 })
}

fn oracle_report(
    source: &str,
    identity: &str,
    height: i64,
    instances: usize,
    seed: u64,
    cfg: &SpanConfig,
) -> Result<Report> {
    check_height(height)?;
    let cone = load_cone(source)?;
    let ids = if identity == "all" {
        vec![
            Identity::DdZero,
            Identity::SleC,
            Identity::Hj,
            Identity::BracketCases,
            Identity::Hodge,
            Identity::BracketSupport,
        ]
    } else {
        vec![Identity::parse(identity)?]
    };
    let mut lines = vec![format!("cone: {source}"), format!("height = {height}, instances = {instances}, seed = {seed}")];
    let mut reports = Vec::new();
    let mut failed = false;
    for id in ids {
        let mut rng = StdRng::seed_from_u64(seed);
        let rep = run_identity(&cone, id, height, instances, &mut rng, cfg)?;
        lines.push(format!("{}: {} tuples certified, {} violations", id.name(), rep.tuples, rep.violations));
        lines.extend(rep.examples.iter().map(|e| format!("  {e}")));
        failed |= !rep.ok();
        reports.push(rep);
    }
    let json = json!({ "verb": "oracle-verify", "cone": cone_json(source, &cone), "reports": reports });
    Ok(Report { lines, json, code: if failed { 4 } else { 0 } })
}

fn gerstenhaber_report(n: i64, height: i64) -> Result<Report> {
    check_height(height)?;
    let cert = verify_surface_zero(n, height)?;
    let mut lines = vec![format!("A_{n} surface, window height {height}")];
    for e in &cert.entries {
        lines.push(format!(
            "  k = {}, m = {}, R = {:?}: skew dim {}, {} triples ({} violations), {} support pairs ({} violations)",
            e.k, e.m, e.r, e.skew_dim, e.tuples, e.db_violations, e.pairs, e.support_violations
        ));
    }
    let ok = cert.ok();
    lines.push(if ok { "zero map: certified".into() } else { "zero map: VIOLATED".into() });
    let total: usize = cert.entries.iter().map(|e| e.db_violations + e.support_violations).sum();
    debug_assert_eq!(ok, total.is_zero());
    let json = json!({ "verb": "gerstenhaber", "certificate": cert, "zero_map_certified": ok });
    Ok(Report { lines, json, code: if ok { 0 } else { 4 } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Report {
        let mut full = vec!["toric-deform"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).unwrap().command)
    }

    #[test]
    fn t1_hexagon() {
        let r = run_args(&["t1", "--cone", "hexagon", "--deg", "Rstar"]);
        assert_eq!(r.code, 0);
        assert!(r.lines.contains(&"t1 = 3".to_string()));
    }

    #[test]
    fn versal_hexagon() {
        let r = run_args(&["versal", "--cone", "hexagon"]);
        assert_eq!(r.code, 0);
        assert!(r.lines.iter().any(|l| l.trim() == "t1^2 + t2^2 - t4^2 - t5^2"));
        assert!(r.lines.iter().any(|l| l.trim() == "t2^2 + t3^2 - t5^2 - t6^2"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["t1", "--cone", "nope.toml"]).code, 2);
        assert_eq!(run_args(&["versal", "--cone", "a1"]).code, 2);
        assert_eq!(run_args(&["gerstenhaber", "--an", "1", "--height", "2"]).code, 3);
        assert_eq!(run_args(&["cup", "--cone", "square", "--t", "1,0,0,0", "--s", "1,1,1,1"]).code, 2);
        assert!(Cli::try_parse_from(["toric-deform", "frobnicate"]).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let args = ["cup", "--cone", "square", "--t", "1,-1,1,-1", "--s", "1/2,0,1/2,0", "--window", "6"];
        let a = run_args(&args);
        let b = run_args(&args);
        assert_eq!(a.code, 0, "{:?}", a.lines);
        assert_eq!(a.render(Format::Json), b.render(Format::Json));
        assert_eq!(a.render(Format::Text), b.render(Format::Text));
    }
}
