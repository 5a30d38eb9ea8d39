//! Command-line front end.
//!
//! Exit codes: 0 success, 2 bad arguments or group spec, 3 computation
//! error, 4 a cross-check disagreed.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::catalog::group_from_catalog;
use crate::chartable::character_table;
use crate::error::Error;
use crate::group::{Group, DEFAULT_CAP};
use crate::lattice::{enumerate_normal_subgroups, socle_decomposition, NormalLattice};
use crate::report::{
    analysis_problems, analyze, chartable_problems, chartable_section, faithful_problems, faithful_section,
    generation_problems, generation_section, lattice_section, moebius_problems, moebius_section,
    AnalysisReport, CharTableSection, FaithfulSection, GenerationSection, LatticeSection, MoebiusSection,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "normlat", version, about = "Normal subgroup lattices, Möbius functions and faithful characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug)]
struct Options {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tolerance: f64,
    /// Largest group order to construct.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Run the oracle cross-checks and fail on any disagreement.
    #[arg(long, global = true)]
    verify: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report.
    Analyze { spec: String },
    /// Normal subgroups and the Hasse diagram.
    Lattice { spec: String },
    /// Möbius function, closed form against the recursion.
    Moebius { spec: String },
    /// Class generating number and generating-tuple counts.
    Generate {
        spec: String,
        /// Only this tuple length (default: 0 through the class count).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Character table and kernels.
    Chartable { spec: String },
    /// Faithful-character sums and divisibility checks.
    Faithful { spec: String },
}

enum Failure {
    Parse(String),
    Compute(Error),
    Mismatch(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownName(_) | Error::InvalidPermutation(_) => Failure::Parse(e.to_string()),
            e => Failure::Compute(e),
        }
    }
}

/// Runs the CLI on `argv` (including the program name), writing the result
/// to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_PARSE;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    let mut rendered = String::new();
    let outcome = execute(&cli, &mut rendered);
    if !rendered.is_empty() {
        let written = match &cli.opts.out {
            Some(path) => std::fs::write(path, &rendered).map_err(|e| e.to_string()),
            None => stdout.write_all(rendered.as_bytes()).map_err(|e| e.to_string()),
        };
        if let Err(e) = written {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            return EXIT_COMPUTE;
        }
    }
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_PARSE
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_COMPUTE
        }
        Err(Failure::Mismatch(problems)) => {
            for p in problems {
                let _ = writeln!(stderr, "mismatch: {p}");
            }
            EXIT_MISMATCH
        }
    }
}

fn load(spec: &str, cap: usize) -> Result<(Group, NormalLattice), Failure> {
    let g = group_from_catalog(spec, cap)?;
    let lat = enumerate_normal_subgroups(&g);
    Ok((g, lat))
}

fn emit<T: Serialize>(value: &T, json: bool, text: impl FnOnce() -> String, out: &mut String) {
    if json {
        out.push_str(&serde_json::to_string_pretty(value).expect("report serializes"));
        out.push('\n');
    } else {
        out.push_str(&text());
    }
}

fn check(problems: Vec<String>) -> Result<(), Failure> {
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(problems))
    }
}

fn execute(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    let o = &cli.opts;
    match &cli.command {
        Command::Analyze { spec } => {
            let (g, lat) = load(spec, o.cap)?;
            let report = analyze(spec, &g, &lat, o.tolerance, o.verify)?;
            emit(&report, o.json, || render_analysis(&report), out);
            // The three class generating numbers must always agree.
            let mut problems = generation_problems(&report.generation);
            if o.verify {
                problems = analysis_problems(&report, o.tolerance);
            }
            check(problems)
        }
        Command::Lattice { spec } => {
            let (g, lat) = load(spec, o.cap)?;
            let section = lattice_section(&g, &lat);
            emit(&section, o.json, || render_lattice(spec, g.order(), &section), out);
            if o.verify {
                check(lattice_problems(&g, &lat))?;
            }
            Ok(())
        }
        Command::Moebius { spec } => {
            let (g, lat) = load(spec, o.cap)?;
            let section = moebius_section(&g, &lat)?;
            emit(&section, o.json, || render_moebius(&section), out);
            check(moebius_problems(&section))
        }
        Command::Generate { spec, k } => {
            let (g, lat) = load(spec, o.cap)?;
            let ct = character_table(&g, o.cap)?;
            let ks: Vec<usize> = match k {
                Some(k) => vec![*k],
                None => (0..=ct.classes.len()).collect(),
            };
            let section = generation_section(&g, &lat, &ct, &ks, o.verify)?;
            emit(&section, o.json, || render_generation(&section), out);
            check(generation_problems(&section))
        }
        Command::Chartable { spec } => {
            let (g, lat) = load(spec, o.cap)?;
            let ct = character_table(&g, o.cap)?;
            let section = chartable_section(&g, &lat, &ct);
            emit(&section, o.json, || render_chartable(&section), out);
            if o.verify {
                check(chartable_problems(&section, o.tolerance))?;
            }
            Ok(())
        }
        Command::Faithful { spec } => {
            let (g, lat) = load(spec, o.cap)?;
            let dec = socle_decomposition(&g, &lat)?;
            let ct = character_table(&g, o.cap)?;
            let section = faithful_section(&g, &dec, &ct, o.tolerance)?;
            emit(&section, o.json, || render_faithful(&section), out);
            if o.verify {
                check(faithful_problems(&section, o.tolerance))?;
            }
            Ok(())
        }
    }
}

/// Meets and joins of all node pairs stay in the lattice, and every node is
/// normal.
fn lattice_problems(g: &Group, lat: &NormalLattice) -> Vec<String> {
    let mut out = Vec::new();
    for (i, x) in lat.nodes().iter().enumerate() {
        if !g.is_normal(x) {
            out.push(format!("N{i} is not normal"));
        }
        for y in &lat.nodes()[i..] {
            if lat.index_of(&x.meet(y)).is_none() || lat.index_of(&g.join(x, y)).is_none() {
                out.push(format!("N{i} meet/join leaves the lattice"));
            }
        }
    }
    out
}

fn render_lattice(spec: &str, order: usize, s: &LatticeSection) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "group {spec} of order {order}: {} normal subgroups", s.node_count);
    if let (Some(r), Some(so)) = (s.radical_order, s.socle_order) {
        let _ = writeln!(t, "radical order {r}, socle order {so}");
    }
    let _ = writeln!(t, "covers:");
    for n in &s.nodes {
        let _ = writeln!(t, "  N{} (order {}, {} classes)", n.index, n.order, n.class_count);
        for c in &n.upper_covers {
            let _ = writeln!(t, "    < N{} (order {})", c, s.nodes[*c].order);
        }
    }
    t
}

fn render_moebius(s: &MoebiusSection) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "mu(1, G) = {}", s.mu_one_g.0);
    for e in &s.entries {
        let flag = if e.closed == e.recursive { "" } else { "  MISMATCH" };
        let _ = writeln!(t, "  mu(N{}, N{}) = {} (recursive {}){flag}", e.lower, e.upper, e.closed.0, e.recursive.0);
    }
    let _ = writeln!(t, "{} entries, {} mismatches", s.entries.len(), s.mismatches);
    t
}

fn render_generation(s: &GenerationSection) -> String {
    let mut t = String::new();
    let n = &s.class_generating_numbers;
    let _ = writeln!(
        t,
        "class generating number {} (structural {}, brute force {}, vertical cut {})",
        s.class_generating_number, n.structural, n.brute_force, n.vertical_cut
    );
    for e in &s.fk {
        match &e.brute_force {
            Some(b) => {
                let _ = writeln!(t, "  f_{} = {} (direct {})", e.k, e.value.0, b.0);
            }
            None => {
                let _ = writeln!(t, "  f_{} = {}", e.k, e.value.0);
            }
        }
    }
    let majors: Vec<String> = s.major_subgroups.iter().map(|m| format!("N{}:{}", m.node, m.class_count)).collect();
    let _ = writeln!(t, "major subgroups (node:classes) {}", majors.join(" "));
    t
}

fn render_chartable(s: &CharTableSection) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "computed modulo {}", s.prime);
    for c in &s.classes {
        let _ = writeln!(t, "  C{}: {} (size {}, order {})", c.index, c.representative, c.size, c.element_order);
    }
    for (i, chi) in s.characters.iter().enumerate() {
        let values: Vec<String> = chi.values.iter().map(|v| format_complex(v[0], v[1])).collect();
        let kernel = chi.kernel_node.map_or("?".to_string(), |k| format!("N{k}"));
        let _ = writeln!(t, "  chi{i}: [{}] kernel {kernel} (order {})", values.join(", "), chi.kernel_order);
    }
    t
}

fn format_complex(re: f64, im: f64) -> String {
    let r = |x: f64| {
        let s = format!("{x:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    };
    if im.abs() < 1e-9 {
        r(re)
    } else if re.abs() < 1e-9 {
        format!("{}i", r(im))
    } else {
        format!("{}{}{}i", r(re), if im < 0.0 { "-" } else { "+" }, r(im.abs()))
    }
}

fn render_faithful(s: &FaithfulSection) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "sum of squared faithful degrees {}", s.faithful_sum_squares);
    let _ = writeln!(
        t,
        "faithful irreducible character: {} (from socle: {})",
        s.has_faithful_irrep, s.has_faithful_irrep_structural
    );
    let _ = writeln!(t, "socle order {}", s.socle_order);
    for c in &s.class_checks {
        match &c.product {
            Some(p) => {
                let _ = writeln!(
                    t,
                    "  C{} (size {}): sum {} product {} divides {}",
                    c.class,
                    c.size,
                    c.pair_sum,
                    p,
                    c.divides.unwrap_or(false)
                );
            }
            None => {
                let _ = writeln!(t, "  C{} (size {}): |CS| < |C||S|", c.class, c.size);
            }
        }
    }
    let _ = writeln!(
        t,
        "{} class pairs distinct modulo the socle, largest faithful sum {:e}",
        s.distinct_pairs, s.max_distinct_pair_sum
    );
    t
}

fn render_analysis(r: &AnalysisReport) -> String {
    let mut t = render_lattice(&r.group_spec, r.order, &r.lattice);
    let d = &r.socle_decomposition;
    let _ = writeln!(t, "socle: a = {}, b = {}", d.a, d.b);
    for (i, f) in d.abelian.iter().enumerate() {
        let _ = writeln!(
            t,
            "  A{}: order {}, d = {}, q = {}, {} minimal normals",
            i + 1,
            f.order,
            f.multiplicity,
            f.field_size,
            f.member_count
        );
    }
    for o in &d.non_abelian_orders {
        let _ = writeln!(t, "  S: order {o}");
    }
    t.push_str(&render_moebius(&r.moebius));
    t.push_str(&render_generation(&r.generation));
    t.push_str(&render_chartable(&r.character_table));
    t.push_str(&render_faithful(&r.faithful));
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("normlat").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["moebius", "C1"]).0, EXIT_COMPUTE);
        assert_eq!(run_str(&["moebius", "Z7"]).0, EXIT_PARSE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_PARSE);
        assert_eq!(run_str(&["lattice", "S5", "--cap", "100"]).0, EXIT_COMPUTE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn generate_s3() {
        let (code, out, _) = run_str(&["generate", "S3", "--json", "--verify"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["classGeneratingNumber"], 1);
        let f1 = v["fk"].as_array().unwrap().iter().find(|e| e["k"] == 1).unwrap();
        assert_eq!(f1["value"], 1);
    }

    #[test]
    fn text_lattice() {
        let (code, out, _) = run_str(&["lattice", "S3"]);
        assert_eq!(code, 0);
        assert!(out.contains("3 normal subgroups"));
        assert!(out.contains("    < N1 (order 3)"));
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(format_complex(-1.0, 0.0), "-1");
        assert_eq!(format_complex(-0.5, 0.8660254), "-0.5+0.866i");
        assert_eq!(format_complex(0.0, -1.0), "-1i");
    }
}
