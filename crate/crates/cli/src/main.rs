use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use niho_core::distribution::{DistributionReport, Method, WeightDistribution};
use niho_core::enumerator::{CodeContext, EnumError, EnumOptions, DEFAULT_BUDGET};
use niho_core::fields::FieldTower;
use niho_core::fixtures::{table_rows, TableRow, EXAMPLES};
use niho_core::params::{
    check_conditions, derive, dimension, minpoly_degrees, random_admissible_spec, CodeSpec, ConditionReport,
    DerivedParams, Family, SweepBounds,
};
use niho_core::theory::{corollary_tables, griesmer_check, solve_distribution, GriesmerReport, TheoryError};

#[derive(Parser)]
#[command(name = "niho", version, about = "Generalized Niho cyclic codes over GF(q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive parameters and check the admissibility conditions.
    Derive {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute a weight distribution with one method.
    Dist {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the closed form against enumeration (and the tables when they apply).
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reproduce every embedded reference enumerator and table row.
    Tables {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Inspect the field tower.
    Tower {
        #[command(subcommand)]
        action: TowerAction,
    },
    /// Cross-check all methods on random admissible specs.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random specs.
        #[arg(long, default_value_t = 12)]
        specs: usize,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum TowerAction {
    /// Print the modulus and primitive element of GF(p^(2lm)).
    Dump {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    family: u8,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    l: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, allow_negative_numbers = true)]
    h: i64,
    #[arg(long, allow_negative_numbers = true)]
    f: i64,
    #[arg(long)]
    t: u32,
}

impl SpecArgs {
    fn spec(&self) -> CodeSpec {
        let family = if self.family == 1 { Family::One } else { Family::Two };
        CodeSpec::new(family, self.p, self.l, self.m, self.h, self.f, self.t)
    }
}

#[derive(Args)]
struct RunArgs {
    /// Allow enumerations of 2^28 tuples or more.
    #[arg(long)]
    long_run: bool,
    /// Worker threads for enumeration.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
}

impl RunArgs {
    fn options(&self) -> EnumOptions {
        EnumOptions { long_run: self.long_run, workers: self.workers.map(|w| w as usize), ..EnumOptions::default() }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Print JSON instead of text.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Print text (default).
    #[arg(long)]
    text: bool,
    /// Also write the JSON result to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Closed form (same as vandermonde).
    Auto,
    Vandermonde,
    Brute,
    Accel,
    Table,
}

enum Failure {
    Usage(String),
    Inadmissible(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Inadmissible(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Inadmissible(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::Inadmissible(_) | EnumError::Param(_) => Failure::Inadmissible(e.to_string()),
            EnumError::FastMismatch { .. } | EnumError::InadmissibleRootCount { .. } | EnumError::DegenerateForm(_) => {
                Failure::Mismatch(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<TheoryError> for Failure {
    fn from(e: TheoryError) -> Self {
        match e {
            TheoryError::Inadmissible(_) | TheoryError::Param(_) => Failure::Inadmissible(e.to_string()),
            TheoryError::NoTable { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Mismatch(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn emit<T: Serialize>(output: &OutputArgs, text: &str, value: &T) -> CmdResult {
    let json = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    if output.json {
        println!("{json}");
    } else {
        print!("{text}");
    }
    if let Some(path) = &output.out {
        std::fs::write(path, format!("{json}\n")).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn conditions_text(report: &ConditionReport) -> String {
    let mut out = String::from("conditions:\n");
    for c in &report.conditions {
        let status = match (c.applicable, c.pass) {
            (false, _) => "n/a",
            (true, true) => "pass",
            (true, false) => "fail",
        };
        writeln!(out, "  ({}) {status}  {}", c.label, c.detail).unwrap();
    }
    if report.delta_formulas_agree == Some(false) {
        out.push_str("  note: the t = 1 and t >= 2 delta formulas disagree for this (h, f)\n");
    }
    writeln!(out, "admissible: {}", if report.pass { "yes" } else { "no" }).unwrap();
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Validate, check conditions and derive; inadmissible specs are errors.
fn admissible(spec: &CodeSpec) -> Result<DerivedParams, Failure> {
    let report = check_conditions(spec).map_err(|e| Failure::Usage(e.to_string()))?;
    if !report.pass {
        return Err(Failure::Inadmissible(format!("{spec}: conditions {:?} fail", report.failures())));
    }
    derive(spec).map_err(|e| Failure::Inadmissible(e.to_string()))
}

#[derive(Serialize)]
struct DeriveOutput {
    spec: CodeSpec,
    conditions: ConditionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    derived: Option<DerivedParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minpoly_degrees: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn cmd_derive(args: &SpecArgs, output: &OutputArgs) -> CmdResult {
    let spec = args.spec();
    let report = check_conditions(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut text = format!("{spec}\n");
    let mut result = DeriveOutput { spec, conditions: report.clone(), derived: None, minpoly_degrees: None, error: None };
    match derive(&spec) {
        Ok(d) => {
            let degs = minpoly_degrees(&d);
            writeln!(text, "q={} r={} e={} delta={} n={} k={}", d.q, d.r, d.e, d.delta, d.n, d.dimension).unwrap();
            writeln!(text, "exponents: {}", join(&d.literal_exponents)).unwrap();
            writeln!(text, "exponents mod r^2-1: {}", join(&d.exponents)).unwrap();
            writeln!(text, "minimal polynomial degrees: {}", join(&degs)).unwrap();
            if let Err(e) = dimension(&d) {
                writeln!(text, "dimension check: {e}").unwrap();
                result.error = Some(e.to_string());
            }
            result.derived = Some(d);
            result.minpoly_degrees = Some(degs);
        }
        Err(e) => {
            writeln!(text, "cannot derive exponents: {e}").unwrap();
            result.error = Some(e.to_string());
        }
    }
    text.push_str(&conditions_text(&report));
    emit(output, &text, &result)?;
    if report.pass && result.error.is_none() {
        Ok(())
    } else {
        Err(Failure::Inadmissible(format!("conditions {:?} fail", report.failures())))
    }
}

fn run_method(
    spec: &CodeSpec,
    derived: &DerivedParams,
    method: Method,
    opts: &EnumOptions,
) -> Result<WeightDistribution, Failure> {
    match method {
        Method::Vandermonde => Ok(solve_distribution(spec, derived)?),
        Method::CorollaryTable => Ok(corollary_tables(spec, derived)?),
        Method::BruteForce | Method::Accelerated => {
            let tower = FieldTower::new(spec.p, spec.l, spec.m).map_err(|e| Failure::Usage(e.to_string()))?;
            let ctx = CodeContext::new(spec, derived, &tower)?;
            let dist = if method == Method::BruteForce {
                ctx.brute_force_distribution(opts)?
            } else {
                ctx.accelerated_distribution(opts)?
            };
            Ok(dist)
        }
    }
}

fn cmd_dist(args: &SpecArgs, method: MethodArg, run: &RunArgs, output: &OutputArgs) -> CmdResult {
    let spec = args.spec();
    let derived = admissible(&spec)?;
    let method = match method {
        MethodArg::Auto | MethodArg::Vandermonde => Method::Vandermonde,
        MethodArg::Brute => Method::BruteForce,
        MethodArg::Accel => Method::Accelerated,
        MethodArg::Table => Method::CorollaryTable,
    };
    let dist = run_method(&spec, &derived, method, &run.options())?;
    let report = DistributionReport::new(&spec, &derived, method, &dist);
    emit(output, &report.to_text(), &report)
}

#[derive(Serialize)]
struct Comparison {
    method: Method,
    equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_difference: Option<String>,
}

#[derive(Serialize)]
struct VerifyOutput {
    closed_form: DistributionReport,
    comparisons: Vec<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
    equal: bool,
}

/// Tuple count, and whether enumeration is possible under the options.
fn enumeration_method(spec: &CodeSpec, opts: &EnumOptions) -> Result<Method, String> {
    let tuples = spec.code_size();
    match tuples {
        Some(n) if n < DEFAULT_BUDGET => Ok(Method::BruteForce),
        _ if opts.long_run => Ok(Method::Accelerated),
        Some(n) => Err(format!("enumeration skipped: {n} tuples need --long-run")),
        None => Err(format!("enumeration skipped: {}^{} tuples need --long-run", spec.q(), spec.dimension_formula())),
    }
}

fn verify_spec(spec: &CodeSpec, opts: &EnumOptions) -> Result<VerifyOutput, Failure> {
    let derived = admissible(spec)?;
    let closed = solve_distribution(spec, &derived)?;
    let mut comparisons = Vec::new();
    let mut compare = |method: Method, dist: &WeightDistribution| {
        let diff = closed.first_difference(dist);
        comparisons.push(Comparison { method, equal: diff.is_none(), first_difference: diff.map(|d| d.to_string()) });
    };
    match corollary_tables(spec, &derived) {
        Ok(t) => compare(Method::CorollaryTable, &t),
        Err(TheoryError::NoTable { .. }) => {}
        Err(e) => return Err(e.into()),
    }
    let mut skipped = None;
    match enumeration_method(spec, opts) {
        Ok(method) => {
            let dist = run_method(spec, &derived, method, opts)?;
            compare(method, &dist);
        }
        Err(notice) => skipped = Some(notice),
    }
    let equal = comparisons.iter().all(|c| c.equal);
    Ok(VerifyOutput {
        closed_form: DistributionReport::new(spec, &derived, Method::Vandermonde, &closed),
        comparisons,
        skipped,
        equal,
    })
}

fn cmd_verify(args: &SpecArgs, run: &RunArgs, output: &OutputArgs) -> CmdResult {
    let spec = args.spec();
    let v = verify_spec(&spec, &run.options())?;
    let mut text = v.closed_form.to_text();
    for c in &v.comparisons {
        match &c.first_difference {
            None => writeln!(text, "{}: equal", c.method).unwrap(),
            Some(d) => writeln!(text, "{}: MISMATCH at {d}", c.method).unwrap(),
        }
    }
    if let Some(s) = &v.skipped {
        writeln!(text, "{s}").unwrap();
    }
    emit(output, &text, &v)?;
    if v.equal {
        Ok(())
    } else {
        Err(Failure::Mismatch("distributions differ".into()))
    }
}

#[derive(Serialize)]
struct ExampleResult {
    id: String,
    spec: CodeSpec,
    nkd: (u64, u32, u64),
    exponents_ok: bool,
    closed_form_ok: bool,
    /// `None` when enumeration was skipped.
    enumeration_ok: Option<bool>,
    enumeration_method: Option<Method>,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct RowResult {
    id: String,
    spec: CodeSpec,
    expected: (u64, u32, u64),
    got: Option<(u64, u32, u64)>,
    griesmer_bound: Option<u64>,
    griesmer_consistent: Option<bool>,
    remark: String,
    pass: bool,
}

#[derive(Serialize)]
struct TablesOutput {
    examples: Vec<ExampleResult>,
    rows: Vec<RowResult>,
    pass: bool,
}

fn check_example(ex: &niho_core::fixtures::ExampleFixture, opts: &EnumOptions) -> ExampleResult {
    let spec = ex.spec();
    let mut res = ExampleResult {
        id: ex.id.to_string(),
        spec,
        nkd: ex.nkd,
        exponents_ok: false,
        closed_form_ok: false,
        enumeration_ok: None,
        enumeration_method: None,
        pass: false,
        error: None,
    };
    let derived = match admissible(&spec) {
        Ok(d) => d,
        Err(e) => {
            res.error = Some(e.message().to_string());
            return res;
        }
    };
    res.exponents_ok = derived.literal_exponents == ex.exponents;
    let want = match WeightDistribution::from_enumerator(ex.nkd.0, ex.nkd.1, derived.q, ex.enumerator) {
        Ok(w) => w,
        Err(e) => {
            res.error = Some(e.to_string());
            return res;
        }
    };
    match solve_distribution(&spec, &derived) {
        Ok(c) => res.closed_form_ok = c.same_as(&want) && c.min_distance() == Some(ex.nkd.2),
        Err(e) => res.error = Some(e.to_string()),
    }
    if let Ok(method) = enumeration_method(&spec, opts) {
        res.enumeration_method = Some(method);
        match run_method(&spec, &derived, method, opts) {
            Ok(d) => res.enumeration_ok = Some(d.same_as(&want)),
            Err(e) => {
                res.enumeration_ok = Some(false);
                res.error = Some(e.message().to_string());
            }
        }
    }
    res.pass = res.exponents_ok && res.closed_form_ok && res.enumeration_ok != Some(false) && res.error.is_none();
    res
}

fn check_row(row: &TableRow) -> RowResult {
    let spec = row.spec();
    let got = admissible(&spec).ok().and_then(|d| {
        let dist = solve_distribution(&spec, &d).ok()?;
        Some((d.n, d.dimension, dist.min_distance()?))
    });
    let g: Option<GriesmerReport> = got.map(|(n, k, d)| griesmer_check(n, k, d, spec.q()));
    RowResult {
        id: row.id(),
        spec,
        expected: row.nkd,
        got,
        griesmer_bound: g.map(|g| g.bound),
        griesmer_consistent: g.map(|g| g.consistent),
        remark: row.remark.to_string(),
        pass: got == Some(row.nkd) && g.is_some_and(|g| g.consistent),
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

fn cmd_tables(run: &RunArgs, output: &OutputArgs) -> CmdResult {
    let opts = run.options();
    let examples: Vec<ExampleResult> = EXAMPLES.iter().map(|ex| check_example(ex, &opts)).collect();
    let rows: Vec<RowResult> = table_rows().map(check_row).collect();
    let pass = examples.iter().all(|e| e.pass) && rows.iter().all(|r| r.pass);

    let mut text = String::new();
    writeln!(text, "{:<10} {:<12} {:<9} {:<7} {:<18} result", "example", "[n,k,d]", "exponents", "closed", "enumeration")
        .unwrap();
    for e in &examples {
        let en = match (e.enumeration_ok, e.enumeration_method) {
            (None, _) => "skipped".to_string(),
            (Some(ok), Some(m)) => format!("{} ({m})", mark(ok)),
            (Some(ok), None) => mark(ok).to_string(),
        };
        let nkd = format!("[{},{},{}]", e.nkd.0, e.nkd.1, e.nkd.2);
        writeln!(
            text,
            "{:<10} {:<12} {:<9} {:<7} {:<18} {}",
            e.id,
            nkd,
            mark(e.exponents_ok),
            mark(e.closed_form_ok),
            en,
            if e.pass { "PASS" } else { "FAIL" }
        )
        .unwrap();
    }
    writeln!(text).unwrap();
    writeln!(text, "{:<22} {:<14} {:<14} {:<9} {:<28} result", "row", "expected", "computed", "griesmer", "remark").unwrap();
    for r in &rows {
        let fmt = |x: (u64, u32, u64)| format!("[{},{},{}]", x.0, x.1, x.2);
        let g = r.griesmer_bound.map_or("-".to_string(), |b| format!("{b}<={}", r.expected.0));
        writeln!(
            text,
            "{:<22} {:<14} {:<14} {:<9} {:<28} {}",
            r.id,
            fmt(r.expected),
            r.got.map_or("-".to_string(), fmt),
            g,
            r.remark,
            if r.pass { "PASS" } else { "FAIL" }
        )
        .unwrap();
    }
    writeln!(text, "\n{}", if pass { "all reference values reproduced" } else { "MISMATCH in reference values" }).unwrap();
    let out = TablesOutput { examples, rows, pass };
    emit(output, &text, &out)?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Mismatch("reference values not reproduced".into()))
    }
}

fn poly_string(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn cmd_tower_dump(p: u64, l: u32, m: u32, output: &OutputArgs) -> CmdResult {
    let tower = FieldTower::new(p, l, m).map_err(|e| Failure::Usage(e.to_string()))?;
    let dump = tower.dump();
    let mut text = String::new();
    writeln!(text, "GF({}) = GF({p})[x]/({})", tower.size(), poly_string(&dump.modulus)).unwrap();
    writeln!(text, "q = {}, r = {}, |U| = {}", tower.q(), tower.r(), tower.r() + 1).unwrap();
    writeln!(text, "gamma = {}", poly_string(&dump.gamma)).unwrap();
    writeln!(text, "log tables: {}", if tower.has_tables() { "yes" } else { "no" }).unwrap();
    emit(output, &text, &dump)
}

#[derive(Serialize)]
struct SelftestCase {
    spec: CodeSpec,
    nkd: Option<(u64, u32, u64)>,
    methods: Vec<Method>,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn selftest_case(spec: CodeSpec, opts: &EnumOptions) -> SelftestCase {
    let mut case = SelftestCase { spec, nkd: None, methods: Vec::new(), pass: false, error: None };
    let result = (|| -> Result<(), Failure> {
        let derived = admissible(&spec)?;
        let closed = solve_distribution(&spec, &derived)?;
        case.nkd = Some((derived.n, derived.dimension, closed.min_distance().unwrap_or(0)));
        case.methods.push(Method::Vandermonde);
        for method in [Method::CorollaryTable, Method::BruteForce, Method::Accelerated] {
            let dist = match run_method(&spec, &derived, method, opts) {
                Ok(d) => d,
                Err(Failure::Usage(_)) if method == Method::CorollaryTable => continue,
                Err(e) => return Err(e),
            };
            if let Some(d) = closed.first_difference(&dist) {
                return Err(Failure::Mismatch(format!("{method}: {d}")));
            }
            case.methods.push(method);
        }
        Ok(())
    })();
    match result {
        Ok(()) => case.pass = true,
        Err(e) => case.error = Some(e.message().to_string()),
    }
    case
}

fn cmd_selftest(seed: u64, count: usize, run: &RunArgs, output: &OutputArgs) -> CmdResult {
    let mut rng = StdRng::seed_from_u64(seed);
    let bounds = SweepBounds { max_field: 1 << 12, max_t: 3, max_tuples: Some(1 << 16) };
    let opts = EnumOptions { seed, ..run.options() };
    let mut cases = Vec::new();
    for _ in 0..count {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        if let Some(spec) = random_admissible_spec(&mut rng, p, bounds, 10_000) {
            cases.push(selftest_case(spec, &opts));
        }
    }
    let mut text = String::new();
    for c in &cases {
        let nkd = c.nkd.map_or("-".to_string(), |x| format!("[{},{},{}]", x.0, x.1, x.2));
        let methods: Vec<String> = c.methods.iter().map(|m| m.to_string()).collect();
        writeln!(text, "{} {}  {nkd}  {}", if c.pass { "ok  " } else { "FAIL" }, c.spec, methods.join(",")).unwrap();
        if let Some(e) = &c.error {
            writeln!(text, "     {e}").unwrap();
        }
    }
    let failed = cases.iter().filter(|c| !c.pass).count();
    writeln!(text, "{} specs, {failed} failed", cases.len()).unwrap();
    emit(output, &text, &cases)?;
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{failed} specs failed")))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Derive { spec, output } => cmd_derive(spec, output),
        Command::Dist { spec, method, run, output } => cmd_dist(spec, *method, run, output),
        Command::Verify { spec, run, output } => cmd_verify(spec, run, output),
        Command::Tables { run, output } => cmd_tables(run, output),
        Command::Tower { action: TowerAction::Dump { p, l, m, output } } => cmd_tower_dump(*p, *l, *m, output),
        Command::Selftest { seed, specs, run, output } => cmd_selftest(*seed, *specs, run, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
