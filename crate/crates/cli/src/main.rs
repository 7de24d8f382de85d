use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rk_codes::analysis::{
    bound_check, builtin_tables, load_tables, search, verify_tables, RowStatus, SearchConfig,
    SearchMode, DEFAULT_EXHAUSTIVE_CAP,
};
use rk_codes::notation::{
    format_block, format_element, format_generic, parse_block, parse_element,
};
use rk_codes::{BitVec, Error, GrayTable, Notation, QtCode, DEFAULT_BUDGET};

#[derive(Parser, Debug)]
#[command(
    name = "rk-codes",
    version,
    about = "Codes over R_k and their binary Gray images"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Ring parameter: R_k has 2^(2^k) elements.
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Twist constant, written in the generator notation.
    #[arg(long, global = true, default_value = "1")]
    lambda: String,
    /// Index (number of blocks); inferred from the generator when omitted.
    #[arg(long, global = true)]
    ell: Option<usize>,
    /// Coindex (block length); inferred from the generator when omitted.
    #[arg(long, global = true)]
    m: Option<usize>,
    /// r1, hex or generic; defaults to r1 for k=1, hex for k=2.
    #[arg(long, global = true)]
    notation: Option<Notation>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of codewords any single enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads; 0 uses every available core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Generator such as "(0u|0u|uu)"; "-" or omitted reads one per line from stdin.
    #[arg(long = "gen", global = true)]
    generator: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Element arithmetic: `eval a`, `eval a + b`, `eval a '*' b`.
    Eval {
        #[arg(required = true, num_args = 1..=3)]
        expr: Vec<String>,
    },
    /// Gray images of coefficient blocks, or preimages with --invert.
    Gray {
        /// Block or bit string; read from stdin when omitted.
        input: Option<String>,
        #[arg(long)]
        invert: bool,
    },
    /// Builds the code over R_k: generator matrix and size.
    Build,
    /// Parameters of the binary image.
    Image,
    /// Weight enumerator of the binary image.
    Wd,
    /// Rebuilds the published table codes and compares parameters.
    VerifyTables {
        /// Comma-separated table numbers.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        tables: Vec<u8>,
        /// Fixture CSV to use instead of the built-in one.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Searches one-generator QT codes for the best distance per `[n,dim]`.
    Search {
        #[arg(long, value_enum, default_value_t = ModeArg::Random)]
        mode: ModeArg,
        /// Candidates per (λ, ℓ, m) in random mode.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Twist constants to try; defaults to --lambda.
        #[arg(long, value_delimiter = ',')]
        lambdas: Vec<String>,
        /// Indices to try; defaults to --ell.
        #[arg(long, value_delimiter = ',')]
        ells: Vec<usize>,
        /// Coindices to try; defaults to --m.
        #[arg(long, value_delimiter = ',')]
        ms: Vec<usize>,
        /// Largest exhaustive search space, in candidate tuples.
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        cap: u64,
        /// JSON search configuration; overrides the flags above.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Residue and unit-count bounds on the minimum homogeneous distance.
    Bounds,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

/// What went wrong, mapped onto the documented exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Budget(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget(_) | Error::Undefined(_) => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx<'a> {
    g: &'a Global,
    out: io::BufWriter<io::StdoutLock<'static>>,
}

impl Ctx<'_> {
    fn k(&self) -> Result<u32, Failure> {
        self.g
            .k
            .ok_or_else(|| Failure::Usage("--k is required for this command".into()))
    }

    fn notation(&self) -> Result<Notation, Failure> {
        Ok(self.g.notation.unwrap_or(Notation::default_for(self.k()?)))
    }

    fn jobs(&self) -> usize {
        match self.g.jobs {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            n => n,
        }
    }

    fn line(&mut self, text: impl AsRef<str>) -> io::Result<()> {
        writeln!(self.out, "{}", text.as_ref())
    }

    fn row(&mut self, fields: &[String]) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(fields).map_err(io::Error::other)?;
        let bytes = w
            .into_inner()
            .map_err(|e| io::Error::other(e.to_string()))?;
        self.out.write_all(&bytes)
    }

    fn json(&mut self, value: &impl serde::Serialize) -> io::Result<()> {
        let text = serde_json::to_string(value).map_err(io::Error::other)?;
        self.line(text)
    }

    fn generators(&self) -> Result<Vec<String>, Failure> {
        inputs(self.g.generator.as_deref())
    }

    fn codes(&self) -> Result<Vec<(String, QtCode)>, Failure> {
        let k = self.k()?;
        let notation = self.notation()?;
        self.generators()?
            .into_iter()
            .map(|text| {
                let code = QtCode::parse(k, &self.g.lambda, &text, notation)?;
                if self.g.ell.is_some_and(|l| l != code.ell())
                    || self.g.m.is_some_and(|m| m != code.m())
                {
                    return Err(Failure::Usage(format!(
                        "{text} has index {} and coindex {}, which contradicts --ell/--m",
                        code.ell(),
                        code.m()
                    )));
                }
                Ok((text, code))
            })
            .collect()
    }
}

/// The given value, or non-empty, non-comment stdin lines for `-`/absent.
fn inputs(arg: Option<&str>) -> Result<Vec<String>, Failure> {
    match arg {
        Some(text) if text != "-" => Ok(vec![text.to_string()]),
        _ => {
            let mut lines = Vec::new();
            for line in io::stdin().lock().lines() {
                let line = line?;
                let t = line.trim();
                if !t.is_empty() && !t.starts_with('#') {
                    lines.push(t.to_string());
                }
            }
            if lines.is_empty() {
                return Err(Failure::Usage(
                    "no input given on the command line or stdin".into(),
                ));
            }
            Ok(lines)
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn eval(ctx: &mut Ctx, expr: &[String]) -> Outcome {
    let k = ctx.k()?;
    let notation = ctx.notation()?;
    let parse = |s: &str| parse_element(s, k, notation);
    let value = match expr {
        [a] => parse(a)?,
        [a, op, b] => {
            let (a, b) = (parse(a)?, parse(b)?);
            match op.as_str() {
                "+" | "-" => a + b,
                "*" | "x" | "." => a * b,
                other => return Err(Failure::Usage(format!("unknown operator '{other}'"))),
            }
        }
        _ => return Err(Failure::Usage("expected `a` or `a <op> b`".into())),
    };
    let shown = format_element(&value, notation)?;
    let generic = format_generic(&value);
    match ctx.g.format {
        Format::Text => {
            ctx.line(format!("value: {shown} ({generic})"))?;
            ctx.line(format!("unit: {}", value.is_unit()))?;
            ctx.line(format!("character: {}", value.character()))?;
            ctx.line(format!("hom_weight: {}", value.hom_weight().0))?;
            ctx.line(format!("residue: {}", value.residue() as u8))?;
        }
        Format::Json => ctx.json(&json!({
            "value": shown,
            "generic": generic,
            "unit": value.is_unit(),
            "character": value.character(),
            "hom_weight": value.hom_weight().0,
            "residue": value.residue() as u8,
        }))?,
        Format::Csv => {
            ctx.line("value,generic,unit,character,hom_weight,residue")?;
            ctx.row(&[
                shown.to_string(),
                generic.to_string(),
                value.is_unit().to_string(),
                value.character().to_string(),
                value.hom_weight().0.to_string(),
                (value.residue() as u8).to_string(),
            ])?;
        }
    }
    Ok(true)
}

fn gray(ctx: &mut Ctx, input: Option<&str>, invert: bool) -> Outcome {
    let k = ctx.k()?;
    let notation = ctx.notation()?;
    let table = GrayTable::new(k)?;
    if ctx.g.format == Format::Csv {
        ctx.line("input,output")?;
    }
    for text in inputs(input)? {
        let output = if invert {
            let bits: BitVec = text
                .parse()
                .map_err(|_| Failure::Usage(format!("'{text}' is not a bit string")))?;
            format_block(&table.psi_inverse(&bits)?, notation)?
        } else {
            table.psi(&parse_block(&text, k, notation)?)?.to_string()
        };
        match ctx.g.format {
            Format::Text => ctx.line(&output)?,
            Format::Json => ctx.json(&json!({ "input": text, "output": output }))?,
            Format::Csv => ctx.row(&[text.to_string(), output.to_string()])?,
        }
    }
    Ok(true)
}

fn build(ctx: &mut Ctx) -> Outcome {
    let notation = ctx.notation()?;
    let codes = ctx.codes()?;
    if ctx.g.format == Format::Csv {
        ctx.line("generator,k,lambda,ell,m,length,f2_dimension,qt_invariant")?;
    }
    for (text, code) in codes {
        let rk = code.to_rk_code()?;
        let matrix: Vec<Vec<String>> = code
            .generator_matrix()?
            .iter()
            .map(|row| row.iter().map(|a| format_element(a, notation)).collect())
            .collect::<Result<_, _>>()?;
        let lambda = format_element(&code.lambda(), notation)?;
        let invariant = code.is_qt_invariant()?;
        let dim = rk.f2_dimension();
        match ctx.g.format {
            Format::Text => {
                ctx.line(format!(
                    "{text}: k={} lambda={lambda} ell={} m={} length {}",
                    code.k(),
                    code.ell(),
                    code.m(),
                    code.length()
                ))?;
                for row in &matrix {
                    ctx.line(format!("  {}", row.join(" ")))?;
                }
                ctx.line(format!(
                    "  2^{dim} codewords{}",
                    if invariant { ", quasi-twisted" } else { "" }
                ))?;
            }
            Format::Json => ctx.json(&json!({
                "generator": text,
                "k": code.k(),
                "lambda": lambda,
                "ell": code.ell(),
                "m": code.m(),
                "length": code.length(),
                "generator_matrix": matrix,
                "f2_dimension": dim,
                "qt_invariant": invariant,
            }))?,
            Format::Csv => ctx.row(&[
                text.to_string(),
                code.k().to_string(),
                lambda.to_string(),
                code.ell().to_string(),
                code.m().to_string(),
                code.length().to_string(),
                dim.to_string(),
                invariant.to_string(),
            ])?,
        }
    }
    Ok(true)
}

fn image(ctx: &mut Ctx) -> Outcome {
    let notation = ctx.notation()?;
    let codes = ctx.codes()?;
    let table = GrayTable::new(ctx.k()?)?;
    let batch = codes.len() > 1;
    if ctx.g.format == Format::Csv {
        ctx.line("generator,n,dim,d,self_orthogonal,qc_index")?;
    }
    for (text, code) in codes {
        let record = code.record(&table, notation, ctx.g.budget, ctx.jobs())?;
        let img = &record.image;
        match ctx.g.format {
            Format::Text => {
                let mut line = format!(
                    "[{},{},{}]",
                    img.length,
                    img.dimension,
                    opt(img.min_distance)
                );
                if record.flags.self_orthogonal {
                    line.push_str(" self-orthogonal");
                }
                if let Some(s) = record.flags.qc_index {
                    line.push_str(&format!(" {s}-QC"));
                }
                if batch {
                    line = format!("{text} {line}");
                }
                ctx.line(line)?;
            }
            Format::Json => ctx.json(&record)?,
            Format::Csv => ctx.row(&[
                text.to_string(),
                img.length.to_string(),
                img.dimension.to_string(),
                opt(img.min_distance).to_string(),
                record.flags.self_orthogonal.to_string(),
                opt(record.flags.qc_index).to_string(),
            ])?,
        }
    }
    Ok(true)
}

fn wd(ctx: &mut Ctx) -> Outcome {
    let codes = ctx.codes()?;
    let table = GrayTable::new(ctx.k()?)?;
    let batch = codes.len() > 1;
    if ctx.g.format == Format::Csv {
        ctx.line("generator,weight,count")?;
    }
    for (text, code) in codes {
        let we = code
            .binary_image(&table)?
            .weight_enumerator_jobs(ctx.g.budget, ctx.jobs())?;
        match ctx.g.format {
            Format::Text if batch => ctx.line(format!("{text} {we}"))?,
            Format::Text => ctx.line(we.to_string())?,
            Format::Json => {
                ctx.json(&json!({ "generator": text, "weight_enumerator": we.pairs() }))?
            }
            Format::Csv => {
                for (w, c) in we.iter() {
                    ctx.row(&[text.to_string(), w.to_string(), c.to_string()])?;
                }
            }
        }
    }
    Ok(true)
}

fn verify(ctx: &mut Ctx, tables: &[u8], fixtures: Option<&PathBuf>) -> Outcome {
    let rows = match fixtures {
        Some(path) => load_tables(path)?,
        None => builtin_tables(),
    };
    let reports = verify_tables(&rows, tables, ctx.g.budget, ctx.jobs());
    if ctx.g.format == Format::Csv {
        ctx.line("table,generator,n,dim,d,computed_n,computed_dim,computed_d,self_orthogonal,qc_index,status,notes")?;
    }
    let mut all_match = true;
    for r in &reports {
        all_match &= r.status == RowStatus::Match;
        let computed = r.computed.map_or("-".to_string(), |p| p.to_string());
        match ctx.g.format {
            Format::Text => {
                let mut line = format!(
                    "{} {} expected {} computed {} {}",
                    r.table, r.generator, r.expected, computed, r.status
                );
                if let Some(s) = r.qc_index {
                    line.push_str(&format!(" {s}-QC"));
                }
                if let Some(e) = &r.error {
                    line.push_str(&format!(" ({e})"));
                }
                ctx.line(line)?;
            }
            Format::Json => ctx.json(r)?,
            Format::Csv => {
                let (n, dim, d) = r
                    .computed
                    .map_or(("-".into(), "-".into(), "-".into()), |p| {
                        (
                            p.length.to_string(),
                            p.dimension.to_string(),
                            p.min_distance.to_string(),
                        )
                    });
                ctx.row(&[
                    r.table.to_string(),
                    r.generator.to_string(),
                    r.expected.length.to_string(),
                    r.expected.dimension.to_string(),
                    r.expected.min_distance.to_string(),
                    n.to_string(),
                    dim.to_string(),
                    d.to_string(),
                    opt(r.self_orthogonal).to_string(),
                    opt(r.qc_index).to_string(),
                    r.status.to_string(),
                    r.notes.to_string(),
                ])?;
            }
        }
    }
    if ctx.g.format == Format::Text {
        let matched = reports
            .iter()
            .filter(|r| r.status == RowStatus::Match)
            .count();
        eprintln!("{matched}/{} rows match", reports.len());
    }
    Ok(all_match)
}

#[allow(clippy::too_many_arguments)]
fn run_search(
    ctx: &mut Ctx,
    mode: ModeArg,
    samples: u64,
    lambdas: &[String],
    ells: &[usize],
    ms: &[usize],
    cap: u64,
    config: Option<&PathBuf>,
) -> Outcome {
    let config = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str::<SearchConfig>(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => {
            let pick = |list: &[usize],
                        single: Option<usize>,
                        name: &str|
             -> Result<Vec<usize>, Failure> {
                match (list.is_empty(), single) {
                    (false, _) => Ok(list.to_vec()),
                    (true, Some(v)) => Ok(vec![v]),
                    (true, None) => Err(Failure::Usage(format!(
                        "search needs --{name} or --{name}s"
                    ))),
                }
            };
            SearchConfig {
                k: ctx.k()?,
                lambdas: if lambdas.is_empty() {
                    vec![ctx.g.lambda.clone()]
                } else {
                    lambdas.to_vec()
                },
                ells: pick(ells, ctx.g.ell, "ell")?,
                ms: pick(ms, ctx.g.m, "m")?,
                mode: match mode {
                    ModeArg::Exhaustive => SearchMode::Exhaustive,
                    ModeArg::Random => SearchMode::Random,
                },
                samples,
                seed: ctx.g.seed,
                exhaustive_cap: cap,
                budget: ctx.g.budget,
            }
        }
    };
    let records = search(&config, ctx.jobs())?;
    if ctx.g.format == Format::Csv {
        ctx.line("generator,lambda,ell,m,n,dim,d,self_orthogonal,qc_index")?;
    }
    for r in &records {
        let img = &r.image;
        let gen = r.generators.join(";");
        match ctx.g.format {
            Format::Text => ctx.line(format!(
                "[{},{},{}] {gen} lambda={} ell={} m={}",
                img.length,
                img.dimension,
                opt(img.min_distance),
                r.lambda,
                r.ell,
                r.m
            ))?,
            Format::Json => ctx.json(r)?,
            Format::Csv => ctx.row(&[
                gen.to_string(),
                r.lambda.to_string(),
                r.ell.to_string(),
                r.m.to_string(),
                img.length.to_string(),
                img.dimension.to_string(),
                opt(img.min_distance).to_string(),
                r.flags.self_orthogonal.to_string(),
                opt(r.flags.qc_index).to_string(),
            ])?,
        }
    }
    Ok(true)
}

fn bounds(ctx: &mut Ctx) -> Outcome {
    let codes = ctx.codes()?;
    let mut ok = true;
    if ctx.g.format == Format::Csv {
        ctx.line("generator,residue_d,d_hom,unit_residue_d,unit_counts,lower,upper,generator_upper,holds")?;
    }
    for (text, code) in codes {
        let r = bound_check(&code, ctx.g.budget)?;
        ok &= r.holds();
        match ctx.g.format {
            Format::Text => {
                ctx.line(format!(
                    "{text}: residue d = {}, d_hom = {}",
                    opt(r.residue_distance),
                    r.hom_distance
                ))?;
                let verdict = |holds: bool| if holds { "holds" } else { "FAILS" };
                match (r.lower, r.upper) {
                    (Some(l), Some(u)) => {
                        ctx.line(format!("  {l} <= d_hom: {}", verdict(r.lower_holds())))?;
                        ctx.line(format!("  d_hom <= {u}: {}", verdict(r.upper_holds())))?;
                        ctx.line(format!(
                            "  {l} <= {} (codewords with a unit coordinate): {}",
                            opt(r.unit_residue_distance),
                            verdict(r.unit_residue_lower_holds())
                        ))?;
                    }
                    _ => ctx.line("  residue bounds: vacuous")?,
                }
                if let Some(counts) = &r.unit_counts {
                    let list: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                    match r.generator_upper {
                        Some(u) => ctx.line(format!(
                            "  d_i = ({}), d_hom <= {u}: {}",
                            list.join(","),
                            verdict(r.generator_upper_holds())
                        ))?,
                        None => ctx.line(format!(
                            "  d_i = ({}), generator bound: vacuous",
                            list.join(",")
                        ))?,
                    }
                }
            }
            Format::Json => {
                ctx.json(&json!({ "generator": text, "report": r, "holds": r.holds() }))?
            }
            Format::Csv => {
                let counts = r.unit_counts.as_ref().map(|c| {
                    c.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                });
                ctx.row(&[
                    text.to_string(),
                    opt(r.residue_distance).to_string(),
                    r.hom_distance.to_string(),
                    opt(r.unit_residue_distance).to_string(),
                    opt(counts).to_string(),
                    opt(r.lower).to_string(),
                    opt(r.upper).to_string(),
                    opt(r.generator_upper).to_string(),
                    r.holds().to_string(),
                ])?;
            }
        }
    }
    Ok(ok)
}

fn run(cli: &Cli) -> Outcome {
    let mut ctx = Ctx {
        g: &cli.global,
        out: io::BufWriter::new(io::stdout().lock()),
    };
    let result = match &cli.command {
        Command::Eval { expr } => eval(&mut ctx, expr),
        Command::Gray { input, invert } => gray(&mut ctx, input.as_deref(), *invert),
        Command::Build => build(&mut ctx),
        Command::Image => image(&mut ctx),
        Command::Wd => wd(&mut ctx),
        Command::VerifyTables { tables, fixtures } => verify(&mut ctx, tables, fixtures.as_ref()),
        Command::Search {
            mode,
            samples,
            lambdas,
            ells,
            ms,
            cap,
            config,
        } => run_search(
            &mut ctx,
            *mode,
            *samples,
            lambdas,
            ells,
            ms,
            *cap,
            config.as_ref(),
        ),
        Command::Bounds => bounds(&mut ctx),
    };
    ctx.out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
