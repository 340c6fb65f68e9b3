use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use weyl_ellipsoid::diophantine::{expand_orbit, orbit_seeds_with};
use weyl_ellipsoid::order::{
    bruhat_from_graded_links, bruhat_from_primary, bruhat_from_subwords, emit_dot, primary_poset,
    reduced_words,
};
use weyl_ellipsoid::verify::{verify, VerifyOptions};
use weyl_ellipsoid::weyl::word_to_element;
use weyl_ellipsoid::{
    build_cartan, build_group_table, coxeter_length, p_map, parse_type, primary_form, s_map,
    secondary_form, CartanData, Error, Poset, DEFAULT_EXPAND_CAP, DEFAULT_GROUP_CAP,
};

mod json;

#[derive(Parser, Debug)]
#[command(name = "weyl-ellipsoid", version, about = "Weyl groups realized on integral points of ellipsoids")]
struct Cli {
    /// Override the enumeration/expansion cap (number of elements).
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Worker threads for the secondary-solution search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, Cartan matrix, weights, delta, det A and |W|.
    Info {
        type_string: String,
        #[arg(long)]
        json: bool,
    },
    /// Integer equation of the primary ellipsoid.
    PrimaryEq {
        type_string: String,
        #[arg(long)]
        json: bool,
    },
    /// Integer equation of the secondary ellipsoid, scaled by det A.
    SecondaryEq {
        type_string: String,
        #[arg(long)]
        json: bool,
    },
    /// Orbits of integral primary points with their minimal vectors and sizes.
    Orbits {
        type_string: String,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        /// Also list the elements of every orbit.
        #[arg(long, conflicts_with = "csv")]
        expand: bool,
    },
    /// Expand the orbit of one primary point.
    Expand {
        type_string: String,
        #[arg(long, value_name = "a,b,c")]
        vector: String,
        #[arg(long)]
        json: bool,
    },
    /// Matrix, P-vector, S-vector and length of a word.
    Realize {
        type_string: String,
        #[arg(long, value_name = "1,2,1", allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// All reduced expressions of an element.
    ReducedWords {
        type_string: String,
        #[arg(long, value_name = "1,2,1", conflicts_with = "pvector")]
        word: Option<String>,
        #[arg(long, value_name = "a,b,c")]
        pvector: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Bruhat order (or the primary order) as a cover poset.
    Bruhat {
        type_string: String,
        #[arg(long, value_enum, default_value_t = Method::Subword)]
        method: Method,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the invariant checks affordable for the type.
    Verify { type_string: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Filter primary covers by positive-root differences.
    Primary,
    /// Subexpressions of reduced words.
    Subword,
    /// Compare `primary` with `subword`.
    Both,
    /// Filter links between comparable elements of consecutive length.
    Graded,
    /// The componentwise order itself.
    Componentwise,
}

enum Failure {
    Usage(String),
    Compute(String),
    Divergence(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownFamily(_)
            | Error::RankOutOfRange(_)
            | Error::DimensionMismatch { .. }
            | Error::IndexOutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn load(type_string: &str) -> Result<CartanData, Failure> {
    Ok(build_cartan(&parse_type(type_string)?))
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, Failure> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("cannot parse {t:?} in {text:?}")))
        })
        .collect()
}

fn vec_text(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn csv_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    parts.join(",")
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn info(type_string: &str, as_json: bool) -> Outcome {
    let cd = load(type_string)?;
    if as_json {
        return Ok(pretty(&json::cartan(&cd)));
    }
    let mut out = String::new();
    writeln!(out, "type: {}", cd.spec).unwrap();
    writeln!(out, "rank: {}", cd.n).unwrap();
    writeln!(out, "cartan:").unwrap();
    for row in &cd.cartan {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
        writeln!(out, "  {}", cells.join(" ")).unwrap();
    }
    let weights: Vec<String> = cd.weights.iter().map(i64::to_string).collect();
    writeln!(out, "weights: {}", weights.join(" ")).unwrap();
    let delta: Vec<String> = cd.delta.iter().map(ToString::to_string).collect();
    writeln!(out, "delta: {}", delta.join(" ")).unwrap();
    writeln!(out, "det: {}", cd.det).unwrap();
    writeln!(out, "weyl_order: {}", cd.weyl_order()).unwrap();
    Ok(out)
}

fn equation(type_string: &str, as_json: bool, secondary: bool) -> Outcome {
    let cd = load(type_string)?;
    let (form, var) = if secondary {
        (secondary_form(&cd), "h")
    } else {
        (primary_form(&cd), "x")
    };
    let text = form.equation_text(var);
    if as_json {
        Ok(pretty(&json::quad_form(&form, &text)))
    } else {
        Ok(format!("{text}\n"))
    }
}

fn orbits(type_string: &str, as_json: bool, csv: bool, expand: bool, cap: u64, threads: usize) -> Outcome {
    let cd = load(type_string)?;
    let mut records = orbit_seeds_with(&cd, threads);
    if expand {
        for r in &mut records {
            r.elements = Some(expand_orbit(&r.minimal, &cd, cap)?);
        }
    }
    if as_json {
        return Ok(pretty(&json::orbits(&cd.spec.to_string(), &records)));
    }
    let mut out = String::new();
    if csv {
        out.push_str("h;minimal;size\n");
        for r in &records {
            writeln!(out, "{};{};{}", csv_vec(&r.h), csv_vec(&r.minimal), r.size).unwrap();
        }
        return Ok(out);
    }
    writeln!(out, "{} orbits", records.len()).unwrap();
    for r in &records {
        writeln!(out, "h={} minimal={} size={}", vec_text(&r.h), vec_text(&r.minimal), r.size).unwrap();
        for e in r.elements.iter().flatten() {
            writeln!(out, "  {}", vec_text(e)).unwrap();
        }
    }
    Ok(out)
}

fn expand(type_string: &str, vector: &str, as_json: bool, cap: u64) -> Outcome {
    let cd = load(type_string)?;
    let start: Vec<i64> = parse_list(vector)?;
    if start.len() != cd.n {
        return Err(Failure::Usage(format!("vector must have {} entries", cd.n)));
    }
    let elements = expand_orbit(&start, &cd, cap)?;
    if as_json {
        return Ok(pretty(&serde_json::json!({
            "type": cd.spec.to_string(),
            "start": start,
            "elements": elements,
        })));
    }
    Ok(elements.iter().map(|e| vec_text(e) + "\n").collect())
}

fn realize(type_string: &str, word: &str, as_json: bool) -> Outcome {
    let cd = load(type_string)?;
    let word: Vec<usize> = parse_list(word)?;
    let w = word_to_element(&word, &cd)?;
    let p = p_map(&w, &cd);
    let s = s_map(&w, &cd);
    let length = coxeter_length(&w, &cd);
    if as_json {
        return Ok(pretty(&serde_json::json!({
            "type": cd.spec.to_string(),
            "word": word,
            "matrix": w.mat,
            "p": p,
            "s": s,
            "length": length,
        })));
    }
    let mut out = String::new();
    writeln!(out, "matrix:").unwrap();
    for row in &w.mat {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
        writeln!(out, "  {}", cells.join(" ")).unwrap();
    }
    writeln!(out, "P: {}", vec_text(&p)).unwrap();
    writeln!(out, "S: {}", vec_text(&s)).unwrap();
    writeln!(out, "length: {length}").unwrap();
    Ok(out)
}

fn reduced(type_string: &str, word: Option<&str>, pvector: Option<&str>, as_json: bool, cap: u64) -> Outcome {
    let cd = load(type_string)?;
    let w = match (word, pvector) {
        (Some(word), None) => word_to_element(&parse_list::<usize>(word)?, &cd)?,
        (None, Some(p)) => {
            let p: Vec<i64> = parse_list(p)?;
            let table = build_group_table(&cd, cap)?;
            table.lookup(&p)?.element.clone()
        }
        _ => return Err(Failure::Usage("exactly one of --word or --pvector is required".into())),
    };
    let set = reduced_words(&w, &cd);
    if as_json {
        return Ok(pretty(&serde_json::json!({
            "element": set.element,
            "length": set.length,
            "count": set.words.len(),
            "words": set.words,
        })));
    }
    let mut out = String::new();
    writeln!(out, "element: {}", vec_text(&set.element)).unwrap();
    writeln!(out, "length: {}", set.length).unwrap();
    writeln!(out, "count: {}", set.words.len()).unwrap();
    for word in &set.words {
        let letters: Vec<String> = word.iter().map(usize::to_string).collect();
        writeln!(out, "{}", letters.join(",")).unwrap();
    }
    Ok(out)
}

fn poset_text(p: &Poset) -> String {
    let mut out = String::new();
    writeln!(out, "kind: {}", p.kind.as_str()).unwrap();
    writeln!(out, "nodes: {}", p.nodes.len()).unwrap();
    writeln!(out, "covers: {}", p.covers.len()).unwrap();
    for (a, b) in p.edge_vectors() {
        writeln!(out, "{} -> {}", vec_text(&a), vec_text(&b)).unwrap();
    }
    out
}

fn bruhat(type_string: &str, method: Method, dot: Option<&PathBuf>, as_json: bool, cap: u64) -> Outcome {
    let cd = load(type_string)?;
    let table = build_group_table(&cd, cap)?;
    let roots = cd.positive_roots();
    let poset = match method {
        Method::Primary => bruhat_from_primary(&table, &roots),
        Method::Subword => bruhat_from_subwords(&table),
        Method::Graded => bruhat_from_graded_links(&table, &roots),
        Method::Componentwise => primary_poset(&table),
        Method::Both => {
            let filtered = bruhat_from_primary(&table, &roots);
            let subword = bruhat_from_subwords(&table);
            if filtered.covers != subword.covers || !filtered.same_order_as(&subword) {
                let mut msg = format!(
                    "methods disagree: primary-filtered has {} covers, subword has {}",
                    filtered.covers.len(),
                    subword.covers.len()
                );
                for (a, b) in subword.pairs_missing_from(&filtered) {
                    write!(msg, "\n  only in subword: {} < {}", vec_text(&a), vec_text(&b)).unwrap();
                }
                for (a, b) in filtered.pairs_missing_from(&subword) {
                    write!(msg, "\n  only in primary-filtered: {} < {}", vec_text(&a), vec_text(&b)).unwrap();
                }
                return Err(Failure::Divergence(msg));
            }
            subword
        }
    };
    if let Some(path) = dot {
        fs::write(path, emit_dot(&poset))
            .map_err(|e| Failure::Compute(format!("cannot write {}: {e}", path.display())))?;
    }
    if as_json {
        Ok(pretty(&json::poset(&poset)))
    } else {
        Ok(poset_text(&poset))
    }
}

fn run_verify(type_string: &str, cap: Option<u64>) -> Outcome {
    let cd = load(type_string)?;
    let mut opts = VerifyOptions::default();
    if let Some(cap) = cap {
        opts.expand_cap = cap;
        opts.group_cap = cap;
    }
    let checks = verify(&cd, &opts);
    let mut out = String::new();
    let mut failed = 0;
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!c.passed);
        if c.detail.is_empty() {
            writeln!(out, "{status}  {}", c.name).unwrap();
        } else {
            writeln!(out, "{status}  {}  [{}]", c.name, c.detail).unwrap();
        }
    }
    writeln!(out, "{} checks, {} failed", checks.len(), failed).unwrap();
    print!("{out}");
    if failed > 0 {
        Err(Failure::Divergence(format!("{failed} verification checks failed")))
    } else {
        Ok(String::new())
    }
}

fn run(cli: Cli) -> Outcome {
    let expand_cap = cli.cap.unwrap_or(DEFAULT_EXPAND_CAP);
    let group_cap = cli.cap.unwrap_or(DEFAULT_GROUP_CAP);
    match &cli.command {
        Command::Info { type_string, json } => info(type_string, *json),
        Command::PrimaryEq { type_string, json } => equation(type_string, *json, false),
        Command::SecondaryEq { type_string, json } => equation(type_string, *json, true),
        Command::Orbits {
            type_string,
            json,
            csv,
            expand,
        } => orbits(type_string, *json, *csv, *expand, expand_cap, cli.threads.max(1)),
        Command::Expand {
            type_string,
            vector,
            json,
        } => expand(type_string, vector, *json, expand_cap),
        Command::Realize {
            type_string,
            word,
            json,
        } => realize(type_string, word, *json),
        Command::ReducedWords {
            type_string,
            word,
            pvector,
            json,
        } => reduced(type_string, word.as_deref(), pvector.as_deref(), *json, group_cap),
        Command::Bruhat {
            type_string,
            method,
            dot,
            json,
        } => bruhat(type_string, *method, dot.as_ref(), *json, group_cap),
        Command::Verify { type_string } => run_verify(type_string, cli.cap),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Divergence(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}
