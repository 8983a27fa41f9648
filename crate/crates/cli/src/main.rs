//! deckrank: decks, cover-count matrices and rank certificates from the
//! command line. Every command prints a machine-readable report; exit codes
//! distinguish verification failures from usage, I/O, input and budget
//! problems.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use deckrank_core::certify::{
    build_k_matrix, build_matrix, certify, verify_theorem1, verify_theorem2, CertifyOptions,
    FamilySpec, SearchBudget,
};
use deckrank_core::covers::{
    cover_count, kocay_sum, nonoverlapping_cover_count, subgraph_count, verify_eq1,
    verify_recurrence, GraphSequence,
};
use deckrank_core::enumerate::{enumerate_classes, ClassSpec, Predicate};
use deckrank_core::error::Error;
use deckrank_core::exec::with_jobs;
use deckrank_core::g6;
use deckrank_core::graph::{Graph, Kind};
use deckrank_core::recon::{census, deck, is_legitimate_deck, kelly_check, partition_by_deck};
use deckrank_core::DEFAULT_SEED;

const EXIT_VERIFY: u8 = 1;
const EXIT_IO: u8 = 3;
const EXIT_INPUT: u8 = 4;
const EXIT_BUDGET: u8 = 5;

struct Failure {
    code: u8,
    message: String,
}

type CliResult = Result<(), Failure>;

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::TooManyVertices { .. } | Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::OrderViolation(_) => EXIT_VERIFY,
            _ => EXIT_INPUT,
        };
        fail(code, e.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> CliResult {
    std::fs::write(path, contents)
        .map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum KindArg {
    /// Undirected (graph6 tokens)
    Graph,
    /// Directed without loops (digraph6 tokens)
    Digraph,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Graph => Kind::Undirected,
            KindArg::Digraph => Kind::Directed,
        }
    }
}

#[derive(Clone, Copy, Debug, Args)]
struct ClassArgs {
    /// Graph kind
    #[arg(long, value_enum, default_value_t = KindArg::Graph)]
    kind: KindArg,
    /// Number of vertices
    #[arg(long)]
    n: usize,
    /// Restrict the class to connected graphs
    #[arg(long)]
    connected: bool,
    /// Allow the expensive enumeration sizes
    #[arg(long)]
    slow: bool,
}

impl ClassArgs {
    fn spec(&self) -> ClassSpec {
        let predicate = if self.connected {
            Predicate::Connected
        } else {
            Predicate::All
        };
        ClassSpec::new(self.kind.into(), self.n, predicate)
    }
}

#[derive(Parser, Debug)]
#[command(name = "deckrank", version, about = "Deck partitions, cover-count matrices and exact rank certificates for small graphs")]
struct Cli {
    /// Worker threads for the parallel phases (default: one per core)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the canonical class representatives, one token per line
    Enum(ClassArgs),
    /// Print each input graph with its deck as comma-joined card tokens
    Decks {
        /// graph6/digraph6 tokens
        #[arg(required_unless_present = "input")]
        graphs: Vec<String>,
        /// Read tokens from a file instead, one per line
        #[arg(long, conflicts_with = "graphs")]
        input: Option<PathBuf>,
    },
    /// Isomorphism classes, distinct decks and their difference for a class
    Census(ClassArgs),
    /// Exact counts as decimal strings, one JSON line per target
    #[command(subcommand)]
    Count(CountCmd),
    /// Cover-count matrix of a sequence family against a class
    Matrix(MatrixArgs),
    /// Rank of the family's cover-count matrix
    Rank(MatrixArgs),
    /// Enumerate, partition, search for a full-rank family and verify
    Certify(CertifyArgs),
    /// Identity and theorem checks; nonzero exit on any violation
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Decide whether the given cards form the deck of some graph
    LegitDeck {
        /// The cards, comma separated graph6/digraph6 tokens
        #[arg(long)]
        cards: String,
        /// Allow the expensive enumeration sizes
        #[arg(long)]
        slow: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CountCmd {
    /// s(f, g): subgraphs of g isomorphic to f
    S {
        #[arg(long)]
        f: String,
        /// Target graphs, one JSON line each
        #[arg(long, num_args = 1.., required = true)]
        g: Vec<String>,
    },
    /// c(seq, g): ordered tuples of embedded copies covering g
    C {
        /// Comma separated tokens
        #[arg(long)]
        seq: String,
        #[arg(long, num_args = 1.., required = true)]
        g: Vec<String>,
    },
    /// c*(seq, g): covers with pairwise distinct vertex sets
    Cstar {
        #[arg(long)]
        seq: String,
        #[arg(long, num_args = 1.., required = true)]
        g: Vec<String>,
    },
    /// Sum of c(seq, H) s(H, g) over the full class of v(g)-vertex graphs
    KocaySum {
        #[arg(long)]
        seq: String,
        #[arg(long, num_args = 1.., required = true)]
        g: Vec<String>,
        #[arg(long)]
        slow: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum MatrixFormat {
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[command(flatten)]
    class: ClassArgs,
    /// Family file: one sequence per line, comma separated tokens
    #[arg(long)]
    family: PathBuf,
    /// Output layout (matrix command only)
    #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
    format: MatrixFormat,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    class: ClassArgs,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random families for the rank-bound check
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Longest candidate sequence drawn from the subgraph pool
    #[arg(long, default_value_t = 3)]
    max_len: usize,
    /// Do not append deck sequences to the candidates
    #[arg(long)]
    no_deck_sequences: bool,
    /// Shuffle candidates with the seed instead of sorted order
    #[arg(long)]
    shuffle: bool,
    /// Cap on candidates examined by the search
    #[arg(long)]
    max_candidates: Option<usize>,
    /// Include elapsed times in the report (breaks byte-identical output)
    #[arg(long)]
    timings: bool,
    /// Write the accepted family's matrix as CSV
    #[arg(long)]
    emit_matrix: Option<PathBuf>,
    /// Write the deck-sequence matrix K as CSV
    #[arg(long)]
    emit_k: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Product identity: all hosts on <= n vertices against sequence grids
    Eq1 {
        #[command(flatten)]
        class: ClassArgs,
        /// Run the full grid of multisets over classes on < n vertices
        #[arg(long, conflicts_with = "trials")]
        exhaustive: bool,
        /// Random instances instead of the grid
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Longest sequence in the grid or sample
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Cover-count recurrence on sequences of (n-1)-vertex graphs
    Recurrence {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, conflicts_with = "trials")]
        exhaustive: bool,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Rank bound, Kocay constancy and kernel witnesses on random families
    Theorem1 {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Deck-sequence matrix: triangular, positive diagonal, full rank
    Theorem2 {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Subgraph counts agree across every deck-equal pair of the class
    Kelly {
        #[command(flatten)]
        class: ClassArgs,
    },
}

fn decode_token(tok: &str) -> Result<Graph, Failure> {
    g6::decode(tok).map_err(Failure::from)
}

fn parse_sequence(text: &str) -> Result<GraphSequence, Failure> {
    let items = text
        .split(',')
        .map(|tok| g6::decode(tok.trim()))
        .collect::<Result<Vec<Graph>, Error>>()?;
    GraphSequence::new(items).map_err(Failure::from)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn cmd_enum(class: &ClassArgs) -> CliResult {
    for g in enumerate_classes(&class.spec(), class.slow)? {
        println!("{}", g6::encode(&g));
    }
    Ok(())
}

fn cmd_decks(graphs: &[String], input: Option<&PathBuf>) -> CliResult {
    let mut tokens: Vec<String> = graphs.to_vec();
    if let Some(path) = input {
        tokens = read_file(path)?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect();
    }
    if tokens.is_empty() {
        return Err(fail(EXIT_INPUT, "no graphs to take decks of"));
    }
    for tok in &tokens {
        let g = decode_token(tok)?;
        if g.n() == 0 {
            return Err(fail(EXIT_INPUT, "decks need at least one vertex"));
        }
        let cards: Vec<String> = deck(&g)
            .cards()
            .iter()
            .map(|k| g6::encode(&k.to_graph()))
            .collect();
        println!("{tok}\t{}", cards.join(","));
    }
    Ok(())
}

fn cmd_census(class: &ClassArgs) -> CliResult {
    let report = census(&class.spec(), class.slow)?;
    print_json(&report);
    Ok(())
}

#[derive(Serialize)]
struct CountLine<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    f: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seq: Option<&'a str>,
    g: &'a str,
    #[serde(rename = "value")]
    value: String,
    kind: &'static str,
}

fn cmd_count(cmd: &CountCmd) -> CliResult {
    match cmd {
        CountCmd::S { f, g } => {
            let fg = decode_token(f)?;
            for tok in g {
                let host = decode_token(tok)?;
                let value = subgraph_count(&fg, &host)?;
                print_json(&CountLine {
                    f: Some(f),
                    seq: None,
                    g: tok,
                    value: value.to_string(),
                    kind: "s",
                });
            }
        }
        CountCmd::C { seq, g } | CountCmd::Cstar { seq, g } => {
            let star = matches!(cmd, CountCmd::Cstar { .. });
            let sequence = parse_sequence(seq)?;
            for tok in g {
                let host = decode_token(tok)?;
                let value = if star {
                    nonoverlapping_cover_count(&sequence, &host)?
                } else {
                    cover_count(&sequence, &host)?
                };
                print_json(&CountLine {
                    f: None,
                    seq: Some(seq),
                    g: tok,
                    value: value.to_string(),
                    kind: if star { "cstar" } else { "c" },
                });
            }
        }
        CountCmd::KocaySum { seq, g, slow } => {
            let sequence = parse_sequence(seq)?;
            for tok in g {
                let host = decode_token(tok)?;
                let spec = ClassSpec::new(host.kind(), host.n(), Predicate::All);
                let reps = enumerate_classes(&spec, *slow)?;
                let value = kocay_sum(&sequence, &host, &reps)?;
                print_json(&CountLine {
                    f: None,
                    seq: Some(seq),
                    g: tok,
                    value: value.to_string(),
                    kind: "kocay-sum",
                });
            }
        }
    }
    Ok(())
}

fn load_family_matrix(args: &MatrixArgs) -> Result<deckrank_core::linalg::ExactMatrix, Failure> {
    let family = FamilySpec::from_lines(&read_file(&args.family)?)?;
    let reps = enumerate_classes(&args.class.spec(), args.class.slow)?;
    build_matrix(&family, &reps).map_err(Failure::from)
}

fn cmd_matrix(args: &MatrixArgs) -> CliResult {
    let m = load_family_matrix(args)?;
    match args.format {
        MatrixFormat::Csv => print!("{}", m.to_csv()),
        MatrixFormat::Text => print!("{}", m.to_text()),
    }
    Ok(())
}

#[derive(Serialize)]
struct RankReport {
    rows: usize,
    cols: usize,
    rank: usize,
}

fn cmd_rank(args: &MatrixArgs) -> CliResult {
    let m = load_family_matrix(args)?;
    print_json(&RankReport {
        rows: m.rows(),
        cols: m.cols(),
        rank: m.rank(),
    });
    Ok(())
}

fn cmd_certify(args: &CertifyArgs) -> CliResult {
    let spec = args.class.spec();
    let options = CertifyOptions {
        budget: SearchBudget {
            max_len: args.max_len,
            include_deck_sequences: !args.no_deck_sequences,
            shuffle: args.shuffle,
            max_candidates: args.max_candidates,
        },
        trials: args.trials,
        seed: args.seed,
        slow: args.class.slow,
        timings: args.timings,
    };
    let report = certify(&spec, &options)?;
    if args.emit_matrix.is_some() || args.emit_k.is_some() {
        let reps = enumerate_classes(&spec, args.class.slow)?;
        if let Some(path) = &args.emit_matrix {
            let m = build_matrix(&report.search.family_spec, &reps)?;
            write_file(path, &m.to_csv())?;
        }
        if let Some(path) = &args.emit_k {
            let partition = partition_by_deck(&reps)?;
            let (k, _) = build_k_matrix(&partition)?;
            write_file(path, &k.to_csv())?;
        }
    }
    print_json(&report);
    if report.ok {
        Ok(())
    } else {
        Err(fail(EXIT_VERIFY, "certification checks failed"))
    }
}

#[derive(Serialize)]
struct GridReport {
    kind: &'static str,
    n: usize,
    mode: &'static str,
    max_len: usize,
    cases: usize,
    failures: usize,
    ok: bool,
}

fn finish_grid(report: GridReport) -> CliResult {
    let ok = report.ok;
    let cases = report.cases;
    print_json(&report);
    if cases == 0 {
        return Err(fail(EXIT_VERIFY, "no cases checked"));
    }
    if ok {
        Ok(())
    } else {
        Err(fail(EXIT_VERIFY, "identity violated"))
    }
}

/// Multisets of up to `max_len` items (always including the empty sequence)
/// over a pool, in lexicographic index order.
fn multisets(pool_len: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut i = 0;
    while i < out.len() {
        if out[i].len() < max_len {
            let lo = out[i].last().copied().unwrap_or(0);
            for next in lo..pool_len {
                let mut ext = out[i].clone();
                ext.push(next);
                out.push(ext);
            }
        }
        i += 1;
    }
    out.sort_by_key(|m| (m.len(), m.clone()));
    out
}

fn cmd_verify_eq1(
    class: &ClassArgs,
    exhaustive: bool,
    trials: Option<usize>,
    seed: u64,
    max_len: usize,
) -> CliResult {
    let spec = class.spec();
    let kind: Kind = class.kind.into();
    let mut pool: Vec<Graph> = Vec::new();
    for t in 1..spec.n {
        pool.extend(enumerate_classes(
            &ClassSpec::new(kind, t, Predicate::All),
            class.slow,
        )?);
    }
    let mut cases = 0usize;
    let mut failures = 0usize;
    let mode;
    if let Some(trials) = trials {
        mode = "random";
        let hosts = enumerate_classes(&spec, class.slow)?;
        if hosts.is_empty() || pool.is_empty() {
            return Err(fail(EXIT_INPUT, "nothing to sample from"));
        }
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let host = hosts[rng.random_range(0..hosts.len())];
            let len = rng.random_range(1..=max_len);
            let items: Vec<Graph> = (0..len)
                .map(|_| pool[rng.random_range(0..pool.len())])
                .collect();
            let seq = GraphSequence::new(items)?;
            cases += 1;
            if !verify_eq1(&seq, &host)? {
                failures += 1;
            }
        }
    } else if exhaustive {
        mode = "exhaustive";
        let mut hosts: Vec<Graph> = Vec::new();
        for t in 1..=spec.n {
            hosts.extend(enumerate_classes(
                &ClassSpec::new(kind, t, spec.predicate),
                class.slow,
            )?);
        }
        for indices in multisets(pool.len(), max_len) {
            let seq = GraphSequence::new(indices.iter().map(|&i| pool[i]).collect())?;
            for host in &hosts {
                cases += 1;
                if !verify_eq1(&seq, host)? {
                    failures += 1;
                }
            }
        }
    } else {
        return Err(fail(EXIT_INPUT, "pass --exhaustive or --trials N"));
    }
    finish_grid(GridReport {
        kind: kind.name(),
        n: spec.n,
        mode,
        max_len,
        cases,
        failures,
        ok: failures == 0,
    })
}

fn cmd_verify_recurrence(
    class: &ClassArgs,
    exhaustive: bool,
    trials: Option<usize>,
    seed: u64,
    max_len: usize,
) -> CliResult {
    let spec = class.spec();
    let kind: Kind = class.kind.into();
    if spec.n < 2 {
        return Err(fail(EXIT_INPUT, "the recurrence needs at least 2 vertices"));
    }
    let pool = enumerate_classes(&ClassSpec::new(kind, spec.n - 1, Predicate::All), class.slow)?;
    let hosts = enumerate_classes(&spec, class.slow)?;
    let top = max_len.min(spec.n);
    if top < 2 {
        return Err(fail(EXIT_INPUT, "max-len must be at least 2"));
    }
    let mut cases = 0usize;
    let mut failures = 0usize;
    let mode;
    if let Some(trials) = trials {
        mode = "random";
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let host = hosts[rng.random_range(0..hosts.len())];
            let len = rng.random_range(2..=top);
            let items: Vec<Graph> = (0..len)
                .map(|_| pool[rng.random_range(0..pool.len())])
                .collect();
            cases += 1;
            if !verify_recurrence(&GraphSequence::new(items)?, &host)? {
                failures += 1;
            }
        }
    } else if exhaustive {
        mode = "exhaustive";
        for indices in multisets(pool.len(), top) {
            if indices.len() < 2 {
                continue;
            }
            let seq = GraphSequence::new(indices.iter().map(|&i| pool[i]).collect())?;
            for host in &hosts {
                cases += 1;
                if !verify_recurrence(&seq, host)? {
                    failures += 1;
                }
            }
        }
    } else {
        return Err(fail(EXIT_INPUT, "pass --exhaustive or --trials N"));
    }
    finish_grid(GridReport {
        kind: kind.name(),
        n: spec.n,
        mode,
        max_len: top,
        cases,
        failures,
        ok: failures == 0,
    })
}

#[derive(Serialize)]
struct KellyReport {
    kind: &'static str,
    n: usize,
    classes: usize,
    deck_equal_pairs: usize,
    checks: usize,
    failures: usize,
    ok: bool,
}

fn cmd_verify_kelly(class: &ClassArgs) -> CliResult {
    let spec = class.spec();
    let kind: Kind = class.kind.into();
    let reps = enumerate_classes(&spec, class.slow)?;
    let partition = partition_by_deck(&reps)?;
    let mut fs: Vec<Graph> = Vec::new();
    for t in 1..spec.n {
        fs.extend(enumerate_classes(
            &ClassSpec::new(kind, t, Predicate::All),
            class.slow,
        )?);
    }
    let mut pairs = 0usize;
    let mut checks = 0usize;
    let mut failures = 0usize;
    for cls in &partition.classes {
        for i in 0..cls.members.len() {
            for j in i + 1..cls.members.len() {
                pairs += 1;
                let a = cls.members[i].to_graph();
                let b = cls.members[j].to_graph();
                for f in &fs {
                    checks += 1;
                    if !kelly_check(f, &a, &b)? {
                        failures += 1;
                    }
                }
            }
        }
    }
    let report = KellyReport {
        kind: kind.name(),
        n: spec.n,
        classes: partition.class_count(),
        deck_equal_pairs: pairs,
        checks,
        failures,
        ok: checks > 0 && failures == 0,
    };
    let ok = report.ok;
    let vacuous = checks == 0;
    print_json(&report);
    if vacuous {
        return Err(fail(EXIT_VERIFY, "no deck-equal pairs to check"));
    }
    if ok {
        Ok(())
    } else {
        Err(fail(EXIT_VERIFY, "subgraph counts differ on a deck-equal pair"))
    }
}

fn cmd_verify(cmd: &VerifyCmd) -> CliResult {
    match cmd {
        VerifyCmd::Eq1 {
            class,
            exhaustive,
            trials,
            seed,
            max_len,
        } => cmd_verify_eq1(class, *exhaustive, *trials, *seed, *max_len),
        VerifyCmd::Recurrence {
            class,
            exhaustive,
            trials,
            seed,
            max_len,
        } => cmd_verify_recurrence(class, *exhaustive, *trials, *seed, *max_len),
        VerifyCmd::Theorem1 {
            class,
            trials,
            seed,
        } => {
            let reps = enumerate_classes(&class.spec(), class.slow)?;
            let partition = partition_by_deck(&reps)?;
            let report = verify_theorem1(&partition, *trials, *seed)?;
            let ok = report.ok;
            print_json(&report);
            if ok {
                Ok(())
            } else {
                Err(fail(EXIT_VERIFY, "rank bound or invariance violated"))
            }
        }
        VerifyCmd::Theorem2 { class } => {
            let reps = enumerate_classes(&class.spec(), class.slow)?;
            let partition = partition_by_deck(&reps)?;
            let report = verify_theorem2(&partition)?;
            let ok = report.ok;
            print_json(&report);
            if ok {
                Ok(())
            } else {
                Err(fail(EXIT_VERIFY, "deck-sequence matrix checks failed"))
            }
        }
        VerifyCmd::Kelly { class } => cmd_verify_kelly(class),
    }
}

#[derive(Serialize)]
struct LegitReport {
    cards: usize,
    legitimate: bool,
    reconstruction: Option<String>,
}

fn cmd_legit_deck(cards: &str, slow: bool) -> CliResult {
    let cards = cards
        .split(',')
        .map(|tok| g6::decode(tok.trim()))
        .collect::<Result<Vec<Graph>, Error>>()?;
    let first = cards
        .first()
        .ok_or_else(|| fail(EXIT_INPUT, "no cards given"))?;
    let spec = ClassSpec::new(first.kind(), cards.len(), Predicate::All);
    let found = is_legitimate_deck(&cards, &spec, slow)?;
    let report = LegitReport {
        cards: cards.len(),
        legitimate: found.is_some(),
        reconstruction: found.map(|g| g6::encode(&g)),
    };
    let ok = report.legitimate;
    print_json(&report);
    if ok {
        Ok(())
    } else {
        Err(fail(EXIT_VERIFY, "no graph has this deck"))
    }
}

fn execute(command: &Command) -> CliResult {
    match command {
        Command::Enum(class) => cmd_enum(class),
        Command::Decks { graphs, input } => cmd_decks(graphs, input.as_ref()),
        Command::Census(class) => cmd_census(class),
        Command::Count(cmd) => cmd_count(cmd),
        Command::Matrix(args) => cmd_matrix(args),
        Command::Rank(args) => cmd_rank(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Verify(cmd) => cmd_verify(cmd),
        Command::LegitDeck { cards, slow } => cmd_legit_deck(cards, *slow),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = with_jobs(cli.jobs, || execute(&cli.command));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": message, "code": code })
            );
            ExitCode::from(code)
        }
    }
}
