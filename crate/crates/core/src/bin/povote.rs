use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use povote::axioms::{check_many, Axiom, CheckConfig, Domain};
use povote::io::{
    check_report, classify_report, compute_report, enumerate_report, parse_ballots,
    parse_rule_spec, serialize_report,
};
use povote::preference::{enumerate_partial_orders, Universe};
use povote::scoring::{classify, is_positional, tabulate};

const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "povote",
    version,
    about = "Voting rules and axiom checks for partial-order preferences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Winners of a ballot file under a rule.
    Compute {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        ballots: PathBuf,
        /// Include per-alternative totals.
        #[arg(long)]
        scores: bool,
    },
    /// Check axioms exhaustively within bounds.
    Axioms {
        #[arg(long)]
        rule: String,
        /// Axiom id, or `all`.
        #[arg(long, default_value = "all")]
        axiom: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        max_voters: usize,
        #[arg(long, default_value = "all")]
        domain: String,
        #[arg(long)]
        kmax: Option<u64>,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Class membership of a scoring-based rule.
    Classify {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        m: usize,
    },
    /// List or count the strict partial orders on m alternatives.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        count_only: bool,
    },
}

fn usage(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match cli.command {
        Command::Compute {
            rule,
            ballots,
            scores,
        } => compute(&rule, &ballots, scores),
        Command::Axioms {
            rule,
            axiom,
            m,
            max_voters,
            domain,
            kmax,
            sequential,
        } => axioms(&rule, &axiom, m, max_voters, &domain, kmax, sequential),
        Command::Classify { rule, m } => classify_rule(&rule, m),
        Command::Enumerate { m, count_only } => enumerate(m, count_only),
    }
}

fn compute(spec: &str, path: &PathBuf, scores: bool) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage(format!("{}: {e}", path.display())),
    };
    let doc = match parse_ballots(&text) {
        Ok(d) => d,
        Err(e) => return usage(format!("{}: {e}", path.display())),
    };
    let rule = match parse_rule_spec(spec, &doc.universe) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let mut report = match compute_report(&doc.universe, rule.as_ref(), &doc.profile) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if !scores {
        if let Some(map) = report.as_object_mut() {
            map.remove("scores");
        }
    }
    print!("{}", serialize_report(&report));
    ExitCode::SUCCESS
}

fn axioms(
    spec: &str,
    axiom: &str,
    m: usize,
    max_voters: usize,
    domain: &str,
    kmax: Option<u64>,
    sequential: bool,
) -> ExitCode {
    let universe = Universe::standard(m);
    let rule = match parse_rule_spec(spec, &universe) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let selected: Vec<Axiom> = if axiom == "all" {
        Axiom::ALL.to_vec()
    } else {
        match axiom.parse() {
            Ok(a) => vec![a],
            Err(e) => return usage(e),
        }
    };
    let domain: Domain = match domain.parse() {
        Ok(d) => d,
        Err(e) => return usage(e),
    };
    let mut cfg = CheckConfig::new(m, max_voters).with_domain(domain);
    if sequential {
        cfg.parallel = false;
    }
    if let Some(k) = kmax {
        cfg.k_max = k;
    }
    if let Err(e) = cfg.validate() {
        return usage(e);
    }

    let report = check_many(rule.as_ref(), &selected, &cfg);
    print!(
        "{}",
        serialize_report(&check_report(&universe, &rule.name(), &report))
    );
    if !report.errors.is_empty() {
        for (a, e) in &report.errors {
            eprintln!("error: {a}: {e}");
        }
        return ExitCode::from(EXIT_USAGE);
    }
    if report.results.iter().any(|r| r.verdict.is_fail()) {
        ExitCode::from(EXIT_FAIL)
    } else if report.results.iter().all(|r| r.verdict.is_pass()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INCONCLUSIVE)
    }
}

fn classify_rule(spec: &str, m: usize) -> ExitCode {
    let universe = Universe::standard(m);
    let rule = match parse_rule_spec(spec, &universe) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let Some(s) = rule.scoring_function() else {
        return usage(format!("`{}` is not a scoring-based rule", rule.name()));
    };
    let table = match tabulate(s, m) {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    let positional = match is_positional(s, m) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    print!(
        "{}",
        serialize_report(&classify_report(
            &rule.name(),
            m,
            &classify(&table),
            positional
        ))
    );
    ExitCode::SUCCESS
}

fn enumerate(m: usize, count_only: bool) -> ExitCode {
    let orders = match enumerate_partial_orders(m) {
        Ok(o) => o,
        Err(e) => return usage(e),
    };
    print!(
        "{}",
        serialize_report(&enumerate_report(
            &Universe::standard(m),
            &orders,
            count_only
        ))
    );
    ExitCode::SUCCESS
}
