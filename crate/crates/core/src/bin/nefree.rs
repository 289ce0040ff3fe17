use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nefree::classify::{canonical_chain_antichain_form, classify, sibling_report};
use nefree::construct::{cf_linear_window, cf_window, family_pairwise_noniso, gen_named, BitPattern, TruncationWindow};
use nefree::decomposition::{decomposition_tree, set_module_cap};
use nefree::embedding::{find_embedding, find_isomorphism, set_search_cap, Embedding};
use nefree::expr::Expr;
use nefree::io::{format_poset_file, resolve_poset};
use nefree::{Error, Poset, Result};

/// Environment variable raising the size caps of the brute-force oracles.
const CAP_VAR: &str = "NEFREE_SIZE_CAP";

/// N-free posets, cographs and their substitution structure.
///
/// Wherever a poset is expected, pass `gen:<name>`, `expr:<text>`, a poset
/// file, or bare expression text such as `lin(a(2),c(1))`.
#[derive(Parser)]
#[command(name = "nefree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print boolean properties; exit 1 if any is false.
    Check {
        poset: String,
        #[command(flatten)]
        which: CheckFlags,
    },
    /// Print the decomposition tree.
    Decompose {
        poset: String,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Direct sum, linear sum or singleton.
    Classify {
        poset: String,
        #[arg(long)]
        json: bool,
    },
    /// Induced embedding of A into B; exit 1 if none.
    Embed { a: String, b: String },
    /// Isomorphism of A and B; exit 1 if none.
    Iso { a: String, b: String },
    /// Print a named poset (n, chain(k), antichain(k), A(k), B(k)) as a poset file.
    Gen { name: String },
    /// Canonical chain/antichain expression.
    Canon { poset: String },
    /// Sibling report as JSON.
    Siblings { poset: String },
    /// Window-sums of a family of bit patterns, compared pairwise.
    Family {
        /// Labelled sum `q[...](...)`, optionally followed by `anchors:<k>`.
        #[arg(long)]
        base: String,
        /// Comma-separated bit patterns, e.g. `00,01,10`.
        #[arg(long, value_delimiter = ',', required = true)]
        bits: Vec<String>,
        /// Use the linear-regime construction.
        #[arg(long)]
        linear: bool,
        /// Labelled sum every window-sum should embed into.
        #[arg(long)]
        host: Option<String>,
    },
}

#[derive(Args)]
struct CheckFlags {
    #[arg(long)]
    nfree: bool,
    #[arg(long)]
    cograph: bool,
    #[arg(long)]
    ccgc: bool,
    #[arg(long)]
    connected: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::Size { .. } => 3,
        _ => 4,
    }
}

fn verdict(ok: bool) -> ExitCode {
    ExitCode::from(if ok { 0 } else { 1 })
}

fn show_map(e: &Embedding) -> String {
    e.map.iter().enumerate().map(|(x, y)| format!("{x}->{y}")).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { poset, which } => {
            let p = resolve_poset(&poset)?;
            let all: [(&str, bool, fn(&Poset) -> bool); 4] = [
                ("nfree", which.nfree, Poset::is_nfree),
                ("cograph", which.cograph, |p| p.comparability_graph().is_cograph()),
                ("ccgc", which.ccgc, Poset::has_ccgc),
                ("connected", which.connected, Poset::is_connected),
            ];
            let any = all.iter().any(|(_, on, _)| *on);
            let chosen: Vec<_> = all.iter().filter(|(_, on, _)| *on || !any).collect();
            let mut ok = true;
            for (name, _, test) in &chosen {
                let value = test(&p);
                ok &= value;
                if chosen.len() == 1 {
                    println!("{value}");
                } else {
                    println!("{name}: {value}");
                }
            }
            Ok(verdict(ok))
        }
        Command::Decompose { poset, json, dot } => {
            let tree = decomposition_tree(&resolve_poset(&poset)?.to_structure())?;
            if json {
                println!("{}", tree.to_json());
            } else if dot {
                print!("{}", tree.to_dot());
            } else {
                print!("{tree}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { poset, json } => {
            let c = classify(&resolve_poset(&poset)?)?;
            if json {
                println!("{}", c.to_json());
            } else {
                let kind = c.to_json()["kind"].as_str().unwrap_or_default().replace('_', " ");
                println!("{kind}");
                for part in c.parts() {
                    println!("  {:?} {}", part.points, Expr::atom_for(&part.poset));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Embed { a, b } => {
            let found = find_embedding(&resolve_poset(&a)?, &resolve_poset(&b)?)?;
            println!("{}", found.is_some());
            if let Some(e) = &found {
                println!("{}", show_map(e));
            }
            Ok(verdict(found.is_some()))
        }
        Command::Iso { a, b } => {
            let found = find_isomorphism(&resolve_poset(&a)?, &resolve_poset(&b)?)?;
            println!("{}", found.is_some());
            if let Some(e) = &found {
                println!("{}", show_map(e));
            }
            Ok(verdict(found.is_some()))
        }
        Command::Gen { name } => {
            print!("{}", format_poset_file(&gen_named(&name)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Canon { poset } => {
            println!("{}", canonical_chain_antichain_form(&resolve_poset(&poset)?)?.to_expr());
            Ok(ExitCode::SUCCESS)
        }
        Command::Siblings { poset } => {
            println!("{}", sibling_report(&resolve_poset(&poset)?)?.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Command::Family { base, bits, linear, host } => {
            let window = TruncationWindow::parse(&base)?;
            let patterns = bits.iter().map(|b| BitPattern::parse(b)).collect::<Result<Vec<_>>>()?;
            let windows = patterns
                .iter()
                .map(|f| if linear { cf_linear_window(&window, f) } else { cf_window(&window, f) })
                .collect::<Result<Vec<_>>>()?;
            let host = host.map(|h| Expr::parse(&h)?.to_labelled_chain()).transpose()?;
            let cap = std::env::var(CAP_VAR).ok().and_then(|v| v.parse().ok()).unwrap_or(128);
            let report = family_pairwise_noniso(&windows, host.as_ref(), cap)?;
            let json = serde_json::json!({
                "schema": 1,
                "patterns": bits,
                "sizes": report.sizes,
                "noniso": report.noniso,
                "embeds_in_host": report.embeds_in_host,
                "all_pairs_noniso": report.all_pairs_noniso(),
            });
            println!("{json}");
            Ok(verdict(report.all_pairs_noniso() && report.all_embed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = std::env::var(CAP_VAR).ok().and_then(|v| v.parse::<usize>().ok()) {
        set_search_cap(cap);
        set_module_cap(cap);
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
