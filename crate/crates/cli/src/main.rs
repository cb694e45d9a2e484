//! Batch front end: every subcommand writes one JSON report and exits 0
//! exactly when all of its checks passed (1 on a failed check, 2 on bad input).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bipermute::constructions::{bicyclic_sequence, default_epsilon, m3_trunc_sequence, u3_negnmax_sequence, u3_nmax_sequence, BicyclicElement};
use bipermute::matrix::{seq_product, Matrix};
use bipermute::permutability::{exhaustive_identity_only, find_preserving_permutation, PermutationWitness, SearchPolicy, DEFAULT_SEED};
use bipermute::quotients::{chain_congruence, kerperm_find_swap, trunc12_congruence, verify_congruence, xperm_find, CongruenceMode};
use bipermute::semiring::{AxiomMode, Family, FiniteSemiringTable};
use bipermute::suite::{self, SuiteConfig};
use bipermute::trunc_iso::{classify_truncated, distinguisher, max_element_order, verify_iso};
use bipermute::{Rational, Scalar, Semiring};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;
/// Iteration cap for element orders.
const ORDER_CAP: u64 = 1 << 20;

#[derive(Parser)]
#[command(name = "bipermute", version, about = "Permutability experiments for matrices over bipotent semirings")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "BIPERMUTE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of random trials (overrides per-command defaults).
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// Largest sequence length searched exhaustively.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SemiringSource {
    /// Semiring JSON file.
    #[arg(long)]
    semiring: Option<PathBuf>,
    /// Semiring JSON given inline.
    #[arg(long)]
    inline: Option<String>,
}

impl SemiringSource {
    fn text(&self) -> Result<String> {
        Ok(match (&self.semiring, &self.inline) {
            (Some(path), _) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
            (None, Some(text)) => text.clone(),
            (None, None) => unreachable!("clap requires one source"),
        })
    }

    fn load(&self) -> Result<Semiring> {
        serde_json::from_str(&self.text()?).context("parsing semiring JSON")
    }

    /// Like `load`, but operation tables are taken as given so that law
    /// violations reach the report instead of failing the parse.
    fn load_unchecked(&self) -> Result<Semiring> {
        #[derive(Deserialize)]
        struct TableRepr {
            family: String,
            add: Vec<Vec<usize>>,
            mul: Vec<Vec<usize>>,
        }
        let text = self.text()?;
        match serde_json::from_str::<TableRepr>(&text) {
            Ok(t) if t.family == "table" => Ok(Semiring::table(FiniteSemiringTable::new_unchecked(t.add, t.mul)?)),
            _ => serde_json::from_str(&text).context("parsing semiring JSON"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum WitnessFamily {
    U3Nmax,
    U3Negnmax,
    M3Trunc,
    BicyclicRho,
}

#[derive(Clone, Copy, ValueEnum)]
enum PermuteMode {
    /// Staged search: equal pair, adjacent, transpositions, random, exhaustive.
    Search,
    /// Decide whether only the identity preserves the product.
    Exhaustive,
    /// Quotient pigeonhole over chains and T[1,2].
    Kernel,
    /// Case analysis for the [[0, a], [-inf, b]] pattern over T[1,z].
    Pattern,
}

#[derive(Subcommand)]
enum Command {
    /// Check the semiring laws, exhaustively on finite carriers.
    Axioms {
        #[command(flatten)]
        source: SemiringSource,
    },
    /// Order, period and monogenic type of one element.
    ClassifyElement {
        #[command(flatten)]
        source: SemiringSource,
        /// Element as JSON, e.g. 3, "5/2", "-inf" or {"atom": 1}.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Carrier facts and, for truncated semirings, the canonical form.
    ClassifySemiring {
        #[command(flatten)]
        source: SemiringSource,
    },
    /// Product of a matrix sequence.
    Product {
        /// JSON array of matrices, an object with a "matrices" array, or a witness report.
        #[arg(long)]
        input: PathBuf,
    },
    /// Find a non-trivial permutation preserving the product.
    Permute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = PermuteMode::Search)]
        mode: PermuteMode,
    },
    /// Emit a witness sequence with its closed-form product.
    Witness {
        #[arg(long, value_enum)]
        family: WitnessFamily,
        /// Sequence length (bicyclic_rho: elements q^i p^(i+1) for i < m).
        #[arg(long, default_value_t = 5)]
        m: u64,
        #[arg(long, default_value = "3")]
        z: Rational,
        /// Defaults to the largest admissible value below z - 2.
        #[arg(long)]
        epsilon: Option<Rational>,
    },
    /// Build and verify the congruence of a chain or T[x,y] fixing a set X.
    Quotient {
        #[command(flatten)]
        source: SemiringSource,
        /// JSON array of elements isolated in singleton classes.
        #[arg(long, allow_hyphen_values = true)]
        classes: String,
    },
    /// Classify T[x,y] up to isomorphism and verify the map.
    Iso {
        #[arg(long)]
        x: Rational,
        #[arg(long)]
        y: Rational,
        /// Second pair "x,y" to compare against.
        #[arg(long)]
        against: Option<String>,
    },
    /// Run the verification suite.
    VerifyAll {
        /// Run only this item.
        #[arg(long)]
        item: Option<String>,
    },
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    seed: u64,
    passed: bool,
    result: Value,
}

fn load_matrices(path: &PathBuf) -> Result<Vec<Matrix>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).context("parsing matrices JSON")?;
    // Accept a bare array, a witness sequence, or a full witness report.
    let list = match value {
        Value::Object(mut o) => match o.remove("result") {
            Some(Value::Object(mut r)) => r.remove("matrices"),
            _ => o.remove("matrices"),
        }
        .context("object input needs a \"matrices\" field")?,
        other => other,
    };
    let seq: Vec<Matrix> = serde_json::from_value(list).context("decoding matrices")?;
    if seq.is_empty() {
        bail!("empty matrix sequence");
    }
    Ok(seq)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn verify_witness(seq: &[Matrix], w: &PermutationWitness) -> Result<bool> {
    Ok(match w.perm() {
        Some(p) => bipermute::permutability::apply_perm_product(seq, p)? == seq_product(seq)?,
        None => true,
    })
}

fn run(cli: &Cli) -> Result<(&'static str, bool, Value)> {
    let trials = cli.trials;
    Ok(match &cli.command {
        Command::Axioms { source } => {
            let s = source.load_unchecked()?;
            let mode = if s.is_finite() { AxiomMode::Exhaustive } else { AxiomMode::Sampled { seed: cli.seed, trials: trials.unwrap_or(1000) } };
            let r = s.check_axioms(mode)?;
            ("axioms", r.passed, to_value(&r))
        }
        Command::ClassifyElement { source, element } => {
            let s = source.load()?;
            let a: Scalar = serde_json::from_str(element).context("parsing element JSON")?;
            let order = s.element_order(&a, ORDER_CAP)?;
            let period_one = order.finite().map(|_| s.period_one_check(&a, ORDER_CAP)).transpose()?;
            let monogenic = s.classify_monogenic(&a, ORDER_CAP)?;
            let passed = period_one != Some(false);
            ("classify-element", passed, json!({ "semiring": s, "element": a, "order": order, "period_one": period_one, "monogenic": monogenic }))
        }
        Command::ClassifySemiring { source } => {
            let s = source.load()?;
            let carrier_size = s.carrier().map(|c| c.len());
            let mut result = json!({
                "semiring": s,
                "finite": s.is_finite(),
                "carrier_size": carrier_size,
                "zero": s.zero(),
                "identity": s.identity(),
            });
            if let Family::Trunc { x, y } = s.family() {
                let c = classify_truncated(x, y)?;
                result["canonical"] = to_value(&c.canonical);
                result["map"] = to_value(&c.map);
                result["max_element_order"] = match max_element_order(&c.canonical.bounds().1) {
                    Ok(o) if x > &Rational::zero() => json!(o),
                    _ => Value::Null,
                };
            }
            ("classify-semiring", true, result)
        }
        Command::Product { input } => {
            let seq = load_matrices(input)?;
            let p = seq_product(&seq)?;
            ("product", true, json!({ "length": seq.len(), "product": p }))
        }
        Command::Permute { input, mode } => {
            let seq = load_matrices(input)?;
            let cap = usize::try_from(cli.cap).unwrap_or(usize::MAX);
            match mode {
                PermuteMode::Search => {
                    let mut policy = SearchPolicy { exhaustive_cap: cap, seed: cli.seed, ..SearchPolicy::default() };
                    if let Some(t) = trials {
                        policy.random_trials = t;
                    }
                    let w = find_preserving_permutation(&seq, &policy)?;
                    let verified = verify_witness(&seq, &w)?;
                    ("permute", verified, json!({ "length": seq.len(), "witness": w, "verified": verified }))
                }
                PermuteMode::Exhaustive => {
                    let identity_only = exhaustive_identity_only(&seq, cap)?;
                    ("permute", true, json!({ "length": seq.len(), "identity_only": identity_only }))
                }
                PermuteMode::Kernel => {
                    let r = kerperm_find_swap(&seq)?;
                    let verified = verify_witness(&seq, &r.witness)?;
                    ("permute", verified, json!({ "length": seq.len(), "kernel": r, "verified": verified }))
                }
                PermuteMode::Pattern => {
                    let r = xperm_find(&seq)?;
                    let verified = verify_witness(&seq, &r.witness)?;
                    ("permute", verified, json!({ "length": seq.len(), "pattern": r, "verified": verified }))
                }
            }
        }
        Command::Witness { family, m, z, epsilon } => {
            let w = match family {
                WitnessFamily::U3Nmax => u3_nmax_sequence(*m)?,
                WitnessFamily::U3Negnmax => u3_negnmax_sequence(*m)?,
                WitnessFamily::M3Trunc => {
                    let eps = epsilon.clone().unwrap_or_else(|| default_epsilon(z));
                    m3_trunc_sequence(z, &eps, *m)?
                }
                WitnessFamily::BicyclicRho => {
                    let elems: Vec<BicyclicElement> = (0..*m).map(|i| BicyclicElement::new(i, i + 1)).collect();
                    bicyclic_sequence(&elems)?
                }
            };
            let consistent = seq_product(&w.matrices)? == w.metadata.closed_form;
            ("witness", consistent, to_value(&w))
        }
        Command::Quotient { source, classes } => {
            let s = source.load()?;
            let x: Vec<Scalar> = serde_json::from_str(classes).context("parsing --classes JSON")?;
            let q = match s.family() {
                Family::Trunc { .. } => trunc12_congruence(&s, &x)?,
                _ => chain_congruence(&s, &x)?,
            };
            let mode = if s.is_finite() { CongruenceMode::Exhaustive } else { CongruenceMode::Sampled { seed: cli.seed, trials: trials.unwrap_or(10_000) } };
            let report = verify_congruence(&q, mode)?;
            ("quotient", report.passed, json!({ "quotient": q, "report": report }))
        }
        Command::Iso { x, y, against } => {
            let c = classify_truncated(x, y)?;
            let report = verify_iso(&c, cli.seed, trials.unwrap_or(1000))?;
            let mut result = json!({ "classification": c, "report": report });
            if let Some(other) = against {
                let (x2, y2) = other.split_once(',').context("--against expects \"x,y\"")?;
                let (x2, y2): (Rational, Rational) = (x2.trim().parse()?, y2.trim().parse()?);
                result["distinguisher"] = to_value(&distinguisher((x, y), (&x2, &y2))?);
            }
            ("iso", report.passed, result)
        }
        Command::VerifyAll { item } => {
            let config = SuiteConfig { seed: cli.seed, trials };
            let reports = match item {
                Some(name) => vec![suite::run_item(name, &config)?],
                None => suite::run_all(&config),
            };
            let mut stderr = std::io::stderr().lock();
            for r in &reports {
                let flag = if r.fast { " [fast]" } else { "" };
                writeln!(stderr, "{} {:<10} {}{flag}", if r.passed { "PASS" } else { "FAIL" }, r.item, r.summary)?;
            }
            let passed = reports.iter().all(|r| r.passed);
            ("verify-all", passed, json!({ "items": reports }))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((command, passed, result)) => {
            let envelope = Envelope { schema_version: SCHEMA_VERSION, command, seed: cli.seed, passed, result };
            let text = serde_json::to_string_pretty(&envelope).expect("reports serialize") + "\n";
            let written = match &cli.out {
                Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
                None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
            };
            match written {
                Ok(()) if passed => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
