//! `ffderiv`: exact discrete-derivative calculus over small finite fields.
//!
//! Every command prints one report to stdout, as a single JSON line by
//! default or as plain text with `--format table`. Exit code 0 means the
//! command ran and, where it decides something, the answer is positive;
//! 1 means it ran and the answer is a meaningful no (a failed check, a
//! function that is not GAPN, a missing match or antiderivative); 2 means
//! the invocation or its inputs were invalid.
//!
//! Reports are deterministic: the same invocation always produces the same
//! bytes. Randomized commands take an explicit `--seed` and echo it back.

mod input;
mod reports;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use ffderiv::census;
use ffderiv::deriv::{
    gapn_check, generalized_differential, higher_derivative, higher_derivative_expansion,
    main_lemma_check, verify_basic_properties, DirectionList,
};
use ffderiv::matching::{
    construct_antiderivative, construct_multi_antiderivative, fo_matching_check, solve_matching_g,
};
use ffderiv::sample::{random_nonzero_element, random_table, rng_from_seed, uniform_below};
use ffderiv::{AntiderivativeWitness, Error, FieldSpec, FunctionRepr, FunctionTable, Result};

use input::{
    elements_from_indices, load_field, load_function, load_table, matching_basis, to_anf,
};
use reports::{
    census_text, field_label, join_u64, kv_lines, ring_text, AgreementOut, AntiderivFound,
    AntiderivMissing, CensusOut, CheckOut, DeriveOut, FieldInfoOut, GapnOut, LemmaCounterexample,
    MatchFound, MatchMissing, MatchWitness, Output, PropsCounterexample, RingOut, TrialRun,
    WitnessOut,
};

#[derive(Parser)]
#[command(
    name = "ffderiv",
    version,
    about = "Exact discrete-derivative calculus over small finite fields"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the output bytes to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the (p-1)-fold derivative equals minus the derivative
    /// along all nonzero multiples, on random functions
    LemmaVerify(TrialArgs),
    /// Check the four first-order derivative identities on random functions
    PropsVerify(TrialArgs),
    /// Count subsets of F_p or F_p* (or of Z/NZ with --ring) by size and sum
    Census(CensusArgs),
    /// Decide whether a function is generalized almost perfect nonlinear
    Gapn(FnArgs),
    /// Differentiate a function along a list of directions
    Derive(DeriveArgs),
    /// Solve D_x1 f = D_x2 g for g
    Match(MatchArgs),
    /// Check whether D_x1 f = D_x2 g holds for a given pair
    MatchCheck(MatchCheckArgs),
    /// Construct H with D_alpha_i H = D_i for each given direction
    Antideriv(AntiderivArgs),
    /// Print the resolved parameters of a field
    FieldInfo(FieldInfoArgs),
}

#[derive(Args)]
struct TrialArgs {
    /// Field characteristic (prime)
    #[arg(long)]
    p: u64,
    /// Extension degree
    #[arg(long)]
    n: usize,
    /// Modulus coefficients c0,c1,..,cn low to high; defaults to the
    /// smallest monic irreducible
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
    /// Number of random trials
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CensusArgs {
    /// Ground set F_p for this prime
    #[arg(long, conflicts_with = "ring")]
    p: Option<u64>,
    /// Count subsets of F_p* instead of F_p
    #[arg(long, requires = "p")]
    star: bool,
    /// Ground set Z/NZ for this modulus
    #[arg(long)]
    ring: Option<u64>,
}

#[derive(Args)]
struct FnArgs {
    /// Field description: inline JSON or path
    #[arg(long)]
    field: String,
    /// Function: inline JSON, path, or polynomial expression
    #[arg(long)]
    function: String,
}

#[derive(Args)]
struct DeriveArgs {
    /// Field description: inline JSON or path
    #[arg(long)]
    field: String,
    /// Function: inline JSON, path, or polynomial expression
    #[arg(long)]
    function: String,
    /// Direction element indices, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    dirs: Vec<u64>,
    /// Cross-check against the subset-expansion formula
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct MatchArgs {
    /// Field description: inline JSON or path
    #[arg(long)]
    field: String,
    /// The function f: inline JSON, path, or polynomial expression
    #[arg(long)]
    function: String,
    /// Element index of the first basis direction
    #[arg(long)]
    alpha: Option<u64>,
    /// Element index of the second basis direction
    #[arg(long, requires = "alpha")]
    beta: Option<u64>,
}

#[derive(Args)]
struct MatchCheckArgs {
    /// Field description: inline JSON or path
    #[arg(long)]
    field: String,
    /// The function f: inline JSON, path, or polynomial expression
    #[arg(long)]
    f: String,
    /// The function g: inline JSON, path, or polynomial expression
    #[arg(long)]
    g: String,
    /// Element index of the first basis direction
    #[arg(long)]
    alpha: Option<u64>,
    /// Element index of the second basis direction
    #[arg(long, requires = "alpha")]
    beta: Option<u64>,
}

#[derive(Args)]
struct AntiderivArgs {
    /// Field description: inline JSON or path
    #[arg(long)]
    field: String,
    /// Right-hand side D_i, once per direction
    #[arg(long = "function", required = true)]
    functions: Vec<String>,
    /// Direction element indices, comma separated, one per function
    #[arg(long, value_delimiter = ',', required = true)]
    dirs: Vec<u64>,
}

#[derive(Args)]
struct FieldInfoArgs {
    /// Field description: inline JSON or path
    #[arg(long, conflicts_with_all = ["p", "n", "modulus"])]
    field: Option<String>,
    /// Field characteristic (prime)
    #[arg(long, requires = "n")]
    p: Option<u64>,
    /// Extension degree
    #[arg(long, requires = "p")]
    n: Option<usize>,
    /// Modulus coefficients c0,c1,..,cn low to high
    #[arg(long, value_delimiter = ',', requires = "p")]
    modulus: Option<Vec<u64>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => format!("{}\n", out.json),
                Format::Table => out.table.clone(),
            };
            print!("{body}");
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, body.as_bytes()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command) -> Result<Output> {
    match command {
        Command::LemmaVerify(a) => run_lemma_verify(a),
        Command::PropsVerify(a) => run_props_verify(a),
        Command::Census(a) => run_census(a),
        Command::Gapn(a) => run_gapn(a),
        Command::Derive(a) => run_derive(a),
        Command::Match(a) => run_match(a),
        Command::MatchCheck(a) => run_match_check(a),
        Command::Antideriv(a) => run_antideriv(a),
        Command::FieldInfo(a) => run_field_info(a),
    }
}

fn run_lemma_verify(a: &TrialArgs) -> Result<Output> {
    let spec = FieldSpec::new(a.p, a.n, a.modulus.clone())?;
    if spec.p() > 13 || spec.order() > 100_000 {
        return Err(Error::RangeError(
            "lemma-verify is bounded to p <= 13 and field order <= 100000".into(),
        ));
    }
    let mut rng = rng_from_seed(a.seed);
    let mut counterexamples = Vec::new();
    for trial in 0..a.trials {
        let f = random_table(&spec, &mut rng);
        let alpha = random_nonzero_element(&spec, &mut rng);
        if !main_lemma_check(&f, &alpha)?.pass {
            counterexamples.push(LemmaCounterexample {
                trial,
                f: table_indices(&f),
                alpha: spec.index_of(&alpha),
            });
        }
    }
    Ok(trial_output("lemma-verify", spec, a, counterexamples))
}

fn run_props_verify(a: &TrialArgs) -> Result<Output> {
    let spec = FieldSpec::new(a.p, a.n, a.modulus.clone())?;
    let mut rng = rng_from_seed(a.seed);
    let mut counterexamples = Vec::new();
    for trial in 0..a.trials {
        let f = random_table(&spec, &mut rng);
        let alpha = random_nonzero_element(&spec, &mut rng);
        let beta = random_nonzero_element(&spec, &mut rng);
        // the first trial pins the iota = 0 edge; the rest draw it
        let iota = if trial == 0 {
            0
        } else {
            uniform_below(&mut rng, spec.p())
        };
        let report = verify_basic_properties(&f, &alpha, &beta, iota)?;
        let mut failed = Vec::new();
        if !report.symmetry {
            failed.push("symmetry");
        }
        if !report.reflection {
            failed.push("reflection");
        }
        if !report.difference {
            failed.push("difference");
        }
        if !report.scalar_chain {
            failed.push("scalar_chain");
        }
        let reps = DirectionList::repeated(&spec, &alpha, (spec.p() - 1) as usize)?;
        if generalized_differential(&f, &alpha)? != higher_derivative(&f, &reps)? {
            failed.push("line_sum");
        }
        if !failed.is_empty() {
            counterexamples.push(PropsCounterexample {
                trial,
                f: table_indices(&f),
                alpha: spec.index_of(&alpha),
                beta: spec.index_of(&beta),
                iota,
                failed,
            });
        }
    }
    Ok(trial_output("props-verify", spec, a, counterexamples))
}

fn trial_output<T: Serialize>(
    check: &str,
    field: FieldSpec,
    a: &TrialArgs,
    counterexamples: Vec<T>,
) -> Output {
    let failures = counterexamples.len() as u64;
    let pass = failures == 0;
    let table = kv_lines(&[
        ("check", check.to_string()),
        ("field", field_label(&field)),
        ("trials", a.trials.to_string()),
        ("seed", a.seed.to_string()),
        ("failures", failures.to_string()),
        ("pass", pass.to_string()),
    ]);
    let report = TrialRun {
        field,
        trials: a.trials,
        seed: a.seed,
        failures,
        counterexamples,
        pass,
    };
    Output::new(&report, table, if pass { 0 } else { 1 })
}

fn run_census(a: &CensusArgs) -> Result<Output> {
    match (a.p, a.ring) {
        (Some(p), None) => {
            let counts = census::census_dp(p, a.star)?.counts;
            let enumerate = match census::census_enumerate(p, a.star) {
                Ok(t) => Some(t.counts == counts),
                Err(Error::TooLarge(_)) => None,
                Err(e) => return Err(e),
            };
            let closed_form = census::closed_form_table(p, a.star)?.counts == counts;
            let identities = match census::verify_census_identities(p) {
                Ok(r) => Some(r),
                Err(Error::RangeError(_)) => None,
                Err(e) => return Err(e),
            };
            let pass = enumerate.unwrap_or(true)
                && closed_form
                && identities.as_ref().is_none_or(|r| r.all_pass());
            let out = CensusOut {
                p,
                star: a.star,
                counts,
                agreement: AgreementOut {
                    enumerate,
                    closed_form,
                },
                identities,
                pass,
            };
            let text = census_text(&out);
            let exit = if out.pass { 0 } else { 1 };
            Ok(Output::new(&out, text, exit))
        }
        (None, Some(n)) => {
            let counts = census::census_ring_dp(n)?;
            let mut enumerate_agrees = None;
            for (l, row) in counts.iter().enumerate() {
                match census::census_ring_enumerate(n, l) {
                    Ok(r) => {
                        let agree = r == *row && enumerate_agrees.unwrap_or(true);
                        enumerate_agrees = Some(agree);
                    }
                    Err(Error::TooLarge(_)) => {
                        enumerate_agrees = None;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            let pass = enumerate_agrees.unwrap_or(true);
            let out = RingOut {
                n,
                counts,
                enumerate_agrees,
                pass,
            };
            let text = ring_text(&out);
            let exit = if out.pass { 0 } else { 1 };
            Ok(Output::new(&out, text, exit))
        }
        _ => Err(Error::Input(
            "census needs exactly one of --p or --ring".into(),
        )),
    }
}

fn run_gapn(a: &FnArgs) -> Result<Output> {
    let spec = load_field(&a.field)?;
    let f = load_table(&spec, &a.function)?;
    let r = gapn_check(&f);
    let out = GapnOut {
        field: spec.clone(),
        is_gapn: r.is_gapn,
        max_solutions: r.max_solutions,
        worst_alpha: spec.index_of(&r.worst_alpha),
        worst_beta: spec.index_of(&r.worst_beta),
    };
    let table = kv_lines(&[
        ("field", field_label(&out.field)),
        ("is_gapn", out.is_gapn.to_string()),
        ("max_solutions", out.max_solutions.to_string()),
        ("worst_alpha", out.worst_alpha.to_string()),
        ("worst_beta", out.worst_beta.to_string()),
    ]);
    let exit = if out.is_gapn { 0 } else { 1 };
    Ok(Output::new(&out, table, exit))
}

fn run_derive(a: &DeriveArgs) -> Result<Output> {
    let spec = load_field(&a.field)?;
    let f = load_table(&spec, &a.function)?;
    let dirs = DirectionList::new(&spec, elements_from_indices(&spec, &a.dirs)?)?;
    let result = higher_derivative(&f, &dirs)?;
    if a.oracle && higher_derivative_expansion(&f, &dirs)? != result {
        return Err(Error::InternalInconsistency(
            "sequential and expansion derivatives disagree".into(),
        ));
    }
    let table = kv_lines(&[
        ("field", field_label(&spec)),
        ("dirs", join_u64(&a.dirs)),
        ("oracle_checked", a.oracle.to_string()),
        ("result", join_u64(&table_indices(&result))),
    ]);
    let out = DeriveOut {
        field: spec,
        dirs: a.dirs.clone(),
        oracle_checked: a.oracle,
        result: function_value(&FunctionRepr::Table(result)),
    };
    Ok(Output::new(&out, table, 0))
}

fn run_match(a: &MatchArgs) -> Result<Output> {
    let spec = load_field(&a.field)?;
    let repr = load_function(&spec, &a.function)?;
    let basis = matching_basis(&spec, &repr, a.alpha, a.beta)?;
    let f = to_anf(repr, &basis)?;
    match solve_matching_g(&f, &basis) {
        Ok(g) => {
            let out = MatchFound {
                status: "ok",
                g: function_value(&FunctionRepr::Anf(g)),
                verified: true,
            };
            let table = kv_lines(&[
                ("status", out.status.to_string()),
                ("g", out.g.to_string()),
                ("verified", out.verified.to_string()),
            ]);
            Ok(Output::new(&out, table, 0))
        }
        Err(Error::NoMatch { j, w, .. }) => {
            let out = MatchMissing {
                status: "no_match",
                witness: MatchWitness { j, w },
            };
            let table = kv_lines(&[
                ("status", out.status.to_string()),
                ("witness_j", out.witness.j.to_string()),
                ("witness_w", join_u64(&out.witness.w)),
            ]);
            Ok(Output::new(&out, table, 1))
        }
        Err(e) => Err(e),
    }
}

fn run_match_check(a: &MatchCheckArgs) -> Result<Output> {
    let spec = load_field(&a.field)?;
    let repr_f = load_function(&spec, &a.f)?;
    let repr_g = load_function(&spec, &a.g)?;
    let basis = matching_basis(&spec, &repr_f, a.alpha, a.beta)?;
    let f = to_anf(repr_f, &basis)?;
    let g = to_anf(repr_g, &basis)?;
    let matches = fo_matching_check(&f, &g, &basis)?;
    let out = CheckOut { matches };
    let table = kv_lines(&[("match", matches.to_string())]);
    Ok(Output::new(&out, table, if matches { 0 } else { 1 }))
}

fn run_antideriv(a: &AntiderivArgs) -> Result<Output> {
    let spec = load_field(&a.field)?;
    if a.functions.len() != a.dirs.len() {
        return Err(Error::Input(format!(
            "got {} functions and {} directions; counts must match",
            a.functions.len(),
            a.dirs.len()
        )));
    }
    let ds = a
        .functions
        .iter()
        .map(|s| load_table(&spec, s))
        .collect::<Result<Vec<_>>>()?;
    let alphas = elements_from_indices(&spec, &a.dirs)?;
    let built = if ds.len() == 1 {
        construct_antiderivative(&ds[0], &alphas[0])
    } else {
        construct_multi_antiderivative(&ds, &alphas)
    };
    match built {
        Ok(h) => {
            let table = kv_lines(&[
                ("status", "ok".to_string()),
                ("h", join_u64(&table_indices(&h))),
            ]);
            let out = AntiderivFound {
                status: "ok",
                h: function_value(&FunctionRepr::Table(h)),
            };
            Ok(Output::new(&out, table, 0))
        }
        Err(Error::NoAntiderivative { witness }) => {
            let (witness, describe) = match witness {
                AntiderivativeWitness::Coset(indices) => {
                    let text = format!("coset {}", join_u64(&indices));
                    (WitnessOut::Coset { indices }, text)
                }
                AntiderivativeWitness::Pair(i, j) => {
                    (WitnessOut::Pair { i, j }, format!("pair {i},{j}"))
                }
            };
            let out = AntiderivMissing {
                status: "none",
                witness,
            };
            let table = kv_lines(&[
                ("status", out.status.to_string()),
                ("witness", describe),
            ]);
            Ok(Output::new(&out, table, 1))
        }
        Err(e) => Err(e),
    }
}

fn run_field_info(a: &FieldInfoArgs) -> Result<Output> {
    let spec = match (&a.field, a.p, a.n) {
        (Some(arg), None, None) => load_field(arg)?,
        (None, Some(p), Some(n)) => FieldSpec::new(p, n, a.modulus.clone())?,
        _ => {
            return Err(Error::Input(
                "field-info needs --field, or --p together with --n".into(),
            ))
        }
    };
    let out = FieldInfoOut {
        p: spec.p(),
        n: spec.n(),
        modulus: spec.modulus().to_vec(),
        order: spec.order(),
    };
    let table = kv_lines(&[
        ("p", out.p.to_string()),
        ("n", out.n.to_string()),
        ("modulus", join_u64(&out.modulus)),
        ("order", out.order.to_string()),
    ]);
    Ok(Output::new(&out, table, 0))
}

fn function_value(repr: &FunctionRepr) -> Value {
    serde_json::from_str(&repr.to_json()).expect("emitted JSON reparses")
}

fn table_indices(t: &FunctionTable) -> Vec<u64> {
    let spec = t.spec();
    t.values().iter().map(|v| spec.index_of(v)).collect()
}
