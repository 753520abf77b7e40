//! `verify`: JSON-lines reports, exit 0 iff nothing failed.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wordle_exact::oracles::{
    self, set_families, sweep_asc_gadget, sweep_doubling, sweep_solver_oracle, Caps, Verdict,
    VerificationReport,
};
use wordle_exact::reductions::{Graph, SetFamily};
use wordle_exact::solver::GuessMode;
use wordle_exact::{Alphabet, Dictionary, Symbol, Word};

use crate::{emit, load_dictionary, read_file, CliError, CliResult, FormatArg, GuessModeArg};

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    /// Set cover with c sets iff almost set cover of the doubled family.
    #[value(name = "doubling", alias = "lemma1")]
    Doubling,
    /// Almost set cover with c sets iff the gadget is won in c + 1 guesses.
    #[value(name = "asc-gadget", alias = "thm1")]
    AscGadget,
    /// Domination number <= fewest guesses <= domination number + 4.
    #[value(name = "domination-bound", alias = "thm2")]
    DominationBound,
    /// Lowest-index feasible play wins within the alphabet size.
    #[value(name = "any-feasible", alias = "lemma3")]
    AnyFeasible,
    /// Memoized solver agrees with the exhaustive oracle.
    #[value(name = "solver-oracle")]
    SolverOracle,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    claim: Claim,
    /// Run the built-in desk-scale sweep for the claim.
    #[arg(long)]
    sweep: bool,
    /// Set family JSON file.
    #[arg(long)]
    family: Option<PathBuf>,
    #[arg(short = 'c', long = "cover-size", default_value_t = 1)]
    c: usize,
    /// Graph edge-list file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Dictionary file; for `domination-bound` it replaces the generated gadget.
    #[arg(long)]
    dict: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,
    #[arg(long)]
    max_guesses: Option<usize>,
    #[arg(long, value_enum, default_value_t = GuessModeArg::Full)]
    guess_mode: GuessModeArg,
    /// Random instances added to sweeps that use them.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = Caps::default().sets)]
    max_sets: usize,
    #[arg(long, default_value_t = Caps::default().vertices)]
    max_vertices: usize,
    #[arg(long, default_value_t = Caps::default().dictionary)]
    max_words: usize,
    #[arg(long, default_value_t = Caps::default().guesses)]
    max_ell: usize,
}

impl VerifyArgs {
    fn caps(&self) -> Caps {
        Caps {
            sets: self.max_sets,
            vertices: self.max_vertices,
            dictionary: self.max_words,
            guesses: self.max_ell,
        }
    }

    fn family(&self) -> CliResult<SetFamily> {
        let path = self.family.as_ref().ok_or_else(|| need("--family"))?;
        Ok(SetFamily::from_json(&read_file(path)?)?)
    }

    fn dictionary(&self) -> CliResult<Dictionary> {
        let path = self.dict.as_ref().ok_or_else(|| need("--dict"))?;
        load_dictionary(path, self.format)
    }
}

fn need(flag: &str) -> CliError {
    CliError::Usage(format!("{flag} is required unless --sweep is given"))
}

pub fn run(args: &VerifyArgs, out: &mut impl Write) -> CliResult<u8> {
    let caps = args.caps();
    let reports = match (args.claim, args.sweep) {
        (Claim::Doubling, true) => sweep_doubling(&set_families(4, 3), &[1, 2], &caps)?,
        (Claim::Doubling, false) => vec![oracles::verify_doubling(&args.family()?, args.c, &caps)?],
        (Claim::AscGadget, true) => sweep_asc_gadget(&set_families(4, 3), &[1, 2], &caps)?,
        (Claim::AscGadget, false) => vec![oracles::verify_asc_gadget(&args.family()?, args.c, &caps)?],
        (Claim::DominationBound, true) => domination_graphs()
            .iter()
            .map(|g| oracles::verify_domination_bound(g, &caps))
            .collect::<Result<_, _>>()?,
        (Claim::DominationBound, false) => {
            let path = args.graph.as_ref().ok_or_else(|| need("--graph"))?;
            let g = Graph::parse(&read_file(path)?)?;
            match &args.dict {
                Some(_) => vec![oracles::verify_domination_bound_with(&g, &args.dictionary()?, &caps)?],
                None => vec![oracles::verify_domination_bound(&g, &caps)?],
            }
        }
        (Claim::AnyFeasible, true) => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            (0..args.random.unwrap_or(200))
                .map(|_| {
                    let sigma = rng.gen_range(1..=6);
                    let k = rng.gen_range(1..=5);
                    oracles::verify_any_feasible_bound(&random_dictionary(&mut rng, sigma, k, 200))
                })
                .collect::<Result<_, _>>()?
        }
        (Claim::AnyFeasible, false) => vec![oracles::verify_any_feasible_bound(&args.dictionary()?)?],
        (Claim::SolverOracle, true) => {
            let mut reports = sweep_solver_oracle(3, 2, 6, 2, &caps)?;
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            for _ in 0..args.random.unwrap_or(100) {
                let sigma = rng.gen_range(2..=4);
                let k = rng.gen_range(1..=3);
                let d = random_dictionary(&mut rng, sigma, k, caps.dictionary);
                let ell = rng.gen_range(1..=caps.guesses);
                let mode = if rng.gen() {
                    GuessMode::FullDictionary
                } else {
                    GuessMode::FeasibleOnly
                };
                reports.push(oracles::verify_solver_oracle(&d, ell, mode, &caps)?);
            }
            reports
        }
        (Claim::SolverOracle, false) => {
            let ell = args.max_guesses.ok_or_else(|| need("--max-guesses"))?;
            vec![oracles::verify_solver_oracle(&args.dictionary()?, ell, args.guess_mode.into(), &caps)?]
        }
    };
    write_reports(&reports, out)
}

/// The complete graph on five vertices and the circulants `C_n(1, 2)` for
/// `n` from 7 to 10.
fn domination_graphs() -> Vec<Graph> {
    let mut graphs = vec![Graph::complete(5)];
    graphs.extend((7..=10).map(|n| Graph::circulant(n, &[1, 2]).expect("valid offsets")));
    graphs
}

fn write_reports(reports: &[VerificationReport], out: &mut impl Write) -> CliResult<u8> {
    let mut failed = 0;
    let mut skipped = 0;
    for r in reports {
        emit(out, r.to_json_line())?;
        match r.verdict {
            Verdict::Pass => {}
            Verdict::Fail => failed += 1,
            Verdict::Skipped => skipped += 1,
        }
    }
    eprintln!(
        "{} reports: {} pass, {failed} fail, {skipped} skipped",
        reports.len(),
        reports.len() - failed - skipped
    );
    Ok(if failed == 0 { 0 } else { 1 })
}

/// Between one and `max_words` distinct random words over `sigma` letters.
pub fn random_dictionary(rng: &mut impl Rng, sigma: usize, k: usize, max_words: usize) -> Dictionary {
    let n = rng.gen_range(1..=max_words);
    let words: BTreeSet<Vec<Symbol>> = (0..n)
        .map(|_| (0..k).map(|_| rng.gen_range(0..sigma) as Symbol).collect())
        .collect();
    let alphabet = Alphabet::new((0..sigma).map(|i| char::from(b'A' + i as u8).to_string()))
        .expect("letters are valid names");
    Dictionary::new(alphabet, words.into_iter().map(Word::new).collect()).expect("distinct words")
}
