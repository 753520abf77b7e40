//! `gen`: write gadget instances plus a `<output>.provenance.json` sidecar.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use serde_json::json;
use wordle_exact::reductions::{
    asc_to_wordle, graph_to_wordle, setcover_to_asc, Graph, Provenance, SetFamily,
};
use wordle_exact::DictFormat;

use crate::{emit, read_file, write_file, CliResult};

#[derive(Args)]
pub struct GenArgs {
    #[command(subcommand)]
    which: GenCommand,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Double every element of a set cover instance (JSON in, JSON out).
    AscFromSetcover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Build the element-word / set-word dictionary, played with c + 1 guesses.
    WordleFromAsc {
        #[arg(long)]
        input: PathBuf,
        #[arg(short = 'c', long = "cover-size")]
        c: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Build the five-letter dictionary of a 4-regular graph.
    WordleFromGraph {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
}

pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".provenance.json");
    PathBuf::from(name)
}

pub fn run(args: &GenArgs, out: &mut impl Write) -> CliResult<u8> {
    let (output, provenance) = match &args.which {
        GenCommand::AscFromSetcover { input, output } => {
            let f = SetFamily::from_json(&read_file(input)?)?;
            let doubled = setcover_to_asc(&f);
            write_file(output, &doubled.to_json())?;
            let p = Provenance {
                construction: "set_cover_doubling".into(),
                source: family_json(&f),
                c: None,
                max_guesses: None,
                words: None,
                sigma: None,
            };
            (output, p)
        }
        GenCommand::WordleFromAsc { input, c, output } => {
            let f = SetFamily::from_json(&read_file(input)?)?;
            let inst = asc_to_wordle(&f, *c)?;
            write_file(output, &inst.dictionary.to_text(DictFormat::Tokens)?)?;
            let p = Provenance {
                construction: "asc_gadget".into(),
                source: family_json(&f),
                c: Some(*c),
                max_guesses: Some(inst.max_guesses),
                words: Some(inst.dictionary.len()),
                sigma: Some(inst.dictionary.sigma()),
            };
            (output, p)
        }
        GenCommand::WordleFromGraph { input, output } => {
            let g = Graph::parse(&read_file(input)?)?;
            let d = graph_to_wordle(&g)?;
            write_file(output, &d.to_text(DictFormat::Tokens)?)?;
            let p = Provenance {
                construction: "domination_gadget".into(),
                source: json!({ "n": g.n(), "edges": g.edges() }),
                c: None,
                max_guesses: None,
                words: Some(d.len()),
                sigma: Some(d.sigma()),
            };
            (output, p)
        }
    };
    let text = serde_json::to_string_pretty(&provenance).expect("plain data");
    write_file(&sidecar_path(output), &text)?;
    emit(out, serde_json::to_string(&provenance).expect("plain data"))?;
    Ok(0)
}

fn family_json(f: &SetFamily) -> serde_json::Value {
    serde_json::from_str(&f.to_json()).expect("round trip")
}
