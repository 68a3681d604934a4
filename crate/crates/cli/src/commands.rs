//! Subcommand execution and output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use decomplab_core::addcat::SubobjectStructure;
use decomplab_core::decomp::{decomposition_poset, permutahedron_poset};
use decomplab_core::gamma::{dec_column, evaluate_at_sphere, ksa_window, set_cell_cap};
use decomplab_core::homology::{chains_of_complex, homology, Coeff, HomologyReport};
use decomplab_core::rognes::{
    cbc_vs_spanning_check, split_tits_building, subdivision_iso_check, tits_building, SpanningPosetP,
};
use decomplab_core::sset::mv_blowup;
use decomplab_core::{Error, SimplicialComplex};
use serde_json::{json, Value};

use crate::args::{cell_budget, check_q, Cli, Command, FieldArgs, Format, Global};
use crate::error::{exit, CliError, Result};
use crate::report::{all_pass, write_csv, write_json};
use crate::suites::{run_suite, SuiteOptions};

pub const CAP_ENV: &str = "DECOMPLAB_CAP_MB";

enum Output {
    Json(Value),
    Records(Vec<crate::report::Record>),
    Column(Value),
}

/// Runs the parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    if let Some(jobs) = g.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let budget = cell_budget(g.max_cells, std::env::var(CAP_ENV).ok().as_deref())?;
    set_cell_cap(budget);
    let (output, ok) = execute(&cli.command, g, budget)?;
    emit(output, g)?;
    Ok(if ok { exit::OK } else { exit::FAILED })
}

fn within_budget(k: &SimplicialComplex, budget: Option<u64>) -> Result<()> {
    let cells: usize = k.f_vector().iter().sum();
    match budget {
        Some(b) if cells as u64 > b => {
            Err(Error::ResourceCap(format!("{cells} simplices exceed the budget of {b}")).into())
        }
        _ => Ok(()),
    }
}

fn complex_homology_in(k: &SimplicialComplex, coeff: Coeff) -> Result<HomologyReport> {
    Ok(homology(&chains_of_complex(k, true), coeff)?)
}

fn field(f: &FieldArgs) -> Result<(usize, u32)> {
    Ok((f.n, check_q(f.q)?))
}

fn execute(cmd: &Command, g: &Global, budget: Option<u64>) -> Result<(Output, bool)> {
    let coeff = g.coeff;
    Ok(match cmd {
        Command::Decomp { instance, ordered } => {
            let inst = instance.instance()?;
            let d = decomposition_poset(&SubobjectStructure::new(inst)?, *ordered, true)?;
            let nerve = d.poset.nerve();
            within_budget(&nerve, budget)?;
            let h = complex_homology_in(&nerve, coeff)?;
            let out = json!({
                "instance": inst.to_string(),
                "ordered": ordered,
                "elements": d.len(),
                "longest_chain": d.poset.longest_chain_length(),
                "poset": d.poset.to_json(),
                "homology": h.to_json(),
            });
            (Output::Json(out), true)
        }
        Command::Tits(f) => {
            let (n, q) = field(f)?;
            let k = tits_building(n, q)?;
            within_budget(&k, budget)?;
            let h = complex_homology_in(&k, coeff)?;
            let out = json!({ "n": n, "q": q, "f_vector": k.f_vector(), "homology": h.to_json() });
            (Output::Json(out), true)
        }
        Command::SplitTits(f) => {
            let (n, q) = field(f)?;
            let k = split_tits_building(n, q)?;
            within_budget(&k, budget)?;
            let h = complex_homology_in(&k, coeff)?;
            let c = subdivision_iso_check(n, q)?;
            let ok = c.passed();
            let out = json!({
                "n": n,
                "q": q,
                "f_vector": k.f_vector(),
                "homology": h.to_json(),
                "subdivision": c,
            });
            (Output::Json(out), ok)
        }
        Command::Spanning(s) => {
            let p = SpanningPosetP::build(s.k, check_q(s.q)?, s.minimality.into())?;
            let violations = p.size_violations();
            let mut out = p.to_json();
            out["sizes"] = json!(p.sizes);
            out["size_violations"] = json!(violations);
            (Output::Json(out), violations.is_empty())
        }
        Command::Cbc(s) => {
            let c = cbc_vs_spanning_check(s.k, check_q(s.q)?, s.minimality.into())?;
            within_budget(&c.cbc_complex, budget)?;
            let mut out = serde_json::to_value(&c)?;
            out["verdict"] = json!({
                "cbc_match": c.matched,
                "wedge_profile": { "wedge_in_top_degree": c.wedge_in_top_degree, "profile": c.np_profile },
                "minimality_convention": c.minimality.tag(),
            });
            (Output::Json(out), c.passed())
        }
        Command::Gamma { instance, k, trunc, sphere } => {
            let inst = instance.instance()?;
            let sub = SubobjectStructure::new(inst)?;
            let trunc = trunc.unwrap_or(2 * k);
            let e = evaluate_at_sphere(&sub, *k, (*sphere).into(), Some(trunc))?;
            let h = homology(&e.sset().normalized_chains(true)?, Coeff::Z)?;
            let c = ksa_window(&sub, *k, h)?;
            let predicted: Vec<Value> = c
                .window
                .iter()
                .map(|d| json!({ "degree": d.degree, "rank": d.predicted.0, "torsion": d.predicted.1 }))
                .collect();
            let out = json!({
                "A": inst.to_string(),
                "k": k,
                "trunc": trunc,
                "homology": c.homology.to_json(),
                "ksa_prediction": predicted,
                "match": c.matched,
                "window": c.window,
            });
            (Output::Json(out), c.matched)
        }
        Command::Column(f) => {
            let (n, q) = field(f)?;
            let c = dec_column(&SubobjectStructure::new(decomplab_core::addcat::Instance::Vect { n, q })?)?;
            let out = json!({ "n": n, "q": q, "dimDec": c.dim_dec, "dimCoinv": c.dim_coinvariants, "note": c.note });
            (Output::Column(out), true)
        }
        Command::Permutahedron { n } => {
            let p = permutahedron_poset(*n)?;
            let nerve = p.nerve();
            within_budget(&nerve, budget)?;
            let h = complex_homology_in(&nerve, coeff)?;
            let out = json!({ "n": n, "elements": p.len(), "poset": p.to_json(), "homology": h.to_json() });
            (Output::Json(out), true)
        }
        Command::Blowup { instance, k, trunc, sphere } => {
            let sub = SubobjectStructure::new(instance.instance()?)?;
            let e = evaluate_at_sphere(&sub, *k, (*sphere).into(), *trunc)?;
            let b = mv_blowup(e.sset(), &e.valuation, *trunc)?;
            let ok = b.matched;
            (Output::Json(serde_json::to_value(&b)?), ok)
        }
        Command::Verify { suite, stretch, timing } => {
            let opts = SuiteOptions { stretch: *stretch, timing: *timing, seed: g.seed };
            let records = run_suite(*suite, opts)?;
            let ok = all_pass(&records);
            (Output::Records(records), ok)
        }
    })
}

fn emit(output: Output, g: &Global) -> Result<()> {
    match &g.out {
        Some(path) => write_to(BufWriter::new(File::create(Path::new(path))?), output, g.format),
        None => write_to(io::stdout().lock(), output, g.format),
    }
}

fn write_to<W: Write>(mut w: W, output: Output, format: Option<Format>) -> Result<()> {
    match (output, format) {
        (Output::Json(v), None | Some(Format::Json)) | (Output::Column(v), Some(Format::Json)) => {
            serde_json::to_writer_pretty(&mut w, &v)?;
            writeln!(w)?;
        }
        (Output::Json(_), Some(Format::Csv)) => {
            return Err(CliError::Usage("csv output is available for verify and column".into()))
        }
        (Output::Column(v), None | Some(Format::Csv)) => {
            let mut c = csv::Writer::from_writer(&mut w);
            c.write_record(["n", "q", "dimDec", "dimCoinv"])?;
            c.write_record([&v["n"], &v["q"], &v["dimDec"], &v["dimCoinv"]].map(|x| x.to_string()))?;
            c.flush()?;
        }
        (Output::Records(r), None | Some(Format::Csv)) => write_csv(&mut w, &r)?,
        (Output::Records(r), Some(Format::Json)) => write_json(&mut w, &r)?,
    }
    w.flush()?;
    Ok(())
}
