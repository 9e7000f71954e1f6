//! Subcommand implementations. Each writes its report to the given writer.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use ternion_core::census::{
    brute_force_m, brute_force_mu, closed_form_m, closed_form_mu, distinguishability_check,
    nfcs_unit_identity, pg_identities,
};
use ternion_core::{FreeModule, PgSubspace, SubmoduleOrbit, TVector};

use crate::snowflake::SnowflakeGraph;
use crate::{verify, Cli, CliError, Command, Format, SCHEMA_VERSION};

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let g = &cli.global;
    let module = g.module()?;
    match &cli.command {
        Command::Classify { vector, reduce } => classify(&module, vector, *reduce, g.format, out),
        Command::Reduce { vector } => reduce(&module, vector, g.format, out),
        Command::Enumerate { orbit } => enumerate(&module, *orbit, g.format, out),
        Command::Counts { brute_force } => counts(&module, *brute_force, g.format, out),
        Command::Verify => run_verify(&module, g.format, out),
        Command::PgCheck { emit } => pg_check(&module, emit.as_deref(), g.format, out),
        Command::ExportSnowflake { output, dot } => {
            export_snowflake(&module, output.as_deref(), dot.as_deref(), g.format, out)
        }
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn parse_vector(module: &FreeModule, s: &str) -> Result<TVector, CliError> {
    let v: TVector = s.parse()?;
    module.check_vector(&v)?;
    Ok(v)
}

fn classify(
    module: &FreeModule,
    literal: &str,
    with_reduction: bool,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let x = parse_vector(module, literal)?;
    let orbit = module.classify_vector(&x);
    let reduction = with_reduction.then(|| module.reduce_to_distinguished(&x));
    let verified = reduction
        .as_ref()
        .map(|r| module.vec_mat_mul(&x, &r.matrix) == r.distinguished);
    if format == Format::Json {
        let mut doc = json!({
            "schema": SCHEMA_VERSION,
            "q": module.q(),
            "n": module.n(),
            "vector": x.to_string(),
            "orbit": orbit,
            "label": orbit.to_string(),
            "free": module.is_free(&x),
        });
        if let Some(r) = &reduction {
            doc["matrix"] = serde_json::to_value(&r.matrix)?;
            doc["distinguished"] = serde_json::to_value(&r.distinguished)?;
            doc["verified"] = json!(verified);
        }
        write_json(out, &doc)?;
    } else {
        writeln!(out, "{orbit}")?;
        if let Some(r) = &reduction {
            writeln!(out, "A =")?;
            write!(out, "{}", matrix_text(&r.matrix))?;
            writeln!(out, "D = {}", r.distinguished)?;
            writeln!(
                out,
                "X*A = D: {}",
                if verified == Some(true) {
                    "ok"
                } else {
                    "MISMATCH"
                }
            )?;
        }
    }
    if verified == Some(false) {
        return Err(CliError::Failed);
    }
    Ok(())
}

fn matrix_text(a: &ternion_core::TMatrix) -> String {
    let mut s = String::new();
    for row in a.rows() {
        let cells: Vec<String> = row.iter().map(|t| format!("({t})")).collect();
        writeln!(s, "  [{}]", cells.join(" ")).unwrap();
    }
    s
}

fn reduce(
    module: &FreeModule,
    literal: &str,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let x = parse_vector(module, literal)?;
    let r = module.reduce_to_distinguished_traced(&x);
    let ok = module.vec_mat_mul(&x, &r.matrix) == r.distinguished;
    if format == Format::Json {
        write_json(
            out,
            &json!({
                "schema": SCHEMA_VERSION,
                "q": module.q(),
                "n": module.n(),
                "vector": x.to_string(),
                "reduction": r,
                "verified": ok,
            }),
        )?;
    } else {
        writeln!(out, "X = {x}")?;
        for (i, step) in r.steps.iter().enumerate() {
            writeln!(out, "step {}: {}", i + 1, step.label)?;
            write!(out, "{}", matrix_text(&step.factor))?;
            writeln!(out, "  -> {}", step.result)?;
        }
        writeln!(out, "orbit {}", r.orbit)?;
        writeln!(out, "D = {}", r.distinguished)?;
        writeln!(out, "X*A = D: {}", if ok { "ok" } else { "MISMATCH" })?;
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

/// Number of submodules in a free orbit: vectors of the case over units.
fn expected_free_count(
    module: &FreeModule,
    orbit: SubmoduleOrbit,
) -> Result<Option<BigUint>, CliError> {
    let case = match orbit {
        SubmoduleOrbit::Cs4 => 4,
        SubmoduleOrbit::Cs6 => 6,
        _ => return Ok(None),
    };
    let m = closed_form_m(module.q(), module.n())?;
    Ok(Some(
        m.get(case) / BigUint::from(module.ring().unit_count()),
    ))
}

fn big_json(v: &BigUint) -> serde_json::Value {
    match u64::try_from(v) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

fn enumerate(
    module: &FreeModule,
    orbit: SubmoduleOrbit,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let subs = module.enumerate_submodules(orbit)?;
    let expected = expected_free_count(module, orbit)?;
    let count_ok = expected
        .as_ref()
        .is_none_or(|e| *e == BigUint::from(subs.len()));
    match format {
        Format::Json => {
            let generators: Vec<String> = subs.iter().map(|s| s.generator.to_string()).collect();
            write_json(
                out,
                &json!({
                    "schema": SCHEMA_VERSION,
                    "q": module.q(),
                    "n": module.n(),
                    "orbit": orbit,
                    "count": subs.len(),
                    "expected": expected.as_ref().map(big_json),
                    "generators": generators,
                }),
            )?;
        }
        Format::Csv => {
            writeln!(out, "index,generator,free")?;
            for (i, s) in subs.iter().enumerate() {
                writeln!(out, "{i},\"{}\",{}", s.generator, s.free)?;
            }
        }
        _ => {
            writeln!(
                out,
                "{orbit} q={} n={}: {} submodules",
                module.q(),
                module.n(),
                subs.len()
            )?;
            if let Some(e) = &expected {
                writeln!(out, "expected {e}")?;
            }
            for s in &subs {
                writeln!(out, "  {}", s.generator)?;
            }
        }
    }
    if count_ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

#[derive(Serialize)]
struct CountRow {
    quantity: String,
    closed_form: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute_force: Option<String>,
}

fn counts(
    module: &FreeModule,
    brute: bool,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (q, n) = (module.q(), module.n());
    let cm = closed_form_m(q, n)?;
    let cmu = closed_form_mu(q, n)?;
    let (bm, bmu) = if brute {
        (Some(brute_force_m(module)?), Some(brute_force_mu(module)?))
    } else {
        (None, None)
    };

    let mut rows = Vec::new();
    for i in 1..=6 {
        rows.push(CountRow {
            quantity: format!("m{i}"),
            closed_form: cm.get(i).to_string(),
            brute_force: bm.as_ref().map(|b| b.get(i).to_string()),
        });
    }
    let mus = |c: &ternion_core::IncidenceCensus| {
        [
            c.mu.clone(),
            c.mu1.clone(),
            c.mu2.clone(),
            c.mu3.clone(),
            c.mu4.clone(),
        ]
    };
    let closed_mu = mus(&cmu);
    let brute_mu = bmu.as_ref().map(mus);
    for (i, name) in ["mu", "mu1", "mu2", "mu3", "mu4"].iter().enumerate() {
        rows.push(CountRow {
            quantity: name.to_string(),
            closed_form: closed_mu[i].to_string(),
            brute_force: brute_mu.as_ref().map(|b| b[i].to_string()),
        });
    }

    let mut identities = vec![
        (
            "total_is_q^(3(n+1))",
            cm.total() == BigUint::from(q).pow(3 * (n as u32 + 1)),
        ),
        ("mu_is_pg_product", pg_identities(&cmu).mu),
        ("mu2_is_pg_product", pg_identities(&cmu).mu2),
        ("mu3_is_pg_size", pg_identities(&cmu).mu3),
        ("mu_times_units_is_m4", nfcs_unit_identity(q, n)?),
        ("double_count_rad", cmu.double_count_rad.holds()),
        ("double_count_ratio", cmu.double_count_ratio.holds()),
    ];
    if n >= 2 {
        identities.push(("distinguishability", distinguishability_check(q, n)?));
    }
    let agree = rows
        .iter()
        .all(|r| r.brute_force.as_ref().is_none_or(|b| *b == r.closed_form));
    if brute {
        identities.push(("brute_force_agrees", agree));
    }
    let all_ok = identities.iter().all(|(_, ok)| *ok);

    match format {
        Format::Json => {
            let ids: serde_json::Map<String, serde_json::Value> = identities
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect();
            write_json(
                out,
                &json!({
                    "schema": SCHEMA_VERSION,
                    "q": q,
                    "n": n,
                    "rows": rows,
                    "identities": ids,
                    "passed": all_ok,
                }),
            )?;
        }
        Format::Csv => {
            writeln!(out, "quantity,closed_form,brute_force")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{}",
                    r.quantity,
                    r.closed_form,
                    r.brute_force.as_deref().unwrap_or("")
                )?;
            }
        }
        _ => {
            writeln!(out, "q={q} n={n}")?;
            let header = if brute { "brute force" } else { "" };
            writeln!(out, "{:<9}{:>24}  {header}", "", "closed form")?;
            for r in &rows {
                writeln!(
                    out,
                    "{:<9}{:>24}  {}",
                    r.quantity,
                    r.closed_form,
                    r.brute_force.as_deref().unwrap_or("")
                )?;
            }
            for (name, ok) in &identities {
                writeln!(out, "{} {name}", if *ok { "PASS" } else { "FAIL" })?;
            }
        }
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn run_verify(module: &FreeModule, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let report = verify::run(module)?;
    if format == Format::Json {
        write_json(out, &report)?;
    } else {
        write!(out, "{}", report.to_text())?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn pg_check(
    module: &FreeModule,
    emit: Option<&std::path::Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let report = module.verify_theorem1()?;
    let fiber_ok = report.uniform_fiber() == Some(module.q() as usize + 1);
    if let Some(path) = emit {
        let lines: BTreeSet<PgSubspace> =
            module.nfcs_traces()?.into_iter().map(|(_, t)| t).collect();
        let doc = json!({
            "schema": SCHEMA_VERSION,
            "q": module.q(),
            "n": module.n(),
            "lines": lines
                .iter()
                .map(|l| l.basis().iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        });
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        std::fs::write(path, s)?;
    }
    if format == Format::Json {
        write_json(
            out,
            &json!({ "schema": SCHEMA_VERSION, "report": report, "fiber_ok": fiber_ok }),
        )?;
    } else {
        writeln!(out, "q={} n={}", report.q, report.n)?;
        writeln!(out, "NFCS: {}", report.nfcs)?;
        writeln!(
            out,
            "lines of PG({},{}): {}",
            report.n, report.q, report.lines
        )?;
        writeln!(out, "distinct traces: {}", report.distinct_traces)?;
        writeln!(
            out,
            "{} every trace is a line",
            pass(report.traces_are_lines)
        )?;
        writeln!(
            out,
            "{} traces are exactly the lines",
            pass(report.sets_equal)
        )?;
        writeln!(out, "{} every line carries q+1 NFCS", pass(fiber_ok))?;
    }
    if report.passed() && fiber_ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn export_snowflake(
    module: &FreeModule,
    output: Option<&std::path::Path>,
    dot: Option<&std::path::Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let graph = SnowflakeGraph::build(module)?;
    if let Some(path) = dot {
        std::fs::write(path, graph.to_dot())?;
    }
    if format == Format::Dot && output.is_none() {
        write!(out, "{}", graph.to_dot())?;
        return Ok(());
    }
    let json = graph.to_json()?;
    match output {
        Some(path) => std::fs::write(path, json)?,
        None => out.write_all(json.as_bytes())?,
    }
    Ok(())
}
