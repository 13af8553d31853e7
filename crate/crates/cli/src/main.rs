mod args;
mod code;
mod error;
mod output;
mod verify;

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use pmepr_codes::{CodeClass, PmeprMeter64, ZqVector};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::value::RawValue;
use serde_json::{json, Value};

use args::{ClassArg, Cli, CodeArgs, Command, Format, StreamArgs};
use code::{parse_payload, parse_word, settings, Code, Settings};
use error::{CliError, CliResult};
use output::{number, open, pmepr_line, summary_csv, symbols, word_line};

const CHUNK: usize = 4096;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Generate {
            code,
            stream,
            format,
            out,
        } => generate(&settings(&code, &stream)?, format, out.as_deref()),
        Command::Verify {
            suite,
            code,
            stream,
            q,
            trials,
            out,
        } => {
            let settings = settings(&code, &stream)?;
            let report = verify::run(
                suite,
                &verify::VerifyArgs {
                    settings: &settings,
                    q,
                    trials,
                },
            )?;
            println!("{}", report.summary_line());
            let mut sink = open(out.as_deref())?;
            writeln!(sink, "{}", report.json())?;
            sink.flush()?;
            if report.pass {
                Ok(())
            } else {
                Err(CliError::Violation(format!("{} failed", report.suite)))
            }
        }
        Command::Pmepr {
            code,
            stream,
            input,
            q,
            out,
            summary,
        } => pmepr(
            &settings(&code, &stream)?,
            input.as_deref(),
            q,
            out.as_deref(),
            summary.as_deref(),
        ),
        Command::Encode { code, payload, out } => {
            let code = Code::from_settings(&settings(&code, &StreamArgs::default())?)?;
            let payload = parse_payload(&payload)?;
            let word = code.encode(&payload)?;
            let mut sink = open(out.as_deref())?;
            writeln!(
                sink,
                "{{\"payload\":\"{:x}\",\"capacity_bits\":{},\"index\":{payload},\"word\":[{}]}}",
                payload,
                code.capacity_bits(),
                symbols(&word, ",")
            )?;
            sink.flush()?;
            Ok(())
        }
        Command::Index { code, word, out } => {
            let code = Code::from_settings(&settings(&code, &StreamArgs::default())?)?;
            let word = parse_word(&word, code.q())?;
            let payload = code.payload_of(&word)?;
            let mut sink = open(out.as_deref())?;
            writeln!(sink, "{{\"payload\":\"{payload:x}\",\"index\":{payload}}}")?;
            sink.flush()?;
            Ok(())
        }
        Command::Info { code, out } => info(&code, out.as_deref()),
    }
}

fn generate(settings: &Settings, format: Format, out: Option<&Path>) -> CliResult<()> {
    let code = Code::from_settings(settings)?;
    let stream = code.stream(settings)?;
    let mut sink = open(out)?;
    if format == Format::Csv {
        let header: Vec<String> = (0..code.n()).map(|i| format!("s{i}")).collect();
        writeln!(sink, "index,{}", header.join(","))?;
    }
    for (index, word) in stream {
        match format {
            Format::Jsonl => writeln!(sink, "{}", word_line(&index.to_string(), &word))?,
            Format::Csv => writeln!(sink, "{index},{}", symbols(&word, ","))?,
        }
    }
    sink.flush()?;
    Ok(())
}

#[derive(Deserialize)]
struct InputLine<'a> {
    #[serde(borrow)]
    index: Option<&'a RawValue>,
    word: Vec<u32>,
    q: Option<u32>,
}

fn read_input(path: &Path, q: Option<u32>) -> CliResult<Vec<(String, ZqVector)>> {
    let file = File::open(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    let mut words = Vec::new();
    for (number, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |msg: String| CliError::invalid(format!("{}:{}: {msg}", path.display(), number + 1));
        let parsed: InputLine = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
        let q = parsed.q.or(q).ok_or_else(|| bad("no alphabet size; pass --q".into()))?;
        let word = ZqVector::new(q, parsed.word).map_err(|e| bad(e.to_string()))?;
        if word.is_empty() {
            return Err(bad("empty word".into()));
        }
        let index = parsed.index.map_or_else(|| number.to_string(), |raw| raw.get().to_string());
        words.push((index, word));
    }
    Ok(words)
}

fn pmepr(
    settings: &Settings,
    input: Option<&Path>,
    q: Option<u32>,
    out: Option<&Path>,
    summary: Option<&Path>,
) -> CliResult<()> {
    let l = settings.envelope.oversample();
    let mut sink = open(out)?;
    let mut meters: HashMap<usize, PmeprMeter64> = HashMap::new();
    let mut values = Vec::new();
    let mut emit = |chunk: Vec<(String, ZqVector)>, sink: &mut dyn Write| -> CliResult<()> {
        for (_, w) in &chunk {
            if !meters.contains_key(&w.len()) {
                meters.insert(w.len(), PmeprMeter64::new(w.len(), settings.envelope)?);
            }
        }
        let measured: Vec<f64> = chunk
            .par_iter()
            .map(|(_, w)| meters[&w.len()].pmepr_word(w).expect("meter per length"))
            .collect();
        for ((index, word), r) in chunk.iter().zip(measured) {
            writeln!(sink, "{}", pmepr_line(index, word, r, l))?;
            values.push(r);
        }
        Ok(())
    };
    match input {
        Some(path) => {
            let q = q.or(settings.code.h.map(|h| 1 << h));
            let words = read_input(path, q)?;
            for chunk in words.chunks(CHUNK) {
                emit(chunk.to_vec(), &mut sink)?;
            }
        }
        None => {
            let code = Code::from_settings(settings)?;
            let mut stream = code.stream(settings)?;
            loop {
                let chunk: Vec<(String, ZqVector)> =
                    stream.by_ref().take(CHUNK).map(|(i, w)| (i.to_string(), w)).collect();
                if chunk.is_empty() {
                    break;
                }
                emit(chunk, &mut sink)?;
            }
        }
    }
    sink.flush()?;
    let csv = summary_csv(&values, l);
    match summary {
        Some(path) => std::fs::write(path, csv)?,
        None => eprint!("{csv}"),
    }
    Ok(())
}

fn info_value(code: &Code, args: &CodeArgs) -> Value {
    let mut value = json!({
        "q": code.q(),
        "n": code.n(),
        "size": code.size().to_string(),
        "log2_size": number(code.size_log2()),
        "capacity_bits": code.capacity_bits(),
    });
    let map = value.as_object_mut().expect("object literal");
    match code {
        Code::Zrm(params, _) => {
            map.insert("class".into(), json!("zrm"));
            map.insert("h".into(), json!(params.h()));
            map.insert("p".into(), json!(params.p()));
            map.insert("r".into(), json!(params.r()));
            map.insert("m".into(), json!(params.m()));
            map.insert("d_hamming".into(), json!(params.expected_min_distance(pmepr_codes::Metric::Hamming)));
            map.insert("d_lee".into(), json!(params.expected_min_distance(pmepr_codes::Metric::Lee)));
        }
        Code::Class(c) => {
            let p = c.params();
            map.insert("class".into(), json!(p.class().to_string()));
            map.insert("h".into(), json!(p.h()));
            map.insert("p".into(), json!(p.p()));
            map.insert("k".into(), json!(p.k()));
            if p.class() != CodeClass::III {
                map.insert("r".into(), json!(p.r()));
            }
            map.insert("m".into(), json!(p.m()));
            map.insert("J".into(), json!(p.split().restricted()));
            if p.class() == CodeClass::I {
                map.insert("rep_index".into(), json!(args.rep_index.unwrap_or(0)));
            }
            map.insert("cosets".into(), json!(c.coset_count().to_string()));
            map.insert("base_log2_size".into(), json!(c.base().size_log2()));
            map.insert("pmepr_bound".into(), json!(p.pmepr_bound()));
            if let Some((dh, dl)) = p.claimed_distances() {
                map.insert("d_hamming".into(), json!(dh));
                map.insert("d_lee".into(), json!(dl));
            }
        }
    }
    value
}

/// Without `--class`, reports every class the parameters admit.
fn info(args: &CodeArgs, out: Option<&Path>) -> CliResult<()> {
    let base = settings(args, &StreamArgs::default())?;
    let mut sink = open(out)?;
    match base.code.class {
        Some(_) => {
            let code = Code::from_settings(&base)?;
            writeln!(sink, "{}", info_value(&code, &base.code))?;
        }
        None => {
            let mut any = false;
            for class in [CodeClass::I, CodeClass::II, CodeClass::III] {
                let mut s = base.clone();
                s.code.class = Some(ClassArg::Class(class));
                match Code::from_settings(&s) {
                    Ok(code) => {
                        writeln!(sink, "{}", info_value(&code, &s.code))?;
                        any = true;
                    }
                    Err(e) => eprintln!("class {class}: {e}"),
                }
            }
            if !any {
                return Err(CliError::invalid("no class admits these parameters"));
            }
        }
    }
    sink.flush()?;
    Ok(())
}
