use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use pmepr_codes::{format_significant, ZqVector};
use serde_json::Value;

pub const DIGITS: usize = 9;

pub fn open(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn fixed(x: f64) -> String {
    format_significant(x, DIGITS)
}

/// JSON number carrying `x` rounded to the fixed number of significant digits.
pub fn number(x: f64) -> Value {
    fixed(x).parse::<serde_json::Number>().map(Value::Number).unwrap_or(Value::Null)
}

pub fn symbols(word: &ZqVector, sep: &str) -> String {
    word.values().iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

/// `{"index":...,"word":[...]}` with the index written verbatim.
pub fn word_line(index: &str, word: &ZqVector) -> String {
    format!("{{\"index\":{index},\"word\":[{}]}}", symbols(word, ","))
}

pub fn pmepr_line(index: &str, word: &ZqVector, pmepr: f64, oversample: usize) -> String {
    format!(
        "{{\"index\":{index},\"word\":[{}],\"pmepr\":{},\"oversample\":{oversample}}}",
        symbols(word, ","),
        fixed(pmepr)
    )
}

/// Nearest-rank quantile of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    let rank = (q * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

pub fn summary_csv(values: &[f64], oversample: usize) -> String {
    let mut header = "count,min,mean,max,p50,p90,p99,oversample\n".to_string();
    if values.is_empty() {
        header.push_str(&format!("0,,,,,,,{oversample}\n"));
        return header;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
    let row = [
        sorted[0],
        mean,
        sorted[sorted.len() - 1],
        quantile(&sorted, 0.5),
        quantile(&sorted, 0.9),
        quantile(&sorted, 0.99),
    ]
    .map(fixed)
    .join(",");
    header.push_str(&format!("{},{row},{oversample}\n", sorted.len()));
    header
}
