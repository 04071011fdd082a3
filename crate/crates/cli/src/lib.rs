//! `eahc`: encode, decode, inspect and benchmark EAHn containers.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use eah_core::adaptive_graph::AdaptiveGraph;
use eah_core::baselines::{huffman_stream_length, lz78_encode};
use eah_core::eah_codec::{decompress, encode};
use rayon::prelude::*;

pub const DEFAULT_MAX_ORDER: usize = 3;

#[derive(Debug, Parser)]
#[command(name = "eahc", version, about = "EAHn compressor")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compress a file into an EAH1 container.
    Encode {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Restore the original bytes of a container.
    Decode {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compare EAHn against the Huffman and LZ78 baselines on one file.
    Stats {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        orders: OrdersArg,
        /// Also write the rows as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write the adaptive graph of a file as Graphviz DOT.
    Graph {
        #[arg(short, long)]
        input: PathBuf,
        /// Defaults to standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Run `stats` over every file of a directory and write one CSV.
    Bench {
        /// Corpus directory.
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        orders: OrdersArg,
        /// Defaults to standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct OrderArg {
    /// Context length n.
    #[arg(short = 'n', long = "order", default_value_t = 1)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct OrdersArg {
    /// Comma-separated context lengths.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub orders: Vec<usize>,
}

/// One line of `stats` and `bench` output. Sizes are in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub file: String,
    pub h: u64,
    pub n: usize,
    pub leahn: u64,
    pub lh: u64,
    pub llz: u64,
}

impl BenchRow {
    pub const HEADER: [&'static str; 7] = ["file", "h", "n", "LEAHn", "LH", "LLZ", "ratio"];

    /// EAHn bits per input bit.
    pub fn ratio(&self) -> f64 {
        self.leahn as f64 / (8 * self.h) as f64
    }

    fn record(&self) -> [String; 7] {
        [
            self.file.clone(),
            self.h.to_string(),
            self.n.to_string(),
            self.leahn.to_string(),
            self.lh.to_string(),
            self.llz.to_string(),
            format!("{:.6}", self.ratio()),
        ]
    }
}

/// Largest order accepted, from `EAHC_MAX_ORDER`.
pub fn max_order() -> Result<usize> {
    match std::env::var("EAHC_MAX_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("EAHC_MAX_ORDER is not a number: {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn check_order(n: usize, max: usize) -> Result<()> {
    if n == 0 {
        bail!("order must be at least 1");
    }
    if n > max {
        bail!("order {n} exceeds the limit {max} (raise it with EAHC_MAX_ORDER)");
    }
    Ok(())
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

/// Measures one file at one order, checking that the container decodes
/// back to `data`.
pub fn bench_row(file: &str, data: &[u8], n: usize) -> Result<BenchRow> {
    let out = encode(data, n).with_context(|| format!("{file}: encoding failed"))?;
    let restored =
        decompress(&out.to_bytes()).with_context(|| format!("{file}: decoding failed"))?;
    if restored != data {
        bail!("{file}: round trip changed the data (n = {n})");
    }
    Ok(BenchRow {
        file: file.to_owned(),
        h: data.len() as u64,
        n,
        leahn: out.payload.total_bits(),
        lh: huffman_stream_length(data)?,
        llz: lz78_encode(data)?.bits.len(),
    })
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(BenchRow::HEADER)?;
    for row in rows {
        writer.write_record(row.record())?;
    }
    writer.flush()?;
    Ok(())
}

fn file_label(path: &Path) -> String {
    path.file_name()
        .unwrap_or(path.as_os_str())
        .to_string_lossy()
        .into_owned()
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    let max = max_order()?;
    match cli.command {
        Command::Encode {
            input,
            output,
            order,
        } => {
            check_order(order.order, max)?;
            let data = read(&input)?;
            let out = encode(&data, order.order)?;
            write(&output, &out.to_bytes())?;
            let [a, b, c, d, e] = out.payload.component_lengths();
            writeln!(
                stdout,
                "|A|={a} |B|={b} |C|={c} |D|={d} |E|={e} total={}",
                a + b + c + d + e
            )?;
        }
        Command::Decode { input, output } => {
            let bytes = read(&input)?;
            let data = decompress(&bytes)
                .with_context(|| format!("{}: corrupt container", input.display()))?;
            write(&output, &data)?;
            writeln!(stdout, "h={}", data.len())?;
        }
        Command::Stats { input, orders, csv } => {
            for &n in &orders.orders {
                check_order(n, max)?;
            }
            let data = read(&input)?;
            let label = file_label(&input);
            let rows = orders
                .orders
                .iter()
                .map(|&n| bench_row(&label, &data, n))
                .collect::<Result<Vec<_>>>()?;
            for row in &rows {
                writeln!(
                    stdout,
                    "{} h={} n={} LEAHn={} LH={} LLZ={} ratio={:.6}",
                    row.file,
                    row.h,
                    row.n,
                    row.leahn,
                    row.lh,
                    row.llz,
                    row.ratio()
                )?;
            }
            if let Some(path) = csv {
                let file = fs::File::create(&path)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                write_csv(&rows, file)?;
            }
        }
        Command::Graph {
            input,
            output,
            order,
        } => {
            check_order(order.order, max)?;
            let data = read(&input)?;
            let mut graph = AdaptiveGraph::build(&data, order.order)?;
            graph.assign_codewords();
            let dot = graph.export_dot();
            match output {
                Some(path) => write(&path, dot.as_bytes())?,
                None => stdout.write_all(dot.as_bytes())?,
            }
        }
        Command::Bench { input, orders, csv } => {
            for &n in &orders.orders {
                check_order(n, max)?;
            }
            let rows = bench_directory(&input, &orders.orders)?;
            match csv {
                Some(path) => {
                    let file = fs::File::create(&path)
                        .with_context(|| format!("cannot write {}", path.display()))?;
                    write_csv(&rows, file)?;
                }
                None => write_csv(&rows, &mut *stdout)?,
            }
        }
    }
    Ok(())
}

/// Rows for every regular file directly inside `dir`, sorted by file name
/// and then order.
pub fn bench_directory(dir: &Path, orders: &[usize]) -> Result<Vec<BenchRow>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("cannot read {}", dir.display()))? {
        let path = entry?.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    let tasks: Vec<(&PathBuf, usize)> = files
        .iter()
        .flat_map(|f| orders.iter().map(move |&n| (f, n)))
        .collect();
    let mut rows = tasks
        .par_iter()
        .map(|&(path, n)| {
            let data = read(path)?;
            bench_row(&file_label(path), &data, n)
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|x, y| x.file.cmp(&y.file).then(x.n.cmp(&y.n)));
    Ok(rows)
}
