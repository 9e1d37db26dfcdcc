//! The `fmm` command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 I/O, 3 format or corrupt data.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::container::{compress, decompress, inspect, HEADER_LEN, MAGIC, VERSION};
use crate::error::Error;
use crate::image::RasterImage;
use crate::metrics::{compression_ratio, psnr, QualityReport};
use crate::netpbm::{read_netpbm, write_netpbm};
use crate::quant::Modulus;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fmm", version, about = "Five modulus lossy image codec")]
pub struct Cli {
    /// Print extra detail
    #[arg(short, long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compress a PGM/PPM image into an .fmm container
    Compress {
        input: PathBuf,
        output: PathBuf,
        /// Quantization modulus (odd, 3..=127)
        #[arg(short = 'k', long, default_value_t = 5)]
        modulus: u32,
    },
    /// Decode an .fmm container to PGM (gray) or PPM (RGB)
    Decompress { input: PathBuf, output: PathBuf },
    /// Report MSE, RMSE, PSNR and per-channel standard deviation of two images
    Compare { a: PathBuf, b: PathBuf },
    /// Dump the per-block fields of an .fmm container
    Inspect { input: PathBuf },
    /// Compress every PGM/PPM in a directory and tabulate PSNR and CR
    Bench {
        dir: PathBuf,
        #[arg(short = 'k', long, default_value_t = 5)]
        modulus: u32,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io {
        path: PathBuf,
        source: io::Error,
    },
    Codec {
        path: Option<PathBuf>,
        source: Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Codec {
                source: Error::InvalidModulus(_),
                ..
            } => EXIT_USAGE,
            CliError::Codec { .. } => EXIT_FORMAT,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Codec {
                path: Some(path),
                source,
            } => write!(f, "{}: {source}", path.display()),
            CliError::Codec { path: None, source } => write!(f, "{source}"),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn codec_at(path: &Path) -> impl FnOnce(Error) -> CliError + '_ {
    move |source| CliError::Codec {
        path: Some(path.to_path_buf()),
        source,
    }
}

fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, data: &[u8]) -> CliResult {
    fs::write(path, data).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_image(path: &Path) -> CliResult<RasterImage> {
    read_netpbm(&read_file(path)?).map_err(codec_at(path))
}

fn modulus(k: u32) -> CliResult<Modulus> {
    Modulus::new(k).map_err(|source| CliError::Codec { path: None, source })
}

fn check_distinct(input: &Path, output: &Path) -> CliResult {
    let same = input == output
        || matches!(
            (fs::canonicalize(input), fs::canonicalize(output)),
            (Ok(a), Ok(b)) if a == b
        );
    if same {
        return Err(CliError::Usage(format!(
            "input and output are the same file: {}",
            input.display()
        )));
    }
    Ok(())
}

fn io_out(e: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Compress {
            input,
            output,
            modulus: k,
        } => cmd_compress(input, output, modulus(*k)?, cli.verbose, out),
        Command::Decompress { input, output } => cmd_decompress(input, output, cli.verbose, out),
        Command::Compare { a, b } => cmd_compare(a, b, out),
        Command::Inspect { input } => cmd_inspect(input, out),
        Command::Bench { dir, modulus: k } => cmd_bench(dir, modulus(*k)?, out, err),
    }
}

pub fn cmd_compress(
    input: &Path,
    output: &Path,
    k: Modulus,
    verbose: bool,
    out: &mut dyn Write,
) -> CliResult {
    check_distinct(input, output)?;
    let img = read_image(input)?;
    let bytes = compress(&img, k).map_err(codec_at(input))?;
    write_file(output, &bytes)?;
    let channels = img.channels().count();
    let payload = bytes.len() - HEADER_LEN - 4 * channels;
    let cr =
        compression_ratio(img.byte_len() as u64, bytes.len() as u64).map_err(codec_at(input))?;
    if verbose {
        writeln!(
            out,
            "{}x{}x{channels} modulus={k}",
            img.width(),
            img.height()
        )
        .map_err(io_out)?;
    }
    writeln!(
        out,
        "original={} compressed={} payload={payload} cr={cr:.2}",
        img.byte_len(),
        bytes.len()
    )
    .map_err(io_out)
}

pub fn cmd_decompress(
    input: &Path,
    output: &Path,
    verbose: bool,
    out: &mut dyn Write,
) -> CliResult {
    check_distinct(input, output)?;
    let data = read_file(input)?;
    let img = decompress(&data).map_err(codec_at(input))?;
    write_file(output, &write_netpbm(&img))?;
    if verbose {
        writeln!(
            out,
            "{}x{}x{} -> {}",
            img.width(),
            img.height(),
            img.channels().count(),
            output.display()
        )
        .map_err(io_out)?;
    }
    Ok(())
}

fn join_sigmas(s: &[f64]) -> String {
    s.iter()
        .map(|v| format!("{v:.4}"))
        .collect::<Vec<_>>()
        .join("\t")
}

pub fn cmd_compare(a: &Path, b: &Path, out: &mut dyn Write) -> CliResult {
    let img_a = read_image(a)?;
    let img_b = read_image(b)?;
    let report = QualityReport::compare(&img_a, &img_b)
        .map_err(|source| CliError::Codec { path: None, source })?;
    let psnr = match report.psnr.decibels() {
        Some(db) => format!("{db:.4}"),
        None => "lossless".to_string(),
    };
    writeln!(out, "mse\t{:.6}", report.mse).map_err(io_out)?;
    writeln!(out, "rmse\t{:.6}", report.rmse).map_err(io_out)?;
    writeln!(out, "psnr\t{psnr}").map_err(io_out)?;
    writeln!(out, "sigma_a\t{}", join_sigmas(&report.sigma_original)).map_err(io_out)?;
    writeln!(out, "sigma_b\t{}", join_sigmas(&report.sigma_reconstructed)).map_err(io_out)
}

pub fn cmd_inspect(input: &Path, out: &mut dyn Write) -> CliResult {
    let data = read_file(input)?;
    let info = inspect(&data).map_err(codec_at(input))?;
    let h = info.header;
    writeln!(
        out,
        "header magic={} version={VERSION} modulus={} width={} height={} channels={}",
        String::from_utf8_lossy(&MAGIC),
        h.modulus,
        h.width,
        h.height,
        h.channels.count()
    )
    .map_err(io_out)?;
    for (c, ch) in info.channels.iter().enumerate() {
        writeln!(
            out,
            "channel {c} stream_bytes={} stream_bits={} blocks={}",
            ch.stream_bytes,
            ch.stream_bits,
            ch.blocks.len()
        )
        .map_err(io_out)?;
        for b in &ch.blocks {
            let g = b.geometry;
            let e = &b.encoded;
            let mut line = format!(
                "c{c} b{},{} {}x{} min={} rep={}",
                g.block_row, g.block_col, g.rows, g.cols, e.min_index, e.repetition as u8
            );
            if e.repetition {
                line.push_str(&format!(" bits={}", b.bits));
            } else {
                let original_bits = g.len() * 8;
                line.push_str(&format!(
                    " max={} width={} bits={} delta_bits={} original_bits={original_bits} ratio={:.2}",
                    e.max_delta,
                    e.delta_width(),
                    b.bits,
                    e.delta_bits(),
                    original_bits as f64 / e.delta_bits() as f64
                ));
            }
            writeln!(out, "{line}").map_err(io_out)?;
        }
    }
    Ok(())
}

/// One successfully benchmarked image.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub name: String,
    pub psnr_db: Option<f64>,
    pub cr: f64,
}

pub fn bench_image(img: &RasterImage, k: Modulus) -> Result<(Option<f64>, f64), Error> {
    let bytes = compress(img, k)?;
    let back = decompress(&bytes)?;
    let psnr = psnr(img, &back)?.decibels();
    let cr = compression_ratio(img.byte_len() as u64, bytes.len() as u64)?;
    Ok((psnr, cr))
}

pub fn cmd_bench(dir: &Path, k: Modulus, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let io_err = |source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();

    let mut rows = Vec::new();
    for path in &paths {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let result = read_file(path).and_then(|data| {
            let img = read_netpbm(&data).map_err(codec_at(path))?;
            bench_image(&img, k).map_err(codec_at(path))
        });
        match result {
            Ok((psnr_db, cr)) => rows.push(BenchRow { name, psnr_db, cr }),
            Err(e) => {
                let _ = writeln!(err, "warning: skipping {e}");
            }
        }
    }
    if rows.is_empty() {
        return Err(CliError::Codec {
            path: Some(dir.to_path_buf()),
            source: Error::Format("no decodable PGM/PPM images".into()),
        });
    }

    let fmt_psnr = |p: Option<f64>| p.map_or("lossless".to_string(), |db| format!("{db:.4}"));
    writeln!(out, "image\tpsnr_db\tcr").map_err(io_out)?;
    for r in &rows {
        writeln!(out, "{}\t{}\t{:.4}", r.name, fmt_psnr(r.psnr_db), r.cr).map_err(io_out)?;
    }
    let finite: Vec<f64> = rows.iter().filter_map(|r| r.psnr_db).collect();
    let mean_psnr = (!finite.is_empty()).then(|| finite.iter().sum::<f64>() / finite.len() as f64);
    let mean_cr = rows.iter().map(|r| r.cr).sum::<f64>() / rows.len() as f64;
    writeln!(out, "mean\t{}\t{mean_cr:.4}", fmt_psnr(mean_psnr)).map_err(io_out)
}
