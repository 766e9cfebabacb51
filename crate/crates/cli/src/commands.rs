use std::fs;
use std::path::{Path, PathBuf};

use lzkit::channel::{run_experiment, ChannelSpec, ExperimentConfig, ExperimentReport, FsChannel};
use lzkit::codec::{
    code_length, decrypt_bit_len, lz78_decode, lz78_encode, otp_apply, BitStream, KeyStream,
};
use lzkit::divergence::{Classification, Classifier, LabeledCorpus};
use lzkit::ensemble::{
    ball_members, build_universal_with_limit, rd_point_with, Distortion, DistortionBall,
    DEFAULT_LIMIT,
};
use lzkit::inference::{markov_order_profile, test_fair_coin, test_memoryless, TestVerdict};
use lzkit::sequential::{
    gamble_sequence, predict_sequence, sequential_code_length, PredictionMode,
};
use lzkit::{cross_parse, incremental_parse, lz_complexity};
use serde::Serialize;

use crate::args::{Command, Mode};
use crate::error::CliError;
use crate::input::{codec_alphabet, load, load_all, read, strip_newline, write};

pub const SCHEMA_VERSION: u32 = 1;
pub const BUDGET_ENV: &str = "LZKIT_MEM_BUDGET";

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema_version: u32,
    command: &'static str,
    #[serde(flatten)]
    report: T,
}

fn emit<T: Serialize>(command: &'static str, report: T) -> Result<String, CliError> {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        report,
    };
    serde_json::to_string_pretty(&env).map_err(|e| CliError::Input(e.to_string()))
}

fn budget_override() -> Result<Option<u64>, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => {
            v.trim().parse().map(Some).map_err(|_| {
                CliError::Input(format!("{BUDGET_ENV}={v:?} is not an unsigned integer"))
            })
        }
        Err(_) => Ok(None),
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

#[derive(Serialize)]
struct CompressReport {
    input: String,
    output: String,
    n: usize,
    alphabet_size: u32,
    phrases: usize,
    payload_bits: u64,
    file_bytes: usize,
    bits_per_symbol: f64,
}

#[derive(Serialize)]
struct DecompressReport {
    input: String,
    output: String,
    n: u32,
    alphabet_size: u32,
    payload_bits: usize,
}

#[derive(Serialize)]
struct EncryptReport {
    input: String,
    output: String,
    direction: &'static str,
    payload_bits: usize,
    key_bits_consumed: usize,
}

#[derive(Serialize)]
struct ComplexityReport {
    n: usize,
    alphabet_size: u32,
    c: usize,
    rho_lz: f64,
}

#[derive(Serialize)]
struct DivergenceReport {
    n: usize,
    c_x: usize,
    c_cross: usize,
    delta: f64,
}

#[derive(Serialize)]
struct ClassifyReport {
    n: usize,
    classes: Vec<String>,
    #[serde(flatten)]
    result: Classification,
}

#[derive(Serialize)]
struct TestReport {
    n: usize,
    lambda: f64,
    #[serde(flatten)]
    verdict: TestVerdict,
}

#[derive(Serialize)]
struct OrderReport {
    n: usize,
    lambda: f64,
    k_max: usize,
    order: Option<usize>,
    rho_lz: f64,
    entropies: Vec<f64>,
}

#[derive(Serialize)]
struct ChannelReport {
    budget: u64,
    #[serde(flatten)]
    report: ExperimentReport,
}

#[derive(Serialize)]
struct PredictReport {
    n: usize,
    alpha: f64,
    mode: PredictionMode,
    seed: u64,
    errors: usize,
    error_rate: f64,
    predictions: String,
}

#[derive(Serialize)]
struct GambleReport {
    n: usize,
    alpha: f64,
    growth: f64,
    code_length_bits: f64,
    rho_lz: f64,
}

#[derive(Serialize)]
struct RdReport {
    n: usize,
    alphabet_size: u32,
    distortion: &'static str,
    d: f64,
    ball_size: usize,
    log2_z: f64,
    rho: f64,
}

fn default_decompressed(input: &Path) -> PathBuf {
    match input.extension() {
        Some(ext) if ext == "lz78" => input.with_extension(""),
        _ => {
            let mut s = input.as_os_str().to_owned();
            s.push(".out");
            PathBuf::from(s)
        }
    }
}

fn key_stream(key: &Option<PathBuf>, seed: Option<u64>) -> Result<KeyStream, CliError> {
    match (key, seed) {
        (Some(path), _) => Ok(KeyStream::from_bytes(read(path)?)),
        (None, Some(s)) => Ok(KeyStream::seeded(s)),
        (None, None) => Err(CliError::Input("give --key or --key-seed".into())),
    }
}

/// Execute one subcommand and return its JSON report.
pub fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Compress {
            input,
            output,
            alphabet,
        } => {
            let output = output.unwrap_or_else(|| {
                let mut s = input.as_os_str().to_owned();
                s.push(".lz78");
                PathBuf::from(s)
            });
            let data = read(&input)?;
            let data = if alphabet.binary_ascii {
                strip_newline(&data)
            } else {
                &data
            };
            let x = lzkit::Sequence::from_bytes(codec_alphabet(&alphabet)?, data)?;
            let stream = lz78_encode(&x);
            let bytes = stream.to_bytes()?;
            write(&output, &bytes)?;
            emit(
                "compress",
                CompressReport {
                    input: display(&input),
                    output: display(&output),
                    n: x.len(),
                    alphabet_size: x.alphabet().size(),
                    phrases: incremental_parse(&x).c(),
                    payload_bits: code_length(&x),
                    file_bytes: bytes.len(),
                    bits_per_symbol: if x.is_empty() {
                        0.0
                    } else {
                        stream.bit_len as f64 / x.len() as f64
                    },
                },
            )
        }
        Command::Decompress {
            input,
            output,
            alphabet,
        } => {
            let output = output.unwrap_or_else(|| default_decompressed(&input));
            let mut stream = BitStream::from_bytes(&read(&input)?)?;
            let x = lz78_decode(&stream, &codec_alphabet(&alphabet)?)?;
            let bits = stream.resolve_bit_len()?;
            let bytes = x
                .to_bytes()
                .ok_or_else(|| CliError::Input("alphabet has no byte rendering".into()))?;
            write(&output, &bytes)?;
            emit(
                "decompress",
                DecompressReport {
                    input: display(&input),
                    output: display(&output),
                    n: stream.n,
                    alphabet_size: stream.alphabet_size,
                    payload_bits: bits,
                },
            )
        }
        Command::Encrypt {
            input,
            output,
            key,
            key_seed,
            decrypt,
        } => {
            let mut stream = BitStream::from_bytes(&read(&input)?)?;
            let mut keys = key_stream(&key, key_seed)?;
            stream.bit_len = if decrypt {
                decrypt_bit_len(&stream, &keys)?
            } else {
                stream.resolve_bit_len()?
            };
            let mut out = otp_apply(&stream, &mut keys)?;
            if decrypt {
                out.payload.truncate(out.bit_len.div_ceil(8));
            }
            write(&output, &out.to_bytes()?)?;
            emit(
                "encrypt",
                EncryptReport {
                    input: display(&input),
                    output: display(&output),
                    direction: if decrypt { "decrypt" } else { "encrypt" },
                    payload_bits: out.bit_len,
                    key_bits_consumed: keys.consumed(),
                },
            )
        }
        Command::Complexity { input, alphabet } => {
            let x = load(&input, &alphabet)?;
            let rho = lz_complexity(&x)?;
            emit(
                "complexity",
                ComplexityReport {
                    n: x.len(),
                    alphabet_size: x.alphabet().size(),
                    c: incremental_parse(&x).c(),
                    rho_lz: rho,
                },
            )
        }
        Command::Divergence { x, y, alphabet } => {
            let mut seqs = load_all(&[x, y], &alphabet)?;
            let y = seqs.pop().unwrap();
            let x = seqs.pop().unwrap();
            let delta = lzkit::divergence::lz_divergence(&x, &y)?;
            emit(
                "divergence",
                DivergenceReport {
                    n: x.len(),
                    c_x: incremental_parse(&x).c(),
                    c_cross: cross_parse(&x, &y)?.count(),
                    delta,
                },
            )
        }
        Command::Classify {
            input,
            corpus,
            alphabet,
        } => {
            let mut files: Vec<PathBuf> = fs::read_dir(&corpus)
                .map_err(|e| CliError::Input(format!("{}: {e}", corpus.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            files.sort();
            if files.is_empty() {
                return Err(CliError::Input(format!(
                    "{}: no training files",
                    corpus.display()
                )));
            }
            let labels: Vec<String> = files
                .iter()
                .map(|p| {
                    p.file_stem()
                        .unwrap_or_default()
                        .to_string_lossy()
                        .into_owned()
                })
                .collect();
            files.push(input);
            let mut seqs = load_all(&files, &alphabet)?;
            let x = seqs.pop().unwrap();
            let corpus = LabeledCorpus::new(labels.iter().cloned().zip(seqs).collect())?;
            let result = Classifier::new(&corpus)?.classify(&x)?;
            emit(
                "classify",
                ClassifyReport {
                    n: x.len(),
                    classes: labels,
                    result,
                },
            )
        }
        Command::TestRandom {
            input,
            lambda,
            alphabet,
        } => {
            let x = load(&input, &alphabet)?;
            let verdict = test_fair_coin(&x, lambda)?;
            emit(
                "test-random",
                TestReport {
                    n: x.len(),
                    lambda,
                    verdict,
                },
            )
        }
        Command::TestMemoryless {
            input,
            lambda,
            alphabet,
        } => {
            let x = load(&input, &alphabet)?;
            let verdict = test_memoryless(&x, lambda)?;
            emit(
                "test-memoryless",
                TestReport {
                    n: x.len(),
                    lambda,
                    verdict,
                },
            )
        }
        Command::OrderEstimate {
            input,
            lambda,
            k_max,
            alphabet,
        } => {
            let x = load(&input, &alphabet)?;
            let p = markov_order_profile(&x, lambda, k_max)?;
            emit(
                "order-estimate",
                OrderReport {
                    n: x.len(),
                    lambda,
                    k_max,
                    order: p.order,
                    rho_lz: p.rho_lz,
                    entropies: p.entropies,
                },
            )
        }
        Command::ChannelSim {
            channel,
            n,
            m,
            trials,
            seed,
        } => {
            let text = String::from_utf8(read(&channel)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", channel.display())))?;
            let spec: ChannelSpec = toml::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", channel.display())))?;
            let ch = FsChannel::from_spec(&spec)?;
            let mut cfg = ExperimentConfig::new(n, m, trials, seed);
            if let Some(b) = budget_override()? {
                cfg.budget = b;
            }
            let report = run_experiment(&ch, &cfg)?;
            emit(
                "channel-sim",
                ChannelReport {
                    budget: cfg.budget,
                    report,
                },
            )
        }
        Command::Predict {
            input,
            alpha,
            mode,
            seed,
            alphabet,
        } => {
            let x = load(&input, &alphabet)?;
            let mode = match mode {
                Mode::Deterministic => PredictionMode::Deterministic,
                Mode::Randomized => PredictionMode::Randomized,
            };
            let r = predict_sequence(&x, alpha, mode, seed)?;
            let predictions = r
                .predictions
                .iter()
                .map(|&s| if s == 0 { '0' } else { '1' })
                .collect();
            emit(
                "predict",
                PredictReport {
                    n: x.len(),
                    alpha,
                    mode,
                    seed,
                    errors: r.errors,
                    error_rate: r.error_rate,
                    predictions,
                },
            )
        }
        Command::Gamble {
            input,
            alpha,
            alphabet,
        } => {
            let x = load(&input, &alphabet)?;
            emit(
                "gamble",
                GambleReport {
                    n: x.len(),
                    alpha,
                    growth: gamble_sequence(&x, alpha)?,
                    code_length_bits: sequential_code_length(&x, alpha)?,
                    rho_lz: lz_complexity(&x)?,
                },
            )
        }
        Command::Rd {
            n,
            file,
            distortion,
            d,
            alphabet,
        } => {
            let x = load(&file, &alphabet)?;
            if x.len() != n {
                return Err(CliError::Input(format!(
                    "{} holds {} symbols, expected --n {n}",
                    file.display(),
                    x.len()
                )));
            }
            let distortion = Distortion::from_name(&distortion)?;
            let limit = budget_override()?.unwrap_or(DEFAULT_LIMIT);
            let dist = build_universal_with_limit(n, x.alphabet(), limit)?;
            let rho = rd_point_with(&x, d, distortion, &dist)?;
            let ball = DistortionBall {
                center: x.clone(),
                radius: d,
                distortion,
            };
            emit(
                "rd",
                RdReport {
                    n,
                    alphabet_size: x.alphabet().size(),
                    distortion: distortion.name(),
                    d,
                    ball_size: ball_members(&ball, &dist)?.len(),
                    log2_z: dist.z().log2(),
                    rho,
                },
            )
        }
    }
}
