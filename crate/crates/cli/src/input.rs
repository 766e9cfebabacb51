use std::fs;
use std::path::{Path, PathBuf};

use lzkit::{Alphabet, Sequence};

use crate::args::AlphabetArgs;
use crate::error::CliError;

pub fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, data: &[u8]) -> Result<(), CliError> {
    fs::write(path, data).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn strip_newline(data: &[u8]) -> &[u8] {
    let data = data.strip_suffix(b"\n").unwrap_or(data);
    data.strip_suffix(b"\r").unwrap_or(data)
}

/// Turn several files into sequences over one shared alphabet. In raw-bytes
/// mode the alphabet is every byte seen in any of them, ascending.
pub fn load_all(paths: &[PathBuf], mode: &AlphabetArgs) -> Result<Vec<Sequence>, CliError> {
    let mut raw = Vec::with_capacity(paths.len());
    for p in paths {
        let mut data = read(p)?;
        if mode.binary_ascii {
            data.truncate(strip_newline(&data).len());
        }
        raw.push(data);
    }
    let alphabet = if mode.binary_ascii {
        Alphabet::binary()
    } else if let Some(list) = &mode.symbols {
        Alphabet::with_bytes(list.as_bytes())?
    } else {
        let all: Vec<u8> = raw.iter().flatten().copied().collect();
        if all.is_empty() {
            return Err(CliError::Input("empty input".into()));
        }
        Alphabet::infer_from_bytes(&all)?
    };
    raw.iter()
        .zip(paths)
        .map(|(data, p)| {
            Sequence::from_bytes(alphabet.clone(), data)
                .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        })
        .collect()
}

pub fn load(path: &Path, mode: &AlphabetArgs) -> Result<Sequence, CliError> {
    Ok(load_all(&[path.to_path_buf()], mode)?.remove(0))
}

/// Alphabet for the codec: raw mode uses all 256 bytes so that a
/// compressed file decodes without side information.
pub fn codec_alphabet(mode: &AlphabetArgs) -> Result<Alphabet, CliError> {
    Ok(if mode.binary_ascii {
        Alphabet::binary()
    } else if let Some(list) = &mode.symbols {
        Alphabet::with_bytes(list.as_bytes())?
    } else {
        Alphabet::full_bytes()
    })
}
