//! Dataset files.
//!
//! Text: a header line `PSRT v1 <family> n=<n> seed=<seed> [key=value ...]`
//! followed by one decimal key per line. Keys are written in Rust's shortest
//! round-trip form, so reading a file back yields bit-identical doubles.
//!
//! Binary: the 5-byte magic `PSRT1`, a little-endian `u64` count, then that
//! many little-endian IEEE-754 doubles.
//!
//! [`Dataset::read`] detects the format from the first bytes.

use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::datagen::{Family, GeneratorSpec, KeyDomain};
use crate::error::{Error, Result};

pub const BINARY_MAGIC: &[u8; 5] = b"PSRT1";
const TEXT_MAGIC: &str = "PSRT v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Binary,
}

/// Parsed text header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub family: String,
    pub n: usize,
    pub seed: Option<u64>,
    /// Remaining `key=value` pairs in file order.
    pub params: Vec<(String, String)>,
}

impl Header {
    pub fn for_spec(spec: &GeneratorSpec) -> Self {
        Self::parse(&spec.header_line()).expect("generated header parses")
    }

    /// Header for data that did not come from a generator.
    pub fn external(n: usize) -> Self {
        Self { family: "external".into(), n, seed: None, params: Vec::new() }
    }

    pub fn parse(line: &str) -> Result<Self> {
        let rest = line
            .trim()
            .strip_prefix(TEXT_MAGIC)
            .ok_or_else(|| Error::Dataset(format!("header must start with `{TEXT_MAGIC}`")))?;
        let mut tokens = rest.split_whitespace();
        let family = tokens.next().ok_or_else(|| Error::Dataset("header is missing the family".into()))?.to_string();
        let mut n = None;
        let mut seed = None;
        let mut params = Vec::new();
        for tok in tokens {
            let (k, v) =
                tok.split_once('=').ok_or_else(|| Error::Dataset(format!("header token `{tok}` is not key=value")))?;
            match k {
                "n" => n = Some(parse_num::<usize>(k, v)?),
                "seed" => seed = Some(parse_num::<u64>(k, v)?),
                _ => params.push((k.to_string(), v.to_string())),
            }
        }
        let n = n.ok_or_else(|| Error::Dataset("header is missing n=".into()))?;
        Ok(Self { family, n, seed, params })
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    /// Rebuilds the generator spec, when the header describes one.
    pub fn spec(&self) -> Result<GeneratorSpec> {
        let seed = self.seed.ok_or_else(|| Error::Dataset("header has no seed".into()))?;
        let need =
            |key: &str| self.param(key).ok_or_else(|| Error::Dataset(format!("{} header needs {key}=", self.family)));
        let family = match self.family.as_str() {
            "random" => Family::Random,
            "runs" => Family::Runs {
                run_len: parse_num("R", need("R")?)?,
                run_percent: parse_num("run_percent", need("run_percent")?)?,
                direction: need("direction")?.parse()?,
            },
            "k_nearly" => Family::KNearly { k: parse_num("k", need("k")?)? },
            "prefix_sorted" => Family::PrefixSorted { percent: parse_num("pp", need("pp")?)? },
            other => return Err(Error::Dataset(format!("`{other}` is not a generator family"))),
        };
        let keys = match self.param("keys") {
            None => KeyDomain::Uniform,
            Some(v) => {
                let m = v.strip_prefix("int:").ok_or_else(|| Error::Dataset(format!("unknown key domain `{v}`")))?;
                KeyDomain::SmallInts(parse_num("keys", m)?)
            }
        };
        Ok(GeneratorSpec { family, n: self.n, seed, keys })
    }

    pub fn line(&self) -> String {
        let mut s = format!("{TEXT_MAGIC} {} n={}", self.family, self.n);
        if let Some(seed) = self.seed {
            s.push_str(&format!(" seed={seed}"));
        }
        for (k, v) in &self.params {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Dataset(format!("bad value `{v}` for {key}")))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    /// `None` for binary files, which carry no header.
    pub header: Option<Header>,
    pub keys: Vec<f64>,
}

impl Dataset {
    pub fn generate(spec: &GeneratorSpec) -> Result<Self> {
        Ok(Self { header: Some(Header::for_spec(spec)), keys: spec.generate_keys()? })
    }

    pub fn write(&self, out: impl Write, format: Format) -> Result<()> {
        let mut out = BufWriter::new(out);
        match format {
            Format::Text => {
                let header = self.header.clone().unwrap_or_else(|| Header::external(self.keys.len()));
                writeln!(out, "{}", header.line())?;
                for k in &self.keys {
                    writeln!(out, "{k}")?;
                }
            }
            Format::Binary => {
                out.write_all(BINARY_MAGIC)?;
                out.write_all(&(self.keys.len() as u64).to_le_bytes())?;
                for k in &self.keys {
                    out.write_all(&k.to_le_bytes())?;
                }
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn read(input: impl Read) -> Result<Self> {
        let mut input = BufReader::new(input);
        let head = input.fill_buf()?;
        if head.starts_with(BINARY_MAGIC) {
            Self::read_binary(input)
        } else {
            Self::read_text(input)
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read(std::fs::File::open(path)?)
    }

    pub fn save(&self, path: &Path, format: Format) -> Result<()> {
        self.write(std::fs::File::create(path)?, format)
    }

    fn read_binary(mut input: impl Read) -> Result<Self> {
        let mut magic = [0u8; 5];
        input.read_exact(&mut magic)?;
        let mut count = [0u8; 8];
        input.read_exact(&mut count).map_err(|_| Error::Dataset("binary file truncated before count".into()))?;
        let count = u64::from_le_bytes(count);
        let mut keys = Vec::new();
        let mut word = [0u8; 8];
        for i in 0..count {
            input
                .read_exact(&mut word)
                .map_err(|_| Error::Dataset(format!("binary file truncated at key {i} of {count}")))?;
            keys.push(check_key(f64::from_le_bytes(word), i as usize)?);
        }
        if input.read(&mut word)? != 0 {
            return Err(Error::Dataset(format!("trailing bytes after {count} keys")));
        }
        Ok(Self { header: None, keys })
    }

    fn read_text(input: impl BufRead) -> Result<Self> {
        let mut lines = input.lines();
        let first = lines.next().ok_or_else(|| Error::Dataset("empty file".into()))??;
        let header = Header::parse(&first)?;
        let mut keys = Vec::with_capacity(header.n);
        for line in lines {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let k: f64 =
                t.parse().map_err(|_| Error::Dataset(format!("bad key `{t}` on data line {}", keys.len() + 1)))?;
            keys.push(check_key(k, keys.len())?);
        }
        if keys.len() != header.n {
            return Err(Error::Dataset(format!("header says n={} but file has {} keys", header.n, keys.len())));
        }
        Ok(Self { header: Some(header), keys })
    }
}

fn check_key(k: f64, index: usize) -> Result<f64> {
    if k.is_nan() {
        Err(Error::Dataset(format!("key {index} is NaN")))
    } else {
        Ok(k)
    }
}
