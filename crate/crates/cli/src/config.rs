//! Run configuration: a flat `key = value` file with section headers.
//!
//! Command-line flags and file entries go through the same
//! [`RunConfig::set`], so both report errors by field name and a written
//! configuration parses back to an equal value.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use stgrf::bounds::TailMode;
use stgrf::simulator::ColatitudeRule;
use stgrf::spectra::VarianceConvention;
use stgrf::temporal::BasisMode;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Command {
    #[default]
    Simulate,
    Bound,
    Table,
    Verify,
    Bench,
    KernelGrid,
}

impl Command {
    const ALL: [(Command, &'static str); 6] = [
        (Command::Simulate, "simulate"),
        (Command::Bound, "bound"),
        (Command::Table, "table"),
        (Command::Verify, "verify"),
        (Command::Bench, "bench"),
        (Command::KernelGrid, "kernel-grid"),
    ];
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = Command::ALL
            .iter()
            .find(|(c, _)| c == self)
            .map(|(_, n)| *n)
            .unwrap();
        f.write_str(name)
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .iter()
            .find(|(_, n)| *n == s.trim())
            .map(|(c, _)| *c)
            .ok_or_else(|| format!("unknown command `{s}`"))
    }
}

/// Which verification the `verify` command runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyCheck {
    #[default]
    Covariance,
    Cholesky,
    Holder,
    Roundtrip,
}

impl fmt::Display for VerifyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyCheck::Covariance => "covariance",
            VerifyCheck::Cholesky => "cholesky",
            VerifyCheck::Holder => "holder",
            VerifyCheck::Roundtrip => "roundtrip",
        })
    }
}

impl FromStr for VerifyCheck {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "covariance" => Ok(VerifyCheck::Covariance),
            "cholesky" => Ok(VerifyCheck::Cholesky),
            "holder" => Ok(VerifyCheck::Holder),
            "roundtrip" => Ok(VerifyCheck::Roundtrip),
            other => Err(format!("unknown check `{other}`")),
        }
    }
}

/// Exact-solve target for table scales: `P + eps Q` at `(j, k)` equals
/// `targets[i]` for scenario `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitSpec {
    pub j: usize,
    pub k: usize,
    pub targets: Vec<f64>,
}

impl fmt::Display for FitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}:{}", self.j, self.k, join(&self.targets))
    }
}

impl FromStr for FitSpec {
    type Err = String;

    /// `J,K:t1,t2,...`.
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected `J,K:target,...`, found `{s}`");
        let (cell, targets) = s.split_once(':').ok_or_else(bad)?;
        let (j, k) = cell.split_once(',').ok_or_else(bad)?;
        Ok(FitSpec {
            j: j.trim().parse().map_err(|_| bad())?,
            k: k.trim().parse().map_err(|_| bad())?,
            targets: parse_list(targets).map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Short form such as `coef:nu1=3,nu2=2`, or a path to a spectrum
    /// document.
    pub spectrum: Option<String>,
    /// Rescales the spectrum to unit variance under this convention.
    pub convention: Option<VarianceConvention>,
    pub n_lat: usize,
    pub n_lon: usize,
    pub colatitude_rule: ColatitudeRule,
    /// `colatitude,longitude` per line, radians; replaces the lat-lon grid.
    pub points_file: Option<PathBuf>,
    pub times: Vec<f64>,
    /// Defaults to the largest time, or one when all times are zero.
    pub horizon: Option<f64>,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    pub seed: u64,
    pub basis: BasisMode,
    pub epsilon: f64,
    pub tail: TailMode,
    pub scenarios: Vec<String>,
    pub fit: Option<FitSpec>,
    pub sizes: Vec<usize>,
    pub repetitions: usize,
    pub check: VerifyCheck,
    pub n_reps: usize,
    pub n_theta: usize,
    pub n_u: usize,
    pub max_lag: f64,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub binary: Option<PathBuf>,
    pub provenance: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: Command::Simulate,
            spectrum: None,
            convention: None,
            n_lat: 100,
            n_lon: 160,
            colatitude_rule: ColatitudeRule::Equiangular,
            points_file: None,
            times: vec![0.0],
            horizon: None,
            j: vec![50],
            k: vec![50],
            seed: 0,
            basis: BasisMode::QuarterWave,
            epsilon: 8.2,
            tail: TailMode::Infinite,
            scenarios: Vec::new(),
            fit: None,
            sizes: vec![500, 1000, 2000, 4000, 8000, 16000, 32000],
            repetitions: 3,
            check: VerifyCheck::Covariance,
            n_reps: 1000,
            n_theta: 91,
            n_u: 21,
            max_lag: 1.0,
            threads: None,
            output: None,
            binary: None,
            provenance: None,
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>, T::Err> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse())
        .collect()
}

fn colatitude_rule_name(r: ColatitudeRule) -> &'static str {
    match r {
        ColatitudeRule::Gauss => "gauss",
        ColatitudeRule::Equiangular => "equiangular",
    }
}

/// `(section, key)` for every setting, in file order.
const KEYS: [(&str, &str); 28] = [
    ("run", "command"),
    ("run", "threads"),
    ("spectrum", "spectrum"),
    ("spectrum", "convention"),
    ("grid", "n_lat"),
    ("grid", "n_lon"),
    ("grid", "colatitude_rule"),
    ("grid", "points_file"),
    ("grid", "times"),
    ("grid", "horizon"),
    ("truncation", "J"),
    ("truncation", "K"),
    ("simulation", "seed"),
    ("simulation", "basis"),
    ("bound", "epsilon"),
    ("bound", "tail"),
    ("table", "scenarios"),
    ("table", "fit"),
    ("bench", "sizes"),
    ("bench", "repetitions"),
    ("verify", "check"),
    ("verify", "n_reps"),
    ("kernel-grid", "n_theta"),
    ("kernel-grid", "n_u"),
    ("kernel-grid", "max_lag"),
    ("output", "output"),
    ("output", "binary"),
    ("output", "provenance"),
];

impl RunConfig {
    /// Sets one field from text. Keys are case-sensitive except `J`/`K`,
    /// which also accept `j`/`k`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let v = value.trim();
        let field = |msg: String| CliError::Config(format!("`{key}`: {msg}"));
        fn num<T: FromStr>(v: &str) -> Result<T, String>
        where
            T::Err: fmt::Display,
        {
            v.parse::<T>()
                .map_err(|e| format!("cannot parse `{v}`: {e}"))
        }
        fn list<T: FromStr>(v: &str) -> Result<Vec<T>, String>
        where
            T::Err: fmt::Display,
        {
            parse_list::<T>(v).map_err(|e| format!("cannot parse list `{v}`: {e}"))
        }
        let opt_path = |v: &str| (!v.is_empty()).then(|| PathBuf::from(v));
        match key {
            "command" => self.command = v.parse().map_err(field)?,
            "threads" => self.threads = Some(num(v).map_err(field)?),
            "spectrum" => self.spectrum = Some(v.to_string()),
            "convention" => {
                self.convention = if v == "none" {
                    None
                } else {
                    Some(v.parse().map_err(|e: stgrf::Error| field(e.to_string()))?)
                }
            }
            "n_lat" | "nlat" => self.n_lat = num(v).map_err(field)?,
            "n_lon" | "nlon" => self.n_lon = num(v).map_err(field)?,
            "colatitude_rule" => {
                self.colatitude_rule = match v {
                    "gauss" => ColatitudeRule::Gauss,
                    "equiangular" => ColatitudeRule::Equiangular,
                    other => return Err(field(format!("unknown rule `{other}`"))),
                }
            }
            "points_file" | "points" => self.points_file = opt_path(v),
            "times" => self.times = list(v).map_err(field)?,
            "horizon" => self.horizon = Some(num(v).map_err(field)?),
            "J" | "j" => self.j = list(v).map_err(field)?,
            "K" | "k" => self.k = list(v).map_err(field)?,
            "seed" => self.seed = num(v).map_err(field)?,
            "basis" => self.basis = v.parse().map_err(|e: stgrf::Error| field(e.to_string()))?,
            "epsilon" => self.epsilon = num(v).map_err(field)?,
            "tail" => self.tail = v.parse().map_err(|e: stgrf::Error| field(e.to_string()))?,
            "scenarios" => self.scenarios = list(v).map_err(field)?,
            "fit" => self.fit = Some(v.parse().map_err(field)?),
            "sizes" => self.sizes = list(v).map_err(field)?,
            "repetitions" => self.repetitions = num(v).map_err(field)?,
            "check" => self.check = v.parse().map_err(field)?,
            "n_reps" => self.n_reps = num(v).map_err(field)?,
            "n_theta" => self.n_theta = num(v).map_err(field)?,
            "n_u" => self.n_u = num(v).map_err(field)?,
            "max_lag" => self.max_lag = num(v).map_err(field)?,
            "output" => self.output = opt_path(v),
            "binary" => self.binary = opt_path(v),
            "provenance" => self.provenance = opt_path(v),
            _ => return Err(CliError::Config(format!("unknown setting `{key}`"))),
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<String> {
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        match key {
            "command" => Some(self.command.to_string()),
            "threads" => self.threads.map(|t| t.to_string()),
            "spectrum" => self.spectrum.clone(),
            "convention" => self.convention.map(|c| c.to_string()),
            "n_lat" => Some(self.n_lat.to_string()),
            "n_lon" => Some(self.n_lon.to_string()),
            "colatitude_rule" => Some(colatitude_rule_name(self.colatitude_rule).to_string()),
            "points_file" => path(&self.points_file),
            "times" => Some(join(&self.times)),
            "horizon" => self.horizon.map(|h| h.to_string()),
            "J" => Some(join(&self.j)),
            "K" => Some(join(&self.k)),
            "seed" => Some(self.seed.to_string()),
            "basis" => Some(self.basis.to_string()),
            "epsilon" => Some(self.epsilon.to_string()),
            "tail" => Some(self.tail.to_string()),
            "scenarios" => Some(self.scenarios.join(",")),
            "fit" => self.fit.as_ref().map(|f| f.to_string()),
            "sizes" => Some(join(&self.sizes)),
            "repetitions" => Some(self.repetitions.to_string()),
            "check" => Some(self.check.to_string()),
            "n_reps" => Some(self.n_reps.to_string()),
            "n_theta" => Some(self.n_theta.to_string()),
            "n_u" => Some(self.n_u.to_string()),
            "max_lag" => Some(self.max_lag.to_string()),
            "output" => path(&self.output),
            "binary" => path(&self.binary),
            "provenance" => path(&self.provenance),
            _ => None,
        }
    }

    /// Applies a configuration document on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        let mut section = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = name.trim().to_string();
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected `key = value`", idx + 1))
            })?;
            let mut k = k.trim();
            // flat `section.key` form as written by `to_flat_text`
            let mut scope = section.as_str();
            if let Some((sec, key)) = k.split_once('.') {
                if KEYS.contains(&(sec, key)) {
                    (scope, k) = (sec, key);
                }
            }
            if let Some((want, _)) = KEYS.iter().find(|(_, key)| *key == k) {
                if !scope.is_empty() && scope != *want {
                    return Err(CliError::Config(format!(
                        "line {}: `{k}` belongs in [{want}], not [{scope}]",
                        idx + 1
                    )));
                }
            }
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let mut c = Self::default();
        c.apply_text(text)?;
        Ok(c)
    }

    /// Every setting, grouped by section. Unset optional fields are omitted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut current = "";
        for (section, key) in KEYS {
            let Some(value) = self.get(key) else { continue };
            if section != current {
                if !current.is_empty() {
                    out.push('\n');
                }
                let _ = writeln!(out, "[{section}]");
                current = section;
            }
            let _ = writeln!(out, "{key} = {value}");
        }
        out
    }

    /// `section.key = value` lines, for embedding in other documents.
    pub fn to_flat_text(&self) -> String {
        let mut out = String::new();
        for (section, key) in KEYS {
            if let Some(value) = self.get(key) {
                let _ = writeln!(out, "{section}.{key} = {value}");
            }
        }
        out
    }

    pub fn j_max(&self) -> Result<usize, CliError> {
        single(&self.j, "J")
    }

    pub fn k_max(&self) -> Result<usize, CliError> {
        single(&self.k, "K")
    }

    pub fn horizon(&self) -> f64 {
        self.horizon.unwrap_or_else(|| {
            let t = self.times.iter().copied().fold(0.0, f64::max);
            if t > 0.0 {
                t
            } else {
                1.0
            }
        })
    }
}

fn single(v: &[usize], name: &str) -> Result<usize, CliError> {
    match v {
        [x] => Ok(*x),
        _ => Err(CliError::Config(format!(
            "`{name}` must be a single value here, found {}",
            v.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = RunConfig::default();
        assert_eq!(RunConfig::from_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn populated_round_trip() {
        let mut c = RunConfig::default();
        for (k, v) in [
            ("command", "table"),
            ("spectrum", "coef2:tau=1.5"),
            ("convention", "truncated-mode-sum:10,20"),
            ("times", "0.1,0.30000000000000004,2"),
            ("horizon", "2.5"),
            ("J", "50,100,150"),
            ("tail", "capped:200"),
            ("scenarios", "3:2,2:2"),
            ("fit", "50,50:0.02257,0.09927"),
            ("threads", "3"),
            ("output", "out/table.csv"),
            ("colatitude_rule", "gauss"),
        ] {
            c.set(k, v).unwrap();
        }
        let text = c.to_text();
        assert_eq!(RunConfig::from_text(&text).unwrap(), c, "{text}");
    }

    #[test]
    fn errors_name_the_field() {
        let mut c = RunConfig::default();
        let e = c.set("seed", "seven").unwrap_err().to_string();
        assert!(e.contains("seed"), "{e}");
        let e = RunConfig::from_text("[grid]\nwidth = 3")
            .unwrap_err()
            .to_string();
        assert!(e.contains("width"), "{e}");
        let e = RunConfig::from_text("[grid]\nseed = 3")
            .unwrap_err()
            .to_string();
        assert!(e.contains("[simulation]"), "{e}");
        assert!(c.set("J", "1,2").is_ok() && c.j_max().is_err());
    }
}
