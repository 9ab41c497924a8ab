//! Run configuration: a flat `key = value` file, then command-line
//! overrides applied on top in order.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{generate_ba, generate_ws, Graph};
use crate::greedy::Strategy;
use crate::linalg::SolverSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "model")]
pub enum GeneratorSpec {
    Ws { n: usize, k_ring: usize, p_rewire: f64 },
    Ba { n: usize, attach: usize },
}

impl GeneratorSpec {
    pub fn build(&self, seed: u64) -> Result<Graph> {
        match *self {
            GeneratorSpec::Ws { n, k_ring, p_rewire } => generate_ws(n, k_ring, p_rewire, seed),
            GeneratorSpec::Ba { n, attach } => generate_ba(n, attach, seed),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            GeneratorSpec::Ws { n, k_ring, p_rewire } => format!("ws-{n}-{k_ring}-{p_rewire}"),
            GeneratorSpec::Ba { n, attach } => format!("ba-{n}-{attach}"),
        }
    }
}

fn number<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::InvalidParameter(format!("cannot parse {what} from {s:?}")))
}

/// `ws N K P` or `ba N M`.
impl FromStr for GeneratorSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: Vec<&str> = s.split_whitespace().collect();
        match t.as_slice() {
            ["ws", n, k, p] => Ok(GeneratorSpec::Ws {
                n: number(n, "node count")?,
                k_ring: number(k, "ring degree")?,
                p_rewire: number(p, "rewiring probability")?,
            }),
            ["ba", n, m] => Ok(GeneratorSpec::Ba {
                n: number(n, "node count")?,
                attach: number(m, "attachment count")?,
            }),
            _ => Err(Error::InvalidParameter(format!(
                "generator spec {s:?} is not `ws N K P` or `ba N M`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphSource {
    File(PathBuf),
    Generate(GeneratorSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Targets {
    /// Node labels as they appear in the input.
    Labels(Vec<u64>),
    Random(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Exact,
    Approx,
    Baseline(Strategy),
    Oracle,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Approx => "approx",
            Algorithm::Baseline(s) => s.name(),
            Algorithm::Oracle => "oracle",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Algorithm::Exact),
            "approx" => Ok(Algorithm::Approx),
            "oracle" => Ok(Algorithm::Oracle),
            other => Ok(Algorithm::Baseline(other.parse().map_err(|_| {
                Error::InvalidParameter(format!("unknown algorithm {other:?}"))
            })?)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::InvalidParameter(format!("unknown output format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub source: Option<GraphSource>,
    /// Read a third column as the edge weight.
    pub weighted: bool,
    /// Network name used in tables; defaults to the file stem or generator.
    pub name: Option<String>,
    pub targets: Targets,
    pub k: usize,
    pub algorithms: Vec<Algorithm>,
    pub epsilon: f64,
    pub weight: f64,
    pub seed: u64,
    pub solver: SolverSpec,
    pub m_cap: Option<usize>,
    pub out: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            source: None,
            weighted: false,
            name: None,
            targets: Targets::Random(10),
            k: 1,
            algorithms: Vec::new(),
            epsilon: 0.3,
            weight: 1.0,
            seed: 0,
            solver: SolverSpec::default(),
            m_cap: None,
            out: PathBuf::from("out"),
            formats: vec![Format::Json, Format::Csv],
        }
    }
}

fn list<T: FromStr<Err = Error>>(value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

impl RunConfig {
    /// Set one key. Later calls override earlier ones.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "graph" => self.source = Some(GraphSource::File(PathBuf::from(value))),
            "generate" => self.source = Some(GraphSource::Generate(value.parse()?)),
            "weighted" => self.weighted = number(value, "weighted flag")?,
            "name" => self.name = Some(value.to_string()),
            "target" | "targets" => {
                self.targets = Targets::Labels(
                    value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| number(s, "target label"))
                        .collect::<Result<_>>()?,
                )
            }
            "random_targets" => self.targets = Targets::Random(number(value, "target count")?),
            "k" => self.k = number(value, "k")?,
            "algo" | "algorithms" => self.algorithms = list(value)?,
            "epsilon" => self.epsilon = number(value, "epsilon")?,
            "weight" => self.weight = number(value, "candidate weight")?,
            "seed" => self.seed = number(value, "seed")?,
            "solver_mode" => self.solver.mode = value.parse()?,
            "residual_target" => self.solver.residual_target = number(value, "residual target")?,
            "max_iterations" => self.solver.max_iterations = number(value, "iteration cap")?,
            "preconditioner" => self.solver.preconditioner = value.parse()?,
            "m_cap" => {
                self.m_cap = match value {
                    "" | "none" => None,
                    v => Some(number(v, "sample cap")?),
                }
            }
            "out" => self.out = PathBuf::from(value),
            "format" => self.formats = list(value)?,
            other => return Err(Error::InvalidParameter(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: "expected `key = value`".into(),
            })?;
            cfg.set(key, value)?;
        }
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn apply<'a, I>(&mut self, overrides: I) -> Result<()>
    where
        I: IntoIterator<Item = (&'a str, String)>,
    {
        for (k, v) in overrides {
            self.set(k, &v)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match &self.source {
            None => return bad("no graph given (set `graph` or `generate`)".into()),
            Some(GraphSource::File(p)) if !p.exists() => {
                return bad(format!("graph file {} does not exist", p.display()))
            }
            _ => {}
        }
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.algorithms.is_empty() {
            return bad("at least one algorithm is required".into());
        }
        if self.algorithms.contains(&Algorithm::Approx) && !(self.epsilon > 0.0 && self.epsilon <= 0.5) {
            return bad(format!("epsilon {} outside (0, 1/2]", self.epsilon));
        }
        if !(self.weight > 0.0 && self.weight.is_finite()) {
            return bad(format!("candidate weight {} must be positive", self.weight));
        }
        match &self.targets {
            Targets::Labels(l) if l.is_empty() => return bad("empty target list".into()),
            Targets::Random(0) => return bad("random target count must be at least 1".into()),
            _ => {}
        }
        if self.m_cap == Some(0) {
            return bad("sample cap must be at least 1".into());
        }
        if self.formats.is_empty() {
            return bad("at least one output format is required".into());
        }
        self.solver.validate()
    }

    pub fn network_name(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        match &self.source {
            Some(GraphSource::File(p)) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "graph".into()),
            Some(GraphSource::Generate(g)) => g.label(),
            None => "graph".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ToleranceMode;

    #[test]
    fn parse_and_override() {
        let mut cfg = RunConfig::parse(
            "# demo\ngenerate = ws 50 4 0.1\nk = 3\nalgo = exact, approx, top-cent\nseed = 7 # inline\n",
        )
        .unwrap();
        assert_eq!(
            cfg.source,
            Some(GraphSource::Generate(GeneratorSpec::Ws {
                n: 50,
                k_ring: 4,
                p_rewire: 0.1
            }))
        );
        assert_eq!(cfg.algorithms.len(), 3);
        cfg.apply([("k", "5".to_string()), ("solver_mode", "literal".to_string())])
            .unwrap();
        assert_eq!(cfg.k, 5);
        assert_eq!(cfg.solver.mode, ToleranceMode::BoundDerived);
        assert_eq!(cfg.seed, 7);
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.network_name(), "ws-50-4-0.1");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("k 3").is_err());
        assert!(RunConfig::parse("colour = blue").is_err());
        assert!(RunConfig::parse("algo = pagerank").is_err());
        assert!(RunConfig::parse("generate = er 10 0.5").is_err());
        let cfg = RunConfig::parse("generate = ba 20 2\nalgo = exact\nk = 0").unwrap();
        assert!(cfg.validate().is_err());
        let cfg = RunConfig::parse("graph = /no/such/file\nalgo = exact").unwrap();
        assert!(cfg.validate().is_err());
        let cfg = RunConfig::parse("generate = ba 20 2").unwrap();
        assert!(cfg.validate().is_err());
    }
}
