//! Flat `key = value` job files.
//!
//! One key per line, `#` starts a comment, list values are comma-separated.
//! Keys: `name`, `field`, `vars`, `generators`, `point`, `dim`, `task`,
//! `max_level`, `seed`, `oracle`, `trials`, `corpus`, `primes`,
//! `groebner_steps`, `groebner_degree`, `count_budget`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use jetdisc::dimension::OracleMode;
use jetdisc::field::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based; `None` for problems that belong to no single line.
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError { line: Some(line), message: message.into() }
    }

    fn global(message: impl Into<String>) -> Self {
        ParseError { line: None, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Task {
    Jets,
    Mld,
    Ioa,
    Classify,
    Cdv,
    Sweep,
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Task::Jets => "jets",
            Task::Mld => "mld",
            Task::Ioa => "ioa",
            Task::Classify => "classify",
            Task::Cdv => "cdv",
            Task::Sweep => "sweep",
        })
    }
}

impl FromStr for Task {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "jets" => Task::Jets,
            "mld" => Task::Mld,
            "ioa" => Task::Ioa,
            "classify" => Task::Classify,
            "cdv" => Task::Cdv,
            "sweep" => Task::Sweep,
            other => return Err(format!("unknown task `{other}` (expected jets, mld, ioa, classify, cdv or sweep)")),
        })
    }
}

/// Budget caps; unset entries keep the engine defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budgets {
    pub groebner_steps: Option<u64>,
    pub groebner_degree: Option<u32>,
    pub count: Option<u64>,
}

impl Budgets {
    /// Entries set in `other` win.
    pub fn overridden_by(self, other: Budgets) -> Budgets {
        Budgets {
            groebner_steps: other.groebner_steps.or(self.groebner_steps),
            groebner_degree: other.groebner_degree.or(self.groebner_degree),
            count: other.count.or(self.count),
        }
    }

    /// `steps=N,degree=D,count=C` in any order, or a bare `N` for both step and count caps.
    pub fn parse_env(s: &str) -> Result<Budgets, String> {
        let s = s.trim();
        if let Ok(n) = s.parse::<u64>() {
            return Ok(Budgets { groebner_steps: Some(n), groebner_degree: None, count: Some(n) });
        }
        let mut b = Budgets::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let bad = |_| format!("`{v}` is not a non-negative integer");
            match k.trim() {
                "steps" => b.groebner_steps = Some(v.trim().parse().map_err(bad)?),
                "degree" => b.groebner_degree = Some(v.trim().parse().map_err(bad)?),
                "count" => b.count = Some(v.trim().parse().map_err(bad)?),
                other => return Err(format!("unknown budget `{other}` (expected steps, degree or count)")),
            }
        }
        Ok(b)
    }
}

/// A value together with the line it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located<T> {
    pub value: T,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobFile {
    pub name: Option<String>,
    pub field: FieldSpec,
    pub vars: Located<Vec<String>>,
    pub generators: Option<Located<Vec<String>>>,
    pub point: Option<Located<Vec<String>>>,
    pub dim: Option<Located<usize>>,
    pub task: Task,
    pub max_level: u32,
    pub seed: u64,
    pub oracle: OracleMode,
    pub trials: usize,
    pub corpus: Option<Located<Vec<String>>>,
    pub primes: Option<Vec<u32>>,
    pub budgets: Budgets,
}

pub const DEFAULT_MAX_LEVEL: u32 = 5;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: usize = 5;

fn list(v: &str) -> Vec<String> {
    v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn field_spec(v: &str) -> Result<FieldSpec, String> {
    let t = v.trim();
    if matches!(t, "Q" | "QQ" | "0") {
        return Ok(FieldSpec::Rationals);
    }
    let digits = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("F_"))
        .or_else(|| t.strip_prefix('F'))
        .unwrap_or(t);
    let p: u64 = digits
        .parse()
        .map_err(|_| format!("unknown field `{t}` (expected QQ, GF(p) or F_p)"))?;
    FieldSpec::from_characteristic(p).map_err(|e| e.to_string())
}

impl FromStr for JobFile {
    type Err = ParseError;

    fn from_str(src: &str) -> Result<Self, ParseError> {
        let mut seen: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (i, raw) in src.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (k, v) = content
                .split_once('=')
                .ok_or_else(|| ParseError::at(line, format!("expected `key = value`, got `{content}`")))?;
            let key = k.trim().to_string();
            if key.is_empty() {
                return Err(ParseError::at(line, "empty key"));
            }
            if let Some((first, _)) = seen.get(&key) {
                return Err(ParseError::at(line, format!("duplicate key `{key}` (first set on line {first})")));
            }
            seen.insert(key, (line, v.trim().to_string()));
        }
        let mut take = |k: &str| seen.remove(k);
        fn parse<T: FromStr>(entry: &(usize, String), what: &str) -> Result<T, ParseError> {
            entry
                .1
                .parse()
                .map_err(|_| ParseError::at(entry.0, format!("invalid {what} `{}`", entry.1)))
        }
        let located = |e: (usize, String)| Located { value: list(&e.1), line: e.0 };

        let task = match take("task") {
            Some(e) => e.1.parse::<Task>().map_err(|m| ParseError::at(e.0, m))?,
            None => return Err(ParseError::global("missing required key `task`")),
        };
        let field = match take("field") {
            Some(e) => field_spec(&e.1).map_err(|m| ParseError::at(e.0, m))?,
            None => FieldSpec::Rationals,
        };
        let vars = match take("vars") {
            Some(e) => located(e),
            None => return Err(ParseError::global("missing required key `vars`")),
        };
        if vars.value.is_empty() {
            return Err(ParseError::at(vars.line, "`vars` is empty"));
        }
        let generators = take("generators").map(located);
        let corpus = take("corpus").map(located);
        match task {
            Task::Sweep if corpus.is_none() => return Err(ParseError::global("task `sweep` needs key `corpus`")),
            Task::Sweep => {}
            _ if generators.is_none() => {
                return Err(ParseError::global(format!("task `{task}` needs key `generators`")))
            }
            _ => {}
        }
        let point = take("point").map(located);
        let dim = match take("dim") {
            Some(e) => Some(Located { value: parse(&e, "dimension")?, line: e.0 }),
            None => None,
        };
        let max_level = match take("max_level") {
            Some(e) => parse(&e, "max_level")?,
            None => DEFAULT_MAX_LEVEL,
        };
        let seed = match take("seed") {
            Some(e) => parse(&e, "seed")?,
            None => DEFAULT_SEED,
        };
        let oracle = match take("oracle") {
            Some(e) => e.1.parse::<OracleMode>().map_err(|m| ParseError::at(e.0, m))?,
            None => OracleMode::Both,
        };
        let trials = match take("trials") {
            Some(e) => parse(&e, "trials")?,
            None => DEFAULT_TRIALS,
        };
        let primes = match take("primes") {
            Some(e) => Some(
                list(&e.1)
                    .iter()
                    .map(|p| p.parse::<u32>().map_err(|_| ParseError::at(e.0, format!("invalid prime `{p}`"))))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        let budgets = Budgets {
            groebner_steps: take("groebner_steps").map(|e| parse(&e, "groebner_steps")).transpose()?,
            groebner_degree: take("groebner_degree").map(|e| parse(&e, "groebner_degree")).transpose()?,
            count: take("count_budget").map(|e| parse(&e, "count_budget")).transpose()?,
        };
        let name = take("name").map(|e| e.1);
        if let Some((key, (line, _))) = seen.into_iter().next() {
            return Err(ParseError::at(line, format!("unknown key `{key}`")));
        }
        Ok(JobFile {
            name,
            field,
            vars,
            generators,
            point,
            dim,
            task,
            max_level,
            seed,
            oracle,
            trials,
            corpus,
            primes,
            budgets,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_apply() {
        let j: JobFile = "task = mld\nvars = x,y,z\ngenerators = x^2+y^2+z^2\n".parse().unwrap();
        assert_eq!(j.max_level, 5);
        assert_eq!(j.seed, 42);
        assert_eq!(j.oracle, OracleMode::Both);
        assert_eq!(j.field, FieldSpec::Rationals);
        assert_eq!(j.vars.value, ["x", "y", "z"]);
    }

    #[test]
    fn errors_carry_lines() {
        let e = "task = mld\nvars = x\n\nbogus\n".parse::<JobFile>().unwrap_err();
        assert_eq!(e.line, Some(4));
        let e = "task = mld\nvars = x\ngenerators = x\nmax_level = five\n".parse::<JobFile>().unwrap_err();
        assert_eq!(e.line, Some(4));
        let e = "task = mld\nvars = x\ngenerators = x\nvars = y\n".parse::<JobFile>().unwrap_err();
        assert_eq!(e.line, Some(4));
        let e = "task = mld\nvars = x\ngenerators = x\ncolour = red\n".parse::<JobFile>().unwrap_err();
        assert_eq!(e.line, Some(4));
    }

    #[test]
    fn field_names() {
        assert_eq!(field_spec("GF(7)"), Ok(FieldSpec::Prime(7)));
        assert_eq!(field_spec("F_32003"), Ok(FieldSpec::Prime(32003)));
        assert_eq!(field_spec("QQ"), Ok(FieldSpec::Rationals));
        assert!(field_spec("GF(8)").is_err());
    }

    #[test]
    fn env_budgets() {
        assert_eq!(
            Budgets::parse_env("steps=10, count=5"),
            Ok(Budgets { groebner_steps: Some(10), groebner_degree: None, count: Some(5) })
        );
        assert_eq!(Budgets::parse_env("7").unwrap().count, Some(7));
        assert!(Budgets::parse_env("speed=1").is_err());
    }
}
