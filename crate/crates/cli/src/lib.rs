//! Argument handling and command implementations for the `klr` binary.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use klr::algebra::Klr;
use klr::cartan::{CartanDatum, Word};
use klr::degeneracy::{self, Point};
use klr::grothendieck::{kclass_json, kclass_string, verify_global_basis};
use klr::module::GradedModule;
use klr::params::{parse_assignments, Config, ParamPoint};
use klr::serial::{ModuleJson, SimpleJson};
use klr::simples::Simples;
use klr_exact::{Field, Rat, RatFunc};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "klr", version, about = "Simple modules and global-basis checks for quiver Hecke algebras")]
pub struct Cli {
    /// Built-in datum (`a2`, `a1affine`, `a2affine`) or a TOML config file.
    #[arg(long, global = true, default_value = "a1affine")]
    pub datum: String,
    /// `generic`, `c0`, symbol assignments such as `a=0`, or a TOML file with
    /// a `[params]` table. Defaults to the datum's own parameters.
    #[arg(long, global = true)]
    pub params: Option<String>,
    /// Height bound for `verify`; an upper bound on module height elsewhere.
    #[arg(long, global = true)]
    pub height: Option<u32>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the simple module with the given crystal word.
    Simple {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Character and composition factors of `L(word)` or of a module file.
    Character {
        #[arg(long, conflicts_with = "module", required_unless_present = "module")]
        word: Option<String>,
        /// Module in the JSON format written by `convolve --json`.
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Convolution product of simples, left to right.
    Convolve {
        #[arg(long = "word", required = true, num_args = 1)]
        words: Vec<String>,
    },
    /// Check the global-basis clauses for all simples up to `--height` (default 4).
    Verify,
    /// Run one of the built-in worked examples (1 or 2).
    Example {
        #[arg(long)]
        id: u32,
    },
    /// Specialize the generic `L(word)` at each grid point.
    Scan {
        #[arg(long)]
        word: String,
        /// Grid such as `a=-2..3` or `a=0,1;b=1`, or a file holding one (a
        /// `.json` file holds an array of `{symbol: value}` objects).
        #[arg(long, default_value = "")]
        grid: String,
    },
}

/// Rendered report plus whether every check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub ok: bool,
}

pub struct Setup {
    pub datum: CartanDatum,
    pub point: ParamPoint,
}

pub fn resolve(datum: &str, params: Option<&str>) -> Result<Setup> {
    let (datum, base) = if datum.ends_with(".toml") || Path::new(datum).is_file() {
        let text = std::fs::read_to_string(datum).with_context(|| format!("reading {datum}"))?;
        Config::load(&text).map_err(|e| anyhow!("config {datum}: {e}"))?
    } else {
        let d = CartanDatum::named(datum)?;
        let p = ParamPoint::preset(datum, &d);
        (d, p)
    };
    let point = match params.map(str::trim) {
        None | Some("") | Some("preset") => base,
        Some("generic") => ParamPoint::generic(&datum),
        Some("c0") => ParamPoint::c0(&datum).ok_or_else(|| anyhow!("c0 needs a symmetric Cartan matrix"))?,
        Some(p) if p.ends_with(".toml") => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {p}"))?;
            let table = params_table(&text).with_context(|| format!("params file {p}"))?;
            ParamPoint::from_table(&datum, &table)?
        }
        Some(p) => base.specialize(&datum, &parse_assignments(p)?)?,
    };
    point.validate(&datum)?;
    Ok(Setup { datum, point })
}

/// The `[params]` table of a TOML file, or its top level when there is none.
fn params_table(text: &str) -> Result<BTreeMap<String, String>> {
    let doc: toml::Table = toml::from_str(text)?;
    let table = match doc.get("params") {
        Some(toml::Value::Table(t)) => t.clone(),
        Some(_) => bail!("`params` is not a table"),
        None => doc,
    };
    table
        .into_iter()
        .map(|(k, v)| match v {
            toml::Value::String(s) => Ok((k, s)),
            toml::Value::Integer(n) => Ok((k, n.to_string())),
            other => bail!("value of {k} must be a string or integer, got {other}"),
        })
        .collect()
}

fn parse_word(datum: &CartanDatum, s: &str) -> Result<Word> {
    datum.parse_word(s).with_context(|| format!("word `{s}`"))
}

fn render(json: bool, value: Value, text: String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&value).expect("serializable");
        s.push('\n');
        s
    } else {
        text
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    if let Command::Example { id } = cli.command {
        let r = degeneracy::example_harness(id)?;
        return Ok(Outcome { report: render(cli.json, r.to_json(), r.text()), ok: r.passed() });
    }
    let setup = resolve(&cli.datum, cli.params.as_deref())?;
    if let Command::Scan { word, grid } = &cli.command {
        return scan(cli, &setup, word, grid);
    }
    if setup.point.is_rational() {
        dispatch::<Rat>(cli, &setup)
    } else {
        dispatch::<RatFunc>(cli, &setup)
    }
}

fn dispatch<F: Field + Send + Sync>(cli: &Cli, setup: &Setup) -> Result<Outcome> {
    let datum = &setup.datum;
    let symbols = setup.point.symbols();
    let klr = Klr::<F>::new(datum.clone(), setup.point.clone())?;
    let bounded = |needed: u32| -> Result<u32> {
        match cli.height {
            Some(h) if h < needed => bail!("height bound {h} is below the needed height {needed}"),
            Some(h) => Ok(h),
            None => Ok(needed),
        }
    };
    match &cli.command {
        Command::Simple { word } => {
            let b = parse_word(datum, word)?;
            let simples = Simples::new(klr, bounded(b.len() as u32)?);
            let s = simples.build(&b)?;
            let record = SimpleJson::of(&s, datum, symbols);
            let eps: Vec<String> = record.epsilon.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let text = format!(
                "L({})\n  dimension: {}\n  eps: {}\n  ch = {}\n",
                record.crystal_word,
                record.dimension,
                eps.join(", "),
                s.character.fmt_with(datum)
            );
            Ok(Outcome { report: render(cli.json, serde_json::to_value(&record)?, text), ok: true })
        }
        Command::Character { word, module } => {
            let m: GradedModule<F> = match (word, module) {
                (Some(w), _) => {
                    let b = parse_word(datum, w)?;
                    Simples::new(klr.clone(), bounded(b.len() as u32)?).build(&b)?.module.clone()
                }
                (None, Some(path)) => load_module(path, datum, symbols)?,
                (None, None) => bail!("give --word or --module"),
            };
            if let Some(v) = klr.check_relations(&m).first() {
                bail!("not a module: {v}");
            }
            let ch = m.character();
            let simples = Simples::new(klr, bounded(m.height() as u32)?);
            let factors = simples.jh_decompose(&ch, m.weight())?;
            let text = format!(
                "dimension: {}\nch = {}\n[M] = {}\n",
                m.dim(),
                ch.fmt_with(datum),
                kclass_string(&factors, datum)
            );
            let value = json!({
                "dimension": m.dim(),
                "character": serde_json::to_value(ch.to_json(datum))?,
                "factors": kclass_json(&factors, datum),
            });
            Ok(Outcome { report: render(cli.json, value, text), ok: true })
        }
        Command::Convolve { words } => {
            let words = words.iter().map(|w| parse_word(datum, w)).collect::<Result<Vec<_>>>()?;
            let total: usize = words.iter().map(Word::len).sum();
            let simples = Simples::new(klr, bounded(total as u32)?);
            let mut m = GradedModule::vacuum(datum.rank());
            for w in &words {
                m = simples.klr().convolve(&m, &simples.build(w)?.module)?.module;
            }
            let ch = m.character();
            let factors = simples.jh_decompose(&ch, m.weight())?;
            let names: Vec<String> = words.iter().map(|w| format!("L({})", datum.word_string(w))).collect();
            let text = format!(
                "{}\n  dimension: {}\n  ch = {}\n  [M] = {}\n",
                names.join(" o "),
                m.dim(),
                ch.fmt_with(datum),
                kclass_string(&factors, datum)
            );
            let value = json!({
                "factors_in": words.iter().map(|w| datum.word_string(w)).collect::<Vec<_>>(),
                "dimension": m.dim(),
                "character": serde_json::to_value(ch.to_json(datum))?,
                "factors": kclass_json(&factors, datum),
                "module": serde_json::to_value(ModuleJson::of(&m, datum, symbols))?,
            });
            Ok(Outcome { report: render(cli.json, value, text), ok: true })
        }
        Command::Verify => {
            let h = cli.height.unwrap_or(4);
            let simples = Simples::new(klr, h + 1);
            let report = verify_global_basis(&simples, h)?;
            let text = format!("{}: {}\n{}", cli.datum, setup.point.describe(datum), report.summary(datum));
            Ok(Outcome { report: render(cli.json, report.to_json(datum), text), ok: report.passed() })
        }
        Command::Example { .. } | Command::Scan { .. } => unreachable!("handled before dispatch"),
    }
}

fn load_module<F: Field>(path: &Path, datum: &CartanDatum, symbols: &[String]) -> Result<GradedModule<F>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text)?;
    // accept a bare module or the output of `convolve --json`
    let value = value.get("module").cloned().unwrap_or(value);
    let mut mj: ModuleJson = serde_json::from_value(value)?;
    if let Some(s) = mj.symbols.iter().find(|s| !symbols.contains(s)) {
        bail!("module uses symbol `{s}`, which is not a parameter symbol");
    }
    mj.symbols = symbols.to_vec();
    mj.to_module(datum).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn read_grid(spec: &str) -> Result<Vec<Point>> {
    let path = Path::new(spec);
    if !spec.is_empty() && path.is_file() {
        let text = std::fs::read_to_string(path)?;
        if path.extension().is_some_and(|e| e == "json") {
            let raw: Vec<BTreeMap<String, Value>> = serde_json::from_str(&text)?;
            return raw
                .into_iter()
                .map(|p| {
                    p.into_iter()
                        .map(|(k, v)| {
                            let s = match v {
                                Value::String(s) => s,
                                Value::Number(n) => n.to_string(),
                                other => bail!("value of {k} must be a number or string, got {other}"),
                            };
                            let r: Rat = s.parse().map_err(|_| anyhow!("bad rational `{s}` for {k}"))?;
                            Ok((k, r))
                        })
                        .collect()
                })
                .collect();
        }
        return Ok(degeneracy::parse_grid(text.trim())?);
    }
    Ok(degeneracy::parse_grid(spec)?)
}

fn scan(cli: &Cli, setup: &Setup, word: &str, grid: &str) -> Result<Outcome> {
    let datum = &setup.datum;
    let b = parse_word(datum, word)?;
    let grid = read_grid(grid)?;
    let bound = cli.height.unwrap_or(b.len() as u32).max(b.len() as u32);
    let generic = Simples::new(Klr::<RatFunc>::new(datum.clone(), setup.point.clone())?, bound);
    let reports = degeneracy::scan(&b, &generic, &grid)?;
    let mut text = String::new();
    for r in &reports {
        let point = degeneracy::point_string(&r.point);
        match &r.result {
            Ok(a) => text.push_str(&format!(
                "{point}: {}, [L] = {}, b in U_b: {}\n",
                a.verdict.as_str(),
                kclass_string(&a.factors, datum),
                a.membership
            )),
            Err(e) => text.push_str(&format!("{point}: error: {e}\n")),
        }
    }
    let value = Value::Array(reports.iter().map(|r| r.to_json(datum)).collect());
    Ok(Outcome { report: render(cli.json, value, text), ok: true })
}

/// Writes the report to `--out` or stdout.
pub fn emit(cli: &Cli, outcome: &Outcome) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, &outcome.report).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", outcome.report);
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_resolution() {
        let s = resolve("a1affine", None).unwrap();
        assert_eq!(s.point.symbols(), ["a"]);
        assert!(resolve("a1affine", Some("a=2")).unwrap().point.is_rational());
        assert_eq!(resolve("a1affine", Some("generic")).unwrap().point.symbols().len(), 3);
        assert_eq!(resolve("a1affine", Some("c0")).unwrap().point, resolve("a1affine", Some("a=-2")).unwrap().point);
        assert!(resolve("a1affine", Some("zz=1")).is_err());
        assert!(resolve("b7", None).is_err());
    }

    #[test]
    fn params_table_with_or_without_header() {
        let a = params_table("[params]\n\"t[0,1;1,1]\" = \"a\"\n\"t[0,1;2,0]\" = 1\n").unwrap();
        let b = params_table("\"t[0,1;1,1]\" = \"a\"\n\"t[0,1;2,0]\" = 1\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a["t[0,1;2,0]"], "1");
        assert!(params_table("params = 3").is_err());
    }

    #[test]
    fn height_bound_below_the_word_is_rejected() {
        let cli = Cli::try_parse_from(["klr", "--height", "1", "simple", "--word", "0011"]).unwrap();
        assert!(run(&cli).is_err());
        let cli = Cli::try_parse_from(["klr", "simple", "--word", "0011", "--height", "6"]).unwrap();
        assert!(run(&cli).unwrap().ok);
    }
}
