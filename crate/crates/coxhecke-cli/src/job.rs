use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use coxhecke::cartan::{CartanMatrix, TypeLetter};
use coxhecke::coxgroup::{CoxeterGroup, DEFAULT_ENUMERATION_CAP};
use coxhecke::ring::WeightFunction;
use serde_json::Value;

use crate::codec::cyc_from_json;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

/// Group selection and the options shared by every command.
#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    /// Type name such as F4, I2(8), H3xG2, or a single letter used with --rank/--bond
    #[arg(long = "type", value_name = "TYPE", conflicts_with = "cartan_file")]
    pub kind: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Bond order m for type I2(m)
    #[arg(long)]
    pub bond: Option<u32>,
    /// JSON array of rows; entries are rationals or {conductor, coords} objects
    #[arg(long, value_name = "FILE")]
    pub cartan_file: Option<PathBuf>,
    /// Comma-separated weights L(s_0),...,L(s_{n-1}); equal parameters if omitted
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<i64>>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Directory holding computed cell partitions
    #[arg(long, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for cell induction (default: all cores)
    #[arg(long)]
    pub threads: Option<usize>,
    /// Refuse to enumerate groups with more elements than this
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP as u64)]
    pub max_order: u64,
    /// Induce one cell per star orbit (equal parameters only)
    #[arg(long, value_enum, default_value = "off")]
    pub star_induction: Switch,
    /// Induce one cell per pair related by the longest element (equal parameters only)
    #[arg(long, value_enum, default_value = "off")]
    pub longest_pairing: Switch,
}

impl JobArgs {
    pub fn group(&self) -> Result<CoxeterGroup, CliError> {
        let cartan = match (&self.kind, &self.cartan_file) {
            (Some(kind), None) => return Ok(self.typed_group(kind)?.with_enumeration_cap(self.max_order as u128)),
            (None, Some(path)) => read_cartan(path)?,
            _ => return Err(CliError::Input(String::from("give exactly one of --type or --cartan-file"))),
        };
        Ok(CoxeterGroup::new(cartan)?.with_enumeration_cap(self.max_order as u128))
    }

    fn typed_group(&self, kind: &str) -> Result<CoxeterGroup, CliError> {
        let unknown = || CliError::Input(format!("unknown type {kind:?}"));
        let mut chars = kind.chars();
        let letter = chars.next().and_then(TypeLetter::from_char).ok_or_else(unknown)?;
        let rest = chars.as_str();
        let named_rank: Option<usize> = rest.parse().ok();
        if !rest.is_empty() && (named_rank.is_none() || (self.rank.is_none() && self.bond.is_none())) {
            if self.rank.is_some() || self.bond.is_some() {
                return Err(CliError::Input(format!("--rank and --bond do not combine with {kind}")));
            }
            return Ok(CoxeterGroup::from_name(kind)?);
        }
        let rank = match (letter, self.rank.or(named_rank)) {
            (TypeLetter::I, None | Some(2)) => 2,
            (TypeLetter::I, Some(r)) => return Err(CliError::Input(format!("type I has rank 2, not {r}"))),
            (_, Some(r)) => r,
            (_, None) => return Err(CliError::Input(format!("type {letter:?} needs --rank"))),
        };
        if letter == TypeLetter::I && self.bond.is_none() {
            return Err(CliError::Input(String::from("type I2 needs --bond")));
        }
        Ok(CoxeterGroup::from_type(letter, rank, self.bond)?)
    }

    pub fn weights(&self, group: &CoxeterGroup) -> Result<WeightFunction, CliError> {
        match &self.weights {
            None => Ok(WeightFunction::equal(group.rank())),
            Some(w) => Ok(WeightFunction::validate(group.coxeter_matrix(), w)?),
        }
    }
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_cartan(path: &Path) -> Result<CartanMatrix, CliError> {
    let v = read_json(path)?;
    let rows = v.as_array().ok_or_else(|| CliError::Input(String::from("Cartan file must hold an array of rows")))?;
    let entries = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| CliError::Input(format!("Cartan row {row} is not an array")))?
                .iter()
                .map(cyc_from_json)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CartanMatrix::new(entries)?)
}
