//! Datum configurations: JSON ingestion and the built-in catalog.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_datum::{
    types, validate_datum, CoweightVec, RawDatum, RealRootDatum, RootSystem, WeightVec,
};
use crate::scalar::Scalar;
use crate::torus::{Capabilities, Caps, RealTorus};

/// A rational written as a JSON integer or as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Int(i64),
    Str(String),
}

impl RationalInput {
    pub fn parse<S: Scalar>(&self) -> Result<S> {
        match self {
            RationalInput::Int(n) => Ok(S::from_int(*n)),
            RationalInput::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("not a rational number: {s:?}"))),
        }
    }
}

pub fn parse_rationals<S: Scalar>(v: &[RationalInput]) -> Result<Vec<S>> {
    v.iter().map(RationalInput::parse).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaConfig {
    #[serde(default)]
    pub u: Option<Vec<RationalInput>>,
    #[serde(default)]
    pub s: Option<Vec<RationalInput>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsConfig {
    #[serde(default)]
    pub weyl: Option<usize>,
    #[serde(default)]
    pub hyperplanes: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumConfig {
    pub name: String,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub sigma: Vec<Vec<i64>>,
    #[serde(default, rename = "lambda_B", alias = "lambda_b")]
    pub lambda_b: Option<Vec<i64>>,
    #[serde(default)]
    pub gamma: Option<GammaConfig>,
    #[serde(default)]
    pub borel: Option<Vec<usize>>,
    #[serde(default)]
    pub caps: Option<CapsConfig>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

impl DatumConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn raw(&self) -> RawDatum {
        RawDatum {
            rank: self.rank,
            roots: self.roots.clone(),
            coroots: self.coroots.clone(),
            sigma: self.sigma.clone(),
        }
    }

    pub fn datum<S: Scalar>(&self) -> Result<RealRootDatum<S>> {
        validate_datum(&self.raw()).map_err(Error::InvalidDatum)
    }

    pub fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(c) = &self.caps {
            caps.weyl = c.weyl.unwrap_or(caps.weyl);
            caps.hyperplanes = c.hyperplanes.unwrap_or(caps.hyperplanes);
        }
        caps
    }

    pub fn torus<S: Scalar>(&self) -> Result<RealTorus<S>> {
        RealTorus::new(self.datum()?, self.caps())
    }

    pub fn lambda_b<S: Scalar>(&self) -> Option<WeightVec<S>> {
        self.lambda_b.as_deref().map(WeightVec::from_ints)
    }

    /// `(u, s)`, zero where absent.
    pub fn gamma<S: Scalar>(&self) -> Result<(CoweightVec<S>, CoweightVec<S>)> {
        let g = self.gamma.clone().unwrap_or_default();
        let read = |v: &Option<Vec<RationalInput>>| -> Result<CoweightVec<S>> {
            match v {
                None => Ok(CoweightVec::zeros(self.rank)),
                Some(v) if v.len() == self.rank => Ok(CoweightVec(parse_rationals(v)?)),
                Some(v) => Err(Error::Config(format!(
                    "gamma parameter has {} entries, expected {}",
                    v.len(),
                    self.rank
                ))),
            }
        };
        Ok((read(&g.u)?, read(&g.s)?))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub config: DatumConfig,
    pub capabilities: Capabilities,
}

fn integral<S: Scalar>(v: &[S]) -> Vec<i64> {
    v.iter()
        .map(|c| c.as_integer().expect("catalog systems are integral"))
        .collect()
}

fn config_from_system<S: Scalar>(
    name: &str,
    sys: &RootSystem<S>,
    sigma: Vec<Vec<i64>>,
) -> DatumConfig {
    DatumConfig {
        name: name.into(),
        rank: sys.dim(),
        roots: sys.roots().iter().map(|r| integral(r.coords())).collect(),
        coroots: sys.coroots().iter().map(|c| integral(c.coords())).collect(),
        sigma,
        lambda_b: None,
        gamma: None,
        borel: None,
        caps: None,
        tolerance: None,
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn minus_identity(n: usize) -> Vec<Vec<i64>> {
    identity(n)
        .into_iter()
        .map(|r| r.into_iter().map(|x| -x).collect())
        .collect()
}

fn swap() -> Vec<Vec<i64>> {
    vec![vec![0, 1], vec![1, 0]]
}

type Q = num_rational::BigRational;

fn sl2() -> RootSystem<Q> {
    RootSystem::new(
        1,
        vec![WeightVec::from_ints(&[2]), WeightVec::from_ints(&[-2])],
        vec![CoweightVec::from_ints(&[1]), CoweightVec::from_ints(&[-1])],
    )
    .expect("valid")
}

fn gl2() -> RootSystem<Q> {
    RootSystem::new(
        2,
        vec![
            WeightVec::from_ints(&[1, -1]),
            WeightVec::from_ints(&[-1, 1]),
        ],
        vec![
            CoweightVec::from_ints(&[1, -1]),
            CoweightVec::from_ints(&[-1, 1]),
        ],
    )
    .expect("valid")
}

/// The built-in data, in a fixed order.
pub fn builtin_configs() -> Vec<DatumConfig> {
    let c2 = types::c_n::<Q>(2);
    let a1a1 = types::product(&sl2(), &sl2());
    vec![
        config_from_system("sl2-split", &sl2(), identity(1)),
        config_from_system("sl2-compact", &sl2(), minus_identity(1)),
        config_from_system("gl2-split", &gl2(), identity(2)),
        config_from_system("sp4-split", &c2, identity(2)),
        config_from_system("sp4-swap", &c2, swap()),
        config_from_system("sp4-compact", &c2, minus_identity(2)),
        config_from_system("a1xa1-split", &a1a1, identity(2)),
        config_from_system("a1xa1-swap", &a1a1, swap()),
        config_from_system("b3-split", &types::b_n::<Q>(3), identity(3)),
        config_from_system("g2-split", &types::g2::<Q>(), identity(2)),
        config_from_system("f4-split", &types::f4::<Q>(), identity(4)),
        config_from_system("d4-split", &types::d_n::<Q>(4), identity(4)),
    ]
}

pub fn builtin_config(name: &str) -> Option<DatumConfig> {
    builtin_configs().into_iter().find(|c| c.name == name)
}

/// A split datum for a Cartan type name such as `B2` or `A1xA1`.
pub fn system_config(name: &str) -> Option<DatumConfig> {
    let sys = types::by_name::<Q>(name)?;
    let n = sys.dim();
    Some(config_from_system(name, &sys, identity(n)))
}

/// Catalog name, type name, or path to a JSON file, in that order.
pub fn resolve(name: &str) -> Result<DatumConfig> {
    if let Some(c) = builtin_config(name) {
        return Ok(c);
    }
    if let Some(c) = system_config(name) {
        return Ok(c);
    }
    let path = Path::new(name);
    if path.exists() {
        return DatumConfig::load(path);
    }
    Err(Error::Config(format!(
        "{name:?} is neither a catalog entry, a system name nor a readable file"
    )))
}

/// The catalog with capability flags recomputed.
pub fn builtin_catalog() -> Result<Vec<CatalogEntry>> {
    builtin_configs()
        .into_iter()
        .map(|config| {
            let capabilities = config.torus::<Q>()?.capabilities();
            Ok(CatalogEntry {
                config,
                capabilities,
            })
        })
        .collect()
}
