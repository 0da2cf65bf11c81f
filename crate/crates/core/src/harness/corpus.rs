//! The `corpus.toml` index and loading of its items.
//!
//! ```toml
//! [[item]]
//! name = "trunc3-k"
//! ring = "rings/trunc3.ring"
//! module = "modules/trunc3_k.mod"
//! wrt = "omega"            # "omega", "self" or a module file
//! ideal = "ideals/x2.ideal" # optional
//! max_bound = 4            # optional cap on the homological bound
//!
//! [item.expect]
//! linked = true
//! lambda = "modules/trunc3_x2.mod"
//! lambda_twist = 4
//! status = { L = "pass", C = "skipped" }
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::module::FPModule;
use crate::parse::{parse_ideal, parse_module, parse_ring};
use crate::poly::Poly;
use crate::ring::QRing;
use crate::semidual::canonical_module;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusIndex {
    #[serde(default)]
    pub item: Vec<ItemSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ItemSpec {
    pub name: String,
    pub ring: PathBuf,
    pub module: PathBuf,
    #[serde(default = "default_wrt")]
    pub wrt: String,
    pub ideal: Option<PathBuf>,
    pub max_bound: Option<usize>,
    #[serde(default)]
    pub expect: Pins,
}

fn default_wrt() -> String {
    "omega".into()
}

/// Expected engine output; a mismatch fails the item.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pins {
    /// Horizontal linkage verdict with respect to the designated `C`.
    pub linked: Option<bool>,
    /// Verdict of linkage by the ideal with respect to the canonical module
    /// of the quotient.
    pub ideal_linked: Option<bool>,
    /// Bass class membership of the module with respect to `C`.
    pub bass: Option<bool>,
    /// A module file `L` with `λ(C, M) ≅ L(lambda_twist)`.
    pub lambda: Option<PathBuf>,
    #[serde(default)]
    pub lambda_twist: i32,
    /// Expected status per suite: "pass", "fail" or "skipped".
    #[serde(default)]
    pub status: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Wrt {
    Omega,
    SelfRing,
    Explicit(PathBuf),
}

impl Wrt {
    pub fn parse(s: &str) -> Wrt {
        match s {
            "omega" => Wrt::Omega,
            "self" => Wrt::SelfRing,
            p => Wrt::Explicit(PathBuf::from(p)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Wrt::Omega => "omega".into(),
            Wrt::SelfRing => "self".into(),
            Wrt::Explicit(p) => p.display().to_string(),
        }
    }
}

/// A parsed item.
#[derive(Clone, Debug)]
pub struct Item {
    pub name: String,
    pub ring: QRing,
    pub module_name: String,
    pub module: FPModule,
    pub wrt: Wrt,
    pub c: FPModule,
    pub ideal: Option<(String, Vec<Poly>)>,
    pub max_bound: Option<usize>,
    pub pins: Pins,
    pub lambda_pin: Option<FPModule>,
}

fn read(base: &Path, p: &Path) -> Result<String> {
    let path = base.join(p);
    std::fs::read_to_string(&path)
        .map_err(|e| Error::Definition(format!("cannot read {}: {e}", path.display())))
}

fn context(e: Error, p: &Path) -> Error {
    Error::Definition(format!("{}: {e}", p.display()))
}

/// The module `C` designated by `wrt` over `ring`.
pub fn designated(ring: &QRing, wrt: &Wrt, base: &Path) -> Result<FPModule> {
    match wrt {
        Wrt::Omega => canonical_module(ring),
        Wrt::SelfRing => Ok(FPModule::free(ring.clone(), vec![0])),
        Wrt::Explicit(p) => Ok(parse_module(&read(base, p)?, ring).map_err(|e| context(e, p))?.1),
    }
}

/// Loads the files of one item relative to `base`.
pub fn load_item(spec: &ItemSpec, base: &Path) -> Result<Item> {
    let ring = parse_ring(&read(base, &spec.ring)?).map_err(|e| context(e, &spec.ring))?;
    let (module_name, module) = parse_module(&read(base, &spec.module)?, &ring).map_err(|e| context(e, &spec.module))?;
    let wrt = Wrt::parse(&spec.wrt);
    let c = designated(&ring, &wrt, base)?;
    let ideal = match &spec.ideal {
        Some(p) => Some(parse_ideal(&read(base, p)?, &ring).map_err(|e| context(e, p))?),
        None => None,
    };
    let lambda_pin = match &spec.expect.lambda {
        Some(p) => Some(parse_module(&read(base, p)?, &ring).map_err(|e| context(e, p))?.1),
        None => None,
    };
    Ok(Item {
        name: spec.name.clone(),
        ring,
        module_name,
        module,
        wrt,
        c,
        ideal,
        max_bound: spec.max_bound,
        pins: spec.expect.clone(),
        lambda_pin,
    })
}

/// Reads `dir/corpus.toml`; a missing index is an empty corpus.
pub fn read_index(dir: &Path) -> Result<CorpusIndex> {
    let path = dir.join("corpus.toml");
    if !path.exists() {
        return Ok(CorpusIndex::default());
    }
    let text = std::fs::read_to_string(&path)?;
    let index: CorpusIndex =
        toml::from_str(&text).map_err(|e| Error::Definition(format!("{}: {e}", path.display())))?;
    let mut names: Vec<&str> = index.item.iter().map(|i| i.name.as_str()).collect();
    names.sort();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Definition(format!("duplicate item name `{}`", w[0])));
    }
    Ok(index)
}
