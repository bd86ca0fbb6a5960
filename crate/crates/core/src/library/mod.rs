//! The shape-class registry, per-instance parameter sampling and the seeded
//! random streams everything else draws from.
//!
//! The default registry ships as `data/library.json`: three native solids
//! followed by 106 classes derived from 11 base shapes (polygons with 3..=9
//! vertices, stars with 5..=8 arms). Derived ids are enumerated
//! construction-major:
//!
//! | ids     | construction                  | bases          |
//! |---------|-------------------------------|----------------|
//! | 4-14    | extrude, constant profile     | all 11         |
//! | 15-25   | extrude, linear taper         | all 11         |
//! | 26-36   | extrude, smooth bulge         | all 11         |
//! | 37-47   | revolve, ring (R > 0)         | all 11         |
//! | 48-58   | revolve, solid (R = 0)        | all 11         |
//! | 59-69   | 1-layer hollow extrude        | all 11         |
//! | 70-80   | 2-layer hollow extrude        | all 11         |
//! | 81-91   | 1-layer hollow revolve, ring  | all 11         |
//! | 92-102  | 2-layer hollow revolve, ring  | all 11         |
//! | 103-109 | 1-layer hollow revolve, solid | polygons only  |
//!
//! Within a block, bases run polygon3..polygon9 then star5..star8.

mod instantiate;
mod recipe;
mod rng;

pub use instantiate::{instantiate, mask_centroid, SdfInstance};
pub use recipe::{BaseShape, Category, Construction, Interval, ShapeRanges, ShapeRecipe};
pub use rng::{derive_aux_seed, derive_sample_seed, mix64, RngStream, RNG_ALGORITHM};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::storage::sha256_hex;

/// Number of classes in the default registry.
pub const DEFAULT_CLASS_COUNT: usize = 109;

const DEFAULT_LIBRARY_JSON: &str = include_str!("../../data/library.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeLibrary {
    pub recipes: Vec<ShapeRecipe>,
    #[serde(default)]
    pub ranges: ShapeRanges,
}

/// Parses the shipped registry.
pub fn build_default_library() -> ShapeLibrary {
    ShapeLibrary::from_json(DEFAULT_LIBRARY_JSON).expect("embedded library is valid")
}

impl ShapeLibrary {
    pub fn from_json(text: &str) -> Result<Self> {
        let lib: ShapeLibrary = serde_json::from_str(text)?;
        lib.validate()?;
        Ok(lib)
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("library serializes");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<()> {
        if self.recipes.is_empty() {
            return Err(Error::Config("library has no recipes".into()));
        }
        let mut ids: Vec<u32> = self.recipes.iter().map(|r| r.id).collect();
        ids.sort_unstable();
        if ids[0] == 0 || ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Config("class ids must be unique and nonzero".into()));
        }
        for r in &self.recipes {
            let needs_base = r.category() != Category::Native;
            if needs_base != r.base.is_some() {
                return Err(Error::Config(format!("recipe {} has an inconsistent base shape", r.id)));
            }
            match r.base {
                Some(BaseShape::Polygon { vertices }) if !(3..=9).contains(&vertices) => {
                    return Err(Error::Config(format!("recipe {}: polygon needs 3..=9 vertices", r.id)));
                }
                Some(BaseShape::Star { arms }) if arms < 3 => {
                    return Err(Error::Config(format!("recipe {}: star needs at least 3 arms", r.id)));
                }
                _ => {}
            }
            if let Construction::HollowExtrude { layers, .. } | Construction::HollowRevolve { layers, .. } =
                r.construction
            {
                if layers == 0 {
                    return Err(Error::Config(format!("recipe {}: hollow needs a layer", r.id)));
                }
            }
        }
        self.ranges.validate().map_err(Error::Config)
    }

    pub fn len(&self) -> usize {
        self.recipes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.recipes.is_empty()
    }

    pub fn get(&self, id: u32) -> Option<&ShapeRecipe> {
        self.recipes.iter().find(|r| r.id == id)
    }

    pub fn max_class_id(&self) -> u32 {
        self.recipes.iter().map(|r| r.id).max().unwrap_or(0)
    }

    /// SHA-256 of the compact JSON encoding.
    pub fn content_hash(&self) -> String {
        sha256_hex(&serde_json::to_vec(self).expect("library serializes"))
    }

    fn with_recipes(&self, mut recipes: Vec<ShapeRecipe>) -> ShapeLibrary {
        recipes.sort_by_key(|r| r.id);
        ShapeLibrary {
            recipes,
            ranges: self.ranges.clone(),
        }
    }

    fn pick(&self, pool: &[&ShapeRecipe], count: usize, rng: &mut RngStream) -> Result<Vec<ShapeRecipe>> {
        if count > pool.len() {
            return Err(Error::SubsetTooLarge {
                requested: count,
                available: pool.len(),
            });
        }
        Ok(rng
            .choose_distinct(pool.len(), count)
            .into_iter()
            .map(|i| pool[i].clone())
            .collect())
    }

    /// Reduced library for ablations. Class ids are preserved.
    pub fn select_subset(&self, selector: &SubsetSelector, rng: &mut RngStream) -> Result<ShapeLibrary> {
        let of = |cat: Category| -> Vec<&ShapeRecipe> { self.recipes.iter().filter(|r| r.category() == cat).collect() };
        let picked = match selector {
            SubsetSelector::All => self.recipes.clone(),
            SubsetSelector::ExtrusionOnly(n) => self.pick(&of(Category::Extrusion), *n, rng)?,
            SubsetSelector::RevolutionHollowOnly(n) => self.pick(&of(Category::RevolutionOrHollow), *n, rng)?,
            SubsetSelector::Combined(n) => {
                let ext = n.div_ceil(2);
                let mut v = self.pick(&of(Category::Extrusion), ext, rng)?;
                v.extend(self.pick(&of(Category::RevolutionOrHollow), n - ext, rng)?);
                v
            }
            SubsetSelector::Random(n) => {
                let all: Vec<&ShapeRecipe> = self.recipes.iter().collect();
                self.pick(&all, *n, rng)?
            }
            SubsetSelector::Ids(ids) => ids
                .iter()
                .map(|&id| self.get(id).cloned().ok_or(Error::UnknownClass(id)))
                .collect::<Result<_>>()?,
        };
        Ok(self.with_recipes(picked))
    }
}

/// Which classes a generator draws from.
///
/// Text forms: `default`, `extN`, `revN`, `combinedN`, `randomN`, and
/// `ids:1,5,9`. `combinedN` takes `ceil(N/2)` extrusion classes and the rest
/// from revolution/hollow classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SubsetSelector {
    All,
    ExtrusionOnly(usize),
    RevolutionHollowOnly(usize),
    Combined(usize),
    Random(usize),
    Ids(Vec<u32>),
}

impl fmt::Display for SubsetSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetSelector::All => write!(f, "default"),
            SubsetSelector::ExtrusionOnly(n) => write!(f, "ext{n}"),
            SubsetSelector::RevolutionHollowOnly(n) => write!(f, "rev{n}"),
            SubsetSelector::Combined(n) => write!(f, "combined{n}"),
            SubsetSelector::Random(n) => write!(f, "random{n}"),
            SubsetSelector::Ids(ids) => {
                let list: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
                write!(f, "ids:{}", list.join(","))
            }
        }
    }
}

impl FromStr for SubsetSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "default" || s == "all" {
            return Ok(SubsetSelector::All);
        }
        if let Some(list) = s.strip_prefix("ids:") {
            let ids = list
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad class id {t:?}: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            if ids.is_empty() {
                return Err("empty id list".into());
            }
            return Ok(SubsetSelector::Ids(ids));
        }
        let count = |rest: &str| -> Result<usize, String> {
            match rest.parse::<usize>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(format!("bad subset count in {s:?}")),
            }
        };
        if let Some(rest) = s.strip_prefix("combined") {
            return Ok(SubsetSelector::Combined(count(rest)?));
        }
        if let Some(rest) = s.strip_prefix("random") {
            return Ok(SubsetSelector::Random(count(rest)?));
        }
        if let Some(rest) = s.strip_prefix("ext") {
            return Ok(SubsetSelector::ExtrusionOnly(count(rest)?));
        }
        if let Some(rest) = s.strip_prefix("rev") {
            return Ok(SubsetSelector::RevolutionHollowOnly(count(rest)?));
        }
        Err(format!("unknown subset {s:?}"))
    }
}

impl TryFrom<String> for SubsetSelector {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<SubsetSelector> for String {
    fn from(s: SubsetSelector) -> String {
        s.to_string()
    }
}
