//! Algebra construction, algebra and identity files, and thread setup.

use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use idforge::algebras::{build_jordan_h, build_ljy, build_ly, build_ly3_transvection, build_ly4_tensor, AnyAlgebra};
use idforge::exactfield::{FieldDescriptor, PrimeField, QuadSqrt2};
use idforge::freeops::{catalog, IntPoly, OpSet};
use idforge::idfinder::KnownIdentity;
use serde_json::Value;

/// Algebra families that `build` knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Ly,
    Ljy,
    Ly3Transvection,
    Ly4Tensor,
    JordanH,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ly" => Ok(Family::Ly),
            "ljy" => Ok(Family::Ljy),
            "ly3-transvection" => Ok(Family::Ly3Transvection),
            "ly4-tensor" => Ok(Family::Ly4Tensor),
            "jordan-h" => Ok(Family::JordanH),
            _ => Err(format!("unknown family {s:?}; expected ly, ljy, ly3-transvection, ly4-tensor or jordan-h")),
        }
    }
}

/// Builds a family member over `field`. The two fixed models accept only
/// their own `n`, or none.
pub fn build_family(family: Family, n: Option<usize>, field: FieldDescriptor) -> Result<AnyAlgebra> {
    let fixed = |want: usize| match n {
        None => Ok(()),
        Some(m) if m == want => Ok(()),
        Some(m) => bail!("this family only exists for n = {want}, not {m}"),
    };
    let need_n = || n.context("--n is required for this family");
    match family {
        Family::Ly3Transvection => fixed(3)?,
        Family::Ly4Tensor => fixed(4)?,
        _ => {
            need_n()?;
        }
    }
    macro_rules! over {
        ($f:expr) => {{
            let f = $f;
            match family {
                Family::Ly => build_ly(need_n()?, f)?,
                Family::Ljy => build_ljy(need_n()?, f)?,
                Family::Ly3Transvection => build_ly3_transvection(f)?,
                Family::Ly4Tensor => build_ly4_tensor(f)?,
                Family::JordanH => build_jordan_h(need_n()?, f)?,
            }
        }};
    }
    Ok(match field {
        FieldDescriptor::QSqrt2 => AnyAlgebra::Exact(over!(QuadSqrt2)),
        FieldDescriptor::Prime { .. } => AnyAlgebra::Prime(over!(field.prime_field()?)),
    })
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let text = serde_json::to_string_pretty(v)?;
    std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

pub fn load_algebra(path: &Path) -> Result<AnyAlgebra> {
    AnyAlgebra::from_json(&read_json(path)?).with_context(|| format!("loading algebra {}", path.display()))
}

/// Expands suite names and comma lists into catalog names.
pub fn identity_names(list: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for part in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match catalog::suite(part) {
            Some(names) => out.extend(names.iter().map(|s| s.to_string())),
            None if catalog::NAMES.contains(&part) => out.push(part.to_string()),
            None => bail!("unknown identity or suite {part:?}"),
        }
    }
    if out.is_empty() {
        bail!("no identities selected");
    }
    Ok(out)
}

/// A JSON list of `{name, poly}` objects, `poly` in the polynomial format,
/// re-read over `ops`.
pub fn load_known(path: &Path, ops: &std::sync::Arc<OpSet>) -> Result<Vec<KnownIdentity>> {
    let v = read_json(path)?;
    let items = v.as_array().context("known-identity file must hold a JSON list")?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let name = item.get("name").and_then(Value::as_str).map_or_else(|| format!("known-{}", i + 1), str::to_string);
            let poly = IntPoly::from_json(idforge::exactfield::Integers, item.get("poly").context("missing poly")?)?;
            if **poly.ops() != **ops {
                bail!("identity {name} is over other operations than the algebra");
            }
            Ok(KnownIdentity { name, poly })
        })
        .collect()
}

/// Thread count from the flag, then `IDFORGE_THREADS`, else all cores.
pub fn configure_threads(flag: Option<usize>) -> Result<()> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("IDFORGE_THREADS") {
            Ok(s) if !s.trim().is_empty() => Some(s.trim().parse().context("IDFORGE_THREADS must be a number")?),
            _ => None,
        },
    };
    if n == Some(0) {
        bail!("thread count must be positive");
    }
    #[cfg(feature = "parallel")]
    if let Some(n) = n {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    Ok(())
}

/// The prime field of an algebra file or `q-sqrt2` reduced mod `p`.
pub fn prime_version(alg: &AnyAlgebra, p: u32, sqrt2: Option<u32>) -> Result<idforge::algebras::StructureConstantAlgebra<PrimeField>> {
    let field = match sqrt2 {
        Some(r) => PrimeField::with_sqrt2(p, r)?,
        None => PrimeField::new_with_sqrt2(p)?,
    };
    match alg {
        AnyAlgebra::Exact(a) => Ok(a.reduce_mod(&field)?),
        AnyAlgebra::Prime(a) if a.field().modulus() == p => {
            if sqrt2.is_some_and(|r| a.field().sqrt2_residue() != Some(r)) {
                bail!("the algebra was built with another square root of 2");
            }
            Ok(a.clone())
        }
        AnyAlgebra::Prime(a) => bail!("the algebra is over GF({}); build it over q-sqrt2 to search mod {p}", a.field().modulus()),
    }
}
