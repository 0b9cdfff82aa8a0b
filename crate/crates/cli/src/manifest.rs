//! TOML manifests naming a complex, coefficients and the opens, subcomplexes,
//! covers and groups that commands refer to by name.
//!
//! ```toml
//! complex = "T2grid"            # built-in name or facet file
//! A = "Z/4"
//! q = 0
//!
//! [opens]
//! annulus = "minus:9 10; 10 11; 9 11"
//!
//! [subcomplexes]
//! meridian = "full:0,1,2"
//!
//! [covers.parts]
//! target = "0 1; 3 4"
//! elements = ["0 1", "3 4"]
//!
//! [groups.Z2]
//! table = [0, 1, 1, 0]
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use hsym::abelian::{FGAbelianGroup, FiniteGroup};
use hsym::complex::{SimplicialComplex, StarOpen, Subcomplex};
use hsym::covers::CoverSpec;
use hsym::{Error, Result};
use serde::Deserialize;

use crate::input;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    complex: Option<String>,
    facets: Option<Vec<Vec<usize>>>,
    #[serde(rename = "A")]
    coefficients: Option<String>,
    q: Option<usize>,
    #[serde(default)]
    opens: BTreeMap<String, String>,
    #[serde(default)]
    subcomplexes: BTreeMap<String, String>,
    #[serde(default)]
    covers: BTreeMap<String, RawCover>,
    #[serde(default)]
    groups: BTreeMap<String, RawGroup>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCover {
    target: Option<String>,
    elements: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    table: Vec<usize>,
    names: Option<Vec<String>>,
}

/// A validated manifest: every named entity has been resolved.
#[derive(Clone, Debug)]
pub struct Manifest {
    pub source: String,
    pub complex: Arc<SimplicialComplex>,
    pub coefficients: Option<FGAbelianGroup>,
    pub q: Option<usize>,
    pub opens: BTreeMap<String, StarOpen>,
    pub subcomplexes: BTreeMap<String, Subcomplex>,
    pub covers: BTreeMap<String, CoverSpec>,
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

pub fn ingest(path: &Path) -> Result<Manifest> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read manifest {}: {e}", path.display())))?;
    parse_manifest(&text, path.parent().unwrap_or(Path::new(".")))
}

/// Relative facet-file paths are resolved against `base`.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Manifest> {
    let raw: RawManifest = toml::from_str(text).map_err(|e| Error::Parse {
        line: e.span().map(|s| line_of(text, s.start)).unwrap_or(0),
        message: e.message().to_string(),
    })?;
    let (source, complex) = match (&raw.complex, &raw.facets) {
        (Some(_), Some(_)) => return Err(Error::Validation("give either complex or facets, not both".into())),
        (None, None) => return Err(Error::Validation("manifest names no complex".into())),
        (None, Some(f)) => ("inline".to_string(), SimplicialComplex::from_facets(f.clone())?),
        (Some(name), None) => {
            let resolved = if hsym::complex::library_names().contains(&name.as_str()) {
                name.clone()
            } else {
                base.join(name).to_string_lossy().into_owned()
            };
            (name.clone(), input::load_complex(&resolved)?)
        }
    };
    let complex = Arc::new(complex);
    let coefficients = raw.coefficients.as_deref().map(input::parse_coefficients).transpose()?;
    if let Some(q) = raw.q {
        let d = complex.dimension().unwrap_or(0);
        if q + 1 > d {
            return Err(Error::Validation(format!("q + 1 = {} exceeds the dimension {d}", q + 1)));
        }
    }
    let named = |kind: &str, name: &str, e: Error| Error::Validation(format!("{kind} '{name}': {e}"));
    let mut opens = BTreeMap::new();
    for (name, spec) in &raw.opens {
        opens.insert(name.clone(), input::parse_open(&complex, spec).map_err(|e| named("open", name, e))?);
    }
    let mut subcomplexes = BTreeMap::new();
    for (name, spec) in &raw.subcomplexes {
        subcomplexes.insert(name.clone(), input::parse_subcomplex(&complex, spec).map_err(|e| named("subcomplex", name, e))?);
    }
    let mut covers = BTreeMap::new();
    for (name, c) in &raw.covers {
        let resolve = |spec: &str| opens.get(spec).cloned().map_or_else(|| input::parse_open(&complex, spec), Ok);
        let target = c.target.as_deref().map(resolve).transpose().map_err(|e| named("cover", name, e))?;
        let elements =
            c.elements.iter().map(|s| resolve(s)).collect::<Result<Vec<_>>>().map_err(|e| named("cover", name, e))?;
        let spec = CoverSpec::new(target.unwrap_or_else(|| StarOpen::whole(&complex)), elements)
            .map_err(|e| named("cover", name, e))?;
        covers.insert(name.clone(), spec);
    }
    let mut groups = BTreeMap::new();
    for (name, g) in &raw.groups {
        let order = (g.table.len() as f64).sqrt().round() as usize;
        let mut group = FiniteGroup::new(order, g.table.clone()).map_err(|e| named("group", name, e))?;
        if let Some(names) = &g.names {
            if names.len() != order {
                return Err(Error::Validation(format!("group '{name}': {} names for {order} elements", names.len())));
            }
            group = group.with_names(names.clone());
        }
        groups.insert(name.clone(), Arc::new(group));
    }
    Ok(Manifest { source, complex, coefficients, q: raw.q, opens, subcomplexes, covers, groups })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_manifest() {
        let m = parse_manifest("complex = \"T2\"\nA = \"Z/4\"\nq = 0\n", Path::new(".")).unwrap();
        assert_eq!(m.complex.vertex_count(), 7);
        assert_eq!(m.coefficients.unwrap().to_string(), "Z/4");
    }

    #[test]
    fn named_entities() {
        let text = r#"
complex = "S1hex"
A = "Z/2"
q = 0
[opens]
left = "0 1"
[subcomplexes]
point = "full:2"
[covers.parts]
target = "0 1; 3 4"
elements = ["left", "3 4"]
[groups.C2]
table = [0, 1, 1, 0]
names = ["e", "g"]
"#;
        let m = parse_manifest(text, Path::new(".")).unwrap();
        assert!(m.covers["parts"].is_cover());
        assert_eq!(m.groups["C2"].name(1), "g");
        assert_eq!(m.subcomplexes["point"].members().len(), 1);
    }

    #[test]
    fn errors_carry_lines() {
        let err = parse_manifest("complex = \"S1hex\"\nq = \"zero\"\n", Path::new(".")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        assert!(parse_manifest("complex = \"nowhere.txt\"\n", Path::new("/nonexistent")).is_err());
        assert!(parse_manifest("complex = \"S1hex\"\nq = 1\n", Path::new(".")).is_err());
        assert!(parse_manifest("facets = [[0, 1, 2]]\nA = \"Q\"\n", Path::new(".")).is_err());
        assert!(parse_manifest("complex = \"S1hex\"\n[opens]\nbad = \"0 4\"\n", Path::new(".")).is_err());
    }
}
