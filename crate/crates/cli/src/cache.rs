//! On-disk cache of lattices and F-triangles, keyed by spec and Coxeter ordering.
//!
//! Layout: `<root>/v<schema>/lattice/<spec>__<order>.json` and
//! `<root>/v<schema>/triangle/<spec>.json`. Files are written to a temporary
//! sibling and renamed into place, so readers never see a partial file.
//! Unreadable or mismatched entries are treated as misses.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use ftri_core::{FTriangle, NCLattice, RootSystemSpec};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::document::SCHEMA_VERSION;

#[derive(Serialize, Deserialize)]
struct LatticeEntry {
    schema_version: u32,
    spec: RootSystemSpec,
    coxeter_order: Vec<usize>,
    lattice: NCLattice,
}

#[derive(Serialize, Deserialize)]
struct TriangleEntry {
    schema_version: u32,
    spec: RootSystemSpec,
    triangle: FTriangle,
}

#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    fn base(&self) -> PathBuf {
        self.root.join(format!("v{SCHEMA_VERSION}"))
    }

    pub fn lattice_path(&self, spec: &RootSystemSpec, order: &[usize]) -> PathBuf {
        let order: Vec<String> = order.iter().map(|i| i.to_string()).collect();
        self.base()
            .join("lattice")
            .join(format!("{spec}__{}.json", order.join("-")))
    }

    pub fn triangle_path(&self, spec: &RootSystemSpec) -> PathBuf {
        self.base().join("triangle").join(format!("{spec}.json"))
    }

    pub fn load_lattice(&self, spec: &RootSystemSpec, order: &[usize]) -> Option<NCLattice> {
        let entry: LatticeEntry = read_json(&self.lattice_path(spec, order))?;
        (entry.schema_version == SCHEMA_VERSION
            && &entry.spec == spec
            && entry.coxeter_order == order
            && entry.lattice.rank() == spec.rank()
            && entry.lattice.validate().is_ok())
        .then_some(entry.lattice)
    }

    pub fn store_lattice(&self, spec: &RootSystemSpec, order: &[usize], lattice: &NCLattice) -> io::Result<()> {
        let entry = LatticeEntry {
            schema_version: SCHEMA_VERSION,
            spec: spec.clone(),
            coxeter_order: order.to_vec(),
            lattice: lattice.clone(),
        };
        write_json(&self.lattice_path(spec, order), &entry)
    }

    pub fn load_triangle(&self, spec: &RootSystemSpec) -> Option<FTriangle> {
        let entry: TriangleEntry = read_json(&self.triangle_path(spec))?;
        (entry.schema_version == SCHEMA_VERSION && &entry.spec == spec && entry.triangle.rank() == spec.rank())
            .then_some(entry.triangle)
    }

    pub fn store_triangle(&self, spec: &RootSystemSpec, triangle: &FTriangle) -> io::Result<()> {
        let entry = TriangleEntry {
            schema_version: SCHEMA_VERSION,
            spec: spec.clone(),
            triangle: triangle.clone(),
        };
        write_json(&self.triangle_path(spec), &entry)
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Option<T> {
    let text = fs::read(path).ok()?;
    serde_json::from_slice(&text).ok()
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> io::Result<()> {
    write_atomic(path, &serde_json::to_vec(value)?)
}

/// Writes `bytes` to a temporary file next to `path`, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ftri_core::{f_triangle, Budget};

    #[test]
    fn lattice_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let spec: RootSystemSpec = "B3".parse().unwrap();
        let order = [3, 1, 2];
        assert!(cache.load_lattice(&spec, &order).is_none());
        let l = NCLattice::for_spec(&spec, Some(&order), &Budget::unlimited()).unwrap();
        cache.store_lattice(&spec, &order, &l).unwrap();
        assert!(cache.lattice_path(&spec, &order).ends_with("v1/lattice/B3__3-1-2.json"));
        assert_eq!(cache.load_lattice(&spec, &order), Some(l));
        assert!(cache.load_lattice(&spec, &[1, 2, 3]).is_none());
    }

    #[test]
    fn corrupt_entry_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let spec: RootSystemSpec = "A2".parse().unwrap();
        let path = cache.triangle_path(&spec);
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, "{not json").unwrap();
        assert!(cache.load_triangle(&spec).is_none());
        let f = f_triangle(&spec).unwrap();
        cache.store_triangle(&spec, &f).unwrap();
        assert_eq!(cache.load_triangle(&spec), Some(f));
    }
}
