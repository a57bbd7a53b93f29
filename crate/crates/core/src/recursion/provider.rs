//! On-demand family store: base cases plus symbolic construction, with an
//! optional on-disk cache of family JSON files.

use super::{is_stable, symbolic_step, FamilyJson, LatticeCountPolynomial};
use crate::algebra::{frac, SquarePolynomial};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

/// The base family N_{0,3}: constant 1 in every parity class.
pub fn base_family_03() -> LatticeCountPolynomial {
    let mut classes = BTreeMap::new();
    classes.insert(0, SquarePolynomial::constant(3, frac(1, 1)));
    classes.insert(2, SquarePolynomial::constant(3, frac(1, 1)));
    LatticeCountPolynomial::new(0, 3, classes).expect("base family")
}

/// The base family N_{1,1}: (b^2 - 4)/48 on even arguments.
pub fn base_family_11() -> LatticeCountPolynomial {
    let mut poly = SquarePolynomial::zero(1);
    poly.add_term(vec![1], frac(1, 48));
    poly.add_term(vec![0], frac(-1, 12));
    let mut classes = BTreeMap::new();
    classes.insert(0, poly);
    LatticeCountPolynomial::new(1, 1, classes).expect("base family")
}

/// Builds and caches lattice count polynomial families bottom-up through the
/// symbolic recursion. With a cache directory set, families are persisted as
/// `N_{g}_{n}.json` (atomic write-then-rename); unreadable or mismatched
/// cache files are recomputed, never silently reused.
pub struct FamilyProvider {
    cache_dir: Option<PathBuf>,
    families: Mutex<BTreeMap<(usize, usize), Arc<LatticeCountPolynomial>>>,
}

impl Default for FamilyProvider {
    fn default() -> Self {
        Self::new()
    }
}

impl FamilyProvider {
    pub fn new() -> FamilyProvider {
        FamilyProvider {
            cache_dir: None,
            families: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> FamilyProvider {
        FamilyProvider {
            cache_dir: Some(dir.into()),
            families: Mutex::new(BTreeMap::new()),
        }
    }

    /// The family for (g, n), building every dependency first.
    pub fn family(&self, g: usize, n: usize) -> Result<Arc<LatticeCountPolynomial>> {
        if !is_stable(g, n) || n == 0 {
            return Err(Error::Unstable { g, n });
        }
        if let Some(hit) = self.families.lock().unwrap().get(&(g, n)) {
            return Ok(hit.clone());
        }
        if let Some(found) = self.try_load(g, n) {
            return Ok(self.insert(g, n, found));
        }
        let built = match (g, n) {
            (0, 3) => base_family_03(),
            (1, 1) => base_family_11(),
            _ => {
                for (dg, dn) in direct_dependencies(g, n) {
                    self.family(dg, dn)?;
                }
                let snapshot = self.families.lock().unwrap().clone();
                symbolic_step(g, n, &snapshot)?
            }
        };
        self.try_store(&built);
        Ok(self.insert(g, n, built))
    }

    /// All families strictly below (g, n) that its symbolic step may read,
    /// materialized and returned as a map.
    pub fn lower_families(
        &self,
        g: usize,
        n: usize,
    ) -> Result<BTreeMap<(usize, usize), Arc<LatticeCountPolynomial>>> {
        let mut need = BTreeSet::new();
        collect_dependencies(g, n, &mut need);
        for &(dg, dn) in &need {
            self.family(dg, dn)?;
        }
        Ok(self.families.lock().unwrap().clone())
    }

    fn insert(
        &self,
        g: usize,
        n: usize,
        family: LatticeCountPolynomial,
    ) -> Arc<LatticeCountPolynomial> {
        let mut map = self.families.lock().unwrap();
        map.entry((g, n))
            .or_insert_with(|| Arc::new(family))
            .clone()
    }

    fn cache_path(&self, g: usize, n: usize) -> Option<PathBuf> {
        self.cache_dir
            .as_ref()
            .map(|dir| dir.join(format!("N_{g}_{n}.json")))
    }

    fn try_load(&self, g: usize, n: usize) -> Option<LatticeCountPolynomial> {
        let path = self.cache_path(g, n)?;
        let family = read_family_file(&path).ok()?;
        // Schema says what it is; trust only after it checks out.
        if family.g != g || family.n != n {
            return None;
        }
        let bound = family.degree_bound();
        for (k, poly) in family.classes() {
            if k % 2 != 0 || poly.nvars() != n || poly.total_degree() > bound {
                return None;
            }
        }
        if family.class(0).is_none() {
            return None;
        }
        Some(family)
    }

    fn try_store(&self, family: &LatticeCountPolynomial) {
        let Some(path) = self.cache_path(family.g, family.n) else {
            return;
        };
        // Cache writes are best effort; failures only cost recomputation.
        let _ = write_family_file(&path, family);
    }
}

/// Reads a family JSON file.
pub fn read_family_file(path: &Path) -> Result<LatticeCountPolynomial> {
    let text = std::fs::read_to_string(path)?;
    let json: FamilyJson = serde_json::from_str(&text)?;
    LatticeCountPolynomial::from_json(&json)
}

/// Writes a family JSON file atomically (write to a sibling temp file, then
/// rename), so concurrent invocations never observe a torn file.
pub fn write_family_file(path: &Path, family: &LatticeCountPolynomial) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    let text = serde_json::to_string_pretty(&family.to_json())?;
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Families the symbolic step for (g, n) reads directly.
fn direct_dependencies(g: usize, n: usize) -> Vec<(usize, usize)> {
    let mut deps = BTreeSet::new();
    if n >= 2 && is_stable(g, n - 1) {
        deps.insert((g, n - 1));
    }
    if g >= 1 && is_stable(g - 1, n + 1) {
        deps.insert((g - 1, n + 1));
    }
    for g1 in 0..=g {
        let g2 = g - g1;
        for i in 0..n {
            let j = n - 1 - i;
            if is_stable(g1, i + 1) && is_stable(g2, j + 1) {
                deps.insert((g1, i + 1));
                deps.insert((g2, j + 1));
            }
        }
    }
    deps.into_iter().collect()
}

fn collect_dependencies(g: usize, n: usize, out: &mut BTreeSet<(usize, usize)>) {
    if (g, n) == (0, 3) || (g, n) == (1, 1) {
        return;
    }
    for (dg, dn) in direct_dependencies(g, n) {
        if out.insert((dg, dn)) {
            collect_dependencies(dg, dn, out);
        }
    }
}
