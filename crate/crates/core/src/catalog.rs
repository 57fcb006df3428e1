//! Desk catalog: groups small enough to enumerate, their tables, and recorded subgroup embeddings.

use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::Mutex;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::chartab::{build_table, CharacterTable, TableError};
use crate::classes::fusion;
use crate::groups::{derived_subgroup, enumerate, pointwise_stabilizer, siegel_levi, GroupError, GroupSpec, GroupTable, Subgroup};
use crate::parabolic::parabolic;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{0}")]
    Shape(String),
}

/// Groups whose tables the acceptance suite builds.
pub const DESK_GROUPS: [&str; 9] =
    ["SL(2,3)", "SL(2,5)", "SL(2,7)", "GL(2,3)", "Sp(4,2)", "Sp(4,3)", "SO(5,3)", "SO+(4,3)", "Omega+(4,3)"];

static TABLES: Lazy<Mutex<FxHashMap<String, Arc<CharacterTable>>>> = Lazy::new(|| Mutex::new(FxHashMap::default()));

/// Character table of a classical group, memoized for the life of the process.
pub fn table(spec: &GroupSpec) -> Result<Arc<CharacterTable>, CatalogError> {
    let key = spec.to_string();
    if let Some(t) = TABLES.lock().get(&key) {
        return Ok(t.clone());
    }
    let t = Arc::new(build_table(enumerate(spec)?)?);
    Ok(TABLES.lock().entry(key).or_insert(t).clone())
}

pub fn table_str(s: &str) -> Result<Arc<CharacterTable>, CatalogError> {
    table(&s.parse::<GroupSpec>()?)
}

/// A subgroup H of G together with both tables and the class fusion H -> G.
pub struct Embedding {
    pub label: String,
    pub g: Arc<CharacterTable>,
    pub h: Arc<CharacterTable>,
    pub sub: Subgroup,
    pub fuse: Vec<usize>,
}

impl Embedding {
    pub fn new(label: impl Into<String>, g: Arc<CharacterTable>, sub: Subgroup) -> Result<Embedding, CatalogError> {
        let h = Arc::new(build_table(sub.table.clone())?);
        let fuse = fusion(&sub, h.classes(), g.classes());
        Ok(Embedding { label: label.into(), g, h, sub, fuse })
    }

    pub fn index(&self) -> usize {
        self.sub.index()
    }
}

/// The recorded embeddings of the desk catalog.
pub fn embeddings() -> Result<Vec<Embedding>, CatalogError> {
    let sp43 = table_str("Sp(4,3)")?;
    let so53 = table_str("SO(5,3)")?;
    let so43 = table_str("SO+(4,3)")?;
    let gl23 = table_str("GL(2,3)")?;
    let sp23 = table_str("Sp(2,3)")?;
    let sg = sp43.group().clone();
    Ok(vec![
        Embedding::new("Sp(4,3) > Sp(2,3)", sp43.clone(), pointwise_stabilizer(&sg, &[1, 3], true)?)?,
        Embedding::new("Sp(4,3) > GL(2,3)", sp43.clone(), siegel_levi(&sg)?)?,
        Embedding::new("SO(5,3) > SO+(4,3)", so53.clone(), pointwise_stabilizer(so53.group(), &[4], true)?)?,
        Embedding::new("SO+(4,3) > Omega+(4,3)", so43.clone(), derived_subgroup(so43.group()))?,
        Embedding::new("SO(5,3) > Omega(5,3)", so53.clone(), derived_subgroup(so53.group()))?,
        Embedding::new("GL(2,3) > SL(2,3)", gl23.clone(), derived_subgroup(gl23.group()))?,
        Embedding::new("Sp(2,3) > Q8", sp23.clone(), derived_subgroup(sp23.group()))?,
    ])
}

/// P = U x| L with U abelian and normal, recorded as (P, L) plus the ids of U inside P.
pub struct SplitExtension {
    pub label: String,
    pub emb: Embedding,
    pub normal: Vec<u32>,
}

/// Restate a subgroup `inner` of `outer.parent` as a subgroup of `outer.table`.
pub fn restate(outer: &Subgroup, inner_ids: &[u32], label: String) -> Result<Subgroup, CatalogError> {
    let mut back: FxHashMap<u32, u32> = FxHashMap::default();
    for (i, &g) in outer.embed.iter().enumerate() {
        back.insert(g, i as u32);
    }
    let ids: Vec<u32> = inner_ids
        .iter()
        .map(|g| back.get(g).copied().ok_or_else(|| CatalogError::Shape(format!("{label}: element outside the outer subgroup"))))
        .collect::<Result<_, _>>()?;
    Ok(outer.table.subgroup(label, &ids))
}

fn is_abelian(g: &GroupTable, ids: &[u32]) -> bool {
    ids.iter().all(|&a| ids.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// Parabolic subgroups P_j = U x| L of a group with abelian unipotent radical U.
pub fn split_parabolic(spec: &str, j: usize) -> Result<SplitExtension, CatalogError> {
    let t = table_str(spec)?;
    let g = t.group();
    let par = parabolic(g, j)?;
    let p = g.subgroup(format!("P{j}({spec})"), &par.p);
    if !is_abelian(g, &par.u) {
        return Err(CatalogError::Shape(format!("unipotent radical of P{j}({spec}) is not abelian")));
    }
    let l = restate(&p, &par.levi, format!("L{j}({spec})"))?;
    let u = restate(&p, &par.u, format!("U{j}({spec})"))?.embed;
    let pt = Arc::new(build_table(p.table.clone())?);
    let emb = Embedding::new(format!("P{j}({spec}) > L{j}"), pt, l)?;
    Ok(SplitExtension { label: format!("P{j}({spec})"), emb, normal: u })
}

pub fn split_parabolics() -> Result<Vec<SplitExtension>, CatalogError> {
    [("Sp(2,3)", 1), ("Sp(2,5)", 1), ("Sp(4,3)", 2), ("Sp(4,3)", 1), ("SO+(4,3)", 2)]
        .iter()
        .filter_map(|&(s, j)| match split_parabolic(s, j) {
            Err(CatalogError::Shape(_)) => None,
            r => Some(r),
        })
        .collect()
}
