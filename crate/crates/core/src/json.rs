//! Serialized forms. Each `*Json` type mirrors the file format and converts
//! to the validated library value with its `into_*` method.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cellcx::CellComplex;
use crate::deltacx::{facet_name, shared_boundary, DeltaComplex, DeltaComplexBuilder, SimplexId, SimplicialMap};
use crate::error::{bail, Result};
use crate::lifting::{Fallback, FillerTable, GeneratingSquare};
use crate::soa::FactorResult;
use crate::strata::{Cell, Stratum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SimplexJson {
    Vertex(SimplexId),
    Simplex { id: SimplexId, faces: Vec<SimplexId> },
}

/// `{"simplices": {"0": ["a", ...], "1": [{"id": "e", "faces": [...]}], ...}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub simplices: BTreeMap<usize, Vec<SimplexJson>>,
}

impl From<&DeltaComplex> for ComplexJson {
    fn from(x: &DeltaComplex) -> Self {
        let mut simplices: BTreeMap<usize, Vec<SimplexJson>> = BTreeMap::new();
        for (k, id, faces) in x.iter() {
            let entry = if k == 0 { SimplexJson::Vertex(id.clone()) } else { SimplexJson::Simplex { id: id.clone(), faces: faces.to_vec() } };
            simplices.entry(k).or_default().push(entry);
        }
        ComplexJson { simplices }
    }
}

impl ComplexJson {
    pub fn into_complex(self) -> Result<DeltaComplex> {
        let mut b = DeltaComplexBuilder::new();
        for (k, entries) in self.simplices {
            for e in entries {
                match (k, e) {
                    (0, SimplexJson::Vertex(id)) => b.push(id, Vec::new())?,
                    (k, SimplexJson::Simplex { id, faces }) if faces.len() == if k == 0 { 0 } else { k + 1 } => b.push(id, faces)?,
                    (k, _) => bail!(InvalidComplex, "malformed entry in dimension {k}"),
                }
            }
        }
        b.build()
    }
}

/// `{"dom": ..., "cod": ..., "assign": {"0": {"a": "x"}, ...}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub dom: ComplexJson,
    pub cod: ComplexJson,
    pub assign: Assignment,
}

/// Per-dimension assignment.
pub type Assignment = BTreeMap<usize, BTreeMap<SimplexId, SimplexId>>;

fn assignment_of(m: &SimplicialMap) -> Assignment {
    let mut out: Assignment = BTreeMap::new();
    for (k, x, _) in m.dom().iter() {
        out.entry(k).or_default().insert(x.clone(), m.at(x).clone());
    }
    out
}

fn map_from(dom: Arc<DeltaComplex>, cod: Arc<DeltaComplex>, assign: Assignment) -> Result<SimplicialMap> {
    let mut flat = BTreeMap::new();
    for (k, part) in assign {
        for (x, y) in part {
            if dom.dim_of(&x) != Some(k) {
                bail!(InvalidMap, "{x} is not a {k}-simplex of the domain");
            }
            flat.insert(x, y);
        }
    }
    SimplicialMap::new(dom, cod, flat)
}

impl From<&SimplicialMap> for MapJson {
    fn from(m: &SimplicialMap) -> Self {
        MapJson { dom: ComplexJson::from(&**m.dom()), cod: ComplexJson::from(&**m.cod()), assign: assignment_of(m) }
    }
}

impl MapJson {
    pub fn into_map(self) -> Result<SimplicialMap> {
        let dom = Arc::new(self.dom.into_complex()?);
        let cod = Arc::new(self.cod.into_complex()?);
        map_from(dom, cod, self.assign)
    }
}

/// A cell with its attaching map keyed by canonical names of `∂Δᵏ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub id: SimplexId,
    pub dim: usize,
    pub attach: BTreeMap<SimplexId, SimplexId>,
}

impl CellJson {
    fn of(c: &Cell, x: &Arc<DeltaComplex>) -> Self {
        let attach = c.attach_map(x).expect("cell of a valid stratum").assignment().clone();
        CellJson { id: c.id.clone(), dim: c.dim, attach }
    }

    fn into_cell(self, x: &Arc<DeltaComplex>) -> Result<Cell> {
        let m = SimplicialMap::new(shared_boundary(self.dim), x.clone(), self.attach)
            .map_err(|e| crate::Error::InvalidCells(format!("cell {}: {e}", self.id)))?;
        let faces = if self.dim == 0 { Vec::new() } else { (0..=self.dim).map(|i| m.at(&facet_name(self.dim, i)).clone()).collect() };
        Ok(Cell { id: self.id, dim: self.dim, faces })
    }
}

/// `{"boundary": ..., "cells": [{"id", "dim", "attach"}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumJson {
    pub boundary: ComplexJson,
    pub cells: Vec<CellJson>,
}

impl From<&Stratum> for StratumJson {
    fn from(st: &Stratum) -> Self {
        StratumJson { boundary: ComplexJson::from(&**st.boundary()), cells: st.cells().map(|c| CellJson::of(c, st.boundary())).collect() }
    }
}

impl StratumJson {
    pub fn into_stratum(self) -> Result<Stratum> {
        let x = Arc::new(self.boundary.into_complex()?);
        let cells = self.cells.into_iter().map(|c| c.into_cell(&x)).collect::<Result<Vec<_>>>()?;
        Stratum::new(x, cells)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerJson {
    pub cells: Vec<CellJson>,
}

/// `{"base": ..., "strata": [{"cells": [...]}, ...]}`. Attaching maps of
/// stratum `n` refer to simplices of stage `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplexJson {
    pub base: ComplexJson,
    pub strata: Vec<LayerJson>,
}

impl From<&CellComplex> for CellComplexJson {
    fn from(c: &CellComplex) -> Self {
        CellComplexJson {
            base: ComplexJson::from(&**c.base()),
            strata: c.strata().iter().map(|st| LayerJson { cells: st.cells().map(|x| CellJson::of(x, st.boundary())).collect() }).collect(),
        }
    }
}

impl CellComplexJson {
    /// Parses a proper complex.
    pub fn into_complex(self) -> Result<CellComplex> {
        let (base, strata) = self.into_strata()?;
        CellComplex::from_strata(base, strata)
    }

    /// Parses a connected sequence without checking properness.
    pub fn into_strata(self) -> Result<(Arc<DeltaComplex>, Vec<Stratum>)> {
        let base = Arc::new(self.base.into_complex()?);
        let mut cur = base.clone();
        let mut strata = Vec::new();
        for layer in self.strata {
            let cells = layer.cells.into_iter().map(|c| c.into_cell(&cur)).collect::<Result<Vec<_>>>()?;
            let st = Stratum::new(cur, cells)?;
            cur = st.body_complex().clone();
            strata.push(st);
        }
        Ok((base, strata))
    }
}

/// The free factorization of a map: input, complex, `Ef` on the body, and
/// cells per stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorResultJson {
    pub input: MapJson,
    pub complex: CellComplexJson,
    /// Assignment of `Ef` on the body of the complex.
    pub ef: Assignment,
    pub stage_cell_counts: Vec<usize>,
    pub height: usize,
}

impl From<&FactorResult> for FactorResultJson {
    fn from(r: &FactorResult) -> Self {
        FactorResultJson {
            input: MapJson::from(r.input()),
            complex: CellComplexJson::from(r.complex()),
            ef: assignment_of(r.ef()),
            stage_cell_counts: r.complex().stage_counts(),
            height: r.complex().height(),
        }
    }
}

impl FactorResultJson {
    pub fn into_result(self) -> Result<FactorResult> {
        let input = self.input.into_map()?;
        let kf = self.complex.into_complex()?;
        if **kf.base() != **input.dom() {
            bail!(BoundaryMismatch, "complex base differs from the input domain");
        }
        let ef = map_from(kf.body().clone(), input.cod().clone(), self.ef)?;
        FactorResult::from_parts(input, kf, ef)
    }
}

pub fn to_string_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable value") + "\n"
}

/// One explicit entry of a filler table; `boundary` is keyed by canonical
/// names of `∂Δᵏ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillerEntryJson {
    pub dim: usize,
    pub boundary: BTreeMap<SimplexId, SimplexId>,
    pub target: SimplexId,
    pub filler: SimplexId,
}

/// `{"p": <map>, "entries": [...], "fallback": "search" | "fail"}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillerTableJson {
    pub p: MapJson,
    pub entries: Vec<FillerEntryJson>,
    pub fallback: Fallback,
}

impl From<&FillerTable> for FillerTableJson {
    fn from(t: &FillerTable) -> Self {
        let entries = t
            .entries()
            .iter()
            .map(|(sq, e)| FillerEntryJson {
                dim: sq.dim,
                boundary: facet_assignment(sq.dim, &sq.boundary, t.p().dom()),
                target: sq.target.clone(),
                filler: e.clone(),
            })
            .collect();
        FillerTableJson { p: MapJson::from(t.p()), entries, fallback: t.fallback() }
    }
}

/// The full attaching map of a cell with the given facet images.
fn facet_assignment(dim: usize, faces: &[SimplexId], x: &Arc<DeltaComplex>) -> BTreeMap<SimplexId, SimplexId> {
    let cell = Cell { id: "#".into(), dim, faces: faces.to_vec() };
    match cell.attach_map(x) {
        Ok(m) => m.assignment().clone(),
        // Entries that are not squares are kept facet-wise so they survive a round trip.
        Err(_) => faces.iter().enumerate().map(|(i, f)| (facet_name(dim, i), f.clone())).collect(),
    }
}

impl FillerTableJson {
    pub fn into_table(self) -> Result<FillerTable> {
        let p = self.p.into_map()?;
        let mut t = FillerTable::new(p, self.fallback);
        for e in self.entries {
            let boundary = if e.dim == 0 {
                Vec::new()
            } else {
                (0..=e.dim)
                    .map(|i| {
                        let f = facet_name(e.dim, i);
                        e.boundary.get(&f).cloned().ok_or_else(|| crate::Error::InvalidMap(format!("filler entry for {} lacks facet {f}", e.target)))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            t.insert(GeneratingSquare { dim: e.dim, boundary, target: e.target }, e.filler);
        }
        Ok(t)
    }
}
