//! Right map structures as filler tables, and the stratum-by-stratum lifting
//! solver against them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cellcx::CellComplex;
use crate::deltacx::{boundary_map, facet_name, same_complex, shared_boundary, HomSearch, SimplexId, SimplicialMap};
use crate::error::{bail, Error, Result};
use crate::soa::FactorResult;
use crate::strata::Cell;

/// A lifting problem of `∂Δᵏ -> Δᵏ` against `p: E -> B`: facet images in
/// `E` and a `k`-simplex of `B` whose boundary they lie over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratingSquare {
    pub dim: usize,
    pub boundary: Vec<SimplexId>,
    pub target: SimplexId,
}

impl fmt::Display for GeneratingSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let faces: Vec<&str> = self.boundary.iter().map(|s| s.as_str()).collect();
        write!(f, "(dim {}, boundary [{}], target {})", self.dim, faces.join(", "), self.target)
    }
}

impl GeneratingSquare {
    /// True when `e` has the required faces and lies over the target.
    pub fn is_filled_by(&self, p: &SimplicialMap, e: &str) -> bool {
        let x = p.dom();
        x.dim_of(e) == Some(self.dim) && x.faces_of(e) == self.boundary.as_slice() && p.get(e) == Some(&self.target)
    }

    /// True when the data is a commuting square into `p`.
    pub fn is_valid_for(&self, p: &SimplicialMap) -> bool {
        let cell = Cell { id: "#".into(), dim: self.dim, faces: self.boundary.clone() };
        if cell.validate_in(p.dom()).is_err() || p.cod().dim_of(&self.target) != Some(self.dim) {
            return false;
        }
        p.map_all(&self.boundary) == p.cod().faces_of(&self.target)
    }
}

/// What a table does for squares it has no entry for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fallback {
    /// First valid filler in identifier order.
    Search,
    Fail,
}

/// A chosen filler for generating squares into `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillerTable {
    p: SimplicialMap,
    entries: BTreeMap<GeneratingSquare, SimplexId>,
    fallback: Fallback,
}

impl FillerTable {
    pub fn new(p: SimplicialMap, fallback: Fallback) -> Self {
        FillerTable { p, entries: BTreeMap::new(), fallback }
    }

    pub fn p(&self) -> &SimplicialMap {
        &self.p
    }

    pub fn fallback(&self) -> Fallback {
        self.fallback
    }

    pub fn entries(&self) -> &BTreeMap<GeneratingSquare, SimplexId> {
        &self.entries
    }

    pub fn insert(&mut self, sq: GeneratingSquare, filler: SimplexId) -> Option<SimplexId> {
        self.entries.insert(sq, filler)
    }

    /// The chosen filler, checked against both equations.
    pub fn fill(&self, sq: &GeneratingSquare) -> Result<SimplexId> {
        let chosen = match self.entries.get(sq) {
            Some(e) => Some(e.clone()),
            None if self.fallback == Fallback::Search => search_filler(&self.p, sq),
            None => None,
        };
        match chosen {
            Some(e) if sq.is_filled_by(&self.p, &e) => Ok(e),
            Some(e) => Err(Error::BadFiller { square: sq.clone(), filler: e }),
            None => Err(Error::NoFiller { square: sq.clone() }),
        }
    }
}

/// First simplex of `E` solving the square, in identifier order.
pub fn search_filler(p: &SimplicialMap, sq: &GeneratingSquare) -> Option<SimplexId> {
    p.dom().simplices(sq.dim).find(|e| sq.is_filled_by(p, e)).cloned()
}

/// Every generating square into `p`, in deterministic order, up to `limit`.
pub fn generating_squares(p: &SimplicialMap, limit: usize) -> Vec<GeneratingSquare> {
    let (e, b) = (p.dom(), p.cod());
    let search = HomSearch::new(e, Some(p));
    let mut out = Vec::new();
    if b.is_empty() {
        return out;
    }
    'dims: for k in 0..=b.max_dim() as usize {
        let dom = shared_boundary(k);
        let facets: Vec<SimplexId> = if k == 0 { Vec::new() } else { (0..=k).map(|i| facet_name(k, i)).collect() };
        for t in b.simplices(k) {
            let target = boundary_map(t, b).expect("simplex of the codomain");
            search.run(&dom, &HashMap::new(), Some(&target), None, &mut |sol| {
                let img: HashMap<&SimplexId, &SimplexId> = sol.iter().copied().collect();
                out.push(GeneratingSquare { dim: k, boundary: facets.iter().map(|f| img[f].clone()).collect(), target: t.clone() });
                out.len() < limit
            });
            if out.len() >= limit {
                break 'dims;
            }
        }
    }
    out
}

/// The canonical fillers for `Ef`: a square with boundary `u` over `b` is
/// filled by the cell keyed `(mec(u), k, b, u)`.
pub fn free_fillers(fr: &FactorResult) -> FillerTable {
    let kf = fr.complex();
    let mut table = FillerTable::new(fr.ef().clone(), Fallback::Fail);
    for sq in generating_squares(fr.ef(), usize::MAX) {
        let n = sq.boundary.iter().map(|x| kf.stage_of(x).expect("simplex of the body")).max().unwrap_or(0);
        let key = crate::soa::KCellKey { stage: n, dim: sq.dim, target: sq.target.clone(), boundary: sq.boundary.clone() };
        let e = fr.cell_for(&key).expect("free complex has a cell for every square").clone();
        table.insert(sq, e);
    }
    table
}

/// A diagonal `d: Y -> E` for the square `(u: X -> E, v: Y -> B)` from the
/// complex `c` on `i: X -> Y` to the table's map, built cell by cell.
pub fn solve_lifting(c: &CellComplex, ft: &FillerTable, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
    solve_lifting_ordered(c, ft, u, v, &mut |_| {})
}

/// As `solve_lifting`, letting `order` permute the cells of each stratum
/// before they are filled.
pub fn solve_lifting_ordered(
    c: &CellComplex,
    ft: &FillerTable,
    u: &SimplicialMap,
    v: &SimplicialMap,
    order: &mut dyn FnMut(&mut Vec<&Cell>),
) -> Result<SimplicialMap> {
    let p = ft.p();
    if !same_complex(u.dom(), c.base()) || !same_complex(v.dom(), c.body()) {
        bail!(BoundaryMismatch, "square does not start at the complex");
    }
    if !same_complex(u.cod(), p.dom()) || !same_complex(v.cod(), p.cod()) {
        bail!(BoundaryMismatch, "square does not end at the table's map");
    }
    if u.then(p)? != c.underlying().then(v)? {
        bail!(NotCommuting, "lifting square does not commute");
    }
    let mut d: BTreeMap<SimplexId, SimplexId> = u.assignment().clone();
    for st in c.strata() {
        let mut cells: Vec<&Cell> = st.cells().collect();
        order(&mut cells);
        // Cells of one stratum only see its boundary, so their order is free.
        let fills = cells
            .iter()
            .map(|s| {
                let sq = GeneratingSquare { dim: s.dim, boundary: s.faces.iter().map(|x| d[x].clone()).collect(), target: v.at(&s.id).clone() };
                Ok((s.id.clone(), ft.fill(&sq)?))
            })
            .collect::<Result<Vec<_>>>()?;
        d.extend(fills);
    }
    let d = SimplicialMap::new_unchecked(c.body().clone(), p.dom().clone(), d);
    if d.validate().is_err() || c.underlying().then(&d)? != *u || d.then(p)? != *v {
        return Err(Error::Internal("lift does not solve the square".into()));
    }
    Ok(d)
}

/// Result of checking a filler table.
#[derive(Clone, Debug, Default, Serialize)]
pub struct FillerReport {
    pub checked: usize,
    pub failures: Vec<FillerFailure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FillerFailure {
    pub square: GeneratingSquare,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filler: Option<SimplexId>,
    pub reason: &'static str,
}

impl FillerReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every explicit entry, then up to `budget` further generating
/// squares through the fallback rule.
pub fn verify_fillers(ft: &FillerTable, budget: usize) -> FillerReport {
    let p = ft.p();
    let mut report = FillerReport::default();
    for (sq, e) in ft.entries() {
        report.checked += 1;
        if !sq.is_valid_for(p) {
            report.failures.push(FillerFailure { square: sq.clone(), filler: Some(e.clone()), reason: "entry key is not a generating square" });
        } else if !sq.is_filled_by(p, e) {
            report.failures.push(FillerFailure { square: sq.clone(), filler: Some(e.clone()), reason: "filler does not solve the square" });
        }
    }
    for sq in generating_squares(p, budget.saturating_add(ft.entries().len())) {
        if ft.entries().contains_key(&sq) {
            continue;
        }
        if report.checked >= budget.saturating_add(ft.entries().len()) {
            break;
        }
        report.checked += 1;
        match ft.fill(&sq) {
            Ok(_) => {}
            Err(Error::BadFiller { filler, .. }) => {
                report.failures.push(FillerFailure { square: sq, filler: Some(filler), reason: "filler does not solve the square" })
            }
            Err(_) => report.failures.push(FillerFailure { square: sq, filler: None, reason: "no filler" }),
        }
    }
    report
}
