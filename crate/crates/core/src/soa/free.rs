use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cellcx::CellComplex;
use crate::deltacx::{boundary_map, facet_name, fresh_id, same_complex, shared_boundary, DeltaComplex, Filtration, HomSearch, SimplexId, SimplicialMap};
use crate::error::{bail, Error, Result};
use crate::strata::{Cell, Stratum};

/// Default bound on the number of strata `free_complex` may build.
pub const DEFAULT_CAP: usize = 32;

/// Identity of a cell of the free complex: a generating square
/// `(u: ∂Δᵏ -> A_n, target: Δᵏ -> B)` first available at stage `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KCellKey {
    pub stage: usize,
    pub dim: usize,
    pub target: SimplexId,
    /// Images of the facets `d_0 .. d_k` of `∂Δᵏ`.
    pub boundary: Vec<SimplexId>,
}

impl KCellKey {
    /// Canonical string form, also the preferred cell id.
    pub fn encode(&self) -> String {
        let faces: Vec<&str> = self.boundary.iter().map(|s| s.as_str()).collect();
        format!("[{}.{}:{}|{}]", self.stage, self.dim, self.target, faces.join(","))
    }
}

impl fmt::Display for KCellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// The free factorization `A --UKf--> Mf --Ef--> B` of `f`, with the cell
/// keys of `Kf`.
#[derive(Clone, Debug)]
pub struct FactorResult {
    input: SimplicialMap,
    kf: CellComplex,
    ef: SimplicialMap,
    key_of: BTreeMap<SimplexId, KCellKey>,
    cell_of: HashMap<KCellKey, SimplexId>,
}

impl PartialEq for FactorResult {
    fn eq(&self, other: &Self) -> bool {
        self.input == other.input && self.kf == other.kf && self.ef == other.ef && self.key_of == other.key_of
    }
}

impl Eq for FactorResult {}

impl FactorResult {
    pub fn input(&self) -> &SimplicialMap {
        &self.input
    }

    pub fn complex(&self) -> &CellComplex {
        &self.kf
    }

    /// `Ef: Mf -> B`.
    pub fn ef(&self) -> &SimplicialMap {
        &self.ef
    }

    /// `Mf`, the middle object.
    pub fn middle(&self) -> &Arc<DeltaComplex> {
        self.kf.body()
    }

    /// `UKf: A -> Mf`.
    pub fn left(&self) -> SimplicialMap {
        self.kf.underlying()
    }

    /// `E_n f: A_n -> B` for `n = 0 ..= height`.
    pub fn stage_maps(&self) -> Vec<SimplicialMap> {
        (0..=self.kf.height())
            .map(|n| {
                let x = self.kf.stage(n);
                let assign = x.iter().map(|(_, id, _)| (id.clone(), self.ef.at(id).clone())).collect();
                SimplicialMap::new_unchecked(x.clone(), self.ef.cod().clone(), assign)
            })
            .collect()
    }

    pub fn key(&self, cell: &str) -> Option<&KCellKey> {
        self.key_of.get(cell)
    }

    pub fn cell_for(&self, key: &KCellKey) -> Option<&SimplexId> {
        self.cell_of.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = (&SimplexId, &KCellKey)> + '_ {
        self.key_of.iter()
    }

    /// Reassembles a result from its parts, recomputing and checking keys.
    pub fn from_parts(input: SimplicialMap, kf: CellComplex, ef: SimplicialMap) -> Result<Self> {
        if !same_complex(kf.base(), input.dom()) || !same_complex(ef.dom(), kf.body()) || !same_complex(ef.cod(), input.cod()) {
            bail!(BoundaryMismatch, "factorization parts do not fit together");
        }
        ef.validate()?;
        let mut key_of = BTreeMap::new();
        let mut cell_of = HashMap::new();
        for (n, c) in kf.cells() {
            let key = KCellKey { stage: n, dim: c.dim, target: ef.at(&c.id).clone(), boundary: c.faces.clone() };
            if cell_of.insert(key.clone(), c.id.clone()).is_some() {
                bail!(InvalidCells, "two cells share the generating square {key}");
            }
            key_of.insert(c.id.clone(), key);
        }
        let out = FactorResult { input, kf, ef, key_of, cell_of };
        let fresh = free_complex(&out.input, out.kf.height() + 1)?;
        if fresh.key_of.values().collect::<HashSet<_>>() != out.key_of.values().collect::<HashSet<_>>() {
            bail!(InvalidCells, "complex is not the free factorization of its input map");
        }
        Ok(out)
    }
}

/// Squares `∂Δᵏ -> X` over `boundary(b)` for every simplex `b` of `B`, in
/// deterministic order, keeping those whose facet images pass `keep`.
fn squares(
    x: &DeltaComplex,
    e: &SimplicialMap,
    min_dim: usize,
    keep: &dyn Fn(&[SimplexId]) -> bool,
) -> Vec<(usize, SimplexId, Vec<SimplexId>)> {
    let b_cx = e.cod();
    let search = HomSearch::new(x, Some(e));
    let mut out = Vec::new();
    if b_cx.is_empty() {
        return out;
    }
    for k in min_dim..=b_cx.max_dim() as usize {
        let dom = shared_boundary(k);
        let facets: Vec<SimplexId> = if k == 0 { Vec::new() } else { (0..=k).map(|i| facet_name(k, i)).collect() };
        for b in b_cx.simplices(k) {
            let target = boundary_map(b, b_cx).expect("simplex of the codomain");
            search.run(&dom, &HashMap::new(), Some(&target), None, &mut |sol| {
                let img: HashMap<&SimplexId, &SimplexId> = sol.iter().copied().collect();
                let u: Vec<SimplexId> = facets.iter().map(|f| img[f].clone()).collect();
                if keep(&u) {
                    out.push((k, b.clone(), u));
                }
                true
            });
        }
    }
    out
}

/// One application of the single-stratum right adjoint: a cell for every
/// generating square into `f`. With `filter = Some((filt, n))`, cells whose
/// facet images already fit in stage `n - 1` of `filt` are omitted (`filt`
/// must end at the domain of `f`).
pub fn k1_step(f: &SimplicialMap, filter: Option<(&Filtration, usize)>) -> Result<(Stratum, SimplicialMap)> {
    type Keep<'f> = Box<dyn Fn(&[SimplexId]) -> bool + 'f>;
    let keep: Keep<'_> = match filter {
        Some((filt, n)) => {
            if !same_complex(filt.top(), f.dom()) {
                bail!(BoundaryMismatch, "filtration does not end at the domain of the map");
            }
            Box::new(move |u: &[SimplexId]| filt.mec_of(u.iter()) >= n)
        }
        None => Box::new(|_: &[SimplexId]| true),
    };
    let min_dim = if filter.is_some_and(|(_, n)| n > 0) { 1 } else { 0 };
    let found = squares(f.dom(), f, min_dim, &*keep);
    let stage = filter.map_or(0, |(_, n)| n);
    let mut taken: HashSet<SimplexId> = f.dom().iter().map(|(_, id, _)| id.clone()).collect();
    let mut cells = BTreeMap::new();
    let mut assign = f.assignment().clone();
    for (k, b, u) in found {
        let key = KCellKey { stage, dim: k, target: b.clone(), boundary: u.clone() };
        let id = fresh_id(&SimplexId::from(key.encode()), &mut taken);
        assign.insert(id.clone(), b);
        cells.insert(id.clone(), Cell { id, dim: k, faces: u });
    }
    let st = Stratum::new_unchecked(f.dom().clone(), cells);
    let e1 = SimplicialMap::new_unchecked(st.body_complex().clone(), f.cod().clone(), assign);
    Ok((st, e1))
}

/// The free cell complex `Kf` and `Ef`, gluing at stage `n` exactly the
/// generating squares whose boundary first fits in `A_n`. Stops at the first
/// empty stratum; fails if `cap` strata are built without stopping.
pub fn free_complex(f: &SimplicialMap, cap: usize) -> Result<FactorResult> {
    f.validate()?;
    let a = f.dom().clone();
    let mut stage_of: HashMap<SimplexId, usize> = a.iter().map(|(_, id, _)| (id.clone(), 0)).collect();
    let mut taken: HashSet<SimplexId> = stage_of.keys().cloned().collect();
    let mut key_of = BTreeMap::new();
    let mut cell_of = HashMap::new();
    let mut strata: Vec<Stratum> = Vec::new();
    let mut cur = a.clone();
    let mut e_assign = f.assignment().clone();
    loop {
        let n = strata.len();
        let e_cur = SimplicialMap::new_unchecked(cur.clone(), f.cod().clone(), e_assign.clone());
        let found = if n == 0 {
            squares(&cur, &e_cur, 0, &|_| true)
        } else {
            squares(&cur, &e_cur, 1, &|u: &[SimplexId]| u.iter().any(|x| stage_of[x] == n))
        };
        if found.is_empty() {
            break;
        }
        if n >= cap {
            let mut stage_counts: Vec<usize> = strata.iter().map(Stratum::len).collect();
            stage_counts.push(found.len());
            return Err(Error::CapExceeded { cap, stage_counts });
        }
        let mut cells = BTreeMap::new();
        for (k, b, u) in found {
            let key = KCellKey { stage: n, dim: k, target: b.clone(), boundary: u.clone() };
            let id = fresh_id(&SimplexId::from(key.encode()), &mut taken);
            stage_of.insert(id.clone(), n + 1);
            e_assign.insert(id.clone(), b);
            cell_of.insert(key.clone(), id.clone());
            key_of.insert(id.clone(), key);
            cells.insert(id.clone(), Cell { id, dim: k, faces: u });
        }
        let st = Stratum::new_unchecked(cur, cells);
        cur = st.body_complex().clone();
        strata.push(st);
    }
    let kf = CellComplex::from_strata(a, strata).map_err(|e| Error::Internal(format!("free complex is not proper: {e}")))?;
    let ef = SimplicialMap::new_unchecked(kf.body().clone(), f.cod().clone(), e_assign);
    Ok(FactorResult { input: f.clone(), kf, ef, key_of, cell_of })
}
