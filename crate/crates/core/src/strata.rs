//! Single layers of cells: a boundary complex plus generating cells
//! `∂Δᵏ -> Δᵏ` glued along attaching maps, all at once.
//!
//! A cell stores its attaching map as the list of images of the `k+1` facets
//! of `∂Δᵏ`. That list is exactly the face list of the simplex the cell glues
//! in, and it determines the whole map because every lower simplex of `∂Δᵏ`
//! is a face of some facet. The glued simplex is named by the cell id, which
//! must therefore be fresh with respect to the boundary.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::deltacx::{
    self, facet_name, fresh_id, same_complex, shared_boundary, subsets_of_size, top_simplex_name,
    vertex_set_name, ArrowSquare, DeltaComplex, SimplexId, SimplicialMap, UnionFind,
};
use crate::error::{bail, Error, Result};

/// One generating cell `∂Δᵏ -> Δᵏ` with its attaching map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub id: SimplexId,
    pub dim: usize,
    /// `faces[i]` is the image of the facet `d_i Δᵏ`; empty when `dim == 0`.
    pub faces: Vec<SimplexId>,
}

impl Cell {
    pub fn new(id: impl Into<SimplexId>, dim: usize, faces: Vec<SimplexId>) -> Self {
        Cell { id: id.into(), dim, faces }
    }

    /// Reads a cell off an attaching map `∂Δᵏ -> X`.
    pub fn from_attach(id: impl Into<SimplexId>, attach: &SimplicialMap) -> Result<Self> {
        let dim = if attach.dom().is_empty() { 0 } else { (attach.dom().max_dim() + 1) as usize };
        if **attach.dom() != *shared_boundary(dim) {
            bail!(InvalidCells, "attaching map domain is not a standard simplex boundary");
        }
        let faces = if dim == 0 { Vec::new() } else { (0..=dim).map(|i| attach.at(&facet_name(dim, i)).clone()).collect() };
        Ok(Cell { id: id.into(), dim, faces })
    }

    /// Checks that the facet images exist in `x` and fit together into a map
    /// `∂Δᵏ -> x`.
    pub fn validate_in(&self, x: &DeltaComplex) -> Result<()> {
        let k = self.dim;
        let expect = if k == 0 { 0 } else { k + 1 };
        if self.faces.len() != expect {
            bail!(InvalidCells, "cell {} of dimension {k} has {} facet images", self.id, self.faces.len());
        }
        for f in &self.faces {
            if x.dim_of(f) != Some(k - 1) {
                bail!(InvalidCells, "cell {}: {f} is not a {}-simplex of the boundary", self.id, k - 1);
            }
        }
        if k >= 2 {
            for j in 1..=k {
                for i in 0..j {
                    if x.faces_of(&self.faces[j])[i] != x.faces_of(&self.faces[i])[j - 1] {
                        bail!(InvalidCells, "cell {}: facet images {i} and {j} do not meet correctly", self.id);
                    }
                }
            }
        }
        Ok(())
    }

    /// The attaching map `∂Δᵏ -> x` as a simplicial map.
    pub fn attach_map(&self, x: &Arc<DeltaComplex>) -> Result<SimplicialMap> {
        self.validate_in(x)?;
        let k = self.dim;
        let mut assign = BTreeMap::new();
        for size in 1..=k {
            for s in subsets_of_size(k + 1, size) {
                // A proper subset misses some vertex i; it lies in facet i.
                let i = (0..=k).find(|v| !s.contains(v)).expect("proper subset");
                let within: Vec<usize> = s.iter().map(|&v| if v > i { v - 1 } else { v }).collect();
                let img = x.face_spanned(&self.faces[i], &within).expect("validated facet");
                assign.insert(vertex_set_name(&s, k), img);
            }
        }
        Ok(SimplicialMap::new_unchecked(shared_boundary(k), x.clone(), assign))
    }

    /// Same cell with the attaching map pushed along `g`.
    pub fn pushed(&self, g: &SimplicialMap) -> Cell {
        Cell { id: self.id.clone(), dim: self.dim, faces: g.map_all(&self.faces) }
    }
}

/// A boundary complex and a finite set of cells attached to it.
#[derive(Clone)]
pub struct Stratum {
    boundary: Arc<DeltaComplex>,
    cells: BTreeMap<SimplexId, Cell>,
    body: OnceLock<Arc<DeltaComplex>>,
}

impl PartialEq for Stratum {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells && same_complex(&self.boundary, &other.boundary)
    }
}

impl Eq for Stratum {}

impl fmt::Debug for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Stratum")
            .field("boundary", &self.boundary.counts())
            .field("cells", &self.cells.values().collect::<Vec<_>>())
            .finish()
    }
}

/// Body of a stratum with its structure maps.
#[derive(Clone, Debug)]
pub struct Body {
    pub complex: Arc<DeltaComplex>,
    pub inclusion: SimplicialMap,
    /// Characteristic map `Δᵏ -> body` of each cell.
    pub characteristic: BTreeMap<SimplexId, SimplicialMap>,
}

impl Stratum {
    pub fn new(boundary: Arc<DeltaComplex>, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for c in cells {
            c.validate_in(&boundary)?;
            if boundary.contains(&c.id) {
                bail!(InvalidCells, "cell id {} is already a simplex of the boundary", c.id);
            }
            if let Some(prev) = map.insert(c.id.clone(), c) {
                bail!(InvalidCells, "duplicate cell id {}", prev.id);
            }
        }
        Ok(Stratum { boundary, cells: map, body: OnceLock::new() })
    }

    pub(crate) fn new_unchecked(boundary: Arc<DeltaComplex>, cells: BTreeMap<SimplexId, Cell>) -> Self {
        Stratum { boundary, cells, body: OnceLock::new() }
    }

    /// The stratum with no cells.
    pub fn empty(boundary: Arc<DeltaComplex>) -> Self {
        Stratum::new_unchecked(boundary, BTreeMap::new())
    }

    /// The one-cell structure on `∂Δᵏ -> Δᵏ`. Its body is literally `Δᵏ`.
    pub fn canonical(k: usize) -> Self {
        let cell = Cell { id: top_simplex_name(k), dim: k, faces: (0..=k).filter(|_| k > 0).map(|i| facet_name(k, i)).collect() };
        Stratum::new_unchecked(shared_boundary(k), [(cell.id.clone(), cell)].into())
    }

    pub fn boundary(&self) -> &Arc<DeltaComplex> {
        &self.boundary
    }

    /// Cells in identifier order.
    pub fn cells(&self) -> impl ExactSizeIterator<Item = &Cell> + '_ {
        self.cells.values()
    }

    pub fn cell(&self, id: &str) -> Option<&Cell> {
        self.cells.get(id)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// The boundary with one fresh simplex per cell, named by the cell id.
    pub fn body_complex(&self) -> &Arc<DeltaComplex> {
        self.body.get_or_init(|| {
            let mut x = (*self.boundary).clone();
            for c in self.cells.values() {
                x.push_unchecked(c.id.clone(), c.faces.clone());
            }
            Arc::new(x)
        })
    }

    pub fn body(&self) -> Body {
        let complex = self.body_complex().clone();
        let inclusion = SimplicialMap::inclusion_unchecked(self.boundary.clone(), complex.clone());
        let characteristic = self
            .cells
            .values()
            .map(|c| {
                let chi = deltacx::characteristic_map(&c.id, &complex).expect("glued simplex present");
                (c.id.clone(), chi)
            })
            .collect();
        Body { complex, inclusion, characteristic }
    }

    /// `U` of the stratum: the inclusion of the boundary into the body.
    pub fn underlying(&self) -> SimplicialMap {
        SimplicialMap::inclusion_unchecked(self.boundary.clone(), self.body_complex().clone())
    }
}

/// A morphism of strata: a map of boundaries and a dimension-preserving cell
/// function commuting with the attaching maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataMorphism {
    pub dom: Stratum,
    pub cod: Stratum,
    pub f: SimplicialMap,
    pub p: BTreeMap<SimplexId, SimplexId>,
}

impl StrataMorphism {
    pub fn new(dom: Stratum, cod: Stratum, f: SimplicialMap, p: BTreeMap<SimplexId, SimplexId>) -> Result<Self> {
        let m = StrataMorphism { dom, cod, f, p };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !same_complex(self.f.dom(), self.dom.boundary()) || !same_complex(self.f.cod(), self.cod.boundary()) {
            bail!(BoundaryMismatch, "boundary map endpoints differ from the strata boundaries");
        }
        if self.p.len() != self.dom.len() {
            bail!(InvalidCells, "cell function is not total");
        }
        for s in self.dom.cells() {
            let Some(t) = self.p.get(&s.id).and_then(|t| self.cod.cell(t)) else {
                bail!(InvalidCells, "cell {} has no image cell", s.id);
            };
            if s.dim != t.dim {
                bail!(InvalidCells, "cell {} changes dimension", s.id);
            }
            if self.f.map_all(&s.faces) != t.faces {
                bail!(InvalidCells, "attaching map of {} does not commute with the boundary map", s.id);
            }
        }
        Ok(())
    }

    pub fn identity(st: &Stratum) -> Self {
        StrataMorphism {
            dom: st.clone(),
            cod: st.clone(),
            f: SimplicialMap::identity(st.boundary.clone()),
            p: st.cells.keys().map(|c| (c.clone(), c.clone())).collect(),
        }
    }

    /// The induced map of bodies: `f` on the boundary, cell to image cell.
    pub fn body_map(&self) -> SimplicialMap {
        let mut assign = self.f.assignment().clone();
        for (s, t) in &self.p {
            assign.insert(s.clone(), t.clone());
        }
        SimplicialMap::new_unchecked(self.dom.body_complex().clone(), self.cod.body_complex().clone(), assign)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &StrataMorphism) -> Result<StrataMorphism> {
        if self.cod != other.dom {
            return Err(Error::NotComposable("strata morphisms do not share a stratum".into()));
        }
        Ok(StrataMorphism {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            f: self.f.then(&other.f)?,
            p: self.p.iter().map(|(s, t)| (s.clone(), other.p[t].clone())).collect(),
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        let hit: HashSet<_> = self.p.values().collect();
        self.f.is_bijective() && hit.len() == self.p.len() && hit.len() == self.cod.len()
    }

    /// `U(f, p)`: the square from `U(dom)` to `U(cod)`.
    pub fn underlying(&self) -> ArrowSquare {
        ArrowSquare { top: self.f.clone(), bottom: self.body_map(), left: self.dom.underlying(), right: self.cod.underlying() }
    }
}

/// `U` applied to a strata morphism.
pub fn u_of_strata_morphism(m: &StrataMorphism) -> ArrowSquare {
    m.underlying()
}

/// Pushforward of a stratum along `g: boundary -> Z`: same cells, attaching
/// maps composed with `g`. A cell whose id collides with a simplex of `Z` is
/// renamed with primes; the returned morphism records the renaming.
pub fn pushforward_stratum(st: &Stratum, g: &SimplicialMap) -> Result<(Stratum, StrataMorphism)> {
    if !same_complex(g.dom(), st.boundary()) {
        bail!(BoundaryMismatch, "pushforward map does not start at the stratum boundary");
    }
    let z = g.cod().clone();
    let mut taken: HashSet<SimplexId> = z.iter().map(|(_, id, _)| id.clone()).collect();
    let mut cells = BTreeMap::new();
    let mut p = BTreeMap::new();
    // Same naming order as the generic pushout: by dimension, then id.
    let mut order: Vec<&Cell> = st.cells().collect();
    order.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
    for c in order {
        let mut moved = c.pushed(g);
        moved.id = fresh_id(&c.id, &mut taken);
        p.insert(c.id.clone(), moved.id.clone());
        cells.insert(moved.id.clone(), moved);
    }
    let out = Stratum::new_unchecked(z, cells);
    let m = StrataMorphism { dom: st.clone(), cod: out.clone(), f: g.clone(), p };
    Ok((out, m))
}

/// A finite diagram: objects and arrows `(source, target, morphism)`.
#[derive(Clone, Debug, Default)]
pub struct Diagram<O, M> {
    pub objects: Vec<O>,
    pub arrows: Vec<(usize, usize, M)>,
}

pub type StrataDiagram = Diagram<Stratum, StrataMorphism>;

/// Output of the shared cell-colimit engine.
pub(crate) struct CellColimit {
    pub base: Arc<DeltaComplex>,
    pub base_legs: Vec<SimplicialMap>,
    /// `(layer, cell)` per class, in class-name order.
    pub cells: Vec<(usize, Cell)>,
    /// Per object: cell id -> class name.
    pub cell_legs: Vec<BTreeMap<SimplexId, SimplexId>>,
}

/// Colimit of "base complex + layered cells" data: the base is the
/// degreewise colimit, the cells are the colimit of the cell sets, and each
/// class's attaching map is any member's attaching map pushed along its leg.
/// `cells[o]` lists `(layer, cell)` for object `o`, with faces in the body
/// of object `o`; `body_legs` extends the base legs over the bodies.
pub(crate) fn colimit_cells(
    bases: &[Arc<DeltaComplex>],
    cells: &[Vec<(usize, Cell)>],
    arrows: &[(usize, usize, SimplicialMap, &BTreeMap<SimplexId, SimplexId>)],
) -> Result<CellColimit> {
    let base_arrows: Vec<(usize, usize, SimplicialMap)> = arrows
        .iter()
        .map(|(s, t, m, _)| (*s, *t, m.clone()))
        .collect();
    let (base, base_legs) = deltacx::colimit(bases, &base_arrows)?;

    let mut index: HashMap<(usize, &str), usize> = HashMap::new();
    let mut items: Vec<(usize, &(usize, Cell))> = Vec::new();
    for (o, cs) in cells.iter().enumerate() {
        for lc in cs {
            index.insert((o, lc.1.id.as_str()), items.len());
            items.push((o, lc));
        }
    }
    let mut uf = UnionFind::new(items.len());
    for (s, t, _, p) in arrows {
        for (a, b) in p.iter() {
            let (Some(&i), Some(&j)) = (index.get(&(*s, a.as_str())), index.get(&(*t, b.as_str()))) else {
                bail!(InvalidCells, "diagram arrow {s} -> {t} maps an unknown cell {a}");
            };
            uf.union(i, j);
        }
    }
    let mut names: HashMap<usize, SimplexId> = HashMap::new();
    for (e, (o, (_, c))) in items.iter().enumerate() {
        let r = uf.find(e);
        let n = deltacx::tagged(*o, &c.id);
        names.entry(r).and_modify(|b| if n < *b { *b = n.clone() }).or_insert(n);
    }

    // Body legs: base leg plus cell classes, so attaching maps can be pushed.
    let mut cell_legs: Vec<BTreeMap<SimplexId, SimplexId>> = vec![BTreeMap::new(); cells.len()];
    for (e, (o, (_, c))) in items.iter().enumerate() {
        let r = uf.find(e);
        cell_legs[*o].insert(c.id.clone(), names[&r].clone());
    }
    let image = |o: usize, x: &SimplexId| -> SimplexId {
        match base_legs[o].get(x) {
            Some(y) => y.clone(),
            None => cell_legs[o][x].clone(),
        }
    };

    let mut classes: BTreeMap<SimplexId, (usize, Cell)> = BTreeMap::new();
    for (e, (o, (layer, c))) in items.iter().enumerate() {
        let r = uf.find(e);
        let name = names[&r].clone();
        let faces: Vec<SimplexId> = c.faces.iter().map(|f| image(*o, f)).collect();
        match classes.get(&name) {
            Some((l, prev)) => {
                if *l != *layer || prev.dim != c.dim || prev.faces != faces {
                    return Err(Error::Internal(format!(
                        "cells identified in the colimit disagree on layer, shape or attaching map ({})",
                        c.id
                    )));
                }
            }
            None => {
                classes.insert(name.clone(), (*layer, Cell { id: name, dim: c.dim, faces }));
            }
        }
    }
    Ok(CellColimit { base, base_legs, cells: classes.into_values().collect(), cell_legs })
}

/// Colimit in strata: boundary colimit plus cell-set colimit. Returns the
/// colimit stratum and the cocone.
pub fn strata_colimit(diagram: &StrataDiagram) -> Result<(Stratum, Vec<StrataMorphism>)> {
    for (s, t, m) in &diagram.arrows {
        if m.dom != diagram.objects[*s] || m.cod != diagram.objects[*t] {
            bail!(NotComposable, "diagram arrow {s} -> {t} has mismatched endpoints");
        }
    }
    let bases: Vec<Arc<DeltaComplex>> = diagram.objects.iter().map(|o| o.boundary().clone()).collect();
    let cells: Vec<Vec<(usize, Cell)>> = diagram.objects.iter().map(|o| o.cells().map(|c| (0, c.clone())).collect()).collect();
    let arrows: Vec<(usize, usize, SimplicialMap, &BTreeMap<SimplexId, SimplexId>)> =
        diagram.arrows.iter().map(|(s, t, m)| (*s, *t, m.f.clone(), &m.p)).collect();
    let cc = colimit_cells(&bases, &cells, &arrows)?;
    let out = Stratum::new(cc.base.clone(), cc.cells.into_iter().map(|(_, c)| c))?;
    let cocone = diagram
        .objects
        .iter()
        .enumerate()
        .map(|(o, st)| StrataMorphism { dom: st.clone(), cod: out.clone(), f: cc.base_legs[o].clone(), p: cc.cell_legs[o].clone() })
        .collect();
    Ok((out, cocone))
}

/// Equaliser of parallel strata morphisms: the boundary equaliser with the
/// cells on which the cell functions agree.
pub fn strata_equaliser(m: &StrataMorphism, n: &StrataMorphism) -> Result<(Stratum, StrataMorphism)> {
    if m.dom != n.dom || m.cod != n.cod {
        bail!(NotComposable, "equaliser needs parallel strata morphisms");
    }
    let (e, incl) = deltacx::equaliser(&m.f, &n.f)?;
    let cells: BTreeMap<SimplexId, Cell> =
        m.dom.cells().filter(|c| m.p[&c.id] == n.p[&c.id]).map(|c| (c.id.clone(), c.clone())).collect();
    let p = cells.keys().map(|c| (c.clone(), c.clone())).collect();
    let out = Stratum::new(e, cells.into_values())?;
    let inc = StrataMorphism { dom: out.clone(), cod: m.dom.clone(), f: incl, p };
    Ok((out, inc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deltacx::{pushout, shared_simplex, standard_simplex};

    fn point() -> Arc<DeltaComplex> {
        shared_simplex(0)
    }

    fn loop_stratum() -> Stratum {
        Stratum::new(point(), [Cell::new("e", 1, vec!["0".into(), "0".into()])]).unwrap()
    }

    #[test]
    fn loop_body_matches_generic_pushout() {
        let st = loop_stratum();
        let body = st.body();
        assert_eq!(body.complex.counts(), vec![1, 1]);
        // Oracle: pushout of ∂Δ¹ -> Δ¹ along the attaching map.
        let attach = st.cell("e").unwrap().attach_map(st.boundary()).unwrap();
        let incl = SimplicialMap::inclusion(shared_boundary(1), shared_simplex(1)).unwrap();
        let (p, _, _) = pushout(&incl, &attach).unwrap();
        assert_eq!(p.counts(), body.complex.counts());
        body.characteristic["e"].validate().unwrap();
    }

    #[test]
    fn empty_and_point_strata() {
        let st = Stratum::empty(Arc::new(standard_simplex(1)));
        assert_eq!(**st.body_complex(), standard_simplex(1));
        assert!(st.underlying().is_identity_on_ids());
        let pts = Stratum::new(Arc::new(DeltaComplex::empty()), [Cell::new("a", 0, vec![]), Cell::new("b", 0, vec![])]).unwrap();
        assert_eq!(pts.body_complex().counts(), vec![2]);
    }

    #[test]
    fn canonical_body_is_simplex() {
        for k in 0..4 {
            assert_eq!(**Stratum::canonical(k).body_complex(), standard_simplex(k));
        }
    }

    #[test]
    fn cell_attach_round_trip() {
        let x = shared_simplex(2);
        let c = Cell::new("t", 2, vec!["12".into(), "02".into(), "01".into()]);
        let m = c.attach_map(&x).unwrap();
        m.validate().unwrap();
        assert_eq!(Cell::from_attach("t", &m).unwrap(), c);
        let bad = Cell::new("t", 2, vec!["12".into(), "01".into(), "02".into()]);
        assert!(bad.validate_in(&x).is_err());
    }

    #[test]
    fn rejects_cell_id_clash() {
        assert!(Stratum::new(point(), [Cell::new("0", 0, vec![])]).is_err());
    }

    #[test]
    fn pushforward_of_interval_is_loop() {
        let st = Stratum::new(shared_boundary(1), [Cell::new("e", 1, vec!["1".into(), "0".into()])]).unwrap();
        let g = SimplicialMap::new(shared_boundary(1), point(), [("0".into(), "0".into()), ("1".into(), "0".into())].into()).unwrap();
        let (out, m) = pushforward_stratum(&st, &g).unwrap();
        assert_eq!(out, loop_stratum());
        m.validate().unwrap();
        // Body of the pushforward is the pushout of the body along g.
        let (p, _, _) = pushout(&st.underlying(), &g).unwrap();
        assert_eq!(*p, **out.body_complex());
    }

    #[test]
    fn collapsing_two_cells() {
        let x = point();
        let two = Stratum::new(x.clone(), [Cell::new("a", 1, vec!["0".into(), "0".into()]), Cell::new("b", 1, vec!["0".into(), "0".into()])]).unwrap();
        let one = loop_stratum();
        let m = StrataMorphism::new(two, one, SimplicialMap::identity(x), [("a".into(), "e".into()), ("b".into(), "e".into())].into()).unwrap();
        let sq = m.underlying();
        sq.validate().unwrap();
        assert_eq!(sq.bottom.at("a"), sq.bottom.at("b"));
        assert!(deltacx::is_pullback(&sq).unwrap());
        assert!(!m.is_isomorphism());
    }

    #[test]
    fn coequaliser_merges_cells() {
        // Two 1-cells on ∂Δ¹ attached in opposite directions; coequalising the
        // swap with the identity glues the endpoints and merges the cells.
        let s0 = shared_boundary(1);
        let st = Stratum::new(s0.clone(), [Cell::new("a", 1, vec!["1".into(), "0".into()]), Cell::new("b", 1, vec!["0".into(), "1".into()])]).unwrap();
        let swap_f = SimplicialMap::new(s0.clone(), s0.clone(), [("0".into(), "1".into()), ("1".into(), "0".into())].into()).unwrap();
        let swap = StrataMorphism::new(st.clone(), st.clone(), swap_f, [("a".into(), "b".into()), ("b".into(), "a".into())].into()).unwrap();
        let id = StrataMorphism::identity(&st);
        let d = StrataDiagram { objects: vec![st.clone(), st.clone()], arrows: vec![(0, 1, swap), (0, 1, id)] };
        let (out, cocone) = strata_colimit(&d).unwrap();
        assert_eq!(out.boundary().counts(), vec![1]);
        assert_eq!(out.len(), 1);
        let c = out.cells().next().unwrap();
        assert_eq!(c.faces[0], c.faces[1]);
        for m in &cocone {
            m.validate().unwrap();
        }
    }

    #[test]
    fn coproduct_of_strata() {
        let a = Stratum::canonical(0);
        let b = Stratum::canonical(1);
        let d = StrataDiagram { objects: vec![a, b], arrows: vec![] };
        let (out, _) = strata_colimit(&d).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out.boundary().counts(), vec![2]);
        assert_eq!(out.body_complex().counts(), vec![3, 1]);
    }

    #[test]
    fn equaliser_drops_swapped_cells() {
        let x = point();
        let st = Stratum::new(x.clone(), [Cell::new("a", 1, vec!["0".into(), "0".into()]), Cell::new("b", 1, vec!["0".into(), "0".into()])]).unwrap();
        let swap = StrataMorphism::new(st.clone(), st.clone(), SimplicialMap::identity(x), [("a".into(), "b".into()), ("b".into(), "a".into())].into()).unwrap();
        let (e, inc) = strata_equaliser(&StrataMorphism::identity(&st), &swap).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.boundary().counts(), vec![1]);
        inc.validate().unwrap();
    }
}
