use std::collections::BTreeMap;

use crate::cellcx::{CellComplex, CellComplexMorphism};
use crate::deltacx::{same_complex, ArrowSquare, SimplexId, SimplicialMap};
use crate::error::{bail, Error, Result};
use crate::strata::Cell;

use super::{free_complex, FactorResult, KCellKey};

/// The complex morphism `c -> Kf` corresponding to a square
/// `(g, h): U(c) -> f` (`top = g`, `bottom = h`).
///
/// Cells are sent, stratum by stratum, to the cell keyed by their stratum,
/// dimension, `h`-image and the already-built image of their boundary.
pub fn transpose(c: &CellComplex, sq: &ArrowSquare, kf: &FactorResult) -> Result<CellComplexMorphism> {
    if sq.left != c.underlying() {
        bail!(BoundaryMismatch, "square does not start at the underlying map of the complex");
    }
    if sq.right != *kf.input() {
        bail!(BoundaryMismatch, "square does not end at the factored map");
    }
    sq.validate()?;
    let mut image: BTreeMap<SimplexId, SimplexId> = sq.top.assignment().clone();
    let mut p = BTreeMap::new();
    for (n, t) in c.cells() {
        let key = KCellKey { stage: n, dim: t.dim, target: sq.bottom.at(&t.id).clone(), boundary: t.faces.iter().map(|x| image[x].clone()).collect() };
        let Some(s) = kf.cell_for(&key) else {
            return Err(Error::Internal(format!("transpose: no cell {key} in the free complex for cell {}", t.id)));
        };
        image.insert(t.id.clone(), s.clone());
        p.insert(t.id.clone(), s.clone());
    }
    let m = CellComplexMorphism { dom: c.clone(), cod: kf.complex().clone(), base: sq.top.clone(), p };
    debug_assert!(m.validate().is_ok());
    Ok(m)
}

/// The counit square `(1_A, Ef): UKf -> f`.
pub fn counit(kf: &FactorResult) -> ArrowSquare {
    ArrowSquare {
        top: SimplicialMap::identity(kf.input().dom().clone()),
        bottom: kf.ef().clone(),
        left: kf.left(),
        right: kf.input().clone(),
    }
}

/// `K(a, b)` for a square `(a, b): f -> g`.
pub fn k_morphism(sq: &ArrowSquare, kf: &FactorResult, kg: &FactorResult) -> Result<CellComplexMorphism> {
    if sq.left != *kf.input() || sq.right != *kg.input() {
        bail!(BoundaryMismatch, "square sides are not the factored maps");
    }
    let along = ArrowSquare { top: sq.top.clone(), bottom: kf.ef().then(&sq.bottom)?, left: kf.left(), right: kg.input().clone() };
    transpose(kf.complex(), &along, kg)
}

/// `M(a, b): Mf -> Mg`, the body part of `K(a, b)`.
pub fn k_map(sq: &ArrowSquare, kf: &FactorResult, kg: &FactorResult) -> Result<SimplicialMap> {
    Ok(k_morphism(sq, kf, kg)?.body_map())
}

/// The unit `c -> K(U c)`: the transpose of the identity square on `U c`.
pub fn unit(c: &CellComplex, kuc: &FactorResult) -> Result<CellComplexMorphism> {
    transpose(c, &ArrowSquare::identity(&c.underlying()), kuc)
}

/// `α: body(c) -> M(U c)`, computing `K(U c)` with the given cap.
pub fn coalgebra_structure(c: &CellComplex, cap: usize) -> Result<(SimplicialMap, FactorResult)> {
    let kuc = free_complex(&c.underlying(), cap)?;
    let alpha = unit(c, &kuc)?.body_map();
    Ok((alpha, kuc))
}

/// Reads a cell complex structure on an inclusion `f: X -> Y` off a left map
/// structure `α: Y -> Mf`. Every simplex outside `X` becomes a cell in the
/// stratum recorded by the key of its image.
pub fn decode(f: &SimplicialMap, alpha: &SimplicialMap, kf: &FactorResult) -> Result<CellComplex> {
    if !f.is_identity_on_ids() || f != kf.input() {
        bail!(InvalidMap, "decoding needs the factored map to be a literal inclusion");
    }
    if !same_complex(alpha.dom(), f.cod()) || !same_complex(alpha.cod(), kf.middle()) {
        bail!(BoundaryMismatch, "structure map has the wrong endpoints");
    }
    if alpha.then(kf.ef())? != SimplicialMap::identity(f.cod().clone()) {
        bail!(NotCommuting, "structure map is not a section of Ef");
    }
    if f.then(alpha)? != kf.left() {
        bail!(NotCommuting, "structure map does not extend UKf");
    }
    let y = f.cod();
    let mut layers: Vec<Vec<Cell>> = Vec::new();
    for (k, id, faces) in y.iter() {
        if f.dom().contains(id) {
            continue;
        }
        let Some(key) = kf.key(alpha.at(id)) else {
            bail!(InvalidCells, "simplex {id} is not sent to a cell");
        };
        debug_assert_eq!(key.dim, k);
        if layers.len() <= key.stage {
            layers.resize_with(key.stage + 1, Vec::new);
        }
        layers[key.stage].push(Cell { id: id.clone(), dim: k, faces: faces.to_vec() });
    }
    CellComplex::from_layers(f.dom().clone(), layers)
}

/// All complex morphisms `c -> kf.complex()` whose underlying square
/// composed with the counit is `sq`. Exhaustive; only for tiny inputs.
pub fn transposes_by_search(c: &CellComplex, sq: &ArrowSquare, kf: &FactorResult) -> Vec<CellComplexMorphism> {
    let target = kf.complex();
    let cells: Vec<(usize, &Cell)> = c.cells().collect();
    let mut out = Vec::new();
    let mut p = BTreeMap::new();
    search_cells(c, sq, kf, target, &cells, &mut p, &mut out);
    out
}

fn search_cells(
    c: &CellComplex,
    sq: &ArrowSquare,
    kf: &FactorResult,
    target: &CellComplex,
    cells: &[(usize, &Cell)],
    p: &mut BTreeMap<SimplexId, SimplexId>,
    out: &mut Vec<CellComplexMorphism>,
) {
    if p.len() == cells.len() {
        let m = CellComplexMorphism { dom: c.clone(), cod: target.clone(), base: sq.top.clone(), p: p.clone() };
        if m.validate().is_ok() && m.body_map().then(kf.ef()).ok().as_ref() == Some(&sq.bottom) {
            out.push(m);
        }
        return;
    }
    let (n, t) = cells[p.len()];
    let Some(st) = target.strata().get(n) else { return };
    for s in st.cells().filter(|s| s.dim == t.dim) {
        p.insert(t.id.clone(), s.id.clone());
        search_cells(c, sq, kf, target, cells, p, out);
        p.remove(&t.id);
    }
}
