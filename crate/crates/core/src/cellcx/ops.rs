use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use crate::deltacx::{self, fresh_id, same_complex, DeltaComplex, HomSearch, SimplexId, SimplicialMap};
use crate::error::{bail, Error, Result};
use crate::strata::{colimit_cells, Cell, Diagram, Stratum};

use super::complex::normalize_complex;
use super::{CellComplex, CellComplexMorphism};

pub type CellDiagram = Diagram<CellComplex, CellComplexMorphism>;

/// `b ∗ a`: glue the strata of `b` on top of those of `a`, then move every
/// cell of `b` down to the first stage its attaching map fits in.
pub fn compose_complexes(a: &CellComplex, b: &CellComplex) -> Result<CellComplex> {
    if !same_complex(b.base(), a.body()) {
        bail!(BoundaryMismatch, "second complex is not attached to the body of the first");
    }
    let strata: Vec<Stratum> = a.strata().iter().chain(b.strata()).cloned().collect();
    let raw = CellComplex::connected(a.base().clone(), strata, true)?;
    Ok(normalize_complex(&raw))
}

/// `ψ ∗ φ : b ∗ a -> b' ∗ a'` for `φ: a -> a'` and `ψ: b -> b'` with
/// `ψ.base` the body map of `φ`.
pub fn horizontal_compose(psi: &CellComplexMorphism, phi: &CellComplexMorphism) -> Result<CellComplexMorphism> {
    if psi.base != phi.body_map() {
        bail!(BoundaryMismatch, "base map of the upper morphism is not the body map of the lower one");
    }
    let dom = compose_complexes(&phi.dom, &psi.dom)?;
    let cod = compose_complexes(&phi.cod, &psi.cod)?;
    let mut p = phi.p.clone();
    p.extend(psi.p.iter().map(|(s, t)| (s.clone(), t.clone())));
    let m = CellComplexMorphism { dom, cod, base: phi.base.clone(), p };
    m.validate().map_err(|e| Error::Internal(format!("horizontal composite does not preserve strata: {e}")))?;
    Ok(m)
}

/// Stagewise pushforward of `c` along `g: X₀ -> Z`, with the comparison
/// morphism. Cell ids are kept unless they clash with `Z`; clashing ones get
/// primes, in the same order the generic pushout would assign them.
pub fn pushforward_complex(c: &CellComplex, g: &SimplicialMap) -> Result<(CellComplex, CellComplexMorphism)> {
    if !same_complex(g.dom(), c.base()) {
        bail!(BoundaryMismatch, "pushforward map does not start at the base of the complex");
    }
    let z = g.cod().clone();
    let mut taken: HashSet<SimplexId> = z.iter().map(|(_, id, _)| id.clone()).collect();
    let mut order: Vec<&Cell> = c.cells().map(|(_, s)| s).collect();
    order.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
    let rename: BTreeMap<SimplexId, SimplexId> = order.into_iter().map(|s| (s.id.clone(), fresh_id(&s.id, &mut taken))).collect();

    let image = |x: &SimplexId| -> SimplexId { g.get(x).cloned().unwrap_or_else(|| rename[x].clone()) };
    let layers: Vec<Vec<Cell>> = c
        .strata()
        .iter()
        .map(|st| st.cells().map(|s| Cell { id: rename[&s.id].clone(), dim: s.dim, faces: s.faces.iter().map(image).collect() }).collect())
        .collect();
    let raw = CellComplex::connected(z.clone(), glue(z, layers)?, true)?;
    let out = if raw.is_proper() { raw } else { normalize_complex(&raw) };
    let m = CellComplexMorphism { dom: c.clone(), cod: out.clone(), base: g.clone(), p: rename };
    m.validate().map_err(|e| Error::Internal(format!("pushforward comparison is not a morphism: {e}")))?;
    Ok((out, m))
}

fn glue(base: Arc<DeltaComplex>, layers: Vec<Vec<Cell>>) -> Result<Vec<Stratum>> {
    let mut cur = base;
    let mut out = Vec::with_capacity(layers.len());
    for layer in layers {
        let st = Stratum::new(cur, layer)?;
        cur = st.body_complex().clone();
        out.push(st);
    }
    Ok(out)
}

/// Colimit computed stratum by stratum: the base is the colimit of bases and
/// each colimit cell keeps the common stratum index of its members.
/// Properness of the output is re-checked.
pub fn cellcx_colimit(diagram: &CellDiagram) -> Result<(CellComplex, Vec<CellComplexMorphism>)> {
    for (s, t, m) in &diagram.arrows {
        if m.dom != diagram.objects[*s] || m.cod != diagram.objects[*t] {
            bail!(NotComposable, "diagram arrow {s} -> {t} has mismatched endpoints");
        }
    }
    let bases: Vec<Arc<DeltaComplex>> = diagram.objects.iter().map(|o| o.base().clone()).collect();
    let cells: Vec<Vec<(usize, Cell)>> = diagram.objects.iter().map(|o| o.cells().map(|(n, c)| (n, c.clone())).collect()).collect();
    let arrows: Vec<(usize, usize, SimplicialMap, &BTreeMap<SimplexId, SimplexId>)> =
        diagram.arrows.iter().map(|(s, t, m)| (*s, *t, m.base.clone(), &m.p)).collect();
    let cc = colimit_cells(&bases, &cells, &arrows)?;
    let mut layers: Vec<Vec<Cell>> = Vec::new();
    for (n, c) in cc.cells {
        if layers.len() <= n {
            layers.resize_with(n + 1, Vec::new);
        }
        layers[n].push(c);
    }
    let out = CellComplex::from_layers(cc.base.clone(), layers).map_err(|e| Error::Internal(format!("colimit is not a proper complex: {e}")))?;
    let cocone = diagram
        .objects
        .iter()
        .enumerate()
        .map(|(o, c)| CellComplexMorphism { dom: c.clone(), cod: out.clone(), base: cc.base_legs[o].clone(), p: cc.cell_legs[o].clone() })
        .collect();
    Ok((out, cocone))
}

/// Equaliser of parallel morphisms: the base equaliser plus the cells on
/// which both cell functions agree, in their original strata.
pub fn cellcx_equaliser(f: &CellComplexMorphism, g: &CellComplexMorphism) -> Result<(CellComplex, CellComplexMorphism)> {
    if f.dom != g.dom || f.cod != g.cod {
        bail!(NotComposable, "equaliser needs parallel morphisms");
    }
    let (e, incl) = deltacx::equaliser(&f.base, &g.base)?;
    let layers: Vec<Vec<Cell>> =
        f.dom.strata().iter().map(|st| st.cells().filter(|c| f.p[&c.id] == g.p[&c.id]).cloned().collect()).collect();
    let out = CellComplex::from_layers(e, layers).map_err(|e| Error::Internal(format!("equaliser is not a proper complex: {e}")))?;
    let p = out.cells().map(|(_, c)| (c.id.clone(), c.id.clone())).collect();
    let m = CellComplexMorphism { dom: out.clone(), cod: f.dom.clone(), base: incl, p };
    Ok((out, m))
}

/// Some isomorphism `a -> b`, if one exists. Tries the identity on ids
/// first, then searches body maps that send base to base and cells to cells
/// of the same stratum bijectively.
pub fn find_isomorphism(a: &CellComplex, b: &CellComplex) -> Option<CellComplexMorphism> {
    if a.stage_counts() != b.stage_counts() || a.base().counts() != b.base().counts() || a.body().counts() != b.body().counts() {
        return None;
    }
    if let Ok(base) = SimplicialMap::new(a.base().clone(), b.base().clone(), a.base().iter().map(|(_, x, _)| (x.clone(), x.clone())).collect()) {
        let p = a.cells().map(|(_, c)| (c.id.clone(), c.id.clone())).collect();
        if let Ok(m) = CellComplexMorphism::new(a.clone(), b.clone(), base, p) {
            if m.is_isomorphism() {
                return Some(m);
            }
        }
    }
    let search = HomSearch::new(b.body(), None);
    let mut found = None;
    search.run(a.body(), &HashMap::new(), None, None, &mut |sol| {
        let hit: HashSet<&SimplexId> = sol.iter().map(|(_, y)| *y).collect();
        if hit.len() != sol.len() || sol.iter().any(|(x, y)| a.stage_of(x) != b.stage_of(y)) {
            return true;
        }
        let body: HashMap<&SimplexId, &SimplexId> = sol.iter().copied().collect();
        let base = SimplicialMap::new(a.base().clone(), b.base().clone(), a.base().iter().map(|(_, x, _)| (x.clone(), body[x].clone())).collect())
            .expect("restriction of a map to the base");
        let p = a.cells().map(|(_, c)| (c.id.clone(), body[&c.id].clone())).collect();
        found = CellComplexMorphism::new(a.clone(), b.clone(), base, p).ok();
        found.is_none()
    });
    found
}
