use std::collections::{BTreeMap, HashSet};

use crate::deltacx::{same_complex, ArrowSquare, SimplexId, SimplicialMap};
use crate::error::{bail, Error, Result};
use crate::strata::StrataMorphism;

use super::CellComplex;

/// A morphism of cell complexes, stored as its base map and one cell
/// function over all strata. The stagewise strata morphisms are derived:
/// stage `n`'s boundary map is the body map restricted to `X_n`, which is
/// exactly the coherence condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplexMorphism {
    pub dom: CellComplex,
    pub cod: CellComplex,
    pub base: SimplicialMap,
    pub p: BTreeMap<SimplexId, SimplexId>,
}

impl CellComplexMorphism {
    pub fn new(dom: CellComplex, cod: CellComplex, base: SimplicialMap, p: BTreeMap<SimplexId, SimplexId>) -> Result<Self> {
        let m = CellComplexMorphism { dom, cod, base, p };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !same_complex(self.base.dom(), self.dom.base()) || !same_complex(self.base.cod(), self.cod.base()) {
            bail!(BoundaryMismatch, "base map endpoints differ from the complex bases");
        }
        if self.p.len() != self.dom.cell_count() {
            bail!(InvalidCells, "cell function is not total");
        }
        let image = |x: &SimplexId| -> Option<&SimplexId> { self.base.get(x).or_else(|| self.p.get(x)) };
        for (n, s) in self.dom.cells() {
            let Some(t) = self.p.get(&s.id) else {
                bail!(InvalidCells, "cell {} is unassigned", s.id);
            };
            let Some(tc) = self.cod.cell(t) else {
                bail!(InvalidCells, "cell {} maps to {t}, which is not a cell of the codomain", s.id);
            };
            if self.cod.stratum_of(t) != Some(n) {
                bail!(InvalidCells, "cell {} moves from stratum {n} to a different stratum", s.id);
            }
            if tc.dim != s.dim {
                bail!(InvalidCells, "cell {} changes dimension", s.id);
            }
            let faces: Option<Vec<&SimplexId>> = s.faces.iter().map(image).collect();
            if faces.map(|f| f.into_iter().cloned().collect::<Vec<_>>()) != Some(tc.faces.clone()) {
                bail!(InvalidCells, "attaching map of {} does not commute with the morphism", s.id);
            }
        }
        Ok(())
    }

    pub fn identity(c: &CellComplex) -> Self {
        CellComplexMorphism {
            dom: c.clone(),
            cod: c.clone(),
            base: SimplicialMap::identity(c.base().clone()),
            p: c.cells().map(|(_, s)| (s.id.clone(), s.id.clone())).collect(),
        }
    }

    /// The induced map of bodies.
    pub fn body_map(&self) -> SimplicialMap {
        let mut assign = self.base.assignment().clone();
        assign.extend(self.p.iter().map(|(s, t)| (s.clone(), t.clone())));
        SimplicialMap::new_unchecked(self.dom.body().clone(), self.cod.body().clone(), assign)
    }

    /// The body map restricted to stage `n`, landing in stage `n`.
    pub fn stage_map(&self, n: usize) -> SimplicialMap {
        let (x, y) = (self.dom.stage(n), self.cod.stage(n));
        let body = self.body_map();
        let assign = x.iter().map(|(_, id, _)| (id.clone(), body.at(id).clone())).collect();
        SimplicialMap::new_unchecked(x.clone(), y.clone(), assign)
    }

    /// Stagewise strata morphisms, one per stratum of the domain.
    pub fn stages(&self) -> Vec<StrataMorphism> {
        (0..self.dom.height())
            .map(|n| {
                let st = &self.dom.strata()[n];
                StrataMorphism {
                    dom: st.clone(),
                    cod: self.cod.strata()[n].clone(),
                    f: self.stage_map(n),
                    p: st.cells().map(|c| (c.id.clone(), self.p[&c.id].clone())).collect(),
                }
            })
            .collect()
    }

    /// `U` of the morphism: base map over body map.
    pub fn underlying(&self) -> ArrowSquare {
        ArrowSquare { top: self.base.clone(), bottom: self.body_map(), left: self.dom.underlying(), right: self.cod.underlying() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CellComplexMorphism) -> Result<CellComplexMorphism> {
        if self.cod != other.dom {
            return Err(Error::NotComposable("cell complex morphisms do not share a complex".into()));
        }
        Ok(CellComplexMorphism {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            base: self.base.then(&other.base)?,
            p: self.p.iter().map(|(s, t)| (s.clone(), other.p[t].clone())).collect(),
        })
    }

    /// True when the base map and the cell function are both bijections.
    pub fn is_isomorphism(&self) -> bool {
        let hit: HashSet<_> = self.p.values().collect();
        self.base.is_bijective() && hit.len() == self.p.len() && hit.len() == self.cod.cell_count()
    }
}

pub fn is_isomorphism(m: &CellComplexMorphism) -> bool {
    m.is_isomorphism()
}
