use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{DeltaComplex, SimplexId};
use crate::error::{bail, Error, Result};

/// Pointer equality first, then structural equality.
pub fn same_complex(a: &Arc<DeltaComplex>, b: &Arc<DeltaComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A dimension-preserving, face-commuting assignment between delta complexes.
#[derive(Clone)]
pub struct SimplicialMap {
    dom: Arc<DeltaComplex>,
    cod: Arc<DeltaComplex>,
    assign: BTreeMap<SimplexId, SimplexId>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.assign == other.assign && same_complex(&self.dom, &other.dom) && same_complex(&self.cod, &other.cod)
    }
}

impl Eq for SimplicialMap {}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialMap")
            .field("dom", &self.dom.counts())
            .field("cod", &self.cod.counts())
            .field("assign", &self.assign)
            .finish()
    }
}

impl SimplicialMap {
    /// Validates totality, dimensions and face commutation.
    pub fn new(dom: Arc<DeltaComplex>, cod: Arc<DeltaComplex>, assign: BTreeMap<SimplexId, SimplexId>) -> Result<Self> {
        let m = SimplicialMap { dom, cod, assign };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        dom: Arc<DeltaComplex>,
        cod: Arc<DeltaComplex>,
        assign: BTreeMap<SimplexId, SimplexId>,
    ) -> Self {
        SimplicialMap { dom, cod, assign }
    }

    pub fn validate(&self) -> Result<()> {
        if self.assign.len() != self.dom.len() {
            bail!(InvalidMap, "assignment covers {} of {} simplices", self.assign.len(), self.dom.len());
        }
        for (k, x, faces) in self.dom.iter() {
            let Some(y) = self.assign.get(x) else {
                bail!(InvalidMap, "simplex {x} is unassigned");
            };
            if self.cod.dim_of(y) != Some(k) {
                bail!(InvalidMap, "{x} maps to {y}, which is not a {k}-simplex of the codomain");
            }
            let img_faces = self.cod.faces_of(y);
            for (i, f) in faces.iter().enumerate() {
                if self.assign.get(f) != Some(&img_faces[i]) {
                    bail!(InvalidMap, "face {i} of {x} does not commute with the assignment");
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: Arc<DeltaComplex>) -> Self {
        let assign = x.iter().map(|(_, id, _)| (id.clone(), id.clone())).collect();
        SimplicialMap { dom: x.clone(), cod: x, assign }
    }

    /// Identifier-preserving inclusion of a literal subcomplex.
    pub fn inclusion(sub: Arc<DeltaComplex>, sup: Arc<DeltaComplex>) -> Result<Self> {
        if !sub.is_subcomplex_of(&sup) {
            bail!(InvalidMap, "domain is not a subcomplex of the codomain");
        }
        Ok(Self::inclusion_unchecked(sub, sup))
    }

    pub(crate) fn inclusion_unchecked(sub: Arc<DeltaComplex>, sup: Arc<DeltaComplex>) -> Self {
        let assign = sub.iter().map(|(_, id, _)| (id.clone(), id.clone())).collect();
        SimplicialMap { dom: sub, cod: sup, assign }
    }

    /// The unique map out of the empty complex.
    pub fn from_empty(cod: Arc<DeltaComplex>) -> Self {
        SimplicialMap { dom: Arc::new(DeltaComplex::empty()), cod, assign: BTreeMap::new() }
    }

    pub fn dom(&self) -> &Arc<DeltaComplex> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<DeltaComplex> {
        &self.cod
    }

    pub fn assignment(&self) -> &BTreeMap<SimplexId, SimplexId> {
        &self.assign
    }

    pub fn get(&self, x: &str) -> Option<&SimplexId> {
        self.assign.get(x)
    }

    /// Image of a simplex known to be in the domain.
    pub fn at(&self, x: &str) -> &SimplexId {
        self.assign
            .get(x)
            .unwrap_or_else(|| panic!("simplex {x} is not in the domain of this map"))
    }

    pub fn map_all(&self, xs: &[SimplexId]) -> Vec<SimplexId> {
        xs.iter().map(|x| self.at(x).clone()).collect()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_complex(&self.cod, &g.dom) {
            return Err(Error::NotComposable("codomain of the first map is not the domain of the second".into()));
        }
        let assign = self.assign.iter().map(|(x, y)| (x.clone(), g.at(y).clone())).collect();
        Ok(SimplicialMap { dom: self.dom.clone(), cod: g.cod.clone(), assign })
    }

    /// Restriction to a literal subcomplex of the domain.
    pub fn restrict(&self, sub: &Arc<DeltaComplex>) -> Result<SimplicialMap> {
        if !sub.is_subcomplex_of(&self.dom) {
            bail!(InvalidMap, "restriction target is not a subcomplex of the domain");
        }
        let assign = sub.iter().map(|(_, x, _)| (x.clone(), self.at(x).clone())).collect();
        Ok(SimplicialMap { dom: sub.clone(), cod: self.cod.clone(), assign })
    }

    /// Same assignment, with the codomain widened to a complex containing it.
    pub fn widen(&self, sup: &Arc<DeltaComplex>) -> Result<SimplicialMap> {
        if !self.cod.is_subcomplex_of(sup) {
            bail!(InvalidMap, "codomain is not a subcomplex of the widened codomain");
        }
        Ok(SimplicialMap { dom: self.dom.clone(), cod: sup.clone(), assign: self.assign.clone() })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.assign.values().all(|y| seen.insert(y))
    }

    pub fn is_surjective(&self) -> bool {
        let hit: std::collections::HashSet<_> = self.assign.values().collect();
        hit.len() == self.cod.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// True when the map is the identifier-preserving inclusion of its domain.
    pub fn is_identity_on_ids(&self) -> bool {
        self.assign.iter().all(|(x, y)| x == y)
    }
}

/// A morphism `left -> right` in the arrow category:
///
/// ```text
///   X --top--> X'
///   |          |
///  left      right
///   v          v
///   Y --bot--> Y'
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowSquare {
    pub top: SimplicialMap,
    pub bottom: SimplicialMap,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
}

impl ArrowSquare {
    /// Checks endpoints and `right ∘ top = bottom ∘ left`.
    pub fn new(top: SimplicialMap, bottom: SimplicialMap, left: SimplicialMap, right: SimplicialMap) -> Result<Self> {
        let sq = ArrowSquare { top, bottom, left, right };
        sq.validate()?;
        Ok(sq)
    }

    pub fn validate(&self) -> Result<()> {
        let tr = self.top.then(&self.right)?;
        let lb = self.left.then(&self.bottom)?;
        if tr != lb {
            bail!(NotCommuting, "right ∘ top differs from bottom ∘ left");
        }
        Ok(())
    }

    pub fn identity(f: &SimplicialMap) -> Self {
        ArrowSquare {
            top: SimplicialMap::identity(f.dom().clone()),
            bottom: SimplicialMap::identity(f.cod().clone()),
            left: f.clone(),
            right: f.clone(),
        }
    }

    /// Horizontal composite `other ∘ self` in the arrow category.
    pub fn then(&self, other: &ArrowSquare) -> Result<ArrowSquare> {
        if self.right != other.left {
            return Err(Error::NotComposable("squares do not share an arrow".into()));
        }
        Ok(ArrowSquare {
            top: self.top.then(&other.top)?,
            bottom: self.bottom.then(&other.bottom)?,
            left: self.left.clone(),
            right: other.right.clone(),
        })
    }
}
