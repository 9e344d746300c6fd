use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::deltacx::{same_complex, top_simplex_name, DeltaComplex, Filtration, SimplexId, SimplicialMap};
use crate::error::{bail, Result};
use crate::strata::{Cell, Stratum};

/// A proper connected finite sequence of nonempty strata over a base `X₀`.
///
/// Stratum `n` has boundary `X_n` and body `X_{n+1}`. Every simplex of the
/// final body is either in the base or is the glued simplex of exactly one
/// cell, and carries the same id as that cell.
#[derive(Clone)]
pub struct CellComplex {
    base: Arc<DeltaComplex>,
    strata: Vec<Stratum>,
    /// 0 for base simplices, `n + 1` for a cell of stratum `n`.
    stage_of: HashMap<SimplexId, usize>,
}

impl PartialEq for CellComplex {
    fn eq(&self, other: &Self) -> bool {
        same_complex(&self.base, &other.base) && self.strata == other.strata
    }
}

impl Eq for CellComplex {}

impl fmt::Debug for CellComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CellComplex").field("base", &self.base.counts()).field("strata", &self.strata).finish()
    }
}

impl CellComplex {
    /// The trivial complex on `x`: no cells, height 0.
    pub fn trivial(x: Arc<DeltaComplex>) -> Self {
        let stage_of = x.iter().map(|(_, id, _)| (id.clone(), 0)).collect();
        CellComplex { base: x, strata: Vec::new(), stage_of }
    }

    /// The height-one structure on `∂Δᵏ -> Δᵏ` with its single cell.
    pub fn canonical(k: usize) -> Self {
        let st = Stratum::canonical(k);
        let mut c = CellComplex::trivial(st.boundary().clone());
        c.stage_of.insert(top_simplex_name(k), 1);
        c.strata.push(st);
        c
    }

    /// Builds a complex from a base and per-stratum cells, checking
    /// connectedness, properness and that no empty stratum precedes a
    /// nonempty one. Trailing empty layers are dropped.
    pub fn from_layers(base: Arc<DeltaComplex>, layers: Vec<Vec<Cell>>) -> Result<Self> {
        let c = Self::glue_layers(base, layers)?;
        c.check_proper()?;
        Ok(c)
    }

    /// Builds from an explicit stratum sequence, checking connectedness and
    /// properness.
    pub fn from_strata(base: Arc<DeltaComplex>, strata: Vec<Stratum>) -> Result<Self> {
        let c = Self::connected(base, strata, false)?;
        c.check_proper()?;
        Ok(c)
    }

    fn glue_layers(base: Arc<DeltaComplex>, mut layers: Vec<Vec<Cell>>) -> Result<Self> {
        while layers.last().is_some_and(|l| l.is_empty()) {
            layers.pop();
        }
        let mut strata = Vec::with_capacity(layers.len());
        let mut cur = base.clone();
        for layer in layers {
            let st = Stratum::new(cur, layer)?;
            cur = st.body_complex().clone();
            strata.push(st);
        }
        Self::connected(base, strata, false)
    }

    /// Checks connectedness only. With `allow_gaps`, empty strata may sit
    /// between nonempty ones (input to the normal form).
    pub(crate) fn connected(base: Arc<DeltaComplex>, mut strata: Vec<Stratum>, allow_gaps: bool) -> Result<Self> {
        while strata.last().is_some_and(|s| s.is_empty()) {
            strata.pop();
        }
        let mut stage_of: HashMap<SimplexId, usize> = base.iter().map(|(_, id, _)| (id.clone(), 0)).collect();
        let mut cur = &base;
        for (n, st) in strata.iter().enumerate() {
            if !same_complex(st.boundary(), cur) {
                bail!(InvalidCells, "stratum {n} is not attached to the body of the previous stratum");
            }
            if st.is_empty() && !allow_gaps {
                bail!(InvalidCells, "empty stratum {n} precedes a nonempty one");
            }
            for c in st.cells() {
                stage_of.insert(c.id.clone(), n + 1);
            }
            cur = st.body_complex();
        }
        Ok(CellComplex { base, strata, stage_of })
    }

    fn check_proper(&self) -> Result<()> {
        for (n, c) in self.cells() {
            let m = self.mec_of_cell(c);
            if m != n {
                bail!(InvalidCells, "cell {} sits in stratum {n} but its attaching map first fits in stage {m}", c.id);
            }
        }
        Ok(())
    }

    /// True when every cell of stratum `n` has minimal enclosing stage `n`.
    pub fn is_proper(&self) -> bool {
        self.check_proper().is_ok()
    }

    pub fn base(&self) -> &Arc<DeltaComplex> {
        &self.base
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    /// Number of nonempty strata.
    pub fn height(&self) -> usize {
        self.strata.len()
    }

    /// Filtration stage `X_n`; stages past the height equal the body.
    pub fn stage(&self, n: usize) -> &Arc<DeltaComplex> {
        match n.min(self.strata.len()) {
            0 => &self.base,
            m => self.strata[m - 1].body_complex(),
        }
    }

    pub fn body(&self) -> &Arc<DeltaComplex> {
        self.stage(self.height())
    }

    pub fn filtration(&self) -> Filtration {
        Filtration::new_unchecked((0..=self.height()).map(|n| self.stage(n).clone()).collect())
    }

    /// `U` of the complex: the inclusion of the base into the body.
    pub fn underlying(&self) -> SimplicialMap {
        SimplicialMap::inclusion_unchecked(self.base.clone(), self.body().clone())
    }

    /// 0 for base simplices, `n + 1` for the glued simplex of a stratum-`n` cell.
    pub fn stage_of(&self, id: &str) -> Option<usize> {
        self.stage_of.get(id).copied()
    }

    /// Stratum index of a cell.
    pub fn stratum_of(&self, id: &str) -> Option<usize> {
        match self.stage_of(id) {
            Some(s) if s > 0 => Some(s - 1),
            _ => None,
        }
    }

    pub fn cell(&self, id: &str) -> Option<&Cell> {
        self.stratum_of(id).and_then(|n| self.strata[n].cell(id))
    }

    /// All cells with their stratum index, stratum by stratum.
    pub fn cells(&self) -> impl Iterator<Item = (usize, &Cell)> + '_ {
        self.strata.iter().enumerate().flat_map(|(n, st)| st.cells().map(move |c| (n, c)))
    }

    pub fn cell_count(&self) -> usize {
        self.strata.iter().map(Stratum::len).sum()
    }

    pub fn stage_counts(&self) -> Vec<usize> {
        self.strata.iter().map(Stratum::len).collect()
    }

    /// Smallest stage containing the attaching map's image.
    pub fn mec_of_cell(&self, c: &Cell) -> usize {
        c.faces.iter().map(|f| self.stage_of[f]).max().unwrap_or(0)
    }

    /// Cells grouped by stratum.
    pub fn layers(&self) -> Vec<Vec<Cell>> {
        self.strata.iter().map(|st| st.cells().cloned().collect()).collect()
    }
}

/// Moves every cell down to the stage its attaching map first fits in.
///
/// The input must be a connected sequence. The result has the same body,
/// the same cell ids and the same underlying map; the comparison map is the
/// identity of that body.
pub fn normalize(base: Arc<DeltaComplex>, strata: Vec<Stratum>) -> Result<(CellComplex, SimplicialMap)> {
    let raw = CellComplex::connected(base, strata, true)?;
    let out = normalize_complex(&raw);
    let cmp = SimplicialMap::identity(out.body().clone());
    Ok((out, cmp))
}

/// Normal form of a connected (possibly improper) complex.
pub(crate) fn normalize_complex(raw: &CellComplex) -> CellComplex {
    let layers = place(raw.cells().map(|(_, c)| c.clone()));
    let out = CellComplex::glue_layers(raw.base.clone(), layers).expect("normal form of a connected sequence is connected");
    debug_assert!(out.is_proper());
    out
}

/// Puts each cell one stratum above the highest stratum among its faces.
/// Cells must arrive after the cells their faces refer to.
fn place(cells: impl IntoIterator<Item = Cell>) -> Vec<Vec<Cell>> {
    let mut layer_of: HashMap<SimplexId, usize> = HashMap::new();
    let mut layers: Vec<Vec<Cell>> = Vec::new();
    for c in cells {
        let n = c.faces.iter().map(|f| layer_of.get(f).map_or(0, |l| l + 1)).max().unwrap_or(0);
        layer_of.insert(c.id.clone(), n);
        if layers.len() <= n {
            layers.resize_with(n + 1, Vec::new);
        }
        layers[n].push(c);
    }
    layers
}

/// Assembles a complex from cells tagged with a stratum index, normalizing
/// the placement. Faces of each cell must be base simplices or cells with a
/// smaller tag.
pub fn complex_from_tagged(base: Arc<DeltaComplex>, mut cells: Vec<(usize, Cell)>) -> Result<CellComplex> {
    cells.sort_by_key(|(n, _)| *n);
    let tag: HashMap<SimplexId, usize> = cells.iter().map(|(n, c)| (c.id.clone(), *n)).collect();
    for (n, c) in &cells {
        if c.faces.iter().any(|f| tag.get(f).is_some_and(|m| m >= n)) {
            bail!(InvalidCells, "cell {} is attached to a cell of the same or a later stratum", c.id);
        }
    }
    CellComplex::from_layers(base, place(cells.into_iter().map(|(_, c)| c)))
}
