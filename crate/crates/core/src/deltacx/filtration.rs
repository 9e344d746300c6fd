use std::collections::HashMap;
use std::sync::Arc;

use super::{DeltaComplex, SimplexId, SimplicialMap};
use crate::error::{bail, Result};

/// A chain of literal subcomplexes `X_0 ⊆ X_1 ⊆ .. ⊆ X_h`.
#[derive(Clone, Debug)]
pub struct Filtration {
    stages: Vec<Arc<DeltaComplex>>,
    first_stage: HashMap<SimplexId, usize>,
}

impl Filtration {
    pub fn new(stages: Vec<Arc<DeltaComplex>>) -> Result<Self> {
        if stages.is_empty() {
            bail!(InvalidComplex, "a filtration needs at least one stage");
        }
        for (n, w) in stages.windows(2).enumerate() {
            if !w[0].is_subcomplex_of(&w[1]) {
                bail!(InvalidComplex, "stage {n} is not a subcomplex of stage {}", n + 1);
            }
        }
        Ok(Self::new_unchecked(stages))
    }

    pub(crate) fn new_unchecked(stages: Vec<Arc<DeltaComplex>>) -> Self {
        let mut first_stage = HashMap::new();
        for (n, x) in stages.iter().enumerate() {
            for (_, id, _) in x.iter() {
                first_stage.entry(id.clone()).or_insert(n);
            }
        }
        Filtration { stages, first_stage }
    }

    pub fn stages(&self) -> &[Arc<DeltaComplex>] {
        &self.stages
    }

    pub fn top(&self) -> &Arc<DeltaComplex> {
        self.stages.last().expect("nonempty")
    }

    /// The first stage containing `id`.
    pub fn stage_of(&self, id: &str) -> Option<usize> {
        self.first_stage.get(id).copied()
    }

    /// Minimal enclosing stage: the smallest `n` with `image(u) ⊆ X_n`.
    pub fn mec(&self, u: &SimplicialMap) -> Result<usize> {
        if !u.cod().is_subcomplex_of(self.top()) || !self.top().is_subcomplex_of(u.cod()) {
            bail!(NotComposable, "map does not land in the top stage");
        }
        Ok(self.mec_of(u.assignment().values()))
    }

    /// `mec` of a set of simplices of the top stage.
    pub fn mec_of<'a>(&self, ids: impl IntoIterator<Item = &'a SimplexId>) -> usize {
        ids.into_iter().map(|x| self.first_stage[x]).max().unwrap_or(0)
    }
}
