use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::SimplexId;
use crate::error::{bail, Result};

/// A finite truncated semisimplicial set.
///
/// Level `k` maps each `k`-simplex to its ordered face list `[d_0 x, .., d_k x]`
/// (empty for vertices). Trailing empty levels are never stored, so
/// `max_dim` is exact.
#[derive(Clone, Default)]
pub struct DeltaComplex {
    levels: Vec<BTreeMap<SimplexId, Vec<SimplexId>>>,
    dims: HashMap<SimplexId, usize>,
}

impl PartialEq for DeltaComplex {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
    }
}

impl Eq for DeltaComplex {}

impl fmt::Debug for DeltaComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (k, level) in self.levels.iter().enumerate() {
            m.entry(&k, level);
        }
        m.finish()
    }
}

impl DeltaComplex {
    pub fn empty() -> Self {
        DeltaComplex::default()
    }

    /// Builds a complex from per-dimension `(id, faces)` lists and validates it.
    pub fn from_levels<I, S>(levels: Vec<I>) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<S>)>,
        S: Into<SimplexId>,
    {
        let mut b = DeltaComplexBuilder::new();
        for (k, level) in levels.into_iter().enumerate() {
            for (id, faces) in level {
                let faces: Vec<SimplexId> = faces.into_iter().map(Into::into).collect();
                if faces.len() != if k == 0 { 0 } else { k + 1 } {
                    bail!(InvalidComplex, "simplex at level {k} has {} faces", faces.len());
                }
                b.push(id.into(), faces)?;
            }
        }
        b.build()
    }

    /// `-1` for the empty complex.
    pub fn max_dim(&self) -> isize {
        self.levels.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Total number of simplices.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn count(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, BTreeMap::len)
    }

    /// Simplex counts per dimension, `[|X_0|, |X_1|, ..]`.
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(BTreeMap::len).collect()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.dims.contains_key(id)
    }

    pub fn dim_of(&self, id: &str) -> Option<usize> {
        self.dims.get(id).copied()
    }

    /// The `k`-simplices in identifier order.
    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &SimplexId> + '_ {
        self.levels.get(k).into_iter().flat_map(|l| l.keys())
    }

    pub fn level(&self, k: usize) -> Option<&BTreeMap<SimplexId, Vec<SimplexId>>> {
        self.levels.get(k)
    }

    /// All simplices in (dimension, identifier) order, with their face lists.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &SimplexId, &[SimplexId])> + '_ {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(k, l)| l.iter().map(move |(id, fs)| (k, id, fs.as_slice())))
    }

    /// Interned handle for `id`, if present.
    pub fn get_id(&self, id: &str) -> Option<&SimplexId> {
        self.dims.get_key_value(id).map(|(k, _)| k)
    }

    pub fn faces(&self, id: &str) -> Option<&[SimplexId]> {
        let k = self.dim_of(id)?;
        self.levels[k].get(id).map(Vec::as_slice)
    }

    /// Face list of a simplex known to be present.
    pub(crate) fn faces_of(&self, id: &str) -> &[SimplexId] {
        self.faces(id).unwrap_or_else(|| panic!("simplex {id} not in complex"))
    }

    /// The face of `x` spanned by the vertex positions `keep` (sorted, a subset
    /// of `0..=dim x`). Deletes missing positions from the highest down so that
    /// earlier deletions never shift later indices.
    pub fn face_spanned(&self, x: &str, keep: &[usize]) -> Option<SimplexId> {
        let k = self.dim_of(x)?;
        let mut cur = self.get_id(x)?.clone();
        for j in (0..=k).rev() {
            if !keep.contains(&j) {
                cur = self.faces(&cur)?[j].clone();
            }
        }
        Some(cur)
    }

    /// Checks face references, dimensions, and the simplicial identities
    /// `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn validate(&self) -> Result<()> {
        for (k, level) in self.levels.iter().enumerate() {
            if level.is_empty() && k + 1 == self.levels.len() {
                bail!(InvalidComplex, "trailing empty level {k}");
            }
            for (x, faces) in level {
                if self.dims.get(x) != Some(&k) {
                    bail!(InvalidComplex, "identifier {x} is not unique");
                }
                let expect = if k == 0 { 0 } else { k + 1 };
                if faces.len() != expect {
                    bail!(InvalidComplex, "{x} has {} faces, expected {expect}", faces.len());
                }
                for f in faces {
                    if self.dims.get(f.as_str()) != Some(&(k - 1)) {
                        bail!(InvalidComplex, "face {f} of {k}-simplex {x} is not a {}-simplex", k - 1);
                    }
                }
                if k >= 2 {
                    for j in 1..=k {
                        for i in 0..j {
                            let lhs = &self.levels[k - 1][&faces[j]][i];
                            let rhs = &self.levels[k - 1][&faces[i]][j - 1];
                            if lhs != rhs {
                                bail!(
                                    InvalidComplex,
                                    "simplicial identity fails at {x}: d{i} d{j} = {lhs} but d{} d{i} = {rhs}",
                                    j - 1
                                );
                            }
                        }
                    }
                }
            }
        }
        if self.dims.len() != self.levels.iter().map(BTreeMap::len).sum::<usize>() {
            bail!(InvalidComplex, "identifiers repeat across dimensions");
        }
        Ok(())
    }

    /// True when every simplex of `self` is in `other` with the same faces.
    pub fn is_subcomplex_of(&self, other: &DeltaComplex) -> bool {
        self.iter().all(|(k, id, faces)| {
            other.levels.get(k).and_then(|l| l.get(id)).is_some_and(|f| f.as_slice() == faces)
        })
    }

    /// Adds a simplex without validating it.
    pub(crate) fn push_unchecked(&mut self, id: SimplexId, faces: Vec<SimplexId>) {
        let k = if faces.is_empty() { 0 } else { faces.len() - 1 };
        while self.levels.len() <= k {
            self.levels.push(BTreeMap::new());
        }
        self.dims.insert(id.clone(), k);
        self.levels[k].insert(id, faces);
    }

    /// The subcomplex on the simplices selected by `keep`. The caller
    /// guarantees the selection is closed under faces.
    pub(crate) fn filter_unchecked(&self, mut keep: impl FnMut(&SimplexId) -> bool) -> DeltaComplex {
        let mut out = DeltaComplex::empty();
        for (_, id, faces) in self.iter() {
            if keep(id) {
                out.push_unchecked(id.clone(), faces.to_vec());
            }
        }
        out
    }
}

/// Incremental constructor; `build` validates.
#[derive(Default)]
pub struct DeltaComplexBuilder {
    inner: DeltaComplex,
}

impl DeltaComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<SimplexId>) -> Result<Self> {
        self.push(id.into(), Vec::new())?;
        Ok(self)
    }

    pub fn simplex<S: Into<SimplexId>>(mut self, id: impl Into<SimplexId>, faces: Vec<S>) -> Result<Self> {
        self.push(id.into(), faces.into_iter().map(Into::into).collect())?;
        Ok(self)
    }

    pub fn push(&mut self, id: SimplexId, faces: Vec<SimplexId>) -> Result<()> {
        if faces.len() == 1 {
            bail!(InvalidComplex, "{id}: a simplex cannot have exactly one face");
        }
        if self.inner.contains(&id) {
            bail!(InvalidComplex, "duplicate identifier {id}");
        }
        self.inner.push_unchecked(id, faces);
        Ok(())
    }

    pub fn build(self) -> Result<DeltaComplex> {
        self.inner.validate()?;
        Ok(self.inner)
    }
}

/// Canonical name of a vertex subset of `{0, .., k}`: concatenated digits
/// ("013") when `k <= 9`, comma separated otherwise.
pub fn vertex_set_name(vertices: &[usize], k: usize) -> SimplexId {
    let parts: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
    if k <= 9 {
        SimplexId::from(parts.concat())
    } else {
        SimplexId::from(parts.join(","))
    }
}

fn simplex_on_subsets(k: usize, include_top: bool) -> DeltaComplex {
    let mut out = DeltaComplex::empty();
    let top = if include_top { k } else { k.saturating_sub(1) };
    if !include_top && k == 0 {
        return out;
    }
    for m in 0..=top {
        for subset in subsets_of_size(k + 1, m + 1) {
            let faces = if m == 0 {
                Vec::new()
            } else {
                (0..=m)
                    .map(|i| {
                        let mut s = subset.clone();
                        s.remove(i);
                        vertex_set_name(&s, k)
                    })
                    .collect()
            };
            out.push_unchecked(vertex_set_name(&subset, k), faces);
        }
    }
    out
}

/// Sorted `size`-element subsets of `0..n`, in lexicographic order.
pub(crate) fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < size - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// The standard simplex: `m`-simplices are the `(m+1)`-subsets of `{0..k}`,
/// and `d_i` deletes the `i`-th smallest vertex.
pub fn standard_simplex(k: usize) -> DeltaComplex {
    simplex_on_subsets(k, true)
}

/// The standard simplex with its top simplex removed; empty for `k = 0`.
pub fn boundary_complex(k: usize) -> DeltaComplex {
    simplex_on_subsets(k, false)
}

/// Name of the top simplex of `standard_simplex(k)`.
pub fn top_simplex_name(k: usize) -> SimplexId {
    vertex_set_name(&(0..=k).collect::<Vec<_>>(), k)
}

/// Name of the facet `d_i` of the top simplex of `standard_simplex(k)`.
pub fn facet_name(k: usize, i: usize) -> SimplexId {
    let vs: Vec<usize> = (0..=k).filter(|&v| v != i).collect();
    vertex_set_name(&vs, k)
}
