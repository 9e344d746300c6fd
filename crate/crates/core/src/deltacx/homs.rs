use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::complex::{boundary_complex, standard_simplex, subsets_of_size, vertex_set_name};
use super::{DeltaComplex, SimplexId, SimplicialMap};
use crate::error::{bail, Result};

fn cached(table: &'static OnceLock<Mutex<HashMap<usize, Arc<DeltaComplex>>>>, k: usize, make: fn(usize) -> DeltaComplex) -> Arc<DeltaComplex> {
    let mut t = table.get_or_init(Default::default).lock().expect("simplex cache poisoned");
    t.entry(k).or_insert_with(|| Arc::new(make(k))).clone()
}

/// Shared copy of `standard_simplex(k)`.
pub fn shared_simplex(k: usize) -> Arc<DeltaComplex> {
    static T: OnceLock<Mutex<HashMap<usize, Arc<DeltaComplex>>>> = OnceLock::new();
    cached(&T, k, standard_simplex)
}

/// Shared copy of `boundary_complex(k)`.
pub fn shared_boundary(k: usize) -> Arc<DeltaComplex> {
    static T: OnceLock<Mutex<HashMap<usize, Arc<DeltaComplex>>>> = OnceLock::new();
    cached(&T, k, boundary_complex)
}

/// The map `Δᵏ -> x` classifying the `k`-simplex `b`.
pub fn characteristic_map(b: &str, x: &Arc<DeltaComplex>) -> Result<SimplicialMap> {
    let Some(k) = x.dim_of(b) else {
        bail!(InvalidMap, "simplex {b} not in complex");
    };
    spanned_map(b, k, x, shared_simplex(k), k + 1)
}

/// The restriction `∂Δᵏ -> x` of the classifying map of `b`.
pub fn boundary_map(b: &str, x: &Arc<DeltaComplex>) -> Result<SimplicialMap> {
    let Some(k) = x.dim_of(b) else {
        bail!(InvalidMap, "simplex {b} not in complex");
    };
    spanned_map(b, k, x, shared_boundary(k), k)
}

fn spanned_map(b: &str, k: usize, x: &Arc<DeltaComplex>, dom: Arc<DeltaComplex>, max_size: usize) -> Result<SimplicialMap> {
    let mut assign = BTreeMap::new();
    for size in 1..=max_size {
        for s in subsets_of_size(k + 1, size) {
            let img = x.face_spanned(b, &s).expect("face of present simplex");
            assign.insert(vertex_set_name(&s, k), img);
        }
    }
    Ok(SimplicialMap::new_unchecked(dom, x.clone(), assign))
}

/// Extra conditions on the maps `h: dom -> cod` being enumerated.
#[derive(Clone, Copy, Default)]
pub struct HomConstraint<'a> {
    /// `(i: W -> dom, u: W -> cod)`: require `h ∘ i = u`.
    pub under: Option<(&'a SimplicialMap, &'a SimplicialMap)>,
    /// `(p: cod -> Z, v: dom -> Z)`: require `p ∘ h = v`.
    pub over: Option<(&'a SimplicialMap, &'a SimplicialMap)>,
}

/// Optional permutation of each candidate list before it is tried.
pub type Reorder<'r, 'a> = &'r mut dyn FnMut(&mut Vec<&'a SimplexId>);
/// Receives each solution as (domain simplex, image) pairs; `false` stops.
pub type Visit<'v, 'a> = &'v mut dyn FnMut(&[(&SimplexId, &'a SimplexId)]) -> bool;

/// Reusable backtracking search for maps into a fixed codomain, optionally
/// over a fixed map `p: cod -> Z`. Building the indices once lets callers run
/// many searches against the same target.
pub struct HomSearch<'a> {
    cod: &'a DeltaComplex,
    over: Option<&'a SimplicialMap>,
    by_faces: HashMap<&'a [SimplexId], Vec<&'a SimplexId>>,
    vertex_fibers: HashMap<Option<&'a SimplexId>, Vec<&'a SimplexId>>,
}

impl<'a> HomSearch<'a> {
    pub fn new(cod: &'a DeltaComplex, over: Option<&'a SimplicialMap>) -> Self {
        let mut by_faces: HashMap<&'a [SimplexId], Vec<&'a SimplexId>> = HashMap::new();
        let mut vertex_fibers: HashMap<Option<&'a SimplexId>, Vec<&'a SimplexId>> = HashMap::new();
        for (k, id, faces) in cod.iter() {
            if k == 0 {
                let key = over.map(|p| p.at(id));
                vertex_fibers.entry(key).or_default().push(id);
            } else {
                by_faces.entry(faces).or_default().push(id);
            }
        }
        HomSearch { cod, over, by_faces, vertex_fibers }
    }

    /// Runs the search. `fixed` pins images of some domain simplices, `target`
    /// is the required composite `p ∘ h` (needed iff the search is over a map).
    /// `visit` receives each solution in domain (dimension, id) order and
    /// returns `false` to stop. Solutions arrive in lexicographic order of
    /// codomain ids unless `reorder` permutes the candidate lists.
    pub fn run(
        &self,
        dom: &DeltaComplex,
        fixed: &HashMap<SimplexId, SimplexId>,
        target: Option<&SimplicialMap>,
        reorder: Option<Reorder<'_, 'a>>,
        visit: Visit<'_, 'a>,
    ) {
        assert_eq!(self.over.is_some(), target.is_some(), "target composite must accompany an over-constraint");
        let order: Vec<(usize, &SimplexId, &[SimplexId])> = dom.iter().collect();
        let mut pos: HashMap<&str, usize> = HashMap::with_capacity(order.len());
        for (i, (_, x, _)) in order.iter().enumerate() {
            pos.insert(x.as_str(), i);
        }
        let mut st = State { order, pos, chosen: Vec::new(), reorder, visit };
        self.step(&mut st, fixed, target);
    }

    fn candidates(
        &self,
        k: usize,
        x: &SimplexId,
        face_imgs: &[SimplexId],
        fixed: &HashMap<SimplexId, SimplexId>,
        target: Option<&SimplicialMap>,
    ) -> Vec<&'a SimplexId> {
        let want = target.map(|v| v.at(x));
        let fits_over = |c: &SimplexId| match (self.over, want) {
            (Some(p), Some(w)) => p.at(c) == w,
            _ => true,
        };
        if let Some(y) = fixed.get(x) {
            let Some(y) = self.cod.get_id(y) else { return Vec::new() };
            if self.cod.dim_of(y) != Some(k) || self.cod.faces_of(y) != face_imgs || !fits_over(y) {
                return Vec::new();
            }
            return vec![y];
        }
        if k == 0 {
            self.vertex_fibers.get(&want).cloned().unwrap_or_default()
        } else {
            self.by_faces
                .get(face_imgs)
                .map(|cs| cs.iter().copied().filter(|c| fits_over(c)).collect())
                .unwrap_or_default()
        }
    }

    fn step(&self, st: &mut State<'_, 'a, '_, '_>, fixed: &HashMap<SimplexId, SimplexId>, target: Option<&SimplicialMap>) -> bool {
        let i = st.chosen.len();
        if i == st.order.len() {
            let sol: Vec<(&SimplexId, &'a SimplexId)> =
                st.order.iter().zip(&st.chosen).map(|((_, x, _), y)| (*x, *y)).collect();
            return (st.visit)(&sol);
        }
        let (k, x, faces) = st.order[i];
        let face_imgs: Vec<SimplexId> = faces.iter().map(|f| st.chosen[st.pos[f.as_str()]].clone()).collect();
        let mut cands = self.candidates(k, x, &face_imgs, fixed, target);
        if let Some(r) = st.reorder.as_mut() {
            r(&mut cands);
        }
        for c in cands {
            st.chosen.push(c);
            let go_on = self.step(st, fixed, target);
            st.chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

struct State<'s, 'a, 'r, 'v> {
    order: Vec<(usize, &'s SimplexId, &'s [SimplexId])>,
    pos: HashMap<&'s str, usize>,
    chosen: Vec<&'a SimplexId>,
    reorder: Option<Reorder<'r, 'a>>,
    visit: Visit<'v, 'a>,
}

/// Pins `h(i(w)) = u(w)`; `None` when the pins conflict.
pub(crate) fn pins_from_under(i: &SimplicialMap, u: &SimplicialMap) -> Option<HashMap<SimplexId, SimplexId>> {
    let mut fixed: HashMap<SimplexId, SimplexId> = HashMap::new();
    for (w, x) in i.assignment() {
        let y = u.at(w);
        match fixed.get(x) {
            Some(prev) if prev != y => return None,
            _ => {
                fixed.insert(x.clone(), y.clone());
            }
        }
    }
    Some(fixed)
}

/// All maps `dom -> cod` satisfying `constraint`, in lexicographic order.
pub fn enumerate_homs(
    dom: &Arc<DeltaComplex>,
    cod: &Arc<DeltaComplex>,
    constraint: HomConstraint<'_>,
) -> Result<Vec<SimplicialMap>> {
    if let Some((i, u)) = constraint.under {
        if !super::same_complex(i.cod(), dom) || !super::same_complex(u.cod(), cod) || !super::same_complex(i.dom(), u.dom()) {
            bail!(NotComposable, "under-constraint endpoints do not match");
        }
    }
    if let Some((p, v)) = constraint.over {
        if !super::same_complex(p.dom(), cod) || !super::same_complex(v.dom(), dom) || !super::same_complex(p.cod(), v.cod()) {
            bail!(NotComposable, "over-constraint endpoints do not match");
        }
    }
    let fixed = match constraint.under {
        Some((i, u)) => match pins_from_under(i, u) {
            Some(f) => f,
            None => return Ok(Vec::new()),
        },
        None => HashMap::new(),
    };
    let search = HomSearch::new(cod, constraint.over.map(|(p, _)| p));
    let mut out = Vec::new();
    search.run(dom, &fixed, constraint.over.map(|(_, v)| v), None, &mut |sol| {
        let assign = sol.iter().map(|(x, y)| ((*x).clone(), (*y).clone())).collect();
        out.push(SimplicialMap::new_unchecked(dom.clone(), cod.clone(), assign));
        true
    });
    Ok(out)
}
