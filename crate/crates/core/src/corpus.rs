//! Seeded random instances: complexes, maps, strata, cell complexes, their
//! morphisms, diagrams and lifting squares. Everything is reproducible from
//! the seed and kept small enough for exhaustive checks.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cellcx::{normalize_complex, CellComplex, CellComplexMorphism};
use crate::deltacx::{
    boundary_map, coequaliser, coproduct, shared_boundary, characteristic_map, DeltaComplex, DeltaComplexBuilder,
    HomSearch, SimplexId, SimplicialMap, ArrowSquare,
};
use crate::strata::{Cell, Stratum, StrataMorphism};

/// Size limits for generated instances.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_dim: usize,
    pub max_vertices: usize,
    /// Simplices added per positive dimension.
    pub max_per_dim: usize,
    pub max_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: 2, max_vertices: 3, max_per_dim: 3, max_cells: 4 }
    }
}

/// Seeded generator. Ids it invents are unique across its lifetime, so
/// independently generated pieces never clash.
pub struct Generator {
    rng: ChaCha8Rng,
    next: usize,
    pub limits: Limits,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), next: 0, limits: Limits::default() }
    }

    pub fn with_limits(seed: u64, limits: Limits) -> Self {
        Generator { limits, ..Generator::new(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn fresh(&mut self, prefix: &str) -> SimplexId {
        self.next += 1;
        SimplexId::from(format!("{prefix}{}", self.next))
    }

    /// Random facet images for a `k`-simplex in `x`, optionally over `b` of
    /// `p: x -> B`. `None` when there is no such boundary.
    pub fn boundary_in(&mut self, x: &DeltaComplex, k: usize, over: Option<(&SimplicialMap, &SimplexId)>) -> Option<Vec<SimplexId>> {
        self.boundary_pinned(x, k, over, None)
    }

    /// As `boundary_in`, with facet `i` forced to `y` when `pin = (i, y)`.
    fn boundary_pinned(
        &mut self,
        x: &DeltaComplex,
        k: usize,
        over: Option<(&SimplicialMap, &SimplexId)>,
        pin: Option<(usize, &SimplexId)>,
    ) -> Option<Vec<SimplexId>> {
        if k == 0 {
            return Some(Vec::new());
        }
        let target = over.map(|(p, b)| boundary_map(b, p.cod()).expect("simplex of the codomain"));
        let search = HomSearch::new(x, over.map(|(p, _)| p));
        let dom = shared_boundary(k);
        let facets: Vec<SimplexId> = (0..=k).map(|i| crate::deltacx::facet_name(k, i)).collect();
        let fixed: HashMap<SimplexId, SimplexId> = pin.map(|(i, y)| (facets[i].clone(), y.clone())).into_iter().collect();
        let rng = &mut self.rng;
        let mut found = None;
        search.run(&dom, &fixed, target.as_ref(), Some(&mut |c: &mut Vec<&SimplexId>| c.shuffle(rng)), &mut |sol| {
            let img: HashMap<&SimplexId, &SimplexId> = sol.iter().copied().collect();
            found = Some(facets.iter().map(|f| img[f].clone()).collect());
            false
        });
        found
    }

    /// A random delta complex.
    pub fn complex(&mut self) -> Arc<DeltaComplex> {
        let l = self.limits;
        let nv = self.rng.gen_range(1..=l.max_vertices);
        let mut x = DeltaComplex::empty();
        for _ in 0..nv {
            let v = self.fresh("v");
            x.push_unchecked(v, Vec::new());
        }
        for k in 1..=l.max_dim {
            let n = self.rng.gen_range(0..=l.max_per_dim);
            for _ in 0..n {
                if let Some(faces) = self.boundary_in(&x, k, None) {
                    let id = self.fresh("s");
                    x.push_unchecked(id, faces);
                }
            }
        }
        Arc::new(x)
    }

    /// A random map `A -> b`, building `A` over `b` simplex by simplex.
    pub fn map_into(&mut self, b: &Arc<DeltaComplex>) -> SimplicialMap {
        let l = self.limits;
        let mut a = DeltaComplex::empty();
        let mut assign = BTreeMap::new();
        let verts: Vec<SimplexId> = b.simplices(0).cloned().collect();
        if !verts.is_empty() {
            for _ in 0..self.rng.gen_range(0..=l.max_vertices + 1) {
                let v = self.fresh("a");
                a.push_unchecked(v.clone(), Vec::new());
                assign.insert(v, verts.choose(&mut self.rng).expect("nonempty").clone());
            }
        }
        for k in 1..=l.max_dim.min(b.max_dim().max(0) as usize) {
            let targets: Vec<SimplexId> = b.simplices(k).cloned().collect();
            for _ in 0..self.rng.gen_range(0..=l.max_per_dim + 1) {
                let Some(t) = targets.choose(&mut self.rng).cloned() else { break };
                let p = SimplicialMap::new_unchecked(Arc::new(a.clone()), b.clone(), assign.clone());
                if let Some(faces) = self.boundary_in(&a, k, Some((&p, &t))) {
                    let id = self.fresh("a");
                    a.push_unchecked(id.clone(), faces);
                    assign.insert(id, t);
                }
            }
        }
        SimplicialMap::new_unchecked(Arc::new(a), b.clone(), assign)
    }

    /// A random map between random complexes.
    pub fn map(&mut self) -> SimplicialMap {
        let b = self.complex();
        self.map_into(&b)
    }

    /// A random map out of `x`: a quotient identifying the images of two
    /// simplices of one dimension, followed by an inclusion into a coproduct
    /// with fresh material. Each step is skipped at random.
    pub fn map_out_of(&mut self, x: &Arc<DeltaComplex>) -> SimplicialMap {
        let mut g = SimplicialMap::identity(x.clone());
        if !x.is_empty() && self.rng.gen_bool(0.6) {
            let k = self.rng.gen_range(0..=x.max_dim() as usize);
            let pool: Vec<SimplexId> = x.simplices(k).cloned().collect();
            let (s, t) = (pool.choose(&mut self.rng).expect("nonempty level"), pool.choose(&mut self.rng).expect("nonempty level"));
            let cs = characteristic_map(s, x).expect("simplex of x");
            let ct = characteristic_map(t, x).expect("simplex of x");
            let (_, q) = coequaliser(&cs, &ct).expect("parallel pair");
            g = g.then(&q).expect("composable");
        }
        if self.rng.gen_bool(0.5) {
            let extra = self.complex();
            let (z, legs) = coproduct(&[g.cod().clone(), extra]);
            let _ = z;
            g = g.then(&legs[0]).expect("composable");
        }
        g
    }

    /// Random cells on `x` of dimension at most `max_dim`. With `anchors`,
    /// every cell has a facet among them.
    fn cells_on(&mut self, x: &DeltaComplex, n: usize, anchors: Option<&[SimplexId]>) -> Vec<Cell> {
        let mut out = Vec::new();
        for _ in 0..n {
            let cell = match anchors {
                None => {
                    let k = self.rng.gen_range(0..=self.limits.max_dim);
                    self.boundary_in(x, k, None).map(|faces| (k, faces))
                }
                Some(anchors) => {
                    let usable: Vec<&SimplexId> = anchors.iter().filter(|y| x.dim_of(y).is_some_and(|d| d < self.limits.max_dim)).collect();
                    let Some(y) = usable.choose(&mut self.rng).copied() else { break };
                    let k = x.dim_of(y).expect("anchor in x") + 1;
                    let i = self.rng.gen_range(0..=k);
                    self.boundary_pinned(x, k, None, Some((i, y))).map(|faces| (k, faces))
                }
            };
            if let Some((k, faces)) = cell {
                out.push(Cell { id: self.fresh("c"), dim: k, faces });
            }
        }
        out
    }

    /// A random stratum on `x`.
    pub fn stratum_on(&mut self, x: &Arc<DeltaComplex>) -> Stratum {
        let n = self.rng.gen_range(0..=self.limits.max_cells);
        let cells = self.cells_on(x, n, None);
        Stratum::new(x.clone(), cells).expect("generated cells fit")
    }

    pub fn stratum(&mut self) -> Stratum {
        let x = self.complex();
        self.stratum_on(&x)
    }

    /// A connected sequence of up to `max_strata` strata on `base`, with no
    /// attention to properness.
    pub fn sequence_on(&mut self, base: &Arc<DeltaComplex>, max_strata: usize) -> Vec<Stratum> {
        let mut cur = base.clone();
        let mut out = Vec::new();
        let mut budget = self.limits.max_cells;
        let mut newest: Vec<SimplexId> = Vec::new();
        for _ in 0..self.rng.gen_range(1..=max_strata.max(1)) {
            let n = if budget == 0 { 0 } else { self.rng.gen_range(1..=budget.min(2)) };
            budget -= n;
            // Mostly build on the previous stratum so sequences stay tall.
            let anchored = !newest.is_empty() && self.rng.gen_bool(0.7);
            let cells = self.cells_on(&cur, n, anchored.then_some(newest.as_slice()));
            newest = cells.iter().map(|c| c.id.clone()).collect();
            let st = Stratum::new(cur, cells).expect("generated cells fit");
            cur = st.body_complex().clone();
            out.push(st);
        }
        out
    }

    /// A random proper complex on `base`: a random sequence put in normal form.
    pub fn cell_complex_on(&mut self, base: &Arc<DeltaComplex>) -> CellComplex {
        let seq = self.sequence_on(base, 3);
        let raw = CellComplex::connected(base.clone(), seq, true).expect("generated sequence is connected");
        normalize_complex(&raw)
    }

    pub fn cell_complex(&mut self) -> CellComplex {
        let x = self.complex();
        self.cell_complex_on(&x)
    }

    /// Cells over `h: X -> Z` for the cells of one stratum: pushed cells,
    /// merged at random when they have the same attaching map, plus extras.
    /// Returns the new cells and the cell assignment. `anchors` restricts the
    /// extras as in `cells_on`.
    fn image_cells(
        &mut self,
        cells: &[&Cell],
        h: &SimplicialMap,
        anchors: Option<&[SimplexId]>,
    ) -> (Vec<Cell>, BTreeMap<SimplexId, SimplexId>) {
        let mut groups: BTreeMap<(usize, Vec<SimplexId>), Vec<SimplexId>> = BTreeMap::new();
        let mut out = Vec::new();
        let mut p = BTreeMap::new();
        for c in cells {
            let pushed = c.pushed(h);
            let slot = groups.entry((pushed.dim, pushed.faces.clone())).or_default();
            let reuse = !slot.is_empty() && self.rng.gen_bool(0.5);
            let id = if reuse {
                slot.choose(&mut self.rng).expect("nonempty").clone()
            } else {
                let id = self.fresh("t");
                slot.push(id.clone());
                out.push(Cell { id: id.clone(), dim: pushed.dim, faces: pushed.faces });
                id
            };
            p.insert(c.id.clone(), id);
        }
        let extra = self.rng.gen_range(0..=2);
        out.extend(self.cells_on(h.cod(), extra, anchors));
        (out, p)
    }

    /// A random strata morphism out of `st`.
    pub fn strata_morphism_from(&mut self, st: &Stratum) -> StrataMorphism {
        let g = self.map_out_of(st.boundary());
        let cells: Vec<&Cell> = st.cells().collect();
        let (out, p) = self.image_cells(&cells, &g, None);
        let cod = Stratum::new(g.cod().clone(), out).expect("image cells fit");
        StrataMorphism::new(st.clone(), cod, g, p).expect("generated morphism is valid")
    }

    /// A random cell complex morphism out of `c`.
    pub fn complex_morphism_from(&mut self, c: &CellComplex) -> CellComplexMorphism {
        let g = self.map_out_of(c.base());
        self.complex_morphism_along(c, g)
    }

    /// A random cell complex morphism out of `c` with base map `g`, built
    /// stratum by stratum.
    pub fn complex_morphism_along(&mut self, c: &CellComplex, g: SimplicialMap) -> CellComplexMorphism {
        let z = g.cod().clone();
        let mut h = g.clone();
        let mut strata: Vec<Stratum> = Vec::new();
        let mut p = BTreeMap::new();
        // Extras above the base touch the previous stratum, keeping the image proper.
        let mut newest: Option<Vec<SimplexId>> = None;
        for st in c.strata() {
            let cells: Vec<&Cell> = st.cells().collect();
            let (out, pn) = self.image_cells(&cells, &h, newest.as_deref());
            let cod_st = Stratum::new(h.cod().clone(), out).expect("image cells fit");
            let m = StrataMorphism::new(st.clone(), cod_st.clone(), h.clone(), pn.clone()).expect("stagewise morphism");
            newest = Some(cod_st.cells().map(|s| s.id.clone()).collect());
            h = m.body_map();
            p.extend(pn);
            strata.push(cod_st);
        }
        let cod = CellComplex::from_strata(z, strata).expect("image complex is proper");
        CellComplexMorphism::new(c.clone(), cod, g, p).expect("generated morphism is valid")
    }

    /// Another morphism with the same endpoints and base map as `m`, choosing
    /// at random among cells with matching attaching maps. Falls back to `m`.
    pub fn parallel_to(&mut self, m: &CellComplexMorphism) -> CellComplexMorphism {
        let mut img: BTreeMap<SimplexId, SimplexId> = m.base.assignment().clone();
        let mut p = BTreeMap::new();
        for (n, s) in m.dom.cells() {
            let faces: Vec<SimplexId> = s.faces.iter().map(|f| img[f].clone()).collect();
            let cands: Vec<&Cell> = m.cod.strata()[n].cells().filter(|t| t.dim == s.dim && t.faces == faces).collect();
            let Some(t) = cands.choose(&mut self.rng) else { return m.clone() };
            img.insert(s.id.clone(), t.id.clone());
            p.insert(s.id.clone(), t.id.clone());
        }
        CellComplexMorphism::new(m.dom.clone(), m.cod.clone(), m.base.clone(), p).unwrap_or_else(|_| m.clone())
    }

    /// A random map `x -> z`, if there is one.
    pub fn hom(&mut self, x: &Arc<DeltaComplex>, z: &Arc<DeltaComplex>) -> Option<SimplicialMap> {
        let rng = &mut self.rng;
        let mut found = None;
        HomSearch::new(z, None).run(x, &HashMap::new(), None, Some(&mut |v: &mut Vec<&SimplexId>| v.shuffle(rng)), &mut |sol| {
            found = Some(sol.iter().map(|(a, b)| ((*a).clone(), (*b).clone())).collect::<BTreeMap<_, _>>());
            false
        });
        Some(SimplicialMap::new_unchecked(x.clone(), z.clone(), found?))
    }

    /// Two strata morphisms out of `st` into one stratum, with independently
    /// chosen base maps.
    pub fn parallel_pair_from(&mut self, st: &Stratum) -> (StrataMorphism, StrataMorphism) {
        let g1 = self.map_out_of(st.boundary());
        let g2 = if self.rng.gen_bool(0.5) { self.hom(st.boundary(), g1.cod()).expect("g1 is one") } else { g1.clone() };
        let cells: Vec<&Cell> = st.cells().collect();
        let (mut out, p1) = self.image_cells(&cells, &g1, None);
        let mut p2 = BTreeMap::new();
        for c in &cells {
            let pushed = c.pushed(&g2);
            let same: Vec<SimplexId> = out.iter().filter(|t| t.dim == pushed.dim && t.faces == pushed.faces).map(|t| t.id.clone()).collect();
            let id = match same.choose(&mut self.rng) {
                Some(t) if self.rng.gen_bool(0.7) => t.clone(),
                _ => {
                    let id = self.fresh("t");
                    out.push(Cell { id: id.clone(), dim: pushed.dim, faces: pushed.faces });
                    id
                }
            };
            p2.insert(c.id.clone(), id);
        }
        let cod = Stratum::new(g1.cod().clone(), out).expect("image cells fit");
        let m1 = StrataMorphism::new(st.clone(), cod.clone(), g1, p1).expect("generated morphism is valid");
        let m2 = StrataMorphism::new(st.clone(), cod, g2, p2).expect("generated morphism is valid");
        (m1, m2)
    }

    /// Strata version of `parallel_to`.
    pub fn parallel_strata(&mut self, m: &StrataMorphism) -> StrataMorphism {
        let mut p = BTreeMap::new();
        for s in m.dom.cells() {
            let pushed = s.pushed(&m.f);
            let cands: Vec<&Cell> = m.cod.cells().filter(|t| t.dim == pushed.dim && t.faces == pushed.faces).collect();
            let t = cands.choose(&mut self.rng).expect("image cell exists");
            p.insert(s.id.clone(), t.id.clone());
        }
        StrataMorphism::new(m.dom.clone(), m.cod.clone(), m.f.clone(), p).expect("same attaching maps")
    }

    /// A commuting square `(g, h): U(c) -> f` with `g` a random endomorphism
    /// of the base, which must be the domain of `f`.
    pub fn square_from(&mut self, c: &CellComplex, f: &SimplicialMap) -> Option<ArrowSquare> {
        let x = c.base();
        let y = c.body();
        let g = self.hom(x, f.dom())?;
        let rng = &mut self.rng;
        let fixed: HashMap<SimplexId, SimplexId> = x.iter().map(|(_, id, _)| (id.clone(), f.at(g.at(id)).clone())).collect();
        let mut h = None;
        HomSearch::new(f.cod(), None).run(y, &fixed, None, Some(&mut |v: &mut Vec<&SimplexId>| v.shuffle(rng)), &mut |sol| {
            h = Some(sol.iter().map(|(a, b)| ((*a).clone(), (*b).clone())).collect::<BTreeMap<_, _>>());
            false
        });
        let h = SimplicialMap::new_unchecked(y.clone(), f.cod().clone(), h?);
        Some(ArrowSquare { top: g, bottom: h, left: c.underlying(), right: f.clone() })
    }

    /// Shuffles a slice with the generator's stream.
    pub fn shuffle<T>(&mut self, v: &mut [T]) {
        v.shuffle(&mut self.rng);
    }
}

/// `Δ⁰ ⊔ Δ⁰ -> Δ⁰`.
pub fn fold_map() -> SimplicialMap {
    let two = Arc::new(DeltaComplexBuilder::new().vertex("a").and_then(|b| b.vertex("b")).and_then(|b| b.build()).expect("two points"));
    let pt = Arc::new(crate::deltacx::standard_simplex(0));
    let v = pt.simplices(0).next().expect("one vertex").clone();
    SimplicialMap::new(two.clone(), pt, two.simplices(0).map(|x| (x.clone(), v.clone())).collect()).expect("fold map")
}

/// `∂Δᵏ -> Δᵏ`.
pub fn boundary_inclusion(k: usize) -> SimplicialMap {
    CellComplex::canonical(k).underlying()
}

/// `∅ -> Δ⁰`.
pub fn point_inclusion() -> SimplicialMap {
    boundary_inclusion(0)
}

/// The named fixture maps used by the law suite.
pub fn fixtures() -> Vec<(&'static str, SimplicialMap)> {
    vec![
        ("empty_to_point", point_inclusion()),
        ("boundary_1", boundary_inclusion(1)),
        ("fold", fold_map()),
        ("boundary_2", boundary_inclusion(2)),
        ("identity_1", SimplicialMap::identity(Arc::new(crate::deltacx::standard_simplex(1)))),
    ]
}
