use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::deltacx::{enumerate_homs, pushout, ArrowSquare, HomConstraint, SimplexId, SimplicialMap};
use crate::error::{bail, Error, Result};
use crate::json::MapJson;

use super::{free_complex, k_map, transpose, unit, FactorResult};

/// Memoizes free factorizations by input map.
pub struct Factorizer {
    cap: usize,
    cache: Vec<Arc<FactorResult>>,
}

impl Factorizer {
    pub fn new(cap: usize) -> Self {
        Factorizer { cap, cache: Vec::new() }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn get(&mut self, f: &SimplicialMap) -> Result<Arc<FactorResult>> {
        if let Some(hit) = self.cache.iter().find(|r| r.input() == f) {
            return Ok(hit.clone());
        }
        let r = Arc::new(free_complex(f, self.cap)?);
        self.cache.push(r.clone());
        Ok(r)
    }

    /// `M(a, b)` for a square `(a, b): f -> g`.
    pub fn m(&mut self, sq: &ArrowSquare) -> Result<SimplicialMap> {
        let kf = self.get(&sq.left)?;
        let kg = self.get(&sq.right)?;
        k_map(sq, &kf, &kg)
    }

    /// `μ_f: M(Ef) -> Mf`.
    pub fn mu(&mut self, f: &SimplicialMap) -> Result<SimplicialMap> {
        let kf = self.get(f)?;
        let kef = self.get(kf.ef())?;
        monad_mult(&kf, &kef)
    }

    /// `δ_f: Mf -> M(UKf)`.
    pub fn delta(&mut self, f: &SimplicialMap) -> Result<SimplicialMap> {
        let kf = self.get(f)?;
        let kukf = self.get(&kf.left())?;
        comonad_comult(&kf, &kukf)
    }
}

/// `η_f = (UKf, 1_B): f -> Ef`.
pub fn monad_unit(kf: &FactorResult) -> ArrowSquare {
    ArrowSquare {
        top: kf.left(),
        bottom: SimplicialMap::identity(kf.input().cod().clone()),
        left: kf.input().clone(),
        right: kf.ef().clone(),
    }
}

/// `μ_f`: body part of the transpose of `(1_A, E(Ef))` out of
/// `K(Ef) ∗ Kf`.
pub fn monad_mult(kf: &FactorResult, kef: &FactorResult) -> Result<SimplicialMap> {
    if kef.input() != kf.ef() {
        bail!(NotComposable, "second factorization is not of Ef");
    }
    let composite = crate::cellcx::compose_complexes(kf.complex(), kef.complex())?;
    let sq = ArrowSquare {
        top: SimplicialMap::identity(kf.input().dom().clone()),
        bottom: kef.ef().clone(),
        left: composite.underlying(),
        right: kf.input().clone(),
    };
    Ok(transpose(&composite, &sq, kf)?.body_map())
}

/// `δ_f`: body part of the unit `Kf -> K(UKf)`.
pub fn comonad_comult(kf: &FactorResult, kukf: &FactorResult) -> Result<SimplicialMap> {
    if *kukf.input() != kf.left() {
        bail!(NotComposable, "second factorization is not of UKf");
    }
    Ok(unit(kf.complex(), kukf)?.body_map())
}

/// Outcome of one law.
#[derive(Clone, Debug, Serialize)]
pub struct LawResult {
    pub law: &'static str,
    pub holds: bool,
    /// Both sides, when they differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub lhs: MapJson,
    pub rhs: MapJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub map: MapJson,
    pub laws: Vec<LawResult>,
    /// Set when a factorization could not be built; later laws are missing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub cap_exceeded: bool,
}

impl LawReport {
    pub fn all_hold(&self) -> bool {
        self.error.is_none() && self.laws.iter().all(|l| l.holds)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == name)
    }
}

/// Names of the checked laws, in report order.
pub const LAWS: [&str; 9] = [
    "factorization",
    "monad_unit_left",
    "monad_unit_right",
    "monad_associativity",
    "comonad_counit_left",
    "comonad_counit_right",
    "comonad_coassociativity",
    "distributivity",
    "naturality",
];

fn compare(law: &'static str, lhs: &SimplicialMap, rhs: &SimplicialMap) -> LawResult {
    let holds = lhs == rhs;
    let witness = (!holds).then(|| Witness { lhs: MapJson::from(lhs), rhs: MapJson::from(rhs) });
    LawResult { law, holds, witness }
}

/// Checks every awfs identity for `f` by exact equality of maps. The
/// naturality law is checked on the given squares `(a, b): f -> g`.
pub fn check_awfs_laws(f: &SimplicialMap, fz: &mut Factorizer, squares: &[ArrowSquare]) -> LawReport {
    let mut report = LawReport { map: MapJson::from(f), laws: Vec::new(), error: None, cap_exceeded: false };
    if let Err(e) = run_laws(f, fz, squares, &mut report.laws) {
        report.cap_exceeded = matches!(e, Error::CapExceeded { .. });
        report.error = Some(e.to_string());
    }
    report
}

fn run_laws(f: &SimplicialMap, fz: &mut Factorizer, squares: &[ArrowSquare], out: &mut Vec<LawResult>) -> Result<()> {
    let kf = fz.get(f)?;
    let ef = kf.ef().clone();
    let ukf = kf.left();
    out.push(compare("factorization", &ukf.then(&ef)?, f));

    let mf_id = SimplicialMap::identity(kf.middle().clone());
    let kef = fz.get(&ef)?;
    let mu = monad_mult(&kf, &kef)?;
    out.push(compare("monad_unit_left", &kef.left().then(&mu)?, &mf_id));
    let m_eta = fz.m(&monad_unit(&kf))?;
    out.push(compare("monad_unit_right", &m_eta.then(&mu)?, &mf_id));

    let mu_ef = fz.mu(&ef)?;
    let eef = kef.ef().clone();
    let mu_sq = ArrowSquare { top: mu.clone(), bottom: SimplicialMap::identity(f.cod().clone()), left: eef, right: ef.clone() };
    let m_mu = fz.m(&mu_sq)?;
    out.push(compare("monad_associativity", &mu_ef.then(&mu)?, &m_mu.then(&mu)?));

    let kukf = fz.get(&ukf)?;
    let delta = comonad_comult(&kf, &kukf)?;
    out.push(compare("comonad_counit_left", &delta.then(kukf.ef())?, &mf_id));
    let eps = super::counit(&kf);
    let m_eps = fz.m(&eps)?;
    out.push(compare("comonad_counit_right", &delta.then(&m_eps)?, &mf_id));

    let delta_ukf = fz.delta(&ukf)?;
    let delta_sq = ArrowSquare { top: SimplicialMap::identity(f.dom().clone()), bottom: delta.clone(), left: ukf.clone(), right: kukf.left() };
    let m_delta = fz.m(&delta_sq)?;
    out.push(compare("comonad_coassociativity", &delta.then(&delta_ukf)?, &delta.then(&m_delta)?));

    // δ_f ∘ μ_f = μ_{UKf} ∘ M(δ_f, μ_f) ∘ δ_{Ef}
    let delta_ef = fz.delta(&ef)?;
    let mix = ArrowSquare { top: delta.clone(), bottom: mu.clone(), left: kef.left(), right: kukf.ef().clone() };
    let m_mix = fz.m(&mix)?;
    let mu_ukf = fz.mu(&ukf)?;
    out.push(compare("distributivity", &mu.then(&delta)?, &delta_ef.then(&m_mix)?.then(&mu_ukf)?));

    let mut nat = LawResult { law: "naturality", holds: true, witness: None };
    for sq in squares {
        if sq.left != *f {
            bail!(NotComposable, "naturality square does not start at the checked map");
        }
        let kg = fz.get(&sq.right)?;
        let mab = fz.m(sq)?;
        // η: M(a, b) ∘ UKf = UKg ∘ a
        let r = compare("naturality", &ukf.then(&mab)?, &sq.top.then(&kg.left())?);
        if !r.holds {
            nat = r;
            break;
        }
        // μ: M(a, b) ∘ μ_f = μ_g ∘ M(M(a, b), b)
        let lifted = ArrowSquare { top: mab.clone(), bottom: sq.bottom.clone(), left: ef.clone(), right: kg.ef().clone() };
        let m_lifted = fz.m(&lifted)?;
        let mu_g = fz.mu(&sq.right)?;
        let r = compare("naturality", &mu.then(&mab)?, &m_lifted.then(&mu_g)?);
        if !r.holds {
            nat = r;
            break;
        }
    }
    out.push(nat);
    Ok(())
}

/// All squares `f -> g` for `g` in `targets`, shuffled by `rng`, first `n`.
pub fn random_squares(f: &SimplicialMap, targets: &[SimplicialMap], n: usize, rng: &mut impl Rng) -> Result<Vec<ArrowSquare>> {
    let mut all = Vec::new();
    for g in targets {
        for b in enumerate_homs(f.cod(), g.cod(), HomConstraint::default())? {
            let v = f.then(&b)?;
            for a in enumerate_homs(f.dom(), g.dom(), HomConstraint { under: None, over: Some((g, &v)) })? {
                all.push(ArrowSquare { top: a, bottom: b.clone(), left: f.clone(), right: g.clone() });
            }
        }
    }
    all.shuffle(rng);
    all.truncate(n);
    Ok(all)
}

/// `β • α`: the composite left map structure `C -> M(gf)` built from
/// structures `α: B -> Mf` and `β: C -> Mg`.
pub fn composite_left_map(
    f: &SimplicialMap,
    alpha: &SimplicialMap,
    g: &SimplicialMap,
    beta: &SimplicialMap,
    fz: &mut Factorizer,
) -> Result<SimplicialMap> {
    let gf = f.then(g)?;
    let k_gf = fz.get(&gf)?;
    let one_g = ArrowSquare { top: SimplicialMap::identity(f.dom().clone()), bottom: g.clone(), left: f.clone(), right: gf.clone() };
    let x = alpha.then(&fz.m(&one_g)?)?;
    let lift = ArrowSquare { top: x, bottom: SimplicialMap::identity(g.cod().clone()), left: g.clone(), right: k_gf.ef().clone() };
    let m_lift = fz.m(&lift)?;
    beta.then(&m_lift)?.then(&fz.mu(&gf)?)
}

/// `g_* α`: the structure on the pushout `g_* f: C -> B ⊔_A C` given by
/// `UK(g_* f)` on `C` and `M(g, f_* g) ∘ α` on `B`. Returns the pushed map
/// and its structure.
pub fn pushforward_left_map(
    f: &SimplicialMap,
    alpha: &SimplicialMap,
    g: &SimplicialMap,
    fz: &mut Factorizer,
) -> Result<(SimplicialMap, SimplicialMap)> {
    let (p, f_g, g_f) = pushout(f, g)?;
    let k = fz.get(&g_f)?;
    let sq = ArrowSquare { top: g.clone(), bottom: f_g.clone(), left: f.clone(), right: g_f.clone() };
    let from_b = alpha.then(&fz.m(&sq)?)?;
    let from_c = k.left();
    let mut assign: BTreeMap<SimplexId, SimplexId> = BTreeMap::new();
    for (c, pc) in g_f.assignment() {
        assign.insert(pc.clone(), from_c.at(c).clone());
    }
    for (b, pb) in f_g.assignment() {
        let y = from_b.at(b);
        if let Some(prev) = assign.insert(pb.clone(), y.clone()) {
            if prev != *y {
                bail!(NotCommuting, "pushforward structure is not well defined at {pb}");
            }
        }
    }
    let s = SimplicialMap::new(p, k.middle().clone(), assign)?;
    Ok((g_f, s))
}
