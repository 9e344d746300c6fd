//! The acceptance suite: one PASS/FAIL line per criterion.
//!
//! Each criterion returns a one-line summary of what it checked, or the first
//! counterexample. Panics inside a criterion count as failures.

mod common;

#[path = "../../core/tests/common/mod.rs"]
mod oracle;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use cellcx::cellcx::{cellcx_colimit, cellcx_equaliser, compose_complexes, find_isomorphism, normalize, CellDiagram};
use cellcx::corpus::{boundary_inclusion, fixtures, Generator, Limits};
use cellcx::deltacx::{self, is_pullback};
use cellcx::lifting::{free_fillers, solve_lifting};
use cellcx::soa::*;
use cellcx::strata::{strata_colimit, strata_equaliser, Diagram, StrataDiagram};
use cellcx::{CellComplex, SimplexId, SimplicialMap, Stratum};
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn small(seed: u64) -> Generator {
    Generator::with_limits(seed, Limits { max_dim: 2, max_vertices: 3, max_per_dim: 2, max_cells: 3 })
}

fn c1_golden() -> Outcome {
    let f = boundary_inclusion(1);
    let kf = ok(free_complex(&f, DEFAULT_CAP), "free_complex")?;
    let want: oracle::StageCounts = vec![[(0, 2), (1, 1)].into_iter().collect(), [(1, 3)].into_iter().collect()];
    ensure!(kf.complex().height() == 2, "height {}", kf.complex().height());
    ensure!(oracle::stage_counts(kf.complex()) == want, "stage cells {:?}", oracle::stage_counts(kf.complex()));
    ensure!(kf.middle().counts() == vec![4, 4], "body counts {:?}", kf.middle().counts());
    ensure!(ok(kf.left().then(kf.ef()), "compose")? == f, "Ef . UKf != f");
    let (stages, body) = oracle::oracle_free(&f, DEFAULT_CAP).ok_or("oracle hit the cap")?;
    ensure!(stages == want && body == vec![4, 4], "oracle disagrees: {stages:?} {body:?}");
    Ok("height 2, stages {0:2,1:1},{1:3}, body 4+4, Ef.UKf = f, oracle agrees".into())
}

fn c2_laws() -> Outcome {
    let targets: Vec<SimplicialMap> = fixtures().into_iter().map(|(_, f)| f).collect();
    let mut fz = Factorizer::new(DEFAULT_CAP);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    for (name, f) in fixtures() {
        let mut pool = targets.clone();
        pool.push(ok(fz.get(&f), name)?.ef().clone());
        let squares = ok(random_squares(&f, &pool, 5, &mut rng), name)?;
        ensure!(squares.len() == 5, "{name}: only {} squares", squares.len());
        let report = check_awfs_laws(&f, &mut fz, &squares);
        ensure!(report.error.is_none(), "{name}: {:?}", report.error);
        ensure!(report.laws.len() == LAWS.len(), "{name}: {} laws checked", report.laws.len());
        if let Some(bad) = report.laws.iter().find(|l| !l.holds) {
            return Err(format!("{name}: {} fails", bad.law));
        }
        checked += report.laws.len();
    }
    Ok(format!("{checked} law instances on 5 fixtures, 5 naturality squares each"))
}

fn c3_pullbacks() -> Outcome {
    let mut g = small(3);
    for i in 0..200 {
        let st = g.stratum();
        let m = g.strata_morphism_from(&st);
        ensure!(ok(is_pullback(&m.underlying()), "square")?, "strata morphism {i}");
    }
    for i in 0..200 {
        let c = g.cell_complex();
        let m = g.complex_morphism_from(&c);
        ensure!(ok(is_pullback(&m.underlying()), "square")?, "cell complex morphism {i}");
    }
    Ok("200 strata morphisms and 200 cell complex morphisms".into())
}

/// Degreewise colimit of the boundaries and bodies of a diagram.
fn degreewise<O, M>(
    d: &Diagram<O, M>,
    base: impl Fn(&O) -> std::sync::Arc<cellcx::DeltaComplex>,
    body: impl Fn(&O) -> std::sync::Arc<cellcx::DeltaComplex>,
    base_map: impl Fn(&M) -> SimplicialMap,
    body_map: impl Fn(&M) -> SimplicialMap,
) -> Result<(cellcx::DeltaComplex, cellcx::DeltaComplex), String> {
    let bases: Vec<_> = d.objects.iter().map(&base).collect();
    let bodies: Vec<_> = d.objects.iter().map(&body).collect();
    let ba: Vec<_> = d.arrows.iter().map(|(s, t, m)| (*s, *t, base_map(m))).collect();
    let bo: Vec<_> = d.arrows.iter().map(|(s, t, m)| (*s, *t, body_map(m))).collect();
    let (x, _) = ok(deltacx::colimit(&bases, &ba), "colimit")?;
    let (y, _) = ok(deltacx::colimit(&bodies, &bo), "colimit")?;
    Ok(((*x).clone(), (*y).clone()))
}

fn c4_colimits() -> Outcome {
    let mut g = small(4);
    for round in 0..100 {
        let d: StrataDiagram = match round % 3 {
            0 => Diagram { objects: (0..1 + round % 3).map(|_| g.stratum()).collect(), arrows: vec![] },
            1 => {
                let s = g.stratum();
                let a = g.strata_morphism_from(&s);
                let b = g.strata_morphism_from(&s);
                Diagram { objects: vec![s, a.cod.clone(), b.cod.clone()], arrows: vec![(0, 1, a), (0, 2, b)] }
            }
            _ => {
                let s = g.stratum();
                let (a, b) = g.parallel_pair_from(&s);
                Diagram { objects: vec![s, a.cod.clone()], arrows: vec![(0, 1, a), (0, 1, b)] }
            }
        };
        let (out, _) = ok(strata_colimit(&d), "strata colimit")?;
        let (x, y) = degreewise(&d, |o| o.boundary().clone(), |o| o.body_complex().clone(), |m| m.f.clone(), |m| m.body_map())?;
        ensure!(**out.boundary() == x && **out.body_complex() == y, "strata diagram {round}");
        ok(Stratum::new(out.boundary().clone(), out.cells().cloned()), "strata colimit output")?;

        let s = g.stratum();
        let (a, b) = g.parallel_pair_from(&s);
        let (e, _) = ok(strata_equaliser(&a, &b), "strata equaliser")?;
        let (x, _) = ok(deltacx::equaliser(&a.f, &b.f), "equaliser")?;
        let (y, _) = ok(deltacx::equaliser(&a.body_map(), &b.body_map()), "equaliser")?;
        ensure!(**e.boundary() == *x && **e.body_complex() == *y, "strata equaliser {round}");
    }
    for round in 0..100 {
        let d: CellDiagram = match round % 3 {
            0 => Diagram { objects: (0..1 + round % 3).map(|_| g.cell_complex()).collect(), arrows: vec![] },
            1 => {
                let c = g.cell_complex();
                let a = g.complex_morphism_from(&c);
                let b = g.complex_morphism_from(&c);
                Diagram { objects: vec![c, a.cod.clone(), b.cod.clone()], arrows: vec![(0, 1, a), (0, 2, b)] }
            }
            _ => {
                let c = g.cell_complex();
                let a = g.complex_morphism_from(&c);
                let b = g.parallel_to(&a);
                Diagram { objects: vec![c, a.cod.clone()], arrows: vec![(0, 1, a), (0, 1, b)] }
            }
        };
        let (out, _) = ok(cellcx_colimit(&d), "cell complex colimit")?;
        let (x, y) = degreewise(&d, |o| o.base().clone(), |o| o.body().clone(), |m| m.base.clone(), |m| m.body_map())?;
        ensure!(**out.base() == x && **out.body() == y, "cell complex diagram {round}");
        ensure!(out.is_proper(), "colimit {round} is not proper");

        let c = g.cell_complex();
        let a = g.complex_morphism_from(&c);
        let b = g.parallel_to(&a);
        let (e, _) = ok(cellcx_equaliser(&a, &b), "cell complex equaliser")?;
        let (x, _) = ok(deltacx::equaliser(&a.base, &b.base), "equaliser")?;
        let (y, _) = ok(deltacx::equaliser(&a.body_map(), &b.body_map()), "equaliser")?;
        ensure!(**e.base() == *x && **e.body() == *y, "cell complex equaliser {round}");
        ensure!(e.is_proper(), "equaliser {round} is not proper");
    }
    Ok("100 strata diagrams, 100 cell complex diagrams, 200 equalisers".into())
}

/// Composite by direct mec partition: each cell of `b` lands one stratum
/// above the highest stage its faces touch.
fn mec_partition(a: &CellComplex, b: &CellComplex) -> Vec<BTreeSet<SimplexId>> {
    let mut stage: HashMap<SimplexId, usize> = a.base().iter().map(|(_, id, _)| (id.clone(), 0)).collect();
    let mut layers: Vec<BTreeSet<SimplexId>> = Vec::new();
    let cells = a.cells().map(|(n, c)| (Some(n), c)).chain(b.cells().map(|(_, c)| (None, c)));
    for (fixed, c) in cells {
        let n = fixed.unwrap_or_else(|| c.faces.iter().map(|f| stage[f]).max().unwrap_or(0));
        stage.insert(c.id.clone(), n + 1);
        if layers.len() <= n {
            layers.resize(n + 1, BTreeSet::new());
        }
        layers[n].insert(c.id.clone());
    }
    layers
}

fn layout(c: &CellComplex) -> Vec<BTreeSet<SimplexId>> {
    c.strata().iter().map(|st| st.cells().map(|s| s.id.clone()).collect()).collect()
}

fn c5_normal_form() -> Outcome {
    let mut g = small(5);
    for i in 0..100 {
        let base = g.complex();
        let mut seq = g.sequence_on(&base, 4);
        // Empty strata make the sequence improper.
        if g.rng().gen_bool(0.3) {
            let at = g.rng().gen_range(0..=seq.len());
            let bd = if at == 0 { base.clone() } else { seq[at - 1].body_complex().clone() };
            seq.insert(at, Stratum::empty(bd));
        }
        let body = seq.last().map(|s| s.body_complex().clone()).unwrap_or(base.clone());
        let (c, _) = ok(normalize(base.clone(), seq), "normalize")?;
        ensure!(c.is_proper(), "sequence {i}: not proper");
        ensure!(c.underlying() == ok(SimplicialMap::inclusion(base.clone(), body), "inclusion")?, "sequence {i}: underlying map changed");
        let (again, _) = ok(normalize(base, c.strata().to_vec()), "normalize")?;
        ensure!(again == c, "sequence {i}: normalize is not idempotent");

        let a = g.cell_complex();
        let b = g.cell_complex_on(a.body());
        let ba = ok(compose_complexes(&a, &b), "compose")?;
        ensure!(layout(&ba) == mec_partition(&a, &b), "pair {i}: composite differs from the mec partition");
    }
    for i in 0..50 {
        let a = g.cell_complex();
        let b = g.cell_complex_on(a.body());
        let c = g.cell_complex_on(b.body());
        let left = ok(compose_complexes(&ok(compose_complexes(&a, &b), "compose")?, &c), "compose")?;
        let right = ok(compose_complexes(&a, &ok(compose_complexes(&b, &c), "compose")?), "compose")?;
        ensure!(left == right, "triple {i}: composition is not associative");
    }
    Ok("100 sequences, 100 composites against the mec partition, 50 triples".into())
}

fn c6_adjunction() -> Outcome {
    let mut g = small(6);
    let (mut checked, mut exhaustive, mut tries) = (0, 0, 0);
    while checked < 100 {
        tries += 1;
        ensure!(tries < 10_000, "could not generate enough squares");
        let f = g.map();
        if f.dom().is_empty() {
            continue;
        }
        let c = g.cell_complex_on(f.dom());
        let Some(sq) = g.square_from(&c, &f) else { continue };
        let kf = ok(free_complex(&f, DEFAULT_CAP), "free_complex")?;
        let t = ok(transpose(&c, &sq, &kf), "transpose")?;
        ensure!(ok(t.underlying().then(&counit(&kf)), "compose")? == sq, "pair {checked}: counit . U(transpose) differs");
        if c.cell_count() <= 3 {
            ensure!(transposes_by_search(&c, &sq, &kf) == vec![t], "pair {checked}: transpose is not the unique solution");
            exhaustive += 1;
        }
        checked += 1;
    }
    Ok(format!("{checked} pairs, uniqueness by exhaustive search on {exhaustive}"))
}

fn c7_coalgebra() -> Outcome {
    let mut g = Generator::with_limits(7, Limits { max_dim: 2, max_vertices: 3, max_per_dim: 2, max_cells: 6 });
    let mut max_cells = 0;
    for i in 0..100 {
        let c = g.cell_complex();
        ensure!(c.cell_count() <= 6 && c.body().max_dim() <= 2, "complex {i} out of range");
        max_cells = max_cells.max(c.cell_count());
        let (alpha, kuc) = ok(coalgebra_structure(&c, DEFAULT_CAP), "coalgebra_structure")?;
        let back = ok(decode(&c.underlying(), &alpha, &kuc), "decode")?;
        ensure!(find_isomorphism(&back, &c).is_some(), "complex {i}: decoded complex is not isomorphic");
        let ft = free_fillers(&kuc);
        let lift = ok(solve_lifting(&c, &ft, &kuc.left(), &SimplicialMap::identity(c.body().clone())), "solve_lifting")?;
        ensure!(lift == alpha, "complex {i}: lift differs from the coalgebra structure");
    }
    Ok(format!("100 complexes (up to {max_cells} cells), decode and lift agree"))
}

fn c8_termination() -> Outcome {
    let mut g = Generator::with_limits(8, Limits { max_dim: 3, max_vertices: 2, max_per_dim: 2, max_cells: 2 });
    let mut maps: Vec<SimplicialMap> = fixtures().into_iter().map(|(_, f)| f).collect();
    maps.push(boundary_inclusion(3));
    maps.extend((0..60).map(|_| g.map()));
    let mut heights: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, f) in maps.iter().enumerate() {
        let kf = match free_complex(f, DEFAULT_CAP) {
            Ok(kf) => kf,
            Err(e) => return Err(format!("map {i}: {e}")),
        };
        let h = kf.complex().height();
        ensure!(h as isize <= f.cod().max_dim() + 1, "map {i}: height {h} above bound");
        *heights.entry(h).or_default() += 1;
    }
    Ok(format!("{} maps, heights {heights:?}", maps.len()))
}

fn c9_cli() -> Outcome {
    for c in common::CASES {
        common::check_case(c)?;
    }
    let codes: BTreeSet<i32> = common::CASES.iter().map(|c| c.code).collect();
    ensure!(codes == [0, 2, 3, 4].into_iter().collect(), "exit codes exercised: {codes:?}");
    Ok(format!("{} golden cases, reruns byte-identical, exit codes 0/2/3/4", common::CASES.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("C1 free factorization golden instance", c1_golden),
        ("C2 awfs law suite", c2_laws),
        ("C3 pullback lemmas", c3_pullbacks),
        ("C4 colimit and equaliser preservation", c4_colimits),
        ("C5 normal form and stacking", c5_normal_form),
        ("C6 adjunction", c6_adjunction),
        ("C7 coalgebra round trip", c7_coalgebra),
        ("C8 termination bound", c8_termination),
        ("C9 CLI contract", c9_cli),
    ];
    // Written to the process stdout directly so the lines show even when the
    // harness captures test output.
    let report = |line: String| {
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "{line}");
        let _ = out.flush();
    };
    let start = Instant::now();
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => report(format!("PASS {name}: {detail} ({secs:.2}s)")),
            Err(why) => {
                report(format!("FAIL {name}: {why} ({secs:.2}s)"));
                failed.push(name);
            }
        }
    }
    report(format!("acceptance total {:.2}s", start.elapsed().as_secs_f64()));
    assert!(failed.is_empty(), "failed: {failed:?}");
}
