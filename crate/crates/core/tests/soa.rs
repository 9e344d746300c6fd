mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use cellcx::cellcx::{compose_complexes, pushforward_complex};
use cellcx::corpus::{boundary_inclusion, fixtures, point_inclusion, Generator, Limits};
use cellcx::deltacx::{standard_simplex, top_simplex_name};
use cellcx::soa::*;
use cellcx::{ArrowSquare, CellComplex, DeltaComplex, Error, SimplicialMap};
use common::{oracle_free, stage_counts, tiny};

fn counts(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    pairs.iter().copied().collect()
}

#[test]
fn k1_step_examples() {
    let (st, e1) = k1_step(&point_inclusion(), None).unwrap();
    assert_eq!(st.len(), 1);
    assert_eq!(st.body_complex().counts(), vec![1]);
    assert!(e1.is_bijective());

    let (st, _) = k1_step(&boundary_inclusion(1), None).unwrap();
    let dims: Vec<usize> = st.cells().map(|c| c.dim).collect();
    assert_eq!(dims.iter().filter(|&&d| d == 0).count(), 2);
    assert_eq!(dims.iter().filter(|&&d| d == 1).count(), 1);

    let id0 = SimplicialMap::identity(Arc::new(standard_simplex(0)));
    let (st, _) = k1_step(&id0, None).unwrap();
    assert_eq!(st.len(), 1);
}

#[test]
fn free_complex_golden() {
    let f = boundary_inclusion(1);
    let kf = free_complex(&f, DEFAULT_CAP).unwrap();
    assert_eq!(kf.complex().height(), 2);
    assert_eq!(stage_counts(kf.complex()), vec![counts(&[(0, 2), (1, 1)]), counts(&[(1, 3)])]);
    assert_eq!(kf.middle().counts(), vec![4, 4]);
    assert_eq!(kf.left().then(kf.ef()).unwrap(), f);
    let (oracle, body) = oracle_free(&f, DEFAULT_CAP).unwrap();
    assert_eq!(stage_counts(kf.complex()), oracle);
    assert_eq!(kf.middle().counts(), body);
}

#[test]
fn free_complex_small_cases() {
    let kf = free_complex(&point_inclusion(), DEFAULT_CAP).unwrap();
    assert_eq!(kf.complex().height(), 1);
    assert_eq!(kf.complex().cell_count(), 1);
    assert!(kf.ef().is_bijective());

    let empty = Arc::new(DeltaComplex::empty());
    let f = SimplicialMap::identity(empty);
    let kf = free_complex(&f, DEFAULT_CAP).unwrap();
    assert_eq!(kf.complex().height(), 0);
    assert!(kf.ef().is_identity_on_ids());
}

#[test]
fn cap_exceeded_reports_counts() {
    match free_complex(&boundary_inclusion(1), 1) {
        Err(Error::CapExceeded { cap, stage_counts }) => {
            assert_eq!(cap, 1);
            assert_eq!(stage_counts, vec![3, 3]);
        }
        other => panic!("expected cap failure, got {other:?}"),
    }
}

#[test]
fn free_complex_matches_brute_force_on_corpus() {
    let mut g = Generator::with_limits(11, Limits { max_dim: 2, max_vertices: 3, max_per_dim: 2, max_cells: 3 });
    let mut maps: Vec<SimplicialMap> = fixtures().into_iter().map(|(_, f)| f).collect();
    maps.extend((0..60).map(|_| g.map()));
    for f in &maps {
        let kf = free_complex(f, DEFAULT_CAP).unwrap();
        let (oracle, body) = oracle_free(f, DEFAULT_CAP).unwrap();
        assert_eq!(stage_counts(kf.complex()), oracle);
        let mut lib = kf.middle().counts();
        lib.resize(body.len(), 0);
        assert_eq!(lib, body);
        assert!(kf.complex().is_proper());
        for (n, c) in kf.complex().cells() {
            assert_eq!(kf.complex().mec_of_cell(c), n);
            assert_eq!(kf.key(&c.id).unwrap().stage, n);
        }
        assert_eq!(kf.left().then(kf.ef()).unwrap(), *f);
        let maps = kf.stage_maps();
        for w in maps.windows(2) {
            for (x, y) in w[0].assignment() {
                assert_eq!(w[1].at(x), y);
            }
        }
    }
}

#[test]
fn termination_bound() {
    let mut g = Generator::with_limits(12, Limits { max_dim: 3, max_vertices: 2, max_per_dim: 2, max_cells: 2 });
    for _ in 0..40 {
        let f = g.map();
        let kf = free_complex(&f, DEFAULT_CAP).unwrap();
        assert!(kf.complex().height() as isize <= f.cod().max_dim() + 1);
    }
}

#[test]
fn transpose_examples() {
    let c = CellComplex::canonical(1);
    let f = c.underlying();
    let kf = free_complex(&f, DEFAULT_CAP).unwrap();
    let t = transpose(&c, &ArrowSquare::identity(&f), &kf).unwrap();
    let image = &t.p[&top_simplex_name(1)];
    let key = kf.key(image).unwrap();
    assert_eq!(key.stage, 0);
    assert_eq!(key.dim, 1);
    assert_eq!(key.boundary, f.map_all(&c.cell(&top_simplex_name(1)).unwrap().faces));

    let triv = CellComplex::trivial(f.dom().clone());
    let sq = ArrowSquare { top: SimplicialMap::identity(f.dom().clone()), bottom: f.clone(), left: triv.underlying(), right: f.clone() };
    let t = transpose(&triv, &sq, &kf).unwrap();
    assert!(t.p.is_empty());
    assert_eq!(t.base, sq.top);

    // Transposing the counit gives the identity on Kf.
    let t = transpose(kf.complex(), &counit(&kf), &kf).unwrap();
    assert_eq!(t, cellcx::CellComplexMorphism::identity(kf.complex()));
}

#[test]
fn transpose_reproduces_squares_and_is_unique() {
    let mut g = tiny(21);
    let mut checked = 0;
    let mut exhaustive = 0;
    while checked < 100 {
        let f = g.map();
        if f.dom().is_empty() {
            continue;
        }
        let c = g.cell_complex_on(f.dom());
        let Some(sq) = g.square_from(&c, &f) else { continue };
        let kf = free_complex(&f, DEFAULT_CAP).unwrap();
        let t = transpose(&c, &sq, &kf).unwrap();
        t.validate().unwrap();
        let back = t.underlying().then(&counit(&kf)).unwrap();
        assert_eq!(back, sq);
        if c.cell_count() <= 3 {
            assert_eq!(transposes_by_search(&c, &sq, &kf), vec![t]);
            exhaustive += 1;
        }
        checked += 1;
    }
    assert!(exhaustive > 20);
}

#[test]
fn coalgebra_examples() {
    let x = Arc::new(standard_simplex(1));
    let triv = CellComplex::trivial(x.clone());
    let (alpha, kuc) = coalgebra_structure(&triv, DEFAULT_CAP).unwrap();
    assert_eq!(alpha.then(kuc.ef()).unwrap(), SimplicialMap::identity(x));

    for k in 0..3 {
        let c = CellComplex::canonical(k);
        let (alpha, kuc) = coalgebra_structure(&c, DEFAULT_CAP).unwrap();
        let top = top_simplex_name(k);
        let key = kuc.key(alpha.at(&top)).unwrap();
        assert_eq!(key.stage, 0);
        assert_eq!(key.target, top);
        assert_eq!(key.boundary, c.cell(&top).unwrap().faces);
    }
}

#[test]
fn coalgebra_round_trip() {
    let mut g = Generator::with_limits(31, Limits { max_dim: 2, max_vertices: 3, max_per_dim: 2, max_cells: 5 });
    for _ in 0..60 {
        let c = g.cell_complex();
        let (alpha, kuc) = coalgebra_structure(&c, DEFAULT_CAP).unwrap();
        assert_eq!(alpha.then(kuc.ef()).unwrap(), SimplicialMap::identity(c.body().clone()));
        let back = decode(&c.underlying(), &alpha, &kuc).unwrap();
        assert_eq!(back, c);
    }
}

#[test]
fn law_suite_on_fixtures() {
    let targets: Vec<SimplicialMap> = fixtures().into_iter().map(|(_, f)| f).collect();
    let mut fz = Factorizer::new(DEFAULT_CAP);
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
    for (name, f) in fixtures() {
        let mut pool = targets.clone();
        pool.push(fz.get(&f).unwrap().ef().clone());
        let squares = random_squares(&f, &pool, 5, &mut rng).unwrap();
        assert_eq!(squares.len(), 5, "{name}");
        let report = check_awfs_laws(&f, &mut fz, &squares);
        assert!(report.all_hold(), "{name}: {:?}", report.laws.iter().filter(|l| !l.holds).map(|l| l.law).collect::<Vec<_>>());
        assert_eq!(report.laws.len(), LAWS.len());
    }
}

#[test]
fn distributivity_post_composed_form() {
    // E(UKf) ∘ δ_f ∘ μ_f = E(UKf) ∘ μ_UKf ∘ M(δ_f, μ_f) ∘ δ_Ef
    let f = boundary_inclusion(1);
    let mut fz = Factorizer::new(DEFAULT_CAP);
    let kf = fz.get(&f).unwrap();
    let kef = fz.get(kf.ef()).unwrap();
    let kukf = fz.get(&kf.left()).unwrap();
    let mu = fz.mu(&f).unwrap();
    let delta = fz.delta(&f).unwrap();
    let delta_ef = fz.delta(kf.ef()).unwrap();
    let mu_ukf = fz.mu(&kf.left()).unwrap();
    let m_mix = fz
        .m(&ArrowSquare { top: delta.clone(), bottom: mu.clone(), left: kef.left(), right: kukf.ef().clone() })
        .unwrap();
    let lhs = mu.then(&delta).unwrap().then(kukf.ef()).unwrap();
    let rhs = delta_ef.then(&m_mix).unwrap().then(&mu_ukf).unwrap().then(kukf.ef()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn law_suite_on_random_maps() {
    let mut g = Generator::with_limits(41, Limits { max_dim: 1, max_vertices: 2, max_per_dim: 2, max_cells: 2 });
    let mut fz = Factorizer::new(DEFAULT_CAP);
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(6);
    for _ in 0..10 {
        let f = g.map();
        let pool = vec![f.clone(), fz.get(&f).unwrap().ef().clone()];
        let squares = random_squares(&f, &pool, 3, &mut rng).unwrap();
        let report = check_awfs_laws(&f, &mut fz, &squares);
        assert!(report.all_hold(), "{:?}", report.error);
    }
}

#[test]
fn composite_structure_agrees_with_composed_complex() {
    // f = one 0-cell on ∅, g = a loop on the new vertex.
    let a = CellComplex::canonical(0);
    let v = a.body().simplices(0).next().unwrap().clone();
    let b = CellComplex::from_layers(a.body().clone(), vec![vec![cellcx::Cell::new("loop", 1, vec![v.clone(), v])]]).unwrap();
    check_composite(&a, &b);

    let mut g = tiny(51);
    for _ in 0..25 {
        let a = g.cell_complex();
        let b = g.cell_complex_on(a.body());
        check_composite(&a, &b);
    }
}

fn check_composite(a: &CellComplex, b: &CellComplex) {
    let mut fz = Factorizer::new(DEFAULT_CAP);
    let (alpha, _) = coalgebra_structure(a, DEFAULT_CAP).unwrap();
    let (beta, _) = coalgebra_structure(b, DEFAULT_CAP).unwrap();
    let via_maps = composite_left_map(&a.underlying(), &alpha, &b.underlying(), &beta, &mut fz).unwrap();
    let ba = compose_complexes(a, b).unwrap();
    let (direct, _) = coalgebra_structure(&ba, DEFAULT_CAP).unwrap();
    assert_eq!(via_maps, direct);

    // Trivial upper complex: the structure is α carried along.
    let t = CellComplex::trivial(a.body().clone());
    let (beta, _) = coalgebra_structure(&t, DEFAULT_CAP).unwrap();
    let via = composite_left_map(&a.underlying(), &alpha, &t.underlying(), &beta, &mut fz).unwrap();
    assert_eq!(via, alpha);
}

#[test]
fn pushforward_structure_agrees_with_pushed_complex() {
    // The loop: one 1-cell on ∂Δ¹ pushed along ∂Δ¹ -> Δ⁰.
    let c = CellComplex::canonical(1);
    let pt = Arc::new(standard_simplex(0));
    let g = SimplicialMap::new(c.base().clone(), pt.clone(), c.base().simplices(0).map(|x| (x.clone(), "0".into())).collect()).unwrap();
    check_pushforward(&c, &g);

    let mut gen = tiny(61);
    for _ in 0..25 {
        let c = gen.cell_complex();
        let g = gen.map_out_of(c.base());
        check_pushforward(&c, &g);
    }
}

fn check_pushforward(c: &CellComplex, g: &SimplicialMap) {
    let mut fz = Factorizer::new(DEFAULT_CAP);
    let (alpha, _) = coalgebra_structure(c, DEFAULT_CAP).unwrap();
    let (pushed_map, structure) = pushforward_left_map(&c.underlying(), &alpha, g, &mut fz).unwrap();
    let (pushed, _) = pushforward_complex(c, g).unwrap();
    assert_eq!(pushed.underlying(), pushed_map);
    let (direct, _) = coalgebra_structure(&pushed, DEFAULT_CAP).unwrap();
    assert_eq!(structure, direct);
}

#[test]
fn factor_result_json_round_trip() {
    for (_, f) in fixtures() {
        let kf = free_complex(&f, DEFAULT_CAP).unwrap();
        let text = cellcx::json::to_string_pretty(&cellcx::json::FactorResultJson::from(&kf));
        let back: cellcx::json::FactorResultJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_result().unwrap(), kf);
    }
}
