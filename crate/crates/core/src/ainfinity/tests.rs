use super::fixtures::*;
use super::*;
use proptest::prelude::*;
use rand::Rng;

fn one_object_algebra() -> FiniteAInfCategory {
    // F2[x]/(x^2) with x odd and mu^1 = 0.
    let mut c = FiniteAInfCategory::new(1);
    c.set_hom(0, 0, vec![Parity::Even, Parity::Odd]);
    let (one, x) = (Gen::new(0, 0, 0), Gen::new(0, 0, 1));
    c.set_mu(vec![one, one], single(one));
    c.set_mu(vec![one, x], single(x));
    c.set_mu(vec![x, one], single(x));
    c
}

#[test]
fn strictly_associative_passes() {
    let c = one_object_algebra();
    assert!(c.validate().is_ok());
    assert!(check_ainf(&c, 4).is_empty());
}

#[test]
fn dg_and_transported_categories_pass() {
    for seed in 0..6 {
        let c = random_dg_category(seed);
        assert!(c.validate().is_ok());
        assert!(check_ainf(&c, 4).is_empty(), "seed {seed}");
        let t = random_ainf_category(seed, 4);
        assert!(t.validate().is_ok());
        assert!(check_ainf(&t, 4).is_empty(), "seed {seed}");
    }
    assert!((0..6).any(|s| random_ainf_category(s, 4).max_arity() >= 3));
}

#[test]
fn random_tables_fail() {
    let mut rng = rng(7);
    let mut failures = 0;
    for _ in 0..10 {
        let mut c = FiniteAInfCategory::new(1);
        c.set_hom(0, 0, vec![Parity::Even, Parity::Even]);
        for tuple in c.composable_tuples(2) {
            let v: Element = c.basis(0, 0).into_iter().filter(|_| rng.gen_bool(0.5)).collect();
            c.set_mu(tuple, v);
        }
        failures += usize::from(!check_ainf(&c, 3).is_empty());
    }
    assert!(failures >= 5);
}

#[test]
fn removing_a_unit_entry_breaks_associativity() {
    let v = vec![Complex::zero_differential(vec![Parity::Even]), Complex::zero_differential(vec![Parity::Even])];
    let (mut c, idx) = full_matrix_category(&v);
    assert!(check_ainf(&c, 3).is_empty());
    let id0 = idx[&(0, 0, 0, 0)];
    c.set_mu(vec![id0, id0], Element::new());
    let report = check_ainf(&c, 3);
    assert!(report.iter().any(|v| v.arity == 3));
}

#[test]
fn degree_validation() {
    let mut c = one_object_algebra();
    let x = Gen::new(0, 0, 1);
    c.set_mu(vec![x, x], single(x));
    assert!(matches!(c.validate(), Err(AInfError::DegreeMismatch(_))));
}

#[test]
fn identity_and_strict_functors() {
    let c = random_dg_category(3);
    assert!(check_functor(&AInfFunctor::identity(&c), 4).is_empty());
    let mut rng = rng(1);
    let v: Vec<Complex> = (0..2).map(|_| random_complex(&mut rng, 1)).collect();
    let w: Vec<Complex> = v.iter().map(|x| x.direct_sum(x)).collect();
    let f = block_embedding(&v, &w, &[1, 0]);
    assert!(f.validate().is_ok());
    assert!(check_functor(&f, 4).is_empty());
}

#[test]
fn conjugated_functors_and_inverses() {
    for seed in 0..4 {
        let f = random_functor(seed, 4);
        assert!(f.validate().is_ok());
        assert!(check_functor(&f, 4).is_empty(), "seed {seed}");
    }
    let base = random_dg_category(5);
    let mut rng = rng(5);
    let terms = random_diffeo_terms(&mut rng, &base, 0.5);
    let (_, phi) = transport_structure(&base, &terms, 4);
    assert!(check_functor(&phi, 4).is_empty());
    let inv = inverse_functor(&phi, 4).unwrap();
    assert!(check_functor(&inv, 4).is_empty());
    let round = compose(&inv, &phi, 4);
    assert_eq!(round.terms.get(&1), AInfFunctor::identity(&base).terms.get(&1));
    assert!((2..=4).all(|k| round.terms.get(&k).map_or(true, Table::is_empty)));
}

#[test]
fn hochschild_single_letter() {
    let c = one_object_algebra();
    let x = Gen::new(0, 0, 1);
    let chain = HochschildChain::new(vec![x], 0).unwrap();
    assert!(hochschild_b(&c, &chain).unwrap().is_empty());
}

#[test]
fn hochschild_rejects_open_chains() {
    let v = vec![Complex::zero_differential(vec![Parity::Even]); 2];
    let (_, idx) = full_matrix_category(&v);
    let a = idx[&(0, 1, 0, 0)];
    assert_eq!(HochschildChain::new(vec![a], 0), Err(AInfError::NotCyclicallyComposable));
}

/// Direct Hochschild boundary of an associative algebra with zero differential:
/// `b(a_0 | a_1 | ... | a_n) = sum_i a_0 | ... | a_i a_{i+1} | ... + a_n a_0 | a_1 | ... | a_{n-1}`,
/// written here for chains `[a_d, ..., a_1]` with `a_d` playing the role of `a_0`.
fn bar_boundary(c: &FiniteAInfCategory, chain: &[Gen]) -> ChainSum {
    let d = chain.len();
    let mut out = ChainSum::new();
    let mut push = |letters: Vec<Gen>| {
        let h = HochschildChain { letters };
        if !out.remove(&h) {
            out.insert(h);
        }
    };
    for i in 0..d - 1 {
        for g in c.mu_gens(&[chain[i], chain[i + 1]]) {
            let mut letters = chain[..i].to_vec();
            letters.push(g);
            letters.extend_from_slice(&chain[i + 2..]);
            push(letters);
        }
    }
    if d >= 2 {
        for g in c.mu_gens(&[chain[d - 1], chain[0]]) {
            let mut letters = vec![g];
            letters.extend_from_slice(&chain[1..d - 1]);
            push(letters);
        }
    }
    out
}

fn random_cyclic_chain(rng: &mut impl Rng, c: &FiniteAInfCategory, len: usize) -> Option<HochschildChain> {
    for _ in 0..200 {
        let tuples = c.composable_tuples(len);
        if tuples.is_empty() {
            return None;
        }
        let t = &tuples[rng.gen_range(0..tuples.len())];
        if t[len - 1].src == t[0].tgt {
            return HochschildChain::new(t.clone(), 0).ok();
        }
    }
    None
}

#[test]
fn hochschild_matches_bar_boundary_for_algebras() {
    let v = vec![Complex::zero_differential(vec![Parity::Even, Parity::Odd])];
    let (c, _) = full_matrix_category(&v);
    let mut rng = rng(11);
    for len in 1..=4 {
        for _ in 0..10 {
            let chain = random_cyclic_chain(&mut rng, &c, len).unwrap();
            assert_eq!(hochschild_b(&c, &chain).unwrap(), bar_boundary(&c, &chain.letters));
        }
    }
}

#[test]
fn hochschild_squares_to_zero() {
    let mut rng = rng(3);
    for seed in 0..8 {
        let c = random_ainf_category(seed, 5);
        for len in 1..=4 {
            if let Some(chain) = random_cyclic_chain(&mut rng, &c, len) {
                let once = hochschild_b(&c, &chain).unwrap();
                assert!(hochschild_b_sum(&c, &once).unwrap().is_empty(), "seed {seed} len {len}");
            }
        }
    }
}

#[test]
fn mu1_fun_of_zero_and_of_differences() {
    let (f, g) = functor_pair(2, 3);
    assert!(check_functor(&f, 3).is_empty() && check_functor(&g, 3).is_empty());
    let zero = PreNaturalTransformation::zero(f.clone(), g.clone(), Parity::Even);
    assert!(mu1_fun(&zero, 3).is_zero());
    let d = PreNaturalTransformation::difference(&f, &g);
    assert!(!d.is_zero());
    assert!(mu1_fun(&d, 3).is_zero());
}

#[test]
fn mu1_fun_first_order() {
    let (f, g) = functor_pair(4, 2);
    let mut rng = rng(4);
    let mut t = PreNaturalTransformation::zero(f.clone(), g.clone(), Parity::Even);
    for c in f.source.gens() {
        let (x, y) = (f.object_map[c.src], f.object_map[c.tgt]);
        let want = f.source.degree(c).flip();
        let cands: Vec<Gen> = f.target.basis(x, y).into_iter().filter(|&h| f.target.degree(h) == want).collect();
        if !cands.is_empty() && rng.gen_bool(0.6) {
            t.set_term(vec![c], single(cands[rng.gen_range(0..cands.len())]));
        }
    }
    let m = mu1_fun(&t, 1);
    for c in f.source.gens() {
        let mut expected = f.target.mu_eval(&[t.term(&[c])]);
        add_into(&mut expected, &eval_table(t.terms.get(&1), &[f.source.mu_gens(&[c])]));
        assert_eq!(m.term(&[c]), expected);
    }
}

#[test]
fn limit_of_zero_functor_is_direct_sum() {
    let c = one_object_algebra();
    let d = one_object_algebra();
    let e = AInfFunctor { source: c.clone(), target: d, object_map: vec![0], terms: BTreeMap::new() };
    let l = limit_category(&e, 3);
    assert_eq!(l.hom_dim(0, 0), 4);
    assert_eq!(l.homs[&(0, 0)], vec![Parity::Even, Parity::Odd, Parity::Odd, Parity::Even]);
    let (one, x) = (Gen::new(0, 0, 0), Gen::new(0, 0, 1));
    let (d1, dx) = (Gen::new(0, 0, 2), Gen::new(0, 0, 3));
    // C products are kept, D-valued Delta terms need E^1, mixed products with D first vanish.
    assert_eq!(l.mu_gens(&[one, x]), single(x));
    assert!(l.mu_gens(&[one, d1]).is_empty());
    assert!(l.mu_gens(&[d1, one]).is_empty());
    assert!(l.mu_gens(&[dx, d1]).is_empty());
    assert!(check_ainf(&l, 4).is_empty());
}

#[test]
fn limit_mu2_formula() {
    let e = random_functor(9, 3);
    let l = limit_category(&e, 2);
    let lay = LimitLayout::from_functor(&e);
    for tuple in e.source.composable_tuples(2) {
        let (c2, c1) = (tuple[0], tuple[1]);
        let (x0, x2) = (c1.src, c2.tgt);
        let mut expected: Element = e.source.mu_gens(&tuple);
        add_into(&mut expected, &lay.lift_d(x0, x2, &e.term(&tuple)));
        assert_eq!(l.mu_gens(&tuple), expected);
        for d1 in e.target.basis(e.object_map[c1.src], e.object_map[c1.tgt]) {
            let lt = [c2, lay.d_gen(c1.src, c1.tgt, d1)];
            let expected = lay.lift_d(x0, x2, &e.target.mu_eval(&[e.term(&[c2]), single(d1)]));
            assert_eq!(l.mu_gens(&lt), expected);
        }
    }
}

#[test]
fn limits_of_random_functors_are_ainf() {
    for seed in 0..3 {
        let e = random_functor(seed, 4);
        let l = limit_category(&e, 4);
        assert!(l.validate().is_ok(), "seed {seed}");
        assert!(check_ainf(&l, 4).is_empty(), "seed {seed}");
    }
}

#[test]
fn kernel_errors() {
    let f = random_functor(1, 2);
    assert!(matches!(kernel_category(&f, 2), Err(AInfError::NotLinear(_) | AInfError::NotSurjective(..))));
    let (f, _) = functor_pair(0, 1);
    let mut lin = f.clone();
    lin.terms.retain(|&k, _| k == 1);
    // Embedding into one summand misses the other.
    assert!(matches!(kernel_category(&lin, 2), Err(AInfError::NotSurjective(..))));
    let mut nl = lin.clone();
    let g = nl.source.gens()[0];
    let h = nl.target.basis(nl.object_map[g.src], nl.object_map[g.tgt])[0];
    if nl.source.degree(g) + nl.target.degree(h) == Parity::Odd {
        nl.set_term(vec![g, g], single(h));
    }
    nl.terms.entry(2).or_default().insert(vec![g, g], single(h));
    assert!(matches!(kernel_category(&nl, 2), Err(AInfError::NotLinear(2))));
}

#[test]
fn kernel_of_zero_map_is_everything() {
    let a = random_dg_category(2);
    let b = FiniteAInfCategory::new(a.objects);
    let rho = AInfFunctor { source: a.clone(), target: b, object_map: (0..a.objects).collect(), terms: BTreeMap::new() };
    let k = kernel_category(&rho, 3).unwrap();
    for (&(x, y), degs) in &a.homs {
        assert_eq!(k.category.hom_dim(x, y), degs.len());
    }
    assert!(check_ainf(&k.category, 3).is_empty());
}

#[test]
fn kernel_matches_limit_cohomology() {
    for seed in 0..5 {
        let rho = kernel_fixture(seed);
        assert!(check_functor(&rho, 3).is_empty());
        let k = kernel_category(&rho, 3).unwrap();
        assert!(check_ainf(&k.category, 3).is_empty());
        let l = limit_category(&rho, 1);
        for x in 0..rho.source.objects {
            for y in 0..rho.source.objects {
                assert_eq!(k.category.hom_cohomology(x, y), l.hom_cohomology(x, y), "seed {seed} ({x},{y})");
            }
        }
    }
}

#[test]
fn transport_with_trivial_data_is_identity() {
    let e = random_functor(6, 3);
    let q = AInfFunctor::identity(&e.source);
    let t = PreNaturalTransformation::zero(e.clone(), e.clone(), Parity::Even);
    let p = transport_functor(&e, &e, &q, &t, 3).unwrap();
    let l = limit_category(&e, 3);
    let id = AInfFunctor::identity(&l);
    assert_eq!(p.terms.get(&1), id.terms.get(&1));
    assert!((2..=3).all(|k| p.terms.get(&k).map_or(true, Table::is_empty)));
}

#[test]
fn transport_rejects_non_homotopies() {
    let fx = transport_fixture(1, 3);
    let mut t = fx.t.clone();
    let g = fx.e.source.gens()[0];
    let (x, y) = (fx.e.object_map[g.src], fx.e.object_map[g.tgt]);
    let want = fx.e.source.degree(g).flip();
    if let Some(h) = fx.e.target.basis(x, y).into_iter().find(|&h| fx.e.target.degree(h) == want) {
        let mut v = t.term(&[g]);
        toggle(&mut v, h);
        t.set_term(vec![g], v);
        let r = transport_functor(&fx.e, &fx.e_tilde, &fx.q, &t, 3);
        assert!(matches!(r, Err(AInfError::HomotopyMismatch { .. })));
    }
}

#[test]
fn transport_fixtures_give_functors() {
    for seed in 0..3 {
        let fx = transport_fixture(seed, 3);
        assert!(check_functor(&fx.e, 3).is_empty(), "E seed {seed}");
        assert!(check_functor(&fx.q, 3).is_empty(), "Q seed {seed}");
        let p = transport_functor(&fx.e, &fx.e_tilde, &fx.q, &fx.t, 3).unwrap();
        assert!(p.validate().is_ok());
        assert!(check_functor(&p, 3).is_empty(), "P seed {seed}");
        let inv = transport_linear_inverse(&fx.e, &fx.e_tilde, &fx.q, &fx.t).unwrap();
        for g in p.source.gens() {
            let there = p.term(&[g]);
            assert_eq!(eval_table(Some(&inv), &[there]), single(g));
        }
    }
}

#[test]
fn document_roundtrip() {
    let c = random_ainf_category(2, 3);
    let doc = CategoryDocument::from(&c);
    let json = serde_json::to_string(&doc).unwrap();
    let back: CategoryDocument = serde_json::from_str(&json).unwrap();
    assert_eq!(FiniteAInfCategory::from(&back), c);
}

#[test]
fn compositions_enumerate() {
    assert_eq!(compositions(3, &[1, 1]), vec![vec![1, 2], vec![2, 1]]);
    assert_eq!(compositions(2, &[1, 0, 1]), vec![vec![1, 0, 1]]);
    assert_eq!(compositions(0, &[]), vec![Vec::<usize>::new()]);
    let t = [Gen::new(2, 3, 0), Gen::new(1, 2, 0), Gen::new(0, 1, 0)];
    let b = blocks(&t, &[1, 0, 2]);
    assert_eq!(b.iter().map(|(s, o)| (s.len(), *o)).collect::<Vec<_>>(), vec![(2, 1), (0, 1), (1, 0)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn transported_structures_satisfy_relations(seed in 0u64..1000) {
        let c = random_ainf_category(seed, 4);
        prop_assert!(check_ainf(&c, 4).is_empty());
    }

    #[test]
    fn functor_differences_are_closed(seed in 0u64..1000) {
        let (f, g) = functor_pair(seed, 3);
        prop_assert!(mu1_fun(&PreNaturalTransformation::difference(&f, &g), 3).is_zero());
    }

    #[test]
    fn random_functor_limits_are_ainf(seed in 0u64..1000) {
        let e = random_functor(seed, 3);
        prop_assert!(check_functor(&e, 3).is_empty());
        prop_assert!(check_ainf(&limit_category(&e, 3), 3).is_empty());
    }
}
