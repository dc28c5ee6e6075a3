//! Seeded property suites for the finite A-infinity toolkit.

use hms_core::ainfinity::fixtures::{functor_pair, kernel_fixture, random_ainf_category, random_functor, rng, transport_fixture};
use hms_core::ainfinity::{
    check_ainf, check_functor, hochschild_b, hochschild_b_sum, kernel_category, limit_category, mu1_fun,
    transport_functor, FiniteAInfCategory, HochschildChain, PreNaturalTransformation,
};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelftestOptions {
    pub seed: u64,
    pub arity: usize,
    pub limit_fixtures: u64,
    pub hochschild_chains: usize,
    pub functor_pairs: u64,
    pub kernel_fixtures: u64,
    pub transport_fixtures: u64,
}

impl SelftestOptions {
    pub fn new(seed: u64, arity: usize) -> Self {
        SelftestOptions {
            seed,
            arity,
            limit_fixtures: 20,
            hochschild_chains: 50,
            functor_pairs: 10,
            kernel_fixtures: 10,
            transport_fixtures: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn collect(name: &str, outcomes: Vec<Result<(), String>>) -> PropertyResult {
    PropertyResult {
        name: name.to_string(),
        cases: outcomes.len(),
        failures: outcomes.into_iter().filter_map(Result::err).collect(),
    }
}

pub fn limit_suite(opts: &SelftestOptions) -> PropertyResult {
    let up_to = opts.arity;
    let outcomes = (0..opts.limit_fixtures)
        .into_par_iter()
        .map(|i| {
            let seed = opts.seed.wrapping_add(i);
            let e = random_functor(seed, up_to);
            let l = limit_category(&e, up_to);
            l.validate().map_err(|err| format!("seed {seed}: {err:?}"))?;
            let v = check_ainf(&l, up_to);
            v.is_empty().then_some(()).ok_or_else(|| format!("seed {seed}: {} violations, first at arity {}", v.len(), v[0].arity))
        })
        .collect();
    collect("limit_category_ainf", outcomes)
}

fn random_cyclic_chain(rng: &mut impl Rng, c: &FiniteAInfCategory, len: usize) -> Option<HochschildChain> {
    let tuples: Vec<_> = c.composable_tuples(len).into_iter().filter(|t| t[len - 1].src == t[0].tgt).collect();
    if tuples.is_empty() {
        return None;
    }
    let t = &tuples[rng.gen_range(0..tuples.len())];
    HochschildChain::new(t.clone(), rng.gen_range(0..len)).ok()
}

pub fn hochschild_suite(opts: &SelftestOptions) -> PropertyResult {
    let mut rng = rng(opts.seed);
    let mut outcomes = Vec::new();
    let mut attempt = 0u64;
    while outcomes.len() < opts.hochschild_chains && attempt < 20 * opts.hochschild_chains as u64 {
        let seed = opts.seed.wrapping_add(attempt % 8);
        attempt += 1;
        let c = random_ainf_category(seed, opts.arity.max(2) + 1);
        let len = rng.gen_range(1..=4);
        let Some(chain) = random_cyclic_chain(&mut rng, &c, len) else { continue };
        let result = hochschild_b(&c, &chain)
            .and_then(|once| hochschild_b_sum(&c, &once))
            .map_err(|err| format!("{err:?}"))
            .and_then(|twice| {
                twice.is_empty().then_some(()).ok_or_else(|| format!("seed {seed}: b^2 has {} terms", twice.len()))
            });
        outcomes.push(result);
    }
    if outcomes.len() < opts.hochschild_chains {
        outcomes.push(Err(format!("only {} cyclic chains found", outcomes.len())));
    }
    collect("hochschild_b_squared", outcomes)
}

pub fn mu1_fun_suite(opts: &SelftestOptions) -> PropertyResult {
    let up_to = opts.arity.min(3);
    let outcomes = (0..opts.functor_pairs)
        .into_par_iter()
        .map(|i| {
            let seed = opts.seed.wrapping_add(i);
            let (f, g) = functor_pair(seed, up_to);
            let zero = PreNaturalTransformation::zero(f.clone(), g.clone(), hms_core::linalg::Parity::Even);
            if !mu1_fun(&zero, up_to).is_zero() {
                return Err(format!("seed {seed}: mu1 of zero is nonzero"));
            }
            let d = PreNaturalTransformation::difference(&f, &g);
            mu1_fun(&d, up_to).is_zero().then_some(()).ok_or_else(|| format!("seed {seed}: mu1(F - G) != 0"))
        })
        .collect();
    collect("mu1_fun_differences", outcomes)
}

pub fn kernel_suite(opts: &SelftestOptions) -> PropertyResult {
    let outcomes = (0..opts.kernel_fixtures)
        .into_par_iter()
        .map(|i| {
            let seed = opts.seed.wrapping_add(i);
            let rho = kernel_fixture(seed);
            let k = kernel_category(&rho, 3).map_err(|err| format!("seed {seed}: {err:?}"))?;
            let l = limit_category(&rho, 1);
            for x in 0..rho.source.objects {
                for y in 0..rho.source.objects {
                    let (a, b) = (k.category.hom_cohomology(x, y), l.hom_cohomology(x, y));
                    if a != b {
                        return Err(format!("seed {seed} ({x},{y}): kernel {a:?} limit {b:?}"));
                    }
                }
            }
            Ok(())
        })
        .collect();
    collect("kernel_vs_limit", outcomes)
}

pub fn transport_suite(opts: &SelftestOptions) -> PropertyResult {
    let up_to = opts.arity.min(3);
    let outcomes = (0..opts.transport_fixtures)
        .into_par_iter()
        .map(|i| {
            let seed = opts.seed.wrapping_add(i);
            let fx = transport_fixture(seed, up_to);
            let p = transport_functor(&fx.e, &fx.e_tilde, &fx.q, &fx.t, up_to)
                .map_err(|err| format!("seed {seed}: {err:?}"))?;
            let v = check_functor(&p, up_to);
            v.is_empty().then_some(()).ok_or_else(|| format!("seed {seed}: {} functor violations", v.len()))
        })
        .collect();
    collect("transport_functor", outcomes)
}

pub fn run_selftest(opts: &SelftestOptions) -> Vec<PropertyResult> {
    vec![limit_suite(opts), hochschild_suite(opts), mu1_fun_suite(opts), kernel_suite(opts), transport_suite(opts)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_selftest_passes() {
        let mut o = SelftestOptions::new(0, 3);
        o.limit_fixtures = 2;
        o.hochschild_chains = 5;
        o.functor_pairs = 2;
        o.kernel_fixtures = 2;
        o.transport_fixtures = 2;
        for r in run_selftest(&o) {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
            assert!(r.cases > 0);
        }
    }
}
