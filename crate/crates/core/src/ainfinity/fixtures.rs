//! Seeded random fixtures: dg categories of small F2 complexes, formal diffeomorphisms that
//! turn them into genuinely higher A-infinity categories, functor pairs, homotopies and
//! filtered quotient functors.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    compose, inverse_functor, mu1_fun_at, single, AInfFunctor, Element, FiniteAInfCategory, Gen,
    PreNaturalTransformation, Table,
};
use crate::linalg::Parity;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Z/2-graded complex over F2; `d[row][col]` is the coefficient of `row` in `d(col)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    pub parities: Vec<Parity>,
    pub d: Vec<Vec<bool>>,
}

impl Complex {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn zero_differential(parities: Vec<Parity>) -> Self {
        let n = parities.len();
        Complex { parities, d: vec![vec![false; n]; n] }
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        let n = self.dim() + other.dim();
        let mut d = vec![vec![false; n]; n];
        for (i, row) in self.d.iter().enumerate() {
            d[i][..self.dim()].copy_from_slice(row);
        }
        for (i, row) in other.d.iter().enumerate() {
            d[self.dim() + i][self.dim()..].copy_from_slice(row);
        }
        let mut parities = self.parities.clone();
        parities.extend_from_slice(&other.parities);
        Complex { parities, d }
    }
}

fn random_parity(rng: &mut impl Rng) -> Parity {
    if rng.gen_bool(0.5) {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// Complex of the given dimension; two basis vectors of opposite parity may be joined by `d`.
pub fn random_complex(rng: &mut impl Rng, dim: usize) -> Complex {
    let mut c = Complex::zero_differential((0..dim).map(|_| random_parity(rng)).collect());
    if dim == 2 && c.parities[0] != c.parities[1] && rng.gen_bool(0.5) {
        c.d[1][0] = true;
    }
    c
}

/// `E_ab` in `Hom(V_i, V_j)` sends basis vector `b` of `V_i` to `a` of `V_j`.
pub type MatrixUnit = (usize, usize, usize, usize);

/// Dg category of the complexes with `mu^1 f = d f + f d` and `mu^2` composition, restricted
/// to the matrix units accepted by `allowed` (which must be closed under both operations).
pub fn matrix_category(
    complexes: &[Complex],
    allowed: &dyn Fn(MatrixUnit) -> bool,
) -> (FiniteAInfCategory, BTreeMap<MatrixUnit, Gen>) {
    let n = complexes.len();
    let mut cat = FiniteAInfCategory::new(n);
    let mut index = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let mut degs = Vec::new();
            for a in 0..complexes[j].dim() {
                for b in 0..complexes[i].dim() {
                    if allowed((i, j, a, b)) {
                        index.insert((i, j, a, b), Gen::new(i, j, degs.len()));
                        degs.push(complexes[j].parities[a] + complexes[i].parities[b]);
                    }
                }
            }
            if !degs.is_empty() {
                cat.set_hom(i, j, degs);
            }
        }
    }
    for (&(i, j, a, b), &g) in &index {
        let mut out = Element::new();
        for x in 0..complexes[j].dim() {
            if complexes[j].d[x][a] {
                toggle(&mut out, index[&(i, j, x, b)]);
            }
        }
        for y in 0..complexes[i].dim() {
            if complexes[i].d[b][y] {
                toggle(&mut out, index[&(i, j, a, y)]);
            }
        }
        cat.set_mu(vec![g], out);
    }
    for (&(j, k, a, b), &g2) in &index {
        for (&(i, j2, a1, b1), &g1) in &index {
            if j2 == j && a1 == b {
                cat.set_mu(vec![g2, g1], single(index[&(i, k, a, b1)]));
            }
        }
    }
    (cat, index)
}

fn toggle(acc: &mut Element, g: Gen) {
    if !acc.remove(&g) {
        acc.insert(g);
    }
}

pub fn full_matrix_category(complexes: &[Complex]) -> (FiniteAInfCategory, BTreeMap<MatrixUnit, Gen>) {
    matrix_category(complexes, &|_| true)
}

/// Strict dg functor including each `V_i` as the block of `W_i` starting at `offsets[i]`.
pub fn block_embedding(source: &[Complex], target: &[Complex], offsets: &[usize]) -> AInfFunctor {
    let (c, ci) = full_matrix_category(source);
    let (d, di) = full_matrix_category(target);
    let mut f = AInfFunctor { source: c, target: d, object_map: (0..source.len()).collect(), terms: BTreeMap::new() };
    for (&(i, j, a, b), &g) in &ci {
        f.set_term(vec![g], single(di[&(i, j, a + offsets[j], b + offsets[i])]));
    }
    f
}

/// Sparse random higher components `Phi^2`, `Phi^3` of degree `1 - k`.
pub fn random_diffeo_terms(rng: &mut impl Rng, cat: &FiniteAInfCategory, density: f64) -> BTreeMap<usize, Table> {
    let mut out = BTreeMap::new();
    for k in 2..=3 {
        let mut table = Table::new();
        let p = if k == 2 { density } else { density / 2.0 };
        for tuple in cat.composable_tuples(k) {
            if !rng.gen_bool(p) {
                continue;
            }
            let want = tuple.iter().fold(Parity::of(1 - k as i64), |acc, &g| acc + cat.degree(g));
            let (src, tgt) = (tuple[k - 1].src, tuple[0].tgt);
            let candidates: Vec<Gen> = cat.basis(src, tgt).into_iter().filter(|&g| cat.degree(g) == want).collect();
            if let Some(&g) = candidates.choose(rng) {
                table.insert(tuple, single(g));
            }
        }
        out.insert(k, table);
    }
    out
}

/// Pulls `cat` back along the formal diffeomorphism `id + higher`: returns the new category
/// `cat'` and the functor `Phi: cat' -> cat` (identity on objects and first order).
pub fn transport_structure(
    cat: &FiniteAInfCategory,
    higher: &BTreeMap<usize, Table>,
    up_to: usize,
) -> (FiniteAInfCategory, AInfFunctor) {
    let mut phi = AInfFunctor::identity(cat);
    for (&k, t) in higher {
        for (key, v) in t {
            phi.set_term(key.clone(), v.clone());
        }
        let _ = k;
    }
    let mut new = FiniteAInfCategory { objects: cat.objects, homs: cat.homs.clone(), mu: BTreeMap::new() };
    for k in 1..=up_to {
        for tuple in cat.composable_tuples(k) {
            let mut acc = Element::new();
            for j in 1..=k {
                for parts in super::compositions(k, &vec![1; j]) {
                    let args: Vec<Element> =
                        super::blocks(&tuple, &parts).into_iter().map(|(b, _)| phi.term(b)).collect();
                    super::add_into(&mut acc, &cat.mu_eval(&args));
                }
            }
            for m in 1..k {
                for n in 0..=k - m {
                    let window = &tuple[k - n - m..k - n];
                    let mid = new.mu.get(&m).and_then(|t| t.get(window)).cloned().unwrap_or_default();
                    if mid.is_empty() {
                        continue;
                    }
                    let mut args: Vec<Element> = tuple[..k - n - m].iter().map(|&g| single(g)).collect();
                    args.push(mid);
                    args.extend(tuple[k - n..].iter().map(|&g| single(g)));
                    super::add_into(&mut acc, &phi.eval(&args));
                }
            }
            new.set_mu(tuple, acc);
        }
    }
    phi.source = new.clone();
    (new, phi)
}

fn random_dims(rng: &mut impl Rng, objects: usize, max: usize) -> Vec<usize> {
    (0..objects).map(|_| rng.gen_range(1..=max)).collect()
}

/// Random `E: C' -> D'` obtained by conjugating a block embedding with formal
/// diffeomorphisms on both sides.
pub fn random_functor(seed: u64, up_to: usize) -> AInfFunctor {
    let mut rng = rng(seed);
    let objects = rng.gen_range(2..=3);
    let dims = random_dims(&mut rng, objects, 2);
    let v: Vec<Complex> = dims.iter().map(|&d| random_complex(&mut rng, d)).collect();
    let w: Vec<Complex> = v.iter().map(|c| c.direct_sum(&random_complex(&mut rng, 2 - c.dim()))).collect();
    let e0 = block_embedding(&v, &w, &vec![0; objects]);
    conjugate(&mut rng, &e0, up_to)
}

fn conjugate(rng: &mut impl Rng, e0: &AInfFunctor, up_to: usize) -> AInfFunctor {
    let phi_c = random_diffeo_terms(rng, &e0.source, 0.3);
    let phi_d = random_diffeo_terms(rng, &e0.target, 0.3);
    conjugate_with(e0, &phi_c, &phi_d, up_to)
}

fn conjugate_with(
    e0: &AInfFunctor,
    phi_c: &BTreeMap<usize, Table>,
    phi_d: &BTreeMap<usize, Table>,
    up_to: usize,
) -> AInfFunctor {
    let (_, phi) = transport_structure(&e0.source, phi_c, up_to);
    let (_, psi) = transport_structure(&e0.target, phi_d, up_to);
    let psi_inv = inverse_functor(&psi, up_to).expect("first order is the identity");
    compose(&compose(&phi, e0, up_to), &psi_inv, up_to)
}

/// Two functors with the same object map into different summands of `W_i = V_i + V_i`.
pub fn functor_pair(seed: u64, up_to: usize) -> (AInfFunctor, AInfFunctor) {
    let mut rng = rng(seed);
    let objects = rng.gen_range(2..=3);
    let v: Vec<Complex> = (0..objects).map(|_| random_complex(&mut rng, 1)).collect();
    let w: Vec<Complex> = v.iter().map(|c| c.direct_sum(c)).collect();
    let e0 = block_embedding(&v, &w, &vec![0; objects]);
    let e1 = block_embedding(&v, &w, &vec![1; objects]);
    let phi_c = random_diffeo_terms(&mut rng, &e0.source, 0.3);
    let phi_d = random_diffeo_terms(&mut rng, &e0.target, 0.3);
    (conjugate_with(&e0, &phi_c, &phi_d, up_to), conjugate_with(&e1, &phi_c, &phi_d, up_to))
}

/// Invertible degree-preserving maps commuting with `d`, as rows.
fn chain_automorphisms(c: &Complex) -> Vec<Vec<Vec<bool>>> {
    let n = c.dim();
    let mut out = Vec::new();
    for bits in 0u32..(1 << (n * n)) {
        let g: Vec<Vec<bool>> = (0..n).map(|r| (0..n).map(|s| bits >> (r * n + s) & 1 == 1).collect()).collect();
        let graded = (0..n).all(|r| (0..n).all(|s| !g[r][s] || c.parities[r] == c.parities[s]));
        let mul = |a: &Vec<Vec<bool>>, b: &Vec<Vec<bool>>| -> Vec<Vec<bool>> {
            (0..n).map(|r| (0..n).map(|s| (0..n).fold(false, |acc, t| acc ^ (a[r][t] & b[t][s]))).collect()).collect()
        };
        if graded && mul(&g, &c.d) == mul(&c.d, &g) && super::invert_f2(&g).is_some() {
            out.push(g);
        }
    }
    out
}

/// Strict functor `f -> g_j f g_i^{-1}` for chosen chain automorphisms `g_i`.
fn conjugation(rng: &mut impl Rng, complexes: &[Complex]) -> AInfFunctor {
    let (cat, index) = full_matrix_category(complexes);
    let gs: Vec<Vec<Vec<bool>>> =
        complexes.iter().map(|c| chain_automorphisms(c).choose(rng).cloned().expect("identity")).collect();
    let invs: Vec<Vec<Vec<bool>>> = gs.iter().map(|g| super::invert_f2(g).expect("invertible")).collect();
    let mut f = AInfFunctor::identity(&cat);
    f.terms.clear();
    for (&(i, j, a, b), &g) in &index {
        let mut out = Element::new();
        for x in 0..complexes[j].dim() {
            for y in 0..complexes[i].dim() {
                if gs[j][x][a] && invs[i][b][y] {
                    toggle(&mut out, index[&(i, j, x, y)]);
                }
            }
        }
        f.set_term(vec![g], out);
    }
    f
}

/// Data for the comparison of limits: `E: C -> D`, `E~: C~ -> D`, `Q: C -> C~` and a
/// homotopy `T` from `E` to `E~ o Q`.
#[derive(Debug, Clone)]
pub struct TransportFixture {
    pub e: AInfFunctor,
    pub e_tilde: AInfFunctor,
    pub q: AInfFunctor,
    pub t: PreNaturalTransformation,
}

/// Random `T^1`, `T^2` of degree zero (`T^r` has parity `r` plus the inputs).
fn random_homotopy_terms(rng: &mut impl Rng, g: &AInfFunctor, density: f64) -> BTreeMap<usize, Table> {
    let mut out = BTreeMap::new();
    for r in 1..=2 {
        let mut table = Table::new();
        for tuple in g.source.composable_tuples(r) {
            if !rng.gen_bool(density) {
                continue;
            }
            let want = tuple.iter().fold(Parity::of(r as i64), |acc, &h| acc + g.source.degree(h));
            let (src, tgt) = (g.object_map[tuple[r - 1].src], g.object_map[tuple[0].tgt]);
            let candidates: Vec<Gen> =
                g.target.basis(src, tgt).into_iter().filter(|&h| g.target.degree(h) == want).collect();
            if let Some(&h) = candidates.choose(rng) {
                table.insert(tuple, single(h));
            }
        }
        out.insert(r, table);
    }
    out
}

/// Solves `E = E~ o Q + mu^1_fun(T)` order by order for a random `T`.
pub fn transport_fixture(seed: u64, up_to: usize) -> TransportFixture {
    let mut rng = rng(seed);
    let objects = 2;
    let dims = random_dims(&mut rng, objects, 2);
    let v: Vec<Complex> = dims.iter().map(|&d| random_complex(&mut rng, d)).collect();
    let w: Vec<Complex> = v.iter().map(|c| c.direct_sum(&random_complex(&mut rng, 2 - c.dim()))).collect();
    let (base, _) = full_matrix_category(&v);
    let phi1 = random_diffeo_terms(&mut rng, &base, 0.3);
    let phi2 = random_diffeo_terms(&mut rng, &base, 0.3);
    let (_, p1) = transport_structure(&base, &phi1, up_to);
    let (_, p2) = transport_structure(&base, &phi2, up_to);
    let p1_inv = inverse_functor(&p1, up_to).expect("first order is the identity");
    let conj = conjugation(&mut rng, &v);
    let q = compose(&compose(&p2, &conj, up_to), &p1_inv, up_to);
    let e0 = block_embedding(&v, &w, &vec![0; objects]);
    let phi_d = random_diffeo_terms(&mut rng, &e0.target, 0.3);
    let (_, psi) = transport_structure(&e0.target, &phi_d, up_to);
    let psi_inv = inverse_functor(&psi, up_to).expect("first order is the identity");
    let e_tilde = compose(&compose(&p1, &e0, up_to), &psi_inv, up_to);
    let g = compose(&q, &e_tilde, up_to);
    let terms = random_homotopy_terms(&mut rng, &g, 0.3);
    let mut e = AInfFunctor { source: g.source.clone(), target: g.target.clone(), object_map: g.object_map.clone(), terms: BTreeMap::new() };
    let zeroth = BTreeMap::new();
    let t_term = |w: &[Gen]| terms.get(&w.len()).and_then(|t| t.get(w)).cloned().unwrap_or_default();
    for r in 1..=up_to {
        for tuple in g.source.composable_tuples(r) {
            let mut value = g.term(&tuple);
            super::add_into(&mut value, &mu1_fun_at(&e, &g, &zeroth, &t_term, &tuple));
            e.set_term(tuple, value);
        }
    }
    let t = PreNaturalTransformation { source: e.clone(), target: g, degree: Parity::Even, zeroth, terms };
    TransportFixture { e, e_tilde, q, t }
}

/// Strict quotient functor from filtration-preserving maps of `V_i = R_i + P_i` (with `R_i` a
/// subcomplex listed first) onto maps of the quotients `P_i`.
pub fn kernel_fixture(seed: u64) -> AInfFunctor {
    let mut rng = rng(seed);
    let objects = rng.gen_range(2..=3);
    let mut sub = Vec::new();
    let mut full = Vec::new();
    let mut quotient = Vec::new();
    for _ in 0..objects {
        let r = rng.gen_range(0..=1usize);
        let mut c = Complex::zero_differential((0..r + 1).map(|_| random_parity(&mut rng)).collect());
        if r == 1 && c.parities[0] != c.parities[1] && rng.gen_bool(0.7) {
            c.d[0][1] = true;
        }
        quotient.push(Complex::zero_differential(c.parities[r..].to_vec()));
        sub.push(r);
        full.push(c);
    }
    let preserves = |(i, j, a, b): (usize, usize, usize, usize)| b >= sub[i] || a < sub[j];
    let (a_cat, a_index) = matrix_category(&full, &preserves);
    let (b_cat, b_index) = full_matrix_category(&quotient);
    let mut rho = AInfFunctor { source: a_cat, target: b_cat, object_map: (0..objects).collect(), terms: BTreeMap::new() };
    for (&(i, j, a, b), &g) in &a_index {
        let value = if a >= sub[j] && b >= sub[i] { single(b_index[&(i, j, a - sub[j], b - sub[i])]) } else { Element::new() };
        rho.set_term(vec![g], value);
    }
    rho.terms.entry(1).or_default();
    rho
}

/// Dg matrix category on random complexes of dimension at most 2.
pub fn random_dg_category(seed: u64) -> FiniteAInfCategory {
    let mut rng = rng(seed);
    let objects = rng.gen_range(1..=3);
    let dims = random_dims(&mut rng, objects, 2);
    let v: Vec<Complex> = dims.iter().map(|&d| random_complex(&mut rng, d)).collect();
    full_matrix_category(&v).0
}

/// Dg matrix category made genuinely A-infinity by a random formal diffeomorphism.
pub fn random_ainf_category(seed: u64, up_to: usize) -> FiniteAInfCategory {
    let mut rng = rng(seed);
    let objects = rng.gen_range(1..=2);
    let dims = random_dims(&mut rng, objects, 2);
    let v: Vec<Complex> = dims.iter().map(|&d| random_complex(&mut rng, d)).collect();
    let base = full_matrix_category(&v).0;
    let phi = random_diffeo_terms(&mut rng, &base, 0.3);
    transport_structure(&base, &phi, up_to).0
}
