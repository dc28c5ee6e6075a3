//! Finite A-infinity categories over F2 presented by sparse multilinear tables, with
//! functors, pre-natural transformations, limits of functors and their comparison maps.
//!
//! Tuples are stored in composition order `[a_k, ..., a_1]`: `a_1` is applied first, so
//! `a_i.tgt == a_{i+1}.src`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::linalg::{LabeledBasis, Parity, SparseMatrix, F2};

pub mod fixtures;

/// Basis morphism `idx` of `Hom(src, tgt)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gen {
    pub src: usize,
    pub tgt: usize,
    pub idx: usize,
}

impl Gen {
    pub fn new(src: usize, tgt: usize, idx: usize) -> Self {
        Gen { src, tgt, idx }
    }
}

/// F2-linear combination of basis morphisms.
pub type Element = BTreeSet<Gen>;
/// Values of a multilinear map on composable basis tuples; absent keys are zero.
pub type Table = BTreeMap<Vec<Gen>, Element>;

pub fn single(g: Gen) -> Element {
    BTreeSet::from([g])
}

fn toggle(acc: &mut Element, g: Gen) {
    if !acc.remove(&g) {
        acc.insert(g);
    }
}

fn add_into(acc: &mut Element, x: &Element) {
    for &g in x {
        toggle(acc, g);
    }
}

fn insert_value(table: &mut Table, key: Vec<Gen>, value: Element) {
    if value.is_empty() {
        table.remove(&key);
    } else {
        table.insert(key, value);
    }
}

fn composable(tuple: &[Gen]) -> bool {
    tuple.windows(2).all(|w| w[0].src == w[1].tgt)
}

/// Sum of `table` over the expansion of the inputs into basis tuples.
fn eval_table(table: Option<&Table>, inputs: &[Element]) -> Element {
    let mut out = Element::new();
    let Some(table) = table else { return out };
    if inputs.iter().any(|e| e.is_empty()) {
        return out;
    }
    let lists: Vec<Vec<Gen>> = inputs.iter().map(|e| e.iter().copied().collect()).collect();
    let mut pick = vec![0usize; lists.len()];
    let mut tuple: Vec<Gen> = lists.iter().map(|l| l[0]).collect();
    loop {
        if composable(&tuple) {
            if let Some(v) = table.get(&tuple) {
                add_into(&mut out, v);
            }
        }
        let mut i = lists.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < lists[i].len() {
                tuple[i] = lists[i][pick[i]];
                break;
            }
            pick[i] = 0;
            tuple[i] = lists[i][0];
        }
    }
}

/// Compositions of `total` with one part per entry of `mins`, each part at least its minimum.
/// Parts are listed from the rightmost block (`s_1` first).
fn compositions(total: usize, mins: &[usize]) -> Vec<Vec<usize>> {
    fn go(total: usize, mins: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match mins.split_first() {
            None => {
                if total == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&m, rest)) => {
                let rest_min: usize = rest.iter().sum();
                if total < m + rest_min {
                    return;
                }
                for s in m..=total - rest_min {
                    cur.push(s);
                    go(total - s, rest, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(total, mins, &mut Vec::new(), &mut out);
    out
}

/// Splits a composition-order tuple `[a_k, ..., a_1]` into consecutive blocks with sizes `parts` (rightmost first),
/// returning the blocks in composition order together with the object at the right edge of each.
fn blocks<'a>(tuple: &'a [Gen], parts: &[usize]) -> Vec<(&'a [Gen], usize)> {
    let r = tuple.len();
    let mut out = Vec::with_capacity(parts.len());
    let mut consumed = 0;
    for &s in parts {
        let obj = if consumed == 0 { tuple[r - 1].src } else { tuple[r - consumed].tgt };
        out.push((&tuple[r - consumed - s..r - consumed], obj));
        consumed += s;
    }
    out.reverse();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AInfError {
    #[error("chain is not cyclically composable")]
    NotCyclicallyComposable,
    #[error("functor has a nonzero term of arity {0}")]
    NotLinear(usize),
    #[error("linear term is not surjective onto Hom({0}, {1})")]
    NotSurjective(usize, usize),
    #[error("product of kernel elements leaves the kernel at {0:?}")]
    NotClosed(Vec<Gen>),
    #[error("homotopy identity fails at arity {arity} on {inputs:?}")]
    HomotopyMismatch { arity: usize, inputs: Vec<Gen> },
    #[error("linear term is not invertible")]
    NotInvertible,
    #[error("table entry {0:?} has the wrong degree")]
    DegreeMismatch(Vec<Gen>),
    #[error("table entry {0:?} is not composable or leaves its hom space")]
    BadEntry(Vec<Gen>),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FiniteAInfCategory {
    pub objects: usize,
    /// Degrees of the basis of each nonzero hom space.
    pub homs: BTreeMap<(usize, usize), Vec<Parity>>,
    /// `mu[k]`: the k-ary operation.
    pub mu: BTreeMap<usize, Table>,
}

impl FiniteAInfCategory {
    pub fn new(objects: usize) -> Self {
        FiniteAInfCategory { objects, ..Default::default() }
    }

    pub fn set_hom(&mut self, src: usize, tgt: usize, degrees: Vec<Parity>) {
        self.homs.insert((src, tgt), degrees);
    }

    pub fn hom_dim(&self, src: usize, tgt: usize) -> usize {
        self.homs.get(&(src, tgt)).map_or(0, Vec::len)
    }

    pub fn basis(&self, src: usize, tgt: usize) -> Vec<Gen> {
        (0..self.hom_dim(src, tgt)).map(|i| Gen::new(src, tgt, i)).collect()
    }

    pub fn gens(&self) -> Vec<Gen> {
        self.homs.keys().flat_map(|&(s, t)| self.basis(s, t)).collect()
    }

    pub fn degree(&self, g: Gen) -> Parity {
        self.homs[&(g.src, g.tgt)][g.idx]
    }

    pub fn set_mu(&mut self, inputs: Vec<Gen>, value: Element) {
        let k = inputs.len();
        if value.is_empty() && !self.mu.contains_key(&k) {
            return;
        }
        insert_value(self.mu.entry(k).or_default(), inputs, value);
    }

    pub fn max_arity(&self) -> usize {
        self.mu.iter().filter(|(_, t)| !t.is_empty()).map(|(&k, _)| k).max().unwrap_or(0)
    }

    pub fn mu_eval(&self, inputs: &[Element]) -> Element {
        eval_table(self.mu.get(&inputs.len()), inputs)
    }

    fn mu_gens(&self, inputs: &[Gen]) -> Element {
        self.mu.get(&inputs.len()).and_then(|t| t.get(inputs)).cloned().unwrap_or_default()
    }

    /// All composable basis tuples of length `k`, in composition order.
    pub fn composable_tuples(&self, k: usize) -> Vec<Vec<Gen>> {
        let mut by_src: BTreeMap<usize, Vec<Gen>> = BTreeMap::new();
        for g in self.gens() {
            by_src.entry(g.src).or_default().push(g);
        }
        let mut paths: Vec<Vec<Gen>> = if k == 0 { vec![] } else { self.gens().into_iter().map(|g| vec![g]).collect() };
        for _ in 1..k {
            let mut next = Vec::new();
            for p in &paths {
                let last = p[p.len() - 1];
                for &g in by_src.get(&last.tgt).map(Vec::as_slice).unwrap_or(&[]) {
                    let mut q = p.clone();
                    q.push(g);
                    next.push(q);
                }
            }
            paths = next;
        }
        for p in &mut paths {
            p.reverse();
        }
        paths
    }

    /// Degree and composability of every table entry.
    pub fn validate(&self) -> Result<(), AInfError> {
        for (&k, table) in &self.mu {
            for (inputs, out) in table {
                if inputs.len() != k || !composable(inputs) {
                    return Err(AInfError::BadEntry(inputs.clone()));
                }
                let (src, tgt) = (inputs[k - 1].src, inputs[0].tgt);
                let want = inputs.iter().fold(Parity::of(2 - k as i64), |p, &g| p + self.degree(g));
                for &g in out {
                    if (g.src, g.tgt) != (src, tgt) || g.idx >= self.hom_dim(src, tgt) {
                        return Err(AInfError::BadEntry(inputs.clone()));
                    }
                    if self.degree(g) != want {
                        return Err(AInfError::DegreeMismatch(inputs.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Cohomology dimensions (even, odd) of `Hom(src, tgt)` under `mu^1`.
    pub fn hom_cohomology(&self, src: usize, tgt: usize) -> (usize, usize) {
        let basis = self.basis(src, tgt);
        let labels: LabeledBasis<Gen> = basis.iter().map(|&g| (g, self.degree(g))).collect();
        let mut d: SparseMatrix<Gen, Gen, F2> = SparseMatrix::new(labels.clone(), labels.clone());
        for &g in &basis {
            for h in self.mu_gens(&[g]) {
                d.set(&h, &g, F2(true)).expect("mu^1 stays in its hom space");
            }
        }
        let mut dims = [0usize; 2];
        for p in [Parity::Even, Parity::Odd] {
            let cols = labels.part(p);
            let out_rows = labels.part(p.flip());
            let in_cols = labels.part(p.flip());
            let restrict = |rows: &LabeledBasis<Gen>, cols: &LabeledBasis<Gen>| {
                let mut m: SparseMatrix<Gen, Gen, F2> = SparseMatrix::new(rows.clone(), cols.clone());
                for (r, c, v) in d.entries() {
                    if rows.contains(r) && cols.contains(c) {
                        m.set(r, c, *v).expect("labels present");
                    }
                }
                m.rank()
            };
            let cycles = cols.len() - restrict(&out_rows, &cols);
            let boundaries = restrict(&cols, &in_cols);
            dims[p.bit() as usize] = cycles - boundaries;
        }
        (dims[0], dims[1])
    }
}

/// One failed identity: the arity, the basis inputs and the nonzero left-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub arity: usize,
    pub inputs: Vec<Gen>,
    pub residue: Element,
}

/// `sum mu^{k-m+1}(a_k, ..., mu^m(a_{n+m}, ..., a_{n+1}), a_n, ..., a_1)` on a basis tuple.
fn inner_insertions(tuple: &[Gen], inner: impl Fn(&[Gen]) -> Element, outer: impl Fn(&[Element]) -> Element) -> Element {
    let k = tuple.len();
    let mut acc = Element::new();
    for m in 1..=k {
        for n in 0..=k - m {
            let window = &tuple[k - n - m..k - n];
            let mid = inner(window);
            if mid.is_empty() {
                continue;
            }
            let mut args: Vec<Element> = tuple[..k - n - m].iter().map(|&g| single(g)).collect();
            args.push(mid);
            args.extend(tuple[k - n..].iter().map(|&g| single(g)));
            add_into(&mut acc, &outer(&args));
        }
    }
    acc
}

/// Evaluates every A-infinity relation on every composable basis tuple up to `up_to`.
pub fn check_ainf(cat: &FiniteAInfCategory, up_to: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    for k in 1..=up_to {
        for tuple in cat.composable_tuples(k) {
            let residue = inner_insertions(&tuple, |w| cat.mu_gens(w), |args| cat.mu_eval(args));
            if !residue.is_empty() {
                out.push(Violation { arity: k, inputs: tuple, residue });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AInfFunctor {
    pub source: FiniteAInfCategory,
    pub target: FiniteAInfCategory,
    pub object_map: Vec<usize>,
    /// `terms[r]`: the r-ary component.
    pub terms: BTreeMap<usize, Table>,
}

impl AInfFunctor {
    pub fn identity(cat: &FiniteAInfCategory) -> Self {
        let mut t = Table::new();
        for g in cat.gens() {
            t.insert(vec![g], single(g));
        }
        AInfFunctor {
            source: cat.clone(),
            target: cat.clone(),
            object_map: (0..cat.objects).collect(),
            terms: BTreeMap::from([(1, t)]),
        }
    }

    pub fn term(&self, inputs: &[Gen]) -> Element {
        self.terms.get(&inputs.len()).and_then(|t| t.get(inputs)).cloned().unwrap_or_default()
    }

    pub fn eval(&self, inputs: &[Element]) -> Element {
        eval_table(self.terms.get(&inputs.len()), inputs)
    }

    pub fn max_arity(&self) -> usize {
        self.terms.iter().filter(|(_, t)| !t.is_empty()).map(|(&k, _)| k).max().unwrap_or(0)
    }

    pub fn set_term(&mut self, inputs: Vec<Gen>, value: Element) {
        let r = inputs.len();
        if value.is_empty() && !self.terms.contains_key(&r) {
            return;
        }
        insert_value(self.terms.entry(r).or_default(), inputs, value);
    }

    /// Degree and hom-space placement of every term.
    pub fn validate(&self) -> Result<(), AInfError> {
        for (&r, table) in &self.terms {
            for (inputs, out) in table {
                if inputs.len() != r || !composable(inputs) {
                    return Err(AInfError::BadEntry(inputs.clone()));
                }
                let (src, tgt) = (self.object_map[inputs[r - 1].src], self.object_map[inputs[0].tgt]);
                let want = inputs.iter().fold(Parity::of(1 - r as i64), |p, &g| p + self.source.degree(g));
                for &g in out {
                    if (g.src, g.tgt) != (src, tgt) || g.idx >= self.target.hom_dim(src, tgt) {
                        return Err(AInfError::BadEntry(inputs.clone()));
                    }
                    if self.target.degree(g) != want {
                        return Err(AInfError::DegreeMismatch(inputs.clone()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `sum mu_B^j(F^{s_j}(...), ..., F^{s_1}(...))` over all compositions of the tuple length.
fn pushforward_products(f: &AInfFunctor, tuple: &[Gen]) -> Element {
    let k = tuple.len();
    let mut acc = Element::new();
    for j in 1..=k {
        for parts in compositions(k, &vec![1; j]) {
            let args: Vec<Element> = blocks(tuple, &parts).into_iter().map(|(b, _)| f.term(b)).collect();
            add_into(&mut acc, &f.target.mu_eval(&args));
        }
    }
    acc
}

/// Evaluates the functor equations on every composable basis tuple up to `up_to`.
pub fn check_functor(f: &AInfFunctor, up_to: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    for k in 1..=up_to {
        for tuple in f.source.composable_tuples(k) {
            let mut residue = pushforward_products(f, &tuple);
            add_into(&mut residue, &inner_insertions(&tuple, |w| f.source.mu_gens(w), |args| f.eval(args)));
            if !residue.is_empty() {
                out.push(Violation { arity: k, inputs: tuple, residue });
            }
        }
    }
    out
}

/// `(g o f)^k = sum g^j(f^{s_j}(...), ..., f^{s_1}(...))`, tabulated up to arity `up_to`.
pub fn compose(f: &AInfFunctor, g: &AInfFunctor, up_to: usize) -> AInfFunctor {
    let mut out = AInfFunctor {
        source: f.source.clone(),
        target: g.target.clone(),
        object_map: f.object_map.iter().map(|&x| g.object_map[x]).collect(),
        terms: BTreeMap::new(),
    };
    for k in 1..=up_to {
        for tuple in f.source.composable_tuples(k) {
            let mut acc = Element::new();
            for j in 1..=k {
                for parts in compositions(k, &vec![1; j]) {
                    let args: Vec<Element> = blocks(&tuple, &parts).into_iter().map(|(b, _)| f.term(b)).collect();
                    add_into(&mut acc, &g.eval(&args));
                }
            }
            out.set_term(tuple, acc);
        }
    }
    out
}

/// Inverse over F2 of a square 0/1 matrix given as rows.
fn invert_f2(m: &[Vec<bool>]) -> Option<Vec<Vec<bool>>> {
    let n = m.len();
    let mut a: Vec<Vec<bool>> = m.iter().cloned().collect();
    let mut inv: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c])?;
        a.swap(c, p);
        inv.swap(c, p);
        for r in 0..n {
            if r != c && a[r][c] {
                for x in 0..n {
                    a[r][x] ^= a[c][x];
                    inv[r][x] ^= inv[c][x];
                }
            }
        }
    }
    Some(inv)
}

/// Table of `(F^1)^{-1}` on the target basis, when the object map is a bijection and every
/// linear component is invertible.
pub fn linear_inverse(f: &AInfFunctor) -> Result<Table, AInfError> {
    let n = f.source.objects;
    let mut preimage = vec![usize::MAX; f.target.objects];
    for (x, &y) in f.object_map.iter().enumerate() {
        if preimage[y] != usize::MAX {
            return Err(AInfError::NotInvertible);
        }
        preimage[y] = x;
    }
    if n != f.target.objects {
        return Err(AInfError::NotInvertible);
    }
    let mut table = Table::new();
    for x in 0..n {
        for y in 0..n {
            let src = f.source.basis(x, y);
            let tgt = f.target.basis(f.object_map[x], f.object_map[y]);
            if src.len() != tgt.len() {
                return Err(AInfError::NotInvertible);
            }
            // Column c = image of source basis element c.
            let mut m = vec![vec![false; src.len()]; tgt.len()];
            for (c, &g) in src.iter().enumerate() {
                for h in f.term(&[g]) {
                    m[h.idx][c] = true;
                }
            }
            let inv = invert_f2(&m).ok_or(AInfError::NotInvertible)?;
            for (c, &h) in tgt.iter().enumerate() {
                let value: Element = (0..src.len()).filter(|&r| inv[r][c]).map(|r| src[r]).collect();
                insert_value(&mut table, vec![h], value);
            }
        }
    }
    Ok(table)
}

/// Inverse functor with `G^k = (F^1)^{-1}(sum_{j >= 2} F^j(G^{s_j}, ..., G^{s_1}))`.
pub fn inverse_functor(f: &AInfFunctor, up_to: usize) -> Result<AInfFunctor, AInfError> {
    let lin = linear_inverse(f)?;
    let mut object_map = vec![0; f.target.objects];
    for (x, &y) in f.object_map.iter().enumerate() {
        object_map[y] = x;
    }
    let mut g = AInfFunctor {
        source: f.target.clone(),
        target: f.source.clone(),
        object_map,
        terms: BTreeMap::from([(1, lin.clone())]),
    };
    for k in 2..=up_to {
        for tuple in f.target.composable_tuples(k) {
            let mut acc = Element::new();
            for j in 2..=k {
                for parts in compositions(k, &vec![1; j]) {
                    let args: Vec<Element> = blocks(&tuple, &parts).into_iter().map(|(b, _)| g.term(b)).collect();
                    add_into(&mut acc, &f.eval(&args));
                }
            }
            let value = eval_table(Some(&lin), &[acc]);
            g.set_term(tuple, value);
        }
    }
    Ok(g)
}

/// Pre-natural transformation `T` from `source` to `target` (two functors with the same
/// source and target categories and object maps).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreNaturalTransformation {
    pub source: AInfFunctor,
    pub target: AInfFunctor,
    pub degree: Parity,
    /// `T^0(X)` in `Hom(F X, G X)`.
    pub zeroth: BTreeMap<usize, Element>,
    pub terms: BTreeMap<usize, Table>,
}

impl PreNaturalTransformation {
    pub fn zero(source: AInfFunctor, target: AInfFunctor, degree: Parity) -> Self {
        PreNaturalTransformation { source, target, degree, zeroth: BTreeMap::new(), terms: BTreeMap::new() }
    }

    pub fn term(&self, inputs: &[Gen]) -> Element {
        self.terms.get(&inputs.len()).and_then(|t| t.get(inputs)).cloned().unwrap_or_default()
    }

    pub fn set_term(&mut self, inputs: Vec<Gen>, value: Element) {
        let r = inputs.len();
        insert_value(self.terms.entry(r).or_default(), inputs, value);
    }

    pub fn is_zero(&self) -> bool {
        self.zeroth.values().all(Element::is_empty) && self.terms.values().all(Table::is_empty)
    }

    /// The difference `F - G` (over F2, the sum) of two functors, as a degree-one transformation.
    pub fn difference(f: &AInfFunctor, g: &AInfFunctor) -> Self {
        let mut d = PreNaturalTransformation::zero(f.clone(), g.clone(), Parity::Odd);
        for functor in [f, g] {
            for table in functor.terms.values() {
                for (k, v) in table {
                    let mut cur = d.term(k);
                    add_into(&mut cur, v);
                    d.set_term(k.clone(), cur);
                }
            }
        }
        d
    }
}

/// `mu^1_fun(T)^r` on one basis tuple, with `F`, `G` and `T` given separately.
pub(crate) fn mu1_fun_at(
    f: &AInfFunctor,
    g: &AInfFunctor,
    t_zeroth: &BTreeMap<usize, Element>,
    t_term: &dyn Fn(&[Gen]) -> Element,
    tuple: &[Gen],
) -> Element {
    let r = tuple.len();
    let b = &f.target;
    let mut acc = Element::new();
    for j in 1..=r + 1 {
        for i in 0..j {
            let mut mins = vec![1; j];
            mins[i] = 0;
            for parts in compositions(r, &mins) {
                let bl = blocks(tuple, &parts);
                // bl is in composition order: index j-1-i holds the T block.
                let args: Vec<Element> = bl
                    .iter()
                    .enumerate()
                    .map(|(pos, &(block, obj))| {
                        let l = j - 1 - pos;
                        if l < i {
                            f.term(block)
                        } else if l > i {
                            g.term(block)
                        } else if block.is_empty() {
                            t_zeroth.get(&obj).cloned().unwrap_or_default()
                        } else {
                            t_term(block)
                        }
                    })
                    .collect();
                add_into(&mut acc, &b.mu_eval(&args));
            }
        }
    }
    let src_mu = |w: &[Gen]| f.source.mu_gens(w);
    let outer = |args: &[Element]| {
        let mut out = Element::new();
        // T applied multilinearly to the argument list.
        let lists: Vec<Vec<Gen>> = args.iter().map(|e| e.iter().copied().collect()).collect();
        if lists.iter().any(Vec::is_empty) {
            return out;
        }
        let mut idx = vec![0usize; lists.len()];
        loop {
            let tup: Vec<Gen> = idx.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
            if composable(&tup) {
                add_into(&mut out, &t_term(&tup));
            }
            let mut p = lists.len();
            loop {
                if p == 0 {
                    return out;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < lists[p].len() {
                    break;
                }
                idx[p] = 0;
            }
        }
    };
    add_into(&mut acc, &inner_insertions(tuple, src_mu, outer));
    acc
}

/// The differential of `fun(A, B)` applied to `t`, tabulated up to arity `up_to`.
pub fn mu1_fun(t: &PreNaturalTransformation, up_to: usize) -> PreNaturalTransformation {
    let f = &t.source;
    let g = &t.target;
    let mut out = PreNaturalTransformation::zero(f.clone(), g.clone(), t.degree.flip());
    for (&x, v) in &t.zeroth {
        let value = f.target.mu_eval(std::slice::from_ref(v));
        if !value.is_empty() {
            out.zeroth.insert(x, value);
        }
    }
    let term = |w: &[Gen]| t.term(w);
    for r in 1..=up_to {
        for tuple in f.source.composable_tuples(r) {
            let v = mu1_fun_at(f, g, &t.zeroth, &term, &tuple);
            out.set_term(tuple, v);
        }
    }
    out
}

/// Index bookkeeping for `Hom_L(X, Y) = Hom_C(X, Y) + Hom_D(E X, E Y)[1]`.
#[derive(Debug, Clone)]
pub struct LimitLayout {
    pub c_dims: BTreeMap<(usize, usize), usize>,
    pub object_map: Vec<usize>,
}

impl LimitLayout {
    pub fn from_functor(e: &AInfFunctor) -> Self {
        let c_dims = (0..e.source.objects)
            .flat_map(|x| (0..e.source.objects).map(move |y| (x, y)))
            .map(|(x, y)| ((x, y), e.source.hom_dim(x, y)))
            .collect();
        LimitLayout { c_dims, object_map: e.object_map.clone() }
    }

    pub fn c_gen(&self, g: Gen) -> Gen {
        g
    }

    pub fn d_gen(&self, x: usize, y: usize, g: Gen) -> Gen {
        Gen::new(x, y, self.c_dims[&(x, y)] + g.idx)
    }

    /// Splits a limit generator into its C part or its D part.
    pub fn split(&self, g: Gen) -> Result<Gen, Gen> {
        let nc = self.c_dims[&(g.src, g.tgt)];
        if g.idx < nc {
            Ok(g)
        } else {
            Err(Gen::new(self.object_map[g.src], self.object_map[g.tgt], g.idx - nc))
        }
    }

    fn lift_d(&self, x: usize, y: usize, e: &Element) -> Element {
        e.iter().map(|&g| self.d_gen(x, y, g)).collect()
    }
}

/// `Delta^k(c_k, ..., c_2, d_1)`, and with `t` supplied the `Diamond^k` variant in which one
/// block carries `T`, blocks to its left use `left` and blocks to its right use `e`.
fn delta_sum(
    d_cat: &FiniteAInfCategory,
    e: &AInfFunctor,
    cs: &[Gen],
    d1: Gen,
    transform: Option<(&AInfFunctor, &PreNaturalTransformation)>,
) -> Element {
    let n = cs.len();
    let mut acc = Element::new();
    let min_j = if transform.is_some() { 2 } else { 1 };
    for j in min_j..=n + 1 {
        for parts in compositions(n, &vec![1; j - 1]) {
            let bl = blocks(cs, &parts);
            let t_positions: Vec<Option<usize>> = match transform {
                None => vec![None],
                Some(_) => (0..j - 1).map(Some).collect(),
            };
            for ti in t_positions {
                let mut args: Vec<Element> = bl
                    .iter()
                    .enumerate()
                    .map(|(pos, &(block, _))| {
                        let l = j - 2 - pos;
                        match (ti, transform) {
                            (Some(i), Some((left, _))) if l > i => left.term(block),
                            (Some(i), Some((_, t))) if l == i => t.term(block),
                            _ => e.term(block),
                        }
                    })
                    .collect();
                args.push(single(d1));
                add_into(&mut acc, &d_cat.mu_eval(&args));
            }
        }
    }
    acc
}

/// Limit `L(E)` of a functor `E: C -> D`, with operations tabulated up to arity `up_to`.
/// Its hom spaces are `Hom_C(X, Y)` followed by `Hom_D(E X, E Y)` with parity flipped.
pub fn limit_category(e: &AInfFunctor, up_to: usize) -> FiniteAInfCategory {
    let c = &e.source;
    let d = &e.target;
    let layout = LimitLayout::from_functor(e);
    let mut l = FiniteAInfCategory::new(c.objects);
    for x in 0..c.objects {
        for y in 0..c.objects {
            let mut degs: Vec<Parity> = c.homs.get(&(x, y)).cloned().unwrap_or_default();
            let dd = d.homs.get(&(e.object_map[x], e.object_map[y])).cloned().unwrap_or_default();
            degs.extend(dd.into_iter().map(Parity::flip));
            if !degs.is_empty() {
                l.set_hom(x, y, degs);
            }
        }
    }
    for k in 1..=up_to {
        for tuple in l.composable_tuples(k) {
            let (x0, xk) = (tuple[k - 1].src, tuple[0].tgt);
            let init: Vec<Result<Gen, Gen>> = tuple.iter().map(|&g| layout.split(g)).collect();
            if init[..k - 1].iter().any(|p| p.is_err()) {
                continue;
            }
            let cs: Vec<Gen> = init[..k - 1].iter().map(|p| *p.as_ref().unwrap()).collect();
            let value = match init[k - 1] {
                Ok(c1) => {
                    let mut all = cs.clone();
                    all.push(c1);
                    let mut out: Element = c.mu_gens(&all).into_iter().map(|g| layout.c_gen(g)).collect();
                    add_into(&mut out, &layout.lift_d(x0, xk, &e.term(&all)));
                    out
                }
                Err(d1) => layout.lift_d(x0, xk, &delta_sum(d, e, &cs, d1, None)),
            };
            l.set_mu(tuple, value);
        }
    }
    l
}

/// Pullback category of a strict surjective functor: homs are the kernels of `rho^1`.
#[derive(Debug, Clone)]
pub struct KernelCategory {
    pub category: FiniteAInfCategory,
    /// Basis vector of the kernel for each generator, as an element of the source category.
    pub inclusion: BTreeMap<Gen, Element>,
}

pub fn kernel_category(rho: &AInfFunctor, up_to: usize) -> Result<KernelCategory, AInfError> {
    if let Some(r) = rho.terms.iter().find(|(&r, t)| r >= 2 && !t.is_empty()).map(|(&r, _)| r) {
        return Err(AInfError::NotLinear(r));
    }
    let a = &rho.source;
    let mut k = FiniteAInfCategory::new(a.objects);
    let mut inclusion = BTreeMap::new();
    // Coordinates of a kernel element: its entries at each basis vector's pivot column.
    let mut pivots: BTreeMap<(usize, usize), Vec<(Gen, Gen)>> = BTreeMap::new();
    for x in 0..a.objects {
        for y in 0..a.objects {
            let (fx, fy) = (rho.object_map[x], rho.object_map[y]);
            let src = a.basis(x, y);
            let tgt = rho.target.basis(fx, fy);
            let mut image = Vec::new();
            let mut degs = Vec::new();
            let mut pv = Vec::new();
            for p in [Parity::Even, Parity::Odd] {
                let cols: LabeledBasis<Gen> = src.iter().filter(|&&g| a.degree(g) == p).map(|&g| (g, p)).collect();
                let rows: LabeledBasis<Gen> =
                    tgt.iter().filter(|&&g| rho.target.degree(g) == p).map(|&g| (g, p)).collect();
                let mut m: SparseMatrix<Gen, Gen, F2> = SparseMatrix::new(rows.clone(), cols.clone());
                for &g in cols.labels() {
                    for h in rho.term(&[g]) {
                        m.set(&h, &g, F2(true)).map_err(|_| AInfError::BadEntry(vec![g]))?;
                    }
                }
                if m.rank() != rows.len() {
                    return Err(AInfError::NotSurjective(x, y));
                }
                let kernel = m.kernel_basis();
                for v in &kernel {
                    let elem: Element = (0..v.len()).filter(|&i| v[i].0).map(|i| *cols.label(i)).collect();
                    let pivot = (0..v.len())
                        .find(|&i| v[i].0 && kernel.iter().filter(|w| w[i].0).count() == 1)
                        .expect("kernel basis has distinguished free columns");
                    pv.push(*cols.label(pivot));
                    degs.push(p);
                    image.push(elem);
                }
            }
            if !degs.is_empty() {
                k.set_hom(x, y, degs);
            }
            let entry = pivots.entry((x, y)).or_default();
            for (i, elem) in image.into_iter().enumerate() {
                let g = Gen::new(x, y, i);
                entry.push((g, pv[i]));
                inclusion.insert(g, elem);
            }
        }
    }
    for arity in 1..=up_to {
        for tuple in k.composable_tuples(arity) {
            let args: Vec<Element> = tuple.iter().map(|g| inclusion[g].clone()).collect();
            let value = a.mu_eval(&args);
            let (x0, xk) = (tuple[arity - 1].src, tuple[0].tgt);
            let coords: Element = pivots
                .get(&(x0, xk))
                .map(|ps| ps.iter().filter(|(_, p)| value.contains(p)).map(|(g, _)| *g).collect())
                .unwrap_or_default();
            let mut back = Element::new();
            for g in &coords {
                add_into(&mut back, &inclusion[g]);
            }
            if back != value {
                return Err(AInfError::NotClosed(tuple));
            }
            k.set_mu(tuple, coords);
        }
    }
    Ok(KernelCategory { category: k, inclusion })
}

/// Comparison functor `P: L(E) -> L(E~)` built from `Q: C -> C~` and a homotopy `T` from `E`
/// to `E~ o Q` with `T^0 = 0`.
pub fn transport_functor(
    e: &AInfFunctor,
    e_tilde: &AInfFunctor,
    q: &AInfFunctor,
    t: &PreNaturalTransformation,
    up_to: usize,
) -> Result<AInfFunctor, AInfError> {
    let eq = compose(q, e_tilde, up_to);
    if t.zeroth.values().any(|v| !v.is_empty()) {
        return Err(AInfError::HomotopyMismatch { arity: 0, inputs: vec![] });
    }
    let t = PreNaturalTransformation { source: e.clone(), target: eq.clone(), ..t.clone() };
    let d = PreNaturalTransformation::difference(&eq, e);
    let mt = mu1_fun(&t, up_to);
    for r in 1..=up_to {
        for tuple in e.source.composable_tuples(r) {
            if d.term(&tuple) != mt.term(&tuple) {
                return Err(AInfError::HomotopyMismatch { arity: r, inputs: tuple });
            }
        }
    }
    let l = limit_category(e, up_to);
    let lt = limit_category(e_tilde, up_to);
    let lay = LimitLayout::from_functor(e);
    let lay_t = LimitLayout::from_functor(e_tilde);
    let mut p = AInfFunctor { source: l.clone(), target: lt, object_map: q.object_map.clone(), terms: BTreeMap::new() };
    let lift_c = |es: &Element| -> Element { es.iter().map(|&g| lay_t.c_gen(g)).collect() };
    for k in 1..=up_to {
        for tuple in l.composable_tuples(k) {
            let (x0, xk) = (tuple[k - 1].src, tuple[0].tgt);
            let (y0, yk) = (q.object_map[x0], q.object_map[xk]);
            let init: Vec<Result<Gen, Gen>> = tuple.iter().map(|&g| lay.split(g)).collect();
            if init[..k - 1].iter().any(|s| s.is_err()) {
                continue;
            }
            let cs: Vec<Gen> = init[..k - 1].iter().map(|s| *s.as_ref().unwrap()).collect();
            let value = match init[k - 1] {
                Ok(c1) => {
                    let mut all = cs.clone();
                    all.push(c1);
                    let mut out = lift_c(&q.term(&all));
                    add_into(&mut out, &lay_t.lift_d(y0, yk, &t.term(&all)));
                    out
                }
                Err(d1) if k == 1 => single(lay_t.d_gen(y0, yk, d1)),
                Err(d1) => lay_t.lift_d(y0, yk, &delta_sum(&e.target, e, &cs, d1, Some((&eq, &t)))),
            };
            p.set_term(tuple, value);
        }
    }
    Ok(p)
}

/// `(P^1)^{-1}(c~, d~) = ((Q^1)^{-1}(c~), d~ - T^1((Q^1)^{-1}(c~)))` as a table on the basis of
/// `L(E~)`.
pub fn transport_linear_inverse(
    e: &AInfFunctor,
    e_tilde: &AInfFunctor,
    q: &AInfFunctor,
    t: &PreNaturalTransformation,
) -> Result<Table, AInfError> {
    let q_inv = linear_inverse(q)?;
    let lay = LimitLayout::from_functor(e);
    let lay_t = LimitLayout::from_functor(e_tilde);
    let mut back = vec![0; q.object_map.len()];
    for (x, &y) in q.object_map.iter().enumerate() {
        back[y] = x;
    }
    let lt = limit_category(e_tilde, 1);
    let mut table = Table::new();
    for g in lt.gens() {
        let (x0, x1) = (back[g.src], back[g.tgt]);
        let value = match lay_t.split(g) {
            Ok(c) => {
                let pre = eval_table(Some(&q_inv), &[single(c)]);
                let mut out: Element = pre.iter().map(|&h| lay.c_gen(h)).collect();
                let corr = eval_table(t.terms.get(&1), &[pre]);
                add_into(&mut out, &lay.lift_d(x0, x1, &corr));
                out
            }
            Err(d) => single(lay.d_gen(x0, x1, d)),
        };
        insert_value(&mut table, vec![g], value);
    }
    Ok(table)
}

/// Cyclic Hochschild chain `a_d (x) ... (x) a_1` with the distinguished letter first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HochschildChain {
    pub letters: Vec<Gen>,
}

impl HochschildChain {
    /// Rotates `letters` (composition order) so the letter at `distinguished` comes first.
    pub fn new(letters: Vec<Gen>, distinguished: usize) -> Result<Self, AInfError> {
        let d = letters.len();
        if d == 0 || distinguished >= d {
            return Err(AInfError::NotCyclicallyComposable);
        }
        let mut rotated = letters[distinguished..].to_vec();
        rotated.extend_from_slice(&letters[..distinguished]);
        let chain = HochschildChain { letters: rotated };
        if !chain.is_cyclic() {
            return Err(AInfError::NotCyclicallyComposable);
        }
        Ok(chain)
    }

    fn is_cyclic(&self) -> bool {
        let l = &self.letters;
        composable(l) && l[l.len() - 1].src == l[0].tgt
    }
}

pub type ChainSum = BTreeSet<HochschildChain>;

fn toggle_chain(acc: &mut ChainSum, c: HochschildChain) {
    if !acc.remove(&c) {
        acc.insert(c);
    }
}

/// Hochschild differential of one chain over F2.
pub fn hochschild_b(cat: &FiniteAInfCategory, chain: &HochschildChain) -> Result<ChainSum, AInfError> {
    if chain.letters.is_empty() || !chain.is_cyclic() {
        return Err(AInfError::NotCyclicallyComposable);
    }
    let a = &chain.letters;
    let d = a.len();
    let mut out = ChainSum::new();
    // Windows avoiding the distinguished letter at position 0.
    for start in 1..d {
        for end in start + 1..=d {
            for g in cat.mu_gens(&a[start..end]) {
                let mut letters = a[..start].to_vec();
                letters.push(g);
                letters.extend_from_slice(&a[end..]);
                toggle_chain(&mut out, HochschildChain { letters });
            }
        }
    }
    // Windows through the distinguished letter: mu(a_i..a_1, a_d..a_{i+j+1}), kept a_{i+j}..a_{i+1}.
    for j in 0..d {
        for i in 0..d - j {
            let mut inputs = a[d - i..].to_vec();
            inputs.extend_from_slice(&a[..d - i - j]);
            for g in cat.mu_gens(&inputs) {
                let mut letters = vec![g];
                letters.extend_from_slice(&a[d - i - j..d - i]);
                toggle_chain(&mut out, HochschildChain { letters });
            }
        }
    }
    Ok(out)
}

pub fn hochschild_b_sum(cat: &FiniteAInfCategory, chains: &ChainSum) -> Result<ChainSum, AInfError> {
    let mut out = ChainSum::new();
    for c in chains {
        for x in hochschild_b(cat, c)? {
            toggle_chain(&mut out, x);
        }
    }
    Ok(out)
}

/// Serializable presentation of a category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDocument {
    pub objects: usize,
    pub homs: Vec<HomEntry>,
    pub mu: Vec<TableEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomEntry {
    pub src: usize,
    pub tgt: usize,
    pub degrees: Vec<Parity>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub inputs: Vec<Gen>,
    pub output: Vec<Gen>,
}

impl From<&FiniteAInfCategory> for CategoryDocument {
    fn from(c: &FiniteAInfCategory) -> Self {
        CategoryDocument {
            objects: c.objects,
            homs: c.homs.iter().map(|(&(src, tgt), d)| HomEntry { src, tgt, degrees: d.clone() }).collect(),
            mu: c
                .mu
                .values()
                .flat_map(|t| t.iter())
                .map(|(k, v)| TableEntry { inputs: k.clone(), output: v.iter().copied().collect() })
                .collect(),
        }
    }
}

impl From<&CategoryDocument> for FiniteAInfCategory {
    fn from(doc: &CategoryDocument) -> Self {
        let mut c = FiniteAInfCategory::new(doc.objects);
        for h in &doc.homs {
            c.set_hom(h.src, h.tgt, h.degrees.clone());
        }
        for e in &doc.mu {
            let mut v = Element::new();
            for &g in &e.output {
                toggle(&mut v, g);
            }
            c.set_mu(e.inputs.clone(), v);
        }
        c
    }
}

#[cfg(test)]
mod tests;
