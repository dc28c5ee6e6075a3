//! Verification pipeline: A-side and B-side hom dimensions over a twist window, product
//! spot-checks and the invariant suites, assembled into a deterministic report.

use std::collections::BTreeSet;

use hms_core::fukaya::{
    chain_generator_set, cohomology_hom_basis, cohomology_product, glue_identify, min_weight, restrict_to_cylinder, FukayaError,
    GeneratorLabel, LabelKind, LagrangianObject, ProductContext, ProductError, Site,
};
use hms_core::mirror::{
    cech_total_complex, chart_hom, chart_hom_classes, chart_hom_exponents, global_ext, mf_restriction,
    ordered_cover, overlap_degree, overlap_transfer, Laurent, MfObject, WALL_SECTION,
};
use hms_core::tropical::{wall_degrees, Leg, TropicalModel};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::input::Options;
use crate::selftest::{run_selftest, SelftestOptions};

/// Maximum number of product spot-checks kept per edge and product kind.
const PRODUCTS_PER_KIND: usize = 12;
/// Maximum number of failure messages kept per suite.
const FAILURES_KEPT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub truncation: i64,
    pub k_window: i64,
    pub seed: u64,
    /// Arity for the reduced A-infinity suites; `None` skips them.
    pub arity: Option<usize>,
}

impl From<Options> for VerifyOptions {
    fn from(o: Options) -> Self {
        VerifyOptions {
            truncation: o.truncation.into(),
            k_window: o.k_window.into(),
            seed: o.seed,
            arity: Some(o.arity as usize),
        }
    }
}

impl VerifyOptions {
    fn twists(&self) -> std::ops::RangeInclusive<i64> {
        -self.k_window..=self.k_window
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ObjectRef {
    pub alpha: [i64; 2],
    pub twist: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairResult {
    pub source: ObjectRef,
    pub target: ObjectRef,
    /// (even, odd) from the combinatorial enumeration.
    pub a_side: [usize; 2],
    /// (even, odd) from nodal-curve cohomology.
    pub b_side: [usize; 2],
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub kind: String,
    pub objects: [ObjectRef; 3],
    /// `[f, g]` for the composite `f . g`.
    pub inputs: [String; 2],
    pub expected: Vec<String>,
    pub actual: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub checked: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult { name: name.to_string(), checked: 0, passed: true, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < FAILURES_KEPT {
                self.failures.push(msg());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub truncation: i64,
    pub k_window: i64,
    pub seed: u64,
    pub pairs: Vec<PairResult>,
    pub products: Vec<ProductCheck>,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let matched = self.pairs.iter().filter(|p| p.matched).count();
        out.push_str(&format!("truncation J = {}, twist window |k| <= {}, seed {}\n", self.truncation, self.k_window, self.seed));
        out.push_str(&format!("hom dimensions: {matched}/{} pairs match\n", self.pairs.len()));
        for p in self.pairs.iter().filter(|p| !p.matched) {
            out.push_str(&format!(
                "  MISMATCH {:?}({}) -> {:?}({}): A {:?} B {:?}\n",
                p.source.alpha, p.source.twist, p.target.alpha, p.target.twist, p.a_side, p.b_side
            ));
        }
        let ok = self.products.iter().filter(|p| p.passed).count();
        out.push_str(&format!("products: {ok}/{} spot-checks agree\n", self.products.len()));
        for p in self.products.iter().filter(|p| !p.passed) {
            out.push_str(&format!(
                "  MISMATCH {} {} . {}: expected {:?} got {:?}\n",
                p.kind, p.inputs[0], p.inputs[1], p.expected, p.actual
            ));
        }
        for s in &self.suites {
            out.push_str(&format!("suite {:<30} {} ({} checks)\n", s.name, if s.passed { "PASS" } else { "FAIL" }, s.checked));
            for f in &s.failures {
                out.push_str(&format!("  {f}\n"));
            }
        }
        out.push_str(if self.passed { "RESULT: PASS\n" } else { "RESULT: FAIL\n" });
        out
    }
}

pub fn label_name(l: &GeneratorLabel) -> String {
    let site = match l.site {
        Site::Edge(e) => format!("e{e}"),
        Site::Ray(r) => format!("r{r}"),
        Site::Vertex(v) => format!("v{v}"),
        Site::Component(c) => format!("c{c}"),
    };
    let star = if l.dual { "*" } else { "" };
    match l.side {
        Some(s) => format!("{:?}{star}[{site},{}]@v{s}", l.kind, l.index),
        None => format!("{:?}{star}[{site},{}]", l.kind, l.index),
    }
}

fn object_ref(model: &TropicalModel, component: usize, twist: i64) -> ObjectRef {
    ObjectRef { alpha: model.points.point(component), twist }
}

fn objects(model: &TropicalModel, opts: &VerifyOptions) -> Vec<(usize, i64)> {
    (0..model.component_count()).flat_map(|c| opts.twists().map(move |k| (c, k))).collect()
}

struct PairData {
    result: PairResult,
    cech: (usize, usize),
    euler: Option<(bool, String)>,
}

fn pair_data(model: &TropicalModel, cover: &[hms_core::mirror::Chart], j: i64, s: (usize, i64), t: (usize, i64)) -> PairData {
    let a = cohomology_hom_basis(model, LagrangianObject::new(s.0, s.1), LagrangianObject::new(t.0, t.1), j).dims(j);
    let (src, tgt) = (MfObject::new(s.0, s.1), MfObject::new(t.0, t.1));
    let b = global_ext(model, src, tgt, j).dims();
    let cech = cech_total_complex(model, cover, src, tgt, j).cohomology_dims();
    let result = PairResult {
        source: object_ref(model, s.0, s.1),
        target: object_ref(model, t.0, t.1),
        a_side: [a.0, a.1],
        b_side: [b.0, b.1],
        matched: a == b,
    };
    let chi = b.0 as i64 - b.1 as i64;
    let euler = if s.0 == t.0 {
        let comp = &model.curve.components[s.0];
        comp.bounded.then(|| {
            let total_n: i64 = comp
                .boundary
                .iter()
                .map(|&l| match l {
                    Leg::Edge(e) => model.curve.bounded_edges[e].lattice_length,
                    Leg::Ray(_) => 0,
                })
                .sum();
            let want = total_n * (t.1 - s.1);
            (chi == want, format!("chi {chi} != {want}"))
        })
    } else {
        match model.curve.shared_leg(s.0, t.0) {
            Some(Leg::Edge(e)) => {
                let want = -(overlap_degree(model, e, src, tgt) + 1);
                Some((chi == want, format!("chi {chi} != {want}")))
            }
            None => Some((b == (0, 0), format!("disjoint components have dims {b:?}"))),
            Some(Leg::Ray(_)) => None,
        }
    };
    PairData { result, cech, euler }
}

pub fn wall_suite(model: &TropicalModel) -> Vec<SuiteResult> {
    let mut cy = SuiteResult::new("cy_relation");
    let mut wall = SuiteResult::new("wall_relation");
    let mut delta = SuiteResult::new("delta_constraint");
    let mut length = SuiteResult::new("lattice_length");
    for (i, e) in model.curve.bounded_edges.iter().enumerate() {
        let [a, b] = e.components;
        let [d_ab, d_ba] = e.degrees;
        cy.record(d_ab + d_ba == -2, || format!("edge {i}: d_ab + d_ba = {}", d_ab + d_ba));
        let g = model.third_point(e.ends[0], a, b);
        let h = model.third_point(e.ends[1], a, b);
        let recomputed = g.zip(h).and_then(|(g, h)| {
            let p = |x| model.points.point(x);
            wall_degrees(p(a), p(b), p(g), p(h))
        });
        wall.record(recomputed == Some((d_ab, d_ba)), || {
            format!("edge {i}: stored ({d_ab}, {d_ba}), wall relation gives {recomputed:?}")
        });
        delta.record(e.deltas[1] - e.deltas[0] == 1 + d_ab, || format!("edge {i}: deltas {:?} with d = {d_ab}", e.deltas));
        let from_polytope = model.polytope.edge_lattice_length(i);
        length.record(from_polytope == Some(e.lattice_length), || {
            format!("edge {i}: n = {} but polytope edge has length {from_polytope:?}", e.lattice_length)
        });
    }
    vec![cy, wall, delta, length]
}

pub type GlueFn<'a> =
    &'a (dyn Fn(&TropicalModel, usize, LagrangianObject, LagrangianObject, GeneratorLabel) -> Result<GeneratorLabel, FukayaError>
         + Sync);

/// Pairs of objects bordering a bounded edge.
fn edge_pairs(model: &TropicalModel, edge: usize, opts: &VerifyOptions) -> Vec<(LagrangianObject, LagrangianObject)> {
    let comps = model.curve.bounded_edges[edge].components;
    let mut out = Vec::new();
    for &a in &comps {
        for &b in &comps {
            for k in opts.twists() {
                for l in opts.twists() {
                    out.push((LagrangianObject::new(a, k), LagrangianObject::new(b, l)));
                }
            }
        }
    }
    out
}

fn exponent_total(model: &TropicalModel, edge: usize, src: LagrangianObject, tgt: LagrangianObject) -> i64 {
    let e = &model.curve.bounded_edges[edge];
    let base = e.lattice_length * (tgt.twist - src.twist);
    if src.component == tgt.component {
        base
    } else {
        base + e.degree_from(src.component)
    }
}

/// A wrapping weight admissible on every bounded edge at once.
fn pants_weight(model: &TropicalModel, src: LagrangianObject, tgt: LagrangianObject) -> i64 {
    (0..model.curve.bounded_edges.len()).map(|e| min_weight(model, e, src, tgt)).max().unwrap_or(1)
}

/// Gluing is an involution exchanging the two pants, and identified exponents sum to the
/// degree of the restricted bundle.
pub fn glue_suite(model: &TropicalModel, opts: &VerifyOptions, glue: GlueFn<'_>) -> SuiteResult {
    let mut suite = SuiteResult::new("glue_involution");
    for (i, e) in model.curve.bounded_edges.iter().enumerate() {
        for (src, tgt) in edge_pairs(model, i, opts) {
            let n = pants_weight(model, src, tgt);
            let total = exponent_total(model, i, src, tgt);
            for &side in &e.ends {
                let Ok(set) = chain_generator_set(model, side, src, tgt, n) else {
                    suite.record(false, || format!("edge {i}: no generator set at pants {side}"));
                    continue;
                };
                for label in restrict_to_cylinder(&set, i) {
                    let once = glue(model, i, src, tgt, label);
                    let twice = once.as_ref().ok().map(|g| glue(model, i, src, tgt, *g));
                    let ok = match (&once, &twice) {
                        (Ok(g), Some(Ok(back))) => {
                            *back == label && g.side != label.side && g.index + label.index == total
                        }
                        _ => false,
                    };
                    suite.record(ok, || format!("edge {i}: {} -> {:?} -> {:?}", label_name(&label), once, twice));
                }
            }
        }
    }
    suite
}

/// The label-level bijection between A-side cylinder generators and B-side overlap
/// monomials commutes with gluing on the A-side and overlap transfer on the B-side.
pub fn restriction_suite(model: &TropicalModel, opts: &VerifyOptions, glue: GlueFn<'_>) -> SuiteResult {
    let mut suite = SuiteResult::new("restriction_agreement");
    let cover = ordered_cover(model);
    let j = opts.truncation;
    for (i, e) in model.curve.bounded_edges.iter().enumerate() {
        for (src, tgt) in edge_pairs(model, i, opts) {
            let (ms, mt) = (MfObject::new(src.component, src.twist), MfObject::new(tgt.component, tgt.twist));
            let total = exponent_total(model, i, src, tgt);
            let n = pants_weight(model, src, tgt) + j + total.abs();
            for &side in &e.ends {
                let chart = cover.iter().find(|c| c.vertex == side).expect("one chart per vertex");
                let restricted = chart_hom(model, chart, ms, mt, &|_| j)
                    .and_then(|ext| mf_restriction(model, chart, Leg::Edge(i), ms, mt, &ext));
                let Ok(restricted) = restricted else {
                    suite.record(false, || format!("edge {i}: chart {side} has no restriction"));
                    continue;
                };
                let a_side: BTreeSet<GeneratorLabel> = match chain_generator_set(model, side, src, tgt, n) {
                    Ok(set) => restrict_to_cylinder(&set, i).into_iter().filter(|l| (0..=j).contains(&l.index)).collect(),
                    Err(_) => BTreeSet::new(),
                };
                let b_side: BTreeSet<GeneratorLabel> = restricted.labels().map(|(l, _)| *l).collect();
                suite.record(a_side == b_side, || {
                    format!("edge {i} chart {side}: A {} labels, B {} labels", a_side.len(), b_side.len())
                });
                for b in &b_side {
                    let via_b = overlap_transfer(model, i, ms, mt, *b);
                    let via_a = glue(model, i, src, tgt, *b).ok();
                    suite.record(via_a.is_some() && via_a == via_b, || {
                        format!("edge {i}: {} glues to {:?}, transfers to {:?}", label_name(b), via_a, via_b)
                    });
                }
            }
        }
    }
    suite
}

/// Chart Homs from the quotient presentation agree with the matrix-factorization complex.
pub fn chart_suite(model: &TropicalModel) -> SuiteResult {
    let mut suite = SuiteResult::new("chart_presentation");
    for chart in ordered_cover(model) {
        let cell = model.subdivision.cells[model.curve.vertices[chart.vertex].cell];
        for &a in &cell {
            for &b in &cell {
                let (s, t) = (MfObject::new(a, 0), MfObject::new(b, 0));
                let bound = |_: Leg| 3;
                let lhs = chart_hom(model, &chart, s, t, &bound).map(|ext| chart_hom_exponents(&chart, &ext));
                let rhs = chart_hom_classes(model, &chart, s, t, &bound);
                suite.record(lhs.is_ok() && lhs == rhs, || format!("chart {} pair ({a}, {b})", chart.vertex));
            }
        }
    }
    suite
}

/// (x, y) exponents of an edge label in the source component's orientation, and whether it is an H^1 class.
fn laurent_of(model: &TropicalModel, edge: usize, src: LagrangianObject, tgt: LagrangianObject, l: &GeneratorLabel) -> (Laurent, bool) {
    let m = exponent_total(model, edge, src, tgt);
    if l.dual {
        (Laurent::dual(l.index, -m - 2 - l.index), true)
    } else {
        (Laurent::section(l.index, m - l.index), false)
    }
}

/// B-side prediction of `f . g` from Laurent monomials and the target Ext basis.
fn expected_product(
    model: &TropicalModel,
    edge: usize,
    objs: [LagrangianObject; 3],
    f: &GeneratorLabel,
    g: &GeneratorLabel,
    j: i64,
) -> Vec<GeneratorLabel> {
    let [x0, x1, x2] = objs;
    let (lg, sg) = laurent_of(model, edge, x0, x1, g);
    let (lf, sf) = laurent_of(model, edge, x1, x2, f);
    // A label on the other component is written in that component's orientation.
    let lf = if x1.component != x0.component { lf.swap() } else { lf };
    let mut prod = lg.times(lf);
    if x0.component == x2.component && x0.component != x1.component {
        prod = prod.times(WALL_SECTION);
    }
    if sg && sf {
        return Vec::new();
    }
    let Some((p, q, starred)) = prod.class() else { return Vec::new() };
    if starred != (sg || sf) {
        return Vec::new();
    }
    let same = x0.component == x2.component;
    let kind = if same { LabelKind::SameEdge } else { LabelKind::CrossEdge };
    let label = if starred {
        GeneratorLabel::starred(kind, Site::Edge(edge), p)
    } else if same && (p == 0 || q == 0) {
        let (x_end, y_end) = model.curve.components[x0.component].leg_ends(Leg::Edge(edge)).expect("edge on component");
        match if q == 0 { x_end } else { y_end } {
            Some(v) => GeneratorLabel::joint(v),
            None => return Vec::new(),
        }
    } else {
        GeneratorLabel::new(kind, Site::Edge(edge), p)
    };
    let target = global_ext(model, MfObject::new(x0.component, x0.twist), MfObject::new(x2.component, x2.twist), j);
    if target.labels().any(|(l, _)| *l == label) {
        vec![label]
    } else {
        Vec::new()
    }
}

fn edge_labels(model: &TropicalModel, edge: usize, src: LagrangianObject, tgt: LagrangianObject, j: i64) -> Vec<GeneratorLabel> {
    let hom = cohomology_hom_basis(model, src, tgt, j);
    hom.truncated(j)
        .iter()
        .filter(|(l, _)| l.site == Site::Edge(edge) && matches!(l.kind, LabelKind::SameEdge | LabelKind::CrossEdge))
        .map(|(l, _)| *l)
        .collect()
}

fn product_kind(objs: &[LagrangianObject; 3], f: &GeneratorLabel, g: &GeneratorLabel) -> &'static str {
    let [a, b, c] = objs.map(|o| o.component);
    match (a == b, b == c, f.dual || g.dual) {
        (true, true, false) => "same.same",
        (true, true, true) => "starred.same",
        (true, false, _) => "cross.same",
        (false, true, _) => "same.cross",
        (false, false, _) => "cross.cross",
    }
}

pub fn product_checks(model: &TropicalModel, opts: &VerifyOptions) -> Vec<ProductCheck> {
    let j = opts.truncation;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();
    for (i, e) in model.curve.bounded_edges.iter().enumerate() {
        let [a, b] = e.components;
        let mut by_kind: std::collections::BTreeMap<&'static str, Vec<ProductCheck>> = Default::default();
        for comps in [[a, a, a], [a, a, b], [a, b, b], [a, b, a], [b, a, a], [b, b, a], [b, a, b], [b, b, b]] {
            for k0 in opts.twists() {
                for k1 in opts.twists() {
                    for k2 in opts.twists() {
                        let objs = [
                            LagrangianObject::new(comps[0], k0),
                            LagrangianObject::new(comps[1], k1),
                            LagrangianObject::new(comps[2], k2),
                        ];
                        let ctx = ProductContext { objects: objs, truncation: j };
                        for g in edge_labels(model, i, objs[0], objs[1], j) {
                            for f in edge_labels(model, i, objs[1], objs[2], j) {
                                let actual = match cohomology_product(model, &f, &g, &ctx) {
                                    Ok(v) => v,
                                    Err(ProductError::Unspecified) => continue,
                                    Err(ProductError::NotComposable) => vec![],
                                };
                                let expected = expected_product(model, i, objs, &f, &g, j);
                                let names = |v: &[GeneratorLabel]| v.iter().map(label_name).collect::<Vec<_>>();
                                by_kind.entry(product_kind(&objs, &f, &g)).or_default().push(ProductCheck {
                                    kind: format!("{} on e{i}", product_kind(&objs, &f, &g)),
                                    objects: objs.map(|o| object_ref(model, o.component, o.twist)),
                                    inputs: [label_name(&f), label_name(&g)],
                                    passed: actual == expected,
                                    expected: names(&expected),
                                    actual: names(&actual),
                                });
                            }
                        }
                    }
                }
            }
        }
        for (_, mut checks) in by_kind {
            // Keep every disagreement and a seeded sample of the rest.
            let (bad, mut good): (Vec<_>, Vec<_>) = checks.drain(..).partition(|c| !c.passed);
            good.shuffle(&mut rng);
            good.truncate(PRODUCTS_PER_KIND.saturating_sub(bad.len()));
            let mut kept: Vec<ProductCheck> = bad.into_iter().chain(good).collect();
            kept.sort_by(|x, y| (&x.objects.map(|o| (o.alpha, o.twist)), &x.inputs).cmp(&(&y.objects.map(|o| (o.alpha, o.twist)), &y.inputs)));
            out.extend(kept);
        }
    }
    out
}

/// A reduced seeded run of the A-infinity property suites.
fn ainf_suites(seed: u64, arity: usize) -> Vec<SuiteResult> {
    let opts = SelftestOptions {
        seed,
        arity,
        limit_fixtures: 2,
        hochschild_chains: 10,
        functor_pairs: 2,
        kernel_fixtures: 2,
        transport_fixtures: 2,
    };
    run_selftest(&opts)
        .into_iter()
        .map(|r| SuiteResult {
            name: format!("ainf_{}", r.name),
            checked: r.cases,
            passed: r.passed(),
            failures: r.failures.into_iter().take(FAILURES_KEPT).collect(),
        })
        .collect()
}

/// Verification with the library gluing map.
pub fn verify_model(model: &TropicalModel, opts: &VerifyOptions) -> VerificationReport {
    verify_with_glue(model, opts, &glue_identify)
}

pub fn verify_with_glue(model: &TropicalModel, opts: &VerifyOptions, glue: GlueFn<'_>) -> VerificationReport {
    let cover = ordered_cover(model);
    let objs = objects(model, opts);
    let tasks: Vec<((usize, i64), (usize, i64))> =
        objs.iter().flat_map(|&s| objs.iter().map(move |&t| (s, t))).collect();
    let data: Vec<PairData> =
        tasks.par_iter().map(|&(s, t)| pair_data(model, &cover, opts.truncation, s, t)).collect();

    let mut cech = SuiteResult::new("cech_vs_global");
    let mut euler = SuiteResult::new("euler_characteristic");
    for d in &data {
        let r = &d.result;
        let tag = || format!("{:?}({}) -> {:?}({})", r.source.alpha, r.source.twist, r.target.alpha, r.target.twist);
        let b = (r.b_side[0], r.b_side[1]);
        cech.record(d.cech == b, || format!("{}: cech {:?} global {:?}", tag(), d.cech, b));
        if let Some((ok, msg)) = &d.euler {
            euler.record(*ok, || format!("{}: {msg}", tag()));
        }
    }
    let mut suites = wall_suite(model);
    let (glue_res, (restr, chart)) = rayon::join(
        || glue_suite(model, opts, glue),
        || rayon::join(|| restriction_suite(model, opts, glue), || chart_suite(model)),
    );
    suites.extend([glue_res, restr, cech, euler, chart]);
    if let Some(arity) = opts.arity {
        suites.extend(ainf_suites(opts.seed, arity));
    }
    let products = product_checks(model, opts);
    let pairs: Vec<PairResult> = data.into_iter().map(|d| d.result).collect();
    let passed = pairs.iter().all(|p| p.matched) && products.iter().all(|p| p.passed) && suites.iter().all(|s| s.passed);
    VerificationReport {
        truncation: opts.truncation,
        k_window: opts.k_window,
        seed: opts.seed,
        pairs,
        products,
        suites,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hms_core::tropical::fixtures;

    fn opts() -> VerifyOptions {
        VerifyOptions { truncation: 3, k_window: 1, seed: 0, arity: Some(3) }
    }

    #[test]
    fn label_names_are_stable() {
        let l = GeneratorLabel::starred(LabelKind::SameEdge, Site::Edge(2), 1).on_side(4);
        assert_eq!(label_name(&l), "SameEdge*[e2,1]@v4");
    }

    #[test]
    fn square_passes() {
        let m = TropicalModel::from_monomials(&fixtures::square()).unwrap();
        let r = verify_model(&m, &opts());
        assert!(r.passed, "{}", r.render());
        assert!(!r.products.is_empty());
        assert!(r.suite("ainf_limit_category_ainf").is_some_and(|s| s.passed));
    }
}
