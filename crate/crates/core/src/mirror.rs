//! B-side: matrix factorizations on the toric charts of the mirror, Ext groups in the
//! category of singularities via line bundles on nodal curves, and the Cech model that
//! glues chart computations along bounded edges.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::fukaya::{GeneratorLabel, LabelKind, Site};
use crate::linalg::{q, LabeledBasis, Parity, SparseMatrix, F2, Q};
use crate::tropical::{Leg, TropicalModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MfObject {
    pub component: usize,
    pub twist: i64,
}

impl MfObject {
    pub fn new(component: usize, twist: i64) -> Self {
        MfObject { component, twist }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MirrorError {
    #[error("component {component} does not meet chart {vertex}")]
    ComponentNotOnChart { component: usize, vertex: usize },
    #[error("leg {leg:?} is not a coordinate of chart {vertex}")]
    EdgeNotOnChart { leg: Leg, vertex: usize },
    #[error("invalid nodal configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub vertex: usize,
    /// One coordinate per incident leg; W is their product.
    pub coordinates: [Leg; 3],
    /// Position (from 1) in the height ordering.
    pub order: usize,
}

impl Chart {
    pub fn coordinate_index(&self, leg: Leg) -> Option<usize> {
        self.coordinates.iter().position(|&l| l == leg)
    }
}

/// One chart per tropical vertex, ordered by a generic linear height on the polytope.
pub fn ordered_cover(model: &TropicalModel) -> Vec<Chart> {
    let lifted: Vec<[i64; 3]> = model.polytope.vertices.iter().map(|v| v.position).collect();
    let mut t = 1i64;
    let heights = loop {
        let (e1, e2) = (Q::new(1.into(), (t + 1).into()), Q::new(1.into(), ((t + 1) * (t + 1)).into()));
        let h: Vec<Q> = lifted.iter().map(|p| q(p[2]) + &e1 * q(p[0]) + &e2 * q(p[1])).collect();
        let distinct: BTreeSet<&Q> = h.iter().collect();
        if distinct.len() == h.len() {
            break h;
        }
        t += 1;
    };
    let mut ids: Vec<usize> = (0..lifted.len()).collect();
    ids.sort_by(|&a, &b| heights[a].cmp(&heights[b]));
    ids.iter()
        .enumerate()
        .map(|(rank, &v)| {
            let legs = &model.curve.vertices[v].legs;
            Chart { vertex: v, coordinates: [legs[0], legs[1], legs[2]], order: rank + 1 }
        })
        .collect()
}

/// Z/2-graded basis of an Ext group, with labels in the A-side vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedExt {
    pub even: LabeledBasis<GeneratorLabel>,
    pub odd: LabeledBasis<GeneratorLabel>,
    pub truncation: i64,
}

impl GradedExt {
    pub fn empty(truncation: i64) -> Self {
        GradedExt { even: LabeledBasis::new(), odd: LabeledBasis::new(), truncation }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.even.len(), self.odd.len())
    }

    fn push(&mut self, label: GeneratorLabel, degree: Parity) {
        match degree {
            Parity::Even => self.even.push(label, degree),
            Parity::Odd => self.odd.push(label, degree),
        };
    }

    pub fn labels(&self) -> impl Iterator<Item = (&GeneratorLabel, Parity)> {
        self.even.iter().chain(self.odd.iter())
    }
}

fn cell_points(model: &TropicalModel, vertex: usize) -> [usize; 3] {
    model.subdivision.cells[model.curve.vertices[vertex].cell]
}

/// The coordinate cutting out `D_alpha` on the chart: the leg not bordering `alpha`.
fn defining_leg(model: &TropicalModel, chart: &Chart, alpha: usize) -> Leg {
    *chart
        .coordinates
        .iter()
        .find(|&&l| !model.curve.leg_components(l).contains(&alpha))
        .expect("a trivalent vertex has exactly one leg away from each of its components")
}

fn leg_kinds(leg: Leg, same: bool) -> LabelKind {
    match (leg, same) {
        (Leg::Edge(_), true) => LabelKind::SameEdge,
        (Leg::Edge(_), false) => LabelKind::CrossEdge,
        (Leg::Ray(_), true) => LabelKind::RayTail,
        (Leg::Ray(_), false) => LabelKind::RayChord,
    }
}

/// Chart-level Hom between `T_src` and `T_tgt`, from the quotient-module presentation.
/// `bound(leg)` caps the exponent enumerated along each coordinate.
pub fn chart_hom(
    model: &TropicalModel,
    chart: &Chart,
    src: MfObject,
    tgt: MfObject,
    bound: &dyn Fn(Leg) -> i64,
) -> Result<GradedExt, MirrorError> {
    let cell = cell_points(model, chart.vertex);
    for c in [src.component, tgt.component] {
        if !cell.contains(&c) {
            return Err(MirrorError::ComponentNotOnChart { component: c, vertex: chart.vertex });
        }
    }
    let v = chart.vertex;
    let mut ext = GradedExt::empty(0);
    if src.component == tgt.component {
        // O / (x_bc, x_ab x_ac): 1, powers of x_ab, powers of x_ac.
        let alpha = src.component;
        ext.push(GeneratorLabel::unit(alpha).on_side(v), Parity::Even);
        let skip = defining_leg(model, chart, alpha);
        for &leg in chart.coordinates.iter().filter(|&&l| l != skip) {
            for a in 1..=bound(leg) {
                ext.push(GeneratorLabel::new(leg_kinds(leg, true), Site::from(leg), a).on_side(v), Parity::Even);
            }
        }
    } else {
        // O(D_a) / (x_ac, x_bc, ...) on D_ab: polynomials in the shared coordinate, odd.
        let leg = model
            .curve
            .shared_leg(src.component, tgt.component)
            .expect("two points of one unimodular cell are adjacent");
        for a in 0..=bound(leg) {
            ext.push(GeneratorLabel::new(leg_kinds(leg, false), Site::from(leg), a).on_side(v), Parity::Odd);
        }
    }
    Ok(ext)
}

type Exponent = [i64; 3];

/// Exponent vectors of the chart Hom classes, computed from the matrix-factorization
/// differentials degree by degree, then shifted so the smallest class sits at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChartClasses {
    pub even: Vec<Exponent>,
    pub odd: Vec<Exponent>,
}

fn unit_vector(i: usize) -> Exponent {
    let mut e = [0; 3];
    e[i] = 1;
    e
}

fn add(a: Exponent, b: Exponent) -> Exponent {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn minus(a: Exponent, b: Exponent) -> Exponent {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn nonneg(a: Exponent) -> bool {
    a.iter().all(|&x| x >= 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Slot {
    F0,
    F1,
    H0,
    H1,
}

/// Classes of Hom(T_src, T_tgt) on a chart via kernels and images of
/// `(f0, f1) -> (u' f1 - u f0, (W/u') f0 - (W/u) f1)` and
/// `(h0, h1) -> (u' h1 + (W/u) h0, (W/u') h0 + u h1)` over Q.
pub fn chart_hom_classes(
    model: &TropicalModel,
    chart: &Chart,
    src: MfObject,
    tgt: MfObject,
    bound: &dyn Fn(Leg) -> i64,
) -> Result<ChartClasses, MirrorError> {
    let cell = cell_points(model, chart.vertex);
    for c in [src.component, tgt.component] {
        if !cell.contains(&c) {
            return Err(MirrorError::ComponentNotOnChart { component: c, vertex: chart.vertex });
        }
    }
    let iu = chart.coordinate_index(defining_leg(model, chart, src.component)).expect("leg of chart");
    let iv = chart.coordinate_index(defining_leg(model, chart, tgt.component)).expect("leg of chart");
    let w = [1, 1, 1];
    let (eu, ev) = (unit_vector(iu), unit_vector(iv));
    let offset = |s: Slot| match s {
        Slot::F0 => [0, 0, 0],
        Slot::F1 => minus(ev, eu),
        Slot::H0 => minus([0, 0, 0], eu),
        Slot::H1 => minus(ev, w),
    };
    // Each differential term: (from slot, to slot, multiplier exponent, sign).
    let d_even: [(Slot, Slot, Exponent, i64); 4] = [
        (Slot::F1, Slot::H0, ev, 1),
        (Slot::F0, Slot::H0, eu, -1),
        (Slot::F0, Slot::H1, minus(w, ev), 1),
        (Slot::F1, Slot::H1, minus(w, eu), -1),
    ];
    let d_odd: [(Slot, Slot, Exponent, i64); 4] = [
        (Slot::H1, Slot::F0, ev, 1),
        (Slot::H0, Slot::F0, minus(w, eu), 1),
        (Slot::H0, Slot::F1, minus(w, ev), 1),
        (Slot::H1, Slot::F1, eu, 1),
    ];
    let slots_at = |slots: [Slot; 2], deg: Exponent| -> LabeledBasis<Slot> {
        slots
            .iter()
            .filter(|&&s| nonneg(minus(deg, offset(s))))
            .map(|&s| (s, Parity::Even))
            .collect()
    };
    let matrix = |terms: &[(Slot, Slot, Exponent, i64)], from: &LabeledBasis<Slot>, to: &LabeledBasis<Slot>| {
        let mut m: SparseMatrix<Slot, Slot, Q> = SparseMatrix::new(to.clone(), from.clone());
        for &(a, b, _, sign) in terms {
            if from.contains(&a) && to.contains(&b) {
                m.add_to(&b, &a, q(sign)).expect("labels present");
            }
        }
        m
    };
    let maxb = chart.coordinates.iter().map(|&l| bound(l)).max().unwrap_or(0) + 3;
    let mut degrees = BTreeSet::new();
    for a in 0..=maxb {
        for b in 0..=maxb {
            for c in 0..=maxb {
                for s in [Slot::F0, Slot::F1, Slot::H0, Slot::H1] {
                    degrees.insert(add([a, b, c], offset(s)));
                }
            }
        }
    }
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for &deg in &degrees {
        let e_here = slots_at([Slot::F0, Slot::F1], deg);
        let o_here = slots_at([Slot::H0, Slot::H1], deg);
        let o_below = slots_at([Slot::H0, Slot::H1], minus(deg, w));
        let e_above = slots_at([Slot::F0, Slot::F1], add(deg, w));
        let d0 = matrix(&d_even, &e_here, &o_here);
        let d1_in = matrix(&d_odd, &o_below, &e_here);
        let d1_out = matrix(&d_odd, &o_here, &e_above);
        let h0 = e_here.len() - d0.rank() - d1_in.rank();
        let h1 = o_here.len() - d1_out.rank() - d0.rank();
        even.extend(std::iter::repeat(deg).take(h0));
        odd.extend(std::iter::repeat(deg).take(h1));
    }
    let all: Vec<Exponent> = even.iter().chain(odd.iter()).copied().collect();
    let mut base = [i64::MAX; 3];
    for d in &all {
        for i in 0..3 {
            base[i] = base[i].min(d[i]);
        }
    }
    let caps: Vec<i64> = chart.coordinates.iter().map(|&l| bound(l)).collect();
    let fits = |d: &Exponent| (0..3).all(|i| d[i] <= caps[i]);
    let norm = |v: Vec<Exponent>| {
        let mut out: Vec<Exponent> = v.into_iter().map(|d| minus(d, base)).filter(fits).collect();
        out.sort();
        out
    };
    Ok(ChartClasses { even: norm(even), odd: norm(odd) })
}

/// Exponent vectors of the quotient-presentation basis returned by [`chart_hom`].
pub fn chart_hom_exponents(chart: &Chart, ext: &GradedExt) -> ChartClasses {
    let exps = |b: &LabeledBasis<GeneratorLabel>| {
        let mut out: Vec<Exponent> = b
            .labels()
            .iter()
            .map(|l| {
                let leg = match l.site {
                    Site::Edge(e) => Some(Leg::Edge(e)),
                    Site::Ray(r) => Some(Leg::Ray(r)),
                    _ => None,
                };
                match leg.and_then(|g| chart.coordinate_index(g)) {
                    Some(i) => {
                        let mut e = [0; 3];
                        e[i] = l.index;
                        e
                    }
                    None => [0; 3],
                }
            })
            .collect();
        out.sort();
        out
    };
    ChartClasses { even: exps(&ext.even), odd: exps(&ext.odd) }
}

/// Knoerrer restriction to the punctured coordinate line of `leg`: labels become monomials
/// `x^i` on that line, indexed in the chart's own coordinate.
pub fn mf_restriction(
    model: &TropicalModel,
    chart: &Chart,
    leg: Leg,
    src: MfObject,
    tgt: MfObject,
    ext: &GradedExt,
) -> Result<GradedExt, MirrorError> {
    if chart.coordinate_index(leg).is_none() {
        return Err(MirrorError::EdgeNotOnChart { leg, vertex: chart.vertex });
    }
    let comps = model.curve.leg_components(leg);
    let mut out = GradedExt::empty(ext.truncation);
    if !(comps.contains(&src.component) && comps.contains(&tgt.component)) {
        return Ok(out);
    }
    let kind = leg_kinds(leg, src.component == tgt.component);
    for (l, deg) in ext.labels() {
        let index = if l.kind == LabelKind::Unit {
            0
        } else if l.site == Site::from(leg) {
            l.index
        } else {
            continue;
        };
        out.push(GeneratorLabel::new(kind, Site::from(leg), index).on_side(chart.vertex), deg);
    }
    Ok(out)
}

/// Degree of the restricted line bundle on `D_ab` for a bounded edge.
pub fn overlap_degree(model: &TropicalModel, edge: usize, src: MfObject, tgt: MfObject) -> i64 {
    let e = &model.curve.bounded_edges[edge];
    let base = e.lattice_length * (tgt.twist - src.twist);
    if src.component == tgt.component {
        base
    } else {
        base + e.degree_from(src.component)
    }
}

/// Converts a chart-local overlap exponent into the exponent of `x` in the homogeneous
/// coordinates `(x : y)` of `D_ab`, oriented by the source component.
pub fn overlap_reference_index(
    model: &TropicalModel,
    edge: usize,
    src: MfObject,
    tgt: MfObject,
    chart_vertex: usize,
    local: i64,
) -> Option<i64> {
    let comp = &model.curve.components[src.component];
    let (x_end, y_end) = comp.leg_ends(Leg::Edge(edge))?;
    if y_end == Some(chart_vertex) {
        Some(local)
    } else if x_end == Some(chart_vertex) {
        Some(overlap_degree(model, edge, src, tgt) - local)
    } else {
        None
    }
}

/// Mirror gluing of overlap monomials between the two charts of a bounded edge.
pub fn overlap_transfer(
    model: &TropicalModel,
    edge: usize,
    src: MfObject,
    tgt: MfObject,
    label: GeneratorLabel,
) -> Option<GeneratorLabel> {
    let side = label.side?;
    let reference = overlap_reference_index(model, edge, src, tgt, side, label.index)?;
    let ends = model.curve.bounded_edges[edge].ends;
    let other = if ends[0] == side { ends[1] } else { ends[0] };
    // The reference index is symmetric: local = reference at the y-end, degree - reference at the x-end.
    let local = overlap_reference_index(model, edge, src, tgt, other, reference)?;
    Some(GeneratorLabel { index: local, side: Some(other), ..label })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodalComponent {
    Projective(i64),
    Affine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Topology {
    Chain,
    Cycle,
}

/// Chain or cycle of rational curves; node `i` glues the y-end of component `i` to the
/// x-end of component `i + 1` (cyclically for a cycle).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodalCurveConfig {
    pub components: Vec<NodalComponent>,
    pub topology: Topology,
}

impl NodalCurveConfig {
    pub fn node_count(&self) -> usize {
        match self.topology {
            Topology::Chain => self.components.len().saturating_sub(1),
            Topology::Cycle => self.components.len(),
        }
    }

    fn validate(&self) -> Result<(), MirrorError> {
        let m = self.components.len();
        if m == 0 {
            return Err(MirrorError::InvalidConfig("no components".into()));
        }
        let affine: Vec<usize> =
            (0..m).filter(|&i| self.components[i] == NodalComponent::Affine).collect();
        match self.topology {
            Topology::Cycle if !affine.is_empty() => {
                Err(MirrorError::InvalidConfig("a cycle has no affine components".into()))
            }
            Topology::Chain if !(affine.is_empty() || (m >= 2 && affine == vec![0, m - 1])) => {
                Err(MirrorError::InvalidConfig("affine components must be the two chain ends".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Atom {
    /// `x^p y^(N-p)` on a projective component of degree N.
    Monomial { component: usize, p: i64 },
    /// `x^j` on an affine component.
    Tail { component: usize, j: i64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodalCohomology {
    pub atoms: LabeledBasis<Atom>,
    /// Kernel vectors of the node evaluation map, over the atoms.
    pub h0: Vec<Vec<Q>>,
    /// Nodes whose evaluation rows span the cokernel.
    pub coker_nodes: Vec<usize>,
    /// Serre-dual classes `(x^p y^q)*` per projective component, as (component, p).
    pub duals: Vec<(usize, i64)>,
}

impl NodalCohomology {
    pub fn h0_dim(&self) -> usize {
        self.h0.len()
    }

    pub fn h1_dim(&self) -> usize {
        self.coker_nodes.len() + self.duals.len()
    }
}

/// H^0 and H^1 of the line bundle with the given component degrees, affine tails cut at `j`.
pub fn nodal_cohomology(config: &NodalCurveConfig, j: i64) -> Result<NodalCohomology, MirrorError> {
    config.validate()?;
    let m = config.components.len();
    let mut atoms = LabeledBasis::new();
    let mut duals = Vec::new();
    for (c, comp) in config.components.iter().enumerate() {
        match *comp {
            NodalComponent::Projective(n) => {
                for p in (0..=n).rev() {
                    atoms.push(Atom::Monomial { component: c, p }, Parity::Even);
                }
                for p in (0..=(-n - 2)).rev() {
                    duals.push((c, p));
                }
            }
            NodalComponent::Affine => {
                for i in 0..=j {
                    atoms.push(Atom::Tail { component: c, j: i }, Parity::Even);
                }
            }
        }
    }
    // Value of a component at its y-end (node after it) and x-end (node before it).
    let y_end = |c: usize| match config.components[c] {
        NodalComponent::Projective(n) if n >= 0 => Some(Atom::Monomial { component: c, p: 0 }),
        NodalComponent::Affine => Some(Atom::Tail { component: c, j: 0 }),
        _ => None,
    };
    let x_end = |c: usize| match config.components[c] {
        NodalComponent::Projective(n) if n >= 0 => Some(Atom::Monomial { component: c, p: n }),
        NodalComponent::Affine => Some(Atom::Tail { component: c, j: 0 }),
        _ => None,
    };
    let nodes: LabeledBasis<usize> = (0..config.node_count()).map(|i| (i, Parity::Even)).collect();
    let mut eval: SparseMatrix<usize, Atom, Q> = SparseMatrix::new(nodes, atoms.clone());
    for i in 0..config.node_count() {
        let next = (i + 1) % m;
        if let Some(a) = y_end(i) {
            eval.add_to(&i, &a, q(1)).expect("atom present");
        }
        if let Some(b) = x_end(next) {
            eval.add_to(&i, &b, q(-1)).expect("atom present");
        }
    }
    Ok(NodalCohomology { atoms, h0: eval.kernel_basis(), coker_nodes: eval.cokernel_basis(), duals })
}

/// Label for an Ext class that does not correspond to a single named generator.
fn composite_label(alpha: usize) -> GeneratorLabel {
    GeneratorLabel::new(LabelKind::Unit, Site::Component(alpha), -1)
}

fn same_component_ext(model: &TropicalModel, src: MfObject, tgt: MfObject, j: i64) -> GradedExt {
    let alpha = src.component;
    let comp = &model.curve.components[alpha];
    let s = tgt.twist - src.twist;
    let components: Vec<NodalComponent> = comp
        .boundary
        .iter()
        .map(|&leg| match leg {
            Leg::Edge(e) => NodalComponent::Projective(model.curve.bounded_edges[e].lattice_length * s),
            Leg::Ray(_) => NodalComponent::Affine,
        })
        .collect();
    let config = NodalCurveConfig {
        components,
        topology: if comp.bounded { Topology::Cycle } else { Topology::Chain },
    };
    let coh = nodal_cohomology(&config, j).expect("boundary of a component is a valid configuration");
    let mut ext = GradedExt::empty(j);
    let m = comp.boundary.len();
    let node_of = |a: &Atom| -> Option<usize> {
        // Node at which an endpoint atom is evaluated.
        match *a {
            Atom::Monomial { component, p } => {
                let n = match config.components[component] {
                    NodalComponent::Projective(n) => n,
                    NodalComponent::Affine => return None,
                };
                if p == 0 && (component + 1 < m || comp.bounded) {
                    Some(component)
                } else if p == n && (component > 0 || comp.bounded) {
                    Some((component + m - 1) % m)
                } else {
                    None
                }
            }
            Atom::Tail { component, j: 0 } => Some(if component == 0 { 0 } else { component - 1 }),
            Atom::Tail { .. } => None,
        }
    };
    for v in &coh.h0 {
        let support: Vec<Atom> =
            (0..v.len()).filter(|&i| !num_traits::Zero::is_zero(&v[i])).map(|i| *coh.atoms.label(i)).collect();
        let constants_only = support.iter().all(|a| match *a {
            Atom::Monomial { component, .. } => config.components[component] == NodalComponent::Projective(0),
            Atom::Tail { j, .. } => j == 0,
        });
        let label = if s == 0 && constants_only {
            GeneratorLabel::unit(alpha)
        } else if support.len() == 1 {
            match support[0] {
                Atom::Monomial { component, p } => match comp.boundary[component] {
                    Leg::Edge(e) => GeneratorLabel::new(LabelKind::SameEdge, Site::Edge(e), p),
                    Leg::Ray(_) => composite_label(alpha),
                },
                Atom::Tail { component, j } => match comp.boundary[component] {
                    Leg::Ray(r) if j >= 1 => GeneratorLabel::new(LabelKind::RayTail, Site::Ray(r), j),
                    _ => composite_label(alpha),
                },
            }
        } else if support.len() == 2 {
            match (node_of(&support[0]), node_of(&support[1])) {
                (Some(a), Some(b)) if a == b => GeneratorLabel::joint(comp.joints[a]),
                _ => composite_label(alpha),
            }
        } else {
            composite_label(alpha)
        };
        ext.push(label, Parity::Even);
    }
    for &node in &coh.coker_nodes {
        let all_flat = config.components.iter().all(|c| *c == NodalComponent::Projective(0));
        let label = if comp.bounded && all_flat {
            GeneratorLabel::new(LabelKind::PointClass, Site::Component(alpha), 0)
        } else {
            GeneratorLabel::joint(comp.joints[node])
        };
        ext.push(label, Parity::Odd);
    }
    for &(c, p) in &coh.duals {
        if let Leg::Edge(e) = comp.boundary[c] {
            ext.push(GeneratorLabel::starred(LabelKind::SameEdge, Site::Edge(e), p), Parity::Odd);
        }
    }
    ext
}

/// `Hom_{D_sg}(O_{D_src}(k), O_{D_tgt}(l)[*])` with affine families truncated at `j`.
pub fn global_ext(model: &TropicalModel, src: MfObject, tgt: MfObject, j: i64) -> GradedExt {
    if src.component == tgt.component {
        return same_component_ext(model, src, tgt, j);
    }
    let mut ext = GradedExt::empty(j);
    match model.curve.shared_leg(src.component, tgt.component) {
        None => {}
        Some(Leg::Ray(r)) => {
            for i in 0..=j {
                ext.push(GeneratorLabel::new(LabelKind::RayChord, Site::Ray(r), i), Parity::Odd);
            }
        }
        Some(Leg::Edge(e)) => {
            let m = overlap_degree(model, e, src, tgt);
            let config = NodalCurveConfig { components: vec![NodalComponent::Projective(m)], topology: Topology::Chain };
            let coh = nodal_cohomology(&config, j).expect("single projective line");
            // The shift [*+1]: sections are odd, H^1 is even.
            for v in &coh.h0 {
                let i = v.iter().position(|x| !num_traits::Zero::is_zero(x)).expect("nonzero kernel vector");
                if let Atom::Monomial { p, .. } = *coh.atoms.label(i) {
                    ext.push(GeneratorLabel::new(LabelKind::CrossEdge, Site::Edge(e), p), Parity::Odd);
                }
            }
            for &(_, p) in &coh.duals {
                ext.push(GeneratorLabel::starred(LabelKind::CrossEdge, Site::Edge(e), p), Parity::Even);
            }
        }
    }
    ext
}

/// Two-term Cech complex: chart Homs in degree 0, overlap sections in degree 1.
#[derive(Debug, Clone)]
pub struct TotalComplex {
    pub c0: LabeledBasis<GeneratorLabel>,
    pub c1: LabeledBasis<GeneratorLabel>,
    pub delta: SparseMatrix<GeneratorLabel, GeneratorLabel, F2>,
}

impl TotalComplex {
    /// (even, odd) dimensions of the total cohomology; chart parity shifts by one on C^1.
    pub fn cohomology_dims(&self) -> (usize, usize) {
        let mut dims = [0usize; 2];
        for parity in [Parity::Even, Parity::Odd] {
            let rows = self.c1.part(parity);
            let cols = self.c0.part(parity);
            let mut block: SparseMatrix<GeneratorLabel, GeneratorLabel, F2> = SparseMatrix::new(rows.clone(), cols.clone());
            for (r, c, v) in self.delta.entries() {
                if rows.contains(r) && cols.contains(c) {
                    block.set(r, c, *v).expect("labels present");
                }
            }
            let rank = block.rank();
            dims[parity.bit() as usize] += cols.len() - rank;
            dims[parity.flip().bit() as usize] += rows.len() - rank;
        }
        (dims[0], dims[1])
    }
}

pub fn cech_total_complex(
    model: &TropicalModel,
    cover: &[Chart],
    src: MfObject,
    tgt: MfObject,
    j: i64,
) -> TotalComplex {
    let same = src.component == tgt.component;
    let bound = |leg: Leg| match leg {
        Leg::Ray(_) => j,
        Leg::Edge(e) => j + overlap_degree(model, e, src, tgt).abs() + 2,
    };
    let mut c0 = LabeledBasis::new();
    let mut chart_exts = Vec::new();
    for chart in cover {
        if let Ok(ext) = chart_hom(model, chart, src, tgt, &bound) {
            for (l, d) in ext.labels() {
                c0.push(*l, d);
            }
            chart_exts.push((chart, ext));
        }
    }
    let kind = if same { LabelKind::SameEdge } else { LabelKind::CrossEdge };
    let mut c1 = LabeledBasis::new();
    let chart_parity = if same { Parity::Even } else { Parity::Odd };
    let mut ranges: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
    for (e, edge) in model.curve.bounded_edges.iter().enumerate() {
        if !(edge.components.contains(&src.component) && edge.components.contains(&tgt.component)) {
            continue;
        }
        let deg = overlap_degree(model, e, src, tgt);
        let a = bound(Leg::Edge(e));
        let range = ((deg - a).min(0), a.max(deg));
        ranges.insert(e, range);
        for i in range.0..=range.1 {
            c1.push(GeneratorLabel::new(kind, Site::Edge(e), i), chart_parity);
        }
    }
    let mut delta = SparseMatrix::new(c1.clone(), c0.clone());
    for (chart, ext) in &chart_exts {
        for &leg in &chart.coordinates {
            let Leg::Edge(e) = leg else { continue };
            if !ranges.contains_key(&e) {
                continue;
            }
            let restricted = mf_restriction(model, chart, leg, src, tgt, ext).expect("leg of chart");
            // Walk the chart basis so each restricted label is matched with its source.
            for (l, _) in ext.labels() {
                let local = if l.kind == LabelKind::Unit {
                    0
                } else if l.site == Site::Edge(e) {
                    l.index
                } else {
                    continue;
                };
                debug_assert!(restricted.labels().any(|(r, _)| r.index == local));
                let Some(reference) = overlap_reference_index(model, e, src, tgt, chart.vertex, local) else {
                    continue;
                };
                let row = GeneratorLabel::new(kind, Site::Edge(e), reference);
                delta.add_to(&row, l, F2(true)).expect("reference index inside the overlap range");
            }
        }
    }
    TotalComplex { c0, c1, delta }
}

/// Homogeneous Laurent monomial `x^a y^b` on a bounded edge, used for B-side products:
/// sections have a, b >= 0; the class `(x^p y^q)*` is `x^(-p-1) y^(-q-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Laurent {
    pub x: i64,
    pub y: i64,
}

impl Laurent {
    pub fn section(p: i64, q: i64) -> Self {
        Laurent { x: p, y: q }
    }

    pub fn dual(p: i64, q: i64) -> Self {
        Laurent { x: -p - 1, y: -q - 1 }
    }

    pub fn times(self, o: Laurent) -> Laurent {
        Laurent { x: self.x + o.x, y: self.y + o.y }
    }

    /// Reads off a nonzero cohomology class, if any: `Some((p, q, starred))`.
    pub fn class(self) -> Option<(i64, i64, bool)> {
        if self.x >= 0 && self.y >= 0 {
            Some((self.x, self.y, false))
        } else if self.x < 0 && self.y < 0 {
            Some((-self.x - 1, -self.y - 1, true))
        } else {
            None
        }
    }

    pub fn swap(self) -> Laurent {
        Laurent { x: self.y, y: self.x }
    }
}

/// The canonical section `x y` of `O(D_a + D_b)` restricted to `D_ab`, as a monomial.
pub const WALL_SECTION: Laurent = Laurent { x: 1, y: 1 };
