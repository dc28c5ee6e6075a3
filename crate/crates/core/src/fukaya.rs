//! Combinatorial A-side: generator labels of wrapped Floer complexes between the
//! Lagrangians `L_alpha(k)`, chain-level bookkeeping on pairs of pants, cohomology-level
//! hom bases and the products that are given by explicit formulas.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::linalg::{LabeledBasis, Parity};
use crate::tropical::{Leg, TropicalModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LagrangianObject {
    pub component: usize,
    pub twist: i64,
}

impl LagrangianObject {
    pub fn new(component: usize, twist: i64) -> Self {
        LagrangianObject { component, twist }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LabelKind {
    SameEdge,
    CrossEdge,
    RayTail,
    RayChord,
    JointPoint,
    Unit,
    PointClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Site {
    Edge(usize),
    Ray(usize),
    Vertex(usize),
    Component(usize),
}

impl From<Leg> for Site {
    fn from(leg: Leg) -> Site {
        match leg {
            Leg::Edge(e) => Site::Edge(e),
            Leg::Ray(r) => Site::Ray(r),
        }
    }
}

/// Name of one basis element. For edge labels `index` is the x-exponent `p` in the
/// source component's counterclockwise orientation; the y-exponent follows from the hom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GeneratorLabel {
    pub kind: LabelKind,
    pub site: Site,
    pub index: i64,
    pub dual: bool,
    /// Pants (tropical vertex) carrying a chain-level representative.
    pub side: Option<usize>,
}

impl GeneratorLabel {
    pub fn new(kind: LabelKind, site: Site, index: i64) -> Self {
        GeneratorLabel { kind, site, index, dual: false, side: None }
    }

    pub fn starred(kind: LabelKind, site: Site, index: i64) -> Self {
        GeneratorLabel { kind, site, index, dual: true, side: None }
    }

    pub fn on_side(self, side: usize) -> Self {
        GeneratorLabel { side: Some(side), ..self }
    }

    pub fn joint(vertex: usize) -> Self {
        Self::new(LabelKind::JointPoint, Site::Vertex(vertex), 0)
    }

    pub fn unit(component: usize) -> Self {
        Self::new(LabelKind::Unit, Site::Component(component), 0)
    }

    /// Chain-level `x^0`, the minimum of the Hamiltonian on a cylinder.
    pub fn is_hamiltonian_minimum(&self) -> bool {
        matches!(self.kind, LabelKind::SameEdge | LabelKind::CrossEdge) && self.index == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FukayaError {
    #[error("weight {n} is below the minimum {min}")]
    WeightTooSmall { n: i64, min: i64 },
    #[error("leg is not a bounded edge")]
    EdgeUnbounded,
    #[error("objects do not both border edge {0}")]
    NotOnEdge(usize),
    #[error("label {0:?} does not live on a cylinder shared by two pants")]
    NotOnSharedCylinder(GeneratorLabel),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProductError {
    #[error("labels are not composable basis elements")]
    NotComposable,
    #[error("no explicit formula covers this pair of generators")]
    Unspecified,
}

/// Infinite family `x^j`, `j >= start`, along a ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RayFamily {
    pub ray: usize,
    pub kind: LabelKind,
    pub start: i64,
    pub degree: Parity,
}

impl RayFamily {
    fn label(&self, j: i64) -> GeneratorLabel {
        GeneratorLabel::new(self.kind, Site::Ray(self.ray), j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedHom {
    pub source: LagrangianObject,
    pub target: LagrangianObject,
    pub finite_part: LabeledBasis<GeneratorLabel>,
    pub ray_tails: Vec<RayFamily>,
    pub truncation: Option<i64>,
}

impl GradedHom {
    /// Finite part followed by every ray family enumerated up to index `j`.
    pub fn truncated(&self, j: i64) -> LabeledBasis<GeneratorLabel> {
        let mut out = self.finite_part.clone();
        for fam in &self.ray_tails {
            for i in fam.start..=j {
                out.push(fam.label(i), fam.degree);
            }
        }
        out
    }

    pub fn basis(&self) -> LabeledBasis<GeneratorLabel> {
        self.truncated(self.truncation.unwrap_or(0))
    }

    pub fn dims(&self, j: i64) -> (usize, usize) {
        let b = self.truncated(j);
        (b.count(Parity::Even), b.count(Parity::Odd))
    }

    /// Degree of a label, ignoring the truncation of ray families.
    pub fn degree_of(&self, label: &GeneratorLabel) -> Option<Parity> {
        if let Some(d) = self.finite_part.degree(label) {
            return Some(d);
        }
        self.ray_tails
            .iter()
            .find(|f| {
                label.site == Site::Ray(f.ray)
                    && label.kind == f.kind
                    && !label.dual
                    && label.side.is_none()
                    && label.index >= f.start
            })
            .map(|f| f.degree)
    }

    pub fn contains(&self, label: &GeneratorLabel) -> bool {
        self.degree_of(label).is_some()
    }
}

fn same_component_hom(model: &TropicalModel, src: LagrangianObject, tgt: LagrangianObject) -> GradedHom {
    let alpha = src.component;
    let comp = &model.curve.components[alpha];
    let s = tgt.twist - src.twist;
    let mut finite = LabeledBasis::new();
    let mut tails = Vec::new();
    let edge_length = |leg: Leg| match leg {
        Leg::Edge(e) => Some(model.curve.bounded_edges[e].lattice_length),
        Leg::Ray(_) => None,
    };
    let joint_before = |i: usize| match i.checked_sub(1) {
        Some(p) => Some(comp.joints[p]),
        None => comp.bounded.then(|| comp.joints[comp.joints.len() - 1]),
    };
    if s == 0 {
        finite.push(GeneratorLabel::unit(alpha), Parity::Even);
        if comp.bounded {
            finite.push(
                GeneratorLabel::new(LabelKind::PointClass, Site::Component(alpha), 0),
                Parity::Odd,
            );
        }
    }
    for (i, &leg) in comp.boundary.iter().enumerate() {
        match (leg, edge_length(leg)) {
            (Leg::Edge(e), Some(n)) => {
                if s > 0 {
                    let big_n = n * s;
                    if let Some(v) = joint_before(i) {
                        finite.push(GeneratorLabel::joint(v), Parity::Even);
                    }
                    for p in (1..big_n).rev() {
                        finite.push(GeneratorLabel::new(LabelKind::SameEdge, Site::Edge(e), p), Parity::Even);
                    }
                } else if s < 0 {
                    let top = n * (-s) - 2;
                    for p in (0..=top).rev() {
                        finite.push(GeneratorLabel::starred(LabelKind::SameEdge, Site::Edge(e), p), Parity::Odd);
                    }
                    let next = comp.boundary.get((i + 1) % comp.boundary.len()).copied();
                    let closes = i + 1 < comp.boundary.len() || comp.bounded;
                    if closes && matches!(next, Some(Leg::Edge(_))) {
                        finite.push(GeneratorLabel::joint(comp.joints[i]), Parity::Odd);
                    }
                }
            }
            (Leg::Ray(r), _) => {
                if s > 0 {
                    if let Some(v) = joint_before(i) {
                        finite.push(GeneratorLabel::joint(v), Parity::Even);
                    }
                } else if s < 0 && matches!(comp.boundary.get(i + 1), Some(Leg::Ray(_))) {
                    // Two rays meeting at a joint carry no twisting cylinder.
                    finite.push(GeneratorLabel::joint(comp.joints[i]), Parity::Even);
                }
                tails.push(RayFamily { ray: r, kind: LabelKind::RayTail, start: 1, degree: Parity::Even });
            }
            _ => {}
        }
    }
    GradedHom { source: src, target: tgt, finite_part: finite, ray_tails: tails, truncation: None }
}

/// Number of intersection points on a shared bounded edge, signed: positive counts degree-1
/// generators, negative counts starred degree-0 generators.
pub fn cross_winding(model: &TropicalModel, edge: usize, src: LagrangianObject, tgt: LagrangianObject) -> i64 {
    let e = &model.curve.bounded_edges[edge];
    e.lattice_length * (tgt.twist - src.twist) + e.delta_jump_from(src.component)
}

fn cross_component_hom(model: &TropicalModel, src: LagrangianObject, tgt: LagrangianObject) -> GradedHom {
    let mut finite = LabeledBasis::new();
    let mut tails = Vec::new();
    match model.curve.shared_leg(src.component, tgt.component) {
        None => {}
        Some(Leg::Ray(r)) => {
            tails.push(RayFamily { ray: r, kind: LabelKind::RayChord, start: 0, degree: Parity::Odd });
        }
        Some(Leg::Edge(e)) => {
            let w = cross_winding(model, e, src, tgt);
            if w > 0 {
                for p in (0..w).rev() {
                    finite.push(GeneratorLabel::new(LabelKind::CrossEdge, Site::Edge(e), p), Parity::Odd);
                }
            } else if w < 0 {
                for p in (0..-w).rev() {
                    finite.push(GeneratorLabel::starred(LabelKind::CrossEdge, Site::Edge(e), p), Parity::Even);
                }
            }
        }
    }
    GradedHom { source: src, target: tgt, finite_part: finite, ray_tails: tails, truncation: None }
}

/// Cohomology-level basis of `HW*(src, tgt)`, ray families truncated at `j`.
pub fn cohomology_hom_basis(
    model: &TropicalModel,
    src: LagrangianObject,
    tgt: LagrangianObject,
    j: i64,
) -> GradedHom {
    let mut hom = if src.component == tgt.component {
        same_component_hom(model, src, tgt)
    } else {
        cross_component_hom(model, src, tgt)
    };
    hom.truncation = Some(j);
    hom
}

fn edge_components_ok(model: &TropicalModel, edge: usize, src: LagrangianObject, tgt: LagrangianObject) -> bool {
    let comps = model.curve.bounded_edges[edge].components;
    comps.contains(&src.component) && comps.contains(&tgt.component)
}

/// Smallest wrapping weight dominating the twists on the cylinder of a bounded edge.
pub fn min_weight(model: &TropicalModel, edge: usize, src: LagrangianObject, tgt: LagrangianObject) -> i64 {
    model.curve.bounded_edges[edge].lattice_length * (src.twist.abs() + tgt.twist.abs()) + 1
}

/// Chain-level generators on the cylinder of a bounded edge at wrapping weight `n`.
pub fn chain_generators(
    model: &TropicalModel,
    leg: Leg,
    src: LagrangianObject,
    tgt: LagrangianObject,
    n: i64,
) -> Result<Vec<GeneratorLabel>, FukayaError> {
    let Leg::Edge(edge) = leg else { return Err(FukayaError::EdgeUnbounded) };
    if !edge_components_ok(model, edge, src, tgt) {
        return Err(FukayaError::NotOnEdge(edge));
    }
    let min = min_weight(model, edge, src, tgt);
    if n < min {
        return Err(FukayaError::WeightTooSmall { n, min });
    }
    let e = &model.curve.bounded_edges[edge];
    let big_n = e.lattice_length * (tgt.twist - src.twist);
    let (kind, top) = if src.component == tgt.component {
        (LabelKind::SameEdge, n + big_n)
    } else {
        (LabelKind::CrossEdge, n + big_n + e.degree_from(src.component))
    };
    Ok((-n..=top).map(|i| GeneratorLabel::new(kind, Site::Edge(edge), i)).collect())
}

/// Moves a chain-level cylinder label to the other pants containing the cylinder.
pub fn glue_identify(
    model: &TropicalModel,
    edge: usize,
    src: LagrangianObject,
    tgt: LagrangianObject,
    label: GeneratorLabel,
) -> Result<GeneratorLabel, FukayaError> {
    let bad = || FukayaError::NotOnSharedCylinder(label);
    if label.site != Site::Edge(edge) || !edge_components_ok(model, edge, src, tgt) {
        return Err(bad());
    }
    let e = &model.curve.bounded_edges[edge];
    let side = label.side.ok_or_else(bad)?;
    let other = if side == e.ends[0] {
        e.ends[1]
    } else if side == e.ends[1] {
        e.ends[0]
    } else {
        return Err(bad());
    };
    let big_n = e.lattice_length * (tgt.twist - src.twist);
    let total = match label.kind {
        LabelKind::SameEdge if src.component == tgt.component => big_n,
        LabelKind::CrossEdge if src.component != tgt.component => big_n + e.degree_from(src.component),
        _ => return Err(bad()),
    };
    Ok(GeneratorLabel { index: total - label.index, side: Some(other), ..label })
}

/// Chain-level generators of one object pair in one pair of pants, split into the part
/// localized near the joint and ray legs and the part on bounded cylinders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainGeneratorSet {
    pub pants: usize,
    pub source: LagrangianObject,
    pub target: LagrangianObject,
    pub weight: i64,
    pub joint_part: Vec<GeneratorLabel>,
    pub cylinder_part: Vec<GeneratorLabel>,
}

pub fn chain_generator_set(
    model: &TropicalModel,
    pants: usize,
    src: LagrangianObject,
    tgt: LagrangianObject,
    n: i64,
) -> Result<ChainGeneratorSet, FukayaError> {
    let mut set = ChainGeneratorSet {
        pants,
        source: src,
        target: tgt,
        weight: n,
        joint_part: Vec::new(),
        cylinder_part: Vec::new(),
    };
    let vertex = &model.curve.vertices[pants];
    let (a, b) = (src.component, tgt.component);
    let legs: Vec<Leg> = vertex
        .legs
        .iter()
        .copied()
        .filter(|&l| {
            let c = model.curve.leg_components(l);
            c.contains(&a) && c.contains(&b)
        })
        .collect();
    if a == b && !legs.is_empty() {
        set.joint_part.push(GeneratorLabel::joint(pants).on_side(pants));
    }
    for leg in legs {
        match leg {
            Leg::Edge(_) => {
                for l in chain_generators(model, leg, src, tgt, n)? {
                    set.cylinder_part.push(l.on_side(pants));
                }
            }
            Leg::Ray(r) => {
                let (kind, start) = if a == b { (LabelKind::RayTail, 1) } else { (LabelKind::RayChord, 0) };
                for j in start..=n {
                    set.joint_part.push(GeneratorLabel::new(kind, Site::Ray(r), j).on_side(pants));
                }
            }
        }
    }
    Ok(set)
}

/// Quotient by the joint part, keeping one cylinder's labels.
pub fn restrict_to_cylinder(set: &ChainGeneratorSet, edge: usize) -> Vec<GeneratorLabel> {
    set.cylinder_part.iter().copied().filter(|l| l.site == Site::Edge(edge)).collect()
}

/// True only if every label sits at the first intersection point of its edge.
pub fn triple_vanishing_check(labels: &[GeneratorLabel; 3]) -> bool {
    labels.iter().all(|l| l.index == 0)
}

/// The three objects `X0 -> X1 -> X2` of a product `f . g` with `g: X0 -> X1`, `f: X1 -> X2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductContext {
    pub objects: [LagrangianObject; 3],
    pub truncation: i64,
}

enum Coord {
    Edge(i64, i64),
    Ray(i64),
}

/// Coordinates of a degree-0 same-component label on a leg of its component.
fn coords_on(model: &TropicalModel, alpha: usize, s: i64, label: &GeneratorLabel, leg: Leg) -> Option<Coord> {
    let comp = &model.curve.components[alpha];
    match (label.kind, leg) {
        (LabelKind::SameEdge, Leg::Edge(e)) if label.site == Site::Edge(e) && !label.dual => {
            let big_n = model.curve.bounded_edges[e].lattice_length * s;
            Some(Coord::Edge(label.index, big_n - label.index))
        }
        (LabelKind::RayTail, Leg::Ray(r)) if label.site == Site::Ray(r) => Some(Coord::Ray(label.index)),
        (LabelKind::JointPoint, _) if s > 0 => {
            let Site::Vertex(v) = label.site else { return None };
            let (x_end, y_end) = comp.leg_ends(leg)?;
            match leg {
                Leg::Edge(e) => {
                    let big_n = model.curve.bounded_edges[e].lattice_length * s;
                    if x_end == Some(v) {
                        Some(Coord::Edge(big_n, 0))
                    } else if y_end == Some(v) {
                        Some(Coord::Edge(0, big_n))
                    } else {
                        None
                    }
                }
                Leg::Ray(_) => (x_end == Some(v) || y_end == Some(v)).then_some(Coord::Ray(0)),
            }
        }
        _ => None,
    }
}

/// Same-component degree-0 label with the given coordinates on a leg.
fn label_at(model: &TropicalModel, alpha: usize, leg: Leg, c: Coord) -> Option<GeneratorLabel> {
    let comp = &model.curve.components[alpha];
    let (x_end, y_end) = comp.leg_ends(leg)?;
    match (leg, c) {
        (Leg::Edge(e), Coord::Edge(p, q)) => {
            if p < 0 || q < 0 {
                None
            } else if q == 0 {
                x_end.map(GeneratorLabel::joint)
            } else if p == 0 {
                y_end.map(GeneratorLabel::joint)
            } else {
                Some(GeneratorLabel::new(LabelKind::SameEdge, Site::Edge(e), p))
            }
        }
        (Leg::Ray(r), Coord::Ray(j)) => {
            if j == 0 {
                x_end.or(y_end).map(GeneratorLabel::joint)
            } else {
                Some(GeneratorLabel::new(LabelKind::RayTail, Site::Ray(r), j))
            }
        }
        _ => None,
    }
}

fn keep_if_member(hom: &GradedHom, label: Option<GeneratorLabel>) -> Vec<GeneratorLabel> {
    label.filter(|l| hom.contains(l)).into_iter().collect()
}

/// `f . g` as a formal F2 sum of labels (empty = 0).
pub fn cohomology_product(
    model: &TropicalModel,
    f: &GeneratorLabel,
    g: &GeneratorLabel,
    ctx: &ProductContext,
) -> Result<Vec<GeneratorLabel>, ProductError> {
    let [x0, x1, x2] = ctx.objects;
    let hom_g = cohomology_hom_basis(model, x0, x1, ctx.truncation);
    let hom_f = cohomology_hom_basis(model, x1, x2, ctx.truncation);
    let hom_out = cohomology_hom_basis(model, x0, x2, ctx.truncation);
    let (Some(deg_g), Some(deg_f)) = (hom_g.degree_of(g), hom_f.degree_of(f)) else {
        return Err(ProductError::NotComposable);
    };
    if g.kind == LabelKind::Unit {
        return Ok(vec![*f]);
    }
    if f.kind == LabelKind::Unit {
        return Ok(vec![*g]);
    }
    if f.kind == LabelKind::PointClass || g.kind == LabelKind::PointClass {
        return Err(ProductError::Unspecified);
    }
    let (a0, a1, a2) = (x0.component, x1.component, x2.component);
    if a0 == a1 && a1 == a2 {
        let alpha = a0;
        let (sg, sf) = (x1.twist - x0.twist, x2.twist - x1.twist);
        let comp = &model.curve.components[alpha];
        match (deg_f, deg_g) {
            (Parity::Even, Parity::Even) => {
                let mut out = BTreeSet::new();
                for &leg in &comp.boundary {
                    let sum = match (coords_on(model, alpha, sg, g, leg), coords_on(model, alpha, sf, f, leg)) {
                        (Some(Coord::Edge(p, q)), Some(Coord::Edge(pp, qq))) => Coord::Edge(p + pp, q + qq),
                        (Some(Coord::Ray(i)), Some(Coord::Ray(j))) => Coord::Ray(i + j),
                        _ => continue,
                    };
                    out.extend(keep_if_member(&hom_out, label_at(model, alpha, leg, sum)));
                }
                Ok(out.into_iter().collect())
            }
            (Parity::Even, Parity::Odd) | (Parity::Odd, Parity::Even) => {
                // One starred edge label and one degree-0 label on the same edge.
                let (star, plain, s_plain, star_is_g) =
                    if deg_g == Parity::Odd { (g, f, sf, true) } else { (f, g, sg, false) };
                if star.kind != LabelKind::SameEdge || !star.dual {
                    return Err(ProductError::Unspecified);
                }
                let Site::Edge(e) = star.site else { return Err(ProductError::Unspecified) };
                let s_star = if star_is_g { -sg } else { -sf };
                let star_q = model.curve.bounded_edges[e].lattice_length * s_star - 2 - star.index;
                let Some(Coord::Edge(pp, qq)) = coords_on(model, alpha, s_plain, plain, Leg::Edge(e)) else {
                    return Ok(Vec::new());
                };
                let (p, q) = (star.index - pp, star_q - qq);
                if p < 0 || q < 0 {
                    return Ok(Vec::new());
                }
                let out = GeneratorLabel::starred(LabelKind::SameEdge, Site::Edge(e), p);
                let s_out = x2.twist - x0.twist;
                let ok = hom_out.contains(&out)
                    && model.curve.bounded_edges[e].lattice_length * (-s_out) - 2 == p + q;
                Ok(if ok { vec![out] } else { Vec::new() })
            }
            (Parity::Odd, Parity::Odd) => Err(ProductError::Unspecified),
        }
    } else if a0 == a1 && a1 != a2 {
        // g on alpha, f crossing alpha -> beta.
        let (Site::Edge(e), LabelKind::CrossEdge, false) = (f.site, f.kind, f.dual) else {
            return Err(ProductError::Unspecified);
        };
        if deg_g != Parity::Even {
            return Err(ProductError::Unspecified);
        }
        let wf = cross_winding(model, e, x1, x2);
        let (pf, qf) = (f.index, wf - 1 - f.index);
        match coords_on(model, a0, x1.twist - x0.twist, g, Leg::Edge(e)) {
            Some(Coord::Edge(p, q)) => Ok(cross_out(model, &hom_out, e, x0, x2, p + pf, q + qf)),
            _ => Ok(Vec::new()),
        }
    } else if a0 != a1 && a1 == a2 {
        // g crossing alpha -> beta, f on beta (read in alpha's orientation).
        let (Site::Edge(e), LabelKind::CrossEdge, false) = (g.site, g.kind, g.dual) else {
            return Err(ProductError::Unspecified);
        };
        if deg_f != Parity::Even {
            return Err(ProductError::Unspecified);
        }
        let wg = cross_winding(model, e, x0, x1);
        let (pg, qg) = (g.index, wg - 1 - g.index);
        match coords_on(model, a1, x2.twist - x1.twist, f, Leg::Edge(e)) {
            Some(Coord::Edge(pb, qb)) => Ok(cross_out(model, &hom_out, e, x0, x2, pg + qb, qg + pb)),
            _ => Ok(Vec::new()),
        }
    } else if a0 == a2 && a0 != a1 {
        // Two odd chords across one bounded edge compose to a same-component label.
        let (Site::Edge(e), Site::Edge(e2)) = (g.site, f.site) else { return Err(ProductError::Unspecified) };
        if e != e2 || g.kind != LabelKind::CrossEdge || f.kind != LabelKind::CrossEdge || g.dual || f.dual {
            return Err(ProductError::Unspecified);
        }
        let wg = cross_winding(model, e, x0, x1);
        let wf = cross_winding(model, e, x1, x2);
        let (pg, qg) = (g.index, wg - 1 - g.index);
        let (pf_beta, qf_beta) = (f.index, wf - 1 - f.index);
        let sum = Coord::Edge(pg + qf_beta + 1, qg + pf_beta + 1);
        Ok(keep_if_member(&hom_out, label_at(model, a0, Leg::Edge(e), sum)))
    } else {
        Err(ProductError::Unspecified)
    }
}

fn cross_out(
    model: &TropicalModel,
    hom_out: &GradedHom,
    e: usize,
    x0: LagrangianObject,
    x2: LagrangianObject,
    p: i64,
    q: i64,
) -> Vec<GeneratorLabel> {
    let w = cross_winding(model, e, x0, x2);
    if p < 0 || q < 0 || p + q != w - 1 {
        return Vec::new();
    }
    keep_if_member(hom_out, Some(GeneratorLabel::new(LabelKind::CrossEdge, Site::Edge(e), p)))
}

/// Linear extension of `cohomology_product` to formal sums.
pub fn product_of_sums(
    model: &TropicalModel,
    f: &[GeneratorLabel],
    g: &[GeneratorLabel],
    ctx: &ProductContext,
) -> Result<Vec<GeneratorLabel>, ProductError> {
    let mut acc: BTreeSet<GeneratorLabel> = BTreeSet::new();
    for a in f {
        for b in g {
            for l in cohomology_product(model, a, b, ctx)? {
                if !acc.remove(&l) {
                    acc.insert(l);
                }
            }
        }
    }
    Ok(acc.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::fixtures;
    use proptest::prelude::*;

    fn model(m: Vec<([i64; 2], i64)>) -> TropicalModel {
        TropicalModel::from_monomials(&m).unwrap()
    }

    fn obj(m: &TropicalModel, p: [i64; 2], k: i64) -> LagrangianObject {
        LagrangianObject::new(m.points.id_of(p).unwrap(), k)
    }

    #[test]
    fn counts_at_weight_two() {
        let f2 = model(fixtures::square());
        let a = obj(&f2, [1, 0], 0);
        let b = obj(&f2, [0, 1], 0);
        let same = chain_generators(&f2, Leg::Edge(0), a, a, 2).unwrap();
        assert_eq!(same.iter().map(|l| l.index).collect::<Vec<_>>(), vec![-2, -1, 0, 1, 2]);
        let cross = chain_generators(&f2, Leg::Edge(0), a, b, 2).unwrap();
        assert_eq!(cross.iter().map(|l| l.index).collect::<Vec<_>>(), vec![-2, -1, 0, 1]);
        assert_eq!(cross.iter().filter(|l| l.is_hamiltonian_minimum()).count(), 1);
    }

    #[test]
    fn weight_three_count() {
        let f2 = model(fixtures::square());
        let a0 = obj(&f2, [1, 0], 0);
        let a1 = obj(&f2, [1, 0], 1);
        assert_eq!(chain_generators(&f2, Leg::Edge(0), a0, a1, 3).unwrap().len(), 8);
    }

    #[test]
    fn chain_generator_errors() {
        let f2 = model(fixtures::square());
        let a = obj(&f2, [1, 0], 1);
        let b = obj(&f2, [0, 1], 1);
        assert_eq!(
            chain_generators(&f2, Leg::Edge(0), a, b, 2).unwrap_err(),
            FukayaError::WeightTooSmall { n: 2, min: 3 }
        );
        assert_eq!(chain_generators(&f2, Leg::Ray(0), a, b, 5).unwrap_err(), FukayaError::EdgeUnbounded);
        let far = obj(&f2, [0, 0], 0);
        assert_eq!(chain_generators(&f2, Leg::Edge(0), far, b, 5).unwrap_err(), FukayaError::NotOnEdge(0));
    }

    #[test]
    fn glue_examples() {
        let f2 = model(fixtures::square());
        let e = &f2.curve.bounded_edges[0];
        let a0 = obj(&f2, [1, 0], 0);
        let a1 = obj(&f2, [1, 0], 1);
        let b1 = obj(&f2, [0, 1], 1);
        let x = GeneratorLabel::new(LabelKind::SameEdge, Site::Edge(0), 0).on_side(e.ends[0]);
        let y = glue_identify(&f2, 0, a0, a1, x).unwrap();
        assert_eq!((y.index, y.side), (1, Some(e.ends[1])));
        assert_eq!(glue_identify(&f2, 0, a0, a1, y).unwrap(), x);
        let c = GeneratorLabel::new(LabelKind::CrossEdge, Site::Edge(0), 0).on_side(e.ends[0]);
        assert_eq!(glue_identify(&f2, 0, a0, b1, c).unwrap().index, 0);
        let unsided = GeneratorLabel::new(LabelKind::SameEdge, Site::Edge(0), 0);
        assert!(glue_identify(&f2, 0, a0, a1, unsided).is_err());
    }

    #[test]
    fn pants_same_component_basis() {
        let f1 = model(fixtures::pants());
        let a0 = obj(&f1, [0, 0], 0);
        let a1 = obj(&f1, [0, 0], 1);
        let hom = cohomology_hom_basis(&f1, a0, a1, 3);
        assert_eq!(hom.dims(3), (7, 0));
        assert_eq!(hom.finite_part.labels(), &[GeneratorLabel::joint(0)]);
    }

    #[test]
    fn square_cross_and_disjoint() {
        let f2 = model(fixtures::square());
        let a = obj(&f2, [1, 0], 0);
        let b = obj(&f2, [0, 1], 1);
        assert_eq!(cohomology_hom_basis(&f2, a, b, 8).dims(8), (0, 1));
        let c = obj(&f2, [0, 0], 0);
        let d = obj(&f2, [1, 1], 0);
        assert_eq!(cohomology_hom_basis(&f2, c, d, 8).dims(8), (0, 0));
    }

    #[test]
    fn bounded_component_euler_characteristic() {
        let m = model(fixtures::hexagon());
        let centre = m.points.id_of([0, 0]).unwrap();
        let total_n: i64 = m.curve.components[centre]
            .boundary
            .iter()
            .map(|&l| match l {
                Leg::Edge(e) => m.curve.bounded_edges[e].lattice_length,
                Leg::Ray(_) => 0,
            })
            .sum();
        for k in -2..=2 {
            for l in -2..=2 {
                let hom = cohomology_hom_basis(&m, LagrangianObject::new(centre, k), LagrangianObject::new(centre, l), 8);
                let (e, o) = hom.dims(8);
                assert_eq!(e as i64 - o as i64, total_n * (l - k));
            }
        }
    }

    #[test]
    fn truncation_is_monotone() {
        let f2 = model(fixtures::square());
        let a = obj(&f2, [0, 0], 0);
        let b = obj(&f2, [0, 0], 2);
        let hom = cohomology_hom_basis(&f2, a, b, 0);
        let mut prev = 0;
        for j in 0..10 {
            let (e, o) = hom.dims(j);
            if j > 0 {
                assert_eq!(e + o, prev + 2);
            }
            prev = e + o;
        }
    }

    #[test]
    fn product_examples() {
        let f2 = model(fixtures::tall_square());
        let a = |k| obj(&f2, [1, 0], k);
        let ctx = ProductContext { objects: [a(0), a(1), a(2)], truncation: 8 };
        // n = 2: x^1 y^1 is interior at weight 1, x^2 y^2 at weight 2.
        let g = GeneratorLabel::new(LabelKind::SameEdge, Site::Edge(0), 1);
        let f = GeneratorLabel::new(LabelKind::SameEdge, Site::Edge(0), 1);
        assert_eq!(cohomology_product(&f2, &f, &g, &ctx).unwrap(), vec![GeneratorLabel::new(
            LabelKind::SameEdge,
            Site::Edge(0),
            2
        )]);
        let unit_ctx = ProductContext { objects: [a(0), a(0), a(1)], truncation: 8 };
        assert_eq!(cohomology_product(&f2, &f, &GeneratorLabel::unit(a(0).component), &unit_ctx).unwrap(), vec![f]);
    }

    #[test]
    fn unit_times_joint_and_unit_times_tail() {
        let f1 = model(fixtures::pants());
        let a = |k| obj(&f1, [0, 0], k);
        let ctx = ProductContext { objects: [a(0), a(1), a(1)], truncation: 8 };
        let unit = GeneratorLabel::unit(a(0).component);
        let joint = GeneratorLabel::joint(0);
        assert_eq!(cohomology_product(&f1, &unit, &joint, &ctx).unwrap(), vec![joint]);
    }

    #[test]
    fn odd_chords_compose() {
        let f2 = model(fixtures::square());
        let a = |k| obj(&f2, [1, 0], k);
        let b = |k| obj(&f2, [0, 1], k);
        // Single chord x^0 y^0 each way; the composite lands at x^1 y^1 on weight 2.
        let ctx = ProductContext { objects: [a(0), b(1), a(2)], truncation: 8 };
        let g = GeneratorLabel::new(LabelKind::CrossEdge, Site::Edge(0), 0);
        let f = GeneratorLabel::new(LabelKind::CrossEdge, Site::Edge(0), 0);
        assert_eq!(
            cohomology_product(&f2, &f, &g, &ctx).unwrap(),
            vec![GeneratorLabel::new(LabelKind::SameEdge, Site::Edge(0), 1)]
        );
    }

    #[test]
    fn starred_range_rule() {
        let f2 = model(fixtures::tall_square());
        let a = |k| obj(&f2, [1, 0], k);
        // g: a(3) -> a(0) has starred labels with p + q = 4; f: a(0) -> a(1) plain with p + q = 2.
        let ctx = ProductContext { objects: [a(3), a(0), a(1)], truncation: 8 };
        let g = GeneratorLabel::starred(LabelKind::SameEdge, Site::Edge(0), 3);
        let f = GeneratorLabel::new(LabelKind::SameEdge, Site::Edge(0), 1);
        assert_eq!(
            cohomology_product(&f2, &f, &g, &ctx).unwrap(),
            vec![GeneratorLabel::starred(LabelKind::SameEdge, Site::Edge(0), 2)]
        );
        let low = GeneratorLabel::starred(LabelKind::SameEdge, Site::Edge(0), 0);
        assert!(cohomology_product(&f2, &f, &low, &ctx).unwrap().is_empty());
    }

    #[test]
    fn composability_and_unspecified() {
        let f2 = model(fixtures::square());
        let a = |k| obj(&f2, [1, 0], k);
        let b = |k| obj(&f2, [0, 1], k);
        let ctx = ProductContext { objects: [a(0), a(1), a(2)], truncation: 8 };
        let bogus = GeneratorLabel::new(LabelKind::CrossEdge, Site::Edge(0), 0);
        assert_eq!(cohomology_product(&f2, &bogus, &bogus, &ctx), Err(ProductError::NotComposable));
        let c = |k| obj(&f2, [0, 0], k);
        let chord = |r| GeneratorLabel::new(LabelKind::RayChord, Site::Ray(r), 0);
        let r_ab = match f2.curve.shared_leg(a(0).component, c(0).component) {
            Some(Leg::Ray(r)) => r,
            _ => unreachable!(),
        };
        let r_bc = match f2.curve.shared_leg(c(0).component, b(0).component) {
            Some(Leg::Ray(r)) => r,
            _ => unreachable!(),
        };
        let ctx3 = ProductContext { objects: [a(0), c(0), b(0)], truncation: 8 };
        assert_eq!(
            cohomology_product(&f2, &chord(r_bc), &chord(r_ab), &ctx3),
            Err(ProductError::Unspecified)
        );
    }

    #[test]
    fn triple_vanishing_examples() {
        let at = |i| GeneratorLabel::new(LabelKind::CrossEdge, Site::Edge(0), i);
        assert!(triple_vanishing_check(&[at(0), at(0), at(0)]));
        assert!(!triple_vanishing_check(&[at(0), at(1), at(0)]));
        let chord = GeneratorLabel::new(LabelKind::RayChord, Site::Ray(0), 2);
        assert!(!triple_vanishing_check(&[at(0), chord, at(0)]));
    }

    #[test]
    fn restriction_keeps_cylinder_labels() {
        let f2 = model(fixtures::square());
        let a0 = obj(&f2, [1, 0], 0);
        let a1 = obj(&f2, [1, 0], 1);
        let v = f2.curve.bounded_edges[0].ends[0];
        let set = chain_generator_set(&f2, v, a0, a1, 3).unwrap();
        let restricted = restrict_to_cylinder(&set, 0);
        assert_eq!(restricted.len(), chain_generators(&f2, Leg::Edge(0), a0, a1, 3).unwrap().len());
        assert!(set.joint_part.iter().all(|l| !set.cylinder_part.contains(l)));
        let far = obj(&f2, [0, 0], 0);
        let far_set = chain_generator_set(&f2, v, far, far, 3).unwrap();
        assert!(restrict_to_cylinder(&far_set, 0).is_empty());
    }

    fn all_models() -> Vec<TropicalModel> {
        vec![
            model(fixtures::pants()),
            model(fixtures::square()),
            model(fixtures::tall_square()),
            model(fixtures::pentagon()),
            model(fixtures::local_p2()),
        ]
    }

    #[test]
    fn count_identity_per_weight_step() {
        for m in all_models() {
            for (ei, e) in m.curve.bounded_edges.iter().enumerate() {
                let a = e.components[0];
                for (k, l) in [(0, 1), (1, -1), (2, 2)] {
                    let (s, t) = (LagrangianObject::new(a, k), LagrangianObject::new(a, l));
                    let n0 = min_weight(&m, ei, s, t);
                    for n in n0 + 1..n0 + 6 {
                        let big = chain_generators(&m, Leg::Edge(ei), s, t, n).unwrap().len();
                        let small = chain_generators(&m, Leg::Edge(ei), s, t, n - 1).unwrap().len();
                        assert_eq!(big - small, 2);
                    }
                }
            }
        }
    }

    fn random_label(hom: &GradedHom, pick: usize) -> Option<GeneratorLabel> {
        let b = hom.truncated(3);
        (!b.is_empty()).then(|| *b.label(pick % b.len()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn associativity_where_specified(
            fixture in 0usize..5,
            comps in proptest::collection::vec(0usize..7, 4),
            twists in proptest::collection::vec(-2i64..=2, 4),
            picks in proptest::collection::vec(0usize..1000, 3),
        ) {
            let m = &all_models()[fixture];
            let n = m.component_count();
            let objs: Vec<LagrangianObject> =
                (0..4).map(|i| LagrangianObject::new(comps[i] % n, twists[i])).collect();
            let homs: Vec<GradedHom> =
                (0..3).map(|i| cohomology_hom_basis(m, objs[i], objs[i + 1], 8)).collect();
            let (Some(h), Some(g), Some(f)) =
                (random_label(&homs[0], picks[0]), random_label(&homs[1], picks[1]), random_label(&homs[2], picks[2]))
            else {
                return Ok(());
            };
            let ctx = |a: usize, b: usize, c: usize| ProductContext { objects: [objs[a], objs[b], objs[c]], truncation: 8 };
            let (Ok(gh), Ok(fg)) = (cohomology_product(m, &g, &h, &ctx(0, 1, 2)), cohomology_product(m, &f, &g, &ctx(1, 2, 3)))
            else {
                return Ok(());
            };
            let (Ok(left), Ok(right)) =
                (product_of_sums(m, &[f], &gh, &ctx(0, 2, 3)), product_of_sums(m, &fg, &[h], &ctx(0, 1, 3)))
            else {
                return Ok(());
            };
            prop_assert_eq!(left, right);
        }

        #[test]
        fn unit_is_two_sided(
            fixture in 0usize..5,
            comps in proptest::collection::vec(0usize..7, 2),
            twists in proptest::collection::vec(-2i64..=2, 2),
            pick in 0usize..1000,
        ) {
            let m = &all_models()[fixture];
            let n = m.component_count();
            let (x, y) = (
                LagrangianObject::new(comps[0] % n, twists[0]),
                LagrangianObject::new(comps[1] % n, twists[1]),
            );
            let hom = cohomology_hom_basis(m, x, y, 8);
            if let Some(g) = random_label(&hom, pick) {
                let ux = GeneratorLabel::unit(x.component);
                let uy = GeneratorLabel::unit(y.component);
                let right = ProductContext { objects: [x, x, y], truncation: 8 };
                let left = ProductContext { objects: [x, y, y], truncation: 8 };
                prop_assert_eq!(cohomology_product(m, &g, &ux, &right).unwrap(), vec![g]);
                prop_assert_eq!(cohomology_product(m, &uy, &g, &left).unwrap(), vec![g]);
            }
        }
    }
}
