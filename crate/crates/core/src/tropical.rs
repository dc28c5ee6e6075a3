//! Weighted lattice points, their regular subdivision, the dual tropical curve and the
//! moment polytope of the toric mirror.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::linalg::{q, Q};

pub type Point = [i64; 2];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TropicalError {
    #[error("duplicate lattice point {0:?}")]
    DuplicatePoint(Point),
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("points do not affinely span the plane")]
    NotSpanning,
    #[error("maximal degeneration violated: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    MaximalDegenerationViolated(Vec<Violation>),
    #[error("vertex of cell {0:?} is not integral")]
    NonIntegralVertex([Point; 3]),
    #[error("wall relation across edge {0:?} has no integral solution")]
    DegenerateWall([Point; 2]),
    #[error("{0:?} is not a bounded edge of the tropical curve")]
    UnknownEdge([Point; 2]),
    #[error("delta override {delta:?} on edge {edge:?} violates delta_ba - delta_ab = 1 + d_ab = {expected}")]
    DeltaConstraint { edge: [Point; 2], delta: [i64; 2], expected: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// A cell whose normalized area is not 1.
    NotUnimodular { cell: [Point; 3], area: i64 },
    /// A point of A that is not a vertex of any cell.
    PointNotVertex { point: Point },
    /// A lower face containing more than three lifted points.
    NonSimplicialFace { points: Vec<Point> },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotUnimodular { cell, area } => {
                write!(f, "cell {cell:?} has lattice area {area}")
            }
            Violation::PointNotVertex { point } => write!(f, "point {point:?} is not a vertex"),
            Violation::NonSimplicialFace { points } => {
                write!(f, "lower face through {points:?} is not a triangle")
            }
        }
    }
}

fn cross(a: Point, b: Point) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn dot(a: Point, b: Point) -> i64 {
    a[0] * b[0] + a[1] * b[1]
}

/// The input set A with integral weights, stored in lexicographic order of points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedPoints {
    points: Vec<Point>,
    weights: Vec<i64>,
}

impl WeightedPoints {
    pub fn new(mut monomials: Vec<(Point, i64)>) -> Result<Self, TropicalError> {
        monomials.sort();
        for w in monomials.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(TropicalError::DuplicatePoint(w[0].0));
            }
        }
        if monomials.len() < 3 {
            return Err(TropicalError::TooFewPoints(monomials.len()));
        }
        let p0 = monomials[0].0;
        let spanning = monomials.iter().any(|&(p, _)| {
            monomials.iter().any(|&(r, _)| cross(sub(p, p0), sub(r, p0)) != 0)
        });
        if !spanning {
            return Err(TropicalError::NotSpanning);
        }
        let (points, weights) = monomials.into_iter().unzip();
        Ok(WeightedPoints { points, weights })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, id: usize) -> Point {
        self.points[id]
    }

    pub fn weight(&self, id: usize) -> i64 {
        self.weights[id]
    }

    pub fn id_of(&self, p: Point) -> Option<usize> {
        self.points.binary_search(&p).ok()
    }

    fn lifted(&self, id: usize) -> [i64; 3] {
        let p = self.points[id];
        [p[0], p[1], self.weights[id]]
    }
}

/// max over A of <alpha, xi> - rho(alpha).
pub fn legendre_value(wp: &WeightedPoints, xi: &[Q; 2]) -> Q {
    (0..wp.len())
        .map(|i| {
            let p = wp.point(i);
            q(p[0]) * &xi[0] + q(p[1]) * &xi[1] - q(wp.weight(i))
        })
        .max()
        .unwrap_or_else(Q::zero)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionEdge {
    /// Point ids, increasing.
    pub ends: [usize; 2],
    /// One cell for a boundary edge, two for an interior edge.
    pub cells: Vec<usize>,
}

impl SubdivisionEdge {
    pub fn is_interior(&self) -> bool {
        self.cells.len() == 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subdivision {
    /// Point ids of each triangle, increasing.
    pub cells: Vec<[usize; 3]>,
    pub edges: Vec<SubdivisionEdge>,
}

impl Subdivision {
    pub fn cell_containing(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        let mut key = [a, b, c];
        key.sort();
        self.cells.iter().position(|cell| *cell == key)
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<&SubdivisionEdge> {
        let key = if a < b { [a, b] } else { [b, a] };
        self.edges.iter().find(|e| e.ends == key)
    }
}

fn normalized_area(wp: &WeightedPoints, cell: &[usize; 3]) -> i64 {
    let [a, b, c] = cell.map(|i| wp.point(i));
    cross(sub(b, a), sub(c, a)).abs()
}

/// Twice the Euclidean area of the convex hull.
pub fn hull_area(points: &[Point]) -> i64 {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return 0;
    }
    let mut hull: Vec<Point> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(sub(hull[hull.len() - 1], hull[hull.len() - 2]), sub(p, hull[hull.len() - 2]))
                    <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    (0..hull.len()).map(|i| cross(hull[i], hull[(i + 1) % hull.len()])).sum::<i64>().abs()
}

/// Lower-hull subdivision of the lifted points, validated for maximal degeneration.
pub fn regular_subdivision(wp: &WeightedPoints) -> Result<Subdivision, TropicalError> {
    let n = wp.len();
    let mut cells = Vec::new();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (wp.lifted(i), wp.lifted(j), wp.lifted(k));
                let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
                let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
                let mut normal =
                    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
                if normal[2] == 0 {
                    continue;
                }
                if normal[2] < 0 {
                    normal = normal.map(|x| -x);
                }
                let mut lower = true;
                let mut coplanar = vec![i, j, k];
                for m in 0..n {
                    if m == i || m == j || m == k {
                        continue;
                    }
                    let p = wp.lifted(m);
                    let s: i64 = (0..3).map(|t| normal[t] * (p[t] - a[t])).sum();
                    match s.cmp(&0) {
                        Ordering::Less => {
                            lower = false;
                            break;
                        }
                        Ordering::Equal => coplanar.push(m),
                        Ordering::Greater => {}
                    }
                }
                if !lower {
                    continue;
                }
                if coplanar.len() > 3 {
                    coplanar.sort();
                    let v = Violation::NonSimplicialFace {
                        points: coplanar.iter().map(|&m| wp.point(m)).collect(),
                    };
                    if !violations.contains(&v) {
                        violations.push(v);
                    }
                    continue;
                }
                cells.push([i, j, k]);
            }
        }
    }
    for cell in &cells {
        let area = normalized_area(wp, cell);
        if area != 1 {
            violations.push(Violation::NotUnimodular { cell: cell.map(|i| wp.point(i)), area });
        }
    }
    for m in 0..n {
        let on_face = cells.iter().any(|c| c.contains(&m))
            || violations.iter().any(|v| match v {
                Violation::NonSimplicialFace { points } => points.contains(&wp.point(m)),
                _ => false,
            });
        if !on_face {
            violations.push(Violation::PointNotVertex { point: wp.point(m) });
        }
    }
    if !violations.is_empty() {
        return Err(TropicalError::MaximalDegenerationViolated(violations));
    }
    let mut edge_map: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
    for (ci, c) in cells.iter().enumerate() {
        for (a, b) in [(c[0], c[1]), (c[0], c[2]), (c[1], c[2])] {
            edge_map.entry([a, b]).or_default().push(ci);
        }
    }
    let edges = edge_map.into_iter().map(|(ends, cells)| SubdivisionEdge { ends, cells }).collect();
    Ok(Subdivision { cells, edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Leg {
    Edge(usize),
    Ray(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TropicalVertex {
    pub cell: usize,
    /// Integral for integral weights and unimodular cells.
    pub position: [i64; 2],
    /// The three incident legs.
    pub legs: Vec<Leg>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedEdge {
    /// Separated components (point ids), increasing.
    pub components: [usize; 2],
    /// Vertices dual to the two cells containing the subdivision edge.
    pub ends: [usize; 2],
    pub lattice_length: i64,
    /// (d_ab, d_ba) for components (a, b).
    pub degrees: [i64; 2],
    /// (delta_ab, delta_ba).
    pub deltas: [i64; 2],
}

impl BoundedEdge {
    /// Degree d_{from, other} seen from component `from`.
    pub fn degree_from(&self, from: usize) -> i64 {
        if from == self.components[0] {
            self.degrees[0]
        } else {
            self.degrees[1]
        }
    }

    /// delta_{to, from} - delta_{from, to}.
    pub fn delta_jump_from(&self, from: usize) -> i64 {
        let [d0, d1] = self.deltas;
        if from == self.components[0] {
            d1 - d0
        } else {
            d0 - d1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ray {
    pub components: [usize; 2],
    pub vertex: usize,
    pub direction: [i64; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub point: usize,
    /// Counterclockwise boundary legs; for unbounded components the first and last are rays.
    pub boundary: Vec<Leg>,
    /// `joints[i]` is the vertex between `boundary[i]` and `boundary[i + 1]` (cyclically if bounded).
    pub joints: Vec<usize>,
    pub bounded: bool,
}

impl Component {
    pub fn position(&self, leg: Leg) -> Option<usize> {
        self.boundary.iter().position(|&l| l == leg)
    }

    /// (x-end, y-end) vertices of a leg along this boundary; rays have only one finite end.
    pub fn leg_ends(&self, leg: Leg) -> Option<(Option<usize>, Option<usize>)> {
        let i = self.position(leg)?;
        let m = self.boundary.len();
        let before = if i > 0 {
            Some(self.joints[i - 1])
        } else if self.bounded {
            Some(self.joints[m - 1])
        } else {
            None
        };
        let after = if i + 1 < m || self.bounded { Some(self.joints[i % self.joints.len()]) } else { None };
        Some((before, after))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TropicalCurve {
    pub vertices: Vec<TropicalVertex>,
    pub bounded_edges: Vec<BoundedEdge>,
    pub rays: Vec<Ray>,
    pub components: Vec<Component>,
}

impl TropicalCurve {
    pub fn leg_components(&self, leg: Leg) -> [usize; 2] {
        match leg {
            Leg::Edge(e) => self.bounded_edges[e].components,
            Leg::Ray(r) => self.rays[r].components,
        }
    }

    /// The leg separating two components, if they are adjacent.
    pub fn shared_leg(&self, a: usize, b: usize) -> Option<Leg> {
        let key = if a < b { [a, b] } else { [b, a] };
        if let Some(e) = self.bounded_edges.iter().position(|e| e.components == key) {
            return Some(Leg::Edge(e));
        }
        self.rays.iter().position(|r| r.components == key).map(Leg::Ray)
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        match self.shared_leg(a, b) {
            Some(Leg::Edge(e)) => Some(e),
            _ => None,
        }
    }

    /// Vertices of a leg (one for a ray, two for a bounded edge).
    pub fn leg_vertices(&self, leg: Leg) -> Vec<usize> {
        match leg {
            Leg::Edge(e) => self.bounded_edges[e].ends.to_vec(),
            Leg::Ray(r) => vec![self.rays[r].vertex],
        }
    }
}

fn vertex_position(wp: &WeightedPoints, cell: &[usize; 3]) -> Result<[i64; 2], TropicalError> {
    let [a, b, c] = *cell;
    let (pa, pb, pc) = (wp.point(a), wp.point(b), wp.point(c));
    let u = sub(pb, pa);
    let v = sub(pc, pa);
    let ru = wp.weight(b) - wp.weight(a);
    let rv = wp.weight(c) - wp.weight(a);
    let det = cross(u, v);
    let x_num = ru * v[1] - rv * u[1];
    let y_num = u[0] * rv - v[0] * ru;
    if det == 0 || x_num % det != 0 || y_num % det != 0 {
        return Err(TropicalError::NonIntegralVertex(cell.map(|i| wp.point(i))));
    }
    Ok([x_num / det, y_num / det])
}

fn lifted_vertex(wp: &WeightedPoints, cell: &[usize; 3], pos: [i64; 2]) -> [i64; 3] {
    let a = cell[0];
    [pos[0], pos[1], dot(wp.point(a), pos) - wp.weight(a)]
}

fn gcd3(v: [i64; 3]) -> i64 {
    v[0].gcd(&v[1]).gcd(&v[2])
}

fn facet_normal(p: Point) -> [i64; 3] {
    [-p[0], -p[1], 1]
}

/// Solves n_g + n_h + a n_a + b n_b = 0 and returns (a, b).
pub fn wall_degrees(a: Point, b: Point, g: Point, h: Point) -> Option<(i64, i64)> {
    let (na, nb, ng, nh) = (facet_normal(a), facet_normal(b), facet_normal(g), facet_normal(h));
    let rhs = [-(ng[0] + nh[0]), -(ng[1] + nh[1]), -(ng[2] + nh[2])];
    for (r, s) in [(0, 1), (0, 2), (1, 2)] {
        let det = na[r] * nb[s] - na[s] * nb[r];
        if det == 0 {
            continue;
        }
        let x = rhs[r] * nb[s] - rhs[s] * nb[r];
        let y = na[r] * rhs[s] - na[s] * rhs[r];
        if x % det != 0 || y % det != 0 {
            return None;
        }
        let (x, y) = (x / det, y / det);
        let ok = (0..3).all(|t| x * na[t] + y * nb[t] == rhs[t]);
        return ok.then_some((x, y));
    }
    None
}

/// (delta_ab, delta_ba) with the lexicographically smaller side set to zero.
pub fn delta_convention(d_ab: i64) -> (i64, i64) {
    (0, 1 + d_ab)
}

fn angle_cmp(a: Point, b: Point) -> Ordering {
    let half = |p: Point| if p[1] > 0 || (p[1] == 0 && p[0] > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

/// An explicit value of (delta_ab, delta_ba) for the bounded edge between two points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaOverride {
    pub edge: [Point; 2],
    pub delta: [i64; 2],
}

pub fn dual_tropical_curve(
    wp: &WeightedPoints,
    sub_div: &Subdivision,
    overrides: &[DeltaOverride],
) -> Result<TropicalCurve, TropicalError> {
    let mut vertices = Vec::with_capacity(sub_div.cells.len());
    for (ci, cell) in sub_div.cells.iter().enumerate() {
        vertices.push(TropicalVertex { cell: ci, position: vertex_position(wp, cell)?, legs: Vec::new() });
    }
    let third = |cell: usize, e: [usize; 2]| -> usize {
        *sub_div.cells[cell].iter().find(|&&p| p != e[0] && p != e[1]).expect("triangle")
    };
    let mut bounded_edges = Vec::new();
    let mut rays = Vec::new();
    for edge in &sub_div.edges {
        let [a, b] = edge.ends;
        if edge.is_interior() {
            let (c0, c1) = (edge.cells[0], edge.cells[1]);
            let l0 = lifted_vertex(wp, &sub_div.cells[c0], vertices[c0].position);
            let l1 = lifted_vertex(wp, &sub_div.cells[c1], vertices[c1].position);
            let n = gcd3([l1[0] - l0[0], l1[1] - l0[1], l1[2] - l0[2]]);
            let (g, h) = (third(c0, edge.ends), third(c1, edge.ends));
            let (pa, pb) = (wp.point(a), wp.point(b));
            let (d_ab, d_ba) = wall_degrees(pa, pb, wp.point(g), wp.point(h))
                .ok_or(TropicalError::DegenerateWall([pa, pb]))?;
            let (x, y) = delta_convention(d_ab);
            let e = bounded_edges.len();
            vertices[c0].legs.push(Leg::Edge(e));
            vertices[c1].legs.push(Leg::Edge(e));
            bounded_edges.push(BoundedEdge {
                components: [a, b],
                ends: [c0, c1],
                lattice_length: n,
                degrees: [d_ab, d_ba],
                deltas: [x, y],
            });
        } else {
            let c = edge.cells[0];
            let g = third(c, edge.ends);
            let along = sub(wp.point(b), wp.point(a));
            let k = along[0].gcd(&along[1]);
            let mut dir = [-along[1] / k, along[0] / k];
            if dot(sub(wp.point(g), wp.point(a)), dir) > 0 {
                dir = dir.map(|x| -x);
            }
            vertices[c].legs.push(Leg::Ray(rays.len()));
            rays.push(Ray { components: [a, b], vertex: c, direction: dir });
        }
    }
    for ov in overrides {
        let (Some(p), Some(r)) = (wp.id_of(ov.edge[0]), wp.id_of(ov.edge[1])) else {
            return Err(TropicalError::UnknownEdge(ov.edge));
        };
        let key = if p < r { [p, r] } else { [r, p] };
        let Some(e) = bounded_edges.iter_mut().find(|e| e.components == key) else {
            return Err(TropicalError::UnknownEdge(ov.edge));
        };
        let d_pr = e.degree_from(p);
        if ov.delta[1] - ov.delta[0] != 1 + d_pr {
            return Err(TropicalError::DeltaConstraint { edge: ov.edge, delta: ov.delta, expected: 1 + d_pr });
        }
        e.deltas = if p < r { ov.delta } else { [ov.delta[1], ov.delta[0]] };
    }

    let leg_of = |a: usize, b: usize| -> Leg {
        let key = if a < b { [a, b] } else { [b, a] };
        if let Some(e) = bounded_edges.iter().position(|e| e.components == key) {
            Leg::Edge(e)
        } else {
            Leg::Ray(rays.iter().position(|r| r.components == key).expect("edge of the subdivision"))
        }
    };
    let mut components = Vec::with_capacity(wp.len());
    for alpha in 0..wp.len() {
        let pa = wp.point(alpha);
        let mut nbrs: Vec<usize> = sub_div
            .edges
            .iter()
            .filter_map(|e| match e.ends {
                [x, y] if x == alpha => Some(y),
                [x, y] if y == alpha => Some(x),
                _ => None,
            })
            .collect();
        nbrs.sort_by(|&x, &y| angle_cmp(sub(wp.point(x), pa), sub(wp.point(y), pa)));
        let m = nbrs.len();
        let gap = (0..m).find(|&i| {
            let (b, c) = (nbrs[i], nbrs[(i + 1) % m]);
            cross(sub(wp.point(b), pa), sub(wp.point(c), pa)) <= 0
                || sub_div.cell_containing(alpha, b, c).is_none()
        });
        let start = gap.map_or(0, |g| (g + 1) % m);
        let order: Vec<usize> = (0..m).map(|i| nbrs[(start + i) % m]).collect();
        let boundary: Vec<Leg> = order.iter().map(|&b| leg_of(alpha, b)).collect();
        let njoints = if gap.is_some() { m - 1 } else { m };
        let joints = (0..njoints)
            .map(|i| {
                sub_div
                    .cell_containing(alpha, order[i], order[(i + 1) % m])
                    .expect("consecutive neighbours span a cell")
            })
            .collect();
        components.push(Component { point: alpha, boundary, joints, bounded: gap.is_none() });
    }
    Ok(TropicalCurve { vertices, bounded_edges, rays, components })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Facet {
    pub point: usize,
    pub normal: [i64; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolytopeVertex {
    pub position: [i64; 3],
    /// Point ids of the three facets through the vertex.
    pub facets: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolytopeEdge {
    pub facets: [usize; 2],
    /// Both ends for a bounded edge, one for an unbounded edge.
    pub vertices: Vec<usize>,
    /// Primitive direction of an unbounded edge.
    pub direction: Option<[i64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentPolytope {
    pub facets: Vec<Facet>,
    pub vertices: Vec<PolytopeVertex>,
    pub edges: Vec<PolytopeEdge>,
}

pub fn moment_polytope(wp: &WeightedPoints, sub_div: &Subdivision, curve: &TropicalCurve) -> MomentPolytope {
    let facets = (0..wp.len()).map(|i| Facet { point: i, normal: facet_normal(wp.point(i)) }).collect();
    let vertices = curve
        .vertices
        .iter()
        .map(|v| {
            let cell = sub_div.cells[v.cell];
            PolytopeVertex { position: lifted_vertex(wp, &cell, v.position), facets: cell }
        })
        .collect();
    let mut edges = Vec::new();
    for e in &curve.bounded_edges {
        edges.push(PolytopeEdge { facets: e.components, vertices: e.ends.to_vec(), direction: None });
    }
    for r in &curve.rays {
        let a = wp.point(r.components[0]);
        let dir = [r.direction[0], r.direction[1], dot(a, r.direction)];
        edges.push(PolytopeEdge { facets: r.components, vertices: vec![r.vertex], direction: Some(dir) });
    }
    MomentPolytope { facets, vertices, edges }
}

impl MomentPolytope {
    /// Every vertex lies on three facets whose normals form a basis of Z^3.
    pub fn is_smooth(&self) -> bool {
        self.vertices.iter().all(|v| {
            let [a, b, c] = v.facets.map(|f| self.facets[f].normal);
            let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]);
            det.abs() == 1
        })
    }

    /// Lattice length of a bounded edge.
    pub fn edge_lattice_length(&self, edge: usize) -> Option<i64> {
        let e = &self.edges[edge];
        if e.vertices.len() != 2 {
            return None;
        }
        let (p, r) = (self.vertices[e.vertices[0]].position, self.vertices[e.vertices[1]].position);
        Some(gcd3([r[0] - p[0], r[1] - p[1], r[2] - p[2]]))
    }
}

/// Everything derived from (A, rho) that both sides consume.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TropicalModel {
    pub points: WeightedPoints,
    pub subdivision: Subdivision,
    pub curve: TropicalCurve,
    pub polytope: MomentPolytope,
}

impl TropicalModel {
    pub fn build(points: WeightedPoints, overrides: &[DeltaOverride]) -> Result<Self, TropicalError> {
        let subdivision = regular_subdivision(&points)?;
        let curve = dual_tropical_curve(&points, &subdivision, overrides)?;
        let polytope = moment_polytope(&points, &subdivision, &curve);
        Ok(TropicalModel { points, subdivision, curve, polytope })
    }

    pub fn from_monomials(monomials: &[(Point, i64)]) -> Result<Self, TropicalError> {
        Self::build(WeightedPoints::new(monomials.to_vec())?, &[])
    }

    pub fn component_count(&self) -> usize {
        self.points.len()
    }

    /// The third point of the cell dual to `vertex` other than `a` and `b`.
    pub fn third_point(&self, vertex: usize, a: usize, b: usize) -> Option<usize> {
        let cell = self.subdivision.cells[self.curve.vertices[vertex].cell];
        cell.iter().copied().find(|&p| p != a && p != b)
    }

    /// Normalized cell areas sum to the normalized area of Conv(A).
    pub fn tiles_hull(&self) -> bool {
        let total: i64 = self.subdivision.cells.iter().map(|c| normalized_area(&self.points, c)).sum();
        total == hull_area(self.points.points())
    }
}

/// Named fixtures used throughout the tests.
pub mod fixtures {
    use super::Point;

    pub fn pants() -> Vec<(Point, i64)> {
        vec![([0, 0], 0), ([1, 0], 0), ([0, 1], 0)]
    }

    pub fn square() -> Vec<(Point, i64)> {
        vec![([0, 0], 0), ([1, 0], 0), ([0, 1], 0), ([1, 1], 1)]
    }

    pub fn tall_square() -> Vec<(Point, i64)> {
        vec![([0, 0], 0), ([1, 0], 0), ([0, 1], 0), ([1, 1], 2)]
    }

    /// Pentagon around an interior point: one bounded component.
    pub fn pentagon() -> Vec<(Point, i64)> {
        vec![([0, 0], 0), ([1, 0], 1), ([1, 1], 1), ([0, 1], 1), ([-1, 0], 1), ([0, -1], 1)]
    }

    /// Hexagon around an interior point.
    pub fn hexagon() -> Vec<(Point, i64)> {
        vec![([0, 0], 0), ([1, 0], 1), ([1, 1], 1), ([0, 1], 1), ([-1, 0], 1), ([-1, -1], 1), ([0, -1], 1)]
    }

    /// Interior point of the standard triangle of size 3 scaled down: local projective plane.
    pub fn local_p2() -> Vec<(Point, i64)> {
        vec![([0, 0], 0), ([1, 0], 1), ([0, 1], 1), ([-1, -1], 1)]
    }
}
