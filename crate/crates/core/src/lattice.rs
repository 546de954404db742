//! Lattices, fans, half-space regions and lattice polygons.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratlin::{Mat, Rat};

/// A vector of `N` or `M`, depending on context.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVec(pub Vec<i64>);

impl LatticeVec {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVec(coords)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVec(vec![0; rank])
    }

    pub fn unit(rank: usize, k: usize) -> Self {
        let mut v = vec![0; rank];
        v[k] = 1;
        LatticeVec(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd() == 1
    }

    /// Divides out the content; the zero vector is returned unchanged.
    pub fn primitive(&self) -> LatticeVec {
        let g = self.gcd();
        if g == 0 {
            return self.clone();
        }
        LatticeVec(self.0.iter().map(|x| x / g).collect())
    }

    pub fn add(&self, other: &LatticeVec) -> LatticeVec {
        LatticeVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVec) -> LatticeVec {
        LatticeVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticeVec {
        LatticeVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: i64) -> LatticeVec {
        LatticeVec(self.0.iter().map(|a| a * c).collect())
    }

    pub fn to_rats(&self) -> Vec<Rat> {
        self.0.iter().map(|&x| Rat::from_int(x)).collect()
    }
}

impl fmt::Debug for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<&[i64]> for LatticeVec {
    fn from(v: &[i64]) -> Self {
        LatticeVec(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVec {
    fn from(v: [i64; N]) -> Self {
        LatticeVec(v.to_vec())
    }
}

/// `⟨r, n⟩` for `r ∈ M`, `n ∈ N`.
pub fn pairing(r: &LatticeVec, n: &LatticeVec) -> Result<i64> {
    if r.rank() != n.rank() {
        return Err(Error::RankMismatch(r.rank(), n.rank()));
    }
    Ok(r.0.iter().zip(&n.0).map(|(a, b)| a * b).sum())
}

fn cross(a: &LatticeVec, b: &LatticeVec) -> i64 {
    a.0[0] * b.0[1] - a.0[1] * b.0[0]
}

/// Integer determinant of a square integer matrix given by rows.
fn int_det(rows: &[&LatticeVec]) -> i64 {
    let n = rows.len();
    let data = rows.iter().flat_map(|r| r.to_rats()).collect();
    Mat::new(n, n, data)
        .and_then(|m| m.determinant())
        .ok()
        .and_then(|d| d.to_i64())
        .unwrap_or(0)
}

/// A rational polyhedral fan given by its rays and maximal cones.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVec>,
    #[serde(rename = "maxCones")]
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(rank: usize, rays: Vec<LatticeVec>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if r.rank() != rank {
                return Err(Error::RankMismatch(rank, r.rank()));
            }
            if !r.is_primitive() {
                return Err(Error::InvalidFan(format!("ray {r} is not primitive")));
            }
            if rays[..i].contains(r) {
                return Err(Error::InvalidFan(format!("duplicate ray {r}")));
            }
        }
        for cone in &max_cones {
            if let Some(&bad) = cone.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::UnknownRay(bad));
            }
        }
        Ok(Fan {
            rank,
            rays,
            max_cones,
        })
    }

    /// A fan given by rays only: for rank 2 the maximal cones are the
    /// angularly consecutive pairs (the fan is assumed complete), for rank 1
    /// each ray is its own cone.
    pub fn from_rays(rank: usize, rays: Vec<LatticeVec>) -> Result<Self> {
        let cones = match rank {
            1 => (0..rays.len()).map(|i| vec![i]).collect(),
            2 => {
                let order = ccw_order(&rays);
                let n = order.len();
                if n < 3 {
                    return Err(Error::InvalidFan("a complete surface fan needs at least three rays".into()));
                }
                (0..n).map(|i| vec![order[i], order[(i + 1) % n]]).collect()
            }
            _ => {
                return Err(Error::Unsupported(
                    "maximal cones must be given explicitly in rank > 2".into(),
                ))
            }
        };
        Fan::new(rank, rays, cones)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// True iff the rays positively span `ℝ^q`.
    pub fn is_complete(&self) -> bool {
        let region = HalfSpaceRegion::new(
            self.rank,
            self.rays.iter().map(|r| (r.clone(), 0)).collect(),
        );
        !self.rays.is_empty() && region.is_bounded()
    }

    /// Every maximal cone is generated by a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|cone| {
            cone.len() == self.rank && {
                let rows: Vec<&LatticeVec> = cone.iter().map(|&i| &self.rays[i]).collect();
                int_det(&rows).abs() == 1
            }
        })
    }

    /// Rays in counterclockwise order (rank 2 only).
    pub fn ccw_rays(&self) -> Vec<usize> {
        ccw_order(&self.rays)
    }
}

/// Angular order of nonzero plane vectors starting at the positive x-axis.
fn ccw_order(rays: &[LatticeVec]) -> Vec<usize> {
    let half = |v: &LatticeVec| -> u8 {
        let (x, y) = (v.0[0], v.0[1]);
        if y > 0 || (y == 0 && x > 0) {
            0
        } else {
            1
        }
    };
    let mut idx: Vec<usize> = (0..rays.len()).collect();
    idx.sort_by(|&a, &b| {
        let (ra, rb) = (&rays[a], &rays[b]);
        half(ra)
            .cmp(&half(rb))
            .then_with(|| 0.cmp(&cross(ra, rb)))
    });
    idx
}

/// `{r : ⟨r, normal⟩ ≥ bound for every constraint}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HalfSpaceRegion {
    pub rank: usize,
    pub constraints: Vec<(LatticeVec, i64)>,
}

/// Result of projecting a rational system of inequalities onto one axis.
#[derive(Clone, Debug, PartialEq, Eq)]
enum AxisProjection {
    Infeasible,
    Bounds { lo: Option<Rat>, hi: Option<Rat> },
}

/// Fourier–Motzkin projection of `{x : a·x ≥ b}` onto coordinate `axis`.
fn project_to_axis(rank: usize, rows: &[(Vec<Rat>, Rat)], axis: usize) -> AxisProjection {
    let mut current: Vec<(Vec<Rat>, Rat)> = rows.to_vec();
    for var in (0..rank).filter(|&v| v != axis) {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for row in current {
            if row.0[var].is_zero() {
                rest.push(row);
            } else if row.0[var].is_negative() {
                neg.push(row);
            } else {
                pos.push(row);
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let (cp, cn) = (pa[var].clone(), -&na[var]);
                let a: Vec<Rat> = pa.iter().zip(na).map(|(x, y)| &cn * x + &cp * y).collect();
                let b = &cn * pb + &cp * nb;
                rest.push((a, b));
            }
        }
        current = normalize_rows(rest);
    }
    let (mut lo, mut hi): (Option<Rat>, Option<Rat>) = (None, None);
    for (a, b) in current {
        let c = &a[axis];
        if c.is_zero() {
            if b > Rat::zero() {
                return AxisProjection::Infeasible;
            }
        } else if c.is_negative() {
            let v = &b / c;
            hi = Some(match hi {
                Some(h) if h < v => h,
                _ => v,
            });
        } else {
            let v = &b / c;
            lo = Some(match lo {
                Some(l) if l > v => l,
                _ => v,
            });
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return AxisProjection::Infeasible;
        }
    }
    AxisProjection::Bounds { lo, hi }
}

fn normalize_rows(rows: Vec<(Vec<Rat>, Rat)>) -> Vec<(Vec<Rat>, Rat)> {
    let mut out: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for (a, b) in rows {
        let scale = a.iter().map(Rat::abs).max().unwrap_or_else(Rat::zero);
        let (a, b) = if scale.is_zero() {
            (a, b)
        } else {
            (a.iter().map(|x| x / &scale).collect(), &b / &scale)
        };
        if !out.iter().any(|(oa, ob)| *oa == a && *ob == b) {
            out.push((a, b));
        }
    }
    out
}

fn floor(r: &Rat) -> i64 {
    use num_integer::Integer as _;
    r.numer().div_floor(r.denom()).try_into().expect("bound fits in i64")
}

fn ceil(r: &Rat) -> i64 {
    -floor(&-r)
}

impl HalfSpaceRegion {
    pub fn new(rank: usize, constraints: Vec<(LatticeVec, i64)>) -> Self {
        HalfSpaceRegion { rank, constraints }
    }

    fn rat_rows(&self, homogeneous: bool) -> Vec<(Vec<Rat>, Rat)> {
        self.constraints
            .iter()
            .map(|(n, b)| {
                let b = if homogeneous { Rat::zero() } else { Rat::from_int(*b) };
                (n.to_rats(), b)
            })
            .collect()
    }

    pub fn contains(&self, r: &LatticeVec) -> bool {
        self.constraints
            .iter()
            .all(|(n, b)| pairing(r, n).is_ok_and(|v| v >= *b))
    }

    /// Bounded iff the recession cone `{v : ⟨v, normal⟩ ≥ 0}` is `{0}`.
    pub fn is_bounded(&self) -> bool {
        let rows = self.rat_rows(true);
        (0..self.rank).all(|k| match project_to_axis(self.rank, &rows, k) {
            AxisProjection::Infeasible => true,
            AxisProjection::Bounds { lo, hi } => lo.is_some() && hi.is_some(),
        })
    }

    /// Integer bounding box, or `None` if the region is empty.
    pub fn bounding_box(&self) -> Result<Option<Vec<(i64, i64)>>> {
        if !self.is_bounded() {
            return Err(Error::UnboundedRegion);
        }
        let rows = self.rat_rows(false);
        let mut bbox = Vec::with_capacity(self.rank);
        for k in 0..self.rank {
            match project_to_axis(self.rank, &rows, k) {
                AxisProjection::Infeasible => return Ok(None),
                AxisProjection::Bounds { lo: Some(l), hi: Some(h) } => {
                    let (l, h) = (ceil(&l), floor(&h));
                    if l > h {
                        return Ok(None);
                    }
                    bbox.push((l, h));
                }
                AxisProjection::Bounds { .. } => return Err(Error::UnboundedRegion),
            }
        }
        Ok(Some(bbox))
    }

    /// All lattice points of the region in lexicographic order.
    pub fn lattice_points(&self) -> Result<Vec<LatticeVec>> {
        let Some(bbox) = self.bounding_box()? else {
            return Ok(Vec::new());
        };
        Ok(box_points(&bbox)
            .into_iter()
            .filter(|p| self.contains(p))
            .collect())
    }
}

/// Lattice points of an integer box in lexicographic order.
pub fn box_points(bbox: &[(i64, i64)]) -> Vec<LatticeVec> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in bbox {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(LatticeVec).collect()
}

/// A lattice polytope given by its vertices (rank ≤ 2 in practice).
///
/// In rank 2 the vertices start at the lexicographically smallest one and run
/// counterclockwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LatticePolytope {
    #[serde(default = "default_rank", skip_serializing)]
    pub rank: usize,
    pub vertices: Vec<LatticeVec>,
}

fn default_rank() -> usize {
    2
}

impl LatticePolytope {
    pub fn empty(rank: usize) -> Self {
        LatticePolytope {
            rank,
            vertices: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Affine dimension (−1 for the empty polytope).
    pub fn dim(&self) -> i32 {
        match self.vertices.len() {
            0 => -1,
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    /// Reparses a deserialized polytope: fixes the rank and canonicalizes.
    pub fn canonicalize(self) -> Result<Self> {
        let rank = self.vertices.first().map_or(2, LatticeVec::rank);
        convex_hull(rank, &self.vertices)
    }

    pub fn contains(&self, p: &LatticeVec) -> bool {
        let v = &self.vertices;
        match v.len() {
            0 => false,
            1 => &v[0] == p,
            2 if self.rank == 1 => v[0].0[0] <= p.0[0] && p.0[0] <= v[1].0[0],
            2 => {
                let d = v[1].sub(&v[0]);
                let w = p.sub(&v[0]);
                cross(&d, &w) == 0 && {
                    let t: i64 = d.0.iter().zip(&w.0).map(|(a, b)| a * b).sum();
                    let dd: i64 = d.0.iter().map(|a| a * a).sum();
                    (0..=dd).contains(&t)
                }
            }
            n => (0..n).all(|i| {
                let a = &v[i];
                let b = &v[(i + 1) % n];
                cross(&b.sub(a), &p.sub(a)) >= 0
            }),
        }
    }

    /// All lattice points of the polytope, lexicographically ordered.
    pub fn lattice_points(&self) -> Vec<LatticeVec> {
        if self.vertices.is_empty() {
            return Vec::new();
        }
        let bbox: Vec<(i64, i64)> = (0..self.rank)
            .map(|k| {
                let xs = self.vertices.iter().map(|v| v.0[k]);
                (xs.clone().min().unwrap(), xs.max().unwrap())
            })
            .collect();
        box_points(&bbox)
            .into_iter()
            .filter(|p| self.contains(p))
            .collect()
    }
}

/// Convex hull of lattice points in rank 1 or 2.
pub fn convex_hull(rank: usize, points: &[LatticeVec]) -> Result<LatticePolytope> {
    if let Some(p) = points.iter().find(|p| p.rank() != rank) {
        return Err(Error::RankMismatch(rank, p.rank()));
    }
    let mut pts: Vec<LatticeVec> = points.to_vec();
    pts.sort();
    pts.dedup();
    let vertices = match rank {
        1 => match (pts.first(), pts.last()) {
            (Some(a), Some(b)) if a == b => vec![a.clone()],
            (Some(a), Some(b)) => vec![a.clone(), b.clone()],
            _ => Vec::new(),
        },
        2 => hull2(&pts),
        _ => {
            return Err(Error::Unsupported(format!(
                "convex hulls are only implemented in rank ≤ 2, not {rank}"
            )))
        }
    };
    Ok(LatticePolytope { rank, vertices })
}

/// Andrew's monotone chain; input sorted and deduplicated. Collinear points
/// are dropped, so the output is exactly the vertex set.
fn hull2(pts: &[LatticeVec]) -> Vec<LatticeVec> {
    if pts.len() <= 2 {
        return pts.to_vec();
    }
    let turn = |o: &LatticeVec, a: &LatticeVec, b: &LatticeVec| cross(&a.sub(o), &b.sub(o));
    let mut lower: Vec<LatticeVec> = Vec::new();
    for p in pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<LatticeVec> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

/// A face of a plane lattice polytope with a primitive inner normal `a`
/// such that the face is exactly where `⟨·, a⟩` is minimal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Face {
    pub face: LatticePolytope,
    pub normal: LatticeVec,
}

fn rot_left(d: &LatticeVec) -> LatticeVec {
    LatticeVec(vec![-d.0[1], d.0[0]])
}

/// Vertices and edges of a rank-2 polytope.
pub fn faces_2d(p: &LatticePolytope) -> Result<Vec<Face>> {
    if p.rank != 2 {
        return Err(Error::Unsupported("faces are only computed in rank 2".into()));
    }
    let v = &p.vertices;
    let point = |x: &LatticeVec| LatticePolytope {
        rank: 2,
        vertices: vec![x.clone()],
    };
    match v.len() {
        0 => Err(Error::EmptyPolytope),
        1 => Ok(vec![Face {
            face: point(&v[0]),
            normal: LatticeVec::zero(2),
        }]),
        2 => {
            let d = v[1].sub(&v[0]).primitive();
            let n = rot_left(&d);
            Ok(vec![
                Face { face: point(&v[0]), normal: d.clone() },
                Face { face: point(&v[1]), normal: d.neg() },
                Face { face: p.clone(), normal: n.clone() },
                Face { face: p.clone(), normal: n.neg() },
            ])
        }
        n => {
            // For a counterclockwise polygon the inner normal of edge v_i v_{i+1}
            // is the left rotation of its direction.
            let edge_normals: Vec<LatticeVec> = (0..n)
                .map(|i| rot_left(&v[(i + 1) % n].sub(&v[i]).primitive()))
                .collect();
            let mut faces = Vec::with_capacity(2 * n);
            for i in 0..n {
                let prev = &edge_normals[(i + n - 1) % n];
                faces.push(Face {
                    face: point(&v[i]),
                    normal: prev.add(&edge_normals[i]).primitive(),
                });
            }
            for i in 0..n {
                let seg = convex_hull(2, &[v[i].clone(), v[(i + 1) % n].clone()])?;
                faces.push(Face {
                    face: seg,
                    normal: edge_normals[i].clone(),
                });
            }
            Ok(faces)
        }
    }
}
