//! Homogeneous pre-Higgs fields: the spaces `V_r(E)` and the Higgs range.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::klyachko::{Filtration, ToricSheaf};
use crate::lattice::{convex_hull, pairing, HalfSpaceRegion, LatticePolytope, LatticeVec};
use crate::ratlin::{kernel, Mat, Rat, Subspace};

/// A linear map `E → E ⊗ N`: `φ(e_j) = Σ x[i][j][k] e_i ⊗ n_k`, stored flat
/// at `(i·d + j)·q + k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MapTensor {
    d: usize,
    q: usize,
    data: Vec<Rat>,
}

impl MapTensor {
    pub fn zeros(d: usize, q: usize) -> Self {
        MapTensor {
            d,
            q,
            data: vec![Rat::zero(); d * d * q],
        }
    }

    pub fn from_flat(d: usize, q: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != d * d * q {
            return Err(Error::DimensionMismatch {
                expected: d * d * q,
                found: data.len(),
            });
        }
        Ok(MapTensor { d, q, data })
    }

    /// `Σ_k B_k ⊗ n_k` from the `q` endomorphisms `B_k`.
    pub fn from_components(components: &[Mat]) -> Result<Self> {
        let q = components.len();
        let d = components.first().map_or(0, Mat::rows);
        let mut t = MapTensor::zeros(d, q);
        for (k, b) in components.iter().enumerate() {
            if b.rows() != d || b.cols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: b.rows().max(b.cols()),
                });
            }
            for i in 0..d {
                for j in 0..d {
                    t.data[(i * d + j) * q + k] = b[(i, j)].clone();
                }
            }
        }
        Ok(t)
    }

    /// `A ⊗ n`.
    pub fn simple(a: &Mat, n: &[Rat]) -> Result<Self> {
        let comps: Vec<Mat> = n.iter().map(|c| a.scale(c)).collect();
        MapTensor::from_components(&comps)
    }

    pub fn rank_e(&self) -> usize {
        self.d
    }

    pub fn rank_n(&self) -> usize {
        self.q
    }

    pub fn flat(&self) -> &[Rat] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.data[(i * self.d + j) * self.q + k]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &MapTensor) -> Result<MapTensor> {
        if (self.d, self.q) != (other.d, other.q) {
            return Err(Error::DimensionMismatch {
                expected: self.data.len(),
                found: other.data.len(),
            });
        }
        Ok(MapTensor {
            d: self.d,
            q: self.q,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rat) -> MapTensor {
        MapTensor {
            d: self.d,
            q: self.q,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `B_k`, the coefficient of `n_k`.
    pub fn component(&self, k: usize) -> Mat {
        let d = self.d;
        let data = (0..d * d).map(|ij| self.data[ij * self.q + k].clone()).collect();
        Mat::new(d, d, data).expect("square")
    }

    /// `φ_s = (id ⊗ s) ∘ φ`.
    pub fn contract(&self, s: &[Rat]) -> Mat {
        let d = self.d;
        let data = (0..d * d)
            .map(|ij| {
                (0..self.q)
                    .filter(|&k| !s[k].is_zero())
                    .map(|k| &self.data[ij * self.q + k] * &s[k])
                    .sum()
            })
            .collect();
        Mat::new(d, d, data).expect("square")
    }

    /// The same map as a `dim(E⊗N) × dim E` matrix, rows indexed `i·q + k`.
    pub fn to_hom_matrix(&self) -> Mat {
        let (d, q) = (self.d, self.q);
        let mut m = Mat::zeros(d * q, d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..q {
                    m[(i * q + k, j)] = self.get(i, j, k).clone();
                }
            }
        }
        m
    }

    /// Nested `[i][j][k]` arrays.
    pub fn to_nested(&self) -> Vec<Vec<Vec<Rat>>> {
        (0..self.d)
            .map(|i| {
                (0..self.d)
                    .map(|j| (0..self.q).map(|k| self.get(i, j, k).clone()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn from_nested(nested: &[Vec<Vec<Rat>>]) -> Result<Self> {
        let d = nested.len();
        let q = nested.first().and_then(|r| r.first()).map_or(0, Vec::len);
        let mut data = Vec::with_capacity(d * d * q);
        for row in nested {
            if row.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: row.len() });
            }
            for cell in row {
                if cell.len() != q {
                    return Err(Error::DimensionMismatch { expected: q, found: cell.len() });
                }
                data.extend(cell.iter().cloned());
            }
        }
        MapTensor::from_flat(d, q, data)
    }
}

impl Serialize for MapTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_nested().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MapTensor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nested = Vec::<Vec<Vec<Rat>>>::deserialize(d)?;
        MapTensor::from_nested(&nested).map_err(serde::de::Error::custom)
    }
}

/// A subspace of maps `E → E ⊗ N` of one degree, canonical over the flat
/// coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMapSpace {
    pub degree: LatticeVec,
    pub rank_e: usize,
    pub q: usize,
    pub space: Subspace,
}

impl GradedMapSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<MapTensor> {
        self.space
            .basis()
            .row_vecs()
            .into_iter()
            .map(|v| MapTensor::from_flat(self.rank_e, self.q, v).expect("sized"))
            .collect()
    }

    pub fn contains(&self, phi: &MapTensor) -> Result<bool> {
        self.space.contains(phi.flat())
    }

    fn from_maps(degree: LatticeVec, rank_e: usize, q: usize, maps: Vec<MapTensor>) -> Result<Self> {
        let space = Subspace::span(rank_e * rank_e * q, maps.into_iter().map(|m| m.data).collect())?;
        Ok(GradedMapSpace {
            degree,
            rank_e,
            q,
            space,
        })
    }
}

/// An integer vector `s` with `⟨s, ρ⟩ = 1`; `ρ` must be primitive.
pub fn unit_pairing_vector(rho: &LatticeVec) -> Result<LatticeVec> {
    // Running Bézout: g = Σ coeffs[k]·ρ_k.
    let mut g = 0i64;
    let mut coeffs = vec![0i64; rho.rank()];
    for (k, &x) in rho.coords().iter().enumerate() {
        if x == 0 {
            continue;
        }
        let e = g.extended_gcd(&x);
        for c in coeffs.iter_mut().take(k) {
            *c *= e.x;
        }
        coeffs[k] = e.y;
        g = e.gcd;
    }
    if g.abs() != 1 {
        return Err(Error::InvalidFan(format!("ray {rho} is not primitive")));
    }
    Ok(LatticeVec(coeffs.into_iter().map(|c| c * g).collect()))
}

/// A basis of `ρ^⊥ ⊂ M_ℚ`; for `q = 2` the rotation `(−ρ_y, ρ_x)`.
pub fn perp_basis(rho: &LatticeVec) -> Result<Vec<Vec<Rat>>> {
    if rho.rank() == 2 {
        return Ok(vec![vec![Rat::from_int(-rho.0[1]), Rat::from_int(rho.0[0])]]);
    }
    let k = kernel(&Mat::from_rows(rho.rank(), vec![rho.to_rats()])?);
    Ok(k.basis().row_vecs())
}

/// Rows `w^T φ_s v = 0` for every `v` in a basis of `source` and every
/// annihilator row `w` of `target`.
fn push_rows(rows: &mut Vec<Vec<Rat>>, d: usize, q: usize, source: &Subspace, target: &Subspace, s: &[Rat]) {
    if target.is_full() || source.is_zero() {
        return;
    }
    let ann = target.annihilator();
    for v in source.basis().row_vecs() {
        for w in ann.basis().row_vecs() {
            let mut row = vec![Rat::zero(); d * d * q];
            for (i, wi) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    let wv = wi * vj;
                    for (k, sk) in s.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        row[(i * d + j) * q + k] = &wv * sk;
                    }
                }
            }
            rows.push(row);
        }
    }
}

fn solve(d: usize, q: usize, r: &LatticeVec, rows: Vec<Vec<Rat>>) -> Result<GradedMapSpace> {
    let n = d * d * q;
    let space = if rows.is_empty() {
        Subspace::full(n)
    } else {
        kernel(&Mat::from_rows(n, rows)?)
    };
    Ok(GradedMapSpace {
        degree: r.clone(),
        rank_e: d,
        q,
        space,
    })
}

/// `V_r(E)`: maps `φ` with, for every ray, `φ_s(E^ℓ) ⊆ E^{ℓ−⟨r,ρ⟩}` for
/// `s ∈ ρ^⊥` and `φ_s(E^ℓ) ⊆ E^{ℓ−1−⟨r,ρ⟩}` for `⟨s,ρ⟩ = 1`.
pub fn pre_higgs_space(e: &ToricSheaf, r: &LatticeVec) -> Result<GradedMapSpace> {
    let (d, q) = (e.rank(), e.fan().rank());
    let mut rows = Vec::new();
    for (f, rho) in e.filtrations().iter().zip(e.fan().rays()) {
        let m = pairing(r, rho)?;
        let perp = perp_basis(rho)?;
        let unit = unit_pairing_vector(rho)?.to_rats();
        for (l, source) in f.representatives() {
            let weak = f.at(l - m);
            for s in &perp {
                push_rows(&mut rows, d, q, &source, &weak, s);
            }
            push_rows(&mut rows, d, q, &source, &f.at(l - 1 - m), &unit);
        }
    }
    solve(d, q, r, rows)
}

/// Maps `ψ: E → E ⊗ M` of degree `r` (components contracted with `n ∈ N`):
/// `ψ_n(E^ℓ) ⊆ E^{ℓ−⟨r,ρ⟩}` for all `n` and `ψ_ρ(E^ℓ) ⊆ E^{ℓ−⟨r,ρ⟩+1}`.
pub fn pre_higgs_space_cotangent(e: &ToricSheaf, r: &LatticeVec) -> Result<GradedMapSpace> {
    let (d, q) = (e.rank(), e.fan().rank());
    let mut rows = Vec::new();
    for (f, rho) in e.filtrations().iter().zip(e.fan().rays()) {
        let m = pairing(r, rho)?;
        let pivot = rho.coords().iter().position(|&x| x != 0).ok_or(Error::InvalidFan("zero ray".into()))?;
        let others: Vec<Vec<Rat>> = (0..q)
            .filter(|&k| k != pivot)
            .map(|k| LatticeVec::unit(q, k).to_rats())
            .collect();
        let rho_q = rho.to_rats();
        for (l, source) in f.representatives() {
            let weak = f.at(l - m);
            for n in &others {
                push_rows(&mut rows, d, q, &source, &weak, n);
            }
            push_rows(&mut rows, d, q, &source, &f.at(l - m + 1), &rho_q);
        }
    }
    solve(d, q, r, rows)
}

/// Degrees where some pre-Higgs field can be nonzero:
/// `⟨r,ρ⟩ ≥ bot_ρ − top_ρ` for every ray.
pub fn candidate_region(e: &ToricSheaf) -> HalfSpaceRegion {
    let constraints = e
        .filtrations()
        .iter()
        .zip(e.fan().rays())
        .map(|(f, rho): (&Filtration, _)| (rho.clone(), f.bot() - f.top()))
        .collect();
    HalfSpaceRegion::new(e.fan().rank(), constraints)
}

/// Splits `V` (with `E = N`) into its trace-free image and its pure-trace
/// image `id ⊗ v`.
pub fn trace_split(v: &GradedMapSpace) -> Result<(GradedMapSpace, GradedMapSpace)> {
    if v.rank_e != v.q {
        return Err(Error::Unsupported(format!(
            "trace split needs rank E = rank N, got {} and {}",
            v.rank_e, v.q
        )));
    }
    let d = v.rank_e;
    let dr = Rat::from_int(d as i64);
    let (mut free, mut pure) = (Vec::new(), Vec::new());
    for phi in v.basis() {
        let (mut fc, mut pc) = (Vec::with_capacity(d), Vec::with_capacity(d));
        for k in 0..d {
            let b = phi.component(k);
            let t = Mat::identity(d).scale(&(b.trace() / &dr));
            fc.push(b.sub(&t)?);
            pc.push(t);
        }
        free.push(MapTensor::from_components(&fc)?);
        pure.push(MapTensor::from_components(&pc)?);
    }
    Ok((
        GradedMapSpace::from_maps(v.degree.clone(), d, d, free)?,
        GradedMapSpace::from_maps(v.degree.clone(), d, d, pure)?,
    ))
}

/// `V_r` at one admissible degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RangePoint {
    pub space: GradedMapSpace,
    /// Present when the sheaf has rank `q`.
    pub trace_free: Option<GradedMapSpace>,
}

impl RangePoint {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn dim_trace_free(&self) -> Option<usize> {
        self.trace_free.as_ref().map(GradedMapSpace::dim)
    }

    /// The space used by the range: trace-free in trace-free mode.
    pub fn active(&self, trace_free: bool) -> &GradedMapSpace {
        match (&self.trace_free, trace_free) {
            (Some(t), true) => t,
            _ => &self.space,
        }
    }
}

/// Admissible degrees with their spaces and the convex hull of the degrees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HiggsRange {
    pub trace_free: bool,
    pub points: BTreeMap<LatticeVec, RangePoint>,
    /// `None` in rank > 2.
    pub hull: Option<LatticePolytope>,
}

impl HiggsRange {
    /// Dimension per admissible degree in the range's mode.
    pub fn dims(&self) -> BTreeMap<LatticeVec, usize> {
        self.points
            .iter()
            .map(|(r, p)| (r.clone(), p.active(self.trace_free).dim()))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().values().sum()
    }

    pub fn space(&self, r: &LatticeVec) -> Option<&GradedMapSpace> {
        self.points.get(r).map(|p| p.active(self.trace_free))
    }
}

impl Serialize for HiggsRange {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Point<'a> {
            degree: &'a LatticeVec,
            dim: usize,
            #[serde(rename = "dimTraceFree", skip_serializing_if = "Option::is_none")]
            dim_trace_free: Option<usize>,
        }
        let points: Vec<Point> = self
            .points
            .iter()
            .map(|(r, p)| Point {
                degree: r,
                dim: p.dim(),
                dim_trace_free: p.dim_trace_free(),
            })
            .collect();
        let hull: Vec<LatticeVec> = match &self.hull {
            Some(h) => h.vertices.clone(),
            None => self.points.keys().cloned().collect(),
        };
        let mut st = s.serialize_struct("HiggsRange", 3)?;
        st.serialize_field("traceFree", &self.trace_free)?;
        st.serialize_field("hull", &hull)?;
        st.serialize_field("points", &points)?;
        st.end()
    }
}

/// All degrees with a nonzero (trace-free, if requested) pre-Higgs field.
pub fn higgs_range(e: &ToricSheaf, trace_free: bool) -> Result<HiggsRange> {
    let q = e.fan().rank();
    let empty = |hull| HiggsRange {
        trace_free,
        points: BTreeMap::new(),
        hull,
    };
    if e.rank() == 0 {
        return Ok(empty((q <= 2).then(|| LatticePolytope::empty(q))));
    }
    if trace_free && e.rank() != q {
        return Err(Error::Unsupported("trace-free mode needs a sheaf of rank q".into()));
    }
    let candidates = candidate_region(e).lattice_points()?;
    let split = e.rank() == q;
    let solved: Vec<Option<(LatticeVec, RangePoint)>> = candidates
        .par_iter()
        .map(|r| {
            let space = pre_higgs_space(e, r)?;
            let tf = if split { Some(trace_split(&space)?.0) } else { None };
            let point = RangePoint { space, trace_free: tf };
            let keep = point.active(trace_free).dim() > 0;
            Ok(keep.then(|| (r.clone(), point)))
        })
        .collect::<Result<_>>()?;
    let points: BTreeMap<LatticeVec, RangePoint> = solved.into_iter().flatten().collect();
    let keys: Vec<LatticeVec> = points.keys().cloned().collect();
    let hull = if q <= 2 { Some(convex_hull(q, &keys)?) } else { None };
    Ok(HiggsRange {
        trace_free,
        points,
        hull,
    })
}
