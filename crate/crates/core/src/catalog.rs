//! Built-in surfaces, blow-ups and the symmetric 3×3 encoding of
//! trace-free endomorphisms of `N`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::higgs::GenericField;
use crate::klyachko::ToricSheaf;
use crate::lattice::{Fan, LatticeVec};
use crate::prehiggs::{perp_basis, pre_higgs_space, unit_pairing_vector, GradedMapSpace, MapTensor};
use crate::ratlin::{kernel, Mat, Rat, Subspace};
use crate::symlaurent::{LaurentPoly, PolyVar};

/// A catalog surface or a user-supplied fan.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SurfaceId {
    P1,
    P2,
    Hirz(i64),
    P1xP1,
    /// `ℙ²` blown up once (`= H₁`).
    P2p,
    /// `ℙ²` blown up twice.
    P2pp,
    /// `ℙ²` blown up three times (the hexagon).
    P2ppp,
    Custom(Fan),
}

impl SurfaceId {
    pub const CATALOG: [&'static str; 7] = ["P1", "P2", "Hirz:a", "P1xP1", "P2'", "P2''", "P2'''"];

    pub fn fan(&self) -> Result<Fan> {
        make_surface(self)
    }
}

impl FromStr for SurfaceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "P1" => SurfaceId::P1,
            "P2" => SurfaceId::P2,
            "P1xP1" => SurfaceId::P1xP1,
            "P2'" => SurfaceId::P2p,
            "P2''" => SurfaceId::P2pp,
            "P2'''" => SurfaceId::P2ppp,
            other => {
                let a = other
                    .strip_prefix("Hirz:")
                    .ok_or_else(|| Error::Parse(format!("unknown surface {other:?}")))?;
                SurfaceId::Hirz(a.parse().map_err(|_| Error::Parse(format!("bad Hirzebruch parameter {a:?}")))?)
            }
        })
    }
}

impl fmt::Display for SurfaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceId::P1 => f.write_str("P1"),
            SurfaceId::P2 => f.write_str("P2"),
            SurfaceId::Hirz(a) => write!(f, "Hirz:{a}"),
            SurfaceId::P1xP1 => f.write_str("P1xP1"),
            SurfaceId::P2p => f.write_str("P2'"),
            SurfaceId::P2pp => f.write_str("P2''"),
            SurfaceId::P2ppp => f.write_str("P2'''"),
            SurfaceId::Custom(_) => f.write_str("custom"),
        }
    }
}

fn rays(list: &[&[i64]]) -> Vec<LatticeVec> {
    list.iter().map(|r| LatticeVec(r.to_vec())).collect()
}

/// The fan of a surface, checked to be complete and smooth for catalog ids.
pub fn make_surface(id: &SurfaceId) -> Result<Fan> {
    let fan = match id {
        SurfaceId::P1 => return Fan::from_rays(1, rays(&[&[1], &[-1]])),
        SurfaceId::P2 => Fan::from_rays(2, rays(&[&[1, 0], &[0, 1], &[-1, -1]]))?,
        SurfaceId::Hirz(a) => {
            if *a < 1 {
                return Err(Error::InvalidParameter(format!("Hirzebruch parameter must be ≥ 1, got {a}")));
            }
            Fan::from_rays(2, rays(&[&[-1, -a], &[1, 0], &[0, 1], &[0, -1]]))?
        }
        SurfaceId::P1xP1 => Fan::from_rays(2, rays(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]))?,
        SurfaceId::P2p => Fan::from_rays(2, rays(&[&[1, 0], &[0, 1], &[-1, -1], &[0, -1]]))?,
        SurfaceId::P2pp => Fan::from_rays(2, rays(&[&[1, 0], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]]))?,
        SurfaceId::P2ppp => {
            Fan::from_rays(2, rays(&[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]]))?
        }
        SurfaceId::Custom(f) => return Ok(f.clone()),
    };
    if !fan.is_complete() || !fan.is_smooth() {
        return Err(Error::InvalidFan(format!("catalog fan {id} is not smooth and complete")));
    }
    Ok(fan)
}

/// `{"rays": [[x,y],...], "maxCones": optional}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FanSpec {
    pub rays: Vec<LatticeVec>,
    #[serde(rename = "maxCones", default, skip_serializing_if = "Option::is_none")]
    pub max_cones: Option<Vec<Vec<usize>>>,
}

impl FanSpec {
    pub fn to_fan(&self) -> Result<Fan> {
        let rank = self.rays.first().map_or(2, LatticeVec::rank);
        match &self.max_cones {
            Some(cones) => Fan::new(rank, self.rays.clone(), cones.clone()),
            None => Fan::from_rays(rank, self.rays.clone()),
        }
    }
}

/// A catalog id string or an inline fan object.
pub fn resolve_surface(v: &serde_json::Value) -> Result<Fan> {
    match v {
        serde_json::Value::String(s) => make_surface(&s.parse()?),
        other => serde_json::from_value::<FanSpec>(other.clone())
            .map_err(|e| Error::Parse(e.to_string()))?
            .to_fan(),
    }
}

/// Subdivides the maximal cone `(ρ, τ)` by `ρ + τ`. The new ray goes right
/// after `ρ` when `ρ, τ` are neighbours in the ray list, else at the end.
pub fn blow_up(fan: &Fan, cone_index: usize) -> Result<Fan> {
    if fan.rank() != 2 {
        return Err(Error::Unsupported("blow-ups are implemented for surfaces".into()));
    }
    let cone = fan
        .max_cones()
        .get(cone_index)
        .ok_or_else(|| Error::InvalidParameter(format!("no maximal cone {cone_index}")))?;
    let &[i, j] = cone.as_slice() else {
        return Err(Error::InvalidFan("maximal cone is not two-dimensional".into()));
    };
    let (a, b) = (&fan.rays()[i], &fan.rays()[j]);
    let det = a.0[0] * b.0[1] - a.0[1] * b.0[0];
    if det.abs() != 1 {
        return Err(Error::InvalidFan(format!("cone ({a}, {b}) is not smooth")));
    }
    let new = a.add(b);
    let n = fan.rays().len();
    let pos = if j == i + 1 {
        j
    } else if i == j + 1 {
        i
    } else {
        n
    };
    let mut new_rays = fan.rays().to_vec();
    new_rays.insert(pos, new);
    let reindex = |k: usize| if k >= pos { k + 1 } else { k };
    let mut cones = Vec::with_capacity(fan.max_cones().len() + 1);
    for (c, cone) in fan.max_cones().iter().enumerate() {
        if c == cone_index {
            cones.push(vec![reindex(i), pos]);
            cones.push(vec![pos, reindex(j)]);
        } else {
            cones.push(cone.iter().map(|&k| reindex(k)).collect());
        }
    }
    Fan::new(2, new_rays, cones)
}

/// An element `g ∈ GL₂(ℤ)` with `g(rays of a) = rays of b`, if any.
pub fn fan_isomorphism(a: &Fan, b: &Fan) -> Option<[[i64; 2]; 2]> {
    if a.rank() != 2 || b.rank() != 2 || a.rays().len() != b.rays().len() {
        return None;
    }
    let (r0, r1) = a.max_cones().first().map(|c| (&a.rays()[c[0]], &a.rays()[c[1]]))?;
    let det = r0.0[0] * r1.0[1] - r0.0[1] * r1.0[0];
    if det.abs() != 1 {
        return None;
    }
    // Inverse of the column matrix [r0 r1].
    let inv = [[r1.0[1] * det, -r1.0[0] * det], [-r0.0[1] * det, r0.0[0] * det]];
    let targets: Vec<(&LatticeVec, &LatticeVec)> = b
        .max_cones()
        .iter()
        .flat_map(|c| {
            let (x, y) = (&b.rays()[c[0]], &b.rays()[c[1]]);
            [(x, y), (y, x)]
        })
        .collect();
    let mut want: Vec<&LatticeVec> = b.rays().iter().collect();
    want.sort();
    for (s0, s1) in targets {
        let cols = [[s0.0[0], s1.0[0]], [s0.0[1], s1.0[1]]];
        let g = [
            [
                cols[0][0] * inv[0][0] + cols[0][1] * inv[1][0],
                cols[0][0] * inv[0][1] + cols[0][1] * inv[1][1],
            ],
            [
                cols[1][0] * inv[0][0] + cols[1][1] * inv[1][0],
                cols[1][0] * inv[0][1] + cols[1][1] * inv[1][1],
            ],
        ];
        let mut image: Vec<LatticeVec> = a
            .rays()
            .iter()
            .map(|r| LatticeVec(vec![g[0][0] * r.0[0] + g[0][1] * r.0[1], g[1][0] * r.0[0] + g[1][1] * r.0[1]]))
            .collect();
        image.sort();
        if image.iter().eq(want.iter().copied()) {
            return Some(g);
        }
    }
    None
}

/// Which symmetric presentation: `ℙ²` or the Hirzebruch surface `H_a`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    P2,
    Hirz(i64),
}

/// The kind of facet class.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassKind {
    /// `φ(ρ) ∈ span(ρ)`.
    I,
    /// `φ(E) ⊆ span(ρ) ⊆ ker φ`.
    II,
}

/// Endomorphisms of `N = ℤ³/ℤk` as 3×3 matrices with zero diagonal,
/// converted to 2×2 form by `project · A · embed`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymEncoding {
    pub family: Family,
    pub embed: Mat,
    pub project: Mat,
    /// Spans the kernel of `project`.
    pub kernel: Vec<Rat>,
}

impl SymEncoding {
    pub fn new(family: Family) -> Self {
        let a = match family {
            Family::P2 => 1,
            Family::Hirz(a) => a,
        };
        SymEncoding {
            family,
            embed: Mat::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]),
            project: Mat::from_i64(&[&[-1, 1, 0], &[-a, 0, 1]]),
            kernel: [1, 1, a].iter().map(|&x| Rat::from_int(x)).collect(),
        }
    }

    fn a(&self) -> i64 {
        match self.family {
            Family::P2 => 1,
            Family::Hirz(a) => a,
        }
    }

    /// `A₀, A₁, A₂` (the Hirzebruch variants `A₀(a), A₁(a), A₂`).
    pub fn generators(&self) -> [Mat; 3] {
        let a = self.a();
        [
            Mat::from_i64(&[&[0, a, -1], &[0, 0, 0], &[0, 0, 0]]),
            Mat::from_i64(&[&[0, 0, 0], &[-a, 0, 1], &[0, 0, 0]]),
            Mat::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[1, -1, 0]]),
        ]
    }

    /// `x·A₀ + y·A₁ + z·A₂`.
    pub fn combo(&self, c: [i64; 3]) -> Mat {
        let g = self.generators();
        (0..3).fold(Mat::zeros(3, 3), |acc, i| acc.add(&g[i].scale(&Rat::from_int(c[i]))).expect("3×3"))
    }

    /// Ray labels of the presentation: `ρ₀ = (−1,−a), ρ₁ = (1,0), ρ₂ = (0,1)`.
    pub fn rays(&self) -> [LatticeVec; 3] {
        [
            LatticeVec(vec![-1, -self.a()]),
            LatticeVec(vec![1, 0]),
            LatticeVec(vec![0, 1]),
        ]
    }

    pub fn to2x2(&self, m: &Mat) -> Mat {
        self.project.mul(m).and_then(|x| x.mul(&self.embed)).expect("3×3 input")
    }

    /// The unique zero-diagonal lift of a 2×2 matrix.
    pub fn to_symmetric3(&self, b: &Mat) -> Mat {
        let mut m = self.embed.mul(b).and_then(|x| x.mul(&self.project)).expect("2×2 input");
        let w: Vec<Rat> = (0..3).map(|i| -(&m[(i, i)] / &self.kernel[i])).collect();
        for i in 0..3 {
            for j in 0..3 {
                let add = &self.kernel[i] * &w[j];
                m[(i, j)] += add;
            }
        }
        m
    }

    /// `A ⊗ ρ` as a map `N → N ⊗ N`.
    pub fn encode(&self, m: &Mat, rho: &LatticeVec) -> MapTensor {
        MapTensor::simple(&self.to2x2(m), &rho.to_rats()).expect("2×2")
    }

    /// `id ⊗ ρ`.
    pub fn encode_identity(rho: &LatticeVec) -> MapTensor {
        MapTensor::simple(&Mat::identity(2), &rho.to_rats()).expect("2×2")
    }

    /// Basis of class (i) or (ii) for ray label `ν` (3 = `(0,−1)` shares
    /// the classes of `ρ₂`), as 3×3 matrices.
    pub fn class_basis(&self, nu: usize, kind: ClassKind) -> Result<Vec<Mat>> {
        let a = self.a();
        let a2 = a * a;
        let c = |x: [i64; 3]| self.combo(x);
        let nu = match nu {
            0..=2 => nu,
            3 if matches!(self.family, Family::Hirz(_)) => 2,
            other => return Err(Error::UnknownRay(other)),
        };
        Ok(match (nu, kind) {
            (0, ClassKind::I) => vec![c([1, 0, 0]), c([0, 1, -a2])],
            (1, ClassKind::I) => vec![c([1, 0, -a2]), c([0, 1, 0])],
            (2, ClassKind::I) => vec![c([1, -1, 0]), c([0, 0, 1])],
            (k, ClassKind::II) => {
                let mut x = [0; 3];
                x[k] = 1;
                vec![c(x)]
            }
            _ => unreachable!(),
        })
    }
}

/// The `(i)_ρ` / `(ii)_ρ` subspaces of `End(ℚ²)` (row-major flattening).
pub fn class_space(rho: &LatticeVec, kind: ClassKind) -> Subspace {
    let rho_q = rho.to_rats();
    let perp = perp_basis(rho).expect("rank 2").remove(0);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    // w·φ·v = Σ w_i φ_ij v_j
    let row = |w: &[Rat], v: &[Rat]| -> Vec<Rat> {
        (0..2).flat_map(|i| (0..2).map(move |j| &w[i] * &v[j])).collect()
    };
    rows.push(row(&perp, &rho_q));
    if kind == ClassKind::II {
        rows.push(row(&[Rat::one(), Rat::zero()], &rho_q));
        rows.push(row(&[Rat::zero(), Rat::one()], &rho_q));
        for e in [[Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]] {
            rows.push(row(&perp, &e));
        }
    }
    kernel(&Mat::from_rows(4, rows).expect("4 columns"))
}

/// The space of maps `N → N ⊗ N` at degree `r` cut out by the facet rules:
/// with `c = ⟨r, −ρ⟩`, for `⟨s,ρ⟩ = 1`: `c ≥ 3 ⇒ φ_s = 0`, `c = 2 ⇒ (ii)_ρ`,
/// `c = 1 ⇒ (i)_ρ`; for `s ∈ ρ^⊥` the thresholds drop by one.
pub fn facet_rule_space(fan: &Fan, r: &LatticeVec) -> Result<GradedMapSpace> {
    let q = 2usize;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for rho in fan.rays() {
        let c = -crate::lattice::pairing(r, rho)?;
        let unit = unit_pairing_vector(rho)?.to_rats();
        let perp = perp_basis(rho)?.remove(0);
        for (s, shift) in [(unit, 0), (perp, 1)] {
            let level = c + shift;
            let constraint = if level >= 3 {
                Some(Subspace::zero(4))
            } else if level == 2 {
                Some(class_space(rho, ClassKind::II))
            } else if level == 1 {
                Some(class_space(rho, ClassKind::I))
            } else {
                None
            };
            let Some(space) = constraint else { continue };
            // φ_s lies in `space`: annihilator rows applied to the contraction.
            for w in space.annihilator().basis().row_vecs() {
                let mut row = vec![Rat::zero(); 8];
                for ij in 0..4 {
                    for (k, sk) in s.iter().enumerate() {
                        row[ij * q + k] = &w[ij] * sk;
                    }
                }
                rows.push(row);
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(8)
    } else {
        kernel(&Mat::from_rows(8, rows)?)
    };
    Ok(GradedMapSpace {
        degree: r.clone(),
        rank_e: 2,
        q,
        space,
    })
}

/// One named element of the presentation basis of trace-free fields on `ℙ²`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NamedBasisElement {
    /// `c00`, `d12`, `e1`, ...
    pub name: String,
    pub degree: LatticeVec,
    /// `(A-coefficients, ray label)` summands.
    pub summands: Vec<([i64; 3], usize)>,
}

impl NamedBasisElement {
    pub fn map(&self, enc: &SymEncoding) -> MapTensor {
        let rays = enc.rays();
        self.summands
            .iter()
            .map(|(c, nu)| enc.encode(&enc.combo(*c), &rays[*nu]))
            .reduce(|a, b| a.add(&b).expect("same shape"))
            .expect("nonempty")
    }

    /// Index inside its degree: `c` and `e0` are 0, `d` and `e1` are 1.
    pub fn var(&self) -> PolyVar {
        let index = match self.name.as_bytes() {
            [b'd', ..] => 1,
            [b'e', k] => (k - b'0') as usize,
            _ => 0,
        };
        PolyVar::new(self.degree.clone(), index)
    }
}

/// The eighteen named trace-free basis elements of `ℙ²`; `c_{jk}`, `d_{jk}`
/// sit at degree `(1−j, 1−k)`.
pub fn p2_named_basis() -> Vec<NamedBasisElement> {
    let el = |name: &str, deg: [i64; 2], summands: &[([i64; 3], usize)]| NamedBasisElement {
        name: name.to_string(),
        degree: LatticeVec(deg.to_vec()),
        summands: summands.to_vec(),
    };
    vec![
        el("c00", [1, 1], &[([1, 0, 0], 0)]),
        el("c30", [-2, 1], &[([0, 1, 0], 1)]),
        el("c03", [1, -2], &[([0, 0, 1], 2)]),
        el("c01", [1, 0], &[([1, 0, 0], 2)]),
        el("d01", [1, 0], &[([1, -1, 1], 0)]),
        el("c10", [0, 1], &[([1, 0, 0], 1)]),
        el("d10", [0, 1], &[([1, 1, -1], 0)]),
        el("c20", [-1, 1], &[([0, 1, 0], 0)]),
        el("d20", [-1, 1], &[([1, 1, -1], 1)]),
        el("c21", [-1, 0], &[([0, 1, 0], 2)]),
        el("d21", [-1, 0], &[([-1, 1, 1], 1)]),
        el("c12", [0, -1], &[([0, 0, 1], 1)]),
        el("d12", [0, -1], &[([-1, 1, 1], 2)]),
        el("c02", [1, -1], &[([0, 0, 1], 0)]),
        el("d02", [1, -1], &[([1, -1, 1], 2)]),
        el("e0", [0, 0], &[([0, 0, 1], 1), ([0, 1, 0], 2)]),
        el("e1", [0, 0], &[([1, 0, 0], 2), ([0, 0, 1], 0)]),
        el("e2", [0, 0], &[([0, 1, 0], 0), ([1, 0, 0], 1)]),
    ]
}

/// A generic trace-free field on `ℙ²` in the named basis; unknowns are the
/// named elements' [`NamedBasisElement::var`].
pub fn p2_named_generic_field() -> Result<(GenericField, BTreeMap<PolyVar, String>)> {
    let fan = make_surface(&SurfaceId::P2)?;
    let t = ToricSheaf::tangent(&fan)?;
    let enc = SymEncoding::new(Family::P2);
    let mut basis = p2_named_basis();
    basis.sort_by_key(|x| x.var());
    let names = basis.iter().map(|b| (b.var(), b.name.clone())).collect();
    let pairs = basis.iter().map(|b| (b.var(), b.map(&enc))).collect();
    Ok((GenericField::from_elements(&t, pairs), names))
}

/// Named variable with its coordinates in the solver basis of its degree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VariableMapEntry {
    pub name: String,
    pub degree: LatticeVec,
    /// `element = Σ coords[i] · (solver basis element i)`.
    #[serde(rename = "solverCoordinates")]
    pub solver_coordinates: Vec<Rat>,
}

/// Coordinates of `v` in an RREF basis: its entries at the pivot columns.
fn rref_coordinates(space: &Subspace, v: &[Rat]) -> Result<Vec<Rat>> {
    if !space.contains(v)? {
        return Err(Error::InvalidTerm("element outside the space".into()));
    }
    Ok(space
        .basis()
        .row_vecs()
        .iter()
        .map(|row| {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            v[p].clone()
        })
        .collect())
}

/// Relates the named trace-free basis of `ℙ²` to the solver's `c[r][i]`.
pub fn named_variable_map(id: &SurfaceId) -> Result<Vec<VariableMapEntry>> {
    if *id != SurfaceId::P2 {
        return Err(Error::Unsupported(format!("named variables exist for P2 only, not {id}")));
    }
    let fan = make_surface(id)?;
    let t = ToricSheaf::tangent(&fan)?;
    let enc = SymEncoding::new(Family::P2);
    let mut out = Vec::new();
    for b in p2_named_basis() {
        let space = crate::prehiggs::trace_split(&pre_higgs_space(&t, &b.degree)?)?.0;
        out.push(VariableMapEntry {
            name: b.name.clone(),
            degree: b.degree.clone(),
            solver_coordinates: rref_coordinates(&space.space, b.map(&enc).flat())?,
        });
    }
    Ok(out)
}

/// Turns an assignment of the named unknowns into one of the solver unknowns
/// `c[r][i]`; every named unknown at a degree present in `vars` must be given.
pub fn translate_witness(
    vars: &[PolyVar],
    named: &BTreeMap<String, LaurentPoly>,
    params: usize,
) -> Result<BTreeMap<PolyVar, LaurentPoly>> {
    let map = named_variable_map(&SurfaceId::P2)?;
    let mut out: BTreeMap<PolyVar, LaurentPoly> =
        vars.iter().map(|v| (v.clone(), LaurentPoly::zero(params))).collect();
    for entry in &map {
        if !vars.iter().any(|v| v.degree == entry.degree) {
            continue;
        }
        let value = named
            .get(&entry.name)
            .ok_or_else(|| Error::UncoveredVariable(entry.name.clone()))?;
        for (i, c) in entry.solver_coordinates.iter().enumerate() {
            let key = PolyVar::new(entry.degree.clone(), i);
            let slot = out
                .get_mut(&key)
                .ok_or_else(|| Error::UncoveredVariable(key.name()))?;
            *slot = slot.add(&value.scale(c))?;
        }
    }
    Ok(out)
}
