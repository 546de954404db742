//! Higgs fields as graded sums: integrability, Higgs polytopes, the
//! integrability system and Hitchin data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::klyachko::ToricSheaf;
use crate::lattice::{convex_hull, LatticePolytope, LatticeVec};
use crate::prehiggs::{higgs_range, pre_higgs_space, MapTensor};
use crate::ratlin::{Mat, Rat};
use crate::symlaurent::{substitute_witness, LaurentMatrix, LaurentPoly, PolySystem, PolyVar};

/// `Φ = Σ_r φ^r ⊗ χ^r` with every `φ^r ∈ V_r(E)` and nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HiggsField {
    sheaf: ToricSheaf,
    terms: BTreeMap<LatticeVec, MapTensor>,
}

impl HiggsField {
    /// Validates every term against `V_r`; zero terms are dropped.
    pub fn new(sheaf: &ToricSheaf, terms: impl IntoIterator<Item = (LatticeVec, MapTensor)>) -> Result<Self> {
        let (d, q) = (sheaf.rank(), sheaf.fan().rank());
        let mut out: BTreeMap<LatticeVec, MapTensor> = BTreeMap::new();
        for (r, phi) in terms {
            if r.rank() != q || phi.rank_e() != d || phi.rank_n() != q {
                return Err(Error::InvalidTerm(r.to_string()));
            }
            let merged = match out.remove(&r) {
                Some(prev) => prev.add(&phi)?,
                None => phi,
            };
            out.insert(r, merged);
        }
        out.retain(|_, phi| !phi.is_zero());
        for (r, phi) in &out {
            if !pre_higgs_space(sheaf, r)?.contains(phi)? {
                return Err(Error::InvalidTerm(r.to_string()));
            }
        }
        Ok(HiggsField {
            sheaf: sheaf.clone(),
            terms: out,
        })
    }

    pub fn zero(sheaf: &ToricSheaf) -> Self {
        HiggsField {
            sheaf: sheaf.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn sheaf(&self) -> &ToricSheaf {
        &self.sheaf
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVec, MapTensor> {
        &self.terms
    }

    pub fn support(&self) -> Vec<LatticeVec> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `Φ_s = Σ_r φ^r_s ⊗ χ^r` in `End(E) ⊗ ℚ[M]`.
pub fn contract_field(phi: &HiggsField, s: &[Rat]) -> Result<LaurentMatrix> {
    let (d, q) = (phi.sheaf.rank(), phi.sheaf.fan().rank());
    if s.len() != q {
        return Err(Error::RankMismatch(q, s.len()));
    }
    let mut out = LaurentMatrix::zero(q, d);
    for (r, t) in &phi.terms {
        out = out.add(&LaurentMatrix::from_mat(&t.contract(s), r.coords()))?;
    }
    Ok(out)
}

/// Verdict of the `Φ ∧ Φ = 0` check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Integrability {
    pub integrable: bool,
    /// First nonzero graded component of the first failing commutator.
    pub certificate: Option<Certificate>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub pair: (usize, usize),
    pub degree: LatticeVec,
    pub component: Mat,
}

/// `[Φ_{e_a}, Φ_{e_b}] = 0` for every pair of standard basis vectors of `M`.
pub fn is_integrable(phi: &HiggsField) -> Result<Integrability> {
    let q = phi.sheaf.fan().rank();
    let contractions = (0..q)
        .map(|a| contract_field(phi, &LatticeVec::unit(q, a).to_rats()))
        .collect::<Result<Vec<_>>>()?;
    for a in 0..q {
        for b in a + 1..q {
            let c = contractions[a].commutator(&contractions[b])?;
            if let Some(u) = c.support().into_iter().next() {
                return Ok(Integrability {
                    integrable: false,
                    certificate: Some(Certificate {
                        pair: (a, b),
                        component: c.component(&u),
                        degree: LatticeVec(u),
                    }),
                });
            }
        }
    }
    Ok(Integrability {
        integrable: true,
        certificate: None,
    })
}

/// `[Φ_s, Φ_t] = 0` for one pair.
pub fn commute_at(phi: &HiggsField, s: &[Rat], t: &[Rat]) -> Result<bool> {
    Ok(contract_field(phi, s)?.commutator(&contract_field(phi, t)?)?.is_zero())
}

/// `∇(Φ)`, the convex hull of the support.
pub fn higgs_polytope(phi: &HiggsField) -> Result<LatticePolytope> {
    convex_hull(phi.sheaf.fan().rank(), &phi.support())
}

/// `Φ|_P`: the terms whose degree lies in `P`.
pub fn restrict_to_face(phi: &HiggsField, face: &LatticePolytope) -> HiggsField {
    HiggsField {
        sheaf: phi.sheaf.clone(),
        terms: phi
            .terms
            .iter()
            .filter(|(r, _)| face.contains(r))
            .map(|(r, t)| (r.clone(), t.clone()))
            .collect(),
    }
}

/// `Φ = Σ c[r][i] φ^{r,i} χ^r` over a basis of each admissible `V_r`.
#[derive(Clone, Debug)]
pub struct GenericField {
    pub sheaf: ToricSheaf,
    pub vars: Vec<PolyVar>,
    pub elements: Vec<MapTensor>,
}

impl GenericField {
    /// Every admissible degree (in `filter`, if given) contributes one
    /// unknown per basis element.
    pub fn new(e: &ToricSheaf, trace_free: bool, filter: Option<&LatticePolytope>) -> Result<Self> {
        let range = higgs_range(e, trace_free)?;
        let (mut vars, mut elements) = (Vec::new(), Vec::new());
        for (r, point) in &range.points {
            if filter.is_some_and(|p| !p.contains(r)) {
                continue;
            }
            for (i, phi) in point.active(trace_free).basis().into_iter().enumerate() {
                vars.push(PolyVar::new(r.clone(), i));
                elements.push(phi);
            }
        }
        Ok(GenericField {
            sheaf: e.clone(),
            vars,
            elements,
        })
    }

    /// From explicit `(unknown, element)` pairs, e.g. a presentation basis.
    pub fn from_elements(e: &ToricSheaf, pairs: Vec<(PolyVar, MapTensor)>) -> Self {
        let (vars, elements) = pairs.into_iter().unzip();
        GenericField {
            sheaf: e.clone(),
            vars,
            elements,
        }
    }

    /// Coefficients of `[Φ_{e_a}, Φ_{e_b}]` per total degree and entry,
    /// normalized to primitive integer form with exact duplicates removed.
    pub fn system(&self) -> Result<PolySystem> {
        let q = self.sheaf.fan().rank();
        let n = self.vars.len();
        let contracted: Vec<Vec<Mat>> = self
            .elements
            .iter()
            .map(|phi| (0..q).map(|a| phi.contract(&LatticeVec::unit(q, a).to_rats())).collect())
            .collect();
        let mut buckets: BTreeMap<(usize, usize, Vec<i64>, usize, usize), LaurentPoly> = BTreeMap::new();
        for a in 0..q {
            for b in a + 1..q {
                for u in 0..n {
                    for v in u..n {
                        let mut m = contracted[u][a].commutator(&contracted[v][b])?;
                        if u != v {
                            m = m.add(&contracted[v][a].commutator(&contracted[u][b])?)?;
                        }
                        if m.is_zero() {
                            continue;
                        }
                        let deg = self.vars[u].degree.add(&self.vars[v].degree).0;
                        let mut exp = vec![0i64; n];
                        exp[u] += 1;
                        exp[v] += 1;
                        let d = m.rows();
                        for i in 0..d {
                            for j in 0..d {
                                if m[(i, j)].is_zero() {
                                    continue;
                                }
                                buckets
                                    .entry((a, b, deg.clone(), i, j))
                                    .or_insert_with(|| LaurentPoly::zero(n))
                                    .add_term(exp.clone(), m[(i, j)].clone());
                            }
                        }
                    }
                }
            }
        }
        let mut polys: Vec<LaurentPoly> = Vec::new();
        for p in buckets.into_values() {
            let p = p.normalized();
            if !p.is_zero() && !polys.contains(&p) {
                polys.push(p);
            }
        }
        PolySystem::new(self.vars.clone(), polys)
    }

    /// The field at a rational point of the unknowns.
    pub fn specialize(&self, values: &BTreeMap<PolyVar, Rat>) -> Result<HiggsField> {
        let mut terms: Vec<(LatticeVec, MapTensor)> = Vec::new();
        for (v, phi) in self.vars.iter().zip(&self.elements) {
            let c = values.get(v).ok_or_else(|| Error::UncoveredVariable(v.name()))?;
            if !c.is_zero() {
                terms.push((v.degree.clone(), phi.scale(c)));
            }
        }
        HiggsField::new(&self.sheaf, terms)
    }
}

/// The quadratic system cutting out integrable fields.
pub fn generate_integrability_system(
    e: &ToricSheaf,
    trace_free: bool,
    filter: Option<&LatticePolytope>,
) -> Result<PolySystem> {
    GenericField::new(e, trace_free, filter)?.system()
}

/// True iff the parametrized family solves the system identically.
pub fn check_witness_family(sys: &PolySystem, assignment: &BTreeMap<PolyVar, LaurentPoly>) -> Result<bool> {
    substitute_witness(sys, assignment)
}

/// Characteristic data of `Φ_y = Σ_k y_k Φ_{e_k}` as polynomials in
/// `(χ, y)`: exponents are `[r_1..r_q, y_1..y_q]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HitchinData {
    pub det: LaurentPoly,
    pub trace: LaurentPoly,
}

pub fn hitchin_data(phi: &HiggsField) -> Result<HitchinData> {
    let (d, q) = (phi.sheaf.rank(), phi.sheaf.fan().rank());
    if d != 2 || q != 2 {
        return Err(Error::Unsupported(format!(
            "Hitchin data needs a rank-2 sheaf on a surface, got rank {d} in dimension {q}"
        )));
    }
    let mut entries = vec![LaurentPoly::zero(2 * q); d * d];
    for (r, t) in &phi.terms {
        for k in 0..q {
            let b = t.component(k);
            let mut exp = r.0.clone();
            exp.extend((0..q).map(|j| i64::from(j == k)));
            for (idx, c) in b.entries().iter().enumerate() {
                entries[idx].add_term(exp.clone(), c.clone());
            }
        }
    }
    let m = LaurentMatrix::from_entries(2 * q, d, entries)?;
    Ok(HitchinData {
        det: m.det(),
        trace: m.trace(),
    })
}

/// A rational point of the torus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusPoint(Vec<Rat>);

impl TorusPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if let Some(k) = coords.iter().position(Rat::is_zero) {
            return Err(Error::ZeroCoordinate(k));
        }
        Ok(TorusPoint(coords))
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }
}

/// Minimal polynomial of `Φ_s(t)`, coefficients from the constant term up.
pub fn min_poly_at_point(phi: &HiggsField, s: &[Rat], t: &TorusPoint) -> Result<Vec<Rat>> {
    contract_field(phi, s)?.eval(t.coords())?.minimal_polynomial()
}

/// A field file term: `{"degree": [..], "map": [i][j][k]}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FieldTerm {
    pub degree: LatticeVec,
    pub map: MapTensor,
}

/// `{"surface": id or inline fan, "sheaf": optional DSL, "terms": [...]}`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FieldFile {
    pub surface: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sheaf: Option<String>,
    pub terms: Vec<FieldTerm>,
}

impl FieldFile {
    pub fn from_field(surface: serde_json::Value, sheaf: Option<String>, phi: &HiggsField) -> Self {
        FieldFile {
            surface,
            sheaf,
            terms: phi
                .terms
                .iter()
                .map(|(r, m)| FieldTerm {
                    degree: r.clone(),
                    map: m.clone(),
                })
                .collect(),
        }
    }

    pub fn to_field(&self, sheaf: &ToricSheaf) -> Result<HiggsField> {
        HiggsField::new(sheaf, self.terms.iter().map(|t| (t.degree.clone(), t.map.clone())))
    }
}
