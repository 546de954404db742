#![allow(dead_code)]

use std::collections::BTreeMap;

use cohiggs::catalog::{make_surface, p2_named_basis, Family, SurfaceId, SymEncoding};
use cohiggs::higgs::HiggsField;
use cohiggs::klyachko::ToricSheaf;
use cohiggs::prehiggs::MapTensor;
use cohiggs::symlaurent::LaurentPoly;
use cohiggs::{Fan, LatticeVec, Rat};

pub fn lv(x: &[i64]) -> LatticeVec {
    LatticeVec(x.to_vec())
}

pub fn fan(id: &str) -> Fan {
    make_surface(&id.parse::<SurfaceId>().unwrap()).unwrap()
}

pub fn tangent(id: &str) -> ToricSheaf {
    ToricSheaf::tangent(&fan(id)).unwrap()
}

/// Named basis elements of `ℙ²` by name.
pub fn named_elements() -> BTreeMap<String, (LatticeVec, MapTensor)> {
    let enc = SymEncoding::new(Family::P2);
    p2_named_basis()
        .into_iter()
        .map(|b| (b.name.clone(), (b.degree.clone(), b.map(&enc))))
        .collect()
}

/// `Σ value · element` over named elements, as a field on `sheaf`.
pub fn named_field(sheaf: &ToricSheaf, values: &[(&str, Rat)]) -> cohiggs::Result<HiggsField> {
    let els = named_elements();
    let terms = values.iter().map(|(n, c)| {
        let (d, m) = &els[*n];
        (d.clone(), m.scale(c))
    });
    HiggsField::new(sheaf, terms)
}

/// `A ⊗ ρ_ν` sums in the symmetric encoding, all at one degree.
pub fn sym_term(summands: &[([i64; 3], usize)]) -> MapTensor {
    let enc = SymEncoding::new(Family::P2);
    let rays = enc.rays();
    summands
        .iter()
        .map(|(c, nu)| enc.encode(&enc.combo(*c), &rays[*nu]))
        .reduce(|a, b| a.add(&b).unwrap())
        .unwrap()
}

/// Parameter `k` of a rank-`n` polynomial ring.
pub fn param(n: usize, k: usize) -> LaurentPoly {
    LaurentPoly::var(n, k)
}

pub fn prod(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a.mul(b).unwrap()
}

pub fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

/// The rank ≤ 1 family of a `2×3` matrix `[top; bottom]`: top = μ·v, bottom = ν·v,
/// over parameters `(μ, ν, v₀, v₁, v₂)`.
pub fn rank_one_family(top: [&str; 3], bottom: [&str; 3]) -> BTreeMap<String, LaurentPoly> {
    let n = 5;
    let mut out = BTreeMap::new();
    for k in 0..3 {
        out.insert(top[k].to_string(), prod(&param(n, 0), &param(n, 2 + k)));
        out.insert(bottom[k].to_string(), prod(&param(n, 1), &param(n, 2 + k)));
    }
    out
}

/// Facet name, endpoints, top and bottom rows.
pub type Facet = (&'static str, [i64; 2], [i64; 2], [&'static str; 3], [&'static str; 3]);

/// The three facets of `CH(ℙ²)`: endpoints and the rank ≤ 1 matrix
/// layout of the binomial ideal on that facet.
pub fn p2_facets() -> Vec<Facet> {
    vec![
        ("I0", [-2, 1], [1, -2], ["c03", "d12", "c21"], ["c12", "d21", "c30"]),
        ("I1", [1, 1], [1, -2], ["c00", "d01", "c02"], ["c01", "d02", "c03"]),
        ("I2", [1, 1], [-2, 1], ["c10", "d20", "c30"], ["c00", "d10", "c20"]),
    ]
}

/// Binomial generators of the facet ideals as `(+a·b, −c·d)` name pairs.
pub fn p2_facet_ideals() -> Vec<(&'static str, Vec<[&'static str; 4]>)> {
    vec![
        (
            "I0",
            vec![["c12", "d12", "c03", "d21"], ["c30", "d12", "c21", "d21"], ["c30", "c03", "c21", "c12"]],
        ),
        (
            "I1",
            vec![["c02", "d02", "c03", "d01"], ["c00", "d02", "c01", "d01"], ["c00", "c03", "c01", "c02"]],
        ),
        (
            "I2",
            vec![["c20", "d20", "c30", "d10"], ["c00", "d20", "c10", "d10"], ["c00", "c30", "c10", "c20"]],
        ),
    ]
}

/// The center-and-corner families `(λ, μ)`: two equal center unknowns
/// set to λ and one corner set to μ; all else zero.
pub fn center_corner_families() -> Vec<([&'static str; 2], &'static str, [i64; 2])> {
    vec![
        (["e0", "e1"], "c03", [1, -2]),
        (["e1", "e2"], "c00", [1, 1]),
        (["e0", "e2"], "c30", [-2, 1]),
    ]
}
