mod common;

use std::collections::BTreeMap;

use cohiggs::catalog::{
    facet_rule_space, fan_isomorphism, p2_named_basis, p2_named_generic_field, named_variable_map, resolve_surface,
    SurfaceId,
};
use cohiggs::higgs::{HiggsField, GenericField};
use cohiggs::lattice::convex_hull;
use cohiggs::prehiggs::{candidate_region, pre_higgs_space};
use cohiggs::symlaurent::{LaurentPoly, PolyVar};
use cohiggs::{Error, Rat, Subspace};
use common::*;

#[test]
fn facet_rules_cut_out_the_solver_space() {
    for id in ["P2", "Hirz:2", "P1xP1", "P2'''"] {
        let t = tangent(id);
        for r in candidate_region(&t).lattice_points().unwrap() {
            let solver = pre_higgs_space(&t, &r).unwrap();
            let rules = facet_rule_space(t.fan(), &r).unwrap();
            assert_eq!(solver.space, rules.space, "{id} at {r}");
        }
    }
}

/// Quadrics of a system as vectors over the degree-2 monomials.
fn quadric_span(polys: &[LaurentPoly], n: usize) -> Subspace {
    let mut monos: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut e = vec![0; n];
            e[i] += 1;
            e[j] += 1;
            monos.push(e);
        }
    }
    let rows = polys.iter().map(|p| monos.iter().map(|m| p.coeff(m)).collect()).collect();
    Subspace::span(monos.len(), rows).unwrap()
}

#[test]
fn facet_systems_are_the_binomial_ideals() {
    let (generic, names) = p2_named_generic_field().unwrap();
    let index: BTreeMap<&str, PolyVar> = names.iter().map(|(v, n)| (n.as_str(), v.clone())).collect();
    for ((name, a, b, _, _), (_, gens)) in p2_facets().into_iter().zip(p2_facet_ideals()) {
        let facet = convex_hull(2, &[lv(&a), lv(&b)]).unwrap();
        let pairs: Vec<(PolyVar, _)> = generic
            .vars
            .iter()
            .zip(&generic.elements)
            .filter(|(v, _)| facet.contains(&v.degree))
            .map(|(v, m)| (v.clone(), m.clone()))
            .collect();
        let vars: Vec<PolyVar> = pairs.iter().map(|(v, _)| v.clone()).collect();
        let n = vars.len();
        assert_eq!(n, 6, "{name}");
        let sys = GenericField::from_elements(&generic.sheaf, pairs).system().unwrap();
        let var = |s: &str| LaurentPoly::var(n, vars.iter().position(|v| *v == index[s]).unwrap());
        let ideal: Vec<LaurentPoly> = gens
            .iter()
            .map(|[a, b, c, d]| prod(&var(a), &var(b)).sub(&prod(&var(c), &var(d))).unwrap())
            .collect();
        assert_eq!(quadric_span(&sys.polys, n), quadric_span(&ideal, n), "{name}");
    }
}

#[test]
fn named_basis_coordinates() {
    let map = named_variable_map(&SurfaceId::P2).unwrap();
    let by_name: BTreeMap<&str, _> = map.iter().map(|e| (e.name.as_str(), e)).collect();
    assert_eq!(by_name["c00"].degree, lv(&[1, 1]));
    assert_eq!(by_name["c00"].solver_coordinates.len(), 1);
    let center: Vec<Vec<Rat>> = ["e0", "e1", "e2"].iter().map(|n| by_name[n].solver_coordinates.clone()).collect();
    assert!(center.iter().all(|c| c.len() == 3));
    assert_eq!(Subspace::span(3, center).unwrap().dim(), 3);
    // Each degree's named elements form a basis of the solver's space there.
    let mut per_degree: BTreeMap<_, Vec<Vec<Rat>>> = BTreeMap::new();
    for e in &map {
        per_degree.entry(e.degree.clone()).or_default().push(e.solver_coordinates.clone());
    }
    assert_eq!(per_degree.len(), 10);
    for (r, rows) in per_degree {
        let k = rows.len();
        assert_eq!(Subspace::span(k, rows).unwrap().dim(), k, "{r}");
    }
    assert_eq!(p2_named_basis().len(), 18);
    assert!(matches!(named_variable_map(&SurfaceId::Hirz(2)), Err(Error::Unsupported(_))));
}

#[test]
fn p2pp_field_uses_the_admissible_degree_zero_element() {
    let t = tangent("P2''");
    // (A₀ − A₂) ⊗ ρ₂ at the origin is not a pre-Higgs field on this surface.
    let literal = HiggsField::new(&t, [(lv(&[0, 0]), sym_term(&[([1, 0, -1], 2)]))]);
    assert!(matches!(literal, Err(Error::InvalidTerm(_))));
    let literal_low = HiggsField::new(&t, [(lv(&[0, -1]), sym_term(&[([1, 0, -1], 2)]))]);
    assert!(matches!(literal_low, Err(Error::InvalidTerm(_))));
    // The element e₀ + e₁ equals (A₀ + A₁ − A₂) ⊗ ρ₂ since ρ₀ + ρ₁ + ρ₂ = 0.
    let e01 = named_elements()["e0"].1.add(&named_elements()["e1"].1).unwrap();
    assert_eq!(e01, sym_term(&[([1, 1, -1], 2)]));
    assert_eq!(named_elements()["d12"].1, sym_term(&[([-1, 1, 1], 2)]));
    assert!(HiggsField::new(&t, [(lv(&[0, 0]), e01)]).is_ok());
}

#[test]
fn surfaces_from_json_and_isomorphisms() {
    let v: serde_json::Value = serde_json::json!({"rays": [[1, 0], [0, 1], [-1, -1]]});
    assert_eq!(resolve_surface(&v).unwrap(), fan("P2"));
    assert_eq!(resolve_surface(&serde_json::json!("Hirz:3")).unwrap(), fan("Hirz:3"));
    let with_cones = serde_json::json!({"rays": [[1, 0], [0, 1], [-1, -1]], "maxCones": [[0, 1], [1, 2], [2, 0]]});
    assert_eq!(resolve_surface(&with_cones).unwrap().max_cones().len(), 3);
    assert!(resolve_surface(&serde_json::json!({"rays": [[2, 0], [0, 1]]})).is_err());
    assert!(resolve_surface(&serde_json::json!("P3")).is_err());
    assert!(fan_isomorphism(&fan("P2'"), &fan("Hirz:1")).is_some());
    assert!(fan_isomorphism(&fan("P1xP1"), &fan("Hirz:2")).is_none());
    assert!(fan_isomorphism(&fan("P2"), &fan("P2'")).is_none());
}
