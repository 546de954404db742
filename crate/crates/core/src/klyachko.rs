//! Toric reflexive sheaves as one decreasing filtration per ray.

use crate::error::{Error, Result};
use crate::lattice::{pairing, Fan, HalfSpaceRegion, LatticeVec};
use crate::ratlin::{kernel, Mat, Rat, Subspace};

/// A decreasing ℤ-filtration of `ℚ^ambient`.
///
/// `E^ℓ` is the full space for `ℓ < steps[0].0`, equals `steps[i].1` on
/// `[steps[i].0, steps[i+1].0)`, and the last step is the zero subspace.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Filtration {
    ambient: usize,
    steps: Vec<(i64, Subspace)>,
}

impl Filtration {
    /// Builds a filtration from `(level, E^level)` pairs; repeated spaces are
    /// merged and a missing trailing zero is rejected.
    pub fn new(ambient: usize, mut steps: Vec<(i64, Subspace)>) -> Result<Self> {
        steps.sort_by_key(|(l, _)| *l);
        let mut out: Vec<(i64, Subspace)> = Vec::with_capacity(steps.len());
        let full = Subspace::full(ambient);
        for (l, s) in steps {
            if s.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: s.ambient_dim(),
                });
            }
            if out.last().is_some_and(|(pl, _)| *pl == l) {
                return Err(Error::InvalidFiltration(format!("level {l} given twice")));
            }
            let prev = out.last().map_or(&full, |(_, p)| p);
            if !s.is_subspace_of(prev)? {
                return Err(Error::InvalidFiltration(format!("not decreasing at level {l}")));
            }
            if s != *prev {
                out.push((l, s));
            }
        }
        if ambient > 0 && !out.last().is_some_and(|(_, s)| s.is_zero()) {
            return Err(Error::InvalidFiltration("filtration does not reach zero".into()));
        }
        Ok(Filtration { ambient, steps: out })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn steps(&self) -> &[(i64, Subspace)] {
        &self.steps
    }

    pub fn at(&self, level: i64) -> Subspace {
        match self.steps.iter().rev().find(|(l, _)| *l <= level) {
            Some((_, s)) => s.clone(),
            None => Subspace::full(self.ambient),
        }
    }

    /// Largest level with `E^ℓ = E`.
    pub fn bot(&self) -> i64 {
        self.steps.first().map_or(i64::MAX, |(l, _)| l - 1)
    }

    /// Smallest level with `E^ℓ = 0`.
    pub fn top(&self) -> i64 {
        self.steps.last().map_or(i64::MIN, |(l, _)| *l)
    }

    /// `ℓ ↦ E^{ℓ−λ}`.
    pub fn shift(&self, lambda: i64) -> Filtration {
        Filtration {
            ambient: self.ambient,
            steps: self.steps.iter().map(|(l, s)| (l + lambda, s.clone())).collect(),
        }
    }

    /// One level from each stretch on which the filtration is constant and
    /// nonzero, namely the largest, with the space there.
    pub fn representatives(&self) -> Vec<(i64, Subspace)> {
        let mut out = Vec::with_capacity(self.steps.len());
        let mut current = Subspace::full(self.ambient);
        for (l, s) in &self.steps {
            out.push((l - 1, current));
            current = s.clone();
        }
        out
    }

    /// `F^ℓ = E^ℓ ⊗ N + E^{ℓ−1} ⊗ span(ρ)`, indexed `i·q + k`.
    pub fn tensor_tangent(&self, ray: &LatticeVec) -> Result<Filtration> {
        let q = ray.rank();
        let n_full = Subspace::full(q);
        let line = Subspace::span(q, vec![ray.to_rats()])?;
        let mut levels: Vec<i64> = self
            .steps
            .iter()
            .flat_map(|(l, _)| [*l, l + 1])
            .collect();
        levels.sort();
        levels.dedup();
        let steps = levels
            .into_iter()
            .map(|l| {
                let a = self.at(l).tensor(&n_full);
                let b = self.at(l - 1).tensor(&line);
                Ok((l, a.sum(&b)?))
            })
            .collect::<Result<_>>()?;
        Filtration::new(self.ambient * q, steps)
    }
}

/// A fan with one filtration of a common space `E` per ray.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ToricSheaf {
    fan: Fan,
    rank: usize,
    filtrations: Vec<Filtration>,
}

impl ToricSheaf {
    pub fn new(fan: Fan, rank: usize, filtrations: Vec<Filtration>) -> Result<Self> {
        if filtrations.len() != fan.rays().len() {
            return Err(Error::DimensionMismatch {
                expected: fan.rays().len(),
                found: filtrations.len(),
            });
        }
        if let Some(f) = filtrations.iter().find(|f| f.ambient_dim() != rank) {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: f.ambient_dim(),
            });
        }
        Ok(ToricSheaf {
            fan,
            rank,
            filtrations,
        })
    }

    /// `T_X`: `N` up to level 0, `span(ρ)` at level 1, zero from level 2.
    pub fn tangent(fan: &Fan) -> Result<Self> {
        let q = fan.rank();
        let filtrations = fan
            .rays()
            .iter()
            .map(|rho| {
                Filtration::new(
                    q,
                    vec![(1, Subspace::span(q, vec![rho.to_rats()])?), (2, Subspace::zero(q))],
                )
            })
            .collect::<Result<_>>()?;
        ToricSheaf::new(fan.clone(), q, filtrations)
    }

    /// `Ω¹_X`: `M` up to level −1, `ρ^⊥` at level 0, zero from level 1.
    pub fn cotangent(fan: &Fan) -> Result<Self> {
        let q = fan.rank();
        let filtrations = fan
            .rays()
            .iter()
            .map(|rho| {
                let perp = kernel(&Mat::from_rows(q, vec![rho.to_rats()])?);
                Filtration::new(q, vec![(0, perp), (1, Subspace::zero(q))])
            })
            .collect::<Result<_>>()?;
        ToricSheaf::new(fan.clone(), q, filtrations)
    }

    /// `O(Σ λ_ρ D_ρ)`.
    pub fn line_bundle(fan: &Fan, lambda: &[i64]) -> Result<Self> {
        ToricSheaf::structure_sheaf(fan).tensor_line_bundle(lambda)
    }

    pub fn structure_sheaf(fan: &Fan) -> Self {
        let f = Filtration::new(1, vec![(1, Subspace::zero(1))]).expect("valid");
        ToricSheaf {
            fan: fan.clone(),
            rank: 1,
            filtrations: vec![f; fan.rays().len()],
        }
    }

    /// `E ⊗ O(Σ λ_ρ D_ρ)`: every filtration shifted up by its `λ_ρ`.
    pub fn tensor_line_bundle(&self, lambda: &[i64]) -> Result<Self> {
        if lambda.len() != self.filtrations.len() {
            return Err(Error::DimensionMismatch {
                expected: self.filtrations.len(),
                found: lambda.len(),
            });
        }
        Ok(ToricSheaf {
            fan: self.fan.clone(),
            rank: self.rank,
            filtrations: self
                .filtrations
                .iter()
                .zip(lambda)
                .map(|(f, &l)| f.shift(l))
                .collect(),
        })
    }

    /// `E ⊗ T_X` on `E ⊗ N`, indexed `i·q + k`.
    pub fn tensor_tangent(&self) -> Result<Self> {
        let filtrations = self
            .filtrations
            .iter()
            .zip(self.fan.rays())
            .map(|(f, rho)| f.tensor_tangent(rho))
            .collect::<Result<_>>()?;
        ToricSheaf::new(self.fan.clone(), self.rank * self.fan.rank(), filtrations)
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn filtrations(&self) -> &[Filtration] {
        &self.filtrations
    }

    pub fn filtration(&self, ray: usize) -> Result<&Filtration> {
        self.filtrations.get(ray).ok_or(Error::UnknownRay(ray))
    }
}

/// `∩_ρ E_ρ^{−⟨r,ρ⟩}`: the `e` with `e ⊗ χ^r` a global section.
pub fn section_space(s: &ToricSheaf, r: &LatticeVec) -> Result<Subspace> {
    let mut acc = Subspace::full(s.rank);
    for (f, rho) in s.filtrations.iter().zip(s.fan.rays()) {
        acc = acc.intersect(&f.at(-pairing(r, rho)?))?;
    }
    Ok(acc)
}

/// Degree-`r` homomorphisms `E → F` as a subspace of flattened
/// `dim F × dim E` matrices (index `i·dim E + j`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomSpace {
    pub degree: LatticeVec,
    pub source_dim: usize,
    pub target_dim: usize,
    pub space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn maps(&self) -> Vec<Mat> {
        self.space
            .basis()
            .row_vecs()
            .into_iter()
            .map(|v| Mat::new(self.target_dim, self.source_dim, v).expect("sized"))
            .collect()
    }
}

/// `φ` with `φ(E_ρ^ℓ) ⊆ F_ρ^{ℓ−⟨r,ρ⟩}` for every ray and level.
pub fn hom_space(e: &ToricSheaf, f: &ToricSheaf, r: &LatticeVec) -> Result<HomSpace> {
    if e.fan != f.fan {
        return Err(Error::FanMismatch);
    }
    let (de, df) = (e.rank, f.rank);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for ((fe, ff), rho) in e.filtrations.iter().zip(&f.filtrations).zip(e.fan.rays()) {
        let m = pairing(r, rho)?;
        for (l, source) in fe.representatives() {
            let ann = ff.at(l - m).annihilator();
            for v in source.basis().row_vecs() {
                for w in ann.basis().row_vecs() {
                    let mut row = vec![Rat::zero(); df * de];
                    for (i, wi) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                            row[i * de + j] = wi * vj;
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(df * de)
    } else {
        kernel(&Mat::from_rows(df * de, rows)?)
    };
    Ok(HomSpace {
        degree: r.clone(),
        source_dim: de,
        target_dim: df,
        space,
    })
}

/// Degrees where `Hom(E, F)` can be nonzero: `⟨r,ρ⟩ ≥ bot_ρ(E) − top_ρ(F) + 1`.
pub fn hom_degree_region(e: &ToricSheaf, f: &ToricSheaf) -> Result<HalfSpaceRegion> {
    if e.fan != f.fan {
        return Err(Error::FanMismatch);
    }
    let constraints = e
        .filtrations
        .iter()
        .zip(&f.filtrations)
        .zip(e.fan.rays())
        .map(|((fe, ff), rho)| (rho.clone(), fe.bot() - ff.top() + 1))
        .collect();
    Ok(HalfSpaceRegion::new(e.fan.rank(), constraints))
}

/// `Σ_r dim Hom(E, F)_r`; requires a complete fan.
pub fn hom_total_dim(e: &ToricSheaf, f: &ToricSheaf) -> Result<usize> {
    if e.rank == 0 || f.rank == 0 {
        return Ok(0);
    }
    hom_degree_region(e, f)?
        .lattice_points()?
        .iter()
        .map(|r| hom_space(e, f, r).map(|h| h.dim()))
        .sum()
}

/// Degrees with nonzero sections and their dimensions, lexicographically.
pub fn sections(s: &ToricSheaf) -> Result<Vec<(LatticeVec, usize)>> {
    if s.rank == 0 {
        return Ok(Vec::new());
    }
    let o = ToricSheaf::structure_sheaf(&s.fan);
    let mut out = Vec::new();
    for r in hom_degree_region(&o, s)?.lattice_points()? {
        let d = section_space(s, &r)?.dim();
        if d > 0 {
            out.push((r, d));
        }
    }
    Ok(out)
}

/// `dim H⁰`.
pub fn section_total_dim(s: &ToricSheaf) -> Result<usize> {
    Ok(sections(s)?.iter().map(|(_, d)| d).sum())
}

/// Parses `tangent`, `cotangent`, `O(λ₁,…,λₙ)` and `tangent*O(…)` /
/// `cotangent*O(…)`; the `λ` follow the fan's ray order.
pub fn parse_sheaf(fan: &Fan, spec: &str) -> Result<ToricSheaf> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let mut factors = compact.split('*');
    let head = factors.next().unwrap_or_default();
    let mut sheaf = match head {
        "tangent" | "T" => ToricSheaf::tangent(fan)?,
        "cotangent" | "Omega" => ToricSheaf::cotangent(fan)?,
        other => ToricSheaf::line_bundle(fan, &parse_twist(other, fan)?)?,
    };
    for factor in factors {
        sheaf = sheaf.tensor_line_bundle(&parse_twist(factor, fan)?)?;
    }
    Ok(sheaf)
}

fn parse_twist(s: &str, fan: &Fan) -> Result<Vec<i64>> {
    let inner = s
        .strip_prefix("O(")
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected O(...), found {s:?}")))?;
    let coeffs = inner
        .split(',')
        .map(|x| x.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {x:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != fan.rays().len() {
        return Err(Error::Parse(format!(
            "O(...) needs {} coefficients, found {}",
            fan.rays().len(),
            coeffs.len()
        )));
    }
    Ok(coeffs)
}
