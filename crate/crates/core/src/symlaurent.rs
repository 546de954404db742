//! Exact Laurent polynomials over ℚ and quadratic systems in named unknowns.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeVec;
use crate::ratlin::{Mat, Rat};

/// An element of `ℚ[ℤ^rank]`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: Rat) -> Self {
        LaurentPoly::monomial(vec![0; rank], c)
    }

    pub fn one(rank: usize) -> Self {
        LaurentPoly::constant(rank, Rat::one())
    }

    pub fn monomial(exponent: Vec<i64>, c: Rat) -> Self {
        let mut p = LaurentPoly::zero(exponent.len());
        if !c.is_zero() {
            p.terms.insert(exponent, c);
        }
        p
    }

    /// The character `χ^r`.
    pub fn character(r: &LatticeVec) -> Self {
        LaurentPoly::monomial(r.0.clone(), Rat::one())
    }

    /// The `k`-th coordinate function.
    pub fn var(rank: usize, k: usize) -> Self {
        let mut e = vec![0; rank];
        e[k] = 1;
        LaurentPoly::monomial(e, Rat::one())
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Vec<i64>, Rat)>) -> Result<Self> {
        let mut p = LaurentPoly::zero(rank);
        for (e, c) in terms {
            if e.len() != rank {
                return Err(Error::RankMismatch(rank, e.len()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponent: &[i64]) -> Rat {
        self.terms.get(exponent).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, exponent: Vec<i64>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &LaurentPoly) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut out = LaurentPoly::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one(self.rank);
        for _ in 0..n {
            out = out.mul(self).expect("same rank");
        }
        out
    }

    /// Multiplies by the monomial `χ^shift`.
    pub fn shift(&self, shift: &[i64]) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes the rational point `t`; a coordinate may be zero only if
    /// no term has a negative exponent there.
    pub fn eval(&self, t: &[Rat]) -> Result<Rat> {
        if t.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: t.len(),
            });
        }
        for (k, _) in t.iter().enumerate().filter(|(_, x)| x.is_zero()) {
            if self.terms.keys().any(|e| e[k] < 0) {
                return Err(Error::ZeroCoordinate(k));
            }
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(t)
                    .fold(c.clone(), |acc, (&k, x)| acc * x.pow(k as i32))
            })
            .sum())
    }

    /// Substitutes a Laurent polynomial for each variable; variables with a
    /// negative exponent must map to a monomial.
    pub fn compose(&self, images: &[LaurentPoly]) -> Result<LaurentPoly> {
        if images.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: images.len(),
            });
        }
        let target = images.first().map_or(0, |p| p.rank);
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (&k, img) in e.iter().zip(images) {
                if img.rank != target {
                    return Err(Error::RankMismatch(target, img.rank));
                }
                let factor = if k >= 0 {
                    img.pow(k as u32)
                } else {
                    img.monomial_inverse()
                        .ok_or_else(|| Error::Unsupported("inverting a non-monomial".into()))?
                        .pow((-k) as u32)
                };
                term = term.mul(&factor)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    fn monomial_inverse(&self) -> Option<LaurentPoly> {
        let (e, c) = self.terms.iter().next().filter(|_| self.terms.len() == 1)?;
        Some(LaurentPoly::monomial(e.iter().map(|x| -x).collect(), c.recip()))
    }

    /// Scaled to coprime integer coefficients with a positive leading one.
    pub fn normalized(&self) -> LaurentPoly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        let Some((_, lead)) = self.leading_term() else {
            return self.clone();
        };
        let l = self.terms.values().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
        let g = self
            .terms
            .values()
            .fold(BigInt::zero(), |a, c| a.gcd(&(c.numer() * &l / c.denom())));
        let mut factor = Rat::from_bigint(l) / Rat::from_bigint(g.abs());
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// The lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Vec<i64>, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Returns `d` with `self = −d²`, normalized to a positive leading
    /// coefficient, or `None` if no such `d` exists over ℚ.
    pub fn is_minus_perfect_square(&self) -> Option<LaurentPoly> {
        let q = self.neg();
        let Some((lead_e, lead_c)) = q.leading_term() else {
            return Some(LaurentPoly::zero(self.rank));
        };
        if lead_e.iter().any(|x| x % 2 != 0) {
            return None;
        }
        let root_c = lead_c.sqrt()?;
        // Every exponent of d lies in half the coordinate box of q.
        let lo: Vec<i64> = (0..self.rank)
            .map(|k| q.terms.keys().map(|e| e[k]).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..self.rank)
            .map(|k| q.terms.keys().map(|e| e[k]).max().unwrap())
            .collect();
        let in_box = |e: &[i64]| {
            e.iter()
                .enumerate()
                .all(|(k, &x)| 2 * x >= lo[k] && 2 * x <= hi[k])
        };
        let lead_d: Vec<i64> = lead_e.iter().map(|x| x / 2).collect();
        let two_lead = LaurentPoly::monomial(lead_d.clone(), &root_c + &root_c);
        let mut d = LaurentPoly::monomial(lead_d.clone(), root_c);
        loop {
            let rem = q.sub(&d.mul(&d).ok()?).ok()?;
            let Some((re, rc)) = rem.leading_term() else {
                return Some(d);
            };
            let (two_e, two_c) = two_lead.leading_term().unwrap();
            let e: Vec<i64> = re.iter().zip(two_e).map(|(a, b)| a - b).collect();
            let smallest = d.terms.keys().next().unwrap();
            if e >= *smallest || !in_box(&e) {
                return None;
            }
            d.add_term(e, rc / two_c);
        }
    }

    /// Formats with the given variable names; negative powers as `x^(-k)`.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let monomial: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k != 0)
                .map(|(&k, name)| match k {
                    1 => name.clone(),
                    k if k < 0 => format!("{name}^({k})"),
                    k => format!("{name}^{k}"),
                })
                .collect();
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if n == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            match (monomial.is_empty(), mag.is_one()) {
                (true, _) => {
                    let _ = write!(out, "{mag}");
                }
                (false, true) => out.push_str(&monomial.join("*")),
                (false, false) => {
                    let _ = write!(out, "{mag}*{}", monomial.join("*"));
                }
            }
        }
        out
    }

    fn default_names(rank: usize) -> Vec<String> {
        match rank {
            1 => vec!["x".into()],
            2 => vec!["x".into(), "y".into()],
            3 => vec!["x".into(), "y".into(), "z".into()],
            n => (0..n).map(|k| format!("x{k}")).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&LaurentPoly::default_names(self.rank)))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponent: Vec<i64>,
    coeff: Rat,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(e, c)| TermRepr {
                exponent: e.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

/// Formats coefficients `c_0 + c_1 z + …` as a polynomial in `var`.
pub fn format_univariate(coeffs: &[Rat], var: &str) -> String {
    let exps: Vec<(Vec<i64>, Rat)> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| (vec![k as i64], c.clone()))
        .collect();
    LaurentPoly::from_terms(1, exps)
        .expect("rank 1")
        .format_with(&[var.to_string()])
}

/// A square matrix over `ℚ[ℤ^rank]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentMatrix {
    rank: usize,
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(rank: usize, n: usize) -> Self {
        LaurentMatrix {
            rank,
            n,
            entries: vec![LaurentPoly::zero(rank); n * n],
        }
    }

    pub fn from_entries(rank: usize, n: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        if let Some(p) = entries.iter().find(|p| p.rank != rank) {
            return Err(Error::RankMismatch(rank, p.rank));
        }
        Ok(LaurentMatrix { rank, n, entries })
    }

    /// `A ⊗ χ^r`.
    pub fn from_mat(a: &Mat, r: &[i64]) -> Self {
        let n = a.rows();
        LaurentMatrix {
            rank: r.len(),
            n,
            entries: a
                .entries()
                .iter()
                .map(|c| LaurentPoly::monomial(r.to_vec(), c.clone()))
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn add(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        LaurentMatrix::from_entries(self.rank, self.n, entries)
    }

    pub fn sub(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        LaurentMatrix::from_entries(self.rank, self.n, entries)
    }

    pub fn mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let mut out = LaurentMatrix::zero(self.rank, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentPoly::zero(self.rank);
                for k in 0..n {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                out.entries[i * n + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn trace(&self) -> LaurentPoly {
        (0..self.n).fold(LaurentPoly::zero(self.rank), |acc, i| {
            acc.add(self.get(i, i)).expect("same rank")
        })
    }

    /// Determinant by cofactor expansion (sizes here are tiny).
    pub fn det(&self) -> LaurentPoly {
        let idx: Vec<usize> = (0..self.n).collect();
        self.minor_det(&idx, &idx)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        if rows.is_empty() {
            return LaurentPoly::one(self.rank);
        }
        let r = rows[0];
        let mut acc = LaurentPoly::zero(self.rank);
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.get(r, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry.mul(&self.minor_det(&rows[1..], &rest)).expect("same rank");
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) }.expect("same rank");
        }
        acc
    }

    pub fn eval(&self, t: &[Rat]) -> Result<Mat> {
        let data = self.entries.iter().map(|p| p.eval(t)).collect::<Result<_>>()?;
        Mat::new(self.n, self.n, data)
    }

    /// The coefficient matrix of `χ^u`.
    pub fn component(&self, u: &[i64]) -> Mat {
        Mat::new(self.n, self.n, self.entries.iter().map(|p| p.coeff(u)).collect())
            .expect("square")
    }

    /// All exponents that occur in some entry, ascending.
    pub fn support(&self) -> BTreeSet<Vec<i64>> {
        self.entries
            .iter()
            .flat_map(|p| p.terms.keys().cloned())
            .collect()
    }
}

/// An unknown `c[r][i]`: basis element `i` of the space at degree `r`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PolyVar {
    pub degree: LatticeVec,
    pub index: usize,
}

impl PolyVar {
    pub fn new(degree: LatticeVec, index: usize) -> Self {
        PolyVar { degree, index }
    }

    /// `c[(1,-2)][0]`.
    pub fn name(&self) -> String {
        format!("c[{}][{}]", self.degree, self.index)
    }

    /// An identifier every CAS accepts: `c_1_m2_0`.
    pub fn cas_name(&self) -> String {
        let mut s = String::from("c");
        for x in self.degree.coords() {
            if *x < 0 {
                let _ = write!(s, "_m{}", -x);
            } else {
                let _ = write!(s, "_{x}");
            }
        }
        let _ = write!(s, "_{}", self.index);
        s
    }

    /// Parses either naming form.
    pub fn parse(s: &str) -> Result<PolyVar> {
        let err = || Error::Parse(format!("bad variable name {s:?}"));
        if let Some(rest) = s.strip_prefix("c[(") {
            let (deg, rest) = rest.split_once(")][").ok_or_else(err)?;
            let idx = rest.strip_suffix(']').ok_or_else(err)?;
            let coords = deg
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| err()))
                .collect::<Result<Vec<_>>>()?;
            return Ok(PolyVar::new(LatticeVec(coords), idx.parse().map_err(|_| err())?));
        }
        let rest = s.strip_prefix("c_").ok_or_else(err)?;
        let mut parts: Vec<i64> = rest
            .split('_')
            .map(|p| match p.strip_prefix('m') {
                Some(n) => n.parse::<i64>().map(|v| -v),
                None => p.parse::<i64>(),
            })
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err())?;
        let idx = parts.pop().ok_or_else(err)?;
        if idx < 0 || parts.is_empty() {
            return Err(err());
        }
        Ok(PolyVar::new(LatticeVec(parts), idx as usize))
    }
}

impl fmt::Display for PolyVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for PolyVar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// Polynomials in the declared unknowns; exponent `k` of a polynomial refers
/// to `vars[k]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolySystem {
    pub vars: Vec<PolyVar>,
    pub polys: Vec<LaurentPoly>,
}

impl PolySystem {
    pub fn new(vars: Vec<PolyVar>, polys: Vec<LaurentPoly>) -> Result<Self> {
        if let Some(p) = polys.iter().find(|p| p.rank() != vars.len()) {
            return Err(Error::RankMismatch(vars.len(), p.rank()));
        }
        Ok(PolySystem { vars, polys })
    }

    pub fn var_index(&self, v: &PolyVar) -> Option<usize> {
        self.vars.iter().position(|x| x == v)
    }

    /// One polynomial per line in CAS identifiers.
    pub fn to_text(&self) -> String {
        let names: Vec<String> = self.vars.iter().map(PolyVar::cas_name).collect();
        let mut out = String::new();
        for p in &self.polys {
            out.push_str(&p.format_with(&names));
            out.push('\n');
        }
        out
    }

    /// Evaluates every generator at a rational point.
    pub fn eval(&self, point: &BTreeMap<PolyVar, Rat>) -> Result<Vec<Rat>> {
        let images = self.rational_images(point)?;
        self.polys
            .iter()
            .map(|p| {
                Ok(p.terms()
                    .map(|(e, c)| {
                        e.iter()
                            .zip(&images)
                            .fold(c.clone(), |acc, (&k, x)| acc * x.pow(k as i32))
                    })
                    .sum())
            })
            .collect()
    }

    fn rational_images(&self, point: &BTreeMap<PolyVar, Rat>) -> Result<Vec<Rat>> {
        self.vars
            .iter()
            .map(|v| {
                point
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::UncoveredVariable(v.name()))
            })
            .collect()
    }
}

impl Serialize for PolySystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PolySystem", 3)?;
        st.serialize_field("vars", &self.vars)?;
        let cas: Vec<String> = self.vars.iter().map(PolyVar::cas_name).collect();
        st.serialize_field("casNames", &cas)?;
        st.serialize_field("polys", &self.polys)?;
        st.end()
    }
}

/// True iff every generator vanishes identically after substituting the
/// given polynomials (in shared fresh parameters) for the unknowns.
pub fn substitute_witness(sys: &PolySystem, assignment: &BTreeMap<PolyVar, LaurentPoly>) -> Result<bool> {
    let images: Vec<LaurentPoly> = sys
        .vars
        .iter()
        .map(|v| {
            assignment
                .get(v)
                .cloned()
                .ok_or_else(|| Error::UncoveredVariable(v.name()))
        })
        .collect::<Result<_>>()?;
    if images.is_empty() {
        return Ok(true);
    }
    for p in &sys.polys {
        if !p.compose(&images)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn poly1(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(1, terms.iter().map(|&(e, c)| (vec![e], r(c)))).unwrap()
    }

    #[test]
    fn products() {
        let x = LaurentPoly::character(&LatticeVec(vec![2, -1]));
        let y = LaurentPoly::character(&LatticeVec(vec![-1, 3]));
        assert_eq!(x.mul(&y).unwrap(), LaurentPoly::character(&LatticeVec(vec![1, 2])));

        let a = poly1(&[(1, 1), (-1, 1)]);
        let b = poly1(&[(1, 1), (-1, -1)]);
        assert_eq!(a.mul(&b).unwrap(), poly1(&[(2, 1), (-2, -1)]));

        // (c0 + c1 x + c-1 x^-1)^2 with c = 2, 3, 5
        let p = poly1(&[(0, 2), (1, 3), (-1, 5)]);
        let sq = p.mul(&p).unwrap();
        assert_eq!(sq, poly1(&[(2, 9), (1, 12), (0, 4 + 30), (-1, 20), (-2, 25)]));
        assert!(a.mul(&LaurentPoly::one(2)).is_err());
    }

    #[test]
    fn evaluation() {
        let t = [Rat::from_int(2), Rat::from_int(3)];
        assert_eq!(LaurentPoly::one(2).eval(&t).unwrap(), Rat::one());
        assert_eq!(poly1(&[(1, 1), (-1, 1)]).eval(&[r(2)]).unwrap(), Rat::new(5, 2));
        let xy = LaurentPoly::var(2, 0).mul(&LaurentPoly::var(2, 1)).unwrap();
        assert_eq!(xy.eval(&t).unwrap(), r(6));
        assert_eq!(xy.eval(&[r(0), r(1)]).unwrap(), r(0));
        let inv = LaurentPoly::monomial(vec![0, -1], r(1));
        assert_eq!(inv.eval(&[r(0), r(1)]).unwrap(), r(1));
        assert_eq!(inv.eval(&[r(1), r(0)]), Err(Error::ZeroCoordinate(1)));
    }

    #[test]
    fn minus_squares() {
        let x = LaurentPoly::var(2, 0);
        let y = LaurentPoly::var(2, 1);
        assert_eq!(x.mul(&x).unwrap().neg().is_minus_perfect_square(), Some(x.clone()));
        let s = x.add(&y).unwrap();
        assert_eq!(s.mul(&s).unwrap().neg().is_minus_perfect_square(), Some(s.clone()));
        assert_eq!(x.mul(&y).unwrap().is_minus_perfect_square(), None);
        assert_eq!(x.mul(&x).unwrap().is_minus_perfect_square(), None);
        let two_x2 = x.mul(&x).unwrap().scale(&r(-2));
        assert_eq!(two_x2.is_minus_perfect_square(), None);
    }

    #[test]
    fn text_and_names() {
        let v = PolyVar::new(LatticeVec(vec![1, -2]), 0);
        assert_eq!(v.name(), "c[(1,-2)][0]");
        assert_eq!(v.cas_name(), "c_1_m2_0");
        assert_eq!(PolyVar::parse(&v.name()).unwrap(), v);
        assert_eq!(PolyVar::parse(&v.cas_name()).unwrap(), v);
        let p = LaurentPoly::from_terms(2, [(vec![1, 1], r(-1)), (vec![2, 0], r(3)), (vec![0, -1], r(1))]).unwrap();
        assert_eq!(p.to_string(), "3*x^2 - x*y + y^(-1)");
        assert_eq!(format_univariate(&[r(-1), r(0), r(1)], "z"), "z^2 - 1");
        let q = LaurentPoly::from_terms(1, [(vec![2], Rat::new(-2, 3)), (vec![0], Rat::new(4, 9))]).unwrap();
        assert_eq!(q.normalized(), LaurentPoly::from_terms(1, [(vec![2], r(3)), (vec![0], r(-2))]).unwrap());
    }

    #[test]
    fn witness_substitution() {
        // x*y - z*w with x=a, y=b, z=a, w=b vanishes; with w=a it does not.
        let vars: Vec<PolyVar> = (0..4).map(|i| PolyVar::new(LatticeVec(vec![0, 0]), i)).collect();
        let p = LaurentPoly::from_terms(4, [(vec![1, 1, 0, 0], r(1)), (vec![0, 0, 1, 1], r(-1))]).unwrap();
        let sys = PolySystem::new(vars.clone(), vec![p]).unwrap();
        let a = LaurentPoly::var(2, 0);
        let b = LaurentPoly::var(2, 1);
        let mut asg: BTreeMap<PolyVar, LaurentPoly> =
            vars.iter().cloned().zip([a.clone(), b.clone(), a.clone(), b.clone()]).collect();
        assert!(substitute_witness(&sys, &asg).unwrap());
        asg.insert(vars[3].clone(), a.clone());
        assert!(!substitute_witness(&sys, &asg).unwrap());
        asg.remove(&vars[0]);
        assert!(matches!(substitute_witness(&sys, &asg), Err(Error::UncoveredVariable(_))));
    }

    #[test]
    fn matrix_det_and_commutator() {
        let x = LaurentPoly::var(3, 0);
        let y = LaurentPoly::var(3, 1);
        let z = LaurentPoly::var(3, 2);
        let m = LaurentMatrix::from_entries(
            3,
            2,
            vec![x.neg(), x.add(&y).unwrap(), x.add(&z).unwrap().neg(), x.clone()],
        )
        .unwrap();
        let expected = x
            .mul(&y)
            .unwrap()
            .add(&y.mul(&z).unwrap())
            .unwrap()
            .add(&z.mul(&x).unwrap())
            .unwrap();
        assert_eq!(m.det(), expected);
        assert!(m.commutator(&m).unwrap().is_zero());
        assert!(m.trace().is_zero());
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(((-2i64..=2, -2i64..=2), -3i64..=3), 0..4).prop_map(|ts| {
            LaurentPoly::from_terms(2, ts.into_iter().map(|((a, b), c)| (vec![a, b], Rat::from_int(c)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn eval_is_multiplicative(a in small_poly(), b in small_poly(), t0 in 1i64..5, t1 in -4i64..=-1) {
            let t = [Rat::new(t0, 3), Rat::from_int(t1)];
            let ab = a.mul(&b).unwrap().eval(&t).unwrap();
            prop_assert_eq!(ab, a.eval(&t).unwrap() * b.eval(&t).unwrap());
        }

        #[test]
        fn square_roots_recovered(d in small_poly()) {
            let p = d.mul(&d).unwrap().neg();
            let root = p.is_minus_perfect_square();
            prop_assert!(root.is_some());
            let root = root.unwrap();
            prop_assert!(root == d || root == d.neg());
        }
    }
}
