//! Sparse exterior algebra over an `n`-dimensional space with exact
//! coefficients.
//!
//! Basis elements are index subsets of `{0, .., n-1}` packed into a bitmask
//! ([`Blade`]). The same storage houses differential forms
//! ([`GradedForm`], basis `dx_I`) and multivectors ([`GradedVector`], basis
//! `e_I`). Elements may mix degrees.
//!
//! Insertion of a multivector follows `i_{X∧Y} = i_Y i_X`: the factors of a
//! basis multivector `e_{w1}∧…∧e_{wr}` (ascending) are inserted in that order,
//! `e_{w1}` first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{rat, Coeff};

pub const MAX_DIM: usize = 64;

/// Strictly increasing index set, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u64);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn from_mask(mask: u64) -> Self {
        Blade(mask)
    }

    pub fn single(i: usize) -> Self {
        Blade(1u64 << i)
    }

    /// Builds a blade from sorted, distinct indices.
    pub fn from_sorted(indices: &[usize]) -> Self {
        Blade(indices.iter().fold(0u64, |m, &i| m | (1u64 << i)))
    }

    /// Top blade `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n == 64 {
            Blade(u64::MAX)
        } else {
            Blade((1u64 << n) - 1)
        }
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..64).filter(move |i| mask & (1u64 << i) != 0)
    }

    /// Highest index + 1.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Sign and result of `self ∧ other`, or `None` if they overlap.
    pub fn wedge(self, other: Blade) -> Option<(bool, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        for b in other.indices() {
            inversions += (self.0 >> b >> 1).count_ones();
        }
        Some((inversions % 2 == 1, Blade(self.0 | other.0)))
    }

    /// Sign and result of inserting `e_k` into `dx_self`, or `None` if `k`
    /// is absent.
    pub fn insert(self, k: usize) -> Option<(bool, Blade)> {
        if !self.contains(k) {
            return None;
        }
        let below = (self.0 & ((1u64 << k) - 1)).count_ones();
        Some((below % 2 == 1, Blade(self.0 & !(1u64 << k))))
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub trait BasisKind: Clone + Copy + PartialEq + std::fmt::Debug {
    fn basis_name(blade: Blade) -> String;
}

/// Marker for differential forms (`dx_I`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormBasis;

/// Marker for multivectors (`e_I`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VectorBasis;

impl BasisKind for FormBasis {
    fn basis_name(blade: Blade) -> String {
        blade_name(blade, "dx")
    }
}

impl BasisKind for VectorBasis {
    fn basis_name(blade: Blade) -> String {
        blade_name(blade, "e")
    }
}

fn blade_name(blade: Blade, prefix: &str) -> String {
    blade
        .indices()
        .map(|i| format!("{prefix}{}", i + 1))
        .collect::<Vec<_>>()
        .join("^")
}

/// Element of the exterior algebra with coefficients in `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graded<R, K> {
    dim: usize,
    terms: BTreeMap<Blade, R>,
    kind: PhantomData<K>,
}

pub type GradedForm<R> = Graded<R, FormBasis>;
pub type GradedVector<R> = Graded<R, VectorBasis>;

impl<R: Coeff, K: BasisKind> Graded<R, K> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "exterior algebra dimension {dim} exceeds {MAX_DIM}");
        Graded {
            dim,
            terms: BTreeMap::new(),
            kind: PhantomData,
        }
    }

    pub fn scalar(dim: usize, c: R) -> Self {
        let mut g = Self::zero(dim);
        g.add_term(Blade::EMPTY, c);
        g
    }

    /// `c · b_I` for an arbitrary index list; reorders with sign, and
    /// repeated indices give zero.
    pub fn monomial(dim: usize, indices: &[usize], c: R) -> Result<Self> {
        let mut g = Self::zero(dim);
        let mut blade = Blade::EMPTY;
        let mut negative = false;
        for &i in indices {
            if i >= dim {
                return Err(Error::IndexRange(format!("basis index {} in dimension {dim}", i + 1)));
            }
            match blade.wedge(Blade::single(i)) {
                Some((s, b)) => {
                    negative ^= s;
                    blade = b;
                }
                None => return Ok(g),
            }
        }
        g.add_term(blade, if negative { -c } else { c });
        Ok(g)
    }

    /// Degree-one basis element with unit coefficient.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut g = Self::zero(dim);
        assert!(i < dim, "basis index out of range");
        g.add_term(Blade::single(i), R::one());
        g
    }

    /// Top-degree element `b_1 ∧ … ∧ b_n`.
    pub fn top(dim: usize) -> Self {
        let mut g = Self::zero(dim);
        g.add_term(Blade::full(dim), R::one());
        g
    }

    pub fn from_blades(dim: usize, terms: impl IntoIterator<Item = (Blade, R)>) -> Result<Self> {
        let mut g = Self::zero(dim);
        for (b, c) in terms {
            if b.span() > dim {
                return Err(Error::IndexRange(format!("blade {b:?} in dimension {dim}")));
            }
            g.add_term(b, c);
        }
        Ok(g)
    }

    pub(crate) fn add_term(&mut self, blade: Blade, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&blade) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(blade, sum);
                }
            }
            None => {
                self.terms.insert(blade, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, blade: Blade) -> R {
        self.terms.get(&blade).cloned().unwrap_or_else(R::zero)
    }

    /// Coefficient of `b_{i1} ∧ … ∧ b_{ik}` for sorted indices.
    pub fn coefficient_of(&self, indices: &[usize]) -> R {
        self.coefficient(Blade::from_sorted(indices))
    }

    /// Projection onto the degree-`k` component.
    pub fn component(&self, k: usize) -> Self {
        let mut g = Self::zero(self.dim);
        for (b, c) in &self.terms {
            if b.grade() == k {
                g.terms.insert(*b, c.clone());
            }
        }
        g
    }

    /// Sorted list of degrees carrying nonzero terms.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(|b| b.grade()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    fn check_same_dim<K2>(&self, other: &Graded<R, K2>) -> Result<()> {
        Error::check_dim(self.dim, other.dim)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.map_coeffs(|c| c.scale(q))
    }

    pub fn mul_coeff(&self, r: &R) -> Self {
        self.map_coeffs(|c| c.clone() * r.clone())
    }

    /// Applies `f` to every coefficient, dropping results that become zero.
    pub fn map_coeffs<S: Coeff>(&self, mut f: impl FnMut(&R) -> S) -> Graded<S, K> {
        let mut out = Graded::<S, K>::zero(self.dim);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    /// Exterior product; the sign comes from the shuffle permutation.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                if let Some((negative, b)) = ba.wedge(*bb) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(b, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `self^k` under the wedge product (`self^0 = 1`).
    pub fn wedge_power(&self, k: usize) -> Self {
        let mut acc = Self::scalar(self.dim, R::one());
        for _ in 0..k {
            if acc.is_zero() {
                break;
            }
            acc = acc.wedge(self).expect("same dimension");
        }
        acc
    }

    pub fn display_with<'a>(&'a self, fmt_coeff: &'a dyn Fn(&R) -> String) -> GradedDisplay<'a, R, K> {
        GradedDisplay {
            g: self,
            fmt_coeff,
            names: None,
        }
    }

    pub fn display_named<'a>(
        &'a self,
        fmt_coeff: &'a dyn Fn(&R) -> String,
        basis_names: &'a [String],
    ) -> GradedDisplay<'a, R, K> {
        GradedDisplay {
            g: self,
            fmt_coeff,
            names: Some(basis_names),
        }
    }
}

/// Interior product `i_v a` for a degree-one vector `v`.
pub fn interior<R: Coeff>(v: &GradedVector<R>, a: &GradedForm<R>) -> Result<GradedForm<R>> {
    Error::check_dim(v.dim, a.dim)?;
    if !v.is_zero() && v.homogeneous_degree() != Some(1) {
        return Err(Error::domain("interior expects a degree-one vector"));
    }
    multi_interior(v, a)
}

/// Insertion of a multivector, `i_{X∧Y} = i_Y ∘ i_X`, extended linearly.
pub fn multi_interior<R: Coeff>(w: &GradedVector<R>, a: &GradedForm<R>) -> Result<GradedForm<R>> {
    Error::check_dim(w.dim, a.dim)?;
    let mut out = GradedForm::zero(a.dim);
    for (bw, cw) in &w.terms {
        for (ba, ca) in &a.terms {
            let mut blade = *ba;
            let mut negative = false;
            let mut alive = true;
            for k in bw.indices() {
                match blade.insert(k) {
                    Some((s, b)) => {
                        negative ^= s;
                        blade = b;
                    }
                    None => {
                        alive = false;
                        break;
                    }
                }
            }
            if alive {
                let c = cw.clone() * ca.clone();
                out.add_term(blade, if negative { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// `e^{i_π} λ = Σ_{k=0}^{⌊n/2⌋} (1/k!) i_π^k λ` for a bivector `π`.
pub fn exp_interior<R: Coeff>(pi: &GradedVector<R>, lambda: &GradedForm<R>) -> Result<GradedForm<R>> {
    Error::check_dim(pi.dim, lambda.dim)?;
    if !pi.is_zero() && pi.homogeneous_degree() != Some(2) {
        return Err(Error::domain("exp_interior expects a bivector"));
    }
    let mut acc = lambda.clone();
    let mut term = lambda.clone();
    for k in 1..=lambda.dim / 2 {
        term = multi_interior(pi, &term)?.scale(&rat(k as i64).recip());
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

pub struct GradedDisplay<'a, R, K> {
    g: &'a Graded<R, K>,
    fmt_coeff: &'a dyn Fn(&R) -> String,
    names: Option<&'a [String]>,
}

impl<R: Coeff, K: BasisKind> fmt::Display for GradedDisplay<'_, R, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.g.is_zero() {
            return write!(f, "0");
        }
        for (idx, (b, c)) in self.g.terms.iter().enumerate() {
            let mut coeff = (self.fmt_coeff)(c);
            let negative = !c.is_compound() && coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let basis = match self.names {
                Some(names) => b
                    .indices()
                    .map(|i| names.get(i).cloned().unwrap_or_else(|| format!("b{}", i + 1)))
                    .collect::<Vec<_>>()
                    .join("^"),
                None => K::basis_name(*b),
            };
            if b.grade() == 0 {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{basis}")?;
            } else if c.is_compound() {
                write!(f, "({coeff})*{basis}")?;
            } else {
                write!(f, "{coeff}*{basis}")?;
            }
        }
        Ok(())
    }
}

impl<R: Coeff, K: BasisKind> fmt::Display for Graded<R, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_coeff = |c: &R| c.to_string();
        fmt::Display::fmt(&self.display_with(&fmt_coeff), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    type F = GradedForm<BigRational>;
    type V = GradedVector<BigRational>;

    fn dx(n: usize, idx: &[usize]) -> F {
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        F::monomial(n, &zero_based, rat(1)).unwrap()
    }

    fn e(n: usize, idx: &[usize]) -> V {
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        V::monomial(n, &zero_based, rat(1)).unwrap()
    }

    #[test]
    fn wedge_basis_cases() {
        let a = dx(4, &[1]).wedge(&dx(4, &[2])).unwrap();
        assert_eq!(a.coefficient_of(&[0, 1]), rat(1));
        assert_eq!(a.len(), 1);
        assert!(dx(4, &[1]).wedge(&dx(4, &[1])).unwrap().is_zero());
        let p = dx(4, &[1, 2]);
        let q = dx(4, &[3, 4]);
        assert_eq!(p.wedge(&q).unwrap(), q.wedge(&p).unwrap());
        assert_eq!(dx(4, &[2]).wedge(&dx(4, &[1])).unwrap(), dx(4, &[1, 2]).neg());
    }

    #[test]
    fn wedge_dimension_mismatch() {
        assert!(matches!(
            dx(3, &[1]).wedge(&dx(4, &[2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn interior_signs() {
        let w = dx(3, &[1, 2]);
        assert_eq!(interior(&e(3, &[1]), &w).unwrap(), dx(3, &[2]));
        assert_eq!(interior(&e(3, &[2]), &w).unwrap(), dx(3, &[1]).neg());
        assert!(interior(&e(3, &[3]), &w).unwrap().is_zero());
        assert!(interior(&e(3, &[1, 2]), &w).is_err());
    }

    #[test]
    fn multi_interior_convention() {
        let one = F::scalar(3, rat(1));
        assert_eq!(multi_interior(&e(3, &[1, 2]), &dx(3, &[1, 2])).unwrap(), one);
        assert_eq!(multi_interior(&e(3, &[1, 2]), &dx(3, &[2, 1])).unwrap(), one.neg());
        assert!(multi_interior(&e(3, &[1, 2]), &dx(3, &[1, 3])).unwrap().is_zero());
    }

    #[test]
    fn exp_interior_cases() {
        let vol = F::top(4);
        assert_eq!(exp_interior(&V::zero(4), &vol).unwrap(), vol);

        let c = rat(7);
        let pi = e(2, &[1, 2]).scale(&c);
        let got = exp_interior(&pi, &F::top(2)).unwrap();
        let expected = F::top(2).add(&F::scalar(2, c)).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn exp_interior_so3_at_a_point() {
        // π = x3 e1∧e2 + x1 e2∧e3 + x2 e3∧e1 at x = (2, -3, 5)
        let (x1, x2, x3) = (rat(2), rat(-3), rat(5));
        let pi = e(3, &[1, 2])
            .scale(&x3)
            .add(&e(3, &[2, 3]).scale(&x1))
            .unwrap()
            .add(&e(3, &[3, 1]).scale(&x2))
            .unwrap();
        let phi = exp_interior(&pi, &F::top(3)).unwrap();
        let expected = F::top(3)
            .add(&dx(3, &[1]).scale(&x1))
            .unwrap()
            .add(&dx(3, &[2]).scale(&x2))
            .unwrap()
            .add(&dx(3, &[3]).scale(&x3))
            .unwrap();
        assert_eq!(phi, expected);
        assert_eq!(phi.degrees(), vec![1, 3]);
    }

    #[test]
    fn display_is_canonical() {
        let f = dx(3, &[2]).add(&dx(3, &[1, 3]).scale(&rat(-2))).unwrap();
        assert_eq!(f.to_string(), "dx2 - 2*dx1^dx3");
    }
}
