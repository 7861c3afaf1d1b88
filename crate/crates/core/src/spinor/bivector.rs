use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{exp_interior, Blade, GradedForm, GradedVector};
use crate::liealg::LieAlgebra;
use crate::poly::Poly;

/// Bivector field `Σ_{i<j} π_ij ∂_i ∧ ∂_j` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolyBivector {
    dim: usize,
    coeffs: BTreeMap<(usize, usize), Poly>,
}

impl PolyBivector {
    pub fn zero(dim: usize) -> Self {
        PolyBivector {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// Entries `(i, j, π_ij)` are 0-based; `i > j` stores `-π_ij` at `(j, i)`
    /// and repeated positions add.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, Poly)>) -> Result<Self> {
        let mut b = PolyBivector::zero(dim);
        for (i, j, p) in entries {
            if i >= dim || j >= dim {
                return Err(Error::IndexRange(format!("bivector entry ({}, {}) in dimension {dim}", i + 1, j + 1)));
            }
            if i == j {
                if p.is_zero() {
                    continue;
                }
                return Err(Error::domain("bivector entry on the diagonal"));
            }
            let (key, p) = if i < j { ((i, j), p) } else { ((j, i), -p) };
            let sum = b.coeffs.remove(&key).unwrap_or_default() + p;
            if !sum.is_zero() {
                b.coeffs.insert(key, sum);
            }
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `π_ij`, antisymmetric in `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Poly {
        if i < j {
            self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
        } else if i > j {
            -self.coeffs.get(&(j, i)).cloned().unwrap_or_default()
        } else {
            Poly::zero()
        }
    }

    /// Nonzero entries with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.coeffs.iter().map(|(&(i, j), p)| (i, j, p))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.dim, other.dim)?;
        PolyBivector::from_entries(
            self.dim,
            self.entries()
                .chain(other.entries())
                .map(|(i, j, p)| (i, j, p.clone())),
        )
    }

    /// As an element of `∧² ` over `form_dim ≥ dim` coordinates.
    pub fn to_vector(&self, form_dim: usize) -> Result<GradedVector<Poly>> {
        if form_dim < self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: form_dim,
            });
        }
        GradedVector::from_blades(
            form_dim,
            self.entries()
                .map(|(i, j, p)| (Blade::from_sorted(&[i, j]), p.clone())),
        )
    }

    /// `π^♯ dx_a = Σ_j π_aj ∂_j` as a coefficient vector.
    pub fn sharp_basis(&self, a: usize) -> Vec<Poly> {
        (0..self.dim).map(|j| self.get(a, j)).collect()
    }

    /// `π^♯ α` for a constant 1-form `α = Σ α_a dx_a`.
    pub fn sharp(&self, alpha: &[BigRational]) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.dim];
        for (a, c) in alpha.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = &*o + &self.get(a, j).scale(c);
            }
        }
        out
    }

    /// `{f, g} = Σ_{i,j} π_ij ∂_i f ∂_j g`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for (i, j, p) in self.entries() {
            let t = &(&f.derivative(i) * &g.derivative(j)) - &(&f.derivative(j) * &g.derivative(i));
            acc = &acc + &(p * &t);
        }
        acc
    }

    /// Smallest total degree in `vars` over all coefficients; `None` if zero.
    pub fn order_in(&self, vars: &[usize]) -> Option<u32> {
        self.coeffs.values().filter_map(|p| p.order_in(vars)).min()
    }
}

/// Linear Poisson structure on `g*`: `π_ij = Σ_k c^k_ij x_k`.
pub fn linear_poisson(l: &LieAlgebra) -> Result<PolyBivector> {
    l.require_valid()?;
    let n = l.dim();
    let entries = l.bracket_entries().into_iter().map(|(i, j, k, c)| (i, j, Poly::var(k).scale(&c)));
    PolyBivector::from_entries(n, entries)
}

/// `dx_1 ∧ … ∧ dx_dim`.
pub fn volume(dim: usize) -> GradedForm<Poly> {
    GradedForm::top(dim)
}

/// `e^{i_π} λ`.
pub fn spinor(pi: &PolyBivector, lambda: &GradedForm<Poly>) -> Result<GradedForm<Poly>> {
    let v = pi.to_vector(lambda.dim())?;
    exp_interior(&v, lambda)
}
