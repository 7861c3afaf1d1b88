//! Finite-dimensional real Lie algebras given by exact structure constants.
//!
//! Conventions:
//!
//! * `[b_i, b_j] = Σ_k c^k_{ij} b_k`, indices 0-based in the API.
//! * The Chevalley–Eilenberg differential on 1-forms is
//!   `(d ξ)(X, Y) = -ξ([X, Y])`, so `d θ_k = -Σ_{i<j} c^k_{ij} θ_i ∧ θ_j`,
//!   extended as a degree +1 derivation. With the opposite sign convention
//!   odd-degree signs flip but heights do not.
//! * The height of `ξ ≠ 0` is the `k` with `ξ ∧ (dξ)^k ≠ 0` and
//!   `ξ ∧ (dξ)^{k+1} = 0`; its type is `One` iff `(dξ)^{k+1} = 0`.

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, JacobiViolation, Result};
use crate::exterior::GradedForm;
use crate::linalg::{self, Matrix};
use crate::poly::{format_rational, Coeff, Poly};

/// Point of `g*`, in coordinates dual to the algebra's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Covector(pub Vec<BigRational>);

impl Covector {
    pub fn new(components: Vec<BigRational>) -> Self {
        Covector(components)
    }

    pub fn from_ints(components: &[i64]) -> Self {
        Covector(components.iter().map(|&c| crate::poly::rat(c)).collect())
    }

    /// The dual basis covector `θ_i` (0-based).
    pub fn dual_basis(n: usize, i: usize) -> Self {
        let mut v = vec![BigRational::zero(); n];
        v[i] = crate::poly::rat(1);
        Covector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn components(&self) -> &[BigRational] {
        &self.0
    }

    pub fn scale(&self, c: &BigRational) -> Covector {
        Covector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn as_form(&self) -> GradedForm<BigRational> {
        let n = self.dim();
        let mut f = GradedForm::zero(n);
        for (i, c) in self.0.iter().enumerate() {
            f.add_term(crate::exterior::Blade::single(i), c.clone());
        }
        f
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for Covector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ElementType {
    One,
    Two,
}

impl ElementType {
    pub fn code(self) -> usize {
        match self {
            ElementType::One => 1,
            ElementType::Two => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightReport {
    pub height: usize,
    pub element_type: ElementType,
    pub cartan_class: usize,
    pub orbit_dim: usize,
    pub radial_in_orbit: bool,
}

impl HeightReport {
    /// Checks the mutual consistency of the report's fields.
    pub fn check(&self) -> Result<()> {
        let t = self.element_type.code();
        let expected_orbit = 2 * self.height + 2 * (t - 1);
        if self.cartan_class != 2 * self.height + t {
            return Err(Error::InvariantViolation(format!(
                "cartan class {} != 2*{} + {t}",
                self.cartan_class, self.height
            )));
        }
        if self.orbit_dim != expected_orbit {
            return Err(Error::InvariantViolation(format!(
                "orbit dimension {} != {expected_orbit} for height {} type {t}",
                self.orbit_dim, self.height
            )));
        }
        if self.radial_in_orbit != (self.element_type == ElementType::Two) {
            return Err(Error::InvariantViolation(format!(
                "radial line in orbit is {} but type is {t}",
                self.radial_in_orbit
            )));
        }
        Ok(())
    }
}

/// Jacobi defects of an antisymmetric table over any coefficient ring:
/// every `i < j < k` whose cyclic sum `[[b_i,b_j],b_k] + …` is nonzero.
pub fn jacobi_defects<R: Coeff>(n: usize, c: &[R]) -> Vec<((usize, usize, usize), Vec<R>)> {
    let at = |i: usize, j: usize, k: usize| &c[(i * n + j) * n + k];
    // [[b_a, b_b], b_d] component l = Σ_m c^m_ab c^l_md
    let double = |a: usize, b: usize, d: usize, l: usize| {
        (0..n).fold(R::zero(), |acc, m| acc + at(a, b, m).clone() * at(m, d, l).clone())
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let defect: Vec<R> = (0..n)
                    .map(|l| double(i, j, k, l) + double(j, k, i, l) + double(k, i, j, l))
                    .collect();
                if defect.iter().any(|d| !d.is_zero()) {
                    out.push(((i, j, k), defect));
                }
            }
        }
    }
    out
}

/// Lie algebra over the rationals. Antisymmetry is validated on
/// construction; the Jacobi identity is checked on first use and cached.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    n: usize,
    c: Vec<BigRational>,
    name: Option<String>,
    jacobi: OnceLock<Vec<JacobiViolation>>,
    killing: OnceLock<Matrix>,
    derived: OnceLock<Matrix>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.c == other.c && self.name == other.name
    }
}

impl LieAlgebra {
    /// `constants[(i*n + j)*n + k] = c^k_{ij}`.
    pub fn new(n: usize, constants: Vec<BigRational>, name: Option<String>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("Lie algebra dimension must be positive"));
        }
        Error::check_dim(n * n * n, constants.len())?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = &constants[(i * n + j) * n + k];
                    let b = &constants[(j * n + i) * n + k];
                    if *a != -b.clone() {
                        return Err(Error::NotAntisymmetric { i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        Ok(LieAlgebra {
            n,
            c: constants,
            name,
            jacobi: OnceLock::new(),
            killing: OnceLock::new(),
            derived: OnceLock::new(),
        })
    }

    /// Builds from entries `(i, j, k, c^k_{ij})` with `i < j` (0-based);
    /// the antisymmetric completion is implied. Repeated `(i, j, k)` add.
    pub fn from_brackets(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, BigRational)>,
        name: Option<String>,
    ) -> Result<Self> {
        let mut c = vec![BigRational::zero(); n * n * n];
        for (i, j, k, v) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::IndexRange(format!(
                    "bracket entry ({}, {}, {}) in dimension {n}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if i == j {
                return Err(Error::domain(format!("bracket entry with i = j = {}", i + 1)));
            }
            c[(i * n + j) * n + k] += v.clone();
            c[(j * n + i) * n + k] -= v;
        }
        LieAlgebra::new(n, c, name)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.c[(i * self.n + j) * self.n + k]
    }

    pub fn constants(&self) -> &[BigRational] {
        &self.c
    }

    /// Nonzero entries `(i, j, k, c^k_{ij})` with `i < j`.
    pub fn bracket_entries(&self) -> Vec<(usize, usize, usize, BigRational)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let v = self.constant(i, j, k);
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn bracket(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let n = self.n;
        let mut out = vec![BigRational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_x` acting on coordinate column vectors.
    pub fn ad_matrix(&self, x: &[BigRational]) -> Matrix {
        let n = self.n;
        let mut m = linalg::zeros(n, n);
        for j in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[j] = crate::poly::rat(1);
            let col = self.bracket(x, &e);
            for (k, v) in col.into_iter().enumerate() {
                m[k][j] = v;
            }
        }
        m
    }

    /// Structure constants in the basis `b'_a = Σ_j p[a][j] b_j`. Covectors
    /// transform as `ξ' = p ξ`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        let n = self.n;
        Error::check_dim(n, p.len())?;
        let q = linalg::inverse(p).ok_or_else(|| Error::domain("basis change matrix is singular"))?;
        let mut c = vec![BigRational::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                let br = self.bracket(&p[a], &p[b]);
                // br = Σ_k br_k b_k = Σ_l (Σ_k br_k q[k][l]) b'_l
                for l in 0..n {
                    let v = (0..n).fold(BigRational::zero(), |acc, k| acc + &br[k] * &q[k][l]);
                    c[(a * n + b) * n + l] = v;
                }
            }
        }
        LieAlgebra::new(n, c, self.name.clone())
    }

    /// All violated Jacobi triples (1-based); empty iff the table defines a
    /// Lie algebra. Cached.
    pub fn jacobi_check(&self) -> &[JacobiViolation] {
        self.jacobi.get_or_init(|| {
            jacobi_defects(self.n, &self.c)
                .into_iter()
                .map(|((i, j, k), defect)| JacobiViolation {
                    triple: (i + 1, j + 1, k + 1),
                    defect,
                })
                .collect()
        })
    }

    pub fn require_valid(&self) -> Result<()> {
        let v = self.jacobi_check();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Jacobi(v.to_vec()))
        }
    }

    pub fn validated(self) -> Result<Self> {
        self.require_valid()?;
        Ok(self)
    }

    fn d_generator<R: Coeff>(&self, k: usize) -> GradedForm<R> {
        let n = self.n;
        let mut f = GradedForm::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let c = self.constant(i, j, k);
                if !c.is_zero() {
                    f.add_term(crate::exterior::Blade::from_sorted(&[i, j]), R::from_rational(&-c));
                }
            }
        }
        f
    }

    /// Chevalley–Eilenberg differential on `∧• g*`.
    pub fn ce_differential<R: Coeff>(&self, a: &GradedForm<R>) -> Result<GradedForm<R>> {
        Error::check_dim(self.n, a.dim())?;
        let n = self.n;
        let generators: Vec<_> = (0..n).map(|k| self.d_generator(k)).collect();
        let mut out = GradedForm::zero(n);
        for (blade, coeff) in a.terms() {
            let idx: Vec<usize> = blade.indices().collect();
            for (s, &pos) in idx.iter().enumerate() {
                // θ_{i1} ∧ … ∧ dθ_{is} ∧ … with sign (-1)^s
                let mut term = GradedForm::scalar(n, coeff.clone());
                for (t, &other) in idx.iter().enumerate() {
                    let factor = if t == s {
                        generators[pos].clone()
                    } else {
                        GradedForm::basis(n, other)
                    };
                    term = term.wedge(&factor)?;
                    if term.is_zero() {
                        break;
                    }
                }
                if s % 2 == 1 {
                    term = term.neg();
                }
                out = out.add(&term)?;
            }
        }
        Ok(out)
    }

    fn check_covector(&self, xi: &Covector) -> Result<()> {
        Error::check_dim(self.n, xi.dim())?;
        if xi.is_zero() {
            return Err(Error::domain("covector must be nonzero"));
        }
        Ok(())
    }

    /// `d ξ` as a 2-form.
    pub fn d_covector(&self, xi: &Covector) -> GradedForm<BigRational> {
        self.ce_differential(&xi.as_form()).expect("dimension checked")
    }

    /// `ξ ∧ dξ` for the generic covector `ξ = Σ x_k θ_k`, with polynomial
    /// coefficients in `x_1..x_n`.
    pub fn generic_contact_form(&self) -> GradedForm<Poly> {
        let n = self.n;
        let mut xi = GradedForm::zero(n);
        for k in 0..n {
            xi.add_term(crate::exterior::Blade::single(k), Poly::var(k));
        }
        let dxi = self.ce_differential(&xi).expect("dimension matches");
        xi.wedge(&dxi).expect("dimension matches")
    }

    /// Skew matrix `A_ij = (dξ)(b_i, b_j) = -ξ([b_i, b_j])`.
    pub fn skew_matrix(&self, xi: &Covector) -> Matrix {
        let n = self.n;
        let mut m = linalg::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = (0..n).fold(BigRational::zero(), |acc, k| {
                    acc + &xi.0[k] * self.constant(i, j, k)
                });
                m[i][j] = -v;
            }
        }
        m
    }

    /// Height by iterated wedge powers until vanishing.
    pub fn height(&self, xi: &Covector) -> Result<usize> {
        self.require_valid()?;
        self.check_covector(xi)?;
        let omega = self.d_covector(xi);
        let mut acc = xi.as_form();
        let mut k = 0;
        loop {
            acc = acc.wedge(&omega)?;
            if acc.is_zero() {
                return Ok(k);
            }
            k += 1;
        }
    }

    /// Independent height oracle: half the rank of `dξ` restricted to
    /// `ker ξ`.
    pub fn height_by_rank(&self, xi: &Covector) -> Result<usize> {
        self.require_valid()?;
        self.check_covector(xi)?;
        let kernel = linalg::nullspace(&vec![xi.0.clone()], self.n);
        let a = self.skew_matrix(xi);
        let restricted = linalg::mat_mul(&linalg::mat_mul(&kernel, &a), &linalg::transpose(&kernel));
        let r = linalg::rank(&restricted);
        if r % 2 != 0 {
            return Err(Error::InvariantViolation(format!("odd rank {r} of a skew form")));
        }
        Ok(r / 2)
    }

    pub fn element_type(&self, xi: &Covector) -> Result<ElementType> {
        let k = self.height(xi)?;
        let power = self.d_covector(xi).wedge_power(k + 1);
        Ok(if power.is_zero() {
            ElementType::One
        } else {
            ElementType::Two
        })
    }

    /// Dimension of the coadjoint orbit through `ξ`: the rank of `dξ`.
    pub fn coadjoint_orbit_dim(&self, xi: &Covector) -> Result<usize> {
        self.require_valid()?;
        self.check_covector(xi)?;
        Ok(linalg::rank(&self.skew_matrix(xi)))
    }

    /// Whether `ξ` lies in `T_ξ O_ξ = {ad*_X ξ}`.
    pub fn radial_in_orbit(&self, xi: &Covector) -> Result<bool> {
        self.require_valid()?;
        self.check_covector(xi)?;
        // (ad*_X ξ)_j = -ξ([X, b_j]) = Σ_i X_i A_ij: the row space of A.
        Ok(linalg::in_row_space(&self.skew_matrix(xi), &xi.0))
    }

    pub fn height_report(&self, xi: &Covector) -> Result<HeightReport> {
        let height = self.height(xi)?;
        let by_rank = self.height_by_rank(xi)?;
        if by_rank != height {
            return Err(Error::InvariantViolation(format!(
                "height {height} by wedge powers but {by_rank} by rank at {xi}"
            )));
        }
        let element_type = self.element_type(xi)?;
        let report = HeightReport {
            height,
            element_type,
            cartan_class: 2 * height + element_type.code(),
            orbit_dim: self.coadjoint_orbit_dim(xi)?,
            radial_in_orbit: self.radial_in_orbit(xi)?,
        };
        report.check()?;
        Ok(report)
    }

    /// `B_ij = tr(ad_{b_i} ∘ ad_{b_j})`. Cached.
    pub fn killing_form(&self) -> &Matrix {
        self.killing.get_or_init(|| {
            let n = self.n;
            let mut b = linalg::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let mut acc = BigRational::zero();
                    for k in 0..n {
                        for l in 0..n {
                            let x = self.constant(i, k, l);
                            if x.is_zero() {
                                continue;
                            }
                            acc += x * self.constant(j, l, k);
                        }
                    }
                    b[i][j] = acc;
                }
            }
            b
        })
    }

    /// Whether the Killing form is negative definite (leading principal
    /// minors alternate in sign starting negative).
    pub fn killing_negative_definite(&self) -> bool {
        linalg::leading_principal_minors(self.killing_form())
            .iter()
            .enumerate()
            .all(|(k, m)| {
                use num_traits::Signed;
                if k % 2 == 0 {
                    m.is_negative()
                } else {
                    m.is_positive()
                }
            })
    }

    /// Row-reduced basis of `[g, g]`. Cached.
    pub fn derived_algebra(&self) -> &Matrix {
        self.derived.get_or_init(|| {
            let n = self.n;
            let mut rows = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let v: Vec<BigRational> = (0..n).map(|k| self.constant(i, j, k).clone()).collect();
                    if v.iter().any(|x| !x.is_zero()) {
                        rows.push(v);
                    }
                }
            }
            linalg::rref(&rows).0
        })
    }
}
