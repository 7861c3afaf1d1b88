//! Exact decision of constant height by structure, with a seeded sampling
//! falsifier that produces witness covectors when the structural tests fail.
//!
//! The constant-height algebras are exactly: abelian algebras (height 0),
//! `R ⋉ R^n` with `R` acting by scalars (height 0), and `so(3)` (height 1).

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{Covector, LieAlgebra};
use crate::linalg::{self, Matrix};
use crate::poly::rat;
use crate::sampling::{CovectorSampler, DEFAULT_RANGE};

pub const DEFAULT_SEED: u64 = 1729;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub covector: Covector,
    pub height: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "variant")]
pub enum ClassificationVerdict {
    Abelian {
        n: usize,
    },
    DiagonalAffine {
        n: usize,
        #[serde(serialize_with = "ser_vec")]
        generator: Vec<BigRational>,
        #[serde(serialize_with = "ser_matrix")]
        ideal: Matrix,
    },
    So3,
    NotConstantHeight {
        witnesses: [Witness; 2],
    },
}

fn ser_vec<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    Covector(v.to_vec()).serialize(s)
}

fn ser_matrix<S: serde::Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Covector> = m.iter().map(|r| Covector(r.clone())).collect();
    rows.serialize(s)
}

impl ClassificationVerdict {
    pub fn constant_height(&self) -> Option<usize> {
        match self {
            ClassificationVerdict::Abelian { .. } | ClassificationVerdict::DiagonalAffine { .. } => Some(0),
            ClassificationVerdict::So3 => Some(1),
            ClassificationVerdict::NotConstantHeight { .. } => None,
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            ClassificationVerdict::Abelian { .. } => "Abelian",
            ClassificationVerdict::DiagonalAffine { .. } => "DiagonalAffine",
            ClassificationVerdict::So3 => "So3",
            ClassificationVerdict::NotConstantHeight { .. } => "NotConstantHeight",
        }
    }

    pub fn witnesses(&self) -> Option<&[Witness; 2]> {
        match self {
            ClassificationVerdict::NotConstantHeight { witnesses } => Some(witnesses),
            _ => None,
        }
    }
}

/// Scaling generator (normalised so that `ad_X = id` on the ideal) and a
/// basis of the abelian ideal `[g, g]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalAffineData {
    pub generator: Vec<BigRational>,
    pub ideal: Matrix,
}

pub fn is_diagonal_affine(l: &LieAlgebra) -> Option<DiagonalAffineData> {
    let n = l.dim();
    let ideal = l.derived_algebra().clone();
    if ideal.is_empty() || ideal.len() + 1 != n {
        return None;
    }
    for a in 0..ideal.len() {
        for b in a + 1..ideal.len() {
            if l.bracket(&ideal[a], &ideal[b]).iter().any(|x| !x.is_zero()) {
                return None;
            }
        }
    }
    let x = linalg::complement_basis(&ideal, n).pop()?;
    let mut lambda: Option<BigRational> = None;
    for (idx, d) in ideal.iter().enumerate() {
        let image = l.bracket(&x, d);
        let coords = linalg::coordinates(&ideal, &image)?;
        for (j, c) in coords.iter().enumerate() {
            if j == idx {
                match &lambda {
                    None => lambda = Some(c.clone()),
                    Some(lam) if lam == c => {}
                    Some(_) => return None,
                }
            } else if !c.is_zero() {
                return None;
            }
        }
    }
    let lambda = lambda?;
    if lambda.is_zero() {
        return None;
    }
    let inv = lambda.recip();
    Some(DiagonalAffineData {
        generator: x.iter().map(|v| v * &inv).collect(),
        ideal,
    })
}

/// Witness search settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FalsifierConfig {
    pub seed: u64,
    /// Hard cap on random draws.
    pub max_samples: usize,
    pub initial_range: i64,
    /// The coefficient range doubles after this many draws.
    pub double_every: usize,
    /// Largest max-norm shell of integer covectors enumerated before random
    /// draws (0 disables).
    pub lattice_radius: i64,
    /// Disables the deterministic seed set (testing the random stage alone).
    pub use_seeds: bool,
}

impl Default for FalsifierConfig {
    fn default() -> Self {
        FalsifierConfig {
            seed: DEFAULT_SEED,
            max_samples: 10_000,
            initial_range: DEFAULT_RANGE,
            double_every: 2_000,
            lattice_radius: 3,
            use_seeds: true,
        }
    }
}

impl FalsifierConfig {
    pub fn with_seed(seed: u64) -> Self {
        FalsifierConfig {
            seed,
            ..Self::default()
        }
    }
}

/// Dual basis covectors, their pairwise sums and differences, and a basis of
/// the annihilator of `[g, g]`.
pub fn seed_covectors(l: &LieAlgebra) -> Vec<Covector> {
    let n = l.dim();
    let mut out: Vec<Covector> = (0..n).map(|i| Covector::dual_basis(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut s = vec![BigRational::zero(); n];
            s[i] = rat(1);
            s[j] = rat(1);
            out.push(Covector(s.clone()));
            s[j] = rat(-1);
            out.push(Covector(s));
        }
    }
    let derived = l.derived_algebra();
    if !derived.is_empty() {
        out.extend(linalg::nullspace(derived, n).into_iter().map(Covector));
    }
    out
}

/// Covectors `ξ = B X` for small rational Killing-isotropic `X`. These sit on
/// the cone of the dual form, where simple algebras such as `sl2` drop
/// height.
pub fn killing_isotropic_seeds(l: &LieAlgebra) -> Vec<Covector> {
    let b = l.killing_form();
    let n = l.dim();
    let Some((t, d)) = congruence_diagonalize(b) else {
        return Vec::new();
    };
    let nonzero: Vec<usize> = (0..n).filter(|&i| !d[i].is_zero()).collect();
    let mut out = Vec::new();
    for (ia, &a) in nonzero.iter().enumerate() {
        for (ib, &bb) in nonzero.iter().enumerate().skip(ia + 1) {
            // d_a y_a^2 + d_b y_b^2 = 0
            if d[a].is_positive() != d[bb].is_positive() {
                if let Some(r) = rational_sqrt(&(-(&d[a] / &d[bb]))) {
                    let mut y = vec![BigRational::zero(); n];
                    y[a] = rat(1);
                    y[bb] = r;
                    out.push(y);
                }
            }
            for &c in nonzero.iter().skip(ib + 1) {
                if let Some(y) = small_ternary_zero(&d[a], &d[bb], &d[c], 24) {
                    let mut v = vec![BigRational::zero(); n];
                    v[a] = y[0].clone();
                    v[bb] = y[1].clone();
                    v[c] = y[2].clone();
                    out.push(v);
                }
            }
        }
    }
    out.into_iter()
        .map(|y| linalg::mat_vec(&t, &y))
        .map(|x| Covector(linalg::mat_vec(b, &x)))
        .filter(|xi| !xi.is_zero())
        .collect()
}

/// Finds `t` invertible with `tᵀ b t = diag(d)`.
fn congruence_diagonalize(b: &Matrix) -> Option<(Matrix, Vec<BigRational>)> {
    let n = b.len();
    let mut a = b.clone();
    let mut t = linalg::identity(n);
    // Column operations on t mirror the symmetric row/column operations on a.
    for k in 0..n {
        if a[k][k].is_zero() {
            let pivot = (k + 1..n).find(|&j| !a[j][j].is_zero());
            if let Some(j) = pivot {
                swap_symmetric(&mut a, &mut t, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k += e_j makes the diagonal entry 2 a_kj + a_jj != 0.
                add_symmetric(&mut a, &mut t, k, j, &rat(1));
            }
        }
        if a[k][k].is_zero() {
            continue;
        }
        for j in k + 1..n {
            if !a[k][j].is_zero() {
                let f = -(&a[k][j] / &a[k][k]);
                add_symmetric(&mut a, &mut t, j, k, &f);
            }
        }
    }
    let d: Vec<BigRational> = (0..n).map(|i| a[i][i].clone()).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && !a[i][j].is_zero() {
                return None;
            }
        }
    }
    Some((t, d))
}

fn swap_symmetric(a: &mut Matrix, t: &mut Matrix, i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in t.iter_mut() {
        row.swap(i, j);
    }
}

/// Basis change `e_i ← e_i + f e_j`.
fn add_symmetric(a: &mut Matrix, t: &mut Matrix, i: usize, j: usize, f: &BigRational) {
    let n = a.len();
    for c in 0..n {
        let v = &a[j][c] * f;
        a[i][c] += v;
    }
    for r in 0..n {
        let v = &a[r][j] * f;
        a[r][i] += v;
    }
    for row in t.iter_mut() {
        let v = &row[j] * f;
        row[i] += v;
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// Small nontrivial rational zero of `a y0² + b y1² + c y2²`.
fn small_ternary_zero(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    bound: i64,
) -> Option<[BigRational; 3]> {
    for y0 in 0..=bound {
        for y1 in -bound..=bound {
            if y0 == 0 && y1 <= 0 {
                continue;
            }
            let (y0q, y1q) = (rat(y0), rat(y1));
            let partial = a * &y0q * &y0q + b * &y1q * &y1q;
            if let Some(y2) = rational_sqrt(&(-(partial / c))) {
                return Some([y0q, y1q, y2]);
            }
        }
    }
    None
}

/// Integer covectors with max-norm exactly `r`, in a fixed order.
fn lattice_shell(n: usize, r: i64) -> Vec<Covector> {
    let mut out = Vec::new();
    let mut cur = vec![-r; n];
    loop {
        if cur.iter().any(|c| c.abs() == r) {
            out.push(Covector::from_ints(&cur));
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            if cur[pos] < r {
                cur[pos] += 1;
                break;
            }
            cur[pos] = -r;
            pos += 1;
        }
    }
}

/// Searches for two covectors of different heights. `Ok(None)` means none
/// were found before the cap.
fn search_witnesses(l: &LieAlgebra, cfg: &FalsifierConfig) -> Result<Option<[Witness; 2]>> {
    let n = l.dim();
    let mut first: Option<Witness> = None;
    let mut visit = |xi: Covector| -> Result<Option<[Witness; 2]>> {
        let h = l.height(&xi)?;
        match &first {
            None => first = Some(Witness { covector: xi, height: h }),
            Some(w) if w.height != h => {
                let other = Witness { covector: xi, height: h };
                let pair = if w.height < h {
                    [w.clone(), other]
                } else {
                    [other, w.clone()]
                };
                return Ok(Some(pair));
            }
            Some(_) => {}
        }
        Ok(None)
    };
    if cfg.use_seeds {
        for xi in seed_covectors(l).into_iter().chain(killing_isotropic_seeds(l)) {
            if let Some(p) = visit(xi)? {
                return Ok(Some(p));
            }
        }
        if n <= 6 {
            for r in 1..=cfg.lattice_radius {
                for xi in lattice_shell(n, r) {
                    if let Some(p) = visit(xi)? {
                        return Ok(Some(p));
                    }
                }
            }
        }
    }
    let mut sampler = CovectorSampler::with_range(cfg.seed, cfg.initial_range);
    for s in 0..cfg.max_samples {
        if s > 0 && cfg.double_every > 0 && s % cfg.double_every == 0 {
            sampler.set_range(sampler.range() * 2);
        }
        if let Some(p) = visit(sampler.next_covector(n))? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

pub fn classify_constant_height(l: &LieAlgebra) -> Result<ClassificationVerdict> {
    classify_with(l, &FalsifierConfig::default())
}

pub fn classify_with(l: &LieAlgebra, cfg: &FalsifierConfig) -> Result<ClassificationVerdict> {
    l.require_valid()?;
    let n = l.dim();
    if l.is_abelian() {
        return Ok(ClassificationVerdict::Abelian { n });
    }
    if let Some(d) = is_diagonal_affine(l) {
        return Ok(ClassificationVerdict::DiagonalAffine {
            n: n - 1,
            generator: d.generator,
            ideal: d.ideal,
        });
    }
    if n == 3 && l.killing_negative_definite() {
        return Ok(ClassificationVerdict::So3);
    }
    match search_witnesses(l, cfg)? {
        Some(witnesses) => Ok(ClassificationVerdict::NotConstantHeight { witnesses }),
        None => Err(Error::WitnessNotFound {
            samples: cfg.max_samples,
        }),
    }
}

/// Observed heights with one representative covector and a count each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightSpectrum {
    pub samples: usize,
    pub heights: BTreeMap<usize, SpectrumEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub witness: Covector,
    pub count: usize,
}

impl HeightSpectrum {
    pub fn observed(&self) -> Vec<usize> {
        self.heights.keys().copied().collect()
    }
}

/// Heights over the deterministic seed set followed by `samples` random
/// draws from `seed`.
pub fn sample_height_spectrum(l: &LieAlgebra, samples: usize, seed: u64) -> Result<HeightSpectrum> {
    if samples == 0 {
        return Err(Error::domain("samples must be at least 1"));
    }
    l.require_valid()?;
    let n = l.dim();
    let mut sampler = CovectorSampler::new(seed);
    let all = seed_covectors(l)
        .into_iter()
        .chain((0..samples).map(|_| sampler.next_covector(n)));
    let mut heights: BTreeMap<usize, SpectrumEntry> = BTreeMap::new();
    let mut total = 0;
    for xi in all {
        let h = l.height(&xi)?;
        total += 1;
        heights
            .entry(h)
            .and_modify(|e| e.count += 1)
            .or_insert(SpectrumEntry { witness: xi, count: 1 });
    }
    Ok(HeightSpectrum {
        samples: total,
        heights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_io::catalog;

    #[test]
    fn structural_verdicts() {
        assert_eq!(classify_constant_height(&catalog::so3()).unwrap(), ClassificationVerdict::So3);
        assert_eq!(
            classify_constant_height(&catalog::abelian(4)).unwrap(),
            ClassificationVerdict::Abelian { n: 4 }
        );
        let v = classify_constant_height(&catalog::diagonal_affine(3)).unwrap();
        assert!(matches!(v, ClassificationVerdict::DiagonalAffine { n: 3, .. }));
        assert_eq!(v.constant_height(), Some(0));
    }

    #[test]
    fn sl2_witnesses_straddle_the_cone() {
        let sl2 = catalog::sl2();
        let v = classify_constant_height(&sl2).unwrap();
        let w = v.witnesses().expect("not constant");
        assert_eq!((w[0].height, w[1].height), (0, 1));
        for wi in w {
            assert_eq!(sl2.height(&wi.covector).unwrap(), wi.height);
        }
        let c = w[0].covector.components();
        assert_eq!(&c[0] * &c[0] + &c[1] * &c[1], &c[2] * &c[2]);
    }

    #[test]
    fn diagonal_affine_generator_is_normalised() {
        let d = is_diagonal_affine(&catalog::diagonal_affine(2)).unwrap();
        assert_eq!(d.generator, vec![rat(1), rat(0), rat(0)]);
        // Rescaled generator: [2X, e_i] = 2 e_i still normalises to lambda = 1.
        let scaled = crate::liealg::LieAlgebra::from_brackets(
            3,
            [(0, 1, 1, rat(2)), (0, 2, 2, rat(2))],
            None,
        )
        .unwrap();
        let d = is_diagonal_affine(&scaled).unwrap();
        assert_eq!(d.generator, vec![crate::poly::ratio(1, 2), rat(0), rat(0)]);
        assert!(is_diagonal_affine(&catalog::heis3()).is_none());
        assert!(is_diagonal_affine(&catalog::abelian(3)).is_none());
        assert!(is_diagonal_affine(&catalog::so3()).is_none());
    }

    #[test]
    fn non_scalar_action_is_rejected() {
        // [X, e1] = e1, [X, e2] = 2 e2
        let l = crate::liealg::LieAlgebra::from_brackets(
            3,
            [(0, 1, 1, rat(1)), (0, 2, 2, rat(2))],
            None,
        )
        .unwrap();
        assert!(is_diagonal_affine(&l).is_none());
        let v = classify_constant_height(&l).unwrap();
        assert!(v.witnesses().is_some());
    }

    #[test]
    fn spectra() {
        let s = sample_height_spectrum(&catalog::so3(), 100, 1729).unwrap();
        assert_eq!(s.observed(), vec![1]);
        let s = sample_height_spectrum(&catalog::heis3(), 100, 1729).unwrap();
        assert_eq!(s.observed(), vec![0, 1]);
        let s = sample_height_spectrum(&catalog::abelian(5), 20, 1729).unwrap();
        assert_eq!(s.observed(), vec![0]);
        assert!(sample_height_spectrum(&catalog::so3(), 0, 1).is_err());
    }

    #[test]
    fn killing_isotropic_seeds_of_sl2_lie_on_the_cone() {
        let sl2 = catalog::sl2();
        let seeds = killing_isotropic_seeds(&sl2);
        assert!(!seeds.is_empty());
        for xi in seeds {
            assert_eq!(sl2.height(&xi).unwrap(), 0);
        }
        assert!(killing_isotropic_seeds(&catalog::so3()).is_empty());
    }

    #[test]
    fn exhausted_search_reports_cap() {
        let cfg = FalsifierConfig {
            max_samples: 5,
            use_seeds: false,
            ..FalsifierConfig::default()
        };
        // Random draws almost never hit the sl2 cone.
        match classify_with(&catalog::sl2(), &cfg) {
            Err(Error::WitnessNotFound { samples: 5 }) => {}
            Ok(v) => assert!(v.witnesses().is_some()),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn lattice_shells() {
        assert_eq!(lattice_shell(2, 1).len(), 8);
        assert_eq!(lattice_shell(3, 2).len(), 125 - 27);
    }
}
