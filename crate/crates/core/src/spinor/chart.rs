use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::GradedForm;
use crate::poly::{Poly, PolyRing};

/// Standard chart `U_i` of the blowup along `{x_v = 0 : v ∈ normal}`.
///
/// Variables and form indices coincide: variable `v` is the coordinate
/// whose differential is `dx_v`. Normal variables other than the chart
/// variable become `x_v = x̃_i x̃_v`; the chart variable and all other
/// (base) variables are unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupChart {
    nvars: usize,
    normal: Vec<usize>,
    chart: usize,
}

impl BlowupChart {
    pub fn new(nvars: usize, mut normal: Vec<usize>, chart: usize) -> Result<Self> {
        normal.sort_unstable();
        normal.dedup();
        if normal.is_empty() {
            return Err(Error::domain("blowup centre needs at least one normal variable"));
        }
        if let Some(&v) = normal.iter().find(|&&v| v >= nvars) {
            return Err(Error::IndexRange(format!("normal variable {} of {nvars}", v + 1)));
        }
        if !normal.contains(&chart) {
            return Err(Error::domain(format!(
                "chart index {} is not a normal direction",
                chart + 1
            )));
        }
        Ok(BlowupChart { nvars, normal, chart })
    }

    /// Chart `i` (0-based) of the blowup of `R^m` at the origin.
    pub fn origin(m: usize, i: usize) -> Result<Self> {
        if i >= m {
            return Err(Error::domain(format!("chart {} out of range 1..={m}", i + 1)));
        }
        BlowupChart::new(m, (0..m).collect(), i)
    }

    /// Chart `i` of the blowup of `R^m × R^b` along the zero section
    /// `{0} × R^b`.
    pub fn zero_section(m: usize, b: usize, i: usize) -> Result<Self> {
        if i >= m {
            return Err(Error::domain(format!("chart {} out of range 1..={m}", i + 1)));
        }
        BlowupChart::new(m + b, (0..m).collect(), i)
    }

    pub fn all(nvars: usize, normal: &[usize]) -> Result<Vec<Self>> {
        normal
            .iter()
            .map(|&i| BlowupChart::new(nvars, normal.to_vec(), i))
            .collect()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn normal(&self) -> &[usize] {
        &self.normal
    }

    pub fn codim(&self) -> usize {
        self.normal.len()
    }

    /// The variable whose vanishing defines the divisor in this chart.
    pub fn chart_var(&self) -> usize {
        self.chart
    }

    /// Variables left untouched by the blowdown.
    pub fn base_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|v| !self.normal.contains(v)).collect()
    }

    /// Images of the ambient coordinates under the blowdown map.
    pub fn substitution(&self) -> Vec<Poly> {
        let t = Poly::var(self.chart);
        (0..self.nvars)
            .map(|v| {
                if v != self.chart && self.normal.contains(&v) {
                    &t * &Poly::var(v)
                } else {
                    Poly::var(v)
                }
            })
            .collect()
    }

    pub fn pull_poly(&self, p: &Poly) -> Poly {
        p.substitute(&self.substitution())
    }

    /// `p*(dx_v)` as a 1-form.
    pub fn pull_differential(&self, v: usize) -> GradedForm<Poly> {
        let image = &self.substitution()[v];
        let mut f = GradedForm::zero(self.nvars);
        for w in 0..self.nvars {
            let d = image.derivative(w);
            if !d.is_zero() {
                f = f
                    .add(&GradedForm::monomial(self.nvars, &[w], d).expect("in range"))
                    .expect("same dimension");
            }
        }
        f
    }

    /// Names for chart coordinates: `~x1` for normal variables, given names
    /// otherwise.
    pub fn chart_names(&self, ring: &PolyRing) -> Vec<String> {
        ring.names()
            .iter()
            .enumerate()
            .map(|(v, name)| {
                if self.normal.contains(&v) {
                    format!("~{name}")
                } else {
                    name.clone()
                }
            })
            .collect()
    }
}

impl fmt::Display for BlowupChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U_{}", self.chart + 1)
    }
}

use num_traits::Zero;

/// A polynomial form written in the coordinates of a chart.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartForm {
    pub chart: BlowupChart,
    pub form: GradedForm<Poly>,
}

impl ChartForm {
    pub fn display(&self, ring: &PolyRing) -> String {
        let names = self.chart.chart_names(ring);
        let coeff = |p: &Poly| p.display_with(&names).to_string();
        let dnames: Vec<String> = names.iter().map(|n| format!("d{n}")).collect();
        self.form.display_named(&coeff, &dnames).to_string()
    }
}

/// `p*` of an ambient polynomial form into the given chart.
pub fn blowup_pullback(form: &GradedForm<Poly>, chart: &BlowupChart) -> Result<ChartForm> {
    Error::check_dim(chart.nvars(), form.dim())?;
    let n = chart.nvars();
    let subst = chart.substitution();
    let differentials: Vec<GradedForm<Poly>> = (0..n).map(|v| chart.pull_differential(v)).collect();
    let mut out = GradedForm::zero(n);
    for (blade, c) in form.terms() {
        let mut term = GradedForm::scalar(n, c.substitute(&subst));
        for v in blade.indices() {
            term = term.wedge(&differentials[v])?;
        }
        out = out.add(&term)?;
    }
    Ok(ChartForm {
        chart: chart.clone(),
        form: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_io::catalog;
    use crate::poly::rat;
    use crate::spinor::{linear_poisson, spinor, volume};

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }

    fn one() -> Poly {
        Poly::constant(rat(1))
    }

    fn dx(n: usize, idx: &[usize], c: Poly) -> GradedForm<Poly> {
        GradedForm::monomial(n, idx, c).unwrap()
    }

    #[test]
    fn differential_pullback() {
        let c = BlowupChart::origin(3, 0).unwrap();
        // p*(dx2) = ~x1 d~x2 + ~x2 d~x1
        let expected = dx(3, &[1], x(0)).add(&dx(3, &[0], x(1))).unwrap();
        assert_eq!(c.pull_differential(1), expected);
        assert_eq!(c.pull_differential(0), dx(3, &[0], one()));
    }

    #[test]
    fn so3_spinor_in_each_chart() {
        let phi = spinor(&linear_poisson(&catalog::so3()).unwrap(), &volume(3)).unwrap();
        for i in 0..3 {
            let c = BlowupChart::origin(3, i).unwrap();
            let got = blowup_pullback(&phi, &c).unwrap().form;
            let t = x(i);
            let mut sum_sq = one();
            let mut expected = GradedForm::zero(3);
            for j in (0..3).filter(|&j| j != i) {
                sum_sq = sum_sq + x(j).pow(2);
                expected = expected.add(&dx(3, &[j], t.pow(2) * x(j))).unwrap();
            }
            expected = expected
                .add(&dx(3, &[i], t.clone() * sum_sq))
                .unwrap()
                .add(&dx(3, &[0, 1, 2], t.pow(2)))
                .unwrap();
            assert_eq!(got, expected, "chart {}", i + 1);
        }
    }

    #[test]
    fn chart_validation() {
        assert!(BlowupChart::origin(3, 3).is_err());
        assert!(BlowupChart::new(4, vec![0, 1], 2).is_err());
        assert!(BlowupChart::new(2, vec![0, 5], 0).is_err());
        let c = BlowupChart::zero_section(3, 2, 1).unwrap();
        assert_eq!(c.base_vars(), vec![3, 4]);
        assert_eq!(c.substitution()[4], x(4));
        assert_eq!(c.substitution()[2], x(1) * x(2));
    }

    #[test]
    fn pullback_rejects_wrong_dimension() {
        let c = BlowupChart::origin(3, 0).unwrap();
        assert!(blowup_pullback(&volume(4), &c).is_err());
    }

    #[test]
    fn chart_display_names() {
        let c = BlowupChart::zero_section(3, 2, 0).unwrap();
        let ring = PolyRing::fibre_and_base(3, 2);
        let names = c.chart_names(&ring);
        assert_eq!(names, vec!["~x1", "~x2", "~x3", "y1", "y2"]);
        let cf = blowup_pullback(&dx(5, &[1], one()), &c).unwrap();
        assert_eq!(cf.display(&ring), "~x2*d~x1 + ~x1*d~x2");
    }
}
