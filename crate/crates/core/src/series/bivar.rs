use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, One, Zero};

use super::{join_terms, term, Series, SeriesError};

/// Truncated series in `x` and `y`: `rows[i]` is the coefficient of `x^i`,
/// itself a series in `y`. Terms with x-degree above `x_order` or y-degree
/// above `y_order` are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarSeries {
    rows: Vec<Series>,
}

impl BivarSeries {
    pub fn zero(x_order: usize, y_order: usize) -> Self {
        BivarSeries {
            rows: vec![Series::zero(y_order); x_order + 1],
        }
    }

    pub fn one(x_order: usize, y_order: usize) -> Self {
        BivarSeries::monomial(0, 0, BigRational::one(), x_order, y_order)
    }

    pub fn monomial(i: usize, j: usize, c: BigRational, x_order: usize, y_order: usize) -> Self {
        let mut out = BivarSeries::zero(x_order, y_order);
        if i <= x_order && j <= y_order {
            out.rows[i] = Series::monomial(j, c, y_order);
        }
        out
    }

    pub fn x(x_order: usize, y_order: usize) -> Self {
        BivarSeries::monomial(1, 0, BigRational::one(), x_order, y_order)
    }

    pub fn y(x_order: usize, y_order: usize) -> Self {
        BivarSeries::monomial(0, 1, BigRational::one(), x_order, y_order)
    }

    /// Univariate series read as a series in `x`.
    pub fn from_x(s: &Series, y_order: usize) -> Self {
        BivarSeries {
            rows: s
                .coeffs()
                .iter()
                .map(|c| Series::constant(c.clone(), y_order))
                .collect(),
        }
    }

    /// Univariate series read as a series in `y`.
    pub fn from_y(s: &Series, x_order: usize) -> Self {
        let mut out = BivarSeries::zero(x_order, s.order());
        out.rows[0] = s.clone();
        out
    }

    pub fn x_order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn y_order(&self) -> usize {
        self.rows[0].order()
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.rows
            .get(i)
            .map(|r| r.coeff(j))
            .unwrap_or_else(BigRational::zero)
    }

    /// The polynomial in `y` multiplying `x^i`.
    pub fn row(&self, i: usize) -> &Series {
        &self.rows[i]
    }

    pub fn truncate(&self, x_order: usize, y_order: usize) -> Self {
        let mut rows: Vec<Series> = self
            .rows
            .iter()
            .take(x_order + 1)
            .map(|r| r.truncate(y_order))
            .collect();
        rows.resize(x_order + 1, Series::zero(y_order));
        BivarSeries { rows }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        BivarSeries {
            rows: self.rows.iter().map(|r| r.scale(c)).collect(),
        }
    }

    /// Divide by `x^k`; the rows below `k` must vanish.
    pub fn shift_x_down(&self, k: usize) -> Result<Self, SeriesError> {
        if let Some(i) = (0..k).find(|&i| !self.rows[i].is_zero()) {
            return Err(SeriesError::LowOrderNonzero {
                shift: k,
                degree: i,
                value: self.rows[i].to_string(),
            });
        }
        Ok(BivarSeries {
            rows: self.rows[k..].to_vec(),
        })
    }

    /// The constant-in-`x` part must be invertible as a series in `y`.
    pub fn div(&self, b: &BivarSeries) -> Result<Self, SeriesError> {
        let xo = self.x_order().min(b.x_order());
        let yo = self.y_order().min(b.y_order());
        let b0_inv = b.rows[0].truncate(yo).recip()?;
        let mut q: Vec<Series> = Vec::with_capacity(xo + 1);
        for n in 0..=xo {
            let mut acc = self.rows[n].truncate(yo);
            for k in 1..=n {
                if !b.rows[k].is_zero() {
                    acc = &acc - &(&b.rows[k] * &q[n - k]);
                }
            }
            q.push(&acc * &b0_inv);
        }
        Ok(BivarSeries { rows: q })
    }

    /// Square root with constant term 1.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let c = self.coeff(0, 0);
        if !c.is_one() {
            return Err(SeriesError::BadConstantTerm(c.to_string()));
        }
        let s0 = self.rows[0].sqrt()?;
        let two_s0_inv = s0.scale(&super::rat(2)).recip()?;
        let mut s: Vec<Series> = Vec::with_capacity(self.rows.len());
        s.push(s0);
        for n in 1..self.rows.len() {
            let mut acc = self.rows[n].clone();
            for k in 1..n {
                acc = &acc - &(&s[k] * &s[n - k]);
            }
            s.push(&acc * &two_s0_inv);
        }
        Ok(BivarSeries { rows: s })
    }

    /// `self(g(x, y), h(x, y))`. Exact under truncation only when `g` is
    /// divisible by `x` and `h` by `y`, so both are required.
    pub fn compose(&self, g: &BivarSeries, h: &BivarSeries) -> Result<Self, SeriesError> {
        let xo = self.x_order().min(g.x_order()).min(h.x_order());
        let yo = self.y_order().min(g.y_order()).min(h.y_order());
        let x_divides_g = g.rows[0].is_zero();
        let y_divides_h = h.rows.iter().all(|r| r.coeff(0).is_zero());
        if !x_divides_g || !y_divides_h {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let g = g.truncate(xo, yo);
        let h = h.truncate(xo, yo);
        let constant = |c: BigRational| BivarSeries::monomial(0, 0, c, xo, yo);
        // Horner in g over x-degree, and in h over y-degree within each row.
        let mut acc = BivarSeries::zero(xo, yo);
        for i in (0..=xo).rev() {
            let mut row = BivarSeries::zero(xo, yo);
            for j in (0..=yo).rev() {
                row = &(&row * &h) + &constant(self.coeff(i, j));
            }
            acc = &(&acc * &g) + &row;
        }
        Ok(acc)
    }

    /// Re-grade `x^a y^k` to `x^(a+k) y^k`: from "x counts non-fixed points,
    /// y counts fixed points" to "x counts length, y counts fixed points".
    /// Output x-order is `x_order`; every source term must fit.
    pub fn regrade_to_length(&self, x_order: usize) -> Self {
        let yo = self.y_order().min(x_order);
        let mut out = BivarSeries::zero(x_order, yo);
        for a in 0..=self.x_order() {
            for k in 0..=yo {
                if a + k <= x_order {
                    let c = self.coeff(a, k);
                    if !c.is_zero() {
                        out.rows[a + k] = &out.rows[a + k] + &Series::monomial(k, c, yo);
                    }
                }
            }
        }
        out
    }

    /// Substitute `y = 1`; each row's polynomial is summed.
    pub fn at_y_one(&self) -> Series {
        Series::from_coeffs(
            self.rows
                .iter()
                .map(|r| r.coeffs().iter().fold(BigRational::zero(), |a, c| a + c))
                .collect(),
        )
    }

    pub fn at_y_zero(&self) -> Series {
        Series::from_coeffs(self.rows.iter().map(|r| r.coeff(0)).collect())
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.rows.iter().all(Series::is_nonnegative_integral)
    }

    /// `[[c_00, c_01, ...], [c_10, ...], ...]` as exact strings, one array per x-degree.
    pub fn coeff_strings(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(Series::coeff_strings).collect()
    }

    /// One line per x-degree with a nonzero row: `x^4: 2 + 6*y^2 + y^4`.
    pub fn row_listing(&self) -> String {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(i, r)| format!("x^{i}: {}", r.to_string().replace('x', "y")))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for BivarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.coeffs().iter().enumerate() {
                let Some(t) = term(c, "y", j) else { continue };
                let xs = match i {
                    0 => String::new(),
                    1 => "x".into(),
                    _ => format!("x^{i}"),
                };
                terms.push(match (xs.is_empty(), j == 0, c.is_one()) {
                    (true, _, _) => t,
                    (false, true, true) => xs,
                    (false, true, false) => format!("{t}*{xs}"),
                    (false, false, _) => format!("{t}*{xs}"),
                });
            }
        }
        f.write_str(&join_terms(terms))
    }
}

impl Add for &BivarSeries {
    type Output = BivarSeries;
    fn add(self, rhs: &BivarSeries) -> BivarSeries {
        let xo = self.x_order().min(rhs.x_order());
        BivarSeries {
            rows: (0..=xo).map(|i| &self.rows[i] + &rhs.rows[i]).collect(),
        }
    }
}

impl Sub for &BivarSeries {
    type Output = BivarSeries;
    fn sub(self, rhs: &BivarSeries) -> BivarSeries {
        let xo = self.x_order().min(rhs.x_order());
        BivarSeries {
            rows: (0..=xo).map(|i| &self.rows[i] - &rhs.rows[i]).collect(),
        }
    }
}

impl Neg for &BivarSeries {
    type Output = BivarSeries;
    fn neg(self) -> BivarSeries {
        BivarSeries {
            rows: self.rows.iter().map(|r| -r).collect(),
        }
    }
}

impl Mul for &BivarSeries {
    type Output = BivarSeries;
    fn mul(self, rhs: &BivarSeries) -> BivarSeries {
        let xo = self.x_order().min(rhs.x_order());
        let yo = self.y_order().min(rhs.y_order());
        let mut rows = vec![Series::zero(yo); xo + 1];
        for i in 0..=xo {
            if self.rows[i].is_zero() {
                continue;
            }
            for j in 0..=xo - i {
                if !rhs.rows[j].is_zero() {
                    rows[i + j] = &rows[i + j] + &(&self.rows[i] * &rhs.rows[j]);
                }
            }
        }
        BivarSeries { rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn products_and_division() {
        let (xo, yo) = (6, 6);
        let x = BivarSeries::x(xo, yo);
        let y = BivarSeries::y(xo, yo);
        let xy = &x * &y;
        assert_eq!(xy.coeff(1, 1), rat(1));
        let one = BivarSeries::one(xo, yo);
        let geo = one.div(&(&one - &xy)).unwrap();
        for k in 0..=6 {
            assert_eq!(geo.coeff(k, k), rat(1));
        }
        assert_eq!(geo.coeff(2, 1), rat(0));
        assert_eq!(&geo * &(&one - &xy), one);
    }

    #[test]
    fn roots() {
        let (xo, yo) = (5, 5);
        let one = BivarSeries::one(xo, yo);
        let a = &one + &(&BivarSeries::x(xo, yo) * &BivarSeries::y(xo, yo)).scale(&rat(2));
        let a = &a + &BivarSeries::y(xo, yo).scale(&rat(3));
        let s = a.sqrt().unwrap();
        assert_eq!(&s * &s, a);
    }

    #[test]
    fn regrading() {
        let m = BivarSeries::monomial(4, 1, rat(2), 6, 6);
        let r = m.regrade_to_length(8);
        assert_eq!(r.coeff(5, 1), rat(2));
        assert_eq!(r.at_y_one().coeff(5), rat(2));
    }

    #[test]
    fn composing_with_geometric_substitutions() {
        let (xo, yo) = (6, 6);
        let one = BivarSeries::one(xo, yo);
        let y = BivarSeries::y(xo, yo);
        let x = BivarSeries::x(xo, yo);
        let fwd = y.div(&(&one - &y)).unwrap();
        let back = y.div(&(&one + &y)).unwrap();
        let f = &(&x * &y) + &y.scale(&rat(5));
        let round = f.compose(&x, &fwd).unwrap().compose(&x, &back).unwrap();
        assert_eq!(round, f);
        assert_eq!(f.compose(&one, &y), Err(SeriesError::NonzeroInnerConstant));
    }

    #[test]
    fn printing() {
        let s = &BivarSeries::one(3, 3) + &(&BivarSeries::x(3, 3) * &BivarSeries::y(3, 3));
        assert_eq!(s.to_string(), "1 + y*x");
        assert_eq!(s.row_listing(), "x^0: 1\nx^1: y");
    }
}
