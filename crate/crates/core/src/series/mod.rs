//! Truncated formal power series with exact rational coefficients.
//!
//! A [`Series`] of order `N` stores `c_0 ..= c_N`; every binary operation
//! truncates to the smaller operand order. [`BivarSeries`] stores, for each
//! power of `x` up to its x-order, a [`Series`] in `y` of a common y-order.

mod bivar;
pub mod gf;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

pub use bivar::BivarSeries;

/// Default truncation order for named generating functions.
pub const DEFAULT_ORDER: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a series with zero constant term")]
    DivisionByNonUnit,
    #[error("square root needs constant term 1, found {0}")]
    BadConstantTerm(String),
    #[error("composition needs an inner series with zero constant term")]
    NonzeroInnerConstant,
    #[error("cannot divide by x^{shift}: coefficient of x^{degree} is {value}")]
    LowOrderNonzero {
        shift: usize,
        degree: usize,
        value: String,
    },
    #[error("{what}: two derivations disagree at {at}")]
    InternalMismatch { what: String, at: String },
    #[error("unknown series {0:?}")]
    UnknownSeries(String),
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Series::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * x^k`, or zero if `k > order`.
    pub fn monomial(k: usize, c: BigRational, order: usize) -> Self {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn x(order: usize) -> Self {
        Series::monomial(1, BigRational::one(), order)
    }

    /// Integer coefficients `c_0, c_1, ...`, padded with zeros (or truncated) to `order`.
    pub fn from_ints(cs: &[i64], order: usize) -> Self {
        let mut s = Series::zero(order);
        for (slot, &c) in s.coeffs.iter_mut().zip(cs) {
            *slot = rat(c);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least c_0");
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; zero beyond the stored order.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, order: usize) -> Series {
        let mut coeffs: Vec<BigRational> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, BigRational::zero());
        Series { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut out = Series::zero(self.order());
        for i in k..=self.order() {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Divide by `x^k`. The `k` lowest coefficients must vanish; the order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Series, SeriesError> {
        if let Some((degree, value)) = self
            .coeffs
            .iter()
            .take(k)
            .enumerate()
            .find(|(_, c)| !c.is_zero())
        {
            return Err(SeriesError::LowOrderNonzero {
                shift: k,
                degree,
                value: value.to_string(),
            });
        }
        assert!(k <= self.order(), "shift past the truncation order");
        Ok(Series {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn div(&self, b: &Series) -> Result<Series, SeriesError> {
        let b0 = &b.coeffs[0];
        if b0.is_zero() {
            return Err(SeriesError::DivisionByNonUnit);
        }
        let order = self.order().min(b.order());
        let inv_b0 = b0.recip();
        let mut q: Vec<BigRational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                if !b.coeffs[k].is_zero() {
                    acc -= &b.coeffs[k] * &q[n - k];
                }
            }
            q.push(acc * &inv_b0);
        }
        Ok(Series { coeffs: q })
    }

    pub fn recip(&self) -> Result<Series, SeriesError> {
        Series::one(self.order()).div(self)
    }

    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::BadConstantTerm(self.coeffs[0].to_string()));
        }
        let order = self.order();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut s: Vec<BigRational> = Vec::with_capacity(order + 1);
        s.push(BigRational::one());
        for n in 1..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                acc -= &s[k] * &s[n - k];
            }
            s.push(acc * &half);
        }
        Ok(Series { coeffs: s })
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Series) -> Result<Series, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Series::constant(self.coeffs[order].clone(), order);
        for k in (0..order).rev() {
            acc = &(&acc * &inner) + &Series::constant(self.coeffs[k].clone(), order);
        }
        Ok(acc)
    }

    pub fn pow(&self, e: usize) -> Series {
        let mut out = Series::one(self.order());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Integer coefficients, or `None` if some coefficient is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Coefficients as exact strings: `"12"` or `"-3/4"`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

pub(crate) fn term(c: &BigRational, var: &str, k: usize) -> Option<String> {
    if c.is_zero() {
        return None;
    }
    let power = match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    };
    Some(if power.is_empty() {
        c.to_string()
    } else if c.is_one() {
        power
    } else if c.is_integer() {
        format!("{c}*{power}")
    } else {
        format!("({c})*{power}")
    })
}

pub(crate) fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

/// `c0 + c1*x + c2*x^2 + ...`, zero terms omitted.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(k, c)| term(c, "x", k))
            .collect();
        f.write_str(&join_terms(terms))
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] - &rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        &self + &rhs
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        &self - &rhs
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        &self * &rhs
    }
}
