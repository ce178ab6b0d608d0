//! Named generating functions for involutions avoiding 4321 or 3412 and their
//! subclasses, each derived by two independent routes that must agree.
//!
//! Conventions: `f` counts a whole class by length (no constant term), `α`
//! the inflations of 12, `β` the inflations of 21, `γ` simple involutions of
//! length > 2 and `δ` proper inflations of those. Bivariate functions in the
//! "length" convention use `x^n y^k` for length `n` with `k` fixed points; in
//! the "marked" convention `x^2` marks a transposition and `y` a fixed point.

use std::fmt;
use std::str::FromStr;

use num::BigRational;

use super::{rat, BivarSeries, Series, SeriesError};

fn poly(cs: &[i64], order: usize) -> Series {
    Series::from_ints(cs, order)
}

fn check_equal(what: &str, a: &Series, b: &Series) -> Result<(), SeriesError> {
    let order = a.order().min(b.order());
    match (0..=order).find(|&k| a.coeff(k) != b.coeff(k)) {
        None => Ok(()),
        Some(k) => Err(SeriesError::InternalMismatch {
            what: what.to_string(),
            at: format!("x^{k}: {} vs {}", a.coeff(k), b.coeff(k)),
        }),
    }
}

fn check_equal_bivar(what: &str, a: &BivarSeries, b: &BivarSeries) -> Result<(), SeriesError> {
    let xo = a.x_order().min(b.x_order());
    let yo = a.y_order().min(b.y_order());
    for i in 0..=xo {
        for j in 0..=yo {
            if a.coeff(i, j) != b.coeff(i, j) {
                return Err(SeriesError::InternalMismatch {
                    what: what.to_string(),
                    at: format!("x^{i} y^{j}: {} vs {}", a.coeff(i, j), b.coeff(i, j)),
                });
            }
        }
    }
    Ok(())
}

/// `√(1 − 2x − 3x²)` to `order`.
fn motzkin_radical(order: usize) -> Series {
    poly(&[1, -2, -3], order).sqrt().expect("constant term 1")
}

/// Involutions avoiding 4321 (equally 3412): `−1 + (1 − x − √(1−2x−3x²)) / (2x²)`.
pub fn gf_i4321(order: usize) -> Result<Series, SeriesError> {
    let wide = order + 2;
    let numerator = &poly(&[1, -1], wide) - &motzkin_radical(wide);
    let half = BigRational::new(1.into(), 2.into());
    let f = numerator.shift_down(2)?.scale(&half);
    Ok(&f - &Series::one(order))
}

/// Inflations of 21 inside I(4321): `x² / ((1 − x²)(1 − x))`.
pub fn gf_beta_i4321(order: usize) -> Result<Series, SeriesError> {
    let den = &poly(&[1, 0, -1], order) * &poly(&[1, -1], order);
    Series::monomial(2, rat(1), order).div(&den)
}

/// `γ + δ`, from the closed form
/// `¼(2 − 2/(x − 1)² − 3/(x − 1) − 2x − 1/(1 + x) − 2√(1 − 2x − 3x²))`
/// and from `(f + 1)x² − β`.
pub fn gf_gamma_plus_delta(order: usize) -> Result<Series, SeriesError> {
    let one = Series::one(order);
    let quarter = BigRational::new(1.into(), 4.into());
    let x_minus_one = poly(&[-1, 1], order);
    let closed = {
        let t1 = one.scale(&rat(2));
        let t2 = one.scale(&rat(2)).div(&(&x_minus_one * &x_minus_one))?;
        let t3 = one.scale(&rat(3)).div(&x_minus_one)?;
        let t4 = Series::monomial(1, rat(2), order);
        let t5 = one.div(&poly(&[1, 1], order))?;
        let t6 = motzkin_radical(order).scale(&rat(2));
        (&(&(&(&(&t1 - &t2) - &t3) - &t4) - &t5) - &t6).scale(&quarter)
    };
    let f = gf_i4321(order)?;
    let via_f = &(&f + &one).shift_up(2) - &gf_beta_i4321(order)?;
    check_equal(
        "gamma+delta closed form vs (f+1)x^2 - beta",
        &closed,
        &via_f,
    )?;
    Ok(via_f)
}

/// `1 − 2xy + x²y² − 4x²` under the square root in the bivariate Motzkin function.
fn bivar_radicand(xo: usize, yo: usize) -> BivarSeries {
    let x = BivarSeries::x(xo, yo);
    let y = BivarSeries::y(xo, yo);
    let xy = &x * &y;
    let one = BivarSeries::one(xo, yo);
    &(&(&one - &xy.scale(&rat(2))) + &(&xy * &xy)) - &(&x * &x).scale(&rat(4))
}

/// `(1 − xy − √(1 − 2xy + x²y² − 4x²)) / 2`, which is `x² f(x, y)`.
fn half_motzkin_numerator(xo: usize, yo: usize) -> Result<BivarSeries, SeriesError> {
    let x = BivarSeries::x(xo, yo);
    let y = BivarSeries::y(xo, yo);
    let one = BivarSeries::one(xo, yo);
    let root = bivar_radicand(xo, yo).sqrt()?;
    Ok((&(&one - &(&x * &y)) - &root).scale(&BigRational::new(1.into(), 2.into())))
}

/// Involutions avoiding 4321 by length and fixed points, including the empty
/// involution as the constant 1.
pub fn gf_f_xy(order: usize) -> Result<BivarSeries, SeriesError> {
    let wide = order + 2;
    let f = half_motzkin_numerator(wide, wide)?.shift_x_down(2)?;
    Ok(f.truncate(order, order))
}

/// Bivariate `β`: `x² / ((1 − x²)(1 − xy))`.
pub fn gf_beta_xy(order: usize) -> Result<BivarSeries, SeriesError> {
    let x = BivarSeries::x(order, order);
    let y = BivarSeries::y(order, order);
    let one = BivarSeries::one(order, order);
    let x2 = &x * &x;
    x2.div(&(&(&one - &x2) * &(&one - &(&x * &y))))
}

/// `(γ + δ)(x, y)` in the length convention.
pub fn gf_gamma_plus_delta_xy(order: usize) -> Result<BivarSeries, SeriesError> {
    let gd = &half_motzkin_numerator(order, order)? - &gf_beta_xy(order)?;
    let y_one = gd.at_y_one();
    check_equal(
        "gamma+delta(x, 1) vs gamma+delta(x)",
        &y_one,
        &gf_gamma_plus_delta(order)?,
    )?;
    Ok(gd)
}

/// `(γ + δ)(x, y)` in the marked convention:
/// `(1 − y − √((1 − y)² − 4x²))/2 − x²/((1 − x²)(1 − y))`.
/// Cross-checked by re-grading against the length convention.
pub fn gf_gamma_plus_delta_marked(order: usize) -> Result<BivarSeries, SeriesError> {
    let x = BivarSeries::x(order, order);
    let y = BivarSeries::y(order, order);
    let one = BivarSeries::one(order, order);
    let x2 = &x * &x;
    let one_minus_y = &one - &y;
    let root = (&(&one_minus_y * &one_minus_y) - &x2.scale(&rat(4))).sqrt()?;
    let first = (&one_minus_y - &root).scale(&BigRational::new(1.into(), 2.into()));
    let second = x2.div(&(&(&one - &x2) * &one_minus_y))?;
    let marked = &first - &second;
    check_equal_bivar(
        "marked gamma+delta regraded vs length convention",
        &marked.regrade_to_length(order),
        &gf_gamma_plus_delta_xy(order)?,
    )?;
    Ok(marked)
}

/// Simple involutions avoiding 4321 (length > 2), marked convention:
/// `½(1/(1+y) − 2x²(1+y) − √(−4 + 4/(1+x²) + 1/(1+y)²))`.
pub fn gf_gamma_xy(order: usize) -> Result<BivarSeries, SeriesError> {
    let x = BivarSeries::x(order, order);
    let y = BivarSeries::y(order, order);
    let one = BivarSeries::one(order, order);
    let x2 = &x * &x;
    let one_plus_y = &one + &y;
    let inv_1py = one.div(&one_plus_y)?;
    let radicand =
        &(&one.scale(&rat(-4)) + &one.scale(&rat(4)).div(&(&one + &x2))?) + &(&inv_1py * &inv_1py);
    let root = radicand.sqrt()?;
    let inner = &(&inv_1py - &(&x2 * &one_plus_y).scale(&rat(2))) - &root;
    Ok(inner.scale(&BigRational::new(1.into(), 2.into())))
}

/// Checks that inflating each transposition (`x² ↦ x²/(1−x²)`) and each fixed
/// point (`y ↦ y/(1−y)`) of `γ(x, y)` gives the marked `(γ + δ)(x, y)`, and
/// that the inverse substitutions recover `γ(x, y)`.
pub fn check_inflation_identity(order: usize) -> Result<(), SeriesError> {
    let gamma = gf_gamma_xy(order)?;
    let gd = gf_gamma_plus_delta_marked(order)?;
    let x = BivarSeries::x(order, order);
    let y = BivarSeries::y(order, order);
    let one = BivarSeries::one(order, order);
    let x2 = &x * &x;
    // x ↦ x/√(1 ∓ x²) acts as x² ↦ x²/(1 ∓ x²) on series even in x.
    let inflate_x = x.div(&(&one - &x2).sqrt()?)?;
    let inflate_y = y.div(&(&one - &y))?;
    let deflate_x = x.div(&(&one + &x2).sqrt()?)?;
    let deflate_y = y.div(&(&one + &y))?;
    check_equal_bivar(
        "gamma(x, y) inflated vs (gamma+delta)(x, y)",
        &gamma.compose(&inflate_x, &inflate_y)?,
        &gd,
    )?;
    check_equal_bivar(
        "(gamma+delta)(x, y) deflated vs gamma(x, y)",
        &gd.compose(&deflate_x, &deflate_y)?,
        &gamma,
    )
}

/// `γ(x)`: simple involutions avoiding 4321 by length, from the closed form
/// with `y := x` and from re-grading `γ(x, y)`.
pub fn gf_gamma_x(order: usize) -> Result<Series, SeriesError> {
    let one = Series::one(order);
    let x2 = Series::monomial(2, rat(1), order);
    let one_plus_x = poly(&[1, 1], order);
    let inv = one.div(&one_plus_x)?;
    let radicand =
        &(&one.scale(&rat(-4)) + &one.scale(&rat(4)).div(&(&one + &x2))?) + &(&inv * &inv);
    let closed = (&(&inv - &(&x2 * &one_plus_x).scale(&rat(2))) - &radicand.sqrt()?)
        .scale(&BigRational::new(1.into(), 2.into()));
    let regraded = gf_gamma_xy(order)?.regrade_to_length(order).at_y_one();
    check_equal(
        "gamma(x) closed form vs regraded gamma(x, y)",
        &closed,
        &regraded,
    )?;
    Ok(closed)
}

/// `δ = (γ + δ) − γ`.
pub fn gf_delta_i4321(order: usize) -> Result<Series, SeriesError> {
    Ok(&gf_gamma_plus_delta(order)? - &gf_gamma_x(order)?)
}

/// Components of a fine-structure system for one pattern class.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSolution {
    pub f: Series,
    pub alpha: Series,
    pub beta: Series,
    /// `γ + δ`, zero for classes without simple involutions of length > 2.
    pub gamma_delta: Series,
}

/// Iterate `state ↦ step(state)` from zero until it stops changing. Every
/// system here is a contraction in the x-adic sense, so at most `order + 2`
/// rounds are needed.
fn fixed_point(
    order: usize,
    step: impl Fn(&Series) -> Result<Series, SeriesError>,
) -> Result<Series, SeriesError> {
    let mut cur = Series::zero(order);
    for _ in 0..order + 3 {
        let next = step(&cur)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(SeriesError::InternalMismatch {
        what: "fixed-point iteration".into(),
        at: format!("no convergence within {} rounds", order + 3),
    })
}

fn geometric_x(order: usize) -> Result<Series, SeriesError> {
    // x / (1 − x)
    Series::x(order).div(&poly(&[1, -1], order))
}

/// System for I(4321): `f = x + α + β + (γ+δ)` with
/// `α = (x + β + γ + δ)(x + α + β + γ + δ)`, solved for `α` by iteration and
/// checked against `f` and against `α = A²/(1 − A)`, `A = x + β + γ + δ`.
pub fn system_i4321(order: usize) -> Result<SystemSolution, SeriesError> {
    let x = Series::x(order);
    let beta = gf_beta_i4321(order)?;
    let gamma_delta = gf_gamma_plus_delta(order)?;
    let a = &(&x + &beta) + &gamma_delta;
    let alpha = fixed_point(order, |alpha| Ok(&a * &(&a + alpha)))?;
    let closed_alpha = (&a * &a).div(&(&Series::one(order) - &a))?;
    check_equal("alpha by iteration vs A^2/(1-A)", &alpha, &closed_alpha)?;
    let f = &a + &alpha;
    check_equal(
        "x + alpha + beta + gamma + delta vs f",
        &f,
        &gf_i4321(order)?,
    )?;
    let sol = SystemSolution {
        f,
        alpha,
        beta,
        gamma_delta,
    };
    verify_system_i4321(&sol)?;
    Ok(sol)
}

/// Back-substitution of every equation of the I(4321) system.
pub fn verify_system_i4321(s: &SystemSolution) -> Result<(), SeriesError> {
    let order = s.f.order();
    let x = Series::x(order);
    let a = &(&x + &s.beta) + &s.gamma_delta;
    check_equal(
        "f = x + alpha + beta + gamma + delta",
        &s.f,
        &(&a + &s.alpha),
    )?;
    check_equal("f closed form", &s.f, &gf_i4321(order)?)?;
    check_equal("beta closed form", &s.beta, &gf_beta_i4321(order)?)?;
    check_equal(
        "alpha equation",
        &s.alpha,
        &(&a * &(&(&x + &s.alpha) + &(&s.beta + &s.gamma_delta))),
    )
}

/// The double-avoidance classes with a fine-structure system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AvoidanceSystem {
    /// I(4321, 132)
    I4321_132,
    /// I(4321, 312)
    I4321_312,
    /// I(3412, 123)
    I3412_123,
    /// I(3412, 1234)
    I3412_1234,
    /// I(3412, 132), and by the same equations I(3412, 213)
    I3412_132,
}

impl AvoidanceSystem {
    pub const ALL: [AvoidanceSystem; 5] = [
        AvoidanceSystem::I4321_132,
        AvoidanceSystem::I4321_312,
        AvoidanceSystem::I3412_123,
        AvoidanceSystem::I3412_1234,
        AvoidanceSystem::I3412_132,
    ];

    /// `(α, β)` as functions of the current `f`.
    fn components(self, f: &Series) -> Result<(Series, Series), SeriesError> {
        let order = f.order();
        let x = Series::x(order);
        let x2 = Series::monomial(2, rat(1), order);
        let geo = geometric_x(order)?;
        let beta_3412 = &(&x2 * f) + &x2;
        Ok(match self {
            AvoidanceSystem::I4321_132 => {
                let beta = gf_beta_i4321(order)?;
                (&(&x + &beta) * &geo, beta)
            }
            AvoidanceSystem::I4321_312 => {
                let beta = poly(&[0, 0, 1, 1], order);
                (&(&x + &beta) * f, beta)
            }
            AvoidanceSystem::I3412_123 => {
                let alpha = &(&x + &x2.div(&poly(&[1, -1], order))?) * &geo;
                (alpha, beta_3412)
            }
            AvoidanceSystem::I3412_1234 => {
                let g = AvoidanceSystem::I4321_132.closed_form(order)?;
                let bracket = &(&(&g * &x2) + &x2) - &x2.div(&poly(&[1, -1], order))?;
                let alpha = &(&bracket * &geo) + &(&geo * &g);
                (alpha, beta_3412)
            }
            AvoidanceSystem::I3412_132 => (&(&x + &beta_3412) * &geo, beta_3412),
        })
    }

    /// Rational closed form of `f`.
    pub fn closed_form(self, order: usize) -> Result<Series, SeriesError> {
        match self {
            AvoidanceSystem::I4321_132 | AvoidanceSystem::I3412_123 => {
                // −(x − x³ + x⁴) / ((−1 + x)³ (1 + x))
                let m1 = poly(&[-1, 1], order);
                let den = &(&(&m1 * &m1) * &m1) * &poly(&[1, 1], order);
                poly(&[0, -1, 0, 1, -1], order).div(&den)
            }
            AvoidanceSystem::I4321_312 => {
                poly(&[0, -1, -1, -1], order).div(&poly(&[-1, 1, 1, 1], order))
            }
            AvoidanceSystem::I3412_1234 => {
                // x(−1 + x + x² − 3x³ − x⁴ + 2x⁵ − x⁶) / ((−1 + x)⁵ (1 + x)²)
                let num = poly(&[0, -1, 1, 1, -3, -1, 2, -1], order);
                let den = &poly(&[-1, 1], order).pow(5) * &poly(&[1, 1], order).pow(2);
                num.div(&den)
            }
            AvoidanceSystem::I3412_132 => poly(&[0, 1, 1], order).div(&poly(&[1, -1, -1], order)),
        }
    }

    /// Solve `f = x + α(f) + β(f)` by iteration, back-substitute, and compare
    /// with the closed form.
    pub fn solve(self, order: usize) -> Result<SystemSolution, SeriesError> {
        let x = Series::x(order);
        let f = fixed_point(order, |f| {
            let (alpha, beta) = self.components(f)?;
            Ok(&(&x + &alpha) + &beta)
        })?;
        let (alpha, beta) = self.components(&f)?;
        let sol = SystemSolution {
            f,
            alpha,
            beta,
            gamma_delta: Series::zero(order),
        };
        self.verify(&sol)?;
        Ok(sol)
    }

    /// Every equation of the system holds exactly for `sol`, and `f` matches
    /// the closed form.
    pub fn verify(self, sol: &SystemSolution) -> Result<(), SeriesError> {
        let order = sol.f.order();
        let (alpha, beta) = self.components(&sol.f)?;
        check_equal(
            "f = x + alpha + beta",
            &sol.f,
            &(&(&Series::x(order) + &sol.alpha) + &sol.beta),
        )?;
        check_equal("alpha equation", &sol.alpha, &alpha)?;
        check_equal("beta equation", &sol.beta, &beta)?;
        check_equal(
            "system solution vs closed form",
            &sol.f,
            &self.closed_form(order)?,
        )
    }
}

pub fn gf_i4321_132(order: usize) -> Result<Series, SeriesError> {
    Ok(AvoidanceSystem::I4321_132.solve(order)?.f)
}

pub fn gf_i4321_312(order: usize) -> Result<Series, SeriesError> {
    Ok(AvoidanceSystem::I4321_312.solve(order)?.f)
}

pub fn gf_i3412_123(order: usize) -> Result<Series, SeriesError> {
    Ok(AvoidanceSystem::I3412_123.solve(order)?.f)
}

pub fn gf_i3412_1234(order: usize) -> Result<Series, SeriesError> {
    Ok(AvoidanceSystem::I3412_1234.solve(order)?.f)
}

pub fn gf_i3412_132(order: usize) -> Result<Series, SeriesError> {
    Ok(AvoidanceSystem::I3412_132.solve(order)?.f)
}

/// Every named generating function, as exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedSeries {
    I4321,
    AlphaI4321,
    BetaI4321,
    GammaPlusDelta,
    GammaX,
    DeltaI4321,
    I3412,
    I4321_132,
    I4321_312,
    I3412_123,
    I3412_1234,
    I3412_132,
    I3412_213,
    FXy,
    GammaPlusDeltaXy,
    GammaPlusDeltaMarked,
    GammaXy,
}

/// A named series expanded to some order.
#[derive(Debug, Clone, PartialEq)]
pub enum Expansion {
    Univariate(Series),
    Bivariate(BivarSeries),
}

impl NamedSeries {
    pub const ALL: [NamedSeries; 17] = [
        NamedSeries::I4321,
        NamedSeries::AlphaI4321,
        NamedSeries::BetaI4321,
        NamedSeries::GammaPlusDelta,
        NamedSeries::GammaX,
        NamedSeries::DeltaI4321,
        NamedSeries::I3412,
        NamedSeries::I4321_132,
        NamedSeries::I4321_312,
        NamedSeries::I3412_123,
        NamedSeries::I3412_1234,
        NamedSeries::I3412_132,
        NamedSeries::I3412_213,
        NamedSeries::FXy,
        NamedSeries::GammaPlusDeltaXy,
        NamedSeries::GammaPlusDeltaMarked,
        NamedSeries::GammaXy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedSeries::I4321 => "I4321",
            NamedSeries::AlphaI4321 => "alpha_I4321",
            NamedSeries::BetaI4321 => "beta_I4321",
            NamedSeries::GammaPlusDelta => "gamma_plus_delta",
            NamedSeries::GammaX => "gamma_x",
            NamedSeries::DeltaI4321 => "delta_I4321",
            NamedSeries::I3412 => "I3412",
            NamedSeries::I4321_132 => "I4321_132",
            NamedSeries::I4321_312 => "I4321_312",
            NamedSeries::I3412_123 => "I3412_123",
            NamedSeries::I3412_1234 => "I3412_1234",
            NamedSeries::I3412_132 => "I3412_132",
            NamedSeries::I3412_213 => "I3412_213",
            NamedSeries::FXy => "f_xy",
            NamedSeries::GammaPlusDeltaXy => "gamma_plus_delta_xy",
            NamedSeries::GammaPlusDeltaMarked => "gamma_plus_delta_marked",
            NamedSeries::GammaXy => "gamma_xy",
        }
    }

    pub fn is_bivariate(self) -> bool {
        matches!(
            self,
            NamedSeries::FXy
                | NamedSeries::GammaPlusDeltaXy
                | NamedSeries::GammaPlusDeltaMarked
                | NamedSeries::GammaXy
        )
    }

    pub fn expand(self, order: usize) -> Result<Expansion, SeriesError> {
        use Expansion::{Bivariate, Univariate};
        Ok(match self {
            NamedSeries::I4321 | NamedSeries::I3412 => Univariate(gf_i4321(order)?),
            NamedSeries::AlphaI4321 => Univariate(system_i4321(order)?.alpha),
            NamedSeries::BetaI4321 => Univariate(gf_beta_i4321(order)?),
            NamedSeries::GammaPlusDelta => Univariate(gf_gamma_plus_delta(order)?),
            NamedSeries::GammaX => Univariate(gf_gamma_x(order)?),
            NamedSeries::DeltaI4321 => Univariate(gf_delta_i4321(order)?),
            NamedSeries::I4321_132 => Univariate(gf_i4321_132(order)?),
            NamedSeries::I4321_312 => Univariate(gf_i4321_312(order)?),
            NamedSeries::I3412_123 => Univariate(gf_i3412_123(order)?),
            NamedSeries::I3412_1234 => Univariate(gf_i3412_1234(order)?),
            NamedSeries::I3412_132 | NamedSeries::I3412_213 => Univariate(gf_i3412_132(order)?),
            NamedSeries::FXy => Bivariate(gf_f_xy(order)?),
            NamedSeries::GammaPlusDeltaXy => Bivariate(gf_gamma_plus_delta_xy(order)?),
            NamedSeries::GammaPlusDeltaMarked => Bivariate(gf_gamma_plus_delta_marked(order)?),
            NamedSeries::GammaXy => Bivariate(gf_gamma_xy(order)?),
        })
    }
}

impl fmt::Display for NamedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedSeries {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedSeries::ALL
            .into_iter()
            .find(|n| n.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SeriesError::UnknownSeries(s.to_string()))
    }
}
