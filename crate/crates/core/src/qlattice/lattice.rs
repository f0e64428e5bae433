use std::fmt::Debug;
use std::io::Write;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{QError, Result};
use crate::qcore::{rational_from_f64, LaurentPoly, QParam, RatFn, Residual};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Bilateral geometric lattice `{±x0·qᵏ : kmin ≤ k ≤ kmax}`.
///
/// Larger `k` is closer to the origin, which is never a lattice point.
/// Multiplying a point by `q` moves it from shell `k` to shell `k+1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeoLattice {
    x0: f64,
    q: QParam,
    kmin: i32,
    kmax: i32,
}

impl GeoLattice {
    pub const DEFAULT_KMIN: i32 = -48;
    pub const DEFAULT_KMAX: i32 = 48;

    pub fn new(x0: f64, q: QParam, kmin: i32, kmax: i32) -> Result<Self> {
        if !(x0.is_finite() && x0 > 0.0) {
            return Err(QError::Domain(format!("lattice scale must be positive, got {x0}")));
        }
        if kmin > kmax {
            return Err(QError::Domain(format!("empty lattice window [{kmin}, {kmax}]")));
        }
        Ok(Self { x0, q, kmin, kmax })
    }

    pub fn with_default_window(x0: f64, q: QParam) -> Result<Self> {
        Self::new(x0, q, Self::DEFAULT_KMIN, Self::DEFAULT_KMAX)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn q(&self) -> QParam {
        self.q
    }

    pub fn kmin(&self) -> i32 {
        self.kmin
    }

    pub fn kmax(&self) -> i32 {
        self.kmax
    }

    /// Numeric value of `q`. Only meaningful for numeric lattices.
    pub fn qf(&self) -> f64 {
        self.q.value().expect("numeric lattice required")
    }

    /// Number of shells per sign branch.
    pub fn shells(&self) -> usize {
        (self.kmax - self.kmin + 1) as usize
    }

    pub fn len(&self) -> usize {
        2 * self.shells()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: i32) -> bool {
        (self.kmin..=self.kmax).contains(&k)
    }

    pub fn index(&self, sign: Sign, k: i32) -> Option<usize> {
        if !self.contains(k) {
            return None;
        }
        let off = (k - self.kmin) as usize;
        Some(match sign {
            Sign::Plus => off,
            Sign::Minus => self.shells() + off,
        })
    }

    pub fn point_at(&self, idx: usize) -> (Sign, i32) {
        let n = self.shells();
        if idx < n {
            (Sign::Plus, self.kmin + idx as i32)
        } else {
            (Sign::Minus, self.kmin + (idx - n) as i32)
        }
    }

    /// `|x| = x0·qᵏ` for a numeric lattice.
    pub fn abs_x(&self, k: i32) -> f64 {
        self.x0 * self.qf().powi(k)
    }

    pub fn x(&self, sign: Sign, k: i32) -> f64 {
        sign.factor() * self.abs_x(k)
    }

    /// All points, `+` branch first, each branch in ascending `k`.
    pub fn points(&self) -> impl Iterator<Item = (Sign, i32)> + '_ {
        Sign::BOTH
            .into_iter()
            .flat_map(move |s| (self.kmin..=self.kmax).map(move |k| (s, k)))
    }

    /// Same lattice with a narrower window.
    pub fn window(&self, kmin: i32, kmax: i32) -> Result<Self> {
        if kmin < self.kmin || kmax > self.kmax {
            return Err(QError::Boundary(format!(
                "window [{kmin}, {kmax}] exceeds lattice [{}, {}]",
                self.kmin, self.kmax
            )));
        }
        Self::new(self.x0, self.q, kmin, kmax)
    }

    /// Drops `outer` shells at the far end and `inner` shells near the origin.
    pub fn shrink(&self, outer: i32, inner: i32) -> Result<Self> {
        self.window(self.kmin + outer, self.kmax - inner)
    }

    /// True when both lattices place points at the same positions.
    pub fn same_grid(&self, other: &GeoLattice) -> bool {
        self.x0 == other.x0 && self.q == other.q
    }

    pub fn is_subwindow_of(&self, other: &GeoLattice) -> bool {
        self.same_grid(other) && self.kmin >= other.kmin && self.kmax <= other.kmax
    }
}

/// Values that can live on a lattice: complex floats, or rational functions
/// of a formal `q`.
pub trait LatticeScalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn half() -> Self;
    fn supports(q: &QParam) -> bool;
    /// Signed lattice point `±x0·qᵏ`.
    fn point(lattice: &GeoLattice, sign: Sign, k: i32) -> Self;
    fn q_power(lattice: &GeoLattice, e: i32) -> Self;
    fn is_zero(&self) -> bool;
    fn is_finite(&self) -> bool;
    fn to_residual(&self) -> Residual;
}

impl LatticeScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn half() -> Self {
        Complex64::new(0.5, 0.0)
    }
    fn supports(q: &QParam) -> bool {
        !q.is_exact()
    }
    fn point(lattice: &GeoLattice, sign: Sign, k: i32) -> Self {
        Complex64::new(lattice.x(sign, k), 0.0)
    }
    fn q_power(lattice: &GeoLattice, e: i32) -> Self {
        Complex64::new(lattice.qf().powi(e), 0.0)
    }
    fn is_zero(&self) -> bool {
        *self == Complex64::new(0.0, 0.0)
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn to_residual(&self) -> Residual {
        Residual::Float(self.norm())
    }
}

impl LatticeScalar for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn half() -> Self {
        RatFn::from_rational(BigRational::new(1.into(), 2.into()))
    }
    fn supports(q: &QParam) -> bool {
        q.is_exact()
    }
    fn point(lattice: &GeoLattice, sign: Sign, k: i32) -> Self {
        let x0 = rational_from_f64(lattice.x0()).expect("finite lattice scale");
        let c = match sign {
            Sign::Plus => x0,
            Sign::Minus => -x0,
        };
        RatFn::from_poly(LaurentPoly::monomial(c, k))
    }
    fn q_power(_lattice: &GeoLattice, e: i32) -> Self {
        RatFn::from_poly(LaurentPoly::q_pow(e))
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn to_residual(&self) -> Residual {
        match self.as_poly() {
            Some(p) => Residual::Exact(p.clone()),
            None => Residual::Exact(self.numerator().clone()),
        }
    }
}

/// A function sampled at every point of a lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeFn<T> {
    lattice: GeoLattice,
    values: Vec<T>,
}

impl<T: LatticeScalar> LatticeFn<T> {
    pub fn new(lattice: GeoLattice, values: Vec<T>) -> Result<Self> {
        if !T::supports(&lattice.q()) {
            return Err(QError::ModeMismatch);
        }
        if values.len() != lattice.len() {
            return Err(QError::Domain(format!(
                "expected {} samples, got {}",
                lattice.len(),
                values.len()
            )));
        }
        Ok(Self { lattice, values })
    }

    /// Samples `f(sign, k)` at every lattice point.
    pub fn tabulate(lattice: GeoLattice, f: impl Fn(Sign, i32) -> T) -> Result<Self> {
        let values = lattice.points().map(|(s, k)| f(s, k)).collect();
        Self::new(lattice, values)
    }

    pub fn zeros(lattice: GeoLattice) -> Result<Self> {
        Self::tabulate(lattice, |_, _| T::zero())
    }

    pub fn lattice(&self) -> &GeoLattice {
        &self.lattice
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn get(&self, sign: Sign, k: i32) -> Option<&T> {
        self.lattice.index(sign, k).map(|i| &self.values[i])
    }

    pub fn at(&self, sign: Sign, k: i32) -> Result<&T> {
        self.get(sign, k).ok_or_else(|| {
            QError::Boundary(format!(
                "no sample at shell {k} (window [{}, {}])",
                self.lattice.kmin(),
                self.lattice.kmax()
            ))
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (Sign, i32, &T)> {
        self.lattice.points().zip(self.values.iter()).map(|((s, k), v)| (s, k, v))
    }

    pub fn map(&self, f: impl Fn(Sign, i32, &T) -> T) -> Self {
        Self {
            lattice: self.lattice,
            values: self.iter().map(|(s, k, v)| f(s, k, v)).collect(),
        }
    }

    /// Pointwise combination of two functions on the same lattice.
    pub fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.lattice != other.lattice {
            return Err(QError::Domain("pointwise operation on different lattices".into()));
        }
        Ok(Self {
            lattice: self.lattice,
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|_, _, v| v.clone() * c.clone())
    }

    /// Restriction to a sub-window of the same grid.
    pub fn restrict(&self, window: &GeoLattice) -> Result<Self> {
        if !window.is_subwindow_of(&self.lattice) {
            return Err(QError::Boundary("restriction target is not a sub-window".into()));
        }
        Self::tabulate(*window, |s, k| self.get(s, k).expect("sub-window").clone())
    }

    /// Symmetric Jackson derivative at one point; needs shells `k±1`.
    pub fn d_sym_at(&self, sign: Sign, k: i32) -> Result<T> {
        let up = self.at(sign, k + 1)?.clone(); // f(qx)
        let down = self.at(sign, k - 1)?.clone(); // f(q⁻¹x)
        let step = T::q_power(&self.lattice, 1) - T::q_power(&self.lattice, -1);
        Ok((up - down) / (step * T::point(&self.lattice, sign, k)))
    }

    /// Asymmetric Jackson derivative at one point; needs shell `k+1`.
    pub fn d_asym_at(&self, sign: Sign, k: i32) -> Result<T> {
        let up = self.at(sign, k + 1)?.clone();
        let here = self.at(sign, k)?.clone();
        let step = T::q_power(&self.lattice, 1) - T::q_power(&self.lattice, 0);
        Ok((up - here) / (step * T::point(&self.lattice, sign, k)))
    }

    /// `D f` on the interior window `[kmin+1, kmax-1]`.
    pub fn d_sym(&self) -> Result<Self> {
        let inner = self.lattice.shrink(1, 1)?;
        let values = inner
            .points()
            .map(|(s, k)| self.d_sym_at(s, k))
            .collect::<Result<Vec<_>>>()?;
        Self::new(inner, values)
    }

    /// `D^q f` on the window `[kmin, kmax-1]`.
    pub fn d_asym(&self) -> Result<Self> {
        let inner = self.lattice.shrink(0, 1)?;
        let values = inner
            .points()
            .map(|(s, k)| self.d_asym_at(s, k))
            .collect::<Result<Vec<_>>>()?;
        Self::new(inner, values)
    }

    /// `f(-x)`.
    pub fn reflect(&self) -> Self {
        self.map(|s, k, _| self.get(s.flip(), k).expect("bilateral").clone())
    }
}

impl LatticeFn<Complex64> {
    /// Samples a closure of the (real) lattice coordinate.
    pub fn from_fn(lattice: GeoLattice, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        if lattice.q().is_exact() {
            return Err(QError::ModeMismatch);
        }
        Self::tabulate(lattice, |s, k| f(lattice.x(s, k)))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest magnitude on the outermost shell (`k = kmin`, both signs).
    pub fn outer_magnitude(&self) -> f64 {
        let k = self.lattice.kmin();
        Sign::BOTH
            .iter()
            .map(|&s| self.get(s, k).map_or(0.0, |v| v.norm()))
            .fold(0.0, f64::max)
    }

    /// Writes `sign,k,x,re,im` rows, `+` branch first.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["sign", "k", "x", "re", "im"])?;
        for (s, k, v) in self.iter() {
            w.write_record([
                s.symbol().to_string(),
                k.to_string(),
                self.lattice.x(s, k).to_string(),
                v.re.to_string(),
                v.im.to_string(),
            ])?;
        }
        w.flush()
    }
}

impl LatticeFn<RatFn> {
    pub fn from_rationals(lattice: GeoLattice, f: impl Fn(Sign, i32) -> BigRational) -> Result<Self> {
        Self::tabulate(lattice, |s, k| RatFn::from_rational(f(s, k)))
    }

    pub fn one(lattice: GeoLattice) -> Result<Self> {
        Self::from_rationals(lattice, |_, _| BigRational::one())
    }
}
