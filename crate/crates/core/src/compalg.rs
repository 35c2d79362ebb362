//! Split octonions as Zorn vector matrices over `M_2(k)`, and the Albert algebra
//! `H(C; Γ)` of Γ-hermitian 3×3 octonion matrices with its Jordan product and
//! quadratic form. Coefficients live in ℚ or in `F_p` with `p >= 5`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompalgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gamma entries must be nonzero")]
    ZeroGamma,
    #[error("operands have different gamma")]
    GammaMismatch,
    #[error("matrix is not fixed by the Γ-involution (entry {0},{1})")]
    NotHermitian(usize, usize),
    #[error("E0 is only provided for gamma = (1, -1, 1), got {0}")]
    UnsupportedGamma(String),
    #[error("expected a scalar octonion, got {0}")]
    NotScalar(String),
}

/// Exact coefficient field of characteristic 0 or at least 5.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn name() -> String;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self, CompalgError>;
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn div(&self, other: &Self) -> Result<Self, CompalgError> {
        Ok(self.clone() * other.inv()?)
    }

    fn half() -> Self {
        Self::from_i64(2).inv().expect("characteristic is not 2")
    }
}

pub type Rational = BigRational;

impl Field for BigRational {
    fn name() -> String {
        "Q".to_string()
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Result<Self, CompalgError> {
        if Zero::is_zero(self) {
            return Err(CompalgError::DivisionByZero);
        }
        Ok(self.recip())
    }
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let num: i64 = rng.gen_range(-20..=20);
        let den: i64 = rng.gen_range(1..=9);
        BigRational::new(num.into(), den.into())
    }
}

const fn is_small_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of `F_P`. `P` must be a prime of at least 5 and below `2^32`;
/// other values fail to compile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const VALID: () = assert!(P >= 5 && P < (1 << 32) && is_small_prime(P), "modulus must be a prime >= 5");

    pub fn new(n: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp(n.rem_euclid(P as i64) as u64)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn name() -> String {
        format!("F_{P}")
    }
    fn zero() -> Self {
        Fp::new(0)
    }
    fn one() -> Self {
        Fp::new(1)
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Result<Self, CompalgError> {
        if self.0 == 0 {
            return Err(CompalgError::DivisionByZero);
        }
        Ok(self.pow(P - 2))
    }
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp::new(rng.gen_range(0..P) as i64)
    }
}

/// 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Field> M2<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Self {
        M2 { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::scalar(F::zero())
    }

    pub fn identity() -> Self {
        Self::scalar(F::one())
    }

    pub fn scalar(s: F) -> Self {
        M2::new(s.clone(), F::zero(), F::zero(), s)
    }

    pub fn det(&self) -> F {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// The adjugate `[[d, -b], [-c, a]]`.
    pub fn bar(&self) -> Self {
        M2::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        M2::new(
            s.clone() * self.a.clone(),
            s.clone() * self.b.clone(),
            s.clone() * self.c.clone(),
            s.clone() * self.d.clone(),
        )
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        M2::new(F::random(rng), F::random(rng), F::random(rng), F::random(rng))
    }

    fn entries(&self) -> [F; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }
}

impl<F: Field> Add for &M2<F> {
    type Output = M2<F>;
    fn add(self, o: &M2<F>) -> M2<F> {
        M2::new(
            self.a.clone() + o.a.clone(),
            self.b.clone() + o.b.clone(),
            self.c.clone() + o.c.clone(),
            self.d.clone() + o.d.clone(),
        )
    }
}

impl<F: Field> Mul for &M2<F> {
    type Output = M2<F>;
    fn mul(self, o: &M2<F>) -> M2<F> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        M2::new(
            a.clone() * e.clone() + b.clone() * g.clone(),
            a.clone() * f.clone() + b.clone() * h.clone(),
            c.clone() * e.clone() + d.clone() * g.clone(),
            c.clone() * f.clone() + d.clone() * h.clone(),
        )
    }
}

impl<F: Field> Neg for &M2<F> {
    type Output = M2<F>;
    fn neg(self) -> M2<F> {
        M2::new(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }
}

/// Split octonion `(x, y)` with `x, y ∈ M_2(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Octonion<F> {
    pub x: M2<F>,
    pub y: M2<F>,
}

impl<F: Field> Octonion<F> {
    pub fn new(x: M2<F>, y: M2<F>) -> Self {
        Octonion { x, y }
    }

    pub fn zero() -> Self {
        Octonion::new(M2::zero(), M2::zero())
    }

    pub fn unit() -> Self {
        Self::scalar(F::one())
    }

    pub fn scalar(s: F) -> Self {
        Octonion::new(M2::scalar(s), M2::zero())
    }

    /// `(x, y)(u, v) = (xu + v̄y, vx + yū)`.
    pub fn mul(&self, o: &Octonion<F>) -> Octonion<F> {
        let x = &(&self.x * &o.x) + &(&o.y.bar() * &self.y);
        let y = &(&o.y * &self.x) + &(&self.y * &o.x.bar());
        Octonion::new(x, y)
    }

    pub fn add(&self, o: &Octonion<F>) -> Octonion<F> {
        Octonion::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Octonion<F>) -> Octonion<F> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Octonion<F> {
        Octonion::new(-&self.x, -&self.y)
    }

    pub fn scale(&self, s: &F) -> Octonion<F> {
        Octonion::new(self.x.scale(s), self.y.scale(s))
    }

    pub fn norm(&self) -> F {
        self.x.det() - self.y.det()
    }

    pub fn conj(&self) -> Octonion<F> {
        Octonion::new(self.x.bar(), -&self.y)
    }

    /// `Some(s)` when the element is `s·1`.
    pub fn as_scalar(&self) -> Option<F> {
        let s = self.x.a.clone();
        (*self == Self::scalar(s.clone())).then_some(s)
    }

    pub fn coords(&self) -> [F; 8] {
        let [a, b, c, d] = self.x.entries();
        let [e, f, g, h] = self.y.entries();
        [a, b, c, d, e, f, g, h]
    }

    pub fn from_coords(c: [F; 8]) -> Self {
        let [a, b, cc, d, e, f, g, h] = c;
        Octonion::new(M2::new(a, b, cc, d), M2::new(e, f, g, h))
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Octonion::new(M2::random(rng), M2::random(rng))
    }
}

impl<F: Field> fmt::Display for Octonion<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, g, h, i] = self.coords();
        write!(f, "([[{a},{b}],[{c},{d}]], [[{e},{g}],[{h},{i}]])")
    }
}

pub fn oct_mul<F: Field>(a: &Octonion<F>, b: &Octonion<F>) -> Octonion<F> {
    a.mul(b)
}

pub fn oct_norm<F: Field>(a: &Octonion<F>) -> F {
    a.norm()
}

pub fn oct_conj<F: Field>(a: &Octonion<F>) -> Octonion<F> {
    a.conj()
}

/// Element of `H(C; Γ)`: a 3×3 octonion matrix fixed by `X ↦ Γ⁻¹ ᵗX̄ Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlbertElement<F> {
    m: [[Octonion<F>; 3]; 3],
    gamma: [F; 3],
}

fn check_gamma<F: Field>(gamma: &[F; 3]) -> Result<(), CompalgError> {
    if gamma.iter().any(|g| g.is_zero()) {
        return Err(CompalgError::ZeroGamma);
    }
    Ok(())
}

impl<F: Field> AlbertElement<F> {
    /// Checks the involution invariant entry by entry.
    pub fn new(m: [[Octonion<F>; 3]; 3], gamma: [F; 3]) -> Result<Self, CompalgError> {
        check_gamma(&gamma)?;
        for i in 0..3 {
            for j in 0..3 {
                let fixed = m[j][i].conj().scale(&gamma[j].div(&gamma[i])?);
                if fixed != m[i][j] {
                    return Err(CompalgError::NotHermitian(i + 1, j + 1));
                }
            }
        }
        Ok(AlbertElement { m, gamma })
    }

    /// The matrix with diagonal `x` and off-diagonal coordinates `c = (c1, c2, c3)`
    /// sitting at positions (2,3), (3,1), (1,2).
    pub fn from_coords(gamma: [F; 3], x: [F; 3], c: [Octonion<F>; 3]) -> Result<Self, CompalgError> {
        check_gamma(&gamma)?;
        let [g1, g2, g3] = gamma.clone();
        let [x1, x2, x3] = x;
        let [c1, c2, c3] = c;
        let m = [
            [
                Octonion::scalar(x1),
                c3.clone(),
                c2.conj().scale(&g3.div(&g1)?),
            ],
            [
                c3.conj().scale(&g1.div(&g2)?),
                Octonion::scalar(x2),
                c1.clone(),
            ],
            [c2, c1.conj().scale(&g2.div(&g3)?), Octonion::scalar(x3)],
        ];
        Ok(AlbertElement { m, gamma })
    }

    pub fn identity(gamma: [F; 3]) -> Result<Self, CompalgError> {
        Self::diagonal(gamma, [F::one(), F::one(), F::one()])
    }

    pub fn zero(gamma: [F; 3]) -> Result<Self, CompalgError> {
        Self::diagonal(gamma, [F::zero(), F::zero(), F::zero()])
    }

    pub fn diagonal(gamma: [F; 3], x: [F; 3]) -> Result<Self, CompalgError> {
        Self::from_coords(gamma, x, [Octonion::zero(), Octonion::zero(), Octonion::zero()])
    }

    /// The idempotent `diag(0, 0, 1)`.
    pub fn u(gamma: [F; 3]) -> Result<Self, CompalgError> {
        Self::diagonal(gamma, [F::zero(), F::zero(), F::one()])
    }

    pub fn random<R: Rng + ?Sized>(gamma: [F; 3], rng: &mut R) -> Result<Self, CompalgError> {
        let x = [F::random(rng), F::random(rng), F::random(rng)];
        let c = [Octonion::random(rng), Octonion::random(rng), Octonion::random(rng)];
        Self::from_coords(gamma, x, c)
    }

    pub fn gamma(&self) -> &[F; 3] {
        &self.gamma
    }

    pub fn entry(&self, i: usize, j: usize) -> &Octonion<F> {
        &self.m[i][j]
    }

    /// Diagonal scalars `x_i`.
    pub fn x(&self) -> [F; 3] {
        [0, 1, 2].map(|i| self.m[i][i].x.a.clone())
    }

    /// `(c1, c2, c3)`.
    pub fn c(&self) -> [Octonion<F>; 3] {
        [self.m[1][2].clone(), self.m[2][0].clone(), self.m[0][1].clone()]
    }

    /// The 27 coordinates `x1, x2, x3, c1, c2, c3`.
    pub fn coords(&self) -> Vec<F> {
        let mut out: Vec<F> = self.x().to_vec();
        for c in self.c() {
            out.extend(c.coords());
        }
        out
    }

    fn same_gamma(&self, o: &Self) -> Result<(), CompalgError> {
        if self.gamma != o.gamma {
            return Err(CompalgError::GammaMismatch);
        }
        Ok(())
    }

    fn matmul(&self, o: &Self) -> [[Octonion<F>; 3]; 3] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(Octonion::zero(), |acc, k| acc.add(&self.m[i][k].mul(&o.m[k][j])))
            })
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self, CompalgError> {
        self.same_gamma(o)?;
        let m = std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].add(&o.m[i][j])));
        Ok(AlbertElement { m, gamma: self.gamma.clone() })
    }

    pub fn scale(&self, s: &F) -> Self {
        let m = std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].scale(s)));
        AlbertElement { m, gamma: self.gamma.clone() }
    }

    /// `½(XY + YX)`, re-checked against the involution.
    pub fn jordan(&self, o: &Self) -> Result<Self, CompalgError> {
        self.same_gamma(o)?;
        let (xy, yx) = (self.matmul(o), o.matmul(self));
        let half = F::half();
        let m = std::array::from_fn(|i| std::array::from_fn(|j| xy[i][j].add(&yx[i][j]).scale(&half)));
        Self::new(m, self.gamma.clone())
    }

    /// Trace of the associative product `XY`.
    fn trace_of_product(&self, o: &Self) -> Result<F, CompalgError> {
        let p = self.matmul(o);
        (0..3).try_fold(F::zero(), |acc, i| {
            let s = p[i][i]
                .as_scalar()
                .ok_or_else(|| CompalgError::NotScalar(p[i][i].to_string()))?;
            Ok(acc + s)
        })
    }

    pub fn trace(&self) -> F {
        self.x().into_iter().fold(F::zero(), |a, b| a + b)
    }

    /// `⟨X, Y⟩ = tr(X × Y)`.
    pub fn pairing(&self, o: &Self) -> Result<F, CompalgError> {
        Ok(self.jordan(o)?.trace())
    }

    /// `½ tr(X²)` from the associative square.
    pub fn q_trace(&self) -> Result<F, CompalgError> {
        Ok(F::half() * self.trace_of_product(self)?)
    }

    /// `½Σx_i² + γ2γ3⁻¹N(c1) + γ3γ1⁻¹N(c2) + γ1γ2⁻¹N(c3)`.
    pub fn q_explicit(&self) -> Result<F, CompalgError> {
        let [x1, x2, x3] = self.x();
        let [g1, g2, g3] = self.gamma.clone();
        let [c1, c2, c3] = self.c();
        let squares = x1.clone() * x1 + x2.clone() * x2 + x3.clone() * x3;
        Ok(F::half() * squares
            + g2.div(&g3)? * c1.norm()
            + g3.div(&g1)? * c2.norm()
            + g1.div(&g2)? * c3.norm())
    }
}

pub fn albert_mul<F: Field>(x: &AlbertElement<F>, y: &AlbertElement<F>) -> Result<AlbertElement<F>, CompalgError> {
    x.jordan(y)
}

/// `Q(X)` computed both ways; errors if they disagree is left to the caller.
pub fn albert_q<F: Field>(x: &AlbertElement<F>) -> Result<(F, F), CompalgError> {
    Ok((x.q_trace()?, x.q_explicit()?))
}

/// Basis of `E0 = {X : ⟨X,1⟩ = ⟨X,u⟩ = 0, u × X = 0}` for `Γ = (1, -1, 1)`,
/// identified with `k ⊕ C` through `(x, c) ↦ [[x, c, 0], [-c̄, -x, 0], [0, 0, 0]]`.
#[derive(Clone, Debug)]
pub struct E0Basis<F> {
    pub elements: Vec<AlbertElement<F>>,
}

pub fn rank1_gamma<F: Field>() -> [F; 3] {
    [F::one(), -F::one(), F::one()]
}

impl<F: Field> E0Basis<F> {
    pub fn new(gamma: &[F; 3]) -> Result<Self, CompalgError> {
        if *gamma != rank1_gamma::<F>() {
            return Err(CompalgError::UnsupportedGamma(format!(
                "({}, {}, {})",
                gamma[0], gamma[1], gamma[2]
            )));
        }
        let mut elements = vec![Self::embed(F::one(), &Octonion::zero())?];
        for k in 0..8 {
            let c = Octonion::from_coords(std::array::from_fn(|i| if i == k { F::one() } else { F::zero() }));
            elements.push(Self::embed(F::zero(), &c)?);
        }
        Ok(E0Basis { elements })
    }

    pub fn embed(x: F, c: &Octonion<F>) -> Result<AlbertElement<F>, CompalgError> {
        AlbertElement::from_coords(rank1_gamma(), [x.clone(), -x, F::zero()], [Octonion::zero(), Octonion::zero(), c.clone()])
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// `x² - N(c)`.
    pub fn form(x: &F, c: &Octonion<F>) -> F {
        x.clone() * x.clone() - c.norm()
    }

    /// Whether `X` satisfies the three linear conditions defining `E0`.
    pub fn contains(x: &AlbertElement<F>) -> Result<bool, CompalgError> {
        let gamma = x.gamma().clone();
        let one = AlbertElement::identity(gamma.clone())?;
        let u = AlbertElement::u(gamma.clone())?;
        Ok(x.pairing(&one)?.is_zero()
            && x.pairing(&u)?.is_zero()
            && u.jordan(x)? == AlbertElement::zero(gamma)?)
    }
}

pub fn e0_basis<F: Field>(gamma: &[F; 3]) -> Result<E0Basis<F>, CompalgError> {
    E0Basis::new(gamma)
}

/// Rank of a list of vectors over `F`, by Gaussian elimination.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> Result<usize, CompalgError> {
    let mut rows: Vec<Vec<F>> = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].inv()?;
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone() * inv.clone();
                for j in col..cols {
                    let v = rows[i][j].clone() - factor.clone() * rows[r][j].clone();
                    rows[i][j] = v;
                }
            }
        }
        r += 1;
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub field: String,
    pub samples: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CompalgReport {
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl CompalgReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

fn run_check<F: Field>(
    report: &mut CompalgReport,
    name: &str,
    samples: usize,
    mut trial: impl FnMut() -> Result<bool, CompalgError>,
) {
    let failures = (0..samples).filter(|_| !matches!(trial(), Ok(true))).count();
    report.checks.push(CheckOutcome {
        check: name.to_string(),
        field: F::name(),
        samples,
        failures,
    });
}

fn octonion_suite<F: Field>(report: &mut CompalgReport, samples: usize, rng: &mut ChaCha8Rng) {
    let one = Octonion::<F>::unit();
    run_check::<F>(report, "norm multiplicativity", samples, || {
        let (a, b) = (Octonion::<F>::random(rng), Octonion::random(rng));
        Ok(a.mul(&b).norm() == a.norm() * b.norm())
    });
    run_check::<F>(report, "x conj(x) = conj(x) x = N(x)", samples, || {
        let a = Octonion::<F>::random(rng);
        let n = Octonion::scalar(a.norm());
        Ok(a.mul(&a.conj()) == n && a.conj().mul(&a) == n)
    });
    run_check::<F>(report, "conj anti-automorphism", samples, || {
        let (a, b) = (Octonion::<F>::random(rng), Octonion::random(rng));
        Ok(a.mul(&b).conj() == b.conj().mul(&a.conj()) && a.conj().conj() == a)
    });
    run_check::<F>(report, "unit", samples, || {
        let a = Octonion::<F>::random(rng);
        Ok(one.mul(&a) == a && a.mul(&one) == a)
    });
    run_check::<F>(report, "alternativity", samples, || {
        let (a, b) = (Octonion::<F>::random(rng), Octonion::random(rng));
        Ok(a.mul(&a).mul(&b) == a.mul(&a.mul(&b)) && b.mul(&a).mul(&a) == b.mul(&a.mul(&a)))
    });
}

fn albert_suite<F: Field>(report: &mut CompalgReport, samples: usize, rng: &mut ChaCha8Rng) -> Result<(), CompalgError> {
    let gammas: Vec<[F; 3]> = vec![
        rank1_gamma(),
        [F::one(), F::one(), F::one()],
        [F::from_i64(2), F::from_i64(-3), F::from_i64(5)],
    ];
    let mut pick = {
        let mut k = 0usize;
        move || {
            k += 1;
            gammas[k % gammas.len()].clone()
        }
    };
    run_check::<F>(report, "Jordan commutativity and closure", samples, || {
        let g = pick();
        let (x, y) = (AlbertElement::random(g.clone(), rng)?, AlbertElement::random(g, rng)?);
        // `jordan` rejects a result that is not fixed by the involution.
        Ok(x.jordan(&y)? == y.jordan(&x)?)
    });
    run_check::<F>(report, "X × 1 = X", samples, || {
        let g = pick();
        let x = AlbertElement::random(g.clone(), rng)?;
        Ok(x.jordan(&AlbertElement::identity(g)?)? == x)
    });
    run_check::<F>(report, "Q trace = Q explicit", samples, || {
        let x = AlbertElement::random(pick(), rng)?;
        Ok(x.q_trace()? == x.q_explicit()?)
    });
    let g = rank1_gamma::<F>();
    run_check::<F>(report, "u × u = u, Q(u) = 1/2, Q(1) = 3/2", 1, || {
        let u = AlbertElement::u(g.clone())?;
        let one = AlbertElement::identity(g.clone())?;
        let half = F::half();
        Ok(u.jordan(&u)? == u
            && albert_q(&u)? == (half.clone(), half.clone())
            && one.q_trace()? == F::from_i64(3) * half)
    });
    run_check::<F>(report, "E0 basis: dim 9, conditions, independence", 1, || {
        let basis = E0Basis::new(&g)?;
        let coords: Vec<Vec<F>> = basis.elements.iter().map(AlbertElement::coords).collect();
        let mut ok = basis.dim() == 9 && rank(&coords)? == 9;
        for e in &basis.elements {
            ok &= E0Basis::contains(e)?;
        }
        Ok(ok)
    });
    run_check::<F>(report, "E0 form x^2 - N(c) = Q", samples, || {
        let (x, c) = (F::random(rng), Octonion::<F>::random(rng));
        let e = E0Basis::embed(x.clone(), &c)?;
        Ok(E0Basis::contains(&e)? && e.q_trace()? == E0Basis::form(&x, &c))
    });
    Ok(())
}

fn field_suite<F: Field>(report: &mut CompalgReport, samples: usize, rng: &mut ChaCha8Rng) -> Result<(), CompalgError> {
    octonion_suite::<F>(report, samples, rng);
    albert_suite::<F>(report, samples, rng)
}

/// Randomized identities over ℚ, `F_7` and `F_11` from one seeded generator.
pub fn verify_compalg(samples: usize, seed: u64) -> Result<CompalgReport, CompalgError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CompalgReport { seed, checks: Vec::new() };
    field_suite::<Rational>(&mut report, samples, &mut rng)?;
    field_suite::<Fp<7>>(&mut report, samples, &mut rng)?;
    field_suite::<Fp<11>>(&mut report, samples, &mut rng)?;
    Ok(report)
}
