//! Elements of cyclotomic fields Q(ζ_n), stored in the power basis modulo Φ_n.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::race::OnceBox;
use smallvec::SmallVec;

use super::rational::Rat;
use super::RingError;

const CACHED_CONDUCTORS: usize = 256;

#[allow(clippy::declare_interior_mutable_const)]
const EMPTY_SLOT: OnceBox<Vec<i64>> = OnceBox::new();
static CYCLOTOMIC_POLYS: [OnceBox<Vec<i64>>; CACHED_CONDUCTORS] = [EMPTY_SLOT; CACHED_CONDUCTORS];

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // both monic integer polynomials, low degree first
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    quot
}

fn compute_cyclotomic(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut p = num;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    if (n as usize) < CACHED_CONDUCTORS {
        CYCLOTOMIC_POLYS[n as usize]
            .get_or_init(|| Box::new(compute_cyclotomic(n)))
            .clone()
    } else {
        compute_cyclotomic(n)
    }
}

fn with_cyclotomic<R>(n: u32, f: impl FnOnce(&[i64]) -> R) -> R {
    if (n as usize) < CACHED_CONDUCTORS {
        f(CYCLOTOMIC_POLYS[n as usize].get_or_init(|| Box::new(compute_cyclotomic(n))))
    } else {
        f(&compute_cyclotomic(n))
    }
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

type Coords = SmallVec<[Rat; 2]>;

/// An element of Q(ζ_n).
///
/// Rationals always carry conductor 1 and conductors ≡ 2 mod 4 are folded to
/// n/2, but otherwise the conductor is not minimised; comparisons lift both
/// sides to a common field.
#[derive(Clone)]
pub struct Cyc {
    conductor: u32,
    coords: Coords,
}

fn reduce_mod_cyclotomic(n: u32, mut v: Vec<Rat>) -> Coords {
    with_cyclotomic(n, |phi| {
        let deg = phi.len() - 1;
        for i in (deg..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = core::mem::replace(&mut v[i], Rat::int(0));
            for (j, &p) in phi[..deg].iter().enumerate() {
                if p != 0 {
                    let t = &c * &Rat::int(p);
                    v[i - deg + j] = &v[i - deg + j] - &t;
                }
            }
        }
        v.truncate(deg);
    });
    let mut out: Coords = v.into_iter().collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

impl Cyc {
    pub fn zero() -> Cyc {
        Cyc { conductor: 1, coords: SmallVec::new() }
    }

    pub fn one() -> Cyc {
        Cyc::rational(Rat::int(1))
    }

    pub fn int(n: i64) -> Cyc {
        Cyc::rational(Rat::int(n))
    }

    pub fn rational(q: Rat) -> Cyc {
        let mut coords = SmallVec::new();
        if !q.is_zero() {
            coords.push(q);
        }
        Cyc { conductor: 1, coords }
    }

    /// Build from power-basis coordinates; longer vectors are reduced mod Φ_n.
    pub fn new(conductor: u32, coords: &[Rat]) -> Result<Cyc, RingError> {
        if conductor < 1 {
            return Err(RingError::BadConductor(conductor));
        }
        Ok(Cyc::from_powers(conductor, coords.to_vec()))
    }

    /// Σ c_i ζ_n^i for an arbitrary-length coefficient list.
    fn from_powers(n: u32, mut v: Vec<Rat>) -> Cyc {
        if n <= 2 {
            let mut s = Rat::int(0);
            for (i, c) in v.iter().enumerate() {
                if n == 2 && i % 2 == 1 {
                    s = &s - c;
                } else {
                    s = &s + c;
                }
            }
            return Cyc::rational(s);
        }
        if n % 4 == 2 {
            // ζ_n = -ζ_h^((h+1)/2) with h = n/2 odd
            let h = n / 2;
            let k = (h + 1) / 2;
            let mut w = vec![Rat::int(0); h as usize];
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = ((i as u64 * k as u64) % h as u64) as usize;
                w[e] = if i % 2 == 1 { &w[e] - c } else { &w[e] + c };
            }
            return Cyc::from_powers(h, w);
        }
        if v.len() > n as usize {
            // fold ζ^i = ζ^(i mod n)
            let mut w = vec![Rat::int(0); n as usize];
            for (i, c) in v.into_iter().enumerate() {
                let e = i % n as usize;
                w[e] = &w[e] + &c;
            }
            v = w;
        }
        let coords = reduce_mod_cyclotomic(n, v);
        Cyc { conductor: n, coords }.normalized()
    }

    fn normalized(mut self) -> Cyc {
        if self.coords.len() <= 1 {
            self.conductor = 1;
        }
        self
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Cyc {
        let n = n.max(1);
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Rat::int(0); e + 1];
        v[e] = Rat::int(1);
        Cyc::from_powers(n, v)
    }

    /// ζ_n^k + ζ_n^{-k} = 2cos(2πk/n).
    pub fn two_cos(n: u32, k: i64) -> Cyc {
        &Cyc::root_of_unity(n, k) + &Cyc::root_of_unity(n, -k)
    }

    /// 2cos(π/m), the off-diagonal Cartan scale for a bond of order m.
    pub fn two_cos_pi_over(m: u32) -> Cyc {
        Cyc::two_cos(2 * m, 1)
    }

    /// (1+√5)/2.
    pub fn golden() -> Cyc {
        Cyc::two_cos_pi_over(5)
    }

    pub fn sqrt2() -> Cyc {
        Cyc::two_cos(8, 1)
    }

    /// √n for an integer n, built from quadratic Gauss sums.
    pub fn sqrt_int(n: i64) -> Cyc {
        if n == 0 {
            return Cyc::zero();
        }
        let mut rest = n.unsigned_abs();
        let mut outside: i64 = 1;
        let mut acc = if n < 0 { Cyc::root_of_unity(4, 1) } else { Cyc::one() };
        let mut p = 2u64;
        while p * p <= rest {
            let mut k = 0;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            outside *= (p as i64).pow(k / 2);
            if k % 2 == 1 {
                acc = &acc * &Cyc::sqrt_prime(p as u32);
            }
            p += 1;
        }
        if rest > 1 {
            acc = &acc * &Cyc::sqrt_prime(rest as u32);
        }
        acc.scale(&Rat::int(outside))
    }

    /// √p for a prime p.
    fn sqrt_prime(p: u32) -> Cyc {
        if p == 2 {
            return Cyc::sqrt2();
        }
        // Gauss sum g with g² = (−1)^((p−1)/2)·p
        let mut v = vec![Rat::int(0); p as usize];
        for a in 1..p as u64 {
            let legendre = modpow(a, (p as u64 - 1) / 2, p as u64);
            v[a as usize] = if legendre == 1 { Rat::int(1) } else { Rat::int(-1) };
        }
        let g = Cyc::from_powers(p, v);
        if p % 4 == 1 {
            g
        } else {
            &Cyc::root_of_unity(4, -1) * &g
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coords.len() == 1 && self.coords[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.conductor == 1 {
            Some(self.coords.first().cloned().unwrap_or_else(|| Rat::int(0)))
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().and_then(|q| q.to_i64())
    }

    /// Coordinates in Q(ζ_n) for a conductor n divisible by ours.
    pub fn lift_coords(&self, n: u32) -> Vec<Rat> {
        assert!(n % self.conductor == 0 || self.conductor == 1, "cannot lift {} to {}", self.conductor, n);
        let phi = euler_phi(n) as usize;
        if self.conductor == n {
            let mut v: Vec<Rat> = self.coords.iter().cloned().collect();
            v.resize(phi, Rat::int(0));
            return v;
        }
        let step = if self.conductor == 1 { 0 } else { (n / self.conductor) as usize };
        let mut v = vec![Rat::int(0); (self.coords.len().max(1) - 1) * step + 1];
        for (i, c) in self.coords.iter().enumerate() {
            v[i * step] = &v[i * step] + c;
        }
        let mut r: Vec<Rat> = reduce_mod_cyclotomic(n, v).into_vec();
        r.resize(phi, Rat::int(0));
        r
    }

    fn common(&self, other: &Cyc) -> u32 {
        if self.conductor == 1 {
            other.conductor
        } else if other.conductor == 1 {
            self.conductor
        } else {
            self.conductor.lcm(&other.conductor)
        }
    }

    fn zip_with(&self, other: &Cyc, f: impl Fn(&Rat, &Rat) -> Rat) -> Cyc {
        let n = self.common(other);
        let zero = Rat::int(0);
        if n == self.conductor && n == other.conductor {
            let len = self.coords.len().max(other.coords.len());
            let mut coords: Coords = (0..len)
                .map(|i| f(self.coords.get(i).unwrap_or(&zero), other.coords.get(i).unwrap_or(&zero)))
                .collect();
            while coords.last().is_some_and(|c| c.is_zero()) {
                coords.pop();
            }
            return Cyc { conductor: n, coords }.normalized();
        }
        let a = self.lift_coords(n);
        let b = other.lift_coords(n);
        let v: Vec<Rat> = a.iter().zip(b.iter()).map(|(x, y)| f(x, y)).collect();
        Cyc::from_powers(n, v)
    }

    pub fn scale(&self, q: &Rat) -> Cyc {
        if q.is_zero() {
            return Cyc::zero();
        }
        Cyc { conductor: self.conductor, coords: self.coords.iter().map(|c| c * q).collect() }
    }

    /// Image under ζ ↦ ζ^k (k coprime to the conductor).
    pub fn galois(&self, k: i64) -> Cyc {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        let mut v = vec![Rat::int(0); n as usize];
        for (i, c) in self.coords.iter().enumerate() {
            let e = ((i as i64) * k).rem_euclid(n as i64) as usize;
            v[e] = &v[e] + c;
        }
        Cyc::from_powers(n, v)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Cyc {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn inverse(&self) -> Result<Cyc, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Cyc::rational(q.recip()));
        }
        // Solve self * y = 1 as a linear system in the power basis.
        let n = self.conductor;
        let phi = euler_phi(n) as usize;
        let mut mat: Vec<Vec<Rat>> = Vec::with_capacity(phi);
        for j in 0..phi {
            let mut prod = vec![Rat::int(0); j + self.coords.len()];
            for (i, c) in self.coords.iter().enumerate() {
                prod[i + j] = c.clone();
            }
            let mut col = reduce_mod_cyclotomic(n, prod).into_vec();
            col.resize(phi, Rat::int(0));
            mat.push(col);
        }
        // rows: coordinate index, columns: unknown j; augmented with e_0
        let mut a: Vec<Vec<Rat>> = (0..phi)
            .map(|r| {
                let mut row: Vec<Rat> = (0..phi).map(|j| mat[j][r].clone()).collect();
                row.push(Rat::int(if r == 0 { 1 } else { 0 }));
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| !a[r][col].is_zero()).ok_or(RingError::DivisionByZero)?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for k in col..=phi {
                a[col][k] = &a[col][k] * &inv;
            }
            for r in 0..phi {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for k in col..=phi {
                        let t = &f * &a[col][k];
                        a[r][k] = &a[r][k] - &t;
                    }
                }
            }
        }
        let sol: Vec<Rat> = a.into_iter().map(|row| row[phi].clone()).collect();
        Ok(Cyc::from_powers(n, sol))
    }

    pub fn div(&self, other: &Cyc) -> Result<Cyc, RingError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Cyc {
        let mut r = Cyc::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Exact sign of a real element.
    pub fn sign(&self) -> Result<i8, RingError> {
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(q) = self.as_rational() {
            return Ok(q.signum());
        }
        if !self.is_real() {
            return Err(RingError::NotReal);
        }
        let mut bits = 48u32;
        loop {
            let (lo, hi) = self.real_enclosure(bits);
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            bits *= 2;
        }
    }

    /// Rational interval containing the real part, of width about 2^-bits times the coordinate mass.
    pub fn real_enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let n = self.conductor;
        let pi = pi_enclosure(bits + 16);
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (cl, ch) = cos_two_pi_fraction(i as u32, n, &pi, bits + 16);
            let c = c.to_big();
            if c.is_positive() {
                lo += &c * &cl;
                hi += &c * &ch;
            } else {
                lo += &c * &ch;
                hi += &c * &cl;
            }
        }
        (lo, hi)
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.real_enclosure(60);
        let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
        num_traits::ToPrimitive::to_f64(&mid).unwrap_or(f64::NAN)
    }
}

fn dyadic_floor(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let n = (q * BigRational::from_integer(scale.clone())).floor().to_integer();
    BigRational::new(n, scale)
}

fn dyadic_ceil(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let n = (q * BigRational::from_integer(scale.clone())).ceil().to_integer();
    BigRational::new(n, scale)
}

/// Bracket of atan(1/k) from the alternating series.
fn atan_inv_enclosure(k: u64, bits: u32) -> (BigRational, BigRational) {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let tol = BigRational::new(BigInt::one(), BigInt::one() << (bits + 4));
    let mut sum = BigRational::zero();
    let mut pow = k.clone();
    let mut j: u64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), &pow * BigInt::from(2 * j + 1));
        let next = if j % 2 == 0 { &sum + &term } else { &sum - &term };
        if term < tol {
            // alternating, decreasing: true value between sum and next
            let (a, b) = if sum < next { (sum, next) } else { (next, sum) };
            return (dyadic_floor(&a, bits + 4), dyadic_ceil(&b, bits + 4));
        }
        sum = next;
        pow *= &k2;
        j += 1;
    }
}

fn pi_enclosure(bits: u32) -> (BigRational, BigRational) {
    let (a_lo, a_hi) = atan_inv_enclosure(5, bits + 6);
    let (b_lo, b_hi) = atan_inv_enclosure(239, bits + 6);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    (&sixteen * &a_lo - &four * &b_hi, &sixteen * &a_hi - &four * &b_lo)
}

/// Bracket of cos(x) for rational 0 ≤ x ≤ 4.
fn cos_enclosure(x: &BigRational, bits: u32) -> (BigRational, BigRational) {
    let x2 = x * x;
    let tol = BigRational::new(BigInt::one(), BigInt::one() << (bits + 4));
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    let mut k: u64 = 0;
    loop {
        if term.abs() < tol && k > 2 {
            // remainder bounded by the next term magnitude; terms were rounded
            // outward by at most 2^-(bits+40) each, and that error propagates
            // with factors below one, so k^2 such units cover the drift
            let k_big = BigInt::from(k);
            let slack = BigRational::new(&k_big * &k_big, BigInt::one() << (bits + 40));
            let lo = &sum - &term.abs() - &slack;
            let hi = &sum + &term.abs() + &slack;
            return (dyadic_floor(&lo, bits + 4), dyadic_ceil(&hi, bits + 4));
        }
        sum += &term;
        let denom = BigInt::from((2 * k + 1) * (2 * k + 2));
        term = -(&term * &x2) / BigRational::from_integer(denom);
        term = if term.is_positive() { dyadic_ceil(&term, bits + 40) } else { dyadic_floor(&term, bits + 40) };
        k += 1;
        if k > 10_000 {
            unreachable!("cosine series failed to converge");
        }
    }
}

/// Bracket of cos(2πi/n).
fn cos_two_pi_fraction(i: u32, n: u32, pi: &(BigRational, BigRational), bits: u32) -> (BigRational, BigRational) {
    let i = i % n;
    if i == 0 {
        return (BigRational::one(), BigRational::one());
    }
    // reduce to angle 2πj/n in [0, π] then, for angles past π/2, use cos(π - θ) = -cos θ
    let j = if 2 * i > n { n - i } else { i };
    let (num, flip) = if 4 * j > n { (n - 2 * j, true) } else { (2 * j, false) };
    // angle = π·num/n ∈ [0, π/2]
    let f = BigRational::new(BigInt::from(num), BigInt::from(n));
    let x_lo = &pi.0 * &f;
    let x_hi = &pi.1 * &f;
    // cos decreasing on [0, π/2]
    let (c_lo, _) = cos_enclosure(&x_hi, bits);
    let (_, c_hi) = cos_enclosure(&x_lo, bits);
    if flip {
        (-c_hi, -c_lo)
    } else {
        (c_lo, c_hi)
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Cyc) -> bool {
        if self.conductor == other.conductor {
            return self.coords == other.coords;
        }
        if self.conductor == 1 || other.conductor == 1 {
            // a normalised non-rational never equals a rational
            return false;
        }
        (self - other).is_zero()
    }
}
impl Eq for Cyc {}

impl Add for &Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        if rhs.is_zero() {
            return self.clone();
        }
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { conductor: self.conductor, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        if self.is_zero() || rhs.is_zero() {
            return Cyc::zero();
        }
        if self.conductor == 1 {
            return rhs.scale(&self.coords[0]);
        }
        if rhs.conductor == 1 {
            return self.scale(&rhs.coords[0]);
        }
        let n = self.common(rhs);
        let (a, b): (Vec<Rat>, Vec<Rat>) = if n == self.conductor && n == rhs.conductor {
            (self.coords.to_vec(), rhs.coords.to_vec())
        } else {
            (self.lift_coords(n), rhs.lift_coords(n))
        };
        let mut prod = vec![Rat::int(0); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = &prod[i + j] + &(x * y);
                }
            }
        }
        let coords = reduce_mod_cyclotomic(n, prod);
        Cyc { conductor: n, coords }.normalized()
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

impl From<i64> for Cyc {
    fn from(n: i64) -> Cyc {
        Cyc::int(n)
    }
}

impl From<Rat> for Cyc {
    fn from(q: Rat) -> Cyc {
        Cyc::rational(q)
    }
}

impl Default for Cyc {
    fn default() -> Cyc {
        Cyc::zero()
    }
}

impl core::hash::Hash for Cyc {
    /// Hash is only consistent for values built with the same conductor.
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.conductor.hash(state);
        for c in &self.coords {
            c.hash(state);
        }
    }
}

impl Cyc {
    /// Write as a + b·α (α = (1+√5)/2) or a + b·√2 when possible.
    pub fn symbolic(&self) -> Option<(Rat, Rat, &'static str)> {
        if let Some(q) = self.as_rational() {
            return Some((q, Rat::int(0), ""));
        }
        for (basis, name) in [(Cyc::golden(), "α"), (Cyc::sqrt2(), "√2")] {
            let n = self.common(&basis);
            if n != basis.conductor {
                continue;
            }
            // solve self = a + b·basis using the coordinate of ζ and ζ^0
            let s = self.lift_coords(n);
            let t = basis.lift_coords(n);
            let Some(k) = (1..t.len()).find(|&k| !t[k].is_zero()) else { continue };
            let b = &s[k] / &t[k];
            let a = &s[0] - &(&b * &t[0]);
            let rebuilt = &Cyc::rational(a.clone()) + &basis.scale(&b);
            if rebuilt == *self {
                return Some((a, b, name));
            }
        }
        None
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, first: &mut bool, c: &Rat, name: &str) -> fmt::Result {
    if c.is_zero() {
        return Ok(());
    }
    let neg = c.signum() < 0;
    let mag = c.abs();
    if *first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if neg { "-" } else { "+" })?;
    }
    *first = false;
    if name.is_empty() {
        write!(f, "{}", mag)
    } else if mag.is_one() {
        write!(f, "{}", name)
    } else {
        write!(f, "{}{}", mag, name)
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if let Some((a, b, name)) = self.symbolic() {
            fmt_term(f, &mut first, &a, "")?;
            return fmt_term(f, &mut first, &b, name);
        }
        for (i, c) in self.coords.iter().enumerate() {
            let name = match i {
                0 => alloc::string::String::new(),
                1 => alloc::format!("ζ{}", self.conductor),
                _ => alloc::format!("ζ{}^{}", self.conductor, i),
            };
            fmt_term(f, &mut first, c, &name)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn integer_square_roots() {
        for n in [5i64, -3, 12, -1, 2, 7, -20, 45, 1, 13] {
            let r = Cyc::sqrt_int(n);
            assert_eq!(&r * &r, Cyc::int(n), "sqrt({n})");
        }
        assert_eq!(&Cyc::sqrt_int(5) + &Cyc::one(), Cyc::golden().scale(&Rat::int(2)));
    }

    #[test]
    fn golden_ratio_identity() {
        let a = Cyc::golden();
        assert_eq!(a.conductor(), 5);
        assert_eq!(&(&a * &a) - &a, Cyc::one());
        // coordinates of ζ5 + ζ5^-1 + 1
        let b = Cyc::new(5, &[Rat::int(1), Rat::int(1), Rat::int(0), Rat::int(0), Rat::int(1)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sign().unwrap(), 1);
        assert_eq!((&Cyc::one() - &a).sign().unwrap(), -1);
    }

    #[test]
    fn sqrt_two() {
        let r = Cyc::sqrt2();
        assert_eq!(&r * &r, Cyc::int(2));
        assert_eq!(r.to_string(), "√2");
        assert_eq!((-&r).to_string(), "-√2");
    }

    #[test]
    fn mixed_conductors_and_inverse() {
        let a = Cyc::golden();
        let r = Cyc::sqrt2();
        let p = &a * &r;
        assert_eq!(p.conductor(), 40);
        let q = p.inverse().unwrap();
        assert!((&p * &q).is_one());
        assert_eq!(&p - &(&a * &r), Cyc::zero());
        assert!(p.is_real());
        assert_eq!(p.sign().unwrap(), 1);
    }

    #[test]
    fn conductor_folding() {
        // 2cos(π/5) built at conductor 10 lands in conductor 5
        assert_eq!(Cyc::two_cos(10, 1).conductor(), 5);
        assert_eq!(Cyc::two_cos_pi_over(3), Cyc::one());
        assert_eq!(Cyc::two_cos_pi_over(2), Cyc::zero());
        assert_eq!(Cyc::two_cos_pi_over(6).pow(2), Cyc::int(3));
        assert_eq!(Cyc::new(1, &[Rat::new(3, 2)]).unwrap(), Cyc::rational(Rat::new(3, 2)));
    }

    #[test]
    fn sign_of_tiny_difference() {
        // α^10 is close to an integer: α^10 = 55α + 34 ≈ 122.99
        let a = Cyc::golden();
        let x = &a.pow(10) - &Cyc::int(123);
        assert_eq!(x.sign().unwrap(), -1);
        let y = &a.pow(10) - &Cyc::rational(Rat::new(12299, 100));
        assert_eq!(y.sign().unwrap(), 1);
    }

    #[test]
    fn non_real_is_rejected() {
        let z = Cyc::root_of_unity(5, 1);
        assert!(matches!(z.sign(), Err(RingError::NotReal)));
        assert!(Cyc::new(0, &[]).is_err());
    }

    #[test]
    fn symbolic_forms() {
        let a = Cyc::golden();
        assert_eq!((&Cyc::one() - &a).to_string(), "1-α");
        assert_eq!(a.to_string(), "α");
        assert_eq!((&a + &a).to_string(), "2α");
    }
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}
