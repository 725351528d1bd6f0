//! Laurent polynomials in one variable ε over cyclotomic scalars.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::cyclotomic::Cyc;
use super::rational::Rat;

/// Sparse Σ c_g ε^g with ascending exponents and no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Laurent {
    terms: Vec<(i32, Cyc)>,
}

impl Laurent {
    pub const ZERO: Laurent = Laurent { terms: Vec::new() };

    pub fn zero() -> Laurent {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Laurent {
        Laurent::monomial(0, Cyc::one())
    }

    /// ε^e.
    pub fn eps(e: i32) -> Laurent {
        Laurent::monomial(e, Cyc::one())
    }

    pub fn constant(c: Cyc) -> Laurent {
        Laurent::monomial(0, c)
    }

    pub fn int(n: i64) -> Laurent {
        Laurent::constant(Cyc::int(n))
    }

    pub fn monomial(e: i32, c: Cyc) -> Laurent {
        if c.is_zero() {
            Laurent::zero()
        } else {
            Laurent { terms: vec![(e, c)] }
        }
    }

    /// Build from arbitrary (exponent, coefficient) pairs, merging duplicates.
    pub fn from_terms(mut pairs: Vec<(i32, Cyc)>) -> Laurent {
        pairs.sort_by_key(|(e, _)| *e);
        let mut terms: Vec<(i32, Cyc)> = Vec::with_capacity(pairs.len());
        for (e, c) in pairs {
            match terms.last_mut() {
                Some((le, lc)) if *le == e => *lc = &*lc + &c,
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Laurent { terms }
    }

    /// Integer coefficients listed from exponent `low` upward.
    pub fn from_ints(low: i32, coeffs: &[i64]) -> Laurent {
        Laurent::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (low + i as i32, Cyc::int(c))).collect())
    }

    pub fn terms(&self) -> &[(i32, Cyc)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, e: i32) -> Cyc {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Cyc::zero(),
        }
    }

    /// Lowest-degree coefficient.
    pub fn lowest_coeff(&self) -> Cyc {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_default()
    }

    /// g ↦ -g on exponents.
    pub fn bar(&self) -> Laurent {
        Laurent { terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Applies ζ ↦ ζ^k to every coefficient.
    pub fn galois(&self, k: i64) -> Laurent {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, c.galois(k))).collect())
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// (negative part, constant term, positive part).
    pub fn split(&self) -> (Laurent, Cyc, Laurent) {
        let mut neg = Vec::new();
        let mut pos = Vec::new();
        let mut c0 = Cyc::zero();
        for (e, c) in &self.terms {
            match e.cmp(&0) {
                core::cmp::Ordering::Less => neg.push((*e, c.clone())),
                core::cmp::Ordering::Equal => c0 = c.clone(),
                core::cmp::Ordering::Greater => pos.push((*e, c.clone())),
            }
        }
        (Laurent { terms: neg }, c0, Laurent { terms: pos })
    }

    /// True if every exponent is strictly negative.
    pub fn all_negative(&self) -> bool {
        self.max_exp().is_none_or(|e| e < 0)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// Multiply by ε^k.
    pub fn shift(&self, k: i32) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Cyc) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn scale_rat(&self, q: &Rat) -> Laurent {
        self.scale(&Cyc::rational(q.clone()))
    }

    /// Value at ε = 1.
    pub fn at_one(&self) -> Cyc {
        self.terms.iter().fold(Cyc::zero(), |acc, (_, c)| &acc + c)
    }

    /// Substitute ε ↦ ε^k for k ≠ 0.
    pub fn substitute_power(&self, k: i32) -> Laurent {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect())
    }

    /// self += c·ε^k·other, in place.
    pub fn add_scaled_shift(&mut self, other: &Laurent, c: &Cyc, k: i32) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let rhs: Vec<(i32, Cyc)> = other.terms.iter().map(|(e, x)| (e + k, x * c)).collect();
        self.merge_add(&rhs);
    }

    fn merge_add(&mut self, rhs: &[(i32, Cyc)]) {
        let lhs = core::mem::take(&mut self.terms);
        let mut out = Vec::with_capacity(lhs.len() + rhs.len());
        let mut j = 0;
        let mut lhs = lhs.into_iter().peekable();
        while lhs.peek().is_some() || j < rhs.len() {
            match (lhs.peek(), rhs.get(j)) {
                (Some((a, _)), Some((b, y))) => {
                    if a < b {
                        out.push(lhs.next().unwrap());
                    } else if b < a {
                        out.push((*b, y.clone()));
                        j += 1;
                    } else {
                        let (e, x) = lhs.next().unwrap();
                        let s = &x + y;
                        if !s.is_zero() {
                            out.push((e, s));
                        }
                        j += 1;
                    }
                }
                (Some(_), None) => out.push(lhs.next().unwrap()),
                (None, Some((b, y))) => {
                    out.push((*b, y.clone()));
                    j += 1;
                }
                (None, None) => break,
            }
        }
        self.terms = out;
    }

    /// Exact quotient self / d, or None if d does not divide self.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let (dlo, dhi) = (d.min_exp().unwrap(), d.max_exp().unwrap());
        let lead_inv = d.terms.last().unwrap().1.inverse().ok()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(rhi) = rem.max_exp() {
            let rlo = rem.min_exp().unwrap();
            if rhi - dhi < rlo - dlo {
                return None;
            }
            let c = &rem.terms.last().unwrap().1 * &lead_inv;
            let e = rhi - dhi;
            rem.add_scaled_shift(d, &-&c, e);
            quot.push((e, c));
        }
        quot.reverse();
        Some(Laurent { terms: quot })
    }

    pub fn pow(&self, n: u32) -> Laurent {
        let mut r = Laurent::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out.merge_add(&rhs.terms);
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let neg: Vec<(i32, Cyc)> = rhs.terms.iter().map(|(e, c)| (*e, -c)).collect();
        let mut out = self.clone();
        out.merge_add(&neg);
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        if rhs.terms.len() == 1 {
            let (k, c) = &rhs.terms[0];
            return Laurent { terms: self.terms.iter().map(|(e, x)| (e + k, x * c)).collect() };
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms.last().unwrap().0 + rhs.terms.last().unwrap().0;
        let mut acc = vec![Cyc::zero(); (hi - lo + 1) as usize];
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let i = (a + b - lo) as usize;
                acc[i] = &acc[i] + &(x * y);
            }
        }
        Laurent {
            terms: acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i32, c))
                .collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl From<Cyc> for Laurent {
    fn from(c: Cyc) -> Laurent {
        Laurent::constant(c)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest degree first reads more naturally
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut s = alloc::format!("{}", c);
            let compound = s.contains(['+', 'ζ']) || s[1..].contains('-');
            let negative = s.starts_with('-') && !compound;
            if negative {
                s.remove(0);
            }
            if idx > 0 {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            } else if negative {
                write!(f, "-")?;
            }
            let coeff = if compound { alloc::format!("({})", s) } else { s };
            match (*e, coeff.as_str()) {
                (0, c) => write!(f, "{}", c)?,
                (e, "1") => write_eps(f, e)?,
                (e, c) => {
                    write!(f, "{}", c)?;
                    write_eps(f, e)?
                }
            }
        }
        Ok(())
    }
}

fn write_eps(f: &mut fmt::Formatter<'_>, e: i32) -> fmt::Result {
    if e == 1 {
        write!(f, "ε")
    } else {
        write!(f, "ε^{}", e)
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
