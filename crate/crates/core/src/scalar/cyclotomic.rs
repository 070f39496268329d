//! Elements of the cyclotomic field ℚ(ζ_n) in the power basis.
//!
//! An element is stored as an integer coefficient vector of length φ(n)
//! over a single positive common denominator, fully reduced modulo the
//! n-th cyclotomic polynomial Φ_n. The representation is canonical:
//! the numerators and the denominator share no common factor, so
//! structural equality is field equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

fn poly_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of Φ_n, lowest degree first. Monic of degree φ(n).
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_n = (x^n - 1) / ∏_{d | n, d < n} Φ_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = exact_div(&num, &div);
        }
    }
    let phi = Arc::new(num);
    poly_cache().write().unwrap().insert(n, phi.clone());
    phi
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quo = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1);
        Cyclotomic {
            order,
            num: vec![BigInt::zero(); totient(order)],
            den: BigInt::one(),
        }
    }

    pub fn from_integer(order: u32, value: i64) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = BigInt::from(value);
        z
    }

    pub fn from_rational(order: u32, value: &BigRational) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = value.numer().clone();
        z.den = value.denom().clone();
        z.normalize();
        z
    }

    /// Builds an element from rational power-basis coefficients of any
    /// length; the polynomial is reduced modulo Φ_order.
    pub fn from_coefficients(order: u32, coeffs: &[BigRational]) -> Result<Self> {
        if order == 0 {
            return Err(Error::input("m", "cyclotomic order must be positive"));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_raw(order, num, den))
    }

    /// ζ_order^exponent.
    pub fn root_of_unity(order: u32, exponent: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::input("m", "root of unity of order 0"));
        }
        let e = exponent.rem_euclid(order as i64) as usize;
        let mut num = vec![BigInt::zero(); e + 1];
        num[e] = BigInt::one();
        Ok(Self::from_raw(order, num, BigInt::one()))
    }

    fn from_raw(order: u32, mut num: Vec<BigInt>, den: BigInt) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        if num.len() > deg {
            for k in (deg..num.len()).rev() {
                if num[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut num[k]);
                for (j, &pj) in phi.iter().enumerate().take(deg) {
                    if pj != 0 {
                        num[k - deg + j] -= &c * pj;
                    }
                }
            }
            num.truncate(deg);
        } else {
            num.resize(deg, BigInt::zero());
        }
        let mut z = Cyclotomic { order, num, den };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Power-basis coefficients, each in lowest terms.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::KindMismatch(format!(
                "Q(zeta_{}) vs Q(zeta_{})",
                self.order, other.order
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other, true))
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if subtract {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        let mut z = Cyclotomic {
            order: self.order,
            num,
            den,
        };
        z.normalize();
        z
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.order));
        }
        let la = self.num.len();
        let mut prod = vec![BigInt::zero(); 2 * la - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_raw(self.order, prod, &self.den * &other.den))
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order, &q.recip()));
        }
        // Solve (multiplication-by-self) · y = 1 over ℚ.
        let n = self.num.len();
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut basis = Self::root_of_unity(self.order, 0)?;
        let x = Self::root_of_unity(self.order, 1)?;
        for _ in 0..n {
            cols.push(self.try_mul(&basis)?.coefficients());
            basis = basis.try_mul(&x)?;
        }
        // Augmented matrix rows: row r = (cols[0][r], ..., cols[n-1][r] | rhs_r).
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !m[r][c].is_zero())
                .ok_or_else(|| Error::Internal("singular multiplication matrix".into()))?;
            m.swap(c, p);
            let inv = m[c][c].recip();
            for v in m[c].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=n {
                        let t = &m[c][k] * &f;
                        m[r][k] -= t;
                    }
                }
            }
        }
        let y: Vec<BigRational> = m.into_iter().map(|row| row[n].clone()).collect();
        Self::from_coefficients(self.order, &y)
    }

    /// Re-expresses the element in ℚ(ζ_target), target a multiple of the order.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if !target.is_multiple_of(self.order) {
            return Err(Error::KindMismatch(format!(
                "cannot embed Q(zeta_{}) into Q(zeta_{})",
                self.order, target
            )));
        }
        let step = (target / self.order) as usize;
        let mut num = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            num[i * step] = c.clone();
        }
        Ok(Self::from_raw(target, num, self.den.clone()))
    }

    /// Image under the Galois automorphism ζ ↦ ζ^k (k coprime to the order).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        let mut num = vec![BigInt::zero(); self.order as usize];
        for (i, c) in self.num.iter().enumerate() {
            let e = ((i as i64) * k).rem_euclid(n) as usize;
            num[e] += c;
        }
        Self::from_raw(self.order, num, self.den.clone())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*z{}", c, self.order)?,
                _ => write!(f, "({})*z{}^{}", c, self.order, i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, totient(105));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Cyclotomic::root_of_unity(4, 1).unwrap();
        assert_eq!(i.try_mul(&i).unwrap(), Cyclotomic::from_integer(4, -1));
    }

    #[test]
    fn zeta3_squared_reduces() {
        let z = Cyclotomic::root_of_unity(3, 1).unwrap();
        let expected = Cyclotomic::from_integer(3, -1)
            .try_sub(&z)
            .unwrap();
        assert_eq!(z.try_mul(&z).unwrap(), expected);
        assert_eq!(Cyclotomic::root_of_unity(3, 2).unwrap(), expected);
    }

    #[test]
    fn inverse_of_root_is_conjugate_power() {
        for m in [3u32, 5, 8, 12] {
            let z = Cyclotomic::root_of_unity(m, 1).unwrap();
            assert_eq!(
                z.try_inv().unwrap(),
                Cyclotomic::root_of_unity(m, m as i64 - 1).unwrap()
            );
        }
    }

    #[test]
    fn embedding_preserves_roots() {
        let z = Cyclotomic::root_of_unity(4, 1).unwrap();
        assert_eq!(z.embed(12).unwrap(), Cyclotomic::root_of_unity(12, 3).unwrap());
        assert!(z.embed(6).is_err());
    }

    #[test]
    fn galois_conjugation() {
        let z = Cyclotomic::root_of_unity(5, 2).unwrap();
        assert_eq!(z.galois(-1), Cyclotomic::root_of_unity(5, 3).unwrap());
    }
}
