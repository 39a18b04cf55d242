//! Exact arithmetic in the cyclotomic field `Q(ζ)`, `ζ` a primitive `p`-th
//! root of unity, `p` prime.
//!
//! Elements are dense rational vectors `c_0 + c_1 ζ + .. + c_{p-2} ζ^{p-2}`,
//! i.e. residues modulo `1 + x + .. + x^{p-1}`. The representation is
//! canonical, so equality is coefficient-wise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    p: usize,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn zero(p: usize) -> Self {
        assert!(p >= 2, "cyclotomic order must be at least 2");
        CycloNum {
            p,
            coeffs: vec![BigRational::zero(); p - 1],
        }
    }

    pub fn one(p: usize) -> Self {
        Self::from_integer(p, 1)
    }

    pub fn from_integer(p: usize, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(p: usize, q: BigRational) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = q;
        z
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(p: usize, k: i64) -> Self {
        let mut cyclic = vec![BigRational::zero(); p];
        cyclic[k.rem_euclid(p as i64) as usize] = BigRational::one();
        Self::from_cyclic(p, cyclic)
    }

    /// Reduces a vector of coefficients of `ζ^0 .. ζ^{p-1}` using
    /// `ζ^{p-1} = -(1 + ζ + .. + ζ^{p-2})`.
    fn from_cyclic(p: usize, mut cyclic: Vec<BigRational>) -> Self {
        debug_assert_eq!(cyclic.len(), p);
        let top = cyclic.pop().expect("p >= 2");
        let coeffs = cyclic.into_iter().map(|c| c - &top).collect();
        CycloNum { p, coeffs }
    }

    fn to_cyclic(&self) -> Vec<BigRational> {
        let mut v = self.coeffs.clone();
        v.push(BigRational::zero());
        v
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn rational_part(&self) -> Option<&BigRational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.rational_part()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois_conjugate(self.p - 1)
    }

    /// The field automorphism `ζ ↦ ζ^a`, `a` prime to `p`.
    pub fn galois_conjugate(&self, a: usize) -> Self {
        assert!(a % self.p != 0, "ζ ↦ ζ^{a} is not an automorphism");
        let mut out = vec![BigRational::zero(); self.p];
        for (k, c) in self.to_cyclic().into_iter().enumerate() {
            out[k * a % self.p] += c;
        }
        Self::from_cyclic(self.p, out)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed cyclotomic orders");
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.check(rhs);
        CycloNum {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.check(rhs);
        CycloNum {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.check(rhs);
        let p = self.p;
        let mut out = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[(i + j) % p] += a * b;
            }
        }
        CycloNum::from_cyclic(p, out)
    }
}

impl Add for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: CycloNum) -> CycloNum {
        &self + &rhs
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: CycloNum) -> CycloNum {
        &self * &rhs
    }
}

impl fmt::Display for CycloNum {
    /// `"3"`, `"-1/2"`, `"1 + 2ζ - ζ^3"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = magnitude.is_one();
            match k {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !unit {
                        write!(f, "{magnitude}")?;
                    }
                    if k == 1 {
                        write!(f, "ζ")?;
                    } else {
                        write!(f, "ζ^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
