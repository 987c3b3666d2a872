use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};

use serde::Serialize;

/// Reduction polynomial x^8 + x^4 + x^3 + x^2 + 1.
pub const POLY: u16 = 0x11D;

const fn tables() -> ([u8; 512], [u8; 256]) {
    let mut exp = [0u8; 512];
    let mut log = [0u8; 256];
    let mut x: u16 = 1;
    let mut i = 0;
    while i < 255 {
        exp[i] = x as u8;
        log[x as usize] = i as u8;
        x <<= 1;
        if x & 0x100 != 0 {
            x ^= POLY;
        }
        i += 1;
    }
    while i < 512 {
        exp[i] = exp[i - 255];
        i += 1;
    }
    (exp, log)
}

const TABLES: ([u8; 512], [u8; 256]) = tables();
const EXP: [u8; 512] = TABLES.0;
const LOG: [u8; 256] = TABLES.1;

/// Element of GF(2^8). Addition is XOR; 2 generates the multiplicative group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Gf256(pub u8);

impl Gf256 {
    pub const ZERO: Self = Gf256(0);
    pub const ONE: Self = Gf256(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(Gf256(EXP[255 - LOG[self.0 as usize] as usize]))
        }
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Shift-and-add multiplication, independent of the log tables.
    pub fn mul_slow(self, rhs: Self) -> Self {
        let (mut a, mut b, mut p) = (self.0 as u16, rhs.0, 0u16);
        while b != 0 {
            if b & 1 != 0 {
                p ^= a;
            }
            a <<= 1;
            if a & 0x100 != 0 {
                a ^= POLY;
            }
            b >>= 1;
        }
        Gf256(p as u8)
    }
}

impl fmt::Debug for Gf256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#04x}", self.0)
    }
}

impl fmt::Display for Gf256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Gf256 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        Gf256(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf256 {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl Sub for Gf256 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Self) -> Self {
        Gf256(self.0 ^ rhs.0)
    }
}

impl Neg for Gf256 {
    type Output = Self;
    fn neg(self) -> Self {
        self
    }
}

impl Mul for Gf256 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.0 == 0 || rhs.0 == 0 {
            return Gf256(0);
        }
        Gf256(EXP[LOG[self.0 as usize] as usize + LOG[rhs.0 as usize] as usize])
    }
}

impl MulAssign for Gf256 {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Div for Gf256 {
    type Output = Self;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in GF(256)")
    }
}

/// `dst += c * src` bytewise.
pub fn axpy(dst: &mut [u8], c: Gf256, src: &[u8]) {
    if c.is_zero() {
        return;
    }
    if c == Gf256::ONE {
        for (d, s) in dst.iter_mut().zip(src) {
            *d ^= s;
        }
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= (c * Gf256(*s)).0;
    }
}

/// Determinant of a square matrix by elimination.
pub fn determinant(mut m: Vec<Vec<Gf256>>) -> Gf256 {
    let n = m.len();
    let mut det = Gf256::ONE;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Gf256::ZERO;
        };
        m.swap(col, p);
        let pivot = m[col][col];
        det *= pivot;
        let inv = pivot.inv().unwrap();
        for r in col + 1..n {
            let f = m[r][col] * inv;
            if f.is_zero() {
                continue;
            }
            let (top, bottom) = m.split_at_mut(r);
            for (dst, &v) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst += f * v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_match_slow_multiplication() {
        for a in 0..=255u8 {
            for b in 0..=255u8 {
                assert_eq!(Gf256(a) * Gf256(b), Gf256(a).mul_slow(Gf256(b)));
            }
        }
    }

    #[test]
    fn generator_has_order_255() {
        let g = Gf256(2);
        assert_eq!(g.pow(255), Gf256::ONE);
        assert!((1..255).all(|e| g.pow(e) != Gf256::ONE));
    }

    #[test]
    fn known_products() {
        // 0x80 * 2 wraps through the polynomial
        assert_eq!(Gf256(0x80) * Gf256(2), Gf256(0x1D));
        assert_eq!(Gf256(3) * Gf256(7), Gf256(9));
        assert_eq!(Gf256(0).inv(), None);
    }

    #[test]
    fn determinant_of_identity_and_singular() {
        let id = vec![vec![Gf256(1), Gf256(0)], vec![Gf256(0), Gf256(1)]];
        assert_eq!(determinant(id), Gf256::ONE);
        let sing = vec![vec![Gf256(3), Gf256(5)], vec![Gf256(3), Gf256(5)]];
        assert_eq!(determinant(sing), Gf256::ZERO);
    }
}
