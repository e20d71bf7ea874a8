use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{self, Rational};

/// A quaternion `w + x i + y j + z k` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Quat {
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Quat {
    pub fn new(w: Rational, x: Rational, y: Rational, z: Rational) -> Self {
        Quat { w, x, y, z }
    }

    /// Integer coefficients, mostly for tests and fixed catalog entries.
    pub fn ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quat::new(rational::rat(w), rational::rat(x), rational::rat(y), rational::rat(z))
    }

    pub fn zero() -> Self {
        Quat::default()
    }

    pub fn one() -> Self {
        Quat::real(Rational::one())
    }

    pub fn i() -> Self {
        Quat::ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quat::ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quat::ints(0, 0, 0, 1)
    }

    pub fn real(r: Rational) -> Self {
        Quat { w: r, ..Quat::default() }
    }

    /// The basis quaternion `1, i, j, k` for `index = 0..4`.
    pub fn basis(index: usize) -> Self {
        let mut c = [0i64; 4];
        c[index] = 1;
        Quat::ints(c[0], c[1], c[2], c[3])
    }

    pub fn from_components(c: [Rational; 4]) -> Self {
        let [w, x, y, z] = c;
        Quat { w, x, y, z }
    }

    pub fn components(&self) -> [&Rational; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quat::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    /// `|q|^2 = w^2 + x^2 + y^2 + z^2`.
    pub fn norm_sq(&self) -> Rational {
        &self.w * &self.w + &self.x * &self.x + &self.y * &self.y + &self.z * &self.z
    }

    pub fn re(&self) -> &Rational {
        &self.w
    }

    /// Imaginary part as a quaternion.
    pub fn im(&self) -> Self {
        Quat::new(Rational::zero(), self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn is_imaginary(&self) -> bool {
        self.w.is_zero()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Quat::zero();
        }
        Quat::new(&self.w * r, &self.x * r, &self.y * r, &self.z * r)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            None
        } else {
            Some(self.conj().scale(&n.recip()))
        }
    }
}

fn mul_ref(p: &Quat, q: &Quat) -> Quat {
    if p.is_zero() || q.is_zero() {
        return Quat::zero();
    }
    let (a1, b1, c1, d1) = (&p.w, &p.x, &p.y, &p.z);
    let (a2, b2, c2, d2) = (&q.w, &q.x, &q.y, &q.z);
    Quat {
        w: a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        x: a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        y: a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        z: a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    }
}

/// The quaternion product; bilinear and associative, with `ij = k`, `jk = i`, `ki = j`.
pub fn quat_mul(p: &Quat, q: &Quat) -> Quat {
    mul_ref(p, q)
}

impl Mul for &Quat {
    type Output = Quat;
    fn mul(self, rhs: &Quat) -> Quat {
        mul_ref(self, rhs)
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, rhs: Quat) -> Quat {
        mul_ref(&self, &rhs)
    }
}

impl Add for &Quat {
    type Output = Quat;
    fn add(self, rhs: &Quat) -> Quat {
        Quat::new(&self.w + &rhs.w, &self.x + &rhs.x, &self.y + &rhs.y, &self.z + &rhs.z)
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, rhs: Quat) -> Quat {
        &self + &rhs
    }
}

impl Sub for &Quat {
    type Output = Quat;
    fn sub(self, rhs: &Quat) -> Quat {
        Quat::new(&self.w - &rhs.w, &self.x - &rhs.x, &self.y - &rhs.y, &self.z - &rhs.z)
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, rhs: Quat) -> Quat {
        &self - &rhs
    }
}

impl Neg for &Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        -&self
    }
}

impl AddAssign<&Quat> for Quat {
    fn add_assign(&mut self, rhs: &Quat) {
        if rhs.is_zero() {
            return;
        }
        self.w += &rhs.w;
        self.x += &rhs.x;
        self.y += &rhs.y;
        self.z += &rhs.z;
    }
}

impl SubAssign<&Quat> for Quat {
    fn sub_assign(&mut self, rhs: &Quat) {
        if rhs.is_zero() {
            return;
        }
        self.w -= &rhs.w;
        self.x -= &rhs.x;
        self.y -= &rhs.y;
        self.z -= &rhs.z;
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, unit) in self.components().into_iter().zip(["", "i", "j", "k"]) {
            if c.is_zero() {
                continue;
            }
            let s = rational::format(c);
            if first {
                write!(f, "{s}{unit}")?;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, " - {rest}{unit}")?;
            } else {
                write!(f, " + {s}{unit}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for Quat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.components().iter().map(|c| rational::format(c)).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "crate::rational::serde_rational_vec")] Vec<Rational>);
        let Wrap(v) = Wrap::deserialize(d)?;
        let arr: [Rational; 4] = v
            .try_into()
            .map_err(|v: Vec<Rational>| de::Error::invalid_length(v.len(), &"4 components"))?;
        Ok(Quat::from_components(arr))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn multiplication_table() {
        assert_eq!(&Quat::i() * &Quat::j(), Quat::k());
        assert_eq!(&Quat::j() * &Quat::k(), Quat::i());
        assert_eq!(&Quat::k() * &Quat::i(), Quat::j());
        assert_eq!(&Quat::j() * &Quat::i(), -Quat::k());
        for u in [Quat::i(), Quat::j(), Quat::k()] {
            assert_eq!(&u * &u, -Quat::one());
        }
    }

    #[test]
    fn norm_identity() {
        let p = Quat::ints(1, 1, 0, 0);
        assert_eq!(&p * &p.conj(), Quat::real(rat(2)));
        let q = Quat::new(frac(1, 2), rat(-3), frac(2, 3), rat(1));
        assert_eq!(&q.conj() * &q, Quat::real(q.norm_sq()));
        assert_eq!(&q * &q.inverse().unwrap(), Quat::one());
    }

    #[test]
    fn json_roundtrip() {
        let q = Quat::new(frac(1, 2), rat(-3), rat(0), rat(7));
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"["1/2","-3","0","7"]"#);
        let back: Quat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Quat>(r#"["1","2"]"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Quat::ints(1, 0, -1, 2).to_string(), "1 - 1j + 2k");
        assert_eq!(Quat::zero().to_string(), "0");
    }
}
