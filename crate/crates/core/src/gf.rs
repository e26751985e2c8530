//! Arithmetic in GF(p) and GF(p²) for the Paley constructions.
//!
//! GF(p²) is realised as Z_p[√n] where `n` is the smallest quadratic
//! non-residue modulo `p`, so GF(25) elements read `a + b√2`. An element's
//! vertex index is `a + p·b`, which keeps GF(p) elements at their natural
//! names inside GF(p²).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sgraph::Sign;

/// An element `a + b√n` of GF(p^k); `b` is always zero when `k = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElem {
    pub a: u32,
    pub b: u32,
}

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem { a: 0, b: 0 };
    pub const ONE: FieldElem = FieldElem { a: 1, b: 0 };

    pub const fn new(a: u32, b: u32) -> Self {
        FieldElem { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
}

/// A finite field GF(p^k) with k ∈ {1, 2} and p^k ≡ 1 (mod 4).
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    nonresidue: u32,
    // quadratic character by element index; 0 for the zero element
    chi: Vec<i8>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl FieldSpec {
    /// Builds GF(p^k). For `k = 2` the smallest non-residue mod `p` is used.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Argument(format!("{p} is not prime")));
        }
        if !(k == 1 || k == 2) {
            return Err(Error::Argument(format!("extension degree {k} unsupported")));
        }
        let q = p.pow(k);
        if q % 4 != 1 {
            return Err(Error::Argument(format!("q = {q} is not 1 mod 4")));
        }
        let nonresidue = if k == 2 {
            (2..p)
                .find(|&n| pow_mod(n as u64, ((p - 1) / 2) as u64, p as u64) == (p - 1) as u64)
                .ok_or_else(|| Error::Argument(format!("no non-residue mod {p}")))?
        } else {
            0
        };
        let mut spec = FieldSpec { p, k, nonresidue, chi: Vec::new() };
        let half = (q as u64 - 1) / 2;
        spec.chi = (0..q as usize)
            .map(|i| {
                let x = spec.from_index(i);
                if x.is_zero() {
                    0
                } else if spec.pow(x, half) == FieldElem::ONE {
                    1
                } else {
                    -1
                }
            })
            .collect();
        Ok(spec)
    }

    /// Builds the field of order `q`, where `q` is a prime or a prime square.
    pub fn with_order(q: u32) -> Result<Self> {
        if is_prime(q) {
            return Self::new(q, 1);
        }
        let r = (q as f64).sqrt().round() as u32;
        if r * r == q && is_prime(r) {
            return Self::new(r, 2);
        }
        Err(Error::Argument(format!("{q} is not a prime or the square of a prime")))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn nonresidue(&self) -> u32 {
        self.nonresidue
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }

    pub fn elem(&self, a: u32, b: u32) -> Result<FieldElem> {
        if a >= self.p || b >= self.p || (self.k == 1 && b != 0) {
            return Err(Error::Argument(format!("({a},{b}) is not an element of GF({})", self.order())));
        }
        Ok(FieldElem { a, b })
    }

    pub fn index(&self, x: FieldElem) -> usize {
        (x.a + self.p * x.b) as usize
    }

    pub fn from_index(&self, i: usize) -> FieldElem {
        let i = i as u32;
        FieldElem { a: i % self.p, b: i / self.p }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order() as usize).map(|i| self.from_index(i))
    }

    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        FieldElem { a: (x.a + y.a) % self.p, b: (x.b + y.b) % self.p }
    }

    pub fn neg(&self, x: FieldElem) -> FieldElem {
        FieldElem { a: (self.p - x.a) % self.p, b: (self.p - x.b) % self.p }
    }

    pub fn sub(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let p = self.p as u64;
        let (xa, xb, ya, yb) = (x.a as u64, x.b as u64, y.a as u64, y.b as u64);
        // √n·√n = n
        let a = (xa * ya + self.nonresidue as u64 * (xb * yb % p)) % p;
        let b = (xa * yb + xb * ya) % p;
        FieldElem { a: a as u32, b: b as u32 }
    }

    pub fn pow(&self, x: FieldElem, mut e: u64) -> FieldElem {
        let mut base = x;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, via x^(q−2).
    pub fn inv(&self, x: FieldElem) -> Result<FieldElem> {
        if x.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.pow(x, self.order() as u64 - 2))
    }

    /// The Frobenius map x ↦ x^p (the identity on prime fields).
    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        self.pow(x, self.p as u64)
    }

    /// Dispatches one of the field operations; `y` is required for binary ops.
    pub fn arith(&self, op: ArithOp, x: FieldElem, y: Option<FieldElem>) -> Result<FieldElem> {
        self.check(x)?;
        let need_y = || -> Result<FieldElem> {
            let y = y.ok_or_else(|| Error::Argument(format!("{op:?} needs two operands")))?;
            self.check(y)?;
            Ok(y)
        };
        Ok(match op {
            ArithOp::Add => self.add(x, need_y()?),
            ArithOp::Sub => self.sub(x, need_y()?),
            ArithOp::Mul => self.mul(x, need_y()?),
            ArithOp::Neg => self.neg(x),
            ArithOp::Inv => self.inv(x)?,
        })
    }

    fn check(&self, x: FieldElem) -> Result<()> {
        self.elem(x.a, x.b).map(|_| ())
    }

    /// Quadratic character: +1 on non-zero squares, −1 on non-squares.
    pub fn square_sign(&self, x: FieldElem) -> Result<Sign> {
        self.check(x)?;
        match self.chi[self.index(x)] {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            _ => Err(Error::Domain("the square function is undefined at 0".into())),
        }
    }

    /// Quadratic character as an integer, 0 at zero.
    pub fn chi(&self, x: FieldElem) -> i8 {
        self.chi[self.index(x)]
    }

    pub fn is_square(&self, x: FieldElem) -> bool {
        self.chi(x) == 1
    }

    pub fn mult_order(&self, x: FieldElem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let mut acc = x;
        let mut ord = 1;
        while acc != FieldElem::ONE {
            acc = self.mul(acc, x);
            ord += 1;
        }
        Some(ord)
    }

    /// The generator of GF(q)* that comes first in (a, b) lexicographic order.
    pub fn generator(&self) -> FieldElem {
        let target = self.order() as u64 - 1;
        let mut elems: Vec<FieldElem> = self.elements().filter(|x| !x.is_zero()).collect();
        elems.sort_by_key(|x| (x.a, x.b));
        elems.into_iter().find(|&x| self.mult_order(x) == Some(target)).expect("the multiplicative group of a finite field is cyclic")
    }

    /// The smallest non-square by index.
    pub fn first_nonsquare(&self) -> FieldElem {
        self.elements().find(|&x| self.chi(x) == -1).expect("q > 2 has non-squares")
    }

    /// Human-readable name: `3`, `2√2`, `1+3√2`.
    pub fn label(&self, x: FieldElem) -> String {
        if x.b == 0 {
            return x.a.to_string();
        }
        let root = format!("√{}", self.nonresidue);
        let bpart = if x.b == 1 { root } else { format!("{}{}", x.b, root) };
        if x.a == 0 {
            bpart
        } else {
            format!("{}+{}", x.a, bpart)
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}) = GF({})[√{}]", self.order(), self.p, self.nonresidue)
        }
    }
}
