use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Three 31-bit primes used when the caller does not supply any.
pub const DEFAULT_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Largest `k` for which a drawn parameter point must keep `q_i^k != 1`.
pub const GENERIC_ORDER: u64 = 24;

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse by Fermat; `p` must be prime and `a` nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Reduce a signed integer into `[0, p)`.
pub fn from_i64(c: i64, p: u64) -> u64 {
    let r = (c as i128).rem_euclid(p as i128);
    r as u64
}

/// Element of the prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FFElem {
    value: u64,
    p: u64,
}

impl FFElem {
    pub fn new(value: u64, p: u64) -> Self {
        Self { value: value % p, p }
    }

    pub fn from_i64(c: i64, p: u64) -> Self {
        Self {
            value: from_i64(c, p),
            p,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::BadPoint("inverse of zero in F_p".into()));
        }
        Ok(Self::new(inv_mod(self.value, self.p), self.p))
    }

    pub fn pow(self, e: u64) -> Self {
        Self::new(pow_mod(self.value, e, self.p), self.p)
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.p)
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FFElem {
    type Output = FFElem;
    fn add(self, rhs: FFElem) -> FFElem {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        FFElem::new(add_mod(self.value, rhs.value, self.p), self.p)
    }
}

impl Sub for FFElem {
    type Output = FFElem;
    fn sub(self, rhs: FFElem) -> FFElem {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        FFElem::new(sub_mod(self.value, rhs.value, self.p), self.p)
    }
}

impl Mul for FFElem {
    type Output = FFElem;
    fn mul(self, rhs: FFElem) -> FFElem {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        FFElem::new(mul_mod(self.value, rhs.value, self.p), self.p)
    }
}

impl Neg for FFElem {
    type Output = FFElem;
    fn neg(self) -> FFElem {
        FFElem::new(sub_mod(0, self.value, self.p), self.p)
    }
}

/// A point of specialization: values for `q1`, `q2` over `F_p`, plus
/// optional values for oracle variables `x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvalAssign {
    pub prime: u64,
    pub q1: u64,
    pub q2: u64,
    pub xs: Vec<u64>,
    /// Seed and attempt number the point was drawn with (0, 0 if explicit).
    pub seed: u64,
    pub attempt: u32,
}

impl EvalAssign {
    pub fn new(prime: u64, q1: u64, q2: u64) -> Result<Self> {
        if q1.is_multiple_of(prime) || q2.is_multiple_of(prime) {
            return Err(Error::Argument("parameters must be nonzero mod p".into()));
        }
        Ok(Self {
            prime,
            q1: q1 % prime,
            q2: q2 % prime,
            xs: Vec::new(),
            seed: 0,
            attempt: 0,
        })
    }

    pub fn q3(&self) -> u64 {
        inv_mod(mul_mod(self.q1, self.q2, self.prime), self.prime)
    }

    pub fn params(&self) -> [u64; 3] {
        [self.q1, self.q2, self.q3()]
    }

    /// Rejects points where some `q_i^k = 1` for `k <= max_order` (which kills
    /// the adjoint-action constants) or where two `q_i` coincide.
    pub fn is_generic(&self, max_order: u64) -> bool {
        let p = self.prime;
        let q = self.params();
        if q[0] == q[1] || q[0] == q[2] || q[1] == q[2] {
            return false;
        }
        for &qi in &q {
            let mut acc = 1u64;
            for _ in 0..max_order {
                acc = mul_mod(acc, qi, p);
                if acc == 1 {
                    return false;
                }
            }
        }
        // alpha_k = (1/k) sum_i (q_i^k - q_i^-k) must not vanish
        for k in 1..=max_order {
            let mut s = 0u64;
            for &qi in &q {
                let a = pow_mod(qi, k, p);
                s = add_mod(s, sub_mod(a, inv_mod(a, p), p), p);
            }
            if s == 0 {
                return false;
            }
        }
        true
    }

    /// The `attempt`-th generic parameter point of the stream determined by
    /// `(prime, seed)`.
    pub fn draw(prime: u64, seed: u64, attempt: u32) -> Self {
        let mut rng = point_rng(prime, seed);
        let mut found = 0u32;
        loop {
            let q1 = rng.gen_range(2..prime);
            let q2 = rng.gen_range(2..prime);
            let a = EvalAssign {
                prime,
                q1,
                q2,
                xs: Vec::new(),
                seed,
                attempt,
            };
            if a.is_generic(GENERIC_ORDER) {
                if found == attempt {
                    return a;
                }
                found += 1;
            }
        }
    }

    pub fn with_xs(mut self, xs: Vec<u64>) -> Self {
        self.xs = xs;
        self
    }
}

pub(crate) fn point_rng(prime: u64, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ prime.rotate_left(17))
}

/// Value of `s` at `a` over `F_p`.
pub fn specialize(s: &Scalar, a: &EvalAssign) -> Result<FFElem> {
    let p = a.prime;
    let den = s.den().eval_mod(p, a.q1, a.q2);
    if den == 0 {
        return Err(Error::BadPoint(format!(
            "denominator {} vanishes at q1={}, q2={} mod {}",
            s.den(),
            a.q1,
            a.q2,
            p
        )));
    }
    let num = s.num().eval_mod(p, a.q1, a.q2);
    Ok(FFElem::new(mul_mod(num, inv_mod(den, p), p), p))
}
