//! Exact modular arithmetic over a fixed odd prime `p < 2^62`.
//!
//! Every product goes through a 128-bit intermediate, so all operations are
//! exact across the whole supported range. A [`PrimeField`] is immutable
//! after construction and all of its methods are pure functions, so values
//! can be shared or sent across threads freely.

use thiserror::Error;

/// Exclusive upper bound on supported moduli. Keeping `p < 2^62` means
/// `a * b` for reduced `a`, `b` fits a `u128` with headroom to spare.
pub const MAX_MODULUS: u64 = 1 << 62;

/// Witness set for deterministic Miller-Rabin, valid for all `n < 3.3e24`,
/// which covers the full `u64` range.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} out of range (need an odd prime in [3, 2^62))")]
    OutOfRange(u64),
    #[error("zero has no inverse")]
    ZeroInverse,
}

/// The field `F_p` for an odd prime `p < 2^62`.
///
/// Construction runs a deterministic Miller-Rabin check; non-primes are
/// rejected rather than trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !(3..MAX_MODULUS).contains(&p) || p.is_multiple_of(2) {
            return Err(FieldError::OutOfRange(p));
        }
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u64 {
        a % self.p
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_signed(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b; // a, b < p < 2^62, no overflow
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// `base^exp mod p` by repeated squaring; `pow(_, 0) = 1`.
    pub fn pow(self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        let mut b = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat.
    pub fn inv(self, a: u64) -> Result<u64, FieldError> {
        let a = self.reduce(a);
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// The residue of 1/2, available in closed form for odd p.
    #[inline]
    pub fn half(self) -> u64 {
        self.p.div_ceil(2)
    }

    /// Legendre symbol by Euler's criterion, mapped to {-1, 0, +1}.
    pub fn legendre(self, a: u64) -> i32 {
        let a = self.reduce(a);
        if a == 0 {
            return 0;
        }
        let e = self.pow(a, (self.p - 1) / 2);
        if e == 1 {
            1
        } else {
            debug_assert_eq!(e, self.p - 1);
            -1
        }
    }

    /// Square root of `a` when it exists, canonicalized to `[1, (p-1)/2]`
    /// for `a != 0`; `Some(0)` for `a = 0`; `None` for non-residues.
    ///
    /// Tonelli-Shanks with a deterministic non-residue search (2, 3, 4, ...),
    /// so repeated calls always return the identical root.
    pub fn sqrt(self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = self.reduce(a);
        if a == 0 {
            return Some(0);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let root = if p % 4 == 3 {
            self.pow(a, (p + 1) / 4)
        } else {
            // p = q * 2^s + 1 with q odd
            let s = (p - 1).trailing_zeros();
            let q = (p - 1) >> s;
            let mut z = 2u64;
            while self.legendre(z) != -1 {
                z += 1;
            }
            let mut m = s;
            let mut c = self.pow(z, q);
            let mut t = self.pow(a, q);
            let mut r = self.pow(a, q.div_ceil(2));
            while t != 1 {
                // least i with t^(2^i) = 1
                let mut i = 0u32;
                let mut t2 = t;
                while t2 != 1 {
                    t2 = self.mul(t2, t2);
                    i += 1;
                }
                let b = self.pow(c, 1u64 << (m - i - 1));
                m = i;
                c = self.mul(b, b);
                t = self.mul(t, c);
                r = self.mul(r, b);
            }
            r
        };
        debug_assert_eq!(self.mul(root, root), a);
        Some(root.min(p - root))
    }
}

/// Deterministic Miller-Rabin primality test for `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_WITNESSES {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for &w in &MR_WITNESSES {
        let mut x = powmod(w, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
