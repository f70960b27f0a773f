//! Lucas sequences `U_n(b, c)`, `V_n(b, c)` modulo a prime, plus an exact
//! small-index evaluator that serves as the oracle for the modular path.
//!
//! The sequences are defined by `U_0 = 0`, `U_1 = 1`, `V_0 = 2`, `V_1 = b`
//! and `s_{n+1} = b s_n - c s_{n-1}`. Equivalently, with `D = b^2 - 4c`,
//! `(V_n + U_n sqrt(D)) / 2 = ((b + sqrt(D)) / 2)^n`.

use crate::modarith::PrimeField;
use num_bigint::BigInt;
use thiserror::Error;

/// Largest index accepted by [`lucas_uv_exact`].
pub const EXACT_INDEX_CAP: u64 = 64;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum LucasError {
    #[error("exact evaluation capped at n <= {EXACT_INDEX_CAP}, got {0}")]
    IndexTooLarge(u64),
}

/// Recurrence parameters. `b` and `c` stay signed and are reduced mod p only
/// at the evaluation boundary; the conjecture sweeps fix `c = -1` but the
/// identities are tested over general `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LucasParams {
    pub b: i64,
    pub c: i64,
}

impl LucasParams {
    pub fn new(b: i64, c: i64) -> Self {
        LucasParams { b, c }
    }

    /// `D = b^2 - 4c`.
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.c
    }
}

/// `(U_n mod p, V_n mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LucasPair {
    pub u: u64,
    pub v: u64,
}

/// Evaluates `(U_n, V_n) mod p` in `O(log n)` steps by fast doubling.
///
/// Doubling uses `U_{2k} = U_k V_k` and `V_{2k} = V_k^2 - 2 c^k`; the odd
/// step uses `U_{k+1} = (b U_k + V_k)/2` and `V_{k+1} = (D U_k + b V_k)/2`,
/// both exact mod an odd prime.
pub fn lucas_uv_mod(params: &LucasParams, n: u64, field: &PrimeField) -> LucasPair {
    let b = field.reduce_signed(params.b);
    let c = field.reduce_signed(params.c);
    let d = field.reduce_signed(params.discriminant());
    let half = field.half();

    let mut u = 0u64; // U_0
    let mut v = field.reduce(2); // V_0
    let mut q = 1u64; // c^0

    if n == 0 {
        return LucasPair { u, v };
    }
    let bits = 64 - n.leading_zeros();
    for i in (0..bits).rev() {
        // k -> 2k
        let u2 = field.mul(u, v);
        let v2 = field.sub(field.mul(v, v), field.mul(2 % field.modulus(), q));
        q = field.mul(q, q);
        u = u2;
        v = v2;
        if (n >> i) & 1 == 1 {
            // 2k -> 2k + 1
            let u1 = field.mul(field.add(field.mul(b, u), v), half);
            let v1 = field.mul(field.add(field.mul(d, u), field.mul(b, v)), half);
            q = field.mul(q, c);
            u = u1;
            v = v1;
        }
    }
    LucasPair { u, v }
}

/// Exact `(U_n, V_n)` by the linear recurrence, for `n <= 64`.
pub fn lucas_uv_exact(params: &LucasParams, n: u64) -> Result<(BigInt, BigInt), LucasError> {
    if n > EXACT_INDEX_CAP {
        return Err(LucasError::IndexTooLarge(n));
    }
    let b = BigInt::from(params.b);
    let c = BigInt::from(params.c);
    let mut u_prev = BigInt::from(0);
    let mut u_cur = BigInt::from(1);
    let mut v_prev = BigInt::from(2);
    let mut v_cur = b.clone();
    if n == 0 {
        return Ok((u_prev, v_prev));
    }
    for _ in 1..n {
        let u_next = &b * &u_cur - &c * &u_prev;
        u_prev = std::mem::replace(&mut u_cur, u_next);
        let v_next = &b * &v_cur - &c * &v_prev;
        v_prev = std::mem::replace(&mut v_cur, v_next);
    }
    Ok((u_cur, v_cur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::is_prime_u64;
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn mod_examples() {
        let fib = LucasParams::new(1, -1);
        assert_eq!(lucas_uv_mod(&fib, 10, &f(41)), LucasPair { u: 14, v: 0 });
        assert_eq!(lucas_uv_mod(&fib, 0, &f(41)), LucasPair { u: 0, v: 2 });
        let pell = LucasParams::new(2, -1);
        assert_eq!(lucas_uv_mod(&pell, 4, &f(17)), LucasPair { u: 12, v: 0 });
    }

    #[test]
    fn exact_examples() {
        assert_eq!(
            lucas_uv_exact(&LucasParams::new(1, -1), 7).unwrap(),
            (big(13), big(29))
        );
        assert_eq!(
            lucas_uv_exact(&LucasParams::new(3, -1), 1).unwrap(),
            (big(1), big(3))
        );
        assert_eq!(
            lucas_uv_exact(&LucasParams::new(2, -1), 4).unwrap(),
            (big(12), big(34))
        );
        assert_eq!(
            lucas_uv_exact(&LucasParams::new(2, -1), 65),
            Err(LucasError::IndexTooLarge(65))
        );
    }

    #[test]
    fn mod_agrees_with_exact_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1234);
        let primes: Vec<u64> = (3..2000u64).filter(|&p| is_prime_u64(p)).collect();
        for _ in 0..100 {
            let b = rng.gen_range(-100i64..=100);
            let c = rng.gen_range(-10i64..=10);
            let p = primes[rng.gen_range(0..primes.len())];
            let fp = f(p);
            let params = LucasParams::new(b, c);
            for n in 0..=64u64 {
                let (eu, ev) = lucas_uv_exact(&params, n).unwrap();
                let m = lucas_uv_mod(&params, n, &fp);
                let pb = BigInt::from(p);
                let red = |x: &BigInt| ((x % &pb + &pb) % &pb).to_string().parse::<u64>().unwrap();
                assert_eq!((red(&eu), red(&ev)), (m.u, m.v), "b={b} c={c} n={n} p={p}");
            }
        }
    }

    #[test]
    fn sign_symmetry_exact_level() {
        // U_n(-b, c) = (-1)^(n+1) U_n(b, c); V_n(-b, c) = (-1)^n V_n(b, c)
        for b in -9i64..=9 {
            for c in [-3i64, -1, 1, 2] {
                for n in 0..=20u64 {
                    let (u, v) = lucas_uv_exact(&LucasParams::new(b, c), n).unwrap();
                    let (un, vn) = lucas_uv_exact(&LucasParams::new(-b, c), n).unwrap();
                    let su = if n % 2 == 0 { big(-1) } else { big(1) };
                    let sv = if n % 2 == 0 { big(1) } else { big(-1) };
                    assert_eq!(un, su * u);
                    assert_eq!(vn, sv * v);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn norm_identity(b in -60i64..=60, c in -8i64..=8, n in 0u64..5000, pidx in 0usize..200) {
            let primes: Vec<u64> = (3..3000u64).filter(|&p| is_prime_u64(p)).collect();
            let fp = f(primes[pidx % primes.len()]);
            let params = LucasParams::new(b, c);
            let LucasPair { u, v } = lucas_uv_mod(&params, n, &fp);
            let d = fp.reduce_signed(params.discriminant());
            let lhs = fp.sub(fp.mul(v, v), fp.mul(d, fp.mul(u, u)));
            let rhs = fp.mul(fp.reduce(4), fp.pow(fp.reduce_signed(c), n));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn doubling_identities(b in -60i64..=60, c in -8i64..=8, n in 0u64..3000, pidx in 0usize..200) {
            let primes: Vec<u64> = (3..3000u64).filter(|&p| is_prime_u64(p)).collect();
            let fp = f(primes[pidx % primes.len()]);
            let params = LucasParams::new(b, c);
            let sn = lucas_uv_mod(&params, n, &fp);
            let s2n = lucas_uv_mod(&params, 2 * n, &fp);
            let cn = fp.pow(fp.reduce_signed(c), n);
            prop_assert_eq!(s2n.u, fp.mul(sn.u, sn.v));
            prop_assert_eq!(s2n.v, fp.sub(fp.mul(sn.v, sn.v), fp.mul(fp.reduce(2), cn)));
        }

        #[test]
        fn sign_symmetry_mod_p(b in -60i64..=60, c in -8i64..=8, n in 0u64..3000, pidx in 0usize..200) {
            let primes: Vec<u64> = (3..3000u64).filter(|&p| is_prime_u64(p)).collect();
            let fp = f(primes[pidx % primes.len()]);
            let pos = lucas_uv_mod(&LucasParams::new(b, c), n, &fp);
            let neg = lucas_uv_mod(&LucasParams::new(-b, c), n, &fp);
            let (eu, ev) = if n % 2 == 0 {
                (fp.neg(pos.u), pos.v)
            } else {
                (pos.u, fp.neg(pos.v))
            };
            prop_assert_eq!(neg.u, eu);
            prop_assert_eq!(neg.v, ev);
        }
    }
}
