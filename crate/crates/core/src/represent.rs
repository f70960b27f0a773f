//! Representations `p = x^2 + d y^2` and `p = u^2 + v^2`, and the sign
//! normalization that the prediction tables assume: `u = 1 (mod 4)` and the
//! odd parts of `x`, `y`, `v` all `= 1 (mod 4)`.

use crate::modarith::PrimeField;
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum RepresentError {
    #[error("p must be 1 mod 4")]
    NotOneModFour,
    #[error("quadruple does not satisfy p = x^2 + d y^2 = u^2 + v^2 with u odd, v even")]
    InvalidQuadruple,
}

/// Why a pair `(b, p)` fails the hypothesis gate. These are data, not
/// errors: the statements under test are conditional, so a failed
/// hypothesis means "skipped", never "mismatch".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkipReason {
    /// p failed the primality check.
    NotPrime,
    /// b = 0 is outside every family (d would be 1).
    ZeroB,
    /// p != 1 (mod 4), i.e. (-1/p) != 1.
    NotOneModFour,
    /// p = b^2 + 4 (b odd) or p = b^2/4 + 1 (b even).
    EqualsD { odd_b: bool },
    /// p divides d, so (d/p) = 0.
    DividesD,
    /// (d/p) = -1.
    NonResidue,
    /// The principal form x^2 + d y^2 does not represent p (class-group
    /// obstruction); the hypothesis p = x^2 + d y^2 is unsatisfiable.
    NotRepresentable,
}

impl std::fmt::Display for SkipReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SkipReason::NotPrime => write!(f, "p is not prime"),
            SkipReason::ZeroB => write!(f, "b = 0"),
            SkipReason::NotOneModFour => write!(f, "p != 1 mod 4"),
            SkipReason::EqualsD { odd_b: true } => write!(f, "p = b^2+4"),
            SkipReason::EqualsD { odd_b: false } => write!(f, "p = b^2/4+1"),
            SkipReason::DividesD => write!(f, "p divides d"),
            SkipReason::NonResidue => write!(f, "(d/p) = -1"),
            SkipReason::NotRepresentable => write!(f, "p != x^2+dy^2 for all x;y"),
        }
    }
}

/// `d` attached to `b`: `b^2 + 4` for odd `b`, `b^2/4 + 1` for even `b`.
/// Used exactly in this shape; square factors are not stripped.
/// `None` for `b = 0` or when `d` would overflow the supported range.
pub fn d_for_b(b: i64) -> Option<u64> {
    if b == 0 {
        return None;
    }
    let b = b.unsigned_abs() as u128;
    let d = if b % 2 == 1 {
        b * b + 4
    } else {
        (b / 2) * (b / 2) + 1
    };
    if d >= crate::modarith::MAX_MODULUS as u128 {
        None
    } else {
        Some(d as u64)
    }
}

/// The hypothesis gate: returns `d` when `(b, p)` qualifies for the
/// family owning `b`, or the first failing condition.
pub fn gate(b: i64, field: &PrimeField) -> Result<u64, SkipReason> {
    if b == 0 {
        return Err(SkipReason::ZeroB);
    }
    let p = field.modulus();
    if p % 4 != 1 {
        return Err(SkipReason::NotOneModFour);
    }
    let d = d_for_b(b).ok_or(SkipReason::ZeroB)?;
    if p == d {
        return Err(SkipReason::EqualsD { odd_b: b % 2 != 0 });
    }
    if d % p == 0 {
        return Err(SkipReason::DividesD);
    }
    match field.legendre(field.reduce(d % p)) {
        1 => Ok(d),
        0 => Err(SkipReason::DividesD),
        _ => Err(SkipReason::NonResidue),
    }
}

/// A verified pair of decompositions of one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Representation {
    pub p: u64,
    pub d: u64,
    pub x: i64,
    pub y: i64,
    pub u: i64,
    pub v: i64,
}

impl Representation {
    /// Validates both quadratic equations in exact arithmetic plus the
    /// parity convention `u` odd, `v` even.
    pub fn new(p: u64, d: u64, x: i64, y: i64, u: i64, v: i64) -> Result<Self, RepresentError> {
        let sq = |t: i64| (t as i128) * (t as i128);
        if d < 2
            || sq(x) + d as i128 * sq(y) != p as i128
            || sq(u) + sq(v) != p as i128
            || u % 2 == 0
            || v % 2 != 0
        {
            return Err(RepresentError::InvalidQuadruple);
        }
        Ok(Representation { p, d, x, y, u, v })
    }
}

/// Which of the four parity patterns the pair `(x, y)` falls in. For odd
/// `d` exactly one of `x`, `y` is even; for `d = 2 (mod 8)` it is always
/// `y` (and `p = 1 (mod 8)` forces `4 | v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParityClass {
    /// `2 || x`
    XSingleEven,
    /// `2 || y`
    YSingleEven,
    /// `4 | x`
    XDivFour,
    /// `4 | y`
    YDivFour,
}

/// A representation with signs fixed so that `u = 1 (mod 4)` and the odd
/// parts of `x`, `y`, `v` are `= 1 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizedRep {
    pub p: u64,
    pub d: u64,
    pub x: i64,
    pub y: i64,
    pub u: i64,
    pub v: i64,
    /// 2-adic valuations of x, y, v.
    pub v2x: u32,
    pub v2y: u32,
    pub v2v: u32,
    pub parity_class: ParityClass,
}

/// `n / 2^v2(n)`, sign retained. `n` must be nonzero.
pub fn odd_part(n: i64) -> i64 {
    debug_assert!(n != 0);
    n >> n.trailing_zeros()
}

fn fix_odd_part_sign(n: i64) -> i64 {
    if odd_part(n).rem_euclid(4) == 3 {
        -n
    } else {
        n
    }
}

/// Flips signs of `x`, `y`, `u`, `v` independently to meet the
/// normalization convention. Idempotent; absolute values are preserved.
pub fn normalize(rep: &Representation) -> NormalizedRep {
    let u = if rep.u.rem_euclid(4) == 3 { -rep.u } else { rep.u };
    let x = fix_odd_part_sign(rep.x);
    let y = fix_odd_part_sign(rep.y);
    let v = fix_odd_part_sign(rep.v);
    let v2x = x.trailing_zeros();
    let v2y = y.trailing_zeros();
    let v2v = v.trailing_zeros();
    let parity_class = if x % 2 == 0 {
        debug_assert!(y % 2 != 0);
        if v2x == 1 {
            ParityClass::XSingleEven
        } else {
            ParityClass::XDivFour
        }
    } else {
        debug_assert!(y % 2 == 0, "odd x forces even y for p = 1 mod 4");
        if v2y == 1 {
            ParityClass::YSingleEven
        } else {
            ParityClass::YDivFour
        }
    };
    NormalizedRep {
        p: rep.p,
        d: rep.d,
        x,
        y,
        u,
        v,
        v2x,
        v2y,
        v2v,
        parity_class,
    }
}

/// `p = u^2 + v^2` with `u` odd, `v` even, both positive. Requires
/// `p = 1 (mod 4)`; unique up to order and signs.
pub fn two_squares(field: &PrimeField) -> Result<(i64, i64), RepresentError> {
    let p = field.modulus();
    if p % 4 != 1 {
        return Err(RepresentError::NotOneModFour);
    }
    let r = field.sqrt(p - 1).expect("-1 is a residue for p = 1 mod 4");
    let mut a = p;
    let mut b = r;
    while (b as u128) * (b as u128) > p as u128 {
        let t = a % b;
        a = b;
        b = t;
    }
    let first = b;
    let rest = p - first * first;
    let second = rest.isqrt();
    assert_eq!(second * second, rest, "descent remainder must complete a sum of two squares");
    let (u, v) = if first % 2 == 1 {
        (first, second)
    } else {
        (second, first)
    };
    debug_assert_eq!(u * u + v * v, p);
    Ok((u as i64, v as i64))
}

/// Cornacchia's algorithm for `x^2 + d y^2 = p` with `x, y >= 1`.
///
/// Starts from the canonical square root of `-d` and retries with the
/// other root; falls back to direct search when `d >= p`. Returns `None`
/// when `p` is not represented (including `p | d`).
pub fn cornacchia(field: &PrimeField, d: u64) -> Option<(i64, i64)> {
    let p = field.modulus();
    if d == 0 || d.is_multiple_of(p) {
        return None;
    }
    if d >= p {
        // tiny search space: y^2 <= p/d
        let ymax = (p / d).isqrt();
        for y in 1..=ymax {
            let rem = p - d * y * y;
            let x = rem.isqrt();
            if x >= 1 && x * x == rem {
                return Some((x as i64, y as i64));
            }
        }
        return None;
    }
    let r0 = field.sqrt(field.reduce_signed(-(d as i64)))?;
    for r in [r0, p - r0] {
        let mut a = p;
        let mut b = r;
        while b != 0 && (b as u128) * (b as u128) > p as u128 {
            let t = a % b;
            a = b;
            b = t;
        }
        if b == 0 {
            continue;
        }
        let x = b;
        let rem = p - x * x;
        if rem.is_multiple_of(d) {
            let q = rem / d;
            let y = q.isqrt();
            if y >= 1 && y * y == q {
                debug_assert_eq!(x * x + d * y * y, p);
                return Some((x as i64, y as i64));
            }
        }
    }
    None
}

/// Exhaustive reference solver for `x^2 + d y^2 = p`, positive solutions
/// only. Independent of the descent path; used by tests as the oracle.
pub fn brute_force_xdy(p: u64, d: u64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    let ymax = (p / d).isqrt();
    for y in 1..=ymax {
        let rem = p - d * y * y;
        let x = rem.isqrt();
        if x >= 1 && x * x == rem {
            out.push((x as i64, y as i64));
        }
    }
    out
}
