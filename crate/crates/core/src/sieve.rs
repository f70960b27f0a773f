//! Segmented sieve of Eratosthenes for the sweep ranges.

const SEGMENT: usize = 1 << 16;

/// All primes `< limit`, in increasing order.
pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit <= 2 {
        return Vec::new();
    }
    let root = (limit - 1).isqrt() as usize;
    // base sieve up to sqrt(limit)
    let mut base_composite = vec![false; root + 1];
    let mut base: Vec<usize> = Vec::new();
    for n in 2..=root {
        if !base_composite[n] {
            base.push(n);
            let mut m = n * n;
            while m <= root {
                base_composite[m] = true;
                m += n;
            }
        }
    }
    let mut primes: Vec<u64> = base.iter().map(|&p| p as u64).collect();
    let mut segment = vec![false; SEGMENT];
    let mut low = root as u64 + 1;
    while low < limit {
        let high = (low + SEGMENT as u64).min(limit);
        let len = (high - low) as usize;
        segment[..len].fill(false);
        for &p in &base {
            let p = p as u64;
            let mut m = low.div_ceil(p) * p;
            while m < high {
                segment[(m - low) as usize] = true;
                m += p;
            }
        }
        for (i, &composite) in segment[..len].iter().enumerate() {
            if !composite {
                primes.push(low + i as u64);
            }
        }
        low = high;
    }
    primes
}

/// Primes `p = 1 (mod 4)` with `5 <= p < limit`.
pub fn primes_one_mod_four_below(limit: u64) -> Vec<u64> {
    primes_below(limit).into_iter().filter(|p| p % 4 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::is_prime_u64;

    #[test]
    fn matches_miller_rabin_up_to_200k() {
        let sieved = primes_below(200_000);
        let direct: Vec<u64> = (2..200_000u64).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(sieved, direct);
    }

    #[test]
    fn one_mod_four_filter() {
        assert_eq!(primes_one_mod_four_below(30), vec![5, 13, 17, 29]);
    }
}
