//! Small integer helpers shared by the group and field layers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Distinct prime divisors of `n`, ascending. Trial division; `n` is always small here.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `m`, or `None` when `gcd(a, m) != 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut d = 1;
    while x != 1 {
        x = (x as u128 * a as u128 % m as u128) as u64;
        d += 1;
    }
    Some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_three() {
        assert_eq!(multiplicative_order(3, 13), Some(3));
        assert_eq!(multiplicative_order(3, 7), Some(6));
        assert_eq!(multiplicative_order(3, 19), Some(18));
        assert_eq!(multiplicative_order(3, 31), Some(30));
        assert_eq!(multiplicative_order(3, 9), None);
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(31), vec![31]);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(pow_mod(2, 3, 7), 1);
    }
}
