//! Small integer helpers shared across the crate.

/// All divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn is_power_of_two(n: u64) -> bool {
    n > 0 && n & (n - 1) == 0
}

/// Trial-division primality, fine at desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest odd prime factor, if any.
pub fn smallest_odd_prime_factor(n: u64) -> Option<u64> {
    let mut m = n;
    while m % 2 == 0 && m > 1 {
        m /= 2;
    }
    if m == 1 {
        return None;
    }
    let mut d = 3;
    while d * d <= m {
        if m % d == 0 {
            return Some(d);
        }
        d += 2;
    }
    Some(m)
}
