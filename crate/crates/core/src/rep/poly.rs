//! Polynomials over F2 truncated modulo `u^n`, packed into `u32` with bit `i`
//! holding the coefficient of `u^i`.

#[inline]
pub(crate) fn mask(n: u32) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Carry-less product modulo `u^n`.
pub(crate) fn mul_mod(a: u32, b: u32, n: u32) -> u32 {
    let mut acc = 0u32;
    let mut a = a & mask(n);
    let mut i = 0;
    while a != 0 && i < n {
        if a & 1 == 1 {
            acc ^= b << i;
        }
        a >>= 1;
        i += 1;
    }
    acc & mask(n)
}

/// Multiplicative order of `1 + u` modulo `u^n`: the least power of two `>= n`.
pub(crate) fn one_plus_u_order(n: u32) -> i64 {
    (n.max(1) as u64).next_power_of_two() as i64
}

/// `(1 + u)^k mod u^n` for any integer `k`.
pub(crate) fn one_plus_u_pow(k: i64, n: u32) -> u32 {
    let order = one_plus_u_order(n);
    let mut e = k.rem_euclid(order) as u64;
    let mut base = 0b11 & mask(n);
    let mut acc = 1 & mask(n);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_plus_u() {
        for n in 1..=16 {
            let inv = one_plus_u_pow(-1, n);
            assert_eq!(mul_mod(inv, 0b11, n), 1 & mask(n), "n={n}");
            assert_eq!(inv, mask(n), "(1+u)^-1 = 1 + u + ... + u^(n-1)");
        }
    }

    #[test]
    fn order_is_minimal() {
        for n in 2..=16u32 {
            let ord = one_plus_u_order(n);
            assert_eq!(one_plus_u_pow(ord, n), 1);
            assert_ne!(one_plus_u_pow(ord / 2, n), 1);
        }
    }
}
