//! Order bookkeeping: parity masks, Neumann factors, canonical reduction.

/// Indicator pair selecting the cosine (even n) or sine (odd n) branch of
/// the Fourier projection. Exactly one of `c`, `s` is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParityMask {
    pub c: u8,
    pub s: u8,
}

pub fn parity_mask(n: i64) -> ParityMask {
    if n & 1 == 0 {
        ParityMask { c: 1, s: 0 }
    } else {
        ParityMask { c: 0, s: 1 }
    }
}

/// Neumann factor ε_n: 1 for n = 0, 2 otherwise.
pub fn neumann_factor(n: i64) -> i64 {
    if n == 0 {
        1
    } else {
        2
    }
}

/// Reduces (n, m) to a canonical triple (n_c, m_c, sign) with
/// B_n(m) = sign · B_{n_c}(m_c) and n_c ∈ [0, 2j].
///
/// The reduction composes three exact relations on the N-point grid,
/// N = 2j+1: order negation B_{−n} = (−1)^n B_n, order aliasing
/// (B_{n+2N} = B_n, and B_{N−r} = ±B_r with the sign following the
/// parity), and argument negation B_n(−m) = (−1)^n B_n(m).
///
/// Orders that are odd multiples of N are identically zero (their sine
/// branch vanishes at every node); they are encoded as (1, 0, +1), since
/// B_1(0) = 0, so evaluating through the triple still yields the exact
/// value. For j = 0 that canonical order 1 exceeds 2j — the one-point
/// grid has no vanishing B in range — but evaluation through the triple
/// remains exact there too.
pub fn canonicalize_order(j: u32, n: i64, m: i64) -> (i64, i64, i8) {
    let nn = 2 * j as i64 + 1;
    let mut sign: i8 = 1;

    let mut n_abs = n;
    if n_abs < 0 {
        if n_abs & 1 == 1 {
            sign = -sign;
        }
        n_abs = -n_abs;
    }

    let r = n_abs % nn;
    let q = n_abs / nn;
    let n_c = if q & 1 == 0 {
        r
    } else if r != 0 {
        // Odd quotient flips the sine table: B_{qN+r} = ±B_{N−r} with the
        // sign of the order's own parity.
        if n_abs & 1 == 1 {
            sign = -sign;
        }
        nn - r
    } else {
        // Odd multiple of N: identically zero.
        return (1, 0, 1);
    };

    let m_c = if m < 0 {
        if n_c & 1 == 1 {
            sign = -sign;
        }
        -m
    } else {
        m
    };

    (n_c, m_c, sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_mask_cases() {
        assert_eq!(parity_mask(0), ParityMask { c: 1, s: 0 });
        assert_eq!(parity_mask(7), ParityMask { c: 0, s: 1 });
        assert_eq!(parity_mask(-4), ParityMask { c: 1, s: 0 });
        assert_eq!(parity_mask(-9), ParityMask { c: 0, s: 1 });
        for n in -20..20 {
            let p = parity_mask(n);
            assert_eq!(p.c + p.s, 1);
        }
    }

    #[test]
    fn neumann_factor_cases() {
        assert_eq!(neumann_factor(0), 1);
        assert_eq!(neumann_factor(1), 2);
        assert_eq!(neumann_factor(-3), 2);
    }

    #[test]
    fn canonicalize_reference_cases() {
        assert_eq!(canonicalize_order(5, -3, 2), (3, 2, -1));
        assert_eq!(canonicalize_order(5, 4, -2), (4, 2, 1));
        assert_eq!(canonicalize_order(5, 0, 0), (0, 0, 1));
    }

    #[test]
    fn canonicalize_aliasing() {
        // N = 11. Odd orders past N flip sign: sin(13φ_k) = −sin(9φ_k) on
        // the grid, so B_13 = −B_9. Even orders do not: cos(14φ_k) =
        // cos(8φ_k), so B_14 = B_8.
        assert_eq!(canonicalize_order(5, 13, 1), (9, 1, -1));
        assert_eq!(canonicalize_order(5, 14, 1), (8, 1, 1));
        assert_eq!(canonicalize_order(5, 15, 1), (7, 1, -1));
        // Full period: n + 2N is invariant.
        assert_eq!(canonicalize_order(5, 3 + 22, 4), (3, 4, 1));
    }

    #[test]
    fn canonicalize_zero_orders() {
        // Odd multiples of N vanish identically; encoded as B_1(0) = 0.
        assert_eq!(canonicalize_order(5, 11, 9), (1, 0, 1));
        assert_eq!(canonicalize_order(5, 33, -2), (1, 0, 1));
        assert_eq!(canonicalize_order(5, -11, 5), (1, 0, 1));
        // Even multiples are B_0 again.
        assert_eq!(canonicalize_order(5, 22, 9), (0, 9, 1));
    }

    #[test]
    fn canonical_range_holds_for_positive_j() {
        for j in 1..6u32 {
            let top = 2 * j as i64;
            for n in -40..=40i64 {
                for m in [-7i64, 0, 3] {
                    let (n_c, m_c, sign) = canonicalize_order(j, n, m);
                    assert!((0..=top).contains(&n_c), "j={j} n={n} gave n_c={n_c}");
                    assert!(m_c >= 0);
                    assert!(sign == 1 || sign == -1);
                }
            }
        }
    }

    #[test]
    fn sign_composition_negative_order_and_argument() {
        // B_{−3}(−2) = (−1)^3 B_3(−2) = (−1)^3 (−1)^3 B_3(2) = B_3(2).
        assert_eq!(canonicalize_order(5, -3, -2), (3, 2, 1));
    }
}
