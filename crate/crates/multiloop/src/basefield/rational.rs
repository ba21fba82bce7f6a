//! Number-theoretic primitives over ℚ: squarefree parts, Legendre and
//! Hilbert symbols, and local square tests at the places of ℚ.  These drive
//! the Hasse–Minkowski isotropy test and the Witt machinery for rational
//! diagonal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// A place of ℚ: the real place or a finite prime.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Prime(BigInt),
}

/// Trial-division factorization of |n| (n ≠ 0), as prime → exponent.
pub fn factorize(n: &BigInt) -> BTreeMap<BigInt, u32> {
    let mut m = n.abs();
    assert!(!m.is_zero(), "factorize(0)");
    let mut out = BTreeMap::new();
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        let mut k = 0u32;
        while (&m % &d).is_zero() {
            m /= &d;
            k += 1;
        }
        if k > 0 {
            out.insert(d.clone(), k);
        }
        d += 1;
    }
    if !m.is_one() {
        *out.entry(m).or_insert(0) += 1;
    }
    out
}

/// Signed squarefree part of a nonzero integer: the product of primes with
/// odd exponent, carrying the sign of n.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero());
    let mut out = BigInt::one();
    for (p, k) in factorize(n) {
        if k % 2 == 1 {
            out *= p;
        }
    }
    if n.is_negative() {
        -out
    } else {
        out
    }
}

/// The odd primes dividing n.
pub fn odd_prime_divisors(n: &BigInt) -> Vec<BigInt> {
    factorize(n)
        .into_keys()
        .filter(|p| p != &BigInt::from(2))
        .collect()
}

/// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
/// Returns 0 when p | a.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let r = a.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let exp: BigInt = (p - 1) / 2;
    let s = r.modpow(&exp, p);
    if s.is_one() {
        1
    } else {
        -1
    }
}

/// Splits a = p^α · u with p ∤ u, returning (α, u).
fn split_valuation(a: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut u = a.clone();
    let mut alpha = 0u32;
    while (&u % p).is_zero() {
        u /= p;
        alpha += 1;
    }
    (alpha, u)
}

/// ε(u) = (u−1)/2 mod 2 for odd u.
fn eps2(u: &BigInt) -> u32 {
    let r = u.mod_floor(&BigInt::from(4));
    u32::from(r == BigInt::from(3))
}

/// ω(u) = (u²−1)/8 mod 2 for odd u.
fn omega2(u: &BigInt) -> u32 {
    let r = u.mod_floor(&BigInt::from(8));
    u32::from(r == BigInt::from(3) || r == BigInt::from(5))
}

/// Hilbert symbol (a, b)_v ∈ {+1, −1} for nonzero rationals represented by
/// nonzero integers a, b.
///
/// At the real place the symbol is −1 exactly when both arguments are
/// negative.  At an odd prime p with a = p^α u, b = p^β w:
/// (a,b)_p = (−1)^{αβ(p−1)/2} (u/p)^β (w/p)^α, and at p = 2 with odd parts
/// u, w: (a,b)_2 = (−1)^{ε(u)ε(w) + αω(w) + βω(u)}.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, place: &Place) -> i32 {
    assert!(!a.is_zero() && !b.is_zero());
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if p == &BigInt::from(2) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, w) = split_valuation(b, p);
            let exp = eps2(&u) * eps2(&w) + alpha * omega2(&w) + beta * omega2(&u);
            if exp.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, w) = split_valuation(b, p);
            let p_eps: BigInt = (p - 1) / 2;
            let mut sign = 1i32;
            if alpha % 2 == 1 && beta % 2 == 1 && p_eps.is_odd() {
                sign = -sign;
            }
            if beta % 2 == 1 {
                sign *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                sign *= legendre(&w, p);
            }
            sign
        }
    }
}

/// Whether the nonzero integer a is a square in the completion ℚ_v.
pub fn is_local_square(a: &BigInt, place: &Place) -> bool {
    assert!(!a.is_zero());
    match place {
        Place::Infinity => a.is_positive(),
        Place::Prime(p) if p == &BigInt::from(2) => {
            let (alpha, u) = split_valuation(a, p);
            alpha % 2 == 0 && u.mod_floor(&BigInt::from(8)).is_one()
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            alpha % 2 == 0 && legendre(&u, p) == 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&bi(18)), bi(2)); // 18 = 2·3²
        assert_eq!(squarefree_part(&bi(-12)), bi(-3));
        assert_eq!(squarefree_part(&bi(1)), bi(1));
        assert_eq!(squarefree_part(&bi(-1)), bi(-1));
        assert_eq!(squarefree_part(&bi(49)), bi(1));
    }

    #[test]
    fn legendre_matches_enumeration() {
        // oracle: enumerate squares mod p directly
        for p in [3i64, 5, 7, 11, 13] {
            let squares: std::collections::BTreeSet<i64> =
                (1..p).map(|a| a * a % p).collect();
            for a in 1..p {
                let expect = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(legendre(&bi(a), &bi(p)), expect, "({a}/{p})");
            }
        }
    }

    /// Oracle for the Hilbert symbol at an odd prime or 2: (a,b)_p = 1 iff
    /// z² = a x² + b y² has a nontrivial solution mod p^k with a primitive
    /// triple, tested by brute force over a small modulus.
    fn hilbert_oracle_finite(a: i64, b: i64, p: i64) -> i32 {
        // solutions mod p^3 with not all of x,y,z divisible by p are a
        // faithful proxy at this scale (entries are p-reduced units times
        // at most one power of p)
        let m = p.pow(3);
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if x % p == 0 && y % p == 0 && z % p == 0 {
                        continue;
                    }
                    if (a * x * x + b * y * y - z * z).rem_euclid(m) == 0 {
                        return 1;
                    }
                }
            }
        }
        -1
    }

    #[test]
    fn hilbert_symbol_odd_prime_spot_checks() {
        for (a, b, p) in [
            (1, 1, 3),
            (3, 3, 3),
            (3, 5, 5),
            (2, 3, 3),
            (5, 5, 5),
            (-1, 3, 3),
            (-1, 7, 7),
            (2, 7, 7),
            (7, 7, 7),
        ] {
            let got = hilbert_symbol(&bi(a), &bi(b), &Place::Prime(bi(p)));
            let want = hilbert_oracle_finite(a, b, p);
            assert_eq!(got, want, "({a},{b})_{p}");
        }
    }

    #[test]
    fn hilbert_symbol_at_two_spot_checks() {
        for (a, b) in [(1, 1), (2, 2), (2, 3), (3, 3), (-1, -1), (-1, 2), (2, 5), (3, 5)] {
            let got = hilbert_symbol(&bi(a), &bi(b), &Place::Prime(bi(2)));
            let want = hilbert_oracle_finite(a, b, 2);
            assert_eq!(got, want, "({a},{b})_2");
        }
    }

    #[test]
    fn hilbert_symbol_real_place() {
        let inf = Place::Infinity;
        assert_eq!(hilbert_symbol(&bi(-1), &bi(-1), &inf), -1);
        assert_eq!(hilbert_symbol(&bi(-1), &bi(2), &inf), 1);
        assert_eq!(hilbert_symbol(&bi(3), &bi(5), &inf), 1);
    }

    #[test]
    fn hilbert_product_formula() {
        // ∏_v (a,b)_v = 1 over all places (only finitely many are −1)
        for (a, b) in [(6, 10), (-3, 14), (30, -42), (-2, -2), (15, 21)] {
            let mut prod = hilbert_symbol(&bi(a), &bi(b), &Place::Infinity);
            let mut primes = vec![bi(2)];
            primes.extend(odd_prime_divisors(&(bi(a) * bi(b))));
            for p in primes {
                prod *= hilbert_symbol(&bi(a), &bi(b), &Place::Prime(p));
            }
            assert_eq!(prod, 1, "product formula for ({a},{b})");
        }
    }

    #[test]
    fn local_squares() {
        assert!(is_local_square(&bi(4), &Place::Prime(bi(7))));
        assert!(!is_local_square(&bi(7), &Place::Prime(bi(7))));
        assert!(is_local_square(&bi(2), &Place::Prime(bi(7)))); // 3² = 2 mod 7
        assert!(is_local_square(&bi(17), &Place::Prime(bi(2)))); // 17 ≡ 1 mod 8
        assert!(!is_local_square(&bi(3), &Place::Prime(bi(2))));
        assert!(!is_local_square(&bi(-4), &Place::Infinity));
    }
}
