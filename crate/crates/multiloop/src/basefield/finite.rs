//! Arithmetic in GF(p^e) for odd p, used by the square-class and isotropy
//! oracles.  Elements are coefficient vectors over the prime field, reduced
//! modulo a fixed monic irreducible polynomial (the lexicographically first
//! one, so the representation is canonical per (p, e)).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Arithmetic context for GF(p^e).
#[derive(Debug, Clone)]
pub struct Gf {
    pub p: u64,
    pub e: u32,
    /// Monic modulus of degree e, stored as coefficients c_0..c_e (c_e = 1).
    /// Empty for e = 1.
    modulus: Vec<u64>,
}

fn gf_cache() -> &'static Mutex<HashMap<(u64, u32), Gf>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Gf>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Deterministic primality test for the small odd moduli in use.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Gf {
    /// Fetches (or builds) the context for GF(p^e).  Panics if p is not an
    /// odd prime or the field order overflows the small-field range; callers
    /// validate through `FieldDescriptor::finite_field`.
    pub fn get(p: u64, e: u32) -> Gf {
        let mut cache = gf_cache().lock().unwrap();
        if let Some(g) = cache.get(&(p, e)) {
            return g.clone();
        }
        assert!(is_prime(p) && p % 2 == 1, "p must be an odd prime");
        assert!(e >= 1);
        let modulus = if e == 1 {
            Vec::new()
        } else {
            find_irreducible(p, e)
        };
        let g = Gf { p, e, modulus };
        cache.insert((p, e), g.clone());
        g
    }

    /// Field order q = p^e.
    pub fn order(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.e as usize]
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    /// Embeds an integer via the prime subfield.
    pub fn embed_int(&self, n: i64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }

    /// Reduces a raw coefficient vector into canonical form (mod p, length e).
    pub fn embed_coeffs(&self, coeffs: &[i64]) -> Vec<u64> {
        let mut v = self.zero();
        for (i, &c) in coeffs.iter().enumerate() {
            assert!(i < self.e as usize, "coefficient vector longer than degree");
            v[i] = c.rem_euclid(self.p as i64) as u64;
        }
        v
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| (self.p - x % self.p) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let e = self.e as usize;
        if e == 1 {
            return vec![a[0] * b[0] % self.p];
        }
        let mut prod = vec![0u64; 2 * e - 1];
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % self.p;
            }
        }
        // reduce modulo the monic modulus: x^e = -(c_0 + .. + c_{e-1} x^{e-1})
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let m = self.modulus[i];
                if m != 0 {
                    let sub = c * m % self.p;
                    prod[k - e + i] = (prod[k - e + i] + self.p - sub) % self.p;
                }
            }
        }
        prod.truncate(e);
        prod
    }

    pub fn pow(&self, a: &[u64], mut n: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: &[u64]) -> Vec<u64> {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow(a, self.order() - 2)
    }

    /// Euler criterion: a ≠ 0 is a square iff a^((q-1)/2) = 1.
    pub fn is_square(&self, a: &[u64]) -> bool {
        assert!(!self.is_zero(a));
        let h = (self.order() - 1) / 2;
        self.pow(a, h) == self.one()
    }

    /// The canonical quadratic non-residue: the first non-square in the
    /// element enumeration order (coefficient vectors, last coordinate
    /// slowest).
    pub fn nonresidue(&self) -> Vec<u64> {
        for a in self.elements() {
            if !self.is_zero(&a) && !self.is_square(&a) {
                return a;
            }
        }
        unreachable!("every finite field of odd order has a non-residue")
    }

    /// Iterates over all q elements in a fixed order: the coefficient vector
    /// (c_0,…,c_{e-1}) counts with c_0 fastest.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let e = self.e as usize;
        let q = self.order();
        (0..q).map(move |mut idx| {
            let mut v = vec![0u64; e];
            for c in v.iter_mut() {
                *c = idx % self.p;
                idx /= self.p;
            }
            v
        })
    }
}

/// Finds the lexicographically first monic irreducible polynomial of degree e
/// over F_p, coefficients ordered (c_0, c_1, …, c_{e-1}) with c_0 fastest.
fn find_irreducible(p: u64, e: u32) -> Vec<u64> {
    let deg = e as usize;
    let count = p.pow(e);
    for idx in 0..count {
        let mut poly = vec![0u64; deg + 1];
        let mut n = idx;
        for c in poly.iter_mut().take(deg) {
            *c = n % p;
            n /= p;
        }
        poly[deg] = 1;
        if poly_is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// Rabin's test: f of degree e is irreducible over F_p iff
/// x^(p^e) ≡ x (mod f) and gcd(x^(p^(e/ℓ)) − x, f) = 1 for each prime ℓ | e.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let e = (f.len() - 1) as u32;
    if f[0] == 0 {
        return false; // divisible by x
    }
    let x = vec![0u64, 1];
    let xq = poly_powmod_frobenius(&x, p, e, f, p);
    if poly_mod_sub(&xq, &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    for l in prime_divisors(e as u64) {
        let sub = e / l as u32;
        let xs = poly_powmod_frobenius(&x, p, sub, f, p);
        let diff = poly_mod_sub(&xs, &x, p);
        if poly_gcd(&diff, f, p).len() > 1 {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Computes g^(p^k) mod f by k successive p-th powers.
fn poly_powmod_frobenius(g: &[u64], p: u64, k: u32, f: &[u64], pm: u64) -> Vec<u64> {
    let mut acc = g.to_vec();
    for _ in 0..k {
        acc = poly_powmod(&acc, p, f, pm);
    }
    acc
}

fn poly_powmod(g: &[u64], mut n: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(g, f, p);
    let mut acc = vec![1u64];
    while n > 0 {
        if n & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &base, p), f, p);
        }
        base = poly_rem(&poly_mul(&base, &base, p), f, p);
        n >>= 1;
    }
    acc
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn poly_mod_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y % p) % p
        })
        .collect();
    trim(out)
}

/// Remainder of a modulo monic-leading f (dividing out by the leading
/// coefficient's inverse when f is not monic).
fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let df = f.len() - 1;
    let lead_inv = mod_inverse(f[df], p);
    while r.len() > df {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for i in 0..=df {
            let sub = c * f[i] % p;
            r[dr - df + i] = (r[dr - df + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, a ≠ 0 mod p
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut n: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        n >>= 1;
    }
    acc
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_mod_7_by_enumeration() {
        // oracle: squares mod 7 are {1, 2, 4}
        let gf = Gf::get(7, 1);
        let mut squares = std::collections::BTreeSet::new();
        for a in 1..7u64 {
            squares.insert(a * a % 7);
        }
        assert_eq!(squares, [1, 2, 4].into_iter().collect());
        for a in 1..7u64 {
            assert_eq!(gf.is_square(&[a]), squares.contains(&a), "a = {a}");
        }
        assert_eq!(gf.nonresidue(), vec![3]);
    }

    #[test]
    fn gf9_field_axioms() {
        let gf = Gf::get(3, 2);
        assert_eq!(gf.order(), 9);
        // modulus is x^2 + 1, the lexicographically first irreducible
        assert_eq!(gf.modulus, vec![1, 0, 1]);
        let els: Vec<_> = gf.elements().collect();
        assert_eq!(els.len(), 9);
        // every nonzero element has an inverse and x * x^{-1} = 1
        for a in &els {
            if gf.is_zero(a) {
                continue;
            }
            assert_eq!(gf.mul(a, &gf.inverse(a)), gf.one());
        }
        // squares form a subgroup of index 2: exactly 4 nonzero squares
        let count = els
            .iter()
            .filter(|a| !gf.is_zero(a) && gf.is_square(a))
            .count();
        assert_eq!(count, 4);
    }

    #[test]
    fn gf27_cubic_extension() {
        let gf = Gf::get(3, 3);
        assert_eq!(gf.order(), 27);
        let els: Vec<_> = gf.elements().collect();
        assert_eq!(els.len(), 27);
        // (q − 1)/2 = 13 nonzero squares
        let squares = els
            .iter()
            .filter(|a| !gf.is_zero(a) && gf.is_square(a))
            .count();
        assert_eq!(squares, 13);
        for a in &els {
            if gf.is_zero(a) {
                continue;
            }
            assert_eq!(gf.mul(a, &gf.inverse(a)), gf.one());
        }
    }

    #[test]
    fn square_set_matches_exhaustive_products() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let gf = Gf::get(p, e);
            let els: Vec<_> = gf.elements().collect();
            let mut squares: Vec<Vec<u64>> = els.iter().map(|a| gf.mul(a, a)).collect();
            squares.sort();
            squares.dedup();
            for a in &els {
                if gf.is_zero(a) {
                    continue;
                }
                assert_eq!(gf.is_square(a), squares.binary_search(a).is_ok());
            }
        }
    }
}
