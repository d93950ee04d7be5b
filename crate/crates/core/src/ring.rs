//! Arithmetic in `Z_M` and the prime-power decompositions used by the
//! construction.
//!
//! Elements are plain `u64` residues in `[0, M)`. Every operation takes the
//! ring explicitly, so any number of rings can be used side by side.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`RingSpec::new`]. Products of two residues
/// stay below `2^32`, so `u64` arithmetic never overflows.
pub const MAX_MODULUS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ElementClass {
    Zero,
    Unit,
    ZeroDivisor,
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementClass::Zero => "zero",
            ElementClass::Unit => "a unit",
            ElementClass::ZeroDivisor => "a zero divisor",
        })
    }
}

/// Decomposition `x = p^k * unit_part` of a nonzero element of `Z_{p^n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Valuation {
    pub k: u32,
    pub unit_part: u64,
}

/// The ring `Z_M` together with its factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    modulus: u64,
    factors: Vec<(u64, u32)>,
}

/// Shorthand for [`RingSpec::new`].
pub fn make_ring(modulus: u64) -> Result<RingSpec> {
    RingSpec::new(modulus)
}

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    factors
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RingSpec {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        if modulus > MAX_MODULUS {
            return Err(Error::ModulusTooLarge {
                modulus,
                max: MAX_MODULUS,
            });
        }
        Ok(Self {
            modulus,
            factors: factorize(modulus),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Prime factorization as `(prime, exponent)` pairs, ascending by prime.
    pub fn prime_factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn prime(&self) -> Option<u64> {
        self.is_prime_power().then(|| self.factors[0].0)
    }

    pub fn exponent(&self) -> Option<u32> {
        self.is_prime_power().then(|| self.factors[0].1)
    }

    /// `(p, n)` for a prime-power ring, otherwise an unsupported-ring error.
    pub fn require_prime_power(&self) -> Result<(u64, u32)> {
        if self.is_prime_power() {
            Ok(self.factors[0])
        } else {
            Err(Error::UnsupportedRing(self.modulus))
        }
    }

    /// Checks that `value` is a residue of this ring.
    pub fn element(&self, value: u64) -> Result<u64> {
        if value < self.modulus {
            Ok(value)
        } else {
            Err(Error::OutOfRange {
                value,
                modulus: self.modulus,
            })
        }
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.modulus
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b % self.modulus) % self.modulus
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a % self.modulus) * (b % self.modulus) % self.modulus
    }

    pub fn pow(&self, base: u64, mut exp: u32) -> u64 {
        let mut acc = 1 % self.modulus;
        let mut b = base % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    pub fn classify(&self, x: u64) -> ElementClass {
        let x = x % self.modulus;
        if x == 0 {
            ElementClass::Zero
        } else if self.is_unit(x) {
            ElementClass::Unit
        } else {
            ElementClass::ZeroDivisor
        }
    }

    pub fn is_unit(&self, x: u64) -> bool {
        match self.prime() {
            Some(p) => !x.is_multiple_of(p),
            None => gcd(x % self.modulus, self.modulus) == 1,
        }
    }

    pub fn is_zero_divisor(&self, x: u64) -> bool {
        self.classify(x) == ElementClass::ZeroDivisor
    }

    /// All units in ascending order. This order fixes the indexing
    /// `u_1 < u_2 < ...` used by the canonical blocks.
    pub fn units(&self) -> Vec<u64> {
        (1..self.modulus).filter(|&x| self.is_unit(x)).collect()
    }

    /// All nonzero non-units in ascending order (`d_1 < d_2 < ...`).
    pub fn zero_divisors(&self) -> Vec<u64> {
        (1..self.modulus).filter(|&x| !self.is_unit(x)).collect()
    }

    /// Euler's totient of the modulus.
    pub fn unit_count(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product()
    }

    pub fn zero_divisor_count(&self) -> u64 {
        self.modulus - 1 - self.unit_count()
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, u: u64) -> Result<u64> {
        let m = self.modulus as i64;
        let (mut r0, mut r1) = (m, (u % self.modulus) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return Err(Error::NotInvertible {
                value: u,
                modulus: self.modulus,
            });
        }
        Ok(t0.rem_euclid(m) as u64)
    }

    /// Writes a nonzero `x` as `p^k * u` with `u` a unit and `k < n`.
    ///
    /// The unit part is `x / p^k` taken as an integer, which is the least
    /// positive representative among the valid choices.
    pub fn valuation(&self, x: u64) -> Result<Valuation> {
        let (p, _) = self.require_prime_power()?;
        let mut rest = x % self.modulus;
        if rest == 0 {
            return Err(Error::ZeroHasNoValuation);
        }
        let mut k = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        Ok(Valuation { k, unit_part: rest })
    }

    /// The unique unit `u'` with `1 + u*u' = 0`, namely `-u^{-1}`.
    pub fn neg_unit_partner(&self, u: u64) -> Result<u64> {
        Ok(self.neg(self.inv(u)?))
    }

    /// The additive inverse of a zero divisor, which is again a zero divisor.
    pub fn additive_partner(&self, d: u64) -> Result<u64> {
        match self.classify(d) {
            ElementClass::ZeroDivisor => Ok(self.neg(d)),
            found => Err(Error::WrongClass {
                value: d,
                expected: ElementClass::ZeroDivisor,
                found,
            }),
        }
    }

    pub(crate) fn expect_class(&self, x: u64, expected: ElementClass) -> Result<()> {
        let found = self.classify(x);
        if found == expected {
            Ok(())
        } else {
            Err(Error::WrongClass {
                value: x,
                expected,
                found,
            })
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(m: u64) -> RingSpec {
        RingSpec::new(m).unwrap()
    }

    fn brute_gcd_units(m: u64) -> Vec<u64> {
        (1..m).filter(|&x| (1..m).any(|y| x * y % m == 1)).collect()
    }

    #[test]
    fn make_ring_metadata() {
        let z4 = make_ring(4).unwrap();
        assert_eq!(z4.prime_factors(), &[(2, 2)]);
        assert!(z4.is_prime_power());
        assert_eq!((z4.prime(), z4.exponent()), (Some(2), Some(2)));

        let z6 = make_ring(6).unwrap();
        assert_eq!(z6.prime_factors(), &[(2, 1), (3, 1)]);
        assert!(!z6.is_prime_power());
        assert_eq!(z6.prime(), None);

        assert_eq!(make_ring(1), Err(Error::InvalidModulus(1)));
        assert_eq!(make_ring(0), Err(Error::InvalidModulus(0)));
        assert!(matches!(
            make_ring(MAX_MODULUS + 1),
            Err(Error::ModulusTooLarge { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(ring(4).classify(3), ElementClass::Unit);
        assert_eq!(ring(4).classify(2), ElementClass::ZeroDivisor);
        assert_eq!(ring(6).classify(3), ElementClass::ZeroDivisor);
        assert_eq!(ring(6).classify(0), ElementClass::Zero);
    }

    #[test]
    fn unit_and_zero_divisor_lists() {
        assert_eq!(ring(4).units(), vec![1, 3]);
        assert_eq!(ring(6).units(), vec![1, 5]);
        assert_eq!(ring(8).units(), brute_gcd_units(8));
        assert_eq!(ring(8).units(), vec![1, 3, 5, 7]);
        assert_eq!(ring(4).zero_divisors(), vec![2]);
        assert_eq!(ring(6).zero_divisors(), vec![2, 3, 4]);
        assert_eq!(ring(9).zero_divisors(), vec![3, 6]);
    }

    #[test]
    fn inverse() {
        assert_eq!(ring(4).inv(3), Ok(3));
        assert_eq!(ring(9).inv(2), Ok(5));
        assert_eq!(
            ring(4).inv(2),
            Err(Error::NotInvertible {
                value: 2,
                modulus: 4
            })
        );
        assert!(ring(6).inv(0).is_err());
    }

    #[test]
    fn valuation_examples() {
        let z8 = ring(8);
        assert_eq!(z8.valuation(6), Ok(Valuation { k: 1, unit_part: 3 }));
        assert_eq!(z8.valuation(5), Ok(Valuation { k: 0, unit_part: 5 }));
        assert_eq!(z8.valuation(0), Err(Error::ZeroHasNoValuation));
        assert_eq!(ring(12).valuation(2), Err(Error::UnsupportedRing(12)));
    }

    #[test]
    fn partners() {
        assert_eq!(ring(4).neg_unit_partner(1), Ok(3));
        assert_eq!(ring(4).neg_unit_partner(3), Ok(1));
        assert_eq!(ring(9).neg_unit_partner(2), Ok(4));
        assert!(ring(4).neg_unit_partner(2).is_err());

        assert_eq!(ring(4).additive_partner(2), Ok(2));
        assert_eq!(ring(9).additive_partner(3), Ok(6));
        assert!(matches!(
            ring(4).additive_partner(3),
            Err(Error::WrongClass {
                found: ElementClass::Unit,
                ..
            })
        ));
        assert!(ring(4).additive_partner(0).is_err());
    }

    fn prime_powers_upto(limit: u64) -> Vec<u64> {
        (2..=limit).filter(|&m| ring(m).is_prime_power()).collect()
    }

    #[test]
    fn counts_match_prime_power_formula() {
        for m in prime_powers_upto(4096) {
            let r = ring(m);
            let (p, n) = r.require_prime_power().unwrap();
            let units = r.units();
            let zds = r.zero_divisors();
            assert_eq!(units.len() as u64, p.pow(n) - p.pow(n - 1), "Z_{m}");
            assert_eq!(zds.len() as u64, p.pow(n - 1) - 1, "Z_{m}");
            assert_eq!(units.len() as u64, r.unit_count());
        }
    }

    #[test]
    fn classification_partitions_every_ring() {
        for m in 2..=200 {
            let r = ring(m);
            let mut all: Vec<u64> = r.units();
            all.extend(r.zero_divisors());
            all.push(0);
            all.sort_unstable();
            assert_eq!(all, (0..m).collect::<Vec<_>>(), "Z_{m}");
            assert_eq!(r.units(), brute_gcd_units(m));
        }
    }

    #[test]
    fn neg_unit_partner_is_unique() {
        for m in prime_powers_upto(243) {
            let r = ring(m);
            let units = r.units();
            for &u in &units {
                let partner = r.neg_unit_partner(u).unwrap();
                let solutions: Vec<u64> = units
                    .iter()
                    .copied()
                    .filter(|&x| (1 + u * x) % m == 0)
                    .collect();
                assert_eq!(solutions, vec![partner]);
            }
        }
    }

    proptest! {
        #[test]
        fn valuation_reconstructs(exp in 1u32..=6, pi in 0usize..4, x in 1u64..100_000) {
            let p = [2u64, 3, 5, 7][pi];
            let m = p.pow(exp);
            prop_assume!(m <= MAX_MODULUS);
            let r = ring(m);
            let x = x % m;
            prop_assume!(x != 0);
            let v = r.valuation(x).unwrap();
            prop_assert!(v.k < exp);
            prop_assert!(r.is_unit(v.unit_part));
            prop_assert_eq!(r.mul(r.pow(p, v.k), v.unit_part), x);
            prop_assert_eq!(v.k == 0, r.is_unit(x));
        }

        #[test]
        fn inverse_roundtrip(m in 2u64..5000, x in 0u64..5000) {
            let r = ring(m);
            let x = x % m;
            match r.inv(x) {
                Ok(y) => prop_assert_eq!(r.mul(x, y), 1 % m),
                Err(_) => prop_assert!(!r.is_unit(x)),
            }
        }

        #[test]
        fn additive_partner_involution(m in 2u64..3000, d in 1u64..3000) {
            let r = ring(m);
            let d = d % m;
            prop_assume!(r.is_zero_divisor(d));
            let e = r.additive_partner(d).unwrap();
            prop_assert!(r.is_zero_divisor(e));
            prop_assert_eq!(r.add(d, e), 0);
            prop_assert_eq!(r.additive_partner(e).unwrap(), d);
        }
    }
}
