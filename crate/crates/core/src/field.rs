//! Coefficient fields: exact rationals and prime fields `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::PolyError;

/// Smallest modulus accepted by [`PrimeField::new`]. Smaller primes make
/// unlucky reductions too likely to be useful for degree trials.
pub const MIN_TRIAL_PRIME: u64 = 1 << 20;

/// Runtime tag naming a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CoefficientField {
    Rationals,
    Prime(u64),
}

impl CoefficientField {
    pub fn prime(&self) -> Option<u64> {
        match self {
            CoefficientField::Rationals => None,
            CoefficientField::Prime(p) => Some(*p),
        }
    }

    /// Short name used in reports: `QQ` or `Fp`.
    pub fn short_name(&self) -> &'static str {
        match self {
            CoefficientField::Rationals => "QQ",
            CoefficientField::Prime(_) => "Fp",
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "QQ"),
            CoefficientField::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Arithmetic of a coefficient field. Elements are always kept canonical, so
/// `==` on elements is field equality.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn kind(&self) -> CoefficientField;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// `num / den`, or `ZeroDenominator` when `den` vanishes in this field.
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem, PolyError>;

    /// Multipliers `(a, b)` such that `a * lead - b * divisor_lead == 0`,
    /// chosen to avoid introducing denominators where that matters.
    fn cancel_factors(
        &self,
        lead: &Self::Elem,
        divisor_lead: &Self::Elem,
    ) -> (Self::Elem, Self::Elem);

    /// Rescales a coefficient vector (leading entry first) to the field's
    /// content-free normal form: primitive integers with positive leading
    /// coefficient over `Q`, monic over `F_p`.
    fn normalize_content(&self, coeffs: &mut [Self::Elem]);

    /// Sign and printed magnitude of an element, for polynomial display.
    fn display_parts(&self, a: &Self::Elem) -> (bool, String);
}

/// The field of rational numbers, with arbitrary-precision entries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> CoefficientField {
        CoefficientField::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    // Integer operands skip the gcd normalization `Ratio` would perform;
    // fraction-free reduction keeps almost every coefficient integral.

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() + b.numer());
        }
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() - b.numer());
        }
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() * b.numer());
        }
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<BigRational, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }

    fn cancel_factors(
        &self,
        lead: &BigRational,
        divisor_lead: &BigRational,
    ) -> (BigRational, BigRational) {
        if lead.is_integer() && divisor_lead.is_integer() {
            let (l, d) = (lead.numer(), divisor_lead.numer());
            let g = l.gcd(d);
            (
                BigRational::from_integer(d / &g),
                BigRational::from_integer(l / &g),
            )
        } else {
            (BigRational::one(), lead / divisor_lead)
        }
    }

    fn normalize_content(&self, coeffs: &mut [BigRational]) {
        let Some(first) = coeffs.first() else {
            return;
        };
        let mut den_lcm = BigInt::one();
        for c in coeffs.iter() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in coeffs.iter() {
            num_gcd = if den_lcm.is_one() {
                num_gcd.gcd(c.numer())
            } else {
                num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())))
            };
            if num_gcd.is_one() {
                break;
            }
        }
        if num_gcd.is_zero() {
            return;
        }
        if first.is_negative() {
            num_gcd = -num_gcd;
        }
        if den_lcm.is_one() {
            if !num_gcd.is_one() {
                for c in coeffs.iter_mut() {
                    *c = BigRational::from_integer(c.numer() / &num_gcd);
                }
            }
            return;
        }
        let factor = BigRational::new(den_lcm, num_gcd);
        for c in coeffs.iter_mut() {
            *c = &*c * &factor;
        }
    }

    fn display_parts(&self, a: &BigRational) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }
}

/// The prime field `Z/pZ` for a word-sized prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// A prime field suitable for degree trials: `p` must be prime and
    /// exceed [`MIN_TRIAL_PRIME`].
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if p <= MIN_TRIAL_PRIME {
            return Err(PolyError::InvalidPrime(p));
        }
        Self::with_any_prime(p)
    }

    /// Any prime below `2^63`, including small ones. Useful for examples and
    /// tests; degree trials should go through [`PrimeField::new`].
    pub fn with_any_prime(p: u64) -> Result<Self, PolyError> {
        if p >= 1 << 63 || !num_prime::nt_funcs::is_prime64(p) {
            return Err(PolyError::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// `count` distinct primes in `(2^20, 2^62)`, drawn reproducibly from `seed`.
    pub fn random_trial_primes(count: usize, seed: u64) -> Vec<u64> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<u64> = Vec::with_capacity(count);
        while out.len() < count {
            let start = rng.gen_range(MIN_TRIAL_PRIME + 1..1 << 62);
            if let Some(p) = num_prime::nt_funcs::next_prime(&start, None) {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> CoefficientField {
        CoefficientField::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_bigint(n)
    }

    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<u64, PolyError> {
        let d = self.reduce_bigint(den);
        if d == 0 {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(self.div(&self.reduce_bigint(num), &d))
    }

    fn cancel_factors(&self, lead: &u64, divisor_lead: &u64) -> (u64, u64) {
        (1, self.div(lead, divisor_lead))
    }

    fn normalize_content(&self, coeffs: &mut [u64]) {
        let Some(&first) = coeffs.first() else {
            return;
        };
        if first == 1 || first == 0 {
            return;
        }
        let inv = self.inv(&first);
        for c in coeffs.iter_mut() {
            *c = self.mul(c, &inv);
        }
    }

    // Symmetric representatives, so `p - 1` prints as `-1`.
    fn display_parts(&self, a: &u64) -> (bool, String) {
        if *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }
}
