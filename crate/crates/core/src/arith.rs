//! Exact integer arithmetic and principal-ideal algebra over `Z`, `Z/n` and
//! their localizations.
//!
//! Every ideal of these rings is principal, so an [`Ideal`] is a ring
//! descriptor plus one canonical nonnegative generator. Structural equality
//! of two `Ideal` values is ideal equality.

use std::fmt;

use crate::error::{Error, Result};

/// Scalar type for ring elements, matrix entries and generators.
///
/// All arithmetic that can leave the range is checked and surfaces
/// [`Error::Overflow`] instead of wrapping.
pub type Int = i128;

/// Default trial-division bound used by [`factorize`].
pub const DEFAULT_FACTOR_BOUND: Int = 10_000_000;

pub(crate) fn add(a: Int, b: Int) -> Result<Int> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn sub(a: Int, b: Int) -> Result<Int> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

pub(crate) fn mul(a: Int, b: Int) -> Result<Int> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub fn pow(base: Int, exp: u32) -> Result<Int> {
    base.checked_pow(exp).ok_or(Error::Overflow)
}

/// `base^exp mod modulus` for `modulus > 0`, result in `[0, modulus)`.
pub fn pow_mod(base: Int, mut exp: u32, modulus: Int) -> Result<Int> {
    debug_assert!(modulus > 0);
    if modulus == 1 {
        return Ok(0);
    }
    let mut result: Int = 1;
    let mut b = base.rem_euclid(modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul(result, b)?.rem_euclid(modulus);
        }
        b = mul(b, b)?.rem_euclid(modulus);
        exp >>= 1;
    }
    Ok(result)
}

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: Int, b: Int) -> Int {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Nonnegative lcm; `lcm(a, 0) = 0`.
pub fn lcm(a: Int, b: Int) -> Result<Int> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    mul(a.abs() / gcd(a, b), b.abs())
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: Int, b: Int) -> (Int, Int, Int) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1, 0);
    let (mut old_t, mut t) = (0, 1);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// `a | b` with the ideal-containment convention `0 | b` iff `b = 0`.
pub fn divides(a: Int, b: Int) -> bool {
    if a == 0 {
        b == 0
    } else {
        b % a == 0
    }
}

/// Prime factorization of `|n|` by trial division up to `bound`.
///
/// A cofactor left after trial division is accepted as prime only when it is
/// below `bound^2`; otherwise the input is rejected.
pub fn factorize_with_bound(n: Int, bound: Int) -> Result<Vec<(Int, u32)>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n < 2 {
        return Ok(out);
    }
    let mut d: Int = 2;
    while d <= bound && d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if d > bound && d.checked_mul(d).is_none_or(|sq| sq <= n) {
            return Err(Error::FactorBound(n));
        }
        out.push((n, 1));
    }
    Ok(out)
}

pub fn factorize(n: Int) -> Result<Vec<(Int, u32)>> {
    factorize_with_bound(n, DEFAULT_FACTOR_BOUND)
}

/// Distinct prime divisors of `|n|`, ascending. Empty for `n` in {-1, 0, 1}.
pub fn prime_divisors(n: Int) -> Result<Vec<Int>> {
    Ok(factorize(n)?.into_iter().map(|(p, _)| p).collect())
}

pub fn is_prime(n: Int) -> Result<bool> {
    if n < 2 {
        return Ok(false);
    }
    let f = factorize(n)?;
    Ok(f.len() == 1 && f[0].1 == 1)
}

/// Squarefree kernel: product of the distinct primes dividing `n`. `rad(0) = 0`.
pub fn rad(n: Int) -> Result<Int> {
    if n == 0 {
        return Ok(0);
    }
    Ok(prime_divisors(n)?.into_iter().product())
}

/// Exponent of `p` in `n` (`n != 0`, `p >= 2`).
pub fn valuation(mut n: Int, p: Int) -> u32 {
    let mut v = 0;
    while n != 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Removes from `|n|` every prime power whose prime divides `f`.
/// `f = 0` removes everything, leaving 1.
pub fn strip_primes_of(n: Int, f: Int) -> Result<Int> {
    if f == 0 {
        return Ok(1);
    }
    let mut n = n.abs();
    if n == 0 {
        return Ok(0);
    }
    for p in prime_divisors(f)? {
        while n % p == 0 {
            n /= p;
        }
    }
    Ok(n)
}

/// Keeps only the `p`-primary part of `|n|` (`p = 0` keeps nothing).
pub fn primary_part(n: Int, p: Int) -> Int {
    if p == 0 || n == 0 {
        return if n == 0 { 0 } else { 1 };
    }
    let mut q = 1;
    let mut n = n.abs();
    while n % p == 0 {
        n /= p;
        q *= p;
    }
    q
}

/// Where a localized base ring has been localized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalizedAt {
    /// `R[1/f]`, `f != 0`.
    Invert(Int),
    /// `R_(p)`, `p` prime or `0` (the fraction field when `R = Z`).
    Prime(Int),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalizedRing {
    /// `None` for localizations of `Z`, `Some(n)` for localizations of `Z/n`.
    pub modulus: Option<Int>,
    pub at: LocalizedAt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingDesc {
    Integers,
    IntegersMod(Int),
    IntegersLocalized(LocalizedRing),
}

impl RingDesc {
    pub fn integers_mod(n: Int) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("modulus must be >= 2, got {n}")));
        }
        Ok(RingDesc::IntegersMod(n))
    }

    pub fn localized(modulus: Option<Int>, at: LocalizedAt) -> Result<Self> {
        match at {
            LocalizedAt::Invert(0) => {
                return Err(Error::InvalidInput("cannot invert 0".into()));
            }
            LocalizedAt::Prime(p) if p != 0 && !is_prime(p)? => {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            _ => {}
        }
        if let Some(n) = modulus {
            if n < 2 {
                return Err(Error::InvalidInput(format!("modulus must be >= 2, got {n}")));
            }
        }
        Ok(RingDesc::IntegersLocalized(LocalizedRing { modulus, at }))
    }

    /// The `n` of `Z/n`, if any.
    pub fn modulus(&self) -> Option<Int> {
        match self {
            RingDesc::IntegersMod(n) => Some(*n),
            _ => None,
        }
    }

    /// Canonical representative of a ring element. Elements of localized rings
    /// are not reduced (they are only ever used through their ideals).
    pub fn reduce(&self, x: Int) -> Int {
        match self {
            RingDesc::IntegersMod(n) => x.rem_euclid(*n),
            _ => x,
        }
    }

    /// Canonical generator of the principal ideal `(x)`.
    pub fn canonical_gen(&self, x: Int) -> Result<Int> {
        Ok(match self {
            RingDesc::Integers => x.abs(),
            RingDesc::IntegersMod(n) => gcd(x, *n),
            RingDesc::IntegersLocalized(loc) => {
                let g = match loc.modulus {
                    Some(n) => gcd(x, n),
                    None => x.abs(),
                };
                match loc.at {
                    LocalizedAt::Invert(f) => strip_primes_of(g, f)?,
                    LocalizedAt::Prime(p) => primary_part(g, p),
                }
            }
        })
    }

    pub fn zero_ideal_gen(&self) -> Result<Int> {
        self.canonical_gen(0)
    }
}

impl fmt::Display for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = |f: &mut fmt::Formatter<'_>, m: Option<Int>| match m {
            Some(n) => write!(f, "Z/{n}"),
            None => write!(f, "Z"),
        };
        match self {
            RingDesc::Integers => write!(f, "Z"),
            RingDesc::IntegersMod(n) => write!(f, "Z/{n}"),
            RingDesc::IntegersLocalized(loc) => {
                match loc.modulus {
                    Some(_) => {
                        write!(f, "(")?;
                        base(f, loc.modulus)?;
                        write!(f, ")")?;
                    }
                    None => base(f, None)?,
                }
                match loc.at {
                    LocalizedAt::Invert(x) => write!(f, "[1/{x}]"),
                    LocalizedAt::Prime(p) => write!(f, "_({p})"),
                }
            }
        }
    }
}

/// A principal ideal in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    ring: RingDesc,
    gen: Int,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Intersect,
    Product,
}

impl Ideal {
    pub fn new(ring: RingDesc, gen: Int) -> Result<Self> {
        let gen = ring.canonical_gen(gen)?;
        Ok(Ideal { ring, gen })
    }

    pub fn zero(ring: RingDesc) -> Result<Self> {
        Ideal::new(ring, 0)
    }

    pub fn unit(ring: RingDesc) -> Self {
        Ideal { ring, gen: 1 }
    }

    pub fn ring(&self) -> RingDesc {
        self.ring
    }

    pub fn gen(&self) -> Int {
        self.gen
    }

    pub fn is_unit(&self) -> bool {
        self.gen == 1
    }

    pub fn is_zero(&self) -> bool {
        self.ring.zero_ideal_gen() == Ok(self.gen)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> bool {
        divides(self.gen, other.gen)
    }

    pub fn contains_element(&self, x: Int) -> Result<bool> {
        Ok(divides(self.gen, self.ring.canonical_gen(x)?))
    }

    pub fn is_prime(&self) -> Result<bool> {
        if self.gen == 1 {
            return Ok(false);
        }
        match self.ring {
            RingDesc::Integers => Ok(self.gen == 0 || is_prime(self.gen)?),
            RingDesc::IntegersMod(_) => is_prime(self.gen),
            RingDesc::IntegersLocalized(loc) => {
                if self.gen == 0 {
                    // only reachable without a modulus: the zero ideal of a domain
                    Ok(true)
                } else if loc.modulus.is_some() {
                    is_prime(self.gen)
                } else {
                    match loc.at {
                        LocalizedAt::Invert(_) => is_prime(self.gen),
                        LocalizedAt::Prime(p) => Ok(self.gen == p),
                    }
                }
            }
        }
    }

    pub fn radical(&self) -> Result<Ideal> {
        Ideal::new(self.ring, rad(self.gen)?)
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        ideal_combine(IdealOp::Sum, self, other)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        ideal_combine(IdealOp::Intersect, self, other)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        ideal_combine(IdealOp::Product, self, other)
    }

    /// Image of this ideal in a localization of its ring.
    pub fn extend_to(&self, ring: RingDesc) -> Result<Ideal> {
        Ideal::new(ring, self.gen)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) in {}", self.gen, self.ring)
    }
}

pub fn ideal_combine(op: IdealOp, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.check_ring(j)?;
    let g = match op {
        IdealOp::Sum => gcd(i.gen, j.gen),
        IdealOp::Intersect => lcm(i.gen, j.gen)?,
        IdealOp::Product => mul(i.gen, j.gen)?,
    };
    Ideal::new(i.ring, g)
}

/// Smallest `n >= 1` with `f^n ∈ I`, or `None` when `f ∉ √I`.
pub fn radical_membership_witness(f: Int, ideal: &Ideal) -> Result<Option<u32>> {
    let f = ideal.ring.reduce(f);
    if !ideal.radical()?.contains_element(f)? {
        return Ok(None);
    }
    let g = ideal.gen;
    if g == 0 {
        // f lies in the nilradical of a domain, so f = 0
        return Ok(Some(1));
    }
    let mut n = 1u32;
    loop {
        if pow_mod(f, n, g)? == 0 {
            return Ok(Some(n));
        }
        n += 1;
        if n > Int::BITS {
            return Err(Error::Overflow);
        }
    }
}

/// `f^n = Σ r_i b_i` with each `r_i` in the i-th ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutDecomposition {
    pub exponent: u32,
    /// Pairs `(r_i, b_i)` in the order of the input ideals.
    pub terms: Vec<(Int, Int)>,
}

impl BezoutDecomposition {
    /// Re-checks the decomposition by direct arithmetic in `ring`.
    pub fn verify(&self, f: Int, ideals: &[Ideal], ring: RingDesc) -> Result<bool> {
        if self.terms.len() != ideals.len() {
            return Ok(false);
        }
        let lhs = ring.reduce(pow(ring.reduce(f), self.exponent)?);
        let mut rhs: Int = 0;
        for ((r, b), ideal) in self.terms.iter().zip(ideals) {
            if !ideal.contains_element(*r)? {
                return Ok(false);
            }
            rhs = ring.reduce(add(rhs, mul(*r, *b)?)?);
        }
        Ok(lhs == rhs)
    }
}

/// Writes a power of `f` as a combination of generators of `ideals`.
///
/// Fails with [`Error::NotInRadical`] unless `f ∈ √(Σ ideals)`.
pub fn bezout_decompose(f: Int, ideals: &[Ideal], ring: RingDesc) -> Result<BezoutDecomposition> {
    for ideal in ideals {
        if ideal.ring != ring {
            return Err(Error::RingMismatch(ring.to_string(), ideal.ring.to_string()));
        }
    }
    let mut total = Ideal::zero(ring)?;
    for ideal in ideals {
        total = total.sum(ideal)?;
    }
    let f = ring.reduce(f);
    let exponent = radical_membership_witness(f, &total)?.ok_or(Error::NotInRadical {
        element: f,
        ideal: total.gen,
    })?;

    // Bezout coefficients for the generators: Σ c_i g_i = g.
    let mut g: Int = 0;
    let mut coeffs: Vec<Int> = Vec::with_capacity(ideals.len());
    for ideal in ideals {
        let (ng, x, y) = ext_gcd(g, ideal.gen);
        for c in coeffs.iter_mut() {
            *c = mul(*c, x)?;
        }
        coeffs.push(y);
        g = ng;
        if let Some(n) = ring.modulus() {
            for c in coeffs.iter_mut() {
                *c = c.rem_euclid(n);
            }
        }
    }

    let target = ring.reduce(pow(f, exponent)?);
    let terms = if g == 0 {
        ideals.iter().map(|_| (0, 0)).collect()
    } else {
        let q = target / g;
        ideals
            .iter()
            .zip(&coeffs)
            .map(|(ideal, c)| Ok((ring.reduce(ideal.gen), ring.reduce(mul(*c, q)?))))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(BezoutDecomposition { exponent, terms })
}
