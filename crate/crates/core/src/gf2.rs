//! Polynomial and extension-field arithmetic over GF(2).
//!
//! Enough machinery to factor x^p - 1 along 2-cyclotomic cosets and to
//! assemble the generator polynomial of a binary quadratic residue code.
//!
//! Polynomials are stored as little-endian `u64` words, bit `i` being the
//! coefficient of x^i. Extension-field elements of GF(2^m), m <= 63, fit in a
//! single word.

use std::fmt;

use crate::error::{Error, Result};

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which sorts below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Polynomial over GF(2). Trailing zero words are always trimmed, so equal
/// polynomials have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly::monomial(0)
    }

    pub fn monomial(degree: usize) -> Self {
        let mut words = vec![0u64; degree / 64 + 1];
        words[degree / 64] = 1 << (degree % 64);
        Gf2Poly { words }
    }

    /// x^n - 1 (= x^n + 1 over GF(2)).
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut p = Gf2Poly::monomial(n);
        p.flip(0);
        p
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Gf2Poly { words }
    }

    /// Builds a polynomial from the positions of its nonzero coefficients.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = Gf2Poly::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    pub fn from_coeffs(bits: &[bool]) -> Self {
        Gf2Poly::from_exponents(bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    }

    /// Parses the ascending-degree 0/1 string form, e.g. `"1101"` = 1 + x + x^3.
    pub fn parse_ascending(s: &str) -> Result<Self> {
        let mut p = Gf2Poly::zero();
        for (i, ch) in s.trim().chars().enumerate() {
            match ch {
                '0' => {}
                '1' => p.flip(i),
                other => return Err(Error::Parse(format!("bad polynomial digit {other:?}"))),
            }
        }
        Ok(p)
    }

    /// Ascending-degree 0/1 string; the zero polynomial is `"0"`.
    pub fn to_ascending(&self) -> String {
        match self.degree() {
            Degree::NegInfinity => "0".to_string(),
            Degree::Finite(d) => (0..=d)
                .map(|i| if self.coeff(i) { '1' } else { '0' })
                .collect(),
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Degree {
        match self.words.last() {
            None => Degree::NegInfinity,
            Some(&w) => {
                Degree::Finite((self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
            }
        }
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents of the nonzero coefficients, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    fn flip(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
        self.trim();
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Gf2Poly::from_words(words)
    }

    /// Multiplies by x^s.
    pub fn shl(&self, s: usize) -> Gf2Poly {
        if self.is_zero() {
            return Gf2Poly::zero();
        }
        let (ws, bs) = (s / 64, s % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs != 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        Gf2Poly::from_words(words)
    }

    /// Schoolbook shift-and-XOR product.
    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        if self.is_zero() || other.is_zero() {
            return Gf2Poly::zero();
        }
        let mut words = vec![0u64; self.words.len() + other.words.len()];
        for e in self.exponents() {
            let (ws, bs) = (e / 64, e % 64);
            for (i, &w) in other.words.iter().enumerate() {
                words[i + ws] ^= w << bs;
                if bs != 0 {
                    words[i + ws + 1] ^= w >> (64 - bs);
                }
            }
        }
        Gf2Poly::from_words(words)
    }

    pub fn div_rem(&self, divisor: &Gf2Poly) -> Result<(Gf2Poly, Gf2Poly)> {
        let dd = divisor.degree().finite().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Gf2Poly::zero();
        while let Some(rd) = rem.degree().finite() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quot.flip(shift);
            rem = rem.add(&divisor.shl(shift));
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, divisor: &Gf2Poly) -> Result<Gf2Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Greatest common divisor; over GF(2) every nonzero result is monic.
    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a
    }

    pub fn divides(&self, other: &Gf2Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({})", self)
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps = self.exponents();
        if exps.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = exps
            .iter()
            .rev()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Binary polynomial operation selector, mirroring the CLI-level `poly_arith`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    Mod,
    Gcd,
}

pub fn poly_arith(a: &Gf2Poly, b: &Gf2Poly, op: PolyOp) -> Result<Gf2Poly> {
    match op {
        PolyOp::Add => Ok(a.add(b)),
        PolyOp::Mul => Ok(a.mul(b)),
        PolyOp::Mod => a.rem(b),
        PolyOp::Gcd => Ok(a.gcd(b)),
    }
}

// ---------------------------------------------------------------------------
// Modular integer helpers

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo the prime `p`.
pub fn multiplicative_order(a: u64, p: u64) -> u64 {
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = x * a % p;
        k += 1;
    }
    k
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest positive primitive root modulo the prime `p`.
pub fn smallest_primitive_root(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .ok_or_else(|| Error::Inconsistent(format!("no primitive root mod {p}")))
}

/// Legendre symbol (a/p) as -1, 0 or 1.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// The (p-1)/2 nonzero squares modulo p, ascending.
pub fn quadratic_residues(p: u64) -> Result<Vec<u64>> {
    check_odd_prime(p)?;
    let mut qr: Vec<u64> = (1..p).map(|l| l * l % p).collect();
    qr.sort_unstable();
    qr.dedup();
    Ok(qr)
}

/// Nonzero non-squares modulo p, ascending.
pub fn non_residues(p: u64) -> Result<Vec<u64>> {
    let qr = quadratic_residues(p)?;
    Ok((1..p).filter(|x| qr.binary_search(x).is_err()).collect())
}

/// Orbit of multiplication by 2 on Z_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCoset {
    pub representative: u64,
    /// Sorted members.
    pub members: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// 2-cyclotomic cosets partitioning {1, ..., p-1}, ordered by smallest member.
/// The trivial coset {0} is not included.
pub fn cyclotomic_cosets(p: u64) -> Result<Vec<CyclotomicCoset>> {
    check_odd_prime(p)?;
    let mut seen = vec![false; p as usize];
    let mut cosets = Vec::new();
    for r in 1..p {
        if seen[r as usize] {
            continue;
        }
        let mut members = Vec::new();
        let mut x = r;
        while !seen[x as usize] {
            seen[x as usize] = true;
            members.push(x);
            x = 2 * x % p;
        }
        members.sort_unstable();
        cosets.push(CyclotomicCoset {
            representative: r,
            members,
        });
    }
    Ok(cosets)
}

// ---------------------------------------------------------------------------
// GF(2^m), m <= 63

fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut a = a;
    let mut shift = 0;
    while a != 0 {
        if a & 1 == 1 {
            acc ^= (b as u128) << shift;
        }
        a >>= 1;
        shift += 1;
    }
    acc
}

fn reduce(mut v: u128, modulus: u64, m: u32) -> u64 {
    let modulus = modulus as u128;
    while v >> m != 0 {
        let top = 127 - v.leading_zeros();
        v ^= modulus << (top - m);
    }
    v as u64
}

fn poly_gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let db = 63 - b.leading_zeros();
        while a != 0 && 63 - a.leading_zeros() >= db {
            a ^= b << (63 - a.leading_zeros() - db);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Rabin-style irreducibility test for a degree-m polynomial with m <= 63.
pub fn is_irreducible_u64(f: u64) -> bool {
    if f < 2 {
        return false;
    }
    let m = 63 - f.leading_zeros();
    if m == 1 {
        return true;
    }
    // x^(2^i) mod f for i = 1..=m/2; f is reducible iff it shares a factor
    // with some x^(2^i) - x.
    let mut xp = 2u64; // x
    for _ in 1..=m / 2 {
        xp = reduce(clmul(xp, xp), f, m);
        if poly_gcd_u64(f, xp ^ 2) != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest irreducible polynomial of degree m, found by
/// sieving candidates in increasing bit-pattern order.
pub fn smallest_irreducible(m: u32) -> Result<u64> {
    if m == 0 || m > 63 {
        return Err(Error::NoIrreducible(m));
    }
    let lo = 1u64 << m;
    let hi = if m == 63 {
        u64::MAX
    } else {
        (1u64 << (m + 1)) - 1
    };
    (lo..=hi)
        .find(|&f| is_irreducible_u64(f))
        .ok_or(Error::NoIrreducible(m))
}

/// Element of GF(2^m): coordinates over the field's polynomial basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2ExtElement {
    pub bits: u64,
}

/// GF(2^m) = GF(2)[x] / (modulus).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionField {
    m: u32,
    modulus: u64,
}

impl ExtensionField {
    pub fn new(modulus: u64) -> Result<Self> {
        if !is_irreducible_u64(modulus) {
            return Err(Error::Inconsistent(format!(
                "modulus {modulus:#x} is reducible"
            )));
        }
        Ok(ExtensionField {
            m: 63 - modulus.leading_zeros(),
            modulus,
        })
    }

    /// Field over the smallest irreducible of degree m.
    pub fn smallest(m: u32) -> Result<Self> {
        ExtensionField::new(smallest_irreducible(m)?)
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> Gf2Poly {
        Gf2Poly::from_words(vec![self.modulus])
    }

    pub fn order(&self) -> u64 {
        if self.m == 64 {
            u64::MAX
        } else {
            (1u64 << self.m) - 1
        }
    }

    pub fn element(&self, bits: u64) -> Gf2ExtElement {
        Gf2ExtElement {
            bits: reduce(bits as u128, self.modulus, self.m),
        }
    }

    pub fn zero(&self) -> Gf2ExtElement {
        Gf2ExtElement { bits: 0 }
    }

    pub fn one(&self) -> Gf2ExtElement {
        Gf2ExtElement { bits: 1 }
    }

    pub fn add(&self, a: Gf2ExtElement, b: Gf2ExtElement) -> Gf2ExtElement {
        Gf2ExtElement {
            bits: a.bits ^ b.bits,
        }
    }

    pub fn mul(&self, a: Gf2ExtElement, b: Gf2ExtElement) -> Gf2ExtElement {
        Gf2ExtElement {
            bits: reduce(clmul(a.bits, b.bits), self.modulus, self.m),
        }
    }

    pub fn pow(&self, a: Gf2ExtElement, mut e: u64) -> Gf2ExtElement {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Smallest (by bit pattern) generator of the multiplicative group.
    pub fn smallest_generator(&self) -> Gf2ExtElement {
        let order = self.order();
        let factors = prime_factors(order);
        (2..=order)
            .map(|b| Gf2ExtElement { bits: b })
            .find(|&b| {
                factors
                    .iter()
                    .all(|&q| self.pow(b, order / q) != self.one())
            })
            .unwrap_or_else(|| self.one())
    }
}

/// Everything that determines the generator polynomial of Q_p.
#[derive(Debug, Clone)]
pub struct QrConstruction {
    pub p: u64,
    pub field: ExtensionField,
    pub beta: Gf2ExtElement,
    /// Primitive p-th root of unity: beta^((2^m - 1)/p), or its c-th power
    /// for a non-residue c when needed to make `residue_sum` vanish.
    pub alpha: Gf2ExtElement,
    pub residues: Vec<u64>,
    pub generator: Gf2Poly,
}

/// Minimal polynomial of alpha^r over GF(2): product of (x - alpha^j) for j
/// in the cyclotomic coset of r.
pub fn minimal_polynomial(
    field: &ExtensionField,
    alpha: Gf2ExtElement,
    coset: &CyclotomicCoset,
) -> Result<Gf2Poly> {
    // Coefficients in GF(2^m), ascending.
    let mut acc = vec![field.one()];
    for &j in &coset.members {
        let root = field.pow(alpha, j);
        let mut next = vec![field.zero(); acc.len() + 1];
        for (i, &c) in acc.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c);
            next[i] = field.add(next[i], field.mul(c, root));
        }
        acc = next;
    }
    let mut bits = Vec::with_capacity(acc.len());
    for c in acc {
        match c.bits {
            0 => bits.push(false),
            1 => bits.push(true),
            _ => {
                return Err(Error::Inconsistent(
                    "minimal polynomial has coefficients outside GF(2)".into(),
                ))
            }
        }
    }
    Ok(Gf2Poly::from_coeffs(&bits))
}

/// theta(alpha) = sum of alpha^r over the quadratic residues r.
pub fn residue_sum(
    field: &ExtensionField,
    alpha: Gf2ExtElement,
    residues: &[u64],
) -> Gf2ExtElement {
    residues
        .iter()
        .fold(field.zero(), |acc, &r| field.add(acc, field.pow(alpha, r)))
}

/// Generator polynomial of the binary quadratic residue code Q_p: the product
/// of (x - alpha^l) over the nonzero squares l mod p.
pub fn qr_construction(p: u64) -> Result<QrConstruction> {
    check_odd_prime(p)?;
    if p % 8 != 1 && p % 8 != 7 {
        return Err(Error::NotQrPrime(p));
    }
    let m = multiplicative_order(2, p) as u32;
    if m > 63 {
        return Err(Error::ExtensionTooLarge { p, m });
    }
    let field = ExtensionField::smallest(m)?;
    let beta = field.smallest_generator();
    let residues = quadratic_residues(p)?;
    // 2 is a square mod p, so theta(alpha) = sum of alpha^r over residues lies
    // in GF(2). Exactly one of alpha and alpha^c (c a non-residue) gives
    // theta = 0; that root is the one used.
    let mut alpha = field.pow(beta, field.order() / p);
    if residue_sum(&field, alpha, &residues) != field.zero() {
        alpha = field.pow(alpha, smallest_primitive_root(p)?);
    }
    let mut generator = Gf2Poly::one();
    for coset in cyclotomic_cosets(p)? {
        let in_qr = residues.binary_search(&coset.representative).is_ok();
        if coset
            .members
            .iter()
            .any(|x| residues.binary_search(x).is_ok() != in_qr)
        {
            return Err(Error::Inconsistent(format!(
                "coset of {} straddles residues",
                coset.representative
            )));
        }
        if in_qr {
            generator = generator.mul(&minimal_polynomial(&field, alpha, &coset)?);
        }
    }
    if !generator.divides(&Gf2Poly::x_pow_minus_one(p as usize))? {
        return Err(Error::NotCyclicGenerator(p as usize));
    }
    Ok(QrConstruction {
        p,
        field,
        beta,
        alpha,
        residues,
        generator,
    })
}

pub fn qr_generator_polynomial(p: u64) -> Result<Gf2Poly> {
    Ok(qr_construction(p)?.generator)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Gf2Poly {
        Gf2Poly::parse_ascending(s).unwrap()
    }

    #[test]
    fn gcd_and_square() {
        // x^2 + 1 and x + 1
        assert_eq!(poly("101").gcd(&poly("11")), poly("11"));
        assert_eq!(poly("11").mul(&poly("11")), poly("101"));
    }

    #[test]
    fn mod_by_zero_is_an_error() {
        assert_eq!(
            poly("101").rem(&Gf2Poly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(Gf2Poly::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(Gf2Poly::monomial(130).degree(), Degree::Finite(130));
    }

    #[test]
    fn ascending_string_roundtrip() {
        let p = poly("1101");
        assert_eq!(p.exponents(), vec![0, 1, 3]);
        assert_eq!(p.to_ascending(), "1101");
        assert_eq!(Gf2Poly::zero().to_ascending(), "0");
        assert!(Gf2Poly::parse_ascending("12").is_err());
    }

    #[test]
    fn wide_multiplication_crosses_words() {
        let a = Gf2Poly::from_exponents([0, 63, 64, 100]);
        let b = Gf2Poly::from_exponents([1, 70]);
        let expected = Gf2Poly::from_exponents([1, 64, 65, 101, 70, 133, 134, 170]);
        assert_eq!(a.mul(&b), expected);
        let (q, r) = expected.div_rem(&b).unwrap();
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn cosets_small_primes() {
        let c7 = cyclotomic_cosets(7).unwrap();
        assert_eq!(
            c7.iter().map(|c| c.members.clone()).collect::<Vec<_>>(),
            vec![vec![1, 2, 4], vec![3, 5, 6]]
        );
        let c17 = cyclotomic_cosets(17).unwrap();
        assert_eq!(c17.len(), 2);
        assert_eq!(c17[0].members, vec![1, 2, 4, 8, 9, 13, 15, 16]);
        assert_eq!(c17[1].members, vec![3, 5, 6, 7, 10, 11, 12, 14]);
        assert!(cyclotomic_cosets(15).is_err());
    }

    #[test]
    fn cosets_41_respect_residues() {
        let qr = quadratic_residues(41).unwrap();
        let cosets = cyclotomic_cosets(41).unwrap();
        assert_eq!(cosets.len(), 2);
        for c in &cosets {
            assert_eq!(c.len(), 20);
            let inside = c.members.iter().filter(|x| qr.contains(x)).count();
            assert!(inside == 0 || inside == 20);
        }
    }

    #[test]
    fn residues() {
        assert_eq!(quadratic_residues(7).unwrap(), vec![1, 2, 4]);
        assert_eq!(
            quadratic_residues(17).unwrap(),
            vec![1, 2, 4, 8, 9, 13, 15, 16]
        );
        let q41 = quadratic_residues(41).unwrap();
        assert_eq!(q41.len(), 20);
        assert!(q41.contains(&2) && !q41.contains(&6));
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(smallest_primitive_root(41).unwrap(), 6);
        assert_eq!(smallest_primitive_root(17).unwrap(), 3);
        assert_eq!(smallest_primitive_root(7).unwrap(), 3);
    }

    #[test]
    fn irreducibles() {
        assert_eq!(smallest_irreducible(3).unwrap(), 0b1011);
        assert_eq!(smallest_irreducible(8).unwrap(), 0x11b);
        assert!(!is_irreducible_u64(0b101));
        assert!(is_irreducible_u64(0b111));
    }

    #[test]
    fn generator_polynomial_7() {
        let g = qr_generator_polynomial(7).unwrap();
        assert!(g == poly("1101") || g == poly("1011"), "{g}");
    }

    #[test]
    fn generator_polynomials_divide_and_have_half_degree() {
        for p in [7u64, 17, 23, 31, 41, 47, 71, 73] {
            let g = qr_generator_polynomial(p).unwrap();
            assert_eq!(g.degree(), Degree::Finite(((p - 1) / 2) as usize), "p={p}");
            assert!(Gf2Poly::x_pow_minus_one(p as usize)
                .rem(&g)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(
            qr_generator_polynomial(13).unwrap_err(),
            Error::NotQrPrime(13)
        );
        assert_eq!(
            qr_generator_polynomial(21).unwrap_err(),
            Error::NotOddPrime(21)
        );
    }

    #[test]
    fn minimal_polynomials_multiply_to_x_p_minus_1() {
        let p = 17;
        let c = qr_construction(p).unwrap();
        let mut prod = Gf2Poly::from_exponents([0, 1]);
        for coset in cyclotomic_cosets(p).unwrap() {
            prod = prod.mul(&minimal_polynomial(&c.field, c.alpha, &coset).unwrap());
        }
        assert_eq!(prod, Gf2Poly::x_pow_minus_one(17));
    }
}
