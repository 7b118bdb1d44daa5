//! Jacobi polynomials, the invariant degree-3 harmonic function and
//! harmonic weight enumerators.
//!
//! A Jacobi polynomial J_{C,T}(w, z, x, y) records, for each codeword, how
//! many ones fall inside T (z) and outside T (y); w and x count zeros. Only
//! the pair (m1, n1) is stored since m0 = t - m1 and n0 = n - t - n1.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::code::{EnumOptions, Label, LinearCode};
use crate::error::{Error, Result};
use crate::poly::Poly4;
use crate::projective::{choose, point_index, OrbitPartition};

pub type Rational = Ratio<i64>;

/// Dense table of J_{C,T}: `coeff[m1 * (n - t + 1) + n1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiPolynomial {
    n: usize,
    set: Vec<Label>,
    coeff: Vec<u64>,
}

/// One serialized term, exponents of w, z, x, y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JacobiTerm {
    pub m0: usize,
    pub m1: usize,
    pub n0: usize,
    pub n1: usize,
    pub coeff: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiJson {
    pub n: usize,
    pub t: usize,
    #[serde(rename = "T")]
    pub set: Vec<Label>,
    pub terms: Vec<JacobiTerm>,
}

impl JacobiPolynomial {
    fn empty(n: usize, set: Vec<Label>) -> Self {
        let t = set.len();
        JacobiPolynomial {
            n,
            set,
            coeff: vec![0; (t + 1) * (n - t + 1)],
        }
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.set.len()
    }

    /// The coordinate set T.
    pub fn set(&self) -> &[Label] {
        &self.set
    }

    fn stride(&self) -> usize {
        self.n - self.t() + 1
    }

    /// Coefficient of w^(t-m1) z^m1 x^(n-t-n1) y^n1; zero when out of range.
    pub fn coeff(&self, m1: usize, n1: usize) -> u64 {
        if m1 > self.t() || n1 >= self.stride() {
            return 0;
        }
        self.coeff[m1 * self.stride() + n1]
    }

    /// Coefficient addressed by all four exponents.
    pub fn coeff_full(&self, m0: usize, m1: usize, n0: usize, n1: usize) -> u64 {
        if m0 + m1 != self.t() || n0 + n1 != self.n - self.t() {
            return 0;
        }
        self.coeff(m1, n1)
    }

    /// Sum of all coefficients, which is |C|.
    pub fn mass(&self) -> u64 {
        self.coeff.iter().sum()
    }

    /// J(x, y, x, y): the ordinary weight enumerator, indexed by weight.
    pub fn weight_enumerator(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.n + 1];
        for m1 in 0..=self.t() {
            for n1 in 0..self.stride() {
                out[m1 + n1] += self.coeff(m1, n1);
            }
        }
        out
    }

    /// Number of weight-`weight` codewords whose support contains T.
    pub fn covering_count(&self, weight: usize) -> Result<u64> {
        let t = self.t();
        if weight < t || weight > self.n {
            return Err(Error::OutOfRange(format!(
                "weight {weight} outside [{t}, {}]",
                self.n
            )));
        }
        Ok(self.coeff(t, weight - t))
    }

    /// Coefficient-wise sum; both tables must share n and T.
    pub fn add(&self, other: &JacobiPolynomial) -> Result<JacobiPolynomial> {
        self.check_shape(other)?;
        let coeff = self
            .coeff
            .iter()
            .zip(&other.coeff)
            .map(|(a, b)| a + b)
            .collect();
        Ok(JacobiPolynomial {
            n: self.n,
            set: self.set.clone(),
            coeff,
        })
    }

    /// Coefficient-wise difference; fails if any coefficient would go negative.
    pub fn checked_sub(&self, other: &JacobiPolynomial) -> Result<JacobiPolynomial> {
        self.check_shape(other)?;
        let coeff = self
            .coeff
            .iter()
            .zip(&other.coeff)
            .map(|(a, b)| {
                a.checked_sub(*b)
                    .ok_or_else(|| Error::Inconsistent("negative Jacobi coefficient".into()))
            })
            .collect::<Result<_>>()?;
        Ok(JacobiPolynomial {
            n: self.n,
            set: self.set.clone(),
            coeff,
        })
    }

    /// Sums are compared across different T, so only n and t must agree.
    fn check_shape(&self, other: &JacobiPolynomial) -> Result<()> {
        if self.n != other.n || self.t() != other.t() {
            return Err(Error::LengthMismatch(self.coeff.len(), other.coeff.len()));
        }
        Ok(())
    }

    /// Equality of coefficient tables, ignoring which T produced them.
    pub fn same_coefficients(&self, other: &JacobiPolynomial) -> bool {
        self.n == other.n && self.coeff == other.coeff
    }

    pub fn terms(&self) -> Vec<JacobiTerm> {
        let t = self.t();
        let mut terms: Vec<JacobiTerm> = (0..=t)
            .flat_map(|m1| (0..self.stride()).map(move |n1| (m1, n1)))
            .filter_map(|(m1, n1)| {
                let c = self.coeff(m1, n1);
                (c != 0).then_some(JacobiTerm {
                    m0: t - m1,
                    m1,
                    n0: self.n - t - n1,
                    n1,
                    coeff: c,
                })
            })
            .collect();
        terms.sort();
        terms
    }

    pub fn to_json(&self) -> JacobiJson {
        JacobiJson {
            n: self.n,
            t: self.t(),
            set: self.set.clone(),
            terms: self.terms(),
        }
    }

    pub fn from_json(json: &JacobiJson) -> Result<Self> {
        if json.set.len() != json.t || json.t > json.n {
            return Err(Error::Parse("inconsistent t".into()));
        }
        let mut j = JacobiPolynomial::empty(json.n, json.set.clone());
        for term in &json.terms {
            if term.m0 + term.m1 != json.t || term.n0 + term.n1 != json.n - json.t {
                return Err(Error::Parse(format!("term {term:?} has wrong degrees")));
            }
            let s = j.stride();
            j.coeff[term.m1 * s + term.n1] += term.coeff;
        }
        Ok(j)
    }

    pub fn to_poly(&self) -> Poly4 {
        let mut p = Poly4::zero();
        for term in self.terms() {
            p.add_term(
                [
                    term.m0 as u32,
                    term.m1 as u32,
                    term.n0 as u32,
                    term.n1 as u32,
                ],
                term.coeff as i128,
            );
        }
        p
    }
}

/// Signed coefficient table J1 - J2.
pub fn jacobi_difference(a: &JacobiPolynomial, b: &JacobiPolynomial) -> Result<Poly4> {
    a.check_shape(b)?;
    Ok(&a.to_poly() - &b.to_poly())
}

/// Computes J_{C,T} for several sets T in one enumeration pass.
pub fn jacobi_many(
    code: &LinearCode,
    sets: &[Vec<Label>],
    opts: EnumOptions,
) -> Result<Vec<JacobiPolynomial>> {
    let enumerator = code.enumerator(opts.budget)?;
    let n = code.length();
    let masks: Vec<u128> = sets
        .iter()
        .map(|s| {
            Ok(code
                .positions_of(s)?
                .iter()
                .fold(0u128, |m, &i| m | 1u128 << i))
        })
        .collect::<Result<_>>()?;
    let strides: Vec<usize> = sets.iter().map(|s| n - s.len() + 1).collect();
    let tables = enumerator.fold(
        opts.threads,
        || {
            sets.iter()
                .map(|s| vec![0u64; (s.len() + 1) * (n - s.len() + 1)])
                .collect::<Vec<_>>()
        },
        |acc, word, wt| {
            for ((table, &mask), &stride) in acc.iter_mut().zip(&masks).zip(&strides) {
                let m1 = (word & mask).count_ones();
                table[m1 as usize * stride + (wt - m1) as usize] += 1;
            }
        },
        |a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                x.iter_mut().zip(y).for_each(|(u, v)| *u += v);
            }
        },
    );
    Ok(sets
        .iter()
        .zip(tables)
        .map(|(s, coeff)| JacobiPolynomial {
            n,
            set: sorted_labels(s),
            coeff,
        })
        .collect())
}

fn sorted_labels(s: &[Label]) -> Vec<Label> {
    let mut v = s.to_vec();
    v.sort();
    v
}

pub fn jacobi(code: &LinearCode, set: &[Label], opts: EnumOptions) -> Result<JacobiPolynomial> {
    Ok(jacobi_many(code, &[set.to_vec()], opts)?.remove(0))
}

/// Jacobi polynomials at the two orbit representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitJacobi {
    pub first: JacobiPolynomial,
    pub second: JacobiPolynomial,
}

impl OrbitJacobi {
    pub fn compute(code: &LinearCode, orbits: &OrbitPartition, opts: EnumOptions) -> Result<Self> {
        let [r1, r2] = orbits.representatives;
        let mut v = jacobi_many(code, &[r1.to_vec(), r2.to_vec()], opts)?;
        let second = v.pop().expect("two tables");
        let first = v.pop().expect("two tables");
        Ok(OrbitJacobi { first, second })
    }

    pub fn covering_counts(&self, weight: usize) -> Result<(u64, u64)> {
        Ok((
            self.first.covering_count(weight)?,
            self.second.covering_count(weight)?,
        ))
    }

    pub fn add(&self, other: &OrbitJacobi) -> Result<OrbitJacobi> {
        Ok(OrbitJacobi {
            first: self.first.add(&other.first)?,
            second: self.second.add(&other.second)?,
        })
    }

    pub fn checked_sub(&self, other: &OrbitJacobi) -> Result<OrbitJacobi> {
        Ok(OrbitJacobi {
            first: self.first.checked_sub(&other.first)?,
            second: self.second.checked_sub(&other.second)?,
        })
    }
}

/// Degree-3 harmonic function constant on the two triple orbits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicFunction3 {
    pub p: u64,
    pub values: [Rational; 2],
}

impl HarmonicFunction3 {
    pub fn value(&self, orbit: u8) -> Rational {
        self.values[orbit as usize - 1]
    }
}

/// The G-invariant line in Harm_3: values proportional to (k2, -k1), where
/// k_i counts orbit-i triples through a fixed pair. Normalized to the
/// smallest integral pair with positive first value, then checked against
/// the down-differentiation on every pair.
pub fn invariant_harmonic3(orbits: &OrbitPartition) -> Result<HarmonicFunction3> {
    let [k1, k2] = orbits.pair_incidence()?;
    let g = num_integer::gcd(k1, k2).max(1);
    let f = HarmonicFunction3 {
        p: orbits.p,
        values: [
            Rational::from_integer((k2 / g) as i64),
            Rational::from_integer(-((k1 / g) as i64)),
        ],
    };
    let points = orbits.points();
    for a in 0..points {
        for b in a + 1..points {
            let gamma = (0..points)
                .filter(|&c| c != a && c != b)
                .map(|c| orbits.label_of_indices([a, b, c]).map(|l| f.value(l)))
                .sum::<Result<Rational>>()?;
            if gamma != Rational::from_integer(0) {
                return Err(Error::Inconsistent(format!(
                    "gamma(f) nonzero on pair ({a}, {b})"
                )));
            }
        }
    }
    Ok(f)
}

/// f~(B) = sum of f over the 3-subsets of the block B.
pub fn ftilde(f: &HarmonicFunction3, orbits: &OrbitPartition, block: &[Label]) -> Result<Rational> {
    let mut idx = block
        .iter()
        .map(|&l| point_index(orbits.p, l))
        .collect::<Result<Vec<_>>>()?;
    idx.sort_unstable();
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedLabel);
    }
    ftilde_indices(f, orbits, &idx)
}

fn ftilde_indices(
    f: &HarmonicFunction3,
    orbits: &OrbitPartition,
    idx: &[usize],
) -> Result<Rational> {
    let mut counts = [0i64; 2];
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            for k in j + 1..idx.len() {
                counts[orbits.label_of_indices([idx[i], idx[j], idx[k]])? as usize - 1] += 1;
            }
        }
    }
    Ok(f.values[0] * counts[0] + f.values[1] * counts[1])
}

/// w_{C,f}: `coeff[l]` is the coefficient of x^(n-l) y^l.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicWeightEnumerator {
    pub n: usize,
    pub coeff: Vec<Rational>,
}

impl HarmonicWeightEnumerator {
    pub fn zero(n: usize) -> Self {
        HarmonicWeightEnumerator {
            n,
            coeff: vec![Rational::from_integer(0); n + 1],
        }
    }

    pub fn add(&self, other: &HarmonicWeightEnumerator) -> Result<HarmonicWeightEnumerator> {
        if self.n != other.n {
            return Err(Error::LengthMismatch(self.n, other.n));
        }
        let coeff = self
            .coeff
            .iter()
            .zip(&other.coeff)
            .map(|(a, b)| a + b)
            .collect();
        Ok(HarmonicWeightEnumerator { n: self.n, coeff })
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(|c| *c == Rational::from_integer(0))
    }

    /// Integral coefficients as a polynomial in x, y (scaled by the common
    /// denominator).
    pub fn to_poly(&self) -> (Poly4, i64) {
        let den = self
            .coeff
            .iter()
            .fold(1i64, |acc, c| num_integer::lcm(acc, *c.denom()));
        let mut p = Poly4::zero();
        for (l, c) in self.coeff.iter().enumerate() {
            let v = (c * den).to_integer();
            p.add_term([0, 0, (self.n - l) as u32, l as u32], v as i128);
        }
        (p, den)
    }

    /// The scalar s with self = s * reference, if one exists. Returns `None`
    /// when no single scalar works; a zero reference matches only zero.
    pub fn scalar_multiple_of(&self, reference: &Poly4) -> Option<Rational> {
        let mut scalar: Option<Rational> = None;
        for l in 0..=self.n {
            let r = reference.coeff([0, 0, (self.n - l) as u32, l as u32]);
            let c = self.coeff[l];
            if r == 0 {
                if c != Rational::from_integer(0) {
                    return None;
                }
                continue;
            }
            let s = c / Rational::from_integer(r as i64);
            match scalar {
                None => scalar = Some(s),
                Some(prev) if prev != s => return None,
                _ => {}
            }
        }
        // A reference with no terms in range can only match the zero enumerator.
        Some(scalar.unwrap_or_else(|| Rational::from_integer(0)))
    }
}

/// Index of each code coordinate among the orbit partition's points.
fn point_map(code: &LinearCode, orbits: &OrbitPartition) -> Result<Vec<usize>> {
    if code.length() != orbits.points() {
        return Err(Error::LengthMismatch(code.length(), orbits.points()));
    }
    code.labels()
        .iter()
        .map(|&l| point_index(orbits.p, l))
        .collect()
}

/// Assembles w_{C,f} from the covering counts at the two representatives:
/// coefficient at l is f1 |GT1| cc1(l) + f2 |GT2| cc2(l).
pub fn harmonic_from_jacobi(
    jac: &OrbitJacobi,
    f: &HarmonicFunction3,
    orbits: &OrbitPartition,
) -> Result<HarmonicWeightEnumerator> {
    let n = jac.first.length();
    if n != orbits.points() || jac.first.t() != 3 {
        return Err(Error::LengthMismatch(n, orbits.points()));
    }
    let mut h = HarmonicWeightEnumerator::zero(n);
    for l in 3..=n {
        let (c1, c2) = jac.covering_counts(l)?;
        h.coeff[l] = f.values[0] * (orbits.sizes[0] as i64 * c1 as i64)
            + f.values[1] * (orbits.sizes[1] as i64 * c2 as i64);
    }
    Ok(h)
}

pub fn harmonic_weight_enumerator(
    code: &LinearCode,
    f: &HarmonicFunction3,
    orbits: &OrbitPartition,
    opts: EnumOptions,
) -> Result<HarmonicWeightEnumerator> {
    point_map(code, orbits)?;
    harmonic_from_jacobi(&OrbitJacobi::compute(code, orbits, opts)?, f, orbits)
}

/// Direct summation of f~(supp c) over every codeword. Independent of the
/// Jacobi route; cost grows with 2^k C(n, 3), so keep k small.
pub fn harmonic_weight_enumerator_direct(
    code: &LinearCode,
    f: &HarmonicFunction3,
    orbits: &OrbitPartition,
    opts: EnumOptions,
) -> Result<HarmonicWeightEnumerator> {
    let map = point_map(code, orbits)?;
    let n = code.length();
    let mut h = HarmonicWeightEnumerator::zero(n);
    let mut err = None;
    code.enumerator(opts.budget)?.for_each(|word, wt| {
        if err.is_some() {
            return;
        }
        let idx: Vec<usize> = (0..n)
            .filter(|&i| (word >> i) & 1 == 1)
            .map(|i| map[i])
            .collect();
        match ftilde_indices(f, orbits, &idx) {
            Ok(v) => h.coeff[wt as usize] += v,
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(h),
    }
}

/// |GT1| cc1 + |GT2| cc2 must equal |C_l| C(l, 3): every weight-l codeword
/// covers C(l, 3) triples.
pub fn orbit_sum_holds(
    jac: &OrbitJacobi,
    orbits: &OrbitPartition,
    weights: &[u64],
) -> Result<bool> {
    for (l, &count) in weights.iter().enumerate().skip(3) {
        let (c1, c2) = jac.covering_counts(l)?;
        let lhs = orbits.sizes[0] as u64 * c1 + orbits.sizes[1] as u64 * c2;
        if lhs != count * choose(l as u64, 3) {
            return Ok(false);
        }
    }
    Ok(true)
}
