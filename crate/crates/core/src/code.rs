//! Binary linear codes: construction, duality, permutation and exhaustive
//! codeword enumeration.
//!
//! Codes are kept in reduced row-echelon form (pivots leftmost), so two codes
//! are equal exactly when their generator matrices are equal.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Gf2Poly;

/// Default cap on the dimension of a code that may be enumerated.
pub const DEFAULT_BUDGET: usize = 25;

/// Coordinate label: a finite residue or the extension point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Finite(u64),
    Infinity,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(v) => write!(f, "{v}"),
            Label::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "inf" | "oo" | "∞" | "infinity" => Ok(Label::Infinity),
            _ => s
                .parse::<u64>()
                .map(Label::Finite)
                .map_err(|_| Error::Parse(format!("bad label {s:?}"))),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Label::Finite(v) => s.serialize_u64(*v),
            Label::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Label::Finite(v)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Parses a comma-separated label list such as `0,1,inf`.
pub fn parse_labels(s: &str) -> Result<Vec<Label>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Fixed-length bit vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_u128(len: usize, word: u128) -> Self {
        let mut v = BitVector::zeros(len);
        for (i, w) in v.words.iter_mut().enumerate().take(2) {
            *w = (word >> (64 * i)) as u64;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// GF(2) inner product.
    pub fn dot(&self, other: &BitVector) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Packs into a `u128`; the caller guarantees `len <= 128`.
    pub fn to_u128(&self) -> u128 {
        self.words
            .iter()
            .take(2)
            .enumerate()
            .fold(0u128, |acc, (i, &w)| acc | (w as u128) << (64 * i))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// A codeword with its cached weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub bits: BitVector,
    pub weight: usize,
}

impl Codeword {
    pub fn new(bits: BitVector) -> Self {
        let weight = bits.weight();
        Codeword { bits, weight }
    }
}

/// Coordinate permutation on positions `0..n`. Applied to a vector `c` it
/// produces `c'` with `c'[i] = c[image(i)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &j in &image {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::BadPermutation(n));
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { image: inv }
    }

    /// `self` after `other`: i -> self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&j| self.image[j]).collect(),
        }
    }

    pub fn permute_vector(&self, v: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(v.len());
        for i in 0..v.len() {
            if v.get(self.image[i]) {
                out.set(i, true);
            }
        }
        out
    }
}

/// Binary linear code with RREF generator matrix and coordinate labels.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    rows: Vec<BitVector>,
    labels: Vec<Label>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[n={}, k={}]", self.n, self.rows.len())
    }
}

/// In-place reduction to RREF; zero rows are dropped. Returns pivot columns.
fn rref(rows: &mut Vec<BitVector>, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(r, sel);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

impl LinearCode {
    /// Span of the given vectors, labelled `0..n`.
    pub fn from_generators(n: usize, rows: Vec<BitVector>) -> Result<Self> {
        let labels = (0..n as u64).map(Label::Finite).collect();
        LinearCode::with_labels(rows, labels)
    }

    pub fn with_labels(mut rows: Vec<BitVector>, labels: Vec<Label>) -> Result<Self> {
        let n = labels.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch(bad.len(), n));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::RepeatedLabel);
        }
        rref(&mut rows, n);
        Ok(LinearCode { n, rows, labels })
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Generator rows in RREF.
    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn relabel(mut self, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LengthMismatch(labels.len(), self.n));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn position_of(&self, label: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn positions_of(&self, labels: &[Label]) -> Result<Vec<usize>> {
        let mut pos = labels
            .iter()
            .map(|&l| self.position_of(l))
            .collect::<Result<Vec<_>>>()?;
        pos.sort_unstable();
        if pos.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedLabel);
        }
        Ok(pos)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.ones().next().expect("RREF rows are nonzero"))
            .collect()
    }

    /// Cyclic code of length `len` generated by `g`, which must divide x^len - 1.
    pub fn cyclic(g: &Gf2Poly, len: usize) -> Result<Self> {
        if g.is_zero() || !g.divides(&Gf2Poly::x_pow_minus_one(len))? {
            return Err(Error::NotCyclicGenerator(len));
        }
        let deg = g.degree().finite().expect("nonzero");
        let exps = g.exponents();
        let rows = (0..len - deg)
            .map(|shift| {
                let mut v = BitVector::zeros(len);
                for &e in &exps {
                    v.set(e + shift, true);
                }
                v
            })
            .collect();
        LinearCode::from_generators(len, rows)
    }

    /// Appends an overall parity coordinate labelled infinity.
    pub fn extend_parity(&self) -> LinearCode {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut v = BitVector::zeros(self.n + 1);
                for i in r.ones() {
                    v.set(i, true);
                }
                v.set(self.n, r.weight() % 2 == 1);
                v
            })
            .collect();
        let mut labels = self.labels.clone();
        labels.push(Label::Infinity);
        LinearCode::with_labels(rows, labels).expect("extension preserves independence")
    }

    /// Orthogonal complement under the standard inner product.
    pub fn dual(&self) -> LinearCode {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::zeros(self.n);
                v.set(free, true);
                for (row, &p) in self.rows.iter().zip(&pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        LinearCode::with_labels(rows, self.labels.clone()).expect("dual rows are independent")
    }

    /// Membership test by reduction against the RREF rows.
    pub fn contains(&self, v: &BitVector) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut w = v.clone();
        for (row, p) in self.rows.iter().zip(self.pivots()) {
            if w.get(p) {
                w.xor_assign(row);
            }
        }
        w.is_zero()
    }

    /// C^sigma = {(c_sigma(1), ..., c_sigma(n))}.
    pub fn permute(&self, sigma: &Permutation) -> Result<LinearCode> {
        if sigma.len() != self.n {
            return Err(Error::LengthMismatch(sigma.len(), self.n));
        }
        let rows = self.rows.iter().map(|r| sigma.permute_vector(r)).collect();
        LinearCode::with_labels(rows, self.labels.clone())
    }

    /// Equality of row spaces (labels are not compared).
    pub fn same_code(&self, other: &LinearCode) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::LengthMismatch(self.n, other.n));
        }
        Ok(self.rows == other.rows)
    }

    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.n != other.n {
            return Err(Error::LengthMismatch(self.n, other.n));
        }
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        LinearCode::with_labels(rows, self.labels.clone())
    }

    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode> {
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Codeword from message bits (one per generator row).
    pub fn encode(&self, message: &[bool]) -> Result<Codeword> {
        if message.len() != self.rows.len() {
            return Err(Error::LengthMismatch(message.len(), self.rows.len()));
        }
        let mut v = BitVector::zeros(self.n);
        for (row, _) in self.rows.iter().zip(message).filter(|(_, &b)| b) {
            v.xor_assign(row);
        }
        Ok(Codeword::new(v))
    }

    pub fn enumerator(&self, budget: usize) -> Result<Enumerator> {
        Enumerator::new(self, budget)
    }

    pub fn weight_distribution(&self, opts: EnumOptions) -> Result<WeightDistribution> {
        let n = self.n;
        let counts = self.enumerator(opts.budget)?.fold(
            opts.threads,
            || vec![0u64; n + 1],
            |acc, _, wt| acc[wt as usize] += 1,
            |a, b| a.iter_mut().zip(b).for_each(|(x, y)| *x += y),
        );
        Ok(WeightDistribution { counts })
    }

    /// Packed codewords of weight exactly `weight`.
    pub fn shell_words(&self, weight: usize, opts: EnumOptions) -> Result<Vec<u128>> {
        let mut words = self.enumerator(opts.budget)?.fold(
            opts.threads,
            Vec::new,
            |acc, w, wt| {
                if wt as usize == weight {
                    acc.push(w)
                }
            },
            |a, b| a.extend(b),
        );
        words.sort_unstable();
        Ok(words)
    }

    /// Supports of the weight-`weight` codewords as sorted label sets: the
    /// blocks of the shell.
    pub fn shell(&self, weight: usize, opts: EnumOptions) -> Result<Vec<Vec<Label>>> {
        let mut blocks: Vec<Vec<Label>> = self
            .shell_words(weight, opts)?
            .into_iter()
            .map(|w| {
                let mut b: Vec<Label> = (0..self.n)
                    .filter(|&i| (w >> i) & 1 == 1)
                    .map(|i| self.labels[i])
                    .collect();
                b.sort();
                b
            })
            .collect();
        blocks.sort();
        Ok(blocks)
    }

    /// All codewords grouped by weight, each group sorted.
    pub fn shells(&self, opts: EnumOptions) -> Result<Vec<Vec<u128>>> {
        let n = self.n;
        let mut shells = self.enumerator(opts.budget)?.fold(
            opts.threads,
            || vec![Vec::new(); n + 1],
            |acc, w, wt| acc[wt as usize].push(w),
            |a, b| a.iter_mut().zip(b).for_each(|(x, y)| x.extend(y)),
        );
        shells.iter_mut().for_each(|s| s.sort_unstable());
        Ok(shells)
    }
}

/// The binary quadratic residue code Q_p, coordinates labelled 0..p-1.
pub fn quadratic_residue_code(p: u64) -> Result<LinearCode> {
    let g = crate::gf2::qr_generator_polynomial(p)?;
    LinearCode::cyclic(&g, p as usize)
}

/// The extended code of length p + 1; the parity coordinate is labelled infinity.
pub fn extended_quadratic_residue_code(p: u64) -> Result<LinearCode> {
    Ok(quadratic_residue_code(p)?.extend_parity())
}

/// Enumeration limits: maximum dimension and worker count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub budget: usize,
    pub threads: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            budget: DEFAULT_BUDGET,
            threads: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
        }
    }
}

impl EnumOptions {
    pub fn single_threaded() -> Self {
        EnumOptions {
            threads: 1,
            ..EnumOptions::default()
        }
    }

    pub fn with_threads(threads: usize) -> Self {
        EnumOptions {
            threads: threads.max(1),
            ..EnumOptions::default()
        }
    }
}

/// Gray-code walk over every codeword of a code of length <= 128.
///
/// Consecutive codewords differ by one generator row. The message space can
/// be split by fixing the top message bits; each sub-range is walked
/// independently and the per-range accumulators are merged.
#[derive(Debug, Clone)]
pub struct Enumerator {
    rows: Vec<u128>,
}

impl Enumerator {
    pub fn new(code: &LinearCode, budget: usize) -> Result<Self> {
        if code.dimension() > budget {
            return Err(Error::BudgetExceeded {
                required: code.dimension(),
                budget,
            });
        }
        if code.length() > 128 {
            return Err(Error::TooLong(code.length()));
        }
        Ok(Enumerator {
            rows: code.rows().iter().map(BitVector::to_u128).collect(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Number of codewords visited by a full walk.
    pub fn size(&self) -> u64 {
        1u64 << self.rows.len()
    }

    /// Visits all 2^k codewords in Gray-code order.
    pub fn for_each<F: FnMut(u128, u32)>(&self, visit: F) {
        self.walk(0, &self.rows, visit);
    }

    fn walk<F: FnMut(u128, u32)>(&self, start: u128, rows: &[u128], mut visit: F) {
        let mut word = start;
        visit(word, word.count_ones());
        for i in 1u64..(1u64 << rows.len()) {
            word ^= rows[i.trailing_zeros() as usize];
            visit(word, word.count_ones());
        }
    }

    /// Number of top message bits fixed per sub-range, and hence `2^bits`
    /// sub-ranges.
    pub fn partition_bits(&self, threads: usize) -> usize {
        if threads <= 1 {
            return 0;
        }
        let want = (threads * 4).next_power_of_two().trailing_zeros() as usize;
        want.min(self.rows.len())
    }

    /// Walks sub-range `index` of `2^bits`: the top `bits` message bits are
    /// fixed to the binary digits of `index`.
    pub fn for_each_in_range<F: FnMut(u128, u32)>(&self, bits: usize, index: u64, visit: F) {
        let low = self.rows.len() - bits;
        let start = (0..bits)
            .filter(|j| (index >> j) & 1 == 1)
            .fold(0u128, |acc, j| acc ^ self.rows[low + j]);
        self.walk(start, &self.rows[..low], visit);
    }

    /// Partitioned fold. Each worker owns an accumulator made by `init`;
    /// accumulators are merged in worker order.
    pub fn fold<A, I, V, M>(&self, threads: usize, init: I, visit: V, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync,
        V: Fn(&mut A, u128, u32) + Sync,
        M: Fn(&mut A, A),
    {
        let bits = self.partition_bits(threads);
        if bits == 0 {
            let mut acc = init();
            self.for_each(|w, wt| visit(&mut acc, w, wt));
            return acc;
        }
        let ranges = 1u64 << bits;
        let workers = threads.min(ranges as usize);
        let parts: Vec<A> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|wid| {
                    let (init, visit) = (&init, &visit);
                    s.spawn(move || {
                        let mut acc = init();
                        let mut r = wid as u64;
                        while r < ranges {
                            self.for_each_in_range(bits, r, |w, wt| visit(&mut acc, w, wt));
                            r += workers as u64;
                        }
                        acc
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        });
        let mut parts = parts.into_iter();
        let mut acc = parts.next().expect("at least one worker");
        for part in parts {
            merge(&mut acc, part);
        }
        acc
    }
}

/// `counts[l]` is the number of codewords of weight l.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Weights of the non-empty shells.
    pub fn support(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(l, _)| l)
            .collect()
    }

    pub fn count(&self, weight: usize) -> u64 {
        self.counts.get(weight).copied().unwrap_or(0)
    }
}
