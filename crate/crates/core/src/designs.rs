//! t-design checks for code shells and shell unions.
//!
//! Two routes are available. The exhaustive route transposes a block list
//! into one bitset per point and counts, for every t-subset, the blocks
//! containing it (AND of t columns, then popcount). The orbitwise route, for
//! t = 3 under a verified two-orbit action, compares covering counts at the
//! two orbit representatives read off Jacobi polynomials.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::code::{EnumOptions, Label};
use crate::enumerators::OrbitJacobi;
use crate::error::{Error, Result};
use crate::projective::choose;

/// A subset and its covering count when it differs from the reference.
type Mismatch = (Vec<usize>, u64);

pub type Rational128 = Ratio<i128>;

/// Upper bound on word operations for one exhaustive scan.
pub const SCAN_LIMIT: u128 = 1 << 36;

/// Parameters of a t-(n, l, lambda) design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParams {
    pub t: usize,
    pub n: usize,
    pub ell: usize,
    pub lambda: u64,
}

impl DesignParams {
    /// lambda C(n, t) = b C(l, t).
    pub fn consistent_with(&self, blocks: u64) -> bool {
        self.lambda as u128 * choose(self.n as u64, self.t as u64) as u128
            == blocks as u128 * choose(self.ell as u64, self.t as u64) as u128
    }
}

impl std::fmt::Display for DesignParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-({},{},{})", self.t, self.n, self.ell, self.lambda)
    }
}

/// lambda(S) for an s-subset S of a t-(n, l, lambda) design:
/// lambda(S) C(l - s, t - s) = lambda C(n - s, t - s).
pub fn lambda_relation(
    t: usize,
    n: usize,
    ell: usize,
    lambda: u64,
    s: usize,
) -> Result<Rational128> {
    if !(s <= t && t <= ell && ell <= n) {
        return Err(Error::OutOfRange(format!(
            "need s <= t <= l <= n, got s={s} t={t} l={ell} n={n}"
        )));
    }
    let num = lambda as i128 * choose((n - s) as u64, (t - s) as u64) as i128;
    let den = choose((ell - s) as u64, (t - s) as u64) as i128;
    Ok(Rational128::new(num, den))
}

/// lambda forced by the block count if b blocks of size l formed a t-design.
pub fn lambda_from_blocks(blocks: u64, t: usize, n: usize, ell: usize) -> Result<Rational128> {
    if !(t <= ell && ell <= n) {
        return Err(Error::OutOfRange(format!(
            "need t <= l <= n, got t={t} l={ell} n={n}"
        )));
    }
    Ok(Rational128::new(
        blocks as i128 * choose(ell as u64, t as u64) as i128,
        choose(n as u64, t as u64) as i128,
    ))
}

/// Evidence that a block set is not a t-design.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Covering counts at the two orbit representatives differ. The counts of
    /// blocks avoiding each representative are reported alongside.
    Orbits {
        covering: [u64; 2],
        avoiding: [u64; 2],
    },
    /// Two t-subsets lying in different numbers of blocks.
    Subsets {
        first: Vec<Label>,
        first_count: u64,
        second: Vec<Label>,
        second_count: u64,
    },
    /// The block count forces a non-integral lambda.
    NonIntegralLambda { numer: u64, denom: u64 },
    /// Not a t'-design for some t' < t.
    Implied { t: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Design { lambda: u64 },
    NotDesign(Witness),
    EmptyShell,
}

impl Status {
    pub fn is_design(&self) -> bool {
        matches!(self, Status::Design { .. })
    }

    pub fn lambda(&self) -> Option<u64> {
        match self {
            Status::Design { lambda } => Some(*lambda),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TVerdictRepr", try_from = "TVerdictRepr")]
pub struct TVerdict {
    pub t: usize,
    pub status: Status,
}

#[derive(Serialize, Deserialize)]
struct TVerdictRepr {
    t: usize,
    status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

impl From<TVerdict> for TVerdictRepr {
    fn from(v: TVerdict) -> Self {
        let (status, lambda, witness) = match v.status {
            Status::Design { lambda } => ("design", Some(lambda), None),
            Status::NotDesign(w) => ("not-design", None, Some(w)),
            Status::EmptyShell => ("empty-shell", None, None),
        };
        TVerdictRepr {
            t: v.t,
            status: status.into(),
            lambda,
            witness,
        }
    }
}

impl TryFrom<TVerdictRepr> for TVerdict {
    type Error = Error;

    fn try_from(r: TVerdictRepr) -> Result<Self> {
        let status = match (r.status.as_str(), r.lambda, r.witness) {
            ("design", Some(lambda), None) => Status::Design { lambda },
            ("not-design", None, Some(w)) => Status::NotDesign(w),
            ("empty-shell", None, None) => Status::EmptyShell,
            (other, ..) => return Err(Error::Parse(format!("bad verdict for t={}: {other}", r.t))),
        };
        Ok(TVerdict { t: r.t, status })
    }
}

/// Which block set a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CodeKind {
    #[serde(rename = "Q~")]
    Code,
    #[serde(rename = "Q~dual")]
    Dual,
    #[serde(rename = "union")]
    Union,
}

/// Per-shell verdicts for t = 1, 2, ...
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignReport {
    pub p: Option<u64>,
    pub code: CodeKind,
    pub shell: usize,
    pub n: usize,
    /// Distinct supports.
    pub blocks: u64,
    /// Supports counted with multiplicity across the united shells; differs
    /// from `blocks` only when the two shells share a support.
    pub raw_blocks: u64,
    /// Covering counts at the two orbit representatives (deduplicated blocks).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covering: Option<[u64; 2]>,
    pub verdicts: Vec<TVerdict>,
}

impl DesignReport {
    pub fn verdict(&self, t: usize) -> Option<&Status> {
        self.verdicts.iter().find(|v| v.t == t).map(|v| &v.status)
    }

    pub fn is_design(&self, t: usize) -> bool {
        self.verdict(t).is_some_and(Status::is_design)
    }

    pub fn is_empty(&self) -> bool {
        self.blocks == 0
    }

    pub fn has_duplicates(&self) -> bool {
        self.raw_blocks != self.blocks
    }

    /// Largest t with a design verdict (0 if none).
    pub fn strength(&self) -> usize {
        self.verdicts
            .iter()
            .take_while(|v| v.status.is_design())
            .map(|v| v.t)
            .max()
            .unwrap_or(0)
    }

    pub fn params(&self, t: usize) -> Option<DesignParams> {
        self.verdict(t)?.lambda().map(|lambda| DesignParams {
            t,
            n: self.n,
            ell: self.shell,
            lambda,
        })
    }

    /// One line in the style "l=10  blocks=1722  3-(42,10,18)".
    pub fn summary_line(&self) -> String {
        let mut s = format!("l={:<3} blocks={:<8}", self.shell, self.blocks);
        if self.has_duplicates() {
            s.push_str(&format!(" (raw {})", self.raw_blocks));
        }
        for v in &self.verdicts {
            let text = match &v.status {
                Status::Design { lambda } => {
                    format!(
                        "{}",
                        DesignParams {
                            t: v.t,
                            n: self.n,
                            ell: self.shell,
                            lambda: *lambda
                        }
                    )
                }
                Status::NotDesign(Witness::Orbits { covering, .. }) => {
                    format!("not a {}-design [{} vs {}]", v.t, covering[0], covering[1])
                }
                Status::NotDesign(Witness::Subsets {
                    first_count,
                    second_count,
                    ..
                }) => {
                    format!("not a {}-design [{} vs {}]", v.t, first_count, second_count)
                }
                Status::NotDesign(Witness::NonIntegralLambda { numer, denom }) => {
                    format!("not a {}-design [lambda={}/{}]", v.t, numer, denom)
                }
                Status::NotDesign(Witness::Implied { .. }) => continue,
                Status::EmptyShell => "empty".to_string(),
            };
            s.push_str("  ");
            s.push_str(&text);
        }
        s
    }
}

/// Outcome of an exhaustive scan over all t-subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanResult {
    Uniform {
        lambda: u64,
    },
    /// The first subset in lexicographic order, its count, and the first
    /// subset whose count differs.
    Mismatch {
        first: Vec<usize>,
        first_count: u64,
        second: Vec<usize>,
        second_count: u64,
    },
}

/// Point-by-block incidence stored column-wise: `cols[i]` has bit b set iff
/// block b contains point i.
#[derive(Debug, Clone)]
pub struct Incidence {
    n: usize,
    blocks: usize,
    words: usize,
    cols: Vec<Vec<u64>>,
}

impl Incidence {
    /// Blocks given as bitmasks over points `0..n`.
    pub fn new(n: usize, blocks: &[u128]) -> Self {
        let words = blocks.len().div_ceil(64);
        let mut cols = vec![vec![0u64; words]; n];
        for (b, &mask) in blocks.iter().enumerate() {
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                cols[i][b / 64] |= 1 << (b % 64);
                m &= m - 1;
            }
        }
        Incidence {
            n,
            blocks: blocks.len(),
            words,
            cols,
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    /// Blocks containing every point of `subset`.
    pub fn count(&self, subset: &[usize]) -> u64 {
        if subset.is_empty() {
            return self.blocks as u64;
        }
        (0..self.words)
            .map(|w| {
                subset
                    .iter()
                    .fold(u64::MAX, |acc, &i| acc & self.cols[i][w])
                    .count_ones() as u64
            })
            .sum()
    }

    pub fn scan_cost(&self, t: usize) -> u128 {
        choose(self.n as u64, t as u64) as u128 * self.words.max(1) as u128
    }

    /// Counts blocks through every t-subset. Work is split by the smallest
    /// point of the subset; the reported mismatch is the lexicographically
    /// first one regardless of thread count.
    pub fn scan(&self, t: usize, threads: usize) -> Result<ScanResult> {
        if t == 0 || t > self.n {
            return Err(Error::OutOfRange(format!("t = {t} for {} points", self.n)));
        }
        let cost = self.scan_cost(t);
        if cost > SCAN_LIMIT {
            return Err(Error::ScanTooLarge {
                work: cost,
                limit: SCAN_LIMIT,
            });
        }
        let first: Vec<usize> = (0..t).collect();
        let reference = self.count(&first);
        let heads: Vec<usize> = (0..=self.n - t).collect();
        let threads = threads.clamp(1, heads.len());
        let found: Vec<Option<(Vec<usize>, u64)>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|wid| {
                    let heads = &heads;
                    s.spawn(move || {
                        heads
                            .iter()
                            .skip(wid)
                            .step_by(threads)
                            .map(|&h| (h, self.scan_from(h, t, reference)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            let mut all: Vec<(usize, Option<Mismatch>)> = handles
                .into_iter()
                .flat_map(|h| h.join().expect("scan worker panicked"))
                .collect();
            all.sort_by_key(|(h, _)| *h);
            all.into_iter().map(|(_, r)| r).collect()
        });
        Ok(match found.into_iter().flatten().next() {
            None => ScanResult::Uniform { lambda: reference },
            Some((second, second_count)) => ScanResult::Mismatch {
                first,
                first_count: reference,
                second,
                second_count,
            },
        })
    }

    /// First subset (lexicographic) with smallest point `head` whose count
    /// differs from `reference`.
    fn scan_from(&self, head: usize, t: usize, reference: u64) -> Option<Mismatch> {
        let mut subset = vec![head];
        let prefix = self.cols[head].clone();
        self.descend(&prefix, &mut subset, t, reference)
    }

    fn descend(
        &self,
        prefix: &[u64],
        subset: &mut Vec<usize>,
        t: usize,
        reference: u64,
    ) -> Option<(Vec<usize>, u64)> {
        if subset.len() == t {
            let c: u64 = prefix.iter().map(|w| w.count_ones() as u64).sum();
            return (c != reference).then(|| (subset.clone(), c));
        }
        let last = *subset.last().expect("nonempty");
        let remaining = t - subset.len();
        let mut buf = vec![0u64; self.words];
        for next in last + 1..=self.n - remaining {
            if remaining == 1 {
                let c: u64 = prefix
                    .iter()
                    .zip(&self.cols[next])
                    .map(|(a, b)| (a & b).count_ones() as u64)
                    .sum();
                if c != reference {
                    subset.push(next);
                    let out = subset.clone();
                    subset.pop();
                    return Some((out, c));
                }
                continue;
            }
            for ((o, a), b) in buf.iter_mut().zip(prefix).zip(&self.cols[next]) {
                *o = a & b;
            }
            subset.push(next);
            let r = self.descend(&buf, subset, t, reference);
            subset.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }
}

fn mask_of(points: &[Label], block: &[Label]) -> Result<u128> {
    block.iter().try_fold(0u128, |m, l| {
        let i = points
            .iter()
            .position(|p| p == l)
            .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
        Ok(m | 1u128 << i)
    })
}

/// Exhaustive t-design test of a block list over the point set `points`.
/// Blocks are deduplicated as sets before counting.
pub fn shell_design_check_exhaustive(
    points: &[Label],
    blocks: &[Vec<Label>],
    t: usize,
    opts: EnumOptions,
) -> Result<Status> {
    if points.len() > 128 {
        return Err(Error::TooLong(points.len()));
    }
    let mut masks = blocks
        .iter()
        .map(|b| mask_of(points, b))
        .collect::<Result<Vec<_>>>()?;
    masks.sort_unstable();
    masks.dedup();
    exhaustive_status(points, &masks, t, opts)
}

/// Exhaustive status for deduplicated block masks.
pub fn exhaustive_status(
    points: &[Label],
    masks: &[u128],
    t: usize,
    opts: EnumOptions,
) -> Result<Status> {
    if masks.is_empty() {
        return Ok(Status::EmptyShell);
    }
    let inc = Incidence::new(points.len(), masks);
    Ok(match inc.scan(t, opts.threads)? {
        ScanResult::Uniform { lambda } => Status::Design { lambda },
        ScanResult::Mismatch {
            first,
            first_count,
            second,
            second_count,
        } => Status::NotDesign(Witness::Subsets {
            first: first.iter().map(|&i| points[i]).collect(),
            first_count,
            second: second.iter().map(|&i| points[i]).collect(),
            second_count,
        }),
    })
}

/// The non-integrality witness for a forced lambda; `None` if it is integral.
pub fn non_integral_witness(forced: Rational128) -> Result<Option<Witness>> {
    if forced.is_integer() {
        return Ok(None);
    }
    let conv = |v: i128| {
        u64::try_from(v).map_err(|_| Error::OutOfRange(format!("lambda {forced} exceeds 64 bits")))
    };
    Ok(Some(Witness::NonIntegralLambda {
        numer: conv(*forced.numer())?,
        denom: conv(*forced.denom())?,
    }))
}

/// t = 3 verdict from covering counts at the two orbit representatives. Sound
/// only when the automorphism group acts on triples with exactly those two
/// orbits.
pub fn orbitwise_status(jac: &OrbitJacobi, weight: usize, blocks: u64) -> Result<Status> {
    if blocks == 0 {
        return Ok(Status::EmptyShell);
    }
    let (c1, c2) = jac.covering_counts(weight)?;
    if c1 == c2 {
        return Ok(Status::Design { lambda: c1 });
    }
    let n = jac.first.length();
    let avoiding = if weight <= n - 3 {
        [jac.first.coeff(0, weight), jac.second.coeff(0, weight)]
    } else {
        [0, 0]
    };
    Ok(Status::NotDesign(Witness::Orbits {
        covering: [c1, c2],
        avoiding,
    }))
}

/// Strength profile of a code over its nontrivial shells (0 < l < n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    /// Largest t for which every nontrivial shell is a t-design; `None` when
    /// the code has no nontrivial shell.
    pub delta: Option<usize>,
    /// Largest t for which some nontrivial shell is a t-design.
    pub s: Option<usize>,
    pub t_max: usize,
    pub shells: Vec<DesignReport>,
}

impl Profile {
    pub fn from_reports(reports: Vec<DesignReport>, t_max: usize) -> Profile {
        let shells: Vec<DesignReport> = reports
            .into_iter()
            .filter(|r| !r.is_empty() && r.shell > 0 && r.shell < r.n)
            .collect();
        let strengths: Vec<usize> = shells.iter().map(DesignReport::strength).collect();
        Profile {
            delta: strengths.iter().copied().min(),
            s: strengths.iter().copied().max(),
            t_max,
            shells,
        }
    }
}
