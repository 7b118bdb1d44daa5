//! The projective line PG(1, p), fractional-linear maps acting on it, and the
//! split of its 3-subsets into two PSL(2, p)-orbits.
//!
//! Points are indexed `0..=p`: finite points by value, infinity by `p`. This
//! matches the coordinate order of the extended quadratic residue code.
//!
//! 3-subsets `{a < b < c}` (by point index) are ranked colexicographically:
//! `rank = C(a, 1) + C(b, 2) + C(c, 3)`. Orbit labels are stored and exported
//! in that order.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::code::{Label, LinearCode, Permutation};
use crate::error::{Error, Result};
use crate::gf2::{check_odd_prime, legendre, non_residues, pow_mod, smallest_primitive_root};

pub type ProjPoint = Label;

pub(crate) fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn point_index(p: u64, x: ProjPoint) -> Result<usize> {
    match x {
        Label::Finite(v) if v < p => Ok(v as usize),
        Label::Finite(v) => Err(Error::UnknownLabel(v.to_string())),
        Label::Infinity => Ok(p as usize),
    }
}

pub fn point_at(p: u64, index: usize) -> ProjPoint {
    if index as u64 == p {
        Label::Infinity
    } else {
        Label::Finite(index as u64)
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::gf2::pow_mod(a, p - 2, p)
}

/// x -> (a x + b) / (c x + d) over F_p, stored up to scalar with the first
/// nonzero entry of (a, b, c, d) equal to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl MobiusMap {
    pub fn new(p: u64, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        check_odd_prime(p)?;
        let r = |v: i64| v.rem_euclid(p as i64) as u64;
        let (a, b, c, d) = (r(a), r(b), r(c), r(d));
        let det = (a * d % p + p - b * c % p) % p;
        if det == 0 {
            return Err(Error::OutOfRange("singular fractional-linear map".into()));
        }
        let lead = [a, b, c, d]
            .into_iter()
            .find(|&v| v != 0)
            .expect("det != 0");
        let s = inv_mod(lead, p);
        Ok(MobiusMap {
            p,
            a: a * s % p,
            b: b * s % p,
            c: c * s % p,
            d: d * s % p,
        })
    }

    pub fn identity(p: u64) -> Result<Self> {
        MobiusMap::new(p, 1, 0, 0, 1)
    }

    pub fn determinant(&self) -> u64 {
        let p = self.p;
        (self.a * self.d % p + p - self.b * self.c % p) % p
    }

    /// Whether the map lies in PSL(2, p), i.e. its determinant is a square.
    pub fn is_special(&self) -> bool {
        legendre(self.determinant() as i64, self.p) == 1
    }

    pub fn apply(&self, x: ProjPoint) -> ProjPoint {
        let p = self.p;
        match x {
            Label::Infinity => {
                if self.c == 0 {
                    Label::Infinity
                } else {
                    Label::Finite(self.a * inv_mod(self.c, p) % p)
                }
            }
            Label::Finite(x) => {
                let num = (self.a * x + self.b) % p;
                let den = (self.c * x + self.d) % p;
                if den == 0 {
                    Label::Infinity
                } else {
                    Label::Finite(num * inv_mod(den, p) % p)
                }
            }
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let p = self.p;
        let m = |x: u64, y: u64, z: u64, w: u64| (x * y + z * w) % p;
        MobiusMap::new(
            p,
            m(self.a, other.a, self.b, other.c) as i64,
            m(self.a, other.b, self.b, other.d) as i64,
            m(self.c, other.a, self.d, other.c) as i64,
            m(self.c, other.b, self.d, other.d) as i64,
        )
        .expect("product of invertible maps")
    }

    /// Coordinate permutation on the p + 1 points: position i carries the
    /// point the map sends point i to.
    pub fn to_permutation(&self) -> Permutation {
        let p = self.p;
        let image = (0..=p as usize)
            .map(|i| point_index(p, self.apply(point_at(p, i))).expect("image is a point"))
            .collect();
        Permutation::new(image).expect("fractional-linear maps are bijections")
    }
}

/// Generators of the PSL(2, p) action: x -> x + 1, x -> s^2 x for a
/// primitive root s, and x -> -1/x.
pub fn psl2_generator_maps(p: u64) -> Result<Vec<MobiusMap>> {
    require_design_prime(p)?;
    let s = smallest_primitive_root(p)?;
    Ok(vec![
        MobiusMap::new(p, 1, 1, 0, 1)?,
        MobiusMap::new(p, (s * s % p) as i64, 0, 0, 1)?,
        MobiusMap::new(p, 0, -1, 1, 0)?,
    ])
}

pub fn psl2_generators(p: u64) -> Result<Vec<Permutation>> {
    Ok(psl2_generator_maps(p)?
        .iter()
        .map(MobiusMap::to_permutation)
        .collect())
}

pub(crate) fn require_design_prime(p: u64) -> Result<()> {
    check_odd_prime(p)?;
    if p % 8 != 1 {
        return Err(Error::NotDesignPrime(p));
    }
    Ok(())
}

/// Order of the permutation group generated by `gens`, by breadth-first
/// closure. Only sensible at desk scale (a few hundred thousand elements).
pub fn group_order(gens: &[Permutation]) -> usize {
    let Some(first) = gens.first() else {
        return 1;
    };
    let id = Permutation::identity(first.len());
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = h.compose(&g);
            if seen.insert(gh.clone()) {
                queue.push_back(gh);
            }
        }
    }
    seen.len()
}

/// Sorts three distinct point indices; errors on repeats.
fn sorted_triple(mut t: [usize; 3]) -> Result<[usize; 3]> {
    t.sort_unstable();
    if t[0] == t[1] || t[1] == t[2] {
        return Err(Error::RepeatedLabel);
    }
    Ok(t)
}

pub fn triple_rank(t: [usize; 3]) -> usize {
    let [a, b, c] = t;
    (a + choose(b as u64, 2) as usize) + choose(c as u64, 3) as usize
}

pub fn triple_unrank(mut rank: usize) -> [usize; 3] {
    let mut out = [0usize; 3];
    for k in (1..=3usize).rev() {
        let mut x = k - 1;
        while choose(x as u64 + 1, k as u64) as usize <= rank {
            x += 1;
        }
        rank -= choose(x as u64, k as u64) as usize;
        out[k - 1] = x;
    }
    out
}

/// Orbit label (1 or 2) of the 3-subset {x, y, z} under PSL(2, p).
///
/// The map sending 0, 1, inf to x, y, z has determinant
/// (y - x)(z - y)(z - x); factors involving an infinite point are dropped.
/// Because -1 is a square for p = 1 mod 4 the square class does not depend on
/// the ordering. Label 1 (the orbit of {0, 1, inf}) iff the class is square:
///
/// | points at infinity | determinant class |
/// |--------------------|-------------------|
/// | none               | (y-x)(z-y)(z-x)   |
/// | z                  | y - x             |
/// | y                  | z - x             |
/// | x                  | z - y             |
pub fn triple_orbit_label(p: u64, triple: [ProjPoint; 3]) -> Result<u8> {
    require_design_prime(p)?;
    let idx = sorted_triple([
        point_index(p, triple[0])?,
        point_index(p, triple[1])?,
        point_index(p, triple[2])?,
    ])?;
    Ok(label_by_index(p, idx))
}

/// `idx` sorted, distinct; infinity (index p) can only be last.
fn label_by_index(p: u64, idx: [usize; 3]) -> u8 {
    let [x, y, z] = idx.map(|i| i as i64);
    let det = if z as u64 == p {
        y - x
    } else {
        (y - x) * (z - y) % p as i64 * (z - x)
    };
    if legendre(det, p) == 1 {
        1
    } else {
        2
    }
}

/// Two-orbit split of all 3-subsets of PG(1, p) under PSL(2, p).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    pub p: u64,
    /// The primitive root a used for the second representative {0, a, inf}.
    pub generator: u64,
    pub representatives: [[ProjPoint; 3]; 2],
    pub sizes: [usize; 2],
    /// Orbit label (1 or 2) of every 3-subset, indexed by colex rank.
    pub labels: Vec<u8>,
}

impl OrbitPartition {
    /// Labels every triple by the determinant test and cross-checks the
    /// result against the orbits of the generator closure.
    pub fn new(p: u64) -> Result<Self> {
        require_design_prime(p)?;
        let a = smallest_primitive_root(p)?;
        let points = p as usize + 1;
        let total = choose(points as u64, 3) as usize;
        let mut labels = vec![0u8; total];
        for (rank, slot) in labels.iter_mut().enumerate() {
            *slot = label_by_index(p, triple_unrank(rank));
        }
        let sizes = [
            labels.iter().filter(|&&l| l == 1).count(),
            labels.iter().filter(|&&l| l == 2).count(),
        ];
        let part = OrbitPartition {
            p,
            generator: a,
            representatives: [
                [Label::Finite(0), Label::Finite(1), Label::Infinity],
                [Label::Finite(0), Label::Finite(a), Label::Infinity],
            ],
            sizes,
            labels,
        };
        part.verify_against_closure()?;
        Ok(part)
    }

    pub fn points(&self) -> usize {
        self.p as usize + 1
    }

    pub fn label(&self, triple: [ProjPoint; 3]) -> Result<u8> {
        let idx = sorted_triple([
            point_index(self.p, triple[0])?,
            point_index(self.p, triple[1])?,
            point_index(self.p, triple[2])?,
        ])?;
        Ok(self.labels[triple_rank(idx)])
    }

    /// Label by point indices (any order, distinct).
    pub fn label_of_indices(&self, t: [usize; 3]) -> Result<u8> {
        Ok(self.labels[triple_rank(sorted_triple(t)?)])
    }

    /// Orbits of the generator action on triples must coincide with the two
    /// label classes, with the representatives in different classes.
    fn verify_against_closure(&self) -> Result<()> {
        let gens = psl2_generators(self.p)?;
        let total = self.labels.len();
        let mut orbit_of = vec![usize::MAX; total];
        let mut orbits = 0;
        for start in 0..total {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            orbit_of[start] = orbits;
            let mut queue = VecDeque::from([start]);
            while let Some(r) = queue.pop_front() {
                let t = triple_unrank(r);
                for g in &gens {
                    let img = triple_rank(sorted_triple(t.map(|i| g.apply(i)))?);
                    if orbit_of[img] == usize::MAX {
                        orbit_of[img] = orbits;
                        queue.push_back(img);
                    }
                }
            }
            orbits += 1;
        }
        if orbits != 2 {
            return Err(Error::Inconsistent(format!(
                "generator closure gives {orbits} orbits on triples"
            )));
        }
        let first_label = self.labels[orbit_of
            .iter()
            .position(|&o| o == 0)
            .expect("orbit 0 exists")];
        for (r, &o) in orbit_of.iter().enumerate() {
            let expected = if o == 0 { first_label } else { 3 - first_label };
            if self.labels[r] != expected {
                return Err(Error::Inconsistent(format!(
                    "triple {:?} label disagrees with closure",
                    triple_unrank(r)
                )));
            }
        }
        if self.label(self.representatives[0])? != 1 || self.label(self.representatives[1])? != 2 {
            return Err(Error::Inconsistent(
                "representatives not in distinct orbits".into(),
            ));
        }
        Ok(())
    }

    /// Pairs containing a fixed pair, per orbit: k_i = 3 |GT_i| / C(p+1, 2).
    pub fn pair_incidence(&self) -> Result<[u64; 2]> {
        let pairs = choose(self.points() as u64, 2);
        let k = self.sizes.map(|s| 3 * s as u64);
        if k.iter().any(|&x| x % pairs != 0) {
            return Err(Error::Inconsistent(
                "orbit sizes not compatible with 2-transitivity".into(),
            ));
        }
        Ok(k.map(|x| x / pairs))
    }
}

impl std::fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let MobiusMap { p, a, b, c, d } = *self;
        if c == 0 {
            let inv = pow_mod(d, p - 2, p);
            let (a, b) = (a * inv % p, b * inv % p);
            return match b {
                0 => write!(f, "x -> {a}x"),
                _ => write!(f, "x -> {a}x + {b}"),
            };
        }
        write!(f, "x -> ({a}x + {b})/({c}x + {d})")
    }
}

/// A coordinate permutation sigma with C^sigma = C^perp.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityWitness {
    pub map: MobiusMap,
    pub permutation: Permutation,
}

/// Finds sigma with C^sigma = C^perp for the extended QR code `code` of
/// length p + 1. Tries x -> c x for non-residues c, then x -> c / x.
pub fn duality_permutation(p: u64, code: &LinearCode) -> Result<DualityWitness> {
    require_design_prime(p)?;
    if code.length() != p as usize + 1 {
        return Err(Error::LengthMismatch(code.length(), p as usize + 1));
    }
    let dual = code.dual();
    let a = smallest_primitive_root(p)?;
    let mut cs = vec![a];
    cs.extend(non_residues(p)?.into_iter().filter(|&c| c != a));
    let candidates = cs
        .iter()
        .map(|&c| MobiusMap::new(p, c as i64, 0, 0, 1))
        .chain(cs.iter().map(|&c| MobiusMap::new(p, 0, c as i64, 1, 0)));
    for map in candidates {
        let map = map?;
        let permutation = map.to_permutation();
        if code.permute(&permutation)?.same_code(&dual)? {
            return Ok(DualityWitness { map, permutation });
        }
    }
    Err(Error::Inconsistent(format!(
        "no duality permutation found for p = {p}"
    )))
}

/// Whether sigma maps every orbit-1 triple to an orbit-2 triple (and hence,
/// by counting, the two orbits onto each other).
pub fn swaps_orbits(orbits: &OrbitPartition, sigma: &Permutation) -> Result<bool> {
    for (r, &l) in orbits.labels.iter().enumerate() {
        let img = triple_unrank(r).map(|i| sigma.apply(i));
        if orbits.label_of_indices(img)? == l {
            return Ok(false);
        }
    }
    Ok(true)
}
