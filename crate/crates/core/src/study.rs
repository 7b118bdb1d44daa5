//! Everything computed about one extended quadratic residue code: its dual,
//! the triple orbits, Jacobi polynomials at the orbit representatives, the
//! invariant harmonic function, and per-shell design reports.

use crate::code::{
    extended_quadratic_residue_code, EnumOptions, Label, LinearCode, WeightDistribution,
};
use crate::designs::{
    exhaustive_status, lambda_from_blocks, non_integral_witness, orbitwise_status, CodeKind,
    DesignReport, Profile, Rational128, Status, TVerdict, Witness,
};
use crate::enumerators::{
    harmonic_from_jacobi, invariant_harmonic3, HarmonicFunction3, HarmonicWeightEnumerator,
    OrbitJacobi,
};
use crate::error::{Error, Result};
use crate::projective::{
    duality_permutation, require_design_prime, swaps_orbits, DualityWitness, OrbitPartition,
};

#[derive(Debug, Clone)]
pub struct QrStudy {
    pub p: u64,
    pub opts: EnumOptions,
    pub code: LinearCode,
    pub dual: LinearCode,
    /// C intersect C^perp, needed to deduplicate union shells.
    pub common: LinearCode,
    pub orbits: OrbitPartition,
    pub harmonic: HarmonicFunction3,
    pub duality: DualityWitness,
    pub jacobi: OrbitJacobi,
    pub jacobi_dual: OrbitJacobi,
    pub jacobi_common: OrbitJacobi,
    /// Codewords grouped by weight, for exhaustive checks.
    pub shells: Vec<Vec<u128>>,
    pub dual_shells: Vec<Vec<u128>>,
}

impl QrStudy {
    pub fn new(p: u64, opts: EnumOptions) -> Result<Self> {
        require_design_prime(p)?;
        let code = extended_quadratic_residue_code(p)?;
        code.enumerator(opts.budget)?;
        let dual = code.dual();
        let common = code.intersection(&dual)?;
        let orbits = OrbitPartition::new(p)?;
        let harmonic = invariant_harmonic3(&orbits)?;
        let duality = duality_permutation(p, &code)?;
        if !swaps_orbits(&orbits, &duality.permutation)? {
            return Err(Error::Inconsistent(
                "duality permutation does not swap the triple orbits".into(),
            ));
        }
        let jacobi = OrbitJacobi::compute(&code, &orbits, opts)?;
        let jacobi_dual = OrbitJacobi::compute(&dual, &orbits, opts)?;
        let jacobi_common = OrbitJacobi::compute(&common, &orbits, opts)?;
        let shells = code.shells(opts)?;
        let dual_shells = dual.shells(opts)?;
        Ok(QrStudy {
            p,
            opts,
            code,
            dual,
            common,
            orbits,
            harmonic,
            duality,
            jacobi,
            jacobi_dual,
            jacobi_common,
            shells,
            dual_shells,
        })
    }

    pub fn n(&self) -> usize {
        self.code.length()
    }

    pub fn weights(&self) -> WeightDistribution {
        WeightDistribution {
            counts: self.shells.iter().map(|s| s.len() as u64).collect(),
        }
    }

    pub fn dual_weights(&self) -> WeightDistribution {
        WeightDistribution {
            counts: self.dual_shells.iter().map(|s| s.len() as u64).collect(),
        }
    }

    pub fn harmonic_enumerator(&self) -> Result<HarmonicWeightEnumerator> {
        harmonic_from_jacobi(&self.jacobi, &self.harmonic, &self.orbits)
    }

    pub fn dual_harmonic_enumerator(&self) -> Result<HarmonicWeightEnumerator> {
        harmonic_from_jacobi(&self.jacobi_dual, &self.harmonic, &self.orbits)
    }

    pub fn points(&self) -> &[Label] {
        self.code.labels()
    }

    /// Deduplicated block masks of the chosen shell and the raw count.
    fn block_masks(&self, kind: CodeKind, weight: usize) -> (Vec<u128>, u64) {
        let get = |v: &Vec<Vec<u128>>| v.get(weight).cloned().unwrap_or_default();
        match kind {
            CodeKind::Code => {
                let b = get(&self.shells);
                let raw = b.len() as u64;
                (b, raw)
            }
            CodeKind::Dual => {
                let b = get(&self.dual_shells);
                let raw = b.len() as u64;
                (b, raw)
            }
            CodeKind::Union => {
                let mut b = get(&self.shells);
                b.extend(get(&self.dual_shells));
                let raw = b.len() as u64;
                b.sort_unstable();
                b.dedup();
                (b, raw)
            }
        }
    }

    /// Jacobi polynomials at the two representatives for the deduplicated
    /// block set.
    fn orbit_counts(&self, kind: CodeKind) -> Result<OrbitJacobi> {
        Ok(match kind {
            CodeKind::Code => self.jacobi.clone(),
            CodeKind::Dual => self.jacobi_dual.clone(),
            CodeKind::Union => {
                // Shells of C and C^perp overlap exactly in the shell of C n C^perp.
                self.jacobi
                    .add(&self.jacobi_dual)?
                    .checked_sub(&self.jacobi_common)?
            }
        })
    }

    /// Covering counts with multiplicity (no deduplication) for unions.
    pub fn raw_union_counts(&self, weight: usize) -> Result<(u64, u64)> {
        let (a1, a2) = self.jacobi.covering_counts(weight)?;
        let (b1, b2) = self.jacobi_dual.covering_counts(weight)?;
        Ok((a1 + b1, a2 + b2))
    }

    /// Verdicts for t = 1..=t_max. t = 1, 2 by exhaustive scan; t = 3 by the
    /// orbit covering counts; t >= 4 by lambda integrality, then exhaustive
    /// scan if integrality does not refute.
    pub fn shell_report(
        &self,
        kind: CodeKind,
        weight: usize,
        t_max: usize,
    ) -> Result<DesignReport> {
        let n = self.n();
        if weight > n {
            return Err(Error::OutOfRange(format!("shell {weight} > n = {n}")));
        }
        let (masks, raw) = self.block_masks(kind, weight);
        let blocks = masks.len() as u64;
        let jac = self.orbit_counts(kind)?;
        let covering = if weight >= 3 {
            Some(jac.covering_counts(weight).map(|(a, b)| [a, b])?)
        } else {
            None
        };
        let mut verdicts = Vec::new();
        let mut failed: Option<usize> = None;
        for t in 1..=t_max {
            let status = if blocks == 0 {
                Status::EmptyShell
            } else if let Some(ft) = failed {
                Status::NotDesign(Witness::Implied { t: ft })
            } else if t > weight {
                // No t-subset fits in a block.
                Status::Design { lambda: 0 }
            } else if t == 3 {
                let st = orbitwise_status(&jac, weight, blocks)?;
                if let Status::Design { lambda } = st {
                    if lambda_from_blocks(blocks, 3, n, weight)?
                        != Rational128::from_integer(lambda as i128)
                    {
                        return Err(Error::Inconsistent(format!(
                            "orbitwise lambda {lambda} at l={weight}"
                        )));
                    }
                }
                st
            } else if t >= 4 {
                match non_integral_witness(lambda_from_blocks(blocks, t, n, weight)?)? {
                    Some(w) => Status::NotDesign(w),
                    None => exhaustive_status(self.points(), &masks, t, self.opts)?,
                }
            } else {
                exhaustive_status(self.points(), &masks, t, self.opts)?
            };
            if failed.is_none() && matches!(status, Status::NotDesign(_)) {
                failed = Some(t);
            }
            verdicts.push(TVerdict { t, status });
        }
        Ok(DesignReport {
            p: Some(self.p),
            code: kind,
            shell: weight,
            n,
            blocks,
            raw_blocks: raw,
            covering,
            verdicts,
        })
    }

    /// Reports for every weight 0..=n, empty shells included.
    pub fn all_reports(&self, kind: CodeKind, t_max: usize) -> Result<Vec<DesignReport>> {
        (0..=self.n())
            .map(|l| self.shell_report(kind, l, t_max))
            .collect()
    }

    pub fn nonempty_reports(&self, kind: CodeKind, t_max: usize) -> Result<Vec<DesignReport>> {
        Ok(self
            .all_reports(kind, t_max)?
            .into_iter()
            .filter(|r| !r.is_empty())
            .collect())
    }

    /// (delta, s) over the nontrivial shells.
    pub fn profile(&self, kind: CodeKind, t_max: usize) -> Result<Profile> {
        Ok(Profile::from_reports(self.all_reports(kind, t_max)?, t_max))
    }

    /// Exhaustive t-design status of a shell (no orbit shortcut).
    pub fn exhaustive(&self, kind: CodeKind, weight: usize, t: usize) -> Result<Status> {
        let (masks, _) = self.block_masks(kind, weight);
        exhaustive_status(self.points(), &masks, t, self.opts)
    }
}

/// Strength profile of an arbitrary code, all t by exhaustive scan (t >= 4
/// first tries lambda integrality).
pub fn delta_s_profile(code: &LinearCode, t_max: usize, opts: EnumOptions) -> Result<Profile> {
    let shells = code.shells(opts)?;
    let n = code.length();
    let mut reports = Vec::new();
    for (weight, masks) in shells.iter().enumerate() {
        let blocks = masks.len() as u64;
        let mut verdicts = Vec::new();
        let mut failed = None;
        for t in 1..=t_max {
            let status = if blocks == 0 {
                Status::EmptyShell
            } else if let Some(ft) = failed {
                Status::NotDesign(Witness::Implied { t: ft })
            } else if t > weight {
                Status::Design { lambda: 0 }
            } else {
                match non_integral_witness(lambda_from_blocks(blocks, t, n, weight)?)? {
                    Some(w) => Status::NotDesign(w),
                    None => exhaustive_status(code.labels(), masks, t, opts)?,
                }
            };
            if failed.is_none() && matches!(status, Status::NotDesign(_)) {
                failed = Some(t);
            }
            verdicts.push(TVerdict { t, status });
        }
        reports.push(DesignReport {
            p: None,
            code: CodeKind::Code,
            shell: weight,
            n,
            blocks,
            raw_blocks: blocks,
            covering: None,
            verdicts,
        });
    }
    Ok(Profile::from_reports(reports, t_max))
}

/// t = 3 verdict for one shell of `code` via the orbit covering counts. The
/// code's automorphism group must act on triples with the orbits `orbits`.
pub fn shell_design_check_orbitwise(
    code: &LinearCode,
    weight: usize,
    orbits: &OrbitPartition,
    opts: EnumOptions,
) -> Result<Status> {
    let jac = OrbitJacobi::compute(code, orbits, opts)?;
    let blocks = jac
        .first
        .weight_enumerator()
        .get(weight)
        .copied()
        .unwrap_or(0);
    orbitwise_status(&jac, weight, blocks)
}

/// t = 3 verdict for the union of the weight-`weight` shells of `code` and its
/// dual, supports deduplicated.
pub fn union_design_check(
    code: &LinearCode,
    weight: usize,
    orbits: &OrbitPartition,
    opts: EnumOptions,
) -> Result<Status> {
    let dual = code.dual();
    let common = code.intersection(&dual)?;
    let jac = OrbitJacobi::compute(code, orbits, opts)?
        .add(&OrbitJacobi::compute(&dual, orbits, opts)?)?
        .checked_sub(&OrbitJacobi::compute(&common, orbits, opts)?)?;
    let blocks = jac
        .first
        .weight_enumerator()
        .get(weight)
        .copied()
        .unwrap_or(0);
    orbitwise_status(&jac, weight, blocks)
}
