//! Named pass/fail checks of the design and enumerator statements for an
//! extended QR code. The length-42 checks compare against the published
//! tables and closed forms; the rest apply to every prime p = 1 mod 8.

use serde::Serialize;

use crate::code::{BitVector, EnumOptions};
use crate::designs::{CodeKind, Status, Witness};
use crate::enumerators::{
    harmonic_weight_enumerator_direct, jacobi_difference, orbit_sum_holds, Rational,
};
use crate::error::Result;
use crate::poly::{harmonic_closed_form_42, jacobi_difference_closed_form_42};
use crate::projective::{group_order, psl2_generators, swaps_orbits};
use crate::reference::reference_jacobi_42;
use crate::study::QrStudy;

/// Direct harmonic summation costs 2^k C(n, 3); skipped above this k.
const DIRECT_HARMONIC_MAX_K: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "{} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name
        );
        if !self.detail.is_empty() {
            s.push_str(&format!(" ({})", self.detail));
        }
        s
    }
}

pub fn reproduce(p: u64, opts: EnumOptions) -> Result<Vec<Check>> {
    reproduce_study(&QrStudy::new(p, opts)?)
}

pub fn reproduce_study(s: &QrStudy) -> Result<Vec<Check>> {
    let mut checks = structural_checks(s)?;
    if s.p == 41 {
        checks.extend(length_42_checks(s)?);
    }
    checks.extend(sum_checks(s)?);
    checks.extend(union_checks(s)?);
    Ok(checks)
}

fn structural_checks(s: &QrStudy) -> Result<Vec<Check>> {
    let p = s.p;
    let mut out = Vec::new();
    let k = s.code.dimension();
    out.push(Check::new(
        format!("extended QR code of length {} has dimension (p+1)/2", p + 1),
        k == (p as usize).div_ceil(2),
        format!("k = {k}"),
    ));

    let gens = psl2_generators(p)?;
    let mut fixed = true;
    for g in &gens {
        fixed &= s.code.permute(g)?.same_code(&s.code)?;
    }
    out.push(Check::new(
        "PSL(2,p) generators preserve the code",
        fixed,
        format!("{} generators", gens.len()),
    ));

    let order = group_order(&gens);
    let expected = (p * (p * p - 1) / 2) as usize;
    out.push(Check::new(
        "generated group has order p(p^2-1)/2",
        order == expected,
        format!("{order} vs {expected}"),
    ));

    let maps_to_dual = s.code.permute(&s.duality.permutation)?.same_code(&s.dual)?;
    out.push(Check::new(
        "duality permutation maps the code onto its dual",
        maps_to_dual,
        s.duality.map.to_string(),
    ));
    out.push(Check::new(
        "duality permutation swaps the two triple orbits",
        swaps_orbits(&s.orbits, &s.duality.permutation)?,
        "",
    ));

    let n = s.n();
    let ones = BitVector::from_bits(&vec![true; n]);
    let common_ok = s.common.dimension() == 1 && s.common.contains(&ones);
    out.push(Check::new(
        "code meets its dual only in {0, all-ones}",
        common_ok,
        format!("dim = {}", s.common.dimension()),
    ));

    out.push(Check::new(
        "triple orbits have equal size",
        s.orbits.sizes[0] == s.orbits.sizes[1],
        format!("{} + {}", s.orbits.sizes[0], s.orbits.sizes[1]),
    ));

    let weights = s.weights();
    out.push(Check::new(
        "Jacobi polynomials have mass 2^k and specialize to the weight enumerator",
        s.jacobi.first.mass() == 1 << k
            && s.jacobi.second.mass() == 1 << k
            && s.jacobi.first.weight_enumerator() == weights.counts
            && s.jacobi.second.weight_enumerator() == weights.counts,
        "",
    ));
    out.push(Check::new(
        "orbit covering counts account for every triple of every codeword",
        orbit_sum_holds(&s.jacobi, &s.orbits, &weights.counts)?,
        "",
    ));

    if k <= DIRECT_HARMONIC_MAX_K {
        let direct = harmonic_weight_enumerator_direct(&s.code, &s.harmonic, &s.orbits, s.opts)?;
        out.push(Check::new(
            "harmonic enumerator from Jacobi tables equals direct summation",
            direct == s.harmonic_enumerator()?,
            "",
        ));
    }
    Ok(out)
}

fn length_42_checks(s: &QrStudy) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (first, jac, rep) in [
        (true, &s.jacobi.first, "{0,1,inf}"),
        (false, &s.jacobi.second, "{0,6,inf}"),
    ] {
        let reference = reference_jacobi_42(first);
        let mismatches = reference
            .terms()
            .iter()
            .filter(|t| jac.coeff(t.m1, t.n1) != t.coeff)
            .count();
        out.push(Check::new(
            format!("Jacobi polynomial at {rep} matches the published table"),
            jac.same_coefficients(&reference),
            format!("{} terms, {mismatches} mismatched", reference.terms().len()),
        ));
    }
    let diff = jacobi_difference(&s.jacobi.first, &s.jacobi.second)?;
    out.push(Check::new(
        "J(T1) - J(T2) = x^9y^9(x^2-y^2)^9(wy-xz)^3",
        diff == jacobi_difference_closed_form_42(),
        format!("{} terms", diff.len()),
    ));

    let h = s.harmonic_enumerator()?;
    let scalar = h.scalar_multiple_of(&harmonic_closed_form_42());
    out.push(Check::new(
        "harmonic enumerator is c_f(-5740x^12y^12(x^2-y^2)^9)",
        scalar.is_some_and(|c| c != Rational::from_integer(0)),
        match scalar {
            Some(c) => format!("c_f = {c}"),
            None => "no common scalar".into(),
        },
    ));
    let zero = Rational::from_integer(0);
    let vanishing: Vec<usize> = (10..=32)
        .step_by(2)
        .filter(|&l| h.coeff[l] == zero)
        .collect();
    out.push(Check::new(
        "harmonic coefficient vanishes at l = 10, 32 and at no other even l in [10, 32]",
        vanishing == [10, 32],
        format!("zero at {vanishing:?}"),
    ));

    let r10 = s.shell_report(CodeKind::Code, 10, 4)?;
    out.push(Check::new(
        "shell 10 is a 3-(42,10,18) design with 1722 blocks",
        r10.blocks == 1722 && r10.verdict(3) == Some(&Status::Design { lambda: 18 }),
        r10.summary_line(),
    ));
    let lambda4_ok = matches!(
        r10.verdict(4),
        Some(Status::NotDesign(Witness::NonIntegralLambda {
            numer: 42,
            denom: 13
        }))
    );
    out.push(Check::new(
        "shell 10 is not a 4-design: lambda_4 = 42/13",
        lambda4_ok,
        "",
    ));

    let r32 = s.shell_report(CodeKind::Code, 32, 3)?;
    out.push(Check::new(
        "shell 32 is a 3-(42,32,744) design",
        r32.verdict(3) == Some(&Status::Design { lambda: 744 }),
        r32.summary_line(),
    ));

    let mut designs = Vec::new();
    let mut unwitnessed = Vec::new();
    for r in s.nonempty_reports(CodeKind::Code, 3)? {
        if r.shell == 0 || r.shell == r.n {
            continue;
        }
        match r.verdict(3) {
            Some(Status::Design { .. }) => designs.push(r.shell),
            Some(Status::NotDesign(Witness::Implied { .. })) | None => unwitnessed.push(r.shell),
            _ => {}
        }
    }
    out.push(Check::new(
        "no other nonempty shell is a 3-design, each with a witness",
        designs == [10, 32] && unwitnessed.is_empty(),
        format!("3-designs at {designs:?}"),
    ));

    let profile = s.profile(CodeKind::Code, 4)?;
    out.push(Check::new(
        "(delta, s) = (2, 3)",
        profile.delta == Some(2) && profile.s == Some(3),
        format!("delta = {:?}, s = {:?}", profile.delta, profile.s),
    ));
    Ok(out)
}

fn sum_checks(s: &QrStudy) -> Result<Vec<Check>> {
    let at_first = s.jacobi.first.add(&s.jacobi_dual.first)?;
    let at_second = s.jacobi.second.add(&s.jacobi_dual.second)?;
    let h = s
        .harmonic_enumerator()?
        .add(&s.dual_harmonic_enumerator()?)?;
    Ok(vec![
        Check::new(
            "J(C,T1) + J(C^perp,T1) = J(C,T2) + J(C^perp,T2)",
            at_first.same_coefficients(&at_second),
            "",
        ),
        Check::new("w(C,f) + w(C^perp,f) = 0", h.is_zero(), ""),
    ])
}

fn union_checks(s: &QrStudy) -> Result<Vec<Check>> {
    let reports = s.nonempty_reports(CodeKind::Union, 3)?;
    let failing: Vec<usize> = reports
        .iter()
        .filter(|r| !r.is_design(3))
        .map(|r| r.shell)
        .collect();
    let mut out = vec![Check::new(
        "every nonempty union shell of C and C^perp is a 3-design",
        failing.is_empty(),
        format!("{} shells, failing {failing:?}", reports.len()),
    )];
    let mut disagree = Vec::new();
    for r in &reports {
        if s.exhaustive(CodeKind::Union, r.shell, 3)?.is_design() != r.is_design(3) {
            disagree.push(r.shell);
        }
    }
    out.push(Check::new(
        "exhaustive triple scan agrees on every union shell",
        disagree.is_empty(),
        format!("disagreeing at {disagree:?}"),
    ));
    Ok(out)
}
