//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qrdesign::code::{
    extended_quadratic_residue_code, quadratic_residue_code, BitVector, EnumOptions, Label,
};
use qrdesign::designs::{exhaustive_status, CodeKind, Status, Witness};
use qrdesign::enumerators::{
    harmonic_weight_enumerator, harmonic_weight_enumerator_direct, invariant_harmonic3, jacobi,
    orbit_sum_holds, JacobiJson, OrbitJacobi, Rational,
};
use qrdesign::projective::{psl2_generators, swaps_orbits, OrbitPartition};
use qrdesign::study::QrStudy;
use qrdesign::LinearCode;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

/// (z exponent, y exponent) -> coefficient, parsed from the published text.
fn parse_published(line: &str) -> BTreeMap<(usize, usize), u64> {
    let mut out = BTreeMap::new();
    for term in line.split(" + ") {
        let digits: String = term.chars().take_while(char::is_ascii_digit).collect();
        let coeff = if digits.is_empty() {
            1
        } else {
            digits.parse().unwrap()
        };
        let mut exps = [0usize; 4];
        let rest: Vec<char> = term[digits.len()..].chars().collect();
        let mut i = 0;
        while i < rest.len() {
            let v = "wxyz".find(rest[i]).unwrap();
            i += 1;
            let mut e = 1;
            if i < rest.len() && rest[i] == '^' {
                i += 1;
                let d: String = rest[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_digit())
                    .collect();
                i += d.len();
                e = d.parse().unwrap();
            }
            exps[v] = e;
        }
        assert_eq!(exps[0] + exps[3], 3, "{term}");
        assert_eq!(exps[1] + exps[2], 39, "{term}");
        out.insert((exps[3], exps[2]), coeff);
    }
    out
}

fn published() -> Vec<BTreeMap<(usize, usize), u64>> {
    include_str!("fixtures/published_jacobi_42.txt")
        .lines()
        .map(parse_published)
        .collect()
}

fn binom(n: u64, k: u64) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// x^9 y^9 (x^2 - y^2)^9 (wy - xz)^3 by the binomial theorem, keyed by
/// (z exponent, y exponent).
fn closed_form_difference() -> BTreeMap<(usize, usize), i128> {
    let mut out = BTreeMap::new();
    for i in 0..=9u64 {
        for j in 0..=3u64 {
            let c = binom(9, i) * binom(3, j) * if (i + j) % 2 == 0 { 1 } else { -1 };
            let y = 9 + 2 * i + (3 - j);
            *out.entry((j as usize, y as usize)).or_insert(0) += c;
        }
    }
    out
}

/// -5740 x^12 y^12 (x^2 - y^2)^9 keyed by the y exponent (the weight).
fn closed_form_harmonic() -> BTreeMap<usize, i128> {
    (0..=9u64)
        .map(|i| {
            (
                12 + 2 * i as usize,
                -5740 * binom(9, i) * if i % 2 == 0 { 1 } else { -1 },
            )
        })
        .collect()
}

fn run_jacobi_cli(set: &str, format: &str, threads: &str) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qrdesign"))
        .args([
            "--threads",
            threads,
            "jacobi",
            "--p",
            "41",
            "--T",
            set,
            "--format",
            format,
        ])
        .env_remove("QRDESIGN_BUDGET")
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        out.status.success(),
        "jacobi --T {set} exited with {:?}",
        out.status
    );
    Ok(String::from_utf8_lossy(&out.stdout).trim().to_owned())
}

fn criterion_1() -> Outcome {
    let tables = published();
    let text = include_str!("fixtures/published_jacobi_42.txt")
        .lines()
        .collect::<Vec<_>>();
    let mut single = Duration::ZERO;
    let mut multi = Duration::ZERO;
    let mut terms = Vec::new();
    for (idx, set) in ["0,1,inf", "0,6,inf"].iter().enumerate() {
        let start = Instant::now();
        let json = run_jacobi_cli(set, "json", "1")?;
        single += start.elapsed();
        let start = Instant::now();
        let json8 = run_jacobi_cli(set, "json", "8")?;
        multi += start.elapsed();
        ensure!(
            json == json8,
            "thread count changed the table for T = {set}"
        );
        let parsed: JacobiJson = serde_json::from_str(&json).map_err(|e| e.to_string())?;
        let got: BTreeMap<(usize, usize), u64> = parsed
            .terms
            .iter()
            .map(|t| ((t.m1, t.n1), t.coeff))
            .collect();
        ensure!(
            got == tables[idx],
            "T = {set}: coefficients differ from the published table"
        );
        let pretty = run_jacobi_cli(set, "paper-style", "1")?;
        ensure!(
            pretty == text[idx],
            "T = {set}: monomial rendering differs from the published display"
        );
        terms.push(got.len());
    }
    let (t1, t2) = (&tables[0], &tables[1]);
    ensure!(
        t1[&(0, 10)] == 744 && t2[&(0, 10)] == 744,
        "744 w^3x^29y^10"
    );
    ensure!(
        t1[&(0, 12)] == 3756 && t2[&(0, 12)] == 3755,
        "3756 vs 3755 at w^3x^27y^12"
    );
    ensure!(t1[&(3, 7)] == 18 && t2[&(3, 7)] == 18, "18 x^32y^7z^3");
    ensure!(
        single < Duration::from_secs(120),
        "single-threaded run took {single:?}"
    );
    ensure!(multi < Duration::from_secs(30), "8-way run took {multi:?}");
    Ok(format!(
        "{} + {} terms exact; both tables {:.2}s single-threaded, {:.2}s with 8 workers",
        terms[0],
        terms[1],
        single.as_secs_f64(),
        multi.as_secs_f64()
    ))
}

fn criterion_2(s: &QrStudy) -> Outcome {
    let expected = closed_form_difference();
    let (a, b) = (&s.jacobi.first, &s.jacobi.second);
    let mut nonzero = 0;
    for m1 in 0..=3 {
        for n1 in 0..=39 {
            let diff = a.coeff(m1, n1) as i128 - b.coeff(m1, n1) as i128;
            let want = expected.get(&(m1, n1)).copied().unwrap_or(0);
            ensure!(
                diff == want,
                "coefficient at z^{m1} y^{n1}: {diff} vs {want}"
            );
            nonzero += usize::from(diff != 0);
        }
    }
    Ok(format!(
        "J(T1) - J(T2) = x^9y^9(x^2-y^2)^9(wy-xz)^3, {nonzero} nonzero terms"
    ))
}

fn criterion_3(s: &QrStudy) -> Outcome {
    let h = s.harmonic_enumerator().map_err(|e| e.to_string())?;
    let reference = closed_form_harmonic();
    let zero = Rational::from_integer(0);
    let mut scalar: Option<Rational> = None;
    for (l, c) in h.coeff.iter().enumerate() {
        match reference.get(&l) {
            None => ensure!(
                *c == zero,
                "nonzero coefficient {c} at l = {l} outside the closed form"
            ),
            Some(&r) => {
                let ratio = c / Rational::from_integer(r as i64);
                ensure!(
                    scalar.is_none_or(|s| s == ratio),
                    "no single scalar: {ratio} at l = {l}"
                );
                scalar = Some(ratio);
            }
        }
    }
    let scalar = scalar.ok_or("empty closed form")?;
    ensure!(scalar != zero, "scalar is zero");
    ensure!(
        h.coeff[10] == zero && h.coeff[32] == zero,
        "coefficients at 10 and 32 must vanish"
    );
    for l in (12..=30).step_by(2) {
        ensure!(h.coeff[l] != zero, "coefficient at l = {l} vanishes");
    }
    Ok(format!(
        "w = c_f(-5740x^12y^12(x^2-y^2)^9) with c_f = {scalar}; zero at l = 10, 32 only"
    ))
}

fn criterion_4(s: &QrStudy) -> Outcome {
    let reports = s
        .nonempty_reports(CodeKind::Code, 4)
        .map_err(|e| e.to_string())?;
    let mut witnessed = 0;
    for r in reports.iter().filter(|r| r.shell > 0 && r.shell < r.n) {
        match (r.shell, r.verdict(3)) {
            (10, Some(Status::Design { lambda: 18 })) => {
                ensure!(r.blocks == 1722, "shell 10 has {} blocks", r.blocks)
            }
            (32, Some(Status::Design { lambda: 744 })) => {}
            (10 | 32, v) => return Err(format!("shell {} verdict {v:?}", r.shell)),
            (l, Some(Status::NotDesign(Witness::Orbits { covering, .. }))) => {
                ensure!(
                    covering[0] != covering[1],
                    "shell {l}: witness without a difference"
                );
                witnessed += 1;
            }
            (l, v) => {
                return Err(format!(
                    "shell {l}: expected a witnessed non-design, got {v:?}"
                ))
            }
        }
    }
    let r10 = s
        .shell_report(CodeKind::Code, 10, 4)
        .map_err(|e| e.to_string())?;
    ensure!(
        matches!(
            r10.verdict(4),
            Some(Status::NotDesign(Witness::NonIntegralLambda {
                numer: 42,
                denom: 13
            }))
        ),
        "lambda_4 at shell 10: {:?}",
        r10.verdict(4)
    );
    let scan =
        exhaustive_status(s.points(), &s.shells[10], 3, s.opts).map_err(|e| e.to_string())?;
    ensure!(
        scan == Status::Design { lambda: 18 },
        "exhaustive scan of shell 10 gives {scan:?}"
    );
    let profile = s.profile(CodeKind::Code, 4).map_err(|e| e.to_string())?;
    ensure!(
        profile.delta == Some(2) && profile.s == Some(3),
        "profile {:?}, {:?}",
        profile.delta,
        profile.s
    );
    Ok(format!(
        "3-(42,10,18) with 1722 blocks, 3-(42,32,744), {witnessed} other shells witnessed, lambda_4 = 42/13, (delta, s) = (2, 3)"
    ))
}

fn criterion_5(s: &QrStudy) -> Outcome {
    let left = s
        .jacobi
        .first
        .add(&s.jacobi_dual.first)
        .map_err(|e| e.to_string())?;
    let right = s
        .jacobi
        .second
        .add(&s.jacobi_dual.second)
        .map_err(|e| e.to_string())?;
    for m1 in 0..=3 {
        for n1 in 0..=39 {
            ensure!(
                left.coeff(m1, n1) == right.coeff(m1, n1),
                "Jacobi sums differ at z^{m1} y^{n1}"
            );
        }
    }
    let h = s
        .harmonic_enumerator()
        .and_then(|h| h.add(&s.dual_harmonic_enumerator()?))
        .map_err(|e| e.to_string())?;
    ensure!(h.is_zero(), "w(C,f) + w(C^perp,f) is not zero");
    Ok("J(C,T1) + J(C^perp,T1) = J(C,T2) + J(C^perp,T2) and w(C,f) + w(C^perp,f) = 0".into())
}

/// Triples of 0..n counted block by block, without bitsets.
fn naive_triple_counts(n: usize, blocks: &[u128]) -> Vec<u64> {
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let mut counts = vec![0u64; n * n * n];
    for &m in blocks {
        let pts: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    counts[idx(pts[i], pts[j], pts[k])] += 1;
                }
            }
        }
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push(counts[idx(a, b, c)]);
            }
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let s17 = QrStudy::new(17, EnumOptions::default()).map_err(|e| e.to_string())?;
    let mut shells17 = 0;
    for r in s17
        .nonempty_reports(CodeKind::Union, 3)
        .map_err(|e| e.to_string())?
    {
        let Some(Status::Design { lambda }) = r.verdict(3).cloned() else {
            return Err(format!("p = 17, union shell {} is not a 3-design", r.shell));
        };
        let mut blocks: Vec<u128> = s17.shells[r.shell]
            .iter()
            .chain(&s17.dual_shells[r.shell])
            .copied()
            .collect();
        blocks.sort_unstable();
        blocks.dedup();
        let counts = naive_triple_counts(s17.n(), &blocks);
        ensure!(
            counts.len() == 816,
            "expected 816 triples, got {}",
            counts.len()
        );
        ensure!(
            counts.iter().all(|&c| c == lambda),
            "p = 17, shell {}: naive lambda(S) not constant",
            r.shell
        );
        shells17 += 1;
    }
    let t17 = start.elapsed();
    ensure!(t17 < Duration::from_secs(5), "p = 17 took {t17:?}");
    let s41 = QrStudy::new(41, EnumOptions::default()).map_err(|e| e.to_string())?;
    let reports41 = s41
        .nonempty_reports(CodeKind::Union, 3)
        .map_err(|e| e.to_string())?;
    for r in &reports41 {
        ensure!(
            r.is_design(3),
            "p = 41, union shell {} is not a 3-design",
            r.shell
        );
    }
    Ok(format!(
        "p = 17: {shells17} union shells, each confirmed over all 816 triples ({:.2}s); p = 41: {} union shells",
        t17.as_secs_f64(),
        reports41.len()
    ))
}

fn criterion_7() -> Outcome {
    for p in [7u64, 17, 23, 31, 41] {
        let k = extended_quadratic_residue_code(p)
            .map_err(|e| e.to_string())?
            .dimension();
        ensure!(k == (p as usize).div_ceil(2), "p = {p}: k = {k}");
    }
    for p in [17u64, 41] {
        let code = extended_quadratic_residue_code(p).map_err(|e| e.to_string())?;
        for g in psl2_generators(p).map_err(|e| e.to_string())? {
            ensure!(
                code.permute(&g).and_then(|c| c.same_code(&code)) == Ok(true),
                "p = {p}: generator moves the code"
            );
        }
        let s = QrStudy::new(p, EnumOptions::default()).map_err(|e| e.to_string())?;
        ensure!(
            code.permute(&s.duality.permutation)
                .and_then(|c| c.same_code(&s.dual))
                == Ok(true),
            "p = {p}: sigma does not map C to its dual"
        );
        ensure!(
            swaps_orbits(&s.orbits, &s.duality.permutation) == Ok(true),
            "p = {p}: sigma does not swap orbits"
        );
    }
    let code = extended_quadratic_residue_code(41).map_err(|e| e.to_string())?;
    let common = code.intersection(&code.dual()).map_err(|e| e.to_string())?;
    let words = common
        .weight_distribution(EnumOptions::default())
        .map_err(|e| e.to_string())?;
    ensure!(
        words.support() == [0, 42] && common.contains(&BitVector::from_bits(&[true; 42])),
        "intersection has weights {:?}",
        words.support()
    );
    Ok("dimensions (p+1)/2 for p in {7,17,23,31,41}; generators and sigma verified at 17, 41; C n C^perp = {0, 1}".into())
}

fn criterion_8() -> Outcome {
    let opts = EnumOptions::default();
    let mut codes: Vec<(String, LinearCode)> = Vec::new();
    for p in [7u64, 17, 23] {
        let q = quadratic_residue_code(p).map_err(|e| e.to_string())?;
        let e = extended_quadratic_residue_code(p).map_err(|e| e.to_string())?;
        codes.push((format!("Q{p}"), q.clone()));
        codes.push((format!("Q{p} dual"), q.dual()));
        codes.push((format!("Q~{}", p + 1), e.clone()));
        codes.push((format!("Q~{} dual", p + 1), e.dual()));
    }
    let mut checked = 0;
    for (name, code) in &codes {
        ensure!(code.dimension() <= 12, "{name} has k > 12");
        let w = code.weight_distribution(opts).map_err(|e| e.to_string())?;
        let n = code.length();
        let sets: Vec<Vec<Label>> = vec![
            vec![],
            code.labels()[..1].to_vec(),
            code.labels()[..3].to_vec(),
            vec![code.labels()[0], code.labels()[n / 2], code.labels()[n - 1]],
            code.labels()[..n].iter().step_by(2).copied().collect(),
        ];
        for set in sets {
            let j = jacobi(code, &set, opts).map_err(|e| e.to_string())?;
            ensure!(
                j.mass() == 1 << code.dimension(),
                "{name}: Jacobi mass {}",
                j.mass()
            );
            ensure!(
                j.weight_enumerator() == w.counts,
                "{name}: J(x,y,x,y) differs from the weight enumerator"
            );
            checked += 1;
        }
    }
    let orbits = OrbitPartition::new(17).map_err(|e| e.to_string())?;
    let f = invariant_harmonic3(&orbits).map_err(|e| e.to_string())?;
    let e = extended_quadratic_residue_code(17).map_err(|e| e.to_string())?;
    for (name, code) in [("Q~18", e.clone()), ("Q~18 dual", e.dual())] {
        let jac = OrbitJacobi::compute(&code, &orbits, opts).map_err(|e| e.to_string())?;
        let w = code.weight_distribution(opts).map_err(|e| e.to_string())?;
        ensure!(
            orbit_sum_holds(&jac, &orbits, &w.counts) == Ok(true),
            "{name}: orbit-sum identity fails"
        );
        let assembled =
            harmonic_weight_enumerator(&code, &f, &orbits, opts).map_err(|e| e.to_string())?;
        let direct = harmonic_weight_enumerator_direct(&code, &f, &orbits, opts)
            .map_err(|e| e.to_string())?;
        ensure!(
            assembled == direct,
            "{name}: assembled and direct harmonic enumerators differ"
        );
    }
    Ok(format!(
        "{} codes with k <= 12, {checked} Jacobi tables; orbit sums and harmonic routes agree on Q~18 and its dual",
        codes.len()
    ))
}

fn main() -> ExitCode {
    let s41 = QrStudy::new(41, EnumOptions::default()).expect("length-42 study builds");
    let criteria: Vec<Criterion> = vec![
        (
            "exact Jacobi reproduction at length 42",
            Box::new(criterion_1),
        ),
        (
            "closed-form Jacobi difference",
            Box::new(|| criterion_2(&s41)),
        ),
        (
            "harmonic enumerator is a scalar multiple of the closed form",
            Box::new(|| criterion_3(&s41)),
        ),
        (
            "design classification of every shell at length 42",
            Box::new(|| criterion_4(&s41)),
        ),
        (
            "code plus dual sums at the two orbit representatives",
            Box::new(|| criterion_5(&s41)),
        ),
        (
            "union shells are 3-designs at p = 17 and p = 41",
            Box::new(criterion_6),
        ),
        ("structural checks", Box::new(criterion_7)),
        ("property suite on small codes", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
