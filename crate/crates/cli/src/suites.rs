//! The verification suites behind each subcommand.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thetaring::sample::PolySampler;
use thetaring::{
    nilpotence_bound, verify_certificate, Certificate, ExampleRing, Identity, IntegerRing,
    LocalRing, Membership, Modulus, Polynomial, ThetaContext,
};

use crate::config::RunConfig;
use crate::report::{AxiomRecord, CellRecord, Check, IdentityCount, LemmaRecord, Report, Verdict};

const MAX_LISTED_FAILURES: usize = 5;

/// RNG for one suite instance; `stream` separates primes and cells.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn run_axioms(cfg: &RunConfig) -> Report {
    let mut report = Report::new("axioms", cfg);
    report.axioms = cfg
        .primes
        .par_iter()
        .map(|&p| axioms_for_prime(p, cfg.trials, cfg.seed))
        .collect();
    report.finish()
}

/// The six identities, θ(pb) = p^(p-1)b^p - ψ(b) and the Frobenius
/// congruence on seeded samples.
pub fn axioms_for_prime(p: u64, trials: usize, seed: u64) -> AxiomRecord {
    let ctx = ThetaContext::new(p).expect("prime checked by config");
    let sampler = PolySampler::new(ctx.local_ring());
    let mut rng = rng_for(seed, p);
    let mut passed = [0usize; Identity::ALL.len()];
    let mut prop1_passed = 0;
    let mut frobenius_passed = 0;
    let mut division_errors = 0;
    let mut failures = Vec::new();
    for _ in 0..trials {
        let f = sampler.sample(&mut rng);
        let g = sampler.sample(&mut rng);
        let axioms = ctx.check_axioms(&f, &g);
        for (identity, ok) in &axioms.results {
            let slot = Identity::ALL
                .iter()
                .position(|i| i == identity)
                .expect("known identity");
            passed[slot] += usize::from(*ok);
        }
        division_errors += axioms.division_errors;
        for fail in axioms.failures {
            if failures.len() < MAX_LISTED_FAILURES {
                failures.push(format!(
                    "{} at f = {f}, g = {g}: {} != {}",
                    fail.identity, fail.lhs, fail.rhs
                ));
            }
        }
        match ctx.check_prop1(&f) {
            Ok(true) => prop1_passed += 1,
            Ok(false) => failures.push(format!("prop1 at b = {f}")),
            Err(err) => {
                division_errors += 1;
                failures.push(format!("prop1 at b = {f}: {err}"));
            }
        }
        if ctx.check_frobenius_congruence(&f) {
            frobenius_passed += 1;
        }
    }
    failures.truncate(MAX_LISTED_FAILURES);
    let all = passed.iter().all(|&n| n == trials)
        && prop1_passed == trials
        && frobenius_passed == trials
        && division_errors == 0;
    AxiomRecord {
        p,
        trials,
        identities: Identity::ALL
            .iter()
            .zip(passed)
            .map(|(i, n)| IdentityCount {
                identity: i.name().to_owned(),
                passed: n,
            })
            .collect(),
        prop1_passed,
        frobenius_passed,
        division_errors,
        verdict: Verdict::from_bool(all, || format!("{} failing samples", failures.len())),
        failures,
    }
}

pub fn run_fn_check(cfg: &RunConfig) -> Report {
    let mut report = Report::new("fn-check", cfg);
    let per_prime: Vec<Vec<LemmaRecord>> = cfg
        .primes
        .par_iter()
        .map(|&p| lemmas_for_prime(p, cfg.degree_cap))
        .collect();
    report.lemmas = per_prime.into_iter().flatten().collect();
    report.finish()
}

/// Lemma checks for every n with p^n ≤ cap. Row n = 0 is reported skipped.
pub fn lemmas_for_prime(p: u64, cap: u64) -> Vec<LemmaRecord> {
    let mut ctx = ThetaContext::new(p).expect("prime checked by config");
    let trivial = || Verdict::skipped("n = 0 holds by definition");
    let mut out = vec![LemmaRecord {
        p,
        n: 0,
        substitution: trivial(),
        power_congruence: trivial(),
        diagonal: trivial(),
    }];
    let mut n = 1u32;
    while p.checked_pow(n).is_some_and(|d| d <= cap) {
        let substitution = Verdict::from_bool(ctx.check_family_substitution(n), || {
            "F_(n-1)(s^p - p t, t^p) differs from F_n".into()
        });
        let power_congruence = Verdict::from_bool(ctx.check_family_power_congruence(n), || {
            "F_n - F_(n-1)(s^p, t^p) not divisible by p^n".into()
        });
        let diagonal = match ctx.check_family_diagonal(n) {
            Ok(ok) => Verdict::from_bool(ok, || "diagonal identity fails".into()),
            Err(err) => Verdict::fail(err.to_string()),
        };
        out.push(LemmaRecord {
            p,
            n,
            substitution,
            power_congruence,
            diagonal,
        });
        n += 1;
    }
    out
}

/// Output of one grid cell: its record and the certificates to write.
pub struct CellOutcome {
    pub record: CellRecord,
    pub certificates: Vec<(String, Certificate)>,
}

pub fn run_verify(cfg: &RunConfig) -> (Report, Vec<(String, Certificate)>) {
    let mut outcomes: Vec<CellOutcome> = cfg
        .cells
        .par_iter()
        .map(|&(p, e)| verify_cell(p, e, cfg))
        .collect();
    outcomes.sort_by_key(|o| (o.record.p, o.record.e));
    let mut report = Report::new("verify", cfg);
    let mut certificates = Vec::new();
    for o in outcomes {
        report.cells.push(o.record);
        certificates.extend(o.certificates);
    }
    (report.finish(), certificates)
}

fn x_power(n: u64) -> Polynomial<IntegerRing> {
    Polynomial::monomial(IntegerRing, 1, n as u32, 0)
}

struct CellRun {
    p: u64,
    e: u32,
    checks: Vec<Check>,
    certificates: Vec<(String, Certificate)>,
}

impl CellRun {
    fn expect_member(&mut self, name: &str, k: Option<u32>, m: u32, res: &Membership) {
        let mut check = Check {
            name: name.to_owned(),
            k,
            m,
            verdict: Verdict::Pass,
            certificate: None,
            witness: None,
        };
        match res {
            Membership::Member(cert) if verify_certificate(cert) => {
                let file = match k {
                    Some(k) => format!("p{}_e{}_m{m}_{name}_k{k}.toml", self.p, self.e),
                    None => format!("p{}_e{}_m{m}_{name}.toml", self.p, self.e),
                };
                check.certificate = Some(file.clone());
                self.certificates.push((file, cert.clone()));
            }
            Membership::Member(_) => check.verdict = Verdict::fail("certificate does not verify"),
            Membership::NonMember(w) => {
                check.verdict = Verdict::fail("not in the ideal");
                check.witness = Some(w.to_string());
            }
        }
        self.checks.push(check);
    }

    fn push(&mut self, name: &str, m: u32, verdict: Verdict, witness: Option<String>) {
        self.checks.push(Check {
            name: name.to_owned(),
            k: None,
            m,
            verdict,
            certificate: None,
            witness,
        });
    }
}

/// All statements for one (p, e).
pub fn verify_cell(p: u64, e: u32, cfg: &RunConfig) -> CellOutcome {
    let start = Instant::now();
    let span_dim = p.checked_pow(2 * e).unwrap_or(u64::MAX);
    let m = e + 1;
    let fine = m + cfg.extra_precision;
    let mut record = CellRecord {
        p,
        e,
        span_dim,
        howell_rows: None,
        verdict: Verdict::Pass,
        checks: Vec::new(),
        millis: None,
    };
    let skip = if span_dim > cfg.span_limit {
        Some(format!(
            "span dimension {span_dim} exceeds limit {}",
            cfg.span_limit
        ))
    } else if Modulus::new(p, fine).is_err() {
        Some(format!("{p}^{fine} exceeds the residue word size"))
    } else {
        None
    };
    if let Some(reason) = skip {
        record.verdict = Verdict::skipped(reason);
        return CellOutcome {
            record,
            certificates: Vec::new(),
        };
    }

    let mut run = CellRun {
        p,
        e,
        checks: Vec::new(),
        certificates: Vec::new(),
    };
    let ring = ExampleRing::new(p, e, m).expect("parameters validated");
    record.howell_rows = Some(ring.module().basis().len());
    let n = ring.nilpotence_exponent();

    run.expect_member("nilpotence", None, m, &ring.verify_nilpotence());
    if fine != m {
        let ring_fine = ExampleRing::new(p, e, fine).expect("parameters validated");
        run.expect_member("nilpotence", None, fine, &ring_fine.verify_nilpotence());
    }

    let sharp = ring.is_member(&x_power(n - 1));
    match sharp.witness() {
        Some(w) => run.push("sharpness", m, Verdict::Pass, Some(w.to_string())),
        None => run.push(
            "sharpness",
            m,
            Verdict::fail("x^(N-1) lies in the ideal"),
            None,
        ),
    }

    let stability = match ring.check_theta_stability() {
        Ok(s) if s.passed() => Verdict::Pass,
        Ok(s) => Verdict::fail(stability_failure(&s)),
        Err(err) => Verdict::fail(err.to_string()),
    };
    run.push("stability", m, stability, None);

    for k in 0..=e {
        let res = ring.verify_prop2(k).expect("k in range");
        run.expect_member("prop2", Some(k), m, &res);
    }
    for k in 0..e {
        let res = ring.verify_prop3(k).expect("k in range");
        run.expect_member("prop3", Some(k), m, &res);
    }
    for (k, res) in ring.verify_torsion_powers() {
        run.expect_member("torsion", Some(k), m, &res);
    }

    if run.checks.iter().any(|c| c.verdict.is_fail()) {
        record.verdict = Verdict::fail("see checks");
    }
    record.checks = run.checks;
    if cfg.timings {
        record.millis = Some(start.elapsed().as_millis() as u64);
    }
    CellOutcome {
        record,
        certificates: run.certificates,
    }
}

fn stability_failure(s: &thetaring::quotient::StabilityReport) -> String {
    let mut parts = Vec::new();
    let bad = |v: &[Membership]| -> Vec<usize> {
        v.iter()
            .enumerate()
            .filter(|(_, m)| !m.certificate().is_some_and(verify_certificate))
            .map(|(i, _)| i)
            .collect()
    };
    let theta_bad = bad(&s.theta_images);
    if !theta_bad.is_empty() {
        parts.push(format!("theta(g_i) not in J for i in {theta_bad:?}"));
    }
    let psi_bad = bad(&s.psi_images);
    if !psi_bad.is_empty() {
        parts.push(format!("psi(g_i) not in J for i in {psi_bad:?}"));
    }
    if !s.monic_identity {
        parts.push("theta(F_e) != y^(p^e)".into());
    }
    if !s.y_power_identity {
        parts.push("theta(y^(p^e)) != 0".into());
    }
    for (n, ok) in s.scaled_identities.iter().enumerate() {
        if !ok {
            parts.push(format!("scaled identity fails at n = {n}"));
        }
    }
    parts.join("; ")
}

/// For `trials` seeded pairs (f, j) with j in J, compares membership of f
/// and f + j. Returns the number of agreeing pairs; every j must itself be
/// a certified member for a pair to count.
pub fn coset_agreements(ring: &ExampleRing, trials: usize, seed: u64) -> usize {
    let p = ring.ideal().prime();
    let sampler = PolySampler::new(LocalRing::new(p).expect("prime"));
    let mut rng = rng_for(seed, (p << 8) | u64::from(ring.ideal().e()));
    let certified = |m: &Membership| m.certificate().map(verify_certificate);
    (0..trials)
        .filter(|_| {
            let f = sampler.sample(&mut rng);
            let j = sampler.sample_combination(ring.ideal().generators(), &mut rng);
            if certified(&ring.is_member(&j)) != Some(true) {
                return false;
            }
            let a = ring.is_member(&f);
            let b = ring.is_member(&(&f + &j));
            a.is_member() == b.is_member()
                && certified(&a).unwrap_or(true)
                && certified(&b).unwrap_or(true)
        })
        .count()
}

/// The bound E for `n`, as printed by `thetaring bound`.
pub fn bound(n: i64) -> thetaring::Result<u64> {
    nilpotence_bound(n)
}
