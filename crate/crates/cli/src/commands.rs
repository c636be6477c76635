use tensorcodes::expansion::{
    certify_upper_bound, counterexample_field, counterexample_word, line_disjoint_support, rho_exact,
    rho_upper_sampled, verify_certificate, ExpansionCertificate,
};
use tensorcodes::rational::{format_big, format_frac, frac, parse_frac, to_big, BigFrac};
use tensorcodes::report::{check_records, Record};
use tensorcodes::testability::{
    check_composition, check_lemma_robust_agreement, check_proposition, check_ps_corollary, check_robust_tm1,
    closed_form_constants, rho_a_exact, rho_a_sampled_upper, rho_r_exact, rho_r_sampled_upper, CheckReport,
    CompositionMode, FlatTest, Inequality, Mode as ReportMode, TestReport,
};
use tensorcodes::{CodeFamily, SumMethod};

use crate::config::{Config, Instance, Mode};
use crate::{Command, Output, UsageError};

const DEFAULT_SAMPLES: usize = 1000;

pub fn default_mode(cmd: Command) -> Mode {
    match cmd {
        Command::RhoSampled | Command::PsCorollary => Mode::Sampled,
        _ => Mode::Exact,
    }
}

pub fn dispatch(cmd: Command, cfg: &Config) -> Result<Output, UsageError> {
    match cmd {
        Command::CertifyCounterexample => certify_counterexample(cfg),
        Command::RhoExact => rho_exact_cmd(cfg),
        Command::RhoSampled => rho_sampled(cfg),
        Command::Robustness => robustness(cfg),
        Command::Agreement => agreement(cfg),
        Command::CheckLemmas => check_lemmas(cfg),
        Command::PsCorollary => ps_corollary(cfg),
        Command::Constants => constants(cfg),
        Command::Show => show(cfg),
        Command::VerifyCertificate => verify(cfg),
    }
}

fn push_check(out: &mut Output, report: CheckReport) {
    for i in &report.inequalities {
        out.text.push(format!("[{}] {i}", report.check));
    }
    out.violation |= !report.holds();
    out.records.extend(check_records(&report));
}

fn int(n: usize) -> BigFrac {
    to_big(&frac(n as i64, 1))
}

fn certify_counterexample(cfg: &Config) -> Result<Output, UsageError> {
    let t = cfg.t();
    let field = counterexample_field(t)?;
    let n = field.order();
    let family = CodeFamily::reed_solomon(&field, 1, 3, 3)?;
    let word = counterexample_word(&field, n / 3)?;
    let instance = format!("rs[{n},{}] m=3 t={t}", n / 3);
    let mut check = CheckReport::new("counterexample", &instance, ReportMode::Certificate);
    let member = family.sum_contains(&word, SumMethod::CheckPoly)?;
    check.inequalities.push(Inequality::eq("in the sum code by check polynomials", int(member as usize), int(1)));
    check.inequalities.push(Inequality::eq("support size = n^2", int(word.weight()), int(n * n)));
    let disjoint = line_disjoint_support(&word);
    check.inequalities.push(Inequality::eq("support meets every line at most once", int(disjoint as usize), int(1)));
    let mut out = Output::default();
    if member {
        let cert = certify_upper_bound(&word, &family)?.with_instance(&instance);
        check.inequalities.push(Inequality::eq(
            "rho upper bound = 1/n",
            to_big(&cert.bound),
            to_big(&frac(1, n as i64)),
        ));
        let verification = verify_certificate(&cert, &family)?;
        check.inequalities.push(Inequality::eq(
            "independent certificate verification failures",
            int(verification.failures.len()),
            int(0),
        ));
        out.records.push(Record::from(&TestReport::upper_bound("rho", &instance, ReportMode::Certificate, cert.bound)));
        out.text.push(format!("rho({instance}) <= {}", format_frac(&cert.bound)));
        if let Some(path) = &cfg.opts.cert {
            out.files.push((path.clone(), cert.to_text()));
        }
    }
    push_check(&mut out, check);
    Ok(out)
}

fn rho_exact_cmd(cfg: &Config) -> Result<Output, UsageError> {
    let (family, instance) = cfg.family()?;
    let r = rho_exact(&family)?;
    let mut out = Output::default();
    out.text.push(format!("rho({instance}) = {} over {} sum-code words", format_frac(&r.value), r.words));
    out.records.push(Record::from(&TestReport::exact("rho", &instance, r.value)));
    Ok(out)
}

fn rho_sampled(cfg: &Config) -> Result<Output, UsageError> {
    if cfg.mode != Mode::Sampled {
        return Err(UsageError("rho-sampled runs in sampled mode only".into()));
    }
    let (family, instance) = cfg.family()?;
    let samples = cfg.samples(DEFAULT_SAMPLES);
    let r = rho_upper_sampled(&family, samples, cfg.seed())?;
    let mut out = Output::default();
    out.text.push(format!(
        "rho({instance}) <= {} (certified, {:?}); best heuristic ratio {}; pool {}",
        format_frac(&r.certified_upper),
        r.certified_by,
        format_frac(&r.heuristic),
        r.pool_size
    ));
    out.records.push(Record::from(
        &TestReport::upper_bound("rho", &instance, ReportMode::Sampled, r.certified_upper)
            .with_sampling(samples, cfg.seed()),
    ));
    Ok(out)
}

fn robustness(cfg: &Config) -> Result<Output, UsageError> {
    let (family, instance) = cfg.family()?;
    let k = cfg.k();
    let test = FlatTest::new(&family.shape(), k)?;
    let name = format!("rho_r(T_{}^{k})", family.dims());
    let mut out = Output::default();
    match cfg.mode {
        Mode::Exact => {
            let r = rho_r_exact(&test, &family)?;
            out.text.push(format!("{name} on {instance} = {} over {} words", format_frac(&r.value), r.words));
            out.records.push(Record::from(&TestReport::exact("rho_r", &instance, r.value)));
        }
        Mode::Sampled => {
            let samples = cfg.samples(DEFAULT_SAMPLES);
            let r = rho_r_sampled_upper(&test, &family, samples, cfg.seed())?;
            out.text.push(format!(
                "{name} on {instance} <= {}; smallest pool ratio >= {}; pool {} ({} codewords skipped)",
                format_frac(&r.upper),
                format_frac(&r.pool_min_lower),
                r.pool_size,
                r.codewords_skipped
            ));
            out.records.push(Record::from(
                &TestReport::upper_bound("rho_r", &instance, ReportMode::Sampled, r.upper)
                    .with_sampling(samples, cfg.seed()),
            ));
            if matches!(cfg.instance()?, Instance::Rs { .. }) && family.dims() == 2 && k == 1 {
                let mut check = CheckReport::new("rs-line-test-floor", &instance, ReportMode::Sampled);
                check.seed = Some(cfg.seed());
                check.samples = Some(samples);
                check.inequalities.push(Inequality::ge(
                    "smallest pool ratio >= 1/72",
                    to_big(&r.pool_min_lower),
                    to_big(&frac(1, 72)),
                ));
                push_check(&mut out, check);
            }
        }
    }
    Ok(out)
}

fn agreement(cfg: &Config) -> Result<Output, UsageError> {
    let (family, instance) = cfg.family()?;
    let mut out = Output::default();
    match cfg.mode {
        Mode::Exact => {
            let r = rho_a_exact(&family)?;
            out.text.push(format!("rho_a({instance}) = {} over {} tuples", format_frac(&r.value), r.tuples));
            out.records.push(Record::from(&TestReport::exact("rho_a", &instance, r.value)));
        }
        Mode::Sampled => {
            let samples = cfg.samples(DEFAULT_SAMPLES);
            let r = rho_a_sampled_upper(&family, samples, cfg.seed())?;
            let upper = r.upper.ok_or_else(|| UsageError("no pool tuple gave a certified bound".into()))?;
            out.text.push(format!(
                "rho_a({instance}) <= {}; heuristic {}; pool {}",
                format_frac(&upper),
                format_frac(&r.heuristic),
                r.pool_size
            ));
            out.records.push(Record::from(
                &TestReport::upper_bound("rho_a", &instance, ReportMode::Sampled, upper)
                    .with_sampling(samples, cfg.seed()),
            ));
        }
    }
    Ok(out)
}

fn check_lemmas(cfg: &Config) -> Result<Output, UsageError> {
    let (family, instance) = cfg.family()?;
    let (code, _) = cfg.code()?;
    let m = family.dims();
    let mut out = Output::default();
    match cfg.mode {
        Mode::Exact => {
            push_check(&mut out, check_lemma_robust_agreement(&family, &instance)?);
            for k2 in 2..m {
                for k1 in 1..k2 {
                    push_check(&mut out, check_composition(&family, k1, k2, CompositionMode::Exact, &instance)?);
                }
            }
            if m >= 3 {
                push_check(&mut out, check_robust_tm1(&code, m, &instance)?);
                push_check(&mut out, check_proposition(&code, m, &instance)?);
            }
        }
        Mode::Sampled => {
            if m < 3 {
                return Err(UsageError("sampled lemma checks need m >= 3".into()));
            }
            let samples = cfg.samples(DEFAULT_SAMPLES);
            for k2 in 2..m {
                for k1 in 1..k2 {
                    let mode = CompositionMode::Sampled { samples, seed: cfg.seed() };
                    push_check(&mut out, check_composition(&family, k1, k2, mode, &instance)?);
                }
            }
        }
    }
    Ok(out)
}

fn ps_corollary(cfg: &Config) -> Result<Output, UsageError> {
    if cfg.mode != Mode::Sampled {
        return Err(UsageError("ps-corollary runs in sampled mode only".into()));
    }
    let (code, name) = cfg.code()?;
    let trials = cfg.samples(DEFAULT_SAMPLES);
    let r = check_ps_corollary(&code, trials, cfg.seed(), None)?;
    let mut out = Output::default();
    out.text.push(format!(
        "{name}: {} trials, {} nontrivial, {} violations, threshold {}",
        r.trials.len(),
        r.nontrivial(),
        r.violations(),
        format_frac(&r.threshold)
    ));
    push_check(&mut out, r.to_check(&name));
    Ok(out)
}

fn constants(cfg: &Config) -> Result<Output, UsageError> {
    let m = cfg.opts.m.ok_or_else(|| UsageError("constants needs --m".into()))?;
    let c = closed_form_constants::<BigFrac>(m)?;
    let instance = format!("m={m}");
    let mut out = Output::default();
    let mut push = |name: &str, v: &BigFrac| {
        out.text.push(format!("{name} = {}", format_big(v)));
        out.records.push(Record {
            kind: "constant".into(),
            name: name.into(),
            instance: instance.clone(),
            mode: "exact".into(),
            lower: Some(format_big(v)),
            upper: Some(format_big(v)),
            ..Record::default()
        });
    };
    push("M", &int(c.big_m));
    push("alpha_r", &c.alpha_r);
    push("alpha_a", &c.alpha_a);
    if let Some(rho) = &cfg.opts.rho {
        let rho = parse_frac(rho)?;
        push(&format!("alpha({})", format_frac(&rho)), &c.alpha(to_big(&rho)));
    }
    Ok(out)
}

fn show(cfg: &Config) -> Result<Output, UsageError> {
    let (family, instance) = cfg.family()?;
    let code = family.code(0);
    let d = family.min_distances().map_or("unknown".to_string(), |ds| ds[0].to_string());
    let mut out = Output::default();
    out.text.push(format!("instance {instance}"));
    out.text.push(format!("field GF(2^{})", family.field().degree()));
    out.text.push(format!("code length {} dimension {} distance {d}", code.length(), code.dimension()));
    out.text.push(format!("shape {:?} ({} cells)", family.shape(), family.cells()));
    let dim: usize = family.codes().iter().map(|c| c.dimension()).product();
    out.text.push(format!("tensor code dimension {dim}"));
    out.text.push(format!("sum code membership by {:?}", family.default_sum_method()));
    Ok(out)
}

fn verify(cfg: &Config) -> Result<Output, UsageError> {
    let path = cfg.opts.cert.as_ref().ok_or_else(|| UsageError("verify-certificate needs --cert".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let cert = ExpansionCertificate::parse(&text)?;
    let family = CodeFamily::reed_solomon(&cert.field, 1, 3, cert.witness.dims())?;
    let v = verify_certificate(&cert, &family)?;
    let mut check = CheckReport::new("certificate", &cert.instance, ReportMode::Certificate);
    check.inequalities.push(Inequality::eq("verification failures", int(v.failures.len()), int(0)));
    let mut out = Output::default();
    for f in &v.failures {
        out.text.push(format!("failure: {f}"));
        check.note("failure", f);
    }
    check.note("bound", format_frac(&cert.bound));
    push_check(&mut out, check);
    Ok(out)
}
