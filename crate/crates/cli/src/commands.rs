use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use seifert_wrt::corpus::{fixed_corpus, random_corpus};
use seifert_wrt::cyclotomic::{CyclotomicNumber, Precision};
use seifert_wrt::numtheory::{dedekind_sum, good_expansion, sign};
use seifert_wrt::seifert::{b_counts_closed_form, linking_matrix, plumbing, top_invariants, SeifertData};
use seifert_wrt::statesum::{xi_statesum, xi_statesum_brute};
use seifert_wrt::wrt::{
    evaluate, integrality_applies, leg_data, quarter, tau_prime, tau_rozansky_numeric, tref_manifold,
    tref_xi_closed_at, xi_theorem1_at, xi_theorem1_with_legs,
};
use seifert_wrt::Error;

use crate::record::OutputRecord;
use crate::{CliError, Format, LevelArgs, ScanArgs, SelftestArgs, TauArgs, TrefArgs};

type CliResult<T> = Result<T, CliError>;

const ROZANSKY_TOLERANCE: f64 = 1e-9;

fn io(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(format!("output: {e}"))
}

/// Odd levels in `A:B`, inclusive.
pub fn parse_range(s: &str) -> CliResult<Vec<usize>> {
    let bad = || CliError::Invalid(format!("expected a range A:B of levels, got `{s}`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a < 3 {
        return Err(CliError::Invalid(format!("range must start at 3 or above, got {a}")));
    }
    let levels: Vec<usize> = (a..=b).filter(|r| r % 2 == 1).collect();
    if levels.is_empty() {
        return Err(CliError::Invalid(format!("range `{s}` contains no odd level")));
    }
    Ok(levels)
}

fn levels(args: &LevelArgs) -> CliResult<Vec<usize>> {
    match (args.r, &args.r_range) {
        (Some(r), None) => {
            if r < 3 || r % 2 == 0 {
                return Err(Error::InvalidLevel(r).into());
            }
            Ok(vec![r])
        }
        (None, Some(s)) => parse_range(s),
        _ => Err(CliError::Invalid("one of --r or --r-range is required".into())),
    }
}

fn parse_manifolds(specs: &[String]) -> CliResult<Vec<SeifertData>> {
    specs
        .iter()
        .map(|s| s.parse::<SeifertData>().map_err(|e| CliError::Invalid(format!("{s}: {e}"))))
        .collect()
}

fn pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| CliError::Invalid(e.to_string()))
}

fn unit(t: i64, r: usize) -> CliResult<i64> {
    let t = t.rem_euclid(r as i64);
    if num_integer::gcd(t, r as i64) != 1 {
        return Err(CliError::Invalid(format!("t = {t} is not a unit modulo r = {r}")));
    }
    Ok(t)
}

struct TauOutcome {
    record: OutputRecord,
    notes: Vec<String>,
}

fn tau_one(args: &TauArgs, m: &SeifertData, r: usize) -> CliResult<TauOutcome> {
    let t = match args.t {
        Some(t) => unit(t, r)?,
        None => quarter(r),
    };
    let res = evaluate(m, r, t, Precision(args.precision))?;
    let mut record = OutputRecord::new(m.to_string(), &res);
    let mut notes = Vec::new();
    if args.oracle || args.brute {
        let oracle = if args.brute { xi_statesum_brute(m, r, t, args.budget)? } else { xi_statesum(m, r, t)? };
        record.checks.insert("oracle".into(), oracle == res.xi_exact);
    }
    if args.rozansky {
        if t != quarter(r) {
            notes.push(format!("{m} r={r}: rozansky skipped, it applies only at t = 4^-1"));
        } else {
            match tau_rozansky_numeric(m, r) {
                Ok(v) => {
                    let tau = res.tau_value();
                    let ok = (v - tau).norm() <= ROZANSKY_TOLERANCE * tau.norm().max(1.0);
                    record.checks.insert("rozansky".into(), ok);
                }
                Err(Error::HypothesisViolated(why)) => notes.push(format!("{m} r={r}: rozansky skipped, {why}")),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(TauOutcome { record, notes })
}

pub fn write_records(records: &[OutputRecord], format: Format, out: &mut dyn Write) -> CliResult<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records).map_err(io)?;
            writeln!(out).map_err(io)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for rec in records {
                w.serialize(rec.to_csv_row()).map_err(io)?;
            }
            w.flush().map_err(io)?;
        }
        Format::Text => {
            for rec in records {
                writeln!(out, "{}", rec.to_text()).map_err(io)?;
            }
        }
    }
    Ok(())
}

pub fn tau(args: &TauArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let manifolds = parse_manifolds(&args.manifolds)?;
    let levels = levels(&args.levels)?;
    let jobs: Vec<(&SeifertData, usize)> =
        manifolds.iter().flat_map(|m| levels.iter().map(move |&r| (m, r))).collect();
    let results: Vec<CliResult<TauOutcome>> =
        pool(args.jobs)?.install(|| jobs.par_iter().map(|&(m, r)| tau_one(args, m, r)).collect());
    let mut records = Vec::with_capacity(results.len());
    for res in results {
        let o = res?;
        for n in o.notes {
            writeln!(err, "note: {n}").map_err(io)?;
        }
        records.push(o.record);
    }
    write_records(&records, args.format, out)?;
    let failed: Vec<String> = records
        .iter()
        .filter(|r| !r.all_checks_pass())
        .map(|r| format!("{} r={}", r.manifold, r.r))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(failed.join(", ")))
    }
}

#[derive(Debug, Serialize)]
struct TrefRow {
    r: usize,
    xi_coeffs: Vec<String>,
    closed_form: Option<Vec<String>>,
    agree: Option<bool>,
    is_zero: bool,
    tau_re: f64,
    tau_im: f64,
}

fn coeff_strings(x: &CyclotomicNumber) -> Vec<String> {
    x.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn tref_table(args: &TrefArgs, out: &mut dyn Write) -> CliResult<()> {
    if args.r_max < 5 {
        return Err(CliError::Invalid(format!("r_max must be at least 5, got {}", args.r_max)));
    }
    let m = tref_manifold();
    let mut rows = Vec::new();
    for r in (5..=args.r_max).step_by(2) {
        let res = tau_prime(&m, r)?;
        let closed = if r % 3 == 0 { None } else { Some(tref_xi_closed_at(r, quarter(r))?) };
        rows.push(TrefRow {
            r,
            xi_coeffs: coeff_strings(&res.xi_exact),
            agree: closed.as_ref().map(|c| *c == res.xi_exact),
            closed_form: closed.as_ref().map(coeff_strings),
            is_zero: res.xi_exact.is_zero(),
            tau_re: res.tau.re + 0.0,
            tau_im: res.tau.im + 0.0,
        });
    }
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows).map_err(io)?;
            writeln!(out).map_err(io)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["r", "xi_zero", "closed_form", "tau_re", "tau_im"]).map_err(io)?;
            for row in &rows {
                w.write_record([
                    row.r.to_string(),
                    row.is_zero.to_string(),
                    verdict(row.agree).to_string(),
                    row.tau_re.to_string(),
                    row.tau_im.to_string(),
                ])
                .map_err(io)?;
            }
            w.flush().map_err(io)?;
        }
        Format::Text => {
            writeln!(out, "{:>4} {:>6} {:>7} {:>12}  tau'", "r", "r%3", "xi=0", "closed-form").map_err(io)?;
            for row in &rows {
                writeln!(
                    out,
                    "{:>4} {:>6} {:>7} {:>12}  {:.12}{:+.12}i",
                    row.r,
                    row.r % 3,
                    row.is_zero,
                    verdict(row.agree),
                    row.tau_re,
                    row.tau_im
                )
                .map_err(io)?;
            }
        }
    }
    if rows.iter().any(|row| row.agree == Some(false)) {
        return Err(CliError::CheckFailed("general formula differs from the closed form".into()));
    }
    Ok(())
}

fn verdict(agree: Option<bool>) -> &'static str {
    match agree {
        None => "n/a",
        Some(true) => "agree",
        Some(false) => "DIFFER",
    }
}

#[derive(Debug, Serialize)]
struct ScanRow {
    manifold: String,
    r: usize,
    applies: bool,
    nu: u32,
    xi_integral: bool,
    theta_integral: bool,
}

impl ScanRow {
    fn failed(&self) -> bool {
        self.applies && !self.theta_integral
    }
}

pub fn integrality_scan(args: &ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let corpus = if args.manifolds.is_empty() { fixed_corpus() } else { parse_manifolds(&args.manifolds)? };
    let levels = parse_range(&args.r_range)?;
    let jobs: Vec<(&SeifertData, usize)> = corpus.iter().flat_map(|m| levels.iter().map(move |&r| (m, r))).collect();
    let rows: Vec<CliResult<ScanRow>> = pool(args.jobs)?.install(|| {
        jobs.par_iter()
            .map(|&(m, r)| {
                let res = tau_prime(m, r)?;
                Ok(ScanRow {
                    manifold: m.to_string(),
                    r,
                    applies: integrality_applies(m, r),
                    nu: res.nu,
                    xi_integral: res.xi_is_integral,
                    theta_integral: res.theta_is_integral,
                })
            })
            .collect()
    });
    let rows = rows.into_iter().collect::<CliResult<Vec<_>>>()?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows).map_err(io)?;
            writeln!(out).map_err(io)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in &rows {
                w.serialize(row).map_err(io)?;
            }
            w.flush().map_err(io)?;
        }
        Format::Text => {
            for row in &rows {
                let status = match (row.applies, row.failed()) {
                    (false, _) => "info",
                    (true, false) => "ok",
                    (true, true) => "FAIL",
                };
                writeln!(
                    out,
                    "{:<28} r={:<3} hypothesis={:<5} nu={} xi_integral={:<5} theta_integral={:<5} {status}",
                    row.manifold, row.r, row.applies, row.nu, row.xi_integral, row.theta_integral
                )
                .map_err(io)?;
            }
        }
    }
    let applicable = rows.iter().filter(|r| r.applies).count();
    let failed: Vec<String> = rows.iter().filter(|r| r.failed()).map(|r| format!("{} r={}", r.manifold, r.r)).collect();
    writeln!(err, "{} rows, {applicable} under the hypothesis, {} failing", rows.len(), failed.len()).map_err(io)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(failed.join(", ")))
    }
}

const SELFTEST_LEVELS: [usize; 5] = [3, 5, 7, 9, 11];

/// A failing self-test case, printed so the run can be reproduced.
#[derive(Debug, Serialize)]
pub struct Counterexample {
    pub seed: u64,
    pub manifold: String,
    pub r: usize,
    pub check: String,
    pub detail: String,
}

/// `(check, passed, detail)` for one `(manifold, r)`.
type CaseChecks = Vec<(&'static str, bool, String)>;

fn selftest_case(m: &SeifertData, r: usize, fault: bool) -> seifert_wrt::Result<CaseChecks> {
    let mut out = Vec::new();
    let q = quarter(r);
    let mut formula = xi_theorem1_at(m, r, q)?;
    if fault {
        formula = -formula;
    }
    let oracle = xi_statesum(m, r, q)?;
    out.push(("oracle", formula == oracle, format!("formula {formula} vs state sum {oracle}")));

    let base = xi_theorem1_at(m, r, 1)?;
    for t in (2..r as i64).filter(|&t| num_integer::gcd(t, r as i64) == 1) {
        let ok = base.galois(t)? == xi_theorem1_at(m, r, t)?;
        out.push(("galois", ok, format!("t = {t}")));
    }

    let legs = m.legs().iter().map(|l| leg_data(&l.p, &l.q, r)).collect::<seifert_wrt::Result<Vec<_>>>()?;
    let plain = xi_theorem1_with_legs(m, &legs, r, q)?;
    for shift in [-2, -1, 1, 2] {
        let shifted: Vec<_> = legs.iter().map(|d| d.with_shifted_bezout(shift)).collect();
        let ok = xi_theorem1_with_legs(m, &shifted, r, q)? == plain;
        out.push(("choice", ok, format!("Bezout shift {shift}")));
    }

    let inv = top_invariants(m);
    let lm = linking_matrix(&plumbing(m)?);
    let closed = b_counts_closed_form(m, &inv);
    out.push((
        "signature",
        closed == (lm.b_plus, lm.b_minus) && lm.b_zero == inv.nu as usize,
        format!("exact ({}, {}, {}) closed {closed:?} nu {}", lm.b_plus, lm.b_minus, lm.b_zero, inv.nu),
    ));

    for l in m.legs() {
        let e = good_expansion(&l.p, &l.q)?;
        let star = e.qstar_pstar();
        let lhs = dedekind_sum(&l.q, &l.p)? * BigRational::from_integer(BigInt::from(-12))
            + BigRational::new(&l.q + &star.a_star, l.p.clone());
        let rhs = BigInt::from(3 * (e.len() as i64 - 1 + sign(&l.p) as i64)) - e.sum_m();
        out.push(("framing", lhs == rhs.into() && star.verifies(&l.q, &l.p), format!("leg {}/{}", l.p, l.q)));
        let a = l.p.abs();
        if a > BigInt::one() && l.q > BigInt::one() {
            let ab = &a * &l.q;
            let lhs = dedekind_sum(&a, &l.q)? + dedekind_sum(&l.q, &a)?;
            let rhs = BigRational::new(&a * &a + &l.q * &l.q + 1 - 3 * &ab, 12 * ab);
            out.push(("reciprocity", lhs == rhs, format!("({a}, {})", l.q)));
        }
    }
    Ok(out)
}

pub fn selftest(args: &SelftestArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let corpus = random_corpus(args.seed, args.size);
    let jobs: Vec<(usize, usize)> =
        (0..corpus.len()).flat_map(|i| SELFTEST_LEVELS.iter().map(move |&r| (i, r))).collect();
    let results: Vec<seifert_wrt::Result<CaseChecks>> = pool(args.jobs)?.install(|| {
        jobs.par_iter().map(|&(i, r)| selftest_case(&corpus[i], r, args.inject_fault && i == 0)).collect()
    });
    let mut tally: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
    let mut first_failure = None;
    for (&(i, r), res) in jobs.iter().zip(results) {
        for (name, ok, detail) in res? {
            let e = tally.entry(name).or_default();
            e.0 += 1;
            if !ok {
                e.1 += 1;
                first_failure.get_or_insert_with(|| Counterexample {
                    seed: args.seed,
                    manifold: corpus[i].to_string(),
                    r,
                    check: name.to_string(),
                    detail,
                });
            }
        }
    }
    writeln!(out, "selftest seed={} size={} levels={:?}", args.seed, args.size, SELFTEST_LEVELS).map_err(io)?;
    for (name, (n, bad)) in &tally {
        writeln!(out, "  {name:<12} {n:>6} checks {bad:>4} failures").map_err(io)?;
    }
    match first_failure {
        None => {
            writeln!(out, "all checks passed").map_err(io)?;
            Ok(())
        }
        Some(c) => {
            writeln!(err, "counterexample:").map_err(io)?;
            serde_json::to_writer(&mut *out, &c).map_err(io)?;
            writeln!(out).map_err(io)?;
            Err(CliError::CheckFailed(format!("{} at {} r={}", c.check, c.manifold, c.r)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_are_odd_only() {
        assert_eq!(parse_range("3:9").unwrap(), vec![3, 5, 7, 9]);
        assert_eq!(parse_range("4:8").unwrap(), vec![5, 7]);
        assert!(parse_range("1:9").is_err());
        assert!(parse_range("9:3").is_err());
        assert!(parse_range("nine").is_err());
    }

    #[test]
    fn units_are_reduced() {
        assert_eq!(unit(-1, 7).unwrap(), 6);
        assert!(unit(3, 9).is_err());
    }

    #[test]
    fn selftest_case_passes_and_detects_faults() {
        let m: SeifertData = "X(2/1,-3/2,5/1)".parse().unwrap();
        assert!(selftest_case(&m, 7, false).unwrap().iter().all(|c| c.1));
        assert!(selftest_case(&m, 7, true).unwrap().iter().any(|c| !c.1));
    }

    #[test]
    fn tref_zero_pattern() {
        let m = tref_manifold();
        assert!(tau_prime(&m, 13).unwrap().xi_exact.is_zero());
        assert!(!tau_prime(&m, 11).unwrap().xi_exact.is_zero());
    }
}
