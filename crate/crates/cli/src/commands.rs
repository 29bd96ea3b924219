use std::fs;
use std::sync::Arc;

use bmy_core::algebra::LimitAtInfinity;
use bmy_core::cover::{
    check_admissible, expected_chi_leading, expected_k_tilde_leading, first_exceeding_nine,
    limit_ratio, search_counterexamples, Construction, SearchRow,
};
use bmy_core::plane::{incidence_stats_with_cap, IncidenceStats};
use bmy_core::primes::primes_minus_one_mod;
use bmy_core::{
    BigInt, BigRational, BuildingData, CoverError, FSet, Group, IntPolynomial, InvariantReport,
    SectionCounts, SymbolicReport,
};
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::config::{Choices, Command};
use crate::encode;
use crate::error::{CliError, ExitStatus};

/// Row-shaped part of a report, rendered as columns in table and CSV mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rows {
    /// Key of the row array in the JSON document.
    pub key: &'static str,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Value,
    pub rows: Option<Rows>,
    pub status: ExitStatus,
    pub warnings: Vec<String>,
}

impl Report {
    fn new(value: Value, status: ExitStatus) -> Self {
        Report {
            value,
            rows: None,
            status,
            warnings: Vec::new(),
        }
    }
}

/// Number of admissible primes `verify` checks when no `--p` is given.
pub const VERIFY_DEFAULT_PRIMES: usize = 3;

pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Invariants { q, n, p, choices } => invariants(*q, *n, *p, choices),
        Command::Symbolic { q, n, choices } => symbolic(*q, *n, choices),
        Command::Limit { q, n, choices } => limit(*q, *n, choices),
        Command::Search {
            q,
            n,
            p_min,
            p_max,
            choices,
        } => search(*q, *n, *p_min, *p_max, choices),
        Command::Plane {
            p,
            verify_incidence,
            verify_cap,
        } => plane(*p, *verify_incidence, *verify_cap),
        Command::Verify {
            q,
            n,
            p,
            choices,
            verify_cap,
        } => verify(*q, *n, *p, choices, *verify_cap),
    }
}

struct Setup {
    group: Group,
    r: SectionCounts,
    f: Option<FSet>,
    parameters: Map<String, Value>,
}

/// Validates the group, F-set file and section-count overrides.
fn setup(q: u64, n: u64, choices: &Choices) -> Result<Setup, CliError> {
    let group = Group::new(q, n)?;
    let f = match &choices.f_set {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::invalid("Io", format!("{}: {e}", path.display())))?;
            Some(FSet::parse(&group, &text)?)
        }
        None => None,
    };

    let carriers = f
        .clone()
        .unwrap_or_else(|| FSet::canonical(&group))
        .line_carriers();
    let mut r = SectionCounts::uniform(choices.r_default);
    let mut overrides = Map::new();
    for (coords, count) in &choices.r_overrides {
        let sigma = group.element(coords)?;
        if !carriers.contains(&sigma) {
            return Err(CliError::invalid(
                "BadOverride",
                format!("section count given for {sigma}, which is not in F minus {{0, e1}}"),
            ));
        }
        overrides.insert(sigma.to_string(), encode::uint(*count));
        r.set(sigma, *count);
    }

    let mut parameters = Map::new();
    parameters.insert("q".into(), encode::uint(q));
    parameters.insert("n".into(), encode::uint(n));
    parameters.insert("r_default".into(), encode::uint(choices.r_default));
    parameters.insert("r_overrides".into(), Value::Object(overrides));
    parameters.insert(
        "f_set".into(),
        match &choices.f_set {
            Some(path) => Value::String(path.display().to_string()),
            None => Value::String("canonical".into()),
        },
    );
    Ok(Setup {
        group,
        r,
        f,
        parameters,
    })
}

fn admissible(group: &Group, p: u64) -> Result<(), CliError> {
    check_admissible(group.q(), p).map_err(Into::into)
}

fn invariants(q: u64, n: u64, p: u64, choices: &Choices) -> Result<Report, CliError> {
    let mut s = setup(q, n, choices)?;
    admissible(&s.group, p)?;
    let data = BuildingData::assemble(&s.group, p, s.r, s.f)?;
    let report = InvariantReport::compute(&data, p)?;
    s.parameters.insert("p".into(), encode::uint(p));

    let c = &report.certificates;
    let b = &report.bigness;
    let value = json!({
        "command": "invariants",
        "parameters": s.parameters,
        "k_s_squared": encode::int(&report.k_s_squared),
        "sum_divisors": encode::divisor_class(&report.sum_divisors),
        "k_tilde_squared": encode::int(&report.k_tilde_squared),
        "chi_tilde": encode::int(&report.chi_tilde),
        "ratio": encode::rational(&report.ratio),
        "exceeds_nine": report.exceeds_nine,
        "bigness": {
            "margin": encode::int(&b.margin),
            "pass": b.pass,
            "decomposition_holds": b.decomposition_holds,
            "reduced_set_size": encode::uint(b.reduced_set_size),
            "counting_bound": encode::int(&b.counting_bound),
            "stated_bound": encode::int(&b.stated_bound),
        },
        "certificates": {
            "cover_condition": c.cover_condition,
            "independence": c.independence,
            "adjunction_parity": c.adjunction_parity,
            "bigness": c.bigness,
            "all": c.all(),
        },
    });
    let status = if c.all() {
        ExitStatus::Success
    } else {
        ExitStatus::CertificateFailed
    };
    Ok(Report::new(value, status))
}

fn symbolic(q: u64, n: u64, choices: &Choices) -> Result<Report, CliError> {
    let s = setup(q, n, choices)?;
    let data = BuildingData::assemble_symbolic(&s.group, s.r, s.f)?;
    let report = SymbolicReport::compute(&data)?;
    let e = &report.estimates;
    let value = json!({
        "command": "symbolic",
        "parameters": s.parameters,
        "valid_at": "admissible p: prime, p = -1 (mod q), p != q",
        "k_tilde_squared": encode::int_poly(&report.k_tilde_squared),
        "chi_tilde": encode::rat_poly(&report.chi_tilde),
        "ratio": encode::rational_function(&report.ratio),
        "limit": encode::limit(&report.limit),
        "estimates": {
            "k_s_squared": encode::int_poly(&e.k_s_squared),
            "k_s_dot_sum_divisors": encode::int_poly(&e.k_s_dot_sum),
            "sum_divisors_squared": encode::int_poly(&e.sum_squared),
            "sum_self_products": encode::rat_poly(&e.self_product_sum),
            "expected_self_product_leading": encode::rational_exact(&e.expected_self_product_leading),
        },
    });
    Ok(Report::new(value, ExitStatus::Success))
}

fn limit(q: u64, n: u64, choices: &Choices) -> Result<Report, CliError> {
    let s = setup(q, n, choices)?;
    let value = limit_ratio(&s.group, s.r, s.f)?;
    let value = json!({
        "command": "limit",
        "parameters": s.parameters,
        "limit": encode::rational(&value),
    });
    Ok(Report::new(value, ExitStatus::Success))
}

const SEARCH_HEADERS: [&str; 7] = [
    "p",
    "k_tilde_squared",
    "chi_tilde",
    "ratio",
    "exceeds_nine",
    "bigness_margin",
    "certificates_pass",
];

fn search(q: u64, n: u64, p_min: u64, p_max: u64, choices: &Choices) -> Result<Report, CliError> {
    let mut s = setup(q, n, choices)?;
    s.parameters.insert("p_min".into(), encode::uint(p_min));
    s.parameters.insert("p_max".into(), encode::uint(p_max));

    let mut warnings = Vec::new();
    let rows = match search_counterexamples(&s.group, p_min, p_max, s.r, s.f) {
        Ok(rows) => rows,
        Err(e @ CoverError::EmptyRange { .. }) => {
            warnings.push(e.to_string());
            Vec::new()
        }
        Err(e) => return Err(e.into()),
    };

    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "p": encode::uint(r.p),
                "k_tilde_squared": encode::int(&r.k_tilde_squared),
                "chi_tilde": encode::int(&r.chi_tilde),
                "ratio": encode::rational(&r.ratio),
                "exceeds_nine": r.exceeds_nine,
                "bigness_margin": encode::int(&r.bigness_margin),
                "certificates_pass": r.certificates_pass,
            })
        })
        .collect();
    let value = json!({
        "command": "search",
        "parameters": s.parameters,
        "rows": json_rows,
        "first_exceeding_nine": first_exceeding_nine(&rows).map(encode::uint),
        "warnings": warnings,
    });

    let status = if rows.iter().all(|r| r.certificates_pass) {
        ExitStatus::Success
    } else {
        ExitStatus::CertificateFailed
    };
    Ok(Report {
        value,
        rows: Some(Rows {
            key: "rows",
            headers: SEARCH_HEADERS.to_vec(),
            rows: rows.iter().map(search_cells).collect(),
        }),
        status,
        warnings,
    })
}

fn search_cells(r: &SearchRow) -> Vec<String> {
    vec![
        r.p.to_string(),
        r.k_tilde_squared.to_string(),
        r.chi_tilde.to_string(),
        format!("{}/{}", r.ratio.numer(), r.ratio.denom()),
        r.exceeds_nine.to_string(),
        r.bigness_margin.to_string(),
        r.certificates_pass.to_string(),
    ]
}

fn stats_json(s: &IncidenceStats) -> Value {
    json!({
        "points": encode::uint(s.points),
        "lines": encode::uint(s.lines),
        "points_per_line": encode::uint(s.points_per_line),
        "lines_per_point": encode::uint(s.lines_per_point),
    })
}

fn plane(p: u64, verify_incidence: bool, verify_cap: u64) -> Result<Report, CliError> {
    let closed = IncidenceStats::closed_form(p)?;
    let mut value = json!({ "command": "plane", "p": encode::uint(p) });
    let mut status = ExitStatus::Success;
    let stats = if verify_incidence {
        let counted = incidence_stats_with_cap(p, verify_cap)?;
        let matches = counted == closed;
        if !matches {
            status = ExitStatus::CertificateFailed;
        }
        value["method"] = json!("exhaustive");
        value["matches_closed_form"] = json!(matches);
        counted
    } else {
        value["method"] = json!("closed_form");
        closed
    };
    if let (Value::Object(out), Value::Object(counts)) = (&mut value, stats_json(&stats)) {
        out.extend(counts);
    }
    Ok(Report::new(value, status))
}

struct Checks(Vec<(String, bool, String)>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push((name.into(), pass, detail.into()));
    }

    fn push_result<T>(
        &mut self,
        name: impl Into<String>,
        result: Result<T, impl ToString>,
        ok: impl FnOnce(T) -> (bool, String),
    ) {
        match result {
            Ok(v) => {
                let (pass, detail) = ok(v);
                self.push(name, pass, detail);
            }
            Err(e) => self.push(name, false, e.to_string()),
        }
    }

    fn all(&self) -> bool {
        self.0.iter().all(|(_, pass, _)| *pass)
    }
}

fn verify(
    q: u64,
    n: u64,
    p: Option<u64>,
    choices: &Choices,
    verify_cap: u64,
) -> Result<Report, CliError> {
    let mut s = setup(q, n, choices)?;
    let primes: Vec<u64> = match p {
        Some(p) => {
            admissible(&s.group, p)?;
            s.parameters.insert("p".into(), encode::uint(p));
            vec![p]
        }
        None => default_primes(&s.group),
    };

    let construction = Arc::new(Construction::new(&s.group, s.r, s.f)?);
    let f = construction.f_set();
    let mut checks = Checks(Vec::new());

    let cond = construction.multiplicities().conditions(f);
    checks.push(
        "solver_conditions",
        cond.all(),
        format!(
            "m(e1) = 1: {}, supported on F: {}, sum m_s s = 0: {}",
            cond.unit_at_e1, cond.supported_on_f, cond.zero_sum
        ),
    );
    let independence = f.independence_check();
    checks.push(
        "f_set_independence",
        independence.independent,
        format!("{} violations", independence.violations.len()),
    );
    let defects = f.partition_defects();
    checks.push(
        "f_set_class_partition",
        defects.is_empty(),
        format!(
            "{} cyclic classes not represented exactly once",
            defects.len()
        ),
    );

    let sym = BuildingData::from_parts(construction.clone(), IntPolynomial::x());
    symbolic_checks(&s.group, &sym, &mut checks);
    for &p in &primes {
        numeric_checks(&construction, &sym, p, verify_cap, &mut checks);
    }

    let pass = checks.all();
    let rows: Vec<Vec<String>> = checks
        .0
        .iter()
        .map(|(name, pass, detail)| vec![name.clone(), pass.to_string(), detail.clone()])
        .collect();
    let json_checks: Vec<Value> = checks
        .0
        .iter()
        .map(|(name, pass, detail)| json!({ "name": name, "pass": pass, "detail": detail }))
        .collect();
    let value = json!({
        "command": "verify",
        "parameters": s.parameters,
        "primes": primes.iter().map(|&p| encode::uint(p)).collect::<Vec<_>>(),
        "checks": json_checks,
        "pass": pass,
    });
    Ok(Report {
        value,
        rows: Some(Rows {
            key: "checks",
            headers: vec!["name", "pass", "detail"],
            rows,
        }),
        status: if pass {
            ExitStatus::Success
        } else {
            ExitStatus::CertificateFailed
        },
        warnings: Vec::new(),
    })
}

/// The smallest admissible primes.
fn default_primes(group: &Group) -> Vec<u64> {
    let q = group.q() as u64;
    let mut hi = 64 * q;
    loop {
        let found: Vec<u64> = primes_minus_one_mod(q, 2, hi)
            .into_iter()
            .filter(|&p| p != q)
            .take(VERIFY_DEFAULT_PRIMES)
            .collect();
        if found.len() == VERIFY_DEFAULT_PRIMES {
            return found;
        }
        hi *= 4;
    }
}

fn symbolic_checks(group: &Group, sym: &BuildingData<IntPolynomial>, checks: &mut Checks) {
    let (q, n) = (group.q(), group.n());
    checks.push_result("symbolic.k_tilde_squared", sym.k_tilde_squared(), |k2| {
        let expected = expected_k_tilde_leading(q, n);
        let pass = k2.degree() == Some(3) && k2.leading_coefficient() == Some(&expected);
        (pass, format!("{k2}; expected leading {expected}"))
    });
    checks.push_result("symbolic.chi_tilde", sym.chi_tilde(), |chi| {
        let expected = expected_chi_leading(q, n);
        let pass = chi.degree() == Some(3) && chi.leading_coefficient() == Some(&expected);
        (pass, format!("{chi}; expected leading {expected}"))
    });
    checks.push_result("symbolic.quartic_cancellation", sym.sum_divisors(), |sum| {
        let square = sum.square();
        (square.coeff(4).is_zero(), format!("(sum D)^2 = {square}"))
    });
    checks.push_result("symbolic.estimates", sym.asymptotic_estimates(), |e| {
        (
            true,
            format!(
                "K_S.sum D = {}; (sum D)^2 = {}; sum L.(L+K_S) = {}",
                e.k_s_dot_sum, e.sum_squared, e.self_product_sum
            ),
        )
    });
    let twelve = BigRational::from_integer(BigInt::from(12));
    checks.push_result("symbolic.limit", sym.ratio(), |ratio| {
        let limit = ratio.limit_at_infinity();
        let text = match &limit {
            LimitAtInfinity::Zero => "0".to_string(),
            LimitAtInfinity::Finite(v) => encode::rational_text(v),
            LimitAtInfinity::PosInfinity => "+inf".to_string(),
            LimitAtInfinity::NegInfinity => "-inf".to_string(),
        };
        (
            limit == LimitAtInfinity::Finite(twelve),
            format!("limit {text}, expected 12"),
        )
    });
}

fn numeric_checks(
    construction: &Arc<Construction>,
    sym: &BuildingData<IntPolynomial>,
    p: u64,
    verify_cap: u64,
    checks: &mut Checks,
) {
    let name = |what: &str| format!("p={p}.{what}");
    let data = BuildingData::from_parts(construction.clone(), BigInt::from(p));

    let cover = data.check_cover_condition();
    checks.push(
        name("cover_condition"),
        cover.pass,
        format!(
            "{} characters with q L not divisible by q",
            cover.violations.len()
        ),
    );
    if !cover.pass {
        return;
    }

    let parity = data.adjunction_parity_violations();
    checks.push(
        name("adjunction_parity"),
        parity.is_empty(),
        format!("{} characters with odd L.(L+K_S)", parity.len()),
    );
    checks.push_result(name("dual_path"), data.sum_l_self_products(), |v| {
        (true, format!("sum L.(L+K_S) = {v} by both paths"))
    });
    checks.push_result(name("sum_divisors"), data.sum_divisors(), |d| {
        (true, format!("({}, {}, {})", d.h, d.e, d.n))
    });
    checks.push_result(name("bigness"), data.bigness_certificate(), |b| {
        (
            b.pass,
            format!(
                "margin {}, decomposition holds: {}",
                b.margin, b.decomposition_holds
            ),
        )
    });

    let pb = BigInt::from(p);
    let coherent = (|| -> Result<(bool, String), CoverError> {
        let k2 = data.k_tilde_squared()?;
        let chi = data.chi_tilde()?;
        let ratio = data.ratio()?;
        let pass = sym.k_tilde_squared()?.eval(&pb) == k2
            && sym
                .chi_tilde()?
                .eval(&BigRational::from_integer(pb.clone()))
                == BigRational::from_integer(chi.clone())
            && sym.ratio()?.eval(&pb)? == ratio;
        Ok((
            pass,
            format!(
                "K^2 = {k2}, chi = {chi}, ratio = {}",
                encode::rational_text(&ratio)
            ),
        ))
    })();
    checks.push_result(name("symbolic_coherence"), coherent, |r| r);

    if p <= verify_cap {
        let closed = IncidenceStats::closed_form(p);
        let counted = incidence_stats_with_cap(p, verify_cap);
        checks.push_result(name("plane_incidence"), counted, |c| {
            (
                closed.as_ref().is_ok_and(|cf| *cf == c),
                format!(
                    "{} points, {} lines, {} per line",
                    c.points, c.lines, c.points_per_line
                ),
            )
        });
    } else {
        checks.push(
            name("plane_incidence"),
            true,
            format!("skipped: p above the verification cap {verify_cap}"),
        );
    }
}
