//! Command implementations. Each returns a finished report; printing and
//! exit status are left to the binary.

use serde::Serialize;

use selfdual_core::arith::{divisors, gcd};
use selfdual_core::code::{weight_enumerator, LinearCode};
use selfdual_core::cyclic_enum::{build_selection_set, count_selfdual_cyclic, count_selfdual_theta_cyclic, lambda_bar, selfdual_cyclic_exists};
use selfdual_core::oracle::{enumerate_selfdual_cyclic, monic_candidates, theta_cyclic_selfdual_in_range};
use selfdual_core::quasicyclic::{self, Proposition, ReportOptions, RhoInputs, RhoSource};
use selfdual_core::{Automorphism, Error, Field};

use crate::output::{opt, Projection, Table};
use crate::schema::{CodeJson, FieldJson, SelectionJson};
use crate::{CliError, CliResult};

/// Run metadata, the only non-deterministic part of any report.
#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub elapsed_ms: f64,
    pub version: &'static str,
}

fn theta(field: &Field, r: u32) -> CliResult<Automorphism> {
    Automorphism::new(field, r).map_err(|_| CliError::usage(format!("--r {r} must lie in [1, {}] for q={}", field.m(), field.q())))
}

fn positive(n: u64, flag: &str) -> CliResult<u64> {
    if n == 0 {
        Err(CliError::usage(format!("{flag} must be positive")))
    } else {
        Ok(n)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub q: u32,
    pub n: u64,
    pub r: u32,
    pub theta_order: u32,
    pub gcd_n_theta: u64,
    pub selfdual_cyclic_count: u128,
    #[serde(rename = "Lambda_bar")]
    pub lambda_bar: u128,
    pub theta_cyclic_count: u128,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

const COUNT_HEADER: [&str; 8] =
    ["q", "n", "r", "theta_order", "gcd_n_theta", "selfdual_cyclic_count", "Lambda_bar", "theta_cyclic_count"];

impl CountReport {
    fn cells(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.n.to_string(),
            self.r.to_string(),
            self.theta_order.to_string(),
            self.gcd_n_theta.to_string(),
            self.selfdual_cyclic_count.to_string(),
            self.lambda_bar.to_string(),
            self.theta_cyclic_count.to_string(),
        ]
    }
}

impl Projection for CountReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&COUNT_HEADER);
        t.header.push("warnings".into());
        let mut row = self.cells();
        row.push(self.warnings.join("; "));
        t.push(row);
        t
    }
}

pub fn count(field: &Field, n: u64, r: u32) -> CliResult<CountReport> {
    let n = positive(n, "--n")?;
    let th = theta(field, r)?;
    let q = field.q() as u64;
    let mut warnings = Vec::new();
    let g = gcd(n, th.order() as u64);
    if !selfdual_cyclic_exists(q, n) {
        warnings.push(format!(
            "no self-dual cyclic codes of length {n} over GF({q}): they exist only for even n and q a power of 2"
        ));
    }
    if g > 1 {
        warnings.push(format!(
            "gcd(n, |θ|) = {g} > 1: the θ-cyclic count assumes gcd 1; compare with `verify`"
        ));
    }
    let selections = build_selection_set(field, n)?;
    Ok(CountReport {
        q: field.q(),
        n,
        r,
        theta_order: th.order(),
        gcd_n_theta: g,
        selfdual_cyclic_count: count_selfdual_cyclic(q, n)?,
        lambda_bar: lambda_bar(&selections, r),
        theta_cyclic_count: count_selfdual_theta_cyclic(field, n, r)?,
        warnings,
        meta: None,
    })
}

/// Self-dual θ-cyclic codes by the skew right-divisor search, with the
/// candidate range split across `jobs` threads and merged in order.
pub fn theta_oracle(field: &Field, n: usize, r: u32, guard: u128, jobs: usize) -> CliResult<Vec<LinearCode>> {
    let th = theta(field, r)?;
    if !n.is_multiple_of(2) {
        return Ok(Vec::new());
    }
    let total = monic_candidates(field, n / 2)?;
    if total > guard {
        return Err(Error::GuardExceeded { required: total, guard }.into());
    }
    let jobs = (jobs.max(1) as u128).min(total.max(1));
    let chunk = total.div_ceil(jobs);
    let parts: Vec<selfdual_core::Result<Vec<LinearCode>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|i| {
                let range = (i * chunk).min(total)..((i + 1) * chunk).min(total);
                s.spawn(move || theta_cyclic_selfdual_in_range(field, n, th, range))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("oracle worker panicked")).collect()
    });
    let mut codes = Vec::new();
    for part in parts {
        codes.extend(part?);
    }
    codes.sort();
    codes.dedup();
    Ok(codes)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub q: u32,
    pub n: u64,
    pub r: u32,
    pub theta_order: u32,
    pub gcd_n_theta: u64,
    pub formula: u128,
    pub oracle: u128,
    pub agree: bool,
    pub candidates: u128,
    pub guard: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl Projection for VerifyReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["q", "n", "r", "theta_order", "gcd_n_theta", "formula", "oracle", "agree"]);
        t.push(vec![
            self.q.to_string(),
            self.n.to_string(),
            self.r.to_string(),
            self.theta_order.to_string(),
            self.gcd_n_theta.to_string(),
            self.formula.to_string(),
            self.oracle.to_string(),
            self.agree.to_string(),
        ]);
        t
    }
}

pub fn verify(field: &Field, n: u64, r: u32, guard: u128, jobs: usize) -> CliResult<VerifyReport> {
    let n = positive(n, "--n")?;
    let th = theta(field, r)?;
    let formula = count_selfdual_theta_cyclic(field, n, r)?;
    let candidates = if n % 2 == 0 { monic_candidates(field, n as usize / 2)? } else { 0 };
    let oracle = theta_oracle(field, n as usize, r, guard, jobs)?.len() as u128;
    Ok(VerifyReport {
        q: field.q(),
        n,
        r,
        theta_order: th.order(),
        gcd_n_theta: gcd(n, th.order() as u64),
        formula,
        oracle,
        agree: formula == oracle,
        candidates,
        guard,
        meta: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    #[serde(flatten)]
    pub count: CountRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<u64>,
}

/// [`CountReport`] without warnings and meta, for sweeps.
#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    pub q: u32,
    pub n: u64,
    pub r: u32,
    pub theta_order: u32,
    pub gcd_n_theta: u64,
    pub selfdual_cyclic_count: u64,
    #[serde(rename = "Lambda_bar")]
    pub lambda_bar: u64,
    pub theta_cyclic_count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub with_oracle: bool,
    pub rows: Vec<TableRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl Projection for TableReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&COUNT_HEADER);
        if self.with_oracle {
            t.header.push("oracle".into());
        }
        for row in &self.rows {
            let c = &row.count;
            let mut cells = vec![
                c.q.to_string(),
                c.n.to_string(),
                c.r.to_string(),
                c.theta_order.to_string(),
                c.gcd_n_theta.to_string(),
                c.selfdual_cyclic_count.to_string(),
                c.lambda_bar.to_string(),
                c.theta_cyclic_count.to_string(),
            ];
            if self.with_oracle {
                cells.push(opt(&row.oracle));
            }
            t.push(cells);
        }
        t
    }
}

fn narrow(v: u128) -> CliResult<u64> {
    u64::try_from(v).map_err(|_| CliError::failure(format!("count {v} does not fit the table format")))
}

/// One row per `(q, n, r)` in the order given, `q` slowest.
pub fn table(qs: &[u64], ns: &[u64], rs: &[u64], with_oracle: bool, guard: u128, jobs: usize) -> CliResult<TableReport> {
    let mut rows = Vec::new();
    for &q in qs {
        let field = crate::config::resolve_field(Some(q), None, None, None)?;
        for &n in ns {
            for &r in rs {
                let r = u32::try_from(r).map_err(|_| CliError::usage(format!("--r {r} is out of range")))?;
                let c = count(&field, n, r)?;
                let oracle = if with_oracle {
                    Some(theta_oracle(&field, n as usize, r, guard, jobs)?.len() as u64)
                } else {
                    None
                };
                rows.push(TableRow {
                    count: CountRow {
                        q: c.q,
                        n: c.n,
                        r: c.r,
                        theta_order: c.theta_order,
                        gcd_n_theta: c.gcd_n_theta,
                        selfdual_cyclic_count: narrow(c.selfdual_cyclic_count)?,
                        lambda_bar: narrow(c.lambda_bar)?,
                        theta_cyclic_count: narrow(c.theta_cyclic_count)?,
                    },
                    oracle,
                });
            }
        }
    }
    Ok(TableReport { with_oracle, rows, meta: None })
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisJson {
    pub name: String,
    pub holds: bool,
    pub enforced: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub label: String,
    pub base: u128,
    pub rho: u128,
    pub exponent: u32,
    /// `computed`, `supplied` or `default` (not computable, taken as 0).
    pub rho_source: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectJson {
    pub selfdual: u128,
    pub theta_invariant: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct QcReport {
    pub case: String,
    pub q: u32,
    pub d: usize,
    pub m: usize,
    pub n: usize,
    pub r: u32,
    pub theta_order: u32,
    pub hypotheses: Vec<HypothesisJson>,
    pub rho_domain: &'static str,
    pub constant: u128,
    pub terms: Vec<TermJson>,
    pub base_count: u128,
    pub formula_count: u128,
    pub direct_count: Option<DirectJson>,
    pub oracle_count: Option<u128>,
    pub agree: Option<bool>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl Projection for QcReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&[
            "case",
            "q",
            "d",
            "m",
            "n",
            "r",
            "base_count",
            "rho",
            "formula_count",
            "direct_selfdual",
            "direct_count",
            "oracle_count",
            "agree",
        ]);
        let rho: Vec<String> = self.terms.iter().map(|t| format!("{}={}", t.label, t.rho)).collect();
        t.push(vec![
            self.case.clone(),
            self.q.to_string(),
            self.d.to_string(),
            self.m.to_string(),
            self.n.to_string(),
            self.r.to_string(),
            self.base_count.to_string(),
            rho.join(";"),
            self.formula_count.to_string(),
            opt(&self.direct_count.as_ref().map(|d| d.selfdual)),
            opt(&self.direct_count.as_ref().map(|d| d.theta_invariant)),
            opt(&self.oracle_count),
            opt(&self.agree),
        ]);
        t
    }
}

pub struct QcArgs {
    pub case: Proposition,
    pub size: usize,
    pub r: u32,
    pub rho: RhoInputs,
    pub guard: u128,
    pub skip_oracle: bool,
}

pub fn qc(field: &Field, args: &QcArgs) -> CliResult<QcReport> {
    theta(field, args.r)?;
    let options = ReportOptions {
        rho: args.rho.clone(),
        oracle_guard: (!args.skip_oracle).then_some(args.guard),
        ..ReportOptions::default()
    };
    let rep = quasicyclic::proposition_report(field, args.case, args.size, args.r, &options)?;
    Ok(QcReport {
        case: rep.case.to_string(),
        q: rep.q,
        d: rep.d,
        m: rep.m,
        n: rep.n,
        r: rep.r,
        theta_order: rep.theta_order,
        hypotheses: rep
            .hypotheses
            .iter()
            .map(|h| HypothesisJson { name: h.name.clone(), holds: h.holds, enforced: h.enforced })
            .collect(),
        rho_domain: "sum over the constituent codes counted by the base formula (Hermitian self-dual codes for G_i, dual pairs for H'_j/H''_j), each pulled back alone",
        constant: rep.formula.constant,
        terms: rep
            .formula
            .terms
            .iter()
            .map(|t| TermJson {
                label: t.label.clone(),
                base: t.base,
                rho: t.rho,
                exponent: t.exponent,
                rho_source: match t.rho_source {
                    RhoSource::Computed => "computed",
                    RhoSource::Supplied => "supplied",
                    RhoSource::Default => "default",
                },
            })
            .collect(),
        base_count: rep.base_count,
        formula_count: rep.formula_count,
        direct_count: rep.direct.map(|d| DirectJson { selfdual: d.selfdual, theta_invariant: d.theta_invariant }),
        oracle_count: rep.oracle_count,
        agree: rep.agree,
        notes: rep.notes,
        meta: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerateReport {
    pub field: FieldJson,
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    pub count: usize,
    #[serde(rename = "Lambda_bar", skip_serializing_if = "Option::is_none")]
    pub lambda_bar: Option<u128>,
    pub selections: Vec<SelectionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl Projection for EnumerateReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["index", "generator_degree", "multiplicities", "fixed_by_lambda"]);
        for (i, s) in self.selections.iter().enumerate() {
            let mults: Vec<String> = s.multiplicities.iter().map(|c| format!("{}:{}", c.rep, c.multiplicity)).collect();
            t.push(vec![i.to_string(), s.generator_degree.to_string(), mults.join(";"), opt(&s.fixed_by_lambda)]);
        }
        t
    }
}

pub fn enumerate(field: &Field, n: u64, r: Option<u32>) -> CliResult<EnumerateReport> {
    let n = positive(n, "--n")?;
    if let Some(r) = r {
        theta(field, r)?;
    }
    let selections = build_selection_set(field, n)?;
    Ok(EnumerateReport {
        field: FieldJson::of(field),
        n,
        r,
        count: selections.len(),
        lambda_bar: r.map(|r| lambda_bar(&selections, r)),
        selections: selections.iter().map(|s| SelectionJson::of(s, r)).collect(),
        meta: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    /// Self-dual θ-cyclic codes by skew right-divisor search.
    Theta,
    /// Self-dual cyclic codes from the divisors of `x^n - 1`.
    Cyclic,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleParams {
    pub q: u32,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    pub kind: OracleKind,
    pub guard: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub params: OracleParams,
    pub count: usize,
    pub codes: Vec<CodeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl Projection for OracleReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["index", "n", "k", "generator_matrix"]);
        for (i, c) in self.codes.iter().enumerate() {
            let rows: Vec<String> = c
                .generator_matrix
                .iter()
                .map(|row| row.iter().map(|e| e.iter().map(u32::to_string).collect::<Vec<_>>().join("")).collect::<Vec<_>>().join(" "))
                .collect();
            t.push(vec![i.to_string(), c.n.to_string(), c.k.to_string(), rows.join(" | ")]);
        }
        t
    }
}

pub fn oracle(field: &Field, n: usize, r: Option<u32>, kind: OracleKind, guard: u128, jobs: usize) -> CliResult<OracleReport> {
    positive(n as u64, "--n")?;
    let codes = match kind {
        OracleKind::Theta => {
            let r = r.ok_or_else(|| CliError::usage("--kind theta needs --r"))?;
            theta_oracle(field, n, r, guard, jobs)?
        }
        OracleKind::Cyclic => enumerate_selfdual_cyclic(field, n)?,
    };
    Ok(OracleReport {
        params: OracleParams { q: field.q(), n, r, kind, guard },
        count: codes.len(),
        codes: codes.iter().map(CodeJson::of).collect(),
        meta: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistJson {
    pub r: u32,
    pub theta_order: u32,
    pub theta_cyclic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InspectReport {
    pub field: FieldJson,
    pub n: usize,
    pub k: usize,
    pub self_orthogonal: bool,
    pub self_dual: bool,
    pub cyclic: bool,
    /// Every `l | n` with `T^l(C) = C`.
    pub quasi_cyclic_indices: Vec<u64>,
    pub twists: Vec<TwistJson>,
    /// `A_0, …, A_n`; absent when `q^k` exceeds the guard.
    pub weight_enumerator: Option<Vec<u128>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl Projection for InspectReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["q", "n", "k", "self_orthogonal", "self_dual", "cyclic", "quasi_cyclic_indices", "theta_cyclic_r", "weight_enumerator"]);
        let join = |v: Vec<String>| v.join(";");
        t.push(vec![
            self.field.q.to_string(),
            self.n.to_string(),
            self.k.to_string(),
            self.self_orthogonal.to_string(),
            self.self_dual.to_string(),
            self.cyclic.to_string(),
            join(self.quasi_cyclic_indices.iter().map(u64::to_string).collect()),
            join(self.twists.iter().filter(|t| t.theta_cyclic).map(|t| t.r.to_string()).collect()),
            self.weight_enumerator.as_ref().map_or_else(String::new, |w| join(w.iter().map(u128::to_string).collect())),
        ]);
        t
    }
}

pub fn inspect(code: &CodeJson, guard: u128) -> CliResult<InspectReport> {
    let c = code.to_code()?;
    let field = c.field().clone();
    let n = c.length();
    let weight = match weight_enumerator(&c, guard) {
        Ok(w) => Some(w.counts),
        Err(Error::GuardExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(InspectReport {
        field: code.field.clone(),
        n,
        k: c.dimension(),
        self_orthogonal: c.is_self_orthogonal(),
        self_dual: c.is_self_dual(),
        cyclic: c.is_cyclic(),
        quasi_cyclic_indices: divisors(n as u64).into_iter().filter(|&l| c.is_quasi_cyclic(l as usize)).collect(),
        twists: (1..=field.m())
            .map(|r| {
                let th = Automorphism::new(&field, r).expect("r in range");
                TwistJson { r, theta_order: th.order(), theta_cyclic: c.is_theta_cyclic(th) }
            })
            .collect(),
        weight_enumerator: weight,
        meta: None,
    })
}
