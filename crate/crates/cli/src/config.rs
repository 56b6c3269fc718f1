//! Field resolution and sweep ranges.

use selfdual_core::arith::prime_power;
use selfdual_core::{Field, FieldSpec};

use crate::{CliError, CliResult};

/// Builds the field from `--q`, or `--p` with optional `--m`, and an optional
/// modulus given as comma-separated coefficients, constant term first.
pub fn resolve_field(q: Option<u64>, p: Option<u32>, m: Option<u32>, modulus: Option<&str>) -> CliResult<Field> {
    let (p, m) = match (q, p) {
        (Some(q), _) => {
            let (pq, mq) = prime_power(q).ok_or_else(|| CliError::usage(format!("--q {q} is not a prime power")))?;
            if p.is_some_and(|p| p as u64 != pq) || m.is_some_and(|m| m != mq) {
                return Err(CliError::usage(format!("--q {q} contradicts --p/--m")));
            }
            (pq as u32, mq)
        }
        (None, Some(p)) => (p, m.unwrap_or(1)),
        (None, None) => {
            let hint = modulus.map_or("", |_| " (--modulus needs --q or --p)");
            return Err(CliError::usage(format!("a field is required: pass --q or --p [--m]{hint}")));
        }
    };
    let spec = match modulus {
        Some(text) => FieldSpec::new(p, m, parse_list::<u32>(text, "--modulus")?)?,
        None => FieldSpec::default_for(p, m)?,
    };
    Ok(Field::new(spec))
}

pub fn parse_list<T: std::str::FromStr>(text: &str, flag: &str) -> CliResult<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|_| CliError::usage(format!("{flag}: cannot parse {s:?}"))))
        .collect()
}

/// Parses a sweep axis: `a`, `a,b,c`, `lo..hi` (exclusive), `lo..=hi`
/// (inclusive), each range optionally followed by `:step`. The empty string
/// is the empty axis. Open-ended ranges are rejected.
pub fn parse_axis(text: &str, flag: &str) -> CliResult<Vec<u64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for piece in text.split(',').map(str::trim) {
        let Some((lo, rest)) = piece.split_once("..") else {
            out.push(parse_num(piece, flag)?);
            continue;
        };
        let (rest, step) = match rest.split_once(':') {
            Some((r, s)) => (r, parse_num(s, flag)?),
            None => (rest, 1),
        };
        if step == 0 {
            return Err(CliError::usage(format!("{flag}: step must be positive in {piece:?}")));
        }
        let (inclusive, hi) = match rest.strip_prefix('=') {
            Some(h) => (true, h),
            None => (false, rest),
        };
        if lo.trim().is_empty() || hi.trim().is_empty() {
            return Err(CliError::usage(format!("{flag}: range {piece:?} is unbounded")));
        }
        let (lo, hi) = (parse_num(lo, flag)?, parse_num(hi, flag)?);
        let end = if inclusive { hi.saturating_add(1) } else { hi };
        out.extend((lo..end).step_by(step as usize));
    }
    Ok(out)
}

fn parse_num(s: &str, flag: &str) -> CliResult<u64> {
    s.trim()
        .parse()
        .map_err(|_| CliError::usage(format!("{flag}: cannot parse {s:?} as a nonnegative integer")))
}
