//! Parser for the family names accepted by `logcurve generate`.

use logcurve::families::{self, FamilyError};
use logcurve::graph::LogCurveModel;

/// Builds the model named by `family`: `chain_N`, `cycle_N`, `banana_M`,
/// `theta`, or `random(V,E[,SEED])`. `default_seed` applies when a random
/// family carries no inline seed.
pub fn build(family: &str, default_seed: u64) -> Result<LogCurveModel, String> {
    let fam = family.trim();
    if fam == "theta" {
        return Ok(families::theta());
    }
    if let Some(n) = parse_suffixed(fam, "chain_") {
        return families::chain(n?).map_err(render);
    }
    if let Some(n) = parse_suffixed(fam, "cycle_") {
        return families::cycle(n?).map_err(render);
    }
    if let Some(m) = parse_suffixed(fam, "banana_") {
        return families::banana(m?).map_err(render);
    }
    if let Some(rest) = fam.strip_prefix("random(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| format!("expected closing parenthesis in {fam:?}"))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 2 && parts.len() != 3 {
            return Err(format!(
                "random takes (V,E) or (V,E,SEED), got {} arguments",
                parts.len()
            ));
        }
        let num = |s: &str, what: &str| -> Result<usize, String> {
            s.parse()
                .map_err(|_| format!("bad {what} {s:?} in {fam:?}"))
        };
        let v = num(parts[0], "vertex count")?;
        let e = num(parts[1], "edge count")?;
        let seed = match parts.get(2) {
            Some(s) => s
                .parse()
                .map_err(|_| format!("bad seed {s:?} in {fam:?}"))?,
            None => default_seed,
        };
        return families::random(v, e, seed).map_err(render);
    }
    Err(format!(
        "unknown family {fam:?}; expected chain_N, cycle_N, banana_M, theta, or random(V,E[,SEED])"
    ))
}

fn parse_suffixed(s: &str, prefix: &str) -> Option<Result<usize, String>> {
    let rest = s.strip_prefix(prefix)?;
    Some(
        rest.parse()
            .map_err(|_| format!("bad count {rest:?} in {s:?}")),
    )
}

fn render(e: FamilyError) -> String {
    e.to_string()
}
