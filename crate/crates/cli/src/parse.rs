//! Group literals (`Z5`, `Z3xZ3`, `S3`) and generator lists (`10,01`, `±1,±2`,
//! `(1,12),(0,3)`).

use voltlift::{GenericGroup, Group};

pub fn parse_group(text: &str) -> Result<Group, String> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("S3") {
        return Ok(GenericGroup::symmetric3().into());
    }
    let orders = t
        .split(['x', 'X'])
        .map(|f| {
            let digits = f
                .trim()
                .strip_prefix(['Z', 'z'])
                .ok_or_else(|| format!("bad group factor '{f}'"))?;
            digits
                .parse::<usize>()
                .map_err(|_| format!("bad group factor '{f}'"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Group::abelian(&orders).map_err(|e| format!("group '{text}': {e}"))
}

/// Splits on commas outside parentheses.
fn tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out.into_iter()
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

fn element(group: &Group, body: &str) -> Result<usize, String> {
    let bad = || format!("generator '{body}' does not name an element of {group}");
    let rank = group.as_abelian().map_or(1, |a| a.rank());
    if group.as_abelian().is_none() {
        let i: usize = body.parse().map_err(|_| bad())?;
        return if i < group.order() { Ok(i) } else { Err(bad()) };
    }
    let coords: Vec<i64> =
        if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            inner
                .split(',')
                .map(|c| c.trim().parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else if rank == 1 {
            vec![body.parse().map_err(|_| bad())?]
        } else if body.len() == rank && body.chars().all(|c| c.is_ascii_digit()) {
            body.chars()
                .map(|c| c.to_digit(10).unwrap() as i64)
                .collect()
        } else {
            return Err(bad());
        };
    group
        .element_from_coords(&coords)
        .map(|e| e.index())
        .map_err(|_| bad())
}

/// Element indices in the order given. A leading `-` inverts an element and
/// `±` (or `+-`) contributes both the element and its inverse.
pub fn parse_generators(group: &Group, text: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for tok in tokens(text) {
        let (both, negate, body) =
            if let Some(b) = tok.strip_prefix('±').or_else(|| tok.strip_prefix("+-")) {
                (true, false, b)
            } else if let Some(b) = tok.strip_prefix('-') {
                (false, true, b)
            } else {
                (false, false, tok.strip_prefix('+').unwrap_or(&tok))
            };
        let g = element(group, body.trim())?;
        if both {
            out.push(g);
            out.push(group.inv(g));
        } else if negate {
            out.push(group.inv(g));
        } else {
            out.push(g);
        }
    }
    if out.is_empty() {
        return Err("empty generator list".into());
    }
    Ok(out)
}

/// Adds missing inverses and drops duplicates, keeping first-seen order.
pub fn inverse_closure(group: &Group, gens: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for &g in gens {
        for x in [g, group.inv(g)] {
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

pub fn parse_usize_list(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("'{t}' is not a non-negative integer"))
        })
        .collect()
}

/// `c1,c2,c3,c4`.
pub fn parse_coefficients(text: &str) -> Result<[f64; 4], String> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("'{t}' is not a number"))
        })
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|p: Vec<f64>| format!("expected 4 coefficients, got {}", p.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        assert_eq!(parse_group("Z3xZ3").unwrap().order(), 9);
        assert_eq!(parse_group("z12").unwrap().order(), 12);
        assert_eq!(parse_group("S3").unwrap().order(), 6);
        assert!(parse_group("Q8").is_err());
        assert!(parse_group("Z0").is_err());
    }

    #[test]
    fn generator_notations() {
        let g = parse_group("Z3xZ3").unwrap();
        let gens = parse_generators(&g, "10,01").unwrap();
        assert_eq!(
            gens.iter().map(|&i| g.label(i)).collect::<Vec<_>>(),
            ["10", "01"]
        );
        let pm = parse_generators(&g, "±10, -01").unwrap();
        assert_eq!(
            pm.iter().map(|&i| g.label(i)).collect::<Vec<_>>(),
            ["10", "20", "02"]
        );
        let big = parse_group("Z2xZ12").unwrap();
        let t = parse_generators(&big, "(1,11),(0,-1)").unwrap();
        assert_eq!(
            t.iter().map(|&i| big.coords(i)).collect::<Vec<_>>(),
            [vec![1, 11], vec![0, 11]]
        );
        assert!(parse_generators(&g, "3").is_err());
        assert!(parse_generators(&g, "").is_err());
        let z = parse_group("Z12").unwrap();
        assert_eq!(parse_generators(&z, "2,-3").unwrap(), [2, 9]);
        assert_eq!(inverse_closure(&z, &[2, 3, 10]), [2, 10, 3, 9]);
    }

    #[test]
    fn lists() {
        assert_eq!(parse_usize_list("2, 3").unwrap(), [2, 3]);
        assert!(parse_usize_list("2,x").is_err());
        assert_eq!(
            parse_coefficients("-1,1,0,0").unwrap(),
            [-1.0, 1.0, 0.0, 0.0]
        );
        assert!(parse_coefficients("1,2").is_err());
    }
}
