//! Element literal grammar used on the command line.
//!
//! Terms joined by top-level `+`/`-`, each term `coeff*(point)`, `(point)`
//! or a bare coefficient (a multiple of the ring unit). Points are
//! `(x1,..,xn;y1,..,yn)` with exact rationals `p/q`; in one dimension the
//! comma form `(x,y)` is accepted. Coefficients are rationals or decimals
//! with an optional trailing `i`, or a parenthesized `a+bi`.
//!
//! Examples: `1+(1,0)`, `5*(1,1)`, `(1/2,0)`, `2i*(0,1;1,0) - (1,0;0,0)`.

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;

use heisenlab::{AlgebraElement, GroupElement, Rat, Scalar};

/// Split on top-level `+`/`-`, keeping the sign with each chunk.
fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' | '-' if depth == 0 && i > 0 => {
                let prev = s[..i].trim_end().chars().last().unwrap_or(' ');
                if !matches!(prev, '*' | ',' | ';' | '(' | '+' | '-') {
                    out.push(cur.clone());
                    cur.clear();
                }
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

fn parse_rat_or_decimal(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Some(r) = Rat::parse_str(s) {
        return Ok(Scalar::to_f64(&r));
    }
    s.parse::<f64>().map_err(|_| anyhow!("bad number {s:?}"))
}

fn parse_coeff(s: &str) -> Result<Complex64> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        // a+bi / a-bi
        let inner = inner.trim();
        if let Some(im_str) = inner.strip_suffix('i') {
            let mut split = None;
            for (i, c) in im_str.char_indices().skip(1) {
                if (c == '+' || c == '-')
                    && !matches!(im_str.as_bytes()[i - 1], b'e' | b'E' | b'/')
                {
                    split = Some(i);
                }
            }
            if let Some(i) = split {
                let re = parse_rat_or_decimal(&im_str[..i])?;
                let sign = if im_str.as_bytes()[i] == b'-' { -1.0 } else { 1.0 };
                let im_part = im_str[i + 1..].trim();
                let im = if im_part.is_empty() { 1.0 } else { parse_rat_or_decimal(im_part)? };
                return Ok(Complex64::new(re, sign * im));
            }
        }
        return parse_coeff(inner);
    }
    match s {
        "i" | "+i" => return Ok(Complex64::new(0.0, 1.0)),
        "-i" => return Ok(Complex64::new(0.0, -1.0)),
        _ => {}
    }
    if let Some(prefix) = s.strip_suffix('i') {
        let v = if prefix.is_empty() || prefix == "+" {
            1.0
        } else if prefix == "-" {
            -1.0
        } else {
            parse_rat_or_decimal(prefix)?
        };
        return Ok(Complex64::new(0.0, v));
    }
    Ok(Complex64::new(parse_rat_or_decimal(s)?, 0.0))
}

fn parse_coords(inner: &str) -> Result<(Vec<Rat>, Vec<Rat>)> {
    let parse_block = |block: &str| -> Result<Vec<Rat>> {
        block
            .split(',')
            .map(|p| {
                Rat::parse_str(p)
                    .ok_or_else(|| anyhow!("bad rational coordinate {:?}", p.trim()))
            })
            .collect()
    };
    if let Some((xs, ys)) = inner.split_once(';') {
        let x = parse_block(xs)?;
        let y = parse_block(ys)?;
        if x.len() != y.len() {
            bail!("x-block and y-block have different lengths");
        }
        Ok((x, y))
    } else {
        let parts = parse_block(inner)?;
        if parts.len() != 2 {
            bail!("point without ';' must be the 1-dimensional form (x,y)");
        }
        Ok((vec![parts[0].clone()], vec![parts[1].clone()]))
    }
}

/// Parse a single point literal `(…)`.
pub fn parse_point(s: &str) -> Result<GroupElement<Rat>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| anyhow!("point literal must be parenthesized: {s:?}"))?;
    let (x, y) = parse_coords(inner)?;
    Ok(GroupElement::new(x, y))
}

/// Parse a full element literal into the exact twisted group ring.
pub fn parse_element(s: &str) -> Result<AlgebraElement<Rat>> {
    let terms = split_terms(s);
    if terms.is_empty() {
        bail!("empty element literal");
    }
    let mut parsed: Vec<(GroupElement<Rat>, Complex64)> = Vec::new();
    for raw in &terms {
        let mut t = raw.trim();
        let mut sign = 1.0;
        while let Some(rest) = t.strip_prefix('+').or_else(|| t.strip_prefix('-')) {
            if t.starts_with('-') {
                sign = -sign;
            }
            t = rest.trim_start();
        }
        // locate the trailing point group, if any
        let (coeff_str, point_str) = match t.rfind('(') {
            Some(pos) if t.ends_with(')') && !t[..pos].trim_end().ends_with(['+', '-']) && is_point_group(&t[pos..]) => {
                (t[..pos].trim_end().trim_end_matches('*'), Some(&t[pos..]))
            }
            _ => (t, None),
        };
        let coeff = parse_coeff(coeff_str)
            .with_context(|| format!("in term {raw:?}"))?
            * sign;
        let point = match point_str {
            Some(p) => parse_point(p).with_context(|| format!("in term {raw:?}"))?,
            None => GroupElement::identity(1),
        };
        parsed.push((point, coeff));
    }
    // bare-coefficient terms inherit the dimension of the rest
    let n = parsed
        .iter()
        .find(|(g, _)| !(g.n() == 1 && g.is_identity()))
        .map_or(1, |(g, _)| g.n());
    let terms: Vec<(GroupElement<Rat>, Complex64)> = parsed
        .into_iter()
        .map(|(g, c)| {
            if g.n() == 1 && g.is_identity() && n != 1 {
                (GroupElement::identity(n), c)
            } else {
                (g, c)
            }
        })
        .collect();
    if terms.iter().any(|(g, _)| g.n() != n) {
        bail!("mixed ambient dimensions in element literal");
    }
    AlgebraElement::from_terms(n, terms).map_err(|e| anyhow!("{e}"))
}

/// A point group contains only coordinate characters (no nested parens,
/// no complex marks), distinguishing it from a parenthesized coefficient.
fn is_point_group(s: &str) -> bool {
    s.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .is_some_and(|inner| {
            !inner.contains('i') && !inner.contains('(') && inner.contains([',', ';'])
        })
}

/// Parse a whitespace- or ';'-separated list of point literals like
/// `"(1,0) (0,1)"`.
pub fn parse_point_list(s: &str) -> Result<Vec<GroupElement<Rat>>> {
    let mut points = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
                if depth == 0 {
                    points.push(parse_point(&cur)?);
                    cur.clear();
                }
            }
            _ if depth > 0 => cur.push(ch),
            _ => {}
        }
    }
    if depth != 0 || !cur.trim().is_empty() {
        bail!("unbalanced point list {s:?}");
    }
    Ok(points)
}
