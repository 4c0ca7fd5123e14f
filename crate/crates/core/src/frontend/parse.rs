use std::sync::Arc;

use super::{Equation, EquationSystem, FrontendError, Letter, Symbol, Word};
use crate::groups::GroupSpec;
use crate::rings::AbelianShape;

fn err(line: usize, col: usize, message: impl Into<String>) -> FrontendError {
    FrontendError { line, col, message: message.into() }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parse a `group ...` header. Accepts a single line of text.
pub fn parse_spec(text: &str) -> Result<GroupSpec, FrontendError> {
    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        return parse_header(line, idx + 1);
    }
    Err(err(1, 1, "missing `group` header"))
}

fn col_of(line: &str, token: &str) -> usize {
    let base = line.as_ptr() as usize;
    token.as_ptr() as usize - base + 1
}

fn parse_header(line: &str, lineno: usize) -> Result<GroupSpec, FrontendError> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.first() != Some(&"group") {
        let col = tokens.first().map_or(1, |t| col_of(line, t));
        return Err(err(lineno, col, "expected `group BS <k>` or `group wreath ...`"));
    }
    match tokens.get(1).copied() {
        Some("BS") => {
            let Some(k_tok) = tokens.get(2) else {
                return Err(err(lineno, line.len() + 1, "missing base k after `group BS`"));
            };
            if tokens.len() > 3 {
                return Err(err(lineno, col_of(line, tokens[3]), "unexpected text after base"));
            }
            let k: i64 = k_tok
                .parse()
                .map_err(|_| err(lineno, col_of(line, k_tok), format!("malformed base `{k_tok}`")))?;
            if k < 1 || k > u32::MAX as i64 {
                return Err(err(lineno, col_of(line, k_tok), format!("BS base must satisfy k >= 1, got {k}")));
            }
            Ok(GroupSpec::bs(k as u32))
        }
        Some("wreath") => {
            let mut free_rank = 0usize;
            let mut torsion = Vec::new();
            let rest = &tokens[2..];
            if rest.is_empty() {
                return Err(err(lineno, line.len() + 1, "missing abelian group after `group wreath`"));
            }
            for (i, tok) in rest.iter().enumerate() {
                let col = col_of(line, tok);
                if i % 2 == 1 {
                    if *tok != "x" {
                        return Err(err(lineno, col, format!("expected `x` between factors, found `{tok}`")));
                    }
                    continue;
                }
                if *tok == "Z" {
                    free_rank += 1;
                } else if let Some(m) = tok.strip_prefix("Z^") {
                    let m: usize = m.parse().map_err(|_| err(lineno, col, format!("malformed rank in `{tok}`")))?;
                    free_rank += m;
                } else if let Some(n) = tok.strip_prefix("Z_") {
                    let n: i64 = n.parse().map_err(|_| err(lineno, col, format!("malformed order in `{tok}`")))?;
                    if n < 2 {
                        return Err(err(lineno, col, format!("cyclic order must be at least 2, got {n}")));
                    }
                    torsion.push(n as u64);
                } else {
                    return Err(err(lineno, col, format!("expected `Z^m` or `Z_n`, found `{tok}`")));
                }
            }
            if rest.len().is_multiple_of(2) {
                return Err(err(lineno, line.len() + 1, "dangling `x` in wreath header"));
            }
            Ok(GroupSpec::Wreath { shape: Arc::new(AbelianShape::new(free_rank, torsion)) })
        }
        Some(other) => Err(err(lineno, col_of(line, other), format!("unknown group family `{other}`"))),
        None => Err(err(lineno, line.len() + 1, "missing group family")),
    }
}

/// Parse equation lines (no header) against `spec`. `line_offset` is added to
/// reported line numbers.
fn parse_equations(text: &str, spec: &GroupSpec, line_offset: usize) -> Result<Vec<Equation>, FrontendError> {
    let mut equations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1 + line_offset;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq_pos) = line.find('=') else {
            return Err(err(lineno, 1, "missing `=` in equation"));
        };
        if line[eq_pos + 1..].contains('=') {
            let second = eq_pos + 1 + line[eq_pos + 1..].find('=').unwrap();
            return Err(err(lineno, second + 1, "more than one `=` in equation"));
        }
        let lhs = parse_word(&line[..eq_pos], 0, lineno, spec)?;
        let rhs = parse_word(&line[eq_pos + 1..], eq_pos + 1, lineno, spec)?;
        equations.push(Equation { lhs, rhs });
    }
    Ok(equations)
}

/// Parse equation lines against an already known group.
pub fn parse_system(text: &str, spec: &GroupSpec) -> Result<EquationSystem, FrontendError> {
    Ok(EquationSystem::new(spec.clone(), parse_equations(text, spec, 0)?))
}

/// Parse a whole input file: header line followed by equations.
pub fn parse_input(text: &str) -> Result<EquationSystem, FrontendError> {
    let mut lines = text.lines().enumerate();
    let spec = loop {
        match lines.next() {
            Some((idx, raw)) => {
                let line = strip_comment(raw);
                if line.trim().is_empty() {
                    continue;
                }
                break (parse_header(line, idx + 1)?, idx + 1);
            }
            None => return Err(err(1, 1, "missing `group` header")),
        }
    };
    let (spec, header_line) = spec;
    let body: Vec<&str> = text.lines().skip(header_line).collect();
    let equations = parse_equations(&body.join("\n"), &spec, header_line)?;
    Ok(EquationSystem::new(spec, equations))
}

fn parse_word(src: &str, offset: usize, lineno: usize, spec: &GroupSpec) -> Result<Word, FrontendError> {
    let bytes = src.as_bytes();
    let mut i = 0;
    let mut letters = Vec::new();
    let mut saw_anything = false;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let col = offset + start + 1;
        if c == b'1' {
            i += 1;
            if i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'^') {
                return Err(err(lineno, col, "`1` denotes the empty word and takes no exponent"));
            }
            saw_anything = true;
            continue;
        }
        if !c.is_ascii_alphabetic() {
            return Err(err(lineno, col, format!("unexpected character `{}`", c as char)));
        }
        while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
            i += 1;
        }
        let name = &src[start..i];
        let mut exp = 1i64;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let exp_start = i;
            if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let tok = &src[exp_start..i];
            exp = tok
                .parse()
                .map_err(|_| err(lineno, offset + exp_start + 1, format!("malformed exponent `{tok}`")))?;
            if exp == 0 {
                return Err(err(lineno, offset + exp_start + 1, "exponent must be nonzero"));
            }
        }
        let symbol = if c.is_ascii_uppercase() {
            Symbol::Var(name.to_string())
        } else {
            let canonical = spec
                .canonical_generator(name)
                .ok_or_else(|| err(lineno, col, format!("unknown generator `{name}` for {spec}")))?;
            Symbol::Gen(canonical)
        };
        letters.push(Letter { symbol, exp });
        saw_anything = true;
    }
    if !saw_anything {
        return Err(err(lineno, offset + 1, "empty side of equation (write `1` for the identity)"));
    }
    Ok(Word { letters })
}
