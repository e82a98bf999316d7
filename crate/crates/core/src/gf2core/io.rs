//! Plain-text code format.
//!
//! ```text
//! # optional comments
//! # parity          <- optional: rows are parity checks instead of generators
//! 3 7
//! 1000111
//! 0101011
//! 0011101
//! ```
//!
//! The header gives the number of rows and the length. Rows may contain
//! spaces between bits. Text after `#` on any line is ignored.

use super::bits::{BitMatrix, BitVec};
use super::code::LinearCode;
use super::CodeError;

fn perr(line: usize, message: impl Into<String>) -> CodeError {
    CodeError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the code format described in the module docs.
pub fn parse_code(text: &str) -> Result<LinearCode, CodeError> {
    let mut parity = false;
    let mut header: Option<(usize, usize)> = None;
    let mut rows: Vec<BitVec> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let (body, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(raw[p + 1..].trim())),
            None => (raw, None),
        };
        if header.is_none()
            && body.trim().is_empty()
            && comment.is_some_and(|c| c.eq_ignore_ascii_case("parity"))
        {
            parity = true;
            continue;
        }
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        match header {
            None => {
                let nums: Vec<&str> = body.split_whitespace().collect();
                if nums.len() != 2 {
                    return Err(perr(line_no, "expected header `k n`"));
                }
                let k = nums[0]
                    .parse()
                    .map_err(|_| perr(line_no, format!("bad row count `{}`", nums[0])))?;
                let n = nums[1]
                    .parse()
                    .map_err(|_| perr(line_no, format!("bad length `{}`", nums[1])))?;
                header = Some((k, n));
            }
            Some((k, n)) => {
                let row = BitVec::parse01(body)
                    .ok_or_else(|| perr(line_no, "rows may only contain 0 and 1"))?;
                if row.len() != n {
                    return Err(perr(
                        line_no,
                        format!("row has {} entries, expected {n}", row.len()),
                    ));
                }
                if rows.len() == k {
                    return Err(perr(line_no, format!("more than {k} rows")));
                }
                rows.push(row);
            }
        }
    }
    let (k, n) = header.ok_or_else(|| perr(last_line.max(1), "missing header `k n`"))?;
    if rows.len() != k {
        return Err(perr(
            last_line.max(1),
            format!("expected {k} rows, found {}", rows.len()),
        ));
    }
    let m = BitMatrix::from_rows(n, rows);
    Ok(if parity {
        LinearCode::from_parity_check(&m)
    } else {
        LinearCode::from_generator(&m)
    })
}

/// Writes the generator basis in the code format.
#[must_use]
pub fn format_code(code: &LinearCode) -> String {
    let mut out = format!("{} {}\n", code.dim(), code.len());
    for r in code.generator().rows() {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

/// Parses one `0`/`1` word per non-empty line, ignoring `#` comments.
pub fn parse_word_list(text: &str) -> Result<Vec<BitVec>, CodeError> {
    let mut out: Vec<BitVec> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let w = BitVec::parse01(body)
            .ok_or_else(|| perr(idx + 1, "rows may only contain 0 and 1"))?;
        if let Some(first) = out.first() {
            if first.len() != w.len() {
                return Err(perr(idx + 1, "rows have different lengths"));
            }
        }
        out.push(w);
    }
    Ok(out)
}
