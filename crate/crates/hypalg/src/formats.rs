//! Text formats for algebras, polynomials, idempotent systems, and
//! elements.
//!
//! All formats share one lexical layer: UTF-8 text, `#` starts a comment,
//! blank lines are ignored, and scalars are written `<real>` or
//! `<real>+<real>i` / `<real>-<real>i` with no interior spaces.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraTable, Element};
use crate::polysolve::AlgebraPolynomial;
use crate::scalar::{format_scalar, parse_scalar, FieldTag, Scalar};
use crate::spectral::IdempotentSystem;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// A significant line: its 1-based number and `(column, token)` pairs.
struct Line<'a> {
    no: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut col = 0;
        for (byte, ch) in content.char_indices() {
            if ch.is_whitespace() {
                continue;
            }
            // Start of a token?
            if byte == 0 || content[..byte].ends_with(char::is_whitespace) {
                let rest = &content[byte..];
                let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
                col = content[..byte].chars().count() + 1;
                tokens.push((col, &rest[..end]));
            }
        }
        let _ = col;
        if !tokens.is_empty() {
            lines.push(Line {
                no: idx + 1,
                tokens,
            });
        }
    }
    lines
}

fn parse_scalar_token(
    field: FieldTag,
    line: usize,
    col: usize,
    token: &str,
) -> Result<Scalar, ParseError> {
    if field == FieldTag::RealField && token.ends_with('i') {
        return Err(ParseError::new(
            line,
            col,
            format!("complex scalar `{token}` in a real-field file"),
        ));
    }
    parse_scalar(token).map_err(|msg| ParseError::new(line, col, msg))
}

fn parse_usize(line: usize, col: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, col, format!("invalid {what} `{token}`")))
}

fn expect_keyword(line: &Line, keyword: &str) -> Result<(), ParseError> {
    let (col, tok) = line.tokens[0];
    if tok != keyword {
        return Err(ParseError::new(
            line.no,
            col,
            format!("expected `{keyword}`, got `{tok}`"),
        ));
    }
    Ok(())
}

fn scalars_after_colon(
    field: FieldTag,
    line: &Line,
    start: usize,
    expected: usize,
) -> Result<Vec<Scalar>, ParseError> {
    let (col, tok) = *line
        .tokens
        .get(start)
        .ok_or_else(|| ParseError::new(line.no, 1, "expected `:` before the scalars"))?;
    if tok != ":" {
        return Err(ParseError::new(
            line.no,
            col,
            format!("expected `:`, got `{tok}`"),
        ));
    }
    let rest = &line.tokens[start + 1..];
    if rest.len() != expected {
        return Err(ParseError::new(
            line.no,
            rest.first().map(|t| t.0).unwrap_or(col),
            format!("expected {expected} scalars, got {}", rest.len()),
        ));
    }
    rest.iter()
        .map(|&(c, t)| parse_scalar_token(field, line.no, c, t))
        .collect()
}

/// Parses the algebra file format:
///
/// ```text
/// field: R            # or C
/// dim: 2
/// names: 1 e          # optional
/// mul 1 1 : 1 0       # e_1 * e_1 = e_0, one line per pair 1 <= i <= j
/// ```
///
/// Products with the unit are implied by the unit law; a `mul 0 j` line is
/// rejected unless it restates that law exactly. The line for an unordered
/// pair fills both `c[i][j]` and `c[j][i]`.
pub fn parse_algebra(text: &str) -> Result<AlgebraTable, ParseError> {
    let lines = significant_lines(text);
    let total = text.lines().count().max(1);
    let mut it = lines.iter();

    let field_line = it
        .next()
        .ok_or_else(|| ParseError::new(total, 1, "missing `field:` line"))?;
    expect_keyword(field_line, "field:")?;
    let field = match field_line.tokens.get(1) {
        Some(&(_, "R")) => FieldTag::RealField,
        Some(&(_, "C")) => FieldTag::ComplexField,
        Some(&(col, other)) => {
            return Err(ParseError::new(
                field_line.no,
                col,
                format!("field must be `R` or `C`, got `{other}`"),
            ))
        }
        None => return Err(ParseError::new(field_line.no, 1, "missing field value")),
    };

    let dim_line = it
        .next()
        .ok_or_else(|| ParseError::new(total, 1, "missing `dim:` line"))?;
    expect_keyword(dim_line, "dim:")?;
    let &(dcol, dtok) = dim_line
        .tokens
        .get(1)
        .ok_or_else(|| ParseError::new(dim_line.no, 1, "missing dimension value"))?;
    let dim = parse_usize(dim_line.no, dcol, dtok, "dimension")?;
    if dim == 0 {
        return Err(ParseError::new(
            dim_line.no,
            dcol,
            "dimension must be positive",
        ));
    }

    let mut names: Option<Vec<String>> = None;
    let mut products: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
    for line in it {
        let (col0, keyword) = line.tokens[0];
        match keyword {
            "names:" => {
                if names.is_some() {
                    return Err(ParseError::new(line.no, col0, "duplicate `names:` line"));
                }
                let given: Vec<String> = line.tokens[1..].iter().map(|t| t.1.to_string()).collect();
                if given.len() != dim {
                    return Err(ParseError::new(
                        line.no,
                        col0,
                        format!("expected {dim} names, got {}", given.len()),
                    ));
                }
                names = Some(given);
            }
            "mul" => {
                let &(icol, itok) = line
                    .tokens
                    .get(1)
                    .ok_or_else(|| ParseError::new(line.no, col0, "missing basis index"))?;
                let &(jcol, jtok) = line
                    .tokens
                    .get(2)
                    .ok_or_else(|| ParseError::new(line.no, col0, "missing basis index"))?;
                let i = parse_usize(line.no, icol, itok, "basis index")?;
                let j = parse_usize(line.no, jcol, jtok, "basis index")?;
                if i >= dim || j >= dim {
                    return Err(ParseError::new(
                        line.no,
                        if i >= dim { icol } else { jcol },
                        format!("basis index out of range for dim {dim}"),
                    ));
                }
                let scalars = scalars_after_colon(field, line, 3, dim)?;
                if i == 0 || j == 0 {
                    let other = i.max(j);
                    let unit_ok = scalars
                        .iter()
                        .enumerate()
                        .all(|(k, &s)| s == Scalar::new(if k == other { 1.0 } else { 0.0 }, 0.0));
                    if !unit_ok {
                        return Err(ParseError::new(
                            line.no,
                            col0,
                            "products with the unit are fixed by the unit law; \
                             this line contradicts it",
                        ));
                    }
                    continue;
                }
                if i > j {
                    return Err(ParseError::new(
                        line.no,
                        icol,
                        "product pairs are given once with i <= j",
                    ));
                }
                if products.insert((i, j), scalars).is_some() {
                    return Err(ParseError::new(
                        line.no,
                        col0,
                        format!("duplicate product line for pair ({i}, {j})"),
                    ));
                }
            }
            other => {
                return Err(ParseError::new(
                    line.no,
                    col0,
                    format!("unexpected `{other}`; expected `names:` or `mul`"),
                ))
            }
        }
    }

    for i in 1..dim {
        for j in i..dim {
            if !products.contains_key(&(i, j)) {
                return Err(ParseError::new(
                    total,
                    1,
                    format!("missing product line for pair ({i}, {j})"),
                ));
            }
        }
    }

    let zero = Scalar::new(0.0, 0.0);
    let mut constants = vec![zero; dim * dim * dim];
    for j in 0..dim {
        constants[j * dim + j] = Scalar::new(1.0, 0.0); // c[0][j][j]
        constants[j * dim * dim + j] = Scalar::new(1.0, 0.0); // c[j][0][j]
    }
    for ((i, j), scalars) in &products {
        for (k, &s) in scalars.iter().enumerate() {
            constants[(i * dim + j) * dim + k] = s;
            constants[(j * dim + i) * dim + k] = s;
        }
    }
    Ok(AlgebraTable::new(field, dim, names, constants)
        .expect("parsed tables are structurally valid"))
}

/// Parses the polynomial file format:
///
/// ```text
/// degree: 2
/// coeff 2 : 1 0      # coefficient of w^2
/// coeff 0 : -1 0     # missing powers are zero
/// ```
pub fn parse_polynomial(text: &str, table: &AlgebraTable) -> Result<AlgebraPolynomial, ParseError> {
    let lines = significant_lines(text);
    let total = text.lines().count().max(1);
    let mut it = lines.iter();

    let deg_line = it
        .next()
        .ok_or_else(|| ParseError::new(total, 1, "missing `degree:` line"))?;
    expect_keyword(deg_line, "degree:")?;
    let &(dcol, dtok) = deg_line
        .tokens
        .get(1)
        .ok_or_else(|| ParseError::new(deg_line.no, 1, "missing degree value"))?;
    let degree = parse_usize(deg_line.no, dcol, dtok, "degree")?;

    let mut coeffs = vec![table.zero(); degree + 1];
    let mut seen = vec![false; degree + 1];
    for line in it {
        let (col0, keyword) = line.tokens[0];
        if keyword != "coeff" {
            return Err(ParseError::new(
                line.no,
                col0,
                format!("unexpected `{keyword}`; expected `coeff`"),
            ));
        }
        let &(rcol, rtok) = line
            .tokens
            .get(1)
            .ok_or_else(|| ParseError::new(line.no, col0, "missing power"))?;
        let r = parse_usize(line.no, rcol, rtok, "power")?;
        if r > degree {
            return Err(ParseError::new(
                line.no,
                rcol,
                format!("power {r} exceeds the stated degree {degree}"),
            ));
        }
        if seen[r] {
            return Err(ParseError::new(
                line.no,
                col0,
                format!("duplicate coefficient for power {r}"),
            ));
        }
        seen[r] = true;
        let scalars = scalars_after_colon(table.field(), line, 2, table.dim())?;
        coeffs[r] = Element::new(scalars);
    }
    Ok(AlgebraPolynomial::new(coeffs).expect("coefficient list is non-empty"))
}

/// Parses the idempotent system file format:
///
/// ```text
/// idempotents: 2
/// 0.5 0.5
/// 0.5 -0.5
/// ```
pub fn parse_idempotents(text: &str, table: &AlgebraTable) -> Result<Vec<Element>, ParseError> {
    let lines = significant_lines(text);
    let total = text.lines().count().max(1);
    let mut it = lines.iter();

    let head = it
        .next()
        .ok_or_else(|| ParseError::new(total, 1, "missing `idempotents:` line"))?;
    expect_keyword(head, "idempotents:")?;
    let &(ncol, ntok) = head
        .tokens
        .get(1)
        .ok_or_else(|| ParseError::new(head.no, 1, "missing idempotent count"))?;
    let n = parse_usize(head.no, ncol, ntok, "count")?;

    let mut idems = Vec::with_capacity(n);
    for _ in 0..n {
        let line = it
            .next()
            .ok_or_else(|| ParseError::new(total, 1, format!("expected {n} idempotent lines")))?;
        if line.tokens.len() != table.dim() {
            return Err(ParseError::new(
                line.no,
                line.tokens[0].0,
                format!(
                    "expected {} scalars, got {}",
                    table.dim(),
                    line.tokens.len()
                ),
            ));
        }
        let coeffs = line
            .tokens
            .iter()
            .map(|&(c, t)| parse_scalar_token(table.field(), line.no, c, t))
            .collect::<Result<Vec<_>, _>>()?;
        idems.push(Element::new(coeffs));
    }
    if let Some(extra) = it.next() {
        return Err(ParseError::new(
            extra.no,
            extra.tokens[0].0,
            "trailing content after the idempotent lines",
        ));
    }
    Ok(idems)
}

/// Parses one element given as `dim` whitespace-separated scalars.
pub fn parse_element(text: &str, table: &AlgebraTable) -> Result<Element, ParseError> {
    let lines = significant_lines(text);
    let tokens: Vec<(usize, &str)> = lines.iter().flat_map(|l| l.tokens.clone()).collect();
    if tokens.len() != table.dim() {
        return Err(ParseError::new(
            1,
            1,
            format!("expected {} scalars, got {}", table.dim(), tokens.len()),
        ));
    }
    let coeffs = tokens
        .iter()
        .map(|&(c, t)| parse_scalar_token(table.field(), 1, c, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Element::new(coeffs))
}

/// Writes an idempotent system in the format [`parse_idempotents`] reads.
pub fn write_idempotents(system: &IdempotentSystem) -> String {
    let mut out = format!("idempotents: {}\n", system.len());
    for idem in system.idempotents() {
        let row: Vec<String> = idem.coeffs().iter().map(|&z| format_scalar(z)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::spectral::Provenance;

    const BICOMPLEX: &str = "\
# the bicomplex algebra
field: C
dim: 2
names: 1 e
mul 1 1 : 1 0
";

    #[test]
    fn parses_the_bicomplex_file() {
        let t = parse_algebra(BICOMPLEX).unwrap();
        assert_eq!(t, fixtures::bicomplex());
    }

    #[test]
    fn parses_the_efg_file() {
        let text = "\
field: R
dim: 4
names: 1 e f g
mul 1 1 : 1 0 0 0
mul 1 2 : 0 0 0 1
mul 1 3 : 0 0 1 0
mul 2 2 : 1 0 0 0
mul 2 3 : 0 1 0 0
mul 3 3 : 1 0 0 0
";
        let t = parse_algebra(text).unwrap();
        assert_eq!(t, fixtures::efg());
    }

    #[test]
    fn missing_product_is_reported() {
        let text = "field: C\ndim: 2\n";
        let err = parse_algebra(text).unwrap_err();
        assert!(err.message.contains("missing product line for pair (1, 1)"));
        // A file with only the unit row still misses the pair (1, 1).
        let text = "field: C\ndim: 2\nmul 0 1 : 0 1\n";
        let err = parse_algebra(text).unwrap_err();
        assert!(err.message.contains("missing product line for pair (1, 1)"));
    }

    #[test]
    fn one_dimensional_algebra_needs_no_product_lines() {
        let t = parse_algebra("field: R\ndim: 1\n").unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.verify(1e-9).pass());
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_algebra("field: Q\ndim: 2\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 8));
        let err = parse_algebra("field: C\ndim: 2\nmul 1 1 : 1 bogus\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.column, 13);
        let err = parse_algebra("field: C\ndim: 2\nmul 1 1 : 1\n").unwrap_err();
        assert!(err.message.contains("expected 2 scalars, got 1"));
    }

    #[test]
    fn real_field_rejects_complex_scalars() {
        let err = parse_algebra("field: R\ndim: 2\nmul 1 1 : 0+1i 0\n").unwrap_err();
        assert!(err.message.contains("complex scalar"));
        assert_eq!(err.line, 3);
    }

    #[test]
    fn unit_row_is_tolerated_only_when_exact() {
        let ok = "field: C\ndim: 2\nmul 0 1 : 0 1\nmul 1 1 : 1 0\n";
        assert!(parse_algebra(ok).is_ok());
        let bad = "field: C\ndim: 2\nmul 0 1 : 1 1\nmul 1 1 : 1 0\n";
        let err = parse_algebra(bad).unwrap_err();
        assert!(err.message.contains("unit law"));
    }

    #[test]
    fn duplicate_and_swapped_pairs_are_errors() {
        let dup = "field: C\ndim: 2\nmul 1 1 : 1 0\nmul 1 1 : 1 0\n";
        assert!(parse_algebra(dup)
            .unwrap_err()
            .message
            .contains("duplicate"));
        let swapped = "field: C\ndim: 3\nmul 2 1 : 0 0 0\n";
        assert!(parse_algebra(swapped)
            .unwrap_err()
            .message
            .contains("i <= j"));
    }

    #[test]
    fn polynomial_round_trip() {
        let t = fixtures::bicomplex();
        let p = parse_polynomial("degree: 2\ncoeff 2 : 1 0\ncoeff 0 : -1 0\n", &t).unwrap();
        assert_eq!(p.coeffs().len(), 3);
        assert_eq!(p.coeffs()[1], t.zero());
        assert_eq!(p.coeffs()[2], t.unit());
        let err = parse_polynomial("degree: 1\ncoeff 2 : 1 0\n", &t).unwrap_err();
        assert!(err.message.contains("exceeds"));
    }

    #[test]
    fn idempotent_file_round_trip() {
        let t = fixtures::bicomplex();
        let system = IdempotentSystem::from_parts(
            fixtures::bicomplex_idempotents(),
            Provenance::Fixture,
            1e-10,
        );
        let text = write_idempotents(&system);
        let parsed = parse_idempotents(&text, &t).unwrap();
        assert_eq!(parsed, fixtures::bicomplex_idempotents());
        let err = parse_idempotents("idempotents: 2\n0.5 0.5\n", &t).unwrap_err();
        assert!(err.message.contains("expected 2 idempotent lines"));
    }

    #[test]
    fn element_parsing() {
        let t = fixtures::bicomplex();
        let e = parse_element("1 2+0.5i", &t).unwrap();
        assert_eq!(e.coeffs(), &[Scalar::new(1.0, 0.0), Scalar::new(2.0, 0.5)]);
        assert!(parse_element("1", &t).is_err());
    }
}
