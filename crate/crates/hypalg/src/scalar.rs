//! Scalars of the base field and their text syntax.

use num_complex::Complex64;

/// Base field of an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTag {
    /// The real numbers. Scalars of a real algebra keep `im == 0` exactly.
    RealField,
    /// The complex numbers.
    ComplexField,
}

impl FieldTag {
    pub fn symbol(self) -> &'static str {
        match self {
            FieldTag::RealField => "R",
            FieldTag::ComplexField => "C",
        }
    }
}

/// A scalar from the base field, stored as a complex double.
///
/// Real-field values carry an exactly zero imaginary part; the parser and
/// the element constructors enforce this.
pub type Scalar = Complex64;

/// Parses a scalar token: `<real>`, `<real>+<real>i`, or `<real>-<real>i`
/// (no spaces inside the token).
pub fn parse_scalar(token: &str) -> Result<Scalar, String> {
    if let Some(body) = token.strip_suffix('i') {
        let bytes = body.as_bytes();
        // Split at the sign of the imaginary part: the last '+'/'-' that is
        // neither leading nor part of a float exponent.
        let split = (1..bytes.len())
            .rev()
            .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
        let pos = split.ok_or_else(|| {
            format!("expected `<real>+<real>i` or `<real>-<real>i`, got `{token}`")
        })?;
        let re: f64 = body[..pos]
            .parse()
            .map_err(|_| format!("invalid real part in `{token}`"))?;
        let im: f64 = body[pos..]
            .parse()
            .map_err(|_| format!("invalid imaginary part in `{token}`"))?;
        Ok(Scalar::new(re, im))
    } else {
        let re: f64 = token
            .parse()
            .map_err(|_| format!("expected a number, got `{token}`"))?;
        Ok(Scalar::new(re, 0.0))
    }
}

/// Formats a scalar in the same syntax `parse_scalar` accepts.
pub fn format_scalar(s: Scalar) -> String {
    if s.im == 0.0 {
        format!("{}", s.re)
    } else if s.im < 0.0 || s.im.is_nan() {
        format!("{}{}i", s.re, s.im)
    } else {
        format!("{}+{}i", s.re, s.im)
    }
}
