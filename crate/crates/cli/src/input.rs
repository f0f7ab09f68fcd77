//! The self-describing JSON input format for systems of binary forms.
//!
//! Rationals travel as strings ("p/q" or "p") so exactness survives
//! serialization; a form is either a coefficient vector or a power-sum
//! specification that gets expanded on load.

use num_rational::BigRational;
use serde::Deserialize;

use apolar_core::forms::{expand_power_sum, BinaryForm, LinearForm};

pub const SCHEMA: &str = "apolar/1";

#[derive(Debug, Deserialize)]
pub struct FormSystemDoc {
    #[serde(default)]
    pub schema: Option<String>,
    pub d: usize,
    pub forms: Vec<FormSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FormSpec {
    Coeffs { coeffs: Vec<String> },
    Powers { powers: Vec<PowerTerm> },
}

#[derive(Debug, Deserialize)]
pub struct PowerTerm {
    /// The linear form as a coordinate pair [a, b] for a*x0 + b*x1.
    pub l: [String; 2],
    /// Its coefficient in the sum.
    pub c: String,
}

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for InputError {}

pub fn parse_rational(s: &str) -> Result<BigRational, InputError> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| InputError(format!("bad rational {s:?}: {e}")))
}

/// Parses and validates a form-system document into exact forms.
pub fn parse_form_system(text: &str) -> Result<(usize, Vec<BinaryForm>), InputError> {
    let doc: FormSystemDoc =
        serde_json::from_str(text).map_err(|e| InputError(format!("bad input document: {e}")))?;
    if let Some(schema) = &doc.schema {
        if schema != SCHEMA {
            return Err(InputError(format!(
                "unsupported schema {schema:?}, expected {SCHEMA:?}"
            )));
        }
    }
    if doc.forms.is_empty() {
        return Err(InputError("input needs at least one form".to_string()));
    }
    let d = doc.d;
    if d == 0 {
        return Err(InputError("degree must be at least 1".to_string()));
    }
    let mut forms = Vec::with_capacity(doc.forms.len());
    for (idx, spec) in doc.forms.iter().enumerate() {
        let form = match spec {
            FormSpec::Coeffs { coeffs } => {
                if coeffs.len() != d + 1 {
                    return Err(InputError(format!(
                        "form {idx}: degree {d} needs {} coefficients, got {}",
                        d + 1,
                        coeffs.len()
                    )));
                }
                let parsed: Result<Vec<BigRational>, InputError> =
                    coeffs.iter().map(|s| parse_rational(s)).collect();
                BinaryForm::new(d, parsed?)
                    .map_err(|e| InputError(format!("form {idx}: {e}")))?
            }
            FormSpec::Powers { powers } => {
                if powers.is_empty() {
                    return Err(InputError(format!("form {idx}: empty power sum")));
                }
                let mut terms = Vec::with_capacity(powers.len());
                for term in powers {
                    let a = parse_rational(&term.l[0])?;
                    let b = parse_rational(&term.l[1])?;
                    let l = LinearForm::new(a, b)
                        .map_err(|e| InputError(format!("form {idx}: {e}")))?;
                    terms.push((l, parse_rational(&term.c)?));
                }
                expand_power_sum(d, &terms)
                    .map_err(|e| InputError(format!("form {idx}: {e}")))?
            }
        };
        forms.push(form);
    }
    Ok((d, forms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use apolar_core::forms::rat;

    #[test]
    fn parses_both_form_flavors() {
        let text = r#"{
            "schema": "apolar/1",
            "d": 5,
            "forms": [
                {"coeffs": ["-1", "-5", "10", "-10", "5", "1"]},
                {"powers": [
                    {"l": ["1", "0"], "c": "-6"},
                    {"l": ["0", "1"], "c": "3"},
                    {"l": ["1", "-1"], "c": "2"}
                ]}
            ]
        }"#;
        let (d, forms) = parse_form_system(text).unwrap();
        assert_eq!(d, 5);
        assert_eq!(forms.len(), 2);
        assert_eq!(
            forms[0],
            BinaryForm::from_integers(5, &[-1, -5, 10, -10, 5, 1]).unwrap()
        );
        assert_eq!(
            forms[1],
            BinaryForm::from_integers(5, &[-4, -10, 20, -20, 10, 1]).unwrap()
        );
    }

    #[test]
    fn parses_fractional_strings() {
        assert_eq!(parse_rational("3/4").unwrap(), BigRational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rejects_wrong_schema_and_shapes() {
        assert!(parse_form_system(r#"{"schema":"apolar/2","d":1,"forms":[{"coeffs":["1","1"]}]}"#)
            .is_err());
        assert!(parse_form_system(r#"{"d":1,"forms":[]}"#).is_err());
        assert!(parse_form_system(r#"{"d":2,"forms":[{"coeffs":["1","1"]}]}"#).is_err());
        assert!(parse_form_system(r#"{"d":1,"forms":[{"powers":[{"l":["0","0"],"c":"1"}]}]}"#)
            .is_err());
    }
}
