use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::SparsePolynomial;
use crate::error::{Error, Result};

/// Interchange form: coefficients as decimal strings, terms in descending
/// graded lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<i64>,
}

/// `x1, ..., xn`.
pub fn default_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl SparsePolynomial {
    pub fn to_json(&self, vars: &[String]) -> PolyJson {
        PolyJson {
            vars: vars.to_vec(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(e, c)| TermJson {
                    coeff: c.to_string(),
                    exps: e.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self, vars: &[String]) -> String {
        serde_json::to_string(&self.to_json(vars)).expect("polynomial JSON serializes")
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let n = j.vars.len();
        let terms = j
            .terms
            .iter()
            .map(|t| {
                let c: BigInt = t
                    .coeff
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
                Ok((t.exps.clone(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(n, terms)
    }

    pub fn from_json_str(s: &str) -> Result<(Self, Vec<String>)> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok((Self::from_json(&j)?, j.vars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = SparsePolynomial::from_i64_terms(3, &[(4, &[1, 0, 1]), (-1, &[0, 2, 0])]);
        let names = default_var_names(3);
        let s = f.to_json_string(&names);
        assert_eq!(
            s,
            r#"{"vars":["x1","x2","x3"],"terms":[{"coeff":"4","exps":[1,0,1]},{"coeff":"-1","exps":[0,2,0]}]}"#
        );
        let (g, v) = SparsePolynomial::from_json_str(&s).unwrap();
        assert_eq!((g, v), (f, names));
    }

    #[test]
    fn big_coefficients_survive() {
        let c: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let f = SparsePolynomial::monomial(vec![2], c);
        let (g, _) = SparsePolynomial::from_json_str(&f.to_json_string(&["t".into()])).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            SparsePolynomial::from_json_str(
                r#"{"vars":["x"],"terms":[{"coeff":"1.5","exps":[1]}]}"#
            ),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            SparsePolynomial::from_json_str(
                r#"{"vars":["x"],"terms":[{"coeff":"1","exps":[1,2]}]}"#
            ),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
