//! Text, LaTeX and JSON renderings of a [`KernelFormula`].

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{KernelFormula, PI_EXPONENT};
use crate::error::{Error, Result};
use crate::intmat::IntMatrix2;
use crate::poly::{BiLaurentPoly, Notation};

fn matrix_json(m: &IntMatrix2) -> Value {
    let r = m.rows();
    let num = |x: &BigInt| -> Value {
        serde_json::from_str(&x.to_string()).expect("integers are valid JSON numbers")
    };
    json!([
        [num(&r[0][0]), num(&r[0][1])],
        [num(&r[1][0]), num(&r[1][1])]
    ])
}

fn matrix_from_json(v: &Value) -> Result<IntMatrix2> {
    let bad = || Error::Parse(format!("expected a 2x2 integer matrix, got {v}"));
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
    let mut out = [[0i64; 2]; 2];
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
        for (j, e) in row.iter().enumerate() {
            out[i][j] = e.as_i64().ok_or_else(bad)?;
        }
    }
    Ok(IntMatrix2::from_rows(out))
}

impl KernelFormula {
    pub fn to_json(&self) -> Value {
        json!({
            "B": matrix_json(&self.matrix),
            "A": matrix_json(&self.reduced),
            "detA": self.det_a,
            "scale": { "num": 1, "den": self.det_a, "pi_exp": PI_EXPONENT },
            "numerator": self.numerator.to_json(),
            "denominator": self
                .denom_factors
                .iter()
                .map(|(f, p)| json!({ "terms": f.to_json(), "power": p }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |name: &str| {
            v.get(name)
                .ok_or_else(|| Error::Parse(format!("kernel JSON is missing \"{name}\"")))
        };
        let det_a = field("detA")?
            .as_i64()
            .filter(|d| *d > 0)
            .ok_or_else(|| Error::Parse("detA must be a positive integer".into()))?;
        let scale = field("scale")?;
        if scale.get("num").and_then(Value::as_i64) != Some(1)
            || scale.get("den").and_then(Value::as_i64) != Some(det_a)
            || scale.get("pi_exp").and_then(Value::as_i64) != Some(PI_EXPONENT as i64)
        {
            return Err(Error::Parse(format!("unexpected scale {scale}")));
        }
        let denom_factors = field("denominator")?
            .as_array()
            .ok_or_else(|| Error::Parse("denominator must be an array".into()))?
            .iter()
            .map(|d| {
                let terms = d
                    .get("terms")
                    .ok_or_else(|| Error::Parse("denominator factor without terms".into()))?;
                let power = d
                    .get("power")
                    .and_then(Value::as_u64)
                    .and_then(|p| u32::try_from(p).ok())
                    .ok_or_else(|| Error::Parse("denominator factor without power".into()))?;
                Ok((BiLaurentPoly::from_json(terms)?, power))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KernelFormula {
            matrix: matrix_from_json(field("B")?)?,
            reduced: matrix_from_json(field("A")?)?,
            det_a,
            numerator: BiLaurentPoly::from_json(field("numerator")?)?,
            denom_factors,
        })
    }

    pub fn to_latex(&self) -> String {
        let denominator: String = self
            .denom_factors
            .iter()
            .map(|(f, p)| format!("\\left({}\\right)^{{{p}}}", f.render(Notation::Latex, true)))
            .collect();
        format!(
            "\\frac{{1}}{{{}\\pi^2}}\\cdot\\frac{{{}}}{{{}}}",
            self.det_a,
            self.numerator.render(Notation::Latex, false),
            denominator
        )
    }

    pub fn to_text(&self) -> String {
        let scale = if self.det_a == 1 {
            "1/pi^2".to_string()
        } else {
            format!("1/({} pi^2)", self.det_a)
        };
        let denominator = self
            .denom_factors
            .iter()
            .map(|(f, p)| format!("({})^{p}", f.render(Notation::Plain, true)))
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "B = {}\nA = {}\nK(z,w) = {scale} * g(t1,t2) / ({denominator}),  t_j = z_j conj(w_j)\ng(t1,t2) = {}\n",
            self.matrix, self.reduced, self.numerator
        )
    }
}

#[cfg(test)]
mod tests {
    use crate::intmat::IntMatrix2;
    use crate::kernel::{general_kernel, KernelFormula};

    #[test]
    fn json_shape() {
        let f = general_kernel(&IntMatrix2::new(1, -2, -1, 4)).unwrap();
        let v = f.to_json();
        assert_eq!(v["detA"], 2);
        assert_eq!(
            v["numerator"].to_string(),
            r#"[[0,8,"1"],[1,4,"1"],[1,5,"4"],[1,6,"1"],[2,2,"1"]]"#
        );
        assert_eq!(v["scale"].to_string(), r#"{"num":1,"den":2,"pi_exp":-2}"#);
        assert_eq!(v["A"].to_string(), "[[4,2],[1,1]]");
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(
            keys,
            ["B", "A", "detA", "scale", "numerator", "denominator"]
        );
        assert_eq!(KernelFormula::from_json(&v).unwrap(), f);
    }

    #[test]
    fn latex_shape() {
        let f = general_kernel(&IntMatrix2::new(1, -2, -1, 4)).unwrap();
        assert_eq!(
            f.to_latex(),
            "\\frac{1}{2\\pi^2}\\cdot\\frac{t_2^{8} + t_1 t_2^{4} + 4t_1 t_2^{5} + t_1 t_2^{6} + t_1^{2} t_2^{2}}\
             {\\left(t_2^{2} - t_1\\right)^{2}\\left(t_1 - t_2^{4}\\right)^{2}}"
        );
    }

    #[test]
    fn text_shape() {
        let f = general_kernel(&IntMatrix2::new(4, -1, -1, 3)).unwrap();
        let text = f.to_text();
        assert!(text.contains("1/(11 pi^2)"));
        assert!(text.contains("(t2 - t1^4)^2 (t1 - t2^3)^2"));
        assert!(text.contains("121 t1^4 t2^3"));
    }
}
