//! Text form of [`AnalyticFunction`].
//!
//! ```text
//! function := "exp" | "sin" | "cos" | "log" | "recip"
//!           | "pow:" integer
//!           | "poly:[" coeff ("," coeff)* "]" ("@" number)?
//!           | "scale(" coeff "," function ")"
//!           | "add(" function "," function ")"
//!           | "mul(" function "," function ")"
//!           | "compose(" function "," function ")"
//! coeff    := number | "[" number "," number "," number "," number "]"
//! ```
//!
//! `@c` sets a real expansion center for `poly`. Whitespace between tokens is
//! ignored on input; output never contains any, so formatting a parsed
//! canonical string reproduces it byte for byte.

use std::str::FromStr;

use crate::analytic::AnalyticFunction;
use crate::error::{CalcError, Result};
use crate::quaternion::Quaternion;

const MAX_DEPTH: usize = 64;

impl FromStr for AnalyticFunction {
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let f = p.function(0)?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(f)
    }
}

pub(crate) fn to_spec_string(f: &AnalyticFunction) -> String {
    let mut out = String::new();
    write_function(f, &mut out);
    out
}

fn write_function(f: &AnalyticFunction, out: &mut String) {
    use AnalyticFunction::*;
    match f {
        Exp => out.push_str("exp"),
        Sin => out.push_str("sin"),
        Cos => out.push_str("cos"),
        Log => out.push_str("log"),
        Recip => out.push_str("recip"),
        Pow(n) => out.push_str(&format!("pow:{n}")),
        Series { coeffs, center } => {
            out.push_str("poly:[");
            for (i, c) in coeffs.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_coeff(*c, out);
            }
            out.push(']');
            if *center != 0.0 {
                out.push_str(&format!("@{center}"));
            }
        }
        Scaled { coeff, inner } => {
            out.push_str("scale(");
            write_coeff(*coeff, out);
            out.push(',');
            write_function(inner, out);
            out.push(')');
        }
        Sum(a, b) => write_binary("add", a, b, out),
        Product(a, b) => write_binary("mul", a, b, out),
        Compose { outer, inner } => write_binary("compose", outer, inner, out),
    }
}

fn write_binary(name: &str, a: &AnalyticFunction, b: &AnalyticFunction, out: &mut String) {
    out.push_str(name);
    out.push('(');
    write_function(a, out);
    out.push(',');
    write_function(b, out);
    out.push(')');
}

fn write_coeff(c: Quaternion, out: &mut String) {
    if c.vector() == Quaternion::ZERO {
        out.push_str(&format!("{}", c.q0));
    } else {
        out.push_str(&format!("[{},{},{},{}]", c.q0, c.q1, c.q2, c.q3));
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> CalcError {
        CalcError::Parse(format!("{msg} at byte {} of {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !pred(c))
            .unwrap_or(self.rest().len());
        self.pos += len;
        &self.src[start..start + len]
    }

    fn number(&mut self) -> Result<f64> {
        let tok =
            self.take_while(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'));
        let v: f64 = tok
            .parse()
            .map_err(|_| self.error(&format!("bad number {tok:?}")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.error("non-finite number"))
        }
    }

    fn integer(&mut self) -> Result<i32> {
        let tok = self.take_while(|c| c.is_ascii_digit() || matches!(c, '+' | '-'));
        tok.parse()
            .map_err(|_| self.error(&format!("bad integer {tok:?}")))
    }

    fn coeff(&mut self) -> Result<Quaternion> {
        if self.eat('[') {
            let mut a = [0.0; 4];
            for (i, slot) in a.iter_mut().enumerate() {
                if i > 0 {
                    self.expect(',')?;
                }
                *slot = self.number()?;
            }
            self.expect(']')?;
            Ok(Quaternion::from(a))
        } else {
            Ok(Quaternion::real(self.number()?))
        }
    }

    fn function(&mut self, depth: usize) -> Result<AnalyticFunction> {
        use AnalyticFunction::*;
        if depth > MAX_DEPTH {
            return Err(self.error("nesting too deep"));
        }
        let name = self.take_while(|c| c.is_ascii_lowercase());
        Ok(match name {
            "exp" => Exp,
            "sin" => Sin,
            "cos" => Cos,
            "log" => Log,
            "recip" => Recip,
            "pow" => {
                self.expect(':')?;
                Pow(self.integer()?)
            }
            "poly" => {
                self.expect(':')?;
                self.expect('[')?;
                let mut coeffs = vec![self.coeff()?];
                while self.eat(',') {
                    coeffs.push(self.coeff()?);
                }
                self.expect(']')?;
                let center = if self.eat('@') { self.number()? } else { 0.0 };
                AnalyticFunction::series(coeffs, center)
            }
            "scale" => {
                self.expect('(')?;
                let c = self.coeff()?;
                self.expect(',')?;
                let f = self.function(depth + 1)?;
                self.expect(')')?;
                AnalyticFunction::scaled(c, f)
            }
            "add" | "mul" | "compose" => {
                self.expect('(')?;
                let a = self.function(depth + 1)?;
                self.expect(',')?;
                let b = self.function(depth + 1)?;
                self.expect(')')?;
                match name {
                    "add" => AnalyticFunction::sum(a, b),
                    "mul" => AnalyticFunction::product(a, b).map_err(|_| {
                        self.error("right factor of mul must have real coefficients")
                    })?,
                    _ => AnalyticFunction::compose(a, b).map_err(|_| {
                        self.error("inner function of compose must have real coefficients")
                    })?,
                }
            }
            "" => return Err(self.error("expected a function name")),
            other => return Err(self.error(&format!("unknown function {other:?}"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use AnalyticFunction::*;

    #[test]
    fn parses_named_functions() {
        for (s, f) in [
            ("exp", Exp),
            ("sin", Sin),
            ("cos", Cos),
            ("log", Log),
            ("recip", Recip),
            ("pow:3", Pow(3)),
            ("pow:-2", Pow(-2)),
        ] {
            assert_eq!(s.parse::<AnalyticFunction>().unwrap(), f);
        }
    }

    #[test]
    fn parses_poly_with_mixed_coefficients() {
        let f: AnalyticFunction = "poly:[1, [0,0,1,0], -2.5]".parse().unwrap();
        assert_eq!(
            f,
            AnalyticFunction::poly(vec![
                Quaternion::real(1.0),
                Quaternion::J,
                Quaternion::real(-2.5)
            ])
        );
        let g: AnalyticFunction = "poly:[1,2]@0.5".parse().unwrap();
        assert_eq!(
            g,
            AnalyticFunction::series(vec![1.0.into(), 2.0.into()], 0.5)
        );
    }

    #[test]
    fn canonical_strings_round_trip_exactly() {
        for s in [
            "exp",
            "pow:0",
            "pow:-7",
            "poly:[1,2,3]",
            "poly:[0.1,[0,1,0,0],[1.5,-2,3e-7,4]]",
            "poly:[1]@-0.25",
            "scale([0,0,1,0],pow:2)",
            "add(sin,cos)",
            "mul(exp,poly:[1,1])",
            "compose(recip,add(pow:2,poly:[1]))",
        ] {
            let f: AnalyticFunction = s.parse().unwrap();
            let back = f.to_string();
            let again: AnalyticFunction = back.parse().unwrap();
            assert_eq!(again, f, "{s}");
            assert_eq!(again.to_string(), back);
        }
        assert_eq!(
            "poly:[1,2,3]"
                .parse::<AnalyticFunction>()
                .unwrap()
                .to_string(),
            "poly:[1,2,3]"
        );
        assert_eq!(
            "scale([0,0,1,0],pow:2)"
                .parse::<AnalyticFunction>()
                .unwrap()
                .to_string(),
            "scale([0,0,1,0],pow:2)"
        );
    }

    #[test]
    fn rejects_malformed() {
        for s in [
            "",
            "tan",
            "pow",
            "pow:",
            "pow:2.5",
            "poly:[]",
            "poly:[1,]",
            "poly:[[1,2,3]]",
            "poly:[inf]",
            "poly:[1e999]",
            "exp extra",
            "mul(exp,poly:[[0,1,0,0]])",
            "compose(exp,scale([0,1,0,0],sin))",
            "add(exp,",
        ] {
            assert!(s.parse::<AnalyticFunction>().is_err(), "{s:?} should fail");
        }
        let deep = format!("{}exp{}", "add(exp,".repeat(200), ")".repeat(200));
        assert!(deep.parse::<AnalyticFunction>().is_err());
    }

    fn coeff() -> impl Strategy<Value = Quaternion> {
        prop_oneof![
            any::<f64>()
                .prop_filter("finite", |v| v.is_finite())
                .prop_map(Quaternion::real),
            prop::array::uniform4(-1e6f64..1e6).prop_map(Quaternion::from),
        ]
    }

    fn real_function() -> impl Strategy<Value = AnalyticFunction> {
        let leaf = prop_oneof![
            Just(Exp),
            Just(Sin),
            Just(Cos),
            Just(Log),
            Just(Recip),
            any::<i32>().prop_map(Pow),
            (prop::collection::vec(-1e3f64..1e3, 1..5), -5.0f64..5.0).prop_map(|(c, center)| {
                AnalyticFunction::series(c.into_iter().map(Quaternion::real).collect(), center)
            }),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| AnalyticFunction::sum(a, b)),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| AnalyticFunction::product(a, b).unwrap()),
                (inner.clone(), inner).prop_map(|(a, b)| AnalyticFunction::compose(a, b).unwrap()),
            ]
        })
    }

    fn function() -> impl Strategy<Value = AnalyticFunction> {
        prop_oneof![
            real_function(),
            (coeff(), real_function()).prop_map(|(c, f)| AnalyticFunction::scaled(c, f)),
            prop::collection::vec(coeff(), 1..5).prop_map(AnalyticFunction::poly),
        ]
    }

    proptest! {
        #[test]
        fn display_then_parse_is_identity(f in function()) {
            let s = f.to_string();
            let back: AnalyticFunction = s.parse().unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.to_string(), s);
        }

        #[test]
        fn parser_never_panics(s in "\\PC{0,40}") {
            let _ = s.parse::<AnalyticFunction>();
        }
    }
}
