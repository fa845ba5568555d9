//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := sign? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := rational | var | '(' expr ')'
//! rational := int ('/' nat)?
//! ```
//!
//! A leading sign is accepted so that printed polynomials such as `-X + 1`
//! parse back. Multiplication is always explicit: `X*Z`, never `XZ`.
//! Positions in errors are 1-based character columns.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Coeff, PolyError, Polynomial, Ring};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(PolyError::Syntax {
                    position: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, pos));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    ring: &'a Ring,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut negate_first = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate_first = true;
                self.at += 1;
            }
            Some(Tok::Plus) => self.at += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate_first {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn nat(&mut self) -> Result<BigInt, PolyError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            _ => self.syntax("expected a natural number"),
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            let pos = self.pos();
            let e = self.nat()?;
            let e: u32 = e.try_into().map_err(|_| PolyError::Syntax {
                position: pos,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, PolyError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let mut den = BigInt::from(1);
                if let Some(Tok::Slash) = self.peek() {
                    self.at += 1;
                    let dpos = self.pos();
                    den = self.nat()?;
                    if den.is_zero() {
                        return Err(PolyError::Syntax {
                            position: dpos,
                            message: "zero denominator".into(),
                        });
                    }
                }
                let ch = self.ring.characteristic();
                let c = Coeff::from_ratio(&n, &den, ch).ok_or(PolyError::BadCharacteristic {
                    position: pos,
                    characteristic: ch,
                })?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(PolyError::UnknownVariable {
                        name,
                        position: pos,
                    }),
                }
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => self.syntax("expected `)`"),
                }
            }
            Some(t) => self.syntax(format!("unexpected token {t:?}")),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses `text` as an element of `ring`.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial, PolyError> {
    let toks = lex(text)?;
    let end = text.chars().count() + 1;
    let mut p = Parser {
        toks,
        at: 0,
        ring,
        end,
    };
    let f = p.expr()?;
    if p.at != p.toks.len() {
        return match p.peek() {
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                p.syntax("implicit multiplication is not allowed; write `*`")
            }
            _ => p.syntax("unexpected trailing input"),
        };
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, PolyRing};
    use proptest::prelude::*;

    fn ring() -> Ring {
        PolyRing::new(&["X", "Y", "Z"], 0).unwrap()
    }

    #[test]
    fn parses_example_monomial() {
        let r = ring();
        let f = parse_poly("X*Z", &r).unwrap();
        assert_eq!(
            f,
            Polynomial::term(&r, Monomial::new(vec![1, 0, 1]), r.coeff(1))
        );
        assert!(parse_poly("0", &r).unwrap().is_zero());
        assert!(parse_poly("(X+Y)^2 - X^2 - Y^2 - 2*X*Y", &r)
            .unwrap()
            .is_zero());
        assert_eq!(parse_poly("3/6*X", &r).unwrap().to_string(), "1/2*X");
    }

    #[test]
    fn reports_errors_with_positions() {
        let r = ring();
        assert_eq!(
            parse_poly("X + W", &r),
            Err(PolyError::UnknownVariable {
                name: "W".into(),
                position: 5
            })
        );
        assert!(matches!(
            parse_poly("XZ", &r),
            Err(PolyError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_poly("2X", &r),
            Err(PolyError::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            parse_poly("(X + Y", &r),
            Err(PolyError::Syntax { position: 7, .. })
        ));
        assert!(matches!(
            parse_poly("X ^ Y", &r),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("X # Y", &r),
            Err(PolyError::Syntax { position: 3, .. })
        ));
        let f5 = PolyRing::new(&["X"], 5).unwrap();
        assert_eq!(
            parse_poly("1/10*X", &f5),
            Err(PolyError::BadCharacteristic {
                position: 1,
                characteristic: 5
            })
        );
        assert_eq!(parse_poly("1/3*X", &f5).unwrap().to_string(), "2*X");
    }

    fn small_poly(ch: u32) -> impl Strategy<Value = Polynomial> {
        let r = PolyRing::new(&["X", "Y", "Z"], ch).unwrap();
        prop::collection::vec(
            (prop::collection::vec(0u32..4, 3), -20i64..20, 1i64..5),
            0..6,
        )
        .prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter().map(|(e, n, d)| {
                    let c = Coeff::from_ratio(&BigInt::from(n), &BigInt::from(d), ch)
                        .unwrap_or(Coeff::zero(ch));
                    (Monomial::new(e), c)
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in small_poly(0), g in small_poly(7)) {
            prop_assert_eq!(parse_poly(&f.to_string(), f.ring()).unwrap(), f.clone());
            prop_assert_eq!(parse_poly(&g.to_string(), g.ring()).unwrap(), g.clone());
        }

        #[test]
        fn ring_axioms(f in small_poly(0), g in small_poly(0), h in small_poly(0)) {
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn projections_decompose(f in small_poly(0)) {
            let w = crate::poly::Grading::new(vec![1, 1, -1]);
            let mut sum = Polynomial::zero(f.ring());
            for d in w.degrees(&f).unwrap() {
                let part = crate::poly::project_degree(&f, d, &w).unwrap();
                prop_assert_eq!(crate::poly::project_degree(&part, d, &w).unwrap(), part.clone());
                sum = &sum + &part;
            }
            prop_assert_eq!(sum, f);
        }
    }
}
