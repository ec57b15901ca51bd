//! Text syntax for field elements.
//!
//! Two forms are accepted:
//! - comma-separated power-basis rationals, `1/3,0,0,0`;
//! - expressions over integers and the names `zeta`, `omega` with
//!   `+ - * /`, parentheses and integer powers `^k` (k may be negative).

use num_bigint::BigInt;

use super::{degree, Cyclo, CycloError, Rat};

pub fn parse_cyclo(n: u32, s: &str) -> Result<Cyclo, CycloError> {
    let d = degree(n)?;
    let s = s.trim();
    if s.contains(',') {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != d {
            return Err(CycloError::CoeffCount { expected: d, got: parts.len() });
        }
        let mut c = Vec::with_capacity(d);
        let mut pos = 0;
        for p in parts {
            c.push(parse_rational(p.trim(), pos)?);
            pos += p.len() + 1;
        }
        return Cyclo::from_coeffs(n, c);
    }
    let mut p = Parser { n, src: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

fn parse_rational(t: &str, pos: usize) -> Result<Rat, CycloError> {
    let bad = |msg: &str| CycloError::Parse { pos, msg: format!("{msg}: {t:?}") };
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if den == BigInt::from(0) {
        return Err(bad("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

struct Parser<'a> {
    n: u32,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> CycloError {
        CycloError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Cyclo, CycloError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Cyclo, CycloError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| CycloError::Parse { pos: at, msg: "division by zero".into() })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Cyclo, CycloError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        self.power()
    }

    fn power(&mut self) -> Result<Cyclo, CycloError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let k = self.integer()?;
            let k: i64 = k.try_into().map_err(|_| self.err("exponent too large"))?;
            let k = if neg { -k } else { k };
            return base.pow(k).map_err(|_| self.err("negative power of zero"));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, CycloError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let t = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(t.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Cyclo, CycloError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.integer()?;
                Ok(Cyclo::from_rational(self.n, Rat::from_integer(k)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    b"zeta" | b"z" => Ok(Cyclo::zeta(self.n)),
                    b"omega" | b"w" if self.n == 5 => Ok(Cyclo::omega()),
                    b"omega" | b"w" => {
                        self.pos = start;
                        Err(self.err("omega is only defined for n = 5"))
                    }
                    _ => {
                        self.pos = start;
                        Err(self.err("unknown name"))
                    }
                }
            }
            _ => Err(self.err("expected a number, a name or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_form() {
        let x = parse_cyclo(5, "1/3,0,0,0").unwrap();
        assert_eq!(x, Cyclo::from_rational(5, Rat::new(1.into(), 3.into())));
        assert!(parse_cyclo(5, "1,2,3").is_err());
        assert!(parse_cyclo(5, "1/0,0,0,0").is_err());
    }

    #[test]
    fn expression_form() {
        let x = parse_cyclo(5, "-2*zeta^-1/3").unwrap();
        let expect = Cyclo::zeta_pow(5, -1).scale(&Rat::new((-2).into(), 3.into()));
        assert_eq!(x, expect);
        let w = parse_cyclo(5, "omega^2 - omega").unwrap();
        assert!(w.is_one());
        assert_eq!(parse_cyclo(5, "1/3").unwrap(), parse_cyclo(5, "1/3,0,0,0").unwrap());
        assert_eq!(parse_cyclo(7, "zeta^7").unwrap(), Cyclo::one(7));
    }

    #[test]
    fn errors_report_positions() {
        match parse_cyclo(5, "1 + foo") {
            Err(CycloError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_cyclo(5, "(1 + 2").is_err());
        assert!(parse_cyclo(5, "1/0").is_err());
        assert!(parse_cyclo(7, "omega").is_err());
    }
}
