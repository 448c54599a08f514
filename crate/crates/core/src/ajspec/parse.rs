//! Operator text: sums of products of integers, `q`, `Q`, `E` and
//! parenthesized operators, with integer powers. Products are rewritten to
//! normal form as they are read, so `E*Q` becomes `q*Q*E`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{op_mul, AjError, QDiffOperator, QPoly};

pub fn parse_operator(text: &str) -> Result<QDiffOperator, AjError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AjError {
        AjError::Malformed(format!("{msg} at byte {}", self.pos))
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

    fn expr(&mut self) -> Result<QDiffOperator, AjError> {
        let mut acc = QDiffOperator::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<QDiffOperator, AjError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = op_mul(&acc, &self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QDiffOperator, AjError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let n = self.integer(true)?;
        let n: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
        if n >= 0 {
            return Ok(base.pow(n as u32));
        }
        let inv = invert(&base).ok_or_else(|| self.err("negative power of a non-invertible operator"))?;
        Ok(inv.pow(n.unsigned_abs() as u32))
    }

    fn integer(&mut self, signed: bool) -> Result<BigInt, AjError> {
        self.skip_ws();
        let start = self.pos;
        if signed && matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected an integer"))
    }

    fn atom(&mut self) -> Result<QDiffOperator, AjError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(QDiffOperator::small_q())
            }
            Some(b'Q') => {
                self.pos += 1;
                Ok(QDiffOperator::big_q())
            }
            Some(b'E') => {
                self.pos += 1;
                Ok(QDiffOperator::e())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer(false)?;
                Ok(QDiffOperator::term(QPoly::monomial(n, 0), 0, 0))
            }
            _ => Err(self.err("expected q, Q, E, an integer or '('")),
        }
    }
}

/// Inverse of `+-q^k Q^a E^b`, which is `+-q^(ab-k) Q^-a E^-b`.
fn invert(op: &QDiffOperator) -> Option<QDiffOperator> {
    let mut it = op.terms().iter();
    let (&(b, a), c) = it.next()?;
    if it.next().is_some() || c.terms().len() != 1 {
        return None;
    }
    let (&k, v) = c.terms().iter().next()?;
    if !v.abs().is_one() {
        return None;
    }
    Some(QDiffOperator::term(QPoly::monomial(v.clone(), a * b - k), -b, -a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let o = parse_operator("(q^2 - 1)*Q^-1*E^2 + 3").unwrap();
        assert_eq!(o.terms().len(), 2);
        assert_eq!(o.terms()[&(2, -1)], &QPoly::q_power(2) + &QPoly::constant(-1));
        assert_eq!(parse_operator(" - E + 1 ").unwrap(), parse_operator("1-E").unwrap());
        assert!(parse_operator("E +").is_err());
        assert!(parse_operator("(E + 1)^-1").is_err());
        assert!(parse_operator("x").is_err());
        let e = parse_operator("(q*Q*E)^-1 * q*Q*E").unwrap();
        assert_eq!(e, QDiffOperator::one());
    }
}
