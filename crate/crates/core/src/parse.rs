//! Recursive-descent parser for the expression language.
//!
//! Grammar (whitespace insignificant, implicit multiplication allowed):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := coeff | var power? | '(' expr ')' power?
//! power  := '^' INT | '^[' INT ']'
//! coeff  := INT ('/' INT)?
//! ```
//!
//! Uppercase letters are dual-ring variables, lowercase are acting-ring
//! variables; mixing cases in one expression is an error.  `X^[k]` always
//! denotes the divided-power monomial.  Under the default `divided`
//! convention `X^k` is a synonym for `X^[k]`; under `ordinary` it means the
//! ring power, i.e. `k!·X^[k]`.

use crate::dpoly::{dp_power_of_linear, DPoly, Monomial, Poly, RPoly, VariableSet, MAX_EXPONENT};
use crate::field::Field;

/// How `X^k` on the dual side is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Divided,
    Ordinary,
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Convention::Divided => write!(f, "divided"),
            Convention::Ordinary => write!(f, "ordinary"),
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "divided" => Ok(Convention::Divided),
            "ordinary" => Ok(Convention::Ordinary),
            other => Err(format!("unknown power convention `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingSide {
    Dual,
    Acting,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a, F: Field> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a VariableSet,
    ctx: &'a F::Ctx,
    conv: Convention,
    side: Option<RingSide>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            Some(got) => self.err(format!("expected `{c}`, found `{got}`")),
            None => self.err(format!("expected `{c}`, found end of input")),
        }
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut val: i64 = 0;
        while let Some(c) = self.chars.get(self.pos).copied() {
            let Some(d) = c.to_digit(10) else { break };
            val = match val.checked_mul(10).and_then(|v| v.checked_add(d as i64)) {
                Some(v) => v,
                None => return self.err("integer literal too large"),
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        Ok(val)
    }

    fn set_side(&mut self, side: RingSide) -> Result<(), ParseError> {
        match self.side {
            None => {
                self.side = Some(side);
                Ok(())
            }
            Some(s) if s == side => Ok(()),
            Some(_) => self.err("mixing uppercase (dual) and lowercase (acting) variables"),
        }
    }

    /// Ring product appropriate to the side seen so far; before any variable
    /// appears every factor is constant and the choice is immaterial.
    fn ring_mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        match self.side {
            Some(RingSide::Dual) => a.dp_mul(b),
            _ => a.ordinary_mul(b),
        }
    }

    /// `k!` as a field element, built through the context so prime-field
    /// values reduce as they grow.
    fn factorial(&self, k: u32) -> Result<F, ParseError> {
        let mut acc = F::one();
        for i in 1..=k as i64 {
            let f = F::from_ratio(self.ctx, i, 1)
                .map_err(|e| ParseError { pos: self.pos, msg: e.to_string() })?;
            acc = acc * f;
        }
        Ok(acc)
    }

    /// `power := '^' INT | '^[' INT ']'`; returns `(k, bracketed)`.
    fn parse_power(&mut self) -> Result<Option<(u32, bool)>, ParseError> {
        if self.peek() != Some('^') {
            return Ok(None);
        }
        self.bump();
        let bracketed = self.peek() == Some('[');
        if bracketed {
            self.bump();
        }
        let k = self.parse_int()?;
        if k < 0 || k as u32 > MAX_EXPONENT {
            return self.err(format!("exponent out of range (max {MAX_EXPONENT})"));
        }
        if bracketed {
            self.expect(']')?;
        }
        Ok(Some((k as u32, bracketed)))
    }

    fn dp_power(&mut self, base: &DPoly<F>, k: u32) -> Result<DPoly<F>, ParseError> {
        if !base.is_zero() && (base.degree() != Some(1) || base.order() != Some(1)) {
            return self.err("divided power `^[k]` requires a linear form");
        }
        let nvars = self.vars.count();
        let mut coeffs = vec![F::zero(); nvars];
        for (m, c) in base.terms() {
            let idx = m.exps().iter().position(|&e| e == 1).unwrap();
            coeffs[idx] = c.clone();
        }
        Ok(dp_power_of_linear(&coeffs, k as usize))
    }

    fn apply_power_to_group(&mut self, base: Poly<F>, k: u32, bracketed: bool) -> Result<Poly<F>, ParseError> {
        match (self.side, bracketed, self.conv) {
            (Some(RingSide::Acting), true, _) => {
                self.err("divided powers `^[k]` exist only in the dual ring")
            }
            (Some(RingSide::Dual), true, _) | (Some(RingSide::Dual), false, Convention::Divided) => {
                self.dp_power(&base, k)
            }
            // Ordinary power = repeated ring product (dual: DP product;
            // acting or constant: ordinary product).
            _ => {
                let mut acc = Poly::constant(self.vars.count(), F::one());
                for _ in 0..k {
                    acc = self.ring_mul(&acc, &base);
                }
                Ok(acc)
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Poly<F>, ParseError> {
        let nvars = self.vars.count();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_int()?;
                let den = if self.peek() == Some('/') {
                    self.bump();
                    self.parse_int()?
                } else {
                    1
                };
                let v = F::from_ratio(self.ctx, num, den)
                    .map_err(|e| ParseError { pos: self.pos, msg: e.to_string() })?;
                Ok(Poly::constant(nvars, v))
            }
            Some('(') => {
                self.bump();
                let inner = self.parse_expr()?;
                self.expect(')')?;
                match self.parse_power()? {
                    None => Ok(inner),
                    Some((k, bracketed)) => self.apply_power_to_group(inner, k, bracketed),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.bump();
                let Some(idx) = self.vars.index_of(c) else {
                    self.pos -= 1;
                    return self.err(format!("unknown variable `{c}`"));
                };
                let side = if c.is_ascii_uppercase() { RingSide::Dual } else { RingSide::Acting };
                self.set_side(side)?;
                let power = self.parse_power()?;
                let (k, bracketed) = power.unwrap_or((1, false));
                match (side, bracketed, self.conv) {
                    (RingSide::Acting, true, _) => {
                        self.err("divided powers `^[k]` exist only in the dual ring")
                    }
                    (RingSide::Acting, false, _) => {
                        let mut exps = vec![0u32; nvars];
                        exps[idx] = k;
                        Ok(Poly::monomial(Monomial::new(exps), F::one()))
                    }
                    (RingSide::Dual, true, _) | (RingSide::Dual, false, Convention::Divided) => {
                        let mut exps = vec![0u32; nvars];
                        exps[idx] = k;
                        Ok(Poly::monomial(Monomial::new(exps), F::one()))
                    }
                    (RingSide::Dual, false, Convention::Ordinary) => {
                        // X^k = k!·X^[k]; requires k! ≠ 0 in the field.
                        let fact = self.factorial(k)?;
                        if fact.is_zero() {
                            return self.err(format!("{k}! is not invertible in this field"));
                        }
                        let mut exps = vec![0u32; nvars];
                        exps[idx] = k;
                        Ok(Poly::monomial(Monomial::new(exps), fact))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(')
    }

    fn parse_term(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            if self.peek() == Some('*') {
                self.bump();
                let f = self.parse_factor()?;
                acc = self.ring_mul(&acc, &f);
            } else if self.starts_factor() {
                let f = self.parse_factor()?;
                acc = self.ring_mul(&acc, &f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_expr(&mut self) -> Result<Poly<F>, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                self.bump();
                negate = true;
            }
            Some('+') => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }
}

/// Parses an expression, reporting which ring its variables live in.
/// Constant-only expressions report no side and default to `Dual`.
pub fn parse<F: Field>(
    text: &str,
    vars: &VariableSet,
    ctx: &F::Ctx,
    conv: Convention,
) -> Result<(Poly<F>, RingSide), ParseError> {
    let mut p = Parser::<F> {
        chars: text.chars().collect(),
        pos: 0,
        vars,
        ctx,
        conv,
        side: None,
    };
    let poly = p.parse_expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return p.err("trailing input");
    }
    // Normalize every coefficient through the field context (implicit 1s are
    // created context-free and would otherwise escape modular reduction).
    let unit = F::from_ratio(ctx, 1, 1).map_err(|e| ParseError {
        pos: 0,
        msg: e.to_string(),
    })?;
    Ok((poly.scale(&unit), p.side.unwrap_or(RingSide::Dual)))
}

/// Parses a dual-ring (uppercase) expression.
pub fn parse_dual<F: Field>(
    text: &str,
    vars: &VariableSet,
    ctx: &F::Ctx,
    conv: Convention,
) -> Result<DPoly<F>, ParseError> {
    let (poly, side) = parse(text, vars, ctx, conv)?;
    if side == RingSide::Acting {
        return Err(ParseError {
            pos: 0,
            msg: "expected a dual-ring expression (uppercase variables)".into(),
        });
    }
    Ok(poly)
}

/// Parses an acting-ring (lowercase) expression.
pub fn parse_acting<F: Field>(
    text: &str,
    vars: &VariableSet,
    ctx: &F::Ctx,
    conv: Convention,
) -> Result<RPoly<F>, ParseError> {
    let (poly, side) = parse(text, vars, ctx, conv)?;
    if side == RingSide::Dual && !poly.is_zero() && poly.degree() != Some(0) {
        return Err(ParseError {
            pos: 0,
            msg: "expected an acting-ring expression (lowercase variables)".into(),
        });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpoly::Monomial;
    use crate::field::{rat, Fp, Rat};

    fn vars() -> VariableSet {
        VariableSet::parse("x,y,z").unwrap()
    }

    fn pq(text: &str) -> DPoly<Rat> {
        parse_dual::<Rat>(text, &vars(), &(), Convention::Divided).unwrap()
    }

    #[test]
    fn thm_generator_parses() {
        let f = pq("X^[3]*Y^[3] + Z^[3]");
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(&Monomial::new(vec![3, 3, 0])), rat(1));
        assert_eq!(f.coeff(&Monomial::new(vec![0, 0, 3])), rat(1));
    }

    #[test]
    fn zero_and_constants() {
        assert!(pq("0").is_zero());
        let (c, _) = parse::<Rat>("3/4", &vars(), &(), Convention::Divided).unwrap();
        assert_eq!(c.coeff(&Monomial::one(3)), rat(3) * rat(4).inv().unwrap());
    }

    #[test]
    fn dp_power_of_sum_expands() {
        let f = pq("(X+Y)^[6]");
        assert_eq!(f.num_terms(), 7);
        assert!(f.terms().all(|(_, c)| *c == rat(1)));
    }

    #[test]
    fn divided_vs_ordinary_powers() {
        let d = pq("X^4");
        assert_eq!(d.coeff(&Monomial::new(vec![4, 0, 0])), rat(1));
        let o = parse_dual::<Rat>("X^4", &vars(), &(), Convention::Ordinary).unwrap();
        assert_eq!(o.coeff(&Monomial::new(vec![4, 0, 0])), rat(24));
        // Repeated DP product agrees: X*X*X*X = 4!·X^[4].
        let r = parse_dual::<Rat>("X*X*X*X", &vars(), &(), Convention::Ordinary).unwrap();
        assert_eq!(r, o);
    }

    #[test]
    fn ordinary_factorial_not_invertible_mod_p() {
        let err = parse_dual::<Fp>("X^7", &vars(), &7, Convention::Ordinary).unwrap_err();
        assert!(err.msg.contains("not invertible"), "{err}");
    }

    #[test]
    fn acting_side_expressions() {
        let h = parse_acting::<Rat>("y^3 - x^4", &vars(), &(), Convention::Divided).unwrap();
        assert_eq!(h.coeff(&Monomial::new(vec![0, 3, 0])), rat(1));
        assert_eq!(h.coeff(&Monomial::new(vec![4, 0, 0])), rat(-1));
        let sq = parse_acting::<Rat>("(x+y)^2", &vars(), &(), Convention::Divided).unwrap();
        assert_eq!(sq.coeff(&Monomial::new(vec![1, 1, 0])), rat(2));
    }

    #[test]
    fn error_cases() {
        assert!(parse_dual::<Rat>("X + y", &vars(), &(), Convention::Divided).is_err());
        assert!(parse_dual::<Rat>("W", &vars(), &(), Convention::Divided).is_err());
        assert!(parse_dual::<Rat>("X^[99]", &vars(), &(), Convention::Divided).is_err());
        assert!(parse_acting::<Rat>("x^[3]", &vars(), &(), Convention::Divided).is_err());
        assert!(parse_dual::<Rat>("X +", &vars(), &(), Convention::Divided).is_err());
        assert!(parse_dual::<Rat>("(X+Y*Z)^[2]", &vars(), &(), Convention::Divided).is_err());
    }

    #[test]
    fn implicit_multiplication_and_roundtrip() {
        let f = pq("X^[4]Y + Y^[4]");
        assert_eq!(f.num_terms(), 2);
        let printed = f.format(&vars(), true);
        let back = pq(&printed);
        assert_eq!(back, f);
    }
}
