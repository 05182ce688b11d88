use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::lexer::{tokenize, Tok, Token};
use super::{ParseError, ParseErrorKind, SourceSpan};
use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::diffpoly::{DiffMonomial, DiffPolynomial};
use crate::equation::{EquationSpec, RhsTerm};
use crate::exppoly::ExpPolynomial;

/// Polynomial in `f, f', f'', …` with exponential-polynomial coefficients,
/// keyed by the trimmed exponent vector.
#[derive(Clone, Debug, PartialEq)]
struct Value(BTreeMap<Vec<u32>, ExpPolynomial>);

impl Value {
    fn konst(x: ExpPolynomial) -> Self {
        let mut m = BTreeMap::new();
        if !x.is_zero() {
            m.insert(Vec::new(), x);
        }
        Self(m)
    }

    fn f(order: u32) -> Self {
        let mut key = vec![0; order as usize + 1];
        key[order as usize] = 1;
        Self(BTreeMap::from([(key, ExpPolynomial::one())]))
    }

    fn add_entry(&mut self, key: Vec<u32>, c: ExpPolynomial) {
        let sum = match self.0.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.0.insert(key, sum);
        }
    }

    fn add(mut self, o: Value) -> Self {
        for (k, c) in o.0 {
            self.add_entry(k, c);
        }
        self
    }

    fn neg(self) -> Self {
        Self(self.0.into_iter().map(|(k, c)| (k, -c)).collect())
    }

    fn mul(&self, o: &Value) -> Self {
        let mut out = Self(BTreeMap::new());
        for (k1, c1) in &self.0 {
            for (k2, c2) in &o.0 {
                let mut key = vec![0; k1.len().max(k2.len())];
                for (i, e) in k1.iter().enumerate() {
                    key[i] += e;
                }
                for (i, e) in k2.iter().enumerate() {
                    key[i] += e;
                }
                out.add_entry(key, c1 * c2);
            }
        }
        out
    }

    fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::konst(ExpPolynomial::one()), |acc, _| acc.mul(self))
    }

    /// The value when it does not mention `f`.
    fn f_free(&self) -> Option<ExpPolynomial> {
        match self.0.len() {
            0 => Some(ExpPolynomial::zero()),
            1 => self.0.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn as_rational_constant(&self) -> Option<Rational> {
        self.f_free()?
            .as_coefficient()
            .map_or_else(|| self.0.is_empty().then(Rational::zero), |c| c.as_rational().and_then(|r| r.as_constant()))
    }
}

/// Syntactic shape of one factor in a product, used to spot the `a`-term.
#[derive(Clone, Debug, PartialEq)]
enum Factor {
    Constant(Rational),
    F { order: u32, power: u32 },
    Other,
}

/// One additive term. `value` already carries the sign; `negative` records
/// it for the factor shape.
struct Term {
    value: Value,
    factors: Vec<Factor>,
    negative: bool,
    span: SourceSpan,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

fn syntax(span: SourceSpan, msg: impl Into<String>) -> ParseError {
    ParseError::new(ParseErrorKind::Syntax, span, msg)
}

fn shape(span: SourceSpan, msg: impl Into<String>) -> ParseError {
    ParseError::new(ParseErrorKind::Shape, span, msg)
}

impl Parser {
    fn new(src: &str) -> PResult<Self> {
        Ok(Self { toks: tokenize(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span
    }

    fn prev_span(&self) -> SourceSpan {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> PResult<Token> {
        if *self.peek() == want {
            Ok(self.bump())
        } else {
            Err(syntax(self.span(), format!("expected {}, found {}", want.describe(), self.peek().describe())))
        }
    }

    /// Signed additive terms in source order.
    fn expr(&mut self) -> PResult<Vec<Term>> {
        let mut terms = Vec::new();
        let mut negated = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let mut t = self.term()?;
            if negated {
                t.value = t.value.neg();
                t.negative = !t.negative;
            }
            terms.push(t);
            negated = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        Ok(terms)
    }

    fn term(&mut self) -> PResult<Term> {
        let start = self.span();
        let (mut value, first, mut negated) = self.unary()?;
        let mut last_was_number = matches!(first, Factor::Constant(_)) && self.prev_is_number();
        let mut factors = vec![first];
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let (v, f, neg) = self.unary()?;
                    negated ^= neg;
                    last_was_number = matches!(f, Factor::Constant(_)) && self.prev_is_number();
                    value = value.mul(&v);
                    factors.push(f);
                }
                Tok::Slash => {
                    let slash = self.bump().span;
                    let (v, f, neg) = self.unary()?;
                    negated ^= neg;
                    let span = slash.join(self.prev_span());
                    let inv = invert(&v, span)?;
                    value = value.mul(&inv);
                    factors.push(match f {
                        Factor::Constant(c) => Factor::Constant(c.recip()),
                        _ => Factor::Other,
                    });
                    last_was_number = false;
                }
                Tok::Z | Tok::F(_) | Tok::Exp if last_was_number => {
                    let (v, f, _) = self.unary()?;
                    value = value.mul(&v);
                    factors.push(f);
                    last_was_number = false;
                }
                _ => break,
            }
        }
        let span = start.join(self.prev_span());
        let value = if negated { value.neg() } else { value };
        Ok(Term { value, factors, negative: negated, span })
    }

    fn prev_is_number(&self) -> bool {
        matches!(self.toks[self.pos.saturating_sub(1)].tok, Tok::Num(_))
    }

    /// Returns the value, its factor shape, and whether a leading unary minus
    /// was absorbed into the sign.
    fn unary(&mut self) -> PResult<(Value, Factor, bool)> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let (v, f, neg) = self.unary()?;
            return Ok((v, f, !neg));
        }
        let (v, f) = self.power()?;
        Ok((v, f, false))
    }

    fn power(&mut self) -> PResult<(Value, Factor)> {
        let (base, factor) = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok((base, factor));
        }
        self.bump();
        let t = self.bump();
        let Tok::Num(e) = t.tok else {
            return Err(syntax(t.span, format!("expected an exponent, found {}", t.tok.describe())));
        };
        let e: u32 = e.try_into().map_err(|_| syntax(t.span, "exponent too large"))?;
        if e > 64 {
            return Err(syntax(t.span, "exponent too large"));
        }
        let factor = match factor {
            Factor::F { order, power } => Factor::F { order, power: power * e },
            Factor::Constant(c) => Factor::Constant(num_traits::pow(c, e as usize)),
            Factor::Other => Factor::Other,
        };
        Ok((base.pow(e), factor))
    }

    fn atom(&mut self) -> PResult<(Value, Factor)> {
        let t = self.bump();
        match t.tok {
            Tok::Num(n) => {
                let c = Rational::from_integer(n);
                Ok((Value::konst(ExpPolynomial::constant(c.clone())), Factor::Constant(c)))
            }
            Tok::Z => Ok((Value::konst(ExpPolynomial::rational(RationalFunction::z())), Factor::Other)),
            Tok::F(order) => Ok((Value::f(order), Factor::F { order, power: 1 })),
            Tok::Exp => {
                self.expect(Tok::LParen)?;
                let inner_start = self.span();
                let inner = self.expr()?;
                let inner_span = inner_start.join(self.prev_span());
                self.expect(Tok::RParen)?;
                let g = exponent_polynomial(sum(inner), inner_span)?;
                Ok((Value::konst(ExpPolynomial::term(RationalFunction::one(), g)), Factor::Other))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                let v = sum(inner);
                let factor = match v.as_rational_constant() {
                    Some(c) => Factor::Constant(c),
                    None => Factor::Other,
                };
                Ok((v, factor))
            }
            other => Err(syntax(t.span, format!("expected a term, found {}", other.describe()))),
        }
    }
}

fn sum(terms: Vec<Term>) -> Value {
    terms.into_iter().fold(Value(BTreeMap::new()), |acc, t| acc.add(t.value))
}

fn exponent_polynomial(v: Value, span: SourceSpan) -> PResult<Polynomial> {
    let bad = || ParseError::new(ParseErrorKind::NonPolynomialExponent, span, "exp argument must be a polynomial in z");
    let x = v.f_free().ok_or_else(bad)?;
    if x.is_zero() {
        return Ok(Polynomial::zero());
    }
    let c = x.as_coefficient().ok_or_else(bad)?;
    let r = c.as_rational().ok_or_else(bad)?;
    r.as_polynomial().cloned().ok_or_else(bad)
}

/// `1/v` for an `f`-free single term.
fn invert(v: &Value, span: SourceSpan) -> PResult<Value> {
    let x = v.f_free().ok_or_else(|| shape(span, "cannot divide by an expression in f"))?;
    if x.is_zero() {
        return Err(syntax(span, "division by zero"));
    }
    let (g, c) = x.single_term().ok_or_else(|| shape(span, "can only divide by a single term"))?;
    let (u, r) = c.single_term().ok_or_else(|| shape(span, "can only divide by a single term"))?;
    let inv = r.recip().expect("nonzero");
    Ok(Value::konst(ExpPolynomial::term(inv, -g - Polynomial::constant(u.clone()))))
}

fn finish(p: &mut Parser) -> PResult<()> {
    if *p.peek() == Tok::Eof {
        Ok(())
    } else {
        Err(syntax(p.span(), format!("unexpected {}", p.peek().describe())))
    }
}

/// Parses a function such as `exp(z) + z + 1`.
///
/// ```
/// use expsol::frontend::{parse_function, print_function};
///
/// let f = parse_function("(z/(z+1))*exp(z^2+2)").unwrap();
/// assert_eq!(print_function(&f), "(z/(z+1))*exp(z^2 + 2)");
/// ```
pub fn parse_function(src: &str) -> Result<ExpPolynomial, ParseError> {
    let mut p = Parser::new(src)?;
    let start = p.span();
    let terms = p.expr()?;
    let span = start.join(p.prev_span());
    finish(&mut p)?;
    sum(terms).f_free().ok_or_else(|| shape(span, "a function must not mention f"))
}

/// Parses `lhs = rhs` into an equation.
///
/// ```
/// use expsol::algebra::int;
/// use expsol::frontend::parse_equation;
///
/// let spec = parse_equation("f^6 + 2*f^4*f' = exp(4z) + (4/3)*exp(10z/3)").unwrap();
/// assert_eq!((spec.n(), spec.a().clone(), spec.k()), (6, int(2), 2));
/// assert!(spec.pd().is_zero());
/// ```
pub fn parse_equation(src: &str) -> Result<EquationSpec, ParseError> {
    let mut p = Parser::new(src)?;
    let lhs_start = p.span();
    let lhs = p.expr()?;
    let lhs_span = lhs_start.join(p.prev_span());
    p.expect(Tok::Eq)?;
    let rhs = p.expr()?;
    finish(&mut p)?;

    let total = lhs.iter().fold(Value(BTreeMap::new()), |acc, t| acc.add(t.value.clone()));
    let n = total
        .0
        .keys()
        .filter(|k| k.len() == 1)
        .map(|k| k[0])
        .max()
        .ok_or_else(|| shape(lhs_span, "left side has no pure power of f"))?;
    if n < 2 {
        return Err(shape(lhs_span, format!("leading power f^{n} must be at least f^2")));
    }
    if total.0[&vec![n]] != ExpPolynomial::one() {
        return Err(shape(lhs_span, format!("f^{n} must have coefficient 1")));
    }

    let mut a = Rational::zero();
    let mut rest = Value(BTreeMap::new());
    for t in lhs {
        match a_term_scale(&t.factors, n) {
            Some(c) if t.negative => a -= c,
            Some(c) => a += c,
            None => rest = rest.add(t.value),
        }
    }
    rest.0.remove(&vec![n]);

    let mut pd = DiffPolynomial::zero();
    for (key, c) in rest.0 {
        let r = c
            .as_coefficient()
            .and_then(|s| s.as_rational())
            .ok_or_else(|| shape(lhs_span, format!("coefficient {c} of a differential monomial is not rational")))?;
        pd.add_monomial(DiffMonomial::new(r, key));
    }

    let mut terms = Vec::new();
    for t in rhs {
        let x = t.value.f_free().ok_or_else(|| shape(t.span, "right side must not mention f"))?;
        for (g, c) in x.terms() {
            if g.is_zero() {
                return Err(shape(t.span, "right-hand term without exp"));
            }
            let (u, r) = c.single_term().ok_or_else(|| shape(t.span, "coefficient is not a rational function"))?;
            terms.push(RhsTerm::new(r.clone(), g + &Polynomial::constant(u.clone())));
        }
    }
    if terms.is_empty() {
        return Err(shape(p.prev_span(), "right side has no exponential terms"));
    }
    EquationSpec::new(n, a, pd, terms).map_err(|e| shape(lhs_span.join(p.prev_span()), e.to_string()))
}

/// For `c₁*…*f^{m₁}*…*f'` with `Σ m = n-2`, the product of the constants.
fn a_term_scale(factors: &[Factor], n: u32) -> Option<Rational> {
    if n < 3 {
        return None;
    }
    let mut scale = Rational::one();
    let mut fs = Vec::new();
    for f in factors {
        match f {
            Factor::Constant(c) => scale *= c,
            Factor::F { order, power } => fs.push((*order, *power)),
            Factor::Other => return None,
        }
    }
    let (&(last_order, last_power), init) = fs.split_last()?;
    let base: u32 = init.iter().map(|&(o, p)| if o == 0 { p } else { u32::MAX }).fold(0, u32::saturating_add);
    (last_order == 1 && last_power == 1 && !init.is_empty() && base == n - 2).then_some(scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn binomial_example() {
        let s = parse_equation("f^3 + 4*f'*f + f' - f = exp(3z) + 7*exp(2z) + 7*exp(z)").unwrap();
        assert_eq!(s.n(), 3);
        assert_eq!(s.a(), &int(0));
        assert_eq!(s.pd().len(), 3);
        assert_eq!(s.pd().coeff(&[1, 1]), Some(&RationalFunction::constant(int(4))));
        assert_eq!(s.pd().coeff(&[1]), Some(&RationalFunction::constant(int(-1))));
        assert_eq!(s.k(), 3);
    }

    #[test]
    fn a_term_detection() {
        let s = parse_equation("f^6 + 2*f^4*f' = exp(4z) + (4/3)*exp(10z/3)").unwrap();
        assert_eq!((s.n(), s.a().clone()), (6, int(2)));
        assert!(s.pd().is_zero());
        assert_eq!(s.rhs()[1].p, RationalFunction::constant(rat(4, 3)));
        let s = parse_equation("f^7 - 7/2*f^5*f' - 7/2*f*f' - 1 = exp(7z) + 7/2*exp(6z) + 7/2*exp(5z)").unwrap();
        assert_eq!(s.a(), &rat(-7, 2));
        assert_eq!(s.pd().degree(), 2);
        // f' first is not the a-term pattern.
        let s = parse_equation("f^6 + 2*f'*f^4 = exp(4z)").unwrap();
        assert_eq!(s.a(), &int(0));
        assert_eq!(s.pd().coeff(&[4, 1]), Some(&RationalFunction::constant(int(2))));
        // Split powers still count.
        let s = parse_equation("f^6 + 2*f^2*f^2*f' = exp(4z)").unwrap();
        assert_eq!(s.a(), &int(2));
    }

    #[test]
    fn unit_folding_in_rhs() {
        let s = parse_equation("f^4 + f' = exp(3)*(z/(z+1))^4*exp(4z^2 + 5) + exp(z^2 + 2)").unwrap();
        assert_eq!(s.rhs()[0].alpha, Polynomial::from_ints(&[8, 0, 4]));
        assert_eq!(s.rhs()[1].alpha, Polynomial::from_ints(&[2, 0, 1]));
    }

    #[test]
    fn implicit_multiplication() {
        assert_eq!(parse_function("10z/3").unwrap(), parse_function("(10/3)*z").unwrap());
        assert_eq!(parse_function("2exp(z)").unwrap(), parse_function("2*exp(z)").unwrap());
    }

    #[test]
    fn division_by_exponential() {
        assert_eq!(parse_function("1/exp(z)").unwrap(), parse_function("exp(-z)").unwrap());
        assert_eq!(parse_function("exp(z)/(2z)").unwrap(), parse_function("(1/(2*z))*exp(z)").unwrap());
    }

    #[test]
    fn errors_carry_spans() {
        let e = parse_equation("f^2 = exp(z) +").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
        assert_eq!(e.span.start, 14);
        let e = parse_function("exp(exp(z))").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonPolynomialExponent);
        assert_eq!((e.span.start, e.span.end), (4, 10));
        let e = parse_equation("2*f^2 = exp(z)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Shape);
        assert_eq!(parse_equation("f^2 = z").unwrap_err().kind, ParseErrorKind::Shape);
        assert_eq!(parse_equation("f' = exp(z)").unwrap_err().kind, ParseErrorKind::Shape);
        assert_eq!(parse_function("1/(z-z)").unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(parse_function("f + 1").unwrap_err().kind, ParseErrorKind::Shape);
    }

    #[test]
    fn zeroth_derivative_is_f() {
        assert_eq!(parse_equation("f^(0)^3 = exp(z)").unwrap(), parse_equation("f^3 = exp(z)").unwrap());
    }
}
