//! Gaussian rationals: complex numbers with rational real and imaginary parts.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact element of Q(i).
///
/// Both parts are kept as reduced `BigRational`s, so equality is structural
/// and zero is always `0/1 + 0/1 i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    re: BigRational,
    im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    /// `re_num/re_den + (im_num/im_den) i`. Panics on a zero denominator.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_parts(num, den, 0, 1)
    }

    pub fn i() -> Self {
        Self::from_parts(0, 1, 1, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        Self::real(BigRational::one())
    }
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: GaussRational) -> GaussRational {
        GaussRational {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: GaussRational) -> GaussRational {
        GaussRational {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRational::real(&self.re * &rhs.re);
        }
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: GaussRational) -> GaussRational {
        &self * &rhs
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for GaussRational {
    /// Canonical form: real part first; the imaginary part, when nonzero,
    /// follows with an explicit `+`/`-` and an `i` suffix.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        if !self.im.is_zero() {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{}i", self.im.abs())?;
        }
        Ok(())
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Nat(String),
    Slash,
    Plus,
    Minus,
    I,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Nat(s) => f.write_str(s),
            Token::Slash => f.write_str("/"),
            Token::Plus => f.write_str("+"),
            Token::Minus => f.write_str("-"),
            Token::I => f.write_str("i"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Nat(digits));
            }
            '/' => {
                chars.next();
                tokens.push(Token::Slash);
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            'i' => {
                chars.next();
                tokens.push(Token::I);
            }
            other => {
                return Err(Error::Parse {
                    token: other.to_string(),
                    message: "unexpected character".into(),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self, message: &str) -> Error {
        let token = self
            .peek()
            .map(|t| t.to_string())
            .unwrap_or_else(|| "<end>".to_string());
        Error::Parse {
            token,
            message: message.to_string(),
        }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(Token::Plus) => {
                self.pos += 1;
                Some(false)
            }
            Some(Token::Minus) => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Token::Nat(d)) => {
                let v = d.parse::<BigInt>().map_err(|_| self.err("bad integer"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected a natural number")),
        }
    }

    /// `sign? nat ('/' nat)? 'i'?` -> (value, is_imaginary)
    fn term(&mut self) -> Result<(BigRational, bool)> {
        let negative = self.sign().unwrap_or(false);
        let num = self.nat()?;
        let den = if self.peek() == Some(&Token::Slash) {
            self.pos += 1;
            let den_token = self.peek().map(|t| t.to_string());
            let den = self.nat()?;
            if den.is_zero() {
                return Err(Error::Parse {
                    token: den_token.unwrap_or_default(),
                    message: "zero denominator".into(),
                });
            }
            den
        } else {
            BigInt::one()
        };
        let imag = if self.peek() == Some(&Token::I) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut value = BigRational::new(num, den);
        if negative {
            value = -value;
        }
        Ok((value, imag))
    }
}

impl FromStr for GaussRational {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        if tokens.is_empty() {
            return Err(Error::Parse {
                token: "<empty>".into(),
                message: "empty scalar".into(),
            });
        }
        let mut p = Parser { tokens, pos: 0 };
        let (first, first_imag) = p.term()?;
        if p.peek().is_none() {
            return Ok(if first_imag {
                GaussRational::new(BigRational::zero(), first)
            } else {
                GaussRational::real(first)
            });
        }
        if first_imag {
            return Err(p.err("imaginary part must come last"));
        }
        let negative = p.sign().ok_or_else(|| p.err("expected `+` or `-`"))?;
        let (mut second, second_imag) = p.term()?;
        if !second_imag {
            return Err(p.err("second term must be imaginary"));
        }
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        if negative {
            second = -second;
        }
        Ok(GaussRational::new(first, second))
    }
}

impl serde::Serialize for GaussRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GaussRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse()
            .map_err(|e| serde::de::Error::custom(format!("scalar \"{text}\": {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_grammar_cases() {
        let z: GaussRational = "1/2+3/4i".parse().unwrap();
        assert_eq!(z, GaussRational::new(q(1, 2), q(3, 4)));
        let z: GaussRational = "-2".parse().unwrap();
        assert_eq!(z, GaussRational::from_int(-2));
        let z: GaussRational = "5/10i".parse().unwrap();
        assert_eq!(z, GaussRational::new(q(0, 1), q(1, 2)));
        let z: GaussRational = " 1 / 3 - 2 i ".parse().unwrap();
        assert_eq!(z, GaussRational::new(q(1, 3), q(-2, 1)));
        let z: GaussRational = "1+-2i".parse().unwrap();
        assert_eq!(z, GaussRational::from_parts(1, 1, -2, 1));
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "", "1/0", "i", "1+2", "2i+1", "1/2/3", "1x", "1 2", "+", "1+2i3",
        ] {
            let err = bad.parse::<GaussRational>();
            assert!(err.is_err(), "{bad:?} parsed");
        }
        match "3/0".parse::<GaussRational>() {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "0"),
            other => panic!("{other:?}"),
        }
        match "1 $ 2".parse::<GaussRational>() {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "$"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn canonical_display() {
        assert_eq!(GaussRational::from_parts(2, 4, 0, 1).to_string(), "1/2");
        assert_eq!(GaussRational::from_parts(0, 1, 1, 2).to_string(), "0+1/2i");
        assert_eq!(
            GaussRational::from_parts(-1, 1, -3, 6).to_string(),
            "-1-1/2i"
        );
        assert_eq!(GaussRational::zero().to_string(), "0");
    }

    #[test]
    fn field_operations() {
        let z = GaussRational::from_parts(1, 2, 3, 4);
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, GaussRational::one());
        assert_eq!(
            GaussRational::i() * GaussRational::i(),
            GaussRational::from_int(-1)
        );
        assert_eq!(z.conj().conj(), z);
        assert_eq!(z.conj().im(), &q(-3, 4));
        assert!(GaussRational::zero().inv().is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scalar() -> impl Strategy<Value = GaussRational> {
            (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
                .prop_map(|(a, b, c, d)| GaussRational::from_parts(a, b, c, d))
        }

        proptest! {
            #[test]
            fn display_reparses(z in scalar()) {
                let back: GaussRational = z.to_string().parse().unwrap();
                prop_assert_eq!(back, z);
            }

            #[test]
            fn distributive(a in scalar(), b in scalar(), c in scalar()) {
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }
        }
    }
}
