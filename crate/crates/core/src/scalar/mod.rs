//! Exact rational functions over Q in mu, lambda and nu, where nu stands for
//! the formal symbol 2*pi*i (real parameters are fixed by conjugation, nu is
//! negated).

mod poly;

pub use poly::{Exp, Poly, NVARS};

use crate::error::{Error, Result};
use crate::expr::{self, Evaluator};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Mu = 0,
    Lambda = 1,
    Nu = 2,
}

impl Param {
    pub const ALL: [Param; 3] = [Param::Mu, Param::Lambda, Param::Nu];

    pub fn name(self) -> &'static str {
        match self {
            Param::Mu => "mu",
            Param::Lambda => "lambda",
            Param::Nu => "nu",
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        match s {
            "mu" | "μ" => Some(Param::Mu),
            "lambda" | "λ" => Some(Param::Lambda),
            "nu" | "ν" => Some(Param::Nu),
            _ => None,
        }
    }
}

/// A reduced fraction `num/den`: gcd(num, den) = 1, den has a positive
/// leading coefficient, and zero is stored as 0/1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Scalar {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn int(n: i64) -> Scalar {
        Scalar { num: Poly::constant(BigInt::from(n)), den: Poly::one() }
    }

    pub fn ratio(p: i64, q: i64) -> Scalar {
        Scalar::from_polys(Poly::constant(BigInt::from(p)), Poly::constant(BigInt::from(q)))
            .expect("non-zero denominator")
    }

    pub fn from_bigint(n: BigInt) -> Scalar {
        Scalar { num: Poly::constant(n), den: Poly::one() }
    }

    pub fn param(p: Param) -> Scalar {
        Scalar { num: Poly::var(p as usize), den: Poly::one() }
    }

    pub fn mu() -> Scalar {
        Scalar::param(Param::Mu)
    }

    pub fn lambda() -> Scalar {
        Scalar::param(Param::Lambda)
    }

    pub fn nu() -> Scalar {
        Scalar::param(Param::Nu)
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar { num: p, den: Poly::one() }
    }

    pub fn from_polys(num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        let (num, den) = if den.is_constant() || num.is_constant() {
            let g = num.content().gcd(&den.content());
            (num.div_scalar_exact(&g), den.div_scalar_exact(&g))
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        if den.leading_coeff_sign_negative() {
            Scalar { num: num.neg(), den: den.neg() }
        } else {
            Scalar { num, den }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Total degree of the numerator; the elimination pivot heuristic.
    pub fn weight(&self) -> u32 {
        self.num.total_degree() + self.den.total_degree()
    }

    pub fn uses(&self, p: Param) -> bool {
        self.num.uses_var(p as usize) || self.den.uses_var(p as usize)
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one() {
                return Scalar { num: self.num.add(&other.num), den: Poly::one() };
            }
            return Scalar::reduce(self.num.add(&other.num), self.den.clone());
        }
        if self.den.is_one() {
            return Scalar { num: self.num.mul(&other.den).add(&other.num), den: other.den.clone() };
        }
        if other.den.is_one() {
            return Scalar { num: other.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        let g = Poly::gcd(&self.den, &other.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        if num.is_zero() {
            return Scalar::zero();
        }
        let den = b1.mul(&other.den);
        if g.is_constant() {
            // gcd(num, b1*d1) = 1 already; only the shared part can cancel.
            let c = num.content().gcd(&g.content());
            if c.is_one() {
                return Scalar::sign_fixed(num, den);
            }
        }
        Scalar::reduce(num, den)
    }

    fn sign_fixed(num: Poly, den: Poly) -> Scalar {
        if den.leading_coeff_sign_negative() {
            Scalar { num: num.neg(), den: den.neg() }
        } else {
            Scalar { num, den }
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar { num: self.num.mul(&other.num), den: Poly::one() };
        }
        let g1 = Poly::gcd(&self.num, &other.den);
        let g2 = Poly::gcd(&other.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = other.den.div_exact(&g1).expect("gcd divides");
        let c = other.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Scalar::sign_fixed(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::sign_fixed(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Scalar> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let k = k as u32;
        Ok(Scalar { num: self.num.pow(k), den: self.den.pow(k) }.sign_normalized())
    }

    fn sign_normalized(self) -> Scalar {
        if self.num.is_zero() {
            return Scalar::zero();
        }
        Scalar::sign_fixed(self.num, self.den)
    }

    /// The *-conjugation: mu and lambda are real, nu = 2*pi*i is imaginary.
    pub fn conj(&self) -> Scalar {
        Scalar::sign_fixed(self.num.conj(), self.den.conj())
    }

    /// Substitutes the rational number p/q for a parameter.
    pub fn specialize(&self, param: Param, p: i64, q: i64) -> Result<Scalar> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        if param == Param::Lambda && q != 0 && (p == 0 || p.abs() == q.abs()) {
            return Err(Error::BadSpecialization("lambda".into(), format!("{p}/{q}")));
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let (p, q) = (BigInt::from(p), BigInt::from(q));
        let v = param as usize;
        let (n, dn) = self.num.subst_rational(v, &p, &q);
        let (d, dd) = self.den.subst_rational(v, &p, &q);
        // value = (n / q^dn) / (d / q^dd)
        let (n, d) = if dn >= dd {
            (n, d.scale(&num_traits::pow(q, (dn - dd) as usize)))
        } else {
            (n.scale(&num_traits::pow(q, (dd - dn) as usize)), d)
        };
        Scalar::from_polys(n, d)
    }

    /// Exact value at a rational point, as (numerator, denominator) integers.
    pub fn eval(&self, point: &[(BigInt, BigInt); NVARS]) -> Result<(BigInt, BigInt)> {
        let (a, b) = self.num.eval(point);
        let (c, d) = self.den.eval(point);
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (n, m) = (a * d, b * c);
        let g = n.gcd(&m);
        let (mut n, mut m) = (n / &g, m / &g);
        if m.is_negative() {
            n = -n;
            m = -m;
        }
        Ok((n, m))
    }

    /// s(s-1)...(s-k+1)/k!
    pub fn binomial(s: &Scalar, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for i in 0..k {
            acc = acc.mul(&s.sub(&Scalar::int(i as i64)));
        }
        let mut fact = BigInt::one();
        for i in 2..=k {
            fact *= i;
        }
        acc.mul(&Scalar::from_polys(Poly::one(), Poly::constant(fact)).expect("k! > 0"))
    }

    pub fn parse(src: &str) -> Result<Scalar> {
        ScalarEval.eval(&expr::parse(src)?)
    }
}

/// Evaluates an expression tree whose names are parameters.
pub struct ScalarEval;

impl Evaluator for ScalarEval {
    type Value = Scalar;

    fn number(&self, n: &BigInt) -> Result<Scalar> {
        Ok(Scalar::from_bigint(n.clone()))
    }

    fn name(&self, s: &str) -> Result<Scalar> {
        Param::from_name(s)
            .map(Scalar::param)
            .ok_or_else(|| Error::Parse(format!("unknown parameter {s:?}")))
    }

    fn add(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(a.add(&b))
    }

    fn neg(&self, a: Scalar) -> Result<Scalar> {
        Ok(a.neg())
    }

    fn mul(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(Scalar::mul(&a, &b))
    }

    fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Scalar::div(&a, &b)
    }

    fn pow(&self, a: Scalar, k: i64) -> Result<Scalar> {
        a.pow(k)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar::$m(self, rhs)
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar::$m(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

fn fmt_monomial(e: &Exp) -> String {
    let mut parts = Vec::new();
    for p in Param::ALL {
        match e[p as usize] {
            0 => {}
            1 => parts.push(p.name().to_string()),
            k => parts.push(format!("{}^{k}", p.name())),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().iter().enumerate() {
            let mono = fmt_monomial(e);
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.terms().len() > 1
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let d = &self.den;
        let simple = d.terms().len() == 1 && (d.is_constant() || d.terms()[0].1.is_one());
        let single_factor = simple && (d.is_constant() || fmt_monomial(&d.terms()[0].0).matches('*').count() == 0);
        if single_factor {
            write!(f, "/{d}")
        } else {
            write!(f, "/({d})")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders `Σ c_i * b_i` in the shared expression syntax. An empty basis
/// label stands for the unit.
pub fn format_combination<'a, I>(items: I) -> String
where
    I: IntoIterator<Item = (String, &'a Scalar)>,
{
    let mut out = String::new();
    for (label, c) in items {
        if c.is_zero() {
            continue;
        }
        let simple = c.den.is_one() && c.num.terms().len() == 1;
        let negative = simple && c.num.leading_coeff_sign_negative();
        let body = if simple {
            let a = if negative { c.neg() } else { c.clone() };
            if label.is_empty() {
                a.to_string()
            } else if a.is_one() {
                label
            } else {
                format!("{a}*{label}")
            }
        } else if label.is_empty() {
            format!("({c})")
        } else {
            format!("({c})*{label}")
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(src: &str) -> Scalar {
        Scalar::parse(src).unwrap()
    }

    #[test]
    fn additive_inverse() {
        assert!(s("lambda").add(&s("-lambda")).is_zero());
    }

    #[test]
    fn gcd_reduction() {
        assert_eq!(s("(1-lambda^2)/(1-lambda)"), s("1+lambda"));
    }

    #[test]
    fn mu_plus_inverse() {
        assert_eq!(s("(mu+1/mu)*mu/(1+mu^2)"), Scalar::one());
    }

    #[test]
    fn division_by_zero_is_signalled() {
        assert_eq!(s("lambda").div(&Scalar::zero()), Err(Error::DivisionByZero));
        assert!(Scalar::parse("1/(mu-mu)").is_err());
    }

    #[test]
    fn binomials() {
        let x = s("mu+1/mu");
        assert_eq!(Scalar::binomial(&x, 0), Scalar::one());
        assert_eq!(Scalar::binomial(&x, 1), x);
        assert_eq!(Scalar::binomial(&x, 2), s("(mu+1/mu)*(mu+1/mu-1)/2"));
    }

    #[test]
    fn conjugation_negates_nu_only() {
        assert_eq!(s("mu+lambda+nu").conj(), s("mu+lambda-nu"));
        assert_eq!(s("1/nu").conj(), s("-1/nu"));
    }

    #[test]
    fn lambda_specialization_guard() {
        let x = s("(1-lambda^3)/(1-lambda)");
        assert_eq!(x.specialize(Param::Lambda, 2, 1).unwrap(), Scalar::int(7));
        assert_eq!(x.specialize(Param::Lambda, 1, 2).unwrap(), Scalar::ratio(7, 4));
        for bad in [-1, 0, 1] {
            assert!(x.specialize(Param::Lambda, bad, 1).is_err());
        }
        assert_eq!(s("mu+1/mu").specialize(Param::Mu, 1, 1).unwrap(), Scalar::int(2));
    }

    #[test]
    fn display_round_trips() {
        for src in ["0", "-3/4", "mu^2*lambda-3*nu+1", "(1+mu)/(2*mu)", "-1/mu", "(mu-1)/(lambda*mu)"] {
            let x = s(src);
            assert_eq!(Scalar::parse(&x.to_string()).unwrap(), x, "{src} -> {x}");
        }
    }
}
