//! Sparse multivariate polynomials with rational coefficients over a weighted
//! polynomial ring, plus a small text parser.
//!
//! Monomials are ordered lexicographically on exponent vectors, so the first
//! variable dominates. Every ordered listing in the crate (monomial bases,
//! printed polynomials, residue bases) runs from the largest monomial down.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent at byte {pos} is not a non-negative integer")]
    BadExponent { pos: usize },
    #[error("unknown variable `{0}`")]
    NoSuchVariable(String),
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("polynomial is not weighted homogeneous; degrees present: {0:?}")]
    NonHomogeneous(Vec<u64>),
}

/// Variable names together with their positive integer weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedRing {
    variables: Vec<String>,
    weights: Vec<u64>,
}

impl WeightedRing {
    pub fn new<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        weights: impl IntoIterator<Item = u64>,
    ) -> Result<Arc<Self>, PolyError> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        let weights: Vec<u64> = weights.into_iter().collect();
        if variables.is_empty() {
            return Err(PolyError::InvalidRing(
                "at least one variable is required".into(),
            ));
        }
        if variables.len() != weights.len() {
            return Err(PolyError::InvalidRing(format!(
                "{} variables but {} weights",
                variables.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(PolyError::InvalidRing("weights must be positive".into()));
        }
        for (i, v) in variables.iter().enumerate() {
            if !is_identifier(v) {
                return Err(PolyError::InvalidRing(format!("bad variable name `{v}`")));
            }
            if variables[..i].contains(v) {
                return Err(PolyError::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(WeightedRing { variables, weights }))
    }

    /// Parses the `vars;weights` form used on the command line, e.g.
    /// `x0,x1,y,z;1,1,2,5`.
    pub fn parse_decl(decl: &str) -> Result<Arc<Self>, PolyError> {
        let (vars, weights) = decl
            .split_once(';')
            .ok_or_else(|| PolyError::InvalidRing("expected `vars;weights`".into()))?;
        let vars: Vec<&str> = vars.split(',').map(str::trim).collect();
        let weights = weights
            .split(',')
            .map(|w| {
                w.trim()
                    .parse::<u64>()
                    .map_err(|_| PolyError::InvalidRing(format!("bad weight `{}`", w.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vars, weights)
    }

    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight_sum(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Weighted degree of a monomial.
    pub fn degree_of(&self, m: &Monomial) -> u64 {
        m.0.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| u64::from(e) * w)
            .sum()
    }

    /// `vars;weights` declaration string.
    pub fn decl(&self) -> String {
        let w: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        format!("{};{}", self.variables.join(","), w.join(","))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

/// Exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Renders with the ring's variable names, `1` for the empty product.
    pub fn display(&self, ring: &WeightedRing) -> String {
        let factors: Vec<String> = self
            .0
            .iter()
            .zip(ring.variables())
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| {
                if e == 1 {
                    v.clone()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

/// All monomials of weighted degree exactly `k`, largest (lex) first.
pub fn monomials_of_degree(ring: &WeightedRing, k: u64) -> Vec<Monomial> {
    fn go(
        weights: &[u64],
        idx: usize,
        remaining: u64,
        cur: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if idx == weights.len() {
            if remaining == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = weights[idx];
        let mut e = remaining / w;
        loop {
            cur.push(e as u32);
            go(weights, idx + 1, remaining - e * w, cur, out);
            cur.pop();
            if e == 0 {
                break;
            }
            e -= 1;
        }
    }
    let mut out = Vec::new();
    go(
        ring.weights(),
        0,
        k,
        &mut Vec::with_capacity(ring.arity()),
        &mut out,
    );
    out
}

/// Polynomial over the rationals attached to a weighted ring. No zero
/// coefficients are ever stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<WeightedRing>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<WeightedRing>) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<WeightedRing>, c: BigRational) -> Self {
        Self::from_terms(ring, [(Monomial::one(ring.arity()), c)])
    }

    pub fn variable(ring: &Arc<WeightedRing>, i: usize) -> Self {
        Self::from_terms(ring, [(Monomial::var(ring.arity(), i), BigRational::one())])
    }

    /// Builds a polynomial, combining repeated monomials and dropping zeros.
    ///
    /// Panics if a monomial does not match the ring arity.
    pub fn from_terms(
        ring: &Arc<WeightedRing>,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(
                m.0.len(),
                ring.arity(),
                "monomial arity does not match ring"
            );
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms, largest monomial first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The weighted degree shared by every term.
    pub fn weighted_degree(&self) -> Result<u64, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut degrees: Vec<u64> = self.terms.keys().map(|m| self.ring.degree_of(m)).collect();
        degrees.sort_unstable();
        degrees.dedup();
        if degrees.len() == 1 {
            Ok(degrees[0])
        } else {
            Err(PolyError::NonHomogeneous(degrees))
        }
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial, PolyError> {
        let i = self
            .ring
            .index_of(var)
            .ok_or_else(|| PolyError::NoSuchVariable(var.to_string()))?;
        Ok(self.partial_derivative_at(i))
    }

    /// Formal derivative with respect to the `i`-th variable.
    pub fn partial_derivative_at(&self, i: usize) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            (Monomial(e), c * BigRational::from_integer(BigInt::from(k)))
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, v)| (m.clone(), v * c)),
        )
    }

    /// Reorders variables: variable `i` of `self` becomes variable `perm[i]`.
    /// The target ring must be supplied since weights may move with the names.
    pub fn permute_variables(&self, perm: &[usize], target: &Arc<WeightedRing>) -> Polynomial {
        assert_eq!(perm.len(), self.ring.arity());
        assert_eq!(target.arity(), self.ring.arity());
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; perm.len()];
            for (i, &p) in perm.iter().enumerate() {
                e[p] = m.0[i];
            }
            (Monomial(e), c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    /// Moves this polynomial into another ring by sending each exponent
    /// vector through `map`.
    pub fn map_monomials(
        &self,
        target: &Arc<WeightedRing>,
        map: impl Fn(&Monomial) -> Monomial,
    ) -> Polynomial {
        Polynomial::from_terms(target, self.terms.iter().map(|(m, c)| (map(m), c.clone())))
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials live in different rings"
        );
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical form: terms largest first, ` + ` / ` - ` separators, unit
/// coefficients omitted.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let is_const = m.0.iter().all(|&e| e == 0);
            if is_const {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(&self.ring))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), m.display(&self.ring))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<WeightedRing>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        digits.parse().ok()
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<(), PolyError> {
        self.skip_ws();
        let start = self.pos;
        if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphabetic()) {
            return self.syntax("expected a variable");
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let idx = self
            .ring
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable {
                name: name.to_string(),
                pos: start,
            })?;
        let mut e = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            e = self
                .integer()
                .and_then(|v| u32::try_from(v).ok())
                .ok_or(PolyError::BadExponent { pos: at })?;
            // reject things like x^2.5 or x^-1 explicitly
            if matches!(self.src.get(self.pos), Some(b'.')) {
                return Err(PolyError::BadExponent { pos: at });
            }
        }
        exps[idx] = exps[idx]
            .checked_add(e)
            .ok_or(PolyError::BadExponent { pos: start })?;
        Ok(())
    }

    fn term(&mut self) -> Result<(Monomial, BigRational), PolyError> {
        let mut exps = vec![0u32; self.ring.arity()];
        let mut coeff = BigRational::one();
        let mut need_factor = true;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.integer().expect("digit present");
            let mut c = BigRational::from_integer(num);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let den = match self.integer() {
                    Some(d) => d,
                    None => return self.syntax("expected denominator"),
                };
                if den.is_zero() {
                    return self.syntax("zero denominator");
                }
                c /= BigRational::from_integer(den);
            }
            coeff = c;
            need_factor = false;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                need_factor = true;
            }
        }
        if need_factor {
            self.factor(&mut exps)?;
            while self.peek() == Some(b'*') {
                self.pos += 1;
                self.factor(&mut exps)?;
            }
        }
        Ok((Monomial(exps), coeff))
    }

    fn expression(&mut self) -> Result<Polynomial, PolyError> {
        let mut poly = Polynomial::zero(self.ring);
        let mut sign = BigRational::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => self.pos += 1,
            None => return self.syntax("empty polynomial"),
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            poly.add_term(m, c * &sign);
            match self.peek() {
                None => break,
                Some(b'+') => sign = BigRational::one(),
                Some(b'-') => sign = -BigRational::one(),
                Some(c) => return self.syntax(format!("unexpected `{}`", c as char)),
            }
            self.pos += 1;
        }
        Ok(poly)
    }
}

/// Parses a polynomial in the ring's variables. Accepts integer and
/// `p/q` rational coefficients only.
pub fn parse_polynomial(src: &str, ring: &Arc<WeightedRing>) -> Result<Polynomial, PolyError> {
    Parser {
        src: src.as_bytes(),
        pos: 0,
        ring,
    }
    .expression()
}

/// Parses a polynomial file: optional `vars: ...; weights: ...` header line,
/// then the polynomial text. Without a header, `fallback` supplies the ring.
pub fn parse_polynomial_file(
    text: &str,
    fallback: Option<&Arc<WeightedRing>>,
) -> Result<Polynomial, PolyError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with("vars:") {
        let (header, body) = trimmed.split_once('\n').unwrap_or((trimmed, ""));
        let mut vars = None;
        let mut weights = None;
        for part in header.split(';') {
            let part = part.trim();
            if let Some(v) = part.strip_prefix("vars:") {
                vars = Some(v.trim().to_string());
            } else if let Some(w) = part.strip_prefix("weights:") {
                weights = Some(w.trim().to_string());
            } else if !part.is_empty() {
                return Err(PolyError::InvalidRing(format!(
                    "unrecognized header field `{part}`"
                )));
            }
        }
        let (Some(vars), Some(weights)) = (vars, weights) else {
            return Err(PolyError::InvalidRing(
                "header needs both vars: and weights:".into(),
            ));
        };
        let ring = WeightedRing::parse_decl(&format!("{vars};{weights}"))?;
        parse_polynomial(body, &ring)
    } else {
        let ring = fallback
            .ok_or_else(|| PolyError::InvalidRing("no ring declaration supplied".into()))?;
        parse_polynomial(text, ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn horikawa_ring() -> Arc<WeightedRing> {
        WeightedRing::new(["x0", "x1", "y", "z"], [1, 1, 2, 5]).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn parses_fermat_horikawa() {
        let r = horikawa_ring();
        let p = parse_polynomial("z^2 - x0^10 - x1^10 - y^5", &r).unwrap();
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.coefficient(&Monomial(vec![0, 0, 0, 2])), q(1));
        assert_eq!(p.coefficient(&Monomial(vec![0, 0, 5, 0])), q(-1));
        assert_eq!(p.weighted_degree().unwrap(), 10);
    }

    #[test]
    fn zero_and_cancellation() {
        let r = horikawa_ring();
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        assert!(parse_polynomial("x0*x1 - x1*x0", &r).unwrap().is_zero());
    }

    #[test]
    fn rational_coefficients() {
        let r = horikawa_ring();
        let p = parse_polynomial("3/4*x0^2 + 1/4 x0^2", &r);
        // juxtaposition is not part of the grammar
        assert!(matches!(p, Err(PolyError::Syntax { .. })));
        let p = parse_polynomial("3/4*x0^2 + 1/4*x0^2 - 2", &r).unwrap();
        assert_eq!(p.to_string(), "x0^2 - 2");
    }

    #[test]
    fn parse_errors() {
        let r = horikawa_ring();
        assert!(matches!(
            parse_polynomial("x0 + w", &r),
            Err(PolyError::UnknownVariable { ref name, pos: 5 }) if name == "w"
        ));
        assert!(matches!(
            parse_polynomial("x0^y", &r),
            Err(PolyError::BadExponent { pos: 3 })
        ));
        assert!(matches!(
            parse_polynomial("x0^2.5", &r),
            Err(PolyError::BadExponent { .. })
        ));
        assert!(matches!(
            parse_polynomial("x0 +", &r),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("", &r),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("x0 ) y", &r),
            Err(PolyError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_polynomial("1/0", &r),
            Err(PolyError::Syntax { .. })
        ));
    }

    #[test]
    fn degrees() {
        let r = horikawa_ring();
        let x0 = parse_polynomial("x0", &r).unwrap();
        assert_eq!(x0.weighted_degree(), Ok(1));
        let mixed = parse_polynomial("x0 + y", &r).unwrap();
        assert_eq!(
            mixed.weighted_degree(),
            Err(PolyError::NonHomogeneous(vec![1, 2]))
        );
        assert_eq!(
            Polynomial::zero(&r).weighted_degree(),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn derivatives() {
        let r = horikawa_ring();
        let p = |s| parse_polynomial(s, &r).unwrap();
        assert_eq!(p("y^5").partial_derivative("y").unwrap(), p("5*y^4"));
        assert_eq!(
            p("z^2 - x0^10 - x1^10 - y^5")
                .partial_derivative("z")
                .unwrap(),
            p("2*z")
        );
        assert_eq!(
            p("x0^3*x1").partial_derivative("x0").unwrap(),
            p("3*x0^2*x1")
        );
        assert_eq!(
            p("x0").partial_derivative("t"),
            Err(PolyError::NoSuchVariable("t".into()))
        );
    }

    #[test]
    fn monomial_enumeration() {
        let r = horikawa_ring();
        let deg1 = monomials_of_degree(&r, 1);
        assert_eq!(
            deg1,
            vec![Monomial(vec![1, 0, 0, 0]), Monomial(vec![0, 1, 0, 0])]
        );
        assert_eq!(monomials_of_degree(&r, 0), vec![Monomial::one(4)]);
        let p3 = WeightedRing::new(["a", "b", "c", "d"], [1, 1, 1, 1]).unwrap();
        assert_eq!(monomials_of_degree(&p3, 2).len(), 10);
        let odd = WeightedRing::new(["a"], [2]).unwrap();
        assert!(monomials_of_degree(&odd, 3).is_empty());
    }

    #[test]
    fn monomial_listing_is_strictly_decreasing() {
        let r = horikawa_ring();
        let ms = monomials_of_degree(&r, 21);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert!(ms.iter().all(|m| r.degree_of(m) == 21));
    }

    #[test]
    fn ring_validation() {
        assert!(WeightedRing::new(Vec::<String>::new(), []).is_err());
        assert!(WeightedRing::new(["x", "x"], [1, 1]).is_err());
        assert!(WeightedRing::new(["x"], [0]).is_err());
        assert!(WeightedRing::new(["1x"], [1]).is_err());
        assert!(WeightedRing::parse_decl("x0,x1,y,z;1,1,2,5").is_ok());
        assert!(WeightedRing::parse_decl("x0,x1;1").is_err());
    }

    #[test]
    fn file_header() {
        let p = parse_polynomial_file(
            "vars: x0,x1,y,z; weights: 1,1,2,5\nz^2 - y^5 - x0^10 - x1^10\n",
            None,
        )
        .unwrap();
        assert_eq!(p.ring().weights(), &[1, 1, 2, 5]);
        assert_eq!(p.weighted_degree(), Ok(10));
        assert!(parse_polynomial_file("x0", None).is_err());
    }

    #[test]
    fn printing() {
        let r = horikawa_ring();
        let p = parse_polynomial("-y^5 + z^2 - x1^10 - x0^10 + 1/3*x0^2*y^4", &r).unwrap();
        assert_eq!(p.to_string(), "-x0^10 + 1/3*x0^2*y^4 - x1^10 - y^5 + z^2");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }
}
