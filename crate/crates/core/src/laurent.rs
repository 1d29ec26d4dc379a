//! Sparse integer Laurent polynomials in one variable (`A`) and two
//! variables (`A` and a second variable, either `X` or `H`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

/// Element of `Z[A, A^-1]`; exponent -> coefficient, never storing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent(BTreeMap<i32, i64>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut m = BTreeMap::new();
        if coeff != 0 {
            m.insert(exp, coeff);
        }
        Laurent(m)
    }

    /// `(-A)^k`
    pub fn neg_a_pow(k: i32) -> Self {
        Self::monomial(if k.rem_euclid(2) == 0 { 1 } else { -1 }, k)
    }

    /// The loop value `-A^2 - A^-2`.
    pub fn loop_value() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Laurent::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.0.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.0.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Laurent::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        Laurent::from_terms(self.terms().map(|(e, v)| (e, v * c)))
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent(self.0.iter().map(|(&e, &c)| (e + k, c)).collect())
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent(self.0.iter().map(|(&e, &c)| (e, -c)).collect())
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

fn fmt_monomial(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: i64,
    vars: &[(&str, i32)],
) -> fmt::Result {
    let sign = if coeff < 0 { "-" } else { "+" };
    if first {
        if coeff < 0 {
            f.write_str("-")?;
        }
    } else {
        write!(f, " {sign} ")?;
    }
    let abs = coeff.unsigned_abs();
    let factors: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if factors.is_empty() {
        write!(f, "{abs}")
    } else if abs == 1 {
        f.write_str(&factors.join("*"))
    } else {
        write!(f, "{abs}*{}", factors.join("*"))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.0.iter().rev().enumerate() {
            fmt_monomial(f, i == 0, *c, &[("A", *e)])?;
        }
        Ok(())
    }
}

/// Serialized as a list of `[exp, coeff]`.
impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i32, i64)> = self.terms().collect();
        v.serialize(s)
    }
}

/// Element of `Z[A^±1, Y^±1]`, where the second variable is `X` for the
/// circle-counting specialization and `H` after expanding `X = -H^2 - H^-2`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BiLaurent(BTreeMap<(i32, i32), i64>);

impl BiLaurent {
    pub fn zero() -> Self {
        BiLaurent(BTreeMap::new())
    }

    pub fn monomial(coeff: i64, a_exp: i32, y_exp: i32) -> Self {
        let mut p = BiLaurent::zero();
        p.add_term(a_exp, y_exp, coeff);
        p
    }

    pub fn add_term(&mut self, a_exp: i32, y_exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.0.entry((a_exp, y_exp)).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.0.remove(&(a_exp, y_exp));
        }
    }

    /// Adds `p(A) * Y^y_exp`.
    pub fn add_laurent(&mut self, p: &Laurent, y_exp: i32) {
        for (e, c) in p.terms() {
            self.add_term(e, y_exp, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i32, i64)> + '_ {
        self.0.iter().map(|(&(a, y), &c)| (a, y, c))
    }

    pub fn coeff(&self, a_exp: i32, y_exp: i32) -> i64 {
        self.0.get(&(a_exp, y_exp)).copied().unwrap_or(0)
    }

    /// Substitutes a Laurent polynomial (in `A`) for the second variable.
    /// Negative powers of the second variable are not allowed.
    pub fn substitute_y(&self, y: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (a, ye, c) in self.terms() {
            assert!(ye >= 0, "cannot substitute into negative power Y^{ye}");
            let term = &y.pow(ye as u32) * &Laurent::monomial(c, a);
            out += &term;
        }
        out
    }

    /// Replaces `X` by `-H^2 - H^-2`, returning a polynomial in `A` and `H`.
    pub fn expand_x_in_h(&self) -> BiLaurent {
        let x = Laurent::loop_value();
        let mut out = BiLaurent::zero();
        for (a, xe, c) in self.terms() {
            assert!(xe >= 0, "X appears with negative exponent");
            for (he, hc) in x.pow(xe as u32).terms() {
                out.add_term(a, he, c * hc);
            }
        }
        out
    }
}

impl AddAssign<&BiLaurent> for BiLaurent {
    fn add_assign(&mut self, rhs: &BiLaurent) {
        for (a, y, c) in rhs.terms() {
            self.add_term(a, y, c);
        }
    }
}

impl Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (a, y, c) in rhs.terms() {
            out.add_term(a, y, -c);
        }
        out
    }
}

impl BiLaurent {
    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(a, y), &c)) in self.0.iter().rev().enumerate() {
            fmt_monomial(f, i == 0, c, &[("A", a), (var, y)])?;
        }
        Ok(())
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "X")
    }
}

/// Serialized as a list of `[aExp, yExp, coeff]`.
impl Serialize for BiLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i32, i32, i64)> = self.terms().collect();
        v.serialize(s)
    }
}
