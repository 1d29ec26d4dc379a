//! The star-like bracket: a state sum valued in the free module over
//! planar circle configurations, plus its specializations.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::diagram::LinkDiagram;
use crate::error::Result;
use crate::laurent::{BiLaurent, Laurent};
use crate::resolution::{check_cap, respects_orientation, NestingForest, Resolver, Smoothing};

/// Finite `Z[A, A^-1]`-combination of nesting forests.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GammaElement(BTreeMap<NestingForest, Laurent>);

impl GammaElement {
    pub fn zero() -> Self {
        GammaElement(BTreeMap::new())
    }

    pub fn single(forest: NestingForest, coeff: Laurent) -> Self {
        let mut g = GammaElement::zero();
        g.add(forest, &coeff);
        g
    }

    pub fn add(&mut self, forest: NestingForest, coeff: &Laurent) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.0.entry(forest.clone()).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.0.remove(&forest);
        }
    }

    pub fn add_all(&mut self, other: &GammaElement) {
        for (f, p) in &other.0 {
            self.add(f.clone(), p);
        }
    }

    pub fn scale(&self, p: &Laurent) -> GammaElement {
        let mut out = GammaElement::zero();
        for (f, q) in &self.0 {
            out.add(f.clone(), &(q * p));
        }
        out
    }

    pub fn sub(&self, other: &GammaElement) -> GammaElement {
        let mut out = self.clone();
        out.add_all(&other.scale(&Laurent::monomial(-1, 0)));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, forest: &NestingForest) -> Laurent {
        self.0.get(forest).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NestingForest, &Laurent)> {
        self.0.iter()
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (forest, p)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({p})·[{forest}]")?;
        }
        Ok(())
    }
}

/// Serialized as a list of `[forestEncoding, laurent]`.
impl Serialize for GammaElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(&NestingForest, &Laurent)> = self.0.iter().collect();
        v.serialize(s)
    }
}

/// State sum over the states agreeing with `fixed` wherever it is `Some`.
/// Fixed crossings keep the marked points their smoothing deposits but no
/// longer contribute to `σ`, so this is the bracket of the partially
/// smoothed diagram.
pub fn bracket_partial(d: &LinkDiagram, fixed: &[Option<Smoothing>], cap: usize) -> Result<GammaElement> {
    let n = d.num_crossings();
    if fixed.len() != n {
        return Err(crate::Error::LengthMismatch {
            expected: n,
            got: fixed.len(),
        });
    }
    let free: Vec<usize> = (0..n).filter(|&c| fixed[c].is_none()).collect();
    check_cap(free.len(), cap)?;
    let r = Resolver::new(d);
    let loop_value = Laurent::loop_value();
    let mut out = GammaElement::zero();
    let mut smoothing: Vec<Smoothing> = fixed.iter().map(|s| s.unwrap_or(Smoothing::A)).collect();
    for t in 0..1u64 << free.len() {
        for (b, &c) in free.iter().enumerate() {
            smoothing[c] = if t >> b & 1 == 1 { Smoothing::AInv } else { Smoothing::A };
        }
        let s = r.resolve(&smoothing)?;
        let sigma = free.len() as i32 - 2 * t.count_ones() as i32;
        let coeff = &Laurent::monomial(1, sigma) * &loop_value.pow(s.d_count() as u32);
        out.add(r.nesting_forest(&s), &coeff);
    }
    Ok(out)
}

/// `<D>_st = Σ_s A^σ(s) (-A^2 - A^-2)^d(s) c(s)`.
pub fn bracket_st(d: &LinkDiagram, cap: usize) -> Result<GammaElement> {
    bracket_partial(d, &vec![None; d.num_crossings()], cap)
}

/// `V_st(D) = (-A)^(-3w) <D>_st`.
pub fn v_st(d: &LinkDiagram, cap: usize) -> Result<GammaElement> {
    Ok(bracket_st(d, cap)?.scale(&Laurent::neg_a_pow(-3 * d.writhe())))
}

/// Replaces each configuration by `X^(number of circles)`.
pub fn chi_poly(g: &GammaElement) -> BiLaurent {
    let mut out = BiLaurent::zero();
    for (f, p) in g.terms() {
        out.add_laurent(p, f.circle_count() as i32);
    }
    out
}

/// Substitutes `X = -A^2 - A^-2`, giving the classical normalized bracket
/// when applied to `chi_poly(v_st(D))`.
pub fn collapse_to_kauffman(b: &BiLaurent) -> Laurent {
    b.substitute_y(&Laurent::loop_value())
}

/// Checks `<D>_st = A <D_0>_st + A^-1 <D_1>_st` at crossing `c`, where
/// `D_0`, `D_1` are `D` with `c` smoothed and its marked points kept.
pub fn skein_recursion_holds(d: &LinkDiagram, c: usize, cap: usize) -> Result<bool> {
    let full = bracket_st(d, cap)?;
    let mut fixed = vec![None; d.num_crossings()];
    fixed[c] = Some(Smoothing::A);
    let a = bracket_partial(d, &fixed, cap)?;
    fixed[c] = Some(Smoothing::AInv);
    let b = bracket_partial(d, &fixed, cap)?;
    let mut rhs = a.scale(&Laurent::monomial(1, 1));
    rhs.add_all(&b.scale(&Laurent::monomial(1, -1)));
    Ok(rhs == full)
}

/// `V_st` of `D` with crossing `c` replaced by its oriented smoothing,
/// which leaves two Seifert points behind.
pub fn v_st_oriented_smoothing(d: &LinkDiagram, c: usize, cap: usize) -> Result<GammaElement> {
    let x = d.crossing(c);
    let s = if respects_orientation(x, Smoothing::A) { Smoothing::A } else { Smoothing::AInv };
    let mut fixed = vec![None; d.num_crossings()];
    fixed[c] = Some(s);
    let w = d.writhe() - x.sign as i32;
    Ok(bracket_partial(d, &fixed, cap)?.scale(&Laurent::neg_a_pow(-3 * w)))
}

/// Both sides of `A^4 V_st(D+) - A^-4 V_st(D-) = (A^2 - A^-2) V_st(D0)` for
/// the triple obtained by making crossing `c` positive, negative and
/// smoothed.
pub fn skein_identity_sides(d: &LinkDiagram, c: usize, cap: usize) -> Result<(GammaElement, GammaElement)> {
    let plus = if d.crossing(c).sign > 0 { d.clone() } else { d.switch_crossing(c) };
    let minus = plus.switch_crossing(c);
    let mut lhs = v_st(&plus, cap)?.scale(&Laurent::monomial(1, 4));
    lhs.add_all(&v_st(&minus, cap)?.scale(&Laurent::monomial(-1, -4)));
    let rhs = v_st_oriented_smoothing(&plus, c, cap)?.scale(&Laurent::from_terms([(2, 1), (-2, -1)]));
    Ok((lhs, rhs))
}
