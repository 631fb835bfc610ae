//! Elements of the Novikov field over F2 with rational exponents.
//!
//! An element is a finite set of exponents (each present term has
//! coefficient 1), optionally known only modulo `T^order`.

use std::collections::BTreeSet;
use std::fmt;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::CoeffError;
use crate::rational::{fmt_rat, Rat};

/// A Novikov series `Σ T^{λ}` over F2, exact or truncated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Novikov {
    terms: Vec<Rat>,
    order: Option<Rat>,
}

impl Novikov {
    /// The exact zero.
    pub fn zero() -> Self {
        Novikov { terms: Vec::new(), order: None }
    }

    /// The exact unit `T^0`.
    pub fn one() -> Self {
        Self::monomial(Rat::zero())
    }

    /// The exact monomial `T^e`.
    pub fn monomial(e: Rat) -> Self {
        Novikov { terms: vec![e], order: None }
    }

    /// `O(T^order)`: an unknown element of valuation at least `order`.
    pub fn truncated_zero(order: Rat) -> Self {
        Novikov { terms: Vec::new(), order: Some(order) }
    }

    /// Sum of monomials with mod-2 multiplicity.
    pub fn from_exponents<I: IntoIterator<Item = Rat>>(exps: I) -> Self {
        let mut set = BTreeSet::new();
        for e in exps {
            if !set.remove(&e) {
                set.insert(e);
            }
        }
        Novikov { terms: set.into_iter().collect(), order: None }
    }

    /// Drops all terms with exponent at least `order` and records the truncation.
    pub fn truncate(mut self, order: &Rat) -> Self {
        self.terms.retain(|e| e < order);
        self.order = Some(match self.order {
            Some(o) if &o < order => o,
            _ => order.clone(),
        });
        self
    }

    /// Exponents of present terms, strictly increasing.
    pub fn exponents(&self) -> &[Rat] {
        &self.terms
    }

    /// Truncation order, `None` for exact elements.
    pub fn order(&self) -> Option<&Rat> {
        self.order.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// True only for the exact zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.order.is_none()
    }

    /// True when no known term survives (exact zero or `O(T^n)`).
    pub fn is_zero_to_precision(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest present exponent.
    pub fn valuation(&self) -> Option<&Rat> {
        self.terms.first()
    }

    /// Highest present exponent.
    pub fn top(&self) -> Option<&Rat> {
        self.terms.last()
    }

    /// Lower bound for the valuation: the lowest term, else the order, else none (exact zero).
    fn valuation_bound(&self) -> Option<&Rat> {
        self.terms.first().or(self.order.as_ref())
    }

    /// Number of present terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sends every present term to `T^0`, keeping the count mod 2.
    pub fn specialize_at_one(&self) -> bool {
        self.terms.len() % 2 == 1
    }

    /// Multiplies by the monomial `T^e`.
    pub fn shift(&self, e: &Rat) -> Self {
        Novikov {
            terms: self.terms.iter().map(|t| t + e).collect(),
            order: self.order.as_ref().map(|o| o + e),
        }
    }

    /// Sum in characteristic 2: symmetric difference of supports.
    pub fn add(&self, other: &Self) -> Self {
        let order = min_order(self.order.as_ref(), other.order.as_ref());
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    out.push(a.clone());
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        if let Some(o) = &order {
            out.retain(|e| e < o);
        }
        Novikov { terms: out, order }
    }

    /// In-place sum.
    pub fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    /// Product: convolution of supports with mod-2 multiplicity.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Novikov::zero();
        }
        let mut order: Option<Rat> = None;
        if let (Some(o), Some(v)) = (&self.order, other.valuation_bound()) {
            order = Some(o + v);
        }
        if let (Some(o), Some(v)) = (&other.order, self.valuation_bound()) {
            let cand = o + v;
            order = Some(match order {
                Some(cur) if cur < cand => cur,
                _ => cand,
            });
        }
        let mut set = BTreeSet::new();
        for a in &self.terms {
            for b in &other.terms {
                let e = a + b;
                if order.as_ref().is_some_and(|o| &e >= o) {
                    continue;
                }
                if !set.remove(&e) {
                    set.insert(e);
                }
            }
        }
        Novikov { terms: set.into_iter().collect(), order }
    }

    /// Inverse modulo `T^order`: returns `b` with `self * b ≡ 1 (mod T^order)`.
    pub fn inverse(&self, order: &Rat) -> Result<Self, CoeffError> {
        let v = match self.valuation() {
            Some(v) => v.clone(),
            None => return Err(CoeffError::ZeroInverse),
        };
        // self = T^v (1 + r) with r of positive valuation.
        let unit = self.shift(&-v.clone());
        let r = unit.add(&Novikov::one());
        let rel_order = order.clone();
        let r_trunc = r.truncate(&rel_order);
        let mut sum = Novikov::one().truncate(&rel_order);
        let mut power = Novikov::one().truncate(&rel_order);
        loop {
            power = power.mul(&r_trunc).truncate(&rel_order);
            if power.is_zero_to_precision() {
                break;
            }
            sum = sum.add(&power);
        }
        Ok(sum.shift(&-v))
    }

    /// Exact quotient `self / d` when `d` divides `self` in the group ring.
    pub fn exact_div(&self, d: &Self) -> Result<Self, CoeffError> {
        if !self.is_exact() || !d.is_exact() {
            return Err(CoeffError::TruncatedEntry);
        }
        let (dv, dt) = match (d.valuation(), d.top()) {
            (Some(v), Some(t)) => (v.clone(), t.clone()),
            _ => return Err(CoeffError::ZeroInverse),
        };
        if self.is_zero() {
            return Ok(Novikov::zero());
        }
        let bound = self.top().expect("nonzero") - &dt;
        let mut quotient = Vec::new();
        let mut rem = self.clone();
        while let Some(lead) = rem.valuation().cloned() {
            let e = &lead - &dv;
            if e > bound {
                return Err(CoeffError::NotDivisible);
            }
            rem = rem.add(&d.shift(&e));
            quotient.push(e);
        }
        Ok(Novikov::from_exponents(quotient))
    }

    /// Serialized exponent list for machine-readable reports.
    pub fn exponent_strings(&self) -> Vec<String> {
        self.terms.iter().map(fmt_rat).collect()
    }

    /// True when every exponent is positive.
    pub fn all_positive(&self) -> bool {
        self.terms.iter().all(|e| e.is_positive())
    }
}

fn min_order(a: Option<&Rat>, b: Option<&Rat>) -> Option<Rat> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x < y { x.clone() } else { y.clone() }),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl fmt::Display for Novikov {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.terms.iter().map(|e| format!("T^{{{}}}", fmt_rat(e))).collect();
        if let Some(o) = &self.order {
            parts.push(format!("O(T^{{{}}})", fmt_rat(o)));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Serialized shape: `{"terms": ["0", "3/2"], "order": null}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct NovikovDoc {
    pub terms: Vec<String>,
    pub order: Option<String>,
    pub text: String,
}

impl From<&Novikov> for NovikovDoc {
    fn from(n: &Novikov) -> Self {
        NovikovDoc {
            terms: n.exponent_strings(),
            order: n.order.as_ref().map(fmt_rat),
            text: n.to_string(),
        }
    }
}

impl Serialize for Novikov {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        NovikovDoc::from(self).serialize(s)
    }
}
