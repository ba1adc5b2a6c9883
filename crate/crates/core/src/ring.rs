//! Ring contexts, monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Polynomial;

pub(crate) type Exps = SmallVec<[u32; 8]>;

/// An exponent vector, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub(crate) Exps);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn new(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Exps::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn scale(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }
}

/// Monomial orders. Variables are ranked in declaration order, the first
/// variable being the largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Compares the exponent of the first variable, then the rest under the
    /// inner order. Eliminates the first variable.
    EliminateFirst(Box<MonomialOrder>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| {
                    for i in (0..a.len()).rev() {
                        match b[i].cmp(&a[i]) {
                            Ordering::Equal => continue,
                            o => return o,
                        }
                    }
                    Ordering::Equal
                })
            }
            MonomialOrder::EliminateFirst(inner) => a[0].cmp(&b[0]).then_with(|| inner.cmp(&a[1..], &b[1..])),
        }
    }

    /// An encoding whose plain lexicographic comparison agrees with `cmp`.
    pub(crate) fn key(&self, exps: &[u32]) -> SmallVec<[u32; 9]> {
        let mut out = SmallVec::new();
        self.push_key(exps, &mut out);
        out
    }

    fn push_key(&self, exps: &[u32], out: &mut SmallVec<[u32; 9]>) {
        match self {
            MonomialOrder::Lex => out.extend_from_slice(exps),
            MonomialOrder::Grevlex => {
                let deg: u64 = exps.iter().map(|&e| e as u64).sum();
                out.push(deg as u32);
                out.extend(exps.iter().rev().map(|e| !e));
            }
            MonomialOrder::EliminateFirst(inner) => {
                out.push(exps[0]);
                inner.push_key(&exps[1..], out);
            }
        }
    }

    pub(crate) fn decode(&self, key: &[u32], nvars: usize) -> Monomial {
        let mut exps = Exps::with_capacity(nvars);
        self.decode_into(key, nvars, &mut exps);
        Monomial(exps)
    }

    fn decode_into(&self, key: &[u32], nvars: usize, out: &mut Exps) {
        match self {
            MonomialOrder::Lex => out.extend_from_slice(&key[..nvars]),
            MonomialOrder::Grevlex => out.extend(key[1..=nvars].iter().rev().map(|e| !e)),
            MonomialOrder::EliminateFirst(inner) => {
                out.push(key[0]);
                inner.decode_into(&key[1..], nvars - 1, out);
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::EliminateFirst(inner) => format!("elim({})", inner.name()),
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(Error::InvalidRing(format!("unknown monomial order `{other}`"))),
        }
    }
}

/// Guard rails applied to every computation in a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: u32,
    pub max_level: u32,
    /// Upper bound on S-pairs processed by a single Buchberger run.
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 600, max_level: 6, max_pairs: 50_000 }
    }
}

/// A polynomial ring GF(p)[vars] with a monomial order, optionally carrying a
/// single hypersurface modulus F (the quotient S/(F)).
#[derive(Debug)]
pub struct RingCtx {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
    modulus: Option<Vec<(Monomial, u32)>>,
    limits: Limits,
}

impl RingCtx {
    pub fn new(p: u32, vars: &[&str], order: MonomialOrder) -> Result<Arc<RingCtx>> {
        Self::with_names(p, vars.iter().map(|s| s.to_string()).collect(), order, Limits::default())
    }

    pub fn with_names(p: u32, vars: Vec<String>, order: MonomialOrder, limits: Limits) -> Result<Arc<RingCtx>> {
        let field = PrimeField::new(p)?;
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if vars.len() > u8::MAX as usize {
            return Err(Error::InvalidRing("too many variables".into()));
        }
        Ok(Arc::new(RingCtx { field, vars, order, modulus: None, limits }))
    }

    /// The quotient of this ring by `(f)`.
    pub fn with_modulus(self: &Arc<Self>, f: &Polynomial) -> Result<Arc<RingCtx>> {
        self.check_compatible(f.ctx())?;
        if f.is_constant() {
            return Err(Error::InvalidRing(format!("modulus must be non-constant, got {f}")));
        }
        Ok(Arc::new(RingCtx {
            field: self.field,
            vars: self.vars.clone(),
            order: self.order.clone(),
            modulus: Some(f.terms().to_vec()),
            limits: self.limits,
        }))
    }

    pub fn with_limits(self: &Arc<Self>, limits: Limits) -> Arc<RingCtx> {
        Arc::new(RingCtx {
            field: self.field,
            vars: self.vars.clone(),
            order: self.order.clone(),
            modulus: self.modulus.clone(),
            limits,
        })
    }

    /// The ambient polynomial ring (modulus dropped).
    pub fn polynomial_ring(self: &Arc<Self>) -> Arc<RingCtx> {
        if self.modulus.is_none() {
            return Arc::clone(self);
        }
        Arc::new(RingCtx {
            field: self.field,
            vars: self.vars.clone(),
            order: self.order.clone(),
            modulus: None,
            limits: self.limits,
        })
    }

    /// The ring with a fresh variable prepended, ordered so that it is
    /// eliminated first.
    pub(crate) fn elimination_ring(self: &Arc<Self>) -> Arc<RingCtx> {
        let mut name = String::from("t");
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = Vec::with_capacity(self.vars.len() + 1);
        vars.push(name);
        vars.extend(self.vars.iter().cloned());
        Arc::new(RingCtx {
            field: self.field,
            vars,
            order: MonomialOrder::EliminateFirst(Box::new(self.order.clone())),
            modulus: None,
            limits: self.limits,
        })
    }

    pub fn modulus(self: &Arc<Self>) -> Option<Polynomial> {
        self.modulus.as_ref().map(|terms| Polynomial::from_sorted_terms(self.polynomial_ring(), terms.clone()))
    }

    pub fn has_modulus(&self) -> bool {
        self.modulus.is_some()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Same characteristic, variables and order; the modulus is ignored, so
    /// representatives in S and S/(F) interoperate.
    pub fn compatible(&self, other: &RingCtx) -> bool {
        self.field == other.field && self.vars == other.vars && self.order == other.order
    }

    pub fn check_compatible(&self, other: &RingCtx) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{} vs {}", self.describe(), other.describe())))
        }
    }

    pub fn check_degree(&self, degree: u64) -> Result<()> {
        if degree > self.limits.max_degree as u64 {
            Err(Error::DegreeBound { degree, max: self.limits.max_degree })
        } else {
            Ok(())
        }
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(&a.0, &b.0)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (name, &e) in self.vars.iter().zip(m.0.iter()) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// `GF(p)[v1,...]`, with `/(F)` appended for quotients.
    pub fn describe(self: &RingCtx) -> String {
        let mut s = format!("GF({})[{}]", self.characteristic(), self.vars.join(","));
        if let Some(terms) = &self.modulus {
            s.push_str("/(");
            s.push_str(&crate::poly::format_terms(self, terms));
            s.push(')');
        }
        s
    }
}

impl fmt::Display for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn grevlex_ranks_first_variable_highest() {
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 0, 3], &[1, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[5, 0], &[0, 5]), Ordering::Greater);
    }

    #[test]
    fn lex_and_elimination() {
        assert_eq!(MonomialOrder::Lex.cmp(&[1, 0], &[0, 9]), Ordering::Greater);
        let e = MonomialOrder::EliminateFirst(Box::new(MonomialOrder::Grevlex));
        assert_eq!(e.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
        assert_eq!(e.cmp(&[0, 1, 0], &[0, 0, 1]), Ordering::Greater);
    }

    #[test]
    fn keys_round_trip_and_agree_with_cmp() {
        let orders = [
            MonomialOrder::Grevlex,
            MonomialOrder::Lex,
            MonomialOrder::EliminateFirst(Box::new(MonomialOrder::Grevlex)),
            MonomialOrder::EliminateFirst(Box::new(MonomialOrder::Lex)),
        ];
        let mons: Vec<Monomial> = (0..27u32).map(|i| m(&[i % 3, (i / 3) % 3, i / 9])).collect();
        for o in &orders {
            for a in &mons {
                assert_eq!(&o.decode(&o.key(&a.0), 3), a);
                for b in &mons {
                    assert_eq!(o.key(&a.0).cmp(&o.key(&b.0)), o.cmp(&a.0, &b.0));
                }
            }
        }
    }

    #[test]
    fn monomial_lattice_ops() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 1, 0]);
        assert_eq!(a.gcd(&b), m(&[1, 1, 0]));
        assert_eq!(a.lcm(&b), m(&[2, 2, 0]));
        assert_eq!(a.lcm(&b).div(&b), Some(m(&[0, 1, 0])));
        assert_eq!(a.div(&b), None);
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 3, 1])));
    }

    #[test]
    fn ring_validation() {
        assert!(RingCtx::new(4, &["x"], MonomialOrder::Grevlex).is_err());
        assert!(RingCtx::new(2, &["x", "x"], MonomialOrder::Grevlex).is_err());
        assert!(RingCtx::new(2, &["1x"], MonomialOrder::Grevlex).is_err());
        let r = RingCtx::new(2, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        assert_eq!(r.describe(), "GF(2)[x,y]");
        let e = r.elimination_ring();
        assert_eq!(e.vars()[0], "t");
    }
}
