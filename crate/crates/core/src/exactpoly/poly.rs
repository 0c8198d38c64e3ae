//! Sparse multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::Scalar;

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, Scalar>,
}

/// An affine form `c_0 + sum_k c_k v_k` over a fixed list of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub constant: Scalar,
    pub coeffs: Vec<Scalar>,
}

impl Affine {
    pub fn var(n: usize, i: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); n];
        coeffs[i] = Scalar::one();
        Affine { constant: Scalar::zero(), coeffs }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Affine { constant: c, coeffs: vec![Scalar::zero(); n] }
    }

    /// `scale * v_i + shift`.
    pub fn scaled(n: usize, i: usize, scale: Scalar, shift: Scalar) -> Self {
        let mut a = Affine::constant(n, shift);
        a.coeffs[i] = scale;
        a
    }

    fn to_poly(&self, vars: &[String]) -> ExactPoly {
        let mut p = ExactPoly::constant(vars.to_vec(), self.constant.clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.add_term(unit_exp(vars.len(), i), c.clone());
            }
        }
        p
    }
}

fn unit_exp(n: usize, i: usize) -> Exponent {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

impl ExactPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        ExactPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(vars: Vec<String>) -> Self {
        Self::constant(vars, Scalar::one())
    }

    pub fn var(vars: Vec<String>, i: usize) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        p.add_term(unit_exp(n, i), Scalar::one());
        p
    }

    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Exponent, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::InvalidInput("exponent length does not match variables".into()));
            }
            p.add_term(e, c);
        }
        Ok(p)
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn check_vars(&self, o: &ExactPoly) -> Result<()> {
        if self.vars != o.vars {
            return Err(Error::VariableMismatch(format!("{:?} vs {:?}", self.vars, o.vars)));
        }
        Ok(())
    }

    pub fn add(&self, o: &ExactPoly) -> Result<ExactPoly> {
        self.check_vars(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &ExactPoly) -> Result<ExactPoly> {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn mul(&self, o: &ExactPoly) -> Result<ExactPoly> {
        self.check_vars(o)?;
        let mut r = Self::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Scalar) -> ExactPoly {
        let mut r = Self::zero(self.vars.clone());
        if c.is_zero() {
            return r;
        }
        for (e, x) in &self.terms {
            r.terms.insert(e.clone(), x * c);
        }
        r
    }

    pub fn pow(&self, n: u32) -> ExactPoly {
        let mut acc = Self::one(self.vars.clone());
        for _ in 0..n {
            acc = acc.mul(self).expect("same variables");
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.vars.len() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn eval_ints(&self, point: &[i64]) -> Result<Scalar> {
        let pt: Vec<Scalar> = point.iter().map(|&x| Scalar::int(x)).collect();
        self.eval(&pt)
    }

    /// Substitutes variable `i` by `subs[i]`, an affine form over
    /// `target_vars`.
    pub fn affine_substitute(&self, subs: &[Affine], target_vars: &[String]) -> Result<ExactPoly> {
        if subs.len() != self.vars.len() {
            return Err(Error::InvalidInput("one substitution per variable required".into()));
        }
        if subs.iter().any(|a| a.coeffs.len() != target_vars.len()) {
            return Err(Error::InvalidInput("affine form has wrong arity".into()));
        }
        let lin: Vec<ExactPoly> = subs.iter().map(|a| a.to_poly(target_vars)).collect();
        let mut cache: Vec<Vec<ExactPoly>> = lin.iter().map(|l| vec![ExactPoly::one(target_vars.to_vec()), l.clone()]).collect();
        let mut out = Self::zero(target_vars.to_vec());
        for (e, c) in &self.terms {
            let mut t = ExactPoly::constant(target_vars.to_vec(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap().mul(&lin[i])?;
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][k as usize])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Same polynomial viewed with renamed variables.
    pub fn rename(&self, vars: Vec<String>) -> Result<ExactPoly> {
        if vars.len() != self.vars.len() {
            return Err(Error::InvalidInput("rename needs the same number of variables".into()));
        }
        Ok(ExactPoly { vars, terms: self.terms.clone() })
    }

    /// Permutes variables: the new variable `j` is the old variable `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> ExactPoly {
        let mut r = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut ne = vec![0; e.len()];
            for (j, &p) in perm.iter().enumerate() {
                ne[p] = e[j];
            }
            r.add_term(ne, c.clone());
        }
        r
    }

    /// Leading coefficient in the order of [`ExactPoly::terms`] reversed,
    /// i.e. the largest exponent vector lexicographically.
    pub fn leading(&self) -> Option<(&Exponent, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Returns `c` with `self == c * other` if such a scalar exists.
    pub fn ratio_to(&self, other: &ExactPoly) -> Option<Scalar> {
        if self.vars != other.vars {
            return None;
        }
        if other.is_zero() {
            return self.is_zero().then(Scalar::zero);
        }
        let (e, c) = other.leading()?;
        let r = &self.coeff(e) / c;
        (other.scale(&r) == *self).then_some(r)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

fn fmt_monomial(vars: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono = fmt_monomial(&self.vars, e);
            let cs = if c.is_rational() { c.to_string() } else { format!("({c})") };
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if c.is_rational() => (true, rest.to_string()),
                _ => (false, cs),
            };
            let term = match (mono.is_empty(), body.as_str()) {
                (true, _) => body.clone(),
                (false, "1") => mono,
                (false, _) => format!("{body}*{mono}"),
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, term)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, term)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly[{}]({})", self.vars.join(","), self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Exponent,
    coef: Scalar,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for ExactPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| TermJson { exp: e.clone(), coef: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pj = PolyJson::deserialize(d)?;
        ExactPoly::from_terms(pj.vars, pj.terms.into_iter().map(|t| (t.exp, t.coef))).map_err(serde::de::Error::custom)
    }
}

/// Convenience: variable names `x1..xp, y1..yq`.
pub fn xy_vars(p: usize, q: usize) -> Vec<String> {
    named_vars("x", "y", p, q)
}

pub fn named_vars(b: &str, f: &str, p: usize, q: usize) -> Vec<String> {
    (1..=p).map(|i| format!("{b}{i}")).chain((1..=q).map(|j| format!("{f}{j}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn arithmetic_and_eval() {
        let x = ExactPoly::var(vars(), 0);
        let y = ExactPoly::var(vars(), 1);
        let f = x.mul(&x).unwrap().sub(&y.mul(&y).unwrap()).unwrap();
        assert_eq!(f.eval_ints(&[3, 1]).unwrap(), Scalar::int(8));
        assert_eq!(f.to_string(), "x^2 - y^2");
        let g = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.total_degree(), Some(2));
    }

    #[test]
    fn substitution_shifts() {
        // f(x, y) = x*y, substitute x -> (x+1)/2
        let f = ExactPoly::from_terms(vars(), [(vec![1, 1], Scalar::one())]).unwrap();
        let s = [Affine::scaled(2, 0, Scalar::frac(1, 2), Scalar::frac(1, 2)), Affine::var(2, 1)];
        let g = f.affine_substitute(&s, &vars()).unwrap();
        assert_eq!(g.eval_ints(&[3, 5]).unwrap(), Scalar::int(10));
    }

    #[test]
    fn json_round_trip() {
        let f = ExactPoly::from_terms(vars(), [(vec![2, 0], Scalar::frac(1, 16)), (vec![0, 1], "1/2+3*i".parse().unwrap())])
            .unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"coef\":\"1/16\""));
        let back: ExactPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn ratio_detection() {
        let x = ExactPoly::var(vars(), 0);
        let f = x.scale(&Scalar::int(3));
        assert_eq!(f.ratio_to(&x), Some(Scalar::int(3)));
        assert_eq!(f.ratio_to(&ExactPoly::var(vars(), 1)), None);
    }

    #[test]
    fn mismatched_vars_error() {
        let a = ExactPoly::var(vars(), 0);
        let b = ExactPoly::var(vec!["u".into(), "v".into()], 0);
        assert!(matches!(a.add(&b), Err(Error::VariableMismatch(_))));
    }
}
