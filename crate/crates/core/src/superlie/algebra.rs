//! Finite-dimensional Lie superalgebras given by a matrix realization, and
//! PBW normal ordering in their enveloping algebras.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{ExactMatrix, Scalar};

/// A sparse linear combination of basis elements.
pub type Lin = Vec<(usize, Scalar)>;

/// `gl(m|n)` matrix unit parity: odd iff exactly one index is fermionic.
pub fn unit_is_odd(m: usize, i: usize, j: usize) -> bool {
    (i < m) != (j < m)
}

/// `AB - (-1)^{|A||B|} BA`.
pub fn super_commutator(a: &ExactMatrix, a_odd: bool, b: &ExactMatrix, b_odd: bool) -> ExactMatrix {
    let ab = a.mul(b).expect("square matrices");
    let ba = b.mul(a).expect("square matrices");
    let mut out = ab;
    for (ro, rb) in out.data.iter_mut().zip(&ba.data) {
        for (x, y) in ro.iter_mut().zip(rb) {
            if a_odd && b_odd {
                *x += y;
            } else {
                *x -= y;
            }
        }
    }
    out
}

/// Supertrace of a matrix with `m` bosonic indices.
pub fn supertrace(a: &ExactMatrix, m: usize) -> Scalar {
    let mut acc = Scalar::zero();
    for i in 0..a.rows {
        if i < m {
            acc += &a.data[i][i];
        } else {
            acc -= &a.data[i][i];
        }
    }
    acc
}

pub fn matrix_unit(n: usize, i: usize, j: usize) -> ExactMatrix {
    let mut e = ExactMatrix::zeros(n, n);
    e.data[i][j] = Scalar::one();
    e
}

/// A Lie superalgebra with a fixed ordered basis; the basis order is the
/// PBW order used by [`PbwEngine`].
#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    labels: Vec<String>,
    odd: Vec<bool>,
    matrices: Vec<ExactMatrix>,
    bosonic: usize,
    brackets: Vec<Vec<Lin>>,
    coords_inv: ExactMatrix,
}

impl SuperAlgebra {
    /// Builds the algebra from matrices in `gl(m|n)` that form a basis of
    /// the whole of `gl(m|n)`.
    pub fn from_matrices(labels: Vec<String>, matrices: Vec<ExactMatrix>, bosonic: usize) -> Result<Self> {
        let n = matrices.first().map_or(0, |m| m.rows);
        if matrices.len() != n * n || labels.len() != matrices.len() {
            return Err(Error::InvalidInput("need exactly n^2 labelled basis matrices".into()));
        }
        let mut odd = Vec::with_capacity(matrices.len());
        for m in &matrices {
            let mut par = None;
            for i in 0..n {
                for j in 0..n {
                    if !m.data[i][j].is_zero() {
                        let o = unit_is_odd(bosonic, i, j);
                        if par.is_some_and(|p| p != o) {
                            return Err(Error::InvalidInput("basis matrix is not homogeneous".into()));
                        }
                        par = Some(o);
                    }
                }
            }
            odd.push(par.ok_or_else(|| Error::InvalidInput("zero basis matrix".into()))?);
        }
        let cols: Vec<Vec<Scalar>> = matrices.iter().map(|m| m.data.iter().flatten().cloned().collect()).collect();
        let coords_inv = ExactMatrix::from_cols(&cols, n * n).inverse()?;
        let mut alg = SuperAlgebra { labels, odd, matrices, bosonic, brackets: Vec::new(), coords_inv };
        let dim = alg.dim();
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let c = super_commutator(&alg.matrices[i], alg.odd[i], &alg.matrices[j], alg.odd[j]);
                brackets[i][j] = alg.decompose(&c);
            }
        }
        alg.brackets = brackets;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.odd[i]
    }

    pub fn matrix(&self, i: usize) -> &ExactMatrix {
        &self.matrices[i]
    }

    pub fn bosonic_rank(&self) -> usize {
        self.bosonic
    }

    /// `[b_i, b_j]` in the basis.
    pub fn bracket(&self, i: usize, j: usize) -> &Lin {
        &self.brackets[i][j]
    }

    /// Coordinates of an arbitrary matrix in the basis.
    pub fn decompose(&self, m: &ExactMatrix) -> Lin {
        let flat: Vec<Scalar> = m.data.iter().flatten().cloned().collect();
        self.coords_inv.mul_vec(&flat).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn lin_matrix(&self, l: &Lin) -> ExactMatrix {
        let n = self.matrices[0].rows;
        let mut m = ExactMatrix::zeros(n, n);
        for (i, c) in l {
            for r in 0..n {
                for s in 0..n {
                    let e = &self.matrices[*i].data[r][s];
                    if !e.is_zero() {
                        m.data[r][s] += &(c * e);
                    }
                }
            }
        }
        m
    }

    /// The same algebra with basis reordered: new basis element `i` is the
    /// old element `order[i]`.
    pub fn reorder(&self, order: &[usize]) -> Result<SuperAlgebra> {
        let mut seen = vec![false; self.dim()];
        for &o in order {
            if o >= self.dim() || std::mem::replace(&mut seen[o], true) {
                return Err(Error::InvalidInput("order is not a permutation of the basis".into()));
            }
        }
        if order.len() != self.dim() {
            return Err(Error::InvalidInput("order is not a permutation of the basis".into()));
        }
        SuperAlgebra::from_matrices(
            order.iter().map(|&o| self.labels[o].clone()).collect(),
            order.iter().map(|&o| self.matrices[o].clone()).collect(),
            self.bosonic,
        )
    }

    /// Rewrites an element expressed in `other`'s basis into this basis.
    /// Both algebras must realize the same matrix algebra.
    pub fn transfer(&self, other: &SuperAlgebra, u: &SuperElt) -> SuperElt {
        let images: Vec<Lin> = (0..other.dim()).map(|i| self.decompose(other.matrix(i))).collect();
        let mut out = SuperElt::zero();
        for (word, c) in u.terms() {
            let mut partial: Vec<(Vec<u8>, Scalar)> = vec![(Vec::new(), c.clone())];
            for &g in word {
                let mut next = Vec::with_capacity(partial.len() * images[g as usize].len());
                for (w, a) in &partial {
                    for (k, b) in &images[g as usize] {
                        let mut w2 = w.clone();
                        w2.push(*k as u8);
                        next.push((w2, a * b));
                    }
                }
                partial = next;
            }
            for (w, a) in partial {
                out.add_term(w, a);
            }
        }
        out
    }

    pub fn fmt_elt(&self, u: &SuperElt) -> String {
        if u.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = u
            .terms()
            .map(|(w, c)| {
                let word: Vec<&str> = w.iter().map(|&g| self.labels[g as usize].as_str()).collect();
                match (c.is_one(), word.is_empty()) {
                    (_, true) => format!("{c}"),
                    (true, false) => word.join("*"),
                    (false, false) => format!("({c})*{}", word.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn word_is_odd(&self, w: &[u8]) -> bool {
        w.iter().filter(|&&g| self.odd[g as usize]).count() % 2 == 1
    }
}

/// An element of the universal enveloping algebra as a combination of words
/// in the basis. Words are arbitrary until normal ordered by a
/// [`PbwEngine`].
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SuperElt {
    terms: BTreeMap<Vec<u8>, Scalar>,
}

impl SuperElt {
    pub fn zero() -> Self {
        SuperElt::default()
    }

    pub fn one() -> Self {
        SuperElt::from_word(Vec::new(), Scalar::one())
    }

    pub fn gen(i: usize) -> Self {
        SuperElt::from_word(vec![i as u8], Scalar::one())
    }

    pub fn from_word(w: Vec<u8>, c: Scalar) -> Self {
        let mut e = SuperElt::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_lin(l: &Lin) -> Self {
        let mut e = SuperElt::zero();
        for (i, c) in l {
            e.add_term(vec![*i as u8], c.clone());
        }
        e
    }

    pub fn add_term(&mut self, w: Vec<u8>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &[u8]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &SuperElt) -> SuperElt {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &SuperElt) -> SuperElt {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> SuperElt {
        if c.is_zero() {
            return SuperElt::zero();
        }
        SuperElt { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Free (unordered) product: concatenation of words.
    pub fn concat(&self, o: &SuperElt) -> SuperElt {
        let mut r = SuperElt::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend(w2);
                r.add_term(w, c1 * c2);
            }
        }
        r
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Keeps only the words accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&[u8]) -> bool) -> SuperElt {
        SuperElt { terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    /// Renames generators: `g ↦ map[g]`.
    pub fn relabel(&self, map: &[usize]) -> SuperElt {
        let mut r = SuperElt::zero();
        for (w, c) in &self.terms {
            r.add_term(w.iter().map(|&g| map[g as usize] as u8).collect(), c.clone());
        }
        r
    }
}

impl fmt::Debug for SuperElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

type Terms = Arc<Vec<(Vec<u8>, Scalar)>>;

/// Normal ordering in the enveloping algebra, in the basis order of the
/// algebra. Products `word · generator` are memoized.
pub struct PbwEngine {
    alg: SuperAlgebra,
    memo: HashMap<(Vec<u8>, u8), Terms>,
}

fn accumulate(acc: &mut HashMap<Vec<u8>, Scalar>, w: &[u8], c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(w) {
        Some(x) => {
            *x += &c;
        }
        None => {
            acc.insert(w.to_vec(), c);
        }
    }
}

fn into_terms(acc: HashMap<Vec<u8>, Scalar>) -> Vec<(Vec<u8>, Scalar)> {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl PbwEngine {
    pub fn new(alg: SuperAlgebra) -> Self {
        PbwEngine { alg, memo: HashMap::new() }
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        &self.alg
    }

    fn is_normal(&self, w: &[u8]) -> bool {
        w.windows(2).all(|p| p[0] < p[1] || (p[0] == p[1] && !self.alg.odd[p[0] as usize]))
    }

    /// Normal-ordered `m · g` for a normal-ordered word `m`.
    fn mul_word_gen(&mut self, m: &[u8], g: u8) -> Terms {
        let simple = match m.last() {
            None => true,
            Some(&last) => last < g || (last == g && !self.alg.odd[g as usize]),
        };
        if simple {
            let mut w = m.to_vec();
            w.push(g);
            return Arc::new(vec![(w, Scalar::one())]);
        }
        let key = (m.to_vec(), g);
        if let Some(t) = self.memo.get(&key) {
            return t.clone();
        }
        let last = *m.last().unwrap();
        let pre = &m[..m.len() - 1];
        let mut acc: HashMap<Vec<u8>, Scalar> = HashMap::new();
        if last == g {
            // odd square: g g = [g, g] / 2
            let half = Scalar::frac(1, 2);
            for (k, c) in self.alg.brackets[g as usize][g as usize].clone() {
                for (w, c2) in self.mul_word_gen(pre, k as u8).iter() {
                    accumulate(&mut acc, w, &(&half * &c) * c2);
                }
            }
        } else {
            // last g = ± g last + [last, g]
            let sign = if self.alg.odd[last as usize] && self.alg.odd[g as usize] { -Scalar::one() } else { Scalar::one() };
            let head = self.mul_word_gen(pre, g);
            for (w, c) in head.iter() {
                let tail = self.mul_word_gen(w, last);
                for (w2, c2) in tail.iter() {
                    accumulate(&mut acc, w2, &(&sign * c) * c2);
                }
            }
            for (k, c) in self.alg.brackets[last as usize][g as usize].clone() {
                for (w, c2) in self.mul_word_gen(pre, k as u8).iter() {
                    accumulate(&mut acc, w, &c * c2);
                }
            }
        }
        let t: Terms = Arc::new(into_terms(acc));
        self.memo.insert(key, t.clone());
        t
    }

    /// Normal-ordered product of a normal-ordered element with a word.
    fn mul_by_word(&mut self, a: &HashMap<Vec<u8>, Scalar>, word: &[u8]) -> HashMap<Vec<u8>, Scalar> {
        let mut cur = a.clone();
        for &g in word {
            let mut next = HashMap::new();
            for (w, c) in &cur {
                for (w2, c2) in self.mul_word_gen(w, g).iter() {
                    accumulate(&mut next, w2, c * c2);
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        cur
    }

    pub fn normal_order(&mut self, u: &SuperElt) -> SuperElt {
        let mut out = SuperElt::zero();
        for (w, c) in u.terms() {
            if self.is_normal(w) {
                out.add_term(w.clone(), c.clone());
                continue;
            }
            let start: HashMap<Vec<u8>, Scalar> = [(Vec::new(), c.clone())].into_iter().collect();
            for (w2, c2) in self.mul_by_word(&start, w) {
                out.add_term(w2, c2);
            }
        }
        out
    }

    /// Normal-ordered product `a · b`.
    pub fn mul(&mut self, a: &SuperElt, b: &SuperElt) -> SuperElt {
        let a = self.normal_order(a);
        let start: HashMap<Vec<u8>, Scalar> = a.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = SuperElt::zero();
        for (w, c) in b.terms() {
            for (w2, c2) in self.mul_by_word(&start, w) {
                out.add_term(w2, &c2 * c);
            }
        }
        out
    }

    /// Parity of a homogeneous element; `None` for mixed or zero elements.
    pub fn parity(&self, u: &SuperElt) -> Option<bool> {
        let mut par = None;
        for (w, _) in u.terms() {
            let o = self.alg.word_is_odd(w);
            if par.is_some_and(|p| p != o) {
                return None;
            }
            par = Some(o);
        }
        par
    }

    /// `[a, b] = ab - (-1)^{|a||b|} ba` for homogeneous `a`, `b`.
    pub fn supercommutator(&mut self, a: &SuperElt, b: &SuperElt) -> Result<SuperElt> {
        if a.is_zero() || b.is_zero() {
            return Ok(SuperElt::zero());
        }
        let (pa, pb) = match (self.parity(a), self.parity(b)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(Error::InvalidInput("supercommutator needs homogeneous elements".into())),
        };
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        Ok(if pa && pb { ab.add(&ba) } else { ab.sub(&ba) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl11() -> SuperAlgebra {
        // basis E11, E12, E21, E22 of gl(1|1)
        let labels = ["E11", "E12", "E21", "E22"].iter().map(|s| s.to_string()).collect();
        let mats = vec![matrix_unit(2, 0, 0), matrix_unit(2, 0, 1), matrix_unit(2, 1, 0), matrix_unit(2, 1, 1)];
        SuperAlgebra::from_matrices(labels, mats, 1).unwrap()
    }

    #[test]
    fn gl11_brackets() {
        let a = gl11();
        assert!(a.is_odd(1) && a.is_odd(2) && !a.is_odd(0));
        // [E12, E21] = E11 + E22
        assert_eq!(a.bracket(1, 2), &vec![(0, Scalar::one()), (3, Scalar::one())]);
        assert!(a.bracket(1, 1).is_empty());
    }

    #[test]
    fn normal_order_odd_pair() {
        let mut e = PbwEngine::new(gl11());
        // E21 E12 = -E12 E21 + E11 + E22
        let u = SuperElt::from_word(vec![2, 1], Scalar::one());
        let n = e.normal_order(&u);
        assert_eq!(n.coeff(&[1, 2]), Scalar::int(-1));
        assert_eq!(n.coeff(&[0]), Scalar::one());
        assert_eq!(n.coeff(&[3]), Scalar::one());
        assert_eq!(n.num_terms(), 3);
        // E12 E12 = 0
        assert!(e.normal_order(&SuperElt::from_word(vec![1, 1], Scalar::one())).is_zero());
    }

    #[test]
    fn reorder_round_trip() {
        let a = gl11();
        let b = a.reorder(&[3, 2, 1, 0]).unwrap();
        let u = SuperElt::from_word(vec![1, 2, 0], Scalar::int(2));
        let moved = b.transfer(&a, &u);
        let back = a.transfer(&b, &moved);
        assert_eq!(back, u);
        assert!(a.reorder(&[0, 0, 1, 2]).is_err());
    }
}
