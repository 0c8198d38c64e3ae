//! Kac modules `K(λ̆) = ⋀(g₋₁) ⊗ W̆(λ̆)` for `gl(2|2)`, spherical vectors and
//! quasi-sphericity.
//!
//! A basis vector is `ξ_S ⊗ v_{k,l}` with `S` a subset of
//! `(ξ11, ξ12, ξ21, ξ22)` (increasing order) and `v_{k,l}` a weight vector
//! of `L(a,b) ⊗ L(c,d)`. Elements of `U(g)` act by normal ordering
//! `u · ξ_S` with `g₋₁` first, `g₀` next and `g₁` last.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::borel::kac_weight;
use crate::error::{Error, Result};
use crate::exactpoly::{ExactMatrix, Scalar};
use crate::partitions::{Partition, Profile};
use crate::superlie::gl22::{gl22_in_order, parse_entry, KAC_ORDER, K_LABELS};
use crate::superlie::{PbwEngine, SuperAlgebra, SuperElt};

const N_XI: u8 = 4;
const G0_END: u8 = 12;

/// `L(a,b) ⊗ L(c,d)` for `gl(2) ⊕ gl(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Gl2PairModule {
    pub weight: [i64; 4],
}

impl Gl2PairModule {
    pub fn new(weight: [i64; 4]) -> Result<Self> {
        let [a, b, c, d] = weight;
        if a < b || c < d {
            return Err(Error::InvalidInput(format!("({a},{b}|{c},{d}) is not dominant for gl(2)+gl(2)")));
        }
        Ok(Gl2PairModule { weight })
    }

    pub fn m1(&self) -> usize {
        (self.weight[0] - self.weight[1]) as usize
    }

    pub fn m2(&self) -> usize {
        (self.weight[2] - self.weight[3]) as usize
    }

    pub fn dim(&self) -> usize {
        (self.m1() + 1) * (self.m2() + 1)
    }

    pub fn basis(&self) -> Vec<(usize, usize)> {
        (0..=self.m1()).flat_map(|k| (0..=self.m2()).map(move |l| (k, l))).collect()
    }

    /// `v_{k,l}` has weight `(b+k, a-k | d+l, c-l)`; `v_{m1,m2}` is highest.
    pub fn weight_of(&self, (k, l): (usize, usize)) -> [i64; 4] {
        let [a, b, c, d] = self.weight;
        let (k, l) = (k as i64, l as i64);
        [b + k, a - k, d + l, c - l]
    }

    /// `X` raises with coefficient 1; `Y` lowers `v_i` with `i(m+1-i)`.
    /// `g` is a `g₀` label among `h1..h4, X1, Y1, X2, Y2`.
    pub fn act(&self, g: &str, (k, l): (usize, usize)) -> Option<(Scalar, (usize, usize))> {
        let lower = |i: usize, m: usize| Scalar::int((i * (m + 1 - i)) as i64);
        let wt = self.weight_of((k, l));
        match g {
            "h1" | "h2" | "h3" | "h4" => {
                let t = g[1..].parse::<usize>().unwrap() - 1;
                (wt[t] != 0).then(|| (Scalar::int(wt[t]), (k, l)))
            }
            "X1" => (k < self.m1()).then(|| (Scalar::one(), (k + 1, l))),
            "Y1" => (k > 0).then(|| (lower(k, self.m1()), (k - 1, l))),
            "X2" => (l < self.m2()).then(|| (Scalar::one(), (k, l + 1))),
            "Y2" => (l > 0).then(|| (lower(l, self.m2()), (k, l - 1))),
            _ => None,
        }
    }
}

/// Basis key: exterior monomial as a bit mask over `(ξ11, ξ12, ξ21, ξ22)`
/// and a weight-basis index.
pub type KacKey = (u8, (usize, usize));

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KacVector {
    terms: BTreeMap<KacKey, Scalar>,
}

impl KacVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: KacKey) -> Self {
        let mut v = Self::zero();
        v.add_term(key, Scalar::one());
        v
    }

    pub fn add_term(&mut self, key: KacKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KacKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &KacKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &KacVector) -> KacVector {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> KacVector {
        let mut out = KacVector::zero();
        for (k, d) in &self.terms {
            out.add_term(*k, c * d);
        }
        out
    }

    /// Exterior degrees present.
    pub fn grades(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|(s, _)| s.count_ones()).collect()
    }

    /// Ratio `self / other` if proportional.
    pub fn ratio_to(&self, other: &KacVector) -> Option<Scalar> {
        let (key, c) = other.terms.iter().next()?;
        let r = &self.coeff(key) * &c.inv().ok()?;
        (self == &other.scale(&r)).then_some(r)
    }
}

pub fn xi_label(i: u8) -> &'static str {
    KAC_ORDER[i as usize]
}

/// `(a, b|c, d)` weight of the Kac module for the hook `(a, 1^b)`.
pub fn hook_kac_weight(a: u32, b: u32) -> Result<[i64; 4]> {
    let w = kac_weight(&Partition::hook(a, b), Profile::new(1, 1))?.standard();
    Ok([w[0], w[1], w[2], w[3]])
}

/// Weyl vector `½(-1, -3 | 3, 1)` of the distinguished Borel subalgebra.
pub const RHO_BREVE_TWICE: [i64; 4] = [-1, -3, 3, 1];

/// `(λ̆ + ρ̆, ϵ_i - δ_j) ≠ 0` for all four isotropic roots; the form is
/// induced by the supertrace, so the pairing is `x_{ϵ_i} + x_{δ_j}`.
pub fn typicality(weight: [i64; 4]) -> bool {
    let s: Vec<i64> = weight.iter().zip(RHO_BREVE_TWICE).map(|(x, r)| 2 * x + r).collect();
    (0..2).all(|i| (2..4).all(|j| s[i] + s[j] != 0))
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    /// Normal-ordered `lhs` with every word ending in `g₁` dropped.
    pub computed: String,
    pub expected: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiSphericalReport {
    pub weight: [i64; 4],
    pub omega: String,
    pub omega_prime: String,
    /// `x·ω` for each `k` generator, as a multiple of `ω′`.
    pub k_orbit: Vec<(String, Option<Scalar>)>,
    pub k_orbit_is_omega_prime_line: bool,
    /// `η12·ω ≠ 0` in `1 ⊗ W̆`.
    pub omega_cyclic: bool,
    pub identities: Vec<IdentityCheck>,
    /// Degree-two elements tested against `ω′`, with the `g₀` word bound.
    pub words_checked: usize,
    pub g0_word_bound: usize,
    /// Elements among those that fail to annihilate `ω′`.
    pub annihilation_failures: Vec<String>,
    pub passed: bool,
}

/// `K(λ̆)` with a normal-ordering engine in `(g₋₁, g₀, g₁)` order.
pub struct KacModule {
    pub w: Gl2PairModule,
    pub engine: PbwEngine,
    gen_cache: BTreeMap<(usize, u8), SuperElt>,
}

impl KacModule {
    pub fn new(weight: [i64; 4]) -> Result<Self> {
        Ok(KacModule { w: Gl2PairModule::new(weight)?, engine: PbwEngine::new(gl22_in_order(&KAC_ORDER)?), gen_cache: BTreeMap::new() })
    }

    pub fn for_hook(a: u32, b: u32) -> Result<Self> {
        Self::new(hook_kac_weight(a, b)?)
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        self.engine.algebra()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.algebra().index(label).ok_or_else(|| Error::InvalidInput(format!("unknown label {label}")))
    }

    pub fn dim(&self) -> usize {
        16 * self.w.dim()
    }

    pub fn basis(&self) -> Vec<KacKey> {
        (0u8..16).flat_map(|s| self.w.basis().into_iter().map(move |kl| (s, kl))).collect()
    }

    pub fn weight_of(&self, (s, kl): KacKey) -> [i64; 4] {
        let mut wt = self.w.weight_of(kl);
        // ξ_{ij} = E_{i+2, j}: weight ϵ_{i+2} - ϵ_j
        for bit in 0..N_XI {
            if s & (1 << bit) != 0 {
                let (i, j) = ((bit / 2) as usize, (bit % 2) as usize);
                wt[i + 2] += 1;
                wt[j] -= 1;
            }
        }
        wt
    }

    pub fn zero_weight_basis(&self) -> Vec<KacKey> {
        self.basis().into_iter().filter(|&k| self.weight_of(k) == [0; 4]).collect()
    }

    fn xi_word(s: u8) -> Vec<u8> {
        (0..N_XI).filter(|b| s & (1 << b) != 0).collect()
    }

    fn apply_normal_word(&self, word: &[u8], kl: (usize, usize)) -> Option<(u8, Scalar, (usize, usize))> {
        let split = word.iter().position(|&g| g >= N_XI).unwrap_or(word.len());
        let (xis, rest) = word.split_at(split);
        if rest.iter().any(|&g| g >= G0_END) {
            return None;
        }
        let mut c = Scalar::one();
        let mut cur = kl;
        for &g in rest.iter().rev() {
            let (d, next) = self.w.act(self.algebra().label(g as usize), cur)?;
            c = &c * &d;
            cur = next;
        }
        let mask = xis.iter().fold(0u8, |m, &b| m | (1 << b));
        Some((mask, c, cur))
    }

    /// `u · v` for `u` in the `KAC_ORDER` basis.
    pub fn act(&mut self, u: &SuperElt, v: &KacVector) -> KacVector {
        let mut out = KacVector::zero();
        for (&(s, kl), c) in v.terms() {
            let prod = self.engine.mul(u, &SuperElt::from_word(Self::xi_word(s), Scalar::one()));
            for (w, c2) in prod.terms() {
                if let Some((mask, c3, kl2)) = self.apply_normal_word(w, kl) {
                    out.add_term((mask, kl2), &(c * c2) * &c3);
                }
            }
        }
        out
    }

    /// Action of a single basis element of `gl(2|2)`.
    pub fn module_action(&mut self, x: usize, v: &KacVector) -> KacVector {
        let mut out = KacVector::zero();
        for (&(s, kl), c) in v.terms() {
            let prod = match self.gen_cache.get(&(x, s)) {
                Some(p) => p.clone(),
                None => {
                    let p = self.engine.mul(&SuperElt::gen(x), &SuperElt::from_word(Self::xi_word(s), Scalar::one()));
                    self.gen_cache.insert((x, s), p.clone());
                    p
                }
            };
            for (w, c2) in prod.terms() {
                if let Some((mask, c3, kl2)) = self.apply_normal_word(w, kl) {
                    out.add_term((mask, kl2), &(c * c2) * &c3);
                }
            }
        }
        out
    }

    pub fn module_action_label(&mut self, x: &str, v: &KacVector) -> Result<KacVector> {
        let i = self.index(x)?;
        Ok(self.module_action(i, v))
    }

    /// Basis of `K(λ̆)^k`: the joint kernel of the eight `k` generators on
    /// the zero-weight space.
    pub fn spherical_vectors(&mut self) -> Result<Vec<KacVector>> {
        let zero = self.zero_weight_basis();
        if zero.is_empty() {
            return Ok(Vec::new());
        }
        let ks: Vec<usize> = K_LABELS.iter().map(|l| self.index(l)).collect::<Result<_>>()?;
        let mut row_of: BTreeMap<(usize, KacKey), usize> = BTreeMap::new();
        let mut cols: Vec<Vec<(usize, Scalar)>> = Vec::new();
        for &key in &zero {
            let mut col = Vec::new();
            for &x in &ks {
                let img = self.module_action(x, &KacVector::basis(key));
                for (k2, c) in img.terms() {
                    let n = row_of.len();
                    let r = *row_of.entry((x, *k2)).or_insert(n);
                    col.push((r, c.clone()));
                }
            }
            cols.push(col);
        }
        if row_of.is_empty() {
            return Ok(zero.iter().map(|&k| KacVector::basis(k)).collect());
        }
        let mut m = ExactMatrix::zeros(row_of.len(), zero.len());
        for (j, col) in cols.into_iter().enumerate() {
            for (r, c) in col {
                m.data[r][j] = c;
            }
        }
        Ok(m.nullspace()
            .into_iter()
            .map(|v| {
                let mut out = KacVector::zero();
                for (key, c) in zero.iter().zip(v) {
                    out.add_term(*key, c);
                }
                out
            })
            .collect())
    }

    /// Index of the weight vector of `W̆` with the given weight.
    pub fn w_index(&self, weight: [i64; 4]) -> Result<(usize, usize)> {
        self.w
            .basis()
            .into_iter()
            .find(|&kl| self.w.weight_of(kl) == weight)
            .ok_or_else(|| Error::InvalidInput(format!("no vector of weight {weight:?} in W")))
    }

    pub fn mask(labels: &[&str]) -> u8 {
        labels.iter().fold(0, |m, l| m | (1 << KAC_ORDER.iter().position(|k| k == l).expect("xi label")))
    }

    pub fn fmt_vector(&self, v: &KacVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.terms()
            .map(|((s, (k, l)), c)| {
                let xs: Vec<&str> = Self::xi_word(*s).iter().map(|&b| xi_label(b)).collect();
                let ext = if xs.is_empty() { "1".to_string() } else { xs.join("") };
                format!("{c}*{ext}⊗v{:?}", self.w.weight_of((*k, *l)))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn parse_elt(&self, words: &[(&[&str], i64)]) -> Result<SuperElt> {
        let mut u = SuperElt::zero();
        for (w, c) in words {
            let mut word = Vec::new();
            for l in *w {
                if l.starts_with('<') {
                    let lin = parse_entry(self.algebra(), l)?;
                    let mut part = SuperElt::zero();
                    for (i, d) in lin {
                        part.add_term(word.iter().copied().chain([i as u8]).collect(), d);
                    }
                    u = u.add(&part.scale(&Scalar::int(*c)));
                    word.clear();
                    continue;
                }
                word.push(self.index(l)? as u8);
            }
            if !word.is_empty() {
                u.add_term(word, Scalar::int(*c));
            }
        }
        Ok(u)
    }

    /// Normal orders `lhs` and drops the words lying in `U g₁`.
    fn modulo_g1(&mut self, lhs: &SuperElt) -> SuperElt {
        self.engine.normal_order(lhs).filter(|w| !w.last().is_some_and(|&g| g >= G0_END))
    }

    /// The three reductions used for `ω′ = ξ11ξ22 ⊗ v`:
    /// `η11ξ11ξ22 ≡ ξ22⟨1010⟩`, `η22ξ11ξ22 ≡ -ξ11⟨0101⟩` and
    /// `η21η12ξ11ξ22 ≡ ⟨0110⟩ + Y2X2 - Y1X1` modulo `U g₁`.
    pub fn degree_two_identities(&mut self) -> Result<Vec<IdentityCheck>> {
        let cases: [(&str, &[&str], Vec<(&[&str], i64)>); 3] = [
            ("eta11", &["eta11", "xi11", "xi22"], vec![(&["xi22", "<1010>"], 1)]),
            ("eta22", &["eta22", "xi11", "xi22"], vec![(&["xi11", "<0101>"], -1)]),
            ("eta2112", &["eta21", "eta12", "xi11", "xi22"], vec![(&["<0110>"], 1), (&["Y2", "X2"], 1), (&["Y1", "X1"], -1)]),
        ];
        let mut out = Vec::new();
        for (name, lhs, rhs) in cases {
            let l = SuperElt::from_word(lhs.iter().map(|x| self.index(x).map(|i| i as u8)).collect::<Result<_>>()?, Scalar::one());
            let computed = self.modulo_g1(&l);
            let expected = self.engine.normal_order(&self.parse_elt(&rhs)?);
            out.push(IdentityCheck {
                name: name.into(),
                lhs: lhs.join(" "),
                computed: self.algebra().fmt_elt(&computed),
                expected: self.algebra().fmt_elt(&expected),
                holds: computed == expected,
            });
        }
        Ok(out)
    }

    /// Quasi-sphericity of `ω = ξ11 ⊗ v` for the `b = a-1` family, with `v`
    /// of weight `(1, 0 | -1, 0)`.
    pub fn quasi_spherical_check(&mut self, g0_word_bound: usize) -> Result<QuasiSphericalReport> {
        let [a, b, c, d] = self.w.weight;
        if !(b == 1 - a && c == a - 1 && d == -a) {
            return Err(Error::InvalidInput(format!("({a},{b}|{c},{d}) is not of the form (a,1-a|a-1,-a)")));
        }
        let v = self.w_index([1, 0, -1, 0])?;
        let omega = KacVector::basis((Self::mask(&["xi11"]), v));
        let omega_prime = KacVector::basis((Self::mask(&["xi11", "xi22"]), v));
        let mut k_orbit = Vec::new();
        let mut line = true;
        for l in K_LABELS {
            let img = self.module_action_label(l, &omega)?;
            let r = if img.is_zero() { Some(Scalar::zero()) } else { img.ratio_to(&omega_prime) };
            line &= r.is_some();
            k_orbit.push((l.to_string(), r));
        }
        line &= k_orbit.iter().any(|(_, r)| r.as_ref().is_some_and(|r| !r.is_zero()));
        let eta12 = self.module_action_label("eta12", &omega)?;
        let omega_cyclic = !eta12.is_zero() && eta12.grades() == BTreeSet::from([0]);
        let identities = self.degree_two_identities()?;

        // η_i η_j with g₀ words before, between and after
        let etas: Vec<usize> = ["eta11", "eta12", "eta21", "eta22"].iter().map(|l| self.index(l)).collect::<Result<_>>()?;
        let g0: Vec<usize> = ["h1", "h2", "h3", "h4", "X1", "Y1", "X2", "Y2"].iter().map(|l| self.index(l)).collect::<Result<_>>()?;
        let mut g0_words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..g0_word_bound {
            layer = layer.iter().flat_map(|w| g0.iter().map(move |&g| [w.clone(), vec![g as u8]].concat())).collect();
            g0_words.extend(layer.iter().cloned());
        }
        let mut words_checked = 0;
        let mut annihilation_failures = Vec::new();
        for i in 0..etas.len() {
            for j in i + 1..etas.len() {
                let (ei, ej) = (etas[i] as u8, etas[j] as u8);
                for w in &g0_words {
                    let shapes: [Vec<u8>; 3] = [
                        [w.clone(), vec![ei, ej]].concat(),
                        [vec![ei], w.clone(), vec![ej]].concat(),
                        [vec![ei, ej], w.clone()].concat(),
                    ];
                    for (n, word) in shapes.into_iter().enumerate() {
                        if w.is_empty() && n > 0 {
                            continue;
                        }
                        words_checked += 1;
                        let u = SuperElt::from_word(word.clone(), Scalar::one());
                        if !self.act(&u, &omega_prime).is_zero() {
                            annihilation_failures.push(
                                word.iter().map(|&g| self.algebra().label(g as usize).to_string()).collect::<Vec<_>>().join(" "),
                            );
                        }
                    }
                }
            }
        }
        let passed = line && omega_cyclic && identities.iter().all(|c| c.holds) && annihilation_failures.is_empty();
        Ok(QuasiSphericalReport {
            weight: self.w.weight,
            omega: self.fmt_vector(&omega),
            omega_prime: self.fmt_vector(&omega_prime),
            k_orbit,
            k_orbit_is_omega_prime_line: line,
            omega_cyclic,
            identities,
            words_checked,
            g0_word_bound,
            annihilation_failures,
            passed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_relations() {
        let w = Gl2PairModule::new([3, 0, 1, -1]).unwrap();
        assert_eq!(w.dim(), 12);
        // [X, Y] = h1 - h2 on every vector
        for kl in w.basis() {
            let xy = w.act("Y1", kl).and_then(|(c, kl2)| w.act("X1", kl2).map(|(d, _)| &c * &d)).unwrap_or_else(Scalar::zero);
            let yx = w.act("X1", kl).and_then(|(c, kl2)| w.act("Y1", kl2).map(|(d, _)| &c * &d)).unwrap_or_else(Scalar::zero);
            let wt = w.weight_of(kl);
            assert_eq!(&xy - &yx, Scalar::int(wt[0] - wt[1]));
        }
        assert!(Gl2PairModule::new([0, 1, 0, 0]).is_err());
    }

    #[test]
    fn eta12_on_omega() {
        let mut k = KacModule::for_hook(1, 0).unwrap();
        let v = k.w_index([1, 0, -1, 0]).unwrap();
        let omega = KacVector::basis((KacModule::mask(&["xi11"]), v));
        let img = k.module_action_label("eta12", &omega).unwrap();
        let x2v = k.w.act("X2", v).unwrap();
        assert_eq!(img, KacVector::basis((0, x2v.1)).scale(&x2v.0));
        assert!(k.module_action_label("xi11", &omega).unwrap().is_zero());
    }

    #[test]
    fn bracket_relation_on_basis() {
        let mut k = KacModule::for_hook(2, 0).unwrap();
        let alg = k.algebra().clone();
        let keys = k.basis();
        for x in 0..16 {
            for y in 0..16 {
                let sign = if alg.is_odd(x) && alg.is_odd(y) { Scalar::one() } else { -Scalar::one() };
                for &key in keys.iter().step_by(7) {
                    let v = KacVector::basis(key);
                    let yv = k.module_action(y, &v);
                    let xv = k.module_action(x, &v);
                    let lhs = k.module_action(x, &yv).add(&k.module_action(y, &xv).scale(&sign));
                    let mut rhs = KacVector::zero();
                    for (z, c) in alg.bracket(x, y).clone() {
                        rhs = rhs.add(&k.module_action(z, &v).scale(&c));
                    }
                    assert_eq!(lhs, rhs, "{} {}", alg.label(x), alg.label(y));
                }
            }
        }
    }

    #[test]
    fn spherical_for_typical_hook() {
        let mut k = KacModule::for_hook(2, 0).unwrap();
        assert_eq!(k.w.weight, [2, 0, -1, -1]);
        let sph = k.spherical_vectors().unwrap();
        assert_eq!(sph.len(), 1);
        let v = k.w_index([1, 1, -1, -1]).unwrap();
        assert!(!sph[0].coeff(&(KacModule::mask(&["xi11", "xi22"]), v)).is_zero());
        assert!(typicality(k.w.weight));
    }

    #[test]
    fn atypical_single_box() {
        let mut k = KacModule::for_hook(1, 0).unwrap();
        assert_eq!(k.w.weight, [1, 0, 0, -1]);
        assert!(k.spherical_vectors().unwrap().is_empty());
        assert!(!typicality(k.w.weight));
        assert!(!typicality([0; 4]));
        let r = k.quasi_spherical_check(2).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn trivial_weight_has_no_spherical_vector() {
        // ξ11·(1⊗v) ≠ 0 in the Kac module, so 1⊗v is not k-invariant
        let mut k = KacModule::new([0; 4]).unwrap();
        assert!(k.spherical_vectors().unwrap().is_empty());
    }
}
