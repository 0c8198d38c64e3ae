//! Isotypic decomposition of `S(p⁺)` for `(gl(2|2), gl(1|1) ⊕ gl(1|1))`,
//! Shimura operators `D_μ` and their images under `Γ`.
//!
//! `S(p⁺)` and `S(p⁻)` are realized inside the enveloping algebra: both
//! `p⁺` and `p⁻` are abelian, so their normal-ordered monomials span the
//! symmetric superalgebras.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{independent_subset, ExactMatrix, ExactPoly, Scalar};
use crate::interp::{eval_point, solve_interpolation};
use crate::partitions::{enumerate_hooks, hooks_of_size, lambda_natural, Partition, Profile};
use crate::superlie::gl22::{K_LABELS, P_MINUS, P_PLUS};
use crate::superlie::{SuperElt, SymmetricPair};
use crate::susyring::is_in_lambda0;

/// Largest supported `|μ|`.
pub const MAX_DEGREE: u32 = 3;

/// Pairing of `S^d(p⁻)` with `S^d(p⁺)`: the supertrace form on degree one,
/// extended by letting `ξ ∈ p⁻` act as the superderivation `∂_ξ` with
/// `∂_ξ(η) = str(ξη)`. Monomials `Y^a` and `X^a` pair to `a!`. Dual bases
/// are taken for the transposed form `⟨η, ξ⟩ = (-1)^{|ξ|} ⟨ξ, η⟩`.
pub const PAIRING_CONVENTION: &str =
    "supertrace form extended by superderivations (monomial-factorial); dual basis for <eta, xi> = (-1)^|xi| <xi, eta>";

#[derive(Clone, Debug)]
pub struct IsotypicComponent {
    pub mu: Partition,
    /// Highest weight vector, killed by `eta11` and `xi22`.
    pub highest: SuperElt,
    pub basis: Vec<SuperElt>,
}

#[derive(Clone, Debug)]
pub struct ShimuraOp {
    pub mu: Partition,
    pub element: SuperElt,
    /// Dual basis vector and basis vector of each summand `ξ_ℓ η_ℓ`.
    pub pairs: Vec<(SuperElt, SuperElt)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShimuraReport {
    pub mu: Partition,
    pub gamma: ExactPoly,
    pub interpolation: ExactPoly,
    /// `Γ(D_μ) = c_μ I_μ`; `None` if the two are not proportional.
    pub c_mu: Option<Scalar>,
    pub in_lambda0: bool,
    /// Hooks `λ ≠ μ`, `|λ| ≤ |μ|` at which `Γ(D_μ)(2λ^♮+ρ) ≠ 0`.
    pub vanishing_failures: Vec<Partition>,
    pub k_invariant: bool,
    pub pairing: String,
}

/// Computation context holding the enveloping-algebra engines.
pub struct Shimura {
    pub pair: SymmetricPair,
    plus: Vec<u8>,
    minus: Vec<u8>,
    k_gens: Vec<usize>,
}

fn weight_of(alg: &crate::superlie::SuperAlgebra, g: usize) -> [i64; 4] {
    let mut w = [0; 4];
    for (t, slot) in w.iter_mut().enumerate() {
        let h = alg.index(&format!("h{}", t + 1)).unwrap();
        if let Some((_, c)) = alg.bracket(h, g).iter().find(|(i, _)| *i == g) {
            *slot = c.to_i64().expect("integral weight");
        }
    }
    w
}

/// Normal-ordered words of length `d` in the generators `gens` (sorted),
/// odd generators appearing at most once.
fn sym_monomials(gens: &[u8], odd: &dyn Fn(u8) -> bool, d: usize) -> Vec<Vec<u8>> {
    fn go(gens: &[u8], odd: &dyn Fn(u8) -> bool, d: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for k in start..gens.len() {
            cur.push(gens[k]);
            let next = if odd(gens[k]) { k + 1 } else { k };
            go(gens, odd, d, next, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(gens, odd, d, 0, &mut Vec::new(), &mut out);
    out
}

impl Shimura {
    pub fn new() -> Result<Self> {
        let pair = SymmetricPair::new()?;
        let alg = pair.named.algebra();
        let idx = |l: &str| alg.index(l).unwrap();
        let mut plus: Vec<u8> = P_PLUS.iter().map(|l| idx(l) as u8).collect();
        let mut minus: Vec<u8> = P_MINUS.iter().map(|l| idx(l) as u8).collect();
        plus.sort();
        minus.sort();
        let k_gens = K_LABELS.iter().map(|l| idx(l)).collect();
        Ok(Shimura { pair, plus, minus, k_gens })
    }

    fn odd(&self) -> impl Fn(u8) -> bool + '_ {
        move |g| self.pair.named.algebra().is_odd(g as usize)
    }

    pub fn plus_monomials(&self, d: usize) -> Vec<Vec<u8>> {
        sym_monomials(&self.plus, &self.odd(), d)
    }

    pub fn minus_monomials(&self, d: usize) -> Vec<Vec<u8>> {
        sym_monomials(&self.minus, &self.odd(), d)
    }

    fn coords(u: &SuperElt, monos: &[Vec<u8>]) -> Result<Vec<Scalar>> {
        let pos: BTreeMap<&Vec<u8>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![Scalar::zero(); monos.len()];
        for (w, c) in u.terms() {
            let &i = pos.get(w).ok_or_else(|| Error::InvalidInput(format!("word {w:?} outside the symmetric power")))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    fn from_coords(v: &[Scalar], monos: &[Vec<u8>]) -> SuperElt {
        let mut u = SuperElt::zero();
        for (c, m) in v.iter().zip(monos) {
            u.add_term(m.clone(), c.clone());
        }
        u
    }

    /// Adjoint action of the `k`-generator with algebra index `x`.
    pub fn ad(&mut self, x: usize, u: &SuperElt) -> Result<SuperElt> {
        self.pair.named.supercommutator(&SuperElt::gen(x), u)
    }

    fn word_weight(&self, w: &[u8]) -> [i64; 4] {
        let alg = self.pair.named.algebra();
        let mut out = [0; 4];
        for &g in w {
            let wt = weight_of(alg, g as usize);
            for t in 0..4 {
                out[t] += wt[t];
            }
        }
        out
    }

    /// `k`-weight `(a, -a, b, -b)` of the highest vector for `μ = (a, 1^b)`.
    pub fn highest_weight(mu: &Partition) -> Result<[i64; 4]> {
        let nat = lambda_natural(mu, Profile::new(1, 1))?;
        let (a, b) = (nat.b[0], nat.f[0]);
        Ok([a, -a, b, -b])
    }

    fn highest_vector(&mut self, mu: &Partition) -> Result<SuperElt> {
        let d = mu.size() as usize;
        let target = Self::highest_weight(mu)?;
        let monos: Vec<Vec<u8>> = self.plus_monomials(d).into_iter().filter(|m| self.word_weight(m) == target).collect();
        let all = self.plus_monomials(d);
        let alg = self.pair.named.algebra();
        let raising = [alg.index("eta11").unwrap(), alg.index("xi22").unwrap()];
        let mut rows: Vec<Vec<Scalar>> = vec![Vec::new(); 2 * all.len()];
        for m in &monos {
            let mut col = Vec::new();
            for &r in &raising {
                let img = self.ad(r, &SuperElt::from_word(m.clone(), Scalar::one()))?;
                col.extend(Self::coords(&img, &all)?);
            }
            for (row, c) in rows.iter_mut().zip(col) {
                row.push(c);
            }
        }
        let kernel = if monos.is_empty() {
            Vec::new()
        } else {
            ExactMatrix::from_rows(rows)?.nullspace()
        };
        match kernel.len() {
            1 => Ok(Self::from_coords(&kernel[0], &monos)),
            0 => Err(Error::NoSolution(format!("no highest weight vector for {mu}"))),
            _ => Err(Error::NotUnique(format!("highest weight vector for {mu} is not unique"))),
        }
    }

    /// `W_μ`: the `k`-submodule generated by the highest weight vector.
    pub fn component(&mut self, mu: &Partition) -> Result<IsotypicComponent> {
        let d = mu.size() as usize;
        let all = self.plus_monomials(d);
        let highest = self.highest_vector(mu)?;
        let mut basis = vec![highest.clone()];
        let mut span = vec![Self::coords(&highest, &all)?];
        let mut frontier = vec![highest.clone()];
        while let Some(u) = frontier.pop() {
            for x in self.k_gens.clone() {
                let img = self.ad(x, &u)?;
                if img.is_zero() {
                    continue;
                }
                let c = Self::coords(&img, &all)?;
                let mut trial = span.clone();
                trial.push(c.clone());
                if independent_subset(&trial, all.len()).len() == trial.len() {
                    span.push(c);
                    basis.push(img.clone());
                    frontier.push(img);
                }
            }
        }
        Ok(IsotypicComponent { mu: mu.clone(), highest, basis })
    }

    /// `S^d(p⁺) = ⊕ W_μ` over hooks `|μ| = d`.
    pub fn isotypic_decomposition(&mut self, d: u32) -> Result<Vec<IsotypicComponent>> {
        if d > MAX_DEGREE {
            return Err(Error::Unsupported(format!("isotypic decomposition supported for d <= {MAX_DEGREE}")));
        }
        let comps: Vec<IsotypicComponent> =
            hooks_of_size(Profile::new(1, 1), d).iter().map(|mu| self.component(mu)).collect::<Result<_>>()?;
        let total: usize = comps.iter().map(|c| c.basis.len()).sum();
        let dim = self.plus_monomials(d as usize).len();
        if total != dim {
            return Err(Error::NoSolution(format!("components of S^{d}(p+) have total dimension {total}, expected {dim}")));
        }
        Ok(comps)
    }

    fn form(&self, xi: u8, eta: u8) -> Scalar {
        let alg = self.pair.named.algebra();
        let m = alg.matrix(xi as usize).mul(alg.matrix(eta as usize)).expect("square matrices");
        crate::superlie::supertrace(&m, 2)
    }

    /// `∂_ξ` applied to a word of `S(p⁺)`.
    fn derive_word(&self, xi: u8, w: &[u8]) -> Vec<(Vec<u8>, Scalar)> {
        let odd = self.odd();
        let mut out = Vec::new();
        let mut passed_odd = false;
        for (i, &g) in w.iter().enumerate() {
            let b = self.form(xi, g);
            if !b.is_zero() {
                let sign = if odd(xi) && passed_odd { -Scalar::one() } else { Scalar::one() };
                let mut rest = w.to_vec();
                rest.remove(i);
                out.push((rest, &sign * &b));
            }
            if odd(g) {
                passed_odd = !passed_odd;
            }
        }
        out
    }

    /// `⟨u, w⟩`: constant term of `∂_u w` for a word `u` of `S(p⁻)`.
    pub fn pairing_words(&self, u: &[u8], w: &[u8]) -> Scalar {
        if u.len() != w.len() {
            return Scalar::zero();
        }
        // ∂_{ξ_1 ⋯ ξ_n} = ∂_{ξ_1} ∘ ⋯ ∘ ∂_{ξ_n}
        let Some((&last, rest)) = u.split_last() else {
            return Scalar::one();
        };
        let mut acc = Scalar::zero();
        for (w2, c) in self.derive_word(last, w) {
            acc += &(&c * &self.pairing_words(rest, &w2));
        }
        acc
    }

    pub fn pairing(&self, u: &SuperElt, w: &SuperElt) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, c) in u.terms() {
            for (b, d) in w.terms() {
                acc += &(&(c * d) * &self.pairing_words(a, b));
            }
        }
        acc
    }

    /// Basis of `W_μ^* ⊂ S^d(p⁻)` dual to `comp.basis` under the transposed
    /// form, vanishing on the other components of `S^d(p⁺)`.
    pub fn dual_basis(&mut self, comp: &IsotypicComponent, others: &[IsotypicComponent]) -> Result<Vec<SuperElt>> {
        let d = comp.mu.size() as usize;
        let minus = self.minus_monomials(d);
        let full: Vec<&SuperElt> = comp.basis.iter().chain(others.iter().flat_map(|c| c.basis.iter())).collect();
        if full.len() != minus.len() {
            return Err(Error::InvalidInput("components do not exhaust the symmetric power".into()));
        }
        // gram[i][j] = ⟨minus_i, full_j⟩
        let gram = ExactMatrix::from_rows(
            minus
                .iter()
                .map(|m| {
                    let u = SuperElt::from_word(m.clone(), Scalar::one());
                    full.iter().map(|w| self.pairing(&u, w)).collect()
                })
                .collect(),
        )?;
        let inv = gram.inverse().map_err(|_| Error::NoSolution(format!("singular pairing in degree {d}")))?;
        // dual_j = ±Σ_i inv[j][i] minus_i
        Ok((0..comp.basis.len())
            .map(|j| {
                let odd = self.pair.named.parity(&comp.basis[j]) == Some(true);
                let sign = if odd { -Scalar::one() } else { Scalar::one() };
                let row: Vec<Scalar> = (0..minus.len()).map(|i| &sign * &inv.data[j][i]).collect();
                Self::from_coords(&row, &minus)
            })
            .collect())
    }

    /// `D_μ = Σ ξ_ℓ η_ℓ`.
    pub fn shimura_operator(&mut self, mu: &Partition) -> Result<ShimuraOp> {
        let d = mu.size();
        if d > MAX_DEGREE {
            return Err(Error::Unsupported(format!("Shimura operators supported for |mu| <= {MAX_DEGREE}")));
        }
        if mu.is_empty() {
            return Ok(ShimuraOp { mu: mu.clone(), element: SuperElt::one(), pairs: vec![(SuperElt::one(), SuperElt::one())] });
        }
        let comps = self.isotypic_decomposition(d)?;
        let pos = comps.iter().position(|c| &c.mu == mu).ok_or_else(|| Error::InvalidInput(format!("{mu} is not a (1,1)-hook")))?;
        let others: Vec<IsotypicComponent> = comps.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, c)| c.clone()).collect();
        let comp = &comps[pos];
        let duals = self.dual_basis(comp, &others)?;
        let pairs: Vec<(SuperElt, SuperElt)> = duals.into_iter().zip(comp.basis.iter().cloned()).collect();
        let mut element = SuperElt::zero();
        for (xi, eta) in &pairs {
            element = element.add(&xi.concat(eta));
        }
        Ok(ShimuraOp { mu: mu.clone(), element, pairs })
    }

    pub fn is_k_invariant(&mut self, op: &ShimuraOp) -> Result<bool> {
        Ok(self.pair.k_invariance_defects(&op.element)?.is_empty())
    }

    /// `Γ(D_μ)` in variables `x1, y1`, computed through the products
    /// `ξ_ℓ η_ℓ` without forming `D_μ` in the Iwasawa basis.
    pub fn gamma_of_operator(&mut self, op: &ShimuraOp) -> Result<ExactPoly> {
        let pi = self.pair.hc_projection_of_products(&op.pairs);
        let g = self.pair.shift_to_gamma(&pi)?;
        if g.is_zero() {
            return Err(Error::NoSolution(format!("Gamma(D_{}) vanishes", op.mu)));
        }
        Ok(g)
    }

    pub fn gamma_of_shimura(&mut self, mu: &Partition) -> Result<ExactPoly> {
        let op = self.shimura_operator(mu)?;
        self.gamma_of_operator(&op)
    }

    /// Full comparison of `Γ(D_μ)` with `I_μ`.
    pub fn report(&mut self, mu: &Partition, check_invariance: bool) -> Result<ShimuraReport> {
        let prof = Profile::new(1, 1);
        let op = self.shimura_operator(mu)?;
        let k_invariant = if check_invariance { self.is_k_invariant(&op)? } else { true };
        let gamma = self.gamma_of_operator(&op)?;
        let interpolation = solve_interpolation(mu, prof)?.poly;
        let c_mu = gamma.ratio_to(&interpolation);
        let in_lambda0 = is_in_lambda0(&gamma, prof)?;
        let mut vanishing_failures = Vec::new();
        for lambda in enumerate_hooks(prof, mu.size()) {
            if &lambda != mu && !gamma.eval_ints(&eval_point(&lambda, prof)?)?.is_zero() {
                vanishing_failures.push(lambda);
            }
        }
        Ok(ShimuraReport {
            mu: mu.clone(),
            gamma,
            interpolation,
            c_mu,
            in_lambda0,
            vanishing_failures,
            k_invariant,
            pairing: PAIRING_CONVENTION.into(),
        })
    }
}
