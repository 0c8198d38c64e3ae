//! The pair `(gl(2|2), gl(1|1) ⊕ gl(1|1))`: restricted roots, the Iwasawa
//! basis `n⁻ ⊕ a ⊕ k`, the Harish-Chandra projection and `Γ`.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::algebra::{matrix_unit, Lin, PbwEngine, SuperAlgebra, SuperElt};
use super::gl22::{gl22_in_order, K_LABELS, SHIMURA_ORDER};
use crate::error::{Error, Result};
use crate::exactpoly::{xy_vars, Affine, ExactMatrix, ExactPoly, Scalar};
use crate::partitions::Profile;

/// A restricted root `Σ b_i α^B_i + Σ f_j α^F_j` with its superdimension.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictedRoot {
    /// Coordinates on `α^B_1..α^B_p, α^F_1..α^F_q`.
    pub coords: Vec<i64>,
    pub even_dim: usize,
    pub odd_dim: usize,
    pub positive: bool,
    /// Root vectors as matrices in `gl(2p|2q)`.
    #[serde(skip)]
    pub vectors: Vec<ExactMatrix>,
}

impl RestrictedRoot {
    /// `-m_α / 2` with `m_α = even_dim - odd_dim`.
    pub fn deformed_multiplicity(&self) -> Scalar {
        Scalar::frac(-(self.even_dim as i64 - self.odd_dim as i64), 2)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootData {
    pub roots: Vec<RestrictedRoot>,
    /// Half the signed sum of positive roots.
    pub rho: Vec<Scalar>,
    /// Dimension of the zero weight space `m = a ⊕ t`.
    pub centralizer_dim: usize,
}

impl RootData {
    pub fn find(&self, coords: &[i64]) -> Option<&RestrictedRoot> {
        self.roots.iter().find(|r| r.coords == coords)
    }
}

/// Positivity: lexicographic, bosonic coordinates first.
fn is_positive(c: &[i64]) -> bool {
    c.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// `gl(m|n)` with matrix units `E_ij` in row-major order.
pub fn gl_units(m: usize, n: usize) -> Result<SuperAlgebra> {
    let size = m + n;
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for i in 0..size {
        for j in 0..size {
            labels.push(format!("E{},{}", i + 1, j + 1));
            mats.push(matrix_unit(size, i, j));
        }
    }
    SuperAlgebra::from_matrices(labels, mats, m)
}

/// `x_i = i(E_{i,p+i} - E_{p+i,i})` and `y_j` likewise in the fermionic
/// block, as matrices in `gl(2p|2q)`. At `p = q = 1` these are
/// `i(X1 - Y1)` and `i(X2 - Y2)`.
pub fn a_matrices(prof: Profile) -> Vec<ExactMatrix> {
    let (p, q) = (prof.p, prof.q);
    let size = 2 * p + 2 * q;
    let i = Scalar::i();
    let rot = |r: usize, s: usize| {
        let mut m = ExactMatrix::zeros(size, size);
        m.data[r][s] = i.clone();
        m.data[s][r] = -&i;
        m
    };
    (0..p).map(|k| rot(k, p + k)).chain((0..q).map(|k| rot(2 * p + k, 2 * p + q + k))).collect()
}

/// `x` and `y` in the named `gl(2|2)` basis of `alg`.
pub fn a_basis(alg: &SuperAlgebra) -> [Lin; 2] {
    let m = a_matrices(Profile::new(1, 1));
    [alg.decompose(&m[0]), alg.decompose(&m[1])]
}

/// Matrix of `ad(x)` on the basis: column `j` holds `[x, b_j]`.
fn ad_matrix(alg: &SuperAlgebra, x: &Lin) -> ExactMatrix {
    let n = alg.dim();
    let mut m = ExactMatrix::zeros(n, n);
    for j in 0..n {
        for (i, c) in x {
            for (k, d) in alg.bracket(*i, j) {
                m.data[*k][j] += &(c * d);
            }
        }
    }
    m
}

fn gershgorin_bound(m: &ExactMatrix) -> i64 {
    let mut best = 0i64;
    for j in 0..m.cols {
        let mut s = num_rational::BigRational::zero();
        for i in 0..m.rows {
            let e = &m.data[i][j];
            s += e.re.abs() + e.im.abs();
        }
        best = best.max(s.ceil().to_integer().to_i64().unwrap_or(i64::MAX));
    }
    best
}

fn shifted_block(m: &ExactMatrix, idx: &[usize], ev: i64) -> Vec<Vec<Scalar>> {
    idx.iter()
        .map(|&r| idx.iter().map(|&c| if r == c { &m.data[r][c] - &Scalar::int(ev) } else { m.data[r][c].clone() }).collect())
        .collect()
}

/// Restricted roots of `gl(2p|2q)` with respect to `a`, found by exact
/// simultaneous diagonalization of `ad a` on each parity.
pub fn restricted_roots(prof: Profile) -> Result<RootData> {
    let alg = gl_units(2 * prof.p, 2 * prof.q)?;
    let ads: Vec<ExactMatrix> = a_matrices(prof).iter().map(|m| ad_matrix(&alg, &alg.decompose(m))).collect();
    let n = alg.dim();
    let mut found: Vec<RestrictedRoot> = Vec::new();
    let mut total = 0;
    let mut centralizer_dim = 0;
    for odd in [false, true] {
        let idx: Vec<usize> = (0..n).filter(|&i| alg.is_odd(i) == odd).collect();
        if idx.is_empty() {
            continue;
        }
        // candidate eigenvalues of each ad(a_k) separately
        let mut cands: Vec<Vec<i64>> = Vec::new();
        for m in &ads {
            let bound = gershgorin_bound(m);
            cands.push(
                (-bound..=bound)
                    .filter(|&ev| !ExactMatrix::from_rows(shifted_block(m, &idx, ev)).unwrap().nullspace().is_empty())
                    .collect(),
            );
        }
        let mut combos: Vec<Vec<i64>> = vec![Vec::new()];
        for c in &cands {
            combos = combos.iter().flat_map(|pre| c.iter().map(move |&v| [pre.clone(), vec![v]].concat())).collect();
        }
        for coords in combos {
            let mut rows = Vec::new();
            for (m, &ev) in ads.iter().zip(&coords) {
                rows.extend(shifted_block(m, &idx, ev));
            }
            let kernel = ExactMatrix::from_rows(rows)?.nullspace();
            if kernel.is_empty() {
                continue;
            }
            total += kernel.len();
            if coords.iter().all(|&c| c == 0) {
                centralizer_dim += kernel.len();
                continue;
            }
            let vectors: Vec<ExactMatrix> = kernel
                .iter()
                .map(|v| {
                    let l: Lin = idx.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(&i, c)| (i, c.clone())).collect();
                    alg.lin_matrix(&l)
                })
                .collect();
            let k = vectors.len();
            match found.iter_mut().find(|r| r.coords == coords) {
                Some(r) => {
                    if odd {
                        r.odd_dim += k;
                    } else {
                        r.even_dim += k;
                    }
                    r.vectors.extend(vectors);
                }
                None => found.push(RestrictedRoot {
                    positive: is_positive(&coords),
                    coords,
                    even_dim: if odd { 0 } else { k },
                    odd_dim: if odd { k } else { 0 },
                    vectors,
                }),
            }
        }
    }
    if total != n {
        return Err(Error::NoSolution(format!("ad(a) is not diagonalizable over integer weights ({total} of {n})")));
    }
    found.sort_by(|a, b| a.coords.cmp(&b.coords));
    let mut rho = vec![Scalar::zero(); prof.nvars()];
    for r in found.iter().filter(|r| r.positive) {
        let m = Scalar::frac(r.even_dim as i64 - r.odd_dim as i64, 2);
        for (x, &c) in rho.iter_mut().zip(&r.coords) {
            *x += &(&m * &Scalar::int(c));
        }
    }
    Ok(RootData { roots: found, rho, centralizer_dim })
}

/// Enveloping-algebra machinery for the pair at `p = q = 1`.
pub struct SymmetricPair {
    /// Named basis in [`SHIMURA_ORDER`].
    pub named: PbwEngine,
    /// Iwasawa basis: `n⁻`, then `a`, then `k`.
    pub iwasawa: PbwEngine,
    pub roots: RootData,
    n_minus: usize,
    k_start: usize,
}

impl SymmetricPair {
    pub fn new() -> Result<Self> {
        let prof = Profile::new(1, 1);
        let named_alg = gl22_in_order(&SHIMURA_ORDER)?;
        let roots = restricted_roots(prof)?;
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        let sign = |x: i64| if x < 0 { "-" } else { "+" };
        for r in roots.roots.iter().filter(|r| !r.positive) {
            let (b, f) = (r.coords[0], r.coords[1]);
            for (k, v) in r.vectors.iter().enumerate() {
                labels.push(format!("n[{}{}B{}{}F]{}", sign(b), b.abs(), sign(f), f.abs(), k + 1));
                mats.push(v.clone());
            }
        }
        let n_minus = labels.len();
        for (name, l) in ["aB", "aF"].iter().zip(a_basis(&named_alg)) {
            labels.push(name.to_string());
            mats.push(named_alg.lin_matrix(&l));
        }
        let k_start = labels.len();
        for k in K_LABELS {
            labels.push(k.to_string());
            mats.push(named_alg.matrix(named_alg.index(k).unwrap()).clone());
        }
        let iw_alg = SuperAlgebra::from_matrices(labels, mats, 2)?;
        Ok(SymmetricPair { named: PbwEngine::new(named_alg), iwasawa: PbwEngine::new(iw_alg), roots, n_minus, k_start })
    }

    pub fn rho(&self) -> &[Scalar] {
        &self.roots.rho
    }

    fn is_n_minus(&self, g: u8) -> bool {
        (g as usize) < self.n_minus
    }

    fn is_k(&self, g: u8) -> bool {
        (g as usize) >= self.k_start
    }

    fn a_word_to_exp(&self, w: &[u8]) -> Option<Vec<u32>> {
        let mut e = vec![0u32; 2];
        for &g in w {
            let g = g as usize;
            if g < self.n_minus || g >= self.k_start {
                return None;
            }
            e[g - self.n_minus] += 1;
        }
        Some(e)
    }

    fn iwasawa_form(&mut self, u: &SuperElt) -> SuperElt {
        let moved = self.iwasawa.algebra().transfer(self.named.algebra(), u);
        self.iwasawa.normal_order(&moved)
    }

    fn pure_a_poly(&self, u: &SuperElt) -> ExactPoly {
        let mut f = ExactPoly::zero(vec!["u".into(), "v".into()]);
        for (w, c) in u.terms() {
            if let Some(e) = self.a_word_to_exp(w) {
                f.add_term(e, c.clone());
            }
        }
        f
    }

    /// `π(u)`: normal order in `n⁻, a, k` and keep the pure `a` part, as a
    /// polynomial in the coordinates `(u, v)` on `α^B, α^F`.
    pub fn hc_projection(&mut self, u: &SuperElt) -> ExactPoly {
        let n = self.iwasawa_form(u);
        self.pure_a_poly(&n)
    }

    /// `π(Σ l_i r_i)`: drops the `n⁻ U` part of each left factor and the
    /// `U k` part of each right factor before multiplying.
    pub fn hc_projection_of_products(&mut self, pairs: &[(SuperElt, SuperElt)]) -> ExactPoly {
        let mut out = ExactPoly::zero(vec!["u".into(), "v".into()]);
        for (l, r) in pairs {
            let l = self.iwasawa_form(l);
            let l = l.filter(|w| !w.iter().any(|&g| self.is_n_minus(g)));
            let r = self.iwasawa_form(r);
            let r = r.filter(|w| !w.iter().any(|&g| self.is_k(g)));
            let lr = self.iwasawa.mul(&l, &r);
            out = out.add(&self.pure_a_poly(&lr)).expect("same variables");
        }
        out
    }

    /// Generators of `k` that fail to supercommute with `u`.
    pub fn k_invariance_defects(&mut self, u: &SuperElt) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for k in K_LABELS {
            let g = SuperElt::gen(self.named.algebra().index(k).unwrap());
            if !self.named.supercommutator(&g, u)?.is_zero() {
                bad.push(k.to_string());
            }
        }
        Ok(bad)
    }

    /// `Γ(X) = π(X - ρ)` in variables `x1, y1`.
    pub fn shift_to_gamma(&self, pi: &ExactPoly) -> Result<ExactPoly> {
        let rho = self.rho();
        let subs = [
            Affine::scaled(2, 0, Scalar::one(), -&rho[0]),
            Affine::scaled(2, 1, Scalar::one(), -&rho[1]),
        ];
        pi.affine_substitute(&subs, &xy_vars(1, 1))
    }

    /// `Γ(u)` for a `k`-invariant `u`.
    pub fn gamma(&mut self, u: &SuperElt) -> Result<ExactPoly> {
        let bad = self.k_invariance_defects(u)?;
        if !bad.is_empty() {
            return Err(Error::NotInvariant(format!("does not commute with {}", bad.join(", "))));
        }
        let pi = self.hc_projection(u);
        self.shift_to_gamma(&pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_data() {
        let rd = restricted_roots(Profile::new(1, 1)).unwrap();
        let dims = |c: &[i64]| rd.find(c).map(|r| (r.even_dim, r.odd_dim));
        assert_eq!(dims(&[2, 0]), Some((1, 0)));
        assert_eq!(dims(&[0, 2]), Some((1, 0)));
        assert_eq!(dims(&[1, 1]), Some((0, 2)));
        assert_eq!(dims(&[1, -1]), Some((0, 2)));
        assert_eq!(dims(&[-1, 1]), Some((0, 2)));
        assert_eq!(dims(&[1, 0]), None);
        assert_eq!(rd.roots.len(), 8);
        assert_eq!(rd.rho, vec![Scalar::int(-1), Scalar::int(1)]);
        assert_eq!(rd.centralizer_dim, 4);
    }

    #[test]
    fn rho_matches_closed_form_for_larger_ranks() {
        for (p, q) in [(2, 1), (1, 2)] {
            let prof = Profile::new(p, q);
            let rd = restricted_roots(prof).unwrap();
            let want: Vec<Scalar> = crate::susyring::rho(prof).into_iter().map(Scalar::int).collect();
            assert_eq!(rd.rho, want, "({p},{q})");
        }
    }

    #[test]
    fn projection_of_simple_elements() {
        let mut sp = SymmetricPair::new().unwrap();
        let alg = sp.named.algebra().clone();
        // π(1) = 1, π(x) = u, π(k) = 0
        assert_eq!(sp.hc_projection(&SuperElt::one()), ExactPoly::one(vec!["u".into(), "v".into()]));
        let [ax, _] = a_basis(&alg);
        let pi = sp.hc_projection(&SuperElt::from_lin(&ax));
        assert_eq!(pi, ExactPoly::var(vec!["u".into(), "v".into()], 0));
        assert!(sp.hc_projection(&SuperElt::gen(alg.index("eta11").unwrap())).is_zero());
        // x is not k-invariant
        assert!(matches!(sp.gamma(&SuperElt::from_lin(&ax)), Err(Error::NotInvariant(_))));
        assert_eq!(sp.gamma(&SuperElt::one()).unwrap(), ExactPoly::one(xy_vars(1, 1)));
    }
}
