//! The even supersymmetric ring `Λ⁰(p,q)`, its deformed sibling `Λ^ϱ`,
//! the change of variables `τ` between them, and Bernoulli generators.
//!
//! Elements of `Λ⁰` live in variables `x1..xp, y1..yq`; elements of `Λ^ϱ`
//! live in `z1..zp` (bosonic) and `w1..wq` (fermionic).

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{named_vars, xy_vars, Affine, ExactMatrix, ExactPoly, Scalar};
use crate::partitions::{partitions_of, Partition, Profile};

/// The deformation parameters `(k, h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformedParams {
    pub k: Scalar,
    pub h: Scalar,
}

impl DeformedParams {
    pub fn new(k: Scalar, h: Scalar) -> Self {
        DeformedParams { k, h }
    }

    /// `k = -1`, `h = p - q + 1/2`, where `ϱ = -ρ/2`.
    pub fn specialized(prof: Profile) -> Self {
        DeformedParams { k: Scalar::int(-1), h: Scalar::frac(2 * (prof.p as i64 - prof.q as i64) + 1, 2) }
    }

    /// `ϱ^B_i = -(h + k i)`.
    pub fn varrho_b(&self, i: usize) -> Scalar {
        -(&self.h + &(&self.k * &Scalar::int(i as i64)))
    }

    /// `ϱ^F_j = -(h + k/2 - 1/2 + j + k p) / k`.
    pub fn varrho_f(&self, prof: Profile, j: usize) -> Result<Scalar> {
        let half = Scalar::frac(1, 2);
        let num = &(&(&self.h + &(&self.k * &half)) - &half) + &(&Scalar::int(j as i64) + &(&self.k * &Scalar::int(prof.p as i64)));
        Ok(-(&num * &self.k.inv()?))
    }

    pub fn check(&self) -> Result<()> {
        if self.k.is_zero() {
            return Err(Error::InvalidInput("deformation parameter k must be nonzero".into()));
        }
        Ok(())
    }
}

/// The Weyl vector `ρ`: `ρ^B_i = 2(p-i)+1-2q`, `ρ^F_j = 2(q-j)+1`.
pub fn rho(prof: Profile) -> Vec<i64> {
    let (p, q) = (prof.p as i64, prof.q as i64);
    (1..=p).map(|i| 2 * (p - i) + 1 - 2 * q).chain((1..=q).map(|j| 2 * (q - j) + 1)).collect()
}

pub fn deformed_vars(prof: Profile) -> Vec<String> {
    named_vars("z", "w", prof.p, prof.q)
}

/// Distinct permutations of `exps` in lexicographic order.
fn distinct_permutations(exps: &[u32]) -> Vec<Vec<u32>> {
    let mut v = exps.to_vec();
    v.sort();
    let mut out = vec![v.clone()];
    // next_permutation
    loop {
        let n = v.len();
        let Some(i) = (1..n).rev().find(|&i| v[i - 1] < v[i]) else { break };
        let j = (i..n).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

fn padded(part: &Partition, n: usize) -> Vec<u32> {
    let mut v: Vec<u32> = part.parts().iter().map(|x| 2 * x).collect();
    v.resize(n, 0);
    v
}

/// Index pairs `(a, b)` for the monomial basis `m_a(x²) m_b(y²)` with
/// `|a| + |b| <= d`, ordered by total size, then by decreasing `|a|`, then
/// `a`, then `b`.
pub fn even_sym_labels(prof: Profile, d: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for n in 0..=d {
        for na in (0..=n).rev() {
            for a in partitions_of(na).into_iter().filter(|a| a.len() <= prof.p) {
                for b in partitions_of(n - na).into_iter().filter(|b| b.len() <= prof.q) {
                    out.push((a.clone(), b));
                }
            }
        }
    }
    out
}

/// `m_a(x²) m_b(y²)` in the given variables.
pub fn even_sym_monomial(prof: Profile, a: &Partition, b: &Partition, vars: &[String]) -> ExactPoly {
    let mut f = ExactPoly::zero(vars.to_vec());
    for ea in distinct_permutations(&padded(a, prof.p)) {
        for eb in distinct_permutations(&padded(b, prof.q)) {
            let mut e = ea.clone();
            e.extend(&eb);
            f.add_term(e, Scalar::one());
        }
    }
    f
}

/// Monomial basis of polynomials symmetric and even in each block, with
/// square-degree at most `d`.
pub fn even_sym_basis(prof: Profile, d: u32) -> Vec<ExactPoly> {
    let vars = xy_vars(prof.p, prof.q);
    even_sym_labels(prof, d).iter().map(|(a, b)| even_sym_monomial(prof, a, b, &vars)).collect()
}

/// A translation constraint: on the hyperplane `v_i = slope * v_{p+j} + offset`
/// the polynomial must be invariant under `v_i += 1, v_{p+j} -= 1`.
struct Translation {
    slope: Scalar,
    offset: Scalar,
}

fn translation_defect(f: &ExactPoly, prof: Profile, i: usize, j: usize, t: &Translation) -> Result<ExactPoly> {
    let n = prof.nvars();
    let vars = f.vars().to_vec();
    let (bi, fj) = (i - 1, prof.p + j - 1);
    let on_plane = |shift: i64| {
        let mut s: Vec<Affine> = (0..n).map(|v| Affine::var(n, v)).collect();
        s[bi] = Affine::scaled(n, fj, t.slope.clone(), &t.offset + &Scalar::int(shift));
        s[fj] = Affine::scaled(n, fj, Scalar::one(), Scalar::int(-shift));
        s
    };
    let moved = f.affine_substitute(&on_plane(1), &vars)?;
    let base = f.affine_substitute(&on_plane(0), &vars)?;
    moved.sub(&base)
}

fn undeformed_translation() -> Translation {
    Translation { slope: Scalar::int(-1), offset: Scalar::zero() }
}

fn deformed_translation(prof: Profile, params: &DeformedParams, i: usize, j: usize) -> Result<Translation> {
    // (X - ϱ, ε_i - δ_j) + (1 + k)/2 = 0, i.e. z_i = k w_j + ϱ_i - k ϱ_j - (1 + k)/2
    let k = &params.k;
    let offset = &(&params.varrho_b(i) - &(k * &params.varrho_f(prof, j)?)) - &(&(&Scalar::one() + k) * &Scalar::frac(1, 2));
    Ok(Translation { slope: k.clone(), offset })
}

/// Coefficient vectors of the combinations of `basis` whose translation
/// defects vanish.
fn translation_kernel(basis: &[ExactPoly], defect: impl Fn(&ExactPoly) -> Result<ExactPoly>) -> Result<Vec<Vec<Scalar>>> {
    let defects = basis.iter().map(&defect).collect::<Result<Vec<_>>>()?;
    let mut monos: Vec<Vec<u32>> = defects.iter().flat_map(|d| d.terms().map(|(e, _)| e.clone())).collect();
    monos.sort();
    monos.dedup();
    if monos.is_empty() {
        return Ok(ExactMatrix::identity(basis.len()).data);
    }
    let rows: Vec<Vec<Scalar>> = monos.iter().map(|e| defects.iter().map(|d| d.coeff(e)).collect()).collect();
    Ok(ExactMatrix::from_rows(rows)?.nullspace())
}

pub fn combine(basis: &[ExactPoly], coeffs: &[Scalar]) -> Result<ExactPoly> {
    let vars = basis.first().map(|b| b.vars().to_vec()).unwrap_or_default();
    let mut acc = ExactPoly::zero(vars);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c))?;
        }
    }
    Ok(acc)
}

/// Coordinates of each element of a `Λ⁰` basis in the monomial basis
/// returned by [`even_sym_basis`].
pub fn lambda0_basis_coords(prof: Profile, d: u32) -> Result<Vec<Vec<Scalar>>> {
    let basis = even_sym_basis(prof, d);
    if prof.p == 0 || prof.q == 0 {
        return Ok(ExactMatrix::identity(basis.len()).data);
    }
    let t = undeformed_translation();
    translation_kernel(&basis, |f| translation_defect(f, prof, 1, 1, &t))
}

/// Basis of `Λ⁰(p,q)` in square-degree at most `d`. Symmetry reduces the
/// translation condition to the pair `(1, 1)`.
pub fn lambda0_basis(prof: Profile, d: u32) -> Result<Vec<ExactPoly>> {
    let basis = even_sym_basis(prof, d);
    lambda0_basis_coords(prof, d)?.iter().map(|c| combine(&basis, c)).collect()
}

fn is_block_symmetric_even(f: &ExactPoly, prof: Profile) -> Result<bool> {
    let n = prof.nvars();
    let vars = f.vars().to_vec();
    let blocks = [(0, prof.p), (prof.p, n)];
    for (lo, hi) in blocks {
        for v in lo..hi {
            if v + 1 < hi {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(v, v + 1);
                if f.permute(&perm) != *f {
                    return Ok(false);
                }
            }
            let mut s: Vec<Affine> = (0..n).map(|u| Affine::var(n, u)).collect();
            s[v] = Affine::scaled(n, v, Scalar::int(-1), Scalar::zero());
            if f.affine_substitute(&s, &vars)? != *f {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_vars(f: &ExactPoly, expected: &[String]) -> Result<()> {
    if f.vars() != expected {
        return Err(Error::VariableMismatch(format!("expected variables {:?}, got {:?}", expected, f.vars())));
    }
    Ok(())
}

/// Full membership test for `Λ⁰`: block symmetry, evenness and the
/// translation condition for every pair `(i, j)`.
pub fn is_in_lambda0(f: &ExactPoly, prof: Profile) -> Result<bool> {
    check_vars(f, &xy_vars(prof.p, prof.q))?;
    if !is_block_symmetric_even(f, prof)? {
        return Ok(false);
    }
    let t = undeformed_translation();
    for i in 1..=prof.p {
        for j in 1..=prof.q {
            if !translation_defect(f, prof, i, j, &t)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Compares full membership with the reduced test that only checks the
/// pair `(1, 1)` after symmetry. Returns true when they agree.
pub fn groupoid_equivalence_check(f: &ExactPoly, prof: Profile) -> Result<bool> {
    let full = is_in_lambda0(f, prof)?;
    let reduced = is_block_symmetric_even(f, prof)?
        && (prof.p == 0
            || prof.q == 0
            || translation_defect(f, prof, 1, 1, &undeformed_translation())?.is_zero());
    Ok(full == reduced)
}

/// Substitution `z ↦ z - ϱ`, i.e. `f(z) = g(z - ϱ)` with `g` in shifted
/// coordinates. With `forward = true` maps `g` to `f`.
fn shift_by_varrho(f: &ExactPoly, prof: Profile, params: &DeformedParams, forward: bool) -> Result<ExactPoly> {
    let n = prof.nvars();
    let sign = if forward { Scalar::int(-1) } else { Scalar::one() };
    let mut subs = Vec::with_capacity(n);
    for i in 1..=prof.p {
        subs.push(Affine::scaled(n, i - 1, Scalar::one(), &sign * &params.varrho_b(i)));
    }
    for j in 1..=prof.q {
        subs.push(Affine::scaled(n, prof.p + j - 1, Scalar::one(), &sign * &params.varrho_f(prof, j)?));
    }
    f.affine_substitute(&subs, f.vars())
}

/// Basis of `Λ^ϱ` with square-degree at most `d`: shifted even symmetric
/// polynomials satisfying the deformed translation condition.
pub fn lambda_rho_basis(prof: Profile, params: &DeformedParams, d: u32) -> Result<Vec<ExactPoly>> {
    params.check()?;
    let vars = deformed_vars(prof);
    let shifted = even_sym_labels(prof, d)
        .iter()
        .map(|(a, b)| shift_by_varrho(&even_sym_monomial(prof, a, b, &vars), prof, params, true))
        .collect::<Result<Vec<_>>>()?;
    if prof.p == 0 || prof.q == 0 {
        return Ok(shifted);
    }
    let t = deformed_translation(prof, params, 1, 1)?;
    translation_kernel(&shifted, |f| translation_defect(f, prof, 1, 1, &t))?.iter().map(|c| combine(&shifted, c)).collect()
}

/// Membership in `Λ^ϱ` for polynomials in `z, w`.
pub fn is_in_lambda_rho(f: &ExactPoly, prof: Profile, params: &DeformedParams) -> Result<bool> {
    params.check()?;
    check_vars(f, &deformed_vars(prof))?;
    let g = shift_by_varrho(f, prof, params, false)?;
    if !is_block_symmetric_even(&g, prof)? {
        return Ok(false);
    }
    for i in 1..=prof.p {
        for j in 1..=prof.q {
            let t = deformed_translation(prof, params, i, j)?;
            if !translation_defect(f, prof, i, j, &t)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `τ`: `z_i ↦ (x_i - ρ^B_i)/2`, `w_j ↦ (y_j - ρ^F_j)/2`.
pub fn tau_map(f: &ExactPoly, prof: Profile) -> Result<ExactPoly> {
    check_vars(f, &deformed_vars(prof))?;
    let n = prof.nvars();
    let r = rho(prof);
    let half = Scalar::frac(1, 2);
    let subs: Vec<Affine> =
        (0..n).map(|v| Affine::scaled(n, v, half.clone(), Scalar::frac(-r[v], 2))).collect();
    f.affine_substitute(&subs, &xy_vars(prof.p, prof.q))
}

/// Bernoulli numbers `B_0..B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Scalar> {
    let mut b = vec![Scalar::one()];
    for m in 1..=n {
        // sum_{k<=m} C(m+1, k) B_k = 0
        let mut acc = Scalar::zero();
        let mut binom = Scalar::one();
        for (k, bk) in b.iter().enumerate() {
            acc += &(&binom * bk);
            binom = &(&binom * &Scalar::int((m + 1 - k) as i64)) / &Scalar::int(k as i64 + 1);
        }
        b.push(-(&acc / &Scalar::int(m as i64 + 1)));
    }
    b
}

/// Coefficients of the Bernoulli polynomial `B_n(t)`, constant term first.
pub fn bernoulli_poly_coeffs(n: usize) -> Vec<Scalar> {
    let b = bernoulli_numbers(n);
    let mut coeffs = vec![Scalar::zero(); n + 1];
    let mut binom = Scalar::one();
    for (k, bk) in b.iter().enumerate() {
        coeffs[n - k] = &binom * bk;
        binom = &(&binom * &Scalar::int((n - k) as i64)) / &Scalar::int(k as i64 + 1);
    }
    coeffs
}

/// `B_n(v + c) - B_n(c)` as a polynomial in the variable `v` of `vars`.
fn bernoulli_increment(n: usize, vars: &[String], v: usize, c: &Scalar) -> Result<ExactPoly> {
    let nv = vars.len();
    let shift = Affine::scaled(nv, v, Scalar::one(), c.clone());
    let t = ExactPoly::var(vars.to_vec(), v).affine_substitute(
        &(0..nv).map(|u| if u == v { shift.clone() } else { Affine::var(nv, u) }).collect::<Vec<_>>(),
        vars,
    )?;
    let mut acc = ExactPoly::zero(vars.to_vec());
    let mut pw = ExactPoly::one(vars.to_vec());
    let mut at_c = Scalar::zero();
    let mut c_pow = Scalar::one();
    for a in bernoulli_poly_coeffs(n) {
        acc = acc.add(&pw.scale(&a))?;
        at_c += &(&a * &c_pow);
        pw = pw.mul(&t)?;
        c_pow = &c_pow * c;
    }
    acc.sub(&ExactPoly::constant(vars.to_vec(), at_c))
}

/// The generator `f_l` of `Λ^ϱ`, in the variables `z, w`:
/// bosonic Bernoulli increments at `z_i + h + k i + 1/2` plus `k^{2l-1}`
/// times fermionic increments at `w_j + (h - 1/2 + j)/k + 1 + p`.
pub fn bernoulli_generator(l: u32, prof: Profile, params: &DeformedParams) -> Result<ExactPoly> {
    params.check()?;
    if l == 0 {
        return Err(Error::InvalidInput("generator index l must be positive".into()));
    }
    let vars = deformed_vars(prof);
    let n = 2 * l as usize;
    let (k, h) = (&params.k, &params.h);
    let half = Scalar::frac(1, 2);
    let kinv = k.inv()?;
    let mut f = ExactPoly::zero(vars.clone());
    for i in 1..=prof.p {
        let c = &(h + &(k * &Scalar::int(i as i64))) + &half;
        f = f.add(&bernoulli_increment(n, &vars, i - 1, &c)?)?;
    }
    let weight = k.powi(2 * l as i32 - 1)?;
    for j in 1..=prof.q {
        let c = &(&(&(h - &half) + &Scalar::int(j as i64)) * &kinv) + &Scalar::int(1 + prof.p as i64);
        f = f.add(&bernoulli_increment(n, &vars, prof.p + j - 1, &c)?.scale(&weight))?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_hooks;

    fn xy(prof: Profile) -> Vec<String> {
        xy_vars(prof.p, prof.q)
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(Profile::new(1, 1)), vec![-1, 1]);
        assert_eq!(rho(Profile::new(2, 1)), vec![1, -1, 1]);
        assert_eq!(rho(Profile::new(1, 2)), vec![-3, 3, 1]);
    }

    #[test]
    fn specialized_varrho_is_minus_half_rho() {
        for (p, q) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
            let prof = Profile::new(p, q);
            let prm = DeformedParams::specialized(prof);
            let r = rho(prof);
            for i in 1..=p {
                assert_eq!(prm.varrho_b(i), Scalar::frac(-r[i - 1], 2));
            }
            for j in 1..=q {
                assert_eq!(prm.varrho_f(prof, j).unwrap(), Scalar::frac(-r[p + j - 1], 2));
            }
        }
    }

    #[test]
    fn lambda0_small_basis() {
        let prof = Profile::new(1, 1);
        let b = lambda0_basis(prof, 1).unwrap();
        assert_eq!(b.len(), 2);
        let x2_minus_y2 =
            ExactPoly::from_terms(xy(prof), [(vec![2, 0], Scalar::one()), (vec![0, 2], Scalar::int(-1))]).unwrap();
        assert!(b.iter().any(|f| f.ratio_to(&x2_minus_y2).is_some()));
        for f in &b {
            assert!(is_in_lambda0(f, prof).unwrap());
        }
    }

    #[test]
    fn lambda0_dims_match_hook_counts() {
        for (p, q) in [(1, 1), (2, 1), (1, 2)] {
            let prof = Profile::new(p, q);
            for d in 0..=3 {
                assert_eq!(lambda0_basis(prof, d).unwrap().len(), enumerate_hooks(prof, d).len(), "{p},{q},{d}");
            }
        }
    }

    #[test]
    fn membership_rejects_non_members() {
        let prof = Profile::new(1, 1);
        let x2 = ExactPoly::from_terms(xy(prof), [(vec![2, 0], Scalar::one())]).unwrap();
        assert!(!is_in_lambda0(&x2, prof).unwrap());
        let x = ExactPoly::var(xy(prof), 0);
        assert!(!is_in_lambda0(&x, prof).unwrap());
        assert!(is_in_lambda0(&ExactPoly::one(xy(prof)), prof).unwrap());
        let bad_vars = ExactPoly::one(vec!["a".into(), "b".into()]);
        assert!(is_in_lambda0(&bad_vars, prof).is_err());
    }

    #[test]
    fn tau_of_linear() {
        let prof = Profile::new(1, 1);
        let z = ExactPoly::var(deformed_vars(prof), 0);
        let t = tau_map(&z, prof).unwrap();
        // z -> (x + 1)/2 since rho_1 = -1
        let want = ExactPoly::from_terms(xy(prof), [(vec![1, 0], Scalar::frac(1, 2)), (vec![0, 0], Scalar::frac(1, 2))])
            .unwrap();
        assert_eq!(t, want);
    }

    #[test]
    fn bernoulli_polys() {
        let b2 = bernoulli_poly_coeffs(2);
        assert_eq!(b2, vec![Scalar::frac(1, 6), Scalar::int(-1), Scalar::one()]);
        let nums = bernoulli_numbers(6);
        assert_eq!(nums[4], Scalar::frac(-1, 30));
        assert_eq!(nums[6], Scalar::frac(1, 42));
        // B_n(t + 1) - B_n(t) = n t^{n-1}
        let eval = |n: usize, t: &Scalar| {
            let mut acc = Scalar::zero();
            for (k, c) in bernoulli_poly_coeffs(n).iter().enumerate() {
                acc += &(c * &t.pow(k as u32));
            }
            acc
        };
        for n in 1..=6usize {
            for t in -3..=3i64 {
                let t = Scalar::int(t);
                let diff = &eval(n, &(&t + &Scalar::one())) - &eval(n, &t);
                assert_eq!(diff, &Scalar::int(n as i64) * &t.pow(n as u32 - 1));
            }
        }
        let vars = vec!["t".to_string()];
        let inc = bernoulli_increment(4, &vars, 0, &Scalar::frac(1, 3)).unwrap();
        let t = Scalar::frac(5, 2);
        assert_eq!(inc.eval(&[t.clone()]).unwrap(), &eval(4, &(&t + &Scalar::frac(1, 3))) - &eval(4, &Scalar::frac(1, 3)));
    }

    #[test]
    fn generators_specialize_into_lambda0() {
        for (p, q) in [(1, 1), (2, 1), (1, 2)] {
            let prof = Profile::new(p, q);
            let prm = DeformedParams::specialized(prof);
            for l in 1..=3 {
                let f = bernoulli_generator(l, prof, &prm).unwrap();
                assert!(is_in_lambda_rho(&f, prof, &prm).unwrap(), "{p},{q},{l}");
                assert!(is_in_lambda0(&tau_map(&f, prof).unwrap(), prof).unwrap(), "{p},{q},{l}");
            }
        }
    }

    #[test]
    fn generators_lie_in_generic_deformed_ring() {
        let prof = Profile::new(1, 1);
        for (k, h) in [(Scalar::int(-3), Scalar::int(2)), (Scalar::frac(-5, 7), Scalar::int(2))] {
            let prm = DeformedParams::new(k, h);
            for l in 1..=3 {
                let f = bernoulli_generator(l, prof, &prm).unwrap();
                assert!(is_in_lambda_rho(&f, prof, &prm).unwrap(), "l={l}");
            }
        }
    }

    #[test]
    fn deformed_dims_match_hook_counts() {
        let prm = DeformedParams::new(Scalar::int(-3), Scalar::int(2));
        for (p, q) in [(1, 1), (2, 1)] {
            let prof = Profile::new(p, q);
            for d in 0..=3 {
                assert_eq!(lambda_rho_basis(prof, &prm, d).unwrap().len(), enumerate_hooks(prof, d).len());
            }
        }
    }
}
