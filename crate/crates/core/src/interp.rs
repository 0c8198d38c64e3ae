//! Interpolation polynomials: `I_μ` in `Λ⁰` and the deformed `J_μ` in `Λ^ϱ`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{ExactMatrix, ExactPoly, Scalar};
use crate::partitions::{contains, enumerate_hooks, hooks_of_size, lambda_natural, Partition, Profile};
use crate::susyring::{combine, even_sym_basis, lambda0_basis_coords, lambda_rho_basis, DeformedParams};

pub use crate::susyring::rho;

/// How the overall scale of an interpolation polynomial was fixed.
/// `extra_points` counts the additional vanishing conditions at hooks
/// `λ ⊉ μ` with `|μ| < |λ|` needed to make the solution unique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Normalization {
    /// Value at the point of `μ` equals the normalization constant.
    Value { value: Scalar, extra_points: usize },
    /// The normalization constant is zero; the first nonzero coordinate in
    /// the even monomial basis is set to one.
    Degenerate { extra_points: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InterpResult {
    pub mu: Partition,
    pub poly: ExactPoly,
    pub normalization: Normalization,
}

/// `2λ^♮ + ρ`.
pub fn eval_point(lambda: &Partition, prof: Profile) -> Result<Vec<i64>> {
    let nat = lambda_natural(lambda, prof)?.concat();
    Ok(nat.iter().zip(rho(prof)).map(|(x, r)| 2 * x + r).collect())
}

/// `∏_{(i,j)∈μ} (μ_i - j + μ'_j - i + 1)(μ_i + j - μ'_j - i + 2p - 2q)`.
pub fn normalization_value(mu: &Partition, prof: Profile) -> Scalar {
    let t = mu.transpose();
    let shift = 2 * (prof.p as i64 - prof.q as i64);
    let mut acc = Scalar::one();
    for (i, j) in mu.boxes() {
        let (mi, tj, i, j) = (mu.part(i) as i64, t.part(j) as i64, i as i64, j as i64);
        acc = &acc * &Scalar::int((mi - j + tj - i + 1) * (mi + j - tj - i + shift));
    }
    acc
}

/// `∏_{(i,j)∈μ} (μ_i - j - k(μ'_j - i) + 1)(μ_i + j + k(μ'_j + i) + 2h - 1)`.
pub fn general_normalization(mu: &Partition, k: &Scalar, h: &Scalar) -> Scalar {
    let t = mu.transpose();
    let mut acc = Scalar::one();
    for (i, j) in mu.boxes() {
        let (mi, tj, i, j) = (mu.part(i) as i64, t.part(j) as i64, i as i64, j as i64);
        let a = &Scalar::int(mi - j + 1) - &(k * &Scalar::int(tj - i));
        let b = &(&Scalar::int(mi + j - 1) + &(k * &Scalar::int(tj + i))) + &(&Scalar::int(2) * h);
        acc = &acc * &(&a * &b);
    }
    acc
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::int(x)).collect()
}

/// Shared solver: `basis` spans the candidate space, `point` maps a hook
/// to its evaluation point, `norm` is the required value at `μ`.
fn solve_on_basis(
    mu: &Partition,
    prof: Profile,
    basis: &[ExactPoly],
    coords_in_monomials: &[Vec<Scalar>],
    point: &dyn Fn(&Partition) -> Result<Vec<Scalar>>,
    norm: Scalar,
) -> Result<(Vec<Scalar>, Normalization)> {
    let d = mu.size();
    let others: Vec<Partition> = enumerate_hooks(prof, d).into_iter().filter(|l| l != mu).collect();
    let eval_row = |l: &Partition| -> Result<Vec<Scalar>> {
        let pt = point(l)?;
        basis.iter().map(|b| b.eval(&pt)).collect()
    };
    let mut rows = others.iter().map(eval_row).collect::<Result<Vec<_>>>()?;
    let mu_row = eval_row(mu)?;
    let extra: Vec<Partition> = ((d + 1)..=(d + 3))
        .flat_map(|n| hooks_of_size(prof, n))
        .filter(|l| !contains(l, mu))
        .collect();
    let mut used = 0;
    loop {
        let mut system = rows.clone();
        system.push(mu_row.clone());
        let m = ExactMatrix::from_rows(system)?;
        let done = if norm.is_zero() {
            let kernel = m.nullspace();
            match kernel.len() {
                0 => return Err(Error::NoSolution(format!("no nonzero polynomial vanishes as required for {mu}"))),
                1 => Some((
                    normalize_first_nonzero(&kernel[0], coords_in_monomials)?,
                    Normalization::Degenerate { extra_points: used },
                )),
                _ => None,
            }
        } else {
            let mut rhs = vec![Scalar::zero(); m.rows];
            *rhs.last_mut().unwrap() = norm.clone();
            let (c, kernel) = m.solve_affine(&rhs)?;
            kernel.is_empty().then(|| (c, Normalization::Value { value: norm.clone(), extra_points: used }))
        };
        if let Some(r) = done {
            return Ok(r);
        }
        if used == extra.len() {
            return Err(Error::NotUnique(format!("interpolation conditions for {mu} leave a family after all extra points")));
        }
        rows.push(eval_row(&extra[used])?);
        used += 1;
    }
}

/// Scales `c` so that the first nonzero coordinate of `Σ c_k basis_k` in the
/// monomial basis equals one.
fn normalize_first_nonzero(c: &[Scalar], coords_in_monomials: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
    let nmono = coords_in_monomials.first().map_or(0, Vec::len);
    let mono: Vec<Scalar> = (0..nmono)
        .map(|m| {
            let mut acc = Scalar::zero();
            for (ck, b) in c.iter().zip(coords_in_monomials) {
                acc += &(ck * &b[m]);
            }
            acc
        })
        .collect();
    let lead = mono.iter().find(|x| !x.is_zero()).ok_or_else(|| Error::NoSolution("zero polynomial".into()))?;
    let inv = lead.inv()?;
    Ok(c.iter().map(|x| x * &inv).collect())
}

/// The interpolation polynomial `I_μ ∈ Λ⁰(p,q)` of degree `2|μ|`.
pub fn solve_interpolation(mu: &Partition, prof: Profile) -> Result<InterpResult> {
    let d = mu.size();
    let mono = even_sym_basis(prof, d);
    let coords = lambda0_basis_coords(prof, d)?;
    let basis = coords.iter().map(|c| combine(&mono, c)).collect::<Result<Vec<_>>>()?;
    let point = |l: &Partition| Ok(ints(&eval_point(l, prof)?));
    let (c, normalization) = solve_on_basis(mu, prof, &basis, &coords, &point, normalization_value(mu, prof))?;
    Ok(InterpResult { mu: mu.clone(), poly: combine(&basis, &c)?, normalization })
}

/// The deformed interpolation polynomial `J_μ ∈ Λ^ϱ`, evaluated at `λ^♮`.
pub fn solve_general(mu: &Partition, prof: Profile, params: &DeformedParams) -> Result<InterpResult> {
    let d = mu.size();
    let basis = lambda_rho_basis(prof, params, d)?;
    // coordinates of each basis element in its own monomial expansion, for
    // the degenerate fallback
    let mut monos: Vec<Vec<u32>> = basis.iter().flat_map(|b| b.terms().map(|(e, _)| e.clone())).collect();
    monos.sort();
    monos.dedup();
    monos.reverse();
    let coords: Vec<Vec<Scalar>> = basis.iter().map(|b| monos.iter().map(|e| b.coeff(e)).collect()).collect();
    let point = |l: &Partition| Ok(ints(&lambda_natural(l, prof)?.concat()));
    let norm = general_normalization(mu, &params.k, &params.h);
    let (c, normalization) = solve_on_basis(mu, prof, &basis, &coords, &point, norm)?;
    Ok(InterpResult { mu: mu.clone(), poly: combine(&basis, &c)?, normalization })
}

/// Hooks `λ ⊉ μ` with `|μ| < |λ| <= |μ| + slack` at which `f` fails to vanish.
pub fn extra_vanishing_failures(f: &ExactPoly, mu: &Partition, prof: Profile, slack: u32) -> Result<Vec<Partition>> {
    let d = mu.size();
    let mut bad = Vec::new();
    for n in (d + 1)..=(d + slack) {
        for l in hooks_of_size(prof, n) {
            if !contains(&l, mu) && !f.eval(&ints(&eval_point(&l, prof)?))?.is_zero() {
                bad.push(l);
            }
        }
    }
    Ok(bad)
}

pub fn verify_extra_vanishing(f: &ExactPoly, mu: &Partition, prof: Profile, slack: u32) -> Result<bool> {
    Ok(extra_vanishing_failures(f, mu, prof, slack)?.is_empty())
}

/// Values `I_μ(2λ^♮ + ρ)` for all hooks `μ, λ` with size at most `d`;
/// rows indexed by `μ`, columns by `λ`.
pub fn evaluation_table(prof: Profile, d: u32) -> Result<(Vec<Partition>, ExactMatrix)> {
    let hooks = enumerate_hooks(prof, d);
    let mut rows = Vec::new();
    for mu in &hooks {
        let f = solve_interpolation(mu, prof)?.poly;
        rows.push(hooks.iter().map(|l| f.eval(&ints(&eval_point(l, prof)?))).collect::<Result<Vec<_>>>()?);
    }
    Ok((hooks, ExactMatrix::from_rows(rows)?))
}

/// Values `J_μ(λ^♮)` for hooks of size at most `d`.
pub fn general_evaluation_table(prof: Profile, params: &DeformedParams, d: u32) -> Result<(Vec<Partition>, ExactMatrix)> {
    let hooks = enumerate_hooks(prof, d);
    let mut rows = Vec::new();
    for mu in &hooks {
        let f = solve_general(mu, prof, params)?.poly;
        rows.push(
            hooks.iter().map(|l| f.eval(&ints(&lambda_natural(l, prof)?.concat()))).collect::<Result<Vec<_>>>()?,
        );
    }
    Ok((hooks, ExactMatrix::from_rows(rows)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::xy_vars;
    use crate::susyring::{is_in_lambda0, is_in_lambda_rho, tau_map};

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn one_one() -> Profile {
        Profile::new(1, 1)
    }

    #[test]
    fn eval_points() {
        assert_eq!(eval_point(&Partition::empty(), one_one()).unwrap(), vec![-1, 1]);
        assert_eq!(eval_point(&part(&[2]), one_one()).unwrap(), vec![3, 1]);
        assert_eq!(eval_point(&part(&[1, 1]), one_one()).unwrap(), vec![1, 3]);
    }

    #[test]
    fn normalization_values() {
        assert_eq!(normalization_value(&part(&[2]), one_one()), Scalar::int(4));
        assert_eq!(normalization_value(&part(&[1]), one_one()), Scalar::zero());
        assert_eq!(normalization_value(&Partition::empty(), one_one()), Scalar::one());
        assert_eq!(general_normalization(&part(&[1]), &Scalar::int(-3), &Scalar::int(2)), Scalar::int(-1));
    }

    #[test]
    fn general_normalization_specializes() {
        for (p, q) in [(1, 1), (2, 1), (1, 2)] {
            let prof = Profile::new(p, q);
            let prm = DeformedParams::specialized(prof);
            for mu in enumerate_hooks(prof, 4) {
                assert_eq!(general_normalization(&mu, &prm.k, &prm.h), normalization_value(&mu, prof), "{mu}");
            }
        }
    }

    #[test]
    fn i2_closed_form() {
        let r = solve_interpolation(&part(&[2]), one_one()).unwrap();
        let v = xy_vars(1, 1);
        let x2 = ExactPoly::from_terms(v.clone(), [(vec![2, 0], Scalar::one())]).unwrap();
        let y2 = ExactPoly::from_terms(v.clone(), [(vec![0, 2], Scalar::one())]).unwrap();
        let want = x2
            .sub(&y2)
            .unwrap()
            .mul(&x2.sub(&ExactPoly::one(v)).unwrap())
            .unwrap()
            .scale(&Scalar::frac(1, 16));
        assert_eq!(r.poly, want);
        assert!(is_in_lambda0(&r.poly, one_one()).unwrap());
    }

    #[test]
    fn degenerate_mu_one() {
        let r = solve_interpolation(&part(&[1]), one_one()).unwrap();
        let v = xy_vars(1, 1);
        let want = ExactPoly::from_terms(v, [(vec![2, 0], Scalar::one()), (vec![0, 2], Scalar::int(-1))]).unwrap();
        assert_eq!(r.poly, want);
        assert!(matches!(r.normalization, Normalization::Degenerate { .. }));
    }

    #[test]
    fn general_tau_matches_undeformed() {
        for (p, q) in [(1, 1), (2, 1), (1, 2)] {
            let prof = Profile::new(p, q);
            let prm = DeformedParams::specialized(prof);
            for mu in enumerate_hooks(prof, 2) {
                let j = solve_general(&mu, prof, &prm).unwrap();
                let i = solve_interpolation(&mu, prof).unwrap();
                assert!(is_in_lambda_rho(&j.poly, prof, &prm).unwrap());
                let t = tau_map(&j.poly, prof).unwrap();
                assert!(t.ratio_to(&i.poly).is_some(), "{p},{q},{mu}: {t} vs {}", i.poly);
            }
        }
    }

    #[test]
    fn generic_table_is_triangular() {
        let prm = DeformedParams::new(Scalar::frac(-5, 7), Scalar::int(2));
        let (_, m) = general_evaluation_table(one_one(), &prm, 3).unwrap();
        assert!(m.is_upper_triangular());
        assert!((0..m.rows).all(|i| !m.data[i][i].is_zero()));
    }

    #[test]
    fn normalization_of_two_vanishes_at_k_minus_three() {
        // box (1,1) of (2): second factor (2 + 1 - 1) - 3(1 + 1) + 2h = 0 at h = 2
        let (k, h) = (Scalar::int(-3), Scalar::int(2));
        assert!(general_normalization(&part(&[2]), &k, &h).is_zero());
        let prm = DeformedParams::new(k, h);
        let (hooks, m) = general_evaluation_table(one_one(), &prm, 2).unwrap();
        let two = hooks.iter().position(|l| l == &part(&[2])).unwrap();
        assert!(m.data[two][two].is_zero());
    }
}
