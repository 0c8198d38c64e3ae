use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use proptest::prelude::*;

use superhc::borel::{odd_reflect, Character, MarkedWeight};
use superhc::exactpoly::{ExactMatrix, ExactPoly, Scalar};
use superhc::interp::eval_point;
use superhc::kacrep::{KacKey, KacModule, KacVector};
use superhc::partitions::{contains, hooks_of_size, is_hook, lambda_natural, Partition, Profile};
use superhc::superlie::gl22::{gl22, K_LABELS};
use superhc::superlie::{normal_order, PbwEngine, SuperAlgebra, SuperElt, SymmetricPair};
use superhc::susyring::{combine, deformed_vars, is_in_lambda0, lambda0_basis, tau_map};

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::frac(n, d))
}

fn gaussian_scalar() -> impl Strategy<Value = Scalar> {
    (small_scalar(), small_scalar()).prop_map(|(a, b)| &a + &(&b * &Scalar::i()))
}

fn profile() -> impl Strategy<Value = Profile> {
    (1usize..=3, 1usize..=3).prop_map(|(p, q)| Profile::new(p, q))
}

fn poly_in(vars: Vec<String>, max_exp: u32) -> impl Strategy<Value = ExactPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), small_scalar()), 0..5)
        .prop_map(move |terms| ExactPoly::from_terms(vars.clone(), terms).expect("exponent lengths match"))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(Scalar::int), cols), rows)
        .prop_map(|r| ExactMatrix::from_rows(r).expect("rectangular"))
}

fn super_elt(max_len: usize, terms: usize) -> impl Strategy<Value = SuperElt> {
    prop::collection::vec((prop::collection::vec(0u8..16, 0..=max_len), (-4i64..=4).prop_map(Scalar::int)), 1..=terms)
        .prop_map(|ts| {
            let mut u = SuperElt::zero();
            for (w, c) in ts {
                u.add_term(w, c);
            }
            u
        })
}

/// Image of `u` under a representation given by the matrices of the generators.
fn represent(gens: &[ExactMatrix], u: &SuperElt) -> ExactMatrix {
    let n = gens[0].rows;
    let mut acc = ExactMatrix::zeros(n, n);
    for (w, c) in u.terms() {
        let mut m = ExactMatrix::identity(n);
        for &g in w {
            m = m.mul(&gens[g as usize]).expect("square");
        }
        acc = matrix_add(&acc, &matrix_scale(&m, c));
    }
    acc
}

fn matrix_scale(m: &ExactMatrix, c: &Scalar) -> ExactMatrix {
    let rows = (0..m.rows).map(|i| (0..m.cols).map(|j| m.get(i, j) * c).collect()).collect();
    ExactMatrix::from_rows(rows).expect("rectangular")
}

fn matrix_add(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let rows = (0..a.rows).map(|i| (0..a.cols).map(|j| a.get(i, j) + b.get(i, j)).collect()).collect();
    ExactMatrix::from_rows(rows).expect("rectangular")
}

fn natural_rep(alg: &SuperAlgebra) -> Vec<ExactMatrix> {
    (0..alg.dim()).map(|i| alg.matrix(i).clone()).collect()
}

/// `ad(x)` on the basis of `alg`; column `j` holds `[x, e_j]`.
fn adjoint_rep(alg: &SuperAlgebra) -> Vec<ExactMatrix> {
    let n = alg.dim();
    (0..n)
        .map(|x| {
            let mut rows = vec![vec![Scalar::zero(); n]; n];
            for j in 0..n {
                for (k, c) in alg.bracket(x, j) {
                    rows[*k][j] = c.clone();
                }
            }
            ExactMatrix::from_rows(rows).expect("square")
        })
        .collect()
}

fn pair() -> &'static Mutex<SymmetricPair> {
    static PAIR: OnceLock<Mutex<SymmetricPair>> = OnceLock::new();
    PAIR.get_or_init(|| Mutex::new(SymmetricPair::new().expect("symmetric pair")))
}

/// Weight as a coefficient vector over the characters of the chain.
fn character_vector(w: &MarkedWeight, p: usize, q: usize) -> Vec<i64> {
    let mut v = vec![0; 2 * (p + q)];
    for (c, x) in w.chain.iter().zip(&w.coeffs) {
        let slot = match c.marker {
            superhc::borel::Marker::Bullet => 2 * (c.index - 1) + usize::from(c.plus),
            superhc::borel::Marker::Cross => 2 * p + 2 * (c.index - 1) + usize::from(c.plus),
        };
        v[slot] += x;
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn exact_size_hooks_are_hooks(prof in profile(), n in 0u32..=6) {
        for lambda in hooks_of_size(prof, n) {
            prop_assert!(is_hook(&lambda, prof));
            prop_assert_eq!(lambda.size(), n);
        }
    }

    #[test]
    fn transpose_is_an_involution(mut parts in prop::collection::vec(1u32..=6, 0..6)) {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lambda = Partition::new(parts).unwrap();
        prop_assert_eq!(lambda.transpose().transpose(), lambda.clone());
        prop_assert_eq!(lambda.transpose().size(), lambda.size());
        prop_assert!(contains(&lambda, &lambda));
    }

    #[test]
    fn scalar_field_axioms(a in gaussian_scalar(), b in gaussian_scalar(), c in gaussian_scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) * &b.inv().unwrap(), a.clone());
        }
        let parsed: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn polynomial_distributivity(
        f in poly_in(vec!["x".into(), "y".into()], 3),
        g in poly_in(vec!["x".into(), "y".into()], 3),
        h in poly_in(vec!["x".into(), "y".into()], 3),
    ) {
        let lhs = f.add(&g).unwrap().mul(&h).unwrap();
        let rhs = f.mul(&h).unwrap().add(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nullspace_vectors_are_killed(m in (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let null = m.nullspace();
        for v in &null {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(m.rank() + null.len(), m.cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn tau_map_evaluation_identity(
        (prof, f, n) in (1usize..=2, 1usize..=2).prop_flat_map(|(p, q)| {
            let prof = Profile::new(p, q);
            (Just(prof), poly_in(deformed_vars(prof), 2), 0u32..=4)
        })
    ) {
        let g = tau_map(&f, prof).unwrap();
        for lambda in hooks_of_size(prof, n) {
            let nat: Vec<Scalar> = lambda_natural(&lambda, prof).unwrap().concat().into_iter().map(Scalar::int).collect();
            let shifted: Vec<Scalar> = eval_point(&lambda, prof).unwrap().into_iter().map(Scalar::int).collect();
            prop_assert_eq!(f.eval(&nat).unwrap(), g.eval(&shifted).unwrap());
        }
    }

    #[test]
    fn random_combinations_of_the_basis_stay_in_the_ring(
        (p, q) in (1usize..=2, 1usize..=2),
        coeffs in prop::collection::vec(small_scalar(), 7),
    ) {
        let prof = Profile::new(p, q);
        let basis = lambda0_basis(prof, 2).unwrap();
        let f = combine(&basis, &coeffs[..basis.len()]).unwrap();
        prop_assert!(is_in_lambda0(&f, prof).unwrap());
    }

    #[test]
    fn odd_reflection_is_an_involution_and_moves_by_a_root(x in -8i64..=8, y in -8i64..=8, cross_first in any::<bool>()) {
        let (chain, coeffs) = if cross_first {
            (vec![Character::delta(1, false), Character::eps(1, true)], vec![x, y])
        } else {
            (vec![Character::eps(1, true), Character::delta(1, false)], vec![y, x])
        };
        let w = MarkedWeight::new(chain, coeffs).unwrap();
        let r = odd_reflect(&w, 0).unwrap();
        prop_assert_eq!(odd_reflect(&r, 0).unwrap(), w.clone());
        let before = character_vector(&w, 1, 1);
        let after = character_vector(&r, 1, 1);
        let diff: Vec<i64> = after.iter().zip(&before).map(|(a, b)| a - b).collect();
        if x == -y {
            prop_assert!(diff.iter().all(|&d| d == 0));
        } else {
            let nonzero: Vec<i64> = diff.iter().copied().filter(|&d| d != 0).collect();
            prop_assert_eq!(nonzero.len(), 2);
            prop_assert_eq!(nonzero[0], -nonzero[1]);
            prop_assert_eq!(nonzero[0].abs(), 1);
        }
    }

    #[test]
    fn normal_order_is_idempotent_and_respects_representations(u in super_elt(4, 3)) {
        let alg = gl22();
        let mut eng = PbwEngine::new(alg.clone());
        let n = eng.normal_order(&u);
        prop_assert_eq!(eng.normal_order(&n), n.clone());
        for gens in [natural_rep(&alg), adjoint_rep(&alg)] {
            prop_assert_eq!(represent(&gens, &n), represent(&gens, &u));
        }
    }

    #[test]
    fn normal_forms_are_confluent(u in super_elt(4, 2), seed in any::<u64>()) {
        let alg = gl22();
        let mut order: Vec<usize> = (0..alg.dim()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let direct = PbwEngine::new(alg.clone()).normal_order(&u);
        let via_other = normal_order(&alg, &u, &order).unwrap();
        let back = PbwEngine::new(alg.clone()).normal_order(&via_other);
        prop_assert_eq!(back, direct);
    }

    #[test]
    fn multiplication_is_associative(a in super_elt(2, 2), b in super_elt(2, 2), c in super_elt(2, 2)) {
        let mut eng = PbwEngine::new(gl22());
        let ab = eng.mul(&a, &b);
        let bc = eng.mul(&b, &c);
        prop_assert_eq!(eng.mul(&ab, &c), eng.mul(&a, &bc));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn hc_projection_kills_right_k_and_left_n_minus(u in super_elt(3, 2), k in 0usize..8, y in 0usize..4) {
        let mut pair = pair().lock().unwrap();
        let x = SuperElt::gen(pair.named.algebra().index(K_LABELS[k]).unwrap());
        prop_assert!(pair.hc_projection(&u.concat(&x)).is_zero());

        let n_minus: Vec<usize> =
            (0..pair.iwasawa.algebra().dim()).filter(|&i| pair.iwasawa.algebra().label(i).starts_with("n[")).collect();
        let g = n_minus[y % n_minus.len()];
        let y_named = pair.named.algebra().transfer(pair.iwasawa.algebra(), &SuperElt::gen(g));
        prop_assert!(pair.hc_projection(&y_named.concat(&u)).is_zero());
    }

    #[test]
    fn kac_action_respects_brackets(
        (a, b) in (1u32..=3, 0u32..=2),
        x in 0usize..16,
        y in 0usize..16,
        picks in prop::collection::vec((any::<prop::sample::Index>(), -3i64..=3), 1..4),
    ) {
        let mut k = KacModule::for_hook(a, b).unwrap();
        let basis: Vec<KacKey> = k.basis();
        let mut v = KacVector::zero();
        for (i, c) in picks {
            v.add_term(*i.get(&basis), Scalar::int(c));
        }
        let alg = k.algebra().clone();
        let sign = if alg.is_odd(x) && alg.is_odd(y) { -Scalar::one() } else { Scalar::one() };
        let xy = k.module_action(y, &v);
        let xy = k.module_action(x, &xy);
        let yx = k.module_action(x, &v);
        let yx = k.module_action(y, &yx);
        let lhs = xy.add(&yx.scale(&(-sign)));
        let mut rhs = KacVector::zero();
        for (z, c) in alg.bracket(x, y).clone() {
            rhs = rhs.add(&k.module_action(z, &v).scale(&c));
        }
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn pushing_a_bullet_through_ordered_crosses_keeps_them_ordered() {
    let chain = vec![Character::delta(1, false), Character::delta(2, false), Character::eps(1, true)];
    for x in -5..=5 {
        for y in -5..=x {
            for z in -5..=5 {
                let w = MarkedWeight::new(chain.clone(), vec![x, y, z]).unwrap();
                let mut trace = Vec::new();
                let pushed = superhc::borel::push_left(&w, 2, 2, &mut trace).unwrap();
                let (v, w2) = (pushed.coeffs[1], pushed.coeffs[2]);
                assert!(v >= w2, "({x}, {y}, {z}) gave {pushed}");
            }
        }
    }
}
