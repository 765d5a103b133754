mod common;

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{
    algebra_zoo, q, random_polynomial_expr, random_rational, random_smooth_expr, tensor_power,
};
use weil_core::expr::{expr_to_polynomial, symbolic_partial_multi};
use weil_core::polyring::{divide_with_remainder, MultiIndexIter};
use weil_core::smooth::tower_eval;
use weil_core::weil::{weil_tensor, weil_test};
use weil_core::{
    eval_expr, groebner_basis, lift_weil, normalise, parse_expr, Constant, Elementary,
    ExponentVector, GroebnerBasis, Ideal, MonomialOrder, Polynomial, QPolynomial, SmoothExpr,
    TowerJet, WeilElement, WeilSettings,
};

const ORDERS: [MonomialOrder; 3] = [
    MonomialOrder::DegRevLex,
    MonomialOrder::Lex,
    MonomialOrder::DegLex,
];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_poly(r: &mut ChaCha8Rng, n: usize, degree: u32) -> QPolynomial {
    let e = random_polynomial_expr(r, n, degree, 3);
    expr_to_polynomial(&e, n).unwrap()
}

fn monomial(e: Vec<u32>) -> QPolynomial {
    Polynomial::monomial(ExponentVector::new(e), BigRational::one())
}

fn value_at(p: &QPolynomial, point: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (e, c) in p.terms() {
        let mut t = c.clone();
        for (x, &k) in point.iter().zip(e.as_slice()) {
            for _ in 0..k {
                t *= x;
            }
        }
        acc += t;
    }
    acc
}

/// A random ideal containing a univariate polynomial in every variable, so
/// the quotient is finite-dimensional. Most of the time all generators vanish
/// at a random rational point, keeping the ideal proper.
fn random_zero_dim_ideal(r: &mut ChaCha8Rng) -> Ideal {
    let n = r.gen_range(1..=3usize);
    let point: Vec<BigRational> = (0..n).map(|_| random_rational(r)).collect();
    let proper = r.gen_bool(0.9);
    let mut gens = Vec::new();
    for i in 0..n {
        let d = r.gen_range(1..=3u32);
        let mut e = vec![0; n];
        e[i] = d;
        let mut p = monomial(e);
        for k in 0..d {
            if r.gen_bool(0.4) {
                let mut e = vec![0; n];
                e[i] = k;
                p = p
                    .checked_add(&Polynomial::monomial(
                        ExponentVector::new(e),
                        random_rational(r),
                    ))
                    .unwrap();
            }
        }
        gens.push(p);
    }
    for _ in 0..r.gen_range(0..=2) {
        gens.push(random_poly(r, n, 3));
    }
    let gens = gens
        .into_iter()
        .map(|g| {
            if proper {
                let v = value_at(&g, &point);
                g.checked_sub(&Polynomial::constant(n, v)).unwrap()
            } else {
                g
            }
        })
        .filter(|g| !g.is_zero())
        .collect();
    Ideal::new(n, gens).unwrap()
}

/// A random Weil ideal: pure powers of every variable plus random elements
/// of the maximal ideal.
fn random_weil_ideal(r: &mut ChaCha8Rng) -> Ideal {
    let n = r.gen_range(1..=3usize);
    let mut gens = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = r.gen_range(1..=4);
        gens.push(monomial(e));
    }
    for _ in 0..r.gen_range(0..=2) {
        let p = random_poly(r, n, 3);
        let constant = p.coeff(&ExponentVector::zero(n));
        let p = p.checked_sub(&Polynomial::constant(n, constant)).unwrap();
        if !p.is_zero() {
            gens.push(p);
        }
    }
    Ideal::new(n, gens).unwrap()
}

/// Rank of a list of rational vectors, by plain Gaussian elimination.
fn rank(rows: Vec<Vec<BigRational>>) -> usize {
    let mut rows = rows;
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot;
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= p * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn close(got: f64, expected: f64) -> bool {
    (got - expected).abs() <= 1e-10 * expected.abs().max(1.0)
}

fn settings_from(ideal: &Ideal) -> Arc<WeilSettings> {
    Arc::new(
        weil_test(ideal)
            .unwrap()
            .into_settings()
            .expect("ideal is Weil"),
    )
}

fn random_element(r: &mut ChaCha8Rng, w: &Arc<WeilSettings>) -> WeilElement<BigRational> {
    WeilElement::new(
        w.clone(),
        (0..w.dim()).map(|_| random_rational(r)).collect(),
    )
    .unwrap()
}

/// `a_i + d_i` for the first generators, plain `a_i` beyond them.
fn seeded_args<S: weil_core::Scalar>(w: &Arc<WeilSettings>, point: &[S]) -> Vec<WeilElement<S>> {
    point
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let base = WeilElement::inject(a.clone(), w);
            if i < w.var_count() {
                base.checked_add(&WeilElement::generator(w, i).unwrap())
                    .unwrap()
            } else {
                base
            }
        })
        .collect()
}

fn random_unary<R: Rng>(r: &mut R) -> SmoothExpr {
    loop {
        let e = random_smooth_expr(r, 1, 3);
        if e.variables().contains(&0) {
            return e;
        }
    }
}

/// Random expression whose printed form reparses to the same tree.
fn printable_expr(r: &mut ChaCha8Rng, depth: u32) -> SmoothExpr {
    if depth == 0 || r.gen_bool(0.2) {
        return match r.gen_range(0..5) {
            0 => SmoothExpr::int(r.gen_range(0..20)),
            1 => SmoothExpr::Const(Constant::Pi),
            2 => SmoothExpr::Const(Constant::E),
            _ => SmoothExpr::var(r.gen_range(0..3)),
        };
    }
    let mut sub = || printable_expr(r, depth - 1);
    let (a, b) = (sub(), sub());
    match r.gen_range(0..9) {
        0 => a + b,
        1 => a - b,
        2 => a * b,
        3 => a / b,
        4 => -a,
        5 => a.powi(r.gen_range(-3..=4)),
        6 => a.pow_rational(q(r.gen_range(-5..=5), 3)),
        _ => SmoothExpr::apply(Elementary::ALL[r.gen_range(0..Elementary::ALL.len())], a),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn term_order_axioms(a in prop::collection::vec(0u32..6, 3), b in prop::collection::vec(0u32..6, 3), c in prop::collection::vec(0u32..6, 3)) {
        let (a, b, c) = (ExponentVector::new(a), ExponentVector::new(b), ExponentVector::new(c));
        for ord in ORDERS {
            let ab = ord.compare(&a, &b).unwrap();
            prop_assert_eq!(ab, ord.compare(&b, &a).unwrap().reverse());
            prop_assert_eq!(ab == std::cmp::Ordering::Equal, a == b);
            prop_assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c)).unwrap(), ab);
            prop_assert_ne!(ord.compare(&ExponentVector::zero(3), &a).unwrap(), std::cmp::Ordering::Greater);
        }
    }

    #[test]
    fn polynomial_ring_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let [f, g, h] = [0, 1, 2].map(|_| random_poly(&mut r, 3, 3));
        prop_assert_eq!(f.checked_add(&g).unwrap(), g.checked_add(&f).unwrap());
        prop_assert_eq!(f.checked_mul(&g).unwrap(), g.checked_mul(&f).unwrap());
        prop_assert_eq!(
            f.checked_mul(&g).unwrap().checked_mul(&h).unwrap(),
            f.checked_mul(&g.checked_mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.checked_mul(&g.checked_add(&h).unwrap()).unwrap(),
            f.checked_mul(&g).unwrap().checked_add(&f.checked_mul(&h).unwrap()).unwrap()
        );
        prop_assert!(f.checked_sub(&f).unwrap().is_zero());
        prop_assert!(f.scale(&BigRational::zero()).is_zero());
    }

    #[test]
    fn division_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ideal = random_zero_dim_ideal(&mut r);
        let n = ideal.nvars();
        for ord in ORDERS {
            let gb = groebner_basis(&ideal, ord);
            let f = random_poly(&mut r, n, 4);
            let (qs, rem) = divide_with_remainder(&f, gb.polys(), ord).unwrap();
            let mut recombined = rem.clone();
            for (qi, gi) in qs.iter().zip(gb.polys()) {
                recombined = recombined.checked_add(&qi.checked_mul(gi).unwrap()).unwrap();
            }
            prop_assert_eq!(&recombined, &f);
            for (e, _) in rem.terms() {
                prop_assert!(gb.leading_monomials().iter().all(|lm| !lm.divides(e)));
            }
            prop_assert!(gb.normal_form(&f.checked_sub(&rem).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn quotient_ring_soundness(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ideal = random_zero_dim_ideal(&mut r);
        let n = ideal.nvars();
        let gb = groebner_basis(&ideal, MonomialOrder::DegRevLex);
        let f = random_poly(&mut r, n, 3);
        let g = random_poly(&mut r, n, 3);
        let direct = gb.normal_form(&f.checked_mul(&g).unwrap()).unwrap();
        let reduced = gb
            .normal_form(&gb.normal_form(&f).unwrap().checked_mul(&gb.normal_form(&g).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(direct, reduced);
        for p in ideal.generators() {
            prop_assert!(gb.contains(p).unwrap());
        }
    }

    #[test]
    fn membership_is_order_independent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ideal = random_zero_dim_ideal(&mut r);
        let n = ideal.nvars();
        let a = groebner_basis(&ideal, MonomialOrder::DegRevLex);
        let b = groebner_basis(&ideal, MonomialOrder::Lex);
        let mut member = QPolynomial::zero(n);
        for g in ideal.generators() {
            member = member.checked_add(&g.checked_mul(&random_poly(&mut r, n, 2)).unwrap()).unwrap();
        }
        prop_assert!(a.contains(&member).unwrap());
        prop_assert!(b.contains(&member).unwrap());
        let f = random_poly(&mut r, n, 3);
        prop_assert_eq!(a.contains(&f).unwrap(), b.contains(&f).unwrap());
        prop_assert_eq!(a.is_unit(), b.is_unit());
        if !a.is_unit() {
            prop_assert_eq!(
                a.quotient_monomial_basis().unwrap().len(),
                b.quotient_monomial_basis().unwrap().len()
            );
        }
    }

    #[test]
    fn basis_size_is_quotient_dimension(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ideal = random_zero_dim_ideal(&mut r);
        let n = ideal.nvars();
        let gb = groebner_basis(&ideal, MonomialOrder::DegRevLex);
        prop_assume!(!gb.is_unit());
        let basis = gb.quotient_monomial_basis().unwrap();
        let index = basis.iter().cloned().enumerate().map(|(j, b)| (b, j)).collect();
        let bound = basis.iter().flat_map(|b| b.as_slice().iter().copied()).max().unwrap_or(0) + 2;
        let rows: Vec<_> = MultiIndexIter::new(&vec![bound; n])
            .map(|e| gb.coordinates(&Polynomial::monomial(e, BigRational::one()), &index).unwrap())
            .collect();
        prop_assert_eq!(rank(rows), basis.len());
    }

    #[test]
    fn minimal_generators_are_minimal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ideal = random_zero_dim_ideal(&mut r);
        let n = ideal.nvars();
        let gb = groebner_basis(&ideal, MonomialOrder::DegRevLex);
        prop_assume!(!gb.is_unit());
        let basis = gb.quotient_monomial_basis().unwrap();
        let index = basis.iter().cloned().enumerate().map(|(j, b)| (b, j)).collect();
        for i in 0..n {
            let g = gb.univariate_minimal_generator(i).unwrap();
            prop_assert!(gb.contains(&g).unwrap());
            let d = g.total_degree().unwrap() as u32;
            prop_assert!(g.terms().all(|(e, _)| e.as_slice().iter().enumerate().all(|(k, &x)| k == i || x == 0)));
            let lower: Vec<_> = (0..d)
                .map(|p| gb.coordinates(&monomial(ExponentVector::pure_power(n, i, p).into_vec()), &index).unwrap())
                .collect();
            prop_assert_eq!(rank(lower), d as usize);
        }
    }

    #[test]
    fn weil_settings_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ideal = random_weil_ideal(&mut r);
        let w = settings_from(&ideal);
        let gb: GroebnerBasis = groebner_basis(&ideal, MonomialOrder::DegRevLex);
        let standard = gb.quotient_monomial_basis().unwrap();
        prop_assert_eq!(standard.as_slice(), w.basis());
        for (i, &k) in w.max_powers().iter().enumerate() {
            let n = w.var_count();
            prop_assert!(!gb.contains(&monomial(ExponentVector::pure_power(n, i, k).into_vec())).unwrap());
            prop_assert!(gb.contains(&monomial(ExponentVector::pure_power(n, i, k + 1).into_vec())).unwrap());
            let g = WeilElement::<BigRational>::generator(&w, i).unwrap();
            prop_assert!(g.pow(k + 1).is_zero());
            prop_assert!(!g.pow(k).is_zero());
        }
        let [u, v, t] = [0, 1, 2].map(|_| random_element(&mut r, &w));
        prop_assert_eq!(
            u.checked_mul(&v).unwrap().checked_mul(&t).unwrap(),
            u.checked_mul(&v.checked_mul(&t).unwrap()).unwrap()
        );
        prop_assert_eq!(u.checked_mul(&v).unwrap(), v.checked_mul(&u).unwrap());
        let back = WeilSettings::from_json_str(&w.to_json_string()).unwrap();
        prop_assert_eq!(&back, &*w);
        prop_assert_eq!(back.max_powers(), w.max_powers());
    }

    #[test]
    fn tensor_coherence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let zoo = algebra_zoo();
        let w1 = &zoo[r.gen_range(0..zoo.len())].settings;
        let w2 = &zoo[r.gen_range(0..zoo.len())].settings;
        let t = Arc::new(weil_tensor(w1, w2).unwrap());
        prop_assert_eq!(t.dim(), w1.dim() * w2.dim());
        prop_assert_eq!(t.var_count(), w1.var_count() + w2.var_count());
        let n1 = w1.var_count();
        let f = random_polynomial_expr(&mut r, n1, 4, 3);
        let point: Vec<BigRational> = (0..n1).map(|_| random_rational(&mut r)).collect();
        let small = lift_weil(w1, &f, &seeded_args(w1, &point)).unwrap();
        let big = lift_weil(&t, &f, &seeded_args(&t, &point)).unwrap();
        let l2 = w2.dim();
        for (k, c) in big.coeffs().iter().enumerate() {
            let expected = if k % l2 == 0 { small.coeffs()[k / l2].clone() } else { BigRational::zero() };
            prop_assert_eq!(c, &expected);
        }
    }

    #[test]
    fn jets_agree_with_symbolic_partials(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_smooth_expr(&mut r, 2, 3);
        let caps = [r.gen_range(0..=3u32), r.gen_range(0..=2u32)];
        let p = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        let xs = [0, 1].map(|i| TowerJet::variable(&caps, p[i], i).unwrap());
        let jet = tower_eval(&f, &xs, &caps).unwrap();
        for (alpha, c) in jet.iter() {
            let e: f64 = eval_expr(&symbolic_partial_multi(&f, alpha.as_slice()), &p, &()).unwrap();
            prop_assert!(close(*c, e), "{} at {:?}, alpha {}: {} vs {}", f, p, alpha, c, e);
        }
    }

    #[test]
    fn polynomial_jets_are_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_polynomial_expr(&mut r, 3, 4, 4);
        let caps = [2u32, 2, 1];
        let p: Vec<BigRational> = (0..3).map(|_| random_rational(&mut r)).collect();
        let xs: Vec<_> = (0..3).map(|i| TowerJet::variable(&caps, p[i].clone(), i).unwrap()).collect();
        let jet = tower_eval(&f, &xs, &caps).unwrap();
        for (alpha, c) in jet.iter() {
            let e: BigRational = eval_expr(&symbolic_partial_multi(&f, alpha.as_slice()), &p, &()).unwrap();
            prop_assert_eq!(c, &e);
        }
    }

    #[test]
    fn composition_and_product_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let zoo = algebra_zoo();
        let w = &zoo[r.gen_range(0..zoo.len())].settings;
        let f = random_unary(&mut r);
        let g = random_unary(&mut r);
        let a: f64 = r.gen_range(-1.0..1.0);
        let u = seeded_args(w, &[a]);
        let composed = lift_weil(w, &g.substitute(std::slice::from_ref(&f)), &u).unwrap();
        let staged = lift_weil(w, &g, &[lift_weil(w, &f, &u).unwrap()]).unwrap();
        let product = lift_weil(w, &(f.clone() * g.clone()), &u).unwrap();
        let multiplied = lift_weil(w, &f, &u).unwrap().checked_mul(&lift_weil(w, &g, &u).unwrap()).unwrap();
        for k in 0..w.dim() {
            prop_assert!(close(composed.coeffs()[k], staged.coeffs()[k]), "{}: {:?} vs {:?}", g.substitute(std::slice::from_ref(&f)), composed, staged);
            prop_assert!(close(product.coeffs()[k], multiplied.coeffs()[k]));
        }
    }

    #[test]
    fn squarefree_coefficients_are_derivatives(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let w = Arc::new(tensor_power(&WeilSettings::d1(), n));
        let f = random_unary(&mut r);
        let x: f64 = r.gen_range(-1.0..1.0);
        let mut u = WeilElement::inject(x, &w);
        for i in 0..n {
            u = u.checked_add(&WeilElement::generator(&w, i).unwrap()).unwrap();
        }
        let v = lift_weil(&w, &f, &[u]).unwrap();
        for (b, c) in w.basis().iter().zip(v.coeffs()) {
            let e: f64 = eval_expr(&symbolic_partial_multi(&f, &[b.total_degree() as u32]), &[x], &()).unwrap();
            prop_assert!(close(*c, e));
        }
    }

    #[test]
    fn multivariate_orders_give_scaled_partials(seed in any::<u64>(), b0 in 0u32..=3, b1 in 0u32..=2) {
        let mut r = rng(seed);
        let w = Arc::new(weil_tensor(&WeilSettings::d_order(b0 + 1).unwrap(), &WeilSettings::d_order(b1 + 1).unwrap()).unwrap());
        let f = random_smooth_expr(&mut r, 2, 3);
        let p = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        let v = lift_weil(&w, &f, &seeded_args(&w, &p)).unwrap();
        for delta in MultiIndexIter::new(&[b0, b1]) {
            let c = v.coeffs()[w.index_of(&delta).unwrap()];
            let fact: f64 = delta.factorial().to_string().parse().unwrap();
            let e: f64 = eval_expr(&symbolic_partial_multi(&f, delta.as_slice()), &p, &()).unwrap();
            prop_assert!(close(c * fact, e), "{} delta {}: {} vs {}", f, delta, c * fact, e);
        }
    }

    #[test]
    fn first_order_coefficients_match_finite_differences(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = Arc::new(WeilSettings::d1());
        let f = random_unary(&mut r);
        let x: f64 = r.gen_range(-1.0..1.0);
        let d = lift_weil(&w, &f, &seeded_args(&w, &[x])).unwrap().coeffs()[1];
        prop_assume!(d.abs() > 1e-3);
        let h = 1e-6;
        let hi: f64 = eval_expr(&f, &[x + h], &()).unwrap();
        let lo: f64 = eval_expr(&f, &[x - h], &()).unwrap();
        let fd = (hi - lo) / (2.0 * h);
        prop_assert!((fd - d).abs() <= 1e-5 * d.abs(), "{}: {} vs {}", f, d, fd);
    }

    #[test]
    fn value_only_jets_match_scalars_bitwise(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_smooth_expr(&mut r, 3, 4);
        let p = [0, 1, 2].map(|_| r.gen_range(-1.0..1.0));
        let direct: f64 = eval_expr(&f, &p, &()).unwrap();
        for caps in [vec![], vec![0, 0, 0]] {
            let xs: Vec<TowerJet<f64>> = p.iter().map(|&v| TowerJet::constant(&caps, v)).collect();
            let jet = tower_eval(&f, &xs, &caps).unwrap();
            prop_assert_eq!(jet.value().to_bits(), direct.to_bits());
        }
    }

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = printable_expr(&mut r, 4);
        let text = e.to_string();
        let back = parse_expr(&text, &["x0", "x1", "x2"]).unwrap();
        prop_assert_eq!(back, e, "{}", text);
    }

    #[test]
    fn normalise_is_idempotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = if r.gen_bool(0.5) { printable_expr(&mut r, 4) } else { random_smooth_expr(&mut r, 2, 4) };
        let once = normalise(&e);
        prop_assert_eq!(normalise(&once), once);
    }
}

#[test]
fn preset_settings_round_trip_through_json() {
    for alg in algebra_zoo() {
        let back = WeilSettings::from_json_value(alg.settings.to_json()).unwrap();
        assert_eq!(back, *alg.settings, "{}", alg.name);
    }
}

#[test]
fn projection_lifts_to_the_argument() {
    let mut r = rng(11);
    for alg in algebra_zoo() {
        let u = random_element(&mut r, &alg.settings);
        let v = lift_weil(&alg.settings, &SmoothExpr::var(0), std::slice::from_ref(&u)).unwrap();
        assert_eq!(v, u);
    }
}

#[test]
fn rational_carrier_rejects_transcendentals() {
    let w = Arc::new(WeilSettings::d1());
    let f = parse_expr("sin(x)", &["x"]).unwrap();
    let err = lift_weil(&w, &f, &seeded_args(&w, &[q(1, 2)])).unwrap_err();
    assert!(matches!(err, weil_core::Error::Domain(_)));
}
