use super::*;
use proptest::prelude::*;

fn mono(e: &[(i64, i64)], c: i64) -> PuiseuxSeries {
    PuiseuxSeries::monomial(ExpVec::from_fracs(e), CycloNumber::from_integer(c))
}

fn sum(parts: &[PuiseuxSeries]) -> PuiseuxSeries {
    parts.iter().fold(PuiseuxSeries::zero(parts[0].dim()), |a, b| a.add(b))
}

/// Full coefficient lists (lowest degree first) of polynomials in `y`.
fn ymul(a: &[PuiseuxSeries], b: &[PuiseuxSeries]) -> Vec<PuiseuxSeries> {
    let n = a[0].dim();
    let mut out = vec![PuiseuxSeries::zero(n); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn yadd(a: &[PuiseuxSeries], b: &[PuiseuxSeries]) -> Vec<PuiseuxSeries> {
    let n = a[0].dim();
    (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| PuiseuxSeries::zero(n));
            let y = b.get(i).cloned().unwrap_or_else(|| PuiseuxSeries::zero(n));
            x.add(&y)
        })
        .collect()
}

fn full(f: &PolyY) -> Vec<PuiseuxSeries> {
    (0..=f.degree()).map(|j| f.coefficient(j)).collect()
}

fn x_half_plus_y_half() -> PuiseuxSeries {
    sum(&[mono(&[(1, 2), (0, 1)], 1), mono(&[(0, 1), (1, 2)], 1)])
}

fn veronese() -> PuiseuxSeries {
    sum(&[
        mono(&[(1, 1), (0, 1)], 1),
        mono(&[(2, 3), (1, 3)], 1),
        mono(&[(0, 1), (1, 1)], 1),
    ])
}

#[test]
fn character_group_examples() {
    let cg = character_group(&FracLattice::integer(2)).unwrap();
    assert_eq!(cg.len(), 1);
    assert_eq!(cg.exponent(), 1);

    let m = veronese().support_group().unwrap();
    let cg = character_group(&m).unwrap();
    assert_eq!(cg.len(), 3);
    assert_eq!(cg.invariant_factors(), &[3]);
    let gen_values: Vec<CycloNumber> = (0..3).map(|c| cg.generator_values(c)[0].clone()).collect();
    assert_eq!(gen_values[0], CycloNumber::one());
    for z in [CycloNumber::zeta_pow(3, 1), CycloNumber::zeta_pow(3, 2)] {
        assert!(gen_values.contains(&z));
    }

    let m = x_half_plus_y_half().support_group().unwrap();
    let cg = character_group(&m).unwrap();
    assert_eq!(cg.len(), 4);
    assert_eq!(cg.invariant_factors(), &[2, 2]);
    let minus = CycloNumber::from_integer(-1);
    for chi in 0..4 {
        for v in cg.generator_values(chi) {
            assert!(v == CycloNumber::one() || v == minus);
        }
    }
    // characters separate the points of M / Z^2
    let classes = [
        ExpVec::from_fracs(&[(1, 2), (0, 1)]),
        ExpVec::from_fracs(&[(0, 1), (1, 2)]),
        ExpVec::from_fracs(&[(1, 2), (1, 2)]),
    ];
    for c in &classes {
        assert!((0..4).any(|chi| cg.value(chi, c).unwrap() != CycloNumber::one()));
    }
}

#[test]
fn conjugate_examples() {
    let xi = x_half_plus_y_half();
    let cg = character_group(&xi.support_group().unwrap()).unwrap();
    let conj = conjugates(&xi, &cg).unwrap();
    assert_eq!(conj[0], xi);
    let a = mono(&[(1, 2), (0, 1)], 1);
    let b = mono(&[(0, 1), (1, 2)], 1);
    for expected in [a.add(&b), a.sub(&b), b.sub(&a), a.neg().sub(&b)] {
        assert!(conj.contains(&expected), "missing {expected}");
    }

    let z = sum(&[mono(&[(2, 1), (0, 1)], 3), mono(&[(0, 1), (1, 1)], -1)]);
    let cg = character_group(&z.support_group().unwrap()).unwrap();
    assert_eq!(conjugates(&z, &cg).unwrap(), vec![z.clone()]);

    let xi = veronese();
    let cg = character_group(&xi.support_group().unwrap()).unwrap();
    let conj = conjugates(&xi, &cg).unwrap();
    let x = mono(&[(1, 1), (0, 1)], 1);
    let y = mono(&[(0, 1), (1, 1)], 1);
    for j in 0..3 {
        let m = PuiseuxSeries::monomial(ExpVec::from_fracs(&[(2, 3), (1, 3)]), CycloNumber::zeta_pow(3, j));
        assert!(conj.contains(&sum(&[x.clone(), m, y.clone()])));
    }

    // support outside the character lattice
    let half = FracLattice::from_generators(&[ExpVec::from_fracs(&[(1, 2), (0, 1)])], 2).unwrap();
    let cg = character_group(&half).unwrap();
    assert!(matches!(
        conjugates(&veronese(), &cg),
        Err(MinPolyError::SupportOutsideLattice(_))
    ));
}

#[test]
fn minimal_polynomial_non_quasi_ordinary() {
    let f = minimal_polynomial(&x_half_plus_y_half()).unwrap();
    let x = mono(&[(1, 1), (0, 1)], 1);
    let y = mono(&[(0, 1), (1, 1)], 1);
    let n = 2;
    let zero = PuiseuxSeries::zero(n);
    let one = PuiseuxSeries::constant(n, CycloNumber::one());
    // y^4 - 2(x1+x2) y^2 + (x1-x2)^2
    let expected = vec![
        x.sub(&y).mul(&x.sub(&y)),
        zero.clone(),
        x.add(&y).scale(&CycloNumber::from_integer(-2)),
        zero.clone(),
        one.clone(),
    ];
    assert_eq!(full(&f), expected);
    // (z^2 - x - y)^2 - 4xy
    let inner = vec![x.add(&y).neg(), zero.clone(), one.clone()];
    let squared_form = yadd(
        &ymul(&inner, &inner),
        &[x.mul(&y).scale(&CycloNumber::from_integer(-4))],
    );
    assert_eq!(full(&f), squared_form);
}

#[test]
fn minimal_polynomial_lipman_k2() {
    let f = minimal_polynomial(&mono(&[(1, 2), (1, 2)], 1)).unwrap();
    assert_eq!(f.degree(), 2);
    assert_eq!(f.coefficient(0), mono(&[(1, 1), (1, 1)], -1));
    assert!(f.coefficient(1).is_zero());
}

#[test]
fn minimal_polynomial_veronese() {
    let f = minimal_polynomial(&veronese()).unwrap();
    // ∏_j (u - ζ^j m) = u^3 - m^3 with u = y - x1 - x2, m^3 = x1^2 x2
    let x = mono(&[(1, 1), (0, 1)], 1);
    let y = mono(&[(0, 1), (1, 1)], 1);
    let one = PuiseuxSeries::constant(2, CycloNumber::one());
    let u = vec![x.add(&y).neg(), one];
    let cube = ymul(&ymul(&u, &u), &u);
    let expected = yadd(&cube, &[mono(&[(2, 1), (1, 1)], -1)]);
    assert_eq!(full(&f), expected);
}

#[test]
fn integer_support_gives_linear_factor() {
    let z = sum(&[mono(&[(2, 1), (0, 1)], 3), mono(&[(0, 1), (1, 1)], -1)]);
    let f = minimal_polynomial(&z).unwrap();
    assert_eq!(f.degree(), 1);
    assert_eq!(f.coefficient(0), z.neg());
}

#[test]
fn empty_series_is_rejected() {
    assert_eq!(
        minimal_polynomial(&PuiseuxSeries::zero(2)),
        Err(MinPolyError::EmptySupport)
    );
}

#[test]
fn evaluate_examples() {
    let x = mono(&[(1, 1)], 1);
    let y2_minus_x = PolyY::monic(1, vec![x.neg(), PuiseuxSeries::zero(1)]).unwrap();
    assert!(y2_minus_x.evaluate(&mono(&[(1, 2)], 1)).unwrap().is_zero());
    let r = y2_minus_x.evaluate(&x).unwrap();
    assert_eq!(r, mono(&[(2, 1)], 1).sub(&x));

    let xi = x_half_plus_y_half();
    let f = minimal_polynomial(&xi).unwrap();
    assert!(f.evaluate(&xi).unwrap().is_zero());
}

#[test]
fn cyclotomic_coefficients_are_supported() {
    // f = y^2 - ζ_3^2 x is not defined over Q
    let xi = PuiseuxSeries::monomial(ExpVec::from_fracs(&[(1, 2)]), CycloNumber::zeta_pow(3, 1));
    match minimal_polynomial(&xi) {
        Err(MinPolyError::Certificate { check, .. }) => assert_eq!(check, "rational coefficients"),
        other => panic!("expected certificate failure, got {other:?}"),
    }
    // ζ_4 + ζ_4^3 + 1 = 1
    let c = CycloNumber::zeta_pow(4, 1)
        .add(&CycloNumber::zeta_pow(4, 3))
        .add(&CycloNumber::one());
    let xi = PuiseuxSeries::monomial(ExpVec::from_fracs(&[(1, 2)]), c);
    let f = minimal_polynomial(&xi).unwrap();
    assert_eq!(f.coefficient(0), mono(&[(1, 1)], -1));
}

/// Up to three terms with exponents in `(1/k) Z^n`, `k <= 4`.
fn arb_series() -> impl Strategy<Value = PuiseuxSeries> {
    (1usize..=3, 1i64..=4).prop_flat_map(|(n, k)| {
        let exp = prop::collection::vec(0i64..=2 * k, n);
        let coeff = (-3i64..=3, 1i64..=3);
        prop::collection::vec((exp, coeff), 1..=3).prop_map(move |ts| {
            let exps: Vec<Vec<(i64, i64)>> = ts.iter().map(|(e, _)| e.iter().map(|a| (*a, k)).collect()).collect();
            let terms: Vec<crate::puiseux::FracTerm> =
                exps.iter().zip(&ts).map(|(e, (_, c))| (e.as_slice(), *c)).collect();
            PuiseuxSeries::from_rational_terms(n, &terms).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certificates_hold(xi in arb_series()) {
        prop_assume!(!xi.is_zero());
        let f = minimal_polynomial(&xi).unwrap();
        let m = xi.support_group().unwrap();
        prop_assert_eq!(BigInt::from(f.degree()), m.index_over_integers());
        prop_assert_eq!(BigInt::from(f.degree()), m.quotient().order());
        for c in f.lower_coefficients() {
            prop_assert!(c.has_integral_support());
            prop_assert!(c.has_rational_coefficients());
        }
        prop_assert!(f.evaluate(&xi).unwrap().is_zero());
    }

    #[test]
    fn constant_term_identity(xi in arb_series()) {
        prop_assume!(!xi.is_zero());
        let m = xi.support_group().unwrap();
        prop_assume!(m.index_over_integers() <= BigInt::from(16));
        let f = minimal_polynomial(&xi).unwrap();
        let prod = conjugate_product(&xi).unwrap();
        let sign = if f.degree().is_multiple_of(2) { 1 } else { -1 };
        prop_assert_eq!(prod, f.coefficient(0).scale(&CycloNumber::from_integer(sign)));
    }

    #[test]
    fn conjugates_are_distinct(xi in arb_series()) {
        prop_assume!(!xi.is_zero());
        let cg = character_group(&xi.support_group().unwrap()).unwrap();
        let conj = conjugates(&xi, &cg).unwrap();
        for i in 0..conj.len() {
            for j in 0..i {
                prop_assert_ne!(&conj[i], &conj[j]);
            }
        }
        // each conjugate is again a root of f
        prop_assume!(cg.len() <= 8);
        let f = minimal_polynomial(&xi).unwrap();
        for c in &conj {
            prop_assert!(f.evaluate(c).unwrap().is_zero());
        }
    }
}

#[test]
fn polynomial_text() {
    assert_eq!(
        minimal_polynomial(&mono(&[(1, 2), (1, 2)], 1)).unwrap().to_text(),
        "y^2 - x1*x2"
    );
    assert_eq!(
        minimal_polynomial(&x_half_plus_y_half()).unwrap().to_text(),
        "y^4 + (-2*x1 - 2*x2)*y^2 + (x1^2 - 2*x1*x2 + x2^2)"
    );
    let z = sum(&[mono(&[(1, 1), (0, 1)], 1), mono(&[(0, 1), (0, 1)], 1)]);
    assert_eq!(minimal_polynomial(&z).unwrap().to_text(), "y + (-1 - x1)");
}
