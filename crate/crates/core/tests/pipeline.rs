//! End-to-end checks through the public API: series to normalization and
//! back from a lattice to a series.

use num_bigint::BigInt;
use toricnorm::hj::{hj_to_puiseux, HJInput};
use toricnorm::minpoly::minimal_polynomial;
use toricnorm::puiseux::distinguished_exponents;
use toricnorm::toric::{kernel_check, ToricPresentation};
use toricnorm::{AffineSemigroup, CycloNumber, ExpVec, FracLattice, Lattice, MonomialOrder, PuiseuxSeries};

fn mono(e: &[(i64, i64)], c: i64) -> PuiseuxSeries {
    PuiseuxSeries::monomial(ExpVec::from_fracs(e), CycloNumber::from_integer(c))
}

fn cusp() -> PuiseuxSeries {
    // x^(3/2) + x^(7/4) y
    mono(&[(3, 2), (0, 1)], 1).add(&mono(&[(7, 4), (1, 1)], 1))
}

#[test]
fn forward_pipeline_on_a_two_pair_series() {
    let xi = cusp();
    let d = distinguished_exponents(&xi, &MonomialOrder::standard(2)).unwrap();
    assert_eq!(d.exponents().len(), 2);
    assert_eq!(d.group(), &xi.support_group().unwrap());

    let sat = AffineSemigroup::new(2, d.exponents().to_vec()).unwrap().saturate();
    for b in sat.hilbert_basis() {
        assert!(sat.span_group().contains(b).unwrap());
        assert!(b.is_nonnegative());
    }

    let f = minimal_polynomial(&xi).unwrap();
    assert_eq!(BigInt::from(f.degree()), d.group().index_over_integers());
    assert!(f.evaluate(&xi).unwrap().is_zero());

    let p = ToricPresentation::of_hilbert_basis(sat.hilbert_basis(), sat.span_group().denominator(), None).unwrap();
    assert!(kernel_check(p.exponent_matrix(), p.binomials()));
}

#[test]
fn converse_pipeline_regenerates_the_lattice() {
    let rows = vec![
        vec![BigInt::from(3), BigInt::from(0)],
        vec![BigInt::from(1), BigInt::from(2)],
    ];
    let l = Lattice::from_generators(&rows, 2).unwrap();
    let ord = MonomialOrder::standard(2);
    let r = hj_to_puiseux(&HJInput::new(l), &ord).unwrap();
    assert!(r.round_trip.holds());
    let d = distinguished_exponents(&r.xi, &ord).unwrap();
    assert_eq!(d.group(), &r.l_prime);
    let f = r.f.expect("nontrivial lattice has a hypersurface");
    assert!(f.evaluate(&r.xi).unwrap().is_zero());
}

#[test]
fn integer_lattice_is_trivial() {
    let r = hj_to_puiseux(&HJInput::new(Lattice::standard(2)), &MonomialOrder::standard(2)).unwrap();
    assert!(r.is_trivial());
    assert!(r.smooth);
    assert_eq!(r.l_prime, FracLattice::integer(2));
}
