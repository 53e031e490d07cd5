//! Checks the production product tables against an independent
//! multiplier that works on blade index strings by bubble sort.

use cga_motion::algebra::blade::{blade_name, BLADE_COUNT};
use cga_motion::algebra::Multivector;
use common::oracle::{basis, multiply, name};

mod common;

#[test]
fn basis_order_matches_names() {
    let basis = basis();
    assert_eq!(basis.len(), BLADE_COUNT);
    for (i, b) in basis.iter().enumerate() {
        assert_eq!(blade_name(i), name(b));
    }
}

#[test]
fn all_1024_products_match() {
    let basis = basis();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let (sign, blade) = multiply(a, b);
            let k = basis.iter().position(|x| *x == blade).unwrap();
            let mut want = Multivector::ZERO;
            want.0[k] = sign;
            let (x, y) = (Multivector::basis(i), Multivector::basis(j));
            assert_eq!(x * y, want, "{} * {}", name(a), name(b));
            let (ga, gb, gk) = (a.len(), b.len(), blade.len());
            let outer = if gk == ga + gb { want } else { Multivector::ZERO };
            assert_eq!(x ^ y, outer, "{} ^ {}", name(a), name(b));
            let inner = if gk == ga.abs_diff(gb) { want } else { Multivector::ZERO };
            assert_eq!(x | y, inner, "{} . {}", name(a), name(b));
        }
    }
}

#[test]
fn null_basis_relations() {
    let (o, inf) = (Multivector::e_o(), Multivector::e_inf());
    assert_eq!(o * o, Multivector::ZERO);
    assert_eq!(inf * inf, Multivector::ZERO);
    assert_eq!((o | inf).0[0], -1.0);
}
