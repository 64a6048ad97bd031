use markoff_core::exact_rings::ring::{QAt, QKappa};
use markoff_core::exact_rings::rational::int;
use markoff_core::exact_rings::KPoly;
use markoff_core::trired::*;

#[test]
fn worked_example_kappa_zero() {
    let r = QAt { kappa: int(0) };
    let f = parse_tripoly("y^4 - y^2*z^2 + 1/2*x^2*y^2", r.clone()).unwrap();
    assert_eq!(phi(&f), vec![int(0), int(0), int(-3), int(0), int(1)]);
    let xf = f.shift(1, 0, 0);
    assert!(phi_x(&xf).is_zero());
}

#[test]
fn lemma_values_kappa_zero() {
    let r = QAt { kappa: int(0) };
    let a = phi(&TriPoly::mono(r.clone(), 4, 2, 0));
    assert_eq!(a, vec![int(0), int(0), int(24), int(0), int(2)]);
    let b = phi(&TriPoly::mono(r, 2, 2, 2));
    assert_eq!(b, vec![int(0), int(0), int(36), int(0), int(3)]);
}

#[test]
fn symbolic_x4y2() {
    let f = TriPoly::mono(QKappa, 4, 2, 0);
    let v = phi(&f);
    assert_eq!(v[0], KPoly::from_ints(&[0, -8]));
    assert_eq!(v[2], KPoly::from_ints(&[24, -2]));
    assert_eq!(v[4], KPoly::from_ints(&[2]));
}
