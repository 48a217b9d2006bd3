use tha_core::rootsys::{build_cartan, kappa_symmetric, CartanType, WeightData};
use tha_core::superlocal::{build_local_part, prop41_scan};

fn fundamental(t: CartanType, r: usize, k: usize) -> tha_core::superlocal::LocalLie {
    let c = build_cartan(t, r).unwrap();
    let mut l = vec![0; r];
    l[k - 1] = 1;
    let w = WeightData::new(&c, l, kappa_symmetric(&c).unwrap()).unwrap();
    build_local_part(&c, &w).unwrap()
}

#[test]
fn e6_first_fundamental_has_dimension_27() {
    let alg = fundamental(CartanType::E, 6, 1);
    assert_eq!(alg.dim1(), 27);
    assert_eq!(alg.dim0(), 78 + 1);
    assert!(prop41_scan(&alg).unwrap().all_zero);
}

#[test]
fn e7_minuscule_has_dimension_56() {
    let alg = fundamental(CartanType::E, 7, 7);
    assert_eq!(alg.dim1(), 56);
    assert_eq!(alg.dim0(), 133 + 1);
}

#[test]
fn d5_spinor_has_dimension_16() {
    let alg = fundamental(CartanType::D, 5, 5);
    assert_eq!(alg.dim1(), 16);
}
