use proptest::prelude::*;

use rk_codes::notation::{format_generator, parse_generator};
use rk_codes::poly::{shift, shift_by};
use rk_codes::ring::hom_weight_vec;
use rk_codes::{BitVec, EchelonBasis, GrayTable, Notation, QtCode, RawPoly, RingElement};

fn element(k: u32) -> impl Strategy<Value = RingElement> {
    (0..1u64 << (1 << k)).prop_map(move |c| RingElement::new(k, c).unwrap())
}

fn vector(k: u32, max: usize) -> impl Strategy<Value = Vec<RingElement>> {
    prop::collection::vec(element(k), 1..=max)
}

fn unit(k: u32) -> impl Strategy<Value = RingElement> {
    element(k).prop_filter("unit", |a| a.is_unit())
}

proptest! {
    #[test]
    fn k3_ring_axioms(a in element(3), b in element(3), c in element(3)) {
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a * a, if a.is_unit() { RingElement::one(3) } else { RingElement::zero(3) });
    }

    #[test]
    fn psi_is_linear_and_isometric(
        (a, b) in (1..6usize).prop_flat_map(|n| (prop::collection::vec(element(2), n), prop::collection::vec(element(2), n)))
    ) {
        let t = GrayTable::new(2).unwrap();
        let sum: Vec<RingElement> = a.iter().zip(&b).map(|(x, y)| *x + *y).collect();
        let pa = t.psi(&a).unwrap();
        let pb = t.psi(&b).unwrap();
        prop_assert_eq!(t.psi(&sum).unwrap(), pa.xor(&pb));
        prop_assert_eq!(pa.hamming_distance(&pb) as u64, hom_weight_vec(&sum).0);
        prop_assert_eq!(t.psi_inverse(&pa).unwrap(), a);
    }

    #[test]
    fn hom_weight_is_unit_invariant(x in vector(2, 6), alpha in unit(2)) {
        let scaled: Vec<RingElement> = x.iter().map(|a| alpha * *a).collect();
        prop_assert_eq!(hom_weight_vec(&scaled), hom_weight_vec(&x));
    }

    #[test]
    fn divmod_reconstructs(
        f in prop::collection::vec(0..4u64, 1..9),
        g in prop::collection::vec(0..4u64, 0..5),
    ) {
        let el = |c: &u64| RingElement::new(1, *c).unwrap();
        let f = RawPoly::new(1, f.iter().map(el).collect()).unwrap();
        let mut gc: Vec<RingElement> = g.iter().map(el).collect();
        gc.push(RingElement::one(1));
        let g = RawPoly::new(1, gc).unwrap();
        let (q, r) = f.divmod(&g).unwrap();
        prop_assert_eq!(q.mul(&g).add(&r), f);
        prop_assert!(r.degree().is_none_or(|d| d < g.degree().unwrap()));
    }

    #[test]
    fn shift_order(v in vector(2, 7), lambda in unit(2)) {
        // T_λ^n = λ·id and λ^2 = 1, so T_λ^(2n) = id.
        let n = v.len();
        let scaled: Vec<RingElement> = v.iter().map(|a| lambda * *a).collect();
        prop_assert_eq!(shift_by(&v, &lambda, n).unwrap(), scaled);
        prop_assert_eq!(shift_by(&v, &lambda, 2 * n).unwrap(), v.clone());
        prop_assert_eq!(shift(&v, &lambda).unwrap(), shift_by(&v, &lambda, 1).unwrap());
    }

    #[test]
    fn qt_codes_are_invariant(blocks in prop::collection::vec(vector(1, 3), 1..4), lambda in unit(1)) {
        let m = blocks[0].len();
        let blocks: Vec<Vec<RingElement>> = blocks.into_iter().map(|mut b| { b.resize(m, RingElement::zero(1)); b }).collect();
        let ell = blocks.len();
        let code = QtCode::new(1, lambda, ell, m, vec![blocks.clone()]).unwrap();
        prop_assert!(code.is_qt_invariant().unwrap());
        let text = format_generator(&blocks, Notation::R1).unwrap();
        prop_assert_eq!(parse_generator(&text, 1, Notation::R1).unwrap(), blocks);
    }

    #[test]
    fn echelon_basis_is_canonical(rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 10), 0..8)) {
        let vecs: Vec<BitVec> = rows.into_iter().map(BitVec::from_bits).collect();
        let forward = EchelonBasis::from_rows(10, &vecs);
        let backward = EchelonBasis::from_rows(10, vecs.iter().rev());
        prop_assert_eq!(forward.rows(), backward.rows());
        for v in &vecs {
            prop_assert!(forward.contains(v));
        }
    }
}
