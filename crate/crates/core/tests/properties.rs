use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use taurep::{eisenstein, rankin_cohen, CycNum, CyclotomicField, DirichletCharacter, QSeries};

const FIELDS: [u64; 6] = [1, 2, 3, 4, 6, 12];

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..50, 1i64..12).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn element(m: u64) -> impl Strategy<Value = CycNum> {
    let degree = CyclotomicField::get(m).degree();
    prop::collection::vec(rational(), degree).prop_map(move |c| CycNum::from_coords(m, c).unwrap())
}

fn triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prop::sample::select(FIELDS.to_vec()).prop_flat_map(|m| (element(m), element(m), element(m)))
}

fn series(m: u64, len: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(element(m), len).prop_map(|c| QSeries::new(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert!((&a * &inv).is_one());
        }
    }

    #[test]
    fn serde_round_trip((a, _, _) in triple()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: CycNum = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn conjugation_is_a_homomorphism((a, b, _) in triple()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn bracket_is_bilinear(
        f in series(3, 12), g in series(3, 12), h in series(3, 12),
        s in rational(), e in 0u32..4, wa in 1u32..8, wb in 1u32..8,
    ) {
        let lhs = rankin_cohen(&f.scale_rational(&s).checked_add(&h).unwrap(), &g, wa, wb, e).unwrap();
        let rhs = rankin_cohen(&f, &g, wa, wb, e).unwrap().scale_rational(&s)
            .checked_add(&rankin_cohen(&h, &g, wa, wb, e).unwrap()).unwrap();
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
    }

    #[test]
    fn bracket_swap_sign(f in series(4, 12), g in series(4, 12), e in 0u32..5, wa in 1u32..8, wb in 1u32..8) {
        let fg = rankin_cohen(&f, &g, wa, wb, e).unwrap();
        let gf = rankin_cohen(&g, &f, wb, wa, e).unwrap();
        let signed = if e % 2 == 0 { gf } else { gf.scale_rational(&BigRational::from_integer((-1).into())) };
        prop_assert_eq!(fg.coeffs(), signed.coeffs());
    }
}

#[test]
fn eisenstein_bracket_swap() {
    let t = DirichletCharacter::trivial();
    let chi: DirichletCharacter = "7.6".parse().unwrap();
    let f = eisenstein(3, &t, &chi, 20, 2).unwrap();
    let g = eisenstein(7, &chi, &t, 20, 2).unwrap();
    let fg = rankin_cohen(&f, &g, 3, 7, 1).unwrap();
    let gf = rankin_cohen(&g, &f, 7, 3, 1).unwrap();
    assert_eq!(
        fg.checked_add(&gf)
            .unwrap()
            .coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .count(),
        0
    );
}
