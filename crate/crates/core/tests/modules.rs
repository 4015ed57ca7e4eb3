use std::sync::OnceLock;

use klr::algebra::Klr;
use klr::cartan::{CartanDatum, Word};
use klr::params::ParamPoint;
use klr::serial::ModuleJson;
use klr::simples::Simples;
use klr_exact::RatFunc;
use proptest::prelude::*;

mod common;
use common::{oracle_shuffle, words_of};

fn a1() -> &'static Simples<RatFunc> {
    static S: OnceLock<Simples<RatFunc>> = OnceLock::new();
    S.get_or_init(|| Simples::new(Klr::new(CartanDatum::a1_affine(), ParamPoint::a1_affine_family()).unwrap(), 6))
}

fn a2() -> &'static Simples<RatFunc> {
    static S: OnceLock<Simples<RatFunc>> = OnceLock::new();
    S.get_or_init(|| {
        let d = CartanDatum::a2();
        Simples::new(Klr::new(d.clone(), ParamPoint::generic(&d)).unwrap(), 6)
    })
}

fn word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0..rank, 0..=max).prop_map(Word)
}

fn pick(a2_side: bool) -> &'static Simples<RatFunc> {
    if a2_side {
        a2()
    } else {
        a1()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn products_of_simples_are_modules_with_shuffle_characters(
        a2_side in any::<bool>(),
        (u, v) in (word(2, 3), word(2, 3)),
    ) {
        let simples = pick(a2_side);
        let klr = simples.klr();
        let (lu, lv) = (simples.build(&u).unwrap(), simples.build(&v).unwrap());
        let m = klr.convolve(&lu.module, &lv.module).unwrap().module;
        prop_assert!(klr.check_relations(&m).is_empty());
        prop_assert_eq!(m.dim() as i64, lu.character.dimension() * lv.character.dimension() * binom(u.len() + v.len(), u.len()));
        prop_assert_eq!(words_of(&m.character()), oracle_shuffle(&lu.character, &lv.character, klr.datum()));
    }

    #[test]
    fn duality_inverts_q(a2_side in any::<bool>(), (u, v) in (word(2, 2), word(2, 2))) {
        let simples = pick(a2_side);
        let klr = simples.klr();
        let m = klr.convolve(&simples.build(&u).unwrap().module, &simples.build(&v).unwrap().module).unwrap().module;
        let d = m.dual();
        prop_assert!(klr.check_relations(&d).is_empty());
        prop_assert_eq!(d.character(), m.character().bar());
    }

    #[test]
    fn simples_are_simple_and_self_dual(a2_side in any::<bool>(), w in word(2, 5)) {
        let s = pick(a2_side).build(&w).unwrap();
        prop_assert!(s.module.is_simple());
        prop_assert!(s.character.is_bar_invariant());
        prop_assert_eq!(s.module.dual().character(), s.character.clone());
    }

    #[test]
    fn crystal_words_name_their_simples(a2_side in any::<bool>(), w in word(2, 4)) {
        // L(w) arises from L(w minus its last letter) by one f~ step
        let simples = pick(a2_side);
        let s = simples.build(&w).unwrap();
        if let Some(i) = w.last() {
            let prev = simples.build(&w.truncated()).unwrap();
            prop_assert_eq!(s.epsilon(i), prev.epsilon(i) + 1);
            let back = simples.crystal_e(&s, i).unwrap().expect("eps > 0");
            prop_assert_eq!(&back.character, &prev.character);
        }
    }

    #[test]
    fn module_json_round_trips(a2_side in any::<bool>(), (u, v) in (word(2, 2), word(2, 2))) {
        let simples = pick(a2_side);
        let klr = simples.klr();
        let datum = klr.datum();
        let m = klr.convolve(&simples.build(&u).unwrap().module, &simples.build(&v).unwrap().module).unwrap().module;
        let j = ModuleJson::of(&m, datum, klr.point().symbols());
        let back: ModuleJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        let m2 = back.to_module::<RatFunc>(datum).unwrap();
        prop_assert_eq!(m2.character(), m.character());
        for g in m.gens() {
            prop_assert_eq!(m2.gen(g), m.gen(g));
        }
    }
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j as i64 + 1))
}

#[test]
fn restriction_reads_off_trailing_letters() {
    let d = CartanDatum::a1_affine();
    let s = a1().build(&d.parse_word("0011").unwrap()).unwrap();
    assert_eq!(s.module.restrict_e(1).character(), s.character.restrict_e(1));
    assert_eq!(s.module.restrict_e(0).dim(), 0);
}
