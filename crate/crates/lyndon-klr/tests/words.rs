mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{datum, good_words_by_elimination, roots_up_to};
use lyndon_klr::bases::Bases;
use lyndon_klr::cartan::Series;
use lyndon_klr::lyndon::LyndonTable;
use lyndon_klr::shuffle::Order;

#[test]
fn good_words_agree_with_elimination_and_lyndon_is_largest() {
    for (s, r, h) in [(Series::A, 3, 6), (Series::B, 3, 5), (Series::C, 3, 5), (Series::D, 4, 5), (Series::G, 2, 5), (Series::F, 4, 6)] {
        let d = datum(s, r);
        let table = LyndonTable::build(&d, Order::Right);
        for beta in roots_up_to(&d, h) {
            let oracle = good_words_by_elimination(&d, Order::Right, &beta);
            let ours: BTreeSet<Vec<u8>> = table.good_words(&beta).into_iter().map(|w| w.0).collect();
            assert_eq!(ours, oracle, "good words of {beta} in {s}{r}");
            let largest = oracle.iter().max_by(|a, b| Order::Right.cmp(a, b)).unwrap();
            assert_eq!(table.word(&beta).unwrap().letters(), largest.as_slice(), "{beta} in {s}{r}");
        }
    }
}

#[test]
fn reversal_exchanges_the_two_orders() {
    for (s, r) in [(Series::B, 3), (Series::F, 4)] {
        let d = datum(s, r);
        let right = Bases::new(Arc::new(LyndonTable::build(&d, Order::Right)));
        let opp = Bases::new(Arc::new(LyndonTable::build(&d, Order::Opposite)));
        for (beta, l) in right.table().entries() {
            let rev = l.reversed();
            assert_eq!(opp.table().word(beta), Some(&rev), "{beta} in {s}{r}");
            let b = right.dual_pbw_lyndon(l).unwrap();
            assert_eq!(opp.dual_pbw_lyndon(&rev).unwrap(), b.tau(), "b*{l} under reversal");
            assert_eq!(opp.kappa_lyndon(&rev).unwrap(), right.kappa_lyndon(l).unwrap());
        }
    }
}

#[test]
fn orders_are_convex() {
    for (s, r) in [(Series::A, 8), (Series::B, 6), (Series::C, 6), (Series::D, 6), (Series::E, 6), (Series::E, 7), (Series::E, 8), (Series::F, 4), (Series::G, 2)] {
        let d = datum(s, r);
        for order in [Order::Right, Order::Opposite] {
            let table = LyndonTable::build(&d, order);
            assert_eq!(table.convexity_violation(), None, "{s}{r} {}", order.name());
        }
    }
}
