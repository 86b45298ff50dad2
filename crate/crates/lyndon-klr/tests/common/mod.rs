//! Helpers shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use lyndon_klr::bases::Bases;
use lyndon_klr::cartan::{CartanDatum, RootVector, Series};
use lyndon_klr::klr_core::{words_of_content, Gen, KlrAlgebra, KlrElement};
use lyndon_klr::klr_modules::{GradedModule, ModuleBuilder};
use lyndon_klr::lyndon::LyndonTable;
use lyndon_klr::qlaurent::{q_int, LaurentPoly};
use lyndon_klr::shuffle::{Order, ShuffleElement, Word};

pub fn datum(s: Series, r: usize) -> Arc<CartanDatum> {
    Arc::new(CartanDatum::new(s, r).unwrap())
}

pub fn bases(s: Series, r: usize) -> Bases {
    Bases::new(Arc::new(LyndonTable::build(&datum(s, r), Order::Right)))
}

pub fn builder(s: Series, r: usize) -> ModuleBuilder {
    ModuleBuilder::new(Arc::new(bases(s, r)))
}

pub fn algebra(s: Series, r: usize) -> KlrAlgebra {
    KlrAlgebra::new(datum(s, r))
}

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

/// `[a, a±1, .., b]`.
pub fn run(a: u8, b: u8) -> Vec<u8> {
    if a <= b {
        (a..=b).collect()
    } else {
        (b..=a).rev().collect()
    }
}

pub fn one() -> LaurentPoly {
    LaurentPoly::one()
}

pub fn two() -> LaurentPoly {
    q_int(2, 1)
}

pub fn elem(d: &Arc<CartanDatum>, terms: &[(Vec<u8>, LaurentPoly)]) -> ShuffleElement {
    let mut x = ShuffleElement::zero(d);
    for (word, c) in terms {
        x.add_term(Word::new(word.clone()), c.clone());
    }
    x
}

pub fn ws(words: &[&str], c: LaurentPoly) -> Vec<(Vec<u8>, LaurentPoly)> {
    words.iter().map(|s| (w(s).0, c.clone())).collect()
}

pub fn lyndon_words(b: &ModuleBuilder) -> Vec<Word> {
    let mut words: Vec<Word> = b.bases().table().entries().map(|(_, l)| l.clone()).collect();
    words.sort_by_key(|l| l.len());
    words
}

/// Every nonzero content with at most `height` letters in total.
pub fn contents_up_to(rank: usize, height: u32) -> Vec<RootVector> {
    let mut out = vec![RootVector::zero(rank)];
    for k in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                let used: u32 = v.0.iter().sum();
                (0..=height - used).map(move |c| {
                    let mut v = v.clone();
                    v.0[k] = c;
                    v
                })
            })
            .collect();
    }
    out.retain(|v| !v.is_zero());
    out
}

pub fn roots_up_to(d: &CartanDatum, h: usize) -> Vec<RootVector> {
    d.positive_roots().iter().filter(|b| b.height() <= h).cloned().collect()
}

/// Closed-form root vectors `b_l*` for the classical series, G2 and F4 up
/// to height 10. Height 11 of F4 is left out; see `f4_height_eleven_formula`.
pub fn reference_root_vectors(b: &Bases) -> Vec<(Word, ShuffleElement)> {
    type Out = Vec<(Vec<u8>, ShuffleElement)>;
    fn plain(d: &Arc<CartanDatum>, out: &mut Out, word: Vec<u8>, c: LaurentPoly) {
        out.push((word.clone(), elem(d, &[(word, c)])));
    }
    fn intervals_from(d: &Arc<CartanDatum>, out: &mut Out, from: u8) {
        let r = d.rank() as u8;
        for i in from..r {
            for j in i..r {
                plain(d, out, run(i, j), one());
            }
        }
    }
    let d = b.datum().clone();
    let r = d.rank() as u8;
    let mut out: Out = Vec::new();
    match d.series() {
        Series::A => intervals_from(&d, &mut out, 0),
        Series::B => {
            intervals_from(&d, &mut out, 0);
            for j in 0..r {
                for k in j + 1..r {
                    plain(&d, &mut out, [run(j, 0), run(0, k)].concat(), two());
                }
            }
        }
        Series::C => {
            intervals_from(&d, &mut out, 0);
            for j in 1..r {
                for k in j + 1..r {
                    plain(&d, &mut out, [run(j, 1), run(0, k)].concat(), one());
                }
            }
            // The long roots: b* = q [0].([1..j] * [1..j]).
            for j in 1..r {
                let tail = ShuffleElement::word(&d, Word::new(run(1, j)));
                let e = ShuffleElement::letter(&d, 0).concat(&tail.shuffle(&tail).unwrap()).unwrap().shift(1);
                out.push(([run(0, j), run(1, j)].concat(), e));
            }
        }
        Series::D => {
            plain(&d, &mut out, vec![0], one());
            for i in 2..r {
                plain(&d, &mut out, [vec![0], run(2, i)].concat(), one());
            }
            intervals_from(&d, &mut out, 1);
            let pair = |pre: Vec<u8>, k: u8| {
                let a = [pre.clone(), vec![1, 0], run(2, k)].concat();
                let c = [pre, vec![0, 1], run(2, k)].concat();
                (a.clone(), elem(&d, &[(a, one()), (c, one())]))
            };
            for k in 2..r {
                out.push(pair(vec![], k));
            }
            for j in 2..r {
                for k in j + 1..r {
                    out.push(pair(run(j, 2), k));
                }
            }
        }
        Series::G => {
            let k = &two() * &q_int(3, 1);
            plain(&d, &mut out, vec![0], one());
            plain(&d, &mut out, vec![1], one());
            plain(&d, &mut out, vec![0, 1], one());
            plain(&d, &mut out, vec![0, 0, 1], two());
            plain(&d, &mut out, vec![0, 0, 0, 1], k.clone());
            let terms = [ws(&["00101"], k.clone()), ws(&["00011"], &k * &q_int(2, 3))].concat();
            out.push((vec![0, 0, 1, 0, 1], elem(&d, &terms)));
        }
        Series::F => {
            intervals_from(&d, &mut out, 0);
            let t2 = two();
            let t22 = &t2 * &t2;
            let table: Vec<(&str, Vec<(Vec<u8>, LaurentPoly)>)> = vec![
                ("112", ws(&["112"], t2.clone())),
                ("1012", [ws(&["1012"], one()), ws(&["0112"], t2.clone())].concat()),
                ("1123", ws(&["1123"], t2.clone())),
                ("01012", [ws(&["01012"], t2.clone()), ws(&["00112"], t22.clone())].concat()),
                ("21123", ws(&["21123"], t2.clone())),
                ("10123", [ws(&["10123"], one()), ws(&["01123"], t2.clone())].concat()),
                ("010123", [ws(&["010123"], t2.clone()), ws(&["001123"], t22.clone())].concat()),
                ("210123", [ws(&["210123"], one()), ws(&["201123", "021123"], t2.clone())].concat()),
                ("1210123", [ws(&["1210123"], one()), ws(&["1021123", "1201123"], t2.clone())].concat()),
                (
                    "2010123",
                    [ws(&["2010123", "0210123"], t2.clone()), ws(&["2001123", "0201123", "0021123"], t22.clone())]
                        .concat(),
                ),
                (
                    "12010123",
                    [
                        ws(&["12010123", "10210123"], t2.clone()),
                        ws(&["01210123"], one()),
                        ws(&["12001123", "10201123", "10021123"], t22.clone()),
                        ws(&["01201123", "01021123"], t2.clone()),
                    ]
                    .concat(),
                ),
            ];
            for (word, terms) in table {
                out.push((w(word).0, elem(&d, &terms)));
            }
            // Read with [12010123] in the inner slot, the only good Lyndon
            // word of the right content.
            let inner = out.iter().find(|(x, _)| *x == w("12010123").0).unwrap().1.clone();
            let l9 = ShuffleElement::letter(&d, 1).concat(&inner).unwrap().scale(&two());
            let l10 = ShuffleElement::letter(&d, 2).concat(&l9).unwrap();
            out.push((w("112010123").0, l9));
            out.push((w("2112010123").0, l10));
        }
        Series::E => {}
    }
    out.into_iter().map(|(x, e)| (Word::new(x), e)).collect()
}

/// The closed form offered for the height-11 root vector of F4:
/// `q [2].(b*[10123] * b*[10123])`.
pub fn f4_height_eleven_formula(b: &Bases) -> ShuffleElement {
    let d = b.datum();
    let e = b.dual_pbw_lyndon(&w("10123")).unwrap();
    ShuffleElement::letter(d, 2).concat(&e.shuffle(&e).unwrap()).unwrap().shift(1)
}

/// Specializes `q` to 7/3, which avoids the roots of unity and small
/// integers where products of letters could degenerate.
pub fn at_q(x: &ShuffleElement) -> BTreeMap<Vec<u8>, BigRational> {
    let q = BigRational::new(7.into(), 3.into());
    let mut out = BTreeMap::new();
    for (w, c) in x.terms() {
        let mut v = BigRational::zero();
        for (e, a) in c.terms() {
            let p = if e >= 0 { q.pow(e as i32) } else { BigRational::one() / q.pow((-e) as i32) };
            v += a * p;
        }
        if !v.is_zero() {
            out.insert(w.0.clone(), v);
        }
    }
    out
}

/// Products of letters span the image of `U_q^+`. The extreme words of an
/// echelon form of that span are the good words of content `nu`.
pub fn good_words_by_elimination(d: &Arc<CartanDatum>, order: Order, nu: &RootVector) -> BTreeSet<Vec<u8>> {
    fn products(d: &Arc<CartanDatum>, rest: &mut Vec<u32>, acc: ShuffleElement, out: &mut Vec<ShuffleElement>) {
        if rest.iter().all(|&c| c == 0) {
            out.push(acc);
            return;
        }
        for i in 0..rest.len() {
            if rest[i] > 0 {
                rest[i] -= 1;
                let next = acc.shuffle(&ShuffleElement::letter(d, i as u8)).unwrap();
                products(d, rest, next, out);
                rest[i] += 1;
            }
        }
    }
    let mut gens = Vec::new();
    products(d, &mut nu.0.clone(), ShuffleElement::word(d, Word::empty()), &mut gens);

    // Rows keyed by their extreme word, reduced against each other.
    let extreme = |v: &BTreeMap<Vec<u8>, BigRational>| v.keys().min_by(|a, b| order.cmp(a, b)).cloned();
    let mut rows: BTreeMap<Vec<u8>, BTreeMap<Vec<u8>, BigRational>> = BTreeMap::new();
    for g in &gens {
        let mut v = at_q(g);
        while let Some(p) = extreme(&v) {
            match rows.get(&p) {
                Some(row) => {
                    let c = v[&p].clone() / &row[&p];
                    for (k, x) in row {
                        let e = v.entry(k.clone()).or_insert_with(BigRational::zero);
                        *e -= &c * x;
                    }
                    v.retain(|_, x| !x.is_zero());
                }
                None => {
                    rows.insert(p, v);
                    break;
                }
            }
        }
    }
    rows.into_keys().collect()
}

/// Entries to perturb: diagonal y entries at both ends, and a corner and a
/// middle entry of each phi.
pub fn mutation_targets(m: &GradedModule) -> Vec<(bool, usize, usize, usize)> {
    let n = m.dim();
    let mut out = Vec::new();
    for r in 0..m.height() {
        out.push((false, r, 0, 0));
        out.push((false, r, n - 1, 0));
    }
    for r in 0..m.height() - 1 {
        out.push((true, r, 0, n - 1));
        out.push((true, r, n / 2, n / 2));
    }
    out
}

pub fn random_gens(rng: &mut ChaCha8Rng, d: usize, len: usize) -> Vec<Gen> {
    (0..len)
        .map(|_| {
            if d > 1 && rng.gen_bool(0.6) {
                Gen::Phi(rng.gen_range(0..d - 1))
            } else {
                Gen::Y(rng.gen_range(0..d))
            }
        })
        .collect()
}

pub fn random_element(h: &KlrAlgebra, rng: &mut ChaCha8Rng, nu: &RootVector) -> KlrElement {
    let words = words_of_content(nu);
    let d = nu.height();
    let mut x = KlrElement::zero();
    for _ in 0..2 {
        let i = &words[rng.gen_range(0..words.len())];
        let len = rng.gen_range(0..4);
        let gens = random_gens(rng, d, len);
        let term = h.apply_word(&gens, &h.e(i).unwrap()).unwrap();
        let c = BigRational::from_integer(rng.gen_range(-3i64..=3).into());
        x.add_scaled(&term, &c);
    }
    x
}

/// Small contents across the series, all of height at most 4.
pub fn small_contents() -> Vec<(Series, usize, Vec<u32>)> {
    vec![
        (Series::A, 2, vec![2, 1]),
        (Series::A, 3, vec![1, 1, 1]),
        (Series::B, 2, vec![2, 1]),
        (Series::B, 2, vec![2, 2]),
        (Series::C, 3, vec![1, 2, 1]),
        (Series::G, 2, vec![3, 1]),
        (Series::F, 4, vec![0, 2, 1, 1]),
        (Series::A, 1, vec![3]),
    ]
}
