mod common;

use num::rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lyndon_klr::cartan::{Letter, RootVector, Series};
use lyndon_klr::klr_core::polyrep::{act, act_word, probe_vector, unit_vector};
use lyndon_klr::klr_core::poly::{braid_defect, YPoly};
use common::{algebra, random_element, random_gens, small_contents};
use lyndon_klr::klr_core::{words_of_content, Gen, KlrElement};

// The normal form of a generator word acts on the polynomial representation
// exactly like the word itself.
#[test]
fn normal_forms_agree_with_polynomial_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (s, r, nu) in small_contents() {
        let h = algebra(s, r);
        let nu = RootVector(nu);
        let d = nu.height();
        let words = words_of_content(&nu);
        let probe = probe_vector(&words);
        for _ in 0..25 {
            let i = &words[rng.gen_range(0..words.len())];
            let len = rng.gen_range(1..7);
            let gens = random_gens(&mut rng, d, len);
            let x = h.apply_word(&gens, &h.e(i).unwrap()).unwrap();
            let mut full = gens.clone();
            full.push(Gen::E(i.clone()));
            for v in [unit_vector(i), probe.clone()] {
                assert_eq!(act(h.datum(), &x, &v), act_word(h.datum(), &full, &v), "{gens:?} e{i:?} in {}", h.datum().name());
            }
            assert!(x.homogeneous_degree(h.datum()).is_some() || x.is_zero());
        }
    }
}

#[test]
fn braid_defect_matches_polynomial_representation() {
    for (s, r) in [(Series::A, 2), (Series::B, 2), (Series::G, 2), (Series::F, 4)] {
        let h = algebra(s, r);
        let datum = h.datum().clone();
        for a in datum.letters() {
            for b in datum.letters() {
                let i: Vec<Letter> = vec![a, b, a];
                let probe = probe_vector(std::slice::from_ref(&i));
                let lhs = act_word(&datum, &[Gen::Phi(0), Gen::Phi(1), Gen::Phi(0), Gen::E(i.clone())], &probe);
                let rhs = act_word(&datum, &[Gen::Phi(1), Gen::Phi(0), Gen::Phi(1), Gen::E(i.clone())], &probe);
                let defect = braid_defect(&datum, a, b, 3, 0, 1, 2);
                let mut want = rhs.clone();
                for (w, f) in &probe {
                    let g = defect.mul(f);
                    let slot = want.entry(w.clone()).or_default();
                    *slot = slot.add(&g);
                    if slot.is_zero() {
                        want.remove(w);
                    }
                }
                assert_eq!(lhs, want, "letters {a}{b}{a} in {}", datum.name());
            }
        }
    }
}

#[test]
fn associativity_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cases = small_contents();
    let mut count = 0;
    while count < 200 {
        let (s, r, nu) = &cases[count % cases.len()];
        let h = algebra(*s, *r);
        let nu = RootVector(nu.clone());
        let x = random_element(&h, &mut rng, &nu);
        let y = random_element(&h, &mut rng, &nu);
        let z = random_element(&h, &mut rng, &nu);
        let left = h.mul(&h.mul(&x, &y).unwrap(), &z).unwrap();
        let right = h.mul(&x, &h.mul(&y, &z).unwrap()).unwrap();
        assert_eq!(left, right);
        count += 1;
    }
}

#[test]
fn psi_and_tau_respect_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (s, r, nu) in small_contents() {
        let h = algebra(s, r);
        let nu = RootVector(nu);
        for _ in 0..10 {
            let x = random_element(&h, &mut rng, &nu);
            let y = random_element(&h, &mut rng, &nu);
            let xy = h.mul(&x, &y).unwrap();
            assert_eq!(h.psi(&xy), h.mul(&h.psi(&y), &h.psi(&x)).unwrap());
            assert_eq!(h.tau(&xy), h.mul(&h.tau(&x), &h.tau(&y)).unwrap());
            assert_eq!(h.tau(&h.tau(&x)), x);
            assert_eq!(h.psi(&h.psi(&x)), x);
        }
    }
}

#[test]
fn normal_form_is_stable() {
    let h = algebra(Series::A, 2);
    let nu = RootVector(vec![2, 1]);
    let one = h.one(&nu);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let x = random_element(&h, &mut rng, &nu);
        assert_eq!(h.mul(&one, &x).unwrap(), x);
        assert_eq!(h.mul(&x, &one).unwrap(), x);
    }
}

// Distinct normal-form monomials act linearly independently on the
// polynomial representation for small heights.
#[test]
fn basis_monomials_are_independent() {
    use lyndon_klr::klr_core::perm::Perm;
    use lyndon_klr::klr_core::Mono;
    let h = algebra(Series::A, 2);
    let nu = RootVector(vec![2, 1]);
    let words = words_of_content(&nu);
    // Images on every monomial of degree at most 3 in each weight space.
    let mut probes = Vec::new();
    for i in &words {
        for a in 0..4u32 {
            for b in 0..4 - a {
                for c in 0..4 - a - b {
                    let mut v = lyndon_klr::klr_core::polyrep::PolyVector::new();
                    let mut f = YPoly::one(3);
                    for (r, k) in [a, b, c].into_iter().enumerate() {
                        for _ in 0..k {
                            f = f.mul(&YPoly::var(3, r));
                        }
                    }
                    v.insert(i.clone(), f);
                    probes.push(v);
                }
            }
        }
    }
    let mut images = Vec::new();
    let perms = [vec![0u8, 1, 2], vec![1, 0, 2], vec![0, 2, 1], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]];
    for i in &words {
        for p in &perms {
            for e in [[0u32, 0, 0], [1, 0, 0], [0, 0, 1], [1, 1, 0], [0, 0, 2]] {
                let m = Mono { perm: Perm(p.clone()), y: e.to_vec(), idem: i.clone() };
                let x = KlrElement::mono(m);
                let mut img = std::collections::BTreeMap::new();
                for (n, v) in probes.iter().enumerate() {
                    for (w, f) in act(h.datum(), &x, v) {
                        img.insert((n, w), f);
                    }
                }
                images.push(img);
            }
        }
    }
    // Gaussian elimination over the coefficient vectors.
    let mut keys = std::collections::BTreeSet::new();
    for v in &images {
        for (w, f) in v {
            for (e, _) in f.terms() {
                keys.insert((w.clone(), e.clone()));
            }
        }
    }
    let keys: Vec<_> = keys.into_iter().collect();
    let mut rows: Vec<Vec<BigRational>> = images
        .iter()
        .map(|v| {
            keys.iter()
                .map(|(w, e)| {
                    v.get(w).and_then(|f| f.terms().find(|(k, _)| *k == e).map(|(_, c)| c.clone())).unwrap_or_default()
                })
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..keys.len() {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != BigRational::default()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != BigRational::default() {
                let f = &rows[r][col] / &pivot;
                let src = rows[rank].clone();
                for (a, b) in rows[r].iter_mut().zip(&src) {
                    *a -= &f * b;
                }
            }
        }
        rank += 1;
    }
    assert_eq!(rank, images.len());
}
