//! Lyndon words for the two word orders, their factorizations, and the
//! table of good Lyndon words built by induction on height.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::cartan::{root_key, CartanDatum, Letter, RootVector};
use crate::error::AlgebraError;
use crate::shuffle::{Order, Word};

/// For `Order::Right`: `w` is larger than each of its proper left factors.
/// For `Order::Opposite`: `w` is smaller than each of its proper right
/// factors.
pub fn is_lyndon(order: Order, w: &[Letter]) -> Result<bool, AlgebraError> {
    if w.is_empty() {
        return Err(AlgebraError::EmptyWord);
    }
    let n = w.len();
    Ok(match order {
        Order::Right => (1..n).all(|k| order.lt(&w[..k], w)),
        Order::Opposite => (1..n).all(|k| order.lt(w, &w[k..])),
    })
}

/// Splits a Lyndon word of length at least two. Under `Order::Right` the
/// right part is the longest proper right factor that is Lyndon; under
/// `Order::Opposite` the left part is the longest proper left factor that
/// is Lyndon.
pub fn std_factorization(order: Order, l: &[Letter]) -> Result<(Word, Word), AlgebraError> {
    if !is_lyndon(order, l)? {
        return Err(AlgebraError::NotLyndon(Word::from(l).to_string()));
    }
    if l.len() < 2 {
        return Err(AlgebraError::NotLyndon(format!("{} has no proper factorization", Word::from(l))));
    }
    let n = l.len();
    let split = match order {
        Order::Right => (1..n).find(|&k| is_lyndon(order, &l[k..]).unwrap_or(false)),
        Order::Opposite => (1..n).rev().find(|&k| is_lyndon(order, &l[..k]).unwrap_or(false)),
    }
    .expect("a single letter is always Lyndon");
    Ok((Word::from(&l[..split]), Word::from(&l[split..])))
}

/// The unique factorization into Lyndon words that do not increase from
/// left to right.
pub fn canonical_factorization(order: Order, w: &[Letter]) -> Result<Vec<Word>, AlgebraError> {
    if w.is_empty() {
        return Err(AlgebraError::EmptyWord);
    }
    let mut rest = w;
    let mut out = Vec::new();
    match order {
        Order::Right => {
            while !rest.is_empty() {
                let k = (0..rest.len())
                    .find(|&k| is_lyndon(order, &rest[k..]).unwrap_or(false))
                    .unwrap();
                out.push(Word::from(&rest[k..]));
                rest = &rest[..k];
            }
            out.reverse();
        }
        Order::Opposite => {
            while !rest.is_empty() {
                let k = (1..=rest.len())
                    .rev()
                    .find(|&k| is_lyndon(order, &rest[..k]).unwrap_or(false))
                    .unwrap();
                out.push(Word::from(&rest[..k]));
                rest = &rest[k..];
            }
        }
    }
    Ok(out)
}

/// The bijection between positive roots and good Lyndon words for one
/// word order.
#[derive(Clone, Debug)]
pub struct LyndonTable {
    datum: Arc<CartanDatum>,
    order: Order,
    words: BTreeMap<RootVector, Word>,
    roots: HashMap<Word, RootVector>,
    sorted: Vec<RootVector>,
}

impl LyndonTable {
    /// `l(alpha_i) = [i]`, and for taller roots `l(beta)` is the smallest
    /// (for `Order::Opposite`, largest) concatenation `l(b1) l(b2)` over
    /// splittings `beta = b1 + b2` into roots with `l(b1) < l(b2)`.
    pub fn build(datum: &Arc<CartanDatum>, order: Order) -> LyndonTable {
        let roots = datum.positive_roots();
        let mut words: BTreeMap<RootVector, Word> = BTreeMap::new();
        for beta in roots {
            if beta.height() == 1 {
                let i = beta.0.iter().position(|&c| c == 1).unwrap() as Letter;
                words.insert(beta.clone(), Word::letter(i));
                continue;
            }
            let mut best: Option<Word> = None;
            for b1 in roots {
                if b1.height() >= beta.height() {
                    break;
                }
                let Some(b2) = beta.checked_sub(b1) else { continue };
                let (Some(l1), Some(l2)) = (words.get(b1), words.get(&b2)) else { continue };
                if !order.lt(&l1.0, &l2.0) {
                    continue;
                }
                let cand = l1.concat(l2);
                let better = match &best {
                    None => true,
                    Some(b) => match order {
                        Order::Right => order.lt(&cand.0, &b.0),
                        Order::Opposite => order.lt(&b.0, &cand.0),
                    },
                };
                if better {
                    best = Some(cand);
                }
            }
            words.insert(beta.clone(), best.expect("every non-simple root splits"));
        }
        let roots_by_word = words.iter().map(|(b, w)| (w.clone(), b.clone())).collect();
        let mut sorted: Vec<RootVector> = words.keys().cloned().collect();
        sorted.sort_by(|a, b| order.cmp(&words[a].0, &words[b].0));
        LyndonTable {
            datum: datum.clone(),
            order,
            words,
            roots: roots_by_word,
            sorted,
        }
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, beta: &RootVector) -> Option<&Word> {
        self.words.get(beta)
    }

    pub fn root_of(&self, w: &Word) -> Option<&RootVector> {
        self.roots.get(w)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.roots.contains_key(w)
    }

    /// `(root, word)` pairs in the induced order on roots.
    pub fn entries(&self) -> impl Iterator<Item = (&RootVector, &Word)> {
        self.sorted.iter().map(move |b| (b, &self.words[b]))
    }

    /// Words grouped by height, each group in the word order.
    pub fn by_height(&self) -> BTreeMap<usize, Vec<Word>> {
        let mut out: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
        for (b, w) in self.entries() {
            out.entry(b.height()).or_default().push(w.clone());
        }
        out
    }

    /// A word is good exactly when all of its canonical factors are good
    /// Lyndon words.
    pub fn is_good(&self, w: &Word) -> bool {
        match canonical_factorization(self.order, &w.0) {
            Ok(fs) => fs.iter().all(|f| self.contains(f)),
            Err(_) => false,
        }
    }

    /// Canonical factors of a good word, or an error naming the word.
    pub fn good_factors(&self, w: &Word) -> Result<Vec<Word>, AlgebraError> {
        let fs = canonical_factorization(self.order, &w.0)?;
        if fs.iter().all(|f| self.contains(f)) {
            Ok(fs)
        } else {
            Err(AlgebraError::NotGood(w.to_string()))
        }
    }

    /// All good words of weight `nu`: non-increasing products of good
    /// Lyndon words, sorted in the word order.
    pub fn good_words(&self, nu: &RootVector) -> Vec<Word> {
        let mut out = Vec::new();
        // roots from the largest word down, so products come out non-increasing
        let desc: Vec<&RootVector> = self.sorted.iter().rev().collect();
        let mut stack: Vec<&Word> = Vec::new();
        self.partitions(nu, &desc, 0, &mut stack, &mut out);
        out.sort_by(|a, b| self.order.cmp(&a.0, &b.0));
        out
    }

    fn partitions<'a>(
        &'a self,
        rest: &RootVector,
        desc: &[&'a RootVector],
        start: usize,
        stack: &mut Vec<&'a Word>,
        out: &mut Vec<Word>,
    ) {
        if rest.is_zero() {
            let mut w = Vec::new();
            for f in stack.iter() {
                w.extend_from_slice(&f.0);
            }
            out.push(Word(w));
            return;
        }
        for (k, beta) in desc.iter().enumerate().skip(start) {
            if let Some(next) = rest.checked_sub(beta) {
                stack.push(&self.words[*beta]);
                self.partitions(&next, desc, k, stack, out);
                stack.pop();
            }
        }
    }

    /// Checks that `b1 < b2` with `b1 + b2` a root forces
    /// `b1 < b1 + b2 < b2`. Returns the first violation.
    pub fn convexity_violation(&self) -> Option<(RootVector, RootVector)> {
        let pos: HashMap<&RootVector, usize> =
            self.sorted.iter().enumerate().map(|(i, b)| (b, i)).collect();
        for (i, b1) in self.sorted.iter().enumerate() {
            for b2 in &self.sorted[i + 1..] {
                let s = b1.add(b2);
                if let Some(&k) = pos.get(&s) {
                    if !(i < k && k < pos[b2]) {
                        return Some((b1.clone(), b2.clone()));
                    }
                }
            }
        }
        None
    }

    /// Serialized form used by the table cache: one line per root.
    pub fn to_lines(&self) -> Vec<String> {
        let mut roots: Vec<&RootVector> = self.words.keys().collect();
        roots.sort_by(|a, b| root_key(a).cmp(&root_key(b)));
        roots
            .into_iter()
            .map(|b| {
                let coeffs: Vec<String> = b.0.iter().map(|c| c.to_string()).collect();
                format!("{} {}", coeffs.join(","), self.words[b].compact())
            })
            .collect()
    }
}
