//! Permutations in one-line notation, their canonical reduced words, and
//! the braid and commutation moves that connect reduced words.

use std::fmt;

/// A permutation of `0..d` stored as its one-line notation `w(0) .. w(d-1)`.
///
/// `s_r` is the transposition of `r` and `r + 1`, and `s_r w` means
/// `s_r` composed after `w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm((0..d as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.0;
        let mut n = 0;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p[a] > p[b] {
                    n += 1;
                }
            }
        }
        n
    }

    fn position(&self, v: u8) -> usize {
        self.0.iter().position(|&x| x == v).expect("value in range")
    }

    /// `l(s_r w) < l(w)`.
    pub fn has_left_descent(&self, r: usize) -> bool {
        self.position(r as u8) > self.position(r as u8 + 1)
    }

    pub fn left_descents(&self) -> Vec<usize> {
        (0..self.degree().saturating_sub(1)).filter(|&r| self.has_left_descent(r)).collect()
    }

    /// `s_r w`: swaps the values `r` and `r + 1`.
    pub fn left_mul(&self, r: usize) -> Perm {
        let mut p = self.0.clone();
        for v in p.iter_mut() {
            if *v as usize == r {
                *v += 1;
            } else if *v as usize == r + 1 {
                *v -= 1;
            }
        }
        Perm(p)
    }

    /// `w s_r`: swaps the entries at positions `r` and `r + 1`.
    pub fn right_mul(&self, r: usize) -> Perm {
        let mut p = self.0.clone();
        p.swap(r, r + 1);
        Perm(p)
    }

    pub fn inverse(&self) -> Perm {
        let mut p = vec![0u8; self.degree()];
        for (k, &v) in self.0.iter().enumerate() {
            p[v as usize] = k as u8;
        }
        Perm(p)
    }

    /// `self . other`, applying `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&k| self.0[k as usize]).collect())
    }

    pub fn from_word(d: usize, word: &[usize]) -> Perm {
        let mut p = Perm::identity(d);
        for &r in word.iter().rev() {
            p = p.left_mul(r);
        }
        p
    }

    /// The lexicographically smallest reduced word: repeatedly take the
    /// smallest left descent.
    pub fn lexmin_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut out = Vec::with_capacity(w.length());
        while let Some(&r) = w.left_descents().first() {
            out.push(r);
            w = w.left_mul(r);
        }
        out
    }

    /// Moves the letters of a word placed at positions `0..d`: position
    /// `k` goes to position `w(k)`.
    pub fn act<T: Clone>(&self, letters: &[T]) -> Vec<T> {
        let mut out = letters.to_vec();
        for (k, &v) in self.0.iter().enumerate() {
            out[v as usize] = letters[k].clone();
        }
        out
    }

    /// Splits `w = x u` with `x` a minimal length representative of
    /// `w (S_a x S_b)` and `u` in the parabolic subgroup for `a = split`.
    pub fn parabolic_split(&self, split: usize) -> (Perm, Perm) {
        let mut x = self.0.clone();
        x[..split].sort_unstable();
        x[split..].sort_unstable();
        let x = Perm(x);
        let u = x.inverse().compose(self);
        (x, u)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All minimal length left coset representatives of `S_a x S_b` in
/// `S_{a+b}`, sorted by length and then by canonical reduced word.
pub fn minimal_coset_reps(a: usize, b: usize) -> Vec<Perm> {
    let d = a + b;
    let mut out = Vec::new();
    // A representative is fixed by which values land in the first block.
    fn choose(start: usize, d: usize, left: usize, acc: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for v in start..d {
            if d - v < left {
                break;
            }
            acc.push(v as u8);
            choose(v + 1, d, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut firsts = Vec::new();
    choose(0, d, a, &mut Vec::new(), &mut firsts);
    for first in firsts {
        let rest: Vec<u8> = (0..d as u8).filter(|v| !first.contains(v)).collect();
        out.push(Perm([first, rest].concat()));
    }
    out.sort_by_cached_key(|p| (p.length(), p.lexmin_word()));
    out
}

/// A rewrite of a reduced word at position `pos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// `s_a s_b -> s_b s_a` with `|a - b| > 1`.
    Commute(usize),
    /// `s_a s_b s_a -> s_b s_a s_b` with `|a - b| = 1`.
    Braid(usize),
}

pub fn apply_move(word: &mut [usize], m: Move) {
    match m {
        Move::Commute(p) => word.swap(p, p + 1),
        Move::Braid(p) => {
            let (a, b) = (word[p], word[p + 1]);
            word[p] = b;
            word[p + 1] = a;
            word[p + 2] = b;
        }
    }
}

/// Moves that turn the reduced word `u` into a reduced word beginning with
/// `t`, where `s_t` is a left descent of the permutation of `u`.
pub fn bring_to_front(d: usize, u: &[usize], t: usize) -> Vec<Move> {
    let mut moves = Vec::new();
    let mut word = u.to_vec();
    front(d, &mut word, 0, t, &mut moves);
    moves
}

fn front(d: usize, word: &mut Vec<usize>, at: usize, t: usize, moves: &mut Vec<Move>) {
    let a = word[at];
    if a == t {
        return;
    }
    if a.abs_diff(t) > 1 {
        front(d, word, at + 1, t, moves);
        let m = Move::Commute(at);
        apply_move(word, m);
        moves.push(m);
    } else {
        front(d, word, at + 1, t, moves);
        front(d, word, at + 2, a, moves);
        let m = Move::Braid(at);
        apply_move(word, m);
        moves.push(m);
    }
}

/// Moves that turn the reduced word `u` into the canonical reduced word of
/// its permutation.
pub fn to_lexmin(d: usize, u: &[usize]) -> Vec<Move> {
    let mut word = u.to_vec();
    let mut moves = Vec::new();
    for at in 0..word.len() {
        let p = Perm::from_word(d, &word[at..]);
        let t = p.left_descents()[0];
        front(d, &mut word, at, t, &mut moves);
    }
    moves
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_perms(d: usize) -> Vec<Perm> {
        fn rec(d: usize, acc: &mut Vec<u8>, out: &mut Vec<Perm>) {
            if acc.len() == d {
                out.push(Perm(acc.clone()));
                return;
            }
            for v in 0..d as u8 {
                if !acc.contains(&v) {
                    acc.push(v);
                    rec(d, acc, out);
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(d, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn lexmin_is_reduced_and_smallest() {
        for p in all_perms(4) {
            let w = p.lexmin_word();
            assert_eq!(w.len(), p.length());
            assert_eq!(Perm::from_word(4, &w), p);
        }
        let w0 = Perm(vec![2, 1, 0]);
        assert_eq!(w0.lexmin_word(), vec![0, 1, 0]);
    }

    #[test]
    fn act_matches_generators() {
        let p = Perm::from_word(3, &[0]);
        assert_eq!(p.act(&['a', 'b', 'c']), vec!['b', 'a', 'c']);
        let p = Perm::from_word(3, &[0, 1]);
        let step = Perm::from_word(3, &[0]).act(&Perm::from_word(3, &[1]).act(&['a', 'b', 'c']));
        assert_eq!(p.act(&['a', 'b', 'c']), step);
    }

    #[test]
    fn coset_reps() {
        assert_eq!(minimal_coset_reps(1, 1).len(), 2);
        let r = minimal_coset_reps(2, 1);
        assert_eq!(r.iter().map(Perm::length).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(minimal_coset_reps(3, 4).len(), 35);
        assert_eq!(minimal_coset_reps(0, 3).len(), 1);
        for p in all_perms(5) {
            let (x, u) = p.parabolic_split(2);
            assert_eq!(x.compose(&u), p);
            assert_eq!(x.length() + u.length(), p.length());
            assert!(u.0[..2].iter().all(|&v| v < 2));
        }
    }

    #[test]
    fn moves_reach_lexmin() {
        for p in all_perms(5) {
            let target = p.lexmin_word();
            // Start from the lexicographically largest reduced word.
            let mut w = p.clone();
            let mut start = Vec::new();
            while let Some(&r) = w.left_descents().last() {
                start.push(r);
                w = w.left_mul(r);
            }
            let mut word = start.clone();
            for m in to_lexmin(5, &start) {
                apply_move(&mut word, m);
                assert_eq!(Perm::from_word(5, &word), p);
            }
            assert_eq!(word, target);
        }
    }

    #[test]
    fn bring_descent_forward() {
        let p = Perm::from_word(4, &[0, 1, 0, 2]);
        for t in p.left_descents() {
            let u = p.lexmin_word();
            let mut word = u.clone();
            for m in bring_to_front(4, &u, t) {
                apply_move(&mut word, m);
            }
            assert_eq!(word[0], t);
            assert_eq!(Perm::from_word(4, &word), p);
        }
    }
}
