//! Finite-type root data with fixed node labels.
//!
//! Nodes are labelled `0..rank`. Classical types follow the usual picture
//! with the special node at `0`: in `B` it is the short end, in `C` the long
//! end, and in `D` nodes `0` and `1` both hang off node `2`. `F4` is the chain
//! `0 - 1 => 2 - 3` with `0, 1` short, and `G2` has `0` short. `E6..E8` use
//! the Bourbaki picture shifted down by one: the branch node is `3`, with
//! `1` as the short arm and `0 - 2 - 3` as the other short arm.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Letter of the alphabet `I`.
pub type Letter = u8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn as_char(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

impl FromStr for Series {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            _ => Err(AlgebraError::Parse(format!("unknown series {s:?}"))),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// An element of the positive root lattice, one coefficient per node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector(pub Vec<u32>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    pub fn simple(rank: usize, i: Letter) -> Self {
        let mut v = RootVector::zero(rank);
        v.0[i as usize] = 1;
        v
    }

    pub fn height(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when it stays in the positive cone.
    pub fn checked_sub(&self, other: &RootVector) -> Option<RootVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(RootVector)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c == 1 {
                write!(f, "a{i}")?;
            } else {
                write!(f, "{c}a{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A finite-type root datum with a chosen orientation of the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    series: Series,
    rank: usize,
    pairing: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    orientation: BTreeSet<(Letter, Letter)>,
    positive_roots: Vec<RootVector>,
}

/// On-disk form of a datum. Everything else is recomputed on load.
#[derive(Serialize, Deserialize)]
struct DatumRecord {
    series: Series,
    rank: usize,
    pairing: Vec<Vec<i64>>,
    orientation: Vec<(Letter, Letter)>,
}

fn edges_for(series: Series, rank: usize) -> Result<Vec<(usize, usize, i64)>, AlgebraError> {
    let invalid = || AlgebraError::InvalidType {
        series: series.as_char(),
        rank,
    };
    let chain = |from: usize, w: i64| (from..rank.saturating_sub(1)).map(move |i| (i, i + 1, w));
    Ok(match series {
        Series::A if rank >= 1 => chain(0, -1).collect(),
        Series::B if rank >= 2 => chain(0, -2).collect(),
        Series::C if rank >= 2 => std::iter::once((0, 1, -2)).chain(chain(1, -1)).collect(),
        Series::D if rank >= 4 => [(0, 2, -1), (1, 2, -1)].into_iter().chain(chain(2, -1)).collect(),
        Series::E if (6..=8).contains(&rank) => [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]
            .into_iter()
            .filter(|&(_, b)| b < rank)
            .map(|(a, b)| (a, b, -1))
            .collect(),
        Series::F if rank == 4 => vec![(0, 1, -1), (1, 2, -2), (2, 3, -2)],
        Series::G if rank == 2 => vec![(0, 1, -3)],
        _ => return Err(invalid()),
    })
}

fn norms_for(series: Series, rank: usize) -> Vec<i64> {
    (0..rank)
        .map(|i| match series {
            Series::B => if i == 0 { 2 } else { 4 },
            Series::C => if i == 0 { 4 } else { 2 },
            Series::F => if i < 2 { 2 } else { 4 },
            Series::G => if i == 0 { 2 } else { 6 },
            _ => 2,
        })
        .collect()
}

impl CartanDatum {
    /// Builds the datum with every edge oriented from the smaller label to
    /// the larger one.
    pub fn new(series: Series, rank: usize) -> Result<Self, AlgebraError> {
        let edges = edges_for(series, rank)?;
        let orientation = edges.iter().map(|&(a, b, _)| (a as Letter, b as Letter)).collect();
        Self::with_orientation(series, rank, orientation)
    }

    /// Builds the datum with an explicit orientation, one arrow per edge.
    pub fn with_orientation(
        series: Series,
        rank: usize,
        orientation: BTreeSet<(Letter, Letter)>,
    ) -> Result<Self, AlgebraError> {
        let edges = edges_for(series, rank)?;
        let norms = norms_for(series, rank);
        let mut pairing = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            pairing[i][i] = norms[i];
        }
        for &(a, b, w) in &edges {
            pairing[a][b] = w;
            pairing[b][a] = w;
        }
        Self::from_pairing(series, rank, pairing, orientation)
    }

    fn from_pairing(
        series: Series,
        rank: usize,
        pairing: Vec<Vec<i64>>,
        orientation: BTreeSet<(Letter, Letter)>,
    ) -> Result<Self, AlgebraError> {
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * pairing[i][j] / pairing[i][i]).collect())
            .collect();
        let d = (0..rank).map(|i| pairing[i][i] / 2).collect();
        for i in 0..rank {
            for j in (i + 1)..rank {
                let fwd = orientation.contains(&(i as Letter, j as Letter));
                let back = orientation.contains(&(j as Letter, i as Letter));
                let adjacent = pairing[i][j] != 0;
                if adjacent && fwd == back || !adjacent && (fwd || back) {
                    return Err(AlgebraError::Parse(format!(
                        "orientation must contain exactly one arrow per edge (nodes {i}, {j})"
                    )));
                }
            }
        }
        if orientation.len() != (0..rank).flat_map(|i| (i + 1..rank).map(move |j| (i, j))).filter(|&(i, j)| pairing[i][j] != 0).count() {
            return Err(AlgebraError::Parse("orientation names unknown nodes".into()));
        }
        let mut datum = CartanDatum {
            series,
            rank,
            pairing,
            cartan,
            d,
            orientation,
            positive_roots: Vec::new(),
        };
        datum.positive_roots = datum.generate_roots();
        Ok(datum)
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    pub fn pairing(&self, i: Letter, j: Letter) -> i64 {
        self.pairing[i as usize][j as usize]
    }

    pub fn pairing_matrix(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    pub fn cartan(&self, i: Letter, j: Letter) -> i64 {
        self.cartan[i as usize][j as usize]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `d_i = (alpha_i, alpha_i) / 2`.
    pub fn d(&self, i: Letter) -> i64 {
        self.d[i as usize]
    }

    pub fn orientation(&self) -> &BTreeSet<(Letter, Letter)> {
        &self.orientation
    }

    /// True when the diagram has the arrow `i -> j`.
    pub fn arrow(&self, i: Letter, j: Letter) -> bool {
        self.orientation.contains(&(i, j))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.rank as Letter
    }

    pub fn check_letter(&self, i: Letter) -> Result<(), AlgebraError> {
        if (i as usize) < self.rank {
            Ok(())
        } else {
            Err(AlgebraError::UnknownLetter(i))
        }
    }

    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    pub fn is_positive_root(&self, v: &RootVector) -> bool {
        self.positive_roots.binary_search_by(|r| root_key(r).cmp(&root_key(v))).is_ok()
    }

    /// The symmetric form on the root lattice.
    pub fn inner(&self, a: &RootVector, b: &RootVector) -> i64 {
        let mut s = 0;
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    s += x as i64 * y as i64 * self.pairing[i][j];
                }
            }
        }
        s
    }

    /// `(v, alpha_i)`.
    pub fn inner_simple(&self, v: &RootVector, i: Letter) -> i64 {
        v.0.iter()
            .enumerate()
            .map(|(j, &c)| c as i64 * self.pairing[j][i as usize])
            .sum()
    }

    /// Counts letters of a word.
    pub fn content(&self, word: &[Letter]) -> Result<RootVector, AlgebraError> {
        let mut v = RootVector::zero(self.rank);
        for &i in word {
            self.check_letter(i)?;
            v.0[i as usize] += 1;
        }
        Ok(v)
    }

    /// The known number of positive roots for this type.
    pub fn expected_root_count(&self) -> usize {
        let r = self.rank;
        match self.series {
            Series::A => r * (r + 1) / 2,
            Series::B | Series::C => r * r,
            Series::D => r * (r - 1),
            Series::E => [36, 63, 120][r - 6],
            Series::F => 24,
            Series::G => 6,
        }
    }

    /// Root strings: `beta + alpha_i` is a root exactly when
    /// `p - <beta, alpha_i^vee> > 0`, where `p` is how far `beta` can be
    /// lowered by `alpha_i`.
    fn generate_roots(&self) -> Vec<RootVector> {
        let n = self.rank;
        let mut known: HashSet<RootVector> = HashSet::new();
        let mut layer: Vec<RootVector> = (0..n as Letter).map(|i| RootVector::simple(n, i)).collect();
        let mut all = layer.clone();
        known.extend(layer.iter().cloned());
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    let alpha = RootVector::simple(n, i as Letter);
                    if *beta == alpha {
                        continue;
                    }
                    let mut p = 0;
                    let mut cur = beta.clone();
                    while let Some(lower) = cur.checked_sub(&alpha) {
                        if !known.contains(&lower) {
                            break;
                        }
                        p += 1;
                        cur = lower;
                    }
                    let coroot = 2 * self.inner_simple(beta, i as Letter) / self.pairing[i][i];
                    if p - coroot > 0 {
                        let up = beta.add(&alpha);
                        if known.insert(up.clone()) {
                            next.push(up.clone());
                            all.push(up);
                        }
                    }
                }
            }
            layer = next;
        }
        all.sort_by(|a, b| root_key(a).cmp(&root_key(b)));
        all
    }

    pub fn to_json(&self) -> String {
        let rec = DatumRecord {
            series: self.series,
            rank: self.rank,
            pairing: self.pairing.clone(),
            orientation: self.orientation.iter().copied().collect(),
        };
        serde_json::to_string(&rec).expect("datum serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, AlgebraError> {
        let rec: DatumRecord =
            serde_json::from_str(s).map_err(|e| AlgebraError::Parse(e.to_string()))?;
        let reference = CartanDatum::new(rec.series, rec.rank)?;
        if rec.pairing != reference.pairing {
            return Err(AlgebraError::Parse("pairing does not match the series".into()));
        }
        Self::from_pairing(rec.series, rec.rank, rec.pairing, rec.orientation.into_iter().collect())
    }
}

/// Roots sorted by height, then coefficients.
pub fn root_key(v: &RootVector) -> (usize, &[u32]) {
    (v.height(), &v.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        let cases = [
            (Series::A, 1),
            (Series::A, 8),
            (Series::B, 2),
            (Series::B, 6),
            (Series::C, 3),
            (Series::C, 6),
            (Series::D, 4),
            (Series::D, 6),
            (Series::E, 6),
            (Series::E, 7),
            (Series::E, 8),
            (Series::F, 4),
            (Series::G, 2),
        ];
        for (s, r) in cases {
            let d = CartanDatum::new(s, r).unwrap();
            assert_eq!(d.positive_roots().len(), d.expected_root_count(), "{s}{r}");
        }
    }

    #[test]
    fn b2_roots() {
        let d = CartanDatum::new(Series::B, 2).unwrap();
        let got: Vec<Vec<u32>> = d.positive_roots().iter().map(|r| r.0.clone()).collect();
        assert_eq!(got, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn d4_has_the_highest_root() {
        let d = CartanDatum::new(Series::D, 4).unwrap();
        assert!(d.is_positive_root(&RootVector(vec![1, 1, 2, 1])));
        assert!(!d.is_positive_root(&RootVector(vec![1, 1, 0, 0])));
    }

    #[test]
    fn cartan_entries() {
        let f4 = CartanDatum::new(Series::F, 4).unwrap();
        assert_eq!(f4.cartan(1, 2), -2);
        assert_eq!(f4.cartan(2, 1), -1);
        assert_eq!(f4.d(0), 1);
        assert_eq!(f4.d(3), 2);
        let g2 = CartanDatum::new(Series::G, 2).unwrap();
        assert_eq!(g2.cartan(0, 1), -3);
        assert_eq!(g2.cartan(1, 0), -1);
        assert_eq!(g2.d(1), 3);
    }

    #[test]
    fn invalid_types() {
        assert!(CartanDatum::new(Series::D, 3).is_err());
        assert!(CartanDatum::new(Series::B, 1).is_err());
        assert!(CartanDatum::new(Series::E, 9).is_err());
        assert!(CartanDatum::new(Series::F, 3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = CartanDatum::new(Series::D, 5).unwrap();
        let s = d.to_json();
        assert_eq!(CartanDatum::from_json(&s).unwrap(), d);
        let flipped: BTreeSet<_> = d.orientation().iter().map(|&(a, b)| (b, a)).collect();
        let e = CartanDatum::with_orientation(Series::D, 5, flipped).unwrap();
        assert_eq!(CartanDatum::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn content_counts_letters() {
        let d = CartanDatum::new(Series::B, 2).unwrap();
        let c = d.content(&[0, 1, 0]).unwrap();
        assert_eq!(c, RootVector(vec![2, 1]));
        assert_eq!(c.height(), 3);
        assert!(d.content(&[]).unwrap().is_zero());
        assert!(d.content(&[2]).is_err());
    }
}
