//! Transcribed reference tables of good Lyndon words, and closed forms for
//! the classical types.
//!
//! Each data line reads `source series rank height word flag`, tab separated.
//! A flag of `paper-table-discrepancy` quarantines an entry that the
//! computation contradicts: it is reported but never counted as a failure.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::Serialize;

use crate::cartan::{Letter, Series};
use crate::error::AlgebraError;
use crate::lyndon::LyndonTable;
use crate::shuffle::Word;

pub const DISCREPANCY: &str = "paper-table-discrepancy";

const FILES: [(&str, &str); 4] = [
    ("f4_good_lyndon.tsv", include_str!("../data/golden/f4_good_lyndon.tsv")),
    ("g2_good_lyndon.tsv", include_str!("../data/golden/g2_good_lyndon.tsv")),
    ("e8_listed.tsv", include_str!("../data/golden/e8_listed.tsv")),
    ("e8_full_table.tsv", include_str!("../data/golden/e8_full_table.tsv")),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenEntry {
    pub source: String,
    pub series: Series,
    pub rank: usize,
    pub height: usize,
    pub word: Word,
    pub discrepancy: bool,
}

fn parse_line(file: &str, n: usize, line: &str) -> Result<GoldenEntry, AlgebraError> {
    let err = |what: &str| AlgebraError::Parse(format!("{file}:{}: {what}", n + 1));
    let f: Vec<&str> = line.split('\t').collect();
    if f.len() != 6 {
        return Err(err("expected six fields"));
    }
    let discrepancy = match f[5] {
        "-" => false,
        DISCREPANCY => true,
        _ => return Err(err("unknown flag")),
    };
    Ok(GoldenEntry {
        source: f[0].to_string(),
        series: Series::from_str(f[1])?,
        rank: f[2].parse().map_err(|_| err("bad rank"))?,
        height: f[3].parse().map_err(|_| err("bad height"))?,
        word: f[4].parse()?,
        discrepancy,
    })
}

/// Every entry of the embedded corpus.
pub fn corpus() -> Result<Vec<GoldenEntry>, AlgebraError> {
    let mut out = Vec::new();
    for (file, text) in FILES {
        for (n, line) in text.lines().enumerate() {
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            out.push(parse_line(file, n, line)?);
        }
    }
    Ok(out)
}

pub fn entries(series: Series, rank: usize) -> Result<Vec<GoldenEntry>, AlgebraError> {
    Ok(corpus()?.into_iter().filter(|e| e.series == series && e.rank == rank).collect())
}

fn run(a: usize, b: usize) -> Vec<Letter> {
    if a <= b {
        (a..=b).map(|x| x as Letter).collect()
    } else {
        (b..=a).rev().map(|x| x as Letter).collect()
    }
}

/// The closed-form good Lyndon words of a classical type. The type D family
/// `[0,2,..,i]` is taken to include `[0]` itself.
pub fn classical_closed_form(series: Series, r: usize) -> Option<BTreeSet<Word>> {
    let mut out = BTreeSet::new();
    let intervals = |from: usize, out: &mut BTreeSet<Word>| {
        for i in from..r {
            for j in i..r {
                out.insert(Word::new(run(i, j)));
            }
        }
    };
    match series {
        Series::A => intervals(0, &mut out),
        Series::B => {
            intervals(0, &mut out);
            for k in 1..r {
                for j in 0..k {
                    out.insert(Word::new([run(j, 0), run(0, k)].concat()));
                }
            }
        }
        Series::C => {
            intervals(0, &mut out);
            for k in 2..r {
                for j in 1..k {
                    out.insert(Word::new([run(j, 0), run(1, k)].concat()));
                }
            }
            for j in 1..r {
                out.insert(Word::new([run(0, j), run(1, j)].concat()));
            }
        }
        Series::D => {
            intervals(1, &mut out);
            out.insert(Word::new(vec![0]));
            for i in 2..r {
                out.insert(Word::new([vec![0], run(2, i)].concat()));
            }
            for k in 2..r {
                for j in 1..k {
                    out.insert(Word::new([run(j, 0), run(2, k)].concat()));
                }
            }
        }
        _ => return None,
    }
    Some(out)
}

/// The comparison of a computed table with the reference words.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TableDiff {
    /// Reference words absent from the table.
    pub missing: Vec<GoldenEntry>,
    /// Table words absent from a reference that claims to be complete.
    pub extra: Vec<Word>,
    /// Quarantined reference entries.
    pub quarantined: Vec<GoldenEntry>,
    pub checked: usize,
}

impl TableDiff {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }

    pub fn to_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.missing {
            out.push(format!("missing\t{}\t{}\t{}", e.source, e.height, e.word.compact()));
        }
        for w in &self.extra {
            out.push(format!("extra\t-\t{}\t{}", w.len(), w.compact()));
        }
        for e in &self.quarantined {
            out.push(format!("{DISCREPANCY}\t{}\t{}\t{}", e.source, e.height, e.word.compact()));
        }
        out
    }
}

/// Compares `table` with the closed form (classical types) or the embedded
/// reference entries. Extra words count against complete references only,
/// which are the closed forms and the tables without quarantined entries.
pub fn check_table(table: &LyndonTable) -> Result<TableDiff, AlgebraError> {
    let d = table.datum();
    let words: BTreeSet<Word> = table.entries().map(|(_, w)| w.clone()).collect();
    let mut diff = TableDiff::default();
    if let Some(closed) = classical_closed_form(d.series(), d.rank()) {
        diff.checked = closed.len();
        for w in &closed {
            if !words.contains(w) {
                let e = GoldenEntry {
                    source: "closed-form".into(),
                    series: d.series(),
                    rank: d.rank(),
                    height: w.len(),
                    word: w.clone(),
                    discrepancy: false,
                };
                diff.missing.push(e);
            }
        }
        diff.extra = words.difference(&closed).cloned().collect();
        return Ok(diff);
    }
    let refs = entries(d.series(), d.rank())?;
    let complete = !refs.is_empty() && refs.iter().all(|e| !e.discrepancy);
    let listed: BTreeSet<&Word> = refs.iter().map(|e| &e.word).collect();
    for e in refs.iter() {
        diff.checked += 1;
        if e.discrepancy {
            diff.quarantined.push(e.clone());
        } else if !words.contains(&e.word) || table.root_of(&e.word).map(|b| b.height()) != Some(e.height) {
            diff.missing.push(e.clone());
        }
    }
    if complete {
        diff.extra = words.iter().filter(|w| !listed.contains(w)).cloned().collect();
    }
    Ok(diff)
}
