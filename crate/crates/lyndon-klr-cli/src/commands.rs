//! The subcommands. Each renders its whole output before printing it.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use lyndon_klr::bases::Bases;
use lyndon_klr::cartan::CartanDatum;
use lyndon_klr::error::AlgebraError;
use lyndon_klr::golden;
use lyndon_klr::klr_modules::cuspidal::{verify_cuspidal, CuspidalReport};
use lyndon_klr::klr_modules::io::{read_module, write_module};
use lyndon_klr::klr_modules::{character, GradedModule, ModuleBuilder};
use lyndon_klr::lyndon::LyndonTable;
use lyndon_klr::shuffle::{Order, ShuffleElement, Word};

use crate::cache::{digest, write_atomic, Payload, RootVectorEntry, TableCache};
use crate::{Cli, CliError, Command, Common, Format, Outcome, TypeArgs};

type Res = Result<Outcome, CliError>;

/// Output lines, printed in one go at the end.
struct Out {
    lines: Vec<String>,
    structured: bool,
}

impl Out {
    fn new(c: &Common) -> Self {
        Out { lines: Vec::new(), structured: c.format == Format::Structured }
    }

    fn text(&mut self, s: impl Into<String>) {
        if !self.structured {
            self.lines.push(s.into());
        }
    }

    fn record(&mut self, v: serde_json::Value) {
        if self.structured {
            self.lines.push(v.to_string());
        }
    }

    fn raw(&mut self, s: impl Into<String>) {
        if self.structured {
            self.lines.push(s.into());
        }
    }

    fn flush(self) {
        let mut text = self.lines.join("\n");
        if !text.is_empty() {
            text.push('\n');
        }
        print!("{text}");
    }
}

fn order(ty: &TypeArgs) -> Order {
    if ty.opposite {
        Order::Opposite
    } else {
        Order::Right
    }
}

fn datum(ty: &TypeArgs) -> Result<Arc<CartanDatum>, CliError> {
    Ok(Arc::new(CartanDatum::new(ty.series, ty.rank)?))
}

fn cache_key(ty: &TypeArgs) -> String {
    format!("{}{}-{}", ty.series.as_char(), ty.rank, order(ty).name())
}

fn table_cache(c: &Common) -> TableCache {
    if c.no_cache {
        TableCache::disabled()
    } else {
        TableCache::locate(c.cache_dir.clone())
    }
}

fn build_table(ty: &TypeArgs) -> Result<Arc<LyndonTable>, CliError> {
    Ok(Arc::new(LyndonTable::build(&datum(ty)?, order(ty))))
}

fn check_height(c: &Common, w: &Word) -> Result<(), CliError> {
    if w.len() > c.max_height {
        return Err(AlgebraError::ResourceCap { height: w.len(), cap: c.max_height }.into());
    }
    Ok(())
}

fn parse_word(d: &CartanDatum, s: &str) -> Result<Word, CliError> {
    let w: Word = s.parse()?;
    if w.is_empty() {
        return Err(AlgebraError::EmptyWord.into());
    }
    for &a in w.letters() {
        d.check_letter(a)?;
    }
    Ok(w)
}

/// Parses `"2.01"` into its dotted factors.
fn parse_factors(d: &CartanDatum, s: &str) -> Result<Vec<Word>, CliError> {
    s.split('.').map(|f| parse_word(d, f)).collect()
}

pub fn run(cli: &Cli) -> Res {
    let c = &cli.common;
    match &cli.command {
        Command::GoodLyndon { ty, check_paper } => good_lyndon(c, ty, *check_paper),
        Command::RootVector { ty, word } => root_vector(c, ty, word),
        Command::VerifyCuspidal { ty, word } => verify(c, ty, word.as_deref()),
        Command::StandardCharacter { ty, good_word } => standard(c, ty, good_word),
        Command::Shuffle { ty, left, right } => shuffle(c, ty, left, right),
        Command::ExportModule { ty, word, good_word, out } => {
            export(c, ty, word.as_deref(), good_word.as_deref(), out)
        }
        Command::VerifyModule { file } => verify_module(c, file),
    }
}

/// The cached payload, or a fresh one that is then stored.
fn payload(c: &Common, ty: &TypeArgs) -> Result<(Payload, TableCache), CliError> {
    let cache = table_cache(c);
    let key = cache_key(ty);
    if let Some(p) = cache.load(&key) {
        return Ok((p, cache));
    }
    let p = Payload { key, table: build_table(ty)?.to_lines(), root_vectors: BTreeMap::new() };
    cache.store(&p)?;
    Ok((p, cache))
}

fn good_lyndon(c: &Common, ty: &TypeArgs, check_paper: bool) -> Res {
    let (p, _) = payload(c, ty)?;
    let mut out = Out::new(c);
    let mut by_height: BTreeMap<usize, Vec<(&str, &str)>> = BTreeMap::new();
    for line in &p.table {
        let (root, word) = line.split_once(' ').expect("table lines hold a root and a word");
        by_height.entry(word.len()).or_default().push((root, word));
    }
    out.text(format!("good Lyndon words of {}{} ({} order): {}", ty.series.as_char(), ty.rank, order(ty).name(), p.table.len()));
    for words in by_height.values_mut() {
        words.sort_by(|a, b| {
            let (x, y): (Word, Word) = (a.1.parse().expect("cached words parse"), b.1.parse().expect("cached words parse"));
            order(ty).cmp(&x.0, &y.0)
        });
    }
    for (h, words) in &by_height {
        let list: Vec<String> = words.iter().map(|(_, w)| format!("[{w}]")).collect();
        out.text(format!("height {h}: {}", list.join(" ")));
        for (root, word) in words {
            let root: Vec<u32> = root.split(',').map(|x| x.parse().expect("cached roots are numbers")).collect();
            out.record(json!({"kind": "good-lyndon", "height": h, "root": root, "word": word}));
        }
    }
    let mut outcome = Outcome::Ok;
    if check_paper {
        let table = build_table(ty)?;
        let diff = golden::check_table(&table)?;
        for line in diff.to_lines() {
            out.text(format!("  {line}"));
        }
        for e in &diff.missing {
            out.record(json!({"kind": "diff", "status": "missing", "source": e.source, "height": e.height, "word": e.word.compact()}));
        }
        for w in &diff.extra {
            out.record(json!({"kind": "diff", "status": "extra", "height": w.len(), "word": w.compact()}));
        }
        for e in &diff.quarantined {
            out.record(json!({"kind": "diff", "status": golden::DISCREPANCY, "source": e.source, "height": e.height, "word": e.word.compact()}));
        }
        let verdict = if diff.passed() { "pass" } else { "FAIL" };
        out.text(format!(
            "check-paper: {verdict} ({} reference words, {} missing, {} extra, {} quarantined)",
            diff.checked,
            diff.missing.len(),
            diff.extra.len(),
            diff.quarantined.len()
        ));
        out.record(json!({"kind": "check-paper", "pass": diff.passed(), "checked": diff.checked}));
        if !diff.passed() {
            outcome = Outcome::Failed;
        }
    }
    out.flush();
    Ok(outcome)
}

fn root_vector(c: &Common, ty: &TypeArgs, word: &str) -> Res {
    let d = datum(ty)?;
    let w = parse_word(&d, word)?;
    check_height(c, &w)?;
    let (mut p, cache) = payload(c, ty)?;
    let key = w.compact();
    let entry = match p.root_vectors.get(&key) {
        Some(e) => e.clone(),
        None => {
            let bases = Bases::new(build_table(ty)?);
            let (x, kappa): (ShuffleElement, _) = if bases.table().contains(&w) {
                (bases.dual_pbw_lyndon(&w)?, bases.kappa_lyndon(&w)?)
            } else {
                (bases.dual_pbw(&w)?, bases.kappa_g(&w)?)
            };
            let e = RootVectorEntry { text: x.to_string(), records: x.to_records(), kappa: kappa.to_string() };
            p.root_vectors.insert(key.clone(), e.clone());
            cache.store(&p)?;
            e
        }
    };
    let lyndon = p.table.iter().any(|l| l.ends_with(&format!(" {key}")));
    let name = if lyndon { "b*" } else { "E*" };
    let mut out = Out::new(c);
    out.text(format!("{name}[{key}] = {}", entry.text));
    out.text(format!("kappa = {}", entry.kappa));
    out.record(json!({"kind": "root-vector", "word": key, "basis": name, "kappa": entry.kappa}));
    for r in &entry.records {
        out.raw(r.clone());
    }
    out.flush();
    Ok(Outcome::Ok)
}

fn report_lines(out: &mut Out, rep: &CuspidalReport) {
    let dim = rep.dim.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
    let status = if rep.passed() { "PASS" } else { "FAIL" };
    let label = rep.label.as_deref().unwrap_or("characters only");
    out.text(format!("{status} [{}] dim {dim} {label}", rep.word));
    for f in rep.failures() {
        out.text(format!("  {}: {}", f.name, f.detail));
    }
    out.raw(rep.to_json());
}

fn verify(c: &Common, ty: &TypeArgs, word: Option<&str>) -> Res {
    let d = datum(ty)?;
    let bases = Arc::new(Bases::new(build_table(ty)?));
    let builder = ModuleBuilder::new(bases.clone());
    let words: Vec<Word> = match word {
        Some(s) => {
            let w = parse_word(&d, s)?;
            check_height(c, &w)?;
            vec![w]
        }
        None => {
            let mut ws: Vec<Word> = bases.table().entries().map(|(_, w)| w.clone()).filter(|w| w.len() <= c.max_height).collect();
            ws.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| order(ty).cmp(&a.0, &b.0)));
            ws
        }
    };
    // Shorter words first, so constructions that reuse them find them built.
    let mut by_height: BTreeMap<usize, Vec<&Word>> = BTreeMap::new();
    for w in &words {
        by_height.entry(w.len()).or_default().push(w);
    }
    let mut reports = Vec::new();
    for group in by_height.values() {
        let done: Vec<Result<CuspidalReport, AlgebraError>> =
            group.par_iter().map(|w| verify_cuspidal(&builder, w, c.max_height)).collect();
        for r in done {
            reports.push(r?);
        }
    }
    let mut out = Out::new(c);
    for rep in &reports {
        report_lines(&mut out, rep);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    out.text(format!(
        "{}{}: {} words checked, {} passed, {failed} failed",
        ty.series.as_char(),
        ty.rank,
        reports.len(),
        reports.len() - failed
    ));
    out.record(json!({"kind": "summary", "checked": reports.len(), "failed": failed}));
    out.flush();
    Ok(if failed == 0 { Outcome::Ok } else { Outcome::Failed })
}

/// The standard module of the dotted good word, after checking that the
/// dots mark its canonical factorization.
fn standard_of(builder: &ModuleBuilder, c: &Common, dotted: &str) -> Result<(Word, GradedModule), CliError> {
    let d = builder.datum().clone();
    let factors = parse_factors(&d, dotted)?;
    let g = factors.iter().fold(Word::empty(), |acc, f| acc.concat(f));
    check_height(c, &g)?;
    let table = builder.bases().table();
    for f in &factors {
        if !table.contains(f) {
            return Err(AlgebraError::NotGood(format!("{f} (not a good Lyndon word)")).into());
        }
    }
    let canonical = table.good_factors(&g)?;
    if canonical != factors {
        let dots: Vec<String> = canonical.iter().map(|f| f.compact()).collect();
        return Err(CliError::Usage(format!("the canonical factorization of {g} is {}", dots.join("."))));
    }
    Ok((g.clone(), builder.standard_module(&g)?))
}

fn standard(c: &Common, ty: &TypeArgs, dotted: &str) -> Res {
    let bases = Arc::new(Bases::new(build_table(ty)?));
    let builder = ModuleBuilder::new(bases.clone());
    let (g, m) = standard_of(&builder, c, dotted)?;
    let ch = character(&m);
    let e = bases.dual_pbw(&g)?;
    let kappa = bases.kappa_g(&g)?;
    let top = m.weight_dim(g.letters());
    let pass = ch == e && top == kappa;
    let mut out = Out::new(c);
    out.text(format!("{}: dim {}", m.label, m.dim()));
    out.text(format!("ch = {ch}"));
    out.text(format!("E* = {e}"));
    out.text(format!("dim_q at {g} = {top}, kappa = {kappa}"));
    out.text(format!("character: {}", if pass { "pass" } else { "FAIL" }));
    out.record(json!({
        "kind": "standard-character",
        "good_word": dotted,
        "dim": m.dim(),
        "kappa": kappa.to_string(),
        "weight_dim": top.to_string(),
        "pass": pass,
    }));
    for r in ch.to_records() {
        out.raw(r);
    }
    out.flush();
    Ok(if pass { Outcome::Ok } else { Outcome::Failed })
}

fn shuffle(c: &Common, ty: &TypeArgs, left: &str, right: &str) -> Res {
    let d = datum(ty)?;
    let (u, v) = (parse_word(&d, left)?, parse_word(&d, right)?);
    check_height(c, &u.concat(&v))?;
    let x = ShuffleElement::word(&d, u).shuffle(&ShuffleElement::word(&d, v))?;
    let mut out = Out::new(c);
    out.text(x.to_string());
    for r in x.to_records() {
        out.raw(r);
    }
    out.flush();
    Ok(Outcome::Ok)
}

fn export(c: &Common, ty: &TypeArgs, word: Option<&str>, dotted: Option<&str>, path: &std::path::Path) -> Res {
    let bases = Arc::new(Bases::new(build_table(ty)?));
    let builder = ModuleBuilder::new(bases);
    let m = match (word, dotted) {
        (Some(s), _) => {
            let w = parse_word(builder.datum(), s)?;
            check_height(c, &w)?;
            builder.cuspidal(&w)?
        }
        (None, Some(s)) => standard_of(&builder, c, s)?.1,
        (None, None) => return Err(CliError::Usage("one of --word or --good-word is needed".into())),
    };
    let text = write_module(&m);
    write_atomic(path, text.as_bytes())?;
    let hash = digest(text.as_bytes());
    let mut out = Out::new(c);
    out.text(format!("wrote {}: {}, dim {}, sha256 {hash}", path.display(), m.label, m.dim()));
    out.record(json!({"kind": "export", "path": path.display().to_string(), "label": m.label, "dim": m.dim(), "sha256": hash}));
    out.flush();
    Ok(Outcome::Ok)
}

fn verify_module(c: &Common, file: &std::path::Path) -> Res {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
    let m = read_module(&text)?;
    let rep = m.relations()?;
    let mut out = Out::new(c);
    for f in rep.failures() {
        out.text(format!("  {}", f.to_json()));
    }
    for line in rep.to_lines() {
        out.raw(line);
    }
    let failed = rep.failures().count();
    let weight = m.nu().0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    out.text(format!(
        "{}: {} over nu = ({weight}), dim {}, {} relation instances, {failed} failed",
        file.display(),
        m.label,
        m.dim(),
        rep.records.len()
    ));
    out.record(json!({"kind": "summary", "label": m.label, "dim": m.dim(), "checked": rep.records.len(), "failed": failed}));
    out.flush();
    Ok(if rep.passed() { Outcome::Ok } else { Outcome::Failed })
}
