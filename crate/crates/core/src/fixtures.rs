//! Reference tables shipped as JSON data files, and row-level diffs of
//! computed tables against them.
//!
//! A fixture row may carry `"disputed": true` with a `"note"`; disputed rows
//! still appear in a diff but do not count as failures.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chars::{equivalence_classes, geometric_lemma_exponents};
use crate::constant_term::SpectrumReport;
use crate::error::{Error, Result};
use crate::hecke::images::ImageRow;
use crate::rootsys::{ParabolicIndex, Weight};
use crate::scalars::rat::{fmt_rat, parse_rat, Rat};
use crate::weyl::{parse_word, WeylGroup};
use crate::zeta_gk::{gk_product, order_at, AffineForm, ZetaProduct};

/// Identifiers of the bundled table fixtures, in verification order.
pub const TABLE_IDS: [&str; 6] = ["D.1", "D.2", "D.3", "D.4", "E.1", "E.2"];
/// Identifier of the bundled image-rank facts for `P_3`.
pub const P3_FACTS_ID: &str = "P3";

const BUNDLED: [(&str, &str); 7] = [
    ("D.1", include_str!("../fixtures/D.1.json")),
    ("D.2", include_str!("../fixtures/D.2.json")),
    ("D.3", include_str!("../fixtures/D.3.json")),
    ("D.4", include_str!("../fixtures/D.4.json")),
    ("E.1", include_str!("../fixtures/E.1.json")),
    ("E.2", include_str!("../fixtures/E.2.json")),
    ("P3", include_str!("../fixtures/P3.json")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureKind {
    /// Exponent multisets of a Jacquet module.
    Jacquet,
    /// Image ranks of the operators `N_w(z0)`.
    Images,
    /// Gindikin–Karpelevich factors, orders and class labels.
    Gk,
}

/// One table row; fields not used by the table's kind are absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    pub exp: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Operator type column (informational).
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub op_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Vec<String>>,
    /// Class label, given on the first listed member of a class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub disputed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FixtureRow {
    fn empty(exp: Vec<i64>) -> Self {
        FixtureRow {
            word: None,
            exp,
            mult: None,
            rank: None,
            op_type: None,
            order: None,
            num: None,
            den: None,
            label: None,
            disputed: false,
            note: None,
        }
    }
}

/// A reference table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub kind: FixtureKind,
    pub parabolic: usize,
    pub z0: String,
    pub rows: Vec<FixtureRow>,
}

impl Fixture {
    pub fn parse(id: &str, text: &str) -> Result<Fixture> {
        let f: Fixture = serde_json::from_str(text).map_err(|e| Error::Fixture(format!("{id}: {e}")))?;
        if f.id != id {
            return Err(Error::Fixture(format!("{id}: file declares id {}", f.id)));
        }
        f.z0_rat()?;
        ParabolicIndex::new(f.parabolic, 4).map_err(|e| Error::Fixture(format!("{id}: {e}")))?;
        Ok(f)
    }

    pub fn z0_rat(&self) -> Result<Rat> {
        parse_rat(&self.z0).map_err(|e| Error::Fixture(format!("{}: {e}", self.id)))
    }

    pub fn parabolic_index(&self) -> ParabolicIndex {
        ParabolicIndex { i: self.parabolic }
    }

    /// Sorted-key JSON with one-space indentation (the shipped layout).
    pub fn to_json(&self) -> String {
        to_sorted_json(self)
    }
}

/// Kernel dimensions of a chain of operators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelChainFacts {
    pub words: Vec<String>,
    pub dims: Vec<usize>,
    pub ambient: usize,
}

/// Words sharing a stated image rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRankFacts {
    pub words: Vec<String>,
    pub rank: usize,
}

/// Image-rank facts at `P_3` (no full table is tabulated there).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P3Facts {
    pub id: String,
    pub kind: String,
    pub parabolic: usize,
    pub z0: String,
    /// Every image rank lies in this set.
    pub rank_set: Vec<usize>,
    pub antidominant_rank: usize,
    pub class_ranks: Vec<ClassRankFacts>,
    pub kernel_chain: KernelChainFacts,
    /// Iwahori-fixed dimensions of the constituents, summing to the ambient.
    pub constituents: Vec<usize>,
}

impl P3Facts {
    pub fn parse(text: &str) -> Result<P3Facts> {
        let f: P3Facts = serde_json::from_str(text).map_err(|e| Error::Fixture(format!("{P3_FACTS_ID}: {e}")))?;
        if f.id != P3_FACTS_ID || f.kind != "facts" {
            return Err(Error::Fixture(format!("{P3_FACTS_ID}: unexpected id/kind {}/{}", f.id, f.kind)));
        }
        parse_rat(&f.z0).map_err(|e| Error::Fixture(format!("{P3_FACTS_ID}: {e}")))?;
        Ok(f)
    }

    pub fn z0_rat(&self) -> Rat {
        parse_rat(&self.z0).expect("validated on parse")
    }
}

/// Raw fixture texts, bundled or read from a directory.
#[derive(Clone, Debug)]
pub struct FixtureSource {
    texts: BTreeMap<String, std::result::Result<String, String>>,
}

impl FixtureSource {
    pub fn bundled() -> Self {
        FixtureSource { texts: BUNDLED.iter().map(|(id, t)| (id.to_string(), Ok(t.to_string()))).collect() }
    }

    /// Read `<id>.json` for every known id from `dir`; unreadable files are
    /// reported when the fixture is requested.
    pub fn from_dir(dir: &Path) -> Self {
        let texts = BUNDLED
            .iter()
            .map(|(id, _)| {
                let path = dir.join(format!("{id}.json"));
                (id.to_string(), std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display())))
            })
            .collect();
        FixtureSource { texts }
    }

    fn text(&self, id: &str) -> Result<&str> {
        match self.texts.get(id) {
            Some(Ok(t)) => Ok(t),
            Some(Err(e)) => Err(Error::Fixture(format!("{id}: {e}"))),
            None => Err(Error::Fixture(format!("{id}: unknown fixture"))),
        }
    }

    pub fn table(&self, id: &str) -> Result<Fixture> {
        Fixture::parse(id, self.text(id)?)
    }

    pub fn p3_facts(&self) -> Result<P3Facts> {
        P3Facts::parse(self.text(P3_FACTS_ID)?)
    }

    /// The table fixture for `(kind, parabolic, z0)`, if one is shipped.
    pub fn find(&self, kind: FixtureKind, p: ParabolicIndex, z0: &Rat) -> Result<Option<Fixture>> {
        for id in TABLE_IDS {
            let f = self.table(id)?;
            if f.kind == kind && f.parabolic == p.i && &f.z0_rat()? == z0 {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }
}

/// Serialise with sorted object keys and one-space indentation.
pub fn to_sorted_json<T: Serialize>(v: &T) -> String {
    // serde_json::Value maps are BTreeMaps, so keys come out sorted
    let value = serde_json::to_value(v).expect("serialisable");
    let mut out = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(b" ");
    let mut ser = serde_json::Serializer::with_formatter(&mut out, fmt);
    value.serialize(&mut ser).expect("in-memory write");
    String::from_utf8(out).expect("utf-8") + "\n"
}

/// Outcome of comparing a fixture with a computed table.
#[derive(Clone, Debug, Serialize)]
pub struct Diff {
    pub id: String,
    /// Unified-style lines: `-` expected only, `+` computed only.
    pub lines: Vec<String>,
    pub failures: usize,
    pub disputed: usize,
}

impl Diff {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Unified diff text (empty when both sides agree).
    pub fn render(&self) -> String {
        if self.lines.is_empty() {
            return String::new();
        }
        let mut s = format!("--- fixture {}\n+++ computed\n", self.id);
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        s
    }
}

fn exp_key(v: &[i64]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn exp_key_str(v: &[String]) -> String {
    format!("[{}]", v.join(","))
}

/// One canonical line of a table, with the key identifying its row (the
/// exponent, word or class it describes).
struct Keyed {
    key: String,
    line: String,
}

fn keyed(key: impl Into<String>, line: impl Into<String>) -> Keyed {
    Keyed { key: key.into(), line: line.into() }
}

/// Compare expected and computed canonical lines as multisets.  A mismatch
/// is disputed when its row key belongs to a disputed fixture row; disputed
/// mismatches are reported but not counted as failures.
fn diff_lines(id: &str, expected: Vec<(Keyed, bool)>, computed: Vec<Keyed>) -> Diff {
    let disputed_keys: BTreeSet<String> = expected.iter().filter(|(_, d)| *d).map(|(k, _)| k.key.clone()).collect();
    let mut key_of: BTreeMap<String, String> = BTreeMap::new();
    let mut exp_count: BTreeMap<String, usize> = BTreeMap::new();
    for (k, _) in expected {
        *exp_count.entry(k.line.clone()).or_insert(0) += 1;
        key_of.insert(k.line, k.key);
    }
    let mut comp_count: BTreeMap<String, usize> = BTreeMap::new();
    for k in computed {
        *comp_count.entry(k.line.clone()).or_insert(0) += 1;
        key_of.entry(k.line).or_insert(k.key);
    }
    let all: BTreeSet<&String> = exp_count.keys().chain(comp_count.keys()).collect();
    let mut lines = vec![];
    let (mut failures, mut disputed) = (0, 0);
    for l in all {
        let e = exp_count.get(l).copied().unwrap_or(0);
        let c = comp_count.get(l).copied().unwrap_or(0);
        if e == c {
            continue;
        }
        let d = disputed_keys.contains(&key_of[l]);
        let tag = if d { " (disputed)" } else { "" };
        for _ in c..e {
            lines.push(format!("-{l}{tag}"));
        }
        for _ in e..c {
            lines.push(format!("+{l}{tag}"));
        }
        if d {
            disputed += 1;
        } else {
            failures += 1;
        }
    }
    Diff { id: id.to_string(), lines, failures, disputed }
}

/// Canonical rendering of a word: the canonical reduced word of its element.
fn canonical_word(g: &WeylGroup, word: &str) -> Result<String> {
    let w = parse_word(word)?;
    Ok(g.render(g.from_word(&w)?))
}

/// Computed Jacquet table in fixture form.
pub fn jacquet_rows(g: &WeylGroup, p: ParabolicIndex, z0: &Rat) -> Vec<FixtureRow> {
    geometric_lemma_exponents(g, p, z0)
        .0
        .iter()
        .map(|(w, &m)| {
            let mut r = FixtureRow::empty(integral(w));
            r.mult = Some(m);
            r
        })
        .collect()
}

fn integral(w: &Weight) -> Vec<i64> {
    w.to_ints().expect("exponents at the reducibility points are integral")
}

pub fn diff_jacquet(g: &WeylGroup, f: &Fixture) -> Result<Diff> {
    let z0 = f.z0_rat()?;
    let line = |r: &FixtureRow| keyed(exp_key(&r.exp), format!("{} mult={}", exp_key(&r.exp), r.mult.unwrap_or(0)));
    let expected = f.rows.iter().map(|r| (line(r), r.disputed)).collect();
    let computed = jacquet_rows(g, f.parabolic_index(), &z0).iter().map(line).collect();
    Ok(diff_lines(&f.id, expected, computed))
}

/// Image table rows in fixture form.
pub fn image_rows(table: &[ImageRow]) -> Vec<FixtureRow> {
    table
        .iter()
        .map(|r| {
            let exp = r.exp.iter().map(|x| x.parse::<i64>().expect("integral exponent")).collect();
            let mut row = FixtureRow::empty(exp);
            row.word = Some(r.word.clone());
            row.rank = Some(r.rank);
            row
        })
        .collect()
}

pub fn diff_images(g: &WeylGroup, f: &Fixture, table: &[ImageRow]) -> Result<Diff> {
    let expected = f
        .rows
        .iter()
        .map(|r| {
            let w = canonical_word(g, r.word.as_deref().unwrap_or(""))?;
            Ok((keyed(&w, format!("{w} {} rank={}", exp_key(&r.exp), r.rank.unwrap_or(0))), r.disputed))
        })
        .collect::<Result<_>>()?;
    let computed = table.iter().map(|r| keyed(&r.word, format!("{} {} rank={}", r.word, exp_key_str(&r.exp), r.rank))).collect();
    Ok(diff_lines(&f.id, expected, computed))
}

/// ASCII rendering of a form as used in fixture files (`z-3/2`).
pub fn ascii_form(f: &AffineForm) -> String {
    f.to_string().replace('−', "-")
}

/// GK rows (one per representative) in fixture form; labels come from a
/// report and are attached to the shortest member of each class.
pub fn gk_rows(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, report: Option<&SpectrumReport>) -> Result<Vec<FixtureRow>> {
    let chi = crate::chars::inducing_character(g, p);
    let labels: BTreeMap<Vec<String>, String> =
        report.map(|r| r.classes.iter().map(|c| (c.exponent.clone(), c.label.to_string())).collect()).unwrap_or_default();
    let mut out = vec![];
    for cls in equivalence_classes(g, p, z0) {
        for (k, &w) in cls.members.iter().enumerate() {
            let f = gk_product(g, p, w);
            let mut row = FixtureRow::empty(integral(&chi.act(g, w).eval(z0)));
            row.word = Some(g.render(w));
            row.order = Some(order_at(&f, z0)?);
            row.num = Some(f.num.iter().map(ascii_form).collect());
            row.den = Some(f.den.iter().map(ascii_form).collect());
            if k == 0 {
                row.label = labels.get(&cls.exponent.0.iter().map(fmt_rat).collect::<Vec<_>>()).cloned();
            }
            out.push(row);
        }
    }
    Ok(out)
}

fn gk_line(g: &WeylGroup, r: &FixtureRow) -> Result<Keyed> {
    let parse_all = |v: &Option<Vec<String>>| -> Result<Vec<AffineForm>> {
        v.as_deref().unwrap_or(&[]).iter().map(|s| AffineForm::parse(s)).collect()
    };
    let factor = ZetaProduct::from_forms(parse_all(&r.num)?, parse_all(&r.den)?);
    let w = canonical_word(g, r.word.as_deref().unwrap_or(""))?;
    let line = format!("{w} {} order={} C={factor}", exp_key(&r.exp), r.order.unwrap_or(0));
    Ok(keyed(w, line))
}

/// Diff factors, orders and exponents row by row, and class labels by
/// exponent (when a report is supplied).
pub fn diff_gk(g: &WeylGroup, f: &Fixture, report: Option<&SpectrumReport>) -> Result<Diff> {
    let z0 = f.z0_rat()?;
    let computed_rows = gk_rows(g, f.parabolic_index(), &z0, report)?;
    let mut expected = vec![];
    for r in &f.rows {
        expected.push((gk_line(g, r)?, r.disputed));
        if report.is_some() {
            if let Some(l) = &r.label {
                let class = format!("class {}", exp_key(&r.exp));
                expected.push((keyed(&class, format!("{class} label={l}")), r.disputed));
            }
        }
    }
    let mut computed = vec![];
    for r in &computed_rows {
        computed.push(gk_line(g, r)?);
    }
    if report.is_some() {
        // only classes that the fixture labels are compared
        let labelled: BTreeSet<Vec<i64>> = f.rows.iter().filter(|r| r.label.is_some()).map(|r| r.exp.clone()).collect();
        for r in &computed_rows {
            if let (Some(l), true) = (&r.label, labelled.contains(&r.exp)) {
                let class = format!("class {}", exp_key(&r.exp));
                computed.push(keyed(&class, format!("{class} label={l}")));
            }
        }
    }
    Ok(diff_lines(&f.id, expected, computed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_parse_and_round_trip() {
        let src = FixtureSource::bundled();
        for id in TABLE_IDS {
            let f = src.table(id).unwrap();
            let text = BUNDLED.iter().find(|(i, _)| *i == id).unwrap().1;
            assert_eq!(f.to_json(), text, "{id} is not in canonical layout");
        }
        let p3 = src.p3_facts().unwrap();
        assert_eq!(p3.constituents.iter().sum::<usize>(), p3.kernel_chain.ambient);
    }

    #[test]
    fn wrong_id_is_rejected() {
        let text = BUNDLED[0].1;
        assert!(matches!(Fixture::parse("D.3", text), Err(Error::Fixture(_))));
    }

    #[test]
    fn diff_counts_and_disputes() {
        let expected = vec![(keyed("1", "1 a"), false), (keyed("2", "2 b"), true), (keyed("3", "3 c"), false)];
        let computed = vec![keyed("1", "1 a"), keyed("2", "2 b'"), keyed("3", "3 c'")];
        let d = diff_lines("X", expected, computed);
        assert_eq!(d.failures, 2);
        assert_eq!(d.disputed, 2);
        assert_eq!(d.lines, vec!["-2 b (disputed)", "+2 b' (disputed)", "-3 c", "+3 c'"]);
        assert!(!d.passed());
        assert!(d.render().starts_with("--- fixture X"));
    }
}
