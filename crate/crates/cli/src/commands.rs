//! Subcommand implementations.

use std::process::ExitCode;

use f4_core::chars::geometric_lemma_exponents;
use f4_core::constant_term::{spectrum_report, ReportOptions, SpectrumReport};
use f4_core::fixtures::{
    diff_gk, diff_images, diff_jacquet, gk_rows, image_rows, jacquet_rows, to_sorted_json, Diff, Fixture, FixtureKind,
    FixtureRow, FixtureSource,
};
use f4_core::hecke::images::{image_rank, image_table, shortest_antidominant, ImageRow};
use f4_core::rootsys::ParabolicIndex;
use f4_core::scalars::rat::fmt_rat;
use f4_core::verify::{Check, Verifier};
use f4_core::weyl::{parse_word, WeylGroup};
use f4_core::zeta_gk::class_sum_laurent;
use f4_core::{Error, Result};

use crate::output::Table;
use crate::{Format, Point};

fn parabolic(point: &Point) -> ParabolicIndex {
    ParabolicIndex { i: point.parabolic as usize }
}

fn exp_cell(v: &[i64]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// The computed table wrapped in the fixture schema.
fn as_fixture(src: &FixtureSource, kind: FixtureKind, point: &Point, rows: Vec<FixtureRow>) -> Result<Fixture> {
    let p = parabolic(point);
    let id = match src.find(kind, p, &point.z) {
        Ok(Some(f)) => f.id,
        _ => format!("P{}@{}", p.i, fmt_rat(&point.z)),
    };
    Ok(Fixture { id, kind, parabolic: p.i, z0: fmt_rat(&point.z), rows })
}

fn required_fixture(src: &FixtureSource, kind: FixtureKind, point: &Point) -> Result<Fixture> {
    src.find(kind, parabolic(point), &point.z)?.ok_or_else(|| {
        Error::InvalidInput(format!("no {kind:?} fixture for P{} at z0 = {}", point.parabolic, fmt_rat(&point.z)))
    })
}

/// Report a diff on stderr and turn it into an exit code.
fn verdict(diff: &Diff) -> ExitCode {
    if diff.passed() {
        let disputed = if diff.disputed > 0 { format!(" ({} disputed rows differ)", diff.disputed) } else { String::new() };
        eprintln!("verify {}: ok{disputed}", diff.id);
        eprint!("{}", diff.render());
        ExitCode::SUCCESS
    } else {
        eprintln!("verify {}: {} mismatching rows", diff.id, diff.failures);
        eprint!("{}", diff.render());
        ExitCode::from(1)
    }
}

fn emit(format: Format, json: impl FnOnce() -> String, table: &Table, preamble: &str) {
    if format.json {
        print!("{}", json());
    } else if format.csv {
        print!("{}", table.csv());
    } else {
        print!("{preamble}{}", table.text());
    }
}

pub fn jacquet(src: &FixtureSource, point: &Point, format: Format, verify: bool) -> Result<ExitCode> {
    let g = WeylGroup::f4();
    let p = parabolic(point);
    let m = geometric_lemma_exponents(&g, p, &point.z);
    if m.0.keys().any(|w| w.to_ints().is_none()) {
        return Err(Error::InvalidInput(format!("exponents are not integral at z0 = {}", fmt_rat(&point.z))));
    }
    let rows = jacquet_rows(&g, p, &point.z);
    let mut table = Table::new(vec!["exp", "mult"]);
    for r in &rows {
        table.push(vec![exp_cell(&r.exp), r.mult.unwrap_or(0).to_string()]);
    }
    let preamble = format!(
        "Jacquet module of i(P{}, z0 = {}): {} exponents, total multiplicity {}\n",
        p.i,
        fmt_rat(&point.z),
        m.0.len(),
        m.total()
    );
    let fixture = as_fixture(src, FixtureKind::Jacquet, point, rows)?;
    emit(format, || fixture.to_json(), &table, &preamble);
    if verify {
        let f = required_fixture(src, FixtureKind::Jacquet, point)?;
        return Ok(verdict(&diff_jacquet(&g, &f)?));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn images(src: &FixtureSource, point: &Point, format: Format, word: Option<&str>, verify: bool) -> Result<ExitCode> {
    let g = WeylGroup::f4();
    let p = parabolic(point);
    let rows: Vec<ImageRow> = match word {
        Some(wd) => {
            let x = g.from_word(&parse_word(wd)?)?;
            let r = image_rank(&g, p, &point.z, g.word(x))?;
            vec![ImageRow { word: g.render(x), exp: r.exponent.0.iter().map(fmt_rat).collect(), rank: r.rank }]
        }
        None => image_table(&g, p, &point.z)?,
    };
    let mut table = Table::new(vec!["word", "exp", "rank"]);
    for r in &rows {
        let w = if r.word.is_empty() { "1".to_string() } else { r.word.clone() };
        table.push(vec![w, format!("[{}]", r.exp.join(",")), r.rank.to_string()]);
    }
    let fixture = as_fixture(src, FixtureKind::Images, point, image_rows(&rows))?;
    let preamble = format!("Image ranks of N_w(z0) on H_P, P{} at z0 = {}\n", p.i, fmt_rat(&point.z));
    emit(format, || fixture.to_json(), &table, &preamble);
    if !verify {
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(mut f) = src.find(FixtureKind::Images, p, &point.z)? {
        if word.is_some() {
            let keep = &rows[0].word;
            f.rows.retain(|r| {
                let x = parse_word(r.word.as_deref().unwrap_or("")).and_then(|w| g.from_word(&w));
                x.map(|x| &g.render(x) == keep).unwrap_or(false)
            });
        }
        return Ok(verdict(&diff_images(&g, &f, &rows)?));
    }
    let facts = src.p3_facts()?;
    if facts.parabolic != p.i || facts.z0_rat() != point.z {
        return Err(Error::InvalidInput(format!("no image fixture for P{} at z0 = {}", p.i, fmt_rat(&point.z))));
    }
    let mut failures = vec![];
    for r in &rows {
        if !facts.rank_set.contains(&r.rank) {
            failures.push(format!("{}: rank {} not in {:?}", r.word, r.rank, facts.rank_set));
        }
    }
    let ad = g.render(shortest_antidominant(&g, p, &point.z));
    let lookup = |w: &str| -> Option<usize> { rows.iter().find(|r| r.word == w).map(|r| r.rank) };
    if let Some(r) = lookup(&ad) {
        if r != facts.antidominant_rank {
            failures.push(format!("anti-dominant {ad}: rank {r}, expected {}", facts.antidominant_rank));
        }
    }
    for c in &facts.class_ranks {
        for w in &c.words {
            let canon = g.render(g.from_word(&parse_word(w)?)?);
            if let Some(r) = lookup(&canon) {
                if r != c.rank {
                    failures.push(format!("{canon}: rank {r}, expected {}", c.rank));
                }
            }
        }
    }
    if failures.is_empty() {
        eprintln!("verify {}: ok", facts.id);
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("verify {}: {} failures", facts.id, failures.len());
        for f in failures {
            eprintln!("-{f}");
        }
        Ok(ExitCode::from(1))
    }
}

fn report_for(point: &Point) -> Result<SpectrumReport> {
    let g = WeylGroup::f4();
    let p = parabolic(point);
    let small = g.parabolic_reps(p).len() <= 24;
    spectrum_report(&g, p, &point.z, &ReportOptions { rank_all: small, ..Default::default() })
}

pub fn gk(src: &FixtureSource, point: &Point, format: Format, truncation: u32, verify: bool) -> Result<ExitCode> {
    let g = WeylGroup::f4();
    let p = parabolic(point);
    let report = report_for(point)?;
    let mut table = Table::new(vec!["class", "word", "factor", "order", "ratio", "label"]);
    let mut text = format!(
        "P{} at z0 = {}: order {} (spherical section {}), dims π1 = {}, π2 = {}, predicate {}, square-integrable {}\n",
        p.i,
        report.z0,
        report.order,
        report.spherical_order,
        report.dims.pi1,
        report.dims.pi2.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
        report.sigma_predicate,
        report.square_integrable
    );
    for c in &report.classes {
        let class = format!("[{}]", c.exponent.join(","));
        text.push_str(&format!(
            "\nclass {class}  {}  rank {}  C-order {}  effective order {}{}\n",
            c.label,
            c.rank.map(|r| r.to_string()).unwrap_or_else(|| "-".into()),
            c.c_order,
            c.effective_order,
            if c.square_integrable { "  square-integrable" } else { "" }
        ));
        for m in &c.members {
            let word = if m.word.is_empty() { "1" } else { &m.word };
            let ratio = m.ratio.clone().unwrap_or_else(|| "-".into());
            text.push_str(&format!("  {word}  {}  order {}  ratio {ratio}\n", m.factor, m.order));
            table.push(vec![class.clone(), word.to_string(), m.factor.to_string(), m.order.to_string(), ratio, c.label.to_string()]);
        }
        if c.c_order > 0 {
            let ids: Vec<_> = c.members.iter().map(|m| parse_word(&m.word).and_then(|w| g.from_word(&w))).collect::<Result<_>>()?;
            let s = class_sum_laurent(&g, p, &point.z, &ids, truncation as usize)?;
            text.push_str(&format!("  Σ C_w = {s}\n"));
        }
        if !c.weights.is_empty() {
            text.push_str(&format!(
                "  heads {}  weights {}  scalars {}\n",
                c.heads.join(" "),
                c.weights.join(" "),
                c.scalars.join(" ")
            ));
        }
        for n in &c.notes {
            text.push_str(&format!("  note: {n}\n"));
        }
    }
    if format.json {
        let fixture = as_fixture(src, FixtureKind::Gk, point, gk_rows(&g, p, &point.z, Some(&report))?)?;
        print!("{}", fixture.to_json());
    } else if format.csv {
        print!("{}", table.csv());
    } else {
        print!("{text}");
    }
    if verify {
        let f = required_fixture(src, FixtureKind::Gk, point)?;
        return Ok(verdict(&diff_gk(&g, &f, Some(&report))?));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify_thesis(src: FixtureSource, only: Option<&str>, json: bool) -> Result<ExitCode> {
    let mut v = Verifier::new(src);
    let checks: Vec<Check> = v.run(only);
    let failed = checks.iter().filter(|c| !c.passed).count();
    if json {
        print!("{}", to_sorted_json(&checks));
    } else {
        for c in &checks {
            let tag = c.criterion.map(|n| format!("c{n}")).unwrap_or_else(|| "inv".into());
            let detail = c.detail.replace('\n', "\n      ");
            println!("{} {tag:<4} {:<13} {}: {detail}", if c.passed { "PASS" } else { "FAIL" }, c.module, c.name);
        }
        println!("{} of {} checks passed", checks.len() - failed, checks.len());
    }
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
