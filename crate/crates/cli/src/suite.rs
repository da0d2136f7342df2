//! The `check` verification suites. Each applicable property runs with the
//! trivial connection and with a random one drawn from a per-document RNG
//! seeded by `--seed`, so results do not depend on which other files are checked.

use std::fmt::Write as _;

use clap::ValueEnum;
use mfchern::chern::{
    atiyah, cone_additivity_check, functoriality_check, phi_strictness_check, phi_tilde_n,
    phi_tower_oracle, supertrace, tensor_multiplicativity_check, ChernError, Connection, Verdict,
    MAX_TOWER_VARS,
};
use mfchern::exterior::{print_form, Form};
use mfchern::mf::{folding_compatibility_defect, homotopy_defect, MatFac, StrictMorphism};
use mfchern::random;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::doc::Document;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Strictness,
    Cycle,
    Odd,
    Additivity,
    Multiplicativity,
    Functoriality,
    Tower,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

pub enum Line {
    Pass,
    Fail(String),
    Skip(String),
}

pub struct Report {
    pub lines: Vec<(String, Line)>,
}

impl Report {
    fn verdict(&mut self, property: &str, v: Result<Verdict, ChernError>) {
        let line = match v {
            Ok(Verdict::Pass) => Line::Pass,
            Ok(Verdict::Fail(why)) => Line::Fail(why),
            Err(e) => Line::Fail(format!("error: {e}")),
        };
        self.lines.push((property.to_string(), line));
    }

    pub fn failed(&self) -> bool {
        self.lines.iter().any(|(_, l)| matches!(l, Line::Fail(_)))
    }

    pub fn render(&self, name: &str, out: &mut String) {
        for (property, line) in &self.lines {
            let _ = match line {
                Line::Pass => writeln!(out, "{name}: {property}: pass"),
                Line::Fail(why) => writeln!(out, "{name}: {property}: FAIL: {why}"),
                Line::Skip(why) => writeln!(out, "{name}: {property}: skip ({why})"),
            };
        }
    }
}

fn connections(rng: &mut ChaCha8Rng, m: &MatFac) -> [(&'static str, Connection); 2] {
    [
        ("trivial", Connection::trivial(m)),
        ("random", random::connection(rng, m)),
    ]
}

fn supertrace_property(
    m: &MatFac,
    conn: &Connection,
    odd_only: bool,
) -> Result<Verdict, ChernError> {
    let at = atiyah(m, conn)?;
    let df = Form::differential(m.potential());
    for i in 0..=m.nvars() {
        let s = supertrace(&at.power(i))?;
        if odd_only {
            if i % 2 == 1 && !s.is_zero() {
                return Ok(Verdict::Fail(format!(
                    "str(At^{i}) = {}",
                    print_form(&s, m.ctx())
                )));
            }
        } else if !df.wedge(&s).is_zero() {
            return Ok(Verdict::Fail(format!("df ^ str(At^{i}) != 0")));
        }
    }
    Ok(Verdict::Pass)
}

fn tower_property(m: &MatFac, conn: &Connection) -> Result<Verdict, ChernError> {
    let t = phi_tower_oracle(m, conn)?;
    Ok(if t.rescaled == phi_tilde_n(m, conn)? {
        Verdict::Pass
    } else {
        Verdict::Fail("rescaled tower differs from sum of At^i/i!".into())
    })
}

fn check_matfac(m: &MatFac, suite: Suite, rng: &mut ChaCha8Rng, r: &mut Report) {
    for (label, conn) in connections(rng, m) {
        if suite.includes(Suite::Strictness) {
            r.verdict(
                &format!("strictness [{label}]"),
                phi_strictness_check(m, &conn),
            );
        }
        if suite.includes(Suite::Odd) {
            r.verdict(
                &format!("odd [{label}]"),
                supertrace_property(m, &conn, true),
            );
        }
        if suite.includes(Suite::Cycle) {
            r.verdict(
                &format!("cycle [{label}]"),
                supertrace_property(m, &conn, false),
            );
        }
        if suite.includes(Suite::Tower) {
            if m.nvars() > MAX_TOWER_VARS {
                let why = format!(
                    "{} variables, oracle limited to {MAX_TOWER_VARS}",
                    m.nvars()
                );
                r.lines.push((format!("tower [{label}]"), Line::Skip(why)));
            } else {
                r.verdict(&format!("tower [{label}]"), tower_property(m, &conn));
            }
        }
        if suite.includes(Suite::Functoriality) {
            let phi = random::linear_automorphism(rng, m.ctx());
            r.verdict(
                &format!("functoriality [{label}]"),
                functoriality_check(m, &conn, &phi),
            );
        }
    }
    if suite.includes(Suite::Additivity) {
        check_morphism(&m.identity_morphism(), rng, r, "additivity of identity");
        let zero = m.zero_morphism(m).expect("same potential");
        check_morphism(&zero, rng, r, "additivity of zero");
    }
    if suite.includes(Suite::Multiplicativity) {
        let unit = MatFac::unit(m.ctx().clone());
        check_pair(m, &unit, rng, r, "multiplicativity with unit");
    }
}

fn check_morphism(theta: &StrictMorphism, rng: &mut ChaCha8Rng, r: &mut Report, property: &str) {
    let (s, t) = (theta.source(), theta.target());
    let trivial = cone_additivity_check(theta, &Connection::trivial(s), &Connection::trivial(t));
    r.verdict(&format!("{property} [trivial]"), trivial);
    let (cs, ct) = (random::connection(rng, s), random::connection(rng, t));
    r.verdict(
        &format!("{property} [random]"),
        cone_additivity_check(theta, &cs, &ct),
    );
}

fn check_pair(e: &MatFac, f: &MatFac, rng: &mut ChaCha8Rng, r: &mut Report, property: &str) {
    let trivial =
        tensor_multiplicativity_check(e, &Connection::trivial(e), f, &Connection::trivial(f));
    r.verdict(&format!("{property} [trivial]"), trivial);
    let (ce, cf) = (random::connection(rng, e), random::connection(rng, f));
    r.verdict(
        &format!("{property} [random]"),
        tensor_multiplicativity_check(e, &ce, f, &cf),
    );
}

/// Runs every property of `suite` that applies to the document.
pub fn check(doc: &Document, suite: Suite, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report { lines: Vec::new() };
    match doc {
        Document::MatFac(m) => check_matfac(m, suite, &mut rng, &mut r),
        Document::Morphism(theta) => {
            if suite.includes(Suite::Additivity) {
                check_morphism(theta, &mut rng, &mut r, "additivity");
            }
        }
        Document::Pair(e, f) => {
            if suite.includes(Suite::Multiplicativity) {
                check_pair(e, f, &mut rng, &mut r, "multiplicativity");
            }
        }
        Document::Homotopy { h, alpha, beta } => {
            if suite == Suite::All {
                let line = match homotopy_defect(h, alpha, beta) {
                    Ok(None) => Line::Pass,
                    Ok(Some(m)) => Line::Fail(m.to_string()),
                    Err(e) => Line::Fail(format!("error: {e}")),
                };
                r.lines.push(("homotopy".into(), line));
            }
        }
        Document::Complex(c) => {
            if suite.includes(Suite::Multiplicativity) {
                let line = match folding_compatibility_defect(c, c) {
                    Ok(None) => Line::Pass,
                    Ok(Some(m)) => Line::Fail(m.to_string()),
                    Err(e) => Line::Fail(format!("error: {e}")),
                };
                r.lines.push(("folding of self-tensor".into(), line));
            }
        }
        Document::RingMap(_) => {}
    }
    if r.lines.is_empty() {
        let why = format!(
            "suite {} has nothing for a {} document",
            format!("{suite:?}").to_lowercase(),
            doc.kind()
        );
        r.lines.push(("-".into(), Line::Skip(why)));
    }
    r
}
