//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use klr::algebra::Klr;
use klr::cartan::{CartanDatum, Word};
use klr::character::Character;
use klr::degeneracy::{analyze_point, example_harness, membership_u_b, ExampleReport, Point, Verdict};
use klr::grothendieck::{crystal_coherence, verify_global_basis, GlobalBasisReport};
use klr::module::GradedModule;
use klr::params::{parse_assignments, ParamPoint};
use klr::simples::Simples;
use klr_exact::{Field, LaurentPoly, Rat, RatFunc, SparseMatrix};

mod common;
use common::{oracle_shuffle, words_of};

/// `[n]` with `d = 1`, written out by hand.
fn qint(n: i32) -> LaurentPoly {
    LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, 1)))
}

fn literal(datum: &CartanDatum, terms: &[(&str, LaurentPoly)]) -> Character {
    let mut ch = Character::zero();
    for (w, c) in terms {
        ch.add_term(datum.parse_word(w).unwrap(), c);
    }
    ch
}

fn point(s: &str) -> Point {
    parse_assignments(s).unwrap()
}

struct Line {
    ok: bool,
    notes: Vec<String>,
}

impl Line {
    fn new() -> Self {
        Line { ok: true, notes: Vec::new() }
    }

    fn require(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(what.into());
        }
    }
}

fn harness_checks(line: &mut Line, r: &ExampleReport, names: &[&str]) {
    for name in names {
        match r.check(name) {
            Some(c) => line.require(c.pass, format!("example {}: {name}: {}", r.id, c.detail)),
            None => line.require(false, format!("example {}: no check named {name}", r.id)),
        }
    }
}

fn a1_family(assign: Option<&str>) -> ParamPoint {
    let d = CartanDatum::a1_affine();
    let p = ParamPoint::a1_affine_family();
    match assign {
        Some(a) => p.specialize(&d, &point(a)).unwrap(),
        None => p,
    }
}

/// Parameter settings of the global-basis suite.
enum Suite {
    Generic(&'static str, Simples<RatFunc>),
    Rational(&'static str, Simples<Rat>),
}

const H: u32 = 4;

fn suites() -> Vec<Suite> {
    let a2 = CartanDatum::a2();
    let a1 = CartanDatum::a1_affine();
    vec![
        Suite::Generic("A2 generic", Simples::new(Klr::new(a2.clone(), ParamPoint::generic(&a2)).unwrap(), H + 1)),
        Suite::Generic("A1^(1) generic", Simples::new(Klr::new(a1.clone(), ParamPoint::generic(&a1)).unwrap(), H + 1)),
        Suite::Generic("A1^(1) family in a", Simples::new(Klr::new(a1.clone(), a1_family(None)).unwrap(), H + 1)),
        Suite::Rational("A1^(1) at a=2", Simples::new(Klr::new(a1, a1_family(Some("a=2"))).unwrap(), H + 1)),
    ]
}

struct SuiteRun {
    name: &'static str,
    report: GlobalBasisReport,
    convolutions: usize,
    oracle_mismatches: Vec<String>,
    modules_checked: usize,
    relation_failures: Vec<String>,
    coherence_checked: usize,
    coherence_failures: Vec<String>,
}

fn run_suite<F: Field + Send + Sync>(name: &'static str, simples: &Simples<F>) -> SuiteRun {
    let report = verify_global_basis(simples, H).expect("suite runs");
    let klr = simples.klr();
    let datum = klr.datum();
    let mut run = SuiteRun {
        name,
        report,
        convolutions: 0,
        oracle_mismatches: Vec::new(),
        modules_checked: 0,
        relation_failures: Vec::new(),
        coherence_checked: 0,
        coherence_failures: Vec::new(),
    };
    for s in simples.catalog_up_to(H + 1).unwrap() {
        run.modules_checked += 1;
        if !klr.check_relations(&s.module).is_empty() {
            run.relation_failures.push(format!("L({})", datum.word_string(&s.crystal_word)));
        }
    }
    for s in simples.catalog_up_to(H).unwrap() {
        for i in datum.vertices() {
            let li = simples.build(&Word(vec![i])).unwrap();
            let m = klr.convolve(&s.module, &li.module).unwrap().module;
            run.convolutions += 1;
            if words_of(&m.character()) != oracle_shuffle(&s.character, &li.character, datum) {
                run.oracle_mismatches.push(format!("L({}) o L({i})", datum.word_string(&s.crystal_word)));
            }
            run.modules_checked += 1;
            if !klr.check_relations(&m).is_empty() {
                run.relation_failures.push(format!("L({}) o L({i})", datum.word_string(&s.crystal_word)));
            }
            run.coherence_checked += 1;
            for c in crystal_coherence(simples, &s, i).unwrap() {
                if !c.pass {
                    run.coherence_failures.push(format!(
                        "{} at ({}, {i}): {}",
                        c.name,
                        datum.word_string(&s.crystal_word),
                        c.detail
                    ));
                }
            }
        }
    }
    run
}

/// `N o N` from each example, compared with the test-side shuffle.
fn example_convolutions(line: &mut Line) -> usize {
    let cases = [
        (CartanDatum::a1_affine(), ParamPoint::a1_affine_family(), "01"),
        (CartanDatum::a2_affine(), ParamPoint::a2_affine_family(), "012"),
    ];
    let count = cases.len();
    for (datum, family, n) in cases {
        let simples = Simples::new(Klr::<RatFunc>::new(datum.clone(), family).unwrap(), 3);
        let n = simples.build(&datum.parse_word(n).unwrap()).unwrap();
        let m = simples.klr().convolve(&n.module, &n.module).unwrap().module;
        line.require(
            words_of(&m.character()) == oracle_shuffle(&n.character, &n.character, &datum),
            "N o N differs from the shuffle",
        );
        line.require(simples.klr().check_relations(&m).is_empty(), "N o N violates a relation");
    }
    count
}

/// Doubles every `x_1` entry of `L(0) o L(0)`, which breaks only `tau x`.
fn planted_violation() -> Vec<String> {
    let d = CartanDatum::a1_affine();
    let klr = Klr::<RatFunc>::new(d.clone(), ParamPoint::a1_affine_family()).unwrap();
    let l0 = klr.simple_row(0, 1);
    let m = klr.convolve(&l0, &l0).unwrap().module;
    let two = RatFunc::from_int(2);
    let x0 = SparseMatrix::from_columns(m.dim(), m.x(0).columns().iter().map(|c| c.scale(&two)).collect());
    let x = (0..m.height()).map(|k| if k == 0 { x0.clone() } else { m.x(k).clone() }).collect();
    let tau = (0..m.height() - 1).map(|k| m.tau(k).clone()).collect();
    let broken = GradedModule::new(m.weight().clone(), m.basis().to_vec(), x, tau);
    let mut names: Vec<String> = klr.check_relations(&broken).into_iter().map(|v| v.relation).collect();
    names.dedup();
    names
}

fn report(n: usize, title: &str, line: &Line, elapsed: Duration) -> bool {
    let mark = if line.ok { "PASS" } else { "FAIL" };
    println!("[{mark}] criterion {n}: {title} ({:.2}s)", elapsed.as_secs_f64());
    for note in &line.notes {
        println!("         {note}");
    }
    line.ok
}

fn main() {
    let mut all = true;
    let a1 = CartanDatum::a1_affine();
    let a2aff = CartanDatum::a2_affine();
    let b1 = a1.parse_word("0011").unwrap();

    // 1
    let t = Instant::now();
    let ex1 = example_harness(1).expect("example 1 runs");
    let mut line = Line::new();
    line.require(ex1.passed(), "example 1 has a failing check");
    harness_checks(
        &mut line,
        &ex1,
        &[
            "ch(M)",
            "τ_2 w = -(a) τ_2 u",
            "y = w + γu is killed by every generator",
            "M0 is simple over the generic field",
        ],
    );
    let generic1 = Simples::new(Klr::<RatFunc>::new(a1.clone(), a1_family(None)).unwrap(), 4);
    let n = generic1.build(&a1.parse_word("01").unwrap()).unwrap();
    let m = generic1.klr().convolve(&n.module, &n.module).unwrap().module;
    let expected = literal(&a1, &[("0101", LaurentPoly::monomial(0, 2)), ("0011", qint(2).mul(&qint(2)))]);
    line.require(m.character() == expected, format!("ch(N o N) = {}", m.character().fmt_with(&a1)));
    let elapsed = t.elapsed();
    line.require(elapsed < Duration::from_secs(10), "slower than 10 s");
    all &= report(1, "example 1 golden run over Q(a)", &line, elapsed);

    // 2
    let t = Instant::now();
    let mut line = Line::new();
    harness_checks(
        &mut line,
        &ex1,
        &[
            "[a=2] reduced M0 is simple",
            "[a=-2] reduced M0 is simple",
            "[a=0] reduced M0 is not simple",
            "[a=0] L(b) = S",
            "[a=0] ch(M0/S) = e(ν)",
        ],
    );
    let at0 = analyze_point(&b1, &generic1, &point("a=0")).unwrap();
    let split: BTreeMap<String, String> =
        at0.factors.terms.iter().map(|(w, c)| (a1.word_string(w), c.to_string())).collect();
    let want: BTreeMap<String, String> = [("0011".into(), "1".into()), ("0101".into(), "1".into())].into();
    line.require(split == want, format!("a=0 factors {split:?}"));
    let special0 = Simples::new(Klr::<Rat>::new(a1.clone(), a1_family(Some("a=0"))).unwrap(), 4);
    let s0 = special0.build(&b1).unwrap();
    line.require(
        s0.character == literal(&a1, &[("0011", qint(2).mul(&qint(2)))]),
        format!("L(0011) at a=0 has ch {}", s0.character.fmt_with(&a1)),
    );
    line.require(
        special0.build(&a1.parse_word("0101").unwrap()).unwrap().character
            == literal(&a1, &[("0101", LaurentPoly::one())]),
        "L(0101) at a=0 is not e(0101)",
    );
    for (p, want) in [("a=0", false), ("a=2", true), ("a=-2", true)] {
        let got = membership_u_b(&b1, &generic1, &point(p)).unwrap();
        line.require(got == want, format!("membership at {p} is {got}"));
    }
    all &= report(2, "example 1 specializations at a = 2, -2, 0", &line, t.elapsed());

    // 3
    let t = Instant::now();
    let ex2 = example_harness(2).expect("example 2 runs");
    let mut line = Line::new();
    line.require(ex2.passed(), "example 2 has a failing check");
    harness_checks(&mut line, &ex2, &["ch(M)", "τ_3 w = -(a0*a1*a2 - b0*b1*b2) τ_3 u"]);
    let two = qint(2);
    let five = literal(
        &a2aff,
        &[
            ("012012", LaurentPoly::monomial(0, 2)),
            ("001122", two.mul(&two).mul(&two)),
            ("001212", two.mul(&two)),
            ("010122", two.mul(&two)),
            ("010212", two.clone()),
        ],
    );
    let generic2 = Simples::new(Klr::<RatFunc>::new(a2aff.clone(), ParamPoint::a2_affine_family()).unwrap(), 6);
    let n = generic2.build(&a2aff.parse_word("012").unwrap()).unwrap();
    let m = generic2.klr().convolve(&n.module, &n.module).unwrap().module;
    line.require(m.character() == five, format!("ch(M) = {}", m.character().fmt_with(&a2aff)));
    let b2 = a2aff.parse_word("001122").unwrap();
    let samples = [
        "a0=1, a1=1, a2=1, b0=1, b1=1, b2=1",
        "a0=3, a1=2, a2=1, b0=1, b1=2, b2=3",
        "a0=1/2, a1=4, a2=1, b0=2, b1=1, b2=1",
        "a0=1/2, a1=4, a2=1, b0=2, b1=1, b2=-1",
        "a0=5, a1=1, a2=-1, b0=1, b1=1, b2=1",
        "a0=-1, a1=-1, a2=-1, b0=1, b1=1, b2=1",
        "a0=2, a1=3, a2=5, b0=7, b1=11, b2=13",
    ];
    let e012012 = a2aff.parse_word("012012").unwrap();
    for s in samples {
        let p = point(s);
        let v = |k: &str| p[k].clone();
        let gamma = v("a0").mul(&v("a1")).mul(&v("a2")).sub(&v("b0").mul(&v("b1")).mul(&v("b2")));
        let a = analyze_point(&b2, &generic2, &p).unwrap();
        let degenerate = a.verdict == Verdict::Degenerates;
        line.require(degenerate == gamma.is_zero(), format!("[{s}] gamma = {gamma}, verdict {}", a.verdict.as_str()));
        if degenerate {
            line.require(
                a.factors.coeff(&e012012) == LaurentPoly::one() && a.own_multiplicity == LaurentPoly::one(),
                format!("[{s}] factors are not L(b) + e(012012)"),
            );
        }
    }
    let elapsed = t.elapsed();
    line.require(elapsed < Duration::from_secs(60), "slower than 60 s");
    all &= report(3, "example 2 golden run and degeneracy exactly at gamma = 0", &line, elapsed);

    // 4 to 7 share the suite runs
    let t = Instant::now();
    let runs: Vec<SuiteRun> = suites()
        .iter()
        .map(|s| match s {
            Suite::Generic(name, simples) => run_suite(name, simples),
            Suite::Rational(name, simples) => run_suite(name, simples),
        })
        .collect();
    let elapsed = t.elapsed();
    let mut line = Line::new();
    for r in &runs {
        line.require(r.report.passed(), format!("{}: {}", r.name, r.report.summary(&a1).trim_end()));
        line.require(!r.report.expansions.is_empty(), format!("{}: nothing checked", r.name));
    }
    line.require(elapsed < Duration::from_secs(600), "slower than 10 min");
    all &= report(4, "global-basis clauses up to height 4", &line, elapsed);

    let mut line = Line::new();
    let mut count = 0;
    for r in &runs {
        for e in &r.report.expansions {
            count += 1;
            let c = e.f.clauses.iter().find(|c| c.name == "oracle");
            line.require(c.is_some_and(|c| c.pass), format!("{}: library oracle at b={:?}", r.name, e.b));
        }
        count += r.convolutions;
        for m in &r.oracle_mismatches {
            line.require(false, format!("{}: {m}", r.name));
        }
    }
    count += example_convolutions(&mut line);
    line.require(harness_checks_pass(&ex1, "ch(M) is the shuffle product"), "example 1 shuffle");
    line.require(harness_checks_pass(&ex2, "ch(M) is the shuffle product"), "example 2 shuffle");
    all &= report(
        5,
        &format!("convolution characters equal the shuffle product ({count} instances)"),
        &line,
        Duration::ZERO,
    );

    let t = Instant::now();
    let mut line = Line::new();
    let mut checked = 0;
    for r in &runs {
        checked += r.modules_checked;
        line.require(r.relation_failures.is_empty(), format!("{}: {:?}", r.name, r.relation_failures));
        line.require(r.report.relation_failures.is_empty(), format!("{}: catalog relation failures", r.name));
        for e in &r.report.expansions {
            let c = e.f.clauses.iter().find(|c| c.name == "relations");
            line.require(c.is_some_and(|c| c.pass), format!("{}: relations on induced module", r.name));
        }
    }
    for (ex, names) in [
        (&ex1, vec!["M satisfies the relations", "M0 satisfies the relations"]),
        (&ex2, vec!["M satisfies the relations", "M0 satisfies the relations"]),
    ] {
        harness_checks(&mut line, ex, &names);
    }
    let planted = planted_violation();
    line.require(planted == ["tau x"], format!("planted violation reported as {planted:?}"));
    all &= report(6, &format!("relation checker on {checked} modules plus a planted violation"), &line, t.elapsed());

    let mut line = Line::new();
    let mut checked = 0;
    for r in &runs {
        checked += r.coherence_checked;
        for f in &r.coherence_failures {
            line.require(false, format!("{}: {f}", r.name));
        }
    }
    all &= report(7, &format!("crystal coherence on {checked} (simple, vertex) pairs"), &line, Duration::ZERO);

    // 8
    let t = Instant::now();
    let mut line = Line::new();
    let catalog = generic1.catalog_up_to(4).unwrap();
    let mut degenerate = 0;
    for s in catalog.iter() {
        let name = a1.word_string(&s.crystal_word);
        let at2 = analyze_point(&s.crystal_word, &generic1, &point("a=2")).unwrap();
        line.require(
            at2.verdict == Verdict::StaysSimple && at2.character_preserved,
            format!("L({name}) at a=2: {}", at2.verdict.as_str()),
        );
        let at0 = analyze_point(&s.crystal_word, &generic1, &point("a=0")).unwrap();
        if at0.verdict == Verdict::Degenerates {
            degenerate += 1;
            line.require(
                at0.own_multiplicity == LaurentPoly::one(),
                format!("L({name}) at a=0: own multiplicity {}", at0.own_multiplicity),
            );
        }
    }
    line.require(degenerate > 0, "nothing degenerates at a=0");
    all &= report(
        8,
        &format!("lattice reduction of {} simples at a=2 and a=0 ({degenerate} degenerate)", catalog.len()),
        &line,
        t.elapsed(),
    );

    if !all {
        std::process::exit(1);
    }
}

fn harness_checks_pass(r: &ExampleReport, name: &str) -> bool {
    r.check(name).is_some_and(|c| c.pass)
}
