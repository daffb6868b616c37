//! Acceptance run: one PASS/FAIL line per criterion, followed by any
//! failing items. Exits nonzero only when a failure is not in `KNOWN`.

mod common;

use plane4_core::alexander::{
    alexander_matrix, alexander_poly, ek_minors, link_alexander_poly, single_var_poly,
};
use plane4_core::arrangements::{
    count_d2_classes, depth2_normal_form, depth2_tors1, enumerate_d2_normal_forms, sigma_lists,
    table1_rows, ArrangementSpec, CatalogName,
};
use plane4_core::charvar::{tors_count, verify_subtorus, Subtorus};
use plane4_core::{FreeWord, LaurentPoly, Permutation, PureBraidWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Items that fail for a documented reason: the displayed single-variable
/// polynomial of A(314256) has one factor of (t-1) fewer than the
/// definition yields, and fewer than any 6-component link allows.
const KNOWN: &[&str] = &["single-variable A(314256)"];

struct Criterion {
    failures: Vec<String>,
    checked: usize,
}

impl Criterion {
    fn new() -> Self {
        Criterion {
            failures: Vec::new(),
            checked: 0,
        }
    }

    fn item(&mut self, label: impl Into<String>, result: Result<(), String>) {
        self.checked += 1;
        if let Err(e) = result {
            self.failures.push(format!("{}: {e}", label.into()));
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        label: impl Into<String>,
        got: Result<T, String>,
        want: T,
    ) {
        let r = got.and_then(|g| {
            if g == want {
                Ok(())
            } else {
                Err(format!("got {g:?}, expected {want:?}"))
            }
        });
        self.item(label, r);
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn spec(text: &str) -> ArrangementSpec {
    ArrangementSpec::parse(text).unwrap()
}

fn poly(text: &str, n: usize) -> LaurentPoly {
    LaurentPoly::parse(text, n)
        .unwrap()
        .normalize_unit()
        .unwrap()
}

fn basis(words: &[&str], rank: usize) -> Vec<FreeWord> {
    words
        .iter()
        .map(|w| FreeWord::parse(w, rank).unwrap())
        .collect()
}

fn tors(s: &ArrangementSpec, p: u64, k: usize) -> Result<u128, String> {
    tors_count(s, p, k).map(|c| c.count).map_err(err)
}

fn up_to_unit(got: Result<LaurentPoly, String>, want: &LaurentPoly) -> Result<(), String> {
    let g = got?;
    if g.equals_up_to_unit(want) {
        Ok(())
    } else {
        Err(format!("got {g}, expected {want}"))
    }
}

fn criterion1() -> Criterion {
    let mut c = Criterion::new();
    for row in table1_rows() {
        let s = row.arrangement().unwrap();
        c.eq(format!("{} Tors_2,1", row.name), tors(&s, 2, 1), row.tors2);
        c.eq(format!("{} Tors_3,1", row.name), tors(&s, 3, 1), row.tors3);
    }
    for (text, t2, t3) in [
        ("cat:K", 32, 567),
        ("cat:L", 31, 527),
        ("cat:M", 31, 421),
        ("perm:31425", 16, 141),
        ("perm:241536", 31, 513),
    ] {
        let s = spec(text);
        c.eq(
            format!("{text} named pair"),
            tors(&s, 2, 1).and_then(|a| Ok((a, tors(&s, 3, 1)?))),
            (t2, t3),
        );
    }
    c
}

fn criterion2() -> Criterion {
    let mut c = Criterion::new();
    for row in table1_rows()
        .iter()
        .filter(|r| r.depth.is_some_and(|d| d <= 2))
    {
        let perm = match row.arrangement().unwrap() {
            ArrangementSpec::Horizontal(p) => p,
            other => panic!("depth-2 row {} is not horizontal: {other}", row.name),
        };
        let got = depth2_normal_form(&perm)
            .map(|nf| sigma_lists(&nf).all_text())
            .map_err(err);
        c.eq(format!("{} sigma", row.name), got, row.sigma.clone());
    }
    c
}

fn matrix_matches(
    label: &str,
    s: &ArrangementSpec,
    b: &[FreeWord],
    display: &[&[&str]],
    negate_last: bool,
) -> Result<(), String> {
    let m = alexander_matrix(s, Some(b)).map_err(err)?;
    let n = m.n();
    if m.matrix.rows() != display.len() || m.matrix.cols() != display[0].len() {
        return Err(format!("{label}: shape mismatch"));
    }
    for (i, row) in display.iter().enumerate() {
        for (j, text) in row.iter().enumerate() {
            let mut want = LaurentPoly::parse(text, n).map_err(err)?;
            if negate_last && j + 1 == row.len() {
                want = -want;
            }
            if m.matrix.get(i, j) != &want {
                return Err(format!(
                    "{label}: entry ({},{}) is {}, expected {want}",
                    i + 1,
                    j + 1,
                    m.matrix.get(i, j)
                ));
            }
        }
    }
    Ok(())
}

fn criterion3() -> Criterion {
    let mut c = Criterion::new();
    for n in 3..=6usize {
        let s = ArrangementSpec::Horizontal(Permutation::identity(n));
        let prod: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        c.item(
            format!("Δ of A_{n}"),
            up_to_unit(
                alexander_poly(&s, None).map_err(err),
                &poly(&format!("(t{n}-1)^{}", n - 2), n),
            ),
        );
        c.item(
            format!("Δ_L of A_{n}"),
            up_to_unit(
                link_alexander_poly(&s).map_err(err),
                &poly(&format!("({}-1)^{}", prod.join("*"), n - 2), n),
            ),
        );
    }

    // A(2134) in the basis x1, x1x2, x3.
    let zieg = spec("perm:2134");
    let zb = basis(&["x1", "x1x2", "x3"], 3);
    c.item(
        "A(2134) matrix",
        matrix_matches(
            "A(2134)",
            &zieg,
            &zb,
            &[
                &["t4-t2^2", "(t2+1)*(t1-1)", "0", "1-t1"],
                &["0", "t4-1", "0", "1-t2"],
                &["0", "0", "t4-1", "1-t3"],
            ],
            false,
        ),
    );
    c.item(
        "A(2134) E_1",
        (|| {
            let m = alexander_matrix(&zieg, Some(&zb)).map_err(err)?;
            let mut got: Vec<LaurentPoly> = ek_minors(&m, 1)
                .map_err(err)?
                .iter()
                .map(|f| f.normalize_unit().map_err(err))
                .collect::<Result<_, _>>()?;
            let mut want: Vec<LaurentPoly> = (1..=4)
                .map(|i| poly(&format!("(t{i}-1)*(t4-1)*(t4-t2^2)"), 4))
                .collect();
            got.sort_by_key(|f| f.to_string());
            want.sort_by_key(|f| f.to_string());
            if got == want {
                Ok(())
            } else {
                Err(format!("minors {got:?}"))
            }
        })(),
    );
    for comp in ["t4=1 & t2=-1", "t4=1 & t2=1 & t1=1", "t4=1 & t2=1 & t3=1"] {
        let t = Subtorus::parse(comp, 4).unwrap();
        c.eq(
            format!("A(2134) V_2 ⊇ {{{comp}}}"),
            verify_subtorus(&zieg, &t, 2, Some(&zb)).map_err(err),
            true,
        );
    }

    // K in its display basis. The displayed last column carries the opposite
    // sign convention (it violates M·d = 0 as printed), so it is compared negated.
    let k = spec("cat:K");
    let kb = CatalogName::K.display_basis().unwrap();
    c.item(
        "K matrix (last column up to sign)",
        matrix_matches(
            "K",
            &k,
            &kb,
            &[
                &[
                    "t6-t4^2*t3^-2",
                    "0",
                    "t4^2*t3^-2*(t3+1)*(1-t1)",
                    "(t4+1)*(t1-1)",
                    "0",
                    "t1-1",
                ],
                &[
                    "0",
                    "t6-t3^2",
                    "(t4+t3)*(t2-1)",
                    "(1-t3)*(t2-1)",
                    "0",
                    "t2-1",
                ],
                &["0", "0", "t6-t4^2", "(t4+1)*(t3-1)", "0", "t3-1"],
                &["0", "0", "0", "t6-1", "0", "t4-1"],
                &["0", "0", "0", "0", "t6-1", "t5-1"],
            ],
            true,
        ),
    );
    c.item(
        "Δ_K",
        up_to_unit(
            alexander_poly(&k, Some(&kb)).map_err(err),
            &poly("(t6-1)*(t6-t3^2)*(t6-t4^2)*(t6-t4^2*t3^-2)", 6),
        ),
    );

    c.item(
        "Δ of A(312546)",
        up_to_unit(
            alexander_poly(
                &spec("perm:312546"),
                Some(&basis(&["x1", "x1x2", "x1x2x3", "x4", "x4x5"], 5)),
            )
            .map_err(err),
            &poly("(t6-1)*(t6-t5^2)*(t6-t3^2)*(t6-t3^2*t2^-2)", 6),
        ),
    );

    let mut single = vec![
        (
            "single-variable A(31425)".to_string(),
            "perm:31425",
            "(t-1)^4*(4t^2-t+4)".to_string(),
        ),
        (
            "single-variable A(314256)".to_string(),
            "perm:314256",
            "(t^6-1)*(t-1)^3*(t+1)*(3t^2-2t+3)".to_string(),
        ),
        (
            "single-variable A(241536)".to_string(),
            "perm:241536",
            "(t-1)^5*(5t^4+6t^2+5)".to_string(),
        ),
        (
            "single-variable L".to_string(),
            "cat:L",
            "3(t-1)^5*(3t^2-2t+3)^2".to_string(),
        ),
        (
            "single-variable M".to_string(),
            "cat:M",
            "(t-1)^5*(t^2-t+1)*(t^6-5t^5-t^4-6t^3-t^2-5t+1)".to_string(),
        ),
    ];
    let complex: Vec<String> = (3..=6)
        .map(|n| {
            format!(
                "perm:{}",
                (1..=n).map(|i| i.to_string()).collect::<String>()
            )
        })
        .collect();
    for (n, text) in (3..=6).zip(complex.iter()) {
        single.push((
            format!("single-variable A_{n}"),
            text.as_str(),
            format!("(t-1)*(t^{n}-1)^{}", n - 2),
        ));
    }
    for (label, text, want) in single {
        c.item(
            label,
            up_to_unit(single_var_poly(&spec(text)).map_err(err), &poly(&want, 1)),
        );
    }
    c
}

fn criterion4() -> Criterion {
    let mut c = Criterion::new();
    c.eq(
        "Δ_L terms",
        link_alexander_poly(&spec("cat:L"))
            .map(|f| f.term_count())
            .map_err(err),
        667,
    );
    c.eq(
        "Δ_M terms",
        link_alexander_poly(&spec("cat:M"))
            .map(|f| f.term_count())
            .map_err(err),
        317,
    );
    c
}

fn criterion5() -> Criterion {
    let mut c = Criterion::new();
    let comps = [
        "t6=1 & t4=-1 & t3=-1 & t2=1",
        "t6=1 & t4=-1 & t3=1 & t1=1",
        "t6=1 & t5=1 & t4=1 & t3=-1",
        "t6=1 & t5=1 & t4=1 & t3=1 & t1=1",
        "t6=1 & t5=1 & t4=1 & t3=1 & t2=1",
        "t6=1 & t4=1 & t3=1 & t2=1 & t1=1",
    ];
    for name in [CatalogName::K, CatalogName::L] {
        let s = ArrangementSpec::Catalog(name);
        let b = name.display_basis().unwrap();
        for comp in comps {
            let t = Subtorus::parse(comp, 6).unwrap();
            c.eq(
                format!("{name:?} V_4 ⊇ {{{comp}}}"),
                verify_subtorus(&s, &t, 4, Some(&b)).map_err(err),
                true,
            );
        }
    }
    c.eq("Tors_2,4(M)", tors(&spec("cat:M"), 2, 4), 16);
    c
}

fn criterion6() -> Criterion {
    let mut c = Criterion::new();
    for r in 1..=2u32 {
        for (name, t3) in [("K", 3u128.pow(r + 4) * 7), ("L", 3u128.pow(r + 2) * 61)] {
            let s = spec(&format!("cable(cat:{name},k=6,sign=+,r={r})"));
            c.eq(format!("Tors_3,1({name}{{{r}}})"), tors(&s, 3, 1), t3);
            c.eq(
                format!("Tors_2,1({name}{{{r}}})"),
                tors(&s, 2, 1),
                1u128 << (r + 5),
            );
        }
    }
    c
}

fn criterion7() -> Criterion {
    let mut c = Criterion::new();
    for row in table1_rows() {
        let s = row.arrangement().unwrap();
        if row.depth.is_some_and(|d| d <= 2) && row.n >= 3 {
            if let ArrangementSpec::Horizontal(perm) = &s {
                let nf = depth2_normal_form(perm).unwrap();
                c.eq(
                    format!("{} depth-2 formula at p = 3", row.name),
                    tors(&s, 3, 1),
                    depth2_tors1(&nf, 3).unwrap(),
                );
            }
        }
        if row.depth.is_some() && row.n >= 3 {
            c.eq(
                format!("{} completely decomposable Tors_2,1", row.name),
                tors(&s, 2, 1),
                1u128 << (row.n - 1),
            );
        }
    }
    for n in 1..=14 {
        let listed = enumerate_d2_normal_forms(n).len();
        c.eq(
            format!("class count n = {n}"),
            count_d2_classes(n).map_err(err),
            listed.into(),
        );
    }
    c.eq(
        "class count n = 6",
        count_d2_classes(6).map_err(err),
        5u32.into(),
    );
    c.eq(
        "class count n = 7",
        count_d2_classes(7).map_err(err),
        8u32.into(),
    );
    c
}

fn criterion8() -> Criterion {
    let mut c = Criterion::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);

    for _ in 0..60 {
        let rank = rng.gen_range(1..5);
        let len = rng.gen_range(0..12);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..=rank as i32);
                if rng.gen_bool(0.5) {
                    -g
                } else {
                    g
                }
            })
            .collect();
        c.item("Fox identity", common::fox_identity(rank, &letters));
    }
    for _ in 0..20 {
        let strands = rng.gen_range(2..=4);
        let p = common::random_triples(&mut rng, strands, 4);
        let q = common::random_triples(&mut rng, strands, 4);
        c.item("Gassner law", common::gassner_law(strands, &p, &q));
    }
    for _ in 0..20 {
        let n = rng.gen_range(2..=6);
        let perm = common::random_perm(&mut rng, n);
        c.item(
            format!("row identity {perm}"),
            common::row_identity_and_divisibility(&ArrangementSpec::Horizontal(perm)),
        );
        let n = rng.gen_range(3..=5);
        let len = rng.gen_range(0..6);
        let xi = PureBraidWord::from_triples(n - 1, &common::random_triples(&mut rng, n - 1, len))
            .unwrap();
        c.item(
            format!("row identity xi:{xi}"),
            common::row_identity_and_divisibility(&ArrangementSpec::XiWord { n, xi }),
        );
    }
    for _ in 0..8 {
        let n = rng.gen_range(3..=5);
        let perm = common::random_perm(&mut rng, n);
        let b = common::random_basis(&mut rng, n - 1, 4);
        c.item(
            format!("basis invariance {perm}"),
            common::basis_invariance(&ArrangementSpec::Horizontal(perm), &b),
        );
        let xi = common::random_triples(&mut rng, n - 1, 4);
        let d = common::random_triples(&mut rng, n - 1, 3);
        c.item(
            "conjugation invariance",
            common::conjugation_invariance(n, &xi, &d),
        );
    }
    for _ in 0..30 {
        let n = rng.gen_range(1..=4);
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let count = rng.gen_range(1..=5);
        let tori: Vec<Subtorus> = (0..count)
            .filter_map(|_| {
                let codim = rng.gen_range(1..=2);
                let rows: Vec<Vec<i32>> = (0..codim)
                    .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
                    .collect();
                common::torus_from_rows(n, &rows)
            })
            .collect();
        if !tori.is_empty() {
            c.item(
                "Möbius vs brute force",
                common::mobius_vs_bruteforce(&tori, p),
            );
        }
    }
    for _ in 0..15 {
        let n = rng.gen_range(3..=6);
        let perm = common::random_perm(&mut rng, n);
        let k = rng.gen_range(1..=n);
        c.item(
            format!("Torres {perm}, k = {k}"),
            common::torres_sublink(&perm, k),
        );
        c.item(format!("braid route {perm}"), common::braid_route(&perm));
    }
    for _ in 0..12 {
        let n = rng.gen_range(2..=5);
        let perm = common::random_perm(&mut rng, n);
        c.item(
            format!("monotonicity and bounds {perm}"),
            common::monotone_and_bounds(&ArrangementSpec::Horizontal(perm)),
        );
    }
    c
}

fn main() {
    let runs: [(&str, fn() -> Criterion); 8] = [
        ("Table 1 torsion counts", criterion1),
        ("depth-2 codimension lists", criterion2),
        ("polynomial identities", criterion3),
        ("term counts", criterion4),
        ("bottom varieties", criterion5),
        ("cable counts", criterion6),
        ("closed-form cross-checks", criterion7),
        ("property suites", criterion8),
    ];
    let mut unexpected = 0;
    for (i, (title, run)) in runs.iter().enumerate() {
        let c = run();
        let verdict = if c.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "criterion {}: {verdict} {title} ({} of {} items)",
            i + 1,
            c.checked - c.failures.len(),
            c.checked
        );
        for f in &c.failures {
            let known = KNOWN.iter().any(|k| f.starts_with(k));
            println!("    {}{f}", if known { "[known] " } else { "" });
            if !known {
                unexpected += 1;
            }
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
