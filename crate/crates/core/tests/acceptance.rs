//! Acceptance criteria, run at tolerance zero. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use cremona_core::cli;
use cremona_core::families::{
    a1_a2, diagonal_map, monomial_map, rho_a1, rho_a2, shear_lambda, sigma_map, xi_restrict,
    DiagonalSpec, ShearSpec,
};
use cremona_core::group::{
    conjugate_by_word, diag_orbit_classify, free_generator_matrices, no_relation_certificate,
    pingpong_check, sample_grid, DiagonalInput, GroupWord, Letter, OrbitClass, Sl2Matrix,
    SymbolicDiagonal,
};
use cremona_core::lattice::LatticeMatrix;
use cremona_core::leading::{g_form, leading_pair, predict_leading, rho};
use cremona_core::maps::{AffinePolyMap, ProjectiveMap, ProjectivePoint};
use cremona_core::newton::{
    is_standard_simplex, newton_body_levels, normalized_volume, LatticePolytope, SystemGenerators,
};
use cremona_core::poly::{integer, rational, Polynomial, Rational};
use cremona_core::text::parse_polynomial;
use num_traits::{One, Pow};
use proptest::prelude::*;
use proptest::strategy::BoxedStrategy;
use proptest::test_runner::TestRunner;

type Outcome = Result<String, String>;
type Check = Box<dyn FnMut(&mut TestRunner) -> Outcome>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

#[derive(Clone, Copy, Debug)]
enum Family {
    Diagonal,
    Monomial,
    Shear,
    Sigma,
}

const FAMILIES: [Family; 4] = [
    Family::Diagonal,
    Family::Monomial,
    Family::Shear,
    Family::Sigma,
];

fn family(f: Family, n: usize, max_d: u32) -> BoxedStrategy<ProjectiveMap> {
    match f {
        Family::Diagonal => prop::collection::vec(nonzero_rational(), n)
            .prop_map(|l| diagonal_map(&DiagonalSpec::new(l).unwrap()))
            .boxed(),
        Family::Monomial => sl_prime(n, 6)
            .prop_filter("nontrivial", move |m| *m != LatticeMatrix::identity(n))
            .prop_map(|m| monomial_map(&m).unwrap())
            .boxed(),
        Family::Shear => (2..=max_d)
            .prop_flat_map(move |d| shear_spec(n, d))
            .prop_map(|s| shear_lambda(&s).map)
            .boxed(),
        Family::Sigma => (2..=max_d)
            .prop_flat_map(move |d| {
                triangular_psi(n - 1, d).prop_map(move |p| sigma_map(&p, d).unwrap())
            })
            .boxed(),
    }
}

fn var(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i)
}

fn criterion_1(runner: &mut TestRunner) -> Outcome {
    let mut accepted = 0;
    let mut rejected = 0;
    let mut per_family = [0usize; 4];
    while accepted < 200 {
        let slot = accepted + rejected;
        let fam = FAMILIES[slot % 4];
        let n = match fam {
            Family::Shear => 4,
            _ => 3 + (slot / 4) % 2,
        };
        let f = sample(&family(fam, n, 3), runner);
        let h = sample(
            &(1u32..=3).prop_flat_map(move |d| homogeneous(n, d, 4)),
            runner,
        );
        let lead = leading_pair(&h).unwrap();
        if h.coeff_in(0, lead.x0_degree).num_terms() != 1 {
            rejected += 1;
            continue;
        }
        let predicted = predict_leading(&h, &f).map_err(|e| format!("{h} under {f}: {e}"))?;
        let actual = leading_pair(&h.substitute(f.components()).unwrap()).unwrap();
        ensure!(
            predicted == actual,
            "h = {h}, f = {f}: predicted {predicted:?}, actual {actual:?}"
        );
        per_family[slot % 4] += 1;
        accepted += 1;
    }
    Ok(format!(
        "{accepted} pairs (diagonal {}, monomial {}, shear {}, sigma {})",
        per_family[0], per_family[1], per_family[2], per_family[3]
    ))
}

fn criterion_2(runner: &mut TestRunner) -> Outcome {
    let pair = prop_oneof![
        1 => family(Family::Diagonal, 4, 3),
        3 => family(Family::Monomial, 4, 3),
        1 => family(Family::Shear, 4, 3),
        1 => family(Family::Sigma, 4, 3),
    ];
    let mut noncommuting = 0;
    for _ in 0..100 {
        let f = sample(&pair, runner);
        let g = sample(&pair, runner);
        let composite = rho(&g.compose(&f, true).unwrap()).map_err(|e| e.to_string())?;
        let (rf, rg) = (rho(&f).unwrap(), rho(&g).unwrap());
        let expected = rf.checked_mul(&rg).unwrap();
        ensure!(
            composite == expected,
            "rho(g∘f) != rho(f) rho(g) for f = {f}, g = {g}"
        );
        if expected != rg.checked_mul(&rf).unwrap() {
            noncommuting += 1;
        }
    }
    ensure!(
        noncommuting >= 10,
        "only {noncommuting} pairs distinguish the two orders"
    );
    for _ in 0..50 {
        let m = sample(&sl_prime(4, 6), runner);
        ensure!(m.is_sl_prime(), "generated matrix left SL'");
        ensure!(
            rho(&monomial_map(&m).unwrap()).unwrap() == m,
            "round trip failed for {m:?}"
        );
    }
    Ok(format!(
        "100 pairs ({noncommuting} with noncommuting rho), 50 monomial round trips"
    ))
}

fn criterion_3(runner: &mut TestRunner) -> Outcome {
    let mut shears = 0;
    for n in [4usize, 5] {
        for d in [2u32, 3] {
            let mut cases = vec![ShearSpec::standard(n, d).unwrap()];
            for _ in 0..4 {
                cases.push(sample(&shear_spec(n, d), runner));
            }
            for spec in cases {
                let s = shear_lambda(&spec);
                let inv = s.inverse.clone().ok_or("missing inverse")?;
                ensure!(
                    s.map.verify_inverse_pair(&inv),
                    "inverse pair fails for n = {n}, d = {d}"
                );
                ensure!(
                    rho(&s.map).unwrap() == LatticeMatrix::identity(n),
                    "rho(shear) != I"
                );
                ensure!(
                    rho(&inv).unwrap() == LatticeMatrix::identity(n),
                    "rho(shear^-1) != I"
                );
                let other_d = if d == 2 { 3 } else { 2 };
                let t = shear_lambda(&sample(&shear_spec(n, other_d), runner));
                let prod = s.map.compose(&t.map, true).unwrap();
                ensure!(g_form(&prod).is_some(), "composite left G-form");
                ensure!(
                    rho(&prod).unwrap() == LatticeMatrix::identity(n),
                    "rho(composite) != I"
                );
                let prod_inv = t.inverse.unwrap().compose(&inv, true).unwrap();
                ensure!(
                    prod.verify_inverse_pair(&prod_inv),
                    "composite inverse fails"
                );
                ensure!(
                    g_form(&prod_inv).is_some(),
                    "inverse of composite left G-form"
                );
                let xi_s = xi_restrict(&s.map).unwrap();
                let xi_prod = xi_restrict(&prod).unwrap();
                ensure!(
                    xi_prod == xi_s.compose(&xi_restrict(&t.map).unwrap()).unwrap(),
                    "xi(st) != xi(s) xi(t)"
                );
                for x in [&xi_s, &xi_prod, &xi_restrict(&inv).unwrap()] {
                    ensure!(
                        x.jacobian_det() == Polynomial::one(n - 1),
                        "jacobian of {x:?} != 1"
                    );
                }
                shears += 1;
            }
        }
    }
    let mut sigmas = 0;
    for i in 0..30 {
        let m = 3 + i % 2;
        let d = 2 + (i / 2 % 2) as u32;
        let psi = sample(&triangular_psi(m, d), runner);
        let phi = sample(&triangular_psi(m, d), runner);
        let sp = sigma_map(&psi, d).unwrap();
        ensure!(
            xi_restrict(&sp).unwrap() == psi,
            "xi(sigma(psi)) != psi for {psi:?}"
        );
        ensure!(
            rho(&sp).unwrap() == LatticeMatrix::identity(m + 1),
            "rho(sigma) != I"
        );
        let prod = sp.compose(&sigma_map(&phi, d).unwrap(), true).unwrap();
        ensure!(
            xi_restrict(&prod).unwrap() == psi.compose(&phi).unwrap(),
            "xi not multiplicative on sigma maps"
        );
        ensure!(
            psi.jacobian_det() == Polynomial::one(m),
            "jacobian of psi != 1"
        );
        sigmas += 1;
    }
    Ok(format!(
        "{shears} shears over (n, d) in {{4,5}}x{{2,3}}, {sigmas} sigma round trips"
    ))
}

fn criterion_4(runner: &mut TestRunner) -> Outcome {
    let mut checked = 0;
    for n in [3usize, 4] {
        for d in [2u32, 3] {
            let mut psis = vec![AffinePolyMap::identity(n - 1)];
            for _ in 0..4 {
                psis.push(sample(&triangular_psi(n - 1, d), runner));
            }
            let mut simplex = vec![vec![0i64; n]];
            for i in 0..n {
                let mut e = vec![0i64; n];
                e[i] = 1;
                simplex.push(e);
            }
            simplex.sort();
            for psi in psis {
                let f = sigma_map(&psi, d).unwrap();
                let report = newton_body_levels(&SystemGenerators::of_map(&f).unwrap(), 3)
                    .map_err(|e| e.to_string())?;
                for (k, body) in report.levels.iter().enumerate() {
                    let mut verts = body.vertices().to_vec();
                    verts.sort();
                    ensure!(
                        verts == simplex,
                        "level {} body for n = {n}, d = {d} is {body}",
                        k + 1
                    );
                    ensure!(
                        is_standard_simplex(body),
                        "not recognized as standard simplex"
                    );
                    let vol = normalized_volume(body).unwrap();
                    ensure!(
                        vol.value == Rational::one(),
                        "volume {} at level {}",
                        vol.value,
                        k + 1
                    );
                }
                checked += 1;
            }
        }
    }
    let cube = normalized_volume(&LatticePolytope::cube(3)).unwrap().value;
    ensure!(
        cube == integer(6),
        "unit cube in dimension 3 has volume {cube}"
    );
    Ok(format!("{checked} sigma maps, levels 1..3, volume 1"))
}

/// `X3^d (X0^(d-1) + X1^(d-1)) X_i` for `i != 4`, plus `X1^d X2^d` in slot 4.
fn displayed_conjugate(d: u32) -> ProjectiveMap {
    let n = 4;
    let s = &var(n, 0).pow(d - 1) + &var(n, 1).pow(d - 1);
    let prefix = &var(n, 3).pow(d) * &s;
    let comps = (0..=n)
        .map(|i| {
            let base = &prefix * &var(n, i);
            if i == 4 {
                &base + &(&var(n, 1).pow(d) * &var(n, 2).pow(d))
            } else {
                base
            }
        })
        .collect();
    ProjectiveMap::new(comps).unwrap()
}

fn criterion_5() -> Outcome {
    let (a1, a2) = a1_a2(4).unwrap();
    let a1_inv = monomial_map(&rho_a1(4).unwrap().inverse().unwrap()).unwrap();
    let a2_inv = monomial_map(&rho_a2(4).unwrap().inverse().unwrap()).unwrap();
    ensure!(a1.verify_inverse_pair(&a1_inv), "a1 inverse");
    ensure!(a2.verify_inverse_pair(&a2_inv), "a2 inverse");
    for d in [2u32, 3] {
        let lam = shear_lambda(&ShearSpec::standard(4, d).unwrap()).map;
        let c1 = a1
            .compose(&lam.compose(&a1_inv, true).unwrap(), true)
            .unwrap();
        ensure!(
            c1.equals_projectively(&lam),
            "a1 does not commute with the d = {d} shear"
        );
        let c2 = a2
            .compose(&lam.compose(&a2_inv, true).unwrap(), true)
            .unwrap();
        ensure!(
            c2.equals_projectively(&displayed_conjugate(d)),
            "a2 conjugate differs for d = {d}: {c2}"
        );
        let p = c2.contracts_to_point(3).unwrap();
        ensure!(
            p == Some(ProjectivePoint::coordinate_point(4, 4)),
            "conjugate sends X3 = 0 to {p:?}"
        );
        ensure!(
            lam.contracts_to_point(3).unwrap().is_none(),
            "shear contracts X3 = 0"
        );
    }
    Ok("d = 2, 3: a1 commutes, a2 conjugate matches, X3 = 0 goes to [0:0:0:0:1]".into())
}

/// Ping-pong inclusions checked directly for every power in `1..=3`.
fn pingpong_oracle(m: i64, radius: i64) -> bool {
    for x in -radius..=radius {
        for y in -radius..=radius {
            for k in (-3i64..=3).filter(|&k| k != 0) {
                let t = k * m;
                if x.abs() > y.abs() && (y + t * x).abs() <= x.abs() {
                    return false;
                }
                if y.abs() > x.abs() && (x + t * y).abs() <= y.abs() {
                    return false;
                }
            }
        }
    }
    true
}

fn criterion_6() -> Outcome {
    let (a, b) = (Sl2Matrix::upper(2), Sl2Matrix::new(1, 0, -2, 1).unwrap());
    let cert = no_relation_certificate(&a, &b, 12, 4).map_err(|e| e.to_string())?;
    ensure!(cert.holds(), "SL2 collision {:?}", cert.collision);
    ensure!(
        cert.words_checked == 1 + 2 * (3u64.pow(12) - 1),
        "word count {}",
        cert.words_checked
    );
    let (ra, rb) = free_generator_matrices(4).unwrap();
    let r1 = rho_a1(4).unwrap();
    let r2 = rho_a2(4).unwrap();
    ensure!(
        ra == r1.checked_mul(&r1).unwrap() && rb == r2.checked_mul(&r2).unwrap(),
        "generator matrices"
    );
    let rc = no_relation_certificate(&ra, &rb, 8, 4).map_err(|e| e.to_string())?;
    ensure!(rc.holds(), "rho collision {:?}", rc.collision);
    let grid = sample_grid(20);
    for m in [2, -2] {
        ensure!(
            pingpong_check(m, &grid, 3).unwrap().holds(),
            "ping-pong fails for m = {m}"
        );
        ensure!(pingpong_oracle(m, 20), "oracle disagrees for m = {m}");
    }
    let one = pingpong_check(1, &grid, 3).unwrap();
    ensure!(!one.holds(), "ping-pong holds for m = 1");
    ensure!(!pingpong_oracle(1, 20), "oracle holds for m = 1");
    Ok(format!(
        "SL2 L = 12 ({} words), rho^2 L = 8 ({} words), ping-pong m = +-2 holds, m = 1 fails",
        cert.words_checked, rc.words_checked
    ))
}

/// `W(w) = x1 ∘ ... ∘ xk` built by composing the maps `a1^2, a2^2`.
fn composed_word(w: &GroupWord, gens: &[ProjectiveMap; 4]) -> ProjectiveMap {
    w.letters()
        .iter()
        .fold(ProjectiveMap::identity(4), |acc, l| {
            acc.compose(&gens[l.index()], true).unwrap()
        })
}

fn criterion_7() -> Outcome {
    let sym = diag_orbit_classify(&DiagonalInput::Symbolic(SymbolicDiagonal::all_equal(4)), 3)
        .map_err(|e| e.to_string())?;
    ensure!(
        sym == OrbitClass::FixedUnconditionally,
        "symbolic scalar gives {sym:?}"
    );
    let concrete = DiagonalSpec::from_ints(&[2, 3, 5, 7]).unwrap();
    let witness = match diag_orbit_classify(&DiagonalInput::Concrete(concrete), 2).unwrap() {
        OrbitClass::Moved(w) => w,
        other => return Err(format!("(2,3,5,7) classified {other:?}")),
    };
    ensure!(witness.len() <= 2, "witness {witness} too long");

    let (a1, a2) = a1_a2(4).unwrap();
    let a1_inv = monomial_map(&rho_a1(4).unwrap().inverse().unwrap()).unwrap();
    let a2_inv = monomial_map(&rho_a2(4).unwrap().inverse().unwrap()).unwrap();
    let sq = |f: &ProjectiveMap| f.compose(f, true).unwrap();
    let gens_by_letter = Letter::ALL.map(|l| match l {
        Letter::A => sq(&a1),
        Letter::AInv => sq(&a1_inv),
        Letter::B => sq(&a2),
        Letter::BInv => sq(&a2_inv),
    });
    let words = GroupWord::all_up_to(3);
    ensure!(words.len() == 53, "{} words of length <= 3", words.len());
    let lambdas: [Vec<Rational>; 3] = [
        [2, 3, 5, 7].map(integer).to_vec(),
        vec![rational(1, 2), integer(-3), rational(5, 7), integer(2)],
        vec![integer(-1), integer(2), integer(2), rational(-1, 3)],
    ];
    let mut checked = 0;
    for lam in &lambdas {
        let spec = DiagonalSpec::new(lam.clone()).unwrap();
        let f = diagonal_map(&spec);
        for w in &words {
            let big_w = composed_word(w, &gens_by_letter);
            let big_w_inv = composed_word(&w.inverse(), &gens_by_letter);
            ensure!(big_w.verify_inverse_pair(&big_w_inv), "W({w}) inverse");
            let e = rho(&big_w).unwrap();
            let scaled: Vec<Rational> = (0..4)
                .map(|j| {
                    (0..4).fold(Rational::one(), |acc, i| {
                        acc * Pow::pow(&lam[i], e.get(i, j) as i32)
                    })
                })
                .collect();
            let expected = diagonal_map(&DiagonalSpec::new(scaled).unwrap());
            let conj = conjugate_by_word(w, &f).map_err(|e| e.to_string())?;
            ensure!(
                conj.equals_projectively(&expected),
                "law fails for word {w} and {lam:?}"
            );
            let direct = big_w
                .compose(&f.compose(&big_w_inv, true).unwrap(), true)
                .unwrap();
            ensure!(
                conj.equals_projectively(&direct),
                "conjugate_by_word({w}) != W f W^-1"
            );
            checked += 1;
        }
    }
    Ok(format!(
        "scalar fixed unconditionally, (2,3,5,7) moved by {witness}, law on {checked} conjugates"
    ))
}

fn run_cli(args: &[&str]) -> cli::CliOutput {
    cli::run(std::iter::once("cremona").chain(args.iter().copied()))
}

fn criterion_8(runner: &mut TestRunner) -> Outcome {
    for _ in 0..200 {
        let (n, p) = sample(
            &(1usize..=5).prop_flat_map(|n| (Just(n), poly(n, 4, 6))),
            runner,
        );
        let back = parse_polynomial(&p.to_string(), n).map_err(|e| format!("{p}: {e}"))?;
        ensure!(back == p, "round trip changed {p} into {back}");
    }
    let a = run_cli(&["freegroup", "--len", "9", "--workers", "1"]);
    let b = run_cli(&["freegroup", "--len", "9", "--workers", "5"]);
    let c = run_cli(&["freegroup", "--len", "9", "--workers", "5"]);
    ensure!(
        a.code == 0 && a.stdout == b.stdout && b.stdout == c.stdout,
        "freegroup output varies"
    );
    let c1 = run_cli(&["corpus", "--workers", "1"]);
    let c3 = run_cli(&["corpus", "--workers", "3"]);
    ensure!(c1.code == 0, "corpus exited {}: {}", c1.code, c1.stdout);
    ensure!(c1.stdout == c3.stdout, "corpus output depends on workers");
    let paths: [(&[&str], i32, &str); 8] = [
        (&["rho", "-m", "a1"], 0, "rho_a1"),
        (
            &["diag-classify", "--lambda", "2,3,5,7"],
            0,
            "diag_classify_generic",
        ),
        (&["parse", "tests/data/bad.txt"], 1, "parse_error"),
        (&["rho", "-m", "nope"], 1, "unknown_name"),
        (
            &["predict-leading", "-m", "a1", "--poly", "X0*X1 + X0*X2"],
            2,
            "predict_ambiguous_top",
        ),
        (
            &["rho", "tests/data/maps.txt", "-m", "involution"],
            2,
            "rho_involution",
        ),
        (
            &["gform", "-m", "a2", "--inverse", "a1"],
            3,
            "gform_wrong_inverse",
        ),
        (
            &[
                "conjugate",
                "-m",
                "lambda_d2",
                "--word",
                "B",
                "--expect",
                "a2_conj_lambda",
            ],
            3,
            "conjugate_mismatch",
        ),
    ];
    for (args, code, golden) in paths {
        let out = run_cli(args);
        ensure!(
            out.code == code,
            "{args:?} exited {} (want {code})",
            out.code
        );
        let path = format!("tests/golden/{golden}.json");
        let want = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
        ensure!(out.stdout == want, "{args:?} differs from {path}");
        ensure!(
            run_cli(args).stdout == out.stdout,
            "{args:?} is not deterministic"
        );
    }
    let usage = run_cli(&["frobnicate"]);
    ensure!(
        usage.code == 1 && usage.stdout.is_empty(),
        "unknown subcommand exited {}",
        usage.code
    );
    Ok("200 round trips, deterministic reports, corpus ok, exit codes 0..3 match goldens".into())
}

fn main() {
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).expect("package directory");
    let mut runner = TestRunner::deterministic();
    let criteria: Vec<(&str, Check)> = vec![
        ("leading-pair prediction", Box::new(criterion_1)),
        ("rho functoriality", Box::new(criterion_2)),
        ("shear and sigma structure", Box::new(criterion_3)),
        ("Newton body simplex", Box::new(criterion_4)),
        ("a1, a2 conjugation", Box::new(|_| criterion_5())),
        ("freeness certificates", Box::new(|_| criterion_6())),
        ("diagonal classification", Box::new(|_| criterion_7())),
        ("infrastructure", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (i, (name, mut check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&mut runner))).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.2}s] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.2}s] {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
