//! Bundled witness suite: every worked example of the theory as an
//! executable check over the bundled map file.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{
    a1_a2, diagonal_map, monomial_map, rho_a1, rho_a2, shear_lambda, sigma_map,
    sigma_map_with_inverse, xi_restrict, DiagonalSpec, ShearSpec,
};
use crate::group::{
    conjugate_by_word, free_generator_matrices, no_relation_certificate, pingpong_check,
    sample_grid, GroupWord, Sl2Matrix,
};
use crate::lattice::LatticeMatrix;
use crate::leading::{g_form, leading_pair, rho, valuation_of_fraction, LeadingPair};
use crate::maps::{AffinePolyMap, ProjectiveMap, ProjectivePoint};
use crate::newton::{
    is_standard_simplex, newton_body_levels, normalized_volume, LatticePolytope, SystemGenerators,
};
use crate::poly::{integer, Polynomial};
use crate::report;
use crate::text::MapFile;

/// The bundled map file (`n = 4`).
pub const BUNDLED_MAPS: &str = include_str!("../data/witness_maps.txt");

pub fn bundled() -> Result<MapFile> {
    MapFile::parse(BUNDLED_MAPS)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntryOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Value,
}

type Check = fn(&MapFile) -> Result<(bool, Value)>;

const ENTRIES: &[(&str, Check)] = &[
    ("a1-a2-fix-all-ones", a1_a2_fix_all_ones),
    ("a1-commutes-with-shear", a1_commutes_with_shear),
    ("a2-conjugate-contracts-x3", a2_conjugate_contracts),
    ("a2-conjugate-display", a2_conjugate_display),
    ("bundled-maps-match-constructors", bundled_maps_match),
    ("diagonal-g-form", diagonal_g_form),
    ("lambda0-x0-degree", lambda0_x0_degree),
    ("leading-pair-lambda1", leading_pair_lambda1),
    ("monomial-map-of-rho-a1", monomial_of_rho_a1),
    ("newton-body-simplex", newton_body_simplex),
    ("pingpong-sl2", pingpong_sl2),
    ("rho-a1-a2-columns", rho_columns),
    ("rho-images-free-to-length-8", rho_images_free),
    ("rho-sigma-identity", rho_sigma_identity),
    ("shear-inverse-pairs", shear_inverse_pairs),
    ("sigma-fixes-origin", sigma_fixes_origin),
    ("sigma-restricts-on-x0", sigma_restricts_on_x0),
    ("sigma-triangular-inverses", sigma_triangular_inverses),
    ("sl-prime-a1-a2", sl_prime_a1_a2),
    ("sl2-free-to-length-10", sl2_free),
    ("valuation-standard-basis", valuation_standard_basis),
    ("volume-standard-simplex", volume_standard_simplex),
    ("word-a-fixes-shear", word_a_fixes_shear),
];

pub fn entry_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _)| *n).collect()
}

/// Runs every entry on up to `workers` threads; outcomes are sorted by name.
pub fn run_corpus(workers: usize) -> Result<Vec<EntryOutcome>> {
    let file = bundled()?;
    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::with_capacity(ENTRIES.len()));
    let workers = workers.clamp(1, ENTRIES.len());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(name, check)) = ENTRIES.get(i) else {
                    break;
                };
                let outcome = match check(&file) {
                    Ok((passed, detail)) => EntryOutcome {
                        name,
                        passed,
                        detail,
                    },
                    Err(e) => EntryOutcome {
                        name,
                        passed: false,
                        detail: json!({ "error": e.to_string() }),
                    },
                };
                results.lock().expect("no poisoning").push(outcome);
            });
        }
    });
    let mut out = results.into_inner().expect("no poisoning");
    out.sort_by_key(|o| o.name);
    Ok(out)
}

fn shear_names(d: u32) -> (&'static str, &'static str, &'static str) {
    match d {
        2 => ("lambda_d2", "lambda_d2_inv", "a2_conj_lambda"),
        _ => ("lambda_d3", "lambda_d3_inv", "a2_conj_lambda_d3"),
    }
}

fn conjugate(
    outer: &ProjectiveMap,
    f: &ProjectiveMap,
    inner: &ProjectiveMap,
) -> Result<ProjectiveMap> {
    outer.compose(&f.compose(inner, true)?, true)
}

fn a1_a2_fix_all_ones(file: &MapFile) -> Result<(bool, Value)> {
    let ones = ProjectivePoint::from_ints(&[1; 5])?;
    let a = file.map("a1")?.fixes_point(&ones)?;
    let b = file.map("a2")?.fixes_point(&ones)?;
    Ok((a && b, json!({ "a1": a, "a2": b })))
}

fn a1_commutes_with_shear(file: &MapFile) -> Result<(bool, Value)> {
    let mut detail = serde_json::Map::new();
    let mut ok = true;
    for d in [2, 3] {
        let (lam, _, _) = shear_names(d);
        let l = file.map(lam)?;
        let c = conjugate(file.map("a1")?, l, file.map("a1_inv")?)?;
        let eq = c.equals_projectively(l);
        ok &= eq;
        detail.insert(format!("d{d}"), json!(eq));
    }
    Ok((ok, Value::Object(detail)))
}

fn a2_conjugate_display(file: &MapFile) -> Result<(bool, Value)> {
    let mut detail = serde_json::Map::new();
    let mut ok = true;
    for d in [2, 3] {
        let (lam, _, display) = shear_names(d);
        let c = conjugate(file.map("a2")?, file.map(lam)?, file.map("a2_inv")?)?;
        let eq = c.equals_projectively(file.map(display)?);
        ok &= eq;
        detail.insert(
            format!("d{d}"),
            json!({ "conjugate": report::map(&c), "matches": eq }),
        );
    }
    Ok((ok, Value::Object(detail)))
}

fn a2_conjugate_contracts(file: &MapFile) -> Result<(bool, Value)> {
    let mut detail = serde_json::Map::new();
    let mut ok = true;
    let target = ProjectivePoint::coordinate_point(4, 4);
    for d in [2, 3] {
        let (lam, _, _) = shear_names(d);
        let l = file.map(lam)?;
        let c = conjugate(file.map("a2")?, l, file.map("a2_inv")?)?;
        let point = c.contracts_to_point(3)?;
        let own = l.contracts_to_point(3)?;
        let good = point.as_ref() == Some(&target) && own.is_none();
        ok &= good;
        detail.insert(
            format!("d{d}"),
            json!({
                "conjugate_contracts_to": point.as_ref().map(report::point),
                "shear_contracts": own.is_some(),
            }),
        );
    }
    Ok((ok, Value::Object(detail)))
}

fn bundled_maps_match(file: &MapFile) -> Result<(bool, Value)> {
    let (a1, a2) = a1_a2(4)?;
    let a1_inv = monomial_map(&rho_a1(4)?.inverse()?)?;
    let a2_inv = monomial_map(&rho_a2(4)?.inverse()?)?;
    let mut checks = vec![
        ("a1", file.map("a1")?.equals_projectively(&a1)),
        ("a2", file.map("a2")?.equals_projectively(&a2)),
        ("a1_inv", file.map("a1_inv")?.equals_projectively(&a1_inv)),
        ("a2_inv", file.map("a2_inv")?.equals_projectively(&a2_inv)),
    ];
    for d in [2, 3] {
        let (lam, lam_inv, _) = shear_names(d);
        let shear = shear_lambda(&ShearSpec::standard(4, d)?);
        checks.push((lam, file.map(lam)?.equals_projectively(&shear.map)));
        let inv_ok = shear
            .inverse
            .as_ref()
            .is_some_and(|i| file.map(lam_inv).is_ok_and(|f| f.equals_projectively(i)));
        checks.push((lam_inv, inv_ok));
    }
    let sigma = sigma_map(file.affine("psi_shear")?, 2)?;
    checks.push((
        "sigma_of_psi_shear",
        sigma.equals_projectively(file.map("lambda_d2")?),
    ));
    let ok = checks.iter().all(|(_, b)| *b);
    let detail = checks
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    Ok((ok, Value::Object(detail)))
}

fn diagonal_g_form(_: &MapFile) -> Result<(bool, Value)> {
    let spec = DiagonalSpec::from_ints(&[2, 3, 5, 7])?;
    let f = diagonal_map(&spec);
    let data = g_form(&f).ok_or_else(|| Error::NotGForm("diagonal map".into()))?;
    let unit = |j: usize| (0..4).map(|i| u32::from(i == j)).collect::<Vec<u32>>();
    let shape = data.degree == 1
        && data.base == vec![0; 4]
        && data.columns.iter().enumerate().all(|(j, c)| *c == unit(j));
    let rho_id = rho(&f)? == LatticeMatrix::identity(4);
    let inverse = f.verify_inverse_pair(&diagonal_map(&spec.inverse()));
    Ok((
        shape && rho_id && inverse,
        json!({ "shape": shape, "rho_identity": rho_id, "inverse_pair": inverse }),
    ))
}

/// Sigma maps `L` with `psi = (X1, X2 + X1^2, ..., Xm + X(m-1)^2)`.
fn triangular_psi(m: usize) -> AffinePolyMap {
    let comps = (1..=m)
        .map(|i| {
            let xi = Polynomial::var(m, i);
            if i == 1 {
                xi
            } else {
                &xi + &Polynomial::var(m, i - 1).pow(2)
            }
        })
        .collect();
    AffinePolyMap::new(comps).expect("no X0")
}

fn sigma_witnesses() -> Result<Vec<(usize, u32, ProjectiveMap)>> {
    let mut out = Vec::new();
    for n in [3, 4] {
        for d in [2, 3] {
            out.push((n, d, sigma_map(&triangular_psi(n - 1), d)?));
        }
    }
    Ok(out)
}

fn lambda0_x0_degree(_: &MapFile) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    for (n, d, f) in sigma_witnesses()? {
        let got = f.component(0).x0_degree()?;
        ok &= got == d;
        detail.insert(format!("n{n}_d{d}"), report::int(got));
    }
    Ok((ok, Value::Object(detail)))
}

fn leading_pair_lambda1(_: &MapFile) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    for (n, d, f) in sigma_witnesses()? {
        let got = leading_pair(f.component(1))?;
        let mut e1 = vec![0; n];
        e1[0] = 1;
        ok &= got
            == LeadingPair {
                x0_degree: d - 1,
                residual: e1,
            };
        detail.insert(
            format!("n{n}_d{d}"),
            json!({ "x0_degree": report::int(got.x0_degree), "residual": report::ints(&got.residual) }),
        );
    }
    Ok((ok, Value::Object(detail)))
}

fn monomial_of_rho_a1(file: &MapFile) -> Result<(bool, Value)> {
    let f = monomial_map(&rho_a1(4)?)?;
    let eq = f == *file.map("a1")?;
    Ok((eq, json!({ "map": report::map(&f), "matches_bundled": eq })))
}

fn newton_body_simplex(_: &MapFile) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    for (n, d, f) in sigma_witnesses()? {
        let r = newton_body_levels(&SystemGenerators::of_map(&f)?, 3)?;
        let simplex = r.levels.iter().all(is_standard_simplex);
        let vol = normalized_volume(r.body())?;
        let good = simplex && r.stable_from == 1 && r.monotone && vol.value == integer(1);
        ok &= good;
        detail.insert(
            format!("n{n}_d{d}"),
            json!({
                "body": report::polytope(r.body()),
                "stable_from": report::int(r.stable_from),
                "volume": report::rational(&vol.value),
            }),
        );
    }
    Ok((ok, Value::Object(detail)))
}

fn pingpong_sl2(_: &MapFile) -> Result<(bool, Value)> {
    let grid = sample_grid(20);
    let plus = pingpong_check(2, &grid, 3)?;
    let minus = pingpong_check(-2, &grid, 3)?;
    let one = pingpong_check(1, &grid, 3)?;
    Ok((
        plus.holds() && minus.holds() && !one.holds(),
        json!({ "m2": plus.holds(), "m_minus2": minus.holds(), "m1": one.holds() }),
    ))
}

fn rho_columns(file: &MapFile) -> Result<(bool, Value)> {
    let r1 = rho(file.map("a1")?)?;
    let r2 = rho(file.map("a2")?)?;
    let id = LatticeMatrix::identity(4);
    let ok = r1 == id.with_column(2, &[1, -1, 1, 0]) && r2 == id.with_column(1, &[-1, 1, 1, 0]);
    Ok((
        ok,
        json!({ "rho_a1": report::matrix(&r1), "rho_a2": report::matrix(&r2) }),
    ))
}

fn rho_images_free(_: &MapFile) -> Result<(bool, Value)> {
    let (a, b) = free_generator_matrices(4)?;
    let cert = no_relation_certificate(&a, &b, 8, 1)?;
    Ok((
        cert.holds(),
        json!({ "words_checked": report::int(cert.words_checked) }),
    ))
}

fn rho_sigma_identity(file: &MapFile) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    let mut maps: Vec<(String, ProjectiveMap)> = sigma_witnesses()?
        .into_iter()
        .map(|(n, d, f)| (format!("sigma_n{n}_d{d}"), f))
        .collect();
    for name in ["lambda_d2", "lambda_d3"] {
        maps.push((name.to_string(), file.map(name)?.clone()));
    }
    for name in ["psi_t1", "psi_t2", "psi_t3"] {
        maps.push((format!("sigma_{name}"), sigma_map(file.affine(name)?, 3)?));
    }
    for (name, f) in maps {
        let m = rho(&f)?;
        let id = m == LatticeMatrix::identity(f.ambient_n());
        ok &= id;
        detail.insert(name, json!(id));
    }
    Ok((ok, Value::Object(detail)))
}

fn shear_inverse_pairs(file: &MapFile) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    for d in [2, 3] {
        let (lam, lam_inv, _) = shear_names(d);
        let v = file.map(lam)?.verify_inverse_pair(file.map(lam_inv)?);
        ok &= v;
        detail.insert(format!("n4_d{d}"), json!(v));
        let shear = shear_lambda(&ShearSpec::standard(5, d)?);
        let w = shear
            .inverse
            .as_ref()
            .is_some_and(|i| shear.map.verify_inverse_pair(i));
        ok &= w;
        detail.insert(format!("n5_d{d}"), json!(w));
    }
    Ok((ok, Value::Object(detail)))
}

fn sigma_fixes_origin(_: &MapFile) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    for (n, d, f) in sigma_witnesses()? {
        let fixed = f.fixes_point(&ProjectivePoint::coordinate_point(n, 0))?;
        ok &= fixed;
        detail.insert(format!("n{n}_d{d}"), json!(fixed));
    }
    Ok((ok, Value::Object(detail)))
}

fn sigma_restricts_on_x0(_: &MapFile) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    for (n, d, f) in sigma_witnesses()? {
        let r = f.restrict_to_hyperplane(0)?;
        let good = r.components[0].is_zero() && r.components[1] == Polynomial::var(n, 1).pow(d);
        ok &= good;
        detail.insert(
            format!("n{n}_d{d}"),
            Value::Array(r.components.iter().map(report::polynomial).collect()),
        );
    }
    Ok((ok, Value::Object(detail)))
}

fn sigma_triangular_inverses(file: &MapFile) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    for name in ["psi_t1", "psi_t2", "psi_t3"] {
        let psi = file.affine(name)?;
        let psi_inv = file.affine(&format!("{name}_inv"))?;
        let (f, inv) = sigma_map_with_inverse(psi, psi_inv, 3)?;
        let back = xi_restrict(&f)?;
        let jac = back.jacobian_det() == Polynomial::one(back.dim());
        let good = inv.is_some() && back == *psi && jac;
        ok &= good;
        detail.insert(
            name.to_string(),
            json!({ "inverse_pair": inv.is_some(), "xi_round_trip": back == *psi, "jacobian_one": jac }),
        );
    }
    Ok((ok, Value::Object(detail)))
}

fn sl_prime_a1_a2(_: &MapFile) -> Result<(bool, Value)> {
    let a = rho_a1(4)?.is_sl_prime();
    let b = rho_a2(4)?.is_sl_prime();
    Ok((a && b, json!({ "rho_a1": a, "rho_a2": b })))
}

fn sl2_free(_: &MapFile) -> Result<(bool, Value)> {
    let cert = no_relation_certificate(&Sl2Matrix::upper(2), &Sl2Matrix::lower(-2), 10, 1)?;
    Ok((
        cert.holds(),
        json!({ "words_checked": report::int(cert.words_checked) }),
    ))
}

fn valuation_standard_basis(_: &MapFile) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    for (n, d, f) in sigma_witnesses()? {
        let vals = (1..=n)
            .map(|j| valuation_of_fraction(f.component(j), f.component(0)))
            .collect::<Result<Vec<_>>>()?;
        let good = vals
            .iter()
            .enumerate()
            .all(|(j, v)| v.iter().enumerate().all(|(i, &x)| x == i64::from(i == j)));
        ok &= good;
        detail.insert(
            format!("n{n}_d{d}"),
            Value::Array(vals.iter().map(|v| report::ints(v)).collect()),
        );
    }
    Ok((ok, Value::Object(detail)))
}

fn volume_standard_simplex(_: &MapFile) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    for n in 1..=4 {
        let v = normalized_volume(&LatticePolytope::standard_simplex(n))?;
        ok &= v.value == integer(1);
        detail.insert(format!("n{n}"), report::rational(&v.value));
    }
    Ok((ok, Value::Object(detail)))
}

fn word_a_fixes_shear(file: &MapFile) -> Result<(bool, Value)> {
    let w: GroupWord = "A".parse()?;
    let mut ok = true;
    let mut detail = serde_json::Map::new();
    for d in [2, 3] {
        let (lam, _, _) = shear_names(d);
        let l = file.map(lam)?;
        let eq = conjugate_by_word(&w, l)?.equals_projectively(l);
        ok &= eq;
        detail.insert(format!("d{d}"), json!(eq));
    }
    Ok((ok, Value::Object(detail)))
}
