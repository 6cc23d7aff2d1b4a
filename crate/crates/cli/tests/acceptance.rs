//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiflat::arith::{liouville_oracle, moebius_oracle, sieve_liouville, sieve_moebius};
use semiflat::flatness::{
    cvt_decomposition_residual, default_grid, lacunary_limit, lower_bound_chain, semiflat_curve, Family,
};
use semiflat::norms::{mz_discrete_mean, norm_exact_even, norm_sampled, sup_norm_estimate};
use semiflat::polys::{build_rudin_shapiro, eval_at_roots, CoeffPoly, GapKind};
use semiflat::zeta::{
    bose_integral_check, c, dirichlet_identity_check, strip_grid, xi_fn, zeta_eta, zeta_fe, DirichletIdentity,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sieve_correctness() -> Check {
    let n = 100_000u64;
    let start = Instant::now();
    let l = sieve_liouville(n).map_err(|e| e.to_string())?;
    let m = sieve_moebius(n).map_err(|e| e.to_string())?;
    let mut bad = 0u64;
    for k in 1..=n {
        bad += (l.value(k).unwrap() != liouville_oracle(k).unwrap()) as u64;
        bad += (m.value(k).unwrap() != moebius_oracle(k).unwrap()) as u64;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(bad == 0 && secs < 5.0, format!("{bad} discrepancies, {secs:.2} s"))
}

fn partial_sums() -> Check {
    let n = 1_000_000u64;
    let l = sieve_liouville(n).map_err(|e| e.to_string())?;
    let m = sieve_moebius(n).map_err(|e| e.to_string())?;
    let (l10, m10) = (l.partial_sum(10).unwrap(), m.partial_sum(10).unwrap());
    let mut bad = 0u64;
    let (mut pl, mut pm) = (0i64, 0i64);
    for x in 1..=n {
        let (sl, sm) = (l.partial_sum(x).unwrap(), m.partial_sum(x).unwrap());
        bad += (sl - pl != l.value(x).unwrap() as i64) as u64;
        bad += (sm - pm != m.value(x).unwrap() as i64) as u64;
        (pl, pm) = (sl, sm);
    }
    ensure(
        l10 == 0 && m10 == -1 && bad == 0,
        format!("L(10) = {l10}, M(10) = {m10}, {bad} prefix violations up to {n}"),
    )
}

fn norm_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut worst_sampled, mut worst_quad) = (0f64, 0f64);
    for _ in 0..50 {
        let deg = rng.random_range(1..=256usize);
        let signs: Vec<i8> = (0..=deg).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
        let p = CoeffPoly::from_signs(&signs);
        for two_m in [2u32, 4, 6] {
            let exact = norm_exact_even(&p, two_m).map_err(|e| e.to_string())?.value;
            let sampled = norm_sampled(&p, two_m as f64, 1e-12).map_err(|e| e.to_string())?.value;
            worst_sampled = worst_sampled.max((sampled - exact).abs() / exact);
            let nodes = two_m as usize * deg + 1;
            let mean = mz_discrete_mean(&p, two_m as f64, nodes).map_err(|e| e.to_string())?;
            let want = exact.powi(two_m as i32);
            worst_quad = worst_quad.max((mean - want).abs() / want);
        }
    }
    ensure(
        worst_sampled < 1e-7 && worst_quad < 1e-10,
        format!("max sampled rel err {worst_sampled:.2e}, max quadrature rel err {worst_quad:.2e}"),
    )
}

fn lower_bound_chain_and_curve() -> Check {
    let n_max = 1u64 << 16;
    let table = sieve_liouville(n_max).map_err(|e| e.to_string())?;
    let grid = default_grid(n_max);
    let mut violations = 0;
    for &n in &grid {
        let r = lower_bound_chain(n, 4.0, &table).map_err(|e| e.to_string())?;
        violations += (r.single_term > r.node_mean) as u32;
    }
    let start = Instant::now();
    let curve = semiflat_curve(Family::Liouville, 4.0, &grid, &table).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let last = curve.points.last().unwrap();
    ensure(
        violations == 0 && curve.all_ok() && last.n == n_max && secs < 600.0,
        format!(
            "{} grid points, {violations} violations; curve to N = {} in {secs:.2} s, stat = {:.6}, exponent {:.4}",
            grid.len(),
            last.n,
            last.stat,
            curve.fitted_exponent().unwrap_or(f64::NAN)
        ),
    )
}

fn cvt_identity() -> Check {
    let table = sieve_liouville(4096).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0f64;
    for _ in 0..50 {
        let n = rng.random_range(2..=4096u64);
        worst = worst.max(cvt_decomposition_residual(n, 4.0, &table).map_err(|e| e.to_string())?);
    }
    ensure(worst < 1e-10, format!("max residual {worst:.2e} over 50 N"))
}

fn zeta_suite() -> Check {
    let err = |e: semiflat::Error| e.to_string();
    let mut notes = Vec::new();
    let mut ok = true;
    let z2 = (zeta_eta(c(2.0, 0.0)).map_err(err)? - PI * PI / 6.0).norm();
    ok &= z2 < 1e-10;
    notes.push(format!("zeta(2) err {z2:.1e}"));

    let n = 100_000u64;
    let mu = sieve_moebius(n).map_err(err)?;
    let l = sieve_liouville(n).map_err(err)?;
    let mut worst = 0f64;
    for x in [2.0, 3.0] {
        for which in DirichletIdentity::ALL {
            let t = if which == DirichletIdentity::LambdaZeta2Zeta { &l } else { &mu };
            let r = dirichlet_identity_check(which, c(x, 0.0), n, t).map_err(err)?;
            worst = worst.max(r.residual / (10.0 * r.envelope));
        }
    }
    ok &= worst < 1.0;
    notes.push(format!("identities residual/bound max {worst:.2e}"));

    let mut xi = 0f64;
    for s in strip_grid(50, 20.0, semiflat_cli::DEFAULT_SEED) {
        xi = xi.max((xi_fn(s).map_err(err)? - xi_fn(1.0 - s).map_err(err)?).norm());
    }
    ok &= xi < 1e-8;
    notes.push(format!("xi symmetry {xi:.1e}"));

    let tz = zeta_fe(c(-2.0, 0.0)).map_err(err)?.norm().max(zeta_fe(c(-4.0, 0.0)).map_err(err)?.norm());
    ok &= tz < 1e-8;
    notes.push(format!("trivial zeros {tz:.1e}"));

    let mut bose = 0f64;
    for x in [2.0, 4.0] {
        bose = bose.max(bose_integral_check(c(x, 0.0)).map_err(err)?.residual);
    }
    ok &= bose < 1e-8;
    notes.push(format!("Bose {bose:.1e}"));
    ensure(ok, notes.join(", "))
}

fn rudin_shapiro() -> Check {
    let (mut worst_id, mut worst_sup) = (0f64, f64::NEG_INFINITY);
    for k in 0..=12u32 {
        let (p, q) = build_rudin_shapiro(k).map_err(|e| e.to_string())?;
        let m = 1usize << (k + 3);
        let pv = eval_at_roots(&p, m).map_err(|e| e.to_string())?;
        let qv = eval_at_roots(&q, m).map_err(|e| e.to_string())?;
        let target = (1u64 << (k + 1)) as f64;
        for (a, b) in pv.values.iter().zip(&qv.values) {
            worst_id = worst_id.max(((a.norm_sqr() + b.norm_sqr()) - target).abs() / target);
        }
        let sup = sup_norm_estimate(&p, 16).map_err(|e| e.to_string())?.value;
        worst_sup = worst_sup.max(sup / 2f64.powf((k + 1) as f64 / 2.0));
    }
    ensure(
        worst_id < 1e-9 && worst_sup <= 1.0 + 1e-9,
        format!("identity rel err {worst_id:.1e}, max sup/bound {worst_sup:.6}"),
    )
}

fn lacunary() -> Check {
    let r = lacunary_limit(16, 1.0, GapKind::Geometric(2), 1_000_000, semiflat_cli::DEFAULT_SEED)
        .map_err(|e| e.to_string())?;
    let gap = (r.empirical - r.mc_reference).abs() / r.mc_reference;
    ensure(
        gap < 0.15,
        format!(
            "empirical {:.6}, Gamma(3/2) {:.6}, Monte-Carlo {:.6}, relative gap {:.2}%",
            r.empirical,
            r.gamma_reference,
            r.mc_reference,
            100.0 * gap
        ),
    )
}

fn csv_bodies(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

fn determinism() -> Check {
    let root = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut runs = Vec::new();
    for (name, threads) in [("a", "1"), ("b", "4")] {
        let out = root.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_semiflat"))
            .args(["all", "--out", out.to_str().unwrap()])
            .env("RAYON_NUM_THREADS", threads)
            .env_remove("SEMIFLAT_CACHE_DIR")
            .status()
            .map_err(|e| e.to_string())?;
        if status.code() != Some(0) {
            return Err(format!("suite exited with {status}"));
        }
        runs.push(csv_bodies(&out));
    }
    let same = runs[0] == runs[1];
    ensure(
        same && !runs[0].is_empty(),
        format!("{} CSV files, identical: {same}", runs[0].len()),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("sieve agrees with factorization oracle to 1e5 in < 5 s", sieve_correctness),
        ("partial sums L(10), M(10) and prefix law to 1e6", partial_sums),
        ("sampled vs exact even norms and exact quadrature law", norm_equivalence),
        ("single-node lower bound at alpha = 4 and curve to 2^16 in < 10 min", lower_bound_chain_and_curve),
        ("node-at-one decomposition of the statistic to 1e-10", cvt_identity),
        ("zeta, Dirichlet identity, xi, trivial zero and Bose checks", zeta_suite),
        ("Rudin-Shapiro identity and sup bound for k <= 12", rudin_shapiro),
        ("lacunary moment within 15% of Monte-Carlo reference", lacunary),
        ("default suite CSV bodies byte-identical across runs", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {}. {name} [{detail}] ({secs:.1} s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {}. {name} [{detail}] ({secs:.1} s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
