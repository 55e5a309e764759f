/*
  Copyright 2026 The manifold-rrt Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/
//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::time::{Duration, Instant};

use manifold_rrt::atlas::BranchOutcome;
use manifold_rrt::bench::problems::{problem, registry, GeometryOverrides, ProblemSpec};
use manifold_rrt::bench::{run_experiment, ExperimentConfig};
use manifold_rrt::manifold::Hypersphere;
use manifold_rrt::sampling::{sample_ball, RrtKdTree};
use manifold_rrt::{
    plan_bidirectional, AmbientPoint, Atlas, AtlasParams, AxisBox, ConstraintSystem, ObstacleSet, PlanResult,
    PlannerConfig, Strategy, StrategyKind,
};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

const SEEDS: u64 = 50;
const TRIAL_BUDGET: Duration = Duration::from_secs(60);

struct Verdict {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn verdict(id: u32, title: &'static str, pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { id, title, pass, detail: detail.into() }
}

fn spec(name: &str) -> ProblemSpec {
    problem(name, &GeometryOverrides::default()).unwrap()
}

/// Random manifold points: ambient box samples pulled onto the manifold.
fn manifold_points(sys: &ConstraintSystem, count: usize, rng: &mut ChaCha8Rng) -> Vec<AmbientPoint> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = sys.ambient_box().sample(rng);
        if let Ok(p) = sys.project_pseudoinverse(&x) {
            if sys.tangent_basis(&p).is_ok() {
                out.push(p);
            }
        }
    }
    out
}

fn unit_direction(n: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| rng.random::<f64>() * 2.0 - 1.0);
        let norm = v.norm();
        if norm > 1e-3 && norm <= 1.0 {
            return v / norm;
        }
    }
}

fn projection_convergence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 1.0f64;
    let mut elapsed = Duration::ZERO;
    let mut detail = Vec::new();
    for spec in registry() {
        let sys = spec.system();
        let bases = manifold_points(sys, 10_000, &mut rng);
        let queries: Vec<AmbientPoint> = bases
            .iter()
            .map(|p| p + unit_direction(sys.n(), &mut rng) * (0.25 * spec.feature_size * rng.random::<f64>()))
            .collect();
        let started = Instant::now();
        let ok = queries
            .iter()
            .filter(|q| matches!(sys.project_pseudoinverse(q), Ok(x) if sys.residual(&x) <= 1e-8))
            .count();
        elapsed += started.elapsed();
        let rate = ok as f64 / queries.len() as f64;
        worst = worst.min(rate);
        detail.push(format!("{} {:.4}", spec.name, rate));
    }
    let pass = worst >= 0.95 && elapsed < Duration::from_secs(5);
    verdict(1, "projection convergence", pass, format!("{}; {:.2?} total", detail.join(", "), elapsed))
}

fn tangent_invariants() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut null_err, mut ortho_err) = (0.0f64, 0.0f64);
    for spec in registry() {
        let sys = spec.system();
        for p in manifold_points(sys, 1000, &mut rng) {
            let phi = sys.tangent_basis(&p).unwrap().basis;
            null_err = null_err.max((sys.jacobian(&p) * &phi).amax());
            let k = phi.ncols();
            ortho_err = ortho_err.max((phi.transpose() * &phi - DMatrix::identity(k, k)).amax());
        }
    }
    let pass = null_err <= 1e-9 && ortho_err <= 1e-9;
    verdict(2, "tangent basis invariants", pass, format!("|J Phi| {null_err:.1e}, |Phi'Phi - I| {ortho_err:.1e}"))
}

fn orthogonal_projection() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst, mut solved, mut tried) = (0.0f64, 0usize, 0usize);
    for spec in registry() {
        let sys = spec.system();
        let rho = spec.defaults.atlas.rho;
        for p in manifold_points(sys, 500, &mut rng) {
            let basis = sys.tangent_basis(&p).unwrap();
            let u = sample_ball(sys.k(), rho, &mut rng);
            let x_prime = basis.lift(&u);
            tried += 1;
            if let Ok(x) = sys.project_orthogonal(&basis, &x_prime) {
                solved += 1;
                let tangential = basis.basis.tr_mul(&(&x - &x_prime)).amax();
                worst = worst.max(sys.residual(&x)).max(tangential);
            }
        }
    }
    let circle = ConstraintSystem::new(Hypersphere::new(2, 1.0), AxisBox::cube(2, -2.0, 2.0)).unwrap();
    let sphere = ConstraintSystem::new(Hypersphere::new(3, 1.0), AxisBox::cube(3, -2.0, 2.0)).unwrap();
    let closed_form = |sys: &ConstraintSystem, center: &[f64], u: &[f64], expected: &[f64]| {
        let basis = sys.tangent_basis(&AmbientPoint::from_column_slice(center)).unwrap();
        let target = basis.lift(&DVector::from_column_slice(u));
        let x = sys.project_orthogonal(&basis, &target).unwrap();
        (x - AmbientPoint::from_column_slice(expected)).amax()
    };
    // Basis signs are implementation defined; the offsets are chosen along
    // the tangent directions the basis reports.
    let circle_basis = circle.tangent_basis(&AmbientPoint::from_column_slice(&[1.0, 0.0])).unwrap();
    let s = circle_basis.basis[(1, 0)].signum();
    let e1 = closed_form(&circle, &[1.0, 0.0], &[0.1 * s], &[0.99f64.sqrt(), 0.1]);
    let sphere_basis = sphere.tangent_basis(&AmbientPoint::from_column_slice(&[0.0, 0.0, 1.0])).unwrap();
    let u = sphere_basis.basis.tr_mul(&DVector::from_column_slice(&[0.3, 0.0, 0.0]));
    let e2 = closed_form(&sphere, &[0.0, 0.0, 1.0], u.as_slice(), &[0.3, 0.0, 0.91f64.sqrt()]);
    let pass = worst <= 1e-8 && e1 <= 1e-9 && e2 <= 1e-9 && solved > 0;
    verdict(
        3,
        "orthogonal projection",
        pass,
        format!("{solved}/{tried} solved, worst residual {worst:.1e}, closed forms {e1:.1e} / {e2:.1e}"),
    )
}

fn jacobian_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for spec in registry() {
        let sys = spec.system();
        for p in manifold_points(sys, 1000, &mut rng) {
            worst = worst.max((sys.jacobian(&p) - sys.jacobian_fd(&p, 1e-6)).amax());
        }
    }
    verdict(4, "analytic vs finite-difference Jacobian", worst <= 1e-5, format!("max entry error {worst:.1e}"))
}

fn random_tree(rng: &mut ChaCha8Rng, dim: usize, points: usize, r: f64) -> RrtKdTree {
    let mut tree = RrtKdTree::new(AxisBox::cube(dim, 0.0, 1.0), r);
    let mut at: Vec<f64> = (0..dim).map(|_| rng.random()).collect();
    for id in 0..points {
        tree.insert(AmbientPoint::from_column_slice(&at), id);
        // Random walk with occasional jumps and duplicates.
        match rng.random_range(0..10) {
            0 => at = (0..dim).map(|_| rng.random()).collect(),
            1 => {}
            _ => at.iter_mut().for_each(|v| *v = (*v + 0.1 * (rng.random::<f64>() - 0.5)).clamp(0.0, 1.0)),
        }
    }
    tree
}

fn kdtree_sampler(runs: &[Run]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();

    // Disjointness and volume bookkeeping.
    let mut largest = 0;
    for trial in 0..300 {
        let dim = 2 + trial % 3;
        let (points, r) = (rng.random_range(1..400), 0.02 + 0.1 * rng.random::<f64>());
        let tree = random_tree(&mut rng, dim, points, r);
        let leaves: Vec<_> = tree.leaves().collect();
        if leaves.len() > 64 {
            continue;
        }
        largest = largest.max(leaves.len());
        for (i, a) in leaves.iter().enumerate() {
            for b in &leaves[i + 1..] {
                if a.rect.interiors_overlap(&b.rect) || a.subdomain.interiors_overlap(&b.subdomain) {
                    failures.push(format!("overlapping leaves in trial {trial}"));
                }
            }
        }
        let summed: f64 = leaves.iter().map(|l| l.rect.volume()).sum();
        if (tree.total_volume() - summed).abs() > 1e-12 * summed {
            failures.push(format!("volume mismatch in trial {trial}"));
        }
    }

    // Nearest neighbour against a linear scan.
    for trial in 0..1000 {
        let dim = 1 + trial % 5;
        let n = rng.random_range(1..200);
        let mut tree = RrtKdTree::new(AxisBox::cube(dim, -1.0, 1.0), 0.1);
        let mut pts = Vec::new();
        for id in 0..n {
            // Coarse grid coordinates produce ties.
            let p = AmbientPoint::from_fn(dim, |_, _| (rng.random_range(-8..=8) as f64) / 8.0);
            tree.insert(p.clone(), id);
            pts.push(p);
        }
        let q = AmbientPoint::from_fn(dim, |_, _| rng.random::<f64>() * 2.0 - 1.0);
        let brute = pts
            .iter()
            .enumerate()
            .map(|(i, p)| (i, (p - &q).norm()))
            .fold((usize::MAX, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best });
        let (id, dist) = tree.nearest(&q).unwrap();
        if id != brute.0 || dist != brute.1 {
            failures.push(format!("nearest mismatch in trial {trial}"));
        }
    }

    // Chi-square over quadrants of every leaf rectangle.
    let tree = random_tree(&mut rng, 2, 120, 0.05);
    let mut bins = Vec::new();
    for leaf in tree.leaves() {
        let c = leaf.rect.center();
        for q in 0..4 {
            let mut b = leaf.rect.clone();
            if q & 1 == 0 { b.upper[0] = c[0] } else { b.lower[0] = c[0] }
            if q & 2 == 0 { b.upper[1] = c[1] } else { b.lower[1] = c[1] }
            bins.push(b);
        }
    }
    let draws = 100_000;
    let mut counts = vec![0usize; bins.len()];
    for _ in 0..draws {
        let x = tree.sample(&mut rng).unwrap();
        // Half-open membership keeps shared faces in a single bin.
        let hit = bins.iter().position(|b| (0..2).all(|i| b.lower[i] <= x[i] && x[i] < b.upper[i]));
        match hit {
            Some(i) => counts[i] += 1,
            None => failures.push("sample outside every rectangle".into()),
        }
    }
    let total = tree.total_volume();
    let stat: f64 = bins
        .iter()
        .zip(&counts)
        .map(|(b, &c)| {
            let e = draws as f64 * b.volume() / total;
            (c as f64 - e).powi(2) / e
        })
        .sum();
    let p = 1.0 - ChiSquared::new((bins.len() - 1) as f64).unwrap().cdf(stat);
    if p.is_nan() || p <= 0.001 {
        failures.push(format!("chi-square p = {p:.2e}"));
    }

    let kd_runs: Vec<_> = runs.iter().filter(|r| r.kind == StrategyKind::KdTree).collect();
    let rejected: u64 = kd_runs.iter().map(|r| r.result.stats.rejected).sum();
    if rejected != 0 {
        failures.push(format!("{rejected} kd-tree rejections"));
    }
    failures.truncate(5);
    let pass = failures.is_empty() && largest > 32;
    let detail = if pass {
        format!(
            "trees up to {largest} leaves, chi-square p = {p:.3} over {} bins, 0 rejections in {} runs",
            bins.len(),
            kd_runs.len()
        )
    } else {
        failures.join("; ")
    };
    verdict(5, "kd-tree sampler", pass, detail)
}

struct Run {
    problem: &'static str,
    kind: StrategyKind,
    seed: u64,
    config: PlannerConfig,
    result: PlanResult,
}

fn run_one(spec: &ProblemSpec, kind: StrategyKind, strategy: Strategy, seed: u64) -> Run {
    let mut config = PlannerConfig::new(strategy, seed);
    config.timeout = TRIAL_BUDGET;
    let result = plan_bidirectional(&spec.problem, &config).unwrap();
    Run { problem: spec.name, kind, seed, config, result }
}

fn run_all(spec: &ProblemSpec, kinds: &[StrategyKind]) -> Vec<Run> {
    let mut out = Vec::new();
    for &kind in kinds {
        for seed in 0..SEEDS {
            out.push(run_one(spec, kind, spec.defaults.strategy(kind), seed));
        }
    }
    out
}

struct Summary {
    success: f64,
    cd_tests: f64,
    col_bran: f64,
    rej: f64,
}

/// Means over successful trials, success over all of them.
fn summary(runs: &[Run], problem: &str, kind: StrategyKind) -> Summary {
    let all: Vec<_> = runs.iter().filter(|r| r.problem == problem && r.kind == kind).collect();
    let ok: Vec<_> = all.iter().filter(|r| r.result.success).collect();
    let mean = |f: &dyn Fn(&Run) -> f64| ok.iter().map(|r| f(r)).sum::<f64>() / ok.len().max(1) as f64;
    Summary {
        success: ok.len() as f64 / all.len().max(1) as f64,
        cd_tests: mean(&|r| r.result.stats.cd_tests as f64),
        col_bran: mean(&|r| r.result.stats.collision_branch_ratio),
        rej: mean(&|r| r.result.stats.rejection_ratio),
    }
}

fn dynamic_domain_trend(runs: &[Run]) -> Verdict {
    let a = summary(runs, "torus-slot", StrategyKind::Ambient);
    let d = summary(runs, "torus-slot", StrategyKind::DynamicDomain);
    let pass = d.cd_tests < a.cd_tests && d.col_bran < a.col_bran && d.success >= a.success;
    verdict(
        6,
        "dynamic domain beats ambient sampling on torus-slot",
        pass,
        format!(
            "CD tests {:.0} vs {:.0}, col. bran. {:.3} vs {:.3}, success {} vs {}",
            d.cd_tests, a.cd_tests, d.col_bran, a.col_bran, d.success, a.success
        ),
    )
}

fn infinite_radius_equivalence(runs: &[Run]) -> Verdict {
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for spec in registry() {
        for seed in 0..SEEDS {
            let ambient = runs
                .iter()
                .find(|r| r.problem == spec.name && r.kind == StrategyKind::Ambient && r.seed == seed)
                .map(|r| r.result.clone())
                .unwrap_or_else(|| run_one(&spec, StrategyKind::Ambient, Strategy::Ambient, seed).result);
            let dd = run_one(&spec, StrategyKind::DynamicDomain, Strategy::DynamicDomain { big_r: f64::INFINITY }, seed);
            compared += 1;
            if !ambient.same_outcome(&dd.result) {
                mismatches.push(format!("{} seed {seed}", spec.name));
            }
        }
    }
    let pass = mismatches.is_empty();
    let detail = if pass { format!("{compared} seed pairs identical") } else { mismatches.join(", ") };
    verdict(7, "R = infinity reproduces ambient sampling", pass, detail)
}

fn atlas_dd_trend(runs: &[Run]) -> Verdict {
    let a = summary(runs, "sphere-wall", StrategyKind::Atlas);
    let d = summary(runs, "sphere-wall", StrategyKind::AtlasDd);
    let spec = spec("sphere-wall");
    let mut frozen = 0;
    for seed in 0..SEEDS {
        let plain = runs
            .iter()
            .find(|r| r.problem == "sphere-wall" && r.kind == StrategyKind::Atlas && r.seed == seed)
            .unwrap();
        let mut params = spec.defaults.atlas;
        params.alpha = 0.0;
        let zero = run_one(&spec, StrategyKind::AtlasDd, Strategy::AtlasDd(params), seed);
        if plain.result.same_outcome(&zero.result) {
            frozen += 1;
        }
    }
    let pass = d.success >= a.success && d.rej < a.rej && frozen == SEEDS;
    verdict(
        8,
        "atlas-dd beats plain atlas on sphere-wall",
        pass,
        format!(
            "success {} vs {}, rejection {:.3} vs {:.3}, alpha = 0 identical on {frozen}/{SEEDS} seeds",
            d.success, a.success, d.rej, a.rej
        ),
    )
}

fn radius_floor(runs: &[Run], reports: usize, report_violations: u64) -> Verdict {
    let atlas_runs: Vec<_> = runs.iter().filter(|r| r.config.strategy.atlas_params().is_some()).collect();
    let violations: u64 = atlas_runs.iter().map(|r| r.result.stats.radius_floor_violations).sum::<u64>() + report_violations;
    verdict(
        9,
        "sampling radius never below rho",
        violations == 0,
        format!("{violations} violations over {} atlas runs and {reports} report rows", atlas_runs.len()),
    )
}

fn scaling_arithmetic() -> Verdict {
    let mut atlas = Atlas::new(AtlasParams::new(0.1, 1.0, 0.1)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut expected = 1.0f64;
    let mut exact = atlas.scale() == 1.0;
    for _ in 0..1000 {
        if rng.random_bool(0.5) {
            atlas.update_scaling(BranchOutcome::Succeeded);
            expected *= 1.0 + 0.1;
        } else {
            atlas.update_scaling(BranchOutcome::Collided);
            expected *= 1.0 - 0.1;
        }
        exact &= atlas.scale() == expected;
    }
    let mut one = Atlas::new(AtlasParams::new(0.1, 1.0, 0.1)).unwrap();
    one.update_scaling(BranchOutcome::Succeeded);
    exact &= one.scale() == 1.1;
    let mut one = Atlas::new(AtlasParams::new(0.1, 1.0, 0.1)).unwrap();
    one.update_scaling(BranchOutcome::Collided);
    exact &= one.scale() == 0.9;
    verdict(10, "scaling arithmetic", exact, "1000 random updates and the two single-step cases")
}

fn determinism(dir: &std::path::Path) -> (Verdict, usize, u64) {
    let mut identical = true;
    let mut rows = 0;
    let mut violations = 0;
    for name in ["circle2d", "chain5"] {
        let mut texts = Vec::new();
        for attempt in 0..2 {
            let mut cfg = ExperimentConfig::new(name);
            cfg.trials = 10;
            cfg.seed_base = 100;
            cfg.timing = false;
            cfg.timeout = TRIAL_BUDGET;
            cfg.out = Some(dir.join(format!("{name}-{attempt}.csv")));
            let report = run_experiment(&cfg).unwrap();
            rows += report.trials.len();
            violations += report.trials.iter().map(|t| t.radius_floor_violations).sum::<u64>();
            texts.push(std::fs::read(cfg.out.as_ref().unwrap()).unwrap());
        }
        identical &= texts[0] == texts[1];
    }
    (verdict(11, "byte-identical reports", identical, "circle2d and chain5, 5 strategies x 10 seeds"), rows, violations)
}

fn path_validity(runs: &[Run]) -> Verdict {
    let mut problems = Vec::new();
    let mut checked = 0;
    for run in runs.iter().filter(|r| r.result.success) {
        let spec = spec(run.problem);
        let sys = spec.system();
        let obstacles = ObstacleSet::new(spec.problem.obstacles.clone());
        let path = &run.result.path;
        checked += 1;
        let on = path.iter().all(|x| sys.residual(x) <= 1e-8);
        let steps = path.windows(2).all(|w| (&w[1] - &w[0]).norm() <= 1.1 * run.config.delta);
        let ends = path.first() == Some(&spec.problem.start) && path.last() == Some(&spec.problem.goal);
        let free = path.iter().all(|x| !obstacles.in_collision_uncounted(x));
        if !(on && steps && ends && free) {
            problems.push(format!("{} {} seed {}", run.problem, run.kind, run.seed));
        }
    }
    problems.truncate(5);
    let pass = problems.is_empty() && checked > 0;
    let detail = if pass { format!("{checked} paths checked") } else { problems.join(", ") };
    verdict(12, "path validity", pass, detail)
}

fn solves_reference_problems(runs: &[Run]) -> Verdict {
    let mut detail = Vec::new();
    let mut pass = true;
    for name in ["circle2d", "torus-slot"] {
        for kind in StrategyKind::ALL {
            let of: Vec<_> = runs.iter().filter(|r| r.problem == name && r.kind == kind).collect();
            let ok = of.iter().filter(|r| r.result.success && r.result.elapsed <= TRIAL_BUDGET).count();
            pass &= of.len() == SEEDS as usize && ok == of.len();
            if ok != of.len() {
                detail.push(format!("{name}/{kind}: {ok}/{}", of.len()));
            }
        }
    }
    let detail = if pass { format!("all five strategies, {SEEDS}/{SEEDS} on both problems") } else { detail.join(", ") };
    verdict(13, "circle2d and torus-slot always solved", pass, detail)
}

fn main() {
    let started = Instant::now();
    let mut verdicts = vec![projection_convergence(), tangent_invariants(), orthogonal_projection(), jacobian_oracle()];

    let mut runs = Vec::new();
    for name in ["circle2d", "torus-slot"] {
        runs.extend(run_all(&spec(name), &StrategyKind::ALL));
    }
    runs.extend(run_all(&spec("sphere-wall"), &[StrategyKind::Ambient, StrategyKind::Atlas, StrategyKind::AtlasDd]));
    runs.extend(run_all(&spec("chain5"), &[StrategyKind::Ambient]));

    verdicts.push(kdtree_sampler(&runs));
    verdicts.push(dynamic_domain_trend(&runs));
    verdicts.push(infinite_radius_equivalence(&runs));
    verdicts.push(atlas_dd_trend(&runs));
    let dir = tempfile::tempdir().unwrap();
    let (det, rows, report_violations) = determinism(dir.path());
    verdicts.push(radius_floor(&runs, rows, report_violations));
    verdicts.push(scaling_arithmetic());
    verdicts.push(det);
    verdicts.push(path_validity(&runs));
    verdicts.push(solves_reference_problems(&runs));
    verdicts.sort_by_key(|v| v.id);

    for v in &verdicts {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {}: {}", v.id, v.title, v.detail);
    }
    let failed = verdicts.iter().filter(|v| !v.pass).count();
    println!("acceptance: {}/{} passed in {:.1?}", verdicts.len() - failed, verdicts.len(), started.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
