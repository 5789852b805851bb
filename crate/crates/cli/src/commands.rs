use mobius_walk::limiting::{
    classify_extrema, degeneracy_report, empirical_average_distribution, eigenvalue_coincidences,
    expected_extremum_shape, is_degenerate_regime, limiting_distribution_closed_form,
    limiting_distribution_general, DEGENERACY_TOL,
};
use mobius_walk::mixing::{empirical_mixing_time, log_log_slope, log_spaced_times};
use mobius_walk::spectral::Eigensystem;
use mobius_walk::walk::{position_distribution, step};
use serde_json::{json, Value};

use crate::args::Method;
use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{Artifact, Cell};

pub const DEFAULT_EVOLVE_STEPS: u64 = 100;
pub const DEFAULT_AVERAGE_STEPS: u64 = 100_000;
pub const DEFAULT_MIXING_STEPS: u64 = 10_000;
const SAMPLES_PER_DECADE: usize = 20;

fn meta(command: &str, cfg: &RunConfig) -> Value {
    json!({ "command": command, "config": cfg })
}

/// `t,v,p` for `t = 0..=T`, by direct stepping.
pub fn cmd_evolve(cfg: &RunConfig) -> Result<Artifact> {
    let params = cfg.params()?;
    let steps = cfg.steps_or(DEFAULT_EVOLVE_STEPS);
    let mut art = Artifact::new(vec!["t", "v", "p"], meta("evolve", cfg));
    let mut psi = params.initial_state();
    let mut worst = 0.0f64;
    for t in 0..=steps {
        if t > 0 {
            psi = step(&psi, &params)?;
        }
        let p = position_distribution(&psi);
        worst = worst.max((p.iter().sum::<f64>() - 1.0).abs());
        for (v, x) in p.into_iter().enumerate() {
            art.push(vec![Cell::Int(t), Cell::Int(v as u64), Cell::Float(x)]);
        }
    }
    art.meta["steps"] = json!(steps);
    art.meta["max_sum_error"] = json!(worst);
    Ok(art)
}

/// `v,pi` by the chosen method, with a regime summary and a cross-check
/// against a second method.
pub fn cmd_limdist(cfg: &RunConfig) -> Result<Artifact> {
    let params = cfg.params()?;
    let report = degeneracy_report(&params, DEGENERACY_TOL)?;
    let general = || limiting_distribution_general(&params, &report);
    let closed_applies = is_degenerate_regime(cfg.nodes, cfg.alpha) && cfg.init[..2] == [0, 0];

    let dist = match cfg.method {
        Method::Empirical => empirical_average_distribution(&params, cfg.steps_or(DEFAULT_AVERAGE_STEPS))?,
        Method::General => general()?,
        Method::Closed => limiting_distribution_closed_form(&params)?,
    };
    let cross = match cfg.method {
        Method::General if closed_applies => Some(("closed", limiting_distribution_closed_form(&params)?)),
        Method::General => None,
        _ => Some(("general", general()?)),
    };
    let cross = match cross {
        Some((name, other)) => json!({ "against": name, "max_abs_diff": dist.max_abs_diff(&other)? }),
        None => Value::Null,
    };

    let mut art = Artifact::new(vec!["v", "pi"], meta("limdist", cfg));
    for (v, x) in dist.clamped().into_iter().enumerate() {
        art.push(vec![Cell::Int(v as u64), Cell::Float(x)]);
    }
    let p0 = cfg.init[2];
    let expected = (cfg.init[..2] == [0, 0])
        .then(|| expected_extremum_shape(cfg.nodes, cfg.alpha))
        .flatten();
    art.meta["method"] = json!(cfg.method);
    if cfg.method == Method::Empirical {
        art.meta["steps"] = json!(cfg.steps_or(DEFAULT_AVERAGE_STEPS));
    }
    art.meta["regime"] = json!({
        "alpha_class": report.alpha_class,
        "degenerate_regime": is_degenerate_regime(cfg.nodes, cfg.alpha),
        "is_uniform": report.is_uniform,
        "pair_count": report.pairs.len(),
        "excluded_k": report.excluded_k,
        "index_formula_consistent": report.index_formula_consistent(),
    });
    art.meta["cross_check"] = cross;
    art.meta["shape"] = json!({
        "observed": classify_extrema(&dist, p0),
        "expected": expected,
    });
    art.meta["sum"] = json!(dist.total());
    art.meta["max_deviation_from_uniform"] = json!(dist.max_deviation_from_uniform());
    Ok(art)
}

/// `k,phi_00,phi_01,phi_10,phi_11`.
pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Artifact> {
    let params = cfg.params()?;
    let eig = Eigensystem::compute(&params)?;
    let numeric = Eigensystem::numeric(&params)?;
    let mut art = Artifact::new(
        vec!["k", "phi_00", "phi_01", "phi_10", "phi_11"],
        meta("spectrum", cfg),
    );
    let mut worst = 0.0f64;
    for (k, (block, num)) in eig.blocks().iter().zip(numeric.blocks()).enumerate() {
        let mut row = vec![Cell::Int(k as u64)];
        for (a, b) in block.iter().zip(num) {
            row.push(Cell::Float(a.eigenphase));
            worst = worst.max((a.eigenvalue - b.eigenvalue).norm());
        }
        art.push(row);
    }
    let coincidences: Vec<Value> = eigenvalue_coincidences(&eig, DEGENERACY_TOL)
        .into_iter()
        .map(|c| {
            json!({
                "first": { "label": c.first.0.to_string(), "k": c.first.1 },
                "second": { "label": c.second.0.to_string(), "k": c.second.1 },
                "gap": c.gap,
            })
        })
        .collect();
    art.meta["min_gap"] = json!(mobius_walk::mixing::min_eigen_gap(&eig));
    art.meta["coincidences"] = json!(coincidences);
    art.meta["analytic_vs_numeric_max_diff"] = json!(worst);
    art.meta["numeric_fallback_k"] = json!(eig.fallback_momenta());
    Ok(art)
}

/// `t,distance,bound` at log-spaced times, with `M_ε` in the metadata.
pub fn cmd_mixing(cfg: &RunConfig) -> Result<Artifact> {
    let params = cfg.params()?;
    let t_max = cfg.steps_or(DEFAULT_MIXING_STEPS);
    let report = empirical_mixing_time(&params, cfg.epsilon, t_max)?;
    let mut art = Artifact::new(vec!["t", "distance", "bound"], meta("mixing", cfg));
    for t in log_spaced_times(t_max, SAMPLES_PER_DECADE) {
        let i = (t - 1) as usize;
        art.push(vec![
            Cell::Int(t),
            Cell::Float(report.distance_series[i].1),
            Cell::Float(report.bound_series[i].1),
        ]);
    }
    art.meta["epsilon"] = json!(report.epsilon);
    art.meta["m_epsilon"] = json!(report.m_epsilon);
    art.meta["t_max"] = json!(t_max);
    art.meta["norm"] = json!(report.norm_kind);
    art.meta["min_gap"] = json!(report.min_gap);
    art.meta["worst_bound_excess"] = json!(report.worst_bound_excess());
    art.meta["log_log_slope"] = json!(log_log_slope(&report.distance_series, 100, t_max));
    Ok(art)
}
