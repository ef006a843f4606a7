use std::path::PathBuf;

use clap::Args;
use num_bigint::BigInt;
use num_traits::{One, Signed};

use sepprob_core::formula::{
    boundary_probability, p_derivative, p_eval, p_recognized, separable_volume, special_values_table,
    telescope_check, FormulaEvaluation, Value,
};
use sepprob_core::montecarlo::{run, target_probability, Algebra, MCConfig};
use sepprob_core::numerics::elementary::ln_ball;
use sepprob_core::numerics::{fit_log_slope, parse_decimal, parse_rational, GUARD_BITS};
use sepprob_core::reconstruction::{fit_approximant_degree, MomentSequence};
use sepprob_core::{AlphaValue, Error, Rational, RealBall, Result};

use crate::output::{named, Field, Report};
use crate::GlobalArgs;

/// Rounding bound quoted for double-precision determinants.
const DET_ROUNDOFF: f64 = 1e-15;

/// Alpha must be an exact `p/q`; decimals are refused.
fn alpha_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Tolerances and interval endpoints: `p/q` or a decimal, read exactly.
fn tolerance_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).or_else(|_| parse_decimal(s)).map_err(|e| e.to_string())
}

fn algebra_arg(s: &str) -> std::result::Result<Algebra, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn default_target(prec: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << prec as usize)
}

fn value_field(v: Value) -> Field {
    match v {
        Value::Exact(r) => Field::Exact(r),
        Value::Ball(b) => Field::Ball(b),
    }
}

/// `P(alpha)`: recognized exactly on the half-integer lattice, a ball
/// elsewhere. Recognition failures fall back to the certified enclosure.
fn p_field(alpha: &AlphaValue, e: &FormulaEvaluation, prec: u32) -> Result<(Field, RealBall)> {
    if alpha.is_half_integer() {
        match p_recognized(alpha, prec) {
            Ok(r) => {
                let ball = RealBall::from_rational(&r, prec + GUARD_BITS);
                return Ok((Field::Exact(r), ball));
            }
            Err(Error::Ambiguity(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let ball = e.enclosure(prec);
    Ok((Field::Ball(ball.clone()), ball))
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Parameter as p/q.
    #[arg(long, allow_hyphen_values = true, value_parser = alpha_arg)]
    pub alpha: Rational,

    /// Bound on the omitted tail (p/q or decimal); defaults to 2^-prec.
    #[arg(long, value_parser = tolerance_arg)]
    pub target_error: Option<Rational>,
}

pub fn eval(a: &EvalArgs, g: &GlobalArgs) -> Result<Report> {
    let alpha = AlphaValue::new(a.alpha.clone());
    let target = a.target_error.clone().unwrap_or_else(|| default_target(g.prec));
    let e = p_eval(&alpha, &target, g.prec)?;
    let (p, _) = p_field(&alpha, &e, g.prec)?;
    let mut report = Report::new("eval")
        .param("alpha", Field::Exact(a.alpha.clone()))
        .param("target_error", Field::Exact(target))
        .param("prec", Field::Int(g.prec.into()));
    report.rows.push(vec![
        named("alpha", Field::Exact(a.alpha.clone())),
        named("path", Field::Text(if alpha.is_half_integer() { "exact" } else { "ball" }.into())),
        named("p", p),
        named("terms", Field::Int(e.terms_used as i128)),
        named("tail_bound", Field::Exact(e.tail_bound.clone())),
        named("limit_evaluated", Field::Bool(e.limit_evaluated)),
    ]);
    Ok(report)
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = alpha_arg, default_value = "1/2")]
    pub from: Rational,

    #[arg(long, allow_hyphen_values = true, value_parser = alpha_arg, default_value = "32")]
    pub to: Rational,

    #[arg(long, value_parser = alpha_arg, default_value = "1/2")]
    pub step: Rational,
}

pub fn table(a: &TableArgs, g: &GlobalArgs) -> Result<Report> {
    if !a.step.is_positive() {
        return Err(Error::Argument("step must be positive".into()));
    }
    if a.from > a.to {
        return Err(Error::Argument("empty range: from > to".into()));
    }
    let target = default_target(g.prec);
    let mut alphas = Vec::new();
    let mut x = a.from.clone();
    while x <= a.to {
        alphas.push(x.clone());
        x += &a.step;
    }
    let mut values = Vec::with_capacity(alphas.len());
    for alpha in &alphas {
        let alpha = AlphaValue::new(alpha.clone());
        let e = p_eval(&alpha, &target, g.prec)?;
        values.push(p_field(&alpha, &e, g.prec)?);
    }
    let mut report = Report::new("table")
        .param("from", Field::Exact(a.from.clone()))
        .param("to", Field::Exact(a.to.clone()))
        .param("step", Field::Exact(a.step.clone()))
        .param("prec", Field::Int(g.prec.into()));
    let positive = values.iter().all(|(_, b)| b.is_positive());
    if !positive {
        report.notes.push("some P values are not positive; log values and slope fit omitted".into());
        for (alpha, (p, _)) in alphas.iter().zip(values) {
            report.rows.push(vec![named("alpha", Field::Exact(alpha.clone())), named("p", p)]);
        }
        return Ok(report);
    }
    let logs: Vec<RealBall> = values.iter().map(|(_, b)| ln_ball(b)).collect();
    let points: Vec<(Rational, RealBall)> = alphas.iter().cloned().zip(logs.iter().cloned()).collect();
    let fit = if points.len() >= 2 { Some(fit_log_slope(&points)?) } else { None };
    for (i, (alpha, (p, _))) in alphas.iter().zip(values).enumerate() {
        let mut row = vec![
            named("alpha", Field::Exact(alpha.clone())),
            named("p", p),
            named("log_p", Field::Ball(logs[i].clone())),
        ];
        if let Some(f) = &fit {
            row.push(named("residual", Field::Ball(f.residuals[i].clone())));
        }
        report.rows.push(row);
    }
    if let Some(f) = fit {
        report.summary.push(named("slope", Field::Ball(f.slope)));
    }
    Ok(report)
}

#[derive(Args, Debug)]
pub struct DerivativeArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = alpha_arg)]
    pub alpha: Rational,

    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub order: u8,
}

pub fn derivative(a: &DerivativeArgs, g: &GlobalArgs) -> Result<Report> {
    let alpha = RealBall::from_rational(&a.alpha, g.prec + GUARD_BITS);
    let d = p_derivative(&alpha, a.order, &default_target(g.prec), g.prec)?;
    let mut report = Report::new("derivative")
        .param("alpha", Field::Exact(a.alpha.clone()))
        .param("order", Field::Int(a.order.into()))
        .param("prec", Field::Int(g.prec.into()));
    report.rows.push(vec![
        named("alpha", Field::Exact(a.alpha.clone())),
        named("order", Field::Int(a.order.into())),
        named("value", Field::Ball(d.value)),
        named("terms", Field::Int(d.terms_used as i128)),
    ]);
    Ok(report)
}

pub fn special_values(g: &GlobalArgs) -> Result<Report> {
    let mut report = Report::new("special-values").param("prec", Field::Int(g.prec.into()));
    for row in special_values_table(g.prec)? {
        report.rows.push(vec![
            named("alpha", Field::Exact(row.alpha)),
            named("closed_form", Field::Text(row.closed_form.into())),
            named("closed_value", Field::Ball(row.closed_value)),
            named("series_value", Field::Ball(row.p_value)),
            named("agreeing_digits", Field::Int(row.agreeing_digits.into())),
            named("agreement", Field::Bool(row.agreement)),
            named("limit_evaluated", Field::Bool(row.limit_evaluated)),
        ]);
    }
    Ok(report)
}

#[derive(Args, Debug)]
pub struct MonteCarloArgs {
    /// real, complex or quaternion.
    #[arg(long, value_parser = algebra_arg)]
    pub algebra: Algebra,

    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub workers: u64,

    /// Also estimate determinant moments up to this order.
    #[arg(long, value_name = "K")]
    pub moments: Option<usize>,

    /// Write the moments in the reconstruction file format.
    #[arg(long, value_name = "FILE", requires = "moments")]
    pub save_moments: Option<PathBuf>,
}

pub fn montecarlo(a: &MonteCarloArgs) -> Result<Report> {
    let config = MCConfig {
        algebra: a.algebra,
        samples: a.samples,
        seed: a.seed,
        workers: a.workers as usize,
    };
    let r = run(&config, a.moments)?;
    let mut report = Report::new("montecarlo")
        .param("algebra", Field::Text(a.algebra.name().into()))
        .param("samples", Field::Int(a.samples.into()))
        .param("seed", Field::Int(a.seed.into()))
        .param("workers", Field::Int(a.workers.into()));
    report.rows.push(vec![
        named("algebra", Field::Text(r.algebra.name().into())),
        named("samples", Field::Int(r.samples.into())),
        named("separable", Field::Int(r.separable.into())),
        named("p_hat", Field::Estimate(r.p_hat, r.stderr)),
        named("target", Field::Exact(target_probability(r.algebra))),
        named("det_min", Field::Estimate(r.det_min, DET_ROUNDOFF)),
        named("det_max", Field::Estimate(r.det_max, DET_ROUNDOFF)),
    ]);
    if let Some(m) = &r.moments {
        for (k, mu) in m.moments().iter().enumerate() {
            report.summary.push(named(&format!("mu_{k}"), Field::Exact(mu.clone())));
        }
        if let Some(path) = &a.save_moments {
            m.write(path)?;
            report.notes.push(format!("moments written to {}", path.display()));
        }
    }
    Ok(report)
}

#[derive(Args, Debug)]
pub struct ReconstructArgs {
    /// Moments file: `interval a b` followed by one moment per line.
    #[arg(long, value_name = "FILE")]
    pub moments: PathBuf,

    /// Approximant degree; defaults to the highest available.
    #[arg(long)]
    pub degree: Option<usize>,

    /// Report the probability mass over [c, d].
    #[arg(long, num_args = 2, value_names = ["C", "D"], allow_hyphen_values = true, value_parser = tolerance_arg)]
    pub range: Option<Vec<Rational>>,

    /// Report the density at 0.
    #[arg(long)]
    pub y_intercept: bool,
}

pub fn reconstruct(a: &ReconstructArgs) -> Result<Report> {
    let m = MomentSequence::read(&a.moments)?;
    let degree = a.degree.unwrap_or(m.order());
    let d = fit_approximant_degree(&m, degree)?;
    let (lo, hi) = m.interval();
    let mut report = Report::new("reconstruct")
        .param("moments", Field::Text(a.moments.display().to_string()))
        .param("degree", Field::Int(degree as i128));
    let mut row = vec![
        named("degree", Field::Int(degree as i128)),
        named("a", Field::Exact(lo.clone())),
        named("b", Field::Exact(hi.clone())),
    ];
    if let Some(r) = &a.range {
        row.push(named("c", Field::Exact(r[0].clone())));
        row.push(named("d", Field::Exact(r[1].clone())));
        row.push(named("mass", Field::Exact(d.cumulative(&r[0], &r[1])?)));
    }
    if a.y_intercept {
        row.push(named("y_intercept", Field::Exact(d.y_intercept()?)));
    }
    report.rows.push(row);
    Ok(report)
}

pub fn volumes(g: &GlobalArgs) -> Result<Report> {
    let mut report = Report::new("volumes").param("prec", Field::Int(g.prec.into()));
    for algebra in Algebra::ALL {
        let alpha = algebra.alpha();
        let v = separable_volume(&alpha, g.prec)?;
        let boundary = boundary_probability(&AlphaValue::new(alpha.clone()), g.prec)?;
        report.rows.push(vec![
            named("alpha", Field::Exact(alpha)),
            named("algebra", Field::Text(algebra.name().into())),
            named("volume_symbolic", Field::Text(v.symbolic.into())),
            named("volume", Field::Ball(v.value)),
            named("probability", Field::Exact(v.probability)),
            named("total_volume", Field::Ball(v.total_volume)),
            named("boundary_probability", value_field(boundary)),
        ]);
    }
    Ok(report)
}

#[derive(Args, Debug)]
pub struct TelescopeArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = alpha_arg)]
    pub alpha: Rational,
}

pub fn telescope(a: &TelescopeArgs, g: &GlobalArgs) -> Result<Report> {
    let t = telescope_check(&AlphaValue::new(a.alpha.clone()), g.prec)?;
    let mut report = Report::new("telescope")
        .param("alpha", Field::Exact(a.alpha.clone()))
        .param("prec", Field::Int(g.prec.into()));
    report.rows.push(vec![
        named("alpha", Field::Exact(a.alpha.clone())),
        named("holds", Field::Bool(t.holds)),
        named("exact", Field::Bool(t.exact)),
        named("discrepancy", Field::Ball(t.discrepancy)),
    ]);
    if !t.holds {
        return Err(Error::Convergence(format!("telescoping identity fails at alpha = {}", a.alpha)));
    }
    Ok(report)
}
