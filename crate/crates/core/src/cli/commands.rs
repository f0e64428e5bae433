use num_complex::Complex64;

use super::{fmt_f64, CliError, Command, Output, RunConfig, Table};
use crate::fockspace::{balanced_lscale, build_fock, build_xp, spectrum};
use crate::qcore::{bracket_asym, bracket_sym, qfactorial_sym, Mode, QParam, QValue, HBAR};
use crate::qfourier::{
    default_p_lattice, default_x_lattice, ground_correspondence, localization_profile, momentum_ground_state,
    DeltaSpec, TransformPlan, HALF_WIDTH_ROOT,
};
use crate::qlattice::{GeoLattice, LatticeFn, Sign};
use crate::verify::{self, Selector, VerifyConfig};
use crate::wavefun::{GroundStateParams, ProductState};

/// Spacing and length of the `delta` grid in x.
const DELTA_STEP: f64 = 0.01;
const DELTA_POINTS: usize = 500;

pub(super) fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<(&'static str, Output), CliError> {
    Ok(match cmd {
        Command::Qnum { from, to } => ("qnum", Output::Table(qnum(cfg, *from, *to)?)),
        Command::Verify { selector } => ("verify", verify(cfg, selector)?),
        Command::Spectrum => ("spectrum", Output::Table(spectrum_table(cfg)?)),
        Command::Ground => ("ground", Output::Table(ground(cfg)?)),
        Command::Transform => ("transform", Output::Table(transform(cfg)?)),
        Command::Delta => ("delta", Output::Table(delta(cfg)?)),
        Command::Uncertainty => ("uncertainty", Output::Table(uncertainty(cfg)?)),
    })
}

fn float_only(cfg: &RunConfig, name: &str) -> Result<QParam, CliError> {
    if cfg.mode() == Mode::Exact {
        return Err(CliError::Config(format!("{name} has no exact form; use --mode float")));
    }
    Ok(QParam::numeric(cfg.q)?)
}

fn cell(v: &QValue) -> super::Cell {
    match v {
        QValue::Float(x) => (*x).into(),
        QValue::Exact(p) => p.to_string().into(),
    }
}

fn qnum(cfg: &RunConfig, from: i64, to: i64) -> Result<Table, CliError> {
    if from < 0 || to < from {
        return Err(CliError::Config(format!("bad range {from}..{to}: need 0 ≤ from ≤ to")));
    }
    let q = cfg.qparam();
    let mut t = Table::new(&["n", "asym", "sym", "sym_factorial"]);
    for n in from..=to {
        t.push(vec![
            n.into(),
            cell(&bracket_asym(n, &q)?),
            cell(&bracket_sym(n, &q)),
            cell(&qfactorial_sym(n, &q)?),
        ]);
    }
    Ok(t)
}

fn verify(cfg: &RunConfig, selector: &str) -> Result<Output, CliError> {
    let selector: Selector = selector.parse()?;
    let vc = VerifyConfig { q: cfg.q, mode: cfg.mode(), dim: cfg.n, lambda: cfg.lambda };
    let report = verify::run(selector, &vc)?;
    let failed = report.failures().count();
    Ok(Output::Report {
        text: report.to_string(),
        json: serde_json::to_value(&report).expect("report serializes"),
        failed,
    })
}

fn spectrum_table(cfg: &RunConfig) -> Result<Table, CliError> {
    let q = cfg.qparam();
    let r = cfg.realization();
    let mut t = Table::new(&["n", "energy"]);
    for n in 0..cfg.n {
        t.push(vec![n.into(), cell(&spectrum(r, &q, n)?)]);
    }
    if let QParam::Numeric(_) = q {
        let edge = bracket_sym(cfg.n as i64, &q).eval(cfg.q);
        if !edge.is_finite() {
            eprintln!("qdeform: warning: [N] overflows at N = {}, q = {}", cfg.n, cfg.q);
        }
    }
    Ok(t)
}

/// Rows sorted by `x`, so both branches read as one curve.
fn by_x(l: &GeoLattice) -> Vec<(Sign, i32)> {
    let mut pts: Vec<_> = l.points().collect();
    pts.sort_by(|a, b| l.x(a.0, a.1).total_cmp(&l.x(b.0, b.1)));
    pts
}

fn ground(cfg: &RunConfig) -> Result<Table, CliError> {
    let q = float_only(cfg, "ground")?;
    let l = GeoLattice::new(cfg.x0, q, cfg.kmin.unwrap_or(-48), cfg.kmax.unwrap_or(48))?;
    let params = GroundStateParams::new(cfg.lambda, q, cfg.realization())?;
    let st = ProductState::build(params, l)?;
    let psi = st.values();
    let norm = psi.max_abs();
    let mut t = Table::new(&["x", "psi", "residual"]);
    let mut worst = 0.0f64;
    for (s, k) in by_x(&l) {
        let x = l.x(s, k);
        let v = psi.at(s, k)?.re;
        // the innermost shell has no inner neighbour
        let res = if k < l.kmax() {
            let r = match params.realization {
                crate::fockspace::FockRealization::Asym => {
                    (cfg.lambda * x * psi.at(s, k)? + psi.d_asym_at(s, k)?).norm() / norm
                }
                crate::fockspace::FockRealization::Sym => {
                    let inner = psi.at(s, k + 1)?.re;
                    let rhs = (1.0 + params.factor_coefficient(x)) * v;
                    (inner - rhs).abs() / inner.abs().max(rhs.abs()).max(f64::MIN_POSITIVE)
                }
            };
            worst = worst.max(r);
            Some(r)
        } else {
            None
        };
        t.push(vec![x.into(), v.into(), res.into()]);
    }
    t.note("residual", match params.realization {
        crate::fockspace::FockRealization::Asym => "|lambda x psi + D^q psi| / max|psi|",
        crate::fockspace::FockRealization::Sym => "relative violation of psi(qx) = (1 + c(x)) psi(x)",
    });
    t.note("max_residual", fmt_f64(worst));
    t.note("factors", st.truncation().to_string());
    t.note("max_tail_bound", fmt_f64(st.max_tail_bound()));
    Ok(t)
}

fn transform(cfg: &RunConfig) -> Result<Table, CliError> {
    let q = float_only(cfg, "transform")?;
    if cfg.lambda <= 0.0 {
        return Err(CliError::Config("transform needs lambda > 0 for a decaying momentum ground state".into()));
    }
    let x = match (cfg.kmin, cfg.kmax) {
        (None, None) => default_x_lattice(q, cfg.lambda)?,
        (a, b) => {
            let d = default_x_lattice(q, cfg.lambda)?;
            GeoLattice::new(cfg.x0, q, a.unwrap_or(d.kmin()), b.unwrap_or(d.kmax()))?
        }
    };
    let plan = TransformPlan::new(x, default_p_lattice(q, cfg.lambda)?)?;
    let phi = momentum_ground_state(cfg.lambda, plan.p_lattice())?;
    let out = plan.forward(&phi.values)?;
    let psi: &LatticeFn<Complex64> = &out.values;
    let mut t = Table::new(&["x", "re_psi", "im_psi"]);
    for (s, k) in by_x(&x) {
        let v = psi.at(s, k)?;
        t.push(vec![x.x(s, k).into(), v.re.into(), v.im.into()]);
    }
    let p = plan.p_lattice();
    t.note("input", format!("momentum ground state on p-shells {}..{}", p.kmin(), p.kmax()));
    t.note("annihilation_residual", fmt_f64(ground_correspondence(cfg.lambda, &plan)?.residual));
    for w in &out.warnings {
        t.note(format!("warning {}", w.code), w.message.clone());
    }
    Ok(t)
}

fn delta(cfg: &RunConfig) -> Result<Table, CliError> {
    let q = float_only(cfg, "delta")?;
    let spec = DeltaSpec::from_exponent(1.0, q, cfg.p_exponent)?;
    let grid: Vec<f64> = (1..=DELTA_POINTS).map(|j| j as f64 * DELTA_STEP).collect();
    let prof = localization_profile(&spec, &grid)?;
    let mut t = Table::new(&["x", "abs_delta", "classical", "q", "P"]);
    for &(x, d, c) in &prof.rows {
        t.push(vec![x.into(), d.into(), c.into(), cfg.q.into(), prof.p.into()]);
    }
    let opt = |v: Option<f64>| v.map_or("none".to_string(), fmt_f64);
    t.note("peak", fmt_f64(prof.peak));
    t.note("half_width", opt(prof.half_width));
    t.note("classical_half_width", fmt_f64(HALF_WIDTH_ROOT / prof.p));
    t.note("first_zero", opt(prof.first_zero));
    Ok(t)
}

fn uncertainty(cfg: &RunConfig) -> Result<Table, CliError> {
    let q = float_only(cfg, "uncertainty")?;
    let ops = build_fock(cfg.realization(), q, cfg.n)?;
    let xp = build_xp(&ops, balanced_lscale(cfg.q, HBAR), HBAR)?;
    let mut t = Table::new(&["n", "product", "literal_bound", "robertson_bound", "holds"]);
    for n in 0..=cfg.n - 2 {
        let r = xp.uncertainty_product(n)?;
        t.push(vec![n.into(), r.product.into(), r.literal_rhs.into(), r.robertson_bound.into(), r.robertson_holds.into()]);
    }
    t.note("holds", "product >= robertson_bound; literal_bound compares with sqrt(product)");
    t.note("lscale", fmt_f64(xp.lscale()));
    t.note("kscale", fmt_f64(xp.kscale()));
    Ok(t)
}
