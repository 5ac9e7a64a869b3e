use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use qdeficit::analytic::{self, AlphaParam};
use qdeficit::families;
use qdeficit::info::{info_summary, negativity_min_eig};
use qdeficit::{deficit_zero_way, DeficitResult, DensityMatrix, FamilySpec, OptimizerConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use crate::args::*;
use crate::output::{emit, fmt_num, Format, Table};
use crate::Failure;

pub const MEASURE_COLUMNS: [&str; 5] = ["i_m", "delta0", "delta_cl0", "s_total", "neg_min_eig"];
const EQUALITY_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct Measures {
    pub deficit: DeficitResult,
    pub s_total: f64,
    pub neg_min_eig: f64,
}

impl Measures {
    pub fn of(rho: &DensityMatrix, cfg: &OptimizerConfig) -> qdeficit::Result<Self> {
        Ok(Self {
            deficit: deficit_zero_way(rho, cfg)?,
            s_total: rho.entropy(),
            neg_min_eig: negativity_min_eig(rho),
        })
    }

    pub fn row(&self) -> [f64; 5] {
        let d = &self.deficit;
        [d.i_m, d.delta0, d.delta_cl0, self.s_total, self.neg_min_eig]
    }
}

/// Ordered key/value report printed as aligned text or a JSON object.
#[derive(Default)]
struct Report(Vec<(String, Value)>);

impl Report {
    fn add(&mut self, key: &str, value: impl Into<Value>) {
        self.0.push((key.to_string(), value.into()));
    }

    fn num(&mut self, key: &str, value: f64) {
        self.add(key, fmt_num(value).parse::<f64>().map_or(Value::Null, Value::from));
    }

    fn print(&self, format: Option<Format>, w: &mut dyn Write) -> std::io::Result<()> {
        if format == Some(Format::Json) {
            let obj: serde_json::Map<String, Value> = self.0.iter().cloned().collect();
            serde_json::to_writer_pretty(&mut *w, &Value::Object(obj))?;
            return writeln!(w);
        }
        let width = self.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.0 {
            let text = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => fmt_num(n.as_f64().unwrap_or(f64::NAN)),
                Value::Null => "NaN".into(),
                other => other.to_string(),
            };
            writeln!(w, "{k:<width$}  {text}")?;
        }
        Ok(())
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn compute(args: &ComputeArgs) -> Result<(), Failure> {
    let cfg = args.optimizer.resolve(None)?;
    let (label, rho) = match (&args.state, &args.state_file) {
        (Some(spec), _) => (spec.to_string(), spec.build()?),
        (None, Some(path)) => (path.display().to_string(), DensityMatrix::from_json_file(path)?),
        (None, None) => return Err(Failure::usage("one of --state or --state-file is required")),
    };
    let m = Measures::of(&rho, &cfg)?;
    let info = info_summary(&rho);
    let d = &m.deficit;
    if !d.converged {
        eprintln!("warning: optimizer hit its iteration budget; delta0 is an upper estimate");
    }
    let b = d.best_basis;
    let mut r = Report::default();
    r.add("state", label);
    r.num("s_total", info.s_total);
    r.num("s_a", info.s_a);
    r.num("s_b", info.s_b);
    r.num("i_m", d.i_m);
    r.num("delta0", d.delta0);
    r.num("delta_cl0", d.delta_cl0);
    r.num("il0", d.il0);
    r.num("min_dephased_entropy", d.min_entropy);
    r.num("theta_a", b.theta_a);
    r.num("phi_a", b.phi_a);
    r.num("theta_b", b.theta_b);
    r.num("phi_b", b.phi_b);
    r.num("neg_min_eig", m.neg_min_eig);
    r.add("ppt", yes_no(m.neg_min_eig >= -1e-10));
    r.add("delta0_equals_i_m", yes_no((d.i_m - d.delta0).abs() <= EQUALITY_TOL));
    r.add("converged", yes_no(d.converged));
    r.add("evaluations", d.evaluations);
    emit(None, |w| r.print(args.format, w))?;
    Ok(())
}

/// Column names for a family: required parameters, then optional ones that
/// are set or swept.
fn param_columns(spec: &FamilySpec, swept: &str) -> Vec<String> {
    let f = spec.family;
    f.required()
        .iter()
        .chain(f.optional())
        .filter(|p| f.required().contains(p) || spec.param(p).is_some() || **p == swept)
        .map(|p| p.to_string())
        .collect()
}

pub fn scan_table(args: &ScanArgs, cfg: &OptimizerConfig) -> Result<Table, Failure> {
    if !args.family.family.accepts(&args.param) {
        return Err(Failure::usage(format!(
            "family {} has no parameter `{}`",
            args.family.family, args.param
        )));
    }
    if args.steps < 2 {
        return Err(Failure::usage("--steps must be at least 2"));
    }
    if !ascending(args.from, args.to) {
        return Err(Failure::usage("--from must be smaller than --to"));
    }
    let columns = param_columns(&args.family, &args.param);
    let specs = (0..=args.steps)
        .map(|k| {
            let x = args.from + (args.to - args.from) * (k as f64 / args.steps as f64);
            args.family.clone().with_param(&args.param, x)
        })
        .collect::<qdeficit::Result<Vec<_>>>()?;
    let states = specs
        .iter()
        .map(|s| s.build())
        .collect::<qdeficit::Result<Vec<_>>>()?;
    let measures = states
        .par_iter()
        .map(|rho| Measures::of(rho, cfg))
        .collect::<qdeficit::Result<Vec<_>>>()?;
    warn_unconverged(&measures);
    let mut table = Table::new(columns.iter().map(String::as_str).chain(MEASURE_COLUMNS));
    for (spec, m) in specs.iter().zip(&measures) {
        let mut row: Vec<f64> = columns.iter().map(|c| spec.param(c).unwrap_or(0.0)).collect();
        row.extend(m.row());
        table.push(row);
    }
    Ok(table)
}

fn ascending(lo: f64, hi: f64) -> bool {
    lo.is_finite() && hi.is_finite() && lo < hi
}

fn warn_unconverged(measures: &[Measures]) {
    let n = measures.iter().filter(|m| !m.deficit.converged).count();
    if n > 0 {
        eprintln!("warning: {n} evaluation(s) hit the optimizer iteration budget");
    }
}

pub fn scan(args: &ScanArgs) -> Result<(), Failure> {
    let cfg = args.optimizer.resolve(None)?;
    let table = scan_table(args, &cfg)?;
    emit(args.out.as_deref(), |w| table.write(args.format, w))?;
    Ok(())
}

pub fn sample_table(args: &SampleArgs, cfg: &OptimizerConfig) -> Result<Table, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (params, states): (Vec<Vec<f64>>, Vec<DensityMatrix>) = (0..args.count)
        .map(|k| match args.mode {
            SampleMode::Hs => (vec![k as f64], families::random_density_matrix(&mut rng)),
            SampleMode::RhoAbp => {
                let (a, b, p, rho) = families::random_rho_abp(&mut rng);
                (vec![a, b, p], rho)
            }
        })
        .unzip();
    let measures = states
        .par_iter()
        .map(|rho| Measures::of(rho, cfg))
        .collect::<qdeficit::Result<Vec<_>>>()?;
    warn_unconverged(&measures);
    if args.envelope {
        return envelope(&measures, args.bin_width);
    }
    let head: &[&str] = match args.mode {
        SampleMode::Hs => &["index"],
        SampleMode::RhoAbp => &["a", "b", "p"],
    };
    let mut table = Table::new(head.iter().copied().chain(MEASURE_COLUMNS));
    for (mut row, m) in params.into_iter().zip(&measures) {
        row.extend(m.row());
        table.push(row);
    }
    Ok(table)
}

/// Minimum and maximum `delta0` per `i_m` bin.
pub fn envelope(measures: &[Measures], width: f64) -> Result<Table, Failure> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Failure::usage("--bin-width must be positive"));
    }
    let mut bins: std::collections::BTreeMap<i64, (usize, f64, f64)> = Default::default();
    for m in measures {
        let d = &m.deficit;
        let e = bins
            .entry((d.i_m / width).floor() as i64)
            .or_insert((0, f64::INFINITY, f64::NEG_INFINITY));
        e.0 += 1;
        e.1 = e.1.min(d.delta0);
        e.2 = e.2.max(d.delta0);
    }
    let mut table = Table::new(["i_m_lo", "i_m_hi", "count", "delta0_min", "delta0_max"]);
    for (k, (n, lo, hi)) in bins {
        table.push(vec![k as f64 * width, (k + 1) as f64 * width, n as f64, lo, hi]);
    }
    Ok(table)
}

pub fn sample(args: &SampleArgs) -> Result<(), Failure> {
    let cfg = args.optimizer.resolve(args.seed)?;
    let table = sample_table(args, &cfg)?;
    emit(args.out.as_deref(), |w| table.write(args.format, w))?;
    Ok(())
}

pub fn find_a0(args: &FindA0Args) -> Result<(), Failure> {
    if !args.curves.is_empty() {
        if args.steps < 2 {
            return Err(Failure::usage("--steps must be at least 2"));
        }
        let mut table = Table::new(["alpha", "gamma_a", "s_alpha", "ds_alpha", "d2s_alpha"]);
        for &alpha in &args.curves {
            let p = AlphaParam::from_alpha(alpha);
            for k in 0..=args.steps {
                let g = -FRAC_PI_2 + 2.0 * FRAC_PI_2 * (k as f64 / args.steps as f64);
                table.push(vec![
                    alpha,
                    g,
                    analytic::s_alpha(p, g),
                    analytic::ds_alpha(p, g),
                    analytic::d2s_alpha(p, g).to_f64(),
                ]);
            }
        }
        emit(args.out.as_deref(), |w| table.write(args.format.unwrap_or_default(), w))?;
        return Ok(());
    }
    let a0 = analytic::find_a0();
    let mut r = Report::default();
    r.num("a0", a0);
    r.num("a0_partner", 1.0 - a0);
    r.num("alpha0", AlphaParam::from_a(a0)?.alpha);
    r.num("equation_residual", analytic::a0_equation(a0));
    emit(args.out.as_deref(), |w| r.print(args.format, w))?;
    Ok(())
}

fn sigma_row(a: f64, t: f64, cfg: &OptimizerConfig) -> qdeficit::Result<[f64; 5]> {
    let residual = analytic::sigma_product_diagonal_residual(a, t)?.value;
    let m = Measures::of(&families::sigma_at(a, t)?, cfg)?;
    let d = &m.deficit;
    Ok([residual, m.neg_min_eig, d.i_m, d.delta0, d.i_m - d.delta0])
}

pub fn sigma_roots(args: &SigmaRootsArgs) -> Result<(), Failure> {
    let cfg = args.optimizer.resolve(None)?;
    if args.scan_t {
        if args.steps < 1 || !ascending(args.from, args.to) || !ascending(args.a_from, args.a_to) {
            return Err(Failure::usage("need --steps >= 1, --from < --to and --a-from < --a-to"));
        }
        let ts: Vec<f64> = (0..=args.steps)
            .map(|k| args.from + (args.to - args.from) * (k as f64 / args.steps as f64))
            .collect();
        let rows = ts
            .par_iter()
            .map(|&t| -> qdeficit::Result<Vec<f64>> {
                let mut row = vec![t];
                match analytic::find_a_t_in(t, args.a_from, args.a_to)? {
                    Some(a) => {
                        row.push(a);
                        row.extend(sigma_row(a, t, &cfg)?);
                    }
                    None => row.extend([f64::NAN; 6]),
                }
                Ok(row)
            })
            .collect::<qdeficit::Result<Vec<_>>>()?;
        let mut table =
            Table::new(["t", "a_t", "residual", "neg_min_eig", "i_m", "delta0", "i_m_minus_delta0"]);
        rows.into_iter().for_each(|r| table.push(r));
        if let Some(t0) = t0_estimate(&table) {
            eprintln!("t0 estimate: smallest scanned t with an a_t in the window is {}", fmt_num(t0));
        }
        emit(args.out.as_deref(), |w| table.write(args.format.unwrap_or_default(), w))?;
        return Ok(());
    }

    let roots = analytic::quartic_roots();
    let cf = analytic::closed_form_sigma_root();
    let mut r = Report::default();
    for (name, a) in ["negative_root", "positive_root"].iter().zip(&roots) {
        let [res, neg, i_m, delta0, gap] = sigma_row(*a, 2.0, &cfg)?;
        r.num(name, *a);
        r.num(&format!("{name}.residual"), res);
        r.num(&format!("{name}.neg_min_eig"), neg);
        r.num(&format!("{name}.i_m"), i_m);
        r.num(&format!("{name}.delta0"), delta0);
        r.num(&format!("{name}.i_m_minus_delta0"), gap);
    }
    r.num("closed_form", cf.value);
    r.num("closed_form.z", cf.z);
    r.num("closed_form.w", cf.w);
    if let Some(pos) = roots.last() {
        r.num("closed_form_minus_root", cf.value - pos);
    }
    emit(args.out.as_deref(), |w| r.print(args.format, w))?;
    Ok(())
}

/// Smallest scanned `t` with an `a_t` inside the search window.
pub fn t0_estimate(table: &Table) -> Option<f64> {
    let ts = table.column("t")?;
    let at = table.column("a_t")?;
    ts.into_iter().zip(at).find(|(_, a)| !a.is_nan()).map(|(t, _)| t)
}
