//! Subcommand definitions and dispatch.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fraccore::grid::{make_uniform_grid, Grid1D, SampledFunction};
use fraccore::matrixop::solve_linear_fde;
use fraccore::operators::{self as ops, Side};
use fraccore::pde::{self, DiffusionForm, DiffusionProblem, DistributedOrderSpec};
use fraccore::specfun::{self, Auxiliary, MLParams, SeriesConfig};

use crate::csvio::{format_number, read_sampled, write_sampled, write_solution};
use crate::expr::{eval_expression, parse_expression};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "fraccore",
    version,
    about = "Fractional calculus operators, special functions and solvers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fractional integral of a sampled function
    Integ(IntegArgs),
    /// Fractional or local derivative of a sampled function
    Deriv(DerivArgs),
    /// Mittag-Leffler (or Prabhakar) function at one point
    Mlf(MlfArgs),
    /// Wright function or the auxiliary functions F, M at one point
    Wright(WrightArgs),
    /// Grünwald-Letnikov weights as CSV k,value
    Weights(WeightsArgs),
    /// Solve D^α y = λ y + F(t), y(a) = y0 with the strip matrix scheme
    StripSolve(StripArgs),
    /// Time-fractional diffusion D^β u = u_xx
    SolveDiffusion(DiffusionArgs),
    /// Distributed-order diffusion Σ b_j D^{β_j} u = u_xx
    SolveDistributed(DistributedArgs),
    /// Mass, mean and second moment of a sampled density
    Moments(MomentsArgs),
}

#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub a: f64,
    pub b: f64,
    pub n: usize,
}

impl GridSpec {
    fn build(self) -> Result<Grid1D, CliError> {
        Ok(make_uniform_grid(self.a, self.b, self.n)?)
    }
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, n] = parts[..] else {
        return Err(format!("expected a,b,n, got {s:?}"));
    };
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("not a number: {t:?}"));
    let n = n
        .parse::<usize>()
        .map_err(|_| format!("not a node count: {n:?}"))?;
    Ok(GridSpec {
        a: num(a)?,
        b: num(b)?,
        n,
    })
}

/// Function input: an expression on a grid, or an `x,value` CSV file.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Expression in x, e.g. "sin(x)+x^2"
    #[arg(long, conflicts_with = "input", requires = "grid", allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// CSV file with header x,value on a uniform grid
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Grid a,b,n (n intervals) for --expr
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Option<GridSpec>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntegOp {
    Rl,
    Gl,
    Tempered,
    Riesz,
    ErdelyiKober,
}

#[derive(Debug, Args)]
pub struct IntegArgs {
    #[arg(long, value_enum, default_value = "rl")]
    pub op: IntegOp,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value = "left")]
    pub side: SideArg,
    /// Tempering rate (tempered)
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Memory length in nodes (gl)
    #[arg(long)]
    pub memory: Option<usize>,
    /// Erdélyi-Kober γ; the order μ is --alpha
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Erdélyi-Kober η
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DerivOp {
    Rl,
    Caputo,
    CaputoDiffusive,
    Gl,
    Marchaud,
    Riesz,
    RieszFeller,
    Weyl,
    ErdelyiKober,
    CaputoFabrizio,
    Gc,
    Grl,
    Tempered,
    Conformable,
    Hausdorff,
    Jumarie,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KernelArg {
    /// exp(-c x)
    Exponential,
    /// E_α(-c x)
    MittagLeffler,
    /// exp(-c x²)
    Gaussian,
    /// exp(-c x^s) with s from --stretch
    Stretched,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantArg {
    Khalil,
    Katugampola,
}

#[derive(Debug, Args)]
pub struct DerivArgs {
    #[arg(long, value_enum)]
    pub op: DerivOp,
    /// Order (for hausdorff, σ)
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value = "left")]
    pub side: SideArg,
    /// Skewness (riesz-feller)
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    /// Tempering rate (tempered)
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Tempered Riemann-Liouville form instead of the plain tempered derivative
    #[arg(long)]
    pub rl_form: bool,
    /// Memory length in nodes (gl)
    #[arg(long)]
    pub memory: Option<usize>,
    /// Cutoff distance (marchaud); defaults to one grid step
    #[arg(long)]
    pub eps: Option<f64>,
    /// Core window in cells (riesz-feller)
    #[arg(long)]
    pub eps_cells: Option<usize>,
    /// Quadrature nodes (caputo-diffusive)
    #[arg(long, default_value_t = 64)]
    pub quad_nodes: usize,
    /// Memory kernel (gc, grl)
    #[arg(long, value_enum, default_value = "exponential")]
    pub kernel: KernelArg,
    /// Exponent of the stretched kernel
    #[arg(long, default_value_t = 0.5)]
    pub stretch: f64,
    /// Erdélyi-Kober γ; the order μ is --alpha
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Erdélyi-Kober η
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    /// Limit definition (conformable)
    #[arg(long, value_enum, default_value = "khalil")]
    pub variant: VariantArg,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MlfArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub beta: f64,
    /// Prabhakar index
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    /// Series tolerance; overrides FRACCORE_TOL
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AuxArg {
    F,
    M,
}

#[derive(Debug, Args)]
pub struct WrightArgs {
    /// W_{λ,μ}; not used with --aux
    #[arg(long, allow_hyphen_values = true, required_unless_present = "aux")]
    pub lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "aux")]
    pub mu: Option<f64>,
    /// Auxiliary function F_ν or M_ν instead of W
    #[arg(long, value_enum, requires = "nu", conflicts_with_all = ["lambda", "mu"])]
    pub aux: Option<AuxArg>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: f64,
    /// Series tolerance; overrides FRACCORE_TOL
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub n: usize,
    /// Weights of the fractional integral (order -α)
    #[arg(long)]
    pub integral: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct StripArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub y0: f64,
    /// Forcing F(t) as an expression in x
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub forcing: String,
    /// Time grid a,b,n
    #[arg(long, value_parser = parse_grid)]
    pub grid: GridSpec,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormArg {
    Caputo,
    Rl,
}

/// Space and time discretization shared by the diffusion solvers.
#[derive(Debug, Args)]
pub struct DiffusionGrid {
    /// Space grid a,b,n
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub x_grid: GridSpec,
    /// Final time
    #[arg(long)]
    pub t_end: f64,
    /// Number of time steps
    #[arg(long)]
    pub nt: usize,
    /// Initial condition in x, or "delta" for a unit mass at the node nearest 0
    #[arg(long, default_value = "delta", allow_hyphen_values = true)]
    pub initial: String,
}

#[derive(Debug, Args)]
pub struct DiffusionArgs {
    #[arg(long)]
    pub beta: f64,
    #[arg(long, value_enum, default_value = "caputo")]
    pub form: FormArg,
    #[command(flatten)]
    pub grid: DiffusionGrid,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DistributedArgs {
    /// Orders β_j, comma separated
    #[arg(
        long,
        value_delimiter = ',',
        required_unless_present = "uniform",
        requires = "weights"
    )]
    pub nodes: Vec<f64>,
    /// Weights b_j, comma separated
    #[arg(long, value_delimiter = ',')]
    pub weights: Vec<f64>,
    /// Uniform order density with this many quadrature nodes
    #[arg(long, conflicts_with_all = ["nodes", "weights"])]
    pub uniform: Option<usize>,
    #[command(flatten)]
    pub grid: DiffusionGrid,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    /// CSV file with header x,value
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn series_config(flag: Option<f64>, env: Option<&str>) -> Result<SeriesConfig, CliError> {
    let tol = match (flag, env) {
        (Some(t), _) => t,
        (None, Some(s)) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("{}={s:?} is not a number", crate::TOL_ENV)))?,
        (None, None) => return Ok(SeriesConfig::default()),
    };
    SeriesConfig::new(tol, SeriesConfig::default().max_terms).map_err(|e| CliError::Usage(e.to_string()))
}

fn open_output(
    o: &OutputArgs,
    stdout: &mut dyn Write,
    emit: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match &o.output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Input(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            emit(&mut w)?;
            w.flush()
                .map_err(|e| CliError::Input(format!("write {}: {e}", path.display())))
        }
        None => emit(stdout),
    }
}

fn read_csv(path: &PathBuf) -> Result<SampledFunction, CliError> {
    let file =
        File::open(path).map_err(|e| CliError::Input(format!("cannot open {}: {e}", path.display())))?;
    read_sampled(BufReader::new(file))
}

/// Sample an expression on a grid, surfacing the first domain error.
pub fn sample_expression(text: &str, grid: &Grid1D) -> Result<SampledFunction, CliError> {
    let e = parse_expression(text)?;
    let values = grid
        .nodes()
        .into_iter()
        .map(|x| eval_expression(&e, x))
        .collect::<Result<Vec<f64>, _>>()?;
    Ok(SampledFunction::new(*grid, values)?)
}

fn load_input(i: &InputArgs) -> Result<SampledFunction, CliError> {
    match (&i.expr, &i.input) {
        (Some(text), None) => {
            let grid = i
                .grid
                .ok_or_else(|| CliError::Usage("--expr needs --grid".into()))?;
            sample_expression(text, &grid.build()?)
        }
        (None, Some(path)) => {
            if i.grid.is_some() {
                return Err(CliError::Usage("--grid applies to --expr only".into()));
            }
            read_csv(path)
        }
        _ => Err(CliError::Usage("give exactly one of --expr or --input".into())),
    }
}

fn kernel_spec(k: KernelArg, stretch: f64) -> Result<ops::KernelSpec, CliError> {
    Ok(ops::KernelSpec::new(match k {
        KernelArg::Exponential => ops::KernelKind::CaputoFabrizio,
        KernelArg::MittagLeffler => ops::KernelKind::AtanganaBaleanu,
        KernelArg::Gaussian => ops::KernelKind::AtanganaGomez,
        KernelArg::Stretched => ops::KernelKind::StretchedExp(stretch),
    })?)
}

/// Apply the requested derivative. Public so that other front ends share
/// the dispatch.
pub fn apply_derivative(f: &SampledFunction, a: &DerivArgs) -> Result<SampledFunction, CliError> {
    let alpha = a.alpha;
    let side: Side = a.side.into();
    if matches!(a.op, DerivOp::Riesz | DerivOp::RieszFeller) && alpha == 1.0 {
        return Err(CliError::Undefined(
            "riesz derivative undefined at alpha=1".into(),
        ));
    }
    Ok(match a.op {
        DerivOp::Rl => ops::rl_derivative(f, alpha, side)?,
        DerivOp::Caputo => ops::caputo_derivative(&left_only(f, a.side, "caputo")?, alpha)?,
        DerivOp::CaputoDiffusive => {
            ops::caputo_diffusive(&left_only(f, a.side, "caputo-diffusive")?, alpha, a.quad_nodes)?
        }
        DerivOp::Gl => ops::gl_derivative(f, alpha, side, a.memory)?,
        DerivOp::Marchaud => ops::marchaud_derivative(f, alpha, side, a.eps.unwrap_or(f.grid.h))?,
        DerivOp::Riesz => ops::riesz_apply(f, alpha, ops::RieszMode::Derivative)?,
        DerivOp::RieszFeller => {
            ops::riesz_feller_derivative(f, ops::FellerParams::new(alpha, a.theta)?, a.eps_cells)?
        }
        DerivOp::Weyl => ops::weyl_derivative(f, alpha, side)?,
        DerivOp::ErdelyiKober => ops::erdelyi_kober(
            f,
            ops::EKParams::new(a.gamma, alpha, a.eta)?,
            ops::EKMode::Derivative,
        )?,
        DerivOp::CaputoFabrizio => ops::caputo_fabrizio(
            &left_only(f, a.side, "caputo-fabrizio")?,
            alpha,
            &ops::KernelSpec::caputo_fabrizio(),
        )?,
        DerivOp::Gc | DerivOp::Grl => {
            let mode = if a.op == DerivOp::Gc {
                ops::KernelMode::GC
            } else {
                ops::KernelMode::GRL
            };
            let f = left_only(f, a.side, "gc/grl")?;
            ops::general_kernel_derivative(&f, alpha, &kernel_spec(a.kernel, a.stretch)?, mode)?
        }
        DerivOp::Tempered => {
            let mode = if a.rl_form {
                ops::TemperedMode::RlDeriv
            } else {
                ops::TemperedMode::Deriv
            };
            ops::tempered_apply(f, ops::TemperedParams::new(alpha, a.lambda)?, mode, side)?
        }
        DerivOp::Conformable => {
            let variant = match a.variant {
                VariantArg::Khalil => ops::ConformableVariant::Khalil,
                VariantArg::Katugampola => ops::ConformableVariant::Katugampola,
            };
            ops::conformable_derivative(&left_only(f, a.side, "conformable")?, alpha, variant)?
        }
        DerivOp::Hausdorff => ops::hausdorff_fractal_derivative(&left_only(f, a.side, "hausdorff")?, alpha)?,
        DerivOp::Jumarie => ops::jumarie_derivative(&left_only(f, a.side, "jumarie")?, alpha)?,
    })
}

/// Operators that exist only in left-sided form reject --side right.
fn left_only(f: &SampledFunction, side: SideArg, op: &str) -> Result<SampledFunction, CliError> {
    match side {
        SideArg::Left => Ok(f.clone()),
        SideArg::Right => Err(CliError::Usage(format!("{op} is left-sided only"))),
    }
}

pub fn apply_integral(f: &SampledFunction, a: &IntegArgs) -> Result<SampledFunction, CliError> {
    let side: Side = a.side.into();
    Ok(match a.op {
        IntegOp::Rl => ops::rl_integral(f, a.alpha, side)?,
        IntegOp::Gl => ops::gl_integral(f, a.alpha, side, a.memory)?,
        IntegOp::Tempered => {
            let p = ops::TemperedParams {
                alpha: a.alpha,
                lambda: a.lambda,
            };
            ops::tempered_apply(f, p, ops::TemperedMode::Integ, side)?
        }
        IntegOp::Riesz => ops::riesz_apply(f, a.alpha, ops::RieszMode::Potential)?,
        IntegOp::ErdelyiKober => ops::erdelyi_kober(
            f,
            ops::EKParams::new(a.gamma, a.alpha, a.eta)?,
            ops::EKMode::Integral,
        )?,
    })
}

fn diffusion_problem(
    beta: f64,
    form: DiffusionForm,
    g: &DiffusionGrid,
) -> Result<DiffusionProblem, CliError> {
    let x = g.x_grid.build()?;
    let t = make_uniform_grid(0.0, g.t_end, g.nt)?;
    let u0 = if g.initial.trim() == "delta" {
        pde::delta_initial(&x)?
    } else {
        sample_expression(&g.initial, &x)?
    };
    Ok(DiffusionProblem::new(beta, t, u0, form)?)
}

fn scalar(out: &mut dyn Write, v: f64) -> Result<(), CliError> {
    writeln!(out, "{}", format_number(v)).map_err(|e| CliError::Input(format!("write: {e}")))
}

pub fn execute(cli: &Cli, tol_env: Option<&str>, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Integ(a) => {
            let r = apply_integral(&load_input(&a.input)?, a)?;
            open_output(&a.output, out, |w| write_sampled(w, &r))
        }
        Command::Deriv(a) => {
            let r = apply_derivative(&load_input(&a.input)?, a)?;
            open_output(&a.output, out, |w| write_sampled(w, &r))
        }
        Command::Mlf(a) => {
            let cfg = series_config(a.tol, tol_env)?;
            let v = if a.gamma == 1.0 {
                specfun::mittag_leffler(&MLParams::new(a.alpha, a.beta)?, a.x, &cfg)?
            } else {
                specfun::prabhakar_ml(&MLParams::prabhakar(a.alpha, a.beta, a.gamma)?, a.x, &cfg)?
            };
            scalar(out, v)
        }
        Command::Wright(a) => {
            let cfg = series_config(a.tol, tol_env)?;
            let v = match (a.aux, a.nu) {
                (Some(aux), Some(nu)) => {
                    let which = match aux {
                        AuxArg::F => Auxiliary::F,
                        AuxArg::M => Auxiliary::M,
                    };
                    specfun::wright_auxiliary(nu, a.z, which, &cfg)?
                }
                _ => {
                    let (Some(l), Some(m)) = (a.lambda, a.mu) else {
                        return Err(CliError::Usage(
                            "give --lambda and --mu, or --aux with --nu".into(),
                        ));
                    };
                    specfun::wright(l, m, a.z, &cfg)?
                }
            };
            scalar(out, v)
        }
        Command::Weights(a) => {
            let w = if a.integral {
                specfun::gl_integral_weights(a.alpha, a.n)?
            } else {
                specfun::gl_weights(a.alpha, a.n)?
            };
            open_output(&a.output, out, |o| {
                let mut wr = csv::Writer::from_writer(o);
                let io = |e: csv::Error| CliError::Input(format!("csv: {e}"));
                wr.write_record(["k", "value"]).map_err(io)?;
                for (k, v) in w.iter().enumerate() {
                    wr.write_record([k.to_string(), format_number(*v)]).map_err(io)?;
                }
                wr.flush().map_err(|e| CliError::Input(format!("write: {e}")))
            })
        }
        Command::StripSolve(a) => {
            let forcing = sample_expression(&a.forcing, &a.grid.build()?)?;
            let y = solve_linear_fde(a.alpha, a.lambda, &forcing, a.y0)?;
            open_output(&a.output, out, |w| write_sampled(w, &y))
        }
        Command::SolveDiffusion(a) => {
            let form = match a.form {
                FormArg::Caputo => DiffusionForm::Caputo,
                FormArg::Rl => DiffusionForm::RiemannLiouville,
            };
            let p = diffusion_problem(a.beta, form, &a.grid)?;
            let sol = pde::solve_time_fractional_diffusion(&p)?;
            open_output(&a.output, out, |w| write_solution(w, &sol))
        }
        Command::SolveDistributed(a) => {
            let spec = match a.uniform {
                Some(m) => DistributedOrderSpec::uniform(m)?,
                None => DistributedOrderSpec::new(a.nodes.clone(), a.weights.clone())?,
            };
            // β of the problem is unused by the distributed solver
            let p = diffusion_problem(spec.nodes[spec.nodes.len() - 1], DiffusionForm::Caputo, &a.grid)?;
            let sol = pde::solve_distributed_order_diffusion(&spec, &p)?;
            open_output(&a.output, out, |w| write_solution(w, &sol))
        }
        Command::Moments(a) => {
            let m = pde::moments(&read_csv(&a.input)?)?;
            open_output(&a.output, out, |w| {
                writeln!(
                    w,
                    "mass,mean,second\n{},{},{}",
                    format_number(m.mass),
                    format_number(m.mean),
                    format_number(m.second)
                )
                .map_err(|e| CliError::Input(format!("write: {e}")))
            })
        }
    }
}
