use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conifold_cli::commands::{self, sweep_panel, Inputs, Outcome};
use conifold_cli::{parse_complex, verify, Format, Grid, Settings, CONFIG_ENV};
use conifold_hk::{Complex64, Error};

#[derive(Parser)]
#[command(name = "conifold", version, about = "Resolved-conifold hyperkähler, twistor and conformal-limit numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Periods, τ and the Picard–Fuchs residual on a t point or grid.
    Periods(Common),
    /// Instanton-corrected metric with eigenvalues and tail bound.
    Metric(Common),
    /// η coefficients against the Ooguri–Vafa model along t = 10^(−k)e^(iπ/4).
    OvCompare {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        steps: u32,
    },
    /// ω₃ and ϖ from the twistor Laurent fit against the closed forms.
    TwistorCheck(Common),
    /// The conformal-limit coordinate on t × λ.
    Conformal(Common),
    /// Residual between the conformal limit and the quantum-dilogarithm solution.
    Conjecture {
        #[command(flatten)]
        common: Common,
        /// Number of directions around the whole λ-plane (instead of the base sector panel).
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long, default_value_t = 0.8)]
        radius: f64,
    },
    /// Faddeev's quantum dilogarithm H(t | ω₁, ω₂).
    Qdilog {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        omega1: String,
        #[arg(long, default_value = "0.3+0.7i", allow_hyphen_values = true)]
        omega2: String,
    },
    /// Runs every verification suite; exit status 0 iff all pass.
    VerifyAll {
        #[command(flatten)]
        common: Common,
        /// Restrict to the listed criteria (1–10).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct Common {
    /// Modulus t, e.g. 0.3+0.8i; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    t: Vec<String>,
    /// Twistor parameter λ; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Vec<String>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta_beta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta_beta_vee: f64,
    /// t grid re0:re1:n,im0:im1:m.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long)]
    budget_series_tol: Option<f64>,
    #[arg(long)]
    budget_quad_tol: Option<f64>,
    #[arg(long)]
    budget_max_terms: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// JSON settings file.
    #[arg(long, env = CONFIG_ENV)]
    config: Option<PathBuf>,
}

impl Common {
    fn settings(&self) -> Result<Settings, Error> {
        let mut s = match &self.config {
            Some(p) => Settings::load(p)?,
            None => Settings::default(),
        };
        if let Some(x) = self.budget_series_tol {
            s.budget.series_tol = x;
        }
        if let Some(x) = self.budget_quad_tol {
            s.budget.quad_tol = x;
        }
        if let Some(x) = self.budget_max_terms {
            s.budget.max_terms = x;
        }
        if let Some(x) = self.seed {
            s.seed = x;
        }
        // the instanton sums and twistor fit read their own copies
        s.hk.budget = s.budget;
        s.twistor.hk = s.hk;
        Ok(s)
    }

    fn inputs(&self, default_t: &[Complex64]) -> Result<Inputs, Error> {
        let mut t: Vec<Complex64> = self.t.iter().map(|s| parse_complex(s)).collect::<Result<_, _>>()?;
        if let Some(g) = &self.grid {
            t.extend(Grid::parse(g)?.points());
        }
        if t.is_empty() {
            t = default_t.to_vec();
        }
        let lambda = self.lambda.iter().map(|s| parse_complex(s)).collect::<Result<_, _>>()?;
        Ok(Inputs { t, lambda, theta_beta_vee: self.theta_beta_vee, theta_beta: self.theta_beta })
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(p) => std::fs::write(p, text).map_err(|e| Error::Domain(format!("{}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn finish(common: &Common, settings: &Settings, r: Result<Outcome, Error>) -> Result<i32, Error> {
    let o = r?;
    common.emit(&o.table.render(settings, common.format()))?;
    Ok(o.exit_code())
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Periods(a) => {
            let s = a.settings()?;
            finish(&a, &s, commands::cmd_periods(&s, &a.inputs(&[c(0.1, 0.3)])?))
        }
        Command::Metric(a) => {
            let s = a.settings()?;
            finish(&a, &s, commands::cmd_metric(&s, &a.inputs(&[c(0.0, 0.05)])?))
        }
        Command::OvCompare { common: a, steps } => {
            let s = a.settings()?;
            finish(&a, &s, commands::cmd_ov_compare(&s, &a.inputs(&[])?, steps))
        }
        Command::TwistorCheck(a) => {
            let s = a.settings()?;
            finish(&a, &s, commands::cmd_twistor_check(&s, &a.inputs(&[c(0.1, 0.3)])?))
        }
        Command::Conformal(a) => {
            let s = a.settings()?;
            let mut inputs = a.inputs(&[c(0.3, 0.8)])?;
            if inputs.lambda.is_empty() {
                inputs.lambda.push(c(-1.0, 0.2));
            }
            finish(&a, &s, commands::cmd_conformal(&s, &inputs))
        }
        Command::Conjecture { common: a, sweep, radius } => {
            let s = a.settings()?;
            let inputs = a.inputs(&[c(0.3, 0.8)])?;
            let lambdas = match sweep {
                Some(n) => Some(sweep_panel(n, radius)),
                None if !inputs.lambda.is_empty() => Some(inputs.lambda.clone()),
                None => None,
            };
            finish(&a, &s, commands::cmd_conjecture(&s, &inputs.t, lambdas.as_deref()))
        }
        Command::Qdilog { common: a, omega1, omega2 } => {
            let s = a.settings()?;
            let inputs = a.inputs(&[c(0.2, 0.1)])?;
            let r = commands::cmd_qdilog(&s, &inputs.t, parse_complex(&omega1)?, parse_complex(&omega2)?);
            finish(&a, &s, r)
        }
        Command::VerifyAll { common: a, only } => {
            let s = a.settings()?;
            if let Some(k) = only.iter().find(|k| !(1..=10).contains(*k)) {
                return Err(Error::Domain(format!("no criterion {k}")));
            }
            let report = verify::run(&s, &only);
            let text = match a.format() {
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json(),
            };
            a.emit(&text)?;
            for sm in report.summaries() {
                let mark = if sm.failed == 0 { "PASS" } else { "FAIL" };
                eprintln!("{mark} criterion {} {}: {}/{}", sm.criterion, sm.name, sm.total - sm.failed, sm.total);
            }
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("conifold: {}: {e}", e.kind());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
