use clap::{Args, Parser, Subcommand};
use eix::audit::{self, Tier};
use eix::dirac::{self, hp_conditions, HpRule};
use eix::hjsearch;
use eix::pencil::{self, Membership};
use eix::rational::{format_q, parse_vec8};
use eix::rootdata::{datum, twice_rho_check_pairing};
use eix::tables;
use eix::weyl::w_one;
use eix::{Basis, InfChar, KType, Weight};
use serde::Serialize;
use serde_json::{json, Value};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "eix", version, about = "Dirac series combinatorics for E8(-24)")]
struct Cli {
    /// Worker threads for enumerations (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Root datum facts.
    Roots {
        #[command(subcommand)]
        cmd: RootsCmd,
    },
    /// The 120 coset representatives.
    Wone {
        #[command(subcommand)]
        cmd: WoneCmd,
    },
    SpinNorm(MuArg),
    LambdaNorm(MuArg),
    HpCheck(LambdaArg),
    /// Spin norms along the pencil mu + n beta.
    Pencil {
        #[command(flatten)]
        mu: MuArg,
        #[arg(long, default_value_t = 0)]
        guard: usize,
    },
    Usmall {
        #[command(subcommand)]
        cmd: UsmallCmd,
    },
    Hj {
        #[command(subcommand)]
        cmd: HjCmd,
    },
    /// Validate the scattered-series tables.
    Validate {
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        phi1: Option<PathBuf>,
        /// Write the per-row report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the acceptance criteria.
    Audit {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
    },
}

#[derive(Subcommand)]
enum RootsCmd {
    Info {
        #[arg(long, default_value = "omega")]
        basis: Basis,
    },
}

#[derive(Subcommand)]
enum WoneCmd {
    /// One JSON object per line.
    List,
}

#[derive(Subcommand)]
enum UsmallCmd {
    Test(MuArg),
    Count {
        /// Write the members as JSON lines.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HjCmd {
    Certs {
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    Omega {
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    Phi1 {
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

#[derive(Args)]
struct MuArg {
    /// Comma separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, default_value = "omega")]
    basis: Basis,
}

#[derive(Args)]
struct LambdaArg {
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, default_value = "zeta")]
    basis: Basis,
}

enum Failure {
    Usage(String),
    Check,
    Other(String),
}

impl From<eix::Error> for Failure {
    fn from(e: eix::Error) -> Self {
        match e {
            eix::Error::Io { .. } | eix::Error::Data { .. } => Failure::Other(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

struct Out {
    pretty: bool,
}

impl Out {
    fn emit<T: Serialize>(&self, v: &T) -> Outcome {
        let s = if self.pretty {
            serde_json::to_string_pretty(v)
        } else {
            serde_json::to_string(v)
        }
        .map_err(|e| Failure::Other(e.to_string()))?;
        println!("{s}");
        Ok(())
    }
}

fn parse_mu(a: &MuArg) -> Result<KType, Failure> {
    let w = Weight::new(parse_vec8(&a.mu)?, a.basis);
    Ok(KType::from_weight(&w)?)
}

fn parse_lambda(a: &LambdaArg) -> Result<InfChar, Failure> {
    let w = Weight::new(parse_vec8(&a.lambda)?, a.basis).to(Basis::Zeta);
    Ok(InfChar::new(*w.coords())?)
}

fn write_lines<T: Serialize>(path: &Path, items: impl IntoIterator<Item = T>) -> Outcome {
    let io = |e: std::io::Error| Failure::Other(format!("{}: {e}", path.display()));
    let mut f = BufWriter::new(File::create(path).map_err(io)?);
    for it in items {
        let line = serde_json::to_string(&it).map_err(|e| Failure::Other(e.to_string()))?;
        writeln!(f, "{line}").map_err(io)?;
    }
    f.flush().map_err(io)
}

fn membership_json(m: &Membership) -> Value {
    match m {
        Membership::Vertex(j) => json!({"inside": true, "vertex": j}),
        Membership::Combination(ws) => json!({
            "inside": true,
            "combination": ws.iter().map(|(j, w)| json!([j, w.to_string()])).collect::<Vec<_>>(),
        }),
        Membership::CoweightBound(i) => json!({"inside": false, "coweight_bound": i + 1}),
        Membership::Separated { functional, threshold } => json!({
            "inside": false,
            "functional": functional.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "threshold": threshold.to_string(),
        }),
    }
}

fn run(cli: Cli) -> Outcome {
    let out = Out { pretty: cli.pretty };
    match cli.cmd {
        Cmd::Roots { cmd: RootsCmd::Info { basis } } => {
            let d = datum();
            out.emit(&json!({
                "roots": d.root_count(),
                "positive_roots": d.positive_roots.len(),
                "positive_compact_roots": d.positive_k.len(),
                "dim_k": d.dim_k(),
                "dim_p": d.dim_p(),
                "basis": basis.to_string(),
                "beta": d.beta.to(basis),
                "rho": d.rho.to(basis),
                "rho_c": d.rho_c.to(basis),
                "rho_norm_sq": format_q(&d.rho.norm_sq()),
                "rho_c_norm_sq": format_q(&d.rho_c.norm_sq()),
                "w1": w_one().len(),
            }))
        }
        Cmd::Wone { cmd: WoneCmd::List } => {
            for c in w_one() {
                println!(
                    "{}",
                    json!({"index": c.index, "word": c.element.word(), "rho": c.rho, "rho_n": c.rho_n, "vertex": c.vertex})
                );
            }
            Ok(())
        }
        Cmd::SpinNorm(a) => out.emit(&dirac::spin_norm(&parse_mu(&a)?)),
        Cmd::LambdaNorm(a) => out.emit(&dirac::lambda_params(&parse_mu(&a)?)),
        Cmd::HpCheck(a) => {
            let l = parse_lambda(&a)?;
            let failed: Vec<Vec<char>> = match l.ints() {
                Some(v) if v.iter().all(|&x| x >= 0) => hp_conditions(HpRule::Exact)
                    .into_iter()
                    .filter(|s| s.iter().all(|&i| v[i] == 0))
                    .map(|s| s.iter().map(|&i| (b'a' + i as u8) as char).collect())
                    .collect(),
                _ => Vec::new(),
            };
            out.emit(&json!({
                "lambda": l,
                "hp_integral": dirac::hp_integral(&l),
                "printed_rule": dirac::hp_integral_with(&l, HpRule::Printed),
                "zero_witness": dirac::hp_zero_witness(&l),
                "failed_conditions": failed,
                "norm_sq": format_q(&dirac::norm_sq_infchar(&l)),
                "height_bound": format_q(&twice_rho_check_pairing(&l.weight())),
            }))
        }
        Cmd::Pencil { mu, guard } => out.emit(&pencil::mp(&parse_mu(&mu)?, guard)),
        Cmd::Usmall { cmd: UsmallCmd::Test(a) } => {
            let mu = parse_mu(&a)?;
            let mut v = membership_json(&pencil::membership(&mu));
            v["mu"] = json!(mu);
            out.emit(&v)
        }
        Cmd::Usmall { cmd: UsmallCmd::Count { emit } } => {
            let e = pencil::enumerate_usmall();
            if let Some(p) = emit {
                write_lines(&p, &e.members)?;
            }
            out.emit(&json!({
                "count": e.members.len(),
                "box_points": e.box_points,
                "candidates": e.candidates,
                "stats": e.stats,
            }))
        }
        Cmd::Hj { cmd: HjCmd::Certs { emit } } => {
            let r = hjsearch::compute_certs();
            if let Some(p) = emit {
                write_lines(&p, &r.entries)?;
            }
            let range = r.lambda_sq_range().map(|(a, b)| [format_q(&a), format_q(&b)]);
            out.emit(&json!({"usmall": r.usmall_count, "count": r.entries.len(), "lambda_sq_range": range}))
        }
        Cmd::Hj { cmd: HjCmd::Omega { emit } } => {
            let r = hjsearch::compute_omega();
            if let Some(p) = emit {
                write_lines(&p, &r)?;
            }
            let (lo, hi) = hjsearch::omega_window();
            out.emit(&json!({
                "count": r.len(),
                "window": [format_q(&lo), format_q(&hi)],
                "diagnostics": hjsearch::omega_diagnostics(),
            }))
        }
        Cmd::Hj { cmd: HjCmd::Phi1 { data } } => {
            let list = eix::data::load_phi1(data.as_deref())?;
            out.emit(&hjsearch::validate_phi1(&list))
        }
        Cmd::Validate { data, phi1, report } => {
            let rows = tables::load_tables(data.as_deref())?;
            let phi1 = eix::data::load_phi1(phi1.as_deref())?;
            let rep = tables::validate_tables(&rows, &phi1);
            if let Some(p) = report {
                write_lines(&p, &rep.rows)?;
            }
            out.emit(&rep.summary)?;
            if rep.ok() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Cmd::Audit { quick: _, full } => {
            let m = audit::run(if full { Tier::Full } else { Tier::Quick });
            out.emit(&m)?;
            if m.ok() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("eix: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("eix: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Other(m)) => {
            eprintln!("eix: {m}");
            ExitCode::from(1)
        }
    }
}
