//! `nhom`: classify linear maps between finite-dimensional commutative
//! algebras by the shape of their characteristic functions.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on input or usage errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nhom::algebra::DEFAULT_SIZE_BOUND;
use nhom::classify::SamplingPolicy;

#[derive(Parser, Debug)]
#[command(name = "nhom", version, about = "Characteristic functions, n- and p|q-homomorphisms over ℚ")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Truncation order of characteristic series.
    #[arg(long, global = true, default_value_t = 8)]
    pub order: usize,
    /// Largest polynomial degree searched by `analyze`.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_n: usize,
    /// Largest `p + q` searched by `analyze`.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_pq: usize,
    /// Last Hankel index checked; defaults to `p + q + 4`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub k_max: Option<isize>,
    /// Pseudo-random sample elements on top of basis elements and pairwise sums.
    #[arg(long, global = true, default_value_t = 16)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest tensor-power dimension that may be built.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_BOUND)]
    pub size_bound: usize,
    /// Machine-readable output.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Human-readable output (the default).
    #[arg(long, global = true)]
    pub text: bool,
}

impl GlobalOpts {
    pub fn policy(&self) -> SamplingPolicy {
        SamplingPolicy { samples: self.samples, seed: self.seed }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check algebra, map, representation, space and class files.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// f(1), ψ tables on the basis, and the polynomial or rational type of a map.
    Analyze { map: PathBuf },
    /// Exhaustive n-homomorphism test.
    CheckNhom {
        map: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Sampled p|q-homomorphism test by Hankel determinants.
    CheckPqhom {
        map: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Build S^n A or S^{p|q} A.
    Sympow {
        /// Algebra file or builtin name (`Q`, `fun:x,y`, `fun:3`, `trunc:3`).
        algebra: String,
        #[arg(long, conflicts_with_all = ["p", "q"])]
        n: Option<usize>,
        #[arg(long, requires = "q")]
        p: Option<usize>,
        #[arg(long, requires = "p")]
        q: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Move between n-homomorphisms A → B and homomorphisms S^n A → B.
    Correspond {
        #[command(subcommand)]
        direction: Direction,
    },
    /// Points of Sym^{p|q} X for a finite set X.
    Space {
        #[command(subcommand)]
        action: SpaceAction,
    },
    /// Determinant and Berezinian identities for representations.
    Rep {
        #[command(subcommand)]
        action: RepAction,
    },
}

#[derive(Subcommand, Debug)]
enum Direction {
    /// f ↦ F_f.
    ToSym {
        map: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// F ↦ f_F.
    FromSym {
        sym: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Both double transfers, compared entry by entry.
    Roundtrip {
        #[arg(required_unless_present = "sym")]
        map: Option<PathBuf>,
        #[arg(long, requires = "map")]
        n: Option<usize>,
        #[arg(long, conflicts_with = "map")]
        sym: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum SpaceAction {
    Enumerate {
        space: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    Canon {
        space: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Comma-separated point labels, first p then q.
        #[arg(long)]
        tuple: String,
    },
    /// Image equations on every class functional, a class file, or a map.
    Check {
        space: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, conflicts_with = "functional")]
        class: Option<PathBuf>,
        #[arg(long)]
        functional: Option<PathBuf>,
    },
    /// Experimental: grid search for solutions of the image equations that
    /// are not class functionals. Findings are reported, never asserted.
    Probe {
        space: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Comma-separated rationals tried in every coordinate.
        #[arg(long, default_value = "-2,-1,0,1,2", allow_hyphen_values = true)]
        grid: String,
    },
}

#[derive(Subcommand, Debug)]
enum RepAction {
    VerifyDet { rep: PathBuf },
    VerifyBer { rep: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = &cli.opts;
    let result = match cli.command {
        Command::Validate { files } => commands::validate(opts, &files),
        Command::Analyze { map } => commands::analyze(opts, &map),
        Command::CheckNhom { map, n } => commands::check_nhom(opts, &map, n),
        Command::CheckPqhom { map, p, q } => commands::check_pqhom(opts, &map, p, q),
        Command::Sympow { algebra, n, p, q, out } => commands::sympow(opts, &algebra, n, p.zip(q), out.as_deref()),
        Command::Correspond { direction } => match direction {
            Direction::ToSym { map, n, out } => commands::to_sym(opts, &map, n, out.as_deref()),
            Direction::FromSym { sym, out } => commands::from_sym(opts, &sym, out.as_deref()),
            Direction::Roundtrip { map, n, sym } => commands::roundtrip(opts, map.as_deref(), n, sym.as_deref()),
        },
        Command::Space { action } => match action {
            SpaceAction::Enumerate { space, p, q } => commands::space_enumerate(opts, &space, p, q),
            SpaceAction::Canon { space, p, q, tuple } => commands::space_canon(opts, &space, p, q, &tuple),
            SpaceAction::Check { space, p, q, class, functional } => {
                commands::space_check(opts, &space, p, q, class.as_deref(), functional.as_deref())
            }
            SpaceAction::Probe { space, p, q, grid } => commands::space_probe(opts, &space, p, q, &grid),
        },
        Command::Rep { action } => match action {
            RepAction::VerifyDet { rep } => commands::rep_verify_det(opts, &rep),
            RepAction::VerifyBer { rep } => commands::rep_verify_ber(opts, &rep),
        },
    };
    match result {
        Ok(report) => report.emit(opts.json),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(report::exit_code_for(&e))
        }
    }
}
