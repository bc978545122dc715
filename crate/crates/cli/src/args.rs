use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tgw_core::WorkbenchConfig;

#[derive(Parser, Debug)]
#[command(name = "tgw", version, about = "Workbench for finite ternary Gamma-semirings and their modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input files (.tga, .tgm, .tgs, .tgf); all share one namespace.
    #[arg(value_name = "FILE")]
    pub files: Vec<PathBuf>,
    #[arg(long = "input", short = 'i', value_name = "FILE")]
    pub input: Vec<PathBuf>,
    /// Emit the JSON report (the only output format).
    #[arg(long, default_value_t = true)]
    pub json: bool,
    #[arg(long, overrides_with = "no_strict_zero")]
    pub strict_zero: bool,
    #[arg(long, overrides_with = "strict_zero")]
    pub no_strict_zero: bool,
    #[arg(long, value_name = "N", default_value_t = 3)]
    pub truncation: usize,
    /// Largest carrier of any constructed object.
    #[arg(long, value_name = "N", default_value_t = 4096)]
    pub budget: usize,
    /// Most candidates visited by any enumeration or search.
    #[arg(long, value_name = "N", default_value_t = 10_000_000)]
    pub search_budget: u64,
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub seed: u64,
    /// Skip validating the inputs before running.
    #[arg(long)]
    pub no_check: bool,
}

impl Common {
    pub fn config(&self) -> WorkbenchConfig {
        WorkbenchConfig {
            strict_zero: !self.no_strict_zero,
            truncation: self.truncation,
            element_budget: self.budget,
            search_budget: self.search_budget,
            seed: self.seed,
        }
    }

    pub fn paths(&self) -> Vec<PathBuf> {
        self.files.iter().chain(&self.input).cloned().collect()
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every structure in the inputs against its axioms.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate semirings, modules or morphisms.
    Enumerate {
        #[arg(value_enum)]
        what: EnumerateWhat,
        /// Carrier size of the enumerated semirings or modules.
        #[arg(long, default_value_t = 2)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        gammas: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Sampled runs.
        #[arg(long, default_value_t = 16)]
        count: usize,
        #[arg(long)]
        semiring: Option<String>,
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// The internal hom of two modules.
    Hom {
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// The tensor product of two modules.
    Tensor {
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Hom(M ⊗ N, P) against multilinear maps M × N → P.
    CurryCheck {
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Exactness certification over the input modules (default: every
    /// module of size at most 2 over B1).
    Barr {
        #[arg(long = "module")]
        modules: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Moore homology of a simplicial object (a module is read as constant).
    Homology {
        #[arg(long)]
        object: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Whether a map induces isomorphisms on homology.
    Weq {
        #[arg(long)]
        map: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Horn filling for a map, or for an object over the point.
    Fibration {
        #[arg(long)]
        map: Option<String>,
        #[arg(long, conflicts_with = "map")]
        object: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Path object certification.
    PathObject {
        #[arg(long)]
        object: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Build and certify the 3-angle of a map.
    Angle {
        #[arg(long)]
        map: Option<String>,
        /// Also compute the long exact homology sequence.
        #[arg(long)]
        les: bool,
        #[arg(long)]
        nmax: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Rotate the 3-angle of a map and re-certify.
    Rotate {
        #[arg(long)]
        map: Option<String>,
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Extend a square between the bases of two 3-angles.
    Extend {
        #[arg(long)]
        map: Option<String>,
        #[arg(long, value_enum, default_value_t = Ladder::Identity)]
        ladder: Ladder,
        /// The second base map, with --u and --v; overrides --ladder.
        #[arg(long, requires_all = ["u", "v"])]
        other: Option<String>,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// The monoid of parameter relabelings fixing the product, and its
    /// action on the homology sequence of a 3-angle.
    GammaEnd {
        #[arg(long)]
        semiring: Option<String>,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        nmax: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Prime spectrum with its topology.
    Spec {
        #[arg(long)]
        semiring: Option<String>,
        #[arg(long, value_enum, default_value_t = PrimalityArg::Any)]
        primality: PrimalityArg,
        /// Let the whole semiring count as a prime.
        #[arg(long)]
        improper_primes: bool,
        /// Only proper ideals count as ideals.
        #[arg(long)]
        proper_ideals: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Presheaf laws and the sheaf condition.
    SheafCheck {
        #[arg(long)]
        sheaf: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Čech cohomology of a cover.
    Cech {
        #[arg(long)]
        sheaf: Option<String>,
        /// Cover members as `{p,q}`; repeat the flag.
        #[arg(long = "cover", required = true)]
        cover: Vec<String>,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Emit the built-in corpus.
    Corpus {
        /// Directory to write the files into.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Check { common }
            | Command::Enumerate { common, .. }
            | Command::Hom { common, .. }
            | Command::Tensor { common, .. }
            | Command::CurryCheck { common, .. }
            | Command::Barr { common, .. }
            | Command::Homology { common, .. }
            | Command::Weq { common, .. }
            | Command::Fibration { common, .. }
            | Command::PathObject { common, .. }
            | Command::Angle { common, .. }
            | Command::Rotate { common, .. }
            | Command::Extend { common, .. }
            | Command::GammaEnd { common, .. }
            | Command::Spec { common, .. }
            | Command::SheafCheck { common, .. }
            | Command::Cech { common, .. }
            | Command::Corpus { common, .. } => common,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Enumerate { .. } => "enumerate",
            Command::Hom { .. } => "hom",
            Command::Tensor { .. } => "tensor",
            Command::CurryCheck { .. } => "curry-check",
            Command::Barr { .. } => "barr",
            Command::Homology { .. } => "homology",
            Command::Weq { .. } => "weq",
            Command::Fibration { .. } => "fibration",
            Command::PathObject { .. } => "path-object",
            Command::Angle { .. } => "angle",
            Command::Rotate { .. } => "rotate",
            Command::Extend { .. } => "extend",
            Command::GammaEnd { .. } => "gamma-end",
            Command::Spec { .. } => "spec",
            Command::SheafCheck { .. } => "sheaf-check",
            Command::Cech { .. } => "cech",
            Command::Corpus { .. } => "corpus",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerateWhat {
    Semirings,
    Modules,
    Morphisms,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    Identity,
    Zero,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimalityArg {
    Any,
    Outer,
}
