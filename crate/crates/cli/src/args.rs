use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "bethecount",
    version,
    about = "Exact counts of physical Bethe states in twisted, partially twisted and untwisted spin chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Restricted-occupancy coefficients c(M), for one M or the whole support.
    Count(JobArgs),
    /// Multiplicities or branching coefficients, for one M or the whole support.
    Mu(JobArgs),
    /// Unbroken symmetry of a twist pattern or root subset.
    Symmetry(SymmetryArgs),
    /// Completeness: sum of mu * dim against the Hilbert-space dimension.
    Check(JobArgs),
    /// Cross-check the counting formulas against independent oracles.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Default)]
pub struct TwistArgs {
    /// Preserved roots, e.g. "a2" or "a1,a3" or "a2+a3,a4".
    #[arg(long)]
    pub dplus: Option<String>,

    /// Vanishing twist combinations, e.g. "t1,t3" or "t2+t3"; "" for fully generic twists.
    #[arg(long, visible_alias = "twists", conflicts_with = "dplus")]
    pub zeros: Option<String>,

    /// Exact twist angles theta_1..theta_r in units of 2pi, e.g. "1/3,0,2/3".
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["dplus", "zeros"])]
    pub angles: Option<String>,
}

impl TwistArgs {
    pub fn any(&self) -> bool {
        self.dplus.is_some() || self.zeros.is_some() || self.angles.is_some()
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct JobArgs {
    /// Rank r of su(r+1).
    #[arg(long = "r")]
    pub rank: Option<usize>,

    /// Superalgebra sl(m|n), given as "1,1" or "1,2".
    #[arg(long = "super", value_name = "M,N", conflicts_with = "rank")]
    pub superalgebra: Option<String>,

    /// Twice the site spin, 2s.
    #[arg(long, conflicts_with = "sites")]
    pub twos: Option<u32>,

    /// Number of (bulk) sites.
    #[arg(long = "L", conflicts_with = "sites")]
    pub length: Option<u32>,

    /// Magnon charges M1,...,Mr; omit for the whole table.
    #[arg(long = "M", allow_hyphen_values = true)]
    pub magnons: Option<String>,

    #[command(flatten)]
    pub twist: TwistArgs,

    /// Twice the spin of one impurity site added to the chain.
    #[arg(long, conflicts_with_all = ["sites", "superalgebra"])]
    pub impurity: Option<u32>,

    /// Site representations as Young diagrams, ";"-separated, rows ","-separated (e.g. "2;1;1;1,1").
    #[arg(long, conflicts_with = "superalgebra")]
    pub sites: Option<String>,

    /// Print the signed difference formula behind mu.
    #[arg(long)]
    pub explain: bool,

    /// Affine u(1) charge a + b * row for one-row labels, given as "a,b".
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Option<String>,

    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct SymmetryArgs {
    /// Rank r of su(r+1).
    #[arg(long = "r")]
    pub rank: usize,

    #[command(flatten)]
    pub twist: TwistArgs,

    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Args, Debug, Clone, Default)]
pub struct VerifyArgs {
    /// Cap every family of the suite at this chain length.
    #[arg(long = "max-L")]
    pub max_length: Option<u32>,

    /// Corrupt one coefficient before comparing (negative control).
    #[arg(long, hide = true)]
    pub perturb: bool,

    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}
