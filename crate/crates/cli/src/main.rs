//! zerolink: oscillatory sums over L-function zeros and zero detection.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};

use config::GlobalOpts;

#[derive(Parser)]
#[command(name = "zerolink", version, about = "Zero-side and prime-side sums over zeta zeros, \
explicit-formula cross-checks, and detection of Dirichlet L-function zero ordinates")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Windowed zero sum Z(x;t,alpha) over the zeta ordinates
    Zsum(commands::ZsumArgs),
    /// Mollified prime sum Psi(x;s,alpha)
    Psisum(commands::PsisumArgs),
    /// Character-twisted zero sum |sum_a conj(chi)(a) Z(x;t,a/q)|
    Twisted(commands::TwistedArgs),
    /// Fujii's finite sum over ordinates up to x
    Fujii(commands::FujiiArgs),
    /// Linnik-Sprindzuk tail-damped sum over all ordinates
    Linnik(commands::LinnikArgs),
    /// Cross-check Psi against the zero-side sum (explicit-formula identity)
    ExplicitCheck(commands::ExplicitCheckArgs),
    /// Reproduce the twisted-sum magnitude curve with its prime-side companion
    Figure1(commands::Figure1Args),
    /// Scan a t-range, detect peaks, and match them to reference ordinates
    Detect(commands::DetectArgs),
    /// Rational/irrational growth dichotomy of |Z(x;0,alpha)| log x / sqrt(x)
    Dichotomy(commands::DichotomyArgs),
    /// Locate L-function zeros by the argument principle
    FindZeros(commands::FindZerosArgs),
    /// Validate a zeta zero file against the counting asymptotics
    ValidateZeros(commands::ValidateZerosArgs),
    /// Numerical checks of the exponential-integral lemmas
    GlemmaCheck(commands::GlemmaCheckArgs),
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("{}", output::error_json(&e));
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> zerolink::Result<()> {
    let ctx = config::Context::build(&cli.global)?;
    match cli.command {
        Command::Zsum(a) => commands::zsum(&ctx, &a),
        Command::Psisum(a) => commands::psisum(&ctx, &a),
        Command::Twisted(a) => commands::twisted(&ctx, &a),
        Command::Fujii(a) => commands::fujii(&ctx, &a),
        Command::Linnik(a) => commands::linnik(&ctx, &a),
        Command::ExplicitCheck(a) => commands::explicit_check(&ctx, &a),
        Command::Figure1(a) => commands::figure1(&ctx, &a),
        Command::Detect(a) => commands::detect(&ctx, &a),
        Command::Dichotomy(a) => commands::dichotomy(&ctx, &a),
        Command::FindZeros(a) => commands::find_zeros(&ctx, &a),
        Command::ValidateZeros(a) => commands::validate_zeros(&ctx, &a),
        Command::GlemmaCheck(a) => commands::glemma_check(&ctx, &a),
    }
}
