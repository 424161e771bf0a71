//! `baseweight`: verification campaigns and one-shot checks from the
//! command line.
//!
//! Exit codes: 0 = all checks pass, 1 = counterexample found,
//! 2 = invalid input or configuration.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use baseweight_core::harness::{run_campaign, CampaignConfig, CampaignSummary, CheckKind};
use baseweight_core::{
    check_egz_via_matroid, check_vosper, egz_witness, CyclicGroup, Error, GroupSet,
    SequenceInstance,
};

#[derive(Parser)]
#[command(name = "baseweight", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the base-weight bound and equality-case check over a catalog.
    VerifyMain(CampaignArgs),
    /// Run the contraction-identity and containment lemma checks over a catalog.
    VerifyLemmas(CampaignArgs),
    /// Compute the sumset of two subsets of Z_n.
    Sumset(PairArgs),
    /// Check the Vosper equality cases for a pair of subsets of Z_p.
    Vosper(PairArgs),
    /// Search zero-sum subsequences of length n in sequences of length 2n-1.
    Egz(EgzArgs),
    /// Run every configured check over a catalog and write a JSONL report.
    Campaign(CampaignArgs),
}

#[derive(Args)]
struct CampaignArgs {
    /// TOML campaign configuration; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// RNG seed override; mandatory when random sampling is enabled.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// JSONL report destination.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Raise every computed bound by one; the run must then report failures.
    #[arg(long)]
    fault_inject: bool,
}

#[derive(Args)]
struct PairArgs {
    /// Group modulus n.
    #[arg(long)]
    modulus: u32,
    /// First operand, comma-separated residues, e.g. 0,1,3.
    #[arg(long, value_delimiter = ',')]
    a: Vec<u32>,
    /// Second operand.
    #[arg(long, value_delimiter = ',')]
    b: Vec<u32>,
}

#[derive(Args)]
struct EgzArgs {
    /// Group modulus n; sequences have length 2n-1.
    #[arg(long)]
    modulus: u32,
    /// Explicit sequence, comma-separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "random")]
    terms: Option<Vec<u32>>,
    /// Number of seeded-random sequences to test instead.
    #[arg(long)]
    random: Option<u64>,
    /// Seed for --random.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Campaign(args) => campaign(args, None),
        Command::VerifyMain(args) => {
            campaign(args, Some(vec![CheckKind::Axioms, CheckKind::Main]))
        }
        Command::VerifyLemmas(args) => {
            campaign(args, Some(vec![CheckKind::Lemma1, CheckKind::Lemma2]))
        }
        Command::Sumset(args) => {
            let (a, b) = parse_pair(&args)?;
            println!("{}", format_set(a.sumset(b)));
            Ok(true)
        }
        Command::Vosper(args) => {
            let (a, b) = parse_pair(&args)?;
            let v = check_vosper(a, b).context("vosper preconditions")?;
            if !v.applicable {
                println!("not applicable: |A+B| != |A|+|B|-1 < p");
                return Ok(true);
            }
            println!(
                "applicable; complement case: {}; common-difference case: {}",
                v.case_complement, v.case_ap
            );
            Ok(v.passes())
        }
        Command::Egz(args) => egz(args),
    }
}

fn campaign(args: CampaignArgs, checks: Option<Vec<CheckKind>>) -> Result<bool> {
    let mut config = match &args.config {
        Some(path) => CampaignConfig::from_toml_file(path)
            .with_context(|| format!("loading {}", path.display()))?,
        None => CampaignConfig::default(),
    };
    if let Some(checks) = checks {
        config.checks = checks;
    }
    if args.seed.is_some() {
        config.seed = args.seed;
    }
    if args.jobs.is_some() {
        config.jobs = args.jobs;
    }
    if args.out.is_some() {
        config.output = args.out;
    }
    config.fault_inject |= args.fault_inject;

    let summary = run_campaign(&config).context("running campaign")?;
    print_summary(&summary);
    Ok(summary.clean())
}

fn print_summary(summary: &CampaignSummary) {
    println!(
        "instances: {}  records: {}  passed: {}  counterexamples: {}  skipped: {}",
        summary.instances, summary.records, summary.passed, summary.counterexamples, summary.skipped
    );
    if summary.records_written > 0 {
        println!("records written: {}", summary.records_written);
    }
}

fn parse_pair(args: &PairArgs) -> Result<(GroupSet, GroupSet)> {
    let group = CyclicGroup::new(args.modulus).context("modulus")?;
    let check = |values: &[u32], name: &str| -> Result<GroupSet> {
        if values.iter().any(|&v| v >= args.modulus) {
            bail!("{name} contains a residue outside 0..{}", args.modulus);
        }
        Ok(group.set_from(values.iter().map(|&v| u64::from(v))))
    };
    Ok((check(&args.a, "--a")?, check(&args.b, "--b")?))
}

fn format_set(s: GroupSet) -> String {
    let values: Vec<String> = s.values().map(|v| v.to_string()).collect();
    format!("{{{}}}", values.join(","))
}

fn egz(args: EgzArgs) -> Result<bool> {
    let group = CyclicGroup::new(args.modulus).context("modulus")?;
    if let Some(terms) = &args.terms {
        return egz_one(group, terms, true);
    }
    let count = args
        .random
        .context("provide either --terms or --random N")?;
    let seed = args.seed.context("--seed is mandatory with --random")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = 2 * args.modulus as usize - 1;
    let mut clean = true;
    for _ in 0..count {
        let terms: Vec<u32> = (0..len).map(|_| rng.gen_range(0..args.modulus)).collect();
        clean &= egz_one(group, &terms, false)?;
    }
    if clean {
        println!("{count} sequences checked, all have zero-sum subsequences of length {}", args.modulus);
    }
    Ok(clean)
}

fn egz_one(group: CyclicGroup, terms: &[u32], verbose: bool) -> Result<bool> {
    let seq = SequenceInstance::new(group, terms);
    let witness = egz_witness(&seq).context("sequence length must be 2n-1")?;
    let matroid_ok = match check_egz_via_matroid(&seq) {
        Ok(ok) => Some(ok),
        Err(Error::RepeatedResidue(_)) => None,
        Err(e) => return Err(e).context("matroid route"),
    };
    match &witness {
        Some(indices) => {
            if verbose {
                println!("witness indices: {indices:?}");
                match matroid_ok {
                    Some(ok) => println!("matroid route (bound and full weight coverage): {ok}"),
                    None => println!("matroid route skipped: a residue repeats n times"),
                }
            }
        }
        None => println!("counterexample: no zero-sum subsequence in {terms:?}"),
    }
    Ok(witness.is_some() && matroid_ok.unwrap_or(true))
}
