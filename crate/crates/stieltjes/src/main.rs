use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use stieltjes::cfrac::{self, coefficient_table, expand_stieltjes, Track};
use stieltjes::render::{render_table, RenderSpec};
use stieltjes::ring::Domain;
use stieltjes::seq::{kernel_estimate, sequence_prefix, SignSequence, SubstitutionSystem};
use stieltjes::verify::{self, Perturbation, VerificationReport};
use stieltjes::{Error, Result};

/// Exact-arithmetic toolkit for Stieltjes continued fractions driven by
/// automatic +/-1 sequences.
#[derive(Parser)]
#[command(name = "stieltjes", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first values of a +/-1 sequence.
    Seq {
        /// Built-in sequence: paperfolding or rudin-shapiro.
        #[arg(long, conflicts_with = "config")]
        name: Option<String>,
        /// Substitution system config file (used instead of --name).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        len: usize,
    },
    /// Expand a continued fraction as a truncated power series.
    Expand {
        #[arg(long, conflicts_with = "config")]
        seq: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Truncation order (coefficients of x^0..x^order).
        #[arg(long)]
        order: usize,
        /// Residue modulus; omit to expand over the integers.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Write the series line here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the convergent pair P_n, Q_n at index --n-max.
    Convergent {
        #[arg(long, conflicts_with = "config")]
        seq: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        n_max: usize,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Print the block convergent pairs at dyadic level --n-max.
    Bconvergent {
        #[arg(long, conflicts_with = "config")]
        seq: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        n_max: u32,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Hankel determinants of the expansion by the product formula.
    Hankel {
        #[arg(long, conflicts_with = "config")]
        seq: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Largest determinant order to print.
        #[arg(long)]
        n_max: usize,
    },
    /// Probe the 2-kernel of a sequence (or of its expansion mod m).
    Kernel {
        /// Sequence name; `squares` selects the non-automatic control.
        #[arg(long, conflicts_with = "config")]
        seq: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Number of sequence values (or expansion coefficients) to probe.
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 128)]
        window: usize,
        /// Probe the series expansion coefficients instead of the sequence.
        #[arg(long)]
        expand: bool,
        /// Modulus for --expand (default 4).
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Print a coefficient table as a row-major integer grid.
    Table {
        #[arg(long, conflicts_with = "config")]
        seq: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// P or Q.
        #[arg(long)]
        track: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        i_max: usize,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a coefficient table mod m as a portable pixmap.
    Render {
        #[arg(long, conflicts_with = "config")]
        seq: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// P or Q.
        #[arg(long)]
        track: String,
        /// Rightmost table row n (columns run from n = 1).
        #[arg(long)]
        n_max: usize,
        /// Topmost coefficient index i (rows run from i = 0).
        #[arg(long)]
        i_max: usize,
        #[arg(long = "mod", default_value_t = 4)]
        modulus: u64,
        #[arg(long, default_value_t = 1)]
        scale: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification target; exits 3 when any instance fails.
    Verify {
        /// One of: theorem1, theorem2, lemma-pf, lemma-rs, pb-relations,
        /// eqs-2-5, s-infinity, catalan, heilermann, columns, all.
        target: String,
        /// Series order / bound override (target-dependent).
        #[arg(long)]
        order: Option<usize>,
        /// Largest block level for lemma-pf and pb-relations.
        #[arg(long)]
        n_max: Option<u32>,
        /// Largest block parameter for lemma-rs.
        #[arg(long)]
        j_max: Option<u32>,
        /// Write the machine-readable report (one JSON record per instance).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fault injection: add 1 to one closed-form coefficient (self-test).
        #[arg(long, hide = true)]
        perturb: Option<usize>,
    },
}

fn load_sequence(
    name: &Option<String>,
    config: &Option<PathBuf>,
    len: usize,
) -> Result<SignSequence> {
    match (name, config) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let system = SubstitutionSystem::parse(&text)?;
            SignSequence::from_system("custom", system, len)
        }
        (Some(n), None) => SignSequence::by_name(n, len),
        (None, None) => Err(Error::InvalidArgument(
            "a sequence is required: pass --seq/--name or --config".into(),
        )),
    }
}

fn domain_of(modulus: Option<u64>) -> Result<Domain> {
    match modulus {
        Some(m) => Domain::residues(m),
        None => Ok(Domain::Integers),
    }
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_verify(
    target: &str,
    order: Option<usize>,
    n_max: Option<u32>,
    j_max: Option<u32>,
    perturb: Option<usize>,
) -> Result<Vec<VerificationReport>> {
    let fault = perturb.map(|exponent| Perturbation { exponent });
    let pf_levels: Vec<u32> = (4..=n_max.unwrap_or(10)).collect();
    let rs_params: Vec<u32> = (2..=j_max.unwrap_or(5)).collect();
    let pb_levels: Vec<u32> = (2..=n_max.unwrap_or(10)).collect();
    let no_fault = |target: &str| -> Result<()> {
        if fault.is_some() {
            return Err(Error::InvalidArgument(format!(
                "--perturb is not supported for target `{target}`"
            )));
        }
        Ok(())
    };
    let reports = match target {
        "theorem1" => vec![verify::verify_theorem_perturbed(1, order.unwrap_or(512), fault)?],
        "theorem2" => vec![verify::verify_theorem_perturbed(2, order.unwrap_or(512), fault)?],
        "lemma-pf" => vec![verify::verify_paperfolding_lemma_perturbed(&pf_levels, fault)?],
        "lemma-rs" => vec![verify::verify_rs_lemma_perturbed(&rs_params, fault)?],
        "pb-relations" => vec![
            verify::verify_pb_relations_perturbed("paperfolding", &pb_levels, fault)?,
            verify::verify_pb_relations_perturbed("rudin-shapiro", &pb_levels, None)?,
        ],
        "eqs-2-5" => vec![verify::verify_aux_identities_perturbed(n_max.unwrap_or(8), fault)?],
        "s-infinity" => {
            let orders = match order {
                Some(o) => vec![o],
                None => vec![64, 512],
            };
            vec![verify::verify_s_infinity_perturbed(&orders, fault)?]
        }
        "catalan" => {
            no_fault(target)?;
            vec![verify::verify_catalan(order.unwrap_or(2000))?]
        }
        "heilermann" => {
            no_fault(target)?;
            vec![verify::verify_heilermann(100, 8)?]
        }
        "columns" => {
            no_fault(target)?;
            vec![verify::verify_columns(8, 1 << 12, 4)?]
        }
        "all" => {
            no_fault(target)?;
            vec![
                verify::verify_theorem(1, order.unwrap_or(512))?,
                verify::verify_theorem(2, order.unwrap_or(512))?,
                verify::verify_paperfolding_lemma(&pf_levels)?,
                verify::verify_rs_lemma(&rs_params)?,
                verify::verify_pb_relations("paperfolding", &pb_levels)?,
                verify::verify_pb_relations("rudin-shapiro", &pb_levels)?,
                verify::verify_aux_identities(n_max.unwrap_or(8))?,
                verify::verify_s_infinity(&[64, order.unwrap_or(512)])?,
                verify::verify_catalan(2000)?,
                verify::verify_heilermann(100, 8)?,
                verify::verify_columns(8, 1 << 12, 4)?,
            ]
        }
        other => return Err(Error::InvalidArgument(format!("unknown verify target `{other}`"))),
    };
    Ok(reports)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Seq { name, config, len } => {
            let values = match (&name, &config) {
                (Some(n), None) => sequence_prefix(n, len)?,
                _ => load_sequence(&name, &config, len)?.prefix(len)?.to_vec(),
            };
            let line: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            println!("{}", line.join(" "));
            Ok(0)
        }
        Command::Expand { seq, config, order, modulus, out } => {
            let sequence = load_sequence(&seq, &config, order + 2)?;
            let series = expand_stieltjes(&sequence, order, domain_of(modulus)?)?;
            write_or_print(&out, &format!("{}\n", series.to_line()))?;
            Ok(0)
        }
        Command::Convergent { seq, config, n_max, modulus } => {
            let sequence = load_sequence(&seq, &config, n_max + 1)?;
            let pair = cfrac::convergents(&sequence, n_max, domain_of(modulus)?)?
                .last()
                .expect("iterator yields n_max + 1 pairs");
            print!("{}", pair.to_lines());
            Ok(0)
        }
        Command::Bconvergent { seq, config, n_max, modulus } => {
            let sequence = load_sequence(&seq, &config, 1usize << (n_max + 1))?;
            let quad = cfrac::b_convergents(&sequence, n_max, domain_of(modulus)?)?;
            print!("P: {}\nQ: {}\n", quad.p_prev.to_line(), quad.q_prev.to_line());
            print!("P: {}\nQ: {}\n", quad.p.to_line(), quad.q.to_line());
            Ok(0)
        }
        Command::Hankel { seq, config, n_max } => {
            let sequence = load_sequence(&seq, &config, 2 * n_max + 1)?;
            for n in 1..=n_max {
                let product = verify::hankel_heilermann(&sequence, n)?;
                println!("n={n} heilermann={product}");
            }
            Ok(0)
        }
        Command::Kernel { seq, config, len, depth, window, expand, modulus } => {
            let values: Vec<i64> = if seq.as_deref() == Some("squares") {
                stieltjes::seq::squares_indicator(len)
            } else if expand {
                let sequence = load_sequence(&seq, &config, len + 1)?;
                let domain = Domain::residues(modulus.unwrap_or(4))?;
                let series = expand_stieltjes(&sequence, len - 1, domain)?;
                series
                    .coeffs()
                    .iter()
                    .map(|c| match c {
                        stieltjes::ring::Coeff::Res(v) => *v as i64,
                        _ => unreachable!("residue domain"),
                    })
                    .collect()
            } else {
                let sequence = load_sequence(&seq, &config, len)?;
                sequence.prefix(len)?.iter().map(|&v| v as i64).collect()
            };
            let report = kernel_estimate(&values, 2, depth, window)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            Ok(0)
        }
        Command::Table { seq, config, track, n_max, i_max, modulus, out } => {
            let sequence = load_sequence(&seq, &config, n_max + 1)?;
            let table = coefficient_table(
                &sequence,
                Track::parse(&track)?,
                n_max,
                i_max,
                domain_of(modulus)?,
            )?;
            write_or_print(&out, &table.to_grid(0, n_max))?;
            Ok(0)
        }
        Command::Render { seq, config, track, n_max, i_max, modulus, scale, out } => {
            let sequence = load_sequence(&seq, &config, n_max + 1)?;
            let spec = RenderSpec::new(
                Track::parse(&track)?,
                1..=n_max,
                0..=i_max,
                modulus,
                RenderSpec::default_colors(modulus),
                scale,
            )?;
            let bytes = render_table(&sequence, &spec)?;
            fs::write(&out, bytes)?;
            Ok(0)
        }
        Command::Verify { target, order, n_max, j_max, out, perturb } => {
            let reports = run_verify(&target, order, n_max, j_max, perturb)?;
            let mut all_passed = true;
            let mut jsonl = String::new();
            for report in &reports {
                print!("{}", report.text_lines());
                jsonl.push_str(&report.to_jsonl());
                all_passed &= report.passed();
            }
            if let Some(path) = out {
                fs::write(path, jsonl)?;
            }
            println!("{}: {}", target, if all_passed { "PASS" } else { "FAIL" });
            Ok(if all_passed { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
