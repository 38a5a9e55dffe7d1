use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::{BigInt, BigRational};

use surface_census::census::{
    appendix_table, classify, family, n_genus, sporadic_witnesses, verify_family, CheckStatus,
    Disposition, FamilyCase,
};
use surface_census::groups::{automorphisms, structure, FiniteGroup, GroupDescriptor};
use surface_census::presentations::{abelianization, coset_enumerate, parse_presentation,
    DEFAULT_COSET_LIMIT};
use surface_census::signatures::{bound_constants, enumerate_sigma, Signature};
use surface_census::ske::{
    enumerate_tuples, eigen_label, orbit_action, orbits, search_cap, TupleMove,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "surface-census",
    version,
    about = "Census of large automorphism groups of Riemann surfaces of genus p+1"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the signature set Sigma_lambda with its bound constants.
    Sigma {
        /// Measure bound lambda as an integer or fraction, e.g. 8 or 13/2.
        #[arg(long, default_value = "8")]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the published Sigma_8 table (41 rows plus the two families).
    Appendix {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Normalized hyperbolic measure mu/2pi of a signature.
    Measure { sig: String },
    /// The fraction q = mu/4pi = r/s in lowest terms.
    Q { sig: String },
    /// Riemann-Hurwitz genus of an action with the given signature and order.
    Genus { sig: String, order: u64 },
    /// Construct a group from its descriptor and report on it.
    Group {
        desc: String,
        /// Also print center, derived subgroup, and abelianization.
        #[arg(long)]
        structure: bool,
        /// Also print |Aut(G)| (subject to the search cap).
        #[arg(long)]
        aut: bool,
    },
    /// Order of a finitely presented group by coset enumeration.
    Order {
        pres_file: PathBuf,
        /// Maximum number of live cosets.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Abelian invariants of a finitely presented group.
    Abelian { pres_file: PathBuf },
    /// Count surface-kernel generating tuples for a signature onto a group.
    Ske {
        desc: String,
        sig: String,
        /// Also print the Aut(G)-orbit decomposition.
        #[arg(long)]
        orbits: bool,
        /// Also print the eigenvalue label of each orbit.
        #[arg(long)]
        labels: bool,
        /// Also print the braid and reflection pairings of orbits.
        #[arg(long)]
        pairings: bool,
    },
    /// Instantiate one of the six families (i..vi) at a prime p.
    Family {
        case: String,
        p: u64,
        /// Run the full mechanical verification.
        #[arg(long)]
        verify: bool,
    },
    /// N(p+1): the maximal automorphism count in genus p+1.
    Ngenus { p: u64 },
    /// Candidate analysis over Sigma_lambda for genus p+1.
    Classify {
        p: u64,
        #[arg(long, default_value = "8")]
        lambda: String,
    },
    /// Verify the three sporadic small-genus extremal actions.
    Sporadic,
}

fn parse_lambda(s: &str) -> Result<BigRational, String> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("cannot parse {:?} as an integer", t))
    };
    let r = match s.split_once('/') {
        Some((num, den)) => BigRational::new(parse_int(num)?, parse_int(den)?),
        None => BigRational::from_integer(parse_int(s)?),
    };
    Ok(r)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// Ok(true) = success, Ok(false) = verification failure (exit 1).
fn run(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    match cli.cmd {
        Cmd::Sigma { lambda, format } => {
            let l = parse_lambda(&lambda)?;
            let sigma = enumerate_sigma(&l)?;
            let bc = bound_constants(&sigma);
            match format {
                Format::Json => {
                    println!("{}", json(&serde_json::json!({
                        "lambda": sigma.lambda,
                        "finite": sigma.finite,
                        "tails": sigma.tails.iter().map(|t| serde_json::json!({
                            "prefix": t.prefix, "min_n": t.min_n,
                        })).collect::<Vec<_>>(),
                        "p_max_r": bc.p_max_r,
                        "p_max_period": bc.p_max_period,
                        "s_max": bc.s_max,
                        "c_lambda": format!(
                            "max{{{}, {}, {}, 3*(20!)^2/2}}",
                            bc.p_max_r, bc.p_max_period, bc.s_max + 1
                        ),
                    })));
                }
                Format::Csv => {
                    println!("signature,s_over_r");
                    for sig in &sigma.finite {
                        println!("{},{}", sig, sig.q_fraction()?.inverted_string());
                    }
                }
                Format::Text => {
                    println!("Sigma_{}: {} finite members", sigma.lambda, sigma.finite.len());
                    for sig in &sigma.finite {
                        println!("  {:<14} |G|/(g-1) = {}", sig.to_string(),
                            sig.q_fraction()?.inverted_string());
                    }
                    for t in &sigma.tails {
                        let prefix: Vec<String> = t.prefix.iter().map(u64::to_string).collect();
                        println!("  ({},n) for n >= {}", prefix.join(","), t.min_n);
                    }
                    println!(
                        "constants: p_max_r = {}, p_max_period = {}, s_max = {}",
                        bc.p_max_r, bc.p_max_period, bc.s_max
                    );
                    println!(
                        "c_lambda = max{{{}, {}, {}, 3*(20!)^2/2}}",
                        bc.p_max_r, bc.p_max_period, bc.s_max + 1
                    );
                }
            }
        }
        Cmd::Appendix { format } => {
            let rows = appendix_table();
            match format {
                Format::Json => println!("{}", json(&rows)),
                Format::Csv => {
                    println!("signature,s_over_r");
                    for row in &rows {
                        println!("{},{}", row.signature, row.value);
                    }
                }
                Format::Text => {
                    for row in &rows {
                        println!("{:<14} {}", row.signature.to_string(), row.value);
                    }
                }
            }
        }
        Cmd::Measure { sig } => {
            let sig: Signature = sig.parse()?;
            println!("{}", sig.normalized_measure());
        }
        Cmd::Q { sig } => {
            let sig: Signature = sig.parse()?;
            let q = sig.q_fraction()?;
            println!("{}/{}", q.r(), q.s());
        }
        Cmd::Genus { sig, order } => {
            let sig: Signature = sig.parse()?;
            println!("{}", sig.rh_genus(order)?);
        }
        Cmd::Group { desc, structure: want_structure, aut } => {
            let d: GroupDescriptor = desc.parse()?;
            let g = FiniteGroup::construct(&d)?;
            println!("{}: order {}", d, g.order());
            if want_structure {
                let s = structure(&g);
                let inv: Vec<String> =
                    s.abelian_invariants.iter().map(u64::to_string).collect();
                println!("center order:  {}", s.center_order);
                println!("derived order: {}", s.derived_order);
                println!("G/G':          [{}]", inv.join(", "));
                println!("perfect:       {}", s.is_perfect);
            }
            if aut {
                let a = automorphisms(&g, search_cap())?;
                println!("|Aut(G)|:      {}", a.order());
            }
        }
        Cmd::Order { pres_file, limit } => {
            let text = fs::read_to_string(&pres_file)?;
            let pres = parse_presentation(&text)?;
            let table = coset_enumerate(&pres, &[], limit.unwrap_or(DEFAULT_COSET_LIMIT))?;
            println!("{}", table.cosets);
        }
        Cmd::Abelian { pres_file } => {
            let text = fs::read_to_string(&pres_file)?;
            let pres = parse_presentation(&text)?;
            let ab = abelianization(&pres);
            let inv: Vec<String> = ab.invariants.iter().map(u64::to_string).collect();
            println!("[{}]", inv.join(", "));
        }
        Cmd::Ske { desc, sig, orbits: want_orbits, labels, pairings } => {
            let d: GroupDescriptor = desc.parse()?;
            let g = FiniteGroup::construct(&d)?;
            let sig: Signature = sig.parse()?;
            if !(want_orbits || labels || pairings) {
                let tuples = enumerate_tuples(&g, &sig)?;
                println!("{} tuples", tuples.len());
                if !tuples.is_empty() {
                    println!("genus {}", sig.rh_genus(g.order() as u64)?);
                }
                return Ok(true);
            }
            let a = orbits(&g, &sig)?;
            println!("{} tuples, |Aut(G)| = {}, {} orbits", a.tuples.len(), a.aut_order,
                a.orbit_count());
            if let Some(genus) = a.genus {
                println!("genus {}", genus);
            }
            if labels {
                for (i, orbit) in a.orbits.iter().enumerate() {
                    match eigen_label(&g, &orbit.rep) {
                        Ok(l) => println!("orbit {}: label {} (mod {})", i, l.j, l.modulus),
                        Err(e) => println!("orbit {}: no label ({})", i, e),
                    }
                }
            }
            if pairings {
                for mv in [TupleMove::BraidSwap, TupleMove::Reflect] {
                    match orbit_action(&g, &a, mv) {
                        Ok(map) => println!("{}: {:?}", mv, map),
                        Err(e) => println!("{}: not applicable ({})", mv, e),
                    }
                }
            }
        }
        Cmd::Family { case, p, verify } => {
            let case: FamilyCase = case.parse()?;
            if !verify {
                let rec = family(case, p)?;
                println!(
                    "family ({}) at p = {}: {} acting with {} on genus {}",
                    rec.case, rec.p, rec.group, rec.signature, rec.genus
                );
                println!("order {}", rec.order);
                println!(
                    "{} orbits, {} surfaces; {}; congruence: {}",
                    rec.predicted_orbits, rec.predicted_surfaces, rec.chirality, rec.congruence
                );
                return Ok(true);
            }
            let v = verify_family(case, p)?;
            println!(
                "family ({}) at p = {}: {} with {} -> genus {}",
                v.record.case, v.record.p, v.record.group, v.record.signature, v.record.genus
            );
            println!(
                "{} tuples, |Aut(G)| = {}, {} orbits, {} surfaces",
                v.tuple_count, v.aut_order, v.orbit_count, v.surface_count
            );
            for c in &v.checks {
                let tag = match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Skipped => "skip",
                };
                println!("[{}] {}: {}", tag, c.name, c.detail);
            }
            return Ok(v.passed);
        }
        Cmd::Ngenus { p } => {
            let r = n_genus(p)?;
            println!("N({}) = {}", r.genus, r.value);
            println!("source: {:?}", r.source);
            match &r.witness {
                Some(w) => println!(
                    "witness: {} with {} ({})",
                    w.group,
                    w.signature,
                    if w.verified { "verified" } else { "above cap, not searched" }
                ),
                None => println!("witness: none available"),
            }
        }
        Cmd::Classify { p, lambda } => {
            let l = parse_lambda(&lambda)?;
            let report = classify(p, &l)?;
            println!(
                "genus {} (p = {}), lambda = {}: {} candidates",
                report.genus, report.p, report.lambda, report.entries.len()
            );
            let obstructions: Vec<String> =
                report.r1_obstruction_s.iter().map(u64::to_string).collect();
            println!("r = 1 obstruction s-values: {{{}}}", obstructions.join(", "));
            for e in &report.entries {
                let disp = match &e.disposition {
                    Disposition::Family { case } => format!("family ({})", case),
                    Disposition::EliminatedArithmetic { condition } => {
                        format!("eliminated [arithmetic]: {}", condition)
                    }
                    Disposition::EliminatedCited { section, argument } => {
                        format!("eliminated [cited: {}]: {}", section, argument)
                    }
                };
                println!("  {:<12} |G| = {:<6} r = {:<3} {}", e.signature.to_string(),
                    e.group_order, e.r, disp);
            }
            println!("survivors:");
            for (sig, case) in &report.survivors {
                println!("  {} -> family ({})", sig, case);
            }
            println!("mechanized facts:");
            for f in &report.mechanized_facts {
                println!("  - {}", f);
            }
            println!("citations:");
            for c in &report.citations {
                println!("  - {}", c);
            }
        }
        Cmd::Sporadic => {
            let mut all = true;
            for w in sporadic_witnesses()? {
                println!(
                    "{} with {}: order {}, genus {}, tuple {}",
                    w.group,
                    w.signature,
                    w.order,
                    w.genus,
                    if w.exists { "found" } else { "MISSING" }
                );
                all &= w.exists;
            }
            return Ok(all);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}
