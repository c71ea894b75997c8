//! Command-line surface: enumeration, norms with certificates, membership,
//! maximal trees, dual functionals, relabelings, and the verification suite.

mod cache;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ellentuck::combinatorics::{certify, seqs, vertices, xmax_contains, xmax_segment, Vertex};
use ellentuck::dual::FunctionalFamily;
use ellentuck::embed::{phi_vector, psi_vector};
use ellentuck::harness::{run_suite, SuiteConfig};
use ellentuck::norm::{NormEngine, Params, Variant};
use ellentuck::rational::{format_rational, parse_rational};
use ellentuck::wire;

use cache::Cache;

#[derive(Parser)]
#[command(
    name = "ellentuck",
    version,
    about = "Exact combinatorics of high-dimensional Ellentuck spaces and Tsirelson-type norms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Vertices,
    Seqs,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Tk,
    Ta,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Tk => Variant::Tk,
            VariantArg::Ta => Variant::Ta,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Phi,
    Psi,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first elements of the well-order with their 1-based ranks
    Enum {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Kind::Vertices)]
        kind: Kind,
        #[arg(long)]
        json: bool,
    },
    /// Compute the exact norm of a vector (JSON file, or '-' for stdin)
    Norm {
        input: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        theta: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Tk)]
        variant: VariantArg,
        /// Write the norming certificate to this file
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Persistent memo cache file
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide membership of a finite vertex set (JSON array of arrays) in AR^k.
    /// Exit code: 0 member, 1 non-member, 2 error.
    Member {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Inspect the maximal tree X_v^max: membership or certified segments
    Xmax {
        /// Anchor vertex, e.g. 0,2,7
        #[arg(long)]
        v: String,
        /// Print the segment of X_v^max up to this vertex
        #[arg(long)]
        cutoff: Option<String>,
        /// Test whether this vertex belongs to X_v^max
        #[arg(long)]
        contains: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Generate dual functionals over a box, or evaluate the dual norm level
    Dual {
        /// Vector file; omit to just report the generated family
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        theta: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Tk)]
        variant: VariantArg,
        /// Generation depth n
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// The box: the first BOX vertices of the well-order
        #[arg(long = "box", default_value_t = 4)]
        box_size: usize,
        /// List every functional instead of only counting them
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
    },
    /// Relabel a vector along an embedding into the next dimension
    Embed {
        input: PathBuf,
        #[arg(long, value_enum)]
        map: MapArg,
    },
    /// Run the verification suite; exit code 1 on any failing check
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

/// Write one line to stdout; when the downstream consumer closes the pipe,
/// stop quietly like other line-oriented tools do.
fn say(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_fmt(args).and_then(|_| out.write_all(b"\n")).is_err() {
        std::process::exit(0);
    }
}

macro_rules! sayln {
    ($($t:tt)*) => { say(format_args!($($t)*)) };
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn parse_vertex(text: &str) -> Result<Vertex, String> {
    let entries = text
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    Vertex::new(entries).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Enum {
            k,
            count,
            kind,
            json,
        } => {
            if k < 1 {
                return Err("k must be at least 1".into());
            }
            match kind {
                Kind::Vertices => {
                    if json {
                        let rows: Vec<Vec<u32>> =
                            vertices(k).take(count).map(|v| v.entries().to_vec()).collect();
                        sayln!("{}", serde_json::to_string(&rows).unwrap());
                    } else {
                        // the stream is already in ≺ order, so the rank is the position
                        for (i, v) in vertices(k).take(count).enumerate() {
                            sayln!("{}\t{}", i + 1, v);
                        }
                    }
                }
                Kind::Seqs => {
                    if json {
                        let rows: Vec<Vec<u32>> =
                            seqs(k).take(count).map(|s| s.entries().to_vec()).collect();
                        sayln!("{}", serde_json::to_string(&rows).unwrap());
                    } else {
                        for (i, s) in seqs(k).take(count).enumerate() {
                            sayln!("{}\t{}", i + 1, s);
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Norm {
            input,
            d,
            theta,
            variant,
            certificate,
            cache,
            json,
        } => {
            let x = wire::vector_from_json(&read_input(&input)?).map_err(|e| e.to_string())?;
            let params = Params::new(
                x.k(),
                d,
                parse_rational(&theta).map_err(|e| e.to_string())?,
                variant.into(),
            )
            .map_err(|e| e.to_string())?;
            let params_json = wire::params_to_json(&params);
            let vector_json = wire::vector_to_json(&x);

            let mut store = cache.as_deref().map(Cache::load);
            if certificate.is_none() {
                if let Some(store) = &store {
                    if let Some((norm, _digest)) = store.lookup(&params_json, &vector_json) {
                        if Cache::spot_check(&params_json, &vector_json) {
                            let engine = NormEngine::new(params.clone());
                            let fresh =
                                format_rational(&engine.norm_value(&x).map_err(|e| e.to_string())?);
                            if fresh != norm {
                                eprintln!(
                                    "warning: cache mismatch ({norm} cached, {fresh} computed); using computed"
                                );
                                print_norm(&fresh, json);
                                return Ok(ExitCode::SUCCESS);
                            }
                        }
                        print_norm(&norm, json);
                        return Ok(ExitCode::SUCCESS);
                    }
                }
            }

            let engine = NormEngine::new(params.clone());
            let (value, cert) = engine.norm(&x).map_err(|e| e.to_string())?;
            let norm_str = format_rational(&value);
            let cert_json = wire::certificate_to_json(&cert);
            if let Some(path) = &certificate {
                std::fs::write(path, &cert_json).map_err(|e| e.to_string())?;
            }
            if let Some(store) = &mut store {
                store.insert(
                    params_json,
                    vector_json,
                    norm_str.clone(),
                    cache::digest(&cert_json),
                );
                store.save().map_err(|e| e.to_string())?;
            }
            print_norm(&norm_str, json);
            Ok(ExitCode::SUCCESS)
        }

        Command::Member { input, json } => {
            let set = wire::finset_from_json(&read_input(&input)?).map_err(|e| e.to_string())?;
            match certify(&set) {
                Some(approx) => {
                    if json {
                        sayln!("{}", wire::approximation_to_json(&approx));
                    } else {
                        sayln!("member of AR^{}", set.dim());
                        for (s, xv) in approx.witness().assignments() {
                            sayln!("  {s} -> {xv}");
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    sayln!("not a member");
                    Ok(ExitCode::from(1))
                }
            }
        }

        Command::Xmax {
            v,
            cutoff,
            contains,
            json,
        } => {
            let anchor = parse_vertex(&v)?;
            if let Some(w) = contains {
                let w = parse_vertex(&w)?;
                let ans = xmax_contains(&anchor, &w).map_err(|e| e.to_string())?;
                sayln!("{ans}");
                return Ok(ExitCode::SUCCESS);
            }
            let cutoff = cutoff.ok_or("one of --cutoff or --contains is required")?;
            let cutoff = parse_vertex(&cutoff)?;
            let seg = xmax_segment(&anchor, &cutoff).map_err(|e| e.to_string())?;
            if json {
                sayln!("{}", wire::approximation_to_json(&seg));
            } else {
                for w in seg.set().members() {
                    sayln!("{w}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Dual {
            input,
            k,
            d,
            theta,
            variant,
            n,
            box_size,
            list,
            json,
        } => {
            let params = Params::new(
                k,
                d,
                parse_rational(&theta).map_err(|e| e.to_string())?,
                variant.into(),
            )
            .map_err(|e| e.to_string())?;
            let box_vertices: Vec<Vertex> = vertices(k).take(box_size).collect();
            let family =
                FunctionalFamily::generate(&params, n, &box_vertices).map_err(|e| e.to_string())?;
            if let Some(path) = input {
                let x = wire::vector_from_json(&read_input(&path)?).map_err(|e| e.to_string())?;
                let value = family.dual_norm_level(&x, n).map_err(|e| e.to_string())?;
                print_norm(&format_rational(&value), json);
            } else if list {
                for f in family.functionals_up_to(n) {
                    sayln!("{}", wire::functional_to_json(&f));
                }
            } else if json {
                sayln!(
                    "{}",
                    serde_json::json!({"depth": n, "box": box_size, "count": family.count_up_to(n)})
                );
            } else {
                sayln!("{} functionals of depth <= {n}", family.count_up_to(n));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Embed { input, map } => {
            let x = wire::vector_from_json(&read_input(&input)?).map_err(|e| e.to_string())?;
            let y = match map {
                MapArg::Phi => phi_vector(&x),
                MapArg::Psi => psi_vector(&x),
            };
            sayln!("{}", wire::vector_to_json(&y));
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { seed, out, json } => {
            let report = run_suite(&SuiteConfig {
                seed,
                ..SuiteConfig::default()
            })
            .map_err(|e| e.to_string())?;
            if let Some(path) = &out {
                std::fs::write(path, report.to_json()).map_err(|e| e.to_string())?;
            }
            if json {
                sayln!("{}", report.to_json());
            } else {
                print!("{}", report.text_table());
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn print_norm(norm: &str, json: bool) {
    if json {
        sayln!("{}", serde_json::json!({ "norm": norm }));
    } else {
        sayln!("{norm}");
    }
}
