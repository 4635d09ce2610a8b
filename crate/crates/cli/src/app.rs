use crate::selftest::{self, Mode};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use sha2::{Digest, Sha256};
use shortgf_core::barvinok::{parse_polyhedron, polytope_gf};
use shortgf_core::calculus::{
    boolean_combine, choose_tau, coefficient, complement_in_box, compress, decompress, evaluate_at_one_seeded,
    hadamard, minkowski_oracle, norm, oracle_project_limited, BoolMode, NormResult, ProjectMode, TauMap,
};
use shortgf_core::gf::{expand, parse_gf};
use shortgf_core::presburger::{parse_pa, qf_to_gf};
use shortgf_core::{Error, ExponentVector, LatticeBox, ShortGf};
use shortgf_encoder::{
    compress_encoding, encode_alternating, encode_segment, parse_circuit, parse_segment, segment_gf, Prefix,
    DEFAULT_LIMIT,
};
use shortgf_numlab as numlab;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Semantic(String),
    Resource(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Semantic(m) | CliError::Resource(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(m) => CliError::Resource(m),
            other => CliError::Semantic(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Semantic(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "shortgf", version, about = "Short rational generating functions: counting, operations, encodings")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Box `[0, 2^k1) × [0, 2^k2) × …` given by exponents; one value applies to every coordinate.
    #[arg(long = "box", global = true, value_delimiter = ',')]
    pub bx: Vec<u32>,
    /// Cap on lattice points enumerated by oracle steps.
    #[arg(long, global = true, default_value_t = DEFAULT_LIMIT)]
    pub limit_points: u64,
    /// Write the primary result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of lattice points of a GF, polyhedron, or quantifier-free formula (with --box).
    Count { file: PathBuf },
    /// A single coefficient.
    Coeff {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Vec<i64>,
    },
    /// Coordinatewise maxima of the support inside the box.
    Norm { file: PathBuf },
    /// Apply an operation to GF files.
    Op(OpArgs),
    /// Projection onto the kept coordinates (oracle route).
    Project {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        keep: Vec<usize>,
    },
    /// Encode a circuit as a segment encoding.
    Encode {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        emit_pieces: Option<PathBuf>,
        /// Compress the witness coordinates to one variable.
        #[arg(long)]
        compress: bool,
    },
    /// Recover the language segment from an encoding.
    Segment { file: PathBuf },
    /// Language of a circuit with certificate inputs under a quantifier prefix.
    Alt {
        #[arg(long, default_value = "EA")]
        prefix: String,
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Number-theoretic demonstrations.
    #[command(subcommand)]
    Demo(Demo),
    /// Run the acceptance suites.
    Selftest {
        #[arg(long)]
        quick: bool,
        /// Run only these suite numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum OpKind {
    Hadamard,
    Union,
    Intersect,
    Minus,
    Complement,
    Minkowski,
    Compress,
    Decompress,
    Project,
    Antiproject,
    Specialize,
}

#[derive(Args, Debug)]
pub struct OpArgs {
    pub kind: OpKind,
    pub inputs: Vec<PathBuf>,
    /// Coordinates kept by project/antiproject/specialize.
    #[arg(long, value_delimiter = ',')]
    pub keep: Vec<usize>,
    /// `LOGN:g1,g2,…` for compress/decompress.
    #[arg(long)]
    pub tau: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Demo {
    /// The squares below 2^r and their generating function.
    Squares {
        #[arg(long)]
        r: u32,
    },
    /// Four-square counts against the divisor formula.
    Jacobi {
        #[arg(long, default_value_t = 16)]
        r: u32,
        #[arg(long = "K", default_value_t = 50)]
        k: usize,
    },
    /// Factor a semiprime from its divisor sum.
    Factor {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        sigma: u64,
    },
    /// Count square roots modulo β up to γ.
    Sqcong {
        #[arg(long)]
        alpha: u64,
        #[arg(long)]
        beta: u64,
        #[arg(long)]
        gamma: u64,
    },
    /// Prime counting by a Hadamard product.
    Pi {
        #[arg(long)]
        n: u64,
    },
    /// First arithmetic progression of length k in a set file.
    Ap {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Semantic(format!("{}: {e}", path.display())))
}

fn digest(text: &str) -> String {
    hex::encode(&Sha256::digest(text.as_bytes())[..8])
}

struct Ctx<'a> {
    cli: &'a Cli,
    inputs: Vec<(String, String)>,
}

impl Ctx<'_> {
    fn load(&mut self, path: &Path) -> Result<String> {
        let text = read(path)?;
        self.inputs.push((path.display().to_string(), digest(&text)));
        Ok(text)
    }

    fn gf(&mut self, path: &Path) -> Result<ShortGf> {
        let text = self.load(path)?;
        parse_gf(&text).map_err(|e| CliError::Semantic(format!("{}: {e}", path.display())))
    }

    fn bx(&self, n: usize) -> Result<LatticeBox> {
        let exps = match self.cli.bx.len() {
            0 => return Err(CliError::Usage("--box is required for this operation".into())),
            1 => vec![self.cli.bx[0]; n],
            k if k == n => self.cli.bx.clone(),
            k => return Err(CliError::Usage(format!("--box has {k} entries, expected 1 or {n}"))),
        };
        if exps.iter().any(|&k| k > 256) {
            return Err(CliError::Usage("box exponents must be at most 256".into()));
        }
        Ok(LatticeBox::new(exps.iter().map(|&k| BigInt::from(1) << k).collect()))
    }

    fn check_points(&self, bx: &LatticeBox) -> Result<()> {
        if bx.num_points() > BigInt::from(self.cli.limit_points) {
            return Err(CliError::Resource(format!(
                "box has {} points, --limit-points is {}",
                bx.num_points(),
                self.cli.limit_points
            )));
        }
        Ok(())
    }

    fn provenance(&self, verb: &str) -> String {
        let inputs: Vec<String> = self.inputs.iter().map(|(p, d)| format!("{p}:sha256={d}")).collect();
        format!(
            "# shortgf {} {verb} seed={} inputs=[{}]",
            env!("CARGO_PKG_VERSION"),
            self.cli.seed,
            inputs.join(" ")
        )
    }
}

fn emit(cli: &Cli, out: &mut dyn Write, text: &str) -> Result<()> {
    match &cli.output {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn int_text(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_tau(spec: &str) -> Result<TauMap> {
    let bad = || CliError::Usage(format!("--tau expects LOGN:g1,g2,…, got `{spec}`"));
    let (n, groups) = spec.split_once(':').ok_or_else(bad)?;
    let log_n: u32 = n.parse().map_err(|_| bad())?;
    let groups: Vec<usize> = groups.split(',').map(|g| g.parse().map_err(|_| bad())).collect::<Result<_>>()?;
    Ok(TauMap::new(log_n, groups)?)
}

/// Runs one command; the primary result goes to `out` (or `-o`), the provenance line to stderr.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let mut ctx = Ctx { cli, inputs: Vec::new() };
    let verb = match &cli.command {
        Command::Count { file } => {
            let text = ctx.load(file)?;
            let head = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
            let f = if head.starts_with("gf ") {
                parse_gf(&text)?
            } else if head.starts_with("poly ") {
                polytope_gf(&parse_polyhedron(&text)?)?
            } else {
                let phi = parse_pa(&text)?;
                let vars = phi.free_vars();
                qf_to_gf(&phi, &vars, &ctx.bx(vars.len())?)?
            };
            let c = evaluate_at_one_seeded(&f, cli.seed)?;
            emit(cli, out, &format!("{c}\n"))?;
            "count"
        }
        Command::Coeff { file, at } => {
            let f = ctx.gf(file)?;
            if at.len() != f.nvars {
                return Err(CliError::Usage(format!("--at needs {} entries", f.nvars)));
            }
            let c = coefficient(&f, &ExponentVector::from_i64(at))?;
            emit(cli, out, &format!("{c}\n"))?;
            "coeff"
        }
        Command::Norm { file } => {
            let f = ctx.gf(file)?;
            let r = match cli.bx.as_slice() {
                [] => return Err(CliError::Usage("--box is required for norm".into())),
                v => *v.iter().max().expect("nonempty"),
            };
            let text = match norm(&f, r)? {
                NormResult::Empty => "empty\n".to_string(),
                NormResult::Max { coords, norm } => format!("norm {norm} coords {}\n", int_text(&coords)),
            };
            emit(cli, out, &text)?;
            "norm"
        }
        Command::Op(args) => {
            let g = op(&mut ctx, args)?;
            emit(cli, out, &g.to_string())?;
            "op"
        }
        Command::Project { file, keep } => {
            let f = ctx.gf(file)?;
            let bx = ctx.bx(f.nvars)?;
            if keep.is_empty() || keep.iter().any(|&i| i >= f.nvars) {
                return Err(CliError::Usage(format!("--keep needs coordinates below {}", f.nvars)));
            }
            let g = oracle_project_limited(&f, keep, &bx, ProjectMode::Project, Some(cli.limit_points))?;
            emit(cli, out, &g.to_string())?;
            "project"
        }
        Command::Encode { circuit, emit_pieces, compress } => {
            let c = parse_circuit(&ctx.load(circuit)?)?;
            let mut enc = encode_segment(&c, cli.limit_points)?;
            if *compress {
                enc = compress_encoding(&enc)?;
            }
            if let Some(dir) = emit_pieces {
                std::fs::create_dir_all(dir)?;
                for (i, p) in enc.pieces.iter().enumerate() {
                    std::fs::write(dir.join(format!("piece_{i}.gf")), p.to_string())?;
                }
            }
            emit(cli, out, &enc.to_string())?;
            "encode"
        }
        Command::Segment { file } => {
            let enc = parse_segment(&ctx.load(file)?)?;
            let g = segment_gf(&enc, cli.limit_points)?;
            let xb = LatticeBox::new(vec![BigInt::from(1) << enc.r]);
            let pts: Vec<String> = expand(&g, &xb)?.support().iter().map(|p| int_text(&p.0)).collect();
            eprintln!("# segment: {{{}}}", pts.join(", "));
            emit(cli, out, &g.to_string())?;
            "segment"
        }
        Command::Alt { prefix, circuit } => {
            let prefix: Prefix = prefix.parse().map_err(|e: Error| CliError::Usage(e.to_string()))?;
            let c = parse_circuit(&ctx.load(circuit)?)?;
            let pipe = encode_alternating(&c, prefix, cli.limit_points)?;
            let lang = pipe.language(cli.limit_points)?;
            let text: String = lang.iter().map(|p| format!("{}\n", int_text(&p.0))).collect();
            emit(cli, out, &text)?;
            "alt"
        }
        Command::Demo(d) => {
            let text = demo(&mut ctx, d)?;
            emit(cli, out, &text)?;
            "demo"
        }
        Command::Selftest { quick, only } => {
            let mode = if *quick { Mode::Quick } else { Mode::Full };
            let mut failed = Vec::new();
            let mut text = String::new();
            for s in selftest::SUITES.iter().filter(|s| only.is_empty() || only.contains(&s.id)) {
                let rep = selftest::run_suite(s, mode, cli.seed);
                let (status, detail) = match &rep.outcome {
                    Ok(d) => ("PASS", d.clone()),
                    Err(d) => ("FAIL", d.clone()),
                };
                let line = format!("{status} {:>2} {:<28} {:>8.2}s  {detail}\n", rep.id, rep.name, rep.elapsed.as_secs_f64());
                out.write_all(line.as_bytes())?;
                text.push_str(&line);
                if rep.outcome.is_err() {
                    failed.push(rep.name);
                }
            }
            if cli.output.is_some() {
                emit(cli, out, &text)?;
            }
            if !failed.is_empty() {
                return Err(CliError::Semantic(format!("failed suites: {}", failed.join(", "))));
            }
            "selftest"
        }
    };
    eprintln!("{}", ctx.provenance(verb));
    Ok(())
}

fn op(ctx: &mut Ctx, args: &OpArgs) -> Result<ShortGf> {
    let arity = match args.kind {
        OpKind::Hadamard | OpKind::Union | OpKind::Intersect | OpKind::Minus | OpKind::Minkowski => 2,
        _ => 1,
    };
    if args.inputs.len() != arity {
        return Err(CliError::Usage(format!("{:?} takes {arity} input file(s)", args.kind)));
    }
    let f = ctx.gf(&args.inputs[0])?;
    let g = if arity == 2 { Some(ctx.gf(&args.inputs[1])?) } else { None };
    if let Some(g) = &g {
        if g.nvars != f.nvars {
            return Err(CliError::Semantic(format!("inputs have {} and {} variables", f.nvars, g.nvars)));
        }
    }
    let n = f.nvars;
    let keep = || -> Result<&[usize]> {
        if args.keep.is_empty() || args.keep.iter().any(|&i| i >= n) {
            return Err(CliError::Usage(format!("--keep needs coordinates below {n}")));
        }
        Ok(&args.keep)
    };
    let g = g.as_ref();
    Ok(match args.kind {
        OpKind::Hadamard => hadamard(&f, g.expect("arity"), &ctx.bx(n)?)?,
        OpKind::Intersect => boolean_combine(&f, g.expect("arity"), &ctx.bx(n)?, BoolMode::Intersect)?,
        OpKind::Union => boolean_combine(&f, g.expect("arity"), &ctx.bx(n)?, BoolMode::Union)?,
        OpKind::Minus => boolean_combine(&f, g.expect("arity"), &ctx.bx(n)?, BoolMode::Minus)?,
        OpKind::Complement => complement_in_box(&f, &ctx.bx(n)?)?,
        OpKind::Minkowski => {
            let bx = ctx.bx(n)?;
            ctx.check_points(&bx)?;
            let out_box = LatticeBox::new(bx.hi.iter().map(|h| h * 2).collect());
            minkowski_oracle(&f, g.expect("arity"), &bx, &out_box)?
        }
        OpKind::Compress => {
            let tau = match &args.tau {
                Some(s) => parse_tau(s)?,
                None => {
                    let r = *ctx.cli.bx.iter().max().ok_or_else(|| CliError::Usage("compress needs --tau or --box".into()))?;
                    choose_tau(&f, vec![n], r)?
                }
            };
            let (h, used) = compress(&f, &tau)?;
            let groups: Vec<String> = used.groups.iter().map(|g| g.to_string()).collect();
            eprintln!("# tau {}:{}", used.log_n, groups.join(","));
            h
        }
        OpKind::Decompress => {
            let tau = parse_tau(args.tau.as_deref().ok_or_else(|| CliError::Usage("decompress needs --tau".into()))?)?;
            decompress(&f, &tau)?
        }
        OpKind::Project | OpKind::Antiproject | OpKind::Specialize => {
            let bx = ctx.bx(n)?;
            let mode = match args.kind {
                OpKind::Project => ProjectMode::Project,
                OpKind::Antiproject => ProjectMode::Anti,
                _ => ProjectMode::Specialize,
            };
            oracle_project_limited(&f, keep()?, &bx, mode, Some(ctx.cli.limit_points))?
        }
    })
}

fn demo(ctx: &mut Ctx, d: &Demo) -> Result<String> {
    let mut s = String::new();
    match d {
        Demo::Squares { r } => {
            let seg = numlab::segment_set(numlab::SegmentKind::Squares, *r)?;
            s.push_str(&format!("# squares below 2^{r}: {} points\n", seg.points.len()));
            let pts: Vec<String> = seg.points.iter().map(|p| p.to_string()).collect();
            s.push_str(&format!("# {}\n", pts.join(" ")));
            s.push_str(&seg.gf.to_string());
        }
        Demo::Jacobi { r, k } => {
            let a = numlab::r4_coefficients(*r, *k)?;
            s.push_str(&format!("{:>6} {:>10} {:>10} {:>10} {:>6}\n", "k", "a(k)", "8σ*(k)", "σ(k)", "ok"));
            for kk in 1..=*k as u64 {
                let rhs = numlab::jacobi_rhs(kk);
                let sig = numlab::sigma_from_r4(kk, &a).map(|v| v.to_string()).unwrap_or_else(|e| e.to_string());
                let ok = a[kk as usize] == rhs;
                s.push_str(&format!("{kk:>6} {:>10} {rhs:>10} {sig:>10} {ok:>6}\n", a[kk as usize]));
            }
        }
        Demo::Factor { n, sigma } => {
            let (p, q) = numlab::factor_semiprime_from_sigma(*n, *sigma)?;
            s.push_str(&format!("{n} = {p} * {q}\n"));
        }
        Demo::Sqcong { alpha, beta, gamma } => {
            let c = numlab::count_square_roots(*alpha, *beta, *gamma)?;
            let b = numlab::count_square_roots_brute(*alpha, *beta, *gamma);
            s.push_str(&format!("alpha={alpha} beta={beta} gamma={gamma} gf={c} loop={b}\n"));
        }
        Demo::Pi { n } => {
            let r = (64 - n.leading_zeros()).max(1);
            let c = numlab::prime_pi(*n, r)?;
            s.push_str(&format!("pi({n}) = {c}  (r={r})\n"));
        }
        Demo::Ap { set, k } => {
            let pts = numlab::parse_ap_set(&ctx.load(set)?)?;
            match numlab::find_ap(&pts, *k)? {
                Some(w) => {
                    let terms: Vec<String> = w.terms().map(|t| t.to_string()).collect();
                    s.push_str(&format!("start={} diff={} k={}  [{}]\n", w.start, w.difference, w.length, terms.join(" ")));
                }
                None => s.push_str(&format!("no {k}-term progression among {} points\n", pts.len())),
            }
        }
    }
    Ok(s)
}
