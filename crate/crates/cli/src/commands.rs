use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use clap::{Args, Subcommand, ValueEnum};
use lexrecip::generate::seeded_poset;
use lexrecip::{
    check_stanley_reciprocity, count_components, count_homs, enumerate_homs, order_polynomial, EulerCalc,
    FinitePoset, Homeomorphism, LexPoset, Mode, PointSampler, Polynomial,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::formats::{load_json, load_poset, require_finite_target, InputDigest, PointFile, PointRecord, Status};

pub const ROUNDTRIP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strict,
    Weak,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Weak => Mode::Weak,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Forward,
    Backward,
    Roundtrip,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count (and optionally list) monotone maps P -> Q
    Homcount {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        list: bool,
    },
    /// Order polynomial of P, optionally evaluated at a rational t
    Ordpoly {
        source: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<String>,
    },
    /// Check ord<(P, t) = (-1)^|P| ord<=(P, -t)
    Reciprocity {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Euler characteristic of Hom(P, Q0 x R^k)
    Euler {
        source: PathBuf,
        target: PathBuf,
        /// Overrides the depth field of the target file
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Check both Euler characteristic identities between Q and -Q
    EulerReciprocity {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
        /// Also count connected components of the four spaces (depth 0 only)
        #[arg(long)]
        components: bool,
    },
    /// Evaluate the homeomorphism Hom<(P, Q x R) -> Hom<=(P, Q) x R^|P|
    Homeo {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, conflicts_with = "random")]
        points: Option<PathBuf>,
        /// Number of seeded random points
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        direction: Direction,
    },
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    #[arg(required_unless_present = "random")]
    source: Option<PathBuf>,
    /// Use a seeded random poset with this many elements instead of a file
    #[arg(long, conflicts_with = "source")]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// What a command produced, before rendering.
pub struct Outcome {
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
    pub result: Value,
    pub status: Status,
    pub text: String,
}

impl Outcome {
    fn new(inputs: Vec<InputDigest>, result: Value, text: String) -> Self {
        Self {
            inputs,
            seed: None,
            result,
            status: Status::Ok,
            text,
        }
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Homcount { .. } => "homcount",
            Command::Ordpoly { .. } => "ordpoly",
            Command::Reciprocity { .. } => "reciprocity",
            Command::Euler { .. } => "euler",
            Command::EulerReciprocity { .. } => "euler-reciprocity",
            Command::Homeo { .. } => "homeo",
        }
    }

    pub fn run(&self) -> Result<Outcome> {
        match self {
            Command::Homcount {
                source,
                target,
                mode,
                list,
            } => homcount(source, target, (*mode).into(), *list),
            Command::Ordpoly { source, mode, eval } => ordpoly(source, (*mode).into(), eval.as_deref()),
            Command::Reciprocity { source } => reciprocity(source),
            Command::Euler {
                source,
                target,
                depth,
                mode,
            } => euler(source, target, *depth, (*mode).into()),
            Command::EulerReciprocity {
                source,
                target,
                depth,
                components,
            } => euler_reciprocity(source, target, *depth, *components),
            Command::Homeo {
                source,
                target,
                points,
                random,
                seed,
                direction,
            } => homeo(source, target, points.as_deref(), *random, *seed, *direction),
        }
    }
}

fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

fn poly_json(p: &Polynomial) -> Value {
    json!({
        "display": p.to_string(),
        "coefficients": p.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn finite_source(path: &Path) -> Result<(FinitePoset, InputDigest)> {
    let loaded = load_poset(path)?;
    require_finite_target(&loaded.value, "source poset")?;
    Ok((loaded.value.base, loaded.digest))
}

fn with_depth(mut q: LexPoset, depth: Option<usize>) -> LexPoset {
    if let Some(d) = depth {
        q.depth = d;
    }
    q
}

fn homcount(source: &Path, target: &Path, mode: Mode, list: bool) -> Result<Outcome> {
    let (p, dp) = finite_source(source)?;
    let q = load_poset(target)?;
    require_finite_target(&q.value, "target poset")?;
    let q0 = &q.value.base;
    let count = count_homs(&p, q0, mode);
    let mut text = format!("|Hom{}(P, Q)| = {count}\n", if mode == Mode::Strict { "<" } else { "<=" });
    let mut result = json!({ "mode": mode.as_str(), "count": count });
    if list {
        let maps: Vec<Vec<String>> = enumerate_homs(&p, q0, mode)
            .into_iter()
            .map(|m| m.values.iter().map(|&v| q0.elements()[v].clone()).collect())
            .collect();
        for m in &maps {
            let pairs: Vec<String> = p.elements().iter().zip(m).map(|(a, b)| format!("{a}->{b}")).collect();
            let _ = writeln!(text, "  {}", pairs.join(" "));
        }
        result["maps"] = json!(maps);
    }
    Ok(Outcome::new(vec![dp, q.digest], result, text))
}

fn ordpoly(source: &Path, mode: Mode, eval: Option<&str>) -> Result<Outcome> {
    let (p, dp) = finite_source(source)?;
    let op = order_polynomial(&p, mode);
    let mut text = format!("ord{}(P, t) = {op}\n", if mode == Mode::Strict { "<" } else { "<=" });
    let mut result = json!({ "mode": mode.as_str(), "polynomial": poly_json(&op.poly) });
    if let Some(raw) = eval {
        let t: BigRational = raw
            .trim()
            .parse()
            .map_err(|e| anyhow::anyhow!("cannot parse `{raw}` as a rational: {e}"))?;
        let v = op.evaluate(&t);
        let _ = writeln!(text, "value at t = {t}: {v}");
        result["eval"] = json!({ "t": t.to_string(), "value": v.to_string() });
    }
    Ok(Outcome::new(vec![dp], result, text))
}

fn reciprocity(args: &SourceArgs) -> Result<Outcome> {
    let (p, inputs, seed) = match (&args.source, args.random) {
        (Some(path), _) => {
            let (p, d) = finite_source(path)?;
            (p, vec![d], None)
        }
        (None, Some(n)) => (seeded_poset(n, args.seed), Vec::new(), Some(args.seed)),
        (None, None) => bail!("either a poset file or --random is required"),
    };
    let r = check_stanley_reciprocity(&p);
    let text = format!(
        "ord<(P, t)            = {}\n(-1)^|P| ord<=(P, -t) = {}\nreciprocity {}\n",
        r.lhs,
        r.rhs,
        if r.holds { "holds" } else { "FAILS" }
    );
    let mut result = json!({
        "holds": r.holds,
        "lhs": poly_json(&r.lhs),
        "rhs": poly_json(&r.rhs),
    });
    if seed.is_some() {
        result["poset"] = serde_json::to_value(crate::formats::PosetFile::from_lex(&LexPoset::finite(p)))?;
    }
    let mut out = Outcome::new(inputs, result, text);
    out.seed = seed;
    if !r.holds {
        out.status = Status::TheoremViolated;
    }
    Ok(out)
}

fn euler(source: &Path, target: &Path, depth: Option<usize>, mode: Mode) -> Result<Outcome> {
    let (p, dp) = finite_source(source)?;
    let q = load_poset(target)?;
    let lex = with_depth(q.value, depth);
    let e = EulerCalc::new().euler_hom(&p, &lex, mode);
    let text = format!(
        "e(Hom{}(P, Q0 x R^{})) = {e}\n",
        if mode == Mode::Strict { "<" } else { "<=" },
        lex.depth
    );
    let result = json!({ "mode": mode.as_str(), "depth": lex.depth, "euler_characteristic": big(&e) });
    Ok(Outcome::new(vec![dp, q.digest], result, text))
}

fn euler_reciprocity(source: &Path, target: &Path, depth: Option<usize>, components: bool) -> Result<Outcome> {
    let (p, dp) = finite_source(source)?;
    let q = load_poset(target)?;
    let lex = with_depth(q.value, depth);
    let reports = EulerCalc::new().check_euler_reciprocity(&p, &lex);
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(
            text,
            "{}: {} vs {} -> {}",
            r.identity.as_str(),
            r.lhs,
            r.rhs,
            if r.holds { "holds" } else { "FAILS" }
        );
    }
    let mut result = json!({
        "depth": lex.depth,
        "reports": reports.iter().map(|r| json!({
            "identity": r.identity.as_str(),
            "lhs": big(&r.lhs),
            "rhs": big(&r.rhs),
            "holds": r.holds,
        })).collect::<Vec<_>>(),
    });
    if components {
        let neg = lex.negate();
        let weak_lex = count_components(&p, &neg, Mode::Weak)?;
        let strict_lex = count_components(&p, &neg, Mode::Strict)?;
        // Hom^σ(P, Q0) × ℝ^|P| has one component per discrete map
        let strict_euclid = count_components(&p, &lex, Mode::Strict)?;
        let weak_euclid = count_components(&p, &lex, Mode::Weak)?;
        let _ = writeln!(
            text,
            "components: Hom<=(P, QxR) {weak_lex} vs Hom<(P,Q)xR^|P| {strict_euclid}; \
             Hom<(P, QxR) {strict_lex} vs Hom<=(P,Q)xR^|P| {weak_euclid}"
        );
        result["components"] = json!({
            "weak_lex": weak_lex,
            "strict_times_euclidean": strict_euclid,
            "strict_lex": strict_lex,
            "weak_times_euclidean": weak_euclid,
        });
    }
    let mut out = Outcome::new(vec![dp, q.digest], result, text);
    if reports.iter().any(|r| !r.holds) {
        out.status = Status::TheoremViolated;
    }
    Ok(out)
}

fn homeo(
    source: &Path,
    target: &Path,
    points: Option<&Path>,
    random: Option<usize>,
    seed: u64,
    direction: Direction,
) -> Result<Outcome> {
    let (p, dp) = finite_source(source)?;
    let q = load_poset(target)?;
    require_finite_target(&q.value, "target poset")?;
    let q0 = q.value.base;
    let h = Homeomorphism::new(&p, &q0);
    let top = h.top_stage();
    let input_stage = if direction == Direction::Backward { 1 } else { top };
    let mut inputs = vec![dp, q.digest];

    let (start, used_seed) = match (points, random) {
        (Some(path), _) => {
            let file = load_json::<PointFile>(path)?;
            inputs.push(file.digest);
            let pts = file
                .value
                .into_records()
                .iter()
                .map(|r| r.to_point(&q0, input_stage))
                .collect::<Result<Vec<_>>>()?;
            (pts, None)
        }
        (None, Some(n)) => {
            let sampler = PointSampler::new(&p, &q0, 10.0);
            if !sampler.is_inhabited() {
                bail!("Hom<=(P, Q) is empty; nothing to sample");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts = (0..n)
                .map(|_| match direction {
                    Direction::Backward => sampler.bottom(&mut rng),
                    _ => sampler.top(&mut rng),
                })
                .collect();
            (pts, Some(seed))
        }
        (None, None) => bail!("either --points or --random is required"),
    };

    let mut outputs = Vec::with_capacity(start.len());
    let mut max_err = 0f64;
    let mut base_preserved = true;
    for x in &start {
        let y = match direction {
            Direction::Forward | Direction::Roundtrip => h.forward(x)?,
            Direction::Backward => h.backward(x)?,
        };
        base_preserved &= y.base == x.base;
        if direction == Direction::Roundtrip {
            let z = h.backward(&y)?;
            base_preserved &= z.base == x.base;
            for (a, b) in z.reals.iter().zip(&x.reals) {
                max_err = max_err.max((a - b).abs());
            }
        }
        outputs.push(PointRecord::from_point(&y, &q0));
    }

    let direction_name = format!("{direction:?}").to_lowercase();
    let mut text = format!("{} point(s), direction {direction_name}\n", outputs.len());
    let mut result = json!({
        "direction": direction_name,
        "points": outputs,
        "base_preserved": base_preserved,
    });
    let mut status = if base_preserved { Status::Ok } else { Status::TheoremViolated };
    if direction == Direction::Roundtrip {
        let _ = writeln!(text, "max round-trip error {max_err:.3e} (tolerance {ROUNDTRIP_TOLERANCE:e})");
        result["max_roundtrip_error"] = json!(max_err);
        result["tolerance"] = json!(ROUNDTRIP_TOLERANCE);
        if max_err > ROUNDTRIP_TOLERANCE {
            status = Status::TheoremViolated;
        }
    } else {
        for rec in outputs.iter().take(20) {
            let _ = writeln!(text, "  base {:?} reals {:?}", rec.base, rec.reals);
        }
    }
    Ok(Outcome {
        inputs,
        seed: used_seed,
        result,
        status,
        text,
    })
}
