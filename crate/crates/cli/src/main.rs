//! Command-line front end: exact twisted-shift algebra, the symplectic
//! solver, twisted polynomial tools, the metaplectic reduction, Gaussian
//! packet calculus and independence certification.
//!
//! Exit codes: 0 success (all instances certified), 1 at least one
//! inconclusive certification, 2 parse or configuration error.

mod config;
mod literal;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use heisenlab::gaussian::{self, GaussianPacket, PacketSum};
use heisenlab::independence::{self, CosetWindow, Verdict};
use heisenlab::metaplectic::{self, build_h, choose_b, cube_trace};
use heisenlab::quadrature::{quadrature_inner_product, QuadratureGrid};
use heisenlab::reduce::reduce_to_unit;
use heisenlab::symplectic::{form_beta, solve_commutation};
use heisenlab::twisted_poly::{decompose, SubgroupSplitting};
use heisenlab::{
    AlgebraElement, DiscreteSubgroup, GroupElement, Quad, Rat, Scalar,
};

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "heisenlab",
    about = "Twisted time-frequency shift algebra and independence certification",
    long_about = "Exact arithmetic in the twisted group ring of time-frequency shifts, \
                  symplectic commutation solving, metaplectic lattice reduction with a \
                  cube-characteristic trace, and Gram-matrix certification that finite \
                  systems of shifted Gaussian windows are linearly independent.\n\n\
                  Element literals: terms joined by +/-, each `coeff*(x1,..,xn;y1,..,yn)` \
                  with exact rationals; in one dimension `(x,y)` is accepted, e.g. \
                  \"1+(1,0)\" or \"2i*(1/2,0)\".\n\n\
                  HEISENLAB_THREADS caps the worker count used for Gram assembly."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Twisted group ring operations on element literals
    Algebra {
        #[command(subcommand)]
        op: AlgebraOp,
    },
    /// Symplectic form and commutation solver
    Symplectic {
        #[command(subcommand)]
        op: SymplecticOp,
    },
    /// Twisted (skew) polynomial decomposition along a splitting
    Poly {
        #[command(subcommand)]
        op: PolyOp,
    },
    /// Metaplectic reduction, transition factorization and cube trace
    Metaplectic {
        #[command(subcommand)]
        op: MetaplecticOp,
    },
    /// Gaussian packet calculus
    Gauss {
        #[command(subcommand)]
        op: GaussOp,
    },
    /// Gram-matrix independence certification
    Independence {
        #[command(subcommand)]
        op: IndependenceOp,
    },
}

#[derive(Subcommand)]
enum AlgebraOp {
    /// Twisted product of two elements
    Mul { a: String, b: String },
    /// Conjugation g·α·g⁻¹ by a point
    Conj { g: String, alpha: String },
    /// Trace (coefficient of the identity)
    Trace { alpha: String },
    /// Reduce a nonzero element to the unit; prints the move certificate
    Reduce {
        alpha: String,
        /// Re-verify by replaying the certificate on the input
        #[arg(long)]
        replay: bool,
    },
}

#[derive(Subcommand)]
enum SymplecticOp {
    /// Solve β(y,hᵢ) = 0, β(y,x) = t for the minimum-norm y
    Solve(SolveArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Commuting constraints, e.g. "(1,0) (0,1)"
    #[arg(long = "h-gens", default_value = "")]
    h_gens: String,
    /// Target point x
    #[arg(long)]
    x: String,
    /// Target turn t (rational), realizing ζ = e^{2πit}
    #[arg(long)]
    t: String,
}

#[derive(Args)]
struct SplittingArgs {
    /// Generators of G, e.g. "(1,0) (0,1)"
    #[arg(long)]
    group: String,
    /// Generators of H (one fewer than G)
    #[arg(long, default_value = "")]
    subgroup: String,
    /// Coset generator x with G = H ⊕ ℤx
    #[arg(long)]
    x: String,
    /// Element of ℂ*G
    #[arg(long)]
    alpha: String,
}

#[derive(Subcommand)]
enum PolyOp {
    /// Write α as a twisted Laurent polynomial Σ αᵢ·Xⁱ over ℂ*H
    Decompose(SplittingArgs),
    /// ζ-twist: multiply the degree-i coefficient by e^{2πi·i·t}
    Twist {
        #[command(flatten)]
        splitting: SplittingArgs,
        /// Twist turn t (rational)
        #[arg(long)]
        t: String,
    },
}

#[derive(Subcommand)]
enum MetaplecticOp {
    /// Build the lattice H ⊇ 1×ℤ²ⁿ and the conjugating pipeline
    Build {
        #[arg(long)]
        n: usize,
        /// Generators of G (empty for the trivial subgroup)
        #[arg(long, default_value = "")]
        gens: String,
    },
    /// Print the transition matrix factorization check T = B·A·C·B
    Factor {
        #[arg(long)]
        n: usize,
    },
    /// Max deviation of τ(αβ) − τ(βα) over random pairs via the cube trace
    Trace {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        gens: String,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GaussOp {
    /// Inner product of two packet files (closed form, optionally
    /// cross-checked by quadrature)
    Ip {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        quadrature: bool,
    },
    /// Fourier transform of a packet file
    Fourier {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
}

#[derive(Subcommand)]
enum IndependenceOp {
    /// Certify a coset window from a config; exit 1 when inconclusive
    Certify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// λ_min/condition sweep over separable lattices aℤ×bℤ, CSV output
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn point_json<S: Scalar>(g: &GroupElement<S>) -> serde_json::Value {
    json!({
        "x": g.x().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "y": g.y().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn complex_json(v: Complex64) -> serde_json::Value {
    json!({"re": v.re, "im": v.im})
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serialize"));
}

fn subgroup_from(n: usize, gens: &str) -> Result<DiscreteSubgroup<Rat>> {
    let points = literal::parse_point_list(gens)?;
    for p in &points {
        if p.n() != n {
            bail!("generator {p} has dimension {}, expected {n}", p.n());
        }
    }
    DiscreteSubgroup::new(n, points).map_err(|e| anyhow!("{e}"))
}

fn load_packets(path: &PathBuf) -> Result<PacketSum> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read packet file {}", path.display()))?;
    if let Ok(p) = serde_json::from_str::<GaussianPacket>(&text) {
        return Ok(PacketSum::from_packet(p));
    }
    let list: Vec<GaussianPacket> = serde_json::from_str(&text)
        .with_context(|| format!("{} is neither a packet nor a packet list", path.display()))?;
    if list.is_empty() {
        bail!("packet list is empty");
    }
    let mut sum = PacketSum::zero();
    for p in list {
        sum = sum.add(&PacketSum::from_packet(p));
    }
    Ok(sum)
}

fn splitting_from(args: &SplittingArgs) -> Result<(SubgroupSplitting<Rat>, AlgebraElement<Rat>)> {
    let group_pts = literal::parse_point_list(&args.group)?;
    if group_pts.is_empty() {
        bail!("--group needs at least one generator");
    }
    let n = group_pts[0].n();
    let group = DiscreteSubgroup::new(n, group_pts).map_err(|e| anyhow!("{e}"))?;
    let sub_pts = literal::parse_point_list(&args.subgroup)?;
    let subgroup = DiscreteSubgroup::new(n, sub_pts).map_err(|e| anyhow!("{e}"))?;
    let x = literal::parse_point(&args.x)?;
    let splitting =
        SubgroupSplitting::new(group, subgroup, x).map_err(|e| anyhow!("{e}"))?;
    let alpha = literal::parse_element(&args.alpha)?;
    Ok((splitting, alpha))
}

fn poly_json(p: &heisenlab::TwistedPoly<Rat>) -> serde_json::Value {
    let coeffs: serde_json::Map<String, serde_json::Value> = p
        .degrees()
        .map(|d| {
            (
                d.to_string(),
                serde_json::to_value(p.coefficient(d).expect("listed degree")).expect("serialize"),
            )
        })
        .collect();
    json!({
        "degrees": p.degrees().collect::<Vec<_>>(),
        "coefficients": coeffs,
    })
}

fn parse_turn(s: &str) -> Result<Rat> {
    Rat::parse_str(s).ok_or_else(|| anyhow!("bad rational turn {s:?}"))
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Algebra { op } => run_algebra(op),
        Command::Symplectic { op } => run_symplectic(op),
        Command::Poly { op } => run_poly(op),
        Command::Metaplectic { op } => run_metaplectic(op),
        Command::Gauss { op } => run_gauss(op),
        Command::Independence { op } => run_independence(op),
    }
}

fn run_algebra(op: AlgebraOp) -> Result<u8> {
    match op {
        AlgebraOp::Mul { a, b } => {
            let ea = literal::parse_element(&a)?;
            let eb = literal::parse_element(&b)?;
            let product = ea.mul(&eb).map_err(|e| anyhow!("{e}"))?;
            let mut out = json!({"product": serde_json::to_value(&product)?});
            // for two unit basis elements also report the twist pair
            let single_unit = |e: &AlgebraElement<Rat>| -> Option<GroupElement<Rat>> {
                if e.support_len() == 1 {
                    let g = e.support().next().unwrap().clone();
                    let c = e.coefficient(&g);
                    if (c - Complex64::new(1.0, 0.0)).norm() == 0.0 {
                        return Some(g);
                    }
                }
                None
            };
            if let (Some(ga), Some(gb)) = (single_unit(&ea), single_unit(&eb)) {
                let (phase, point) = ga.product(&gb).map_err(|e| anyhow!("{e}"))?;
                out["basis_product"] = json!({
                    "phase_turn": phase.turn().to_string(),
                    "element": point_json(&point),
                });
            }
            print_json(&out);
            Ok(0)
        }
        AlgebraOp::Conj { g, alpha } => {
            let point = literal::parse_point(&g)?;
            let elem = literal::parse_element(&alpha)?;
            let conj = elem.conjugate_by(&point).map_err(|e| anyhow!("{e}"))?;
            print_json(&json!({"result": serde_json::to_value(&conj)?}));
            Ok(0)
        }
        AlgebraOp::Trace { alpha } => {
            let elem = literal::parse_element(&alpha)?;
            print_json(&json!({"trace": complex_json(elem.trace())}));
            Ok(0)
        }
        AlgebraOp::Reduce { alpha, replay } => {
            let elem = literal::parse_element(&alpha)?;
            let cert = reduce_to_unit(&elem).map_err(|e| anyhow!("{e}"))?;
            let mut out = json!({
                "move_count": cert.moves.len(),
                "moves": serde_json::to_value(cert.to_json())?,
            });
            if replay {
                let final_state = cert.replay(&elem).map_err(|e| anyhow!("{e}"))?;
                let unit_err = (final_state.coefficient(&GroupElement::identity(elem.n()))
                    - Complex64::new(1.0, 0.0))
                .norm();
                out["replay"] = json!({
                    "final": serde_json::to_value(&final_state)?,
                    "unit_error": unit_err,
                    "ok": final_state.support_len() == 1 && unit_err < 1e-9,
                });
            }
            print_json(&out);
            Ok(0)
        }
    }
}

fn run_symplectic(op: SymplecticOp) -> Result<u8> {
    let SymplecticOp::Solve(args) = op;
    let h_gens = literal::parse_point_list(&args.h_gens)?;
    let x = literal::parse_point(&args.x)?;
    let t = parse_turn(&args.t)?;
    let y = solve_commutation(&h_gens, &x, &t).map_err(|e| anyhow!("{e}"))?;
    let checks: Vec<String> = h_gens
        .iter()
        .map(|h| form_beta(&y, h).map(|v| v.to_string()))
        .collect::<heisenlab::Result<_>>()
        .map_err(|e| anyhow!("{e}"))?;
    print_json(&json!({
        "y": point_json(&y),
        "beta_y_h": checks,
        "beta_y_x": form_beta(&y, &x).map_err(|e| anyhow!("{e}"))?.to_string(),
    }));
    Ok(0)
}

fn run_poly(op: PolyOp) -> Result<u8> {
    match op {
        PolyOp::Decompose(args) => {
            let (splitting, alpha) = splitting_from(&args)?;
            let poly = decompose(&alpha, &splitting).map_err(|e| anyhow!("{e}"))?;
            let recomposed = poly.recompose().map_err(|e| anyhow!("{e}"))?;
            print_json(&json!({
                "poly": poly_json(&poly),
                "recompose_exact": recomposed.eq_exact(&alpha),
            }));
            Ok(0)
        }
        PolyOp::Twist { splitting: args, t } => {
            let (splitting, alpha) = splitting_from(&args)?;
            let t = parse_turn(&t)?;
            let poly = decompose(&alpha, &splitting).map_err(|e| anyhow!("{e}"))?;
            let twisted = poly.zeta_twist(&t);
            let twisted_elem = twisted.recompose().map_err(|e| anyhow!("{e}"))?;
            // realize the twist by conjugation with the solved y
            let y = solve_commutation(splitting.subgroup().generators(), splitting.coset_gen(), &t)
                .map_err(|e| anyhow!("{e}"))?;
            let conj = alpha.conjugate_by(&y).map_err(|e| anyhow!("{e}"))?;
            print_json(&json!({
                "twisted_poly": poly_json(&twisted),
                "twisted_element": serde_json::to_value(&twisted_elem)?,
                "conjugator_y": point_json(&y),
                "realization_exact": conj.eq_exact(&twisted_elem),
            }));
            Ok(0)
        }
    }
}

fn run_metaplectic(op: MetaplecticOp) -> Result<u8> {
    match op {
        MetaplecticOp::Build { n, gens } => {
            let group = subgroup_from(n, &gens)?;
            let (h, pipe) = build_h(&group).map_err(|e| anyhow!("{e}"))?;
            let tf = metaplectic::TransitionFactors::new(n);
            let factor_err = (tf.product_bacb().to_f64() - tf.t.to_f64()).abs().max();
            let data = choose_b(&h).map_err(|e| anyhow!("{e}"))?;
            let one = AlgebraElement::<Quad>::one(h.n());
            let tau_one = cube_trace(&one, &data).map_err(|e| anyhow!("{e}"))?;
            let mut tau_gen_max = 0.0f64;
            for gen in h.generators() {
                if gen.is_identity() {
                    continue;
                }
                let tau = cube_trace(&AlgebraElement::basis(gen.clone()), &data)
                    .map_err(|e| anyhow!("{e}"))?;
                tau_gen_max = tau_gen_max.max(tau.norm());
            }
            print_json(&json!({
                "h_generators": h.generators().iter().map(point_json).collect::<Vec<_>>(),
                "pipeline": serde_json::to_value(&pipe)?,
                "factorization": {
                    "exact": tf.product_bacb() == tf.t,
                    "max_error": factor_err,
                    "status": if tf.product_bacb() == tf.t { "PASS" } else { "FAIL" },
                },
                "cube": {"b": data.b, "count": data.cube_count()},
                "trace_spot_checks": {
                    "tau_one": complex_json(tau_one),
                    "tau_generator_max": tau_gen_max,
                },
            }));
            Ok(0)
        }
        MetaplecticOp::Factor { n } => {
            if n == 0 {
                bail!("n must be positive");
            }
            let tf = metaplectic::TransitionFactors::new(n);
            let err = (tf.product_bacb().to_f64() - tf.t.to_f64()).abs().max();
            print_json(&json!({
                "n": n,
                "size": 4 * n,
                "exact": tf.product_bacb() == tf.t,
                "max_error": err,
                "status": if tf.product_bacb() == tf.t { "PASS" } else { "FAIL" },
            }));
            Ok(0)
        }
        MetaplecticOp::Trace { n, gens, pairs, seed } => {
            let group = if gens.trim().is_empty() {
                DiscreteSubgroup::<Rat>::standard_lattice(n)
            } else {
                subgroup_from(n, &gens)?
            };
            let (h, _) = build_h(&group).map_err(|e| anyhow!("{e}"))?;
            let data = choose_b(&h).map_err(|e| anyhow!("{e}"))?;
            let mut rng = StdRng::seed_from_u64(seed);
            let mut max_dev = 0.0f64;
            for _ in 0..pairs {
                let random_elem = |rng: &mut StdRng| {
                    let coeffs: Vec<i64> = (0..h.rank()).map(|_| rng.gen_range(-2..=2)).collect();
                    h.point(&coeffs)
                };
                let mut alpha = AlgebraElement::zero(h.n());
                let mut beta = AlgebraElement::zero(h.n());
                for _ in 0..3 {
                    let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    let g = random_elem(&mut rng);
                    alpha = alpha
                        .add(&AlgebraElement::monomial(g, c))
                        .map_err(|e| anyhow!("{e}"))?;
                    let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    let g = random_elem(&mut rng);
                    beta = beta
                        .add(&AlgebraElement::monomial(g, c))
                        .map_err(|e| anyhow!("{e}"))?;
                }
                let ab = alpha.mul(&beta).map_err(|e| anyhow!("{e}"))?;
                let ba = beta.mul(&alpha).map_err(|e| anyhow!("{e}"))?;
                let dev = (cube_trace(&ab, &data).map_err(|e| anyhow!("{e}"))?
                    - cube_trace(&ba, &data).map_err(|e| anyhow!("{e}"))?)
                .norm();
                max_dev = max_dev.max(dev);
            }
            print_json(&json!({
                "pairs": pairs,
                "seed": seed,
                "b": data.b,
                "max_traciality_deviation": max_dev,
            }));
            Ok(0)
        }
    }
}

fn run_gauss(op: GaussOp) -> Result<u8> {
    match op {
        GaussOp::Ip { f, g, quadrature } => {
            let pf = load_packets(&f)?;
            let pg = load_packets(&g)?;
            let closed = gaussian::inner_product(&pf, &pg).map_err(|e| anyhow!("{e}"))?;
            let mut out = json!({"inner_product": complex_json(closed)});
            if quadrature {
                let grid = QuadratureGrid::default();
                let q = quadrature_inner_product(&pf, &pg, &grid).map_err(|e| anyhow!("{e}"))?;
                out["quadrature"] = complex_json(q);
                out["agreement"] = json!((closed - q).norm());
            }
            print_json(&out);
            Ok(0)
        }
        GaussOp::Fourier { f, inverse } => {
            let pf = load_packets(&f)?;
            let hat = gaussian::fourier(&pf, inverse).map_err(|e| anyhow!("{e}"))?;
            print_json(&json!({
                "packets": serde_json::to_value(hat.packets())?,
            }));
            Ok(0)
        }
    }
}

fn run_independence(op: IndependenceOp) -> Result<u8> {
    match op {
        IndependenceOp::Certify { config, out } => {
            let cfg = RunConfig::load(&config)?;
            let window = CosetWindow {
                subgroup: cfg.subgroup()?,
                offset: cfg.offset_element()?,
                radius: cfg.radius,
                max_points: cfg.max_points,
            };
            let f = cfg.window.to_packet_sum()?;
            if f.dim() != Some(cfg.n) {
                bail!(
                    "window dimension {:?} does not match ambient n = {}",
                    f.dim(),
                    cfg.n
                );
            }
            let report = independence::certify_window(&window, &f).map_err(|e| anyhow!("{e}"))?;
            let text = serde_json::to_string_pretty(&report)?;
            match &out {
                Some(path) => std::fs::write(path, &text)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => println!("{text}"),
            }
            eprintln!(
                "{} points, lambda_min = {:.6e}, residual = {:.3e}, verdict: {}",
                report.num_points, report.lambda_min, report.residual, report.verdict
            );
            Ok(if report.verdict == Verdict::CertifiedIndependent { 0 } else { 1 })
        }
        IndependenceOp::Sweep { config, out } => {
            let cfg = RunConfig::load(&config)?;
            let sweep = cfg
                .sweep
                .clone()
                .ok_or_else(|| anyhow!("config has no \"sweep\" section"))?;
            let f = cfg.window.to_packet_sum()?;
            if f.dim() != Some(1) {
                bail!("sweep requires a one-dimensional window");
            }
            let rows = independence::density_sweep(
                &f,
                &sweep.a_values,
                &sweep.b_values,
                &sweep.grid_sizes,
                sweep.offset,
            )
            .map_err(|e| anyhow!("{e}"))?;
            let csv = independence::sweep_csv(&rows);
            std::fs::write(&out, &csv)
                .with_context(|| format!("cannot write {}", out.display()))?;
            let inconclusive = rows
                .iter()
                .filter(|r| r.verdict != Verdict::CertifiedIndependent)
                .count();
            eprintln!(
                "{} rows written to {} ({} inconclusive, seed {})",
                rows.len(),
                out.display(),
                inconclusive,
                cfg.seed
            );
            Ok(if inconclusive == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
