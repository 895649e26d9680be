//! `curvatura`: command-line front end. Exit codes: 0 success or holds,
//! 1 fails, 2 usage or input error, 3 inconclusive.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use curvatura::curvops::{
    casimir_check, nested_monotonicity_check, surgery_stable, theorem_a_report, verify_labbi, verify_lower_bound,
    verify_weitzenboeck_split, Model, DEFAULT_BUDGET,
};
use curvatura::decomp::{spinor_tensor_sym, spinor_tensor_wedge, sym_power_decomp, wedge_power_decomp};
use curvatura::genera::{
    certify_cobordism, genus, manifold_expr, twisted_a_hat, CobordismAssumptions, GenusValue,
};
use curvatura::qseries::{certify_elliptic_vanishing, certify_witten_vanishing, elliptic_genus_tilde, witten_genus};
use curvatura::weights::{casimir, pw_invariant, rep_type, weyl_dimension};
use curvatura::{
    Backend, Certificate, CurvOp, Decomposition, DominantWeight, Evidence, GenusKind, LieFamily, LieType, ManifoldData,
    Rational, RepKind, Spectrum, Verdict,
};

#[derive(Parser)]
#[command(name = "curvatura", version, about = "Curvature-operator invariants, genera and vanishing certificates")]
struct Cli {
    /// Also write the result as JSON to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Largest representation dimension built explicitly.
    #[arg(long, global = true, env = "CURVATURA_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    B,
    D,
    U,
}

#[derive(Args)]
struct WeightArgs {
    #[arg(long, value_enum, ignore_case = true)]
    family: Family,
    #[arg(long)]
    m: usize,
    /// Comma-separated rational coordinates.
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpectrumSource {
    /// Spectrum JSON file.
    #[arg(long)]
    spectrum: Option<PathBuf>,
    /// Model expression such as `cap2`, `sphere:16` or `hpk:2*sphere:4`.
    #[arg(long)]
    model: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ManifoldSource {
    /// Manifold JSON file.
    #[arg(long)]
    manifold: Option<PathBuf>,
    /// Builtin expression such as `hpk:2`, `k4*k4*hpk:4` or `hpk:2#-cap2`.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecompKind {
    Wedge,
    Sym,
    SpinorWedge,
    SpinorSym,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenusArg {
    Ahat,
    #[value(name = "L")]
    L,
    S,
}

#[derive(Subcommand)]
enum Cmd {
    /// PW invariant of a dominant weight.
    Pw(WeightArgs),
    /// Casimir eigenvalue, dimension and reality type of a dominant weight.
    Casimir(WeightArgs),
    /// Decomposition of Λ^p, Sym^p or spinor tensors for so(2m).
    Decomp {
        #[arg(long, value_enum)]
        kind: DecompKind,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        m: usize,
    },
    /// Partial eigenvalue sum Σ(r,R).
    Sigma {
        #[command(flatten)]
        src: SpectrumSource,
        #[arg(long)]
        r: Rational,
    },
    /// Curvature functional C_p; with --certify, the twisted Â vanishing report.
    Cp {
        #[command(flatten)]
        src: SpectrumSource,
        #[arg(long)]
        p: u64,
        /// Largest Ricci eigenvalue; defaults to the model's Einstein constant.
        #[arg(long)]
        mu: Option<Rational>,
        #[arg(long)]
        certify: bool,
    },
    /// Spectrum, scalar curvature and C_1..C_pmax of a model.
    Model {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 4)]
        pmax: u64,
    },
    /// Genus of a manifold.
    Genus {
        #[command(flatten)]
        src: ManifoldSource,
        #[arg(long, value_enum)]
        kind: GenusArg,
    },
    /// Â-genus twisted by an associated bundle.
    TwistedAhat {
        #[command(flatten)]
        src: ManifoldSource,
        #[arg(long)]
        rep: RepKind,
    },
    /// q-expansion of the Witten genus.
    Witten {
        #[command(flatten)]
        src: ManifoldSource,
        #[arg(long, default_value_t = 4)]
        trunc: usize,
    },
    /// q-expansion of the modified elliptic genus at 2τ.
    Elliptic {
        #[command(flatten)]
        src: ManifoldSource,
        #[arg(long, default_value_t = 4)]
        trunc: usize,
    },
    /// Rational cobordism certificate from curvature hypotheses.
    CertifyCobordism {
        #[command(flatten)]
        src: ManifoldSource,
        /// Σ(r,R) > 0.
        #[arg(long)]
        r: Rational,
        /// scal/8·Id − Ric ⪰ 0.
        #[arg(long)]
        pinch: bool,
        #[arg(long)]
        einstein: bool,
        /// scal/8·Id − K(R,Λ²) ⪰ 0.
        #[arg(long)]
        wedge2_pinch: bool,
    },
    /// Witten genus vanishing from its first coefficients.
    CertifyWitten {
        #[command(flatten)]
        src: ManifoldSource,
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Elliptic genus vanishing from its first coefficients.
    CertifyElliptic {
        #[command(flatten)]
        src: ManifoldSource,
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Surgery stability of C_p > 0 in codimension d.
    Surgery {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: u64,
    },
    /// Brute-force matrix oracles on seeded random curvature operators.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Twisted Dirac curvature term against the Weitzenböck split (exact).
    Weitzenboeck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rep: RepKind,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Smallest eigenvalue of K(R,π) against ‖λ‖²Σ(PW,R) (float).
    Lowerbound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rep: RepKind,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// K(R,Λ²) and K(R,Sym²) in terms of the curvature decomposition (exact).
    Labbi {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Human-readable text, JSON payload and verdict of one command.
struct Output {
    text: String,
    json: Value,
    verdict: Verdict,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Output {
        Output { text: text.into(), json, verdict: Verdict::Holds }
    }

    fn cert(c: Certificate) -> anyhow::Result<Output> {
        Ok(Output { text: c.to_string(), json: serde_json::to_value(&c)?, verdict: c.verdict })
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&s).with_context(|| format!("parsing {}", path.display()))
}

fn dominant(a: &WeightArgs) -> anyhow::Result<DominantWeight> {
    let family = match a.family {
        Family::B => LieFamily::B,
        Family::D => LieFamily::D,
        Family::U => LieFamily::U,
    };
    let ty = LieType::new(family, a.m)?;
    let coeffs = a.weight.split(',').map(|t| t.trim().parse::<Rational>()).collect::<Result<Vec<_>, _>>()?;
    let w = curvatura::Weight::new(ty, coeffs, curvatura::weights::LatticeFlag::Spin)?;
    Ok(DominantWeight::new(w)?)
}

fn spectrum_of(src: &SpectrumSource) -> anyhow::Result<(Spectrum, Option<Rational>)> {
    match (&src.spectrum, &src.model) {
        (Some(p), _) => Ok((read_json(p)?, None)),
        (_, Some(m)) => {
            let model: Model = m.parse()?;
            Ok((model.spectrum()?, Some(model.mu())))
        }
        _ => bail!("need --spectrum or --model"),
    }
}

fn manifold_of(src: &ManifoldSource) -> anyhow::Result<ManifoldData> {
    match (&src.manifold, &src.builtin) {
        (Some(p), _) => read_json(p),
        (_, Some(e)) => Ok(manifold_expr(e)?),
        _ => bail!("need --manifold or --builtin"),
    }
}

fn decomposition_json(d: &Decomposition) -> anyhow::Result<Value> {
    let comps: Vec<Value> = d
        .components
        .iter()
        .map(|c| {
            let pw = pw_invariant(&c.weight).map(|v| v.value.to_string()).ok();
            json!({
                "weight": c.weight.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "multiplicity": c.multiplicity,
                "dim": c.dim.to_string(),
                "pw": pw,
            })
        })
        .collect();
    Ok(json!({ "components": comps, "ambient_dims": [d.ambient_dims.0.to_string(), d.ambient_dims.1.to_string()],
        "min_pw": d.min_pw()?.to_string() }))
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let budget = cli.budget;
    Ok(match &cli.cmd {
        Cmd::Pw(a) => {
            let v = pw_invariant(&dominant(a)?)?;
            Output::ok(v.value.to_string(), serde_json::to_value(&v)?)
        }
        Cmd::Casimir(a) => {
            let l = dominant(a)?;
            let c = casimir(&l);
            let dim = weyl_dimension(&l);
            let ty = rep_type(&l).map(|t| format!("{t:?}").to_lowercase()).unwrap_or_else(|_| "n/a".into());
            Output::ok(
                format!("casimir {c}\ndim {dim}\ntype {ty}"),
                json!({ "casimir": c.to_string(), "dim": dim.to_string(), "type": ty }),
            )
        }
        Cmd::Decomp { kind, p, m } => {
            let d = match kind {
                DecompKind::Wedge => wedge_power_decomp(*p, *m)?,
                DecompKind::Sym => sym_power_decomp(*p, *m)?,
                DecompKind::SpinorWedge => spinor_tensor_wedge(*p, *m)?,
                DecompKind::SpinorSym => spinor_tensor_sym(*p, *m)?,
            };
            let j = decomposition_json(&d)?;
            let mut text = d.to_string();
            text.push_str(&format!("\nmin PW {}", d.min_pw()?));
            Output::ok(text, j)
        }
        Cmd::Sigma { src, r } => {
            let (s, _) = spectrum_of(src)?;
            let v = s.sigma(r)?;
            Output::ok(v.to_string(), json!({ "r": r.to_string(), "sigma": v.to_string() }))
        }
        Cmd::Cp { src, p, mu, certify } => {
            let (s, model_mu) = spectrum_of(src)?;
            let mu = mu.clone().or(model_mu);
            if *certify {
                let mu = mu.ok_or_else(|| anyhow!("--mu is required for a spectrum file"))?;
                return Output::cert(theorem_a_report(&s, &mu, *p)?);
            }
            if *p == 1 && mu.is_none() {
                bail!("C_1 needs --mu for a spectrum file");
            }
            let v = s.c(*p, mu.as_ref())?;
            Output::ok(v.to_string(), json!({ "p": p, "value": v.to_string() }))
        }
        Cmd::Model { model, pmax } => {
            let m: Model = model.parse()?;
            let s = m.spectrum()?;
            let mu = m.mu();
            let nested = nested_monotonicity_check(&s, &mu, *pmax)?;
            let values: Vec<String> = nested.values.iter().map(|v| v.to_string()).collect();
            let text = format!(
                "{m}: dim {}, scal {}, mu {mu}\nspectrum {}\nC_1..C_{pmax}: {}",
                m.dim(),
                s.scal(),
                serde_json::to_string(&s)?,
                values.join(", ")
            );
            Output::ok(
                text,
                json!({ "model": m.to_string(), "dim": m.dim(), "scal": s.scal().to_string(), "mu": mu.to_string(),
                    "spectrum": s, "c": values }),
            )
        }
        Cmd::Genus { src, kind } => {
            let m = manifold_of(src)?;
            let kind = match kind {
                GenusArg::Ahat => GenusKind::AHat,
                GenusArg::L => GenusKind::L,
                GenusArg::S => GenusKind::Milnor(m.k()),
            };
            let GenusValue { value, kind } = genus(&m, kind)?;
            Output::ok(value.to_string(), json!({ "manifold": m.label, "kind": kind.to_string(), "value": value.to_string() }))
        }
        Cmd::TwistedAhat { src, rep } => {
            let m = manifold_of(src)?;
            let v = twisted_a_hat(&m, rep)?;
            Output::ok(v.to_string(), json!({ "manifold": m.label, "rep": rep.to_string(), "value": v.to_string() }))
        }
        Cmd::Witten { src, trunc } => {
            let s = witten_genus(&manifold_of(src)?, *trunc)?;
            Output::ok(series_text(&s.coeffs), serde_json::to_value(&s)?)
        }
        Cmd::Elliptic { src, trunc } => {
            let s = elliptic_genus_tilde(&manifold_of(src)?, *trunc)?;
            Output::ok(series_text(&s.coeffs), serde_json::to_value(&s)?)
        }
        Cmd::CertifyCobordism { src, r, pinch, einstein, wedge2_pinch } => {
            let a = CobordismAssumptions { r: r.clone(), ricci_pinch: *pinch, einstein: *einstein, wedge2_pinch: *wedge2_pinch };
            Output::cert(certify_cobordism(&manifold_of(src)?, &a)?)?
        }
        Cmd::CertifyWitten { src, trunc } => Output::cert(certify_witten_vanishing(&manifold_of(src)?, *trunc)?)?,
        Cmd::CertifyElliptic { src, trunc } => Output::cert(certify_elliptic_vanishing(&manifold_of(src)?, *trunc)?)?,
        Cmd::Surgery { n, d, p } => {
            let r = surgery_stable(*n, *d, *p)?;
            let text = format!(
                "n={n} d={d} p={p}: {}\nC_p on the surgery model {} >= bound {}: {}",
                if r.stable { "stable" } else { "not stable" },
                r.cp_value,
                r.lower_bound,
                r.bound_holds
            );
            Output { text, json: serde_json::to_value(&r)?, verdict: if r.stable { Verdict::Holds } else { Verdict::Fails } }
        }
        Cmd::Verify { what } => Output::cert(verify(what, budget)?)?,
    })
}

fn series_text(c: &[Rational]) -> String {
    c.iter().enumerate().map(|(i, a)| format!("q^{i}: {a}")).collect::<Vec<_>>().join("\n")
}

fn verify(what: &VerifyCmd, budget: usize) -> anyhow::Result<Certificate> {
    let mut ev = Vec::new();
    match what {
        VerifyCmd::Weitzenboeck { n, rep, samples, seed } => {
            ev.push(casimir_check(rep, *n, budget)?);
            for (i, r) in CurvOp::seeded_bianchi(*n, 3, *samples, *seed).iter().enumerate() {
                let w = verify_weitzenboeck_split(r, rep, budget)?;
                ev.push(Evidence::new(format!("sample {i}"), w.equal, format!("{} (dim {}), exact", w.rep, w.dim)));
            }
            Ok(Certificate::from_evidence("Weitzenböck split", ev, Backend::Exact))
        }
        VerifyCmd::Lowerbound { n, rep, samples, seed } => {
            let mut tol = 0.0;
            let mut rs = CurvOp::seeded_bianchi(*n, 3, *samples, *seed);
            rs.push(CurvOp::identity(*n));
            rs.push(CurvOp::identity(*n).scale(&Rational::integer(-1)));
            for (i, r) in rs.iter().enumerate() {
                let b = verify_lower_bound(r, rep, budget)?;
                tol = b.tol;
                ev.push(Evidence::new(
                    format!("sample {i}"),
                    b.holds,
                    format!("lambda_min {:.12} >= bound {:.12} - tol", b.lambda_min, b.bound),
                ));
            }
            Ok(Certificate::from_evidence("lower bound", ev, Backend::Float { tol }))
        }
        VerifyCmd::Labbi { n, samples, seed } => {
            for (i, r) in CurvOp::seeded_bianchi(*n, 3, *samples, *seed).iter().enumerate() {
                let l = verify_labbi(r, budget)?;
                ev.push(Evidence::new(format!("sample {i}"), l.passed(), format!("{l:?}")));
            }
            Ok(Certificate::from_evidence("Labbi formulas", ev, Backend::Exact))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{}", out.text);
            if let Some(path) = &cli.json {
                let s = serde_json::to_string_pretty(&out.json).expect("JSON values serialize");
                if let Err(e) = std::fs::write(path, s + "\n") {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(out.verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
