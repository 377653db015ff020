//! Command-line surface: every subcommand prints one JSON report and maps errors onto exit codes.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arith::{parse_rat, rat_to_string};
use crate::clifford::{self, CliffordAlgebra, CliffordElt};
use crate::dlstrata::{self, FqQuadSpace};
use crate::error::{Error, Result, DEFAULT_BUDGET};
use crate::ggp;
use crate::lattice::{self, Lattice};
use crate::linalg::{reduce_mod_p, Mat};
use crate::polyparse::parse_poly;
use crate::qspace::{self, parse_matrix_value, QuadSpace};
use crate::report::{error_report, report};
use crate::selftest::{self, SelftestOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_APPLICABLE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "gspin", version, about = "Quadratic spaces, vertex lattices, Clifford checks, strata and GGP intersection numbers")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Discriminant, Hasse invariant and almost self-dual form of a p-adic quadratic space.
    QspaceInvariants(Common),
    /// The sharp extension V♯ of an almost self-dual space, with L₀ ⊂ L₀♯ and t_max.
    QspaceSharp(Common),
    /// Gram valuations, vertex type and quotient form of a lattice (--basis columns, default standard).
    LatticeType(Common),
    /// Vertex lattices in the radius-one window around a lattice.
    LatticeEnumerate(Common),
    /// GSpin membership, SO image and ψ form checks for a Clifford element (--elt, default e₁e₂).
    CliffordCheck(Common),
    /// Maximal isotropic subspaces over F_{p^k} of an F_p form, with component labels and S♯ flags.
    StrataEnumerate(Common),
    /// Partition of S♯(F_{p^k}) by Frobenius-closure depth, with the odd-side comparison at even k.
    StrataStratify(Common),
    /// Factor classification, nonemptiness criterion, point count and intersection number.
    GgpIntersect(Common),
    /// The same report plus the fixed-point oracle at k* and 2k*.
    GgpCrosscheck(Common),
    /// Run the acceptance suite.
    Selftest(Common),
}

#[derive(Args, Debug, Default, Clone)]
struct Common {
    /// Odd prime.
    #[arg(long)]
    p: Option<u64>,
    /// Gram matrix as JSON rows of integers or "a/b" strings.
    #[arg(long)]
    gram: Option<String>,
    /// JSON input file; flags override its keys.
    #[arg(long = "in")]
    input: Option<String>,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<String>,
    /// Cap on enumeration sizes.
    #[arg(long)]
    budget: Option<u128>,
    /// Field degree k for F_{p^k}.
    #[arg(long)]
    k: Option<u32>,
    /// Seed for randomized internals.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (THREADS in the environment is used when absent).
    #[arg(long)]
    threads: Option<usize>,
    /// Polynomial in T, infix or a JSON coefficient list (low degree first).
    #[arg(long)]
    poly: Option<String>,
    /// Lattice basis as JSON columns.
    #[arg(long)]
    basis: Option<String>,
    /// Clifford element as JSON [{"monomial":[i,…],"coeff":"a/b"}], indices from 1.
    #[arg(long)]
    elt: Option<String>,
    /// Isometry matrix (F_p for ggp with --gram, rational with --in).
    #[arg(long)]
    g: Option<String>,
    /// Use a split form for ggp-crosscheck when no --gram is given.
    #[arg(long)]
    split: bool,
}

/// Flag values with fallback to the --in file.
struct Inputs {
    c: Common,
    file: Value,
}

fn parse_json(s: &str, what: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::invalid(format!("bad {what} JSON: {e}")))
}

impl Inputs {
    fn new(c: Common) -> Result<Self> {
        let file = match &c.input {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {path}: {e}")))?;
                parse_json(&text, "input file")?
            }
            None => Value::Null,
        };
        Ok(Inputs { c, file })
    }

    fn json_flag(&self, flag: &Option<String>, key: &str) -> Result<Option<Value>> {
        match flag {
            Some(s) => Ok(Some(parse_json(s, key)?)),
            None => Ok(self.file.get(key).cloned()),
        }
    }

    fn p(&self) -> Result<u64> {
        self.c.p.or_else(|| self.file["p"].as_u64()).ok_or_else(|| Error::invalid("missing --p"))
    }

    fn k(&self) -> Result<u32> {
        let k = self.c.k.or_else(|| self.file["k"].as_u64().map(|x| x as u32)).unwrap_or(1);
        if k == 0 {
            return Err(Error::invalid("k must be positive"));
        }
        Ok(k)
    }

    fn budget(&self) -> u128 {
        self.c.budget.or_else(|| self.file["budget"].as_u64().map(u128::from)).unwrap_or(DEFAULT_BUDGET)
    }

    fn gram(&self) -> Result<Mat> {
        let v = self.json_flag(&self.c.gram, "gram")?.ok_or_else(|| Error::invalid("missing --gram"))?;
        parse_matrix_value(&v)
    }

    fn space(&self) -> Result<QuadSpace> {
        QuadSpace::new(self.p()?, self.gram()?)
    }

    fn fq_space(&self) -> Result<FqQuadSpace> {
        let p = self.p()?;
        FqQuadSpace::new(p, reduce_mod_p(&self.gram()?, p)?)
    }

    fn poly_text(&self) -> Option<String> {
        self.c.poly.clone().or_else(|| match &self.file["poly"] {
            Value::String(s) => Some(s.clone()),
            Value::Array(_) => Some(self.file["poly"].to_string()),
            _ => None,
        })
    }
}

fn mat_json(m: &Mat) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(rat_to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn cols_from_json(v: &Value, rows: usize) -> Result<Mat> {
    let cols = parse_matrix_value(v)?.to_rows();
    if cols.iter().any(|c| c.len() != rows) {
        return Err(Error::invalid("basis columns must match the ambient dimension"));
    }
    Ok(Mat::from_cols(&cols))
}

fn qspace_invariants(i: &Inputs) -> Result<(Value, Value)> {
    let q = i.space()?;
    let p = q.p;
    let (_, diag) = qspace::diagonalize(&q)?;
    let asd = match qspace::almost_selfdual_form(&q) {
        Ok(a) => json!({"diag": a.diag.iter().map(rat_to_string).collect::<Vec<_>>(), "basis": mat_json(&a.basis)}),
        Err(Error::NoAlmostSelfDualLattice) => Value::Null,
        Err(e) => return Err(e),
    };
    let out = json!({
        "dim": q.dim(),
        "det": rat_to_string(&q.gram.det()),
        "disc": qspace::discriminant(&q)?.to_string(),
        "hasse": qspace::hasse_invariant(&q)?,
        "diagonal": diag.iter().map(rat_to_string).collect::<Vec<_>>(),
        "almost_self_dual": asd,
        "square_class_reps": [1, crate::arith::least_nonresidue(p), p, p * crate::arith::least_nonresidue(p)],
    });
    Ok((q.to_json(), out))
}

fn sharp_of(q: &QuadSpace) -> Result<qspace::SharpSpace> {
    match qspace::sharp_extend(q) {
        Ok(s) => Ok(s),
        Err(Error::InvalidInput(_)) => qspace::sharp_extend(&qspace::almost_selfdual_form(q)?.space(q.p)),
        Err(e) => Err(e),
    }
}

fn qspace_sharp(i: &Inputs) -> Result<(Value, Value)> {
    let q = i.space()?;
    let s = sharp_of(&q)?;
    let ff = s.fixed_forms();
    let t = if s.n() >= 3 { Some(qspace::t_max_pair(&s.base)?) } else { None };
    let out = json!({
        "sharp": s.to_json(),
        "disc_sharp": qspace::discriminant(&s.sharp)?.to_string(),
        "hasse_sharp": qspace::hasse_invariant(&s.sharp)?,
        "phi_sharp": mat_json(&qspace::phi_sharp_matrix(&s)),
        "L0": ff.l0.to_json()["gram"], "L0_sharp": ff.l0_sharp.to_json()["gram"],
        "t_max": t.map(|x| x.0), "t_sharp_max": t.map(|x| x.1),
    });
    Ok((q.to_json(), out))
}

fn lattice_from(i: &Inputs) -> Result<Lattice> {
    let q = Arc::new(i.space()?);
    match i.json_flag(&i.c.basis, "basis")? {
        Some(b) => Lattice::new(q.clone(), &cols_from_json(&b, q.dim())?),
        None => Ok(Lattice::standard(q)),
    }
}

fn lattice_type(i: &Inputs) -> Result<(Value, Value)> {
    let l = lattice_from(i)?;
    let quotient = match l.vertex_type() {
        Some(_) => {
            let qf = lattice::quotient_form(&l)?;
            let split = if qf.space.m % 2 == 0 && qf.space.m > 0 { Some(qf.space.is_split_at(1)) } else { None };
            json!({"dim": qf.space.m, "gram": qf.space.gram, "witt_index": qf.space.witt_index(), "split": split})
        }
        None => Value::Null,
    };
    let out = json!({
        "gram_valuations": l.gram_valuations(),
        "is_vertex": l.is_vertex(),
        "type": l.vertex_type(),
        "quotient_form": quotient,
        "lattice": l.to_json(),
    });
    Ok((json!({"space": l.ambient.to_json(), "basis": l.to_json()["basis"]}), out))
}

fn lattice_enumerate(i: &Inputs) -> Result<(Value, Value)> {
    let l = lattice_from(i)?;
    let found = lattice::enumerate_vertex_near(&l, i.budget())?;
    let out = json!({
        "window_size": lattice::window_size(l.dim(), l.p()).to_string(),
        "count": found.len(),
        "type_histogram": lattice::type_histogram(&found).iter().map(|(t, c)| json!({"type": t, "count": c})).collect::<Vec<_>>(),
        "vertex_lattices": found.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
    });
    Ok((json!({"space": l.ambient.to_json(), "center": l.to_json()["basis"], "budget": i.budget().to_string()}), out))
}

fn parse_elt(alg: &Arc<CliffordAlgebra>, v: &Value) -> Result<CliffordElt> {
    let terms = v.as_array().ok_or_else(|| Error::invalid("element must be a list of terms"))?;
    let mut out = alg.zero();
    for t in terms {
        let mono = t["monomial"].as_array().ok_or_else(|| Error::invalid("term needs a monomial list"))?;
        let idx = mono
            .iter()
            .map(|x| match x.as_u64() {
                Some(i) if i >= 1 && (i as usize) <= alg.m => Ok(i as usize - 1),
                _ => Err(Error::invalid("monomial indices run from 1 to dim")),
            })
            .collect::<Result<Vec<usize>>>()?;
        let c = match &t["coeff"] {
            Value::String(s) => parse_rat(s)?,
            Value::Number(n) => parse_rat(&n.to_string())?,
            _ => return Err(Error::invalid("term needs a coeff")),
        };
        out = out.add(&alg.word(&idx).scale(&c));
    }
    Ok(out)
}

fn clifford_check(i: &Inputs) -> Result<(Value, Value)> {
    let q = i.space()?;
    let inputs = q.to_json();
    let alg = CliffordAlgebra::new(q)?;
    if alg.m < 2 {
        return Err(Error::invalid("Clifford checks need dimension at least 2"));
    }
    let g = match i.json_flag(&i.c.elt, "elt")? {
        Some(v) => parse_elt(&alg, &v)?,
        None => alg.word(&[0, 1]),
    };
    let verdict = clifford::is_gspin(&g)?;
    let so = if verdict.member { Some(mat_json(&clifford::so_image(&g)?)) } else { None };
    let delta = clifford::default_delta(&alg);
    let psi = match clifford::psi_form(&delta) {
        Ok(psi) => {
            let alternating = psi.transpose() == psi.scale(&crate::arith::rat(-1));
            let equivariant = verdict.similitude.as_ref().filter(|_| verdict.member).map(|sim| {
                let lm = clifford::left_matrix(&g);
                lm.transpose().mul(&psi).mul(&lm) == psi.scale(sim)
            });
            json!({"delta": delta.to_json(), "alternating": alternating, "nondegenerate": !num::Zero::is_zero(&psi.det()), "equivariant": equivariant})
        }
        Err(Error::InvalidInput(m)) => json!({"skipped": m}),
        Err(e) => return Err(e),
    };
    let out = json!({
        "element": g.to_json(),
        "dagger": clifford::dagger(&g).to_json(),
        "gspin": verdict.to_json(),
        "so_image": so,
        "psi": psi,
    });
    Ok((json!({"space": inputs, "element": g.to_json()}), out))
}

fn strata_enumerate(i: &Inputs) -> Result<(Value, Value)> {
    let s = i.fq_space()?;
    let k = i.k()?;
    let pts = dlstrata::max_isotropic_with_component(&s, k, i.budget())?;
    let mut rows = Vec::with_capacity(pts.len());
    let mut in_sharp = 0;
    for (l, lab) in &pts {
        let flag = dlstrata::in_s_sharp(l, &s)?;
        in_sharp += usize::from(flag);
        rows.push(json!({"subspace": l.to_json(), "component": lab, "in_s_sharp": flag}));
    }
    let out = json!({"count": pts.len(), "s_sharp_count": in_sharp, "max_isotropic": rows});
    Ok((json!({"space": s.to_json(), "k": k}), out))
}

fn strata_stratify(i: &Inputs) -> Result<(Value, Value)> {
    let s = i.fq_space()?;
    let k = i.k()?;
    let st = dlstrata::stratify(&s, k, i.budget())?;
    let odev = if k % 2 == 0 { Some(dlstrata::odev_compare(&s, k, i.budget())?.to_json()) } else { None };
    Ok((json!({"space": s.to_json(), "k": k}), json!({"stratification": st.to_json(), "odev": odev})))
}

fn fq_matrix(v: &Value, p: u64) -> Result<Vec<Vec<u64>>> {
    reduce_mod_p(&parse_matrix_value(v)?, p)
}

fn ggp_common(i: &Inputs, oracle: bool) -> Result<(Value, Value)> {
    let cap = if oracle { Some(i.budget()) } else { None };
    // p-adic input: {p, gram, x0, g}
    if i.file.get("x0").is_some() {
        let inp = ggp::GGPInput::from_json(&i.file)?;
        let r = ggp::report_for_input(&inp, cap)?;
        return Ok((inp.to_json(), r.to_json()));
    }
    let p = i.p()?;
    if let Some(gv) = i.json_flag(&i.c.g, "g")? {
        let form = i.fq_space()?;
        let gbar = fq_matrix(&gv, p)?;
        let r = ggp::report_for_gbar(&form, &gbar, cap)?;
        return Ok((json!({"form": form.to_json(), "gbar": gbar}), r.to_json()));
    }
    let text = i.poly_text().ok_or_else(|| Error::invalid("need --poly, --g with --gram, or an --in file"))?;
    let poly = parse_poly(&text, p)?;
    if !oracle {
        let r = ggp::report_for_poly(&poly)?;
        return Ok((json!({"p": p, "poly": poly.to_display()}), r.to_json()));
    }
    let form = match i.json_flag(&i.c.gram, "gram")? {
        Some(_) => i.fq_space()?,
        None => ggp::standard_form(p, poly.deg().max(0) as usize, i.c.split)?,
    };
    let gbar = ggp::realize(&poly, &form)?;
    let r = ggp::report_for_gbar(&form, &gbar, cap)?;
    Ok((json!({"p": p, "poly": poly.to_display(), "form": form.to_json()}), json!({"gbar": gbar, "report": r.to_json()})))
}

fn run_selftest(i: &Inputs) -> (i32, Value) {
    let opts = SelftestOptions { budget: i.budget(), seed: i.c.seed };
    let summary = selftest::selftest(&opts);
    for r in &summary.results {
        eprintln!("{}", r.line());
    }
    let code = if summary.all_ok() { EXIT_OK } else { EXIT_FAILURE };
    (code, report("selftest", json!({"budget": opts.budget.to_string(), "seed": opts.seed}), summary.to_json()))
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CriterionNotApplicable(_) => EXIT_NOT_APPLICABLE,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Internal(_) => EXIT_FAILURE,
        _ => EXIT_INVALID,
    }
}

impl Cmd {
    fn common(&self) -> &Common {
        match self {
            Cmd::QspaceInvariants(c)
            | Cmd::QspaceSharp(c)
            | Cmd::LatticeType(c)
            | Cmd::LatticeEnumerate(c)
            | Cmd::CliffordCheck(c)
            | Cmd::StrataEnumerate(c)
            | Cmd::StrataStratify(c)
            | Cmd::GgpIntersect(c)
            | Cmd::GgpCrosscheck(c)
            | Cmd::Selftest(c) => c,
        }
    }
}

fn name_of(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::QspaceInvariants(_) => "qspace-invariants",
        Cmd::QspaceSharp(_) => "qspace-sharp",
        Cmd::LatticeType(_) => "lattice-type",
        Cmd::LatticeEnumerate(_) => "lattice-enumerate",
        Cmd::CliffordCheck(_) => "clifford-check",
        Cmd::StrataEnumerate(_) => "strata-enumerate",
        Cmd::StrataStratify(_) => "strata-stratify",
        Cmd::GgpIntersect(_) => "ggp-intersect",
        Cmd::GgpCrosscheck(_) => "ggp-crosscheck",
        Cmd::Selftest(_) => "selftest",
    }
}

fn dispatch(cmd: Cmd) -> (i32, Value) {
    let name = name_of(&cmd);
    let inputs = match Inputs::new(cmd.common().clone()) {
        Ok(i) => i,
        Err(e) => return (exit_code(&e), error_report(name, &e)),
    };
    if let Cmd::Selftest(_) = cmd {
        return run_selftest(&inputs);
    }
    let res = match cmd {
        Cmd::QspaceInvariants(_) => qspace_invariants(&inputs),
        Cmd::QspaceSharp(_) => qspace_sharp(&inputs),
        Cmd::LatticeType(_) => lattice_type(&inputs),
        Cmd::LatticeEnumerate(_) => lattice_enumerate(&inputs),
        Cmd::CliffordCheck(_) => clifford_check(&inputs),
        Cmd::StrataEnumerate(_) => strata_enumerate(&inputs),
        Cmd::StrataStratify(_) => strata_stratify(&inputs),
        Cmd::GgpIntersect(_) => ggp_common(&inputs, false),
        Cmd::GgpCrosscheck(_) => ggp_common(&inputs, true),
        Cmd::Selftest(_) => unreachable!(),
    };
    match res {
        Ok((inp, out)) => (EXIT_OK, report(name, inp, out)),
        Err(e) => (exit_code(&e), error_report(name, &e)),
    }
}

fn threads_of(cmd: &Cmd) -> Option<usize> {
    cmd.common().threads.or_else(|| std::env::var("THREADS").ok().and_then(|s| s.parse().ok()))
}

/// Parse `argv` (program name first), run, and return the exit code with the JSON report.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (EXIT_OK, e.to_string());
            }
            let v = error_report("", &Error::invalid(e.render().to_string()));
            return (EXIT_INVALID, serde_json::to_string_pretty(&v).expect("JSON values serialize"));
        }
    };
    let out_path = cli.cmd.common().out.clone();
    let (code, v) = match threads_of(&cli.cmd) {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(cli.cmd)),
            Err(e) => (EXIT_INVALID, error_report("", &Error::invalid(e.to_string()))),
        },
        None => dispatch(cli.cmd),
    };
    let text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    if let Some(path) = out_path {
        if let Err(e) = std::fs::write(&path, &text) {
            let v = error_report("", &Error::invalid(format!("cannot write {path}: {e}")));
            return (EXIT_INVALID, serde_json::to_string_pretty(&v).expect("JSON values serialize"));
        }
    }
    (code, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, Value) {
        let (c, s) = run(std::iter::once("gspin").chain(args.iter().copied()));
        (c, serde_json::from_str(&s).unwrap())
    }

    #[test]
    fn invariants_example() {
        let (c, v) = call(&["qspace-invariants", "--p", "3", "--gram", "[[3,0],[0,2]]"]);
        assert_eq!(c, 0);
        assert_eq!(v["outputs"]["disc"], "6");
        assert_eq!(v["outputs"]["hasse"], -1);
    }

    #[test]
    fn intersect_example() {
        let (c, v) = call(&["ggp-intersect", "--p", "5", "--poly", "(T^2+T+1)(T-2)(T-3)"]);
        assert_eq!(c, 0);
        assert_eq!(v["outputs"]["Q_g"], "T^2+T+1");
        assert_eq!(v["outputs"]["point_count"], 4);
        assert_eq!(v["outputs"]["intersection_number"], 4);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["no-such-command"]).0, EXIT_INVALID);
        assert_eq!(call(&["qspace-invariants", "--p", "4", "--gram", "[[1]]"]).0, EXIT_INVALID);
        let (c, v) = call(&["ggp-intersect", "--p", "3", "--poly", "(T+1)^4"]);
        assert_eq!((c, &v["outputs"]["nonempty"]), (EXIT_OK, &json!(false)));
        assert_eq!(call(&["ggp-crosscheck", "--p", "5", "--gram", "[[1,0],[0,1]]", "--g", "[[1,0],[0,1]]"]).0, EXIT_NOT_APPLICABLE);
        assert_eq!(call(&["lattice-enumerate", "--p", "3", "--gram", "[[3,0,0],[0,1,0],[0,0,1]]", "--budget", "10"]).0, EXIT_BUDGET);
    }
}
