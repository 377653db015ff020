//! Intersection numbers of the diagonal with its g-translate: the lattice L_{x₀}(g), its
//! reduction ḡ on Ω♯(g), the factor classification of P_g and the closed formulas,
//! cross-checked against fixed maximal isotropic subspaces.

use std::sync::Arc;

use num::integer::lcm;
use num::traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::fpoly::FpPoly;
use crate::arith::{field, least_nonresidue, legendre, mod_int, rat, rat_to_string, sqrt_mod, vp, Rat};
use crate::dlstrata::{self, FqQuadSpace};
use crate::error::{Error, Result};
use crate::lattice::{quotient_form, Lattice};
use crate::linalg::fqmat::{self, FMat};
use crate::linalg::Mat;
use crate::qspace::{parse_matrix_value, QuadSpace};

/// Model of the isometry g of L₀♯ with its distinguished vector x₀.
#[derive(Clone, Debug)]
pub struct GGPInput {
    pub space: Arc<QuadSpace>,
    pub x0: Vec<Rat>,
    pub g: Mat,
}

impl GGPInput {
    pub fn new(space: Arc<QuadSpace>, x0: Vec<Rat>, g: Mat) -> Result<Self> {
        let n = space.dim();
        if x0.len() != n || g.rows != n || g.cols != n {
            return Err(Error::invalid("x0 and g must match the dimension of the space"));
        }
        if x0.iter().all(|x| x.is_zero()) {
            return Err(Error::invalid("x0 must be nonzero"));
        }
        if g.transpose().mul(&space.gram).mul(&g) != space.gram {
            return Err(Error::invalid("g does not preserve the form"));
        }
        if g.det() != Rat::one() {
            return Err(Error::invalid("det(g) must be 1"));
        }
        Ok(GGPInput { space, x0, g })
    }

    pub fn p(&self) -> u64 {
        self.space.p
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let space = QuadSpace::from_json(v)?;
        let x0 = v
            .get("x0")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid("missing x0"))?
            .iter()
            .map(|e| match e {
                Value::String(s) => crate::arith::parse_rat(s),
                Value::Number(n) => n.as_i64().map(rat).ok_or_else(|| Error::invalid("x0 entries must be integers or rationals")),
                _ => Err(Error::invalid("x0 entries must be integers or rationals")),
            })
            .collect::<Result<Vec<_>>>()?;
        let g = parse_matrix_value(v.get("g").ok_or_else(|| Error::invalid("missing g"))?)?;
        GGPInput::new(Arc::new(space), x0, g)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.space.to_json();
        v["x0"] = json!(self.x0.iter().map(rat_to_string).collect::<Vec<_>>());
        v["g"] = json!(self.g.to_rows().iter().map(|r| r.iter().map(rat_to_string).collect::<Vec<_>>()).collect::<Vec<_>>());
        v
    }
}

/// The module spanned by x₀, g x₀, …, gⁿ x₀.
#[derive(Clone, Debug)]
pub struct LxModule {
    pub gens: Mat,
    pub rank: usize,
    /// Present when the generators span a full-rank lattice.
    pub lattice: Option<Lattice>,
}

pub fn l_x0_lattice(inp: &GGPInput) -> LxModule {
    let n = inp.space.dim();
    let mut cols = Vec::with_capacity(n);
    let mut v = inp.x0.clone();
    for _ in 0..n {
        cols.push(v.clone());
        v = inp.g.mul_vec(&v);
    }
    let gens = Mat::from_cols(&cols);
    let rank = gens.rank();
    let lattice = if rank == n { Lattice::new(inp.space.clone(), &gens).ok() } else { None };
    LxModule { gens, rank, lattice }
}

/// Regular semisimple minuscule: L_{x₀}(g) is a full-rank vertex lattice.
pub fn is_rsm(inp: &GGPInput) -> bool {
    l_x0_lattice(inp).lattice.is_some_and(|l| l.is_vertex())
}

/// Ω♯(g) with the action ḡ, both in the quotient basis.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub lattice: Lattice,
    pub omega: FqQuadSpace,
    pub gbar: FMat,
}

pub fn reduce_g(inp: &GGPInput) -> Result<Reduction> {
    let lx = l_x0_lattice(inp);
    let lattice = match lx.lattice {
        Some(l) if l.is_vertex() => l,
        _ => return Err(Error::CriterionNotApplicable("g is not regular semisimple minuscule".into())),
    };
    let qf = quotient_form(&lattice)?;
    let p = inp.p();
    let m = qf.basis_idx.len();
    let mut gbar = vec![vec![0u64; m]; m];
    for (j, &a) in qf.basis_idx.iter().enumerate() {
        let img = inp.g.mul_vec(&lattice.basis.col(a));
        let coords = lattice.basis.solve(&Mat::from_cols(&[img])).expect("full rank").col(0);
        let red = qf.reduce(&coords).map_err(|_| Error::invalid("g does not preserve L_x0(g)"))?;
        for i in 0..m {
            gbar[i][j] = red[i];
        }
    }
    let f = field(p, 1);
    if m > 0 {
        dlstrata::check_isometry(&qf.space, &gbar).map_err(|_| Error::Internal("reduction is not an isometry".into()))?;
        if fqmat::det(&f, &gbar) != 1 {
            return Err(Error::Internal("reduction has determinant ≠ 1".into()));
        }
    }
    Ok(Reduction { lattice, omega: qf.space, gbar })
}

/// Factorization of P into self-reciprocal factors and classes {R, R*}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub poly: FpPoly,
    pub sr: Vec<(FpPoly, u32)>,
    /// (R, R*, m) with R < R* in the polynomial order.
    pub nsr: Vec<(FpPoly, FpPoly, u32)>,
}

pub fn classify_factors(poly: &FpPoly) -> Result<Classification> {
    if poly.is_zero() || poly.coeff(0) == 0 {
        return Err(Error::invalid("P(0) must be nonzero"));
    }
    let poly = poly.monic();
    let factors = poly.factor();
    let mut sr = Vec::new();
    let mut nsr = Vec::new();
    for (r, m) in &factors {
        let rs = r.reciprocal();
        if rs == *r {
            sr.push((r.clone(), *m));
        } else if *r < rs {
            let ms = factors.iter().find(|(f, _)| *f == rs).map(|x| x.1).unwrap_or(0);
            if ms != *m {
                return Err(Error::invalid(format!("P is not self-reciprocal: m({r}) = {m} but m({rs}) = {ms}")));
            }
            nsr.push((r.clone(), rs, *m));
        } else if !factors.iter().any(|(f, _)| *f == rs) {
            return Err(Error::invalid(format!("P is not self-reciprocal: {rs} is missing")));
        }
    }
    Ok(Classification { poly, sr, nsr })
}

/// The unique self-reciprocal factor of odd multiplicity, if exactly one exists.
pub fn nonempty_criterion(c: &Classification) -> Option<(FpPoly, u32)> {
    let odd: Vec<_> = c.sr.iter().filter(|(_, m)| m % 2 == 1).collect();
    match odd.as_slice() {
        [one] => Some((*one).clone()),
        _ => None,
    }
}

fn nsr_product(c: &Classification) -> u64 {
    c.nsr.iter().map(|(_, _, m)| 1 + *m as u64).product()
}

pub fn point_count(c: &Classification) -> Result<u64> {
    let (q, _) = nonempty_criterion(c).ok_or_else(|| Error::CriterionNotApplicable("no unique odd self-reciprocal factor".into()))?;
    Ok(q.deg() as u64 * nsr_product(c))
}

pub fn intersection_number(c: &Classification) -> Result<u64> {
    let (_, m) = nonempty_criterion(c).ok_or_else(|| Error::CriterionNotApplicable("no unique odd self-reciprocal factor".into()))?;
    Ok(point_count(c)? * (m as u64 + 1) / 2)
}

/// 2·lcm of the factor degrees.
pub fn k_star(c: &Classification) -> u32 {
    let degs = c.sr.iter().map(|(r, _)| r.deg()).chain(c.nsr.iter().map(|(r, _, _)| r.deg()));
    2 * degs.fold(1i64, lcm) as u32
}

pub fn poly_from_charpoly(p: u64, m: &FMat) -> FpPoly {
    FpPoly::new(p, fqmat::charpoly(&field(p, 1), m))
}

/// diag(1, …, 1, c) over F_p with c ∈ {1, u} chosen so the form is split or not.
pub fn standard_form(p: u64, m: usize, split: bool) -> Result<FqQuadSpace> {
    if m == 0 || m % 2 == 1 {
        return Err(Error::invalid("dimension must be positive and even"));
    }
    for c in [1, least_nonresidue(p)] {
        let mut g = fqmat::identity(m);
        g[m - 1][m - 1] = c;
        let s = FqQuadSpace::new(p, g)?;
        if s.is_split_at(1) == split {
            return Ok(s);
        }
    }
    Err(Error::Internal("no diagonal form of the requested kind".into()))
}

/// Matrix M with Mᵀ G M = diag(1, …, 1, c), c ∈ {1, u}.
fn normal_basis(p: u64, gram: &FMat) -> Result<FMat> {
    let f = field(p, 1);
    let m = gram.len();
    let mut span: FMat = fqmat::identity(m);
    let mut out: FMat = Vec::with_capacity(m);
    while span.len() > 1 {
        let r = span.len();
        let total = p.pow(r as u32);
        let v = (1..total)
            .map(|idx| {
                let mut c = vec![0u64; r];
                let mut t = idx;
                for x in c.iter_mut() {
                    *x = t % p;
                    t /= p;
                }
                combine(p, &c, &span)
            })
            .find(|v| fqmat::bilinear(&f, gram, v, v) == 1)
            .ok_or_else(|| Error::Internal("binary form does not represent 1".into()))?;
        let gv = fqmat::mul_vec(&f, gram, &v);
        let mut next: FMat = span
            .iter()
            .map(|w| {
                let c = w.iter().zip(&gv).fold(0u64, |a, (&x, &y)| (a + x * y) % p);
                w.iter().zip(&v).map(|(&x, &y)| (x + p * p - c * y % p) % p).collect()
            })
            .collect();
        fqmat::rref(&f, &mut next);
        out.push(v);
        span = next;
    }
    let w = span.pop().ok_or_else(|| Error::Internal("empty complement".into()))?;
    let c = fqmat::bilinear(&f, gram, &w, &w);
    let target = if legendre(c, p) == 1 { 1 } else { least_nonresidue(p) };
    let ratio = target * crate::arith::mod_inv(c, p) % p;
    let s = sqrt_mod(ratio, p).ok_or_else(|| Error::Internal("square class mismatch".into()))?;
    out.push(w.iter().map(|&x| x * s % p).collect());
    Ok(fqmat::transpose(&out))
}

fn combine(p: u64, c: &[u64], rows: &FMat) -> Vec<u64> {
    let m = rows[0].len();
    let mut v = vec![0u64; m];
    for (ci, r) in c.iter().zip(rows) {
        for (x, &y) in v.iter_mut().zip(r) {
            *x = (*x + ci * y) % p;
        }
    }
    v
}

/// A regular isometry of `target` with characteristic polynomial P, from the module
/// F_p[T]/(P) with the involution T ↦ T⁻¹ and an invariant trace form.
pub fn realize(poly: &FpPoly, target: &FqQuadSpace) -> Result<FMat> {
    let p = target.p;
    let m = target.m;
    let poly = poly.monic();
    if poly.deg() != m as i64 {
        return Err(Error::invalid("deg P must equal the dimension of the target"));
    }
    if poly.coeff(0) == 0 {
        return Err(Error::invalid("P(0) must be nonzero"));
    }
    if !poly.is_self_reciprocal() {
        return Err(Error::invalid("P must be self-reciprocal"));
    }
    let f = field(p, 1);
    let coords = |q: &FpPoly| -> Vec<u64> { (0..m).map(|i| q.coeff(i)).collect() };
    let t = FpPoly::x(p);
    let c0inv = crate::arith::mod_inv(poly.coeff(0), p);
    // T⁻¹ = −(P(T) − P(0)) / (T·P(0))
    let tinv = FpPoly::new(p, poly.c[1..].to_vec()).scale((p - c0inv) % p);
    let mut pos = vec![FpPoly::one(p)];
    let mut neg = vec![FpPoly::one(p)];
    for i in 1..m {
        pos.push(pos[i - 1].mul_mod(&t, &poly));
        neg.push(neg[i - 1].mul_mod(&tinv, &poly));
    }
    let companion: FMat = fqmat::transpose(&(0..m).map(|j| coords(&pos[j].mul_mod(&t, &poly))).collect::<FMat>());
    // λ with λ∘conj = λ: kernel of Jᵀ − I
    let jmat: FMat = fqmat::transpose(&(0..m).map(|i| coords(&neg[i])).collect::<FMat>());
    let mut eqs = fqmat::transpose(&jmat);
    for (i, row) in eqs.iter_mut().enumerate() {
        row[i] = f.sub(row[i], 1);
    }
    let lambdas = fqmat::kernel(&f, &eqs, m);
    let r = lambdas.len();
    let want = legendre(target.det(), p);
    let total = p.pow(r as u32);
    for idx in 1..total {
        let mut a = vec![0u64; r];
        let mut tt = idx;
        for x in a.iter_mut() {
            *x = tt % p;
            tt /= p;
        }
        let lam = combine(p, &a, &lambdas);
        let eval = |q: &FpPoly| -> u64 { coords(q).iter().zip(&lam).fold(0, |s, (&x, &y)| (s + x * y) % p) };
        let gram: FMat = (0..m)
            .map(|i| (0..m).map(|j| eval(&pos[i].mul_mod(&neg[j], &poly))).collect())
            .collect();
        let d = fqmat::det(&f, &gram);
        if d == 0 || legendre(d, p) != want {
            continue;
        }
        let mb = normal_basis(p, &gram)?;
        let mt = normal_basis(p, &target.gram)?;
        let phi = fqmat::mul(&f, &mt, &fqmat::inverse(&f, &mb).expect("basis"));
        let phi_inv = fqmat::inverse(&f, &phi).expect("isometry is invertible");
        let gbar = fqmat::mul(&f, &fqmat::mul(&f, &phi, &companion), &phi_inv);
        dlstrata::check_isometry(target, &gbar).map_err(|_| Error::Internal("transported matrix is not an isometry".into()))?;
        if poly_from_charpoly(p, &gbar) != poly {
            return Err(Error::Internal("transported matrix has the wrong characteristic polynomial".into()));
        }
        if fqmat::det(&f, &gbar) != 1 {
            return Err(Error::UnrealizableOnForm(format!("{poly} gives determinant {} ≠ 1", fqmat::det(&f, &gbar))));
        }
        return Ok(gbar);
    }
    Err(Error::UnrealizableOnForm(format!(
        "no invariant form on F_{p}[T]/({poly}) has the discriminant class of the target"
    )))
}

/// A p-adic input whose reduction is (form, ḡ): L₀♯ = p⁻¹B ⊕ ⟨u₀⟩, g the Cayley lift of ḡ
/// extended by 1, x₀ = (y, 1) with ȳ cyclic and isotropic. With `scale_x0` the vector x₀ is
/// replaced by p·x₀, which keeps L_{x₀}(g) full rank but pushes its elementary divisors to p².
pub fn construct_input(form: &FqQuadSpace, gbar: &FMat, scale_x0: bool) -> Result<GGPInput> {
    dlstrata::check_isometry(form, gbar)?;
    let p = form.p;
    let m = form.m;
    let f = field(p, 1);
    let mut ipg = fqmat::identity(m);
    for i in 0..m {
        for j in 0..m {
            ipg[i][j] = f.add(ipg[i][j], gbar[i][j]);
        }
    }
    let ipg_inv = fqmat::inverse(&f, &ipg).ok_or_else(|| Error::invalid("ḡ has eigenvalue −1; no Cayley lift"))?;
    let mut img = fqmat::identity(m);
    for i in 0..m {
        for j in 0..m {
            img[i][j] = f.sub(img[i][j], gbar[i][j]);
        }
    }
    let a = fqmat::mul(&f, &img, &ipg_inv);
    let s = fqmat::mul(&f, &form.gram, &a);
    let mut st = Mat::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            st[(i, j)] = rat(s[i][j] as i64);
            st[(j, i)] = rat(-(s[i][j] as i64));
        }
    }
    let b = Mat::from_rows(form.gram.iter().map(|r| r.iter().map(|&x| rat(x as i64)).collect()).collect::<Vec<_>>());
    let at = b.inverse().expect("nondegenerate").mul(&st);
    let id = Mat::identity(m);
    let gt = id.sub(&at).mul(&id.add(&at).inverse().expect("I + A invertible mod p"));
    // cyclic isotropic ȳ
    let total = p.pow(m as u32);
    let ybar = (1..total)
        .map(|idx| {
            let mut v = vec![0u64; m];
            let mut t = idx;
            for x in v.iter_mut() {
                *x = t % p;
                t /= p;
            }
            v
        })
        .find(|v| {
            if fqmat::bilinear(&f, &form.gram, v, v) != 0 {
                return false;
            }
            let mut k = Vec::with_capacity(m);
            let mut w = v.clone();
            for _ in 0..m {
                k.push(w.clone());
                w = fqmat::mul_vec(&f, gbar, &w);
            }
            fqmat::rank(&f, &k) == m
        })
        .ok_or_else(|| Error::UnrealizableOnForm("no cyclic isotropic vector for ḡ".into()))?;
    let mut y: Vec<Rat> = ybar.iter().map(|&x| rat(x as i64)).collect();
    let pr = rat(p as i64);
    let sval = |y: &[Rat]| b.bilinear(y, y);
    if vp(&sval(&y), p) != 1 {
        let by = b.mul_vec(&y);
        let j = (0..m).find(|&j| mod_int(&by[j], p) != 0).expect("nondegenerate");
        y[j] += &pr;
    }
    let sv = sval(&y);
    debug_assert_eq!(vp(&sv, p), 1);
    let u0 = -(&sv / &pr) + &pr;
    let mut gram = Mat::zeros(m + 1, m + 1);
    for i in 0..m {
        for j in 0..m {
            gram[(i, j)] = &b[(i, j)] / &pr;
        }
    }
    gram[(m, m)] = u0;
    let mut g = Mat::identity(m + 1);
    for i in 0..m {
        for j in 0..m {
            g[(i, j)] = gt[(i, j)].clone();
        }
    }
    let mut x0 = y;
    x0.push(Rat::one());
    if scale_x0 {
        x0 = x0.into_iter().map(|x| x * &pr).collect();
    }
    GGPInput::new(Arc::new(QuadSpace::new(p, gram)?), x0, g)
}

/// Fixed-point counts at k* and 2k*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRecord {
    pub k_star: u32,
    pub levels: Vec<u32>,
    /// Fixed points lying in S♯ at each level.
    pub counts: Vec<usize>,
    /// All fixed maximal isotropic subspaces at each level.
    pub fixed_lagrangians: Vec<usize>,
    pub stable: bool,
    pub formula: u64,
    pub matches: bool,
    pub assumption_violated: bool,
}

impl OracleRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "k_star": self.k_star, "levels": self.levels, "counts": self.counts,
            "fixed_lagrangians": self.fixed_lagrangians, "stable": self.stable,
            "formula": self.formula, "matches": self.matches, "assumption_violated": self.assumption_violated,
        })
    }
}

/// Compare the formula with fixed points of a regular ḡ on `form`.
pub fn cross_check_gbar(form: &FqQuadSpace, gbar: &FMat, cap: u128) -> Result<OracleRecord> {
    dlstrata::check_isometry(form, gbar)?;
    if !dlstrata::is_regular(gbar, form.p) {
        return Err(Error::CriterionNotApplicable("ḡ is not regular".into()));
    }
    let c = classify_factors(&poly_from_charpoly(form.p, gbar))?;
    let formula = point_count(&c).unwrap_or(0);
    let ks = k_star(&c);
    let levels = vec![ks, 2 * ks];
    let runs = levels
        .iter()
        .map(|&k| dlstrata::fixed_points(form, gbar, k, cap))
        .collect::<Result<Vec<_>>>()?;
    let counts: Vec<usize> = runs.iter().map(|r| r.iter().filter(|x| x.in_s_sharp == Some(true)).count()).collect();
    let fixed_lagrangians: Vec<usize> = runs.iter().map(Vec::len).collect();
    let stable = counts.windows(2).all(|w| w[0] == w[1]);
    let brute = counts[0] as u64;
    Ok(OracleRecord {
        k_star: ks,
        levels,
        counts,
        fixed_lagrangians,
        stable,
        formula,
        matches: stable && brute == formula,
        assumption_violated: brute == 0 && formula > 0,
    })
}

pub fn cross_check(inp: &GGPInput, cap: u128) -> Result<OracleRecord> {
    let red = reduce_g(inp)?;
    cross_check_gbar(&red.omega, &red.gbar, cap)
}

/// The report for one isometry or polynomial.
#[derive(Clone, Debug)]
pub struct GGPReport {
    pub rsm: Option<bool>,
    pub classification: Classification,
    pub q_g: Option<(FpPoly, u32)>,
    pub point_count: Option<u64>,
    pub multiplicity: Option<u64>,
    pub oracle: Option<OracleRecord>,
    pub omega_dim: Option<usize>,
    pub omega_witt_index: Option<usize>,
}

pub const LOCAL_FACTOR_NOTE: &str =
    "the local factor (m_Q+1)/2 is applied as a formula; only the point count is checked by enumeration";

fn poly_json(f: &FpPoly) -> Value {
    json!({"display": f.to_display(), "coeffs": f.c})
}

impl GGPReport {
    pub fn to_json(&self) -> Value {
        let c = &self.classification;
        json!({
            "rsm": self.rsm,
            "P_g": poly_json(&c.poly),
            "sr_factors": c.sr.iter().map(|(r, m)| json!({"factor": poly_json(r), "multiplicity": m})).collect::<Vec<_>>(),
            "nsr_classes": c.nsr.iter().map(|(r, s, m)| json!({"class": [poly_json(r), poly_json(s)], "multiplicity": m})).collect::<Vec<_>>(),
            "nonempty": self.q_g.is_some(),
            "Q_g": self.q_g.as_ref().map(|(q, _)| q.to_display()),
            "Q_g_coeffs": self.q_g.as_ref().map(|(q, _)| q.c.clone()),
            "Q_g_multiplicity": self.q_g.as_ref().map(|(_, m)| *m),
            "point_count": self.point_count,
            "multiplicity": self.multiplicity,
            "intersection_number": self.multiplicity,
            "brute_force_count": self.oracle.as_ref().map(|o| o.counts[0]),
            "oracle": self.oracle.as_ref().map(OracleRecord::to_json),
            "omega_dim": self.omega_dim,
            "omega_witt_index": self.omega_witt_index,
            "note": LOCAL_FACTOR_NOTE,
        })
    }
}

/// Formula-level report for a polynomial.
pub fn report_for_poly(poly: &FpPoly) -> Result<GGPReport> {
    let c = classify_factors(poly)?;
    let q_g = nonempty_criterion(&c);
    let (pc, mult) = if q_g.is_some() { (Some(point_count(&c)?), Some(intersection_number(&c)?)) } else { (None, None) };
    Ok(GGPReport { rsm: None, classification: c, q_g, point_count: pc, multiplicity: mult, oracle: None, omega_dim: None, omega_witt_index: None })
}

/// Report for (Ω, ḡ), optionally with the fixed-point oracle.
pub fn report_for_gbar(form: &FqQuadSpace, gbar: &FMat, oracle_cap: Option<u128>) -> Result<GGPReport> {
    dlstrata::check_isometry(form, gbar)?;
    let mut r = report_for_poly(&poly_from_charpoly(form.p, gbar))?;
    r.omega_dim = Some(form.m);
    r.omega_witt_index = Some(form.witt_index());
    if let Some(cap) = oracle_cap {
        r.oracle = Some(cross_check_gbar(form, gbar, cap)?);
    }
    Ok(r)
}

/// Full pipeline for a p-adic input.
pub fn report_for_input(inp: &GGPInput, oracle_cap: Option<u128>) -> Result<GGPReport> {
    let red = reduce_g(inp)?;
    let mut r = report_for_gbar(&red.omega, &red.gbar, oracle_cap)?;
    r.rsm = Some(true);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_i64(p, c)
    }

    /// (T²+T+1)(T−2)(T−3) over F₅.
    fn worked_a() -> FpPoly {
        poly(5, &[1, 1, 1]).mul(&poly(5, &[-2, 1])).mul(&poly(5, &[-3, 1]))
    }

    fn nonsplit(p: u64, m: usize) -> FqQuadSpace {
        standard_form(p, m, false).unwrap()
    }

    #[test]
    fn classification_examples() {
        let c = classify_factors(&poly(3, &[1, -2, 1])).unwrap();
        assert_eq!(c.sr, vec![(poly(3, &[-1, 1]), 2)]);
        assert!(c.nsr.is_empty());
        let c = classify_factors(&poly(5, &[-2, 1]).mul(&poly(5, &[-3, 1]))).unwrap();
        assert_eq!(c.nsr, vec![(poly(5, &[-3, 1]), poly(5, &[-2, 1]), 1)]);
        let c = classify_factors(&worked_a()).unwrap();
        assert_eq!(c.sr, vec![(poly(5, &[1, 1, 1]), 1)]);
        assert_eq!(c.nsr.len(), 1);
        assert!(classify_factors(&poly(5, &[0, 1, 1])).is_err());
        assert!(classify_factors(&poly(5, &[-2, 1])).is_err());
    }

    #[test]
    fn criterion_examples() {
        assert!(nonempty_criterion(&classify_factors(&poly(3, &[1, 1]).pow(4)).unwrap()).is_none());
        let two_odd = poly(5, &[-1, 1]).mul(&poly(5, &[1, 1])).mul(&poly(5, &[-2, 1])).mul(&poly(5, &[-3, 1]));
        assert!(nonempty_criterion(&classify_factors(&two_odd).unwrap()).is_none());
        let c = classify_factors(&worked_a()).unwrap();
        assert_eq!(nonempty_criterion(&c).unwrap().0, poly(5, &[1, 1, 1]));
    }

    #[test]
    fn formula_examples() {
        let q = poly(5, &[1, 1, 1]);
        let cases = [
            (worked_a(), 4, 4),
            (q.mul(&poly(5, &[1, 1]).pow(2)), 2, 2),
            (q.pow(3), 2, 4),
        ];
        for (pp, count, inter) in cases {
            let c = classify_factors(&pp).unwrap();
            assert_eq!(point_count(&c).unwrap(), count);
            assert_eq!(intersection_number(&c).unwrap(), inter);
        }
        let empty = classify_factors(&poly(3, &[1, 1]).pow(4)).unwrap();
        assert!(matches!(point_count(&empty), Err(Error::CriterionNotApplicable(_))));
        assert_eq!(k_star(&classify_factors(&worked_a()).unwrap()), 4);
    }

    #[test]
    fn realize_examples() {
        let hyp = FqQuadSpace::new(5, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let g = realize(&poly(5, &[-2, 1]).mul(&poly(5, &[-3, 1])), &hyp).unwrap();
        assert_eq!(poly_from_charpoly(5, &g), poly(5, &[1, 0, 1]));
        let ns = nonsplit(5, 4);
        let g = realize(&worked_a(), &ns).unwrap();
        dlstrata::check_isometry(&ns, &g).unwrap();
        assert_eq!(poly_from_charpoly(5, &g), worked_a());
        match realize(&poly(5, &[-1, 1]).pow(4), &ns) {
            Ok(g) => {
                dlstrata::check_isometry(&ns, &g).unwrap();
                assert_eq!(poly_from_charpoly(5, &g), poly(5, &[-1, 1]).pow(4));
            }
            Err(e) => assert!(matches!(e, Error::UnrealizableOnForm(_))),
        }
        assert!(realize(&poly(5, &[-2, 1]).mul(&poly(5, &[-2, 1])), &hyp).is_err());
    }

    #[test]
    fn lx0_examples() {
        let ns = nonsplit(5, 4);
        let gbar = realize(&worked_a(), &ns).unwrap();
        let inp = construct_input(&ns, &gbar, false).unwrap();
        let lx = l_x0_lattice(&inp);
        assert_eq!(lx.rank, 5);
        assert!(is_rsm(&inp));
        let red = reduce_g(&inp).unwrap();
        assert_eq!(red.omega.m, 4);
        assert!(!red.omega.is_split_at(1));
        assert_eq!(poly_from_charpoly(5, &red.gbar), worked_a());
        let scaled = construct_input(&ns, &gbar, true).unwrap();
        assert_eq!(l_x0_lattice(&scaled).rank, 5);
        assert!(!is_rsm(&scaled));
        assert!(matches!(reduce_g(&scaled), Err(Error::CriterionNotApplicable(_))));
        let id = GGPInput::new(inp.space.clone(), inp.x0.clone(), Mat::identity(5)).unwrap();
        assert_eq!(l_x0_lattice(&id).rank, 1);
        assert!(!is_rsm(&id));
    }

    #[test]
    fn cross_check_worked_example() {
        let ns = nonsplit(5, 4);
        let gbar = realize(&worked_a(), &ns).unwrap();
        let rec = cross_check_gbar(&ns, &gbar, 1 << 26).unwrap();
        assert!(rec.matches, "{rec:?}");
        assert_eq!(rec.counts, vec![4, 4]);
        assert!(matches!(cross_check_gbar(&ns, &fqmat::identity(4), 1 << 20), Err(Error::CriterionNotApplicable(_))));
    }

    #[test]
    fn negation_keeps_fixed_points() {
        let ns = nonsplit(5, 4);
        let gbar = realize(&worked_a(), &ns).unwrap();
        let neg: FMat = gbar.iter().map(|r| r.iter().map(|&x| (5 - x) % 5).collect()).collect();
        let a = dlstrata::fixed_points(&ns, &gbar, 4, 1 << 24).unwrap();
        let b = dlstrata::fixed_points(&ns, &neg, 4, 1 << 24).unwrap();
        assert_eq!(a, b);
        let pn = poly_from_charpoly(5, &neg);
        let pa = poly_from_charpoly(5, &gbar);
        let twisted = FpPoly::new(5, pa.c.iter().enumerate().map(|(i, &c)| if i % 2 == 1 { (5 - c) % 5 } else { c }).collect());
        assert_eq!(pn, twisted);
    }

    #[test]
    fn json_roundtrip() {
        let ns = nonsplit(5, 4);
        let gbar = realize(&worked_a(), &ns).unwrap();
        let inp = construct_input(&ns, &gbar, false).unwrap();
        let back = GGPInput::from_json(&inp.to_json()).unwrap();
        assert_eq!(back.g, inp.g);
        assert_eq!(back.x0, inp.x0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn odd_factor_has_even_degree(p in prop::sample::select(vec![3u64, 5]), half in 1usize..5, seed in prop::collection::vec(0u64..5, 4)) {
            // palindromic monic polynomial of degree 2·half
            let deg = 2 * half;
            let mut c = vec![0u64; deg + 1];
            c[0] = 1;
            c[deg] = 1;
            for i in 1..=half {
                let v = seed[(i - 1) % seed.len()] % p;
                c[i] = v;
                c[deg - i] = v;
            }
            let pp = FpPoly::new(p, c);
            let cl = classify_factors(&pp).unwrap();
            for (r, _, m) in &cl.nsr {
                prop_assert_eq!(cl.poly.factor().iter().find(|(f, _)| *f == r.reciprocal()).map(|x| x.1), Some(*m));
            }
            if let Some((q, m)) = nonempty_criterion(&cl) {
                prop_assert_eq!(q.deg() % 2, 0);
                prop_assert_eq!(intersection_number(&cl).unwrap(), point_count(&cl).unwrap() * (m as u64 + 1) / 2);
            }
        }
    }
}
