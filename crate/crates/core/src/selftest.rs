//! The acceptance suite, one function per criterion, each returning a structured verdict.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use num::traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arith::fpoly::FpPoly;
use crate::arith::{field, least_nonresidue, rat, rat_to_string, vp, Rat};
use crate::clifford::{self, cmul, dagger, CliffordAlgebra, CliffordElt};
use crate::dlstrata;
use crate::error::{Error, Result, DEFAULT_BUDGET};
use crate::ggp;
use crate::lattice::{self, Lattice, VertexLattice};
use crate::linalg::{fqmat, reduce_mod_p, smith_valuations, Mat};
use crate::qspace::{self, QuadSpace};
use crate::report::hash_value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub detail: Value,
    /// Wall time; not part of the hash.
    pub elapsed_ms: u128,
}

impl CriterionResult {
    /// The hashed part of the verdict.
    pub fn to_json(&self) -> Value {
        json!({"id": self.id, "name": self.name, "status": self.status.as_str(), "detail": self.detail})
    }

    pub fn line(&self) -> String {
        format!("criterion {} [{}] {}: {} ms", self.id, self.status.as_str(), self.name, self.elapsed_ms)
    }
}

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    pub budget: u128,
    pub seed: u64,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { budget: DEFAULT_BUDGET, seed: 0 }
    }
}

pub const NAMES: [&str; 9] = [
    "hilbert symbol closed formula vs brute force",
    "disc and hasse invariant under unimodular changes",
    "sharp extension: self-dual lattice and disc/hasse equivalence",
    "vertex lattice type sets, maximal embeddings, sharp bijection",
    "quotient forms of sharp vertex lattices are non-split",
    "clifford algebra, dagger, psi form, mu action, g0 square",
    "ggp point count vs fixed-point oracle",
    "stratification by frobenius closure and odd-side comparison",
    "determinism across runs and thread counts",
];

type Outcome = Result<(bool, Value)>;

fn finish(id: u8, start: Instant, out: Outcome) -> CriterionResult {
    let (status, detail) = match out {
        Ok((true, d)) => (Status::Pass, d),
        Ok((false, d)) => (Status::Fail, d),
        Err(e @ Error::BudgetExceeded { .. }) => (Status::Skipped, json!({"error": e.kind(), "message": e.to_string()})),
        Err(e) => (Status::Fail, json!({"error": e.kind(), "message": e.to_string()})),
    };
    CriterionResult { id, name: NAMES[id as usize - 1], status, detail, elapsed_ms: start.elapsed().as_millis() }
}

/// Run one criterion by number (1..=9).
pub fn run_criterion(id: u8, opts: &SelftestOptions) -> CriterionResult {
    let start = Instant::now();
    let out = match id {
        1 => criterion_1(),
        2 => criterion_2(opts.seed),
        3 => criterion_3(),
        4 => criterion_4(opts.budget),
        5 => criterion_5(opts.budget),
        6 => criterion_6(opts.seed),
        7 => criterion_7(opts.budget),
        8 => criterion_8(opts.budget),
        9 => criterion_9(opts),
        _ => Err(Error::invalid(format!("no criterion {id}"))),
    };
    finish(id, start, out)
}

/// Criteria 1–8 and the hash of their verdicts.
pub fn core_suite(opts: &SelftestOptions) -> (Vec<CriterionResult>, String) {
    let results: Vec<CriterionResult> = (1..=8).map(|i| run_criterion(i, opts)).collect();
    let h = hash_value(&Value::Array(results.iter().map(CriterionResult::to_json).collect()));
    (results, h)
}

#[derive(Clone, Debug)]
pub struct Summary {
    pub results: Vec<CriterionResult>,
    /// Hash over the verdicts of criteria 1–8.
    pub determinism_hash: String,
}

impl Summary {
    pub fn all_ok(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criteria": self.results.iter().map(CriterionResult::to_json).collect::<Vec<_>>(),
            "passed": self.results.iter().filter(|r| r.status == Status::Pass).count(),
            "failed": self.results.iter().filter(|r| r.status == Status::Fail).count(),
            "skipped": self.results.iter().filter(|r| r.status == Status::Skipped).count(),
            "suite_hash": self.determinism_hash,
        })
    }
}

/// The full suite: criteria 1–8, then criterion 9 which reruns them under fixed thread counts.
pub fn selftest(opts: &SelftestOptions) -> Summary {
    let (mut results, h) = core_suite(opts);
    let start = Instant::now();
    let out = determinism_against(opts, &h);
    results.push(finish(9, start, out));
    Summary { results, determinism_hash: h }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| Error::Internal(e.to_string()))
}

fn determinism_against(opts: &SelftestOptions, reference: &str) -> Outcome {
    let mut hashes = vec![reference.to_string()];
    for t in [1usize, 4] {
        hashes.push(pool(t)?.install(|| core_suite(opts).1));
    }
    let ok = hashes.iter().all(|h| h == reference);
    Ok((ok, json!({"reference": reference, "threads_1": hashes[1], "threads_4": hashes[2]})))
}

fn criterion_9(opts: &SelftestOptions) -> Outcome {
    let (_, h) = core_suite(opts);
    determinism_against(opts, &h)
}

fn reps(p: u64) -> [Rat; 4] {
    let u = least_nonresidue(p) as i64;
    let pi = p as i64;
    [rat(1), rat(u), rat(pi), rat(u * pi)]
}

fn criterion_1() -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for p in [3u64, 5, 7] {
        let mut mismatches = 0;
        let mut table = Vec::new();
        for a in reps(p) {
            for b in reps(p) {
                let f = qspace::hilbert_symbol(&a, &b, p)?;
                let bf = qspace::hilbert_symbol_bruteforce(&a, &b, p);
                if f != bf {
                    mismatches += 1;
                }
                table.push(f);
            }
        }
        ok &= mismatches == 0;
        rows.push(json!({"p": p, "pairs": 16, "mismatches": mismatches, "symbols": table}));
    }
    Ok((ok, json!({"primes": rows})))
}

fn random_gram(rng: &mut ChaCha8Rng, p: u64, n: usize) -> Mat {
    loop {
        let mut g = Mat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut x = rat(rng.gen_range(-4i64..=4));
                if i == j && rng.gen_bool(0.3) {
                    x *= rat(p as i64);
                }
                g[(i, j)] = x.clone();
                g[(j, i)] = x;
            }
        }
        if !g.det().is_zero() {
            return g;
        }
    }
}

/// A product of unit-triangular integer matrices and a diagonal of units.
fn random_unimodular(rng: &mut ChaCha8Rng, p: u64, n: usize) -> Mat {
    let mut lower = Mat::identity(n);
    let mut upper = Mat::identity(n);
    let mut d = Mat::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = rat(rng.gen_range(-3i64..=3));
            upper[(j, i)] = rat(rng.gen_range(-3i64..=3));
        }
        let mut u = rng.gen_range(1i64..=2 * p as i64);
        while u % p as i64 == 0 {
            u += 1;
        }
        d[(i, i)] = rat(u);
    }
    lower.mul(&upper).mul(&d)
}

fn criterion_2(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spaces = 0;
    let mut changes = 0;
    let mut failures = Vec::new();
    for p in [3u64, 5] {
        for n in 1..=6usize {
            for _ in 0..2 {
                let q = QuadSpace::new(p, random_gram(&mut rng, p, n))?;
                let (d0, e0) = (qspace::discriminant(&q)?, qspace::hasse_invariant(&q)?);
                spaces += 1;
                for _ in 0..20 {
                    let u = random_unimodular(&mut rng, p, n);
                    let r = q.rebase(&u)?;
                    changes += 1;
                    if qspace::discriminant(&r)? != d0 || qspace::hasse_invariant(&r)? != e0 {
                        failures.push(json!({"p": p, "gram": q.to_json()["gram"]}));
                    }
                }
            }
        }
    }
    Ok((failures.is_empty(), json!({"spaces": spaces, "changes": changes, "failures": failures})))
}

/// diag(p·a₁, a₂, …, aₙ) with aᵢ ∈ {1, u} picked by the bits of `mask`.
fn unit_diag(p: u64, n: usize, mask: u32) -> Result<QuadSpace> {
    let u = least_nonresidue(p) as i64;
    let d: Vec<i64> = (0..n)
        .map(|i| {
            let a = if mask & (1 << i) != 0 { u } else { 1 };
            if i == 0 {
                a * p as i64
            } else {
                a
            }
        })
        .collect();
    QuadSpace::diag_i64(p, &d)
}

/// Self-duality of the sharp lattice and Λ♯ ∩ V = Λ.
fn sharp_lattice_checks(q: &QuadSpace) -> Result<bool> {
    let p = q.p;
    let s = qspace::sharp_extend(q)?;
    let self_dual = smith_valuations(&s.sharp_gram_in_basis(), p)?.iter().all(|&v| v == 0);
    // coordinates of V ∩ Λ♯ in the sharp basis: integral with full rank mod p
    let m = s
        .basis_sharp
        .inverse()
        .ok_or_else(|| Error::Internal("sharp basis is singular".into()))?
        .mul(&s.base_embedding());
    let integral = m.entries().iter().all(|x| crate::linalg::is_p_integral(x, p));
    let saturated = integral && fqmat::rank(&field(p, 1), &reduce_mod_p(&m, p)?) == q.dim();
    Ok(self_dual && saturated)
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for p in [3u64, 5] {
        for n in 2..=5usize {
            for mask in 0..(1u32 << n) {
                let q = unit_diag(p, n, mask)?;
                checked += 1;
                if !sharp_lattice_checks(&q)? {
                    bad.push(q.to_json());
                }
            }
        }
    }
    let mut equivalence = Vec::new();
    let mut eq_ok = true;
    for p in [3u64, 5] {
        for n in [3usize, 5] {
            let mut agree = 0;
            let mut total = 0;
            for mask in 0..(1u32 << n) {
                let q = unit_diag(p, n, mask)?;
                let s = qspace::sharp_extend(&q)?;
                let sign = if ((n + 1) / 2) % 2 == 0 { 1 } else { -1 };
                let lhs = qspace::discriminant(&s.sharp)? == qspace::square_class(&rat(sign), p);
                let h = qspace::hilbert_symbol(&rat(p as i64), &rat(-1), p)?;
                let rhs = qspace::hasse_invariant(&q)? == if ((n - 1) / 2) % 2 == 0 { 1 } else { h };
                total += 1;
                if lhs == rhs {
                    agree += 1;
                }
            }
            eq_ok &= agree == total;
            equivalence.push(json!({"p": p, "n": n, "spaces": total, "agree": agree}));
        }
    }
    let ok = bad.is_empty() && eq_ok;
    Ok((ok, json!({"sharp_spaces": checked, "sharp_failures": bad, "disc_hasse_equivalence": equivalence})))
}

/// One almost self-dual base per (disc, ε) class at p = 3, n ∈ {3, 4}.
pub fn curated_bases() -> Vec<QuadSpace> {
    let p = 3;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in [3usize, 4] {
        for mask in 0..(1u32 << n) {
            let q = unit_diag(p, n, mask).expect("diagonal units are nondegenerate");
            let key = (n, qspace::discriminant(&q).unwrap(), qspace::hasse_invariant(&q).unwrap());
            if seen.insert(key) {
                out.push(q);
            }
        }
    }
    out
}

fn types_of(v: &[VertexLattice]) -> BTreeSet<usize> {
    v.iter().map(|x| x.t).collect()
}

fn embeds_in_max(v: &[VertexLattice], t_max: usize, cap: u128) -> Result<bool> {
    for l in v {
        if !lattice::enumerate_vertex_containing(&l.lattice, cap)?.iter().any(|x| x.t == t_max) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn criterion_4(cap: u128) -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for q in curated_bases() {
        let p = q.p;
        let n = q.dim();
        let s = qspace::sharp_extend(&q)?;
        let ff = s.fixed_forms();
        let (t_max, t_sharp) = qspace::t_max_pair(&q)?;
        let base = lattice::enumerate_vertex_near(&Lattice::standard(ff.l0.clone()), cap)?;
        let sharp = lattice::enumerate_vertex_near(&Lattice::standard(ff.l0_sharp.clone()), cap)?;
        let want_base: BTreeSet<usize> = (1..=t_max).step_by(2).collect();
        let want_sharp: BTreeSet<usize> = (2..=t_sharp).step_by(2).collect();
        let types_ok = types_of(&base) == want_base && types_of(&sharp) == want_sharp;
        let embed_ok = embeds_in_max(&base, t_max, cap)? && embeds_in_max(&sharp, t_sharp, cap)?;
        // sharp/unsharp between the base window and the sharp-window lattices containing p⁻¹x₀
        let px0: Vec<Rat> = ff.x0.iter().map(|x| x / rat(p as i64)).collect();
        let target: BTreeSet<Lattice> =
            sharp.iter().filter(|v| v.lattice.contains_vector(&px0)).map(|v| v.lattice.clone()).collect();
        let mut image = BTreeSet::new();
        let mut roundtrip = true;
        for v in &base {
            let up = lattice::sharp(&v.lattice, &ff)?;
            roundtrip &= up.vertex_type() == Some(v.t + 1) && lattice::unsharp(&up, &ff)? == v.lattice;
            image.insert(up);
        }
        for l in &target {
            let down = lattice::unsharp(l, &ff)?;
            roundtrip &= down.vertex_type().map(|t| t + 1) == l.vertex_type() && lattice::sharp(&down, &ff)? == *l;
        }
        let bijection = roundtrip && image.len() == base.len() && image == target;
        let row_ok = types_ok && embed_ok && bijection;
        ok &= row_ok;
        rows.push(json!({
            "p": p, "n": n,
            "disc": qspace::discriminant(&q)?, "hasse": qspace::hasse_invariant(&q)?,
            "t_max": t_max, "t_sharp_max": t_sharp,
            "base_types": lattice::type_histogram(&base), "sharp_types": lattice::type_histogram(&sharp),
            "types_ok": types_ok, "embeds_in_max": embed_ok,
            "sharp_image": image.len(), "sharp_window_with_x0": target.len(), "bijection": bijection,
        }));
    }
    Ok((ok, json!({"cases": rows})))
}

fn criterion_5(cap: u128) -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for q in curated_bases() {
        let ff = qspace::sharp_extend(&q)?.fixed_forms();
        let sharp = lattice::enumerate_vertex_near(&Lattice::standard(ff.l0_sharp.clone()), cap)?;
        let mut bad = 0;
        for v in &sharp {
            let qf = lattice::quotient_form(&v.lattice)?;
            let m = qf.space.m;
            if m % 2 != 0 || m != v.t || qf.space.witt_index() + 1 != m / 2 {
                bad += 1;
            }
        }
        ok &= bad == 0;
        rows.push(json!({"n": q.dim(), "disc": qspace::discriminant(&q)?, "hasse": qspace::hasse_invariant(&q)?,
                         "lattices": sharp.len(), "split_or_odd": bad}));
    }
    Ok((ok, json!({"cases": rows})))
}

fn random_elt(rng: &mut ChaCha8Rng, alg: &Arc<CliffordAlgebra>) -> CliffordElt {
    let c: Vec<Rat> = (0..alg.dim()).map(|_| rat(rng.gen_range(-2i64..=2))).collect();
    alg.from_coords(&c)
}

fn random_vector(rng: &mut ChaCha8Rng, alg: &Arc<CliffordAlgebra>) -> CliffordElt {
    loop {
        let v: Vec<Rat> = (0..alg.m).map(|_| rat(rng.gen_range(-3i64..=3))).collect();
        if !alg.space.q(&v).is_zero() {
            return alg.vector(&v);
        }
    }
}

fn criterion_6(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let mut assoc = Vec::new();
    for m in 4..=6usize {
        let alg = CliffordAlgebra::new(QuadSpace::new(3, random_gram(&mut rng, 3, m))?)?;
        let mut fails = 0;
        for _ in 0..100 {
            let (x, y, z) = (random_elt(&mut rng, &alg), random_elt(&mut rng, &alg), random_elt(&mut rng, &alg));
            let xy = cmul(&x, &y)?;
            let a = cmul(&xy, &z)? == cmul(&x, &cmul(&y, &z)?)?;
            let d = dagger(&xy) == cmul(&dagger(&y), &dagger(&x))? && dagger(&dagger(&x)) == x;
            if !(a && d) {
                fails += 1;
            }
        }
        ok &= fails == 0;
        assoc.push(json!({"dim": m, "triples": 100, "failures": fails}));
    }

    let mut psi_rows = Vec::new();
    for diag in [vec![3i64, 2, 1, 1], vec![3, 2, 1, 1, 2], vec![6, 1, 2, 2, 1, 1]] {
        let alg = CliffordAlgebra::new(QuadSpace::diag_i64(3, &diag)?)?;
        let psi = clifford::psi_form(&clifford::default_delta(&alg))?;
        let alternating = psi.transpose() == psi.scale(&rat(-1)) && (0..alg.dim()).all(|s| psi[(s, s)].is_zero());
        let nondegenerate = !psi.det().is_zero();
        let mut equivariant = true;
        for len in [2usize, 4] {
            let mut g = alg.one();
            for _ in 0..len {
                g = cmul(&g, &random_vector(&mut rng, &alg))?;
            }
            let v = clifford::is_gspin(&g)?;
            let sim = v.similitude.clone().ok_or_else(|| Error::Internal("no similitude".into()))?;
            let lm = clifford::left_matrix(&g);
            equivariant &= v.member && lm.transpose().mul(&psi).mul(&lm) == psi.scale(&sim);
        }
        ok &= alternating && nondegenerate && equivariant;
        psi_rows.push(json!({"dim": diag.len(), "alternating": alternating, "nondegenerate": nondegenerate, "equivariant": equivariant}));
    }

    let mut mu_rows = Vec::new();
    let mut g0_rows = Vec::new();
    for (p, diag) in [(3u64, vec![3i64, 1, 2]), (5, vec![10, 1, 2, 3])] {
        let s = qspace::sharp_extend(&QuadSpace::diag_i64(p, &diag)?)?;
        let dim = diag.len() + 1;
        let e = |i: usize| -> Vec<Rat> { (0..dim).map(|j| rat((i == j) as i64)).collect() };
        for t in [rat(1), rat(2), rat(p as i64)] {
            let mu = clifford::mu_sharp(&t, &s)?;
            let mut row_ok = clifford::is_gspin(&mu)?.member;
            let tinv = Rat::one() / &t;
            row_ok &= clifford::act_vector(&mu, &e(0))? == e(0).iter().map(|x| x * &tinv).collect::<Vec<_>>();
            row_ok &= clifford::act_vector(&mu, &e(1))? == e(1).iter().map(|x| x * &t).collect::<Vec<_>>();
            for i in 2..dim {
                row_ok &= clifford::act_vector(&mu, &e(i))? == e(i);
            }
            ok &= row_ok;
            mu_rows.push(json!({"p": p, "t": rat_to_string(&t), "ok": row_ok}));
        }
        let g0 = clifford::g_zero(&s)?;
        let sq = cmul(&g0, &g0)?.as_scalar();
        let row_ok = sq.as_ref().map_or(false, |c| vp(c, p) == -1);
        let units = &s.units;
        let stated_form = -(&units[0] * &units[1]) / rat(p as i64);
        ok &= row_ok;
        g0_rows.push(json!({
            "p": p, "base": s.base.to_json()["gram"],
            "g0_square": sq.as_ref().map(rat_to_string), "valuation": sq.as_ref().map(|c| vp(c, p)),
            "minus_a1_a2_over_p": rat_to_string(&stated_form), "scalar": sq.is_some(),
        }));
    }
    Ok((ok, json!({"associativity": assoc, "psi": psi_rows, "mu_sharp": mu_rows, "g0": g0_rows})))
}

/// (p, dim, coefficient list of P low degree first, split form) for the oracle suite.
pub fn curated_ggp() -> Vec<(u64, usize, FpPoly, bool)> {
    let f = |p: u64, c: &[i64]| FpPoly::from_i64(p, c);
    let q5 = f(5, &[1, 1, 1]);
    let r5 = f(5, &[1, 4, 1]);
    let lin5 = f(5, &[-2, 1]).mul(&f(5, &[-3, 1]));
    let q3 = f(3, &[1, 0, 1]);
    let pair3 = f(3, &[2, 1, 1]).mul(&f(3, &[2, 2, 1]));
    vec![
        (5, 2, q5.clone(), false),
        (5, 2, r5.clone(), false),
        (5, 4, q5.mul(&lin5), false),
        (5, 4, r5.mul(&lin5), false),
        (5, 6, q5.pow(3), false),
        (5, 6, q5.mul(&lin5.pow(2)), false),
        (3, 2, q3.clone(), false),
        (3, 4, f(3, &[1, 1, 1, 1, 1]), false),
        (3, 6, q3.mul(&pair3), false),
        (3, 6, q3.pow(3), false),
        (5, 4, q5.mul(&r5), true),
        (5, 4, q5.pow(2), true),
        (5, 4, lin5.pow(2), true),
        (3, 4, q3.pow(2), true),
        (3, 4, pair3, true),
    ]
}

fn criterion_7(cap: u128) -> Outcome {
    let mut ok = true;
    let mut suite = Vec::new();
    for (p, m, poly, split) in curated_ggp() {
        let form = ggp::standard_form(p, m, split)?;
        let gbar = ggp::realize(&poly, &form)?;
        let rec = ggp::cross_check_gbar(&form, &gbar, cap)?;
        let c = ggp::classify_factors(&poly)?;
        let criterion = ggp::nonempty_criterion(&c);
        let row_ok = if criterion.is_some() {
            rec.matches && !rec.assumption_violated
        } else {
            rec.counts.iter().all(|&x| x == 0) && rec.stable
        };
        ok &= row_ok;
        suite.push(json!({"p": p, "dim": m, "split": split, "P_g": poly.to_display(),
                          "Q_g": criterion.map(|(q, _)| q.to_display()), "oracle": rec.to_json(), "ok": row_ok}));
    }

    // the worked example through the p-adic pipeline
    let worked = FpPoly::from_i64(5, &[1, 1, 1]).mul(&FpPoly::from_i64(5, &[-2, 1])).mul(&FpPoly::from_i64(5, &[-3, 1]));
    let ns = ggp::standard_form(5, 4, false)?;
    let inp = ggp::construct_input(&ns, &ggp::realize(&worked, &ns)?, false)?;
    let red = ggp::reduce_g(&inp)?;
    let rec = ggp::cross_check(&inp, cap)?;
    let pipeline_ok = ggp::is_rsm(&inp)
        && red.omega.m == 4
        && !red.omega.is_split_at(1)
        && fqmat::det(&field(5, 1), &red.gbar) == 1
        && ggp::poly_from_charpoly(5, &red.gbar) == worked
        && rec.matches;
    let scaled = ggp::construct_input(&ns, &ggp::realize(&worked, &ns)?, true)?;
    let identity = ggp::GGPInput::new(inp.space.clone(), inp.x0.clone(), Mat::identity(inp.space.dim()))?;
    let not_applicable = |i: &ggp::GGPInput| matches!(ggp::reduce_g(i), Err(Error::CriterionNotApplicable(_)));
    let guards_ok = not_applicable(&scaled) && not_applicable(&identity);
    ok &= pipeline_ok && guards_ok;

    // the three formula examples and the local-factor identity
    let q = FpPoly::from_i64(5, &[1, 1, 1]);
    let examples = [(worked.clone(), (4, 4)), (q.mul(&FpPoly::from_i64(5, &[1, 1]).pow(2)), (2, 2)), (q.pow(3), (2, 4))];
    let mut formula_rows = Vec::new();
    for (pp, want) in examples {
        let c = ggp::classify_factors(&pp)?;
        let got = (ggp::point_count(&c)?, ggp::intersection_number(&c)?);
        let (_, mq) = ggp::nonempty_criterion(&c).ok_or_else(|| Error::Internal("criterion empty".into()))?;
        let identity_ok = got.1 * 2 == got.0 * (mq as u64 + 1);
        let row_ok = got == want && identity_ok;
        ok &= row_ok;
        formula_rows.push(json!({"P_g": pp.to_display(), "point_count": got.0, "intersection_number": got.1, "ok": row_ok}));
    }
    Ok((ok, json!({
        "oracle_suite": suite,
        "pipeline": {"rsm": ggp::is_rsm(&inp), "omega_dim": red.omega.m, "oracle": rec.to_json(), "ok": pipeline_ok},
        "not_rsm_guards": guards_ok,
        "formula_examples": formula_rows,
    })))
}

fn criterion_8(cap: u128) -> Outcome {
    let p = 3;
    let mut ok = true;
    let mut rows = Vec::new();
    for (m, ks) in [(2usize, vec![1u32, 2]), (4, vec![1, 2, 4])] {
        let space = ggp::standard_form(p, m, false)?;
        for k in ks {
            let st = dlstrata::stratify(&space, k, cap)?;
            let depth_ok = st.strata.keys().all(|&d| d <= 2);
            let row_ok = st.closure_ok && st.odd_labels_ok && st.line_rule_ok && depth_ok;
            let odev = if k % 2 == 0 { Some(dlstrata::odev_compare(&space, k, cap)?) } else { None };
            let odev_ok = odev.as_ref().map_or(true, |o| o.agrees());
            ok &= row_ok && odev_ok;
            rows.push(json!({"dim": m, "k": k, "stratification": st.to_json(), "odev": odev.map(|o| o.to_json()), "ok": row_ok && odev_ok}));
        }
    }
    Ok((ok, json!({"cases": rows})))
}
