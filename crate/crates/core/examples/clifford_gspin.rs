//! Clifford products, GSpin membership, the ψ form and the element g₀.

use gspin_strata::arith::{rat, vp};
use gspin_strata::clifford::{self, cmul, CliffordAlgebra};
use gspin_strata::qspace::{self, QuadSpace};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alg = CliffordAlgebra::new(QuadSpace::diag_i64(3, &[3, 2, 1, 1])?)?;
    let v = alg.vector(&[rat(1), rat(1), rat(0), rat(0)]);
    let w = alg.vector(&[rat(0), rat(1), rat(1), rat(2)]);
    let g = cmul(&v, &w)?;
    println!("g = {}", g.to_json());
    let verdict = clifford::is_gspin(&g)?;
    println!("GSpin: {}", verdict.to_json());
    println!("image in SO(V): {:?}", clifford::so_image(&g)?.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>());

    let psi = clifford::psi_form(&clifford::default_delta(&alg))?;
    let lm = clifford::left_matrix(&g);
    let sim = verdict.similitude.expect("member");
    println!("ψ(gx, gy) = sim(g)·ψ(x, y): {}", lm.transpose().mul(&psi).mul(&lm) == psi.scale(&sim));

    let s = qspace::sharp_extend(&QuadSpace::diag_i64(3, &[3, 1, 2])?)?;
    for t in [rat(1), rat(2), rat(3)] {
        let mu = clifford::mu_sharp(&t, &s)?;
        let e0 = clifford::act_vector(&mu, &[rat(1), rat(0), rat(0), rat(0)])?;
        println!("μ♯({t}) sends x₀♯ to {:?}", e0.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    let g0 = clifford::g_zero(&s)?;
    let sq = cmul(&g0, &g0)?.as_scalar().expect("scalar square");
    println!("g₀² = {sq} with valuation {}", vp(&sq, 3));
    Ok(())
}
