//! V ↦ V♯ = V ⊕ ⟨x₀⟩ for an almost self-dual space, and the forms L₀ ⊂ L₀♯.

use gspin_strata::qspace::{self, QuadSpace};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = QuadSpace::diag_i64(3, &[3, 1, 1])?;
    let s = qspace::sharp_extend(&q)?;
    println!("Gram of V♯: {:?}", s.sharp.gram.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>());
    println!("Gram in the self-dual basis: {:?}", s.sharp_gram_in_basis().to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>());
    println!("disc V♯ = {}, hasse V♯ = {}", qspace::discriminant(&s.sharp)?, qspace::hasse_invariant(&s.sharp)?);

    let ff = s.fixed_forms();
    println!("L₀  = diag{:?}", (0..ff.l0.dim()).map(|i| ff.l0.gram[(i, i)].to_string()).collect::<Vec<_>>());
    println!("L₀♯ = diag{:?}", (0..ff.l0_sharp.dim()).map(|i| ff.l0_sharp.gram[(i, i)].to_string()).collect::<Vec<_>>());
    let (t, ts) = qspace::t_max_pair(&q)?;
    println!("maximal vertex types: {t} in L₀, {ts} in L₀♯");
    Ok(())
}
