//! The fixed-point oracle against the closed formula, from a p-adic isometry down to ḡ on Ω♯(g).

use gspin_strata::arith::fpoly::FpPoly;
use gspin_strata::ggp;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = 5;
    let poly = FpPoly::from_i64(p, &[1, 1, 1]).mul(&FpPoly::from_i64(p, &[-2, 1])).mul(&FpPoly::from_i64(p, &[-3, 1]));
    let form = ggp::standard_form(p, 4, false)?;
    let gbar = ggp::realize(&poly, &form)?;
    let input = ggp::construct_input(&form, &gbar, false)?;
    println!("L_x0(g) has rank {}, rsm: {}", ggp::l_x0_lattice(&input).rank, ggp::is_rsm(&input));

    let red = ggp::reduce_g(&input)?;
    println!("Ω♯(g): dim {}, split {}, char poly {}", red.omega.m, red.omega.is_split_at(1), ggp::poly_from_charpoly(p, &red.gbar).to_display());

    let rec = ggp::cross_check(&input, gspin_strata::error::DEFAULT_BUDGET)?;
    println!("oracle {}", rec.to_json());

    let scaled = ggp::construct_input(&form, &gbar, true)?;
    match ggp::reduce_g(&scaled) {
        Err(e) => println!("p·x0 instead of x0: {e}"),
        Ok(_) => println!("p·x0 instead of x0 unexpectedly reduced"),
    }
    Ok(())
}
