//! Hilbert symbols over the square classes and the invariants of a few spaces.

use gspin_strata::arith::{least_nonresidue, rat};
use gspin_strata::qspace::{self, QuadSpace};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in [3u64, 5, 7] {
        let u = least_nonresidue(p) as i64;
        let reps = [1, u, p as i64, u * p as i64];
        println!("p = {p}, classes {reps:?}");
        for a in reps {
            let row: Vec<i32> = reps.iter().map(|&b| qspace::hilbert_symbol(&rat(a), &rat(b), p)).collect::<Result<_, _>>()?;
            println!("  ({a:>2}, ·) = {row:?}");
        }
    }

    let q = QuadSpace::diag_i64(3, &[3, 2])?;
    println!("diag(3, 2) at p = 3: disc {} hasse {}", qspace::discriminant(&q)?, qspace::hasse_invariant(&q)?);

    let q = QuadSpace::new(5, gspin_strata::linalg::Mat::from_i64(&[&[2, 1, 0], &[1, 3, 0], &[0, 0, 1]]))?;
    let asd = qspace::almost_selfdual_form(&q)?;
    println!("a non-diagonal form at p = 5 has almost self-dual diagonal {:?}", asd.diag.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(())
}
