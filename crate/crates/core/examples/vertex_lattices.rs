//! Vertex lattices near the standard lattices of L₀ and L₀♯, their quotient forms and the map Λ ↦ Λ♯.

use gspin_strata::lattice::{self, Lattice};
use gspin_strata::qspace::{self, QuadSpace};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = QuadSpace::diag_i64(3, &[3, 1, 1])?;
    let ff = qspace::sharp_extend(&q)?.fixed_forms();
    let cap = gspin_strata::error::DEFAULT_BUDGET;

    let base = lattice::enumerate_vertex_near(&Lattice::standard(ff.l0.clone()), cap)?;
    let sharp = lattice::enumerate_vertex_near(&Lattice::standard(ff.l0_sharp.clone()), cap)?;
    println!("L₀ window types (type, count): {:?}", lattice::type_histogram(&base));
    println!("L₀♯ window types (type, count): {:?}", lattice::type_histogram(&sharp));

    for v in sharp.iter().filter(|v| v.t == 4).take(2) {
        let qf = lattice::quotient_form(&v.lattice)?;
        println!("type {} quotient: dim {}, Witt index {}, split {}", v.t, qf.space.m, qf.space.witt_index(), qf.space.is_split_at(1));
    }

    let v = &base[0];
    let up = lattice::sharp(&v.lattice, &ff)?;
    let down = lattice::unsharp(&up, &ff)?;
    println!("type {} ↦ type {:?} ↦ back to the same lattice: {}", v.t, up.vertex_type(), down == v.lattice);

    let top = lattice::climb_to_max_type(&v.lattice, cap)?;
    println!("a type-{} lattice containing it: {}", top.t, top.lattice.to_json()["basis"]);
    Ok(())
}
