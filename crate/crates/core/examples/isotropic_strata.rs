//! Maximal isotropic subspaces of a non-split quaternary form over F_9 and F_81, split by closure depth.

use gspin_strata::dlstrata;
use gspin_strata::ggp::standard_form;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = standard_form(3, 4, false)?;
    let cap = gspin_strata::error::DEFAULT_BUDGET;
    for k in [2u32, 4] {
        let pts = dlstrata::max_isotropic_with_component(&space, k, cap)?;
        let sharp = pts.iter().filter(|(l, _)| dlstrata::in_s_sharp(l, &space).unwrap_or(false)).count();
        println!("k = {k}: {} maximal isotropic planes, {sharp} in S♯", pts.len());
        let st = dlstrata::stratify(&space, k, cap)?;
        for (d, (count, labels)) in &st.strata {
            println!("  closure depth {d}: {count} points, type labels {labels:?}");
        }
        println!("  odd-side labels {:?}, checks {} {} {}", st.odd_labels, st.closure_ok, st.odd_labels_ok, st.line_rule_ok);
        let o = dlstrata::odev_compare(&space, k, cap)?;
        println!("  odd-side comparison {}", o.to_json());
    }
    Ok(())
}
