//! Intersection numbers from characteristic polynomials: classification, criterion, count and multiplicity.

use gspin_strata::ggp;
use gspin_strata::polyparse::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        (5, "(T^2+T+1)(T-2)(T-3)"),
        (5, "(T^2+T+1)(T+1)^2"),
        (5, "(T^2+T+1)^3"),
        (3, "(T+1)^4"),
        (3, "T^4+T^3+T^2+T+1"),
    ];
    for (p, text) in cases {
        let poly = parse_poly(text, p)?;
        let r = ggp::report_for_poly(&poly)?;
        let j = r.to_json();
        println!(
            "p = {p}, P = {text}: Q_g = {}, point count {}, intersection number {}",
            j["Q_g"], j["point_count"], j["intersection_number"]
        );
    }
    Ok(())
}
