//! Exact capacities from invariant polytopes, re-checked independently.

use diffcap::jsr::{capacity, CapacityMode, Certificate};
use diffcap::transfer::build_sigma;
use diffcap::PatternSet;

fn main() -> diffcap::Result<()> {
    for list in ["0++", "0+-", "+++-", "+++", "++-"] {
        let d = PatternSet::from_list(list)?;
        let t = std::time::Instant::now();
        let r = capacity(&d, CapacityMode::Certify)?;
        match &r.certificate {
            Some(c) => println!(
                "{:<8} cap = {:.12}  product {:?}, {} vertices, {} steps, vertex pairs {:?}  ({:.2?})",
                r.patterns,
                c.capacity(),
                c.product,
                c.vertex_count(),
                c.steps,
                c.vertex_history,
                t.elapsed()
            ),
            None => println!("{:<8} cap in [{:.10}, {:.10}]", r.patterns, r.cap_lower, r.cap_upper),
        }
    }

    // certificates survive a JSON round trip and re-verify from scratch
    let d = PatternSet::from_list("0++")?;
    let cert = capacity(&d, CapacityMode::Certify)?.certificate.expect("certified");
    let back = Certificate::from_json(&cert.to_json())?;
    println!("re-verified after JSON round trip: {}", back.verify(&build_sigma(&d)?)?);
    Ok(())
}
