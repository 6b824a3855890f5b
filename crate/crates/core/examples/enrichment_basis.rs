//! Enriched node sets of the benchmark grid and the discontinuity carried by
//! the enrichment: across Σ the Heaviside function jumps by 2 and the first
//! tip function by 2√r, while ahead of the tip everything is continuous.
//!
//! cargo run --example enrichment_basis

use fracflow::benchmark;
use fracflow::enrichment::{eval_tip_functions, ElementBasis, EnrichedSpace, Field, TraceBasis};
use fracflow::geometry::{Point2, Side};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = EnrichedSpace::new(benchmark::geometry(0)?, benchmark::RADIUS);
    println!(
        "{} nodes: {} Heaviside-enriched, {} tip-enriched",
        space.geom.bulk.n_vertices(),
        space.sets.heaviside.len(),
        space.sets.tip.len()
    );
    println!(
        "dofs: displacement {}, pressure {}, fracture {}",
        space.n_displacement_dofs(),
        space.n_pressure_dofs(),
        space.n_fracture_dofs()
    );

    let frame = space.frame.expect("benchmark has a tip");
    println!("\ntip functions on either face, r = distance to the tip:");
    for x in [100.0, 300.0, 450.0] {
        let p = Point2::new(x, 0.0);
        let (plus, _) = eval_tip_functions(&frame, p, true);
        let (minus, _) = eval_tip_functions(&frame, p, false);
        let r: f64 = 500.0 - x;
        println!("  x = {x:5}: F1+ − F1− = {:.6}  (2√r = {:.6})", plus[0] - minus[0], 2.0 * r.sqrt());
    }

    // the closed-form trace jump against the difference of one-sided values
    let (mut plus, mut minus) = (ElementBasis::default(), ElementBasis::default());
    let mut trace = TraceBasis::default();
    for x in [125.0, 420.0] {
        let p = Point2::new(x, 0.0);
        let e = space.geom.bulk.locate(p).expect("point in the domain");
        space.eval_basis(Field::Pressure, e, p, Side::Plus, &mut plus);
        space.eval_basis(Field::Pressure, e, p, Side::Minus, &mut minus);
        space.trace_basis(Field::Pressure, e, p, &mut trace);
        println!("
element {e} at x = {x}: dof, v+ − v−, closed-form jump");
        for (k, &d) in plus.dofs.iter().enumerate() {
            let closed: f64 = trace.jump.iter().filter(|(j, _)| *j == d).map(|(_, v)| v).sum();
            println!("  {d:4}  {:+.6}  {closed:+.6}", plus.values[k] - minus.values[k]);
        }
    }
    Ok(())
}
