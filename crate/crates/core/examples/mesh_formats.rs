//! Mesh input: the native line format and gmsh v2, read back into a
//! geometry with the benchmark fracture.
//!
//! cargo run --example mesh_formats

use std::path::Path;

use fracflow::benchmark;
use fracflow::geometry::Geometry;
use fracflow::io::{parse_ascii_mesh, parse_msh2, write_ascii_mesh};

const SQUARE_MSH: &str = "$MeshFormat
2.2 0 8
$EndMeshFormat
$PhysicalNames
2
1 1 \"bottom\"
1 2 \"side\"
$EndPhysicalNames
$Nodes
5
1 0 -500 0
2 1000 -500 0
3 1000 500 0
4 0 500 0
5 500 0 0
$EndNodes
$Elements
8
1 1 2 1 1 1 2
2 1 2 2 2 2 3
3 1 2 2 2 3 4
4 1 2 2 2 4 1
5 2 2 0 1 1 2 5
6 2 2 0 1 2 3 5
7 2 2 0 1 3 4 5
8 2 2 0 1 4 1 5
$EndElements
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mesh = benchmark::coarse_mesh();
    let text = write_ascii_mesh(&mesh);
    let back = parse_ascii_mesh(&text, Path::new("benchmark.mesh"))?;
    println!(
        "native format: {} lines, {} vertices, {} triangles, {} boundary edges",
        text.lines().count(),
        back.n_vertices(),
        back.n_triangles(),
        back.boundary.len()
    );
    let geom = Geometry::new(back, Some(benchmark::fracture()))?;
    println!("  cut elements: {}, tip element {:?}", geom.cut.cut_elements().count(), geom.cut.tip_element);

    let msh = parse_msh2(SQUARE_MSH, Path::new("square.msh"))?;
    println!("gmsh v2: {} triangles, tags {:?}, area {}", msh.n_triangles(), msh.tags(), msh.total_area());
    Ok(())
}
