use super::SimplicialComplex;
use crate::error::{Error, Result};

const TORUS7: [[usize; 3]; 14] = [
    [0, 1, 3], [0, 1, 5], [0, 2, 3], [0, 2, 6], [0, 4, 5], [0, 4, 6], [1, 2, 4],
    [1, 2, 6], [1, 3, 4], [1, 5, 6], [2, 3, 5], [2, 4, 5], [3, 4, 6], [3, 5, 6],
];

const KLEIN8: [[usize; 3]; 16] = [
    [0, 1, 2], [0, 1, 5], [0, 2, 3], [0, 3, 5], [1, 2, 4], [1, 3, 4], [1, 3, 6], [1, 5, 6],
    [2, 3, 7], [2, 4, 6], [2, 5, 6], [2, 5, 7], [3, 4, 5], [3, 6, 7], [4, 5, 7], [4, 6, 7],
];

const RP2_6: [[usize; 3]; 10] = [
    [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
    [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
];

fn from_table<const K: usize>(rows: &[[usize; K]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(rows.iter()).expect("library table is valid")
}

/// `∂Δ^{d+1}`, a triangulated `d`-sphere on `d + 2` vertices.
pub fn boundary_of_simplex(d: usize) -> SimplicialComplex {
    let n = d + 2;
    let facets: Vec<Vec<usize>> = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
    SimplicialComplex::from_facets(facets).expect("valid")
}

fn polygon(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets((0..n).map(|i| [i, (i + 1) % n])).expect("valid")
}

fn icosahedron() -> SimplicialComplex {
    let up = |i: usize| 1 + i % 5;
    let low = |i: usize| 6 + i % 5;
    let mut facets = Vec::new();
    for i in 0..5 {
        facets.push([0, up(i), up(i + 1)]);
        facets.push([up(i), up(i + 1), low(i)]);
        facets.push([up(i + 1), low(i), low(i + 1)]);
        facets.push([11, low(i), low(i + 1)]);
    }
    SimplicialComplex::from_facets(facets).expect("valid")
}

/// Square grid torus with `rows x cols` vertices, each square cut along its
/// main diagonal. Vertex `(i, j)` is `i * cols + j`. Needs both sides at least 3.
pub fn torus_grid(rows: usize, cols: usize) -> Result<SimplicialComplex> {
    if rows < 3 || cols < 3 {
        return Err(Error::Validation("grid torus needs at least 3 rows and 3 columns".into()));
    }
    let v = |i: usize, j: usize| (i % rows) * cols + j % cols;
    let mut facets = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            facets.push([v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
            facets.push([v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
        }
    }
    SimplicialComplex::from_facets(facets)
}

pub fn library_names() -> &'static [&'static str] {
    &["S1tri", "S1hex", "S2tet", "S2icos", "T2", "T2grid", "K2", "RP2", "S0", "S1", "S2", "S3", "S4"]
}

/// Built-in complexes by name. `Sd` is `∂Δ^{d+1}`; `T2grid` is the 4 x 3
/// grid torus whose rows are disjoint parallel circles.
pub fn library(name: &str) -> Result<SimplicialComplex> {
    Ok(match name {
        "S1tri" => polygon(3),
        "S1hex" => polygon(6),
        "S2tet" => boundary_of_simplex(2),
        "S2icos" => icosahedron(),
        "T2" => from_table(&TORUS7),
        "T2grid" => torus_grid(4, 3)?,
        "K2" => from_table(&KLEIN8),
        "RP2" => from_table(&RP2_6),
        _ => match name.strip_prefix('S').and_then(|d| d.parse::<usize>().ok()) {
            Some(d) if d <= 4 => boundary_of_simplex(d),
            _ => return Err(Error::Validation(format!("unknown library complex {name:?}"))),
        },
    })
}
