//! Graph core: a weighted Laplacian, m-path Dirichlet Laplacians on a finite
//! path, and the transformed-path Laplacian of the integer line.

use graphtik::graph::{
    laplacian_matrix, m_path_dirichlet_laplacian, transformed_path_laplacian, DirichletSubset, Graph, IntegerLine,
    PathTransform, Truncation,
};
use graphtik::linalg::{row_sums, symmetric_eigenvalues};

fn print_matrix(name: &str, m: &graphtik::linalg::Matrix) {
    println!("{name}:");
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format!("{:8.4}", m[(i, j)])).collect();
        println!("  {}", row.join(" "));
    }
}

fn main() -> graphtik::Result<()> {
    let g = Graph::from_edges(vec![0.0, 1.0, 2.0, 3.0], [(0, 1, 1.0), (1, 2, 0.5), (2, 3, 2.0), (0, 3, 0.25)], None)?;
    let l = laplacian_matrix(&g);
    print_matrix("weighted cycle Laplacian", &l);
    println!("row sums {:?}", row_sums(&l));
    println!("eigenvalues {:?}\n", symmetric_eigenvalues(&l));

    // interior {2, 3, 4} of the path 0..7
    let path = Graph::path((0..7).map(f64::from).collect());
    let domain = DirichletSubset::new(path, vec![2, 3, 4])?;
    for m in 1..=3 {
        print_matrix(&format!("Dirichlet {m}-path Laplacian"), &m_path_dirichlet_laplacian(&domain, m)?);
    }

    let phi = PathTransform::squared_symbol();
    let t = transformed_path_laplacian(&IntegerLine::new(5), &phi, Truncation::Analytic)?;
    print_matrix("\ntransformed-path Laplacian, n = 5", &t);
    for big_m in [10, 100, 1000] {
        let tm = transformed_path_laplacian(&IntegerLine::new(5), &phi, Truncation::Terms(big_m))?;
        println!("M = {big_m:>4}: max gap {:.3e}", graphtik::linalg::max_abs_diff(&tm, &t));
    }
    Ok(())
}
