use iet_cantor::scalar::Rational;
use iet_cantor::spectral::{default_potential, fibonacci_word, finite_box_eigenvalues, DEFAULT_EIGEN_TOL};

fn main() {
    let v = default_potential(2, Rational::from(2)).unwrap();
    let w = fibonacci_word(9);
    let eig = finite_box_eigenvalues(&w, &v, w.len(), DEFAULT_EIGEN_TOL).unwrap();
    println!("{} Dirichlet eigenvalues of the Fibonacci box", eig.len());
    for chunk in eig.chunks(8) {
        println!(
            "  {}",
            chunk
                .iter()
                .map(|x| format!("{x:8.4}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
}
