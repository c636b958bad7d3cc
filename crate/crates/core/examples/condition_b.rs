use iet_cantor::iet::Iet;
use iet_cantor::scalar::{QuadraticReal, Scalar};
use iet_cantor::symbolic::{aperiodicity_check, build_cylinders, condition_b_scores};

fn main() {
    let alpha: QuadraticReal = "-1/2+1/2*sqrt(5)".parse().unwrap();
    let e = Iet::from_parts(vec![2, 1], vec![QuadraticReal::one() - &alpha, alpha]).unwrap();
    let tree = build_cylinders(&e, 400).unwrap();
    println!("complexity strictly increasing: {}", aperiodicity_check(&tree));

    let rep = condition_b_scores(&tree, None);
    for row in rep
        .rows
        .iter()
        .filter(|r| [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377].contains(&r.n))
    {
        println!(
            "n = {:>3}  eta = {:<24} n*eta ~ {:.6}",
            row.n,
            row.eta.to_string(),
            row.score.to_f64()
        );
    }
    println!("min n*eta = {} ~ {:.6}", rep.min_score, rep.min_score.to_f64());
}
