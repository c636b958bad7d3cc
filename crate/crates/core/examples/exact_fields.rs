use iet_cantor::scalar::{QuadraticReal, Rational, Scalar};

fn main() {
    let a: Rational = "3/7".parse().unwrap();
    let b = Rational::new(-2, 5);
    println!("{a} + {b} = {}", a.clone() + &b);
    println!("floor({b}) = {}", b.floor());

    let phi: QuadraticReal = "1/2+1/2*sqrt(5)".parse().unwrap();
    let sq = phi.clone() * &phi;
    // phi^2 = phi + 1, exactly
    println!("phi^2 = {sq} ~ {:.12}", sq.to_f64());
    assert_eq!(sq, phi.clone() + QuadraticReal::one());
    println!("1/phi = {}", QuadraticReal::one() / &phi);
}
