use iet_cantor::iet::{Iet, Permutation};
use iet_cantor::rauzy::{rauzy_class, rauzy_step};
use iet_cantor::scalar::{QuadraticReal, Scalar};

fn main() {
    let q = |s: &str| s.parse::<QuadraticReal>().unwrap();
    let mut e = Iet::from_parts(
        vec![3, 2, 1],
        vec![q("-1+1/1*sqrt(2)"), q("1/5"), q("9/5-1/1*sqrt(2)")],
    )
    .unwrap();
    for n in 1..=8 {
        let step = rauzy_step(&e).unwrap();
        println!(
            "step {n}: {:?}, nu ~ {:.6}, now {}",
            step.step_type,
            step.nu.to_f64(),
            step.after.permutation()
        );
        e = step.after;
    }

    let class = rauzy_class(&Permutation::reversal(4)).unwrap();
    println!("Rauzy class of (4,3,2,1) has {} members", class.len());
    for p in &class.members {
        println!("  {p}");
    }
}
