use iet_cantor::iet::Permutation;
use iet_cantor::rauzy::periodic_iet;

fn main() {
    for images in [vec![2, 1], vec![3, 1, 2], vec![4, 3, 2, 1], vec![2, 5, 4, 1, 3]] {
        let p = Permutation::new(images).unwrap();
        let spec = periodic_iet(&p).unwrap();
        println!("{p}: l_k = {:?}, period {}", spec.cycle_lengths, spec.period);
    }
}
