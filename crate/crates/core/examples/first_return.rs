use iet_cantor::iet::{Iet, Interval};
use iet_cantor::scalar::Rational;

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn main() {
    let e = Iet::from_parts(vec![4, 3, 2, 1], vec![r("1/5"), r("3/10"), r("1/7"), r("5/14")]).unwrap();
    let j = Interval::new(r("0"), r("1/2"));
    let sys = e.induce(&j).unwrap();

    println!("induced map on [0, 1/2): perm {}", sys.induced.permutation());
    for (k, iv) in sys.induced.intervals().iter().enumerate() {
        let word: String = sys.return_words[k].iter().map(|s| s.to_string()).collect();
        println!(
            "  I_{} = [{}, {})  r = {}  word {word}",
            k + 1,
            iv.lo,
            iv.hi,
            sys.return_times[k]
        );
    }
    println!("sum (r_k + 1)|I_k| = {} (domain 1)", sys.tower_measure());
}
