use zerolink::Complex64;
use zerolink::sums::*;
use zerolink::arith::sieve_lambda;
use zerolink::characters::character_from_label;
use zerolink::zerodata::load_zeros;

fn main() {
    let zeros = load_zeros("data/zeta_zeros_100k.txt", "zeta").unwrap();
    let chi = character_from_label("5.2").unwrap();
    let table = sieve_lambda(1_000_000).unwrap();
    let rot = Complex64::new(0.0, -std::f64::consts::FRAC_PI_4).exp() * (2.0*std::f64::consts::PI).sqrt();
    let t = 0.0;
    let mut weighted = [Complex64::new(0.0,0.0); 3];
    for a in 1..=4u64 {
        let alpha = Alpha::Rational(RationalPhase::new(a,5).unwrap());
        let mut ds = Vec::new();
        for (i, &x) in [100.0, 1000.0, 10000.0].iter().enumerate() {
            let p = SumParams::new(x, t, alpha, Complex64::new(0.5, t)).unwrap();
            let psi = psi_sum(&table, &p).unwrap().value;
            let z = weighted_zero_sum(&zeros, &p).unwrap().value;
            let d = psi + rot * z;
            weighted[i] += chi.eval(a as i64).conj() * d;
            ds.push(d);
        }
        println!("a={a}: D(100)={:.4} D(1e3)={:.4} D(1e4)={:.4}", ds[0], ds[1], ds[2]);
    }
    println!("chi-weighted D: {:.4} {:.4} {:.4}", weighted[0], weighted[1], weighted[2]);
    // and t = 3, 6 for the twisted magnitudes
    for &t in &[3.0f64, 6.0] {
        let s = Complex64::new(0.5, t);
        for &x in &[100.0, 1000.0] {
            let psi = psi_twisted_sum(&table, x, s, &chi).unwrap().value;
            let z = twisted_zero_sum(&zeros, x, t, &chi).unwrap().total.value;
            println!("t={t} x={x}: |D|={:.4}", (psi + rot*z).norm());
        }
    }
}
