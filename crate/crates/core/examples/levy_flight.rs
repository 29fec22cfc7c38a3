//! Lévy-flight step sizes from Mantegna's algorithm.
//!
//! `cargo run --release --example levy_flight`

use fpakm::levy::{levy_sample, mantegna_sigma, LevyParams};

fn main() {
    for lambda in [1.2, 1.5, 1.8] {
        println!("lambda {lambda}: sigma_u = {:.6}", mantegna_sigma(lambda));
    }

    let params = LevyParams::new(1.5, 1.0).unwrap();
    let mut rng = fpakm::rng_from_seed(7);
    let mut steps = levy_sample(&params, 200_000, &mut rng);
    steps.iter_mut().for_each(|s| *s = s.abs());
    steps.sort_by(f64::total_cmp);
    for q in [0.5, 0.9, 0.99, 0.999] {
        let i = ((steps.len() as f64) * q) as usize;
        println!("|step| quantile {q}: {:.3}", steps[i]);
    }
    // heavy tail: P(|X| > s) falls roughly as s^-1.5
    for s in [10.0, 100.0] {
        let tail = steps.iter().filter(|&&x| x > s).count() as f64 / steps.len() as f64;
        println!("P(|X| > {s}) = {tail:.5}");
    }

    let scaled = levy_sample(&LevyParams::default(), 5, &mut rng);
    println!("five steps at the default scale 0.01: {scaled:.5?}");
}
