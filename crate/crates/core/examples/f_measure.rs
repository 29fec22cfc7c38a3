//! Precision, recall and F-measure of a clustering.
//!
//! `cargo run --example f_measure`

use fpakm::evaluation::{build_contingency, f_measure};
use fpakm::Assignment;

fn main() -> fpakm::Result<()> {
    // two classes of four objects; cluster 1 mixes them
    let labels = [0, 0, 0, 0, 1, 1, 1, 1];
    let clusters = Assignment::new(3, vec![0, 0, 0, 1, 1, 2, 2, 2])?;
    let table = build_contingency(&labels, &clusters)?;

    println!("counts (class x cluster): {:?}", table.counts());
    for i in 0..table.num_classes() {
        for j in 0..table.num_clusters() {
            println!(
                "class {i} / cluster {j}: P {:.3} R {:.3} F {:.3}",
                table.precision(i, j),
                table.recall(i, j),
                table.f_score(i, j)
            );
        }
    }
    println!("F-measure {:.4}", f_measure(&table));

    let perfect = Assignment::new(2, labels.to_vec())?;
    println!("perfect clustering: {}", f_measure(&build_contingency(&labels, &perfect)?));
    Ok(())
}
