//! Load a delimited file with an explicit schema and inspect it.
//!
//! `cargo run --example load_dataset`

use std::path::Path;

use fpakm::dataset::{load_delimited, parse_delimited, Delimiter, Schema};

fn main() -> fpakm::Result<()> {
    let wine = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/wine.csv");
    // the class is the first column of the wine file
    let ds = load_delimited(&wine, &Schema::csv_with_label(0))?;
    println!("{}: n={} m={} K={}", ds.name(), ds.len(), ds.dim(), ds.num_classes());
    println!("classes: {:?}", ds.class_names());
    for d in 0..3 {
        println!(
            "attribute {d}: [{}, {}]",
            ds.lower_bounds()[d],
            ds.upper_bounds()[d]
        );
    }

    // whitespace-separated text with a header and an ID column to skip
    let text = "id x y class\n1 0.5 1.0 a\n2 0.7 1.2 a\n3 4.0 4.1 b\n";
    let schema = Schema {
        delimiter: Delimiter::Whitespace,
        label_column: Some(3),
        ignore_columns: vec![0],
        has_header: true,
        num_classes: None,
    };
    let small = parse_delimited("inline", Path::new("inline.txt"), text, &schema)?;
    println!("inline: first point {:?}, classes {:?}", small.point(0), small.classes());

    // errors carry the row and column of the offending cell
    let bad = parse_delimited("bad", Path::new("bad.csv"), "1,2,a\n3,x,b\n", &Schema::csv_with_label(2));
    println!("malformed input: {}", bad.unwrap_err());
    Ok(())
}
