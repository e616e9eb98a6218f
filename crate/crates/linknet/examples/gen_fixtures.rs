//! Regenerates the JSON fixtures under fixtures/ from the canonical
//! in-code presentations. Run from the workspace root:
//!
//!     cargo run -p linknet --example gen_fixtures

use linknet::doc::{document_from_presentation, document_from_window, ColorDoc, NetDocument};
use linknet::fixtures::*;
use linknet::linalg::{FieldSpec, PrimeField};
use std::fs;
use std::path::Path;

fn write(path: &str, doc: &NetDocument) {
    let text = format!("{}\n", doc.to_json());
    fs::write(Path::new(path), text).expect("fixture written");
    println!("wrote {path}");
}

fn main() {
    let root = "fixtures";
    fs::create_dir_all(root).unwrap();

    write(
        &format!("{root}/seg2.json"),
        &document_from_presentation(&seg2(), FieldSpec::Rationals),
    );
    write(
        &format!("{root}/tri3.json"),
        &document_from_presentation(&tri3(), FieldSpec::Rationals),
    );
    for p in [2u64, 3, 5] {
        let f = PrimeField::new(p).unwrap();
        write(
            &format!("{root}/seg2_f{p}.json"),
            &document_from_presentation(&presentation_mod_p(&seg2(), f), FieldSpec::Prime { p }),
        );
    }
    for p in [2u64, 3] {
        let f = PrimeField::new(p).unwrap();
        write(
            &format!("{root}/tri3_f{p}.json"),
            &document_from_presentation(&presentation_mod_p(&tri3(), f), FieldSpec::Prime { p }),
        );
    }
    write(
        &format!("{root}/exact1.json"),
        &document_from_presentation(&exact_simple(2, &[0, 0, 0]), FieldSpec::Rationals),
    );

    for (name, edges) in figure_color_data() {
        let pres = figure_fixture(name);
        let mut doc = document_from_presentation(&pres, FieldSpec::Rationals);
        let mut colors: Vec<ColorDoc> = edges
            .into_iter()
            .map(|(from, arrow_type, color)| ColorDoc {
                from,
                arrow_type,
                color: color.to_string(),
            })
            .collect();
        colors.sort_by(|x, y| (&x.from, x.arrow_type).cmp(&(&y.from, y.arrow_type)));
        doc.colors = Some(colors);
        write(&format!("{root}/{name}.json"), &doc);
    }

    // A deliberately invalid net: nonzero composite around a minimal circuit.
    let bad = circuit_violation(1);
    write(
        &format!("{root}/circuit_violation.json"),
        &document_from_window(&bad, FieldSpec::Rationals),
    );

    fs::write(format!("{root}/malformed.json"), "{ this is not json\n").unwrap();
    println!("wrote {root}/malformed.json");
}
