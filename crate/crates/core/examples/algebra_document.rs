//! Read an algebra document, analyse it and write it back out.
//!
//! Run with a path to a TOML document, or without arguments to use an
//! inline example.

use blowuplab::cli::analyze_algebra;
use blowuplab::model_io::{emit_report, parse_algebra, serialize_algebra, OutputFormat};

const INLINE: &str = r#"
schema_version = 1
name = "affine_plane"
dimension = 2
brackets = [{ i = 1, j = 2, k = 2, value = "1" }]
"#;

fn main() -> blowuplab::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => INLINE.to_string(),
    };
    let loaded = parse_algebra(&text)?;
    println!("{}", serialize_algebra(&loaded.algebra, &loaded.metadata));
    let report = analyze_algebra(&loaded.algebra, loaded.metadata, 1729, 50)?;
    print!("{}", emit_report(&report, OutputFormat::Human));

    if let Err(e) = parse_algebra("schema_version = 1\nname = \"x\"\ndimension = 2\nbrackets = [{ i = 1, j = 2, k = 2, value = 0.5 }]\n") {
        println!("rejected: {e}");
    }
    Ok(())
}
