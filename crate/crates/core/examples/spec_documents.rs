//! Ensembles described as JSON documents, rendered the way the `acwd` binary does.
//!
//!     cargo run --example spec_documents

use acwd::cli::{cmd_acwd, cmd_oracle, parse_spec, OutputFormat};

const SPEC: &str = r#"{
  "version": 1,
  "ensemble": {
    "kind": "concat",
    "children": [
      {"kind": "row_shuffle", "child": {"kind": "stack", "children": [
        {"kind": "single_matrix", "rows": ["1101"]},
        {"kind": "col_shuffle", "child": {"kind": "single_matrix", "rows": ["1100"]}}
      ]}},
      {"kind": "single_matrix", "rows": ["101", "011"]}
    ]
  }
}"#;

fn main() -> acwd::Result<()> {
    let doc = parse_spec(SPEC)?;
    println!("{}", doc.ensemble.build()?);
    print!("{}", cmd_acwd(&doc, OutputFormat::Csv, false)?);
    println!();
    print!("{}", cmd_oracle(&doc, OutputFormat::Markdown, false)?.lines().take(3).collect::<Vec<_>>().join("\n"));
    println!();

    let json = cmd_acwd(&parse_spec(r#"{"version":1,"ensemble":{"kind":"bipartite","j":1,"k":2,"n":4}}"#)?, OutputFormat::Json, false)?;
    println!("\n{json}");

    match parse_spec(r#"{"version":1,"ensemble":{"kind":"bipartite","j":1,"k":2,"n":4,"m":5}}"#).and_then(|d| d.ensemble.build()) {
        Err(e) => println!("rejected: {e} (exit code {})", e.exit_code()),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
