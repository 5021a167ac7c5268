//! Parsing an experiment description with shorthand fields, then printing it
//! with every default filled in.

use steklov::experiment::{expand_shorthand, parse_config, print_config};

const TEXT: &str = r#"{
  "mode": "emp",
  "domain": { "kind": "annulus", "d": 3, "r_i": 0.5, "r_o": 1.0 },
  "field": { "outer": ["0.3 + Y_{4,2}"], "inner": [{ "l": 2, "m": 0, "coefficient": -1.0 }] },
  "eigen": [ { "n": 2 }, { "n": 1, "k": 2 } ]
}"#;

fn main() -> steklov::Result<()> {
    for term in ["2cos(6θ)", "sin(3theta) - 0.5", "Y_{8,1}"] {
        let dim = if term.starts_with('Y') { 3 } else { 2 };
        match expand_shorthand(term, dim) {
            Ok(c) => println!("{term}: {c:?}"),
            Err(e) => println!("{term}: {e}"),
        }
    }
    let cfg = parse_config(TEXT)?;
    println!("{}", print_config(&cfg));
    match parse_config(&TEXT.replace("0.5", "1.5")) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
