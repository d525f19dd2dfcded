//! Writing and reading the text plan format.
//!
//! cargo run --example plan_files

use ffht::{builtin_plan, parse_plan, serialize_plan, ValidationReport};

fn main() -> ffht::Result<()> {
    let plan = builtin_plan("n4_p7")?;
    let text = serialize_plan(&plan);
    print!("{text}");

    // Whitespace and comments are ignored on input.
    let edited = text.replace("row 0:", "# first output\nrow 0 :");
    assert_eq!(parse_plan(&edited)?, plan);

    // A wrong coefficient is caught by validation.
    let broken = parse_plan(&text.replace("row 3: 0=1", "row 3: 0=2"))?;
    match broken.validate() {
        ValidationReport::Equal => println!("unexpectedly valid"),
        ValidationReport::Mismatch {
            row,
            col,
            expected,
            composed,
        } => println!("\nedited plan: T[{row}][{col}] should be {expected}, plan gives {composed}"),
    }

    match parse_plan("ffhtplan v1\nfield p=7 zeta=j n=8\n") {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("wrong blocklength: {e}"),
    }
    Ok(())
}
