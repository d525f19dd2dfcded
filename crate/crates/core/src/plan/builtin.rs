//! The six hand-derived plans, stored as plan files under `plans/`.
//!
//! Each file was checked entrywise against the dense transform matrix. A few
//! details differ from the usual hand-written layer listings:
//!
//! * `n16_*` layer 1, slot 2 is the difference `s10 - s2`, like every other
//!   even slot.
//! * `n16_p7` layer 3 scales slots 4 and 5 by 4 in both outputs.
//! * `n16_p31` layer 3 rotates the slot pairs `(1, 8)` and `(0, 9)` with scale
//!   7 and scales slots 4 and 5 by 8, a square root of 2 in GF(31).

use crate::error::{Error, Result};
use crate::plan::{parse_plan, FastPlan};

pub const BUILTIN_NAMES: [&str; 6] = ["n4_p7", "n6_p7", "n8_p7", "n12_p7", "n16_p7", "n16_p31"];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "n4_p7" => include_str!("../../plans/n4_p7.ffhtplan"),
        "n6_p7" => include_str!("../../plans/n6_p7.ffhtplan"),
        "n8_p7" => include_str!("../../plans/n8_p7.ffhtplan"),
        "n12_p7" => include_str!("../../plans/n12_p7.ffhtplan"),
        "n16_p7" => include_str!("../../plans/n16_p7.ffhtplan"),
        "n16_p31" => include_str!("../../plans/n16_p31.ffhtplan"),
        _ => return None,
    })
}

pub fn builtin_plan(name: &str) -> Result<FastPlan> {
    let text = source(name).ok_or_else(|| Error::UnknownPlan(name.to_string()))?;
    Ok(parse_plan(text).expect("builtin plan files are well formed"))
}
