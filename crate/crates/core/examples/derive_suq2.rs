//! Regenerates `src/qalgebra/suq2_frozen.rs`:
//!
//! ```text
//! cargo run --example derive_suq2 > crates/core/src/qalgebra/suq2_frozen.rs
//! ```

use qdeform::qalgebra::derive::{derive_suq2_rules, render_frozen};

fn main() {
    let rules = derive_suq2_rules().expect("invariance equations are solvable");
    print!("{}", render_frozen(&rules));
}
