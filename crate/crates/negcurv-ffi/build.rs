//! Regenerate the committed C header from the crate's public surface.
//!
//! Header generation is best-effort: the committed `include/negcurv.h` is
//! the source of truth for consumers, and a failed regeneration (e.g. a
//! cbindgen parse limitation) degrades to a build warning rather than
//! breaking the library build.

use std::path::Path;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("cargo sets CARGO_MANIFEST_DIR");
    let header = Path::new(&crate_dir).join("include").join("negcurv.h");
    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(&header);
        }
        Err(err) => {
            println!("cargo:warning=skipping C header regeneration: {err}");
        }
    }
}
