//! Generates `include/selfapproach.h` from the exported functions.

use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").expect("set by cargo"));
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let config = cbindgen::Config::from_file(crate_dir.join("cbindgen.toml")).expect("cbindgen.toml parses");
    let header =
        cbindgen::Builder::new().with_crate(&crate_dir).with_config(config).generate().expect("header generation");
    header.write_to_file(crate_dir.join("include").join("selfapproach.h"));
    let out = PathBuf::from(std::env::var("OUT_DIR").expect("set by cargo"));
    header.write_to_file(out.join("selfapproach.h"));
}
