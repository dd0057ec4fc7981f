use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").expect("manifest dir"));
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let config = cbindgen::Config::from_file(crate_dir.join("cbindgen.toml"))
        .expect("cbindgen.toml parses");
    let bindings = cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("header generation");

    let out = PathBuf::from(env::var("OUT_DIR").expect("OUT_DIR")).join("hypercop.h");
    bindings.write_to_file(&out);
    // Keep the committed copy in sync when the source tree is writable;
    // write_to_file leaves identical files untouched.
    bindings.write_to_file(crate_dir.join("include").join("hypercop.h"));
}
