use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let header = crate_dir.join("include").join("qnb.h");
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(&header);
        }
        // a parse failure must fail the build; only skip when cbindgen
        // itself is unavailable in the environment
        Err(cbindgen::Error::ParseSyntaxError { .. }) => {
            panic!("cbindgen failed to parse the crate");
        }
        Err(e) => panic!("cbindgen: {e}"),
    }
}
