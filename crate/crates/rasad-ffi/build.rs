fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR");
    let out_path = std::path::Path::new(&crate_dir)
        .join("include")
        .join("rasad.h");

    let config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("RASAD_H".to_string()),
        cpp_compat: true,
        documentation: true,
        header: Some("/* C ABI for the rasad Arabic corpus-analysis library. */".to_string()),
        enumeration: cbindgen::EnumConfig {
            prefix_with_name: true,
            ..Default::default()
        },
        ..Default::default()
    };

    cbindgen::Builder::new()
        .with_config(config)
        .with_crate(&crate_dir)
        .generate()
        .expect("cbindgen header generation")
        .write_to_file(out_path);

    println!("cargo:rerun-if-changed=src/lib.rs");
}
