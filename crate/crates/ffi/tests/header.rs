//! The generated header declares every export and is valid C.

use std::process::Command;

const HEADER: &str = include_str!(concat!(env!("OUT_DIR"), "/selfapproach.h"));

#[test]
fn header_declares_exports() {
    for f in [
        "sa_last_error_message",
        "sa_status_name",
        "sa_polygon_new",
        "sa_polygon_free",
        "sa_polygon_vertex_count",
        "sa_polygon_is_self_approaching",
        "sa_shortest_path",
        "sa_path_from_json",
        "sa_path_to_json",
        "sa_path_piece_count",
        "sa_path_length",
        "sa_path_eval",
        "sa_path_verify",
        "sa_path_free",
        "sa_string_free",
    ] {
        assert!(HEADER.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(HEADER.contains("typedef struct SaPolygon SaPolygon;"));
    assert!(HEADER.contains("SA_STATUS_NOT_REACHABLE = 5"));
}

/// Type-checks the example program when a C compiler is on PATH.
#[test]
fn example_compiles_against_header() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(format!("{dir}/include"))
        .arg(format!("{dir}/examples/smoke.c"))
        .output();
    match out {
        Ok(o) => assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr)),
        Err(e) => eprintln!("skipping: no C compiler ({e})"),
    }
}
