//! Browser bindings. Every export takes plain strings and numbers and
//! returns JSON text, so the page needs no generated TypeScript types.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use ramsey_rings::builder::{self, BuildBounds};
use ramsey_rings::harness;
use ramsey_rings::{GaussianInt, LipschitzQuat, Ring, SequenceSource, SetDescription};

const MAX_RADIUS: i32 = 40;
const MAX_BOUND: usize = 2_000;

fn text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Residue classes of Z[i] modulo `z` over the square of the given radius.
/// Cells are `[re, im, class]`, with `class` indexing `reps`.
#[wasm_bindgen]
pub fn coset_grid(z: &str, radius: i32) -> Result<String, String> {
    if !(1..=MAX_RADIUS).contains(&radius) {
        return Err(format!("radius must be between 1 and {MAX_RADIUS}"));
    }
    let z: GaussianInt = z.trim().parse().map_err(text)?;
    let reps = GaussianInt::coset_reps(&z).map_err(text)?;
    let radius = i64::from(radius);
    let mut cells = Vec::new();
    for im in (-radius..=radius).rev() {
        for re in -radius..=radius {
            let (_, r) = GaussianInt::new(re, im).div_rem_round(&z).map_err(text)?;
            let class = reps.binary_search(&r).expect("remainders are canonical representatives");
            cells.push(json!([re, im, class]));
        }
    }
    Ok(json!({ "z": z, "index": reps.len(), "reps": reps, "radius": radius, "cells": cells }).to_string())
}

fn sequence<R: Ring>(spec: &str, bound: usize) -> Result<SequenceSource<R>, String> {
    match spec.trim() {
        "ones" => Ok(SequenceSource::ones(bound)),
        "naturals" => Ok(SequenceSource::naturals(bound)),
        list => list
            .split(',')
            .map(|t| t.trim().parse::<R>().map_err(text))
            .collect::<Result<Vec<_>, _>>()
            .map(SequenceSource::Explicit),
    }
}

fn build_in<R: Ring>(set: &str, seq: &str, depth: usize, products: &str) -> Result<Value, String> {
    let a: SetDescription<R> = set.parse().map_err(text)?;
    let x = sequence::<R>(seq, MAX_BOUND)?;
    let bounds = BuildBounds::default();
    let (sys, report) = match products {
        "fp" => {
            let sys = builder::build_fs_fp(&x, &a, depth, &bounds).map_err(text)?;
            let report = builder::verify_fs_fp(&sys.terms, &a).map_err(text)?;
            (sys, report)
        }
        "ap" => {
            let sys = builder::build_fs_ap(&x, &a, depth, &bounds).map_err(text)?;
            let report = builder::verify_fs_ap(&sys.terms, &a).map_err(text)?;
            (sys, report)
        }
        other => return Err(format!("unknown product check {other:?}; use fp or ap")),
    };
    Ok(builder::certificate(&sys, &a, &report))
}

/// Builds and verifies a sum subsystem. `ring` is `gauss` or `quat`,
/// `seq` is `ones`, `naturals` or a comma-separated list, `products` is
/// `fp` or `ap`.
#[wasm_bindgen]
pub fn build_subsystem(ring: &str, set: &str, seq: &str, depth: usize, products: &str) -> Result<String, String> {
    let v = match ring {
        "gauss" => build_in::<GaussianInt>(set, seq, depth, products)?,
        "quat" => build_in::<LipschitzQuat>(set, seq, depth, products)?,
        other => return Err(format!("unknown ring {other:?}")),
    };
    Ok(v.to_string())
}

/// Exhaustive two-to-four coloring search on `1..n`.
#[wasm_bindgen]
pub fn schur(n: usize, colors: usize) -> Result<String, String> {
    let out = harness::schur_search_with_cap(n, colors, harness::DEFAULT_ENUM_CAP).map_err(text)?;
    let mut v = serde_json::to_value(out).map_err(text)?;
    v["n"] = json!(n);
    v["colors"] = json!(colors);
    Ok(v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: Result<String, String>) -> Value {
        serde_json::from_str(&s.unwrap()).unwrap()
    }

    #[test]
    fn grid_classes() {
        let v = parse(coset_grid("2+i", 3));
        assert_eq!(v["index"], 5);
        let cells = v["cells"].as_array().unwrap();
        assert_eq!(cells.len(), 49);
        // 2+i itself and 0 share class 0.
        let class_of = |re: i64, im: i64| cells.iter().find(|c| c[0] == re && c[1] == im).unwrap()[2].clone();
        assert_eq!(class_of(2, 1), class_of(0, 0));
        assert_ne!(class_of(1, 0), class_of(0, 0));
        assert!(coset_grid("0", 3).is_err());
        assert!(coset_grid("1+i", 0).is_err());
    }

    #[test]
    fn build_and_schur() {
        let v = parse(build_subsystem("gauss", "ideal(3)", "ones", 3, "fp"));
        assert_eq!(v["blocks"], json!([[1, 2, 3], [4, 5, 6], [7, 8, 9]]));
        let v = parse(build_subsystem("quat", "ideal(2)", "1,1,i,i", 2, "ap"));
        assert_eq!(v["verified"]["violations"], json!([]));
        assert!(build_subsystem("gauss", "ideal(", "ones", 2, "fp").is_err());
        assert!(build_subsystem("octonion", "all", "ones", 2, "fp").is_err());
        assert_eq!(parse(schur(5, 2))["result"], "forced");
        assert!(schur(30, 4).is_err());
    }
}
