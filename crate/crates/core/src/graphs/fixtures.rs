//! Shipped example graphs.

use super::{graph_from_json, Orientation, StableGraph};

pub const THETA_JSON: &str = include_str!("../../fixtures/theta.json");
pub const FIGURE_EIGHT_JSON: &str = include_str!("../../fixtures/figure8.json");
pub const FIG1_JSON: &str = include_str!("../../fixtures/fig1.json");

pub fn load(text: &str) -> (StableGraph, Orientation) {
    let v: serde_json::Value = serde_json::from_str(text).expect("fixture is valid json");
    graph_from_json(&v).expect("fixture is a valid graph")
}

/// Two trivalent vertices joined by three edges, genus 0, three faces.
pub fn theta() -> StableGraph {
    load(THETA_JSON).0
}

/// One 4-valent vertex with interleaved loops, genus 1, one face.
pub fn figure_eight() -> StableGraph {
    load(FIGURE_EIGHT_JSON).0
}

/// A 4-valent vertex whose opposite flags form a loop, joined to two
/// trivalent vertices that share two edges; genus 1, two faces.
pub fn fig1() -> StableGraph {
    load(FIG1_JSON).0
}

pub fn by_name(name: &str) -> Option<(StableGraph, Orientation)> {
    match name {
        "theta" | "theta.json" => Some(load(THETA_JSON)),
        "figure8" | "figure8.json" => Some(load(FIGURE_EIGHT_JSON)),
        "fig1" | "fig1.json" => Some(load(FIG1_JSON)),
        _ => None,
    }
}
