//! Inputs shared by the benchmarks.

use digitop::construct::{fixture, scc_group, Ambient};
use digitop::dtg::{dtg_product, Dtg};
use digitop::NpLevel;

/// `C_a × C_b` under `NP_1`.
pub fn torus(a: usize, b: usize) -> Dtg {
    let x = scc_group(a, Ambient::Abstract).expect("a >= 3");
    let y = scc_group(b, Ambient::Abstract).expect("b >= 3");
    dtg_product(&x, &y, NpLevel::Np1).expect("products of curves verify")
}

pub fn named(name: &str) -> Dtg {
    fixture(name).expect("known fixture").dtg
}
