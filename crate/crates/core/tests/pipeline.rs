//! Whole-pipeline invariants on the scenario corpus.

mod common;

use common::*;
use phn_core::field::format_rational;
use phn_core::indices::Mode;
use phn_core::report::{compute, OutputFormat, RunConfig};
use phn_core::scenario::{FormInput, Scenario};

const CORPUS: [&str; 5] = ["example1.toml", "generic_2x4.toml", "hankel.toml", "symmetric.toml", "non_isolated.toml"];

fn config(trials: usize) -> RunConfig {
    let mut cfg = RunConfig::new("unused");
    cfg.trials = trials;
    cfg.output_format = OutputFormat::Machine;
    cfg
}

#[test]
fn the_linear_form_has_vanishing_obstruction_everywhere() {
    for name in CORPUS {
        let mut s = load(name);
        let l = s.linear_form.clone().expect("corpus scenarios fix l");
        s.form = Some(FormInput::OneForm(l.iter().map(format_rational).collect()));
        let out = compute(&s, &config(1));
        let report = out.report.unwrap_or_else(|| panic!("{name}: {:?}", out.error));
        assert_eq!(out.status.code, 0, "{name}: {:?}", report.error);
        assert_eq!(report.euler_obstruction_form, Some(0), "{name}");
        assert_eq!(report.phn_omega, report.phn_dl, "{name}");
    }
}

fn without_grid(mut s: Scenario, seed: u64) -> Scenario {
    s.perturbation = None;
    s.seed = seed;
    s
}

#[test]
fn seeded_smoothings_of_the_hankel_surface_agree() {
    let base = load("hankel.toml");
    let values: Vec<_> = [1, 2]
        .into_iter()
        .map(|seed| {
            let s = without_grid(base.clone(), seed);
            let report = compute(&s, &config(1)).report.unwrap();
            (report.phn_omega, report.phn_dl, report.euler_obstruction_function)
        })
        .collect();
    assert_eq!(values[0], values[1]);
    assert_eq!(values[0], (Some(12), Some(4), Some(8)));
}

#[test]
fn machine_reports_are_reproducible() {
    let mut s = load("example1.toml");
    s.linear_form = None;
    for _ in 0..2 {
        let a = compute(&s, &config(2)).render(OutputFormat::Machine);
        let b = compute(&s, &config(2)).render(OutputFormat::Machine);
        assert_eq!(a, b);
        s.seed += 1;
    }
}

#[test]
fn both_modes_agree_on_the_surface_presentations() {
    for name in ["hankel.toml", "symmetric.toml"] {
        let mut s = load(name);
        let mut values = Vec::new();
        for mode in [Mode::Saturation, Mode::LocalCrosscheck] {
            s.mode = mode;
            let report = compute(&s, &config(1)).report.unwrap();
            values.push((report.phn_omega, report.phn_dl));
        }
        assert_eq!(values[0], values[1], "{name}");
    }
}

#[test]
fn non_isolated_singularity_is_reported() {
    let out = compute(&load("non_isolated.toml"), &config(1));
    assert_eq!(out.status.code, 2, "{:?}", out.error);
}
