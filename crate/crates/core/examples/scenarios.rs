//! Runs the bundled scenario files and prints a text report.
use powell_calc::scenario::{bundled, emit_report, run_scenario_text, Format, BUNDLED_NAMES};

fn main() {
    for name in BUNDLED_NAMES {
        println!("== {name}");
        let reports = run_scenario_text(bundled(name).expect("bundled"), 4).expect("bundled files parse");
        print!("{}", String::from_utf8_lossy(&emit_report(&reports, Format::Text)));
    }
}
