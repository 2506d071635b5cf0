//! Bodies of the fuzz targets, shared with the corpus replay test. Each
//! accepts arbitrary bytes, must not panic on any of them, and checks the
//! round trips that hold whenever parsing succeeds.

use crate::files::to_json;
use crate::{format_gauge_spec, parse_gauge_spec, parse_region_file, parse_scenario_file, read_points_csv};

pub fn gauge_spec(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_gauge_spec(text) {
        let again = parse_gauge_spec(&format_gauge_spec(&spec)).expect("formatted spec parses");
        assert_eq!(again, spec);
    }
}

pub fn scenario_file(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(file) = parse_scenario_file(text) {
        let _ = file.to_model().map(|m| m.partition());
    }
}

pub fn region_file(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(file) = parse_region_file(text) {
        let json = to_json(&file);
        assert_eq!(parse_region_file(&json).expect("written file parses"), file);
        for atom in &file.atoms {
            let dim = atom.constraints.first().map(|c| c.normal.len()).unwrap_or(2);
            let _ = atom.to_region(dim);
        }
    }
}

/// The first byte picks the options: bit 0 reads an `atom` column, bits 1-3
/// give a bin count.
pub fn points_csv(data: &[u8]) {
    let Some((&opts, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let atom = (opts & 1 == 1).then_some("atom");
    let bins = match (opts >> 1) & 7 {
        0 => None,
        b => Some(b as usize),
    };
    if let Ok(table) = read_points_csv(text, atom, bins.filter(|_| atom.is_some())) {
        let _ = table.to_model();
    }
}
