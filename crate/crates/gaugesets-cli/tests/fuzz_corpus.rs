use std::path::Path;

use gaugesets_cli::fuzz_support;
use proptest::prelude::*;

type Target = fn(&[u8]);

const TARGETS: [(&str, Target); 4] = [
    ("gauge_spec", fuzz_support::gauge_spec),
    ("scenario_file", fuzz_support::scenario_file),
    ("region_file", fuzz_support::region_file),
    ("points_csv", fuzz_support::points_csv),
];

#[test]
fn checked_in_corpus_replays_cleanly() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    for (name, target) in TARGETS {
        let mut seen = 0;
        for entry in std::fs::read_dir(corpus.join(name)).unwrap() {
            let data = std::fs::read(entry.unwrap().path()).unwrap();
            target(&data);
            seen += 1;
        }
        assert!(seen > 0, "{name}: empty corpus");
    }
}

proptest! {
    #[test]
    fn arbitrary_bytes_never_panic(data in prop::collection::vec(any::<u8>(), 0..256)) {
        for (_, target) in TARGETS {
            target(&data);
        }
    }

    #[test]
    fn mutated_seeds_never_panic(idx in 0usize..6, pos in any::<prop::sample::Index>(), byte in any::<u8>()) {
        let names = ["square", "two_squares", "bid_ask", "rectangle", "cube", "cones3"];
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(format!("{}.json", names[idx]));
        let mut data = std::fs::read(path).unwrap();
        let i = pos.index(data.len());
        data[i] = byte;
        fuzz_support::scenario_file(&data);
    }
}
