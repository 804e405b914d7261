use proptest::prelude::*;

use hierhuff::{compress, decompress, decompress_with, inspect, CompressOptions, Dictionary};

const WORDS: &[&str] = &[
    "the", "and", "tree", "heap", "graph", "vertex", "algorithm", "pointer", "allocate",
    "recursion", "x1_y2",
];

fn dictionary() -> Dictionary {
    let mut patterns: Vec<Vec<u8>> = WORDS.iter().map(|w| w.as_bytes().to_vec()).collect();
    // push some entries into the long-form range
    patterns.extend((0..300).map(|i| format!("w{i:05}").into_bytes()));
    Dictionary::build(&patterns).dictionary
}

fn text() -> impl Strategy<Value = Vec<u8>> {
    let piece = prop_oneof![
        3 => proptest::sample::select(WORDS).prop_map(|w| w.as_bytes().to_vec()),
        1 => (0..300u32).prop_map(|i| format!("w{i:05}").into_bytes()),
        2 => proptest::collection::vec(any::<u8>(), 0..6),
        2 => Just(b" ".to_vec()),
        1 => Just(vec![0x1b]),
    ];
    proptest::collection::vec(piece, 0..80).prop_map(|v| v.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn containers_roundtrip(text in text(), embed: bool, huffman_only: bool) {
        let dict = dictionary();
        let opts = CompressOptions { embed, huffman_only };
        let packed = compress(&text, &dict, opts);

        let info = inspect(&packed).unwrap();
        prop_assert_eq!(info.total_len, packed.len());
        prop_assert_eq!(info.dict_digest, dict.digest());

        prop_assert_eq!(decompress_with(&packed, Some(&dict)).unwrap(), text.clone());
        if embed || huffman_only {
            prop_assert_eq!(decompress(&packed, |_| None).unwrap(), text);
        }
    }
}
