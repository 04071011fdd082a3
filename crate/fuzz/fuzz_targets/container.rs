#![no_main]

use eah_core::eah_codec::{deserialize, encode};
use libfuzzer_sys::fuzz_target;

// Accepted containers are canonical: re-encoding the decoded bytes must
// reproduce the input exactly.
fuzz_target!(|bytes: &[u8]| {
    let Ok(parsed) = deserialize(bytes) else {
        return;
    };
    assert_eq!(parsed.to_bytes(), bytes);
    let data = parsed.decode().expect("a parsed container decodes");
    let again = encode(&data, parsed.header.order).expect("decoded data encodes");
    assert_eq!(again.to_bytes(), bytes);
});
