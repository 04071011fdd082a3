#![no_main]

use eah_core::eah_codec::context_code_table;
use eah_core::BitString;
use libfuzzer_sys::fuzz_target;

// Layout: order (1..=3), split point, training text, then a bit stream that
// is decoded against the table learned from the text.
fuzz_target!(|bytes: &[u8]| {
    if bytes.len() < 3 {
        return;
    }
    let order = bytes[0] as usize % 3 + 1;
    let split = (bytes[1] as usize).min(bytes.len() - 2);
    let (text, stream) = bytes[2..].split_at(split);
    let Ok(table) = context_code_table(text, order) else {
        return;
    };
    assert!(table.validate_prefix_condition());
    let count = stream.first().copied().unwrap_or(0) as usize;
    let bits = BitString::from_bytes(stream.to_vec(), stream.len() as u64 * 8).unwrap();
    if let Ok(decoded) = table.decode(&bits, count) {
        assert_eq!(decoded.len(), count);
        assert_eq!(table.extend(&decoded).unwrap(), bits);
    }
});
