#![no_main]

use eah_core::{BitReader, BitString};
use libfuzzer_sys::fuzz_target;

// The first byte drives a sequence of reads over the remaining bytes.
fuzz_target!(|bytes: &[u8]| {
    let Some((&script, body)) = bytes.split_first() else {
        return;
    };
    let len = (body.len() as u64 * 8).saturating_sub(script as u64 % 8);
    let Ok(bits) = BitString::from_bytes(body.to_vec(), len) else {
        return;
    };
    let mut reader = BitReader::new(body, len);
    let mut rebuilt = BitString::new();
    let mut width = script as u32 % 65;
    while !reader.is_at_end() {
        let take = (width as u64).min(reader.remaining());
        if width % 3 == 0 {
            rebuilt.append(&reader.read_bitstring(take).unwrap());
        } else {
            rebuilt.push_bits(reader.read_bits(take as u32).unwrap(), take as u32);
        }
        width = (width * 7 + 5) % 65;
    }
    assert!(reader.read_bit().is_err());
    assert_eq!(rebuilt, bits);
    assert_eq!(bits.to_string().parse::<BitString>().unwrap(), bits);
});
