#![no_main]

use eah_core::baselines::{lz78_decode, lz78_encode};
use eah_core::{Alphabet, BitString};
use libfuzzer_sys::fuzz_target;

// Layout: alphabet size - 1, phrase count (u16 LE), then the packed phrases.
fuzz_target!(|bytes: &[u8]| {
    if bytes.len() < 3 {
        return;
    }
    let m = bytes[0] as usize + 1;
    let phrases = u16::from_le_bytes([bytes[1], bytes[2]]) as u64;
    let body = bytes[3..].to_vec();
    let len = body.len() as u64 * 8;
    let alphabet = Alphabet::new((0..m).map(|i| i as u8).collect()).unwrap();
    let bits = BitString::from_bytes(body, len).unwrap();
    if let Ok(data) = lz78_decode(&bits, phrases, &alphabet) {
        if !data.is_empty() && Alphabet::from_data(&data).map(|a| a.len()) == Ok(m) {
            let enc = lz78_encode(&data).unwrap();
            assert_eq!(
                lz78_decode(&enc.bits, enc.phrases, &enc.alphabet).unwrap(),
                data
            );
        }
    }
});
