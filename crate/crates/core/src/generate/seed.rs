//! Per-work-unit seed derivation.

use sha2::{Digest, Sha256};

/// Derives an independent RNG seed for one work unit.
///
/// Every field is length-prefixed before hashing so that no two distinct
/// tuples share a byte encoding; the seed is the first 8 bytes of the
/// SHA-256 digest, little-endian.
pub fn derive_seed(
    master_seed: u64,
    set_id: &str,
    template_id: &str,
    iteration: u32,
    method_id: &str,
) -> u64 {
    let mut h = Sha256::new();
    h.update(master_seed.to_le_bytes());
    for field in [set_id, template_id, method_id] {
        h.update((field.len() as u64).to_le_bytes());
        h.update(field.as_bytes());
    }
    h.update(u64::from(iteration).to_le_bytes());
    let digest = h.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}
