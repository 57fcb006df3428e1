use cclab_core::cache::{CacheError, CachedTable, Provenance, TableCache, SCHEMA_VERSION};
use cclab_core::catalog::table_str;
use cclab_core::GroupSpec;

#[test]
fn sp43_roundtrip_keeps_hash_and_values() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let spec: GroupSpec = "Sp(4,3)".parse().unwrap();
    let t = table_str("Sp(4,3)").unwrap();
    cache.store(&t).unwrap();
    let back = cache.load(&spec).unwrap();
    let (a, b) = (CachedTable::from_table(&t), CachedTable::from_table(&back));
    assert_eq!(a.hash, b.hash);
    assert_eq!(a, b);
    assert_eq!(back.characters(), t.characters());
}

#[test]
fn flipped_byte_and_schema_bump_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let spec: GroupSpec = "GL(2,3)".parse().unwrap();
    let path = cache.store(&table_str("GL(2,3)").unwrap()).unwrap();
    let mut bytes = std::fs::read(&path).unwrap();
    // flip one digit inside the character data
    let pos = bytes.windows(7).position(|w| w == b"\"terms\"").unwrap() + 20;
    let at = (pos..bytes.len()).find(|&i| bytes[i].is_ascii_digit()).unwrap();
    bytes[at] = if bytes[at] == b'9' { b'8' } else { bytes[at] + 1 };
    std::fs::write(&path, &bytes).unwrap();
    assert!(cache.load(&spec).is_err());
    assert!(matches!(cache.load_or_build(&spec).unwrap().1, Provenance::Rebuilt(_)));

    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: CachedTable = serde_json::from_str(&text).unwrap();
    v.schema = SCHEMA_VERSION + 1;
    v.hash = v.content_hash();
    assert!(matches!(v.into_table(), Err(CacheError::Schema { .. })));
}
