mod common;

use blockcheck_core::blocktheory::block_distribution;
use blockcheck_core::chartable::dixon_schneider;
use serde_json::{json, Value};

fn canonical(mut blocks: Vec<Value>) -> Vec<String> {
    for b in blocks.iter_mut() {
        let mut h: Vec<u64> = b["heights"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
        h.sort();
        b["heights"] = json!(h);
    }
    let mut out: Vec<String> = blocks.iter().map(|b| b.to_string()).collect();
    out.sort();
    out
}

#[test]
fn block_data_matches_oracle() {
    let oracle = common::oracle();
    for (name, group) in common::corpus() {
        let table = dixon_schneider(&group).unwrap();
        for p in [2u64, 3, 5, 11] {
            let blocks = block_distribution(&table, p).unwrap_or_else(|e| panic!("{name} p={p}: {e}"));
            let ours: Vec<Value> = blocks
                .iter()
                .map(|b| {
                    let krv = b.character_indices.iter().filter(|&&c| table.is_real_character(c)).count();
                    json!({
                        "k": b.len(),
                        "defect": b.defect,
                        "krv": krv,
                        "real": b.is_real,
                        "principal": b.is_principal,
                        "heights": b.heights.values().collect::<Vec<_>>(),
                    })
                })
                .collect();
            let expected = oracle[&name]["blocks"][p.to_string()].as_array().unwrap().clone();
            assert_eq!(canonical(ours), canonical(expected), "{name} p={p}");
            assert_eq!(blocks.iter().map(|b| b.len()).sum::<usize>(), table.len());
            assert!(blocks[0].is_principal);
            for b in &blocks {
                assert_eq!(b.defect_group.size(), p.pow(b.defect), "{name} p={p}");
                assert_eq!(b.heights.values().min(), Some(&0));
            }
        }
    }
}
