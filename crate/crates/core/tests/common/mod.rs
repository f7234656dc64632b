#![allow(dead_code)]

use std::path::PathBuf;

use blockcheck_core::permgroup::{schreier_sims, PermGroup, Permutation};
use serde_json::Value;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every `.grp` file of the bundled corpus, sorted by name.
pub fn corpus() -> Vec<(String, PermGroup)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    paths.into_iter().map(|p| load_path(&p)).collect()
}

pub fn load(name: &str) -> PermGroup {
    load_path(&corpus_dir().join(format!("{name}.grp"))).1
}

fn load_path(path: &std::path::Path) -> (String, PermGroup) {
    let text = std::fs::read_to_string(path).expect("group file");
    let v: Value = serde_json::from_str(&text).expect("group json");
    let name = v["name"].as_str().expect("name").to_string();
    let gens: Vec<Permutation> = v["generators"]
        .as_array()
        .expect("generators")
        .iter()
        .map(|g| {
            let images: Vec<u32> =
                g.as_array().expect("images").iter().map(|x| x.as_u64().expect("image") as u32).collect();
            Permutation::from_images(images).expect("permutation")
        })
        .collect();
    let degree = v["degree"].as_u64().expect("degree") as usize;
    let group = if gens.is_empty() {
        PermGroup::trivial(degree)
    } else {
        schreier_sims(&gens).expect("group")
    };
    assert_eq!(group.order().to_string(), v["declared_order"].as_str().expect("declared order"));
    (name, group)
}

pub fn oracle() -> Value {
    let text = std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/gap_oracle.json"),
    )
    .expect("oracle fixture");
    serde_json::from_str(&text).expect("oracle json")
}
