use std::fs;
use std::path::PathBuf;

use flatfloer::geom::Surface;
use flatfloer::scene::{parse_scene, Scene};

fn corpus(name: &str) -> Scene {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_scene(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn every_corpus_scene_validates() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut names: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert!(names.len() >= 6);
    for n in names {
        corpus(&n);
    }
}

#[test]
fn obstruction_scene_has_one_contractible_circle() {
    let s = corpus("figure5_obstruction.scene");
    assert_eq!(s.surface, Surface::Cylinder);
    let contractible: Vec<_> = s.curves.iter().filter(|c| c.has_contractible_loop()).map(|c| c.name.as_str()).collect();
    assert_eq!(contractible, vec!["L1"]);
}

#[test]
fn hash_depends_on_bytes() {
    let a = corpus("figure6_triangle.scene");
    let b = parse_scene(&format!("{}\n# trailing\n", fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/figure6_triangle.scene")).unwrap())).unwrap();
    assert_ne!(a.hash, b.hash);
    assert_eq!(a.curves, b.curves);
}
