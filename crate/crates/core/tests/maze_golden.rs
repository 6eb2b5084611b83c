//! Maze pictures painted by the bundled script, checked against goldens.
//!
//! Run with `UPDATE_GOLDEN=1` to rewrite the golden files; they are only
//! written after the painted regions have been confirmed by the oracle.

use std::collections::BTreeMap;
use std::path::PathBuf;

use slcs::image::{image_to_model, maze, paint, read_ppm, write_ppm, Adjacency, ColorPredicate};
use slcs::oracle::oracle_satisfies;
use slcs::script::{parse_script, run_script, ScriptConfig, Statement};
use slcs::RasterImage;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Replays the script with the brute-force semantics.
fn oracle_paint(img: &RasterImage, src: &str, adjacency: Adjacency) -> RasterImage {
    let script = parse_script(src).unwrap();
    let mut preds = BTreeMap::new();
    for s in &script.statements {
        if let Statement::Let { formula, .. } | Statement::Paint { formula, .. } = s {
            for a in formula.atoms() {
                if a.starts_with("color(") {
                    preds.insert(a.to_string(), a.parse::<ColorPredicate>().unwrap());
                }
            }
        }
    }
    let mut model = image_to_model(img, adjacency, &preds).unwrap();
    let mut out = img.clone();
    for s in &script.statements {
        match s {
            Statement::Let { name, formula } => {
                let set = oracle_satisfies(&model, formula).unwrap();
                model.set_letter(name.clone(), set).unwrap();
            }
            Statement::Paint { color, formula } => {
                out = paint(&out, &oracle_satisfies(&model, formula).unwrap(), *color).unwrap();
            }
            Statement::Save { .. } => {}
        }
    }
    out
}

fn count(img: &RasterImage, c: [u8; 3]) -> usize {
    img.pixels().iter().filter(|&&p| p == c).count()
}

const RED: [u8; 3] = [255, 0, 0];
const ORANGE: [u8; 3] = [255, 165, 0];
const YELLOW: [u8; 3] = [255, 255, 0];

fn golden_case(name: &str, width: usize, height: usize, seed: u64, adjacency: Adjacency) -> RasterImage {
    let input = maze::generate(width, height, seed);
    let script = parse_script(maze::SCRIPT).unwrap();
    let config = ScriptConfig {
        adjacency,
        ..Default::default()
    };
    let run = run_script(&input, &script, config, |_, _| Ok(())).unwrap();

    let expected = oracle_paint(&input, maze::SCRIPT, adjacency);
    assert_eq!(run.image, expected, "checker and oracle disagree on {name}");

    let bytes = write_ppm(&run.image);
    let path = fixture(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &bytes).unwrap();
        std::fs::write(fixture(&name.replace(".out.", ".in.")), write_ppm(&input)).unwrap();
    }
    let golden = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(golden == bytes, "{name} differs from golden output");
    let golden_input = std::fs::read(fixture(&name.replace(".out.", ".in."))).unwrap();
    assert_eq!(read_ppm(&golden_input).unwrap(), input);
    run.image
}

#[test]
fn maze_four_adjacent() {
    let out = golden_case("maze41x31.out.ppm", 41, 31, 7, Adjacency::Four);
    assert!(count(&out, RED) > 0 && count(&out, ORANGE) > 0);
    assert_eq!(count(&out, YELLOW), 0);
}

#[test]
fn maze_exit_region_without_start() {
    let out = golden_case("maze41x31-s21.out.ppm", 41, 31, 21, Adjacency::Four);
    assert!(count(&out, YELLOW) > 0);
    assert_eq!(count(&out, RED) + count(&out, ORANGE), 0);
}

#[test]
fn maze_eight_adjacent() {
    let out = golden_case("maze25x25-8.out.ppm", 25, 25, 3, Adjacency::Eight);
    assert!(count(&out, RED) > 0 && count(&out, ORANGE) > 0);
}

#[test]
fn rerun_is_byte_identical() {
    let input = maze::generate(61, 41, 9);
    let script = parse_script(maze::SCRIPT).unwrap();
    let a = run_script(&input, &script, ScriptConfig::default(), |_, _| Ok(())).unwrap();
    let b = run_script(&input, &script, ScriptConfig::default(), |_, _| Ok(())).unwrap();
    assert_eq!(write_ppm(&a.image), write_ppm(&b.image));
}
