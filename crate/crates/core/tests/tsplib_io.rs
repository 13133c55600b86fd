use std::fs::File;
use std::path::PathBuf;

use optima_core::tsp::{parse_tsplib, tsplib_distance, WeightKind};
use optima_core::Error;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/tsplib")
        .join(name)
}

fn coord_instance(kind: &str, pts: &[(f64, f64)]) -> String {
    let mut s = format!(
        "NAME : t\nTYPE : TSP\nDIMENSION : {}\nEDGE_WEIGHT_TYPE : {kind}\nNODE_COORD_SECTION\n",
        pts.len()
    );
    for (i, (x, y)) in pts.iter().enumerate() {
        s.push_str(&format!("{} {x} {y}\n", i + 1));
    }
    s.push_str("EOF\n");
    s
}

/// Expected values were computed separately in Python straight from the
/// TSPLIB95 formulas (nint, ATT ceiling rule, GEO with PI = 3.141592).
fn check_goldens(kind: &str, pts: &[(f64, f64)], expected: &[(usize, usize, i64)]) {
    let inst = parse_tsplib(coord_instance(kind, pts).as_bytes()).unwrap();
    for &(i, j, d) in expected {
        assert_eq!(tsplib_distance(&inst, i, j).unwrap(), d, "{kind} ({i},{j})");
        assert_eq!(tsplib_distance(&inst, j, i).unwrap(), d, "{kind} ({j},{i})");
    }
}

#[test]
fn euc_2d_goldens() {
    let pts = [
        (0.0, 0.0),
        (3.0, 4.0),
        (0.0, 2.5),
        (10.3, 7.1),
        (1234.5, 987.6),
        (-20.0, 5.5),
    ];
    check_goldens(
        "EUC_2D",
        &pts,
        &[
            (0, 1, 5),
            (0, 2, 3),
            (0, 3, 13),
            (0, 4, 1581),
            (1, 2, 3),
            (1, 3, 8),
            (2, 5, 20),
            (3, 5, 30),
            (4, 5, 1593),
        ],
    );
}

#[test]
fn att_goldens() {
    let pts = [
        (6734.0, 1453.0),
        (2233.0, 10.0),
        (5530.0, 1424.0),
        (401.0, 841.0),
        (3082.0, 1644.0),
        (7608.0, 4458.0),
    ];
    check_goldens(
        "ATT",
        &pts,
        &[
            (0, 1, 1495),
            (0, 2, 381),
            (0, 3, 2012),
            (1, 4, 583),
            (2, 4, 778),
            (3, 5, 2550),
            (4, 5, 1686),
        ],
    );
}

#[test]
fn geo_goldens() {
    let pts = [
        (16.47, 96.10),
        (16.47, 94.44),
        (20.09, 92.54),
        (22.39, 93.37),
        (25.23, 97.24),
        (-33.55, 151.12),
    ];
    check_goldens(
        "GEO",
        &pts,
        &[
            (0, 1, 153),
            (0, 2, 510),
            (1, 2, 422),
            (2, 3, 289),
            (3, 4, 491),
            (0, 5, 8115),
            (4, 5, 8712),
        ],
    );
}

#[test]
fn explicit_layouts_agree() {
    // One symmetric 4-node matrix written in every supported layout.
    let full = [[0, 1, 2, 3], [1, 0, 4, 5], [2, 4, 0, 6], [3, 5, 6, 0]];
    let layouts = [
        ("FULL_MATRIX", "0 1 2 3 1 0 4 5 2 4 0 6 3 5 6 0"),
        ("LOWER_DIAG_ROW", "0 1 0 2 4 0 3 5 6 0"),
        ("LOWER_ROW", "1 2 4 3 5 6"),
        ("UPPER_ROW", "1 2 3 4 5 6"),
        ("UPPER_DIAG_ROW", "0 1 2 3 0 4 5 0 6 0"),
    ];
    for (fmt, body) in layouts {
        let text = format!(
            "NAME: m\nTYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: {fmt}\nEDGE_WEIGHT_SECTION\n{body}\nEOF\n"
        );
        let inst = parse_tsplib(text.as_bytes()).unwrap_or_else(|e| panic!("{fmt}: {e}"));
        assert_eq!(inst.weight_kind, WeightKind::Explicit);
        for (i, row) in full.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                assert_eq!(inst.distance(i, j), w, "{fmt} ({i},{j})");
            }
        }
    }
}

#[test]
fn gr17_parses() {
    let inst = parse_tsplib(File::open(data("gr17.tsp")).unwrap()).unwrap();
    assert_eq!(inst.name, "gr17");
    assert_eq!(inst.n, 17);
    // First LOWER_DIAG_ROW entries: row 1 is "633 0", row 2 is "257 390 0".
    assert_eq!(inst.distance(1, 0), 633);
    assert_eq!(inst.distance(0, 2), 257);
    assert_eq!(inst.distance(2, 1), 390);
    assert!(inst.matrix().first_asymmetry().is_none());
}

#[test]
fn toy_fixture_parses() {
    let inst = parse_tsplib(File::open(data("toy5.tsp")).unwrap()).unwrap();
    assert_eq!(inst.n, 5);
    assert_eq!(inst.distance(0, 4), 3000);
    assert_eq!(inst.distance(0, 2), 6000);
}

#[test]
fn unsupported_keyword_is_named() {
    let text = "NAME: x\nTYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: MAN_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 1\nEOF\n";
    let err = parse_tsplib(text.as_bytes()).unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)), "{err}");
    assert!(err.to_string().contains("MAN_2D"), "{err}");
}
