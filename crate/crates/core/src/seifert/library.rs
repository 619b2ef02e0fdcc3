//! Seifert matrices of small standard knots.

use super::SeifertMatrix;

fn build(rows: Vec<Vec<i64>>, name: &str, crossings: u64) -> SeifertMatrix {
    SeifertMatrix::from_i64_rows(&rows)
        .expect("library matrices are valid")
        .with_name(name)
        .with_crossing_number(crossings)
}

/// Trefoil with signature -2.
pub fn trefoil() -> SeifertMatrix {
    build(vec![vec![-1, 1], vec![0, -1]], "trefoil", 3)
}

/// Trefoil with signature +2.
pub fn mirror_trefoil() -> SeifertMatrix {
    trefoil().mirror().with_name("mirror-trefoil")
}

pub fn figure_eight() -> SeifertMatrix {
    build(vec![vec![1, 1], vec![0, -1]], "figure-eight", 4)
}

/// Torus knot `T(2, q)` for odd `q >= 3`: `-I` plus ones on the superdiagonal.
pub fn torus_2(q: u64) -> SeifertMatrix {
    assert!(q >= 3 && q % 2 == 1, "T(2,q) needs odd q >= 3");
    let n = (q - 1) as usize;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        -1
                    } else if j == i + 1 {
                        1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    build(rows, &format!("T(2,{q})"), q)
}

/// Genus-one twist knot with Seifert matrix `[[-1, 1], [0, k]]`; `k = 1` is
/// the figure-eight, `k = 2` the stevedore, `k = -1` the trefoil, `k = -2` the
/// knot 5_2.
pub fn twist(k: i64) -> SeifertMatrix {
    assert!(k != 0, "k = 0 is the unknot");
    let crossings = if k > 0 { 2 * k as u64 + 2 } else { 2 * k.unsigned_abs() + 1 };
    build(vec![vec![-1, 1], vec![0, k]], &format!("twist({k})"), crossings)
}

/// The candidate family used by default when searching for J-sequences.
pub fn default_family() -> Vec<SeifertMatrix> {
    vec![mirror_trefoil(), trefoil(), figure_eight(), torus_2(5), torus_2(7), twist(2), twist(-2)]
}

/// Looks a library knot up by name.
pub fn by_name(name: &str) -> Option<SeifertMatrix> {
    match name {
        "unknot" => Some(SeifertMatrix::unknot()),
        "trefoil" | "3_1" => Some(trefoil()),
        "mirror-trefoil" => Some(mirror_trefoil()),
        "figure-eight" | "4_1" => Some(figure_eight()),
        "T(2,5)" | "5_1" => Some(torus_2(5)),
        "T(2,7)" | "7_1" => Some(torus_2(7)),
        "stevedore" | "6_1" => Some(twist(2).with_name("stevedore")),
        "5_2" => Some(twist(-2).with_name("5_2")),
        _ => None,
    }
}
