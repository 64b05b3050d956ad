#![allow(dead_code)]

use std::sync::Arc;

use dpverify_core::Lattice;

/// The K3 lattices that appear in the catalog, with the polarization in coordinates.
pub fn k3_lattices() -> Vec<(Arc<Lattice>, Vec<i64>)> {
    vec![
        (Lattice::from_rows("B-i-2", &["H", "C"], &[&[18, 6], &[6, 0]]).unwrap(), vec![1, 0]),
        (Lattice::from_rows("B-i-3", &["H", "C"], &[&[16, 6], &[6, 0]]).unwrap(), vec![1, 0]),
        (Lattice::from_rows("B-ii", &["H", "F", "B"], &[&[6, 4, 6], &[4, 0, 3], &[6, 3, 2]]).unwrap(), vec![1, 0, 0]),
        (
            Lattice::from_rows("B-iii-2", &["H", "Gamma", "B"], &[&[6, 2, 9], &[2, -2, 6], &[9, 6, 6]]).unwrap(),
            vec![1, 0, 0],
        ),
        (
            Lattice::from_rows(
                "B-iii-3",
                &["H_alpha", "H_beta", "F", "B"],
                &[&[0, 2, 2, 0], &[2, 0, 2, 3], &[2, 2, 0, 3], &[0, 3, 3, -2]],
            )
            .unwrap(),
            vec![1, 1, 0, 0],
        ),
        (
            Lattice::from_rows("B-iii-4", &["H", "Gamma", "B"], &[&[6, 2, 11], &[2, -2, 8], &[11, 8, 8]]).unwrap(),
            vec![1, 0, 0],
        ),
    ]
}

pub fn gram_i64(l: &Lattice) -> Vec<Vec<i64>> {
    l.gram().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
}
