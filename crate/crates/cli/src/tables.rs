//! Embedded reference codes and the row verification pipeline.

use serde::Serialize;

use qccdts::csoc::{build_systematic_x, is_csoc, memory};
use qccdts::distance::{certify_dfree, dfree_upper};
use qccdts::dts::{DtsFamily, SupportSet};
use qccdts::gf2poly::{Gf2Poly, PolyMatrix};
use qccdts::reflect::{build_z, reflect_family, Permutation};
use qccdts::symplectic::{check_reflection_symmetry, is_commuting};

/// One row of a reference table. `t_sets`/`z_sets` are 1-based, `g_x`/`g_z`
/// the 0-based exponent sets of the parity entries, both in column order.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub table: u8,
    pub row: u8,
    pub rate: &'static str,
    pub m: u32,
    pub w: usize,
    pub t_sets: &'static [&'static [u32]],
    pub z_sets: &'static [&'static [u32]],
    pub g_x: &'static [&'static [u32]],
    pub g_z: &'static [&'static [u32]],
}

pub const TABLE_TITLES: [(u8, &str); 3] = [
    (1, "Rate 1/3 self-orthogonal quantum convolutional codes"),
    (2, "Rate 2/4 self-orthogonal quantum convolutional codes"),
    (3, "Rate 3/5 self-orthogonal quantum convolutional codes"),
];

macro_rules! row {
    ($t:expr, $r:expr, $rate:expr, $m:expr, $w:expr, T $ts:expr, Z $zs:expr, gx $gx:expr, gz $gz:expr) => {
        TableRow {
            table: $t,
            row: $r,
            rate: $rate,
            m: $m,
            w: $w,
            t_sets: $ts,
            z_sets: $zs,
            g_x: $gx,
            g_z: $gz,
        }
    };
}

pub const ROWS: [TableRow; 14] = [
    row!(
        1,
        1,
        "1/3",
        2,
        2,
        T & [&[1, 2], &[1, 3]],
        Z & [&[1, 3], &[2, 3]],
        gx & [&[0, 1], &[0, 2]],
        gz & [&[0, 2], &[1, 2]]
    ),
    row!(
        1,
        2,
        "1/3",
        3,
        2,
        T & [&[1, 2], &[1, 4]],
        Z & [&[1, 4], &[3, 4]],
        gx & [&[0, 1], &[0, 3]],
        gz & [&[0, 3], &[2, 3]]
    ),
    row!(
        1,
        3,
        "1/3",
        9,
        3,
        T & [&[1, 2, 4], &[1, 5, 10]],
        Z & [&[1, 6, 10], &[7, 9, 10]],
        gx & [&[0, 1, 3], &[0, 4, 9]],
        gz & [&[0, 5, 9], &[6, 8, 9]]
    ),
    row!(
        1,
        4,
        "1/3",
        10,
        3,
        T & [&[1, 2, 4], &[1, 5, 11]],
        Z & [&[1, 7, 11], &[8, 10, 11]],
        gx & [&[0, 1, 3], &[0, 4, 10]],
        gz & [&[0, 6, 10], &[7, 9, 10]]
    ),
    row!(
        1,
        5,
        "1/3",
        22,
        4,
        T & [&[1, 2, 4, 8], &[1, 6, 14, 23]],
        Z & [&[1, 10, 18, 23], &[16, 20, 22, 23]],
        gx & [&[0, 1, 3, 7], &[0, 5, 13, 22]],
        gz & [&[0, 9, 17, 22], &[15, 19, 21, 22]]
    ),
    row!(
        2,
        1,
        "2/4",
        5,
        2,
        T & [&[1, 2], &[1, 3], &[1, 6]],
        Z & [&[4, 6], &[5, 6], &[1, 6]],
        gx & [&[0, 1], &[0, 2], &[0, 5]],
        gz & [&[3, 5], &[4, 5], &[0, 5]]
    ),
    row!(
        2,
        2,
        "2/4",
        6,
        2,
        T & [&[1, 2], &[1, 3], &[1, 7]],
        Z & [&[5, 7], &[6, 7], &[1, 7]],
        gx & [&[0, 1], &[0, 2], &[0, 6]],
        gz & [&[4, 6], &[5, 6], &[0, 6]]
    ),
    row!(
        2,
        3,
        "2/4",
        7,
        2,
        T & [&[1, 2], &[1, 3], &[1, 8]],
        Z & [&[6, 8], &[7, 8], &[1, 8]],
        gx & [&[0, 1], &[0, 2], &[0, 7]],
        gz & [&[5, 7], &[6, 7], &[0, 7]]
    ),
    row!(
        2,
        4,
        "2/4",
        8,
        2,
        T & [&[1, 2], &[1, 3], &[1, 9]],
        Z & [&[7, 9], &[8, 9], &[1, 9]],
        gx & [&[0, 1], &[0, 2], &[0, 8]],
        gz & [&[6, 8], &[7, 8], &[0, 8]]
    ),
    row!(
        2,
        5,
        "2/4",
        9,
        2,
        T & [&[1, 2], &[1, 3], &[1, 10]],
        Z & [&[8, 10], &[9, 10], &[1, 10]],
        gx & [&[0, 1], &[0, 2], &[0, 9]],
        gz & [&[7, 9], &[8, 9], &[0, 9]]
    ),
    row!(
        3,
        1,
        "3/5",
        18,
        3,
        T & [&[1, 2, 4], &[1, 5, 10], &[1, 7, 14], &[1, 9, 19]],
        Z & [&[10, 15, 19], &[16, 18, 19], &[1, 11, 19], &[6, 13, 19]],
        gx & [&[0, 1, 3], &[0, 4, 9], &[0, 6, 13], &[0, 8, 18]],
        gz & [&[9, 14, 18], &[15, 17, 18], &[0, 10, 18], &[5, 12, 18]]
    ),
    row!(
        3,
        2,
        "3/5",
        19,
        3,
        T & [&[1, 2, 4], &[1, 5, 10], &[1, 7, 14], &[1, 9, 20]],
        Z & [&[11, 16, 20], &[17, 19, 20], &[1, 12, 20], &[7, 14, 20]],
        gx & [&[0, 1, 3], &[0, 4, 9], &[0, 6, 13], &[0, 8, 19]],
        gz & [&[10, 15, 19], &[16, 18, 19], &[0, 11, 19], &[6, 13, 19]]
    ),
    row!(
        3,
        3,
        "3/5",
        39,
        4,
        T & [
            &[1, 2, 4, 8],
            &[1, 6, 14, 24],
            &[1, 10, 25, 39],
            &[1, 12, 28, 40]
        ],
        Z & [
            &[17, 27, 35, 40],
            &[33, 37, 39, 40],
            &[1, 13, 29, 40],
            &[2, 16, 31, 40]
        ],
        gx & [
            &[0, 1, 3, 7],
            &[0, 5, 13, 23],
            &[0, 9, 24, 38],
            &[0, 11, 27, 39]
        ],
        gz & [
            &[16, 26, 34, 39],
            &[32, 36, 38, 39],
            &[0, 12, 28, 39],
            &[1, 15, 30, 39]
        ]
    ),
    // every set has four elements; w is taken from the sets
    row!(
        3,
        4,
        "3/5",
        39,
        4,
        T & [
            &[1, 2, 4, 8],
            &[1, 6, 14, 24],
            &[1, 10, 25, 39],
            &[1, 13, 29, 40]
        ],
        Z & [
            &[17, 27, 35, 40],
            &[33, 37, 39, 40],
            &[1, 12, 28, 40],
            &[2, 16, 31, 40]
        ],
        gx & [
            &[0, 1, 3, 7],
            &[0, 5, 13, 23],
            &[0, 9, 24, 38],
            &[0, 12, 28, 39]
        ],
        gz & [
            &[16, 26, 34, 39],
            &[32, 36, 38, 39],
            &[0, 11, 27, 39],
            &[1, 15, 30, 39]
        ]
    ),
];

pub fn find_row(table: u8, row: u8) -> Option<&'static TableRow> {
    ROWS.iter().find(|r| r.table == table && r.row == row)
}

fn sets(raw: &[&[u32]]) -> Vec<Vec<u32>> {
    raw.iter().map(|s| s.to_vec()).collect()
}

/// Recomputed properties of one row. Every `bool` except `a7_symmetry`
/// gates the row verdict.
#[derive(Clone, Debug, Serialize)]
pub struct RowCheck {
    pub table: u8,
    pub row: u8,
    pub rate: String,
    pub x: String,
    pub z: String,
    pub pi: Vec<usize>,
    pub memory: u32,
    pub weight: usize,
    pub classification: String,
    pub one_based_consistent: bool,
    pub memory_matches: bool,
    pub weight_matches: bool,
    pub strong_dts: bool,
    pub reflection_matches: bool,
    pub csoc_x: bool,
    pub csoc_z: bool,
    pub commuting: bool,
    pub dfree: Option<u32>,
    pub dfree_method: String,
    pub dfree_exact_agrees: Option<bool>,
    pub dfree_upper: u32,
    pub dfree_matches: bool,
    pub a7_symmetry: bool,
    pub failures: Vec<String>,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The permutation with `z_j = reflect(x_pi(j))`, if the Z sets are a
/// reordering of the reflected X sets.
pub fn infer_permutation(x: &DtsFamily, z: &[SupportSet]) -> Option<Permutation> {
    let reflected = reflect_family(x, None).ok()?;
    let images = z
        .iter()
        .map(|zj| reflected.sets().iter().position(|r| r == zj))
        .collect::<Option<Vec<usize>>>()?;
    Permutation::new(images).ok()
}

/// Rebuilds a row from its 0-based sets and checks every recorded field
/// against the recomputation.
pub fn check_row(row: &TableRow) -> RowCheck {
    let mut failures = Vec::new();
    let gx = DtsFamily::from_zero_based(&sets(row.g_x)).expect("embedded g_x sets are valid");
    let gz: Vec<SupportSet> = row
        .g_z
        .iter()
        .map(|s| SupportSet::new(s.iter().copied()).expect("embedded g_z sets are valid"))
        .collect();

    let one_based_consistent =
        DtsFamily::from_one_based(&sets(row.t_sets)).ok().as_ref() == Some(&gx)
            && row.z_sets.iter().zip(&gz).all(|(t, g)| {
                SupportSet::from_one_based(t.iter().copied()).ok().as_ref() == Some(g)
            });
    if !one_based_consistent {
        failures.push("1-based and 0-based sets disagree".to_string());
    }

    let verdict = gx.verdict();
    let strong_dts = verdict.classification.is_strong();
    if !strong_dts {
        failures.push(format!("family classifies as {}", verdict.classification));
    }
    let weight = gx.weight();
    let weight_matches = weight == row.w;
    if !weight_matches {
        failures.push(format!("w = {} recorded, sets give {weight}", row.w));
    }

    let pi = infer_permutation(&gx, &gz);
    let reflection_matches = pi.is_some();
    if !reflection_matches {
        failures.push("Z sets are not a reordering of the reflected X sets".to_string());
    }

    let x = build_systematic_x(&gx).matrix;
    let z = PolyMatrix::row_vector(
        gz.iter()
            .map(SupportSet::to_poly)
            .chain(std::iter::once(Gf2Poly::one()))
            .collect(),
    );
    if let Some(pi) = &pi {
        if build_z(&x, pi).ok().as_ref() != Some(&z) {
            failures.push("Z(D) differs from the reflection of X(D)".to_string());
        }
    }

    let mu = memory(&x, x.cols(), x.cols() - 1).unwrap_or(0);
    let mu_z = memory(&z, z.cols(), z.cols() - 1).unwrap_or(0);
    let memory_matches = mu == row.m && mu_z == row.m;
    if !memory_matches {
        failures.push(format!(
            "m = {} recorded, memories are {mu} and {mu_z}",
            row.m
        ));
    }

    let csoc_x = is_csoc(&x).map(|r| r.csoc).unwrap_or(false);
    let csoc_z = is_csoc(&z).map(|r| r.csoc).unwrap_or(false);
    if !csoc_x {
        failures.push("X(D) is not CSOC".to_string());
    }
    if !csoc_z {
        failures.push("Z(D) is not CSOC".to_string());
    }
    let commuting = is_commuting(&x, &z).map(|r| r.commuting).unwrap_or(false);
    if !commuting {
        failures.push("X(D) and Z(D) do not commute".to_string());
    }

    let upper = dfree_upper(&x).map(|c| c.d_free).unwrap_or(0);
    let (dfree, dfree_method, dfree_exact_agrees) = match certify_dfree(&x) {
        Ok(c) => (Some(c.d_free), c.method.label().to_string(), c.exact_agrees),
        Err(e) => (None, e.to_string(), None),
    };
    let dfree_matches = dfree == Some(row.w as u32 + 1);
    if !dfree_matches {
        failures.push(format!(
            "d_free certificate {dfree:?}, expected w + 1 = {}",
            row.w + 1
        ));
    }

    let a7_symmetry = check_reflection_symmetry(&x, row.m)
        .map(|r| r.holds)
        .unwrap_or(false);

    RowCheck {
        table: row.table,
        row: row.row,
        rate: row.rate.to_string(),
        x: x.to_string(),
        z: z.to_string(),
        pi: pi.map(|p| p.to_one_based()).unwrap_or_default(),
        memory: mu,
        weight,
        classification: verdict.classification.to_string(),
        one_based_consistent,
        memory_matches,
        weight_matches,
        strong_dts,
        reflection_matches,
        csoc_x,
        csoc_z,
        commuting,
        dfree,
        dfree_method,
        dfree_exact_agrees,
        dfree_upper: upper,
        dfree_matches,
        a7_symmetry,
        failures,
    }
}
