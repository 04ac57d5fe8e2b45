#![allow(dead_code)]

use std::path::PathBuf;

use cosine_threshold::vectors::NormProfile;
use cosine_threshold::{matrix::load_matrix, DataMatrix, Format};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Citation counts of the 24 authors in the 279-paper binary occurrence data.
pub const OCCURRENCE_TOTALS: [(&str, f64); 24] = [
    ("Braun", 50.0),
    ("Schubert", 60.0),
    ("Glänzel", 53.0),
    ("Moed", 55.0),
    ("Nederhof", 31.0),
    ("Narin", 64.0),
    ("Tijssen", 22.0),
    ("van Raan", 50.0),
    ("Leydesdorff", 46.0),
    ("Price", 54.0),
    ("Callon", 26.0),
    ("Cronin", 24.0),
    ("Cooper", 30.0),
    ("Van Rijsbergen", 30.0),
    ("Croft", 18.0),
    ("Robertson", 36.0),
    ("Blair", 18.0),
    ("Harman", 31.0),
    ("Belkin", 36.0),
    ("Spink", 21.0),
    ("Fidel", 23.0),
    ("Marchionini", 24.0),
    ("Kuhlthau", 26.0),
    ("Dervin", 20.0),
];

/// L¹/L² ratios of the same authors' rows in the 24 × 24 co-citation matrix.
pub const COCITATION_RATIOS: [(&str, f64); 24] = [
    ("Braun", 2.5032838),
    ("Schubert", 2.4795703),
    ("Glänzel", 2.729457),
    ("Moed", 2.7337391),
    ("Nederhof", 2.8221626),
    ("Narin", 2.8986697),
    ("Tijssen", 3.0789273),
    ("van Raan", 2.4077981),
    ("Leydesdorff", 2.8747094),
    ("Price", 2.7635278),
    ("Callon", 2.8295923),
    ("Cronin", 2.556743),
    ("Cooper", 2.3184046),
    ("Van Rijsbergen", 2.4469432),
    ("Croft", 3.0858543),
    ("Robertson", 2.920658),
    ("Blair", 2.517544),
    ("Harman", 2.5919129),
    ("Belkin", 2.8555919),
    ("Spink", 3.0331502),
    ("Fidel", 2.6927563),
    ("Marchionini", 2.4845716),
    ("Kuhlthau", 2.4693658),
    ("Dervin", 2.5086617),
];

pub fn occurrence_profiles() -> Vec<NormProfile> {
    OCCURRENCE_TOTALS
        .iter()
        .map(|&(label, k)| NormProfile::from_ratio(label, k.sqrt(), 279))
        .collect()
}

pub fn cocitation_profiles() -> Vec<NormProfile> {
    COCITATION_RATIOS
        .iter()
        .map(|&(label, a)| NormProfile::from_ratio(label, a, 24))
        .collect()
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

pub fn load_data(name: &str) -> DataMatrix {
    let file = std::fs::File::open(data_path(name)).unwrap();
    load_matrix(file, Format::Csv).unwrap()
}

/// Synthetic binary occurrence matrix (279 papers × 24 authors) with the
/// author totals above; Croft and Tijssen are co-cited in exactly 2 papers.
pub fn occurrence_279() -> DataMatrix {
    load_data("occurrence_279x24.csv")
}

/// Random non-negative matrix mixing binary, count, continuous and sparse
/// cells.
pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DataMatrix {
    let style = rng.gen_range(0..4);
    let data = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| match style {
                    0 => f64::from(rng.gen_bool(0.35) as u8),
                    1 => f64::from(rng.gen_range(0u8..6)),
                    2 => rng.gen_range(0.0..10.0),
                    _ => {
                        if rng.gen_bool(0.6) {
                            0.0
                        } else {
                            rng.gen_range(0.0..100.0)
                        }
                    }
                })
                .collect()
        })
        .collect();
    let labels = (0..cols).map(|c| format!("e{c}")).collect();
    DataMatrix::new(None, labels, data).unwrap()
}
