//! Shared test support: seeded random corpora and a brute-force oracle.
//!
//! The oracle only reads raw record fields (detections, sentiment, grid) and
//! recomputes every measure with direct loops and a two-pass standard
//! deviation; it never calls into `vdd_core::metrics`.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vdd_core::model::{AgeBins, Painting, AGE_GROUPS};
use vdd_core::{
    AnnotationRecord, BaseReference, Component, CorpusSlice, Gender, GeneratorId, PersonDetection,
    PromptId, ScoringConfig, SentimentGrid, StdEstimator, StdMode,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gid(s: &str) -> GeneratorId {
    GeneratorId::new(s).unwrap()
}

fn random_confidence(rng: &mut impl Rng) -> f64 {
    match rng.gen_range(0..6) {
        0 => 0.8,
        1 => 0.79,
        2 => *[0.0, 0.5, 0.9, 1.0].choose(rng).unwrap(),
        _ => rng.gen_range(0.0..=1.0),
    }
}

pub fn random_detection(rng: &mut impl Rng) -> PersonDetection {
    let x0 = rng.gen_range(0.0..400.0);
    let y0 = rng.gen_range(0.0..400.0);
    let gender = if rng.gen_bool(0.5) {
        Gender::Female
    } else {
        Gender::Male
    };
    let age_min = rng.gen_range(0..95);
    let age_max = age_min + rng.gen_range(0..12);
    PersonDetection::new(
        [
            x0,
            y0,
            x0 + rng.gen_range(1.0..100.0),
            y0 + rng.gen_range(1.0..100.0),
        ],
        random_confidence(rng),
        gender,
        age_min,
        age_max,
    )
    .unwrap()
}

pub fn random_grid(rng: &mut impl Rng) -> SentimentGrid {
    SentimentGrid::new((0..64).map(|_| rng.gen_range(0.0..=1.0)).collect()).unwrap()
}

pub fn random_record(
    rng: &mut impl Rng,
    id: &str,
    generator: &GeneratorId,
    prompt: PromptId,
    grid_probability: f64,
) -> AnnotationRecord {
    let n = rng.gen_range(0..=6);
    let dets = (0..n).map(|_| random_detection(rng)).collect();
    let rec = AnnotationRecord::new(
        id,
        generator.clone(),
        prompt,
        (rng.gen_range(64..2048), rng.gen_range(64..2048)),
        rng.gen_range(0.0..=1.0),
    )
    .unwrap()
    .with_detections(dets);
    if rng.gen_bool(grid_probability) {
        rec.with_grid(random_grid(rng))
    } else {
        rec
    }
}

pub fn paintings(records: Vec<AnnotationRecord>) -> Vec<Painting> {
    records
        .into_iter()
        .enumerate()
        .map(|(i, annotation)| Painting {
            painter: format!("Painter {i}"),
            title: format!("Title {i}"),
            year: format!("{}", 1500 + i),
            annotation,
        })
        .collect()
}

pub struct Corpus {
    pub generated: CorpusSlice,
    pub base: BaseReference,
}

impl Corpus {
    pub fn from_records(generated: Vec<AnnotationRecord>, base: Vec<AnnotationRecord>) -> Corpus {
        let g = generated[0].generator().clone();
        let p = generated[0].prompt();
        Corpus {
            generated: CorpusSlice::new(g, p, generated).unwrap(),
            base: BaseReference::new(p, paintings(base)).unwrap(),
        }
    }

    pub fn generated_records(&self) -> Vec<AnnotationRecord> {
        self.generated.annotations().to_vec()
    }

    pub fn base_records(&self) -> Vec<AnnotationRecord> {
        self.base
            .paintings()
            .iter()
            .map(|p| p.annotation.clone())
            .collect()
    }
}

/// Up to 10 generated images against up to 5 paintings, up to 6 people each.
pub fn random_corpus(seed: u64) -> Corpus {
    let mut rng = rng(seed);
    let generator = gid("GEN");
    let base_gen = gid("base");
    let prompt = PromptId::ALL[rng.gen_range(0..5)];
    let grid_p = *[1.0, 0.8, 0.3].choose(&mut rng).unwrap();
    let g = (0..rng.gen_range(1..=10))
        .map(|i| random_record(&mut rng, &format!("g{i}"), &generator, prompt, grid_p))
        .collect();
    let b = (0..rng.gen_range(1..=5))
        .map(|i| random_record(&mut rng, &format!("b{i}"), &base_gen, prompt, grid_p))
        .collect();
    Corpus::from_records(g, b)
}

pub fn random_config(seed: u64) -> ScoringConfig {
    let mut rng = rng(seed ^ 0x5eed);
    let threshold = *[0.8, 0.8, 0.0, 0.5, 0.9, 1.0].choose(&mut rng).unwrap();
    let age_bins = if rng.gen_bool(0.7) {
        AgeBins::decades()
    } else {
        AgeBins::new(&[0, 5, 12, 18, 25, 35, 45, 60, 75, 90]).unwrap()
    };
    let mut components: Vec<Component> = Component::ALL.to_vec();
    if rng.gen_bool(0.3) {
        components.shuffle(&mut rng);
        components.truncate(rng.gen_range(1..=6));
    }
    ScoringConfig {
        confidence_threshold: threshold,
        age_bins,
        std_mode: if rng.gen_bool(0.5) {
            StdMode::PairwiseDistance
        } else {
            StdMode::RawCounts
        },
        std_estimator: if rng.gen_bool(0.5) {
            StdEstimator::Sample
        } else {
            StdEstimator::Population
        },
        overall_components: components.into_iter().collect(),
        rounding: 4,
    }
}

/// Fixed corpus behind the golden report files: four generators (one outside
/// the catalog) over prompts p2 and p4, every record carrying a grid.
pub fn golden_table() -> vdd_core::ScoreTable {
    use std::collections::BTreeMap;
    let mut rng = rng(2023);
    let mut records = Vec::new();
    let mut bases = BTreeMap::new();
    for prompt in [PromptId::P2, PromptId::P4] {
        for name in ["RW", "MJ", "DALLE", "Local"] {
            let generator = gid(name);
            for i in 0..8 {
                let id = format!("{name}-{prompt}-{i}");
                records.push(random_record(&mut rng, &id, &generator, prompt, 1.0));
            }
        }
        let base: Vec<AnnotationRecord> = (0..5)
            .map(|i| {
                random_record(
                    &mut rng,
                    &format!("base-{prompt}-{i}"),
                    &gid("base"),
                    prompt,
                    1.0,
                )
            })
            .collect();
        bases.insert(prompt, BaseReference::new(prompt, paintings(base)).unwrap());
    }
    let slices = vdd_core::group_slices(records);
    vdd_core::score_corpus(&slices, &bases, &ScoringConfig::default()).unwrap()
}

/// Compares `actual` with `tests/golden/<name>`. Setting `VDD_UPDATE_GOLDEN=1`
/// rewrites the file instead.
pub fn assert_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("VDD_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(());
    }
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{} differs from generated output", path.display()))
    }
}

pub mod oracle {
    use super::*;

    pub fn count(rec: &AnnotationRecord, tau: f64) -> u32 {
        let mut n = 0;
        for d in rec.detections() {
            if d.confidence() >= tau {
                n += 1;
            }
        }
        n
    }

    pub fn gender(rec: &AnnotationRecord, tau: f64, which: Gender) -> u32 {
        let mut n = 0;
        for d in rec.detections() {
            if d.confidence() >= tau && d.gender() == which {
                n += 1;
            }
        }
        n
    }

    pub fn bins(rec: &AnnotationRecord, tau: f64, edges: &[u32; AGE_GROUPS]) -> [u32; AGE_GROUPS] {
        let mut out = [0; AGE_GROUPS];
        for d in rec.detections() {
            if d.confidence() < tau {
                continue;
            }
            let (lo, hi) = d.age_range();
            let age = (lo as f64 + hi as f64) / 2.0;
            let mut idx = 0;
            for (i, e) in edges.iter().enumerate() {
                if age >= *e as f64 {
                    idx = i;
                }
            }
            out[idx] += 1;
        }
        out
    }

    /// Two-pass standard deviation.
    pub fn std(xs: &[f64], sample: bool) -> f64 {
        let n = xs.len();
        if n == 0 || (sample && n == 1) {
            return 0.0;
        }
        let mut sum = 0.0;
        for x in xs {
            sum += x;
        }
        let mean = sum / n as f64;
        let mut ss = 0.0;
        for x in xs {
            ss += (x - mean) * (x - mean);
        }
        let denom = if sample { n - 1 } else { n };
        (ss / denom as f64).sqrt()
    }

    #[derive(Debug, Clone, Copy)]
    pub struct Stats {
        pub n_mean: f64,
        pub n_std: f64,
        pub m_mean: f64,
        pub m_std: f64,
        pub f_mean: f64,
        pub f_std: f64,
    }

    #[derive(Debug, Clone, Copy)]
    pub struct Scores {
        pub count: f64,
        pub female: f64,
        pub male: f64,
        pub age: f64,
        pub sentiment: f64,
        pub patch: Option<f64>,
        pub overall: Option<f64>,
    }

    fn column(recs: &[AnnotationRecord], f: impl Fn(&AnnotationRecord) -> u32) -> Vec<f64> {
        recs.iter().map(|r| f(r) as f64).collect()
    }

    fn avg(xs: &[f64]) -> f64 {
        let mut s = 0.0;
        for x in xs {
            s += x;
        }
        s / xs.len() as f64
    }

    fn distances(a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = Vec::new();
        for x in a {
            for y in b {
                out.push((x - y).abs());
            }
        }
        out
    }

    pub fn stats(g: &[AnnotationRecord], b: &[AnnotationRecord], cfg: &ScoringConfig) -> Stats {
        let tau = cfg.confidence_threshold;
        let sample = cfg.std_estimator == StdEstimator::Sample;
        let gn = column(g, |r| count(r, tau));
        let gm = column(g, |r| gender(r, tau, Gender::Male));
        let gf = column(g, |r| gender(r, tau, Gender::Female));
        let bn = column(b, |r| count(r, tau));
        let bm = column(b, |r| gender(r, tau, Gender::Male));
        let bf = column(b, |r| gender(r, tau, Gender::Female));
        let spread = |own: &[f64], other: &[f64]| match cfg.std_mode {
            StdMode::PairwiseDistance => std(&distances(own, other), sample),
            StdMode::RawCounts => std(own, sample),
        };
        Stats {
            n_mean: avg(&gn),
            n_std: spread(&gn, &bn),
            m_mean: avg(&gm),
            m_std: spread(&gm, &bm),
            f_mean: avg(&gf),
            f_std: spread(&gf, &bf),
        }
    }

    pub fn base_stats(b: &[AnnotationRecord], cfg: &ScoringConfig) -> Stats {
        let tau = cfg.confidence_threshold;
        let sample = cfg.std_estimator == StdEstimator::Sample;
        let bn = column(b, |r| count(r, tau));
        let bm = column(b, |r| gender(r, tau, Gender::Male));
        let bf = column(b, |r| gender(r, tau, Gender::Female));
        Stats {
            n_mean: avg(&bn),
            n_std: std(&bn, sample),
            m_mean: avg(&bm),
            m_std: std(&bm, sample),
            f_mean: avg(&bf),
            f_std: std(&bf, sample),
        }
    }

    fn pair_mean(
        g: &[AnnotationRecord],
        b: &[AnnotationRecord],
        f: impl Fn(&AnnotationRecord, &AnnotationRecord) -> f64,
    ) -> f64 {
        let mut total = 0.0;
        for x in g {
            for y in b {
                total += f(x, y);
            }
        }
        total / (g.len() * b.len()) as f64
    }

    pub fn scores(g: &[AnnotationRecord], b: &[AnnotationRecord], cfg: &ScoringConfig) -> Scores {
        let tau = cfg.confidence_threshold;
        let edges = cfg.age_bins.lower_edges();

        let mut max_n = 0;
        for r in g.iter().chain(b) {
            max_n = max_n.max(count(r, tau));
        }
        let count_score = if max_n == 0 {
            0.0
        } else {
            let mg = avg(&column(g, |r| count(r, tau))) / max_n as f64;
            let mb = avg(&column(b, |r| count(r, tau))) / max_n as f64;
            (mg - mb).abs()
        };

        let gender_score = |which: Gender| {
            let mut max_c = 0;
            for r in g.iter().chain(b) {
                max_c = max_c.max(gender(r, tau, which));
            }
            if max_c == 0 {
                return 0.0;
            }
            pair_mean(g, b, |x, y| {
                (gender(x, tau, which) as f64 - gender(y, tau, which) as f64).abs() / max_c as f64
            })
        };

        let age = if max_n == 0 {
            0.0
        } else {
            pair_mean(g, b, |x, y| {
                let bx = bins(x, tau, edges);
                let by = bins(y, tau, edges);
                let mut d = 0.0;
                for k in 0..AGE_GROUPS {
                    d += (bx[k] as f64 - by[k] as f64).abs();
                }
                d / (2.0 * max_n as f64)
            })
        };

        let sentiment = pair_mean(g, b, |x, y| (x.sentiment() - y.sentiment()).abs());

        let mut patch_total = 0.0;
        let mut patch_pairs = 0;
        for x in g {
            for y in b {
                if let (Some(gx), Some(gy)) = (x.sentiment_grid(), y.sentiment_grid()) {
                    let mut d = 0.0;
                    for r in 0..8 {
                        for c in 0..8 {
                            d += (gx.get(r, c) - gy.get(r, c)).abs();
                        }
                    }
                    patch_total += d / 64.0;
                    patch_pairs += 1;
                }
            }
        }
        let patch = (patch_pairs > 0).then(|| patch_total / patch_pairs as f64);

        let female = gender_score(Gender::Female);
        let male = gender_score(Gender::Male);
        let mut parts = Vec::new();
        let mut missing = false;
        for c in &cfg.overall_components {
            match c {
                Component::Count => parts.push(count_score),
                Component::Female => parts.push(female),
                Component::Male => parts.push(male),
                Component::Age => parts.push(age),
                Component::Sentiment => parts.push(sentiment),
                Component::PatchSentiment => match patch {
                    Some(p) => parts.push(p),
                    None => missing = true,
                },
            }
        }
        let overall = (!missing).then(|| avg(&parts));

        Scores {
            count: count_score,
            female,
            male,
            age,
            sentiment,
            patch,
            overall,
        }
    }
}
