use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{letter_inputs, sample_points, ReportRow};
use crate::error::Result;
use crate::hopf::{
    char_inverse, char_product, coaction_sides, coproduct, grading_defects, is_connected,
    left_counit_image, right_counit_image, AlgebraElement, Alphabet, ComoduleBasis, Coproduct,
    LinComb, Monomial, PointCharacter, Tensor, Word,
};
use crate::models::{
    brackets_to_model, canonical_model, expand_brackets, extract_brackets, extract_model_brackets,
    g_two_point, g_two_point_character, BracketFamily,
};
use crate::spectral::{build_partition, Grid, GridFunction};
use crate::tolerances;

const EXPERIMENT: &str = "algebra";
const LETTERS: [f64; 3] = [0.2, 0.15, 0.1];
const NOISE: f64 = -0.7;
const MAX_LEN: usize = 4;
const FIELD_LOG2_SIZE: u32 = 8;

/// Seed of the random characters and of the grid field behind the Chen relation.
pub const CHARACTER_SEED: u64 = 0;

/// Deliberate defects for negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlgebraFault {
    #[default]
    None,
    /// Drops the term `w (x) 1` from every word coproduct.
    CorruptCoproduct,
}

fn corrupted(w: &Word) -> Tensor<Word> {
    let mut t = coproduct(w);
    if !w.is_empty() {
        t.add_term((w.clone(), Monomial::unit()), -1.0);
    }
    t
}

/// Every word of length `1..=max_len` over `letters` letters.
fn all_words(letters: u8, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut frontier = vec![Word::unit()];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w| (1..=letters).map(move |l| w.concat(&Word::letter(l))))
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

fn lincomb_gap<K: Ord + Clone>(a: &LinComb<K>, b: &LinComb<K>) -> f64 {
    a.sub(b).max_abs()
}

fn random_character(words: &[Word], rng: &mut ChaCha8Rng) -> PointCharacter {
    PointCharacter::new(
        words
            .iter()
            .map(|w| (w.clone(), rng.sample::<f64, _>(StandardNormal))),
    )
}

/// Exact algebraic identities on the 3-letter alphabet, words up to length 4,
/// plus bracket round trips on a small grid.
pub fn algebra_suite(fault: AlgebraFault) -> Result<Vec<ReportRow>> {
    let alphabet = Alphabet::new(&LETTERS)?;
    let words = all_words(LETTERS.len() as u8, MAX_LEN);
    let cp: &dyn Fn(&Word) -> Tensor<Word> = match fault {
        AlgebraFault::None => &coproduct,
        AlgebraFault::CorruptCoproduct => &corrupted,
    };
    let params = format!(
        "letters={};max_len={MAX_LEN}",
        super::format_alphas(&LETTERS)
    );
    let tol = tolerances::ALGEBRA;
    let mut rows = Vec::new();
    let mut row = |metric: &str, measured: f64, seed: Option<u64>| {
        rows.push(ReportRow::residual(
            EXPERIMENT, seed, &params, metric, measured, tol,
        ));
    };

    let mut coassoc = 0.0_f64;
    let mut left = 0.0_f64;
    let mut right = 0.0_f64;
    let mut grading = 0usize;
    let mut disconnected = 0usize;
    for w in &words {
        let (l, r) = coaction_sides(w, cp);
        coassoc = coassoc.max(lincomb_gap(&l, &r));
        left = left.max(lincomb_gap(
            &left_counit_image(w, cp),
            &AlgebraElement::word(w.clone()),
        ));
        right = right.max(lincomb_gap(
            &right_counit_image(w, cp),
            &LinComb::term(w.clone(), 1.0),
        ));
        grading += grading_defects(w, &alphabet, cp)?.len();
        disconnected += usize::from(!is_connected(w, cp));
    }
    row("coassociativity", coassoc, None);
    row("counit_left", left, None);
    row("counit_right", right, None);
    row("grading_additivity", grading as f64, None);
    row("connectedness", disconnected as f64, None);

    let noisy = alphabet.clone().with_noise(NOISE)?;
    let basis = ComoduleBasis::all(LETTERS.len() as u8);
    let coaction: &dyn Fn(&ComoduleBasis) -> Tensor<ComoduleBasis> = &ComoduleBasis::coproduct;
    let mut comodule = 0.0_f64;
    let mut comodule_counit = 0.0_f64;
    let mut comodule_grading = 0usize;
    for b in &basis {
        let (l, r) = coaction_sides(b, coaction);
        comodule = comodule.max(lincomb_gap(&l, &r));
        comodule_counit = comodule_counit.max(lincomb_gap(
            &right_counit_image(b, coaction),
            &LinComb::term(*b, 1.0),
        ));
        comodule_grading += grading_defects(b, &noisy, coaction)?.len();
    }
    row("comodule_law", comodule, None);
    row("comodule_counit", comodule_counit, None);
    row("comodule_grading", comodule_grading as f64, None);

    let mut rng = ChaCha8Rng::seed_from_u64(CHARACTER_SEED);
    let (a, b, c) = (
        random_character(&words, &mut rng),
        random_character(&words, &mut rng),
        random_character(&words, &mut rng),
    );
    let ab_c = char_product(&char_product(&a, &b), &c);
    let a_bc = char_product(&a, &char_product(&b, &c));
    row(
        "character_associativity",
        ab_c.max_difference(&a_bc),
        Some(CHARACTER_SEED),
    );
    let inv = char_inverse(&a)?;
    let unit = PointCharacter::counit(words.iter().cloned());
    let inverse_gap = char_product(&a, &inv)
        .max_difference(&unit)
        .max(char_product(&inv, &a).max_difference(&unit));
    row("character_inverse", inverse_gap, Some(CHARACTER_SEED));

    let pou = build_partition(Grid::line(FIELD_LOG2_SIZE)?, 2)?;
    let fs = letter_inputs(&LETTERS, CHARACTER_SEED, &pou)?;
    let field = canonical_model(&fs, &LETTERS, &pou)?;
    let pts = sample_points(9, CHARACTER_SEED, pou.grid().len());
    let mut chen = 0.0_f64;
    let mut recursion = 0.0_f64;
    for t in pts.chunks(3) {
        let (x, y, z) = (t[0], t[1], t[2]);
        let zx = g_two_point_character(&field, x, z)?;
        let zy_yx = char_product(
            &g_two_point_character(&field, y, z)?,
            &g_two_point_character(&field, x, y)?,
        );
        chen = chen.max(zx.max_difference(&zy_yx));
        for w in field.words() {
            recursion = recursion
                .max((g_two_point(&field, w, x, z)? - zx.get(w).unwrap_or(f64::NAN)).abs());
        }
    }
    row("chen_relation", chen, Some(CHARACTER_SEED));
    row("two_point_recursion", recursion, Some(CHARACTER_SEED));

    let scale: f64 = fs
        .iter()
        .map(GridFunction::sup_norm)
        .product::<f64>()
        .max(1.0);
    let brackets = extract_brackets(&field, &pou)?;
    let vanishing = brackets
        .iter()
        .filter(|(w, _)| w.len() >= 2)
        .map(|(_, b)| b.sup_norm())
        .fold(0.0, f64::max);
    let back = expand_brackets(&brackets, &field, &pou)?;
    let word_trip = back
        .iter()
        .map(|(w, v)| Ok(v.sup_distance(&field.get(w)?)))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    let noisy_field = field.clone().with_noise(NOISE)?;
    let xi = crate::spectral::synth_holder(
        NOISE,
        super::slot_seed(CHARACTER_SEED, super::XI_SLOT),
        &pou,
        super::DEFAULT_MODES,
    )?;
    let mut model_brackets = BracketFamily::default();
    for (i, key) in basis.iter().enumerate() {
        model_brackets.insert(
            *key,
            if key.is_xi() {
                xi.clone()
            } else {
                fs[i % fs.len()].scale(0.5)
            },
        );
    }
    let pi = brackets_to_model(&noisy_field, &model_brackets, &pou)?;
    let model_trip = extract_model_brackets(&pi, &noisy_field, &pou)?.max_distance(&model_brackets);
    let tolb = tolerances::BRACKETS;
    rows.push(ReportRow::residual(
        EXPERIMENT,
        Some(CHARACTER_SEED),
        &params,
        "bracket_vanishing",
        vanishing / scale,
        tolb,
    ));
    rows.push(ReportRow::residual(
        EXPERIMENT,
        Some(CHARACTER_SEED),
        &params,
        "bracket_round_trip",
        word_trip / scale,
        tolb,
    ));
    let model_scale = scale * xi.sup_norm().max(1.0);
    rows.push(ReportRow::residual(
        EXPERIMENT,
        Some(CHARACTER_SEED),
        &params,
        "model_round_trip",
        model_trip / model_scale,
        tolb,
    ));
    Ok(rows)
}
