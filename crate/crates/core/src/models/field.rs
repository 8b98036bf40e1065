use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hopf::{
    char_inverse, char_product, AlgebraElement, Alphabet, PointCharacter, Word, MAX_WORD_LEN,
};
use crate::paraproducts::{para, suffix_recursion, SeedFamily};
use crate::spectral::{check_grids, Grid, GridFunction, PartitionOfUnity};

/// The map `x -> g_x(tau)` sampled on a grid, for every stored word `tau`.
#[derive(Debug, Clone)]
pub struct CharacterField {
    alphabet: Alphabet,
    grid: Grid,
    values: BTreeMap<Word, GridFunction>,
}

impl CharacterField {
    /// Values on nonempty words; the unit is implicitly the constant 1.
    pub fn new(alphabet: Alphabet, values: BTreeMap<Word, GridFunction>) -> Result<Self> {
        let grid = values
            .values()
            .next()
            .map(GridFunction::grid)
            .ok_or_else(|| Error::Usage("character field without words".into()))?;
        for (w, f) in &values {
            if w.is_empty() {
                return Err(Error::Usage("the unit word carries the constant 1".into()));
            }
            alphabet.check_word(w)?;
            check_grids(grid, f.grid())?;
        }
        Ok(CharacterField {
            alphabet,
            grid,
            values,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Same field over the alphabet extended by the noise letter `Xi`.
    pub fn with_noise(mut self, gamma: f64) -> Result<Self> {
        self.alphabet = self.alphabet.with_noise(gamma)?;
        Ok(self)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Stored nonempty words in canonical order.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.values.keys()
    }

    /// `g(w)` as a grid function.
    pub fn get(&self, w: &Word) -> Result<GridFunction> {
        if w.is_empty() {
            return Ok(GridFunction::constant(self.grid, 1.0));
        }
        self.value(w).cloned()
    }

    /// Borrowed `g(w)` for a nonempty stored word.
    pub fn value(&self, w: &Word) -> Result<&GridFunction> {
        self.alphabet.check_word(w)?;
        self.values
            .get(w)
            .ok_or_else(|| Error::Usage(format!("word {w} is not stored in the character field")))
    }

    /// `g(w)(x)`.
    pub fn value_at(&self, w: &Word, x: usize) -> Result<f64> {
        if w.is_empty() {
            return Ok(1.0);
        }
        Ok(self.value(w)?.at(x))
    }

    /// Multiplicative extension to a polynomial in words.
    pub fn eval(&self, e: &AlgebraElement) -> Result<GridFunction> {
        let mut out = GridFunction::zeros(self.grid);
        for (m, c) in e.iter() {
            let mut term = GridFunction::constant(self.grid, c);
            for w in m.factors() {
                term = &term * self.value(w)?;
            }
            out.add_scaled(1.0, &term);
        }
        Ok(out)
    }

    /// The character `g_x`.
    pub fn at(&self, x: usize) -> PointCharacter {
        PointCharacter::new(self.values.iter().map(|(w, f)| (w.clone(), f.at(x))))
    }
}

/// The canonical model `g_x(i1...ik) = (f_{i1}, ..., f_{ik})^≺(x)` on every
/// word of homogeneity below 1 and length at most 4.
pub fn canonical_model(
    fs: &[GridFunction],
    alphas: &[f64],
    pou: &PartitionOfUnity,
) -> Result<CharacterField> {
    let alphabet = Alphabet::new(alphas)?;
    if fs.len() != alphabet.len() {
        return Err(Error::Usage(format!(
            "{} inputs for {} homogeneities",
            fs.len(),
            alphas.len()
        )));
    }
    let mut values: BTreeMap<Word, GridFunction> = BTreeMap::new();
    for w in alphabet.words(MAX_WORD_LEN) {
        let (head, last) = w.split_last().expect("nonempty");
        let f = &fs[last as usize - 1];
        let v = if head.is_empty() {
            f.clone()
        } else {
            para(&values[&head], f, pou)?
        };
        values.insert(w, v);
    }
    CharacterField::new(alphabet, values)
}

/// The field `g_x(w) = f^w(x)` of a seed family.
pub fn seed_field(family: &SeedFamily<'_>) -> Result<CharacterField> {
    let alphabet = family.alphabet().clone();
    let values = alphabet
        .words(MAX_WORD_LEN)
        .into_iter()
        .map(|w| Ok((w.clone(), family.value(&w)?.as_ref().clone())))
        .collect::<Result<BTreeMap<_, _>>>()?;
    CharacterField::new(alphabet, values)
}

/// `g_{yx}(w)` by the recursion
/// `g_{yx}(w) = g_y(w) - g_x(w) - sum_l g_x(i1...il) g_{yx}(i(l+1)...ik)`.
pub fn g_two_point(field: &CharacterField, w: &Word, x: usize, y: usize) -> Result<f64> {
    if w.is_empty() {
        return Ok(1.0);
    }
    let r = suffix_recursion(
        w.len(),
        |s| {
            let v = field.value(&w.suffix(s))?;
            Ok(v.at(y) - v.at(x))
        },
        |s, l| field.value_at(&w.subword(s, l), x),
    )?;
    Ok(r[0])
}

/// `g_{yx} = g_y * g_x^{-1}` computed in the character group.
pub fn g_two_point_character(field: &CharacterField, x: usize, y: usize) -> Result<PointCharacter> {
    Ok(char_product(&field.at(y), &char_inverse(&field.at(x))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{build_partition, synth_holder};

    fn setup() -> (PartitionOfUnity, Vec<GridFunction>) {
        let pou = build_partition(Grid::line(9).unwrap(), 2).unwrap();
        let fs = (0..3)
            .map(|i| synth_holder(0.2 + 0.05 * i as f64, 50 + i, &pou, 8).unwrap())
            .collect();
        (pou, fs)
    }

    #[test]
    fn canonical_values() {
        let (pou, fs) = setup();
        let field = canonical_model(&fs, &[0.2, 0.25, 0.3], &pou).unwrap();
        assert_eq!(
            field.get(&Word::unit()).unwrap(),
            GridFunction::constant(pou.grid(), 1.0)
        );
        assert_eq!(field.get(&Word::letter(1)).unwrap(), fs[0]);
        assert_eq!(
            field.get(&"(12)".parse().unwrap()).unwrap(),
            para(&fs[0], &fs[1], &pou).unwrap()
        );
        assert!(matches!(
            field.get(&"(3333)".parse().unwrap()),
            Err(Error::OutOfStructure(_))
        ));
    }

    #[test]
    fn two_point_paths_agree() {
        let (pou, fs) = setup();
        let field = canonical_model(&fs, &[0.2, 0.25, 0.3], &pou).unwrap();
        let (x, y, z) = (11, 200, 421);
        let sym = g_two_point_character(&field, x, y).unwrap();
        for w in field.words() {
            let rec = g_two_point(&field, w, x, y).unwrap();
            assert!((rec - sym.get(w).unwrap()).abs() <= 1e-10, "{w}");
        }
        let w1 = Word::letter(2);
        assert_eq!(
            g_two_point(&field, &w1, x, y).unwrap(),
            fs[1].at(y) - fs[1].at(x)
        );
        let diag = g_two_point_character(&field, x, x).unwrap();
        assert!(diag.max_difference(&PointCharacter::counit(field.words().cloned())) <= 1e-12);
        let chen = char_product(
            &g_two_point_character(&field, y, z).unwrap(),
            &g_two_point_character(&field, x, y).unwrap(),
        );
        assert!(chen.max_difference(&g_two_point_character(&field, x, z).unwrap()) <= 1e-10);
    }
}
