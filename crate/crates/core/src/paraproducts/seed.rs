use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::hopf::{Alphabet, Word};
use crate::spectral::{check_grids, decompose, BlockDecomposition, GridFunction, PartitionOfUnity};

/// The seed functions `f^{i1...ik}` built blockwise from inputs `f_1..f_n`:
/// `(f^i)_j = Delta_j f_i` and
/// `(f^{i1...ik})_j = (f^{i1...i(k-1)})_{<j-1} · (f^{ik})_j`.
///
/// Pieces and their sums are memoized per word behind a lock, so a shared
/// family can be queried from several threads.
pub struct SeedFamily<'a> {
    pou: &'a PartitionOfUnity,
    alphabet: Alphabet,
    inputs: Vec<GridFunction>,
    letter_blocks: Vec<BlockDecomposition>,
    pieces: RwLock<HashMap<Word, Arc<Vec<GridFunction>>>>,
    values: RwLock<HashMap<Word, Arc<GridFunction>>>,
}

impl<'a> SeedFamily<'a> {
    pub fn new(
        alphabet: Alphabet,
        inputs: Vec<GridFunction>,
        pou: &'a PartitionOfUnity,
    ) -> Result<Self> {
        if inputs.len() != alphabet.len() {
            return Err(Error::Usage(format!(
                "{} inputs for an alphabet of {} letters",
                inputs.len(),
                alphabet.len()
            )));
        }
        for f in &inputs {
            check_grids(f.grid(), pou.grid())?;
        }
        let letter_blocks = inputs
            .iter()
            .map(|f| decompose(f, pou))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeedFamily {
            pou,
            alphabet,
            inputs,
            letter_blocks,
            pieces: RwLock::new(HashMap::new()),
            values: RwLock::new(HashMap::new()),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn inputs(&self) -> &[GridFunction] {
        &self.inputs
    }

    pub fn input(&self, letter: u8) -> &GridFunction {
        &self.inputs[letter as usize - 1]
    }

    pub fn partition(&self) -> &'a PartitionOfUnity {
        self.pou
    }

    /// Product of the input sup norms over the letters of `w` (1 for the unit).
    pub fn scale(&self, w: &Word) -> f64 {
        w.letters()
            .iter()
            .map(|&l| self.input(l).sup_norm())
            .product()
    }

    /// Pieces `(f^w)_j` for `j = -1..=J`, indexed by `j + 1`.
    pub fn pieces(&self, w: &Word) -> Result<Arc<Vec<GridFunction>>> {
        if w.is_empty() {
            return Err(Error::Usage("the unit word has no seed function".into()));
        }
        self.alphabet.check_word(w)?;
        if let Some(p) = self.pieces.read().expect("seed cache poisoned").get(w) {
            return Ok(Arc::clone(p));
        }
        let built = Arc::new(self.build_pieces(w)?);
        let mut cache = self.pieces.write().expect("seed cache poisoned");
        Ok(Arc::clone(cache.entry(w.clone()).or_insert(built)))
    }

    fn build_pieces(&self, w: &Word) -> Result<Vec<GridFunction>> {
        let (head, last) = w.split_last().expect("nonempty word");
        let last_blocks = &self.letter_blocks[last as usize - 1];
        if head.is_empty() {
            return Ok(last_blocks.blocks().to_vec());
        }
        let prev = self.pieces(&head)?;
        let grid = self.pou.grid();
        let mut low = GridFunction::zeros(grid);
        let mut out = Vec::with_capacity(prev.len());
        for j in -1..=last_blocks.top() {
            if j >= 1 {
                low.add_scaled(1.0, &prev[(j - 1) as usize]);
            }
            let mut piece = GridFunction::zeros(grid);
            if j >= 1 {
                piece.add_product(&low, &last_blocks.blocks()[(j + 1) as usize]);
            }
            out.push(piece);
        }
        Ok(out)
    }

    /// `f^w = sum_j (f^w)_j`.
    pub fn value(&self, w: &Word) -> Result<Arc<GridFunction>> {
        if let Some(v) = self.values.read().expect("seed cache poisoned").get(w) {
            return Ok(Arc::clone(v));
        }
        let pieces = self.pieces(w)?;
        let mut sum = GridFunction::zeros(self.pou.grid());
        for p in pieces.iter() {
            sum.add_scaled(1.0, p);
        }
        let mut cache = self.values.write().expect("seed cache poisoned");
        Ok(Arc::clone(
            cache.entry(w.clone()).or_insert_with(|| Arc::new(sum)),
        ))
    }

    /// `f^w(x)`, with `f^1 = 1`.
    pub fn value_at(&self, w: &Word, x: usize) -> Result<f64> {
        if w.is_empty() {
            return Ok(1.0);
        }
        Ok(self.value(w)?.at(x))
    }

    /// `(f^w)_j(x)`; zero outside the block range.
    pub fn piece_at(&self, w: &Word, j: i32, x: usize) -> Result<f64> {
        let p = self.pieces(w)?;
        Ok(if j >= -1 && ((j + 1) as usize) < p.len() {
            p[(j + 1) as usize].at(x)
        } else {
            0.0
        })
    }
}

/// `f^w` for a word of the family.
pub fn seed_function(family: &SeedFamily<'_>, w: &Word) -> Result<GridFunction> {
    Ok(family.value(w)?.as_ref().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paraproducts::para;
    use crate::spectral::{build_partition, synth_holder, Grid};

    #[test]
    fn letters_and_pairs() {
        let pou = build_partition(Grid::line(10).unwrap(), 2).unwrap();
        let fs: Vec<_> = [0.3, 0.4]
            .iter()
            .enumerate()
            .map(|(i, &a)| synth_holder(a, i as u64, &pou, 4).unwrap())
            .collect();
        let fam = SeedFamily::new(Alphabet::new(&[0.3, 0.4]).unwrap(), fs.clone(), &pou).unwrap();
        assert!(
            seed_function(&fam, &"(1)".parse().unwrap())
                .unwrap()
                .sup_distance(&fs[0])
                < 1e-12
        );
        let f12 = seed_function(&fam, &"(12)".parse().unwrap()).unwrap();
        assert!(f12.sup_distance(&para(&fs[0], &fs[1], &pou).unwrap()) <= 1e-12);
        assert!(matches!(
            fam.value(&"(222)".parse().unwrap()),
            Err(Error::OutOfStructure(_))
        ));
        assert_eq!(fam.value_at(&Word::unit(), 3).unwrap(), 1.0);
    }

    #[test]
    fn shared_cache_across_threads() {
        let pou = build_partition(Grid::line(9).unwrap(), 2).unwrap();
        let fs: Vec<_> = (0..3)
            .map(|i| synth_holder(0.2, i, &pou, 4).unwrap())
            .collect();
        let fam = SeedFamily::new(Alphabet::new(&[0.2, 0.2, 0.2]).unwrap(), fs, &pou).unwrap();
        let w: Word = "(1232)".parse().unwrap();
        let serial = seed_function(&fam, &w).unwrap();
        let fresh = SeedFamily::new(fam.alphabet().clone(), fam.inputs().to_vec(), &pou).unwrap();
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..4)
                .map(|_| s.spawn(|| seed_function(&fresh, &w).unwrap()))
                .collect();
            for h in handles {
                assert_eq!(h.join().unwrap(), serial);
            }
        });
    }
}
