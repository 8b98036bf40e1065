use super::bony::iterated_para;
use super::seed::SeedFamily;
use crate::error::{Error, Result};
use crate::hopf::Word;
use crate::spectral::{GridFunction, PartitionOfUnity};

/// Solves `r(s) = top(s) - sum_{l=s+1}^{k-1} coeff(s, l) r(l)` for every
/// suffix start `s` in `0..k`, shortest suffix first.
pub(crate) fn suffix_recursion(
    k: usize,
    mut top: impl FnMut(usize) -> Result<f64>,
    mut coeff: impl FnMut(usize, usize) -> Result<f64>,
) -> Result<Vec<f64>> {
    let mut r = vec![0.0; k];
    for s in (0..k).rev() {
        let mut v = top(s)?;
        for l in s + 1..k {
            v -= coeff(s, l)? * r[l];
        }
        r[s] = v;
    }
    Ok(r)
}

/// `omega_{yx}^w(F)` for the seed family.
pub fn omega_seed(family: &SeedFamily<'_>, w: &Word, x: usize, y: usize) -> Result<f64> {
    let k = w.len();
    if k == 0 {
        return Err(Error::Usage("omega of the unit word".into()));
    }
    let r = suffix_recursion(
        k,
        |s| {
            let v = family.value(&w.suffix(s))?;
            Ok(v.at(y) - v.at(x))
        },
        |s, l| family.value_at(&w.subword(s, l), x),
    )?;
    Ok(r[0])
}

/// Iterated paraproducts `(f_a, ..., f_{b-1})^≺` of every contiguous run of a
/// list, for repeated two-point evaluation.
#[derive(Debug, Clone)]
pub struct PrecTable {
    n: usize,
    runs: Vec<GridFunction>,
}

impl PrecTable {
    pub fn new(fs: &[GridFunction], pou: &PartitionOfUnity) -> Result<Self> {
        if fs.is_empty() {
            return Err(Error::Usage("omega of an empty list".into()));
        }
        let n = fs.len();
        let mut runs = Vec::with_capacity(n * n);
        for a in 0..n {
            let mut acc = fs[a].clone();
            runs.push(acc.clone());
            for f in &fs[a + 1..] {
                acc = iterated_para(&[acc, f.clone()], pou)?;
                runs.push(acc.clone());
            }
        }
        Ok(PrecTable { n, runs })
    }

    /// `(f_a, ..., f_{b-1})^≺` for `a < b <= n`.
    pub fn run(&self, a: usize, b: usize) -> &GridFunction {
        assert!(a < b && b <= self.n, "run [{a}, {b}) outside 0..{}", self.n);
        let offset: usize = (0..a).map(|i| self.n - i).sum();
        &self.runs[offset + (b - a - 1)]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `omega^≺_{yx}(f_a, ..., f_{n-1})` for every start `a`.
    pub fn omegas(&self, x: usize, y: usize) -> Vec<f64> {
        let n = self.n;
        suffix_recursion(
            n,
            |s| {
                let v = self.run(s, n);
                Ok(v.at(y) - v.at(x))
            },
            |s, l| Ok(self.run(s, l).at(x)),
        )
        .expect("infallible")
    }

    /// `omega^≺_{yx}(f_1, ..., f_n)`.
    pub fn omega(&self, x: usize, y: usize) -> f64 {
        self.omegas(x, y)[0]
    }
}

/// `omega^≺_{yx}(f_1, ..., f_n)`.
pub fn omega_prec(fs: &[GridFunction], x: usize, y: usize, pou: &PartitionOfUnity) -> Result<f64> {
    Ok(PrecTable::new(fs, pou)?.omega(x, y))
}

/// Pieces `(omega_{yx}^w)_j`, `j = -1..=J`, from their definition.
pub fn omega_pieces(family: &SeedFamily<'_>, w: &Word, x: usize, y: usize) -> Result<Vec<f64>> {
    blockwise(family, w, |piece| piece.at(y) - piece.at(x), x)
}

/// Pieces `(C_x^w)_j`, `j = -1..=J`, from their definition.
pub fn c_pieces(family: &SeedFamily<'_>, w: &Word, x: usize) -> Result<Vec<f64>> {
    blockwise(family, w, |piece| piece.at(x), x)
}

fn blockwise(
    family: &SeedFamily<'_>,
    w: &Word,
    top: impl Fn(&GridFunction) -> f64,
    x: usize,
) -> Result<Vec<f64>> {
    let k = w.len();
    if k == 0 {
        return Err(Error::Usage("blockwise functional of the unit word".into()));
    }
    let suffix_pieces = (0..k)
        .map(|s| family.pieces(&w.suffix(s)))
        .collect::<Result<Vec<_>>>()?;
    let blocks = suffix_pieces[0].len();
    let mut coeff = vec![vec![0.0; k]; k];
    for s in 0..k {
        for l in s + 1..k {
            coeff[s][l] = family.value_at(&w.subword(s, l), x)?;
        }
    }
    let mut out = Vec::with_capacity(blocks);
    for b in 0..blocks {
        let r = suffix_recursion(k, |s| Ok(top(&suffix_pieces[s][b])), |s, l| Ok(coeff[s][l]))?;
        out.push(r[0]);
    }
    Ok(out)
}

/// Residuals of the two blockwise recursions at block `j`: the `omega`
/// formula and the `C_x` formula, each comparing the definitional left side
/// with the recursive right side.
pub fn block_recursion_check(
    family: &SeedFamily<'_>,
    w: &Word,
    j: i32,
    x: usize,
    y: usize,
) -> Result<(f64, f64)> {
    let all = block_recursion_residuals(family, w, x, y)?;
    let idx = j + 1;
    if idx < 0 || idx as usize >= all.len() {
        return Err(Error::Usage(format!("block {j} outside the decomposition")));
    }
    Ok(all[idx as usize])
}

/// [`block_recursion_check`] for every block `j = -1..=J`.
pub fn block_recursion_residuals(
    family: &SeedFamily<'_>,
    w: &Word,
    x: usize,
    y: usize,
) -> Result<Vec<(f64, f64)>> {
    let om = omega_pieces(family, w, x, y)?;
    let cx = c_pieces(family, w, x)?;
    let (head, last) = w
        .split_last()
        .ok_or_else(|| Error::Usage("empty word".into()))?;
    let delta = family.pieces(&Word::letter(last))?;
    if head.is_empty() {
        return Ok((0..om.len())
            .map(|b| {
                let d = &delta[b];
                ((om[b] - (d.at(y) - d.at(x))).abs(), (cx[b] - d.at(x)).abs())
            })
            .collect());
    }
    let om_head = omega_pieces(family, &head, x, y)?;
    let cx_head = c_pieces(family, &head, x)?;
    let total_c: f64 = cx_head.iter().sum();
    let mut out = Vec::with_capacity(om.len());
    let mut low_omega = 0.0;
    let mut low_c = 0.0;
    for b in 0..om.len() {
        // block index j = b - 1; lows collect indices m < j - 1, i.e. m + 1 < b - 1
        if b >= 2 {
            low_omega += om_head[b - 2];
            low_c += cx_head[b - 2];
        }
        let high_c = total_c - low_c;
        let d = &delta[b];
        let rhs_omega = low_omega * d.at(y) - high_c * (d.at(y) - d.at(x));
        let rhs_c = -high_c * d.at(x);
        out.push(((om[b] - rhs_omega).abs(), (cx[b] - rhs_c).abs()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::Alphabet;
    use crate::spectral::{build_partition, synth_holder, Grid};

    fn family<'a>(pou: &'a PartitionOfUnity, alphas: &[f64], seed: u64) -> SeedFamily<'a> {
        let fs = alphas
            .iter()
            .enumerate()
            .map(|(i, &a)| synth_holder(a, seed * 16 + i as u64, pou, 4).unwrap())
            .collect();
        SeedFamily::new(Alphabet::new(alphas).unwrap(), fs, pou).unwrap()
    }

    #[test]
    fn single_letters_and_diagonal() {
        let pou = build_partition(Grid::line(10).unwrap(), 2).unwrap();
        let fam = family(&pou, &[0.3, 0.4, 0.2], 1);
        let f1 = fam.input(1);
        let w1: Word = "(1)".parse().unwrap();
        assert_eq!(omega_seed(&fam, &w1, 5, 77).unwrap(), f1.at(77) - f1.at(5));
        for w in ["(12)", "(123)", "(312)"] {
            assert_eq!(omega_seed(&fam, &w.parse().unwrap(), 40, 40).unwrap(), 0.0);
        }
        let fs = fam.inputs().to_vec();
        assert_eq!(
            omega_prec(&fs[..1], 3, 9, &pou).unwrap(),
            fs[0].at(9) - fs[0].at(3)
        );
        assert_eq!(omega_prec(&fs, 12, 12, &pou).unwrap(), 0.0);
        assert!(omega_prec(&[], 0, 1, &pou).is_err());
    }

    #[test]
    fn prec_table_runs() {
        let pou = build_partition(Grid::line(9).unwrap(), 2).unwrap();
        let fam = family(&pou, &[0.3, 0.4, 0.2], 2);
        let fs = fam.inputs();
        let t = PrecTable::new(fs, &pou).unwrap();
        assert_eq!(t.run(1, 2), &fs[1]);
        assert_eq!(*t.run(0, 3), iterated_para(fs, &pou).unwrap());
        assert_eq!(*t.run(1, 3), iterated_para(&fs[1..], &pou).unwrap());
    }

    #[test]
    fn pieces_sum_to_functionals() {
        let pou = build_partition(Grid::line(10).unwrap(), 2).unwrap();
        let fam = family(&pou, &[0.3, 0.4, 0.2], 3);
        let w: Word = "(123)".parse().unwrap();
        let total: f64 = omega_pieces(&fam, &w, 10, 300).unwrap().iter().sum();
        assert!((total - omega_seed(&fam, &w, 10, 300).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn blockwise_recursions() {
        let pou = build_partition(Grid::line(10).unwrap(), 2).unwrap();
        let fam = family(&pou, &[0.3, 0.2, 0.15], 4);
        for w in ["(1)", "(12)", "(123)", "(2131)"] {
            let w: Word = w.parse().unwrap();
            let scale = fam.scale(&w);
            for (a, b) in block_recursion_residuals(&fam, &w, 17, 530).unwrap() {
                assert!(a <= 1e-9 * scale && b <= 1e-9 * scale, "{w}: {a} {b}");
            }
        }
        let w: Word = "(2)".parse().unwrap();
        let (_, c) = block_recursion_check(&fam, &w, 3, 7, 7).unwrap();
        assert_eq!(c, 0.0);
        let w: Word = "(12)".parse().unwrap();
        let (a, _) = block_recursion_check(&fam, &w, 4, 7, 7).unwrap();
        assert_eq!(a, 0.0);
    }
}
