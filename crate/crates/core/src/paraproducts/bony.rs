use crate::error::{Error, Result};
use crate::spectral::{check_grids, decompose, BlockDecomposition, GridFunction, PartitionOfUnity};

/// Bony's splitting `f g = f≺g + f∘g + f≻g` of a pointwise product.
#[derive(Debug, Clone)]
pub struct ParaDecomposition {
    pub lt: GridFunction,
    pub res: GridFunction,
    pub gt: GridFunction,
}

impl ParaDecomposition {
    /// `lt + res + gt`, which reproduces the pointwise product.
    pub fn total(&self) -> GridFunction {
        &(&self.lt + &self.res) + &self.gt
    }
}

/// `sum_{j>=1} S_{j-2} f · Delta_j g` from two decompositions.
pub(crate) fn para_blocks(f: &BlockDecomposition, g: &BlockDecomposition) -> GridFunction {
    let grid = f.source().grid();
    let mut out = GridFunction::zeros(grid);
    let mut low = GridFunction::zeros(grid);
    for j in 1..=g.top() {
        low.add_scaled(1.0, &f.block(j - 2));
        if let Some(b) = g.block_ref(j) {
            out.add_product(&low, b);
        }
    }
    out
}

/// `sum_{|i-j|<=1} Delta_i f · Delta_j g` from two decompositions.
///
/// The pairs `(i, i+1)` and `(i+1, i)` are added together so the result is
/// bitwise symmetric in its arguments.
pub(crate) fn resonant_blocks(f: &BlockDecomposition, g: &BlockDecomposition) -> GridFunction {
    let grid = f.source().grid();
    let mut out = GridFunction::zeros(grid);
    let top = f.top().min(g.top());
    for i in -1..=top {
        let (fi, gi) = (
            f.block_ref(i).expect("in range"),
            g.block_ref(i).expect("in range"),
        );
        out.add_product(fi, gi);
        if i < top {
            let (fn_, gn) = (
                f.block_ref(i + 1).expect("in range"),
                g.block_ref(i + 1).expect("in range"),
            );
            let cross: Vec<f64> = (0..grid.len())
                .map(|x| fi.at(x) * gn.at(x) + fn_.at(x) * gi.at(x))
                .collect();
            out.add_scaled(1.0, &GridFunction::from_raw(grid, cross));
        }
    }
    out
}

fn decompose_pair(
    f: &GridFunction,
    g: &GridFunction,
    pou: &PartitionOfUnity,
) -> Result<(BlockDecomposition, BlockDecomposition)> {
    check_grids(f.grid(), g.grid())?;
    Ok((decompose(f, pou)?, decompose(g, pou)?))
}

/// Paraproduct `f≺g`.
pub fn para(f: &GridFunction, g: &GridFunction, pou: &PartitionOfUnity) -> Result<GridFunction> {
    let (fd, gd) = decompose_pair(f, g, pou)?;
    Ok(para_blocks(&fd, &gd))
}

/// Resonant term `f∘g`.
pub fn resonant(
    f: &GridFunction,
    g: &GridFunction,
    pou: &PartitionOfUnity,
) -> Result<GridFunction> {
    let (fd, gd) = decompose_pair(f, g, pou)?;
    Ok(resonant_blocks(&fd, &gd))
}

/// `f⪰g = f∘g + f≻g`.
pub fn para_ge(f: &GridFunction, g: &GridFunction, pou: &PartitionOfUnity) -> Result<GridFunction> {
    let (fd, gd) = decompose_pair(f, g, pou)?;
    Ok(&resonant_blocks(&fd, &gd) + &para_blocks(&gd, &fd))
}

/// All three Bony pieces from a single pair of decompositions.
pub fn bony_decompose(
    f: &GridFunction,
    g: &GridFunction,
    pou: &PartitionOfUnity,
) -> Result<ParaDecomposition> {
    let (fd, gd) = decompose_pair(f, g, pou)?;
    Ok(ParaDecomposition {
        lt: para_blocks(&fd, &gd),
        res: resonant_blocks(&fd, &gd),
        gt: para_blocks(&gd, &fd),
    })
}

/// Left-nested paraproduct `((f1≺f2)≺...)≺fn`.
pub fn iterated_para(fs: &[GridFunction], pou: &PartitionOfUnity) -> Result<GridFunction> {
    let (first, rest) = fs
        .split_first()
        .ok_or_else(|| Error::Usage("iterated paraproduct of an empty list".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, f| para(&acc, f, pou))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{build_partition, estimate_regularity, synth_holder, Grid};

    fn setup(l: u32) -> PartitionOfUnity {
        build_partition(Grid::line(l).unwrap(), 2).unwrap()
    }

    #[test]
    fn bony_identity() {
        let pou = setup(10);
        let f = synth_holder(0.4, 1, &pou, 4).unwrap();
        let g = synth_holder(-0.6, 2, &pou, 4).unwrap();
        let d = bony_decompose(&f, &g, &pou).unwrap();
        let prod = &f * &g;
        assert!(d.total().sup_distance(&prod) <= 1e-10 * f.sup_norm() * g.sup_norm());
        assert!(para(&f, &g, &pou).unwrap().sup_distance(&d.lt) == 0.0);
        assert!(para(&g, &f, &pou).unwrap().sup_distance(&d.gt) == 0.0);
        let ge = para_ge(&f, &g, &pou).unwrap();
        assert!(ge.sup_distance(&(&prod - &d.lt)) <= 1e-10 * prod.sup_norm().max(1.0));
    }

    #[test]
    fn zero_and_constant_inputs() {
        let pou = setup(8);
        let g = synth_holder(0.3, 5, &pou, 4).unwrap();
        let z = GridFunction::zeros(pou.grid());
        assert!(para(&z, &g, &pou).unwrap().is_zero());
        assert!(para_ge(&z, &g, &pou).unwrap().is_zero());
        let one = GridFunction::constant(pou.grid(), 1.0);
        let lhs = para_ge(&g, &one, &pou).unwrap();
        let rhs = &g - &para(&g, &one, &pou).unwrap();
        assert!(lhs.sup_distance(&rhs) < 1e-10);
    }

    #[test]
    fn resonant_of_separated_blocks_is_zero() {
        let pou = setup(12);
        let f = synth_holder(0.5, 3, &pou, 4).unwrap();
        let g = synth_holder(0.5, 4, &pou, 4).unwrap();
        let f3 = decompose(&f, &pou).unwrap().block(3);
        let g8 = decompose(&g, &pou).unwrap().block(8);
        let r = resonant(&f3, &g8, &pou).unwrap();
        assert!(r.sup_norm() < 1e-12);
        let a = resonant(&f, &g, &pou).unwrap();
        let b = resonant(&g, &f, &pou).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn iterated_forms() {
        let pou = setup(8);
        let f = synth_holder(0.3, 1, &pou, 4).unwrap();
        let g = synth_holder(0.4, 2, &pou, 4).unwrap();
        let h = synth_holder(0.2, 3, &pou, 4).unwrap();
        assert_eq!(iterated_para(&[f.clone()], &pou).unwrap(), f);
        assert_eq!(
            iterated_para(&[f.clone(), g.clone()], &pou).unwrap(),
            para(&f, &g, &pou).unwrap()
        );
        let nested = para(&para(&f, &g, &pou).unwrap(), &h, &pou).unwrap();
        assert_eq!(iterated_para(&[f, g, h], &pou).unwrap(), nested);
        assert!(matches!(iterated_para(&[], &pou), Err(Error::Usage(_))));
    }

    #[test]
    fn grid_mismatch() {
        let pou = setup(8);
        let f = GridFunction::zeros(Grid::line(9).unwrap());
        let g = GridFunction::zeros(pou.grid());
        assert!(matches!(
            para(&f, &g, &pou),
            Err(Error::GridMismatch { .. })
        ));
    }

    #[test]
    fn regularity_transfer() {
        let pou = setup(14);
        let mut lt = Vec::new();
        let mut res = Vec::new();
        for seed in 0..8 {
            let f = synth_holder(0.4, 10 + seed, &pou, 8).unwrap();
            let g = synth_holder(-0.6, 20 + seed, &pou, 8).unwrap();
            let p = para(&f, &g, &pou).unwrap();
            lt.push(estimate_regularity(&p, &pou, None).unwrap().regularity());
            let a = synth_holder(0.6, 30 + seed, &pou, 8).unwrap();
            let b = synth_holder(0.5, 40 + seed, &pou, 8).unwrap();
            let r = resonant(&a, &b, &pou).unwrap();
            res.push(estimate_regularity(&r, &pou, None).unwrap().regularity());
        }
        let lt = lt.iter().sum::<f64>() / 8.0;
        let res = res.iter().sum::<f64>() / 8.0;
        assert!((lt + 0.6).abs() <= 0.12, "f≺g regularity {lt}");
        assert!(res >= 1.0 - 0.15, "f∘g regularity {res}");
    }
}
