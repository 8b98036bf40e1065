use super::grid::GridFunction;
use super::partition::PartitionOfUnity;
use crate::error::Result;
use crate::exec::Exec;

/// Littlewood-Paley blocks `Delta_j f`, `j = -1..=J`, of a grid function.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    source: GridFunction,
    blocks: Vec<GridFunction>,
}

impl BlockDecomposition {
    pub fn source(&self) -> &GridFunction {
        &self.source
    }

    /// Top block index `J`.
    pub fn top(&self) -> i32 {
        self.blocks.len() as i32 - 2
    }

    /// `Delta_j f`; zero outside `-1..=J`.
    pub fn block(&self, j: i32) -> GridFunction {
        match self.index(j) {
            Some(b) => self.blocks[b].clone(),
            None => GridFunction::zeros(self.source.grid()),
        }
    }

    /// Borrowed block for `-1 <= j <= J`.
    pub fn block_ref(&self, j: i32) -> Option<&GridFunction> {
        self.index(j).map(|b| &self.blocks[b])
    }

    pub fn blocks(&self) -> &[GridFunction] {
        &self.blocks
    }

    fn index(&self, j: i32) -> Option<usize> {
        if j >= -1 && j <= self.top() {
            Some((j + 1) as usize)
        } else {
            None
        }
    }

    /// Sup norms `(j, max |Delta_j f|)`.
    pub fn block_sups(&self) -> Vec<(i32, f64)> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(b, f)| (b as i32 - 1, f.sup_norm()))
            .collect()
    }

    /// Sum of the blocks with index in `range` (clipped to `-1..=J`).
    pub fn partial_sum(&self, from: i32, to_inclusive: i32) -> GridFunction {
        let mut acc = GridFunction::zeros(self.source.grid());
        for j in from.max(-1)..=to_inclusive.min(self.top()) {
            acc.add_scaled(1.0, &self.blocks[(j + 1) as usize]);
        }
        acc
    }
}

/// Splits `f` into its Littlewood-Paley blocks `Delta_j f = F^{-1}(rho_j F f)`.
pub fn decompose(f: &GridFunction, pou: &PartitionOfUnity) -> Result<BlockDecomposition> {
    pou.check_grid(f)?;
    let spectrum = pou.spectrum(f);
    let indices: Vec<i32> = pou.block_indices().collect();
    let blocks = Exec::default().map(&indices, |&j| pou.filter(&spectrum, pou.profile(j)));
    Ok(BlockDecomposition {
        source: f.clone(),
        blocks,
    })
}

/// `sum_{i < j-1} Delta_i f`; empty (zero) for `j <= 0`.
pub fn low_pass(dec: &BlockDecomposition, j: i32) -> GridFunction {
    dec.partial_sum(-1, j - 2)
}

/// `sum_{i >= j-1} Delta_i f`, the complement of [`low_pass`].
pub fn high_pass(dec: &BlockDecomposition, j: i32) -> GridFunction {
    dec.partial_sum(j - 1, dec.top())
}

/// Besov-Holder norm `max_j 2^{j alpha} max_x |Delta_j f(x)|`.
pub fn besov_norm(f: &GridFunction, alpha: f64, pou: &PartitionOfUnity) -> Result<f64> {
    let dec = decompose(f, pou)?;
    Ok(dec
        .block_sups()
        .into_iter()
        .map(|(j, s)| 2f64.powf(j as f64 * alpha) * s)
        .fold(0.0, f64::max))
}
