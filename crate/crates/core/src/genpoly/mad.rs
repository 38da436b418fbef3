use crate::perm::Permutation;

/// A permutation cut into its maximal strictly decreasing runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentBlockDecomposition {
    blocks: Vec<Vec<u32>>,
}

impl DescentBlockDecomposition {
    pub fn of(p: &Permutation) -> Self {
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for &v in p.window() {
            match blocks.last_mut() {
                Some(b) if *b.last().unwrap() > v => b.push(v),
                _ => blocks.push(vec![v]),
            }
        }
        DescentBlockDecomposition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Right embracing number of every letter, in window order: the number of
    /// blocks `B` of length at least two, strictly to the right of the
    /// letter's block, with `first(B) > letter > last(B)`.
    pub fn right_embracing(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (k, block) in self.blocks.iter().enumerate() {
            for &v in block {
                let c = self.blocks[k + 1..]
                    .iter()
                    .filter(|b| b.len() >= 2 && b[0] > v && v > b[b.len() - 1])
                    .count();
                out.push(c as u32);
            }
        }
        out
    }

    pub fn res(&self) -> u64 {
        self.right_embracing().iter().map(|&c| c as u64).sum()
    }
}

/// `mad(p) = drops(p) + Res(p)`.
pub fn mad(p: &Permutation) -> u64 {
    p.drops() + DescentBlockDecomposition::of(p).res()
}
