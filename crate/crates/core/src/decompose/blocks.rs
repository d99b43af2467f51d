use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Side, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockElem {
    pub side: Side,
    pub tp: Sign,
}

/// A run `start..end` of the late parts in `⪯` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    /// Set when every element lies on this side.
    pub side: Option<Side>,
    /// Set when every element has this type.
    pub sign: Option<Sign>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

pub fn block_bound(k: usize, d: usize) -> usize {
    2 * k * (4 * d + 1) + 1
}

/// Greedy left-to-right maximal homogeneous runs. Homogeneity is closed under
/// taking sub-runs, so the greedy split is a minimum one.
pub fn partition_blocks(elems: &[BlockElem], k: usize, d: usize) -> Result<Vec<Block>> {
    let mut blocks: Vec<Block> = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        if let Some(b) = blocks.last_mut() {
            let side = b.side.filter(|&s| s == e.side);
            let sign = b.sign.filter(|&s| s == e.tp);
            if side.is_some() || sign.is_some() {
                b.end = i + 1;
                b.side = side;
                b.sign = sign;
                continue;
            }
        }
        blocks.push(Block { start: i, end: i + 1, side: Some(e.side), sign: Some(e.tp) });
    }
    let bound = block_bound(k, d);
    if blocks.len() > bound {
        return Err(Error::certified(
            "few-blocks",
            format!("{} homogeneous blocks, bound is {bound}", blocks.len()),
        ));
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(side: Side, tp: Sign) -> BlockElem {
        BlockElem { side, tp }
    }

    #[test]
    fn homogeneous_runs() {
        let minus: Vec<_> = [Side::Left, Side::Right, Side::Left].iter().map(|&s| e(s, Sign::Minus)).collect();
        assert_eq!(partition_blocks(&minus, 2, 2).unwrap().len(), 1);
        let left: Vec<_> = [Sign::Plus, Sign::Minus, Sign::Plus].iter().map(|&t| e(Side::Left, t)).collect();
        assert_eq!(partition_blocks(&left, 2, 2).unwrap().len(), 1);
        let alt = vec![
            e(Side::Left, Sign::Plus),
            e(Side::Right, Sign::Minus),
            e(Side::Left, Sign::Plus),
            e(Side::Right, Sign::Minus),
        ];
        assert_eq!(partition_blocks(&alt, 2, 2).unwrap().len(), 4);
        assert!(partition_blocks(&alt, 0, 0).is_err());
    }
}
