use num_rational::BigRational;

use super::poly::MultiPoly;
use super::rational::int;

/// Direction of a chain of linear factors spaced two apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStep {
    Up,
    Down,
}

impl ChainStep {
    pub fn delta(self) -> i64 {
        match self {
            ChainStep::Up => 2,
            ChainStep::Down => -2,
        }
    }
}

/// `(base + start)(base + start + step)...`, `len` factors.
#[derive(Debug, Clone)]
pub struct Chain {
    pub base: MultiPoly,
    pub start: BigRational,
    pub step: ChainStep,
    pub len: usize,
}

impl Chain {
    pub fn expand(&self) -> MultiPoly {
        let step = int(self.step.delta());
        let mut acc = MultiPoly::one(self.base.vars());
        let mut offset = self.start.clone();
        for _ in 0..self.len {
            acc = &acc * &self.base.add_constant(&offset);
            offset += &step;
        }
        acc
    }
}

/// Product of `count` factors `(base + start + i*step)`, `i = 0..count`.
/// An empty chain is the constant `1`.
pub fn falling_chain(
    base: &MultiPoly,
    start: &BigRational,
    step: ChainStep,
    count: usize,
) -> MultiPoly {
    Chain {
        base: base.clone(),
        start: start.clone(),
        step,
        len: count,
    }
    .expand()
}
